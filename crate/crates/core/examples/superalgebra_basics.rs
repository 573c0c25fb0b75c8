//! Grassmann numbers over Λ_r and super functions on a chart.

use nugrass::poly::q;
use nugrass::superalgebra::{GrassmannNumber, Parity, Sampler, SuperContext, SuperFunction};

fn main() -> nugrass::Result<()> {
    let r = 3;
    let t1 = GrassmannNumber::generator(r, 0)?;
    let t2 = GrassmannNumber::generator(r, 1)?;
    let a = GrassmannNumber::scalar(r, q(2)).checked_add(&t1.checked_mul(&t2)?)?;
    println!("a = {a}");
    println!("a⁻¹ = {}", a.inv()?);
    println!("a·a⁻¹ = {}", a.checked_mul(&a.inv()?)?);
    println!("θ1θ2 = {}, θ2θ1 = {}", t1.checked_mul(&t2)?, t2.checked_mul(&t1)?);
    println!("ν(a) = {}, ν(ν(a)) = {}", a.nu()?, a.nu()?.nu()?);

    let mut s = Sampler::new(1);
    let odd = s.grassmann(r, Parity::Odd, false);
    println!("random odd element: {odd} (parity {:?})", odd.parity());

    let ctx = SuperContext::new(["x"], ["e"])?;
    let x = SuperFunction::even_var(&ctx, "x")?;
    let e = SuperFunction::odd_gen(&ctx, "e")?;
    let f = e.checked_mul(&x.inv()?)?;
    println!("f = {f}, ∂f/∂x = {}, ∂f/∂e = {}", f.partial("x")?, f.partial("e")?);
    println!("ν(f) = {}, ν(1) = {}", f.nu()?, SuperFunction::one(&ctx).nu()?);
    Ok(())
}
