//! GL(1|2) acting on points of νG_{0|1}(1|2).

use nugrass::action::{act, act_into, verify_action_gluing, GLPoint, GluingScope};
use nugrass::atlas::{Atlas, Dims};
use nugrass::poly::q;
use nugrass::superalgebra::{GrassmannNumber, Sampler};
use nugrass::supermatrix::IndexPair;

fn main() -> nugrass::Result<()> {
    let dims = Dims::new(0, 1, 1, 2)?;
    let atlas = Atlas::new(dims)?;
    let r = 2;
    let x = atlas.point(&IndexPair::parse("∅|{1}")?, r, vec![GrassmannNumber::scalar(r, q(2)), GrassmannNumber::generator(r, 0)?])?;
    let swap = GLPoint::from_rational(1, 2, r, &vec![
        vec![q(1), q(0), q(0)],
        vec![q(0), q(0), q(1)],
        vec![q(0), q(1), q(0)],
    ])?;
    println!("X = {x}\nP = {swap}");
    println!("X·P = {}", act(&atlas, &x, &swap)?);
    println!("X·P in ∅|{{2}} = {}", act_into(&atlas, &x, &swap, &IndexPair::parse("∅|{2}")?)?);

    let mut s = Sampler::new(3);
    let g = GLPoint::sample(1, 2, r, &mut s);
    println!("\nrandom P = {g}\nX·P = {}", act(&atlas, &x, &g)?);

    let suite = verify_action_gluing(dims, r, 20, 11, GluingScope::All)?;
    println!("\n{}: {} of {} quadruples pass", suite.name, suite.reports.iter().filter(|r| r.ok()).count(), suite.reports.len());
    Ok(())
}
