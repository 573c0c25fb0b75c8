//! Symbolic transition maps and their action on points.

use nugrass::atlas::{Atlas, Dims};
use nugrass::poly::q;
use nugrass::superalgebra::GrassmannNumber;
use nugrass::supermatrix::IndexPair;

fn main() -> nugrass::Result<()> {
    let atlas = Atlas::new(Dims::new(0, 1, 1, 2)?)?;
    for a in atlas.charts() {
        for b in atlas.charts() {
            match atlas.transition_symbolic(&a.index, &b.index) {
                Ok(t) => println!("{} -> {}: {t}", a.index, b.index),
                Err(e) => println!("{} -> {}: {e}", a.index, b.index),
            }
        }
    }

    let (u1, u2) = (IndexPair::parse("∅|{1}")?, IndexPair::parse("∅|{2}")?);
    let p = atlas.point(&u1, 2, vec![GrassmannNumber::scalar(2, q(2)), GrassmannNumber::generator(2, 0)?])?;
    let moved = atlas.point_transition(&p, &u2)?;
    println!("\n{p}\n  -> {moved}");
    println!("  back: {}", atlas.invert_transition(&moved, &u1)?);

    let t = atlas.transition_symbolic(&u1, &u2)?;
    let coeff = t.image("e").expect("e is a coordinate").coefficient_of("e")?;
    println!("\nbody coefficient of e in the image of e: {coeff}");
    Ok(())
}
