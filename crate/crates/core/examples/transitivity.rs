//! Transitivity witnesses: V with p̂V = W.

use nugrass::action::{sample_reachable_point, stabilizer_membership, transitivity_witness, BasePoint};
use nugrass::atlas::{Atlas, Dims};
use nugrass::superalgebra::Sampler;

fn main() -> nugrass::Result<()> {
    let dims = Dims::new(0, 1, 1, 2)?;
    let atlas = Atlas::new(dims)?;
    let base = BasePoint::standard(dims);
    let mut s = Sampler::new(5);
    for _ in 0..3 {
        let w = sample_reachable_point(&atlas, 4, &mut s);
        let v = transitivity_witness(&atlas, &w, &base)?;
        println!("W = {w}\nV = {v}\n");
    }
    let p0 = base.point(&atlas, 4)?;
    println!("base point {p0}");
    println!("identity stabilizes it: {}", stabilizer_membership(&atlas, &nugrass::action::GLPoint::identity(1, 2, 4), &base)?);
    Ok(())
}
