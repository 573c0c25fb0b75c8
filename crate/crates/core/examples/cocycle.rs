//! Cocycle checks on sampled Λ_2-points.

use nugrass::atlas::{verify_cocycle, Dims};

fn main() -> nugrass::Result<()> {
    let suite = verify_cocycle(Dims::new(0, 1, 1, 2)?, 2, 100, 7)?;
    print!("{}", suite.text());
    for rep in suite.failing().take(1) {
        println!("first counterexample of {}: {}", rep.instance, rep.counterexamples[0]);
    }
    Ok(())
}
