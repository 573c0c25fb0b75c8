//! Fundamental fields, ν-defects and the ν-commutant 𝔥.

use nugrass::atlas::{Atlas, Dims};
use nugrass::nulie::{fundamental_field, nu_defect, nulie_report};

fn main() -> nugrass::Result<()> {
    let dims = Dims::new(0, 1, 1, 2)?;
    let atlas = Atlas::new(dims)?;
    let chart = &atlas.charts()[0];
    for (u, v) in [(0, 0), (1, 1), (0, 1)] {
        let f = fundamental_field(&atlas, u, v, chart)?;
        let defect: Vec<String> = nu_defect(&f)?.iter().map(ToString::to_string).collect();
        println!("E{}{} on {}: {f}   ν-defects [{}]", u + 1, v + 1, chart.index, defect.join(", "));
    }

    let rep = nulie_report(dims)?;
    println!("\ndim 𝔥 = {}|{}, basis: {}", rep.dim_even, rep.dim_odd, rep.basis_display.join("; "));
    println!("sign s = {:?}", rep.sign_s);
    for c in &rep.checks {
        println!("{}", c.line());
    }
    Ok(())
}
