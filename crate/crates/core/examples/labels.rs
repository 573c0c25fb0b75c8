//! Charts of a ν-Grassmannian and their label matrices.

use nugrass::atlas::{Atlas, Dims};

fn main() -> nugrass::Result<()> {
    for dims in [Dims::new(0, 1, 1, 2)?, Dims::new(1, 2, 2, 3)?] {
        let atlas = Atlas::new(dims)?;
        println!("{dims}: {} charts, α|β = {}|{}", atlas.charts().len(), dims.alpha(), dims.beta());
        for chart in atlas.charts() {
            let kind = if chart.is_standard() { "" } else { " (non-standard)" };
            println!("\n{}{kind}  coordinates: {}", chart.index, chart.coordinate_names().join(", "));
            println!("{}", chart.label_pretty());
        }
        println!();
    }
    Ok(())
}
