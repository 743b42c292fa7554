//! Score a handful of firms against the efficiency frontier under constant
//! and variable returns to scale.
//!
//! ```bash
//! cargo run -p frontier-dea --example score_panel
//! ```

use frontier_dea::dea::{self, Dmu, GroupingRule, Panel, Rts};
use frontier_dea::report::{render_scores, OutputFormat};

fn main() -> frontier_dea::Result<()> {
    // Inputs are (labour, capital) spending; the output is revenue.
    let panel = Panel::new(vec![
        Dmu::new("alpha", vec![20.0, 60.0], vec![80.0])?,
        Dmu::new("bravo", vec![50.0, 30.0], vec![80.0])?,
        Dmu::new("charlie", vec![60.0, 60.0], vec![80.0])?,
        Dmu::new("delta", vec![40.0, 120.0], vec![80.0])?,
        Dmu::new("echo", vec![25.0, 70.0], vec![40.0])?,
    ])?;

    for rts in [Rts::Crs, Rts::Vrs] {
        let results = dea::score_all(&panel, rts, GroupingRule::Pooled)?;
        println!("{}", render_scores(&results, OutputFormat::Text));
    }

    // A single unit can also be scored directly, with its peer weights.
    let target = &panel.dmus()[2];
    let result = dea::efficiency(target, &panel, Rts::Crs)?;
    println!(
        "{} contracts its inputs by a factor of {:.4}; reference peers: {:?}",
        result.dmu_id,
        result.theta_star,
        result.lambdas.keys().collect::<Vec<_>>()
    );
    Ok(())
}
