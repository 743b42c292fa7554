//! Per-sector descriptive statistics of efficiency scores, under both
//! returns-to-scale assumptions.
//!
//! ```bash
//! cargo run -p frontier-dea --example descriptive_stats
//! ```

use frontier_dea::dea::{self, GroupingRule, Rts};
use frontier_dea::panel::{generate_synthetic, SectorPlan, Sector, SyntheticSpec};
use frontier_dea::report::{describe, render_stats, OutputFormat};

fn main() -> frontier_dea::Result<()> {
    // A small two-sector panel with a planted frontier.
    let spec = SyntheticSpec {
        sectors: vec![
            SectorPlan {
                sector: Sector::Construction,
                efficient_firms: 2,
                inefficient_firms: 6,
                stake_plan: None,
            },
            SectorPlan {
                sector: Sector::TradingServices,
                efficient_firms: 3,
                inefficient_firms: 9,
                stake_plan: None,
            },
        ],
        years: (2005, 2008),
        ..SyntheticSpec::default()
    };
    let dataset = generate_synthetic(&spec, 2024)?;
    let panel = dataset.as_panel()?;

    let mut results = dea::score_all(&panel, Rts::Crs, GroupingRule::Sector)?;
    results.extend(dea::score_all(&panel, Rts::Vrs, GroupingRule::Sector)?);

    // Group the scores by the sector carried on each result.
    let stats = describe(&results, |r| r.group_key.clone())?;
    println!("{}", render_stats(&stats, OutputFormat::Text));
    print!("{}", render_stats(&stats, OutputFormat::Csv));
    Ok(())
}
