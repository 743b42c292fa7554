//! Largest-remainder allocation across sector strata and seeded sampling
//! without replacement.
//!
//! ```bash
//! cargo run -p frontier-dea --example stratified_sample
//! ```

use frontier_dea::panel::{allocate_strata, generate_synthetic, sample_strata, SyntheticSpec};

fn main() -> frontier_dea::Result<()> {
    let population = generate_synthetic(&SyntheticSpec::default(), 7)?;
    println!(
        "population: {} firms, {} records",
        population.firm_ids().len(),
        population.len()
    );

    // Proportional allocation of a 60-firm sample across the four sectors.
    let labels: Vec<String> = ["Consumer Products", "Industrial Products", "Construction", "Trading/Services"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let allocation = allocate_strata(60, &labels, &[0.186, 0.365, 0.077, 0.372])?;
    for (label, count) in allocation.labels.iter().zip(&allocation.counts) {
        println!("{label}: {count} firms");
    }
    println!("total: {}", allocation.counts.iter().sum::<u32>());

    let sample = sample_strata(&population, &allocation, 99)?;
    println!(
        "sample: {} firms, {} records",
        sample.firm_ids().len(),
        sample.len()
    );

    // Same seed, same sample.
    let again = sample_strata(&population, &allocation, 99)?;
    println!("reproducible: {}", sample == again);
    Ok(())
}
