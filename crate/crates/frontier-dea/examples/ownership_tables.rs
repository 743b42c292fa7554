//! Concentration ratios from shareholder registers and the bracket
//! frequency table built from them.
//!
//! ```bash
//! cargo run -p frontier-dea --example ownership_tables
//! ```

use frontier_dea::ownership::{bracket_of, cr, ShareRegister};
use frontier_dea::panel::Sector;
use frontier_dea::report::{frequency_table, render_frequency_table, OutputFormat};

fn main() -> frontier_dea::Result<()> {
    let register = ShareRegister::new("F001", 2010, vec![12.0, 34.0, 8.0, 5.0, 2.5])?;
    for k in [1, 2, 4] {
        let ratio = cr(&register, k)?;
        println!(
            "CR{k} = {:.1}% (bracket {})",
            ratio.value,
            bracket_of(ratio.value)?
        );
    }

    // Fewer disclosures than k: the ratio covers what exists and says so.
    let thin = ShareRegister::new("F002", 2010, vec![40.0, 20.0])?;
    let cr4 = cr(&thin, 4)?;
    println!("thin register CR4 = {:.1}% (truncated: {})", cr4.value, cr4.truncated);

    let entries = vec![
        (Sector::ConsumerProducts, register),
        (Sector::ConsumerProducts, thin),
        (Sector::Construction, ShareRegister::new("F003", 2010, vec![55.0])?),
        (Sector::TradingServices, ShareRegister::new("F004", 2010, vec![8.0, 1.5])?),
        (Sector::TradingServices, ShareRegister::new("F005", 2010, vec![92.5, 4.0])?),
    ];
    let table = frequency_table(&entries, 1)?;
    println!();
    println!("{}", render_frequency_table(&table, OutputFormat::Text));
    print!("{}", render_frequency_table(&table, OutputFormat::Csv));
    Ok(())
}
