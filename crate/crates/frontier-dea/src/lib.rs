//! Efficiency-frontier analytics for firm panel data.
//!
//! `frontier-dea` measures how efficiently each decision-making unit (a
//! firm-year with monetary inputs and revenue output) converts inputs into
//! output, relative to the best performers in its group. Scoring solves the
//! radial input-oriented envelopment program per unit under constant or
//! variable returns to scale, on a built-in dense two-phase simplex solver.
//! Around the scoring core sit ownership-concentration analytics (CR1/CR2/CR4
//! with bracket frequency tables), per-sector descriptive statistics, CSV
//! panel ingestion with located validation errors, stratified proportional
//! sampling, and a synthetic-panel generator with a planted frontier.
//!
//! ## Examples
//!
//! One runnable example per capability, under `examples/`:
//!
//! - **`solve_lp`** — build and solve a small linear program directly.
//! - **`score_panel`** — score firm-years against sector frontiers, CRS vs VRS.
//! - **`ownership_tables`** — concentration ratios and bracket frequency tables.
//! - **`descriptive_stats`** — per-sector score statistics, both modes.
//! - **`stratified_sample`** — largest-remainder allocation and seeded sampling.
//! - **`synthetic_panel`** — generate a fixture panel and round-trip it via CSV.
//!
//! ```bash
//! cargo run -p frontier-dea --example score_panel
//! ```
//!
//! ## Command line
//!
//! The `frontier-dea` binary wires the same capabilities into subcommands
//! (`score`, `ownership`, `describe`, `sample`, `synth`, `validate`); see the
//! README for usage.

pub mod cli;
pub mod dea;
pub mod error;
mod fmt;
pub mod lp;
pub mod ownership;
pub mod panel;
pub mod report;

pub use dea::{Dmu, EfficiencyResult, GroupingRule, Panel, Rts};
pub use error::{Error, Result};
pub use lp::{LinearProgram, LpSolution, LpStatus};
pub use ownership::{Bracket, ConcentrationRatio, ShareRegister};
pub use panel::{FirmRecord, PanelDataset, Sector, StrataAllocation, SyntheticSpec};
pub use report::{DescriptiveStats, FrequencyTable, OutputFormat};
