//! Command-line interface: `score`, `ownership`, `describe`, `sample`,
//! `synth`, and `validate` subcommands over the documented CSV panel format.
//!
//! Every command is deterministic given its input bytes, flags, and seed.
//! Exit codes are stable for scripting: 0 success, 1 validation failure,
//! 2 internal error.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::dea::{self, GroupingRule, Rts};
use crate::error::{Error, Result};
use crate::panel::{
    allocate_strata, generate_synthetic, parse_panel, render_panel, sample_strata, PanelDataset,
    Sector, SyntheticSpec,
};
use crate::report::{self, OutputFormat};

/// Resolved configuration for one command invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub input: Option<PathBuf>,
    pub rts: Rts,
    pub grouping: GroupingRule,
    pub k: Option<usize>,
    pub format: OutputFormat,
    pub seed: u64,
    pub tolerance: f64,
    pub out: Option<PathBuf>,
    pub summary: bool,
    pub total: Option<u32>,
    pub weights: Vec<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            input: None,
            rts: Rts::Crs,
            grouping: GroupingRule::Sector,
            k: None,
            format: OutputFormat::Text,
            seed: 42,
            tolerance: crate::lp::DEFAULT_TOLERANCE,
            out: None,
            summary: false,
            total: None,
            weights: Vec::new(),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "frontier-dea",
    version,
    about = "Efficiency-frontier scoring and ownership analytics over firm panel data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RtsArg {
    Crs,
    Vrs,
}

impl From<RtsArg> for Rts {
    fn from(arg: RtsArg) -> Self {
        match arg {
            RtsArg::Crs => Rts::Crs,
            RtsArg::Vrs => Rts::Vrs,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GroupByArg {
    Sector,
    Year,
    SectorYear,
    Pooled,
}

impl From<GroupByArg> for GroupingRule {
    fn from(arg: GroupByArg) -> Self {
        match arg {
            GroupByArg::Sector => GroupingRule::Sector,
            GroupByArg::Year => GroupingRule::Year,
            GroupByArg::SectorYear => GroupingRule::SectorYear,
            GroupByArg::Pooled => GroupingRule::Pooled,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Csv,
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(arg: FormatArg) -> Self {
        match arg {
            FormatArg::Text => OutputFormat::Text,
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Write output here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SolverArgs {
    /// Solver tolerance (positive)
    #[arg(long, env = "FRONTIER_DEA_TOLERANCE", default_value_t = crate::lp::DEFAULT_TOLERANCE)]
    tolerance: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Score every firm-year against its group frontier
    Score {
        /// Panel CSV file
        input: PathBuf,
        /// Returns-to-scale assumption
        #[arg(long, value_enum, default_value_t = RtsArg::Crs)]
        rts: RtsArg,
        /// How scoring groups are formed
        #[arg(long = "group-by", value_enum, default_value_t = GroupByArg::Sector)]
        group_by: GroupByArg,
        /// Append per-sector summary statistics (text; stderr for csv/json)
        #[arg(long)]
        summary: bool,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Ownership concentration frequency tables (CR1, CR2, CR4)
    Ownership {
        /// Panel CSV file
        input: PathBuf,
        /// Restrict to one concentration order (1, 2, or 4)
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Per-sector efficiency statistics under both CRS and VRS
    Describe {
        /// Panel CSV file
        input: PathBuf,
        /// How scoring groups are formed
        #[arg(long = "group-by", value_enum, default_value_t = GroupByArg::Sector)]
        group_by: GroupByArg,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Draw a stratified sample of firms from a population panel
    Sample {
        /// Population panel CSV file
        input: PathBuf,
        /// Number of firms to sample
        #[arg(long)]
        total: u32,
        /// Per-stratum weights, comma separated, matching the population's
        /// sectors in canonical order
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<f64>,
        /// RNG seed
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Write output here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate the synthetic fixture panel (planted frontier and brackets)
    Synth {
        /// Concentration order the planted brackets target (1, 2, or 4)
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// RNG seed
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Write output here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parse a panel file and print a summary
    Validate {
        /// Panel CSV file
        input: PathBuf,
    },
}

/// Parse `args` and execute; returns the process exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Score {
            input,
            rts,
            group_by,
            summary,
            solver,
            output,
        } => {
            let config = RunConfig {
                input: Some(input),
                rts: rts.into(),
                grouping: group_by.into(),
                summary,
                tolerance: solver.tolerance,
                format: output.format.into(),
                out: output.out,
                ..RunConfig::default()
            };
            let text = cmd_score(&config)?;
            write_output(config.out.as_deref(), &text)
        }
        Command::Ownership { input, k, output } => {
            let config = RunConfig {
                input: Some(input),
                k,
                format: output.format.into(),
                out: output.out,
                ..RunConfig::default()
            };
            let text = cmd_ownership(&config)?;
            write_output(config.out.as_deref(), &text)
        }
        Command::Describe {
            input,
            group_by,
            solver,
            output,
        } => {
            let config = RunConfig {
                input: Some(input),
                grouping: group_by.into(),
                tolerance: solver.tolerance,
                format: output.format.into(),
                out: output.out,
                ..RunConfig::default()
            };
            let text = cmd_describe(&config)?;
            write_output(config.out.as_deref(), &text)
        }
        Command::Sample {
            input,
            total,
            weights,
            seed,
            out,
        } => {
            let config = RunConfig {
                input: Some(input),
                total: Some(total),
                weights,
                seed,
                out,
                ..RunConfig::default()
            };
            let text = cmd_sample(&config)?;
            write_output(config.out.as_deref(), &text)
        }
        Command::Synth { k, seed, out } => {
            let config = RunConfig {
                k: Some(k),
                seed,
                out,
                ..RunConfig::default()
            };
            let text = cmd_synth(&config)?;
            write_output(config.out.as_deref(), &text)
        }
        Command::Validate { input } => {
            let config = RunConfig {
                input: Some(input),
                ..RunConfig::default()
            };
            let text = cmd_validate(&config)?;
            write_output(None, &text)
        }
    }
}

fn write_output(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            use std::io::Write;
            // A closed pipe (e.g. `... | head`) is not an error.
            if let Err(e) = std::io::stdout().write_all(text.as_bytes()) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    return Err(e.into());
                }
            }
        }
    }
    Ok(())
}

fn load_panel(config: &RunConfig) -> Result<PanelDataset> {
    let path = config
        .input
        .as_ref()
        .ok_or_else(|| Error::Validation("an input panel file is required".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Validation(format!("cannot read {}: {e}", path.display())))?;
    parse_panel(&text)
}

fn validate_k(k: usize) -> Result<usize> {
    if matches!(k, 1 | 2 | 4) {
        Ok(k)
    } else {
        Err(Error::Validation(format!(
            "concentration order {k} not supported here; use 1, 2, or 4"
        )))
    }
}

/// Map each scored DMU back to the sector of its firm-year record.
fn sector_labels(dataset: &PanelDataset) -> HashMap<String, String> {
    dataset
        .records()
        .iter()
        .map(|r| {
            (
                format!("{}:{}", r.firm_id, r.year),
                r.sector.name().to_string(),
            )
        })
        .collect()
}

/// Score a panel and render the per-DMU listing, optionally followed by a
/// per-sector summary.
pub fn cmd_score(config: &RunConfig) -> Result<String> {
    let dataset = load_panel(config)?;
    let panel = dataset.as_panel()?;
    let results =
        dea::score_all_with_tolerance(&panel, config.rts, config.grouping, config.tolerance)?;
    let mut output = report::render_scores(&results, config.format);

    if config.summary {
        let sectors = sector_labels(&dataset);
        let stats = report::describe(&results, |r| {
            sectors.get(&r.dmu_id).cloned().unwrap_or_default()
        })?;
        match config.format {
            OutputFormat::Text => {
                output.push('\n');
                output.push_str(&report::render_stats(&stats, OutputFormat::Text));
            }
            // Keep machine formats single-schema; the summary is a side note.
            OutputFormat::Csv | OutputFormat::Json => {
                eprint!("{}", report::render_stats(&stats, OutputFormat::Text));
            }
        }
    }
    Ok(output)
}

/// Render ownership-concentration frequency tables. Without `--k` all three
/// orders (1, 2, 4) are produced.
pub fn cmd_ownership(config: &RunConfig) -> Result<String> {
    let dataset = load_panel(config)?;
    let (registers, skipped) = dataset.latest_registers();
    if registers.is_empty() {
        return Err(Error::Validation(
            "no firm disclosed any shareholder stakes; nothing to tabulate".into(),
        ));
    }
    let orders: Vec<usize> = match config.k {
        Some(k) => vec![validate_k(k)?],
        None => vec![1, 2, 4],
    };
    let tables: Vec<report::FrequencyTable> = orders
        .iter()
        .map(|&k| report::frequency_table(&registers, k))
        .collect::<Result<_>>()?;
    eprintln!("firms without stake data skipped: {}", skipped.len());
    Ok(report::render_frequency_tables(&tables, config.format))
}

/// Score under both CRS and VRS and render per-sector statistics.
pub fn cmd_describe(config: &RunConfig) -> Result<String> {
    let dataset = load_panel(config)?;
    let panel = dataset.as_panel()?;
    let sectors = sector_labels(&dataset);
    let mut results =
        dea::score_all_with_tolerance(&panel, Rts::Crs, config.grouping, config.tolerance)?;
    results.extend(dea::score_all_with_tolerance(
        &panel,
        Rts::Vrs,
        config.grouping,
        config.tolerance,
    )?);
    let stats = report::describe(&results, |r| {
        sectors.get(&r.dmu_id).cloned().unwrap_or_default()
    })?;
    Ok(report::render_stats(&stats, config.format))
}

/// Allocate `--total` across the population's sector strata by the given
/// weights and sample firms without replacement.
pub fn cmd_sample(config: &RunConfig) -> Result<String> {
    let dataset = load_panel(config)?;
    let total = config
        .total
        .ok_or_else(|| Error::Validation("--total is required".into()))?;

    let mut sectors: BTreeSet<Sector> = BTreeSet::new();
    for firm in dataset.firm_ids() {
        sectors.insert(dataset.firm_sector(firm).expect("firm has records").clone());
    }
    let labels: Vec<String> = sectors.iter().map(|s| s.name().to_string()).collect();
    if config.weights.len() != labels.len() {
        return Err(Error::Validation(format!(
            "{} weights for {} sector strata {:?}",
            config.weights.len(),
            labels.len(),
            labels
        )));
    }
    let allocation = allocate_strata(total, &labels, &config.weights)?;
    for (label, count) in allocation.labels.iter().zip(&allocation.counts) {
        eprintln!("stratum {label}: {count} firms");
    }
    let sample = sample_strata(&dataset, &allocation, config.seed)?;
    Ok(render_panel(&sample))
}

/// Generate the default synthetic fixture, planting CR_k brackets.
pub fn cmd_synth(config: &RunConfig) -> Result<String> {
    let k = validate_k(config.k.unwrap_or(1))?;
    let spec = SyntheticSpec::default_fixture(k)?;
    let dataset = generate_synthetic(&spec, config.seed)?;
    Ok(render_panel(&dataset))
}

/// Parse a panel and print an ingestion summary.
pub fn cmd_validate(config: &RunConfig) -> Result<String> {
    let dataset = load_panel(config)?;
    let firms = dataset.firm_ids();
    let years = dataset.years();
    let mut sector_firms: BTreeMap<Sector, usize> = BTreeMap::new();
    for firm in &firms {
        let sector = dataset.firm_sector(firm).expect("firm has records").clone();
        *sector_firms.entry(sector).or_default() += 1;
    }
    let (registers, skipped) = dataset.latest_registers();

    let mut out = String::new();
    out.push_str("panel OK\n");
    out.push_str(&format!("records: {}\n", dataset.len()));
    out.push_str(&format!("firms: {}\n", firms.len()));
    match (years.first(), years.last()) {
        (Some(first), Some(last)) => {
            out.push_str(&format!("years: {first}..={last} ({})\n", years.len()))
        }
        _ => out.push_str("years: none\n"),
    }
    out.push_str(&format!(
        "input columns: {}\n",
        dataset.input_columns().join(", ")
    ));
    out.push_str(&format!("unbalanced: {}\n", dataset.unbalanced()));
    for (sector, count) in &sector_firms {
        out.push_str(&format!("sector {}: {count} firms\n", sector.name()));
    }
    out.push_str(&format!(
        "firms with stake disclosures: {} (skipped: {})\n",
        registers.len(),
        skipped.len()
    ));
    Ok(out)
}
