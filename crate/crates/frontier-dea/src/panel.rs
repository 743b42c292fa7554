//! Panel data model: CSV ingestion and rendering, stratified sampling, and
//! synthetic-panel generation for testing.
//!
//! The wire format is UTF-8 CSV with a mandatory header row:
//!
//! ```text
//! firm_id,sector,year,labour_expense,capital_expense,interest_expense,revenue,stake_1,stake_2,...
//! ```
//!
//! Input columns are the headers ending in `_expense` (at least one, any
//! number); `stake_*` columns are optional and ragged on the right. One row
//! is one firm-year; `(firm_id, year)` pairs are unique; expenses and revenue
//! are strictly positive.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dea::{Dmu, GroupKey, Panel};
use crate::error::{Error, Result};
use crate::fmt::format_significant;
use crate::ownership::{Bracket, ShareRegister};

/// Sector code. Four canonical sectors are recognized under flexible
/// spellings; anything else is carried through as an open code.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Sector {
    ConsumerProducts,
    IndustrialProducts,
    Construction,
    TradingServices,
    Other(String),
}

impl Sector {
    pub const CANONICAL: [Sector; 4] = [
        Sector::ConsumerProducts,
        Sector::IndustrialProducts,
        Sector::Construction,
        Sector::TradingServices,
    ];

    /// Parse a sector cell. Matching ignores case and separators, so
    /// `Consumer Products`, `consumer_products` and `ConsumerProducts` are
    /// the same sector.
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(Error::Validation("sector must be nonempty".into()));
        }
        let folded: String = trimmed
            .chars()
            .filter(|c| c.is_alphanumeric())
            .flat_map(|c| c.to_lowercase())
            .collect();
        Ok(match folded.as_str() {
            "consumerproducts" => Sector::ConsumerProducts,
            "industrialproducts" => Sector::IndustrialProducts,
            "construction" => Sector::Construction,
            "tradingservices" => Sector::TradingServices,
            _ => Sector::Other(trimmed.to_string()),
        })
    }

    /// Display name, as printed in tables and CSV.
    pub fn name(&self) -> &str {
        match self {
            Sector::ConsumerProducts => "Consumer Products",
            Sector::IndustrialProducts => "Industrial Products",
            Sector::Construction => "Construction",
            Sector::TradingServices => "Trading/Services",
            Sector::Other(name) => name,
        }
    }

    fn rank(&self) -> usize {
        Sector::CANONICAL
            .iter()
            .position(|s| s == self)
            .unwrap_or(Sector::CANONICAL.len())
    }
}

impl std::fmt::Display for Sector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl Ord for Sector {
    // Canonical sectors first, in table order; open codes after, by name.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.rank(), self.name()).cmp(&(other.rank(), other.name()))
    }
}

impl PartialOrd for Sector {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// One firm-year observation. `inputs` aligns with the owning dataset's
/// input columns; an empty `stakes` means no shareholding was disclosed.
#[derive(Debug, Clone, PartialEq)]
pub struct FirmRecord {
    pub firm_id: String,
    pub sector: Sector,
    pub year: i32,
    pub inputs: Vec<f64>,
    pub revenue: f64,
    pub stakes: Vec<f64>,
}

/// An unbalanced panel of firm-year records with named input columns.
#[derive(Debug, Clone, PartialEq)]
pub struct PanelDataset {
    input_columns: Vec<String>,
    records: Vec<FirmRecord>,
}

impl PanelDataset {
    pub fn new(input_columns: Vec<String>, records: Vec<FirmRecord>) -> Result<Self> {
        if input_columns.is_empty() {
            return Err(Error::Validation(
                "dataset needs at least one input column".into(),
            ));
        }
        let mut names = BTreeSet::new();
        for c in &input_columns {
            if c.trim().is_empty() {
                return Err(Error::Validation("input column names must be nonempty".into()));
            }
            if !names.insert(c.as_str()) {
                return Err(Error::Validation(format!("duplicate input column {c}")));
            }
        }
        let mut seen: BTreeSet<(&str, i32)> = BTreeSet::new();
        for r in &records {
            if r.firm_id.trim().is_empty() {
                return Err(Error::Validation("firm_id must be nonempty".into()));
            }
            if r.inputs.len() != input_columns.len() {
                return Err(Error::Validation(format!(
                    "firm {} year {}: {} inputs, expected {}",
                    r.firm_id,
                    r.year,
                    r.inputs.len(),
                    input_columns.len()
                )));
            }
            for (name, value) in input_columns.iter().zip(&r.inputs) {
                if !(value.is_finite() && *value > 0.0) {
                    return Err(Error::Validation(format!(
                        "firm {} year {}: {name} must be positive, got {value}",
                        r.firm_id, r.year
                    )));
                }
            }
            if !(r.revenue.is_finite() && r.revenue > 0.0) {
                return Err(Error::Validation(format!(
                    "firm {} year {}: revenue must be positive, got {}",
                    r.firm_id, r.year, r.revenue
                )));
            }
            // Reuse the register validation for stake bounds.
            ShareRegister::new(r.firm_id.clone(), r.year, r.stakes.clone())?;
            if !seen.insert((r.firm_id.as_str(), r.year)) {
                return Err(Error::Validation(format!(
                    "duplicate (firm_id, year) pair ({}, {})",
                    r.firm_id, r.year
                )));
            }
        }
        Ok(Self {
            input_columns,
            records,
        })
    }

    pub fn input_columns(&self) -> &[String] {
        &self.input_columns
    }

    pub fn records(&self) -> &[FirmRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// True when not every firm is observed in every year of the panel.
    pub fn unbalanced(&self) -> bool {
        let years: BTreeSet<i32> = self.records.iter().map(|r| r.year).collect();
        let mut per_firm: HashMap<&str, BTreeSet<i32>> = HashMap::new();
        for r in &self.records {
            per_firm.entry(&r.firm_id).or_default().insert(r.year);
        }
        per_firm.values().any(|ys| ys.len() != years.len())
    }

    /// Distinct firm ids, sorted.
    pub fn firm_ids(&self) -> Vec<&str> {
        let set: BTreeSet<&str> = self.records.iter().map(|r| r.firm_id.as_str()).collect();
        set.into_iter().collect()
    }

    /// Distinct years, sorted.
    pub fn years(&self) -> Vec<i32> {
        let set: BTreeSet<i32> = self.records.iter().map(|r| r.year).collect();
        set.into_iter().collect()
    }

    /// A firm's sector, taken from its latest observed year.
    pub fn firm_sector(&self, firm_id: &str) -> Option<&Sector> {
        self.records
            .iter()
            .filter(|r| r.firm_id == firm_id)
            .max_by_key(|r| r.year)
            .map(|r| &r.sector)
    }

    /// View the dataset as a scoring panel: one DMU per firm-year, inputs in
    /// column order, revenue as the single output.
    pub fn as_panel(&self) -> Result<Panel> {
        let dmus: Vec<Dmu> = self
            .records
            .iter()
            .map(|r| {
                Dmu::with_group(
                    format!("{}:{}", r.firm_id, r.year),
                    r.inputs.clone(),
                    vec![r.revenue],
                    GroupKey {
                        sector: Some(r.sector.name().to_string()),
                        year: Some(r.year),
                    },
                )
            })
            .collect::<Result<_>>()?;
        Panel::new(dmus)
    }

    /// One register per firm, from the latest year with disclosed stakes.
    /// Firms that never disclose stakes land in the skipped list.
    pub fn latest_registers(&self) -> (Vec<(Sector, ShareRegister)>, Vec<String>) {
        self.registers_by(|records| {
            records
                .iter()
                .filter(|r| !r.stakes.is_empty())
                .max_by_key(|r| r.year)
                .copied()
        })
    }

    /// One register per firm from a specific year; firms without stakes in
    /// that year are skipped.
    pub fn registers_for_year(&self, year: i32) -> (Vec<(Sector, ShareRegister)>, Vec<String>) {
        self.registers_by(|records| {
            records
                .iter()
                .find(|r| r.year == year && !r.stakes.is_empty())
                .copied()
        })
    }

    fn registers_by<'a, F>(&'a self, pick: F) -> (Vec<(Sector, ShareRegister)>, Vec<String>)
    where
        F: Fn(&[&'a FirmRecord]) -> Option<&'a FirmRecord>,
    {
        let mut per_firm: BTreeMap<&str, Vec<&FirmRecord>> = BTreeMap::new();
        for r in &self.records {
            per_firm.entry(&r.firm_id).or_default().push(r);
        }
        let mut registers = Vec::new();
        let mut skipped = Vec::new();
        for (firm, records) in per_firm {
            match pick(&records) {
                Some(r) => {
                    let register = ShareRegister::new(r.firm_id.clone(), r.year, r.stakes.clone())
                        .expect("stakes validated at construction");
                    registers.push((r.sector.clone(), register));
                }
                None => skipped.push(firm.to_string()),
            }
        }
        (registers, skipped)
    }
}

/// Ingestion policy knobs.
#[derive(Debug, Clone)]
pub struct ParseOptions {
    pub min_year: i32,
    pub max_year: i32,
}

impl Default for ParseOptions {
    fn default() -> Self {
        Self {
            min_year: 1900,
            max_year: 2100,
        }
    }
}

const REQUIRED_COLUMNS: [&str; 4] = ["firm_id", "sector", "year", "revenue"];

struct Layout {
    firm_id: usize,
    sector: usize,
    year: usize,
    revenue: usize,
    expenses: Vec<(String, usize)>,
    stakes: Vec<usize>,
    width: usize,
}

fn data_error(line: u64, column: &str, message: impl Into<String>) -> Error {
    Error::CsvData {
        line,
        column: column.to_string(),
        message: message.into(),
    }
}

fn parse_header(headers: &csv::StringRecord) -> Result<Layout> {
    let names: Vec<&str> = headers.iter().map(str::trim).collect();
    let mut position = HashMap::new();
    for (idx, name) in names.iter().enumerate() {
        if position.insert(*name, idx).is_some() {
            return Err(data_error(1, name, "duplicate column"));
        }
    }
    for required in REQUIRED_COLUMNS {
        if !position.contains_key(required) {
            return Err(data_error(1, required, "missing column"));
        }
    }
    let mut expenses = Vec::new();
    let mut stake_numbers: Vec<(usize, usize)> = Vec::new();
    for (idx, name) in names.iter().enumerate() {
        if REQUIRED_COLUMNS.contains(name) {
            continue;
        }
        if let Some(rest) = name.strip_prefix("stake_") {
            let number: usize = rest.parse().map_err(|_| {
                data_error(1, name, "stake columns must be numbered stake_1, stake_2, ...")
            })?;
            stake_numbers.push((number, idx));
            continue;
        }
        if name.ends_with("_expense") {
            expenses.push((name.to_string(), idx));
            continue;
        }
        return Err(data_error(1, name, "unknown column"));
    }
    if expenses.is_empty() {
        return Err(data_error(
            1,
            "*_expense",
            "missing column: at least one input expense column is required",
        ));
    }
    stake_numbers.sort_unstable();
    for (expected, (number, _)) in stake_numbers.iter().enumerate() {
        if *number != expected + 1 {
            return Err(data_error(
                1,
                "stake_*",
                format!(
                    "stake columns must be numbered consecutively from stake_1, found stake_{number}"
                ),
            ));
        }
    }
    Ok(Layout {
        firm_id: position["firm_id"],
        sector: position["sector"],
        year: position["year"],
        revenue: position["revenue"],
        expenses,
        stakes: stake_numbers.into_iter().map(|(_, idx)| idx).collect(),
        width: names.len(),
    })
}

/// Parse the documented CSV format. The first violation is reported with its
/// line and column.
pub fn parse_panel(csv_text: &str) -> Result<PanelDataset> {
    parse_panel_with(csv_text, &ParseOptions::default())
}

pub fn parse_panel_with(csv_text: &str, options: &ParseOptions) -> Result<PanelDataset> {
    if csv_text.trim().is_empty() {
        return Err(Error::Validation("header row missing".into()));
    }
    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .from_reader(csv_text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| Error::Validation(format!("header row missing or unreadable: {e}")))?
        .clone();
    let layout = parse_header(&headers)?;

    let mut records = Vec::new();
    let mut seen: HashMap<(String, i32), u64> = HashMap::new();
    for row in reader.records() {
        let row = row.map_err(|e| Error::Validation(format!("malformed CSV: {e}")))?;
        let line = row.position().map(|p| p.line()).unwrap_or(0);
        if row.len() > layout.width {
            return Err(data_error(
                line,
                "",
                format!("row has {} fields, header has {}", row.len(), layout.width),
            ));
        }
        let field = |idx: usize, column: &str| -> Result<&str> {
            row.get(idx)
                .map(str::trim)
                .filter(|v| !v.is_empty())
                .ok_or_else(|| data_error(line, column, "missing value"))
        };

        let firm_id = field(layout.firm_id, "firm_id")?.to_string();
        let sector = Sector::parse(field(layout.sector, "sector")?)
            .map_err(|e| data_error(line, "sector", e.to_string()))?;
        let year_text = field(layout.year, "year")?;
        let year: i32 = year_text
            .parse()
            .map_err(|_| data_error(line, "year", format!("unparseable year {year_text:?}")))?;
        if year < options.min_year || year > options.max_year {
            return Err(data_error(
                line,
                "year",
                format!(
                    "year {year} outside configured range {}..={}",
                    options.min_year, options.max_year
                ),
            ));
        }

        let positive = |idx: usize, column: &str| -> Result<f64> {
            let text = field(idx, column)?;
            let value: f64 = text
                .parse()
                .map_err(|_| data_error(line, column, format!("unparseable number {text:?}")))?;
            if !(value.is_finite() && value > 0.0) {
                return Err(data_error(
                    line,
                    column,
                    format!("must be strictly positive, got {text}"),
                ));
            }
            Ok(value)
        };
        let inputs: Vec<f64> = layout
            .expenses
            .iter()
            .map(|(name, idx)| positive(*idx, name))
            .collect::<Result<_>>()?;
        let revenue = positive(layout.revenue, "revenue")?;

        // Stake cells are ragged on the right: once one is empty or absent,
        // the rest of the row must be too.
        let mut stakes = Vec::new();
        let mut ended = false;
        for (nth, &idx) in layout.stakes.iter().enumerate() {
            let column = format!("stake_{}", nth + 1);
            let cell = row.get(idx).map(str::trim).unwrap_or("");
            if cell.is_empty() {
                ended = true;
                continue;
            }
            if ended {
                return Err(data_error(
                    line,
                    &column,
                    "stake cells must be contiguous from stake_1 (no gaps)",
                ));
            }
            let value: f64 = cell.parse().map_err(|_| {
                data_error(line, &column, format!("unparseable number {cell:?}"))
            })?;
            if !(value.is_finite() && value > 0.0 && value <= 100.0) {
                return Err(data_error(
                    line,
                    &column,
                    format!("stake {cell} outside (0, 100]"),
                ));
            }
            stakes.push(value);
        }
        let total: f64 = stakes.iter().sum();
        if total > 100.0 + 1e-6 {
            return Err(data_error(
                line,
                "stake_*",
                format!("stakes sum to {total}, exceeding 100%"),
            ));
        }

        if let Some(previous) = seen.insert((firm_id.clone(), year), line) {
            return Err(data_error(
                line,
                "firm_id",
                format!(
                    "duplicate (firm_id, year) pair ({firm_id}, {year}); first seen on line {previous}"
                ),
            ));
        }
        records.push(FirmRecord {
            firm_id,
            sector,
            year,
            inputs,
            revenue,
            stakes,
        });
    }
    PanelDataset::new(
        layout.expenses.into_iter().map(|(name, _)| name).collect(),
        records,
    )
}

/// Render a dataset back to the documented CSV format, reals at 12
/// significant digits. `parse_panel(render_panel(d))` reproduces `d` for any
/// dataset whose values carry at most 12 significant digits, and
/// render-parse-render is always byte-identical.
pub fn render_panel(dataset: &PanelDataset) -> String {
    let max_stakes = dataset
        .records
        .iter()
        .map(|r| r.stakes.len())
        .max()
        .unwrap_or(0);
    let mut writer = csv::WriterBuilder::new()
        .flexible(true)
        .from_writer(Vec::new());

    let mut header: Vec<String> = vec!["firm_id".into(), "sector".into(), "year".into()];
    header.extend(dataset.input_columns.iter().cloned());
    header.push("revenue".into());
    for i in 1..=max_stakes {
        header.push(format!("stake_{i}"));
    }
    writer.write_record(&header).expect("write to Vec cannot fail");

    for r in &dataset.records {
        let mut row: Vec<String> = vec![r.firm_id.clone(), r.sector.name().to_string(), r.year.to_string()];
        row.extend(r.inputs.iter().map(|v| format_significant(*v, 12)));
        row.push(format_significant(r.revenue, 12));
        row.extend(r.stakes.iter().map(|v| format_significant(*v, 12)));
        writer.write_record(&row).expect("write to Vec cannot fail");
    }
    String::from_utf8(writer.into_inner().expect("no IO on Vec")).expect("CSV output is UTF-8")
}

/// Proportional allocation of `total` across strata.
#[derive(Debug, Clone, PartialEq)]
pub struct StrataAllocation {
    pub labels: Vec<String>,
    pub weights: Vec<f64>,
    pub counts: Vec<u32>,
}

/// Largest-remainder rounding of `total * weight` per stratum. Counts sum to
/// `total` exactly; remainder ties break toward the earlier stratum.
pub fn allocate_strata(total: u32, labels: &[String], weights: &[f64]) -> Result<StrataAllocation> {
    if total == 0 {
        return Err(Error::Validation("allocation total must be positive".into()));
    }
    if labels.len() != weights.len() || weights.is_empty() {
        return Err(Error::Validation(format!(
            "{} labels for {} weights",
            labels.len(),
            weights.len()
        )));
    }
    for (label, &w) in labels.iter().zip(weights) {
        if !(w.is_finite() && w >= 0.0) {
            return Err(Error::Validation(format!(
                "stratum {label}: weight must be nonnegative, got {w}"
            )));
        }
    }
    let sum: f64 = weights.iter().sum();
    if (sum - 1.0).abs() > 1e-6 {
        return Err(Error::Validation(format!(
            "weights sum to {sum}, expected 1 within 1e-6"
        )));
    }

    let quotas: Vec<f64> = weights.iter().map(|w| w / sum * total as f64).collect();
    let mut counts: Vec<u32> = quotas.iter().map(|q| q.floor() as u32).collect();
    let assigned: u32 = counts.iter().sum();
    let mut order: Vec<usize> = (0..quotas.len()).collect();
    order.sort_by(|&a, &b| {
        let fa = quotas[a] - quotas[a].floor();
        let fb = quotas[b] - quotas[b].floor();
        fb.partial_cmp(&fa).expect("finite quotas").then(a.cmp(&b))
    });
    for &i in order.iter().take((total - assigned) as usize) {
        counts[i] += 1;
    }
    Ok(StrataAllocation {
        labels: labels.to_vec(),
        weights: weights.to_vec(),
        counts,
    })
}

/// Sample firms without replacement within each sector stratum, reproducibly
/// from `seed`. The allocation's labels must match the population's sector
/// strata (sorted canonically); selected firms keep all their records.
pub fn sample_strata(
    population: &PanelDataset,
    allocation: &StrataAllocation,
    seed: u64,
) -> Result<PanelDataset> {
    let mut strata: BTreeMap<Sector, Vec<&str>> = BTreeMap::new();
    for firm in population.firm_ids() {
        let sector = population
            .firm_sector(firm)
            .expect("firm ids come from records")
            .clone();
        strata.entry(sector).or_default().push(firm);
    }
    let stratum_labels: Vec<&str> = strata.keys().map(Sector::name).collect();
    if stratum_labels.len() != allocation.labels.len()
        || stratum_labels
            .iter()
            .zip(&allocation.labels)
            .any(|(a, b)| a != b)
    {
        return Err(Error::Validation(format!(
            "allocation strata {:?} do not match population strata {:?}",
            allocation.labels, stratum_labels
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut selected: BTreeSet<&str> = BTreeSet::new();
    for ((sector, firms), &count) in strata.iter().zip(&allocation.counts) {
        if count as usize > firms.len() {
            return Err(Error::Validation(format!(
                "allocation {count} exceeds stratum {} size {}",
                sector.name(),
                firms.len()
            )));
        }
        for idx in rand::seq::index::sample(&mut rng, firms.len(), count as usize) {
            selected.insert(firms[idx]);
        }
    }

    let records: Vec<FirmRecord> = population
        .records
        .iter()
        .filter(|r| selected.contains(r.firm_id.as_str()))
        .cloned()
        .collect();
    PanelDataset::new(population.input_columns.clone(), records)
}

/// Requested CR_k bracket counts for one sector's firms.
#[derive(Debug, Clone, PartialEq)]
pub struct StakePlan {
    /// Concentration order the bracket targets apply to.
    pub k: usize,
    /// Firms per bracket, in bracket order; the remainder of the sector
    /// discloses no stakes.
    pub bracket_counts: [u32; 6],
}

/// One sector of the generated panel.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorPlan {
    pub sector: Sector,
    pub efficient_firms: u32,
    pub inefficient_firms: u32,
    pub stake_plan: Option<StakePlan>,
}

/// Generator parameters for [`generate_synthetic`].
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticSpec {
    pub sectors: Vec<SectorPlan>,
    /// Inclusive year range; the generated panel is balanced.
    pub years: (i32, i32),
    pub input_columns: Vec<String>,
    /// Revenue scale per firm-year, drawn uniformly.
    pub revenue_range: (f64, f64),
    /// Input inflation for inefficient firm-years, drawn uniformly; must
    /// stay above 1. A firm-year inflated by `f` scores exactly `1/f` under
    /// CRS.
    pub inefficiency_range: (f64, f64),
}

const BRACKET_COUNTS_CR1: [(Sector, [u32; 6]); 4] = [
    (Sector::ConsumerProducts, [1, 9, 15, 4, 0, 0]),
    (Sector::IndustrialProducts, [2, 28, 20, 7, 0, 0]),
    (Sector::Construction, [1, 8, 3, 0, 0, 0]),
    (Sector::TradingServices, [6, 24, 18, 9, 1, 0]),
];

const BRACKET_COUNTS_CR2: [(Sector, [u32; 6]); 4] = [
    (Sector::ConsumerProducts, [0, 3, 10, 13, 3, 0]),
    (Sector::IndustrialProducts, [1, 16, 23, 14, 3, 0]),
    (Sector::Construction, [0, 4, 6, 2, 0, 0]),
    (Sector::TradingServices, [0, 17, 18, 18, 5, 0]),
];

impl SyntheticSpec {
    /// The default fixture: 156 firms split 29/57/12/58 across the four
    /// canonical sectors, observed 2000-2010, three expense inputs, and a
    /// fixed CR_k bracket distribution per sector. `k` selects which
    /// concentration order the planted stakes target (1, 2, or 4); k = 4
    /// reuses the k = 1 distribution.
    pub fn default_fixture(k: usize) -> Result<Self> {
        let counts: &[(Sector, [u32; 6]); 4] = match k {
            1 | 4 => &BRACKET_COUNTS_CR1,
            2 => &BRACKET_COUNTS_CR2,
            _ => {
                return Err(Error::Validation(format!(
                    "no planted fixture for concentration order {k}; use 1, 2, or 4"
                )))
            }
        };
        let sectors = counts
            .iter()
            .map(|(sector, bracket_counts)| {
                let firms: u32 = bracket_counts.iter().sum();
                SectorPlan {
                    sector: sector.clone(),
                    efficient_firms: (firms / 5).max(1),
                    inefficient_firms: firms - (firms / 5).max(1),
                    stake_plan: Some(StakePlan {
                        k,
                        bracket_counts: *bracket_counts,
                    }),
                }
            })
            .collect();
        Ok(Self {
            sectors,
            years: (2000, 2010),
            input_columns: vec![
                "labour_expense".into(),
                "capital_expense".into(),
                "interest_expense".into(),
            ],
            revenue_range: (100.0, 100_000.0),
            inefficiency_range: (1.25, 12.5),
        })
    }

    fn validate(&self) -> Result<()> {
        if self.sectors.is_empty() {
            return Err(Error::Validation(
                "synthetic spec has no sectors; nothing to generate".into(),
            ));
        }
        let mut seen = BTreeSet::new();
        for plan in &self.sectors {
            if !seen.insert(plan.sector.clone()) {
                return Err(Error::Validation(format!(
                    "sector {} listed twice",
                    plan.sector
                )));
            }
            let firms = plan.efficient_firms + plan.inefficient_firms;
            if firms == 0 {
                return Err(Error::Validation(format!(
                    "sector {}: needs at least one firm",
                    plan.sector
                )));
            }
            if plan.inefficient_firms > 0 && plan.efficient_firms == 0 {
                return Err(Error::Validation(format!(
                    "sector {}: inefficient firms need at least one efficient peer",
                    plan.sector
                )));
            }
            if let Some(sp) = &plan.stake_plan {
                if sp.k == 0 {
                    return Err(Error::Validation(format!(
                        "sector {}: concentration order k must be >= 1",
                        plan.sector
                    )));
                }
                let planted: u32 = sp.bracket_counts.iter().sum();
                if planted > firms {
                    return Err(Error::Validation(format!(
                        "sector {}: {planted} bracket-planted firms exceed sector size {firms}",
                        plan.sector
                    )));
                }
            }
        }
        if self.years.0 > self.years.1 {
            return Err(Error::Validation(format!(
                "year range {}..={} is empty",
                self.years.0, self.years.1
            )));
        }
        if self.input_columns.is_empty() {
            return Err(Error::Validation("need at least one input column".into()));
        }
        let (rev_lo, rev_hi) = self.revenue_range;
        if !(rev_lo.is_finite() && rev_hi.is_finite() && 0.0 < rev_lo && rev_lo <= rev_hi) {
            return Err(Error::Validation(format!(
                "revenue range ({rev_lo}, {rev_hi}) must be positive and ordered"
            )));
        }
        let (ineff_lo, ineff_hi) = self.inefficiency_range;
        if !(ineff_lo.is_finite() && ineff_hi.is_finite() && 1.0 < ineff_lo && ineff_lo <= ineff_hi)
        {
            return Err(Error::Validation(format!(
                "inefficiency range ({ineff_lo}, {ineff_hi}) must exceed 1 and be ordered"
            )));
        }
        Ok(())
    }
}

impl Default for SyntheticSpec {
    fn default() -> Self {
        Self::default_fixture(1).expect("k = 1 is a supported fixture")
    }
}

fn firm_prefix(sector: &Sector, index: usize) -> String {
    match sector {
        Sector::ConsumerProducts => "CP".to_string(),
        Sector::IndustrialProducts => "IP".to_string(),
        Sector::Construction => "CN".to_string(),
        Sector::TradingServices => "TS".to_string(),
        Sector::Other(_) => format!("S{index}F"),
    }
}

/// A point on the unit simplex, bounded away from the faces so inputs never
/// collapse toward zero.
fn random_direction(rng: &mut ChaCha8Rng, dims: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..dims).map(|_| rng.random_range(0.2..1.0)).collect();
    let sum: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v / sum).collect()
}

/// Stakes whose largest-k sum lands strictly inside `bracket`, with up to two
/// smaller stragglers to vary disclosed counts.
fn planted_stakes(rng: &mut ChaCha8Rng, k: usize, bracket: Bracket) -> Vec<f64> {
    let (lo, hi) = bracket.bounds();
    let target = lo + (hi - lo) * rng.random_range(0.02..0.98);

    let raw: Vec<f64> = (0..k).map(|_| rng.random_range(1.0..2.0)).collect();
    let sum: f64 = raw.iter().sum();
    let mut stakes: Vec<f64> = raw.into_iter().map(|r| target * r / sum).collect();

    let min_share = stakes.iter().cloned().fold(f64::INFINITY, f64::min);
    let mut headroom = 100.0 - target;
    for _ in 0..rng.random_range(0..3_u32) {
        let cap = (min_share * 0.9).min(headroom * 0.5);
        if cap <= 1e-3 {
            break;
        }
        let extra = rng.random_range(cap * 0.2..cap);
        stakes.push(extra);
        headroom -= extra;
    }
    stakes.shuffle(rng);
    stakes
}

/// Generate a balanced synthetic panel with a planted efficiency frontier
/// and bracket-targeted stake registers.
///
/// Every efficient firm-year has input vector `t * d` for a simplex
/// direction `d` and scale `t = revenue`, so its L1 input norm equals its
/// revenue and no peer combination can undercut it: planted-efficient units
/// score exactly 1 under CRS and VRS. Inefficient firm-years reuse an
/// efficient peer's direction with inputs inflated by `f > 1` and score
/// exactly `1/f` under CRS.
pub fn generate_synthetic(spec: &SyntheticSpec, seed: u64) -> Result<PanelDataset> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dims = spec.input_columns.len();
    let (year_lo, year_hi) = spec.years;
    let mut records = Vec::new();

    for (sector_index, plan) in spec.sectors.iter().enumerate() {
        let firms = (plan.efficient_firms + plan.inefficient_firms) as usize;
        let efficient = plan.efficient_firms as usize;

        let mut directions: Vec<Vec<f64>> = Vec::with_capacity(firms);
        for f in 0..firms {
            if f < efficient {
                directions.push(random_direction(&mut rng, dims));
            } else {
                let parent = rng.random_range(0..efficient);
                directions.push(directions[parent].clone());
            }
        }

        let mut stakes_of_firm: Vec<Vec<f64>> = vec![Vec::new(); firms];
        if let Some(sp) = &plan.stake_plan {
            let mut pool: Vec<Option<Bracket>> = Vec::with_capacity(firms);
            for (bracket, &count) in Bracket::ALL.iter().zip(&sp.bracket_counts) {
                pool.extend(std::iter::repeat_n(Some(*bracket), count as usize));
            }
            pool.resize(firms, None);
            pool.shuffle(&mut rng);
            for (slot, assigned) in stakes_of_firm.iter_mut().zip(&pool) {
                if let Some(bracket) = assigned {
                    *slot = planted_stakes(&mut rng, sp.k, *bracket);
                }
            }
        }

        let prefix = firm_prefix(&plan.sector, sector_index);
        for f in 0..firms {
            let firm_id = format!("{prefix}{:03}", f + 1);
            for year in year_lo..=year_hi {
                let revenue = rng.random_range(spec.revenue_range.0..=spec.revenue_range.1);
                let inflation = if f < efficient {
                    1.0
                } else {
                    rng.random_range(spec.inefficiency_range.0..=spec.inefficiency_range.1)
                };
                let inputs: Vec<f64> = directions[f]
                    .iter()
                    .map(|d| d * revenue * inflation)
                    .collect();
                records.push(FirmRecord {
                    firm_id: firm_id.clone(),
                    sector: plan.sector.clone(),
                    year,
                    inputs,
                    revenue,
                    stakes: stakes_of_firm[f].clone(),
                });
            }
        }
    }
    PanelDataset::new(spec.input_columns.clone(), records)
}
