//! Analytical outputs: ownership-bracket frequency tables and per-group
//! descriptive statistics of efficiency scores, rendered as text, CSV, or
//! JSON.
//!
//! Text output mirrors the familiar table layout (sector rows, bracket
//! columns, a Total row and column; statistics at three decimals). CSV and
//! JSON are machine-stable: byte-identical across runs, JSON keys sorted,
//! reals at 12 significant digits.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::dea::{EfficiencyResult, Rts};
use crate::error::{Error, Result};
use crate::fmt::{format_significant, round_significant};
use crate::ownership::{bracket_of, cr, Bracket, ShareRegister};
use crate::panel::Sector;

/// Output rendering format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

/// One sector row of a frequency table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyRow {
    pub sector: Sector,
    pub counts: [u32; 6],
    pub total: u32,
}

/// Firms per sector and CR_k bracket, with marginals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyTable {
    pub k: usize,
    pub rows: Vec<FrequencyRow>,
    pub column_totals: [u32; 6],
    pub grand_total: u32,
}

/// Count each firm's CR_k into its sector row and bracket column. Every
/// entry must carry a register with at least one disclosed stake; firms
/// without stakes are excluded (and reported) upstream.
pub fn frequency_table(entries: &[(Sector, ShareRegister)], k: usize) -> Result<FrequencyTable> {
    let mut per_sector: BTreeMap<Sector, [u32; 6]> = BTreeMap::new();
    for (sector, register) in entries {
        let ratio = cr(register, k)?;
        // Accumulated stakes may overshoot 100 by rounding slop; the bracket
        // domain is exactly (0, 100].
        let bracket = bracket_of(ratio.value.min(100.0))?;
        per_sector.entry(sector.clone()).or_default()[bracket.index()] += 1;
    }

    let mut rows = Vec::with_capacity(per_sector.len());
    let mut column_totals = [0u32; 6];
    let mut grand_total = 0;
    for (sector, counts) in per_sector {
        let total: u32 = counts.iter().sum();
        for (sum, c) in column_totals.iter_mut().zip(&counts) {
            *sum += c;
        }
        grand_total += total;
        rows.push(FrequencyRow {
            sector,
            counts,
            total,
        });
    }
    Ok(FrequencyTable {
        k,
        rows,
        column_totals,
        grand_total,
    })
}

/// Mean, sample standard deviation, minimum and maximum of the efficiency
/// scores in one (group, returns-to-scale) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct DescriptiveStats {
    pub group: String,
    pub rts: Rts,
    pub mean: f64,
    pub std_dev: f64,
    pub min: f64,
    pub max: f64,
}

/// Summarize scores per (label, returns-to-scale) group. `label_of` names
/// the group of each result — typically the firm's sector. Standard
/// deviation uses the sample (n-1) denominator; a singleton group has
/// standard deviation zero by convention.
pub fn describe<F>(results: &[EfficiencyResult], label_of: F) -> Result<Vec<DescriptiveStats>>
where
    F: Fn(&EfficiencyResult) -> String,
{
    if results.is_empty() {
        return Err(Error::Validation("no efficiency results to describe".into()));
    }
    // Sector-aware ordering: canonical sectors in table order, other labels
    // alphabetically after them.
    let mut groups: BTreeMap<(Rts, Sector), Vec<f64>> = BTreeMap::new();
    for r in results {
        let label = label_of(r);
        let key = Sector::parse(&label).unwrap_or(Sector::Other(label));
        groups.entry((r.rts, key)).or_default().push(r.theta_star);
    }

    let stats = groups
        .into_iter()
        .map(|((rts, sector), scores)| {
            let n = scores.len() as f64;
            let mean = scores.iter().sum::<f64>() / n;
            let std_dev = if scores.len() < 2 {
                0.0
            } else {
                (scores.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
            };
            let min = scores.iter().cloned().fold(f64::INFINITY, f64::min);
            let max = scores.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            DescriptiveStats {
                group: sector.name().to_string(),
                rts,
                mean,
                std_dev,
                min,
                max,
            }
        })
        .collect();
    Ok(stats)
}

// ---------------------------------------------------------------------------
// Rendering

fn pad_left(text: &str, width: usize) -> String {
    format!("{:>width$}", text, width = width)
}

fn pad_right(text: &str, width: usize) -> String {
    format!("{:<width$}", text, width = width)
}

fn text_table(header: &[String], body: &[Vec<String>]) -> String {
    let columns = header.len();
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in body {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let render_row = |cells: &[String]| -> String {
        let mut parts = Vec::with_capacity(columns);
        for (i, cell) in cells.iter().enumerate() {
            if i == 0 {
                parts.push(pad_right(cell, widths[i]));
            } else {
                parts.push(pad_left(cell, widths[i]));
            }
        }
        let mut line = parts.join("  ");
        while line.ends_with(' ') {
            line.pop();
        }
        line
    };
    out.push_str(&render_row(header));
    out.push('\n');
    for row in body {
        out.push_str(&render_row(row));
        out.push('\n');
    }
    out
}

/// Header of the frequency-table CSV rendering.
pub const FREQUENCY_CSV_HEADER: &str =
    "k,sector,up_to_10,from_11_to_30,from_31_to_50,from_51_to_70,from_71_to_90,over_90,total";

/// Header of the descriptive-statistics CSV rendering.
pub const STATS_CSV_HEADER: &str = "group,mode,mean,std_dev,min,max";

/// Render one frequency table.
pub fn render_frequency_table(table: &FrequencyTable, format: OutputFormat) -> String {
    render_frequency_tables(std::slice::from_ref(table), format)
}

/// Render a sequence of frequency tables (one per concentration order).
pub fn render_frequency_tables(tables: &[FrequencyTable], format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => {
            let mut sections = Vec::with_capacity(tables.len());
            for t in tables {
                let mut header = vec![format!("Sector (CR{})", t.k)];
                header.extend(Bracket::ALL.iter().map(|b| b.label().to_string()));
                header.push("Total".to_string());

                let mut body = Vec::with_capacity(t.rows.len() + 1);
                for row in &t.rows {
                    let mut cells = vec![row.sector.name().to_string()];
                    cells.extend(row.counts.iter().map(u32::to_string));
                    cells.push(row.total.to_string());
                    body.push(cells);
                }
                let mut totals = vec!["Total".to_string()];
                totals.extend(t.column_totals.iter().map(u32::to_string));
                totals.push(t.grand_total.to_string());
                body.push(totals);
                sections.push(text_table(&header, &body));
            }
            sections.join("\n")
        }
        OutputFormat::Csv => {
            let mut out = String::from(FREQUENCY_CSV_HEADER);
            out.push('\n');
            for t in tables {
                for row in &t.rows {
                    out.push_str(&format!(
                        "{},{},{},{}\n",
                        t.k,
                        row.sector.name(),
                        row.counts.map(|c| c.to_string()).join(","),
                        row.total
                    ));
                }
                out.push_str(&format!(
                    "{},Total,{},{}\n",
                    t.k,
                    t.column_totals.map(|c| c.to_string()).join(","),
                    t.grand_total
                ));
            }
            out
        }
        OutputFormat::Json => {
            let value = Value::Array(tables.iter().map(frequency_to_json).collect());
            let mut out = serde_json::to_string_pretty(&value).expect("tables serialize");
            out.push('\n');
            out
        }
    }
}

fn bracket_counts_to_json(counts: &[u32; 6]) -> Value {
    let mut map = serde_json::Map::new();
    for (bracket, count) in Bracket::ALL.iter().zip(counts) {
        map.insert(bracket.key().to_string(), json!(count));
    }
    Value::Object(map)
}

fn frequency_to_json(table: &FrequencyTable) -> Value {
    json!({
        "k": table.k,
        "rows": table.rows.iter().map(|r| json!({
            "sector": r.sector.name(),
            "counts": bracket_counts_to_json(&r.counts),
            "total": r.total,
        })).collect::<Vec<_>>(),
        "column_totals": bracket_counts_to_json(&table.column_totals),
        "grand_total": table.grand_total,
    })
}

/// Render descriptive statistics.
pub fn render_stats(stats: &[DescriptiveStats], format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => {
            let header: Vec<String> = ["Group", "Mode", "Mean", "Std Dev", "Min", "Max"]
                .iter()
                .map(|s| s.to_string())
                .collect();
            let body: Vec<Vec<String>> = stats
                .iter()
                .map(|s| {
                    vec![
                        s.group.clone(),
                        s.rts.label().to_string(),
                        format!("{:.3}", s.mean),
                        format!("{:.3}", s.std_dev),
                        format!("{:.3}", s.min),
                        format!("{:.3}", s.max),
                    ]
                })
                .collect();
            text_table(&header, &body)
        }
        OutputFormat::Csv => {
            let mut out = String::from(STATS_CSV_HEADER);
            out.push('\n');
            for s in stats {
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    s.group,
                    s.rts.label(),
                    format_significant(s.mean, 12),
                    format_significant(s.std_dev, 12),
                    format_significant(s.min, 12),
                    format_significant(s.max, 12),
                ));
            }
            out
        }
        OutputFormat::Json => {
            let value = Value::Array(
                stats
                    .iter()
                    .map(|s| {
                        json!({
                            "group": s.group,
                            "mode": s.rts.label(),
                            "mean": round_significant(s.mean, 12),
                            "std_dev": round_significant(s.std_dev, 12),
                            "min": round_significant(s.min, 12),
                            "max": round_significant(s.max, 12),
                        })
                    })
                    .collect(),
            );
            let mut out = serde_json::to_string_pretty(&value).expect("stats serialize");
            out.push('\n');
            out
        }
    }
}

/// Render per-DMU efficiency results.
pub fn render_scores(results: &[EfficiencyResult], format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => {
            let header: Vec<String> = ["DMU", "Group", "Mode", "Score", "Efficient", "Peers"]
                .iter()
                .map(|s| s.to_string())
                .collect();
            let body: Vec<Vec<String>> = results
                .iter()
                .map(|r| {
                    let peers = r
                        .lambdas
                        .iter()
                        .map(|(id, w)| format!("{id}={w:.4}"))
                        .collect::<Vec<_>>()
                        .join(", ");
                    vec![
                        r.dmu_id.clone(),
                        r.group_key.clone(),
                        r.rts.label().to_string(),
                        format!("{:.6}", r.theta_star),
                        if r.efficient { "yes" } else { "no" }.to_string(),
                        peers,
                    ]
                })
                .collect();
            text_table(&header, &body)
        }
        OutputFormat::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer
                .write_record(["dmu_id", "group", "rts", "theta_star", "efficient", "peers"])
                .expect("write to Vec cannot fail");
            for r in results {
                let peers = r
                    .lambdas
                    .iter()
                    .map(|(id, w)| format!("{id}={}", format_significant(*w, 12)))
                    .collect::<Vec<_>>()
                    .join(";");
                writer
                    .write_record([
                        r.dmu_id.as_str(),
                        r.group_key.as_str(),
                        r.rts.label(),
                        &format_significant(r.theta_star, 12),
                        if r.efficient { "true" } else { "false" },
                        &peers,
                    ])
                    .expect("write to Vec cannot fail");
            }
            String::from_utf8(writer.into_inner().expect("no IO on Vec")).expect("UTF-8")
        }
        OutputFormat::Json => {
            let value = Value::Array(
                results
                    .iter()
                    .map(|r| {
                        let mut lambdas = serde_json::Map::new();
                        for (id, w) in &r.lambdas {
                            lambdas.insert(id.clone(), json!(round_significant(*w, 12)));
                        }
                        json!({
                            "dmu_id": r.dmu_id,
                            "group": r.group_key,
                            "rts": r.rts.label(),
                            "theta_star": round_significant(r.theta_star, 12),
                            "efficient": r.efficient,
                            "lambdas": Value::Object(lambdas),
                        })
                    })
                    .collect(),
            );
            let mut out = serde_json::to_string_pretty(&value).expect("scores serialize");
            out.push('\n');
            out
        }
    }
}

// ---------------------------------------------------------------------------
// Parsing the machine formats back (round-trip contracts)

/// Parse the CSV produced by [`render_stats`].
pub fn parse_stats_csv(text: &str) -> Result<Vec<DescriptiveStats>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(header) if header == STATS_CSV_HEADER => {}
        other => {
            return Err(Error::Validation(format!(
                "unexpected statistics header {other:?}"
            )))
        }
    }
    let mut stats = Vec::new();
    for (i, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 6 {
            return Err(Error::Validation(format!(
                "statistics row {} has {} fields, expected 6",
                i + 2,
                fields.len()
            )));
        }
        let number = |text: &str| -> Result<f64> {
            text.parse()
                .map_err(|_| Error::Validation(format!("unparseable number {text:?}")))
        };
        stats.push(DescriptiveStats {
            group: fields[0].to_string(),
            rts: fields[1].parse()?,
            mean: number(fields[2])?,
            std_dev: number(fields[3])?,
            min: number(fields[4])?,
            max: number(fields[5])?,
        });
    }
    Ok(stats)
}

/// Parse the JSON produced by [`render_stats`].
pub fn parse_stats_json(text: &str) -> Result<Vec<DescriptiveStats>> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| Error::Validation(format!("invalid statistics JSON: {e}")))?;
    let items = value
        .as_array()
        .ok_or_else(|| Error::Validation("statistics JSON must be an array".into()))?;
    items
        .iter()
        .map(|item| {
            let field = |name: &str| -> Result<&Value> {
                item.get(name)
                    .ok_or_else(|| Error::Validation(format!("statistics JSON missing {name}")))
            };
            let number = |name: &str| -> Result<f64> {
                field(name)?
                    .as_f64()
                    .ok_or_else(|| Error::Validation(format!("{name} must be a number")))
            };
            Ok(DescriptiveStats {
                group: field("group")?
                    .as_str()
                    .ok_or_else(|| Error::Validation("group must be a string".into()))?
                    .to_string(),
                rts: field("mode")?
                    .as_str()
                    .ok_or_else(|| Error::Validation("mode must be a string".into()))?
                    .parse()?,
                mean: number("mean")?,
                std_dev: number("std_dev")?,
                min: number("min")?,
                max: number("max")?,
            })
        })
        .collect()
}

/// Parse the CSV produced by [`render_frequency_tables`], validating the
/// embedded totals.
pub fn parse_frequency_csv(text: &str) -> Result<Vec<FrequencyTable>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(header) if header == FREQUENCY_CSV_HEADER => {}
        other => {
            return Err(Error::Validation(format!(
                "unexpected frequency header {other:?}"
            )))
        }
    }
    let mut tables: Vec<FrequencyTable> = Vec::new();
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 9 {
            return Err(Error::Validation(format!(
                "frequency row has {} fields, expected 9",
                fields.len()
            )));
        }
        let k: usize = fields[0]
            .parse()
            .map_err(|_| Error::Validation(format!("unparseable k {:?}", fields[0])))?;
        let mut numbers = [0u32; 7];
        for (slot, text) in numbers.iter_mut().zip(&fields[2..]) {
            *slot = text
                .parse()
                .map_err(|_| Error::Validation(format!("unparseable count {text:?}")))?;
        }
        let counts: [u32; 6] = numbers[..6].try_into().expect("six bracket columns");
        let total = numbers[6];

        if tables.last().map(|t: &FrequencyTable| t.k) != Some(k) {
            tables.push(FrequencyTable {
                k,
                rows: Vec::new(),
                column_totals: [0; 6],
                grand_total: 0,
            });
        }
        let table = tables.last_mut().expect("pushed above");
        if fields[1] == "Total" {
            if counts != table.column_totals || total != table.grand_total {
                return Err(Error::Validation(format!(
                    "frequency table k={k}: Total row does not match column sums"
                )));
            }
        } else {
            if counts.iter().sum::<u32>() != total {
                return Err(Error::Validation(format!(
                    "frequency row {}: counts do not sum to the row total",
                    fields[1]
                )));
            }
            for (sum, c) in table.column_totals.iter_mut().zip(&counts) {
                *sum += c;
            }
            table.grand_total += total;
            table.rows.push(FrequencyRow {
                sector: Sector::parse(fields[1])?,
                counts,
                total,
            });
        }
    }
    Ok(tables)
}
