//! Radial input-oriented efficiency scoring.
//!
//! Each decision-making unit (DMU) is scored against a reference group by
//! solving the envelopment model: minimize the uniform contraction factor
//! theta applied to the target's inputs, subject to a nonnegative combination
//! of peers using no more than the contracted inputs while producing at least
//! the target's outputs. Under constant returns to scale (CRS) the peer
//! weights are unrestricted in scale; variable returns to scale (VRS) adds
//! the convexity row `sum(lambda) = 1`, so VRS scores dominate CRS scores.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::lp::{self, LinearProgram, LpStatus, Relation};

/// Scores within this distance of 1 classify the unit as efficient.
pub const CLASSIFICATION_TOLERANCE: f64 = 1e-6;

/// Peer weights at or below this threshold are numerical noise and dropped.
pub const LAMBDA_REPORT_THRESHOLD: f64 = 1e-7;

/// Returns-to-scale assumption.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Rts {
    Crs,
    Vrs,
}

impl Rts {
    pub fn label(self) -> &'static str {
        match self {
            Rts::Crs => "CRS",
            Rts::Vrs => "VRS",
        }
    }
}

impl std::fmt::Display for Rts {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for Rts {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "crs" => Ok(Rts::Crs),
            "vrs" => Ok(Rts::Vrs),
            other => Err(Error::Validation(format!(
                "unknown returns-to-scale mode {other:?}; expected crs or vrs"
            ))),
        }
    }
}

/// Optional partition labels carried by a DMU.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroupKey {
    pub sector: Option<String>,
    pub year: Option<i32>,
}

/// One decision-making unit: strictly positive input and output quantities.
#[derive(Debug, Clone, PartialEq)]
pub struct Dmu {
    pub id: String,
    pub inputs: Vec<f64>,
    pub outputs: Vec<f64>,
    pub group: GroupKey,
}

impl Dmu {
    pub fn new(id: impl Into<String>, inputs: Vec<f64>, outputs: Vec<f64>) -> Result<Self> {
        Self::with_group(id, inputs, outputs, GroupKey::default())
    }

    pub fn with_group(
        id: impl Into<String>,
        inputs: Vec<f64>,
        outputs: Vec<f64>,
        group: GroupKey,
    ) -> Result<Self> {
        let id = id.into();
        if id.is_empty() {
            return Err(Error::Validation("DMU id must be nonempty".into()));
        }
        if inputs.is_empty() || outputs.is_empty() {
            return Err(Error::Validation(format!(
                "DMU {id} needs at least one input and one output"
            )));
        }
        for (kind, values) in [("input", &inputs), ("output", &outputs)] {
            if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
                return Err(Error::Validation(format!(
                    "DMU {id}: every {kind} must be finite and strictly positive, got {v}"
                )));
            }
        }
        Ok(Self {
            id,
            inputs,
            outputs,
            group,
        })
    }
}

/// The reference set a DMU is scored against: at least one unit, homogeneous
/// dimensions, unique ids.
#[derive(Debug, Clone)]
pub struct Panel {
    dmus: Vec<Dmu>,
}

impl Panel {
    pub fn new(dmus: Vec<Dmu>) -> Result<Self> {
        let Some(first) = dmus.first() else {
            return Err(Error::Validation("panel must contain at least one DMU".into()));
        };
        let (m, s) = (first.inputs.len(), first.outputs.len());
        for d in &dmus {
            if d.inputs.len() != m || d.outputs.len() != s {
                return Err(Error::Validation(format!(
                    "DMU {} has dimensions {}x{}, expected {}x{}",
                    d.id,
                    d.inputs.len(),
                    d.outputs.len(),
                    m,
                    s
                )));
            }
        }
        let mut ids: Vec<&str> = dmus.iter().map(|d| d.id.as_str()).collect();
        ids.sort_unstable();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Validation(format!("duplicate DMU id {}", w[0])));
        }
        Ok(Self { dmus })
    }

    pub fn dmus(&self) -> &[Dmu] {
        &self.dmus
    }

    pub fn len(&self) -> usize {
        self.dmus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dmus.is_empty()
    }

    pub fn input_count(&self) -> usize {
        self.dmus[0].inputs.len()
    }

    pub fn output_count(&self) -> usize {
        self.dmus[0].outputs.len()
    }

    fn position_of(&self, target: &Dmu) -> Result<usize> {
        let idx = self
            .dmus
            .iter()
            .position(|d| d.id == target.id)
            .ok_or_else(|| {
                Error::Validation(format!("target DMU {} is not in the panel", target.id))
            })?;
        let found = &self.dmus[idx];
        if found.inputs != target.inputs || found.outputs != target.outputs {
            return Err(Error::Validation(format!(
                "target DMU {} differs from the panel member with the same id",
                target.id
            )));
        }
        Ok(idx)
    }
}

/// How a panel is partitioned into scoring groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupingRule {
    /// One frontier over the whole panel.
    Pooled,
    /// One frontier per sector, pooled across years.
    Sector,
    /// One frontier per year, across sectors.
    Year,
    /// One frontier per sector-year cell.
    SectorYear,
}

impl GroupingRule {
    fn label_for(self, dmu: &Dmu) -> Result<String> {
        let sector = || {
            dmu.group.sector.clone().ok_or_else(|| {
                Error::Validation(format!(
                    "DMU {} has no sector label required by the grouping rule",
                    dmu.id
                ))
            })
        };
        let year = || {
            dmu.group.year.ok_or_else(|| {
                Error::Validation(format!(
                    "DMU {} has no year label required by the grouping rule",
                    dmu.id
                ))
            })
        };
        Ok(match self {
            GroupingRule::Pooled => "pooled".to_string(),
            GroupingRule::Sector => sector()?,
            GroupingRule::Year => year()?.to_string(),
            GroupingRule::SectorYear => format!("{}:{}", sector()?, year()?),
        })
    }
}

/// Outcome of scoring one DMU.
#[derive(Debug, Clone)]
pub struct EfficiencyResult {
    pub dmu_id: String,
    /// Radial contraction factor, in (0, 1].
    pub theta_star: f64,
    /// Peer weights above [`LAMBDA_REPORT_THRESHOLD`], keyed by DMU id.
    pub lambdas: BTreeMap<String, f64>,
    pub efficient: bool,
    pub rts: Rts,
    pub group_key: String,
}

/// Build the envelopment LP for `target` against `panel`.
///
/// Variables are `(theta, lambda_1 .. lambda_n)` in panel order. Rows are the
/// `m` input constraints, then the `s` output constraints, then the convexity
/// row under VRS.
pub fn build_envelopment_lp(target: &Dmu, panel: &Panel, rts: Rts) -> Result<LinearProgram> {
    panel.position_of(target)?;
    let members: Vec<&Dmu> = panel.dmus.iter().collect();
    Ok(envelopment_lp(target, &members, rts))
}

fn envelopment_lp(target: &Dmu, members: &[&Dmu], rts: Rts) -> LinearProgram {
    let n = members.len();
    let mut objective = vec![0.0; n + 1];
    objective[0] = 1.0;
    let mut lp = LinearProgram::minimize(objective);

    for (i, &x_i0) in target.inputs.iter().enumerate() {
        let mut row = vec![0.0; n + 1];
        row[0] = -x_i0;
        for (j, d) in members.iter().enumerate() {
            row[j + 1] = d.inputs[i];
        }
        lp = lp.subject_to(row, Relation::Le, 0.0);
    }
    for (r, &y_r0) in target.outputs.iter().enumerate() {
        let mut row = vec![0.0; n + 1];
        for (j, d) in members.iter().enumerate() {
            row[j + 1] = d.outputs[r];
        }
        lp = lp.subject_to(row, Relation::Ge, y_r0);
    }
    if rts == Rts::Vrs {
        let mut row = vec![1.0; n + 1];
        row[0] = 0.0;
        lp = lp.subject_to(row, Relation::Eq, 1.0);
    }
    lp
}

/// Score `target` against the whole panel.
pub fn efficiency(target: &Dmu, panel: &Panel, rts: Rts) -> Result<EfficiencyResult> {
    efficiency_with_tolerance(target, panel, rts, lp::DEFAULT_TOLERANCE)
}

pub fn efficiency_with_tolerance(
    target: &Dmu,
    panel: &Panel,
    rts: Rts,
    tolerance: f64,
) -> Result<EfficiencyResult> {
    panel.position_of(target)?;
    let members: Vec<&Dmu> = panel.dmus.iter().collect();
    score_against(target, &members, rts, tolerance, "pooled".to_string())
}

fn score_against(
    target: &Dmu,
    members: &[&Dmu],
    rts: Rts,
    tolerance: f64,
    group_key: String,
) -> Result<EfficiencyResult> {
    let lp = envelopment_lp(target, members, rts);
    let sol = lp::solve(&lp, tolerance)?;
    if sol.status != LpStatus::Optimal {
        // Positive data always admits theta = 1 with the unit as its own
        // peer, so anything else means the inputs were corrupted upstream.
        return Err(Error::Internal(format!(
            "envelopment LP for DMU {} reported {:?} on strictly positive data",
            target.id, sol.status
        )));
    }
    let (value, vars) = sol
        .optimal()
        .ok_or_else(|| Error::Internal("optimal solution missing values".into()))?;

    if !value.is_finite() || value <= 0.0 {
        return Err(Error::Internal(format!(
            "DMU {}: nonpositive efficiency {value} on strictly positive data",
            target.id
        )));
    }
    if value > 1.0 + 1e-9 {
        return Err(Error::Internal(format!(
            "DMU {}: efficiency {value} exceeds 1; the unit is a feasible peer of itself",
            target.id
        )));
    }
    let theta_star = value.min(1.0);

    let mut lambdas = BTreeMap::new();
    for (member, &weight) in members.iter().zip(&vars[1..]) {
        if weight > LAMBDA_REPORT_THRESHOLD {
            lambdas.insert(member.id.clone(), weight);
        }
    }
    if rts == Rts::Vrs {
        let total: f64 = lambdas.values().sum();
        if (total - 1.0).abs() > 1e-6 {
            return Err(Error::Internal(format!(
                "DMU {}: VRS peer weights sum to {total}, expected 1",
                target.id
            )));
        }
    }

    Ok(EfficiencyResult {
        dmu_id: target.id.clone(),
        theta_star,
        lambdas,
        efficient: theta_star >= 1.0 - CLASSIFICATION_TOLERANCE,
        rts,
        group_key,
    })
}

/// Score every DMU against its own group. Results come back in panel order
/// and do not depend on it: each unit sees exactly the members of its group.
pub fn score_all(panel: &Panel, rts: Rts, grouping: GroupingRule) -> Result<Vec<EfficiencyResult>> {
    score_all_with_tolerance(panel, rts, grouping, lp::DEFAULT_TOLERANCE)
}

pub fn score_all_with_tolerance(
    panel: &Panel,
    rts: Rts,
    grouping: GroupingRule,
    tolerance: f64,
) -> Result<Vec<EfficiencyResult>> {
    let mut groups: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (idx, dmu) in panel.dmus.iter().enumerate() {
        groups.entry(grouping.label_for(dmu)?).or_default().push(idx);
    }

    let mut results: Vec<Option<EfficiencyResult>> = vec![None; panel.len()];
    for (label, indices) in groups {
        let members: Vec<&Dmu> = indices.iter().map(|&i| &panel.dmus[i]).collect();
        for &i in &indices {
            let result =
                score_against(&panel.dmus[i], &members, rts, tolerance, label.clone())?;
            results[i] = Some(result);
        }
    }
    Ok(results.into_iter().map(|r| r.expect("every DMU scored")).collect())
}
