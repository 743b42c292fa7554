//! Acceptance suite: one test per release criterion, each printing a
//! PASS line with its runtime. Run with
//! `cargo test -p frontier-dea --test acceptance -- --nocapture`.

mod common;

use std::time::Instant;

use common::{naive_stats, oracle_solve, OracleOutcome};
use frontier_dea::dea::{self, build_envelopment_lp, Dmu, GroupKey, GroupingRule, Panel, Rts};
use frontier_dea::panel::{
    allocate_strata, generate_synthetic, parse_panel, render_panel, Sector, SyntheticSpec,
};
use frontier_dea::report;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn positive(rng: &mut ChaCha8Rng) -> f64 {
    rng.random_range(1..=100_000) as f64 / 100.0
}

fn random_panel(rng: &mut ChaCha8Rng, max_n: usize, max_m: usize, max_s: usize) -> Panel {
    let n = rng.random_range(1..=max_n);
    let m = rng.random_range(1..=max_m);
    let s = rng.random_range(1..=max_s);
    let dmus: Vec<Dmu> = (0..n)
        .map(|i| {
            let inputs: Vec<f64> = (0..m).map(|_| positive(rng)).collect();
            let outputs: Vec<f64> = (0..s).map(|_| positive(rng)).collect();
            Dmu::new(format!("D{i}"), inputs, outputs).unwrap()
        })
        .collect();
    Panel::new(dmus).unwrap()
}

fn pass(criterion: &str, started: Instant) {
    println!("criterion {criterion}: PASS ({:.2?})", started.elapsed());
}

#[test]
fn criterion_01_nesting_and_range_on_random_panels() {
    let started = Instant::now();
    for seed in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let panel = random_panel(&mut rng, 50, 3, 2);
        let crs = dea::score_all(&panel, Rts::Crs, GroupingRule::Pooled).unwrap();
        let vrs = dea::score_all(&panel, Rts::Vrs, GroupingRule::Pooled).unwrap();
        for (c, v) in crs.iter().zip(&vrs) {
            assert!(
                c.theta_star > 0.0 && c.theta_star <= 1.0 + 1e-9,
                "seed {seed} {}: CRS {} out of range",
                c.dmu_id,
                c.theta_star
            );
            assert!(
                v.theta_star > 0.0 && v.theta_star <= 1.0 + 1e-9,
                "seed {seed} {}: VRS {} out of range",
                v.dmu_id,
                v.theta_star
            );
            assert!(
                v.theta_star >= c.theta_star - 1e-7,
                "seed {seed} {}: VRS {} below CRS {}",
                c.dmu_id,
                v.theta_star,
                c.theta_star
            );
        }
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 10.0,
        "nesting sweep took {elapsed:.2?}, budget is 10 s"
    );
    pass("01 nesting property (200 panels, VRS >= CRS, theta in (0,1])", started);
}

#[test]
fn criterion_02_oracle_equivalence_on_small_panels() {
    let started = Instant::now();
    for seed in 0..500u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(1_000 + seed);
        let panel = random_panel(&mut rng, 6, 2, 2);
        for rts in [Rts::Crs, Rts::Vrs] {
            let results = dea::score_all(&panel, rts, GroupingRule::Pooled).unwrap();
            for (dmu, result) in panel.dmus().iter().zip(&results) {
                let lp = build_envelopment_lp(dmu, &panel, rts).unwrap();
                match oracle_solve(&lp) {
                    OracleOutcome::Optimal { value: expected, .. } => assert!(
                        (result.theta_star - expected).abs() <= 1e-7,
                        "seed {seed} {} {rts:?}: simplex {} vs oracle {expected}",
                        dmu.id,
                        result.theta_star
                    ),
                    OracleOutcome::Infeasible => {
                        panic!("seed {seed} {}: oracle found no feasible vertex", dmu.id)
                    }
                }
            }
        }
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 30.0,
        "oracle sweep took {elapsed:.2?}, budget is 30 s"
    );
    pass("02 vertex-enumeration oracle equivalence (500 panels, CRS+VRS)", started);
}

#[test]
fn criterion_03_closed_form_single_ratio() {
    let started = Instant::now();
    for seed in 0..1000u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(2_000 + seed);
        let panel = random_panel(&mut rng, 30, 1, 1);
        let ratios: Vec<(f64, f64)> = panel
            .dmus()
            .iter()
            .map(|d| (d.inputs[0], d.outputs[0]))
            .collect();
        let results = dea::score_all(&panel, Rts::Crs, GroupingRule::Pooled).unwrap();
        for (i, r) in results.iter().enumerate() {
            let expected = common::closed_form_single_ratio(&ratios, i);
            assert!(
                (r.theta_star - expected).abs() <= 1e-9,
                "seed {seed} {}: {} vs closed form {expected}",
                r.dmu_id,
                r.theta_star
            );
        }
    }
    pass("03 closed form theta = (y0/x0)/max(yj/xj) (1000 panels)", started);
}

#[test]
fn criterion_04_units_invariance_under_column_rescaling() {
    let started = Instant::now();
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(3_000 + seed);
        let panel = random_panel(&mut rng, 12, 3, 2);
        let m = panel.input_count();
        let s = panel.output_count();
        let base_crs = dea::score_all(&panel, Rts::Crs, GroupingRule::Pooled).unwrap();
        let base_vrs = dea::score_all(&panel, Rts::Vrs, GroupingRule::Pooled).unwrap();

        for column in 0..m + s {
            let factor = 10f64.powf(rng.random_range(-3.0..3.0));
            let scaled: Vec<Dmu> = panel
                .dmus()
                .iter()
                .map(|d| {
                    let mut inputs = d.inputs.clone();
                    let mut outputs = d.outputs.clone();
                    if column < m {
                        inputs[column] *= factor;
                    } else {
                        outputs[column - m] *= factor;
                    }
                    Dmu::new(d.id.clone(), inputs, outputs).unwrap()
                })
                .collect();
            let scaled_panel = Panel::new(scaled).unwrap();
            for (rts, base) in [(Rts::Crs, &base_crs), (Rts::Vrs, &base_vrs)] {
                let rescored = dea::score_all(&scaled_panel, rts, GroupingRule::Pooled).unwrap();
                for (b, r) in base.iter().zip(&rescored) {
                    assert!(
                        (b.theta_star - r.theta_star).abs() <= 1e-7,
                        "seed {seed} {} {rts:?}: {} vs {} after scaling column {column} by {factor}",
                        b.dmu_id,
                        b.theta_star,
                        r.theta_star
                    );
                }
            }
        }
    }
    pass("04 units invariance under column rescaling (c in [1e-3, 1e3])", started);
}

#[test]
fn criterion_05_every_group_has_a_frontier_unit() {
    let started = Instant::now();
    let sectors = ["A", "B", "C"];
    for seed in 0..150u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(4_000 + seed);
        let n = rng.random_range(3..=24);
        let dmus: Vec<Dmu> = (0..n)
            .map(|i| {
                let sector = sectors[rng.random_range(0..sectors.len())];
                Dmu::with_group(
                    format!("D{i}"),
                    vec![positive(&mut rng), positive(&mut rng)],
                    vec![positive(&mut rng)],
                    GroupKey {
                        sector: Some(sector.to_string()),
                        year: Some(2000 + rng.random_range(0..3)),
                    },
                )
                .unwrap()
            })
            .collect();
        let panel = Panel::new(dmus).unwrap();
        for grouping in [
            GroupingRule::Pooled,
            GroupingRule::Sector,
            GroupingRule::Year,
            GroupingRule::SectorYear,
        ] {
            for rts in [Rts::Crs, Rts::Vrs] {
                let results = dea::score_all(&panel, rts, grouping).unwrap();
                let mut groups: std::collections::BTreeMap<&str, bool> =
                    std::collections::BTreeMap::new();
                for r in &results {
                    let frontier = groups.entry(r.group_key.as_str()).or_insert(false);
                    *frontier = *frontier || r.theta_star >= 1.0 - 1e-6;
                }
                for (group, has_frontier) in groups {
                    assert!(
                        has_frontier,
                        "seed {seed} {rts:?} {grouping:?}: group {group} has no frontier unit"
                    );
                }
            }
        }
    }
    pass("05 frontier existence in every scoring group", started);
}

#[test]
fn criterion_06_frequency_table_matrix_reproduction() {
    let started = Instant::now();
    let spec = SyntheticSpec::default_fixture(1).unwrap();
    let dataset = parse_panel(&render_panel(&generate_synthetic(&spec, 42).unwrap())).unwrap();
    let (registers, skipped) = dataset.latest_registers();
    assert!(skipped.is_empty(), "every firm in the fixture has stakes");
    let table = report::frequency_table(&registers, 1).unwrap();

    let expected_rows = [
        (Sector::ConsumerProducts, [1, 9, 15, 4, 0, 0], 29),
        (Sector::IndustrialProducts, [2, 28, 20, 7, 0, 0], 57),
        (Sector::Construction, [1, 8, 3, 0, 0, 0], 12),
        (Sector::TradingServices, [6, 24, 18, 9, 1, 0], 58),
    ];
    assert_eq!(table.rows.len(), expected_rows.len());
    for (row, (sector, counts, total)) in table.rows.iter().zip(&expected_rows) {
        assert_eq!(&row.sector, sector);
        assert_eq!(&row.counts, counts, "{sector:?} bracket counts");
        assert_eq!(row.total, *total);
    }
    assert_eq!(table.column_totals, [10, 69, 56, 20, 1, 0]);
    assert_eq!(table.grand_total, 156);
    pass("06 CR1 frequency matrix reproduced exactly (156 firms)", started);
}

#[test]
fn criterion_07_cr2_column_totals_reproduction() {
    let started = Instant::now();
    let spec = SyntheticSpec::default_fixture(2).unwrap();
    let dataset = parse_panel(&render_panel(&generate_synthetic(&spec, 42).unwrap())).unwrap();
    let (registers, _) = dataset.latest_registers();
    let table = report::frequency_table(&registers, 2).unwrap();
    assert_eq!(table.column_totals, [1, 40, 57, 47, 11, 0]);
    assert_eq!(table.grand_total, 156);
    pass("07 CR2 column totals (1, 40, 57, 47, 11)/156 reproduced", started);
}

#[test]
fn criterion_08_stratified_allocation_exact_counts() {
    let started = Instant::now();
    let labels: Vec<String> = ["trading/services", "industrial products", "consumer products", "construction"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let allocation = allocate_strata(156, &labels, &[0.372, 0.365, 0.186, 0.077]).unwrap();
    assert_eq!(allocation.counts, vec![58, 57, 29, 12]);
    pass("08 allocate_strata(156, weights) = (58, 57, 29, 12)", started);
}

#[test]
fn criterion_09_descriptive_stats_match_naive_reference() {
    let started = Instant::now();
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(5_000 + seed);
        let groups = ["Construction", "Trading/Services", "Consumer Products"];
        let n = rng.random_range(1..=60);
        let results: Vec<dea::EfficiencyResult> = (0..n)
            .map(|i| dea::EfficiencyResult {
                dmu_id: format!("D{i}"),
                theta_star: rng.random_range(1..=1_000_000) as f64 / 1_000_000.0,
                lambdas: Default::default(),
                efficient: false,
                rts: if rng.random_range(0..2) == 0 { Rts::Crs } else { Rts::Vrs },
                group_key: groups[rng.random_range(0..groups.len())].to_string(),
            })
            .collect();
        let stats = report::describe(&results, |r| r.group_key.clone()).unwrap();
        for s in &stats {
            let scores: Vec<f64> = results
                .iter()
                .filter(|r| r.group_key == s.group && r.rts == s.rts)
                .map(|r| r.theta_star)
                .collect();
            let (mean, std_dev, min, max) = naive_stats(&scores);
            assert!((s.mean - mean).abs() <= 1e-12, "mean {} vs {mean}", s.mean);
            assert!(
                (s.std_dev - std_dev).abs() <= 1e-12,
                "std {} vs {std_dev}",
                s.std_dev
            );
            assert_eq!(s.min, min);
            assert_eq!(s.max, max);
        }
    }
    pass("09 describe matches two-pass reference at 1e-12 (100 sets)", started);
}

#[test]
fn criterion_10_full_scale_panel_scores_quickly() {
    let spec = SyntheticSpec::default_fixture(1).unwrap();
    let dataset = parse_panel(&render_panel(&generate_synthetic(&spec, 42).unwrap())).unwrap();
    assert_eq!(dataset.firm_ids().len(), 156);
    assert_eq!(dataset.years().len(), 11);
    assert_eq!(dataset.input_columns().len(), 3);
    let panel = dataset.as_panel().unwrap();
    assert_eq!(panel.len(), 1716);

    let started = Instant::now();
    let crs = dea::score_all(&panel, Rts::Crs, GroupingRule::Sector).unwrap();
    let vrs = dea::score_all(&panel, Rts::Vrs, GroupingRule::Sector).unwrap();
    let elapsed = started.elapsed();
    assert_eq!(crs.len(), 1716);
    assert_eq!(vrs.len(), 1716);
    assert!(
        elapsed.as_secs_f64() < 5.0,
        "scoring 156 firms x 11 years took {elapsed:.2?}, budget is 5 s"
    );
    pass("10 156 firms x 11 years pooled per sector scored under 5 s", started);
}

#[test]
fn criterion_11_pipeline_is_byte_deterministic() {
    let started = Instant::now();
    let dir = std::env::temp_dir().join(format!("frontier-dea-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();

    let run_pipeline = |tag: &str| -> Vec<Vec<u8>> {
        let binary = env!("CARGO_BIN_EXE_frontier-dea");
        let panel = dir.join(format!("panel-{tag}.csv"));
        let mut outputs = Vec::new();

        let synth = std::process::Command::new(binary)
            .args(["synth", "--seed", "17", "--out", panel.to_str().unwrap()])
            .output()
            .unwrap();
        assert!(synth.status.success(), "synth failed");
        outputs.push(std::fs::read(&panel).unwrap());

        for args in [
            vec!["score", panel.to_str().unwrap(), "--rts", "vrs", "--format", "csv"],
            vec!["ownership", panel.to_str().unwrap(), "--format", "csv"],
            vec!["describe", panel.to_str().unwrap(), "--format", "csv"],
        ] {
            let out = std::process::Command::new(binary).args(&args).output().unwrap();
            assert!(out.status.success(), "{args:?} failed");
            outputs.push(out.stdout);
        }
        outputs
    };

    let first = run_pipeline("a");
    let second = run_pipeline("b");
    assert_eq!(first.len(), second.len());
    for (i, (a, b)) in first.iter().zip(&second).enumerate() {
        assert_eq!(a, b, "pipeline stage {i} differs between identical runs");
    }
    std::fs::remove_dir_all(&dir).ok();
    pass("11 synth -> score -> ownership -> describe byte-identical", started);
}
