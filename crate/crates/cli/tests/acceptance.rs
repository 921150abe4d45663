//! Acceptance suite: one pass/fail line per criterion, non-zero exit if any
//! criterion fails.
//!
//! Run with `cargo test -p bellsort-cli --test acceptance`.

use std::fs;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use bellsort::estimators::split_with_sources;
use bellsort::resort::{binomial, closure_frequency};
use bellsort::{
    gamma_pooled, gamma_subruns, generate_subruns, lhv_generate, qm_generate, resort_cascade,
    termwise_bound_check, theory_gamma, Angle, CorrelationLaw, CounterfactualDataset,
    CounterfactualTrial, LhvModel, Outcome, ResortPolicy, RngSpec, SettingPair, SettingsQuad,
    SubRunDataset, SubRunTrial, TrialPermutation,
};
use rand::Rng;

struct Verdict {
    pass: bool,
    detail: String,
}

impl Verdict {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Verdict {
            pass,
            detail: detail.into(),
        }
    }
}

fn within_time(v: Verdict, elapsed: Duration, limit: Duration) -> Verdict {
    let ok = elapsed < limit;
    Verdict::new(
        v.pass && ok,
        format!(
            "{}; runtime {:.2}s (limit {:.0}s)",
            v.detail,
            elapsed.as_secs_f64(),
            limit.as_secs_f64()
        ),
    )
}

fn outcome(bit: u64) -> Outcome {
    Outcome::from_sign(bit & 1 == 1)
}

fn counterfactual_from_code(code: u64, n: usize) -> CounterfactualDataset {
    CounterfactualDataset::from_trials(
        (0..n).map(|j| {
            let b = code >> (4 * j);
            CounterfactualTrial {
                a: outcome(b),
                d: outcome(b >> 1),
                b: outcome(b >> 2),
                c: outcome(b >> 3),
            }
        }),
        None,
    )
}

fn subruns_from_code(code: u64, n_per: usize) -> SubRunDataset {
    let mut lists: [Vec<SubRunTrial>; 4] = Default::default();
    let mut bits = code;
    for list in lists.iter_mut() {
        for _ in 0..n_per {
            list.push(SubRunTrial::new(outcome(bits), outcome(bits >> 1)));
            bits >>= 2;
        }
    }
    SubRunDataset::from_lists(lists, None)
}

/// Shared copies of one counterfactual run, optionally with each list
/// shuffled independently (pairs move as units).
fn shared_run_subruns(n: usize, shuffle: bool, rng: &mut impl Rng) -> SubRunDataset {
    let cf = CounterfactualDataset::from_trials(
        (0..n).map(|_| CounterfactualTrial {
            a: Outcome::from_sign(rng.gen()),
            d: Outcome::from_sign(rng.gen()),
            b: Outcome::from_sign(rng.gen()),
            c: Outcome::from_sign(rng.gen()),
        }),
        None,
    );
    let shared = SubRunDataset::shared_copies(&cf);
    if !shuffle {
        return shared;
    }
    let lists = shared
        .into_lists()
        .map(|l| TrialPermutation::uniform(l.len(), rng).apply(&l).unwrap());
    SubRunDataset::from_lists(lists, None)
}

// 1. Exhaustive pooled bound.
fn criterion_1() -> Verdict {
    let start = Instant::now();
    let mut max_abs: f64 = 0.0;
    let mut all_two = true;
    let mut datasets = 0u64;
    for n in 1..=3 {
        for code in 0..1u64 << (4 * n) {
            let data = counterfactual_from_code(code, n);
            let g = gamma_pooled(&data).unwrap().value;
            let bound = termwise_bound_check(&data).unwrap();
            max_abs = max_abs.max(g.abs());
            all_two &= bound.all_values_are_two() && (bound.gamma - g).abs() <= 1e-12;
            datasets += 1;
        }
    }
    let v = Verdict::new(
        max_abs == 2.0 && all_two,
        format!("{datasets} datasets, max |Γ| = {max_abs}, per-trial values all ±2: {all_two}"),
    );
    within_time(v, start.elapsed(), Duration::from_secs(1))
}

// 2. Pooled and sub-run estimators agree on hidden-variable data.
fn criterion_2() -> Verdict {
    let start = Instant::now();
    let q = SettingsQuad::photon_optimal();
    let mut worst: f64 = 0.0;
    for seed in 0..20 {
        let data = lhv_generate(&LhvModel::SignMalus, &q, 100_000, RngSpec::new(seed, 0)).unwrap();
        let split = split_with_sources(&data, RngSpec::new(seed, 1)).unwrap();
        let diff = (gamma_subruns(&split.dataset).unwrap().value
            - gamma_pooled(&data).unwrap().value)
            .abs();
        worst = worst.max(diff);
    }
    let v = Verdict::new(
        worst <= 0.05,
        format!("20 seeds, max |Γ_sub − Γ_pooled| = {worst:.4} (≤ 0.05)"),
    );
    within_time(v, start.elapsed(), Duration::from_secs(5))
}

// 3. The sub-run estimator carries no Bell bound.
fn criterion_3() -> Verdict {
    let start = Instant::now();
    let p = |a, b| SubRunTrial::new(outcome(a), outcome(b));
    let crafted = SubRunDataset::new(
        vec![p(1, 1)],
        vec![p(1, 1)],
        vec![p(1, 1)],
        vec![p(1, 0)],
        None,
    );
    let crafted_gamma = gamma_subruns(&crafted).unwrap().value;

    let q = SettingsQuad::from_degrees(0.0, 45.0, 22.5, -22.5).unwrap();
    let theory = theory_gamma(&q, CorrelationLaw::PhotonMalus);
    let data = generate_subruns(
        &q,
        CorrelationLaw::PhotonMalus,
        1_000_000,
        RngSpec::new(2024, 0),
    )
    .unwrap();
    let g = gamma_subruns(&data).unwrap().value;
    let v = Verdict::new(
        crafted_gamma == 4.0 && (g - theory).abs() <= 0.02 && (theory - 2.8284).abs() < 1e-4,
        format!("crafted Γ = {crafted_gamma}; QM Γ = {g:.4} vs theory {theory:.4} (± 0.02)"),
    );
    within_time(v, start.elapsed(), Duration::from_secs(10))
}

// 4. Quantum sampler fidelity.
fn criterion_4() -> Verdict {
    let law = CorrelationLaw::PhotonMalus;
    let n = 1_000_000;
    let tol_cell = 4.0 / (n as f64).sqrt();
    let mut worst_corr: f64 = 0.0;
    let mut worst_cell: f64 = 0.0;
    for i in 0..8 {
        let alpha_deg = 5.0 * i as f64;
        let beta_deg = alpha_deg + 90.0 * i as f64 / 7.0;
        let (alpha, beta) = (
            Angle::from_degrees(alpha_deg).unwrap(),
            Angle::from_degrees(beta_deg).unwrap(),
        );
        let trials = qm_generate(alpha, beta, law, n, RngSpec::new(400 + i, 0)).unwrap();
        let mut cells = [0usize; 4];
        let mut sum = 0i64;
        for t in &trials {
            sum += t.product();
            cells[usize::from(!t.outcome_a.is_plus()) * 2 + usize::from(!t.outcome_b.is_plus())] +=
                1;
        }
        let expected = (2.0 * (alpha_deg - beta_deg).to_radians()).cos();
        worst_corr = worst_corr.max((sum as f64 / n as f64 - expected).abs());
        for (idx, count) in cells.iter().enumerate() {
            let s = if idx / 2 == 0 {
                Outcome::Plus
            } else {
                Outcome::Minus
            };
            let t = if idx % 2 == 0 {
                Outcome::Plus
            } else {
                Outcome::Minus
            };
            let p = law.joint_probability(alpha, beta, s, t);
            worst_cell = worst_cell.max((*count as f64 / n as f64 - p).abs());
        }
    }
    Verdict::new(
        worst_corr <= 0.01 && worst_cell <= tol_cell,
        format!("8 pairs, max correlation error {worst_corr:.4} (≤ 0.01), max cell error {worst_cell:.5} (≤ {tol_cell:.4})"),
    )
}

// 5. Re-sorting never changes Γ.
fn criterion_5() -> Verdict {
    let mut rng = RngSpec::new(5, 0).block(0);
    let mut worst: f64 = 0.0;
    let mut random_feasible = 0;
    while random_feasible < 1000 {
        let n = rng.gen_range(1..=200);
        let data = shared_run_subruns(n, true, &mut rng);
        let policy = if rng.gen() {
            ResortPolicy::Stable
        } else {
            ResortPolicy::UniformRandom(RngSpec::new(rng.gen(), 0))
        };
        let report = resort_cascade(&data, &policy).unwrap();
        let Some(g) = report.gamma_resorted else {
            return Verdict::new(false, "shuffled shared run was infeasible");
        };
        worst = worst.max((g - gamma_subruns(&data).unwrap().value).abs());
        random_feasible += 1;
    }
    let mut exhaustive_feasible = 0;
    for code in 0..1u64 << 16 {
        let data = subruns_from_code(code, 2);
        let report = resort_cascade(&data, &ResortPolicy::Stable).unwrap();
        if let Some(g) = report.gamma_resorted {
            worst = worst.max((g - report.gamma_subruns).abs());
            exhaustive_feasible += 1;
        }
    }
    Verdict::new(
        worst <= 1e-12,
        format!("{random_feasible} random + {exhaustive_feasible} exhaustive (n_per = 2) feasible datasets, max |Γ_resorted − Γ_sub| = {worst:e}"),
    )
}

// 6. Closure is rare.
fn criterion_6() -> Verdict {
    let mut pass = true;
    let mut parts = Vec::new();
    for (i, (n, k)) in [(4, 2), (6, 3), (10, 5)].into_iter().enumerate() {
        let trials = 100_000;
        let est = closure_frequency(n, k, trials, RngSpec::new(600 + i as u64, 0)).unwrap();
        let exact = 1.0 / binomial(n as u64, k as u64);
        let se = (exact * (1.0 - exact) / trials as f64).sqrt();
        let ok = (est.probability - exact).abs() <= 3.0 * se;
        pass &= ok;
        parts.push(format!("({n},{k}) {:.5} vs {:.5}", est.probability, exact));
    }

    let q = SettingsQuad::photon_optimal();
    let seeds = 1000u64;
    let mut closures = 0;
    let mut in_range = 0;
    let mut hamming_sum = 0usize;
    for seed in 0..seeds {
        let data = generate_subruns(
            &q,
            CorrelationLaw::PhotonMalus,
            1000,
            RngSpec::new(seed, 60),
        )
        .unwrap();
        let report =
            resort_cascade(&data, &ResortPolicy::UniformRandom(RngSpec::new(seed, 61))).unwrap();
        closures += usize::from(report.closure);
        in_range += usize::from((400..=600).contains(&report.hamming_b));
        hamming_sum += report.hamming_b;
    }
    let fraction = in_range as f64 / seeds as f64;
    pass &= closures == 0 && fraction >= 0.99;
    // b₁ and b̃₃ are linked through a₁ → c̃₂ → d̃₄, so their expected
    // mismatch count is n(1 − E_ab E_ac E_dc E_db)/2 rather than n/2.
    let chain: f64 = SettingPair::ALL
        .iter()
        .map(|&p| {
            let (x, y) = q.pair(p);
            CorrelationLaw::PhotonMalus.correlation(x, y)
        })
        .product();
    parts.push(format!(
        "QM n_per=1000: {closures}/{seeds} closures, hamming_b in [400,600] for {:.1}% (need ≥ 99%), mean hamming_b {:.1} (chain prediction {:.1})",
        100.0 * fraction,
        hamming_sum as f64 / seeds as f64,
        1000.0 * (1.0 - chain) / 2.0
    ));
    Verdict::new(pass, parts.join("; "))
}

// 7. A closed cascade restores the bound.
fn criterion_7() -> Verdict {
    let mut rng = RngSpec::new(7, 0).block(0);
    let mut closed = 0;
    let mut worst: f64 = 0.0;
    let mut checked = 0;
    for i in 0..4000 {
        let n = rng.gen_range(1..=60);
        let data = shared_run_subruns(n, i % 2 == 1, &mut rng);
        for policy in [
            ResortPolicy::Stable,
            ResortPolicy::UniformRandom(RngSpec::new(i, 1)),
        ] {
            let report = resort_cascade(&data, &policy).unwrap();
            checked += 1;
            if report.closure {
                closed += 1;
                worst = worst.max(report.gamma_resorted.unwrap().abs());
            }
        }
    }
    let q = SettingsQuad::photon_optimal();
    for seed in 0..200 {
        let cf = lhv_generate(&LhvModel::SignMalus, &q, 1000, RngSpec::new(seed, 70)).unwrap();
        let report =
            resort_cascade(&SubRunDataset::shared_copies(&cf), &ResortPolicy::Stable).unwrap();
        checked += 1;
        if report.closure {
            closed += 1;
            worst = worst.max(report.gamma_resorted.unwrap().abs());
        }
    }
    Verdict::new(
        closed > 0 && worst <= 2.0,
        format!("{closed}/{checked} cascades closed, max |Γ_resorted| on closure = {worst}"),
    )
}

// 8. Determinism across repeats and thread counts.
fn run_cli(threads: usize, args: &[&str], dir: &Path) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_bellsort"))
        .arg("--threads")
        .arg(threads.to_string())
        .args(args)
        .current_dir(dir)
        .output()
        .expect("spawn bellsort");
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out.stdout
}

fn criterion_8() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let setup_cf = run_cli(
        1,
        &["simulate", "--mode", "lhv", "--n", "20000", "--seed", "8"],
        p,
    );
    fs::write(p.join("cf.csv"), &setup_cf).unwrap();
    let setup_qm = run_cli(
        1,
        &[
            "simulate", "--mode", "qm", "--n-per", "20000", "--seed", "8",
        ],
        p,
    );
    fs::write(p.join("qm.csv"), &setup_qm).unwrap();

    let commands: [&[&str]; 9] = [
        &["simulate", "--mode", "lhv", "--n", "30000", "--seed", "1"],
        &[
            "simulate",
            "--mode",
            "qm",
            "--n-per",
            "30000",
            "--seed",
            "1",
            "--law",
            "spin-half",
        ],
        &["split", "-i", "cf.csv", "--seed", "2"],
        &["estimate", "-i", "cf.csv"],
        &["estimate", "-i", "qm.csv"],
        &[
            "resort",
            "-i",
            "qm.csv",
            "--policy",
            "uniform-random",
            "--seed",
            "1",
        ],
        &["resort", "-i", "qm.csv"],
        &["sweep", "--n-per", "10000", "--seed", "3", "--steps", "4"],
        &[
            "audit",
            "-i",
            "qm.csv",
            "--policy",
            "uniform-random",
            "--seed",
            "5",
        ],
    ];
    let mut mismatches = Vec::new();
    for args in commands {
        let reference = run_cli(1, args, p);
        for threads in [1, 2, 4] {
            if run_cli(threads, args, p) != reference {
                mismatches.push(format!("{} (threads {threads})", args[0]));
            }
        }
    }
    Verdict::new(
        mismatches.is_empty(),
        if mismatches.is_empty() {
            format!(
                "{} commands byte-identical across repeats and 1/2/4 threads",
                commands.len()
            )
        } else {
            format!("differing outputs: {}", mismatches.join(", "))
        },
    )
}

type Check = fn() -> Verdict;

fn main() -> ExitCode {
    let criteria: [(&str, Check); 8] = [
        ("exact pooled bound", criterion_1),
        ("pooled vs sub-run agreement on LHV data", criterion_2),
        ("sub-run estimator has no Bell bound", criterion_3),
        ("QM sampler fidelity", criterion_4),
        ("cascade value invariance", criterion_5),
        ("closure rarity", criterion_6),
        ("conditional bound restoration", criterion_7),
        ("determinism", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        println!(
            "[{}] criterion {}: {name}: {}",
            if v.pass { "PASS" } else { "FAIL" },
            i + 1,
            v.detail
        );
        failed += usize::from(!v.pass);
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
