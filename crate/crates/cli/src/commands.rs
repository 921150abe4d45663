use std::fmt;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use bellsort::estimators::theory_gamma_radians;
use bellsort::report::{fixed6, fixed6_array, round2};
use bellsort::resort::log10_binomial;
use bellsort::sources::{read_trial_file, write_counterfactual_csv, write_subrun_csv, TrialFile};
use bellsort::{
    gamma_pooled, gamma_subruns, generate_subruns, lhv_generate, qm_generate, resort_cascade,
    split_random, termwise_bound_check, Angle, CorrelationLaw, CounterfactualDataset, LhvModel,
    ResortPolicy, ResortReport, RngSpec, SettingPair, SettingsQuad, SubRunDataset, SubRunTrial,
};
use serde::Serialize;

use crate::args::{
    AuditArgs, EstimateArgs, Mode, Output, PolicyArg, ResortArgs, SimulateArgs, SplitArgs,
    SweepArgs,
};

/// Misuse that clap cannot express on its own. Exits with status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn open_output(out: &Output) -> Result<Box<dyn Write>> {
    Ok(match &out.output {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("cannot create {}", path.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn read_input(path: &Path) -> Result<TrialFile> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    Ok(read_trial_file(BufReader::new(file))?)
}

fn read_subruns(path: &Path) -> Result<SubRunDataset> {
    match read_input(path)? {
        TrialFile::SubRuns(d) => Ok(d),
        TrialFile::Counterfactual(_) => {
            anyhow::bail!(
                "{} holds counterfactual trials; expected sub-runs",
                path.display()
            )
        }
    }
}

fn write_json<T: Serialize>(out: &Output, value: &T) -> Result<()> {
    let mut w = open_output(out)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn policy(kind: PolicyArg, seed: Option<u64>) -> Result<ResortPolicy> {
    match (kind, seed) {
        (PolicyArg::Stable, _) => Ok(ResortPolicy::Stable),
        (PolicyArg::UniformRandom, Some(seed)) => {
            Ok(ResortPolicy::UniformRandom(RngSpec::new(seed, 0)))
        }
        (PolicyArg::UniformRandom, None) => {
            Err(UsageError("--policy uniform-random requires --seed".to_string()).into())
        }
    }
}

pub fn simulate(args: &SimulateArgs) -> Result<()> {
    let a = &args.angles;
    let settings = SettingsQuad::from_degrees(a.a, a.d, a.b, a.c)?;
    let rng = RngSpec::new(args.seed, args.stream);
    let mut w = open_output(&args.out)?;
    match args.mode {
        Mode::Lhv => {
            let n = args.n.expect("enforced by clap");
            let model: LhvModel = args.model.into();
            let data = lhv_generate(&model, &settings, n, rng)?;
            write_counterfactual_csv(&mut w, &data)?;
        }
        Mode::Qm => {
            let n_per = args.n_per.expect("enforced by clap");
            let data = generate_subruns(&settings, args.law.into(), n_per, rng)?;
            write_subrun_csv(&mut w, &data)?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn split(args: &SplitArgs) -> Result<()> {
    let data = match read_input(&args.input)? {
        TrialFile::Counterfactual(d) => d,
        TrialFile::SubRuns(_) => anyhow::bail!(
            "{} already holds sub-runs; split needs counterfactual trials",
            args.input.display()
        ),
    };
    let subs = split_random(&data, RngSpec::new(args.seed, args.stream))?;
    let mut w = open_output(&args.out)?;
    write_subrun_csv(&mut w, &subs)?;
    w.flush()?;
    Ok(())
}

#[derive(Debug, Serialize)]
struct EstimateReport {
    kind: &'static str,
    #[serde(serialize_with = "fixed6")]
    gamma: f64,
    #[serde(serialize_with = "fixed6_array")]
    per_term: [f64; 4],
    n_used: [usize; 4],
    bound_satisfied: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_abs: Option<i64>,
}

fn estimate_counterfactual(data: &CounterfactualDataset) -> Result<EstimateReport> {
    let g = gamma_pooled(data)?;
    let bound = termwise_bound_check(data)?;
    Ok(EstimateReport {
        kind: "counterfactual",
        gamma: g.value,
        per_term: g.per_term,
        n_used: g.n_used,
        bound_satisfied: g.satisfies_bound(),
        max_abs: Some(bound.max_abs),
    })
}

fn estimate_subruns(data: &SubRunDataset) -> Result<EstimateReport> {
    let g = gamma_subruns(data)?;
    Ok(EstimateReport {
        kind: "subruns",
        gamma: g.value,
        per_term: g.per_term,
        n_used: g.n_used,
        bound_satisfied: g.satisfies_bound(),
        max_abs: None,
    })
}

pub fn estimate(args: &EstimateArgs) -> Result<()> {
    let report = match read_input(&args.input)? {
        TrialFile::Counterfactual(d) => estimate_counterfactual(&d)?,
        TrialFile::SubRuns(d) => estimate_subruns(&d)?,
    };
    write_json(&args.out, &report)
}

fn prepare_cascade(data: SubRunDataset, trim: bool) -> Result<SubRunDataset> {
    let lengths = data.lengths();
    if lengths.iter().all(|&l| l == lengths[0]) {
        return Ok(data);
    }
    if trim {
        return Ok(data.trimmed());
    }
    let [ab, ac, db, dc] = lengths;
    Err(bellsort::Error::UnequalSubRuns { ab, ac, db, dc }).context("pass --trim to truncate")
}

pub fn resort(args: &ResortArgs) -> Result<()> {
    let policy = policy(args.policy, args.seed)?;
    let data = prepare_cascade(read_subruns(&args.input)?, args.trim)?;
    let report = resort_cascade(&data, &policy)?;
    write_json(&args.out, &report)
}

/// Settings at B-arm offset `δ` (radians): `a = 0, d = π/4, b = π/8 − δ,
/// c = −π/8 + δ`. At `δ = π/8` the B settings coincide.
fn sweep_angles(offset: f64) -> [f64; 4] {
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};
    [0.0, FRAC_PI_4, FRAC_PI_8 - offset, -FRAC_PI_8 + offset]
}

fn sweep_point(angles: [f64; 4], law: CorrelationLaw, n_per: usize, rng: RngSpec) -> Result<f64> {
    let [a, d, b, c] = angles.map(Angle::from_radians);
    let (a, d, b, c) = (a?, d?, b?, c?);
    let mut lists: [Vec<SubRunTrial>; 4] = Default::default();
    for (pair, (x, y)) in SettingPair::ALL
        .into_iter()
        .zip([(a, b), (a, c), (d, b), (d, c)])
    {
        lists[pair.index()] = qm_generate(x, y, law, n_per, rng.fork(pair.index() as u64))?;
    }
    Ok(gamma_subruns(&SubRunDataset::from_lists(lists, None))?.value)
}

pub fn sweep(args: &SweepArgs) -> Result<()> {
    let law: CorrelationLaw = args.law.into();
    let root = RngSpec::new(args.seed, 0);
    let mut w = open_output(&args.out)?;
    writeln!(w, "offset_deg,gamma_theory,gamma_empirical")?;
    for i in 0..=args.steps {
        let offset_deg = if args.steps == 0 {
            0.0
        } else {
            args.max_offset * i as f64 / args.steps as f64
        };
        let angles = sweep_angles(offset_deg.to_radians());
        let theory = theory_gamma_radians(angles, law);
        let empirical = sweep_point(angles, law, args.n_per, root.fork(i as u64))?;
        writeln!(
            w,
            "{:.2},{:.6},{:.6}",
            round2(offset_deg),
            theory,
            empirical
        )?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Serialize)]
struct SequenceContext {
    sequence: &'static str,
    n: usize,
    k: usize,
    /// log10 of the chance that an independent uniform re-sorting reproduces
    /// this sequence exactly: `−log10 C(n, k)`.
    log10_closure_probability: f64,
}

#[derive(Debug, Serialize)]
struct AuditReport {
    n_used: [usize; 4],
    trimmed: bool,
    estimate: EstimateReport,
    resort: Option<ResortReport>,
    sequences: Vec<SequenceContext>,
    verdict: String,
}

fn sequence_contexts(data: &SubRunDataset) -> Vec<SequenceContext> {
    let entries = [
        ("a1", SettingPair::Ab, true),
        ("b1", SettingPair::Ab, false),
        ("a2", SettingPair::Ac, true),
        ("c2", SettingPair::Ac, false),
        ("d3", SettingPair::Db, true),
        ("b3", SettingPair::Db, false),
        ("d4", SettingPair::Dc, true),
        ("c4", SettingPair::Dc, false),
    ];
    entries
        .into_iter()
        .map(|(name, pair, arm_a)| {
            let seq = if arm_a {
                data.side_a(pair)
            } else {
                data.side_b(pair)
            };
            let (n, k) = (seq.len(), seq.plus_count());
            SequenceContext {
                sequence: name,
                n,
                k,
                log10_closure_probability: bellsort::report::round6(-log10_binomial(
                    n as u64, k as u64,
                )),
            }
        })
        .collect()
}

fn verdict(report: Option<&ResortReport>) -> String {
    const CLOSED: &str = "re-sortable; Bell bound applies";
    const OPEN: &str = "not re-sortable; Bell bound inapplicable";
    let Some(r) = report else {
        return format!("{OPEN} (unequal sub-run lengths)");
    };
    if r.closure {
        return CLOSED.to_string();
    }
    if r.all_feasible() {
        return format!(
            "{OPEN} (b1 and re-sorted b3 differ at {} positions)",
            r.hamming_b
        );
    }
    let deficits: Vec<String> = r
        .count_deficits
        .iter()
        .enumerate()
        .map(|(i, d)| format!("step {}: {:+}", i + 1, d))
        .collect();
    format!("{OPEN} (count deficits {})", deficits.join(", "))
}

pub fn audit(args: &AuditArgs) -> Result<()> {
    let policy = policy(args.policy, args.seed)?;
    let raw = read_subruns(&args.input)?;
    let n_used = raw.lengths();
    let estimate = estimate_subruns(&raw)?;
    let equal = n_used.iter().all(|&l| l == n_used[0]);
    let trimmed = !equal && args.trim;
    let data = if trimmed { raw.trimmed() } else { raw };
    let resort = if equal || trimmed {
        Some(resort_cascade(&data, &policy)?)
    } else {
        None
    };
    let report = AuditReport {
        n_used,
        trimmed,
        estimate,
        sequences: sequence_contexts(&data),
        verdict: verdict(resort.as_ref()),
        resort,
    };
    write_json(&args.out, &report)
}
