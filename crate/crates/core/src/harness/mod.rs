//! Seeded model generation and the property suite.
//!
//! Every check owns a ChaCha generator seeded from the suite seed and the
//! check's name, so results do not depend on scheduling. Reports carry no
//! timings and are byte-identical for identical configurations.

mod checks;

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use checks::{judge, Case, Outcome};

use crate::error::{Error, Result};
use crate::pointset::{PointSet, MAX_POINTS};
use crate::semantics::{Mode, TopoModel, Valuation};
use crate::topology::{FiniteTopology, Preorder};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenConfig {
    pub seed: u64,
    pub min_points: usize,
    pub max_points: usize,
    /// Number of propositions per model.
    pub props: usize,
    /// Modal depth cap for enumerated formulas.
    pub depth: usize,
    /// Number of enumerated formulas per instance.
    pub formula_cap: usize,
    /// Random instances per check, on top of the fixed ones.
    pub runs: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            seed: 7,
            min_points: 1,
            max_points: 4,
            props: 2,
            depth: 2,
            formula_cap: 60,
            runs: 100,
        }
    }
}

impl GenConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::PreconditionFailed(format!("invalid configuration: {what}")));
        if self.min_points == 0 || self.props == 0 || self.depth == 0 || self.formula_cap == 0 || self.runs == 0 {
            return bad("every cap must be at least 1");
        }
        if self.min_points > self.max_points {
            return bad("min_points exceeds max_points");
        }
        // Two models are joined side by side when comparing them.
        if self.max_points > MAX_POINTS / 2 {
            return bad("max_points is limited to 8");
        }
        if self.props > PROP_NAMES.len() {
            return bad("at most 8 propositions");
        }
        Ok(())
    }

    pub(crate) fn points(&self, rng: &mut ChaCha8Rng, cap: usize) -> usize {
        let hi = self.max_points.min(cap).max(1);
        let lo = self.min_points.min(hi);
        rng.gen_range(lo..=hi)
    }

    fn check_seed(&self, name: &str) -> u64 {
        // FNV-1a, stable across platforms and releases.
        let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
        for byte in name.bytes() {
            hash ^= u64::from(byte);
            hash = hash.wrapping_mul(0x0100_0000_01b3);
        }
        hash ^ self.seed
    }
}

const PROP_NAMES: [&str; 8] = ["p", "q", "r", "s", "t", "u", "v", "w"];

pub fn prop_names(count: usize) -> Vec<String> {
    PROP_NAMES.iter().take(count).map(|s| s.to_string()).collect()
}

/// The Alexandrov topology of the reflexive-transitive closure of `pairs`.
pub fn topology_from_relation(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<FiniteTopology> {
    Ok(FiniteTopology::from_preorder(&Preorder::closure_of(n, pairs)?))
}

pub fn random_topology(cfg: &GenConfig) -> FiniteTopology {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.points(&mut rng, MAX_POINTS);
    random_topology_with(&mut rng, n)
}

/// Samples each off-diagonal pair with a density drawn per call.
pub fn random_topology_with(rng: &mut ChaCha8Rng, n: usize) -> FiniteTopology {
    let density: f64 = rng.gen_range(0.0..0.6);
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| x != y)
        .filter(|_| rng.gen_bool(density))
        .collect();
    topology_from_relation(n, pairs).expect("sampled pairs are in range")
}

/// A connected topology, resampling a few times before falling back to a
/// chain.
pub fn connected_topology_with(rng: &mut ChaCha8Rng, n: usize) -> FiniteTopology {
    for _ in 0..16 {
        let t = random_topology_with(rng, n);
        if t.is_connected() {
            return t;
        }
    }
    FiniteTopology::chain(n)
}

pub fn random_model(cfg: &GenConfig, mode: Mode) -> TopoModel {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.points(&mut rng, MAX_POINTS);
    let space = random_topology_with(&mut rng, n);
    random_model_on(&mut rng, space, cfg.props, mode)
}

/// Uniform valuation sets, pushed into the mode's shape: closed by taking
/// the closure, open by taking the interior.
pub fn random_model_on(rng: &mut ChaCha8Rng, space: FiniteTopology, props: usize, mode: Mode) -> TopoModel {
    let full = space.full();
    let valuation: Valuation = prop_names(props)
        .into_iter()
        .map(|name| {
            let sample = PointSet::from_bits(rng.gen::<u64>() & full.bits());
            let set = match mode {
                Mode::Classical => sample,
                Mode::Paraconsistent => space.closure(sample),
                Mode::Paracomplete => space.interior(sample),
            };
            (name, set)
        })
        .collect();
    TopoModel::new(space, mode, valuation).expect("coerced valuation fits the mode")
}

pub(crate) fn shuffled(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

/// Every topology on `n` labelled points (one per preorder).
pub fn all_topologies(n: usize) -> Vec<FiniteTopology> {
    assert!(n <= 5, "exhaustive enumeration is limited to 5 points");
    let off: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|(x, y)| x != y)
        .collect();
    let mut out = Vec::new();
    for code in 0u32..(1 << off.len()) {
        let mut up: Vec<PointSet> = (0..n).map(PointSet::singleton).collect();
        for (i, &(x, y)) in off.iter().enumerate() {
            if code >> i & 1 == 1 {
                up[x].insert(y);
            }
        }
        let transitive = (0..n).all(|x| up[x].iter().all(|y| up[y].is_subset(up[x])));
        if transitive {
            let order = Preorder::from_up_sets(up).expect("reflexive and transitive");
            out.push(FiniteTopology::from_preorder(&order));
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    Vacuous,
    ReportOnly,
}

impl Verdict {
    fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::Vacuous => "vacuous",
            Verdict::ReportOnly => "report-only",
        }
    }
}

/// A failing case and what went wrong. Replaying `case` through [`judge`]
/// reproduces the failure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub detail: String,
    pub case: Case,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub verdict: Verdict,
    pub runs: usize,
    pub passed: usize,
    pub vacuous: usize,
    pub failed: usize,
    pub seed: u64,
    pub counterexample: Option<Counterexample>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub config: GenConfig,
    /// One entry per claim, ordered by name.
    pub checks: Vec<CheckResult>,
    /// Auxiliary identities and full-language probes, ordered by name.
    pub probes: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks
            .iter()
            .chain(&self.probes)
            .all(|c| c.verdict != Verdict::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn render_table(&self) -> String {
        let c = &self.config;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "seed {}  runs {}  points {}..={}  props {}  depth {}  formulas {}",
            c.seed, c.runs, c.min_points, c.max_points, c.props, c.depth, c.formula_cap
        );
        for (title, rows) in [("checks", &self.checks), ("probes", &self.probes)] {
            let _ = writeln!(out, "\n{title}");
            let _ = writeln!(
                out,
                "  {:<38} {:<12} {:>5} {:>5} {:>8} {:>5}",
                "name", "verdict", "runs", "pass", "vacuous", "fail"
            );
            for r in rows.iter() {
                let _ = writeln!(
                    out,
                    "  {:<38} {:<12} {:>5} {:>5} {:>8} {:>5}",
                    r.name,
                    r.verdict.label(),
                    r.runs,
                    r.passed,
                    r.vacuous,
                    r.failed
                );
            }
        }
        let failing: Vec<&CheckResult> = self
            .checks
            .iter()
            .chain(&self.probes)
            .filter(|r| r.counterexample.is_some())
            .collect();
        if !failing.is_empty() {
            let _ = writeln!(out, "\ncounterexamples");
            for r in failing {
                let cx = r.counterexample.as_ref().expect("filtered");
                let _ = writeln!(out, "  {}: {}", r.name, cx.detail);
                let _ = writeln!(out, "    {}", serde_json::to_string(&cx.case).expect("cases serialize"));
            }
        }
        let failed = self
            .checks
            .iter()
            .chain(&self.probes)
            .filter(|r| r.verdict == Verdict::Fail)
            .count();
        let _ = writeln!(
            out,
            "\n{} checks, {} probes, {} failing",
            self.checks.len(),
            self.probes.len(),
            failed
        );
        out
    }
}

pub fn check_names() -> Vec<&'static str> {
    checks::CHECKS.iter().filter(|s| !s.probe).map(|s| s.name).collect()
}

pub fn probe_names() -> Vec<&'static str> {
    checks::CHECKS.iter().filter(|s| s.probe).map(|s| s.name).collect()
}

pub fn run_property_suite(cfg: &GenConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    let mut results: Vec<(bool, CheckResult)> = checks::CHECKS
        .par_iter()
        .map(|spec| (spec.probe, run_spec(spec, cfg)))
        .collect();
    results.sort_by(|a, b| a.1.name.cmp(&b.1.name));
    let (probes, checks): (Vec<_>, Vec<_>) = results.into_iter().partition(|(probe, _)| *probe);
    Ok(SuiteReport {
        config: cfg.clone(),
        checks: checks.into_iter().map(|(_, r)| r).collect(),
        probes: probes.into_iter().map(|(_, r)| r).collect(),
    })
}

/// Runs one named check or probe.
pub fn run_check(name: &str, cfg: &GenConfig) -> Result<CheckResult> {
    cfg.validate()?;
    let spec = checks::CHECKS
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::PreconditionFailed(format!("unknown check `{name}`")))?;
    Ok(run_spec(spec, cfg))
}

fn run_spec(spec: &checks::CheckSpec, cfg: &GenConfig) -> CheckResult {
    let seed = cfg.check_seed(spec.name);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = (spec.regressions)(cfg);
    for run in 0..cfg.runs {
        cases.push((spec.generate)(cfg, &mut rng, run));
    }
    let mut result = CheckResult {
        name: spec.name.to_string(),
        verdict: Verdict::Vacuous,
        runs: cases.len(),
        passed: 0,
        vacuous: 0,
        failed: 0,
        seed,
        counterexample: None,
        notes: Vec::new(),
    };
    let mut reasons: Vec<String> = Vec::new();
    for mut case in cases {
        case.check = spec.name.to_string();
        let outcome = judge(&case).unwrap_or_else(|e| Outcome::Fail {
            detail: format!("error: {e}"),
            formula: None,
        });
        match outcome {
            Outcome::Pass => result.passed += 1,
            Outcome::Vacuous { reason } => {
                result.vacuous += 1;
                if !reasons.contains(&reason) {
                    reasons.push(reason);
                }
            }
            Outcome::Fail { detail, formula } => {
                result.failed += 1;
                if result.counterexample.is_none() {
                    if let Some(f) = formula {
                        case.formulas = vec![f];
                    }
                    result.counterexample = Some(Counterexample { detail, case });
                }
            }
        }
    }
    reasons.sort();
    result
        .notes
        .extend(reasons.into_iter().map(|r| format!("vacuous: {r}")));
    if !spec.note.is_empty() {
        result.notes.push(spec.note.to_string());
    }
    result.verdict = if spec.report_only {
        Verdict::ReportOnly
    } else if result.failed > 0 {
        Verdict::Fail
    } else if result.passed > 0 {
        Verdict::Pass
    } else {
        Verdict::Vacuous
    };
    result
}
