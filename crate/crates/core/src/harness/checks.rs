use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{connected_topology_with, random_model_on, random_topology_with, shuffled, GenConfig};
use crate::bisimulation::{
    greatest_topo_bisimulation, hennessy_milner_check, is_continuous_topo_bisimulation, PointRelation,
};
use crate::error::{Error, Result};
use crate::formula::{enumerate_formulas, parse, Formula, Fragment};
use crate::io::{KripkeFile, ModelFile};
use crate::kripke::{check_translation, kripke_to_topo, topo_to_kripke, KripkeModel};
use crate::morphisms::{
    check_pushforward, enumerate_continuous_maps, enumerate_homeomorphisms, homotopic_models, pushforward_model,
    HomotopyFence, PointMap, Transfer,
};
use crate::pointset::PointSet;
use crate::semantics::{Mode, TheoryVerdict, TopoModel, Valuation};
use crate::topology::{FiniteTopology, Preorder};

/// One self-contained instance of a check.
///
/// An empty `formulas` list means "every formula the enumerator yields
/// under `depth` and `formula_cap`", except for checks that read it as a
/// theory basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub check: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<ModelFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kripke: Option<KripkeFile>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub maps: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pairs: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sets: Vec<PointSet>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub formulas: Vec<String>,
    pub depth: usize,
    pub formula_cap: usize,
}

impl Case {
    fn new(check: &str, cfg: &GenConfig) -> Self {
        Case {
            check: check.to_string(),
            model: None,
            target: None,
            kripke: None,
            maps: Vec::new(),
            pairs: Vec::new(),
            sets: Vec::new(),
            formulas: Vec::new(),
            depth: cfg.depth,
            formula_cap: cfg.formula_cap,
        }
    }

    fn with_model(mut self, model: &TopoModel) -> Self {
        self.model = Some(ModelFile::from_model(model));
        self
    }

    fn with_target(mut self, model: &TopoModel) -> Self {
        self.target = Some(ModelFile::from_model(model));
        self
    }

    fn with_map(mut self, map: &PointMap) -> Self {
        self.maps.push(map.as_slice().to_vec());
        self
    }

    fn model(&self) -> Result<TopoModel> {
        self.model.as_ref().ok_or_else(|| missing("model"))?.to_model()
    }

    fn target(&self) -> Result<TopoModel> {
        self.target.as_ref().ok_or_else(|| missing("target"))?.to_model()
    }

    fn map(&self, index: usize, codomain: usize) -> Result<PointMap> {
        PointMap::new(codomain, self.maps.get(index).ok_or_else(|| missing("map"))?.clone())
    }

    fn explicit_formulas(&self) -> Result<Vec<Formula>> {
        self.formulas.iter().map(|f| parse(f).map_err(Error::from)).collect()
    }

    /// The case's formulas, or the enumeration over `props` in `mode`.
    fn formulas(&self, props: &[String], mode: Mode) -> Result<Vec<Formula>> {
        if self.formulas.is_empty() {
            Ok(enumerate_formulas(props, self.depth, self.formula_cap, mode))
        } else {
            self.explicit_formulas()
        }
    }
}

fn missing(what: &str) -> Error {
    Error::PreconditionFailed(format!("case has no {what}"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Vacuous { reason: String },
    Fail { detail: String, formula: Option<String> },
}

fn pass() -> Result<Outcome> {
    Ok(Outcome::Pass)
}

fn vacuous(reason: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome::Vacuous { reason: reason.into() })
}

fn fail(detail: impl Into<String>, formula: Option<&Formula>) -> Result<Outcome> {
    Ok(Outcome::Fail {
        detail: detail.into(),
        formula: formula.map(|f| f.to_string()),
    })
}

fn joint_props(a: &TopoModel, b: &TopoModel) -> Vec<String> {
    a.props()
        .into_iter()
        .chain(b.props())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

pub(crate) struct CheckSpec {
    pub name: &'static str,
    pub probe: bool,
    pub report_only: bool,
    pub note: &'static str,
    pub generate: fn(&GenConfig, &mut ChaCha8Rng, usize) -> Case,
    pub regressions: fn(&GenConfig) -> Vec<Case>,
    judge: fn(&Case) -> Result<Outcome>,
}

macro_rules! check {
    ($name:literal, $judge:ident, $gen:ident, $reg:ident) => {
        check!($name, $judge, $gen, $reg, probe = false, report_only = false, note = "")
    };
    ($name:literal, $judge:ident, $gen:ident, $reg:ident, probe = $probe:literal, report_only = $ro:literal, note = $note:literal) => {
        CheckSpec {
            name: $name,
            probe: $probe,
            report_only: $ro,
            note: $note,
            generate: $gen,
            regressions: $reg,
            judge: $judge,
        }
    };
}

pub(crate) static CHECKS: &[CheckSpec] = &[
    check!("discrete_models_homeomorphic", judge_discrete, gen_discrete, reg_discrete),
    check!(
        "connected_formula_satisfiable",
        judge_connected_formula,
        gen_classical,
        reg_classical,
        probe = false,
        report_only = true,
        note = "covers range over definable sets only; the extension of a connected formula may be empty or split by non-definable opens"
    ),
    check!(
        "connected_theory_satisfiable",
        judge_connected_theory_sat,
        gen_connected_theory_sat,
        reg_none,
        probe = false,
        report_only = true,
        note = "a basis of connected formulas need not share a point"
    ),
    check!("connected_theory_inconsistent", judge_theory_defect, gen_theory_defect, reg_theory_defect),
    check!("only_empty_theory_consistent", judge_only_empty, gen_only_empty, reg_chain),
    check!("union_of_theories_inconsistent", judge_union, gen_union, reg_union),
    check!("dual_space_boundaries", judge_dual, gen_space, reg_space),
    check!("homeomorphism_truth_preservation", judge_homeomorphism, gen_homeomorphism, reg_homeomorphism),
    check!("continuous_map_forward_preservation", judge_continuous_fragment, gen_continuous, reg_continuous),
    check!("open_map_backward_preservation", judge_open_fragment, gen_open, reg_open),
    check!("homotopic_models_agree", judge_homotopic, gen_homotopic, reg_homotopic),
    check!("continuous_bisimulation_invariance", judge_bisimulation, gen_bisimulation, reg_bisimulation),
    check!("finite_hennessy_milner", judge_hennessy_milner, gen_hennessy_milner, reg_hennessy_milner),
    check!("topo_to_kripke_translation", judge_topo_to_kripke, gen_paraconsistent, reg_chain),
    check!("kripke_to_topo_translation", judge_kripke_to_topo, gen_kripke, reg_kripke),
    check!("glut_boundary_identity", judge_glut_identity, gen_paraconsistent, reg_chain, probe = true, report_only = false, note = ""),
    check!("gap_boundary_identity", judge_gap_identity, gen_paracomplete, reg_none, probe = true, report_only = false, note = ""),
    check!(
        "continuous_map_positive_forward",
        judge_continuous_positive,
        gen_continuous,
        reg_continuous,
        probe = true,
        report_only = false,
        note = "atoms, &, | and <> only"
    ),
    check!(
        "continuous_map_full_language",
        judge_continuous_global,
        gen_continuous,
        reg_continuous,
        probe = true,
        report_only = true,
        note = "global truth, every formula"
    ),
    check!(
        "open_map_full_language",
        judge_open_global,
        gen_open,
        reg_open,
        probe = true,
        report_only = true,
        note = "global truth, every formula"
    ),
    check!(
        "continuous_fence_homotopic_models",
        judge_continuous_fence,
        gen_continuous_fence,
        reg_none,
        probe = true,
        report_only = true,
        note = "fences of continuous self-maps; models pushed forward along each"
    ),
];

/// Re-runs a single case.
pub fn judge(case: &Case) -> Result<Outcome> {
    let spec = CHECKS
        .iter()
        .find(|s| s.name == case.check)
        .ok_or_else(|| Error::PreconditionFailed(format!("unknown check `{}`", case.check)))?;
    (spec.judge)(case)
}

// ---- generators ----

fn model_case(name: &str, cfg: &GenConfig, rng: &mut ChaCha8Rng, mode: Mode, connected: bool) -> Case {
    let n = cfg.points(rng, 8);
    let space = if connected {
        connected_topology_with(rng, n)
    } else {
        random_topology_with(rng, n)
    };
    let m = random_model_on(rng, space, cfg.props, mode);
    Case::new(name, cfg).with_model(&m)
}

fn gen_paraconsistent(cfg: &GenConfig, rng: &mut ChaCha8Rng, _: usize) -> Case {
    model_case("", cfg, rng, Mode::Paraconsistent, false)
}

fn gen_paracomplete(cfg: &GenConfig, rng: &mut ChaCha8Rng, _: usize) -> Case {
    model_case("", cfg, rng, Mode::Paracomplete, false)
}

fn gen_classical(cfg: &GenConfig, rng: &mut ChaCha8Rng, _: usize) -> Case {
    model_case("", cfg, rng, Mode::Classical, false)
}

fn gen_space(cfg: &GenConfig, rng: &mut ChaCha8Rng, _: usize) -> Case {
    let n = cfg.points(rng, 8);
    let space = random_topology_with(rng, n);
    let m = TopoModel::new(space, Mode::Classical, Valuation::new()).expect("empty valuation");
    Case::new("", cfg).with_model(&m)
}

fn gen_discrete(cfg: &GenConfig, rng: &mut ChaCha8Rng, _: usize) -> Case {
    let n = cfg.points(rng, 6);
    let space = FiniteTopology::discrete(n);
    let m = random_model_on(rng, space.clone(), cfg.props, Mode::Paraconsistent);
    let f = PointMap::new(n, shuffled(rng, n)).expect("permutation");
    let target = pushforward_model(&m, &f, &space).expect("every set is closed in a discrete space");
    Case::new("", cfg).with_model(&m).with_target(&target).with_map(&f)
}

fn pick_homeomorphism(rng: &mut ChaCha8Rng, space: &FiniteTopology) -> (FiniteTopology, PointMap) {
    let n = space.point_count();
    let target = space.relabel(&shuffled(rng, n)).expect("permutation");
    let homeos = enumerate_homeomorphisms(space, &target, 50);
    let f = homeos
        .choose(rng)
        .expect("the relabelling itself is a homeomorphism")
        .clone();
    (target, f)
}

fn gen_homeomorphism(cfg: &GenConfig, rng: &mut ChaCha8Rng, _: usize) -> Case {
    let n = cfg.points(rng, 8);
    let space = random_topology_with(rng, n);
    let m = random_model_on(rng, space.clone(), cfg.props, Mode::Paraconsistent);
    let (t2, f) = pick_homeomorphism(rng, &space);
    let target = pushforward_model(&m, &f, &t2).expect("homeomorphisms keep closed sets closed");
    Case::new("", cfg).with_model(&m).with_target(&target).with_map(&f)
}

/// A random element of `maps` whose pushforward of `m` is a model, or the
/// identity on `m`'s own space.
fn pushable(
    rng: &mut ChaCha8Rng,
    m: &TopoModel,
    t2: &FiniteTopology,
    mut maps: Vec<PointMap>,
) -> (TopoModel, PointMap) {
    maps.shuffle(rng);
    for f in maps {
        if let Ok(target) = pushforward_model(m, &f, t2) {
            return (target, f);
        }
    }
    (m.clone(), PointMap::identity(m.point_count()))
}

fn gen_continuous(cfg: &GenConfig, rng: &mut ChaCha8Rng, _: usize) -> Case {
    let n = cfg.points(rng, 5);
    let space = random_topology_with(rng, n);
    let n2 = cfg.points(rng, 5);
    let t2 = random_topology_with(rng, n2);
    let m = random_model_on(rng, space.clone(), cfg.props, Mode::Paraconsistent);
    let maps = enumerate_continuous_maps(&space, &t2, 4096).unwrap_or_default();
    let (target, f) = pushable(rng, &m, &t2, maps);
    Case::new("", cfg).with_model(&m).with_target(&target).with_map(&f)
}

fn all_maps(n: usize, n2: usize) -> Vec<PointMap> {
    (0..n2.pow(n as u32))
        .map(|code| {
            let image = (0..n).map(|i| code / n2.pow(i as u32) % n2).collect();
            PointMap::new(n2, image).expect("in range")
        })
        .collect()
}

fn gen_open(cfg: &GenConfig, rng: &mut ChaCha8Rng, _: usize) -> Case {
    let n = cfg.points(rng, 5);
    let space = random_topology_with(rng, n);
    let n2 = cfg.points(rng, 5);
    let t2 = random_topology_with(rng, n2);
    let m = random_model_on(rng, space.clone(), cfg.props, Mode::Paracomplete);
    let maps: Vec<PointMap> = all_maps(n, n2)
        .into_iter()
        .filter(|f| f.is_open_map(&space, &t2).unwrap_or(false))
        .collect();
    let (target, f) = pushable(rng, &m, &t2, maps);
    Case::new("", cfg).with_model(&m).with_target(&target).with_map(&f)
}

/// A walk of random length from the identity through `pool`, each step
/// comparable with the previous map.
fn fence_walk(rng: &mut ChaCha8Rng, space: &FiniteTopology, pool: &[PointMap]) -> Vec<PointMap> {
    let mut fence = vec![PointMap::identity(space.point_count())];
    for _ in 0..rng.gen_range(0..4) {
        let last = fence.last().expect("non-empty").clone();
        let next: Vec<&PointMap> = pool
            .iter()
            .filter(|g| HomotopyFence::new(vec![last.clone(), (*g).clone()], space, space).is_ok())
            .collect();
        match next.choose(rng) {
            Some(g) => fence.push((*g).clone()),
            None => break,
        }
    }
    fence
}

fn gen_homotopic(cfg: &GenConfig, rng: &mut ChaCha8Rng, _: usize) -> Case {
    let n = cfg.points(rng, 5);
    let space = random_topology_with(rng, n);
    let m = random_model_on(rng, space.clone(), cfg.props, Mode::Paraconsistent);
    let homeos = enumerate_homeomorphisms(&space, &space, 50);
    let mut case = Case::new("", cfg).with_model(&m);
    case.maps = fence_walk(rng, &space, &homeos)
        .iter()
        .map(|f| f.as_slice().to_vec())
        .collect();
    case
}

fn gen_continuous_fence(cfg: &GenConfig, rng: &mut ChaCha8Rng, _: usize) -> Case {
    let n = cfg.points(rng, 4);
    let space = random_topology_with(rng, n);
    let m = random_model_on(rng, space.clone(), cfg.props, Mode::Paraconsistent);
    let maps = enumerate_continuous_maps(&space, &space, 4096).unwrap_or_default();
    let mut case = Case::new("", cfg).with_model(&m);
    case.maps = fence_walk(rng, &space, &maps)
        .iter()
        .map(|f| f.as_slice().to_vec())
        .collect();
    case
}

fn gen_bisimulation(cfg: &GenConfig, rng: &mut ChaCha8Rng, _: usize) -> Case {
    let mut case = gen_homeomorphism(cfg, rng, 0);
    let m = case.model().expect("generated");
    let target = case.target().expect("generated");
    let z = greatest_topo_bisimulation(&m, &target).expect("same mode");
    case.pairs = z.pairs().into_iter().map(|(a, b)| [a, b]).collect();
    case
}

fn gen_hennessy_milner(cfg: &GenConfig, rng: &mut ChaCha8Rng, run: usize) -> Case {
    let mode = Mode::ALL[run % 3];
    let props = cfg.props.min(2);
    let n = cfg.points(rng, 4);
    let space = random_topology_with(rng, n);
    let m = random_model_on(rng, space, props, mode);
    let target = if rng.gen_bool(0.5) {
        let n2 = cfg.points(rng, 4);
        let t2 = random_topology_with(rng, n2);
        random_model_on(rng, t2, props, mode)
    } else {
        // A homeomorphic copy, so that bisimilar pairs occur often.
        let (t2, f) = pick_homeomorphism(rng, m.space());
        pushforward_model(&m, &f, &t2).expect("homeomorphic image")
    };
    Case::new("", cfg).with_model(&m).with_target(&target)
}

fn gen_kripke(cfg: &GenConfig, rng: &mut ChaCha8Rng, _: usize) -> Case {
    let n = cfg.points(rng, 8);
    let density: f64 = rng.gen_range(0.0..0.5);
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|w| (0..n).map(move |v| (w, v)))
        .filter(|_| rng.gen_bool(density))
        .collect();
    let space = FiniteTopology::from_preorder(&Preorder::closure_of(n, edges.iter().copied()).expect("in range"));
    let valuation: Valuation = super::prop_names(cfg.props)
        .into_iter()
        .map(|p| {
            (
                p,
                space.closure(PointSet::from_bits(rng.gen::<u64>() & space.full().bits())),
            )
        })
        .collect();
    let k = KripkeModel::new(n, edges, valuation).expect("in range");
    let mut case = Case::new("", cfg);
    case.kripke = Some(KripkeFile::from_model(&k));
    case
}

fn connected_formulas(m: &TopoModel, cfg: &GenConfig) -> Vec<Formula> {
    enumerate_formulas(&m.props(), cfg.depth, cfg.formula_cap, m.mode())
        .into_iter()
        .filter(|f| !m.extension(f).map(|e| e.is_empty()).unwrap_or(true))
        .filter(|f| m.is_connected_formula(f).unwrap_or(false))
        .collect()
}

fn choose_basis(rng: &mut ChaCha8Rng, pool: &[Formula], size: usize) -> Vec<String> {
    pool.choose_multiple(rng, size).map(|f| f.to_string()).collect()
}

fn gen_connected_theory_sat(cfg: &GenConfig, rng: &mut ChaCha8Rng, run: usize) -> Case {
    let mut case = model_case("", cfg, rng, Mode::Classical, run.is_multiple_of(2));
    let m = case.model().expect("generated");
    case.formulas = choose_basis(rng, &connected_formulas(&m, cfg), 2);
    case
}

fn gen_theory_defect(cfg: &GenConfig, rng: &mut ChaCha8Rng, run: usize) -> Case {
    let mode = if run.is_multiple_of(2) {
        Mode::Paraconsistent
    } else {
        Mode::Paracomplete
    };
    let mut case = model_case("", cfg, rng, mode, run % 4 < 2);
    let m = case.model().expect("generated");
    let size = rng.gen_range(1..=3);
    case.formulas = choose_basis(rng, &connected_formulas(&m, cfg), size);
    case
}

fn gen_only_empty(cfg: &GenConfig, rng: &mut ChaCha8Rng, run: usize) -> Case {
    model_case("", cfg, rng, Mode::Paraconsistent, run.is_multiple_of(2))
}

fn gen_union(cfg: &GenConfig, rng: &mut ChaCha8Rng, run: usize) -> Case {
    let mut case = model_case("", cfg, rng, Mode::Paraconsistent, run.is_multiple_of(2));
    let m = case.model().expect("generated");
    let algebra = m.definable_algebra().expect("small models");
    let pool: Vec<PointSet> = algebra.sets().filter(|s| !s.is_empty()).collect();
    let first = *pool.choose(rng).expect("the full set is definable");
    let mut sets = vec![first];
    let mut common = first;
    for _ in 0..rng.gen_range(1..=2) {
        let meeting: Vec<PointSet> = pool.iter().copied().filter(|s| !s.is_disjoint(common)).collect();
        let next = *meeting.choose(rng).expect("first meets itself");
        common = common.intersection(next);
        sets.push(next);
    }
    case.sets = sets;
    case
}

// ---- fixed instances ----

fn named(name: &str, cfg: &GenConfig) -> Case {
    Case::new(name, cfg)
}

fn chain_model(mode: Mode) -> TopoModel {
    let p = match mode {
        Mode::Paracomplete => PointSet::from([0]),
        _ => PointSet::from([1, 2]),
    };
    TopoModel::new(FiniteTopology::chain(3), mode, [("p".to_string(), p)].into()).expect("fixed model")
}

fn reg_none(_: &GenConfig) -> Vec<Case> {
    Vec::new()
}

fn reg_chain(cfg: &GenConfig) -> Vec<Case> {
    vec![named("", cfg).with_model(&chain_model(Mode::Paraconsistent))]
}

fn reg_classical(cfg: &GenConfig) -> Vec<Case> {
    vec![named("", cfg).with_model(&chain_model(Mode::Classical))]
}

fn reg_space(cfg: &GenConfig) -> Vec<Case> {
    let c3 = TopoModel::new(FiniteTopology::chain(3), Mode::Classical, Valuation::new()).expect("fixed");
    let d = TopoModel::new(FiniteTopology::discrete(3), Mode::Classical, Valuation::new()).expect("fixed");
    vec![named("", cfg).with_model(&c3), named("", cfg).with_model(&d)]
}

fn reg_discrete(cfg: &GenConfig) -> Vec<Case> {
    let d = FiniteTopology::discrete(3);
    let m = TopoModel::new(
        d.clone(),
        Mode::Paraconsistent,
        [("p".to_string(), PointSet::from([0, 2]))].into(),
    )
    .expect("fixed");
    let f = PointMap::new(3, vec![2, 0, 1]).expect("fixed");
    let target = pushforward_model(&m, &f, &d).expect("discrete");
    vec![named("", cfg).with_model(&m).with_target(&target).with_map(&f)]
}

fn reg_homeomorphism(cfg: &GenConfig) -> Vec<Case> {
    let m = chain_model(Mode::Paraconsistent);
    vec![named("", cfg)
        .with_model(&m)
        .with_target(&m)
        .with_map(&PointMap::identity(3))]
}

fn reg_theory_defect(cfg: &GenConfig) -> Vec<Case> {
    let mut para = named("", cfg).with_model(&chain_model(Mode::Paraconsistent));
    para.formulas = vec!["p".into()];
    let mut pc = named("", cfg).with_model(&chain_model(Mode::Paracomplete));
    pc.formulas = vec!["p".into()];
    vec![para, pc]
}

fn reg_union(cfg: &GenConfig) -> Vec<Case> {
    let m = TopoModel::new(
        FiniteTopology::chain(3),
        Mode::Paraconsistent,
        [
            ("p".to_string(), PointSet::from([1, 2])),
            ("q".to_string(), PointSet::from([2])),
        ]
        .into(),
    )
    .expect("fixed");
    let mut case = named("", cfg).with_model(&m);
    case.sets = vec![PointSet::from([2]), PointSet::from([1, 2])];
    vec![case]
}

fn reg_continuous(cfg: &GenConfig) -> Vec<Case> {
    // Two isolated points sent to one of them.
    let d = FiniteTopology::discrete(2);
    let m = TopoModel::new(
        d.clone(),
        Mode::Paraconsistent,
        [("p".to_string(), PointSet::from([0]))].into(),
    )
    .expect("fixed");
    let f = PointMap::new(2, vec![0, 0]).expect("fixed");
    let target = pushforward_model(&m, &f, &d).expect("discrete");
    let c3 = chain_model(Mode::Paraconsistent);
    vec![
        named("", cfg)
            .with_model(&c3)
            .with_target(&c3)
            .with_map(&PointMap::identity(3)),
        named("", cfg).with_model(&m).with_target(&target).with_map(&f),
    ]
}

fn reg_open(cfg: &GenConfig) -> Vec<Case> {
    let m = TopoModel::new(
        FiniteTopology::discrete(2),
        Mode::Paracomplete,
        [("p".to_string(), PointSet::from([0]))].into(),
    )
    .expect("fixed");
    let f = PointMap::new(1, vec![0, 0]).expect("fixed");
    let target = pushforward_model(&m, &f, &FiniteTopology::discrete(1)).expect("discrete");
    let c3 = chain_model(Mode::Paracomplete);
    vec![
        named("", cfg)
            .with_model(&c3)
            .with_target(&c3)
            .with_map(&PointMap::identity(3)),
        named("", cfg).with_model(&m).with_target(&target).with_map(&f),
    ]
}

fn reg_homotopic(cfg: &GenConfig) -> Vec<Case> {
    let m = TopoModel::new(
        FiniteTopology::indiscrete(3),
        Mode::Paraconsistent,
        [("p".to_string(), PointSet::EMPTY)].into(),
    )
    .expect("fixed");
    let mut case = named("", cfg).with_model(&m);
    case.maps = vec![vec![0, 1, 2], vec![1, 0, 2], vec![1, 2, 0]];
    vec![case]
}

fn reg_bisimulation(cfg: &GenConfig) -> Vec<Case> {
    let m = chain_model(Mode::Paraconsistent);
    let mut case = named("", cfg)
        .with_model(&m)
        .with_target(&m)
        .with_map(&PointMap::identity(3));
    case.pairs = vec![[0, 0], [1, 1], [2, 2]];
    vec![case]
}

fn reg_hennessy_milner(cfg: &GenConfig) -> Vec<Case> {
    let one = TopoModel::new(FiniteTopology::discrete(1), Mode::Paraconsistent, Valuation::new()).expect("fixed");
    let c3 = chain_model(Mode::Paraconsistent);
    vec![
        named("", cfg).with_model(&one).with_target(&one),
        named("", cfg).with_model(&c3).with_target(&c3),
    ]
}

fn reg_kripke(cfg: &GenConfig) -> Vec<Case> {
    let k = KripkeModel::new(
        2,
        [(0, 0), (1, 0), (1, 1)],
        [("p".to_string(), PointSet::from([1]))].into(),
    )
    .expect("fixed");
    let mut case = named("", cfg);
    case.kripke = Some(KripkeFile::from_model(&k));
    vec![case]
}

// ---- judges ----

fn judge_discrete(case: &Case) -> Result<Outcome> {
    let m = case.model()?;
    let target = case.target()?;
    let f = case.map(0, target.point_count())?;
    if !m.space().is_discrete() || !target.space().is_discrete() {
        return vacuous("a space is not discrete");
    }
    if m.point_count() != target.point_count() {
        return vacuous("cardinalities differ");
    }
    if !f.is_homeomorphism(m.space(), target.space())? {
        return fail("the bijection is not a homeomorphism", None);
    }
    if let Err(e) = check_pushforward(&m, &target, &f) {
        return vacuous(e.to_string());
    }
    for phi in case
        .formulas(&joint_props(&m, &target), m.mode())?
        .iter()
        .filter(|f| f.is_positive())
    {
        if let Some(point) = Transfer::Biconditional.failure(&m, &target, &f, phi)? {
            return fail(format!("`{phi}` differs at point {}", point.unwrap_or(0)), Some(phi));
        }
    }
    pass()
}

fn judge_connected_formula(case: &Case) -> Result<Outcome> {
    let m = case.model()?;
    let mut unsatisfied = None;
    for phi in case.formulas(&m.props(), m.mode())? {
        if !m.is_connected_formula(&phi)? {
            continue;
        }
        let ext = m.extension(&phi)?;
        if ext.is_empty() {
            unsatisfied.get_or_insert(phi);
        } else if !m.space().subspace(ext)?.topology.is_connected() {
            return fail(
                format!("connected formula `{phi}` has a disconnected extension {ext}"),
                Some(&phi),
            );
        }
    }
    match unsatisfied {
        Some(phi) => fail(format!("connected formula `{phi}` holds nowhere"), Some(&phi)),
        None => pass(),
    }
}

fn judge_connected_theory_sat(case: &Case) -> Result<Outcome> {
    let m = case.model()?;
    let basis = case.explicit_formulas()?;
    if basis.is_empty() {
        return vacuous("no connected formula with a non-empty extension");
    }
    let mut common = m.space().full();
    for phi in &basis {
        if !m.is_connected_formula(phi)? {
            return vacuous(format!("`{phi}` is not connected"));
        }
        common = common.intersection(m.extension(phi)?);
    }
    if common.is_empty() {
        let joined: Vec<String> = basis.iter().map(|f| format!("`{f}`")).collect();
        return fail(format!("basis {} has no common point", joined.join(", ")), None);
    }
    pass()
}

fn theory_outcome(m: &TopoModel, verdict: Result<TheoryVerdict>) -> Result<Outcome> {
    match verdict {
        Ok(TheoryVerdict::Witnessed { witnesses }) => {
            for w in &witnesses {
                if !w.holds_in(m)? {
                    return fail(
                        format!("witness `{}` at point {} does not hold", w.formula, w.point),
                        Some(&w.formula),
                    );
                }
            }
            pass()
        }
        Ok(TheoryVerdict::Vacuous { reason }) => vacuous(reason),
        Ok(TheoryVerdict::Counterexample { reason }) => fail(reason, None),
        Err(Error::PreconditionFailed(reason)) => vacuous(reason),
        Err(e) => Err(e),
    }
}

fn judge_theory_defect(case: &Case) -> Result<Outcome> {
    let m = case.model()?;
    let basis = case.explicit_formulas()?;
    let verdict = match m.mode() {
        Mode::Paraconsistent => m.check_connected_theory_inconsistent(&basis),
        Mode::Paracomplete => m.check_connected_theory_incomplete(&basis),
        Mode::Classical => return vacuous("classical model"),
    };
    theory_outcome(&m, verdict)
}

fn judge_only_empty(case: &Case) -> Result<Outcome> {
    let m = case.model()?;
    let verdict = m.check_only_empty_theory_consistent();
    theory_outcome(&m, verdict)
}

fn judge_union(case: &Case) -> Result<Outcome> {
    let m = case.model()?;
    let report = match m.check_union_theories(&case.sets) {
        Ok(r) => r,
        Err(Error::PreconditionFailed(reason)) => return vacuous(reason),
        Err(e) => return Err(e),
    };
    match report.holds() {
        None => vacuous("the union is the whole space"),
        Some(true) => pass(),
        Some(false) if !m.space().is_connected() => vacuous("the space is not connected"),
        Some(false) => fail(
            format!(
                "union {} has boundary {} with non-glutty points {}",
                report.union, report.boundary, report.non_glutty
            ),
            None,
        ),
    }
}

fn judge_dual(case: &Case) -> Result<Outcome> {
    let space = case.model()?.space().clone();
    let n = space.point_count();
    let dual = space.dual();
    for set in PointSet::all_subsets(n) {
        let here = space.boundary(set);
        if here != space.boundary(set.complement(n)) {
            return fail(format!("boundary of {set} differs from that of its complement"), None);
        }
        let there = dual.boundary(set);
        if here != there {
            return fail(
                format!("boundary of {set} is {here}, but {there} in the dual space"),
                None,
            );
        }
    }
    pass()
}

/// Shared front matter for map checks: the map, the target and the
/// pushforward precondition.
fn map_case(case: &Case) -> Result<std::result::Result<(TopoModel, TopoModel, PointMap), String>> {
    let m = case.model()?;
    let target = case.target()?;
    let f = case.map(0, target.point_count())?;
    if f.domain_size() != m.point_count() {
        return Ok(Err("map and model sizes differ".into()));
    }
    if let Err(e) = check_pushforward(&m, &target, &f) {
        return Ok(Err(e.to_string()));
    }
    Ok(Ok((m, target, f)))
}

fn judge_homeomorphism(case: &Case) -> Result<Outcome> {
    let (m, target, f) = match map_case(case)? {
        Ok(parts) => parts,
        Err(reason) => return vacuous(reason),
    };
    if !f.is_homeomorphism(m.space(), target.space())? {
        return vacuous("not a homeomorphism");
    }
    for phi in case.formulas(&joint_props(&m, &target), m.mode())? {
        for transfer in [
            Transfer::Biconditional,
            Transfer::GlobalForward,
            Transfer::GlobalBackward,
        ] {
            if let Some(point) = transfer.failure(&m, &target, &f, &phi)? {
                return fail(format!("{transfer:?} fails for `{phi}` at {point:?}"), Some(&phi));
            }
        }
        if target.extension(&phi)? != f.image_of(m.extension(&phi)?) {
            return fail(
                format!("extension of `{phi}` does not commute with the map"),
                Some(&phi),
            );
        }
    }
    pass()
}

fn transfer_check(
    case: &Case,
    want_continuous: bool,
    transfer: Transfer,
    keep: fn(&Formula) -> bool,
) -> Result<Outcome> {
    let (m, target, f) = match map_case(case)? {
        Ok(parts) => parts,
        Err(reason) => return vacuous(reason),
    };
    let applies = if want_continuous {
        f.is_continuous(m.space(), target.space())?
    } else {
        f.is_open_map(m.space(), target.space())?
    };
    if !applies {
        return vacuous(if want_continuous {
            "map is not continuous"
        } else {
            "map is not open"
        });
    }
    for phi in case
        .formulas(&joint_props(&m, &target), m.mode())?
        .iter()
        .filter(|f| keep(f))
    {
        if let Some(point) = transfer.failure(&m, &target, &f, phi)? {
            let at = point.map(|w| format!(" at point {w}")).unwrap_or_default();
            return fail(format!("{transfer:?} transfer fails for `{phi}`{at}"), Some(phi));
        }
    }
    pass()
}

fn judge_continuous_fragment(case: &Case) -> Result<Outcome> {
    transfer_check(case, true, Transfer::Forward, |f| {
        f.in_fragment(Fragment::ClosureNegation)
    })
}

fn judge_continuous_positive(case: &Case) -> Result<Outcome> {
    transfer_check(case, true, Transfer::Forward, |f| {
        f.in_fragment(Fragment::ClosureNegation) && f.is_positive()
    })
}

fn judge_continuous_global(case: &Case) -> Result<Outcome> {
    transfer_check(case, true, Transfer::GlobalForward, |_| true)
}

fn judge_open_fragment(case: &Case) -> Result<Outcome> {
    transfer_check(case, false, Transfer::Backward, |f| {
        f.in_fragment(Fragment::InteriorNegation)
    })
}

fn judge_open_global(case: &Case) -> Result<Outcome> {
    transfer_check(case, false, Transfer::GlobalBackward, |_| true)
}

fn fence_maps(case: &Case, n: usize) -> Result<Vec<PointMap>> {
    case.maps.iter().map(|image| PointMap::new(n, image.clone())).collect()
}

fn agree_globally(models: &[TopoModel], formulas: &[Formula]) -> Result<Option<(Formula, usize)>> {
    for phi in formulas {
        let first = models[0].globally_true(phi)?;
        for (i, other) in models.iter().enumerate().skip(1) {
            if other.globally_true(phi)? != first {
                return Ok(Some((phi.clone(), i)));
            }
        }
    }
    Ok(None)
}

fn judge_homotopic(case: &Case) -> Result<Outcome> {
    let m = case.model()?;
    let maps = fence_maps(case, m.point_count())?;
    let fence = match HomotopyFence::new(maps, m.space(), m.space()) {
        Ok(f) => f,
        Err(e) => return vacuous(e.to_string()),
    };
    let models = match homotopic_models(&m, &fence) {
        Ok(ms) => ms,
        Err(e @ Error::NotHomeomorphism { .. }) => return vacuous(e.to_string()),
        Err(e) => return Err(e),
    };
    match agree_globally(&models, &case.formulas(&m.props(), m.mode())?)? {
        Some((phi, i)) => fail(format!("model {i} of the family disagrees on `{phi}`"), Some(&phi)),
        None => pass(),
    }
}

fn judge_continuous_fence(case: &Case) -> Result<Outcome> {
    let m = case.model()?;
    let maps = fence_maps(case, m.point_count())?;
    let fence = match HomotopyFence::new(maps, m.space(), m.space()) {
        Ok(f) => f,
        Err(e) => return vacuous(e.to_string()),
    };
    let mut models = Vec::with_capacity(fence.len());
    for (i, f) in fence.maps().iter().enumerate() {
        match pushforward_model(&m, f, m.space()) {
            Ok(pushed) => models.push(pushed),
            Err(e) => return vacuous(format!("map {i}: {e}")),
        }
    }
    match agree_globally(&models, &case.formulas(&m.props(), m.mode())?)? {
        Some((phi, i)) => fail(format!("model {i} of the family disagrees on `{phi}`"), Some(&phi)),
        None => pass(),
    }
}

fn judge_bisimulation(case: &Case) -> Result<Outcome> {
    let m = case.model()?;
    let target = case.target()?;
    let f = case.map(0, target.point_count())?;
    let z = PointRelation::from_pairs(
        m.point_count(),
        target.point_count(),
        case.pairs.iter().map(|&[a, b]| (a, b)),
    )?;
    if !is_continuous_topo_bisimulation(&m, &target, &z, &f) {
        return vacuous("not a continuous topo-bisimulation");
    }
    for phi in case.formulas(&joint_props(&m, &target), m.mode())? {
        let (here, there) = (m.extension(&phi)?, target.extension(&phi)?);
        if let Some((a, b)) = z
            .pairs()
            .into_iter()
            .find(|&(a, b)| here.contains(a) != there.contains(b))
        {
            return fail(format!("related points {a} and {b} disagree on `{phi}`"), Some(&phi));
        }
    }
    pass()
}

fn judge_hennessy_milner(case: &Case) -> Result<Outcome> {
    let m = case.model()?;
    let target = case.target()?;
    if m.mode() != target.mode() {
        return vacuous("modes differ");
    }
    let report = hennessy_milner_check(&m, &target, 64)?;
    if !report.coincide {
        let formula = report.distinguishing_formula.as_ref();
        return fail(
            format!(
                "bisimilarity {} and logical equivalence {} differ at {:?}",
                report.bisimulation, report.equivalence, report.separating_pair
            ),
            formula,
        );
    }
    for phi in case.formulas(&joint_props(&m, &target), m.mode())? {
        let (here, there) = (m.extension(&phi)?, target.extension(&phi)?);
        if let Some((a, b)) = report
            .bisimulation
            .pairs()
            .into_iter()
            .find(|&(a, b)| here.contains(a) != there.contains(b))
        {
            return fail(format!("bisimilar points {a} and {b} disagree on `{phi}`"), Some(&phi));
        }
    }
    pass()
}

fn judge_topo_to_kripke(case: &Case) -> Result<Outcome> {
    let m = case.model()?;
    let report = check_translation(&m, &case.formulas(&m.props(), m.mode())?)?;
    match report.rows.iter().find(|r| !r.forward_failures.is_empty()) {
        Some(row) => {
            let phi = parse(&row.formula)?;
            fail(
                format!(
                    "`{}` holds at {} but fails relationally",
                    row.formula, row.forward_failures
                ),
                Some(&phi),
            )
        }
        None => pass(),
    }
}

fn judge_kripke_to_topo(case: &Case) -> Result<Outcome> {
    let k = case
        .kripke
        .as_ref()
        .ok_or_else(|| missing("relational model"))?
        .to_model()?;
    let translated = match kripke_to_topo(&k) {
        Ok(t) => t,
        Err(e @ Error::ValuationNotClosed(_)) => return vacuous(e.to_string()),
        Err(e) => return Err(e),
    };
    let space = translated.model.space();
    let n = k.world_count();
    let order = Preorder::closure_of(n, k.edges())?;
    let closed_k = KripkeModel::new(n, order.pairs(), k.valuation().clone())?;
    for set in PointSet::all_subsets(n) {
        let down = closed_k
            .edges()
            .iter()
            .all(|&(w, v)| !set.contains(v) || set.contains(w));
        if down != space.is_closed(set) {
            return fail(
                format!("{set}: predecessor-closed is {down}, closed is {}", !down),
                None,
            );
        }
    }
    for phi in case.formulas(&translated.model.props(), Mode::Paraconsistent)? {
        if translated.model.extension(&phi)? != closed_k.extension(&phi)? {
            return fail(format!("`{phi}` differs between the two readings"), Some(&phi));
        }
    }
    if topo_to_kripke(&translated.model)?.edges() != closed_k.edges() {
        return fail("round trip changes the relation", None);
    }
    pass()
}

fn judge_glut_identity(case: &Case) -> Result<Outcome> {
    let m = case.model()?;
    for phi in case.formulas(&m.props(), m.mode())? {
        if m.glut_points(&phi)? != m.space().boundary(m.extension(&phi)?) {
            return fail(format!("gluts of `{phi}` are not its boundary"), Some(&phi));
        }
    }
    pass()
}

fn judge_gap_identity(case: &Case) -> Result<Outcome> {
    let m = case.model()?;
    for phi in case.formulas(&m.props(), m.mode())? {
        if m.gap_points(&phi)? != m.space().boundary(m.extension(&phi)?) {
            return fail(format!("gaps of `{phi}` are not its boundary"), Some(&phi));
        }
    }
    pass()
}
