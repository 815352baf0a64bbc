//! Topo-bisimulations and the logical equivalence they are compared with.

use std::collections::hash_map::Entry;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::morphisms::PointMap;
use crate::pointset::PointSet;
use crate::semantics::{Mode, TopoModel, ALGEBRA_CAP};
use crate::topology::FiniteTopology;

/// A relation between the points of two models, stored row by row.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointRelation {
    right: usize,
    rows: Vec<PointSet>,
}

impl PointRelation {
    pub fn empty(left: usize, right: usize) -> Self {
        PointRelation {
            right,
            rows: vec![PointSet::EMPTY; left],
        }
    }

    pub fn identity(n: usize) -> Self {
        PointRelation {
            right: n,
            rows: (0..n).map(PointSet::singleton).collect(),
        }
    }

    pub fn from_pairs(left: usize, right: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut relation = PointRelation::empty(left, right);
        for (a, b) in pairs {
            if a >= left {
                return Err(Error::PointOutOfBounds { point: a, points: left });
            }
            if b >= right {
                return Err(Error::PointOutOfBounds {
                    point: b,
                    points: right,
                });
            }
            relation.rows[a].insert(b);
        }
        Ok(relation)
    }

    /// The graph `{(s, f(s))}` of a map.
    pub fn graph(map: &PointMap) -> Self {
        PointRelation {
            right: map.codomain_size(),
            rows: map.as_slice().iter().map(|&t| PointSet::singleton(t)).collect(),
        }
    }

    pub fn left_size(&self) -> usize {
        self.rows.len()
    }

    pub fn right_size(&self) -> usize {
        self.right
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.rows.get(a).is_some_and(|row| row.contains(b))
    }

    pub fn row(&self, a: usize) -> PointSet {
        self.rows[a]
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        self.rows[a].insert(b);
    }

    pub fn remove(&mut self, a: usize, b: usize) {
        self.rows[a].remove(b);
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    /// Pairs in lexicographic order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.iter().map(move |b| (a, b)))
            .collect()
    }

    /// `{b : a R b for some a ∈ set}`.
    pub fn image(&self, set: PointSet) -> PointSet {
        set.iter().fold(PointSet::EMPTY, |acc, a| acc.union(self.rows[a]))
    }

    /// `{a : a R b for some b ∈ set}`.
    pub fn preimage(&self, set: PointSet) -> PointSet {
        (0..self.rows.len())
            .filter(|&a| !self.rows[a].is_disjoint(set))
            .collect()
    }

    pub fn is_subset(&self, other: &PointRelation) -> bool {
        self.rows.len() == other.rows.len() && self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(*b))
    }
}

impl fmt::Debug for PointRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PointRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self.pairs().iter().map(|(a, b)| format!("({a},{b})")).collect();
        write!(f, "{{{}}}", pairs.join(" "))
    }
}

impl Serialize for PointRelation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.pairs().iter().map(|&(a, b)| [a, b]))
    }
}

/// Which neighbourhoods the forth and back clauses range over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BisimVariant {
    /// Open neighbourhoods.
    #[default]
    Open,
    /// Closed neighbourhoods: the open clauses for the dual space.
    Closed,
}

fn neighborhood(space: &FiniteTopology, variant: BisimVariant, point: usize) -> PointSet {
    match variant {
        BisimVariant::Open => space.minimal_neighborhood(point),
        BisimVariant::Closed => space.closure(PointSet::singleton(point)),
    }
}

fn same_mode(m: &TopoModel, m2: &TopoModel) -> Result<()> {
    if m.mode() == m2.mode() {
        Ok(())
    } else {
        Err(Error::ModeMismatch {
            mode: m.mode(),
            negation: m2.mode().negation_symbol(),
        })
    }
}

fn atoms_agree(m: &TopoModel, m2: &TopoModel, a: usize, b: usize) -> bool {
    let names: BTreeSet<&String> = m.valuation().keys().chain(m2.valuation().keys()).collect();
    names
        .into_iter()
        .all(|p| m.value(p).contains(a) == m2.value(p).contains(b))
}

fn atom_relation(m: &TopoModel, m2: &TopoModel) -> PointRelation {
    let mut z = PointRelation::empty(m.point_count(), m2.point_count());
    for a in 0..m.point_count() {
        for b in 0..m2.point_count() {
            if atoms_agree(m, m2, a, b) {
                z.insert(a, b);
            }
        }
    }
    z
}

fn forth_back(m: &TopoModel, m2: &TopoModel, z: &PointRelation, variant: BisimVariant, a: usize, b: usize) -> bool {
    let here = neighborhood(m.space(), variant, a);
    let there = neighborhood(m2.space(), variant, b);
    let forth = there.iter().all(|t2| here.iter().any(|t| z.contains(t, t2)));
    let back = here.iter().all(|t| there.iter().any(|t2| z.contains(t, t2)));
    forth && back
}

/// The largest topo-bisimulation between two models of the same mode.
pub fn greatest_topo_bisimulation(m: &TopoModel, m2: &TopoModel) -> Result<PointRelation> {
    greatest_bisimulation_variant(m, m2, BisimVariant::Open)
}

pub fn greatest_bisimulation_variant(m: &TopoModel, m2: &TopoModel, variant: BisimVariant) -> Result<PointRelation> {
    same_mode(m, m2)?;
    let mut z = atom_relation(m, m2);
    loop {
        let doomed: Vec<(usize, usize)> = z
            .pairs()
            .into_iter()
            .filter(|&(a, b)| !forth_back(m, m2, &z, variant, a, b))
            .collect();
        if doomed.is_empty() {
            return Ok(z);
        }
        for (a, b) in doomed {
            z.remove(a, b);
        }
    }
}

/// The same fixpoint, deleting one violating pair at a time and always
/// scanning candidates in `schedule` order (pairs absent from the schedule
/// are scanned last, lexicographically).
pub fn greatest_bisimulation_scheduled(
    m: &TopoModel,
    m2: &TopoModel,
    variant: BisimVariant,
    schedule: &[(usize, usize)],
) -> Result<PointRelation> {
    same_mode(m, m2)?;
    let mut z = atom_relation(m, m2);
    let mut order: Vec<(usize, usize)> = schedule.to_vec();
    let listed: BTreeSet<(usize, usize)> = schedule.iter().copied().collect();
    order.extend(z.pairs().into_iter().filter(|p| !listed.contains(p)));
    'outer: loop {
        for &(a, b) in &order {
            if z.contains(a, b) && !forth_back(m, m2, &z, variant, a, b) {
                z.remove(a, b);
                continue 'outer;
            }
        }
        return Ok(z);
    }
}

/// Checks the three defining clauses by quantifying over every open set:
/// related points agree on atoms; for each open `O ∋ a` there is an open
/// `O' ∋ b` inside the image of `O`; and symmetrically.
pub fn is_topo_bisimulation(m: &TopoModel, m2: &TopoModel, z: &PointRelation) -> bool {
    if z.left_size() != m.point_count() || z.right_size() != m2.point_count() {
        return false;
    }
    let (opens, opens2) = (m.space().opens(), m2.space().opens());
    z.pairs().into_iter().all(|(a, b)| {
        let atoms = atoms_agree(m, m2, a, b);
        let forth = opens.iter().filter(|o| o.contains(a)).all(|&o| {
            let reach = z.image(o);
            opens2.iter().any(|o2| o2.contains(b) && o2.is_subset(reach))
        });
        let back = opens2.iter().filter(|o| o.contains(b)).all(|&o2| {
            let reach = z.preimage(o2);
            opens.iter().any(|o| o.contains(a) && o.is_subset(reach))
        });
        atoms && forth && back
    })
}

/// `z` is a topo-bisimulation, `f` is a homeomorphism and `V' = f(V)`.
pub fn is_continuous_topo_bisimulation(m: &TopoModel, m2: &TopoModel, z: &PointRelation, f: &PointMap) -> bool {
    if !is_topo_bisimulation(m, m2, z) || !matches!(f.is_homeomorphism(m.space(), m2.space()), Ok(true)) {
        return false;
    }
    let names: BTreeSet<&String> = m.valuation().keys().chain(m2.valuation().keys()).collect();
    names.into_iter().all(|p| m2.value(p) == f.image_of(m.value(p)))
}

/// Pairs that agree on every formula up to the caps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equivalence {
    pub relation: PointRelation,
    /// Modal depth at which the definable family stopped growing, if it did
    /// within the depth cap.
    pub stable_at: Option<usize>,
    /// For each definable set of the joined model, one defining formula.
    witnesses: Vec<(PointSet, Formula)>,
    left: usize,
}

impl Equivalence {
    /// A formula true at exactly one of `a` (left) and `b` (right).
    pub fn distinguishing_formula(&self, a: usize, b: usize) -> Option<&Formula> {
        let b = b + self.left;
        self.witnesses
            .iter()
            .find(|(set, _)| set.contains(a) != set.contains(b))
            .map(|(_, f)| f)
    }
}

/// Refines the atom partition by modal depth: the sets definable with depth
/// `k` are computed on the disjoint union of both models, and `(a, b)` stays
/// related while every such set contains both or neither. Stops when the
/// definable family stops growing or at `depth_cap`. Fails when more than
/// `count_cap` sets are definable.
pub fn logical_equivalence(m: &TopoModel, m2: &TopoModel, depth_cap: usize, count_cap: usize) -> Result<Equivalence> {
    same_mode(m, m2)?;
    let joined = joined_model(m, m2)?;
    let n = m.point_count();
    let sets = depth_layers(&joined, depth_cap, count_cap)?;
    let mut relation = PointRelation::empty(n, m2.point_count());
    for a in 0..n {
        for b in 0..m2.point_count() {
            if sets
                .members
                .iter()
                .all(|(set, _)| set.contains(a) == set.contains(n + b))
            {
                relation.insert(a, b);
            }
        }
    }
    Ok(Equivalence {
        relation,
        stable_at: sets.stable_at,
        witnesses: sets.members,
        left: n,
    })
}

fn joined_model(m: &TopoModel, m2: &TopoModel) -> Result<TopoModel> {
    let n = m.point_count();
    let space = m.space().disjoint_union(m2.space())?;
    let names: BTreeSet<&String> = m.valuation().keys().chain(m2.valuation().keys()).collect();
    let valuation = names
        .into_iter()
        .map(|p| {
            let shifted: PointSet = m2.value(p).iter().map(|b| b + n).collect();
            (p.clone(), m.value(p).union(shifted))
        })
        .collect();
    TopoModel::new(space, m.mode(), valuation)
}

struct Layers {
    members: Vec<(PointSet, Formula)>,
    stable_at: Option<usize>,
}

fn depth_layers(model: &TopoModel, depth_cap: usize, count_cap: usize) -> Result<Layers> {
    let n = model.point_count();
    let space = model.space();
    let mode = model.mode();
    let mut members: Vec<(PointSet, Formula)> = Vec::new();
    let mut index: HashMap<PointSet, usize> = HashMap::new();

    let mut seeds: Vec<(PointSet, Formula)> = vec![(PointSet::EMPTY, Formula::Bot), (PointSet::full(n), Formula::Top)];
    seeds.extend(model.valuation().iter().map(|(p, &s)| (s, Formula::Prop(p.clone()))));

    let mut depth = 0;
    loop {
        let before = members.len();
        // Lattice closure of everything so far plus this layer's seeds.
        let mut queue: VecDeque<usize> = VecDeque::new();
        for (set, formula) in seeds.drain(..) {
            if let Entry::Vacant(e) = index.entry(set) {
                if members.len() >= count_cap {
                    return Err(Error::AlgebraOverflow { cap: count_cap });
                }
                e.insert(members.len());
                queue.push_back(members.len());
                members.push((set, formula));
            }
        }
        while let Some(i) = queue.pop_front() {
            for j in 0..members.len() {
                let (a, fa) = members[i].clone();
                let (b, fb) = members[j].clone();
                for (set, formula) in [
                    (a.intersection(b), Formula::and(fb.clone(), fa.clone())),
                    (a.union(b), Formula::or(fb, fa)),
                ] {
                    if let Entry::Vacant(e) = index.entry(set) {
                        if members.len() >= count_cap {
                            return Err(Error::AlgebraOverflow { cap: count_cap });
                        }
                        e.insert(members.len());
                        queue.push_back(members.len());
                        members.push((set, formula));
                    }
                }
            }
        }
        if depth > 0 && members.len() == before {
            members.sort_by(|a, b| a.0.canonical_cmp(&b.0));
            return Ok(Layers {
                members,
                stable_at: Some(depth - 1),
            });
        }
        if depth == depth_cap {
            members.sort_by(|a, b| a.0.canonical_cmp(&b.0));
            return Ok(Layers {
                members,
                stable_at: None,
            });
        }
        for (set, formula) in &members {
            let negation = match mode {
                Mode::Classical => (set.complement(n), Formula::class_neg(formula.clone())),
                Mode::Paraconsistent => (space.closure(set.complement(n)), Formula::para_neg(formula.clone())),
                Mode::Paracomplete => (space.interior(set.complement(n)), Formula::comp_neg(formula.clone())),
            };
            seeds.push((space.interior(*set), Formula::boxed(formula.clone())));
            seeds.push((space.closure(*set), Formula::diamond(formula.clone())));
            seeds.push(negation);
        }
        depth += 1;
    }
}

/// Outcome of comparing bisimilarity with logical equivalence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HennessyMilnerReport {
    pub bisimulation: PointRelation,
    pub equivalence: PointRelation,
    pub stable_at: Option<usize>,
    pub coincide: bool,
    /// First pair in one relation but not the other.
    pub separating_pair: Option<(usize, usize)>,
    /// Present when a bisimilar pair is told apart by some formula.
    pub distinguishing_formula: Option<Formula>,
}

pub fn hennessy_milner_check(m: &TopoModel, m2: &TopoModel, depth_cap: usize) -> Result<HennessyMilnerReport> {
    let bisimulation = greatest_topo_bisimulation(m, m2)?;
    let eq = logical_equivalence(m, m2, depth_cap, ALGEBRA_CAP)?;
    let coincide = bisimulation == eq.relation;
    let mut separating_pair = None;
    let mut distinguishing_formula = None;
    if !coincide {
        let bis = bisimulation.pairs();
        let equiv = eq.relation.pairs();
        if let Some(&(a, b)) = bis.iter().find(|p| !eq.relation.contains(p.0, p.1)) {
            separating_pair = Some((a, b));
            distinguishing_formula = eq.distinguishing_formula(a, b).cloned();
        } else {
            separating_pair = equiv.into_iter().find(|p| !bisimulation.contains(p.0, p.1));
        }
    }
    Ok(HennessyMilnerReport {
        bisimulation,
        equivalence: eq.relation,
        stable_at: eq.stable_at,
        coincide,
        separating_pair,
        distinguishing_formula,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::enumerate_formulas;
    use crate::semantics::Valuation;

    fn model(space: FiniteTopology, mode: Mode, props: &[(&str, &[usize])]) -> TopoModel {
        let valuation: Valuation = props.iter().map(|(p, s)| (p.to_string(), PointSet::from(*s))).collect();
        TopoModel::new(space, mode, valuation).unwrap()
    }

    // Oracle: every relation between small models, kept when it passes the
    // all-opens definition; their union.
    fn brute_greatest(m: &TopoModel, m2: &TopoModel) -> PointRelation {
        let (n, k) = (m.point_count(), m2.point_count());
        let all: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..k).map(move |b| (a, b))).collect();
        let mut best = PointRelation::empty(n, k);
        for code in 0u32..(1 << all.len()) {
            let pairs = all
                .iter()
                .enumerate()
                .filter(|(i, _)| code >> i & 1 == 1)
                .map(|(_, &p)| p);
            let z = PointRelation::from_pairs(n, k, pairs).unwrap();
            if is_topo_bisimulation(m, m2, &z) {
                for (a, b) in z.pairs() {
                    best.insert(a, b);
                }
            }
        }
        best
    }

    // Oracle: agreement on every enumerated formula.
    fn enumerated_agreement(m: &TopoModel, m2: &TopoModel, depth: usize, count: usize) -> PointRelation {
        let props: Vec<String> = m
            .props()
            .into_iter()
            .chain(m2.props())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let formulas = enumerate_formulas(&props, depth, count, m.mode());
        let ext: Vec<(PointSet, PointSet)> = formulas
            .iter()
            .map(|f| (m.extension(f).unwrap(), m2.extension(f).unwrap()))
            .collect();
        let mut z = PointRelation::empty(m.point_count(), m2.point_count());
        for a in 0..m.point_count() {
            for b in 0..m2.point_count() {
                if ext.iter().all(|(x, y)| x.contains(a) == y.contains(b)) {
                    z.insert(a, b);
                }
            }
        }
        z
    }

    #[test]
    fn one_point_examples() {
        let one = FiniteTopology::discrete(1);
        let a = model(one.clone(), Mode::Paraconsistent, &[("p", &[0])]);
        let b = model(one.clone(), Mode::Paraconsistent, &[("p", &[0])]);
        let c = model(one.clone(), Mode::Paraconsistent, &[("p", &[])]);
        assert_eq!(greatest_topo_bisimulation(&a, &b).unwrap().pairs(), vec![(0, 0)]);
        assert!(greatest_topo_bisimulation(&a, &c).unwrap().is_empty());
        let k = model(one, Mode::Paracomplete, &[]);
        assert!(matches!(
            greatest_topo_bisimulation(&a, &k),
            Err(Error::ModeMismatch { .. })
        ));

        let e = model(FiniteTopology::discrete(1), Mode::Paraconsistent, &[]);
        let report = hennessy_milner_check(&e, &e, 5).unwrap();
        assert_eq!(report.bisimulation.pairs(), vec![(0, 0)]);
        assert_eq!(report.equivalence.pairs(), vec![(0, 0)]);
        assert!(report.coincide);
    }

    #[test]
    fn chain_against_itself() {
        let m = model(FiniteTopology::chain(3), Mode::Paraconsistent, &[("p", &[1, 2])]);
        let z = greatest_topo_bisimulation(&m, &m).unwrap();
        assert!(PointRelation::identity(3).is_subset(&z));
        assert_eq!(z, brute_greatest(&m, &m));
        assert_eq!(z, logical_equivalence(&m, &m, 10, ALGEBRA_CAP).unwrap().relation);
        assert_eq!(z, enumerated_agreement(&m, &m, 3, 400));
        // 1 and 2 both satisfy p and see the same p-points.
        assert!(z.contains(1, 2) && z.contains(2, 1));
        assert!(!z.contains(0, 1));
    }

    #[test]
    fn output_is_a_bisimulation_and_matches_brute_force() {
        let spaces = [
            FiniteTopology::chain(2),
            FiniteTopology::discrete(2),
            FiniteTopology::indiscrete(2),
            FiniteTopology::chain(2).dual(),
        ];
        for s in &spaces {
            for s2 in &spaces {
                for p in PointSet::all_subsets(2) {
                    for p2 in PointSet::all_subsets(2) {
                        let (Ok(m), Ok(m2)) = (
                            TopoModel::new(s.clone(), Mode::Paraconsistent, [("p".into(), p)].into()),
                            TopoModel::new(s2.clone(), Mode::Paraconsistent, [("p".into(), p2)].into()),
                        ) else {
                            continue;
                        };
                        let z = greatest_topo_bisimulation(&m, &m2).unwrap();
                        assert!(is_topo_bisimulation(&m, &m2, &z));
                        assert_eq!(z, brute_greatest(&m, &m2));
                    }
                }
            }
        }
    }

    #[test]
    fn deletion_order_does_not_matter() {
        let m = model(
            FiniteTopology::chain(3),
            Mode::Paraconsistent,
            &[("p", &[2]), ("q", &[1, 2])],
        );
        let m2 = model(
            FiniteTopology::chain(3)
                .disjoint_union(&FiniteTopology::discrete(1))
                .unwrap(),
            Mode::Paraconsistent,
            &[("p", &[2, 3]), ("q", &[1, 2, 3])],
        );
        let expected = greatest_topo_bisimulation(&m, &m2).unwrap();
        let mut pairs: Vec<(usize, usize)> = (0..3).flat_map(|a| (0..4).map(move |b| (a, b))).collect();
        for round in 0..6 {
            pairs.rotate_left(round + 1);
            pairs.reverse();
            assert_eq!(
                greatest_bisimulation_scheduled(&m, &m2, BisimVariant::Open, &pairs).unwrap(),
                expected
            );
        }
    }

    #[test]
    fn continuous_bisimulation_examples() {
        let c = FiniteTopology::chain(3);
        let m = model(c.clone(), Mode::Paraconsistent, &[("p", &[1, 2])]);
        let id = PointMap::identity(3);
        assert!(is_continuous_topo_bisimulation(
            &m,
            &m,
            &PointRelation::identity(3),
            &id
        ));

        let k = PointMap::new(3, vec![2, 2, 2]).unwrap();
        assert!(k.is_continuous(&c, &c).unwrap());
        assert!(!is_continuous_topo_bisimulation(
            &m,
            &m,
            &PointRelation::identity(3),
            &k
        ));

        let d = FiniteTopology::discrete(2);
        let a = model(d.clone(), Mode::Paraconsistent, &[("p", &[0])]);
        let b = model(d.clone(), Mode::Paraconsistent, &[("p", &[0])]);
        let swap = PointMap::new(2, vec![1, 0]).unwrap();
        assert!(!is_continuous_topo_bisimulation(
            &a,
            &b,
            &PointRelation::identity(2),
            &swap
        ));
        assert!(is_continuous_topo_bisimulation(
            &a,
            &b,
            &PointRelation::identity(2),
            &PointMap::identity(2)
        ));
    }

    #[test]
    fn equivalence_examples() {
        let d = FiniteTopology::discrete(2);
        let a = model(d.clone(), Mode::Paraconsistent, &[("p", &[0])]);
        let b = model(d, Mode::Paraconsistent, &[("p", &[0, 1])]);
        let eq = logical_equivalence(&a, &b, 5, ALGEBRA_CAP).unwrap();
        assert!(eq.relation.contains(0, 0) && eq.relation.contains(0, 1));
        assert!(!eq.relation.contains(1, 0) && !eq.relation.contains(1, 1));
        let f = eq.distinguishing_formula(1, 1).unwrap();
        assert_ne!(a.satisfies(1, f).unwrap(), b.satisfies(1, f).unwrap());
        assert_eq!(eq.relation, enumerated_agreement(&a, &b, 2, 200));
        assert!(eq.stable_at.is_some());
    }

    #[test]
    fn hennessy_milner_on_small_models() {
        let spaces = [
            FiniteTopology::chain(3),
            FiniteTopology::discrete(2),
            FiniteTopology::chain(2).dual(),
            FiniteTopology::indiscrete(2),
        ];
        for mode in Mode::ALL {
            for s in &spaces {
                for s2 in &spaces {
                    for p in PointSet::all_subsets(s.point_count()) {
                        for p2 in PointSet::all_subsets(s2.point_count()) {
                            let (Ok(m), Ok(m2)) = (
                                TopoModel::new(s.clone(), mode, [("p".into(), p)].into()),
                                TopoModel::new(s2.clone(), mode, [("p".into(), p2)].into()),
                            ) else {
                                continue;
                            };
                            let report = hennessy_milner_check(&m, &m2, 10).unwrap();
                            assert!(report.coincide, "{mode} {m:?} {m2:?}");
                            assert_eq!(report.equivalence, enumerated_agreement(&m, &m2, 3, 300));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn closed_variant_is_the_dual_open_variant() {
        let m = model(FiniteTopology::chain(3), Mode::Classical, &[("p", &[0])]);
        let dual = model(FiniteTopology::chain(3).dual(), Mode::Classical, &[("p", &[0])]);
        assert_eq!(
            greatest_bisimulation_variant(&m, &m, BisimVariant::Closed).unwrap(),
            greatest_topo_bisimulation(&dual, &dual).unwrap()
        );
    }

    #[test]
    fn relation_display_and_graph() {
        let z = PointRelation::graph(&PointMap::new(2, vec![1, 1, 0]).unwrap());
        assert_eq!(z.to_string(), "{(0,1) (1,1) (2,0)}");
        assert_eq!(serde_json::to_string(&z).unwrap(), "[[0,1],[1,1],[2,0]]");
        assert!(PointRelation::from_pairs(1, 1, [(0, 1)]).is_err());
    }
}
