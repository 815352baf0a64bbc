//! Finite topological spaces and their point-set operators.
//!
//! Every finite topology is Alexandrov: each point `s` has a smallest open
//! neighbourhood `U(s)`, and the opens are exactly the up-sets of the
//! specialization preorder `x ⊑ y iff y ∈ U(x)` (equivalently
//! `x ∈ Clo({y})`). The operators below are computed from the neighbourhoods;
//! the open family is kept for enumeration and printing.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::pointset::{PointSet, MAX_POINTS};

/// A reflexive, transitive relation on `0..n`.
///
/// `up[x]` holds every `y` with `x ≤ y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Preorder {
    up: Vec<PointSet>,
}

impl Preorder {
    /// Reflexive-transitive closure of `pairs` on `n` points.
    pub fn closure_of(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        check_size(n)?;
        let mut up: Vec<PointSet> = (0..n).map(PointSet::singleton).collect();
        for (x, y) in pairs {
            for p in [x, y] {
                if p >= n {
                    return Err(Error::PointOutOfBounds { point: p, points: n });
                }
            }
            up[x].insert(y);
        }
        // Warshall on bit rows.
        for k in 0..n {
            for x in 0..n {
                if up[x].contains(k) {
                    up[x] = up[x].union(up[k]);
                }
            }
        }
        Ok(Preorder { up })
    }

    /// Accepts rows that are already reflexive and transitive.
    pub fn from_up_sets(up: Vec<PointSet>) -> Result<Self> {
        let n = up.len();
        check_size(n)?;
        for (x, row) in up.iter().enumerate() {
            if !row.within(n) {
                return Err(Error::OutOfBounds { set: *row, points: n });
            }
            if !row.contains(x) {
                return Err(Error::PreconditionFailed(format!("preorder is not reflexive at {x}")));
            }
            for y in row.iter() {
                if !up[y].is_subset(*row) {
                    return Err(Error::PreconditionFailed(format!(
                        "preorder is not transitive through {x} ≤ {y}"
                    )));
                }
            }
        }
        Ok(Preorder { up })
    }

    pub fn discrete(n: usize) -> Self {
        Preorder {
            up: (0..n).map(PointSet::singleton).collect(),
        }
    }

    pub fn point_count(&self) -> usize {
        self.up.len()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    /// `{ y : x ≤ y }`.
    pub fn up_set(&self, x: usize) -> PointSet {
        self.up[x]
    }

    /// `{ y : y ≤ x }`.
    pub fn down_set(&self, x: usize) -> PointSet {
        (0..self.up.len()).filter(|&y| self.up[y].contains(x)).collect()
    }

    pub fn is_up_closed(&self, set: PointSet) -> bool {
        set.iter().all(|x| self.up[x].is_subset(set))
    }

    pub fn is_down_closed(&self, set: PointSet) -> bool {
        (0..self.up.len()).all(|x| set.contains(x) || self.up[x].is_disjoint(set))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.up
            .iter()
            .enumerate()
            .flat_map(|(x, row)| row.iter().map(move |y| (x, y)))
    }
}

/// A topology on the points `0..n`, stored by its open family.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteTopology {
    points: usize,
    opens: Vec<PointSet>,
    neighborhoods: Vec<PointSet>,
}

/// An induced topology together with the original id of each new point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    pub topology: FiniteTopology,
    pub ids: Vec<usize>,
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_POINTS {
        Err(Error::TooManyPoints {
            points: n,
            max: MAX_POINTS,
        })
    } else {
        Ok(())
    }
}

fn canonical(mut family: Vec<PointSet>) -> Vec<PointSet> {
    family.sort_by(PointSet::canonical_cmp);
    family.dedup();
    family
}

impl FiniteTopology {
    /// Validates `family` as the open sets of a topology on `n` points.
    ///
    /// The family is deduplicated and put in canonical order; nothing is
    /// added to it.
    pub fn from_opens(n: usize, family: impl IntoIterator<Item = PointSet>) -> Result<Self> {
        check_size(n)?;
        let full = PointSet::full(n);
        let mut opens = Vec::new();
        for set in family {
            if !set.within(n) {
                return Err(Error::OutOfBounds { set, points: n });
            }
            opens.push(set);
        }
        let opens = canonical(opens);
        let members: HashSet<PointSet> = opens.iter().copied().collect();
        if !members.contains(&PointSet::EMPTY) || !members.contains(&full) {
            return Err(Error::MissingExtremes { points: n });
        }

        let neighborhoods: Vec<PointSet> = (0..n)
            .map(|s| {
                opens
                    .iter()
                    .filter(|o| o.contains(s))
                    .fold(full, |acc, o| acc.intersection(*o))
            })
            .collect();
        let candidate = FiniteTopology::from_neighborhoods(n, neighborhoods.clone());
        // Every listed open is the union of the neighbourhoods of its points,
        // so the family sits inside the generated topology.
        if candidate.opens.len() == opens.len() {
            return Ok(FiniteTopology {
                points: n,
                opens,
                neighborhoods,
            });
        }
        Err(first_violation(&opens, &members))
    }

    /// Topology whose opens are the up-sets of `order`.
    pub fn from_preorder(order: &Preorder) -> Self {
        let n = order.point_count();
        let neighborhoods = (0..n).map(|x| order.up_set(x)).collect();
        FiniteTopology::from_neighborhoods(n, neighborhoods)
    }

    /// Closes `family` under pairwise union and intersection and adds the
    /// empty and full sets.
    pub fn generate_from_subbase(n: usize, family: impl IntoIterator<Item = PointSet>) -> Result<Self> {
        check_size(n)?;
        let full = PointSet::full(n);
        let mut neighborhoods = vec![full; n];
        for set in family {
            if !set.within(n) {
                return Err(Error::OutOfBounds { set, points: n });
            }
            for s in set.iter() {
                neighborhoods[s] = neighborhoods[s].intersection(set);
            }
        }
        Ok(FiniteTopology::from_neighborhoods(n, neighborhoods))
    }

    /// `neighborhoods[s]` must contain `s` and be closed under the induced
    /// preorder; callers inside this module guarantee that.
    fn from_neighborhoods(n: usize, neighborhoods: Vec<PointSet>) -> Self {
        let opens = PointSet::all_subsets(n)
            .filter(|set| set.iter().all(|s| neighborhoods[s].is_subset(*set)))
            .collect();
        FiniteTopology {
            points: n,
            opens: canonical(opens),
            neighborhoods,
        }
    }

    pub fn discrete(n: usize) -> Self {
        FiniteTopology::from_preorder(&Preorder::discrete(n))
    }

    pub fn indiscrete(n: usize) -> Self {
        let full = PointSet::full(n);
        FiniteTopology::from_neighborhoods(n, vec![full; n])
    }

    /// The chain whose opens are `∅, {0}, {0,1}, .., {0..n-1}`.
    pub fn chain(n: usize) -> Self {
        let neighborhoods = (0..n).map(|s| PointSet::full(s + 1)).collect();
        FiniteTopology::from_neighborhoods(n, neighborhoods)
    }

    pub fn point_count(&self) -> usize {
        self.points
    }

    pub fn full(&self) -> PointSet {
        PointSet::full(self.points)
    }

    /// Open sets in canonical order.
    pub fn opens(&self) -> &[PointSet] {
        &self.opens
    }

    /// Closed sets (complements of opens) in canonical order.
    pub fn closed_sets(&self) -> Vec<PointSet> {
        canonical(self.opens.iter().map(|o| o.complement(self.points)).collect())
    }

    pub fn is_open(&self, set: PointSet) -> bool {
        set.within(self.points) && set.iter().all(|s| self.neighborhoods[s].is_subset(set))
    }

    pub fn is_closed(&self, set: PointSet) -> bool {
        set.within(self.points) && self.is_open(set.complement(self.points))
    }

    /// Smallest open set containing `point`.
    pub fn minimal_neighborhood(&self, point: usize) -> PointSet {
        self.neighborhoods[point]
    }

    /// Largest open set contained in `set`.
    pub fn interior(&self, set: PointSet) -> PointSet {
        (0..self.points)
            .filter(|&s| self.neighborhoods[s].is_subset(set))
            .collect()
    }

    /// Smallest closed set containing `set`.
    pub fn closure(&self, set: PointSet) -> PointSet {
        (0..self.points)
            .filter(|&s| !self.neighborhoods[s].is_disjoint(set))
            .collect()
    }

    pub fn boundary(&self, set: PointSet) -> PointSet {
        self.closure(set).difference(self.interior(set))
    }

    /// `x ⊑ y iff x ∈ Clo({y})`.
    pub fn specialization(&self) -> Preorder {
        Preorder {
            up: self.neighborhoods.clone(),
        }
    }

    pub fn specializes(&self, x: usize, y: usize) -> bool {
        self.neighborhoods[x].contains(y)
    }

    /// A point below every other point in the specialization preorder.
    pub fn least_point(&self) -> Option<usize> {
        let full = self.full();
        (0..self.points).find(|&m| self.neighborhoods[m] == full)
    }

    /// A point above every other point in the specialization preorder.
    pub fn greatest_point(&self) -> Option<usize> {
        (0..self.points).find(|&m| self.neighborhoods.iter().all(|u| u.contains(m)))
    }

    pub fn is_discrete(&self) -> bool {
        self.neighborhoods
            .iter()
            .enumerate()
            .all(|(s, u)| *u == PointSet::singleton(s))
    }

    /// Partition of the points into maximal connected subspaces, ordered by
    /// smallest member.
    pub fn connected_components(&self) -> Vec<PointSet> {
        let n = self.points;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for x in 0..n {
            for y in self.neighborhoods[x].iter() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut components: Vec<PointSet> = Vec::new();
        let mut roots: Vec<usize> = Vec::new();
        for x in 0..n {
            let root = find(&mut parent, x);
            match roots.iter().position(|&r| r == root) {
                Some(i) => components[i].insert(x),
                None => {
                    roots.push(root);
                    components.push(PointSet::singleton(x));
                }
            }
        }
        components
    }

    /// Connected: not the union of two disjoint non-empty opens.
    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Induced topology on `set`, points renumbered in ascending order.
    pub fn subspace(&self, set: PointSet) -> Result<Subspace> {
        if set.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        if !set.within(self.points) {
            return Err(Error::OutOfBounds {
                set,
                points: self.points,
            });
        }
        let ids = set.to_vec();
        let neighborhoods = ids
            .iter()
            .map(|&s| compress(self.neighborhoods[s].intersection(set), &ids))
            .collect();
        Ok(Subspace {
            topology: FiniteTopology::from_neighborhoods(ids.len(), neighborhoods),
            ids,
        })
    }

    /// The topology whose opens are this topology's closed sets.
    pub fn dual(&self) -> FiniteTopology {
        let n = self.points;
        let neighborhoods = (0..n)
            .map(|s| (0..n).filter(|&t| self.neighborhoods[t].contains(s)).collect())
            .collect();
        FiniteTopology::from_neighborhoods(n, neighborhoods)
    }

    /// Image of the topology under the bijection `point ↦ perm[point]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<FiniteTopology> {
        let n = self.points;
        if perm.len() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                found: perm.len(),
            });
        }
        let image: PointSet = perm.iter().copied().collect();
        if image != self.full() {
            return Err(Error::PreconditionFailed("relabeling is not a permutation".into()));
        }
        let mut neighborhoods = vec![PointSet::EMPTY; n];
        for s in 0..n {
            neighborhoods[perm[s]] = self.neighborhoods[s].iter().map(|t| perm[t]).collect();
        }
        Ok(FiniteTopology::from_neighborhoods(n, neighborhoods))
    }

    /// Side-by-side sum: points of `other` are shifted past this space's.
    pub fn disjoint_union(&self, other: &FiniteTopology) -> Result<FiniteTopology> {
        let n = self.points + other.points;
        check_size(n)?;
        let shift = self.points;
        let neighborhoods = self
            .neighborhoods
            .iter()
            .copied()
            .chain(
                other
                    .neighborhoods
                    .iter()
                    .map(|u| PointSet::from_bits(u.bits() << shift)),
            )
            .collect();
        Ok(FiniteTopology::from_neighborhoods(n, neighborhoods))
    }
}

/// Renumbers the members of `set` (all drawn from `ids`) by position in `ids`.
fn compress(set: PointSet, ids: &[usize]) -> PointSet {
    ids.iter()
        .enumerate()
        .filter(|(_, &id)| set.contains(id))
        .map(|(i, _)| i)
        .collect()
}

fn first_violation(opens: &[PointSet], members: &HashSet<PointSet>) -> Error {
    for (i, &left) in opens.iter().enumerate() {
        for &right in &opens[i + 1..] {
            let union = left.union(right);
            if !members.contains(&union) {
                return Error::NotClosedUnderOps {
                    op: "union",
                    left,
                    right,
                    result: union,
                };
            }
            let meet = left.intersection(right);
            if !members.contains(&meet) {
                return Error::NotClosedUnderOps {
                    op: "intersection",
                    left,
                    right,
                    result: meet,
                };
            }
        }
    }
    unreachable!("a family closed under union and intersection generates itself")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sets(family: &[&[usize]]) -> Vec<PointSet> {
        family.iter().map(|s| PointSet::from(*s)).collect()
    }

    fn c3() -> FiniteTopology {
        FiniteTopology::from_opens(3, sets(&[&[], &[0], &[0, 1], &[0, 1, 2]])).unwrap()
    }

    // Oracle: every pairwise union/intersection of the listed family is in it.
    fn closed_under_ops(family: &[PointSet]) -> bool {
        family.iter().all(|a| {
            family
                .iter()
                .all(|b| family.contains(&a.union(*b)) && family.contains(&a.intersection(*b)))
        })
    }

    #[test]
    fn from_opens_examples() {
        let family = sets(&[&[], &[0], &[0, 1], &[0, 1, 2]]);
        assert!(closed_under_ops(&family));
        assert_eq!(c3().opens(), family.as_slice());
        assert_eq!(c3(), FiniteTopology::chain(3));

        let one = FiniteTopology::from_opens(1, sets(&[&[], &[0]])).unwrap();
        assert_eq!(one, FiniteTopology::discrete(1));
        assert_eq!(one, FiniteTopology::indiscrete(1));

        let err = FiniteTopology::from_opens(2, sets(&[&[], &[0], &[1]])).unwrap_err();
        assert!(matches!(err, Error::MissingExtremes { .. }));
    }

    #[test]
    fn from_opens_names_violating_pair() {
        let err = FiniteTopology::from_opens(3, sets(&[&[], &[0], &[1], &[0, 1, 2]])).unwrap_err();
        assert_eq!(
            err,
            Error::NotClosedUnderOps {
                op: "union",
                left: PointSet::from([0]),
                right: PointSet::from([1]),
                result: PointSet::from([0, 1]),
            }
        );
        let err = FiniteTopology::from_opens(3, sets(&[&[], &[0, 1], &[1, 2], &[0, 1, 2]])).unwrap_err();
        assert!(matches!(err, Error::NotClosedUnderOps { op: "intersection", .. }));
    }

    #[test]
    fn from_opens_rejects_out_of_range_and_oversize() {
        assert!(matches!(
            FiniteTopology::from_opens(2, sets(&[&[], &[0, 1], &[2]])),
            Err(Error::OutOfBounds { .. })
        ));
        assert!(matches!(
            FiniteTopology::from_opens(MAX_POINTS + 1, vec![]),
            Err(Error::TooManyPoints { .. })
        ));
    }

    // Brute-force up-set enumeration oracle.
    fn up_sets(order: &Preorder) -> Vec<PointSet> {
        let n = order.point_count();
        let mut out: Vec<PointSet> = PointSet::all_subsets(n)
            .filter(|s| s.iter().all(|x| (0..n).all(|y| !order.leq(x, y) || s.contains(y))))
            .collect();
        out.sort_by(PointSet::canonical_cmp);
        out
    }

    #[test]
    fn from_preorder_examples() {
        let two_chain = Preorder::closure_of(2, [(0, 1)]).unwrap();
        let t = FiniteTopology::from_preorder(&two_chain);
        assert_eq!(t.opens(), up_sets(&two_chain).as_slice());
        assert_eq!(t.opens(), sets(&[&[], &[1], &[0, 1]]).as_slice());

        assert_eq!(FiniteTopology::from_preorder(&Preorder::discrete(2)).opens().len(), 4);

        let total = Preorder::closure_of(3, [(0, 1), (1, 2)]).unwrap();
        let t = FiniteTopology::from_preorder(&total);
        assert_eq!(t.opens(), up_sets(&total).as_slice());
        assert_eq!(t.opens().len(), 4);
        assert_eq!(t.relabel(&[2, 1, 0]).unwrap(), c3());
        assert_eq!(t.specialization(), total);
    }

    #[test]
    fn operator_examples() {
        let t = c3();
        assert_eq!(t.interior(PointSet::from([1, 2])), PointSet::EMPTY);
        assert_eq!(t.interior(PointSet::from([0, 1])), PointSet::from([0, 1]));
        assert_eq!(t.interior(t.full()), t.full());
        assert_eq!(t.closure(PointSet::from([0])), t.full());
        assert_eq!(t.closure(PointSet::from([1])), PointSet::from([1, 2]));
        assert_eq!(t.closure(PointSet::EMPTY), PointSet::EMPTY);
        assert_eq!(t.boundary(PointSet::from([0])), PointSet::from([1, 2]));
        assert_eq!(t.boundary(PointSet::from([1, 2])), PointSet::from([1, 2]));
        let d = FiniteTopology::discrete(3);
        assert!(PointSet::all_subsets(3).all(|x| d.boundary(x).is_empty()));
    }

    #[test]
    fn minimal_neighborhood_examples() {
        let t = c3();
        assert_eq!(t.minimal_neighborhood(2), t.full());
        assert_eq!(t.minimal_neighborhood(0), PointSet::from([0]));
        let d = FiniteTopology::discrete(4);
        assert_eq!(d.minimal_neighborhood(3), PointSet::from([3]));
        assert_eq!(t.least_point(), Some(2));
        assert_eq!(t.greatest_point(), Some(0));
        assert_eq!(d.least_point(), None);
    }

    #[test]
    fn connectedness_examples() {
        let t = c3();
        assert!(t.is_connected());
        assert_eq!(t.connected_components(), vec![t.full()]);
        let two = t.disjoint_union(&t).unwrap();
        assert!(!two.is_connected());
        assert_eq!(
            two.connected_components(),
            vec![PointSet::from([0, 1, 2]), PointSet::from([3, 4, 5])]
        );
        assert!(FiniteTopology::discrete(1).is_connected());
    }

    #[test]
    fn subspace_examples() {
        let t = c3();
        let sub = t.subspace(PointSet::from([1, 2])).unwrap();
        assert_eq!(sub.ids, vec![1, 2]);
        assert_eq!(sub.topology.opens(), sets(&[&[], &[0], &[0, 1]]).as_slice());
        // Same family via intersecting every open.
        let mut oracle: Vec<PointSet> = t
            .opens()
            .iter()
            .map(|o| compress(o.intersection(PointSet::from([1, 2])), &sub.ids))
            .collect();
        oracle = canonical(oracle);
        assert_eq!(sub.topology.opens(), oracle.as_slice());

        assert_eq!(t.subspace(t.full()).unwrap().topology, t);
        assert_eq!(
            t.subspace(PointSet::from([1])).unwrap().topology,
            FiniteTopology::discrete(1)
        );
        assert_eq!(t.subspace(PointSet::EMPTY), Err(Error::EmptyCarrier));
    }

    #[test]
    fn dual_examples() {
        let t = c3();
        assert_eq!(t.dual().opens(), sets(&[&[], &[2], &[1, 2], &[0, 1, 2]]).as_slice());
        assert_eq!(t.dual().dual(), t);
        assert_eq!(FiniteTopology::discrete(3).dual(), FiniteTopology::discrete(3));
        assert_eq!(FiniteTopology::indiscrete(3).dual(), FiniteTopology::indiscrete(3));
    }

    #[test]
    fn generate_from_subbase_closes_family() {
        let t = FiniteTopology::generate_from_subbase(3, sets(&[&[0, 1], &[1, 2]])).unwrap();
        assert_eq!(t.opens(), sets(&[&[], &[1], &[0, 1], &[1, 2], &[0, 1, 2]]).as_slice());
    }

    #[test]
    fn preorder_validation() {
        assert!(Preorder::from_up_sets(vec![PointSet::from([0, 1]), PointSet::from([1])]).is_ok());
        assert!(Preorder::from_up_sets(vec![PointSet::from([1]), PointSet::from([1])]).is_err());
        assert!(Preorder::from_up_sets(vec![
            PointSet::from([0, 1]),
            PointSet::from([1, 2]),
            PointSet::from([2])
        ])
        .is_err());
        let p = Preorder::closure_of(3, [(0, 1), (1, 2)]).unwrap();
        assert!(p.leq(0, 2));
        assert_eq!(p.down_set(2), PointSet::from([0, 1, 2]));
        assert!(p.is_down_closed(PointSet::from([0, 1])));
        assert!(!p.is_down_closed(PointSet::from([1])));
    }
}
