use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::{Mode, TopoModel};
use crate::error::{Error, Result};
use crate::formula::{enumerate_formulas, Formula};
use crate::pointset::PointSet;

/// Default bound on the number of sets in a definable algebra.
pub const ALGEBRA_CAP: usize = 4096;

/// Every set definable in a model: the least family containing the
/// valuations, `∅` and the full set, closed under `∩`, `∪`, interior,
/// closure and the mode's negation. Each member carries one formula that
/// defines it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefinableAlgebra {
    members: Vec<(PointSet, Formula)>,
    index: HashMap<PointSet, usize>,
}

impl DefinableAlgebra {
    pub fn sets(&self) -> impl Iterator<Item = PointSet> + '_ {
        self.members.iter().map(|(s, _)| *s)
    }

    pub fn members(&self) -> &[(PointSet, Formula)] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, set: PointSet) -> bool {
        self.index.contains_key(&set)
    }

    /// A formula whose extension is `set`.
    pub fn formula_for(&self, set: PointSet) -> Option<&Formula> {
        self.index.get(&set).map(|&i| &self.members[i].1)
    }

    /// Only `∅` and the full set.
    pub fn is_trivial(&self) -> bool {
        self.members.len() <= 2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PointKind {
    Glutty,
    Gappy,
    Classical,
}

/// The formulas (up to the enumeration caps) true at one point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheorySnapshot {
    pub point: usize,
    pub depth: usize,
    pub formulas_true: Vec<Formula>,
}

impl TopoModel {
    pub fn definable_algebra(&self) -> Result<DefinableAlgebra> {
        self.definable_algebra_capped(ALGEBRA_CAP)
    }

    pub fn definable_algebra_capped(&self, cap: usize) -> Result<DefinableAlgebra> {
        let n = self.point_count();
        let space = self.space();
        let mut members: Vec<(PointSet, Formula)> = Vec::new();
        let mut index: HashMap<PointSet, usize> = HashMap::new();
        let mut queue: VecDeque<usize> = VecDeque::new();

        let mut add = |set: PointSet,
                       formula: &dyn Fn() -> Formula,
                       members: &mut Vec<(PointSet, Formula)>,
                       queue: &mut VecDeque<usize>|
         -> Result<()> {
            if index.contains_key(&set) {
                return Ok(());
            }
            if members.len() >= cap {
                return Err(Error::AlgebraOverflow { cap });
            }
            index.insert(set, members.len());
            queue.push_back(members.len());
            members.push((set, formula()));
            Ok(())
        };

        add(PointSet::EMPTY, &|| Formula::Bot, &mut members, &mut queue)?;
        add(PointSet::full(n), &|| Formula::Top, &mut members, &mut queue)?;
        for (name, &set) in self.valuation() {
            add(set, &|| Formula::Prop(name.clone()), &mut members, &mut queue)?;
        }

        while let Some(i) = queue.pop_front() {
            let (set, formula) = members[i].clone();
            let unary = [
                (space.interior(set), Formula::boxed as fn(Formula) -> Formula),
                (space.closure(set), Formula::diamond),
                (
                    match self.mode() {
                        Mode::Classical => set.complement(n),
                        Mode::Paraconsistent => space.closure(set.complement(n)),
                        Mode::Paracomplete => space.interior(set.complement(n)),
                    },
                    match self.mode() {
                        Mode::Classical => Formula::class_neg,
                        Mode::Paraconsistent => Formula::para_neg,
                        Mode::Paracomplete => Formula::comp_neg,
                    },
                ),
            ];
            for (image, wrap) in unary {
                add(image, &|| wrap(formula.clone()), &mut members, &mut queue)?;
            }
            for j in 0..=i {
                let (other, other_formula) = members[j].clone();
                add(
                    set.intersection(other),
                    &|| Formula::and(other_formula.clone(), formula.clone()),
                    &mut members,
                    &mut queue,
                )?;
                add(
                    set.union(other),
                    &|| Formula::or(other_formula.clone(), formula.clone()),
                    &mut members,
                    &mut queue,
                )?;
            }
        }

        members.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        let index = members.iter().enumerate().map(|(i, (s, _))| (*s, i)).collect();
        Ok(DefinableAlgebra { members, index })
    }

    /// Points on the boundary of some definable set. In paraconsistent mode
    /// these are exactly the points where some `φ & ~φ` holds; in
    /// paracomplete mode, where some `φ | -φ` fails.
    pub fn defect_locus(&self) -> Result<PointSet> {
        let algebra = self.definable_algebra()?;
        Ok(algebra
            .sets()
            .fold(PointSet::EMPTY, |acc, set| acc.union(self.space().boundary(set))))
    }

    pub fn classify_point(&self, point: usize) -> Result<PointKind> {
        if point >= self.point_count() {
            return Err(Error::PointOutOfBounds {
                point,
                points: self.point_count(),
            });
        }
        Ok(match self.mode() {
            Mode::Classical => PointKind::Classical,
            _ if !self.defect_locus()?.contains(point) => PointKind::Classical,
            Mode::Paraconsistent => PointKind::Glutty,
            Mode::Paracomplete => PointKind::Gappy,
        })
    }

    pub fn theory_at(&self, point: usize, depth: usize, cap: usize) -> Result<TheorySnapshot> {
        if point >= self.point_count() {
            return Err(Error::PointOutOfBounds {
                point,
                points: self.point_count(),
            });
        }
        let formulas_true = enumerate_formulas(&self.props(), depth, cap.max(1), self.mode())
            .into_iter()
            .filter(|f| self.eval_unchecked(f).contains(point))
            .collect();
        Ok(TheorySnapshot {
            point,
            depth,
            formulas_true,
        })
    }

    pub(crate) fn eval_unchecked(&self, formula: &Formula) -> PointSet {
        self.eval(formula)
    }

    /// A cover `A ∪ B = [formula]` by non-empty definable sets of the mode's
    /// kind (closed when paraconsistent, open otherwise) with `A ∩ B = ∅`.
    pub fn disconnecting_cover(&self, formula: &Formula) -> Result<Option<(PointSet, PointSet)>> {
        let extension = self.extension(formula)?;
        let algebra = self.definable_algebra()?;
        let parts: Vec<PointSet> = algebra
            .sets()
            .filter(|&s| !s.is_empty() && s.is_subset(extension) && self.cover_kind(s))
            .collect();
        for (i, &a) in parts.iter().enumerate() {
            for &b in &parts[i..] {
                if a.union(b) == extension && a.is_disjoint(b) {
                    return Ok(Some((a, b)));
                }
            }
        }
        Ok(None)
    }

    /// No two non-empty definable parts of the mode's kind split the
    /// extension without overlapping.
    pub fn is_connected_formula(&self, formula: &Formula) -> Result<bool> {
        Ok(self.disconnecting_cover(formula)?.is_none())
    }

    fn cover_kind(&self, set: PointSet) -> bool {
        match self.mode() {
            Mode::Paraconsistent => self.space().is_closed(set),
            Mode::Classical | Mode::Paracomplete => self.space().is_open(set),
        }
    }
}
