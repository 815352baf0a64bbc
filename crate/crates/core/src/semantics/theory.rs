//! Inconsistency (and incompleteness) of connected theories, checked over
//! the definable algebra.
//!
//! A theory is represented by the set of points where it holds. It is
//! inconsistent once some point in play satisfies `ψ & ~ψ` for a definable
//! `ψ`, and incomplete once some point satisfies neither `ψ` nor `-ψ`.

use serde::Serialize;

use super::{Mode, TopoModel};
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::pointset::PointSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DefectKind {
    /// `point ⊨ formula & ~formula`
    Glut,
    /// `point ⊭ formula | -formula`
    Gap,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DefectWitness {
    pub kind: DefectKind,
    pub point: usize,
    #[serde(serialize_with = "crate::io::serialize_display")]
    pub formula: Formula,
    /// Basis formula the witness was derived from, when there is one.
    pub basis_index: Option<usize>,
}

impl DefectWitness {
    /// Re-evaluates the witness in `model`.
    pub fn holds_in(&self, model: &TopoModel) -> Result<bool> {
        let points = match self.kind {
            DefectKind::Glut => model.glut_points(&self.formula)?,
            DefectKind::Gap => model.gap_points(&self.formula)?,
        };
        Ok(points.contains(self.point))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum TheoryVerdict {
    Witnessed {
        witnesses: Vec<DefectWitness>,
    },
    /// The hypotheses do not hold, so there is nothing to witness.
    Vacuous {
        reason: String,
    },
    /// Hypotheses hold but no witness exists.
    Counterexample {
        reason: String,
    },
}

impl TheoryVerdict {
    pub fn is_witnessed(&self) -> bool {
        matches!(self, TheoryVerdict::Witnessed { .. })
    }
}

/// Outcome of checking that a union of overlapping closed theories is
/// inconsistent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnionReport {
    pub union: PointSet,
    pub intersection: PointSet,
    /// Whether the union is connected as a subspace.
    pub union_connected: bool,
    /// Whether the union misses some point of the space.
    pub proper: bool,
    pub boundary: PointSet,
    /// Boundary points of the union that are not glutty in the model.
    pub non_glutty: PointSet,
}

impl UnionReport {
    /// `None` when the union is the whole space and the boundary clause does
    /// not apply.
    pub fn holds(&self) -> Option<bool> {
        self.proper
            .then(|| !self.boundary.is_empty() && self.non_glutty.is_empty())
    }
}

impl TopoModel {
    fn defect_kind(&self) -> Result<DefectKind> {
        match self.mode() {
            Mode::Paraconsistent => Ok(DefectKind::Glut),
            Mode::Paracomplete => Ok(DefectKind::Gap),
            Mode::Classical => Err(Error::WrongMode {
                expected: Mode::Paraconsistent,
                found: Mode::Classical,
            }),
        }
    }

    fn defect_points(&self, formula: &Formula) -> Result<PointSet> {
        match self.defect_kind()? {
            DefectKind::Glut => self.glut_points(formula),
            DefectKind::Gap => self.gap_points(formula),
        }
    }

    /// Every connected theory in a paraconsistent model is inconsistent.
    ///
    /// Looks for a glut either on a basis formula itself or on `α & β` for a
    /// definable closed cover `[α] ∪ [β]` of a basis formula's extension.
    pub fn check_connected_theory_inconsistent(&self, basis: &[Formula]) -> Result<TheoryVerdict> {
        self.require_mode(Mode::Paraconsistent)?;
        self.check_connected_theory(basis)
    }

    /// Paracomplete mirror image: every connected theory is incomplete.
    pub fn check_connected_theory_incomplete(&self, basis: &[Formula]) -> Result<TheoryVerdict> {
        self.require_mode(Mode::Paracomplete)?;
        self.check_connected_theory(basis)
    }

    fn check_connected_theory(&self, basis: &[Formula]) -> Result<TheoryVerdict> {
        let kind = self.defect_kind()?;
        let algebra = self.definable_algebra()?;
        let mut extensions = Vec::with_capacity(basis.len());
        for (i, formula) in basis.iter().enumerate() {
            if !self.is_connected_formula(formula)? {
                return Err(Error::PreconditionFailed(format!(
                    "basis formula {i} `{formula}` is not connected"
                )));
            }
            let extension = self.extension(formula)?;
            if !self.is_mode_kind(extension) {
                let kind = if kind == DefectKind::Glut { "closed" } else { "open" };
                return Err(Error::PreconditionFailed(format!(
                    "extension of basis formula {i} `{formula}` is not {kind}"
                )));
            }
            extensions.push(extension);
        }
        let parts: Vec<(PointSet, &Formula)> = algebra
            .members()
            .iter()
            .filter(|(s, _)| !s.is_empty() && self.is_mode_kind(*s))
            .map(|(s, f)| (*s, f))
            .collect();

        for (i, (formula, &extension)) in basis.iter().zip(&extensions).enumerate() {
            if extension.is_empty() {
                continue;
            }
            if let Some(point) = self.defect_points(formula)?.first() {
                return Ok(witnessed(kind, point, formula.clone(), Some(i)));
            }
            for (a, alpha) in &parts {
                for (b, beta) in &parts {
                    if a.union(*b) != extension {
                        continue;
                    }
                    let overlap = a.intersection(*b);
                    if let Some(point) = self.space().boundary(overlap).first() {
                        let psi = Formula::and((*alpha).clone(), (*beta).clone());
                        return Ok(witnessed(kind, point, psi, Some(i)));
                    }
                }
            }
        }

        let reason = if extensions.iter().all(|e| e.is_empty()) {
            "the theory is empty"
        } else if algebra.is_trivial() {
            "no proper non-empty definable set"
        } else if !self.space().is_connected() {
            "the space is not connected"
        } else {
            return Ok(TheoryVerdict::Counterexample {
                reason: "connected space with a non-trivial algebra but no defect point".into(),
            });
        };
        Ok(TheoryVerdict::Vacuous { reason: reason.into() })
    }

    /// In a connected paraconsistent model every non-empty closed definable
    /// theory is inconsistent. Returns one glut witness per such set, lying
    /// inside it.
    pub fn check_only_empty_theory_consistent(&self) -> Result<TheoryVerdict> {
        self.require_mode(Mode::Paraconsistent)?;
        let algebra = self.definable_algebra()?;
        if algebra.is_trivial() {
            return Ok(TheoryVerdict::Vacuous {
                reason: "no proper non-empty definable set".into(),
            });
        }
        // Gluts of definable formulas, one witness formula per point.
        let mut gluts: Vec<(usize, Formula)> = Vec::new();
        for (_, formula) in algebra.members() {
            for point in self.glut_points(formula)?.iter() {
                if !gluts.iter().any(|(p, _)| *p == point) {
                    gluts.push((point, formula.clone()));
                }
            }
        }
        let mut witnesses = Vec::new();
        // Theories live on closed sets; an open point is never glutty.
        for (set, _) in algebra.members() {
            if set.is_empty() || !self.space().is_closed(*set) {
                continue;
            }
            match gluts.iter().find(|(p, _)| set.contains(*p)) {
                Some((point, formula)) => witnesses.push(DefectWitness {
                    kind: DefectKind::Glut,
                    point: *point,
                    formula: formula.clone(),
                    basis_index: None,
                }),
                None if !self.space().is_connected() => {
                    return Ok(TheoryVerdict::Vacuous {
                        reason: "the space is not connected".into(),
                    })
                }
                None => {
                    return Ok(TheoryVerdict::Counterexample {
                        reason: format!("definable set {set} has no glut"),
                    })
                }
            }
        }
        Ok(TheoryVerdict::Witnessed { witnesses })
    }

    /// Theories holding on the closed sets `sets`, with a common point, have
    /// an inconsistent union: the union's boundary is non-empty and glutty.
    pub fn check_union_theories(&self, sets: &[PointSet]) -> Result<UnionReport> {
        self.require_mode(Mode::Paraconsistent)?;
        if sets.is_empty() {
            return Err(Error::PreconditionFailed("no theories given".into()));
        }
        for set in sets {
            if set.is_empty() {
                return Err(Error::PreconditionFailed("a theory holds nowhere".into()));
            }
            if !self.space().is_closed(*set) {
                return Err(Error::PreconditionFailed(format!("{set} is not closed")));
            }
        }
        let full = self.space().full();
        let union = sets.iter().fold(PointSet::EMPTY, |acc, s| acc.union(*s));
        let intersection = sets.iter().fold(full, |acc, s| acc.intersection(*s));
        if intersection.is_empty() {
            return Err(Error::PreconditionFailed("the theories have no common point".into()));
        }
        let boundary = self.space().boundary(union);
        let locus = self.defect_locus()?;
        Ok(UnionReport {
            union,
            intersection,
            union_connected: self.space().subspace(union)?.topology.is_connected(),
            proper: union != full,
            boundary,
            non_glutty: boundary.difference(locus),
        })
    }
}

fn witnessed(kind: DefectKind, point: usize, formula: Formula, basis_index: Option<usize>) -> TheoryVerdict {
    TheoryVerdict::Witnessed {
        witnesses: vec![DefectWitness {
            kind,
            point,
            formula,
            basis_index,
        }],
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{c3, model};
    use super::*;
    use crate::formula::parse;
    use crate::topology::FiniteTopology;

    fn f(text: &str) -> Formula {
        parse(text).unwrap()
    }

    fn single_witness(v: &TheoryVerdict) -> &DefectWitness {
        match v {
            TheoryVerdict::Witnessed { witnesses } => &witnesses[0],
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn connected_theory_examples() {
        let m = model(c3(), Mode::Paraconsistent, &[1, 2]);
        let v = m.check_connected_theory_inconsistent(&[f("p")]).unwrap();
        let w = single_witness(&v);
        assert_eq!((w.point, &w.formula), (1, &f("p")));
        assert!(w.holds_in(&m).unwrap());

        // T has no glut itself; the cover [p] ∪ [T] of the whole space does.
        assert_eq!(m.glut_points(&Formula::Top).unwrap(), PointSet::EMPTY);
        let v = m.check_connected_theory_inconsistent(&[Formula::Top]).unwrap();
        let w = single_witness(&v);
        assert!(w.holds_in(&m).unwrap());
        assert!(m.extension(&f("p & ~p")).unwrap().contains(w.point));

        let v = m.check_connected_theory_inconsistent(&[Formula::Bot]).unwrap();
        assert_eq!(
            v,
            TheoryVerdict::Vacuous {
                reason: "the theory is empty".into()
            }
        );
    }

    #[test]
    fn connected_theory_preconditions() {
        let two = FiniteTopology::discrete(2);
        let split = TopoModel::new(
            two,
            Mode::Paraconsistent,
            [("p".into(), PointSet::from([0])), ("q".into(), PointSet::from([1]))].into(),
        )
        .unwrap();
        assert!(matches!(
            split.check_connected_theory_inconsistent(&[f("p | q")]),
            Err(Error::PreconditionFailed(_))
        ));
        // p alone is connected but clopen: no glut, and the space is split.
        let v = split.check_connected_theory_inconsistent(&[f("p")]).unwrap();
        assert_eq!(
            v,
            TheoryVerdict::Vacuous {
                reason: "the space is not connected".into()
            }
        );

        let k = model(c3(), Mode::Paracomplete, &[0]);
        assert!(matches!(
            k.check_connected_theory_inconsistent(&[f("p")]),
            Err(Error::WrongMode { .. })
        ));
    }

    #[test]
    fn paracomplete_theories_are_incomplete() {
        let k = model(c3(), Mode::Paracomplete, &[0]);
        let v = k.check_connected_theory_incomplete(&[f("p")]).unwrap();
        let w = single_witness(&v);
        assert_eq!(w.kind, DefectKind::Gap);
        assert!(w.holds_in(&k).unwrap());
        let v = k.check_connected_theory_incomplete(&[Formula::Top]).unwrap();
        assert!(single_witness(&v).holds_in(&k).unwrap());
    }

    #[test]
    fn only_empty_theory_is_consistent() {
        let m = model(c3(), Mode::Paraconsistent, &[1, 2]);
        match m.check_only_empty_theory_consistent().unwrap() {
            TheoryVerdict::Witnessed { witnesses } => {
                assert_eq!(witnesses.len(), 2);
                assert!(witnesses.iter().all(|w| w.holds_in(&m).unwrap()));
            }
            other => panic!("{other:?}"),
        }
        let bare = model(c3(), Mode::Paraconsistent, &[]);
        assert!(matches!(
            bare.check_only_empty_theory_consistent().unwrap(),
            TheoryVerdict::Vacuous { .. }
        ));
    }

    #[test]
    fn union_examples() {
        let m = model(c3(), Mode::Paraconsistent, &[1, 2]);
        let report = m
            .check_union_theories(&[PointSet::from([2]), PointSet::from([1, 2])])
            .unwrap();
        assert_eq!(report.union, PointSet::from([1, 2]));
        assert!(report.proper);
        assert_eq!(report.boundary, PointSet::from([1, 2]));
        assert_eq!(report.holds(), Some(true));

        let report = m.check_union_theories(&[c3().full(), PointSet::from([2])]).unwrap();
        assert_eq!(report.holds(), None);

        let d = model(FiniteTopology::discrete(2), Mode::Paraconsistent, &[0]);
        assert!(matches!(
            d.check_union_theories(&[PointSet::from([0]), PointSet::from([1])]),
            Err(Error::PreconditionFailed(_))
        ));
        assert!(matches!(
            m.check_union_theories(&[PointSet::from([0])]),
            Err(Error::PreconditionFailed(_))
        ));
    }
}
