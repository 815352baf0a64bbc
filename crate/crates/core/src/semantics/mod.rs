//! Topological models and the extension of formulas.
//!
//! `[]` is interior and `<>` closure. The three negations are the plain
//! complement (`!`), the closure of the complement (`~`) and the interior of
//! the complement (`-`). In a paraconsistent model every valuation is closed,
//! so every extension is closed and `φ & ~φ` holds exactly on the boundary of
//! `[φ]`. Paracomplete models are the open-set mirror image: `φ | -φ` fails
//! exactly on the boundary.

mod algebra;
mod theory;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use algebra::{DefinableAlgebra, PointKind, TheorySnapshot, ALGEBRA_CAP};
pub use theory::{DefectKind, DefectWitness, TheoryVerdict, UnionReport};

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::pointset::PointSet;
use crate::topology::FiniteTopology;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Classical,
    Paraconsistent,
    Paracomplete,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::Classical, Mode::Paraconsistent, Mode::Paracomplete];

    pub fn negation_symbol(self) -> char {
        match self {
            Mode::Classical => '!',
            Mode::Paraconsistent => '~',
            Mode::Paracomplete => '-',
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Classical => "classical",
            Mode::Paraconsistent => "paraconsistent",
            Mode::Paracomplete => "paracomplete",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "classical" => Ok(Mode::Classical),
            "paraconsistent" => Ok(Mode::Paraconsistent),
            "paracomplete" => Ok(Mode::Paracomplete),
            other => Err(format!("unknown mode `{other}`")),
        }
    }
}

pub type Valuation = BTreeMap<String, PointSet>;

/// A finite space, an evaluation mode and a valuation. Propositions missing
/// from the valuation are false everywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopoModel {
    space: FiniteTopology,
    mode: Mode,
    valuation: Valuation,
}

impl TopoModel {
    pub fn new(space: FiniteTopology, mode: Mode, valuation: Valuation) -> Result<Self> {
        let n = space.point_count();
        for (name, &set) in &valuation {
            if !set.within(n) {
                return Err(Error::OutOfBounds { set, points: n });
            }
            match mode {
                Mode::Paraconsistent if !space.is_closed(set) => return Err(Error::ValuationNotClosed(name.clone())),
                Mode::Paracomplete if !space.is_open(set) => return Err(Error::ValuationNotOpen(name.clone())),
                _ => {}
            }
        }
        Ok(TopoModel { space, mode, valuation })
    }

    pub fn space(&self) -> &FiniteTopology {
        &self.space
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn valuation(&self) -> &Valuation {
        &self.valuation
    }

    pub fn value(&self, prop: &str) -> PointSet {
        self.valuation.get(prop).copied().unwrap_or_default()
    }

    /// Proposition names in sorted order.
    pub fn props(&self) -> Vec<String> {
        self.valuation.keys().cloned().collect()
    }

    pub fn point_count(&self) -> usize {
        self.space.point_count()
    }

    pub fn check_formula(&self, formula: &Formula) -> Result<()> {
        match formula.foreign_negation(self.mode) {
            Some(negation) => Err(Error::ModeMismatch {
                mode: self.mode,
                negation,
            }),
            None => Ok(()),
        }
    }

    /// The set of points at which `formula` holds.
    pub fn extension(&self, formula: &Formula) -> Result<PointSet> {
        self.check_formula(formula)?;
        Ok(self.eval(formula))
    }

    fn eval(&self, formula: &Formula) -> PointSet {
        let n = self.space.point_count();
        match formula {
            Formula::Prop(name) => self.value(name),
            Formula::Top => PointSet::full(n),
            Formula::Bot => PointSet::EMPTY,
            Formula::And(l, r) => self.eval(l).intersection(self.eval(r)),
            Formula::Or(l, r) => self.eval(l).union(self.eval(r)),
            Formula::ClassNeg(f) => self.eval(f).complement(n),
            Formula::ParaNeg(f) => self.space.closure(self.eval(f).complement(n)),
            Formula::CompNeg(f) => self.space.interior(self.eval(f).complement(n)),
            Formula::Box(f) => self.space.interior(self.eval(f)),
            Formula::Diamond(f) => self.space.closure(self.eval(f)),
        }
    }

    pub fn satisfies(&self, point: usize, formula: &Formula) -> Result<bool> {
        if point >= self.point_count() {
            return Err(Error::PointOutOfBounds {
                point,
                points: self.point_count(),
            });
        }
        Ok(self.extension(formula)?.contains(point))
    }

    /// True when the formula holds at every point.
    pub fn globally_true(&self, formula: &Formula) -> Result<bool> {
        Ok(self.extension(formula)? == self.space.full())
    }

    /// Points satisfying both `formula` and `~formula`.
    pub fn glut_points(&self, formula: &Formula) -> Result<PointSet> {
        self.require_mode(Mode::Paraconsistent)?;
        self.extension(&Formula::and(formula.clone(), Formula::para_neg(formula.clone())))
    }

    /// Points satisfying neither `formula` nor `-formula`.
    pub fn gap_points(&self, formula: &Formula) -> Result<PointSet> {
        self.require_mode(Mode::Paracomplete)?;
        let covered = self.extension(&Formula::or(formula.clone(), Formula::comp_neg(formula.clone())))?;
        Ok(covered.complement(self.point_count()))
    }

    pub(crate) fn require_mode(&self, expected: Mode) -> Result<()> {
        if self.mode == expected {
            Ok(())
        } else {
            Err(Error::WrongMode {
                expected,
                found: self.mode,
            })
        }
    }

    /// Whether `set` has the shape every extension has in this mode: closed
    /// for paraconsistent, open for paracomplete, anything for classical.
    pub fn is_mode_kind(&self, set: PointSet) -> bool {
        match self.mode {
            Mode::Classical => true,
            Mode::Paraconsistent => self.space.is_closed(set),
            Mode::Paracomplete => self.space.is_open(set),
        }
    }

    /// Same model with one more proposition.
    pub fn with_prop(&self, name: impl Into<String>, set: PointSet) -> Result<TopoModel> {
        let mut valuation = self.valuation.clone();
        valuation.insert(name.into(), set);
        TopoModel::new(self.space.clone(), self.mode, valuation)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    pub(crate) fn c3() -> FiniteTopology {
        FiniteTopology::chain(3)
    }

    pub(crate) fn model(space: FiniteTopology, mode: Mode, p: &[usize]) -> TopoModel {
        TopoModel::new(space, mode, [("p".to_string(), PointSet::from(p))].into()).unwrap()
    }

    fn ext(m: &TopoModel, text: &str) -> PointSet {
        m.extension(&parse(text).unwrap()).unwrap()
    }

    #[test]
    fn new_model_examples() {
        // {1,2} is closed in the chain: its complement {0} is open.
        assert!(c3().opens().contains(&PointSet::from([0])));
        model(c3(), Mode::Paraconsistent, &[1, 2]);
        model(c3(), Mode::Paracomplete, &[0]);
        let err = TopoModel::new(c3(), Mode::Paraconsistent, [("p".into(), PointSet::from([0]))].into());
        assert_eq!(err, Err(Error::ValuationNotClosed("p".into())));
        let err = TopoModel::new(c3(), Mode::Paracomplete, [("q".into(), PointSet::from([2]))].into());
        assert_eq!(err, Err(Error::ValuationNotOpen("q".into())));
        let err = TopoModel::new(c3(), Mode::Classical, [("q".into(), PointSet::from([3]))].into());
        assert!(matches!(err, Err(Error::OutOfBounds { .. })));
    }

    #[test]
    fn extension_examples() {
        let m = model(c3(), Mode::Paraconsistent, &[1, 2]);
        assert_eq!(ext(&m, "~p"), PointSet::from([0, 1, 2]));
        assert_eq!(ext(&m, "[]p"), PointSet::EMPTY);
        assert_eq!(ext(&m, "<>p"), PointSet::from([1, 2]));
        assert_eq!(ext(&m, "T"), m.space().full());
        assert_eq!(ext(&m, "F"), PointSet::EMPTY);
        assert_eq!(ext(&m, "unknown"), PointSet::EMPTY);
        assert_eq!(
            m.extension(&parse("-p").unwrap()),
            Err(Error::ModeMismatch {
                mode: Mode::Paraconsistent,
                negation: '-'
            })
        );
        let k = model(c3(), Mode::Paracomplete, &[0]);
        assert_eq!(ext(&k, "-p"), PointSet::EMPTY);
        assert_eq!(ext(&k, "--p"), k.space().full());
        let c = model(c3(), Mode::Classical, &[1]);
        assert_eq!(ext(&c, "!p"), PointSet::from([0, 2]));
    }

    #[test]
    fn satisfaction_examples() {
        let m = model(c3(), Mode::Paraconsistent, &[1, 2]);
        assert!(m.satisfies(1, &parse("p & ~p").unwrap()).unwrap());
        assert!(!m.satisfies(0, &parse("p").unwrap()).unwrap());
        assert!(m.globally_true(&parse("p | ~p").unwrap()).unwrap());
        assert!(!m.globally_true(&parse("p").unwrap()).unwrap());
        assert!(matches!(
            m.satisfies(3, &Formula::Top),
            Err(Error::PointOutOfBounds { .. })
        ));
    }

    #[test]
    fn glut_examples() {
        let p = parse("p").unwrap();
        let m = model(c3(), Mode::Paraconsistent, &[1, 2]);
        assert_eq!(m.glut_points(&p).unwrap(), PointSet::from([1, 2]));
        assert_eq!(m.glut_points(&p).unwrap(), c3().boundary(PointSet::from([1, 2])));
        assert_eq!(
            model(c3(), Mode::Paraconsistent, &[]).glut_points(&p).unwrap(),
            PointSet::EMPTY
        );
        assert_eq!(
            model(c3(), Mode::Paraconsistent, &[0, 1, 2]).glut_points(&p).unwrap(),
            PointSet::EMPTY
        );
        let k = model(c3(), Mode::Paracomplete, &[0]);
        assert!(matches!(k.glut_points(&p), Err(Error::WrongMode { .. })));
    }

    #[test]
    fn gap_examples() {
        let p = parse("p").unwrap();
        let k = model(c3(), Mode::Paracomplete, &[0]);
        assert_eq!(k.gap_points(&p).unwrap(), PointSet::from([1, 2]));
        assert_eq!(
            model(c3(), Mode::Paracomplete, &[0, 1, 2]).gap_points(&p).unwrap(),
            PointSet::EMPTY
        );
        let d = model(FiniteTopology::discrete(3), Mode::Paracomplete, &[1]);
        for f in ["p", "[]p", "-p & <>p"] {
            assert_eq!(d.gap_points(&parse(f).unwrap()).unwrap(), PointSet::EMPTY);
        }
        let m = model(c3(), Mode::Paraconsistent, &[2]);
        assert!(matches!(m.gap_points(&p), Err(Error::WrongMode { .. })));
    }

    #[test]
    fn adding_a_proposition_keeps_old_extensions() {
        let m = model(c3(), Mode::Paraconsistent, &[1, 2]);
        let grown = m.with_prop("q", PointSet::from([2])).unwrap();
        for f in ["~p", "[]<>p", "p & ~~p"] {
            assert_eq!(ext(&m, f), ext(&grown, f));
        }
    }
}
