//! Relational models for the paraconsistent language and the translations
//! between them and finite spaces.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::pointset::PointSet;
use crate::semantics::{Mode, TopoModel, Valuation};
use crate::topology::{FiniteTopology, Preorder};

/// Worlds `0..n`, an accessibility relation and a valuation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KripkeModel {
    successors: Vec<PointSet>,
    valuation: Valuation,
}

impl KripkeModel {
    pub fn new(worlds: usize, edges: impl IntoIterator<Item = (usize, usize)>, valuation: Valuation) -> Result<Self> {
        if worlds > crate::pointset::MAX_POINTS {
            return Err(Error::TooManyPoints {
                points: worlds,
                max: crate::pointset::MAX_POINTS,
            });
        }
        let mut successors = vec![PointSet::EMPTY; worlds];
        for (w, v) in edges {
            for x in [w, v] {
                if x >= worlds {
                    return Err(Error::PointOutOfBounds {
                        point: x,
                        points: worlds,
                    });
                }
            }
            successors[w].insert(v);
        }
        for &set in valuation.values() {
            if !set.within(worlds) {
                return Err(Error::OutOfBounds { set, points: worlds });
            }
        }
        Ok(KripkeModel { successors, valuation })
    }

    pub fn world_count(&self) -> usize {
        self.successors.len()
    }

    pub fn successors(&self, w: usize) -> PointSet {
        self.successors[w]
    }

    pub fn valuation(&self) -> &Valuation {
        &self.valuation
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.successors
            .iter()
            .enumerate()
            .flat_map(|(w, row)| row.iter().map(move |v| (w, v)))
            .collect()
    }

    pub fn is_preorder(&self) -> bool {
        let n = self.world_count();
        (0..n).all(|w| {
            self.successors[w].contains(w)
                && self.successors[w]
                    .iter()
                    .all(|v| self.successors[v].is_subset(self.successors[w]))
        })
    }

    /// Worlds where `formula` holds.
    pub fn extension(&self, formula: &Formula) -> Result<PointSet> {
        if let Some(negation) = formula.foreign_negation(Mode::Paraconsistent) {
            return Err(Error::ModeMismatch {
                mode: Mode::Paraconsistent,
                negation,
            });
        }
        Ok(self.eval(formula))
    }

    fn eval(&self, formula: &Formula) -> PointSet {
        let n = self.world_count();
        let all = |inner: PointSet| {
            (0..n)
                .filter(|&w| self.successors[w].is_subset(inner))
                .collect::<PointSet>()
        };
        let some = |inner: PointSet| {
            (0..n)
                .filter(|&w| !self.successors[w].is_disjoint(inner))
                .collect::<PointSet>()
        };
        match formula {
            Formula::Prop(p) => self.valuation.get(p).copied().unwrap_or_default(),
            Formula::Top => PointSet::full(n),
            Formula::Bot => PointSet::EMPTY,
            Formula::And(l, r) => self.eval(l).intersection(self.eval(r)),
            Formula::Or(l, r) => self.eval(l).union(self.eval(r)),
            Formula::Box(f) => all(self.eval(f)),
            Formula::Diamond(f) => some(self.eval(f)),
            Formula::ParaNeg(f) => some(self.eval(f).complement(n)),
            Formula::ClassNeg(_) | Formula::CompNeg(_) => unreachable!("rejected before evaluation"),
        }
    }
}

/// Truth at world `w`.
pub fn eval_kripke(k: &KripkeModel, w: usize, formula: &Formula) -> Result<bool> {
    if w >= k.world_count() {
        return Err(Error::PointOutOfBounds {
            point: w,
            points: k.world_count(),
        });
    }
    Ok(k.extension(formula)?.contains(w))
}

/// `w R v` iff `w ∈ Clo({v})`; the valuation is carried over.
pub fn topo_to_kripke(m: &TopoModel) -> Result<KripkeModel> {
    m.require_mode(Mode::Paraconsistent)?;
    let space = m.space();
    let n = space.point_count();
    let edges = (0..n).flat_map(|v| space.closure(PointSet::singleton(v)).iter().map(move |w| (w, v)));
    KripkeModel::new(n, edges.collect::<Vec<_>>(), m.valuation().clone())
}

/// The result of reading a relational model as a space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Translated {
    pub model: TopoModel,
    /// Set when the relation had to be closed reflexively and transitively.
    pub notice: Option<String>,
}

/// Closed sets are the subsets closed under `R`-predecessors: `v ∈ A` and
/// `w R v` imply `w ∈ A`. A relation that is not a preorder is replaced by
/// its reflexive-transitive closure first.
pub fn kripke_to_topo(k: &KripkeModel) -> Result<Translated> {
    let n = k.world_count();
    let preorder = Preorder::closure_of(n, k.edges())?;
    let notice = (!k.is_preorder()).then(|| {
        let added = preorder.pairs().count() - k.edges().len();
        format!("relation is not a preorder; {added} pairs added by reflexive-transitive closure")
    });
    // w R v makes v belong to every open containing w.
    let space = FiniteTopology::from_preorder(&preorder);
    for (name, &set) in k.valuation() {
        if !space.is_closed(set) {
            return Err(Error::ValuationNotClosed(name.clone()));
        }
    }
    let model = TopoModel::new(space, Mode::Paraconsistent, k.valuation().clone())?;
    Ok(Translated { model, notice })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TranslationRow {
    pub formula: String,
    /// Worlds true topologically but false relationally.
    pub forward_failures: PointSet,
    /// Worlds true relationally but false topologically.
    pub backward_failures: PointSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TranslationReport {
    pub rows: Vec<TranslationRow>,
    /// Topological truth implies relational truth everywhere.
    pub forward_holds: bool,
    /// Both directions hold everywhere.
    pub biconditional_holds: bool,
}

/// Compares topological and relational truth of each formula at each world.
pub fn check_translation(m: &TopoModel, formulas: &[Formula]) -> Result<TranslationReport> {
    let k = topo_to_kripke(m)?;
    let mut rows = Vec::with_capacity(formulas.len());
    for formula in formulas {
        let topo = m.extension(formula)?;
        let rel = k.extension(formula)?;
        rows.push(TranslationRow {
            formula: formula.to_string(),
            forward_failures: topo.difference(rel),
            backward_failures: rel.difference(topo),
        });
    }
    let forward_holds = rows.iter().all(|r| r.forward_failures.is_empty());
    let biconditional_holds = forward_holds && rows.iter().all(|r| r.backward_failures.is_empty());
    Ok(TranslationReport {
        rows,
        forward_holds,
        biconditional_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{enumerate_formulas, parse};

    fn val(p: &[usize]) -> Valuation {
        [("p".to_string(), PointSet::from(p))].into()
    }

    fn f(text: &str) -> Formula {
        parse(text).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        let one = KripkeModel::new(1, [(0, 0)], val(&[0])).unwrap();
        assert!(!eval_kripke(&one, 0, &f("~p")).unwrap());
        let two = KripkeModel::new(2, [(0, 1)], val(&[])).unwrap();
        assert!(eval_kripke(&two, 0, &f("~p")).unwrap());
        assert!(eval_kripke(&two, 1, &f("[]p")).unwrap());
        assert!(!eval_kripke(&two, 1, &f("<>p")).unwrap());
        assert!(matches!(
            eval_kripke(&two, 0, &f("!p")),
            Err(Error::ModeMismatch { negation: '!', .. })
        ));
        assert!(matches!(
            eval_kripke(&two, 0, &f("-p")),
            Err(Error::ModeMismatch { negation: '-', .. })
        ));
        assert!(matches!(
            eval_kripke(&two, 2, &f("p")),
            Err(Error::PointOutOfBounds { .. })
        ));
    }

    #[test]
    fn negation_is_not_box() {
        let k = KripkeModel::new(3, [(0, 1), (1, 1), (1, 2), (2, 0)], val(&[1])).unwrap();
        for text in ["p", "~p", "[]p", "<>~p & p"] {
            let neg = k.extension(&Formula::para_neg(f(text))).unwrap();
            let boxed = k.extension(&Formula::boxed(f(text))).unwrap();
            assert_eq!(neg, boxed.complement(3));
        }
    }

    #[test]
    fn translation_to_relations() {
        let c3 = FiniteTopology::chain(3);
        let m = TopoModel::new(c3.clone(), Mode::Paraconsistent, val(&[1, 2])).unwrap();
        let k = topo_to_kripke(&m).unwrap();
        assert_eq!(k.edges(), vec![(0, 0), (1, 0), (1, 1), (2, 0), (2, 1), (2, 2)]);
        // Oracle: w R v iff w lies in the closure of the singleton.
        for w in 0..3 {
            for v in 0..3 {
                assert_eq!(
                    k.successors(w).contains(v),
                    c3.closure(PointSet::singleton(v)).contains(w)
                );
            }
            assert_eq!(k.successors(w), c3.minimal_neighborhood(w));
        }
        let d = TopoModel::new(FiniteTopology::discrete(3), Mode::Paraconsistent, val(&[])).unwrap();
        assert_eq!(topo_to_kripke(&d).unwrap().edges(), vec![(0, 0), (1, 1), (2, 2)]);
        let i = TopoModel::new(FiniteTopology::indiscrete(2), Mode::Paraconsistent, val(&[])).unwrap();
        assert_eq!(topo_to_kripke(&i).unwrap().edges().len(), 4);
        let pc = TopoModel::new(c3, Mode::Paracomplete, val(&[0])).unwrap();
        assert!(matches!(topo_to_kripke(&pc), Err(Error::WrongMode { .. })));
    }

    #[test]
    fn translation_to_spaces() {
        let id = KripkeModel::new(2, [(0, 0), (1, 1)], val(&[0])).unwrap();
        let t = kripke_to_topo(&id).unwrap();
        assert!(t.model.space().is_discrete());
        assert_eq!(t.notice, None);

        // 1 R 0: a closed set holding 0 must hold its predecessor 1.
        let chain = KripkeModel::new(2, [(0, 0), (1, 0), (1, 1)], val(&[1])).unwrap();
        let t = kripke_to_topo(&chain).unwrap();
        assert_eq!(
            t.model.space().closed_sets(),
            vec![PointSet::EMPTY, PointSet::from([1]), PointSet::from([0, 1])]
        );
        let bad = KripkeModel::new(2, [(0, 0), (1, 0), (1, 1)], val(&[0])).unwrap();
        assert_eq!(kripke_to_topo(&bad), Err(Error::ValuationNotClosed("p".into())));

        let raw = KripkeModel::new(3, [(0, 1), (1, 2)], val(&[])).unwrap();
        let t = kripke_to_topo(&raw).unwrap();
        assert!(t.notice.is_some());
        assert_eq!(t.model.space().minimal_neighborhood(0), PointSet::from([0, 1, 2]));
    }

    #[test]
    fn round_trip_keeps_closed_sets() {
        let spaces = [
            FiniteTopology::chain(3),
            FiniteTopology::chain(3).dual(),
            FiniteTopology::discrete(3),
            FiniteTopology::indiscrete(3),
            FiniteTopology::chain(2)
                .disjoint_union(&FiniteTopology::discrete(1))
                .unwrap(),
        ];
        for space in spaces {
            let m = TopoModel::new(space.clone(), Mode::Paraconsistent, val(&[])).unwrap();
            let back = kripke_to_topo(&topo_to_kripke(&m).unwrap()).unwrap();
            assert_eq!(back.model.space().closed_sets(), space.closed_sets());
            assert_eq!(back.notice, None);
        }
    }

    #[test]
    fn check_translation_examples() {
        let m = TopoModel::new(FiniteTopology::chain(3), Mode::Paraconsistent, val(&[1, 2])).unwrap();
        let report = check_translation(&m, &[f("~p"), f("[]p"), f("p")]).unwrap();
        assert!(report.forward_holds && report.biconditional_holds);
        let formulas = enumerate_formulas(&["p".into()], 3, 300, Mode::Paraconsistent);
        assert!(check_translation(&m, &formulas).unwrap().biconditional_holds);
    }
}
