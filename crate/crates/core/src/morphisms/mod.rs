//! Maps between finite spaces and how they move truth between models.

mod homotopy;

use std::collections::BTreeSet;

use serde::Serialize;

pub use homotopy::{are_homotopic, enumerate_continuous_maps, homotopic_models, HomotopyFence, MAP_SPACE_CAP};

use crate::error::{Error, Result};
use crate::formula::{Formula, Fragment};
use crate::pointset::PointSet;
use crate::semantics::TopoModel;
use crate::topology::FiniteTopology;

/// A total function `0..domain → 0..codomain`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointMap {
    codomain: usize,
    image: Vec<usize>,
}

impl PointMap {
    pub fn new(codomain: usize, image: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = image.iter().find(|&&x| x >= codomain) {
            return Err(Error::PointOutOfBounds {
                point: bad,
                points: codomain,
            });
        }
        Ok(PointMap { codomain, image })
    }

    pub fn identity(n: usize) -> Self {
        PointMap {
            codomain: n,
            image: (0..n).collect(),
        }
    }

    pub fn constant(domain: usize, codomain: usize, point: usize) -> Result<Self> {
        PointMap::new(codomain, vec![point; domain])
    }

    pub fn domain_size(&self) -> usize {
        self.image.len()
    }

    pub fn codomain_size(&self) -> usize {
        self.codomain
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, point: usize) -> usize {
        self.image[point]
    }

    pub fn image_of(&self, set: PointSet) -> PointSet {
        set.iter().map(|s| self.image[s]).collect()
    }

    pub fn preimage(&self, set: PointSet) -> PointSet {
        (0..self.image.len()).filter(|&s| set.contains(self.image[s])).collect()
    }

    pub fn is_bijective(&self) -> bool {
        self.image.len() == self.codomain
            && self.image_of(PointSet::full(self.image.len())) == PointSet::full(self.codomain)
    }

    pub fn inverse(&self) -> Option<PointMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut inverse = vec![0; self.codomain];
        for (s, &t) in self.image.iter().enumerate() {
            inverse[t] = s;
        }
        Some(PointMap {
            codomain: self.image.len(),
            image: inverse,
        })
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &PointMap) -> Result<PointMap> {
        if other.domain_size() != self.codomain {
            return Err(Error::SizeMismatch {
                expected: self.codomain,
                found: other.domain_size(),
            });
        }
        PointMap::new(other.codomain, self.image.iter().map(|&t| other.image[t]).collect())
    }

    fn check_sizes(&self, from: &FiniteTopology, to: &FiniteTopology) -> Result<()> {
        if self.image.len() != from.point_count() {
            return Err(Error::SizeMismatch {
                expected: from.point_count(),
                found: self.image.len(),
            });
        }
        if self.codomain != to.point_count() {
            return Err(Error::SizeMismatch {
                expected: to.point_count(),
                found: self.codomain,
            });
        }
        Ok(())
    }

    /// Preimages of opens are open.
    pub fn is_continuous(&self, from: &FiniteTopology, to: &FiniteTopology) -> Result<bool> {
        self.check_sizes(from, to)?;
        Ok(to.opens().iter().all(|&o| from.is_open(self.preimage(o))))
    }

    /// `x ⊑ y` implies `f(x) ⊑ f(y)`.
    pub fn preserves_specialization(&self, from: &FiniteTopology, to: &FiniteTopology) -> Result<bool> {
        self.check_sizes(from, to)?;
        Ok((0..from.point_count()).all(|x| {
            from.minimal_neighborhood(x)
                .iter()
                .all(|y| to.specializes(self.image[x], self.image[y]))
        }))
    }

    /// Images of opens are open.
    pub fn is_open_map(&self, from: &FiniteTopology, to: &FiniteTopology) -> Result<bool> {
        self.check_sizes(from, to)?;
        Ok(from.opens().iter().all(|&o| to.is_open(self.image_of(o))))
    }

    /// Images of closed sets are closed.
    pub fn is_closed_map(&self, from: &FiniteTopology, to: &FiniteTopology) -> Result<bool> {
        self.check_sizes(from, to)?;
        Ok(from.closed_sets().iter().all(|&c| to.is_closed(self.image_of(c))))
    }

    /// A continuous bijection with a continuous inverse.
    pub fn is_homeomorphism(&self, from: &FiniteTopology, to: &FiniteTopology) -> Result<bool> {
        self.check_sizes(from, to)?;
        match self.inverse() {
            Some(inverse) => Ok(self.is_continuous(from, to)? && inverse.is_continuous(to, from)?),
            None => Ok(false),
        }
    }
}

/// All homeomorphisms `from → to` in lexicographic order of their image
/// vectors, at most `cap` of them.
///
/// Backtracks over injective assignments that preserve and reflect the
/// specialization preorder; each complete assignment is confirmed against
/// the open families.
pub fn enumerate_homeomorphisms(from: &FiniteTopology, to: &FiniteTopology, cap: usize) -> Vec<PointMap> {
    let n = from.point_count();
    let mut out = Vec::new();
    if n != to.point_count() || from.opens().len() != to.opens().len() || cap == 0 {
        return out;
    }
    let mut image = Vec::with_capacity(n);
    let mut used = PointSet::EMPTY;
    search_homeomorphisms(from, to, cap, &mut image, &mut used, &mut out);
    out
}

fn search_homeomorphisms(
    from: &FiniteTopology,
    to: &FiniteTopology,
    cap: usize,
    image: &mut Vec<usize>,
    used: &mut PointSet,
    out: &mut Vec<PointMap>,
) {
    let n = from.point_count();
    let s = image.len();
    if s == n {
        let map = PointMap {
            codomain: n,
            image: image.clone(),
        };
        if map.is_homeomorphism(from, to).unwrap_or(false) {
            out.push(map);
        }
        return;
    }
    for t in 0..n {
        if used.contains(t) {
            continue;
        }
        let consistent = (0..s).all(|r| {
            from.specializes(r, s) == to.specializes(image[r], t)
                && from.specializes(s, r) == to.specializes(t, image[r])
        });
        if !consistent {
            continue;
        }
        image.push(t);
        used.insert(t);
        search_homeomorphisms(from, to, cap, image, used, out);
        used.remove(t);
        image.pop();
        if out.len() >= cap {
            return;
        }
    }
}

/// The model on `target` with `V'(p) = f(V(p))`, validated against the
/// source model's mode.
pub fn pushforward_model(model: &TopoModel, map: &PointMap, target: &FiniteTopology) -> Result<TopoModel> {
    map.check_sizes(model.space(), target)?;
    let valuation = model
        .valuation()
        .iter()
        .map(|(name, &set)| (name.clone(), map.image_of(set)))
        .collect();
    TopoModel::new(target.clone(), model.mode(), valuation)
}

/// What is asserted about a formula under a map `f: M → M'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Transfer {
    /// `M,w ⊨ φ` iff `M',f(w) ⊨ φ` for every `w`.
    Biconditional,
    /// `M,w ⊨ φ` implies `M',f(w) ⊨ φ`.
    Forward,
    /// `M',f(w) ⊨ φ` implies `M,w ⊨ φ`.
    Backward,
    /// `M ⊨ φ` implies `M' ⊨ φ`.
    GlobalForward,
    /// `M' ⊨ φ` implies `M ⊨ φ`.
    GlobalBackward,
}

impl Transfer {
    /// A source point where the transfer fails, or `Some(None)` for a
    /// failing global transfer; `None` when it holds.
    pub fn failure(
        self,
        source: &TopoModel,
        target: &TopoModel,
        map: &PointMap,
        formula: &Formula,
    ) -> Result<Option<Option<usize>>> {
        let here = source.extension(formula)?;
        let there = target.extension(formula)?;
        let pulled = map.preimage(there);
        let pointwise = |bad: PointSet| Ok(bad.first().map(Some));
        match self {
            Transfer::Biconditional => pointwise(here.union(pulled).difference(here.intersection(pulled))),
            Transfer::Forward => pointwise(here.difference(pulled)),
            Transfer::Backward => pointwise(pulled.difference(here)),
            Transfer::GlobalForward => {
                Ok((here == source.space().full() && there != target.space().full()).then_some(None))
            }
            Transfer::GlobalBackward => {
                Ok((there == target.space().full() && here != source.space().full()).then_some(None))
            }
        }
    }
}

/// How a map relates the two spaces, strongest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapClass {
    Homeomorphism,
    ContinuousOpen,
    Continuous,
    Open,
    Neither,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum FormulaVerdict {
    Held { checked: Vec<Transfer> },
    Failed { transfer: Transfer, point: usize },
    Skipped { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PreservationReport {
    pub class: MapClass,
    pub verdicts: Vec<(String, FormulaVerdict)>,
}

impl PreservationReport {
    pub fn failures(&self) -> impl Iterator<Item = (&str, Transfer, usize)> {
        self.verdicts.iter().filter_map(|(f, v)| match v {
            FormulaVerdict::Failed { transfer, point } => Some((f.as_str(), *transfer, *point)),
            _ => None,
        })
    }

    pub fn all_held_or_skipped(&self) -> bool {
        self.failures().next().is_none()
    }
}

/// Checks `target = pushforward(source, map)` against each formula.
///
/// Homeomorphisms get the pointwise biconditional on every formula. A
/// continuous map is checked forward on formulas built from atoms, `&`, `|`,
/// `<>` and `~`; an open map backward on atoms, `&`, `|`, `[]` and `-`.
/// Formulas outside the applicable fragments are skipped.
pub fn check_truth_preservation(
    source: &TopoModel,
    target: &TopoModel,
    map: &PointMap,
    formulas: &[Formula],
) -> Result<PreservationReport> {
    check_pushforward(source, target, map)?;
    let (from, to) = (source.space(), target.space());
    let class = if map.is_homeomorphism(from, to)? {
        MapClass::Homeomorphism
    } else {
        match (map.is_continuous(from, to)?, map.is_open_map(from, to)?) {
            (true, true) => MapClass::ContinuousOpen,
            (true, false) => MapClass::Continuous,
            (false, true) => MapClass::Open,
            (false, false) => MapClass::Neither,
        }
    };
    let mut verdicts = Vec::with_capacity(formulas.len());
    for formula in formulas {
        let transfers: Vec<Transfer> = match class {
            MapClass::Homeomorphism => vec![Transfer::Biconditional],
            _ => {
                let mut ts = Vec::new();
                let continuous = matches!(class, MapClass::ContinuousOpen | MapClass::Continuous);
                let open = matches!(class, MapClass::ContinuousOpen | MapClass::Open);
                if continuous && formula.in_fragment(Fragment::ClosureNegation) {
                    ts.push(Transfer::Forward);
                }
                if open && formula.in_fragment(Fragment::InteriorNegation) {
                    ts.push(Transfer::Backward);
                }
                ts
            }
        };
        let verdict = if transfers.is_empty() {
            FormulaVerdict::Skipped {
                reason: format!("outside the fragment preserved by a {class:?} map"),
            }
        } else {
            let mut verdict = FormulaVerdict::Held {
                checked: transfers.clone(),
            };
            for transfer in transfers {
                if let Some(point) = transfer.failure(source, target, map, formula)? {
                    verdict = FormulaVerdict::Failed {
                        transfer,
                        point: point.unwrap_or(0),
                    };
                    break;
                }
            }
            verdict
        };
        verdicts.push((formula.to_string(), verdict));
    }
    Ok(PreservationReport { class, verdicts })
}

/// `target` must carry exactly the pushed-forward valuation of `source`.
pub fn check_pushforward(source: &TopoModel, target: &TopoModel, map: &PointMap) -> Result<()> {
    map.check_sizes(source.space(), target.space())?;
    if source.mode() != target.mode() {
        return Err(Error::PreconditionFailed("models have different modes".into()));
    }
    let names: BTreeSet<&String> = source.valuation().keys().chain(target.valuation().keys()).collect();
    for name in names {
        if target.value(name) != map.image_of(source.value(name)) {
            return Err(Error::PreconditionFailed(format!(
                "valuation of `{name}` is not the image under the map"
            )));
        }
    }
    Ok(())
}
