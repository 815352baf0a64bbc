use std::collections::{HashMap, VecDeque};

use super::{pushforward_model, PointMap};
use crate::error::{Error, Result};
use crate::semantics::TopoModel;
use crate::topology::FiniteTopology;

/// Default bound on the number of continuous maps searched.
pub const MAP_SPACE_CAP: usize = 100_000;

/// All continuous maps `from → to` in lexicographic order of their image
/// vectors. Fails once more than `cap` exist.
pub fn enumerate_continuous_maps(from: &FiniteTopology, to: &FiniteTopology, cap: usize) -> Result<Vec<PointMap>> {
    let n = from.point_count();
    let mut out = Vec::new();
    let mut image = Vec::with_capacity(n);
    extend_continuous(from, to, cap, &mut image, &mut out)?;
    Ok(out)
}

fn extend_continuous(
    from: &FiniteTopology,
    to: &FiniteTopology,
    cap: usize,
    image: &mut Vec<usize>,
    out: &mut Vec<PointMap>,
) -> Result<()> {
    let s = image.len();
    if s == from.point_count() {
        if out.len() >= cap {
            return Err(Error::MapSpaceOverflow { cap });
        }
        out.push(PointMap::new(to.point_count(), image.clone())?);
        return Ok(());
    }
    for t in 0..to.point_count() {
        let monotone = (0..s).all(|r| {
            (!from.specializes(r, s) || to.specializes(image[r], t))
                && (!from.specializes(s, r) || to.specializes(t, image[r]))
        });
        if monotone {
            image.push(t);
            extend_continuous(from, to, cap, image, out)?;
            image.pop();
        }
    }
    Ok(())
}

/// A finite sequence of continuous maps in which each neighbouring pair is
/// comparable: `f(s) ⊑ g(s)` for every `s`, or `g(s) ⊑ f(s)` for every `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyFence {
    maps: Vec<PointMap>,
}

impl HomotopyFence {
    pub fn new(maps: Vec<PointMap>, from: &FiniteTopology, to: &FiniteTopology) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::InvalidFence("a fence needs at least one map".into()));
        }
        for (i, map) in maps.iter().enumerate() {
            if !map.is_continuous(from, to)? {
                return Err(Error::InvalidFence(format!("map {i} is not continuous")));
            }
        }
        for (i, pair) in maps.windows(2).enumerate() {
            if !comparable(&pair[0], &pair[1], to) {
                return Err(Error::InvalidFence(format!(
                    "maps {i} and {} are not comparable",
                    i + 1
                )));
            }
        }
        Ok(HomotopyFence { maps })
    }

    pub fn maps(&self) -> &[PointMap] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn first(&self) -> &PointMap {
        &self.maps[0]
    }

    pub fn last(&self) -> &PointMap {
        &self.maps[self.maps.len() - 1]
    }

    pub fn reversed(&self) -> HomotopyFence {
        HomotopyFence {
            maps: self.maps.iter().rev().cloned().collect(),
        }
    }

    /// Joins two fences that share an endpoint.
    pub fn concat(&self, other: &HomotopyFence) -> Result<HomotopyFence> {
        if self.last() != other.first() {
            return Err(Error::InvalidFence("fences do not share an endpoint".into()));
        }
        let mut maps = self.maps.clone();
        maps.extend(other.maps[1..].iter().cloned());
        Ok(HomotopyFence { maps })
    }
}

fn comparable(f: &PointMap, g: &PointMap, to: &FiniteTopology) -> bool {
    let n = f.domain_size();
    (0..n).all(|s| to.specializes(f.apply(s), g.apply(s))) || (0..n).all(|s| to.specializes(g.apply(s), f.apply(s)))
}

/// A shortest fence from `f` to `g`, or `None` when they lie in different
/// components of the map space.
pub fn are_homotopic(
    f: &PointMap,
    g: &PointMap,
    from: &FiniteTopology,
    to: &FiniteTopology,
    cap: usize,
) -> Result<Option<HomotopyFence>> {
    for (name, map) in [("first", f), ("second", g)] {
        if !map.is_continuous(from, to)? {
            return Err(Error::PreconditionFailed(format!("the {name} map is not continuous")));
        }
    }
    if f == g {
        return Ok(Some(HomotopyFence { maps: vec![f.clone()] }));
    }
    let maps = enumerate_continuous_maps(from, to, cap)?;
    let position: HashMap<&PointMap, usize> = maps.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let start = position[f];
    let goal = position[g];
    let mut parent: Vec<Option<usize>> = vec![None; maps.len()];
    let mut seen = vec![false; maps.len()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(i) = queue.pop_front() {
        if i == goal {
            let mut path = vec![maps[goal].clone()];
            let mut at = goal;
            while let Some(p) = parent[at] {
                path.push(maps[p].clone());
                at = p;
            }
            path.reverse();
            return Ok(Some(HomotopyFence { maps: path }));
        }
        for j in 0..maps.len() {
            if !seen[j] && comparable(&maps[i], &maps[j], to) {
                seen[j] = true;
                parent[j] = Some(i);
                queue.push_back(j);
            }
        }
    }
    Ok(None)
}

/// The models `M_t` obtained by pushing `model` forward along each map of a
/// fence of self-homeomorphisms.
pub fn homotopic_models(model: &TopoModel, fence: &HomotopyFence) -> Result<Vec<TopoModel>> {
    let space = model.space();
    for (index, map) in fence.maps.iter().enumerate() {
        if map.domain_size() != space.point_count() || !map.is_homeomorphism(space, space)? {
            return Err(Error::NotHomeomorphism { index });
        }
    }
    fence.maps.iter().map(|f| pushforward_model(model, f, space)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointset::PointSet;
    use crate::semantics::Mode;

    fn map(codomain: usize, image: &[usize]) -> PointMap {
        PointMap::new(codomain, image.to_vec()).unwrap()
    }

    // Oracle: every function, filtered by the open-set definition.
    fn brute_continuous(from: &FiniteTopology, to: &FiniteTopology) -> Vec<PointMap> {
        let (n, m) = (from.point_count(), to.point_count());
        let mut out = Vec::new();
        for code in 0..m.pow(n as u32) {
            let image: Vec<usize> = (0..n).map(|i| code / m.pow(i as u32) % m).collect();
            let f = map(m, &image);
            if f.is_continuous(from, to).unwrap() {
                out.push(f);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn continuous_enumeration_matches_brute_force() {
        let spaces = [
            FiniteTopology::chain(3),
            FiniteTopology::discrete(3),
            FiniteTopology::indiscrete(2),
            FiniteTopology::chain(2)
                .disjoint_union(&FiniteTopology::indiscrete(1))
                .unwrap(),
        ];
        for from in &spaces {
            for to in &spaces {
                assert_eq!(
                    enumerate_continuous_maps(from, to, 10_000).unwrap(),
                    brute_continuous(from, to)
                );
            }
        }
        let d = FiniteTopology::discrete(3);
        assert_eq!(
            enumerate_continuous_maps(&d, &d, 26),
            Err(Error::MapSpaceOverflow { cap: 26 })
        );
        assert_eq!(enumerate_continuous_maps(&d, &d, 27).unwrap().len(), 27);
    }

    #[test]
    fn fence_validation() {
        let c = FiniteTopology::chain(3);
        let id = PointMap::identity(3);
        let k2 = map(3, &[2, 2, 2]);
        assert!(HomotopyFence::new(vec![id.clone(), k2.clone()], &c, &c).is_ok());
        let d = FiniteTopology::discrete(3);
        let swap01 = map(3, &[1, 0, 2]);
        let swap12 = map(3, &[0, 2, 1]);
        assert!(matches!(
            HomotopyFence::new(vec![swap01, swap12], &d, &d),
            Err(Error::InvalidFence(_))
        ));
        assert!(matches!(
            HomotopyFence::new(vec![], &d, &d),
            Err(Error::InvalidFence(_))
        ));
        let flip = map(3, &[2, 1, 0]);
        assert!(matches!(
            HomotopyFence::new(vec![flip], &c, &c),
            Err(Error::InvalidFence(_))
        ));
    }

    #[test]
    fn homotopy_examples() {
        let c = FiniteTopology::chain(3);
        let id = PointMap::identity(3);
        let k2 = map(3, &[2, 2, 2]);
        let fence = are_homotopic(&id, &k2, &c, &c, MAP_SPACE_CAP).unwrap().unwrap();
        assert_eq!(fence.len(), 2);

        let d = FiniteTopology::discrete(2);
        let k0 = map(2, &[0, 0]);
        let k1 = map(2, &[1, 1]);
        assert_eq!(are_homotopic(&k0, &k1, &d, &d, MAP_SPACE_CAP).unwrap(), None);
        assert_eq!(
            are_homotopic(&k0, &k0, &d, &d, MAP_SPACE_CAP).unwrap().unwrap().len(),
            1
        );
    }

    #[test]
    fn homotopy_is_an_equivalence() {
        let from = FiniteTopology::chain(2);
        let to = FiniteTopology::chain(3);
        let maps = enumerate_continuous_maps(&from, &to, 100).unwrap();
        for f in &maps {
            for g in &maps {
                let fg = are_homotopic(f, g, &from, &to, 100).unwrap();
                let gf = are_homotopic(g, f, &from, &to, 100).unwrap();
                assert_eq!(fg.is_some(), gf.is_some());
                if let Some(fence) = fg {
                    assert_eq!(fence.first(), f);
                    assert_eq!(fence.last(), g);
                    assert!(HomotopyFence::new(fence.maps().to_vec(), &from, &to).is_ok());
                    assert!(HomotopyFence::new(fence.reversed().maps().to_vec(), &from, &to).is_ok());
                    for h in &maps {
                        if let Some(next) = are_homotopic(g, h, &from, &to, 100).unwrap() {
                            let joined = fence.concat(&next).unwrap();
                            assert!(HomotopyFence::new(joined.maps().to_vec(), &from, &to).is_ok());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn homotopic_models_examples() {
        let ind = FiniteTopology::indiscrete(3);
        let m = TopoModel::new(
            ind.clone(),
            Mode::Paraconsistent,
            [("p".into(), PointSet::EMPTY)].into(),
        )
        .unwrap();
        let fence = HomotopyFence::new(
            vec![PointMap::identity(3), map(3, &[1, 2, 0]), map(3, &[0, 2, 1])],
            &ind,
            &ind,
        )
        .unwrap();
        let models = homotopic_models(&m, &fence).unwrap();
        assert_eq!(models.len(), 3);

        let c = FiniteTopology::chain(3);
        let cm = TopoModel::new(
            c.clone(),
            Mode::Paraconsistent,
            [("p".into(), PointSet::from([1, 2]))].into(),
        )
        .unwrap();
        let fence = HomotopyFence::new(vec![PointMap::identity(3), map(3, &[2, 2, 2])], &c, &c).unwrap();
        assert_eq!(homotopic_models(&cm, &fence), Err(Error::NotHomeomorphism { index: 1 }));
    }
}
