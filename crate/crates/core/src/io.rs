//! JSON file formats for models, relational models and maps.

use std::collections::BTreeMap;
use std::fmt::Display;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::Result;
use crate::kripke::KripkeModel;
use crate::morphisms::PointMap;
use crate::pointset::PointSet;
use crate::semantics::{Mode, TopoModel};
use crate::topology::FiniteTopology;

/// `{"points": 3, "opens": [[],[0],[0,1],[0,1,2]], "mode": "paraconsistent", "valuation": {"p": [1,2]}}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub points: usize,
    pub opens: Vec<PointSet>,
    pub mode: Mode,
    #[serde(default)]
    pub valuation: BTreeMap<String, PointSet>,
}

impl ModelFile {
    pub fn from_model(model: &TopoModel) -> Self {
        ModelFile {
            points: model.point_count(),
            opens: model.space().opens().to_vec(),
            mode: model.mode(),
            valuation: model.valuation().clone(),
        }
    }

    pub fn to_model(&self) -> Result<TopoModel> {
        let space = FiniteTopology::from_opens(self.points, self.opens.iter().copied())?;
        TopoModel::new(space, self.mode, self.valuation.clone())
    }
}

/// `{"worlds": 2, "edges": [[0,0],[1,0],[1,1]], "valuation": {"p": [1]}}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KripkeFile {
    pub worlds: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default)]
    pub valuation: BTreeMap<String, PointSet>,
}

impl KripkeFile {
    pub fn from_model(model: &KripkeModel) -> Self {
        KripkeFile {
            worlds: model.world_count(),
            edges: model.edges().into_iter().map(|(w, v)| [w, v]).collect(),
            valuation: model.valuation().clone(),
        }
    }

    pub fn to_model(&self) -> Result<KripkeModel> {
        KripkeModel::new(
            self.worlds,
            self.edges.iter().map(|&[w, v]| (w, v)),
            self.valuation.clone(),
        )
    }
}

/// `{"map": [0,0,1]}`; entry `i` is the image of point `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub map: Vec<usize>,
}

impl MapFile {
    pub fn to_map(&self, codomain: usize) -> Result<PointMap> {
        PointMap::new(codomain, self.map.clone())
    }
}

impl From<&PointMap> for MapFile {
    fn from(map: &PointMap) -> Self {
        MapFile {
            map: map.as_slice().to_vec(),
        }
    }
}

pub fn serialize_display<T: Display, S: Serializer>(value: &T, serializer: S) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_str(value)
}

pub fn model_to_json(model: &TopoModel) -> String {
    serde_json::to_string(&ModelFile::from_model(model)).expect("model files always serialize")
}

pub fn model_from_json(text: &str) -> std::result::Result<TopoModel, String> {
    let file: ModelFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
    file.to_model().map_err(|e| e.to_string())
}
