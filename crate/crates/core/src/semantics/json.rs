use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{KripkeFrame, KripkeModel, ModelError, PointedModel};
use crate::syntax::Modality;

/// On-disk form of a model.
///
/// ```json
/// {"worlds": ["w0", "w1"], "relations": {"a": [["w0", "w1"]]},
///  "valuation": {"w1": ["p"]}, "alphabet": ["p"], "designated": "w0"}
/// ```
///
/// Unlisted worlds have an empty valuation and unlisted modalities an empty
/// relation. Without `alphabet`, the letters used in `valuation` are taken.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    pub worlds: Vec<String>,
    #[serde(default)]
    pub relations: BTreeMap<String, Vec<(String, String)>>,
    #[serde(default)]
    pub valuation: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub designated: Option<String>,
}

impl ModelDocument {
    pub fn from_model(model: &KripkeModel, designated: Option<usize>) -> Self {
        let frame = model.frame();
        let relations = frame
            .modalities()
            .map(|m| {
                let edges = frame
                    .edges(m)
                    .into_iter()
                    .map(|(u, v)| (frame.name(u).to_string(), frame.name(v).to_string()))
                    .collect();
                (m.name().to_string(), edges)
            })
            .collect();
        let valuation = frame
            .worlds()
            .iter()
            .zip(model.valuations())
            .map(|(w, cell)| (w.clone(), cell.iter().cloned().collect()))
            .collect();
        ModelDocument {
            worlds: frame.worlds().to_vec(),
            relations,
            valuation,
            alphabet: Some(model.alphabet().iter().cloned().collect()),
            designated: designated.map(|w| frame.name(w).to_string()),
        }
    }

    /// Builds the model and resolves the designated world, if any.
    pub fn into_model(self) -> Result<(KripkeModel, Option<usize>), ModelError> {
        let mut frame = KripkeFrame::new(self.worlds)?;
        for (name, edges) in &self.relations {
            let m = Modality::new(name.clone())
                .map_err(|_| ModelError::InvalidModality(name.clone()))?;
            for (u, v) in edges {
                frame.connect(&m, u, v)?;
            }
        }
        let alphabet: BTreeSet<String> = match self.alphabet {
            Some(letters) => letters.into_iter().collect(),
            None => self.valuation.values().flatten().cloned().collect(),
        };
        let mut cells = vec![BTreeSet::new(); frame.len()];
        for (w, letters) in self.valuation {
            let i = frame.world_index(&w)?;
            cells[i].extend(letters);
        }
        let model = KripkeModel::with_valuation(frame, alphabet, cells)?;
        let designated = match self.designated {
            Some(w) => Some(model.frame().world_index(&w)?),
            None => None,
        };
        Ok((model, designated))
    }
}

impl KripkeModel {
    pub fn from_json(text: &str) -> Result<(KripkeModel, Option<usize>), ModelError> {
        let doc: ModelDocument =
            serde_json::from_str(text).map_err(|e| ModelError::Json(e.to_string()))?;
        doc.into_model()
    }

    pub fn to_json(&self, designated: Option<usize>) -> serde_json::Value {
        serde_json::to_value(ModelDocument::from_model(self, designated))
            .expect("model documents always serialise")
    }
}

impl PointedModel {
    pub fn to_json(&self) -> serde_json::Value {
        self.model.to_json(Some(self.world))
    }
}

impl Serialize for KripkeModel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ModelDocument::from_model(self, None).serialize(s)
    }
}

impl Serialize for PointedModel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ModelDocument::from_model(&self.model, Some(self.world)).serialize(s)
    }
}
