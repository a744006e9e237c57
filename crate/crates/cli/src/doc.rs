//! Self-describing JSON documents for polytopes and characteristic pairs.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use omnitoric::{CharacteristicPair, Dicharacteristic, SimplePolytope};

use crate::error::CliError;

/// `{"dim": n, "facets": [...], "vertices": [[...], ...]}`; vertex entries
/// index into `facets`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeDoc {
    pub dim: usize,
    pub facets: Vec<String>,
    pub vertices: Vec<Vec<usize>>,
}

/// A polytope document with one column per facet name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairDoc {
    pub polytope: PolytopeDoc,
    pub columns: Map<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Document {
    Polytope(PolytopeDoc),
    Pair(PairDoc),
}

impl From<&SimplePolytope> for PolytopeDoc {
    fn from(p: &SimplePolytope) -> Self {
        PolytopeDoc {
            dim: p.dim(),
            facets: p.facets().iter().map(|f| f.as_str().to_owned()).collect(),
            vertices: p.vertices().iter().map(|v| v.to_vec()).collect(),
        }
    }
}

impl From<&CharacteristicPair> for PairDoc {
    fn from(pair: &CharacteristicPair) -> Self {
        let p = pair.polytope();
        let columns = p
            .facets()
            .iter()
            .enumerate()
            .map(|(i, f)| (f.as_str().to_owned(), Value::from(pair.column(i).to_vec())))
            .collect();
        PairDoc {
            polytope: p.into(),
            columns,
        }
    }
}

impl PolytopeDoc {
    pub fn to_polytope(&self) -> Result<SimplePolytope, CliError> {
        Ok(SimplePolytope::new(
            self.dim,
            self.facets.iter().cloned(),
            self.vertices.iter().cloned(),
        )?)
    }
}

impl PairDoc {
    /// Columns in facet order, without checking validity of the pair.
    pub fn dicharacteristic(&self, p: &SimplePolytope) -> Result<Dicharacteristic, CliError> {
        if self.columns.len() != p.num_facets() {
            return Err(CliError::Input(format!(
                "{} columns given for {} facets",
                self.columns.len(),
                p.num_facets()
            )));
        }
        let mut columns = Vec::with_capacity(p.num_facets());
        for f in p.facets() {
            let raw = self
                .columns
                .get(f.as_str())
                .ok_or_else(|| CliError::Input(format!("no column for facet `{f}`")))?;
            let col: Vec<i64> =
                serde_json::from_value(raw.clone()).map_err(|e| CliError::Input(format!("column of `{f}`: {e}")))?;
            columns.push(col);
        }
        Ok(Dicharacteristic::new(p.dim(), columns)?)
    }

    pub fn to_pair(&self) -> Result<CharacteristicPair, CliError> {
        let p = self.polytope.to_polytope()?;
        let d = self.dicharacteristic(&p)?;
        Ok(CharacteristicPair::new(p, d)?)
    }
}

impl Document {
    pub fn from_polytope(p: &SimplePolytope) -> Self {
        Document::Polytope(p.into())
    }

    pub fn from_pair(p: &CharacteristicPair) -> Self {
        Document::Pair(p.into())
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("documents serialize")
    }

    /// The validated object this document describes.
    pub fn load(&self) -> Result<Loaded, CliError> {
        match self {
            Document::Polytope(d) => Ok(Loaded::Polytope(d.to_polytope()?)),
            Document::Pair(d) => Ok(Loaded::Pair(d.to_pair()?)),
        }
    }
}

/// A parsed and validated document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Loaded {
    Polytope(SimplePolytope),
    Pair(CharacteristicPair),
}

impl Loaded {
    pub fn polytope(&self) -> &SimplePolytope {
        match self {
            Loaded::Polytope(p) => p,
            Loaded::Pair(p) => p.polytope(),
        }
    }

    pub fn into_pair(self, verb: &str) -> Result<CharacteristicPair, CliError> {
        match self {
            Loaded::Pair(p) => Ok(p),
            Loaded::Polytope(_) => Err(CliError::Input(format!("`{verb}` needs a characteristic pair"))),
        }
    }

    pub fn to_document(&self) -> Document {
        match self {
            Loaded::Polytope(p) => Document::from_polytope(p),
            Loaded::Pair(p) => Document::from_pair(p),
        }
    }
}
