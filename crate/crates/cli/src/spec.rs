//! Text forms of family members and the JSON files that drive connected
//! sums, pruning and representatives.
//!
//! A factor is `cpn:N`, `cpn:N:l`, `cpn:N:lprime`, `bn:N` or `bij:I:J`;
//! factors joined by `*` form a product, e.g. `bij:1:2*bij:1:2`.

use serde::Deserialize;

use omnitoric::{CpVariant, FamilySpec, Summand};

use crate::error::CliError;

pub fn parse_family(text: &str) -> Result<FamilySpec, CliError> {
    let factors: Vec<FamilySpec> = text.split('*').map(parse_factor).collect::<Result<_, _>>()?;
    Ok(match <[FamilySpec; 1]>::try_from(factors) {
        Ok([one]) => one,
        Err(many) => FamilySpec::Product(many),
    })
}

fn parse_factor(text: &str) -> Result<FamilySpec, CliError> {
    let bad = || {
        CliError::Input(format!(
            "cannot read family `{text}`; expected cpn:N[:l|lprime], bn:N or bij:I:J"
        ))
    };
    let parts: Vec<&str> = text.trim().split(':').collect();
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
    match parts.as_slice() {
        ["cpn", n] => Ok(FamilySpec::Cpn {
            n: num(n)?,
            variant: CpVariant::L,
        }),
        ["cpn", n, v] => Ok(FamilySpec::Cpn {
            n: num(n)?,
            variant: parse_variant(v).ok_or_else(bad)?,
        }),
        ["bn", n] => Ok(FamilySpec::Bn { n: num(n)? }),
        ["bij", i, j] => Ok(FamilySpec::Bij { i: num(i)?, j: num(j)? }),
        _ => Err(bad()),
    }
}

pub fn parse_variant(text: &str) -> Option<CpVariant> {
    match text {
        "l" => Some(CpVariant::L),
        "lprime" => Some(CpVariant::LPrime),
        _ => None,
    }
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum SummandDoc {
    Short(String),
    Full { spec: String, order: Option<Vec<String>> },
}

/// Reads a representative file: a JSON array whose entries are family
/// strings or `{"spec": ..., "order": [facet names]}`.
pub fn parse_summands(text: &str) -> Result<Vec<Summand>, CliError> {
    let docs: Vec<SummandDoc> = serde_json::from_str(text)?;
    docs.into_iter()
        .map(|d| match d {
            SummandDoc::Short(spec) => Ok(Summand::new(parse_family(&spec)?)),
            SummandDoc::Full { spec, order } => Ok(Summand {
                spec: parse_family(&spec)?,
                order,
            }),
        })
        .collect()
}

/// Vertex choice for one side of a connected sum. `order` lists the
/// vertex's facets in gluing order; `vertex` alone is taken in the order
/// given.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SideChoice {
    pub vertex: Option<Vec<String>>,
    pub order: Option<Vec<String>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConnSumChoice {
    #[serde(default)]
    pub left: SideChoice,
    #[serde(default)]
    pub right: SideChoice,
}

impl SideChoice {
    /// Facet names in gluing order, if any were given.
    pub fn names(&self) -> Result<Option<&[String]>, CliError> {
        match (&self.vertex, &self.order) {
            (Some(v), Some(o)) => {
                let mut a = v.clone();
                let mut b = o.clone();
                a.sort();
                b.sort();
                if a != b {
                    return Err(CliError::Input("`order` must list the facets of `vertex`".into()));
                }
                Ok(Some(o))
            }
            (None, Some(o)) | (Some(o), None) => Ok(Some(o)),
            (None, None) => Ok(None),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PruneChoice {
    pub face: Vec<String>,
    pub name: Option<String>,
}
