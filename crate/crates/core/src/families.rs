//! Constructors for the standard omnioriented families: projective spaces,
//! bounded flag manifolds `B_n`, the manifolds `B_{i,j}`, their products,
//! and connected sums of products.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::dichar::CharacteristicPair;
use crate::error::{Error, Result};
use crate::polytope::SimplePolytope;
use crate::surgery::{default_order, dichar_connected_sum};

/// Which omniorientation of `CP^n` to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CpVariant {
    /// Last column `(-1,...,-1)`: the structure of the algebraic variety.
    L,
    /// Last column `(1,...,1)`.
    LPrime,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Cpn { n: usize, variant: CpVariant },
    Bn { n: usize },
    Bij { i: usize, j: usize },
    Product(Vec<FamilySpec>),
}

impl FamilySpec {
    /// Complex dimension of the manifold, i.e. dimension of its polytope.
    pub fn dim(&self) -> usize {
        match self {
            FamilySpec::Cpn { n, .. } | FamilySpec::Bn { n } => *n,
            FamilySpec::Bij { i, j } => (i + j).saturating_sub(1),
            FamilySpec::Product(fs) => fs.iter().map(FamilySpec::dim).sum(),
        }
    }

    pub fn product(factors: impl IntoIterator<Item = FamilySpec>) -> Self {
        FamilySpec::Product(factors.into_iter().collect())
    }
}

/// Builds the characteristic pair of a family member.
///
/// `B_{0,j}` is `CP^{j-1}` with the `l` variant, and `B_{1,1}` is `B_1`.
pub fn build(spec: &FamilySpec) -> Result<CharacteristicPair> {
    match *spec {
        FamilySpec::Cpn { n, variant } => cpn(n, variant),
        FamilySpec::Bn { n } => bn(n),
        FamilySpec::Bij { i, j } => bij(i, j),
        FamilySpec::Product(ref factors) => {
            let (first, rest) = factors
                .split_first()
                .ok_or_else(|| Error::InvalidParameter("empty product".into()))?;
            rest.iter().try_fold(build(first)?, |acc, f| acc.product(&build(f)?))
        }
    }
}

fn unit(n: usize, r: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[r] = 1;
    v
}

/// `CP^n` over the simplex: `D_r` carries `e_r`, and `D_{n+1}` carries
/// `(1,...,1)` or its negative.
pub fn cpn(n: usize, variant: CpVariant) -> Result<CharacteristicPair> {
    if n == 0 {
        return Err(Error::InvalidParameter("CP^n needs n >= 1".into()));
    }
    let sign = match variant {
        CpVariant::L => -1,
        CpVariant::LPrime => 1,
    };
    let mut columns: Vec<Vec<i64>> = (0..n).map(|r| unit(n, r)).collect();
    columns.push(vec![sign; n]);
    CharacteristicPair::from_columns(SimplePolytope::simplex(n)?, columns)
}

/// `B_n` over the cube: `C_r^0` carries `-e_r` and `C_r^1` carries
/// `-(e_1 + ... + e_r)`.
pub fn bn(n: usize) -> Result<CharacteristicPair> {
    if n == 0 {
        return Err(Error::InvalidParameter("B_n needs n >= 1".into()));
    }
    let mut columns = Vec::with_capacity(2 * n);
    for r in 0..n {
        columns.push(unit(n, r).into_iter().map(|x| -x).collect());
        columns.push((0..n).map(|k| if k <= r { -1 } else { 0 }).collect());
    }
    CharacteristicPair::from_columns(SimplePolytope::cube(n)?, columns)
}

/// `B_{i,j}` over `I^i x Delta^{j-1}`, with facets `E{r}^0, E{r}^1` for
/// `1 <= r <= i` followed by `E1..Ej`.
///
/// In coordinates `1..=i+j-1` (1-based):
/// `E_r^0 = -e_r + e_{i+r}`,
/// `E_r^1 = -(e_1+...+e_r) + (e_{i+1}+...+e_{i+r-1})`,
/// `E_s = e_{i+s}` for `s < j` and `E_j = -(e_{i+1}+...+e_{i+j-1})`.
/// When `i == j` the coordinate `i+r` of `E_i^0` does not exist. It belongs
/// to the unrotated last coordinate of `W`, and acting there is the same as
/// acting inversely on the others, so `e_{i+r}` is read as `l(E_j)`. For
/// `r = 1` the second block of `E_1^1` is empty.
pub fn bij(i: usize, j: usize) -> Result<CharacteristicPair> {
    if i > j || j == 0 {
        return Err(Error::InvalidParameter(format!(
            "B_{{i,j}} needs 0 <= i <= j and j >= 1, got ({i},{j})"
        )));
    }
    if i == 0 {
        if j < 2 {
            return Err(Error::InvalidParameter("B_{0,1} is a point".into()));
        }
        return cpn(j - 1, CpVariant::L);
    }
    let mut names: Vec<String> = Vec::new();
    for r in 1..=i {
        names.push(format!("E{r}^0"));
        names.push(format!("E{r}^1"));
    }
    if j == 1 {
        return bn(i)?.with_facet_names(names);
    }
    let n = i + j - 1;
    // Zero-based coordinate for 1-based position p.
    let at = |p: usize| p - 1;
    let mut columns = Vec::with_capacity(2 * i + j);
    for r in 1..=i {
        let mut e0 = vec![0i64; n];
        e0[at(r)] = -1;
        if i + r <= n {
            e0[at(i + r)] = 1;
        } else {
            for p in i + 1..=n {
                e0[at(p)] = -1;
            }
        }
        columns.push(e0);
        let mut e1 = vec![0i64; n];
        for p in 1..=r {
            e1[at(p)] = -1;
        }
        for p in i + 1..i + r {
            e1[at(p)] = 1;
        }
        columns.push(e1);
    }
    for s in 1..j {
        columns.push(unit(n, at(i + s)));
    }
    columns.push((1..=n).map(|p| if p > i { -1 } else { 0 }).collect());
    for s in 1..=j {
        names.push(format!("E{s}"));
    }
    let polytope = SimplePolytope::product(&SimplePolytope::cube(i)?, &SimplePolytope::simplex(j - 1)?)?
        .with_facet_names(names)?;
    CharacteristicPair::from_columns(polytope, columns)
}

/// One summand of a connected-sum representative: a family member and,
/// optionally, the ordered facets of the vertex at which it is glued.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summand {
    pub spec: FamilySpec,
    pub order: Option<Vec<String>>,
}

impl Summand {
    pub fn new(spec: FamilySpec) -> Self {
        Summand { spec, order: None }
    }
}

/// Builds every summand and folds them left to right by connected sum.
///
/// The first summand's `order` (or its least vertex) is the left gluing
/// vertex of the first sum; each later summand is glued at its own `order`
/// (or least vertex) to the least vertex of the running sum.
pub fn representative(summands: &[Summand]) -> Result<CharacteristicPair> {
    let (first, rest) = summands
        .split_first()
        .ok_or_else(|| Error::InvalidParameter("representative needs at least one summand".into()))?;
    let n = first.spec.dim();
    if let Some(bad) = rest.iter().find(|s| s.spec.dim() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad.spec.dim(),
        });
    }
    let mut acc = build(&first.spec)?;
    if rest.is_empty() {
        return Ok(acc);
    }
    if n <= 1 {
        return Err(Error::DegenerateDimOne);
    }
    let mut left_order = resolve_order(&acc, first.order.as_deref())?;
    for s in rest {
        let next = build(&s.spec)?;
        let right_order = resolve_order(&next, s.order.as_deref())?;
        acc = dichar_connected_sum(&acc, &left_order, &next, &right_order)?;
        left_order = default_order(acc.polytope());
    }
    Ok(acc)
}

fn resolve_order(pair: &CharacteristicPair, names: Option<&[String]>) -> Result<Vec<usize>> {
    match names {
        None => Ok(default_order(pair.polytope())),
        Some(names) => names
            .iter()
            .map(|name| {
                pair.polytope()
                    .facet_index(name)
                    .ok_or_else(|| Error::UnknownFacet(name.clone()))
            })
            .collect(),
    }
}
