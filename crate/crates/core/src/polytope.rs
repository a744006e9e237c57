//! Combinatorial simple polytopes described by vertex–facet incidences.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::facets::{for_each_subset, FacetSet, MAX_FACETS};

/// Name of a facet, unique within its polytope.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FacetLabel(String);

impl FacetLabel {
    pub fn new(name: impl Into<String>) -> Self {
        FacetLabel(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for FacetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.0, f)
    }
}

impl fmt::Display for FacetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for FacetLabel {
    fn from(s: &str) -> Self {
        FacetLabel(s.to_string())
    }
}

impl From<String> for FacetLabel {
    fn from(s: String) -> Self {
        FacetLabel(s)
    }
}

/// A simple `n`-polytope known only through its facets and the facet sets of
/// its vertices.
///
/// Each vertex is recorded as the set of the `n` facets containing it. Every
/// face is the intersection of the facets in some subset of a vertex set, so
/// the vertex list determines the whole face lattice. Vertices are kept in
/// lexicographic order of their sorted facet indices.
///
/// Validation checks necessary conditions only: simplicity, irredundancy,
/// the Euler relation and Dehn–Sommerville symmetry. Realizability as a
/// convex polytope is not decided.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplePolytope {
    dim: usize,
    facets: Vec<FacetLabel>,
    vertices: Vec<FacetSet>,
}

/// Face counts by dimension together with the derived h-vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountVectors {
    /// `f[i]` is the number of `i`-dimensional faces; `f[n] == 1`.
    pub f: Vec<u64>,
    /// Defined by `sum_i f_i (t-1)^i = sum_i h_i t^i`.
    pub h: Vec<i64>,
}

/// Outcome of [`SimplePolytope::check`]; empty `problems` means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub problems: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.problems.is_empty()
    }
}

impl SimplePolytope {
    /// Validates raw incidence data and builds a polytope from it.
    pub fn new<L: Into<FacetLabel>>(
        dim: usize,
        facets: impl IntoIterator<Item = L>,
        vertices: impl IntoIterator<Item = Vec<usize>>,
    ) -> Result<Self> {
        let facets: Vec<FacetLabel> = facets.into_iter().map(Into::into).collect();
        let vertices: Vec<Vec<usize>> = vertices.into_iter().collect();
        let report = Self::check(dim, &facets, &vertices);
        if !report.is_valid() {
            return Err(Error::InvalidPolytope(report.problems));
        }
        let vertices = vertices.into_iter().map(FacetSet::from_indices).collect();
        Ok(Self::from_sets(dim, facets, vertices))
    }

    /// Trusted constructor for internally generated data; sorts vertices.
    pub(crate) fn from_sets(dim: usize, facets: Vec<FacetLabel>, mut vertices: Vec<FacetSet>) -> Self {
        vertices.sort();
        let p = SimplePolytope { dim, facets, vertices };
        debug_assert!(p.validate().is_valid(), "{:?}", p.validate());
        p
    }

    /// Like [`SimplePolytope::from_sets`], but validates instead of trusting.
    pub(crate) fn from_sets_checked(dim: usize, facets: Vec<FacetLabel>, vertices: Vec<FacetSet>) -> Result<Self> {
        let raw: Vec<Vec<usize>> = vertices.iter().map(|v| v.to_vec()).collect();
        let report = Self::check(dim, &facets, &raw);
        if !report.is_valid() {
            return Err(Error::InvalidPolytope(report.problems));
        }
        let mut vertices = vertices;
        vertices.sort();
        Ok(SimplePolytope { dim, facets, vertices })
    }

    /// Checks raw incidence data against every necessary condition and
    /// reports all failures found.
    pub fn check(dim: usize, facets: &[FacetLabel], vertices: &[Vec<usize>]) -> ValidationReport {
        let mut problems = Vec::new();
        let m = facets.len();
        if m > MAX_FACETS {
            problems.push(format!("{m} facets exceed the supported maximum of {MAX_FACETS}"));
            return ValidationReport { problems };
        }
        if dim >= 1 && m <= dim {
            problems.push(format!("need more than {dim} facets in dimension {dim}, found {m}"));
        }
        let mut seen = BTreeSet::new();
        for f in facets {
            if !seen.insert(f) {
                problems.push(format!("duplicate facet label `{f}`"));
            }
        }
        if vertices.is_empty() {
            problems.push("no vertices".to_string());
        }
        let mut sets = Vec::with_capacity(vertices.len());
        let mut indices_ok = true;
        for (k, v) in vertices.iter().enumerate() {
            if let Some(bad) = v.iter().find(|&&i| i >= m) {
                problems.push(format!("vertex {k} refers to facet index {bad} out of range"));
                indices_ok = false;
                continue;
            }
            let s = FacetSet::from_indices(v.iter().copied());
            if s.len() != v.len() {
                problems.push(format!("vertex {k} repeats a facet"));
            }
            if s.len() != dim {
                problems.push(format!(
                    "vertex {k} lies on {} facets, expected {dim} (not simple)",
                    s.len()
                ));
            }
            sets.push(s);
        }
        if !indices_ok || !problems.is_empty() {
            return ValidationReport { problems };
        }
        let all: FacetSet = sets.iter().fold(FacetSet::EMPTY, |a, &s| a.union(s));
        for (i, f) in facets.iter().enumerate() {
            if !all.contains(i) {
                problems.push(format!("facet `{f}` contains no vertex (redundant)"));
            }
        }
        let distinct: BTreeSet<FacetSet> = sets.iter().copied().collect();
        if distinct.len() != sets.len() {
            problems.push("two vertices share the same facet set".to_string());
        }
        if !problems.is_empty() {
            return ValidationReport { problems };
        }
        let f = face_counts(dim, &sets);
        let euler: i64 = f
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum();
        if euler != 1 {
            problems.push(format!("Euler relation fails: alternating face sum is {euler}"));
        }
        let h = h_from_f(&f);
        for i in 0..=dim {
            if h[i] != h[dim - i] {
                problems.push(format!(
                    "h-vector not symmetric: h_{i} = {} but h_{} = {}",
                    h[i],
                    dim - i,
                    h[dim - i]
                ));
                break;
            }
        }
        ValidationReport { problems }
    }

    /// Re-runs [`SimplePolytope::check`] on this polytope.
    pub fn validate(&self) -> ValidationReport {
        let vertices: Vec<Vec<usize>> = self.vertices.iter().map(|v| v.to_vec()).collect();
        Self::check(self.dim, &self.facets, &vertices)
    }

    /// The 0-dimensional polytope: one vertex, no facets.
    pub fn point() -> Self {
        SimplePolytope {
            dim: 0,
            facets: Vec::new(),
            vertices: alloc::vec![FacetSet::EMPTY],
        }
    }

    /// The `n`-simplex with facets `D1..D{n+1}`; facet `Dr` is `x_r = 0` for
    /// `r <= n` and `D{n+1}` is the far face.
    pub fn simplex(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("simplex dimension must be positive".into()));
        }
        if n + 1 > MAX_FACETS {
            return Err(Error::TooManyFacets(n + 1));
        }
        let facets = (1..=n + 1).map(|r| FacetLabel(format!("D{r}"))).collect();
        let full = FacetSet::from_indices(0..=n);
        let vertices = (0..=n)
            .map(|omit| {
                let mut s = full;
                s.remove(omit);
                s
            })
            .collect();
        Ok(Self::from_sets(n, facets, vertices))
    }

    /// The `n`-cube with facets `C1^0, C1^1, ..., Cn^0, Cn^1`, where `Cr^e`
    /// is `x_r = e`.
    pub fn cube(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("cube dimension must be positive".into()));
        }
        if 2 * n > MAX_FACETS {
            return Err(Error::TooManyFacets(2 * n));
        }
        let facets = (1..=n)
            .flat_map(|r| [FacetLabel(format!("C{r}^0")), FacetLabel(format!("C{r}^1"))])
            .collect();
        let vertices = (0..1usize << n)
            .map(|bits| FacetSet::from_indices((0..n).map(|r| 2 * r + (bits >> r & 1))))
            .collect();
        Ok(Self::from_sets(n, facets, vertices))
    }

    /// Cartesian product; facets of `left` are prefixed `L.` and those of
    /// `right` are prefixed `R.`, in that order.
    pub fn product(left: &SimplePolytope, right: &SimplePolytope) -> Result<Self> {
        let m = left.num_facets() + right.num_facets();
        if m > MAX_FACETS {
            return Err(Error::TooManyFacets(m));
        }
        let facets = left
            .facets
            .iter()
            .map(|f| FacetLabel(format!("L.{}", f.0)))
            .chain(right.facets.iter().map(|f| FacetLabel(format!("R.{}", f.0))))
            .collect();
        let shift = left.num_facets();
        let mut vertices = Vec::with_capacity(left.num_vertices() * right.num_vertices());
        for &u in &left.vertices {
            for &w in &right.vertices {
                vertices.push(u.union(w.map(|i| i + shift)));
            }
        }
        Ok(Self::from_sets(left.dim + right.dim, facets, vertices))
    }

    /// Returns a copy with new facet names, given in facet order.
    pub fn with_facet_names<L: Into<FacetLabel>>(&self, names: impl IntoIterator<Item = L>) -> Result<Self> {
        let facets: Vec<FacetLabel> = names.into_iter().map(Into::into).collect();
        if facets.len() != self.facets.len() {
            return Err(Error::InvalidParameter(format!(
                "expected {} facet names, got {}",
                self.facets.len(),
                facets.len()
            )));
        }
        let distinct: BTreeSet<&FacetLabel> = facets.iter().collect();
        if distinct.len() != facets.len() {
            return Err(Error::InvalidParameter("facet names must be unique".into()));
        }
        Ok(SimplePolytope {
            dim: self.dim,
            facets,
            vertices: self.vertices.clone(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn facets(&self) -> &[FacetLabel] {
        &self.facets
    }

    pub fn facet(&self, i: usize) -> &FacetLabel {
        &self.facets[i]
    }

    pub fn facet_index(&self, name: &str) -> Option<usize> {
        self.facets.iter().position(|f| f.0 == name)
    }

    /// Resolves facet names to a set of indices.
    pub fn facet_set<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> Result<FacetSet> {
        let mut s = FacetSet::EMPTY;
        for name in names {
            let i = self.facet_index(name).ok_or_else(|| Error::UnknownFacet(name.into()))?;
            s.insert(i);
        }
        Ok(s)
    }

    pub fn facet_names(&self, set: FacetSet) -> Vec<&str> {
        set.iter().map(|i| self.facets[i].as_str()).collect()
    }

    /// Vertices as facet sets, in lexicographic order.
    pub fn vertices(&self) -> &[FacetSet] {
        &self.vertices
    }

    pub fn is_vertex(&self, set: FacetSet) -> bool {
        self.vertices.binary_search(&set).is_ok()
    }

    /// True when the facets in `set` have nonempty common intersection.
    /// The empty set names the polytope itself.
    pub fn is_face(&self, set: FacetSet) -> bool {
        self.vertices.iter().any(|&v| set.is_subset(v))
    }

    /// Vertices lying on every facet of `set`.
    pub fn vertices_of(&self, set: FacetSet) -> impl Iterator<Item = FacetSet> + '_ {
        self.vertices.iter().copied().filter(move |&v| set.is_subset(v))
    }

    /// Facets containing at least one vertex of the face `set` without
    /// containing the face itself.
    pub fn facets_meeting(&self, set: FacetSet) -> FacetSet {
        self.vertices_of(set)
            .fold(FacetSet::EMPTY, |a, v| a.union(v))
            .difference(set)
    }

    pub fn count_vectors(&self) -> CountVectors {
        let f = face_counts(self.dim, &self.vertices);
        let h = h_from_f(&f);
        CountVectors { f, h }
    }
}

impl fmt::Debug for SimplePolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplePolytope")
            .field("dim", &self.dim)
            .field("facets", &self.facets)
            .field("vertices", &self.vertices)
            .finish()
    }
}

/// Number of faces of each dimension `0..=dim`, including the polytope.
fn face_counts(dim: usize, vertices: &[FacetSet]) -> Vec<u64> {
    let mut faces = BTreeSet::new();
    for &v in vertices {
        for_each_subset(v, |s| {
            faces.insert(s);
        });
    }
    let mut f = alloc::vec![0u64; dim + 1];
    for s in faces {
        f[dim - s.len()] += 1;
    }
    f
}

/// Expands `sum_i f_i (t-1)^i` and returns its coefficients.
pub(crate) fn h_from_f(f: &[u64]) -> Vec<i64> {
    let n = f.len() - 1;
    let mut h = alloc::vec![0i64; n + 1];
    for (i, &fi) in f.iter().enumerate() {
        for (k, hk) in h.iter_mut().enumerate().take(i + 1) {
            let sign = if (i - k) % 2 == 0 { 1 } else { -1 };
            *hk += sign * binomial(i as u64, k as u64) as i64 * fi as i64;
        }
    }
    h
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
