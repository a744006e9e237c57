//! Dicharacteristics: one primitive integer vector per facet, subject to the
//! nonsingularity condition at every vertex.
//!
//! A dicharacteristic on a simple `n`-polytope with `m` facets is stored as
//! an `n x m` integer matrix whose columns are indexed by facets. The sign of
//! each column records an orientation of the corresponding circle subgroup,
//! so negating a column changes the omniorientation but not the underlying
//! characteristic map.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use crate::equiv::{for_each_equivalence, FacetBijection};
use crate::error::{Error, Result};
use crate::facets::FacetSet;
use crate::intmat::{hermite_rows, is_primitive, smith, IntMatrix};
use crate::polytope::{FacetLabel, SimplePolytope};

/// Integer columns indexed by facet, each of length `dim`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dicharacteristic {
    dim: usize,
    columns: Vec<Vec<i64>>,
}

impl Dicharacteristic {
    /// Wraps columns after checking that each has length `dim`.
    pub fn new(dim: usize, columns: Vec<Vec<i64>>) -> Result<Self> {
        if let Some(c) = columns.iter().find(|c| c.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: c.len(),
            });
        }
        Ok(Dicharacteristic { dim, columns })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn columns(&self) -> &[Vec<i64>] {
        &self.columns
    }

    pub fn column(&self, facet: usize) -> &[i64] {
        &self.columns[facet]
    }

    /// The `n x m` matrix with facet columns.
    pub fn matrix(&self) -> IntMatrix {
        let cols: Vec<&[i64]> = self.columns.iter().map(Vec::as_slice).collect();
        IntMatrix::from_columns(self.dim, &cols)
    }

    /// Matrix of the columns for the given facets, in ascending facet order.
    pub fn submatrix(&self, facets: FacetSet) -> IntMatrix {
        let cols: Vec<&[i64]> = facets.iter().map(|i| self.columns[i].as_slice()).collect();
        IntMatrix::from_columns(self.dim, &cols)
    }
}

/// An invertible integer `n x n` matrix acting on dicharacteristic columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeMap(IntMatrix);

impl LatticeMap {
    pub fn new(m: IntMatrix) -> Result<Self> {
        if !m.is_unimodular() {
            return Err(Error::NotUnimodular);
        }
        Ok(LatticeMap(m))
    }

    pub fn identity(n: usize) -> Self {
        LatticeMap(IntMatrix::identity(n))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.0.mul_vec(v)
    }

    pub fn inverse(&self) -> Self {
        LatticeMap(self.0.inverse_unimodular().expect("lattice maps are unimodular"))
    }

    pub fn compose(&self, then: &LatticeMap) -> Self {
        LatticeMap(&then.0 * &self.0)
    }
}

/// A basis of the integer kernel of a dicharacteristic, in Hermite form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KernelBasis {
    vectors: Vec<Vec<i64>>,
}

impl KernelBasis {
    pub fn vectors(&self) -> &[Vec<i64>] {
        &self.vectors
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    /// True when `v` is an integer combination of the basis.
    pub fn contains(&self, v: &[i64]) -> bool {
        let mut rows = self.vectors.clone();
        rows.push(v.to_vec());
        hermite_rows(&rows) == self.vectors
    }

    /// Lattice equality with the span of `vectors`.
    pub fn spans_same_lattice(&self, vectors: &[Vec<i64>]) -> bool {
        hermite_rows(vectors) == self.vectors
    }

    /// True when every invariant factor of the basis matrix is 1, i.e. the
    /// span is a direct summand of `Z^m`.
    pub fn is_saturated(&self) -> bool {
        if self.vectors.is_empty() {
            return true;
        }
        smith(&IntMatrix::from_rows(&self.vectors))
            .factors
            .iter()
            .all(|&d| d == 1)
    }
}

/// Validation outcome for a dicharacteristic on its base polytope.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DicharReport {
    /// Facets whose column is not primitive.
    pub non_primitive: Vec<usize>,
    /// Vertices whose column determinant is not `+-1`, with that determinant.
    pub singular_vertices: Vec<(FacetSet, i64)>,
    pub problems: Vec<String>,
}

impl DicharReport {
    pub fn is_valid(&self) -> bool {
        self.problems.is_empty()
    }
}

/// A simple polytope together with a dicharacteristic on it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CharacteristicPair {
    polytope: SimplePolytope,
    dichar: Dicharacteristic,
}

/// Witness of an equivalence of characteristic pairs: facet `F` of the
/// first pair maps to `bijection(F)`, and
/// `theta * l_a(F) == signs[F] * l_b(bijection(F))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairWitness {
    pub bijection: FacetBijection,
    pub theta: LatticeMap,
    pub signs: Vec<i8>,
}

impl CharacteristicPair {
    /// Builds a pair, rejecting it unless it validates.
    pub fn new(polytope: SimplePolytope, dichar: Dicharacteristic) -> Result<Self> {
        let report = Self::check(&polytope, &dichar)?;
        if !report.is_valid() {
            return Err(Error::InvalidDicharacteristic(report.problems));
        }
        Ok(CharacteristicPair { polytope, dichar })
    }

    /// Builds a pair from columns given in facet order.
    pub fn from_columns(polytope: SimplePolytope, columns: Vec<Vec<i64>>) -> Result<Self> {
        let d = Dicharacteristic::new(polytope.dim(), columns)?;
        Self::new(polytope, d)
    }

    pub(crate) fn new_unchecked(polytope: SimplePolytope, dichar: Dicharacteristic) -> Self {
        let p = CharacteristicPair { polytope, dichar };
        debug_assert!(p.validate().is_valid(), "{:?}", p.validate());
        p
    }

    /// The pair over a point: no facets, zero-dimensional lattice.
    pub fn point() -> Self {
        CharacteristicPair {
            polytope: SimplePolytope::point(),
            dichar: Dicharacteristic {
                dim: 0,
                columns: Vec::new(),
            },
        }
    }

    /// Checks primitivity of every column and unimodularity at every vertex.
    ///
    /// Fails outright only on shape errors; everything else is listed in the
    /// report.
    pub fn check(polytope: &SimplePolytope, dichar: &Dicharacteristic) -> Result<DicharReport> {
        if dichar.dim != polytope.dim() {
            return Err(Error::DimensionMismatch {
                expected: polytope.dim(),
                found: dichar.dim,
            });
        }
        if dichar.columns.len() != polytope.num_facets() {
            return Err(Error::DimensionMismatch {
                expected: polytope.num_facets(),
                found: dichar.columns.len(),
            });
        }
        let mut report = DicharReport::default();
        for (i, c) in dichar.columns.iter().enumerate() {
            if !is_primitive(c) {
                report.non_primitive.push(i);
                report.problems.push(format!(
                    "column of facet `{}` is not primitive: {c:?}",
                    polytope.facet(i)
                ));
            }
        }
        for &v in polytope.vertices() {
            let det = dichar.submatrix(v).det();
            if det.abs() != 1 {
                report.singular_vertices.push((v, det));
                report.problems.push(format!(
                    "columns at vertex {:?} have determinant {det}",
                    polytope.facet_names(v)
                ));
            }
        }
        Ok(report)
    }

    pub fn validate(&self) -> DicharReport {
        Self::check(&self.polytope, &self.dichar).expect("shape checked at construction")
    }

    pub fn polytope(&self) -> &SimplePolytope {
        &self.polytope
    }

    pub fn dichar(&self) -> &Dicharacteristic {
        &self.dichar
    }

    pub fn dim(&self) -> usize {
        self.polytope.dim()
    }

    pub fn column(&self, facet: usize) -> &[i64] {
        self.dichar.column(facet)
    }

    pub fn column_of(&self, name: &str) -> Option<&[i64]> {
        self.polytope.facet_index(name).map(|i| self.dichar.column(i))
    }

    /// Renames facets without touching columns or incidences.
    pub fn with_facet_names<L: Into<FacetLabel>>(&self, names: impl IntoIterator<Item = L>) -> Result<Self> {
        Ok(CharacteristicPair {
            polytope: self.polytope.with_facet_names(names)?,
            dichar: self.dichar.clone(),
        })
    }

    /// Integer kernel of the dicharacteristic matrix, in Hermite form.
    pub fn kernel_basis(&self) -> KernelBasis {
        let l = self.dichar.matrix();
        let m = l.cols();
        let s = smith(&l);
        let rank = s.rank();
        let raw: Vec<Vec<i64>> = (rank..m).map(|j| s.right.column(j)).collect();
        let basis = KernelBasis {
            vectors: hermite_rows(&raw),
        };
        debug_assert_eq!(basis.rank(), m - rank);
        basis
    }

    /// Applies `theta` to every column.
    pub fn translate(&self, theta: &LatticeMap) -> Result<Self> {
        if theta.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: theta.dim(),
            });
        }
        let columns = self.dichar.columns.iter().map(|c| theta.apply(c)).collect();
        Ok(Self::new_unchecked(
            self.polytope.clone(),
            Dicharacteristic {
                dim: self.dim(),
                columns,
            },
        ))
    }

    /// Negates the column of one facet, reversing the orientation of its
    /// normal bundle.
    pub fn flip(&self, facet: usize) -> Result<Self> {
        if facet >= self.polytope.num_facets() {
            return Err(Error::UnknownFacet(format!("#{facet}")));
        }
        let mut d = self.dichar.clone();
        for x in &mut d.columns[facet] {
            *x = -*x;
        }
        Ok(Self::new_unchecked(self.polytope.clone(), d))
    }

    pub fn flip_named(&self, name: &str) -> Result<Self> {
        let i = self
            .polytope
            .facet_index(name)
            .ok_or_else(|| Error::UnknownFacet(name.into()))?;
        self.flip(i)
    }

    /// Finds the lattice map sending the column of `ordering[r]` to the `r`th
    /// standard basis vector, and returns it with the translated pair.
    ///
    /// `ordering` must list the facets of one vertex.
    pub fn normalize_at_vertex(&self, ordering: &[usize]) -> Result<(LatticeMap, Self)> {
        let set = FacetSet::from_indices(ordering.iter().copied().filter(|&i| i < self.polytope.num_facets()));
        if set.len() != ordering.len() || ordering.len() != self.dim() || !self.polytope.is_vertex(set) {
            return Err(Error::NotAVertex(ordering.to_vec()));
        }
        let cols: Vec<&[i64]> = ordering.iter().map(|&i| self.dichar.column(i)).collect();
        let a = IntMatrix::from_columns(self.dim(), &cols);
        let theta = LatticeMap(a.inverse_unimodular().ok_or(Error::NotUnimodular)?);
        let out = self.translate(&theta)?;
        Ok((theta, out))
    }

    /// The characteristic pair of the facial submanifold over `face`.
    ///
    /// The face becomes a simple polytope whose facets are the facets of the
    /// original meeting it properly, keeping their names. Columns are the
    /// images in the quotient of `Z^n` by the span of the columns of the
    /// facets containing `face`, written in the basis produced by a Smith
    /// reduction.
    pub fn restrict_to_face(&self, face: FacetSet) -> Result<Self> {
        let p = &self.polytope;
        let k = face.len();
        if k == 0 || !p.is_face(face) {
            return Err(Error::NotAFace(face.to_vec()));
        }
        let n = self.dim();
        let kept = p.facets_meeting(face);
        let index: Vec<usize> = kept.iter().collect();
        let mut new_index = vec![usize::MAX; p.num_facets()];
        for (new, &old) in index.iter().enumerate() {
            new_index[old] = new;
        }
        let facets = index.iter().map(|&i| p.facet(i).clone()).collect();
        let vertices = p
            .vertices_of(face)
            .map(|v| v.difference(face).map(|i| new_index[i]))
            .collect();
        let polytope = SimplePolytope::from_sets(n - k, facets, vertices);

        let s = smith(&self.dichar.submatrix(face));
        if s.rank() != k || s.factors.iter().any(|&d| d != 1) {
            return Err(Error::Internal("quotient lattice is not free of the expected rank"));
        }
        let columns = index
            .iter()
            .map(|&i| s.left.mul_vec(self.dichar.column(i))[k..].to_vec())
            .collect();
        let out = CharacteristicPair {
            polytope,
            dichar: Dicharacteristic { dim: n - k, columns },
        };
        let report = out.validate();
        if !report.is_valid() {
            return Err(Error::InvalidDicharacteristic(report.problems));
        }
        Ok(out)
    }

    pub fn restrict_to_named_face(&self, names: &[&str]) -> Result<Self> {
        let set = self.polytope.facet_set(names.iter().copied())?;
        self.restrict_to_face(set)
    }

    /// Product pair: block-diagonal columns on the product polytope.
    pub fn product(&self, other: &CharacteristicPair) -> Result<Self> {
        let polytope = SimplePolytope::product(&self.polytope, &other.polytope)?;
        let (a, b) = (self.dim(), other.dim());
        let mut columns = Vec::with_capacity(polytope.num_facets());
        for c in &self.dichar.columns {
            let mut v = c.clone();
            v.resize(a + b, 0);
            columns.push(v);
        }
        for c in &other.dichar.columns {
            let mut v = vec![0; a];
            v.extend_from_slice(c);
            columns.push(v);
        }
        Ok(Self::new_unchecked(polytope, Dicharacteristic { dim: a + b, columns }))
    }
}

/// Searches for an equivalence of characteristic pairs.
///
/// Facet bijections range over combinatorial equivalences of the base
/// polytopes. Directed equivalence requires `theta * l_a(F) = l_b(phi F)`;
/// undirected equivalence allows an independent sign per facet.
pub fn pairs_equivalent(a: &CharacteristicPair, b: &CharacteristicPair, directed: bool) -> Option<PairWitness> {
    let n = a.dim();
    if n != b.dim() {
        return None;
    }
    let (pa, pb) = (a.polytope(), b.polytope());
    if n == 0 {
        return (pa.num_facets() == 0 && pb.num_facets() == 0).then(|| PairWitness {
            bijection: FacetBijection::identity(0),
            theta: LatticeMap::identity(0),
            signs: Vec::new(),
        });
    }
    let base = pa.vertices()[0];
    let base_facets: Vec<usize> = base.to_vec();
    let a_inv = a.dichar.submatrix(base).inverse_unimodular()?;
    let sign_patterns: u32 = if directed { 1 } else { 1 << n };
    let mut found = None;
    for_each_equivalence(pa, pb, |phi| {
        for pattern in 0..sign_patterns {
            let target: Vec<Vec<i64>> = base_facets
                .iter()
                .enumerate()
                .map(|(r, &f)| {
                    let neg = pattern >> r & 1 == 1;
                    b.column(phi.image(f))
                        .iter()
                        .map(|&x| if neg { -x } else { x })
                        .collect()
                })
                .collect();
            let cols: Vec<&[i64]> = target.iter().map(Vec::as_slice).collect();
            let theta = &IntMatrix::from_columns(n, &cols) * &a_inv;
            let mut signs = Vec::with_capacity(pa.num_facets());
            let ok = (0..pa.num_facets()).all(|f| {
                let w = theta.mul_vec(a.column(f));
                let t = b.column(phi.image(f));
                if w == t {
                    signs.push(1);
                    true
                } else if !directed && w.iter().zip(t).all(|(x, y)| *x == -*y) {
                    signs.push(-1);
                    true
                } else {
                    false
                }
            });
            if ok {
                found = Some(PairWitness {
                    bijection: phi.clone(),
                    theta: LatticeMap(theta),
                    signs,
                });
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    });
    found
}
