//! The face ring presentation `Q[x_F] / (I + J)` of a characteristic pair.
//!
//! `I` is the Stanley–Reisner ideal, generated by the squarefree monomials of
//! minimal non-faces, and `J` is generated by the linear forms
//! `lambda_i = sum_F l(F)_i x_F`, one per row of the dicharacteristic.
//! Each `x_F` has internal degree 1 (cohomological degree 2).
//!
//! Degree-`d` components are computed by exact linear algebra over the
//! rationals. Because `I` is a monomial ideal, the quotient by `I` alone has
//! the face-supported monomials as a basis; relations from `J` are then
//! reduced to row echelon form over those monomials, with columns ordered
//! from the largest monomial (graded lexicographic, facet order) down. The
//! non-pivot monomials form the reported basis.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::dichar::CharacteristicPair;
use crate::facets::{for_each_subset, FacetSet};
use crate::polytope::FacetLabel;

/// Exponent vector indexed by facet.
///
/// The derived order compares the exponent of the first facet first, which
/// is lexicographic order with `x_1 > x_2 > ...`; within one degree this is
/// the graded lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(m: usize) -> Self {
        Monomial(vec![0; m])
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    /// Squarefree monomial of a facet set.
    pub fn squarefree(m: usize, set: FacetSet) -> Self {
        let mut e = vec![0; m];
        for i in set.iter() {
            e[i] = 1;
        }
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn support(&self) -> FacetSet {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn times_var(&self, i: usize) -> Self {
        let mut e = self.0.clone();
        e[i] += 1;
        Monomial(e)
    }

    /// Renders as `x_{A}^2*x_{B}`, or `1` for the constant monomial.
    pub fn display(&self, facets: &[FacetLabel]) -> String {
        let mut s = String::new();
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push('*');
            }
            let _ = write!(s, "x_{{{}}}", facets[i]);
            if e > 1 {
                let _ = write!(s, "^{e}");
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }
}

/// Homogeneous polynomial as a monomial-to-coefficient map.
pub type Polynomial = BTreeMap<Monomial, BigRational>;

/// The presentation data of the face ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPresentation {
    dim: usize,
    facets: Vec<FacetLabel>,
    faces: BTreeSet<FacetSet>,
    minimal_nonfaces: Vec<FacetSet>,
    linear_forms: Vec<Vec<i64>>,
}

/// A class in one degree, written over the quotient basis of that degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedClass {
    pub degree: usize,
    pub basis: Vec<Monomial>,
    pub coefficients: Vec<BigRational>,
}

impl GradedClass {
    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Zero::is_zero)
    }
}

/// Ranks compared against the h-vector of the base polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiReport {
    pub ranks: Vec<usize>,
    pub h: Vec<i64>,
    pub vertices: usize,
    /// Degrees whose rank differs from `h`.
    pub failing_degrees: Vec<usize>,
    /// True when the ranks sum to the vertex count.
    pub total_matches: bool,
}

impl BettiReport {
    pub fn passed(&self) -> bool {
        self.failing_degrees.is_empty() && self.total_matches
    }
}

impl GradedPresentation {
    pub fn of(pair: &CharacteristicPair) -> Self {
        let p = pair.polytope();
        let mut faces = BTreeSet::new();
        for &v in p.vertices() {
            for_each_subset(v, |s| {
                faces.insert(s);
            });
        }
        let m = p.num_facets();
        let mut minimal_nonfaces = Vec::new();
        for &t in &faces {
            let start = t.iter().last().map_or(0, |i| i + 1);
            for f in start..m {
                let mut s = t;
                s.insert(f);
                if !faces.contains(&s)
                    && s.iter().all(|g| {
                        let mut sub = s;
                        sub.remove(g);
                        faces.contains(&sub)
                    })
                {
                    minimal_nonfaces.push(s);
                }
            }
        }
        minimal_nonfaces.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        let n = pair.dim();
        let linear_forms = (0..n).map(|i| (0..m).map(|f| pair.column(f)[i]).collect()).collect();
        GradedPresentation {
            dim: n,
            facets: p.facets().to_vec(),
            faces,
            minimal_nonfaces,
            linear_forms,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_vars(&self) -> usize {
        self.facets.len()
    }

    pub fn facets(&self) -> &[FacetLabel] {
        &self.facets
    }

    /// Generators of `I`, shortest first.
    pub fn minimal_nonfaces(&self) -> &[FacetSet] {
        &self.minimal_nonfaces
    }

    /// Coefficients of `lambda_1..lambda_n` over the variables.
    pub fn linear_forms(&self) -> &[Vec<i64>] {
        &self.linear_forms
    }

    /// Monomials of degree `d` whose support is a face, largest first.
    fn face_monomials(&self, d: usize) -> Vec<Monomial> {
        let m = self.num_vars();
        let mut out = Vec::new();
        for &s in &self.faces {
            let k = s.len();
            if k > d || (k == 0 && d > 0) {
                continue;
            }
            let idx = s.to_vec();
            let mut e = vec![0u32; m];
            distribute(&idx, d - k, 0, &mut e, &mut |extra| {
                let mut exps = vec![0u32; m];
                for (&i, &x) in idx.iter().zip(extra) {
                    exps[i] = 1 + x;
                }
                out.push(Monomial(exps));
            });
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    /// Row-reduced relations of degree `d`.
    pub fn component(&self, d: usize) -> QuotientComponent {
        let monomials = self.face_monomials(d);
        let index: BTreeMap<Monomial, usize> = monomials.iter().cloned().enumerate().map(|(i, mo)| (mo, i)).collect();
        let mut echelon = Echelon::default();
        if d >= 1 {
            for base in self.face_monomials(d - 1) {
                for form in &self.linear_forms {
                    let mut row: BTreeMap<usize, BigRational> = BTreeMap::new();
                    for (f, &c) in form.iter().enumerate() {
                        if c == 0 {
                            continue;
                        }
                        let mono = base.times_var(f);
                        if let Some(&col) = index.get(&mono) {
                            let e = row.entry(col).or_insert_with(BigRational::zero);
                            *e += BigRational::from_integer(BigInt::from(c));
                        }
                    }
                    row.retain(|_, v| !v.is_zero());
                    echelon.insert(row);
                }
            }
        }
        let pivots: BTreeSet<usize> = echelon.rows.keys().copied().collect();
        let basis = (0..monomials.len()).filter(|c| !pivots.contains(c)).collect();
        QuotientComponent {
            degree: d,
            monomials,
            index,
            echelon,
            basis,
        }
    }

    /// Dimension of the degree-`d` part of the quotient.
    pub fn graded_rank(&self, d: usize) -> usize {
        self.component(d).rank()
    }

    /// Number of independent linear relations in degree 1.
    pub fn linear_relation_rank(&self) -> usize {
        let c = self.component(1);
        c.monomials.len() - c.rank()
    }

    /// Degree-`d` part of `prod_F (1 + x_F)`, as a polynomial.
    pub fn total_chern_polynomial(&self, d: usize) -> Polynomial {
        self.signed_chern_polynomial(d, FacetSet::EMPTY)
    }

    /// Degree-`d` part of `prod_F (1 + s_F x_F)` with `s_F = -1` exactly on
    /// `negated`.
    pub fn signed_chern_polynomial(&self, d: usize, negated: FacetSet) -> Polynomial {
        let m = self.num_vars();
        let mut poly = Polynomial::new();
        subsets_of_size(m, d, &mut |s| {
            let sign = if s.intersection(negated).len() % 2 == 0 { 1 } else { -1 };
            poly.insert(
                Monomial::squarefree(m, s),
                BigRational::from_integer(BigInt::from(sign)),
            );
        });
        poly
    }
}

fn distribute(idx: &[usize], left: usize, pos: usize, e: &mut Vec<u32>, emit: &mut dyn FnMut(&[u32])) {
    if pos == idx.len() {
        if left == 0 {
            let extra: Vec<u32> = idx.iter().map(|&i| e[i]).collect();
            emit(&extra);
        }
        return;
    }
    for x in 0..=left {
        e[idx[pos]] = x as u32;
        distribute(idx, left - x, pos + 1, e, emit);
    }
    e[idx[pos]] = 0;
}

fn subsets_of_size(m: usize, k: usize, emit: &mut dyn FnMut(FacetSet)) {
    fn go(start: usize, m: usize, k: usize, acc: FacetSet, emit: &mut dyn FnMut(FacetSet)) {
        if k == 0 {
            emit(acc);
            return;
        }
        for i in start..m {
            if m - i < k {
                break;
            }
            let mut next = acc;
            next.insert(i);
            go(i + 1, m, k - 1, next, emit);
        }
    }
    go(0, m, k, FacetSet::EMPTY, emit)
}

/// Fully reduced row echelon form over sparse rational rows, keyed by pivot.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct Echelon {
    rows: BTreeMap<usize, BTreeMap<usize, BigRational>>,
}

impl Echelon {
    /// Eliminates all pivot columns from `v`.
    fn reduce(&self, v: &mut BTreeMap<usize, BigRational>) {
        let hits: Vec<(usize, BigRational)> = v
            .iter()
            .filter(|(c, _)| self.rows.contains_key(c))
            .map(|(&c, x)| (c, x.clone()))
            .collect();
        for (c, factor) in hits {
            for (&col, x) in &self.rows[&c] {
                let e = v.entry(col).or_insert_with(BigRational::zero);
                *e -= &factor * x;
            }
        }
        v.retain(|_, x| !x.is_zero());
    }

    fn insert(&mut self, mut v: BTreeMap<usize, BigRational>) {
        self.reduce(&mut v);
        let Some((&pivot, lead)) = v.iter().next() else { return };
        let lead = lead.clone();
        for x in v.values_mut() {
            *x /= &lead;
        }
        for row in self.rows.values_mut() {
            if let Some(factor) = row.get(&pivot).cloned() {
                for (&col, x) in &v {
                    let e = row.entry(col).or_insert_with(BigRational::zero);
                    *e -= &factor * x;
                }
                row.retain(|_, x| !x.is_zero());
            }
        }
        self.rows.insert(pivot, v);
    }
}

/// One graded piece of the quotient ring.
#[derive(Debug, Clone)]
pub struct QuotientComponent {
    degree: usize,
    monomials: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
    echelon: Echelon,
    basis: Vec<usize>,
}

impl QuotientComponent {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Standard monomials spanning this component, largest first.
    pub fn basis(&self) -> Vec<Monomial> {
        self.basis.iter().map(|&i| self.monomials[i].clone()).collect()
    }

    /// Normal form of a homogeneous polynomial of this degree.
    ///
    /// Terms whose support is not a face vanish modulo `I`.
    pub fn reduce(&self, poly: &Polynomial) -> GradedClass {
        let mut v: BTreeMap<usize, BigRational> = BTreeMap::new();
        for (mono, c) in poly {
            debug_assert_eq!(mono.degree() as usize, self.degree);
            if let Some(&col) = self.index.get(mono) {
                *v.entry(col).or_insert_with(BigRational::zero) += c;
            }
        }
        v.retain(|_, x| !x.is_zero());
        self.echelon.reduce(&mut v);
        let coefficients = self
            .basis
            .iter()
            .map(|c| v.get(c).cloned().unwrap_or_else(BigRational::zero))
            .collect();
        GradedClass {
            degree: self.degree,
            basis: self.basis(),
            coefficients,
        }
    }
}

/// Degree-`d` part of the total Chern class `prod_F (1 + x_F)`.
pub fn total_chern(pair: &CharacteristicPair, d: usize) -> GradedClass {
    let pres = GradedPresentation::of(pair);
    pres.component(d).reduce(&pres.total_chern_polynomial(d))
}

/// Compares graded ranks with the h-vector in every degree `0..=n`.
pub fn betti_check(pair: &CharacteristicPair) -> BettiReport {
    let pres = GradedPresentation::of(pair);
    let n = pair.dim();
    let ranks: Vec<usize> = (0..=n).map(|d| pres.graded_rank(d)).collect();
    let h = pair.polytope().count_vectors().h;
    let failing_degrees = (0..=n).filter(|&d| ranks[d] as i64 != h[d]).collect();
    let vertices = pair.polytope().num_vertices();
    let total_matches = ranks.iter().sum::<usize>() == vertices;
    BettiReport {
        ranks,
        h,
        vertices,
        failing_degrees,
        total_matches,
    }
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        alloc::format!("{}", q.numer())
    } else {
        alloc::format!("{}/{}", q.numer(), q.denom())
    }
}
