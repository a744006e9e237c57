//! Connected sums at vertices, face truncation ("pruning"), and the pruning
//! sequences that produce products of simplices from a simplex.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::dichar::{CharacteristicPair, Dicharacteristic};
use crate::error::{Error, Result};
use crate::facets::FacetSet;
use crate::polytope::{FacetLabel, SimplePolytope};

/// Choice data for a connected sum: a vertex of each polytope together with
/// an ordering of its facets. The `r`th facet on each side is glued into the
/// new facet `G{r}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnSumSpec {
    pub left: SimplePolytope,
    pub left_order: Vec<usize>,
    pub right: SimplePolytope,
    pub right_order: Vec<usize>,
}

impl ConnSumSpec {
    /// Uses the least vertex of each side, facets in ascending order.
    pub fn with_defaults(left: SimplePolytope, right: SimplePolytope) -> Self {
        let left_order = default_order(&left);
        let right_order = default_order(&right);
        ConnSumSpec {
            left,
            left_order,
            right,
            right_order,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.left.dim();
        if n != self.right.dim() {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.right.dim(),
            });
        }
        if n <= 1 {
            return Err(Error::DegenerateDimOne);
        }
        check_order(&self.left, &self.left_order)?;
        check_order(&self.right, &self.right_order).map(|_| ())
    }
}

/// Facets of the least vertex, ascending.
pub fn default_order(p: &SimplePolytope) -> Vec<usize> {
    p.vertices()[0].to_vec()
}

fn check_order(p: &SimplePolytope, order: &[usize]) -> Result<FacetSet> {
    let set = FacetSet::from_indices(order.iter().copied().filter(|&i| i < p.num_facets()));
    if set.len() != order.len() || order.len() != p.dim() || !p.is_vertex(set) {
        return Err(Error::NotAVertex(order.to_vec()));
    }
    Ok(set)
}

/// Index maps taking each side's facets into the connected sum.
struct Gluing {
    left: Vec<usize>,
    right: Vec<usize>,
    facets: Vec<FacetLabel>,
    left_vertex: FacetSet,
    right_vertex: FacetSet,
}

fn gluing(spec: &ConnSumSpec) -> Result<Gluing> {
    spec.validate()?;
    let n = spec.left.dim();
    let v = check_order(&spec.left, &spec.left_order)?;
    let w = check_order(&spec.right, &spec.right_order)?;
    let mut facets = Vec::new();
    let mut left = vec![usize::MAX; spec.left.num_facets()];
    let mut right = vec![usize::MAX; spec.right.num_facets()];
    for (i, f) in spec.left.facets().iter().enumerate() {
        if !v.contains(i) {
            left[i] = facets.len();
            facets.push(FacetLabel::new(format!("L.{f}")));
        }
    }
    let glued = facets.len();
    for r in 0..n {
        left[spec.left_order[r]] = glued + r;
        right[spec.right_order[r]] = glued + r;
        facets.push(FacetLabel::new(format!("G{}", r + 1)));
    }
    for (i, f) in spec.right.facets().iter().enumerate() {
        if !w.contains(i) {
            right[i] = facets.len();
            facets.push(FacetLabel::new(format!("R.{f}")));
        }
    }
    Ok(Gluing {
        left,
        right,
        facets,
        left_vertex: v,
        right_vertex: w,
    })
}

/// Connected sum of two simple polytopes at chosen vertices.
///
/// Facets are the left facets avoiding the chosen vertex (prefixed `L.`),
/// the glued facets `G1..Gn`, then the right facets avoiding theirs
/// (prefixed `R.`). Vertices are those of both sides except the two chosen
/// ones, with membership in a glued facet inherited from either side.
pub fn connected_sum(spec: &ConnSumSpec) -> Result<SimplePolytope> {
    let g = gluing(spec)?;
    let mut vertices = Vec::with_capacity(spec.left.num_vertices() + spec.right.num_vertices() - 2);
    for &u in spec.left.vertices() {
        if u != g.left_vertex {
            vertices.push(u.map(|i| g.left[i]));
        }
    }
    for &u in spec.right.vertices() {
        if u != g.right_vertex {
            vertices.push(u.map(|i| g.right[i]));
        }
    }
    SimplePolytope::from_sets_checked(spec.left.dim(), g.facets, vertices)
}

/// Connected sum of characteristic pairs.
///
/// Each side is first translated so that the columns of its ordered vertex
/// facets become the standard basis; glued facet `G{r}` then carries `e_r`
/// and every other facet keeps its translated column.
pub fn dichar_connected_sum(
    left: &CharacteristicPair,
    left_order: &[usize],
    right: &CharacteristicPair,
    right_order: &[usize],
) -> Result<CharacteristicPair> {
    let spec = ConnSumSpec {
        left: left.polytope().clone(),
        left_order: left_order.to_vec(),
        right: right.polytope().clone(),
        right_order: right_order.to_vec(),
    };
    let polytope = connected_sum(&spec)?;
    let g = gluing(&spec)?;
    let n = spec.left.dim();
    let (_, l) = left.normalize_at_vertex(left_order)?;
    let (_, r) = right.normalize_at_vertex(right_order)?;
    let mut columns = vec![Vec::new(); polytope.num_facets()];
    for (i, &j) in g.left.iter().enumerate() {
        columns[j] = l.column(i).to_vec();
    }
    for (i, &j) in g.right.iter().enumerate() {
        if !g.right_vertex.contains(i) {
            columns[j] = r.column(i).to_vec();
        }
    }
    // Normalized columns on the glued facets already equal e_r on both sides.
    debug_assert!((0..n).all(|k| {
        let mut e = vec![0; n];
        e[k] = 1;
        columns[g.left[left_order[k]]] == e && r.column(right_order[k]) == e.as_slice()
    }));
    CharacteristicPair::new(polytope, Dicharacteristic::new(n, columns)?)
}

/// A face to truncate, with an optional name for the new facet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PruneSpec {
    pub polytope: SimplePolytope,
    pub face: FacetSet,
    pub new_facet: Option<String>,
}

/// Smallest `P{k}` not already naming a facet.
pub fn fresh_facet_name(p: &SimplePolytope) -> String {
    (1..)
        .map(|k| format!("P{k}"))
        .find(|name| p.facet_index(name).is_none())
        .expect("unbounded search")
}

/// Truncates a face of dimension at most `n - 2`.
///
/// The new facet is appended last. Vertices off the face survive unchanged;
/// each vertex `v` of the face is replaced by one vertex per facet `f`
/// containing the face, lying on `(facets(v) - f) + new`.
pub fn prune(spec: &PruneSpec) -> Result<SimplePolytope> {
    let p = &spec.polytope;
    let g = spec.face;
    if g.len() < 2 || !p.is_face(g) {
        return Err(if p.is_face(g) {
            Error::InvalidParameter(format!(
                "pruning needs a face of dimension at most n-2; {:?} is a facet or the polytope",
                p.facet_names(g)
            ))
        } else {
            Error::NotAFace(g.to_vec())
        });
    }
    let name = spec.new_facet.clone().unwrap_or_else(|| fresh_facet_name(p));
    if p.facet_index(&name).is_some() {
        return Err(Error::InvalidParameter(format!("facet name `{name}` already in use")));
    }
    let new = p.num_facets();
    let mut facets = p.facets().to_vec();
    facets.push(FacetLabel::new(name));
    let mut vertices = Vec::new();
    for &v in p.vertices() {
        if !g.is_subset(v) {
            vertices.push(v);
            continue;
        }
        for f in g.iter() {
            let mut u = v;
            u.remove(f);
            u.insert(new);
            vertices.push(u);
        }
    }
    SimplePolytope::from_sets_checked(p.dim(), facets, vertices)
}

/// Prunes the face named by `names`, giving the new facet a fresh name.
pub fn prune_named(p: &SimplePolytope, names: &[&str]) -> Result<SimplePolytope> {
    let face = p.facet_set(names.iter().copied())?;
    prune(&PruneSpec {
        polytope: p.clone(),
        face,
        new_facet: None,
    })
}

/// Faces (as facet names) whose successive truncation turns the simplex of
/// dimension `sum(dims)` into the product of simplices of the given
/// dimensions.
///
/// Faces are listed in application order and refer to the running polytope,
/// where the `k`th truncation introduces facet `P{k}`. Fewer than two
/// factors give an empty sequence.
///
/// The construction is inductive. If the first `k-1` factors come from
/// `Delta^{n'}` via faces `G_1..G_{k-2}`, then multiplying by `Delta^m`
/// preserves the truncations, and `Delta^{n'} x Delta^m` is itself the
/// truncation of `Delta^{n'+m}` at the face cut out by its last `m+1`
/// facets. Under that truncation the facets of `Delta^{n'}` correspond to
/// `D1..D{n'}` and the new facet, so earlier faces are relabelled and
/// appended after the first cut.
pub fn pruning_sequence_for(dims: &[usize]) -> Result<Vec<Vec<String>>> {
    if dims.contains(&0) {
        return Err(Error::InvalidParameter(
            "simplex factors must have positive dimension".into(),
        ));
    }
    let Some((&first, rest)) = dims.split_first() else {
        return Ok(Vec::new());
    };
    let mut seq: Vec<Vec<String>> = Vec::new();
    let mut n = first;
    for &m in rest {
        let total = n + m;
        let cut: Vec<String> = (n + 1..=total + 1).map(|r| format!("D{r}")).collect();
        let relabel = |name: &String| -> String {
            if let Some(k) = name.strip_prefix('P') {
                let k: usize = k.parse().expect("generated name");
                format!("P{}", k + 1)
            } else if *name == format!("D{}", n + 1) {
                String::from("P1")
            } else {
                name.clone()
            }
        };
        let mut next = vec![cut];
        next.extend(seq.iter().map(|face| face.iter().map(relabel).collect()));
        seq = next;
        n = total;
    }
    Ok(seq)
}

/// Applies a pruning sequence to the simplex of the given dimension.
pub fn apply_pruning_sequence(n: usize, seq: &[Vec<String>]) -> Result<SimplePolytope> {
    let mut p = SimplePolytope::simplex(n)?;
    for face in seq {
        let names: Vec<&str> = face.iter().map(String::as_str).collect();
        p = prune_named(&p, &names)?;
    }
    Ok(p)
}
