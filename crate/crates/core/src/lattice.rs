//! Face lattices of simple polytopes.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::facets::{for_each_subset, FacetSet};
use crate::polytope::SimplePolytope;

/// A nonempty face, named by the facets containing it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face {
    pub facets: FacetSet,
    pub dim: usize,
}

impl Face {
    pub fn codim(&self) -> usize {
        self.facets.len()
    }
}

/// All nonempty faces, graded by codimension, with covering relations.
///
/// The empty face is omitted, so the cube `I^n` has `3^n` entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceLattice {
    dim: usize,
    faces: Vec<Face>,
    /// `(upper, lower)` index pairs: `faces[lower]` is a facet of `faces[upper]`.
    covers: Vec<(usize, usize)>,
}

impl FaceLattice {
    pub fn of(p: &SimplePolytope) -> Self {
        let n = p.dim();
        let mut sets = BTreeSet::new();
        for &v in p.vertices() {
            for_each_subset(v, |s| {
                sets.insert(s);
            });
        }
        let mut faces: Vec<Face> = sets
            .into_iter()
            .map(|s| Face {
                facets: s,
                dim: n - s.len(),
            })
            .collect();
        faces.sort_by(|a, b| a.codim().cmp(&b.codim()).then(a.facets.cmp(&b.facets)));
        let index: BTreeMap<FacetSet, usize> = faces.iter().enumerate().map(|(i, f)| (f.facets, i)).collect();
        let mut covers = Vec::new();
        for (lower, face) in faces.iter().enumerate() {
            for i in face.facets.iter() {
                let mut up = face.facets;
                up.remove(i);
                covers.push((index[&up], lower));
            }
        }
        covers.sort_unstable();
        FaceLattice { dim: n, faces, covers }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of nonempty faces, the polytope itself included.
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn faces_of_dim(&self, d: usize) -> impl Iterator<Item = &Face> + '_ {
        self.faces.iter().filter(move |f| f.dim == d)
    }

    pub fn faces_of_codim(&self, k: usize) -> impl Iterator<Item = &Face> + '_ {
        self.faces.iter().filter(move |f| f.codim() == k)
    }

    /// Face counts indexed by dimension `0..=dim`.
    pub fn counts_by_dim(&self) -> Vec<usize> {
        let mut c = alloc::vec![0; self.dim + 1];
        for f in &self.faces {
            c[f.dim] += 1;
        }
        c
    }

    /// Index of the face with the given facet set, if it is a face.
    pub fn position(&self, facets: FacetSet) -> Option<usize> {
        self.faces.iter().position(|f| f.facets == facets)
    }

    /// Meet of two faces: the face cut out by both facet sets, if nonempty.
    pub fn meet(&self, a: FacetSet, b: FacetSet) -> Option<Face> {
        let u = a.union(b);
        self.position(u).map(|i| self.faces[i])
    }
}
