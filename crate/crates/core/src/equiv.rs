//! Combinatorial equivalence of simple polytopes.
//!
//! Two simple polytopes are equivalent when some bijection of facets carries
//! vertex sets onto vertex sets. The search refines facet and vertex colours
//! on the incidence graph of both polytopes with a shared palette, then
//! backtracks over colour-compatible assignments in a fixed order.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use crate::facets::FacetSet;
use crate::polytope::SimplePolytope;

/// A facet bijection between two polytopes: facet `i` maps to `image(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FacetBijection(Vec<usize>);

impl FacetBijection {
    pub fn identity(m: usize) -> Self {
        FacetBijection((0..m).collect())
    }

    /// Wraps an image list; returns `None` unless it is a permutation.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || core::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(FacetBijection(images))
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn apply(&self, set: FacetSet) -> FacetSet {
        set.map(|i| self.0[i])
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        FacetBijection(inv)
    }

    /// `self` followed by `then`.
    pub fn then(&self, then: &FacetBijection) -> Self {
        FacetBijection(self.0.iter().map(|&j| then.0[j]).collect())
    }

    /// True when the bijection carries the vertices of `p` onto those of `q`.
    pub fn is_equivalence(&self, p: &SimplePolytope, q: &SimplePolytope) -> bool {
        p.dim() == q.dim()
            && self.0.len() == p.num_facets()
            && p.num_facets() == q.num_facets()
            && p.num_vertices() == q.num_vertices()
            && p.vertices().iter().all(|&v| q.is_vertex(self.apply(v)))
    }
}

/// Returns a facet bijection realizing a combinatorial equivalence, if any.
///
/// The result is deterministic; comparing a polytope with itself yields the
/// identity.
pub fn is_equivalent(p: &SimplePolytope, q: &SimplePolytope) -> Option<FacetBijection> {
    let mut found = None;
    for_each_equivalence(p, q, |b| {
        found = Some(b.clone());
        ControlFlow::Break(())
    });
    found
}

/// Visits every combinatorial equivalence `p -> q` in a deterministic order
/// until the visitor breaks.
pub fn for_each_equivalence<F>(p: &SimplePolytope, q: &SimplePolytope, mut visit: F)
where
    F: FnMut(&FacetBijection) -> ControlFlow<()>,
{
    if p.dim() != q.dim() || p.num_facets() != q.num_facets() || p.num_vertices() != q.num_vertices() {
        return;
    }
    let m = p.num_facets();
    if m == 0 {
        let _ = visit(&FacetBijection(Vec::new()));
        return;
    }
    let (pc, qc) = refine_colours(p, q);
    let mut ps = pc.clone();
    let mut qs = qc.clone();
    ps.sort_unstable();
    qs.sort_unstable();
    if ps != qs {
        return;
    }
    let mut search = Search::new(p, q, pc, qc);
    let mut images = vec![usize::MAX; m];
    let mut used = vec![false; m];
    let _ = search.extend(0, &mut images, &mut used, &mut visit);
}

fn common_counts(p: &SimplePolytope) -> Vec<Vec<u32>> {
    let m = p.num_facets();
    let mut c = vec![vec![0u32; m]; m];
    for v in p.vertices() {
        for i in v.iter() {
            for j in v.iter() {
                c[i][j] += 1;
            }
        }
    }
    c
}

/// Colour refinement of facets over both polytopes at once.
fn refine_colours(p: &SimplePolytope, q: &SimplePolytope) -> (Vec<u32>, Vec<u32>) {
    let degree = |x: &SimplePolytope| -> Vec<u32> {
        let mut d = vec![0u32; x.num_facets()];
        for v in x.vertices() {
            for i in v.iter() {
                d[i] += 1;
            }
        }
        d
    };
    let mut pc = degree(p);
    let mut qc = degree(q);
    let mut classes = count_classes(&pc, &qc);
    loop {
        let pv = vertex_signatures(p, &pc);
        let qv = vertex_signatures(q, &qc);
        let vpal = palette(pv.iter().chain(qv.iter()));
        let pvc: Vec<u32> = pv.iter().map(|s| vpal[s]).collect();
        let qvc: Vec<u32> = qv.iter().map(|s| vpal[s]).collect();
        let pf = facet_signatures(p, &pc, &pvc);
        let qf = facet_signatures(q, &qc, &qvc);
        let fpal = palette(pf.iter().chain(qf.iter()));
        let npc: Vec<u32> = pf.iter().map(|s| fpal[s]).collect();
        let nqc: Vec<u32> = qf.iter().map(|s| fpal[s]).collect();
        let n = count_classes(&npc, &nqc);
        pc = npc;
        qc = nqc;
        if n == classes {
            return (pc, qc);
        }
        classes = n;
    }
}

fn count_classes(a: &[u32], b: &[u32]) -> usize {
    let mut all: Vec<u32> = a.iter().chain(b).copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

fn palette<'a>(sigs: impl Iterator<Item = &'a Vec<u32>>) -> BTreeMap<&'a Vec<u32>, u32> {
    let mut pal: BTreeMap<&Vec<u32>, u32> = sigs.map(|s| (s, 0)).collect();
    for (k, v) in pal.values_mut().enumerate() {
        *v = k as u32;
    }
    pal
}

fn vertex_signatures(p: &SimplePolytope, fc: &[u32]) -> Vec<Vec<u32>> {
    p.vertices()
        .iter()
        .map(|v| {
            let mut s: Vec<u32> = v.iter().map(|i| fc[i]).collect();
            s.sort_unstable();
            s
        })
        .collect()
}

fn facet_signatures(p: &SimplePolytope, fc: &[u32], vc: &[u32]) -> Vec<Vec<u32>> {
    let mut sigs: Vec<Vec<u32>> = fc.iter().map(|&c| vec![c]).collect();
    for (k, v) in p.vertices().iter().enumerate() {
        for i in v.iter() {
            sigs[i].push(vc[k]);
        }
    }
    for s in &mut sigs {
        s[1..].sort_unstable();
    }
    sigs
}

struct Search<'a> {
    q: &'a SimplePolytope,
    pc: Vec<u32>,
    qc: Vec<u32>,
    pcommon: Vec<Vec<u32>>,
    qcommon: Vec<Vec<u32>>,
    /// Facets of `p` in assignment order.
    order: Vec<usize>,
    /// Vertices of `p` whose last facet is assigned at each step.
    completes: Vec<Vec<FacetSet>>,
}

impl<'a> Search<'a> {
    fn new(p: &'a SimplePolytope, q: &'a SimplePolytope, pc: Vec<u32>, qc: Vec<u32>) -> Self {
        let m = p.num_facets();
        let pcommon = common_counts(p);
        let qcommon = common_counts(q);
        let mut class_size: BTreeMap<u32, usize> = BTreeMap::new();
        for &c in &pc {
            *class_size.entry(c).or_default() += 1;
        }
        // Most constrained first: many assigned neighbours, then small class.
        let mut order = Vec::with_capacity(m);
        let mut placed = vec![false; m];
        let mut links = vec![0usize; m];
        for _ in 0..m {
            let next = (0..m)
                .filter(|&i| !placed[i])
                .min_by_key(|&i| (core::cmp::Reverse(links[i]), class_size[&pc[i]], i))
                .expect("unplaced facet remains");
            placed[next] = true;
            order.push(next);
            for j in 0..m {
                if pcommon[next][j] > 0 {
                    links[j] += 1;
                }
            }
        }
        let mut position = vec![0; m];
        for (k, &f) in order.iter().enumerate() {
            position[f] = k;
        }
        let mut completes = vec![Vec::new(); m];
        for &v in p.vertices() {
            if let Some(last) = v.iter().map(|i| position[i]).max() {
                completes[last].push(v);
            }
        }
        Search {
            q,
            pc,
            qc,
            pcommon,
            qcommon,
            order,
            completes,
        }
    }

    fn extend<F>(
        &mut self,
        depth: usize,
        images: &mut Vec<usize>,
        used: &mut Vec<bool>,
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&FacetBijection) -> ControlFlow<()>,
    {
        let m = images.len();
        if depth == m {
            return visit(&FacetBijection(images.clone()));
        }
        let f = self.order[depth];
        let preferred = core::iter::once(f).filter(|&g| g < m);
        let rest = (0..m).filter(move |&g| g != f);
        for g in preferred.chain(rest) {
            if used[g] || self.qc[g] != self.pc[f] {
                continue;
            }
            let consistent = self.order[..depth]
                .iter()
                .all(|&h| self.pcommon[f][h] == self.qcommon[g][images[h]])
                && self.pcommon[f][f] == self.qcommon[g][g];
            if !consistent {
                continue;
            }
            images[f] = g;
            let closes = self.completes[depth]
                .iter()
                .all(|v| self.q.is_vertex(v.map(|i| images[i])));
            if closes {
                used[g] = true;
                let flow = self.extend(depth + 1, images, used, visit);
                used[g] = false;
                if flow.is_break() {
                    images[f] = usize::MAX;
                    return flow;
                }
            }
            images[f] = usize::MAX;
        }
        ControlFlow::Continue(())
    }
}
