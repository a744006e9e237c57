use std::collections::BTreeSet;

use omnitoric::surgery::prune_named;
use omnitoric::{is_equivalent, Error, FaceLattice, FacetSet, SimplePolytope};
use proptest::prelude::*;

fn simplex(n: usize) -> SimplePolytope {
    SimplePolytope::simplex(n).unwrap()
}

fn cube(n: usize) -> SimplePolytope {
    SimplePolytope::cube(n).unwrap()
}

fn prod(a: &SimplePolytope, b: &SimplePolytope) -> SimplePolytope {
    SimplePolytope::product(a, b).unwrap()
}

/// Every facet subset contained in some vertex, by scanning all `2^m` masks.
fn brute_faces(p: &SimplePolytope) -> BTreeSet<u64> {
    let m = p.num_facets();
    assert!(m < 20);
    let verts: Vec<u64> = p.vertices().iter().map(|v| v.bits() as u64).collect();
    (0u64..1 << m).filter(|&s| verts.iter().any(|&v| s & v == s)).collect()
}

fn brute_f(p: &SimplePolytope) -> Vec<u64> {
    let n = p.dim();
    let mut f = vec![0; n + 1];
    for s in brute_faces(p) {
        f[n - s.count_ones() as usize] += 1;
    }
    f
}

/// `sum_i f_i (t-1)^i`, expanded with explicit polynomial arithmetic.
fn h_by_expansion(f: &[u64]) -> Vec<i64> {
    let mut h = vec![0i64; f.len()];
    for (i, &fi) in f.iter().enumerate() {
        let mut poly = vec![1i64];
        for _ in 0..i {
            let mut next = vec![0i64; poly.len() + 1];
            for (k, &c) in poly.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c;
            }
            poly = next;
        }
        for (k, c) in poly.into_iter().enumerate() {
            h[k] += fi as i64 * c;
        }
    }
    h
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; m], &mut out);
    out
}

/// Incidence isomorphism by trying every facet permutation.
fn brute_isomorphic(p: &SimplePolytope, q: &SimplePolytope, perms: &[Vec<usize>]) -> bool {
    if p.dim() != q.dim() || p.num_facets() != q.num_facets() || p.num_vertices() != q.num_vertices() {
        return false;
    }
    let target: BTreeSet<u128> = q.vertices().iter().map(|v| v.bits()).collect();
    perms.iter().any(|perm| {
        p.vertices().iter().all(|v| {
            let image: u128 = v.iter().map(|i| 1u128 << perm[i]).sum();
            target.contains(&image)
        })
    })
}

fn corpus() -> Vec<(String, SimplePolytope)> {
    let mut out = vec![
        ("D2".to_string(), simplex(2)),
        ("D3".to_string(), simplex(3)),
        ("D4".to_string(), simplex(4)),
        ("I2".to_string(), cube(2)),
        ("I3".to_string(), cube(3)),
        ("D1xD1".to_string(), prod(&simplex(1), &simplex(1))),
        ("D1xD2".to_string(), prod(&simplex(1), &simplex(2))),
        ("D2xD1".to_string(), prod(&simplex(2), &simplex(1))),
        ("D1xD3".to_string(), prod(&simplex(1), &simplex(3))),
        ("D2xD2".to_string(), prod(&simplex(2), &simplex(2))),
        ("I2xD1".to_string(), prod(&cube(2), &simplex(1))),
        (
            "cut D3 vertex".to_string(),
            prune_named(&simplex(3), &["D1", "D2", "D3"]).unwrap(),
        ),
        (
            "cut D3 edge".to_string(),
            prune_named(&simplex(3), &["D1", "D2"]).unwrap(),
        ),
        (
            "cut I2 vertex".to_string(),
            prune_named(&cube(2), &["C1^0", "C2^0"]).unwrap(),
        ),
        (
            "cut I3 vertex".to_string(),
            prune_named(&cube(3), &["C1^0", "C2^0", "C3^0"]).unwrap(),
        ),
        (
            "cut I3 edge".to_string(),
            prune_named(&cube(3), &["C1^0", "C2^0"]).unwrap(),
        ),
        (
            "cut D4 vertex".to_string(),
            prune_named(&simplex(4), &["D1", "D2", "D3", "D4"]).unwrap(),
        ),
    ];
    let twice = prune_named(&cube(2), &["C1^0", "C2^0"]).unwrap();
    out.push((
        "cut I2 twice".to_string(),
        prune_named(&twice, &["C1^1", "C2^1"]).unwrap(),
    ));
    let pent = prune_named(&cube(2), &["C1^1", "C2^0"]).unwrap();
    out.push(("pentagon b".to_string(), pent));
    out
}

#[test]
fn face_lattice_matches_brute_force() {
    for (name, p) in corpus() {
        let lattice = FaceLattice::of(&p);
        let got: BTreeSet<u64> = lattice.faces().iter().map(|f| f.facets.bits() as u64).collect();
        assert_eq!(got, brute_faces(&p), "{name}");
        for face in lattice.faces() {
            assert_eq!(face.dim, p.dim() - face.facets.len(), "{name}");
        }
        let f = brute_f(&p);
        let cv = p.count_vectors();
        assert_eq!(cv.f, f, "{name}");
        assert_eq!(cv.h, h_by_expansion(&f), "{name}");
    }
}

#[test]
fn lattice_codim_one_is_facets_and_codim_n_is_vertices() {
    for (name, p) in corpus() {
        let lattice = FaceLattice::of(&p);
        let facets: Vec<FacetSet> = lattice.faces_of_codim(1).map(|f| f.facets).collect();
        let expected: Vec<FacetSet> = (0..p.num_facets()).map(FacetSet::singleton).collect();
        assert_eq!(facets, expected, "{name}");
        let vertices: BTreeSet<FacetSet> = lattice.faces_of_codim(p.dim()).map(|f| f.facets).collect();
        assert_eq!(vertices, p.vertices().iter().copied().collect(), "{name}");
        assert_eq!(lattice.faces_of_dim(p.dim()).count(), 1);
    }
}

#[test]
fn covers_are_exactly_codimension_one_inclusions() {
    for (name, p) in corpus() {
        let lattice = FaceLattice::of(&p);
        let faces = lattice.faces();
        let mut expected = Vec::new();
        for (i, a) in faces.iter().enumerate() {
            for (j, b) in faces.iter().enumerate() {
                if a.facets.is_subset(b.facets) && b.facets.len() == a.facets.len() + 1 {
                    expected.push((i, j));
                }
            }
        }
        expected.sort_unstable();
        assert_eq!(lattice.covers(), expected.as_slice(), "{name}");
    }
}

#[test]
fn equivalence_agrees_with_permutation_search() {
    let items = corpus();
    let perms: Vec<Vec<Vec<usize>>> = (0..=8).map(permutations).collect();
    let mut positives = 0;
    for (na, a) in &items {
        for (nb, b) in &items {
            let fast = is_equivalent(a, b);
            let slow = a.num_facets() <= 8 && brute_isomorphic(a, b, &perms[a.num_facets().min(8)]);
            if a.num_facets() > 8 {
                continue;
            }
            assert_eq!(fast.is_some(), slow, "{na} vs {nb}");
            if let Some(phi) = fast {
                positives += 1;
                let target: BTreeSet<FacetSet> = b.vertices().iter().copied().collect();
                let mapped: BTreeSet<FacetSet> = a.vertices().iter().map(|&v| phi.apply(v)).collect();
                assert_eq!(mapped, target, "{na} vs {nb}");
            }
        }
    }
    assert!(positives > items.len());
}

#[test]
fn self_equivalence_is_identity() {
    for (name, p) in corpus() {
        assert!(is_equivalent(&p, &p).unwrap().is_identity(), "{name}");
    }
}

#[test]
fn simplex_examples() {
    let t = simplex(2);
    assert_eq!((t.num_facets(), t.num_vertices()), (3, 3));
    assert_eq!(t.count_vectors().f, vec![3, 3, 1]);
    let s1 = simplex(1);
    assert_eq!((s1.num_facets(), s1.num_vertices()), (2, 2));
    assert_eq!(FaceLattice::of(&simplex(3)).len(), 15);
    assert_eq!(FaceLattice::of(&t).counts_by_dim(), vec![3, 3, 1]);
    let names: Vec<&str> = t.facets().iter().map(|f| f.as_str()).collect();
    assert_eq!(names, ["D1", "D2", "D3"]);
    for n in 1..=4 {
        assert_eq!(simplex(n).count_vectors().h, vec![1; n + 1]);
    }
    assert!(matches!(SimplePolytope::simplex(0), Err(Error::InvalidParameter(_))));
}

#[test]
fn cube_examples() {
    assert_eq!(FaceLattice::of(&cube(3)).len(), 27);
    let sq = cube(2);
    assert_eq!(sq.count_vectors().f, vec![4, 4, 1]);
    assert_eq!(sq.count_vectors().h, vec![1, 2, 1]);
    assert!(is_equivalent(&cube(1), &simplex(1)).is_some());
    for n in 1..=4 {
        let h = cube(n).count_vectors().h;
        let mut binom = vec![1i64];
        for k in 1..=n {
            binom.push(binom[k - 1] * (n - k + 1) as i64 / k as i64);
        }
        assert_eq!(h, binom);
    }
    // Opposite facets share no vertex.
    let c = cube(3);
    for r in 1..=3 {
        let pair = c
            .facet_set([format!("C{r}^0").as_str(), format!("C{r}^1").as_str()])
            .unwrap();
        assert!(!c.is_face(pair));
    }
    assert!(SimplePolytope::cube(0).is_err());
}

#[test]
fn product_examples() {
    let p = prod(&cube(2), &simplex(2));
    assert_eq!((p.num_facets(), p.num_vertices(), p.dim()), (7, 12, 4));
    assert!(p.facet_index("L.C1^0").is_some());
    assert!(p.facet_index("R.D3").is_some());
    let prism = prod(&cube(1), &simplex(2));
    assert_eq!(FaceLattice::of(&prism).counts_by_dim(), vec![6, 9, 5, 1]);
    assert_eq!(prism.count_vectors().h, vec![1, 2, 2, 1]);
    let q = cube(3);
    assert_eq!(prod(&q, &cube(1)).num_vertices(), 2 * q.num_vertices());
    assert!(is_equivalent(&prod(&simplex(1), &simplex(1)), &cube(2)).is_some());
    assert!(is_equivalent(&simplex(2), &cube(2)).is_none());
}

#[test]
fn octahedron_is_rejected() {
    // Facets of the octahedron are its 8 sign-octants; each vertex lies on 4.
    let mut vertices = Vec::new();
    for axis in 0..3 {
        for sign in 0..2 {
            let v: Vec<usize> = (0..8).filter(|&o| (o >> axis) & 1 == sign).collect();
            vertices.push(v);
        }
    }
    let names: Vec<String> = (1..=8).map(|k| format!("O{k}")).collect();
    let err = SimplePolytope::new(3, names, vertices).unwrap_err();
    assert!(matches!(err, Error::InvalidPolytope(_)));
}

#[test]
fn validation_reports_each_defect() {
    let ok = SimplePolytope::new(2, ["a", "b", "c"], [vec![0, 1], vec![1, 2], vec![0, 2]]);
    assert!(ok.is_ok());
    let labels = |names: &[&str]| names.iter().map(|&s| s.into()).collect::<Vec<_>>();
    // Too few facets.
    assert!(!SimplePolytope::check(2, &labels(&["a", "b"]), &[vec![0, 1]]).is_valid());
    // Wrong vertex size.
    assert!(!SimplePolytope::check(2, &labels(&["a", "b", "c"]), &[vec![0, 1, 2]]).is_valid());
    // Unused facet.
    let r = SimplePolytope::check(2, &labels(&["a", "b", "c", "d"]), &[vec![0, 1], vec![1, 2], vec![0, 2]]);
    assert!(!r.is_valid());
    // Duplicate vertex.
    let r = SimplePolytope::check(
        2,
        &labels(&["a", "b", "c"]),
        &[vec![0, 1], vec![1, 0], vec![1, 2], vec![0, 2]],
    );
    assert!(!r.is_valid());
    // Euler relation fails for an open path of edges.
    let r = SimplePolytope::check(2, &labels(&["a", "b", "c", "d"]), &[vec![0, 1], vec![1, 2], vec![2, 3]]);
    assert!(!r.is_valid());
    // Duplicate facet names.
    let r = SimplePolytope::check(2, &labels(&["a", "a", "c"]), &[vec![0, 1], vec![1, 2], vec![0, 2]]);
    assert!(!r.is_valid());
}

#[derive(Debug, Clone)]
enum Factor {
    Simplex(usize),
    Cube(usize),
}

fn factor() -> impl Strategy<Value = Factor> {
    prop_oneof![
        (1usize..=3).prop_map(Factor::Simplex),
        (1usize..=2).prop_map(Factor::Cube)
    ]
}

fn realize(f: &Factor) -> SimplePolytope {
    match *f {
        Factor::Simplex(n) => simplex(n),
        Factor::Cube(n) => cube(n),
    }
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn product_invariants(a in factor(), b in factor(), c in factor()) {
        let (pa, pb, pc) = (realize(&a), realize(&b), realize(&c));
        let ab = prod(&pa, &pb);
        prop_assert!(ab.validate().is_valid());
        let cv = ab.count_vectors();
        let n = ab.dim();
        let euler: i64 = cv.f.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
        prop_assert_eq!(euler, 1);
        for i in 0..=n {
            prop_assert_eq!(cv.h[i], cv.h[n - i]);
        }
        prop_assert_eq!(cv.h.iter().sum::<i64>(), cv.f[0] as i64);
        prop_assert_eq!(cv.h, poly_mul(&pa.count_vectors().h, &pb.count_vectors().h));
        for v in ab.vertices() {
            prop_assert_eq!(v.len(), n);
        }
        let left = prod(&ab, &pc);
        let right = prod(&pa, &prod(&pb, &pc));
        prop_assert!(is_equivalent(&left, &right).is_some());
        let swapped = prod(&pb, &pa);
        prop_assert!(is_equivalent(&ab, &swapped).is_some());
    }

    #[test]
    fn relabelled_copies_are_equivalent(a in factor(), b in factor(), seed in 0u64..1000) {
        let p = prod(&realize(&a), &realize(&b));
        let m = p.num_facets();
        // Rotate and reverse facet indices according to the seed.
        let shift = (seed as usize) % m;
        let perm: Vec<usize> = (0..m).map(|i| if seed % 2 == 0 { (i + shift) % m } else { (m - 1 - i + shift) % m }).collect();
        let mut names = vec![String::new(); m];
        for i in 0..m {
            names[perm[i]] = format!("f{i}");
        }
        let vertices: Vec<Vec<usize>> = p.vertices().iter().map(|v| v.iter().map(|i| perm[i]).collect()).collect();
        let q = SimplePolytope::new(p.dim(), names, vertices).unwrap();
        let phi = is_equivalent(&p, &q).unwrap();
        prop_assert!(phi.is_equivalence(&p, &q));
        let back = is_equivalent(&q, &p).unwrap();
        prop_assert!(phi.then(&back).is_equivalence(&p, &p));
    }
}
