use omnitoric::families::{bij, bn, cpn};
use omnitoric::intmat::IntMatrix;
use omnitoric::{
    build, pairs_equivalent, CharacteristicPair, CpVariant, Dicharacteristic, Error, FacetSet, FamilySpec, LatticeMap,
    SimplePolytope,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn families() -> Vec<CharacteristicPair> {
    let mut out = Vec::new();
    for n in 1..=3 {
        out.push(cpn(n, CpVariant::L).unwrap());
        out.push(cpn(n, CpVariant::LPrime).unwrap());
        out.push(bn(n).unwrap());
    }
    for (i, j) in [(1, 2), (1, 3), (2, 2), (2, 3)] {
        out.push(bij(i, j).unwrap());
    }
    out.push(
        build(&FamilySpec::product([
            FamilySpec::Bn { n: 1 },
            FamilySpec::Bij { i: 1, j: 2 },
        ]))
        .unwrap(),
    );
    out
}

/// Cofactor-expansion determinant, independent of the library's elimination.
fn det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|c| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, &x)| x).collect())
                .collect();
            let sign = if c % 2 == 0 { 1 } else { -1 };
            sign * m[0][c] * det(&minor)
        })
        .sum()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if m < k {
        return vec![];
    }
    let mut out = combinations(m - 1, k);
    for mut c in combinations(m - 1, k - 1) {
        c.push(m - 1);
        out.push(c);
    }
    out
}

/// A full-rank integer row basis spans a saturated lattice exactly when the
/// gcd of its maximal minors is 1.
fn maximal_minor_gcd(rows: &[Vec<i64>]) -> i64 {
    let k = rows.len();
    let m = rows[0].len();
    combinations(m, k)
        .into_iter()
        .map(|cols| {
            det(&rows
                .iter()
                .map(|r| cols.iter().map(|&c| r[c]).collect())
                .collect::<Vec<_>>())
        })
        .fold(0, gcd)
}

fn vertex_columns(p: &CharacteristicPair, v: FacetSet) -> Vec<Vec<i64>> {
    // Rows of the transposed matrix are the columns; determinant is unchanged.
    v.iter().map(|f| p.column(f).to_vec()).collect()
}

fn random_unimodular(n: usize, rng: &mut ChaCha8Rng) -> LatticeMap {
    let mut m = IntMatrix::identity(n);
    for _ in 0..4 * n {
        if n < 2 {
            break;
        }
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let k = rng.gen_range(-2..=2);
        for c in 0..n {
            let add = k * m[(j, c)];
            m[(i, c)] += add;
        }
    }
    if rng.gen_bool(0.5) {
        m = m.neg();
    }
    LatticeMap::new(m).unwrap()
}

fn check_witness(a: &CharacteristicPair, b: &CharacteristicPair, directed: bool) {
    let w = pairs_equivalent(a, b, directed).expect("witness");
    assert!(w.bijection.is_equivalence(a.polytope(), b.polytope()));
    assert_eq!(det(&w.theta.matrix().to_rows()).abs(), 1);
    for f in 0..a.polytope().num_facets() {
        let image = w.theta.apply(a.column(f));
        let target: Vec<i64> = b
            .column(w.bijection.image(f))
            .iter()
            .map(|&x| x * w.signs[f] as i64)
            .collect();
        assert_eq!(image, target);
        if directed {
            assert_eq!(w.signs[f], 1);
        }
    }
}

#[test]
fn family_pairs_pass_an_independent_determinant_check() {
    for p in families() {
        assert!(p.validate().is_valid(), "{p:?}");
        for &v in p.polytope().vertices() {
            assert_eq!(det(&vertex_columns(&p, v)).abs(), 1);
        }
        for c in p.dichar().columns() {
            assert_eq!(c.iter().fold(0, |g, &x| gcd(g, x)), 1);
        }
    }
}

#[test]
fn non_primitive_column_fails_both_checks() {
    let good = cpn(2, CpVariant::L).unwrap();
    let mut cols = good.dichar().columns().to_vec();
    cols[0] = vec![2, 0];
    let d = Dicharacteristic::new(2, cols).unwrap();
    let report = CharacteristicPair::check(good.polytope(), &d).unwrap();
    assert_eq!(report.non_primitive, vec![0]);
    let expected: Vec<i64> = vec![2, 2];
    let mut dets: Vec<i64> = report.singular_vertices.iter().map(|&(_, d)| d.abs()).collect();
    dets.sort_unstable();
    assert_eq!(dets, expected);
    assert!(!report.is_valid());
}

#[test]
fn dimension_mismatch_is_reported() {
    let d = Dicharacteristic::new(3, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
    let err = CharacteristicPair::check(&SimplePolytope::simplex(2).unwrap(), &d).unwrap_err();
    assert!(matches!(err, Error::DimensionMismatch { .. }));
    assert!(Dicharacteristic::new(2, vec![vec![1, 0, 0]]).is_err());
}

#[test]
fn kernels_are_saturated_and_annihilated() {
    for p in families() {
        let k = p.kernel_basis();
        let m = p.polytope().num_facets();
        assert_eq!(k.rank(), m - p.dim());
        for v in k.vectors() {
            let image = p.dichar().matrix().mul_vec(v);
            assert!(image.iter().all(|&x| x == 0));
        }
        assert_eq!(maximal_minor_gcd(k.vectors()), 1, "{p:?}");
        assert!(k.is_saturated());
    }
}

#[test]
fn cpn_lprime_kernel_is_the_diagonal_circle() {
    for n in 1..=4 {
        let p = cpn(n, CpVariant::LPrime).unwrap();
        let mut v = vec![1; n];
        v.push(-1);
        assert!(p.kernel_basis().spans_same_lattice(&[v]));
    }
}

#[test]
fn bn_kernel_contains_the_explicit_subtorus() {
    // (t_1, t_1^-1 t_2, t_2, ..., t_n, t_n^-1) over C1^0, C1^1, C2^0, ...
    for n in 1..=4 {
        let p = bn(n).unwrap();
        let idx = |name: String| p.polytope().facet_index(&name).unwrap();
        let vectors: Vec<Vec<i64>> = (1..=n)
            .map(|r| {
                let mut v = vec![0; 2 * n];
                v[idx(format!("C{r}^0"))] += 1;
                v[idx(format!("C{r}^1"))] -= 1;
                if r > 1 {
                    v[idx(format!("C{}^1", r - 1))] += 1;
                }
                v
            })
            .collect();
        let k = p.kernel_basis();
        assert!(vectors.iter().all(|v| k.contains(v)));
        assert!(k.spans_same_lattice(&vectors));
    }
}

#[test]
fn bij_kernel_contains_the_explicit_subtorus() {
    // One vector per t_r plus one for t, as in the parametrised subtorus.
    for (i, j) in [(1, 2), (1, 3), (2, 2), (2, 3), (2, 4), (3, 3), (3, 4)] {
        let p = bij(i, j).unwrap();
        let m = p.polytope().num_facets();
        let idx = |name: String| p.polytope().facet_index(&name).unwrap();
        let mut vectors = Vec::new();
        for r in 1..=i {
            let mut v = vec![0i64; m];
            v[idx(format!("E{r}^0"))] += 1;
            v[idx(format!("E{r}^1"))] -= 1;
            v[idx(format!("E{r}"))] -= 1;
            if r > 1 {
                v[idx(format!("E{}^1", r - 1))] += 1;
                v[idx(format!("E{}", r - 1))] += 1;
            }
            vectors.push(v);
        }
        let mut t = vec![0i64; m];
        for s in 1..=j {
            t[idx(format!("E{s}"))] = 1;
        }
        vectors.push(t);
        let k = p.kernel_basis();
        assert_eq!(k.rank(), i + 1);
        assert!(vectors.iter().all(|v| k.contains(v)), "B_({i},{j})");
        assert!(k.spans_same_lattice(&vectors), "B_({i},{j})");
    }
}

#[test]
fn translation_preserves_validity_and_kernel() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for p in families() {
        let k = p.kernel_basis();
        for _ in 0..3 {
            let theta = random_unimodular(p.dim(), &mut rng);
            let q = p.translate(&theta).unwrap();
            assert!(q.validate().is_valid());
            assert!(k.spans_same_lattice(q.kernel_basis().vectors()));
            for f in 0..p.polytope().num_facets() {
                assert_eq!(q.column(f), theta.apply(p.column(f)).as_slice());
            }
            assert!(pairs_equivalent(&p, &q, true).is_some());
        }
    }
}

#[test]
fn translation_examples() {
    let p = cpn(1, CpVariant::L).unwrap();
    assert_eq!(p.translate(&LatticeMap::identity(1)).unwrap(), p);
    let neg = LatticeMap::new(IntMatrix::identity(1).neg()).unwrap();
    let q = p.translate(&neg).unwrap();
    assert_eq!(q.dichar().columns(), &[vec![-1], vec![1]]);
    assert!(q.validate().is_valid());
    let not_unimodular = IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]]);
    assert_eq!(LatticeMap::new(not_unimodular).unwrap_err(), Error::NotUnimodular);
}

#[test]
fn flips() {
    for p in families() {
        for f in 0..p.polytope().num_facets() {
            let q = p.flip(f).unwrap();
            assert!(q.validate().is_valid());
            assert_eq!(q.flip(f).unwrap(), p);
            for g in 0..p.polytope().num_facets() {
                let expected: Vec<i64> = p.column(g).iter().map(|&x| if g == f { -x } else { x }).collect();
                assert_eq!(q.column(g), expected.as_slice());
            }
        }
    }
    for n in 1..=4 {
        let lp = cpn(n, CpVariant::LPrime).unwrap();
        assert_eq!(
            lp.flip_named(&format!("D{}", n + 1)).unwrap(),
            cpn(n, CpVariant::L).unwrap()
        );
    }
    // Every subset of flips on B_2 stays valid.
    let b2 = bn(2).unwrap();
    for mask in 0u32..16 {
        let mut q = b2.clone();
        for f in 0..4 {
            if mask >> f & 1 == 1 {
                q = q.flip(f).unwrap();
            }
        }
        assert!(q.validate().is_valid());
    }
    assert!(matches!(b2.flip_named("nope"), Err(Error::UnknownFacet(_))));
}

#[test]
fn normalization() {
    let cp2 = cpn(2, CpVariant::L).unwrap();
    let (theta, same) = cp2.normalize_at_vertex(&[0, 1]).unwrap();
    assert_eq!(theta, LatticeMap::identity(2));
    assert_eq!(same, cp2);
    let b2 = bn(2).unwrap();
    let order = [
        b2.polytope().facet_index("C1^0").unwrap(),
        b2.polytope().facet_index("C2^0").unwrap(),
    ];
    let (theta, _) = b2.normalize_at_vertex(&order).unwrap();
    assert_eq!(theta.matrix(), &IntMatrix::identity(2).neg());
    for p in families() {
        for &v in p.polytope().vertices() {
            let mut order = v.to_vec();
            order.reverse();
            let (theta, q) = p.normalize_at_vertex(&order).unwrap();
            assert!(q.validate().is_valid());
            for (r, &f) in order.iter().enumerate() {
                let mut e = vec![0; p.dim()];
                e[r] = 1;
                assert_eq!(q.column(f), e.as_slice());
                assert_eq!(theta.apply(p.column(f)), e);
            }
            let (again, q2) = q.normalize_at_vertex(&order).unwrap();
            assert_eq!(again, LatticeMap::identity(p.dim()));
            assert_eq!(q2, q);
        }
    }
    let not_vertex = [
        b2.polytope().facet_index("C1^0").unwrap(),
        b2.polytope().facet_index("C1^1").unwrap(),
    ];
    assert!(b2.normalize_at_vertex(&not_vertex).is_err());
}

#[test]
fn restriction_is_valid_and_lands_on_the_face() {
    for p in families() {
        let lattice = omnitoric::FaceLattice::of(p.polytope());
        for face in lattice.faces() {
            if face.facets.is_empty() {
                continue;
            }
            let r = p.restrict_to_face(face.facets).unwrap();
            assert_eq!(r.dim(), face.dim);
            assert!(r.validate().is_valid());
            let meeting = p.polytope().facets_meeting(face.facets);
            let names: Vec<&str> = r.polytope().facets().iter().map(|f| f.as_str()).collect();
            assert_eq!(names, p.polytope().facet_names(meeting));
            assert_eq!(
                r.polytope().num_vertices(),
                p.polytope().vertices_of(face.facets).count()
            );
        }
    }
}

#[test]
fn restriction_is_transitive() {
    for p in families() {
        let lattice = omnitoric::FaceLattice::of(p.polytope());
        for face in lattice.faces_of_codim(2) {
            let fs = face.facets.to_vec();
            let both = p.restrict_to_face(face.facets).unwrap();
            for (a, b) in [(fs[0], fs[1]), (fs[1], fs[0])] {
                let step = p.restrict_to_face(FacetSet::singleton(a)).unwrap();
                let name = p.polytope().facet(b).as_str();
                let twice = step.restrict_to_named_face(&[name]).unwrap();
                check_witness(&twice, &both, false);
            }
        }
    }
}

#[test]
fn restriction_census_examples() {
    for n in 2..=3 {
        let p = cpn(n, CpVariant::L).unwrap();
        for r in 1..=n + 1 {
            let res = p.restrict_to_named_face(&[&format!("D{r}")]).unwrap();
            check_witness(&res, &cpn(n - 1, CpVariant::L).unwrap(), false);
        }
        let b = bn(n).unwrap();
        for r in 1..=n {
            let res = b.restrict_to_named_face(&[&format!("C{r}^0")]).unwrap();
            check_witness(&res, &bn(n - 1).unwrap(), false);
        }
    }
    for (i, j) in [(1, 3), (2, 3), (2, 4), (3, 4)] {
        let p = bij(i, j).unwrap();
        for s in i + 1..=j {
            let res = p.restrict_to_named_face(&[&format!("E{s}")]).unwrap();
            check_witness(&res, &bij(i, j - 1).unwrap(), false);
        }
    }
    let p = cpn(2, CpVariant::L).unwrap();
    assert!(matches!(
        p.restrict_to_face(FacetSet::from_indices([0, 1, 2])),
        Err(Error::NotAFace(_))
    ));
}

#[test]
fn pair_equivalence_examples() {
    let l = cpn(1, CpVariant::L).unwrap();
    let lp = cpn(1, CpVariant::LPrime).unwrap();
    check_witness(&l, &lp, false);
    assert!(pairs_equivalent(&l, &lp, true).is_none());
    for p in families() {
        let w = pairs_equivalent(&p, &p, true).unwrap();
        assert!(w.bijection.is_identity());
        assert_eq!(w.theta, LatticeMap::identity(p.dim()));
    }
    assert!(pairs_equivalent(&bn(2).unwrap(), &cpn(2, CpVariant::L).unwrap(), false).is_none());
}

#[test]
fn directed_implies_undirected_and_both_are_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let pairs = families();
    for a in &pairs {
        for b in &pairs {
            let directed = pairs_equivalent(a, b, true);
            let undirected = pairs_equivalent(a, b, false);
            if directed.is_some() {
                assert!(undirected.is_some());
                check_witness(a, b, true);
            }
            assert_eq!(undirected.is_some(), pairs_equivalent(b, a, false).is_some());
            assert_eq!(directed.is_some(), pairs_equivalent(b, a, true).is_some());
        }
        // A translated copy with a random flip is undirected-equivalent.
        let theta = random_unimodular(a.dim(), &mut rng);
        let f = rng.gen_range(0..a.polytope().num_facets());
        let b = a.translate(&theta).unwrap().flip(f).unwrap();
        check_witness(a, &b, false);
        check_witness(&b, a, false);
    }
}
