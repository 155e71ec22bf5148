use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use schur_ed::clifford::{CliffordElem, CliffordSignature, DyadicRing, SpinorVariant};
use schur_ed::covers::{CoverGroup, CoverSpec, CoverVariant, Permutation};
use schur_ed::qforms::{
    diagonalize, hilbert_symbol, same_square_class, BrauerClass2, EtaleAlgebraQ, Place, Poly,
    QuadFormQ,
};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u8).collect::<Vec<u8>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn variant() -> impl Strategy<Value = CoverVariant> {
    prop_oneof![Just(CoverVariant::Plus), Just(CoverVariant::Minus)]
}

fn triple() -> impl Strategy<Value = (usize, Permutation, Permutation, Permutation)> {
    (4usize..=9).prop_flat_map(|n| (Just(n), perm(n), perm(n), perm(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn cocycle_identity((n, s, t, r) in triple(), v in variant()) {
        let g = CoverGroup::new(CoverSpec::new(n, v).unwrap());
        let c = |a: &Permutation, b: &Permutation| g.cocycle(a, b).unwrap();
        let lhs = c(&s, &t) ^ c(&s.compose(&t), &r);
        let rhs = c(&t, &r) ^ c(&s, &t.compose(&r));
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #[test]
    fn projection_is_a_homomorphism((n, s, t, _) in triple(), v in variant(), e1: bool, e2: bool) {
        let g = CoverGroup::new(CoverSpec::new(n, v).unwrap());
        let x = schur_ed::covers::CoverElem::new(e1, s.clone());
        let y = schur_ed::covers::CoverElem::new(e2, t.clone());
        prop_assert_eq!(g.mul(&x, &y).perm, s.compose(&t));
        // the kernel is {1, z}
        prop_assert_eq!(g.mul(&x, &g.inv(&x)), g.identity());
    }

    #[test]
    fn lifts_have_unit_spinor_norm((n, s, t, _) in triple(), v in variant()) {
        let g = CoverGroup::new(CoverSpec::new(n, v).unwrap());
        for variant in [SpinorVariant::Plus, SpinorVariant::Minus] {
            let ns = g.lift(&s).unwrap().spinor_norm(variant).as_scalar().unwrap();
            let nt = g.lift(&t).unwrap().spinor_norm(variant).as_scalar().unwrap();
            prop_assert!(ns == DyadicRing::ONE || ns == -DyadicRing::ONE);
            let prod = &g.lift(&s).unwrap() * &g.lift(&t).unwrap();
            prop_assert_eq!(prod.spinor_norm(variant).as_scalar().unwrap(), ns * nt);
        }
    }
}

fn dyadic() -> impl Strategy<Value = DyadicRing> {
    (-50i128..50, -50i128..50, 0u32..6).prop_map(|(a, b, k)| DyadicRing::new(a, b, k))
}

fn clifford(n: usize, sign: i8) -> impl Strategy<Value = CliffordElem> {
    let sig = CliffordSignature::new(n, sign).unwrap();
    proptest::collection::vec((0u64..(1 << n), dyadic()), 0..6)
        .prop_map(move |t| CliffordElem::from_terms(sig, t).unwrap())
}

fn clifford_pair() -> impl Strategy<Value = (CliffordElem, CliffordElem)> {
    (1usize..=6, prop_oneof![Just(1i8), Just(-1i8)]).prop_flat_map(|(n, s)| (clifford(n, s), clifford(n, s)))
}

/// `p + r·√2` with rational parts, the test-side model of `Z[1/2, √2]`.
fn oracle(x: &DyadicRing) -> (BigRational, BigRational) {
    let (a, b, k) = x.parts();
    let den = BigInt::one() << k;
    (BigRational::new(a.into(), den.clone()), BigRational::new(b.into(), den))
}

proptest! {
    #[test]
    fn transpose_reverses_products((x, y) in clifford_pair()) {
        prop_assert_eq!((&x * &y).transpose(), &y.transpose() * &x.transpose());
        prop_assert_eq!(x.transpose().transpose(), x.clone());
    }

    #[test]
    fn grade_involution_is_multiplicative((x, y) in clifford_pair()) {
        prop_assert_eq!((&x * &y).grade_involution(), &x.grade_involution() * &y.grade_involution());
        prop_assert_eq!((&x + &y).grade_involution(), &x.grade_involution() + &y.grade_involution());
    }

    #[test]
    fn dyadic_matches_rational_pairs(x in dyadic(), y in dyadic()) {
        let (xa, xb) = oracle(&x);
        let (ya, yb) = oracle(&y);
        prop_assert_eq!(oracle(&(x + y)), (&xa + &ya, &xb + &yb));
        prop_assert_eq!(oracle(&(x - y)), (&xa - &ya, &xb - &yb));
        let two = q(2);
        prop_assert_eq!(oracle(&(x * y)), (&xa * &ya + two * &xb * &yb, &xa * &yb + &xb * &ya));
        prop_assert_eq!(x.is_zero(), xa.is_zero() && xb.is_zero());
    }
}

fn squarefree(a: i64) -> bool {
    let a = a.abs();
    (2..=a).take_while(|d| d * d <= a).all(|d| a % (d * d) != 0)
}

/// `(a, b)_p` for squarefree `a, b`: 1 iff `z² = ax² + by²` has a primitive
/// solution modulo `p^e`.
fn brute_hilbert(a: i64, b: i64, p: i64, e: u32) -> i8 {
    let m = p.pow(e);
    let mut any_root = HashSet::new();
    let mut unit_root = HashSet::new();
    for z in 0..m {
        let r = z * z % m;
        any_root.insert(r);
        if z % p != 0 {
            unit_root.insert(r);
        }
    }
    for x in 0..m {
        for y in 0..m {
            let r = (a * x * x + b * y * y).rem_euclid(m);
            let primitive = x % p != 0 || y % p != 0;
            if (primitive && any_root.contains(&r)) || unit_root.contains(&r) {
                return 1;
            }
        }
    }
    -1
}

fn sf() -> impl Strategy<Value = i64> {
    (-30i64..=30).prop_filter("nonzero squarefree", |&a| a != 0 && squarefree(a))
}

fn nonzero_rat() -> impl Strategy<Value = BigRational> {
    (-2000i64..2000, 1i64..50)
        .prop_filter("nonzero", |(a, _)| *a != 0)
        .prop_map(|(a, b)| BigRational::new(a.into(), b.into()))
}

proptest! {
    #[test]
    fn hilbert_matches_brute_force(a in sf(), b in sf()) {
        for (p, e) in [(2i64, 5u32), (3, 3), (5, 3), (7, 2)] {
            let got = hilbert_symbol(&q(a), &q(b), &Place::prime(p as u64));
            prop_assert_eq!(got, brute_hilbert(a, b, p, e), "({}, {})_{}", a, b, p);
        }
        let real = if a < 0 && b < 0 { -1 } else { 1 };
        prop_assert_eq!(hilbert_symbol(&q(a), &q(b), &Place::Infinity), real);
    }

    #[test]
    fn brauer_classes_have_even_support(a in nonzero_rat(), b in nonzero_rat()) {
        let c = BrauerClass2::symbol(&a, &b).unwrap();
        prop_assert_eq!(c.ramified().len() % 2, 0);
        // (a, -a) = 0 and (a, 1 - a) = 0
        prop_assert!(BrauerClass2::symbol(&a, &-&a).unwrap().is_zero());
        let one_minus = BigRational::one() - &a;
        if !one_minus.is_zero() {
            prop_assert!(BrauerClass2::symbol(&a, &one_minus).unwrap().is_zero());
        }
    }

    #[test]
    fn isometry_survives_square_scaling(entries in proptest::collection::vec(nonzero_rat(), 1..7), k in 1i64..20) {
        let qf = QuadFormQ::new(entries.clone()).unwrap();
        let mut scaled: Vec<BigRational> = entries.iter().map(|x| x * q(k * k)).collect();
        scaled.reverse();
        let other = QuadFormQ::new(scaled).unwrap();
        prop_assert!(qf.is_isometric(&other).unwrap());
        let h = QuadFormQ::from_ints(&[1, -1]).unwrap();
        prop_assert_eq!(qf.orthogonal_sum(&h).witt_index().unwrap(), qf.witt_index().unwrap() + 1);
    }
}

fn companion_power_sums(f: &Poly, count: usize) -> Vec<BigRational> {
    let f = f.monic();
    let c = f.coeffs();
    let n = f.degree();
    // companion matrix: subdiagonal ones, last column -c_0..-c_{n-1}
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for i in 1..n {
        m[i][i - 1] = BigRational::one();
    }
    for i in 0..n {
        m[i][n - 1] = -c[i].clone();
    }
    let mut power: Vec<Vec<BigRational>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect()).collect();
    let mut out = Vec::new();
    for _ in 0..count {
        out.push((0..n).map(|i| power[i][i].clone()).fold(BigRational::zero(), |a, b| a + b));
        let mut next = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            for k in 0..n {
                if power[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    next[i][j] += &power[i][k] * &m[k][j];
                }
            }
        }
        power = next;
    }
    out
}

fn monic_poly() -> impl Strategy<Value = Poly> {
    proptest::collection::vec(-20i64..=20, 1..9).prop_map(|mut c| {
        c.push(1);
        Poly::from_ints(&c)
    })
}

proptest! {
    #[test]
    fn power_sums_match_companion_traces(f in monic_poly()) {
        let count = 2 * f.degree() + 1;
        prop_assert_eq!(f.power_sums(count), companion_power_sums(&f, count));
    }

    #[test]
    fn diagonalization_is_congruence_invariant(
        diag in proptest::collection::vec(prop_oneof![-9i64..=-1, 1i64..=9], 2..6),
        seed in proptest::collection::vec(-3i64..=3, 36),
    ) {
        let n = diag.len();
        // P = unit upper triangular times a random lower part: det P = 1
        let mut p = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                p[i][j] = if i == j { 1 } else if i < j { seed[i * 6 + j] } else { 0 };
            }
        }
        let g: Vec<Vec<BigRational>> = (0..n)
            .map(|i| (0..n).map(|j| {
                (0..n).map(|k| q(p[k][i] * diag[k] * p[k][j])).fold(BigRational::zero(), |a, b| a + b)
            }).collect())
            .collect();
        let d = QuadFormQ::new(diagonalize(g).unwrap()).unwrap();
        let original = QuadFormQ::from_ints(&diag).unwrap();
        prop_assert!(d.is_isometric(&original).unwrap(), "{} vs {}", d, original);
        prop_assert_eq!(d.determinant(), original.determinant());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn trace_form_discriminant_is_etale_discriminant(n in 1usize..=12, seed: u64) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let e = EtaleAlgebraQ::random(n, &mut rng);
        let t = e.trace_form().unwrap();
        prop_assert_eq!(t.dim(), n);
        prop_assert!(same_square_class(&t.determinant(), &e.discriminant_value()));
        prop_assert!(t.determinant().is_positive() == e.discriminant_value().is_positive());
    }
}
