use matpair::formal::FormalSum;
use matpair::grothendieck::{
    collapse, dim_character, g0_equal, gamma, k0_equal, kappa, lickorish_equivalent, module_invariant,
    positive_cone_element, triangle_check, triangle_check_pair, LickorishMove,
};
use matpair::pair::{canonical_form, decide_leq, Verdict};
use matpair::random::{self, Rand};
use matpair::{Matrix, MatrixPair, RingSpec};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;

fn f(q: u64) -> RingSpec {
    RingSpec::prime_field(q).unwrap()
}

fn z() -> RingSpec {
    RingSpec::integers()
}

fn bound(ring: RingSpec) -> i64 {
    if ring == z() {
        9
    } else {
        0
    }
}

fn random_move(rng: &mut Rand, a: &Matrix, which: usize) -> LickorishMove {
    let ring = a.ring();
    let perm = |rng: &mut Rand, n: usize| {
        let mut v: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            v.swap(i, rng.gen_range(0..=i));
        }
        v
    };
    match which {
        0 if rng.gen_bool(0.5) => LickorishMove::AppendZeroRow,
        0 => LickorishMove::ExtendByOne,
        1 if rng.gen_bool(0.5) => LickorishMove::PermuteRows(perm(rng, a.rows())),
        1 => LickorishMove::PermuteColumns(perm(rng, a.cols())),
        2 => LickorishMove::AddRowMultiple { target: 0, source: 1, factor: random::scalar(rng, ring, 5) },
        _ => LickorishMove::AddColumnMultiple { target: 1, source: 0, factor: random::scalar(rng, ring, 5) },
    }
}

/// Brute-force oracle over `F_q`: `|M_A| = q^dim`, counted as the index of
/// the row space of `A` in `F_q^n`.
fn cokernel_size(a: &Matrix) -> u64 {
    let q = a.ring().modulus().unwrap();
    let mut span = std::collections::BTreeSet::new();
    let m = a.rows();
    for code in 0..q.pow(m as u32) {
        let mut c = code;
        let x = Matrix::from_fn(a.ring(), 1, m, |_, _| {
            let v = c % q;
            c /= q;
            matpair::Scalar::Residue(v)
        });
        span.insert(x.mul(a).unwrap());
    }
    q.pow(a.cols() as u32) / span.len() as u64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn field_dimension_matches_brute_force(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let a = random::matrix_up_to(&mut rng, f(3), 3, 3, 0);
        let d = module_invariant(&a).unwrap().free_rank as u32;
        prop_assert_eq!(3u64.pow(d), cokernel_size(&a));
    }

    #[test]
    fn triangle_identities(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        for ring in [f(5), z()] {
            let (rows, cols) = (rng.gen_range(1..=3), rng.gen_range(1..=4));
            let a = random::matrix(&mut rng, ring, rows, cols, bound(ring));
            prop_assert!(triangle_check(&a).unwrap());
            let p = random::pair(&mut rng, ring, 1, 3, 3, bound(ring));
            prop_assert!(triangle_check_pair(&p).unwrap());
        }
    }

    #[test]
    fn kappa_is_invariant_under_moves(seed in any::<u64>(), which in 0usize..4) {
        let mut rng = random::rng(seed);
        for ring in [f(3), z()] {
            let (rows, cols) = (rng.gen_range(2..=3), rng.gen_range(2..=3));
            let a = random::matrix(&mut rng, ring, rows, cols, bound(ring));
            let moved = random_move(&mut rng, &a, which).apply(&a).unwrap();
            prop_assert!(lickorish_equivalent(&a, &moved).unwrap());
            prop_assert!(g0_equal(&kappa(&a), &kappa(&moved)).unwrap());
        }
    }

    #[test]
    fn gamma_is_constant_on_classes(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        for ring in [f(3), z()] {
            let p = random::pair(&mut rng, ring, 2, 3, 2, bound(ring));
            let (u, _) = random::invertible(&mut rng, ring, p.rows(), 3);
            let (v, _) = random::invertible(&mut rng, ring, p.width(), 3);
            let g = random::matrix(&mut rng, ring, p.width(), p.arity(), 3);
            let b2 = u.mul(p.b()).unwrap().mul(&v).unwrap();
            let a2 = u.mul(&p.a().add(&p.b().mul(&g).unwrap()).unwrap()).unwrap();
            let q = MatrixPair::new(b2, a2).unwrap();
            let (Verdict::Proved(_), Verdict::Proved(_)) = (decide_leq(&p, &q).unwrap(), decide_leq(&q, &p).unwrap()) else {
                return Err(TestCaseError::fail("invertible moves must give equivalent pairs"));
            };
            prop_assert_eq!(collapse(&gamma(&p)).unwrap(), collapse(&gamma(&q)).unwrap());
        }
    }

    #[test]
    fn goursat_relation_one(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let ring = f(3);
        let m = rng.gen_range(1..=3);
        let k = rng.gen_range(0..=2);
        let b = random::matrix(&mut rng, ring, m, k, 0);
        let a = random::matrix(&mut rng, ring, m, 1, 0);
        let a2 = random::matrix(&mut rng, ring, m, 1, 0);
        let pair = |l: Vec<&Matrix>, r: &Matrix| MatrixPair::new(Matrix::hstack(&l).unwrap(), r.clone()).unwrap();
        let mut lhs = FormalSum::generator(pair(vec![&b, &a], &a2));
        lhs.add_term(pair(vec![&b], &a2), -1);
        lhs.add_term(pair(vec![&b, &a2], &a), -1);
        lhs.add_term(pair(vec![&b], &a), 1);
        prop_assert!(g0_equal(&lhs, &FormalSum::zero()).unwrap());
    }

    #[test]
    fn rank_character_on_cone(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let ring = f(3);
        let (ra, ca, rc, cc) = (rng.gen_range(0..=3), rng.gen_range(0..=3), rng.gen_range(0..=3), rng.gen_range(0..=3));
        let a = random::matrix(&mut rng, ring, ra, ca, 0);
        let b = random::matrix(&mut rng, ring, rc, ca, 0);
        let c = random::matrix(&mut rng, ring, rc, cc, 0);
        prop_assert!(dim_character(&positive_cone_element(&a, &b, &c).unwrap()).unwrap() >= 0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn character_axioms(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let ring = f(2);
        let a = random::matrix_up_to(&mut rng, ring, 3, 3, 0);
        let c = random::matrix_up_to(&mut rng, ring, 3, 3, 0);
        let b = random::matrix(&mut rng, ring, c.rows(), a.cols(), 0);
        let rho = |m: &Matrix| dim_character(&FormalSum::generator(m.clone())).unwrap();
        let n = rng.gen_range(0..=3);
        prop_assert_eq!(rho(&Matrix::identity(ring, n)), 0);
        prop_assert_eq!(rho(&Matrix::block_diag(&a, &c).unwrap()), rho(&a) + rho(&c));
        let block = Matrix::from_blocks(&[vec![&a, &Matrix::zeros(ring, a.rows(), c.cols())], vec![&b, &c]]).unwrap();
        prop_assert!(rho(&block) <= rho(&a) + rho(&c));
    }

    #[test]
    fn products_have_larger_cokernels(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let ring = f(3);
        let n = rng.gen_range(2..=3);
        let a = random::matrix(&mut rng, ring, n, n, 0);
        let b = random::matrix(&mut rng, ring, n, n, 0);
        let dim = |m: &Matrix| module_invariant(m).unwrap().free_rank;
        let ab = a.mul(&b).unwrap();
        prop_assert!(dim(&ab) >= dim(&a) && dim(&ab) >= dim(&b));
    }
}

#[test]
fn integer_invariants() {
    let inv = module_invariant(&Matrix::from_i64(z(), 2, &[&[2, 0], &[0, 3]])).unwrap();
    assert_eq!((inv.free_rank, inv.invariant_factors), (0, vec![BigInt::from(6)]));
    assert_eq!(module_invariant(&Matrix::zeros(z(), 1, 1)).unwrap().free_rank, 1);
    assert!(lickorish_equivalent(&Matrix::from_i64(z(), 1, &[&[6]]), &Matrix::from_i64(z(), 2, &[&[2, 0], &[0, 3]])).unwrap());
    assert!(!lickorish_equivalent(&Matrix::from_i64(z(), 1, &[&[4]]), &Matrix::from_i64(z(), 2, &[&[2, 0], &[0, 2]])).unwrap());
}

#[test]
fn unary_extremes_are_distinct() {
    let f2 = f(2);
    let top = FormalSum::generator(MatrixPair::top(f2, 1));
    let bottom = FormalSum::generator(MatrixPair::bottom(f2, 1));
    assert!(!g0_equal(&top, &bottom).unwrap());
    assert!(g0_equal(&bottom, &FormalSum::zero()).unwrap());
    // gamma(1_1) = {0x1} - {0x0} is the class of R.
    assert_eq!(dim_character(&gamma(&MatrixPair::top(f2, 1))).unwrap(), 1);
}

#[test]
fn cone_of_split_and_unipotent_blocks() {
    let f3 = f(3);
    let a = Matrix::from_i64(f3, 2, &[&[1, 2]]);
    let c = Matrix::from_i64(f3, 1, &[&[0], &[1]]);
    let zero = Matrix::zeros(f3, 2, 2);
    assert!(k0_equal(&positive_cone_element(&a, &zero, &c).unwrap(), &FormalSum::zero()).unwrap());
    let i = Matrix::identity(f3, 2);
    let b = Matrix::from_i64(f3, 2, &[&[1, 1], &[0, 2]]);
    assert!(k0_equal(&positive_cone_element(&i, &b, &i).unwrap(), &FormalSum::zero()).unwrap());
}

#[test]
fn equivalent_systems_share_gamma() {
    let f5 = f(5);
    let p = MatrixPair::system(Matrix::from_i64(f5, 2, &[&[1, 2], &[2, 4]]));
    let q = MatrixPair::system(canonical_form(&p).unwrap());
    assert!(k0_equal(&gamma(&p), &gamma(&q)).unwrap());
}
