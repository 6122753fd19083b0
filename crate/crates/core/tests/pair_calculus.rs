use matpair::hom::{map_pair, map_relation, RingHom};
use matpair::linalg::{generalized_inverse, rref, smith_normal_form};
use matpair::pair::{
    canonical_form, compose, compose_all, decide_leq, decompose, dual, dual_relation, is_bottom, is_top, join, meet,
    meet_certified, meet_universal, pid_reduce_certified, split_system, to_system, verify, Certificate, Verdict,
};
use matpair::random::{self, Rand};
use matpair::semantics::{check_presta_soundness, standard_battery};
use matpair::text::{format_certificate, format_pair, parse_certificate, parse_pair};
use matpair::{CertifiedRelation, Matrix, MatrixPair, RingSpec};
use proptest::prelude::*;
use rand::Rng;

fn f(q: u64) -> RingSpec {
    RingSpec::prime_field(q).unwrap()
}

fn same_class(p: &MatrixPair, q: &MatrixPair) -> bool {
    canonical_form(p).unwrap() == canonical_form(q).unwrap()
}

fn rings() -> [RingSpec; 4] {
    [f(3), RingSpec::integers(), RingSpec::mod_ring(6).unwrap(), RingSpec::rationals()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn generalized_inverse_is_inner(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        for q in [2, 3, 5] {
            let b = random::matrix_up_to(&mut rng, f(q), 4, 4, 0);
            let c = generalized_inverse(&b).unwrap();
            prop_assert_eq!(b.mul(&c).unwrap().mul(&b).unwrap(), b);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_is_valid(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let z = RingSpec::integers();
        let m = random::matrix_up_to(&mut rng, z, 4, 4, 9);
        let snf = smith_normal_form(&m).unwrap();
        prop_assert_eq!(snf.p.mul(&m).unwrap().mul(&snf.q).unwrap(), snf.d.clone());
        prop_assert_eq!(snf.p.mul(&snf.p_inv).unwrap(), Matrix::identity(z, m.rows()));
        prop_assert_eq!(snf.q.mul(&snf.q_inv).unwrap(), Matrix::identity(z, m.cols()));
        let factors = snf.factors();
        for w in factors.windows(2) {
            let (a, b) = (z.lift(&w[0]).unwrap(), z.lift(&w[1]).unwrap());
            prop_assert!(a >= 0.into());
            prop_assert!(a == 0.into() && b == 0.into() || a != 0.into() && &b % &a == 0.into());
        }
    }

    #[test]
    fn rref_reproduces_transform(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let m = random::matrix_up_to(&mut rng, f(5), 4, 4, 0);
        let r = rref(&m).unwrap();
        prop_assert_eq!(r.transform.mul(&m).unwrap(), r.reduced.clone());
        prop_assert_eq!(r.reduced.rows(), r.rank);
    }

    #[test]
    fn rod_chains_verify_and_decompose(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        for ring in rings() {
            let chain = random::rod_chain(&mut rng, ring, 2, 3, 3, 3).unwrap();
            let rel = compose_all(&chain).unwrap();
            prop_assert!(rel.verify().unwrap());
            let parts = decompose(&rel).unwrap();
            let again = compose_all(&parts).unwrap();
            prop_assert!(again.verify().unwrap());
            prop_assert_eq!(again.source(), rel.source());
            prop_assert_eq!(again.target(), rel.target());
        }
    }

    #[test]
    fn certificates_round_trip_through_text(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        for ring in rings() {
            let rel = random::rod_relation(&mut rng, ring, 2, 2, 3).unwrap();
            let src = parse_pair(ring, &format_pair(rel.source())).unwrap();
            let dst = parse_pair(ring, &format_pair(rel.target())).unwrap();
            let cert = parse_certificate(ring, &format_certificate(rel.cert())).unwrap();
            prop_assert!(verify(&cert, &src, &dst).unwrap());
        }
    }

    #[test]
    fn certificates_are_monotone_on_modules(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let ring = RingSpec::mod_ring(4).unwrap();
        let rel = random::rod_relation(&mut rng, ring, 2, 2, 3).unwrap();
        prop_assert!(check_presta_soundness(&rel, &standard_battery(ring).unwrap()).unwrap());
    }

    #[test]
    fn dual_is_an_involution(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        for q in [2, 3, 5] {
            let n = rng.gen_range(1..=3);
            let p = random::pair(&mut rng, f(q), n, 3, 3, 0);
            prop_assert!(same_class(&dual(&dual(&p)), &p));
        }
    }

    #[test]
    fn meet_is_greatest_lower_bound(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let ring = f(3);
        let (p, q) = (random::pair(&mut rng, ring, 2, 2, 2, 0), random::pair(&mut rng, ring, 2, 2, 2, 0));
        // Force r below both half of the time.
        let r = if rng.gen_bool(0.5) {
            meet(&meet(&p, &q).unwrap(), &random::pair(&mut rng, ring, 2, 2, 2, 0)).unwrap()
        } else {
            random::pair(&mut rng, ring, 2, 2, 2, 0)
        };
        let below_p = decide_leq(&r, &p).unwrap();
        let below_q = decide_leq(&r, &q).unwrap();
        if let (Verdict::Proved(to_p), Verdict::Proved(to_q)) = (below_p, below_q) {
            prop_assert!(decide_leq(&r, &meet(&p, &q).unwrap()).unwrap().is_proved());
            prop_assert!(meet_universal(&to_p, &to_q).unwrap().verify().unwrap());
        }
        let m = meet_certified(&p, &q).unwrap();
        prop_assert!(m.below_left.verify().unwrap() && m.below_right.verify().unwrap());
    }

    #[test]
    fn duality_reverses_order(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        for q in [2, 3, 5] {
            let n = rng.gen_range(1..=3);
            let p = random::pair(&mut rng, f(q), n, 3, 2, 0);
            let r = random::pair(&mut rng, f(q), n, 3, 2, 0);
            let forward = decide_leq(&p, &r).unwrap().is_proved();
            prop_assert_eq!(forward, decide_leq(&dual(&r), &dual(&p)).unwrap().is_proved());
            let rel = random::rod_relation(&mut rng, f(q), n, 2, 0).unwrap();
            prop_assert!(dual_relation(&rel).unwrap().verify().unwrap());
        }
    }

    #[test]
    fn modular_law(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        for q in [3, 5] {
            let b = random::pair(&mut rng, f(q), 2, 2, 2, 0);
            let a = meet(&b, &random::pair(&mut rng, f(q), 2, 2, 2, 0)).unwrap();
            let c = random::pair(&mut rng, f(q), 2, 2, 2, 0);
            let lhs = meet(&join(&a, &c).unwrap(), &b).unwrap();
            let rhs = join(&a, &meet(&b, &c).unwrap()).unwrap();
            prop_assert!(same_class(&lhs, &rhs));
        }
    }

    #[test]
    fn absorption_and_idempotence(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let ring = f(5);
        let p = random::pair(&mut rng, ring, 3, 3, 2, 0);
        let q = random::pair(&mut rng, ring, 3, 3, 2, 0);
        prop_assert!(same_class(&meet(&p, &p).unwrap(), &p));
        prop_assert!(same_class(&join(&p, &p).unwrap(), &p));
        prop_assert!(same_class(&meet(&p, &join(&p, &q).unwrap()).unwrap(), &p));
        prop_assert!(same_class(&join(&p, &meet(&p, &q).unwrap()).unwrap(), &p));
    }

    #[test]
    fn extremes_agree_with_canonical_form(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let ring = f(2);
        let n = rng.gen_range(1..=3);
        let p = random::pair(&mut rng, ring, n, 3, 2, 0);
        let canon = canonical_form(&p).unwrap();
        prop_assert_eq!(is_top(&p).unwrap().is_some(), canon.rows() == 0);
        prop_assert_eq!(is_bottom(&p).unwrap().is_some(), canon.rows() == n);
    }

    #[test]
    fn systems_are_equivalent(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let p = random::pair(&mut rng, f(5), 3, 3, 3, 0);
        let red = to_system(&p).unwrap();
        prop_assert!(red.forward.verify().unwrap() && red.backward.verify().unwrap());
        prop_assert_eq!(red.forward.source(), &p);
        prop_assert_eq!(red.backward.target(), &p);
    }

    #[test]
    fn pid_reduction_is_equivalent(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let p = random::pair(&mut rng, RingSpec::integers(), 2, 3, 3, 9);
        let red = pid_reduce_certified(&p).unwrap();
        prop_assert!(red.forward.verify().unwrap() && red.backward.verify().unwrap());
        prop_assert_eq!(red.factors.len(), p.rows());
    }

    #[test]
    fn certificates_transport_along_ring_maps(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let z = RingSpec::integers();
        let rel = random::rod_relation(&mut rng, z, 2, 2, 3).unwrap();
        for to in [RingSpec::mod_ring(6).unwrap(), f(2), f(3)] {
            let hom = RingHom::new(z, to).unwrap();
            let image = map_relation(&hom, &rel).unwrap();
            prop_assert!(image.verify().unwrap());
            prop_assert_eq!(image.source(), &map_pair(&hom, rel.source()).unwrap());
        }
    }

    #[test]
    fn decide_is_sound_over_finite_rings(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let ring = RingSpec::mod_ring(6).unwrap();
        let p = random::pair(&mut rng, ring, 1, 2, 1, 0);
        let q = random::pair(&mut rng, ring, 1, 2, 1, 0);
        match decide_leq(&p, &q).unwrap() {
            Verdict::Proved(rel) => prop_assert!(rel.verify().unwrap()),
            Verdict::Disproved(_) | Verdict::Unknown(_) => {}
        }
        let rel = random::rod_relation(&mut rng, ring, 1, 2, 0).unwrap();
        prop_assert!(decide_leq(rel.source(), rel.target()).unwrap().is_proved());
    }
}

#[test]
fn reflexivity_and_transitivity() {
    let mut rng: Rand = random::rng(7);
    for ring in rings() {
        let chain = random::rod_chain(&mut rng, ring, 2, 2, 2, 3).unwrap();
        let id = CertifiedRelation::identity(chain[0].source());
        assert!(id.verify().unwrap());
        let rel = compose(&compose(&id, &chain[0]).unwrap(), &chain[1]).unwrap();
        assert!(rel.verify().unwrap());
        assert!(compose(&chain[1], &chain[0]).is_err() || chain[1].target() == chain[0].source());
    }
}

#[test]
fn corrupted_certificate_fails() {
    let ring = RingSpec::integers();
    let p = MatrixPair::new(Matrix::from_i64(ring, 1, &[&[2]]), Matrix::from_i64(ring, 1, &[&[1]])).unwrap();
    let q = MatrixPair::new(Matrix::from_i64(ring, 1, &[&[4]]), Matrix::from_i64(ring, 1, &[&[2]])).unwrap();
    let good = Certificate::new(
        Matrix::from_i64(ring, 1, &[&[2]]),
        Matrix::from_i64(ring, 1, &[&[1]]),
        Matrix::from_i64(ring, 1, &[&[0]]),
    );
    assert!(verify(&good, &p, &q).unwrap());
    let bad = Certificate::new(Matrix::from_i64(ring, 1, &[&[3]]), good.v().clone(), good.g().clone());
    assert!(!verify(&bad, &p, &q).unwrap());
    assert!(CertifiedRelation::new(p, q, bad).is_err());
}

#[test]
fn systems_split_by_arity() {
    let f3 = f(3);
    let a = Matrix::from_i64(f3, 3, &[&[1, 2, 0], &[0, 1, 1]]);
    let b = Matrix::from_i64(f3, 3, &[&[1, 2, 0]]);
    let rel = decide_leq(&MatrixPair::system(a), &MatrixPair::system(b)).unwrap();
    let Verdict::Proved(rel) = rel else { panic!("expected a certificate") };
    assert!(split_system(&rel, 2).unwrap().verify().unwrap());
}

#[test]
fn disproof_over_fields_returns_a_solution() {
    let f3 = f(3);
    let p = parse_pair(f3, "[|2x2[1,0;0,0]]").unwrap();
    let q = parse_pair(f3, "[|1x2[1,1]]").unwrap();
    match decide_leq(&p, &q).unwrap() {
        Verdict::Disproved(matpair::pair::Refutation::SolutionVector(v)) => {
            assert!(p.a().mul(&v).unwrap().is_zero());
            assert!(!q.a().mul(&v).unwrap().is_zero());
        }
        other => panic!("{other:?}"),
    }
}
