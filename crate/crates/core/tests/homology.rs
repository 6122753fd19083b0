use std::collections::BTreeSet;

use matpair::homology::{
    boundary_matrix, chain_basis, enumerate_classes, face_e, face_n, homology, is_degenerate, presentation_h1,
    ClassKey,
};
use matpair::linalg::rank;
use matpair::pair::{dual, join, meet};
use matpair::random;
use matpair::{Matrix, MatrixPair, RingSpec};
use proptest::prelude::*;
use rand::Rng;

/// Number of subspaces of `F_q^n`, counted by brute force over spanning
/// sets of at most `n` vectors.
fn subspace_count(q: u64, n: usize) -> usize {
    let f = RingSpec::prime_field(q).unwrap();
    let vectors: Vec<Matrix> = (0..q.pow(n as u32))
        .map(|mut c| {
            Matrix::from_fn(f, 1, n, |_, _| {
                let v = c % q;
                c /= q;
                matpair::Scalar::Residue(v)
            })
        })
        .collect();
    let mut spaces = BTreeSet::new();
    let total = vectors.len();
    for code in 0..total.pow(n as u32) {
        let mut c = code;
        let rows: Vec<&Matrix> = (0..n)
            .map(|_| {
                let v = &vectors[c % total];
                c /= total;
                v
            })
            .collect();
        let m = Matrix::vstack(&rows).unwrap();
        spaces.insert(ClassKey::of_system(&m).unwrap());
    }
    spaces.len()
}

fn random_key(rng: &mut random::Rand, q: u64, arity: usize) -> ClassKey {
    let f = RingSpec::prime_field(q).unwrap();
    ClassKey::of_pair(&random::pair(rng, f, arity, 3, 2, 0)).unwrap()
}

#[test]
fn class_counts_match_subspace_counts() {
    for (q, n) in [(2, 1), (2, 2), (3, 2), (2, 3), (3, 3)] {
        assert_eq!(enumerate_classes(q, n).unwrap().len(), subspace_count(q, n), "q={q} n={n}");
    }
    assert_eq!(enumerate_classes(7, 3).unwrap().len(), 116);
}

#[test]
fn binary_degeneracy_is_symmetric() {
    for q in [2, 3, 5] {
        for c in enumerate_classes(q, 2).unwrap() {
            let at = |i| face_e(&c, i).unwrap() == face_n(&c, i).unwrap();
            assert_eq!(at(0), at(1), "{c}");
            assert_eq!(is_degenerate(&c).unwrap(), at(0));
        }
    }
}

#[test]
fn faces_respect_extremes() {
    for q in [2, 3] {
        let f = RingSpec::prime_field(q).unwrap();
        for n in 1..=3 {
            let bottom = ClassKey::of_pair(&MatrixPair::bottom(f, n)).unwrap();
            let top = ClassKey::of_pair(&MatrixPair::top(f, n)).unwrap();
            for i in 0..n {
                assert!(face_n(&bottom, i).unwrap().is_bottom());
                assert!(face_e(&bottom, i).unwrap().is_bottom());
                assert!(face_e(&top, i).unwrap().is_top());
                assert!(face_n(&top, i).unwrap().is_top());
            }
        }
    }
}

#[test]
fn boundaries_compose_to_zero() {
    for q in [2, 3, 5, 7] {
        let (d0, d1, d2) = (boundary_matrix(q, 0).unwrap(), boundary_matrix(q, 1).unwrap(), boundary_matrix(q, 2).unwrap());
        assert!(d1.mul(&d0).unwrap().is_zero());
        assert!(d2.mul(&d1).unwrap().is_zero());
    }
}

#[test]
fn homology_in_low_dimensions() {
    for q in [2, 3, 5] {
        let h0 = homology(q, 0).unwrap();
        assert_eq!((h0.free_rank, h0.torsion.len()), (1, 0));
    }
    for (q, order) in [(2, 1), (3, 1), (5, 2), (7, 3), (11, 5), (13, 6)] {
        let h1 = homology(q, 1).unwrap();
        assert!(h1.is_cyclic_of_order(order), "q={q}: {h1}");
        assert_eq!(presentation_h1(q).unwrap(), h1);
    }
    for q in [17, 19, 23] {
        assert!(presentation_h1(q).unwrap().is_cyclic_of_order((q - 1) / 2));
    }
    assert!(homology(5, 2).is_err());
}

#[test]
fn boundary_ranks() {
    // C_1 over F_q has q - 1 generators and H_1 is finite, so d2 has full
    // column rank over Q.
    for q in [3, 5, 7] {
        let d2 = boundary_matrix(q, 2).unwrap();
        let qq = RingSpec::rationals();
        let over_q = d2.map_into(qq, |s| qq.from_bigint(&RingSpec::integers().lift(s).unwrap()));
        assert_eq!(rank(&over_q).unwrap(), (q - 1) as usize);
        assert_eq!(chain_basis(q, 1).unwrap().len(), (q - 1) as usize);
    }
}

#[test]
fn structured_boundary_round_trips() {
    let d = boundary_matrix(3, 2).unwrap();
    let text = d.to_string();
    assert_eq!(matpair::text::parse_matrix(RingSpec::integers(), &text).unwrap(), d);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn dual_faces(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let q = [2, 3, 5][rng.gen_range(0..3)];
        let arity = rng.gen_range(1..=3);
        let c = random_key(&mut rng, q, arity);
        for i in 0..arity {
            let lhs = face_e(&ClassKey::of_pair(&dual(&c.pair())).unwrap(), i).unwrap();
            let rhs = ClassKey::of_pair(&dual(&face_n(&c, i).unwrap().pair())).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn bottom_faces_preserve_meets_and_top_faces_joins(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let q = [2, 3, 5][rng.gen_range(0..3)];
        let arity = rng.gen_range(1..=3);
        let (c, d) = (random_key(&mut rng, q, arity), random_key(&mut rng, q, arity));
        let m = ClassKey::of_pair(&meet(&c.pair(), &d.pair()).unwrap()).unwrap();
        let j = ClassKey::of_pair(&join(&c.pair(), &d.pair()).unwrap()).unwrap();
        for i in 0..arity {
            let nm = ClassKey::of_pair(&meet(&face_n(&c, i).unwrap().pair(), &face_n(&d, i).unwrap().pair()).unwrap()).unwrap();
            prop_assert_eq!(face_n(&m, i).unwrap(), nm);
            let ej = ClassKey::of_pair(&join(&face_e(&c, i).unwrap().pair(), &face_e(&d, i).unwrap().pair()).unwrap()).unwrap();
            prop_assert_eq!(face_e(&j, i).unwrap(), ej);
        }
    }
}
