//! The acceptance battery: eleven exact checks with fixed instance counts
//! and time limits, reproducible from a seed.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use rand::Rng;

use crate::error::Result;
use crate::grothendieck::{triangle_check, triangle_check_pair};
use crate::homology::{
    boundary_matrix, boundary_of, chain_basis, enumerate_classes, face_e, face_n, homology, presentation_h1, ClassKey,
};
use crate::matrix::Matrix;
use crate::pair::{canonical_form, decide_leq, dual, join, meet, MatrixPair};
use crate::random::{self, Rand};
use crate::ring::{RingSpec, Scalar};
use crate::semantics::{check_presta_soundness, ev_extremes, ev_lattice_laws, tensor_annihilation, FiniteModule};

/// Outcome of one criterion.
#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:>2}. {} ({}; {:.2?})",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.elapsed
        )
    }
}

/// Instance counts; `quick` shrinks the randomized ones for smoke runs.
#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub quick: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: random::DEFAULT_SEED, quick: false }
    }
}

impl SuiteConfig {
    fn count(&self, full: usize) -> usize {
        if self.quick {
            (full / 10).max(5)
        } else {
            full
        }
    }

    fn rng(&self, id: usize) -> Rand {
        random::rng(self.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(id as u64))
    }
}

pub const CRITERIA: [&str; 11] = [
    "H1 of prime fields is cyclic of order (q-1)/gcd(2,q-1)",
    "H0 of prime fields is Z",
    "H1 presentation agrees with the boundary computation",
    "boundary formulas over F5",
    "chain complex and face relations",
    "Grothendieck triangle",
    "lattice laws",
    "certificate soundness",
    "evaluation lattice structure",
    "tensor annihilation",
    "nondegenerate binary census",
];

type Check = fn(&SuiteConfig) -> Result<(bool, String)>;

const CHECKS: [(Check, Option<u64>); 11] = [
    (h1_orders, Some(30)),
    (h0_free, Some(1)),
    (h1_presentation, None),
    (boundary_formulas, None),
    (chain_complex, None),
    (grothendieck_triangle, Some(10)),
    (lattice_laws, Some(30)),
    (certificate_soundness, None),
    (ev_structure, None),
    (tensors, None),
    (binary_census, None),
];

/// Runs one criterion, `1..=11`. Errors count as failures.
pub fn run_criterion(id: usize, config: &SuiteConfig) -> CriterionResult {
    let (check, limit) = CHECKS[id - 1];
    let start = Instant::now();
    let outcome = check(config);
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match outcome {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    if let Some(secs) = limit {
        if elapsed > Duration::from_secs(secs) {
            passed = false;
            detail = format!("{detail}; over the {secs} s limit");
        }
    }
    CriterionResult { id, name: CRITERIA[id - 1], passed, detail, elapsed }
}

pub fn run_suite(config: &SuiteConfig) -> Vec<CriterionResult> {
    (1..=CRITERIA.len()).map(|id| run_criterion(id, config)).collect()
}

fn tally(ok: usize, total: usize) -> (bool, String) {
    (ok == total, format!("{ok}/{total}"))
}

const H1_FIELDS: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn h1_orders(_: &SuiteConfig) -> Result<(bool, String)> {
    let mut ok = 0;
    let mut seen = Vec::new();
    for q in H1_FIELDS {
        let h = homology(q, 1)?;
        let expected = (q - 1) / if q == 2 { 1 } else { 2 };
        ok += h.is_cyclic_of_order(expected) as usize;
        seen.push(format!("q={q}: {h}"));
    }
    Ok((ok == H1_FIELDS.len(), seen.join(", ")))
}

fn h0_free(_: &SuiteConfig) -> Result<(bool, String)> {
    let mut ok = 0;
    for q in [2, 3, 5] {
        let h = homology(q, 0)?;
        ok += (h.free_rank == 1 && h.torsion.is_empty()) as usize;
    }
    Ok(tally(ok, 3))
}

fn h1_presentation(_: &SuiteConfig) -> Result<(bool, String)> {
    let mut ok = 0;
    for q in H1_FIELDS {
        ok += (presentation_h1(q)? == homology(q, 1)?) as usize;
    }
    Ok(tally(ok, H1_FIELDS.len()))
}

fn row_class(q: u64, entries: &[u64]) -> Result<ClassKey> {
    let f = RingSpec::prime_field(q)?;
    let row = Matrix::new(f, 1, entries.len(), entries.iter().map(|&e| Scalar::Residue(e)).collect())?;
    ClassKey::of_system(&row)
}

fn boundary_formulas(_: &SuiteConfig) -> Result<(bool, String)> {
    let q = 5;
    let f = RingSpec::prime_field(q)?;
    let c1 = chain_basis(q, 1)?;
    let mut ok = 0;
    for s in 1..q {
        for r in 1..q {
            let s_inv_r = f.mul(&f.inv(&Scalar::Residue(s)).expect("unit"), &Scalar::Residue(r)).residue().expect("residue");
            let mut expected = vec![0i64; c1.len()];
            for (entry, coef) in [(r, 1), (s, -1), (s_inv_r, -1)] {
                let key = row_class(q, &[1, entry])?;
                expected[c1.position(&key).expect("nondegenerate")] += coef;
            }
            ok += (boundary_of(&row_class(q, &[1, s, r])?, &c1)? == expected) as usize;
        }
    }
    let d1_zero = boundary_matrix(q, 1)?.is_zero();
    let total = ((q - 1) * (q - 1)) as usize;
    Ok((ok == total && d1_zero, format!("{ok}/{total} rows, d1 = 0: {d1_zero}")))
}

fn face_relations_hold(c: &ClassKey) -> Result<bool> {
    for j in 0..c.arity() {
        for i in 0..j {
            let checks = [
                (face_n(&face_n(c, j)?, i)?, face_n(&face_n(c, i)?, j - 1)?),
                (face_e(&face_e(c, j)?, i)?, face_e(&face_e(c, i)?, j - 1)?),
                (face_n(&face_e(c, j)?, i)?, face_e(&face_n(c, i)?, j - 1)?),
                (face_e(&face_n(c, j)?, i)?, face_n(&face_e(c, i)?, j - 1)?),
            ];
            if checks.iter().any(|(l, r)| l != r) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn chain_complex(_: &SuiteConfig) -> Result<(bool, String)> {
    let mut ok = 0;
    for q in [2, 3, 5, 7] {
        let (d0, d1, d2) = (boundary_matrix(q, 0)?, boundary_matrix(q, 1)?, boundary_matrix(q, 2)?);
        ok += (d1.mul(&d0)?.is_zero() && d2.mul(&d1)?.is_zero()) as usize;
    }
    let mut faces_ok = 0;
    let mut faces_total = 0;
    for q in [2, 3] {
        for c in enumerate_classes(q, 3)? {
            faces_total += 1;
            faces_ok += face_relations_hold(&c)? as usize;
        }
    }
    Ok((
        ok == 4 && faces_ok == faces_total,
        format!("boundaries {ok}/4, face relations {faces_ok}/{faces_total} classes"),
    ))
}

fn grothendieck_triangle(config: &SuiteConfig) -> Result<(bool, String)> {
    let mut rng = config.rng(6);
    let n = config.count(100);
    let mut ok = 0;
    for (ring, bound) in [(RingSpec::prime_field(5)?, 0), (RingSpec::integers(), 9)] {
        for _ in 0..n {
            let rows = rng.gen_range(1..=3);
            let cols = rng.gen_range(1..=4);
            let a = random::matrix(&mut rng, ring, rows, cols, bound);
            let split = rng.gen_range(0..cols);
            let p = MatrixPair::new(a.column_range(0, split), a.column(split))?;
            ok += (triangle_check(&a)? && triangle_check_pair(&p)?) as usize;
        }
    }
    Ok(tally(ok, 2 * n))
}

fn same_class(p: &MatrixPair, q: &MatrixPair) -> Result<bool> {
    Ok(canonical_form(p)? == canonical_form(q)?)
}

fn lattice_instance(rng: &mut Rand, ring: RingSpec) -> Result<bool> {
    let n = rng.gen_range(1..=3);
    let draw = |rng: &mut Rand| random::pair(rng, ring, n, 3, 2, 0);
    let (p, q, c, x) = (draw(rng), draw(rng), draw(rng), draw(rng));
    let b = p.clone();
    let a = meet(&b, &x)?;
    let modular = same_class(&meet(&join(&a, &c)?, &b)?, &join(&a, &meet(&b, &c)?)?)?;
    let absorption = same_class(&meet(&p, &join(&p, &q)?)?, &p)? && same_class(&join(&p, &meet(&p, &q)?)?, &p)?;
    let idempotence = same_class(&meet(&p, &p)?, &p)? && same_class(&join(&p, &p)?, &p)?;
    let involution = same_class(&dual(&dual(&p)), &p)?;
    let reversal = decide_leq(&p, &q)?.is_proved() == decide_leq(&dual(&q), &dual(&p))?.is_proved()
        && decide_leq(&dual(&b), &dual(&a))?.is_proved();
    Ok(modular && absorption && idempotence && involution && reversal)
}

fn lattice_laws(config: &SuiteConfig) -> Result<(bool, String)> {
    let mut rng = config.rng(7);
    let n = config.count(200);
    let mut ok = 0;
    for q in [2, 3, 5] {
        let ring = RingSpec::prime_field(q)?;
        for _ in 0..n {
            ok += lattice_instance(&mut rng, ring)? as usize;
        }
    }
    Ok(tally(ok, 3 * n))
}

/// Three modules per finite ring: `F_q, F_q^2, F_q^3` over a field and
/// `Z/p, Z/n, Z/p + Z/n` over `Z/n` with `p` the least prime factor.
pub fn soundness_battery(ring: RingSpec) -> Result<Vec<FiniteModule>> {
    let n = ring.modulus().ok_or(crate::error::Error::UnsupportedRing { ring, op: "module battery" })?;
    let orders = if ring.is_field() {
        vec![vec![n], vec![n, n], vec![n, n, n]]
    } else {
        let p = (2..=n).find(|d| n % d == 0).expect("n >= 2");
        vec![vec![p], vec![n], vec![p, n]]
    };
    orders.into_iter().map(|o| FiniteModule::new(ring, o)).collect()
}

fn certificate_soundness(config: &SuiteConfig) -> Result<(bool, String)> {
    let mut rng = config.rng(8);
    let n = config.count(1000);
    let mut ok = 0;
    for ring in [RingSpec::prime_field(3)?, RingSpec::integers(), RingSpec::mod_ring(6)?] {
        let battery = if ring.is_finite() { soundness_battery(ring)? } else { vec![] };
        for _ in 0..n {
            let arity = rng.gen_range(1..=2);
            let rel = random::rod_relation(&mut rng, ring, arity, 2, 3)?;
            let sound = battery.is_empty() || check_presta_soundness(&rel, &battery)?;
            ok += (rel.verify()? && sound) as usize;
        }
    }
    Ok(tally(ok, 3 * n))
}

fn ev_structure(config: &SuiteConfig) -> Result<(bool, String)> {
    let mut rng = config.rng(9);
    let ring = RingSpec::mod_ring(6)?;
    let m = FiniteModule::regular(ring)?;
    let n = config.count(100);
    let mut ok = 0;
    for _ in 0..n {
        let arity = rng.gen_range(1..=2);
        let p = random::pair(&mut rng, ring, arity, 2, 2, 0);
        let q = random::pair(&mut rng, ring, arity, 2, 2, 0);
        ok += ev_lattice_laws(&p, &q, &m)? as usize;
    }
    let mut extremes = true;
    for arity in 0..=3 {
        extremes &= ev_extremes(&m, arity)?;
    }
    Ok((ok == n && extremes, format!("{ok}/{n}, extremes: {extremes}")))
}

fn tensors(config: &SuiteConfig) -> Result<(bool, String)> {
    let mut rng = config.rng(10);
    let ring = RingSpec::mod_ring(4)?;
    let modules = [FiniteModule::new(ring, vec![2])?, FiniteModule::new(ring, vec![4])?];
    let n = config.count(200);
    let mut ok = 0;
    for _ in 0..n {
        let arity = rng.gen_range(1..=2);
        let rel = random::rod_relation(&mut rng, ring, arity, 2, 3)?;
        let mut all = true;
        for k in &modules {
            for m in &modules {
                all &= tensor_annihilation(&rel, k, m)?;
            }
        }
        ok += all as usize;
    }
    Ok(tally(ok, n))
}

fn binary_census(_: &SuiteConfig) -> Result<(bool, String)> {
    let mut ok = 0;
    for q in [2, 3, 5, 7] {
        let found: BTreeSet<ClassKey> = chain_basis(q, 1)?.generators.into_iter().collect();
        let expected = (1..q).map(|r| row_class(q, &[1, r])).collect::<Result<BTreeSet<_>>>()?;
        ok += (found == expected && found.len() == (q - 1) as usize) as usize;
    }
    Ok(tally(ok, 4))
}
