use crate::error::{Error, Result};
use crate::linalg::{nullspace, solve_left};
use crate::matrix::Matrix;
use crate::semantics::{eval_pair, standard_battery, FiniteModule};

use super::certificate::{compose_all, Certificate, CertifiedRelation};
use super::normal::to_system;
use super::{same_arity, MatrixPair};

/// Why `p <= q` fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refutation {
    /// A column vector solving the system of `p` but not that of `q`
    /// (fields).
    SolutionVector(Matrix),
    /// A tuple of the finite module lying in `p(M)` but not in `q(M)`.
    Witness { module: FiniteModule, tuple: Vec<u64> },
    /// The linear system for `(U, V, G)` has no solution.
    NoCertificate,
}

#[derive(Clone, Debug)]
pub enum Verdict {
    Proved(CertifiedRelation),
    Disproved(Refutation),
    Unknown(String),
}

impl Verdict {
    pub fn is_proved(&self) -> bool {
        matches!(self, Verdict::Proved(_))
    }

    pub fn is_disproved(&self) -> bool {
        matches!(self, Verdict::Disproved(_))
    }
}

#[derive(Clone, Debug)]
pub struct DecideOptions {
    /// Largest number of unknowns in `(U, V, G)` attempted over `Z` or `Z/n`.
    pub max_unknowns: usize,
    /// Largest number of scalar equations attempted over `Z` or `Z/n`.
    pub max_equations: usize,
    /// Search the standard module battery for an explicit witness when a
    /// finite-ring relation is refuted.
    pub find_witness: bool,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions { max_unknowns: 400, max_equations: 400, find_witness: true }
    }
}

pub fn decide_leq(p: &MatrixPair, q: &MatrixPair) -> Result<Verdict> {
    decide_leq_with(p, q, &DecideOptions::default())
}

pub fn decide_leq_with(p: &MatrixPair, q: &MatrixPair, opts: &DecideOptions) -> Result<Verdict> {
    same_arity(p, q)?;
    if p.ring().is_field() {
        decide_field(p, q)
    } else {
        decide_linear(p, q, opts)
    }
}

/// Both `p <= q` and `q <= p` proved.
pub fn equivalent(p: &MatrixPair, q: &MatrixPair) -> Result<bool> {
    Ok(decide_leq(p, q)?.is_proved() && decide_leq(q, p)?.is_proved())
}

fn decide_field(p: &MatrixPair, q: &MatrixPair) -> Result<Verdict> {
    let rp = to_system(p)?;
    let rq = to_system(q)?;
    let (ap, aq) = (&rp.system, &rq.system);
    let pivots: Vec<usize> = (0..ap.rows())
        .map(|i| (0..ap.cols()).find(|&j| !ap.ring().is_zero(ap.get(i, j))).expect("rref rows are nonzero"))
        .collect();
    let u = aq.select_columns(&pivots);
    if &u.mul(ap)? == aq {
        let ring = p.ring();
        let step = CertifiedRelation::new(
            MatrixPair::system(ap.clone()),
            MatrixPair::system(aq.clone()),
            Certificate::new(u, Matrix::zeros(ring, 0, 0), Matrix::zeros(ring, 0, p.arity())),
        )?;
        let rel = compose_all(&[rp.forward, step, rq.backward])?;
        return Ok(Verdict::Proved(rel));
    }
    let basis = nullspace(ap)?;
    for i in 0..basis.rows() {
        let x = basis.row(i).transpose();
        if !aq.mul(&x)?.is_zero() {
            return Ok(Verdict::Disproved(Refutation::SolutionVector(x)));
        }
    }
    unreachable!("row space not contained yet every kernel vector of A_p is a kernel vector of A_q")
}

fn decide_linear(p: &MatrixPair, q: &MatrixPair, opts: &DecideOptions) -> Result<Verdict> {
    let ring = p.ring();
    let (m, k, n) = (p.rows(), p.width(), p.arity());
    let (m2, k2) = (q.rows(), q.width());
    let nu = m2 * m;
    let nv = k2 * k;
    let unknowns = nu + nv + k2 * n;
    let equations = m2 * (k + n);
    if unknowns > opts.max_unknowns || equations > opts.max_equations {
        return Ok(Verdict::Unknown(format!(
            "certificate system has {unknowns} unknowns and {equations} equations (caps {} and {})",
            opts.max_unknowns, opts.max_equations
        )));
    }
    // Unknowns: U[i,l] -> i*m + l, V[l,j] -> nu + l*k + j, G[l,j] -> nu + nv + l*n + j.
    let mut coeff = Matrix::zeros(ring, equations, unknowns);
    let mut rhs = Matrix::zeros(ring, equations, 1);
    let (b, a, b2, a2) = (p.b(), p.a(), q.b(), q.a());
    for i in 0..m2 {
        // (U B - B' V)[i, j] = 0
        for j in 0..k {
            let row = i * k + j;
            for l in 0..m {
                coeff.set(row, i * m + l, b.get(l, j).clone());
            }
            for l in 0..k2 {
                coeff.set(row, nu + l * k + j, ring.neg(b2.get(i, l)));
            }
        }
        // (U A - B' G)[i, j] = A'[i, j]
        for j in 0..n {
            let row = m2 * k + i * n + j;
            for l in 0..m {
                coeff.set(row, i * m + l, a.get(l, j).clone());
            }
            for l in 0..k2 {
                coeff.set(row, nu + nv + l * n + j, ring.neg(b2.get(i, l)));
            }
            rhs.set(row, 0, a2.get(i, j).clone());
        }
    }
    let Some(x) = solve_left(&coeff, &rhs)? else {
        if opts.find_witness && ring.is_finite() {
            if let Some(w) = find_witness(p, q)? {
                return Ok(Verdict::Disproved(w));
            }
        }
        return Ok(Verdict::Disproved(Refutation::NoCertificate));
    };
    let x = |idx: usize| x.get(idx, 0).clone();
    let u = Matrix::from_fn(ring, m2, m, |i, l| x(i * m + l));
    let v = Matrix::from_fn(ring, k2, k, |l, j| x(nu + l * k + j));
    let g = Matrix::from_fn(ring, k2, n, |l, j| x(nu + nv + l * n + j));
    Ok(Verdict::Proved(CertifiedRelation::new(p.clone(), q.clone(), Certificate::new(u, v, g))?))
}

fn find_witness(p: &MatrixPair, q: &MatrixPair) -> Result<Option<Refutation>> {
    for module in standard_battery(p.ring())? {
        let (sp, sq) = match (eval_pair(p, &module), eval_pair(q, &module)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(Error::ScaleCap { .. }), _) | (_, Err(Error::ScaleCap { .. })) => continue,
            (Err(e), _) | (_, Err(e)) => return Err(e),
        };
        if let Some(t) = sp.elements().iter().find(|t| !sq.contains(t)) {
            return Ok(Some(Refutation::Witness { module, tuple: t.clone() }));
        }
    }
    Ok(None)
}
