//! Evaluation of pairs on finite modules.
//!
//! A finite module over `F<p>` or `Z/<n>` is a direct sum of cyclic modules
//! `Z/d_1 + ... + Z/d_t`. Its elements are `t`-tuples of residues, and an
//! element of `M^n` is stored flattened: coordinate `j`, component `c` sits
//! at index `j * t + c`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::pair::{dual, join, meet, verify, Certificate, CertifiedRelation, MatrixPair};
use crate::ring::{RingKind, RingSpec};

/// Environment variable overriding [`DEFAULT_CAP`].
pub const CAP_ENV: &str = "MATPAIR_EVAL_CAP";
pub const DEFAULT_CAP: u128 = 1_000_000;

/// Enumeration cap: `MATPAIR_EVAL_CAP` if set and valid, else [`DEFAULT_CAP`].
pub fn default_cap() -> u128 {
    std::env::var(CAP_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_CAP)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteModule {
    ring: RingSpec,
    orders: Vec<u64>,
}

impl FiniteModule {
    pub fn new(ring: RingSpec, orders: Vec<u64>) -> Result<Self> {
        let n = match ring.kind() {
            RingKind::PrimeField(p) | RingKind::ModRing(p) => p,
            _ => return Err(Error::UnsupportedRing { ring, op: "finite module" }),
        };
        for &d in &orders {
            let ok = match ring.kind() {
                RingKind::PrimeField(p) => d == p,
                _ => d >= 2 && n % d == 0,
            };
            if !ok {
                return Err(Error::InvalidModule(format!("cyclic order {d} is not allowed over {ring}")));
            }
        }
        Ok(FiniteModule { ring, orders })
    }

    /// The ring as a module over itself.
    pub fn regular(ring: RingSpec) -> Result<Self> {
        let n = ring.modulus().ok_or(Error::UnsupportedRing { ring, op: "finite module" })?;
        Self::new(ring, vec![n])
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn size(&self) -> u128 {
        self.orders.iter().map(|&d| d as u128).product()
    }

    pub fn direct_sum(&self, other: &FiniteModule) -> Result<FiniteModule> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        let mut orders = self.orders.clone();
        orders.extend_from_slice(&other.orders);
        Ok(FiniteModule { ring: self.ring, orders })
    }

    fn power_size(&self, n: usize) -> u128 {
        let s = self.size();
        (0..n).try_fold(1u128, |acc, _| acc.checked_mul(s)).unwrap_or(u128::MAX)
    }

    /// All elements of `M^n`, in lexicographic order.
    pub fn power_elements(&self, n: usize, cap: u128) -> Result<Vec<Vec<u64>>> {
        let size = self.power_size(n);
        if size > cap {
            return Err(Error::ScaleCap { what: "module power", size, cap });
        }
        let radix: Vec<u64> = (0..n).flat_map(|_| self.orders.iter().copied()).collect();
        let mut out = Vec::with_capacity(size as usize);
        let mut cur = vec![0u64; radix.len()];
        loop {
            out.push(cur.clone());
            let mut i = radix.len();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < radix[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let t = self.rank();
        x.iter().zip(y).enumerate().map(|(i, (a, b))| (a + b) % self.orders[i % t]).collect()
    }

    fn neg(&self, x: &[u64]) -> Vec<u64> {
        let t = self.rank();
        x.iter().enumerate().map(|(i, a)| (self.orders[i % t] - a) % self.orders[i % t]).collect()
    }

    /// `mat * x` for `x` in `M^{mat.cols}`.
    fn apply(&self, mat: &[Vec<u64>], cols: usize, x: &[u64]) -> Vec<u64> {
        let t = self.rank();
        let mut out = vec![0u64; mat.len() * t];
        for (i, row) in mat.iter().enumerate() {
            for j in 0..cols {
                let r = row[j];
                if r == 0 {
                    continue;
                }
                for c in 0..t {
                    let d = self.orders[c] as u128;
                    let cur = out[i * t + c] as u128;
                    out[i * t + c] = ((cur + (r as u128 % d) * x[j * t + c] as u128) % d) as u64;
                }
            }
        }
        out
    }

    /// `g_c * column_j(mat)` for every column `j` and component `c`: the
    /// generators of `mat * M^{cols}`.
    fn column_generators(&self, mat: &[Vec<u64>], cols: usize) -> Vec<Vec<u64>> {
        let t = self.rank();
        let mut gens = Vec::new();
        for j in 0..cols {
            for c in 0..t {
                let mut x = vec![0u64; cols * t];
                x[j * t + c] = 1;
                gens.push(self.apply(mat, cols, &x));
            }
        }
        gens
    }

    /// Subgroup of `M^len` generated by `gens`.
    fn closure(&self, len: usize, gens: &[Vec<u64>], cap: u128) -> Result<HashSet<Vec<u64>>> {
        let zero = vec![0u64; len * self.rank()];
        let mut seen = HashSet::from([zero.clone()]);
        let mut queue = VecDeque::from([zero]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = self.add(&x, g);
                if seen.insert(y.clone()) {
                    if seen.len() as u128 > cap {
                        return Err(Error::ScaleCap { what: "subgroup closure", size: seen.len() as u128, cap });
                    }
                    queue.push_back(y);
                }
            }
        }
        Ok(seen)
    }
}

impl fmt::Display for FiniteModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.orders.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" (+) "))
    }
}

/// Divisors `d > 1` of the modulus as cyclic modules, followed by
/// `Z/p + Z/n` for the least prime `p | n`.
pub fn standard_battery(ring: RingSpec) -> Result<Vec<FiniteModule>> {
    let n = ring.modulus().ok_or(Error::UnsupportedRing { ring, op: "finite module battery" })?;
    let mut out = Vec::new();
    for d in (2..=n).filter(|d| n % d == 0) {
        out.push(FiniteModule::new(ring, vec![d])?);
    }
    let p = (2..=n).find(|d| n % d == 0).expect("n >= 2");
    out.push(FiniteModule::new(ring, vec![p, n])?);
    Ok(out)
}

/// A subgroup of `M^n` listed element by element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupOfPower {
    module: FiniteModule,
    arity: usize,
    elements: BTreeSet<Vec<u64>>,
}

impl SubgroupOfPower {
    pub fn module(&self) -> &FiniteModule {
        &self.module
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn elements(&self) -> &BTreeSet<Vec<u64>> {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: &Vec<u64>) -> bool {
        self.elements.contains(x)
    }

    pub fn is_subset(&self, other: &SubgroupOfPower) -> bool {
        self.elements.is_subset(&other.elements)
    }

    /// Contains zero and is closed under addition and negation.
    pub fn is_subgroup(&self) -> bool {
        let m = &self.module;
        let zero = vec![0u64; self.arity * m.rank()];
        self.elements.contains(&zero)
            && self.elements.iter().all(|x| self.elements.contains(&m.neg(x)))
            && self.elements.iter().all(|x| self.elements.iter().all(|y| self.elements.contains(&m.add(x, y))))
    }

    pub fn intersection(&self, other: &SubgroupOfPower) -> SubgroupOfPower {
        SubgroupOfPower {
            module: self.module.clone(),
            arity: self.arity,
            elements: self.elements.intersection(&other.elements).cloned().collect(),
        }
    }

    /// `S + T`.
    pub fn sum(&self, other: &SubgroupOfPower) -> SubgroupOfPower {
        let m = &self.module;
        let mut elements = BTreeSet::new();
        for x in &self.elements {
            for y in &other.elements {
                elements.insert(m.add(x, y));
            }
        }
        SubgroupOfPower { module: m.clone(), arity: self.arity, elements }
    }

    /// The whole of `M^n`.
    pub fn full(module: &FiniteModule, n: usize, cap: u128) -> Result<SubgroupOfPower> {
        Ok(SubgroupOfPower { module: module.clone(), arity: n, elements: module.power_elements(n, cap)?.into_iter().collect() })
    }

    pub fn zero(module: &FiniteModule, n: usize) -> SubgroupOfPower {
        SubgroupOfPower {
            module: module.clone(),
            arity: n,
            elements: BTreeSet::from([vec![0u64; n * module.rank()]]),
        }
    }
}

fn residues(m: &Matrix) -> Vec<Vec<u64>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).residue().expect("finite ring entry")).collect())
        .collect()
}

fn check_ring(p: &MatrixPair, module: &FiniteModule) -> Result<()> {
    if p.ring() != module.ring() {
        return Err(Error::RingMismatch(p.ring(), module.ring()));
    }
    Ok(())
}

/// `{ a in M^n : B c = A a for some c in M^k }`.
pub fn eval_pair(p: &MatrixPair, module: &FiniteModule) -> Result<SubgroupOfPower> {
    eval_pair_with_cap(p, module, default_cap())
}

pub fn eval_pair_with_cap(p: &MatrixPair, module: &FiniteModule, cap: u128) -> Result<SubgroupOfPower> {
    check_ring(p, module)?;
    let b = residues(p.b());
    let a = residues(p.a());
    let n = p.arity();
    let candidates = module.power_elements(n, cap)?;
    let image = module.closure(p.rows(), &module.column_generators(&b, p.width()), cap)?;
    let elements = candidates.into_iter().filter(|x| image.contains(&module.apply(&a, n, x))).collect();
    Ok(SubgroupOfPower { module: module.clone(), arity: n, elements })
}

/// `{ a in K^n : w A = a and w B = 0 for some row vector w in K^m }`.
pub fn dual_eval(p: &MatrixPair, module: &FiniteModule) -> Result<SubgroupOfPower> {
    dual_eval_with_cap(p, module, default_cap())
}

pub fn dual_eval_with_cap(p: &MatrixPair, module: &FiniteModule, cap: u128) -> Result<SubgroupOfPower> {
    check_ring(p, module)?;
    // (w B, w A) ranges over the span of g_c * (row_i B, row_i A); that is
    // the image of the transposed joined matrix.
    let joined_t = residues(&p.joined().transpose());
    let (k, n) = (p.width(), p.arity());
    let t = module.rank();
    let span = module.closure(k + n, &module.column_generators(&joined_t, p.rows()), cap)?;
    let elements = span
        .into_iter()
        .filter(|x| x[..k * t].iter().all(|&v| v == 0))
        .map(|x| x[k * t..].to_vec())
        .collect();
    Ok(SubgroupOfPower { module: module.clone(), arity: n, elements })
}

/// `Ev(p ^ q) = Ev(p) & Ev(q)` and `Ev(p + q) = Ev(p) + Ev(q)` on `module`.
pub fn ev_lattice_laws(p: &MatrixPair, q: &MatrixPair, module: &FiniteModule) -> Result<bool> {
    let ep = eval_pair(p, module)?;
    let eq = eval_pair(q, module)?;
    let em = eval_pair(&meet(p, q)?, module)?;
    let ej = eval_pair(&join(p, q)?, module)?;
    Ok(em == ep.intersection(&eq) && ej == ep.sum(&eq))
}

/// `Ev(1_n) = M^n` and `Ev(0_n) = 0`.
pub fn ev_extremes(module: &FiniteModule, n: usize) -> Result<bool> {
    let ring = module.ring();
    let cap = default_cap();
    let top = eval_pair(&MatrixPair::top(ring, n), module)?;
    let bottom = eval_pair(&MatrixPair::bottom(ring, n), module)?;
    Ok(top == SubgroupOfPower::full(module, n, cap)? && bottom == SubgroupOfPower::zero(module, n))
}

/// Inclusion `Ev(source) <= Ev(target)` on every module; the certificate is
/// re-verified first.
pub fn check_presta_soundness(rel: &CertifiedRelation, modules: &[FiniteModule]) -> Result<bool> {
    check_presta_soundness_parts(rel.cert(), rel.source(), rel.target(), modules)
}

/// As [`check_presta_soundness`] for a certificate that has not been wrapped
/// yet; a certificate that fails verification is an error.
pub fn check_presta_soundness_parts(
    cert: &Certificate,
    source: &MatrixPair,
    target: &MatrixPair,
    modules: &[FiniteModule],
) -> Result<bool> {
    if !verify(cert, source, target)? {
        return Err(Error::UnverifiedCertificate);
    }
    for m in modules {
        if !eval_pair(source, m)?.is_subset(&eval_pair(target, m)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `K (x) M` as cyclic components `Z/gcd(a_s, b_t)`, in `(s, t)` order.
pub fn tensor_orders(k: &FiniteModule, m: &FiniteModule) -> Vec<u64> {
    k.orders().iter().flat_map(|a| m.orders().iter().map(move |b| a.gcd(b))).collect()
}

/// `sum_i a_i (x) b_i` for `a` in `K^n`, `b` in `M^n`.
pub fn tensor_pairing(k: &FiniteModule, m: &FiniteModule, a: &[u64], b: &[u64]) -> Vec<u64> {
    let (s, t) = (k.rank(), m.rank());
    let n = if s == 0 { 0 } else { a.len() / s };
    let orders = tensor_orders(k, m);
    let mut out = vec![0u64; s * t];
    for i in 0..n {
        for x in 0..s {
            for y in 0..t {
                let d = orders[x * t + y] as u128;
                let v = (a[i * s + x] as u128 % d) * (b[i * t + y] as u128 % d) % d;
                out[x * t + y] = ((out[x * t + y] as u128 + v) % d) as u64;
            }
        }
    }
    out
}

/// A pair `(a, b)` with `a` in `dual(target)(K)`, `b` in `source(M)` and
/// `a (x) b != 0`, if any.
pub fn tensor_witness(
    source: &MatrixPair,
    target: &MatrixPair,
    k: &FiniteModule,
    m: &FiniteModule,
) -> Result<Option<(Vec<u64>, Vec<u64>)>> {
    if k.ring() != m.ring() {
        return Err(Error::RingMismatch(k.ring(), m.ring()));
    }
    let left = dual_eval(target, k)?;
    let right = eval_pair(source, m)?;
    let size = left.len() as u128 * right.len() as u128;
    let cap = default_cap();
    if size > cap.saturating_mul(10) {
        return Err(Error::ScaleCap { what: "pure tensors", size, cap: cap.saturating_mul(10) });
    }
    for a in left.elements() {
        for b in right.elements() {
            if tensor_pairing(k, m, a, b).iter().any(|&v| v != 0) {
                return Ok(Some((a.clone(), b.clone())));
            }
        }
    }
    Ok(None)
}

/// Every pure tensor from `dual(target)(K) x source(M)` vanishes in `K (x) M`.
pub fn tensor_pairing_vanishes(
    source: &MatrixPair,
    target: &MatrixPair,
    k: &FiniteModule,
    m: &FiniteModule,
) -> Result<bool> {
    Ok(tensor_witness(source, target, k, m)?.is_none())
}

/// [`tensor_pairing_vanishes`] for a certified relation, re-verified first.
pub fn tensor_annihilation(rel: &CertifiedRelation, k: &FiniteModule, m: &FiniteModule) -> Result<bool> {
    if !rel.verify()? {
        return Err(Error::UnverifiedCertificate);
    }
    tensor_pairing_vanishes(rel.source(), rel.target(), k, m)
}

/// `dual(p)` evaluated on `K` through [`eval_pair`]; agrees with
/// [`dual_eval`] over commutative rings.
pub fn eval_dual_pair(p: &MatrixPair, k: &FiniteModule) -> Result<SubgroupOfPower> {
    eval_pair(&dual(p), k)
}
