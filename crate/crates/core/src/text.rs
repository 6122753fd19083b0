//! Text formats for rings, matrices, pairs and certificates.
//!
//! ```text
//! ring         Q | Z | F<p> | Z/<n>
//! matrix       <rows>x<cols>[e11,e12,...;e21,...]     (body `[]` when empty)
//! pair         [<B> | <A>]  or  [| <A>]              (system: B has width 0)
//! certificate  <U>;<V>;<G>
//! ```
//!
//! Entries are decimal integers or `a/b` fractions. Errors carry the byte
//! offset of the offending token within the input.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::formal::FormalSum;
use crate::matrix::Matrix;
use crate::pair::{Certificate, MatrixPair};
use crate::ring::{RingSpec, Scalar};

fn perr(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

pub fn parse_ring(s: &str) -> Result<RingSpec> {
    let t = s.trim();
    let bad = || Error::InvalidRing(format!("unrecognized ring `{t}` (expected Q, Z, F<p> or Z/<n>)"));
    match t {
        "Q" => Ok(RingSpec::rationals()),
        "Z" => Ok(RingSpec::integers()),
        _ => {
            if let Some(n) = t.strip_prefix("Z/") {
                RingSpec::mod_ring(n.parse().map_err(|_| bad())?)
            } else if let Some(p) = t.strip_prefix('F') {
                RingSpec::prime_field(p.parse().map_err(|_| bad())?)
            } else {
                Err(bad())
            }
        }
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
    base: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str, base: usize) -> Self {
        Cursor { src, pos: 0, base }
    }

    fn at(&self) -> usize {
        self.base + self.pos
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => Err(perr(self.at(), format!("expected `{c}`, found `{x}`"))),
            None => Err(perr(self.at(), format!("expected `{c}`, found end of input"))),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self, what: &str) -> Result<(BigInt, usize)> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut end = start;
        if end < bytes.len() && (bytes[end] == b'-' || bytes[end] == b'+') {
            end += 1;
        }
        let digits = end;
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        if end == digits {
            return Err(perr(self.base + start, format!("expected {what}")));
        }
        self.pos = end;
        let v: BigInt = self.src[start..end].parse().map_err(|_| perr(self.base + start, format!("bad {what}")))?;
        Ok((v, self.base + start))
    }

    fn count(&mut self, what: &str) -> Result<usize> {
        let (v, at) = self.number(what)?;
        usize::try_from(v).map_err(|_| perr(at, format!("{what} must be a nonnegative count")))
    }

    fn entry(&mut self, ring: RingSpec) -> Result<Scalar> {
        let (num, at) = self.number("matrix entry")?;
        if self.eat('/') {
            let (den, _) = self.number("denominator")?;
            return ring.from_fraction(&num, &den).map_err(|e| perr(at, e.to_string()));
        }
        Ok(ring.from_bigint(&num))
    }

    fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(perr(self.at(), format!("unexpected trailing `{c}`"))),
        }
    }
}

fn matrix_at(cur: &mut Cursor<'_>, ring: RingSpec) -> Result<Matrix> {
    let rows = cur.count("row count")?;
    cur.skip_ws();
    if !(cur.eat('x') || cur.eat('X')) {
        return Err(perr(cur.at(), "expected `x` between row and column counts"));
    }
    let cols = cur.count("column count")?;
    cur.expect('[')?;
    let open = cur.at();
    if rows == 0 || cols == 0 {
        cur.expect(']')?;
        return Ok(Matrix::zeros(ring, rows, cols));
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        if i > 0 {
            cur.expect(';')?;
        }
        for j in 0..cols {
            if j > 0 {
                cur.expect(',')?;
            }
            entries.push(cur.entry(ring)?);
        }
    }
    cur.skip_ws();
    if cur.peek() != Some(']') {
        return Err(perr(cur.at(), format!("matrix body starting at {open} does not match {rows}x{cols}")));
    }
    cur.pos += 1;
    Matrix::new(ring, rows, cols, entries)
}

pub fn parse_matrix(ring: RingSpec, s: &str) -> Result<Matrix> {
    let mut cur = Cursor::new(s, 0);
    let m = matrix_at(&mut cur, ring)?;
    cur.finish()?;
    Ok(m)
}

pub fn parse_pair(ring: RingSpec, s: &str) -> Result<MatrixPair> {
    let mut cur = Cursor::new(s, 0);
    cur.expect('[')?;
    let b = if cur.eat('|') {
        None
    } else {
        let b = matrix_at(&mut cur, ring)?;
        cur.expect('|')?;
        Some(b)
    };
    let a_at = {
        cur.skip_ws();
        cur.at()
    };
    let a = matrix_at(&mut cur, ring)?;
    cur.expect(']')?;
    cur.finish()?;
    match b {
        None => Ok(MatrixPair::system(a)),
        Some(b) => MatrixPair::new(b, a).map_err(|e| perr(a_at, e.to_string())),
    }
}

pub fn parse_certificate(ring: RingSpec, s: &str) -> Result<Certificate> {
    let mut cur = Cursor::new(s, 0);
    let u = matrix_at(&mut cur, ring)?;
    cur.expect(';')?;
    let v = matrix_at(&mut cur, ring)?;
    cur.expect(';')?;
    let g = matrix_at(&mut cur, ring)?;
    cur.finish()?;
    Ok(Certificate::new(u, v, g))
}

/// Pair in the `[B | A]` grammar; a left matrix of width zero prints as
/// `[| A]`.
pub fn format_pair(p: &MatrixPair) -> String {
    if p.width() == 0 {
        format!("[| {}]", p.a())
    } else {
        format!("[{} | {}]", p.b(), p.a())
    }
}

pub fn format_certificate(c: &Certificate) -> String {
    format!("{};{};{}", c.u(), c.v(), c.g())
}

/// A formal sum of matrices, one `<coef> <matrix>` term per line; blank
/// lines and lines starting with `#` are skipped, and a lone `0` is the zero
/// sum.
pub fn parse_matrix_sum(ring: RingSpec, s: &str) -> Result<FormalSum<Matrix>> {
    let mut out = FormalSum::zero();
    let mut offset = 0;
    for line in s.split_inclusive('\n') {
        let base = offset;
        offset += line.len();
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') || t == "0" {
            continue;
        }
        let lead = base + (line.len() - line.trim_start().len());
        let split = t.find(char::is_whitespace).ok_or_else(|| perr(lead, "expected `<coef> <matrix>`"))?;
        let coef: i64 = t[..split].parse().map_err(|_| perr(lead, format!("bad coefficient `{}`", &t[..split])))?;
        let rest = &t[split..];
        let mut cur = Cursor::new(rest, lead + split);
        let m = matrix_at(&mut cur, ring)?;
        cur.finish()?;
        out.add_term(m, coef);
    }
    Ok(out)
}
