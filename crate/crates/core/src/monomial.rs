use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// A power product `x^alpha` stored as a dense exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    exps: SmallVec<[u32; 8]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: SmallVec::from_elem(0, nvars) }
    }

    pub fn new(exps: impl Into<Vec<u32>>) -> Self {
        Monomial { exps: SmallVec::from_vec(exps.into()) }
    }

    pub fn from_slice(exps: &[u32]) -> Self {
        Monomial { exps: SmallVec::from_slice(exps) }
    }

    /// The variable `x_i` in a ring with `nvars` variables.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[i] = 1;
        m
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i]
    }

    /// Total degree.
    #[inline]
    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    fn check_dims(&self, other: &Monomial) -> Result<()> {
        if self.nvars() != other.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), found: other.nvars() });
        }
        Ok(())
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        self.check_dims(other)?;
        let mut exps = SmallVec::with_capacity(self.nvars());
        for (a, b) in self.exps.iter().zip(other.exps.iter()) {
            exps.push(a.checked_add(*b).ok_or_else(|| {
                Error::ExponentOverflow(format!("{a} + {b} exceeds u32"))
            })?);
        }
        Ok(Monomial { exps })
    }

    /// Product; panics on exponent overflow or dimension mismatch.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("monomial product")
    }

    pub fn checked_pow(&self, k: u64) -> Result<Monomial> {
        let mut exps = SmallVec::with_capacity(self.nvars());
        for &a in self.exps.iter() {
            let e = (a as u64)
                .checked_mul(k)
                .filter(|&e| e <= u32::MAX as u64)
                .ok_or_else(|| Error::ExponentOverflow(format!("{a} * {k} exceeds u32")))?;
            exps.push(e as u32);
        }
        Ok(Monomial { exps })
    }

    /// `self | other`
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial { exps: self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a - b).collect() })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(other.exps.iter()).map(|(a, b)| *a.max(b)).collect() }
    }

    /// True when the monomials share no variable.
    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Index of the variable when this is a pure power `x_i^e` with `e >= 1`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    /// Insert `count` zero exponents at the front.
    pub fn prepend_vars(&self, count: usize) -> Monomial {
        let mut exps: SmallVec<[u32; 8]> = SmallVec::from_elem(0, count);
        exps.extend_from_slice(&self.exps);
        Monomial { exps }
    }

    /// Drop the first `count` exponents; `None` if any of them is nonzero.
    pub fn strip_front_vars(&self, count: usize) -> Option<Monomial> {
        if self.exps[..count].iter().any(|&e| e != 0) {
            return None;
        }
        Some(Monomial::from_slice(&self.exps[count..]))
    }

    pub fn fmt_with(&self, names: &[String], f: &mut impl fmt::Write) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_char('*')?;
            }
            first = false;
            f.write_str(&names[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_char('1')?;
        }
        Ok(())
    }

    pub fn render(&self, names: &[String]) -> String {
        let mut s = String::new();
        self.fmt_with(names, &mut s).unwrap();
        s
    }
}

/// All monomials of total degree `deg` in `nvars` variables.
pub fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial::from_slice(cur));
            cur[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if nvars == 0 {
        if deg == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(0, deg, &mut cur, &mut out);
    out
}
