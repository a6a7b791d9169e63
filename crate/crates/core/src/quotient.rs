use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::ideal::Ideal;
use crate::monomial::{monomials_of_degree, Monomial};
use crate::order::MonomialOrder;
use crate::poly::{PolyRing, Polynomial};
use crate::simplicial::SimplicialComplex;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingKind {
    Free,
    /// `k[X,Y,Z] / (X^N + Y^N + Z^N)`
    DiagonalHypersurface { n: u32 },
    StanleyReisner { complex: SimplicialComplex },
}

/// `R = k[X] / M`. Ideals of `R` are handled through their lifts to the
/// ambient polynomial ring; the modulus is adjoined whenever a quotient
/// computation needs it.
#[derive(Debug, Clone)]
pub struct QuotientRing {
    ambient: Arc<PolyRing>,
    modulus: Ideal,
    kind: RingKind,
    dim: usize,
}

/// `ℓ(R/J)` as a vector-space dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LengthValue {
    Finite(u64),
    Infinite,
}

impl LengthValue {
    pub fn finite(self) -> Option<u64> {
        match self {
            LengthValue::Finite(n) => Some(n),
            LengthValue::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, LengthValue::Finite(_))
    }
}

impl fmt::Display for LengthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LengthValue::Finite(n) => write!(f, "{n}"),
            LengthValue::Infinite => f.write_str("infinite"),
        }
    }
}

impl QuotientRing {
    pub fn free(ambient: &Arc<PolyRing>) -> QuotientRing {
        QuotientRing {
            ambient: ambient.clone(),
            modulus: Ideal::zero(ambient),
            kind: RingKind::Free,
            dim: ambient.nvars(),
        }
    }

    /// `F_p[x,y,z] / (x^N + y^N + z^N)`; requires `N >= 2` and `p ∤ N`.
    pub fn diagonal_hypersurface(field: PrimeField, n: u32) -> Result<QuotientRing> {
        if n < 2 {
            return Err(Error::InvalidRing(format!("N = {n} must be at least 2")));
        }
        if (n as u64).is_multiple_of(field.characteristic()) {
            return Err(Error::InvalidRing(format!(
                "characteristic {} divides N = {n}",
                field.characteristic()
            )));
        }
        let ambient = PolyRing::new(field, &["x", "y", "z"])?;
        let f = Polynomial::parse(&ambient, &format!("x^{n} + y^{n} + z^{n}"))?;
        let modulus = Ideal::new(&ambient, vec![f])?;
        Ok(QuotientRing { ambient, modulus, kind: RingKind::DiagonalHypersurface { n }, dim: 2 })
    }

    pub fn stanley_reisner(field: PrimeField, complex: &SimplicialComplex) -> Result<QuotientRing> {
        let names: Vec<String> = (1..=complex.n_vertices()).map(|i| format!("x{i}")).collect();
        let ambient = PolyRing::from_names(field, names)?;
        let modulus = complex.stanley_reisner_ideal(&ambient)?;
        Ok(QuotientRing {
            ambient,
            modulus,
            kind: RingKind::StanleyReisner { complex: complex.clone() },
            dim: complex.krull_dim(),
        })
    }

    /// Arbitrary modulus with a caller-supplied Krull dimension.
    pub fn with_modulus(modulus: Ideal, dim: usize) -> QuotientRing {
        QuotientRing { ambient: modulus.ring().clone(), modulus, kind: RingKind::Free, dim }
    }

    pub fn ambient(&self) -> &Arc<PolyRing> {
        &self.ambient
    }

    pub fn modulus(&self) -> &Ideal {
        &self.modulus
    }

    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    pub fn field(&self) -> PrimeField {
        self.ambient.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The homogeneous maximal ideal `(x_1, ..., x_n)`.
    pub fn maximal_ideal(&self) -> Ideal {
        let idx: Vec<usize> = (0..self.ambient.nvars()).collect();
        Ideal::variables(&self.ambient, &idx)
    }

    /// `J + M` for an ideal given by lifted generators.
    pub fn lift(&self, j: &Ideal) -> Result<Ideal> {
        j.sum(&self.modulus)
    }

    pub fn ideal(&self, gens: &[&str]) -> Result<Ideal> {
        Ideal::parse(&self.ambient, gens)
    }

    /// Ideal equality in `R`.
    pub fn ideal_equals(&self, a: &Ideal, b: &Ideal) -> Result<bool> {
        self.lift(a)?.equals(&self.lift(b)?)
    }

    /// `b ⊆ a` in `R`.
    pub fn ideal_contains(&self, a: &Ideal, b: &Ideal) -> Result<bool> {
        self.lift(a)?.contains(b)
    }

    /// Minimal generators of `in_>(M + J)` under grevlex.
    fn leading_monomials(&self, j: &Ideal) -> Result<Vec<Monomial>> {
        let lifted = self.lift(j)?;
        let gb = lifted.groebner_basis(MonomialOrder::Grevlex)?;
        Ok(gb.iter().map(|g| g.leading_monomial(MonomialOrder::Grevlex).unwrap().clone()).collect())
    }

    /// `ℓ(R/J)` by counting standard monomials of `M + J`.
    pub fn length_of_quotient(&self, j: &Ideal) -> Result<LengthValue> {
        let lms = self.leading_monomials(j)?;
        Ok(match standard_monomials(self.ambient.nvars(), &lms) {
            Some(s) => LengthValue::Finite(s.len() as u64),
            None => LengthValue::Infinite,
        })
    }

    /// `ℓ(R/J)`, failing when the length is infinite.
    pub fn length(&self, j: &Ideal) -> Result<u64> {
        self.length_of_quotient(j)?.finite().ok_or_else(|| Error::InfiniteLength(j.to_string()))
    }

    /// Standard monomials of `M + J`, or `None` when there are infinitely
    /// many.
    pub fn standard_monomials(&self, j: &Ideal) -> Result<Option<Vec<Monomial>>> {
        let lms = self.leading_monomials(j)?;
        Ok(standard_monomials(self.ambient.nvars(), &lms))
    }

    /// `dim_k R_n`; the modulus must be homogeneous.
    pub fn graded_dim(&self, n: u32) -> Result<u64> {
        Ok(self.graded_dims_between(n, n + 1)?[0])
    }

    /// `dim_k R_j` for `j = 0..count`.
    pub fn graded_dims(&self, count: u32) -> Result<Vec<u64>> {
        self.graded_dims_between(0, count)
    }

    fn graded_dims_between(&self, lo: u32, hi: u32) -> Result<Vec<u64>> {
        if !self.modulus.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        let lms: Vec<Monomial> = self
            .modulus
            .groebner_basis(MonomialOrder::Grevlex)?
            .iter()
            .map(|g| g.leading_monomial(MonomialOrder::Grevlex).unwrap().clone())
            .collect();
        Ok((lo..hi)
            .map(|n| {
                monomials_of_degree(self.ambient.nvars(), n)
                    .into_iter()
                    .filter(|m| !lms.iter().any(|l| l.divides(m)))
                    .count() as u64
            })
            .collect())
    }

    /// `ℓ(R/m^k) = Σ_{j<k} dim R_j`, without building `m^k`.
    pub fn length_mod_maximal_power(&self, k: u32) -> Result<u64> {
        Ok(self.graded_dims(k)?.iter().sum())
    }
}

/// Monomials outside the monomial ideal generated by `lms`; `None` when some
/// variable has no pure power among them (infinitely many).
pub fn standard_monomials(nvars: usize, lms: &[Monomial]) -> Option<Vec<Monomial>> {
    let mut has_pure = vec![false; nvars];
    for m in lms {
        if m.is_one() {
            return Some(Vec::new());
        }
        if let Some(i) = m.pure_power_var() {
            has_pure[i] = true;
        }
    }
    if has_pure.iter().any(|h| !h) {
        return None;
    }
    // the staircase is closed under division, so a search from 1 reaches it all
    let mut seen: HashSet<Monomial> = HashSet::new();
    let mut stack = vec![Monomial::one(nvars)];
    seen.insert(Monomial::one(nvars));
    while let Some(m) = stack.pop() {
        for i in 0..nvars {
            let next = m.mul(&Monomial::var(nvars, i));
            if seen.contains(&next) || lms.iter().any(|l| l.divides(&next)) {
                continue;
            }
            seen.insert(next.clone());
            stack.push(next);
        }
    }
    let mut out: Vec<Monomial> = seen.into_iter().collect();
    out.sort_by(|a, b| MonomialOrder::Grevlex.cmp(a, b));
    Some(out)
}
