use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{buchberger, normal_form};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::order::MonomialOrder;
use crate::poly::{same_ring, PolyRing, Polynomial};

/// An ideal given by generators, with reduced Groebner bases cached per
/// order. The cache is behind a mutex and is never observable from outside.
pub struct Ideal {
    ring: Arc<PolyRing>,
    gens: Vec<Polynomial>,
    gb_cache: Mutex<HashMap<MonomialOrder, Arc<Vec<Polynomial>>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            gb_cache: Mutex::new(self.gb_cache.lock().unwrap().clone()),
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

/// Outcome of [`Ideal::is_reduction`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReductionVerdict {
    /// Smallest `n` with `J I^n = I^{n+1}`.
    YesAt(usize),
    NoUpTo(usize),
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Result<Ideal> {
        if gens.iter().any(|g| !same_ring(ring, g.ring())) {
            return Err(Error::RingMismatch);
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            gb_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Ideal {
        Ideal::new(ring, Vec::new()).unwrap()
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Ideal {
        Ideal::new(ring, vec![Polynomial::one(ring)]).unwrap()
    }

    pub fn parse(ring: &Arc<PolyRing>, gens: &[&str]) -> Result<Ideal> {
        let polys = gens.iter().map(|s| Polynomial::parse(ring, s)).collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, polys)
    }

    pub fn from_monomials(ring: &Arc<PolyRing>, ms: impl IntoIterator<Item = Monomial>) -> Ideal {
        let gens = ms.into_iter().map(|m| Polynomial::monomial(ring, m)).collect();
        Ideal::new(ring, gens).unwrap()
    }

    /// The ideal generated by the given variables.
    pub fn variables(ring: &Arc<PolyRing>, idx: &[usize]) -> Ideal {
        Ideal::from_monomials(ring, idx.iter().map(|&i| Monomial::var(ring.nvars(), i)))
    }

    /// `(x_1, ..., x_n)^k` by its monomial generators.
    pub fn maximal_power(ring: &Arc<PolyRing>, k: u32) -> Ideal {
        Ideal::from_monomials(ring, monomials_of_degree(ring.nvars(), k))
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(|g| g.is_monomial())
    }

    fn check_ring(&self, other: &Ideal) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Reduced Groebner basis, computed once per order.
    pub fn groebner_basis(&self, ord: MonomialOrder) -> Result<Arc<Vec<Polynomial>>> {
        if let Some(gb) = self.gb_cache.lock().unwrap().get(&ord) {
            return Ok(gb.clone());
        }
        let gb = Arc::new(buchberger(&self.gens, ord)?);
        self.gb_cache.lock().unwrap().insert(ord, gb.clone());
        Ok(gb)
    }

    /// Generators replaced by the reduced grevlex basis.
    pub fn interreduce(&self) -> Result<Ideal> {
        let gb = self.groebner_basis(MonomialOrder::Grevlex)?;
        let out = Ideal::new(&self.ring, gb.as_ref().clone())?;
        out.gb_cache.lock().unwrap().insert(MonomialOrder::Grevlex, gb);
        Ok(out)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.checked_mul(b)?);
            }
        }
        dedup_polys(&mut gens);
        Ideal::new(&self.ring, gens)
    }

    /// `I^n`, with `I^0 = (1)`.
    pub fn power(&self, n: u32) -> Result<Ideal> {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..n {
            acc = acc.product(self)?;
            if acc.gens.len() > 64 {
                acc = acc.interreduce()?;
            }
        }
        Ok(acc)
    }

    /// `I^[q] = (g^q : g a generator)`; `q` must be a power of the
    /// characteristic.
    pub fn bracket_power(&self, q: u64) -> Result<Ideal> {
        let gens = self.gens.iter().map(|g| g.frobenius(q)).collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.ring, gens)
    }

    pub fn contains_poly(&self, f: &Polynomial, ord: MonomialOrder) -> Result<bool> {
        if !same_ring(&self.ring, f.ring()) {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() {
            return Ok(true);
        }
        let gb = self.groebner_basis(ord)?;
        Ok(normal_form(f, &gb, ord)?.is_zero())
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        for g in &other.gens {
            if !self.contains_poly(g, MonomialOrder::Grevlex)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        let a = self.groebner_basis(MonomialOrder::Grevlex)?;
        let b = other.groebner_basis(MonomialOrder::Grevlex)?;
        if a == b {
            return Ok(true);
        }
        Ok(self.contains(other)? && other.contains(self)?)
    }

    /// `I ∩ J` by elimination: a new variable `t` is placed first and
    /// eliminated from `t I + (1 - t) J`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        let big = self.ring.with_leading_var(&fresh_name(&self.ring))?;
        let t = Polynomial::var(&big, 0);
        let one_minus_t = Polynomial::one(&big).sub(&t);
        let mut gens = Vec::with_capacity(self.gens.len() + other.gens.len());
        for g in &self.gens {
            gens.push(t.mul(&g.embed_front(&big, 1)));
        }
        for g in &other.gens {
            gens.push(one_minus_t.mul(&g.embed_front(&big, 1)));
        }
        let gb = buchberger(&gens, MonomialOrder::Block(1))?;
        let out: Vec<Polynomial> = gb.iter().filter_map(|g| g.contract_front(&self.ring, 1)).collect();
        Ideal::new(&self.ring, out)
    }

    /// Smallest `n <= n_max` with `J I^n = I^{n+1}` modulo `modulus`, where
    /// `self = J ⊆ I`.
    pub fn is_reduction(&self, of: &Ideal, modulus: &Ideal, n_max: usize) -> Result<ReductionVerdict> {
        self.check_ring(of)?;
        self.check_ring(modulus)?;
        if !of.sum(modulus)?.contains(self)? {
            return Err(Error::NotContained(format!("{self} is not contained in {of}")));
        }
        let mut i_pow = Ideal::unit(&self.ring);
        for n in 0..=n_max {
            let lhs = self.product(&i_pow)?.sum(modulus)?;
            let next = i_pow.product(of)?.interreduce()?;
            let rhs = next.sum(modulus)?;
            if lhs.equals(&rhs)? {
                return Ok(ReductionVerdict::YesAt(n));
            }
            i_pow = next;
        }
        Ok(ReductionVerdict::NoUpTo(n_max))
    }
}

fn fresh_name(ring: &PolyRing) -> String {
    std::iter::once("t".to_string())
        .chain((0..).map(|i| format!("t{i}")))
        .find(|n| ring.var_index(n).is_none())
        .unwrap()
}

fn dedup_polys(v: &mut Vec<Polynomial>) {
    let mut seen = std::collections::HashSet::new();
    v.retain(|p| seen.insert(p.clone()));
}
