use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::Monomial;
use crate::order::MonomialOrder;

/// `F_p[x_1, ..., x_n]` with named variables. The variable order here is the
/// reference order for every [`MonomialOrder`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: PrimeField,
    vars: Vec<String>,
}

impl PolyRing {
    pub fn new(field: PrimeField, vars: &[&str]) -> Result<Arc<Self>> {
        Self::from_names(field, vars.iter().map(|s| s.to_string()).collect())
    }

    pub fn from_names(field: PrimeField, vars: Vec<String>) -> Result<Arc<Self>> {
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() || !v.chars().next().unwrap().is_alphabetic() {
                return Err(Error::InvalidRing(format!("bad variable name `{v}`")));
            }
            if !v.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(Error::InvalidRing(format!("bad variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(PolyRing { field, vars }))
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn characteristic(&self) -> u64 {
        self.field.characteristic()
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// The same ring with one extra variable placed first (largest).
    pub fn with_leading_var(&self, name: &str) -> Result<Arc<PolyRing>> {
        let mut vars = vec![name.to_string()];
        vars.extend(self.vars.iter().cloned());
        PolyRing::from_names(self.field, vars)
    }
}

/// A polynomial over `F_p`. Terms are kept sorted in descending grevlex order
/// with no zero coefficients and no repeated monomials.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, u64)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state)
    }
}

pub(crate) fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

const CANON: MonomialOrder = MonomialOrder::Grevlex;

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: i64) -> Self {
        let c = ring.field.from_i64(c);
        Self::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, 1)
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        Self::term(ring, Monomial::var(ring.nvars(), i), 1)
    }

    /// `c * m`; `c` is reduced mod p.
    pub fn term(ring: &Arc<PolyRing>, m: Monomial, c: u64) -> Self {
        assert_eq!(m.nvars(), ring.nvars(), "monomial arity");
        let c = c % ring.characteristic();
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial) -> Self {
        Self::term(ring, m, 1)
    }

    /// Build from arbitrary (possibly repeated) terms.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: impl IntoIterator<Item = (Monomial, u64)>) -> Self {
        let f = ring.field;
        let mut acc: HashMap<Monomial, u64> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial arity");
            let e = acc.entry(m).or_insert(0);
            *e = f.add(*e, c % f.characteristic());
        }
        let mut terms: Vec<(Monomial, u64)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_by(|a, b| CANON.cmp(&b.0, &a.0));
        Polynomial { ring: ring.clone(), terms }
    }

    pub(crate) fn from_sorted_terms(ring: &Arc<PolyRing>, terms: Vec<(Monomial, u64)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| CANON.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    /// Terms in descending grevlex order.
    pub fn terms(&self) -> &[(Monomial, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => {
                let d = m.degree();
                self.terms.iter().all(|(n, _)| n.degree() == d)
            }
        }
    }

    /// Coefficient of `m` (zero when absent).
    pub fn coefficient(&self, m: &Monomial) -> u64 {
        self.terms.iter().find(|(n, _)| n == m).map_or(0, |(_, c)| *c)
    }

    /// Leading term under `ord`.
    pub fn leading_term(&self, ord: MonomialOrder) -> Option<(&Monomial, u64)> {
        if ord == CANON {
            return self.terms.first().map(|(m, c)| (m, *c));
        }
        self.terms.iter().max_by(|a, b| ord.cmp(&a.0, &b.0)).map(|(m, c)| (m, *c))
    }

    pub fn leading_monomial(&self, ord: MonomialOrder) -> Option<&Monomial> {
        self.leading_term(ord).map(|(m, _)| m)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        let f = self.ring.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let adj = |c: u64| if negate_other { f.neg(c) } else { c };
        while i < a.len() && j < b.len() {
            match CANON.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), adj(b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(a[i].1, adj(b[j].1));
                    if c != 0 {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), adj(*c))));
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let f = self.ring.field;
        let mut acc: HashMap<Monomial, u64> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.checked_mul(mb)?;
                let e = acc.entry(m).or_insert(0);
                *e = f.add(*e, f.mul(*ca, *cb));
            }
        }
        let mut terms: Vec<(Monomial, u64)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_by(|a, b| CANON.cmp(&b.0, &a.0));
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.checked_add(other).expect("ring mismatch")
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.checked_sub(other).expect("ring mismatch")
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.checked_mul(other).expect("polynomial product")
    }

    pub fn neg(&self) -> Polynomial {
        let f = self.ring.field;
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(*c))).collect(),
        }
    }

    pub fn scale(&self, c: u64) -> Polynomial {
        let f = self.ring.field;
        let c = c % f.characteristic();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), f.mul(*a, c))).collect(),
        }
    }

    /// `c * m * self`; monomial multiplication preserves the term order.
    pub fn mul_term(&self, m: &Monomial, c: u64) -> Result<Polynomial> {
        let f = self.ring.field;
        let c = c % f.characteristic();
        if c == 0 {
            return Ok(Polynomial::zero(&self.ring));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (n, a) in &self.terms {
            terms.push((n.checked_mul(m)?, f.mul(*a, c)));
        }
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    /// Scale so that the leading coefficient under `ord` is one.
    pub fn monic(&self, ord: MonomialOrder) -> Polynomial {
        match self.leading_term(ord) {
            None => self.clone(),
            Some((_, c)) => self.scale(self.ring.field.inv(c)),
        }
    }

    pub fn pow(&self, k: u64) -> Result<Polynomial> {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `self^q` for `q` a power of the characteristic, computed termwise:
    /// in characteristic p, `(sum c_i m_i)^q = sum c_i m_i^q`.
    pub fn frobenius(&self, q: u64) -> Result<Polynomial> {
        let f = self.ring.field;
        if f.frobenius_exponent(q).is_none() {
            return Err(Error::NotFrobeniusPower { q, p: f.characteristic() });
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.checked_pow(q)?, *c));
        }
        // m -> m^q preserves grevlex order, and c^q = c in F_p
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    /// Image in `ring`, which must be this ring with `count` variables
    /// prepended.
    pub fn embed_front(&self, ring: &Arc<PolyRing>, count: usize) -> Polynomial {
        assert_eq!(ring.nvars(), self.ring.nvars() + count);
        Polynomial::from_terms(ring, self.terms.iter().map(|(m, c)| (m.prepend_vars(count), *c)))
    }

    /// Inverse of [`embed_front`](Self::embed_front); `None` if a dropped
    /// variable occurs.
    pub fn contract_front(&self, ring: &Arc<PolyRing>, count: usize) -> Option<Polynomial> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.strip_front_vars(count)?, *c));
        }
        Some(Polynomial::from_terms(ring, terms))
    }

    pub fn parse(ring: &Arc<PolyRing>, text: &str) -> Result<Polynomial> {
        let mut p = Parser { ring, src: text.as_bytes(), pos: 0 };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(Error::Parse(format!("unexpected `{}` at offset {}", &text[p.pos..], p.pos)));
        }
        Ok(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let p = self.ring.characteristic();
        let names = &self.ring.vars;
        for (i, (m, c)) in self.terms.iter().enumerate() {
            // symmetric representative
            let (neg, mag) = if *c > p / 2 { (true, p - c) } else { (false, *c) };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else {
                if mag != 1 {
                    write!(f, "{mag}*")?;
                }
                m.fmt_with(names, f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

struct Parser<'a> {
    ring: &'a Arc<PolyRing>,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, what: &str) -> Result<T> {
        Err(Error::Parse(format!("{what} at offset {}", self.pos)))
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.product()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.product()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.product()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.checked_mul(&self.unary()?)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let k = self.integer()?;
            return base.pow(k);
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<u64>()
            .map_err(|e| Error::Parse(format!("{e} at offset {start}")))
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let p = self.ring.characteristic() as u128;
                let v = digits.bytes().fold(0u128, |acc, d| (acc * 10 + (d - b'0') as u128) % p);
                Ok(Polynomial::term(self.ring, Monomial::one(self.ring.nvars()), v as u64))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.ring.var_index(name) {
                    Some(i) => Ok(Polynomial::var(self.ring, i)),
                    None => Err(Error::Parse(format!("unknown variable `{name}` at offset {start}"))),
                }
            }
            _ => self.err("expected term"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring(p: u64) -> Arc<PolyRing> {
        PolyRing::new(PrimeField::new(p).unwrap(), &["X", "Y", "Z"]).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let r = ring(7);
        let f = Polynomial::parse(&r, "3*X^2*Y + Z^5 + 1").unwrap();
        assert_eq!(f.to_string(), "Z^5 + 3*X^2*Y + 1");
        let g = Polynomial::parse(&r, "(Y+Z)^2 - 2*Y*Z").unwrap();
        assert_eq!(g, Polynomial::parse(&r, "Y^2 + Z^2").unwrap());
        assert_eq!(Polynomial::parse(&r, "X - X").unwrap().to_string(), "0");
        assert_eq!(Polynomial::parse(&r, "-X + 8").unwrap().to_string(), "-X + 1");
        assert!(Polynomial::parse(&r, "W").is_err());
        assert!(Polynomial::parse(&r, "X +").is_err());
        assert!(Polynomial::parse(&r, "X )").is_err());
    }

    #[test]
    fn ring_validation() {
        let f = PrimeField::new(5).unwrap();
        assert!(PolyRing::new(f, &["x", "x"]).is_err());
        assert!(PolyRing::new(f, &["1x"]).is_err());
        let a = ring(5);
        let b = PolyRing::new(f, &["X", "Y"]).unwrap();
        assert_eq!(
            Polynomial::one(&a).checked_add(&Polynomial::one(&b)),
            Err(Error::RingMismatch)
        );
    }

    #[test]
    fn frobenius_is_termwise() {
        let r = ring(5);
        let f = Polynomial::parse(&r, "X + 2*Y + Z^2").unwrap();
        assert_eq!(f.frobenius(5).unwrap(), f.pow(5).unwrap());
        assert_eq!(f.frobenius(25).unwrap(), f.pow(25).unwrap());
        assert!(matches!(f.frobenius(10), Err(Error::NotFrobeniusPower { .. })));
    }

    #[test]
    fn embedding_roundtrip() {
        let r = ring(7);
        let big = r.with_leading_var("t").unwrap();
        let f = Polynomial::parse(&r, "X*Y - Z^3").unwrap();
        let g = f.embed_front(&big, 1);
        assert_eq!(g.to_string(), "-Z^3 + X*Y");
        assert_eq!(g.contract_front(&r, 1).unwrap(), f);
        let t = Polynomial::var(&big, 0);
        assert!(t.mul(&g).contract_front(&r, 1).is_none());
    }

    fn poly_strategy() -> impl Strategy<Value = Vec<(Vec<u32>, u64)>> {
        proptest::collection::vec((proptest::collection::vec(0u32..4, 3), 0u64..7), 0..6)
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip(ts in poly_strategy()) {
            let r = ring(7);
            let f = Polynomial::from_terms(&r, ts.into_iter().map(|(e, c)| (Monomial::new(e), c)));
            let back = Polynomial::parse(&r, &f.to_string()).unwrap();
            prop_assert_eq!(back, f);
        }

        #[test]
        fn ring_axioms(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
            let r = ring(7);
            let mk = |ts: Vec<(Vec<u32>, u64)>| Polynomial::from_terms(&r, ts.into_iter().map(|(e, c)| (Monomial::new(e), c)));
            let (a, b, c) = (mk(a), mk(b), mk(c));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert!(a.sub(&a).is_zero());
        }
    }
}
