//! Division, S-polynomials and reduced Groebner bases (Buchberger with the
//! normal selection strategy, product criterion and chain criterion).

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::{same_ring, PolyRing, Polynomial};

/// Terms sorted descending under the engine's order.
type Terms = Vec<(Monomial, u64)>;

#[derive(Clone, Copy)]
struct Engine {
    field: PrimeField,
    ord: MonomialOrder,
}

impl Engine {
    fn sorted(&self, f: &Polynomial) -> Terms {
        let mut t = f.terms().to_vec();
        if self.ord != MonomialOrder::Grevlex {
            t.sort_by(|a, b| self.ord.cmp(&b.0, &a.0));
        }
        t
    }

    fn to_poly(&self, ring: &Arc<PolyRing>, t: Terms) -> Polynomial {
        if self.ord == MonomialOrder::Grevlex {
            Polynomial::from_sorted_terms(ring, t)
        } else {
            Polynomial::from_terms(ring, t)
        }
    }

    fn monic(&self, mut t: Terms) -> Terms {
        if let Some(&(_, c)) = t.first() {
            if c != 1 {
                let inv = self.field.inv(c);
                for term in t.iter_mut() {
                    term.1 = self.field.mul(term.1, inv);
                }
            }
        }
        t
    }

    /// `a - c * m * b`, both operands sorted.
    fn sub_mul(&self, a: &[(Monomial, u64)], m: &Monomial, c: u64, b: &[(Monomial, u64)]) -> Result<Terms> {
        let f = self.field;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut i = 0;
        let mut scaled = b.iter().map(|(n, d)| -> Result<(Monomial, u64)> {
            Ok((n.checked_mul(m)?, f.neg(f.mul(*d, c))))
        });
        let mut next_b = scaled.next().transpose()?;
        loop {
            match (a.get(i), next_b.take()) {
                (None, None) => break,
                (Some(x), None) => {
                    out.push(x.clone());
                    i += 1;
                }
                (None, Some(y)) => {
                    out.push(y);
                    next_b = scaled.next().transpose()?;
                }
                (Some(x), Some(y)) => match self.ord.cmp(&x.0, &y.0) {
                    Ordering::Greater => {
                        out.push(x.clone());
                        i += 1;
                        next_b = Some(y);
                    }
                    Ordering::Less => {
                        out.push(y);
                        next_b = scaled.next().transpose()?;
                    }
                    Ordering::Equal => {
                        let s = f.add(x.1, y.1);
                        if s != 0 {
                            out.push((y.0, s));
                        }
                        i += 1;
                        next_b = scaled.next().transpose()?;
                    }
                },
            }
        }
        Ok(out)
    }

    /// Full reduction of `p` by `basis` (arbitrary leading coefficients).
    fn reduce(&self, p: Terms, basis: &[Terms]) -> Result<Terms> {
        let f = self.field;
        let mut rem = Vec::new();
        let mut p = p;
        let mut pos = 0;
        while pos < p.len() {
            let (lm, lc) = (&p[pos].0, p[pos].1);
            match basis.iter().find(|g| g[0].0.divides(lm)) {
                None => {
                    rem.push(p[pos].clone());
                    pos += 1;
                }
                Some(g) if g.len() == 1 => pos += 1,
                Some(g) => {
                    let q = lm.div(&g[0].0).expect("divisor");
                    let c = f.mul(lc, f.inv(g[0].1));
                    p = self.sub_mul(&p[pos + 1..], &q, c, &g[1..])?;
                    pos = 0;
                }
            }
        }
        Ok(rem)
    }

    fn spoly(&self, f: &[(Monomial, u64)], g: &[(Monomial, u64)]) -> Result<Terms> {
        let l = f[0].0.lcm(&g[0].0);
        let mf = l.div(&f[0].0).unwrap();
        let mg = l.div(&g[0].0).unwrap();
        let fld = self.field;
        // (l/lt f) f - (l/lt g) g with lt's made monic
        let cf = fld.inv(f[0].1);
        let cg = fld.inv(g[0].1);
        let left: Terms = f[1..]
            .iter()
            .map(|(m, c)| Ok((m.checked_mul(&mf)?, fld.mul(*c, cf))))
            .collect::<Result<_>>()?;
        self.sub_mul(&left, &mg, cg, &g[1..])
    }
}

fn check_ring(ring: &Arc<PolyRing>, polys: &[&Polynomial]) -> Result<()> {
    if polys.iter().all(|p| same_ring(ring, p.ring())) {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

/// `S(f, g) = (L / lt f) f - (L / lt g) g`, `L` the lcm of the leading
/// monomials, with leading coefficients normalized to one.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, ord: MonomialOrder) -> Result<Polynomial> {
    check_ring(f.ring(), &[g])?;
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let eng = Engine { field: f.ring().field(), ord };
    let s = eng.spoly(&eng.sorted(f), &eng.sorted(g))?;
    Ok(eng.to_poly(f.ring(), s))
}

/// Remainder of multivariate division of `f` by `divisors` (in list order).
pub fn normal_form(f: &Polynomial, divisors: &[Polynomial], ord: MonomialOrder) -> Result<Polynomial> {
    check_ring(f.ring(), &divisors.iter().collect::<Vec<_>>())?;
    let eng = Engine { field: f.ring().field(), ord };
    let basis: Vec<Terms> = divisors.iter().filter(|g| !g.is_zero()).map(|g| eng.sorted(g)).collect();
    let r = eng.reduce(eng.sorted(f), &basis)?;
    Ok(eng.to_poly(f.ring(), r))
}

struct PairKey {
    lcm: Monomial,
    ord: MonomialOrder,
    i: usize,
    j: usize,
}

impl PartialEq for PairKey {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for PairKey {}
impl PartialOrd for PairKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for PairKey {
    // max-heap: smallest lcm first, then oldest pair
    fn cmp(&self, other: &Self) -> Ordering {
        self.ord
            .cmp(&other.lcm, &self.lcm)
            .then_with(|| (other.j, other.i).cmp(&(self.j, self.i)))
    }
}

fn minimal_monomials(mut ms: Vec<Monomial>, ord: MonomialOrder) -> Vec<Monomial> {
    ms.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| ord.cmp(a, b)));
    ms.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in ms {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out.sort_by(|a, b| ord.cmp(b, a));
    out
}

/// Reduced Groebner basis of the ideal generated by `gens`: monic,
/// self-reduced, sorted by descending leading monomial. Unique for the order.
pub fn buchberger(gens: &[Polynomial], ord: MonomialOrder) -> Result<Vec<Polynomial>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let ring = first.ring().clone();
    check_ring(&ring, &gens.iter().collect::<Vec<_>>())?;
    if let MonomialOrder::Block(k) = ord {
        if k > ring.nvars() {
            return Err(Error::InvalidArgument(format!("block size {k} exceeds {} variables", ring.nvars())));
        }
    }
    let eng = Engine { field: ring.field(), ord };
    let nonzero: Vec<&Polynomial> = gens.iter().filter(|g| !g.is_zero()).collect();
    if nonzero.iter().any(|g| g.is_constant()) {
        return Ok(vec![Polynomial::one(&ring)]);
    }
    if nonzero.iter().all(|g| g.is_monomial()) {
        let ms = minimal_monomials(nonzero.iter().map(|g| g.terms()[0].0.clone()).collect(), ord);
        return Ok(ms.into_iter().map(|m| Polynomial::monomial(&ring, m)).collect());
    }

    let mut input: Vec<Terms> = nonzero.iter().map(|g| eng.monic(eng.sorted(g))).collect();
    // small leading monomials first helps the early reductions
    input.sort_by(|a, b| ord.cmp(&a[0].0, &b[0].0));

    let mut basis: Vec<Terms> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let mut heap: BinaryHeap<PairKey> = BinaryHeap::new();

    let add = |h: Terms,
               basis: &mut Vec<Terms>,
               pending: &mut HashSet<(usize, usize)>,
               heap: &mut BinaryHeap<PairKey>| {
        let j = basis.len();
        for (i, g) in basis.iter().enumerate() {
            let lcm = g[0].0.lcm(&h[0].0);
            pending.insert((i, j));
            heap.push(PairKey { lcm, ord, i, j });
        }
        basis.push(h);
    };

    for g in input {
        let r = eng.reduce(g, &basis)?;
        if !r.is_empty() {
            if r[0].0.is_one() {
                return Ok(vec![Polynomial::one(&ring)]);
            }
            add(eng.monic(r), &mut basis, &mut pending, &mut heap);
        }
    }

    while let Some(PairKey { lcm, i, j, .. }) = heap.pop() {
        pending.remove(&(i, j));
        let (fi, fj) = (&basis[i], &basis[j]);
        if fi[0].0.is_coprime(&fj[0].0) || (fi.len() == 1 && fj.len() == 1) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k][0].0.divides(&lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = eng.spoly(fi, fj)?;
        let r = eng.reduce(s, &basis)?;
        if !r.is_empty() {
            if r[0].0.is_one() {
                return Ok(vec![Polynomial::one(&ring)]);
            }
            add(eng.monic(r), &mut basis, &mut pending, &mut heap);
        }
    }

    // minimalize, then tail-reduce
    let mut keep: Vec<Terms> = Vec::new();
    for (idx, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            k != idx && h[0].0.divides(&g[0].0) && (h[0].0 != g[0].0 || k < idx)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    keep.sort_by(|a, b| ord.cmp(&b[0].0, &a[0].0));
    let mut reduced = Vec::with_capacity(keep.len());
    for idx in 0..keep.len() {
        let others: Vec<Terms> =
            keep.iter().enumerate().filter(|(k, _)| *k != idx).map(|(_, g)| g.clone()).collect();
        let g = &keep[idx];
        let mut tail = eng.reduce(g[1..].to_vec(), &others)?;
        let mut full = vec![g[0].clone()];
        full.append(&mut tail);
        reduced.push(eng.to_poly(&ring, full));
    }
    Ok(reduced)
}

/// Minimal monomial generators of the initial ideal.
pub fn initial_ideal(gens: &[Polynomial], ord: MonomialOrder) -> Result<Vec<Monomial>> {
    let gb = buchberger(gens, ord)?;
    Ok(gb.iter().map(|g| g.leading_monomial(ord).unwrap().clone()).collect())
}

/// Minimal generators of a monomial ideal, sorted descending under `ord`.
pub fn minimalize_monomials(ms: Vec<Monomial>, ord: MonomialOrder) -> Vec<Monomial> {
    minimal_monomials(ms, ord)
}

/// Buchberger's criterion: every S-polynomial reduces to zero.
pub fn is_groebner_basis(basis: &[Polynomial], ord: MonomialOrder) -> Result<bool> {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let s = s_polynomial(&basis[i], &basis[j], ord)?;
            if !normal_form(&s, basis, ord)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn ring(p: u64) -> Arc<PolyRing> {
        PolyRing::new(PrimeField::new(p).unwrap(), &["X", "Y", "Z"]).unwrap()
    }

    fn parse(r: &Arc<PolyRing>, s: &str) -> Polynomial {
        Polynomial::parse(r, s).unwrap()
    }

    #[test]
    fn spoly_of_hypersurface_and_monomial() {
        // S(X^N+Y^N+Z^N, Y^{qr} Z^{q(k-r)}) = Y^{qr} Z^{q(k-r)} (Y^N + Z^N)
        let r = ring(5);
        let (n, q, k, rr) = (3, 5, 2, 1);
        let f = parse(&r, &format!("X^{n} + Y^{n} + Z^{n}"));
        let g = parse(&r, &format!("Y^{}*Z^{}", q * rr, q * (k - rr)));
        let s = s_polynomial(&f, &g, MonomialOrder::Grevlex).unwrap();
        assert_eq!(s, g.mul(&parse(&r, &format!("Y^{n} + Z^{n}"))));
    }

    #[test]
    fn spoly_trivial_cases() {
        let r = ring(7);
        let a = parse(&r, "X^2*Y");
        let b = parse(&r, "Y^3*Z");
        assert!(s_polynomial(&a, &b, MonomialOrder::Grevlex).unwrap().is_zero());
        let f = parse(&r, "X^2 + 3*Y*Z - 1");
        assert!(s_polynomial(&f, &f, MonomialOrder::Lex).unwrap().is_zero());
        assert_eq!(
            s_polynomial(&f, &Polynomial::zero(&r), MonomialOrder::Lex),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn normal_form_basics() {
        let r = ring(7);
        let g = parse(&r, "X^2 - Y");
        assert!(normal_form(&g, std::slice::from_ref(&g), MonomialOrder::Grevlex).unwrap().is_zero());
        let f = parse(&r, "X^3 + Z");
        // X^3 = X*(X^2 - Y) + X*Y
        assert_eq!(normal_form(&f, &[g], MonomialOrder::Lex).unwrap(), parse(&r, "X*Y + Z"));
    }

    #[test]
    fn unit_ideal() {
        let r = ring(7);
        let gb = buchberger(&[Polynomial::one(&r)], MonomialOrder::Grevlex).unwrap();
        assert_eq!(gb, vec![Polynomial::one(&r)]);
        let gb = buchberger(&[parse(&r, "X - 1"), parse(&r, "X")], MonomialOrder::Grevlex).unwrap();
        assert_eq!(gb, vec![Polynomial::one(&r)]);
    }

    #[test]
    fn twisted_cubic_lex() {
        // (X^2 - Y, Y^2 - Z) under lex: reduced basis {X^2 - Y, Y^2 - Z}
        let r = ring(7);
        let gens = [parse(&r, "X^2 - Y"), parse(&r, "Y^2 - Z")];
        let gb = buchberger(&gens, MonomialOrder::Lex).unwrap();
        assert_eq!(gb, vec![parse(&r, "X^2 - Y"), parse(&r, "Y^2 - Z")]);
        // every element vanishes on the parametrization Y = X^2, Z = X^4
        for g in &gb {
            let mut acc = 0u64;
            let fld = r.field();
            for t in 1..7u64 {
                let pt = [t, fld.pow(t, 2), fld.pow(t, 4)];
                let v = g.terms().iter().fold(0, |s, (m, c)| {
                    let mv = (0..3).fold(1, |a, i| fld.mul(a, fld.pow(pt[i], m.exponent(i) as u64)));
                    fld.add(s, fld.mul(*c, mv))
                });
                acc = fld.add(acc, v);
                assert_eq!(v, 0);
            }
            assert_eq!(acc, 0);
        }
        assert!(is_groebner_basis(&gb, MonomialOrder::Lex).unwrap());
    }

    #[test]
    fn elimination_by_lex() {
        // (X - Y^2, X - Z^3): eliminating X leaves Y^2 - Z^3
        let r = ring(11);
        let gb = buchberger(&[parse(&r, "X - Y^2"), parse(&r, "X - Z^3")], MonomialOrder::Lex).unwrap();
        let without_x: Vec<_> = gb.iter().filter(|g| g.terms().iter().all(|(m, _)| m.exponent(0) == 0)).collect();
        assert_eq!(without_x.len(), 1);
        assert_eq!(without_x[0].monic(MonomialOrder::Lex), parse(&r, "Y^2 - Z^3"));
    }

    #[test]
    fn hypersurface_with_bracket_powers_is_already_a_basis() {
        for (n, p, e, k) in [(2u32, 5u64, 1u32, 1u32), (3, 7, 1, 2), (4, 5, 2, 3)] {
            let r = ring(p);
            let q = p.pow(e);
            let mut gens = vec![parse(&r, &format!("X^{n} + Y^{n} + Z^{n}"))];
            for j in 0..=k {
                gens.push(parse(&r, &format!("Y^{}*Z^{}", q * j as u64, q * (k - j) as u64)));
            }
            assert!(is_groebner_basis(&gens, MonomialOrder::Grevlex).unwrap());
            let init = initial_ideal(&gens, MonomialOrder::Grevlex).unwrap();
            assert_eq!(init.len(), k as usize + 2);
            assert!(init.contains(&Monomial::new(vec![n, 0, 0])));
        }
    }

    #[test]
    fn x_to_the_q_times_z_survives_division() {
        let r = ring(5);
        let gens = [parse(&r, "X^2 + Y^2 + Z^2"), parse(&r, "Y^5"), parse(&r, "Z^5")];
        let gb = buchberger(&gens, MonomialOrder::Grevlex).unwrap();
        let nf = normal_form(&parse(&r, "X^5*Z"), &gb, MonomialOrder::Grevlex).unwrap();
        assert!(!nf.is_zero());
        // X^5 Z = X (X^2)^2 Z reduces to X (Y^2 + Z^2)^2 Z mod Z^5
        assert_eq!(nf.leading_monomial(MonomialOrder::Grevlex), Some(&Monomial::new(vec![1, 4, 1])));
        let mut expected = vec![Monomial::new(vec![2, 0, 0]), Monomial::new(vec![0, 5, 0]), Monomial::new(vec![0, 0, 5])];
        expected.sort_by(|a, b| MonomialOrder::Grevlex.cmp(b, a));
        assert_eq!(initial_ideal(&gens, MonomialOrder::Grevlex).unwrap(), expected);
    }

    #[test]
    fn monomial_input_is_minimalized() {
        let r = ring(5);
        let gens = [parse(&r, "X*Y"), parse(&r, "X^2*Y"), parse(&r, "3*Z^2"), parse(&r, "X*Y")];
        let init = initial_ideal(&gens, MonomialOrder::Grevlex).unwrap();
        assert_eq!(init, vec![Monomial::new(vec![1, 1, 0]), Monomial::new(vec![0, 0, 2])]);
    }
}
