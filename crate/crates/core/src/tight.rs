use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::filtration::Filtration;
use crate::ideal::Ideal;
use crate::monomial::{monomials_of_degree, Monomial};
use crate::order::MonomialOrder;
use crate::poly::{PolyRing, Polynomial};
use crate::quotient::QuotientRing;

/// `R = F_p[x,y,z]/(x^N + y^N + z^N)` with the parameter ideal `I = (y,z)`
/// and the maximal ideal `m = (x,y,z)`.
#[derive(Debug, Clone)]
pub struct DiagonalRing {
    n: u32,
    ring: QuotientRing,
    i: Ideal,
    m: Ideal,
}

/// The element `c` used in every membership test `c f^q ∈ J^[q]`.
#[derive(Debug, Clone)]
pub struct TestElement {
    pub c: Polynomial,
}

/// Result of a bounded tight-closure membership test. `NotMember` is a
/// proof of non-membership; `MemberUpTo` is evidence only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MembershipVerdict {
    NotMember { witness_e: u32 },
    MemberUpTo { e_max: u32 },
}

impl MembershipVerdict {
    pub fn is_member(self) -> bool {
        matches!(self, MembershipVerdict::MemberUpTo { .. })
    }
}

impl fmt::Display for MembershipVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MembershipVerdict::NotMember { witness_e } => write!(f, "NotMember(e={witness_e})"),
            MembershipVerdict::MemberUpTo { e_max } => write!(f, "MemberUpTo(e_max={e_max})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum FRationality {
    FRational { e1_star: i64 },
    /// `witness` lies in `I*` but not in `I`.
    NotFRational { witness: String, e1_star: i64 },
}

impl FRationality {
    pub fn is_f_rational(&self) -> bool {
        matches!(self, FRationality::FRational { .. })
    }

    pub fn e1_star(&self) -> i64 {
        match self {
            FRationality::FRational { e1_star } | FRationality::NotFRational { e1_star, .. } => *e1_star,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormRecord {
    pub monomial: String,
    pub verdict: MembershipVerdict,
    /// Membership in the closed form `m^{k+1} + I^k` (or `I^k` for `N = 2`).
    pub expected: bool,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormReport {
    pub n: u32,
    pub p: u64,
    pub k: u32,
    pub e_max: u32,
    pub records: Vec<ClosedFormRecord>,
    pub disagreements: usize,
}

/// `J^[q] + M` for each tested `e`, built once and probed many times.
struct BracketTargets {
    levels: Vec<(u32, u64, Ideal)>,
}

impl DiagonalRing {
    pub fn new(field: PrimeField, n: u32) -> Result<DiagonalRing> {
        let ring = QuotientRing::diagonal_hypersurface(field, n)?;
        let amb = ring.ambient().clone();
        let i = Ideal::parse(&amb, &["y", "z"])?;
        let m = ring.maximal_ideal();
        Ok(DiagonalRing { n, ring, i, m })
    }

    pub fn with_prime(p: u64, n: u32) -> Result<DiagonalRing> {
        DiagonalRing::new(PrimeField::new(p)?, n)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.ring.field().characteristic()
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn ambient(&self) -> &Arc<PolyRing> {
        self.ring.ambient()
    }

    /// `I = (y, z)`.
    pub fn parameter_ideal(&self) -> &Ideal {
        &self.i
    }

    pub fn maximal_ideal(&self) -> &Ideal {
        &self.m
    }

    /// `z^{N-1}`.
    pub fn test_element(&self) -> TestElement {
        let c = Polynomial::parse(self.ambient(), &format!("z^{}", self.n - 1)).expect("valid test element");
        TestElement { c }
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        Polynomial::parse(self.ambient(), text)
    }

    fn bracket_targets(&self, j: &Ideal, e_min: u32, e_max: u32) -> Result<BracketTargets> {
        if e_min == 0 || e_min > e_max {
            return Err(Error::InvalidArgument(format!("exponent range {e_min}..={e_max} is empty or starts at 0")));
        }
        let field = self.ring.field();
        let mut levels = Vec::new();
        for e in e_min..=e_max {
            let q = field.frobenius_power(e).map_err(|_| overflow(e))?;
            let target = j.bracket_power(q).map_err(|_| overflow(e))?.sum(self.ring.modulus())?;
            levels.push((e, q, target));
        }
        Ok(BracketTargets { levels })
    }

    fn probe(&self, f: &Polynomial, targets: &BracketTargets) -> Result<MembershipVerdict> {
        let c = self.test_element().c;
        let mut e_max = 0;
        for (e, q, target) in &targets.levels {
            let fq = f.frobenius(*q).map_err(|_| overflow(*e))?;
            let cfq = c.checked_mul(&fq).map_err(|_| overflow(*e))?;
            if !target.contains_poly(&cfq, MonomialOrder::Grevlex)? {
                return Ok(MembershipVerdict::NotMember { witness_e: *e });
            }
            e_max = *e;
        }
        Ok(MembershipVerdict::MemberUpTo { e_max })
    }

    /// Tests `z^{N-1} f^q ∈ J^[q] + (x^N+y^N+z^N)` for `q = p^e`,
    /// `e_min <= e <= e_max`, stopping at the first failure.
    pub fn tight_membership(&self, f: &Polynomial, j: &Ideal, e_min: u32, e_max: u32) -> Result<MembershipVerdict> {
        let targets = self.bracket_targets(j, e_min, e_max)?;
        self.probe(f, &targets)
    }

    /// `(I^k)* = m^{k+1} + I^k` for `N >= 3`, and `I^k` for `N = 2`.
    pub fn tight_closure_power(&self, k: u32) -> Result<Ideal> {
        let ik = self.i.power(k)?;
        let closure = if self.n >= 3 { self.m.power(k + 1)?.sum(&ik)? } else { ik };
        closure.interreduce()
    }

    /// Probes every monomial of degree at most `k+1` against `I^k` and
    /// compares with membership in the closed form.
    pub fn verify_closed_form(&self, k: u32, e_max: u32) -> Result<ClosedFormReport> {
        let ik = self.i.power(k)?;
        let closed = self.ring.lift(&self.tight_closure_power(k)?)?;
        let targets = self.bracket_targets(&ik, 1, e_max)?;
        let amb = self.ambient();
        let mut records = Vec::new();
        for deg in 0..=k + 1 {
            for mono in monomials_of_degree(3, deg) {
                let f = Polynomial::monomial(amb, mono.clone());
                let verdict = self.probe(&f, &targets)?;
                let expected = closed.contains_poly(&f, MonomialOrder::Grevlex)?;
                records.push(ClosedFormRecord {
                    monomial: mono.render(amb.var_names()),
                    verdict,
                    expected,
                    agree: expected == verdict.is_member(),
                });
            }
        }
        let disagreements = records.iter().filter(|r| !r.agree).count();
        Ok(ClosedFormReport { n: self.n, p: self.p(), k, e_max, records, disagreements })
    }

    /// Smallest `r` with `I (I^k)* = (I^{k+1})*` for all `r <= k <= k_max`,
    /// computed from the closed forms.
    pub fn tight_reduction_number(&self, k_max: u32) -> Result<u32> {
        if k_max + 1 < self.n {
            return Err(Error::InsufficientWindow(format!("k_max = {k_max} must be at least N - 1 = {}", self.n - 1)));
        }
        let mut holds = Vec::with_capacity(k_max as usize + 1);
        let mut current = Ideal::unit(self.ambient());
        for k in 0..=k_max {
            let next = self.tight_closure_power(k + 1)?;
            holds.push(self.ring.ideal_equals(&self.i.product(&current)?, &next)?);
            current = next;
        }
        if !holds[k_max as usize] {
            return Err(Error::NoStabilization(k_max as usize));
        }
        let r = holds.iter().rposition(|&h| !h).map_or(0, |last_bad| last_bad + 1);
        Ok(r as u32)
    }

    /// Tight Hilbert filtration `{(I^n)*}` of this ring.
    pub fn tight_filtration(&self) -> Filtration {
        Filtration::tight_diagonal(self)
    }

    /// `e_1*(I)` from interpolating `ℓ(R/(I^n)*)`.
    pub fn e1_star(&self) -> Result<i64> {
        let samples = self.n as i64 + 5;
        let coeffs = self.tight_filtration().fit(1, samples)?;
        Ok(coeffs.e[1])
    }

    /// Looks for an element of `I* \ I` among `x, x^2, ..., x^{N-1}` (the
    /// monomials outside `I` of positive degree), and reports `e_1*`.
    pub fn f_rationality_probe(&self, e_max: u32) -> Result<FRationality> {
        let e1_star = self.e1_star()?;
        let targets = self.bracket_targets(&self.i, 1, e_max)?;
        for a in 1..self.n {
            let f = Polynomial::monomial(self.ambient(), Monomial::new(vec![a, 0, 0]));
            if self.probe(&f, &targets)?.is_member() {
                return Ok(FRationality::NotFRational { witness: f.to_string(), e1_star });
            }
        }
        Ok(FRationality::FRational { e1_star })
    }
}

fn overflow(e: u32) -> Error {
    Error::ExponentOverflow(format!("Frobenius power at e = {e} does not fit; use a smaller e_max"))
}
