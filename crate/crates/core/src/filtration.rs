use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::combinat::binomial;
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::quotient::QuotientRing;
use crate::tight::DiagonalRing;

/// How the n-th ideal of a filtration is produced.
#[derive(Debug, Clone)]
pub enum FiltrationRule {
    /// `I_n = I^n`.
    Adic,
    /// `I_n = m^{step n}`; both the tight and the integral closure
    /// filtration of a product of `step` lsop ideals in a face ring.
    MaximalPower { step: u32 },
    /// `I_n = (I^n)*` in a diagonal hypersurface, by the closed form.
    TightDiagonal(DiagonalRing),
    /// `I_1, ..., I_k` given; beyond `k`, `I_n = I^{n-k} I_k`.
    Explicit(Vec<Ideal>),
}

/// A filtration `{I_n}` of ideals of `R` over a base ideal `I` with
/// `I^n ⊆ I_n` and `I_n = R` for `n <= 0`. Ideals are lifts; every
/// comparison adjoins the modulus of `R`.
#[derive(Debug, Clone)]
pub struct Filtration {
    ring: QuotientRing,
    base: Ideal,
    rule: FiltrationRule,
}

/// Hilbert coefficients in the convention
/// `ℓ(R/I_n) = Σ_i (-1)^i e_i C(n+d-1-i, d-i)` for `n >= stable_from`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertCoefficients {
    pub d: usize,
    pub e: Vec<i64>,
    pub stable_from: i64,
}

impl HilbertCoefficients {
    pub fn evaluate(&self, n: i64) -> i128 {
        hilbert_polynomial_value(&self.e, self.d, n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HiPVerdict {
    HoldsUpTo(usize),
    FailsAt(usize),
}

impl HiPVerdict {
    pub fn holds(self) -> bool {
        matches!(self, HiPVerdict::HoldsUpTo(_))
    }
}

/// `Σ_i (-1)^i e_i C(n+d-1-i, d-i)`.
pub fn hilbert_polynomial_value(e: &[i64], d: usize, n: i64) -> i128 {
    let d = d as i64;
    e.iter()
        .enumerate()
        .map(|(i, &ei)| {
            let i = i as i64;
            let sign = if i % 2 == 0 { 1 } else { -1 };
            sign * ei as i128 * binomial(n + d - 1 - i, d - i)
        })
        .sum()
}

/// Interpolates Hilbert coefficients from `values[j] = ℓ(R/I_{offsets[j]})`
/// (consecutive offsets). A window of `d+1` samples is slid forward until
/// the solution is integral and reproduces every later sample, with at
/// least two later samples required.
pub fn fit_hilbert_coefficients(values: &[i128], offsets: &[i64], d: usize) -> Result<HilbertCoefficients> {
    if values.len() != offsets.len() {
        return Err(Error::InvalidArgument(format!(
            "{} values for {} offsets",
            values.len(),
            offsets.len()
        )));
    }
    if offsets.windows(2).any(|w| w[1] != w[0] + 1) {
        return Err(Error::InvalidArgument("offsets must be consecutive".into()));
    }
    let width = d + 1;
    if values.len() < width + 2 {
        return Err(Error::NotYetStable(format!(
            "{} samples; need at least {} for d = {d}",
            values.len(),
            width + 2
        )));
    }
    for start in 0..=values.len() - width - 2 {
        let Some(e) = solve_window(&values[start..start + width], &offsets[start..start + width], d) else {
            continue;
        };
        let fits = |j: usize| hilbert_polynomial_value(&e, d, offsets[j]) == values[j];
        if !(start + width..values.len()).all(fits) {
            continue;
        }
        let mut first = start;
        while first > 0 && fits(first - 1) {
            first -= 1;
        }
        return Ok(HilbertCoefficients { d, e, stable_from: offsets[first] });
    }
    Err(Error::NotYetStable(format!(
        "no window of {width} samples in n = {}..={} validates; extend the range",
        offsets[0],
        offsets[offsets.len() - 1]
    )))
}

/// Exact solve of the square system in the binomial basis; `None` when the
/// solution is not integral.
fn solve_window(values: &[i128], offsets: &[i64], d: usize) -> Option<Vec<i64>> {
    let width = d + 1;
    let mut a: Vec<Vec<Ratio<i128>>> = offsets
        .iter()
        .zip(values)
        .map(|(&n, &v)| {
            let mut row: Vec<Ratio<i128>> = (0..width as i64)
                .map(|i| {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    Ratio::from_integer(sign * binomial(n + d as i64 - 1 - i, d as i64 - i))
                })
                .collect();
            row.push(Ratio::from_integer(v));
            row
        })
        .collect();
    for col in 0..width {
        let pivot = (col..width).find(|&r| a[r][col] != Ratio::from_integer(0))?;
        a.swap(col, pivot);
        let p = a[col][col];
        for c in col..=width {
            a[col][c] /= p;
        }
        for r in 0..width {
            if r != col && a[r][col] != Ratio::from_integer(0) {
                let factor = a[r][col];
                for c in col..=width {
                    let delta = factor * a[col][c];
                    a[r][c] -= delta;
                }
            }
        }
    }
    a.iter()
        .map(|row| {
            let x = row[width];
            x.is_integer().then(|| i64::try_from(x.to_integer()).ok()).flatten()
        })
        .collect()
}

/// Both sides of `C(n+d-k-1, d-1) = Σ_{j=1}^{k+1} (-1)^{j-1} C(k, j-1) C(n+d-j, d-j)`.
pub fn binomial_expand(d: i64, k: i64, n: i64) -> (i128, i128) {
    let lhs = binomial(n + d - k - 1, d - 1);
    let rhs = (1..=k + 1)
        .map(|j| {
            let sign = if (j - 1) % 2 == 0 { 1 } else { -1 };
            sign * binomial(k, j - 1) * binomial(n + d - j, d - j)
        })
        .sum();
    (lhs, rhs)
}

impl Filtration {
    pub fn new(ring: &QuotientRing, base: &Ideal, rule: FiltrationRule) -> Filtration {
        Filtration { ring: ring.clone(), base: base.clone(), rule }
    }

    pub fn adic(ring: &QuotientRing, base: &Ideal) -> Filtration {
        Filtration::new(ring, base, FiltrationRule::Adic)
    }

    pub fn maximal_power(ring: &QuotientRing, base: &Ideal, step: u32) -> Filtration {
        Filtration::new(ring, base, FiltrationRule::MaximalPower { step })
    }

    pub fn tight_diagonal(d: &DiagonalRing) -> Filtration {
        Filtration::new(d.ring(), d.parameter_ideal(), FiltrationRule::TightDiagonal(d.clone()))
    }

    pub fn explicit(ring: &QuotientRing, base: &Ideal, ideals: Vec<Ideal>) -> Result<Filtration> {
        if ideals.is_empty() {
            return Err(Error::InvalidArgument("explicit filtration needs at least I_1".into()));
        }
        Ok(Filtration::new(ring, base, FiltrationRule::Explicit(ideals)))
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn base(&self) -> &Ideal {
        &self.base
    }

    pub fn rule(&self) -> &FiltrationRule {
        &self.rule
    }

    /// `I_n`; the unit ideal for `n <= 0`.
    pub fn ideal(&self, n: i64) -> Result<Ideal> {
        let amb = self.ring.ambient();
        if n <= 0 {
            return Ok(Ideal::unit(amb));
        }
        let n32 = u32::try_from(n).map_err(|_| Error::InvalidArgument(format!("index {n} too large")))?;
        match &self.rule {
            FiltrationRule::Adic => self.base.power(n32),
            FiltrationRule::MaximalPower { step } => Ok(Ideal::maximal_power(amb, step * n32)),
            FiltrationRule::TightDiagonal(d) => d.tight_closure_power(n32),
            FiltrationRule::Explicit(list) => {
                let k = list.len();
                if (n as usize) <= k {
                    Ok(list[n as usize - 1].clone())
                } else {
                    self.base.power((n as usize - k) as u32)?.product(&list[k - 1])
                }
            }
        }
    }

    /// `ℓ(R/I_n)`.
    pub fn length(&self, n: i64) -> Result<u64> {
        if let FiltrationRule::MaximalPower { step } = self.rule {
            if self.ring.modulus().is_homogeneous() {
                return self.ring.length_mod_maximal_power(step * n.max(0) as u32);
            }
        }
        self.ring.length(&self.ideal(n)?)
    }

    /// `ℓ(R/I_n)` for `n` in `lo..=hi`.
    pub fn hilbert_values(&self, lo: i64, hi: i64) -> Result<Vec<u64>> {
        (lo..=hi).map(|n| self.length(n)).collect()
    }

    /// Interpolated coefficients from the samples `n = lo..=hi`, with `d`
    /// the dimension of the ring.
    pub fn fit(&self, lo: i64, hi: i64) -> Result<HilbertCoefficients> {
        let values: Vec<i128> = self.hilbert_values(lo, hi)?.into_iter().map(i128::from).collect();
        let offsets: Vec<i64> = (lo..=hi).collect();
        fit_hilbert_coefficients(&values, &offsets, self.ring.dim())
    }

    /// `I_{n+1} ∩ I^{n-p} = I_{p+1} I^{n-p}` for `p <= n <= n_max`.
    pub fn hi_p_check(&self, p: usize, n_max: usize) -> Result<HiPVerdict> {
        let lifted_next = self.ring.lift(&self.ideal(p as i64 + 1)?)?;
        for n in p..=n_max {
            let ipow = self.base.power((n - p) as u32)?;
            let lhs = self.ring.lift(&self.ideal(n as i64 + 1)?)?.intersect(&self.ring.lift(&ipow)?)?;
            let rhs = lifted_next.product(&ipow)?;
            if !self.ring.ideal_equals(&lhs, &rhs)? {
                return Ok(HiPVerdict::FailsAt(n));
            }
        }
        Ok(HiPVerdict::HoldsUpTo(n_max))
    }

    /// Whether `I I_n = I_{n+1}` in `R`.
    fn reduces_at(&self, n: i64) -> Result<bool> {
        let lhs = self.base.product(&self.ideal(n)?)?;
        self.ring.ideal_equals(&lhs, &self.ideal(n + 1)?)
    }

    /// Smallest `r <= n_max` with `I I_n = I_{n+1}` for all `r <= n <= n_max`.
    pub fn reduction_number(&self, n_max: usize) -> Result<usize> {
        let mut r = None;
        for n in (0..=n_max).rev() {
            if !self.reduces_at(n as i64)? {
                break;
            }
            r = Some(n);
        }
        r.ok_or(Error::NoStabilization(n_max))
    }

    /// `e_0 = ℓ(R/I)` and
    /// `e_i = Σ_{k=i-1}^{r-1} C(k, i-1) ℓ(I_{k+1} / I I_k)` for `i >= 1`.
    pub fn hsp_coefficients(&self, r: usize) -> Result<HilbertCoefficients> {
        let d = self.ring.dim();
        let e0 = self.ring.length(&self.base)?;
        let corrections: Vec<i128> = (0..r as i64)
            .map(|k| self.step_length(k).map(i128::from))
            .collect::<Result<_>>()?;
        let mut e = vec![e0 as i64];
        for i in 1..=d as i64 {
            let ei: i128 = (i - 1..r as i64).map(|k| binomial(k, i - 1) * corrections[k as usize]).sum();
            e.push(ei as i64);
        }
        Ok(HilbertCoefficients { d, e, stable_from: r as i64 })
    }

    /// `ℓ(I_{k+1} / I I_k) = ℓ(R/I I_k) - ℓ(R/I_{k+1})`.
    pub fn step_length(&self, k: i64) -> Result<u64> {
        let low = self.ring.length(&self.base.product(&self.ideal(k)?)?)?;
        let high = self.length(k + 1)?;
        Ok(low - high)
    }

    /// `e_1 >= e_0 - ℓ(R/I_1)`.
    pub fn huckaba_marley_bound(&self, coeffs: &HilbertCoefficients) -> Result<bool> {
        let l1 = self.length(1)? as i64;
        Ok(coeffs.e[1] >= coeffs.e[0] - l1)
    }

    /// Both sides of
    /// `ℓ(I^{n-k} I_{k+1} / I^{n-k+1} I_k) = C(n+d-k-1, d-1) ℓ(I_{k+1} / I I_k)`
    /// for `n >= k >= 1`.
    pub fn iso_length_identity(&self, k: usize, n: usize) -> Result<(i128, i128)> {
        if k == 0 || n < k {
            return Err(Error::InvalidArgument(format!("need n >= k >= 1, got k = {k}, n = {n}")));
        }
        let d = self.ring.dim() as i64;
        let small = self.base.power((n - k) as u32)?.product(&self.ideal(k as i64 + 1)?)?;
        let large = self.base.power((n - k + 1) as u32)?.product(&self.ideal(k as i64)?)?;
        let lhs = self.ring.length(&large)? as i128 - self.ring.length(&small)? as i128;
        let rhs = binomial(n as i64 + d - k as i64 - 1, d - 1) * self.step_length(k as i64)? as i128;
        Ok((lhs, rhs))
    }

    /// Whether `I_{n+1} = I_2 I^{n-1}` for `1 <= n <= n_max`.
    pub fn generated_in_degree_two(&self, n_max: usize) -> Result<bool> {
        let i2 = self.ideal(2)?;
        for n in 1..=n_max {
            let rhs = i2.product(&self.base.power(n as u32 - 1)?)?;
            if !self.ring.ideal_equals(&self.ideal(n as i64 + 1)?, &rhs)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `I_{n+1} ⊆ I_n`, `I^n ⊆ I_n` and `I_a I_b ⊆ I_{a+b}` for indices up
    /// to `n_max`.
    pub fn check_axioms(&self, n_max: usize) -> Result<bool> {
        for n in 1..=n_max as i64 {
            let in_ = self.ideal(n)?;
            if !self.ring.ideal_contains(&in_, &self.ideal(n + 1)?)? {
                return Ok(false);
            }
            if !self.ring.ideal_contains(&in_, &self.base.power(n as u32)?)? {
                return Ok(false);
            }
            for a in 1..n {
                let prod = self.ideal(a)?.product(&self.ideal(n - a)?)?;
                if !self.ring.ideal_contains(&in_, &prod)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
