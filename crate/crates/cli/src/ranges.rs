//! Argument syntax shared by the subcommands: inclusive ranges `a..b` and
//! Frobenius exponents `p^a..p^b`.

use std::ops::RangeInclusive;

/// `"3"` or `"2..4"` (inclusive).
pub fn parse_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let s = s.trim();
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let lo: u64 = lo.trim().parse().map_err(|_| format!("bad range start in '{s}'"))?;
    let hi: u64 = hi.trim().parse().map_err(|_| format!("bad range end in '{s}'"))?;
    if lo > hi {
        return Err(format!("empty range '{s}'"));
    }
    Ok(lo..=hi)
}

/// Which Frobenius powers `q` to test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QSpec {
    /// `p^a..p^b`: exponents relative to each ring's characteristic.
    Exponents(RangeInclusive<u32>),
    /// Literal comma-separated values, e.g. `7,49`.
    Values(Vec<u64>),
}

impl QSpec {
    pub fn values(&self, p: u64) -> Result<Vec<u64>, String> {
        match self {
            QSpec::Exponents(r) => r
                .clone()
                .map(|e| p.checked_pow(e).ok_or_else(|| format!("p^{e} overflows for p = {p}")))
                .collect(),
            QSpec::Values(v) => {
                for &q in v {
                    let mut t = q;
                    while t > 1 && t % p == 0 {
                        t /= p;
                    }
                    if t != 1 || q == 1 {
                        return Err(format!("{q} is not a positive power of {p}"));
                    }
                }
                Ok(v.clone())
            }
        }
    }
}

pub fn parse_q(s: &str) -> Result<QSpec, String> {
    let s = s.trim();
    if s.starts_with("p^") {
        let exp = |t: &str| -> Result<u32, String> {
            t.trim()
                .strip_prefix("p^")
                .and_then(|e| e.parse().ok())
                .ok_or_else(|| format!("expected p^e, got '{t}'"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (exp(a)?, exp(b)?),
            None => (exp(s)?, exp(s)?),
        };
        if lo == 0 || lo > hi {
            return Err(format!("bad exponent range '{s}'"));
        }
        return Ok(QSpec::Exponents(lo..=hi));
    }
    let values = s
        .split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|_| format!("bad q value '{t}'")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(QSpec::Values(values))
}
