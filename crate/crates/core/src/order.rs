use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::Monomial;

/// Term orders on monomials. Variables are ranked in ring order, the first
/// variable being the largest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    Grevlex,
    Lex,
    /// Elimination order for the first `k` variables: grevlex on the first
    /// block decides, ties are broken by grevlex on the rest.
    Block(usize),
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars() != b.nvars() {
            return Err(Error::DimensionMismatch { expected: a.nvars(), found: b.nvars() });
        }
        Ok(self.cmp(a, b))
    }

    /// Unchecked comparison for monomials of the same ring.
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        match *self {
            MonomialOrder::Lex => ea.cmp(eb),
            MonomialOrder::Grevlex => grevlex(ea, eb),
            MonomialOrder::Block(k) => {
                let k = k.min(ea.len());
                grevlex(&ea[..k], &eb[..k]).then_with(|| grevlex(&ea[k..], &eb[k..]))
            }
        }
    }
}

#[inline]
fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b.iter()).rev() {
            if x != y {
                // smaller exponent in the last differing variable wins
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Grevlex => f.write_str("grevlex"),
            MonomialOrder::Lex => f.write_str("lex"),
            MonomialOrder::Block(k) => write!(f, "block:{k}"),
        }
    }
}

impl FromStr for MonomialOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "grevlex" => Ok(MonomialOrder::Grevlex),
            "lex" => Ok(MonomialOrder::Lex),
            other => {
                let k = other
                    .strip_prefix("block:")
                    .and_then(|k| k.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown monomial order `{other}`")))?;
                Ok(MonomialOrder::Block(k))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_slice(e)
    }

    /// Textbook grevlex: a > b iff deg a > deg b, or equal degree and the
    /// last nonzero entry of a - b is negative.
    fn grevlex_oracle(a: &[u32], b: &[u32]) -> Ordering {
        let da: i64 = a.iter().map(|&e| e as i64).sum();
        let db: i64 = b.iter().map(|&e| e as i64).sum();
        if da != db {
            return da.cmp(&db);
        }
        let diff: Vec<i64> = a.iter().zip(b).map(|(x, y)| *x as i64 - *y as i64).collect();
        match diff.iter().rev().find(|&&d| d != 0) {
            None => Ordering::Equal,
            Some(&d) if d < 0 => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }

    #[test]
    fn grevlex_degree_three_in_xyz() {
        // x2y, xyz, y3: the last-variable rule puts y3 above xyz
        let mut v = vec![m(&[1, 1, 1]), m(&[0, 3, 0]), m(&[2, 1, 0])];
        v.sort_by(|a, b| MonomialOrder::Grevlex.cmp(b, a));
        assert_eq!(v, vec![m(&[2, 1, 0]), m(&[0, 3, 0]), m(&[1, 1, 1])]);
        // every permutation sorts to the same result
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let base = [m(&[2, 1, 0]), m(&[1, 1, 1]), m(&[0, 3, 0])];
        for p in perms {
            let mut w: Vec<Monomial> = p.iter().map(|&i| base[i].clone()).collect();
            w.sort_by(|a, b| grevlex_oracle(b.exponents(), a.exponents()));
            assert_eq!(w, v);
        }
    }

    #[test]
    fn leading_term_of_x_times_power_of_y2_plus_z2() {
        // X(Y^2+Z^2)^u Z has leading term X Y^{2u} Z
        let u = 3;
        let cands: Vec<Monomial> = (0..=u).map(|j| m(&[1, 2 * j, 2 * (u - j) + 1])).collect();
        let lead = cands.iter().max_by(|a, b| MonomialOrder::Grevlex.cmp(a, b)).unwrap();
        assert_eq!(lead, &m(&[1, 2 * u, 1]));
    }

    #[test]
    fn block_order_eliminates() {
        let ord = MonomialOrder::Block(1);
        // t beats any power of the remaining variables
        assert_eq!(ord.cmp(&m(&[1, 0, 0]), &m(&[0, 9, 9])), Ordering::Greater);
        assert_eq!(ord.cmp(&m(&[0, 2, 0]), &m(&[0, 1, 1])), Ordering::Greater);
        assert!(MonomialOrder::Grevlex.compare(&m(&[1]), &m(&[1, 0])).is_err());
    }

    #[test]
    fn parse_roundtrip() {
        for o in [MonomialOrder::Grevlex, MonomialOrder::Lex, MonomialOrder::Block(2)] {
            assert_eq!(o.to_string().parse::<MonomialOrder>().unwrap(), o);
        }
    }

    fn orders() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![
            Just(MonomialOrder::Grevlex),
            Just(MonomialOrder::Lex),
            (0usize..=4).prop_map(MonomialOrder::Block)
        ]
    }

    proptest! {
        #[test]
        fn term_order_axioms(
            ord in orders(),
            a in proptest::collection::vec(0u32..6, 4),
            b in proptest::collection::vec(0u32..6, 4),
            c in proptest::collection::vec(0u32..6, 4),
        ) {
            let (a, b, c) = (m(&a), m(&b), m(&c));
            prop_assert_eq!(ord.cmp(&a, &a), Ordering::Equal);
            prop_assert_eq!(ord.cmp(&a, &b), ord.cmp(&b, &a).reverse());
            prop_assert_eq!(ord.cmp(&a, &b) == Ordering::Equal, a == b);
            if ord.cmp(&a, &b) == Ordering::Less {
                prop_assert_eq!(ord.cmp(&a.mul(&c), &b.mul(&c)), Ordering::Less);
                if ord.cmp(&b, &c) == Ordering::Less {
                    prop_assert_eq!(ord.cmp(&a, &c), Ordering::Less);
                }
            }
            prop_assert_ne!(ord.cmp(&Monomial::one(4), &a), Ordering::Greater);
        }

        #[test]
        fn grevlex_matches_oracle(
            a in proptest::collection::vec(0u32..5, 3),
            b in proptest::collection::vec(0u32..5, 3),
        ) {
            prop_assert_eq!(MonomialOrder::Grevlex.cmp(&m(&a), &m(&b)), grevlex_oracle(&a, &b));
        }
    }
}
