use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use tightclose_core::filtration::binomial_expand;
use tightclose_core::{initial_ideal, DiagonalRing, Filtration, Ideal, Monomial, MonomialOrder};

use crate::commands::default_prime;
use crate::{CliError, Outcome, Suite, VerifyArgs, SCHEMA};

#[derive(Serialize)]
struct Record {
    suite: &'static str,
    instance: String,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
}

type Check = Box<dyn Fn() -> tightclose_core::Result<bool> + Send + Sync>;

struct Task {
    suite: &'static str,
    instance: String,
    check: Check,
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::InitialIdeal => "initial-ideal",
        Suite::Binomial => "binomial",
        Suite::TightIntersection => "tight-intersection",
        Suite::Watanabe => "watanabe",
        Suite::ItohIntegral => "itoh-integral",
        Suite::Hip => "hip",
        Suite::Hspoly => "hspoly",
        Suite::All => "all",
    }
}

/// `(N, p)` pairs for a suite, rejecting a user prime that divides `N`.
fn rings(a: &VerifyArgs, default: RangeInclusive<u64>) -> Result<Vec<(u32, u64)>, CliError> {
    let ns = a.big_n.clone().unwrap_or(default);
    ns.map(|n| {
        if n < 2 || n > u32::MAX as u64 {
            return Err(CliError::Usage(format!("N = {n} must be at least 2")));
        }
        let p = a.p.unwrap_or_else(|| default_prime(n));
        if n % p == 0 {
            return Err(CliError::Usage(format!("p = {p} divides N = {n}")));
        }
        Ok((n as u32, p))
    })
    .collect()
}

fn tasks_for(suite: Suite, a: &VerifyArgs) -> Result<Vec<Task>, CliError> {
    let name = suite_name(suite);
    let mut tasks: Vec<Task> = Vec::new();
    let mut push = |instance: String, check: Check| tasks.push(Task { suite: name, instance, check });
    match suite {
        Suite::InitialIdeal => {
            for (n, p) in rings(a, 2..=4)? {
                for q in a.q.values(p).map_err(CliError::Usage)? {
                    for k in a.k.clone() {
                        let k = k as u32;
                        push(format!("N={n} p={p} q={q} k={k}"), Box::new(move || initial_ideal_case(n, p, q, k)));
                    }
                }
            }
        }
        Suite::Binomial => {
            for d in a.d.clone() {
                for k in a.k.clone() {
                    for n in a.n.clone() {
                        let (d, k, n) = (d as i64, k as i64, n as i64);
                        push(
                            format!("d={d} k={k} n={n}"),
                            Box::new(move || {
                                let (lhs, rhs) = binomial_expand(d, k, n);
                                Ok(lhs == rhs)
                            }),
                        );
                    }
                }
            }
        }
        Suite::TightIntersection => {
            let n_max = a.n_max.unwrap_or(4);
            for (n, p) in rings(a, 3..=4)? {
                for k in 1..=n_max {
                    push(format!("N={n} p={p} n={k}"), Box::new(move || tight_intersection_case(n, p, k)));
                }
            }
        }
        Suite::Watanabe => {
            let e_max = a.e_max;
            for (n, p) in rings(a, 2..=2)? {
                if n != 2 {
                    return Err(CliError::Usage("the watanabe suite concerns N = 2 only".into()));
                }
                for k in a.k.clone() {
                    let k = k as u32;
                    push(
                        format!("N={n} p={p} k={k}"),
                        Box::new(move || {
                            let d = DiagonalRing::with_prime(p, n)?;
                            let ik = d.parameter_ideal().power(k)?;
                            Ok(d.verify_closed_form(k, e_max)?.disagreements == 0
                                && d.ring().ideal_equals(&d.tight_closure_power(k)?, &ik)?)
                        }),
                    );
                }
            }
        }
        Suite::ItohIntegral => {
            let n_max = a.n_max.unwrap_or(4);
            for (n, p) in rings(a, 3..=4)? {
                for k in 1..=n_max {
                    push(
                        format!("N={n} p={p} n={k}"),
                        Box::new(move || {
                            let d = DiagonalRing::with_prime(p, n)?;
                            let r = d.ring();
                            let ik = d.parameter_ideal().power(k)?;
                            let lhs = r.lift(&d.maximal_ideal().power(k + 1)?)?.intersect(&r.lift(&ik)?)?;
                            r.ideal_equals(&lhs, &d.maximal_ideal().product(&ik)?)
                        }),
                    );
                }
            }
        }
        Suite::Hip => {
            let n_max = a.n_max.unwrap_or(5) as usize;
            for (n, p) in rings(a, 3..=4)? {
                let r = DiagonalRing::with_prime(p, n)?.tight_reduction_number(n + 2)? as usize;
                let conds: BTreeSet<usize> = std::iter::once(0).chain(r.saturating_sub(1)..=r + 1).collect();
                for p_cond in conds {
                    push(
                        format!("N={n} p={p} HI_{p_cond} n<={n_max}"),
                        Box::new(move || {
                            let d = DiagonalRing::with_prime(p, n)?;
                            Ok(d.tight_filtration().hi_p_check(p_cond, n_max)?.holds())
                        }),
                    );
                }
            }
        }
        Suite::Hspoly => {
            for (n, p) in rings(a, 3..=4)? {
                push(
                    format!("N={n} p={p}"),
                    Box::new(move || {
                        let d = DiagonalRing::with_prime(p, n)?;
                        let f: Filtration = d.tight_filtration();
                        let r = f.reduction_number(n as usize + 3)?;
                        Ok(f.hsp_coefficients(r)?.e == f.fit(1, n as i64 + 5)?.e)
                    }),
                );
            }
        }
        Suite::All => unreachable!("expanded by the caller"),
    }
    Ok(tasks)
}

fn initial_ideal_case(n: u32, p: u64, q: u64, k: u32) -> tightclose_core::Result<bool> {
    let d = DiagonalRing::with_prime(p, n)?;
    let amb = d.ambient();
    let yz = Ideal::new(amb, vec![d.parse(&format!("y^{q}"))?, d.parse(&format!("z^{q}"))?])?;
    let mut gens = d.ring().modulus().gens().to_vec();
    gens.extend(yz.power(k)?.gens().iter().cloned());
    let got: BTreeSet<Monomial> = initial_ideal(&gens, MonomialOrder::Grevlex)?.into_iter().collect();
    let q = u32::try_from(q).map_err(|_| tightclose_core::Error::ExponentOverflow(format!("q = {q}")))?;
    let mut expected: BTreeSet<Monomial> = (0..=k).map(|a| Monomial::new(vec![0, q * a, q * (k - a)])).collect();
    expected.insert(Monomial::new(vec![n, 0, 0]));
    Ok(got == expected)
}

fn tight_intersection_case(n: u32, p: u64, k: u32) -> tightclose_core::Result<bool> {
    let d = DiagonalRing::with_prime(p, n)?;
    let r = d.ring();
    let ik = d.parameter_ideal().power(k)?;
    let lhs = r.lift(&ik)?.intersect(&r.lift(&d.tight_closure_power(k + 1)?)?)?;
    let rhs = ik.product(&d.tight_closure_power(1)?)?;
    r.ideal_equals(&lhs, &rhs)
}

pub fn verify(a: &VerifyArgs) -> Result<Outcome, CliError> {
    let mut suites: BTreeSet<Suite> = a.suite.iter().copied().collect();
    if suites.remove(&Suite::All) {
        suites.extend([
            Suite::InitialIdeal,
            Suite::Binomial,
            Suite::TightIntersection,
            Suite::Watanabe,
            Suite::ItohIntegral,
            Suite::Hip,
            Suite::Hspoly,
        ]);
    }
    if a.e_max == 0 {
        return Err(CliError::Usage("--e-max must be at least 1".into()));
    }
    let mut tasks = Vec::new();
    for s in suites {
        tasks.extend(tasks_for(s, a)?);
    }
    // collect() on an indexed parallel iterator keeps task order
    let records: Vec<Record> = tasks
        .par_iter()
        .map(|t| {
            let (pass, detail) = match (t.check)() {
                Ok(b) => (b, None),
                Err(e) => (false, Some(e.to_string())),
            };
            Record { suite: t.suite, instance: t.instance.clone(), pass, detail }
        })
        .collect();
    let failures = records.iter().filter(|r| !r.pass).count();
    let pass = failures == 0;
    let rows = records
        .iter()
        .map(|r| vec![r.suite.to_string(), format!("\"{}\"", r.instance), r.pass.to_string()])
        .collect();
    let report = json!({
        "schema": SCHEMA,
        "command": "verify",
        "checks": records,
        "total": records.len(),
        "failures": failures,
        "pass": pass,
    });
    Ok(Outcome { report, table: Some((vec!["suite", "instance", "pass"], rows)), pass })
}
