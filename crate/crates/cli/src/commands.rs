use rayon::prelude::*;
use serde_json::json;

use tightclose_core::{
    buchberger, DiagonalRing, FaceRing, MonomialOrder, PolyRing, Polynomial, PrimeField, SimplicialComplex,
};

use crate::{CliError, HypersurfaceArgs, GbArgs, Outcome, SrArgs, SCHEMA};

/// 7 for `N = 3`, otherwise the first of 5, 7, 11, ... not dividing `N`.
pub fn default_prime(n: u64) -> u64 {
    if n == 3 {
        return 7;
    }
    [5u64, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
        .into_iter()
        .find(|p| !n.is_multiple_of(*p))
        .unwrap_or(53)
}

pub fn hypersurface(a: &HypersurfaceArgs) -> Result<Outcome, CliError> {
    if a.e_max == 0 {
        return Err(CliError::Usage("--e-max must be at least 1".into()));
    }
    if a.n_max == 0 {
        return Err(CliError::Usage("--n-max must be at least 1".into()));
    }
    let p = a.p.unwrap_or_else(|| default_prime(a.n as u64));
    let ring = DiagonalRing::with_prime(p, a.n)?;
    let filt = ring.tight_filtration();

    let sample_hi = (a.n_max as i64).max(a.n as i64 + 4);
    let values = filt.hilbert_values(1, sample_hi)?;
    let coeffs = filt.fit(1, sample_hi)?;
    let mut rows = Vec::new();
    let mut lengths = Vec::new();
    for n in 1..=a.n_max as i64 {
        let length = values[n as usize - 1] as i128;
        let fitted = coeffs.evaluate(n);
        lengths.push(json!({"n": n, "length": length, "fitted": fitted, "residual": length - fitted}));
        rows.push(vec![n.to_string(), length.to_string(), fitted.to_string(), (length - fitted).to_string()]);
    }
    let stable_residuals_zero = (coeffs.stable_from..=a.n_max as i64)
        .all(|n| n < 1 || values[n as usize - 1] as i128 == coeffs.evaluate(n));

    let r_star = ring.tight_reduction_number(a.n_max.max(a.n + 1))?;
    let hsp = filt.hsp_coefficients(r_star as usize)?;
    let closed: Vec<_> = (1..=a.k_max)
        .into_par_iter()
        .map(|k| ring.verify_closed_form(k, a.e_max))
        .collect::<Result<_, _>>()?;
    let disagreements: usize = closed.iter().map(|r| r.disagreements).sum();
    let frat = ring.f_rationality_probe(a.e_max)?;

    let pass = disagreements == 0
        && stable_residuals_zero
        && hsp.e == coeffs.e
        && frat.is_f_rational() == (coeffs.e[1] == 0);
    let report = json!({
        "schema": SCHEMA,
        "command": "hypersurface",
        "N": a.n,
        "p": p,
        "e_max": a.e_max,
        "n_max": a.n_max,
        "lengths": lengths,
        "coefficients": coeffs,
        "hsp_coefficients": hsp,
        "tight_reduction_number": r_star,
        "closed_form": closed,
        "closed_form_disagreements": disagreements,
        "f_rationality": frat,
        "f_rational": frat.is_f_rational(),
        "membership_note": "MemberUpTo is evidence up to e_max; NotMember is a proof",
        "pass": pass,
    });
    Ok(Outcome { report, table: Some((vec!["n", "length", "fitted", "residual"], rows)), pass })
}

fn load_complex(path: &std::path::Path) -> Result<SimplicialComplex, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let is_json = path.extension().is_some_and(|e| e == "json") || text.trim_start().starts_with('{');
    let complex = if is_json { SimplicialComplex::from_json(&text) } else { SimplicialComplex::parse_facets(&text) };
    complex.map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn sr(a: &SrArgs) -> Result<Outcome, CliError> {
    let complex = load_complex(&a.facets)?;
    let field = PrimeField::new(a.p)?;
    let ring = FaceRing::new(field, &complex)?;
    let fh = complex.fh_vectors();
    let d = complex.krull_dim();
    let hd = fh.h[d];

    let counts = ring.ring().graded_dims(a.n_max + 1)?;
    let mut rows = Vec::new();
    let mut table = Vec::new();
    let mut running = 0u64;
    for n in 0..=a.n_max as usize {
        running += counts[n];
        let formula = complex.length_via_h(n as u64);
        let agree = formula == running as i128;
        table.push(json!({"n": n, "formula": formula, "count": running, "agree": agree}));
        rows.push(vec![n.to_string(), formula.to_string(), running.to_string(), agree.to_string()]);
    }
    let lengths_agree = table.iter().all(|r| r["agree"] == true);

    let by_fit: Vec<i64> = (1..=d.max(1) as u32)
        .into_par_iter()
        .map(|t| ring.ed_star_by_fit(t))
        .collect::<Result<_, _>>()?;
    let equivalences = ring.eulerian_equivalences(a.s_max, a.trials, a.seed)?;
    let pass = lengths_agree && by_fit.iter().all(|&e| e == hd) && equivalences.consistent;
    let report = json!({
        "schema": SCHEMA,
        "command": "sr",
        "complex": complex,
        "p": a.p,
        "seed": a.seed,
        "d": d,
        "f": fh.f,
        "h": fh.h,
        "chi": fh.chi,
        "eulerian": complex.is_eulerian(),
        "ed_star": hd,
        "ed_star_by_fit": by_fit,
        "lengths": table,
        "equivalences": equivalences,
        "cohen_macaulay_assumed": true,
        "pass": pass,
    });
    Ok(Outcome { report, table: Some((vec!["n", "formula", "count", "agree"], rows)), pass })
}

pub fn gb(a: &GbArgs) -> Result<Outcome, CliError> {
    let field = PrimeField::new(a.p)?;
    let names: Vec<String> = a.vars.split(',').map(|s| s.trim().to_string()).collect();
    let ring = PolyRing::from_names(field, names)?;
    let order: MonomialOrder = a.order.parse()?;
    let gens = a.gens.iter().map(|g| Polynomial::parse(&ring, g)).collect::<Result<Vec<_>, _>>()?;
    let basis = buchberger(&gens, order)?;
    let initial: Vec<String> = basis
        .iter()
        .map(|g| g.leading_monomial(order).expect("basis elements are nonzero").render(ring.var_names()))
        .collect();
    let report = json!({
        "schema": SCHEMA,
        "command": "gb",
        "p": a.p,
        "vars": ring.var_names(),
        "order": order.to_string(),
        "basis": basis.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "initial_ideal": initial,
        "pass": true,
    });
    let rows = basis.iter().zip(&initial).map(|(g, m)| vec![format!("\"{g}\""), m.clone()]).collect();
    Ok(Outcome { report, table: Some((vec!["generator", "leading_monomial"], rows)), pass: true })
}
