//! End-to-end acceptance checks. Each criterion runs in isolation, prints a
//! PASS/FAIL line, and the test fails if any criterion fails.

use std::collections::BTreeSet;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use tightclose_core::combinat::binomial;
use tightclose_core::filtration::binomial_expand;
use tightclose_core::{
    initial_ideal, DiagonalRing, FaceRing, Filtration, FRationality, Ideal, MembershipVerdict, Monomial,
    MonomialOrder, Polynomial, PrimeField, SimplicialComplex,
};

fn fixture(name: &str) -> SimplicialComplex {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    SimplicialComplex::parse_facets(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn diag(p: u64, n: u32) -> DiagonalRing {
    DiagonalRing::with_prime(p, n).unwrap()
}

/// `ℓ(R/(I^{n+1})*)` for `n = 1..=6` against a closed formula, plus the
/// interpolated coefficients.
fn tight_lengths(d: &DiagonalRing, formula: impl Fn(i64) -> i128, e: [i64; 3]) {
    let f = d.tight_filtration();
    for n in 1..=6i64 {
        assert_eq!(f.length(n + 1).unwrap() as i128, formula(n), "N={} n={n}", d.n());
    }
    assert_eq!(f.fit(1, 7).unwrap().e, e.to_vec());
}

fn criterion_1() {
    let start = Instant::now();
    let d = diag(7, 3);
    tight_lengths(&d, |n| 3 * binomial(n + 2, 2) - (n as i128 + 1), [3, 1, 0]);
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
}

fn criterion_2() {
    let start = Instant::now();
    let d = diag(5, 4);
    tight_lengths(&d, |n| 4 * binomial(n + 2, 2) - 3 * (n as i128 + 1) + 1, [4, 3, 1]);
    assert_eq!(d.tight_reduction_number(5).unwrap(), 2);
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
}

fn criterion_3() {
    for (n, p) in [(3, 5), (3, 7), (4, 5), (4, 7), (5, 7)] {
        let d = diag(p, n);
        assert_eq!(d.tight_reduction_number(n + 2).unwrap(), n - 2, "N={n} p={p}");
        for k in 1..=3 {
            let report = d.verify_closed_form(k, 2).unwrap();
            let bad: Vec<_> = report.records.iter().filter(|r| !r.agree).collect();
            assert!(bad.is_empty(), "N={n} p={p} k={k}: {bad:?}");
        }
    }
}

fn criterion_4() {
    let d = diag(5, 2);
    let x = d.parse("x").unwrap();
    assert_eq!(
        d.tight_membership(&x, d.parameter_ideal(), 1, 2).unwrap(),
        MembershipVerdict::NotMember { witness_e: 1 }
    );
    for k in 1..=3 {
        let ik = d.parameter_ideal().power(k).unwrap();
        assert!(d.ring().ideal_equals(&d.tight_closure_power(k).unwrap(), &ik).unwrap());
        assert_eq!(d.verify_closed_form(k, 2).unwrap().disagreements, 0, "k={k}");
    }
    assert_eq!(d.e1_star().unwrap(), 0);
    assert_eq!(d.f_rationality_probe(2).unwrap(), FRationality::FRational { e1_star: 0 });
}

fn criterion_5() {
    for (n, p) in [(2u32, 5u64), (3, 7), (4, 5)] {
        let d = diag(p, n);
        let amb = d.ambient();
        let hyper = d.ring().modulus().gens()[0].clone();
        for q in [p, p * p] {
            for k in 1..=3u32 {
                let yz = Ideal::new(amb, vec![d.parse(&format!("y^{q}")).unwrap(), d.parse(&format!("z^{q}")).unwrap()])
                    .unwrap();
                let mut gens = vec![hyper.clone()];
                gens.extend(yz.power(k).unwrap().gens().iter().cloned());
                let got: BTreeSet<Monomial> =
                    initial_ideal(&gens, MonomialOrder::Grevlex).unwrap().into_iter().collect();
                let q32 = q as u32;
                let mut expected: BTreeSet<Monomial> =
                    (0..=k).map(|a| Monomial::new(vec![0, q32 * a, q32 * (k - a)])).collect();
                expected.insert(Monomial::new(vec![n, 0, 0]));
                assert_eq!(got, expected, "N={n} q={q} k={k}");
            }
        }
    }
}

fn criterion_6() {
    for (n, p) in [(3u32, 7u64), (4, 5)] {
        let d = diag(p, n);
        let r = d.ring();
        let i = d.parameter_ideal();
        let i_star = d.tight_closure_power(1).unwrap();
        for k in 1..=4u32 {
            let ik = i.power(k).unwrap();
            let lhs = r.lift(&ik).unwrap().intersect(&r.lift(&d.tight_closure_power(k + 1).unwrap()).unwrap()).unwrap();
            let rhs = ik.product(&i_star).unwrap();
            assert!(r.ideal_equals(&lhs, &rhs).unwrap(), "N={n} n={k}");
        }
    }
}

fn criterion_7() {
    for (n, p, r) in [(3u32, 7u64, 1usize), (4, 5, 2)] {
        let d = diag(p, n);
        let f = d.tight_filtration();
        assert_eq!(f.reduction_number(5).unwrap(), r);
        assert_eq!(f.hsp_coefficients(r).unwrap().e, f.fit(1, 7).unwrap().e, "N={n}");
    }
    let field = PrimeField::new(101).unwrap();
    for name in ["path.txt", "triangle_boundary.txt", "octahedron.txt"] {
        let c = fixture(name);
        let fr = FaceRing::new(field, &c).unwrap();
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(7);
        let (forms, _) = fr.random_lsop(&mut rng, 20).unwrap();
        let j = Ideal::new(fr.ambient(), forms.expect("an lsop is drawn")).unwrap();
        let f = Filtration::maximal_power(fr.ring(), &j, 1);
        let r = f.reduction_number(c.krull_dim() + 2).unwrap();
        for p_cond in 0..r.saturating_sub(1) {
            assert!(f.hi_p_check(p_cond, 4).unwrap().holds(), "{name} HI_{p_cond}");
        }
        let hsp = f.hsp_coefficients(r).unwrap();
        let fit = f.fit(1, c.krull_dim() as i64 + 5).unwrap();
        assert_eq!(hsp.e, fit.e, "{name}");
    }
}

/// h-vector read off the Hilbert function: coefficients of
/// `(1 - λ)^d Σ dim R_n λ^n`, truncated at degree `d`.
fn h_from_hilbert_function(fr: &FaceRing) -> Vec<i64> {
    let d = fr.complex().krull_dim();
    let dims = fr.ring().graded_dims(d as u32 + 1).unwrap();
    (0..=d)
        .map(|j| {
            (0..=j)
                .map(|i| {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    sign * binomial(d as i64, i as i64) as i64 * dims[j - i] as i64
                })
                .sum()
        })
        .collect()
}

fn criterion_8() {
    let field = PrimeField::new(101).unwrap();
    let cases: [(&str, Vec<i64>, bool); 6] = [
        ("path.txt", vec![1, 1, 0], true),
        ("simplex.txt", vec![1, 0, 0, 0], true),
        ("triangle_boundary.txt", vec![1, 1, 1], false),
        ("tetrahedron_boundary.txt", vec![1, 1, 1, 1], false),
        ("disk.txt", vec![1, 1, 0, 0], true),
        ("octahedron.txt", vec![1, 3, 3, 1], false),
    ];
    for (name, h, eulerian) in cases {
        let c = fixture(name);
        let fr = FaceRing::new(field, &c).unwrap();
        assert_eq!(c.fh_vectors().h, h, "{name}");
        assert_eq!(h_from_hilbert_function(&fr), h, "{name}");
        for n in 0..=5u32 {
            let m = Ideal::maximal_power(fr.ambient(), n + 1);
            assert_eq!(c.length_via_h(n as u64), fr.ring().length(&m).unwrap() as i128, "{name} n={n}");
        }
        let hd = *h.last().unwrap();
        for t in 1..=3 {
            assert_eq!(fr.ed_star_by_fit(t).unwrap(), hd, "{name} t={t}");
        }
        let report = fr.eulerian_equivalences(3, 20, 0).unwrap();
        assert!(report.consistent, "{name}: {report:?}");
        assert_eq!(report.eq1, eulerian, "{name}");
    }
}

fn criterion_9() {
    for d in 1..=6 {
        for k in 1..=6 {
            for n in 0..=12 {
                let (lhs, rhs) = binomial_expand(d, k, n);
                assert_eq!(lhs, rhs, "d={d} k={k} n={n}");
            }
        }
    }
}

fn criterion_10() {
    for (n, p) in [(3u32, 7u64), (4, 5)] {
        let d = diag(p, n);
        let f = d.tight_filtration();
        assert!(f.hi_p_check(0, 4).unwrap().holds(), "N={n} HI_0");
        let r = d.tight_reduction_number(n + 2).unwrap() as usize;
        for p_cond in r.saturating_sub(1)..=r + 1 {
            assert!(f.hi_p_check(p_cond, 5).unwrap().holds(), "N={n} HI_{p_cond}");
        }
    }
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn()); 10] = [
        ("N=3 tight Hilbert function and coefficients", criterion_1),
        ("N=4 tight Hilbert function, coefficients, r*", criterion_2),
        ("r*(I) = N-2 and closed forms confirmed", criterion_3),
        ("N=2 is F-rational", criterion_4),
        ("initial ideal of hypersurface plus bracket powers", criterion_5),
        ("tight intersection I^n ∩ (I^{n+1})* = I^n I*", criterion_6),
        ("HSP formula agrees with interpolation", criterion_7),
        ("Stanley-Reisner suite", criterion_8),
        ("binomial identity grid", criterion_9),
        ("HI_p for tight filtrations", criterion_10),
    ];
    let mut failed = Vec::new();
    let mut out = std::io::stdout();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check));
        let status = if outcome.is_ok() { "PASS" } else { "FAIL" };
        // written past the test harness capture so the lines always show
        writeln!(out, "criterion {:>2}: {status} ({:.2?}) {name}", i + 1, start.elapsed()).unwrap();
        if outcome.is_err() {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn membership_of_non_monomial_elements() {
    // membership of a non-monomial element agrees with the closed form
    let d = diag(7, 3);
    let f: Polynomial = d.parse("x^2 + y").unwrap();
    assert!(d.tight_membership(&f, d.parameter_ideal(), 1, 2).unwrap().is_member());
    let g: Polynomial = d.parse("x + y").unwrap();
    assert!(!d.tight_membership(&g, d.parameter_ideal(), 1, 2).unwrap().is_member());
}
