//! Python bindings. Every fallible call raises `ValueError` with the core
//! error message; structured reports come back as JSON strings.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use tightclose_core as core;
use tightclose_core::{MembershipVerdict, MonomialOrder};

fn err(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("reports serialize")
}

/// F_p[x,y,z]/(x^N+y^N+z^N) with I = (y,z).
#[pyclass(frozen, module = "tightclose")]
struct DiagonalRing {
    inner: core::DiagonalRing,
}

#[pymethods]
impl DiagonalRing {
    #[new]
    fn new(n: u32, p: u64) -> PyResult<Self> {
        Ok(DiagonalRing { inner: core::DiagonalRing::with_prime(p, n).map_err(err)? })
    }

    #[getter]
    fn n(&self) -> u32 {
        self.inner.n()
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.p()
    }

    /// Generators of (I^k)*.
    fn tight_closure_power(&self, k: u32) -> PyResult<Vec<String>> {
        let j = self.inner.tight_closure_power(k).map_err(err)?;
        Ok(j.gens().iter().map(|g| g.to_string()).collect())
    }

    /// Bounded test of f ∈ (I^k)*: False is a proof, True is evidence up
    /// to q = p^e_max.
    #[pyo3(signature = (f, k, e_max=2))]
    fn is_tight_member(&self, f: &str, k: u32, e_max: u32) -> PyResult<bool> {
        let f = self.inner.parse(f).map_err(err)?;
        let ik = self.inner.parameter_ideal().power(k).map_err(err)?;
        let v: MembershipVerdict = self.inner.tight_membership(&f, &ik, 1, e_max).map_err(err)?;
        Ok(v.is_member())
    }

    /// ℓ(R/(I^n)*) for n in lo..=hi.
    fn lengths(&self, lo: i64, hi: i64) -> PyResult<Vec<u64>> {
        self.inner.tight_filtration().hilbert_values(lo, hi).map_err(err)
    }

    /// Hilbert coefficients [e0, e1, e2] of the tight filtration.
    fn hilbert_coefficients(&self) -> PyResult<Vec<i64>> {
        let hi = self.inner.n() as i64 + 5;
        Ok(self.inner.tight_filtration().fit(1, hi).map_err(err)?.e)
    }

    #[pyo3(signature = (k_max=8))]
    fn tight_reduction_number(&self, k_max: u32) -> PyResult<u32> {
        self.inner.tight_reduction_number(k_max).map_err(err)
    }

    #[pyo3(signature = (e_max=2))]
    fn is_f_rational(&self, e_max: u32) -> PyResult<bool> {
        Ok(self.inner.f_rationality_probe(e_max).map_err(err)?.is_f_rational())
    }

    /// Monomial-by-monomial comparison with the closed form, as JSON.
    #[pyo3(signature = (k, e_max=2))]
    fn verify_closed_form(&self, k: u32, e_max: u32) -> PyResult<String> {
        Ok(to_json(&self.inner.verify_closed_form(k, e_max).map_err(err)?))
    }

    fn __repr__(&self) -> String {
        format!("DiagonalRing(n={}, p={})", self.inner.n(), self.inner.p())
    }
}

#[pyclass(frozen, module = "tightclose")]
struct SimplicialComplex {
    inner: core::SimplicialComplex,
}

#[pymethods]
impl SimplicialComplex {
    /// Vertices are 1..=n_vertices.
    #[new]
    fn new(n_vertices: usize, facets: Vec<Vec<usize>>) -> PyResult<Self> {
        Ok(SimplicialComplex { inner: core::SimplicialComplex::new(n_vertices, facets).map_err(err)? })
    }

    /// One facet per line, `#` starts a comment.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(SimplicialComplex { inner: core::SimplicialComplex::parse_facets(text).map_err(err)? })
    }

    #[staticmethod]
    fn boundary_of_simplex(n: usize) -> PyResult<Self> {
        Ok(SimplicialComplex { inner: core::SimplicialComplex::simplex_boundary(n).map_err(err)? })
    }

    #[getter]
    fn facets(&self) -> Vec<Vec<usize>> {
        self.inner.facets().to_vec()
    }

    #[getter]
    fn krull_dim(&self) -> usize {
        self.inner.krull_dim()
    }

    fn f_vector(&self) -> Vec<u64> {
        self.inner.fh_vectors().f
    }

    fn h_vector(&self) -> Vec<i64> {
        self.inner.fh_vectors().h
    }

    fn euler_characteristic(&self) -> i64 {
        self.inner.fh_vectors().chi
    }

    fn is_eulerian(&self) -> bool {
        self.inner.is_eulerian()
    }

    /// ℓ(k[Δ]/m^{n+1}) from the h-vector.
    fn length_via_h(&self, n: u64) -> i128 {
        self.inner.length_via_h(n)
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn __repr__(&self) -> String {
        format!("SimplicialComplex({}, {:?})", self.inner.n_vertices(), self.inner.facets())
    }
}

/// The Stanley-Reisner ring k[Δ] over F_p.
#[pyclass(frozen, module = "tightclose")]
struct FaceRing {
    inner: core::FaceRing,
}

#[pymethods]
impl FaceRing {
    #[new]
    #[pyo3(signature = (complex, p=101))]
    fn new(complex: &SimplicialComplex, p: u64) -> PyResult<Self> {
        let field = core::PrimeField::new(p).map_err(err)?;
        Ok(FaceRing { inner: core::FaceRing::new(field, &complex.inner).map_err(err)? })
    }

    /// Hilbert-Samuel length of k[Δ]/m^{n+1}, counted from a Groebner basis.
    fn length_mod_maximal_power(&self, n: u32) -> PyResult<u64> {
        self.inner.ring().length_mod_maximal_power(n + 1).map_err(err)
    }

    /// Top coefficient of the filtration m^{tn}, fitted from lengths.
    #[pyo3(signature = (t=1))]
    fn ed_star_by_fit(&self, t: u32) -> PyResult<i64> {
        self.inner.ed_star_by_fit(t).map_err(err)
    }

    /// Four Euler-characteristic conditions, checked on a seeded random
    /// linear system of parameters; JSON report.
    #[pyo3(signature = (s_max=3, trials=20, seed=0))]
    fn eulerian_equivalences(&self, s_max: usize, trials: usize, seed: u64) -> PyResult<String> {
        Ok(to_json(&self.inner.eulerian_equivalences(s_max, trials, seed).map_err(err)?))
    }
}

/// Reduced Groebner basis of `gens` in F_p[vars].
#[pyfunction]
#[pyo3(signature = (gens, vars=vec!["x".to_string(), "y".to_string(), "z".to_string()], p=7, order="grevlex"))]
fn groebner_basis(gens: Vec<String>, vars: Vec<String>, p: u64, order: &str) -> PyResult<Vec<String>> {
    let ring = core::PolyRing::from_names(core::PrimeField::new(p).map_err(err)?, vars).map_err(err)?;
    let order: MonomialOrder = order.parse().map_err(err)?;
    let polys = gens.iter().map(|g| core::Polynomial::parse(&ring, g)).collect::<core::Result<Vec<_>>>().map_err(err)?;
    Ok(core::buchberger(&polys, order).map_err(err)?.iter().map(|g| g.to_string()).collect())
}

/// Coefficients e_0..e_d interpolated from lengths `values[i]` at `offsets[i]`.
#[pyfunction]
fn fit_hilbert_coefficients(values: Vec<i128>, offsets: Vec<i64>, d: usize) -> PyResult<(Vec<i64>, i64)> {
    let c = core::filtration::fit_hilbert_coefficients(&values, &offsets, d).map_err(err)?;
    Ok((c.e, c.stable_from))
}

/// Generalised binomial coefficient, defined for negative `a`.
#[pyfunction]
fn binomial(a: i64, b: i64) -> i128 {
    core::combinat::binomial(a, b)
}

#[pymodule]
fn tightclose(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<DiagonalRing>()?;
    m.add_class::<SimplicialComplex>()?;
    m.add_class::<FaceRing>()?;
    m.add_function(wrap_pyfunction!(groebner_basis, m)?)?;
    m.add_function(wrap_pyfunction!(fit_hilbert_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(binomial, m)?)?;
    Ok(())
}
