use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::combinat::binomial;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::filtration::{fit_hilbert_coefficients, HilbertCoefficients};
use crate::ideal::{Ideal, ReductionVerdict};
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::{PolyRing, Polynomial};
use crate::quotient::QuotientRing;

const MAX_VERTICES: usize = 63;
const MAX_FACET_SIZE: usize = 20;

/// A simplicial complex on vertices `1..=n`, stored by its facets.
///
/// Facets are kept sorted and pairwise incomparable; the constructor drops
/// any listed set that is contained in another one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawComplex", into = "RawComplex")]
pub struct SimplicialComplex {
    n_vertices: usize,
    facets: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RawComplex {
    n: usize,
    facets: Vec<Vec<usize>>,
}

impl TryFrom<RawComplex> for SimplicialComplex {
    type Error = Error;

    fn try_from(raw: RawComplex) -> Result<Self> {
        SimplicialComplex::new(raw.n, raw.facets)
    }
}

impl From<SimplicialComplex> for RawComplex {
    fn from(c: SimplicialComplex) -> Self {
        RawComplex { n: c.n_vertices, facets: c.facets }
    }
}

/// Face numbers, h-vector and Euler characteristic. `f[0]` is `f_{-1} = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FHVectors {
    pub f: Vec<u64>,
    pub h: Vec<i64>,
    pub chi: i64,
}

impl SimplicialComplex {
    pub fn new(n_vertices: usize, facets: Vec<Vec<usize>>) -> Result<SimplicialComplex> {
        if n_vertices == 0 || n_vertices > MAX_VERTICES {
            return Err(Error::InvalidComplex(format!(
                "vertex count {n_vertices} outside 1..={MAX_VERTICES}"
            )));
        }
        if facets.is_empty() {
            return Err(Error::InvalidComplex("no facets".into()));
        }
        let mut sets: Vec<Vec<usize>> = Vec::with_capacity(facets.len());
        for mut f in facets {
            f.sort_unstable();
            f.dedup();
            if f.is_empty() {
                return Err(Error::InvalidComplex("empty facet".into()));
            }
            if let Some(&v) = f.iter().find(|&&v| v == 0 || v > n_vertices) {
                return Err(Error::InvalidComplex(format!("vertex {v} outside 1..={n_vertices}")));
            }
            if f.len() > MAX_FACET_SIZE {
                return Err(Error::InvalidComplex(format!(
                    "facet of size {} exceeds {MAX_FACET_SIZE}",
                    f.len()
                )));
            }
            sets.push(f);
        }
        sets.sort();
        sets.dedup();
        let masks: Vec<u64> = sets.iter().map(|f| mask_of(f)).collect();
        let maximal: Vec<Vec<usize>> = sets
            .iter()
            .zip(&masks)
            .filter(|(_, &m)| !masks.iter().any(|&o| o != m && o & m == m))
            .map(|(f, _)| f.clone())
            .collect();
        Ok(SimplicialComplex { n_vertices, facets: maximal })
    }

    /// The full simplex on `n` vertices.
    pub fn simplex(n: usize) -> Result<SimplicialComplex> {
        SimplicialComplex::new(n, vec![(1..=n).collect()])
    }

    /// The boundary of the simplex on `n >= 2` vertices.
    pub fn simplex_boundary(n: usize) -> Result<SimplicialComplex> {
        if n < 2 {
            return Err(Error::InvalidComplex("boundary needs at least 2 vertices".into()));
        }
        let facets = (1..=n).map(|skip| (1..=n).filter(|&v| v != skip).collect()).collect();
        SimplicialComplex::new(n, facets)
    }

    /// Facet file: one facet per line as space-separated vertex indices;
    /// blank lines and lines starting with `#` are ignored. The vertex count
    /// is the largest index used.
    pub fn parse_facets(text: &str) -> Result<SimplicialComplex> {
        let mut facets = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let facet = line
                .split_whitespace()
                .map(|tok| match tok.parse::<usize>() {
                    Ok(v) if v > 0 => Ok(v),
                    _ => Err(Error::Parse(format!(
                        "line {}: '{tok}' is not a positive vertex index",
                        lineno + 1
                    ))),
                })
                .collect::<Result<Vec<usize>>>()?;
            facets.push(facet);
        }
        if facets.is_empty() {
            return Err(Error::Parse("facet file contains no facets".into()));
        }
        let n = facets.iter().flatten().copied().max().unwrap_or(0);
        SimplicialComplex::new(n, facets)
    }

    pub fn from_json(text: &str) -> Result<SimplicialComplex> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("complex serializes")
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    /// `d`, the largest facet size; this is the Krull dimension of `k[Δ]`.
    pub fn krull_dim(&self) -> usize {
        self.facets.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// All faces, the empty face included, as vertex bitmasks (bit `v-1`
    /// for vertex `v`).
    pub fn faces(&self) -> BTreeSet<u64> {
        let mut out = BTreeSet::new();
        for f in &self.facets {
            let full = mask_of(f);
            // walk all submasks of the facet
            let mut sub = full;
            loop {
                out.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & full;
            }
        }
        out
    }

    pub fn fh_vectors(&self) -> FHVectors {
        let d = self.krull_dim();
        let mut f = vec![0u64; d + 1];
        for face in self.faces() {
            f[face.count_ones() as usize] += 1;
        }
        let h = (0..=d)
            .map(|j| {
                (0..=j)
                    .map(|i| {
                        let sign = if (j - i) % 2 == 0 { 1 } else { -1 };
                        sign * binomial((d - i) as i64, (j - i) as i64) * f[i] as i128
                    })
                    .sum::<i128>() as i64
            })
            .collect();
        let chi = (1..=d).map(|i| if i % 2 == 1 { f[i] as i64 } else { -(f[i] as i64) }).sum();
        FHVectors { f, h, chi }
    }

    /// `χ(Δ) = 1`.
    pub fn is_eulerian(&self) -> bool {
        let fh = self.fh_vectors();
        let eulerian = fh.chi == 1;
        debug_assert_eq!(eulerian, fh.h[fh.h.len() - 1] == 0);
        eulerian
    }

    /// Squarefree monomials of the minimal non-faces.
    pub fn minimal_nonfaces(&self) -> Vec<u64> {
        let faces = self.faces();
        let mut out = BTreeSet::new();
        for &face in &faces {
            for v in 0..self.n_vertices {
                let bit = 1u64 << v;
                if face & bit != 0 {
                    continue;
                }
                let cand = face | bit;
                if faces.contains(&cand) {
                    continue;
                }
                let minimal = (0..self.n_vertices)
                    .filter(|&u| cand & (1u64 << u) != 0)
                    .all(|u| faces.contains(&(cand & !(1u64 << u))));
                if minimal {
                    out.insert(cand);
                }
            }
        }
        out.into_iter().collect()
    }

    /// `I_Δ` inside `ring`, whose variables stand for the vertices in order.
    pub fn stanley_reisner_ideal(&self, ring: &Arc<PolyRing>) -> Result<Ideal> {
        if ring.nvars() != self.n_vertices {
            return Err(Error::DimensionMismatch { expected: self.n_vertices, found: ring.nvars() });
        }
        let n = self.n_vertices;
        let gens = self.minimal_nonfaces().into_iter().map(|mask| {
            Monomial::new((0..n).map(|v| ((mask >> v) & 1) as u32).collect::<Vec<u32>>())
        });
        Ok(Ideal::from_monomials(ring, gens))
    }

    /// `ℓ(R/m^{n+1})` from the h-vector alone, using
    /// `h^{(i)}(1)/i! = Σ_j C(j,i) h_j`.
    pub fn length_via_h(&self, n: u64) -> i128 {
        let h = self.fh_vectors().h;
        let d = self.krull_dim() as i64;
        let n = n as i64;
        (0..=d)
            .map(|i| {
                let deriv: i128 = h.iter().enumerate().map(|(j, &hj)| binomial(j as i64, i) * hj as i128).sum();
                let sign = if i % 2 == 0 { 1 } else { -1 };
                sign * deriv * binomial(n + d - i, d - i)
            })
            .sum()
    }

    /// Whether `forms` is a linear system of parameters for `k[Δ]`: exactly
    /// `d` forms whose coefficient matrix has full column rank on every
    /// facet.
    pub fn check_lsop(&self, forms: &[Polynomial]) -> Result<bool> {
        let matrix = linear_coefficients(forms, self.n_vertices)?;
        if forms.len() != self.krull_dim() {
            return Ok(false);
        }
        let field = match forms.first() {
            Some(f) => f.ring().field(),
            None => return Ok(false),
        };
        for facet in &self.facets {
            let restricted: Vec<Vec<u64>> =
                matrix.iter().map(|row| facet.iter().map(|&v| row[v - 1]).collect()).collect();
            if rank(field, restricted) < facet.len() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn mask_of(f: &[usize]) -> u64 {
    f.iter().fold(0u64, |m, &v| m | (1u64 << (v - 1)))
}

/// Coefficient rows of linear forms; anything that is not a homogeneous
/// linear form (zero allowed) is rejected.
fn linear_coefficients(forms: &[Polynomial], nvars: usize) -> Result<Vec<Vec<u64>>> {
    forms
        .iter()
        .map(|f| {
            if f.ring().nvars() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: f.ring().nvars() });
            }
            let mut row = vec![0u64; nvars];
            for (m, c) in f.terms() {
                match (m.degree(), m.exponents().iter().position(|&e| e == 1)) {
                    (1, Some(i)) => row[i] = *c,
                    _ => return Err(Error::NotLinear(f.to_string())),
                }
            }
            Ok(row)
        })
        .collect()
}

fn rank(field: PrimeField, mut rows: Vec<Vec<u64>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        let Some(pivot) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = field.inv(rows[r][col]);
        for i in 0..rows.len() {
            if i != r && rows[i][col] != 0 {
                let factor = field.mul(rows[i][col], inv);
                for j in col..ncols {
                    let sub = field.mul(factor, rows[r][j]);
                    rows[i][j] = field.sub(rows[i][j], sub);
                }
            }
        }
        r += 1;
    }
    r
}

/// Ideals of `k[Δ]`, each generated by a verified linear system of
/// parameters.
#[derive(Debug, Clone)]
pub struct LsopFamily {
    ideals: Vec<Ideal>,
}

impl LsopFamily {
    pub fn new(complex: &SimplicialComplex, ideals: Vec<Ideal>) -> Result<LsopFamily> {
        for ideal in &ideals {
            if !complex.check_lsop(ideal.gens())? {
                return Err(Error::NotLsop(ideal.to_string()));
            }
        }
        Ok(LsopFamily { ideals })
    }

    pub fn ideals(&self) -> &[Ideal] {
        &self.ideals
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }
}

/// The Stanley-Reisner ring `k[Δ]` together with its complex.
#[derive(Debug, Clone)]
pub struct FaceRing {
    complex: SimplicialComplex,
    ring: QuotientRing,
}

/// Outcome of [`FaceRing::eulerian_equivalences`]. The four conditions are
/// only known to be equivalent when `k[Δ]` is Cohen-Macaulay, which is not
/// checked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub p: u64,
    pub seed: u64,
    pub s_max: usize,
    pub trials: usize,
    pub draws_used: usize,
    /// The random linear system of parameters used for conditions 2 and 3.
    pub lsop: Option<Vec<String>>,
    /// `χ(Δ) = 1`.
    pub eq1: bool,
    /// `r_J(m) <= d - 1`.
    pub eq2: Option<bool>,
    pub reduction_number: Option<usize>,
    /// `(a_1, ..., a_d) m^{t-1} = m^t` for `d <= t <= max(s_max, d)`.
    pub eq3: Option<bool>,
    /// Alternating sum of `e_d*` over sub-products of the lsops vanishes.
    pub eq4: bool,
    pub ed_star_by_size: Vec<i64>,
    pub alternating_sum: i64,
    pub consistent: bool,
    pub cohen_macaulay_assumed: bool,
}

impl FaceRing {
    pub fn new(field: PrimeField, complex: &SimplicialComplex) -> Result<FaceRing> {
        Ok(FaceRing { complex: complex.clone(), ring: QuotientRing::stanley_reisner(field, complex)? })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn ambient(&self) -> &Arc<PolyRing> {
        self.ring.ambient()
    }

    /// Ideal generated by linear forms given as text.
    pub fn linear_ideal(&self, forms: &[&str]) -> Result<Ideal> {
        self.ring.ideal(forms)
    }

    /// `(I_1^{s_1} ... I_g^{s_g})* = m^{Σ s_i}`; the containment of the
    /// product in `m^{Σ s_i}` is checked on the way.
    pub fn lsop_product_tight_closure(&self, family: &LsopFamily, s: &[u32]) -> Result<Ideal> {
        if s.len() != family.len() {
            return Err(Error::InvalidArgument(format!(
                "{} exponents for {} ideals",
                s.len(),
                family.len()
            )));
        }
        let total: u32 = s.iter().sum();
        let closure = Ideal::maximal_power(self.ambient(), total);
        let mut product = Ideal::unit(self.ambient());
        for (ideal, &si) in family.ideals().iter().zip(s) {
            product = product.product(&ideal.power(si)?)?;
        }
        if !self.ring.ideal_contains(&closure, &product)? {
            return Err(Error::NotContained(format!("lsop product not inside m^{total}")));
        }
        Ok(closure)
    }

    /// `e_d*` of an lsop power product, which equals `h_d`.
    pub fn ed_star(&self, family: &LsopFamily, s: &[u32]) -> Result<i64> {
        if s.len() != family.len() {
            return Err(Error::InvalidArgument(format!(
                "{} exponents for {} ideals",
                s.len(),
                family.len()
            )));
        }
        let h = self.complex.fh_vectors().h;
        Ok(h[h.len() - 1])
    }

    /// `e_d` of the filtration `{m^{t n}}` read off an interpolated Hilbert
    /// polynomial; `m^{tn}` is the tight closure of the n-th power of any
    /// product of `t` lsop ideals.
    pub fn ed_star_by_fit(&self, t: u32) -> Result<i64> {
        Ok(*self.scaled_maximal_fit(t)?.e.last().unwrap())
    }

    fn scaled_maximal_fit(&self, t: u32) -> Result<HilbertCoefficients> {
        if t == 0 {
            return Err(Error::InvalidArgument("step must be positive".into()));
        }
        let d = self.ring.dim();
        let samples = d as u32 + 5;
        let dims = self.ring.graded_dims(t * samples)?;
        let mut values = Vec::with_capacity(samples as usize);
        let mut offsets = Vec::with_capacity(samples as usize);
        for n in 1..=samples {
            let deg = (t * n) as usize;
            values.push(dims[..deg].iter().sum::<u64>() as i128);
            offsets.push(n as i64);
        }
        fit_hilbert_coefficients(&values, &offsets, d)
    }

    /// A random linear system of parameters, drawn with up to `trials`
    /// attempts. Returns the forms and the number of draws used.
    pub fn random_lsop(&self, rng: &mut ChaCha8Rng, trials: usize) -> Result<(Option<Vec<Polynomial>>, usize)> {
        let amb = self.ambient().clone();
        let p = amb.characteristic();
        let n = amb.nvars();
        let d = self.complex.krull_dim();
        for draw in 1..=trials {
            let forms: Vec<Polynomial> = (0..d)
                .map(|_| {
                    Polynomial::from_terms(&amb, (0..n).map(|i| (Monomial::var(n, i), rng.gen_range(0..p))))
                })
                .collect();
            if self.complex.check_lsop(&forms)? {
                return Ok((Some(forms), draw));
            }
        }
        Ok((None, trials))
    }

    /// Checks `Σ a_i (I^{S_i})* = (I^S)*` for every `s` with all
    /// `s_i >= 1` and `Σ s_i <= s_max`, using `(I^S)* = m^{|S|}`. Requires
    /// `a_i ∈ I_i`.
    pub fn joint_reduction_check(&self, family: &LsopFamily, a: &[Polynomial], s_max: usize) -> Result<bool> {
        let d = family.len();
        if a.len() != d {
            return Err(Error::InvalidArgument(format!("{} elements for {d} ideals", a.len())));
        }
        for (ideal, ai) in family.ideals().iter().zip(a) {
            if !self.ring.lift(ideal)?.contains_poly(ai, MonomialOrder::Grevlex)? {
                return Err(Error::NotContained(format!("{ai} is not in {ideal}")));
            }
        }
        // the equality depends only on |S|
        let amb = self.ambient();
        let a_ideal = Ideal::new(amb, a.to_vec())?;
        let mut cache: BTreeMap<usize, bool> = BTreeMap::new();
        for total in d.max(1)..=s_max {
            let holds = match cache.get(&total) {
                Some(&b) => b,
                None => {
                    let lhs = a_ideal.product(&Ideal::maximal_power(amb, total as u32 - 1))?;
                    let rhs = Ideal::maximal_power(amb, total as u32);
                    let b = self.ring.ideal_equals(&lhs, &rhs)?;
                    cache.insert(total, b);
                    b
                }
            };
            if !holds {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Evaluates the four conditions of the Eulerian equivalence theorem
    /// with seeded random linear forms over this ring's field.
    pub fn eulerian_equivalences(&self, s_max: usize, trials: usize, seed: u64) -> Result<EquivalenceReport> {
        let d = self.complex.krull_dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let eq1 = self.complex.is_eulerian();
        let (lsop, draws_used) = self.random_lsop(&mut rng, trials)?;
        let (mut eq2, mut reduction_number, mut eq3) = (None, None, None);
        if let Some(forms) = &lsop {
            let j = Ideal::new(self.ambient(), forms.clone())?;
            let m = self.ring.maximal_ideal();
            match j.is_reduction(&m, self.ring.modulus(), d.saturating_sub(1))? {
                ReductionVerdict::YesAt(r) => {
                    eq2 = Some(true);
                    reduction_number = Some(r);
                }
                ReductionVerdict::NoUpTo(_) => eq2 = Some(false),
            }
            let family = LsopFamily::new(&self.complex, vec![j; d])?;
            eq3 = Some(self.joint_reduction_check(&family, forms, s_max.max(d))?);
        }
        // e_d* of a product of t lsop ideals, for t = 1..d
        let ed_star_by_size: Vec<i64> = (1..=d as u32).map(|t| self.ed_star_by_fit(t)).collect::<Result<_>>()?;
        let alternating_sum: i64 = (1..=d)
            .map(|t| {
                let sign = if (d - t).is_multiple_of(2) { 1 } else { -1 };
                sign * binomial(d as i64, t as i64) as i64 * ed_star_by_size[t - 1]
            })
            .sum();
        let eq4 = alternating_sum == 0;
        let consistent = eq2 == Some(eq1) && eq3 == Some(eq1) && eq4 == eq1;
        Ok(EquivalenceReport {
            p: self.ring.field().characteristic(),
            seed,
            s_max,
            trials,
            draws_used,
            lsop: lsop.map(|fs| fs.iter().map(|f| f.to_string()).collect()),
            eq1,
            eq2,
            reduction_number,
            eq3,
            eq4,
            ed_star_by_size,
            alternating_sum,
            consistent,
            cohen_macaulay_assumed: true,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn path() -> SimplicialComplex {
        SimplicialComplex::new(3, vec![vec![1, 2], vec![2, 3]]).unwrap()
    }

    fn triangle() -> SimplicialComplex {
        SimplicialComplex::simplex_boundary(3).unwrap()
    }

    fn f101() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    #[test]
    fn constructor_normalizes() {
        let c = SimplicialComplex::new(3, vec![vec![2, 1], vec![1], vec![2, 3], vec![1, 2]]).unwrap();
        assert_eq!(c.facets(), &[vec![1, 2], vec![2, 3]]);
        assert!(SimplicialComplex::new(3, vec![vec![4]]).is_err());
        assert!(SimplicialComplex::new(3, vec![]).is_err());
        assert!(SimplicialComplex::new(3, vec![vec![]]).is_err());
    }

    #[test]
    fn facet_file_parsing() {
        let c = SimplicialComplex::parse_facets("# path\n1 2\n\n2 3\n").unwrap();
        assert_eq!(c, path());
        let err = SimplicialComplex::parse_facets("1 2\n2 x\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        assert!(SimplicialComplex::parse_facets("# nothing\n").is_err());
        assert!(SimplicialComplex::parse_facets("0 1\n").is_err());
    }

    #[test]
    fn json_roundtrip() {
        let c = triangle();
        let text = c.to_json();
        assert_eq!(text, r#"{"n":3,"facets":[[1,2],[1,3],[2,3]]}"#);
        assert_eq!(SimplicialComplex::from_json(&text).unwrap(), c);
        assert!(SimplicialComplex::from_json(r#"{"n":2,"facets":[[1,3]]}"#).is_err());
    }

    #[test]
    fn fh_vectors_of_small_complexes() {
        let fh = path().fh_vectors();
        assert_eq!((fh.f, fh.h, fh.chi), (vec![1, 3, 2], vec![1, 1, 0], 1));
        let point = SimplicialComplex::simplex(1).unwrap().fh_vectors();
        assert_eq!((point.f, point.h, point.chi), (vec![1, 1], vec![1, 0], 1));
        let tri = triangle().fh_vectors();
        assert_eq!((tri.f, tri.h, tri.chi), (vec![1, 3, 3], vec![1, 1, 1], 0));
        let tet = SimplicialComplex::simplex_boundary(4).unwrap().fh_vectors();
        assert_eq!((tet.f, tet.h, tet.chi), (vec![1, 4, 6, 4], vec![1, 1, 1, 1], 2));
    }

    #[test]
    fn eulerian() {
        assert!(path().is_eulerian());
        assert!(!triangle().is_eulerian());
        assert!(SimplicialComplex::simplex(4).unwrap().is_eulerian());
    }

    #[test]
    fn stanley_reisner_ideals() {
        let f = f101();
        let ring = PolyRing::new(f, &["x1", "x2", "x3"]).unwrap();
        let i = path().stanley_reisner_ideal(&ring).unwrap();
        assert_eq!(i.to_string(), "(x1*x3)");
        assert!(SimplicialComplex::simplex(3).unwrap().stanley_reisner_ideal(&ring).unwrap().is_zero());
        assert_eq!(triangle().stanley_reisner_ideal(&ring).unwrap().to_string(), "(x1*x2*x3)");
        let small = PolyRing::new(f, &["a", "b"]).unwrap();
        assert!(path().stanley_reisner_ideal(&small).is_err());
    }

    #[test]
    fn lsop_rank_checks() {
        let r = FaceRing::new(f101(), &path()).unwrap();
        let forms = |g: &[&str]| g.iter().map(|s| Polynomial::parse(r.ambient(), s).unwrap()).collect::<Vec<_>>();
        assert!(path().check_lsop(&forms(&["x1 + x2", "x2 + x3"])).unwrap());
        assert!(!path().check_lsop(&forms(&["x1", "x1"])).unwrap());
        assert!(!path().check_lsop(&forms(&["x1", "x2"])).unwrap());
        assert!(!path().check_lsop(&forms(&["x1 + x2"])).unwrap());
        assert!(matches!(path().check_lsop(&forms(&["x1^2", "x2"])), Err(Error::NotLinear(_))));
        assert!(matches!(path().check_lsop(&forms(&["x1 + 1", "x2"])), Err(Error::NotLinear(_))));
    }

    #[test]
    fn length_formula_on_path() {
        let c = path();
        let r = FaceRing::new(f101(), &c).unwrap();
        for n in 0..6u64 {
            assert_eq!(c.length_via_h(n), ((n + 1) * (n + 1)) as i128);
            let m = Ideal::maximal_power(r.ambient(), n as u32 + 1);
            assert_eq!(r.ring().length(&m).unwrap() as i128, c.length_via_h(n));
        }
        assert_eq!(triangle().length_via_h(0), 1);
    }

    #[test]
    fn product_closure_of_lsops() {
        let c = path();
        let r = FaceRing::new(f101(), &c).unwrap();
        let a = r.linear_ideal(&["x1 + x2", "x2 + x3"]).unwrap();
        let b = r.linear_ideal(&["x1 + 2*x2 + x3", "x2 - x3"]).unwrap();
        let fam = LsopFamily::new(&c, vec![a.clone(), b]).unwrap();
        let m2 = r.lsop_product_tight_closure(&fam, &[1, 1]).unwrap();
        assert!(m2.equals(&Ideal::maximal_power(r.ambient(), 2)).unwrap());
        assert_eq!(r.ring().length(&m2).unwrap(), 4);
        assert!(r.lsop_product_tight_closure(&fam, &[0, 0]).unwrap().equals(&Ideal::unit(r.ambient())).unwrap());
        let single = LsopFamily::new(&c, vec![a]).unwrap();
        assert!(r.lsop_product_tight_closure(&single, &[1]).unwrap().equals(&r.ring().maximal_ideal()).unwrap());
        let bad = r.linear_ideal(&["x1", "x2"]).unwrap();
        assert!(matches!(LsopFamily::new(&c, vec![bad]), Err(Error::NotLsop(_))));
    }

    #[test]
    fn ed_star_matches_fit() {
        for (c, hd) in [(path(), 0), (triangle(), 1), (SimplicialComplex::simplex(3).unwrap(), 0)] {
            let r = FaceRing::new(f101(), &c).unwrap();
            for t in 1..=3 {
                assert_eq!(r.ed_star_by_fit(t).unwrap(), hd);
            }
        }
    }

    #[test]
    fn joint_reductions_on_path() {
        let c = path();
        let r = FaceRing::new(f101(), &c).unwrap();
        let i1 = r.linear_ideal(&["x1 + x2", "x2 + x3"]).unwrap();
        let i2 = r.linear_ideal(&["x1 + 2*x2 + x3", "x2 - x3"]).unwrap();
        let fam = LsopFamily::new(&c, vec![i1.clone(), i2.clone()]).unwrap();
        let a = vec![i1.gens()[0].add(&i1.gens()[1]), i2.gens()[1].clone()];
        assert!(r.joint_reduction_check(&fam, &a, 3).unwrap());
        let zero = vec![Polynomial::zero(r.ambient()), Polynomial::zero(r.ambient())];
        assert!(!r.joint_reduction_check(&fam, &zero, 3).unwrap());
        let outside = vec![Polynomial::parse(r.ambient(), "x1").unwrap(), a[1].clone()];
        assert!(matches!(r.joint_reduction_check(&fam, &outside, 3), Err(Error::NotContained(_))));
    }

    #[test]
    fn equivalences_on_path_and_triangle() {
        let rep = FaceRing::new(f101(), &path()).unwrap().eulerian_equivalences(3, 10, 0).unwrap();
        assert!(rep.eq1 && rep.eq2 == Some(true) && rep.eq3 == Some(true) && rep.eq4 && rep.consistent);
        assert_eq!(rep.reduction_number, Some(1));
        let rep = FaceRing::new(f101(), &triangle()).unwrap().eulerian_equivalences(3, 10, 0).unwrap();
        assert!(!rep.eq1 && rep.eq2 == Some(false) && rep.eq3 == Some(false) && !rep.eq4 && rep.consistent);
        assert_eq!(rep.alternating_sum, -1);
    }

    fn arb_complex() -> impl Strategy<Value = SimplicialComplex> {
        (1usize..=7).prop_flat_map(|n| {
            prop::collection::vec(prop::collection::btree_set(1..=n, 1..=n.min(4)), 1..6).prop_map(move |fs| {
                SimplicialComplex::new(n, fs.into_iter().map(|s| s.into_iter().collect()).collect()).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn h_vector_invariants(c in arb_complex()) {
            let fh = c.fh_vectors();
            let d = c.krull_dim();
            prop_assert_eq!(fh.h[0], 1);
            // f_{d-1} = Σ h_i
            prop_assert_eq!(fh.h.iter().sum::<i64>(), fh.f[d] as i64);
            prop_assert_eq!(fh.h[d] == 0, fh.chi == 1);
            // h -> f inverts the transform: f_{j-1} = Σ_i C(d-i, j-i) h_i
            for j in 0..=d {
                let back: i128 = (0..=j).map(|i| binomial((d - i) as i64, (j - i) as i64) * fh.h[i] as i128).sum();
                prop_assert_eq!(back, fh.f[j] as i128);
            }
        }

        #[test]
        fn minimal_nonfaces_are_minimal(c in arb_complex()) {
            let faces = c.faces();
            for s in c.minimal_nonfaces() {
                prop_assert!(!faces.contains(&s));
                for v in 0..c.n_vertices() {
                    if s & (1 << v) != 0 {
                        prop_assert!(faces.contains(&(s & !(1 << v))));
                    }
                }
            }
        }
    }
}
