//! Exponential polynomials in `d` variables.
//!
//! An exponential polynomial is a finite sum of exponential monomials
//! `c · x^α · e^{⟨λ,x⟩}` with `α ∈ N^d` and `λ ∈ C^d`. The type here is the
//! canonical container for that class: evaluation, canonicalization (merging
//! duplicate monomials, dropping zero coefficients, deterministic term
//! order) and the translate-span dimension
//! `dim span{ x ↦ p(x + h) : h ∈ R^d }`, which is finite exactly for this
//! class and is computed through closure under partial derivatives.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest admissible exponent in any `alpha` component.
pub const MAX_ALPHA: u32 = 32;
/// Largest admissible number of terms in a polynomial.
pub const MAX_TERMS: usize = 1024;

#[derive(Debug, Error)]
pub enum ExpPolyError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("term {index}: alpha/lambda length must equal the polynomial dimension")]
    BadTermLength { index: usize },
    #[error("term {index}: alpha component {value} exceeds the limit {MAX_ALPHA}")]
    AlphaTooLarge { index: usize, value: u32 },
    #[error("too many terms: {count} (limit {MAX_TERMS})")]
    TooManyTerms { count: usize },
    #[error("term {index}: non-finite coefficient or exponent")]
    NonFiniteTerm { index: usize },
    #[error("malformed polynomial document: {0}")]
    Parse(String),
}

/// A point of `R^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct Point(pub Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Self {
        Point(coords)
    }

    /// One-dimensional point.
    pub fn scalar(x: f64) -> Self {
        Point(vec![x])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// `self + t · other`, requiring equal dimensions.
    pub fn translated(&self, other: &Point, t: f64) -> Point {
        assert_eq!(self.dim(), other.dim(), "point dimensions must agree");
        Point(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + t * b)
                .collect(),
        )
    }

    pub fn zeros(dim: usize) -> Self {
        Point(vec![0.0; dim])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0.0)
    }
}

/// One exponential monomial `coeff · x^alpha · e^{⟨lambda, x⟩}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpTerm {
    pub coeff: Complex64,
    pub alpha: Vec<u32>,
    pub lambda: Vec<Complex64>,
}

impl ExpTerm {
    pub fn new(coeff: Complex64, alpha: Vec<u32>, lambda: Vec<Complex64>) -> Self {
        ExpTerm { coeff, alpha, lambda }
    }
}

/// Canonical monomial order: lexicographic on the real parts of lambda,
/// then the imaginary parts, then alpha. Exact scalar comparison on the
/// stored values; no fuzzy merging happens at this level.
fn cmp_terms(a: &ExpTerm, b: &ExpTerm) -> std::cmp::Ordering {
    let fcmp = |x: &dyn Fn(&Complex64) -> f64| {
        for (u, v) in a.lambda.iter().zip(&b.lambda) {
            match x(u).partial_cmp(&x(v)).expect("finite exponents") {
                std::cmp::Ordering::Equal => {}
                ord => return ord,
            }
        }
        std::cmp::Ordering::Equal
    };
    fcmp(&|l| l.re)
        .then_with(|| fcmp(&|l| l.im))
        .then_with(|| a.alpha.cmp(&b.alpha))
}

/// Equal monomial part, i.e. identical `(alpha, lambda)` under exact scalar
/// equality.
fn same_monomial(a: &ExpTerm, b: &ExpTerm) -> bool {
    a.alpha == b.alpha && a.lambda == b.lambda
}

/// Exponential polynomial: a validated list of exponential monomials over a
/// fixed dimension. Construction checks lengths and the `MAX_ALPHA` /
/// `MAX_TERMS` guards; [`ExpPolynomial::canonicalize`] establishes the
/// canonical form (unique monomials, no zero coefficients, sorted terms).
#[derive(Clone, Debug, PartialEq)]
pub struct ExpPolynomial {
    dim: usize,
    terms: Vec<ExpTerm>,
}

impl ExpPolynomial {
    pub fn new(dim: usize, terms: Vec<ExpTerm>) -> Result<Self, ExpPolyError> {
        if dim == 0 {
            return Err(ExpPolyError::ZeroDimension);
        }
        if terms.len() > MAX_TERMS {
            return Err(ExpPolyError::TooManyTerms { count: terms.len() });
        }
        let mut terms = terms;
        for (index, t) in terms.iter_mut().enumerate() {
            if t.alpha.len() != dim || t.lambda.len() != dim {
                return Err(ExpPolyError::BadTermLength { index });
            }
            if let Some(&value) = t.alpha.iter().find(|&&a| a > MAX_ALPHA) {
                return Err(ExpPolyError::AlphaTooLarge { index, value });
            }
            if !t.coeff.re.is_finite()
                || !t.coeff.im.is_finite()
                || t.lambda.iter().any(|l| !l.re.is_finite() || !l.im.is_finite())
            {
                return Err(ExpPolyError::NonFiniteTerm { index });
            }
            // Collapse -0.0 to +0.0 so exact-equality merging is unambiguous.
            for l in &mut t.lambda {
                if l.re == 0.0 {
                    l.re = 0.0;
                }
                if l.im == 0.0 {
                    l.im = 0.0;
                }
            }
        }
        Ok(ExpPolynomial { dim, terms })
    }

    /// The zero polynomial (empty term list).
    pub fn zero(dim: usize) -> Self {
        ExpPolynomial { dim: dim.max(1), terms: Vec::new() }
    }

    /// Single-monomial constructor.
    pub fn monomial(
        dim: usize,
        coeff: Complex64,
        alpha: Vec<u32>,
        lambda: Vec<Complex64>,
    ) -> Result<Self, ExpPolyError> {
        Self::new(dim, vec![ExpTerm::new(coeff, alpha, lambda)])
    }

    /// Constant polynomial `c`.
    pub fn constant(dim: usize, c: Complex64) -> Self {
        ExpPolynomial {
            dim: dim.max(1),
            terms: vec![ExpTerm::new(c, vec![0; dim.max(1)], vec![Complex64::ZERO; dim.max(1)])],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[ExpTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Evaluate at a point, with `0^0 = 1`.
    pub fn evaluate(&self, x: &Point) -> Result<Complex64, ExpPolyError> {
        if x.dim() != self.dim {
            return Err(ExpPolyError::DimensionMismatch { expected: self.dim, got: x.dim() });
        }
        let mut acc = Complex64::ZERO;
        for t in &self.terms {
            let mut mono = 1.0_f64;
            let mut phase = Complex64::ZERO;
            for k in 0..self.dim {
                // f64::powi(0, 0) == 1, matching the 0^0 = 1 convention.
                mono *= x.0[k].powi(t.alpha[k] as i32);
                phase += t.lambda[k] * x.0[k];
            }
            acc += t.coeff * mono * phase.exp();
        }
        Ok(acc)
    }

    /// Merge duplicate `(alpha, lambda)` monomials, drop exact-zero
    /// coefficients, and sort terms canonically. The result evaluates equal
    /// to the input everywhere.
    pub fn canonicalize(&self) -> ExpPolynomial {
        let mut sorted = self.terms.clone();
        sorted.sort_by(cmp_terms);
        let mut terms: Vec<ExpTerm> = Vec::with_capacity(sorted.len());
        for t in sorted {
            match terms.last_mut() {
                Some(last) if same_monomial(last, &t) => last.coeff += t.coeff,
                _ => terms.push(t),
            }
        }
        terms.retain(|t| t.coeff != Complex64::ZERO);
        ExpPolynomial { dim: self.dim, terms }
    }

    /// Dimension of the linear span of all translates of the polynomial,
    /// computed as the dimension of `span{p}` closed under all first-order
    /// partial derivative operators. For exponential polynomials the two
    /// spaces coincide: every translate is a convergent series of
    /// derivatives that lives in the (finite dimensional, hence closed)
    /// derivative span, and every derivative is a limit of difference
    /// quotients of translates.
    pub fn translate_span_dim(&self) -> usize {
        let p = self.canonicalize();
        if p.terms.is_empty() {
            return 0;
        }

        // Sparse coordinate vectors over the (finitely many) monomials
        // reachable from p by differentiation: lambda is untouched and
        // alpha only decreases, so the ambient space is finite.
        type Key = (Vec<(u64, u64)>, Vec<u32>);
        let as_key = |lambda: &[Complex64], alpha: &[u32]| -> Key {
            (
                lambda.iter().map(|l| (l.re.to_bits(), l.im.to_bits())).collect(),
                alpha.to_vec(),
            )
        };

        let start: BTreeMap<Key, Complex64> = p
            .terms
            .iter()
            .map(|t| (as_key(&t.lambda, &t.alpha), t.coeff))
            .collect();

        let derivative = |v: &BTreeMap<Key, Complex64>, k: usize| -> BTreeMap<Key, Complex64> {
            let mut out: BTreeMap<Key, Complex64> = BTreeMap::new();
            for ((lambda_bits, alpha), &c) in v {
                let lambda_k = Complex64::new(
                    f64::from_bits(lambda_bits[k].0),
                    f64::from_bits(lambda_bits[k].1),
                );
                if alpha[k] > 0 {
                    let mut a = alpha.clone();
                    a[k] -= 1;
                    *out.entry((lambda_bits.clone(), a)).or_insert(Complex64::ZERO) +=
                        c * alpha[k] as f64;
                }
                if lambda_k != Complex64::ZERO {
                    *out.entry((lambda_bits.clone(), alpha.clone())).or_insert(Complex64::ZERO) +=
                        c * lambda_k;
                }
            }
            out.retain(|_, c| *c != Complex64::ZERO);
            out
        };

        // Incremental Gaussian elimination: `basis` holds reduced rows,
        // each normalized so its pivot (largest magnitude) entry is 1.
        let mut basis: Vec<(Key, BTreeMap<Key, Complex64>)> = Vec::new();
        let mut queue: Vec<BTreeMap<Key, Complex64>> = vec![start];
        while let Some(mut g) = queue.pop() {
            let scale_in = g.values().map(|c| c.norm()).fold(0.0_f64, f64::max);
            if scale_in == 0.0 {
                continue;
            }
            for (pivot, row) in &basis {
                if let Some(&c) = g.get(pivot) {
                    for (key, rc) in row {
                        let e = g.entry(key.clone()).or_insert(Complex64::ZERO);
                        *e -= c * rc;
                    }
                    g.remove(pivot);
                }
            }
            let (pivot, pmag) = match g.iter().max_by(|a, b| a.1.norm().partial_cmp(&b.1.norm()).unwrap()) {
                Some((k, c)) => (k.clone(), c.norm()),
                None => continue,
            };
            // Entries below this are cancellation debris, not new directions.
            if pmag <= 1e-9 * scale_in {
                continue;
            }
            let pc = g[&pivot];
            for c in g.values_mut() {
                *c /= pc;
            }
            g.retain(|_, c| c.norm() > 1e-14);
            for k in 0..p.dim {
                queue.push(derivative(&g, k));
            }
            basis.push((pivot, g));
        }
        basis.len()
    }

    /// Serialize to the canonical JSON document.
    pub fn to_json(&self) -> String {
        let dto = ExpPolynomialDoc::from(self);
        serde_json::to_string_pretty(&dto).expect("serialization cannot fail")
    }

    /// Parse from the JSON document produced by [`ExpPolynomial::to_json`].
    pub fn from_json(text: &str) -> Result<Self, ExpPolyError> {
        let dto: ExpPolynomialDoc =
            serde_json::from_str(text).map_err(|e| ExpPolyError::Parse(e.to_string()))?;
        dto.try_into()
    }
}

#[derive(Serialize, Deserialize)]
struct TermDoc {
    coeff: [f64; 2],
    alpha: Vec<u32>,
    lambda: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
struct ExpPolynomialDoc {
    dim: usize,
    terms: Vec<TermDoc>,
}

impl From<&ExpPolynomial> for ExpPolynomialDoc {
    fn from(p: &ExpPolynomial) -> Self {
        ExpPolynomialDoc {
            dim: p.dim,
            terms: p
                .terms
                .iter()
                .map(|t| TermDoc {
                    coeff: [t.coeff.re, t.coeff.im],
                    alpha: t.alpha.clone(),
                    lambda: t.lambda.iter().map(|l| [l.re, l.im]).collect(),
                })
                .collect(),
        }
    }
}

impl TryFrom<ExpPolynomialDoc> for ExpPolynomial {
    type Error = ExpPolyError;

    fn try_from(doc: ExpPolynomialDoc) -> Result<Self, Self::Error> {
        let terms = doc
            .terms
            .into_iter()
            .map(|t| {
                ExpTerm::new(
                    Complex64::new(t.coeff[0], t.coeff[1]),
                    t.alpha,
                    t.lambda.iter().map(|l| Complex64::new(l[0], l[1])).collect(),
                )
            })
            .collect();
        ExpPolynomial::new(doc.dim, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn univariate(terms: &[(Complex64, u32, Complex64)]) -> ExpPolynomial {
        ExpPolynomial::new(
            1,
            terms
                .iter()
                .map(|&(coeff, a, l)| ExpTerm::new(coeff, vec![a], vec![l]))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn evaluate_constant_term() {
        let p = univariate(&[(c(1.0, 0.0), 0, c(0.0, 0.0))]);
        let v = p.evaluate(&Point::scalar(7.3)).unwrap();
        assert!((v - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn evaluate_identity_monomial() {
        let p = univariate(&[(c(1.0, 0.0), 1, c(0.0, 0.0))]);
        let v = p.evaluate(&Point::scalar(3.0)).unwrap();
        assert!((v - c(3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn evaluate_cancelling_exponents() {
        let p = ExpPolynomial::monomial(
            2,
            c(2.0, 0.0),
            vec![0, 0],
            vec![c(1.0, 0.0), c(-1.0, 0.0)],
        )
        .unwrap();
        let v = p.evaluate(&Point::new(vec![1.0, 1.0])).unwrap();
        assert!((v - c(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn evaluate_rejects_dimension_mismatch() {
        let p = univariate(&[(c(1.0, 0.0), 0, c(0.0, 0.0))]);
        assert!(matches!(
            p.evaluate(&Point::new(vec![1.0, 2.0])),
            Err(ExpPolyError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn canonicalize_merges_duplicates() {
        let p = univariate(&[
            (c(1.0, 0.0), 1, c(0.0, 0.0)),
            (c(2.0, 0.0), 1, c(0.0, 0.0)),
        ]);
        let q = p.canonicalize();
        assert_eq!(q.terms().len(), 1);
        assert!((q.terms()[0].coeff - c(3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn canonicalize_cancels_to_zero() {
        let p = univariate(&[
            (c(1.0, 0.0), 1, c(0.0, 0.0)),
            (c(-1.0, 0.0), 1, c(0.0, 0.0)),
        ]);
        assert!(p.canonicalize().is_zero());
    }

    #[test]
    fn canonicalize_fixed_point() {
        let p = univariate(&[(c(5.0, 0.0), 0, c(0.0, 0.0))]);
        assert_eq!(p.canonicalize(), p);
    }

    #[test]
    fn canonical_order_is_deterministic() {
        let a = univariate(&[
            (c(1.0, 0.0), 0, c(2.0, 0.0)),
            (c(1.0, 0.0), 2, c(-1.0, 0.0)),
            (c(1.0, 0.0), 1, c(-1.0, 0.0)),
        ]);
        let q = a.canonicalize();
        let lambdas: Vec<f64> = q.terms().iter().map(|t| t.lambda[0].re).collect();
        let alphas: Vec<u32> = q.terms().iter().map(|t| t.alpha[0]).collect();
        assert_eq!(lambdas, vec![-1.0, -1.0, 2.0]);
        assert_eq!(alphas, vec![1, 2, 0]);
    }

    #[test]
    fn translate_span_dim_exponential() {
        let p = univariate(&[(c(1.0, 0.0), 0, c(1.0, 0.0))]);
        assert_eq!(p.translate_span_dim(), 1);
    }

    #[test]
    fn translate_span_dim_linear() {
        let p = univariate(&[(c(1.0, 0.0), 1, c(0.0, 0.0))]);
        assert_eq!(p.translate_span_dim(), 2);
    }

    #[test]
    fn translate_span_dim_confluent() {
        // x^2 e^{3x}: derivative closure is {x^2 e^{3x}, x e^{3x}, e^{3x}}.
        let p = univariate(&[(c(1.0, 0.0), 2, c(3.0, 0.0))]);
        assert_eq!(p.translate_span_dim(), 3);
    }

    #[test]
    fn translate_span_dim_of_monomial_is_alpha_product() {
        let p = ExpPolynomial::monomial(
            2,
            c(1.0, -0.5),
            vec![2, 3],
            vec![c(0.3, 0.1), c(-0.2, 0.0)],
        )
        .unwrap();
        assert_eq!(p.translate_span_dim(), 3 * 4);
    }

    #[test]
    fn translate_span_dim_zero_polynomial() {
        assert_eq!(ExpPolynomial::zero(2).translate_span_dim(), 0);
    }

    #[test]
    fn construction_guards() {
        assert!(matches!(
            ExpPolynomial::monomial(1, c(1.0, 0.0), vec![33], vec![c(0.0, 0.0)]),
            Err(ExpPolyError::AlphaTooLarge { .. })
        ));
        let too_many = vec![ExpTerm::new(c(1.0, 0.0), vec![0], vec![c(0.0, 0.0)]); MAX_TERMS + 1];
        assert!(matches!(
            ExpPolynomial::new(1, too_many),
            Err(ExpPolyError::TooManyTerms { .. })
        ));
        assert!(matches!(
            ExpPolynomial::monomial(1, c(f64::NAN, 0.0), vec![0], vec![c(0.0, 0.0)]),
            Err(ExpPolyError::NonFiniteTerm { .. })
        ));
    }

    #[test]
    fn json_round_trip_is_exact() {
        let p = univariate(&[
            (c(0.1234567890123456, -3.0e-7), 2, c(0.3, 1.0 / 3.0)),
            (c(5.0, 0.0), 0, c(-1.5, 2.0f64.sqrt())),
        ])
        .canonicalize();
        let text = p.to_json();
        let q = ExpPolynomial::from_json(&text).unwrap();
        assert_eq!(p, q);
        assert_eq!(text, q.to_json());
    }
}
