//! Translate-Hankel matrices of sampled functions.
//!
//! For a function sampled uniformly along a direction, `values[k] = f(x + k·h)`,
//! the order-`n` Popoviciu matrix is the `(n+1)×(n+1)` Hankel matrix with
//! entry `(i, j) = f(x + (i+j)·h)`. Its determinant vanishes for every `x`
//! and `h` exactly when `f` is an exponential polynomial whose translates
//! span a space of dimension at most `n`. This module builds those matrices,
//! measures determinant vanishing through a scale-free residual, and
//! estimates the translate-span rank of the sampled window.

use std::fs;
use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg;
use crate::poly::Point;

#[derive(Debug, Error)]
pub enum HankelError {
    #[error("need at least {needed} samples for order {order}, got {got}")]
    InsufficientSamples { needed: usize, order: usize, got: usize },
    #[error("sample step must have a nonzero coordinate")]
    ZeroStep,
    #[error("base and step dimensions differ: {base} vs {step}")]
    DimensionMismatch { base: usize, step: usize },
    #[error("a sample grid needs at least 2 values")]
    TooFewValues,
    #[error("non-finite sample value at index {index}")]
    NonFiniteValue { index: usize },
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("malformed sample file: {0}")]
    BadFormat(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Uniform samples of a function along one direction:
/// `values[k] = f(base + k·step)` for `k = 0..=K`.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleGrid1D {
    base: Point,
    step: Point,
    values: Vec<Complex64>,
}

impl SampleGrid1D {
    pub fn new(base: Point, step: Point, values: Vec<Complex64>) -> Result<Self, HankelError> {
        if base.dim() != step.dim() {
            return Err(HankelError::DimensionMismatch { base: base.dim(), step: step.dim() });
        }
        if step.coords().iter().all(|&x| x == 0.0) {
            return Err(HankelError::ZeroStep);
        }
        if values.len() < 2 {
            return Err(HankelError::TooFewValues);
        }
        if let Some(index) = values.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(HankelError::NonFiniteValue { index });
        }
        Ok(SampleGrid1D { base, step, values })
    }

    /// Sample a callable: `values[k] = f(base + k·step)`, `k = 0..count`.
    pub fn from_fn<F>(base: Point, step: Point, count: usize, f: F) -> Result<Self, HankelError>
    where
        F: Fn(&Point) -> Complex64,
    {
        let values = (0..count).map(|k| f(&base.translated(&step, k as f64))).collect();
        SampleGrid1D::new(base, step, values)
    }

    pub fn base(&self) -> &Point {
        &self.base
    }

    pub fn step(&self) -> &Point {
        &self.step
    }

    pub fn step_norm(&self) -> f64 {
        self.step.norm()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    /// Write the samples as CSV (`k,re,im`) and the base/step sidecar
    /// document next to it (`<path>.meta.json`).
    pub fn write_csv<P: AsRef<Path>>(&self, path: P) -> Result<(), HankelError> {
        let mut w = csv::Writer::from_path(path.as_ref())?;
        w.write_record(["k", "re", "im"])?;
        for (k, v) in self.values.iter().enumerate() {
            w.write_record(&[k.to_string(), format!("{:?}", v.re), format!("{:?}", v.im)])?;
        }
        w.flush()?;
        let meta = GridMeta {
            base: self.base.coords().to_vec(),
            step: self.step.coords().to_vec(),
        };
        fs::write(
            sidecar_path(path.as_ref()),
            serde_json::to_string_pretty(&meta).expect("serialization cannot fail"),
        )?;
        Ok(())
    }

    /// Read samples from CSV. `base` and `step` override the sidecar when
    /// given; otherwise `<path>.meta.json` must exist.
    pub fn read_csv<P: AsRef<Path>>(
        path: P,
        base: Option<Point>,
        step: Option<Point>,
    ) -> Result<Self, HankelError> {
        let (base, step) = match (base, step) {
            (Some(b), Some(s)) => (b, s),
            (b, s) => {
                let meta = read_sidecar(path.as_ref())?;
                (
                    b.unwrap_or_else(|| Point::new(meta.base.clone())),
                    s.unwrap_or_else(|| Point::new(meta.step.clone())),
                )
            }
        };
        let mut r = csv::ReaderBuilder::new().has_headers(true).from_path(path.as_ref())?;
        let mut rows: Vec<(usize, Complex64)> = Vec::new();
        for record in r.records() {
            let record = record?;
            if record.len() < 3 {
                return Err(HankelError::BadFormat("expected columns k,re,im".into()));
            }
            let parse = |s: &str| -> Result<f64, HankelError> {
                s.trim().parse().map_err(|_| HankelError::BadFormat(format!("bad number {s:?}")))
            };
            let k: usize = record[0]
                .trim()
                .parse()
                .map_err(|_| HankelError::BadFormat(format!("bad index {:?}", &record[0])))?;
            rows.push((k, Complex64::new(parse(&record[1])?, parse(&record[2])?)));
        }
        rows.sort_by_key(|&(k, _)| k);
        for (expect, &(k, _)) in rows.iter().enumerate() {
            if k != expect {
                return Err(HankelError::BadFormat(format!(
                    "sample indices must be 0..N without gaps, found {k} at position {expect}"
                )));
            }
        }
        SampleGrid1D::new(base, step, rows.into_iter().map(|(_, v)| v).collect())
    }
}

#[derive(Serialize, Deserialize)]
struct GridMeta {
    base: Vec<f64>,
    step: Vec<f64>,
}

fn sidecar_path(path: &Path) -> std::path::PathBuf {
    let mut s = path.as_os_str().to_os_string();
    s.push(".meta.json");
    std::path::PathBuf::from(s)
}

fn read_sidecar(path: &Path) -> Result<GridMeta, HankelError> {
    let text = fs::read_to_string(sidecar_path(path))?;
    serde_json::from_str(&text).map_err(|e| HankelError::BadFormat(e.to_string()))
}

/// The `(n+1)×(n+1)` Hankel matrix with entry `(i, j) = values[i + j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PopoviciuMatrix {
    order: usize,
    entries: DMatrix<Complex64>,
}

impl PopoviciuMatrix {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.entries[(i, j)]
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.entries
    }
}

/// Build the order-`n` Popoviciu matrix from the first `2n+1` samples.
pub fn build_popoviciu_matrix(g: &SampleGrid1D, n: usize) -> Result<PopoviciuMatrix, HankelError> {
    if n == 0 {
        return Err(HankelError::ZeroOrder);
    }
    let needed = 2 * n + 1;
    if g.len() < needed {
        return Err(HankelError::InsufficientSamples { needed, order: n, got: g.len() });
    }
    let entries = DMatrix::from_fn(n + 1, n + 1, |i, j| g.values()[i + j]);
    Ok(PopoviciuMatrix { order: n, entries })
}

/// Scale-free vanishing measure of the order-`n` determinant:
/// `|det M| / H(M)` with `H` the Hadamard bound (product of row Euclidean
/// norms), or 0 when a row is identically zero. Values near 0 signal that
/// the sampled function satisfies the order-`n` equation at this `(x, h)`.
pub fn popoviciu_residual(g: &SampleGrid1D, n: usize) -> Result<f64, HankelError> {
    let m = build_popoviciu_matrix(g, n)?;
    Ok(linalg::hadamard_normalized_det(m.matrix()))
}

/// Numerical rank of the `(K−n+1)×(n+1)` generalized Hankel matrix with
/// entry `(r, c) = values[r + c]`: an estimate of
/// `dim span{f, τ_h f, …, τ_h^n f}` restricted to the sampled window.
/// `tol` is the relative singular-value threshold.
pub fn translate_rank(g: &SampleGrid1D, n: usize, tol: f64) -> Result<usize, HankelError> {
    if n == 0 {
        return Err(HankelError::ZeroOrder);
    }
    let needed = 2 * n + 1;
    if g.len() < needed {
        return Err(HankelError::InsufficientSamples { needed, order: n, got: g.len() });
    }
    let rows = g.len() - n;
    let m = DMatrix::from_fn(rows, n + 1, |r, c| g.values()[r + c]);
    Ok(linalg::numerical_rank(&m, tol))
}
