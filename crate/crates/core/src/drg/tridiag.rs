//! Tridiagonal quotient matrices of an intersection array.

use crate::error::{Error, Result};
use crate::graph::IntersectionArray;
use ndarray::Array2;

/// A square tridiagonal matrix stored by bands: diagonal alpha_0..alpha_{m-1},
/// superdiagonal beta_0..beta_{m-2}, subdiagonal gamma_1..gamma_{m-1}.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    diag: Vec<f64>,
    upper: Vec<f64>,
    lower: Vec<f64>,
}

impl Tridiagonal {
    pub fn new(diag: Vec<f64>, upper: Vec<f64>, lower: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::InvalidParameter("empty tridiagonal".into()));
        }
        if upper.len() + 1 != diag.len() || lower.len() + 1 != diag.len() {
            return Err(Error::DimensionMismatch {
                expected: diag.len() - 1,
                found: upper.len().max(lower.len()),
            });
        }
        Ok(Tridiagonal { diag, upper, lower })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Diagonal entry alpha_i.
    pub fn alpha(&self, i: usize) -> f64 {
        self.diag[i]
    }

    /// Superdiagonal entry beta_i (row i, column i+1).
    pub fn beta(&self, i: usize) -> f64 {
        self.upper[i]
    }

    /// Subdiagonal entry gamma_i (row i, column i-1), indexed from 1.
    pub fn gamma(&self, i: usize) -> f64 {
        self.lower[i - 1]
    }

    /// Leading principal block of size m.
    pub fn leading_block(&self, m: usize) -> Tridiagonal {
        assert!(m >= 1 && m <= self.dim());
        Tridiagonal {
            diag: self.diag[..m].to_vec(),
            upper: self.upper[..m - 1].to_vec(),
            lower: self.lower[..m - 1].to_vec(),
        }
    }

    pub fn to_matrix(&self) -> Array2<f64> {
        let m = self.dim();
        let mut out = Array2::zeros((m, m));
        for i in 0..m {
            out[[i, i]] = self.diag[i];
            if i + 1 < m {
                out[[i, i + 1]] = self.upper[i];
                out[[i + 1, i]] = self.lower[i];
            }
        }
        out
    }

    /// True when every band entry is an integer exactly representable in f64.
    pub fn is_integral(&self) -> bool {
        self.diag
            .iter()
            .chain(&self.upper)
            .chain(&self.lower)
            .all(|&x| x.fract() == 0.0 && x.abs() < 2f64.powi(53))
    }

    /// Symmetrized form with off-diagonals sqrt(beta_i gamma_{i+1}); has the
    /// same characteristic polynomial whenever every product is positive.
    pub fn symmetrized(&self) -> Result<Tridiagonal> {
        let m = self.dim();
        let mut off = Vec::with_capacity(m - 1);
        for i in 0..m - 1 {
            let prod = self.upper[i] * self.lower[i];
            if prod <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "band product beta_{i} * gamma_{} = {prod} is not positive",
                    i + 1
                )));
            }
            off.push(prod.sqrt());
        }
        Ok(Tridiagonal {
            diag: self.diag.clone(),
            upper: off.clone(),
            lower: off,
        })
    }
}

/// Distance quotient B: diagonal a_0..a_d, superdiagonal b_0..b_{d-1},
/// subdiagonal c_1..c_d.
pub fn quotient_b(arr: &IntersectionArray) -> Tridiagonal {
    let d = arr.diameter();
    Tridiagonal {
        diag: (0..=d).map(|i| arr.a(i) as f64).collect(),
        upper: (0..d).map(|i| arr.b(i) as f64).collect(),
        lower: (1..=d).map(|i| arr.c(i) as f64).collect(),
    }
}

/// Reversed quotient S: B read from the far end, i.e. diagonal a_d..a_0,
/// superdiagonal c_d..c_1, subdiagonal b_{d-1}..b_0.
pub fn quotient_s(arr: &IntersectionArray) -> Tridiagonal {
    let d = arr.diameter();
    Tridiagonal {
        diag: (0..=d).map(|i| arr.a(d - i) as f64).collect(),
        upper: (0..d).map(|i| arr.c(d - i) as f64).collect(),
        lower: (1..=d).map(|i| arr.b(d - i) as f64).collect(),
    }
}

/// Symmetrized reversed quotient: diagonal a_d..a_0, off-diagonal entries
/// sqrt(b_{d-1-j} c_{d-j}).
pub fn quotient_shat(arr: &IntersectionArray) -> Tridiagonal {
    quotient_s(arr)
        .symmetrized()
        .expect("intersection array bands are positive")
}
