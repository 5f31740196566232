//! Characteristic polynomials of the leading blocks of a tridiagonal matrix.
//!
//! With T tridiagonal and p_i(x) = det(xI - T_i) over the leading i x i
//! blocks, the sequence obeys
//!
//!   p_0 = 1,  p_1 = x - alpha_0,
//!   p_{i+1} = (x - alpha_i) p_i - beta_{i-1} gamma_i p_{i-1},
//!
//! and consecutive polynomials have strictly interlacing real roots whenever
//! every band product beta_i gamma_{i+1} is positive. Roots are isolated by
//! that interlacing and pinned down by bisection.

use super::tridiag::Tridiagonal;
use crate::error::{Error, Result};

/// Relative bisection tolerance for root finding.
const ROOT_TOL: f64 = 1e-12;

/// Relative residual below which a value is accepted as a root.
const ROOT_RESIDUAL: f64 = 1e-7;

/// The polynomial sequence p_0..p_m of a tridiagonal matrix of size m,
/// stored with ascending coefficients; exact integer coefficients are kept
/// alongside when the matrix is integral.
#[derive(Debug, Clone)]
pub struct PolySeq {
    alphas: Vec<f64>,
    betas: Vec<f64>,
    gammas: Vec<f64>,
    polys: Vec<Vec<f64>>,
    exact: Option<Vec<Vec<i128>>>,
}

/// Builds the characteristic-polynomial sequence of `t`'s leading blocks.
pub fn orthopoly(t: &Tridiagonal) -> PolySeq {
    let m = t.dim();
    let alphas: Vec<f64> = (0..m).map(|i| t.alpha(i)).collect();
    let betas: Vec<f64> = (0..m - 1).map(|i| t.beta(i)).collect();
    let gammas: Vec<f64> = (1..m).map(|i| t.gamma(i)).collect();

    let mut polys: Vec<Vec<f64>> = Vec::with_capacity(m + 1);
    polys.push(vec![1.0]);
    polys.push(vec![-alphas[0], 1.0]);
    for i in 1..m {
        let shifted = mul_linear(&polys[i], alphas[i]);
        let cross = betas[i - 1] * gammas[i - 1];
        let next = sub_scaled(&shifted, cross, &polys[i - 1]);
        polys.push(next);
    }

    let exact = if t.is_integral() {
        let mut ps: Vec<Vec<i128>> = Vec::with_capacity(m + 1);
        ps.push(vec![1]);
        ps.push(vec![-(alphas[0] as i128), 1]);
        for i in 1..m {
            let shifted = mul_linear_i(&ps[i], alphas[i] as i128);
            let cross = betas[i - 1] as i128 * gammas[i - 1] as i128;
            let next = sub_scaled_i(&shifted, cross, &ps[i - 1]);
            ps.push(next);
        }
        Some(ps)
    } else {
        None
    };

    PolySeq {
        alphas,
        betas,
        gammas,
        polys,
        exact,
    }
}

/// (x - a) * p.
fn mul_linear(p: &[f64], a: f64) -> Vec<f64> {
    let mut out = vec![0.0; p.len() + 1];
    for (i, &coef) in p.iter().enumerate() {
        out[i + 1] += coef;
        out[i] -= a * coef;
    }
    out
}

/// p - c * q, padding q with zeros.
fn sub_scaled(p: &[f64], c: f64, q: &[f64]) -> Vec<f64> {
    let mut out = p.to_vec();
    for (i, &coef) in q.iter().enumerate() {
        out[i] -= c * coef;
    }
    out
}

fn mul_linear_i(p: &[i128], a: i128) -> Vec<i128> {
    let mut out = vec![0; p.len() + 1];
    for (i, &coef) in p.iter().enumerate() {
        out[i + 1] += coef;
        out[i] -= a * coef;
    }
    out
}

fn sub_scaled_i(p: &[i128], c: i128, q: &[i128]) -> Vec<i128> {
    let mut out = p.to_vec();
    for (i, &coef) in q.iter().enumerate() {
        out[i] -= c * coef;
    }
    out
}

impl PolySeq {
    /// Number of polynomials (matrix size + 1).
    pub fn count(&self) -> usize {
        self.polys.len()
    }

    /// Ascending coefficients of p_i.
    pub fn poly(&self, i: usize) -> &[f64] {
        &self.polys[i]
    }

    /// Exact integer coefficients when the source matrix was integral.
    pub fn exact(&self) -> Option<&[Vec<i128>]> {
        self.exact.as_deref()
    }

    /// p_i(x) by Horner's rule.
    pub fn eval(&self, i: usize, x: f64) -> f64 {
        self.polys[i].iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// Exact p_i(x) at an integer point, when exact coefficients exist.
    pub fn eval_exact(&self, i: usize, x: i128) -> Option<i128> {
        let coeffs = self.exact.as_ref()?.get(i)?;
        let mut acc: i128 = 0;
        for &c in coeffs.iter().rev() {
            acc = acc.checked_mul(x)?.checked_add(c)?;
        }
        Some(acc)
    }

    /// p_i(x) divided by beta_0 ... beta_{i-1}; these are the entries of the
    /// eigenvectors of the leading blocks, and for the reversed distance
    /// quotient they are the normalised dual polynomials with value 1 at the
    /// degree.
    pub fn normalized_eval(&self, i: usize, x: f64) -> f64 {
        let scale: f64 = self.betas[..i].iter().product();
        self.eval(i, x) / scale
    }

    /// |p_i| evaluated with absolute coefficients; a scale for residuals.
    fn magnitude(&self, i: usize, x: f64) -> f64 {
        self.polys[i]
            .iter()
            .rev()
            .fold(0.0, |acc: f64, &c| acc * x.abs() + c.abs())
    }

    /// Interval certain to contain all roots of every p_i, from the
    /// Gershgorin discs of the symmetrised matrix.
    fn root_bounds(&self) -> Result<(f64, f64)> {
        let m = self.alphas.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..m {
            let mut radius = 0.0;
            if i > 0 {
                let prod = self.betas[i - 1] * self.gammas[i - 1];
                if prod <= 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "band product beta_{} * gamma_{i} = {prod} is not positive; \
                         roots are not guaranteed real",
                        i - 1
                    )));
                }
                radius += prod.sqrt();
            }
            if i + 1 < m {
                let prod = self.betas[i] * self.gammas[i];
                if prod <= 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "band product beta_{i} * gamma_{} = {prod} is not positive; \
                         roots are not guaranteed real",
                        i + 1
                    )));
                }
                radius += prod.sqrt();
            }
            lo = lo.min(self.alphas[i] - radius);
            hi = hi.max(self.alphas[i] + radius);
        }
        Ok((lo - 1.0, hi + 1.0))
    }

    /// The i real roots of p_i, ascending, found by bisection on the
    /// brackets that the interlacing property provides.
    pub fn roots(&self, which: usize) -> Result<Vec<f64>> {
        assert!(which < self.count());
        if which == 0 {
            return Ok(Vec::new());
        }
        let (lo, hi) = self.root_bounds()?;
        let mut roots = vec![self.alphas[0]];
        for i in 2..=which {
            let mut brackets = Vec::with_capacity(i);
            brackets.push(lo);
            brackets.extend_from_slice(&roots);
            brackets.push(hi);
            let mut next = Vec::with_capacity(i);
            for w in brackets.windows(2) {
                next.push(self.bisect(i, w[0], w[1])?);
            }
            roots = next;
        }
        Ok(roots)
    }

    fn bisect(&self, i: usize, mut lo: f64, mut hi: f64) -> Result<f64> {
        let mut flo = self.eval(i, lo);
        let fhi = self.eval(i, hi);
        if flo == 0.0 {
            return Ok(lo);
        }
        if fhi == 0.0 {
            return Ok(hi);
        }
        if flo.signum() == fhi.signum() {
            return Err(Error::NotARoot {
                value: 0.5 * (lo + hi),
                residual: flo.abs().min(fhi.abs()),
            });
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if hi - lo <= ROOT_TOL * mid.abs().max(1.0) {
                return Ok(mid);
            }
            let fmid = self.eval(i, mid);
            if fmid == 0.0 {
                return Ok(mid);
            }
            if fmid.signum() == flo.signum() {
                lo = mid;
                flo = fmid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// Verifies strict interlacing of consecutive root sets by checking that
    /// p_i alternates in sign across the roots of p_{i+1}.
    pub fn check_interlacing(&self) -> Result<()> {
        for i in 1..self.count() - 1 {
            let outer = self.roots(i + 1)?;
            let mut expected = if i % 2 == 0 { 1.0 } else { -1.0 };
            for &r in &outer {
                let val = self.eval(i, r);
                if val == 0.0 || val.signum() != expected {
                    return Err(Error::NotARoot {
                        value: r,
                        residual: val.abs(),
                    });
                }
                expected = -expected;
            }
        }
        Ok(())
    }
}

/// Eigenvector of the leading (m-1) block of the source matrix for a root
/// `lambda` of p_{m-1} (the second-to-last polynomial): entries
/// p_i(lambda) / (beta_0 ... beta_{i-1}).
pub fn eigvec_from_polys(seq: &PolySeq, lambda: f64) -> Result<Vec<f64>> {
    let m = seq.count() - 2;
    let residual = seq.eval(m, lambda).abs();
    let scale = seq.magnitude(m, lambda).max(1.0);
    if residual > ROOT_RESIDUAL * scale {
        return Err(Error::NotARoot {
            value: lambda,
            residual,
        });
    }
    Ok((0..m).map(|i| seq.normalized_eval(i, lambda)).collect())
}
