//! Parameter sweeps over graph families: the closed-form average search
//! probability of each member, its gap to 1/4, and the array-level criteria
//! that predict whether the gap closes as the family grows.

use crate::error::{Error, Result};
use crate::graph::{
    complete, cycle, hamming, hypercube, intersection_array_of, johnson, paley, Graph,
    IntersectionArray,
};
use crate::spectral::{closed_form_average, DEFAULT_TOL};

/// The two array-level limit criteria, evaluated at one member:
/// `k^(d-1) / (c_2 ... c_d * n)` and `k^(d-1) / n`. Families on which the
/// first tends to zero have average search probability tending to 1/4; the
/// second is the simpler sufficient variant.
pub fn limit_criterion(arr: &IntersectionArray) -> (f64, f64) {
    let k = arr.degree() as f64;
    let n = arr.vertex_count() as f64;
    let kpow = k.powi(arr.diameter() as i32 - 1);
    (kpow / (arr.c_tail_product() as f64 * n), kpow / n)
}

/// A one-parameter family that can be swept.
///
/// Two-parameter families fix their first parameter: `Hamming { d }` sweeps
/// the alphabet size q, `Johnson { m }` sweeps the ground-set size v.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepFamily {
    Complete,
    Cycle,
    Paley,
    Hypercube,
    Hamming { d: usize },
    Johnson { m: usize },
}

impl SweepFamily {
    pub fn label(&self) -> String {
        match self {
            SweepFamily::Complete => "complete".into(),
            SweepFamily::Cycle => "cycle".into(),
            SweepFamily::Paley => "paley".into(),
            SweepFamily::Hypercube => "hypercube".into(),
            SweepFamily::Hamming { d } => format!("hamming({d},q)"),
            SweepFamily::Johnson { m } => format!("johnson(v,{m})"),
        }
    }

    /// Builds the member with sweep parameter `p`.
    pub fn build(&self, p: usize) -> Result<Graph> {
        match *self {
            SweepFamily::Complete => complete(p),
            SweepFamily::Cycle => cycle(p),
            SweepFamily::Paley => paley(p),
            SweepFamily::Hypercube => hypercube(p),
            SweepFamily::Hamming { d } => hamming(d, p),
            SweepFamily::Johnson { m } => johnson(p, m),
        }
    }
}

/// Everything measured on one completed sweep member.
#[derive(Debug, Clone, Copy)]
pub struct SweepPoint {
    pub n: usize,
    pub k: usize,
    pub total: f64,
    /// |total - 1/4|.
    pub gap: f64,
    pub criterion_general: f64,
    pub criterion_special: f64,
}

/// One sweep row; `result` is `None` when the member exceeded the size cap
/// and was skipped.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub param: usize,
    pub result: Option<SweepPoint>,
}

/// An ordered sweep with trend queries over the completed rows.
#[derive(Debug, Clone)]
pub struct SweepTable {
    pub family: SweepFamily,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    /// Gaps |total - 1/4| of the completed rows, in sweep order.
    pub fn gaps(&self) -> Vec<f64> {
        self.rows
            .iter()
            .filter_map(|r| r.result.as_ref().map(|p| p.gap))
            .collect()
    }

    /// Whether the gap shrank overall (last completed < first completed);
    /// `None` with fewer than two completed rows.
    pub fn decreasing_overall(&self) -> Option<bool> {
        let gaps = self.gaps();
        if gaps.len() < 2 {
            return None;
        }
        Some(gaps[gaps.len() - 1] < gaps[0])
    }

    /// Whether every consecutive completed pair of gaps shrinks strictly;
    /// `None` with fewer than two completed rows.
    pub fn strictly_decreasing(&self) -> Option<bool> {
        let gaps = self.gaps();
        if gaps.len() < 2 {
            return None;
        }
        Some(gaps.windows(2).all(|w| w[1] < w[0]))
    }
}

/// Runs the closed form over every member of the family, marking the vertex
/// 0 of each (the families are vertex transitive). Members over the size
/// cap become skipped rows; every built member must pass the
/// distance-regularity check.
pub fn family_sweep(family: SweepFamily, params: &[usize]) -> Result<SweepTable> {
    if params.is_empty() {
        return Err(Error::InvalidParameter(
            "sweep needs a nonempty parameter list".into(),
        ));
    }
    let mut rows = Vec::with_capacity(params.len());
    for &p in params {
        let g = match family.build(p) {
            Ok(g) => g,
            Err(Error::SizeCap { .. }) => {
                rows.push(SweepRow {
                    param: p,
                    result: None,
                });
                continue;
            }
            Err(e) => return Err(e),
        };
        let arr = intersection_array_of(&g)?;
        let report = closed_form_average(&g, 0, DEFAULT_TOL)?;
        let (criterion_general, criterion_special) = limit_criterion(&arr);
        let total = report.total();
        rows.push(SweepRow {
            param: p,
            result: Some(SweepPoint {
                n: g.n(),
                k: arr.degree() as usize,
                total,
                gap: (total - 0.25).abs(),
                criterion_general,
                criterion_special,
            }),
        });
    }
    Ok(SweepTable { family, rows })
}

/// Closed-form average search probability of the complete graph on n
/// vertices: ((n-1)^3 + (n-2)^2) / (n (2n-3)^2).
pub fn complete_graph_average(n: u64) -> f64 {
    let nf = n as f64;
    ((nf - 1.0).powi(3) + (nf - 2.0).powi(2)) / (nf * (2.0 * nf - 3.0).powi(2))
}
