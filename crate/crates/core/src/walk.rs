//! The discrete-time walk on the arc space of a regular graph.
//!
//! States live on arcs (u,v), indexed u*k + j where j is the position of v
//! in u's sorted neighbour list. One step applies, in order: the oracle
//! (sign flip on the marked vertex's outgoing arcs), the Grover coin
//! (reflection about the all-ones vector inside each vertex block), and the
//! arc reversal. All three are real, so amplitudes stay real throughout; the
//! complex view exists for interoperability with the spectral module.

use crate::error::{Error, Result};
use crate::graph::Graph;
use ndarray::{Array1, Array2};
use num_complex::Complex64;

/// Largest arc count for which [`WalkOperators::materialize_unitary`] will
/// build the dense step matrix. Anything bigger must stay matrix-free.
pub const MAX_MATERIALIZE_ARCS: usize = 60;

/// Arc indexing for a connected regular graph of degree k >= 2.
#[derive(Debug, Clone)]
pub struct ArcSpace {
    n: usize,
    k: usize,
    /// Head vertex of each arc.
    head: Vec<usize>,
    /// Arc-reversal permutation; a fixed-point-free involution.
    rev: Vec<usize>,
}

impl ArcSpace {
    pub fn new(g: &Graph) -> Result<Self> {
        let k = g.regular_degree()?;
        if k < 2 {
            return Err(Error::DegreeTooSmall { k });
        }
        if !g.is_connected() {
            let dist = g.bfs_distances(0);
            let unreachable = dist.iter().position(Option::is_none).unwrap();
            return Err(Error::Disconnected {
                from: 0,
                unreachable,
            });
        }
        let n = g.n();
        let mut head = Vec::with_capacity(n * k);
        for u in 0..n {
            head.extend_from_slice(g.neighbours(u));
        }
        let mut rev = vec![0usize; n * k];
        for u in 0..n {
            for (j, &v) in g.neighbours(u).iter().enumerate() {
                let back = g
                    .neighbour_index(v, u)
                    .expect("adjacency is symmetric by construction");
                rev[u * k + j] = v * k + back;
            }
        }
        Ok(ArcSpace { n, k, head, rev })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of arcs nk.
    pub fn len(&self) -> usize {
        self.n * self.k
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Index of the j-th arc leaving u.
    pub fn index(&self, u: usize, j: usize) -> usize {
        debug_assert!(j < self.k);
        u * self.k + j
    }

    /// (tail, head) of an arc.
    pub fn endpoints(&self, idx: usize) -> (usize, usize) {
        (idx / self.k, self.head[idx])
    }

    /// Index of the reversed arc.
    pub fn reverse(&self, idx: usize) -> usize {
        self.rev[idx]
    }

    /// The whole reversal permutation.
    pub fn reversal(&self) -> &[usize] {
        &self.rev
    }
}

/// A state on arc space. Amplitudes are stored as reals; see module docs.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkState {
    amp: Vec<f64>,
}

impl WalkState {
    pub fn new(amp: Vec<f64>) -> Self {
        WalkState { amp }
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amp
    }

    pub fn norm(&self) -> f64 {
        self.amp.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Entrywise |amplitude|^2.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amp.iter().map(|x| x * x).collect()
    }

    /// Complex view of the state.
    pub fn to_complex(&self) -> Array1<Complex64> {
        Array1::from_iter(self.amp.iter().map(|&x| Complex64::new(x, 0.0)))
    }
}

/// The three reflections making up one walk step, bound to a marked vertex.
#[derive(Debug, Clone)]
pub struct WalkOperators {
    arcs: ArcSpace,
    marked: usize,
}

impl WalkOperators {
    pub fn new(g: &Graph, marked: usize) -> Result<Self> {
        if marked >= g.n() {
            return Err(Error::InvalidParameter(format!(
                "marked vertex {marked} out of range for n = {}",
                g.n()
            )));
        }
        Ok(WalkOperators {
            arcs: ArcSpace::new(g)?,
            marked,
        })
    }

    pub fn arcs(&self) -> &ArcSpace {
        &self.arcs
    }

    pub fn marked(&self) -> usize {
        self.marked
    }

    /// Uniform real unit state over all arcs.
    pub fn initial_state(&self) -> WalkState {
        let m = self.arcs.len();
        WalkState::new(vec![1.0 / (m as f64).sqrt(); m])
    }

    /// Oracle: negate the marked vertex's outgoing arcs.
    pub fn oracle_in_place(&self, x: &mut [f64]) {
        let k = self.arcs.k;
        for slot in &mut x[self.marked * k..(self.marked + 1) * k] {
            *slot = -*slot;
        }
    }

    /// Grover coin: within each vertex block replace x_j by 2*mean - x_j.
    pub fn coin_in_place(&self, x: &mut [f64]) {
        let k = self.arcs.k;
        for block in x.chunks_exact_mut(k) {
            let twice_mean = 2.0 * block.iter().sum::<f64>() / k as f64;
            for slot in block {
                *slot = twice_mean - *slot;
            }
        }
    }

    /// Arc reversal, using `scratch` as the gather target.
    pub fn reversal_in_place(&self, x: &mut [f64], scratch: &mut [f64]) {
        for (i, &r) in self.arcs.rev.iter().enumerate() {
            scratch[r] = x[i];
        }
        x.copy_from_slice(scratch);
    }

    /// One full step: oracle, then coin, then reversal.
    pub fn step_in_place(&self, x: &mut [f64], scratch: &mut [f64]) {
        self.oracle_in_place(x);
        self.coin_in_place(x);
        self.reversal_in_place(x, scratch);
    }

    pub fn apply_oracle(&self, s: &WalkState) -> WalkState {
        let mut amp = s.amp.clone();
        self.oracle_in_place(&mut amp);
        WalkState::new(amp)
    }

    pub fn apply_coin(&self, s: &WalkState) -> WalkState {
        let mut amp = s.amp.clone();
        self.coin_in_place(&mut amp);
        WalkState::new(amp)
    }

    pub fn apply_reversal(&self, s: &WalkState) -> WalkState {
        let mut amp = s.amp.clone();
        let mut scratch = vec![0.0; amp.len()];
        self.reversal_in_place(&mut amp, &mut scratch);
        WalkState::new(amp)
    }

    pub fn apply_step(&self, s: &WalkState) -> WalkState {
        let mut amp = s.amp.clone();
        let mut scratch = vec![0.0; amp.len()];
        self.step_in_place(&mut amp, &mut scratch);
        WalkState::new(amp)
    }

    /// Probability mass on the marked vertex's outgoing arcs.
    pub fn marked_mass(&self, x: &[f64]) -> f64 {
        let k = self.arcs.k;
        x[self.marked * k..(self.marked + 1) * k]
            .iter()
            .map(|a| a * a)
            .sum()
    }

    /// Probability of finding the marked vertex after exactly t steps.
    pub fn search_probability_at(&self, t: usize) -> f64 {
        let mut x = self.initial_state().amp;
        let mut scratch = vec![0.0; x.len()];
        for _ in 0..t {
            self.step_in_place(&mut x, &mut scratch);
        }
        self.marked_mass(&x)
    }

    /// Arcwise Cesaro average of the probability distribution over the first
    /// `steps` times (t = 0 included).
    pub fn time_average_distribution(&self, steps: usize) -> Result<Vec<f64>> {
        if steps == 0 {
            return Err(Error::InvalidParameter(
                "time average needs at least one step".into(),
            ));
        }
        let mut x = self.initial_state().amp;
        let mut scratch = vec![0.0; x.len()];
        let mut acc = vec![0.0; x.len()];
        for t in 0..steps {
            if t > 0 {
                self.step_in_place(&mut x, &mut scratch);
            }
            for (a, &xi) in acc.iter_mut().zip(x.iter()) {
                *a += xi * xi;
            }
        }
        let inv = 1.0 / steps as f64;
        for a in &mut acc {
            *a *= inv;
        }
        Ok(acc)
    }

    /// Cesaro-averaged probability of the marked vertex over `steps` times.
    pub fn empirical_average_search_probability(&self, steps: usize) -> Result<f64> {
        let avg = self.time_average_distribution(steps)?;
        let k = self.arcs.k;
        Ok(avg[self.marked * k..(self.marked + 1) * k].iter().sum())
    }

    /// Dense step matrix, for small instances only (tests and diagnostics).
    pub fn materialize_unitary(&self) -> Result<Array2<f64>> {
        let m = self.arcs.len();
        if m > MAX_MATERIALIZE_ARCS {
            return Err(Error::TooLargeToMaterialize { arcs: m });
        }
        let mut u = Array2::zeros((m, m));
        let mut x = vec![0.0; m];
        let mut scratch = vec![0.0; m];
        for col in 0..m {
            x.fill(0.0);
            x[col] = 1.0;
            self.step_in_place(&mut x, &mut scratch);
            for row in 0..m {
                u[[row, col]] = x[row];
            }
        }
        Ok(u)
    }
}
