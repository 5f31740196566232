//! Vertex partitions, the distance partition, and the equitable test.

use super::Graph;
use crate::error::{Error, Result};
use ndarray::Array2;

/// An ordered partition of the vertex set into nonempty cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    cells: Vec<Vec<usize>>,
    cell_of: Vec<usize>,
}

impl Partition {
    /// Validates that `cells` are nonempty, disjoint and cover 0..n.
    pub fn new(n: usize, cells: Vec<Vec<usize>>) -> Result<Self> {
        let mut cell_of = vec![usize::MAX; n];
        for (i, cell) in cells.iter().enumerate() {
            if cell.is_empty() {
                return Err(Error::InvalidParameter(format!("cell {i} is empty")));
            }
            for &v in cell {
                if v >= n {
                    return Err(Error::InvalidParameter(format!(
                        "vertex {v} out of range in cell {i}"
                    )));
                }
                if cell_of[v] != usize::MAX {
                    return Err(Error::InvalidParameter(format!(
                        "vertex {v} appears in cells {} and {i}",
                        cell_of[v]
                    )));
                }
                cell_of[v] = i;
            }
        }
        if let Some(v) = cell_of.iter().position(|&c| c == usize::MAX) {
            return Err(Error::InvalidParameter(format!(
                "vertex {v} is not covered by any cell"
            )));
        }
        Ok(Partition { cells, cell_of })
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn cell_of(&self, v: usize) -> usize {
        self.cell_of[v]
    }

    pub fn cell_sizes(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }
}

/// Integer quotient matrix of an equitable partition: entry (i,j) is the
/// number of neighbours in cell j of any vertex in cell i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientMatrix {
    entries: Array2<i64>,
    cell_sizes: Vec<usize>,
}

impl QuotientMatrix {
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &Array2<i64> {
        &self.entries
    }

    pub fn to_f64(&self) -> Array2<f64> {
        self.entries.mapv(|x| x as f64)
    }

    pub fn cell_sizes(&self) -> &[usize] {
        &self.cell_sizes
    }

    /// True when only the main diagonal and the two adjacent bands are
    /// nonzero.
    pub fn is_tridiagonal(&self) -> bool {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                if i.abs_diff(j) > 1 && self.entries[[i, j]] != 0 {
                    return false;
                }
            }
        }
        true
    }
}

/// Cells of equal BFS distance from `a`, ordered by distance. Fails with a
/// witness when some vertex is unreachable.
pub fn distance_partition(g: &Graph, a: usize) -> Result<Partition> {
    let dist = g.bfs_distances(a);
    if let Some(unreachable) = dist.iter().position(Option::is_none) {
        return Err(Error::Disconnected {
            from: a,
            unreachable,
        });
    }
    let ecc = dist.iter().map(|d| d.unwrap()).max().unwrap();
    let mut cells = vec![Vec::new(); ecc + 1];
    for (v, d) in dist.iter().enumerate() {
        cells[d.unwrap()].push(v);
    }
    Partition::new(g.n(), cells)
}

/// Tests whether every vertex of each cell has the same number of neighbours
/// in every other cell; on success returns the integer quotient matrix, on
/// failure the first offending (vertex, cell) pair.
pub fn check_equitable(g: &Graph, p: &Partition) -> Result<QuotientMatrix> {
    let d = p.len();
    let mut entries = Array2::<i64>::zeros((d, d));
    let mut counts = vec![0i64; d];
    for (i, cell) in p.cells().iter().enumerate() {
        for (which, &u) in cell.iter().enumerate() {
            counts.fill(0);
            for &w in g.neighbours(u) {
                counts[p.cell_of(w)] += 1;
            }
            if which == 0 {
                for j in 0..d {
                    entries[[i, j]] = counts[j];
                }
            } else {
                for j in 0..d {
                    if counts[j] != entries[[i, j]] {
                        return Err(Error::NotEquitable {
                            vertex: u,
                            cell: i,
                            other: j,
                            expected: entries[[i, j]] as usize,
                            found: counts[j] as usize,
                        });
                    }
                }
            }
        }
    }
    Ok(QuotientMatrix {
        entries,
        cell_sizes: p.cell_sizes(),
    })
}

#[cfg(test)]
mod tests {
    use super::super::{complete, cycle, petersen, Graph};
    use super::*;
    use ndarray::arr2;

    #[test]
    fn distance_partition_of_cycle() {
        let g = cycle(6).unwrap();
        let p = distance_partition(&g, 0).unwrap();
        assert_eq!(p.cells(), &[vec![0], vec![1, 5], vec![2, 4], vec![3]]);
        assert_eq!(p.cell_of(4), 2);
    }

    #[test]
    fn disconnected_graph_reports_witness() {
        let g = Graph::from_edges("two-edges", 4, &[(0, 1), (2, 3)]).unwrap();
        let err = distance_partition(&g, 0).unwrap_err();
        assert_eq!(
            err,
            Error::Disconnected {
                from: 0,
                unreachable: 2
            }
        );
    }

    #[test]
    fn petersen_distance_quotient() {
        let g = petersen().unwrap();
        let p = distance_partition(&g, 0).unwrap();
        let q = check_equitable(&g, &p).unwrap();
        assert_eq!(
            q.entries(),
            &arr2(&[[0, 3, 0], [1, 0, 2], [0, 1, 2]])
        );
        assert!(q.is_tridiagonal());
        assert_eq!(q.cell_sizes(), &[1, 3, 6]);
    }

    #[test]
    fn quotient_commutes_with_adjacency() {
        // A P = P B exactly, where P is the n-by-cells indicator matrix.
        for g in [cycle(6).unwrap(), complete(5).unwrap(), petersen().unwrap()] {
            let p = distance_partition(&g, 0).unwrap();
            let q = check_equitable(&g, &p).unwrap();
            let n = g.n();
            let mut ind = Array2::<f64>::zeros((n, p.len()));
            for (j, cell) in p.cells().iter().enumerate() {
                for &v in cell {
                    ind[[v, j]] = 1.0;
                }
            }
            let left = g.adjacency_matrix().dot(&ind);
            let right = ind.dot(&q.to_f64());
            assert_eq!(left, right, "{}", g.name());
        }
    }

    #[test]
    fn non_equitable_partition_refused_with_witness() {
        // Path 0-1-2: cells {0,1} and {2} are not equitable (0 and 1 differ).
        let g = Graph::from_edges("p3", 3, &[(0, 1), (1, 2)]).unwrap();
        let p = Partition::new(3, vec![vec![0, 1], vec![2]]).unwrap();
        let err = check_equitable(&g, &p).unwrap_err();
        assert_eq!(
            err,
            Error::NotEquitable {
                vertex: 1,
                cell: 0,
                other: 1,
                expected: 0,
                found: 1
            }
        );
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(3, vec![vec![0, 1]]).is_err()); // missing 2
        assert!(Partition::new(3, vec![vec![0, 1], vec![1, 2]]).is_err()); // overlap
        assert!(Partition::new(3, vec![vec![0, 1, 2], vec![]]).is_err()); // empty cell
        assert!(Partition::new(2, vec![vec![0], vec![1]]).is_ok());
    }
}
