//! Simple undirected graphs with ordered adjacency.
//!
//! Vertices are `0..n`. Every neighbour list is kept sorted ascending; the
//! position of `v` in `u`'s list is what the walk layer uses to index arcs,
//! so the ordering is part of the public contract.

mod family;
mod intersect;
mod partition;

pub use family::{
    build_family, complete, cycle, hamming, hypercube, johnson, paley, petersen,
};
pub use intersect::{intersection_array_of, IntersectionArray};
pub use partition::{check_equitable, distance_partition, Partition, QuotientMatrix};

use crate::error::{Error, Result};
use ndarray::Array2;

/// Default upper bound on the number of vertices a builder will accept.
pub const DEFAULT_MAX_N: usize = 4096;

/// Current vertex-count cap: `DTQW_MAX_N` from the environment, or
/// [`DEFAULT_MAX_N`] when unset or unparsable.
pub fn size_cap() -> usize {
    std::env::var("DTQW_MAX_N")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_N)
}

fn enforce_cap(n: usize) -> Result<()> {
    let cap = size_cap();
    if n > cap {
        return Err(Error::SizeCap { n, cap });
    }
    Ok(())
}

/// An undirected simple graph with sorted neighbour lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    name: String,
    neighbours: Vec<Vec<usize>>,
}

/// Relabelling produced by deleting one vertex: old labels above the deleted
/// vertex shift down by one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeletionMap {
    deleted: usize,
    n_before: usize,
}

impl DeletionMap {
    pub fn deleted(&self) -> usize {
        self.deleted
    }

    /// Label in the original graph of new vertex `v`.
    pub fn to_old(&self, v: usize) -> usize {
        if v < self.deleted {
            v
        } else {
            v + 1
        }
    }

    /// Label in the deleted graph of original vertex `u`, if it survives.
    pub fn to_new(&self, u: usize) -> Option<usize> {
        use std::cmp::Ordering::*;
        match u.cmp(&self.deleted) {
            Less => Some(u),
            Equal => None,
            Greater => Some(u - 1),
        }
    }
}

impl Graph {
    /// Builds a graph from an explicit edge list. Rejects loops, duplicate
    /// edges, out-of-range endpoints and vertex counts beyond the size cap.
    pub fn from_edges(name: impl Into<String>, n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        enforce_cap(n)?;
        let mut neighbours = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u},{v}) out of range for n = {n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("loop at vertex {u}")));
            }
            neighbours[u].push(v);
            neighbours[v].push(u);
        }
        for (u, list) in neighbours.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidParameter(format!(
                    "duplicate edge at vertex {u}"
                )));
            }
        }
        Ok(Graph {
            name: name.into(),
            neighbours,
        })
    }

    /// Parses the plain-text edge-list format: optional `#` comments, first
    /// significant line the vertex count, each following line one `u v` edge.
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let mut fields = body.split_whitespace();
            match n {
                None => {
                    let first = fields.next().unwrap();
                    if fields.next().is_some() {
                        return Err(Error::Parse {
                            line,
                            message: "expected a single vertex count".into(),
                        });
                    }
                    n = Some(first.parse().map_err(|_| Error::Parse {
                        line,
                        message: format!("invalid vertex count '{first}'"),
                    })?);
                }
                Some(_) => {
                    let u: usize = fields
                        .next()
                        .ok_or(Error::Parse {
                            line,
                            message: "expected 'u v'".into(),
                        })?
                        .parse()
                        .map_err(|_| Error::Parse {
                            line,
                            message: "invalid endpoint".into(),
                        })?;
                    let v: usize = fields
                        .next()
                        .ok_or(Error::Parse {
                            line,
                            message: "expected 'u v'".into(),
                        })?
                        .parse()
                        .map_err(|_| Error::Parse {
                            line,
                            message: "invalid endpoint".into(),
                        })?;
                    if fields.next().is_some() {
                        return Err(Error::Parse {
                            line,
                            message: "trailing tokens after edge".into(),
                        });
                    }
                    edges.push((u, v, line));
                }
            }
        }
        let n = n.ok_or(Error::Parse {
            line: 0,
            message: "empty input: missing vertex count".into(),
        })?;
        // Re-run the structural checks edge by edge so failures carry a line.
        let mut seen = std::collections::BTreeSet::new();
        for &(u, v, line) in &edges {
            if u >= n || v >= n {
                return Err(Error::Parse {
                    line,
                    message: format!("edge ({u},{v}) out of range for n = {n}"),
                });
            }
            if u == v {
                return Err(Error::Parse {
                    line,
                    message: format!("loop at vertex {u}"),
                });
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::Parse {
                    line,
                    message: format!("duplicate edge ({u},{v})"),
                });
            }
        }
        let pairs: Vec<(usize, usize)> = edges.iter().map(|&(u, v, _)| (u, v)).collect();
        Graph::from_edges("edge-list", n, &pairs)
    }

    /// Serialises back to the edge-list format (vertex count, then one line
    /// per edge with u < v, ascending).
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.n());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.neighbours.len()
    }

    pub fn degree(&self, u: usize) -> usize {
        self.neighbours[u].len()
    }

    /// Sorted neighbour list of `u`.
    pub fn neighbours(&self, u: usize) -> &[usize] {
        &self.neighbours[u]
    }

    pub fn is_edge(&self, u: usize, v: usize) -> bool {
        self.neighbours[u].binary_search(&v).is_ok()
    }

    /// Position of `v` inside `u`'s sorted neighbour list.
    pub fn neighbour_index(&self, u: usize, v: usize) -> Option<usize> {
        self.neighbours[u].binary_search(&v).ok()
    }

    /// All edges as (u, v) with u < v, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n() {
            for &v in &self.neighbours[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.neighbours.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Common degree, or a two-vertex witness that degrees differ.
    pub fn regular_degree(&self) -> Result<usize> {
        let k = self.degree(0);
        for u in 1..self.n() {
            if self.degree(u) != k {
                return Err(Error::NotRegular {
                    u: 0,
                    du: k,
                    v: u,
                    dv: self.degree(u),
                });
            }
        }
        Ok(k)
    }

    /// Dense 0/1 adjacency matrix.
    pub fn adjacency_matrix(&self) -> Array2<f64> {
        let n = self.n();
        let mut a = Array2::zeros((n, n));
        for u in 0..n {
            for &v in &self.neighbours[u] {
                a[[u, v]] = 1.0;
            }
        }
        a
    }

    /// BFS distances from `from`; `None` marks unreachable vertices.
    pub fn bfs_distances(&self, from: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[from] = Some(0);
        let mut queue = std::collections::VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in &self.neighbours[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.bfs_distances(0).iter().all(Option::is_some)
    }

    /// The graph with vertex `a` removed, plus the label map.
    pub fn vertex_deleted(&self, a: usize) -> (Graph, DeletionMap) {
        let map = DeletionMap {
            deleted: a,
            n_before: self.n(),
        };
        let mut neighbours = Vec::with_capacity(self.n() - 1);
        for u in 0..self.n() {
            if u == a {
                continue;
            }
            let list = self.neighbours[u]
                .iter()
                .filter_map(|&v| map.to_new(v))
                .collect();
            neighbours.push(list);
        }
        let g = Graph {
            name: format!("{} minus {}", self.name, a),
            neighbours,
        };
        (g, map)
    }

    /// Principal submatrix of the Laplacian `kI - A` with row/column `a`
    /// removed. Requires regularity so that `k` is well defined.
    pub fn laplacian_minor(&self, a: usize) -> Result<Array2<f64>> {
        let k = self.regular_degree()? as f64;
        let (del, _) = self.vertex_deleted(a);
        let mut m = -del.adjacency_matrix();
        for i in 0..del.n() {
            m[[i, i]] += k;
        }
        Ok(m)
    }

    /// True when the graph is connected and stays connected after removing
    /// any single vertex. Returns `false` for n < 3.
    pub fn is_two_connected(&self) -> bool {
        self.n() >= 3 && self.is_connected() && self.articulation_vertex().is_none()
    }

    /// First cut vertex in DFS order, if any. Assumes a connected graph.
    pub fn articulation_vertex(&self) -> Option<usize> {
        let n = self.n();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut timer = 0;
        // Frames: (vertex, parent, next neighbour offset).
        let mut stack: Vec<(usize, usize, usize)> = Vec::new();
        let mut root_children = 0;

        disc[0] = timer;
        low[0] = timer;
        timer += 1;
        stack.push((0, usize::MAX, 0));
        while let Some(&mut (u, parent, ref mut next)) = stack.last_mut() {
            if *next < self.neighbours[u].len() {
                let v = self.neighbours[u][*next];
                *next += 1;
                if disc[v] == usize::MAX {
                    if u == 0 {
                        root_children += 1;
                    }
                    disc[v] = timer;
                    low[v] = timer;
                    timer += 1;
                    stack.push((v, u, 0));
                } else if v != parent {
                    low[u] = low[u].min(disc[v]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[u]);
                    if p != 0 && low[u] >= disc[p] {
                        return Some(p);
                    }
                }
            }
        }
        if root_children >= 2 {
            return Some(0);
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::from_edges("path", n, &edges).unwrap()
    }

    #[test]
    fn edge_list_round_trip() {
        let g = cycle(6).unwrap();
        let text = g.to_edge_list();
        let h = Graph::from_edge_list(&text).unwrap();
        assert_eq!(g.edges(), h.edges());
        assert_eq!(h.n(), 6);
    }

    #[test]
    fn parse_reports_line_numbers() {
        let err = Graph::from_edge_list("3\n0 1\n1 1\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 3,
                message: "loop at vertex 1".into()
            }
        );
        let err = Graph::from_edge_list("# header\n3\n0 1\n0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }));
        let err = Graph::from_edge_list("3\n0 7\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = Graph::from_edge_list("# only comments\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 0, .. }));
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let g = Graph::from_edge_list("# triangle\n3\n\n0 1 # first\n1 2\n0 2\n").unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.regular_degree().unwrap(), 2);
    }

    #[test]
    fn neighbour_lists_are_sorted() {
        let g = Graph::from_edges("t", 4, &[(3, 0), (0, 2), (1, 0)]).unwrap();
        assert_eq!(g.neighbours(0), &[1, 2, 3]);
        assert_eq!(g.neighbour_index(0, 2), Some(1));
        assert_eq!(g.neighbour_index(2, 3), None);
    }

    #[test]
    fn regularity_witness() {
        let err = path(4).regular_degree().unwrap_err();
        assert_eq!(
            err,
            Error::NotRegular {
                u: 0,
                du: 1,
                v: 1,
                dv: 2
            }
        );
    }

    #[test]
    fn deletion_map_shifts_labels() {
        let g = cycle(5).unwrap();
        let (h, map) = g.vertex_deleted(2);
        assert_eq!(h.n(), 4);
        assert_eq!(map.to_new(1), Some(1));
        assert_eq!(map.to_new(2), None);
        assert_eq!(map.to_new(4), Some(3));
        assert_eq!(map.to_old(3), 4);
        // C5 minus vertex 2 is the path 3-4-0-1, i.e. 2-3-0-1 in new labels.
        assert_eq!(h.edges(), vec![(0, 1), (0, 3), (2, 3)]);
    }

    #[test]
    fn two_connectivity_matches_brute_force() {
        let graphs = [
            cycle(6).unwrap(),
            complete(4).unwrap(),
            path(5),
            petersen().unwrap(),
            // Two triangles sharing vertex 0: the classic cut-vertex case.
            Graph::from_edges("bowtie", 5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])
                .unwrap(),
        ];
        for g in &graphs {
            let brute = g.n() >= 3
                && g.is_connected()
                && (0..g.n()).all(|a| {
                    let (h, _) = g.vertex_deleted(a);
                    h.is_connected()
                });
            assert_eq!(g.is_two_connected(), brute, "{}", g.name());
        }
    }

    #[test]
    fn articulation_vertex_found_in_bowtie() {
        let g = Graph::from_edges("bowtie", 5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])
            .unwrap();
        assert_eq!(g.articulation_vertex(), Some(0));
    }

    #[test]
    fn size_cap_is_enforced() {
        std::env::remove_var("DTQW_MAX_N");
        let err = complete(DEFAULT_MAX_N + 1).unwrap_err();
        assert!(matches!(err, Error::SizeCap { .. }));
    }

    #[test]
    fn laplacian_minor_of_triangle() {
        let g = complete(3).unwrap();
        let m = g.laplacian_minor(0).unwrap();
        assert_eq!(m, ndarray::arr2(&[[2.0, -1.0], [-1.0, 2.0]]));
    }
}
