//! Intersection arrays {b0,...,b_{d-1}; c1,...,cd} and the test that decides
//! whether a graph realises one.

use super::{check_equitable, distance_partition, Graph};
use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// A feasible intersection array. Construction validates the arithmetic
/// constraints, so every value of this type has integral sphere sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionArray {
    b: Vec<u64>,
    c: Vec<u64>,
    sphere: Vec<u64>,
}

impl IntersectionArray {
    /// Checks feasibility: equal lengths d >= 1, positive entries, c1 = 1,
    /// b nonincreasing, c nondecreasing, a_i = k - b_i - c_i nonnegative,
    /// and every sphere size k_{i+1} = k_i b_i / c_{i+1} an integer.
    pub fn new(b: Vec<u64>, c: Vec<u64>) -> Result<Self> {
        let invalid = |condition: String| Err(Error::InvalidArray { condition });
        let d = b.len();
        if d == 0 || c.len() != d {
            return invalid(format!(
                "need equal positive lengths, got {} b's and {} c's",
                d,
                c.len()
            ));
        }
        if let Some(i) = b.iter().position(|&x| x == 0) {
            return invalid(format!("b{i} = 0"));
        }
        if let Some(i) = c.iter().position(|&x| x == 0) {
            return invalid(format!("c{} = 0", i + 1));
        }
        if c[0] != 1 {
            return invalid(format!("c1 = {}, expected 1", c[0]));
        }
        if let Some(i) = b.windows(2).position(|w| w[0] < w[1]) {
            return invalid(format!("b{} < b{}", i, i + 1));
        }
        if let Some(i) = c.windows(2).position(|w| w[0] > w[1]) {
            return invalid(format!("c{} > c{}", i + 1, i + 2));
        }
        let k = b[0];
        for i in 0..=d {
            let bi = if i < d { b[i] } else { 0 };
            let ci = if i == 0 { 0 } else { c[i - 1] };
            if bi + ci > k {
                return invalid(format!("a{i} = k - b{i} - c{i} is negative"));
            }
        }
        let mut sphere = vec![1u64];
        for i in 0..d {
            let prod = sphere[i] * b[i];
            if prod % c[i] != 0 {
                return invalid(format!(
                    "sphere size k{} = k{} * b{} / c{} is not an integer",
                    i + 1,
                    i,
                    i,
                    i + 1
                ));
            }
            sphere.push(prod / c[i]);
        }
        Ok(IntersectionArray { b, c, sphere })
    }

    pub fn diameter(&self) -> usize {
        self.b.len()
    }

    /// Common degree k = b0.
    pub fn degree(&self) -> u64 {
        self.b[0]
    }

    /// b_i for 0 <= i <= d, with b_d = 0.
    pub fn b(&self, i: usize) -> u64 {
        if i < self.b.len() {
            self.b[i]
        } else {
            0
        }
    }

    /// c_i for 0 <= i <= d, with c_0 = 0.
    pub fn c(&self, i: usize) -> u64 {
        if i == 0 {
            0
        } else {
            self.c[i - 1]
        }
    }

    /// a_i = k - b_i - c_i.
    pub fn a(&self, i: usize) -> u64 {
        self.degree() - self.b(i) - self.c(i)
    }

    /// Sphere sizes k_0 = 1, ..., k_d.
    pub fn sphere_sizes(&self) -> &[u64] {
        &self.sphere
    }

    /// Total vertex count n = sum of sphere sizes.
    pub fn vertex_count(&self) -> u64 {
        self.sphere.iter().sum()
    }

    /// Product c_2 c_3 ... c_d (empty product for d = 1).
    pub fn c_tail_product(&self) -> u64 {
        self.c[1..].iter().product()
    }
}

impl fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[u64]| {
            xs.iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "{{{};{}}}", join(&self.b), join(&self.c))
    }
}

impl FromStr for IntersectionArray {
    type Err = Error;

    /// Accepts `b0,...,b_{d-1};c1,...,cd`, with or without surrounding braces.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('{').trim_end_matches('}');
        let mut halves = body.split(';');
        let parse_list = |part: Option<&str>| -> Result<Vec<u64>> {
            part.ok_or_else(|| Error::InvalidParameter("expected 'b0,..;c1,..'".into()))?
                .split(',')
                .map(|tok| {
                    tok.trim().parse().map_err(|_| {
                        Error::InvalidParameter(format!("invalid array entry '{}'", tok.trim()))
                    })
                })
                .collect()
        };
        let b = parse_list(halves.next())?;
        let c = parse_list(halves.next())?;
        if halves.next().is_some() {
            return Err(Error::InvalidParameter(
                "expected exactly one ';' in array".into(),
            ));
        }
        IntersectionArray::new(b, c)
    }
}

/// Decides distance regularity: every vertex must yield an equitable distance
/// partition with a tridiagonal quotient, and all quotients must agree.
/// Returns the common intersection array, or the first witness of failure.
pub fn intersection_array_of(g: &Graph) -> Result<IntersectionArray> {
    g.regular_degree()?;
    let mut reference: Option<(Vec<u64>, Vec<u64>)> = None;
    for v in 0..g.n() {
        let partition = distance_partition(g, v)?;
        let quotient = check_equitable(g, &partition).map_err(|e| Error::NotDistanceRegular {
            vertex: v,
            detail: format!("distance partition is not equitable ({e})"),
        })?;
        if !quotient.is_tridiagonal() {
            return Err(Error::NotDistanceRegular {
                vertex: v,
                detail: "distance quotient is not tridiagonal".into(),
            });
        }
        let d = quotient.dim() - 1;
        let entries = quotient.entries();
        let b: Vec<u64> = (0..d).map(|i| entries[[i, i + 1]] as u64).collect();
        let c: Vec<u64> = (1..=d).map(|i| entries[[i, i - 1]] as u64).collect();
        match &reference {
            None => reference = Some((b, c)),
            Some((b0, c0)) => {
                if *b0 != b || *c0 != c {
                    return Err(Error::NotDistanceRegular {
                        vertex: v,
                        detail: "intersection numbers differ from those at vertex 0".into(),
                    });
                }
            }
        }
    }
    let (b, c) = reference.expect("graph has at least one vertex");
    IntersectionArray::new(b, c)
}

#[cfg(test)]
mod tests {
    use super::super::{complete, cycle, hamming, johnson, petersen, Graph};
    use super::*;

    #[test]
    fn known_arrays() {
        let cases: Vec<(Graph, &str)> = vec![
            (complete(3).unwrap(), "{2;1}"),
            (complete(5).unwrap(), "{4;1}"),
            (cycle(6).unwrap(), "{2,1,1;1,1,2}"),
            (petersen().unwrap(), "{3,2;1,1}"),
            (hamming(2, 3).unwrap(), "{4,2;1,2}"),
            (johnson(5, 2).unwrap(), "{6,2;1,4}"),
        ];
        for (g, want) in cases {
            let arr = intersection_array_of(&g).unwrap();
            assert_eq!(arr.to_string(), want, "{}", g.name());
            assert_eq!(arr.vertex_count() as usize, g.n(), "{}", g.name());
        }
    }

    #[test]
    fn sphere_sizes_satisfy_the_counting_identity() {
        // b_i k_i = c_{i+1} k_{i+1}, and sizes match the distance partition.
        let g = cycle(6).unwrap();
        let arr = intersection_array_of(&g).unwrap();
        assert_eq!(arr.sphere_sizes(), &[1, 2, 2, 1]);
        for i in 0..arr.diameter() {
            assert_eq!(
                arr.b(i) * arr.sphere_sizes()[i],
                arr.c(i + 1) * arr.sphere_sizes()[i + 1]
            );
        }
        let p = distance_partition(&g, 3).unwrap();
        let sizes: Vec<u64> = p.cell_sizes().iter().map(|&s| s as u64).collect();
        assert_eq!(sizes, arr.sphere_sizes());
    }

    #[test]
    fn prism_is_rejected_with_witness() {
        // Triangular prism: vertex transitive but not distance regular.
        let g = Graph::from_edges(
            "prism",
            6,
            &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
        )
        .unwrap();
        let err = intersection_array_of(&g).unwrap_err();
        assert!(matches!(err, Error::NotDistanceRegular { vertex: 0, .. }));
    }

    #[test]
    fn non_regular_graph_is_an_error_not_a_refusal() {
        let g = Graph::from_edges("p4", 4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(matches!(
            intersection_array_of(&g),
            Err(Error::NotRegular { .. })
        ));
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["3,2;1,1", "{3,2;1,1}", " 2,1,1 ; 1,1,2 "] {
            let arr: IntersectionArray = s.parse().unwrap();
            let again: IntersectionArray = arr.to_string().parse().unwrap();
            assert_eq!(arr, again);
        }
    }

    #[test]
    fn validation_rejects_infeasible_arrays() {
        let bad: Vec<(&[u64], &[u64], &str)> = vec![
            (&[], &[], "empty"),
            (&[3, 2], &[1], "length mismatch"),
            (&[3, 0], &[1, 1], "zero b"),
            (&[3, 2], &[2, 2], "c1 != 1"),
            (&[2, 3], &[1, 1], "b increasing"),
            (&[3, 3], &[1, 1], "a1 negative"),
            (&[3, 2], &[1, 4], "k2 = 6/4 not integral"),
        ];
        for (b, c, why) in bad {
            assert!(
                IntersectionArray::new(b.to_vec(), c.to_vec()).is_err(),
                "{why}"
            );
        }
        // c nondecreasing violation.
        assert!(IntersectionArray::new(vec![4, 2, 2], vec![1, 2, 1]).is_err());
    }

    #[test]
    fn complete_graph_array_has_diameter_one() {
        let arr: IntersectionArray = "4;1".parse().unwrap();
        assert_eq!(arr.diameter(), 1);
        assert_eq!(arr.degree(), 4);
        assert_eq!(arr.a(1), 3);
        assert_eq!(arr.vertex_count(), 5);
        assert_eq!(arr.c_tail_product(), 1);
    }
}
