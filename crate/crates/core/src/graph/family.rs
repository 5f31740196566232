//! Named graph families with deterministic vertex labellings.

use super::Graph;
use crate::error::{Error, Result};

/// Complete graph K_n, vertices 0..n.
pub fn complete(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "complete graph needs n >= 2, got {n}"
        )));
    }
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(format!("K{n}"), n, &edges)
}

/// Cycle C_n, vertex i adjacent to i±1 mod n.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "cycle needs n >= 3, got {n}"
        )));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(format!("C{n}"), n, &edges)
}

/// All m-element subsets of 0..v in lexicographic order.
fn subsets(v: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, v: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for x in start..v {
            cur.push(x);
            rec(x + 1, v, m, cur, out);
            cur.pop();
        }
    }
    rec(0, v, m, &mut cur, &mut out);
    out
}

fn intersection_size(a: &[usize], b: &[usize]) -> usize {
    // Both sorted ascending.
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        use std::cmp::Ordering::*;
        match a[i].cmp(&b[j]) {
            Less => i += 1,
            Greater => j += 1,
            Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Petersen graph as the Kneser graph on 2-subsets of {0..4}: vertices are
/// the ten pairs in lexicographic order, adjacent when disjoint.
pub fn petersen() -> Result<Graph> {
    let verts = subsets(5, 2);
    let mut edges = Vec::new();
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            if intersection_size(&verts[i], &verts[j]) == 0 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges("petersen", 10, &edges)
}

/// d-dimensional hypercube: vertices are bitmasks 0..2^d, adjacent when the
/// masks differ in exactly one bit.
pub fn hypercube(d: usize) -> Result<Graph> {
    if d < 1 || d >= usize::BITS as usize {
        return Err(Error::InvalidParameter(format!(
            "hypercube dimension {d} out of range"
        )));
    }
    let n = 1usize << d;
    let mut edges = Vec::new();
    for u in 0..n {
        for b in 0..d {
            let v = u ^ (1 << b);
            if u < v {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(format!("Q{d}"), n, &edges)
}

/// Hamming graph H(d,q): vertices are words of length d over 0..q (listed
/// lexicographically, most significant digit first), adjacent when they
/// differ in exactly one coordinate.
pub fn hamming(d: usize, q: usize) -> Result<Graph> {
    if d < 1 || q < 2 {
        return Err(Error::InvalidParameter(format!(
            "hamming needs d >= 1 and q >= 2, got d = {d}, q = {q}"
        )));
    }
    let n = q
        .checked_pow(d as u32)
        .ok_or_else(|| Error::InvalidParameter("hamming size overflows".into()))?;
    super::enforce_cap(n)?;
    let mut edges = Vec::new();
    // Index u encodes the word with digit i at place value q^(d-1-i).
    let mut place = vec![0usize; d];
    for (i, p) in place.iter_mut().enumerate() {
        *p = q.pow((d - 1 - i) as u32);
    }
    for u in 0..n {
        for &p in &place {
            let digit = (u / p) % q;
            for other in digit + 1..q {
                edges.push((u, u + (other - digit) * p));
            }
        }
    }
    Graph::from_edges(format!("H({d},{q})"), n, &edges)
}

/// Johnson graph J(v,m): vertices are the m-subsets of {0..v} in
/// lexicographic order, adjacent when the intersection has size m-1.
pub fn johnson(v: usize, m: usize) -> Result<Graph> {
    if m < 1 || m >= v {
        return Err(Error::InvalidParameter(format!(
            "johnson needs 1 <= m < v, got v = {v}, m = {m}"
        )));
    }
    let verts = subsets(v, m);
    super::enforce_cap(verts.len())?;
    let mut edges = Vec::new();
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            if intersection_size(&verts[i], &verts[j]) == m - 1 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(format!("J({v},{m})"), verts.len(), &edges)
}

fn is_prime(q: usize) -> bool {
    if q < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// Paley graph on a prime q = 1 (mod 4): vertices are residues mod q,
/// adjacent when their difference is a nonzero square.
pub fn paley(q: usize) -> Result<Graph> {
    if !is_prime(q) || q % 4 != 1 {
        return Err(Error::InvalidParameter(format!(
            "paley needs a prime q = 1 (mod 4), got {q}"
        )));
    }
    let mut is_square = vec![false; q];
    for x in 1..q {
        is_square[x * x % q] = true;
    }
    let mut edges = Vec::new();
    for u in 0..q {
        for v in u + 1..q {
            if is_square[v - u] {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(format!("paley({q})"), q, &edges)
}

/// Builds a family member from its CLI name and integer parameters.
///
/// Arities: `petersen` none; `complete`, `cycle`, `hypercube`, `paley` one;
/// `hamming` and `johnson` two (`d,q` and `v,m` respectively).
pub fn build_family(name: &str, params: &[usize]) -> Result<Graph> {
    let want = |arity: usize| -> Result<()> {
        if params.len() != arity {
            return Err(Error::InvalidParameter(format!(
                "family '{name}' takes {arity} parameter(s), got {}",
                params.len()
            )));
        }
        Ok(())
    };
    match name {
        "complete" => {
            want(1)?;
            complete(params[0])
        }
        "cycle" => {
            want(1)?;
            cycle(params[0])
        }
        "petersen" => {
            want(0)?;
            petersen()
        }
        "hypercube" => {
            want(1)?;
            hypercube(params[0])
        }
        "hamming" => {
            want(2)?;
            hamming(params[0], params[1])
        }
        "johnson" => {
            want(2)?;
            johnson(params[0], params[1])
        }
        "paley" => {
            want(1)?;
            paley(params[0])
        }
        _ => Err(Error::InvalidParameter(format!(
            "unknown family '{name}' (expected complete, cycle, petersen, hypercube, hamming, johnson or paley)"
        ))),
    }
}
