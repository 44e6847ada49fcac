//! Free transversals of a family of subspaces (the linear form of Hall's theorem).
//!
//! The family E_1..E_n is turned into a ground set of tagged vectors: the echelon
//! rows of each E_i carry the tag i. An independent transversal is a common
//! independent set of size n of two matroids on that ground set: the linear
//! matroid (vectors independent over F_p) and the partition matroid (at most one
//! vector per tag). We grow a common independent set by shortest augmenting paths
//! in the exchange graph. When no path exists, the set U of elements that can
//! still reach a free tag yields the tags J whose vectors all lie in U, and
//! dim Σ_{i∈J} E_i ≤ rank(U) = |I| - (n - |J|) < |J|.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::subspace::Subspace;

/// Outcome of [`free_transversal`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum TransversalResult {
    /// x_i ∈ E_i for every i, jointly independent.
    Transversal(Vec<Vec<u32>>),
    /// Tags J (1-based, sorted) with `span_dim` = dim Σ_{i∈J} E_i < |J|.
    Violator {
        indices: Vec<usize>,
        span_dim: usize,
    },
}

impl TransversalResult {
    pub fn is_transversal(&self) -> bool {
        matches!(self, TransversalResult::Transversal(_))
    }
}

struct Ground<'a> {
    vectors: Vec<&'a [u32]>,
    tag: Vec<usize>,
}

/// Finds a free transversal of `family`, or a set of indices violating the Rado condition.
pub fn free_transversal(family: &[Subspace]) -> Result<TransversalResult> {
    let Some(first) = family.first() else {
        return Ok(TransversalResult::Transversal(Vec::new()));
    };
    let (p, m) = (first.p(), first.ambient());
    if family.iter().any(|e| e.p() != p || e.ambient() != m) {
        return Err(Error::MismatchedField);
    }
    let fp = first.fp();
    let n = family.len();

    let mut ground = Ground {
        vectors: Vec::new(),
        tag: Vec::new(),
    };
    for (i, e) in family.iter().enumerate() {
        for r in e.rows() {
            ground.vectors.push(r);
            ground.tag.push(i);
        }
    }
    let size = ground.vectors.len();
    let mut in_set = vec![false; size];
    // owner[i] = ground element currently representing tag i
    let mut owner: Vec<Option<usize>> = vec![None; n];

    let independent = |members: &[usize]| -> bool {
        let rows: Vec<Vec<u32>> = members
            .iter()
            .map(|&e| ground.vectors[e].to_vec())
            .collect();
        linalg::rank(fp, &rows, m) == members.len()
    };

    loop {
        let current: Vec<usize> = (0..size).filter(|&e| in_set[e]).collect();
        if current.len() == n {
            break;
        }
        let outside: Vec<usize> = (0..size).filter(|&e| !in_set[e]).collect();

        let is_source = |x: usize| {
            let mut s = current.clone();
            s.push(x);
            independent(&s)
        };
        let sources: Vec<usize> = outside.iter().copied().filter(|&x| is_source(x)).collect();
        let is_sink = |x: usize| owner[ground.tag[x]].is_none();

        // Adjacency of the exchange graph.
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); size];
        for &x in &outside {
            if let Some(y) = owner[ground.tag[x]] {
                adj[x].push(y);
            }
            for &y in &current {
                let mut s: Vec<usize> = current.iter().copied().filter(|&z| z != y).collect();
                s.push(x);
                if independent(&s) {
                    adj[y].push(x);
                }
            }
        }

        // Shortest path from a source to a sink.
        let mut prev: Vec<Option<usize>> = vec![None; size];
        let mut seen = vec![false; size];
        let mut queue = VecDeque::new();
        for &s in &sources {
            seen[s] = true;
            queue.push_back(s);
        }
        let mut end = None;
        while let Some(v) = queue.pop_front() {
            if !in_set[v] && is_sink(v) {
                end = Some(v);
                break;
            }
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    prev[w] = Some(v);
                    queue.push_back(w);
                }
            }
        }

        match end {
            Some(mut v) => {
                let mut path = vec![v];
                while let Some(u) = prev[v] {
                    path.push(u);
                    v = u;
                }
                for &e in &path {
                    in_set[e] = !in_set[e];
                }
                owner = vec![None; n];
                for e in (0..size).filter(|&e| in_set[e]) {
                    owner[ground.tag[e]] = Some(e);
                }
            }
            None => return Ok(violator(family, &ground, &adj, &in_set, &owner)),
        }
    }

    let vectors = owner
        .iter()
        .map(|o| ground.vectors[o.expect("every tag represented")].to_vec())
        .collect();
    Ok(TransversalResult::Transversal(vectors))
}

fn violator(
    family: &[Subspace],
    ground: &Ground<'_>,
    adj: &[Vec<usize>],
    in_set: &[bool],
    owner: &[Option<usize>],
) -> TransversalResult {
    let size = ground.vectors.len();
    // Reverse reachability from the sinks.
    let mut radj: Vec<Vec<usize>> = vec![Vec::new(); size];
    for (v, ws) in adj.iter().enumerate() {
        for &w in ws {
            radj[w].push(v);
        }
    }
    let mut reach = vec![false; size];
    let mut queue: VecDeque<usize> = (0..size)
        .filter(|&x| !in_set[x] && owner[ground.tag[x]].is_none())
        .collect();
    for &x in &queue {
        reach[x] = true;
    }
    while let Some(v) = queue.pop_front() {
        for &u in &radj[v] {
            if !reach[u] {
                reach[u] = true;
                queue.push_back(u);
            }
        }
    }
    let indices: Vec<usize> = (0..family.len())
        .filter(|&i| (0..size).all(|e| ground.tag[e] != i || reach[e]))
        .collect();
    let first = &family[0];
    let span = indices
        .iter()
        .fold(Subspace::zero(first.p(), first.ambient()), |acc, &i| {
            acc.sum(&family[i]).expect("same ambient")
        });
    assert!(
        span.dim() < indices.len(),
        "augmentation stalled without a Rado violator"
    );
    TransversalResult::Violator {
        indices: indices.into_iter().map(|i| i + 1).collect(),
        span_dim: span.dim(),
    }
}
