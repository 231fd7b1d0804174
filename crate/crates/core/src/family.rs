//! Nodes of the matching tree.
//!
//! A node is a list of complete perfect matchings between the `m = n/2` left
//! and right vertices, optionally followed by one partially specified matching
//! that fixes partners for left vertices `0..t`. Children extend the partial
//! matching by one edge (or start a new one); leaves hold exactly `d`
//! complete matchings and so describe a `d`-regular bipartite multigraph.
//!
//! Indices are 0-based in memory and 1-based in JSON.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{int, Rational};
use crate::error::{Error, Result};
use crate::linalg::{BlockSpec, Matrix};

/// Vertex count `n` (even) and degree `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Params {
    pub n: usize,
    pub d: usize,
}

impl Params {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        if n < 2 || !n.is_multiple_of(2) {
            return Err(Error::InvalidParams(format!("n must be even and at least 2, got {n}")));
        }
        if d < 1 {
            return Err(Error::InvalidParams("d must be at least 1".into()));
        }
        Ok(Params { n, d })
    }

    /// Vertices per side.
    pub fn m(&self) -> usize {
        self.n / 2
    }

    /// `4(d-1)`: the squared Ramanujan bound `(2 sqrt(d-1))^2`.
    pub fn bound_q(&self) -> u64 {
        4 * (self.d as u64 - 1)
    }
}

/// A node: complete matchings (`complete[k][i]` is the right partner of left
/// vertex `i`) plus an optional partial matching prefix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "NodeJson", into = "NodeJson")]
pub struct NodeState {
    pub complete: Vec<Vec<usize>>,
    pub partial: Option<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct NodeJson {
    complete: Vec<Vec<usize>>,
    #[serde(default)]
    partial: Option<Vec<usize>>,
}

fn to_zero_based(v: Vec<usize>) -> std::result::Result<Vec<usize>, String> {
    v.into_iter()
        .map(|x| x.checked_sub(1).ok_or_else(|| "vertex indices are 1-based".to_string()))
        .collect()
}

impl TryFrom<NodeJson> for NodeState {
    type Error = String;
    fn try_from(j: NodeJson) -> std::result::Result<Self, String> {
        Ok(NodeState {
            complete: j.complete.into_iter().map(to_zero_based).collect::<std::result::Result<_, _>>()?,
            partial: j.partial.map(to_zero_based).transpose()?,
        })
    }
}

impl From<NodeState> for NodeJson {
    fn from(s: NodeState) -> NodeJson {
        let one_based = |v: Vec<usize>| v.into_iter().map(|x| x + 1).collect();
        NodeJson {
            complete: s.complete.into_iter().map(one_based).collect(),
            partial: s.partial.map(one_based),
        }
    }
}

impl fmt::Display for NodeState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let json = serde_json::to_string(self).map_err(|_| fmt::Error)?;
        f.write_str(&json)
    }
}

fn is_permutation_prefix(v: &[usize], m: usize) -> bool {
    let mut seen = vec![false; m];
    v.iter().all(|&x| x < m && !std::mem::replace(&mut seen[x], true))
}

impl NodeState {
    pub fn root() -> Self {
        NodeState::default()
    }

    pub fn is_leaf(&self, params: &Params) -> bool {
        self.complete.len() == params.d && self.partial.is_none()
    }

    /// Number of matchings present, counting the partial one.
    pub fn matching_count(&self) -> usize {
        self.complete.len() + usize::from(self.partial.is_some())
    }

    pub fn validate(&self, params: &Params) -> Result<()> {
        let m = params.m();
        if self.matching_count() > params.d {
            return Err(Error::InvalidNode(format!(
                "{} matchings exceed the degree {}",
                self.matching_count(),
                params.d
            )));
        }
        for (k, perm) in self.complete.iter().enumerate() {
            if perm.len() != m || !is_permutation_prefix(perm, m) {
                return Err(Error::InvalidNode(format!("matching {} is not a permutation of 1..{m}", k + 1)));
            }
        }
        if let Some(p) = &self.partial {
            if p.len() >= m || !is_permutation_prefix(p, m) {
                return Err(Error::InvalidNode(format!(
                    "partial matching must have fewer than {m} distinct partners in 1..{m}"
                )));
            }
        }
        Ok(())
    }

    fn with_partial(&self, partial: Vec<usize>, m: usize) -> NodeState {
        let mut next = NodeState { complete: self.complete.clone(), partial: None };
        if partial.len() == m {
            next.complete.push(partial);
        } else {
            next.partial = Some(partial);
        }
        next
    }
}

/// Children in ascending order of the newly assigned right partner.
pub fn children(node: &NodeState, params: &Params) -> Result<Vec<NodeState>> {
    node.validate(params)?;
    if node.is_leaf(params) {
        return Err(Error::IsLeaf);
    }
    let m = params.m();
    let prefix = node.partial.clone().unwrap_or_default();
    let mut used = vec![false; m];
    for &j in &prefix {
        used[j] = true;
    }
    Ok((0..m)
        .filter(|&j| !used[j])
        .map(|j| {
            let mut next = prefix.clone();
            next.push(j);
            node.with_partial(next, m)
        })
        .collect())
}

/// The fixed edges of a node as an `m x m` count matrix, plus the block of
/// still-unmatched left and right vertices of the matching in progress.
///
/// The block is the unmatched part of the partial matching if there is one,
/// everything if a fresh matching is still to be drawn, and empty at a leaf.
pub fn half_adjacency(node: &NodeState, params: &Params) -> Result<(Matrix<Rational>, BlockSpec)> {
    node.validate(params)?;
    let m = params.m();
    let mut counts = vec![0i64; m * m];
    for perm in &node.complete {
        for (i, &j) in perm.iter().enumerate() {
            counts[i * m + j] += 1;
        }
    }
    let block = match &node.partial {
        Some(p) => {
            for (i, &j) in p.iter().enumerate() {
                counts[i * m + j] += 1;
            }
            let rows = (p.len()..m).collect();
            let cols = (0..m).filter(|j| !p.contains(j)).collect();
            BlockSpec::new(rows, cols)?
        }
        None if node.complete.len() < params.d => BlockSpec::full(m),
        None => BlockSpec::empty(),
    };
    let t = node.partial.as_ref().map_or(0, Vec::len);
    for i in 0..m {
        let row: i64 = counts[i * m..(i + 1) * m].iter().sum();
        let expect = node.complete.len() + usize::from(i < t);
        assert_eq!(row, expect as i64, "row {i} of the half-adjacency has the wrong sum");
    }
    let a = Matrix::new(m, m, counts.into_iter().map(int).collect())?;
    Ok((a, block))
}

/// A bipartite multigraph given by its `m x m` edge multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multigraph {
    pub n: usize,
    pub d: usize,
    pub multiplicity: Vec<Vec<u64>>,
}

impl Multigraph {
    pub fn params(&self) -> Result<Params> {
        Params::new(self.n, self.d)
    }

    /// Checks shape and that every row and column sums to `d`.
    pub fn check_regular(&self) -> Result<()> {
        let m = self.n / 2;
        let not_regular = |detail: String| Error::NotRegular { d: self.d as u64, detail };
        if !self.n.is_multiple_of(2) || self.multiplicity.len() != m || self.multiplicity.iter().any(|r| r.len() != m) {
            return Err(not_regular(format!("multiplicity matrix must be {m}x{m} for n = {}", self.n)));
        }
        for (i, row) in self.multiplicity.iter().enumerate() {
            let s: u64 = row.iter().sum();
            if s != self.d as u64 {
                return Err(not_regular(format!("left vertex {} has degree {s}", i + 1)));
            }
        }
        for j in 0..m {
            let s: u64 = self.multiplicity.iter().map(|r| r[j]).sum();
            if s != self.d as u64 {
                return Err(not_regular(format!("right vertex {} has degree {s}", j + 1)));
            }
        }
        Ok(())
    }

    /// Full `n x n` adjacency matrix, left side first.
    pub fn adjacency(&self) -> Matrix<Rational> {
        let m = self.n / 2;
        Matrix::from_fn(self.n, self.n, |i, j| match (i < m, j < m) {
            (true, false) => int(self.multiplicity[i][j - m] as i64),
            (false, true) => int(self.multiplicity[j][i - m] as i64),
            _ => int(0),
        })
    }
}

/// The multigraph a leaf describes.
pub fn leaf_graph(node: &NodeState, params: &Params) -> Result<Multigraph> {
    node.validate(params)?;
    if !node.is_leaf(params) {
        return Err(Error::NotALeaf);
    }
    let m = params.m();
    let mut multiplicity = vec![vec![0u64; m]; m];
    for perm in &node.complete {
        for (i, &j) in perm.iter().enumerate() {
            multiplicity[i][j] += 1;
        }
    }
    Ok(Multigraph { n: params.n, d: params.d, multiplicity })
}
