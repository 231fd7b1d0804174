//! Greedy descent through the matching tree and exact Ramanujan certificates.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{QuadNum, Rational, UniPoly};
use crate::error::{Error, Result};
use crate::expectation::node_polynomial;
use crate::family::{children, leaf_graph, Multigraph, NodeState, Params};

/// Whether every root of the real-rooted `p` is at most `sqrt(q)`.
///
/// Shifts to `p(x + sqrt(q))` over `Q[sqrt(q)]`; a real-rooted polynomial has
/// only nonpositive roots exactly when all its coefficients are nonnegative.
pub fn max_root_leq_sqrt(p: &UniPoly<Rational>, q: u64) -> bool {
    shifted_signs(p, q).1
}

fn shifted_signs(p: &UniPoly<Rational>, q: u64) -> (UniPoly<QuadNum>, bool) {
    assert!(!p.is_zero(), "root test on the zero polynomial");
    let shifted = p.shift_by_sqrt(q);
    let ok = shifted.coeffs().iter().all(|c| c.sign().is_nonnegative());
    (shifted, ok)
}

#[derive(Clone, Debug, Default)]
pub struct WalkOptions {
    /// Fix the first matching to the identity. Relabeling right vertices
    /// maps every first-matching child onto this one, so the leaf still
    /// certifies; the tree explored is smaller.
    pub canonical_first_matching: bool,
    /// Worker threads; 0 uses the rayon default.
    pub jobs: usize,
    /// Check at every expanded node that its polynomial is the exact average
    /// of its children's.
    pub verify_averaging: bool,
}

#[derive(Clone, Debug)]
pub struct ChildRecord {
    pub node: NodeState,
    pub poly: UniPoly<Rational>,
    pub passed: bool,
}

/// One expansion step of the walk.
#[derive(Clone, Debug)]
pub struct StageRecord {
    pub node: NodeState,
    pub poly: UniPoly<Rational>,
    pub children: Vec<ChildRecord>,
    pub chosen: usize,
    pub elapsed_ms: u128,
}

/// The descent from root to leaf. Stages are kept even if the walk fails, so
/// callers can dump what happened.
pub struct Walk {
    params: Params,
    options: WalkOptions,
    stages: Vec<StageRecord>,
}

impl Walk {
    pub fn new(params: Params, options: WalkOptions) -> Self {
        Walk { params, options, stages: Vec::new() }
    }

    pub fn stages(&self) -> &[StageRecord] {
        &self.stages
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    /// Descends to a leaf whose polynomial passes the `sqrt(4(d-1))` test.
    pub fn run(&mut self) -> Result<NodeState> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.options.jobs)
            .build()
            .expect("thread pool");
        pool.install(|| self.descend())
    }

    fn descend(&mut self) -> Result<NodeState> {
        let params = self.params;
        let q = params.bound_q();
        let mut current = NodeState::root();
        let mut current_poly = node_polynomial(&current, &params)?;
        if !max_root_leq_sqrt(&current_poly, q) {
            return Err(Error::RootExceedsBound { q });
        }
        while !current.is_leaf(&params) {
            let start = std::time::Instant::now();
            let mut kids = children(&current, &params)?;
            if self.options.canonical_first_matching && current.complete.is_empty() {
                let t = current.partial.as_ref().map_or(0, Vec::len);
                kids.retain(|k| match &k.partial {
                    Some(p) => p[t] == t,
                    None => k.complete[0][t] == t,
                });
            }
            let polys = kids
                .par_iter()
                .map(|k| node_polynomial(k, &params))
                .collect::<Result<Vec<_>>>()?;
            if self.options.verify_averaging {
                let average = UniPoly::average(&polys);
                if average != current_poly {
                    return Err(Error::AveragingViolated {
                        parent: current_poly.to_string(),
                        average: average.to_string(),
                    });
                }
            }
            let records: Vec<ChildRecord> = kids
                .into_iter()
                .zip(polys)
                .map(|(node, poly)| {
                    let passed = max_root_leq_sqrt(&poly, q);
                    ChildRecord { node, poly, passed }
                })
                .collect();
            let Some(chosen) = records.iter().position(|r| r.passed) else {
                let summary: Vec<String> = records.iter().map(|r| format!("{} -> {}", r.node, r.poly)).collect();
                return Err(Error::NoPassingChild { node: current, q, children: summary.join("; ") });
            };
            let next = records[chosen].node.clone();
            let next_poly = records[chosen].poly.clone();
            self.stages.push(StageRecord {
                node: current,
                poly: current_poly,
                children: records,
                chosen,
                elapsed_ms: start.elapsed().as_millis(),
            });
            current = next;
            current_poly = next_poly;
        }
        Ok(current)
    }
}

/// Walks the tree with default options and returns the leaf.
pub fn find_leaf(params: &Params) -> Result<NodeState> {
    Walk::new(*params, WalkOptions { jobs: 1, ..WalkOptions::default() }).run()
}

/// Exact evidence about a graph's nontrivial spectrum.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub graph: Multigraph,
    pub adjacency_charpoly: UniPoly<Rational>,
    /// `None` when `x^2 - d^2` does not divide the characteristic polynomial.
    pub nontrivial_poly: Option<UniPoly<Rational>>,
    pub bound_q: u64,
    /// Coefficients of `nontrivial_poly(x + sqrt(q))`.
    pub shifted: Vec<QuadNum>,
    pub passed: bool,
    pub reason: Option<String>,
}

#[derive(Serialize)]
struct CertificateJson<'a> {
    n: usize,
    d: usize,
    q: u64,
    adjacency_charpoly: &'a UniPoly<Rational>,
    nontrivial_charpoly: Vec<String>,
    shifted_coeffs: &'a [QuadNum],
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: &'a Option<String>,
}

impl Serialize for Certificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CertificateJson {
            n: self.graph.n,
            d: self.graph.d,
            q: self.bound_q,
            adjacency_charpoly: &self.adjacency_charpoly,
            nontrivial_charpoly: self.nontrivial_poly.as_ref().map(UniPoly::to_strings).unwrap_or_default(),
            shifted_coeffs: &self.shifted,
            passed: self.passed,
            reason: &self.reason,
        }
        .serialize(s)
    }
}

/// Certifies that every adjacency eigenvalue other than `+-d` lies in
/// `[-2 sqrt(d-1), 2 sqrt(d-1)]`.
///
/// Only the largest root is tested; the spectrum of a bipartite graph is
/// symmetric about zero, which bounds the smallest.
pub fn certify(graph: &Multigraph) -> Result<Certificate> {
    let params = graph.params()?;
    graph.check_regular()?;
    let q = params.bound_q();
    let adjacency_charpoly = graph.adjacency().charpoly();
    let (nontrivial_poly, shifted, passed, reason) =
        match adjacency_charpoly.div_exact(&UniPoly::trivial_factor(params.d as u64)) {
            Ok(nontrivial) => {
                let (shifted, ok) = shifted_signs(&nontrivial, q);
                let reason = (!ok).then(|| format!("a nontrivial eigenvalue exceeds 2*sqrt({})", params.d - 1));
                (Some(nontrivial), shifted.into_coeffs(), ok, reason)
            }
            Err(Error::NonzeroRemainder) => (
                None,
                Vec::new(),
                false,
                Some(format!("x^2 - {} does not divide the characteristic polynomial", params.d * params.d)),
            ),
            Err(e) => return Err(e),
        };
    Ok(Certificate { graph: graph.clone(), adjacency_charpoly, nontrivial_poly, bound_q: q, shifted, passed, reason })
}

/// Walks to a leaf and certifies its graph.
pub fn build_and_certify(params: &Params, options: WalkOptions) -> Result<(Walk, Certificate)> {
    let mut walk = Walk::new(*params, options);
    let leaf = walk.run()?;
    let graph = leaf_graph(&leaf, params)?;
    let cert = certify(&graph)?;
    Ok((walk, cert))
}
