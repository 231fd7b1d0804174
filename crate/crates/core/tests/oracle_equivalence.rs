use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ramanujan::expectation::{add_random_matching, node_ctensor, node_polynomial};
use ramanujan::family::children;
use ramanujan::oracle::{brute_expected_charpoly, DEFAULT_CAP};
use ramanujan::{Multigraph, NodeState, Params, Rational, UniPoly};

type P = UniPoly<Rational>;

fn all_nodes(params: &Params) -> Vec<NodeState> {
    let mut out = vec![NodeState::root()];
    let mut i = 0;
    while i < out.len() {
        if !out[i].is_leaf(params) {
            let kids = children(&out[i], params).unwrap();
            out.extend(kids);
        }
        i += 1;
    }
    out
}

fn check_node(node: &NodeState, params: &Params) {
    let fast = node_polynomial(node, params).unwrap();
    assert_eq!(fast.degree(), Some(params.n - 2), "{node}");
    assert!(fast.is_monic() && fast.is_even(), "{node}: {fast}");
    let brute = brute_expected_charpoly(node, params, DEFAULT_CAP).unwrap();
    assert_eq!(&fast * &P::trivial_factor(params.d as u64), brute, "node {node}, n={} d={}", params.n, params.d);
}

#[test]
fn full_trees_up_to_six_vertices() {
    for n in [2, 4, 6] {
        for d in 1..=3 {
            let params = Params::new(n, d).unwrap();
            for node in all_nodes(&params) {
                check_node(&node, &params);
            }
        }
    }
}

#[test]
fn sampled_nodes_on_eight_vertices() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for d in [2, 3] {
        let params = Params::new(8, d).unwrap();
        let mut sample = std::collections::BTreeMap::new();
        for _ in 0..6 {
            let mut node = NodeState::root();
            while !node.is_leaf(&params) {
                let kids = children(&node, &params).unwrap();
                node = kids[rng.gen_range(0..kids.len())].clone();
                sample.insert(node.to_string(), node.clone());
            }
        }
        sample.insert(NodeState::root().to_string(), NodeState::root());
        for node in sample.values() {
            check_node(node, &params);
        }
    }
}

#[test]
fn tensor_entries_are_nonnegative() {
    let params = Params::new(6, 3).unwrap();
    let mut seen = 0;
    for node in all_nodes(&params) {
        if let Some(t) = node_ctensor(&node, &params).unwrap() {
            for k in 0..=t.side() {
                for p in 0..=t.block_dim() {
                    for q in 0..=t.block_dim() {
                        assert!(t.get(k, p, q) >= Rational::from_integer(0.into()));
                    }
                }
            }
            seen += 1;
        }
    }
    assert!(seen > 0);
}

/// Direct average of `det(xI - adj(G + M))` over all `m!` matchings `M`.
fn direct_average(graph: &Multigraph) -> P {
    let m = graph.n / 2;
    let perms: Vec<Vec<usize>> = (0..m).permutations(m).collect();
    let polys: Vec<P> = perms
        .iter()
        .map(|perm| {
            let mut g = graph.clone();
            g.d += 1;
            for (i, &j) in perm.iter().enumerate() {
                g.multiplicity[i][j] += 1;
            }
            g.adjacency().charpoly()
        })
        .collect();
    UniPoly::average(&polys)
}

#[test]
fn add_random_matching_on_fixed_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for m in 1..=4usize {
        for c in 1..=3usize {
            for _ in 0..3 {
                let mut mult = vec![vec![0u64; m]; m];
                for _ in 0..c {
                    let perm = rand::seq::index::sample(&mut rng, m, m).into_vec();
                    for (i, &j) in perm.iter().enumerate() {
                        mult[i][j] += 1;
                    }
                }
                let graph = Multigraph { n: 2 * m, d: c, multiplicity: mult };
                let point = graph.adjacency().charpoly();
                let params = Params::new(2 * m, c + 1).unwrap();
                let got = add_random_matching(&point, &params, c).unwrap();
                assert_eq!(got, direct_average(&graph), "graph {graph:?}");
            }
        }
    }
}
