//! Helpers shared by the integration suites. Each suite compiles this
//! module separately, so not every helper is live in every suite.
#![allow(dead_code)]

use rand::RngExt;
use specialty::Graph;

/// Graph on `n` labeled vertices from one bit per vertex pair. Pairs are
/// ordered (0,1),(0,2),(1,2),(0,3),...: column by the larger endpoint.
pub fn labeled_graph(n: usize, mask: u64) -> Graph {
    let mut g = Graph::new(n);
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if mask >> k & 1 == 1 {
                g.add_edge(u, v);
            }
            k += 1;
        }
    }
    g
}

pub fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Calls `f` with every permutation of 0..n, in place.
pub fn for_each_permutation(n: usize, f: &mut impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..n).collect();
    heap_recurse(n, &mut perm, f);
}

fn heap_recurse(k: usize, perm: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if k <= 1 {
        f(perm);
        return;
    }
    for i in 0..k {
        heap_recurse(k - 1, perm, f);
        if k % 2 == 0 {
            perm.swap(i, k - 1);
        } else {
            perm.swap(0, k - 1);
        }
    }
}

/// Graph on `n` vertices with each pair joined independently with
/// probability `p`.
pub fn random_graph(rng: &mut impl RngExt, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    for v in 1..n {
        for u in 0..v {
            if rng.random::<f64>() < p {
                g.add_edge(u, v);
            }
        }
    }
    g
}
