//! Witness graphs achieving (or, in the open planar range, lower-bounding)
//! the family maxima, plus the degree-preserving rewiring step used to
//! normalize graphs without a universal vertex.

use crate::formulas::{self, AllCase, GraphFamily};
use crate::graph::{specialty, Graph};
use crate::planarity::is_planar;
use crate::Error;

fn complete(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v);
        }
    }
    g
}

/// Extremal witness over all graphs. Clique vertices come first, the apex
/// (when the case has one) is the last vertex.
pub fn build_all_extremal(n_edges: u64) -> Result<Graph, Error> {
    let d = formulas::decompose_triangular(n_edges)?;
    let (n, m) = (d.n as usize, d.m as usize);
    let g = match formulas::all_case(d.n, d.m) {
        AllCase::ApexOnClique => {
            // K_n plus an apex joined to m clique vertices.
            let mut g = complete(n);
            let apex = g.add_vertex();
            for u in 0..m {
                g.add_edge(u, apex);
            }
            g
        }
        AllCase::ApexOnNearClique => {
            // K_n minus a matching on the first 2m vertices, plus an apex
            // joined to exactly those 2m.
            let mut g = complete(n);
            for i in 0..m {
                g.remove_edge(2 * i, 2 * i + 1);
            }
            let apex = g.add_vertex();
            for u in 0..2 * m {
                g.add_edge(u, apex);
            }
            g
        }
        AllCase::NearComplete => {
            // K_{n+1} minus a matching of n - m edges.
            let mut g = complete(n + 1);
            for i in 0..n - m {
                g.remove_edge(2 * i, 2 * i + 1);
            }
            g
        }
    };
    debug_assert_eq!(g.edge_count() as u64, n_edges);
    Ok(g)
}

/// Extremal bipartite witness. Left side first, then right side, apex last.
pub fn build_bipartite_extremal(n_edges: u64) -> Result<Graph, Error> {
    let d = formulas::decompose_square(n_edges)?;
    let (n, m) = (d.n as usize, d.m as usize);
    let g = if m <= n {
        // K_{n,n} plus an apex joined to the first m left vertices.
        let mut g = Graph::new(2 * n + 1);
        for u in 0..n {
            for v in n..2 * n {
                g.add_edge(u, v);
            }
        }
        for u in 0..m {
            g.add_edge(u, 2 * n);
        }
        g
    } else {
        // K_{n+1,n+1} minus a matching of 2n + 1 - m straight-across pairs.
        let mut g = Graph::new(2 * n + 2);
        for u in 0..=n {
            for v in n + 1..2 * n + 2 {
                g.add_edge(u, v);
            }
        }
        for i in 0..2 * n + 1 - m {
            g.remove_edge(i, n + 1 + i);
        }
        g
    };
    debug_assert_eq!(g.edge_count() as u64, n_edges);
    Ok(g)
}

/// Extremal forest witness: a single edge at N = 1, a path otherwise.
pub fn build_forest_extremal(n_edges: u64) -> Result<Graph, Error> {
    if n_edges == 0 {
        return Err(Error::ZeroEdges);
    }
    let n = n_edges as usize;
    let edges: Vec<_> = (0..n).map(|i| (i, i + 1)).collect();
    Ok(Graph::from_edges(n + 1, &edges))
}

/// Triangle shelling: a triangle extended one vertex at a time, each new
/// vertex joined to the previous three, then a low-degree tail vertex to
/// absorb the edge-count residue mod 3. Defined for N >= 21.
pub fn build_planar_shelling(n_edges: u64) -> Result<Graph, Error> {
    if n_edges < 21 {
        return Err(Error::ShellingTooSmall { n_edges });
    }
    let k = (n_edges / 3 + 2) as usize;
    let mut g = Graph::new(k);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    g.add_edge(1, 2);
    for i in 3..k {
        g.add_edge(i - 3, i);
        g.add_edge(i - 2, i);
        g.add_edge(i - 1, i);
    }
    match n_edges % 3 {
        0 => {}
        1 => {
            let tail = g.add_vertex();
            g.add_edge(k - 1, tail);
        }
        _ => {
            let tail = g.add_vertex();
            g.add_edge(k - 2, tail);
            g.add_edge(k - 1, tail);
        }
    }
    assert_eq!(g.edge_count() as u64, n_edges);
    debug_assert!(is_planar(&g));
    Ok(g)
}

/// Best known planar witness. From 33 edges on (and at exactly 30) this is
/// provably extremal; for 21..=32 it is the best graph in the lower-bound
/// pool. Below 21 no shelling exists and this refuses.
pub fn build_planar_extremal(n_edges: u64) -> Result<Graph, Error> {
    if n_edges < 21 {
        return Err(Error::ShellingTooSmall { n_edges });
    }
    if n_edges <= 32 {
        Ok(planar_pool_best(n_edges)?.0)
    } else {
        build_planar_shelling(n_edges)
    }
}

/// Family dispatch for the witness builders.
pub fn build_extremal(family: GraphFamily, n_edges: u64) -> Result<Graph, Error> {
    match family {
        GraphFamily::All => build_all_extremal(n_edges),
        GraphFamily::Bipartite => build_bipartite_extremal(n_edges),
        GraphFamily::Forest => build_forest_extremal(n_edges),
        GraphFamily::Planar => build_planar_extremal(n_edges),
    }
}

/// The icosahedron: vertex 0 on top, upper ring 1..=5, lower ring 6..=10,
/// vertex 11 at the bottom. 5-regular, planar, 30 edges.
pub fn icosahedron() -> Graph {
    let mut g = Graph::new(12);
    for i in 1..=5 {
        g.add_edge(0, i);
    }
    for j in 0..5 {
        g.add_edge(1 + j, 1 + (j + 1) % 5);
        g.add_edge(6 + j, 6 + (j + 1) % 5);
        g.add_edge(1 + j, 6 + j);
        g.add_edge(1 + j, 6 + (j + 1) % 5);
        g.add_edge(6 + j, 11);
    }
    assert_eq!(g.edge_count(), 30);
    assert!((0..12).all(|v| g.degree(v) == 5));
    assert!(is_planar(&g));
    g
}

/// Icosahedron plus a degree-2 vertex on the edge (0, 1): 32 edges.
pub fn icosahedron_augmented() -> Graph {
    let mut g = icosahedron();
    let w = g.add_vertex();
    g.add_edge(0, w);
    g.add_edge(1, w);
    debug_assert!(is_planar(&g));
    g
}

/// The augmented icosahedron with the edge under the new vertex removed:
/// 31 edges.
pub fn icosahedron_split() -> Graph {
    let mut g = icosahedron_augmented();
    g.remove_edge(0, 1);
    g
}

/// Antiprism on two r-rings: 4-regular, planar, 4r edges.
pub fn antiprism(r: usize) -> Graph {
    assert!(r >= 3);
    let mut g = Graph::new(2 * r);
    for i in 0..r {
        g.add_edge(i, (i + 1) % r);
        g.add_edge(r + i, r + (i + 1) % r);
        g.add_edge(i, r + i);
        g.add_edge(i, r + (i + 1) % r);
    }
    assert_eq!(g.edge_count(), 4 * r);
    assert!((0..2 * r).all(|v| g.degree(v) == 4));
    debug_assert!(is_planar(&g));
    g
}

/// Removes edges one at a time, each time the edge whose removal keeps the
/// specialty highest (ties to the lexicographically least edge), then drops
/// any vertices that became isolated.
fn greedy_trim(mut g: Graph, target: usize) -> Graph {
    assert!(g.edge_count() >= target);
    while g.edge_count() > target {
        let mut best: Option<((usize, usize), u64)> = None;
        for (u, v) in g.edge_list() {
            g.remove_edge(u, v);
            let s = specialty(&g);
            g.add_edge(u, v);
            if best.is_none_or(|(_, bs)| s > bs) {
                best = Some(((u, v), s));
            }
        }
        let ((u, v), _) = best.unwrap();
        g.remove_edge(u, v);
    }
    g.drop_isolated()
}

/// Candidate pool behind the planar lower bounds in the open range
/// 10..=32: the shelling when it exists, greedy prunings of the
/// icosahedron and of antiprisms, and the two icosahedron variants at 31
/// and 32 edges. Deterministic order and contents.
pub fn planar_pool(n_edges: u64) -> Result<Vec<Graph>, Error> {
    if !(10..=32).contains(&n_edges) {
        return Err(Error::PlanarPoolOutOfRange { n_edges });
    }
    let target = n_edges as usize;
    let mut pool = Vec::new();
    if n_edges >= 21 {
        pool.push(build_planar_shelling(n_edges)?);
    }
    if n_edges <= 30 {
        pool.push(greedy_trim(icosahedron(), target));
    }
    if n_edges == 31 {
        pool.push(icosahedron_split());
    }
    if n_edges == 32 {
        pool.push(icosahedron_augmented());
    }
    for r in 3..=8 {
        if 4 * r >= target && 4 * r - target <= 4 {
            pool.push(greedy_trim(antiprism(r), target));
        }
    }
    for g in &pool {
        assert_eq!(g.edge_count(), target);
        assert!(is_planar(g));
    }
    Ok(pool)
}

/// Best pool entry and its specialty (first graph attaining the maximum).
pub fn planar_pool_best(n_edges: u64) -> Result<(Graph, u64), Error> {
    let pool = planar_pool(n_edges)?;
    let best = pool
        .into_iter()
        .map(|g| {
            let s = specialty(&g);
            (g, s)
        })
        .max_by_key(|&(_, s)| s)
        .expect("pool is never empty in range");
    Ok(best)
}

/// Degree-preserving rewiring for graphs whose maximum degree is exactly
/// two less than the vertex count: after it, the unique non-neighbor of
/// the lowest-index maximum-degree vertex has minimum degree. The swap
/// never decreases the specialty.
pub fn hh_rewire(g: &Graph) -> Result<Graph, Error> {
    let k = g.vertex_count();
    let max_degree = (0..k).map(|v| g.degree(v) as usize).max().unwrap_or(0);
    if k < 2 || max_degree != k - 2 {
        return Err(Error::RewirePrecondition {
            max_degree,
            vertices: k,
        });
    }
    let v1 = (0..k).find(|&v| g.degree(v) as usize == k - 2).unwrap();
    let vj = (0..k)
        .find(|&v| v != v1 && !g.has_edge(v1, v))
        .expect("a degree k-2 vertex misses exactly one other vertex");
    let min_degree = (0..k).map(|v| g.degree(v)).min().unwrap();
    if g.degree(vj) == min_degree {
        return Ok(g.clone());
    }
    let vk = (0..k).find(|&v| g.degree(v) == min_degree).unwrap();
    let vl = (0..k)
        .find(|&v| v != vk && g.has_edge(vj, v) && !g.has_edge(vk, v))
        .expect("deg vj exceeds deg vk, so vj has a neighbor avoiding vk");
    let mut out = g.clone();
    out.remove_edge(v1, vk);
    out.remove_edge(vl, vj);
    out.add_edge(v1, vj);
    out.add_edge(vl, vk);
    Ok(out)
}
