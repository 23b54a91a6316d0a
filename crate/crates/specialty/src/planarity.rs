//! Planarity, bipartiteness, and acyclicity tests.

use crate::graph::Graph;
use petgraph::graph::UnGraph;

/// Planarity test. An edge-count bound rejects dense graphs outright;
/// everything on at most four vertices embeds trivially; the rest goes to
/// the left-right planarity algorithm.
pub fn is_planar(g: &Graph) -> bool {
    let n = g.vertex_count();
    let e = g.edge_count();
    if n >= 3 && e > 3 * n - 6 {
        return false;
    }
    if n <= 4 {
        return true;
    }
    let mut pg = UnGraph::<(), ()>::with_capacity(n, e);
    let nodes: Vec<_> = (0..n).map(|_| pg.add_node(())).collect();
    for (u, v) in g.edge_list() {
        pg.add_edge(nodes[u], nodes[v], ());
    }
    rustworkx_core::planar::is_planar(&pg)
}

/// Proper 2-coloring by BFS, one component at a time, or None when some
/// cycle is odd. Color of the lowest vertex in each component is false.
pub fn two_coloring(g: &Graph) -> Option<Vec<bool>> {
    let n = g.vertex_count();
    let mut color = vec![None; n];
    let mut queue = std::collections::VecDeque::new();
    for start in 0..n {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(false);
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].unwrap();
            for v in g.neighbors(u) {
                match color[v] {
                    None => {
                        color[v] = Some(!cu);
                        queue.push_back(v);
                    }
                    Some(cv) if cv == cu => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(color.into_iter().map(Option::unwrap).collect())
}

pub fn is_bipartite(g: &Graph) -> bool {
    two_coloring(g).is_some()
}

/// A graph is a forest exactly when every component is a tree, i.e. the
/// edge count equals the vertex count minus the component count.
pub fn is_forest(g: &Graph) -> bool {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut components = 0usize;
    let mut stack = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        components += 1;
        seen[start] = true;
        stack.push(start);
        while let Some(u) = stack.pop() {
            for v in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
    }
    g.edge_count() + components == n
}
