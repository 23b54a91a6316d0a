//! Simple undirected graphs with constant-time adjacency queries, plus the
//! degree-based invariants the rest of the crate is built on.
//!
//! Vertices are labeled `0..vertex_count` contiguously. Isolated vertices are
//! legal and preserved by every operation; the invariants ignore them by
//! definition. Adjacency is a bitset per vertex, so edge membership is O(1)
//! and neighborhood intersections are word-parallel.

/// Simple undirected graph. No self-loops, no multi-edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    degrees: Vec<u32>,
    edges: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            rows: vec![0; n * words],
            degrees: vec![0; n],
            edges: 0,
        }
    }

    /// Graph on `n` vertices with the given edge list. Panics on self-loops,
    /// duplicate edges, or out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v] as usize
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Adds the edge `uv`. Panics if it already exists or is a self-loop.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loops are not allowed");
        assert!(u < self.n && v < self.n, "vertex out of range");
        assert!(!self.has_edge(u, v), "edge ({u}, {v}) already present");
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
        self.degrees[u] += 1;
        self.degrees[v] += 1;
        self.edges += 1;
    }

    /// Removes the edge `uv`. Panics if absent.
    pub fn remove_edge(&mut self, u: usize, v: usize) {
        assert!(self.has_edge(u, v), "edge ({u}, {v}) not present");
        self.rows[u * self.words + v / 64] &= !(1 << (v % 64));
        self.rows[v * self.words + u / 64] &= !(1 << (u % 64));
        self.degrees[u] -= 1;
        self.degrees[v] -= 1;
        self.edges -= 1;
    }

    /// Appends an isolated vertex and returns its label.
    pub fn add_vertex(&mut self) -> usize {
        let v = self.n;
        self.n += 1;
        if self.n.div_ceil(64).max(1) > self.words {
            let words = self.n.div_ceil(64);
            let mut rows = vec![0u64; self.n * words];
            for u in 0..v {
                rows[u * words..u * words + self.words]
                    .copy_from_slice(&self.rows[u * self.words..(u + 1) * self.words]);
            }
            self.rows = rows;
            self.words = words;
        } else {
            self.rows.extend(std::iter::repeat_n(0, self.words));
        }
        self.degrees.push(0);
        v
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let row = &self.rows[v * self.words..(v + 1) * self.words];
        row.iter().enumerate().flat_map(|(w, &bits)| {
            std::iter::successors((bits != 0).then_some(bits), |&b| {
                let rest = b & (b - 1);
                (rest != 0).then_some(rest)
            })
            .map(move |b| w * 64 + b.trailing_zeros() as usize)
        })
    }

    /// Edges as `(u, v)` with `u < v`, ascending lexicographically.
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edges);
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        self.degrees[v] == 0
    }

    /// Copy with all isolated vertices removed; surviving vertices keep their
    /// relative order.
    pub fn drop_isolated(&self) -> Graph {
        let mut map = vec![usize::MAX; self.n];
        let mut next = 0;
        for v in 0..self.n {
            if !self.is_isolated(v) {
                map[v] = next;
                next += 1;
            }
        }
        let mut g = Graph::new(next);
        for (u, v) in self.edge_list() {
            g.add_edge(map[u], map[v]);
        }
        g
    }

    /// Relabeled copy: vertex `v` becomes `perm[v]`. `perm` must be a
    /// permutation of `0..vertex_count`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::new(self.n);
        for (u, v) in self.edge_list() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// Number of common neighbors of `u` and `v` with label greater than `v`.
    fn common_neighbors_above(&self, u: usize, v: usize) -> u64 {
        let ru = &self.rows[u * self.words..(u + 1) * self.words];
        let rv = &self.rows[v * self.words..(v + 1) * self.words];
        let start = v / 64;
        let mut count = 0u64;
        for w in start..self.words {
            let mut bits = ru[w] & rv[w];
            if w == start {
                // Keep labels strictly greater than v; the shift can be 64
                // when v sits on the top bit of its word.
                bits &= u64::MAX.checked_shl(v as u32 % 64 + 1).unwrap_or(0);
            }
            count += u64::from(bits.count_ones());
        }
        count
    }

    /// DOT rendering, one edge per line; isolated vertices appear as bare
    /// node statements. Best-effort output for visualization.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph {\n");
        for v in 0..self.n {
            if self.is_isolated(v) {
                s.push_str(&format!("  {v};\n"));
            }
        }
        for (u, v) in self.edge_list() {
            s.push_str(&format!("  {u} -- {v};\n"));
        }
        s.push_str("}\n");
        s
    }

    /// Adjacency row of `v` as a single word. Callers guarantee
    /// `vertex_count <= 64`.
    pub(crate) fn row64(&self, v: usize) -> u64 {
        debug_assert!(self.n <= 64);
        self.rows[v * self.words]
    }
}

/// Weakly decreasing list of all vertex degrees of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSequence {
    degrees: Vec<u32>,
}

impl DegreeSequence {
    pub fn as_slice(&self) -> &[u32] {
        &self.degrees
    }
}

/// S(G): sum over edges of the smaller endpoint degree. 0 for edgeless graphs.
pub fn specialty(g: &Graph) -> u64 {
    let mut s = 0u64;
    for u in 0..g.vertex_count() {
        for v in g.neighbors(u) {
            if v > u {
                s += g.degree(u).min(g.degree(v)) as u64;
            }
        }
    }
    s
}

/// First Zagreb index M1: sum of squared degrees, equivalently the sum over
/// edges of the endpoint degree sum.
pub fn zagreb_first(g: &Graph) -> u64 {
    (0..g.vertex_count())
        .map(|v| (g.degree(v) as u64).pow(2))
        .sum()
}

/// Irregularity M3: sum over edges of the absolute endpoint degree difference.
pub fn zagreb_irregularity(g: &Graph) -> u64 {
    let mut s = 0u64;
    for u in 0..g.vertex_count() {
        for v in g.neighbors(u) {
            if v > u {
                s += g.degree(u).abs_diff(g.degree(v)) as u64;
            }
        }
    }
    s
}

/// Number of vertex triples inducing three mutual edges.
pub fn triangle_count(g: &Graph) -> u64 {
    let mut t = 0u64;
    for u in 0..g.vertex_count() {
        for v in g.neighbors(u) {
            if v > u {
                t += g.common_neighbors_above(u, v);
            }
        }
    }
    t
}

/// All vertex degrees, weakly decreasing.
pub fn degree_sequence(g: &Graph) -> DegreeSequence {
    let mut degrees: Vec<u32> = (0..g.vertex_count()).map(|v| g.degree(v) as u32).collect();
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    DegreeSequence { degrees }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    #[test]
    fn adjacency_roundtrip() {
        let mut g = Graph::new(70);
        g.add_edge(0, 69);
        g.add_edge(63, 64);
        assert!(g.has_edge(69, 0) && g.has_edge(64, 63));
        assert!(!g.has_edge(0, 64));
        g.remove_edge(0, 69);
        assert!(!g.has_edge(0, 69));
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.neighbors(63).collect::<Vec<_>>(), vec![64]);
    }

    #[test]
    fn add_vertex_grows_across_word_boundary() {
        let mut g = k(64);
        let v = g.add_vertex();
        assert_eq!(v, 64);
        g.add_edge(0, 64);
        assert!(g.has_edge(64, 0));
        assert_eq!(g.degree(0), 64);
        assert_eq!(g.edge_count(), 64 * 63 / 2 + 1);
    }

    #[test]
    fn invariants_on_k4() {
        let g = k(4);
        assert_eq!(specialty(&g), 18);
        assert_eq!(zagreb_first(&g), 36);
        assert_eq!(zagreb_irregularity(&g), 0);
        assert_eq!(triangle_count(&g), 4);
    }

    #[test]
    fn triangle_count_above_word_boundary() {
        let mut g = Graph::new(130);
        g.add_edge(10, 65);
        g.add_edge(65, 129);
        g.add_edge(10, 129);
        assert_eq!(triangle_count(&g), 1);
    }

    #[test]
    fn drop_isolated_keeps_order() {
        let mut g = Graph::new(5);
        g.add_edge(1, 3);
        g.add_edge(3, 4);
        let h = g.drop_isolated();
        assert_eq!(h.vertex_count(), 3);
        assert_eq!(h.edge_list(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn permuted_preserves_invariants() {
        let g = Graph::from_edges(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3)]);
        let h = g.permuted(&[4, 3, 2, 1, 0]);
        assert_eq!(specialty(&g), specialty(&h));
        assert_eq!(degree_sequence(&g), degree_sequence(&h));
    }
}
