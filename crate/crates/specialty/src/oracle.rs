//! Isomorph-free brute force over graph isomorphism classes, used to
//! re-verify the closed forms at desk scale, plus a seeded stochastic
//! search for planar lower bounds in the open range.
//!
//! Enumeration walks the canonical augmentation tree. A node is a class
//! representative; its children extend it by one edge (between existing
//! vertices, to one new vertex, or as a fresh disjoint edge) and a child is
//! kept only when deleting the lexicographically last edge of its canonical
//! form leads back to the parent's class. Each class therefore has exactly
//! one accepted parent, so each class is visited exactly once, and since
//! the tested families are closed under edge deletion the family filter
//! never disconnects the tree.

use std::collections::HashSet;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::canon::{canon_key, canon_key_with_labeling, CanonKey};
use crate::constructions;
use crate::formulas::{decompose_triangular, GraphFamily};
use crate::graph::{specialty, Graph};
use crate::planarity::{is_bipartite, is_forest, is_planar};
use crate::Error;

/// Largest vertex cap the enumerator accepts; canonical keys are fixed-size
/// up to here, and anything larger is unreachable in honest runtime anyway.
pub const MAX_ENUMERATION_VERTICES: u64 = 32;

/// Default refusal threshold on the estimated class count.
pub const DEFAULT_CEILING: u64 = 1_000_000;

/// Vertex-cap regime for enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CapMode {
    /// 2N vertices: every N-edge graph without isolated vertices fits, so
    /// the run assumes nothing.
    #[serde(rename = "independent")]
    Independent,
    /// n + 1 vertices, n from the triangular decomposition of N. Sound for
    /// the maximum over all graphs (a rewiring argument confines the
    /// optimum to that few vertices) but proves nothing for subfamilies,
    /// so those are refused.
    #[serde(rename = "lemma")]
    LemmaAssisted,
}

impl std::str::FromStr for CapMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "independent" => Ok(CapMode::Independent),
            "lemma" => Ok(CapMode::LemmaAssisted),
            other => Err(format!(
                "unknown cap mode {other:?}; expected independent or lemma"
            )),
        }
    }
}

#[derive(Debug, Clone)]
pub struct OracleOptions {
    /// Worker threads. 1 runs fully sequentially.
    pub jobs: usize,
    /// Refusal threshold on the estimated class count.
    pub ceiling: u64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            jobs: 1,
            ceiling: DEFAULT_CEILING,
        }
    }
}

/// Outcome of an exhaustive run.
#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub family: GraphFamily,
    #[serde(rename = "N")]
    pub n_edges: u64,
    pub cap_mode: CapMode,
    pub max_value: u64,
    /// Canonical graph6 of every class attaining the maximum, sorted.
    pub witnesses: Vec<String>,
    pub graphs_enumerated: u64,
    pub elapsed: Duration,
}

/// Membership predicate for a family, used as the enumeration filter.
pub fn family_admits(family: GraphFamily, g: &Graph) -> bool {
    match family {
        GraphFamily::All => true,
        GraphFamily::Bipartite => is_bipartite(g),
        GraphFamily::Forest => is_forest(g),
        GraphFamily::Planar => is_planar(g),
    }
}

fn sorted_degrees(g: &Graph) -> ([u32; 32], usize) {
    let n = g.vertex_count();
    let mut d = [0u32; 32];
    for (v, slot) in d.iter_mut().enumerate().take(n) {
        *slot = g.degree(v) as u32;
    }
    d[..n].sort_unstable();
    (d, n)
}

/// Child generator with per-parent scratch space.
struct Expander {
    family: GraphFamily,
    cap: usize,
    seen: HashSet<CanonKey>,
}

impl Expander {
    fn new(family: GraphFamily, cap: usize) -> Expander {
        Expander {
            family,
            cap,
            seen: HashSet::new(),
        }
    }

    /// Accepted children of `parent`, in deterministic order: edges between
    /// existing vertices first (lexicographic), then pendants on a new
    /// vertex (attachment point ascending), then a disjoint new edge.
    fn children(&mut self, parent: &Graph, parent_key: &CanonKey, out: &mut Vec<(Graph, CanonKey)>) {
        out.clear();
        self.seen.clear();
        let n = parent.vertex_count();
        let parent_profile = sorted_degrees(parent);
        let consider = |child: Graph, out: &mut Vec<(Graph, CanonKey)>, seen: &mut HashSet<CanonKey>| {
            if self.family != GraphFamily::All && !family_admits(self.family, &child) {
                return;
            }
            let (key, labeling) = canon_key_with_labeling(&child);
            if !seen.insert(key) {
                return;
            }
            let (ci, cj) = key.last_edge();
            let (a, b) = (usize::from(labeling[ci]), usize::from(labeling[cj]));
            let mut reduced = child.clone();
            reduced.remove_edge(a, b);
            let reduced = reduced.drop_isolated();
            // Cheap invariant filter before the second canonical labeling.
            if sorted_degrees(&reduced) != parent_profile {
                return;
            }
            if canon_key(&reduced) == *parent_key {
                out.push((child, key));
            }
        };
        for u in 0..n {
            for v in u + 1..n {
                if !parent.has_edge(u, v) {
                    let mut child = parent.clone();
                    child.add_edge(u, v);
                    consider(child, out, &mut self.seen);
                }
            }
        }
        if n + 1 <= self.cap {
            for u in 0..n {
                let mut child = parent.clone();
                let w = child.add_vertex();
                child.add_edge(u, w);
                consider(child, out, &mut self.seen);
            }
        }
        if n + 2 <= self.cap {
            let mut child = parent.clone();
            let w1 = child.add_vertex();
            let w2 = child.add_vertex();
            child.add_edge(w1, w2);
            consider(child, out, &mut self.seen);
        }
    }
}

fn effective_cap(n_edges: u64, cap_mode: CapMode) -> Result<u64, Error> {
    match cap_mode {
        CapMode::Independent => Ok(2 * n_edges),
        CapMode::LemmaAssisted => Ok(decompose_triangular(n_edges)?.n + 1),
    }
}

/// Isomorphism classes on exactly `v` vertices (isolated allowed) counted
/// by edge count, via Burnside's lemma over the pair action of S_v. Exact
/// integer values in f64 for the sizes this crate queries.
fn classes_by_edges(v: usize, max_edges: usize) -> Vec<f64> {
    let mut total = vec![0.0f64; max_edges + 1];
    let mut parts: Vec<usize> = Vec::new();
    fn rec(remaining: usize, largest: usize, parts: &mut Vec<usize>, total: &mut Vec<f64>) {
        if remaining == 0 {
            accumulate(parts, total);
            return;
        }
        for p in (1..=remaining.min(largest)).rev() {
            parts.push(p);
            rec(remaining - p, p, parts, total);
            parts.pop();
        }
    }
    fn accumulate(parts: &[usize], total: &mut Vec<f64>) {
        let v: usize = parts.iter().sum();
        // Permutations with this cycle type: v! / prod(len^mult * mult!).
        let mut denom = 1u128;
        let mut run = 0usize;
        for (i, &p) in parts.iter().enumerate() {
            denom *= p as u128;
            run += 1;
            if i + 1 == parts.len() || parts[i + 1] != p {
                for f in 1..=run as u128 {
                    denom *= f;
                }
                run = 0;
            }
        }
        let mut perms = 1u128;
        for f in 1..=v as u128 {
            perms *= f;
        }
        let perms = (perms / denom) as f64;
        // Cycle lengths of the induced action on unordered pairs.
        let mut poly = vec![0.0f64; total.len()];
        poly[0] = 1.0;
        let mul_cycle = |len: usize, poly: &mut Vec<f64>| {
            for e in (len..poly.len()).rev() {
                poly[e] += poly[e - len];
            }
        };
        for (i, &a) in parts.iter().enumerate() {
            if a % 2 == 1 {
                for _ in 0..(a - 1) / 2 {
                    mul_cycle(a, &mut poly);
                }
            } else {
                mul_cycle(a / 2, &mut poly);
                for _ in 0..a / 2 - 1 {
                    mul_cycle(a, &mut poly);
                }
            }
            for &b in &parts[i + 1..] {
                let g = gcd(a, b);
                for _ in 0..g {
                    mul_cycle(a / g * b, &mut poly);
                }
            }
        }
        for (t, p) in total.iter_mut().zip(&poly) {
            *t += perms * p;
        }
    }
    if v == 0 {
        total[0] = 1.0;
        return total;
    }
    rec(v, v, &mut parts, &mut total);
    let mut fact = 1.0f64;
    for f in 1..=v {
        fact *= f as f64;
    }
    for t in &mut total {
        *t /= fact;
    }
    total
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Estimated number of classes an enumeration at this edge count and cap
/// will visit. Exact for the unrestricted family when the relevant vertex
/// count is at most 18; a plain upper-bound heuristic beyond that.
pub fn estimated_classes(n_edges: u64, cap: u64) -> f64 {
    let mut v = cap.min(2 * n_edges);
    let mut slack = 1.0;
    if v > 18 {
        v = 18;
        slack = 4.0;
    }
    let v = v as usize;
    let max_e = (n_edges as u128).min(v as u128 * (v as u128 - 1) / 2) as usize;
    slack * classes_by_edges(v, max_e).iter().sum::<f64>()
}

fn validate_cap(n_edges: u64, vertex_cap: u64, opts: &OracleOptions) -> Result<usize, Error> {
    if n_edges == 0 {
        return Err(Error::ZeroEdges);
    }
    assert!(vertex_cap >= 2, "vertex cap must be at least 2");
    let estimate = estimated_classes(n_edges, vertex_cap);
    if estimate > opts.ceiling as f64 {
        return Err(Error::EnumerationTooLarge {
            estimate: estimate.min(u64::MAX as f64) as u64,
            ceiling: opts.ceiling,
        });
    }
    if vertex_cap > MAX_ENUMERATION_VERTICES {
        return Err(Error::VertexCapTooLarge {
            cap: vertex_cap as usize,
        });
    }
    Ok(vertex_cap as usize)
}

/// Sequential iterator over one representative per isomorphism class of
/// graphs with exactly `n_edges` edges, no isolated vertices, at most the
/// cap's vertex count, inside the family. Deterministic order.
pub struct GraphEnumeration {
    stack: Vec<(Graph, CanonKey)>,
    target: usize,
    expander: Expander,
    scratch: Vec<(Graph, CanonKey)>,
}

impl Iterator for GraphEnumeration {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        while let Some((g, key)) = self.stack.pop() {
            if g.edge_count() == self.target {
                return Some(g);
            }
            self.expander.children(&g, &key, &mut self.scratch);
            while let Some(child) = self.scratch.pop() {
                self.stack.push(child);
            }
        }
        None
    }
}

/// Stream of graphs with `n_edges` edges, no isolated vertices, at most
/// `vertex_cap` vertices, in the family: exactly one per isomorphism
/// class. Refuses runs whose estimated class count exceeds the ceiling.
pub fn enumerate_graphs(
    n_edges: u64,
    family: GraphFamily,
    vertex_cap: u64,
    opts: &OracleOptions,
) -> Result<GraphEnumeration, Error> {
    let cap = validate_cap(n_edges, vertex_cap, opts)?;
    let root = Graph::new(0);
    let root_key = canon_key(&root);
    Ok(GraphEnumeration {
        stack: vec![(root, root_key)],
        target: n_edges as usize,
        expander: Expander::new(family, cap),
        scratch: Vec::new(),
    })
}

struct Collected {
    max_value: u64,
    witness_keys: Vec<CanonKey>,
    count: u64,
}

impl Collected {
    fn new() -> Collected {
        Collected {
            max_value: 0,
            witness_keys: Vec::new(),
            count: 0,
        }
    }

    fn leaf(&mut self, g: &Graph, key: CanonKey) {
        self.count += 1;
        let s = specialty(g);
        if self.count == 1 || s > self.max_value {
            self.max_value = s;
            self.witness_keys.clear();
        }
        if s == self.max_value {
            self.witness_keys.push(key);
        }
    }

    fn absorb(&mut self, other: Collected) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 || other.max_value > self.max_value {
            self.max_value = other.max_value;
            self.witness_keys.clear();
        }
        if other.max_value == self.max_value {
            self.witness_keys.extend(other.witness_keys);
        }
        self.count += other.count;
    }
}

fn collect_subtree(
    root: Graph,
    root_key: CanonKey,
    target: usize,
    family: GraphFamily,
    cap: usize,
) -> Collected {
    let mut acc = Collected::new();
    let mut expander = Expander::new(family, cap);
    let mut stack = vec![(root, root_key)];
    let mut scratch = Vec::new();
    while let Some((g, key)) = stack.pop() {
        if g.edge_count() == target {
            acc.leaf(&g, key);
            continue;
        }
        expander.children(&g, &key, &mut scratch);
        stack.append(&mut scratch);
    }
    acc
}

/// Exhaustive maximum of the specialty over the family at `n_edges` edges,
/// by isomorph-free enumeration. Refuses runs whose estimated size exceeds
/// the ceiling. Results are independent of `jobs`.
pub fn oracle_max(
    n_edges: u64,
    family: GraphFamily,
    cap_mode: CapMode,
    opts: &OracleOptions,
) -> Result<OracleReport, Error> {
    // The lemma cap is proved for the unrestricted maximum only; accepting
    // it for a subfamily could silently miss that family's true optimum.
    if cap_mode == CapMode::LemmaAssisted && family != GraphFamily::All {
        return Err(Error::LemmaCapRestrictedFamily);
    }
    let cap = validate_cap(n_edges, effective_cap(n_edges, cap_mode)?, opts)?;
    let start = Instant::now();
    let target = n_edges as usize;
    let jobs = opts.jobs.max(1);

    // Breadth-first start: grow whole levels (level = edge count) until
    // there is enough width to split across workers. All frontier nodes
    // stay at one depth, so no class is reachable from two of them.
    let root = Graph::new(0);
    let root_key = canon_key(&root);
    let mut frontier = vec![(root, root_key)];
    let mut level = 0usize;
    let mut expander = Expander::new(family, cap);
    while level < target && frontier.len() < jobs * 8 {
        let mut next = Vec::new();
        let mut kids = Vec::new();
        for (g, key) in &frontier {
            expander.children(g, key, &mut kids);
            next.append(&mut kids);
        }
        frontier = next;
        level += 1;
        if frontier.is_empty() {
            break;
        }
    }

    let mut acc = Collected::new();
    if level == target {
        for (g, key) in frontier {
            acc.leaf(&g, key);
        }
    } else if jobs == 1 {
        for (g, key) in frontier {
            acc.absorb(collect_subtree(g, key, target, family, cap));
        }
    } else {
        let cursor = AtomicUsize::new(0);
        let results = Mutex::new(Vec::new());
        std::thread::scope(|scope| {
            for _ in 0..jobs {
                scope.spawn(|| {
                    let mut local = Collected::new();
                    loop {
                        let i = cursor.fetch_add(1, Ordering::Relaxed);
                        let Some((g, key)) = frontier.get(i) else {
                            break;
                        };
                        local.absorb(collect_subtree(g.clone(), *key, target, family, cap));
                    }
                    results.lock().unwrap().push(local);
                });
            }
        });
        for local in results.into_inner().unwrap() {
            acc.absorb(local);
        }
    }

    acc.witness_keys.sort_unstable();
    debug_assert!(acc.witness_keys.windows(2).all(|w| w[0] < w[1]));
    Ok(OracleReport {
        family,
        n_edges,
        cap_mode,
        max_value: acc.max_value,
        witnesses: acc.witness_keys.iter().map(|k| k.to_graph6()).collect(),
        graphs_enumerated: acc.count,
        elapsed: start.elapsed(),
    })
}

/// Seeded stochastic search for planar graphs with high specialty in the
/// open range 10..=32. Starts from the deterministic candidate pool, so
/// the result never falls below the published lower bound; the annealing
/// walk only ever improves on it. Returns the best graph and its value.
pub fn explore_planar(n_edges: u64, budget: u64, seed: u64) -> Result<(Graph, u64), Error> {
    if !(10..=32).contains(&n_edges) {
        return Err(Error::ExploreOutOfRange { n_edges });
    }
    let pool = constructions::planar_pool(n_edges)?;
    let (mut best, mut best_value) = (pool[0].clone(), specialty(&pool[0]));
    for g in &pool[1..] {
        let s = specialty(g);
        if s > best_value {
            best = g.clone();
            best_value = s;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = best.clone();
    let mut state_value = best_value;
    let t0 = 2.5f64;
    let t1 = 0.05f64;
    for it in 0..budget {
        if it > 0 && it % 2500 == 0 {
            state = pool[rng.random_range(0..pool.len())].clone();
            state_value = specialty(&state);
        }
        let temp = t0 * (t1 / t0).powf(it as f64 / budget as f64);
        let edges = state.edge_list();
        let (ru, rv) = edges[rng.random_range(0..edges.len())];
        let mut cand = state.clone();
        cand.remove_edge(ru, rv);
        let n = cand.vertex_count();
        let mut open: Vec<(usize, usize)> = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if !cand.has_edge(u, v) {
                    open.push((u, v));
                }
            }
        }
        let pick = rng.random_range(0..open.len() + n);
        if let Some(&(u, v)) = open.get(pick) {
            cand.add_edge(u, v);
        } else {
            let w = cand.add_vertex();
            cand.add_edge(pick - open.len(), w);
        }
        let cand = cand.drop_isolated();
        if !is_planar(&cand) {
            continue;
        }
        let cand_value = specialty(&cand);
        let accept = cand_value >= state_value || {
            let delta = cand_value as f64 - state_value as f64;
            rng.random::<f64>() < (delta / temp).exp()
        };
        if accept {
            state = cand;
            state_value = cand_value;
            if state_value > best_value {
                best = state.clone();
                best_value = state_value;
            }
        }
    }
    Ok((best, best_value))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts_match_the_literature() {
        // Classes on exactly v vertices: 1, 2, 4, 11, 34, 156, 1044.
        for (v, expected) in [(1, 1.0), (2, 2.0), (3, 4.0), (4, 11.0), (5, 34.0), (6, 156.0), (7, 1044.0)] {
            let max_e = v * (v - 1) / 2;
            let total: f64 = classes_by_edges(v, max_e).iter().sum();
            assert_eq!(total, expected, "v = {v}");
        }
        // By edge count on 5 vertices: 1 1 2 4 6 6 6 4 2 1 1.
        let by_e = classes_by_edges(5, 10);
        assert_eq!(
            by_e,
            [1.0, 1.0, 2.0, 4.0, 6.0, 6.0, 6.0, 4.0, 2.0, 1.0, 1.0]
        );
    }

    #[test]
    fn refusal_and_cap_errors() {
        let opts = OracleOptions::default();
        assert!(matches!(
            oracle_max(0, GraphFamily::All, CapMode::Independent, &opts),
            Err(Error::ZeroEdges)
        ));
        assert!(matches!(
            oracle_max(9, GraphFamily::Forest, CapMode::LemmaAssisted, &opts),
            Err(Error::LemmaCapRestrictedFamily)
        ));
        assert!(matches!(
            oracle_max(40, GraphFamily::All, CapMode::Independent, &opts),
            Err(Error::EnumerationTooLarge { .. })
        ));
        let tiny = OracleOptions {
            jobs: 1,
            ceiling: 10,
        };
        assert!(matches!(
            oracle_max(6, GraphFamily::All, CapMode::Independent, &tiny),
            Err(Error::EnumerationTooLarge { .. })
        ));
    }
}
