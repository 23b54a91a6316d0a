//! Canonical labeling by individualization and refinement.
//!
//! A partition of the vertices is kept as an ordered list of cells, each an
//! unordered set stored as a bitmask. Refinement repeatedly splits cells by
//! the neighbor count into some target cell, ordering new subcells by count
//! descending; both the split keys and the cell order are determined by the
//! graph alone, so isomorphic graphs refine along corresponding partitions.
//! When refinement stalls the search individualizes every vertex of the
//! first non-singleton cell in turn (just one when the cell is a set of
//! pairwise twins, since any two choices are exchanged by an automorphism).
//! Each all-singleton leaf is a labeling; its upper-triangle adjacency bits,
//! packed in graph6 column order, are compared lexicographically and the
//! minimum over all leaves is the canonical form.
//!
//! Two leaves with equal bits expose an automorphism (one labeling composed
//! with the other's inverse). The search keeps such generators and skips a
//! branch candidate when a recorded automorphism fixing every vertex
//! individualized so far maps an already-explored candidate onto it; the
//! two subtrees are images of each other, so the minimum is unaffected.
//! Without this, unions of disjoint edges degenerate to factorial time.

use crate::graph::Graph;
use crate::graph6::encode_graph6;

/// Hard ceiling for canonical labeling. Everything this crate enumerates or
/// constructs for exact work sits far below it.
pub const MAX_CANON_VERTICES: usize = 64;

const MAXN: usize = MAX_CANON_VERTICES;
const KEY_WORDS: usize = MAXN * (MAXN - 1) / 2 / 64 + 1;

/// Canonical form of a graph: the graph6 encoding of its canonical labeling.
/// Two graphs are isomorphic exactly when their canonical forms are equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl std::fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// Computes the canonical form. Panics above [`MAX_CANON_VERTICES`]; exact
/// work at that scale is out of scope for this crate.
pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let search = Search::run(g);
    let mut inverse = vec![0usize; g.vertex_count()];
    for (pos, &orig) in search.labeling[..g.vertex_count()].iter().enumerate() {
        inverse[orig as usize] = pos;
    }
    CanonicalForm(encode_graph6(&g.permuted(&inverse)))
}

/// Compact canonical key for enumeration hot paths: the vertex count plus
/// the canonical upper-triangle bits. Restricted to 32 vertices so the bits
/// fit a fixed array; equality matches [`canonical_form`] equality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct CanonKey {
    n: u8,
    words: [u64; 8],
}

impl CanonKey {
    /// Position of the lexicographically last edge of the canonical form,
    /// as canonical labels (i, j) with i < j. Requires at least one edge.
    pub(crate) fn last_edge(&self) -> (usize, usize) {
        for w in (0..8).rev() {
            if self.words[w] != 0 {
                let k = w * 64 + 63 - self.words[w].trailing_zeros() as usize;
                let mut j = 1usize;
                while (j + 1) * j / 2 <= k {
                    j += 1;
                }
                return (k - j * (j - 1) / 2, j);
            }
        }
        panic!("last_edge on an edgeless canonical key");
    }

    /// graph6 string of the canonical form, straight from the key bits.
    pub(crate) fn to_graph6(self) -> String {
        let n = usize::from(self.n);
        let mut out = String::new();
        debug_assert!(n <= 62);
        out.push((self.n + 63) as char);
        let nbits = n * (n - 1) / 2;
        for c in 0..nbits.div_ceil(6) {
            let mut group = 0u8;
            for b in 0..6 {
                let k = c * 6 + b;
                let bit = if k < nbits {
                    self.words[k / 64] >> (63 - k % 64) & 1
                } else {
                    0
                };
                group = group << 1 | bit as u8;
            }
            out.push((group + 63) as char);
        }
        out
    }
}

/// Canonical key plus the labeling that realizes it: `labeling[p]` is the
/// original vertex placed at canonical position `p`.
pub(crate) fn canon_key_with_labeling(g: &Graph) -> (CanonKey, [u8; 32]) {
    let n = g.vertex_count();
    assert!(n <= 32, "canonical keys are limited to 32 vertices");
    let search = Search::run(g);
    let mut words = [0u64; 8];
    words.copy_from_slice(&search.best[..8]);
    let mut labeling = [0u8; 32];
    labeling[..n].copy_from_slice(&search.labeling[..n]);
    (CanonKey { n: n as u8, words }, labeling)
}

pub(crate) fn canon_key(g: &Graph) -> CanonKey {
    canon_key_with_labeling(g).0
}

/// Ordered partition: `cells[..ncells]` are disjoint nonempty vertex masks.
#[derive(Clone, Copy)]
struct Partition {
    cells: [u64; MAXN],
    ncells: usize,
}

/// Cap on stored automorphism generators. Pruning with a partial group is
/// still sound; it merely explores more.
const GEN_CAP: usize = 64;

struct Search {
    rows: [u64; MAXN],
    n: usize,
    best: [u64; KEY_WORDS],
    labeling: [u8; MAXN],
    have_best: bool,
    gens: Vec<[u8; MAXN]>,
    path: [u8; MAXN],
    depth: usize,
}

impl Search {
    fn run(g: &Graph) -> Search {
        let n = g.vertex_count();
        assert!(
            n <= MAXN,
            "canonical labeling supports at most {MAXN} vertices, got {n}"
        );
        let mut rows = [0u64; MAXN];
        for (v, row) in rows.iter_mut().enumerate().take(n) {
            *row = g.row64(v);
        }
        let mut search = Search {
            rows,
            n,
            best: [0; KEY_WORDS],
            labeling: [0; MAXN],
            have_best: false,
            gens: Vec::new(),
            path: [0; MAXN],
            depth: 0,
        };
        let mut part = Partition {
            cells: [0; MAXN],
            ncells: usize::from(n > 0),
        };
        if n > 0 {
            part.cells[0] = mask_below(n);
        }
        search.descend(part);
        debug_assert!(search.have_best || n == 0);
        search
    }

    fn descend(&mut self, mut part: Partition) {
        self.refine(&mut part);
        let Some(cell_idx) = (0..part.ncells).find(|&c| part.cells[c].count_ones() > 1) else {
            self.visit_leaf(&part);
            return;
        };
        let cell = part.cells[cell_idx];
        let candidates = if self.all_twins(cell) {
            cell & cell.wrapping_neg()
        } else {
            cell
        };
        let mut explored = 0u64;
        let mut rest = candidates;
        while rest != 0 {
            let vbit = rest & rest.wrapping_neg();
            rest ^= vbit;
            if explored != 0 && self.orbit_of(explored) & vbit != 0 {
                continue;
            }
            let mut child = part;
            child.cells.copy_within(cell_idx..part.ncells, cell_idx + 1);
            child.cells[cell_idx] = vbit;
            child.cells[cell_idx + 1] = cell ^ vbit;
            child.ncells = part.ncells + 1;
            self.path[self.depth] = vbit.trailing_zeros() as u8;
            self.depth += 1;
            self.descend(child);
            self.depth -= 1;
            explored |= vbit;
        }
    }

    /// Closure of `mask` under the recorded generators that fix the current
    /// individualization path pointwise.
    fn orbit_of(&self, mask: u64) -> u64 {
        let mut orbit = mask;
        loop {
            let mut grown = orbit;
            'gens: for gen in &self.gens {
                for &p in &self.path[..self.depth] {
                    if gen[usize::from(p)] != p {
                        continue 'gens;
                    }
                }
                let mut rest = orbit;
                while rest != 0 {
                    let vbit = rest & rest.wrapping_neg();
                    rest ^= vbit;
                    grown |= 1 << gen[vbit.trailing_zeros() as usize];
                }
            }
            if grown == orbit {
                return orbit;
            }
            orbit = grown;
        }
    }

    /// Splits cells by neighbor counts into each target cell until stable.
    /// Restarts the scan after every split; the scan order is a function of
    /// the evolving partition only.
    fn refine(&self, part: &mut Partition) {
        'stable: loop {
            for t in 0..part.ncells {
                let target = part.cells[t];
                for c in 0..part.ncells {
                    let cell = part.cells[c];
                    if cell.count_ones() <= 1 {
                        continue;
                    }
                    if self.split_cell(part, c, cell, target) {
                        continue 'stable;
                    }
                }
            }
            return;
        }
    }

    /// Splits `cell` (at index `c`) by neighbor count into `target`,
    /// subcells ordered by count descending. Returns false if uniform.
    fn split_cell(&self, part: &mut Partition, c: usize, cell: u64, target: u64) -> bool {
        let mut by_count = [0u64; MAXN + 1];
        let mut seen = 0u64; // bitmask over counts, counts <= 64
        let mut rest = cell;
        while rest != 0 {
            let vbit = rest & rest.wrapping_neg();
            rest ^= vbit;
            let v = vbit.trailing_zeros() as usize;
            let cnt = (self.rows[v] & target).count_ones() as usize;
            by_count[cnt] |= vbit;
            seen |= 1 << cnt;
        }
        let groups = seen.count_ones() as usize;
        if groups == 1 {
            return false;
        }
        part.cells.copy_within(c + 1..part.ncells, c + groups);
        part.ncells += groups - 1;
        let mut at = c;
        let mut counts = seen;
        while counts != 0 {
            let top = 63 - counts.leading_zeros() as usize;
            counts ^= 1 << top;
            part.cells[at] = by_count[top];
            at += 1;
        }
        true
    }

    /// True when every pair in the cell is a twin pair, i.e. swapping the
    /// two vertices is an automorphism.
    fn all_twins(&self, cell: u64) -> bool {
        let mut rest = cell;
        while rest != 0 {
            let ubit = rest & rest.wrapping_neg();
            rest ^= ubit;
            let u = ubit.trailing_zeros() as usize;
            let mut others = rest;
            while others != 0 {
                let vbit = others & others.wrapping_neg();
                others ^= vbit;
                let v = vbit.trailing_zeros() as usize;
                let outside = !(ubit | vbit);
                if self.rows[u] & outside != self.rows[v] & outside {
                    return false;
                }
            }
        }
        true
    }

    fn visit_leaf(&mut self, part: &Partition) {
        let mut order = [0u8; MAXN];
        for (p, cell) in part.cells[..part.ncells].iter().enumerate() {
            debug_assert_eq!(cell.count_ones(), 1);
            order[p] = cell.trailing_zeros() as u8;
        }
        let mut words = [0u64; KEY_WORDS];
        let mut k = 0usize;
        for j in 1..self.n {
            let row = self.rows[usize::from(order[j])];
            for i in 0..j {
                words[k / 64] |= (row >> order[i] & 1) << (63 - k % 64);
                k += 1;
            }
        }
        if !self.have_best || words < self.best {
            self.best = words;
            self.labeling = order;
            self.have_best = true;
        } else if words == self.best && self.gens.len() < GEN_CAP {
            // Equal leaves: mapping the stored labeling onto this one is an
            // automorphism.
            let mut gen = [0u8; MAXN];
            for p in 0..self.n {
                gen[usize::from(self.labeling[p])] = order[p];
            }
            self.gens.push(gen);
        }
    }
}

fn mask_below(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges)
    }

    #[test]
    fn relabelings_share_a_form() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]);
        let reference = canonical_form(&g);
        let perm = [3, 5, 0, 2, 4, 1];
        assert_eq!(canonical_form(&g.permuted(&perm)), reference);
    }

    #[test]
    fn distinguishes_same_degree_sequence() {
        // C6 and two triangles: both 2-regular on 6 vertices.
        let c6 = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        let twin_triangles =
            Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        assert_ne!(canonical_form(&c6), canonical_form(&twin_triangles));
    }

    #[test]
    fn form_decodes_to_an_isomorphic_graph() {
        let g = path(7);
        let form = canonical_form(&g);
        let h = crate::graph6::decode_graph6(form.as_str()).unwrap();
        assert_eq!(canonical_form(&h), form);
        assert_eq!(h.edge_count(), g.edge_count());
    }

    #[test]
    fn key_matches_form() {
        let g = Graph::from_edges(5, &[(0, 2), (2, 4), (4, 1), (1, 3)]);
        let (key, labeling) = canon_key_with_labeling(&g);
        assert_eq!(key.to_graph6(), canonical_form(&g).as_str());
        // The labeling realizes the key: relabeling by its inverse and
        // encoding must reproduce the same string.
        let mut inverse = vec![0usize; 5];
        for (pos, &orig) in labeling[..5].iter().enumerate() {
            inverse[orig as usize] = pos;
        }
        assert_eq!(encode_graph6(&g.permuted(&inverse)), key.to_graph6());
    }

    #[test]
    fn last_edge_is_an_edge_of_the_labeling() {
        let g = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (3, 4), (2, 5)]);
        let (key, labeling) = canon_key_with_labeling(&g);
        let (i, j) = key.last_edge();
        assert!(i < j && j < 6);
        let (u, v) = (usize::from(labeling[i]), usize::from(labeling[j]));
        assert!(g.has_edge(u, v));
    }

    #[test]
    fn empty_and_tiny_graphs() {
        assert_eq!(canonical_form(&Graph::new(0)).as_str(), "?");
        assert_eq!(canonical_form(&Graph::new(1)).as_str(), "@");
        let k2 = Graph::from_edges(2, &[(0, 1)]);
        assert_eq!(canonical_form(&k2).as_str(), "A_");
    }
}
