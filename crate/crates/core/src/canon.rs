//! Canonical labeling by partition refinement and individualization.
//!
//! The search tree is the usual one: refine the ordered vertex partition to
//! an equitable one, individualize each vertex of the first non-singleton
//! cell, recurse. Every leaf is a discrete partition, i.e. a labeling, and
//! the canonical labeling is the leaf whose relabeled graph has the
//! smallest graph6 bit string among the leaves (not among all `n!`
//! labelings, so it need not be the global minimum). Automorphisms discovered
//! when two leaves produce the same graph are used to skip equivalent
//! children (orbit pruning) and to abandon subtrees that are images of
//! already explored ones.

use std::collections::VecDeque;

use crate::graph::{Bits, Graph};
use crate::graph6;

/// A graph in canonical labeling together with its graph6 string.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalGraph {
    pub g6: String,
    pub graph: Graph,
}

impl PartialOrd for CanonicalGraph {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalGraph {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.g6.cmp(&other.g6)
    }
}

/// Result of a canonical-labeling search.
#[derive(Clone, Debug)]
pub struct Labeling {
    /// `lab[k]` is the original vertex placed at canonical position `k`.
    pub lab: Vec<usize>,
    /// Adjacency rows of the relabeled graph.
    pub rows: Vec<u64>,
    /// Automorphisms found during the search, as vertex maps.
    pub generators: Vec<Vec<u8>>,
}

impl Labeling {
    /// Inverse of `lab`: canonical position of each original vertex.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.lab.len()];
        for (k, &v) in self.lab.iter().enumerate() {
            pos[v] = k;
        }
        pos
    }

    /// Orbit representative (smallest vertex) of each vertex under the group
    /// generated by the automorphisms found. These orbits can be finer than
    /// the true automorphism orbits, never coarser.
    pub fn orbits(&self) -> Vec<usize> {
        let n = self.lab.len();
        let mut uf = UnionFind::new(n);
        for g in &self.generators {
            for (v, &w) in g.iter().enumerate() {
                uf.union(v, w as usize);
            }
        }
        (0..n).map(|v| uf.find(v)).collect()
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalGraph {
    let lab = canonical_labeling(g);
    let graph = Graph::from_rows_unchecked(g.n(), lab.rows);
    CanonicalGraph {
        g6: graph6::encode(&graph),
        graph,
    }
}

pub fn canonical_labeling(g: &Graph) -> Labeling {
    let n = g.n();
    let rows = g.rows();
    if n == 0 {
        return Labeling {
            lab: Vec::new(),
            rows: Vec::new(),
            generators: Vec::new(),
        };
    }
    let mut search = Search {
        n,
        rows,
        first: None,
        best: None,
        generators: Vec::new(),
    };
    let mut cells = vec![crate::graph::low_mask(n)];
    refine(
        rows,
        &mut cells,
        VecDeque::from([crate::graph::low_mask(n)]),
    );
    let mut prefix = Vec::with_capacity(n);
    search.dfs(cells, &mut prefix);
    let best = search.best.expect("search visits at least one leaf");
    Labeling {
        rows: relabel(rows, &best.lab),
        lab: best.lab.iter().map(|&v| v as usize).collect(),
        generators: search.generators,
    }
}

/// Splits cells by neighbor counts into each splitter until the partition is
/// equitable. Fragments are ordered by increasing count, so the result only
/// depends on the partition's structure, never on vertex names.
fn refine(rows: &[u64], cells: &mut Vec<u64>, mut queue: VecDeque<u64>) {
    let mut singletons = cells.iter().filter(|c| c.count_ones() == 1).count();
    let mut counts = [0u64; 65];
    while let Some(w) = queue.pop_front() {
        if singletons == cells.len() {
            return;
        }
        let mut i = 0;
        while i < cells.len() {
            let cell = cells[i];
            if cell.count_ones() == 1 {
                i += 1;
                continue;
            }
            let mut lo = usize::MAX;
            let mut hi = 0;
            for v in Bits(cell) {
                let k = (rows[v] & w).count_ones() as usize;
                counts[k] |= 1 << v;
                lo = lo.min(k);
                hi = hi.max(k);
            }
            if lo == hi {
                counts[lo] = 0;
                i += 1;
                continue;
            }
            let mut frags = Vec::new();
            for c in &mut counts[lo..=hi] {
                if *c != 0 {
                    frags.push(*c);
                    *c = 0;
                }
            }
            singletons += frags.iter().filter(|f| f.count_ones() == 1).count();
            queue.extend(frags.iter().copied());
            let k = frags.len();
            cells.splice(i..=i, frags);
            i += k;
        }
    }
}

/// Rows of the graph relabeled so that position `k` holds vertex `lab[k]`.
fn relabel(rows: &[u64], lab: &[u8]) -> Vec<u64> {
    let n = lab.len();
    let mut pos = [0u8; 64];
    for (k, &v) in lab.iter().enumerate() {
        pos[v as usize] = k as u8;
    }
    (0..n)
        .map(|k| Bits(rows[lab[k] as usize]).fold(0u64, |acc, u| acc | 1 << pos[u]))
        .collect()
}

/// Comparison key of a labeling: column `j` holds bits `x(i, j)` for `i < j`,
/// bit-reversed so that integer order matches graph6 bit-string order.
fn code(rows: &[u64], lab: &[u8]) -> Vec<u64> {
    relabel(rows, lab)
        .iter()
        .enumerate()
        .map(|(j, &r)| (r & crate::graph::low_mask(j)).reverse_bits())
        .collect()
}

struct Leaf {
    prefix: Vec<u8>,
    lab: Vec<u8>,
    code: Vec<u64>,
}

struct Search<'a> {
    n: usize,
    rows: &'a [u64],
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<u8>>,
}

fn common_prefix(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl Search<'_> {
    /// Returns `Some(level)` when the rest of the subtree rooted at depth
    /// `level` on the current path is known to be equivalent to an explored
    /// one and should be abandoned.
    fn dfs(&mut self, cells: Vec<u64>, prefix: &mut Vec<u8>) -> Option<usize> {
        let Some(target) = cells.iter().position(|c| c.count_ones() > 1) else {
            return self.leaf(&cells, prefix);
        };
        let depth = prefix.len();
        let cell = cells[target];
        let mut explored: Vec<usize> = Vec::new();
        for v in Bits(cell) {
            if !explored.is_empty() && self.equivalent_to_explored(prefix, v, &explored) {
                continue;
            }
            explored.push(v);
            let mut child = cells.clone();
            child.splice(target..=target, [1u64 << v, cell & !(1 << v)]);
            refine(self.rows, &mut child, VecDeque::from([1u64 << v]));
            prefix.push(v as u8);
            let jump = self.dfs(child, prefix);
            prefix.pop();
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    fn equivalent_to_explored(&self, prefix: &[u8], v: usize, explored: &[usize]) -> bool {
        let mut uf = UnionFind::new(self.n);
        let mut any = false;
        for g in &self.generators {
            if prefix.iter().all(|&p| g[p as usize] == p) {
                any = true;
                for (a, &b) in g.iter().enumerate() {
                    uf.union(a, b as usize);
                }
            }
        }
        any && explored.iter().any(|&u| uf.find(u) == uf.find(v))
    }

    fn leaf(&mut self, cells: &[u64], prefix: &[u8]) -> Option<usize> {
        let lab: Vec<u8> = cells.iter().map(|c| c.trailing_zeros() as u8).collect();
        let code = code(self.rows, &lab);
        let Some(first) = &self.first else {
            let leaf = Leaf {
                prefix: prefix.to_vec(),
                lab,
                code,
            };
            self.best = Some(Leaf {
                prefix: leaf.prefix.clone(),
                lab: leaf.lab.clone(),
                code: leaf.code.clone(),
            });
            self.first = Some(leaf);
            return None;
        };
        if code == first.code {
            let g = automorphism(&first.lab, &lab);
            let level = common_prefix(&first.prefix, prefix);
            self.generators.push(g);
            return Some(level);
        }
        let best = self.best.as_mut().expect("best is set with first");
        match code.cmp(&best.code) {
            std::cmp::Ordering::Less => {
                *best = Leaf {
                    prefix: prefix.to_vec(),
                    lab,
                    code,
                };
                None
            }
            std::cmp::Ordering::Equal => {
                let g = automorphism(&best.lab, &lab);
                let level = common_prefix(&best.prefix, prefix);
                self.generators.push(g);
                Some(level)
            }
            std::cmp::Ordering::Greater => None,
        }
    }
}

/// The vertex map sending `from[k]` to `to[k]` for every position `k`.
fn automorphism(from: &[u8], to: &[u8]) -> Vec<u8> {
    let mut g = vec![0u8; from.len()];
    for (&a, &b) in from.iter().zip(to) {
        g[a as usize] = b;
    }
    g
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Smaller root wins so that representatives are orbit minima.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite, cycle, empty, path, star};

    #[test]
    fn small_identities() {
        assert_eq!(
            canonical_form(&cycle(4).unwrap()),
            canonical_form(&complete_bipartite(2, 2).unwrap())
        );
        let p3 = path(3).unwrap();
        let p3b = Graph::from_edges(3, &[(1, 0), (0, 2)]).unwrap();
        assert_eq!(canonical_form(&p3).g6, canonical_form(&p3b).g6);
        assert_ne!(
            canonical_form(&star(3).unwrap()),
            canonical_form(&cycle(4).unwrap())
        );
    }

    #[test]
    fn picks_smallest_bitstring() {
        // P_3 has three labelings as graphs; the smallest bit string
        // x01 x02 x12 among 110, 101, 011 is 011 -> 'B' 'W'.
        assert_eq!(canonical_form(&path(3).unwrap()).g6, "BW");
        assert_eq!(canonical_form(&empty(5).unwrap()).g6, "D??");
    }

    #[test]
    fn symmetric_graphs_finish() {
        for n in [1, 2, 10, 20, 40, 64] {
            let c = canonical_form(&empty(n).unwrap());
            assert_eq!(c.graph.m(), 0);
            let k = canonical_form(&crate::graph::complete(n).unwrap());
            assert_eq!(k.graph.m(), n * (n - 1) / 2);
        }
        let l = canonical_labeling(&cycle(12).unwrap());
        assert!(l.orbits().iter().all(|&o| o == 0));
    }

    #[test]
    fn empty_graph() {
        let c = canonical_form(&empty(0).unwrap());
        assert_eq!(c.g6, "?");
    }
}
