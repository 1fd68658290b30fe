//! Immutable simple undirected graphs on at most 64 vertices.
//!
//! Each adjacency row is a single `u64`, bit `v` of row `u` set iff `u ~ v`.
//! Constructors for the graph families used throughout the crate live here
//! too; every constructor documents its vertex labeling so that examples and
//! reports are reproducible.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported vertex count (one machine word per adjacency row).
pub const MAX_VERTICES: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
    deg: Vec<u32>,
    m: usize,
    delta: u32,
    max_deg: u32,
}

#[inline]
pub(crate) fn low_mask(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

/// Iterator over the set bits of a word, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }
}

impl Graph {
    /// Builds a graph from rows that are already known to be symmetric and loop-free.
    pub(crate) fn from_rows_unchecked(n: usize, adj: Vec<u64>) -> Graph {
        debug_assert_eq!(adj.len(), n);
        let deg: Vec<u32> = adj.iter().map(|r| r.count_ones()).collect();
        let total: u32 = deg.iter().sum();
        let delta = deg.iter().copied().min().unwrap_or(0);
        let max_deg = deg.iter().copied().max().unwrap_or(0);
        Graph {
            n,
            adj,
            deg,
            m: (total / 2) as usize,
            delta,
            max_deg,
        }
    }

    /// Builds a graph from adjacency rows, validating symmetry and the absence of loops.
    pub fn from_rows(n: usize, adj: Vec<u64>) -> Result<Graph> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        if adj.len() != n {
            return Err(Error::InvalidParameter(format!(
                "expected {n} adjacency rows, got {}",
                adj.len()
            )));
        }
        for (u, &row) in adj.iter().enumerate() {
            if row & !low_mask(n) != 0 {
                return Err(Error::InvalidParameter(format!(
                    "row {u} references a vertex >= {n}"
                )));
            }
            if row >> u & 1 == 1 {
                return Err(Error::InvalidParameter(format!("self-loop at vertex {u}")));
            }
            for v in Bits(row) {
                if adj[v] >> u & 1 == 0 {
                    return Err(Error::InvalidParameter(format!(
                        "adjacency is not symmetric at ({u}, {v})"
                    )));
                }
            }
        }
        Ok(Graph::from_rows_unchecked(n, adj))
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at vertex {u}")));
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(Graph::from_rows_unchecked(n, adj))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.deg[v] as usize
    }

    #[inline]
    pub fn degrees(&self) -> &[u32] {
        &self.deg
    }

    /// Minimum degree (0 for the empty graph).
    #[inline]
    pub fn min_degree(&self) -> usize {
        self.delta as usize
    }

    #[inline]
    pub fn max_degree(&self) -> usize {
        self.max_deg as usize
    }

    #[inline]
    pub fn row(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> Bits {
        Bits(self.adj[v])
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| Bits(self.adj[u] & !low_mask(u + 1)).map(move |v| (u, v)))
    }

    /// Degree sequence sorted in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<u32> {
        let mut d = self.deg.clone();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn isolated_count(&self) -> usize {
        self.deg.iter().filter(|&&d| d == 0).count()
    }

    /// Bitmask of the vertices with at least one neighbor.
    pub fn non_isolated_mask(&self) -> u64 {
        self.adj
            .iter()
            .enumerate()
            .filter(|(_, &r)| r != 0)
            .fold(0, |acc, (v, _)| acc | 1 << v)
    }

    /// Vertex masks of the connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<u64> {
        let mut seen = 0u64;
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen >> s & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << s;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                for v in Bits(frontier) {
                    next |= self.adj[v];
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            comps.push(comp);
        }
        comps
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    /// Connected in the usual sense; the empty graph and K_1 count as connected.
    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.component_count() == 1
    }

    /// Relabels vertices: vertex `v` of `self` becomes vertex `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::InvalidParameter(format!(
                "permutation has length {}, graph has {} vertices",
                perm.len(),
                self.n
            )));
        }
        let mut seen = 0u64;
        for &p in perm {
            if p >= self.n || seen >> p & 1 == 1 {
                return Err(Error::InvalidParameter("not a permutation".into()));
            }
            seen |= 1 << p;
        }
        let mut adj = vec![0u64; self.n];
        for u in 0..self.n {
            adj[perm[u]] = Bits(self.adj[u]).fold(0, |acc, v| acc | 1 << perm[v]);
        }
        Ok(Graph::from_rows_unchecked(self.n, adj))
    }

    /// Subgraph induced by `mask`, vertices renumbered in increasing order.
    pub fn induced(&self, mask: u64) -> Graph {
        let keep: Vec<usize> = Bits(mask & low_mask(self.n)).collect();
        let mut index = [usize::MAX; MAX_VERTICES];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| Bits(self.adj[v] & mask).fold(0u64, |acc, u| acc | 1 << index[u]))
            .collect();
        Graph::from_rows_unchecked(keep.len(), adj)
    }

    pub fn remove_vertex(&self, v: usize) -> Graph {
        self.induced(low_mask(self.n) & !(1 << v))
    }

    /// Graph with one extra vertex `n` adjacent to exactly `nbrs`.
    pub fn add_vertex(&self, nbrs: u64) -> Result<Graph> {
        if self.n + 1 > MAX_VERTICES {
            return Err(Error::TooManyVertices(self.n + 1));
        }
        let nbrs = nbrs & low_mask(self.n);
        let v = self.n;
        let mut adj = self.adj.clone();
        for u in Bits(nbrs) {
            adj[u] |= 1 << v;
        }
        adj.push(nbrs);
        Ok(Graph::from_rows_unchecked(self.n + 1, adj))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// The basic families accepted by [`construct_basic`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Complete,
    Cycle,
    Path,
    Star,
    CompleteBipartite,
    Empty,
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::TooManyVertices(n))
    } else {
        Ok(())
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

/// Edgeless graph on `n` vertices.
pub fn empty(n: usize) -> Result<Graph> {
    check_size(n)?;
    Ok(Graph::from_rows_unchecked(n, vec![0; n]))
}

/// K_n on vertices `0..n`.
pub fn complete(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(bad("complete graph needs n >= 1"));
    }
    check_size(n)?;
    let all = low_mask(n);
    Ok(Graph::from_rows_unchecked(
        n,
        (0..n).map(|v| all & !(1 << v)).collect(),
    ))
}

/// C_n with edges `i ~ i+1 (mod n)`.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(bad("cycle needs n >= 3"));
    }
    check_size(n)?;
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

/// P_n with edges `i ~ i+1`.
pub fn path(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(bad("path needs n >= 1"));
    }
    check_size(n)?;
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges)
}

/// K_{r,s}: part `0..r` joined to part `r..r+s`.
pub fn complete_bipartite(r: usize, s: usize) -> Result<Graph> {
    if r < 1 || s < 1 {
        return Err(bad("complete bipartite graph needs r >= 1 and s >= 1"));
    }
    let n = r + s;
    check_size(n)?;
    let left = low_mask(r);
    let right = low_mask(n) & !left;
    Ok(Graph::from_rows_unchecked(
        n,
        (0..n).map(|v| if v < r { right } else { left }).collect(),
    ))
}

/// The star K_{1,p}; vertex 0 is the center.
pub fn star(p: usize) -> Result<Graph> {
    if p < 1 {
        return Err(bad("star needs p >= 1"));
    }
    complete_bipartite(1, p)
}

/// Builds a member of one of the basic families from its integer parameters.
pub fn construct_basic(family: Family, params: &[usize]) -> Result<Graph> {
    let arity = match family {
        Family::CompleteBipartite => 2,
        _ => 1,
    };
    if params.len() != arity {
        return Err(bad(format!(
            "{family:?} takes {arity} parameter(s), got {}",
            params.len()
        )));
    }
    match family {
        Family::Complete => complete(params[0]),
        Family::Cycle => cycle(params[0]),
        Family::Path => path(params[0]),
        Family::Star => star(params[0]),
        Family::CompleteBipartite => complete_bipartite(params[0], params[1]),
        Family::Empty => empty(params[0]),
    }
}

/// `g ⊔ h`; the vertices of `h` are shifted by `g.n()`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Result<Graph> {
    let n = g.n + h.n;
    check_size(n)?;
    let mut adj = g.adj.clone();
    adj.extend(h.adj.iter().map(|&r| r << g.n));
    Ok(Graph::from_rows_unchecked(n, adj))
}

/// `g ∨ h`: the disjoint union plus every edge between the two parts.
pub fn join(g: &Graph, h: &Graph) -> Result<Graph> {
    let n = g.n + h.n;
    check_size(n)?;
    let left = low_mask(g.n);
    let right = low_mask(n) & !left;
    let mut adj: Vec<u64> = g.adj.iter().map(|&r| r | right).collect();
    adj.extend(h.adj.iter().map(|&r| (r << g.n) | left));
    Ok(Graph::from_rows_unchecked(n, adj))
}

/// `k` disjoint copies of `g`.
pub fn copies(k: usize, g: &Graph) -> Result<Graph> {
    check_size(k * g.n)?;
    let mut acc = empty(0)?;
    for _ in 0..k {
        acc = disjoint_union(&acc, g)?;
    }
    Ok(acc)
}

/// F_{p,q} = K_1 ∨ pK_q. Vertex 0 is the universal vertex; clique `i`
/// occupies vertices `1 + i*q .. 1 + (i+1)*q`.
pub fn generalized_friendship(p: usize, q: usize) -> Result<Graph> {
    if p < 1 || q < 1 {
        return Err(bad("generalized friendship graph needs p >= 1 and q >= 1"));
    }
    let n = p
        .checked_mul(q)
        .and_then(|pq| pq.checked_add(1))
        .filter(|&n| n <= MAX_VERTICES)
        .ok_or_else(|| bad(format!("pq + 1 must be at most {MAX_VERTICES}")))?;
    let g = join(&complete(1)?, &copies(p, &complete(q)?)?)?;
    debug_assert_eq!(g.n, n);
    Ok(g)
}

/// γ_{4k}: a path on 2k+1 vertices whose center is identified with a vertex
/// of a cycle on 2k vertices.
///
/// Labeling: the cycle is `0..2k` with `i ~ i+1 (mod 2k)` and vertex 0 is
/// the identified center. The first arm is `2k, 2k+1, .., 3k-1` hanging off
/// vertex 0 in that order, the second arm is `3k, .., 4k-1`.
pub fn gamma_graph(k: usize) -> Result<Graph> {
    if k < 2 {
        return Err(bad("gamma graph needs k >= 2"));
    }
    let n = 4 * k;
    check_size(n)?;
    let c = 2 * k;
    let mut edges: Vec<(usize, usize)> = (0..c).map(|i| (i, (i + 1) % c)).collect();
    for arm in 0..2 {
        let start = c + arm * k;
        edges.push((0, start));
        edges.extend((start + 1..start + k).map(|v| (v - 1, v)));
    }
    Graph::from_edges(n, &edges)
}
