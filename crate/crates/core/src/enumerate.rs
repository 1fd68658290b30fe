//! Isomorph-free generation of small graphs by canonical augmentation.
//!
//! Graphs on `n` vertices are grown from canonical graphs on `n - 1`
//! vertices by adding a vertex `v` joined to a subset of the old vertices.
//! The child `H` is kept only when `H - w ≅ parent`, where `w` is the
//! max-degree vertex of `H` with the largest canonical position. Since `w`
//! is chosen canonically, each class is produced from exactly one parent
//! class, and isomorphic siblings are merged per parent.
//!
//! Degrees never decrease along augmentation, so a maximum-degree bound
//! prunes whole subtrees. Connectivity and minimum degree are checked on the
//! final level only.

use std::collections::BTreeSet;
use std::io::BufRead;

use rayon::prelude::*;

use crate::canon::{canonical_form, canonical_labeling, CanonicalGraph};
use crate::error::{Error, Result};
use crate::graph::{empty, Bits, Graph};
use crate::graph6;

/// Largest `n` enumerated without an explicit override.
pub const DEFAULT_CAP: usize = 10;
/// Hard limit even with the override.
pub const OVERRIDE_CAP: usize = 12;

/// Parents handled per parallel batch in streaming mode.
const BATCH: usize = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumFilter {
    pub n: usize,
    pub connected_only: bool,
    pub min_degree: Option<usize>,
    pub max_degree: Option<usize>,
}

impl EnumFilter {
    pub fn all(n: usize) -> Self {
        EnumFilter {
            n,
            connected_only: false,
            min_degree: None,
            max_degree: None,
        }
    }

    pub fn connected(n: usize) -> Self {
        EnumFilter {
            connected_only: true,
            ..EnumFilter::all(n)
        }
    }

    pub fn with_min_degree(mut self, d: usize) -> Self {
        self.min_degree = Some(d);
        self
    }

    pub fn with_max_degree(mut self, d: usize) -> Self {
        self.max_degree = Some(d);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        let top = self.n - 1;
        if let Some(hi) = self.max_degree {
            if hi > top {
                return Err(Error::InvalidParameter(format!(
                    "max degree {hi} exceeds n - 1 = {top}"
                )));
            }
        }
        if let Some(lo) = self.min_degree {
            if lo > self.max_degree.unwrap_or(top) {
                return Err(Error::InvalidParameter(format!(
                    "min degree {lo} exceeds the maximum degree bound"
                )));
            }
        }
        Ok(())
    }

    pub fn accepts(&self, g: &Graph) -> bool {
        g.n() == self.n
            && (!self.connected_only || g.is_connected())
            && self.min_degree.is_none_or(|d| g.min_degree() >= d)
            && self.max_degree.is_none_or(|d| g.max_degree() <= d)
    }
}

/// Enumeration driver: a filter plus execution options.
#[derive(Clone, Debug)]
pub struct Enumerator {
    filter: EnumFilter,
    threads: Option<usize>,
    allow_large: bool,
}

impl Enumerator {
    pub fn new(filter: EnumFilter) -> Self {
        Enumerator {
            filter,
            threads: None,
            allow_large: false,
        }
    }

    /// Worker count; `1` runs a plain sequential loop. Default: all cores.
    pub fn threads(mut self, threads: Option<usize>) -> Self {
        self.threads = threads;
        self
    }

    /// Permits `n` up to [`OVERRIDE_CAP`].
    pub fn allow_large(mut self, allow: bool) -> Self {
        self.allow_large = allow;
        self
    }

    pub fn filter(&self) -> &EnumFilter {
        &self.filter
    }

    fn check(&self) -> Result<()> {
        self.filter.validate()?;
        let cap = if self.allow_large {
            OVERRIDE_CAP
        } else {
            DEFAULT_CAP
        };
        if self.filter.n > cap {
            return Err(Error::CapExceeded {
                n: self.filter.n,
                cap,
            });
        }
        if let Some(0) = self.threads {
            return Err(Error::InvalidParameter("threads must be at least 1".into()));
        }
        Ok(())
    }

    fn run<R: Send>(&self, job: impl FnOnce() -> R + Send) -> Result<R> {
        match self.threads {
            Some(1) => Ok(job()),
            Some(t) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(t)
                    .build()
                    .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
                Ok(pool.install(job))
            }
            None => Ok(job()),
        }
    }

    fn sequential(&self) -> bool {
        self.threads == Some(1)
    }

    /// All canonical graphs on `n - 1` vertices that can parent an
    /// accepted graph.
    fn parents(&self) -> Vec<CanonicalGraph> {
        let max_deg = self.filter.max_degree;
        let mut level = vec![canonical_form(&empty(1).expect("one vertex"))];
        for _ in 2..self.filter.n {
            let grow = |p: &CanonicalGraph| children(p, max_deg);
            let mut next: Vec<CanonicalGraph> = if self.sequential() {
                level.iter().flat_map(grow).collect()
            } else {
                level.par_iter().flat_map_iter(grow).collect()
            };
            next.sort_unstable();
            level = next;
        }
        level
    }

    /// Applies `f` to every accepted graph inside the workers and returns
    /// the number of accepted graphs together with the `Some` results, in
    /// stream order (parents by canonical graph6, then children likewise).
    pub fn filter_map<T: Send>(
        &self,
        f: impl Fn(&CanonicalGraph) -> Option<T> + Sync,
    ) -> Result<(u64, Vec<T>)> {
        self.check()?;
        self.run(|| {
            if self.filter.n == 1 {
                let g = canonical_form(&empty(1).expect("one vertex"));
                return if self.filter.accepts(&g.graph) {
                    (1, f(&g).into_iter().collect())
                } else {
                    (0, Vec::new())
                };
            }
            let parents = self.parents();
            let per_parent = |p: &CanonicalGraph| {
                let mut count = 0u64;
                let mut out = Vec::new();
                for c in children(p, self.filter.max_degree) {
                    if self.filter.accepts(&c.graph) {
                        count += 1;
                        out.extend(f(&c));
                    }
                }
                (count, out)
            };
            let chunks: Vec<(u64, Vec<T>)> = if self.sequential() {
                parents.iter().map(per_parent).collect()
            } else {
                parents.par_iter().map(per_parent).collect()
            };
            let total = chunks.iter().map(|(c, _)| c).sum();
            (total, chunks.into_iter().flat_map(|(_, v)| v).collect())
        })
    }

    /// Streams accepted graphs to `sink` in parent-major order without
    /// materializing the final level. Returns the number emitted.
    pub fn for_each(&self, mut sink: impl FnMut(&CanonicalGraph)) -> Result<u64> {
        self.check()?;
        if self.filter.n == 1 {
            let g = canonical_form(&empty(1).expect("one vertex"));
            if self.filter.accepts(&g.graph) {
                sink(&g);
                return Ok(1);
            }
            return Ok(0);
        }
        let parents = self.run(|| self.parents())?;
        let mut emitted = 0;
        for batch in parents.chunks(BATCH) {
            let grow = |p: &CanonicalGraph| -> Vec<CanonicalGraph> {
                children(p, self.filter.max_degree)
                    .into_iter()
                    .filter(|c| self.filter.accepts(&c.graph))
                    .collect()
            };
            let kids: Vec<Vec<CanonicalGraph>> = if self.sequential() {
                batch.iter().map(grow).collect()
            } else {
                self.run(|| batch.par_iter().map(grow).collect())?
            };
            for c in kids.iter().flatten() {
                sink(c);
                emitted += 1;
            }
        }
        Ok(emitted)
    }

    /// Every accepted graph, sorted by canonical graph6.
    pub fn collect(&self) -> Result<Vec<CanonicalGraph>> {
        let (_, mut all) = self.filter_map(|c| Some(c.clone()))?;
        all.sort_unstable();
        Ok(all)
    }

    pub fn count(&self) -> Result<u64> {
        Ok(self.filter_map(|_| None::<()>)?.0)
    }
}

/// Sorted, isomorph-free list of graphs matching `f`, with default options.
pub fn enumerate_graphs(f: &EnumFilter) -> Result<Vec<CanonicalGraph>> {
    Enumerator::new(*f).collect()
}

pub fn count_graphs(f: &EnumFilter) -> Result<u64> {
    Enumerator::new(*f).count()
}

/// Canonical children of `parent`, sorted and distinct.
fn children(parent: &CanonicalGraph, max_deg: Option<usize>) -> Vec<CanonicalGraph> {
    let p = &parent.graph;
    let n0 = p.n();
    let v = n0;
    let mut found = BTreeSet::new();
    let mut out = Vec::new();
    'subsets: for s in 0u64..(1u64 << n0) {
        let k = s.count_ones() as usize;
        if max_deg.is_some_and(|d| k > d) {
            continue;
        }
        // The new vertex must have maximum degree, or w != v and H - w is
        // isomorphic to H - v; the w-extension of the same parent then
        // yields the same class, so the shortcut loses nothing.
        for u in 0..n0 {
            if p.degree(u) + (s >> u & 1) as usize > k {
                continue 'subsets;
            }
        }
        let mut rows = p.rows().to_vec();
        for u in Bits(s) {
            rows[u] |= 1 << v;
        }
        rows.push(s);
        let h = Graph::from_rows_unchecked(n0 + 1, rows);
        let lab = canonical_labeling(&h);
        let w = *lab
            .lab
            .iter()
            .rev()
            .find(|&&x| h.degree(x) == k)
            .expect("the new vertex has maximum degree");
        let accept = w == v || {
            let orbits = lab.orbits();
            orbits[w] == orbits[v] || canonical_form(&h.remove_vertex(w)).g6 == parent.g6
        };
        if !accept {
            continue;
        }
        let canon = Graph::from_rows_unchecked(n0 + 1, lab.rows);
        let g6 = graph6::encode(&canon);
        if found.insert(g6.clone()) {
            out.push(CanonicalGraph { g6, graph: canon });
        }
    }
    out.sort_unstable();
    out
}

/// Reads a newline-delimited graph6 stream produced elsewhere and returns
/// the distinct classes on `f.n` vertices that pass `f`, sorted.
pub fn import_graph6(reader: impl BufRead, f: &EnumFilter) -> Result<Vec<CanonicalGraph>> {
    f.validate()?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let g = graph6::decode(line).map_err(|e| match e {
            Error::MalformedGraph6 { offset, reason } => Error::MalformedGraph6 {
                offset,
                reason: format!("line {}: {reason}", i + 1),
            },
            other => other,
        })?;
        if !f.accepts(&g) {
            continue;
        }
        let c = canonical_form(&g);
        if seen.insert(c.g6.clone()) {
            out.push(c);
        }
    }
    out.sort_unstable();
    Ok(out)
}
