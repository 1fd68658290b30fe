//! Degree-weighted neighborhood sums and the three-eigenvalue equations.
//!
//! For a graph without isolated vertices put `d̂_u = Σ_{v~u} 1/d_v`, and for a
//! pair `u != v` let `λ̂_uv` (adjacent) or `μ̂_uv` (non-adjacent) be the sum of
//! `1/d_w` over common neighbors `w`. A connected non-complete graph has
//! normalized-Laplacian eigenvalues exactly `{0, 1/q, 1 + 1/q}` iff
//!
//! 1. `d̂_u = (q+1) d_u² / (2mq²) + (q-1) d_u / q²` for every vertex,
//! 2. `λ̂_uv = (q+1) d_u d_v / (2mq²) + (q-2)/q` for every edge,
//! 3. `μ̂_uv = (q+1) d_u d_v / (2mq²)` for every non-edge.
//!
//! `K_{q+1}` satisfies all three equations while having only two distinct
//! eigenvalues, so [`three_eigenvalue_check`] also rejects complete graphs.
//! [`equations_hold`] evaluates the equations alone.

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{Bits, Graph};
use crate::poly::{fmt_rational, BigRational};

fn rat(num: usize, den: usize) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Clone, Debug)]
pub struct StructureProfile {
    graph: Graph,
    inv_degree: Vec<BigRational>,
    d_hat: Vec<BigRational>,
}

impl StructureProfile {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn d_hat(&self) -> &[BigRational] {
        &self.d_hat
    }

    fn common_sum(&self, u: usize, v: usize) -> BigRational {
        Bits(self.graph.row(u) & self.graph.row(v))
            .fold(BigRational::zero(), |acc, w| acc + &self.inv_degree[w])
    }

    /// `λ̂_uv`, or `None` unless `uv` is an edge.
    pub fn lambda_hat(&self, u: usize, v: usize) -> Option<BigRational> {
        self.graph.has_edge(u, v).then(|| self.common_sum(u, v))
    }

    /// `μ̂_uv`, or `None` unless `u != v` is a non-edge.
    pub fn mu_hat(&self, u: usize, v: usize) -> Option<BigRational> {
        (u != v && !self.graph.has_edge(u, v)).then(|| self.common_sum(u, v))
    }
}

/// Computes `d̂`; pair sums are evaluated on demand.
pub fn structure_profile(g: &Graph) -> Result<StructureProfile> {
    if g.n() < 2 || !g.is_connected() {
        return Err(Error::Precondition(
            "structure profile needs a connected graph on at least 2 vertices".into(),
        ));
    }
    let inv_degree: Vec<BigRational> = (0..g.n()).map(|v| rat(1, g.degree(v))).collect();
    let d_hat = (0..g.n())
        .map(|u| {
            g.neighbors(u)
                .fold(BigRational::zero(), |acc, v| acc + &inv_degree[v])
        })
        .collect();
    Ok(StructureProfile {
        graph: g.clone(),
        inv_degree,
        d_hat,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Equation `id` (1, 2 or 3) fails at `vertices` (one vertex or a pair).
    Equation {
        id: u8,
        vertices: Vec<usize>,
        lhs: BigRational,
        rhs: BigRational,
    },
    /// A named structural condition fails; `found` and `expected` are
    /// human-readable.
    Condition {
        name: &'static str,
        found: String,
        expected: String,
    },
}

impl Violation {
    fn condition(name: &'static str, found: impl ToString, expected: impl ToString) -> Self {
        Violation::Condition {
            name,
            found: found.to_string(),
            expected: expected.to_string(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Violation::Equation {
                id,
                vertices,
                lhs,
                rhs,
            } => json!({
                "equation": id,
                "vertices": vertices,
                "lhs": fmt_rational(lhs),
                "rhs": fmt_rational(rhs),
            }),
            Violation::Condition {
                name,
                found,
                expected,
            } => json!({"condition": name, "found": found, "expected": expected}),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub first_violation: Option<Violation>,
}

impl CheckReport {
    fn ok() -> Self {
        CheckReport {
            first_violation: None,
        }
    }

    fn fail(v: Violation) -> Self {
        CheckReport {
            first_violation: Some(v),
        }
    }

    pub fn passed(&self) -> bool {
        self.first_violation.is_none()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": 1,
            "passed": self.passed(),
            "first_violation": self.first_violation.as_ref().map(Violation::to_json),
        })
    }
}

fn check_q(q: usize) -> Result<()> {
    if q < 2 {
        return Err(Error::InvalidParameter(format!(
            "q must be at least 2, got {q}"
        )));
    }
    Ok(())
}

/// Evaluates equations 1-3 in order: vertices by index, then pairs `u < v`
/// lexicographically. The first failure is reported.
pub fn equations_hold(g: &Graph, q: usize) -> Result<CheckReport> {
    check_q(q)?;
    let prof = structure_profile(g)?;
    let n = g.n();
    let m2q2 = 2 * g.m() * q * q;
    let q1 = q + 1;
    for u in 0..n {
        let d = g.degree(u);
        let rhs = rat(q1 * d * d, m2q2) + rat((q - 1) * d, q * q);
        if prof.d_hat[u] != rhs {
            return Ok(CheckReport::fail(Violation::Equation {
                id: 1,
                vertices: vec![u],
                lhs: prof.d_hat[u].clone(),
                rhs,
            }));
        }
    }
    let edge_term = rat(q - 2, q);
    for u in 0..n {
        for v in u + 1..n {
            let base = rat(q1 * g.degree(u) * g.degree(v), m2q2);
            let lhs = prof.common_sum(u, v);
            let (id, rhs) = if g.has_edge(u, v) {
                (2, base + &edge_term)
            } else {
                (3, base)
            };
            if lhs != rhs {
                return Ok(CheckReport::fail(Violation::Equation {
                    id,
                    vertices: vec![u, v],
                    lhs,
                    rhs,
                }));
            }
        }
    }
    Ok(CheckReport::ok())
}

/// Decides whether the distinct normalized-Laplacian eigenvalues of `g` are
/// exactly `{0, 1/q, 1 + 1/q}`.
pub fn three_eigenvalue_check(g: &Graph, q: usize) -> Result<CheckReport> {
    let report = equations_hold(g, q)?;
    if !report.passed() {
        return Ok(report);
    }
    let n = g.n();
    if g.m() == n * (n - 1) / 2 {
        return Ok(CheckReport::fail(Violation::condition(
            "not_complete",
            format!("K_{n}"),
            "a non-complete graph",
        )));
    }
    Ok(report)
}

/// Degree and size conditions that any graph cospectral with F_{p,q} must meet.
pub fn lemma_witness_check(g: &Graph, p: usize, q: usize) -> Result<CheckReport> {
    if p < 2 || q < 2 {
        return Err(Error::InvalidParameter(format!(
            "witness check needs p, q >= 2, got p = {p}, q = {q}"
        )));
    }
    let fail = |name, found: String, expected: String| {
        Ok(CheckReport::fail(Violation::condition(
            name, found, expected,
        )))
    };
    if !g.is_connected() {
        return fail(
            "connected",
            format!("{} components", g.component_count()),
            "1 component".into(),
        );
    }
    let n = p * q + 1;
    if g.n() != n {
        return fail("vertex_count", g.n().to_string(), n.to_string());
    }
    let delta = g.min_degree();
    if !(2..=q + 1).contains(&delta) {
        return fail(
            "min_degree",
            delta.to_string(),
            format!("between 2 and {}", q + 1),
        );
    }
    let hubs = (0..n).filter(|&v| g.degree(v) == p * q).count();
    let others_ok = (0..n).all(|v| g.degree(v) == p * q || g.degree(v) == q);
    if hubs != 1 || !others_ok {
        return fail(
            "degrees",
            format!("{:?}", g.degree_sequence()),
            format!("one vertex of degree {} and the rest of degree {q}", p * q),
        );
    }
    if 2 * g.m() != p * q * (q + 1) {
        return fail(
            "edge_count",
            (2 * g.m()).to_string(),
            (p * q * (q + 1)).to_string(),
        );
    }
    Ok(CheckReport::ok())
}
