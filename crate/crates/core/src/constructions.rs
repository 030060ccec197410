//! Extremal uniquely dominated graphs.
//!
//! [`construct_bipartite`] meets the bipartite bound, [`construct_fischermann`]
//! meets Fischermann's bound for general graphs, and [`construct_star`] covers
//! `γ = 1`. All three are perfectly dominated by their intended dominators.
//!
//! Vertex numbering of the bipartite family is fixed: `D_X` (`x₁..`), `D_Y`
//! (`y₁..`), then `X` as `b₁,₁ b₁,₂ b₂,₁ ...`, `Y` as `a₁,₁ a₁,₂ ...`, then `C`,
//! then the remaining vertices `r₁ r₂ ...` (odd indices in `R'`, even in `R''`).
//! The Fischermann family numbers `D`, `A`, `B`, `R` in that order.

use serde::Serialize;
use thiserror::Error;

use crate::bipartite::Bipartition;
use crate::bounds::{self, BoundError};
use crate::domination::{self, DominationReport, Solver};
use crate::exec::{map_ordered, Execution};
use crate::graph::{Graph, Vertex, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Hypothesis(#[from] BoundError),
    #[error("{n} vertices exceed the word-size cap")]
    TooLarge { n: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Bipartite,
    Fischermann,
    Star,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Role {
    #[serde(rename = "D_X")]
    DX,
    #[serde(rename = "D_Y")]
    DY,
    X1,
    X2,
    Y,
    C,
    #[serde(rename = "R_prime")]
    RPrime,
    #[serde(rename = "R_dprime")]
    RDoublePrime,
    D,
    A,
    B,
    R,
    Leaf,
}

impl Role {
    pub fn label(self) -> &'static str {
        match self {
            Role::DX => "D_X",
            Role::DY => "D_Y",
            Role::X1 => "X1",
            Role::X2 => "X2",
            Role::Y => "Y",
            Role::C => "C",
            Role::RPrime => "R_prime",
            Role::RDoublePrime => "R_dprime",
            Role::D => "D",
            Role::A => "A",
            Role::B => "B",
            Role::R => "R",
            Role::Leaf => "Leaf",
        }
    }
}

/// Role of every vertex in a constructed graph, plus what the construction
/// promises about it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionLayout {
    pub family: Family,
    pub roles: Vec<Role>,
    /// Vertex names such as `x1`, `b2_1`, `r3`.
    pub names: Vec<String>,
    pub intended_dominators: VertexSet,
    pub partition: Option<Bipartition>,
}

impl ConstructionLayout {
    pub fn members(&self, role: Role) -> VertexSet {
        self.roles
            .iter()
            .enumerate()
            .filter(|(_, &r)| r == role)
            .map(|(v, _)| v)
            .collect()
    }

    /// Labels for DOT output, e.g. `b1_1 (X1)`.
    pub fn dot_labels(&self) -> Vec<String> {
        self.names
            .iter()
            .zip(&self.roles)
            .map(|(name, role)| format!("{name} ({})", role.label()))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub graph: Graph,
    pub layout: ConstructionLayout,
}

struct Builder {
    edges: Vec<(Vertex, Vertex)>,
    roles: Vec<Role>,
    names: Vec<String>,
}

impl Builder {
    fn new() -> Self {
        Builder { edges: Vec::new(), roles: Vec::new(), names: Vec::new() }
    }

    fn add(&mut self, role: Role, name: String) -> Vertex {
        self.roles.push(role);
        self.names.push(name);
        self.roles.len() - 1
    }

    fn join(&mut self, u: Vertex, v: Vertex) {
        self.edges.push((u, v));
    }

    fn join_all(&mut self, us: &[Vertex], vs: &[Vertex]) {
        for &u in us {
            for &v in vs {
                self.join(u, v);
            }
        }
    }

    fn finish(
        self,
        family: Family,
        intended: VertexSet,
        side_a: Option<VertexSet>,
    ) -> Construction {
        let n = self.roles.len();
        let graph = Graph::from_edge_list(n, &self.edges).expect("builder edges are in range");
        let partition = side_a.map(|a| {
            let p = Bipartition::from_side(n, a).expect("side within range");
            p.validate(&graph).expect("construction respects its bipartition");
            p
        });
        Construction {
            graph,
            layout: ConstructionLayout {
                family,
                roles: self.roles,
                names: self.names,
                intended_dominators: intended,
                partition,
            },
        }
    }
}

fn check_order(n: u64) -> Result<(), ConstructionError> {
    if n > crate::graph::MAX_VERTICES as u64 {
        return Err(ConstructionError::TooLarge { n });
    }
    Ok(())
}

/// Bipartite uniquely dominated graph on `n` vertices with domination number
/// `gamma` and `bipartite_bound(n, gamma)` edges.
pub fn construct_bipartite(n: u64, gamma: u64) -> Result<Construction, ConstructionError> {
    let bound = bounds::bipartite_bound(n, gamma)?;
    check_order(n)?;
    let (f, c) = ((gamma / 2) as usize, gamma.div_ceil(2) as usize);
    let attached = (n - 3 * gamma).min(bounds::attachment_capacity(gamma)) as usize;
    let remaining = bounds::phi(n, gamma) as usize;

    let mut b = Builder::new();
    let dx: Vec<_> = (1..=f).map(|i| b.add(Role::DX, format!("x{i}"))).collect();
    let dy: Vec<_> = (1..=c).map(|j| b.add(Role::DY, format!("y{j}"))).collect();
    let mut x1 = Vec::with_capacity(f);
    let mut x2 = Vec::with_capacity(f);
    for i in 1..=f {
        x1.push(b.add(Role::X1, format!("b{i}_1")));
        x2.push(b.add(Role::X2, format!("b{i}_2")));
    }
    let mut y = Vec::with_capacity(2 * c);
    for j in 1..=c {
        y.push(b.add(Role::Y, format!("a{j}_1")));
        y.push(b.add(Role::Y, format!("a{j}_2")));
    }
    let cs: Vec<_> = (1..=attached).map(|k| b.add(Role::C, format!("c{k}"))).collect();
    let mut r_odd = Vec::new();
    let mut r_even = Vec::new();
    for i in 1..=remaining {
        if i % 2 == 1 {
            r_odd.push(b.add(Role::RPrime, format!("r{i}")));
        } else {
            r_even.push(b.add(Role::RDoublePrime, format!("r{i}")));
        }
    }

    // P3 skeleton around each dominator.
    for i in 0..f {
        b.join(dx[i], x1[i]);
        b.join(dx[i], x2[i]);
    }
    for j in 0..c {
        b.join(dy[j], y[2 * j]);
        b.join(dy[j], y[2 * j + 1]);
    }
    // First neighbour of each x_i sees all of Y.
    b.join_all(&x1, &y);
    // C hangs off x1 and sees all of Y.
    for &v in &cs {
        b.join(v, dx[0]);
    }
    b.join_all(&cs, &y);
    // Remaining vertices.
    b.join_all(&r_odd, &cs);
    b.join_all(&r_odd, &x1);
    b.join_all(&r_odd, &dy[..1]);
    b.join_all(&r_even, &y);
    b.join_all(&r_even, &dx[..1]);
    b.join_all(&r_odd, &r_even);

    let intended: VertexSet = dx.iter().chain(&dy).copied().collect();
    let side_a: VertexSet = y.iter().chain(&dx).chain(&r_odd).copied().collect();
    let out = b.finish(Family::Bipartite, intended, Some(side_a));
    debug_assert_eq!(out.graph.size() as u64, bound);
    Ok(out)
}

/// Perfectly dominated graph meeting `fischermann_bound(n, gamma)`. Not
/// bipartite in general: `A ∪ R` is a clique.
pub fn construct_fischermann(n: u64, gamma: u64) -> Result<Construction, ConstructionError> {
    let bound = bounds::fischermann_bound(n, gamma)?;
    check_order(n)?;
    let g = gamma as usize;
    let extra = (n - 3 * gamma) as usize;

    let mut b = Builder::new();
    let d: Vec<_> = (1..=g).map(|i| b.add(Role::D, format!("x{i}"))).collect();
    let a: Vec<_> = (1..=g).map(|i| b.add(Role::A, format!("a{i}"))).collect();
    let bs: Vec<_> = (1..=g).map(|i| b.add(Role::B, format!("b{i}"))).collect();
    let r: Vec<_> = (1..=extra).map(|i| b.add(Role::R, format!("r{i}"))).collect();

    for i in 0..g {
        b.join(a[i], d[i]);
        b.join(bs[i], d[i]);
    }
    b.join_all(&d[..1], &r);
    for i in 1..g {
        b.join_all(&bs[i..=i], &a[..i]);
    }
    b.join_all(&bs[1..], &r);
    let clique: Vec<_> = a.iter().chain(&r).copied().collect();
    for (k, &u) in clique.iter().enumerate() {
        for &v in &clique[k + 1..] {
            b.join(u, v);
        }
    }

    let intended: VertexSet = d.iter().copied().collect();
    let out = b.finish(Family::Fischermann, intended, None);
    debug_assert_eq!(out.graph.size() as u64, bound);
    Ok(out)
}

/// `K_{1,n-1}` with the centre as vertex 0.
pub fn construct_star(n: u64) -> Result<Construction, ConstructionError> {
    bounds::star_bound(n)?;
    check_order(n)?;
    let mut b = Builder::new();
    let centre = b.add(Role::D, "x1".into());
    for i in 1..n {
        let leaf = b.add(Role::Leaf, format!("l{i}"));
        b.join(centre, leaf);
    }
    Ok(b.finish(Family::Star, VertexSet::singleton(centre), Some(VertexSet::singleton(centre))))
}

/// One named pass/fail line of a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Independent re-verification of a constructed graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationCertificate {
    pub expected_size: u64,
    pub size: u64,
    pub gamma: usize,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub report: DominationReport,
}

impl VerificationCertificate {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Checks every claim a construction makes about its graph, each one
/// recomputed from scratch.
pub fn verify_construction(
    g: &Graph,
    layout: &ConstructionLayout,
    expected_size: u64,
) -> VerificationCertificate {
    let intended = layout.intended_dominators;
    let mut checks = Vec::new();
    let mut push = |name, passed, detail: String| checks.push(Check { name, passed, detail });

    let size = g.size() as u64;
    push("size", size == expected_size, format!("{size} edges, expected {expected_size}"));

    let isolated = g.isolated_vertices();
    push("no_isolated", isolated.is_empty(), format!("isolated vertices {isolated:?}"));

    if let Some(p) = &layout.partition {
        let res = p.validate(g);
        push("bipartite", res.is_ok(), res.err().map_or_else(|| "partition valid".into(), |e| e.to_string()));
    }

    let gamma = Solver::new(g).domination_number();
    push(
        "gamma",
        gamma == intended.len(),
        format!("domination number {gamma}, intended set has {}", intended.len()),
    );

    let report = domination::is_umd(g);
    assert_eq!(report.gamma, gamma);
    push("unique", report.unique, format!("{} minimum set(s) listed", report.min_sets.len()));
    push(
        "intended_is_minimum_set",
        report.unique && report.min_sets[0] == intended,
        format!("minimum sets {:?}, intended {intended:?}", report.min_sets),
    );

    let dominating = domination::is_dominating(g, intended);
    let perfect = dominating
        && intended.len() == gamma
        && domination::perfect_by_degree_sum(g, intended)
        && domination::perfect_by_structure(g, intended);
    let degree_sum: usize = intended.iter().map(|v| g.degree(v)).sum();
    push(
        "perfect",
        perfect,
        format!("dominator degree sum {degree_sum}, n - gamma = {}", g.order().saturating_sub(intended.len())),
    );

    push(
        "closed_neighborhoods_disjoint",
        domination::closed_neighborhoods_disjoint(g, intended),
        "pairwise closed neighbourhoods of intended dominators".into(),
    );

    let epn_sizes: Vec<usize> = intended
        .iter()
        .map(|v| (domination::private_neighbors(g, v, intended) - intended).len())
        .collect();
    push(
        "epn_at_least_two",
        dominating && epn_sizes.iter().all(|&k| k >= 2),
        format!("exterior private neighbour counts {epn_sizes:?}"),
    );

    let passed = checks.iter().all(|c| c.passed);
    VerificationCertificate { expected_size, size, gamma, passed, checks, report }
}

/// A certificate for one `(n, γ)` of a sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub family: Family,
    pub n: u64,
    pub gamma: u64,
    pub certificate: VerificationCertificate,
}

/// Builds and verifies `family` for every `γ` in `gammas` and
/// `3γ ≤ n ≤ 3γ + extra`, checking sizes against the family's bound.
pub fn sweep(
    family: Family,
    gammas: std::ops::RangeInclusive<u64>,
    extra: u64,
    exec: Execution,
) -> Result<Vec<SweepRow>, ConstructionError> {
    let params: Vec<(u64, u64)> = gammas
        .flat_map(|g| (3 * g..=3 * g + extra).map(move |n| (n, g)))
        .collect();
    map_ordered(params, exec, |(n, gamma)| {
        let (built, bound) = match family {
            Family::Bipartite => (construct_bipartite(n, gamma)?, bounds::bipartite_bound(n, gamma)?),
            Family::Fischermann => (construct_fischermann(n, gamma)?, bounds::fischermann_bound(n, gamma)?),
            Family::Star => (construct_star(n)?, bounds::star_bound(n)?),
        };
        let certificate = verify_construction(&built.graph, &built.layout, bound);
        Ok(SweepRow { family, n, gamma, certificate })
    })
    .into_iter()
    .collect()
}
