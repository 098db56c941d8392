//! W-digraphs: S-labelled solid/dashed directed graphs whose vertex span is
//! an H-module, together with their combinatorial invariants.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use crate::arith::RatFun;
use crate::coxeter::{
    check_representation, validate_coxeter_matrix, CoxeterMatrix, GenSet, RelationViolation, Representation,
};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeKind {
    Solid,
    Dashed,
}

impl EdgeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeKind::Solid => "solid",
            EdgeKind::Dashed => "dashed",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub gen: usize,
    pub kind: EdgeKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WDigraph {
    pub cm: CoxeterMatrix,
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
}

/// Sparse table `J ↦ N(J)`; absent keys count zero.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SubsetTable(BTreeMap<GenSet, usize>);

impl SubsetTable {
    pub fn from_sets(sets: impl IntoIterator<Item = GenSet>) -> Self {
        let mut t = BTreeMap::new();
        for s in sets {
            *t.entry(s).or_insert(0) += 1;
        }
        SubsetTable(t)
    }

    pub fn get(&self, j: GenSet) -> usize {
        self.0.get(&j).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    /// `Σ_{J ⊆ K} N(K)`.
    pub fn sum_over_supersets(&self, j: GenSet) -> usize {
        self.0.iter().filter(|(k, _)| j.is_subset(**k)).map(|(_, n)| n).sum()
    }

    /// Nonzero entries ordered by subset size, then lexicographically.
    pub fn sorted(&self) -> Vec<(GenSet, usize)> {
        let mut v: Vec<(GenSet, usize)> = self.0.iter().map(|(k, n)| (*k, *n)).collect();
        v.sort_by_key(|(k, _)| k.sort_key());
        v
    }
}

/// In-sets of every vertex and the counts `N_Γ(J)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InProfile {
    pub in_sets: Vec<GenSet>,
    pub counts: SubsetTable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DigraphViolation {
    Coxeter(String),
    DuplicateVertex(String),
    EdgeOutOfRange(usize),
    SelfLoop(usize),
    DuplicateEdge(usize),
    /// `(vertex, generator, number of incident edges)`; must be exactly one.
    Incidence(String, String, usize),
    Relation(RelationViolation),
}

impl fmt::Display for DigraphViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Coxeter(m) => write!(f, "coxeter: {m}"),
            Self::DuplicateVertex(v) => write!(f, "duplicate vertex {v}"),
            Self::EdgeOutOfRange(e) => write!(f, "edge #{e} refers to an unknown vertex or generator"),
            Self::SelfLoop(e) => write!(f, "edge #{e} is a loop"),
            Self::DuplicateEdge(e) => write!(f, "edge #{e} repeats endpoints and label of an earlier edge"),
            Self::Incidence(v, g, n) => write!(f, "vertex {v} has {n} incident {g}-edges (need exactly 1)"),
            Self::Relation(r) => write!(f, "relation: {r}"),
        }
    }
}

/// Direction in which a walk traverses an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Reverse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WalkStep {
    pub edge: usize,
    pub dir: Direction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    /// Component index of each vertex; components are numbered by their least vertex.
    pub component_of: Vec<usize>,
    pub members: Vec<Vec<usize>>,
    pub acyclic: Vec<bool>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.members.len()
    }

    pub fn acyclic_count(&self) -> usize {
        self.acyclic.iter().filter(|&&a| a).count()
    }
}

impl WDigraph {
    pub fn new(cm: CoxeterMatrix, vertices: Vec<String>, edges: Vec<Edge>) -> Self {
        WDigraph { cm, vertices, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    fn structural_violations(&self) -> Vec<DigraphViolation> {
        let mut out = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if self.vertices[..i].contains(v) {
                out.push(DigraphViolation::DuplicateVertex(v.clone()));
            }
        }
        let n = self.vertex_count();
        let r = self.cm.rank();
        let mut incident = vec![vec![0usize; r]; n];
        for (k, e) in self.edges.iter().enumerate() {
            if e.src >= n || e.dst >= n || e.gen >= r {
                out.push(DigraphViolation::EdgeOutOfRange(k));
                continue;
            }
            if e.src == e.dst {
                out.push(DigraphViolation::SelfLoop(k));
                continue;
            }
            let dup = self.edges[..k]
                .iter()
                .any(|f| f.gen == e.gen && ((f.src, f.dst) == (e.src, e.dst) || (f.src, f.dst) == (e.dst, e.src)));
            if dup {
                out.push(DigraphViolation::DuplicateEdge(k));
            }
            incident[e.src][e.gen] += 1;
            incident[e.dst][e.gen] += 1;
        }
        for (v, counts) in incident.iter().enumerate() {
            for (g, &c) in counts.iter().enumerate() {
                if c != 1 {
                    out.push(DigraphViolation::Incidence(self.vertices[v].clone(), self.cm.name(g).to_string(), c));
                }
            }
        }
        out
    }

    pub fn is_structurally_valid(&self) -> bool {
        self.structural_violations().is_empty() && validate_coxeter_matrix(&self.cm, false).is_empty()
    }

    /// The edge labelled `g` incident to vertex `v`, if any.
    pub fn edge_at(&self, v: usize, g: usize) -> Option<usize> {
        self.edges.iter().position(|e| e.gen == g && (e.src == v || e.dst == v))
    }

    /// Undirected adjacency: for each vertex, `(edge, direction, neighbour)` in edge order.
    fn adjacency(&self) -> Vec<Vec<(usize, Direction, usize)>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for (k, e) in self.edges.iter().enumerate() {
            adj[e.src].push((k, Direction::Forward, e.dst));
            adj[e.dst].push((k, Direction::Reverse, e.src));
        }
        adj
    }
}

/// Structural axioms plus the Hecke relations on the action matrices.
pub fn validate_digraph(g: &WDigraph) -> Vec<DigraphViolation> {
    let mut out: Vec<DigraphViolation> =
        validate_coxeter_matrix(&g.cm, false).into_iter().map(|v| DigraphViolation::Coxeter(v.to_string())).collect();
    out.extend(g.structural_violations());
    if !out.is_empty() {
        return out;
    }
    let rho = digraph_action(g).expect("structure checked above");
    out.extend(check_representation(&g.cm, &rho).violations.into_iter().map(DigraphViolation::Relation));
    out
}

/// Column images `(T_s α, T_s β)` of one edge block, as coefficient pairs
/// `[(α, β) of T_s α, (α, β) of T_s β]`.
pub fn edge_block(kind: EdgeKind) -> [[RatFun; 2]; 2] {
    let u = RatFun::u();
    let u2 = u.pow(2);
    let one = RatFun::one();
    match kind {
        // T_s α = β, T_s β = u²α + (u²-1)β
        EdgeKind::Solid => [[RatFun::zero(), one.clone()], [u2.clone(), &u2 - &one]],
        // T_s α = uα + (u+1)β, T_s β = (u²-u)α + (u²-u-1)β
        EdgeKind::Dashed => {
            let u2mu = &u2 - &u;
            [[u.clone(), &u + &one], [u2mu.clone(), &u2mu - &one]]
        }
    }
}

/// Matrices of `T_s` on the vertex basis, one per generator.
pub fn digraph_action(g: &WDigraph) -> Result<Representation> {
    if let Some(v) = g.structural_violations().first() {
        return Err(Error::Structural(v.to_string()));
    }
    let n = g.vertex_count();
    let mut mats = vec![Matrix::zeros(n, n); g.cm.rank()];
    for e in &g.edges {
        let [img_a, img_b] = edge_block(e.kind);
        let m = &mut mats[e.gen];
        m[(e.src, e.src)] = img_a[0].clone();
        m[(e.dst, e.src)] = img_a[1].clone();
        m[(e.src, e.dst)] = img_b[0].clone();
        m[(e.dst, e.dst)] = img_b[1].clone();
    }
    Representation::new(n, mats)
}

/// `In(β)` for every vertex and the table `N_Γ(J)`.
pub fn in_profile(g: &WDigraph) -> InProfile {
    let mut in_sets = vec![GenSet::EMPTY; g.vertex_count()];
    for e in &g.edges {
        in_sets[e.dst].insert(e.gen);
    }
    let counts = SubsetTable::from_sets(in_sets.iter().copied());
    InProfile { in_sets, counts }
}

pub fn sources(g: &WDigraph) -> Vec<usize> {
    let p = in_profile(g);
    (0..g.vertex_count()).filter(|&v| p.in_sets[v].is_empty()).collect()
}

pub fn sinks(g: &WDigraph) -> Vec<usize> {
    let p = in_profile(g);
    let full = g.cm.full_set();
    (0..g.vertex_count()).filter(|&v| p.in_sets[v] == full).collect()
}

/// Undirected connected components, each flagged acyclic when its directed
/// edges admit a topological order.
pub fn components_and_acyclicity(g: &WDigraph) -> Components {
    let n = g.vertex_count();
    let adj = g.adjacency();
    let mut component_of = vec![usize::MAX; n];
    let mut members = Vec::new();
    for start in 0..n {
        if component_of[start] != usize::MAX {
            continue;
        }
        let c = members.len();
        let mut comp = vec![start];
        component_of[start] = c;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &(_, _, w) in &adj[v] {
                if component_of[w] == usize::MAX {
                    component_of[w] = c;
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        members.push(comp);
    }

    // Kahn's algorithm per component.
    let mut indeg = vec![0usize; n];
    for e in &g.edges {
        indeg[e.dst] += 1;
    }
    let mut removed = vec![0usize; members.len()];
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    while let Some(v) = queue.pop_front() {
        removed[component_of[v]] += 1;
        for e in g.edges.iter().filter(|e| e.src == v) {
            indeg[e.dst] -= 1;
            if indeg[e.dst] == 0 {
                queue.push_back(e.dst);
            }
        }
    }
    let acyclic = members.iter().zip(&removed).map(|(m, &r)| m.len() == r).collect();
    Components { component_of, members, acyclic }
}

/// Γ_J: same vertices, only edges labelled in `J`, over `(W_J, J)`.
pub fn restrict_digraph(g: &WDigraph, j: GenSet) -> Result<WDigraph> {
    let (cm, keep) = g.cm.restrict(j)?;
    let edges = g
        .edges
        .iter()
        .filter_map(|e| keep.iter().position(|&k| k == e.gen).map(|new| Edge { gen: new, ..*e }))
        .collect();
    Ok(WDigraph { cm, vertices: g.vertices.clone(), edges })
}

/// Coefficient ratio `λ_next / λ_prev` forced on a `T_s = -1` eigenvector
/// when a walk crosses an edge of the given kind in the given direction.
pub fn step_ratio(kind: EdgeKind, dir: Direction) -> RatFun {
    let u = RatFun::u();
    let u2 = u.pow(2);
    let forward = match kind {
        EdgeKind::Solid => u2.inv().expect("u^2 != 0"),
        EdgeKind::Dashed => (&u + &RatFun::one()).checked_div(&(&u2 - &u)).expect("u^2-u != 0"),
    };
    let r = match dir {
        Direction::Forward => forward,
        Direction::Reverse => forward.inv().expect("nonzero"),
    };
    -r
}

fn step_endpoints(g: &WDigraph, s: &WalkStep) -> Result<(usize, usize)> {
    let e = g.edges.get(s.edge).ok_or_else(|| Error::Invalid(format!("no edge #{}", s.edge)))?;
    Ok(match s.dir {
        Direction::Forward => (e.src, e.dst),
        Direction::Reverse => (e.dst, e.src),
    })
}

/// Product of the step ratios along a walk; the empty walk gives 1.
pub fn walk_ratio(g: &WDigraph, walk: &[WalkStep]) -> Result<RatFun> {
    let mut acc = RatFun::one();
    let mut at: Option<usize> = None;
    for s in walk {
        let (from, to) = step_endpoints(g, s)?;
        if at.is_some_and(|v| v != from) {
            return Err(Error::Invalid(format!("walk is disconnected at edge #{}", s.edge)));
        }
        at = Some(to);
        acc = acc * step_ratio(g.edges[s.edge].kind, s.dir);
    }
    Ok(acc)
}

/// Per-kind traversal counts of a walk: `[solid fwd, solid rev, dashed fwd, dashed rev]`.
pub fn walk_counts(g: &WDigraph, walk: &[WalkStep]) -> [usize; 4] {
    let mut c = [0; 4];
    for s in walk {
        let k = match (g.edges[s.edge].kind, s.dir) {
            (EdgeKind::Solid, Direction::Forward) => 0,
            (EdgeKind::Solid, Direction::Reverse) => 1,
            (EdgeKind::Dashed, Direction::Forward) => 2,
            (EdgeKind::Dashed, Direction::Reverse) => 3,
        };
        c[k] += 1;
    }
    c
}

/// Every closed walk of length `1..=max_len` in the underlying undirected
/// multigraph, starting from each vertex in turn.
pub fn closed_walks(g: &WDigraph, max_len: usize) -> Vec<Vec<WalkStep>> {
    fn extend(
        adj: &[Vec<(usize, Direction, usize)>],
        start: usize,
        at: usize,
        max_len: usize,
        path: &mut Vec<WalkStep>,
        out: &mut Vec<Vec<WalkStep>>,
    ) {
        if !path.is_empty() && at == start {
            out.push(path.clone());
        }
        if path.len() == max_len {
            return;
        }
        for &(edge, dir, next) in &adj[at] {
            path.push(WalkStep { edge, dir });
            extend(adj, start, next, max_len, path, out);
            path.pop();
        }
    }
    let adj = g.adjacency();
    let mut out = Vec::new();
    for v in 0..g.vertex_count() {
        extend(&adj, v, v, max_len, &mut Vec::new(), &mut out);
    }
    out
}

/// Number of connected components that carry a nonzero `sgn` eigenvector,
/// found by propagating coefficients along a BFS spanning tree and checking
/// the remaining edges for consistency.
pub fn sgn_mult_combinatorial(g: &WDigraph) -> usize {
    let comps = components_and_acyclicity(g);
    let adj = g.adjacency();
    let mut coeff: Vec<Option<RatFun>> = vec![None; g.vertex_count()];
    let mut consistent = 0;
    for members in &comps.members {
        let root = members[0];
        coeff[root] = Some(RatFun::one());
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let cv = coeff[v].clone().expect("visited");
            for &(edge, dir, w) in &adj[v] {
                if coeff[w].is_none() {
                    coeff[w] = Some(&cv * &step_ratio(g.edges[edge].kind, dir));
                    queue.push_back(w);
                }
            }
        }
        let ok = g.edges.iter().filter(|e| comps.component_of[e.src] == comps.component_of[root]).all(|e| {
            let src = coeff[e.src].as_ref().expect("visited");
            let dst = coeff[e.dst].as_ref().expect("visited");
            &(src * &step_ratio(e.kind, Direction::Forward)) == dst
        });
        if ok {
            consistent += 1;
        }
    }
    consistent
}

/// Number of connected components; an `ind` eigenvector is exactly a
/// function constant on components.
pub fn ind_mult_combinatorial(g: &WDigraph) -> usize {
    components_and_acyclicity(g).count()
}
