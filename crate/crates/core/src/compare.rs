//! Cross-structure analysis: invariant reports, isomorphism certificates and
//! the acyclicity theorem pipeline.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{RatFun, Rational};
use crate::coxeter::{char_trace, CoxeterMatrix, GenSet, LinearChar, Order, Representation, Word};
use crate::error::{Error, Result};
use crate::linalg::{det_bareiss, hom_space, Matrix};
use crate::wdigraph::{
    components_and_acyclicity, digraph_action, in_profile, ind_mult_combinatorial, restrict_digraph,
    sgn_mult_combinatorial, sources, SubsetTable, WDigraph,
};
use crate::wgraph::{ind_support_check, m0_invariance_check, restrict_wgraph, wgraph_action, wgraph_counts, WGraph};

/// Either kind of structure carrying an H-module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    Digraph(WDigraph),
    WGraph(WGraph),
}

impl Structure {
    pub fn cm(&self) -> &CoxeterMatrix {
        match self {
            Structure::Digraph(g) => &g.cm,
            Structure::WGraph(p) => &p.cm,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Digraph(_) => "wdigraph",
            Structure::WGraph(_) => "wgraph",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Structure::Digraph(g) => g.vertex_count(),
            Structure::WGraph(p) => p.vertex_count(),
        }
    }

    pub fn representation(&self) -> Result<Representation> {
        match self {
            Structure::Digraph(g) => digraph_action(g),
            Structure::WGraph(p) => Ok(wgraph_action(p)),
        }
    }

    /// `N_Γ` from In-sets, or `N_Ψ` from labels.
    pub fn counts(&self) -> SubsetTable {
        match self {
            Structure::Digraph(g) => in_profile(g).counts,
            Structure::WGraph(p) => wgraph_counts(p),
        }
    }

    pub fn restrict(&self, j: GenSet) -> Result<Structure> {
        Ok(match self {
            Structure::Digraph(g) => Structure::Digraph(restrict_digraph(g, j)?),
            Structure::WGraph(p) => Structure::WGraph(restrict_wgraph(p, j)?),
        })
    }
}

impl From<WDigraph> for Structure {
    fn from(g: WDigraph) -> Self {
        Structure::Digraph(g)
    }
}

impl From<WGraph> for Structure {
    fn from(p: WGraph) -> Self {
        Structure::WGraph(p)
    }
}

/// Invariants of one structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideInvariants {
    pub kind: &'static str,
    pub dimension: usize,
    /// Digraphs only.
    pub components: Option<usize>,
    pub acyclic_components: Option<usize>,
    pub sources: Option<usize>,
    pub counts: SubsetTable,
    pub ind_linalg: usize,
    pub sgn_linalg: usize,
    /// Component count for digraphs; not defined for W-graphs.
    pub ind_comb: Option<usize>,
    /// Components with a consistent `sgn` propagation for digraphs;
    /// `N_Ψ(S)` for W-graphs when every order is finite.
    pub sgn_comb: Option<usize>,
    /// `⟨M|_{H_J}, sgn⟩` for every `J ⊆ S`, in subset order.
    pub sgn_by_subset: Vec<(GenSet, usize)>,
    pub traces: Vec<(Word, RatFun)>,
}

pub fn side_invariants(x: &Structure, max_word_len: usize) -> Result<SideInvariants> {
    let cm = x.cm();
    let rho = x.representation()?;
    let rank = cm.rank();
    let finite = cm.all_finite();
    let ind_linalg = rho.eigenspace_dim(&LinearChar::ind(rank))?;
    let sgn_linalg = rho.eigenspace_dim(&LinearChar::sgn(rank))?;
    let counts = x.counts();
    let (components, acyclic_components, src, ind_comb, sgn_comb) = match x {
        Structure::Digraph(g) => {
            let c = components_and_acyclicity(g);
            (
                Some(c.count()),
                Some(c.acyclic_count()),
                Some(sources(g).len()),
                Some(ind_mult_combinatorial(g)),
                Some(sgn_mult_combinatorial(g)),
            )
        }
        Structure::WGraph(_) => (None, None, None, None, finite.then(|| counts.get(cm.full_set()))),
    };
    let mut sgn_by_subset = Vec::new();
    for j in GenSet::all_subsets(rank) {
        let keep: Vec<usize> = j.indices().collect();
        let sub = rho.restrict(&keep);
        sgn_by_subset.push((j, sub.eigenspace_dim(&LinearChar::sgn(keep.len()))?));
    }
    let traces = Word::all_up_to(rank, max_word_len)
        .into_iter()
        .map(|w| char_trace(&rho, &w).map(|t| (w, t)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SideInvariants {
        kind: x.kind(),
        dimension: x.dim(),
        components,
        acyclic_components,
        sources: src,
        counts,
        ind_linalg,
        sgn_linalg,
        ind_comb,
        sgn_comb,
        sgn_by_subset,
        traces,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub cm: CoxeterMatrix,
    pub sides: [SideInvariants; 2],
    /// Each entry is a definite witness of non-isomorphism.
    pub mismatches: Vec<String>,
}

impl InvariantReport {
    pub fn agrees(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Default maximal word length for character traces.
pub const DEFAULT_TRACE_LENGTH: usize = 4;

/// Compares module invariants of two structures over the same Coxeter
/// matrix. Dimension, `ind`/`sgn` multiplicities (also of every parabolic
/// restriction) and traces are isomorphism invariants outright. The `N`
/// tables are compared only when every order is finite: there they are
/// determined by the restricted `sgn` multiplicities.
pub fn invariant_report(a: &Structure, b: &Structure, max_word_len: usize) -> Result<InvariantReport> {
    if a.cm() != b.cm() {
        return Err(Error::CoxeterMismatch);
    }
    let cm = a.cm().clone();
    let sa = side_invariants(a, max_word_len)?;
    let sb = side_invariants(b, max_word_len)?;
    let mut mismatches = Vec::new();
    if sa.dimension != sb.dimension {
        mismatches.push(format!("dimension {} != {}", sa.dimension, sb.dimension));
    }
    if sa.ind_linalg != sb.ind_linalg {
        mismatches.push(format!("ind multiplicity {} != {}", sa.ind_linalg, sb.ind_linalg));
    }
    if sa.sgn_linalg != sb.sgn_linalg {
        mismatches.push(format!("sgn multiplicity {} != {}", sa.sgn_linalg, sb.sgn_linalg));
    }
    for ((j, x), (_, y)) in sa.sgn_by_subset.iter().zip(&sb.sgn_by_subset) {
        if x != y {
            mismatches.push(format!("sgn multiplicity on {} {} != {}", cm.format_set(*j), x, y));
        }
    }
    if cm.all_finite() {
        for j in GenSet::all_subsets(cm.rank()) {
            let (x, y) = (sa.counts.get(j), sb.counts.get(j));
            if x != y {
                mismatches.push(format!("N {} {} != {}", cm.format_set(j), x, y));
            }
        }
    }
    for ((w, x), (_, y)) in sa.traces.iter().zip(&sb.traces) {
        if x != y {
            mismatches.push(format!("trace T_{} {} != {}", w.render(&cm), x, y));
        }
    }
    Ok(InvariantReport { cm, sides: [sa, sb], mismatches })
}

/// Invertible intertwiner `A` with `ρ_b(T_s)·A = A·ρ_a(T_s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoCertificate {
    pub matrix: Matrix,
    pub det: RatFun,
    pub seed: u64,
    /// Coefficients of the hom-space basis used to build `matrix`.
    pub coefficients: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoOutcome {
    Certificate(IsoCertificate),
    NotIsomorphic(String),
    Inconclusive { tries: usize },
}

/// Coefficients for attempt `k`: all ones first, then seeded draws from
/// `{-r, …, r}` with `r = 3 + k - 1` widening per retry.
fn coefficients(rng: &mut ChaCha8Rng, attempt: usize, k: usize) -> Vec<BigInt> {
    if attempt == 0 {
        return vec![BigInt::from(1); k];
    }
    let r = 3 + attempt as i64 - 1;
    (0..k).map(|_| BigInt::from(rng.gen_range(-r..=r))).collect()
}

pub fn find_iso(a: &Structure, b: &Structure, seed: u64, tries: usize) -> Result<IsoOutcome> {
    if a.cm() != b.cm() {
        return Err(Error::CoxeterMismatch);
    }
    if a.dim() != b.dim() {
        return Ok(IsoOutcome::NotIsomorphic(format!("dimension {} != {}", a.dim(), b.dim())));
    }
    let ra = a.representation()?;
    let rb = b.representation()?;
    let hom = hom_space(ra.dim, &ra.gens, rb.dim, &rb.gens)?;
    if a.dim() > 0 && hom.dim() == 0 {
        return Ok(IsoOutcome::NotIsomorphic("zero hom space".into()));
    }
    let basis = hom.basis_matrices();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..tries {
        let coeffs = coefficients(&mut rng, attempt, basis.len());
        let mut m = Matrix::zeros(rb.dim, ra.dim);
        for (c, bm) in coeffs.iter().zip(&basis) {
            m = m.checked_add(&bm.scale(&RatFun::from_rational(Rational::from_integer(c.clone()))))?;
        }
        let det = det_bareiss(&m)?;
        if !det.is_zero() {
            return Ok(IsoOutcome::Certificate(IsoCertificate { matrix: m, det, seed, coefficients: coeffs }));
        }
    }
    Ok(IsoOutcome::Inconclusive { tries })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertViolation {
    Shape,
    Intertwining { generator: String, row: usize, col: usize },
    Singular,
    RecordedDeterminant,
}

impl std::fmt::Display for CertViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Shape => write!(f, "certificate matrix has the wrong shape"),
            Self::Intertwining { generator, row, col } => {
                write!(f, "intertwining fails for T_{generator} at entry ({row},{col})")
            }
            Self::Singular => write!(f, "certificate matrix is singular"),
            Self::RecordedDeterminant => write!(f, "recorded determinant does not match"),
        }
    }
}

/// Exact re-check of a certificate from `a` to `b`.
pub fn verify_certificate(a: &Structure, b: &Structure, cert: &IsoCertificate) -> Result<Vec<CertViolation>> {
    let ra = a.representation()?;
    let rb = b.representation()?;
    let m = &cert.matrix;
    if m.rows() != rb.dim || m.cols() != ra.dim || ra.gens.len() != rb.gens.len() {
        return Ok(vec![CertViolation::Shape]);
    }
    let mut out = Vec::new();
    for (s, (ga, gb)) in ra.gens.iter().zip(&rb.gens).enumerate() {
        let lhs = gb.checked_mul(m)?;
        let rhs = m.checked_mul(ga)?;
        if let Some(k) = (0..lhs.rows() * lhs.cols()).find(|&k| {
            let (i, j) = (k / lhs.cols(), k % lhs.cols());
            lhs[(i, j)] != rhs[(i, j)]
        }) {
            out.push(CertViolation::Intertwining {
                generator: a.cm().name(s).to_string(),
                row: k / lhs.cols(),
                col: k % lhs.cols(),
            });
        }
    }
    let det = det_bareiss(m)?;
    if det.is_zero() {
        out.push(CertViolation::Singular);
    } else if det != cert.det {
        out.push(CertViolation::RecordedDeterminant);
    }
    Ok(out)
}

/// One named assertion of the theorem pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport {
    pub checks: Vec<Check>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    fn expect_eq(&mut self, name: impl Into<String>, x: usize, y: usize) {
        self.push(name, x == y, format!("{x} = {y}"));
    }
}

/// Given a verified isomorphism `M(Γ) ≅ M(Ψ)` (certificate from `g` to `p`),
/// asserts `N_Γ(J) = N_Ψ(J)` for every `J`, that Γ is acyclic, and the
/// intermediate identities of the argument.
pub fn theorem_check(g: &WDigraph, p: &WGraph, cert: &IsoCertificate) -> Result<TheoremReport> {
    if g.cm != p.cm {
        return Err(Error::CoxeterMismatch);
    }
    for (i, j) in g.cm.pairs() {
        if !matches!(g.cm.order(i, j), Some(Order::Finite(_))) {
            return Err(Error::InfiniteOrder(g.cm.name(i).into(), g.cm.name(j).into()));
        }
    }
    let sg = Structure::Digraph(g.clone());
    let sp = Structure::WGraph(p.clone());
    let violations = verify_certificate(&sg, &sp, cert)?;
    if let Some(v) = violations.first() {
        return Err(Error::Certificate(v.to_string()));
    }

    let cm = &g.cm;
    let rank = cm.rank();
    let full = cm.full_set();
    let rho_g = digraph_action(g)?;
    let rho_p = wgraph_action(p);
    let ng = in_profile(g).counts;
    let np = wgraph_counts(p);
    let comps = components_and_acyclicity(g);
    let mut r = TheoremReport { checks: Vec::new() };

    for j in GenSet::all_subsets(rank) {
        r.expect_eq(format!("N_digraph{0} = N_wgraph{0}", cm.format_set(j)), ng.get(j), np.get(j));
    }
    r.push(
        "digraph is acyclic",
        comps.acyclic_count() == comps.count(),
        format!("{} of {} components acyclic", comps.acyclic_count(), comps.count()),
    );

    let sgn_g = rho_g.eigenspace_dim(&LinearChar::sgn(rank))?;
    let sgn_p = rho_p.eigenspace_dim(&LinearChar::sgn(rank))?;
    r.expect_eq("N_digraph(S) = <M(digraph), sgn>", ng.get(full), sgn_g);
    r.expect_eq("<M(digraph), sgn> = <M(wgraph), sgn>", sgn_g, sgn_p);
    r.expect_eq("<M(wgraph), sgn> = N_wgraph(S)", sgn_p, np.get(full));
    r.expect_eq("sinks = acyclic components", ng.get(full), comps.acyclic_count());

    for j in GenSet::all_subsets(rank) {
        let name = cm.format_set(j);
        let gj = restrict_digraph(g, j)?;
        let pj = restrict_wgraph(p, j)?;
        let top = gj.cm.full_set();
        let ngj = in_profile(&gj).counts.get(top);
        let npj = wgraph_counts(&pj).get(top);
        r.expect_eq(
            format!("N_digraph_J(J) = sum over K >= J of N_digraph(K), J = {name}"),
            ngj,
            ng.sum_over_supersets(j),
        );
        r.expect_eq(
            format!("N_wgraph_J(J) = sum over K >= J of N_wgraph(K), J = {name}"),
            npj,
            np.sum_over_supersets(j),
        );
        r.expect_eq(format!("N_digraph_J(J) = N_wgraph_J(J), J = {name}"), ngj, npj);
    }

    let ind_g = rho_g.eigenspace_dim(&LinearChar::ind(rank))?;
    let ind_p = rho_p.eigenspace_dim(&LinearChar::ind(rank))?;
    r.expect_eq("components = <M(digraph), ind>", comps.count(), ind_g);
    r.expect_eq("<M(digraph), ind> = <M(wgraph), ind>", ind_g, ind_p);
    let empty = np.get(GenSet::EMPTY);
    r.push("<M(wgraph), ind> <= N_wgraph({})", ind_p <= empty, format!("{ind_p} <= {empty}"));
    let support = ind_support_check(p)?;
    r.push(
        "nonzero ind eigenspace forces a vertex with empty label",
        support.holds(),
        format!("ind dim {}, empty-label vertices {}", support.ind_dim, support.empty_label_vertices.len()),
    );
    r.push("span of vertices with nonempty label is a submodule", m0_invariance_check(p).is_ok(), String::new());
    let src = sources(g).len();
    r.push("sources >= components", src >= comps.count(), format!("{src} >= {}", comps.count()));
    Ok(r)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TheoremOutcome {
    /// Invariants already differ; the pair is not isomorphic.
    Rejected(Box<InvariantReport>),
    NoCertificate(IsoOutcome),
    Checked {
        cert: IsoCertificate,
        report: TheoremReport,
    },
}

/// Invariant screen, then [`find_iso`], then [`theorem_check`].
pub fn run_theorem(g: &WDigraph, p: &WGraph, seed: u64, tries: usize) -> Result<TheoremOutcome> {
    let a = Structure::Digraph(g.clone());
    let b = Structure::WGraph(p.clone());
    let inv = invariant_report(&a, &b, DEFAULT_TRACE_LENGTH)?;
    if !inv.agrees() {
        return Ok(TheoremOutcome::Rejected(Box::new(inv)));
    }
    match find_iso(&a, &b, seed, tries)? {
        IsoOutcome::Certificate(cert) => {
            let report = theorem_check(g, p, &cert)?;
            Ok(TheoremOutcome::Checked { cert, report })
        }
        other => Ok(TheoremOutcome::NoCertificate(other)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational;
    use crate::builders::{a1_squared_digraph, a1_squared_wgraph, build_a1, build_a1_wgraph};
    use crate::wdigraph::EdgeKind;

    fn a1s() -> Structure {
        build_a1(EdgeKind::Solid).into()
    }

    fn a1w() -> Structure {
        build_a1_wgraph(rational(1, 1)).into()
    }

    fn line(c: RatFun) -> Structure {
        // single vertex W-graph realises ind (label ∅) or sgn (label {s})
        let label = if c.is_one() { GenSet::EMPTY } else { GenSet(1) };
        WGraph::new(CoxeterMatrix::a1(), vec!["x".into()], vec![label]).into()
    }

    #[test]
    fn report_examples() {
        assert!(invariant_report(&a1s(), &a1w(), 4).unwrap().agrees());
        let single = line(RatFun::one());
        let r = invariant_report(&a1s(), &single, 4).unwrap();
        assert!(r.mismatches[0].starts_with("dimension"));
        let d: Structure = build_a1(EdgeKind::Dashed).into();
        let r = invariant_report(&a1s(), &d, 4).unwrap();
        assert_eq!(r.sides[0].counts, r.sides[1].counts);
        assert_eq!(r.sides[0].traces[1].1, "u^2-1".parse().unwrap());
        assert!(r.agrees());
        let other: Structure = WGraph::new(CoxeterMatrix::new(["t"]), vec![], vec![]).into();
        assert_eq!(invariant_report(&a1s(), &other, 4), Err(Error::CoxeterMismatch));
    }

    #[test]
    fn iso_examples() {
        let IsoOutcome::Certificate(c) = find_iso(&a1s(), &a1s(), 0, 5).unwrap() else { panic!() };
        assert!(verify_certificate(&a1s(), &a1s(), &c).unwrap().is_empty());
        assert_eq!(c.coefficients, vec![BigInt::from(1); c.coefficients.len()]);

        let IsoOutcome::Certificate(c) = find_iso(&a1s(), &a1w(), 7, 10).unwrap() else { panic!() };
        assert!(!c.det.is_zero());
        assert!(verify_certificate(&a1s(), &a1w(), &c).unwrap().is_empty());

        let ind = line(RatFun::one());
        let sgn = line(-RatFun::one());
        assert_eq!(find_iso(&ind, &sgn, 0, 5).unwrap(), IsoOutcome::NotIsomorphic("zero hom space".into()));
    }

    #[test]
    fn iso_is_reproducible() {
        let a: Structure = a1_squared_digraph(EdgeKind::Solid).into();
        let b: Structure = a1_squared_wgraph(rational(1, 1)).into();
        assert_eq!(find_iso(&a, &b, 42, 20).unwrap(), find_iso(&a, &b, 42, 20).unwrap());
    }

    #[test]
    fn tampered_certificates() {
        let IsoOutcome::Certificate(c) = find_iso(&a1s(), &a1w(), 1, 10).unwrap() else { panic!() };
        let mut bent = c.clone();
        bent.matrix[(0, 1)] = &bent.matrix[(0, 1)] + &RatFun::one();
        let v = verify_certificate(&a1s(), &a1w(), &bent).unwrap();
        assert!(v.iter().any(|x| matches!(x, CertViolation::Intertwining { .. })));

        let mut singular = c.clone();
        singular.matrix = Matrix::zeros(2, 2);
        assert!(verify_certificate(&a1s(), &a1w(), &singular).unwrap().contains(&CertViolation::Singular));
    }

    #[test]
    fn theorem_on_a1_and_a1_squared() {
        let g = build_a1(EdgeKind::Solid);
        let p = build_a1_wgraph(rational(1, 1));
        let TheoremOutcome::Checked { report, .. } = run_theorem(&g, &p, 3, 10).unwrap() else { panic!() };
        assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());

        let g = a1_squared_digraph(EdgeKind::Solid);
        let p = a1_squared_wgraph(rational(1, 1));
        let TheoremOutcome::Checked { report, .. } = run_theorem(&g, &p, 3, 10).unwrap() else { panic!() };
        assert!(report.passed());
        assert_eq!(report.checks.iter().filter(|c| c.name.starts_with("N_digraph{")).count(), 4);
    }

    #[test]
    fn theorem_rejects_bad_input() {
        let g = build_a1(EdgeKind::Solid);
        let single = WGraph::new(CoxeterMatrix::a1(), vec!["x".into()], vec![GenSet::EMPTY]);
        assert!(matches!(run_theorem(&g, &single, 0, 5).unwrap(), TheoremOutcome::Rejected(_)));

        let p = build_a1_wgraph(rational(1, 1));
        let IsoOutcome::Certificate(mut c) = find_iso(&g.clone().into(), &p.clone().into(), 0, 5).unwrap() else {
            panic!()
        };
        c.matrix = Matrix::identity(2);
        assert!(matches!(theorem_check(&g, &p, &c), Err(Error::Certificate(_))));
    }
}
