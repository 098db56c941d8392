//! W-graphs over ℚ: vertex label sets `I_x ⊆ S` and rational edge weights μ.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::arith::{RatFun, Rational};
use crate::coxeter::{
    check_representation, validate_coxeter_matrix, CoxeterMatrix, GenSet, LinearChar, RelationViolation, Representation,
};
use crate::error::Result;
use crate::linalg::Matrix;
use crate::wdigraph::SubsetTable;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WGraph {
    pub cm: CoxeterMatrix,
    pub vertices: Vec<String>,
    pub labels: Vec<GenSet>,
    /// `μ(x, y)` for ordered vertex pairs; missing pairs weigh 0 and zero
    /// weights are never stored.
    mu: BTreeMap<(usize, usize), Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WGraphViolation {
    Coxeter(String),
    DuplicateVertex(String),
    LabelCount,
    LabelOutOfRange(String),
    WeightOutOfRange(usize, usize),
    Relation(RelationViolation),
}

impl fmt::Display for WGraphViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Coxeter(m) => write!(f, "coxeter: {m}"),
            Self::DuplicateVertex(v) => write!(f, "duplicate vertex {v}"),
            Self::LabelCount => write!(f, "label list length differs from vertex count"),
            Self::LabelOutOfRange(v) => write!(f, "label set of {v} is not a subset of S"),
            Self::WeightOutOfRange(x, y) => write!(f, "weight on unknown vertex pair #{x}, #{y}"),
            Self::Relation(r) => write!(f, "relation: {r}"),
        }
    }
}

impl WGraph {
    pub fn new(cm: CoxeterMatrix, vertices: Vec<String>, labels: Vec<GenSet>) -> Self {
        WGraph { cm, vertices, labels, mu: BTreeMap::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn mu(&self, x: usize, y: usize) -> Rational {
        self.mu.get(&(x, y)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set_mu(&mut self, x: usize, y: usize, value: Rational) {
        if value.is_zero() {
            self.mu.remove(&(x, y));
        } else {
            self.mu.insert((x, y), value);
        }
    }

    /// Nonzero weights in `(x, y)` order.
    pub fn weights(&self) -> impl Iterator<Item = ((usize, usize), &Rational)> {
        self.mu.iter().map(|(k, v)| (*k, v))
    }
}

/// `T_s x = -x` when `s ∈ I_x`; otherwise `T_s y = u²y + u·Σ_{z : s ∈ I_z} μ(z, y) z`.
pub fn wgraph_action(p: &WGraph) -> Representation {
    let n = p.vertex_count();
    let u = RatFun::u();
    let u2 = u.pow(2);
    let minus_one = RatFun::from_int(-1);
    let gens = (0..p.cm.rank())
        .map(|s| {
            let mut m = Matrix::zeros(n, n);
            for y in 0..n {
                if p.labels[y].contains(s) {
                    m[(y, y)] = minus_one.clone();
                    continue;
                }
                m[(y, y)] = u2.clone();
                for z in (0..n).filter(|&z| z != y && p.labels[z].contains(s)) {
                    let w = p.mu(z, y);
                    if !w.is_zero() {
                        m[(z, y)] = u.scale(&w);
                    }
                }
            }
            m
        })
        .collect();
    Representation::new(n, gens).expect("square by construction")
}

pub fn validate_wgraph(p: &WGraph) -> Vec<WGraphViolation> {
    let mut out: Vec<WGraphViolation> =
        validate_coxeter_matrix(&p.cm, false).into_iter().map(|v| WGraphViolation::Coxeter(v.to_string())).collect();
    for (i, v) in p.vertices.iter().enumerate() {
        if p.vertices[..i].contains(v) {
            out.push(WGraphViolation::DuplicateVertex(v.clone()));
        }
    }
    if p.labels.len() != p.vertex_count() {
        out.push(WGraphViolation::LabelCount);
        return out;
    }
    let full = p.cm.full_set();
    for (v, l) in p.vertices.iter().zip(&p.labels) {
        if !l.is_subset(full) {
            out.push(WGraphViolation::LabelOutOfRange(v.clone()));
        }
    }
    for &(x, y) in p.mu.keys() {
        if x >= p.vertex_count() || y >= p.vertex_count() {
            out.push(WGraphViolation::WeightOutOfRange(x, y));
        }
    }
    if !out.is_empty() {
        return out;
    }
    let rho = wgraph_action(p);
    out.extend(check_representation(&p.cm, &rho).violations.into_iter().map(WGraphViolation::Relation));
    out
}

/// `N_Ψ(J) = |{x : I_x = J}|`.
pub fn wgraph_counts(p: &WGraph) -> SubsetTable {
    SubsetTable::from_sets(p.labels.iter().copied())
}

/// Ψ_J: labels intersected with `J`, weights unchanged, over `(W_J, J)`.
pub fn restrict_wgraph(p: &WGraph, j: GenSet) -> Result<WGraph> {
    let (cm, keep) = p.cm.restrict(j)?;
    let labels = p
        .labels
        .iter()
        .map(|l| {
            let mut out = GenSet::EMPTY;
            for (new, &old) in keep.iter().enumerate() {
                if l.contains(old) {
                    out.insert(new);
                }
            }
            out
        })
        .collect();
    Ok(WGraph { cm, vertices: p.vertices.clone(), labels, mu: p.mu.clone() })
}

/// Outcome of [`ind_support_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndSupport {
    pub ind_dim: usize,
    pub empty_label_vertices: Vec<usize>,
}

impl IndSupport {
    /// A nonzero `ind` eigenspace forces some vertex with `I_x = ∅`.
    pub fn holds(&self) -> bool {
        self.ind_dim == 0 || !self.empty_label_vertices.is_empty()
    }
}

pub fn ind_support_check(p: &WGraph) -> Result<IndSupport> {
    let rho = wgraph_action(p);
    let ind_dim = rho.eigenspace_dim(&LinearChar::ind(p.cm.rank()))?;
    let empty_label_vertices = (0..p.vertex_count()).filter(|&x| p.labels[x].is_empty()).collect();
    Ok(IndSupport { ind_dim, empty_label_vertices })
}

/// Checks that `span{x : I_x ≠ ∅}` is stable under every `T_s`. On failure
/// returns `(generator, column, row)` of the first entry leaving the span.
pub fn m0_invariance_check(p: &WGraph) -> std::result::Result<(), (usize, usize, usize)> {
    let rho = wgraph_action(p);
    let inside = |x: usize| !p.labels[x].is_empty();
    for (s, m) in rho.gens.iter().enumerate() {
        for y in (0..p.vertex_count()).filter(|&y| inside(y)) {
            for z in 0..p.vertex_count() {
                if !inside(z) && !m[(z, y)].is_zero() {
                    return Err((s, y, z));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational;

    fn a1(mu: Rational) -> WGraph {
        let mut p = WGraph::new(CoxeterMatrix::a1(), vec!["x".into(), "y".into()], vec![GenSet::EMPTY, GenSet(1)]);
        p.set_mu(1, 0, mu);
        p
    }

    #[test]
    fn a1_action() {
        let rho = wgraph_action(&a1(rational(1, 1)));
        let expect = Matrix::parse_rows(&[&["u^2", "0"], &["u", "-1"]]).unwrap();
        assert_eq!(rho.gens[0], expect);
        for mu in [rational(0, 1), rational(1, 1), rational(-7, 3)] {
            assert!(validate_wgraph(&a1(mu)).is_empty());
        }
    }

    #[test]
    fn full_label_spans_sgn_line() {
        let cm = CoxeterMatrix::dihedral(3);
        let p = WGraph::new(cm, vec!["x".into()], vec![GenSet(3)]);
        let rho = wgraph_action(&p);
        for m in &rho.gens {
            assert_eq!(m, &Matrix::scalar(1, &RatFun::from_int(-1)));
        }
        assert_eq!(rho.eigenspace_dim(&LinearChar::sgn(2)).unwrap(), 1);
    }

    #[test]
    fn zero_weights_give_scalar_action() {
        let cm = CoxeterMatrix::dihedral(3);
        let p = WGraph::new(cm, vec!["a".into(), "b".into(), "c".into()], vec![GenSet::EMPTY; 3]);
        let rho = wgraph_action(&p);
        for m in &rho.gens {
            assert_eq!(m, &Matrix::scalar(3, &RatFun::u().pow(2)));
        }
        assert!(validate_wgraph(&p).is_empty());
        assert_eq!(wgraph_counts(&p).get(GenSet::EMPTY), 3);
    }

    #[test]
    fn random_weights_break_braid() {
        // m = 3, x labelled {s}, y labelled {t}; only μ = 1 in both directions
        // yields the reflection representation.
        let cm = CoxeterMatrix::dihedral(3);
        let mut p = WGraph::new(cm, vec!["x".into(), "y".into()], vec![GenSet(1), GenSet(2)]);
        p.set_mu(0, 1, rational(1, 1));
        p.set_mu(1, 0, rational(1, 1));
        assert!(validate_wgraph(&p).is_empty());
        p.set_mu(1, 0, rational(5, 7));
        let v = validate_wgraph(&p);
        assert!(matches!(v[..], [WGraphViolation::Relation(RelationViolation::Braid { .. })]));
    }

    #[test]
    fn counts_and_restriction() {
        let p = a1(rational(1, 1));
        let c = wgraph_counts(&p);
        assert_eq!((c.get(GenSet::EMPTY), c.get(GenSet(1))), (1, 1));
        assert_eq!(restrict_wgraph(&p, GenSet(1)).unwrap(), p);
        let r = restrict_wgraph(&p, GenSet::EMPTY).unwrap();
        assert!(r.labels.iter().all(|l| l.is_empty()));
        assert!(restrict_wgraph(&p, GenSet(2)).is_err());
    }

    #[test]
    fn ind_support() {
        let s = ind_support_check(&a1(rational(1, 1))).unwrap();
        assert_eq!(s.ind_dim, 1);
        assert!(s.holds());
        let single = WGraph::new(CoxeterMatrix::a1(), vec!["x".into()], vec![GenSet(1)]);
        let s = ind_support_check(&single).unwrap();
        assert_eq!(s.ind_dim, 0);
        assert!(s.holds());
    }

    #[test]
    fn ind_eigenvector_coefficient() {
        // v = x + c·y with T_s v = u² v forces c = u·μ/(u²+1)
        let mu = rational(3, 2);
        let rho = wgraph_action(&a1(mu.clone()));
        let u = RatFun::u();
        let c = u.scale(&mu).checked_div(&(&u.pow(2) + &RatFun::one())).unwrap();
        let v = vec![RatFun::one(), c];
        let image = rho.gens[0].mat_vec(&v).unwrap();
        let expect: Vec<RatFun> = v.iter().map(|x| x * &u.pow(2)).collect();
        assert_eq!(image, expect);
    }

    #[test]
    fn m0_invariance() {
        assert_eq!(m0_invariance_check(&a1(rational(1, 1))), Ok(()));
        let cm = CoxeterMatrix::dihedral(3);
        let p = WGraph::new(cm, vec!["x".into(), "y".into()], vec![GenSet(1), GenSet(3)]);
        assert_eq!(m0_invariance_check(&p), Ok(()));
    }
}
