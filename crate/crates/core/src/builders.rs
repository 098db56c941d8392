//! Deterministic constructors for known-valid structures.

use crate::arith::Rational;
use crate::coxeter::{CoxeterMatrix, GenSet, Order};
use crate::error::{Error, Result};
use crate::wdigraph::{validate_digraph, Edge, EdgeKind, WDigraph};
use crate::wgraph::{validate_wgraph, WGraph};

/// `S = {s}`, vertices `a, b`, one edge `a → b` of the given kind.
pub fn build_a1(kind: EdgeKind) -> WDigraph {
    WDigraph::new(CoxeterMatrix::a1(), vec!["a".into(), "b".into()], vec![Edge { src: 0, dst: 1, gen: 0, kind }])
}

/// The regular module of the dihedral group `I₂(m)`.
///
/// Vertices are the `2m` group elements named by reduced alternating words
/// in `s, t` (`e` for the identity, the longest element by its `s`-leading
/// word). There is a solid edge `w → ws` labelled `s` whenever `ws` is
/// longer than `w`.
pub fn build_dihedral_regular(m: u32) -> Result<WDigraph> {
    if m < 2 {
        return Err(Error::Invalid(format!("dihedral order {m} < 2")));
    }
    let m = m as usize;
    // element = (first letter, length); length 0 and length m are unique
    let word = |first: usize, len: usize| -> String {
        if len == 0 {
            return "e".into();
        }
        (0..len).map(|k| if (first + k).is_multiple_of(2) { 's' } else { 't' }).collect()
    };
    let mut elements: Vec<(usize, usize)> = vec![(0, 0)];
    for len in 1..m {
        elements.push((0, len));
        elements.push((1, len));
    }
    elements.push((0, m));
    let index = |first: usize, len: usize| -> usize {
        match len {
            0 => 0,
            l if l == m => 2 * m - 1,
            l => 2 * l - 1 + first,
        }
    };
    let last = |first: usize, len: usize| (first + len - 1) % 2;

    let mut edges = Vec::new();
    for &(first, len) in &elements {
        for g in 0..2 {
            // w has a reduced word ending in g: then ws is shorter
            let descends = len == m || (len > 0 && last(first, len) == g);
            if descends {
                continue;
            }
            let (nf, nl) = if len == 0 { (g, 1) } else { (first, len + 1) };
            edges.push(Edge { src: index(first, len), dst: index(nf, nl), gen: g, kind: EdgeKind::Solid });
        }
    }
    edges.sort();
    let vertices = elements.iter().map(|&(f, l)| word(f, l)).collect();
    Ok(WDigraph::new(CoxeterMatrix::dihedral(m as u32), vertices, edges))
}

/// `X = {x, y}`, `I_x = ∅`, `I_y = {s}`, `μ(y, x) = mu`.
pub fn build_a1_wgraph(mu: Rational) -> WGraph {
    let mut p = WGraph::new(CoxeterMatrix::a1(), vec!["x".into(), "y".into()], vec![GenSet::EMPTY, GenSet(1)]);
    p.set_mu(1, 0, mu);
    p
}

fn product_cm(a: &CoxeterMatrix, b: &CoxeterMatrix) -> Result<CoxeterMatrix> {
    if let Some(g) = a.generators().iter().find(|g| b.generators().contains(g)) {
        return Err(Error::Invalid(format!("generator `{g}` appears in both factors")));
    }
    let mut cm = CoxeterMatrix::new(a.generators().iter().chain(b.generators()).cloned());
    let shift = a.rank();
    for (i, j) in a.pairs() {
        if let Some(o) = a.order(i, j) {
            cm.set_order(a.name(i), a.name(j), o)?;
        }
    }
    for (i, j) in b.pairs() {
        if let Some(o) = b.order(i, j) {
            cm.set_order(b.name(i), b.name(j), o)?;
        }
    }
    for i in 0..shift {
        for j in 0..b.rank() {
            cm.set_order(a.name(i), b.name(j), Order::Finite(2))?;
        }
    }
    Ok(cm)
}

fn pair_name(x: &str, y: &str) -> String {
    format!("{x}.{y}")
}

/// Direct product of W-digraphs over the disjoint union of generator sets;
/// vertices are pairs `x.y` in lexicographic order.
pub fn digraph_product(a: &WDigraph, b: &WDigraph) -> Result<WDigraph> {
    if a.vertices.is_empty() || b.vertices.is_empty() {
        return Err(Error::Invalid("product with an empty structure".into()));
    }
    let cm = product_cm(&a.cm, &b.cm)?;
    let nb = b.vertex_count();
    let id = |x: usize, y: usize| x * nb + y;
    let mut vertices = Vec::new();
    for x in &a.vertices {
        for y in &b.vertices {
            vertices.push(pair_name(x, y));
        }
    }
    let mut edges = Vec::new();
    for e in &a.edges {
        for y in 0..nb {
            edges.push(Edge { src: id(e.src, y), dst: id(e.dst, y), gen: e.gen, kind: e.kind });
        }
    }
    for e in &b.edges {
        for x in 0..a.vertex_count() {
            edges.push(Edge { src: id(x, e.src), dst: id(x, e.dst), gen: a.cm.rank() + e.gen, kind: e.kind });
        }
    }
    let g = WDigraph::new(cm, vertices, edges);
    if let Some(v) = validate_digraph(&g).first() {
        return Err(Error::Structural(format!("product failed validation: {v}")));
    }
    Ok(g)
}

/// Direct product of W-graphs: `I_(x,y) = I_x ∪ I_y`, weights from whichever
/// coordinate moves.
pub fn wgraph_product(a: &WGraph, b: &WGraph) -> Result<WGraph> {
    if a.vertices.is_empty() || b.vertices.is_empty() {
        return Err(Error::Invalid("product with an empty structure".into()));
    }
    let cm = product_cm(&a.cm, &b.cm)?;
    let (na, nb) = (a.vertex_count(), b.vertex_count());
    let id = |x: usize, y: usize| x * nb + y;
    let shift = a.cm.rank();
    let mut vertices = Vec::new();
    let mut labels = Vec::new();
    for x in 0..na {
        for y in 0..nb {
            vertices.push(pair_name(&a.vertices[x], &b.vertices[y]));
            labels.push(a.labels[x].union(GenSet(b.labels[y].0 << shift)));
        }
    }
    let mut p = WGraph::new(cm, vertices, labels);
    for ((x, x2), w) in a.weights() {
        for y in 0..nb {
            p.set_mu(id(x, y), id(x2, y), w.clone());
        }
    }
    for ((y, y2), w) in b.weights() {
        for x in 0..na {
            p.set_mu(id(x, y), id(x, y2), w.clone());
        }
    }
    if let Some(v) = validate_wgraph(&p).first() {
        return Err(Error::Structural(format!("product failed validation: {v}")));
    }
    Ok(p)
}

/// Renames the generators of a structure; used to build products of two
/// copies of the same factor.
pub fn rename_generators(cm: &CoxeterMatrix, names: &[&str]) -> Result<CoxeterMatrix> {
    if names.len() != cm.rank() {
        return Err(Error::Invalid("wrong number of generator names".into()));
    }
    let mut out = CoxeterMatrix::new(names.iter().copied());
    for (i, j) in cm.pairs() {
        if let Some(o) = cm.order(i, j) {
            out.set_order(names[i], names[j], o)?;
        }
    }
    Ok(out)
}

/// `A₁ × A₁` digraph with generators `s, t`.
pub fn a1_squared_digraph(kind: EdgeKind) -> WDigraph {
    let a = build_a1(kind);
    let mut b = build_a1(kind);
    b.cm = rename_generators(&b.cm, &["t"]).expect("rank 1");
    digraph_product(&a, &b).expect("A1 x A1 is valid")
}

/// `A₁ × A₁` W-graph with generators `s, t`.
pub fn a1_squared_wgraph(mu: Rational) -> WGraph {
    let a = build_a1_wgraph(mu.clone());
    let mut b = build_a1_wgraph(mu);
    b.cm = rename_generators(&b.cm, &["t"]).expect("rank 1");
    wgraph_product(&a, &b).expect("A1 x A1 is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rational, RatFun};
    use crate::coxeter::{char_trace, LinearChar, Word};
    use crate::wdigraph::{components_and_acyclicity, digraph_action, in_profile, sinks, sources};
    use crate::wgraph::wgraph_counts;

    #[test]
    fn a1_builders() {
        for kind in [EdgeKind::Solid, EdgeKind::Dashed] {
            let g = build_a1(kind);
            assert!(validate_digraph(&g).is_empty());
            let rho = digraph_action(&g).unwrap();
            assert_eq!(rho.eigenspace_dim(&LinearChar::ind(1)).unwrap(), 1);
            assert_eq!(rho.eigenspace_dim(&LinearChar::sgn(1)).unwrap(), 1);
            let c = components_and_acyclicity(&g);
            assert_eq!((c.count(), c.acyclic_count()), (1, 1));
        }
        for mu in [rational(1, 1), rational(0, 1), rational(-2, 5)] {
            let p = build_a1_wgraph(mu);
            assert!(validate_wgraph(&p).is_empty());
            let c = wgraph_counts(&p);
            assert_eq!((c.get(GenSet::EMPTY), c.get(GenSet(1))), (1, 1));
        }
    }

    #[test]
    fn dihedral_small_cases() {
        let g = build_dihedral_regular(3).unwrap();
        assert_eq!(g.vertices, ["e", "s", "t", "st", "ts", "sts"]);
        assert!(validate_digraph(&g).is_empty());
        let n = in_profile(&g).counts;
        assert_eq!([n.get(GenSet(0)), n.get(GenSet(1)), n.get(GenSet(2)), n.get(GenSet(3))], [1, 2, 2, 1]);
        let g2 = build_dihedral_regular(2).unwrap();
        assert_eq!((g2.vertex_count(), g2.edges.len()), (4, 4));
        assert!(build_dihedral_regular(1).is_err());
    }

    #[test]
    fn dihedral_weak_order_shape() {
        for m in 2..=5 {
            let g = build_dihedral_regular(m).unwrap();
            assert_eq!(sources(&g), vec![0]);
            assert_eq!(sinks(&g), vec![2 * m as usize - 1]);
            assert_eq!(components_and_acyclicity(&g).acyclic_count(), 1);
            let rho = digraph_action(&g).unwrap();
            let expect = RatFun::from_int(m as i64) * (RatFun::u().pow(2) - RatFun::one());
            assert_eq!(char_trace(&rho, &Word(vec![0])).unwrap(), expect);
        }
    }

    #[test]
    fn products() {
        let g = a1_squared_digraph(EdgeKind::Solid);
        assert_eq!(g.cm, CoxeterMatrix::dihedral(2));
        let n = in_profile(&g).counts;
        assert!((0..4).all(|j| n.get(GenSet(j)) == 1));

        let p = a1_squared_wgraph(rational(1, 1));
        assert_eq!(p.labels, vec![GenSet(0), GenSet(2), GenSet(1), GenSet(3)]);

        // same generator name in both factors
        assert!(digraph_product(&build_a1(EdgeKind::Solid), &build_a1(EdgeKind::Solid)).is_err());
        let empty = WGraph::new(CoxeterMatrix::new(["t"]), vec![], vec![]);
        assert!(wgraph_product(&build_a1_wgraph(rational(1, 1)), &empty).is_err());
        let empty_d = WDigraph::new(CoxeterMatrix::new(["t"]), vec![], vec![]);
        assert!(digraph_product(&build_a1(EdgeKind::Solid), &empty_d).is_err());
    }
}
