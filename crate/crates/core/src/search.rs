//! Exhaustive search for small valid W-digraphs up to vertex renaming.
//!
//! Every generator's edges form a perfect matching of the vertices, so only
//! even vertex counts occur. The first generator's matching is fixed to
//! `0→1, 2→3, …` with kinds in sorted order, which loses no isomorphism
//! class. Later generators are added one at a time and pruned by the braid
//! relation against each earlier generator; the quadratic relation holds for
//! every edge block automatically.

use std::collections::BTreeSet;

use crate::coxeter::{braid_holds, CoxeterMatrix, Order};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::wdigraph::{digraph_action, edge_block, validate_digraph, Edge, EdgeKind, WDigraph};

pub const MAX_GENERATORS: usize = 3;
pub const MAX_VERTICES: usize = 6;

/// Canonical code: sorted `(generator, src, dst, kind)` tuples, minimal over
/// all vertex permutations.
type Code = Vec<(usize, usize, usize, EdgeKind)>;

fn perfect_matchings(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(free: &mut Vec<usize>, acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if free.is_empty() {
            out.push(acc.clone());
            return;
        }
        let a = free.remove(0);
        for i in 0..free.len() {
            let b = free.remove(i);
            acc.push((a, b));
            go(free, acc, out);
            acc.pop();
            free.insert(i, b);
        }
        free.insert(0, a);
    }
    let mut out = Vec::new();
    go(&mut (0..n).collect(), &mut Vec::new(), &mut out);
    out
}

/// All edge sets for one generator: matchings times orientation and kind.
fn generator_layers(n: usize, gen: usize) -> Vec<Vec<Edge>> {
    let mut out = Vec::new();
    for m in perfect_matchings(n) {
        let pairs = m.len();
        for mask in 0..(1usize << (2 * pairs)) {
            let edges = m
                .iter()
                .enumerate()
                .map(|(k, &(a, b))| {
                    let flip = mask >> (2 * k) & 1 == 1;
                    let kind = if mask >> (2 * k + 1) & 1 == 1 { EdgeKind::Dashed } else { EdgeKind::Solid };
                    let (src, dst) = if flip { (b, a) } else { (a, b) };
                    Edge { src, dst, gen, kind }
                })
                .collect();
            out.push(edges);
        }
    }
    out
}

/// Normalized first-generator layers: `2k → 2k+1`, solid edges first.
fn first_layers(n: usize) -> Vec<Vec<Edge>> {
    let pairs = n / 2;
    (0..=pairs)
        .map(|dashed| {
            (0..pairs)
                .map(|k| Edge {
                    src: 2 * k,
                    dst: 2 * k + 1,
                    gen: 0,
                    kind: if k >= pairs - dashed { EdgeKind::Dashed } else { EdgeKind::Solid },
                })
                .collect()
        })
        .collect()
}

fn layer_matrix(n: usize, edges: &[Edge]) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for e in edges {
        let [a, b] = edge_block(e.kind);
        m[(e.src, e.src)] = a[0].clone();
        m[(e.dst, e.src)] = a[1].clone();
        m[(e.src, e.dst)] = b[0].clone();
        m[(e.dst, e.dst)] = b[1].clone();
    }
    m
}

/// Integer image of a layer at `u = t`; entries stay tiny so `i128` suffices.
fn layer_at(n: usize, edges: &[Edge], t: i128) -> Vec<Vec<i128>> {
    let mut m = vec![vec![0i128; n]; n];
    for e in edges {
        let (aa, ab, ba, bb) = match e.kind {
            EdgeKind::Solid => (0, 1, t * t, t * t - 1),
            EdgeKind::Dashed => (t, t + 1, t * t - t, t * t - t - 1),
        };
        m[e.src][e.src] = aa;
        m[e.dst][e.src] = ab;
        m[e.src][e.dst] = ba;
        m[e.dst][e.dst] = bb;
    }
    m
}

fn int_braid_holds(a: &[Vec<i128>], b: &[Vec<i128>], m: u32) -> bool {
    let n = a.len();
    let mul = |x: &[Vec<i128>], y: &[Vec<i128>]| -> Vec<Vec<i128>> {
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| x[i][k] * y[k][j]).sum()).collect()).collect()
    };
    let alt = |p: &[Vec<i128>], q: &[Vec<i128>]| {
        let mut acc: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect();
        for k in 0..m {
            acc = mul(&acc, if k % 2 == 0 { p } else { q });
        }
        acc
    };
    alt(a, b) == alt(b, a)
}

/// Braid check between two generator layers: a cheap specialization at
/// `u = 2, 3` rejects most candidates, survivors are checked exactly.
fn pair_ok(n: usize, a: &[Edge], b: &[Edge], order: Option<Order>) -> bool {
    let m = match order {
        Some(Order::Finite(m)) if m >= 2 => m,
        _ => return true,
    };
    for t in [2, 3] {
        if !int_braid_holds(&layer_at(n, a, t), &layer_at(n, b, t), m) {
            return false;
        }
    }
    braid_holds(&layer_matrix(n, a), &layer_matrix(n, b), m)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(k, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn canonical_code(edges: &[Edge], perms: &[Vec<usize>]) -> Code {
    perms
        .iter()
        .map(|p| {
            let mut code: Code = edges.iter().map(|e| (e.gen, p[e.src], p[e.dst], e.kind)).collect();
            code.sort();
            code
        })
        .min()
        .unwrap_or_default()
}

/// All valid W-digraphs over `cm` with at most `max_vertices` vertices, one
/// per isomorphism class, ordered by vertex count and then canonical code.
/// Vertices are named `v0, v1, …`.
pub fn search_valid_digraphs(cm: &CoxeterMatrix, max_vertices: usize) -> Result<Vec<WDigraph>> {
    let rank = cm.rank();
    if rank == 0 || rank > MAX_GENERATORS {
        return Err(Error::SearchLimit(format!("need 1..={MAX_GENERATORS} generators, got {rank}")));
    }
    if max_vertices > MAX_VERTICES {
        return Err(Error::SearchLimit(format!("max vertices {max_vertices} > {MAX_VERTICES}")));
    }
    if let Some(v) = crate::coxeter::validate_coxeter_matrix(cm, false).first() {
        return Err(Error::Invalid(v.to_string()));
    }
    let mut found: Vec<WDigraph> = Vec::new();
    for n in (2..=max_vertices).step_by(2) {
        let later: Vec<Vec<Vec<Edge>>> = (1..rank).map(|g| generator_layers(n, g)).collect();
        let mut partial: Vec<Vec<Vec<Edge>>> = first_layers(n).into_iter().map(|l| vec![l]).collect();
        for (offset, candidates) in later.iter().enumerate() {
            let g = offset + 1;
            let mut next = Vec::new();
            for layers in &partial {
                for cand in candidates {
                    let ok = layers.iter().enumerate().all(|(h, l)| pair_ok(n, l, cand, cm.order(h, g)));
                    if ok {
                        let mut grown = layers.clone();
                        grown.push(cand.clone());
                        next.push(grown);
                    }
                }
            }
            partial = next;
        }

        let perms = permutations(n);
        let mut codes: BTreeSet<Code> = BTreeSet::new();
        for layers in partial {
            let edges: Vec<Edge> = layers.into_iter().flatten().collect();
            codes.insert(canonical_code(&edges, &perms));
        }
        for code in codes {
            let edges = code.iter().map(|&(gen, src, dst, kind)| Edge { src, dst, gen, kind }).collect();
            let g = WDigraph::new(cm.clone(), (0..n).map(|i| format!("v{i}")).collect(), edges);
            debug_assert!(digraph_action(&g).is_ok());
            if validate_digraph(&g).is_empty() {
                found.push(g);
            }
        }
    }
    Ok(found)
}
