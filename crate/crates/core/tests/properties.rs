use proptest::prelude::*;

use heckemod::arith::{poly_gcd, rational, Poly, RatFun};
use heckemod::builders::{build_a1_wgraph, build_dihedral_regular};
use heckemod::compare::{find_iso, verify_certificate, IsoOutcome, Structure};
use heckemod::coxeter::{CoxeterMatrix, GenSet, LinearChar};
use heckemod::io::{emit_digraph, emit_wgraph, parse_digraph, parse_wgraph};
use heckemod::linalg::{det_bareiss, nullspace, rank, Matrix};
use heckemod::selftest::cofactor_det;
use heckemod::wdigraph::{
    closed_walks, components_and_acyclicity, digraph_action, in_profile, restrict_digraph, sgn_mult_combinatorial,
    walk_counts, walk_ratio, Edge, EdgeKind, WDigraph,
};
use heckemod::wgraph::{restrict_wgraph, wgraph_counts, WGraph};

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-4i64..=4, 0..4).prop_map(|c| Poly::from_ints(&c))
}

fn nonzero_poly() -> impl Strategy<Value = Poly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfun() -> impl Strategy<Value = RatFun> {
    (poly(), nonzero_poly()).prop_map(|(n, d)| RatFun::new(n, d).unwrap())
}

fn square(n: usize) -> impl Strategy<Value = Vec<Vec<RatFun>>> {
    prop::collection::vec(prop::collection::vec(ratfun(), n), n)
}

/// Structurally valid digraph: every generator's edges form a perfect
/// matching. Relations are not imposed.
fn structural_digraph() -> impl Strategy<Value = WDigraph> {
    (1usize..=3, 1usize..=2).prop_flat_map(|(pairs, rank)| {
        let n = 2 * pairs;
        let layer =
            (Just((0..n).collect::<Vec<usize>>()).prop_shuffle(), prop::collection::vec(any::<(bool, bool)>(), pairs));
        prop::collection::vec(layer, rank).prop_map(move |layers| {
            let cm = if layers.len() == 1 { CoxeterMatrix::a1() } else { CoxeterMatrix::dihedral(3) };
            let mut edges = Vec::new();
            for (gen, (perm, flags)) in layers.into_iter().enumerate() {
                for (k, (flip, dashed)) in flags.into_iter().enumerate() {
                    let (a, b) = (perm[2 * k], perm[2 * k + 1]);
                    let (src, dst) = if flip { (b, a) } else { (a, b) };
                    let kind = if dashed { EdgeKind::Dashed } else { EdgeKind::Solid };
                    edges.push(Edge { src, dst, gen, kind });
                }
            }
            WDigraph::new(cm, (0..n).map(|i| format!("v{i}")).collect(), edges)
        })
    })
}

fn wgraph() -> impl Strategy<Value = WGraph> {
    (1usize..=4).prop_flat_map(|n| {
        (prop::collection::vec(0u32..4, n), prop::collection::vec((0..n, 0..n, -3i64..=3, 1i64..=3), 0..6)).prop_map(
            move |(labels, weights)| {
                let mut p = WGraph::new(
                    CoxeterMatrix::dihedral(3),
                    (0..n).map(|i| format!("x{i}")).collect(),
                    labels.into_iter().map(GenSet).collect(),
                );
                for (x, y, a, b) in weights {
                    p.set_mu(x, y, rational(a, b));
                }
                p
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form(n in poly(), d in nonzero_poly()) {
        let r = RatFun::new(n, d).unwrap();
        prop_assert!(poly_gcd(r.num(), r.den()).is_one());
        prop_assert!(r.den().lead().unwrap() == &rational(1, 1));
        if r.is_zero() {
            prop_assert!(r.den().is_one());
        }
    }

    #[test]
    fn field_axioms(a in ratfun(), b in ratfun(), c in ratfun()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn display_reparses(a in ratfun()) {
        prop_assert_eq!(a.to_string().parse::<RatFun>().unwrap(), a);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in ratfun(), b in ratfun(), p in -20i64..=20, q in 1i64..=7) {
        let t = rational(p, q);
        if let (Ok(at), Ok(bt)) = (a.eval(&t), b.eval(&t)) {
            prop_assert_eq!((&a + &b).eval(&t).unwrap(), &at + &bt);
            prop_assert_eq!((&a * &b).eval(&t).unwrap(), &at * &bt);
        }
    }

    #[test]
    fn bareiss_matches_cofactor(m in (1usize..=3).prop_flat_map(square)) {
        let mat = Matrix::from_rows(m.clone()).unwrap();
        prop_assert_eq!(det_bareiss(&mat).unwrap(), cofactor_det(&m));
    }

    #[test]
    fn det_is_multiplicative(a in square(2), b in square(2)) {
        let (a, b) = (Matrix::from_rows(a).unwrap(), Matrix::from_rows(b).unwrap());
        let ab = a.checked_mul(&b).unwrap();
        prop_assert_eq!(det_bareiss(&ab).unwrap(), det_bareiss(&a).unwrap() * det_bareiss(&b).unwrap());
    }

    #[test]
    fn rank_nullity(rows in 1usize..=4, cols in 1usize..=4, seed in any::<u64>()) {
        let entries = ["0", "1", "u", "u-1", "1/(u+1)", "-u^2", "0", "0"];
        let m = Matrix::from_fn(rows, cols, |i, j| {
            let k = (seed >> ((i * cols + j) % 21 * 3)) as usize % entries.len();
            entries[k].parse().unwrap()
        });
        let null = nullspace(&m);
        prop_assert_eq!(rank(&m) + null.dim(), cols);
        for v in null.basis() {
            prop_assert!(m.mat_vec(v).unwrap().iter().all(RatFun::is_zero));
        }
    }

    #[test]
    fn ind_and_sgn_counts_match_linear_algebra(g in structural_digraph()) {
        // the edgewise eigenvector conditions need no relations
        let rho = digraph_action(&g).unwrap();
        let rank = g.cm.rank();
        let comps = components_and_acyclicity(&g);
        prop_assert_eq!(rho.eigenspace_dim(&LinearChar::ind(rank)).unwrap(), comps.count());
        prop_assert_eq!(rho.eigenspace_dim(&LinearChar::sgn(rank)).unwrap(), sgn_mult_combinatorial(&g));
    }

    #[test]
    fn walk_ratio_balance(g in structural_digraph()) {
        for w in closed_walks(&g, 6) {
            let [sf, sr, df, dr] = walk_counts(&g, &w);
            prop_assert_eq!(walk_ratio(&g, &w).unwrap().is_one(), sf == sr && df == dr);
        }
    }

    #[test]
    fn digraph_round_trip(g in structural_digraph()) {
        prop_assert_eq!(parse_digraph(&emit_digraph(&g)).unwrap(), g);
    }

    #[test]
    fn wgraph_round_trip(p in wgraph()) {
        prop_assert_eq!(parse_wgraph(&emit_wgraph(&p)).unwrap(), p);
    }

    #[test]
    fn inclusion_identity(g in structural_digraph(), p in wgraph()) {
        let n = in_profile(&g).counts;
        for j in GenSet::all_subsets(g.cm.rank()) {
            let gj = restrict_digraph(&g, j).unwrap();
            prop_assert_eq!(in_profile(&gj).counts.get(gj.cm.full_set()), n.sum_over_supersets(j));
        }
        let n = wgraph_counts(&p);
        for j in GenSet::all_subsets(2) {
            let pj = restrict_wgraph(&p, j).unwrap();
            prop_assert_eq!(wgraph_counts(&pj).get(pj.cm.full_set()), n.sum_over_supersets(j));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn relabelled_dihedral_is_isomorphic(
        (m, perm) in (2u32..=4).prop_flat_map(|m| (Just(m), Just((0..2 * m as usize).collect::<Vec<usize>>()).prop_shuffle())),
        seed in any::<u64>(),
    ) {
        let g = build_dihedral_regular(m).unwrap();
        let mut h = g.clone();
        h.edges = g.edges.iter().map(|e| Edge { src: perm[e.src], dst: perm[e.dst], ..*e }).collect();
        let (a, b): (Structure, Structure) = (g.into(), h.into());
        let IsoOutcome::Certificate(c) = find_iso(&a, &b, seed, 10).unwrap() else {
            return Err(TestCaseError::fail("no certificate"));
        };
        prop_assert!(verify_certificate(&a, &b, &c).unwrap().is_empty());
    }
}

#[test]
fn ind_eigenvector_of_a1_wgraph() {
    // x + (u·μ/(u²+1))·y spans the ind line; the opposite sign does not
    let mu = rational(1, 1);
    let rho = heckemod::wgraph::wgraph_action(&build_a1_wgraph(mu.clone()));
    let u = RatFun::u();
    let c = u.scale(&mu).checked_div(&(&u.pow(2) + &RatFun::one())).unwrap();
    let t = &rho.gens[0];
    let image = t.mat_vec(&[RatFun::one(), c.clone()]).unwrap();
    assert_eq!(image, vec![u.pow(2), &c * &u.pow(2)]);
    let wrong = t.mat_vec(&[RatFun::one(), -c.clone()]).unwrap();
    assert_ne!(wrong, vec![u.pow(2), -(&c * &u.pow(2))]);
}
