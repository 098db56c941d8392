//! Corpus-wide consistency between certificates, invariants and the
//! acyclicity conclusions.

use heckemod::compare::{find_iso, invariant_report, theorem_check, verify_certificate, IsoOutcome, Structure};
use heckemod::coxeter::LinearChar;
use heckemod::selftest::corpus;
use heckemod::wdigraph::{components_and_acyclicity, digraph_action};

#[test]
fn certified_pairs_agree_and_satisfy_the_theorem() {
    let c = corpus().unwrap();
    let mut certified = 0;
    let mut theorem_pairs = 0;
    for (gi, (gname, g)) in c.digraphs.iter().enumerate() {
        let a: Structure = g.clone().into();
        let others = c.digraphs[gi..].iter().map(|(n, h)| (n, Structure::from(h.clone())));
        let wgraphs = c.wgraphs.iter().map(|(n, p)| (n, Structure::from(p.clone())));
        for (oname, b) in others.chain(wgraphs) {
            if a.cm() != b.cm() || a.dim() != b.dim() {
                continue;
            }
            let IsoOutcome::Certificate(cert) = find_iso(&a, &b, 1, 6).unwrap() else { continue };
            certified += 1;
            assert!(verify_certificate(&a, &b, &cert).unwrap().is_empty(), "{gname} / {oname}");
            let inv = invariant_report(&a, &b, 3).unwrap();
            assert!(inv.agrees(), "{gname} / {oname}: {:?}", inv.mismatches);
            if let Structure::WGraph(p) = &b {
                theorem_pairs += 1;
                let report = theorem_check(g, p, &cert).unwrap();
                let failures: Vec<_> = report.failures().collect();
                assert!(failures.is_empty(), "{gname} / {oname}: {failures:?}");
            }
        }
    }
    println!("{certified} certified pairs, {theorem_pairs} digraph/W-graph pairs");
    assert!(certified > c.digraphs.len(), "every digraph certifies against itself");
    assert!(theorem_pairs > 0);
}

#[test]
fn cyclic_components_lower_sgn() {
    let c = corpus().unwrap();
    for (name, g) in &c.digraphs {
        let comps = components_and_acyclicity(g);
        if comps.acyclic_count() < comps.count() {
            let sgn = digraph_action(g).unwrap().eigenspace_dim(&LinearChar::sgn(g.cm.rank())).unwrap();
            assert!(sgn < comps.count(), "{name}");
        }
    }
}
