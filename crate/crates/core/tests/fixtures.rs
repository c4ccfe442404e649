mod common;

use tightcut::certificate::verify_certificate;
use tightcut::decompose::{
    check_finding, decompose_tight_cut_traced, find_noncrossing_elp_traced, Branch, Trace,
};
use tightcut::graph::crosses;
use tightcut::tightcuts::{classify_cut, enumerate_tight_cuts};

#[test]
fn nonelp_r2() {
    let (g, c) = common::fixture("nonelp_r2.el");
    let c = c.unwrap();
    let cl = classify_cut(&g, &c).unwrap();
    assert!(cl.tight && !cl.elp);
    let mut t = Trace::default();
    let cert = decompose_tight_cut_traced(&g, &c, &mut t).unwrap();
    assert_eq!(cert.r, 2);
    verify_certificate(&g, &c, &cert).unwrap();
    assert!(!cert.final_classification.twosep_witnesses.is_empty());
}

#[test]
fn repeated_barrier_side() {
    let (g, c) = common::fixture("repeated_barrier.el");
    let c = c.unwrap();
    assert!(!classify_cut(&g, &c).unwrap().elp);
    let mut t = Trace::default();
    let cert = decompose_tight_cut_traced(&g, &c, &mut t).unwrap();
    assert_eq!(cert.r, 3);
    assert!(t.repeated_barrier_side >= 1);
    assert_eq!(t.count(Branch::BarrierStep), 2);
    verify_certificate(&g, &c, &cert).unwrap();
}

#[test]
fn pinched_case2() {
    let (g, c) = common::fixture("pinched_case2.el");
    let c = c.unwrap();
    assert!(classify_cut(&g, &c).unwrap().elp);
    let mut t = Trace::default();
    let f = find_noncrossing_elp_traced(&g, &c, &mut t).unwrap();
    check_finding(&g, &c, &f).unwrap();
    assert!(!crosses(&g, &f.derived_cut(&g, &c).unwrap(), &c).unwrap());
    for b in [
        Branch::NoncrossingCase2,
        Branch::EdgeSubcase22TwoSep,
        Branch::EdgeRemark,
    ] {
        assert!(t.count(b) >= 1, "{b:?} not hit: {:?}", t.hits);
    }
    assert_eq!(
        decompose_tight_cut_traced(&g, &c, &mut Trace::default())
            .unwrap()
            .r,
        1
    );
}

#[test]
fn bricks_have_no_nontrivial_tight_cuts() {
    for name in ["k4.el", "petersen.el"] {
        let (g, _) = common::fixture(name);
        assert!(enumerate_tight_cuts(&g, true).unwrap().is_empty(), "{name}");
    }
}
