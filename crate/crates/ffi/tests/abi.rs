use std::ffi::{CStr, CString};
use std::ptr;

use tightcut_ffi::*;

const C6: &str = "p 6 6\ne 0 1\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 0\n";

fn last_error() -> String {
    unsafe { CStr::from_ptr(tc_last_error_message()) }
        .to_string_lossy()
        .into_owned()
}

fn parse(text: &str) -> *mut TcGraph {
    let t = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { tc_graph_parse(t.as_ptr(), &mut g) }, TcStatus::Ok);
    g
}

fn fixture(name: &str) -> (String, Vec<u32>) {
    let path = format!(
        "{}/../core/tests/fixtures/{name}",
        env!("CARGO_MANIFEST_DIR")
    );
    let text = std::fs::read_to_string(path).unwrap();
    let cut = text
        .lines()
        .find_map(|l| l.strip_prefix("# cut "))
        .map(|c| c.split(',').map(|v| v.parse().unwrap()).collect())
        .unwrap_or_default();
    (text, cut)
}

#[test]
fn c6_tightness_and_classification() {
    let g = parse(C6);
    unsafe {
        assert_eq!(tc_graph_vertex_count(g), 6);
        assert_eq!(tc_graph_edge_count(g), 6);
        let mut mc = false;
        assert_eq!(tc_is_matching_covered(g, &mut mc), TcStatus::Ok);
        assert!(mc);
        let shore = [0u32, 1, 2];
        let mut tight = false;
        assert_eq!(tc_is_tight(g, shore.as_ptr(), 3, &mut tight), TcStatus::Ok);
        assert!(tight);
        let mut count = 0usize;
        assert_eq!(tc_count_tight_cuts(g, true, &mut count), TcStatus::Ok);
        assert_eq!(count, 3);
        let mut json = ptr::null_mut();
        assert_eq!(
            tc_classify_cut_json(g, shore.as_ptr(), 3, &mut json),
            TcStatus::Ok
        );
        let v: serde_json::Value =
            serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        assert_eq!(v["elp"], true);
        assert_eq!(v["tight"], true);
        tc_string_free(json);
        tc_graph_free(g);
    }
}

#[test]
fn decompose_verify_and_json_roundtrip() {
    let (text, cut) = fixture("nonelp_r2.el");
    let g = parse(&text);
    unsafe {
        let mut cert = ptr::null_mut();
        assert_eq!(
            tc_decompose(g, cut.as_ptr(), cut.len(), &mut cert),
            TcStatus::Ok
        );
        assert_eq!(tc_certificate_r(cert), 2);
        let mut json = ptr::null_mut();
        assert_eq!(tc_certificate_to_json(cert, &mut json), TcStatus::Ok);
        let mut again = ptr::null_mut();
        assert_eq!(tc_certificate_from_json(json, &mut again), TcStatus::Ok);
        assert_eq!(
            tc_verify_certificate(g, cut.as_ptr(), cut.len(), again),
            TcStatus::Ok
        );

        // the same certificate does not fit another cut
        let other = [0u32];
        assert_eq!(
            tc_verify_certificate(g, other.as_ptr(), 1, again),
            TcStatus::CertificateRejected
        );
        assert!(last_error().contains("input mismatch"), "{}", last_error());

        tc_string_free(json);
        tc_certificate_free(cert);
        tc_certificate_free(again);
        tc_graph_free(g);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut g = ptr::null_mut();
        let bad = CString::new("p 3 1\ne 0 7\n").unwrap();
        assert_eq!(tc_graph_parse(bad.as_ptr(), &mut g), TcStatus::ParseError);
        assert!(last_error().starts_with("line 2"), "{}", last_error());
        assert!(g.is_null());

        assert_eq!(tc_graph_parse(ptr::null(), &mut g), TcStatus::NullPointer);

        let ends = [0u32, 0];
        assert_eq!(
            tc_graph_new(2, ends.as_ptr(), 1, &mut g),
            TcStatus::Precondition
        );

        let ends = [0u32, 1, 1, 2, 2, 3, 3, 0, 0, 2];
        assert_eq!(tc_graph_new(4, ends.as_ptr(), 5, &mut g), TcStatus::Ok);
        let mut count = 0usize;
        // C4 plus a chord is not matching covered
        assert_eq!(
            tc_count_tight_cuts(g, true, &mut count),
            TcStatus::Precondition
        );
        let shore = [9u32];
        let mut tight = false;
        assert_eq!(
            tc_is_tight(g, shore.as_ptr(), 1, &mut tight),
            TcStatus::InvalidShore
        );
        tc_graph_free(g);

        let k4 = parse("p 4 6\ne 0 1\ne 0 2\ne 0 3\ne 1 2\ne 1 3\ne 2 3\n");
        let shore = [0u32, 1, 2];
        let mut cert = ptr::null_mut();
        assert_eq!(
            tc_decompose(k4, shore.as_ptr(), 3, &mut cert),
            TcStatus::Precondition
        );
        assert!(last_error().contains("trivial"), "{}", last_error());
        tc_graph_free(k4);

        let junk = CString::new("{\"input\": 3}").unwrap();
        assert_eq!(
            tc_certificate_from_json(junk.as_ptr(), &mut cert),
            TcStatus::JsonError
        );
        assert!(last_error().contains("input"), "{}", last_error());

        assert_eq!(tc_graph_vertex_count(ptr::null()), 0);
        tc_graph_free(ptr::null_mut());
        tc_string_free(ptr::null_mut());
        let name = CStr::from_ptr(tc_status_name(TcStatus::CertificateRejected));
        assert_eq!(name.to_str().unwrap(), "certificate rejected");
    }
}

#[test]
fn errors_are_per_thread() {
    let bad = CString::new("q\n").unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { tc_graph_parse(bad.as_ptr(), &mut g) },
        TcStatus::ParseError
    );
    let other = std::thread::spawn(last_error).join().unwrap();
    assert_eq!(other, "");
    assert!(!last_error().is_empty());
}
