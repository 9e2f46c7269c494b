mod common;

#[test]
fn every_witness_holds() {
    for w in common::counterexamples::all() {
        assert!(w.naive_refuted, "{}: {} ({})", w.fixture, w.claim, w.detail);
        assert!(
            w.fast_agrees,
            "{}: fast path disagrees with enumeration",
            w.fixture
        );
    }
}
