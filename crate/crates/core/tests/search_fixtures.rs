use std::path::Path;

use gridforge::batch::KnotRecord;
use gridforge::ingest::{ingest_csv, IngestConfig};
use gridforge::search::{
    gridstate_finder_commute, search_pipeline, try_permutations, SearchLimits, SearchStatus,
};
use gridforge::winding::a_grading;

fn knot(name: &str, row_flip: bool) -> KnotRecord {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/fibered_le13.csv");
    let config = IngestConfig {
        row_flip,
        ..IngestConfig::default()
    };
    ingest_csv(&path, &config)
        .unwrap()
        .records
        .into_iter()
        .find(|r| r.name == name)
        .unwrap()
}

#[test]
fn one_stabilization_needed() {
    let k = knot("12n_838", false);
    let v = k.grid_notation.to_vertlist().unwrap();
    assert_eq!(v.size(), 10);
    let limits = SearchLimits::default();
    let commute = gridstate_finder_commute(&v, &limits).unwrap();
    assert_eq!(commute.status, SearchStatus::Exhausted);

    let out = search_pipeline(&v, &limits, true).unwrap();
    assert_eq!(out.status, SearchStatus::NiceFound);
    let w = out.witness.unwrap();
    assert_eq!(w.stabilizations, 1);
    assert_eq!(w.diagram.size(), 11);
    assert_eq!(w.alexander, k.genus);
    assert_eq!(k.genus, 2);
    assert_eq!(a_grading(&w.diagram, &w.state).unwrap(), w.alexander);
    assert_eq!(
        try_permutations(&w.diagram).unwrap(),
        Some((w.state.clone(), w.alexander))
    );
}

#[test]
fn ten_crossing_knot_needs_the_mirror() {
    // Exhausted with commutations and one stabilization; its mirror is not.
    let k = knot("10_145", false);
    let v = k.grid_notation.to_vertlist().unwrap();
    let out = search_pipeline(&v, &SearchLimits::default(), true).unwrap();
    assert_eq!(out.status, SearchStatus::Exhausted);

    let k = knot("10_145", true);
    let v = k.grid_notation.to_vertlist().unwrap();
    let out = search_pipeline(&v, &SearchLimits::default(), true).unwrap();
    assert_eq!(out.status, SearchStatus::NiceFound);
    assert_eq!(out.witness.unwrap().alexander, k.genus);
}
