use std::time::Instant;

use abtaut_core::TautRing;

#[test]
fn structure_through_genus_eight() {
    for g in 1..=8 {
        let t = Instant::now();
        let ring = TautRing::build(g).unwrap();
        let report = ring.structure_report().unwrap();
        eprintln!("g={g} built in {:?}", t.elapsed());
        assert!(report.passed, "g = {g}: {report:?}");
        assert_eq!(report.total_dimension, 1usize << g);
    }
}
