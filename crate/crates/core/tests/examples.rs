#[path = "../examples/bipartite_projection.rs"]
mod bipartite_projection;
#[path = "../examples/compare_covers.rs"]
mod compare_covers;
#[path = "../examples/detect_communities.rs"]
mod detect_communities;
#[path = "../examples/linear_scaling.rs"]
mod linear_scaling;
#[path = "../examples/nested_hierarchy.rs"]
mod nested_hierarchy;
#[path = "../examples/overlapping_benchmark.rs"]
mod overlapping_benchmark;

#[test]
fn karate_half_threshold_has_no_overlap() {
    let rows = detect_communities::run_example();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[3].2, 0);
    assert!(rows.iter().all(|&(_, c, _)| c >= 1));
}

#[test]
fn planted_cover_is_mostly_recovered() {
    let s = overlapping_benchmark::run_example();
    assert!(s.nmi > 0.8, "{}", s.nmi);
    assert!((0.0..=1.0).contains(&s.omega) && (0.0..=1.0).contains(&s.f_score));
}

#[test]
fn both_sides_are_scored() {
    let rows = bipartite_projection::run_example();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r.1 > 0));
}

#[test]
fn hierarchy_names_best_attributes() {
    let text = nested_hierarchy::run_example();
    assert_eq!(text.lines().count(), 4);
    assert!(text.contains("  C1-2 size=3 members=a,b,c best=team (1.00)"));
}

#[test]
fn small_ladder_completes() {
    let report = linear_scaling::run_example();
    assert!(report.rows.iter().all(|r| r.seconds.is_some()));
    assert!(report.fit.is_some());
}

#[test]
fn seed_comparisons_are_bounded() {
    for (_, q, nmi, _) in compare_covers::run_example() {
        assert!((-1.0..=1.0).contains(&q));
        assert!((0.0..=1.0).contains(&nmi));
    }
}
