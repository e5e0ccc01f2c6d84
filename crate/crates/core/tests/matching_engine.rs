mod common;

use outforest::enumerate::{enumerate_ugraphs, sample_ugraphs};
use outforest::{has_perfect_matching, maximum_matching, UGraph};

fn check(g: &UGraph) {
    let m = maximum_matching(g);
    let mut seen = vec![false; g.n()];
    for (a, b) in m.edges() {
        assert!(g.has_edge(a, b));
        assert!(!seen[a] && !seen[b]);
        seen[a] = true;
        seen[b] = true;
    }
    assert_eq!(m.len(), common::max_matching_size(g), "{:?}", g.edges());
    let mate: Vec<_> = (0..g.n()).map(|v| m.mate(v)).collect();
    assert!(!common::has_augmenting_path(g, &mate));
}

#[test]
fn exhaustive_up_to_six() {
    for n in 0..=6 {
        enumerate_ugraphs(n).for_each(|g| check(&g));
    }
}

#[test]
fn random_up_to_ten() {
    for n in 7..=10 {
        sample_ugraphs(n, 100 + n as u64).take(300).for_each(|g| check(&g));
    }
}

#[test]
fn petersen_has_perfect_matching() {
    let g = common::petersen();
    assert!(has_perfect_matching(&g));
    check(&g);
}

#[test]
fn odd_cycles_chained() {
    // Two triangles joined by a path; needs blossom handling twice.
    let g = UGraph::new(8, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 5)]).unwrap();
    assert_eq!(maximum_matching(&g).len(), 4);
}
