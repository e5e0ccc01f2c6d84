//! Exhaustive and seeded random generation of small graphs and out-trees.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::connectivity::{classify, ConnectivityClass, OutTree};
use crate::graph::{Digraph, UGraph};

/// Largest order accepted by the exhaustive digraph enumerator
/// (`2^(n(n-1))` arc subsets).
pub const MAX_EXHAUSTIVE_DIGRAPH_ORDER: usize = 5;

/// Largest order accepted by the exhaustive undirected enumerator.
pub const MAX_EXHAUSTIVE_UGRAPH_ORDER: usize = 7;

/// Which connectivity classes a generator yields.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassFilter {
    Any,
    Exactly(ConnectivityClass),
    /// Strongly connected of even order.
    StronglyConnectedEven,
    /// Even order with a single initial strong component (includes strongly
    /// connected).
    SingleInitialEven,
    /// Connected of even order.
    ConnectedEven,
    Connected,
}

impl ClassFilter {
    pub fn accepts(self, c: ConnectivityClass) -> bool {
        match self {
            ClassFilter::Any => true,
            ClassFilter::Exactly(x) => c == x,
            ClassFilter::StronglyConnectedEven => c == ConnectivityClass::StronglyConnectedEven,
            ClassFilter::SingleInitialEven => c.has_single_initial(),
            ClassFilter::ConnectedEven => c.is_connected_even(),
            ClassFilter::Connected => c.is_connected(),
        }
    }
}

fn ordered_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).collect()
}

fn unordered_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

fn subset(pairs: &[(usize, usize)], mask: u64) -> Vec<(usize, usize)> {
    pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect()
}

/// Every digraph on `n` labelled vertices whose class passes `filter`, in
/// ascending order of the arc-subset bitmask (bit `i` is the `i`-th ordered
/// pair in lexicographic order).
///
/// Panics if `n` exceeds [`MAX_EXHAUSTIVE_DIGRAPH_ORDER`].
pub fn enumerate_digraphs(n: usize, filter: ClassFilter) -> impl Iterator<Item = Digraph> {
    assert!(n <= MAX_EXHAUSTIVE_DIGRAPH_ORDER, "exhaustive enumeration is limited to n <= 5");
    let pairs = ordered_pairs(n);
    (0..1u64 << pairs.len())
        .map(move |mask| Digraph::new(n, subset(&pairs, mask)).unwrap())
        .filter(move |d| filter.accepts(classify(d)))
}

/// Every labelled undirected graph on `n` vertices, by edge bitmask.
pub fn enumerate_ugraphs(n: usize) -> impl Iterator<Item = UGraph> {
    assert!(n <= MAX_EXHAUSTIVE_UGRAPH_ORDER, "exhaustive enumeration is limited to n <= 7");
    let pairs = unordered_pairs(n);
    (0..1u64 << pairs.len()).map(move |mask| UGraph::new(n, subset(&pairs, mask)).unwrap())
}

/// Endless stream of random digraphs on `n` vertices passing `filter`.
///
/// Each draw picks an arc density in `[0.1, 0.7]` and includes every ordered
/// pair independently; draws failing the filter are discarded. The stream is
/// a pure function of `(n, filter, seed)`.
pub fn sample_digraphs(n: usize, filter: ClassFilter, seed: u64) -> impl Iterator<Item = Digraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs = ordered_pairs(n);
    std::iter::repeat_with(move || {
        let p: f64 = rng.gen_range(0.1..=0.7);
        let arcs: Vec<_> = pairs.iter().copied().filter(|_| rng.gen_bool(p)).collect();
        Digraph::new(n, arcs).unwrap()
    })
    .filter(move |d| filter.accepts(classify(d)))
}

/// Endless stream of random undirected graphs on `n` vertices, density drawn
/// from `[0.1, 0.7]` per graph.
pub fn sample_ugraphs(n: usize, seed: u64) -> impl Iterator<Item = UGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs = unordered_pairs(n);
    std::iter::repeat_with(move || {
        let p: f64 = rng.gen_range(0.1..=0.7);
        let edges: Vec<_> = pairs.iter().copied().filter(|_| rng.gen_bool(p)).collect();
        UGraph::new(n, edges).unwrap()
    })
}

/// Random out-tree on `0..n`: vertices are placed in random order and each
/// attaches to a uniformly chosen earlier vertex.
pub fn random_out_tree<R: Rng>(n: usize, rng: &mut R) -> OutTree {
    assert!(n >= 1);
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    let arcs = (1..n).map(|i| (order[rng.gen_range(0..i)], order[i]));
    OutTree::from_arcs(order[0], arcs.collect::<Vec<_>>()).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_vertex_enumeration() {
        let all: Vec<_> = enumerate_digraphs(2, ClassFilter::Any).collect();
        assert_eq!(all.len(), 4);
        let sc: Vec<_> = enumerate_digraphs(2, ClassFilter::StronglyConnectedEven).collect();
        assert_eq!(sc.len(), 1);
        assert_eq!(sc[0].arc_count(), 2);
        let single: Vec<_> = enumerate_digraphs(2, ClassFilter::Exactly(ConnectivityClass::SingleInitialEven)).collect();
        assert_eq!(single.len(), 2);
    }

    #[test]
    fn sampling_is_reproducible() {
        let a: Vec<_> = sample_digraphs(8, ClassFilter::Any, 7).take(20).collect();
        let b: Vec<_> = sample_digraphs(8, ClassFilter::Any, 7).take(20).collect();
        assert_eq!(a, b);
        let c: Vec<_> = sample_digraphs(8, ClassFilter::Any, 8).take(20).collect();
        assert_ne!(a, c);
    }

    #[test]
    fn random_trees_are_spanning() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..30 {
            let t = random_out_tree(n, &mut rng);
            assert_eq!(t.vertices(), (0..n).collect::<Vec<_>>());
        }
    }
}
