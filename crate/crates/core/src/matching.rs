//! Maximum cardinality matching in general graphs (Edmonds' blossom algorithm).

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::UGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("edge {{{0}, {1}}} is not in the graph")]
    NotAnEdge(usize, usize),
    #[error("vertex {0} is covered twice")]
    SharedEndpoint(usize),
}

/// A set of vertex-disjoint edges of some host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    mate: Vec<Option<usize>>,
}

impl Matching {
    pub fn new(g: &UGraph, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, MatchingError> {
        let mut mate = vec![None; g.n()];
        for (a, b) in edges {
            if !g.has_edge(a, b) {
                return Err(MatchingError::NotAnEdge(a, b));
            }
            for v in [a, b] {
                if mate[v].is_some() {
                    return Err(MatchingError::SharedEndpoint(v));
                }
            }
            mate[a] = Some(b);
            mate[b] = Some(a);
        }
        Ok(Matching { mate })
    }

    pub fn mate(&self, v: usize) -> Option<usize> {
        self.mate[v]
    }

    /// Edges as ascending `(min, max)` pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.mate
            .iter()
            .enumerate()
            .filter_map(|(v, m)| m.filter(|&m| v < m).map(|m| (v, m)))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.mate.iter().flatten().count() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn covers(&self, v: usize) -> bool {
        self.mate[v].is_some()
    }

    /// True if every vertex of the host graph is covered.
    pub fn is_perfect(&self) -> bool {
        self.mate.iter().all(Option::is_some)
    }
}

const NONE: usize = usize::MAX;

struct Blossom<'g> {
    g: &'g UGraph,
    mate: Vec<usize>,
    pred: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'g> Blossom<'g> {
    fn new(g: &'g UGraph) -> Self {
        let n = g.n();
        let mut mate = vec![NONE; n];
        // greedy start, ascending
        for v in 0..n {
            if mate[v] == NONE {
                if let Some(&w) = g.neighbors(v).iter().find(|&&w| mate[w] == NONE) {
                    mate[v] = w;
                    mate[w] = v;
                }
            }
        }
        Blossom {
            g,
            mate,
            pred: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut on_path = vec![false; self.g.n()];
        loop {
            a = self.base[a];
            on_path[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.pred[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if on_path[b] {
                return b;
            }
            b = self.pred[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.pred[v] = child;
            child = self.mate[v];
            v = self.pred[self.mate[v]];
        }
    }

    /// Searches an augmenting path from the exposed vertex `root`; returns
    /// its other endpoint.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.g.n();
        self.used.fill(false);
        self.pred.fill(NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for &to in self.g.neighbors(v) {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.pred[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.fill(false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.pred[to] == NONE {
                    self.pred[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.pred[v];
            let next = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = next;
        }
    }

    fn run(mut self) -> Matching {
        for root in 0..self.g.n() {
            if self.mate[root] == NONE {
                if let Some(end) = self.find_path(root) {
                    self.augment(end);
                }
            }
        }
        Matching { mate: self.mate.into_iter().map(|m| (m != NONE).then_some(m)).collect() }
    }
}

/// A maximum cardinality matching of `g`. Runs in O(V^3).
pub fn maximum_matching(g: &UGraph) -> Matching {
    Blossom::new(g).run()
}

/// Whether `g` has a matching covering every vertex.
pub fn has_perfect_matching(g: &UGraph) -> bool {
    g.n() % 2 == 0 && maximum_matching(g).is_perfect()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn petersen() -> UGraph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        UGraph::new(10, edges).unwrap()
    }

    #[test]
    fn small_cases() {
        let tri = UGraph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(maximum_matching(&tri).len(), 1);
        let k4 = UGraph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(maximum_matching(&k4).is_perfect());
        assert_eq!(maximum_matching(&petersen()).len(), 5);
        assert!(has_perfect_matching(&UGraph::new(2, [(0, 1)]).unwrap()));
        assert!(!has_perfect_matching(&UGraph::new(3, [(0, 1), (1, 2)]).unwrap()));
        assert!(maximum_matching(&UGraph::new(0, []).unwrap()).is_empty());
    }

    #[test]
    fn needs_blossom_contraction() {
        // greedy takes {0,1},{2,3}; the augmenting path 5-4-... runs through
        // the odd cycle 0-1-2-3-4
        let g = UGraph::new(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (4, 5), (1, 6)]).unwrap();
        assert_eq!(maximum_matching(&g).len(), 3);
    }

    #[test]
    fn matching_validation() {
        let g = UGraph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(Matching::new(&g, [(0, 2)]), Err(MatchingError::NotAnEdge(0, 2)));
        assert_eq!(Matching::new(&g, [(0, 1), (1, 2)]), Err(MatchingError::SharedEndpoint(1)));
        let m = Matching::new(&g, [(2, 1)]).unwrap();
        assert_eq!(m.edges(), vec![(1, 2)]);
        assert!(!m.covers(0));
    }
}
