//! Matching gadget for weak perfect out-forests.
//!
//! Each vertex `u` of a digraph on `n = 2k` vertices becomes a block `X_u` of
//! `2k - 1` gadget vertices: a distinguished vertex `y_u` plus `k - 1`
//! internal pairs joined by an edge. Every arc `uv` contributes the edges
//! from all of `X_u` to `y_v`. The gadget has a perfect matching exactly when
//! the digraph has a weak perfect out-forest, and the maps below convert
//! between the two.

use std::ops::Range;

use thiserror::Error;

use crate::forest::{verify, ForestError, ForestKind, OutForest};
use crate::graph::{Digraph, UGraph};
use crate::matching::{maximum_matching, Matching};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("digraph has odd order {0}")]
    OddOrder(usize),
    #[error("digraph has no vertices")]
    Empty,
    #[error("matching is not a perfect matching of the gadget")]
    NotPerfectMatching,
    #[error("gadget edge {{{0}, {1}}} does not correspond to an arc")]
    UnknownEdge(usize, usize),
    #[error("forest is not a weak perfect out-forest")]
    NotWeakPerfect,
    #[error("vertex {0} has in-degree above one")]
    InDegree(usize),
    #[error("vertex {0} is incident to an even number of arcs")]
    EvenIncidence(usize),
    #[error(transparent)]
    Forest(#[from] ForestError),
}

/// Layout of the gadget relative to its source digraph.
///
/// Block `u` occupies `u * (2k - 1) .. (u + 1) * (2k - 1)`; its first vertex
/// is `y_u` and the rest form the internal pairs in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetCorrespondence {
    n: usize,
    k: usize,
}

impl GadgetCorrespondence {
    pub fn new(n: usize) -> Result<Self, GadgetError> {
        if n == 0 {
            return Err(GadgetError::Empty);
        }
        if n % 2 == 1 {
            return Err(GadgetError::OddOrder(n));
        }
        Ok(GadgetCorrespondence { n, k: n / 2 })
    }

    /// Vertex count of the source digraph.
    pub fn source_order(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn block_len(&self) -> usize {
        2 * self.k - 1
    }

    pub fn gadget_order(&self) -> usize {
        self.n * self.block_len()
    }

    pub fn block(&self, u: usize) -> Range<usize> {
        let s = u * self.block_len();
        s..s + self.block_len()
    }

    pub fn y(&self, u: usize) -> usize {
        u * self.block_len()
    }

    /// Source vertex whose block contains gadget vertex `x`.
    pub fn block_of(&self, x: usize) -> usize {
        x / self.block_len()
    }

    /// The `k - 1` internal pairs of block `u`.
    pub fn pairs(&self, u: usize) -> impl Iterator<Item = (usize, usize)> {
        let y = self.y(u);
        (0..self.k - 1).map(move |i| (y + 1 + 2 * i, y + 2 + 2 * i))
    }

    /// Gadget edges contributed by arc `(u, v)`.
    pub fn arc_edges(&self, u: usize, v: usize) -> impl Iterator<Item = (usize, usize)> {
        let yv = self.y(v);
        self.block(u).map(move |x| (x, yv))
    }
}

/// Builds the gadget graph of `d`.
///
/// An antiparallel pair `uv`, `vu` produces the edge `{y_u, y_v}` twice; it
/// is stored once.
pub fn build_gadget(d: &Digraph) -> Result<(UGraph, GadgetCorrespondence), GadgetError> {
    let c = GadgetCorrespondence::new(d.n())?;
    let internal = (0..d.n()).flat_map(|u| c.pairs(u));
    let across = d.arcs().iter().flat_map(|&(u, v)| c.arc_edges(u, v));
    let g = UGraph::new_collapsing(c.gadget_order(), internal.chain(across).collect::<Vec<_>>())
        .expect("gadget edges are in range and loop-free");
    Ok((g, c))
}

/// Arcs with in-degree at most one per vertex; cycles allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcSet {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

impl ArcSet {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GadgetError> {
        let mut arcs: Vec<_> = arcs.into_iter().collect();
        arcs.sort_unstable();
        arcs.dedup();
        let mut has_in = vec![false; n];
        for &(t, h) in &arcs {
            if t >= n || h >= n {
                return Err(ForestError::VertexOutOfRange { vertex: t.max(h), n }.into());
            }
            if std::mem::replace(&mut has_in[h], true) {
                return Err(GadgetError::InDegree(h));
            }
        }
        Ok(ArcSet { n, arcs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    fn incidence(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(t, h) in &self.arcs {
            deg[t] += 1;
            deg[h] += 1;
        }
        deg
    }
}

/// Reads the arc set selected by a perfect matching of the gadget.
///
/// An edge `{x, y_v}` with `x` in `X_u` selects `uv`. An edge `{y_u, y_v}`
/// selects whichever of `uv`, `vu` exists, preferring the one whose tail has
/// the smaller index.
pub fn matching_to_arcset(d: &Digraph, m: &Matching, c: &GadgetCorrespondence) -> Result<ArcSet, GadgetError> {
    let edges = m.edges();
    if edges.len() * 2 != c.gadget_order() || d.n() != c.source_order() {
        return Err(GadgetError::NotPerfectMatching);
    }
    let mut arcs = Vec::new();
    for (a, b) in edges {
        let (ba, bb) = (c.block_of(a), c.block_of(b));
        if ba == bb {
            continue;
        }
        let (a_is_y, b_is_y) = (a == c.y(ba), b == c.y(bb));
        let arc = match (a_is_y, b_is_y) {
            (false, true) => (ba, bb),
            (true, false) => (bb, ba),
            (true, true) => {
                let (lo, hi) = (ba.min(bb), ba.max(bb));
                if d.has_arc(lo, hi) {
                    (lo, hi)
                } else {
                    (hi, lo)
                }
            }
            (false, false) => return Err(GadgetError::UnknownEdge(a, b)),
        };
        if !d.has_arc(arc.0, arc.1) {
            return Err(GadgetError::UnknownEdge(a, b));
        }
        arcs.push(arc);
    }
    ArcSet::new(d.n(), arcs)
}

/// Deletes every directed cycle of `f`.
///
/// With in-degree at most one the cycles are vertex-disjoint and are found by
/// following parent pointers; they are removed in ascending order of their
/// smallest vertex.
pub fn remove_cycles(f: &ArcSet) -> Result<OutForest, GadgetError> {
    let n = f.n();
    if let Some(v) = f.incidence().iter().position(|d| d % 2 == 0) {
        return Err(GadgetError::EvenIncidence(v));
    }
    let mut parent = vec![None; n];
    for &(t, h) in f.arcs() {
        parent[h] = Some(t);
    }

    // stamp[v]: 0 unvisited, otherwise the walk that reached v
    let mut stamp = vec![0usize; n];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if stamp[start] != 0 {
            continue;
        }
        let walk = start + 1;
        let mut v = start;
        loop {
            stamp[v] = walk;
            match parent[v] {
                Some(p) if stamp[p] == 0 => v = p,
                Some(p) if stamp[p] == walk => {
                    let mut cycle = vec![p];
                    let mut w = parent[p].unwrap();
                    while w != p {
                        cycle.push(w);
                        w = parent[w].unwrap();
                    }
                    cycles.push(cycle);
                    break;
                }
                _ => break,
            }
        }
    }
    cycles.sort_by_key(|c| c.iter().min().copied());
    for cycle in cycles {
        for v in cycle {
            parent[v] = None;
        }
    }
    Ok(OutForest::from_parents(parent)?)
}

/// Converts a weak perfect out-forest into a perfect matching of the gadget.
///
/// A root sends its first out-arc through `y_u`. Other out-arcs use internal
/// pair vertices, finishing a half-used pair before opening the next one, so
/// the uncovered vertices of each block are whole internal pairs.
pub fn forest_to_matching(d: &Digraph, f: &OutForest, c: &GadgetCorrespondence) -> Result<Matching, GadgetError> {
    if d.n() != c.source_order() || !verify(d, f, ForestKind::WeakPerfect).passed() {
        return Err(GadgetError::NotWeakPerfect);
    }
    let n = d.n();
    let mut y_free: Vec<bool> = (0..n).map(|u| f.parent(u).is_none()).collect();
    let mut next_pair = vec![0usize; n];
    let mut half_open: Vec<Option<usize>> = vec![None; n];
    let mut edges = Vec::with_capacity(c.gadget_order() / 2);

    for (u, v) in f.arcs() {
        let x = if std::mem::take(&mut y_free[u]) {
            c.y(u)
        } else if let Some(x) = half_open[u].take() {
            x
        } else {
            let (a, b) = c.pairs(u).nth(next_pair[u]).ok_or(GadgetError::NotWeakPerfect)?;
            next_pair[u] += 1;
            half_open[u] = Some(b);
            a
        };
        edges.push((x, c.y(v)));
    }
    for u in 0..n {
        if half_open[u].is_some() {
            return Err(GadgetError::NotWeakPerfect);
        }
        edges.extend(c.pairs(u).skip(next_pair[u]));
    }
    let (g, _) = build_gadget(d)?;
    Matching::new(&g, edges).map_err(|_| GadgetError::NotWeakPerfect)
}

/// A weak perfect out-forest of `d`, or `None` when none exists.
///
/// Connectivity is not required.
pub fn decide_weak(d: &Digraph) -> Option<OutForest> {
    let (g, c) = build_gadget(d).ok()?;
    let m = maximum_matching(&g);
    if !m.is_perfect() {
        return None;
    }
    let arcs = matching_to_arcset(d, &m, &c).expect("perfect gadget matching selects arcs");
    let f = remove_cycles(&arcs).expect("selected arcs have odd incidence");
    debug_assert!(verify(d, &f, ForestKind::WeakPerfect).passed());
    Some(f)
}
