//! Reduction from 3-dimensional matching to perfect out-forests.
//!
//! For an instance with classes of size `k` and `m` triples the digraph has
//! an independent block `X` of `m - k` vertices, a block `Y` with one vertex
//! per triple, and the three class blocks. Arcs: all of `X -> Y`, each triple
//! vertex to its three members, both directions between `X` and every class
//! vertex, and both directions inside `Y`.

use std::collections::BTreeSet;
use std::ops::Range;

use thiserror::Error;

use crate::forest::{verify, ForestKind, OutForest};
use crate::graph::Digraph;

pub type Triple = [usize; 3];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HardnessError {
    #[error("instance has no triples")]
    NoTriples,
    #[error("triple {index} has class index out of range for k = {k}")]
    IndexOutOfRange { index: usize, k: usize },
    #[error("triple {0:?} appears twice")]
    DuplicateTriple(Triple),
    #[error("{m} triples cannot be reduced with k = {k} (need m >= k)")]
    TooFewTriples { k: usize, m: usize },
    #[error("triples do not form a perfect 3-dimensional matching")]
    NotAPerfectMatching,
    #[error("forest is not a perfect out-forest")]
    NotPerfect,
    #[error("forest tree rooted at {0} has an unexpected shape")]
    StructureMismatch(usize),
}

/// A 3-dimensional matching instance with classes `0..k` each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeDMInstance {
    k: usize,
    triples: Vec<Triple>,
}

impl ThreeDMInstance {
    pub fn new(k: usize, triples: Vec<Triple>) -> Result<Self, HardnessError> {
        if triples.is_empty() {
            return Err(HardnessError::NoTriples);
        }
        let mut seen = BTreeSet::new();
        for (index, t) in triples.iter().enumerate() {
            if t.iter().any(|&a| a >= k) {
                return Err(HardnessError::IndexOutOfRange { index, k });
            }
            if !seen.insert(*t) {
                return Err(HardnessError::DuplicateTriple(*t));
            }
        }
        Ok(ThreeDMInstance { k, triples })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.triples.len()
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    /// True if `sol` is `k` distinct instance triples covering every class
    /// vertex.
    pub fn is_perfect_matching(&self, sol: &[Triple]) -> bool {
        if sol.len() != self.k || sol.iter().any(|t| !self.triples.contains(t)) {
            return false;
        }
        (0..3).all(|c| sol.iter().map(|t| t[c]).collect::<BTreeSet<_>>().len() == self.k)
    }
}

/// Role of a vertex of the reduced digraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    X(usize),
    /// Vertex of the triple with this index.
    Y(usize),
    /// `Class(c, a)` is vertex `a` of class `c`.
    Class(usize, usize),
}

/// Vertex layout of a reduced digraph: `X`, then `Y`, then the three classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionMap {
    k: usize,
    triples: Vec<Triple>,
}

impl ReductionMap {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.triples.len()
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn order(&self) -> usize {
        2 * self.m() - self.k + 3 * self.k
    }

    pub fn x_block(&self) -> Range<usize> {
        0..self.m() - self.k
    }

    pub fn y_block(&self) -> Range<usize> {
        let s = self.m() - self.k;
        s..s + self.m()
    }

    pub fn class_block(&self, c: usize) -> Range<usize> {
        let s = 2 * self.m() - self.k + c * self.k;
        s..s + self.k
    }

    pub fn y(&self, t: usize) -> usize {
        self.y_block().start + t
    }

    pub fn class_vertex(&self, c: usize, a: usize) -> usize {
        self.class_block(c).start + a
    }

    pub fn role(&self, v: usize) -> Role {
        if self.x_block().contains(&v) {
            Role::X(v)
        } else if self.y_block().contains(&v) {
            Role::Y(v - self.y_block().start)
        } else {
            let off = v - self.class_block(0).start;
            Role::Class(off / self.k, off % self.k)
        }
    }

    /// `X` is empty, so the digraph need not be strongly connected.
    pub fn is_degenerate(&self) -> bool {
        self.m() == self.k
    }
}

/// Builds the reduced digraph and its vertex layout.
pub fn reduce_3dm(inst: &ThreeDMInstance) -> Result<(Digraph, ReductionMap), HardnessError> {
    let (k, m) = (inst.k(), inst.m());
    if m < k {
        return Err(HardnessError::TooFewTriples { k, m });
    }
    let map = ReductionMap { k, triples: inst.triples().to_vec() };
    let classes: Vec<usize> = (0..3).flat_map(|c| map.class_block(c)).collect();
    let mut arcs = Vec::new();
    for x in map.x_block() {
        arcs.extend(map.y_block().map(|y| (x, y)));
        for &v in &classes {
            arcs.push((x, v));
            arcs.push((v, x));
        }
    }
    for (t, triple) in inst.triples().iter().enumerate() {
        for (c, &a) in triple.iter().enumerate() {
            arcs.push((map.y(t), map.class_vertex(c, a)));
        }
    }
    for a in map.y_block() {
        arcs.extend(map.y_block().filter(|&b| b != a).map(|b| (a, b)));
    }
    let d = Digraph::new(map.order(), arcs).expect("reduction arcs are distinct");
    Ok((d, map))
}

/// Perfect out-forest of the reduced digraph built from a solution: a claw
/// from each chosen triple vertex to its members, and each `X` vertex paired
/// with an unchosen triple vertex in ascending order.
pub fn embed_solution(inst: &ThreeDMInstance, sol: &[Triple], map: &ReductionMap) -> Result<OutForest, HardnessError> {
    if !inst.is_perfect_matching(sol) || map.triples() != inst.triples() {
        return Err(HardnessError::NotAPerfectMatching);
    }
    let chosen: BTreeSet<usize> =
        sol.iter().map(|t| inst.triples().iter().position(|u| u == t).unwrap()).collect();
    let mut arcs = Vec::new();
    for &t in &chosen {
        for (c, &a) in inst.triples()[t].iter().enumerate() {
            arcs.push((map.y(t), map.class_vertex(c, a)));
        }
    }
    let unchosen = (0..inst.m()).filter(|t| !chosen.contains(t));
    arcs.extend(map.x_block().zip(unchosen).map(|(x, t)| (x, map.y(t))));
    Ok(OutForest::from_arcs(map.order(), arcs).expect("claws and pairs are disjoint"))
}

/// Reads the 3-dimensional matching off a perfect out-forest of the reduced
/// digraph. Triples are returned in instance order.
pub fn extract_solution(d: &Digraph, f: &OutForest, map: &ReductionMap) -> Result<Vec<Triple>, HardnessError> {
    if d.n() != map.order() || !verify(d, f, ForestKind::Perfect).passed() {
        return Err(HardnessError::NotPerfect);
    }
    let mut chosen = Vec::new();
    for tree in f.trees() {
        let root = f.roots()[f.tree_id(tree[0])];
        let roles: Vec<Role> = tree.iter().map(|&v| map.role(v)).collect();
        match roles.as_slice() {
            [Role::X(_), Role::Y(_)] => {}
            [Role::Y(t), Role::Class(0, a), Role::Class(1, b), Role::Class(2, c)]
                if map.triples()[*t] == [*a, *b, *c] =>
            {
                chosen.push(*t)
            }
            _ => return Err(HardnessError::StructureMismatch(root)),
        }
    }
    chosen.sort_unstable();
    let sol: Vec<Triple> = chosen.into_iter().map(|t| map.triples()[t]).collect();
    if sol.len() != map.k() {
        return Err(HardnessError::StructureMismatch(f.roots()[0]));
    }
    Ok(sol)
}
