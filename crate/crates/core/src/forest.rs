//! Spanning out-forests, arc taxonomy and verifiers for the four forest kinds.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Digraph, UGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForestError {
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex {0} is its own parent")]
    SelfParent(usize),
    #[error("vertex {0} has more than one parent")]
    InDegree(usize),
    #[error("parent relation has a cycle through vertex {0}")]
    Cycle(usize),
    #[error("arc ({0}, {1}) is not in the digraph")]
    ArcNotInDigraph(usize, usize),
    #[error("forest is not an almost perfect out-forest of the bidirected graph")]
    NotAlmostPerfect(VerificationReport),
}

/// A spanning out-forest given by a parent pointer per vertex.
///
/// Tree ids, depths and preorder intervals are derived on construction;
/// the value is immutable afterwards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutForest {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    tree_id: Vec<usize>,
    depth: Vec<usize>,
    enter: Vec<usize>,
    exit: Vec<usize>,
    roots: Vec<usize>,
}

impl OutForest {
    pub fn from_parents(parent: Vec<Option<usize>>) -> Result<Self, ForestError> {
        let n = parent.len();
        let mut children = vec![Vec::new(); n];
        for (v, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                if p >= n {
                    return Err(ForestError::VertexOutOfRange { vertex: p, n });
                }
                if p == v {
                    return Err(ForestError::SelfParent(v));
                }
                children[p].push(v);
            }
        }
        let roots: Vec<usize> = (0..n).filter(|&v| parent[v].is_none()).collect();

        let mut tree_id = vec![usize::MAX; n];
        let mut depth = vec![0; n];
        let mut enter = vec![0; n];
        let mut exit = vec![0; n];
        let mut clock = 0;
        for (id, &r) in roots.iter().enumerate() {
            // (vertex, next child index)
            let mut stack = vec![(r, 0usize)];
            tree_id[r] = id;
            enter[r] = clock;
            clock += 1;
            while let Some((v, i)) = stack.last_mut() {
                let v = *v;
                if let Some(&c) = children[v].get(*i) {
                    *i += 1;
                    tree_id[c] = id;
                    depth[c] = depth[v] + 1;
                    enter[c] = clock;
                    clock += 1;
                    stack.push((c, 0));
                } else {
                    exit[v] = clock;
                    stack.pop();
                }
            }
        }
        if let Some(v) = tree_id.iter().position(|&t| t == usize::MAX) {
            return Err(ForestError::Cycle(v));
        }
        Ok(OutForest { parent, children, tree_id, depth, enter, exit, roots })
    }

    /// Builds a forest on `n` vertices from `(tail, head)` arcs.
    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, ForestError> {
        let mut parent = vec![None; n];
        for (t, h) in arcs {
            for v in [t, h] {
                if v >= n {
                    return Err(ForestError::VertexOutOfRange { vertex: v, n });
                }
            }
            if parent[h].replace(t).is_some() {
                return Err(ForestError::InDegree(h));
            }
        }
        Self::from_parents(parent)
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    /// Children of `v`, ascending.
    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// Roots in ascending order; tree `i` is rooted at `roots()[i]`.
    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn tree_count(&self) -> usize {
        self.roots.len()
    }

    pub fn tree_id(&self, v: usize) -> usize {
        self.tree_id[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    /// Forest arcs in ascending `(tail, head)` order.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut arcs: Vec<_> = self.parent.iter().enumerate().filter_map(|(v, p)| p.map(|p| (p, v))).collect();
        arcs.sort_unstable();
        arcs
    }

    pub fn arc_count(&self) -> usize {
        self.n() - self.roots.len()
    }

    pub fn has_arc(&self, tail: usize, head: usize) -> bool {
        self.parent.get(head).copied().flatten() == Some(tail)
    }

    /// Degree of `v` in the underlying undirected forest.
    pub fn degree(&self, v: usize) -> usize {
        self.children[v].len() + usize::from(self.parent[v].is_some())
    }

    /// True if `a` is an ancestor of `b` other than `b` itself.
    pub fn is_proper_ancestor(&self, a: usize, b: usize) -> bool {
        a != b && self.enter[a] <= self.enter[b] && self.exit[b] <= self.exit[a]
    }

    /// Vertex sets of the trees, indexed by tree id, each ascending.
    pub fn trees(&self) -> Vec<Vec<usize>> {
        let mut trees = vec![Vec::new(); self.roots.len()];
        for v in 0..self.n() {
            trees[self.tree_id[v]].push(v);
        }
        trees
    }

    /// Forest arcs on the undirected path between two vertices of one tree.
    pub fn tree_path(&self, u: usize, v: usize) -> Option<Vec<(usize, usize)>> {
        if self.tree_id[u] != self.tree_id[v] {
            return None;
        }
        let (mut a, mut b) = (u, v);
        let mut path = Vec::new();
        while a != b {
            if self.depth[a] >= self.depth[b] {
                let p = self.parent[a]?;
                path.push((p, a));
                a = p;
            } else {
                let p = self.parent[b]?;
                path.push((p, b));
                b = p;
            }
        }
        Some(path)
    }
}

/// Position of a host arc relative to an out-forest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ArcClass {
    TreeArc,
    BackwardArc,
    ForwardArc,
    CrossArc,
    InterTreeArc,
}

/// Classifies an arc of `d` relative to `f`.
pub fn classify_arc(d: &Digraph, f: &OutForest, (tail, head): (usize, usize)) -> Result<ArcClass, ForestError> {
    if !d.has_arc(tail, head) || head >= f.n() || tail >= f.n() {
        return Err(ForestError::ArcNotInDigraph(tail, head));
    }
    Ok(if f.has_arc(tail, head) {
        ArcClass::TreeArc
    } else if f.tree_id(tail) != f.tree_id(head) {
        ArcClass::InterTreeArc
    } else if f.is_proper_ancestor(head, tail) {
        ArcClass::BackwardArc
    } else if f.is_proper_ancestor(tail, head) {
        ArcClass::ForwardArc
    } else {
        ArcClass::CrossArc
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ForestKind {
    Perfect,
    AlmostPerfect,
    WeakPerfect,
    Even,
}

impl ForestKind {
    pub const ALL: [ForestKind; 4] = [Self::Perfect, Self::AlmostPerfect, Self::WeakPerfect, Self::Even];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Perfect => "perfect",
            Self::AlmostPerfect => "almost-perfect",
            Self::WeakPerfect => "weak-perfect",
            Self::Even => "even",
        }
    }
}

impl fmt::Display for ForestKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ForestKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown forest kind `{s}`"))
    }
}

/// Identifier of a failed verification rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// Forest and digraph disagree on the vertex count.
    VertexCountMismatch,
    /// A forest arc is missing from the digraph.
    ArcNotInDigraph,
    /// A vertex has even degree in the underlying forest.
    EvenDegree,
    /// A digraph arc joins two vertices of one tree but is not a tree arc.
    TreeNotInduced,
    ForwardArc,
    CrossArc,
    /// A tree has odd order.
    OddOrderTree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub rule: Rule,
    pub vertices: Vec<usize>,
    pub arcs: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Outcome of [`verify`]. All violations are collected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub verdict: Verdict,
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        let verdict = if violations.is_empty() { Verdict::Pass } else { Verdict::Fail };
        VerificationReport { verdict, violations }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn has(&self, rule: Rule) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }
}

/// Checks `f` against the definition of `kind` in `d`.
pub fn verify(d: &Digraph, f: &OutForest, kind: ForestKind) -> VerificationReport {
    let mut out = Vec::new();
    if d.n() != f.n() {
        out.push(Violation { rule: Rule::VertexCountMismatch, vertices: vec![d.n(), f.n()], arcs: vec![] });
        return VerificationReport::from_violations(out);
    }
    for (t, h) in f.arcs() {
        if !d.has_arc(t, h) {
            out.push(Violation { rule: Rule::ArcNotInDigraph, vertices: vec![], arcs: vec![(t, h)] });
        }
    }

    if kind != ForestKind::Even {
        for v in 0..f.n() {
            if f.degree(v) % 2 == 0 {
                out.push(Violation { rule: Rule::EvenDegree, vertices: vec![v], arcs: vec![] });
            }
        }
    }

    match kind {
        ForestKind::Perfect => {
            for &(t, h) in d.arcs() {
                if f.tree_id(t) == f.tree_id(h) && !f.has_arc(t, h) {
                    out.push(Violation {
                        rule: Rule::TreeNotInduced,
                        vertices: vec![f.roots()[f.tree_id(t)]],
                        arcs: vec![(t, h)],
                    });
                }
            }
        }
        ForestKind::AlmostPerfect => {
            for &a in d.arcs() {
                let rule = match classify_arc(d, f, a) {
                    Ok(ArcClass::ForwardArc) => Rule::ForwardArc,
                    Ok(ArcClass::CrossArc) => Rule::CrossArc,
                    _ => continue,
                };
                out.push(Violation { rule, vertices: vec![], arcs: vec![a] });
            }
        }
        ForestKind::WeakPerfect => {}
        ForestKind::Even => {
            for tree in f.trees() {
                if tree.len() % 2 == 1 {
                    out.push(Violation { rule: Rule::OddOrderTree, vertices: tree, arcs: vec![] });
                }
            }
        }
    }
    VerificationReport::from_violations(out)
}

/// Reads a perfect forest of `g` off an almost perfect out-forest of its
/// bidirection. Returns the forest's edges as ascending `(min, max)` pairs.
pub fn extract_perfect_forest(g: &UGraph, f: &OutForest) -> Result<Vec<(usize, usize)>, ForestError> {
    let report = verify(&g.bidirect(), f, ForestKind::AlmostPerfect);
    if !report.passed() {
        return Err(ForestError::NotAlmostPerfect(report));
    }
    let mut edges: Vec<_> = f.arcs().into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
    edges.sort_unstable();
    Ok(edges)
}
