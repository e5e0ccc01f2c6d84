//! Strong components, connectivity classes and spanning out-trees.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Digraph;

/// Strongest connectivity label that applies to a digraph.
///
/// For even order the labels nest: strongly connected digraphs have a single
/// initial strong component, and those are connected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConnectivityClass {
    StronglyConnectedEven,
    SingleInitialEven,
    ConnectedEven,
    ConnectedOdd,
    Disconnected,
}

impl ConnectivityClass {
    /// Connected and of even order.
    pub fn is_connected_even(self) -> bool {
        matches!(
            self,
            Self::StronglyConnectedEven | Self::SingleInitialEven | Self::ConnectedEven
        )
    }

    /// Even order with a vertex reaching every other vertex.
    pub fn has_single_initial(self) -> bool {
        matches!(self, Self::StronglyConnectedEven | Self::SingleInitialEven)
    }

    pub fn is_connected(self) -> bool {
        self != Self::Disconnected
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::StronglyConnectedEven => "strongly-connected-even",
            Self::SingleInitialEven => "single-initial-even",
            Self::ConnectedEven => "connected-even",
            Self::ConnectedOdd => "connected-odd",
            Self::Disconnected => "disconnected",
        }
    }
}

impl std::fmt::Display for ConnectivityClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Strong component decomposition.
#[derive(Debug, Clone)]
pub struct StrongComponents {
    /// Component index per vertex.
    pub component: Vec<usize>,
    pub count: usize,
}

impl StrongComponents {
    /// Components without incoming arcs from other components.
    pub fn initial(&self, d: &Digraph) -> Vec<usize> {
        let mut has_in = vec![false; self.count];
        for &(t, h) in d.arcs() {
            if self.component[t] != self.component[h] {
                has_in[self.component[h]] = true;
            }
        }
        (0..self.count).filter(|&c| !has_in[c]).collect()
    }
}

/// Kosaraju's algorithm with explicit stacks.
pub fn strong_components(d: &Digraph) -> StrongComponents {
    let n = d.n();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![(s, 0usize)];
        while let Some((v, i)) = stack.last_mut() {
            let v = *v;
            if let Some(&w) = d.out_neighbors(v).get(*i) {
                *i += 1;
                if !seen[w] {
                    seen[w] = true;
                    stack.push((w, 0));
                }
            } else {
                order.push(v);
                stack.pop();
            }
        }
    }

    let mut component = vec![usize::MAX; n];
    let mut count = 0;
    for &s in order.iter().rev() {
        if component[s] != usize::MAX {
            continue;
        }
        component[s] = count;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in d.in_neighbors(v) {
                if component[w] == usize::MAX {
                    component[w] = count;
                    stack.push(w);
                }
            }
        }
        count += 1;
    }
    StrongComponents { component, count }
}

/// Returns the strongest applicable [`ConnectivityClass`].
///
/// The empty digraph counts as disconnected.
pub fn classify(d: &Digraph) -> ConnectivityClass {
    if !d.underlying_graph().is_connected() {
        return ConnectivityClass::Disconnected;
    }
    if d.n() % 2 == 1 {
        return ConnectivityClass::ConnectedOdd;
    }
    let scc = strong_components(d);
    if scc.count == 1 {
        ConnectivityClass::StronglyConnectedEven
    } else if scc.initial(d).len() == 1 {
        ConnectivityClass::SingleInitialEven
    } else {
        ConnectivityClass::ConnectedEven
    }
}

/// A vertex from which every vertex is reachable, if one exists.
///
/// Picks the smallest vertex of the unique initial strong component.
pub fn find_universal_root(d: &Digraph) -> Option<usize> {
    if d.n() == 0 {
        return None;
    }
    let scc = strong_components(d);
    match scc.initial(d).as_slice() {
        [c] => (0..d.n()).find(|&v| scc.component[v] == *c),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OutTreeError {
    #[error("vertex {0} is not reachable from the root")]
    NotReachable(usize),
    #[error("root {0} has a parent")]
    RootHasParent(usize),
    #[error("parent {parent} of vertex {child} is not in the tree")]
    DanglingParent { child: usize, parent: usize },
    #[error("parent relation has a cycle through vertex {0}")]
    Cycle(usize),
    #[error("vertex {0} has more than one parent")]
    MultipleParents(usize),
}

/// An out-tree on a subset of vertices, stored as child → parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutTree {
    root: usize,
    parent: BTreeMap<usize, usize>,
}

impl OutTree {
    pub fn new(root: usize, parent: BTreeMap<usize, usize>) -> Result<Self, OutTreeError> {
        if parent.contains_key(&root) {
            return Err(OutTreeError::RootHasParent(root));
        }
        for (&c, &p) in &parent {
            if p != root && !parent.contains_key(&p) {
                return Err(OutTreeError::DanglingParent { child: c, parent: p });
            }
        }
        // vertices already known to reach the root
        let mut settled = BTreeSet::from([root]);
        for &start in parent.keys() {
            let mut walk = Vec::new();
            let mut v = start;
            while !settled.contains(&v) {
                walk.push(v);
                if walk.len() > parent.len() {
                    return Err(OutTreeError::Cycle(start));
                }
                v = parent[&v];
            }
            settled.extend(walk);
        }
        Ok(OutTree { root, parent })
    }

    /// Builds a tree from `(tail, head)` arcs rooted at `root`.
    pub fn from_arcs(root: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, OutTreeError> {
        let mut parent = BTreeMap::new();
        for (t, h) in arcs {
            if parent.insert(h, t).is_some() {
                return Err(OutTreeError::MultipleParents(h));
            }
        }
        Self::new(root, parent)
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent.get(&v).copied()
    }

    /// Child → parent map.
    pub fn parents(&self) -> &BTreeMap<usize, usize> {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.parent.len() + 1
    }

    /// Vertices in ascending order.
    pub fn vertices(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = std::iter::once(self.root).chain(self.parent.keys().copied()).collect();
        vs.sort_unstable();
        vs
    }

    /// Arcs `(parent, child)` ordered by child.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parent.iter().map(|(&c, &p)| (p, c))
    }
}

/// Breadth-first spanning out-tree rooted at `root`, visiting out-neighbours
/// in ascending order.
pub fn spanning_out_tree(d: &Digraph, root: usize) -> Result<OutTree, OutTreeError> {
    let n = d.n();
    if root >= n {
        return Err(OutTreeError::NotReachable(root));
    }
    let mut seen = vec![false; n];
    let mut parent = BTreeMap::new();
    let mut queue = VecDeque::from([root]);
    seen[root] = true;
    while let Some(v) = queue.pop_front() {
        for &w in d.out_neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                parent.insert(w, v);
                queue.push_back(w);
            }
        }
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        return Err(OutTreeError::NotReachable(v));
    }
    Ok(OutTree { root, parent })
}
