//! Forest transformations: even out-tree to weak perfect out-forest, weak
//! perfect to almost perfect, and the end-to-end constructors built on them.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::connectivity::{classify, find_universal_root, spanning_out_tree, ConnectivityClass, OutTree};
use crate::forest::{classify_arc, extract_perfect_forest, verify, ArcClass, ForestKind, OutForest};
use crate::graph::{Digraph, UGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LemmaError {
    #[error("out-tree has odd order {0}")]
    OddOrder(usize),
    #[error("out-tree vertices are not exactly 0..{0}")]
    NotSpanning(usize),
    #[error("forest is not a weak perfect out-forest")]
    NotWeakPerfect,
    #[error("digraph class {0} has no vertex reaching all others with even order")]
    WrongClass(ConnectivityClass),
}

/// Splits an even-order out-tree into a weak perfect out-forest using only
/// its own arcs.
///
/// Repeatedly takes a deepest vertex `u` (smallest index on ties) with parent
/// `v`. If `v` has another child `w` (necessarily a leaf; smallest index
/// taken), the arcs `vu`, `vw` are kept and `u`, `w` removed. Otherwise `vu`
/// becomes a two-vertex tree and both are removed.
///
/// The tree must use exactly the vertices `0..order`.
pub fn even_tree_to_weak(t: &OutTree) -> Result<OutForest, LemmaError> {
    let order = t.order();
    if order % 2 == 1 {
        return Err(LemmaError::OddOrder(order));
    }
    if t.vertices().iter().enumerate().any(|(i, &v)| i != v) {
        return Err(LemmaError::NotSpanning(order));
    }

    let mut children: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for (p, c) in t.arcs() {
        children.entry(p).or_default().insert(c);
    }
    let mut depth = BTreeMap::from([(t.root(), 0usize)]);
    let mut stack = vec![t.root()];
    while let Some(v) = stack.pop() {
        let dv = depth[&v];
        for &c in children.get(&v).into_iter().flatten() {
            depth.insert(c, dv + 1);
            stack.push(c);
        }
    }

    let mut frontier: BTreeSet<(Reverse<usize>, usize)> = depth.iter().map(|(&v, &d)| (Reverse(d), v)).collect();
    let mut arcs = Vec::with_capacity(order);
    while let Some(&(Reverse(du), u)) = frontier.first() {
        let v = t.parent(u).expect("an even remainder never reduces to a lone root");
        let siblings = children.get_mut(&v).unwrap();
        siblings.remove(&u);
        frontier.remove(&(Reverse(du), u));
        if let Some(&w) = siblings.first() {
            siblings.remove(&w);
            frontier.remove(&(Reverse(du), w));
            arcs.push((v, u));
            arcs.push((v, w));
        } else {
            arcs.push((v, u));
            frontier.remove(&(Reverse(du - 1), v));
            if let Some(pv) = t.parent(v) {
                children.get_mut(&pv).unwrap().remove(&v);
            }
        }
    }
    Ok(OutForest::from_arcs(order, arcs).expect("sub-forest of an out-tree"))
}

/// One arc exchange performed by [`weak_to_almost_traced`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Swap {
    /// The forward or cross arc that was added.
    pub added: (usize, usize),
    /// Tree arcs on the path between its ends, now removed.
    pub removed: Vec<(usize, usize)>,
    /// Forest arc count after the exchange.
    pub arc_count: usize,
}

/// Turns a weak perfect out-forest into an almost perfect one.
pub fn weak_to_almost(d: &Digraph, f: &OutForest) -> Result<OutForest, LemmaError> {
    weak_to_almost_traced(d, f).map(|(f, _)| f)
}

/// [`weak_to_almost`] returning the sequence of exchanges.
///
/// While some arc `uv` of `d` is a forward or cross arc, the forest arcs on
/// the tree path between `u` and `v` are replaced by `uv`. Arcs are scanned in
/// ascending order and the first applicable one is used.
pub fn weak_to_almost_traced(d: &Digraph, f: &OutForest) -> Result<(OutForest, Vec<Swap>), LemmaError> {
    if !verify(d, f, ForestKind::WeakPerfect).passed() {
        return Err(LemmaError::NotWeakPerfect);
    }
    let mut current = f.clone();
    let mut swaps = Vec::new();
    loop {
        let next = d.arcs().iter().copied().find(|&a| {
            matches!(classify_arc(d, &current, a), Ok(ArcClass::ForwardArc | ArcClass::CrossArc))
        });
        let Some((u, v)) = next else { break };
        let path = current.tree_path(u, v).expect("forward and cross arcs stay inside one tree");
        let mut parent = current.parents().to_vec();
        for &(_, c) in &path {
            parent[c] = None;
        }
        parent[v] = Some(u);
        current = OutForest::from_parents(parent).expect("exchange keeps an out-forest");
        swaps.push(Swap { added: (u, v), removed: path, arc_count: current.arc_count() });
    }
    debug_assert!(verify(d, &current, ForestKind::AlmostPerfect).passed());
    Ok((current, swaps))
}

/// Almost perfect out-forest of an even digraph in which some vertex reaches
/// every other: spanning out-tree, split into a weak perfect out-forest, then
/// exchanged until no forward or cross arcs remain.
pub fn construct_for_single_initial(d: &Digraph) -> Result<OutForest, LemmaError> {
    let class = classify(d);
    if !class.has_single_initial() {
        return Err(LemmaError::WrongClass(class));
    }
    let root = find_universal_root(d).expect("single initial component");
    let tree = spanning_out_tree(d, root).expect("root reaches every vertex");
    let weak = even_tree_to_weak(&tree)?;
    weak_to_almost(d, &weak)
}

/// A perfect forest of `g` as ascending edge pairs, or `None` when `g` is
/// disconnected or of odd order.
pub fn perfect_forest_undirected(g: &UGraph) -> Option<Vec<(usize, usize)>> {
    if g.n() % 2 == 1 || !g.is_connected() {
        return None;
    }
    let star = g.bidirect();
    let f = construct_for_single_initial(&star).expect("bidirected connected graph is strongly connected");
    Some(extract_perfect_forest(g, &f).expect("forest is almost perfect"))
}
