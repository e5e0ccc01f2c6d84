//! Checkers written without reference to the library's own verifiers.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use outforest::{Digraph, OutForest, UGraph};

fn find(p: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while p[r] != r {
        r = p[r];
    }
    let mut x = x;
    while p[x] != r {
        let next = p[x];
        p[x] = r;
        x = next;
    }
    r
}

/// Vertices reachable from `s` by directed paths (including `s`).
pub fn reachable(d: &Digraph, s: usize) -> Vec<bool> {
    let mut seen = vec![false; d.n()];
    let mut queue = VecDeque::from([s]);
    seen[s] = true;
    while let Some(v) = queue.pop_front() {
        for &(a, b) in d.arcs() {
            if a == v && !seen[b] {
                seen[b] = true;
                queue.push_back(b);
            }
        }
    }
    seen
}

pub fn strongly_connected(d: &Digraph) -> bool {
    d.n() > 0 && (0..d.n()).all(|s| reachable(d, s).iter().all(|&r| r))
}

/// Weak connectivity by union-find over the arc list.
pub fn weakly_connected(d: &Digraph) -> bool {
    if d.n() == 0 {
        return false;
    }
    let mut p: Vec<usize> = (0..d.n()).collect();
    for &(a, b) in d.arcs() {
        let (ra, rb) = (find(&mut p, a), find(&mut p, b));
        p[ra] = rb;
    }
    let r = find(&mut p, 0);
    (0..d.n()).all(|v| find(&mut p, v) == r)
}

/// Whether some vertex reaches every other vertex.
pub fn has_universal_source(d: &Digraph) -> bool {
    (0..d.n()).any(|s| reachable(d, s).iter().all(|&r| r))
}

/// Perfect forest check for undirected graphs: spanning, acyclic, every
/// degree odd, and every component induced in `g`.
pub fn is_undirected_perfect_forest(g: &UGraph, edges: &[(usize, usize)]) -> bool {
    let n = g.n();
    let mut p: Vec<usize> = (0..n).collect();
    let mut deg = vec![0usize; n];
    let mut set = HashSet::new();
    for &(a, b) in edges {
        if a >= n || b >= n || !g.has_edge(a, b) || !set.insert((a.min(b), a.max(b))) {
            return false;
        }
        let (ra, rb) = (find(&mut p, a), find(&mut p, b));
        if ra == rb {
            return false;
        }
        p[ra] = rb;
        deg[a] += 1;
        deg[b] += 1;
    }
    if deg.iter().any(|d| d % 2 == 0) {
        return false;
    }
    g.edges().iter().all(|&(a, b)| find(&mut p, a) != find(&mut p, b) || set.contains(&(a.min(b), a.max(b))))
}

/// Perfect out-forest check: odd underlying degrees and, per tree, the arcs
/// of `d` inside the tree's vertex set are exactly the forest arcs.
pub fn is_perfect_out_forest(d: &Digraph, f: &OutForest) -> bool {
    let n = d.n();
    let mut root = vec![0; n];
    let mut deg = vec![0; n];
    let forest: HashSet<(usize, usize)> = f.arcs().into_iter().collect();
    for v in 0..n {
        let mut r = v;
        let mut steps = 0;
        while let Some(p) = f.parent(r) {
            r = p;
            steps += 1;
            if steps > n {
                return false;
            }
        }
        root[v] = r;
        if let Some(p) = f.parent(v) {
            deg[v] += 1;
            deg[p] += 1;
            if !d.has_arc(p, v) {
                return false;
            }
        }
    }
    if deg.iter().any(|x| x % 2 == 0) {
        return false;
    }
    let mut inside: HashMap<usize, usize> = HashMap::new();
    for &(a, b) in d.arcs() {
        if root[a] == root[b] {
            if !forest.contains(&(a, b)) {
                return false;
            }
            *inside.entry(root[a]).or_default() += 1;
        }
    }
    inside.values().sum::<usize>() == forest.len()
}

/// Maximum matching size by dynamic programming over vertex subsets.
pub fn max_matching_size(g: &UGraph) -> usize {
    let n = g.n();
    assert!(n <= 20);
    let mut memo = vec![u8::MAX; 1 << n];
    fn go(g: &UGraph, mask: usize, memo: &mut [u8]) -> u8 {
        if mask == 0 {
            return 0;
        }
        if memo[mask] != u8::MAX {
            return memo[mask];
        }
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << v);
        let mut best = go(g, rest, memo);
        for &w in g.neighbors(v) {
            if rest >> w & 1 == 1 {
                best = best.max(1 + go(g, rest & !(1 << w), memo));
            }
        }
        memo[mask] = best;
        best
    }
    go(g, (1usize << n) - 1, &mut memo) as usize
}

/// Whether an augmenting path exists for the matching given by `mate`,
/// by exhaustive search over alternating simple paths.
pub fn has_augmenting_path(g: &UGraph, mate: &[Option<usize>]) -> bool {
    fn extend(g: &UGraph, mate: &[Option<usize>], v: usize, used: &mut Vec<bool>) -> bool {
        // `v` was reached by a non-matching edge.
        match mate[v] {
            None => true,
            Some(w) => {
                if used[w] {
                    return false;
                }
                used[w] = true;
                for &x in g.neighbors(w) {
                    if !used[x] && mate[w] != Some(x) {
                        used[x] = true;
                        if extend(g, mate, x, used) {
                            return true;
                        }
                        used[x] = false;
                    }
                }
                used[w] = false;
                false
            }
        }
    }
    (0..g.n()).filter(|&s| mate[s].is_none()).any(|s| {
        let mut used = vec![false; g.n()];
        used[s] = true;
        g.neighbors(s).iter().any(|&x| {
            used[x] = true;
            let found = extend(g, mate, x, &mut used);
            used[x] = false;
            found
        })
    })
}

/// Whether the 3DM instance on `k` elements per class has a perfect
/// matching, by trying all k-subsets of triples.
pub fn brute_3dm(k: usize, triples: &[[usize; 3]]) -> bool {
    fn pick(k: usize, triples: &[[usize; 3]], from: usize, used: &mut [Vec<bool>; 3], left: usize) -> bool {
        if left == 0 {
            return true;
        }
        (from..triples.len()).any(|i| {
            let t = triples[i];
            if (0..3).any(|c| used[c][t[c]]) {
                return false;
            }
            (0..3).for_each(|c| used[c][t[c]] = true);
            let ok = pick(k, triples, i + 1, used, left - 1);
            (0..3).for_each(|c| used[c][t[c]] = false);
            ok
        })
    }
    let mut used = [vec![false; k], vec![false; k], vec![false; k]];
    pick(k, triples, 0, &mut used, k)
}

pub fn petersen() -> UGraph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((i + 5, (i + 2) % 5 + 5));
    }
    UGraph::new(10, e).unwrap()
}

/// Inward star: leaves `1..=r` each with an arc to the centre `0`.
pub fn inward_star(r: usize) -> Digraph {
    Digraph::new(r + 1, (1..=r).map(|v| (v, 0))).unwrap()
}
