//! Exhaustive ground-truth searches used to certify the polynomial
//! algorithms on small inputs.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::exec::{first_some, Execution};
use crate::forest::{verify, ForestKind, OutForest};
use crate::graph::{Digraph, UGraph};
use crate::hardness::{ThreeDMInstance, Triple};
use crate::matching::Matching;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{n} vertices exceed the oracle limit of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("oracle budget exceeded after {states} states")]
    BudgetExceeded { states: u64 },
    #[error("oracle time limit of {0:?} exceeded")]
    TimeExceeded(Duration),
}

/// Limits for an exhaustive search. Running out is an error, never a
/// silent "not found".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub max_states: u64,
    pub time_limit: Option<Duration>,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_vertices: 10, max_states: 100_000_000, time_limit: None }
    }
}

impl OracleBudget {
    pub fn with_max_vertices(mut self, max_vertices: usize) -> Self {
        self.max_vertices = max_vertices;
        self
    }

    pub fn with_max_states(mut self, max_states: u64) -> Self {
        self.max_states = max_states;
        self
    }

    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.time_limit = Some(limit);
        self
    }

    fn admit(&self, n: usize) -> Result<(), OracleError> {
        if n > self.max_vertices {
            return Err(OracleError::TooLarge { n, max: self.max_vertices });
        }
        Ok(())
    }
}

struct Meter {
    budget: OracleBudget,
    states: AtomicU64,
    start: Instant,
    /// Lowest partition index that has found an answer.
    settled: AtomicUsize,
}

impl Meter {
    fn new(budget: OracleBudget) -> Self {
        Meter { budget, states: AtomicU64::new(0), start: Instant::now(), settled: AtomicUsize::new(usize::MAX) }
    }

    fn tick(&self) -> Result<u64, OracleError> {
        let s = self.states.fetch_add(1, Ordering::Relaxed) + 1;
        if s > self.budget.max_states {
            return Err(OracleError::BudgetExceeded { states: s });
        }
        if s % 1024 == 0 {
            if let Some(limit) = self.budget.time_limit {
                if self.start.elapsed() > limit {
                    return Err(OracleError::TimeExceeded(limit));
                }
            }
        }
        Ok(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Choice {
    Open,
    Root,
    Parent(usize),
}

/// Depth-first search over parent assignments with vertex `0..i` decided at
/// depth `i`. Partial assignments are cut when they contain a cycle, when a
/// vertex whose degree is already final has even degree (all kinds except
/// `Even`), or when a tree already fails to be induced (`Perfect`). Each cut
/// condition persists in every completion.
struct ForestSearch<'a> {
    d: &'a Digraph,
    kind: ForestKind,
    choice: Vec<Choice>,
    children: Vec<usize>,
    open_out: Vec<usize>,
    meter: &'a Meter,
    partition: usize,
}

impl<'a> ForestSearch<'a> {
    fn new(d: &'a Digraph, kind: ForestKind, meter: &'a Meter, partition: usize) -> Self {
        let n = d.n();
        ForestSearch {
            d,
            kind,
            choice: vec![Choice::Open; n],
            children: vec![0; n],
            open_out: (0..n).map(|v| d.out_neighbors(v).len()).collect(),
            meter,
            partition,
        }
    }

    fn options(d: &Digraph, v: usize) -> Vec<Choice> {
        d.in_neighbors(v).iter().map(|&p| Choice::Parent(p)).chain([Choice::Root]).collect()
    }

    fn top(&self, mut v: usize) -> usize {
        while let Choice::Parent(p) = self.choice[v] {
            v = p;
        }
        v
    }

    fn degree_ok(&self, u: usize) -> bool {
        if self.kind == ForestKind::Even || self.choice[u] == Choice::Open || self.open_out[u] > 0 {
            return true;
        }
        let deg = self.children[u] + usize::from(matches!(self.choice[u], Choice::Parent(_)));
        deg % 2 == 1
    }

    fn induced_ok(&self, root: usize) -> bool {
        let members: Vec<bool> = (0..self.d.n()).map(|x| self.top(x) == root).collect();
        self.d
            .arcs()
            .iter()
            .all(|&(a, b)| !(members[a] && members[b]) || self.choice[b] == Choice::Parent(a))
    }

    /// Applies `c` to `v` unless it closes a cycle. Returns `None` when not
    /// applied, otherwise whether the partial assignment is still viable.
    fn assign(&mut self, v: usize, c: Choice) -> Option<bool> {
        if let Choice::Parent(p) = c {
            if self.top(p) == v {
                return None;
            }
            self.children[p] += 1;
        }
        self.choice[v] = c;
        for &u in self.d.in_neighbors(v) {
            self.open_out[u] -= 1;
        }
        let mut ok = self.degree_ok(v) && self.d.in_neighbors(v).iter().all(|&u| self.degree_ok(u));
        if ok && self.kind == ForestKind::Perfect {
            if let Choice::Parent(p) = c {
                ok = self.induced_ok(self.top(p));
            }
        }
        Some(ok)
    }

    fn unassign(&mut self, v: usize) {
        if let Choice::Parent(p) = self.choice[v] {
            self.children[p] -= 1;
        }
        self.choice[v] = Choice::Open;
        for &u in self.d.in_neighbors(v) {
            self.open_out[u] += 1;
        }
    }

    fn cancelled(&self) -> bool {
        self.meter.settled.load(Ordering::Relaxed) < self.partition
    }

    fn run(&mut self, v: usize) -> Result<bool, OracleError> {
        let n = self.d.n();
        if v == n {
            let f = self.forest();
            return Ok(verify(self.d, &f, self.kind).passed());
        }
        for c in Self::options(self.d, v) {
            if self.meter.tick()? % 256 == 0 && self.cancelled() {
                return Ok(false);
            }
            match self.assign(v, c) {
                None => continue,
                Some(true) => {
                    if self.run(v + 1)? {
                        return Ok(true);
                    }
                }
                Some(false) => {}
            }
            self.unassign(v);
        }
        Ok(false)
    }

    fn forest(&self) -> OutForest {
        let parents = self
            .choice
            .iter()
            .map(|c| match c {
                Choice::Parent(p) => Some(*p),
                _ => None,
            })
            .collect();
        OutForest::from_parents(parents).expect("search keeps assignments acyclic")
    }
}

/// First spanning out-forest of `kind` in enumeration order, searched in
/// parallel when available.
pub fn oracle_forest(d: &Digraph, kind: ForestKind, budget: OracleBudget) -> Result<Option<OutForest>, OracleError> {
    oracle_forest_with(d, kind, budget, Execution::default())
}

/// [`oracle_forest`] with an explicit execution mode.
///
/// Vertices are decided in ascending order, each trying its in-neighbours
/// ascending and then "root". The parallel mode splits on vertex 0's choice
/// and keeps the lowest partition's answer, so the forest returned is the
/// same in both modes.
pub fn oracle_forest_with(
    d: &Digraph,
    kind: ForestKind,
    budget: OracleBudget,
    exec: Execution,
) -> Result<Option<OutForest>, OracleError> {
    budget.admit(d.n())?;
    if d.n() == 0 {
        return Ok(Some(OutForest::from_parents(Vec::new()).unwrap()));
    }
    let meter = Meter::new(budget);
    let partitions = ForestSearch::options(d, 0);
    let found = first_some(&partitions, exec, |i, &c| {
        let mut search = ForestSearch::new(d, kind, &meter, i);
        let outcome = match search.assign(0, c) {
            Some(true) => search.run(1),
            _ => Ok(false),
        };
        match outcome {
            Ok(true) => {
                meter.settled.fetch_min(i, Ordering::Relaxed);
                Some(Ok(search.forest()))
            }
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        }
    });
    found.transpose()
}

/// Maximum matching by branch and bound: the lowest undecided vertex is
/// matched to each free higher neighbour in turn, then left exposed; a branch
/// is cut when even matching all remaining vertices cannot beat the best.
pub fn oracle_matching(g: &UGraph, budget: OracleBudget) -> Result<Matching, OracleError> {
    budget.admit(g.n())?;
    struct Bb<'a> {
        g: &'a UGraph,
        meter: Meter,
        mate: Vec<Option<usize>>,
        best: Vec<(usize, usize)>,
        current: Vec<(usize, usize)>,
    }
    impl Bb<'_> {
        fn go(&mut self, v: usize, undecided: usize) -> Result<(), OracleError> {
            self.meter.tick()?;
            if self.current.len() + undecided / 2 <= self.best.len() {
                return Ok(());
            }
            let n = self.g.n();
            let Some(v) = (v..n).find(|&x| self.mate[x].is_none()) else {
                self.best = self.current.clone();
                return Ok(());
            };
            let free: Vec<usize> = self.g.neighbors(v).iter().copied().filter(|&w| w > v && self.mate[w].is_none()).collect();
            for w in free {
                self.mate[v] = Some(w);
                self.mate[w] = Some(v);
                self.current.push((v, w));
                self.go(v + 1, undecided - 2)?;
                self.current.pop();
                self.mate[w] = None;
                self.mate[v] = None;
            }
            // leave v exposed
            self.mate[v] = Some(v);
            let r = self.go(v + 1, undecided - 1);
            self.mate[v] = None;
            r
        }
    }
    let mut bb = Bb {
        g,
        meter: Meter::new(budget),
        mate: vec![None; g.n()],
        best: Vec::new(),
        current: Vec::new(),
    };
    bb.go(0, g.n())?;
    Ok(Matching::new(g, bb.best).expect("search only uses graph edges"))
}

/// Brute-force 3-dimensional matching: the first `k`-subset of triples, in
/// lexicographic index order, that covers every class vertex.
pub fn oracle_3dm(inst: &ThreeDMInstance) -> Option<Vec<Triple>> {
    fn pick(inst: &ThreeDMInstance, from: usize, used: &mut [Vec<bool>; 3], chosen: &mut Vec<Triple>) -> bool {
        if chosen.len() == inst.k() {
            return true;
        }
        for (i, t) in inst.triples().iter().enumerate().skip(from) {
            if (0..3).any(|c| used[c][t[c]]) {
                continue;
            }
            (0..3).for_each(|c| used[c][t[c]] = true);
            chosen.push(*t);
            if pick(inst, i + 1, used, chosen) {
                return true;
            }
            chosen.pop();
            (0..3).for_each(|c| used[c][t[c]] = false);
        }
        false
    }
    let mut used = [vec![false; inst.k()], vec![false; inst.k()], vec![false; inst.k()]];
    let mut chosen = Vec::new();
    pick(inst, 0, &mut used, &mut chosen).then_some(chosen)
}
