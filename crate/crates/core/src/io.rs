//! Text formats: edge lists, forest files, 3DM instances, sidecar maps and
//! DOT export.
//!
//! Edge lists start with a header line `n m` followed by `m` lines
//! `tail head` (or `u v` for undirected graphs). Blank lines and lines
//! starting with `#` are ignored; line numbers in diagnostics count every
//! physical line from 1.

use std::fmt::Write;

use thiserror::Error;

use crate::forest::{ForestError, OutForest};
use crate::gadget::GadgetCorrespondence;
use crate::graph::{Digraph, UGraph};
use crate::hardness::{HardnessError, ReductionMap, ThreeDMInstance};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed line: {0}")]
    Malformed(String),
    #[error("missing header line")]
    MissingHeader,
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(usize, usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("header announces {expected} entries, found {found}")]
    CountMismatch { expected: usize, found: usize },
    #[error("vertex {0} listed twice")]
    DuplicateVertex(usize),
    #[error("vertex {0} missing")]
    MissingVertex(usize),
    #[error(transparent)]
    Forest(ForestError),
    #[error(transparent)]
    Instance(HardnessError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

/// Non-comment lines with their 1-based line numbers, split on whitespace.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.trim();
        (!l.is_empty() && !l.starts_with('#')).then(|| (i + 1, l.split_whitespace().collect()))
    })
}

fn numbers<const N: usize>(line: usize, fields: &[&str]) -> Result<[usize; N], ParseError> {
    if fields.len() != N {
        return Err(err(line, ParseErrorKind::Malformed(format!("expected {N} fields, got {}", fields.len()))));
    }
    let mut out = [0; N];
    for (o, f) in out.iter_mut().zip(fields) {
        *o = f.parse().map_err(|_| err(line, ParseErrorKind::Malformed(format!("`{f}` is not a number"))))?;
    }
    Ok(out)
}

fn parse_pairs(text: &str, directed: bool) -> Result<(usize, Vec<(usize, usize)>), ParseError> {
    let mut recs = records(text);
    let (hline, header) = recs.next().ok_or(err(1, ParseErrorKind::MissingHeader))?;
    let [n, m] = numbers::<2>(hline, &header)?;
    let mut seen = std::collections::BTreeSet::new();
    let mut pairs = Vec::with_capacity(m);
    let mut last = hline;
    for (line, fields) in recs {
        last = line;
        let [a, b] = numbers::<2>(line, &fields)?;
        for v in [a, b] {
            if v >= n {
                return Err(err(line, ParseErrorKind::VertexOutOfRange(v)));
            }
        }
        if a == b {
            return Err(err(line, ParseErrorKind::SelfLoop(a)));
        }
        let key = if directed { (a, b) } else { (a.min(b), a.max(b)) };
        if !seen.insert(key) {
            let kind =
                if directed { ParseErrorKind::DuplicateArc(a, b) } else { ParseErrorKind::DuplicateEdge(key.0, key.1) };
            return Err(err(line, kind));
        }
        pairs.push((a, b));
    }
    if pairs.len() != m {
        return Err(err(last, ParseErrorKind::CountMismatch { expected: m, found: pairs.len() }));
    }
    Ok((n, pairs))
}

pub fn parse_digraph(text: &str) -> Result<Digraph, ParseError> {
    let (n, arcs) = parse_pairs(text, true)?;
    Ok(Digraph::new(n, arcs).expect("arcs validated while parsing"))
}

pub fn parse_ugraph(text: &str) -> Result<UGraph, ParseError> {
    let (n, edges) = parse_pairs(text, false)?;
    Ok(UGraph::new(n, edges).expect("edges validated while parsing"))
}

fn write_pairs(n: usize, pairs: &[(usize, usize)]) -> String {
    let mut s = format!("{n} {}\n", pairs.len());
    for (a, b) in pairs {
        writeln!(s, "{a} {b}").unwrap();
    }
    s
}

pub fn write_digraph(d: &Digraph) -> String {
    write_pairs(d.n(), d.arcs())
}

pub fn write_ugraph(g: &UGraph) -> String {
    write_pairs(g.n(), g.edges())
}

/// Forest file: one `root v` line per root, then `child parent` lines, in
/// ascending vertex order within each group.
pub fn write_forest(f: &OutForest) -> String {
    let mut s = String::new();
    for r in f.roots() {
        writeln!(s, "root {r}").unwrap();
    }
    for v in 0..f.n() {
        if let Some(p) = f.parent(v) {
            writeln!(s, "{v} {p}").unwrap();
        }
    }
    s
}

/// Reads a forest file. Every vertex `0..n` must appear exactly once, as a
/// root or as a child.
pub fn parse_forest(text: &str) -> Result<OutForest, ParseError> {
    let mut entries: Vec<(usize, usize, Option<usize>)> = Vec::new();
    for (line, fields) in records(text) {
        if fields.first() == Some(&"root") {
            let [v] = numbers::<1>(line, &fields[1..])?;
            entries.push((line, v, None));
        } else {
            let [c, p] = numbers::<2>(line, &fields)?;
            entries.push((line, c, Some(p)));
        }
    }
    let n = entries.len();
    let mut parent: Vec<Option<Option<usize>>> = vec![None; n];
    for &(line, v, p) in &entries {
        if v >= n {
            return Err(err(line, ParseErrorKind::VertexOutOfRange(v)));
        }
        if let Some(p) = p.filter(|&p| p >= n) {
            return Err(err(line, ParseErrorKind::VertexOutOfRange(p)));
        }
        if parent[v].replace(p).is_some() {
            return Err(err(line, ParseErrorKind::DuplicateVertex(v)));
        }
    }
    let parent: Vec<Option<usize>> = parent.into_iter().map(|p| p.expect("n entries, no duplicates")).collect();
    let last = entries.last().map_or(1, |e| e.0);
    OutForest::from_parents(parent).map_err(|e| err(last, ParseErrorKind::Forest(e)))
}

/// 3DM instance: header `k m`, then `m` lines `a b c` of class-local indices.
pub fn parse_3dm(text: &str) -> Result<ThreeDMInstance, ParseError> {
    let mut recs = records(text);
    let (hline, header) = recs.next().ok_or(err(1, ParseErrorKind::MissingHeader))?;
    let [k, m] = numbers::<2>(hline, &header)?;
    let mut triples = Vec::new();
    let mut last = hline;
    for (line, fields) in recs {
        last = line;
        triples.push(numbers::<3>(line, &fields)?);
    }
    if triples.len() != m {
        return Err(err(last, ParseErrorKind::CountMismatch { expected: m, found: triples.len() }));
    }
    ThreeDMInstance::new(k, triples).map_err(|e| err(hline, ParseErrorKind::Instance(e)))
}

pub fn write_3dm(inst: &ThreeDMInstance) -> String {
    let mut s = format!("{} {}\n", inst.k(), inst.m());
    for [a, b, c] in inst.triples() {
        writeln!(s, "{a} {b} {c}").unwrap();
    }
    s
}

/// Gadget sidecar: `block u start len y_index` per source vertex, then
/// `pair a b` per internal pair.
pub fn write_correspondence(c: &GadgetCorrespondence) -> String {
    let mut s = String::new();
    for u in 0..c.source_order() {
        let b = c.block(u);
        writeln!(s, "block {u} {} {} {}", b.start, b.len(), c.y(u)).unwrap();
    }
    for u in 0..c.source_order() {
        for (a, b) in c.pairs(u) {
            writeln!(s, "pair {a} {b}").unwrap();
        }
    }
    s
}

/// Reduction sidecar: `block NAME start len` for X, Y, V1, V2, V3, then
/// `triple t y a b c` per instance triple.
pub fn write_reduction_map(map: &ReductionMap) -> String {
    let mut s = String::new();
    let blocks = [
        ("X", map.x_block()),
        ("Y", map.y_block()),
        ("V1", map.class_block(0)),
        ("V2", map.class_block(1)),
        ("V3", map.class_block(2)),
    ];
    for (name, b) in blocks {
        writeln!(s, "block {name} {} {}", b.start, b.len()).unwrap();
    }
    for (t, [a, b, c]) in map.triples().iter().enumerate() {
        writeln!(s, "triple {t} {} {a} {b} {c}", map.y(t)).unwrap();
    }
    s
}

/// DOT for a digraph; arcs of `forest` get `style=bold`.
pub fn digraph_dot(d: &Digraph, forest: Option<&OutForest>) -> String {
    let mut s = String::from("digraph {\n");
    for v in 0..d.n() {
        writeln!(s, "  {v};").unwrap();
    }
    for &(t, h) in d.arcs() {
        if forest.is_some_and(|f| f.has_arc(t, h)) {
            writeln!(s, "  {t} -> {h} [style=bold];").unwrap();
        } else {
            writeln!(s, "  {t} -> {h};").unwrap();
        }
    }
    s.push_str("}\n");
    s
}

/// DOT for an undirected graph; edges in `highlight` get `style=bold`.
pub fn ugraph_dot(g: &UGraph, highlight: Option<&[(usize, usize)]>) -> String {
    let mut s = String::from("graph {\n");
    for v in 0..g.n() {
        writeln!(s, "  {v};").unwrap();
    }
    for &(a, b) in g.edges() {
        if highlight.is_some_and(|h| h.contains(&(a, b))) {
            writeln!(s, "  {a} -- {b} [style=bold];").unwrap();
        } else {
            writeln!(s, "  {a} -- {b};").unwrap();
        }
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digraph_documents() {
        let d = parse_digraph("2 1\n0 1").unwrap();
        assert_eq!((d.n(), d.arcs()), (2, &[(0, 1)][..]));
        let d = parse_digraph("2 2\n0 1\n1 0").unwrap();
        assert_eq!(d.arc_count(), 2);
        assert_eq!(
            parse_digraph("2 2\n0 1\n0 1"),
            Err(ParseError { line: 3, kind: ParseErrorKind::DuplicateArc(0, 1) })
        );
        assert_eq!(
            parse_digraph("# c\n2 1\n\n0 2"),
            Err(ParseError { line: 4, kind: ParseErrorKind::VertexOutOfRange(2) })
        );
        assert_eq!(parse_digraph("2 1\n1 1"), Err(ParseError { line: 2, kind: ParseErrorKind::SelfLoop(1) }));
        assert!(matches!(parse_digraph("2 1\n0 x"), Err(ParseError { line: 2, kind: ParseErrorKind::Malformed(_) })));
        assert!(matches!(parse_digraph("2 1\n0 1 1"), Err(ParseError { line: 2, .. })));
        assert_eq!(
            parse_digraph("3 2\n0 1"),
            Err(ParseError { line: 2, kind: ParseErrorKind::CountMismatch { expected: 2, found: 1 } })
        );
        assert_eq!(parse_digraph("# only\n"), Err(ParseError { line: 1, kind: ParseErrorKind::MissingHeader }));
    }

    #[test]
    fn undirected_duplicates_include_reversals() {
        assert_eq!(
            parse_ugraph("2 2\n0 1\n1 0"),
            Err(ParseError { line: 3, kind: ParseErrorKind::DuplicateEdge(0, 1) })
        );
        let g = parse_ugraph("3 2\n1 0\n2 1").unwrap();
        assert_eq!(write_ugraph(&g), "3 2\n0 1\n1 2\n");
    }

    #[test]
    fn forest_files() {
        let f = OutForest::from_arcs(4, [(0, 1), (2, 3)]).unwrap();
        let text = write_forest(&f);
        assert_eq!(text, "root 0\nroot 2\n1 0\n3 2\n");
        assert_eq!(parse_forest(&text), Ok(f));
        assert_eq!(
            parse_forest("root 0\n0 1\n1 0"),
            Err(ParseError { line: 2, kind: ParseErrorKind::DuplicateVertex(0) })
        );
        assert!(matches!(parse_forest("0 1\n1 0"), Err(ParseError { kind: ParseErrorKind::Forest(_), .. })));
        assert_eq!(parse_forest("root 5"), Err(ParseError { line: 1, kind: ParseErrorKind::VertexOutOfRange(5) }));
    }

    #[test]
    fn three_dm_files() {
        let inst = parse_3dm("2 2\n0 0 0\n1 1 1\n").unwrap();
        assert_eq!(write_3dm(&inst), "2 2\n0 0 0\n1 1 1\n");
        assert!(matches!(
            parse_3dm("1 2\n0 0 0\n0 0 0"),
            Err(ParseError { kind: ParseErrorKind::Instance(HardnessError::DuplicateTriple(_)), .. })
        ));
    }

    #[test]
    fn sidecars_and_dot() {
        let c = GadgetCorrespondence::new(4).unwrap();
        let side = write_correspondence(&c);
        assert!(side.starts_with("block 0 0 3 0\nblock 1 3 3 3\n"));
        assert!(side.ends_with("pair 1 2\npair 4 5\npair 7 8\npair 10 11\n"));

        let d = Digraph::new(2, [(0, 1), (1, 0)]).unwrap();
        let f = OutForest::from_arcs(2, [(0, 1)]).unwrap();
        assert_eq!(digraph_dot(&d, Some(&f)), "digraph {\n  0;\n  1;\n  0 -> 1 [style=bold];\n  1 -> 0;\n}\n");
        let g = UGraph::new(2, [(0, 1)]).unwrap();
        assert_eq!(ugraph_dot(&g, None), "graph {\n  0;\n  1;\n  0 -- 1;\n}\n");
    }

    #[test]
    fn digraph_text_round_trip() {
        let d = Digraph::new(4, [(3, 0), (0, 1), (1, 0), (2, 3)]).unwrap();
        assert_eq!(parse_digraph(&write_digraph(&d)), Ok(d));
    }
}
