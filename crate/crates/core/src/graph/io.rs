//! Line-oriented text formats. Ids are 1-based in files, `#` starts a comment.
//!
//! ```text
//! p graph <n> <c>            p tree <n> <c>            p ef <n>
//! v <id> <color>             r <root>                  f <child> <parent>
//! e <u> <v>                  v <root> <color>
//! part <k> <id...>           t <child> <parent> <color>
//!                            rule <c1> <c2> <d> <0|1>   (tree-models only)
//! ```
//!
//! Colors default to 1 when no `v` line is given.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Read;

use super::colored::{ColoredGraph, Vertex};
use super::elimination::EliminationForest;
use super::tree::RootedColoredTree;
use super::treemodel::TreeModel;
use crate::error::{Error, Result};

/// A graph file together with the `part` lines it declares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: ColoredGraph,
    /// Parts in the order of their `part` index.
    pub parts: Vec<Vec<Vertex>>,
}

struct Lines<'a> {
    source: &'a str,
    items: Vec<(usize, Vec<&'a str>)>,
}

impl<'a> Lines<'a> {
    fn new(source: &'a str, text: &'a str) -> Self {
        let items = text
            .lines()
            .enumerate()
            .filter_map(|(i, raw)| {
                let line = raw.split('#').next().unwrap_or("");
                let words: Vec<&str> = line.split_whitespace().collect();
                (!words.is_empty()).then_some((i + 1, words))
            })
            .collect();
        Lines { source, items }
    }

    fn err(&self, line: usize, message: impl Into<String>) -> Error {
        Error::Format {
            path: self.source.to_string(),
            line,
            message: message.into(),
        }
    }

    fn header(&self, kind: &str, args: usize) -> Result<(usize, Vec<usize>)> {
        let Some((line, words)) = self.items.first() else {
            return Err(self.err(0, format!("missing 'p {kind}' header")));
        };
        if words[0] != "p" || words.get(1) != Some(&kind) || words.len() != 2 + args {
            return Err(self.err(*line, format!("malformed header; expected 'p {kind}' with {args} numbers")));
        }
        let nums = words[2..]
            .iter()
            .map(|w| self.num(*line, w))
            .collect::<Result<Vec<_>>>()?;
        Ok((*line, nums))
    }

    fn num(&self, line: usize, w: &str) -> Result<usize> {
        w.parse()
            .map_err(|_| self.err(line, format!("expected a number, found '{w}'")))
    }

    fn vertex(&self, line: usize, w: &str, n: usize) -> Result<Vertex> {
        let id = self.num(line, w)?;
        if id == 0 || id > n {
            return Err(self.err(line, format!("vertex {id} out of range 1..={n}")));
        }
        Ok(id - 1)
    }

    fn color(&self, line: usize, w: &str, c: usize) -> Result<u32> {
        let col = self.num(line, w)?;
        if col == 0 || col > c {
            return Err(self.err(line, format!("color {col} out of range 1..={c}")));
        }
        Ok(col as u32)
    }

    fn arity(&self, line: usize, words: &[&str], want: usize) -> Result<()> {
        if words.len() != want {
            Err(self.err(line, format!("'{}' takes {} arguments", words[0], want - 1)))
        } else {
            Ok(())
        }
    }

    fn body(&self) -> &[(usize, Vec<&'a str>)] {
        &self.items[1..]
    }
}

// Adjacency is a dense matrix, so this bounds memory at 64 MiB.
const MAX_VERTICES: usize = 1 << 13;

fn check_size(lines: &Lines<'_>, line: usize, n: usize, c: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(lines.err(line, format!("at most {MAX_VERTICES} vertices supported")));
    }
    if c == 0 || c > u32::MAX as usize {
        return Err(lines.err(line, "color count must be positive"));
    }
    Ok(())
}

pub fn parse_graph_file(source: &str, text: &str) -> Result<GraphFile> {
    let lines = Lines::new(source, text);
    let (hline, nums) = lines.header("graph", 2)?;
    let (n, c) = (nums[0], nums[1]);
    check_size(&lines, hline, n, c)?;
    let mut colors = vec![1u32; n];
    let mut colored = vec![false; n];
    let mut g = ColoredGraph::new(n);
    let mut parts: BTreeMap<usize, Vec<Vertex>> = BTreeMap::new();
    for (line, words) in lines.body() {
        let line = *line;
        match words[0] {
            "v" => {
                lines.arity(line, words, 3)?;
                let v = lines.vertex(line, words[1], n)?;
                if std::mem::replace(&mut colored[v], true) {
                    return Err(lines.err(line, format!("vertex {} colored twice", v + 1)));
                }
                colors[v] = lines.color(line, words[2], c)?;
            }
            "e" => {
                lines.arity(line, words, 3)?;
                let u = lines.vertex(line, words[1], n)?;
                let v = lines.vertex(line, words[2], n)?;
                if u == v {
                    return Err(lines.err(line, format!("loop at vertex {}", u + 1)));
                }
                if g.adjacent(u, v) {
                    return Err(lines.err(line, format!("duplicate edge {} {}", u + 1, v + 1)));
                }
                g.add_edge(u, v)?;
            }
            "part" => {
                if words.len() < 2 {
                    return Err(lines.err(line, "'part' needs an index"));
                }
                let k = lines.num(line, words[1])?;
                if k == 0 {
                    return Err(lines.err(line, "part indices start at 1"));
                }
                let ids = words[2..]
                    .iter()
                    .map(|w| lines.vertex(line, w, n))
                    .collect::<Result<Vec<_>>>()?;
                if parts.insert(k, ids).is_some() {
                    return Err(lines.err(line, format!("part {k} declared twice")));
                }
            }
            other => return Err(lines.err(line, format!("unknown line type '{other}'"))),
        }
    }
    if let Some((i, _)) = parts.keys().enumerate().find(|(i, k)| **k != i + 1) {
        return Err(lines.err(0, format!("part indices must be 1..m without gaps; part {} missing", i + 1)));
    }
    let graph = g.with_colors(colors, c as u32)?;
    Ok(GraphFile {
        graph,
        parts: parts.into_values().collect(),
    })
}

pub fn parse_graph(text: &str) -> Result<ColoredGraph> {
    Ok(parse_graph_file("<input>", text)?.graph)
}

pub fn read_graph(mut r: impl Read) -> Result<ColoredGraph> {
    let mut s = String::new();
    r.read_to_string(&mut s)?;
    parse_graph(&s)
}

pub fn write_graph(g: &ColoredGraph) -> String {
    write_graph_file(&GraphFile {
        graph: g.clone(),
        parts: Vec::new(),
    })
}

pub fn write_graph_file(f: &GraphFile) -> String {
    let g = &f.graph;
    let mut out = format!("p graph {} {}\n", g.n(), g.num_colors());
    for v in 0..g.n() {
        if g.color(v) != 1 {
            writeln!(out, "v {} {}", v + 1, g.color(v)).unwrap();
        }
    }
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    for (k, part) in f.parts.iter().enumerate() {
        write!(out, "part {}", k + 1).unwrap();
        for v in part {
            write!(out, " {}", v + 1).unwrap();
        }
        out.push('\n');
    }
    out
}

/// `(c1, c2, distance, edge)` from a `rule` line.
type RuleLine = (u32, u32, usize, bool);

fn parse_tree_lines(lines: &Lines<'_>, allow_rules: bool) -> Result<(RootedColoredTree, Vec<RuleLine>)> {
    let (hline, nums) = lines.header("tree", 2)?;
    let (n, c) = (nums[0], nums[1]);
    check_size(lines, hline, n, c)?;
    if n == 0 {
        return Err(lines.err(hline, "a tree needs at least one vertex"));
    }
    let mut root = None;
    let mut parent = vec![None; n];
    let mut colors = vec![1u32; n];
    let mut has_color = vec![false; n];
    let mut rules = Vec::new();
    for (line, words) in lines.body() {
        let line = *line;
        match words[0] {
            "r" => {
                lines.arity(line, words, 2)?;
                if root.is_some() {
                    return Err(lines.err(line, "root declared twice"));
                }
                root = Some(lines.vertex(line, words[1], n)?);
            }
            "v" => {
                lines.arity(line, words, 3)?;
                let v = lines.vertex(line, words[1], n)?;
                if std::mem::replace(&mut has_color[v], true) {
                    return Err(lines.err(line, format!("vertex {} colored twice", v + 1)));
                }
                colors[v] = lines.color(line, words[2], c)?;
            }
            "t" => {
                lines.arity(line, words, 4)?;
                let child = lines.vertex(line, words[1], n)?;
                let par = lines.vertex(line, words[2], n)?;
                if child == par {
                    return Err(lines.err(line, format!("loop at vertex {}", child + 1)));
                }
                if parent[child].is_some() {
                    return Err(lines.err(line, format!("vertex {} has two parents", child + 1)));
                }
                if std::mem::replace(&mut has_color[child], true) {
                    return Err(lines.err(line, format!("vertex {} colored twice", child + 1)));
                }
                parent[child] = Some(par);
                colors[child] = lines.color(line, words[3], c)?;
            }
            "rule" if allow_rules => {
                lines.arity(line, words, 5)?;
                let c1 = lines.num(line, words[1])? as u32;
                let c2 = lines.num(line, words[2])? as u32;
                let d = lines.num(line, words[3])?;
                let e = match words[4] {
                    "0" => false,
                    "1" => true,
                    w => return Err(lines.err(line, format!("rule verdict must be 0 or 1, found '{w}'"))),
                };
                rules.push((c1, c2, d, e));
            }
            other => return Err(lines.err(line, format!("unknown line type '{other}'"))),
        }
    }
    let root = root.ok_or_else(|| lines.err(hline, "missing 'r <root>' line"))?;
    if parent[root].is_some() {
        return Err(lines.err(hline, "the root cannot have a parent"));
    }
    if let Some(v) = (0..n).find(|&v| v != root && parent[v].is_none()) {
        return Err(lines.err(hline, format!("vertex {} has no parent", v + 1)));
    }
    let tree = RootedColoredTree::from_parents(parent, colors, c as u32)
        .map_err(|e| lines.err(hline, e.to_string()))?;
    if tree.root() != root {
        return Err(lines.err(hline, "root mismatch"));
    }
    Ok((tree, rules))
}

pub fn parse_tree_file(source: &str, text: &str) -> Result<RootedColoredTree> {
    Ok(parse_tree_lines(&Lines::new(source, text), false)?.0)
}

pub fn parse_tree(text: &str) -> Result<RootedColoredTree> {
    parse_tree_file("<input>", text)
}

pub fn read_tree(mut r: impl Read) -> Result<RootedColoredTree> {
    let mut s = String::new();
    r.read_to_string(&mut s)?;
    parse_tree(&s)
}

pub fn write_tree(t: &RootedColoredTree) -> String {
    let mut out = format!("p tree {} {}\nr {}\n", t.n(), t.num_colors(), t.root() + 1);
    if t.color(t.root()) != 1 {
        writeln!(out, "v {} {}", t.root() + 1, t.color(t.root())).unwrap();
    }
    for v in 0..t.n() {
        if let Some(p) = t.parent(v) {
            writeln!(out, "t {} {} {}", v + 1, p + 1, t.color(v)).unwrap();
        }
    }
    out
}

pub fn parse_tree_model_file(source: &str, text: &str) -> Result<TreeModel> {
    let lines = Lines::new(source, text);
    let (tree, rules) = parse_tree_lines(&lines, true)?;
    TreeModel::from_rule_list(tree, &rules)
}

pub fn parse_tree_model(text: &str) -> Result<TreeModel> {
    parse_tree_model_file("<input>", text)
}

pub fn write_tree_model(tm: &TreeModel) -> String {
    let mut out = write_tree(tm.tree());
    for (k, &e) in tm.rule() {
        writeln!(out, "rule {} {} {} {}", k.lo, k.hi, k.distance, u8::from(e)).unwrap();
    }
    out
}

pub fn parse_forest_file(source: &str, text: &str) -> Result<EliminationForest> {
    let lines = Lines::new(source, text);
    let (hline, nums) = lines.header("ef", 1)?;
    let n = nums[0];
    check_size(&lines, hline, n, 1)?;
    let mut parent = vec![None; n];
    for (line, words) in lines.body() {
        let line = *line;
        match words[0] {
            "f" => {
                lines.arity(line, words, 3)?;
                let child = lines.vertex(line, words[1], n)?;
                let par = lines.vertex(line, words[2], n)?;
                if parent[child].replace(par).is_some() {
                    return Err(lines.err(line, format!("vertex {} has two parents", child + 1)));
                }
            }
            other => return Err(lines.err(line, format!("unknown line type '{other}'"))),
        }
    }
    EliminationForest::new(parent).map_err(|e| lines.err(hline, e.to_string()))
}

pub fn parse_forest(text: &str) -> Result<EliminationForest> {
    parse_forest_file("<input>", text)
}

pub fn write_forest(ef: &EliminationForest) -> String {
    let mut out = format!("p ef {}\n", ef.n());
    for v in 0..ef.n() {
        if let Some(p) = ef.parent(v) {
            writeln!(out, "f {} {}", v + 1, p + 1).unwrap();
        }
    }
    out
}
