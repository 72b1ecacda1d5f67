//! SC-depth recipes: single vertices combined by disjoint union followed by
//! complementing adjacency inside a chosen vertex subset.
//!
//! Text form: `L` is a leaf; `C[i,j,...](r1 r2 ...)` combines the children
//! and flips inside the listed vertices. Flip indices are 0-based positions in
//! the disjoint union of the children, in child order.

use std::collections::BTreeSet;

use super::colored::ColoredGraph;
use super::flip::{apply_flip, PartitionFlip};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScRecipe {
    Leaf,
    Combine {
        children: Vec<ScRecipe>,
        flip: BTreeSet<usize>,
    },
}

impl ScRecipe {
    pub fn combine(children: Vec<ScRecipe>, flip: impl IntoIterator<Item = usize>) -> Self {
        ScRecipe::Combine {
            children,
            flip: flip.into_iter().collect(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            ScRecipe::Leaf => 0,
            ScRecipe::Combine { children, .. } => {
                1 + children.iter().map(ScRecipe::depth).max().unwrap_or(0)
            }
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            ScRecipe::Leaf => 1,
            ScRecipe::Combine { children, .. } => children.iter().map(ScRecipe::leaf_count).sum(),
        }
    }

    pub fn render(&self) -> String {
        match self {
            ScRecipe::Leaf => "L".into(),
            ScRecipe::Combine { children, flip } => {
                let ids: Vec<String> = flip.iter().map(usize::to_string).collect();
                let kids: Vec<String> = children.iter().map(ScRecipe::render).collect();
                format!("C[{}]({})", ids.join(","), kids.join(" "))
            }
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let bytes = text.as_bytes();
        let mut pos = 0;
        let r = parse_recipe(bytes, &mut pos, 0)?;
        skip_ws(bytes, &mut pos);
        if pos != bytes.len() {
            return Err(Error::invalid(format!("trailing input at byte {pos} of recipe")));
        }
        Ok(r)
    }
}

const MAX_NESTING: usize = 256;

fn skip_ws(b: &[u8], pos: &mut usize) {
    while *pos < b.len() && b[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
}

fn expect(b: &[u8], pos: &mut usize, c: u8) -> Result<()> {
    skip_ws(b, pos);
    if b.get(*pos) == Some(&c) {
        *pos += 1;
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "expected '{}' at byte {} of recipe",
            c as char, *pos
        )))
    }
}

fn parse_recipe(b: &[u8], pos: &mut usize, nesting: usize) -> Result<ScRecipe> {
    if nesting > MAX_NESTING {
        return Err(Error::invalid("recipe nested too deeply"));
    }
    skip_ws(b, pos);
    match b.get(*pos) {
        Some(b'L') => {
            *pos += 1;
            Ok(ScRecipe::Leaf)
        }
        Some(b'C') => {
            *pos += 1;
            expect(b, pos, b'[')?;
            let mut flip = BTreeSet::new();
            loop {
                skip_ws(b, pos);
                if b.get(*pos) == Some(&b']') {
                    *pos += 1;
                    break;
                }
                let start = *pos;
                while *pos < b.len() && b[*pos].is_ascii_digit() {
                    *pos += 1;
                }
                let digits = std::str::from_utf8(&b[start..*pos]).unwrap();
                let id: usize = digits
                    .parse()
                    .map_err(|_| Error::invalid(format!("bad vertex index at byte {start} of recipe")))?;
                flip.insert(id);
                skip_ws(b, pos);
                if b.get(*pos) == Some(&b',') {
                    *pos += 1;
                }
            }
            expect(b, pos, b'(')?;
            let mut children = Vec::new();
            loop {
                skip_ws(b, pos);
                if b.get(*pos) == Some(&b')') {
                    *pos += 1;
                    break;
                }
                if *pos >= b.len() {
                    return Err(Error::invalid("unterminated recipe"));
                }
                children.push(parse_recipe(b, pos, nesting + 1)?);
            }
            if children.is_empty() {
                return Err(Error::invalid("combine needs at least one child"));
            }
            Ok(ScRecipe::Combine { children, flip })
        }
        _ => Err(Error::invalid(format!("expected 'L' or 'C' at byte {} of recipe", *pos))),
    }
}

/// Leaves become `K_1`; a combine takes the disjoint union of its children
/// and complements adjacency inside its flip set.
pub fn build_sc_graph(recipe: &ScRecipe) -> Result<ColoredGraph> {
    match recipe {
        ScRecipe::Leaf => Ok(ColoredGraph::new(1)),
        ScRecipe::Combine { children, flip } => {
            let mut g = ColoredGraph::new(0);
            for c in children {
                g = g.disjoint_union(&build_sc_graph(c)?);
            }
            if let Some(&bad) = flip.iter().find(|&&v| v >= g.n()) {
                return Err(Error::invalid(format!(
                    "flip set names vertex {bad} but the combined graph has {} vertices",
                    g.n()
                )));
            }
            apply_flip(&g, &PartitionFlip::within(flip.iter().copied().collect())?)
        }
    }
}
