//! FO^s equivalence through the s-pebble game.
//!
//! Positions are s-tuples over `V ∪ {blank}`. Two positions (in the same or
//! in different graphs) are Duplicator-safe for `r` more rounds exactly when
//! they receive the same color after `r` rounds of the refinement
//!
//! ```text
//! color_0(t)     = atomic type of t
//! color_{r+1}(t) = (color_r(t), [ {color_r(t[i -> v]) : v in V} for i in 1..=s ])
//! ```
//!
//! computed jointly over the disjoint union of every graph involved, with one
//! shared color numbering.

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Vertex};

/// Refuse games whose combined position count exceeds this.
pub const MAX_POSITIONS: u64 = 10_000_000;

/// Pebble placement: `None` is a blank pebble.
pub type PebbleTuple = Vec<Option<Vertex>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GamePosition {
    pub a: PebbleTuple,
    pub b: PebbleTuple,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GameOutcome {
    DuplicatorWins,
    /// Spoiler wins from the start position within this many moves.
    SpoilerWinsAt(usize),
}

pub fn is_s_partial_isomorphism(
    a: &ColoredGraph,
    at: &[Option<Vertex>],
    b: &ColoredGraph,
    bt: &[Option<Vertex>],
) -> bool {
    if at.len() != bt.len() {
        return false;
    }
    let s = at.len();
    for i in 0..s {
        match (at[i], bt[i]) {
            (None, None) => {}
            (Some(u), Some(v)) => {
                if a.color(u) != b.color(v) {
                    return false;
                }
                for j in 0..i {
                    if let (Some(u2), Some(v2)) = (at[j], bt[j]) {
                        if (u == u2) != (v == v2) || a.adjacent(u, u2) != b.adjacent(v, v2) {
                            return false;
                        }
                    }
                }
            }
            _ => return false,
        }
    }
    true
}

pub fn fo_s_equivalent(a: &ColoredGraph, b: &ColoredGraph, s: usize) -> Result<bool> {
    Ok(spoiler_distance(a, b, s)? == GameOutcome::DuplicatorWins)
}

pub fn spoiler_distance(a: &ColoredGraph, b: &ColoredGraph, s: usize) -> Result<GameOutcome> {
    let graphs = [a, b];
    let mut r = Refinement::new(&graphs, s)?;
    loop {
        if r.start_color(0) != r.start_color(1) {
            return Ok(GameOutcome::SpoilerWinsAt(r.round));
        }
        if !r.refine() {
            return Ok(GameOutcome::DuplicatorWins);
        }
    }
}

/// Blocks of FO^s-equivalent indices, each sorted, ordered by first member.
pub fn type_census(gs: &[ColoredGraph], s: usize) -> Result<Vec<Vec<usize>>> {
    let refs: Vec<&ColoredGraph> = gs.iter().collect();
    let mut r = Refinement::new(&refs, s)?;
    while r.refine() {}
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut by_color: FxHashMap<u32, usize> = FxHashMap::default();
    for i in 0..gs.len() {
        let c = r.start_color(i);
        let slot = *by_color.entry(c).or_insert_with(|| {
            blocks.push(Vec::new());
            blocks.len() - 1
        });
        blocks[slot].push(i);
    }
    Ok(blocks)
}

struct Refinement<'a> {
    graphs: &'a [&'a ColoredGraph],
    s: usize,
    offsets: Vec<usize>,
    colors: Vec<u32>,
    classes: usize,
    round: usize,
}

impl<'a> Refinement<'a> {
    fn new(graphs: &'a [&'a ColoredGraph], s: usize) -> Result<Self> {
        if s == 0 {
            return Err(Error::invalid("the pebble game needs at least one pebble"));
        }
        if graphs.iter().any(|g| g.is_empty()) {
            return Err(Error::invalid("the pebble game is not played on the empty graph"));
        }
        let mut total: u64 = 0;
        let mut offsets = Vec::with_capacity(graphs.len() + 1);
        for g in graphs {
            offsets.push(total as usize);
            let count = (g.n() as u64 + 1).checked_pow(s as u32);
            total = match count.and_then(|c| total.checked_add(c)) {
                Some(t) if t <= MAX_POSITIONS => t,
                _ => {
                    return Err(Error::ResourceLimit(format!(
                        "the {s}-pebble game on graphs of sizes {:?} needs more than {MAX_POSITIONS} positions",
                        graphs.iter().map(|g| g.n()).collect::<Vec<_>>()
                    )))
                }
            };
        }
        offsets.push(total as usize);
        let mut r = Refinement {
            graphs,
            s,
            offsets,
            colors: Vec::with_capacity(total as usize),
            classes: 0,
            round: 0,
        };
        r.atomic_types();
        Ok(r)
    }

    fn atomic_types(&mut self) {
        let s = self.s;
        let mut intern: FxHashMap<Vec<u32>, u32> = FxHashMap::default();
        let mut key = Vec::with_capacity(s + s * s);
        for g in self.graphs {
            let n = g.n();
            let count = (n + 1).pow(s as u32);
            let mut digits = vec![0usize; s];
            for idx in 0..count {
                decode(idx, n + 1, &mut digits);
                key.clear();
                for i in 0..s {
                    key.push(if digits[i] == n { 0 } else { g.color(digits[i]) });
                }
                for i in 0..s {
                    for j in (i + 1)..s {
                        let (u, v) = (digits[i], digits[j]);
                        key.push(if u == n || v == n {
                            0
                        } else if u == v {
                            1
                        } else if g.adjacent(u, v) {
                            2
                        } else {
                            3
                        });
                    }
                }
                let next = intern.len() as u32;
                let c = *intern.entry(key.clone()).or_insert(next);
                self.colors.push(c);
            }
        }
        self.classes = intern.len();
    }

    /// One refinement round; false when the partition was already stable.
    ///
    /// The successor set of `t` at index `i` only depends on the other
    /// coordinates, so it is computed once per tuple with a hole at `i`.
    fn refine(&mut self) -> bool {
        let s = self.s;
        let mut sets: FxHashMap<Vec<u32>, u32> = FxHashMap::default();
        let mut intern: FxHashMap<Vec<u32>, u32> = FxHashMap::default();
        let mut next_colors = Vec::with_capacity(self.colors.len());
        let mut key: Vec<u32> = Vec::with_capacity(s + 1);
        let mut succ: Vec<u32> = Vec::new();
        for (gi, g) in self.graphs.iter().enumerate() {
            let n = g.n();
            let base = self.offsets[gi];
            let count = (n + 1).pow(s as u32);
            let holes = count / (n + 1);
            let strides: Vec<usize> = (0..s).map(|i| (n + 1).pow((s - 1 - i) as u32)).collect();
            let mut hole_set = vec![0u32; s * holes];
            for i in 0..s {
                let stride = strides[i];
                for h in 0..holes {
                    let zeroed = (h / stride) * stride * (n + 1) + h % stride;
                    succ.clear();
                    succ.extend((0..n).map(|v| self.colors[base + zeroed + v * stride]));
                    succ.sort_unstable();
                    succ.dedup();
                    hole_set[i * holes + h] = match sets.get(&succ) {
                        Some(&id) => id,
                        None => {
                            let id = sets.len() as u32;
                            sets.insert(succ.clone(), id);
                            id
                        }
                    };
                }
            }
            for idx in 0..count {
                key.clear();
                key.push(self.colors[base + idx]);
                for i in 0..s {
                    let stride = strides[i];
                    let h = (idx / (stride * (n + 1))) * stride + idx % stride;
                    key.push(hole_set[i * holes + h]);
                }
                let c = match intern.get(&key) {
                    Some(&c) => c,
                    None => {
                        let c = intern.len() as u32;
                        intern.insert(key.clone(), c);
                        c
                    }
                };
                next_colors.push(c);
            }
        }
        let stable = intern.len() == self.classes;
        self.colors = next_colors;
        self.classes = intern.len();
        self.round += 1;
        !stable
    }

    fn start_color(&self, gi: usize) -> u32 {
        // The all-blank tuple is the last one of each graph.
        self.colors[self.offsets[gi + 1] - 1]
    }
}

fn decode(mut idx: usize, base: usize, digits: &mut [usize]) {
    for d in digits.iter_mut().rev() {
        *d = idx % base;
        idx /= base;
    }
}
