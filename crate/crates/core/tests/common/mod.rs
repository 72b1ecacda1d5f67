//! Independent oracles shared by the integration suites.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;
use shrubfo::graph::Vertex;
use shrubfo::{ColoredGraph, Formula, RootedColoredTree, Var};

/// Evaluates by expanding quantifiers over every vertex, no tables.
pub fn direct_eval(g: &ColoredGraph, f: &Formula, env: &mut BTreeMap<Var, Vertex>) -> bool {
    match f {
        Formula::Edge(u, v) => g.adjacent(env[u], env[v]),
        Formula::Eq(u, v) => env[u] == env[v],
        Formula::Color(c, v) => g.color(env[v]) == *c,
        Formula::Not(c) => !direct_eval(g, c, env),
        Formula::And(cs) => cs.iter().all(|c| direct_eval(g, c, env)),
        Formula::Or(cs) => cs.iter().any(|c| direct_eval(g, c, env)),
        Formula::Implies(a, b) => !direct_eval(g, a, env) || direct_eval(g, b, env),
        Formula::Exists(v, b) | Formula::Forall(v, b) => {
            let saved = env.get(v).copied();
            let want_any = matches!(f, Formula::Exists(..));
            let mut result = !want_any;
            for x in 0..g.n() {
                env.insert(*v, x);
                if direct_eval(g, b, env) == want_any {
                    result = want_any;
                    break;
                }
            }
            match saved {
                Some(x) => env.insert(*v, x),
                None => env.remove(v),
            };
            result
        }
    }
}

pub fn direct_check(g: &ColoredGraph, f: &Formula) -> bool {
    direct_eval(g, f, &mut BTreeMap::new())
}

/// Plain BFS on the adjacency matrix.
pub fn bfs(g: &ColoredGraph, src: Vertex) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    dist[src] = Some(0);
    let mut q = VecDeque::from([src]);
    while let Some(u) = q.pop_front() {
        for w in 0..g.n() {
            if g.adjacent(u, w) && dist[w].is_none() {
                dist[w] = Some(dist[u].unwrap() + 1);
                q.push_back(w);
            }
        }
    }
    dist
}

fn partial_iso(a: &ColoredGraph, at: &[usize], b: &ColoredGraph, bt: &[usize]) -> bool {
    let (na, nb) = (a.n(), b.n());
    for i in 0..at.len() {
        if (at[i] == na) != (bt[i] == nb) {
            return false;
        }
        if at[i] == na {
            continue;
        }
        if a.color(at[i]) != b.color(bt[i]) {
            return false;
        }
        for j in 0..i {
            if at[j] == na {
                continue;
            }
            if (at[i] == at[j]) != (bt[i] == bt[j]) || a.adjacent(at[i], at[j]) != b.adjacent(bt[i], bt[j]) {
                return false;
            }
        }
    }
    true
}

fn digits(mut idx: usize, base: usize, s: usize) -> Vec<usize> {
    let mut d = vec![0; s];
    for slot in d.iter_mut().rev() {
        *slot = idx % base;
        idx /= base;
    }
    d
}

/// Greatest fixpoint over the product position space. Returns `None` when
/// Duplicator wins, otherwise the pruning round that removes the start.
pub fn product_game(a: &ColoredGraph, b: &ColoredGraph, s: usize) -> Option<usize> {
    let (ba, bb) = (a.n() + 1, b.n() + 1);
    let (ca, cb) = (ba.pow(s as u32), bb.pow(s as u32));
    let pos = |i: usize, j: usize| i * cb + j;
    let mut alive: Vec<bool> = (0..ca * cb)
        .map(|p| partial_iso(a, &digits(p / cb, ba, s), b, &digits(p % cb, bb, s)))
        .collect();
    let start = pos(ca - 1, cb - 1);
    let stride = |base: usize, i: usize| base.pow((s - 1 - i) as u32);
    let mut round = 0;
    loop {
        if !alive[start] {
            return Some(round);
        }
        round += 1;
        let mut next = alive.clone();
        for p in 0..ca * cb {
            if !alive[p] {
                continue;
            }
            let (ia, ib) = (p / cb, p % cb);
            let (da, db) = (digits(ia, ba, s), digits(ib, bb, s));
            'moves: for i in 0..s {
                let (sa, sb) = (stride(ba, i), stride(bb, i));
                let (za, zb) = (ia - da[i] * sa, ib - db[i] * sb);
                // Spoiler on the first graph.
                for v in 0..a.n() {
                    if !(0..b.n()).any(|w| alive[pos(za + v * sa, zb + w * sb)]) {
                        next[p] = false;
                        break 'moves;
                    }
                }
                for w in 0..b.n() {
                    if !(0..a.n()).any(|v| alive[pos(za + v * sa, zb + w * sb)]) {
                        next[p] = false;
                        break 'moves;
                    }
                }
            }
        }
        if next == alive {
            return None;
        }
        alive = next;
    }
}

/// Tries every bijection.
pub fn isomorphic(g: &ColoredGraph, h: &ColoredGraph) -> bool {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return false;
    }
    let mut perm: Vec<usize> = (0..g.n()).collect();
    fn go(g: &ColoredGraph, h: &ColoredGraph, perm: &mut Vec<usize>, k: usize) -> bool {
        if k == perm.len() {
            return true;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            let v = perm[k];
            let ok = g.color(k) == h.color(v) && (0..k).all(|j| g.adjacent(j, k) == h.adjacent(perm[j], v));
            if ok && go(g, h, perm, k + 1) {
                return true;
            }
            perm.swap(k, i);
        }
        false
    }
    go(g, h, &mut perm, 0)
}

/// Rooted, color-preserving isomorphism by backtracking over child matchings.
pub fn rooted_isomorphic(a: &RootedColoredTree, b: &RootedColoredTree) -> bool {
    fn go(a: &RootedColoredTree, u: Vertex, b: &RootedColoredTree, v: Vertex) -> bool {
        if a.color(u) != b.color(v) || a.children(u).len() != b.children(v).len() {
            return false;
        }
        let ca = a.children(u);
        let cb = b.children(v);
        let mut used = vec![false; cb.len()];
        fn matching(a: &RootedColoredTree, ca: &[Vertex], b: &RootedColoredTree, cb: &[Vertex], used: &mut Vec<bool>, i: usize) -> bool {
            if i == ca.len() {
                return true;
            }
            for j in 0..cb.len() {
                if !used[j] && go(a, ca[i], b, cb[j]) {
                    used[j] = true;
                    if matching(a, ca, b, cb, used, i + 1) {
                        return true;
                    }
                    used[j] = false;
                }
            }
            false
        }
        matching(a, ca, b, cb, &mut used, 0)
    }
    a.n() == b.n() && go(a, a.root(), b, b.root())
}

/// Tree-depth by the deletion recursion on explicit vertex lists.
pub fn td_oracle(g: &ColoredGraph) -> usize {
    fn comps(g: &ColoredGraph, set: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for &s in set {
            if !seen.insert(s) {
                continue;
            }
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                for &w in set {
                    if g.adjacent(u, w) && seen.insert(w) {
                        comp.push(w);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
    fn td(g: &ColoredGraph, set: Vec<usize>, memo: &mut BTreeMap<Vec<usize>, usize>) -> usize {
        if set.len() <= 1 {
            return set.len();
        }
        if let Some(&d) = memo.get(&set) {
            return d;
        }
        let cs = comps(g, &set);
        let d = if cs.len() > 1 {
            cs.into_iter().map(|c| td(g, c, memo)).max().unwrap()
        } else {
            set.iter()
                .map(|&v| 1 + td(g, set.iter().copied().filter(|&w| w != v).collect(), memo))
                .min()
                .unwrap()
        };
        memo.insert(set, d);
        d
    }
    td(g, (0..g.n()).collect(), &mut BTreeMap::new())
}

/// Same graph under a random relabeling.
pub fn shuffled(rng: &mut impl Rng, g: &ColoredGraph) -> ColoredGraph {
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(rng);
    g.permuted(&perm)
}

pub fn tree_from_graph_shuffled(rng: &mut impl Rng, t: &RootedColoredTree) -> RootedColoredTree {
    let mut perm: Vec<usize> = (0..t.n()).collect();
    perm.shuffle(rng);
    let g = t.graph().permuted(&perm);
    RootedColoredTree::from_graph(g, perm[t.root()]).unwrap()
}
