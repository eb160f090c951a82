//! Edge-path presentations of fundamental groups and a bounded Tietze
//! simplifier.

use std::collections::{BTreeSet, HashMap, VecDeque};

use super::SimplicialComplex;
use crate::graph::VertexSet;

/// Default number of simplification steps before giving up.
pub const TIETZE_BUDGET: usize = 1000;

/// Relators longer than this in total abort simplification.
const MAX_TOTAL_LENGTH: usize = 200_000;

/// Group presentation. Letters are nonzero integers: `g + 1` for generator
/// `g` and `-(g + 1)` for its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: BTreeSet<usize>,
    pub relators: Vec<Vec<i32>>,
}

fn letter_gen(l: i32) -> usize {
    (l.unsigned_abs() - 1) as usize
}

fn free_reduce(word: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn cyclic_reduce(word: &[i32]) -> Vec<i32> {
    let mut w = free_reduce(word);
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.pop();
        w.remove(0);
    }
    w
}

fn invert(word: &[i32]) -> Vec<i32> {
    word.iter().rev().map(|l| -l).collect()
}

fn rotate(word: &[i32], k: usize) -> Vec<i32> {
    let mut w = word[k..].to_vec();
    w.extend_from_slice(&word[..k]);
    w
}

/// Presentation read off a connected complex: one generator per edge outside
/// a breadth-first spanning tree, one relator per triangle.
pub fn fundamental_group(k: &SimplicialComplex) -> Presentation {
    let verts = k.vertices();
    let mut adjacency: HashMap<usize, VertexSet> = HashMap::new();
    for e in k.simplices(1) {
        let ends = e.to_vec();
        let (a, b) = (ends[0], ends[1]);
        let sa = adjacency.entry(a).or_default();
        *sa = sa.with(b);
        let sb = adjacency.entry(b).or_default();
        *sb = sb.with(a);
    }
    let root = verts.iter().max_by_key(|v| {
        (
            adjacency.get(v).map_or(0, |s| s.len()),
            std::cmp::Reverse(*v),
        )
    });
    let mut tree_edges = BTreeSet::new();
    if let Some(root) = root {
        let mut seen = VertexSet::singleton(root);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let nbrs = adjacency.get(&v).copied().unwrap_or_default();
            for w in nbrs.difference(seen).iter() {
                seen = seen.with(w);
                tree_edges.insert(VertexSet::singleton(v).with(w));
                queue.push_back(w);
            }
        }
    }
    let mut gen_of: HashMap<VertexSet, i32> = HashMap::new();
    let mut generators = BTreeSet::new();
    for e in k.simplices(1) {
        if !tree_edges.contains(e) {
            let g = generators.len();
            generators.insert(g);
            gen_of.insert(*e, g as i32 + 1);
        }
    }
    // edge {a<b} traversed from a to b reads its generator forwards
    let letter = |a: usize, b: usize| -> Option<i32> {
        let e = VertexSet::singleton(a).with(b);
        gen_of.get(&e).map(|&g| if a < b { g } else { -g })
    };
    let relators = k
        .simplices(2)
        .iter()
        .map(|t| {
            let v = t.to_vec();
            [(v[0], v[1]), (v[1], v[2]), (v[2], v[0])]
                .iter()
                .filter_map(|&(a, b)| letter(a, b))
                .collect()
        })
        .collect();
    Presentation {
        generators,
        relators,
    }
}

impl Presentation {
    /// No generators left: the trivial group.
    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    fn normalize(&mut self) {
        let mut seen = BTreeSet::new();
        self.relators = std::mem::take(&mut self.relators)
            .into_iter()
            .map(|r| cyclic_reduce(&r))
            .filter(|r| !r.is_empty())
            .filter(|r| seen.insert(r.clone()))
            .collect();
        // a relator `x` or `x^-1` kills x outright
        let killed: Vec<usize> = self
            .relators
            .iter()
            .filter(|r| r.len() == 1)
            .map(|r| letter_gen(r[0]))
            .collect();
        for g in killed {
            self.substitute(g, &[]);
        }
        self.relators.retain(|r| !r.is_empty());
    }

    /// Replaces every occurrence of generator `g` by `rep` and drops `g`.
    fn substitute(&mut self, g: usize, rep: &[i32]) {
        let inv = invert(rep);
        for r in &mut self.relators {
            if r.iter().any(|&l| letter_gen(l) == g) {
                let mut out = Vec::with_capacity(r.len());
                for &l in r.iter() {
                    if letter_gen(l) == g {
                        out.extend_from_slice(if l > 0 { rep } else { &inv });
                    } else {
                        out.push(l);
                    }
                }
                *r = cyclic_reduce(&out);
            }
        }
        self.generators.remove(&g);
    }

    /// Eliminates a generator that occurs exactly once in some relator,
    /// preferring the shortest such relator.
    fn eliminate_once(&mut self) -> bool {
        let mut best: Option<(usize, usize, usize)> = None; // (len, relator, position)
        for (ri, r) in self.relators.iter().enumerate() {
            if best.is_some_and(|(len, _, _)| len <= r.len()) {
                continue;
            }
            let mut counts: HashMap<usize, usize> = HashMap::new();
            for &l in r {
                *counts.entry(letter_gen(l)).or_default() += 1;
            }
            if let Some(pos) = r.iter().position(|&l| counts[&letter_gen(l)] == 1) {
                best = Some((r.len(), ri, pos));
            }
        }
        let Some((_, ri, pos)) = best else {
            return false;
        };
        let r = self.relators.remove(ri);
        let rot = rotate(&r, pos);
        let x = rot[0];
        // x^e w = 1  =>  x = w^-1 (e = 1) or x = w (e = -1)
        let rest = &rot[1..];
        let rep = if x > 0 { invert(rest) } else { rest.to_vec() };
        self.substitute(letter_gen(x), &rep);
        true
    }

    /// Replaces, inside some relator, a piece longer than half of another
    /// relator by the inverse of the remaining shorter piece.
    fn shorten_once(&mut self) -> bool {
        for i in 0..self.relators.len() {
            let r = self.relators[i].clone();
            let len = r.len();
            for base in [r.clone(), invert(&r)] {
                for k in 0..len {
                    let rot = rotate(&base, k);
                    for l in (len / 2 + 1..=len).rev() {
                        let (p, q) = rot.split_at(l);
                        let replacement = invert(q);
                        for j in 0..self.relators.len() {
                            if j == i {
                                continue;
                            }
                            let s = &self.relators[j];
                            if let Some(at) = s.windows(l).position(|w| w == p) {
                                let mut out = s[..at].to_vec();
                                out.extend_from_slice(&replacement);
                                out.extend_from_slice(&s[at + l..]);
                                self.relators[j] = cyclic_reduce(&out);
                                return true;
                            }
                        }
                    }
                }
            }
        }
        false
    }

    /// Applies at most `budget` Tietze moves.
    pub fn simplify(mut self, budget: usize) -> Presentation {
        let mut steps = 0;
        loop {
            self.normalize();
            if self.generators.is_empty() || steps >= budget {
                return self;
            }
            let total: usize = self.relators.iter().map(Vec::len).sum();
            if total > MAX_TOTAL_LENGTH {
                return self;
            }
            if !(self.eliminate_once() || self.shorten_once()) {
                return self;
            }
            steps += 1;
        }
    }
}
