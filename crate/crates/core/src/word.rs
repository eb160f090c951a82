//! Words, normal forms and conjugacy in graph products of cyclic groups.
//!
//! A word is a sequence of syllables `v^k`. Two syllables whose vertices are
//! adjacent commute; two syllables of the same vertex merge. A word is
//! *reduced* when no two syllables of the same vertex can be brought next to
//! each other by commuting moves, and reduced words representing the same
//! element are shuffles of one another. The normal form is the
//! lexicographically least shuffle of the reduced word, comparing vertex
//! indices left to right.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{Order, SimplicialGraph, VertexSet};

/// One syllable `vertex^exp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub vertex: usize,
    pub exp: i64,
}

impl Syllable {
    pub fn new(vertex: usize, exp: i64) -> Self {
        Syllable { vertex, exp }
    }
}

/// A word over the vertex generators. Exponents are arbitrary; nothing is
/// reduced until the word is normalized.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    pub syllables: Vec<Syllable>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn from_syllables(syllables: Vec<Syllable>) -> Self {
        Word { syllables }
    }

    /// `v^k`.
    pub fn power(vertex: usize, exp: i64) -> Self {
        Word {
            syllables: vec![Syllable::new(vertex, exp)],
        }
    }

    pub fn generator(vertex: usize) -> Self {
        Word::power(vertex, 1)
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Concatenation (no reduction).
    pub fn concat(&self, other: &Word) -> Word {
        let mut syllables = self.syllables.clone();
        syllables.extend_from_slice(&other.syllables);
        Word { syllables }
    }

    /// Formal inverse (no reduction).
    pub fn inverse(&self) -> Word {
        Word {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable::new(s.vertex, -s.exp))
                .collect(),
        }
    }
}

impl From<NormalForm> for Word {
    fn from(nf: NormalForm) -> Word {
        nf.0
    }
}

/// Canonical spelling of a group element.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm(Word);

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.syllables.cmp(&other.syllables)
    }
}

impl NormalForm {
    pub fn as_word(&self) -> &Word {
        &self.0
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.0.syllables
    }

    /// Syllable length, which is the geodesic syllable length of the element.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    /// Vertices occurring in the form.
    pub fn support(&self) -> VertexSet {
        VertexSet::from_indices(self.0.syllables.iter().map(|s| s.vertex))
    }
}

/// The graph product of cyclic groups defined by a [`SimplicialGraph`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphProduct {
    graph: SimplicialGraph,
}

impl GraphProduct {
    pub fn new(graph: SimplicialGraph) -> Self {
        GraphProduct { graph }
    }

    pub fn graph(&self) -> &SimplicialGraph {
        &self.graph
    }

    pub fn rank(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Checks that every syllable refers to a vertex of the graph.
    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w.syllables.iter().find(|s| s.vertex >= self.rank()) {
            Some(s) => Err(Error::UnknownVertex(format!("#{}", s.vertex))),
            None => Ok(()),
        }
    }

    /// Parses whitespace-separated tokens `name` or `name^k` (`k` a nonzero
    /// integer). The empty string is the identity.
    pub fn parse_word(&self, text: &str, source: &str, line: usize) -> Result<Word> {
        let mut syllables = Vec::new();
        for tok in text.split_whitespace() {
            let (name, exp) = match tok.split_once('^') {
                None => (tok, 1),
                Some((name, k)) => {
                    let exp = k.parse::<i64>().ok().filter(|&e| e != 0).ok_or_else(|| {
                        Error::parse(source, line, tok, "exponent must be a nonzero integer")
                    })?;
                    (name, exp)
                }
            };
            let vertex = self
                .graph
                .index_of(name)
                .map_err(|_| Error::parse(source, line, tok, "unknown vertex"))?;
            syllables.push(Syllable::new(vertex, exp));
        }
        Ok(Word { syllables })
    }

    /// Parses a word given on the command line or in a test.
    pub fn word(&self, text: &str) -> Result<Word> {
        self.parse_word(text, "<arg>", 1)
    }

    /// Renders a word as `a^2 b^-1 c`; the identity renders as the empty string.
    pub fn format(&self, w: &Word) -> String {
        w.syllables
            .iter()
            .map(|s| {
                let name = self.graph.name(s.vertex);
                if s.exp == 1 {
                    name.to_string()
                } else {
                    format!("{name}^{}", s.exp)
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn format_nf(&self, nf: &NormalForm) -> String {
        self.format(nf.as_word())
    }

    /// Reduces an exponent into the canonical range for its vertex:
    /// `1..m-1` for order `m`, nonzero for infinite order. Returns 0 when the
    /// syllable is trivial.
    pub fn reduce_exp(&self, vertex: usize, exp: i64) -> i64 {
        match self.graph.order(vertex) {
            Order::Infinite => exp,
            Order::Finite(m) => exp.rem_euclid(m as i64),
        }
    }

    fn commute(&self, u: usize, v: usize) -> bool {
        self.graph.adjacent(u, v)
    }

    /// Appends one syllable to a reduced sequence, merging it into the
    /// rightmost same-vertex syllable it can reach by commuting moves.
    fn pile(&self, out: &mut Vec<Syllable>, vertex: usize, exp: i64) {
        let exp = self.reduce_exp(vertex, exp);
        if exp == 0 {
            return;
        }
        for i in (0..out.len()).rev() {
            let t = out[i];
            if t.vertex == vertex {
                let sum = t.exp.checked_add(exp).expect("exponent overflow");
                let merged = self.reduce_exp(vertex, sum);
                if merged == 0 {
                    out.remove(i);
                } else {
                    out[i].exp = merged;
                }
                return;
            }
            if !self.commute(t.vertex, vertex) {
                break;
            }
        }
        out.push(Syllable::new(vertex, exp));
    }

    /// Lexicographically least shuffle of a reduced sequence: repeatedly
    /// emit the smallest-vertex syllable that commutes with every syllable
    /// still waiting in front of it.
    fn canonical_order(&self, reduced: Vec<Syllable>) -> Vec<Syllable> {
        let mut remaining = reduced;
        let mut out = Vec::with_capacity(remaining.len());
        while !remaining.is_empty() {
            let mut best: Option<usize> = None;
            for i in 0..remaining.len() {
                let v = remaining[i].vertex;
                let available = remaining[..i].iter().all(|t| self.commute(t.vertex, v));
                if available && best.is_none_or(|b| v < remaining[b].vertex) {
                    best = Some(i);
                }
            }
            out.push(remaining.remove(best.expect("some syllable is always available")));
        }
        out
    }

    pub fn normal_form(&self, w: &Word) -> NormalForm {
        let mut reduced = Vec::with_capacity(w.len());
        for s in &w.syllables {
            self.pile(&mut reduced, s.vertex, s.exp);
        }
        NormalForm(Word {
            syllables: self.canonical_order(reduced),
        })
    }

    pub fn is_identity(&self, w: &Word) -> bool {
        self.normal_form(w).is_identity()
    }

    pub fn equal(&self, u: &Word, v: &Word) -> bool {
        self.normal_form(u) == self.normal_form(v)
    }

    /// `u v`, normalized.
    pub fn multiply(&self, u: &Word, v: &Word) -> NormalForm {
        self.normal_form(&u.concat(v))
    }

    pub fn inverse(&self, w: &Word) -> NormalForm {
        self.normal_form(&w.inverse())
    }

    /// `g w g^-1`, normalized.
    pub fn conjugate_by(&self, w: &Word, g: &Word) -> NormalForm {
        self.normal_form(&g.concat(w).concat(&g.inverse()))
    }

    /// `u v u^-1 v^-1`, normalized.
    pub fn commutator(&self, u: &Word, v: &Word) -> NormalForm {
        self.normal_form(&u.concat(v).concat(&u.inverse()).concat(&v.inverse()))
    }

    /// Exponent sum per vertex, reduced modulo the vertex order where finite.
    pub fn abelianize(&self, w: &Word) -> Vec<i64> {
        let mut out = vec![0i64; self.rank()];
        for s in &w.syllables {
            out[s.vertex] = out[s.vertex].checked_add(s.exp).expect("exponent overflow");
        }
        for (v, x) in out.iter_mut().enumerate() {
            *x = self.reduce_exp(v, *x);
        }
        out
    }

    /// Image under the retraction onto the subgroup generated by `keep`
    /// (every other generator is sent to the identity).
    pub fn project(&self, w: &Word, keep: VertexSet) -> NormalForm {
        self.normal_form(&Word {
            syllables: w
                .syllables
                .iter()
                .copied()
                .filter(|s| keep.contains(s.vertex))
                .collect(),
        })
    }

    /// Indices of syllables that can be shuffled to the front.
    fn initial_indices(&self, s: &[Syllable]) -> Vec<usize> {
        (0..s.len())
            .filter(|&i| s[..i].iter().all(|t| self.commute(t.vertex, s[i].vertex)))
            .collect()
    }

    /// Indices of syllables that can be shuffled to the back.
    fn terminal_indices(&self, s: &[Syllable]) -> Vec<usize> {
        (0..s.len())
            .filter(|&i| {
                s[i + 1..]
                    .iter()
                    .all(|t| self.commute(t.vertex, s[i].vertex))
            })
            .collect()
    }

    /// Conjugates `w` to a cyclically reduced element: while some syllable
    /// that can move to the front shares its vertex with a different syllable
    /// that can move to the back, conjugate the first around to merge them.
    pub fn cyclic_reduce(&self, w: &Word) -> NormalForm {
        let mut nf = self.normal_form(w);
        loop {
            let s = nf.syllables();
            let terminal = self.terminal_indices(s);
            let hit = self.initial_indices(s).into_iter().find(|&i| {
                terminal
                    .iter()
                    .any(|&j| j != i && s[j].vertex == s[i].vertex)
            });
            match hit {
                None => return nf,
                Some(i) => {
                    let x = Word::power(s[i].vertex, s[i].exp);
                    let next = self.conjugate_by(nf.as_word(), &x.inverse());
                    debug_assert!(next.len() < nf.len());
                    nf = next;
                }
            }
        }
    }

    /// Normal forms of every cyclic shuffle of a cyclically reduced form:
    /// the closure under moving a front-movable syllable to the back.
    pub fn cyclic_class(&self, cyclic: &NormalForm) -> HashSet<NormalForm> {
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(cyclic.clone());
        queue.push_back(cyclic.clone());
        while let Some(nf) = queue.pop_front() {
            let s = nf.syllables();
            for i in self.initial_indices(s) {
                let mut rotated: Vec<Syllable> = s.to_vec();
                let x = rotated.remove(i);
                rotated.push(x);
                let next = self.normal_form(&Word::from_syllables(rotated));
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        seen
    }

    /// Decides whether `u` and `v` are conjugate.
    ///
    /// Both sides are cyclically reduced; cyclically reduced conjugates are
    /// related by cyclic permutations of syllables and commuting moves, so the
    /// test explores the cyclic class of one side. The class can grow
    /// exponentially with word length.
    pub fn is_conjugate(&self, u: &Word, v: &Word) -> bool {
        if self.abelianize(u) != self.abelianize(v) {
            return false;
        }
        let cu = self.cyclic_reduce(u);
        let cv = self.cyclic_reduce(v);
        if cu.len() != cv.len() {
            return false;
        }
        let mut su = cu.syllables().to_vec();
        let mut sv = cv.syllables().to_vec();
        su.sort();
        sv.sort();
        if su != sv {
            return false;
        }
        cu == cv || self.cyclic_class(&cu).contains(&cv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2(order: Order) -> GraphProduct {
        GraphProduct::new(SimplicialGraph::complete(2, order))
    }

    fn free2() -> GraphProduct {
        GraphProduct::new(SimplicialGraph::edgeless(2, Order::Infinite))
    }

    fn nf(g: &GraphProduct, s: &str) -> String {
        g.format_nf(&g.normal_form(&g.word(s).unwrap()))
    }

    #[test]
    fn normal_form_examples() {
        assert_eq!(nf(&k2(Order::Infinite), "b a"), "a b");
        assert_eq!(nf(&free2(), "a b b^-1 a^-1"), "");
        assert_eq!(nf(&k2(Order::Finite(2)), "a b a b"), "");
        assert_eq!(nf(&free2(), "a a b^2 b^-3"), "a^2 b^-1");
    }

    #[test]
    fn finite_exponents_are_canonical() {
        let g = GraphProduct::new(SimplicialGraph::edgeless(1, Order::Finite(5)));
        assert_eq!(nf(&g, "a^-1"), "a^4");
        assert_eq!(nf(&g, "a^7"), "a^2");
        assert_eq!(nf(&g, "a^5"), "");
    }

    #[test]
    fn merge_through_commuting_block() {
        // a and c commute with b; a ... a merge across b
        let g = GraphProduct::new(SimplicialGraph::path(3, Order::Infinite));
        assert_eq!(nf(&g, "a b a"), "a^2 b");
        assert_eq!(nf(&g, "a c a"), "a c a");
        assert_eq!(nf(&g, "c b a b^-1"), "c a");
    }

    #[test]
    fn equality_examples() {
        let g = k2(Order::Infinite);
        assert!(g.equal(&g.word("a b").unwrap(), &g.word("b a").unwrap()));
        let f = free2();
        assert!(!f.equal(&f.word("a b").unwrap(), &f.word("b a").unwrap()));
        let w = f.word("a b^2 a^-3").unwrap();
        assert!(f.equal(&w, &w.concat(&f.word("b b^-1").unwrap())));
    }

    #[test]
    fn conjugacy_examples() {
        let f = free2();
        assert!(f.is_conjugate(&f.word("a b").unwrap(), &f.word("b a").unwrap()));
        assert!(!f.is_conjugate(&f.word("a").unwrap(), &f.word("b").unwrap()));
        let z2 = k2(Order::Infinite);
        assert!(!z2.is_conjugate(&z2.word("a").unwrap(), &z2.word("a b").unwrap()));
        // same abelianization, not conjugate in F2
        assert!(!f.is_conjugate(&f.word("a b a^-1 b^-1").unwrap(), &f.word("").unwrap()));
        assert!(!f.is_conjugate(&f.word("a^2 b^2").unwrap(), &f.word("a b a b").unwrap()));
    }

    #[test]
    fn cyclic_reduction_merges_ends() {
        let g = GraphProduct::new(SimplicialGraph::edgeless(2, Order::Finite(3)));
        let c = g.cyclic_reduce(&g.word("a b a").unwrap());
        assert_eq!(g.format_nf(&c).split(' ').count(), 2);
        assert!(g.is_conjugate(&g.word("a b a").unwrap(), &g.word("b a^2").unwrap()));
    }

    #[test]
    fn racg_dihedral_conjugacy() {
        let g = GraphProduct::new(SimplicialGraph::edgeless(2, Order::Finite(2)));
        assert!(g.is_conjugate(&g.word("a b").unwrap(), &g.word("b a").unwrap()));
        assert!(g.is_conjugate(&g.word("a").unwrap(), &g.word("b a b").unwrap()));
        assert!(!g.is_conjugate(&g.word("a").unwrap(), &g.word("b").unwrap()));
    }

    #[test]
    fn abelianize_examples() {
        let g = free2();
        assert_eq!(g.abelianize(&g.word("a^2 b a^-1").unwrap()), vec![1, 1]);
        let z2 = GraphProduct::new(SimplicialGraph::edgeless(1, Order::Finite(2)));
        assert_eq!(z2.abelianize(&z2.word("a^3").unwrap()), vec![1]);
        assert_eq!(g.abelianize(&Word::identity()), vec![0, 0]);
    }

    #[test]
    fn commutators_and_conjugates() {
        let z2 = k2(Order::Infinite);
        let (a, b) = (z2.word("a").unwrap(), z2.word("b").unwrap());
        assert!(z2.commutator(&a, &b).is_identity());
        assert!(z2.commutator(&a, &a).is_identity());
        let f = free2();
        let (a, b) = (f.word("a").unwrap(), f.word("b").unwrap());
        let c = f.conjugate_by(&a, &b);
        assert_eq!(f.format_nf(&c), "b a b^-1");
        assert_eq!(c.len(), 3);
    }

    #[test]
    fn word_parse_errors() {
        let f = free2();
        assert!(f.word("a^0").unwrap_err().is_parse_error());
        assert!(f.word("q").unwrap_err().is_parse_error());
        assert!(f.word("a^x").unwrap_err().is_parse_error());
        assert_eq!(f.word("  ").unwrap(), Word::identity());
        assert_eq!(
            f.word("b^-2 a").unwrap().syllables,
            vec![Syllable::new(1, -2), Syllable::new(0, 1)]
        );
    }
}
