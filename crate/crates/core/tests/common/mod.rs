//! Brute-force oracles and random instance generators shared by the
//! integration suites. Nothing here calls the algorithms it checks.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use graphprod::graph::{Order, SimplicialGraph, VertexSet};
use graphprod::word::{Syllable, Word};
use graphprod::SimplicialComplex;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

// ---------------------------------------------------------------- graphs

/// Finest join decomposition of the subgraph induced on `s`, by trying
/// every bipartition and recursing on the first split found.
pub fn oracle_join_factors(adj: &[u64], s: u64) -> Vec<u64> {
    if s.count_ones() <= 1 {
        return vec![s];
    }
    let low = s & s.wrapping_neg();
    let rest = s & !low;
    // enumerate subsets of `rest`; A always contains the lowest vertex
    let mut sub = rest;
    loop {
        let a = sub | low;
        let b = s & !a;
        if b != 0 && is_complete_between(adj, a, b) {
            let mut out = oracle_join_factors(adj, a);
            out.extend(oracle_join_factors(adj, b));
            out.sort_unstable();
            return out;
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & rest;
    }
    vec![s]
}

fn is_complete_between(adj: &[u64], a: u64, b: u64) -> bool {
    let mut x = a;
    while x != 0 {
        let v = x.trailing_zeros() as usize;
        if adj[v] & b != b {
            return false;
        }
        x &= x - 1;
    }
    true
}

/// Adjacency masks of the labeled graph on `n` vertices encoded by the
/// bits of `code` over the pairs `(i, j)`, `i < j`, in lexicographic order.
pub fn graph_from_code(n: usize, code: u64) -> Vec<u64> {
    let mut adj = vec![0u64; n];
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if code >> bit & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
            bit += 1;
        }
    }
    adj
}

pub fn random_order(rng: &mut ChaCha8Rng) -> Order {
    *[Order::Finite(2), Order::Finite(3), Order::Infinite]
        .choose(rng)
        .unwrap()
}

pub fn random_graph(rng: &mut ChaCha8Rng, max_n: usize, orders: &[Order]) -> SimplicialGraph {
    let n = rng.gen_range(1..=max_n);
    let p: f64 = rng.gen_range(0.2..0.8);
    let mut adj = vec![VertexSet::EMPTY; n];
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                adj[i] = adj[i].with(j);
                adj[j] = adj[j].with(i);
            }
        }
    }
    let ords: Vec<Order> = (0..n).map(|_| *orders.choose(rng).unwrap()).collect();
    SimplicialGraph::from_adjacency(&ords, &adj).unwrap()
}

// ----------------------------------------------------------------- words

pub fn random_word(rng: &mut ChaCha8Rng, g: &SimplicialGraph, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::from_syllables(
        (0..len)
            .map(|_| {
                let v = rng.gen_range(0..g.vertex_count());
                let mut e = rng.gen_range(1..=3);
                if rng.gen_bool(0.5) {
                    e = -e;
                }
                Syllable::new(v, e)
            })
            .collect(),
    )
}

/// A word equal to `w` in the graph product, produced by random relator
/// insertions, syllable splits and commuting swaps.
pub fn scramble(rng: &mut ChaCha8Rng, g: &SimplicialGraph, w: &Word, steps: usize) -> Word {
    let mut s: Vec<(usize, i64)> = w.syllables.iter().map(|x| (x.vertex, x.exp)).collect();
    for _ in 0..steps {
        match rng.gen_range(0..4) {
            0 => {
                // insert x^k x^-k
                let v = rng.gen_range(0..g.vertex_count());
                let k = rng.gen_range(1..=2);
                let at = rng.gen_range(0..=s.len());
                s.insert(at, (v, -k));
                s.insert(at, (v, k));
            }
            1 if !s.is_empty() => {
                // split x^e into x^a x^(e-a) with a != 0, e - a != 0
                let at = rng.gen_range(0..s.len());
                let (v, e) = s[at];
                let a = if e > 0 { e + 1 } else { e - 1 };
                s[at] = (v, a);
                s.insert(at + 1, (v, e - a));
            }
            2 if s.len() >= 2 => {
                let at = rng.gen_range(0..s.len() - 1);
                if s[at].0 != s[at + 1].0 && g.adjacent(s[at].0, s[at + 1].0) {
                    s.swap(at, at + 1);
                }
            }
            3 => {
                // insert a full power of a finite-order vertex
                let v = rng.gen_range(0..g.vertex_count());
                let m = g.order(v).modulus() as i64;
                if m > 0 {
                    let at = rng.gen_range(0..=s.len());
                    s.insert(at, (v, m));
                }
            }
            _ => {}
        }
    }
    Word::from_syllables(s.into_iter().map(|(v, e)| Syllable::new(v, e)).collect())
}

type Raw = Vec<(usize, i64)>;

fn raw(w: &Word) -> Raw {
    w.syllables.iter().map(|s| (s.vertex, s.exp)).collect()
}

fn canonical_exp(g: &SimplicialGraph, v: usize, e: i64) -> i64 {
    match g.order(v) {
        Order::Infinite => e,
        Order::Finite(m) => e.rem_euclid(m as i64),
    }
}

/// One non-shuffle rewrite: drop a trivial syllable, reduce an exponent
/// into `0..m`, or merge two adjacent syllables on the same vertex.
fn rewrite_once(g: &SimplicialGraph, w: &Raw) -> Option<Raw> {
    for (i, &(v, e)) in w.iter().enumerate() {
        let c = canonical_exp(g, v, e);
        if c == 0 {
            let mut out = w.clone();
            out.remove(i);
            return Some(out);
        }
        if c != e {
            let mut out = w.clone();
            out[i].1 = c;
            return Some(out);
        }
    }
    for i in 0..w.len().saturating_sub(1) {
        if w[i].0 == w[i + 1].0 {
            let mut out = w.clone();
            out[i].1 += w[i + 1].1;
            out.remove(i + 1);
            return Some(out);
        }
    }
    None
}

/// Swaps of adjacent syllables on distinct adjacent vertices.
fn shuffles(g: &SimplicialGraph, w: &Raw) -> Vec<Raw> {
    (0..w.len().saturating_sub(1))
        .filter(|&i| w[i].0 != w[i + 1].0 && g.adjacent(w[i].0, w[i + 1].0))
        .map(|i| {
            let mut out = w.clone();
            out.swap(i, i + 1);
            out
        })
        .collect()
}

/// Rewrites to a word with no reduction anywhere in its shuffle class and
/// returns that class. Reduced words are equal in the group iff they are
/// shuffle equivalent.
pub fn reduced_shuffle_class(g: &SimplicialGraph, w: &Word) -> HashSet<Raw> {
    let mut current = raw(w);
    'outer: loop {
        let mut seen: HashSet<Raw> = HashSet::from([current.clone()]);
        let mut queue = VecDeque::from([current.clone()]);
        while let Some(x) = queue.pop_front() {
            if let Some(y) = rewrite_once(g, &x) {
                current = y;
                continue 'outer;
            }
            for y in shuffles(g, &x) {
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        return seen;
    }
}

pub fn oracle_equal(g: &SimplicialGraph, u: &Word, v: &Word) -> bool {
    let class = reduced_shuffle_class(g, u);
    let other = reduced_shuffle_class(g, v);
    other.iter().next().is_some_and(|x| class.contains(x))
}

/// Free reduction over single letters.
pub fn free_reduced_letters(w: &Word) -> Vec<(usize, i64)> {
    let mut out: Vec<(usize, i64)> = Vec::new();
    for s in &w.syllables {
        let step = s.exp.signum();
        for _ in 0..s.exp.abs() {
            match out.last() {
                Some(&(v, e)) if v == s.vertex && e == -step => {
                    out.pop();
                }
                _ => out.push((s.vertex, step)),
            }
        }
    }
    out
}

pub fn exponent_sums(n: usize, w: &Word) -> Vec<i64> {
    let mut out = vec![0; n];
    for s in &w.syllables {
        out[s.vertex] += s.exp;
    }
    out
}

// --------------------------------------------------------------- lattices

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> Vec<Vec<i64>> {
    (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect()
}

/// A random unimodular matrix as a product of elementary operations.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize, steps: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    if n < 2 {
        return m;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        match rng.gen_range(0..3) {
            0 => m.swap(i, j),
            1 => {
                for x in m[i].iter_mut() {
                    *x = -*x;
                }
            }
            _ => {
                let k = rng.gen_range(-2..=2);
                let row_j = m[j].clone();
                for (x, y) in m[i].iter_mut().zip(row_j) {
                    *x += k * y;
                }
            }
        }
    }
    m
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).map(|(x, r)| x * r[j]).sum())
                .collect()
        })
        .collect()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn det(m: &[Vec<i128>]) -> i128 {
    // Bareiss fraction-free elimination
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a = m.to_vec();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Invariant factors from determinantal divisors: `d_k` is the gcd of the
/// `k x k` minors and the `k`-th invariant factor is `d_k / d_{k-1}`.
pub fn oracle_invariant_factors(m: &[Vec<i64>]) -> Vec<i128> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut prev = 1i128;
    for k in 1..=rows.min(cols) {
        let mut g = 0i128;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<i128>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| m[r][c] as i128).collect())
                    .collect();
                g = gcd(g, det(&minor));
            }
        }
        if g == 0 {
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}

/// Rank over Q by fraction-free elimination.
pub fn rational_rank(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, p);
        for r in 0..a.len() {
            if r != rank && a[r][c] != 0 {
                let (x, y) = (a[rank][c], a[r][c]);
                #[allow(clippy::needless_range_loop)]
                for j in 0..cols {
                    a[r][j] = a[r][j] * x - a[rank][j] * y;
                }
                let g = a[r].iter().fold(0, |acc, &v| gcd(acc, v));
                if g > 1 {
                    for v in a[r].iter_mut() {
                        *v /= g;
                    }
                }
            }
        }
        rank += 1;
    }
    rank
}

// -------------------------------------------------------------- homology

/// Simplices of dimension `k` as sorted vertex lists.
fn simplices(k: &SimplicialComplex, d: usize) -> Vec<Vec<usize>> {
    k.simplices(d).iter().map(|s| s.to_vec()).collect()
}

/// Rational reduced Betti numbers `b~_0..=b~_dim` from boundary ranks,
/// with the boundary matrices rebuilt from vertex lists.
pub fn oracle_reduced_betti(k: &SimplicialComplex) -> Vec<usize> {
    let Some(dim) = k.dimension() else {
        return Vec::new();
    };
    let boundary_rank = |d: usize| -> usize {
        if d == 0 {
            return usize::from(k.count(0) > 0);
        }
        let faces = simplices(k, d - 1);
        let cells = simplices(k, d);
        if cells.is_empty() {
            return 0;
        }
        let mut m = vec![vec![0i64; cells.len()]; faces.len()];
        for (j, s) in cells.iter().enumerate() {
            for i in 0..s.len() {
                let mut f = s.clone();
                f.remove(i);
                let row = faces.iter().position(|x| *x == f).unwrap();
                m[row][j] = if i % 2 == 0 { 1 } else { -1 };
            }
        }
        rational_rank(&m)
    };
    let ranks: Vec<usize> = (0..=dim + 1).map(boundary_rank).collect();
    (0..=dim)
        .map(|d| k.count(d) - ranks[d] - ranks[d + 1])
        .collect()
}

/// Cone over the full subcomplex on `g`'s vertices: adds a vertex adjacent
/// to everything.
pub fn cone(g: &SimplicialGraph) -> SimplicialGraph {
    let n = g.vertex_count();
    let mut adj: Vec<VertexSet> = (0..n).map(|v| g.neighbors(v).with(n)).collect();
    adj.push(VertexSet::full(n));
    let mut orders = g.orders().to_vec();
    orders.push(Order::Infinite);
    SimplicialGraph::from_adjacency(&orders, &adj).unwrap()
}
