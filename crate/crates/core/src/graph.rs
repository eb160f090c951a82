//! Defining graphs of graph products with cyclic vertex groups.
//!
//! Vertices are identified by their index in declaration order, which is the
//! canonical total order used everywhere else (normal-form tie breaking,
//! simplex orientation). Vertex subsets are bitsets, so a graph holds at most
//! [`MAX_VERTICES`] vertices.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology::SimplicialComplex;

pub const MAX_VERTICES: usize = 64;

/// Order of a vertex group: infinite cyclic or cyclic of order `m >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Order {
    Infinite,
    Finite(u64),
}

impl Order {
    /// Modulus used in abelianizations: `0` for infinite order.
    pub fn modulus(self) -> u64 {
        match self {
            Order::Infinite => 0,
            Order::Finite(m) => m,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Order::Finite(_))
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Infinite => f.write_str("inf"),
            Order::Finite(m) => write!(f, "{m}"),
        }
    }
}

/// A set of vertex indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    /// `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(VertexSet::EMPTY, |s, v| s.with(v))
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1 << v)
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1 << v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest element.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Elements in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(v)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// Finite simplicial graph with a cyclic group attached to each vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialGraph {
    names: Vec<String>,
    orders: Vec<Order>,
    adjacency: Vec<VertexSet>,
}

/// Direct-product decomposition of a graph product read off the graph.
///
/// `factors` are the vertex sets of the connected components of the
/// complement graph; `central` collects the singleton factors, i.e. the
/// vertices adjacent to every other vertex. Central singletons are listed
/// first, the remaining factors follow ordered by their smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinDecomposition {
    pub factors: Vec<VertexSet>,
    pub central: VertexSet,
}

impl JoinDecomposition {
    /// Union of the non-central factors.
    pub fn non_central(&self) -> VertexSet {
        self.factors
            .iter()
            .fold(VertexSet::EMPTY, |acc, f| acc.union(*f))
            .difference(self.central)
    }

    /// `factors: {a,c} {b,d}; central: (none)`.
    pub fn format(&self, g: &SimplicialGraph) -> String {
        let factors: Vec<String> = self.factors.iter().map(|f| g.format_set(*f)).collect();
        let central = if self.central.is_empty() {
            "(none)".to_string()
        } else {
            g.format_set(self.central)
        };
        format!("factors: {}; central: {central}", factors.join(" "))
    }
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_alphanumeric() || c == '_' || c == '.' || c == '\'')
        && !name.starts_with(|c: char| c.is_ascii_digit() || c == '-')
}

impl SimplicialGraph {
    /// Builds a graph from named vertices and index pairs.
    pub fn new(vertices: Vec<(String, Order)>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = vertices.len();
        if n > MAX_VERTICES {
            return Err(Error::InvalidGraph(format!(
                "{n} vertices exceeds the supported maximum of {MAX_VERTICES}"
            )));
        }
        let mut seen = HashSet::new();
        for (name, order) in &vertices {
            if !valid_name(name) {
                return Err(Error::InvalidGraph(format!("invalid vertex name `{name}`")));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidGraph(format!("duplicate vertex `{name}`")));
            }
            if let Order::Finite(m) = order {
                if *m < 2 {
                    return Err(Error::InvalidGraph(format!(
                        "vertex `{name}` has order {m} < 2"
                    )));
                }
            }
        }
        let mut adjacency = vec![VertexSet::EMPTY; n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge ({u},{v}) out of range")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!(
                    "self-loop at `{}`",
                    vertices[u].0
                )));
            }
            if adjacency[u].contains(v) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge `{}`-`{}`",
                    vertices[u].0, vertices[v].0
                )));
            }
            adjacency[u] = adjacency[u].with(v);
            adjacency[v] = adjacency[v].with(u);
        }
        let (names, orders) = vertices.into_iter().unzip();
        Ok(SimplicialGraph {
            names,
            orders,
            adjacency,
        })
    }

    /// Builds a graph from vertex names and name pairs.
    pub fn from_names(vertices: &[(&str, Order)], edges: &[(&str, &str)]) -> Result<Self> {
        let verts: Vec<(String, Order)> =
            vertices.iter().map(|(n, o)| (n.to_string(), *o)).collect();
        let idx = |name: &str| {
            verts
                .iter()
                .position(|(n, _)| n == name)
                .ok_or_else(|| Error::UnknownVertex(name.to_string()))
        };
        let pairs = edges
            .iter()
            .map(|(a, b)| Ok((idx(a)?, idx(b)?)))
            .collect::<Result<Vec<_>>>()?;
        SimplicialGraph::new(verts, &pairs)
    }

    /// Builds a graph from adjacency bitmasks, naming vertices `a`, `b`, ...
    /// (or `v0`, `v1`, ... beyond 26 vertices). Masks must be symmetric.
    pub fn from_adjacency(orders: &[Order], adjacency: &[VertexSet]) -> Result<Self> {
        let n = orders.len();
        if adjacency.len() != n {
            return Err(Error::InvalidGraph("adjacency length mismatch".into()));
        }
        let mut edges = Vec::new();
        for u in 0..n {
            for v in adjacency[u].iter() {
                if v >= n || !adjacency[v].contains(u) {
                    return Err(Error::InvalidGraph("adjacency is not symmetric".into()));
                }
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        let verts = (0..n).map(|i| (default_name(i, n), orders[i])).collect();
        SimplicialGraph::new(verts, &edges)
    }

    /// Edgeless graph on `n` vertices (a free product of cyclic groups).
    pub fn edgeless(n: usize, order: Order) -> Self {
        Self::from_adjacency(&vec![order; n], &vec![VertexSet::EMPTY; n]).expect("valid")
    }

    /// Complete graph on `n` vertices (a direct product of cyclic groups).
    pub fn complete(n: usize, order: Order) -> Self {
        let full = VertexSet::full(n);
        let adj: Vec<_> = (0..n).map(|v| full.without(v)).collect();
        Self::from_adjacency(&vec![order; n], &adj).expect("valid")
    }

    /// Path `v0 - v1 - ... - v(n-1)`.
    pub fn path(n: usize, order: Order) -> Self {
        let adj: Vec<_> = (0..n)
            .map(|v| {
                let mut s = VertexSet::EMPTY;
                if v > 0 {
                    s = s.with(v - 1);
                }
                if v + 1 < n {
                    s = s.with(v + 1);
                }
                s
            })
            .collect();
        Self::from_adjacency(&vec![order; n], &adj).expect("valid")
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize, order: Order) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let adj: Vec<_> = (0..n)
            .map(|v| VertexSet::EMPTY.with((v + 1) % n).with((v + n - 1) % n))
            .collect();
        Self::from_adjacency(&vec![order; n], &adj).expect("valid")
    }

    /// Join of `parts` disjoint edgeless pairs: the defining graph of a
    /// direct product of `parts` free groups of rank 2. Vertex `2i` and
    /// `2i+1` form the i-th pair.
    pub fn join_of_edgeless_pairs(parts: usize, order: Order) -> Self {
        let n = 2 * parts;
        let full = VertexSet::full(n);
        let adj: Vec<_> = (0..n).map(|v| full.without(v).without(v ^ 1)).collect();
        Self::from_adjacency(&vec![order; n], &adj).expect("valid")
    }

    /// Parses the line-based graph format:
    ///
    /// ```text
    /// # comment
    /// vertex a order inf
    /// vertex b order 2
    /// edge a b
    /// ```
    pub fn parse(text: &str, source: &str) -> Result<Self> {
        let mut vertices: Vec<(String, Order)> = Vec::new();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut edge_set: HashSet<(usize, usize)> = HashSet::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[0] {
                "vertex" => {
                    if toks.len() != 4 || toks[2] != "order" {
                        let tok = toks.get(2).copied().unwrap_or(toks[0]);
                        return Err(Error::parse(
                            source,
                            line_no,
                            tok,
                            "expected `vertex <name> order <m|inf>`",
                        ));
                    }
                    let name = toks[1];
                    if !valid_name(name) {
                        return Err(Error::parse(source, line_no, name, "invalid vertex name"));
                    }
                    if vertices.iter().any(|(n, _)| n == name) {
                        return Err(Error::parse(source, line_no, name, "duplicate vertex"));
                    }
                    let order = match toks[3] {
                        "inf" => Order::Infinite,
                        s => match s.parse::<u64>() {
                            Ok(m) if m >= 2 => Order::Finite(m),
                            _ => {
                                return Err(Error::parse(
                                    source,
                                    line_no,
                                    s,
                                    "order must be `inf` or an integer >= 2",
                                ))
                            }
                        },
                    };
                    if vertices.len() == MAX_VERTICES {
                        return Err(Error::parse(source, line_no, name, "too many vertices"));
                    }
                    vertices.push((name.to_string(), order));
                }
                "edge" => {
                    if toks.len() != 3 {
                        return Err(Error::parse(
                            source,
                            line_no,
                            toks[0],
                            "expected `edge <name> <name>`",
                        ));
                    }
                    let mut ends = [0usize; 2];
                    for (slot, name) in ends.iter_mut().zip(&toks[1..3]) {
                        *slot = vertices
                            .iter()
                            .position(|(n, _)| n == name)
                            .ok_or_else(|| {
                                Error::parse(
                                    source,
                                    line_no,
                                    name,
                                    "edge references undeclared vertex",
                                )
                            })?;
                    }
                    let [u, v] = ends;
                    if u == v {
                        return Err(Error::parse(source, line_no, toks[1], "self-loop"));
                    }
                    if !edge_set.insert((u.min(v), u.max(v))) {
                        return Err(Error::parse(source, line_no, toks[2], "duplicate edge"));
                    }
                    edges.push((u, v));
                }
                other => {
                    return Err(Error::parse(
                        source,
                        line_no,
                        other,
                        "expected `vertex` or `edge`",
                    ))
                }
            }
        }
        SimplicialGraph::new(vertices, &edges)
    }

    /// Renders the graph in the format accepted by [`SimplicialGraph::parse`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (name, order) in self.names.iter().zip(&self.orders) {
            out.push_str(&format!("vertex {name} order {order}\n"));
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("edge {} {}\n", self.names[u], self.names[v]));
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self, v: usize) -> Order {
        self.orders[v]
    }

    pub fn orders(&self) -> &[Order] {
        &self.orders
    }

    /// Per-vertex abelianization moduli (`0` = infinite order).
    pub fn moduli(&self) -> Vec<u64> {
        self.orders.iter().map(|o| o.modulus()).collect()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adjacency[v]
    }

    /// Edges as index pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.vertex_count() {
            for v in self.adjacency[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    /// Same vertices and orders; an edge exactly where `self` has none.
    pub fn complement(&self) -> SimplicialGraph {
        let all = self.vertices();
        let adjacency = (0..self.vertex_count())
            .map(|v| all.difference(self.adjacency[v]).without(v))
            .collect();
        SimplicialGraph {
            names: self.names.clone(),
            orders: self.orders.clone(),
            adjacency,
        }
    }

    /// Connected components of the subgraph induced on `within`, each as a
    /// vertex set, ordered by smallest vertex.
    pub fn components(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut remaining = within;
        let mut out = Vec::new();
        while let Some(start) = remaining.first() {
            let mut comp = VertexSet::singleton(start);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = VertexSet::EMPTY;
                for v in frontier.iter() {
                    next = next.union(self.adjacency[v]);
                }
                frontier = next.intersection(within).difference(comp);
                comp = comp.union(frontier);
            }
            remaining = remaining.difference(comp);
            out.push(comp);
        }
        out
    }

    pub fn is_connected_on(&self, within: VertexSet) -> bool {
        self.components(within).len() == 1
    }

    /// Splits the graph into its finest join decomposition.
    pub fn join_factors(&self) -> Result<JoinDecomposition> {
        if self.vertex_count() == 0 {
            return Err(Error::EmptyGraph);
        }
        let comps = self.complement().components(self.vertices());
        let (central, rest): (Vec<_>, Vec<_>) = comps.into_iter().partition(|c| c.len() == 1);
        let central_set = central.iter().fold(VertexSet::EMPTY, |a, c| a.union(*c));
        let mut factors = central;
        factors.extend(rest);
        Ok(JoinDecomposition {
            factors,
            central: central_set,
        })
    }

    /// Vertices adjacent to every other vertex.
    pub fn central_vertices(&self) -> VertexSet {
        let all = self.vertices();
        VertexSet::from_indices(
            (0..self.vertex_count()).filter(|&v| self.adjacency[v].with(v) == all),
        )
    }

    pub fn link(&self, v: usize) -> VertexSet {
        self.adjacency[v]
    }

    pub fn star(&self, v: usize) -> VertexSet {
        self.adjacency[v].with(v)
    }

    /// Link of a vertex given by name.
    pub fn link_of(&self, name: &str) -> Result<VertexSet> {
        Ok(self.link(self.index_of(name)?))
    }

    /// Star of a vertex given by name.
    pub fn star_of(&self, name: &str) -> Result<VertexSet> {
        Ok(self.star(self.index_of(name)?))
    }

    /// Vertices adjacent to every vertex of `sigma` (and not in it).
    pub fn common_neighbors(&self, sigma: VertexSet) -> VertexSet {
        sigma
            .iter()
            .fold(self.vertices(), |acc, v| {
                acc.intersection(self.adjacency[v])
            })
            .difference(sigma)
    }

    pub fn is_clique(&self, s: VertexSet) -> bool {
        s.iter().all(|v| s.without(v).is_subset(self.adjacency[v]))
    }

    /// All nonempty cliques inside `within`, found by extending each clique
    /// only with vertices larger than its maximum.
    pub fn cliques_within(&self, within: VertexSet) -> Vec<VertexSet> {
        fn extend(
            g: &SimplicialGraph,
            clique: VertexSet,
            candidates: VertexSet,
            out: &mut Vec<VertexSet>,
        ) {
            for v in candidates.iter() {
                let next = clique.with(v);
                out.push(next);
                // only vertices after v keep the enumeration duplicate-free
                let later =
                    VertexSet(candidates.0 & u64::MAX.checked_shl(v as u32 + 1).unwrap_or(0));
                extend(g, next, later.intersection(g.adjacency[v]), out);
            }
        }
        let mut out = Vec::new();
        extend(self, VertexSet::EMPTY, within, &mut out);
        out
    }

    pub fn cliques(&self) -> Vec<VertexSet> {
        self.cliques_within(self.vertices())
    }

    /// The flag complex: one simplex per nonempty clique.
    pub fn flag_complex(&self) -> SimplicialComplex {
        SimplicialComplex::from_closed_family(self.cliques())
    }

    /// The full subcomplex of the flag complex on `within`.
    pub fn flag_complex_on(&self, within: VertexSet) -> SimplicialComplex {
        SimplicialComplex::from_closed_family(self.cliques_within(within))
    }

    /// Renders a vertex set as `{a,c}`.
    pub fn format_set(&self, s: VertexSet) -> String {
        let names: Vec<&str> = s.iter().map(|v| self.names[v].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }
}

fn default_name(i: usize, n: usize) -> String {
    if n <= 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("v{i}")
    }
}
