//! Characters of graph products, their living subcomplexes, and finiteness
//! properties of their kernels.
//!
//! For a character `chi: G -> Z^r` the characters vanishing on `ker chi` are
//! the `u . chi` with `u != 0`. Each such direction kills a set of vertices,
//! and the finiteness type of `ker chi` is read off the flag complex through
//! these dead sets: every dead set must leave an acyclic living subcomplex
//! whose links across dead simplices are acyclic in the right degrees.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::graph::{SimplicialGraph, VertexSet};
use crate::homology::{is_k_acyclic, is_simply_connected, SimplicialComplex, Verdict};
use crate::lattice::{rank, IntMatrix};

/// A homomorphism from the graph product to `Z^r`, given by its values on
/// the vertex generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    graph: SimplicialGraph,
    values: Vec<Vec<i64>>,
    rank: usize,
}

impl Character {
    /// `values[v]` is the image of vertex `v`, a vector of length `rank`.
    /// Finite-order vertices must map to zero.
    pub fn new(graph: &SimplicialGraph, values: Vec<Vec<i64>>, rank: usize) -> Result<Self> {
        if values.len() != graph.vertex_count() {
            return Err(Error::InvalidCharacter(format!(
                "expected {} values, got {}",
                graph.vertex_count(),
                values.len()
            )));
        }
        for (v, val) in values.iter().enumerate() {
            if val.len() != rank {
                return Err(Error::InvalidCharacter(format!(
                    "value of `{}` has length {}, expected {rank}",
                    graph.name(v),
                    val.len()
                )));
            }
            if graph.order(v).is_finite() && val.iter().any(|&x| x != 0) {
                return Err(Error::InvalidCharacter(format!(
                    "finite-order vertex `{}` must map to zero",
                    graph.name(v)
                )));
            }
        }
        Ok(Character {
            graph: graph.clone(),
            values,
            rank,
        })
    }

    /// Rank-one character from one integer per vertex.
    pub fn rank_one(graph: &SimplicialGraph, values: &[i64]) -> Result<Self> {
        Character::new(graph, values.iter().map(|&x| vec![x]).collect(), 1)
    }

    /// Parses `a=1,b=0,...`; vertices not mentioned map to zero.
    pub fn parse_inline(graph: &SimplicialGraph, spec: &str) -> Result<Self> {
        let mut values = vec![0i64; graph.vertex_count()];
        let mut seen = VertexSet::EMPTY;
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, val) = item
                .split_once('=')
                .ok_or_else(|| Error::parse("--chi", 1, item, "expected `<vertex>=<integer>`"))?;
            let v = graph
                .index_of(name.trim())
                .map_err(|_| Error::parse("--chi", 1, item, "unknown vertex"))?;
            if seen.contains(v) {
                return Err(Error::parse("--chi", 1, item, "vertex assigned twice"));
            }
            seen = seen.with(v);
            values[v] = val
                .trim()
                .parse()
                .map_err(|_| Error::parse("--chi", 1, item, "value must be an integer"))?;
        }
        Character::rank_one(graph, &values)
    }

    /// Parses lines `<vertex> <r integers>` (`#` starts a comment);
    /// vertices not listed map to zero.
    pub fn parse_file(graph: &SimplicialGraph, text: &str, source: &str) -> Result<Self> {
        let mut rows: Vec<Option<Vec<i64>>> = vec![None; graph.vertex_count()];
        let mut rank: Option<usize> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let v = graph
                .index_of(toks[0])
                .map_err(|_| Error::parse(source, i + 1, toks[0], "unknown vertex"))?;
            if rows[v].is_some() {
                return Err(Error::parse(
                    source,
                    i + 1,
                    toks[0],
                    "vertex assigned twice",
                ));
            }
            let vals = toks[1..]
                .iter()
                .map(|t| {
                    t.parse::<i64>()
                        .map_err(|_| Error::parse(source, i + 1, t, "value must be an integer"))
                })
                .collect::<Result<Vec<_>>>()?;
            match rank {
                None => rank = Some(vals.len()),
                Some(r) if r != vals.len() => {
                    return Err(Error::parse(
                        source,
                        i + 1,
                        toks[0],
                        format!("expected {r} integers"),
                    ))
                }
                _ => {}
            }
            rows[v] = Some(vals);
        }
        let rank = rank.unwrap_or(0);
        let values = rows
            .into_iter()
            .map(|r| r.unwrap_or_else(|| vec![0; rank]))
            .collect();
        Character::new(graph, values, rank)
    }

    pub fn graph(&self) -> &SimplicialGraph {
        &self.graph
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn value(&self, v: usize) -> &[i64] {
        &self.values[v]
    }

    pub fn values(&self) -> &[Vec<i64>] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(|&x| x == 0)
    }

    /// Vertices sent to zero.
    pub fn zero_set(&self) -> VertexSet {
        VertexSet::from_indices(
            (0..self.values.len()).filter(|&v| self.values[v].iter().all(|&x| x == 0)),
        )
    }

    pub fn scaled(&self, k: i64) -> Character {
        Character {
            graph: self.graph.clone(),
            values: self
                .values
                .iter()
                .map(|v| v.iter().map(|x| x * k).collect())
                .collect(),
            rank: self.rank,
        }
    }

    /// Rank over Q of the values on `s`.
    fn span_rank(&self, s: VertexSet) -> usize {
        let rows: Vec<Vec<BigInt>> = s
            .iter()
            .map(|v| self.values[v].iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        rank(&IntMatrix::from_rows(&rows, self.rank))
    }

    /// `a=1,b=0` for rank one, `a=(1,0),b=(0,1)` otherwise.
    pub fn format(&self) -> String {
        (0..self.values.len())
            .map(|v| {
                let val = &self.values[v];
                let shown = if self.rank == 1 {
                    val[0].to_string()
                } else {
                    format!(
                        "({})",
                        val.iter()
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>()
                            .join(",")
                    )
                };
                format!("{}={}", self.graph.name(v), shown)
            })
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Every set of vertices killed by some nonzero direction `u . chi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeadSetFamily {
    pub sets: Vec<VertexSet>,
}

/// Full subcomplex of the flag complex on the vertices outside `dead`.
pub fn living_subcomplex(g: &SimplicialGraph, dead: VertexSet) -> SimplicialComplex {
    g.flag_complex_on(g.vertices().difference(dead))
}

/// The domination test for dead set `dead` in degree `n`:
/// the living subcomplex is `(n-1)`-acyclic, and for every nonempty simplex
/// `sigma` spanned by dead vertices the living part of its link is
/// `(n - 2 - dim sigma)`-acyclic. For `n = 1` this says the living subgraph
/// is nonempty and connected and every dead vertex has a living neighbor.
pub fn is_acyclic_dominating(g: &SimplicialGraph, dead: VertexSet, n: usize) -> bool {
    let living = g.vertices().difference(dead);
    if !is_k_acyclic(&g.flag_complex_on(living), n as i64 - 1) {
        return false;
    }
    g.cliques_within(dead).into_iter().all(|sigma| {
        let degree = n as i64 - 2 - (sigma.len() as i64 - 1);
        if degree < -1 {
            return true;
        }
        let link = g.common_neighbors(sigma).intersection(living);
        is_k_acyclic(&g.flag_complex_on(link), degree)
    })
}

fn require_nonzero(chi: &Character) -> Result<()> {
    if chi.rank == 0 || chi.is_zero() {
        Err(Error::ZeroCharacter)
    } else {
        Ok(())
    }
}

/// Whether the class of a rank-one character lies in the first BNS invariant.
pub fn sigma1_contains(chi: &Character) -> Result<bool> {
    if chi.rank != 1 {
        return Err(Error::InvalidCharacter(format!(
            "expected a rank-one character, got rank {}",
            chi.rank
        )));
    }
    require_nonzero(chi)?;
    Ok(is_acyclic_dominating(&chi.graph, chi.zero_set(), 1))
}

/// Enumerates the dead sets `{v : chi(v) in W}` for the subspaces `W`
/// spanned by character values and strictly smaller than the span of all
/// values. These are exactly the zero sets of the directions `u . chi != 0`.
/// Ordered by size, then lexicographically.
pub fn realizable_dead_sets(chi: &Character) -> DeadSetFamily {
    let all = chi.graph.vertices();
    let total = chi.span_rank(all);
    let base = chi.zero_set();
    if total == 0 {
        return DeadSetFamily { sets: vec![base] };
    }
    let closure = |s: VertexSet, r: usize| -> VertexSet {
        all.difference(s)
            .iter()
            .filter(|&v| chi.span_rank(s.with(v)) == r)
            .fold(s, |acc, v| acc.with(v))
    };
    let mut seen: HashSet<VertexSet> = HashSet::from([base]);
    let mut queue = VecDeque::from([(base, 0usize)]);
    while let Some((flat, r)) = queue.pop_front() {
        if r + 1 >= total {
            continue;
        }
        let mut tried = flat;
        for v in all.difference(flat).iter() {
            if tried.contains(v) {
                continue;
            }
            let next = closure(flat.with(v), r + 1);
            tried = tried.union(next);
            if seen.insert(next) {
                queue.push_back((next, r + 1));
            }
        }
    }
    let mut sets: Vec<VertexSet> = seen.into_iter().collect();
    sets.sort_by_key(|s| (s.len(), s.to_vec()));
    DeadSetFamily { sets }
}

/// Outcome of the finiteness test for one dead set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeadSetCheck {
    pub dead: VertexSet,
    pub acyclic_dominating: bool,
    /// Simple connectivity of the living subcomplex, checked when `n >= 2`.
    pub simply_connected: Option<Verdict>,
}

/// Finiteness type of `ker chi` in degree `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelFiniteness {
    pub n: usize,
    /// Type FP_n.
    pub fp: bool,
    /// Type F_n; never `Yes` unless `fp`.
    pub f: Verdict,
    pub checks: Vec<DeadSetCheck>,
}

impl KernelFiniteness {
    /// First dead set failing the homological test.
    pub fn first_failure(&self) -> Option<&DeadSetCheck> {
        self.checks.iter().find(|c| !c.acyclic_dominating)
    }
}

pub fn kernel_finiteness(chi: &Character, n: usize) -> Result<KernelFiniteness> {
    kernel_finiteness_with(chi, n, Execution::default())
}

/// Checks every realizable dead set (in parallel when `exec` allows);
/// aggregation follows the family order, so the result does not depend on
/// scheduling.
pub fn kernel_finiteness_with(
    chi: &Character,
    n: usize,
    exec: Execution,
) -> Result<KernelFiniteness> {
    require_nonzero(chi)?;
    if n == 0 {
        return Err(Error::InvalidCharacter(
            "degree n must be at least 1".into(),
        ));
    }
    let family = realizable_dead_sets(chi);
    let g = &chi.graph;
    let checks = exec::map(exec, &family.sets, |&dead| {
        let acyclic_dominating = is_acyclic_dominating(g, dead, n);
        let simply_connected = (n >= 2 && acyclic_dominating)
            .then(|| is_simply_connected(&living_subcomplex(g, dead)));
        DeadSetCheck {
            dead,
            acyclic_dominating,
            simply_connected,
        }
    });
    let fp = checks.iter().all(|c| c.acyclic_dominating);
    let f = if !fp {
        Verdict::No
    } else if n == 1 {
        Verdict::Yes
    } else {
        checks
            .iter()
            .filter_map(|c| c.simply_connected)
            .fold(Verdict::Yes, Verdict::and)
    };
    Ok(KernelFiniteness { n, fp, f, checks })
}

/// Serializable summary of a kernel finiteness run.
#[derive(Clone, Debug, Serialize)]
pub struct KernelFinitenessReport {
    pub n: usize,
    pub fp: bool,
    pub f: Verdict,
    pub dead_sets_checked: usize,
    pub first_failing_dead_set: Option<Vec<String>>,
}

impl KernelFiniteness {
    pub fn report(&self, g: &SimplicialGraph) -> KernelFinitenessReport {
        KernelFinitenessReport {
            n: self.n,
            fp: self.fp,
            f: self.f,
            dead_sets_checked: self.checks.len(),
            first_failing_dead_set: self
                .first_failure()
                .map(|c| c.dead.iter().map(|v| g.name(v).to_string()).collect()),
        }
    }
}
