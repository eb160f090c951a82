//! Reduced integral homology of finite simplicial complexes, connectivity,
//! and a three-valued simple-connectivity test.

mod complex;
mod pi1;

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

pub use complex::SimplicialComplex;
pub use pi1::{fundamental_group, Presentation, TIETZE_BUDGET};

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::lattice::{smith_divisors, IntMatrix};

/// YES / NO / UNKNOWN answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }

    /// Three-valued conjunction.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::No, _) | (_, Verdict::No) => Verdict::No,
            (Verdict::Yes, Verdict::Yes) => Verdict::Yes,
            _ => Verdict::Unknown,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
        })
    }
}

/// A finitely generated abelian group `Z^betti + sum Z/t`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    pub fn free(betti: usize) -> Self {
        HomologyGroup {
            betti,
            torsion: Vec::new(),
        }
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Reduced homology in degrees `0..=k_max` of a nonempty complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyProfile {
    pub groups: Vec<HomologyGroup>,
    pub nonempty: bool,
}

impl HomologyProfile {
    pub fn degree(&self, k: usize) -> &HomologyGroup {
        &self.groups[k]
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.betti).collect()
    }
}

/// Boundary map from `k`-chains to `(k-1)`-chains, with
/// `d[v0..vk] = sum (-1)^i [.. drop vi ..]`. For `k = 0` this is the
/// augmentation onto `Z` (a single row of ones).
pub fn boundary_matrix(k: &SimplicialComplex, degree: usize) -> IntMatrix {
    let cols = k.simplices(degree);
    if degree == 0 {
        let mut m = IntMatrix::zeros(1, cols.len());
        for j in 0..cols.len() {
            m[(0, j)] = BigInt::one();
        }
        return m;
    }
    let rows = k.count(degree - 1);
    let mut m = IntMatrix::zeros(rows, cols.len());
    for (j, s) in cols.iter().enumerate() {
        for (i, v) in s.iter().enumerate() {
            let face = k.index_of(s.without(v)).expect("complex is face-closed");
            m[(face, j)] = if i % 2 == 0 {
                BigInt::one()
            } else {
                -BigInt::one()
            };
        }
    }
    m
}

/// Reduced integral homology `H~_0 .. H~_{k_max}`.
pub fn reduced_homology(k: &SimplicialComplex, k_max: usize) -> Result<HomologyProfile> {
    reduced_homology_with(k, k_max, Execution::default())
}

pub fn reduced_homology_with(
    k: &SimplicialComplex,
    k_max: usize,
    exec: Execution,
) -> Result<HomologyProfile> {
    if k.is_empty() {
        return Err(Error::EmptyComplex);
    }
    // divisors of d_j for j = 0..=k_max+1; degrees past the dimension are zero maps
    let divisors: Vec<Vec<BigInt>> = exec::map_range(exec, k_max + 2, |j| {
        if k.count(j) == 0 {
            Vec::new()
        } else {
            smith_divisors(&boundary_matrix(k, j))
        }
    });
    let groups = (0..=k_max)
        .map(|d| {
            let chains = k.count(d);
            let betti = chains - divisors[d].len() - divisors[d + 1].len();
            let torsion = divisors[d + 1]
                .iter()
                .filter(|x| !x.is_one())
                .cloned()
                .collect();
            HomologyGroup { betti, torsion }
        })
        .collect();
    Ok(HomologyProfile {
        groups,
        nonempty: true,
    })
}

/// `H~_i(K) = 0` for `0 <= i <= k` and `K` nonempty. By convention every
/// complex, empty or not, is `k`-acyclic for `k <= -2`, and `(-1)`-acyclic
/// means nonempty.
pub fn is_k_acyclic(k: &SimplicialComplex, degree: i64) -> bool {
    if degree <= -2 {
        return true;
    }
    if k.is_empty() {
        return false;
    }
    if degree == -1 {
        return true;
    }
    let top = degree as usize;
    // reduced homology vanishes above the dimension
    let top = top.min(k.dimension().unwrap_or(0));
    reduced_homology(k, top)
        .map(|p| p.groups.iter().all(HomologyGroup::is_trivial))
        .unwrap_or(false)
}

/// Nonempty with connected 1-skeleton.
pub fn is_connected(k: &SimplicialComplex) -> bool {
    let verts = k.vertices();
    let Some(start) = verts.first() else {
        return false;
    };
    let mut reached = crate::graph::VertexSet::singleton(start);
    loop {
        let mut grown = reached;
        for e in k.simplices(1) {
            if !e.intersection(reached).is_empty() {
                grown = grown.union(*e);
            }
        }
        if grown == reached {
            return reached == verts;
        }
        reached = grown;
    }
}

/// Whether `K` is simply connected.
///
/// `No` when `K` is empty, disconnected or has `H~_1 != 0`; `Yes` when the
/// edge-path presentation of the fundamental group simplifies to the trivial
/// presentation within the Tietze budget; `Unknown` otherwise.
pub fn is_simply_connected(k: &SimplicialComplex) -> Verdict {
    is_simply_connected_with_budget(k, TIETZE_BUDGET)
}

pub fn is_simply_connected_with_budget(k: &SimplicialComplex, budget: usize) -> Verdict {
    if !is_connected(k) {
        return Verdict::No;
    }
    let h1 = reduced_homology(k, 1).expect("connected complex is nonempty");
    if !h1.degree(1).is_trivial() {
        return Verdict::No;
    }
    if fundamental_group(k).simplify(budget).is_trivial() {
        Verdict::Yes
    } else {
        Verdict::Unknown
    }
}

/// Checks `d_k d_{k+1} = 0` in every degree.
pub fn boundaries_compose_to_zero(k: &SimplicialComplex) -> bool {
    let Some(dim) = k.dimension() else {
        return true;
    };
    (0..dim).all(|d| {
        boundary_matrix(k, d)
            .mul(&boundary_matrix(k, d + 1))
            .is_zero()
    })
}

/// Total count of simplices, handy for sizing oracles.
pub fn simplex_count(k: &SimplicialComplex) -> usize {
    k.f_vector().iter().sum()
}

impl HomologyProfile {
    /// Alternating sum of Betti numbers, comparable with
    /// [`SimplicialComplex::reduced_euler_characteristic`] when the profile
    /// covers every dimension.
    pub fn euler_characteristic(&self) -> i64 {
        self.groups
            .iter()
            .enumerate()
            .map(|(d, g)| {
                if d % 2 == 0 {
                    g.betti as i64
                } else {
                    -(g.betti as i64)
                }
            })
            .sum()
    }

    pub fn all_trivial(&self) -> bool {
        self.groups.iter().all(|g| g.is_trivial())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Order, SimplicialGraph};

    fn c4() -> SimplicialComplex {
        SimplicialGraph::cycle(4, Order::Infinite).flag_complex()
    }

    fn octahedron() -> SimplicialComplex {
        SimplicialGraph::join_of_edgeless_pairs(3, Order::Infinite).flag_complex()
    }

    fn point() -> SimplicialComplex {
        SimplicialComplex::from_lists(&[&[0]])
    }

    #[test]
    fn homology_examples() {
        let h = reduced_homology(&c4(), 1).unwrap();
        assert!(h.degree(0).is_trivial());
        assert_eq!(h.degree(1), &HomologyGroup::free(1));

        let h = reduced_homology(&octahedron(), 2).unwrap();
        assert!(h.degree(0).is_trivial() && h.degree(1).is_trivial());
        assert_eq!(h.degree(2), &HomologyGroup::free(1));

        assert!(reduced_homology(&point(), 3).unwrap().all_trivial());
        assert_eq!(
            reduced_homology(&SimplicialComplex::empty(), 0),
            Err(Error::EmptyComplex)
        );
    }

    #[test]
    fn torsion_from_projective_plane() {
        // 6-vertex triangulation of RP^2
        let rp2 = SimplicialComplex::from_lists(&[
            &[0, 1, 2],
            &[0, 2, 3],
            &[0, 3, 4],
            &[0, 4, 5],
            &[0, 5, 1],
            &[1, 2, 4],
            &[2, 3, 5],
            &[3, 4, 1],
            &[4, 5, 2],
            &[5, 1, 3],
        ]);
        let h = reduced_homology(&rp2, 2).unwrap();
        assert!(h.degree(0).is_trivial());
        assert_eq!(h.degree(1).to_string(), "Z/2");
        assert!(h.degree(2).is_trivial());
        assert_eq!(is_simply_connected(&rp2), Verdict::No);
    }

    #[test]
    fn acyclicity_examples() {
        for k in -1..4 {
            assert!(is_k_acyclic(&point(), k));
        }
        assert!(!is_k_acyclic(&SimplicialComplex::empty(), -1));
        assert!(is_k_acyclic(&SimplicialComplex::empty(), -2));
        assert!(!is_k_acyclic(&c4(), 1));
        assert!(is_k_acyclic(&c4(), 0));
    }

    #[test]
    fn connectivity_examples() {
        assert!(!is_connected(&SimplicialComplex::from_lists(&[&[0], &[1]])));
        assert!(is_connected(&c4()));
        assert!(!is_connected(&SimplicialComplex::empty()));
    }

    #[test]
    fn simple_connectivity_examples() {
        assert_eq!(is_simply_connected(&octahedron()), Verdict::Yes);
        assert_eq!(is_simply_connected(&c4()), Verdict::No);
        assert_eq!(is_simply_connected(&point()), Verdict::Yes);
        assert_eq!(
            is_simply_connected(&SimplicialComplex::simplex_boundary(3)),
            Verdict::Yes
        );
        assert_eq!(
            is_simply_connected(&SimplicialComplex::empty()),
            Verdict::No
        );
    }

    #[test]
    fn boundary_matrices_are_exact() {
        for k in [c4(), octahedron(), SimplicialComplex::simplex_boundary(4)] {
            assert!(k.is_face_closed());
            assert!(boundaries_compose_to_zero(&k));
            let dim = k.dimension().unwrap();
            let h = reduced_homology(&k, dim).unwrap();
            assert_eq!(h.euler_characteristic(), k.reduced_euler_characteristic());
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let k = SimplicialComplex::simplex_boundary(5);
        assert_eq!(
            reduced_homology_with(&k, 4, Execution::Sequential).unwrap(),
            reduced_homology_with(&k, 4, Execution::Parallel).unwrap()
        );
    }
}
