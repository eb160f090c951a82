use std::collections::HashMap;

use crate::graph::VertexSet;

/// A finite abstract simplicial complex on vertices `0..64`.
///
/// Simplices are stored by dimension; each is oriented by increasing vertex
/// index. Within a dimension simplices are sorted lexicographically by their
/// vertex lists, which fixes the bases of the chain groups.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimplicialComplex {
    by_dim: Vec<Vec<VertexSet>>,
    index: Vec<HashMap<VertexSet, usize>>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        SimplicialComplex::default()
    }

    /// Builds the complex from a family already closed under taking faces.
    pub(crate) fn from_closed_family(simplices: Vec<VertexSet>) -> Self {
        let mut by_dim: Vec<Vec<VertexSet>> = Vec::new();
        for s in simplices {
            if s.is_empty() {
                continue;
            }
            let d = s.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize(d + 1, Vec::new());
            }
            by_dim[d].push(s);
        }
        for layer in &mut by_dim {
            layer.sort_by_key(|s| s.to_vec());
            layer.dedup();
        }
        let index = by_dim
            .iter()
            .map(|layer| layer.iter().enumerate().map(|(i, s)| (*s, i)).collect())
            .collect();
        SimplicialComplex { by_dim, index }
    }

    /// Closes `generators` under taking faces.
    pub fn from_simplices<I: IntoIterator<Item = VertexSet>>(generators: I) -> Self {
        let mut all = std::collections::HashSet::new();
        let mut stack: Vec<VertexSet> = generators.into_iter().filter(|s| !s.is_empty()).collect();
        while let Some(s) = stack.pop() {
            if all.insert(s) {
                for v in s.iter() {
                    let f = s.without(v);
                    if !f.is_empty() && !all.contains(&f) {
                        stack.push(f);
                    }
                }
            }
        }
        SimplicialComplex::from_closed_family(all.into_iter().collect())
    }

    /// Convenience constructor from vertex-index lists.
    pub fn from_lists(generators: &[&[usize]]) -> Self {
        Self::from_simplices(
            generators
                .iter()
                .map(|l| VertexSet::from_indices(l.iter().copied())),
        )
    }

    /// Boundary of the `n`-simplex on vertices `0..=n`: a sphere of dimension `n - 1`.
    pub fn simplex_boundary(n: usize) -> Self {
        let full = VertexSet::full(n + 1);
        Self::from_simplices((0..=n).map(|v| full.without(v)))
    }

    /// `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.by_dim.is_empty()
    }

    /// Simplices of dimension `k` in basis order.
    pub fn simplices(&self, k: usize) -> &[VertexSet] {
        self.by_dim.get(k).map_or(&[], |v| v.as_slice())
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices(k).len()
    }

    /// Number of simplices in each dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    pub fn index_of(&self, s: VertexSet) -> Option<usize> {
        let k = s.len().checked_sub(1)?;
        self.index.get(k)?.get(&s).copied()
    }

    pub fn contains(&self, s: VertexSet) -> bool {
        self.index_of(s).is_some()
    }

    pub fn vertices(&self) -> VertexSet {
        self.simplices(0)
            .iter()
            .fold(VertexSet::EMPTY, |a, s| a.union(*s))
    }

    /// Full subcomplex on `keep`.
    pub fn restrict(&self, keep: VertexSet) -> SimplicialComplex {
        let kept = self
            .by_dim
            .iter()
            .flatten()
            .copied()
            .filter(|s| s.is_subset(keep))
            .collect();
        SimplicialComplex::from_closed_family(kept)
    }

    /// Every face of every simplex is present.
    pub fn is_face_closed(&self) -> bool {
        self.by_dim
            .iter()
            .flatten()
            .all(|s| s.len() == 1 || s.iter().all(|v| self.contains(s.without(v))))
    }

    /// Euler characteristic of the reduced chain complex (counts the empty
    /// simplex in degree -1).
    pub fn reduced_euler_characteristic(&self) -> i64 {
        let mut chi = -1i64;
        for (k, layer) in self.by_dim.iter().enumerate() {
            let c = layer.len() as i64;
            chi += if k % 2 == 0 { c } else { -c };
        }
        chi
    }

    /// One simplex per line, vertex names separated by spaces.
    pub fn display_with(&self, names: &[String]) -> String {
        let mut out = String::new();
        for s in self.by_dim.iter().flatten() {
            let parts: Vec<&str> = s.iter().map(|v| names[v].as_str()).collect();
            out.push_str(&parts.join(" "));
            out.push('\n');
        }
        out
    }
}
