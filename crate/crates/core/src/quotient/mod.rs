//! Quotients of graph products by finitely generated normal subgroups.
//!
//! A subgroup is given by generating words; normality is an input assertion
//! that [`verify_normality`] can upgrade to a certificate. Membership and
//! fullness of central factors are only semi-decidable here, so they are
//! answered within explicit search budgets and may come back unknown.

mod membership;
mod report;

pub use membership::{
    lattice_certificate, membership, search_product, verify_central, verify_central_with,
    verify_normality, verify_normality_with, Budget, Centrality, CentralityReport, ConjugateCheck,
    LatticeCertificate, Letter, Membership, Normality, NormalityReport, ProductCertificate,
};
pub use report::{
    finiteness_of_n, fullness_check, induced_character, quotient_report, render_finiteness,
    render_report, FactorFullness, Fullness, Guarantees, InducedCharacter, NFiniteness,
    QuotientReport, SplitForm,
};

use crate::error::{Error, Result};
use crate::graph::SimplicialGraph;
use crate::word::{GraphProduct, NormalForm, Word};

/// Generators of a subgroup N, kept in normal form with identities dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalSubgroupGens {
    group: GraphProduct,
    gens: Vec<NormalForm>,
    normality: Normality,
}

impl NormalSubgroupGens {
    /// Normality starts out asserted.
    pub fn new(graph: &SimplicialGraph, words: Vec<Word>) -> Result<Self> {
        let group = GraphProduct::new(graph.clone());
        for w in &words {
            group.check_word(w)?;
        }
        let gens: Vec<NormalForm> = words
            .iter()
            .map(|w| group.normal_form(w))
            .filter(|nf| !nf.is_identity())
            .collect();
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        Ok(NormalSubgroupGens {
            group,
            gens,
            normality: Normality::Asserted,
        })
    }

    pub fn from_strings(graph: &SimplicialGraph, words: &[&str]) -> Result<Self> {
        let group = GraphProduct::new(graph.clone());
        let words = words
            .iter()
            .map(|w| group.word(w))
            .collect::<Result<Vec<_>>>()?;
        NormalSubgroupGens::new(graph, words)
    }

    /// One word per line; `#` starts a comment and blank lines are skipped.
    pub fn parse(graph: &SimplicialGraph, text: &str, source: &str) -> Result<Self> {
        let group = GraphProduct::new(graph.clone());
        let mut words = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if !line.is_empty() {
                words.push(group.parse_word(line, source, i + 1)?);
            }
        }
        NormalSubgroupGens::new(graph, words)
    }

    pub fn with_normality(mut self, normality: Normality) -> Self {
        self.normality = normality;
        self
    }

    pub fn group(&self) -> &GraphProduct {
        &self.group
    }

    pub fn graph(&self) -> &SimplicialGraph {
        self.group.graph()
    }

    pub fn gens(&self) -> &[NormalForm] {
        &self.gens
    }

    pub fn normality(&self) -> &Normality {
        &self.normality
    }

    /// Abelianized generator images, reduced by the vertex moduli.
    pub fn generator_images(&self) -> Vec<Vec<i64>> {
        self.gens
            .iter()
            .map(|g| self.group.abelianize(g.as_word()))
            .collect()
    }

    pub fn format_gens(&self) -> Vec<String> {
        self.gens.iter().map(|g| self.group.format_nf(g)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Order;

    #[test]
    fn generators_are_normalized() {
        let g = SimplicialGraph::complete(2, Order::Infinite);
        let n = NormalSubgroupGens::from_strings(&g, &["b a", "a a^-1", "b^2 b^-2"]).unwrap();
        assert_eq!(n.format_gens(), vec!["a b"]);
        assert_eq!(n.normality(), &Normality::Asserted);
        assert_eq!(
            NormalSubgroupGens::from_strings(&g, &["a a^-1"]),
            Err(Error::EmptyGenerators)
        );
    }

    #[test]
    fn generator_file_parsing() {
        let g = SimplicialGraph::edgeless(2, Order::Infinite);
        let n = NormalSubgroupGens::parse(&g, "# kernel\na^2\n\nb  # second\na b a^-1\n", "n.gens")
            .unwrap();
        assert_eq!(n.gens().len(), 3);
        assert_eq!(
            n.generator_images(),
            vec![vec![2, 0], vec![0, 1], vec![0, 1]]
        );
        let err = NormalSubgroupGens::parse(&g, "a\nq^2\n", "n.gens").unwrap_err();
        assert!(err.is_parse_error());
        assert!(err.to_string().starts_with("n.gens:2:"));
    }
}
