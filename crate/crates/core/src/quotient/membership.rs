use std::collections::HashMap;

use serde::Serialize;

use super::NormalSubgroupGens;
use crate::exec::{self, Execution};
use crate::lattice::{lattice_member, to_big};
use crate::word::{GraphProduct, NormalForm, Word};

/// Search limits for product certificates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    /// Maximum number of generator letters in a product.
    pub depth: usize,
    /// Intermediate states longer than `|w| + slack` syllables are pruned.
    pub slack: usize,
    /// Cap on stored states per search.
    pub max_states: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            depth: 8,
            slack: 4,
            max_states: 1_000_000,
        }
    }
}

/// A generator of N or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

/// `w` spelled as a product of generators of N and their inverses.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ProductCertificate {
    pub letters: Vec<Letter>,
}

/// Abelianized data showing `w` is outside N: the image of `w` is not in
/// the lattice spanned by the generator images and the vertex moduli.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeCertificate {
    pub target_image: Vec<i64>,
    pub generator_images: Vec<Vec<i64>>,
    pub moduli: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    In(ProductCertificate),
    NotIn(LatticeCertificate),
    Unknown { states: usize },
}

impl Membership {
    pub fn label(&self) -> &'static str {
        match self {
            Membership::In(_) => "IN",
            Membership::NotIn(_) => "NOT_IN",
            Membership::Unknown { .. } => "UNKNOWN",
        }
    }

    pub fn is_in(&self) -> bool {
        matches!(self, Membership::In(_))
    }

    pub fn is_not_in(&self) -> bool {
        matches!(self, Membership::NotIn(_))
    }
}

impl ProductCertificate {
    /// Multiplies the letters out.
    pub fn evaluate(&self, n: &NormalSubgroupGens) -> NormalForm {
        let gp = n.group();
        let word = self.letters.iter().fold(Word::identity(), |acc, l| {
            let g = n.gens()[l.generator].as_word();
            acc.concat(&if l.inverse { g.inverse() } else { g.clone() })
        });
        gp.normal_form(&word)
    }

    /// Re-checks the certificate with the word engine.
    pub fn verify(&self, n: &NormalSubgroupGens, w: &Word) -> bool {
        self.letters.iter().all(|l| l.generator < n.gens().len())
            && self.evaluate(n) == n.group().normal_form(w)
    }

    /// `(a b a^-1) (b)^-1`; the identity is `1`.
    pub fn format(&self, n: &NormalSubgroupGens) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        self.letters
            .iter()
            .map(|l| {
                let g = n.group().format_nf(&n.gens()[l.generator]);
                if l.inverse {
                    format!("({g})^-1")
                } else {
                    format!("({g})")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl LatticeCertificate {
    /// Re-checks non-membership in the abelianized lattice.
    pub fn verify(&self) -> bool {
        let gens: Vec<_> = self.generator_images.iter().map(|g| to_big(g)).collect();
        !lattice_member(&to_big(&self.target_image), &self.moduli, &gens)
    }
}

/// Certificate of non-membership, when the abelianization provides one.
pub fn lattice_certificate(n: &NormalSubgroupGens, w: &Word) -> Option<LatticeCertificate> {
    let cert = LatticeCertificate {
        target_image: n.group().abelianize(w),
        generator_images: n.generator_images(),
        moduli: n.group().graph().moduli(),
    };
    cert.verify().then_some(cert)
}

struct Node {
    state: NormalForm,
    parent: usize,
    letter: Option<Letter>,
}

/// One direction of the bidirectional search.
struct Side {
    nodes: Vec<Node>,
    index: HashMap<NormalForm, usize>,
    frontier: Vec<usize>,
}

impl Side {
    fn new(root: NormalForm) -> Self {
        Side {
            index: HashMap::from([(root.clone(), 0)]),
            nodes: vec![Node {
                state: root,
                parent: usize::MAX,
                letter: None,
            }],
            frontier: vec![0],
        }
    }

    /// Letters from the root to `i`, in the order they were applied.
    fn path(&self, mut i: usize) -> Vec<Letter> {
        let mut out = Vec::new();
        while let Some(l) = self.nodes[i].letter {
            out.push(l);
            i = self.nodes[i].parent;
        }
        out.reverse();
        out
    }
}

enum Step {
    Met(usize, usize),
    Exhausted,
    Continue,
}

struct Search<'a> {
    gp: &'a GraphProduct,
    letters: Vec<(Letter, Word, Word)>,
    bound: usize,
    cap: usize,
    total: usize,
}

impl Search<'_> {
    /// Expands one level of `side`; `forward` multiplies by letters on the
    /// right, otherwise by their inverses.
    fn expand(&mut self, side: &mut Side, other: &Side, forward: bool) -> Step {
        let frontier = std::mem::take(&mut side.frontier);
        for i in frontier {
            for (letter, word, inverse) in &self.letters {
                let step = if forward { word } else { inverse };
                let next = self
                    .gp
                    .normal_form(&side.nodes[i].state.as_word().concat(step));
                if next.len() > self.bound || side.index.contains_key(&next) {
                    continue;
                }
                let id = side.nodes.len();
                side.index.insert(next.clone(), id);
                let met = other.index.get(&next).copied();
                side.nodes.push(Node {
                    state: next,
                    parent: i,
                    letter: Some(*letter),
                });
                side.frontier.push(id);
                if let Some(j) = met {
                    return Step::Met(id, j);
                }
                self.total += 1;
                if self.total >= self.cap {
                    return Step::Exhausted;
                }
            }
        }
        Step::Continue
    }
}

/// Bounded bidirectional breadth-first search for `w` as a product of at
/// most `budget.depth` generators of N and their inverses. Expansion order is
/// fixed, so the outcome is reproducible.
pub fn search_product(
    n: &NormalSubgroupGens,
    w: &Word,
    budget: &Budget,
) -> Result<ProductCertificate, usize> {
    let gp = n.group();
    let target = gp.normal_form(w);
    if target.is_identity() {
        return Ok(ProductCertificate::default());
    }
    let mut letters: Vec<(Letter, Word, Word)> = Vec::new();
    let mut seen: Vec<NormalForm> = Vec::new();
    for (i, g) in n.gens().iter().enumerate() {
        for inverse in [false, true] {
            let word = if inverse {
                g.as_word().inverse()
            } else {
                g.as_word().clone()
            };
            let nf = gp.normal_form(&word);
            if !seen.contains(&nf) {
                seen.push(nf);
                let inv = word.inverse();
                letters.push((
                    Letter {
                        generator: i,
                        inverse,
                    },
                    word,
                    inv,
                ));
            }
        }
    }
    let mut search = Search {
        gp,
        letters,
        bound: target.len() + budget.slack,
        cap: budget.max_states,
        total: 2,
    };
    let mut fwd = Side::new(NormalForm::default());
    let mut bwd = Side::new(target);
    let (mut df, mut db) = (0, 0);
    while df + db < budget.depth {
        let forward = df <= db;
        let step = if forward {
            df += 1;
            search.expand(&mut fwd, &bwd, true)
        } else {
            db += 1;
            search.expand(&mut bwd, &fwd, false)
        };
        match step {
            Step::Met(a, b) => {
                let (fi, bi) = if forward { (a, b) } else { (b, a) };
                let mut path = fwd.path(fi);
                let mut back = bwd.path(bi);
                back.reverse();
                path.extend(back);
                return Ok(ProductCertificate { letters: path });
            }
            Step::Exhausted => return Err(search.total),
            Step::Continue if fwd.frontier.is_empty() && bwd.frontier.is_empty() => break,
            Step::Continue => {}
        }
    }
    Err(search.total)
}

/// Three-valued membership of `w` in the subgroup generated by N's
/// generators.
pub fn membership(n: &NormalSubgroupGens, w: &Word, budget: &Budget) -> Membership {
    if let Some(cert) = lattice_certificate(n, w) {
        return Membership::NotIn(cert);
    }
    match search_product(n, w, budget) {
        Ok(cert) => Membership::In(cert),
        Err(states) => Membership::Unknown { states },
    }
}

/// A conjugate `g n g^-1` of a generator of N by a vertex generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugateCheck {
    pub vertex: usize,
    pub inverse: bool,
    pub generator: usize,
    pub conjugate: NormalForm,
    pub result: Membership,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normality {
    /// Taken on trust from the caller.
    Asserted,
    Verified,
    /// The conjugate is not in N.
    Failed(Box<ConjugateCheck>),
    Unknown,
}

impl Normality {
    pub fn label(&self) -> &'static str {
        match self {
            Normality::Asserted => "ASSERTED",
            Normality::Verified => "VERIFIED",
            Normality::Failed(_) => "FAILED",
            Normality::Unknown => "UNKNOWN",
        }
    }

    /// Asserted or verified.
    pub fn is_usable(&self) -> bool {
        matches!(self, Normality::Asserted | Normality::Verified)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalityReport {
    pub status: Normality,
    pub checks: Vec<ConjugateCheck>,
}

pub fn verify_normality(n: &NormalSubgroupGens, budget: &Budget) -> NormalityReport {
    verify_normality_with(n, budget, Execution::default())
}

/// Tests `g n g^-1 in N` for every vertex generator `g^{+-1}` and every
/// generator `n`. All in certifies normality.
pub fn verify_normality_with(
    n: &NormalSubgroupGens,
    budget: &Budget,
    exec: Execution,
) -> NormalityReport {
    let gp = n.group();
    let mut tasks = Vec::new();
    for v in 0..gp.rank() {
        for inverse in [false, true] {
            if inverse && gp.graph().order(v).modulus() == 2 {
                continue;
            }
            for i in 0..n.gens().len() {
                tasks.push((v, inverse, i));
            }
        }
    }
    let checks = exec::map(exec, &tasks, |&(v, inverse, i)| {
        let g = Word::power(v, if inverse { -1 } else { 1 });
        let conjugate = gp.conjugate_by(n.gens()[i].as_word(), &g);
        let result = membership(n, conjugate.as_word(), budget);
        ConjugateCheck {
            vertex: v,
            inverse,
            generator: i,
            conjugate,
            result,
        }
    });
    let status = if let Some(bad) = checks.iter().find(|c| c.result.is_not_in()) {
        Normality::Failed(Box::new(bad.clone()))
    } else if checks.iter().all(|c| c.result.is_in()) {
        Normality::Verified
    } else {
        Normality::Unknown
    };
    NormalityReport { status, checks }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Centrality {
    CentralModN,
    Not,
    Unknown,
}

impl Centrality {
    pub fn label(self) -> &'static str {
        match self {
            Centrality::CentralModN => "CENTRAL_MOD_N",
            Centrality::Not => "NOT",
            Centrality::Unknown => "UNKNOWN",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralityReport {
    pub status: Centrality,
    /// `[h, g_v]` and its membership, per vertex.
    pub checks: Vec<(NormalForm, Membership)>,
}

pub fn verify_central(n: &NormalSubgroupGens, h: &Word, budget: &Budget) -> CentralityReport {
    verify_central_with(n, h, budget, Execution::default())
}

/// Whether `hN` is central in `G/N`: `[h, g_v] in N` for every vertex `v`.
pub fn verify_central_with(
    n: &NormalSubgroupGens,
    h: &Word,
    budget: &Budget,
    exec: Execution,
) -> CentralityReport {
    let gp = n.group();
    let checks = exec::map_range(exec, gp.rank(), |v| {
        let c = gp.commutator(h, &Word::generator(v));
        let m = membership(n, c.as_word(), budget);
        (c, m)
    });
    let status = if checks.iter().any(|(_, m)| m.is_not_in()) {
        Centrality::Not
    } else if checks.iter().all(|(_, m)| m.is_in()) {
        Centrality::CentralModN
    } else {
        Centrality::Unknown
    };
    CentralityReport { status, checks }
}
