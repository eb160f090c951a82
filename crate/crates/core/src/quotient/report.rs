use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::membership::{Budget, Normality};
use super::NormalSubgroupGens;
use crate::bnsr::{kernel_finiteness_with, Character, KernelFiniteness};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::graph::{JoinDecomposition, Order, VertexSet};
use crate::homology::Verdict;
use crate::lattice::{quotient_structure, to_big, LatticeQuotient};
use crate::word::{NormalForm, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Fullness {
    Full,
    NotFull,
    Unknown,
}

impl Fullness {
    pub fn label(self) -> &'static str {
        match self {
            Fullness::Full => "FULL",
            Fullness::NotFull => "NOT_FULL",
            Fullness::Unknown => "UNKNOWN",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorFullness {
    pub factor: VertexSet,
    pub central: bool,
    pub status: Fullness,
    /// Human-readable reason for `status`.
    pub certificate: Option<String>,
}

/// Bounded search for a nontrivial product of generators of N supported
/// on the single vertex `v`.
fn central_witness(n: &NormalSubgroupGens, v: usize, budget: &Budget) -> Option<NormalForm> {
    let gp = n.group();
    let target = VertexSet::singleton(v);
    let letters: Vec<Word> = n
        .gens()
        .iter()
        .flat_map(|g| [g.as_word().clone(), g.as_word().inverse()])
        .collect();
    let bound = n.gens().iter().map(NormalForm::len).max().unwrap_or(0) + budget.slack;
    let mut seen: HashSet<NormalForm> = HashSet::from([NormalForm::default()]);
    let mut queue = VecDeque::from([(NormalForm::default(), 0usize)]);
    while let Some((state, depth)) = queue.pop_front() {
        if depth == budget.depth {
            continue;
        }
        for l in &letters {
            let next = gp.normal_form(&state.as_word().concat(l));
            if next.len() > bound || !seen.insert(next.clone()) {
                continue;
            }
            if !next.is_identity() && next.support() == target {
                return Some(next);
            }
            if seen.len() >= budget.max_states {
                return None;
            }
            queue.push_back((next, depth + 1));
        }
    }
    None
}

/// Whether N meets every join factor nontrivially.
///
/// For a non-central factor the answer is exact for normal N: it is full
/// iff some generator projects nontrivially. A central factor is `NotFull`
/// when every generator projects trivially onto it, `Full` when a bounded
/// search finds an element of N supported on it, and `Unknown` otherwise.
pub fn fullness_check(n: &NormalSubgroupGens, budget: &Budget) -> Vec<FactorFullness> {
    let g = n.graph();
    let gp = n.group();
    let decomposition = g
        .join_factors()
        .expect("a graph carrying generators is nonempty");
    decomposition
        .factors
        .iter()
        .map(|&factor| {
            let central = factor.is_subset(decomposition.central);
            let projected = n
                .gens()
                .iter()
                .map(|w| (w, gp.project(w.as_word(), factor)))
                .find(|(_, p)| !p.is_identity());
            let (status, certificate) = match projected {
                None => (
                    Fullness::NotFull,
                    Some("every generator projects trivially".into()),
                ),
                Some((w, p)) if !central => (
                    Fullness::Full,
                    Some(format!(
                        "projection of `{}` is `{}`",
                        gp.format_nf(w),
                        gp.format_nf(&p)
                    )),
                ),
                Some(_) => {
                    let v = factor.first().expect("factors are nonempty");
                    match central_witness(n, v, budget) {
                        Some(w) => (
                            Fullness::Full,
                            Some(format!("`{}` lies in N", gp.format_nf(&w))),
                        ),
                        None => (Fullness::Unknown, None),
                    }
                }
            };
            FactorFullness {
                factor,
                central,
                status,
                certificate,
            }
        })
        .collect()
}

/// The character `G -> Z^rank` killing N, together with the torsion of the
/// abelianized quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedCharacter {
    pub character: Character,
    pub quotient: LatticeQuotient,
    /// Every generator of N maps to zero.
    pub kills_generators: bool,
}

impl InducedCharacter {
    pub fn rank(&self) -> usize {
        self.quotient.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.quotient.torsion
    }
}

pub fn induced_character(n: &NormalSubgroupGens) -> Result<InducedCharacter> {
    let g = n.graph();
    let images: Vec<Vec<BigInt>> = n.generator_images().iter().map(|v| to_big(v)).collect();
    let quotient = quotient_structure(&g.moduli(), &images);
    let values = (0..g.vertex_count())
        .map(|v| {
            quotient
                .basis_image(v)
                .iter()
                .map(|x| i64::try_from(x).map_err(|_| Error::Overflow))
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let character = Character::new(g, values, quotient.rank)?;
    let kills_generators = images
        .iter()
        .all(|img| quotient.project(img).iter().all(Zero::is_zero));
    Ok(InducedCharacter {
        character,
        quotient,
        kills_generators,
    })
}

/// `G/N = B/(B n N) x G'/p(N)` where `B` is generated by the central
/// vertices and `G'` by the rest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitForm {
    pub central_part: String,
    pub non_central_part: String,
    /// False when some generator mixes central and non-central vertices; the
    /// central part is then only known to surject onto `B/(B n N)`.
    pub exact: bool,
    pub form: String,
}

fn format_abelian(rank: usize, torsion: &[BigInt]) -> String {
    let mut parts = Vec::new();
    match rank {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{r}")),
    }
    parts.extend(torsion.iter().map(|t| format!("Z/{t}")));
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" x ")
    }
}

fn split_form(n: &NormalSubgroupGens, decomposition: &JoinDecomposition) -> SplitForm {
    let g = n.graph();
    let gp = n.group();
    let z = decomposition.central;
    let rest = g.vertices().difference(z);
    let in_b: Vec<&NormalForm> = n
        .gens()
        .iter()
        .filter(|w| w.support().is_subset(z))
        .collect();
    let exact = n
        .gens()
        .iter()
        .all(|w| w.support().is_subset(z) || w.support().intersection(z).is_empty());

    let zs = z.to_vec();
    let moduli: Vec<u64> = zs.iter().map(|&v| g.order(v).modulus()).collect();
    let relations: Vec<Vec<BigInt>> = in_b
        .iter()
        .map(|w| {
            let img = gp.abelianize(w.as_word());
            zs.iter().map(|&v| BigInt::from(img[v])).collect()
        })
        .collect();
    let central_quotient = quotient_structure(&moduli, &relations);
    let central_part = format_abelian(central_quotient.rank, &central_quotient.torsion);

    let names: Vec<&str> = rest.iter().map(|v| g.name(v)).collect();
    let p_trivial = n
        .gens()
        .iter()
        .all(|w| gp.project(w.as_word(), rest).is_identity());
    let free = rest.iter().all(|v| g.order(v) == Order::Infinite)
        && rest
            .iter()
            .all(|v| g.neighbors(v).intersection(rest).is_empty());
    let non_central_part = if rest.is_empty() {
        "1".to_string()
    } else {
        let base = format!("{}({})", if free { "F" } else { "GP" }, names.join(","));
        if p_trivial {
            base
        } else {
            format!("{base}/p(N)")
        }
    };
    let form = match (central_part.as_str(), non_central_part.as_str()) {
        ("1", rest) => rest.to_string(),
        (central, "1") => central.to_string(),
        (central, rest) => format!("{central} x {rest}"),
    };
    SplitForm {
        central_part,
        non_central_part,
        exact,
        form,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Guarantees {
    pub kills_generators: bool,
    pub all_factors_full: bool,
    /// All factors full and normality asserted or verified.
    pub main_theorem: bool,
    /// Set when the main theorem applies and the rank is zero.
    pub finite_quotient: bool,
    /// `RAAG` or `RACG` when some factor is not full.
    pub virtually: Option<String>,
    pub split_form: Option<SplitForm>,
    pub flags: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorSummary {
    pub factor: String,
    pub central: bool,
    pub status: Fullness,
    pub certificate: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionSummary {
    pub factors: Vec<String>,
    pub central: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexValue {
    pub vertex: String,
    pub value: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterSummary {
    pub rank: usize,
    pub values: Vec<VertexValue>,
}

fn serialize_bigints<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match i64::try_from(x) {
            Ok(i) => seq.serialize_element(&i)?,
            Err(_) => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientReport {
    pub generators: Vec<String>,
    pub normality: String,
    pub budget: Budget,
    pub decomposition: DecompositionSummary,
    pub fullness: Vec<FactorSummary>,
    pub character: CharacterSummary,
    pub rank: usize,
    #[serde(serialize_with = "serialize_bigints")]
    pub torsion: Vec<BigInt>,
    pub guarantees: Guarantees,
    #[serde(skip)]
    decomposition_line: String,
}

pub fn quotient_report(n: &NormalSubgroupGens, budget: &Budget) -> Result<QuotientReport> {
    let g = n.graph();
    let decomposition = g.join_factors()?;
    let fullness = fullness_check(n, budget);
    let induced = induced_character(n)?;
    let rank = induced.rank();
    let usable = n.normality().is_usable();
    let all_full = fullness.iter().all(|f| f.status == Fullness::Full);
    let some_not_full = fullness.iter().any(|f| f.status == Fullness::NotFull);
    let main_theorem = all_full && usable;

    let mut flags = Vec::new();
    flags.push(if induced.kills_generators {
        "N <= ker chi verified".to_string()
    } else {
        "N <= ker chi check failed".to_string()
    });
    if main_theorem {
        flags.push("G/N abelian-by-finite and finite-by-abelian".into());
        flags.push("N commensurable with ker chi".into());
        flags.push(if rank == 0 {
            "finite quotient (guaranteed if N full and normal)".into()
        } else {
            format!("quotient virtually {}", format_abelian(rank, &[]))
        });
    } else if !usable {
        flags.push(format!(
            "normality {}: structural guarantees withheld",
            n.normality().label()
        ));
    } else if !some_not_full {
        flags.push("fullness not established: structural guarantees withheld".into());
    }

    let orders = g.orders();
    let virtually = (some_not_full && usable)
        .then(|| {
            if orders.iter().all(|o| *o == Order::Infinite) {
                Some("RAAG".to_string())
            } else if orders.iter().all(|o| *o == Order::Finite(2)) {
                Some("RACG".to_string())
            } else {
                None
            }
        })
        .flatten();
    if let Some(kind) = &virtually {
        flags.push(format!("G/N virtually a {kind}"));
    }
    let split = some_not_full.then(|| split_form(n, &decomposition));

    let character = CharacterSummary {
        rank,
        values: (0..g.vertex_count())
            .map(|v| VertexValue {
                vertex: g.name(v).to_string(),
                value: induced.character.value(v).to_vec(),
            })
            .collect(),
    };
    Ok(QuotientReport {
        generators: n.format_gens(),
        normality: n.normality().label().to_string(),
        budget: *budget,
        decomposition: DecompositionSummary {
            factors: decomposition
                .factors
                .iter()
                .map(|f| g.format_set(*f))
                .collect(),
            central: decomposition
                .central
                .iter()
                .map(|v| g.name(v).to_string())
                .collect(),
        },
        fullness: fullness
            .iter()
            .map(|f| FactorSummary {
                factor: g.format_set(f.factor),
                central: f.central,
                status: f.status,
                certificate: f.certificate.clone(),
            })
            .collect(),
        character,
        rank,
        torsion: induced.torsion().to_vec(),
        guarantees: Guarantees {
            kills_generators: induced.kills_generators,
            all_factors_full: all_full,
            main_theorem,
            finite_quotient: main_theorem && rank == 0,
            virtually,
            split_form: split,
            flags,
        },
        decomposition_line: decomposition.format(g),
    })
}

fn format_budget(b: &Budget) -> String {
    format!(
        "depth {}, slack {}, states {}",
        b.depth, b.slack, b.max_states
    )
}

fn format_torsion(t: &[BigInt]) -> String {
    let parts: Vec<String> = t.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// Line-based `key: value` rendering.
pub fn render_report(r: &QuotientReport) -> String {
    let mut out = Vec::new();
    out.push(format!("generators: {}", r.generators.join("; ")));
    out.push(format!("normality: {}", r.normality));
    out.push(format!("budget: {}", format_budget(&r.budget)));
    out.push(r.decomposition_line.clone());
    for f in &r.fullness {
        let mut line = format!("fullness {}: {}", f.factor, f.status.label());
        if let Some(c) = &f.certificate {
            line.push_str(&format!(" ({c})"));
        }
        out.push(line);
    }
    let chi = if r.character.rank == 0 {
        "trivial".to_string()
    } else {
        r.character
            .values
            .iter()
            .map(|vv| {
                let v: Vec<String> = vv.value.iter().map(|x| x.to_string()).collect();
                if v.len() == 1 {
                    format!("{}={}", vv.vertex, v[0])
                } else {
                    format!("{}=({})", vv.vertex, v.join(","))
                }
            })
            .collect::<Vec<_>>()
            .join(",")
    };
    out.push(format!("character: {chi}"));
    out.push(format!("rank: {}", r.rank));
    out.push(format!("torsion: {}", format_torsion(&r.torsion)));
    for flag in &r.guarantees.flags {
        out.push(format!("guarantee: {flag}"));
    }
    if let Some(s) = &r.guarantees.split_form {
        out.push(format!(
            "split form: {} ({})",
            s.form,
            if s.exact {
                "exact"
            } else {
                "central part is an upper quotient"
            }
        ));
    }
    let mut text = out.join("\n");
    text.push('\n');
    text
}

/// Finiteness type of N itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NFiniteness {
    pub n: usize,
    pub fp: bool,
    pub f: Verdict,
    pub rank: usize,
    /// False only when normality and every fullness were certified.
    pub conditional: bool,
    pub hypotheses: Vec<String>,
    /// `None` when the quotient is finite.
    pub kernel: Option<KernelFiniteness>,
}

pub fn finiteness_of_n(
    n: &NormalSubgroupGens,
    degree: usize,
    budget: &Budget,
) -> Result<NFiniteness> {
    finiteness_of_n_with(n, degree, budget, Execution::default())
}

/// For full normal N, `[ker chi : N]` is finite, so N has the finiteness
/// type of `ker chi`.
pub fn finiteness_of_n_with(
    n: &NormalSubgroupGens,
    degree: usize,
    budget: &Budget,
    exec: Execution,
) -> Result<NFiniteness> {
    let g = n.graph();
    let fullness = fullness_check(n, budget);
    if let Some(bad) = fullness.iter().find(|f| f.status == Fullness::NotFull) {
        return Err(Error::NotFullInput(g.format_set(bad.factor)));
    }
    if let Normality::Failed(w) = n.normality() {
        return Err(Error::NotNormal(format!(
            "conjugate `{}` is not in N",
            n.group().format_nf(&w.conjugate)
        )));
    }
    let mut hypotheses = vec![format!("normality {}", n.normality().label())];
    hypotheses.extend(
        fullness
            .iter()
            .map(|f| format!("fullness {} {}", g.format_set(f.factor), f.status.label())),
    );
    let conditional = *n.normality() != Normality::Verified
        || fullness.iter().any(|f| f.status != Fullness::Full);
    let induced = induced_character(n)?;
    let rank = induced.rank();
    if rank == 0 {
        return Ok(NFiniteness {
            n: degree,
            fp: true,
            f: Verdict::Yes,
            rank,
            conditional,
            hypotheses,
            kernel: None,
        });
    }
    let kernel = kernel_finiteness_with(&induced.character, degree, exec)?;
    Ok(NFiniteness {
        n: degree,
        fp: kernel.fp,
        f: kernel.f,
        rank,
        conditional,
        hypotheses,
        kernel: Some(kernel),
    })
}

pub fn render_finiteness(r: &NFiniteness) -> String {
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    let mut out = vec![
        format!("FP_{}: {}", r.n, yes_no(r.fp)),
        format!("F_{}: {}", r.n, r.f),
        format!("rank: {}", r.rank),
    ];
    if r.kernel.is_none() {
        out.push("note: finite quotient, N has finite index in G and is of type F_infinity".into());
    }
    out.push(format!("hypotheses: {}", r.hypotheses.join("; ")));
    out.push(format!(
        "status: {}",
        if r.conditional {
            "conditional on N full and normal"
        } else {
            "certified"
        }
    ));
    let mut text = out.join("\n");
    text.push('\n');
    text
}
