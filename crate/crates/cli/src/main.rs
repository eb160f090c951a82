use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use graphprod::bnsr::{kernel_finiteness, sigma1_contains, Character};
use graphprod::quotient::{
    finiteness_of_n, membership, quotient_report, render_finiteness, render_report, verify_central,
    verify_normality, Budget, Membership, NormalSubgroupGens, Normality,
};
use graphprod::{Error, GraphProduct, SimplicialGraph};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "graphprod", version, about = "Graph products of cyclic groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct BudgetArgs {
    /// Maximum number of generator letters in a product certificate.
    #[arg(long, default_value_t = Budget::default().depth)]
    budget_depth: usize,
    /// Cap on states stored by one search.
    #[arg(long, default_value_t = Budget::default().max_states)]
    budget_states: usize,
    /// Prune intermediate normal forms longer than |w| + slack.
    #[arg(long, default_value_t = Budget::default().slack)]
    budget_slack: usize,
}

impl BudgetArgs {
    fn budget(self) -> Budget {
        Budget {
            depth: self.budget_depth,
            slack: self.budget_slack,
            max_states: self.budget_states,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Join factors and central vertices.
    Decompose {
        graph: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Normal form of a word.
    Nf {
        graph: PathBuf,
        word: String,
        #[arg(long)]
        json: bool,
    },
    /// Whether two words define the same element.
    Eq {
        graph: PathBuf,
        u: String,
        v: String,
        #[arg(long)]
        json: bool,
    },
    /// Whether two words are conjugate.
    Conj {
        graph: PathBuf,
        u: String,
        v: String,
        #[arg(long)]
        json: bool,
    },
    /// Image in the abelianization.
    Abel {
        graph: PathBuf,
        word: String,
        #[arg(long)]
        json: bool,
    },
    /// Whether a rank-one character lies in the first BNS invariant.
    Sigma1 {
        graph: PathBuf,
        /// `a=1,b=0,...` or a character file.
        #[arg(long)]
        chi: String,
        #[arg(long)]
        json: bool,
    },
    /// Finiteness type FP_n / F_n of a kernel or of a normal subgroup.
    Fintype {
        graph: PathBuf,
        /// `a=1,b=0,...` or a character file.
        #[arg(long, conflicts_with = "gens", required_unless_present = "gens")]
        chi: Option<String>,
        /// Generators of a normal subgroup, one word per line.
        #[arg(long)]
        gens: Option<PathBuf>,
        #[arg(short = 'n', default_value_t = 1)]
        n: usize,
        /// Certify normality before deciding.
        #[arg(long)]
        verify_normality: bool,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        json: bool,
    },
    /// Structure report for the quotient by a normal subgroup.
    Quotient {
        graph: PathBuf,
        #[arg(long)]
        gens: PathBuf,
        /// Certify normality instead of asserting it.
        #[arg(long)]
        verify_normality: bool,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        json: bool,
    },
    /// Membership of a word in the subgroup generated by the given words.
    Member {
        graph: PathBuf,
        #[arg(long)]
        gens: PathBuf,
        word: String,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        json: bool,
    },
    /// Certifies that the generated subgroup is normal.
    Normality {
        graph: PathBuf,
        #[arg(long)]
        gens: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        json: bool,
    },
    /// Whether the coset of a word is central in the quotient.
    Central {
        graph: PathBuf,
        #[arg(long)]
        gens: PathBuf,
        word: String,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        json: bool,
    },
}

/// Failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_parse_error() { 2 } else { 3 },
            message: e.to_string(),
        }
    }
}

type Outcome = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: 2,
        message: format!("{}: {e}", path.display()),
    })
}

fn load_graph(path: &Path) -> Result<SimplicialGraph, Failure> {
    Ok(SimplicialGraph::parse(
        &read(path)?,
        &path.display().to_string(),
    )?)
}

fn load_gens(g: &SimplicialGraph, path: &Path) -> Result<NormalSubgroupGens, Failure> {
    Ok(NormalSubgroupGens::parse(
        g,
        &read(path)?,
        &path.display().to_string(),
    )?)
}

fn load_character(g: &SimplicialGraph, spec: &str) -> Result<Character, Failure> {
    if spec.contains('=') {
        Ok(Character::parse_inline(g, spec)?)
    } else {
        Ok(Character::parse_file(g, &read(Path::new(spec))?, spec)?)
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn json_text(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn lines(items: &[String]) -> String {
    let mut s = items.join("\n");
    s.push('\n');
    s
}

fn budget_line(b: &Budget) -> String {
    format!(
        "budget: depth {}, slack {}, states {}",
        b.depth, b.slack, b.max_states
    )
}

fn membership_json(n: &NormalSubgroupGens, m: &Membership) -> Value {
    match m {
        Membership::In(c) => {
            json!({"status": "IN", "certificate": c.format(n), "letters": c.letters})
        }
        Membership::NotIn(c) => json!({"status": "NOT_IN", "certificate": c}),
        Membership::Unknown { states } => json!({"status": "UNKNOWN", "states": states}),
    }
}

fn membership_lines(n: &NormalSubgroupGens, m: &Membership) -> Vec<String> {
    let mut out = vec![format!("membership: {}", m.label())];
    match m {
        Membership::In(c) => out.push(format!("certificate: {}", c.format(n))),
        Membership::NotIn(c) => out.push(format!(
            "certificate: abelian image {:?} outside the lattice of generator images",
            c.target_image
        )),
        Membership::Unknown { states } => out.push(format!("states explored: {states}")),
    }
    out
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Decompose { graph, json } => {
            let g = load_graph(&graph)?;
            let d = g.join_factors()?;
            Ok(if json {
                let names = |s: graphprod::VertexSet| -> Vec<&str> {
                    s.iter().map(|v| g.name(v)).collect()
                };
                json_text(json!({
                    "factors": d.factors.iter().map(|f| names(*f)).collect::<Vec<_>>(),
                    "central": names(d.central),
                }))
            } else {
                lines(&[d.format(&g)])
            })
        }
        Command::Nf { graph, word, json } => {
            let gp = GraphProduct::new(load_graph(&graph)?);
            let nf = gp.normal_form(&gp.word(&word)?);
            let text = gp.format_nf(&nf);
            Ok(if json {
                json_text(json!({"normal_form": text, "length": nf.len()}))
            } else {
                lines(&[text])
            })
        }
        Command::Eq { graph, u, v, json } => {
            let gp = GraphProduct::new(load_graph(&graph)?);
            let eq = gp.equal(&gp.word(&u)?, &gp.word(&v)?);
            Ok(if json {
                json_text(json!({"equal": eq}))
            } else {
                lines(&[format!("equal: {}", yes_no(eq))])
            })
        }
        Command::Conj { graph, u, v, json } => {
            let gp = GraphProduct::new(load_graph(&graph)?);
            let c = gp.is_conjugate(&gp.word(&u)?, &gp.word(&v)?);
            Ok(if json {
                json_text(json!({"conjugate": c}))
            } else {
                lines(&[format!("conjugate: {}", yes_no(c))])
            })
        }
        Command::Abel { graph, word, json } => {
            let gp = GraphProduct::new(load_graph(&graph)?);
            let img = gp.abelianize(&gp.word(&word)?);
            let g = gp.graph();
            Ok(if json {
                let map: serde_json::Map<String, Value> = (0..g.vertex_count())
                    .map(|v| (g.name(v).to_string(), json!(img[v])))
                    .collect();
                json_text(json!({"abelianization": map}))
            } else {
                let parts: Vec<String> = (0..g.vertex_count())
                    .map(|v| format!("{}={}", g.name(v), img[v]))
                    .collect();
                lines(&[format!("abelianization: {}", parts.join(","))])
            })
        }
        Command::Sigma1 { graph, chi, json } => {
            let g = load_graph(&graph)?;
            let chi = load_character(&g, &chi)?;
            let inside = sigma1_contains(&chi)?;
            Ok(if json {
                json_text(json!({"character": chi.format(), "sigma1": inside}))
            } else {
                lines(&[
                    format!("character: {}", chi.format()),
                    format!("sigma1: {}", yes_no(inside)),
                ])
            })
        }
        Command::Fintype {
            graph,
            chi,
            gens,
            n,
            verify_normality: verify,
            budget,
            json,
        } => {
            let g = load_graph(&graph)?;
            if let Some(chi) = chi {
                let chi = load_character(&g, &chi)?;
                let r = kernel_finiteness(&chi, n)?;
                let report = r.report(&g);
                return Ok(if json {
                    json_text(json!({"character": chi.format(), "result": report}))
                } else {
                    let mut out = vec![
                        format!("FP_{n}: {}", yes_no(r.fp)),
                        format!("F_{n}: {}", r.f),
                        format!("character: {}", chi.format()),
                        format!("dead sets checked: {}", report.dead_sets_checked),
                    ];
                    if let Some(dead) = r.first_failure() {
                        out.push(format!("failing dead set: {}", g.format_set(dead.dead)));
                    }
                    lines(&out)
                });
            }
            let gens = gens.expect("clap requires --chi or --gens");
            let budget = budget.budget();
            let mut sub = load_gens(&g, &gens)?;
            if verify {
                let status = verify_normality(&sub, &budget).status;
                sub = sub.with_normality(status);
            }
            let r = finiteness_of_n(&sub, n, &budget)?;
            Ok(if json {
                json_text(json!({
                    "n": r.n,
                    "fp": r.fp,
                    "f": r.f,
                    "rank": r.rank,
                    "conditional": r.conditional,
                    "hypotheses": r.hypotheses,
                    "budget": budget,
                }))
            } else {
                format!("{}{}\n", render_finiteness(&r), budget_line(&budget))
            })
        }
        Command::Quotient {
            graph,
            gens,
            verify_normality: verify,
            budget,
            json,
        } => {
            let g = load_graph(&graph)?;
            let budget = budget.budget();
            let mut sub = load_gens(&g, &gens)?;
            if verify {
                let status = verify_normality(&sub, &budget).status;
                sub = sub.with_normality(status);
            }
            let report = quotient_report(&sub, &budget)?;
            Ok(if json {
                let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
                s.push('\n');
                s
            } else {
                render_report(&report)
            })
        }
        Command::Member {
            graph,
            gens,
            word,
            budget,
            json,
        } => {
            let g = load_graph(&graph)?;
            let budget = budget.budget();
            let sub = load_gens(&g, &gens)?;
            let w = sub.group().word(&word)?;
            let m = membership(&sub, &w, &budget);
            Ok(if json {
                json_text(json!({"membership": membership_json(&sub, &m), "budget": budget}))
            } else {
                let mut out = membership_lines(&sub, &m);
                out.push(budget_line(&budget));
                lines(&out)
            })
        }
        Command::Normality {
            graph,
            gens,
            budget,
            json,
        } => {
            let g = load_graph(&graph)?;
            let budget = budget.budget();
            let sub = load_gens(&g, &gens)?;
            let r = verify_normality(&sub, &budget);
            let gp = sub.group();
            let witness = match &r.status {
                Normality::Failed(c) => Some(gp.format_nf(&c.conjugate)),
                _ => None,
            };
            let undecided: Vec<String> = r
                .checks
                .iter()
                .filter(|c| !c.result.is_in())
                .map(|c| gp.format_nf(&c.conjugate))
                .collect();
            Ok(if json {
                json_text(json!({
                    "normality": r.status.label(),
                    "checks": r.checks.len(),
                    "witness": witness,
                    "undecided": undecided,
                    "budget": budget,
                }))
            } else {
                let mut out = vec![
                    format!("normality: {}", r.status.label()),
                    format!("conjugates checked: {}", r.checks.len()),
                ];
                if let Some(w) = witness {
                    out.push(format!("witness: {w}"));
                }
                if !undecided.is_empty() {
                    out.push(format!("undecided: {}", undecided.join("; ")));
                }
                out.push(budget_line(&budget));
                lines(&out)
            })
        }
        Command::Central {
            graph,
            gens,
            word,
            budget,
            json,
        } => {
            let g = load_graph(&graph)?;
            let budget = budget.budget();
            let sub = load_gens(&g, &gens)?;
            let h = sub.group().word(&word)?;
            let r = verify_central(&sub, &h, &budget);
            Ok(if json {
                json_text(json!({"central": r.status, "budget": budget}))
            } else {
                lines(&[
                    format!("central: {}", r.status.label()),
                    budget_line(&budget),
                ])
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
