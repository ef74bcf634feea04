//! `pathint`: exact iterated integrals on digraphs from the command line.
//!
//! Exit status: 0 on success, 1 on a domain or input error, 2 on a usage
//! error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pathint::forms::{closed_one_forms, omega2_basis, same_span, ClosedMethod};
use pathint::graph::{enumerate_patterns, PatternKind};
use pathint::homotopy::{homotopic_loops, pi1_candidates, change_base_point, HomotopyVerdict, Move, Pi1Candidate};
use pathint::integral::{order, volume_number, witness_word, IndexSequence, Order};
use pathint::io::{self, ElementFile, FormFile, PathFile};
use pathint::rational::format_rational;
use pathint::shuffle::{self, dual_law_report, hopf_axiom_report, Flavor, Functional, HopfReport};
use pathint::{iterated_integral, AlgebraElement, Digraph, PathMap, Rational, Step, VertexId};

#[derive(Parser)]
#[command(name = "pathint", version, about = "Exact iterated integrals along path maps of digraphs")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct GraphArg {
    /// Digraph file, JSON or DOT.
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a digraph and optional path, form, word or element files.
    Validate {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        path: Option<PathBuf>,
        #[arg(long)]
        form: Option<PathBuf>,
        #[arg(long)]
        word: Option<PathBuf>,
        #[arg(long)]
        element: Option<PathBuf>,
    },
    /// Iterated integral of a word of 1-forms along a path.
    Integrate {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        path: PathBuf,
        #[arg(long)]
        word: PathBuf,
    },
    /// Pair an element with a linear combination of paths.
    Pair {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        element: PathBuf,
        /// Path files; repeat for a combination.
        #[arg(long = "path", required = true)]
        paths: Vec<PathBuf>,
        /// Comma-separated rational weights, one per path (default all 1).
        #[arg(long)]
        weights: Option<String>,
        #[arg(long, value_enum, default_value_t = FlavorArg::Free)]
        flavor: FlavorArg,
        /// Base vertex for `from` and `loop`; defaults to the digraph's base.
        #[arg(long)]
        base: Option<String>,
    },
    /// Elementary reduction of a path.
    Reduce {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        path: PathBuf,
    },
    /// Decide elementary equivalence of two paths.
    Equiv {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        path_a: PathBuf,
        #[arg(long)]
        path_b: PathBuf,
    },
    /// Shuffle product of two elements.
    Shuffle {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Deconcatenation coproduct of an element.
    Coproduct {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        element: PathBuf,
    },
    /// Antipode of an element.
    Antipode {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        element: PathBuf,
    },
    /// Check the Hopf axioms on all words up to a degree, and the dual laws
    /// on loops at the base.
    HopfCheck {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, value_parser = positive)]
        max_degree: usize,
        /// Loop length for the dual-law checks; 0 skips them.
        #[arg(long, default_value_t = 0)]
        loop_length: usize,
        #[arg(long)]
        base: Option<String>,
    },
    /// Closed 1-forms by the kernel method, the pattern method, or both.
    ClosedForms {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
    },
    /// A basis of the degree-2 chain space.
    Omega2 {
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Order of a path: the least degree with a non-zero arrow-word integral.
    Order {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        path: PathBuf,
        #[arg(long, value_parser = positive, default_value = "8")]
        max_degree: usize,
    },
    /// Bounded homotopy search between two loops.
    Homotopy {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        loop_a: PathBuf,
        #[arg(long)]
        loop_b: PathBuf,
        #[arg(long, value_parser = positive, default_value = "12")]
        length_bound: usize,
        #[arg(long, value_parser = positive, default_value = "8")]
        depth_bound: usize,
    },
    /// Degree-bounded homotopy-invariant loop functionals.
    Pi1 {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        base: Option<String>,
        #[arg(long, value_parser = positive)]
        degree: usize,
        #[arg(long, value_parser = positive, default_value = "8")]
        length_bound: usize,
    },
    /// Move a loop functional along a path to the path's start.
    ChangeBase {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        path: PathBuf,
        #[arg(long)]
        element: PathBuf,
    },
    /// Volume number of a non-decreasing index sequence.
    Volume {
        /// Comma-separated positive indices, e.g. `3,4`.
        #[arg(long)]
        seq: String,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FlavorArg {
    Free,
    From,
    Loop,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Kernel,
    Patterns,
    Both,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

/// A command's result in both output formats.
struct Report {
    json: Value,
    text: String,
    ok: bool,
}

impl Report {
    fn new(json: Value, text: impl Into<String>) -> Self {
        Self {
            json,
            text: text.into(),
            ok: true,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(&cli.command) {
        Ok(report) => {
            let body = match cli.format {
                Format::Json => serde_json::to_string_pretty(&report.json).expect("json"),
                Format::Text => report.text.trim_end().to_string(),
            };
            // A closed pipe downstream is not an error of ours.
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_graph(arg: &GraphArg) -> Result<(Digraph, Option<VertexId>)> {
    io::read_digraph(&read(&arg.graph)?).with_context(|| format!("parsing {}", arg.graph.display()))
}

fn load_path<'g>(g: &'g Digraph, file: &Path) -> Result<PathMap<'g>> {
    io::read_path(g, &read(file)?).with_context(|| format!("parsing {}", file.display()))
}

fn load_element(g: &Digraph, file: &Path) -> Result<AlgebraElement> {
    io::read_element(g, &read(file)?).with_context(|| format!("parsing {}", file.display()))
}

fn resolve_base(g: &Digraph, given: &Option<String>, default: Option<VertexId>) -> Result<VertexId> {
    match given {
        Some(name) => Ok(g.require_vertex(name)?),
        None => default.ok_or_else(|| anyhow!("no --base given and the digraph has no base")),
    }
}

fn rat(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

fn path_json(p: &PathMap<'_>) -> Value {
    io::to_value(&PathFile::from_path(p))
}

fn element_json(g: &Digraph, u: &AlgebraElement) -> Value {
    io::to_value(&ElementFile::from_element(g, u))
}

fn element_text(g: &Digraph, u: &AlgebraElement) -> String {
    u.display(g)
}

fn run(command: &Command) -> Result<Report> {
    match command {
        Command::Validate {
            graph,
            path,
            form,
            word,
            element,
        } => {
            let (g, base) = load_graph(graph)?;
            let count = |k| enumerate_patterns(&g, k).len();
            let mut out = json!({
                "vertices": g.vertex_count(),
                "arrows": g.arrow_count(),
                "base": base.map(|b| g.name(b).to_string()),
                "triangles": count(PatternKind::Triangle),
                "squares": count(PatternKind::Square),
                "double_edges": count(PatternKind::DoubleEdge),
            });
            let mut text = format!(
                "digraph: {} vertices, {} arrows, {} triangles, {} squares, {} double edges\n",
                g.vertex_count(),
                g.arrow_count(),
                out["triangles"],
                out["squares"],
                out["double_edges"]
            );
            if let Some(p) = path {
                let p = load_path(&g, p)?;
                out["path"] = json!({"length": p.len(), "loop": p.is_loop(), "reduced": p.is_reduced()});
                text += &format!("path: {p} ({} steps, loop: {}, reduced: {})\n", p.len(), p.is_loop(), p.is_reduced());
            }
            if let Some(f) = form {
                let w = io::read_form(&g, &read(f)?).with_context(|| format!("parsing {}", f.display()))?;
                out["form"] = json!({"closed": pathint::forms::is_closed(&g, &w)});
                text += &format!("form: closed: {}\n", out["form"]["closed"]);
            }
            if let Some(f) = word {
                let w = io::read_word(&g, &read(f)?).with_context(|| format!("parsing {}", f.display()))?;
                out["word"] = json!({"length": w.len()});
                text += &format!("word: {} forms\n", w.len());
            }
            if let Some(f) = element {
                let u = load_element(&g, f)?;
                out["element"] = json!({"terms": u.len(), "degree": u.degree()});
                text += &format!("element: {} terms, degree {}\n", u.len(), u.degree());
            }
            Ok(Report::new(out, text))
        }

        Command::Integrate { graph, path, word } => {
            let (g, _) = load_graph(graph)?;
            let p = load_path(&g, path)?;
            let w = io::read_word(&g, &read(word)?).with_context(|| format!("parsing {}", word.display()))?;
            let value = iterated_integral(&p, &w);
            Ok(Report::new(json!({"value": rat(&value)}), format_rational(&value)))
        }

        Command::Pair {
            graph,
            element,
            paths,
            weights,
            flavor,
            base,
        } => {
            let (g, default_base) = load_graph(graph)?;
            let u = load_element(&g, element)?;
            let weights: Vec<Rational> = match weights {
                Some(s) => s
                    .split(',')
                    .map(|x| pathint::rational::parse_rational(x.trim()))
                    .collect::<Result<_, _>>()?,
                None => vec![Rational::from_integer(1.into()); paths.len()],
            };
            if weights.len() != paths.len() {
                bail!("{} weights for {} paths", weights.len(), paths.len());
            }
            let flavor = match flavor {
                FlavorArg::Free => Flavor::Free,
                FlavorArg::From => Flavor::From(resolve_base(&g, base, default_base)?),
                FlavorArg::Loop => Flavor::LoopAt(resolve_base(&g, base, default_base)?),
            };
            let combo = weights
                .into_iter()
                .zip(paths)
                .map(|(c, p)| Ok((c, load_path(&g, p)?)))
                .collect::<Result<Vec<_>>>()?;
            let value = Functional { element: u, flavor }.pair(&combo)?;
            Ok(Report::new(json!({"value": rat(&value)}), format_rational(&value)))
        }

        Command::Reduce { graph, path } => {
            let (g, _) = load_graph(graph)?;
            let p = load_path(&g, path)?.reduce();
            Ok(Report::new(path_json(&p), p.to_string()))
        }

        Command::Equiv { graph, path_a, path_b } => {
            let (g, _) = load_graph(graph)?;
            let a = load_path(&g, path_a)?;
            let b = load_path(&g, path_b)?;
            let equivalent = a.elem_equivalent(&b)?;
            let (ra, rb) = (a.reduce(), b.reduce());
            Ok(Report::new(
                json!({"equivalent": equivalent, "reduced_a": path_json(&ra), "reduced_b": path_json(&rb)}),
                format!("equivalent: {equivalent}\nreduced a: {ra}\nreduced b: {rb}"),
            ))
        }

        Command::Shuffle { graph, left, right } => {
            let (g, _) = load_graph(graph)?;
            let u = shuffle::shuffle(&load_element(&g, left)?, &load_element(&g, right)?);
            Ok(Report::new(element_json(&g, &u), element_text(&g, &u)))
        }

        Command::Coproduct { graph, element } => {
            let (g, _) = load_graph(graph)?;
            let d = shuffle::coproduct(&load_element(&g, element)?);
            let terms: Vec<Value> = d
                .terms()
                .map(|((l, r), c)| json!({"left": l.label(&g), "right": r.label(&g), "coefficient": rat(c)}))
                .collect();
            let word = |w: &pathint::ArrowWord| if w.is_empty() { "1".to_string() } else { w.label(&g) };
            let text = d
                .terms()
                .map(|((l, r), c)| format!("{} · {} ⊗ {}", format_rational(c), word(l), word(r)))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Report::new(json!({ "coproduct": terms }), if text.is_empty() { "0".into() } else { text }))
        }

        Command::Antipode { graph, element } => {
            let (g, _) = load_graph(graph)?;
            let u = shuffle::antipode(&load_element(&g, element)?);
            Ok(Report::new(element_json(&g, &u), element_text(&g, &u)))
        }

        Command::HopfCheck {
            graph,
            max_degree,
            loop_length,
            base,
        } => {
            let (g, default_base) = load_graph(graph)?;
            let mut reports = vec![hopf_axiom_report(&g, *max_degree)];
            if *loop_length > 0 {
                let x = resolve_base(&g, base, default_base.or(g.vertices().next()))?;
                reports.push(dual_law_report(&g, x, *loop_length, *max_degree));
            }
            let checks: Vec<&_> = reports.iter().flat_map(|r: &HopfReport| r.checks.iter()).collect();
            let ok = reports.iter().all(HopfReport::passed);
            let json_checks: Vec<Value> = checks
                .iter()
                .map(|c| json!({"name": c.name, "cases": c.cases, "passed": c.passed(), "failures": c.failures.iter().take(5).collect::<Vec<_>>()}))
                .collect();
            let text = checks
                .iter()
                .map(|c| {
                    format!(
                        "{}: {} ({} cases{})",
                        c.name,
                        if c.passed() { "pass" } else { "FAIL" },
                        c.cases,
                        c.failures.first().map(|f| format!(", first failure {f}")).unwrap_or_default()
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Report {
                json: json!({"max_degree": max_degree, "loop_length": loop_length, "passed": ok, "checks": json_checks}),
                text,
                ok,
            })
        }

        Command::ClosedForms { graph, method } => {
            let (g, _) = load_graph(graph)?;
            let form_list = |forms: &[pathint::OneForm]| -> Value {
                Value::Array(forms.iter().map(|w| io::to_value(&FormFile::from_form(&g, w))).collect())
            };
            let form_text = |forms: &[pathint::OneForm]| {
                forms
                    .iter()
                    .map(|w| {
                        let vals: Vec<String> = w.values().iter().map(format_rational).collect();
                        format!("  [{}]", vals.join(", "))
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            let mut out = json!({});
            let mut text = String::new();
            let kernel = matches!(method, MethodArg::Kernel | MethodArg::Both)
                .then(|| closed_one_forms(&g, ClosedMethod::Kernel));
            let patterns = matches!(method, MethodArg::Patterns | MethodArg::Both)
                .then(|| closed_one_forms(&g, ClosedMethod::Patterns));
            for (name, forms) in [("kernel", &kernel), ("patterns", &patterns)] {
                if let Some(forms) = forms {
                    out[name] = json!({"dimension": forms.len(), "basis": form_list(forms)});
                    text += &format!("{name}: dimension {}\n{}\n", forms.len(), form_text(forms));
                }
            }
            let mut ok = true;
            if let (Some(k), Some(p)) = (&kernel, &patterns) {
                ok = same_span(k, p);
                out["agree"] = json!(ok);
                text += &format!("methods agree: {ok}\n");
            }
            Ok(Report { json: out, text, ok })
        }

        Command::Omega2 { graph } => {
            let (g, _) = load_graph(graph)?;
            let basis = omega2_basis(&g);
            let label = |(a, b): &(pathint::ArrowId, pathint::ArrowId)| {
                let (u, v) = g.endpoints(*a);
                format!("{}->{}->{}", g.name(u), g.name(v), g.name(g.target(*b)))
            };
            let chains: Vec<Value> = basis
                .iter()
                .map(|c| Value::Object(c.0.iter().map(|(k, v)| (label(k), rat(v))).collect()))
                .collect();
            let text = std::iter::once(format!("dimension {}", basis.len()))
                .chain(basis.iter().map(|c| {
                    c.0.iter()
                        .map(|(k, v)| format!("{}·{}", format_rational(v), label(k)))
                        .collect::<Vec<_>>()
                        .join(" + ")
                }))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Report::new(json!({"dimension": basis.len(), "basis": chains}), text))
        }

        Command::Order { graph, path, max_degree } => {
            let (g, _) = load_graph(graph)?;
            let p = load_path(&g, path)?;
            let reduced = p.reduce();
            let (json, text) = match order(&p, *max_degree) {
                Order::Exactly(r) => (json!({"order": r}), format!("order {r}")),
                Order::AtLeast(r) => (json!({"order_at_least": r}), format!("order at least {r}")),
            };
            let mut json = json;
            json["reduced_length"] = json!(reduced.len());
            if !reduced.is_empty() {
                json["witness"] = json!(witness_word(&reduced).label(&g));
            }
            Ok(Report::new(json, format!("{text}\nreduced length {}", reduced.len())))
        }

        Command::Homotopy {
            graph,
            loop_a,
            loop_b,
            length_bound,
            depth_bound,
        } => {
            let (g, _) = load_graph(graph)?;
            let a = load_path(&g, loop_a)?;
            let b = load_path(&g, loop_b)?;
            let verdict = homotopic_loops(&a, &b, *length_bound, *depth_bound)?;
            Ok(homotopy_report(&g, verdict))
        }

        Command::Pi1 {
            graph,
            base,
            degree,
            length_bound,
        } => {
            let (g, default_base) = load_graph(graph)?;
            let x = resolve_base(&g, base, default_base)?;
            let p = pi1_candidates(&g, x, *degree, *length_bound);
            let list = |cs: &[Pi1Candidate]| -> Value {
                Value::Array(
                    cs.iter()
                        .map(|c| json!({"element": element_json(&g, &c.element)["element"], "certified": c.certified}))
                        .collect(),
                )
            };
            let text_list = |cs: &[Pi1Candidate]| {
                cs.iter()
                    .map(|c| {
                        format!(
                            "  [{}] {}",
                            if c.certified { "certified" } else { "sample-only" },
                            element_text(&g, &c.element)
                        )
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            let json = json!({
                "base": g.name(x),
                "degree": degree,
                "length_bound": length_bound,
                "loops_sampled": p.loops_sampled,
                "basis": list(&p.basis),
                "degree_one": list(&p.degree_one),
                "certified_degree_one_dimension": p.certified_degree_one_dimension(),
            });
            let text = format!(
                "{} loops sampled\ncandidates (degree <= {}): {}\n{}\ndegree one: {} ({} certified)\n{}",
                p.loops_sampled,
                degree,
                p.basis.len(),
                text_list(&p.basis),
                p.degree_one.len(),
                p.certified_degree_one_dimension(),
                text_list(&p.degree_one)
            );
            Ok(Report::new(json, text))
        }

        Command::ChangeBase { graph, path, element } => {
            let (g, _) = load_graph(graph)?;
            let gamma = load_path(&g, path)?;
            let u = change_base_point(&gamma, &load_element(&g, element)?)?;
            Ok(Report::new(element_json(&g, &u), element_text(&g, &u)))
        }

        Command::Volume { seq } => {
            let indices = seq
                .split(',')
                .map(|s| s.trim().parse::<usize>().with_context(|| format!("bad index {s:?}")))
                .collect::<Result<Vec<_>>>()?;
            let tau = volume_number(&IndexSequence::new(indices)?);
            Ok(Report::new(json!({"value": tau.to_string()}), tau.to_string()))
        }
    }
}

fn step_json(g: &Digraph, s: &Step) -> Value {
    match s {
        Step::Forward(a) => json!({"arrow": g.arrow_label(*a), "orientation": "f"}),
        Step::Inverse(a) => json!({"arrow": g.arrow_label(*a), "orientation": "b"}),
        Step::Trivial(v) => json!({"trivial": g.name(*v)}),
    }
}

fn move_json(g: &Digraph, m: &Move) -> Value {
    json!({
        "kind": m.kind.label(),
        "direction": m.direction.label(),
        "position": m.position,
        "before": m.before.iter().map(|s| step_json(g, s)).collect::<Vec<_>>(),
        "after": m.after.iter().map(|s| step_json(g, s)).collect::<Vec<_>>(),
    })
}

fn homotopy_report(g: &Digraph, verdict: HomotopyVerdict<'_>) -> Report {
    match verdict {
        HomotopyVerdict::Homotopic(cert) => {
            let chain = cert.replay().expect("search certificates replay");
            let text = std::iter::once(format!("homotopic in {} moves", cert.moves.len()))
                .chain(
                    cert.moves
                        .iter()
                        .zip(chain.iter().skip(1))
                        .map(|(m, p)| format!("  {m}: {p}")),
                )
                .collect::<Vec<_>>()
                .join("\n");
            Report::new(
                json!({
                    "verdict": "homotopic",
                    "start": path_json(&cert.start),
                    "end": path_json(&cert.end),
                    "moves": cert.moves.iter().map(|m| move_json(g, m)).collect::<Vec<_>>(),
                }),
                text,
            )
        }
        HomotopyVerdict::CertifiedDistinct(sep) => Report::new(
            json!({
                "verdict": "not-homotopic",
                "invariant": io::to_value(&FormFile::from_form(g, &sep.form)),
                "value_a": rat(&sep.value_a),
                "value_b": rat(&sep.value_b),
            }),
            format!(
                "not homotopic: closed form [{}] pairs to {} and {}",
                sep.form.values().iter().map(format_rational).collect::<Vec<_>>().join(", "),
                format_rational(&sep.value_a),
                format_rational(&sep.value_b)
            ),
        ),
        HomotopyVerdict::Unknown {
            length_bound,
            depth_bound,
            explored,
        } => Report::new(
            json!({
                "verdict": "unknown",
                "length_bound": length_bound,
                "depth_bound": depth_bound,
                "explored": explored,
            }),
            format!("unknown: no certificate within length {length_bound} and depth {depth_bound} ({explored} loops explored)"),
        ),
    }
}
