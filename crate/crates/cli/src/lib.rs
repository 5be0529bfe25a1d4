//! `knotrep` command-line interface.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 some result is
//! incomplete because a budget ran out, 3 an internal invariant failed.

mod demos;
mod input;

use std::ffi::OsString;
use std::io::Write;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use knotrep_algebra::Budget;
use knotrep_core::finite::{
    count_homs, count_homs_up_to_conjugacy, find_separating_hom, fox_colorings, HomError, HomOptions, Separation,
    DEFAULT_SEARCH_BUDGET,
};
use knotrep_core::knot::SourceFormat;
use knotrep_core::obstruction::{assemble_report, knot_dimension, knot_group, ModelSpec, TIETZE_MOVES};
use knotrep_core::presentation::{tietze_simplify, wirtinger, Word};
use knotrep_core::repvar::{build_rep_ideal, Gauge, Target};
use num_bigint::BigUint;
use serde_json::{json, Value};

pub use demos::{run_demos, DemoResult};
pub use input::{digest, load_group, load_knot, InputId, KnotInput};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INCOMPLETE: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "knotrep", version, about = "Knot group representation counts and variety dimensions")]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct KnotArg {
    /// Knot file (`.braid`, `.dt`, `.pd`) or the name of a bundled fixture.
    #[arg(long)]
    knot: String,
    /// Input format; by default taken from the file extension.
    #[arg(long, value_parser = parse_format)]
    format: Option<SourceFormat>,
}

#[derive(Args, Debug, Clone)]
struct ModelArgs {
    /// Target group: su2, so2, so3 or so4. Repeat or comma-separate for several.
    #[arg(long, value_delimiter = ',', default_value = "su2", value_parser = parse_target)]
    model: Vec<Target>,
    /// Gauge slice: none, or fix1 to pin the first generator to a torus.
    #[arg(long, default_value = "none", value_parser = parse_gauge)]
    gauge: Gauge,
}

#[derive(Args, Debug, Clone)]
struct BudgetArgs {
    /// Largest polynomial degree allowed in Gröbner computations.
    #[arg(long, default_value_t = 40)]
    budget_deg: u32,
    /// Wall-clock limit per dimension computation, in seconds.
    #[arg(long)]
    budget_secs: Option<u64>,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        let b = Budget::with_degree(self.budget_deg);
        match self.budget_secs {
            Some(s) => b.with_deadline(Instant::now() + Duration::from_secs(s)),
            None => b,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a knot and print its diagram in PD form.
    Parse {
        #[command(flatten)]
        knot: KnotArg,
    },
    /// Wirtinger presentation, its Tietze simplification and abelianization.
    Wirtinger {
        #[command(flatten)]
        knot: KnotArg,
    },
    /// Count homomorphisms from the knot group to finite groups.
    Homs {
        #[command(flatten)]
        knot: KnotArg,
        /// Catalog name (Cn, Dn, Sn, An) or permutation file; comma-separated.
        #[arg(long, value_delimiter = ',', required = true)]
        group: Vec<String>,
        /// Also count homomorphisms up to conjugation.
        #[arg(long)]
        conjugacy: bool,
        /// Largest search space |G|^generators to attempt.
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        max_search: u64,
        /// Find the first homomorphism sending this word (in the simplified
        /// presentation's generators, e.g. "g0 g1 g0^-1 g1^-1") to a
        /// non-identity element, trying groups in order.
        #[arg(long)]
        separate: Option<String>,
    },
    /// Count Fox n-colorings.
    Colorings {
        #[command(flatten)]
        knot: KnotArg,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(2..))]
        n: u64,
    },
    /// Dump the defining ideal of the representation variety.
    Ideal {
        #[command(flatten)]
        knot: KnotArg,
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Component dimensions of the representation variety.
    Dim {
        #[command(flatten)]
        knot: KnotArg,
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Compare two knots by their dimension lists.
    Compare {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, value_parser = parse_format)]
        format: Option<SourceFormat>,
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Run the fixed algebraic-set demonstrations.
    LemmaDemo {
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

fn parse_format(s: &str) -> Result<SourceFormat, String> {
    SourceFormat::from_name(s).ok_or_else(|| format!("unknown format `{s}` (expected braid, dt or pd)"))
}

fn parse_target(s: &str) -> Result<Target, String> {
    s.parse().map_err(|e: knotrep_core::repvar::RepError| e.to_string())
}

fn parse_gauge(s: &str) -> Result<Gauge, String> {
    s.parse().map_err(|e: knotrep_core::repvar::RepError| e.to_string())
}

/// Exact integer: a JSON number when it fits in 64 bits, else a string.
fn exact(n: &BigUint) -> Value {
    match u64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

struct Outcome {
    json: Value,
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(json: Value, text: String) -> Self {
        Outcome { json, text, code: EXIT_OK }
    }
}

fn knot_json(k: &KnotInput) -> Value {
    json!({ "label": k.id.label, "sha256": k.id.sha256, "format": k.format.name() })
}

fn cmd_parse(k: &KnotArg) -> Result<Outcome, String> {
    let k = load_knot(&k.knot, k.format)?;
    let d = &k.diagram;
    let text =
        format!("crossings: {}\narcs: {}\nwrithe: {}\n{}", d.crossing_count(), d.arc_count, d.writhe(), d.to_pd_text());
    let json = json!({
        "knot": knot_json(&k),
        "crossings": d.crossing_count(),
        "arcs": d.arc_count,
        "writhe": d.writhe(),
        "pd": d.to_pd_text(),
    });
    Ok(Outcome::ok(json, text))
}

fn cmd_wirtinger(k: &KnotArg) -> Result<Outcome, String> {
    let k = load_knot(&k.knot, k.format)?;
    let w = wirtinger(&k.diagram);
    let ab = w.abelianization();
    let simplified = tietze_simplify(&w, TIETZE_MOVES);
    let sab = simplified.presentation.abelianization();
    let mut text = format!(
        "wirtinger ({} generators, deficiency {}):\n{}abelianization: {ab}\nsimplified after {} moves:\n{}abelianization: {sab}\n",
        w.generator_count(),
        w.deficiency(),
        w.to_text(),
        simplified.trace.len(),
        simplified.presentation.to_text(),
    );
    let mut code = EXIT_OK;
    if simplified.exhausted {
        text.push_str("tietze move budget exhausted\n");
        code = EXIT_INCOMPLETE;
    }
    if !ab.is_infinite_cyclic() || !sab.is_infinite_cyclic() || w.deficiency() != 1 {
        text.push_str("invariant violated: a knot group must abelianize to Z with deficiency 1\n");
        code = EXIT_INVARIANT;
    }
    let json = json!({
        "knot": knot_json(&k),
        "wirtinger": { "presentation": w, "deficiency": w.deficiency(), "abelianization": ab },
        "simplified": {
            "presentation": simplified.presentation,
            "abelianization": sab,
            "moves": simplified.trace.moves,
            "exhausted": simplified.exhausted,
        },
    });
    Ok(Outcome { json, text, code })
}

fn cmd_homs(
    k: &KnotArg,
    groups: &[String],
    conjugacy: bool,
    max_search: u64,
    separate: Option<&str>,
) -> Result<Outcome, String> {
    let k = load_knot(&k.knot, k.format)?;
    let p = knot_group(&k.diagram);
    let groups = groups.iter().map(|g| load_group(g)).collect::<Result<Vec<_>, _>>()?;
    let opts = HomOptions { budget: max_search, ..Default::default() };
    let mut code = EXIT_OK;
    let mut text = format!("presentation:\n{}", p.to_text());
    let mut entries = Vec::new();
    for g in &groups {
        let mut entry = json!({ "group": g.summary() });
        match count_homs(&p, g, &opts) {
            Ok(c) => {
                entry["count"] = json!(c);
                text.push_str(&format!("{} (order {}): {c}", g.name(), g.order()));
                if conjugacy {
                    let cc = count_homs_up_to_conjugacy(&p, g, &opts).map_err(|e| e.to_string())?;
                    entry["up_to_conjugacy"] = json!(cc);
                    text.push_str(&format!(", {cc} up to conjugacy"));
                }
                text.push('\n');
            }
            Err(HomError::BudgetExceeded { search_space, budget }) => {
                code = EXIT_INCOMPLETE;
                entry["incomplete"] = json!(true);
                entry["search_space"] = exact(&search_space);
                text.push_str(&format!("{}: incomplete, search space {search_space} exceeds {budget}\n", g.name()));
            }
            Err(e) => return Err(e.to_string()),
        }
        entries.push(entry);
    }
    let mut json = json!({ "knot": knot_json(&k), "presentation": p, "targets": entries });
    if let Some(w) = separate {
        let c = Word::parse(w)?;
        let result = match find_separating_hom(&p, &c, &groups, max_search) {
            Ok(Separation::Found { target, hom, image }) => {
                let g = &groups[target];
                let cycles = hom.cycles(g);
                let img = g.element(image).cycle_string();
                text.push_str(&format!("{c} survives in {}: images {} send it to {img}\n", g.name(), cycles.join(" ")));
                json!({ "status": "found", "group": g.name(), "images": cycles, "image": img, "satisfied": hom.satisfied })
            }
            Ok(Separation::NotFound) => {
                text.push_str(&format!("{c} is killed by every homomorphism to the listed groups\n"));
                json!({ "status": "not_found" })
            }
            Ok(Separation::TrivialWord) => {
                text.push_str("the empty word is never separated\n");
                json!({ "status": "trivial_word" })
            }
            Err(HomError::BudgetExceeded { search_space, .. }) => {
                code = EXIT_INCOMPLETE;
                text.push_str(&format!("separation incomplete: search space {search_space} over budget\n"));
                json!({ "status": "incomplete", "search_space": exact(&search_space) })
            }
            Err(e) => return Err(e.to_string()),
        };
        json["separation"] = result;
    }
    Ok(Outcome { json, text, code })
}

fn cmd_colorings(k: &KnotArg, n: u64) -> Result<Outcome, String> {
    let k = load_knot(&k.knot, k.format)?;
    let c = fox_colorings(&k.diagram, n);
    Ok(Outcome::ok(json!({ "knot": knot_json(&k), "n": n, "colorings": exact(&c) }), format!("{c}\n")))
}

fn cmd_ideal(k: &KnotArg, m: &ModelArgs) -> Result<Outcome, String> {
    let k = load_knot(&k.knot, k.format)?;
    let p = knot_group(&k.diagram);
    let mut models = Vec::new();
    let mut text = String::new();
    for &t in &m.model {
        let model = build_rep_ideal(&p, t, m.gauge);
        text.push_str(&model.dump());
        models.push(json!({ "header": model.header(), "ideal": model.ideal().to_text() }));
    }
    Ok(Outcome::ok(json!({ "knot": knot_json(&k), "models": models }), text))
}

fn dim_text(d: &knotrep_core::repvar::DimInvariant) -> String {
    let list: Vec<String> = d.dimension_list.iter().map(usize::to_string).collect();
    let mut flags = Vec::new();
    if !d.complete {
        flags.push("INCOMPLETE");
    }
    if d.budget_caveat {
        flags.push("budget");
    }
    if d.real_radical_caveat {
        flags.push("real-radical caveat");
    }
    if !d.certified {
        flags.push("uncertified");
    }
    let mut s = format!("{} gauge={} vars={}: [{}]", d.target, d.gauge, d.variables, list.join(", "));
    if !flags.is_empty() {
        s.push_str(&format!(" ({})", flags.join(", ")));
    }
    if let Some(n) = &d.note {
        s.push_str(&format!(" -- {n}"));
    }
    s
}

fn cmd_dim(k: &KnotArg, m: &ModelArgs, b: &BudgetArgs) -> Result<Outcome, String> {
    let k = load_knot(&k.knot, k.format)?;
    let p = knot_group(&k.diagram);
    let mut code = EXIT_OK;
    let mut text = String::new();
    let mut out = Vec::new();
    for &t in &m.model {
        let d = knot_dimension(&p, ModelSpec { target: t, gauge: m.gauge }, &b.budget());
        if !d.complete {
            code = EXIT_INCOMPLETE;
        }
        text.push_str(&dim_text(&d));
        text.push('\n');
        out.push(d);
    }
    Ok(Outcome { json: json!({ "knot": knot_json(&k), "dimensions": out }), text, code })
}

fn cmd_compare(
    a: &str,
    b: &str,
    format: Option<SourceFormat>,
    m: &ModelArgs,
    budget: &BudgetArgs,
) -> Result<Outcome, String> {
    let ka = load_knot(a, format)?;
    let kb = load_knot(b, format)?;
    let (pa, pb) = (knot_group(&ka.diagram), knot_group(&kb.diagram));
    let dims = m
        .model
        .iter()
        .map(|&t| {
            let model = ModelSpec { target: t, gauge: m.gauge };
            (
                model.to_string(),
                knot_dimension(&pa, model, &budget.budget()),
                knot_dimension(&pb, model, &budget.budget()),
            )
        })
        .collect();
    let report = assemble_report(&ka.id.label, &kb.id.label, dims);
    let mut text = String::new();
    for e in &report.entries {
        text.push_str(&format!(
            "{}\n  A {}\n  B {}\n  verdict: {:?}\n",
            e.model,
            dim_text(&e.a),
            dim_text(&e.b),
            e.verdict
        ));
    }
    text.push_str(&format!("combined: {}", report.combined));
    if report.heuristic {
        text.push_str(" (heuristic)");
    }
    text.push('\n');
    let code = if report.has_incomplete() { EXIT_INCOMPLETE } else { EXIT_OK };
    let json = json!({ "a": knot_json(&ka), "b": knot_json(&kb), "report": report });
    Ok(Outcome { json, text, code })
}

fn cmd_lemma_demo(b: &BudgetArgs) -> Outcome {
    let results = run_demos(&b.budget());
    let mut text = String::new();
    for r in &results {
        let mark = if r.ok { "ok  " } else { "FAIL" };
        text.push_str(&format!("{mark} {}: {}\n", r.name, r.observed));
        if !r.ok {
            text.push_str(&format!("     expected {}\n", r.expected));
        }
    }
    let code = if results.iter().all(|r| r.ok) { EXIT_OK } else { EXIT_INVARIANT };
    Outcome { json: json!({ "demos": results }), text, code }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Parse { .. } => "parse",
        Command::Wirtinger { .. } => "wirtinger",
        Command::Homs { .. } => "homs",
        Command::Colorings { .. } => "colorings",
        Command::Ideal { .. } => "ideal",
        Command::Dim { .. } => "dim",
        Command::Compare { .. } => "compare",
        Command::LemmaDemo { .. } => "lemma-demo",
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Parse { knot } => cmd_parse(knot),
        Command::Wirtinger { knot } => cmd_wirtinger(knot),
        Command::Homs { knot, group, conjugacy, max_search, separate } => {
            cmd_homs(knot, group, *conjugacy, *max_search, separate.as_deref())
        }
        Command::Colorings { knot, n } => cmd_colorings(knot, *n),
        Command::Ideal { knot, model } => cmd_ideal(knot, model),
        Command::Dim { knot, model, budget } => cmd_dim(knot, model, budget),
        Command::Compare { a, b, format, model, budget } => cmd_compare(a, b, *format, model, budget),
        Command::LemmaDemo { budget } => Ok(cmd_lemma_demo(budget)),
    };
    match result {
        Ok(o) => {
            if cli.json {
                let mut json = json!({ "schema": 1, "command": command_name(&cli.command), "exit_code": o.code });
                if let (Value::Object(dst), Value::Object(src)) = (&mut json, o.json) {
                    dst.extend(src);
                }
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&json).expect("report serializes"));
            } else {
                let _ = write!(out, "{}", o.text);
            }
            o.code
        }
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}
