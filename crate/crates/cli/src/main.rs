//! `rhcob`: order classification, correction terms, lattice embeddings and
//! the catalog table from the command line.
//!
//! # Manifold grammar
//!
//! ```text
//! manifold := ['-'] (name | seifert | surgery) | chain
//! name     := 'L_' p '_' q | 'D_' p '_' q | ('T' | 'O' | 'I') '_' n
//! seifert  := '(' int ';' [leg (',' leg)*] ')'        leg := alpha '/' beta
//! surgery  := 'surgery(' knot ',' rational ')'
//! knot     := 'T(' int ',' int ')' ['^m']
//! rational := int ['/' int]
//! chain    := 'chain:' int (',' int)*
//! ```
//!
//! Examples: `T_27`, `-O_35`, `I_49`, `L_9_2`, `D_7_3`, `(3; 2/1, 3/2, 5/1)`,
//! `surgery(T(2,3), 77/12)`, `surgery(T(2,3)^m, -49/9)`, `chain:2,2,2,3`.
//! A leading `-` reverses orientation. `embed` also accepts the path of a
//! Gram JSON file `{"rank": n, "matrix": [[..], ..]}`.
//!
//! # Output
//!
//! JSON output is a document `{command, inputs, version, results}` with a
//! `timing` member only under `--timing`. Exact values are `a/b` strings.
//!
//! # Exit codes
//!
//! `0` verdict reached, `1` other error, `2` parse error, `3` search budget
//! exhausted.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rhcob::dinv::{d_lens_table, d_table, DInvariantTable};
use rhcob::lattice::{all_embeddings, find_embedding, EmbeddingOutcome, GramLattice, SearchBudget};
use rhcob::numtheory::is_perfect_square;
use rhcob::obstruct::{classify_order, table_rows, Caps, Classification, OrderVerdict};
use rhcob::report;
use rhcob::seifert::{Family, Lens, SphericalName};
use rhcob::surgery::{extendable_spinc, spin_label, surgery_of_seifert, SurgeryDescription};
use rhcob::text::{parse_manifold, Manifold};
use rhcob::{Error, Integer};

#[derive(Parser)]
#[command(name = "rhcob", version, about = "Rational homology cobordism orders of spherical 3-manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order of a manifold with the obstructions behind it.
    Classify(ClassifyArgs),
    /// Correction terms.
    D(DArgs),
    /// Embedding search into the diagonal lattice.
    Embed(EmbedArgs),
    /// Orders of the T, O, I and D families.
    Table(TableArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct CapsArgs {
    /// Copies tried by the order searches.
    #[arg(long, default_value_t = 2)]
    n_max: u32,
    /// Node budget of each embedding search.
    #[arg(long, default_value_t = SearchBudget::default().nodes)]
    budget: u64,
}

impl CapsArgs {
    fn caps(&self) -> Caps {
        Caps {
            n_max: self.n_max,
            budget: SearchBudget::nodes(self.budget),
        }
    }
}

#[derive(Args)]
struct ClassifyArgs {
    /// Names, Seifert invariants or trefoil surgeries.
    #[arg(required = true)]
    manifolds: Vec<String>,
    #[command(flatten)]
    caps: CapsArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Include wall-clock time in JSON output.
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct DArgs {
    manifold: String,
    /// Every label (the default).
    #[arg(long, conflicts_with_all = ["label", "extendable", "spin"])]
    all: bool,
    /// Only these labels.
    #[arg(long, num_args = 1..)]
    label: Vec<Integer>,
    /// Labels of spin^c structures that could extend over a rational ball.
    #[arg(long, conflicts_with_all = ["label", "spin"])]
    extendable: bool,
    /// The spin label, for odd |H1|.
    #[arg(long, conflicts_with = "label")]
    spin: bool,
    /// Append decimal approximations with this many digits.
    #[arg(long, num_args = 0..=1, default_missing_value = "6")]
    decimal: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct EmbedArgs {
    /// Manifold name, `chain:a1,a2,..`, or a Gram JSON file.
    input: String,
    /// Target rank; defaults to the rank of the summed lattice.
    #[arg(long)]
    rank: Option<usize>,
    /// Number of copies of the lattice.
    #[arg(long, default_value_t = 1)]
    copies: usize,
    /// List every embedding up to signed permutations of the target.
    #[arg(long)]
    enumerate: bool,
    #[arg(long, default_value_t = SearchBudget::default().nodes)]
    budget: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, default_value_t = 12)]
    b_max: i64,
    #[command(flatten)]
    caps: CapsArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    timing: bool,
}

enum Failure {
    Core(Error, Option<String>),
    Inconclusive(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e, None)
    }
}

fn parse(input: &str) -> Result<Manifold, Failure> {
    parse_manifold(input).map_err(|e| Failure::Core(e, Some(input.to_string())))
}

struct Output {
    text: String,
    inconclusive: bool,
}

fn document(command: &str, inputs: Value, results: Value, timing: Option<Instant>) -> String {
    let mut doc = json!({
        "command": command,
        "inputs": inputs,
        "version": env!("CARGO_PKG_VERSION"),
        "results": results,
    });
    if let Some(t) = timing {
        doc["timing"] = json!({"millis": t.elapsed().as_millis() as u64});
    }
    let mut s = serde_json::to_string_pretty(&doc).expect("json");
    s.push('\n');
    s
}

fn catalog_name(m: &Manifold) -> Result<SphericalName, Error> {
    m.spherical_name()
}

fn classify(a: &ClassifyArgs) -> Result<Output, Failure> {
    let start = Instant::now();
    let caps = a.caps.caps();
    let mut results: Vec<Classification> = Vec::new();
    for input in &a.manifolds {
        let name = catalog_name(&parse(input)?)?;
        results.push(classify_order(&name, &caps)?);
    }
    let inconclusive = results.iter().any(|c| c.is_inconclusive());
    let text = match a.format {
        Format::Json => document(
            "classify",
            json!({
                "manifolds": a.manifolds,
                "n_max": caps.n_max,
                "budget": caps.budget.nodes,
            }),
            Value::Array(results.iter().map(report::classification_json).collect()),
            a.timing.then_some(start),
        ),
        Format::Csv => report::classification_csv(&results)?,
        Format::Text => results
            .iter()
            .map(report::classification_text)
            .collect::<Vec<_>>()
            .join("\n"),
    };
    Ok(Output { text, inconclusive })
}

fn surgery_for(m: &Manifold) -> Result<Option<SurgeryDescription>, Error> {
    match m {
        Manifold::Surgery(d) => Ok(Some(d.clone())),
        Manifold::Seifert(s) => surgery_of_seifert(s).map(Some),
        Manifold::Name(n) if n.family == Family::C => Ok(None),
        Manifold::Name(n) => surgery_of_seifert(&n.seifert()?).map(Some),
        Manifold::Chain(_) => Err(Error::domain("correction terms need a manifold, not a chain")),
    }
}

fn correction_table(m: &Manifold) -> Result<DInvariantTable, Error> {
    if let Some(desc) = surgery_for(m)? {
        return d_table(&desc);
    }
    let Manifold::Name(n) = m else { unreachable!() };
    let lens = Lens::new(n.first.clone(), n.second.clone())?;
    let mut t = d_lens_table(&lens.p, &lens.q)?;
    if n.mirror {
        t.values.iter_mut().for_each(|d| *d = -d.clone());
        t.manifold = format!("-{}", t.manifold);
    }
    Ok(t)
}

fn d_labels(a: &DArgs, t: &DInvariantTable) -> Result<Vec<Integer>, Error> {
    if a.extendable {
        let m = is_perfect_square(&t.p)
            .ok_or_else(|| Error::domain(format!("|H1| = {} is not a square", t.p)))?;
        let mut out: Vec<Integer> = Vec::new();
        for set in extendable_spinc(&m, &t.q)? {
            for l in set {
                if !out.contains(&l) {
                    out.push(l);
                }
            }
        }
        Ok(out)
    } else if a.spin {
        Ok(vec![spin_label(&t.p, &t.q)?])
    } else if !a.label.is_empty() {
        Ok(a.label.clone())
    } else {
        let p: usize = t.values.len();
        Ok((0..p).map(Integer::from).collect())
    }
}

fn dcmd(a: &DArgs) -> Result<Output, Failure> {
    let start = Instant::now();
    let m = parse(&a.manifold)?;
    let t = correction_table(&m)?;
    let labels = d_labels(a, &t)?;
    let text = match a.format {
        Format::Json => document(
            "d",
            json!({
                "manifold": a.manifold,
                "selection": if a.extendable { "extendable" } else if a.spin { "spin" } else if a.label.is_empty() { "all" } else { "labels" },
            }),
            report::d_table_json(&t, &labels, a.decimal)?,
            a.timing.then_some(start),
        ),
        Format::Csv => report::d_table_csv(&t, &labels, a.decimal)?,
        Format::Text => {
            let mut s = format!("{}\n", t.manifold);
            for l in &labels {
                let d = t
                    .get(l)
                    .ok_or_else(|| Error::domain(format!("label {l} out of range 0..{}", t.p)))?;
                s.push_str(&format!("d({l}) = {}", report::frac(d)));
                if let Some(k) = a.decimal {
                    s.push_str(&format!("  {}", report::decimal(d, k)));
                }
                s.push('\n');
            }
            s
        }
    };
    Ok(Output {
        text,
        inconclusive: false,
    })
}

fn lattice_for(input: &str) -> Result<(GramLattice, String), Failure> {
    let path = std::path::Path::new(input);
    if path.is_file() {
        let s = std::fs::read_to_string(path).map_err(|e| Error::domain(format!("{input}: {e}")))?;
        let l = report::gram_from_json(&s).map_err(|e| Failure::Core(e, None))?;
        return Ok((l, format!("file {input}")));
    }
    match parse(input)? {
        Manifold::Chain(w) => Ok((GramLattice::chain(&w), format!("chain {w:?}"))),
        m => {
            let n = catalog_name(&m)?;
            if n.family == Family::C && !n.mirror {
                let lens = Lens::new(n.first.clone(), n.second.clone())?;
                return Ok((GramLattice::lens_chain(&lens)?, format!("chain of {lens}")));
            }
            let g = n.seifert()?.canonical_plumbing()?;
            Ok((GramLattice::from_plumbing(&g)?, format!("canonical plumbing of {n}")))
        }
    }
}

fn embed(a: &EmbedArgs) -> Result<Output, Failure> {
    let start = Instant::now();
    let (base, source) = lattice_for(&a.input)?;
    if a.copies == 0 {
        return Err(Error::domain("--copies must be at least 1").into());
    }
    let l = base.direct_sum(a.copies);
    let n = a.rank.unwrap_or(l.rank);
    let budget = SearchBudget::nodes(a.budget);
    let inputs = json!({
        "input": a.input,
        "source": source,
        "copies": a.copies,
        "rank": n,
        "budget": a.budget,
        "enumerate": a.enumerate,
    });
    let (result, text, inconclusive) = if a.enumerate {
        let all = match all_embeddings(&l, n, budget) {
            Ok(v) => v,
            Err(Error::Inconclusive { budget }) => {
                return Err(Failure::Inconclusive(format!("budget of {budget} nodes exhausted")))
            }
            Err(e) => return Err(e.into()),
        };
        let certs: Vec<Value> = all
            .iter()
            .map(|e| report::certificate_json(&e.certificate(&l)))
            .collect();
        let mut text = format!("{} embedding(s) of {source} x{} into rank {n}\n", all.len(), a.copies);
        for (i, e) in all.iter().enumerate() {
            text.push_str(&format!("#{}\n{e}", i + 1));
        }
        (
            json!({"lattice": report::gram_json(&l), "outcome": "enumerated", "count": all.len(), "embeddings": certs}),
            text,
            false,
        )
    } else {
        match find_embedding(&l, n, budget)? {
            EmbeddingOutcome::Found(e) => (
                json!({"lattice": report::gram_json(&l), "outcome": "found", "certificate": report::certificate_json(&e.certificate(&l))}),
                format!("embedding of {source} x{} into rank {n}\n{e}", a.copies),
                false,
            ),
            EmbeddingOutcome::None => (
                json!({"lattice": report::gram_json(&l), "outcome": "none"}),
                format!("none (exhaustive): {source} x{} into rank {n}\n", a.copies),
                false,
            ),
            EmbeddingOutcome::Inconclusive { nodes } => (
                json!({"lattice": report::gram_json(&l), "outcome": "inconclusive", "nodes": nodes}),
                format!("inconclusive after {nodes} nodes\n"),
                true,
            ),
        }
    };
    let text = match a.format {
        Format::Json => document("embed", inputs, result, a.timing.then_some(start)),
        Format::Text | Format::Csv => text,
    };
    Ok(Output { text, inconclusive })
}

fn table(a: &TableArgs) -> Result<Output, Failure> {
    let start = Instant::now();
    if a.b_max < 2 {
        return Err(Error::domain("--b-max must be at least 2").into());
    }
    let caps = a.caps.caps();
    let rows = table_rows(a.b_max, &caps)?;
    let inconclusive = rows.iter().any(|r| r.order == OrderVerdict::Unknown.to_string());
    let text = match a.format {
        Format::Json => document(
            "table",
            json!({"b_max": a.b_max, "n_max": caps.n_max, "budget": caps.budget.nodes}),
            report::table_json(&rows),
            a.timing.then_some(start),
        ),
        Format::Csv => report::table_csv(&rows)?,
        Format::Text => {
            let mut s = String::new();
            for r in &rows {
                s.push_str(&format!(
                    "{:<5} {:<10} {:>3}  {:<28} {:<16} {}\n",
                    r.family, r.name, r.b, r.seifert, r.order, r.proved_in
                ));
            }
            s
        }
    };
    Ok(Output { text, inconclusive })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match &cli.command {
        Command::Classify(a) => classify(a),
        Command::D(a) => dcmd(a),
        Command::Embed(a) => embed(a),
        Command::Table(a) => table(a),
    };
    match out {
        Ok(o) => {
            print!("{}", o.text);
            if o.inconclusive {
                eprintln!("inconclusive: search budget exhausted");
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Inconclusive(msg)) => {
            eprintln!("inconclusive: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Core(e, input)) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse { pos, .. } => {
                    if let Some(s) = input {
                        eprintln!("  {s}\n  {}^", " ".repeat(pos));
                    }
                    ExitCode::from(2)
                }
                Error::Inconclusive { .. } => ExitCode::from(3),
                _ => ExitCode::from(1),
            }
        }
    }
}
