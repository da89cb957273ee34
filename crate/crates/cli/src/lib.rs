//! Command-line surface for the `qclosed` library. Every command builds a
//! JSON value; `--format text` renders the same value as indented text.

use std::path::Path;

use anyhow::{bail, ensure, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qclosed::antimatroid::check_word;
use qclosed::arquiver::{emit_dot, enumerate_preprojectives, vanishing_powers};
use qclosed::grassmann::verify_le_theorem;
use qclosed::leftmost::{category_of, leftmost_positions, parse_missing, word_from_missing, Base};
use qclosed::preproj::PreprojAlgebra;
use qclosed::repkit::{Catalogue, IndecSet};
use qclosed::sortable::{c_sorting_blocks, inversion_set, SortingContext};
use qclosed::verify::{run_suite, Suite, SuiteConfig, MAX_GROUP};
use qclosed::{Quiver, SubcategorySpec, WeylElement, WeylGroup, Word};

/// Longest base word accepted by `verify-antimatroid`.
pub const MAX_ANTIMATROID_WORD: usize = 20;
/// Longest base word over an infinite group.
pub const MAX_ANTIMATROID_WORD_INFINITE: usize = 12;
/// Largest finite group `verify-antimatroid` enumerates.
pub const MAX_ANTIMATROID_GROUP: usize = 6000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "qclosed",
    version,
    about = "Weyl group elements and cofinite quotient-closed subcategories"
)]
pub struct Cli {
    /// Built-in name (A1..A8, D4..D6, E6..E8, triangle, kronecker), a JSON
    /// file, or inline JSON {"n": 3, "arrows": [[1, 2], [2, 3]]}.
    #[arg(long, global = true, default_value = "A3")]
    pub quiver: String,
    /// Prime characteristic for representation computations.
    #[arg(long, global = true, default_value_t = 5)]
    pub p: u32,
    /// Seed for the random construction of indecomposables.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of tau^-1 layers shown for non-Dynkin quivers.
    #[arg(long, global = true, default_value_t = 50)]
    pub kmax: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Missing modules of the subcategory attached to a word.
    W2cat {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Word read off a missing list such as "P1 P2 P3 t-1P2".
    Cat2w {
        #[arg(long, allow_hyphen_values = true)]
        missing: String,
    },
    /// Dimension vectors of the preprojective component.
    Table,
    /// The ideal I_w of the preprojective algebra.
    Ideal {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// c-sorting data and the torsion-class criterion.
    Sorting {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// `n` for the le suite (needs `--k`).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Leftmost subwords of the rectangle word versus bad <=.
    VerifyLe {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Feasible sets of leftmost subwords of a base word.
    VerifyAntimatroid {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
}

/// Result of a command: text for stdout and the exit code (0 pass, 1
/// counterexample).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub code: u8,
}

pub fn parse_args<I, T>(args: I) -> Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    Cli::try_parse_from(args)
}

/// Accepts a built-in name, inline JSON or a path to a JSON file.
pub fn resolve_quiver(spec: &str) -> Result<Quiver> {
    let t = spec.trim();
    if t.starts_with('{') {
        return Quiver::from_json(t).context("inline quiver JSON");
    }
    if let Ok(q) = Quiver::builtin(t) {
        return Ok(q);
    }
    let path = Path::new(t);
    if path.is_file() {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        return Quiver::from_json(&text).with_context(|| format!("parsing {}", path.display()));
    }
    bail!("{t:?} is neither a built-in quiver, inline JSON, nor a readable file")
}

pub fn run(cli: &Cli) -> Result<Output> {
    let quiver = resolve_quiver(&cli.quiver)?;
    let (value, code, dot) = match &cli.command {
        Command::W2cat { word } => w2cat(cli, &quiver, word)?,
        Command::Cat2w { missing } => (cat2w(cli, &quiver, missing)?, 0, None),
        Command::Table => table(cli, &quiver)?,
        Command::Ideal { word } => (ideal(cli, &quiver, word)?, 0, None),
        Command::Sorting { word } => (sorting(&quiver, word)?, 0, None),
        Command::Verify { suite, n, k } => verify(cli, &quiver, suite, *n, *k)?,
        Command::VerifyLe { n, k } => {
            let report = verify_le_theorem(*n, *k)?;
            let code = u8::from(!report.holds());
            (json!(report), code, None)
        }
        Command::VerifyAntimatroid { word } => verify_antimatroid(&quiver, word)?,
    };
    let stdout = match cli.format {
        Format::Json => serde_json::to_string_pretty(&value)? + "\n",
        Format::Text => render_text(&value),
        Format::Dot => match dot {
            Some(d) => d,
            None => bail!("--format dot is only available for w2cat and table"),
        },
    };
    Ok(Output { stdout, code })
}

fn parse_word(text: &str) -> Result<Word> {
    Word::parse(text).with_context(|| format!("parsing word {text:?}"))
}

fn element(group: &WeylGroup, text: &str) -> Result<(Word, WeylElement)> {
    let word = parse_word(text)?;
    let w = group.evaluate(&word)?;
    Ok((word, w))
}

fn labels(spec: &SubcategorySpec) -> Vec<String> {
    spec.missing().iter().map(ToString::to_string).collect()
}

fn cat_labels(cat: &Catalogue, s: &IndecSet) -> Vec<String> {
    s.iter().map(|&i| cat.label(i).to_string()).collect()
}

fn table_for(quiver: &Quiver, kmax: usize, spec: Option<&SubcategorySpec>) -> String {
    let needed = spec
        .and_then(|s| s.missing().iter().map(|i| i.k).max())
        .unwrap_or(0);
    emit_dot(&enumerate_preprojectives(quiver, kmax.max(needed)), spec)
}

fn w2cat(cli: &Cli, quiver: &Quiver, text: &str) -> Result<(Value, u8, Option<String>)> {
    let group = WeylGroup::new(quiver);
    let (word, w) = element(&group, text)?;
    let positions = leftmost_positions(&group, &w, Base::CInfinity)?;
    let spec = category_of(&group, &w)?;
    let value = json!({
        "quiver": quiver.to_string(),
        "word": word,
        "reduced": word.len() == w.length(),
        "element": group.report(&w),
        "positions": positions.as_slice(),
        "missing": labels(&spec),
        "missing_json": spec.missing(),
    });
    let dot = table_for(quiver, cli.kmax, Some(&spec));
    Ok((value, 0, Some(dot)))
}

fn cat2w(cli: &Cli, quiver: &Quiver, text: &str) -> Result<Value> {
    let list = parse_missing(text)?;
    let n = quiver.n();
    let vanish = vanishing_powers(quiver);
    for idx in &list {
        ensure!(idx.j <= n, "{idx}: vertex {} is outside 1..={n}", idx.j);
        if let Some(v) = &vanish {
            ensure!(idx.k < v[idx.j - 1], "{idx} is the zero module");
        }
    }
    let spec = SubcategorySpec::new(list);
    let word = word_from_missing(&spec);
    let group = WeylGroup::new(quiver);
    let w = group.evaluate(&word)?;
    let reduced = w.length() == word.len();
    let consistent = category_of(&group, &w).is_ok_and(|c| c == spec);
    let quotient_closed = if quiver.is_dynkin() {
        let cat = Catalogue::new(quiver, cli.p, cli.seed)?;
        let missing = cat
            .indices_of_labels(spec.missing())
            .map_err(|i| anyhow::anyhow!("{i} is not an indecomposable"))?;
        Some(cat.is_quotient_closed(&cat.complement(&missing)))
    } else {
        None
    };
    Ok(json!({
        "quiver": quiver.to_string(),
        "missing": labels(&spec),
        "word": word,
        "reduced": reduced,
        "element": group.report(&w),
        "leftmost_for_element": consistent,
        "quotient_closed": quotient_closed,
    }))
}

fn table(cli: &Cli, quiver: &Quiver) -> Result<(Value, u8, Option<String>)> {
    let table = enumerate_preprojectives(quiver, cli.kmax);
    let value = json!({
        "quiver": quiver.to_string(),
        "dynkin": quiver.is_dynkin(),
        "rows": table.json_rows(),
        "vanishing": table.vanishing(),
    });
    Ok((value, 0, Some(emit_dot(&table, None))))
}

fn require_dynkin(quiver: &Quiver) -> Result<()> {
    ensure!(
        quiver.is_dynkin(),
        "{quiver} is not Dynkin; this command needs finite type"
    );
    Ok(())
}

fn ideal(cli: &Cli, quiver: &Quiver, text: &str) -> Result<Value> {
    require_dynkin(quiver)?;
    let alg = PreprojAlgebra::build(quiver, cli.p)?;
    let (word, w) = element(alg.group(), text)?;
    let ideal = alg.ideal_of(&w)?;
    let cat = Catalogue::new(quiver, cli.p, cli.seed)?;
    let summands = alg.c_of(&cat, &w)?;
    let quotient = alg.c_of_quotient(&cat, &w)?;
    let leftmost = category_of(alg.group(), &w)?;
    let roots =
        |set: &IndecSet| -> Vec<_> { set.iter().map(|&i| cat.rep(i).dim_vector()).collect() };
    Ok(json!({
        "quiver": quiver.to_string(),
        "w": word,
        "element": alg.group().report(&w),
        "dim_Pi": alg.dim(),
        "dim_Iw": ideal.dim(),
        "bigraded_dim_Iw": alg.bigraded_dims(&ideal),
        "C_of": roots(&summands),
        "C_of_quotient": roots(&quotient),
        "C_of_labels": cat_labels(&cat, &summands),
        "C_of_quotient_labels": cat_labels(&cat, &quotient),
        "missing": labels(&leftmost),
    }))
}

fn sorting(quiver: &Quiver, text: &str) -> Result<Value> {
    require_dynkin(quiver)?;
    let group = WeylGroup::new(quiver);
    let ctx = SortingContext::new(&group, MAX_GROUP)
        .with_context(|| format!("{quiver} is too large for sorting"))?;
    let (_, w) = element(&group, text)?;
    let inv: Vec<_> = inversion_set(&group, &w).into_iter().collect();
    let report = ctx.report(&w)?;
    Ok(json!({
        "quiver": quiver.to_string(),
        "w": report.w,
        "c_sortable": report.c_sortable,
        "sort_c": report.sort_c,
        "torsion": report.torsion,
        "blocks": c_sorting_blocks(&group, &w),
        "inversions": inv,
    }))
}

fn verify(
    cli: &Cli,
    quiver: &Quiver,
    suite: &str,
    n: Option<usize>,
    k: Option<usize>,
) -> Result<(Value, u8, Option<String>)> {
    let suite: Suite = suite.parse()?;
    let le = match (n, k) {
        (Some(n), Some(k)) => Some((n, k)),
        (None, None) => None,
        _ => bail!("--n and --k must be given together"),
    };
    let cfg = SuiteConfig {
        p: cli.p,
        seed: cli.seed,
        le,
    };
    let report = run_suite(quiver, suite, &cfg)?;
    let code = u8::from(!report.passed());
    Ok((json!(report), code, None))
}

fn verify_antimatroid(quiver: &Quiver, text: &str) -> Result<(Value, u8, Option<String>)> {
    let word = parse_word(text)?;
    let group = WeylGroup::new(quiver);
    if quiver.is_dynkin() {
        ensure!(
            word.len() <= MAX_ANTIMATROID_WORD,
            "base word longer than {MAX_ANTIMATROID_WORD} letters"
        );
        group
            .enumerate(MAX_ANTIMATROID_GROUP)
            .with_context(|| format!("{quiver} has more than {MAX_ANTIMATROID_GROUP} elements"))?;
    } else {
        ensure!(
            word.len() <= MAX_ANTIMATROID_WORD_INFINITE,
            "base word longer than {MAX_ANTIMATROID_WORD_INFINITE} letters over an infinite group"
        );
    }
    let report = check_word(&group, &word)?;
    let value = json!({
        "quiver": quiver.to_string(),
        "word": report.word,
        "feasible_sets": report.feasible_sets,
        "expressible_elements": report.expressible_elements,
        "accessible": report.accessible,
        "antimatroid": report.antimatroid,
        "supersolvable": report.supersolvable,
        "counterexample": report.counterexample,
    });
    Ok((value, u8::from(!report.holds()), None))
}

/// Indented `key: value` rendering of a JSON value.
pub fn render_text(value: &Value) -> String {
    let mut out = String::new();
    render(value, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.is_empty() => Some("-".into()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => Some(
            a.iter()
                .map(|x| scalar(x).unwrap_or_default())
                .collect::<Vec<_>>()
                .join(" "),
        ),
        _ => None,
    }
}

fn render(value: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match value {
        Value::Object(map) => {
            for (key, v) in map {
                match scalar(v) {
                    Some(s) => out.push_str(&format!("{pad}{key}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        render(v, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                match scalar(v) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}[{}]\n", i + 1));
                        render(v, depth + 1, out);
                    }
                }
            }
        }
        v => out.push_str(&format!("{pad}{}\n", scalar(v).unwrap_or_default())),
    }
}
