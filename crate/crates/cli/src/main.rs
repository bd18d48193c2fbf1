use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use steenrod::admissible::{element_excess, milnor_to_admissible, AdmissibleElement};
use steenrod::dual::{dual_filtration_basis, DualKind};
use steenrod::enumerate::admissible_words;
use steenrod::filtration::verify::{verify, Family, Ranges};
use steenrod::dual::verify::{verify_dual, DualFamily};
use steenrod::notation::{format_admissible, format_dual, format_element, format_monomial, format_word, parse_element, parse_word};
use steenrod::report::Report;
use steenrod::scheme::verify::{verify_scheme, SchemeFamily};
use steenrod::unstable::functors::UnstableContext;
use steenrod::unstable::verify::{verify_unstable, UnstableFamily, UnstableRanges};
use steenrod::{Element, Error, PrimeContext, SteenrodAlgebra};

#[derive(Parser, Debug)]
#[command(name = "steenrod", version, about = "Computations in the mod-p Steenrod algebra")]
struct Cli {
    /// The prime.
    #[arg(short, long, global = true, default_value_t = 2)]
    p: u32,

    /// Largest degree any computation may reach.
    #[arg(long, global = true)]
    cap: Option<u32>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Directory for cached change-of-basis matrices.
    #[arg(long, global = true, env = "STEENROD_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BasisKindArg {
    Admissible,
    Milnor,
    Filtration,
    Dual,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    Admissible,
    Milnor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DualKindArg {
    Monomial,
    Annihilator,
}

impl From<DualKindArg> for DualKind {
    fn from(k: DualKindArg) -> Self {
        match k {
            DualKindArg::Monomial => DualKind::Monomial,
            DualKindArg::Annihilator => DualKind::Annihilator,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List a basis in one degree.
    Basis {
        #[arg(long, value_enum)]
        kind: BasisKindArg,
        #[arg(short)]
        n: u32,
        /// Filtration level for the filtration and dual kinds.
        #[arg(short, default_value_t = 0, allow_negative_numbers = true)]
        i: i64,
        #[arg(long, value_enum, default_value_t = DualKindArg::Monomial)]
        dual_kind: DualKindArg,
    },
    /// Multiply two elements in the Milnor basis.
    Product { left: String, right: String },
    /// Express an element in another basis.
    Convert {
        #[arg(long, value_enum)]
        to: Target,
        expr: String,
    },
    /// Excess of a word or of an element.
    Excess {
        #[arg(long, conflicts_with = "expr")]
        word: Option<String>,
        expr: Option<String>,
    },
    /// Run a verification family and print one JSON record per instance.
    Verify {
        #[arg(long)]
        family: String,
        /// Filtration levels, `a..b` (inclusive) or a single level.
        #[arg(short, value_parser = parse_levels, allow_hyphen_values = true)]
        i: Option<(i64, i64)>,
        #[arg(long)]
        max_degree: Option<u32>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, value_enum, default_value_t = DualKindArg::Monomial)]
        dual_kind: DualKindArg,
    },
}

fn parse_levels(s: &str) -> Result<(i64, i64), String> {
    let bad = |_| format!("bad level range {s:?}");
    match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            Ok((a.trim().parse().map_err(bad)?, b.trim().parse().map_err(bad)?))
        }
        None => {
            let a = s.trim().parse().map_err(bad)?;
            Ok((a, a))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::CapExceeded { .. } | Error::Io(_) => 3,
        _ => 2,
    }
}

fn element_json(alg: &SteenrodAlgebra, a: &Element) -> Value {
    let terms: Vec<Value> = a
        .iter()
        .map(|(m, c)| json!({"coeff": c, "E": m.e.entries(), "R": m.r.entries()}))
        .collect();
    json!({
        "schema": 1,
        "p": alg.p(),
        "degree": a.require_homogeneous().ok().flatten(),
        "basis": "milnor",
        "terms": terms,
    })
}

fn admissible_json(p: u32, a: &AdmissibleElement) -> Value {
    let degree = a.keys().next().map(|w| w.degree(p));
    let terms: Vec<Value> = a
        .iter()
        .map(|(w, c)| json!({"coeff": c, "word": w.flat(), "text": format_word(p, w)}))
        .collect();
    json!({"schema": 1, "p": p, "degree": degree, "basis": "admissible", "terms": terms})
}

fn basis(alg: &SteenrodAlgebra, kind: BasisKindArg, n: u32, i: i64, dual_kind: DualKind) -> steenrod::Result<(Value, Vec<String>)> {
    let p = alg.p();
    alg.ctx().check_degree(n)?;
    let (name, entries): (&str, Vec<(String, Value)>) = match kind {
        BasisKindArg::Admissible => (
            "admissible",
            admissible_words(p, n)
                .iter()
                .map(|w| {
                    let e = w.excess(p);
                    (format!("{}  excess {e}", format_word(p, w)), json!({"word": w.flat(), "text": format_word(p, w), "excess": e}))
                })
                .collect(),
        ),
        BasisKindArg::Milnor => ("milnor", milnor_entries(alg, n, 0)?),
        BasisKindArg::Filtration => ("filtration", milnor_entries(alg, n, i)?),
        BasisKindArg::Dual => {
            let sub = dual_filtration_basis(alg, i, n, dual_kind)?;
            (
                "dual",
                sub.elements()
                    .iter()
                    .map(|u| (format_dual(u), json!({"text": format_dual(u)})))
                    .collect(),
            )
        }
    };
    let mut lines = vec![format!("# {name} basis, p = {p}, degree {n}{}: {} entries", level_note(kind, i), entries.len())];
    lines.extend(entries.iter().map(|(t, _)| t.clone()));
    let value = json!({
        "schema": 1,
        "p": p,
        "degree": n,
        "basis": name,
        "level": matches!(kind, BasisKindArg::Filtration | BasisKindArg::Dual).then_some(i),
        "count": entries.len(),
        "entries": entries.into_iter().map(|(_, v)| v).collect::<Vec<_>>(),
    });
    Ok((value, lines))
}

fn level_note(kind: BasisKindArg, i: i64) -> String {
    match kind {
        BasisKindArg::Filtration | BasisKindArg::Dual => format!(", level {i}"),
        _ => String::new(),
    }
}

fn milnor_entries(alg: &SteenrodAlgebra, n: u32, i: i64) -> steenrod::Result<Vec<(String, Value)>> {
    let p = alg.p();
    Ok(alg
        .basis(n)?
        .monomials
        .iter()
        .filter(|m| m.weight(p) as i64 >= i)
        .map(|m| {
            let w = m.weight(p);
            (
                format!("{}  weight {w}", format_monomial(p, m)),
                json!({"E": m.e.entries(), "R": m.r.entries(), "text": format_monomial(p, m), "weight": w}),
            )
        })
        .collect())
}

enum AnyFamily {
    Filtration(Family),
    Dual(DualFamily),
    Scheme(SchemeFamily),
    Unstable(UnstableFamily),
}

fn find_family(name: &str) -> Option<AnyFamily> {
    let name = name.to_ascii_lowercase();
    if let Some(f) = Family::ALL.into_iter().find(|f| f.name() == name) {
        return Some(AnyFamily::Filtration(f));
    }
    if let Some(f) = DualFamily::ALL.into_iter().find(|f| f.name() == name) {
        return Some(AnyFamily::Dual(f));
    }
    if let Some(f) = SchemeFamily::ALL.into_iter().find(|f| f.name() == name) {
        return Some(AnyFamily::Scheme(f));
    }
    UnstableFamily::ALL.into_iter().find(|f| f.name() == name).map(AnyFamily::Unstable)
}

fn run(cli: &Cli) -> Result<u8, Error> {
    let ctx = match cli.cap {
        Some(cap) => PrimeContext::new(cli.p, cap)?,
        None => PrimeContext::with_default_cap(cli.p)?,
    };
    let mut alg = SteenrodAlgebra::new(ctx);
    if let Some(dir) = &cli.cache_dir {
        alg = alg.with_cache_dir(dir.clone());
    }
    let p = alg.p();
    let emit = |value: Value, text: String| {
        match cli.format {
            Format::Json => println!("{value}"),
            Format::Text => println!("{text}"),
        }
    };
    match &cli.command {
        Command::Basis { kind, n, i, dual_kind } => {
            let (value, lines) = basis(&alg, *kind, *n, *i, (*dual_kind).into())?;
            emit(value, lines.join("\n"));
        }
        Command::Product { left, right } => {
            let a = parse_element(&alg, left)?;
            let b = parse_element(&alg, right)?;
            let c = alg.multiply(&a, &b)?;
            emit(element_json(&alg, &c), format_element(p, &c));
        }
        Command::Convert { to, expr } => {
            let a = parse_element(&alg, expr)?;
            match to {
                Target::Milnor => emit(element_json(&alg, &a), format_element(p, &a)),
                Target::Admissible => {
                    let x = milnor_to_admissible(&alg, &a)?;
                    emit(admissible_json(p, &x), format_admissible(p, &x));
                }
            }
        }
        Command::Excess { word, expr } => {
            let e = match (word, expr) {
                (Some(w), _) => parse_word(p, w)?.excess(p),
                (None, Some(x)) => element_excess(p, &milnor_to_admissible(&alg, &parse_element(&alg, x)?)?)?,
                (None, None) => return Err(Error::Invalid("give a word with --word or an element".into())),
            };
            emit(json!({"schema": 1, "p": p, "excess": e}), e.to_string());
        }
        Command::Verify {
            family,
            i,
            max_degree,
            samples,
            dual_kind,
        } => {
            let family_id = find_family(family).ok_or_else(|| Error::Invalid(format!("unknown family {family:?}")))?;
            let mut r = Ranges {
                seed: cli.seed,
                ..Ranges::default()
            };
            if let Some((a, b)) = i {
                r.levels = *a..=*b;
            }
            if let Some(d) = max_degree {
                r.max_degree = *d;
            }
            if let Some(s) = samples {
                r.samples = *s;
            }
            let start = Instant::now();
            let report: Report = match family_id {
                AnyFamily::Filtration(f) => verify(&alg, f, &r)?,
                AnyFamily::Dual(f) => verify_dual(&alg, f, &r, (*dual_kind).into())?,
                AnyFamily::Scheme(f) => verify_scheme(&alg, f, &r)?,
                AnyFamily::Unstable(f) => {
                    let ur = UnstableRanges {
                        top: max_degree.or(cli.cap).unwrap_or(UnstableRanges::default().top),
                        ..UnstableRanges::default()
                    };
                    verify_unstable(&UnstableContext::new(&alg), f, &ur)?
                }
            };
            let failed = report.failure_count();
            let summary = json!({"summary": {"family": family, "p": p, "checked": report.len(), "failed": failed}});
            match cli.format {
                Format::Json => {
                    print!("{}", report.to_jsonl());
                    println!("{summary}");
                }
                Format::Text => {
                    for rec in report.failures() {
                        println!("FAIL {}", serde_json::to_string(rec).unwrap_or_default());
                    }
                    println!("{family} p={p}: {} checked, {failed} failed", report.len());
                }
            }
            eprintln!("{family}: {:.3}s", start.elapsed().as_secs_f64());
            return Ok(u8::from(failed > 0));
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
