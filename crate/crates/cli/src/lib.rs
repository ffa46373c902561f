//! Command implementations for the `overpar` binary.
//!
//! Every command writes to the given streams and returns the process exit
//! code: 0 when everything checked out, 1 when a comparison failed, 2 for a
//! usage or configuration error.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use overpar::identities::closed_form_entry;
use overpar::{
    check_with, count_sep, enumerate_sep, lookup, registry, series_sep, CheckReport, Error, ExprTag,
    Perturbation, Rational, SepConfig, Variant,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const MAX_ORDER: i64 = 2000;
pub const ENUMERATION_GUARD: u64 = 100_000;

#[derive(Parser, Debug)]
#[command(name = "overpar", version, about = "Verify q-series identities for overpartitions separated by parity")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compare every expression of the selected identities coefficientwise.
    Verify(VerifyArgs),
    /// Coefficients of one generating function from its closed form and by enumeration.
    Table(TableArgs),
    /// List the members of one family.
    Enumerate(EnumerateArgs),
    /// Show the registry.
    List,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Identity ids (comma separated or repeated), or `all`.
    #[arg(long = "id", value_delimiter = ',', required = true)]
    pub ids: Vec<String>,
    /// Compare below q^order; defaults to each entry's own order.
    #[arg(long)]
    pub order: Option<i64>,
    #[arg(long)]
    pub json: bool,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Test hook: add q^k to one expression, written `tag:k`.
    #[arg(long, hide = true)]
    pub perturb: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Plain,
    Over,
    Mod,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Plain => Variant::Plain,
            VariantArg::Over => Variant::Overlined,
            VariantArg::Mod => Variant::Modified,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Csv,
    Json,
    Bfile,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// Family such as `od^eu`.
    #[arg(long)]
    pub family: String,
    #[arg(long, value_enum)]
    pub variant: VariantArg,
    #[arg(long, default_value_t = 100)]
    pub order: i64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub family: String,
    #[arg(long, value_enum)]
    pub variant: VariantArg,
    #[arg(long = "n")]
    pub n: u64,
    #[arg(long)]
    pub json: bool,
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let code = match cli.command {
        Command::Verify(a) => verify(&a, out, err),
        Command::Table(a) => table(&a, out, err),
        Command::Enumerate(a) => enumerate(&a, out, err),
        Command::List => list(out),
    };
    match code {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

type CmdResult = std::io::Result<i32>;

fn usage(err: &mut dyn Write, msg: impl std::fmt::Display) -> CmdResult {
    writeln!(err, "error: {msg}")?;
    Ok(EXIT_USAGE)
}

/// Clamp to `1..=MAX_ORDER`; `None` for a non-positive order.
fn effective_order(order: i64, err: &mut dyn Write) -> std::io::Result<Option<i64>> {
    if order < 1 {
        return Ok(None);
    }
    if order > MAX_ORDER {
        writeln!(err, "warning: order {order} capped at {MAX_ORDER} (cost grows quadratically)")?;
        return Ok(Some(MAX_ORDER));
    }
    Ok(Some(order))
}

fn parse_perturbation(s: &str) -> Option<Perturbation> {
    let (tag, k) = s.split_once(':')?;
    Some(Perturbation::new(tag.parse::<ExprTag>().ok()?, k.parse().ok()?))
}

pub fn verify(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let ids: Vec<String> = if args.ids.iter().any(|i| i == "all") {
        registry().iter().map(|e| e.id.clone()).collect()
    } else {
        args.ids.clone()
    };
    for id in &ids {
        if lookup(id).is_err() {
            let valid: Vec<&str> = registry().iter().map(|e| e.id.as_str()).collect();
            return usage(err, format!("unknown identity `{id}`; valid ids: all, {}", valid.join(", ")));
        }
    }
    let order = match args.order {
        Some(o) => match effective_order(o, err)? {
            Some(o) => Some(o),
            None => return usage(err, format!("order must be at least 1, got {o}")),
        },
        None => None,
    };
    if args.jobs < 1 {
        return usage(err, "--jobs must be at least 1");
    }
    let perturbation = match &args.perturb {
        Some(s) => match parse_perturbation(s) {
            Some(p) => Some(p),
            None => return usage(err, format!("bad perturbation `{s}`, expected tag:k")),
        },
        None => None,
    };

    let run_one = |id: &String| -> (String, i64, overpar::Result<CheckReport>) {
        let entry = lookup(id).expect("checked above");
        let o = order.unwrap_or(entry.default_order);
        (id.clone(), o, check_with(id, o, perturbation.as_ref()))
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(args.jobs).build() {
        Ok(p) => p,
        Err(e) => return usage(err, e),
    };
    let results: Vec<_> = pool.install(|| ids.par_iter().map(run_one).collect());

    let mut code = EXIT_PASS;
    let mut reports = Vec::new();
    let (mut passed, mut failed) = (0, 0);
    for (id, o, r) in results {
        match r {
            Ok(report) => {
                if report.passed() {
                    passed += 1;
                } else {
                    failed += 1;
                    code = code.max(EXIT_FAIL);
                }
                if !args.json {
                    writeln!(out, "{report}")?;
                }
                reports.push(report);
            }
            Err(e @ (Error::PreconditionViolated(_) | Error::UnknownIdentity(_))) => {
                writeln!(err, "error: {id}: {e}")?;
                code = EXIT_USAGE;
            }
            Err(e) => {
                failed += 1;
                writeln!(err, "{id} order {o}: FAIL ({e})")?;
                code = code.max(EXIT_FAIL);
            }
        }
    }
    if args.json {
        serde_json::to_writer_pretty(&mut *out, &reports)?;
        writeln!(out)?;
    } else {
        writeln!(out, "{passed} passed, {failed} failed")?;
    }
    Ok(code)
}

fn parse_family(s: &str, err: &mut dyn Write) -> std::io::Result<Option<SepConfig>> {
    match s.parse() {
        Ok(c) => Ok(Some(c)),
        Err(msg) => {
            writeln!(err, "error: {msg}")?;
            Ok(None)
        }
    }
}

/// Integers print plainly, anything else as `p/q`.
fn show(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn table(args: &TableArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let Some(cfg) = parse_family(&args.family, err)? else {
        return Ok(EXIT_USAGE);
    };
    let variant = Variant::from(args.variant);
    let Some(order) = effective_order(args.order, err)? else {
        return usage(err, format!("order must be at least 1, got {}", args.order));
    };
    let oracle = series_sep(&cfg, variant, order);

    if args.format == Format::Bfile {
        for n in 0..order {
            writeln!(out, "{n} {}", show(&oracle.coefficient(n).expect("oracle window")))?;
        }
        return Ok(EXIT_PASS);
    }

    let Some(entry) = closed_form_entry(&cfg, variant) else {
        return usage(err, format!("no closed form is registered for {variant} {cfg}"));
    };
    let closed = match entry.expression(ExprTag::Closed).expect("entry has a closed form").evaluate(0, order) {
        Ok(s) => s,
        Err(e) => return usage(err, format!("closed form for {variant} {cfg} unavailable to order {order}: {e}")),
    };
    let mut all_match = true;
    let rows: Vec<(i64, Rational, Rational)> = (0..order)
        .map(|n| (n, closed.coefficient(n).expect("evaluated to order"), oracle.coefficient(n).expect("oracle window")))
        .collect();
    match args.format {
        Format::Csv => writeln!(out, "n,closed,oracle,match")?,
        Format::Human => writeln!(out, "{:>5} {:>24} {:>24}  match    ({variant} {cfg}, {})", "n", "closed", "oracle", entry.id)?,
        _ => {}
    }
    let mut json_rows = Vec::new();
    for (n, c, o) in &rows {
        let ok = c == o && c.is_integer();
        all_match &= ok;
        match args.format {
            Format::Csv => writeln!(out, "{n},{},{},{ok}", show(c), show(o))?,
            Format::Human => writeln!(out, "{n:>5} {:>24} {:>24}  {ok}", show(c), show(o))?,
            Format::Json => json_rows.push(json!({"n": n, "closed": show(c), "oracle": show(o), "match": ok})),
            Format::Bfile => unreachable!(),
        }
    }
    if args.format == Format::Json {
        let doc = json!({
            "family": cfg.to_string(),
            "variant": variant.name(),
            "identity": entry.id,
            "order": order,
            "rows": json_rows,
        });
        serde_json::to_writer_pretty(&mut *out, &doc)?;
        writeln!(out)?;
    }
    Ok(if all_match { EXIT_PASS } else { EXIT_FAIL })
}

pub fn enumerate(args: &EnumerateArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let Some(cfg) = parse_family(&args.family, err)? else {
        return Ok(EXIT_USAGE);
    };
    let variant = Variant::from(args.variant);
    let count = count_sep(&cfg, variant, args.n);
    if count > ENUMERATION_GUARD.into() {
        return usage(
            err,
            format!("{count} objects exceed the listing limit of {ENUMERATION_GUARD}; use `table` for counts"),
        );
    }
    let list = enumerate_sep(&cfg, variant, args.n);
    if args.json {
        let parts: Vec<Vec<(u64, bool)>> = list
            .iter()
            .map(|p| p.parts.iter().map(|x| (x.size, x.overlined)).collect())
            .collect();
        serde_json::to_writer(&mut *out, &parts)?;
        writeln!(out)?;
    } else {
        for p in &list {
            writeln!(out, "{p}")?;
        }
    }
    Ok(EXIT_PASS)
}

pub fn list(out: &mut dyn Write) -> CmdResult {
    for e in registry() {
        writeln!(
            out,
            "{}\tmin_order={}\tdefault_order={}\t{}\n\t{}",
            e.id, e.min_order, e.default_order, e.description, e.anchor
        )?;
    }
    Ok(EXIT_PASS)
}
