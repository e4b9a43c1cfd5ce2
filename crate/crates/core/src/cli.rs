//! Command-line front end. [`run`] takes the argument list and the three
//! standard streams so it can be driven from tests.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::ops::RangeInclusive;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::enumerate::{
    count_by_perimeter, count_parity_split, enumerate_by_perimeter, excess_e, RefinementKey, MAX_ENUMERATION_PERIMETER,
};
use crate::identities::{run_all, run_check, Depths, IdentityError, TheoremReport};
use crate::partition::{ConstraintClass, Partition};
use crate::series::{evaluate, expand, gf_of_class, Var};
use crate::tables::paired_table;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Overrides the default truncation order of `gf`.
pub const QBOUND_ENV: &str = "HOOKCOMB_QBOUND_DEFAULT";
const QBOUND_FALLBACK: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "hookcomb", version, about = "Partitions graded by their largest hook length")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List every partition of a class with the given perimeter.
    Enumerate(EnumerateArgs),
    /// Exact counts by perimeter.
    Count(CountArgs),
    /// Expand a class generating function.
    Gf(GfArgs),
    /// Run theorem checks.
    Verify(VerifyArgs),
    /// Print one of the paired example tables.
    Table(TableArgs),
    /// Read a JSON array of partitions from stdin and echo them canonically.
    Validate(FormatArg),
}

#[derive(Debug, Args)]
struct FormatArg {
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    #[arg(long)]
    perimeter: usize,
    #[arg(long, default_value = "any")]
    class: ConstraintClass,
    /// Keep partitions with exactly this many parts.
    #[arg(long, group = "refine")]
    parts: Option<u32>,
    /// Keep partitions with this largest part.
    #[arg(long, group = "refine")]
    largest: Option<u32>,
    /// Keep partitions with this rank.
    #[arg(long, group = "refine", allow_hyphen_values = true)]
    rank: Option<i64>,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Debug, Args)]
struct CountArgs {
    /// A single perimeter `n` or an inclusive range `a..b`.
    #[arg(long, value_parser = parse_range)]
    perimeter: RangeInclusive<usize>,
    #[arg(long, default_value = "any")]
    class: ConstraintClass,
    /// Add the even/odd length split of distinct partitions and e(n).
    #[arg(long)]
    split_parity: bool,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Debug, Args)]
struct GfArgs {
    #[arg(long)]
    class: ConstraintClass,
    #[arg(long)]
    qbound: Option<u32>,
    /// Integer values for x and/or y, e.g. `x=1,y=-1`.
    #[arg(long, value_parser = parse_eval, allow_hyphen_values = true)]
    eval: Option<Assignment>,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// A check id, or `all`.
    check: String,
    #[arg(long)]
    max_n: Option<u32>,
    #[arg(long)]
    qbound: Option<u32>,
    #[arg(long)]
    max_size: Option<u32>,
    #[arg(long)]
    d: Option<u32>,
    #[arg(long)]
    class: Option<ConstraintClass>,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Debug, Args)]
struct TableArgs {
    id: u32,
    #[command(flatten)]
    format: FormatArg,
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| format!("`{t}` is not a positive integer"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let n = num(s)?;
            (n, n)
        }
    };
    if lo > hi {
        return Err(format!("empty range `{s}`"));
    }
    Ok(lo..=hi)
}

#[derive(Debug, Clone)]
struct Assignment(Vec<(Var, i64)>);

fn parse_eval(s: &str) -> Result<Assignment, String> {
    s.split(',')
        .map(|item| {
            let (name, value) = item
                .split_once('=')
                .ok_or_else(|| format!("`{item}` is not of the form var=value"))?;
            let var = match Var::from_name(name.trim()) {
                Some(v @ (Var::X | Var::Y)) => v,
                _ => return Err(format!("`{name}` is not x or y")),
            };
            let value = value
                .trim()
                .parse::<i64>()
                .map_err(|_| format!("`{value}` is not an integer"))?;
            Ok((var, value))
        })
        .collect::<Result<_, _>>()
        .map(Assignment)
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

type Outcome = Result<i32, String>;

/// Parses `args` (program name first) and executes the command. Returns
/// the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let mut io = Io {
        out: stdout,
        err: stderr,
    };
    let outcome = match cli.command {
        Command::Enumerate(a) => cmd_enumerate(a, &mut io),
        Command::Count(a) => cmd_count(a, &mut io),
        Command::Gf(a) => cmd_gf(a, &mut io),
        Command::Verify(a) => cmd_verify(a, &mut io),
        Command::Table(a) => cmd_table(a, &mut io),
        Command::Validate(a) => cmd_validate(a, stdin, &mut io),
    };
    match outcome {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(io.err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn emit(io: &mut Io<'_>, text: &str) -> Outcome {
    io.out.write_all(text.as_bytes()).map_err(|e| e.to_string())?;
    Ok(EXIT_OK)
}

fn partitions_output(list: &[Partition], format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => list.iter().map(|p| format!("{p}\n")).collect(),
        OutputFormat::Json => format!("{}\n", serde_json::to_string(list).expect("serializable")),
        OutputFormat::Csv => {
            let mut s = String::from("partition,size,length,largest,perimeter\n");
            for p in list {
                s.push_str(&format!(
                    "\"{p}\",{},{},{},{}\n",
                    p.size(),
                    p.len(),
                    p.largest(),
                    p.perimeter()
                ));
            }
            s
        }
    }
}

fn check_perimeter(n: usize) -> Result<(), String> {
    if (1..=MAX_ENUMERATION_PERIMETER).contains(&n) {
        Ok(())
    } else {
        Err(format!(
            "perimeter {n} outside the enumerable range 1..={MAX_ENUMERATION_PERIMETER}"
        ))
    }
}

fn cmd_enumerate(a: EnumerateArgs, io: &mut Io<'_>) -> Outcome {
    check_perimeter(a.perimeter)?;
    let key = match (a.parts, a.largest, a.rank) {
        (Some(k), _, _) => Some(RefinementKey::NumParts(k)),
        (_, Some(m), _) => Some(RefinementKey::LargestPart(m)),
        (_, _, Some(r)) => Some(RefinementKey::Rank(r)),
        _ => None,
    };
    let list: Vec<Partition> = enumerate_by_perimeter(a.perimeter, a.class)
        .filter(|p| key.is_none_or(|k| k.matches(p)))
        .collect();
    emit(io, &partitions_output(&list, a.format.format))
}

fn cmd_count(a: CountArgs, io: &mut Io<'_>) -> Outcome {
    if a.split_parity && a.class != ConstraintClass::Distinct {
        return Err("--split-parity applies to --class distinct only".into());
    }
    let mut rows: Vec<Vec<String>> = Vec::new();
    for n in a.perimeter.clone() {
        let mut row = vec![n.to_string(), count_by_perimeter(n, a.class).to_string()];
        if a.split_parity {
            let split = count_parity_split(n);
            row.push(split.even.to_string());
            row.push(split.odd.to_string());
            row.push(excess_e(n as u64).to_string());
        }
        rows.push(row);
    }
    let mut header = vec!["n", "count"];
    if a.split_parity {
        header.extend(["even", "odd", "e"]);
    }
    let text = match a.format.format {
        OutputFormat::Text => rows.iter().map(|r| format!("{}\n", r.join("\t"))).collect(),
        OutputFormat::Csv => std::iter::once(header.join(","))
            .chain(rows.iter().map(|r| r.join(",")))
            .map(|l| l + "\n")
            .collect(),
        OutputFormat::Json => {
            let objects: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    let mut m = serde_json::Map::new();
                    m.insert("n".into(), json!(r[0].parse::<u64>().expect("numeric")));
                    for (h, v) in header.iter().zip(r).skip(1) {
                        let value = if *h == "e" {
                            json!(v.parse::<i64>().expect("numeric"))
                        } else {
                            json!(v)
                        };
                        m.insert((*h).into(), value);
                    }
                    serde_json::Value::Object(m)
                })
                .collect();
            json!({"class": a.class.to_string(), "rows": objects}).to_string() + "\n"
        }
    };
    emit(io, &text)
}

fn default_qbound() -> Result<u32, String> {
    match std::env::var(QBOUND_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("{QBOUND_ENV}=`{v}` is not a non-negative integer")),
        Err(_) => Ok(QBOUND_FALLBACK),
    }
}

fn cmd_gf(a: GfArgs, io: &mut Io<'_>) -> Outcome {
    let qbound = match a.qbound {
        Some(q) => q,
        None => default_qbound()?,
    };
    let mut series = expand(&gf_of_class(a.class), qbound).map_err(|e| e.to_string())?;
    if let Some(Assignment(values)) = &a.eval {
        series = evaluate(&series, values).map_err(|e| e.to_string())?;
    }
    let text = match a.format.format {
        OutputFormat::Text => format!("{series}\n"),
        OutputFormat::Json => format!("{}\n", series.to_json()),
        OutputFormat::Csv => {
            let mut s = String::from("coeff,x,y,q\n");
            for (m, c) in series.terms() {
                s.push_str(&format!(
                    "{c},{},{},{}\n",
                    m.exponent(Var::X),
                    m.exponent(Var::Y),
                    m.exponent(Var::Q)
                ));
            }
            s
        }
    };
    emit(io, &text)
}

fn reports_output(reports: &[TheoremReport], format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => {
            let mut s: String = reports.iter().map(|r| format!("{r}\n")).collect();
            let passed = reports.iter().filter(|r| r.passed()).count();
            s.push_str(&format!("{passed}/{} checks passed\n", reports.len()));
            s
        }
        OutputFormat::Json => format!("{}\n", serde_json::to_string_pretty(reports).expect("serializable")),
        OutputFormat::Csv => {
            let mut s = String::from("check_id,params,status,counterexample\n");
            for r in reports {
                let params = serde_json::to_string(&r.params)
                    .expect("serializable")
                    .replace('"', "\"\"");
                let cx = r
                    .counterexample
                    .as_ref()
                    .map(|c| c.to_string().replace('"', "\"\""))
                    .unwrap_or_default();
                s.push_str(&format!("{},\"{params}\",{},\"{cx}\"\n", r.check_id, r.status));
            }
            s
        }
    }
}

fn cmd_verify(a: VerifyArgs, io: &mut Io<'_>) -> Outcome {
    let depths = Depths {
        max_n: a.max_n,
        qbound: a.qbound,
        max_size: a.max_size,
        d: a.d,
        class: a.class,
    };
    let result = if a.check == "all" {
        run_all(&depths)
    } else {
        run_check(&a.check, &depths)
    };
    let reports = match result {
        Ok(r) => r,
        Err(IdentityError::UnknownCheck(id)) => {
            return Err(format!(
                "unknown check `{id}`; expected `all` or one of: {}",
                crate::identities::CHECK_IDS.join(", ")
            ))
        }
        Err(e) => return Err(e.to_string()),
    };
    emit(io, &reports_output(&reports, a.format.format))?;
    Ok(if reports.iter().all(TheoremReport::passed) {
        EXIT_OK
    } else {
        EXIT_FAILED
    })
}

fn cmd_table(a: TableArgs, io: &mut Io<'_>) -> Outcome {
    let table = paired_table(a.id).map_err(|e| e.to_string())?;
    let text = match a.format.format {
        OutputFormat::Text => table.to_string(),
        OutputFormat::Csv => table.to_csv(),
        OutputFormat::Json => format!("{}\n", serde_json::to_string(&table).expect("serializable")),
    };
    emit(io, &text)
}

fn cmd_validate(a: FormatArg, stdin: &mut dyn Read, io: &mut Io<'_>) -> Outcome {
    let mut input = String::new();
    stdin.read_to_string(&mut input).map_err(|e| e.to_string())?;
    let list: Vec<Partition> = serde_json::from_str(&input).map_err(|e| format!("invalid partition list: {e}"))?;
    if let Err(e) = writeln!(io.err, "{} partitions valid", list.len()) {
        return Err(e.to_string());
    }
    emit(io, &partitions_output(&list, a.format))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut input = stdin.as_bytes();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let argv = std::iter::once("hookcomb").chain(args.iter().copied());
        let code = run(argv, &mut input, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn enumerate_listing() {
        let (code, out, _) = call(&["enumerate", "--perimeter", "7", "--class", "ddistinct:2"], "");
        assert_eq!(code, 0);
        assert_eq!(out, "7\n6,4\n6,3\n6,2\n6,1\n5,3,1\n");
        let (_, out, _) = call(&["enumerate", "--perimeter", "1", "--class", "any"], "");
        assert_eq!(out, "1\n");
        let (_, out, _) = call(
            &["enumerate", "--perimeter", "9", "--class", "distinct", "--parts", "4"],
            "",
        );
        assert_eq!(out.lines().count(), 10);
    }

    #[test]
    fn count_rows() {
        let (code, out, _) = call(&["count", "--perimeter", "1..10", "--class", "distinct"], "");
        assert_eq!(code, 0);
        let counts: Vec<&str> = out.lines().map(|l| l.split('\t').nth(1).unwrap()).collect();
        assert_eq!(counts, ["1", "1", "2", "3", "5", "8", "13", "21", "34", "55"]);
        let (_, out, _) = call(&["count", "--perimeter", "3", "--class", "any"], "");
        assert_eq!(out, "3\t4\n");
        let (_, out, _) = call(
            &["count", "--perimeter", "1..6", "--class", "distinct", "--split-parity"],
            "",
        );
        let e: Vec<&str> = out.lines().map(|l| l.split('\t').next_back().unwrap()).collect();
        assert_eq!(e, ["-1", "-1", "0", "1", "1", "0"]);
    }

    #[test]
    fn gf_expansions() {
        let (_, out, _) = call(&["gf", "--class", "distinct", "--qbound", "3"], "");
        assert_eq!(out, "x*y*q + x^2*y*q^2 + x^2*y^2*q^3 + x^3*y*q^3\n");
        let (_, out, _) = call(&["gf", "--class", "any", "--qbound", "4", "--eval", "x=1,y=1"], "");
        assert_eq!(out, "q + 2*q^2 + 4*q^3 + 8*q^4\n");
        let (_, out, _) = call(
            &["gf", "--class", "distinct", "--qbound", "6", "--eval", "x=1,y=-1"],
            "",
        );
        assert_eq!(out, "-q - q^2 + q^4 + q^5\n");
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["verify", "no-such-check"], "").0, 2);
        assert_eq!(call(&["table", "9"], "").0, 2);
        assert_eq!(
            call(&["enumerate", "--perimeter", "5", "--class", "ddistinct:0"], "").0,
            2
        );
        assert_eq!(call(&["enumerate", "--perimeter", "0"], "").0, 2);
        assert_eq!(call(&["count", "--perimeter", "4..2"], "").0, 2);
        assert_eq!(call(&["gf", "--class", "any", "--eval", "q=2"], "").0, 2);
        assert_eq!(call(&["validate"], "[[1,2]]").0, 2);
        let (code, _, err) = call(&["frobnicate"], "");
        assert_eq!(code, 2);
        assert!(!err.is_empty());
    }

    #[test]
    fn verify_single_check() {
        let (code, out, _) = call(&["verify", "pentagonal-analogue", "--max-n", "30"], "");
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "PASS pentagonal-analogue enumeration_max=16 max_n=30\n1/1 checks passed\n"
        );
    }

    #[test]
    fn validate_round_trip() {
        let (_, json, _) = call(
            &["enumerate", "--perimeter", "5", "--class", "odd", "--format", "json"],
            "",
        );
        let (code, out, _) = call(&["validate", "--format", "json"], &json);
        assert_eq!(code, 0);
        assert_eq!(out, json);
    }
}
