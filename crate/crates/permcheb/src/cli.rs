//! Command-line surface over every module in the crate.
//!
//! Subcommands:
//!
//! * `oracle` — brute-force counts (or listings) for a constraint list,
//! * `formula` — a catalogued generating function as a canonical rational
//!   function,
//! * `series` — the coefficient series of such a function,
//! * `verify` — the formula-vs-enumeration check registry ([`crate::verify`]),
//! * `bijection` — the lattice-path bijection, in either direction,
//! * `transfer` — walk counts and the walk series of a transfer system,
//! * `cfrac` — the occurrence-counting continued fraction as a double series,
//! * `catalog` — the list of implemented generating-function families.
//!
//! Formula selection is a family keyword (`avoid`, `exactly`, `h`, `phi`,
//! `triple`, `gtriple`, `lp`) followed by one argument, or a bare pattern
//! literal, which implies `avoid`. `h` and `phi` are the
//! exactly-one-occurrence-of-132 families; `triple` and `gtriple` take
//! `k,m,l`; `lp` takes `p,k` (gap family plus the identity of length `k`) or
//! `tl:k,m` (length-4 gap family plus a two-layered pattern). The
//! alternating-sum identity is a relation between counts, not a generating
//! function, and is reachable as `verify --scope identity-check`.
//!
//! Exit codes: 0 success, 1 failed verification checks, 2 usage errors,
//! 3 resource-cap violations. [`run`] returns the rendered report together
//! with the exit code instead of printing, so tests can drive the whole
//! surface in-process; `--unsafe-N` is the one exception (it mutates the
//! process environment and is exercised against the spawned binary).

use std::fmt::Write as _;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::closed_forms::{self, Base};
use crate::dyck::{path_to_perm, perm_to_path, DyckPath};
use crate::exact::RatFun;
use crate::literal::{parse_constraint_set, parse_pattern, parse_single_pattern, ParsedPattern};
use crate::perm::PatternSpec;
use crate::transfer::{self, TransferSystem};
use crate::verify::{self, csv_field, TierFilter, VerifyConfig};
use crate::{cfrac, oracle, Error, Result};

/// Output rendering shared by every subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    /// Plain text, one value or row per line.
    #[default]
    Text,
    /// A single JSON object.
    Json,
    /// Comma-separated rows with a header line.
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "permcheb",
    version,
    about = "Exact enumeration of pattern-restricted permutations",
    disable_help_subcommand = true
)]
struct Cli {
    /// Raise the brute-force caps for this run (sets PERMCHEB_MAX_N).
    #[arg(long = "unsafe-N", global = true, value_name = "N")]
    unsafe_n: Option<usize>,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Count constraint-satisfying permutations by scanning S_n.
    Oracle {
        /// Constraint list, e.g. "avoid:132;exactly:1:tl:4,1".
        constraints: String,
        /// Highest length counted; the table covers S_0..=S_N.
        #[arg(short = 'N', long = "order", default_value_t = verify::DEFAULT_ORDER)]
        order: usize,
        /// List the matching members of S_LEN instead of counting.
        #[arg(long, value_name = "LEN")]
        list: Option<usize>,
        /// Output rendering.
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print a catalogued generating function as a canonical rational function.
    Formula {
        #[command(flatten)]
        selector: Selector,
        /// Output rendering.
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print coefficients 0..=N of a catalogued generating function.
    Series {
        #[command(flatten)]
        selector: Selector,
        /// Truncation order.
        #[arg(short = 'N', long = "order", default_value_t = verify::DEFAULT_ORDER)]
        order: usize,
        /// Output rendering.
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run formula-vs-enumeration checks and print the report.
    Verify {
        /// Check selection: "all", a family name, a check id, or an id prefix.
        #[arg(long, default_value = "all")]
        scope: String,
        /// Series order every check is verified to.
        #[arg(short = 'N', long = "order", default_value_t = verify::DEFAULT_ORDER)]
        order: usize,
        /// Restrict to one tier: "proved", "experimental", or "all".
        #[arg(long, default_value = "all")]
        tier: TierFilter,
        /// Attach per-check wall-clock times to the report.
        #[arg(long)]
        timings: bool,
        /// Output rendering.
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Map a 132-avoiding permutation to its lattice path, or a path back.
    Bijection {
        /// Permutation literal (digits, comma form, id:/tl:/layered:) or a
        /// path word over U and D.
        input: String,
        /// Output rendering.
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Expand a transfer system: walk counts and the walk series.
    Transfer {
        /// Built-in name (binary-tree, fibonacci-tree, succession-<k>,
        /// dyck-strip-<h>) or a rule-file path.
        system: String,
        /// Longest walk counted.
        #[arg(short = 'N', long = "order", default_value_t = 12)]
        order: usize,
        /// Output rendering.
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Occurrence-counting continued fraction, truncated to a double series.
    Cfrac {
        /// Length of the increasing pattern whose occurrences z tracks.
        k: usize,
        /// Truncation order in x.
        #[arg(short = 'N', long = "order", default_value_t = verify::DEFAULT_ORDER)]
        order: usize,
        /// Truncation order in z.
        #[arg(short = 'r', long = "z-order", default_value_t = 3)]
        z_order: usize,
        /// Output rendering.
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// List every generating-function family the crate implements.
    Catalog {
        /// Output rendering.
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

/// Formula selection shared by `formula` and `series`.
#[derive(Debug, Args)]
struct Selector {
    /// Family keyword and argument, or a bare pattern literal.
    #[arg(value_name = "SELECTOR", num_args = 0..=2)]
    selector: Vec<String>,
    /// Pattern literal, as an alternative to the positional argument.
    #[arg(long, value_name = "LITERAL")]
    pattern: Option<String>,
    /// Enumeration base: permutations avoiding 132 or avoiding 321.
    #[arg(long, value_name = "132|321")]
    base: Option<String>,
    /// Occurrence count for the `exactly` family.
    #[arg(short = 'r', value_name = "COUNT")]
    occurrences: Option<u64>,
}

/// The formula families the `formula` and `series` subcommands dispatch on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Family {
    Avoid,
    Exactly,
    H,
    Phi,
    Triple,
    Gtriple,
    Lp,
}

/// Maps a positional word to its family, if it is a family keyword.
fn family_keyword(word: &str) -> Option<Family> {
    match word {
        "avoid" => Some(Family::Avoid),
        "exactly" => Some(Family::Exactly),
        "h" => Some(Family::H),
        "phi" => Some(Family::Phi),
        "triple" => Some(Family::Triple),
        "gtriple" => Some(Family::Gtriple),
        "lp" => Some(Family::Lp),
        _ => None,
    }
}

/// Shorthand for a usage error (process exit code 2).
fn usage(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

impl Selector {
    /// Splits the positional words and `--pattern` into family + argument.
    fn family_and_arg(&self) -> Result<(Family, String)> {
        let flag = self.pattern.clone();
        match self.selector.as_slice() {
            [] => {
                let arg = flag
                    .ok_or_else(|| usage("expected a family keyword or a pattern literal"))?;
                Ok((Family::Avoid, arg))
            }
            [word] => match family_keyword(word) {
                Some(f) => {
                    let arg = flag.ok_or_else(|| {
                        usage(format!(
                            "family `{word}` needs an argument (positional or --pattern)"
                        ))
                    })?;
                    Ok((f, arg))
                }
                None if flag.is_some() => {
                    Err(usage("give the pattern positionally or via --pattern, not both"))
                }
                None => Ok((Family::Avoid, word.clone())),
            },
            [word, arg] => {
                let f = family_keyword(word).ok_or_else(|| {
                    usage(format!(
                        "unknown family `{word}`; expected avoid, exactly, h, phi, \
                         triple, gtriple or lp"
                    ))
                })?;
                if flag.is_some() {
                    return Err(usage(
                        "give the pattern positionally or via --pattern, not both",
                    ));
                }
                Ok((f, arg.clone()))
            }
            _ => Err(usage("too many positional arguments")),
        }
    }

    /// Parses `--base`, defaulting to the 132-avoiders.
    fn parse_base(&self) -> Result<Base> {
        match self.base.as_deref() {
            None | Some("132") => Ok(Base::B132),
            Some("321") => Ok(Base::B321),
            Some(other) => Err(usage(format!("unknown base `{other}`; expected 132 or 321"))),
        }
    }

    /// Rejects `--base 321` for families defined over the 132-avoiders only.
    fn base_132_only(&self, family: &str) -> Result<()> {
        if self.parse_base()? == Base::B321 {
            return Err(usage(format!("family `{family}` is defined over base 132 only")));
        }
        Ok(())
    }

    /// Rejects `-r` outside the `exactly` family.
    fn no_occurrences(&self, family: &str) -> Result<()> {
        if self.occurrences.is_some() {
            return Err(usage(format!(
                "-r only applies to the `exactly` family, not `{family}`"
            )));
        }
        Ok(())
    }

    /// Resolves the selection to a display label and the generating function.
    fn resolve(&self) -> Result<(String, RatFun)> {
        let (family, arg) = self.family_and_arg()?;
        match family {
            Family::Avoid => {
                self.no_occurrences("avoid")?;
                let base = self.parse_base()?;
                let spec = match parse_pattern(&arg)? {
                    ParsedPattern::Single(spec) => spec,
                    ParsedPattern::LpFamily(_) => {
                        return Err(usage("the gap family has its own keyword: `lp <p>,<k>`"))
                    }
                };
                let f = closed_forms::gf_avoid(base, &spec)?;
                Ok((format!("avoid {arg} in base {base}"), f))
            }
            Family::Exactly => {
                let base = self.parse_base()?;
                let r = self.occurrences.unwrap_or(1);
                let spec = parse_single_pattern(&arg)?;
                let f = closed_forms::gf_exactly(base, &spec, r)?;
                Ok((format!("exactly {r} of {arg} in base {base}"), f))
            }
            Family::H => {
                self.base_132_only("h")?;
                self.no_occurrences("h")?;
                let spec = parse_single_pattern(&arg)?;
                let f = closed_forms::gf_one_132(&spec)?;
                Ok((format!("one 132, avoid {arg}"), f))
            }
            Family::Phi => {
                self.base_132_only("phi")?;
                self.no_occurrences("phi")?;
                let spec = parse_single_pattern(&arg)?;
                let f = closed_forms::gf_one_132_one_pattern(&spec)?;
                Ok((format!("one 132, one {arg}"), f))
            }
            Family::Triple => {
                self.base_132_only("triple")?;
                self.no_occurrences("triple")?;
                let (k, m, l) = triple_params(&arg)?;
                let f = closed_forms::gf_avoid_both(k, m, l)?;
                Ok((format!("avoid tl:{k},{m} and id:{l}"), f))
            }
            Family::Gtriple => {
                self.base_132_only("gtriple")?;
                self.no_occurrences("gtriple")?;
                let (k, m, l) = triple_params(&arg)?;
                let f = closed_forms::gf_triple_exactly(k, m, l)?;
                Ok((format!("avoid tl:{k},{m}, one id:{l}"), f))
            }
            Family::Lp => {
                self.base_132_only("lp")?;
                self.no_occurrences("lp")?;
                if arg.contains(':') {
                    match parse_single_pattern(&arg)? {
                        PatternSpec::TwoLayered(k, m) => {
                            let f = closed_forms::gf_avoid_l4_two_layered(k, m)?;
                            Ok((format!("avoid the length-4 gap family and tl:{k},{m}"), f))
                        }
                        _ => Err(usage("lp takes `p,k` or a two-layered literal `tl:k,m`")),
                    }
                } else {
                    let (p, k) = pair_params(&arg)?;
                    let f = closed_forms::gf_avoid_lp(p, k)?;
                    Ok((format!("avoid the length-{p} gap family and id:{k}"), f))
                }
            }
        }
    }
}

/// Parses a comma-separated list of integers.
fn int_list(text: &str, what: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|w| {
            w.trim()
                .parse::<usize>()
                .map_err(|_| usage(format!("expected integers for {what}, got `{text}`")))
        })
        .collect()
}

/// Parses the `k,m,l` argument of the triple families.
fn triple_params(text: &str) -> Result<(usize, usize, usize)> {
    match int_list(text, "k,m,l")?.as_slice() {
        &[k, m, l] => Ok((k, m, l)),
        _ => Err(usage(format!("expected three integers k,m,l, got `{text}`"))),
    }
}

/// Parses the `p,k` argument of the gap family.
fn pair_params(text: &str) -> Result<(usize, usize)> {
    match int_list(text, "p,k")?.as_slice() {
        &[p, k] => Ok((p, k)),
        _ => Err(usage(format!("expected two integers p,k, got `{text}`"))),
    }
}

/// Compact JSON on a single newline-terminated line.
fn json_line(v: serde_json::Value) -> String {
    format!("{v}\n")
}

/// Renders a `u64` slice as a comma-joined list.
fn joined(values: &[u64]) -> String {
    values.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn cmd_oracle(constraints: &str, order: usize, list: Option<usize>, format: Format) -> Result<String> {
    let cs = parse_constraint_set(constraints)?;
    if let Some(n) = list {
        let members = oracle::list_matching(&cs, n)?;
        return Ok(match format {
            Format::Text => {
                let mut out = String::new();
                for p in &members {
                    writeln!(out, "{p}").expect("string write");
                }
                out
            }
            Format::Json => {
                let words: Vec<String> = members.iter().map(ToString::to_string).collect();
                json_line(json!({ "constraint": constraints, "n": n, "members": words }))
            }
            Format::Csv => {
                let mut out = String::from("permutation\n");
                for p in &members {
                    writeln!(out, "{}", csv_field(&p.to_string())).expect("string write");
                }
                out
            }
        });
    }
    let table = oracle::count_upto(&cs, order)?;
    Ok(match format {
        Format::Text => format!("{}\n", joined(&table.counts)),
        Format::Json => format!("{}\n", table.to_json()),
        Format::Csv => table.to_csv(),
    })
}

fn cmd_formula(selector: &Selector, format: Format) -> Result<String> {
    let (selection, f) = selector.resolve()?;
    Ok(match format {
        Format::Text => format!("{f}\n"),
        Format::Json => json_line(json!({ "selection": selection, "formula": f.to_string() })),
        Format::Csv => format!(
            "selection,formula\n{},{}\n",
            csv_field(&selection),
            csv_field(&f.to_string())
        ),
    })
}

fn cmd_series(selector: &Selector, order: usize, format: Format) -> Result<String> {
    let (selection, f) = selector.resolve()?;
    let series = f.series(order)?;
    let words: Vec<String> = (0..=order).map(|n| series.coeff(n).to_string()).collect();
    Ok(match format {
        Format::Text => format!("{}\n", words.join(",")),
        Format::Json => {
            json_line(json!({ "selection": selection, "order": order, "coefficients": words }))
        }
        Format::Csv => {
            let mut out = String::from("n,coefficient\n");
            for (n, w) in words.iter().enumerate() {
                writeln!(out, "{n},{w}").expect("string write");
            }
            out
        }
    })
}

fn cmd_verify(
    scope: &str,
    order: usize,
    tier: TierFilter,
    timings: bool,
    format: Format,
) -> Result<(String, i32)> {
    let cfg = VerifyConfig { n_max: order, tier, timings, parallel: true };
    let report = verify::run_scope(scope, &cfg)?;
    let text = match format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    Ok((text, report.exit_code()))
}

fn cmd_bijection(input: &str, format: Format) -> Result<String> {
    let from_path = !input.is_empty() && input.chars().all(|c| matches!(c, 'U' | 'D'));
    let (perm, path) = if from_path {
        let path = DyckPath::parse(input)?;
        (path_to_perm(&path)?, path)
    } else {
        let perm = parse_single_pattern(input)?.materialize()?;
        let path = perm_to_path(&perm)?;
        (perm, path)
    };
    Ok(match format {
        Format::Text if from_path => format!("{perm}\n"),
        Format::Text => format!("{path}\n"),
        Format::Json => json_line(json!({
            "permutation": perm.to_string(),
            "path": path.to_string(),
            "semilength": path.semilength(),
            "max_height": path.max_height(),
        })),
        Format::Csv => format!(
            "permutation,path,semilength,max_height\n{},{},{},{}\n",
            csv_field(&perm.to_string()),
            path,
            path.semilength(),
            path.max_height()
        ),
    })
}

/// Resolves a built-in system name or a rule-file path. Rule files and the
/// built-in trees also report their level counts.
fn resolve_system(name: &str, order: usize) -> Result<(Option<Vec<u64>>, TransferSystem)> {
    if name == "binary-tree" {
        let t = transfer::binary_tree();
        return Ok((Some(t.level_counts(order)), t.to_system()));
    }
    if name == "fibonacci-tree" {
        let t = transfer::fibonacci_tree();
        return Ok((Some(t.level_counts(order)), t.to_system()));
    }
    if let Some(word) = name.strip_prefix("succession-") {
        let k = word
            .parse()
            .map_err(|_| usage(format!("bad succession parameter in `{name}`")))?;
        return Ok((None, transfer::succession_system(k)?));
    }
    if let Some(word) = name.strip_prefix("dyck-strip-") {
        let h = word
            .parse()
            .map_err(|_| usage(format!("bad strip height in `{name}`")))?;
        return Ok((None, transfer::dyck_strip_system(h)?));
    }
    let text = std::fs::read_to_string(name)
        .map_err(|e| usage(format!("cannot read rule file `{name}`: {e}")))?;
    let tree = transfer::GeneratingTree::parse(&text)?;
    Ok((Some(tree.level_counts(order)), tree.to_system()))
}

fn cmd_transfer(system: &str, order: usize, format: Format) -> Result<String> {
    let (levels, sys) = resolve_system(system, order)?;
    let start = sys.start();
    let open = sys.open_walk_counts(start, order);
    let closed = sys.closed_walk_counts(start, order);
    let gf = sys.walk_gf(start, start)?;
    Ok(match format {
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "labels: {}", sys.labels().join(",")).expect("string write");
            writeln!(out, "start: {}", sys.labels()[start]).expect("string write");
            if let Some(l) = &levels {
                writeln!(out, "levels: {}", joined(l)).expect("string write");
            }
            writeln!(out, "open: {}", joined(&open)).expect("string write");
            writeln!(out, "closed: {}", joined(&closed)).expect("string write");
            writeln!(out, "walk gf: {gf}").expect("string write");
            out
        }
        Format::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("labels".into(), json!(sys.labels()));
            obj.insert("start".into(), json!(sys.labels()[start]));
            if let Some(l) = &levels {
                obj.insert("levels".into(), json!(l));
            }
            obj.insert("open".into(), json!(open));
            obj.insert("closed".into(), json!(closed));
            obj.insert("walk_gf".into(), json!(gf.to_string()));
            json_line(serde_json::Value::Object(obj))
        }
        Format::Csv => {
            let mut out = String::from("length,open,closed\n");
            for n in 0..=order {
                writeln!(out, "{n},{},{}", open[n], closed[n]).expect("string write");
            }
            out
        }
    })
}

fn cmd_cfrac(k: usize, order: usize, z_order: usize, format: Format) -> Result<String> {
    let b = cfrac::cf_biseries(cfrac::CfSpec::new(k, order, z_order)?)?;
    let row_words = |r: usize| -> Vec<String> {
        let row = b.z_row(r);
        (0..=b.x_order()).map(|n| row.coeff(n).to_string()).collect()
    };
    Ok(match format {
        Format::Text => {
            let mut out = String::new();
            for r in 0..=b.z_order() {
                writeln!(out, "z^{r}: {}", row_words(r).join(",")).expect("string write");
            }
            out
        }
        Format::Json => {
            let rows: Vec<Vec<String>> = (0..=b.z_order()).map(row_words).collect();
            json_line(json!({
                "pattern_len": k,
                "x_order": b.x_order(),
                "z_order": b.z_order(),
                "rows": rows,
            }))
        }
        Format::Csv => cfrac::biseries_csv(&b),
    })
}

fn cmd_catalog(format: Format) -> Result<String> {
    let entries = closed_forms::catalog();
    Ok(match format {
        Format::Text => {
            let idw = entries.iter().map(|e| e.id.len()).max().unwrap_or(0);
            let famw = entries.iter().map(|e| e.family.len()).max().unwrap_or(0);
            let parw = entries.iter().map(|e| e.parameters.len()).max().unwrap_or(0);
            let mut out = String::new();
            for e in &entries {
                writeln!(
                    out,
                    "{:<idw$}  {:<famw$}  {:<parw$}  {}",
                    e.id, e.family, e.parameters, e.description
                )
                .expect("string write");
            }
            out
        }
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&entries).expect("plain data serializes")
        ),
        Format::Csv => {
            let mut out = String::from("id,family,parameters,description\n");
            for e in &entries {
                writeln!(
                    out,
                    "{},{},{},{}",
                    csv_field(e.id),
                    csv_field(e.family),
                    csv_field(e.parameters),
                    csv_field(e.description)
                )
                .expect("string write");
            }
            out
        }
    })
}

fn dispatch(cmd: Cmd) -> Result<(String, i32)> {
    match cmd {
        Cmd::Oracle { constraints, order, list, format } => {
            Ok((cmd_oracle(&constraints, order, list, format)?, 0))
        }
        Cmd::Formula { selector, format } => Ok((cmd_formula(&selector, format)?, 0)),
        Cmd::Series { selector, order, format } => {
            Ok((cmd_series(&selector, order, format)?, 0))
        }
        Cmd::Verify { scope, order, tier, timings, format } => {
            cmd_verify(&scope, order, tier, timings, format)
        }
        Cmd::Bijection { input, format } => Ok((cmd_bijection(&input, format)?, 0)),
        Cmd::Transfer { system, order, format } => {
            Ok((cmd_transfer(&system, order, format)?, 0))
        }
        Cmd::Cfrac { k, order, z_order, format } => {
            Ok((cmd_cfrac(k, order, z_order, format)?, 0))
        }
        Cmd::Catalog { format } => Ok((cmd_catalog(format)?, 0)),
    }
}

/// Maps a library error to the process exit code.
fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::ResourceCap { .. } => 3,
        _ => 2,
    }
}

/// Parses `args` (including the program name) and executes the command;
/// returns the rendered output and the process exit code.
pub fn run(args: &[String]) -> (String, i32) {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            return (e.render().to_string(), code);
        }
    };
    if let Some(n) = cli.unsafe_n {
        // Still single-threaded here; verify's workers start later.
        std::env::set_var("PERMCHEB_MAX_N", n.to_string());
    }
    match dispatch(cli.command) {
        Ok(done) => done,
        Err(e) => (format!("error: {e}\n"), exit_code_for(&e)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_words(words: &[&str]) -> (String, i32) {
        let args: Vec<String> = std::iter::once("permcheb")
            .chain(words.iter().copied())
            .map(String::from)
            .collect();
        run(&args)
    }

    #[test]
    fn formula_two_layered_example() {
        let (out, code) = run_words(&["formula", "tl:3,1", "--base", "132"]);
        assert_eq!((out.as_str(), code), ("(1 - x)/(1 - 2*x)\n", 0));
    }

    // Coefficient of x^n is (n-3)(n-4)*2^(n-5): 2, 12, 48, 160 from n = 5.
    #[test]
    fn series_one_132_one_identity_example() {
        let (out, code) = run_words(&["series", "phi", "id:3", "-N", "8"]);
        assert_eq!((out.as_str(), code), ("0,0,0,0,0,2,12,48,160\n", 0));
    }

    #[test]
    fn oracle_formats() {
        let (text, c0) = run_words(&["oracle", "avoid:132;avoid:id:3", "-N", "6"]);
        assert_eq!((text.as_str(), c0), ("1,1,2,4,8,16,32\n", 0));
        let (json, c1) =
            run_words(&["oracle", "avoid:132;avoid:id:3", "-N", "4", "--format", "json"]);
        assert_eq!(c1, 0);
        assert!(json.contains("\"counts\":[1,1,2,4,8]"), "{json}");
        let (csv, c2) =
            run_words(&["oracle", "avoid:132;avoid:id:3", "-N", "2", "--format", "csv"]);
        assert_eq!((csv.as_str(), c2), ("n,count\n0,1\n1,1\n2,2\n", 0));
    }

    #[test]
    fn oracle_list_prints_members() {
        let (out, code) = run_words(&["oracle", "avoid:132;avoid:id:3", "--list", "3"]);
        assert_eq!((out.as_str(), code), ("213\n231\n312\n321\n", 0));
    }

    #[test]
    fn bijection_roundtrips_the_worked_example() {
        let (path, c0) = run_words(&["bijection", "534261"]);
        assert_eq!((path.as_str(), c0), ("UUDUUDDUDDUD\n", 0));
        let (perm, c1) = run_words(&["bijection", "UUDUUDDUDDUD"]);
        assert_eq!((perm.as_str(), c1), ("534261\n", 0));
        let (json, c2) = run_words(&["bijection", "534261", "--format", "json"]);
        assert_eq!(c2, 0);
        assert!(json.contains("\"max_height\":3"), "{json}");
    }

    #[test]
    fn transfer_fibonacci_levels_and_walks() {
        let (out, code) = run_words(&["transfer", "fibonacci-tree", "-N", "6"]);
        assert_eq!(code, 0);
        assert!(out.contains("levels: 1,1,2,3,5,8,13\n"), "{out}");
        let (csv, c1) = run_words(&["transfer", "succession-4", "-N", "3", "--format", "csv"]);
        assert_eq!(c1, 0);
        assert!(csv.starts_with("length,open,closed\n0,1,1\n"), "{csv}");
    }

    #[test]
    fn cfrac_avoidance_row_is_all_ones() {
        let (out, code) = run_words(&["cfrac", "2", "-N", "5", "-r", "1"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("z^0: 1,1,1,1,1,1\n"), "{out}");
    }

    #[test]
    fn catalog_lists_every_family() {
        let (text, code) = run_words(&["catalog"]);
        assert_eq!(code, 0);
        assert_eq!(text.lines().count(), closed_forms::catalog().len());
        let (json, c1) = run_words(&["catalog", "--format", "json"]);
        assert_eq!(c1, 0);
        assert!(json.contains("\"id\": \"avoid-identity\""), "{json}");
    }

    #[test]
    fn verify_scope_reports_and_exits_zero() {
        let (out, code) = run_words(&["verify", "--scope", "h", "-N", "6", "--format", "csv"]);
        assert_eq!(code, 0);
        assert!(
            out.starts_with("theorem,params,tier,status,n,expected,actual,runtime_ms\n"),
            "{out}"
        );
        assert!(out.contains("one-132-identity,"), "{out}");
    }

    #[test]
    fn identical_invocations_are_byte_identical() {
        let words = &["verify", "--scope", "ladder", "-N", "6", "--format", "json"];
        assert_eq!(run_words(words), run_words(words));
    }

    #[test]
    fn usage_errors_exit_two() {
        for words in [
            &["formula"][..],
            &["formula", "nosuch", "id:3"][..],
            &["formula", "id:3", "-r", "2"][..],
            &["formula", "h", "id:3", "--base", "321"][..],
            &["formula", "lp", "id:3"][..],
            &["formula", "tl:3,1", "--pattern", "id:3"][..],
            &["series", "phi"][..],
            &["oracle", "avoid:132;avoid:132"][..],
            &["bijection", "12UD"][..],
            &["verify", "--scope", "nosuchscope"][..],
        ] {
            let (out, code) = run_words(words);
            assert_eq!(code, 2, "expected usage failure for {words:?}: {out}");
        }
    }

    #[test]
    fn resource_caps_exit_three() {
        let (out, code) = run_words(&["oracle", "avoid:132", "-N", "40"]);
        assert_eq!(code, 3);
        assert!(out.contains("resource cap"), "{out}");
        assert_eq!(run_words(&["verify", "--scope", "h", "-N", "40"]).1, 3);
        assert_eq!(run_words(&["oracle", "avoid:132", "--list", "40"]).1, 3);
    }

    #[test]
    fn help_and_version_exit_zero() {
        assert_eq!(run_words(&["--help"]).1, 0);
        assert_eq!(run_words(&["--version"]).1, 0);
        assert_eq!(run_words(&[]).1, 2);
        assert_eq!(run_words(&["nosuchcmd"]).1, 2);
    }

    // One working invocation per catalogued formula id; the relation-shaped
    // entry is reachable through the verify registry instead.
    #[test]
    fn every_catalogued_id_is_reachable() {
        for e in closed_forms::catalog() {
            let words: Vec<&str> = match e.id {
                "avoid-identity" => vec!["formula", "id:4"],
                "avoid-two-layered" => vec!["formula", "tl:4,2"],
                "avoid-three-layered" => vec!["formula", "layered:4,2,1"],
                "avoid-wedge" => vec!["formula", "32415"],
                "avoid-general" => vec!["formula", "3241"],
                "avoid-321-two-layered" => vec!["formula", "tl:4,1", "--base", "321"],
                "avoid-pair" => vec!["formula", "triple", "4,1,4"],
                "exactly-identity" => vec!["formula", "exactly", "id:3", "-r", "2"],
                "exactly-two-layered" => vec!["formula", "exactly", "tl:4,1"],
                "exactly-321-two-layered" => {
                    vec!["formula", "exactly", "tl:4,1", "--base", "321", "-r", "1"]
                }
                "exactly-identity-within-pair" => vec!["formula", "gtriple", "4,1,3"],
                "one-132-identity" => vec!["formula", "h", "id:4"],
                "one-132-two-layered" => vec!["formula", "h", "tl:4,2"],
                "one-132-one-identity" => vec!["formula", "phi", "id:3"],
                "one-132-one-two-layered" => vec!["formula", "phi", "tl:4,1"],
                "avoid-gap-family" => vec!["formula", "lp", "4,3"],
                "avoid-gap-family-two-layered" => vec!["formula", "lp", "tl:4,2"],
                "alternating-sum-identity" => {
                    vec!["verify", "--scope", "identity-check", "-N", "6"]
                }
                other => panic!("no CLI example for catalogued id {other}"),
            };
            let (out, code) = run_words(&words);
            assert_eq!(code, 0, "{}: {out}", e.id);
        }
    }
}
