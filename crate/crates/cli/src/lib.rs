//! The `compmonoid` command line.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use compmonoid_core::bijections::{
    bars_dots_decode, bars_dots_encode, fib_from_odd, odd_from_fib, subset_prime_construction,
    subset_prime_inverse, two_part_bijection, two_part_inverse, BarsDots,
};
use compmonoid_core::monoid::{census, count_census, factor_unique, is_free_up_to, Counterexample};
use compmonoid_core::verify::{
    dyck_count, export_bfile, identity, oeis_label, oracle_offset, oracle_sequence, verify_all,
    verify_identity, Params, Report,
};
use compmonoid_core::{Composition, Error, RationalGF, SubmonoidSpec};
use serde_json::json;

#[derive(Debug, Parser)]
#[command(
    name = "compmonoid",
    version,
    about = "Composition monoids and Fibonacci identities"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficients of a registered closed form or of `num / den`
    /// coefficient lists, e.g. "1,-1 / 1,-3,1".
    Expand {
        target: String,
        #[arg(long, default_value = "")]
        params: String,
        #[arg(short = 'N', long, default_value_t = 20)]
        order: usize,
    },
    /// Check one registered identity.
    Verify {
        id: String,
        #[arg(long, default_value = "")]
        params: String,
        #[arg(short = 'N', long, default_value_t = 40)]
        order: usize,
    },
    /// Check every default identity instance.
    VerifyAll {
        #[arg(short = 'N', long, default_value_t = 40)]
        order: usize,
    },
    /// Irreducible counts by weight.
    Primes {
        #[arg(long)]
        spec: String,
        #[arg(short = 'W', long, default_value_t = 10)]
        max: u64,
        /// List the irreducible words too (enumerates them).
        #[arg(long)]
        words: bool,
    },
    /// Member counts by weight.
    Members {
        #[arg(long)]
        spec: String,
        #[arg(short = 'W', long, default_value_t = 10)]
        max: u64,
        #[arg(long)]
        words: bool,
    },
    /// Factor a member into irreducibles.
    Factor {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        word: String,
    },
    /// Decide freeness through a weight bound.
    FreeCheck {
        #[arg(long)]
        spec: String,
        #[arg(short = 'W', long, default_value_t = 20)]
        max: u64,
    },
    /// Apply one of the bijections.
    Bijection {
        kind: BijectionKind,
        /// A composition, a bars-and-dots row, or `n:i,j,...` for subsets.
        input: String,
        #[arg(long, default_value = "")]
        params: String,
    },
    /// Dyck paths of bounded height, semilengths 0..=N.
    Dyck {
        #[arg(short = 'N', long, default_value_t = 12)]
        order: usize,
        #[arg(long, default_value_t = 3)]
        height: usize,
    },
    /// b-file of a reference sequence.
    Bfile {
        name: String,
        #[arg(long, default_value = "")]
        params: String,
        #[arg(short = 'N', long, default_value_t = 30)]
        order: usize,
        #[arg(long)]
        offset: Option<i64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BijectionKind {
    Odd,
    OddInverse,
    TwoPart,
    TwoPartInverse,
    BarsDots,
    BarsDotsInverse,
    Subset,
    SubsetInverse,
}

/// Exit status for a successful command.
pub const EXIT_OK: i32 = 0;
/// Exit status when a verification fails.
pub const EXIT_FAILED: i32 = 1;
/// Exit status for bad arguments.
pub const EXIT_USAGE: i32 = 2;

/// Parses `args` (including the program name), runs the command and returns
/// the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn params(text: &str) -> Result<Params, Error> {
    text.parse()
}

fn parse_spec(text: &str) -> Result<SubmonoidSpec, Error> {
    text.parse()
}

fn emit(out: &mut dyn Write, line: impl std::fmt::Display) -> Result<(), Error> {
    writeln!(out, "{line}").map_err(|e| Error::OutOfDomain(format!("cannot write output: {e}")))
}

fn show_report(out: &mut dyn Write, format: Format, r: &Report) -> Result<(), Error> {
    match format {
        Format::Text => {
            write!(out, "{r}")
                .map_err(|e| Error::OutOfDomain(format!("cannot write output: {e}")))?;
            Ok(())
        }
        Format::Structured => emit(out, serde_json::to_string(r).expect("reports serialize")),
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Error> {
    let format = cli.format;
    match &cli.command {
        Command::Expand {
            target,
            params: p,
            order,
        } => {
            let gf: RationalGF = match identity(target, params(p)?) {
                Ok(r) => r.closed_form,
                Err(Error::UnknownIdentity { .. }) => target.parse()?,
                Err(e) => return Err(e),
            };
            let s = gf.expand(*order)?;
            match format {
                Format::Text => emit(out, s)?,
                Format::Structured => emit(
                    out,
                    json!({
                        "gf": gf.to_string(),
                        "order": order,
                        "coefficients": s.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    }),
                )?,
            }
            Ok(EXIT_OK)
        }
        Command::Verify {
            id,
            params: p,
            order,
        } => {
            let r = verify_identity(id, params(p)?, *order)?;
            show_report(out, format, &r)?;
            Ok(if r.passed { EXIT_OK } else { EXIT_FAILED })
        }
        Command::VerifyAll { order } => {
            let reports = verify_all(*order)?;
            for r in &reports {
                show_report(out, format, r)?;
            }
            let failed = reports.iter().filter(|r| !r.passed).count();
            if format == Format::Text {
                emit(
                    out,
                    format!("{} instances, {} failed", reports.len(), failed),
                )?;
            }
            Ok(if failed == 0 { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Primes { spec, max, words } => {
            let spec = parse_spec(spec)?;
            let (counts, lists) = if *words {
                let c = census(&spec, *max, true);
                let lists = (1..=*max)
                    .map(|n| c.primes.words_of_weight(n).unwrap_or_default().to_vec())
                    .collect::<Vec<_>>();
                (c.primes.counts, Some(lists))
            } else {
                (count_census(&spec, *max).primes.counts, None)
            };
            print_counts(out, format, "primes", &spec, &counts, 1, lists)?;
            Ok(EXIT_OK)
        }
        Command::Members { spec, max, words } => {
            let spec = parse_spec(spec)?;
            let (counts, lists) = if *words {
                let mut lists = vec![Vec::new(); *max as usize + 1];
                for c in compmonoid_core::monoid::enumerate_members(&spec, *max) {
                    lists[spec.weight(c.parts()) as usize].push(c);
                }
                (count_census(&spec, *max).members, Some(lists))
            } else {
                (count_census(&spec, *max).members, None)
            };
            print_counts(out, format, "members", &spec, &counts, 0, lists)?;
            Ok(EXIT_OK)
        }
        Command::Factor { spec, word } => {
            let spec = parse_spec(spec)?;
            let w: Composition = word.parse()?;
            let f = factor_unique(&spec, w.parts())?;
            let text = f
                .iter()
                .map(Composition::to_string)
                .collect::<Vec<_>>()
                .join("|");
            match format {
                Format::Text => emit(
                    out,
                    if text.is_empty() {
                        "()".to_string()
                    } else {
                        text
                    },
                )?,
                Format::Structured => emit(
                    out,
                    json!({
                        "spec": spec.to_string(),
                        "word": w.to_string(),
                        "factors": f.iter().map(Composition::to_string).collect::<Vec<_>>(),
                    }),
                )?,
            }
            Ok(EXIT_OK)
        }
        Command::FreeCheck { spec, max } => {
            let spec = parse_spec(spec)?;
            let v = is_free_up_to(&spec, *max)?;
            let witness = v.counterexample.as_ref().map(|c| match c {
                Counterexample::Factorization(t) => t.to_string(),
                Counterexample::Criterion { p, q, r } => format!("p={p} q={q} r={r}"),
            });
            match format {
                Format::Text => match &witness {
                    None => emit(out, format!("{spec}: free through weight {}", v.bound))?,
                    Some(w) => emit(
                        out,
                        format!(
                            "{spec}: not free; unique factorization holds through weight {}; {w}",
                            v.free_up_to
                        ),
                    )?,
                },
                Format::Structured => emit(
                    out,
                    json!({
                        "spec": spec.to_string(),
                        "bound": v.bound,
                        "free": v.is_free(),
                        "free_up_to": v.free_up_to,
                        "counterexample": witness,
                    }),
                )?,
            }
            Ok(EXIT_OK)
        }
        Command::Bijection {
            kind,
            input,
            params: p,
        } => {
            let output = bijection(*kind, input, params(p)?)?;
            match format {
                Format::Text => emit(out, &output)?,
                Format::Structured => emit(out, json!({ "input": input, "output": output }))?,
            }
            Ok(EXIT_OK)
        }
        Command::Dyck { order, height } => {
            let seq: Vec<_> = (0..=*order).map(|n| dyck_count(n, *height)).collect();
            match format {
                Format::Text => {
                    for (n, v) in seq.iter().enumerate() {
                        emit(out, format!("{n} {v}"))?;
                    }
                }
                Format::Structured => emit(
                    out,
                    json!({
                        "height": height,
                        "counts": seq.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    }),
                )?,
            }
            Ok(EXIT_OK)
        }
        Command::Bfile {
            name,
            params: p,
            order,
            offset,
        } => {
            let p = params(p)?;
            let param = p.k.or(p.m);
            let seq = oracle_sequence(name, param, *order)?;
            let offset = offset.unwrap_or(oracle_offset(name)? as i64);
            let label = oeis_label(name, param);
            match format {
                Format::Text => {
                    if let Some(a) = label {
                        emit(out, format!("# {a}"))?;
                    }
                    write!(out, "{}", export_bfile(&seq, offset))
                        .map_err(|e| Error::OutOfDomain(format!("cannot write output: {e}")))?;
                }
                Format::Structured => emit(
                    out,
                    json!({
                        "name": name,
                        "oeis": label,
                        "offset": offset,
                        "terms": seq.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    }),
                )?,
            }
            Ok(EXIT_OK)
        }
    }
}

fn print_counts(
    out: &mut dyn Write,
    format: Format,
    what: &str,
    spec: &SubmonoidSpec,
    counts: &[num_bigint::BigInt],
    from: usize,
    lists: Option<Vec<Vec<Composition>>>,
) -> Result<(), Error> {
    // Prime lists start at weight 1, member lists at weight 0.
    let list_at = |n: usize| lists.as_ref().map(|l| &l[n - from]);
    match format {
        Format::Text => {
            for (n, c) in counts.iter().enumerate().skip(from) {
                match list_at(n) {
                    Some(words) => {
                        let w: Vec<String> = words.iter().map(Composition::to_string).collect();
                        emit(out, format!("{n} {c} {}", w.join(" ")))?
                    }
                    None => emit(out, format!("{n} {c}"))?,
                }
            }
        }
        Format::Structured => {
            let mut record = json!({
                "spec": spec.to_string(),
                what: counts.iter().skip(from).map(|c| c.to_string()).collect::<Vec<_>>(),
                "from": from,
            });
            if let Some(l) = &lists {
                record["words"] = json!(l
                    .iter()
                    .map(|ws| ws.iter().map(Composition::to_string).collect::<Vec<_>>())
                    .collect::<Vec<_>>());
            }
            emit(out, record)?;
        }
    }
    Ok(())
}

fn pair(p: Params) -> Result<(u32, u32), Error> {
    match (p.p, p.q) {
        (Some(p), Some(q)) => Ok((p, q)),
        _ => Err(Error::InvalidParameter(
            "two-part bijections need --params p=..,q=..".into(),
        )),
    }
}

fn bijection(kind: BijectionKind, input: &str, p: Params) -> Result<String, Error> {
    Ok(match kind {
        BijectionKind::Odd => odd_from_fib(&input.parse()?)?.to_string(),
        BijectionKind::OddInverse => fib_from_odd(&input.parse()?)?.to_string(),
        BijectionKind::TwoPart => {
            let (p, q) = pair(p)?;
            two_part_bijection(p, q, &input.parse()?)?.to_string()
        }
        BijectionKind::TwoPartInverse => {
            let (p, q) = pair(p)?;
            two_part_inverse(p, q, &input.parse()?)?.to_string()
        }
        BijectionKind::BarsDots => bars_dots_decode(&input.parse::<BarsDots>()?).to_string(),
        BijectionKind::BarsDotsInverse => bars_dots_encode(&input.parse()?)?.to_string(),
        BijectionKind::Subset => {
            let (n, rest) = input
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected `n:i,j,...`, got `{input}`")))?;
            let n: usize = n
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad n in `{input}`")))?;
            let subset = rest
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad position `{t}`")))
                })
                .collect::<Result<BTreeSet<_>, _>>()?;
            subset_prime_construction(n, &subset)?.to_string()
        }
        BijectionKind::SubsetInverse => {
            let (n, s) = subset_prime_inverse(&input.parse()?)?;
            let s: Vec<String> = s.iter().map(usize::to_string).collect();
            format!("{n}:{}", s.join(","))
        }
    })
}
