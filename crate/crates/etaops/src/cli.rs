//! Command line front end.
//!
//! One thin binary (`etaops`) exposes the main library entry points as
//! subcommands. Every subcommand renders to a string in one of three output
//! formats (`text`, `json`, `latex`), so the dispatch logic is testable
//! without spawning processes. Exit codes follow a fixed contract:
//!
//! * `0` success (including "not compatible" verdicts, which are answers);
//! * `1` a verification failed (an eigenform check, a solved identity that
//!   does not recheck, or a sampling oracle contradicting a closed form);
//! * `2` usage errors: malformed arguments or domain violations;
//! * `3` resource errors: cache I/O or a computation over budget.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed};

use crate::characters::{
    compatible_closed_form, compatible_sample_oracle, v_r, EtaDirichletChar, OracleVerdict,
    RealDirichlet,
};
use crate::express::{
    build_identity, eta_latex, identity_to_json, identity_to_latex, identity_to_text,
    verify_identity, ExpressProblem,
};
use crate::heckeops::{newman_check_with, PrTable};
use crate::metaplectic::{MatZ, MetaElem};
use crate::qseries::{cusps_gamma0, eta_quotient_series, CoeffCache, EtaExponents};
use crate::search::{enumerate_holomorphic_etaquotients, findl, AdmissibleL};
use crate::EtaError;

/// Output rendering selected by `--format`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Human-readable lines.
    Text,
    /// One JSON document on stdout.
    Json,
    /// A LaTeX fragment (no preamble).
    Latex,
}

/// Exact arithmetic for double coset operators on eta-quotients.
#[derive(Debug, Parser)]
#[command(name = "etaops", version, about, max_term_width = 100)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,

    /// Directory for coefficient tables; overrides the `ETAOPS_CACHE`
    /// environment variable. Tables are written atomically.
    #[arg(long, global = true, value_name = "DIR")]
    pub cache: Option<PathBuf>,

    /// Seed for randomized spot checks; fixed seeds reproduce bit for bit.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Working precision for numeric cross-checks, in decimal digits
    /// (at least 50). The exact integer and rational paths ignore it.
    #[arg(long, global = true, default_value_t = 50, value_name = "DIGITS")]
    pub precision_digits: u32,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the eta-quotient multiplier at an element of the double
    /// cover of Gamma0(N); the result is a 24th root of unity.
    Char {
        /// Level N.
        #[arg(long = "N")]
        level: u64,
        /// Exponent vector as comma-separated `n:r` pairs with n | N,
        /// e.g. `1:-3,2:7`.
        #[arg(long)]
        exps: String,
        /// Matrix entries `a,b,c,d` in row-major order.
        #[arg(long)]
        mat: String,
        /// Sign of the metaplectic lift, `1` or `-1`.
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        eps: i32,
    },
    /// Decide whether two eta-characters admit a double coset operator of
    /// index l, by the exact closed-form criterion.
    Compat {
        /// Level N.
        #[arg(long = "N")]
        level: u64,
        /// Source exponent vector (`n:r` pairs).
        #[arg(long)]
        exps: String,
        /// Target exponent vector (`n:r` pairs).
        #[arg(long)]
        exps2: String,
        /// Discriminant of the real Dirichlet twist on the source
        /// (default: trivial character).
        #[arg(long, allow_negative_numbers = true)]
        chi: Option<i64>,
        /// Discriminant of the real Dirichlet twist on the target
        /// (default: trivial character).
        #[arg(long, allow_negative_numbers = true)]
        chi2: Option<i64>,
        /// Single index l to test.
        #[arg(long, conflicts_with = "scan")]
        l: Option<u64>,
        /// Test every l in 1..=24 and summarize.
        #[arg(long)]
        scan: bool,
        /// Also run the randomized relation oracle with this many samples
        /// per examined index; a counterexample against a compatible
        /// verdict exits with code 1.
        #[arg(long, value_name = "TRIALS")]
        oracle: Option<u32>,
    },
    /// List the holomorphic eta-quotients of a one-dimensional space,
    /// one per line.
    Enumerate {
        /// Level N.
        #[arg(long = "N")]
        level: u64,
        /// Weight as an integer or half-integer, e.g. `2` or `1/2`.
        #[arg(long)]
        k: String,
        /// Require vanishing (strictly positive order) at every cusp.
        #[arg(long)]
        cusp: bool,
    },
    /// Describe every operator index l admissible for a pair of exponent
    /// vectors under trivial characters.
    Findl {
        /// Level N.
        #[arg(long = "N")]
        level: u64,
        /// Source exponent vector (`n:r` pairs).
        #[arg(long)]
        exps: String,
        /// Target exponent vector (`n:r` pairs).
        #[arg(long)]
        exps2: String,
    },
    /// Print the exact q-expansion of an eta-quotient on the 1/24-integral
    /// lattice.
    Series {
        /// Level N.
        #[arg(long = "N")]
        level: u64,
        /// Exponent vector (`n:r` pairs).
        #[arg(long)]
        exps: String,
        /// Number of lattice coefficients beyond the first.
        #[arg(long, default_value_t = 10)]
        nmax: usize,
    },
    /// Print the invariant order of an eta-quotient at every cusp class
    /// of Gamma0(N).
    Order {
        /// Level N.
        #[arg(long = "N")]
        level: u64,
        /// Exponent vector (`n:r` pairs).
        #[arg(long)]
        exps: String,
    },
    /// Check the eigenform identity for eta^r under T_l through the
    /// closed-form divisor sums; exits 0 on pass, 1 on any discrepancy.
    Newman {
        /// Power r, between 0 and 24.
        #[arg(long)]
        r: i64,
        /// Operator index l with 24 | r(l-1); a perfect square when r is
        /// odd.
        #[arg(long)]
        l: u64,
        /// Largest lattice step checked.
        #[arg(long, default_value_t = 2000)]
        nmax: usize,
    },
    /// Express a sieved eta-power coefficient progression as a linear
    /// combination of eta-quotients of prime level, then re-verify the
    /// identity; exits 1 when either step fails.
    Express {
        /// Power r with 24 | r(p^2 - 1).
        #[arg(long, allow_negative_numbers = true)]
        r: i64,
        /// Prime p.
        #[arg(long)]
        p: u64,
        /// Exponent beta of the sieving modulus p^beta.
        #[arg(long, default_value_t = 1)]
        beta: u32,
        /// Extra lattice steps past the certification depth.
        #[arg(long, default_value_t = 0)]
        extra: i64,
    },
}

/// Parses the command line and runs it, returning the process exit code.
pub fn run() -> u8 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            println!("{out}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// The exit code assigned to each error class.
pub fn exit_code(e: &EtaError) -> u8 {
    match e {
        EtaError::InvalidArgument(_) | EtaError::Unsupported(_) => 2,
        EtaError::VerificationFailed(_) => 1,
        EtaError::Resource(_) => 3,
    }
}

/// Dispatches a parsed command to its implementation and returns the
/// rendered output.
pub fn execute(cli: &Cli) -> crate::Result<String> {
    if cli.precision_digits < 50 {
        return Err(EtaError::InvalidArgument(format!(
            "--precision-digits must be at least 50; got {}",
            cli.precision_digits
        )));
    }
    match &cli.command {
        Command::Char {
            level,
            exps,
            mat,
            eps,
        } => cmd_char(cli, *level, exps, mat, *eps),
        Command::Compat {
            level,
            exps,
            exps2,
            chi,
            chi2,
            l,
            scan,
            oracle,
        } => cmd_compat(cli, *level, exps, exps2, *chi, *chi2, *l, *scan, *oracle),
        Command::Enumerate { level, k, cusp } => cmd_enumerate(cli, *level, k, *cusp),
        Command::Findl {
            level,
            exps,
            exps2,
        } => cmd_findl(cli, *level, exps, exps2),
        Command::Series { level, exps, nmax } => cmd_series(cli, *level, exps, *nmax),
        Command::Order { level, exps } => cmd_order(cli, *level, exps),
        Command::Newman { r, l, nmax } => cmd_newman(cli, *r, *l, *nmax),
        Command::Express { r, p, beta, extra } => cmd_express(cli, *r, *p, *beta, *extra),
    }
}

fn invalid(msg: impl Into<String>) -> EtaError {
    EtaError::InvalidArgument(msg.into())
}

/// Parses `n:r` pairs like `1:-3,2:7` into an exponent vector at the level.
fn parse_exps(level: u64, s: &str) -> crate::Result<EtaExponents> {
    let mut entries = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (n, r) = part
            .split_once(':')
            .ok_or_else(|| invalid(format!("expected an `n:r` pair, got `{part}`")))?;
        let n: u64 = n
            .trim()
            .parse()
            .map_err(|_| invalid(format!("`{n}` is not an unsigned integer")))?;
        let r: i64 = r
            .trim()
            .parse()
            .map_err(|_| invalid(format!("`{r}` is not an integer")))?;
        entries.push((n, r));
    }
    if entries.is_empty() {
        return Err(invalid("the exponent vector needs at least one `n:r` pair"));
    }
    EtaExponents::new(level, entries)
}

/// Parses `a,b,c,d` (row-major) into an integer matrix.
fn parse_mat(s: &str) -> crate::Result<MatZ> {
    let nums: Vec<i64> = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| invalid(format!("`{t}` is not an integer")))
        })
        .collect::<crate::Result<_>>()?;
    let [a, b, c, d] = nums[..] else {
        return Err(invalid(format!(
            "a matrix needs exactly four entries `a,b,c,d`, got {}",
            nums.len()
        )));
    };
    MatZ::new(a.into(), b.into(), c.into(), d.into())
}

/// Parses a weight written as `a` or `a/b` into twice its value, which the
/// library uses throughout; the weight must be a multiple of 1/2.
fn parse_twice_weight(s: &str) -> crate::Result<i64> {
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => {
            let a: i64 = a
                .trim()
                .parse()
                .map_err(|_| invalid(format!("`{a}` is not an integer")))?;
            let b: i64 = b
                .trim()
                .parse()
                .map_err(|_| invalid(format!("`{b}` is not an integer")))?;
            (a, b)
        }
        None => (
            s.trim()
                .parse()
                .map_err(|_| invalid(format!("`{s}` is not a number")))?,
            1,
        ),
    };
    if den <= 0 {
        return Err(invalid("the weight denominator must be positive"));
    }
    if (2 * num) % den != 0 {
        return Err(invalid(format!(
            "the weight {s} is not a multiple of 1/2"
        )));
    }
    Ok(2 * num / den)
}

fn cache_of(cli: &Cli) -> CoeffCache {
    match &cli.cache {
        Some(dir) => CoeffCache::at_dir(dir.clone()),
        None => CoeffCache::from_env(),
    }
}

/// A rational in LaTeX, with `\frac` only when the denominator is not 1.
fn latex_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else if x.numer().sign() == num::bigint::Sign::Minus {
        format!("-\\frac{{{}}}{{{}}}", -x.numer(), x.denom())
    } else {
        format!("\\frac{{{}}}{{{}}}", x.numer(), x.denom())
    }
}

/// `q^(num24/24)` in LaTeX with the fraction reduced; empty for exponent 0.
fn latex_qpow(num24: i64) -> String {
    use num::Integer;
    if num24 == 0 {
        return String::new();
    }
    if num24 == 24 {
        return "q".into();
    }
    let g = num24.gcd(&24);
    let (num, den) = (num24 / g, 24 / g);
    if den == 1 {
        format!("q^{{{num}}}")
    } else {
        format!("q^{{{num}/{den}}}")
    }
}

fn cmd_char(cli: &Cli, level: u64, exps: &str, mat: &str, eps: i32) -> crate::Result<String> {
    let ex = parse_exps(level, exps)?;
    let m = parse_mat(mat)?;
    if eps != 1 && eps != -1 {
        return Err(invalid(format!("--eps must be 1 or -1, got {eps}")));
    }
    let value = v_r(&ex, &MetaElem::new(m, eps))?;
    Ok(match cli.format {
        OutputFormat::Text => value.to_string(),
        OutputFormat::Json => serde_json::json!({ "exponent24": value.exponent() }).to_string(),
        OutputFormat::Latex => format!("\\zeta_{{24}}^{{{}}}", value.exponent()),
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_compat(
    cli: &Cli,
    level: u64,
    exps: &str,
    exps2: &str,
    chi: Option<i64>,
    chi2: Option<i64>,
    l: Option<u64>,
    scan: bool,
    oracle: Option<u32>,
) -> crate::Result<String> {
    let ex1 = parse_exps(level, exps)?;
    let ex2 = parse_exps(level, exps2)?;
    let c1 = match chi {
        Some(d) => RealDirichlet::new(level, d)?,
        None => RealDirichlet::trivial(level),
    };
    let c2 = match chi2 {
        Some(d) => RealDirichlet::new(level, d)?,
        None => RealDirichlet::trivial(level),
    };
    let indices: Vec<u64> = if scan {
        (1..=24).collect()
    } else if let Some(l) = l {
        vec![l]
    } else {
        return Err(invalid("pass --l <L> for one index or --scan for 1..=24"));
    };
    let mut verdicts = Vec::with_capacity(indices.len());
    for &lv in &indices {
        verdicts.push((lv, compatible_closed_form(level, &c1, &ex1, &c2, &ex2, lv)?));
    }

    // The sampling oracle tests the defining relation directly. On an index
    // the closed form accepts, any counterexample is a contradiction; on a
    // rejected index a found witness merely confirms the verdict.
    let mut witnesses: Vec<(u64, bool)> = Vec::new();
    if let Some(trials) = oracle {
        let v1 = EtaDirichletChar::new(c1.clone(), ex1.clone())?;
        let v2 = EtaDirichletChar::new(c2.clone(), ex2.clone())?;
        for &(lv, ok) in &verdicts {
            match compatible_sample_oracle(level, &v1, &v2, lv, trials, cli.seed)? {
                OracleVerdict::NoCounterexample => witnesses.push((lv, false)),
                OracleVerdict::Counterexample(g) => {
                    if ok {
                        return Err(EtaError::VerificationFailed(format!(
                            "sampling oracle contradicts the closed form at l = {lv}: \
                             the relation fails at {g}"
                        )));
                    }
                    witnesses.push((lv, true));
                }
            }
        }
    }

    let compatible: Vec<u64> = verdicts.iter().filter(|(_, ok)| *ok).map(|&(lv, _)| lv).collect();
    let closed_form = if scan && chi.is_none() && chi2.is_none() {
        Some(findl(level, &ex1, &ex2)?)
    } else {
        None
    };

    Ok(match cli.format {
        OutputFormat::Text => {
            let mut out = String::new();
            if scan {
                if compatible.is_empty() {
                    out.push_str("no compatible l in 1..=24");
                } else {
                    let list: Vec<String> = compatible.iter().map(u64::to_string).collect();
                    let _ = write!(out, "compatible l in 1..=24: {}", list.join(", "));
                }
                if let Some(a) = &closed_form {
                    let _ = write!(out, "\nall l: {a}");
                }
            } else {
                let (lv, ok) = verdicts[0];
                let _ = write!(
                    out,
                    "l = {lv}: {}",
                    if ok { "compatible" } else { "not compatible" }
                );
            }
            if let Some(trials) = oracle {
                let found: Vec<String> = witnesses
                    .iter()
                    .filter(|(_, w)| *w)
                    .map(|(lv, _)| lv.to_string())
                    .collect();
                let _ = write!(
                    out,
                    "\noracle ({trials} samples per index, seed {}): no contradiction{}",
                    cli.seed,
                    if found.is_empty() {
                        String::new()
                    } else {
                        format!("; rejection witnessed at l = {}", found.join(", "))
                    }
                );
            }
            out
        }
        OutputFormat::Json => {
            let mut doc = serde_json::json!({
                "level": level,
                "verdicts": verdicts
                    .iter()
                    .map(|(lv, ok)| serde_json::json!({ "l": lv, "compatible": ok }))
                    .collect::<Vec<_>>(),
            });
            if let Some(a) = &closed_form {
                doc["all_l"] = serde_json::Value::String(a.to_string());
            }
            if oracle.is_some() {
                doc["oracle_contradiction"] = serde_json::Value::Bool(false);
            }
            doc.to_string()
        }
        OutputFormat::Latex => {
            if scan {
                if compatible.is_empty() {
                    "\\text{no compatible } l \\text{ in } 1 \\le l \\le 24".into()
                } else {
                    let list: Vec<String> = compatible.iter().map(u64::to_string).collect();
                    format!("l \\in \\{{{}\\}} \\quad (1 \\le l \\le 24)", list.join(", "))
                }
            } else {
                let (lv, ok) = verdicts[0];
                format!(
                    "l = {lv}\\colon\\ \\text{{{}}}",
                    if ok { "compatible" } else { "not compatible" }
                )
            }
        }
    })
}

fn cmd_enumerate(cli: &Cli, level: u64, k: &str, cusp: bool) -> crate::Result<String> {
    let tw = parse_twice_weight(k)?;
    let list = enumerate_holomorphic_etaquotients(level, tw, cusp)?;
    Ok(match cli.format {
        OutputFormat::Text => {
            let lines: Vec<String> = list.iter().map(EtaExponents::to_string).collect();
            lines.join("\n")
        }
        OutputFormat::Json => {
            let quotients: Vec<serde_json::Value> = list
                .iter()
                .map(|ex| {
                    serde_json::Value::Object(
                        ex.exponents()
                            .iter()
                            .map(|(n, r)| (n.to_string(), serde_json::json!(r)))
                            .collect(),
                    )
                })
                .collect();
            serde_json::json!({
                "level": level,
                "twice_weight": tw,
                "count": list.len(),
                "quotients": quotients,
            })
            .to_string()
        }
        OutputFormat::Latex => {
            let lines: Vec<String> = list.iter().map(eta_latex).collect();
            lines.join(" \\\\\n")
        }
    })
}

fn cmd_findl(cli: &Cli, level: u64, exps: &str, exps2: &str) -> crate::Result<String> {
    let ex1 = parse_exps(level, exps)?;
    let ex2 = parse_exps(level, exps2)?;
    let found = findl(level, &ex1, &ex2)?;
    Ok(match cli.format {
        OutputFormat::Text => found.to_string(),
        OutputFormat::Json => match &found {
            AdmissibleL::Integral { residues } => serde_json::json!({
                "kind": "integral",
                "modulus": 24,
                "residues": residues.iter().collect::<Vec<_>>(),
            })
            .to_string(),
            AdmissibleL::HalfIntegral { l0, m2_residues } => serde_json::json!({
                "kind": "half_integral",
                "l0": l0,
                "modulus": 24,
                "m2_residues": m2_residues.iter().collect::<Vec<_>>(),
            })
            .to_string(),
        },
        OutputFormat::Latex => match &found {
            AdmissibleL::Integral { residues } => {
                if residues.is_empty() {
                    "\\text{no admissible } l".into()
                } else {
                    let list: Vec<String> = residues.iter().map(u64::to_string).collect();
                    format!("l \\equiv {} \\pmod{{24}}", list.join(", "))
                }
            }
            AdmissibleL::HalfIntegral { l0, m2_residues } => {
                if m2_residues.is_empty() {
                    "\\text{no admissible } l".into()
                } else {
                    let list: Vec<String> = m2_residues.iter().map(u64::to_string).collect();
                    format!(
                        "l = {l0} m^{{2}}, \\quad m^{{2}} \\equiv {} \\pmod{{24}}",
                        list.join(", ")
                    )
                }
            }
        },
    })
}

fn cmd_series(cli: &Cli, level: u64, exps: &str, nmax: usize) -> crate::Result<String> {
    let ex = parse_exps(level, exps)?;
    let series = eta_quotient_series(&ex, nmax + 1);
    Ok(match cli.format {
        OutputFormat::Json => {
            let coeffs: Vec<String> = series.coeffs.iter().map(BigRational::to_string).collect();
            serde_json::json!({
                "level": level,
                "offset24": series.offset24,
                "step24": 24,
                "coeffs": coeffs,
            })
            .to_string()
        }
        OutputFormat::Text => {
            let mut out = ex.to_string();
            for (num, c) in series.terms() {
                let _ = write!(out, "\nq^({num}/24): {c}");
            }
            out
        }
        OutputFormat::Latex => {
            let mut out = format!("{} = ", eta_latex(&ex));
            let head = latex_qpow(series.offset24);
            if !head.is_empty() {
                let _ = write!(out, "{head}\\left(");
            }
            let mut first = true;
            for (num, c) in series.terms() {
                let rel = (num - series.offset24) / 24;
                let neg = c < &BigRational::from(BigInt::from(0));
                if first {
                    if neg {
                        out.push('-');
                    }
                } else {
                    out.push_str(if neg { " - " } else { " + " });
                }
                first = false;
                let mag = c.abs();
                let qpart = match rel {
                    0 => String::new(),
                    1 => "q".into(),
                    _ => format!("q^{{{rel}}}"),
                };
                if mag.is_one() && !qpart.is_empty() {
                    out.push_str(&qpart);
                } else {
                    let _ = write!(out, "{}{qpart}", latex_rational(&mag));
                }
            }
            if first {
                out.push('0');
            } else {
                out.push_str(" + \\cdots");
            }
            if !head.is_empty() {
                out.push_str("\\right)");
            }
            out
        }
    })
}

fn cmd_order(cli: &Cli, level: u64, exps: &str) -> crate::Result<String> {
    let ex = parse_exps(level, exps)?;
    let rows: Vec<_> = cusps_gamma0(level)
        .into_iter()
        .map(|class| {
            let ord = ex.ord_at_cusp(class.denominator);
            (class, ord)
        })
        .collect();
    Ok(match cli.format {
        OutputFormat::Text => {
            let lines: Vec<String> = rows
                .iter()
                .map(|(class, ord)| {
                    format!(
                        "cusps 1/{} (count {}, width {}): order {ord}",
                        class.denominator, class.count, class.width
                    )
                })
                .collect();
            lines.join("\n")
        }
        OutputFormat::Json => serde_json::json!({
            "level": level,
            "cusps": rows
                .iter()
                .map(|(class, ord)| serde_json::json!({
                    "denominator": class.denominator,
                    "count": class.count,
                    "width": class.width,
                    "order": ord.to_string(),
                }))
                .collect::<Vec<_>>(),
        })
        .to_string(),
        OutputFormat::Latex => {
            let lines: Vec<String> = rows
                .iter()
                .map(|(class, ord)| {
                    format!(
                        "\\operatorname{{ord}}_{{1/{}}} = {}",
                        class.denominator,
                        latex_rational(ord)
                    )
                })
                .collect();
            lines.join(" \\\\\n")
        }
    })
}

fn cmd_newman(cli: &Cli, r: i64, l: u64, nmax: usize) -> crate::Result<String> {
    // Table sized exactly as the library would size it, but routed through
    // the coefficient cache so repeated runs share the expensive part.
    let max_coarse = r + 24 * nmax as i64 + 23;
    let karg = (max_coarse as i128 * l as i128 - r as i128).max(0) / 24;
    let table = PrTable::from_bigint(r, cache_of(cli).eta_power(r, karg as usize + 1));
    let report = newman_check_with(r, l, nmax, &table)?;
    if !report.pass {
        let at = report
            .first_discrepancy
            .map(|n| format!(" at numerator exponent {n}/24"))
            .unwrap_or_default();
        return Err(EtaError::VerificationFailed(format!(
            "eta^{r} is not an eigenform of T_{l} through nmax = {nmax}; \
             first discrepancy{at}"
        )));
    }
    Ok(match cli.format {
        OutputFormat::Text => format!(
            "PASS: T_{l} eta^{r} = c eta^{r} with c = {} \
             ({} lattice coefficients, {} off-lattice spot checks)",
            report.eigenvalue, report.checked_lattice, report.checked_off_lattice
        ),
        OutputFormat::Json => serde_json::json!({
            "r": report.r,
            "l": report.l,
            "nmax": report.nmax,
            "pass": report.pass,
            "eigenvalue": report.eigenvalue.to_string(),
            "checked_lattice": report.checked_lattice,
            "checked_off_lattice": report.checked_off_lattice,
        })
        .to_string(),
        OutputFormat::Latex => format!(
            "T_{{{l}}}\\,\\eta^{{{r}}} = {}\\,\\eta^{{{r}}}",
            latex_rational(&report.eigenvalue)
        ),
    })
}

fn cmd_express(cli: &Cli, r: i64, p: u64, beta: u32, extra: i64) -> crate::Result<String> {
    let prob = ExpressProblem::new(r, p, beta)?;
    let mut id = build_identity(&prob)?;
    if !verify_identity(&mut id, extra)? {
        return Err(EtaError::VerificationFailed(format!(
            "the solved coefficients for {prob} fail the independent recheck"
        )));
    }
    Ok(match cli.format {
        OutputFormat::Text => format!(
            "{}\nverified as equal modular forms through q^({}/24)",
            identity_to_text(&id),
            id.verified_to
        ),
        OutputFormat::Json => identity_to_json(&id),
        OutputFormat::Latex => identity_to_latex(&id),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(args).expect("argument parsing")
    }

    fn run_args(args: &[&str]) -> crate::Result<String> {
        execute(&parse(args))
    }

    #[test]
    fn exponent_and_matrix_parsers_reject_malformed_input() {
        assert!(parse_exps(4, "1:2, 4:-3").is_ok());
        assert!(parse_exps(4, "").is_err());
        assert!(parse_exps(4, "1-2").is_err());
        assert!(parse_exps(4, "3:1").is_err(), "3 does not divide the level");
        assert!(parse_mat("1,0,4,1").is_ok());
        assert!(parse_mat("1,0,4").is_err());
        assert!(parse_mat("1,0,4,x").is_err());
        assert!(parse_mat("2,0,0,-2").is_err(), "negative determinant");
        assert_eq!(parse_twice_weight("1/2").unwrap(), 1);
        assert_eq!(parse_twice_weight("3").unwrap(), 6);
        assert_eq!(parse_twice_weight("-1/2").unwrap(), -1);
        assert!(parse_twice_weight("1/3").is_err());
        assert!(parse_twice_weight("1/0").is_err());
    }

    #[test]
    fn error_classes_map_to_documented_exit_codes() {
        assert_eq!(exit_code(&EtaError::InvalidArgument(String::new())), 2);
        assert_eq!(exit_code(&EtaError::Unsupported(String::new())), 2);
        assert_eq!(exit_code(&EtaError::VerificationFailed(String::new())), 1);
        assert_eq!(exit_code(&EtaError::Resource(String::new())), 3);
    }

    #[test]
    fn char_command_evaluates_the_multiplier() {
        let out = run_args(&[
            "etaops", "char", "--N", "4", "--exps", "4:1", "--mat", "1,1,0,1",
        ])
        .unwrap();
        assert_eq!(out, "e(4/24)");
        let json = run_args(&[
            "etaops", "char", "--N", "4", "--exps", "4:1", "--mat", "1,1,0,1", "--format", "json",
        ])
        .unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["exponent24"], 4);
        let err = run_args(&[
            "etaops", "char", "--N", "4", "--exps", "4:1", "--mat", "1,0,1,1",
        ])
        .unwrap_err();
        assert_eq!(exit_code(&err), 2, "matrix outside Gamma0(4) is a usage error");
    }

    #[test]
    fn compat_command_reports_verdicts_and_scan_summary() {
        let single = run_args(&[
            "etaops", "compat", "--N", "1", "--exps", "1:2", "--exps2", "1:2", "--l", "13",
        ])
        .unwrap();
        assert_eq!(single, "l = 13: compatible");
        let scan = run_args(&[
            "etaops", "compat", "--N", "1", "--exps", "1:2", "--exps2", "1:2", "--scan",
        ])
        .unwrap();
        assert!(scan.starts_with("compatible l in 1..=24: 1, 13"), "{scan}");
        assert!(scan.contains("all l: l == {1, 13} (mod 24)"), "{scan}");
        let with_oracle = run_args(&[
            "etaops", "compat", "--N", "1", "--exps", "1:2", "--exps2", "1:2", "--l", "13",
            "--oracle", "16",
        ])
        .unwrap();
        assert!(with_oracle.contains("no contradiction"), "{with_oracle}");
    }

    #[test]
    fn enumerate_command_prints_one_quotient_per_line() {
        let out = run_args(&["etaops", "enumerate", "--N", "9", "--k", "1/2"]).unwrap();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines, vec!["eta(9tau)", "eta(3tau)", "eta(tau)"]);
    }

    #[test]
    fn findl_command_renders_residue_classes() {
        let text = run_args(&[
            "etaops", "findl", "--N", "2", "--exps", "1:-3,2:7", "--exps2", "1:1,2:3",
        ])
        .unwrap();
        assert_eq!(text, "l == {5} (mod 24)");
        let latex = run_args(&[
            "etaops", "findl", "--N", "2", "--exps", "1:-3,2:7", "--exps2", "1:1,2:3",
            "--format", "latex",
        ])
        .unwrap();
        assert_eq!(latex, "l \\equiv 5 \\pmod{24}");
    }

    #[test]
    fn series_command_lists_lattice_terms() {
        let out = run_args(&[
            "etaops", "series", "--N", "1", "--exps", "1:1", "--nmax", "3",
        ])
        .unwrap();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(
            lines,
            vec!["eta(tau)", "q^(1/24): 1", "q^(25/24): -1", "q^(49/24): -1"]
        );
        let json = run_args(&[
            "etaops", "series", "--N", "1", "--exps", "1:1", "--nmax", "3", "--format", "json",
        ])
        .unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["offset24"], 1);
        assert_eq!(v["coeffs"][1], "-1");
    }

    #[test]
    fn order_command_reports_every_cusp_class() {
        let out = run_args(&["etaops", "order", "--N", "4", "--exps", "1:-2,4:2"]).unwrap();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 3, "Gamma0(4) has three cusp denominators");
        assert!(lines[0].starts_with("cusps 1/1"), "{out}");
    }

    #[test]
    fn newman_command_passes_on_a_known_eigenform() {
        let out = run_args(&[
            "etaops", "newman", "--r", "2", "--l", "13", "--nmax", "20",
        ])
        .unwrap();
        assert!(out.starts_with("PASS"), "{out}");
        let err = run_args(&["etaops", "newman", "--r", "2", "--l", "14", "--nmax", "5"])
            .unwrap_err();
        assert_eq!(exit_code(&err), 2, "24 does not divide 2 * 13");
    }

    #[test]
    fn express_command_solves_and_certifies() {
        let text = run_args(&["etaops", "express", "--r", "2", "--p", "13"]).unwrap();
        assert!(text.contains("= -2 * [eta(tau)^2] - [eta(13tau)^2]"), "{text}");
        assert!(text.contains("verified as equal modular forms"), "{text}");
        let json = run_args(&[
            "etaops", "express", "--r", "2", "--p", "13", "--format", "json",
        ])
        .unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["p"], 13);
        assert_eq!(v["terms"][0]["c_num"], "-2");
        assert!(v["verified_to"].as_i64().unwrap() > 0);
    }

    #[test]
    fn precision_floor_is_enforced() {
        let err = run_args(&[
            "etaops", "--precision-digits", "10", "series", "--N", "1", "--exps", "1:1",
        ])
        .unwrap_err();
        assert_eq!(exit_code(&err), 2);
    }
}
