//! Subcommand definitions and dispatch.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use padic_hyper::hyper::{
    bn_at, eval_pfq_mahler, rational_valuation, verify_monthly, HypergeometricParams,
};
use padic_hyper::lfunc::{lp_value, LArgument};
use padic_hyper::series::{verify_b1_identity, verify_b2_identity, DEFAULT_IDENTITY_ORDER};
use padic_hyper::theorem1::{a_zeta, binom_limit_check, theorem_ii_check};
use padic_hyper::{Error, Padic, Precision, DEFAULT_GUARD_DIGITS};
use serde_json::json;

use crate::cache::{make_key, Cache, CACHE_ENV};
use crate::claims::verify_paper;
use crate::report::{PadicDigits, Payload, Report, Status};

#[derive(Parser, Debug)]
#[command(
    name = "padic-hyper",
    version,
    about = "p-adic hypergeometric interpolation and L-value checks"
)]
pub struct Cli {
    /// Print the full JSON report instead of a summary.
    #[arg(long, global = true)]
    pub json: bool,

    /// Constants cache (JSON lines).
    #[arg(long, global = true, env = CACHE_ENV)]
    pub cache: Option<PathBuf>,

    #[arg(long, global = true, default_value_t = DEFAULT_GUARD_DIGITS)]
    pub guard_digits: u32,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// v_3 of Σ_{k<n} binom(2k,k) against v_3 of n² binom(2n,n).
    VerifyMonthly {
        #[arg(long, default_value_t = 100)]
        n_max: u64,
    },
    /// The limit A(ζ_p) of the normalized central binomial sums.
    ComputeA {
        #[arg(long, default_value_t = 3)]
        p: u32,
        /// Defaults to 9 for p = 3, 6 for p = 5 and 4 otherwise.
        #[arg(long)]
        s_max: Option<u32>,
        #[arg(long, default_value_t = 10)]
        precision: u32,
        #[command(flatten)]
        expect: Expect,
    },
    /// b_n(t), the n-th Taylor coefficient at x = 0 of Σ binom(x,k) t^{k−1}/binom(2k,k).
    ComputeBn {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long, default_value_t = 10)]
        precision: u32,
        #[command(flatten)]
        expect: Expect,
    },
    /// Kubota–Leopoldt L_p(s, ω^branch).
    Lp {
        #[arg(long)]
        p: u32,
        /// An integer or a p-integral rational.
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        branch: i64,
        #[arg(long, default_value_t = 10)]
        precision: u32,
        #[command(flatten)]
        expect: Expect,
    },
    /// W/(G·D) from conjugates of A(ζ_p) against L_p(2, ω^{r−1}).
    VerifyTheorem1 {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        r: u32,
        #[arg(long, default_value_t = 8)]
        precision: u32,
        /// Defaults to 9 for p = 3, 7 for p = 5 and 4 otherwise.
        #[arg(long)]
        s_max: Option<u32>,
    },
    /// The closed forms for b_1 and b_2 as power series in z.
    VerifySeriesIdentities {
        #[arg(long, default_value_t = DEFAULT_IDENTITY_ORDER)]
        order: usize,
    },
    /// binom(2p^s, p^s) against 2 Π_{k≤K} Γ_p(2p^k)/Γ_p(p^k)².
    GammaLimit {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 6)]
        s_max: u32,
        #[arg(long)]
        k_max: Option<u32>,
        #[arg(long, default_value_t = 10)]
        precision: u32,
    },
    /// Mahler-series value of the interpolated hypergeometric sum at x.
    EvalHypergeometric {
        /// Comma-separated rationals.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        alphas: String,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        betas: String,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 10)]
        precision: u32,
    },
    /// Runs every numbered check, then repeats them at doubled precision knobs.
    VerifyPaper,
}

#[derive(Args, Debug, Default)]
pub struct Expect {
    /// Expected little-endian digits, e.g. 2,1,2,0; a mismatch exits with 1.
    #[arg(long, value_delimiter = ',')]
    pub expect: Option<Vec<u32>>,
}

fn usage_report(command: &str, msg: impl Into<String>) -> Report {
    let mut r = Report::new(command);
    r.status = Status::UsageError;
    r.message = Some(msg.into());
    r
}

fn error_report(command: &str, err: &Error) -> Report {
    let mut r = Report::new(command);
    r.status = match err {
        Error::Usage(_) | Error::Domain(_) => Status::UsageError,
        Error::PrecisionIndeterminate(_) => Status::PrecisionIndeterminate,
        Error::Consistency(_) => Status::Mismatch,
    };
    r.message = Some(err.to_string());
    r
}

pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let parse = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|e| format!("bad number {t:?}: {e}"))
    };
    match s.split_once('/') {
        Some((a, b)) => {
            let b = parse(b)?;
            if b.is_zero() {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(BigRational::new(parse(a)?, b))
        }
        None => Ok(BigRational::from_integer(parse(s)?)),
    }
}

fn parse_list(s: &str) -> Result<Vec<BigRational>, String> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(parse_rational)
        .collect()
}

/// A p-integral rational as a p-adic integer known to `abs` digits.
fn padic_argument(q: &BigRational, p: u32, abs: i64) -> Result<Padic, String> {
    match rational_valuation(q, p) {
        Some(v) if v < 0 => Err(format!("{q} is not a {p}-adic integer")),
        _ => Ok(Padic::from_rational(q, p, abs)),
    }
}

fn default_s_max(p: u32, three: u32, five: u32) -> u32 {
    match p {
        3 => three,
        5 => five,
        _ => 4,
    }
}

fn check_expected(r: &mut Report, expect: &Expect) {
    if let Some(want) = &expect.expect {
        let got = &r.result.digits;
        let ok = got.len() >= want.len() && got[..want.len()] == want[..];
        r.certificate
            .notes
            .push(format!("expected digits {want:?}"));
        if !ok {
            r.status = Status::Mismatch;
            r.message = Some(format!("digits {got:?} differ from expected {want:?}"));
        }
    }
}

/// Computes at increasing absolute precision until at least `n` significant
/// digits are known (or the value is zero to precision `n`).
fn with_relative<T>(
    n: u32,
    guard: u32,
    mut f: impl FnMut(&Precision) -> padic_hyper::Result<(Padic, T)>,
) -> padic_hyper::Result<(Padic, T, Precision)> {
    let mut target = n;
    loop {
        let prec = Precision::new(target).with_guard(guard);
        let (x, extra) = f(&prec)?;
        let short = match x.valuation() {
            Some(_) => (n as i64 - x.rel_precision()).max(0),
            None => (n as i64 - x.abs_precision()).max(0),
        };
        if short == 0 || target >= 4 * n + 8 {
            return Ok((x, extra, prec));
        }
        target += short as u32;
    }
}

struct CacheSlot<'a> {
    cache: Option<&'a mut Cache>,
    key: String,
}

impl CacheSlot<'_> {
    fn get(&self) -> Option<PadicDigits> {
        self.cache.as_ref()?.get(&self.key)
    }

    fn put(&mut self, d: &PadicDigits) -> Result<(), String> {
        match self.cache.as_mut() {
            Some(c) => c.put(&self.key, d).map_err(|e| e.to_string()),
            None => Ok(()),
        }
    }
}

/// Runs one parsed command line. Never panics on bad input; problems are
/// reported through the status field.
pub fn dispatch(cli: &Cli) -> Report {
    let start = Instant::now();
    let mut cache = match &cli.cache {
        Some(path) => match Cache::open(path) {
            Ok(c) => Some(c),
            Err(e) => return usage_report(command_name(&cli.command), e.to_string()),
        },
        None => None,
    };
    let mut report = run(cli, cache.as_mut());
    report.certificate.guard_digits = cli.guard_digits;
    if matches!(cli.command, Command::VerifyPaper) {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    report
}

pub fn command_name(c: &Command) -> &'static str {
    match c {
        Command::VerifyMonthly { .. } => "verify-monthly",
        Command::ComputeA { .. } => "compute-a",
        Command::ComputeBn { .. } => "compute-bn",
        Command::Lp { .. } => "lp",
        Command::VerifyTheorem1 { .. } => "verify-theorem1",
        Command::VerifySeriesIdentities { .. } => "verify-series-identities",
        Command::GammaLimit { .. } => "gamma-limit",
        Command::EvalHypergeometric { .. } => "eval-hypergeometric",
        Command::VerifyPaper => "verify-paper",
    }
}

fn run(cli: &Cli, cache: Option<&mut Cache>) -> Report {
    let name = command_name(&cli.command);
    let guard = cli.guard_digits;
    match &cli.command {
        Command::VerifyMonthly { n_max } => {
            if *n_max == 0 {
                return usage_report(name, "--n-max must be at least 1");
            }
            let rows = verify_monthly(*n_max);
            let ok = rows.iter().all(|r| r.equal);
            let table = rows
                .iter()
                .map(|r| json!({"n": r.n, "v_lhs": r.v_lhs, "v_rhs": r.v_rhs, "equal": r.equal}))
                .collect();
            let mut r = Report::new(name).param("n_max", *n_max);
            r.result = Payload::table(table);
            r.status = Status::from_check(ok);
            r
        }

        Command::ComputeA {
            p,
            s_max,
            precision,
            expect,
        } => {
            let s_max = s_max.unwrap_or_else(|| default_s_max(*p, 9, 6));
            let prec = Precision::new(*precision).with_guard(guard);
            let mut slot = CacheSlot {
                cache,
                key: make_key(
                    "a_zeta",
                    &[("p", p.to_string()), ("s_max", s_max.to_string())],
                    *precision as usize,
                ),
            };
            let mut r = Report::new(name)
                .param("p", *p)
                .param("s_max", s_max)
                .param("precision", *precision);
            let is_three = *p == 3;
            if is_three {
                if let Some(hit) = slot.get() {
                    r.result = Payload::from_digits(hit);
                    r.certificate.cached = Some(true);
                    check_expected(&mut r, expect);
                    return r;
                }
            }
            let (a, rep) = match a_zeta(*p, s_max, &prec) {
                Ok(x) => x,
                Err(e) => return error_report(name, &e),
            };
            // never print digits past the stabilized count
            let shown = (*precision as i64).min(rep.stabilized_digits).max(0) as usize;
            r.result = Payload::cyclo(&a, shown);
            r.certificate.cauchy_valuations = rep.cauchy.clone();
            r.certificate.stabilized_digits = Some(rep.stabilized_digits);
            if !rep.stabilized {
                r.certificate
                    .notes
                    .push("Cauchy valuations are not monotone".into());
            }
            if is_three && a.rational_part().is_some() && rep.stabilized {
                let d = PadicDigits::new(a.coeff(0), shown);
                if let Err(e) = slot.put(&d) {
                    r.certificate.notes.push(e);
                }
                r.certificate.cached = Some(false);
            }
            check_expected(&mut r, expect);
            r
        }

        Command::ComputeBn {
            p,
            n,
            t,
            precision,
            expect,
        } => {
            let t_val = match parse_rational(t) {
                Ok(t) => t,
                Err(e) => return usage_report(name, e),
            };
            let mut r = Report::new(name)
                .param("p", *p)
                .param("n", *n)
                .param("t", t_val.to_string())
                .param("precision", *precision);
            let mut slot = CacheSlot {
                cache,
                key: make_key(
                    "bn",
                    &[
                        ("p", p.to_string()),
                        ("n", n.to_string()),
                        ("t", t_val.to_string()),
                    ],
                    *precision as usize,
                ),
            };
            if let Some(hit) = slot.get() {
                r.result = Payload::from_digits(hit);
                r.certificate.cached = Some(true);
                check_expected(&mut r, expect);
                return r;
            }
            match with_relative(*precision, guard, |prec| bn_at(*p, *n, &t_val, prec)) {
                Ok((x, cert, _)) => {
                    let d = PadicDigits::new(&x, *precision as usize);
                    r.result = Payload::from_digits(d.clone());
                    r.certificate = r.certificate.clone().with_truncation(&cert);
                    r.certificate.cached = slot.cache.is_some().then_some(false);
                    if let Err(e) = slot.put(&d) {
                        r.certificate.notes.push(e);
                    }
                }
                Err(e) => return error_report(name, &e),
            }
            check_expected(&mut r, expect);
            r
        }

        Command::Lp {
            p,
            s,
            branch,
            precision,
            expect,
        } => {
            let s_val = match parse_rational(s) {
                Ok(s) => s,
                Err(e) => return usage_report(name, e),
            };
            let mut r = Report::new(name)
                .param("p", *p)
                .param("s", s_val.to_string())
                .param("branch", *branch)
                .param("precision", *precision);
            let mut slot = CacheSlot {
                cache,
                key: make_key(
                    "lp",
                    &[
                        ("p", p.to_string()),
                        ("s", s_val.to_string()),
                        ("j", branch.to_string()),
                    ],
                    *precision as usize,
                ),
            };
            if let Some(hit) = slot.get() {
                r.result = Payload::from_digits(hit);
                r.certificate.cached = Some(true);
                check_expected(&mut r, expect);
                return r;
            }
            let argument = |prec: &Precision| -> padic_hyper::Result<LArgument> {
                if s_val.is_integer() {
                    let n = i64::try_from(s_val.to_integer())
                        .map_err(|_| Error::Usage(format!("s = {s_val} is too large")))?;
                    Ok(LArgument::Integer(n))
                } else {
                    let abs = 2 * prec.working() + 8;
                    padic_argument(&s_val, *p, abs)
                        .map(LArgument::Padic)
                        .map_err(Error::Usage)
                }
            };
            let computed = with_relative(*precision, guard, |prec| {
                let v = lp_value(*p, argument(prec)?, *branch, prec)?;
                Ok((v.value, (v.certificate, v.pole_loss)))
            });
            match computed {
                Ok((x, (cert, loss), _)) => {
                    let d = PadicDigits::new(&x, *precision as usize);
                    r.result = Payload::from_digits(d.clone());
                    r.certificate = r.certificate.clone().with_truncation(&cert);
                    if loss > 0 {
                        r.certificate
                            .notes
                            .push(format!("{loss} digits lost to the pole at s = 1"));
                    }
                    r.certificate.cached = slot.cache.is_some().then_some(false);
                    if let Err(e) = slot.put(&d) {
                        r.certificate.notes.push(e);
                    }
                }
                Err(e) => return error_report(name, &e),
            }
            check_expected(&mut r, expect);
            r
        }

        Command::VerifyTheorem1 {
            p,
            r: rr,
            precision,
            s_max,
        } => {
            let s_max = s_max.unwrap_or_else(|| default_s_max(*p, 9, 7));
            let prec = Precision::new(*precision).with_guard(guard);
            let mut r = Report::new(name)
                .param("p", *p)
                .param("r", *rr)
                .param("s_max", s_max)
                .param("precision", *precision);
            let check = match theorem_ii_check(*p, *rr, s_max, &prec) {
                Ok(c) => c,
                Err(e) => return error_report(name, &e),
            };
            let n = *precision as usize;
            let lhs = PadicDigits::new(&check.lhs, n);
            let rhs = PadicDigits::new(&check.rhs, n);
            r.result = Payload::from_digits(lhs.clone());
            r.result.table = vec![json!({
                "lhs": lhs,
                "rhs": rhs,
                "agreement": check.agreement,
                "D": PadicDigits::new(&check.d, n),
                "eigen_agreement": check.eigen_agreement,
            })];
            r.certificate.cauchy_valuations = check.report.cauchy.clone();
            r.certificate.stabilized_digits = Some(check.report.stabilized_digits);
            // the limit only fixes as many digits as the partial values agree on
            let needed = (*precision as i64).min(check.report.stabilized_digits - 1);
            r.status = Status::from_check(check.agreement >= needed);
            r.message = Some(format!("lhs and rhs agree to {} digits", check.agreement));
            r
        }

        Command::VerifySeriesIdentities { order } => {
            let mut r = Report::new(name).param("order", *order);
            let (b1, b2) = match (verify_b1_identity(*order), verify_b2_identity(*order)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => return error_report(name, &e),
            };
            r.result = Payload::table(vec![
                json!({"identity": "b_1", "agrees_through": b1, "equal": b1 == *order}),
                json!({"identity": "b_2", "agrees_through": b2, "equal": b2 == *order}),
            ]);
            r.status = Status::from_check(b1 == *order && b2 == *order);
            r
        }

        Command::GammaLimit {
            p,
            s_max,
            k_max,
            precision,
        } => {
            let k_max = k_max.unwrap_or(*s_max);
            let prec = Precision::new(*precision).with_guard(guard);
            let mut r = Report::new(name)
                .param("p", *p)
                .param("s_max", *s_max)
                .param("k_max", k_max)
                .param("precision", *precision);
            let check = match binom_limit_check(*p, *s_max, k_max, &prec) {
                Ok(c) => c,
                Err(e) => return error_report(name, &e),
            };
            let n = *precision as usize;
            let limit = check.products.last().expect("K_max ≥ 1");
            r.result = Payload::padic(limit, n);
            r.result.table = check
                .report
                .partials
                .iter()
                .enumerate()
                .map(|(i, b)| {
                    json!({
                        "s": i + 1,
                        "binomial": PadicDigits::new(b, n),
                        "product": check.products.get(i).map(|x| PadicDigits::new(x, n)),
                        "agreement_diagonal": check.diagonal.get(i),
                        "agreement_with_limit": check.against_limit[i],
                    })
                })
                .collect();
            r.certificate.cauchy_valuations = check.report.cauchy.clone();
            let cap = prec.working();
            let increasing = check
                .against_limit
                .windows(2)
                .all(|w| w[0] < w[1] || w[1] >= cap);
            r.status = Status::from_check(increasing);
            r
        }

        Command::EvalHypergeometric {
            alphas,
            betas,
            t,
            x,
            p,
            precision,
        } => {
            let parsed = (|| -> Result<_, String> {
                Ok((
                    parse_list(alphas)?,
                    parse_list(betas)?,
                    parse_rational(t)?,
                    parse_rational(x)?,
                ))
            })();
            let (al, be, t_val, x_val) = match parsed {
                Ok(v) => v,
                Err(e) => return usage_report(name, e),
            };
            let mut r = Report::new(name)
                .param(
                    "alphas",
                    al.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
                )
                .param(
                    "betas",
                    be.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
                )
                .param("t", t_val.to_string())
                .param("x", x_val.to_string())
                .param("p", *p)
                .param("precision", *precision);
            let params = match HypergeometricParams::new(al, be, t_val, *p) {
                Ok(v) => v,
                Err(e) => return error_report(name, &e),
            };
            let xp = match padic_argument(&x_val, *p, 4 * i64::from(*precision) + 64) {
                Ok(v) => v,
                Err(e) => return usage_report(name, e),
            };
            match with_relative(*precision, guard, |prec| {
                eval_pfq_mahler(&params, &xp, prec)
            }) {
                Ok((v, cert, _)) => {
                    r.result = Payload::padic(&v, *precision as usize);
                    r.certificate = r.certificate.clone().with_truncation(&cert);
                }
                Err(e) => return error_report(name, &e),
            }
            r
        }

        Command::VerifyPaper => {
            let knobs = Precision::new(0).with_guard(guard);
            let results = verify_paper(&knobs);
            let ok = results.iter().all(|c| c.passed);
            let mut r = Report::new(name).param("guard_digits", guard);
            r.result = Payload::table(
                results
                    .iter()
                    .map(|c| serde_json::to_value(c).expect("claims serialize"))
                    .collect(),
            );
            r.status = Status::from_check(ok);
            r
        }
    }
}

/// One line per report, for terminal use.
pub fn summary(r: &Report) -> String {
    let mut out = format!(
        "{} [{}]",
        r.command,
        serde_json::to_value(r.status)
            .unwrap()
            .as_str()
            .unwrap_or("")
    );
    if let Some(m) = &r.message {
        out.push_str(&format!(": {m}"));
    }
    out.push('\n');
    if let Some(v) = r.result.valuation {
        out.push_str(&format!("valuation {v}\n"));
    }
    if !r.result.digits.is_empty() {
        let d: Vec<String> = r.result.digits.iter().map(|d| d.to_string()).collect();
        out.push_str(&format!("digits {}\n", d.join(",")));
    } else if r.result.kind.is_some() && r.result.table.is_empty() {
        out.push_str(&format!(
            "zero to precision {}\n",
            r.result.precision.unwrap_or(0)
        ));
    }
    for row in &r.result.table {
        if let (Some(id), Some(name), Some(passed)) =
            (row.get("id"), row.get("name"), row.get("passed"))
        {
            let mark = if passed.as_bool() == Some(true) {
                "PASS"
            } else {
                "FAIL"
            };
            let detail = row.get("detail").and_then(|d| d.as_str()).unwrap_or("");
            out.push_str(&format!(
                "{mark} {id:>2} {}: {detail}\n",
                name.as_str().unwrap_or("")
            ));
        } else if row.get("equal").and_then(|e| e.as_bool()) == Some(false) {
            out.push_str(&format!("mismatch {row}\n"));
        }
    }
    if !r.result.table.is_empty() && r.command == "verify-monthly" {
        out.push_str(&format!("{} rows\n", r.result.table.len()));
    }
    out
}
