//! The `duplex` command-line tool: an expression evaluator over
//! constructive reals plus entry points to the logic, sequence and
//! number-theory demos.
//!
//! Exit status is 0 on a definite answer, 2 when the answer is `Unknown`
//! (and only then does the word appear in the output), and 1 on errors.

pub mod expr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use duplex::logic::{classical_valid, expand_classical_abbreviations, intuitionistic_countermodel, parse_formula};
use duplex::numtheory::{irrationality_check_pi, Verdict};
use duplex::sequences::{goldbach_indicator, power_fraction_discrepancy, ProbeStatus, DEFAULT_BIT_CAP};
use duplex::Located;
use serde_json::{json, Value};

use crate::expr::{eval_expr, parse_expr, parse_rational, Constant, Evaluation, Expr};

pub const STATUS_OK: i32 = 0;
pub const STATUS_ERROR: i32 = 1;
pub const STATUS_UNKNOWN: i32 = 2;

/// Fractional digits shown for the star discrepancy.
const DISCREPANCY_DIGITS: usize = 12;

#[derive(Debug, Parser)]
#[command(name = "duplex", version, about = "Exact constructive reals, checked claims and honest answers")]
pub struct Cli {
    /// Print a single JSON object instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an arithmetic expression to a number of decimals.
    Eval {
        expr: String,
        #[command(flatten)]
        digits: DigitsArg,
        /// Precision levels tried when certifying a denominator apart from zero.
        #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u32).range(1..))]
        budget: u32,
    },
    /// Print a named constant.
    Digits {
        #[arg(value_enum)]
        constant: ConstantArg,
        #[command(flatten)]
        digits: DigitsArg,
    },
    /// Decide `x > a` or `x < b` for rationals `a < b`.
    Locate {
        expr: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u32).range(1..))]
        budget: u32,
    },
    /// Propositional logic, classical and intuitionistic.
    Logic {
        #[command(subcommand)]
        command: LogicCommand,
    },
    /// Probe a fugacious sequence.
    Fugace {
        #[command(subcommand)]
        command: FugaceCommand,
    },
    /// Star discrepancy of the fractional parts of alpha^n, n = 1..=N.
    Equi {
        /// Rational alpha > 1, e.g. 3/2.
        #[arg(long)]
        alpha: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Certify an irrationality measure on continued-fraction convergents.
    Measure {
        #[command(subcommand)]
        command: MeasureCommand,
    },
}

#[derive(Debug, Args)]
pub struct DigitsArg {
    /// Fractional decimal digits.
    #[arg(long, env = "DUPLEX_DIGITS", default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..=100_000))]
    pub digits: u32,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ConstantArg {
    Pi,
    E,
    Sqrt2,
    Zeta3,
}

impl ConstantArg {
    fn constant(self) -> Constant {
        match self {
            ConstantArg::Pi => Constant::Pi,
            ConstantArg::E => Constant::E,
            ConstantArg::Sqrt2 => Constant::Sqrt2,
            ConstantArg::Zeta3 => Constant::Zeta3,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum LogicCommand {
    /// Decide validity; both readings unless one is selected.
    Check {
        formula: String,
        #[arg(long, conflicts_with_all = ["intuitionistic", "both"])]
        classical: bool,
        #[arg(long, conflicts_with = "both")]
        intuitionistic: bool,
        #[arg(long)]
        both: bool,
        /// Print a Kripke countermodel when intuitionistically invalid.
        #[arg(long)]
        countermodel: bool,
    },
    /// Rewrite or, implication and equivalence in terms of not and and.
    Expand { formula: String },
}

#[derive(Debug, Subcommand)]
pub enum FugaceCommand {
    /// The indicator of "2n + 4 is not a sum of two primes".
    Goldbach {
        #[arg(long)]
        upto: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum MeasureCommand {
    /// Check |pi - p/q| > q^-E for every convergent with q <= Q.
    Pi {
        #[arg(long, default_value_t = 42, value_parser = clap::value_parser!(u32).range(1..))]
        exponent: u32,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_q: u64,
    },
}

/// Everything a run produces; `main` only prints it.
#[derive(Debug, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub status: i32,
}

impl Output {
    fn text(stdout: String, status: i32) -> Self {
        Output {
            stdout,
            stderr: String::new(),
            status,
        }
    }
}

struct Reply {
    text: String,
    json: Value,
    status: i32,
}

impl Reply {
    fn ok(text: String, json: Value) -> Self {
        Reply {
            text,
            json,
            status: STATUS_OK,
        }
    }
}

pub fn run(cli: &Cli) -> Output {
    let (name, result) = dispatch(&cli.command);
    match result {
        Ok(reply) if cli.json => Output::text(format!("{}\n", reply.json), reply.status),
        Ok(reply) => Output::text(format!("{}\n", reply.text), reply.status),
        Err(message) if cli.json => Output::text(
            format!("{}\n", json!({ "command": name, "error": message })),
            STATUS_ERROR,
        ),
        Err(message) => Output {
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
            status: STATUS_ERROR,
        },
    }
}

fn dispatch(command: &Command) -> (&'static str, Result<Reply, String>) {
    match command {
        Command::Eval { expr, digits, budget } => ("eval", eval(expr, digits.digits, *budget)),
        Command::Digits { constant, digits } => ("digits", Ok(digits_of(*constant, digits.digits))),
        Command::Locate { expr, a, b, budget } => ("locate", locate(expr, a, b, *budget)),
        Command::Logic {
            command:
                LogicCommand::Check {
                    formula,
                    classical,
                    intuitionistic,
                    countermodel,
                    ..
                },
        } => ("logic check", logic_check(formula, !intuitionistic, !classical, *countermodel)),
        Command::Logic {
            command: LogicCommand::Expand { formula },
        } => ("logic expand", logic_expand(formula)),
        Command::Fugace {
            command: FugaceCommand::Goldbach { upto },
        } => ("fugace goldbach", Ok(goldbach(*upto))),
        Command::Equi { alpha, n } => ("equi", equi(alpha, *n)),
        Command::Measure {
            command: MeasureCommand::Pi { exponent, max_q },
        } => ("measure pi", measure(*exponent, *max_q)),
    }
}

fn unknown_reply(command: &str, expr: &str, subexpression: &str, budget: u32) -> Reply {
    Reply {
        text: format!("Unknown: cannot certify {subexpression} apart from zero within budget {budget}"),
        json: json!({
            "command": command,
            "expr": expr,
            "outcome": "Unknown",
            "subexpression": subexpression,
            "budget": budget,
        }),
        status: STATUS_UNKNOWN,
    }
}

fn evaluate(text: &str, budget: u32) -> Result<(Expr, Evaluation), String> {
    let e = parse_expr(text).map_err(|err| err.to_string())?;
    let result = eval_expr(&e, budget).map_err(|err| err.to_string())?;
    Ok((e, result))
}

fn eval(text: &str, digits: u32, budget: u32) -> Result<Reply, String> {
    let (e, result) = evaluate(text, budget)?;
    let (value, certificates) = match result {
        Evaluation::Value { value, certificates } => (value, certificates),
        Evaluation::Unknown { subexpression, budget } => {
            return Ok(unknown_reply("eval", &e.to_string(), &subexpression, budget))
        }
    };
    let d = value.to_decimal(digits as usize);
    let mut lines = vec![d.to_string()];
    for c in &certificates {
        lines.push(format!(
            "certified: {} # 0 with |x| > 1/{} at level {} (budget {budget})",
            c.denominator, c.m, c.level
        ));
    }
    let certs: Vec<Value> = certificates
        .iter()
        .map(|c| json!({ "denominator": c.denominator, "m": c.m, "level": c.level }))
        .collect();
    Ok(Reply::ok(
        lines.join("\n"),
        json!({
            "command": "eval",
            "expr": e.to_string(),
            "outcome": "value",
            "value": d.text,
            "error_bound": d.error_bound(),
            "digits": digits,
            "budget": budget,
            "certificates": certs,
        }),
    ))
}

fn digits_of(constant: ConstantArg, digits: u32) -> Reply {
    let c = constant.constant();
    let d = c.duplex().to_decimal(digits as usize);
    Reply::ok(
        d.to_string(),
        json!({
            "command": "digits",
            "constant": c.name(),
            "value": d.text,
            "error_bound": d.error_bound(),
            "digits": digits,
        }),
    )
}

fn locate(text: &str, a: &str, b: &str, budget: u32) -> Result<Reply, String> {
    let a = parse_rational(a)?;
    let b = parse_rational(b)?;
    if a >= b {
        return Err(format!("need a < b, got a = {a}, b = {b}"));
    }
    let (e, result) = evaluate(text, budget)?;
    let x = match result {
        Evaluation::Value { value, .. } => value,
        Evaluation::Unknown { subexpression, budget } => {
            return Ok(unknown_reply("locate", &e.to_string(), &subexpression, budget))
        }
    };
    let claim = x.locate(&a, &b).map_err(|err| err.to_string())?;
    let shown = match e {
        Expr::Lit(_) | Expr::Const(_) | Expr::Sqrt(_) | Expr::Abs(_) | Expr::Inv(_) | Expr::Max(..) | Expr::Min(..) => {
            e.to_string()
        }
        _ => format!("({e})"),
    };
    let (relation, bound) = match &claim {
        Located::Above(lo) => (">", lo),
        Located::Below(hi) => ("<", hi),
    };
    Ok(Reply::ok(
        format!("{shown} {relation} {bound}"),
        json!({
            "command": "locate",
            "expr": e.to_string(),
            "a": a.to_string(),
            "b": b.to_string(),
            "claim": relation,
            "bound": bound.to_string(),
        }),
    ))
}

fn verdict(valid: bool) -> &'static str {
    if valid {
        "valid"
    } else {
        "invalid"
    }
}

fn logic_check(text: &str, classical: bool, intuitionistic: bool, want_model: bool) -> Result<Reply, String> {
    let f = parse_formula(text).map_err(|err| err.to_string())?;
    let mut lines = Vec::new();
    let mut obj = serde_json::Map::new();
    obj.insert("command".into(), json!("logic check"));
    obj.insert("formula".into(), json!(f.to_string()));
    if classical {
        let valid = classical_valid(&f).map_err(|err| err.to_string())?;
        lines.push(format!("classical: {}", verdict(valid)));
        obj.insert("classical".into(), json!(valid));
    }
    if intuitionistic {
        let model = intuitionistic_countermodel(&f);
        lines.push(format!("intuitionistic: {}", verdict(model.is_none())));
        obj.insert("intuitionistic".into(), json!(model.is_none()));
        if let (true, Some(m)) = (want_model, model) {
            lines.push(m.to_string());
            obj.insert(
                "countermodel".into(),
                json!({
                    "worlds": m.world_count(),
                    "root": 0,
                    "edges": m.edges,
                    "valuation": m.valuation,
                }),
            );
        }
    }
    Ok(Reply::ok(lines.join("\n"), Value::Object(obj)))
}

fn logic_expand(text: &str) -> Result<Reply, String> {
    let f = parse_formula(text).map_err(|err| err.to_string())?;
    let g = expand_classical_abbreviations(&f);
    Ok(Reply::ok(
        g.to_string(),
        json!({ "command": "logic expand", "formula": f.to_string(), "expanded": g.to_string() }),
    ))
}

fn goldbach(upto: u64) -> Reply {
    let status = goldbach_indicator().probe(upto);
    let json = match status {
        ProbeStatus::AllZeroSoFar(n) => json!({
            "command": "fugace goldbach",
            "upto": upto,
            "status": "AllZeroSoFar",
            "frontier": n,
        }),
        ProbeStatus::NonzeroFound { index, value } => json!({
            "command": "fugace goldbach",
            "upto": upto,
            "status": "NonzeroFound",
            "index": index,
            "value": value.to_string(),
        }),
    };
    Reply::ok(format!("goldbach: {status}"), json)
}

fn equi(alpha: &str, n: u64) -> Result<Reply, String> {
    let alpha = parse_rational(alpha)?;
    let d = power_fraction_discrepancy(&alpha, n, DEFAULT_BIT_CAP).map_err(|err| err.to_string())?;
    let decimal = d.to_decimal_string(DISCREPANCY_DIGITS);
    Ok(Reply::ok(
        format!("D*_{n}({alpha}) = {d}\n          ~ {decimal}"),
        json!({
            "command": "equi",
            "alpha": alpha.to_string(),
            "n": n,
            "discrepancy": d.to_string(),
            "decimal": decimal,
        }),
    ))
}

fn measure(exponent: u32, max_q: u64) -> Result<Reply, String> {
    let report = irrationality_check_pi(exponent, max_q).map_err(|err| err.to_string())?;
    let unknown = report.count(Verdict::Unknown);
    let mut text = report.to_string();
    let status = if unknown > 0 {
        text.push_str(&format!("\nUnknown: {unknown} convergents undecided at the precision cap"));
        STATUS_UNKNOWN
    } else {
        STATUS_OK
    };
    let entries: Vec<Value> = report
        .entries
        .iter()
        .map(|e| {
            json!({
                "p": e.convergent.p.to_string(),
                "q": e.convergent.q.to_string(),
                "margin": e.margin.to_string(),
                "verdict": e.verdict.to_string(),
            })
        })
        .collect();
    Ok(Reply {
        text,
        json: json!({
            "command": "measure pi",
            "exponent": exponent,
            "max_q": max_q,
            "entries": entries,
            "pass": report.count(Verdict::Pass),
            "fail": report.count(Verdict::Fail),
            "undecided": unknown,
        }),
        status,
    })
}
