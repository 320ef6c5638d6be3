use hhgeo::convexity::h_catalog;
use hhgeo::frac_calc::{FracOrder, FractionalIntegrator, RhoParam};
use hhgeo::hh_verify::{compute_c, compute_c_oracle, HhVerifier, TheoremParams};
use serde_json::json;

use crate::cli::{ConstantsArgs, Format, FracintArgs, Operator};
use crate::expr::ExprFunction;
use crate::output::{csv_text, emit, json_text, num, opt_num, CliError};

fn op_name(op: Operator) -> &'static str {
    match op {
        Operator::RlLeft => "rl-left",
        Operator::RlRight => "rl-right",
        Operator::HadamardLeft => "hadamard-left",
        Operator::HadamardRight => "hadamard-right",
        Operator::KatugampolaLeft => "katugampola-left",
        Operator::KatugampolaRight => "katugampola-right",
    }
}

fn need(v: Option<f64>, flag: &str, op: Operator) -> Result<f64, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("--op {} needs --{flag}", op_name(op))))
}

pub fn run(args: &FracintArgs) -> Result<bool, CliError> {
    let f = ExprFunction::parse(&args.f)
        .map_err(|e| CliError::Usage(format!("bad --f expression: {e}")))?;
    let g = |t: f64| f.eval(t);
    let ops = FractionalIntegrator::default();
    let alpha = FracOrder::new(args.alpha)?;
    let x = args.x;
    let q = match args.op {
        Operator::RlLeft => ops.rl_left(&g, alpha, need(args.a, "a", args.op)?, x)?,
        Operator::RlRight => ops.rl_right(&g, alpha, x, need(args.b, "b", args.op)?)?,
        Operator::HadamardLeft => ops.hadamard_left(&g, alpha, need(args.a, "a", args.op)?, x)?,
        Operator::HadamardRight => ops.hadamard_right(&g, alpha, x, need(args.b, "b", args.op)?)?,
        Operator::KatugampolaLeft => ops.katugampola_left(
            &g,
            alpha,
            RhoParam::new(args.rho)?,
            need(args.a, "a", args.op)?,
            x,
        )?,
        Operator::KatugampolaRight => ops.katugampola_right(
            &g,
            alpha,
            RhoParam::new(args.rho)?,
            x,
            need(args.b, "b", args.op)?,
        )?,
    };
    let text = match args.output.format.unwrap_or(Format::Json) {
        Format::Json => json_text(&json!({
            "schema": 1,
            "command": "fracint",
            "op": op_name(args.op),
            "alpha": args.alpha,
            "rho": args.rho,
            "a": args.a,
            "x": x,
            "b": args.b,
            "f": f.source(),
            "value": q.value,
            "error_estimate": q.error_estimate,
            "panels": q.panels,
        })),
        Format::Csv => csv_text(
            &[
                "op",
                "alpha",
                "rho",
                "a",
                "x",
                "b",
                "f",
                "value",
                "error_estimate",
                "panels",
            ],
            &[vec![
                op_name(args.op).to_string(),
                num(args.alpha),
                num(args.rho),
                opt_num(args.a),
                num(x),
                opt_num(args.b),
                f.source().to_string(),
                num(q.value),
                num(q.error_estimate),
                q.panels.to_string(),
            ]],
        )?,
    };
    emit(args.output.out.as_deref(), &text)?;
    Ok(true)
}

pub fn constants(args: &ConstantsArgs) -> Result<bool, CliError> {
    let h = h_catalog(&args.h)?;
    let p = TheoremParams::new(args.alpha, args.rho, args.a, args.b, None)?;
    let verifier = HhVerifier::default();
    let c = compute_c(p.alpha, p.rho, p.a, p.b);
    let oracle = compute_c_oracle(p.alpha, p.rho, p.a, p.b, verifier.quad())?;
    let e = verifier.compute_e(&h, &p)?;
    let text = match args.output.format.unwrap_or(Format::Json) {
        Format::Json => json_text(&json!({
            "schema": 1,
            "command": "constants",
            "alpha": p.alpha,
            "rho": p.rho,
            "a": p.a,
            "b": p.b,
            "h": h.label(),
            "c": c,
            "c_oracle": oracle,
            "e_h": e,
        })),
        Format::Csv => csv_text(
            &["alpha", "rho", "a", "b", "h", "c", "c_oracle", "e_h"],
            &[vec![
                num(p.alpha),
                num(p.rho),
                num(p.a),
                num(p.b),
                h.label(),
                num(c),
                num(oracle),
                num(e),
            ]],
        )?,
    };
    emit(args.output.out.as_deref(), &text)?;
    Ok(true)
}
