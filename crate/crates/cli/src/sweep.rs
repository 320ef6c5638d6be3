use hhgeo::convexity::h_catalog;
use hhgeo::hh_verify::{
    compute_c, compute_c_oracle, Chain, HhVerifier, SampleInstance, TheoremParams,
};
use hhgeo::npc_space::Space;
use serde_json::json;

use crate::cli::{Format, SweepArgs};
use crate::output::{csv_text, emit, json_text, num, CliError};

pub const CHAIN_HEADER: [&str; 16] = [
    "chain", "space", "h", "alpha", "rho", "a", "b", "q", "side1", "side2", "side3", "side4",
    "margin1", "margin2", "margin3", "pass",
];

pub const CONSTANTS_HEADER: [&str; 10] = [
    "alpha",
    "rho",
    "a",
    "b",
    "h",
    "c",
    "c_oracle",
    "c_abs_diff",
    "e_h",
    "pass",
];

/// Agreement required between the closed form of C and its oracle.
const C_TOL: f64 = 1e-8;

fn check_grid(name: &str, values: &[f64], ok: impl Fn(f64) -> bool) -> Result<(), CliError> {
    if values.is_empty() {
        return Err(CliError::Usage(format!("empty --{name} grid")));
    }
    if let Some(v) = values.iter().find(|v| !ok(**v)) {
        return Err(CliError::Usage(format!("--{name} value {v} out of range")));
    }
    Ok(())
}

fn grid(args: &SweepArgs, with_q: bool) -> Result<Vec<TheoremParams>, CliError> {
    check_grid("alpha", &args.alpha, |v| v > 0.0 && v.is_finite())?;
    check_grid("rho", &args.rho, |v| v > 0.0 && v.is_finite())?;
    check_grid("a", &args.a, |v| (0.0..=1.0).contains(&v))?;
    check_grid("b", &args.b, |v| (0.0..=1.0).contains(&v))?;
    check_grid("q", &args.q, |v| v > 1.0 && v.is_finite())?;
    let qs: Vec<Option<f64>> = if with_q {
        args.q.iter().map(|&q| Some(q)).collect()
    } else {
        vec![None]
    };
    let mut out = Vec::new();
    for &alpha in &args.alpha {
        for &rho in &args.rho {
            for &a in &args.a {
                for &b in &args.b {
                    for &q in &qs {
                        // pairs with a >= b, and αq <= 1, are skipped
                        if let Ok(p) = TheoremParams::new(alpha, rho, a, b, q) {
                            out.push(p);
                        }
                    }
                }
            }
        }
    }
    if out.is_empty() {
        return Err(CliError::Usage(
            "no admissible grid point (need a < b, and alpha * q > 1 for thm_cb1)".into(),
        ));
    }
    Ok(out)
}

pub fn run(args: &SweepArgs) -> Result<bool, CliError> {
    let h = h_catalog(&args.h)?;
    let verifier = HhVerifier::default().with_tol(args.tol)?;
    let format = args.output.format.unwrap_or(Format::Csv);
    if args.target == "constants" {
        return constants(args, &verifier, format);
    }
    let chain: Chain = args.target.parse()?;
    let space: Space = args.space.parse()?;
    let instance = SampleInstance::new(&space, args.seed)?;
    let points = grid(args, chain == Chain::ThmCb1)?;
    let reports = points
        .iter()
        .map(|p| instance.evaluate(&verifier, chain, &h, p, args.c_term.into()))
        .collect::<Result<Vec<_>, _>>()?;
    let pass = reports.iter().all(|r| r.pass);
    let text = match format {
        Format::Json => json_text(&json!({
            "schema": 1,
            "command": "sweep",
            "chain": chain.name(),
            "space": args.space,
            "seed": args.seed,
            "rows": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
            "pass": pass,
        })),
        Format::Csv => {
            let rows: Vec<Vec<String>> = points
                .iter()
                .zip(&reports)
                .map(|(p, r)| {
                    let mut row = vec![
                        chain.name().to_string(),
                        args.space.clone(),
                        h.label(),
                        num(p.alpha),
                        num(p.rho),
                        num(p.a),
                        num(p.b),
                        p.q.map(num).unwrap_or_default(),
                    ];
                    let sides = r.values();
                    row.extend((0..4).map(|i| sides.get(i).copied().map(num).unwrap_or_default()));
                    row.extend(
                        (0..3).map(|i| r.margins.get(i).copied().map(num).unwrap_or_default()),
                    );
                    row.push(r.pass.to_string());
                    row
                })
                .collect();
            csv_text(&CHAIN_HEADER, &rows)?
        }
    };
    emit(args.output.out.as_deref(), &text)?;
    Ok(pass)
}

fn constants(args: &SweepArgs, verifier: &HhVerifier, format: Format) -> Result<bool, CliError> {
    let h = h_catalog(&args.h)?;
    let mut rows = Vec::new();
    let mut records = Vec::new();
    let mut pass = true;
    for p in grid(args, false)? {
        let c = compute_c(p.alpha, p.rho, p.a, p.b);
        let oracle = compute_c_oracle(p.alpha, p.rho, p.a, p.b, verifier.quad())?;
        let e = verifier.compute_e(&h, &p)?;
        let ok = (c - oracle).abs() <= C_TOL && c >= 0.0;
        pass &= ok;
        rows.push(vec![
            num(p.alpha),
            num(p.rho),
            num(p.a),
            num(p.b),
            h.label(),
            num(c),
            num(oracle),
            num((c - oracle).abs()),
            num(e),
            ok.to_string(),
        ]);
        records.push(json!({
            "alpha": p.alpha, "rho": p.rho, "a": p.a, "b": p.b, "h": h.label(),
            "c": c, "c_oracle": oracle, "e_h": e, "pass": ok,
        }));
    }
    let text = match format {
        Format::Json => json_text(
            &json!({ "schema": 1, "command": "sweep", "chain": "constants", "rows": records, "pass": pass }),
        ),
        Format::Csv => csv_text(&CONSTANTS_HEADER, &rows)?,
    };
    emit(args.output.out.as_deref(), &text)?;
    Ok(pass)
}
