use std::collections::BTreeMap;

use hhgeo::hh_verify::{
    discrepancy_reference, falsify_search_with, regression_suite, Chain, FalsifyOptions,
    FalsifySummary, HhVerifier, RegressionCase,
};
use hhgeo::npc_space::Space;
use serde_json::{json, Value};

use crate::cli::{Format, VerifyArgs};
use crate::output::{csv_text, emit, json_text, num, opt_num, CliError};

pub const CSV_HEADER: [&str; 12] = [
    "kind",
    "name",
    "space",
    "trials",
    "seed",
    "tol",
    "evaluated",
    "discarded",
    "failed",
    "violations",
    "value",
    "pass",
];

fn suite(name: &str) -> Result<(Vec<Chain>, bool), CliError> {
    let chain = match name {
        "all" => return Ok((Chain::ALL.to_vec(), true)),
        "regression" => return Ok((Vec::new(), true)),
        "classic" => Chain::ClassicHh,
        "h" => Chain::HHh,
        "conde" => Chain::CondeHh,
        "cb1" => Chain::ThmCb1,
        "cb2" => Chain::ThmCb2,
        "ty1" => Chain::ThmTy1,
        "corollary" => Chain::CorollaryDistance,
        other => other
            .parse()
            .map_err(|_| CliError::Usage(format!("unknown suite `{other}`")))?,
    };
    Ok((vec![chain], false))
}

pub fn run(args: &VerifyArgs) -> Result<bool, CliError> {
    let (chains, with_regression) = suite(&args.suite)?;
    let space: Space = args.space.parse()?;
    let verifier = HhVerifier::default().with_tol(args.tol)?;
    let options = FalsifyOptions {
        c_term: args.c_term.into(),
        ..FalsifyOptions::default()
    };

    let summaries = chains
        .iter()
        .map(|&c| falsify_search_with(c, &space, args.trials, args.seed, args.tol, &options))
        .collect::<Result<Vec<_>, _>>()?;
    let cases = if with_regression {
        regression_suite(&verifier)?
    } else {
        Vec::new()
    };
    let reference = discrepancy_reference(&verifier)?;
    let pass = summaries.iter().all(FalsifySummary::pass) && cases.iter().all(RegressionCase::pass);

    let text = match args.output.format.unwrap_or(Format::Json) {
        Format::Json => json_text(&report_json(args, &summaries, &cases, &reference, pass)),
        Format::Csv => csv_text(&CSV_HEADER, &csv_rows(args, &summaries, &cases, &reference))?,
    };
    emit(args.output.out.as_deref(), &text)?;
    if args.output.out.is_some() {
        for s in &summaries {
            eprintln!(
                "{}: {} violations in {} instances, worst margin {}",
                s.chain,
                s.violations,
                s.evaluated,
                opt_num(s.worst_margin)
            );
        }
        if with_regression {
            let failed = cases.iter().filter(|c| !c.pass()).count();
            eprintln!("regression: {failed} of {} cases failed", cases.len());
        }
    }
    Ok(pass)
}

fn probe_table(summaries: &[FalsifySummary]) -> Value {
    let mut table = BTreeMap::new();
    for s in summaries.iter().filter(|s| !s.probe_violations.is_empty()) {
        let probes: BTreeMap<&String, Value> = s
            .probe_violations
            .iter()
            .map(|(k, n)| (k, json!({ "violations": n, "worst": s.probe_worst.get(k) })))
            .collect();
        table.insert(s.chain.name(), probes);
    }
    json!(table)
}

fn report_json(
    args: &VerifyArgs,
    summaries: &[FalsifySummary],
    cases: &[RegressionCase],
    reference: &BTreeMap<String, f64>,
    pass: bool,
) -> Value {
    json!({
        "schema": 1,
        "command": "verify",
        "suite": args.suite,
        "space": args.space,
        "trials": args.trials,
        "seed": args.seed,
        "tol": args.tol,
        "c_term": hhgeo::hh_verify::CTermForm::from(args.c_term).label(),
        "chains": summaries.iter().map(FalsifySummary::to_json).collect::<Vec<_>>(),
        "regression": cases.iter().map(RegressionCase::to_json).collect::<Vec<_>>(),
        "discrepancies": {
            "reference": reference,
            "falsify": probe_table(summaries),
        },
        "pass": pass,
    })
}

fn csv_rows(
    args: &VerifyArgs,
    summaries: &[FalsifySummary],
    cases: &[RegressionCase],
    reference: &BTreeMap<String, f64>,
) -> Vec<Vec<String>> {
    let mut rows = Vec::new();
    let common = |kind: &str, name: String| {
        vec![
            kind.to_string(),
            name,
            args.space.clone(),
            args.trials.to_string(),
            args.seed.to_string(),
            num(args.tol),
        ]
    };
    for s in summaries {
        let mut row = common("falsify", s.chain.name().to_string());
        row.extend([
            s.evaluated.to_string(),
            s.discarded.to_string(),
            s.failed.to_string(),
            s.violations.to_string(),
            opt_num(s.worst_margin),
            s.pass().to_string(),
        ]);
        rows.push(row);
        for (key, n) in &s.probe_violations {
            let mut row = common("discrepancy_falsify", format!("{}:{key}", s.chain));
            row.extend([
                s.evaluated.to_string(),
                String::new(),
                String::new(),
                n.to_string(),
                opt_num(s.probe_worst.get(key).copied()),
                String::new(),
            ]);
            rows.push(row);
        }
    }
    for c in cases {
        let deviation = c
            .expected
            .iter()
            .zip(&c.actual)
            .map(|(e, a)| (e - a).abs())
            .fold(0.0, f64::max);
        let mut row = common("regression", c.name.clone());
        row.extend([
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            num(deviation),
            c.pass().to_string(),
        ]);
        rows.push(row);
    }
    for (key, value) in reference {
        let mut row = common("discrepancy_reference", key.clone());
        row.extend([
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            num(*value),
            String::new(),
        ]);
        rows.push(row);
    }
    rows
}
