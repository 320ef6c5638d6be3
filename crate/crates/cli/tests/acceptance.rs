//! Acceptance criteria, one line per criterion. Runs without the libtest
//! harness so the verdict lines are always printed.

use std::collections::BTreeMap;
use std::process::{Command, ExitCode};
use std::time::Instant;

use hhgeo::convexity::{
    check_convex_profile, check_h_convex, distance_between_geodesics_function,
    squared_distance_function, CheckConfig, GeodesicFunction, HFunction, POLE_OFFSET,
};
use hhgeo::frac_calc::{gamma_fn, FracOrder, FractionalIntegrator, QuadratureConfig, RhoParam};
use hhgeo::hh_verify::{
    compute_c, compute_c_oracle, falsify_search, CTermForm, Chain, FalsifySummary, HhVerifier,
    TheoremParams,
};
use hhgeo::npc_space::{
    busemann_gap, cn_gap, comparison_gap, distance, four_point_gap, sturm_gap, Geodesic, Point,
    Space,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SPACES: [&str; 4] = [
    "euclidean2",
    "halfplane",
    "spider3",
    "product(euclidean1,halfplane)",
];
const SEEDS: [u64; 3] = [1, 2, 3];
const TRIALS: usize = 1000;
const TOL: f64 = 1e-8;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn spaces() -> Vec<Space> {
    SPACES.iter().map(|s| s.parse().unwrap()).collect()
}

fn al(a: f64) -> FracOrder {
    FracOrder::new(a).unwrap()
}

fn rh(r: f64) -> RhoParam {
    RhoParam::new(r).unwrap()
}

fn rel(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(1e-300)
}

fn operators() -> Outcome {
    let ops = FractionalIntegrator::default();
    let one = |_: f64| 1.0;
    let (a, x): (f64, f64) = (0.5, 2.0);
    let mut worst: f64 = 0.0;
    for alpha in [0.25, 0.5, 1.0, 1.5, 2.5] {
        let g = gamma_fn(alpha + 1.0).unwrap();
        for rho in [0.5, 1.0, 2.0] {
            let want = ((x.powf(rho) - a.powf(rho)) / rho).powf(alpha) / g;
            let left = ops
                .katugampola_left(&one, al(alpha), rh(rho), a, x)
                .unwrap()
                .value;
            let right = ops
                .katugampola_right(&one, al(alpha), rh(rho), a, x)
                .unwrap()
                .value;
            worst = worst.max(rel(left, want)).max(rel(right, want));
        }
        let rl = (x - a).powf(alpha) / g;
        let had = (x / a).ln().powf(alpha) / g;
        worst = worst
            .max(rel(ops.rl_left(&one, al(alpha), a, x).unwrap().value, rl))
            .max(rel(ops.rl_right(&one, al(alpha), a, x).unwrap().value, rl))
            .max(rel(
                ops.hadamard_left(&one, al(alpha), a, x).unwrap().value,
                had,
            ))
            .max(rel(
                ops.hadamard_right(&one, al(alpha), a, x).unwrap().value,
                had,
            ));
    }
    ensure(worst <= 1e-8, || {
        format!("closed-form relative error {worst:e}")
    })?;

    let tol = QuadratureConfig::default().rel_tol * 10.0;
    let fs: [&dyn Fn(f64) -> f64; 3] = [&|t| t * t, &|t: f64| t.sin() + 2.0, &|t: f64| {
        (1.0 + t).ln()
    }];
    let mut reduction: f64 = 0.0;
    for alpha in [0.25, 0.5, 1.0, 1.5, 2.5] {
        for f in fs {
            let k = ops
                .katugampola_left(f, al(alpha), rh(1.0), 0.2, 1.7)
                .unwrap()
                .value;
            let r = ops.rl_left(f, al(alpha), 0.2, 1.7).unwrap().value;
            reduction = reduction.max(rel(k, r));
            let k = ops
                .katugampola_right(f, al(alpha), rh(1.0), 0.2, 1.7)
                .unwrap()
                .value;
            let r = ops.rl_right(f, al(alpha), 0.2, 1.7).unwrap().value;
            reduction = reduction.max(rel(k, r));
        }
    }
    ensure(reduction <= tol, || {
        format!("rho=1 reduction relative error {reduction:e}")
    })?;

    let e = std::f64::consts::E;
    for alpha in [0.25, 0.5, 1.0, 1.5, 2.5] {
        let had = ops.hadamard_left(&one, al(alpha), 1.0, e).unwrap().value;
        let errs: Vec<f64> = [1e-1, 1e-2, 1e-3]
            .iter()
            .map(|&r| {
                (ops.katugampola_left(&one, al(alpha), rh(r), 1.0, e)
                    .unwrap()
                    .value
                    - had)
                    .abs()
            })
            .collect();
        ensure(errs[0] > errs[1] && errs[1] > errs[2], || {
            format!("alpha={alpha}: errors {errs:?} not decreasing")
        })?;
    }
    Ok(format!(
        "closed forms {worst:.1e}, rho=1 reduction {reduction:.1e}, Hadamard limit monotone"
    ))
}

fn geometry() -> Outcome {
    let mut worst_gap = f64::INFINITY;
    let mut flat: f64 = 0.0;
    let mut speed: f64 = 0.0;
    let mut triangle = f64::INFINITY;
    for space in spaces() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for i in 0..10_000 {
            let mut p = || space.random_point(&mut rng);
            let (a, b, c, d) = (p(), p(), p(), p());
            let t = (i as f64 + 0.5) / 1e4;
            let dab = distance(&a, &b).unwrap();
            ensure(dab == distance(&b, &a).unwrap() && dab >= 0.0, || {
                format!("{space}: symmetry")
            })?;
            ensure(distance(&a, &a).unwrap() == 0.0, || {
                format!("{space}: identity")
            })?;
            triangle = triangle.min(distance(&a, &c).unwrap() + distance(&c, &b).unwrap() - dab);
            let g1 = Geodesic::new(a.clone(), b.clone()).unwrap();
            let g2 = Geodesic::new(c.clone(), d.clone()).unwrap();
            let s = (i as f64 * 0.618034).fract();
            let dst = distance(&g1.point_at(s).unwrap(), &g1.point_at(t).unwrap()).unwrap();
            speed = speed.max((dst - (s - t).abs() * g1.length()).abs());
            let cn = cn_gap(&a, &b, &c).unwrap();
            let cmp = comparison_gap(&a, &b, &c, t).unwrap();
            for gap in [
                cn,
                cmp,
                busemann_gap(&a, &b, &c).unwrap(),
                four_point_gap(&a, &b, &c, &d, t).unwrap(),
                sturm_gap(&g1, &g2, t).unwrap(),
            ] {
                worst_gap = worst_gap.min(gap);
            }
            if matches!(space, Space::Euclidean(_)) {
                flat = flat.max(cn.abs()).max(cmp.abs());
            }
        }
    }
    ensure(triangle >= -1e-12, || {
        format!("triangle slack {triangle:e}")
    })?;
    ensure(speed <= 1e-9, || format!("constant speed defect {speed:e}"))?;
    ensure(worst_gap >= -1e-9, || format!("worst gap {worst_gap:e}"))?;
    ensure(flat <= 1e-9, || format!("euclidean flatness {flat:e}"))?;
    Ok(format!(
        "4 spaces x 10^4 instances, worst gap {worst_gap:.1e}, flat defect {flat:.1e}"
    ))
}

fn convexity() -> Outcome {
    let cfg = CheckConfig::default();
    let segment = |a: f64, b: f64| {
        Geodesic::new(
            Point::euclidean(&[a]).unwrap(),
            Point::euclidean(&[b]).unwrap(),
        )
        .unwrap()
    };
    let mut claims = 0;
    for r in [-1.0, 0.25, 0.5, 1.0, 2.0, 3.0] {
        for k in [0.25, 0.5, 1.0] {
            let claimed = ((r <= 0.0 || r >= 1.0) && k <= 1.0) || (0.0 < r && r < 1.0 && k <= r);
            if !claimed {
                continue;
            }
            claims += 1;
            let f = GeodesicFunction::scalar_pullback(format!("x^{r}"), move |x: f64| x.powf(r));
            let g = if r < 0.0 {
                segment(POLE_OFFSET, 1.0)
            } else {
                segment(0.0, 1.0)
            };
            let v = check_h_convex(&f, &g, &HFunction::Power(k), &cfg).unwrap();
            ensure(v.holds, || {
                format!("x^{r} not h_{k}-convex: slack {:e}", v.worst_slack)
            })?;
        }
    }
    for space in spaces() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let g1 =
                Geodesic::new(space.random_point(&mut rng), space.random_point(&mut rng)).unwrap();
            let g2 =
                Geodesic::new(space.random_point(&mut rng), space.random_point(&mut rng)).unwrap();
            let phi = distance_between_geodesics_function(&g1, &g2).unwrap();
            let v = check_convex_profile(&phi, &cfg).unwrap();
            ensure(v.holds, || {
                format!("{space}: distance between geodesics not convex")
            })?;
        }
    }
    Ok(format!(
        "{claims} power-family claims hold, 4 spaces x 10^3 geodesic pairs convex"
    ))
}

fn close(got: &[f64], want: &[f64], tol: f64, what: &str) -> Result<(), String> {
    let ok = got.len() == want.len() && got.iter().zip(want).all(|(g, w)| (g - w).abs() <= tol);
    ensure(ok, || format!("{what}: {got:?} vs {want:?}"))
}

fn chains(runs: &BTreeMap<(Chain, String, u64), FalsifySummary>) -> Outcome {
    let v = HhVerifier::default();
    close(
        &v.classic_hh(&|x| x * x, 0.0, 1.0).unwrap().values(),
        &[0.25, 1.0 / 3.0, 0.5],
        TOL,
        "classic_hh",
    )?;
    let r = v
        .h_hh(&|x: f64| x.sqrt(), &HFunction::Power(0.5), 0.0, 1.0)
        .unwrap();
    close(&r.values(), &[0.5, 2.0 / 3.0, 2.0 / 3.0], TOL, "h_hh")?;

    let unit = TheoremParams::new(1.0, 1.0, 0.0, 1.0, Some(2.0)).unwrap();
    let h = HFunction::Identity;
    for space in spaces() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let f = squared_distance_function(&space, &space.random_point(&mut rng), 2.0).unwrap();
            let g =
                Geodesic::new(space.random_point(&mut rng), space.random_point(&mut rng)).unwrap();
            let mean = v.conde_hh(&f, &g).unwrap().values()[1];
            for r in [
                v.thm_cb1(&f, &g, &h, &unit).unwrap(),
                v.thm_cb2(&f, &g, &h, &unit).unwrap(),
                v.thm_ty1(&f, &g, &h, &unit).unwrap(),
            ] {
                let d = (r.values()[1] - mean).abs();
                ensure(d <= TOL, || {
                    format!("{} on {space}: middle off by {d:e}", r.chain)
                })?;
            }
        }
    }

    let mut evaluated = 0;
    for ((chain, space, seed), s) in runs {
        ensure(s.pass(), || {
            format!(
                "{chain} on {space} seed {seed}: {} violations, {} failed, worst {:e}",
                s.violations,
                s.failed,
                s.worst_margin.unwrap_or(f64::NAN)
            )
        })?;
        evaluated += s.evaluated;
    }
    Ok(format!(
        "examples and reductions hold; {} falsification runs, {evaluated} instances, 0 violations",
        runs.len()
    ))
}

fn constants() -> Outcome {
    let cfg = QuadratureConfig::default();
    let mut worst: f64 = 0.0;
    for alpha in [0.5, 1.0, 2.0, 3.0] {
        for rho in [0.5, 1.0, 2.0] {
            for (a, b) in [(0.0, 1.0), (0.25, 0.75), (0.5, 1.0)] {
                let c = compute_c(alpha, rho, a, b);
                ensure(c >= 0.0, || format!("C({alpha},{rho},{a},{b}) = {c} < 0"))?;
                worst = worst.max((c - compute_c_oracle(alpha, rho, a, b, &cfg).unwrap()).abs());
            }
        }
    }
    ensure(worst <= 1e-8, || format!("closed form vs oracle {worst:e}"))?;
    let spots = [
        (compute_c(1.0, 1.0, 0.0, 1.0), 1.0 / 3.0),
        (compute_c(2.0, 1.0, 0.0, 1.0), 1.0 / 6.0),
    ];
    for (got, want) in spots {
        ensure((got - want).abs() <= 1e-10, || {
            format!("spot value {got} vs {want}")
        })?;
    }
    Ok(format!(
        "36 grid points nonnegative, oracle agreement {worst:.1e}, spot values exact"
    ))
}

fn corollary(runs: &BTreeMap<(Chain, String, u64), FalsifySummary>) -> Outcome {
    let e = |x: f64, y: f64| Point::euclidean(&[x, y]).unwrap();
    let g1 = Geodesic::new(e(0.0, 0.0), e(1.0, 0.0)).unwrap();
    let g2 = Geodesic::new(e(0.0, 1.0), e(1.0, 1.0)).unwrap();
    let v = HhVerifier::default();
    for (alpha, rho, a, b) in [
        (1.0, 1.0, 0.0, 1.0),
        (0.5, 2.0, 0.1, 0.9),
        (2.5, 0.7, 0.0, 0.6),
    ] {
        let p = TheoremParams::new(alpha, rho, a, b, None).unwrap();
        let r = v
            .corollary_distance(&g1, &g2, &HFunction::Identity, &p, CTermForm::Difference)
            .unwrap();
        close(&r.values(), &[1.0; 4], TOL, "parallel translates")?;
    }
    let mut product = Vec::new();
    for space in SPACES {
        let runs: Vec<_> = runs
            .iter()
            .filter(|((c, s, _), _)| *c == Chain::CorollaryDistance && s == space)
            .map(|(_, s)| s)
            .collect();
        let evaluated: usize = runs.iter().map(|s| s.evaluated).sum();
        ensure(runs.iter().all(|s| s.pass()), || {
            format!("{space}: difference form violated")
        })?;
        ensure(evaluated >= TRIALS, || {
            format!("{space}: only {evaluated} instances")
        })?;
        let broken: usize = runs
            .iter()
            .map(|s| {
                s.probe_violations
                    .get("product_margin")
                    .copied()
                    .unwrap_or(0)
            })
            .sum();
        product.push(format!("{space} {broken}/{evaluated}"));
    }
    Ok(format!(
        "[1,1,1,1] reproduced; difference form holds; product form fails on {}",
        product.join(", ")
    ))
}

fn discrepancy_ledger() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_hhgeo"))
        .args(["verify", "--suite", "all", "--trials", "50", "--seed", "1"])
        .output()
        .map_err(|e| e.to_string())?;
    let report: serde_json::Value =
        serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let d = &report["discrepancies"];
    for key in [
        "cb2_literal_ratio",
        "cb2_literal_margin",
        "corollary_product_margin",
        "corollary_difference_margin",
    ] {
        ensure(d["reference"][key].is_number(), || {
            format!("reference.{key} missing")
        })?;
    }
    ensure(
        d["falsify"]["thm_cb2"]["cb2_literal_margin"].is_object(),
        || "falsify cb2 comparison missing".into(),
    )?;
    for key in ["product_margin", "difference_margin"] {
        ensure(d["falsify"]["corollary_distance"][key].is_object(), || {
            format!("falsify corollary {key} missing")
        })?;
    }
    let ratio = d["reference"]["cb2_literal_ratio"].as_f64().unwrap();
    Ok(format!("cb2 literal/exact ratio {ratio} (= rho), corollary product-vs-difference present (exit {:?})", out.status.code()))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut runs = BTreeMap::new();
    for chain in Chain::ALL {
        for space in spaces() {
            for seed in SEEDS {
                let s = falsify_search(chain.name(), &space, TRIALS, seed, TOL).unwrap();
                runs.insert((chain, space.to_string(), seed), s);
            }
        }
    }
    let criteria: [Criterion; 7] = [
        ("operator oracles", Box::new(operators)),
        ("geometry suite", Box::new(geometry)),
        ("convexity claims", Box::new(convexity)),
        ("inequality chains", Box::new(|| chains(&runs))),
        ("constants", Box::new(constants)),
        ("corollary", Box::new(|| corollary(&runs))),
        ("discrepancy ledger", Box::new(discrepancy_ledger)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {}/7 passed in {:.1}s",
        7 - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
