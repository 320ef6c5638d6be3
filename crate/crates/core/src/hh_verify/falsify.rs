use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::convexity::{
    check_convex, check_h_convex, squared_distance_function, CheckConfig, GeodesicFunction,
    HFunction,
};
use crate::error::{Error, Result};
use crate::npc_space::{Geodesic, Space};

use super::chains::{CTermForm, HhVerifier};
use super::params::TheoremParams;
use super::report::InequalityReport;

/// The inequality chains known to [`falsify_search`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Chain {
    ClassicHh,
    HHh,
    CondeHh,
    ThmCb1,
    ThmCb2,
    ThmTy1,
    CorollaryDistance,
}

impl Chain {
    pub const ALL: [Chain; 7] = [
        Chain::ClassicHh,
        Chain::HHh,
        Chain::CondeHh,
        Chain::ThmCb1,
        Chain::ThmCb2,
        Chain::ThmTy1,
        Chain::CorollaryDistance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Chain::ClassicHh => "classic_hh",
            Chain::HHh => "h_hh",
            Chain::CondeHh => "conde_hh",
            Chain::ThmCb1 => "thm_cb1",
            Chain::ThmCb2 => "thm_cb2",
            Chain::ThmTy1 => "thm_ty1",
            Chain::CorollaryDistance => "corollary_distance",
        }
    }

    fn index(self) -> u64 {
        Chain::ALL.iter().position(|c| *c == self).expect("listed") as u64
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Chain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Chain::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown chain `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FalsifyOptions {
    /// Subtracted term used for the asserted third side of the corollary.
    pub c_term: CTermForm,
    /// Sample count of the h-convexity precondition check.
    pub check_samples: usize,
}

impl Default for FalsifyOptions {
    fn default() -> Self {
        Self {
            c_term: CTermForm::Difference,
            check_samples: 64,
        }
    }
}

/// Outcome of a falsification run.
#[derive(Debug, Clone, PartialEq)]
pub struct FalsifySummary {
    pub chain: Chain,
    pub space: String,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    pub evaluated: usize,
    /// Instances whose precondition check failed.
    pub discarded: usize,
    /// Instances whose evaluation returned an error.
    pub failed: usize,
    pub first_error: Option<String>,
    pub violations: usize,
    pub worst_margin: Option<f64>,
    pub worst: Option<InequalityReport>,
    /// Violations of the alternative readings, keyed by `*_margin` probe.
    pub probe_violations: BTreeMap<String, usize>,
    pub probe_worst: BTreeMap<String, f64>,
}

impl FalsifySummary {
    fn empty(chain: Chain, space: &Space, trials: usize, seed: u64, tol: f64) -> Self {
        Self {
            chain,
            space: space.to_string(),
            trials,
            seed,
            tol,
            evaluated: 0,
            discarded: 0,
            failed: 0,
            first_error: None,
            violations: 0,
            worst_margin: None,
            worst: None,
            probe_violations: BTreeMap::new(),
            probe_worst: BTreeMap::new(),
        }
    }

    pub fn pass(&self) -> bool {
        self.violations == 0 && self.failed == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": 1,
            "chain": self.chain.name(),
            "space": self.space,
            "trials": self.trials,
            "seed": self.seed,
            "tol": self.tol,
            "evaluated": self.evaluated,
            "discarded": self.discarded,
            "failed": self.failed,
            "first_error": self.first_error,
            "violations": self.violations,
            "worst_margin": self.worst_margin,
            "worst": self.worst.as_ref().map(InequalityReport::to_json),
            "probe_violations": self.probe_violations,
            "probe_worst": self.probe_worst,
            "pass": self.pass(),
        })
    }
}

enum Outcome {
    Discarded,
    Failed(String),
    Evaluated(InequalityReport),
}

/// Runs `trials` random admissible instances of the named chain in `space`.
pub fn falsify_search(
    chain: &str,
    space: &Space,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<FalsifySummary> {
    falsify_search_with(
        chain.parse()?,
        space,
        trials,
        seed,
        tol,
        &FalsifyOptions::default(),
    )
}

pub fn falsify_search_with(
    chain: Chain,
    space: &Space,
    trials: usize,
    seed: u64,
    tol: f64,
    options: &FalsifyOptions,
) -> Result<FalsifySummary> {
    let verifier = HhVerifier::default().with_tol(tol)?;
    let outcomes: Vec<Outcome> = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, chain, i));
            match run_trial(chain, space, &verifier, options, &mut rng) {
                Ok(Some(report)) => Outcome::Evaluated(report),
                Ok(None) => Outcome::Discarded,
                Err(e) => Outcome::Failed(e.to_string()),
            }
        })
        .collect();

    let mut summary = FalsifySummary::empty(chain, space, trials, seed, tol);
    for outcome in outcomes {
        let report = match outcome {
            Outcome::Discarded => {
                summary.discarded += 1;
                continue;
            }
            Outcome::Failed(msg) => {
                summary.failed += 1;
                summary.first_error.get_or_insert(msg);
                continue;
            }
            Outcome::Evaluated(report) => report,
        };
        summary.evaluated += 1;
        if !report.pass {
            summary.violations += 1;
        }
        for (key, &value) in report.probes.iter().filter(|(k, _)| k.ends_with("_margin")) {
            let count = summary.probe_violations.entry(key.clone()).or_insert(0);
            if !(value >= -tol) {
                *count += 1;
            }
            let worst = summary.probe_worst.entry(key.clone()).or_insert(value);
            *worst = worst.min(value);
        }
        let margin = if report.sides.iter().all(|(_, v)| v.is_finite()) {
            report.min_margin()
        } else {
            f64::NEG_INFINITY
        };
        if summary.worst_margin.is_none_or(|w| margin < w) {
            summary.worst_margin = Some(margin);
            summary.worst = Some(report);
        }
    }
    Ok(summary)
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn trial_seed(seed: u64, chain: Chain, trial: u64) -> u64 {
    splitmix(splitmix(splitmix(seed) ^ chain.index()) ^ trial)
}

fn run_trial(
    chain: Chain,
    space: &Space,
    verifier: &HhVerifier,
    options: &FalsifyOptions,
    rng: &mut ChaCha8Rng,
) -> Result<Option<InequalityReport>> {
    let check = CheckConfig {
        seed: rng.gen(),
        ..CheckConfig::with_samples(options.check_samples)
    };
    let g = random_geodesic(space, rng)?;
    match chain {
        Chain::ClassicHh | Chain::HHh | Chain::CondeHh => {
            let f = random_function(space, rng)?;
            let (a, b) = draw_interval(rng, false);
            let h = match chain {
                Chain::HHh => draw_h(rng, false),
                _ => HFunction::Identity,
            };
            if chain == Chain::CondeHh {
                if !check_convex(&f, &g, &check)?.holds {
                    return Ok(None);
                }
                return verifier.conde_hh(&f, &g).map(Some);
            }
            if !check_h_convex(&f, &g.restrict(a, b)?, &h, &check)?.holds {
                return Ok(None);
            }
            let phi = f.along(&g)?;
            let mut report = match chain {
                Chain::ClassicHh => verifier.classic_hh(&phi, a, b)?,
                _ => verifier.h_hh(&phi, &h, a, b)?,
            };
            attach(&mut report, &f, &g);
            Ok(Some(report))
        }
        Chain::ThmCb1 | Chain::ThmCb2 | Chain::ThmTy1 => {
            let f = random_function(space, rng)?;
            let gl = chain == Chain::ThmTy1;
            let h = draw_h(rng, gl);
            let p = draw_params(
                rng,
                chain == Chain::ThmCb1,
                matches!(h, HFunction::GodunovaLevin),
            )?;
            if !check_h_convex(&f, &g, &h, &check)?.holds {
                return Ok(None);
            }
            if chain != Chain::ThmTy1
                && !check_h_convex(&f, &g.restrict(p.a_rho(), p.b_rho())?, &h, &check)?.holds
            {
                return Ok(None);
            }
            match chain {
                Chain::ThmCb1 => verifier.thm_cb1(&f, &g, &h, &p),
                Chain::ThmCb2 => verifier.thm_cb2(&f, &g, &h, &p),
                _ => verifier.thm_ty1(&f, &g, &h, &p),
            }
            .map(Some)
        }
        Chain::CorollaryDistance => {
            let g2 = random_geodesic(space, rng)?;
            let h = draw_h(rng, true);
            let p = draw_params(rng, false, matches!(h, HFunction::GodunovaLevin))?;
            if !h.dominates_identity(options.check_samples) {
                return Ok(None);
            }
            verifier
                .corollary_distance(&g, &g2, &h, &p, options.c_term)
                .map(Some)
        }
    }
}

/// Reproducible instance for parameter sweeps: `f = d²(·, y)` along `g`,
/// and a second geodesic `g2` for the distance corollary.
#[derive(Debug, Clone)]
pub struct SampleInstance {
    pub f: GeodesicFunction,
    pub g: Geodesic,
    pub g2: Geodesic,
}

impl SampleInstance {
    pub fn new(space: &Space, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(splitmix(seed));
        let y = space.random_point(&mut rng);
        let f = squared_distance_function(space, &y, 2.0)?;
        let g = random_geodesic(space, &mut rng)?;
        let g2 = random_geodesic(space, &mut rng)?;
        Ok(Self { f, g, g2 })
    }

    /// Runs one chain; the one-dimensional chains use `f ∘ γ` on `[a, b]`.
    pub fn evaluate(
        &self,
        verifier: &HhVerifier,
        chain: Chain,
        h: &HFunction,
        p: &TheoremParams,
        c_term: CTermForm,
    ) -> Result<InequalityReport> {
        let (f, g) = (&self.f, &self.g);
        let mut report = match chain {
            Chain::ClassicHh => verifier.classic_hh(&f.along(g)?, p.a, p.b)?,
            Chain::HHh => verifier.h_hh(&f.along(g)?, h, p.a, p.b)?,
            Chain::CondeHh => return verifier.conde_hh(f, g),
            Chain::ThmCb1 => return verifier.thm_cb1(f, g, h, p),
            Chain::ThmCb2 => return verifier.thm_cb2(f, g, h, p),
            Chain::ThmTy1 => return verifier.thm_ty1(f, g, h, p),
            Chain::CorollaryDistance => {
                return verifier.corollary_distance(g, &self.g2, h, p, c_term)
            }
        };
        attach(&mut report, f, g);
        Ok(report)
    }
}

fn attach(report: &mut InequalityReport, f: &GeodesicFunction, g: &Geodesic) {
    if let Value::Object(map) = &mut report.instance {
        map.insert("function".into(), f.to_json());
        map.insert("geodesic".into(), g.to_json());
    }
}

fn random_geodesic<R: Rng + ?Sized>(space: &Space, rng: &mut R) -> Result<Geodesic> {
    let x = space.random_point(rng);
    let y = space.random_point(rng);
    Geodesic::new(x, y)
}

/// `d^k(·, y)` with a random center and `k = 2` half of the time, otherwise `k ∈ [1, 3]`.
fn random_function<R: Rng + ?Sized>(space: &Space, rng: &mut R) -> Result<GeodesicFunction> {
    let y = space.random_point(rng);
    let k = if rng.gen_bool(0.5) {
        2.0
    } else {
        rng.gen_range(1.0..=3.0)
    };
    squared_distance_function(space, &y, k)
}

/// Catalog weights with `h(t) >= t`; `1/t` only when `gl` allows it.
fn draw_h<R: Rng + ?Sized>(rng: &mut R, gl: bool) -> HFunction {
    let roll: f64 = rng.gen();
    let k: f64 = rng.gen_range(0.25..=1.0);
    match roll {
        r if r < 0.3 => HFunction::Identity,
        r if r < 0.6 => HFunction::Power(k),
        r if r < 0.8 || !gl => HFunction::ConstantOne,
        _ => HFunction::GodunovaLevin,
    }
}

/// `0 <= a < b <= 1` with `b - a >= 0.05`; the endpoints land exactly on
/// 0 or 1 a fifth of the time. With `inner`, `[a, b] ⊂ [0.05, 0.95]`.
fn draw_interval<R: Rng + ?Sized>(rng: &mut R, inner: bool) -> (f64, f64) {
    let (lo, hi) = if inner { (0.05, 0.95) } else { (0.0, 1.0) };
    let a = if !inner && rng.gen_bool(0.2) {
        lo
    } else {
        rng.gen_range(lo..=hi - 0.05)
    };
    let b = if !inner && rng.gen_bool(0.2) {
        hi
    } else {
        rng.gen_range(a + 0.05..=hi)
    };
    (a, b)
}

/// `α ∈ [0.25, 3]`, `ρ ∈ [0.5, 2.5]`, and with `need_q` also `q ∈ [1.5, 4]`
/// such that `αq > 1.05`.
fn draw_params<R: Rng + ?Sized>(rng: &mut R, need_q: bool, inner: bool) -> Result<TheoremParams> {
    let (alpha, q) = loop {
        let alpha = rng.gen_range(0.25..=3.0);
        if !need_q {
            break (alpha, None);
        }
        let q: f64 = rng.gen_range(1.5..=4.0);
        if alpha * q > 1.05 {
            break (alpha, Some(q));
        }
    };
    let rho = rng.gen_range(0.5..=2.5);
    let (a, b) = draw_interval(rng, inner);
    TheoremParams::new(alpha, rho, a, b, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_names_round_trip() {
        for c in Chain::ALL {
            assert_eq!(c.name().parse::<Chain>().unwrap(), c);
        }
        assert!(matches!("thm_xx".parse::<Chain>(), Err(Error::Usage(_))));
    }

    #[test]
    fn zero_trials_is_empty() {
        let s = falsify_search("corollary_distance", &Space::HalfPlane, 0, 1, 1e-8).unwrap();
        assert_eq!(
            (s.evaluated, s.violations, s.discarded, s.failed),
            (0, 0, 0, 0)
        );
        assert!(s.worst.is_none());
        assert!(s.pass());
    }

    #[test]
    fn draws_respect_ranges() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..2000 {
            let p = draw_params(&mut rng, true, false).unwrap();
            assert!((0.25..=3.0).contains(&p.alpha) && (0.5..=2.5).contains(&p.rho));
            assert!(p.b - p.a >= 0.05 - 1e-15);
            let q = p.q.unwrap();
            assert!((1.5..=4.0).contains(&q) && p.alpha * q > 1.05);
            let p = draw_params(&mut rng, false, true).unwrap();
            assert!(p.a >= 0.05 && p.b <= 0.95);
            assert!(draw_h(&mut rng, false).dominates_identity(64));
            assert!(!matches!(draw_h(&mut rng, false), HFunction::GodunovaLevin));
        }
    }

    #[test]
    fn small_runs_pass_and_repeat() {
        let space = Space::Euclidean(2);
        for chain in Chain::ALL {
            let s = falsify_search_with(chain, &space, 20, 7, 1e-8, &FalsifyOptions::default())
                .unwrap();
            assert!(s.pass(), "{chain}: {:?}", s.to_json());
            assert!(s.evaluated > 0);
            let again = falsify_search_with(chain, &space, 20, 7, 1e-8, &FalsifyOptions::default())
                .unwrap();
            assert_eq!(s.to_json().to_string(), again.to_json().to_string());
        }
    }
}
