//! Acceptance run: one line per criterion, nonzero exit if any fails.

mod common;

use std::time::{Duration, Instant};

use canring::hilbert::{hilbert_series, i_surface_series};
use canring::resolution::{canonical_twist, minimal_resolution};
use canring::strata::{build, verify, Report, Status, StratumKind, Target, VerifyOptions};
use canring::{GbOptions, PrimeField};

const SEEDS: [u64; 3] = [5, 17, 101];
const UPTO: usize = 20;

const LIMIT_TYPE_A: Duration = Duration::from_secs(1);
const LIMIT_TYPE_DD: Duration = Duration::from_secs(1);
const LIMIT_TYPE_B: Duration = Duration::from_secs(30);
const LIMIT_TYPE_DE: Duration = Duration::from_secs(300);
const LIMIT_RESOLUTION_B: Duration = Duration::from_secs(600);
const LIMIT_ORACLES: Duration = Duration::from_secs(60);

/// Leading coefficients of the canonical ring series.
const SERIES_HEAD: [i64; 6] = [1, 2, 4, 6, 9, 13];
const BETTI_TYPE_B: [usize; 5] = [1, 9, 16, 9, 1];
const LAST_TWIST_TYPE_B: i64 = 23;
const DE_MINIMAL_GENERATORS: usize = 20;

type Outcome = Result<String, String>;

fn field() -> PrimeField {
    PrimeField::default()
}

fn limit(kind: StratumKind) -> Duration {
    match kind {
        StratumKind::TypeA => LIMIT_TYPE_A,
        StratumKind::TypeDD => LIMIT_TYPE_DD,
        StratumKind::TypeB => LIMIT_TYPE_B,
        _ => LIMIT_TYPE_DE,
    }
}

const SURFACES: [StratumKind; 4] =
    [StratumKind::TypeA, StratumKind::TypeB, StratumKind::TypeDD, StratumKind::TypeDE];

fn surface_coefficients(kind: StratumKind, seed: u64) -> Result<(Vec<i64>, Duration), String> {
    let inst = build(kind, field(), seed).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let series = hilbert_series(&inst.ideal, &GbOptions::full()).map_err(|e| e.to_string())?;
    let coeffs = series.coefficients(UPTO).map_err(|e| e.to_string())?;
    Ok((coeffs, start.elapsed()))
}

fn series_criterion() -> Outcome {
    let target = i_surface_series().expand(UPTO);
    if target[..6] != SERIES_HEAD {
        return Err(format!("target series starts {:?}", &target[..6]));
    }
    let mut slowest = Vec::new();
    for kind in SURFACES {
        let mut worst = Duration::ZERO;
        for seed in SEEDS {
            let (coeffs, took) = surface_coefficients(kind, seed)?;
            if coeffs != target {
                return Err(format!("{kind} seed {seed}: {coeffs:?}"));
            }
            if took > limit(kind) {
                return Err(format!("{kind} seed {seed}: {took:?} over {:?}", limit(kind)));
            }
            worst = worst.max(took);
        }
        slowest.push(format!("{kind} {}ms", worst.as_millis()));
    }
    Ok(format!("through degree {UPTO}, seeds {SEEDS:?}; slowest {}", slowest.join(", ")))
}

fn plurigenera_criterion() -> Outcome {
    for kind in SURFACES {
        let (coeffs, _) = surface_coefficients(kind, SEEDS[0])?;
        if coeffs[1] != 2 {
            return Err(format!("{kind}: p_g = {}", coeffs[1]));
        }
        for m in 2..=UPTO {
            let expected = 3 + (m * (m - 1) / 2) as i64;
            if coeffs[m] != expected {
                return Err(format!("{kind}: P_{m} = {}, expected {expected}", coeffs[m]));
            }
        }
    }
    Ok(format!("p_g = 2 and P_m = 3 + m(m-1)/2 for 2 <= m <= {UPTO}"))
}

fn resolution_criterion() -> Outcome {
    let (_, weights) = StratumKind::TypeB.ambient();
    let mut worst = Duration::ZERO;
    for seed in SEEDS {
        let inst = build(StratumKind::TypeB, field(), seed).map_err(|e| e.to_string())?;
        let start = Instant::now();
        let res = minimal_resolution(&inst.ideal, None, &GbOptions::full()).map_err(|e| e.to_string())?;
        let took = start.elapsed();
        let betti = res.betti();
        if betti.ranks() != BETTI_TYPE_B || betti.last_twists() != [LAST_TWIST_TYPE_B] {
            return Err(format!("seed {seed}: ranks {:?}, last twists {:?}", betti.ranks(), betti.last_twists()));
        }
        let k = canonical_twist(&betti, weights).map_err(|e| e.to_string())?;
        if k != 1 {
            return Err(format!("seed {seed}: canonical twist {k}"));
        }
        if took > LIMIT_RESOLUTION_B {
            return Err(format!("seed {seed}: {took:?}"));
        }
        worst = worst.max(took);
    }
    Ok(format!("ranks {BETTI_TYPE_B:?}, last twist {LAST_TWIST_TYPE_B}, omega = O(1); slowest {}ms", worst.as_millis()))
}

fn opts() -> VerifyOptions {
    VerifyOptions { resolve: Some(false), ..VerifyOptions::default() }
}

/// Requires every check whose name satisfies `pick` to pass, and at least one to exist.
fn require(report: &Report, pick: impl Fn(&str) -> bool) -> Result<usize, String> {
    let picked: Vec<_> = report.checks.iter().filter(|c| pick(&c.name)).collect();
    if picked.is_empty() {
        return Err(format!("{} seed {}: no matching checks", report.kind, report.seed));
    }
    if let Some(bad) = picked.iter().find(|c| c.status == Status::Fail) {
        return Err(format!("{} seed {}: {}: {}", report.kind, report.seed, bad.name, bad.detail));
    }
    Ok(picked.len())
}

fn require_all(report: &Report) -> Result<usize, String> {
    require(report, |_| true)
}

fn de_intersection_criterion() -> Outcome {
    for seed in SEEDS {
        let r = verify(Target::Stratum(StratumKind::TypeDE), field(), seed, &opts());
        require(&r, |n| n == "X1 cap X2 = X")?;
        require(&r, |n| n.starts_with("X cap "))?;
        let inst = build(StratumKind::TypeDE, field(), seed).map_err(|e| e.to_string())?;
        let res = minimal_resolution(&inst.ideal, None, &GbOptions::full()).map_err(|e| e.to_string())?;
        let minimal = res.betti().ranks()[1];
        if minimal != DE_MINIMAL_GENERATORS {
            return Err(format!("seed {seed}: {minimal} minimal generators"));
        }
    }
    Ok(format!("X1 cap X2 = X by mutual containment, {DE_MINIMAL_GENERATORS} minimal generators, seeds {SEEDS:?}"))
}

/// Exactly `count` disjointness checks, all passing.
fn disjoint(kind: StratumKind, count: usize) -> Result<usize, String> {
    let mut n = 0;
    for seed in SEEDS {
        let r = verify(Target::Stratum(kind), field(), seed, &opts());
        let found = require(&r, |n| n.starts_with("disjoint from"))?;
        if found != count {
            return Err(format!("{kind} seed {seed}: {found} disjointness checks"));
        }
        n += found;
    }
    Ok(n)
}

fn disjointness_criterion() -> Outcome {
    let n = disjoint(StratumKind::TypeB, 3)? + disjoint(StratumKind::TypeDE, 4)?;
    Ok(format!("type B off P(v), P(z), P(w,u); type DE off P(d), P(e), P(g), P(c,f); {n} checks"))
}

fn families_criterion() -> Outcome {
    let mut n = 0;
    for target in [Target::FamilyB, Target::FamilyDD] {
        let r = verify(target, field(), SEEDS[0], &opts());
        for l in &opts().lambdas {
            n += require(&r, |name| name.starts_with(&format!("lambda={l}:")))?;
        }
        n += require_all(&r)?;
    }
    Ok(format!("type B and type DD families at lambda {:?}, {n} checks", opts().lambdas))
}

fn glueing_criterion() -> Outcome {
    let mut n = 0;
    for seed in SEEDS {
        n += require_all(&verify(Target::Glueing, field(), seed, &opts()))?;
    }
    Ok(format!("{n} glueing checks"))
}

fn invariant_cover_criterion() -> Outcome {
    let mut n = 0;
    for seed in SEEDS {
        n += require_all(&verify(Target::InvariantCover, field(), seed, &opts()))?;
    }
    Ok(format!("{n} minors vanish for seeds {SEEDS:?}"))
}

fn oracle_criterion() -> Outcome {
    let start = Instant::now();
    let run = common::membership_oracle(150, 11);
    if !run.mismatches.is_empty() {
        return Err(run.mismatches[0].clone());
    }
    let lcm = common::lcm_oracle(80, 12);
    if let Some(bad) = lcm.first() {
        return Err(bad.clone());
    }
    let pf = common::pfaffian_oracle(200, 13);
    if let Some(bad) = pf.first() {
        return Err(bad.clone());
    }
    let took = start.elapsed();
    if took > LIMIT_ORACLES {
        return Err(format!("took {took:?}"));
    }
    Ok(format!(
        "{} ideals / {} membership queries, 80 intersections, 200 Pfaffians in {}ms",
        run.ideals,
        run.queries,
        took.as_millis()
    ))
}

fn curve_criterion() -> Outcome {
    let expected = i_surface_series().times_one_minus(1).expand(UPTO);
    for kind in [StratumKind::CurveA, StratumKind::CurveB] {
        for seed in SEEDS {
            let inst = build(kind, field(), seed).map_err(|e| e.to_string())?;
            let series = hilbert_series(&inst.ideal, &GbOptions::full()).map_err(|e| e.to_string())?;
            let coeffs = series.coefficients(UPTO).map_err(|e| e.to_string())?;
            if coeffs != expected {
                return Err(format!("{kind} seed {seed}: {coeffs:?}"));
            }
        }
    }
    Ok(format!("curve series = (1 - t) * surface series through degree {UPTO}"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("surface hilbert series and timing", series_criterion),
        ("plurigenera", plurigenera_criterion),
        ("type B minimal resolution", resolution_criterion),
        ("type DE as an intersection", de_intersection_criterion),
        ("disjointness", disjointness_criterion),
        ("one-parameter degenerations", families_criterion),
        ("glueing parametrisation", glueing_criterion),
        ("invariant cover", invariant_cover_criterion),
        ("kernel oracles", oracle_criterion),
        ("canonical curves", curve_criterion),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({detail}) [{secs:.2}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({detail}) [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
