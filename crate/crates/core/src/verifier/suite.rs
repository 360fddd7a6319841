use std::time::Instant;

use rayon::prelude::*;

use super::checks::{check_hm_refined_eigen, MeanSet};
use super::gen::{gen_spd_pair, random_unit_vector, stream_rng, Stream, UnitVector};
use super::report::{empty_aggregates, CheckAggregate, SuiteReport};
use super::{CheckKind, InstanceId, SuiteConfig};
use crate::error::{Error, Result};
use crate::means::SpdPair;
use crate::scalar::{critical_nu_diff, critical_nu_ratio, Weight};

/// The weight grid plus the extremal weights of both scalar weight families at
/// `b = h` and their mirrors `1 - nu`, sorted and deduplicated.
pub fn augmented_nu_grid(grid: &[f64], h: f64) -> Vec<f64> {
    let mut out = grid.to_vec();
    if h != 1.0 {
        for nu in [critical_nu_ratio(h), critical_nu_diff(h)]
            .into_iter()
            .flatten()
        {
            let nu = nu.clamp(0.0, 1.0);
            out.push(nu);
            out.push(1.0 - nu);
        }
    }
    out.sort_by(f64::total_cmp);
    out.dedup();
    out
}

struct Outcome {
    aggregates: Vec<CheckAggregate>,
    errors: Vec<String>,
}

fn annotate(id: InstanceId, e: Error) -> Error {
    Error::Instance {
        instance: id.to_string(),
        source: Box::new(e),
    }
}

fn evaluate_pair(pair: &SpdPair, x: &UnitVector, base: InstanceId, cfg: &SuiteConfig) -> Outcome {
    let mut aggregates = empty_aggregates();
    let mut errors = Vec::new();
    for nu in augmented_nu_grid(&cfg.nu_grid, pair.h()) {
        let id = InstanceId { nu, ..base };
        let mut step = || -> Result<()> {
            let w = Weight::new(nu)?;
            let set = MeanSet::new(pair, w);
            let mut results = set.check_all()?;
            results.push(check_hm_refined_eigen(pair.a_eigen(), x, w)?);
            for r in results {
                let r = r.with_instance(id).with_tolerance(cfg.rel_tol);
                let slot = CheckKind::ALL
                    .iter()
                    .position(|&k| k == r.check)
                    .expect("known check");
                aggregates[slot].record(&r);
            }
            Ok(())
        };
        if let Err(e) = step() {
            errors.push(annotate(id, e).to_string());
        }
    }
    Outcome { aggregates, errors }
}

fn run_instance(cfg: &SuiteConfig, dim: usize, index: usize) -> Outcome {
    let base = InstanceId {
        seed: cfg.seed,
        index,
        dim,
        nu: f64::NAN,
    };
    let generated = gen_spd_pair(
        dim,
        cfg.m,
        cfg.big_m,
        &mut stream_rng(cfg.seed, Stream::Pair, dim, index),
    )
    .and_then(|p| {
        let x = random_unit_vector(
            dim,
            &mut stream_rng(cfg.seed, Stream::UnitVector, dim, index),
        )?;
        Ok((p, x))
    });
    match generated {
        Ok((pair, x)) => evaluate_pair(&pair, &x, base, cfg),
        Err(e) => Outcome {
            aggregates: empty_aggregates(),
            errors: vec![format!(
                "instance seed={} index={index} dim={dim}: {e}",
                cfg.seed
            )],
        },
    }
}

/// Runs every check over `trials` instances per dimension and every weight
/// of the augmented grid. Instances are evaluated in parallel and merged in
/// `(dim, index)` order, so the report does not depend on scheduling.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    let start = Instant::now();
    let tasks: Vec<(usize, usize)> = cfg
        .dims
        .iter()
        .flat_map(|&d| (0..cfg.trials).map(move |k| (d, k)))
        .collect();
    let outcomes: Vec<Outcome> = tasks
        .par_iter()
        .map(|&(dim, index)| run_instance(cfg, dim, index))
        .collect();
    let mut report = SuiteReport::new(cfg.clone());
    for o in outcomes {
        report.absorb(&o.aggregates, o.errors);
    }
    Ok(report.finish(start.elapsed().as_secs_f64()))
}

/// Runs every check on one caller-supplied pair. The unit vector for the
/// Hölder–McCarthy check comes from the seeded stream; `trials` and `dims`
/// in the echoed config are replaced by `1` and the pair's dimension.
pub fn run_pair(cfg: &SuiteConfig, pair: &SpdPair) -> Result<SuiteReport> {
    let mut echo = cfg.clone();
    echo.trials = 1;
    echo.dims = vec![pair.n()];
    echo.validate().or_else(|e| match e {
        // 1x1 pairs are fine here
        Error::Config { field: "dims", .. } => Ok(()),
        e => Err(e),
    })?;
    let start = Instant::now();
    let n = pair.n();
    let x = random_unit_vector(n, &mut stream_rng(cfg.seed, Stream::UnitVector, n, 0))?;
    let base = InstanceId {
        seed: cfg.seed,
        index: 0,
        dim: n,
        nu: f64::NAN,
    };
    let outcome = evaluate_pair(pair, &x, base, &echo);
    let mut report = SuiteReport::new(echo);
    report.absorb(&outcome.aggregates, outcome.errors);
    Ok(report.finish(start.elapsed().as_secs_f64()))
}
