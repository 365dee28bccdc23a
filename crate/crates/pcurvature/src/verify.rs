//! The isospectrality verification driver: sample parameters, compute the
//! p-curvature and the paper-level target, evaluate both at random points off
//! the pole locus, and compare characteristic polynomials of the pencils.
//!
//! Determinism: the per-sample randomness is derived from (seed, index), so
//! reports are byte-identical across runs and thread counts; parallel work is
//! merged by sample index.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::charpoly::{
    char_poly, char_poly_to_text, pencil_isospectral_field, pencil_isospectral_rat,
    PencilStrategy,
};
use crate::error::{Error, Result};
use crate::matrix::{self, Matrix};
use crate::ratfunc::{RatField, RatFunc};
use crate::report::SampleRecord;
use crate::vars::VarId;

pub const MAX_RESAMPLE: u32 = 100;

/// One verifiable model instance: curvature and target as functions of the
/// drawn parameter tuple, plus which coordinates get sampled.
pub trait IsospecInstance: Sync {
    fn rat(&self) -> &RatField;
    fn param_names(&self) -> Vec<String>;
    fn draw_params(&self, rng: &mut ChaCha8Rng) -> Vec<u64>;
    fn curvature(&self, params: &[u64]) -> Result<Vec<Matrix<RatFunc>>>;
    fn target(&self, params: &[u64]) -> Result<Vec<Matrix<RatFunc>>>;
    /// Coordinates to evaluate before the char-poly comparison; when empty
    /// the comparison stays symbolic in all remaining variables.
    fn sample_coords(&self) -> Vec<VarId>;
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub samples: u32,
    pub seed: u64,
    pub strategy: PencilStrategy,
    /// Failures at primes below a model's pinned range downgrade to
    /// "soft-fail": a potentially excluded prime, not a refutation.
    pub reliable_prime: bool,
}

fn child_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (index.wrapping_add(1)).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Cap rayon's pool from PCURV_THREADS; call once at process start.
pub fn configure_threads_from_env() {
    if let Ok(v) = std::env::var("PCURV_THREADS") {
        if let Ok(n) = v.trim().parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn evaluate_list(
    rat: &RatField,
    mats: &[Matrix<RatFunc>],
    point: &[u64],
) -> Result<Vec<Matrix<u64>>> {
    mats.iter()
        .map(|m| {
            let n = m.size();
            let mut out = matrix::zero(&rat.session().field(), n);
            for i in 0..n {
                for j in 0..n {
                    out.set(i, j, rat.eval(m.at(i, j), point)?);
                }
            }
            Ok(out)
        })
        .collect()
}

fn failure_witness_field(
    field: &crate::field::PrimeField,
    cs: &[Matrix<u64>],
    ts: &[Matrix<u64>],
) -> String {
    let sum = |mats: &[Matrix<u64>]| {
        let mut acc = matrix::zero(field, mats[0].size());
        for m in mats {
            acc = matrix::add(field, &acc, m);
        }
        acc
    };
    let left = char_poly(field, &sum(cs));
    let right = char_poly(field, &sum(ts));
    format!(
        "charpoly(sum C_i) = {}\ncharpoly(sum C*_i) = {}",
        char_poly_to_text(field, &left),
        char_poly_to_text(field, &right)
    )
}

fn failure_witness_rat(rat: &RatField, cs: &[Matrix<RatFunc>], ts: &[Matrix<RatFunc>]) -> String {
    let sum = |mats: &[Matrix<RatFunc>]| {
        let mut acc = matrix::zero(rat, mats[0].size());
        for m in mats {
            acc = matrix::add(rat, &acc, m);
        }
        acc
    };
    let left = char_poly(rat, &sum(cs));
    let right = char_poly(rat, &sum(ts));
    format!(
        "charpoly(sum C_i) = {}\ncharpoly(sum C*_i) = {}",
        char_poly_to_text(rat, &left),
        char_poly_to_text(rat, &right)
    )
}

/// Run the sampled verification; records are ordered by sample index.
pub fn run_isospec(
    instance: &dyn IsospecInstance,
    opts: &VerifyOptions,
) -> Result<Vec<SampleRecord>> {
    let rat = instance.rat();
    let names = instance.param_names();
    // Draw every parameter tuple up front with the master generator.
    let mut master = ChaCha8Rng::seed_from_u64(opts.seed);
    let draws: Vec<Vec<u64>> = (0..opts.samples)
        .map(|_| instance.draw_params(&mut master))
        .collect();
    // Compute curvature and target once per distinct tuple, in parallel.
    let mut distinct: Vec<Vec<u64>> = draws.clone();
    distinct.sort();
    distinct.dedup();
    let computed: Vec<(Vec<u64>, (Vec<Matrix<RatFunc>>, Vec<Matrix<RatFunc>>))> = distinct
        .par_iter()
        .map(|params| {
            let c = instance.curvature(params)?;
            let t = instance.target(params)?;
            Ok((params.clone(), (c, t)))
        })
        .collect::<Result<_>>()?;
    let lookup = |params: &Vec<u64>| {
        let idx = computed
            .binary_search_by(|(k, _)| k.cmp(params))
            .expect("computed for every drawn tuple");
        &computed[idx].1
    };
    let coords = instance.sample_coords();
    let records: Vec<SampleRecord> = draws
        .par_iter()
        .enumerate()
        .map(|(idx, params)| {
            let (cs, ts) = lookup(params);
            let mut rng = child_rng(opts.seed, idx as u64);
            let labelled_params: Vec<(String, u64)> = names
                .iter()
                .cloned()
                .zip(params.iter().copied())
                .collect();
            let mut record = SampleRecord {
                label: format!("sample {idx}"),
                params: labelled_params,
                point: Vec::new(),
                resamples: 0,
                verdict: "pass".into(),
                mode: String::new(),
                u_samples: 0,
                log2_bound: 0,
                detail: None,
            };
            if coords.is_empty() {
                // Symbolic comparison over the function field.
                let verdict =
                    pencil_isospectral_rat(rat, cs, ts, opts.strategy, &mut rng)?;
                record.mode = verdict.mode.into();
                record.u_samples = verdict.u_samples;
                record.log2_bound = verdict.log2_bound;
                if !verdict.equal {
                    record.verdict = if opts.reliable_prime {
                        "fail".into()
                    } else {
                        "soft-fail".into()
                    };
                    record.detail = Some(failure_witness_rat(rat, cs, ts));
                }
                return Ok(record);
            }
            // Evaluate the coordinates off the pole locus, then compare.
            let p = rat.modulus();
            let nvars = rat.session().num_vars();
            let mut resamples = 0u32;
            let (point_vals, (cs_f, ts_f)) = loop {
                let vals: Vec<u64> = coords.iter().map(|_| rng.gen_range(0..p)).collect();
                let mut point = vec![0u64; nvars];
                for (v, val) in coords.iter().zip(&vals) {
                    point[v.0] = *val;
                }
                match evaluate_list(rat, cs, &point)
                    .and_then(|c| Ok((c, evaluate_list(rat, ts, &point)?)))
                {
                    Ok(pair) => break (vals, pair),
                    Err(Error::PoleAtPoint(_)) => {
                        resamples += 1;
                        if resamples > MAX_RESAMPLE {
                            return Err(Error::DegenerateSampling {
                                retries: MAX_RESAMPLE,
                            });
                        }
                    }
                    Err(e) => return Err(e),
                }
            };
            record.resamples = resamples;
            record.point = coords
                .iter()
                .map(|v| rat.session().registry().name(*v).to_string())
                .zip(point_vals.iter().copied())
                .collect();
            let field = rat.session().field();
            let verdict =
                pencil_isospectral_field(&field, &cs_f, &ts_f, opts.strategy, &mut rng)?;
            record.mode = verdict.mode.into();
            record.u_samples = verdict.u_samples;
            record.log2_bound = verdict.log2_bound;
            if !verdict.equal {
                record.verdict = if opts.reliable_prime {
                    "fail".into()
                } else {
                    "soft-fail".into()
                };
                record.detail = Some(failure_witness_field(&field, &cs_f, &ts_f));
            }
            Ok(record)
        })
        .collect::<Result<_>>()?;
    Ok(records)
}
