//! Seeded verification campaigns.

use std::path::PathBuf;
use std::time::Instant;

use btpgl::building::{bfs_dist, dist, EnumCap};
use btpgl::cycles::{
    build_f, decompose_intersection, decomposition_parts, dist_to_family_windowed, family_keys,
    verify_intersection_distance, CycleConfiguration, FFamily,
};
use btpgl::lattice::complete_to_complement;
use btpgl::random::{random_instance, trial_seed, InstanceMode, RandomParams};
use btpgl::schema::InstanceFile;
use btpgl::LatticeBasis;
use clap::Args;
use rayon::prelude::*;
use serde::Serialize;

use crate::{default_cycle_count, to_json, write_file, CliResult, Failure, Oracle};

#[derive(Debug, Args)]
pub struct CampaignArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, default_value_t = 3)]
    pub p: u64,
    /// Number of cycles; defaults to `n` for hyperplanes, 2 otherwise (1 when
    /// `n = 2` in higherdim mode).
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long, default_value_t = 4)]
    pub max_val: u32,
    #[arg(long, default_value = "hyperplanes")]
    pub mode: InstanceMode,
    #[arg(long, value_enum, default_value = "formula")]
    pub oracle: Oracle,
    /// Where to write the first disagreeing instance; stderr when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct Summary {
    trials: u64,
    agreements: u64,
    rejections: u64,
    max_lhs: u32,
    /// Seconds.
    wall_time: f64,
}

struct Outcome {
    agree: bool,
    lhs: u32,
    rejections: usize,
    config: CycleConfiguration,
}

/// Distance from `m` to the family by breadth-first search, searching no
/// further than `radius`.
fn bfs_family_distance(m: &LatticeBasis, f: &FFamily, radius: u32) -> CliResult<Option<u32>> {
    let origin = f.vertex(&vec![0; f.generators().len()])?;
    let keys = family_keys(m, f, radius + dist(m, &origin)?)?;
    Ok(bfs_dist(m, m, &keys, radius, EnumCap::from_env())?)
}

/// The family whose distance is the special multiplicity of a higher
/// dimensional intersection.
fn decomposition_family(cfg: &CycleConfiguration) -> CliResult<FFamily> {
    let (l0, ls) = decomposition_parts(cfg)?;
    let mut generators = ls.iter().map(|l| complete_to_complement(l, &l0)).collect::<Result<Vec<_>, _>>()?;
    generators.push(l0);
    Ok(FFamily::from_submodules(cfg.ambient().clone(), generators)?)
}

fn run_trial(params: &RandomParams, seed: u64, oracle: Oracle) -> CliResult<Outcome> {
    let generated = random_instance(seed, params)?;
    let cfg = generated.config;
    let (lhs, rhs, family) = match params.mode {
        InstanceMode::HigherDim => {
            let family = decomposition_family(&cfg)?;
            let lhs = decompose_intersection(&cfg)?.special_multiplicity;
            (lhs, dist_to_family_windowed(cfg.ambient(), &family)?, family)
        }
        _ => {
            let r = verify_intersection_distance(&cfg)?;
            (r.lhs, r.rhs, build_f(&cfg)?)
        }
    };
    let mut agree = lhs == rhs;
    if agree && oracle != Oracle::Formula {
        agree = bfs_family_distance(cfg.ambient(), &family, lhs)? == Some(lhs);
    }
    Ok(Outcome { agree, lhs, rejections: generated.rejections, config: cfg })
}

pub fn cmd_verify(args: &CampaignArgs) -> CliResult<()> {
    let d = args.d.unwrap_or_else(|| default_cycle_count(args.mode, args.n));
    let params = RandomParams::new(args.n, args.p, d, args.max_val, args.mode);
    let start = Instant::now();
    let mut outcomes: Vec<(u64, CliResult<Outcome>)> = (0..args.trials)
        .into_par_iter()
        .map(|t| (t, run_trial(&params, trial_seed(args.seed, t), args.oracle)))
        .collect();
    outcomes.sort_by_key(|(t, _)| *t);
    let mut summary = Summary { trials: args.trials, agreements: 0, rejections: 0, max_lhs: 0, wall_time: 0.0 };
    let mut first_disagreement = None;
    for (t, outcome) in outcomes {
        let o = outcome.map_err(|f| Failure::new(f.code, format!("trial {t}: {}", f.message)))?;
        summary.rejections += o.rejections as u64;
        summary.max_lhs = summary.max_lhs.max(o.lhs);
        if o.agree {
            summary.agreements += 1;
        } else if first_disagreement.is_none() {
            first_disagreement = Some((t, o.config));
        }
    }
    summary.wall_time = start.elapsed().as_secs_f64();
    println!("{}", to_json(&summary));
    match first_disagreement {
        None => Ok(()),
        Some((t, cfg)) => {
            let instance = to_json(&InstanceFile::from_config(&cfg));
            match &args.out {
                Some(path) => write_file(path, &instance)?,
                None => eprintln!("{instance}"),
            }
            let failed = summary.trials - summary.agreements;
            Err(Failure::new(3, format!("{failed} disagreement(s); first at trial {t}")))
        }
    }
}
