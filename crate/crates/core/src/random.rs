//! Seeded generation of cycle configurations for verification campaigns.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cycles::{properness_check, CycleConfiguration, DualForm, LinearCycle, Properness};
use crate::error::{Error, Result};
use crate::lattice::{saturate, LatticeBasis};
use crate::matrix::Matrix;
use crate::padic::{PAdicContext, Scalar};

/// Which kind of configuration to generate, and the properness class it must
/// have.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InstanceMode {
    /// `n` hyperplanes meeting properly in a point.
    Hyperplanes,
    /// `d` split submodules with codimensions summing to `n`, meeting
    /// properly in a point.
    Submodules,
    /// `d` split submodules with codimensions summing to less than `n`,
    /// meeting properly.
    HigherDim,
}

impl fmt::Display for InstanceMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InstanceMode::Hyperplanes => "hyperplanes",
            InstanceMode::Submodules => "submodules",
            InstanceMode::HigherDim => "higherdim",
        })
    }
}

impl FromStr for InstanceMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hyperplanes" => Ok(InstanceMode::Hyperplanes),
            "submodules" => Ok(InstanceMode::Submodules),
            "higherdim" => Ok(InstanceMode::HigherDim),
            other => Err(Error::InvalidParameter(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomParams {
    pub n: usize,
    pub p: u64,
    /// Number of cycles. Must equal `n` for hyperplanes, lie in `[2, n]` for
    /// submodules and in `[1, n - 1]` for higher-dimensional intersections.
    pub d: usize,
    /// Largest valuation of a nonzero sampled entry.
    pub max_val: u32,
    pub mode: InstanceMode,
    /// Submodule ranks; drawn at random when absent.
    pub ranks: Option<Vec<usize>>,
    pub max_attempts: usize,
}

impl RandomParams {
    pub fn new(n: usize, p: u64, d: usize, max_val: u32, mode: InstanceMode) -> Self {
        Self { n, p, d, max_val, mode, ranks: None, max_attempts: 10_000 }
    }

    pub fn with_ranks(mut self, ranks: Vec<usize>) -> Self {
        self.ranks = Some(ranks);
        self
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if !(2..=5).contains(&self.n) {
            return bad(format!("n = {} outside [2, 5]", self.n));
        }
        if self.d == 0 || self.d > self.n {
            return bad(format!("d = {} outside [1, n]", self.d));
        }
        if self.max_attempts == 0 {
            return bad("max_attempts must be positive".into());
        }
        match self.mode {
            InstanceMode::Hyperplanes if self.d != self.n => bad("hyperplane mode needs d = n".into()),
            InstanceMode::Submodules if self.d < 2 => bad("submodule mode needs d >= 2".into()),
            InstanceMode::HigherDim if self.d >= self.n => bad("higherdim mode needs d < n".into()),
            _ => Ok(()),
        }?;
        if let Some(ranks) = &self.ranks {
            if self.mode == InstanceMode::Hyperplanes {
                return bad("ranks are not used in hyperplane mode".into());
            }
            if ranks.len() != self.d || ranks.iter().any(|&r| r == 0 || r >= self.n) {
                return bad(format!("ranks {ranks:?} need d entries in [1, n)"));
            }
            let c: usize = ranks.iter().map(|r| self.n - r).sum();
            let ok = match self.mode {
                InstanceMode::Submodules => c == self.n,
                _ => c < self.n,
            };
            if !ok {
                return bad(format!("ranks {ranks:?} have total codimension {c}"));
            }
        }
        Ok(())
    }

    fn required(&self) -> fn(Properness) -> bool {
        match self.mode {
            InstanceMode::Hyperplanes | InstanceMode::Submodules => |p| p == Properness::Proper0Dim,
            InstanceMode::HigherDim => |p| matches!(p, Properness::ProperHigherDim(_)),
        }
    }
}

#[derive(Debug, Clone)]
pub struct GeneratedInstance {
    pub config: CycleConfiguration,
    pub properness: Properness,
    /// Candidates discarded before this one.
    pub rejections: usize,
}

/// Mixes a campaign seed with a trial index into an independent trial seed.
pub fn trial_seed(seed: u64, trial: u64) -> u64 {
    let mut z = seed.wrapping_add(trial.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `±u p^e` with `u` a unit in `[1, 10]`, `e` geometric with ratio 1/2, and
/// `0` whenever `e` exceeds `max_val`.
fn sample_entry(rng: &mut ChaCha8Rng, p: u64, max_val: u32) -> Scalar {
    let mut e = 0u32;
    while rng.gen_bool(0.5) {
        e += 1;
        if e > max_val {
            return Scalar::zero();
        }
    }
    sample_unit(rng, p) * Scalar::from_integer(num_bigint::BigInt::from(p).pow(e))
}

/// `±u` with `u` uniform among the integers in `[1, 10]` prime to `p`.
fn sample_unit(rng: &mut ChaCha8Rng, p: u64) -> Scalar {
    let units: Vec<u64> = (1..=10).filter(|u| u % p != 0).collect();
    let u = Scalar::from(units[rng.gen_range(0..units.len())] as i64);
    if rng.gen_bool(0.5) {
        -u
    } else {
        u
    }
}

fn sample_vectors(rng: &mut ChaCha8Rng, p: u64, n: usize, count: usize, max_val: u32) -> Matrix {
    let mut m = Matrix::zeros(n, count);
    for j in 0..count {
        for i in 0..n {
            m[(i, j)] = sample_entry(rng, p, max_val);
        }
    }
    m
}

/// A primitive form: a sampled vector with one coordinate forced to a unit
/// when none is.
fn sample_form(rng: &mut ChaCha8Rng, ambient: &LatticeBasis, max_val: u32) -> DualForm {
    let ctx = ambient.ctx();
    let n = ambient.dim();
    let mut a = sample_vectors(rng, ctx.p(), n, 1, max_val).column(0);
    if !a.iter().any(|x| ctx.is_unit(x)) {
        let j = rng.gen_range(0..n);
        a[j] = sample_unit(rng, ctx.p());
    }
    DualForm::new(ambient.clone(), a).expect("sampled form is primitive")
}

/// Codimensions: a random composition of `total` into `d` positive parts.
fn sample_composition(rng: &mut ChaCha8Rng, total: usize, d: usize) -> Vec<usize> {
    let mut cuts: Vec<usize> = sample(rng, total - 1, d - 1).into_iter().map(|c| c + 1).collect();
    cuts.sort_unstable();
    cuts.push(total);
    let mut prev = 0;
    cuts.into_iter()
        .map(|c| {
            let part = c - prev;
            prev = c;
            part
        })
        .collect()
}

fn sample_ranks(rng: &mut ChaCha8Rng, params: &RandomParams) -> Vec<usize> {
    if let Some(r) = &params.ranks {
        return r.clone();
    }
    let n = params.n;
    let total = match params.mode {
        InstanceMode::Submodules => n,
        _ => rng.gen_range(params.d..n),
    };
    sample_composition(rng, total, params.d).into_iter().map(|m| n - m).collect()
}

fn sample_config(rng: &mut ChaCha8Rng, ambient: &LatticeBasis, params: &RandomParams) -> Option<CycleConfiguration> {
    let n = params.n;
    let cycles = match params.mode {
        InstanceMode::Hyperplanes => {
            (0..n).map(|_| LinearCycle::Hyperplane(sample_form(rng, ambient, params.max_val))).collect()
        }
        InstanceMode::Submodules | InstanceMode::HigherDim => {
            let ranks = sample_ranks(rng, params);
            let mut cycles = Vec::with_capacity(ranks.len());
            for r in ranks {
                let vectors = sample_vectors(rng, params.p, n, r, params.max_val);
                let s = saturate(ambient, &vectors).ok()?;
                if s.rank() != r {
                    return None;
                }
                cycles.push(LinearCycle::Submodule(s));
            }
            cycles
        }
    };
    CycleConfiguration::new(ambient.clone(), cycles).ok()
}

/// Deterministic in `seed`: samples configurations on the standard lattice
/// until one has the properness class required by the mode.
pub fn random_instance(seed: u64, params: &RandomParams) -> Result<GeneratedInstance> {
    params.validate()?;
    let ctx = PAdicContext::new(params.p)?;
    let ambient = LatticeBasis::standard(ctx, params.n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let accept = params.required();
    for attempt in 0..params.max_attempts {
        if let Some(config) = sample_config(&mut rng, &ambient, params) {
            let properness = properness_check(&config);
            if accept(properness) {
                return Ok(GeneratedInstance { config, properness, rejections: attempt });
            }
        }
    }
    Err(Error::GenerationExhausted(params.max_attempts))
}

/// `n` primitive forms on the standard lattice whose coefficient matrix is
/// nonsingular, with no condition on the special fibre. Returns the forms and
/// the number of rejected candidates.
pub fn random_generic_forms(
    seed: u64,
    n: usize,
    p: u64,
    max_val: u32,
    max_attempts: usize,
) -> Result<(Vec<DualForm>, usize)> {
    let ctx = PAdicContext::new(p)?;
    let ambient = LatticeBasis::standard(ctx, n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..max_attempts {
        let forms: Vec<DualForm> = (0..n).map(|_| sample_form(&mut rng, &ambient, max_val)).collect();
        let cols: Vec<Vec<Scalar>> = forms.iter().map(|f| f.coefficients().to_vec()).collect();
        if !Matrix::from_columns(n, &cols)?.determinant().is_zero() {
            return Ok((forms, attempt));
        }
    }
    Err(Error::GenerationExhausted(max_attempts))
}
