use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::{min_backward_copeland_closed_form, min_backward_injective, OptimizeError};
use crate::fraction::{self, Fraction};
use crate::tournament::{
    composite_with_cap, enumerate_all, random, Tournament, DEFAULT_VERTEX_CAP,
};

/// The Erdős–Moon number of the Copeland classes.
pub const EMN_LIMIT: Fraction = Fraction::new_raw(3, 4);

/// Largest `n` for exhaustive scans.
pub const MAX_EXHAUSTIVE_N: usize = 5;
/// Largest `n` for the reversal check, which needs exact injective minima.
pub const MAX_REVERSAL_N: usize = 7;

fn to_u64(value: u128, what: &str) -> Result<u64, OptimizeError> {
    u64::try_from(value)
        .map_err(|_| OptimizeError::ResourceLimit(format!("{what} does not fit in 64 bits")))
}

fn check_l(l: usize) -> Result<u128, OptimizeError> {
    if l == 0 {
        return Err(OptimizeError::InvalidParameter(
            "l must be at least 1".into(),
        ));
    }
    Ok(l as u128)
}

/// `(2l+1)²`
pub fn composite_order(l: usize) -> Result<u64, OptimizeError> {
    let l = check_l(l)?;
    to_u64((2 * l + 1) * (2 * l + 1), "vertex count")
}

/// `|E(T_l)| = 2l(l+1)(2l+1)²`
pub fn composite_edges(l: usize) -> Result<u64, OptimizeError> {
    let l = check_l(l)?;
    to_u64(2 * l * (l + 1) * (2 * l + 1) * (2 * l + 1), "arc count")
}

/// Minimum backward count over strict Copeland rankings of `T_l`,
/// `l²(2l+1)(3l+1)`.
pub fn composite_min_backward(l: usize) -> Result<u64, OptimizeError> {
    let l = check_l(l)?;
    to_u64(l * l * (2 * l + 1) * (3 * l + 1), "backward count")
}

/// `l(3l+1) / (2(l+1)(2l+1))`
pub fn composite_fraction(l: usize) -> Result<Fraction, OptimizeError> {
    let l = check_l(l)?;
    let num = to_u64(l * (3 * l + 1), "numerator")?;
    let den = to_u64(2 * (l + 1) * (2 * l + 1), "denominator")?;
    Ok(Fraction::new(num, den))
}

/// Upper bound on the strict Copeland backward fraction of any `n`-vertex
/// tournament: `(3l−2)/(4l−2)` for `n = 2l`, `(3l+1)/(4l+2)` for `n = 2l+1`.
pub fn copeland_bound(n: usize) -> Fraction {
    let l = (n / 2) as u64;
    if n.is_multiple_of(2) {
        if l == 0 {
            return Fraction::from_integer(0);
        }
        Fraction::new(3 * l - 2, 4 * l - 2)
    } else {
        Fraction::new(3 * l + 1, 4 * l + 2)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmnRow {
    pub l: usize,
    pub n: u64,
    pub edges: u64,
    pub min_backward: u64,
    #[serde(with = "fraction::json")]
    pub fraction: Fraction,
    #[serde(with = "fraction::json")]
    pub bound: Fraction,
    /// Whether `T_l` was built and its count checked against the closed form.
    #[serde(skip)]
    pub materialized: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmnReport {
    pub family: &'static str,
    pub rows: Vec<EmnRow>,
    #[serde(with = "fraction::json")]
    pub limit: Fraction,
    /// Fractions strictly increase with `l`.
    pub monotone: bool,
    /// Every fraction is strictly below the limit.
    pub below_limit: bool,
}

/// Backward fractions of the composite family for `l = 1..=l_max`; the first
/// `materialize_up_to` instances are constructed and recounted.
pub fn emn_sweep_composite(
    l_max: usize,
    materialize_up_to: usize,
) -> Result<EmnReport, OptimizeError> {
    if l_max == 0 {
        return Err(OptimizeError::InvalidParameter(
            "lmax must be at least 1".into(),
        ));
    }
    let materialize_up_to = materialize_up_to.min(l_max);
    if materialize_up_to > 0 {
        let n = composite_order(materialize_up_to)?;
        if n > DEFAULT_VERTEX_CAP as u64 {
            return Err(OptimizeError::ResourceLimit(format!(
                "materializing T_{materialize_up_to} needs {n} vertices (cap {DEFAULT_VERTEX_CAP})"
            )));
        }
    }
    let rows = (1..=l_max)
        .into_par_iter()
        .map(|l| emn_row(l, l <= materialize_up_to))
        .collect::<Result<Vec<_>, _>>()?;
    let monotone = rows.windows(2).all(|w| w[0].fraction < w[1].fraction);
    let below_limit = rows.iter().all(|r| r.fraction < EMN_LIMIT);
    Ok(EmnReport {
        family: "composite",
        rows,
        limit: EMN_LIMIT,
        monotone,
        below_limit,
    })
}

fn emn_row(l: usize, materialize: bool) -> Result<EmnRow, OptimizeError> {
    let n = composite_order(l)?;
    let edges = composite_edges(l)?;
    let min_backward = composite_min_backward(l)?;
    let fraction = composite_fraction(l)?;
    if fraction != Fraction::new(min_backward, edges) {
        return Err(OptimizeError::Inconsistent(format!(
            "closed forms disagree at l = {l}"
        )));
    }
    if materialize {
        let t = composite_with_cap(l, DEFAULT_VERTEX_CAP)?;
        let built = min_backward_copeland_closed_form(&t);
        if (t.len() as u64, built.total as u64, built.count as u64) != (n, edges, min_backward) {
            return Err(OptimizeError::Inconsistent(format!(
                "T_{l} has {} vertices, {} arcs and {} rising arcs",
                t.len(),
                built.total,
                built.count
            )));
        }
    }
    Ok(EmnRow {
        l,
        n,
        edges,
        min_backward,
        fraction,
        bound: copeland_bound(n as usize),
        materialized: materialize,
    })
}

/// Which tournaments a scan visits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleMode {
    /// Every labelled tournament on `n` vertices.
    Exhaustive,
    /// `random(n, seed + k)` for `k = 0..samples`.
    Random { samples: usize, seed: u64 },
}

impl SampleMode {
    fn tournaments(self, n: usize) -> Result<Vec<Tournament>, OptimizeError> {
        match self {
            SampleMode::Exhaustive => {
                if n > MAX_EXHAUSTIVE_N {
                    return Err(OptimizeError::ResourceLimit(format!(
                        "exhaustive scans support at most {MAX_EXHAUSTIVE_N} vertices, got {n}"
                    )));
                }
                Ok(enumerate_all(n)?.collect())
            }
            SampleMode::Random { samples, seed } => (0..samples)
                .into_par_iter()
                .map(|k| random(n, seed.wrapping_add(k as u64)).map_err(OptimizeError::from))
                .collect(),
        }
    }

    fn name(self) -> &'static str {
        match self {
            SampleMode::Exhaustive => "exhaustive",
            SampleMode::Random { .. } => "random",
        }
    }
}

fn tournament_text<S: Serializer>(t: &Tournament, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&t.to_text())
}

/// Strict Copeland minima checked against [`copeland_bound`] and the limit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub mode: &'static str,
    pub instances: usize,
    #[serde(with = "fraction::json")]
    pub bound: Fraction,
    #[serde(with = "fraction::json")]
    pub max_fraction: Fraction,
    /// First instance (in scan order) attaining `max_fraction`.
    #[serde(serialize_with = "tournament_text")]
    pub witness: Tournament,
    pub within_bound: bool,
    pub below_limit: bool,
}

pub fn verify_copeland_upper_bound(
    n: usize,
    mode: SampleMode,
) -> Result<BoundReport, OptimizeError> {
    if n == 0 {
        return Err(OptimizeError::InvalidParameter(
            "n must be at least 1".into(),
        ));
    }
    let instances = mode.tournaments(n)?;
    if instances.is_empty() {
        return Err(OptimizeError::InvalidParameter(
            "no samples requested".into(),
        ));
    }
    let fractions: Vec<Fraction> = instances
        .par_iter()
        .map(|t| min_backward_copeland_closed_form(t).fraction)
        .collect();
    let bound = copeland_bound(n);
    let (index, &max_fraction) = first_max(&fractions);
    Ok(BoundReport {
        n,
        mode: mode.name(),
        instances: instances.len(),
        bound,
        max_fraction,
        witness: instances[index].clone(),
        within_bound: fractions.iter().all(|f| *f <= bound),
        below_limit: fractions.iter().all(|f| *f < EMN_LIMIT),
    })
}

/// Minimum injective backward counts checked against `⌊|E|/2⌋`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReversalReport {
    pub n: usize,
    pub mode: &'static str,
    pub instances: usize,
    pub half_edges: usize,
    pub max_min_backward: usize,
    #[serde(serialize_with = "tournament_text")]
    pub witness: Tournament,
    pub holds: bool,
}

pub fn reversal_bound_check(n: usize, mode: SampleMode) -> Result<ReversalReport, OptimizeError> {
    if n == 0 {
        return Err(OptimizeError::InvalidParameter(
            "n must be at least 1".into(),
        ));
    }
    if n > MAX_REVERSAL_N {
        return Err(OptimizeError::ResourceLimit(format!(
            "reversal check supports at most {MAX_REVERSAL_N} vertices, got {n}"
        )));
    }
    let instances = mode.tournaments(n)?;
    if instances.is_empty() {
        return Err(OptimizeError::InvalidParameter(
            "no samples requested".into(),
        ));
    }
    let minima: Vec<usize> = instances
        .par_iter()
        .map(|t| min_backward_injective(t).map(|r| r.count))
        .collect::<Result<_, _>>()?;
    let half_edges = n * (n - 1) / 2 / 2;
    let (index, &max_min_backward) = first_max(&minima);
    Ok(ReversalReport {
        n,
        mode: mode.name(),
        instances: instances.len(),
        half_edges,
        max_min_backward,
        witness: instances[index].clone(),
        holds: max_min_backward <= half_edges,
    })
}

fn first_max<T: PartialOrd>(values: &[T]) -> (usize, &T) {
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v > values[best] {
            best = i;
        }
    }
    (best, &values[best])
}
