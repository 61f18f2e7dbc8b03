use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::{out_sums, FixpointError, RecalcConfig, SimplicialRanking};
use crate::ranking::{check_fairness, FairnessClass, Ranking};
use crate::tournament::{scc_decompose, Tournament};

/// Dominant eigenpair of one strongly connected component.
#[derive(Debug, Clone, PartialEq)]
pub struct PerronResult {
    pub ranking: SimplicialRanking,
    pub lambda: f64,
    /// `max_x |λ·r(x) − (A·r)(x)|`
    pub residual: f64,
    pub iterations: usize,
}

impl PerronResult {
    /// `d(φ(r), r)`, which equals `residual / λ`.
    pub fn fixed_point_distance(&self) -> f64 {
        self.residual / self.lambda
    }
}

/// Perron vector of a strongly connected tournament with at least 3 vertices,
/// by power iteration `r ← (A·r + s·r) / (λ_r + s)` from the uniform ranking.
pub fn perron_fixed_point(
    t: &Tournament,
    cfg: &RecalcConfig,
) -> Result<PerronResult, FixpointError> {
    cfg.validate()?;
    let n = t.len();
    if n == 1 {
        return Err(FixpointError::ZeroNormalizer);
    }
    if n < 3 || !scc_decompose(t).is_strongly_connected() {
        return Err(FixpointError::NotStronglyConnected);
    }
    let mut r = vec![1.0 / n as f64; n];
    for iteration in 0..=cfg.max_iterations {
        let sums = out_sums(t, &r);
        let lambda: f64 = sums.iter().sum();
        let residual = sums
            .iter()
            .zip(&r)
            .map(|(s, v)| (lambda * v - s).abs())
            .fold(0.0, f64::max);
        if residual <= cfg.tolerance {
            return Ok(PerronResult {
                ranking: SimplicialRanking { values: r },
                lambda,
                residual,
                iterations: iteration,
            });
        }
        if iteration == cfg.max_iterations {
            break;
        }
        let norm = lambda + cfg.shift;
        if norm <= 0.0 {
            return Err(FixpointError::ZeroNormalizer);
        }
        for (v, s) in r.iter_mut().zip(&sums) {
            *v = (s + cfg.shift * *v) / norm;
        }
        // keep the iterate on the simplex despite rounding
        let total: f64 = r.iter().sum();
        r.iter_mut().for_each(|v| *v /= total);
    }
    Err(FixpointError::NoConvergence(cfg.max_iterations))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentReport {
    /// 1-based labels in JSON, 0-based in memory.
    #[serde(serialize_with = "one_based")]
    pub vertices: Vec<usize>,
    pub lambda: f64,
    pub residual: f64,
    pub iterations: usize,
}

/// Result of [`linear_fair_ranking`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolverReport {
    /// Components in order, losers first.
    pub components: Vec<ComponentReport>,
    pub mu: Vec<f64>,
    #[serde(serialize_with = "float_values")]
    pub ranking: Ranking,
    pub verified: bool,
    pub escalations: u32,
}

fn one_based<S: Serializer>(v: &[usize], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x + 1))
}

fn float_values<S: Serializer>(r: &Ranking, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(r.to_f64())
}

pub const GAP_FACTOR: f64 = 2.0;
pub const MAX_ESCALATIONS: u32 = 20;

/// A positive linear-fair ranking of any tournament.
///
/// Each strongly connected component gets its Perron vector (singletons get
/// rank 1); component `i+1` is scaled by `μ_{i+1} = μ_i · (max_i / min_{i+1}) · G`
/// so it sits strictly above component `i`. The assembly is checked with the
/// Lin predicate and `G` is squared on failure.
pub fn linear_fair_ranking(
    t: &Tournament,
    cfg: &RecalcConfig,
) -> Result<SolverReport, FixpointError> {
    cfg.validate()?;
    let scc = scc_decompose(t);
    let solved: Vec<(ComponentReport, Vec<f64>)> = scc
        .components
        .par_iter()
        .map(|vertices| solve_component(t, vertices, cfg))
        .collect::<Result<_, _>>()?;

    let mut gap = GAP_FACTOR;
    let mut escalations = 0;
    loop {
        let mu = scale_factors(&solved, gap);
        let mut values = vec![0.0; t.len()];
        for ((component, ranks), m) in solved.iter().zip(&mu) {
            for (&x, r) in component.vertices.iter().zip(ranks) {
                values[x] = m * r;
            }
        }
        let finite = values.iter().all(|v| v.is_finite() && *v > 0.0);
        let ranking = if finite {
            Ranking::float(values).expect("finite values")
        } else {
            // fall back to something printable; verification below cannot pass
            Ranking::float(vec![1.0; t.len()]).expect("finite values")
        };
        let violation = check_fairness(t, &ranking, FairnessClass::Lin)
            .expect("domain matches by construction");
        let mut report = SolverReport {
            components: solved.iter().map(|(c, _)| c.clone()).collect(),
            mu,
            ranking,
            verified: violation.is_none(),
            escalations,
        };
        match violation {
            None if finite => return Ok(report),
            v => {
                if escalations == MAX_ESCALATIONS || !finite {
                    report.verified = false;
                    let violation =
                        v.unwrap_or(crate::ranking::Violation::NonPositiveRank { vertex: 0 });
                    return Err(FixpointError::VerificationFailed {
                        violation,
                        escalations,
                        report: Box::new(report),
                    });
                }
                gap *= gap;
                escalations += 1;
            }
        }
    }
}

fn solve_component(
    t: &Tournament,
    vertices: &[usize],
    cfg: &RecalcConfig,
) -> Result<(ComponentReport, Vec<f64>), FixpointError> {
    if vertices.len() == 1 {
        let report = ComponentReport {
            vertices: vertices.to_vec(),
            lambda: 0.0,
            residual: 0.0,
            iterations: 0,
        };
        return Ok((report, vec![1.0]));
    }
    let sub = t.induced(vertices).expect("component vertices are valid");
    let result = perron_fixed_point(&sub, cfg)?;
    let report = ComponentReport {
        vertices: vertices.to_vec(),
        lambda: result.lambda,
        residual: result.residual,
        iterations: result.iterations,
    };
    Ok((report, result.ranking.values))
}

fn scale_factors(solved: &[(ComponentReport, Vec<f64>)], gap: f64) -> Vec<f64> {
    let mut mu = Vec::with_capacity(solved.len());
    let mut previous_max: Option<f64> = None;
    for (_, ranks) in solved {
        let min = ranks.iter().copied().fold(f64::INFINITY, f64::min);
        let max = ranks.iter().copied().fold(0.0, f64::max);
        let m = match (previous_max, mu.last()) {
            (Some(prev), Some(&last)) => last * (prev / min) * gap,
            _ => 1.0,
        };
        mu.push(m);
        previous_max = Some(max);
    }
    mu
}
