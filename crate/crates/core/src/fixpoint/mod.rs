//! Simplicial rankings, the recalculation `φ` and fixed-point solvers.
//!
//! `φ(r)(x) = λ_r⁻¹ · Σ_{z ∈ x⁺} r(z)` with `λ_r = Σ_x Σ_{z ∈ x⁺} r(z)`.
//! On a strongly connected component its fixed point is the Perron vector
//! of the 0/1 out-neighbourhood matrix, which [`perron_fixed_point`] finds by
//! shifted power iteration.

mod solver;

use thiserror::Error;

use crate::ranking::{Ranking, Violation};
use crate::tournament::Tournament;

pub use solver::{
    linear_fair_ranking, perron_fixed_point, ComponentReport, PerronResult, SolverReport,
};

/// Tolerance for the simplex constraints on input vectors.
const SIMPLEX_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FixpointError {
    #[error("ranking covers {found} vertices but the tournament has {expected}")]
    DomainMismatch { expected: usize, found: usize },
    #[error("not a simplicial ranking: {0}")]
    NotSimplicial(String),
    #[error("normalizer λ_r is zero; the recalculation is undefined")]
    ZeroNormalizer,
    #[error("no fixed point found within {0} iterations")]
    NoConvergence(usize),
    #[error("the tournament is not strongly connected with at least 3 vertices")]
    NotStronglyConnected,
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
    #[error("assembled ranking is not linear fair after {escalations} escalations: {violation}")]
    VerificationFailed {
        violation: Violation,
        escalations: u32,
        report: Box<SolverReport>,
    },
}

/// A ranking with values in `[0, 1]` summing to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplicialRanking {
    values: Vec<f64>,
}

impl SimplicialRanking {
    pub fn new(values: Vec<f64>) -> Result<SimplicialRanking, FixpointError> {
        if values.is_empty() {
            return Err(FixpointError::NotSimplicial("no vertices".into()));
        }
        if let Some(i) = values
            .iter()
            .position(|v| !v.is_finite() || *v < -SIMPLEX_SLACK || *v > 1.0 + SIMPLEX_SLACK)
        {
            return Err(FixpointError::NotSimplicial(format!(
                "rank of vertex {} is {} (outside [0, 1])",
                i + 1,
                values[i]
            )));
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > SIMPLEX_SLACK {
            return Err(FixpointError::NotSimplicial(format!("ranks sum to {sum}")));
        }
        Ok(SimplicialRanking { values })
    }

    pub fn uniform(n: usize) -> SimplicialRanking {
        assert!(n > 0, "uniform ranking of an empty tournament");
        SimplicialRanking {
            values: vec![1.0 / n as f64; n],
        }
    }

    /// All mass on vertex `x`.
    pub fn point_mass(n: usize, x: usize) -> SimplicialRanking {
        assert!(x < n, "vertex out of range");
        let mut values = vec![0.0; n];
        values[x] = 1.0;
        SimplicialRanking { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Max-norm distance `d(r, r') = max_x |r(x) - r'(x)|`.
    pub fn distance(&self, other: &SimplicialRanking) -> f64 {
        assert_eq!(
            self.len(),
            other.len(),
            "distance between different domains"
        );
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn to_ranking(&self) -> Ranking {
        Ranking::float(self.values.clone()).expect("simplicial values are finite")
    }
}

/// Stopping rule and iteration budget for the fixed-point solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecalcConfig {
    /// Max-norm stopping threshold.
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Diagonal shift `s` of the Perron iteration `r ← (A·r + s·r) / (λ_r + s)`.
    pub shift: f64,
}

impl Default for RecalcConfig {
    fn default() -> Self {
        RecalcConfig {
            tolerance: 1e-12,
            max_iterations: 100_000,
            shift: 1.0,
        }
    }
}

impl RecalcConfig {
    pub fn validate(&self) -> Result<(), FixpointError> {
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(FixpointError::InvalidConfig(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if self.max_iterations == 0 {
            return Err(FixpointError::InvalidConfig(
                "max_iterations must be at least 1".into(),
            ));
        }
        if !(self.shift >= 0.0 && self.shift.is_finite()) {
            return Err(FixpointError::InvalidConfig(format!(
                "shift must be non-negative, got {}",
                self.shift
            )));
        }
        Ok(())
    }
}

/// A self-map of the simplicial rankings of a fixed tournament.
pub trait Recalculation {
    fn apply(&self, r: &SimplicialRanking) -> Result<SimplicialRanking, FixpointError>;
}

impl<F> Recalculation for F
where
    F: Fn(&SimplicialRanking) -> Result<SimplicialRanking, FixpointError>,
{
    fn apply(&self, r: &SimplicialRanking) -> Result<SimplicialRanking, FixpointError> {
        self(r)
    }
}

/// `r ↦ (A·r + s·r) / (λ_r + s)`; with `s = 0` this is `φ` itself.
#[derive(Debug, Clone, Copy)]
pub struct LinearRecalc<'a> {
    pub tournament: &'a Tournament,
    pub shift: f64,
}

impl<'a> LinearRecalc<'a> {
    pub fn new(tournament: &'a Tournament) -> Self {
        LinearRecalc {
            tournament,
            shift: 0.0,
        }
    }

    pub fn with_shift(tournament: &'a Tournament, shift: f64) -> Self {
        LinearRecalc { tournament, shift }
    }
}

impl Recalculation for LinearRecalc<'_> {
    fn apply(&self, r: &SimplicialRanking) -> Result<SimplicialRanking, FixpointError> {
        check_domain(self.tournament, r)?;
        let sums = out_sums(self.tournament, r.values());
        let lambda: f64 = sums.iter().sum();
        let norm = lambda + self.shift;
        if norm <= 0.0 {
            return Err(FixpointError::ZeroNormalizer);
        }
        let values = sums
            .iter()
            .zip(r.values())
            .map(|(s, v)| (s + self.shift * v) / norm)
            .collect();
        Ok(SimplicialRanking { values })
    }
}

/// One application of `φ`.
pub fn recalc_apply(
    t: &Tournament,
    r: &SimplicialRanking,
) -> Result<SimplicialRanking, FixpointError> {
    LinearRecalc::new(t).apply(r)
}

/// Iterates `recalc` from `r0` until `d(recalc(r), r) ≤ tolerance`.
///
/// Returns the fixed point and the number of applications that moved it.
pub fn iterate_to_fixed_point<R: Recalculation + ?Sized>(
    t: &Tournament,
    recalc: &R,
    r0: SimplicialRanking,
    cfg: &RecalcConfig,
) -> Result<(SimplicialRanking, usize), FixpointError> {
    cfg.validate()?;
    check_domain(t, &r0)?;
    let mut r = r0;
    for iteration in 0..cfg.max_iterations {
        let next = recalc.apply(&r)?;
        check_domain(t, &next)?;
        if next.distance(&r) <= cfg.tolerance {
            return Ok((r, iteration));
        }
        r = next;
    }
    Err(FixpointError::NoConvergence(cfg.max_iterations))
}

fn check_domain(t: &Tournament, r: &SimplicialRanking) -> Result<(), FixpointError> {
    if r.len() != t.len() {
        return Err(FixpointError::DomainMismatch {
            expected: t.len(),
            found: r.len(),
        });
    }
    Ok(())
}

/// `(A·r)(x) = Σ_{z ∈ x⁺} r(z)`.
pub(crate) fn out_sums(t: &Tournament, values: &[f64]) -> Vec<f64> {
    (0..t.len())
        .map(|x| t.out_neighbors(x).map(|z| values[z]).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tournament::rotational;

    fn chain() -> Tournament {
        Tournament::from_arcs(3, [(0, 1), (0, 2), (1, 2)]).unwrap()
    }

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12)
    }

    #[test]
    fn simplicial_validation() {
        assert!(SimplicialRanking::new(vec![0.5, 0.5]).is_ok());
        assert!(SimplicialRanking::new(vec![0.5, 0.6]).is_err());
        assert!(SimplicialRanking::new(vec![1.5, -0.5]).is_err());
        assert!(SimplicialRanking::new(vec![]).is_err());
        assert!(SimplicialRanking::new(vec![f64::NAN, 1.0]).is_err());
    }

    #[test]
    fn recalc_examples() {
        let cycle = rotational(1).unwrap();
        let u = SimplicialRanking::uniform(3);
        assert!(close(
            recalc_apply(&cycle, &u).unwrap().values(),
            u.values()
        ));

        let out = recalc_apply(&chain(), &u).unwrap();
        assert!(close(out.values(), &[2.0 / 3.0, 1.0 / 3.0, 0.0]));

        let out = recalc_apply(&cycle, &SimplicialRanking::point_mass(3, 0)).unwrap();
        assert_eq!(out.values(), &[0.0, 0.0, 1.0]);
    }

    #[test]
    fn recalc_errors() {
        let single = Tournament::from_arcs(1, []).unwrap();
        assert_eq!(
            recalc_apply(&single, &SimplicialRanking::uniform(1)),
            Err(FixpointError::ZeroNormalizer)
        );
        // all mass on the sink of the chain
        assert_eq!(
            recalc_apply(&chain(), &SimplicialRanking::point_mass(3, 0)),
            Err(FixpointError::ZeroNormalizer)
        );
        assert!(matches!(
            recalc_apply(&chain(), &SimplicialRanking::uniform(2)),
            Err(FixpointError::DomainMismatch {
                expected: 3,
                found: 2
            })
        ));
    }

    #[test]
    fn driver_trivial_maps() {
        let t = chain();
        let cfg = RecalcConfig::default();
        let r0 = SimplicialRanking::new(vec![0.2, 0.3, 0.5]).unwrap();
        let identity = |r: &SimplicialRanking| Ok(r.clone());
        let (r, k) = iterate_to_fixed_point(&t, &identity, r0.clone(), &cfg).unwrap();
        assert_eq!((r, k), (r0.clone(), 0));

        let constant = |_: &SimplicialRanking| Ok(SimplicialRanking::uniform(3));
        let (r, k) = iterate_to_fixed_point(&t, &constant, r0, &cfg).unwrap();
        assert_eq!((r, k), (SimplicialRanking::uniform(3), 1));
    }

    #[test]
    fn unshifted_cycle_oscillates() {
        let cycle = rotational(1).unwrap();
        let r0 = SimplicialRanking::point_mass(3, 0);
        let mut r = r0.clone();
        for _ in 0..3 {
            r = recalc_apply(&cycle, &r).unwrap();
        }
        assert_eq!(r, r0);
        let cfg = RecalcConfig {
            max_iterations: 1000,
            ..RecalcConfig::default()
        };
        assert_eq!(
            iterate_to_fixed_point(&cycle, &LinearRecalc::new(&cycle), r0.clone(), &cfg),
            Err(FixpointError::NoConvergence(1000))
        );
        let (r, _) =
            iterate_to_fixed_point(&cycle, &LinearRecalc::with_shift(&cycle, 1.0), r0, &cfg)
                .unwrap();
        assert!(r.distance(&SimplicialRanking::uniform(3)) < 1e-11);
    }

    #[test]
    fn config_validation() {
        let bad = RecalcConfig {
            tolerance: 0.0,
            ..RecalcConfig::default()
        };
        assert!(bad.validate().is_err());
        let bad = RecalcConfig {
            max_iterations: 0,
            ..RecalcConfig::default()
        };
        assert!(bad.validate().is_err());
        let bad = RecalcConfig {
            shift: -1.0,
            ..RecalcConfig::default()
        };
        assert!(bad.validate().is_err());
    }
}
