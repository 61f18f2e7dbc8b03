//! Rankings of tournaments, backward-arc metrics and fairness predicates.
//!
//! A [`Ranking`] holds either exact rationals or floats. Float rankings carry
//! a comparison tolerance `ε`: `a < b` iff `b - a > ε`, and `a = b` iff
//! `|a - b| <= ε`. Exact rankings compare exactly.

mod fairness;
mod metrics;
mod spectral;

use std::cmp::Ordering;
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

pub use fairness::{
    check_fairness, check_fairness_values, is_fair, FairnessClass, Violation, ViolationKind,
};
pub use metrics::{
    backward_arcs, backward_count_values, classify_arcs, linear_sums, ArcClasses, BackwardReport,
};
pub use spectral::{spectral_leq, spectral_strict_less, spectrum_dominated};

/// Default float comparison tolerance.
pub const DEFAULT_EPSILON: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RankingError {
    #[error("ranking covers {found} vertices but the tournament has {expected}")]
    DomainMismatch { expected: usize, found: usize },
    #[error("rank of vertex {0} is not a finite number")]
    NonFinite(usize),
    #[error("comparison tolerance must be finite and non-negative, got {0}")]
    InvalidEpsilon(f64),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("vertex {0} has no rank")]
    MissingVertex(usize),
    #[error("vertex {0} is ranked more than once")]
    DuplicateVertex(usize),
    #[error(transparent)]
    Tournament(#[from] crate::tournament::TournamentError),
}

/// Numbers a ranking may be made of.
pub trait RankScalar: Clone + fmt::Debug {
    fn zero() -> Self;
    fn add_assign(&mut self, other: &Self);
    /// Tolerance-aware comparison; exact types ignore `eps`.
    fn cmp_tol(&self, other: &Self, eps: f64) -> Ordering;
    /// Total order used for sorting.
    fn cmp_exact(&self, other: &Self) -> Ordering;
}

impl RankScalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn cmp_tol(&self, other: &Self, _eps: f64) -> Ordering {
        self.cmp(other)
    }
    fn cmp_exact(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
}

impl RankScalar for i64 {
    fn zero() -> Self {
        0
    }
    fn add_assign(&mut self, other: &Self) {
        *self += *other;
    }
    fn cmp_tol(&self, other: &Self, _eps: f64) -> Ordering {
        self.cmp(other)
    }
    fn cmp_exact(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
}

impl RankScalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn add_assign(&mut self, other: &Self) {
        *self += *other;
    }
    fn cmp_tol(&self, other: &Self, eps: f64) -> Ordering {
        if other - self > eps {
            Ordering::Less
        } else if self - other > eps {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    }
    fn cmp_exact(&self, other: &Self) -> Ordering {
        self.total_cmp(other)
    }
}

/// Rank values in one of the two modes.
#[derive(Debug, Clone, PartialEq)]
pub enum RankValues {
    Exact(Vec<BigRational>),
    Float(Vec<f64>),
}

impl RankValues {
    pub fn len(&self) -> usize {
        match self {
            RankValues::Exact(v) => v.len(),
            RankValues::Float(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            RankValues::Exact(v) => v.iter().map(|q| q.to_f64().unwrap_or(f64::NAN)).collect(),
            RankValues::Float(v) => v.clone(),
        }
    }

    /// Text form of entry `i`: `p/q` (or `p`) when exact, round-trippable
    /// float notation otherwise.
    pub fn format_value(&self, i: usize) -> String {
        match self {
            RankValues::Exact(v) => v[i].to_string(),
            RankValues::Float(v) => format!("{:?}", v[i]),
        }
    }
}

/// A ranking `r: V → ℚ` (exact) or `V → ℝ` (float, compared with `ε`).
#[derive(Debug, Clone, PartialEq)]
pub struct Ranking {
    values: RankValues,
    epsilon: f64,
}

impl Ranking {
    pub fn exact(values: Vec<BigRational>) -> Ranking {
        Ranking {
            values: RankValues::Exact(values),
            epsilon: 0.0,
        }
    }

    pub fn from_integers(values: &[i64]) -> Ranking {
        Ranking::exact(
            values
                .iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect(),
        )
    }

    /// `values[k] = (num, den)`. Panics on a zero denominator.
    pub fn from_ratios(values: &[(i64, i64)]) -> Ranking {
        Ranking::exact(
            values
                .iter()
                .map(|&(p, q)| BigRational::new(p.into(), q.into()))
                .collect(),
        )
    }

    /// Float ranking with the default tolerance.
    pub fn float(values: Vec<f64>) -> Result<Ranking, RankingError> {
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(RankingError::NonFinite(i + 1));
        }
        Ok(Ranking {
            values: RankValues::Float(values),
            epsilon: DEFAULT_EPSILON,
        })
    }

    /// Replaces the tolerance. Ignored (kept at 0) for exact rankings.
    pub fn with_epsilon(mut self, epsilon: f64) -> Result<Ranking, RankingError> {
        if !epsilon.is_finite() || epsilon < 0.0 {
            return Err(RankingError::InvalidEpsilon(epsilon));
        }
        if matches!(self.values, RankValues::Float(_)) {
            self.epsilon = epsilon;
        }
        Ok(self)
    }

    /// Out-degree (Copeland score) ranking `r = d⁺`.
    pub fn out_degree(t: &crate::tournament::Tournament) -> Ranking {
        let degrees: Vec<i64> = t.out_degrees().iter().map(|&d| d as i64).collect();
        Ranking::from_integers(&degrees)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.values, RankValues::Exact(_))
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn values(&self) -> &RankValues {
        &self.values
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.values.to_f64()
    }

    /// Compares the ranks of `x` and `y` under the ranking's tolerance.
    pub fn compare(&self, x: usize, y: usize) -> Ordering {
        match &self.values {
            RankValues::Exact(v) => v[x].cmp(&v[y]),
            RankValues::Float(v) => v[x].cmp_tol(&v[y], self.epsilon),
        }
    }

    /// The ranking `-r`, which reverses every strict comparison.
    pub fn reversed(&self) -> Ranking {
        let values = match &self.values {
            RankValues::Exact(v) => RankValues::Exact(v.iter().map(|q| -q).collect()),
            RankValues::Float(v) => RankValues::Float(v.iter().map(|x| -x).collect()),
        };
        Ranking {
            values,
            epsilon: self.epsilon,
        }
    }

    pub(crate) fn check_domain(&self, n: usize) -> Result<(), RankingError> {
        if self.len() != n {
            return Err(RankingError::DomainMismatch {
                expected: n,
                found: self.len(),
            });
        }
        Ok(())
    }

    /// Parses `vertex value` lines (1-based vertices, each exactly once).
    ///
    /// Values are integers, `p/q` rationals or decimals. If every value is an
    /// integer or a rational the ranking is exact; any decimal point or
    /// exponent switches the whole ranking to float mode.
    pub fn parse(text: &str) -> Result<Ranking, RankingError> {
        let mut entries: Vec<(usize, usize, &str)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split_whitespace();
            let (Some(v), Some(value), None) = (fields.next(), fields.next(), fields.next()) else {
                return Err(RankingError::Syntax {
                    line: i + 1,
                    message: "expected `vertex value`".into(),
                });
            };
            let vertex: usize =
                v.parse()
                    .ok()
                    .filter(|&v| v > 0)
                    .ok_or_else(|| RankingError::Syntax {
                        line: i + 1,
                        message: format!("invalid vertex {v:?}"),
                    })?;
            entries.push((i + 1, vertex, value));
        }
        let n = entries.len();
        let mut slots: Vec<Option<(usize, &str)>> = vec![None; n];
        for &(line, vertex, value) in &entries {
            if vertex > n {
                return Err(RankingError::MissingVertex(
                    (1..=n).find(|&k| slots[k - 1].is_none()).unwrap_or(n),
                ));
            }
            if slots[vertex - 1].replace((line, value)).is_some() {
                return Err(RankingError::DuplicateVertex(vertex));
            }
        }
        let slots: Vec<(usize, &str)> = slots
            .into_iter()
            .enumerate()
            .map(|(k, s)| s.ok_or(RankingError::MissingVertex(k + 1)))
            .collect::<Result<_, _>>()?;
        let is_float = |s: &str| {
            s.contains(['.', 'e', 'E'])
                || s.to_ascii_lowercase().contains("inf")
                || s.to_ascii_lowercase().contains("nan")
        };
        if slots.iter().any(|(_, s)| is_float(s)) {
            let values = slots
                .iter()
                .map(|&(line, s)| parse_float(line, s))
                .collect::<Result<Vec<_>, _>>()?;
            Ranking::float(values)
        } else {
            let values = slots
                .iter()
                .map(|&(line, s)| parse_rational(line, s))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Ranking::exact(values))
        }
    }

    /// One `vertex value` line per vertex, 1-based.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for i in 0..self.len() {
            writeln!(out, "{} {}", i + 1, self.values.format_value(i)).unwrap();
        }
        out
    }
}

fn parse_rational(line: usize, s: &str) -> Result<BigRational, RankingError> {
    let err = || RankingError::Syntax {
        line,
        message: format!("invalid rank {s:?}"),
    };
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p: BigInt = p.trim().parse().map_err(|_| err())?;
    let q: BigInt = q.trim().parse().map_err(|_| err())?;
    if q.is_zero() {
        return Err(err());
    }
    Ok(BigRational::new(p, q))
}

fn parse_float(line: usize, s: &str) -> Result<f64, RankingError> {
    if s.contains('/') {
        return parse_rational(line, s)?
            .to_f64()
            .ok_or(RankingError::NonFinite(line));
    }
    let v: f64 = s.parse().map_err(|_| RankingError::Syntax {
        line,
        message: format!("invalid rank {s:?}"),
    })?;
    if !v.is_finite() {
        return Err(RankingError::Syntax {
            line,
            message: format!("rank {s:?} is not finite"),
        });
    }
    Ok(v)
}

/// Dispatches on the ranking mode with the values and the tolerance.
macro_rules! with_values {
    ($ranking:expr, |$v:ident, $eps:ident| $body:expr) => {
        match $ranking.values() {
            $crate::ranking::RankValues::Exact($v) => {
                let $eps = 0.0;
                $body
            }
            $crate::ranking::RankValues::Float($v) => {
                let $eps = $ranking.epsilon();
                $body
            }
        }
    };
}
pub(crate) use with_values;
