use std::cmp::Ordering;

use serde::{Serialize, Serializer};

use super::{RankScalar, RankValues, Ranking, RankingError};
use crate::fraction::{self, Fraction};
use crate::tournament::Tournament;

/// Backward arcs `x → y` with `r(x) < r(y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BackwardReport {
    /// 0-based arcs in row-major order.
    pub backward: Vec<(usize, usize)>,
    pub total: usize,
    pub fraction: Fraction,
}

impl BackwardReport {
    pub fn count(&self) -> usize {
        self.backward.len()
    }
}

impl Serialize for BackwardReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Json {
            backward: Vec<[usize; 2]>,
            total: usize,
            #[serde(with = "fraction::json")]
            fraction: Fraction,
        }
        Json {
            backward: self.backward.iter().map(|&(x, y)| [x + 1, y + 1]).collect(),
            total: self.total,
            fraction: self.fraction,
        }
        .serialize(s)
    }
}

/// Partition of the arc set by the ranking: backward (`r(x) < r(y)`),
/// forward (`r(x) > r(y)`) and level (`r(x) = r(y)`).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ArcClasses {
    pub backward: Vec<(usize, usize)>,
    pub forward: Vec<(usize, usize)>,
    pub level: Vec<(usize, usize)>,
}

pub fn classify_arcs(t: &Tournament, r: &Ranking) -> Result<ArcClasses, RankingError> {
    r.check_domain(t.len())?;
    let mut classes = ArcClasses::default();
    for (x, y) in t.arcs() {
        match r.compare(x, y) {
            Ordering::Less => classes.backward.push((x, y)),
            Ordering::Greater => classes.forward.push((x, y)),
            Ordering::Equal => classes.level.push((x, y)),
        }
    }
    Ok(classes)
}

pub fn backward_arcs(t: &Tournament, r: &Ranking) -> Result<BackwardReport, RankingError> {
    let backward = classify_arcs(t, r)?.backward;
    let total = t.arc_count();
    Ok(BackwardReport {
        fraction: fraction::fraction(backward.len() as u64, total as u64),
        backward,
        total,
    })
}

/// Number of backward arcs for raw rank values.
pub fn backward_count_values<S: RankScalar>(t: &Tournament, values: &[S], eps: f64) -> usize {
    t.arcs()
        .filter(|&(x, y)| values[x].cmp_tol(&values[y], eps) == Ordering::Less)
        .count()
}

pub(crate) fn sums_of<S: RankScalar>(t: &Tournament, values: &[S]) -> Vec<S> {
    (0..t.len())
        .map(|x| {
            let mut sum = S::zero();
            for z in t.out_neighbors(x) {
                sum.add_assign(&values[z]);
            }
            sum
        })
        .collect()
}

/// `S(x) = Σ_{z ∈ x⁺} r(z)`, in the ranking's own mode.
pub fn linear_sums(t: &Tournament, r: &Ranking) -> Result<RankValues, RankingError> {
    r.check_domain(t.len())?;
    Ok(match r.values() {
        RankValues::Exact(v) => RankValues::Exact(sums_of(t, v)),
        RankValues::Float(v) => RankValues::Float(sums_of(t, v)),
    })
}
