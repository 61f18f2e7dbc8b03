//! Fairness axioms as implications `P(r, x, y) ⇒ Q(r, x, y)` over ordered
//! vertex pairs. A failed check returns the lexicographically least violating
//! pair as certificate.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use super::metrics::sums_of;
use super::spectral::{dominated_sorted, sorted_spectra};
use super::{with_values, RankScalar, Ranking, RankingError};
use crate::tournament::Tournament;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FairnessClass {
    /// `d(x) ≤ d(y) ⇒ r(x) ≤ r(y)`
    NsCop,
    /// `d(x) < d(y) ⇒ r(x) < r(y)`
    SCop,
    /// both Copeland conditions
    Cop,
    /// `x⁺ ⊊ y⁺ ⇒ r(x) < r(y)`
    Weak,
    /// `x ≤_r y ⇒ r(x) ≤ r(y)` and `x <_r y ⇒ r(x) < r(y)`
    Spec,
    /// positive ranks, `S(x) ≤ S(y) ⇒ r(x) ≤ r(y)` and `S(x) < S(y) ⇒ r(x) < r(y)`
    Lin,
    /// pairwise distinct ranks
    Inj,
}

impl FairnessClass {
    pub const ALL: [FairnessClass; 7] = [
        FairnessClass::NsCop,
        FairnessClass::SCop,
        FairnessClass::Cop,
        FairnessClass::Weak,
        FairnessClass::Spec,
        FairnessClass::Lin,
        FairnessClass::Inj,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FairnessClass::NsCop => "nscop",
            FairnessClass::SCop => "scop",
            FairnessClass::Cop => "cop",
            FairnessClass::Weak => "weak",
            FairnessClass::Spec => "spec",
            FairnessClass::Lin => "lin",
            FairnessClass::Inj => "inj",
        }
    }
}

impl fmt::Display for FairnessClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FairnessClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        FairnessClass::ALL
            .into_iter()
            .find(|c| c.name() == lower)
            .ok_or_else(|| format!("unknown fairness class {s:?}"))
    }
}

/// Which implication a pair violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    /// `d(x) ≤ d(y)` but `r(x) > r(y)`
    NonStrictCopeland,
    /// `d(x) < d(y)` but `r(x) ≥ r(y)`
    StrictCopeland,
    /// `x⁺ ⊊ y⁺` but `r(x) ≥ r(y)`
    Weak,
    /// `x ≤_r y` but `r(x) > r(y)`
    NonStrictSpectral,
    /// `x <_r y` but `r(x) ≥ r(y)`
    StrictSpectral,
    /// `S(x) ≤ S(y)` but `r(x) > r(y)`
    NonStrictLinear,
    /// `S(x) < S(y)` but `r(x) ≥ r(y)`
    StrictLinear,
    /// `x ≠ y` but `r(x) = r(y)`
    EqualRanks,
}

impl ViolationKind {
    pub fn describe(self) -> &'static str {
        match self {
            ViolationKind::NonStrictCopeland => "d(x) <= d(y) but r(x) > r(y)",
            ViolationKind::StrictCopeland => "d(x) < d(y) but r(x) >= r(y)",
            ViolationKind::Weak => "x+ is a proper subset of y+ but r(x) >= r(y)",
            ViolationKind::NonStrictSpectral => "x <=_r y but r(x) > r(y)",
            ViolationKind::StrictSpectral => "x <_r y but r(x) >= r(y)",
            ViolationKind::NonStrictLinear => "S(x) <= S(y) but r(x) > r(y)",
            ViolationKind::StrictLinear => "S(x) < S(y) but r(x) >= r(y)",
            ViolationKind::EqualRanks => "x != y but r(x) = r(y)",
        }
    }
}

/// Certificate of unfairness. Vertices are 0-based in memory and 1-based
/// when serialized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    Pair {
        x: usize,
        y: usize,
        kind: ViolationKind,
    },
    /// Linear fairness is only defined for positive rankings.
    NonPositiveRank { vertex: usize },
}

impl Serialize for Violation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match *self {
            Violation::Pair { x, y, kind } => {
                let mut m = s.serialize_map(Some(5))?;
                m.serialize_entry("type", "pair")?;
                m.serialize_entry("x", &(x + 1))?;
                m.serialize_entry("y", &(y + 1))?;
                m.serialize_entry("kind", &kind)?;
                m.serialize_entry("description", kind.describe())?;
                m.end()
            }
            Violation::NonPositiveRank { vertex } => {
                let mut m = s.serialize_map(Some(2))?;
                m.serialize_entry("type", "non-positive-rank")?;
                m.serialize_entry("vertex", &(vertex + 1))?;
                m.end()
            }
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Pair { x, y, kind } => {
                write!(f, "pair ({}, {}): {}", x + 1, y + 1, kind.describe())
            }
            Violation::NonPositiveRank { vertex } => {
                write!(f, "vertex {}: rank is not positive", vertex + 1)
            }
        }
    }
}

/// Checks `class` on a ranking; `Ok(None)` means fair.
pub fn check_fairness(
    t: &Tournament,
    r: &Ranking,
    class: FairnessClass,
) -> Result<Option<Violation>, RankingError> {
    r.check_domain(t.len())?;
    Ok(with_values!(r, |v, eps| check_fairness_values(
        t, v, eps, class
    )))
}

pub fn is_fair(t: &Tournament, r: &Ranking, class: FairnessClass) -> Result<bool, RankingError> {
    Ok(check_fairness(t, r, class)?.is_none())
}

/// Fairness check on raw values (`values.len()` must equal `t.len()`).
pub fn check_fairness_values<S: RankScalar>(
    t: &Tournament,
    values: &[S],
    eps: f64,
    class: FairnessClass,
) -> Option<Violation> {
    assert_eq!(values.len(), t.len(), "ranking/tournament size mismatch");
    let cmp = |x: usize, y: usize| values[x].cmp_tol(&values[y], eps);
    let degree = t.out_degrees();

    match class {
        FairnessClass::NsCop | FairnessClass::SCop | FairnessClass::Cop => {
            let non_strict = class != FairnessClass::SCop;
            let strict = class != FairnessClass::NsCop;
            first_violation(t.len(), |x, y| {
                let (dx, dy) = (degree[x], degree[y]);
                if non_strict && dx <= dy && cmp(x, y) == Ordering::Greater {
                    return Some(ViolationKind::NonStrictCopeland);
                }
                if strict && dx < dy && cmp(x, y) != Ordering::Less {
                    return Some(ViolationKind::StrictCopeland);
                }
                None
            })
        }
        FairnessClass::Weak => first_violation(t.len(), |x, y| {
            (t.out_set_proper_subset(x, y) && cmp(x, y) != Ordering::Less)
                .then_some(ViolationKind::Weak)
        }),
        FairnessClass::Spec => {
            let spectra = sorted_spectra(t, values);
            let n = t.len();
            let mut leq = vec![false; n * n];
            for x in 0..n {
                for y in 0..n {
                    leq[x * n + y] = dominated_sorted(&spectra[x], &spectra[y], eps);
                }
            }
            first_violation(n, |x, y| {
                if !leq[x * n + y] {
                    return None;
                }
                let order = cmp(x, y);
                if order == Ordering::Greater {
                    Some(ViolationKind::NonStrictSpectral)
                } else if !leq[y * n + x] && order != Ordering::Less {
                    Some(ViolationKind::StrictSpectral)
                } else {
                    None
                }
            })
        }
        FairnessClass::Lin => {
            let zero = S::zero();
            if let Some(vertex) = values
                .iter()
                .position(|v| zero.cmp_tol(v, eps) != Ordering::Less)
            {
                return Some(Violation::NonPositiveRank { vertex });
            }
            let sums = sums_of(t, values);
            first_violation(t.len(), |x, y| {
                let sum_order = sums[x].cmp_tol(&sums[y], eps);
                let order = cmp(x, y);
                if sum_order != Ordering::Greater && order == Ordering::Greater {
                    Some(ViolationKind::NonStrictLinear)
                } else if sum_order == Ordering::Less && order != Ordering::Less {
                    Some(ViolationKind::StrictLinear)
                } else {
                    None
                }
            })
        }
        FairnessClass::Inj => first_violation(t.len(), |x, y| {
            (cmp(x, y) == Ordering::Equal).then_some(ViolationKind::EqualRanks)
        }),
    }
}

/// Scans ordered pairs `(x, y)`, `x ≠ y`, lexicographically.
fn first_violation<F>(n: usize, mut violated: F) -> Option<Violation>
where
    F: FnMut(usize, usize) -> Option<ViolationKind>,
{
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            if let Some(kind) = violated(x, y) {
                return Some(Violation::Pair { x, y, kind });
            }
        }
    }
    None
}
