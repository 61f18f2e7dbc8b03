//! The spectral preorder `x ≤_r y`: there is an injection `f: x⁺ → y⁺` with
//! `r(z) ≤ r(f(z))` for every `z ∈ x⁺`.
//!
//! Decided by sorted dominance: with both spectra sorted in decreasing order,
//! such an injection exists iff `|x⁺| ≤ |y⁺|` and the `k`-th largest rank of
//! `x⁺` is at most the `k`-th largest rank of `y⁺` for every `k`.

use std::cmp::Ordering;

use super::{with_values, RankScalar, Ranking, RankingError};
use crate::tournament::Tournament;

pub(crate) fn sort_desc<S: RankScalar>(values: &mut [S]) {
    values.sort_by(|a, b| b.cmp_exact(a));
}

/// Sorted-dominance test on spectra already sorted in decreasing order.
pub(crate) fn dominated_sorted<S: RankScalar>(a: &[S], b: &[S], eps: f64) -> bool {
    a.len() <= b.len()
        && a.iter()
            .zip(b)
            .all(|(x, y)| x.cmp_tol(y, eps) != Ordering::Greater)
}

/// True iff the multiset `a` injects into `b` without decreasing any value.
pub fn spectrum_dominated<S: RankScalar>(a: &[S], b: &[S], eps: f64) -> bool {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    sort_desc(&mut a);
    sort_desc(&mut b);
    dominated_sorted(&a, &b, eps)
}

/// Spectrum `{r(z) : z ∈ x⁺}` of every vertex, sorted decreasingly.
pub(crate) fn sorted_spectra<S: RankScalar>(t: &Tournament, values: &[S]) -> Vec<Vec<S>> {
    (0..t.len()).map(|x| spectrum(t, values, x)).collect()
}

fn spectrum<S: RankScalar>(t: &Tournament, values: &[S], x: usize) -> Vec<S> {
    let mut s: Vec<S> = t.out_neighbors(x).map(|z| values[z].clone()).collect();
    sort_desc(&mut s);
    s
}

fn checked(t: &Tournament, r: &Ranking, x: usize, y: usize) -> Result<(), RankingError> {
    r.check_domain(t.len())?;
    t.check_vertex(x)?;
    t.check_vertex(y)?;
    Ok(())
}

/// `x ≤_r y`.
pub fn spectral_leq(t: &Tournament, r: &Ranking, x: usize, y: usize) -> Result<bool, RankingError> {
    checked(t, r, x, y)?;
    Ok(with_values!(r, |v, eps| dominated_sorted(
        &spectrum(t, v, x),
        &spectrum(t, v, y),
        eps
    )))
}

/// `x <_r y`, i.e. `x ≤_r y` and not `y ≤_r x`.
pub fn spectral_strict_less(
    t: &Tournament,
    r: &Ranking,
    x: usize,
    y: usize,
) -> Result<bool, RankingError> {
    Ok(spectral_leq(t, r, x, y)? && !spectral_leq(t, r, y, x)?)
}
