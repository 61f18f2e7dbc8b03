//! Tournament families: rotational ST_l, composite T_l, seeded random and
//! exhaustive enumeration.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Tournament, TournamentError};

/// Default cap on the number of vertices a generator will materialize.
pub const DEFAULT_VERTEX_CAP: usize = 10_000;

/// Largest `n` accepted by [`enumerate_all`].
pub const MAX_ENUMERATION_N: usize = 6;

fn check_l(l: usize) -> Result<(), TournamentError> {
    if l == 0 {
        return Err(TournamentError::InvalidParameter(
            "family parameter l must be at least 1".into(),
        ));
    }
    Ok(())
}

/// `i → j` in ST_l iff `j - i mod (2l+1)` lies in `1..=l` (0-based residues).
#[inline]
fn rotational_arc(l: usize, i: usize, j: usize) -> bool {
    let size = 2 * l + 1;
    let diff = (j + size - i) % size;
    (1..=l).contains(&diff)
}

/// Rotational tournament ST_l on `2l+1` vertices: vertex `i` beats the next
/// `l` vertices cyclically.
pub fn rotational(l: usize) -> Result<Tournament, TournamentError> {
    check_l(l)?;
    Tournament::from_pair_fn(2 * l + 1, |i, j| rotational_arc(l, i, j))
}

/// Index of composite vertex `m∥i` (both 1-based, in `1..=2l+1`).
pub fn composite_vertex(l: usize, m: usize, i: usize) -> usize {
    (m - 1) * (2 * l + 1) + (i - 1)
}

/// Composite tournament T_l on `(2l+1)²` vertices `m∥i`, with
/// `m∥i → n∥j` iff
/// * `i = j` and `m > n`, or
/// * `m = n` and `i → j` in ST_l, or
/// * `m ≠ n`, `i ≠ j` and `m → n` in ST_l.
///
/// Rejects instances above [`DEFAULT_VERTEX_CAP`] vertices.
pub fn composite(l: usize) -> Result<Tournament, TournamentError> {
    composite_with_cap(l, DEFAULT_VERTEX_CAP)
}

pub fn composite_with_cap(l: usize, cap: usize) -> Result<Tournament, TournamentError> {
    check_l(l)?;
    let side = 2 * l + 1;
    let n = side
        .checked_mul(side)
        .filter(|&n| n <= cap)
        .ok_or_else(|| {
            TournamentError::ResourceLimit(format!("composite T_{l} has more than {cap} vertices"))
        })?;
    Tournament::from_pair_fn(n, |a, b| {
        let (m, i) = (a / side, a % side);
        let (k, j) = (b / side, b % side);
        if i == j {
            m > k
        } else if m == k {
            rotational_arc(l, i, j)
        } else {
            rotational_arc(l, m, k)
        }
    })
}

/// Uniformly random tournament: each pair `x < y` (row-major order) is
/// oriented by one fair coin flip from a ChaCha8 stream seeded with `seed`.
pub fn random(n: usize, seed: u64) -> Result<Tournament, TournamentError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Tournament::from_pair_fn(n, |_, _| rng.gen_bool(0.5))
}

/// All `2^C(n,2)` labeled tournaments on `n <= 6` vertices.
///
/// Tournament number `k` orients the `p`-th pair (row-major, `x < y`) as
/// `x → y` iff bit `p` of `k` is set.
pub fn enumerate_all(
    n: usize,
) -> Result<impl ExactSizeIterator<Item = Tournament>, TournamentError> {
    if n == 0 {
        return Err(TournamentError::Empty);
    }
    if n > MAX_ENUMERATION_N {
        return Err(TournamentError::ResourceLimit(format!(
            "exhaustive enumeration is limited to n <= {MAX_ENUMERATION_N}, got {n}"
        )));
    }
    let pairs = n * (n - 1) / 2;
    Ok((0u32..1 << pairs).map(move |mask| {
        let mut bit = 0;
        Tournament::from_pair_fn(n, |_, _| {
            let forward = mask >> bit & 1 == 1;
            bit += 1;
            forward
        })
        .expect("n >= 1")
    }))
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;

    #[test]
    fn rotational_small_cases() {
        let st1 = rotational(1).unwrap();
        assert_eq!(
            st1,
            Tournament::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
        );
        let st2 = rotational(2).unwrap();
        assert_eq!(st2.len(), 5);
        assert_eq!(st2.arc_count(), 10);
        for i in 0..5 {
            assert!(st2.beats(i, (i + 1) % 5));
            assert!(st2.beats(i, (i + 2) % 5));
        }
    }

    #[test]
    fn rotational_is_regular_and_vertex_transitive() {
        for l in 1..=8 {
            let t = rotational(l).unwrap();
            let n = 2 * l + 1;
            assert!(t.out_degrees().iter().all(|&d| d == l));
            assert_eq!(t.out_degrees().iter().sum::<usize>(), n * (n - 1) / 2);
            for (x, y) in t.arcs() {
                assert!(t.beats((x + 1) % n, (y + 1) % n));
            }
        }
    }

    #[test]
    fn composite_counts_and_degrees() {
        for l in 1..=4usize {
            let t = composite(l).unwrap();
            let side = 2 * l + 1;
            assert_eq!(t.len(), side * side);
            assert_eq!(t.arc_count(), 2 * l * (l + 1) * side * side);
            for m in 1..=side {
                for i in 1..=side {
                    let d = t.out_degree(composite_vertex(l, m, i)).unwrap();
                    assert_eq!(d, (m - 1) + l + 2 * l * l);
                }
            }
        }
        let t1 = composite(1).unwrap();
        assert_eq!(t1.out_degree(composite_vertex(1, 3, 2)).unwrap(), 5);
        assert_eq!(composite(2).unwrap().arc_count(), 300);
    }

    #[test]
    fn composite_respects_cap() {
        assert!(matches!(
            composite_with_cap(2, 24),
            Err(TournamentError::ResourceLimit(_))
        ));
        assert!(composite_with_cap(2, 25).is_ok());
        // (2*50+1)^2 = 10201 > 10000
        assert!(matches!(
            composite(50),
            Err(TournamentError::ResourceLimit(_))
        ));
        assert!(rotational(0).is_err());
    }

    #[test]
    fn random_is_deterministic_and_complete() {
        assert_eq!(random(1, 99).unwrap().arc_count(), 0);
        let a = random(5, 7).unwrap();
        let b = random(5, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.arcs().count(), 10);
        let distinct: HashSet<_> = (0..20).map(|s| random(8, s).unwrap()).collect();
        assert!(distinct.len() > 1);
    }

    #[test]
    fn enumeration_counts_and_distinctness() {
        for (n, count) in [(1, 1), (2, 2), (3, 8), (4, 64), (5, 1024)] {
            let all: Vec<_> = enumerate_all(n).unwrap().collect();
            assert_eq!(all.len(), count);
            let distinct: HashSet<_> = all.iter().cloned().collect();
            assert_eq!(distinct.len(), count);
            for t in &all {
                assert_eq!(t.out_degrees().iter().sum::<usize>(), n * (n - 1) / 2);
            }
        }
        assert_eq!(enumerate_all(6).unwrap().len(), 1 << 15);
        assert!(matches!(
            enumerate_all(7),
            Err(TournamentError::ResourceLimit(_))
        ));
    }
}
