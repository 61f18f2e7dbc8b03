//! Minimum backward-arc counts over classes of rankings.

mod emn;
mod weak;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::fraction::{self, Fraction};
use crate::ranking::{backward_count_values, check_fairness_values, FairnessClass, Ranking};
use crate::tournament::{Tournament, TournamentError};

pub use emn::{
    composite_edges, composite_fraction, composite_min_backward, composite_order, copeland_bound,
    emn_sweep_composite, reversal_bound_check, verify_copeland_upper_bound, BoundReport, EmnReport,
    EmnRow, ReversalReport, SampleMode, EMN_LIMIT,
};
pub use weak::{weak_orders, WeakOrders};

/// Largest tournament for the permutation search.
pub const MAX_INJECTIVE_N: usize = 10;
/// Largest tournament for the weak-order enumeration.
pub const MAX_WEAK_ORDER_N: usize = 6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OptimizeError {
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("no weak order satisfies {0}")]
    EmptyClass(FairnessClass),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("internal check failed: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Tournament(#[from] TournamentError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchSpace {
    Permutations,
    WeakOrders,
    ClosedForm,
}

/// A minimum number of backward arcs together with a ranking attaining it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinBackwardResult {
    pub count: usize,
    pub total: usize,
    #[serde(with = "fraction::json")]
    pub fraction: Fraction,
    #[serde(serialize_with = "ranking_values")]
    pub witness: Ranking,
    pub search_space: SearchSpace,
    /// False when the search only covered representative rank values
    /// (integer levels for linear fairness), so `count` is an upper bound.
    pub exact: bool,
}

fn ranking_values<S: Serializer>(r: &Ranking, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq((0..r.len()).map(|i| r.values().format_value(i)))
}

impl MinBackwardResult {
    fn new(t: &Tournament, count: usize, witness: Ranking, space: SearchSpace) -> Self {
        let total = t.arc_count();
        MinBackwardResult {
            count,
            total,
            fraction: fraction::fraction(count as u64, total as u64),
            witness,
            search_space: space,
            exact: true,
        }
    }
}

/// Minimum over the out-degree-respecting classes sCop and Cop: the arcs
/// `x → y` with `d(x) < d(y)` are backward for every such ranking, and the
/// out-degree ranking makes exactly those backward.
pub fn min_backward_copeland_closed_form(t: &Tournament) -> MinBackwardResult {
    let d = t.out_degrees();
    let count = t.arcs().filter(|&(x, y)| d[x] < d[y]).count();
    MinBackwardResult::new(t, count, Ranking::out_degree(t), SearchSpace::ClosedForm)
}

/// Exact minimum over injective rankings by branch and bound over vertex
/// orderings. The witness gives the first vertex of the best ordering rank
/// `n`, the next `n - 1`, and so on; among optimal orderings it is the
/// lexicographically least.
pub fn min_backward_injective(t: &Tournament) -> Result<MinBackwardResult, OptimizeError> {
    let n = t.len();
    if n > MAX_INJECTIVE_N {
        return Err(OptimizeError::ResourceLimit(format!(
            "permutation search supports at most {MAX_INJECTIVE_N} vertices, got {n}"
        )));
    }
    let (count, order) = best_ordering(t);
    let mut ranks = vec![0i64; n];
    for (pos, &v) in order.iter().enumerate() {
        ranks[v] = (n - pos) as i64;
    }
    Ok(MinBackwardResult::new(
        t,
        count,
        Ranking::from_integers(&ranks),
        SearchSpace::Permutations,
    ))
}

/// Places vertices from the top down. An arc from an unplaced vertex to a
/// placed one is backward whatever happens next, which gives the bound.
fn best_ordering(t: &Tournament) -> (usize, Vec<usize>) {
    struct Search<'a> {
        t: &'a Tournament,
        placed: Vec<bool>,
        order: Vec<usize>,
        best: usize,
        best_order: Vec<usize>,
    }

    impl Search<'_> {
        /// Arcs from unplaced to placed vertices.
        fn committed(&self) -> usize {
            (0..self.t.len())
                .filter(|&v| !self.placed[v])
                .map(|v| self.t.out_neighbors(v).filter(|&z| self.placed[z]).count())
                .sum()
        }

        fn run(&mut self, count: usize) {
            let n = self.t.len();
            if self.order.len() == n {
                if count < self.best {
                    self.best = count;
                    self.best_order = self.order.clone();
                }
                return;
            }
            for v in 0..n {
                if self.placed[v] {
                    continue;
                }
                // arcs from v up to already placed vertices become backward
                let added = self.t.out_neighbors(v).filter(|&z| self.placed[z]).count();
                self.placed[v] = true;
                self.order.push(v);
                let bound = count + added + self.committed();
                if bound < self.best {
                    self.run(count + added);
                }
                self.order.pop();
                self.placed[v] = false;
            }
        }
    }

    let n = t.len();
    let mut search = Search {
        t,
        placed: vec![false; n],
        order: Vec::with_capacity(n),
        best: usize::MAX,
        best_order: Vec::new(),
    };
    search.run(0);
    (search.best, search.best_order)
}

/// Exact minimum over rankings in `class`, by enumerating all weak orders.
///
/// Levels `0..k` of a weak order become ranks `1..=k`. For every class except
/// Lin the predicates depend only on the weak order, so the minimum is exact;
/// for Lin it is the minimum over these integer level values.
pub fn min_backward_fair(
    t: &Tournament,
    class: FairnessClass,
) -> Result<MinBackwardResult, OptimizeError> {
    let n = t.len();
    if n > MAX_WEAK_ORDER_N {
        return Err(OptimizeError::ResourceLimit(format!(
            "weak-order enumeration supports at most {MAX_WEAK_ORDER_N} vertices, got {n}"
        )));
    }
    let mut best: Option<(usize, Vec<i64>)> = None;
    for levels in weak_orders(n) {
        let ranks: Vec<i64> = levels.iter().map(|&l| l as i64 + 1).collect();
        let count = backward_count_values(t, &ranks, 0.0);
        if best.as_ref().is_some_and(|(b, _)| count >= *b) {
            continue;
        }
        if check_fairness_values(t, &ranks, 0.0, class).is_none() {
            best = Some((count, ranks));
        }
    }
    let (count, ranks) = best.ok_or(OptimizeError::EmptyClass(class))?;
    let mut result = MinBackwardResult::new(
        t,
        count,
        Ranking::from_integers(&ranks),
        SearchSpace::WeakOrders,
    );
    result.exact = class != FairnessClass::Lin;
    Ok(result)
}
