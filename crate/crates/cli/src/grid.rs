use std::fmt::Write as _;

use fairrank::ranking::{Ranking, RankingError};
use fairrank::tournament::Tournament;

/// Adjacency grid: cell (x, y) is `*` when x beats y and `[*]` when that arc
/// is backward. Rows and columns run from the highest rank down.
pub fn render(t: &Tournament, ranking: Option<&Ranking>) -> Result<String, RankingError> {
    let n = t.len();
    let mut order: Vec<usize> = (0..n).collect();
    if let Some(r) = ranking {
        if r.len() != n {
            return Err(RankingError::DomainMismatch {
                expected: n,
                found: r.len(),
            });
        }
        order.sort_by(|&a, &b| r.compare(b, a));
    }
    let width = n.to_string().len();
    let mut out = format!("{:width$} ", "");
    for &y in &order {
        write!(out, "{:^3}", y + 1).unwrap();
    }
    out.push('\n');
    for &x in &order {
        write!(out, "{:>width$} ", x + 1).unwrap();
        for &y in &order {
            let cell = if !t.beats(x, y) {
                " . "
            } else if ranking.is_some_and(|r| r.compare(x, y).is_lt()) {
                "[*]"
            } else {
                " * "
            };
            out.push_str(cell);
        }
        out.push('\n');
    }
    Ok(out)
}
