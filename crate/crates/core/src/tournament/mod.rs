//! Tournaments: complete loop-free digraphs with exactly one arc per vertex pair.
//!
//! Vertices are addressed by 0-based index in the API. Text formats, reports and
//! error messages use 1-based labels (`index + 1`).

mod format;
mod generate;
mod scc;

use std::fmt;

use thiserror::Error;

pub use generate::{
    composite, composite_vertex, composite_with_cap, enumerate_all, random, rotational,
    DEFAULT_VERTEX_CAP, MAX_ENUMERATION_N,
};
pub use scc::{scc_decompose, SccDecomposition};

/// Errors raised while building, parsing or generating tournaments.
///
/// Vertex fields hold 1-based labels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TournamentError {
    #[error("a tournament needs at least one vertex")]
    Empty,
    #[error("loop arc at vertex {0}")]
    LoopArc(usize),
    #[error("pair {{{0}, {1}}} is given more than once or in both directions")]
    DuplicateOrConflict(usize, usize),
    #[error("pair {{{0}, {1}}} has no arc")]
    MissingPair(usize, usize),
    #[error("vertex {vertex} is outside 1..={n}")]
    UnknownVertex { vertex: usize, n: usize },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
}

/// Dense bit matrix, one row per vertex holding its out-neighbourhood.
#[derive(Clone, PartialEq, Eq, Hash)]
struct BitMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        BitMatrix {
            n,
            words,
            bits: vec![0; words * n],
        }
    }

    #[inline]
    fn get(&self, row: usize, col: usize) -> bool {
        self.bits[row * self.words + col / 64] >> (col % 64) & 1 == 1
    }

    #[inline]
    fn set(&mut self, row: usize, col: usize) {
        self.bits[row * self.words + col / 64] |= 1 << (col % 64);
    }

    #[inline]
    fn row(&self, row: usize) -> &[u64] {
        &self.bits[row * self.words..(row + 1) * self.words]
    }

    /// Smallest column `>= from` set in `row`.
    fn next_in_row(&self, row: usize, from: usize) -> Option<usize> {
        if from >= self.n {
            return None;
        }
        let words = self.row(row);
        let mut w = from / 64;
        let mut word = words[w] & (u64::MAX << (from % 64));
        loop {
            if word != 0 {
                let col = w * 64 + word.trailing_zeros() as usize;
                return (col < self.n).then_some(col);
            }
            w += 1;
            if w == self.words {
                return None;
            }
            word = words[w];
        }
    }
}

/// A finite tournament ⟨V, E⟩ on vertices `0..n`.
///
/// Immutable once built; every constructor validates that for each pair of
/// distinct vertices exactly one of the two arcs is present.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    adj: BitMatrix,
    out_degree: Vec<usize>,
}

impl Tournament {
    /// Builds a tournament from an explicit arc list of 0-based `(from, to)` pairs.
    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self, TournamentError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(TournamentError::Empty);
        }
        let mut adj = BitMatrix::new(n);
        for (x, y) in arcs {
            for v in [x, y] {
                if v >= n {
                    return Err(TournamentError::UnknownVertex { vertex: v + 1, n });
                }
            }
            if x == y {
                return Err(TournamentError::LoopArc(x + 1));
            }
            if adj.get(x, y) || adj.get(y, x) {
                let (a, b) = (x.min(y), x.max(y));
                return Err(TournamentError::DuplicateOrConflict(a + 1, b + 1));
            }
            adj.set(x, y);
        }
        for x in 0..n {
            for y in x + 1..n {
                if !adj.get(x, y) && !adj.get(y, x) {
                    return Err(TournamentError::MissingPair(x + 1, y + 1));
                }
            }
        }
        Ok(Self::from_matrix(adj))
    }

    /// Builds a tournament by orienting every pair `x < y`: `x → y` iff
    /// `beats(x, y)`.
    pub fn from_pair_fn<F>(n: usize, mut beats: F) -> Result<Self, TournamentError>
    where
        F: FnMut(usize, usize) -> bool,
    {
        if n == 0 {
            return Err(TournamentError::Empty);
        }
        let mut adj = BitMatrix::new(n);
        for x in 0..n {
            for y in x + 1..n {
                if beats(x, y) {
                    adj.set(x, y);
                } else {
                    adj.set(y, x);
                }
            }
        }
        Ok(Self::from_matrix(adj))
    }

    fn from_matrix(adj: BitMatrix) -> Self {
        let out_degree = (0..adj.n)
            .map(|x| adj.row(x).iter().map(|w| w.count_ones() as usize).sum())
            .collect();
        Tournament { adj, out_degree }
    }

    /// Number of vertices.
    pub fn len(&self) -> usize {
        self.adj.n
    }

    /// Always false: tournaments have at least one vertex.
    pub fn is_empty(&self) -> bool {
        self.adj.n == 0
    }

    /// Number of arcs, `n(n-1)/2`.
    pub fn arc_count(&self) -> usize {
        let n = self.len();
        n * (n - 1) / 2
    }

    /// True iff `x → y`. Panics if either index is out of range.
    #[inline]
    pub fn beats(&self, x: usize, y: usize) -> bool {
        assert!(x < self.len() && y < self.len(), "vertex out of range");
        self.adj.get(x, y)
    }

    pub fn check_vertex(&self, x: usize) -> Result<(), TournamentError> {
        if x < self.len() {
            Ok(())
        } else {
            Err(TournamentError::UnknownVertex {
                vertex: x + 1,
                n: self.len(),
            })
        }
    }

    /// Out-degree |x⁺| of vertex `x`.
    pub fn out_degree(&self, x: usize) -> Result<usize, TournamentError> {
        self.check_vertex(x)?;
        Ok(self.out_degree[x])
    }

    /// Out-degrees of all vertices, indexed by vertex.
    pub fn out_degrees(&self) -> &[usize] {
        &self.out_degree
    }

    /// Iterates over x⁺ in increasing vertex order.
    pub fn out_neighbors(&self, x: usize) -> OutNeighbors<'_> {
        assert!(x < self.len(), "vertex out of range");
        OutNeighbors {
            adj: &self.adj,
            row: x,
            next: 0,
        }
    }

    /// True iff x⁺ ⊆ y⁺.
    pub fn out_set_subset(&self, x: usize, y: usize) -> bool {
        self.adj
            .row(x)
            .iter()
            .zip(self.adj.row(y))
            .all(|(a, b)| a & !b == 0)
    }

    /// True iff x⁺ ⊊ y⁺.
    pub fn out_set_proper_subset(&self, x: usize, y: usize) -> bool {
        self.out_set_subset(x, y) && self.out_degree[x] < self.out_degree[y]
    }

    /// All arcs `(from, to)` in row-major order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |x| self.out_neighbors(x).map(move |y| (x, y)))
    }

    /// Subtournament induced by `vertices`; vertex `k` of the result is `vertices[k]`.
    pub fn induced(&self, vertices: &[usize]) -> Result<Tournament, TournamentError> {
        for &v in vertices {
            self.check_vertex(v)?;
        }
        let mut seen = vec![false; self.len()];
        for &v in vertices {
            if std::mem::replace(&mut seen[v], true) {
                return Err(TournamentError::DuplicateOrConflict(v + 1, v + 1));
            }
        }
        Tournament::from_pair_fn(vertices.len(), |a, b| {
            self.adj.get(vertices[a], vertices[b])
        })
    }

    /// The tournament with every arc reversed.
    pub fn reversed(&self) -> Tournament {
        let n = self.len();
        Tournament::from_pair_fn(n, |x, y| self.adj.get(y, x)).expect("n >= 1")
    }
}

impl fmt::Debug for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tournament(n={}; ", self.len())?;
        f.write_str(self.to_text().trim_end().replace('\n', " ").as_str())?;
        f.write_str(")")
    }
}

pub struct OutNeighbors<'a> {
    adj: &'a BitMatrix,
    row: usize,
    next: usize,
}

impl Iterator for OutNeighbors<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        let col = self.adj.next_in_row(self.row, self.next)?;
        self.next = col + 1;
        Some(col)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn three_cycle() -> Tournament {
        Tournament::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn builds_three_cycle() {
        let t = three_cycle();
        assert_eq!(t.len(), 3);
        assert_eq!(t.arc_count(), 3);
        for x in 0..3 {
            assert_eq!(t.out_degree(x).unwrap(), 1);
        }
        assert!(t.beats(2, 0));
        assert!(!t.beats(0, 2));
    }

    #[test]
    fn rejects_conflicting_arcs() {
        let err = Tournament::from_arcs(3, [(0, 1), (1, 0), (1, 2), (2, 0)]).unwrap_err();
        assert_eq!(err, TournamentError::DuplicateOrConflict(1, 2));
        let err = Tournament::from_arcs(2, [(0, 1), (0, 1)]).unwrap_err();
        assert_eq!(err, TournamentError::DuplicateOrConflict(1, 2));
    }

    #[test]
    fn rejects_loops_and_missing_pairs() {
        assert_eq!(
            Tournament::from_arcs(2, [(1, 1)]).unwrap_err(),
            TournamentError::LoopArc(2)
        );
        assert_eq!(
            Tournament::from_arcs(3, [(0, 1), (1, 2)]).unwrap_err(),
            TournamentError::MissingPair(1, 3)
        );
        assert_eq!(
            Tournament::from_arcs(2, [(0, 2)]).unwrap_err(),
            TournamentError::UnknownVertex { vertex: 3, n: 2 }
        );
        assert_eq!(
            Tournament::from_arcs(0, []).unwrap_err(),
            TournamentError::Empty
        );
    }

    #[test]
    fn two_vertices() {
        let t = Tournament::from_arcs(2, [(0, 1)]).unwrap();
        assert_eq!(t.out_degrees(), &[1, 0]);
        assert!(t.out_degree(2).is_err());
    }

    #[test]
    fn single_vertex_has_no_arcs() {
        let t = Tournament::from_arcs(1, []).unwrap();
        assert_eq!(t.arc_count(), 0);
        assert_eq!(t.arcs().count(), 0);
    }

    #[test]
    fn transitive_chain_degrees() {
        // a=0, b=1, c=2 with a→b, a→c, b→c
        let t = Tournament::from_arcs(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(t.out_degrees(), &[2, 1, 0]);
        assert!(t.out_set_proper_subset(2, 1));
        assert!(t.out_set_proper_subset(1, 0));
        assert!(!t.out_set_proper_subset(0, 0));
    }

    #[test]
    fn out_neighbors_cross_word_boundaries() {
        let n = 150;
        let t = Tournament::from_pair_fn(n, |x, y| (x + y) % 3 != 0).unwrap();
        for x in 0..n {
            let listed: Vec<usize> = t.out_neighbors(x).collect();
            let expected: Vec<usize> = (0..n).filter(|&y| y != x && t.beats(x, y)).collect();
            assert_eq!(listed, expected);
            assert_eq!(listed.len(), t.out_degrees()[x]);
        }
        assert_eq!(t.out_degrees().iter().sum::<usize>(), t.arc_count());
    }

    #[test]
    fn induced_and_reversed() {
        let t = Tournament::from_arcs(4, [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)]).unwrap();
        let sub = t.induced(&[1, 2, 3]).unwrap();
        assert_eq!(sub, three_cycle());
        let r = t.reversed();
        assert!(r.beats(1, 0) && r.beats(1, 3));
        assert!(t.induced(&[1, 1]).is_err());
    }
}
