//! Text formats.
//!
//! Matrix form (canonical):
//! ```text
//! 3
//! 010
//! 001
//! 100
//! ```
//! Row `i`, column `j` is `1` iff `i → j`.
//!
//! Edge-list form: a header line `n=<N>` followed by one `u v` pair per line
//! meaning `u → v`, with 1-based labels.

use std::fmt::Write as _;
use std::str::FromStr;

use super::{BitMatrix, Tournament, TournamentError};

fn syntax(line: usize, message: impl Into<String>) -> TournamentError {
    TournamentError::Syntax {
        line,
        message: message.into(),
    }
}

impl Tournament {
    /// Parses either the matrix or the edge-list format.
    pub fn parse(text: &str) -> Result<Tournament, TournamentError> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        let Some(&(first_no, first)) = lines.first() else {
            return Err(syntax(1, "empty input"));
        };
        if let Some(rest) = first.strip_prefix("n=") {
            let n = parse_count(rest.trim(), first_no)?;
            parse_edge_list(n, &lines[1..])
        } else {
            let n = parse_count(first, first_no)?;
            parse_matrix(n, &lines[1..])
        }
    }

    /// Canonical matrix serialization, newline-terminated.
    pub fn to_text(&self) -> String {
        let n = self.len();
        let mut out = String::with_capacity((n + 1) * (n + 1) + 8);
        writeln!(out, "{n}").unwrap();
        for x in 0..n {
            out.extend((0..n).map(|y| if self.adj.get(x, y) { '1' } else { '0' }));
            out.push('\n');
        }
        out
    }

    /// Edge-list serialization with 1-based labels.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n={}\n", self.len());
        for (x, y) in self.arcs() {
            writeln!(out, "{} {}", x + 1, y + 1).unwrap();
        }
        out
    }
}

impl FromStr for Tournament {
    type Err = TournamentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Tournament::parse(s)
    }
}

fn parse_count(text: &str, line: usize) -> Result<usize, TournamentError> {
    let n: usize = text
        .parse()
        .map_err(|_| syntax(line, format!("expected a vertex count, found {text:?}")))?;
    if n == 0 {
        return Err(TournamentError::Empty);
    }
    Ok(n)
}

fn parse_matrix(n: usize, rows: &[(usize, &str)]) -> Result<Tournament, TournamentError> {
    if rows.len() != n {
        let line = rows
            .get(n)
            .map_or(rows.last().map_or(1, |r| r.0 + 1), |r| r.0);
        return Err(syntax(
            line,
            format!("expected {n} matrix rows, found {}", rows.len()),
        ));
    }
    let mut adj = BitMatrix::new(n);
    for (x, &(line, row)) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(syntax(
                line,
                format!("expected {n} characters, found {}", row.len()),
            ));
        }
        for (y, c) in row.bytes().enumerate() {
            match c {
                b'0' => {}
                b'1' => adj.set(x, y),
                _ => {
                    return Err(syntax(
                        line,
                        format!("unexpected character {:?}", c as char),
                    ))
                }
            }
        }
    }
    for x in 0..n {
        if adj.get(x, x) {
            return Err(TournamentError::LoopArc(x + 1));
        }
    }
    for x in 0..n {
        for y in x + 1..n {
            match (adj.get(x, y), adj.get(y, x)) {
                (true, true) => return Err(TournamentError::DuplicateOrConflict(x + 1, y + 1)),
                (false, false) => return Err(TournamentError::MissingPair(x + 1, y + 1)),
                _ => {}
            }
        }
    }
    Ok(Tournament::from_matrix(adj))
}

fn parse_edge_list(n: usize, lines: &[(usize, &str)]) -> Result<Tournament, TournamentError> {
    let mut arcs = Vec::with_capacity(lines.len());
    for &(line, text) in lines {
        let mut fields = text.split_whitespace();
        let (Some(u), Some(v), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(syntax(line, "expected `u v`"));
        };
        let label = |s: &str| -> Result<usize, TournamentError> {
            let value: usize = s
                .parse()
                .map_err(|_| syntax(line, format!("invalid vertex {s:?}")))?;
            if value == 0 || value > n {
                return Err(TournamentError::UnknownVertex { vertex: value, n });
            }
            Ok(value - 1)
        };
        arcs.push((label(u)?, label(v)?));
    }
    Tournament::from_arcs(n, arcs)
}
