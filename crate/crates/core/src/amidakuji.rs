//! Amidakuji (ghost-leg) ladders: vertical lines joined by horizontal rungs
//! between neighbouring lines. Each rung swaps whoever reaches it, so a
//! ladder read top to bottom is a product of adjacent transpositions.
//!
//! Text format:
//!
//! ```text
//! # comment
//! n=4
//! 1 3      # first level: rungs 1-2 and 3-4
//! 2
//! -        # an empty level
//! ```

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factorize::adjacent_sort;
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ladder {
    pub n: usize,
    /// Top to bottom; a rung at `c` joins lines `c` and `c + 1`.
    pub levels: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LadderViolation {
    OutOfRange { level: usize, column: usize },
    /// Two rungs of one level touch the same line.
    SharedLine { level: usize, column: usize, other: usize },
}

impl fmt::Display for LadderViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LadderViolation::OutOfRange { level, column } => {
                write!(f, "level {level}: rung {column} is outside 1..n-1")
            }
            LadderViolation::SharedLine { level, column, other } => {
                write!(f, "level {level}: rungs {other} and {column} share a line")
            }
        }
    }
}

impl Ladder {
    pub fn new(n: usize, levels: Vec<Vec<usize>>) -> Self {
        Ladder { n, levels }
    }

    pub fn rung_count(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    /// First violation in reading order; levels are numbered from 1.
    pub fn validate(&self) -> std::result::Result<(), LadderViolation> {
        for (idx, level) in self.levels.iter().enumerate() {
            let level_no = idx + 1;
            let mut sorted = level.clone();
            sorted.sort_unstable();
            for &column in level {
                if column == 0 || column + 1 > self.n {
                    return Err(LadderViolation::OutOfRange { level: level_no, column });
                }
            }
            for w in sorted.windows(2) {
                if w[1] - w[0] < 2 {
                    return Err(LadderViolation::SharedLine {
                        level: level_no,
                        column: w[1],
                        other: w[0],
                    });
                }
            }
        }
        Ok(())
    }

    /// The assignment `σ` with `σ(j)` the bottom position reached from top
    /// position `j`.
    pub fn apply(&self) -> Result<Permutation> {
        self.validate().map_err(|v| Error::InvalidLadder(v.to_string()))?;
        // at[c] = who is on line c
        let mut at: Vec<usize> = (1..=self.n).collect();
        for level in &self.levels {
            for &c in level {
                at.swap(c - 1, c);
            }
        }
        let mut image = vec![0; self.n];
        for (line, &person) in at.iter().enumerate() {
            image[person - 1] = line + 1;
        }
        Permutation::new(image)
    }

    /// Rows of `|` with `-` rungs, one per level, `gap` characters between
    /// lines, framed by line numbers on top and the assignment below.
    pub fn render(&self, gap: usize) -> String {
        let gap = gap.max(1);
        let mut out = String::new();
        let label_row = |labels: &[usize]| {
            let mut row = String::new();
            for (k, l) in labels.iter().enumerate() {
                let text = l.to_string();
                row.push_str(&text);
                if k + 1 < labels.len() {
                    row.push_str(&" ".repeat((gap + 1).saturating_sub(text.len())));
                }
            }
            row.trim_end().to_string()
        };
        let top: Vec<usize> = (1..=self.n).collect();
        out.push_str(&label_row(&top));
        out.push('\n');
        for level in &self.levels {
            let mut row = String::new();
            for c in 1..=self.n {
                row.push('|');
                if c < self.n {
                    let fill = if level.contains(&c) { '-' } else { ' ' };
                    row.extend(std::iter::repeat_n(fill, gap));
                }
            }
            out.push_str(&row);
            out.push('\n');
        }
        if let Ok(sigma) = self.apply() {
            let inverse = sigma.inverse().one_line();
            out.push_str(&label_row(&inverse));
            out.push('\n');
        }
        out
    }
}

/// A ladder with `inversion_count(p)` rungs realizing `p`, each rung placed
/// on the earliest level after every rung it touches.
pub fn synthesize(p: &Permutation) -> Ladder {
    let n = p.n();
    // rungs top to bottom are the bubble-sort factors last to first
    let factors = adjacent_sort(p).factors;
    let mut levels: Vec<Vec<usize>> = Vec::new();
    // lowest level touching each line
    let mut depth = vec![0usize; n + 1];
    for f in factors.iter().rev() {
        let c = f.i();
        let level = depth[c].max(depth[c + 1]);
        if level == levels.len() {
            levels.push(Vec::new());
        }
        levels[level].push(c);
        depth[c] = level + 1;
        depth[c + 1] = level + 1;
    }
    for level in &mut levels {
        level.sort_unstable();
    }
    Ladder { n, levels }
}

impl fmt::Display for Ladder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.n)?;
        for level in &self.levels {
            if level.is_empty() {
                writeln!(f, "-")?;
            } else {
                let cols: Vec<String> = level.iter().map(usize::to_string).collect();
                writeln!(f, "{}", cols.join(" "))?;
            }
        }
        Ok(())
    }
}

impl FromStr for Ladder {
    type Err = Error;

    /// Parses without validating, so that `validate` can locate problems.
    fn from_str(text: &str) -> Result<Self> {
        let mut n = None;
        let mut levels = Vec::new();
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            match n {
                None => {
                    let value = line
                        .strip_prefix("n=")
                        .ok_or_else(|| Error::parse(line, "expected header `n=<int>`"))?;
                    let value: usize = value
                        .trim()
                        .parse()
                        .map_err(|_| Error::parse(value, "line count is not a positive integer"))?;
                    if value == 0 {
                        return Err(Error::parse(line, "line count must be positive"));
                    }
                    n = Some(value);
                }
                Some(_) if line == "-" => levels.push(Vec::new()),
                Some(_) => {
                    let level = line
                        .split_whitespace()
                        .map(|tok| tok.parse::<usize>().map_err(|_| Error::parse(tok, "rung column is not an integer")))
                        .collect::<Result<Vec<_>>>()?;
                    levels.push(level);
                }
            }
        }
        let n = n.ok_or_else(|| Error::parse("", "missing header `n=<int>`"))?;
        Ok(Ladder { n, levels })
    }
}
