//! Permutations of `{1, ..., n}` and the transpositions that generate them.
//!
//! All external input and output is 1-based. A [`Permutation`] is stored
//! 0-based internally but every public accessor speaks 1-based values.
//!
//! Composition is *right factor first*: `p.compose(&q)` is the map
//! `x -> p(q(x))`. Under this convention a word of transpositions
//! `t1 t2 ... tk` read left to right is the permutation `t1 ∘ t2 ∘ ... ∘ tk`,
//! so `tk` acts first. Swapping two *positions* of the one-line form of `p`
//! is right multiplication `p ∘ (i j)`, while swapping two *values* is left
//! multiplication `(i j) ∘ p`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection on `{1, ..., n}` with `n >= 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct Permutation {
    // image[k] = σ(k+1) - 1
    image: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_count(count: u64) -> Parity {
        if count.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Parity of a product given the parities of its factors.
    pub fn combine(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => f.write_str("even"),
            Parity::Odd => f.write_str("odd"),
        }
    }
}

impl Permutation {
    /// Builds a permutation from 1-based one-line notation `[σ(1), ..., σ(n)]`.
    pub fn new(one_line: Vec<usize>) -> Result<Self> {
        let n = one_line.len();
        if n == 0 {
            return Err(Error::parse("", "empty permutation"));
        }
        let mut seen = vec![false; n];
        let mut image = one_line;
        for v in image.iter_mut() {
            if *v == 0 || *v > n {
                return Err(Error::parse(v.to_string(), format!("value out of range 1..={n}")));
            }
            if seen[*v - 1] {
                return Err(Error::parse(v.to_string(), "repeated value"));
            }
            seen[*v - 1] = true;
            *v -= 1;
        }
        Ok(Permutation { image })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "degree must be at least 1");
        Permutation {
            image: (0..n).collect(),
        }
    }

    /// `[n, n-1, ..., 1]`, the permutation with the most inversions.
    pub fn reverse(n: usize) -> Self {
        assert!(n >= 1, "degree must be at least 1");
        Permutation {
            image: (0..n).rev().collect(),
        }
    }

    /// Builds a permutation of degree `n` from disjoint cycles in 1-based
    /// cycle notation, where `(j1 j2 ... jr)` sends `j1 -> j2 -> ... -> jr -> j1`.
    pub fn from_cycles<C: AsRef<[usize]>>(n: usize, cycles: &[C]) -> Result<Self> {
        if n == 0 {
            return Err(Error::parse("", "empty permutation"));
        }
        let mut image: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            let cycle = cycle.as_ref();
            for &x in cycle {
                if x == 0 || x > n {
                    return Err(Error::parse(x.to_string(), format!("cycle entry out of range 1..={n}")));
                }
                if used[x - 1] {
                    return Err(Error::parse(x.to_string(), "entry appears in more than one place"));
                }
                used[x - 1] = true;
            }
            for (k, &x) in cycle.iter().enumerate() {
                let next = cycle[(k + 1) % cycle.len()];
                image[x - 1] = next - 1;
            }
        }
        Ok(Permutation { image })
    }

    /// Wraps 0-based images that are already known to form a bijection.
    pub(crate) fn from_zero_based(image: Vec<usize>) -> Self {
        debug_assert!(is_bijection(&image));
        Permutation { image }
    }

    pub(crate) fn zero_based(&self) -> &[usize] {
        &self.image
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    /// `σ(x)` for 1-based `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.image[x - 1] + 1
    }

    /// 1-based one-line notation.
    pub fn one_line(&self) -> Vec<usize> {
        self.image.iter().map(|v| v + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(k, &v)| k == v)
    }

    /// `x -> self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::DegreeMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(Permutation {
            image: other.image.iter().map(|&x| self.image[x]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (k, &v) in self.image.iter().enumerate() {
            inv[v] = k;
        }
        Permutation { image: inv }
    }

    /// Right multiplication by a transposition: swaps the entries at
    /// positions `t.i()` and `t.j()` of the one-line form.
    pub fn swap_positions(&mut self, t: Transposition) {
        self.image.swap(t.i() - 1, t.j() - 1);
    }

    /// Left multiplication by a transposition: exchanges the values
    /// `t.i()` and `t.j()` wherever they occur.
    pub fn swap_values(&mut self, t: Transposition) {
        let (a, b) = (t.i() - 1, t.j() - 1);
        for v in self.image.iter_mut() {
            if *v == a {
                *v = b;
            } else if *v == b {
                *v = a;
            }
        }
    }

    pub fn cycles(&self) -> CycleDecomposition {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.image[x];
            }
            cycles.push(cycle);
        }
        // Scanning starts in increasing order already yields the normal form:
        // each cycle begins at its smallest element and cycles are sorted.
        CycleDecomposition { n, cycles }
    }

    /// Number of pairs `a < b` with `σ(a) > σ(b)`, in `O(n log n)`.
    pub fn inversion_count(&self) -> u64 {
        let mut tree = Fenwick::new(self.n());
        let mut total = 0u64;
        for &v in self.image.iter().rev() {
            total += tree.prefix_sum(v);
            tree.add(v);
        }
        total
    }

    pub fn parity(&self) -> Parity {
        Parity::of_count(self.inversion_count())
    }

    /// Parses either one-line notation (`"3 2 4 5 1"`, `"[3,2,4,5,1]"`) or
    /// cycle notation (`"(1 7)(2 3 4 5 6)"`), detected by a leading `(`.
    /// Cycle notation takes its degree from `n` if given, otherwise from the
    /// largest entry.
    pub fn parse(text: &str, n: Option<usize>) -> Result<Self> {
        if text.trim_start().starts_with('(') {
            Self::parse_cycles(text, n)
        } else {
            let p = Self::parse_one_line(text)?;
            match n {
                Some(n) if n != p.n() => Err(Error::DegreeMismatch {
                    left: p.n(),
                    right: n,
                }),
                _ => Ok(p),
            }
        }
    }

    pub fn parse_one_line(text: &str) -> Result<Self> {
        let body = text.trim();
        let body = body
            .strip_prefix('[')
            .map(|b| b.strip_suffix(']').ok_or_else(|| Error::parse(text.trim(), "unclosed `[`")))
            .transpose()?
            .unwrap_or(body);
        let values = body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|tok| !tok.is_empty())
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| Error::parse(tok, "expected a positive integer"))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(values)
    }

    pub fn parse_cycles(text: &str, n: Option<usize>) -> Result<Self> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut current: Option<Vec<usize>> = None;
        let mut number = String::new();

        let flush = |number: &mut String, current: &mut Option<Vec<usize>>| -> Result<()> {
            if number.is_empty() {
                return Ok(());
            }
            let tok = std::mem::take(number);
            let value = tok
                .parse::<usize>()
                .map_err(|_| Error::parse(tok.clone(), "expected a positive integer"))?;
            match current {
                Some(c) => {
                    c.push(value);
                    Ok(())
                }
                None => Err(Error::parse(tok, "entry outside of parentheses")),
            }
        };

        for ch in text.chars() {
            match ch {
                '(' => {
                    if current.is_some() {
                        return Err(Error::parse("(", "nested `(`"));
                    }
                    current = Some(Vec::new());
                }
                ')' => {
                    flush(&mut number, &mut current)?;
                    match current.take() {
                        Some(c) => cycles.push(c),
                        None => return Err(Error::parse(")", "unmatched `)`")),
                    }
                }
                c if c.is_ascii_digit() => number.push(c),
                c if c.is_whitespace() || c == ',' => flush(&mut number, &mut current)?,
                c => return Err(Error::parse(c.to_string(), "unexpected character in cycle notation")),
            }
        }
        if current.is_some() {
            return Err(Error::parse(text.trim(), "unclosed `(`"));
        }
        let max = cycles.iter().flatten().copied().max().unwrap_or(1);
        let n = n.unwrap_or(max);
        if let Some(&zero) = cycles.iter().flatten().find(|&&x| x == 0) {
            return Err(Error::parse(zero.to_string(), "cycle entry out of range"));
        }
        Permutation::from_cycles(n, &cycles)
    }

    pub fn to_cycle_string(&self) -> String {
        self.cycles().to_string()
    }
}

fn is_bijection(image: &[usize]) -> bool {
    let mut seen = vec![false; image.len()];
    image.iter().all(|&v| v < image.len() && !std::mem::replace(&mut seen[v], true))
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.image.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", v + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, v) in self.image.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        write!(f, "]")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Permutation::parse(s, None)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.one_line()
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

/// The transposition `(i j)` with `1 <= i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Transposition {
    i: usize,
    j: usize,
}

impl Transposition {
    /// Accepts the endpoints in either order.
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::Precondition("transposition endpoints are 1-based".into()));
        }
        if a == b {
            return Err(Error::Precondition(format!("transposition ({a},{b}) has equal endpoints")));
        }
        Ok(Transposition {
            i: a.min(b),
            j: a.max(b),
        })
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn width(&self) -> usize {
        self.j - self.i
    }

    pub fn to_permutation(&self, n: usize) -> Result<Permutation> {
        if self.j > n {
            return Err(Error::Precondition(format!("transposition {self} does not act on degree {n}")));
        }
        let mut image: Vec<usize> = (0..n).collect();
        image.swap(self.i - 1, self.j - 1);
        Ok(Permutation { image })
    }
}

impl fmt::Display for Transposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// Disjoint cycles of a permutation, fixed points included as 1-cycles.
///
/// Normal form: every cycle starts at its smallest element and cycles are
/// sorted by that element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleDecomposition {
    n: usize,
    cycles: Vec<Vec<usize>>,
}

impl CycleDecomposition {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    /// Number of cycles, counting fixed points.
    pub fn r(&self) -> usize {
        self.cycles.len()
    }

    /// Cycles of length two or more.
    pub fn nontrivial(&self) -> impl Iterator<Item = &[usize]> {
        self.cycles.iter().filter(|c| c.len() > 1).map(|c| c.as_slice())
    }

    /// `labels[x-1]` is the index of the cycle containing `x`.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.n];
        for (idx, cycle) in self.cycles.iter().enumerate() {
            for &x in cycle {
                labels[x - 1] = idx;
            }
        }
        labels
    }

    pub fn to_permutation(&self) -> Permutation {
        Permutation::from_cycles(self.n, &self.cycles).expect("cycle decomposition is a partition")
    }
}

impl fmt::Display for CycleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for cycle in self.nontrivial() {
            any = true;
            f.write_str("(")?;
            for (k, x) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

struct Fenwick {
    tree: Vec<u64>,
}

impl Fenwick {
    fn new(n: usize) -> Self {
        Fenwick { tree: vec![0; n + 1] }
    }

    fn add(&mut self, idx: usize) {
        let mut i = idx + 1;
        while i < self.tree.len() {
            self.tree[i] += 1;
            i += i & i.wrapping_neg();
        }
    }

    /// Count of inserted indices strictly below `idx`.
    fn prefix_sum(&self, idx: usize) -> u64 {
        let mut i = idx;
        let mut sum = 0;
        while i > 0 {
            sum += self.tree[i];
            i -= i & i.wrapping_neg();
        }
        sum
    }
}
