//! Exact diameters where a closed form is known, recursive bounds
//! elsewhere, and recognition/enumeration of the permutations that attain
//! the diameter when `5 <= n <= 2m + 1`.
//!
//! With `d = ⌊(n-m)/2⌋`, "lows" and "highs" are initial and final runs of
//! `{1..n}`, and a "pair" is a 2-cycle joining a low to a high. The shapes:
//!
//! | shape        | n-m  | lows      | highs       | cycles                                              |
//! |--------------|------|-----------|-------------|-----------------------------------------------------|
//! | even-gap     | even | `1..=d`   | `n-d+1..=n` | d pairs, one cycle on `d+1..=n-d`                   |
//! | matched      | odd  | `1..=d+1` | `n-d..=n`   | d pairs, one cycle on the rest, meeting `{d+1,n-d}` |
//! | low-triple   | odd  | `1..=d+1` | `n-d+1..=n` | d-1 pairs, a 3-cycle (2 lows, 1 high), one cycle on `d+2..=n-d` |
//! | high-triple  | odd  | `1..=d`   | `n-d..=n`   | d-1 pairs, a 3-cycle (1 low, 2 highs), one cycle on `d+1..=n-d-1` |
//! | quad         | odd  | `1..=d+1` | `n-d..=n`   | d-1 pairs, an alternating 4-cycle meeting `{d+1,n-d}`, one cycle on `d+2..=n-d-1` |

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::cayley::{bfs_diameter, check_width, BfsOptions};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::rank::RankCodec;

/// Exact δ(n, m) for `m = 1`, `m = n - 1`, and `5 <= n <= 2m + 1`.
pub fn delta_closed_form(n: usize, m: usize) -> Result<Option<usize>> {
    check_width(n, m)?;
    Ok(if m == 1 {
        Some(n * (n - 1) / 2)
    } else if m == n - 1 {
        Some(n - 1)
    } else if (5..=2 * m + 1).contains(&n) {
        Some(n + (n - m) / 2 - 1)
    } else {
        None
    })
}

/// BFS-exact diameters not covered by the closed form, `n <= 10`.
pub const KNOWN_EXACT: [(usize, usize, usize); 10] = [
    (4, 2, 4),
    (6, 2, 7),
    (7, 2, 10),
    (8, 2, 14),
    (8, 3, 10),
    (9, 2, 16),
    (9, 3, 11),
    (10, 2, 19),
    (10, 3, 14),
    (10, 4, 12),
];

fn known_exact(n: usize, m: usize) -> Option<usize> {
    KNOWN_EXACT.iter().find(|&&(a, b, _)| (a, b) == (n, m)).map(|&(_, _, d)| d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundSource {
    ClosedForm,
    /// A tabulated BFS result.
    Exact,
    /// `⌈(n-1)/m⌉ + δ(n-1, m)`, from parking the largest value.
    MoveLargest,
    /// `2⌈(n-1)/m⌉ - 1 + δ(n-2, m)`, from parking both ends.
    MoveEnds,
    /// `n - 1`, the distance of an n-cycle with unrestricted widths.
    CycleCount,
}

impl fmt::Display for BoundSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundSource::ClosedForm => "closed-form",
            BoundSource::Exact => "exact",
            BoundSource::MoveLargest => "move-largest",
            BoundSource::MoveEnds => "move-ends",
            BoundSource::CycleCount => "cycle-count",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaBounds {
    pub n: usize,
    pub m: usize,
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
    pub lower_source: BoundSource,
    pub upper_source: BoundSource,
}

/// Step cost of parking the largest value; needs `n >= 5`, `m <= n - 4`.
pub fn move_largest_step(n: usize, m: usize) -> Option<usize> {
    (n >= 5 && m + 4 <= n).then(|| (n - 1).div_ceil(m))
}

/// Step cost of parking both ends; needs `n >= 5`, `2m <= n - 1`.
pub fn move_ends_step(n: usize, m: usize) -> Option<usize> {
    (n >= 5 && 2 * m < n).then(|| 2 * (n - 1).div_ceil(m) - 1)
}

pub fn delta_bounds(n: usize, m: usize) -> Result<DeltaBounds> {
    delta_bounds_with(n, m, &known_exact)
}

/// Bounds seeded by closed forms plus whatever `exact` knows.
pub fn delta_bounds_with(n: usize, m: usize, exact: &dyn Fn(usize, usize) -> Option<usize>) -> Result<DeltaBounds> {
    check_width(n, m)?;
    let known = delta_closed_form(n, m)?
        .map(|d| (d, BoundSource::ClosedForm))
        .or_else(|| exact(n, m).map(|d| (d, BoundSource::Exact)));
    if let Some((d, source)) = known {
        return Ok(DeltaBounds {
            n,
            m,
            lower: d,
            upper: d,
            exact: true,
            lower_source: source,
            upper_source: source,
        });
    }
    let (upper, upper_source) = upper_bound(n, m, exact);
    let lower = n - 1;
    Ok(DeltaBounds {
        n,
        m,
        lower,
        upper,
        exact: lower == upper,
        lower_source: BoundSource::CycleCount,
        upper_source,
    })
}

fn upper_bound(n: usize, m: usize, exact: &dyn Fn(usize, usize) -> Option<usize>) -> (usize, BoundSource) {
    if let Ok(Some(d)) = delta_closed_form(n, m) {
        return (d, BoundSource::ClosedForm);
    }
    if let Some(d) = exact(n, m) {
        return (d, BoundSource::Exact);
    }
    let by_largest = move_largest_step(n, m).map(|s| (s + upper_bound(n - 1, m, exact).0, BoundSource::MoveLargest));
    let by_ends = move_ends_step(n, m).map(|s| (s + upper_bound(n - 2, m, exact).0, BoundSource::MoveEnds));
    match (by_largest, by_ends) {
        (Some(a), Some(b)) => {
            if b.0 < a.0 {
                b
            } else {
                a
            }
        }
        (Some(a), None) => a,
        (None, Some(b)) => b,
        (None, None) => unreachable!("every uncovered regime has n >= 2m + 2"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shape {
    EvenGap,
    Matched,
    LowTriple,
    HighTriple,
    Quad,
    /// `m = n - 1`: a single n-cycle.
    NCycle,
    /// `m = 1`: the reversal.
    Reverse,
    None,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Shape::EvenGap => "even-gap",
            Shape::Matched => "matched",
            Shape::LowTriple => "low-triple",
            Shape::HighTriple => "high-triple",
            Shape::Quad => "quad",
            Shape::NCycle => "n-cycle",
            Shape::Reverse => "reverse",
            Shape::None => "none",
        })
    }
}

/// The cycles a classified permutation is built from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub pairs: Vec<(usize, usize)>,
    /// The 3- or 4-cycle of the triple and quad shapes.
    pub special: Option<Vec<usize>>,
    /// The remaining long cycle (or fixed point).
    pub middle: Vec<usize>,
}

impl Witness {
    pub fn assemble(&self, n: usize) -> Result<Permutation> {
        let mut cycles: Vec<Vec<usize>> = self.pairs.iter().map(|&(a, b)| vec![a, b]).collect();
        cycles.extend(self.special.clone());
        cycles.push(self.middle.clone());
        Permutation::from_cycles(n, &cycles)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalCase {
    pub shape: Shape,
    pub d: usize,
    pub witness: Option<Witness>,
}

fn check_regime(n: usize, m: usize) -> Result<()> {
    check_width(n, m)?;
    if m == 1 || m == n - 1 || ((5..=2 * m + 1).contains(&n) && m + 2 <= n) {
        Ok(())
    } else {
        Err(Error::UnsupportedRegime {
            n,
            m,
            reason: "extremal shapes are known for m = 1, m = n-1, and 5 <= n <= 2m+1".into(),
        })
    }
}

fn range(a: usize, b: usize) -> Vec<usize> {
    (a..=b).collect()
}

/// Which shapes apply and their low/high/middle sets.
struct Template {
    shape: Shape,
    lows: Vec<usize>,
    highs: Vec<usize>,
    pairs: usize,
    /// Lows and highs in the special cycle, `(0, 0)` if none.
    special: (usize, usize),
    /// Exact middle support, or `None` for "everything left over".
    middle: Option<Vec<usize>>,
    /// The special cycle, or the middle when there is none, must meet this.
    must_meet: Vec<usize>,
}

fn templates(n: usize, m: usize) -> Vec<Template> {
    let d = (n - m) / 2;
    if (n - m).is_multiple_of(2) {
        return vec![Template {
            shape: Shape::EvenGap,
            lows: range(1, d),
            highs: range(n - d + 1, n),
            pairs: d,
            special: (0, 0),
            middle: Some(range(d + 1, n - d)),
            must_meet: Vec::new(),
        }];
    }
    vec![
        Template {
            shape: Shape::Matched,
            lows: range(1, d + 1),
            highs: range(n - d, n),
            pairs: d,
            special: (0, 0),
            middle: None,
            must_meet: vec![d + 1, n - d],
        },
        Template {
            shape: Shape::LowTriple,
            lows: range(1, d + 1),
            highs: range(n - d + 1, n),
            pairs: d - 1,
            special: (2, 1),
            middle: Some(range(d + 2, n - d)),
            must_meet: Vec::new(),
        },
        Template {
            shape: Shape::HighTriple,
            lows: range(1, d),
            highs: range(n - d, n),
            pairs: d - 1,
            special: (1, 2),
            middle: Some(range(d + 1, n - d - 1)),
            must_meet: Vec::new(),
        },
        Template {
            shape: Shape::Quad,
            lows: range(1, d + 1),
            highs: range(n - d, n),
            pairs: d - 1,
            special: (2, 2),
            middle: Some(range(d + 2, n - d - 1)),
            must_meet: vec![d + 1, n - d],
        },
    ]
}

impl Template {
    fn matches(&self, cycles: &[Vec<usize>]) -> Option<Witness> {
        let is_low = |x: &usize| self.lows.contains(x);
        let is_high = |x: &usize| self.highs.contains(x);
        let mut pairs = Vec::new();
        let mut special = None;
        let mut rest = Vec::new();
        for c in cycles {
            let lows = c.iter().filter(|x| is_low(x)).count();
            let highs = c.iter().filter(|x| is_high(x)).count();
            if c.len() == 2 && lows == 1 && highs == 1 && pairs.len() < self.pairs {
                pairs.push((c[0], c[1]));
            } else if self.special != (0, 0) && (lows, highs) == self.special && lows + highs == c.len() {
                if special.replace(c.clone()).is_some() {
                    return None;
                }
            } else {
                rest.push(c);
            }
        }
        if pairs.len() != self.pairs || (self.special != (0, 0)) != special.is_some() {
            return None;
        }
        if let Some(sp) = &special {
            if sp.len() == 4 && !(0..4).all(|k| is_low(&sp[k]) != is_low(&sp[(k + 1) % 4])) {
                return None;
            }
        }
        // the middle is a single cycle (possibly a fixed point)
        let [middle] = rest.as_slice() else {
            return None;
        };
        let middle = middle.to_vec();
        if let Some(support) = &self.middle {
            let mut sorted = middle.clone();
            sorted.sort_unstable();
            if &sorted != support {
                return None;
            }
        }
        if !self.must_meet.is_empty() {
            let target = special.as_ref().unwrap_or(&middle);
            if !self.must_meet.iter().any(|x| target.contains(x)) {
                return None;
            }
        }
        Some(Witness { pairs, special, middle })
    }
}

/// Matches `p` against the shapes attaining δ(n, m).
pub fn is_extremal(p: &Permutation, m: usize) -> Result<ExtremalCase> {
    let n = p.n();
    check_regime(n, m)?;
    let d = (n - m) / 2;
    let decomposition = p.cycles();
    let cycles = decomposition.cycles();
    if m == n - 1 {
        let hit = cycles.len() == 1;
        return Ok(ExtremalCase {
            shape: if hit { Shape::NCycle } else { Shape::None },
            d,
            witness: hit.then(|| Witness {
                pairs: Vec::new(),
                special: None,
                middle: cycles[0].clone(),
            }),
        });
    }
    if m == 1 {
        let hit = *p == Permutation::reverse(n);
        return Ok(ExtremalCase {
            shape: if hit { Shape::Reverse } else { Shape::None },
            d,
            witness: hit.then(|| Witness {
                pairs: (1..=n / 2).map(|k| (k, n + 1 - k)).collect(),
                special: None,
                middle: if n % 2 == 1 { vec![n / 2 + 1] } else { Vec::new() },
            }),
        });
    }
    for template in templates(n, m) {
        if let Some(witness) = template.matches(cycles) {
            return Ok(ExtremalCase {
                shape: template.shape,
                d,
                witness: Some(witness),
            });
        }
    }
    Ok(ExtremalCase {
        shape: Shape::None,
        d,
        witness: None,
    })
}

/// All cyclic arrangements of `points`, each starting at its first point.
fn cycles_on(points: &[usize]) -> Vec<Vec<usize>> {
    match points {
        [] => vec![Vec::new()],
        [first, rest @ ..] => rest
            .iter()
            .copied()
            .permutations(rest.len())
            .map(|tail| std::iter::once(*first).chain(tail).collect())
            .collect(),
    }
}

fn minus(all: &[usize], taken: &[usize]) -> Vec<usize> {
    all.iter().copied().filter(|x| !taken.contains(x)).collect()
}

/// Every permutation attaining δ(n, m), sorted by one-line notation.
pub fn enumerate_extremal(n: usize, m: usize) -> Result<Vec<Permutation>> {
    check_regime(n, m)?;
    if m == 1 {
        return Ok(vec![Permutation::reverse(n)]);
    }
    let mut found = BTreeSet::new();
    if m == n - 1 {
        for cycle in cycles_on(&range(1, n)) {
            found.insert(Permutation::from_cycles(n, &[cycle])?);
        }
        return Ok(found.into_iter().collect());
    }
    for t in templates(n, m) {
        let (sl, sh) = t.special;
        for special_lows in t.lows.iter().copied().combinations(sl) {
            for special_highs in t.highs.iter().copied().combinations(sh) {
                let specials: Vec<Vec<usize>> = match (sl, sh) {
                    (0, 0) => vec![Vec::new()],
                    (2, 2) => {
                        let (a, b, x, y) = (special_lows[0], special_lows[1], special_highs[0], special_highs[1]);
                        vec![vec![a, x, b, y], vec![a, y, b, x]]
                    }
                    _ => cycles_on(&[special_lows.clone(), special_highs.clone()].concat()),
                };
                if !t.must_meet.is_empty() && sl + sh > 0 {
                    let support = [special_lows.clone(), special_highs.clone()].concat();
                    if !t.must_meet.iter().any(|x| support.contains(x)) {
                        continue;
                    }
                }
                let free_lows = minus(&t.lows, &special_lows);
                let free_highs = minus(&t.highs, &special_highs);
                for paired_lows in free_lows.iter().copied().combinations(t.pairs) {
                    for paired_highs in free_highs.iter().copied().permutations(t.pairs) {
                        let pairs: Vec<Vec<usize>> = paired_lows
                            .iter()
                            .zip(&paired_highs)
                            .map(|(&a, &b)| vec![a, b])
                            .collect();
                        let used: Vec<usize> = pairs
                            .iter()
                            .flatten()
                            .chain(&special_lows)
                            .chain(&special_highs)
                            .copied()
                            .collect();
                        let middle = match &t.middle {
                            Some(support) => support.clone(),
                            None => minus(&range(1, n), &used),
                        };
                        if t.middle.is_some() && middle.len() + used.len() != n {
                            continue;
                        }
                        if t.middle.is_none() && sl + sh == 0 && !t.must_meet.iter().any(|x| middle.contains(x)) {
                            continue;
                        }
                        for mid in cycles_on(&middle) {
                            for sp in &specials {
                                let mut cycles = pairs.clone();
                                cycles.push(sp.clone());
                                cycles.push(mid.clone());
                                found.insert(Permutation::from_cycles(n, &cycles)?);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// Comparison of the shape classification against a BFS farthest set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationAudit {
    pub n: usize,
    pub m: usize,
    pub delta: usize,
    pub expected_delta: Option<usize>,
    pub farthest_count: u64,
    pub enumerated_count: usize,
    /// Farthest permutations the enumeration misses.
    pub missing: Vec<Permutation>,
    /// Enumerated permutations that are not farthest.
    pub extra: Vec<Permutation>,
    /// Permutations where the recognizer and the farthest set disagree.
    pub recognizer_mismatches: Vec<Permutation>,
}

impl ClassificationAudit {
    pub fn is_consistent(&self) -> bool {
        self.expected_delta == Some(self.delta)
            && self.missing.is_empty()
            && self.extra.is_empty()
            && self.recognizer_mismatches.is_empty()
    }
}

/// Runs BFS and checks enumeration and recognition against its farthest
/// set, over every permutation of degree `n`.
pub fn audit_classification(n: usize, m: usize, opts: &BfsOptions) -> Result<ClassificationAudit> {
    check_regime(n, m)?;
    let opts = BfsOptions {
        collect_farthest: true,
        farthest_limit: None,
        ..opts.clone()
    };
    let report = bfs_diameter(n, m, &opts)?;
    let farthest: BTreeSet<Permutation> = report.farthest.unwrap_or_default().into_iter().collect();
    let enumerated: BTreeSet<Permutation> = enumerate_extremal(n, m)?.into_iter().collect();

    let codec = RankCodec::new(n)?;
    let mut recognizer_mismatches = Vec::new();
    for k in 0..codec.size() {
        let p = codec.unrank(k)?;
        let recognized = is_extremal(&p, m)?.shape != Shape::None;
        if recognized != farthest.contains(&p) {
            recognizer_mismatches.push(p);
        }
    }
    Ok(ClassificationAudit {
        n,
        m,
        delta: report.delta,
        expected_delta: delta_closed_form(n, m)?,
        farthest_count: report.farthest_count,
        enumerated_count: enumerated.len(),
        missing: farthest.difference(&enumerated).cloned().collect(),
        extra: enumerated.difference(&farthest).cloned().collect(),
        recognizer_mismatches,
    })
}
