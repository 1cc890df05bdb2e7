//! Constructive factorizations into bounded-width transpositions.
//!
//! A [`Factorization`] lists factors so that
//! `target = factors[0] ∘ factors[1] ∘ ... ∘ factors[k-1]`, the last factor
//! acting first. Sorting routines here work by position swaps (right
//! multiplication), so a swap sequence `s1, ..., sk` that sorts `σ` yields
//! the factors `sk, ..., s1`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cayley::{self, check_width, DistanceOptions};
use crate::error::{Error, Result};
use crate::perm::{Permutation, Transposition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Bubble sort with adjacent swaps.
    Adjacent,
    /// Cycle splitting with arbitrary widths.
    Unrestricted,
    /// One spread cycle conjugated through the middle point.
    ConjugatedCycle,
    /// One compact cycle written as a star around its pivot.
    PivotedCycle,
    /// Two compatible spread cycles factored together.
    PairedCycles,
    /// Every cycle by its class, spread cycles paired where possible.
    CycleClasses,
    /// Recursion that parks the largest value at the end.
    MoveLargest,
    /// Recursion that parks the smallest and largest values at both ends.
    MoveEnds,
    Bfs,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::Adjacent => "adjacent",
            Method::Unrestricted => "unrestricted",
            Method::ConjugatedCycle => "conjugated-cycle",
            Method::PivotedCycle => "pivoted-cycle",
            Method::PairedCycles => "paired-cycles",
            Method::CycleClasses => "cycle-classes",
            Method::MoveLargest => "move-largest",
            Method::MoveEnds => "move-ends",
            Method::Bfs => "bfs",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Cycle counts behind a cycle-classes factorization: `r` cycles in all,
/// `spread` of them spread, `pairs` disjoint compatible pairs among those.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassStats {
    pub r: usize,
    pub spread: usize,
    pub pairs: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub target: Permutation,
    pub m: usize,
    pub factors: Vec<Transposition>,
    pub method: Method,
    pub claimed_bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub stats: Option<ClassStats>,
}

impl Factorization {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// `factors[0] ∘ ... ∘ factors[k-1]`.
    pub fn product(&self) -> Result<Permutation> {
        product(self.target.n(), &self.factors)
    }
}

/// `method len m : (i1,j1)(i2,j2)...`
impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} :", self.method, self.len(), self.m)?;
        if !self.factors.is_empty() {
            f.write_str(" ")?;
        }
        for t in &self.factors {
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

pub fn product(n: usize, factors: &[Transposition]) -> Result<Permutation> {
    let mut acc = Permutation::identity(n);
    for t in factors.iter().rev() {
        if t.j() > n {
            return Err(Error::Precondition(format!("factor {t} does not act on degree {n}")));
        }
        acc.swap_values(*t);
    }
    Ok(acc)
}

fn from_swaps(swaps: Vec<Transposition>) -> Vec<Transposition> {
    let mut factors = swaps;
    factors.reverse();
    factors
}

fn t(a: usize, b: usize) -> Transposition {
    Transposition::new(a, b).expect("distinct 1-based endpoints")
}

pub fn adjacent_sort(p: &Permutation) -> Factorization {
    let mut line = p.one_line();
    let n = line.len();
    let mut swaps = Vec::new();
    for end in (1..n).rev() {
        for k in 0..end {
            if line[k] > line[k + 1] {
                line.swap(k, k + 1);
                swaps.push(t(k + 1, k + 2));
            }
        }
    }
    Factorization {
        target: p.clone(),
        m: 1,
        factors: from_swaps(swaps),
        method: Method::Adjacent,
        claimed_bound: Some(p.inversion_count() as usize),
        stats: None,
    }
}

/// `n - r` factors, each splitting a cycle of what remains.
pub fn unrestricted_factor(p: &Permutation) -> Factorization {
    let n = p.n();
    let cycles = p.cycles();
    let mut factors = Vec::with_capacity(n - cycles.r());
    for cycle in cycles.nontrivial() {
        factors.extend(star(cycle));
    }
    Factorization {
        target: p.clone(),
        m: n.saturating_sub(1).max(1),
        factors,
        method: Method::Unrestricted,
        claimed_bound: Some(n - cycles.r()),
        stats: None,
    }
}

/// `(i_p,i_{p-1}) ... (i_p,i_1)` for the cycle `(i_1 ... i_p)`.
fn star(cycle: &[usize]) -> Vec<Transposition> {
    let (&hub, rest) = cycle.split_last().expect("nonempty cycle");
    rest.iter().rev().map(|&x| t(hub, x)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CycleEffect {
    /// Endpoints share a cycle; multiplying splits it in two.
    Split,
    /// Endpoints lie in different cycles; multiplying joins them.
    Join,
}

/// Effect of left-multiplying `p` by `t` on the cycle structure of `p`.
pub fn classify_transposition(t: &Transposition, p: &Permutation) -> Result<CycleEffect> {
    if t.j() > p.n() {
        return Err(Error::Precondition(format!("{t} does not act on degree {}", p.n())));
    }
    let labels = p.cycles().labels();
    Ok(if labels[t.i() - 1] == labels[t.j() - 1] {
        CycleEffect::Split
    } else {
        CycleEffect::Join
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleClass {
    /// Every term has another term more than `m` away.
    pub spread: bool,
    /// Smallest term within `m` of every other term; present iff not spread.
    pub pivot: Option<usize>,
    pub smallest: usize,
    pub largest: usize,
}

pub fn cycle_class(cycle: &[usize], m: usize) -> Result<CycleClass> {
    let (&smallest, &largest) = match (cycle.iter().min(), cycle.iter().max()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::Precondition("empty cycle".into())),
    };
    // x is within m of every term iff it is within m of both extremes
    let pivot = cycle
        .iter()
        .copied()
        .filter(|&x| x - smallest <= m && largest - x <= m)
        .min();
    Ok(CycleClass {
        spread: pivot.is_none(),
        pivot,
        smallest,
        largest,
    })
}

/// Terms `(r, s)`, `r` from `a` and `s` from `b`, with every term of `a`
/// within `m` of `s` and every term of `b` within `m` of `r`. Candidates are
/// tried in cycle order.
pub fn pair_condition(a: &[usize], b: &[usize], m: usize) -> Result<Option<(usize, usize)>> {
    if let Some(x) = a.iter().find(|x| b.contains(x)) {
        return Err(Error::Precondition(format!("cycles overlap at {x}")));
    }
    let near_all = |x: usize, terms: &[usize]| terms.iter().all(|&y| x.abs_diff(y) <= m);
    for &r in a {
        if !near_all(r, b) {
            continue;
        }
        if let Some(&s) = b.iter().find(|&&s| near_all(s, a)) {
            return Ok(Some((r, s)));
        }
    }
    Ok(None)
}

fn check_small_regime(n: usize, m: usize) -> Result<()> {
    check_width(n, m)?;
    if n < 5 || n > 2 * m + 1 {
        return Err(Error::UnsupportedRegime {
            n,
            m,
            reason: "cycle constructions need 5 <= n <= 2m+1".into(),
        });
    }
    Ok(())
}

fn check_cycle(cycle: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n + 1];
    for &x in cycle {
        if x == 0 || x > n {
            return Err(Error::parse(x.to_string(), format!("cycle entry out of range 1..={n}")));
        }
        if std::mem::replace(&mut seen[x], true) {
            return Err(Error::parse(x.to_string(), "repeated cycle entry"));
        }
    }
    Ok(())
}

fn rotate_to_end(cycle: &[usize], last: usize) -> Vec<usize> {
    let k = cycle.iter().position(|&x| x == last).expect("term of the cycle");
    let mut rotated = cycle[k + 1..].to_vec();
    rotated.extend_from_slice(&cycle[..=k]);
    rotated
}

/// Star factorization of `cycle` around `pivot`: `p - 1` factors whose
/// widths are the distances from `pivot` to the other terms.
pub fn pivoted_factors(cycle: &[usize], pivot: usize) -> Result<Vec<Transposition>> {
    if !cycle.contains(&pivot) {
        return Err(Error::Precondition(format!("{pivot} is not a term of the cycle")));
    }
    Ok(star(&rotate_to_end(cycle, pivot)))
}

/// A single cycle of `S_n`: `p + 1` factors through the middle point when
/// spread, `p - 1` around the smallest pivot otherwise.
pub fn factor_cycle(cycle: &[usize], m: usize, n: usize) -> Result<Factorization> {
    check_small_regime(n, m)?;
    check_cycle(cycle, n)?;
    let target = Permutation::from_cycles(n, &[cycle])?;
    if cycle.len() <= 1 {
        return Ok(Factorization {
            target,
            m,
            factors: Vec::new(),
            method: Method::PivotedCycle,
            claimed_bound: Some(0),
            stats: None,
        });
    }
    let class = cycle_class(cycle, m)?;
    let (factors, method) = match class.pivot {
        Some(pivot) => (pivoted_factors(cycle, pivot)?, Method::PivotedCycle),
        None => (conjugated_factors(cycle, m), Method::ConjugatedCycle),
    };
    let bound = if class.spread { cycle.len() + 1 } else { cycle.len() - 1 };
    Ok(Factorization {
        target,
        m,
        factors,
        method,
        claimed_bound: Some(bound),
        stats: None,
    })
}

/// `(c,i_p)(c,i_{p-1})...(c,i_1)(c,i_p)` with `c = m + 1`, which lies
/// within `m` of every point when `n <= 2m + 1` and is never a term of a
/// spread cycle.
fn conjugated_factors(cycle: &[usize], m: usize) -> Vec<Transposition> {
    let c = m + 1;
    let last = *cycle.last().expect("nonempty cycle");
    let mut factors: Vec<Transposition> = cycle.iter().rev().map(|&x| t(c, x)).collect();
    factors.push(t(c, last));
    factors
}

/// Two disjoint spread cycles with a pair witness, in `p + q` factors.
pub fn factor_cycle_pair(a: &[usize], b: &[usize], m: usize, n: usize) -> Result<Factorization> {
    check_small_regime(n, m)?;
    check_cycle(a, n)?;
    check_cycle(b, n)?;
    for (name, cycle) in [("first", a), ("second", b)] {
        if cycle.len() < 2 || !cycle_class(cycle, m)?.spread {
            return Err(Error::Precondition(format!("{name} cycle is not spread for width {m}")));
        }
    }
    let (r, s) = pair_condition(a, b, m)?
        .ok_or_else(|| Error::Precondition("cycles have no pair witness".into()))?;
    let target = Permutation::from_cycles(n, &[a, b])?;
    Ok(Factorization {
        target,
        m,
        factors: paired_factors(a, b, r, s),
        method: Method::PairedCycles,
        claimed_bound: Some(a.len() + b.len()),
        stats: None,
    })
}

/// With `a` rotated to end at `r` and `b` to end at `s`:
/// `(s,a_p)...(s,a_1)(r,b_{q-1})...(r,b_1)(r,s)`.
fn paired_factors(a: &[usize], b: &[usize], r: usize, s: usize) -> Vec<Transposition> {
    let a = rotate_to_end(a, r);
    let b = rotate_to_end(b, s);
    let mut factors: Vec<Transposition> = a.iter().rev().map(|&x| t(s, x)).collect();
    factors.extend(b[..b.len() - 1].iter().rev().map(|&x| t(r, x)));
    factors.push(t(r, s));
    factors
}

/// Greedy pairing of spread cycles: ascending smallest term, each matched
/// with the unmatched spread cycle of smallest largest term that lies
/// within `m` of it.
fn greedy_pairs(spread: &[(&[usize], CycleClass)], m: usize) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..spread.len()).collect();
    order.sort_by_key(|&k| spread[k].1.smallest);
    let mut matched = vec![false; spread.len()];
    let mut pairs = Vec::new();
    for &a in &order {
        if matched[a] {
            continue;
        }
        let low = spread[a].1.smallest;
        let partner = (0..spread.len())
            .filter(|&b| b != a && !matched[b] && spread[b].1.largest.abs_diff(low) <= m)
            .min_by_key(|&b| spread[b].1.largest);
        if let Some(b) = partner {
            matched[a] = true;
            matched[b] = true;
            pairs.push((a, b));
        }
    }
    pairs
}

/// Every cycle by its class: `n - r + 2·spread - 2·pairs` factors.
pub fn factor_by_cycle_classes(p: &Permutation, m: usize) -> Result<Factorization> {
    let n = p.n();
    check_small_regime(n, m)?;
    let cycles = p.cycles();
    let mut spread = Vec::new();
    let mut compact = Vec::new();
    for cycle in cycles.nontrivial() {
        let class = cycle_class(cycle, m)?;
        if class.spread {
            spread.push((cycle, class));
        } else {
            compact.push((cycle, class));
        }
    }

    let pairs = greedy_pairs(&spread, m);
    let mut used = vec![false; spread.len()];
    let mut factors = Vec::new();
    for &(a, b) in &pairs {
        used[a] = true;
        used[b] = true;
        let (ca, cb) = (spread[a].0, spread[b].0);
        let (r, s) = pair_condition(ca, cb, m)?.expect("greedy partners always have a witness");
        factors.extend(paired_factors(ca, cb, r, s));
    }
    for (k, (cycle, _)) in spread.iter().enumerate() {
        if !used[k] {
            factors.extend(conjugated_factors(cycle, m));
        }
    }
    for (cycle, class) in &compact {
        factors.extend(pivoted_factors(cycle, class.pivot.expect("compact cycle"))?);
    }

    let stats = ClassStats {
        r: cycles.r(),
        spread: spread.len(),
        pairs: pairs.len(),
    };
    Ok(Factorization {
        target: p.clone(),
        m,
        factors,
        method: Method::CycleClasses,
        claimed_bound: Some(n - stats.r + 2 * stats.spread - 2 * stats.pairs),
        stats: Some(stats),
    })
}

pub fn bfs_factor(p: &Permutation, m: usize, opts: &DistanceOptions) -> Result<Factorization> {
    let factors = cayley::shortest_word(p, m, opts)?;
    Ok(Factorization {
        target: p.clone(),
        m,
        claimed_bound: Some(factors.len()),
        factors,
        method: Method::Bfs,
        stats: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RecursionRule {
    /// Both ends while `m <= (n-1)/2`, the largest value otherwise.
    #[default]
    Auto,
    MoveLargest,
    MoveEnds,
}

/// Size of the window the recursion hands to its base case.
fn base_case(n: usize, m: usize) -> bool {
    n <= 2 * m + 1 || m == 1
}

/// Worst-case length of the recursion for degree `n`, from the closed
/// forms at its base cases.
pub fn recursion_bound(n: usize, m: usize, rule: RecursionRule) -> usize {
    let m = m.min(n.saturating_sub(1)).max(1);
    if n <= 1 {
        return 0;
    }
    if m == 1 {
        return n * (n - 1) / 2;
    }
    if n <= 2 * m + 1 {
        return small_diameter(n, m);
    }
    match pick_rule(n, m, rule) {
        RecursionRule::MoveEnds => 2 * (n - 1).div_ceil(m) - 1 + recursion_bound(n - 2, m, rule),
        _ => (n - 1).div_ceil(m) + recursion_bound(n - 1, m, rule),
    }
}

/// Exact diameter for `n <= 2m + 1`.
fn small_diameter(n: usize, m: usize) -> usize {
    match (n, m) {
        (2, _) => 1,
        (3, 1) => 3,
        (3, _) => 2,
        (4, 1) => 6,
        (4, 2) => 4,
        (4, _) => 3,
        _ if m >= n - 1 => n - 1,
        _ => n + (n - m) / 2 - 1,
    }
}

fn pick_rule(n: usize, m: usize, rule: RecursionRule) -> RecursionRule {
    match rule {
        RecursionRule::Auto if 2 * m < n => RecursionRule::MoveEnds,
        RecursionRule::Auto => RecursionRule::MoveLargest,
        other => other,
    }
}

pub fn recursive_factor(p: &Permutation, m: usize) -> Result<Factorization> {
    recursive_factor_with(p, m, RecursionRule::Auto)
}

/// Parks values at the ends of a shrinking window with width-`m` hops,
/// then factors the remaining window directly.
pub fn recursive_factor_with(p: &Permutation, m: usize, rule: RecursionRule) -> Result<Factorization> {
    let n = p.n();
    if n == 1 {
        return Ok(Factorization {
            target: p.clone(),
            m,
            factors: Vec::new(),
            method: Method::Adjacent,
            claimed_bound: Some(0),
            stats: None,
        });
    }
    check_width(n, m)?;
    if base_case(n, m) {
        return window_factor(p, m);
    }

    let mut window = Window {
        line: p.one_line(),
        lo: 1,
        hi: n,
        m,
        swaps: Vec::new(),
    };
    let top = pick_rule(n, m, rule);
    while !base_case(window.hi - window.lo + 1, m) {
        match pick_rule(window.hi - window.lo + 1, m, rule) {
            RecursionRule::MoveEnds => window.park_ends(),
            _ => window.park_largest(),
        }
    }
    let rest = window.residual();
    let base = window_factor(&rest, m.min(rest.n().saturating_sub(1)).max(1))?;
    let offset = window.lo - 1;
    window
        .swaps
        .extend(base.factors.iter().rev().map(|f| t(f.i() + offset, f.j() + offset)));

    Ok(Factorization {
        target: p.clone(),
        m,
        factors: from_swaps(window.swaps),
        method: if top == RecursionRule::MoveEnds {
            Method::MoveEnds
        } else {
            Method::MoveLargest
        },
        claimed_bound: Some(recursion_bound(n, m, rule)),
        stats: None,
    })
}

/// Direct factorization of a window small enough for a base case.
fn window_factor(p: &Permutation, m: usize) -> Result<Factorization> {
    let n = p.n();
    if n <= 1 {
        return Ok(Factorization {
            target: p.clone(),
            m,
            factors: Vec::new(),
            method: Method::Adjacent,
            claimed_bound: Some(0),
            stats: None,
        });
    }
    let m = m.min(n - 1);
    if m == 1 {
        Ok(adjacent_sort(p))
    } else if n < 5 {
        bfs_factor(p, m, &DistanceOptions::default())
    } else {
        factor_by_cycle_classes(p, m)
    }
}

/// One-line values in the window `lo..=hi` are exactly `lo..=hi`.
struct Window {
    line: Vec<usize>,
    lo: usize,
    hi: usize,
    m: usize,
    swaps: Vec<Transposition>,
}

impl Window {
    fn position(&self, value: usize) -> usize {
        self.line.iter().position(|&v| v == value).expect("value in window") + 1
    }

    fn swap(&mut self, a: usize, b: usize) {
        if a != b {
            debug_assert!(a.abs_diff(b) <= self.m);
            self.line.swap(a - 1, b - 1);
            self.swaps.push(t(a, b));
        }
    }

    fn park_largest(&mut self) {
        let hi = self.hi;
        let mut pos = self.position(hi);
        while pos < hi {
            let next = (pos + self.m).min(hi);
            self.swap(pos, next);
            pos = next;
        }
        self.hi -= 1;
    }

    /// Hops along the block points `lo + k·m`, keeping the smallest value
    /// on those points so one of its hops comes for free when the largest
    /// value passes it.
    fn park_ends(&mut self) {
        let (lo, hi, m) = (self.lo, self.hi, self.m);
        let last_block = lo + ((hi - lo - 1) / m) * m;
        let block_above = |pos: usize| lo + ((pos - lo) / m + 1) * m;
        let block_below = |pos: usize| lo + ((pos - lo - 1) / m) * m;

        let i = self.position(hi);
        let j = self.position(lo);
        let s = (i - lo) / m + 1;
        let low_first = j > lo && s < (j - lo - 1) / m;
        if low_first {
            self.swap(j, block_below(j));
        }

        let mut pos = self.position(hi);
        while pos < hi {
            let next = if pos >= last_block { hi } else { block_above(pos) };
            self.swap(pos, next);
            pos = next;
        }

        let mut pos = self.position(lo);
        while pos > lo {
            let next = block_below(pos);
            self.swap(pos, next);
            pos = next;
        }
        self.lo += 1;
        self.hi -= 1;
    }

    fn residual(&self) -> Permutation {
        let lo = self.lo;
        Permutation::new(self.line[lo - 1..self.hi].iter().map(|v| v - lo + 1).collect())
            .expect("window holds a permutation")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    OutOfRange { index: usize, factor: Transposition, n: usize },
    Width { index: usize, factor: Transposition, m: usize },
    Product { expected: Permutation, actual: Permutation },
    Parity { len: usize },
    Bound { len: usize, bound: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OutOfRange { index, factor, n } => {
                write!(f, "factor {index} {factor} does not act on degree {n}")
            }
            Violation::Width { index, factor, m } => {
                write!(f, "factor {index} {factor} has width {} > {m}", factor.width())
            }
            Violation::Product { expected, actual } => {
                write!(f, "product is {actual}, expected {expected}")
            }
            Violation::Parity { len } => write!(f, "length {len} has the wrong parity"),
            Violation::Bound { len, bound } => write!(f, "length {len} exceeds claimed bound {bound}"),
        }
    }
}

/// Checks ranges and widths (reporting the first bad index), then the
/// product, parity, and claimed bound.
pub fn verify(f: &Factorization) -> std::result::Result<(), Violation> {
    let n = f.target.n();
    for (index, factor) in f.factors.iter().enumerate() {
        if factor.j() > n {
            return Err(Violation::OutOfRange { index, factor: *factor, n });
        }
        if factor.width() > f.m {
            return Err(Violation::Width { index, factor: *factor, m: f.m });
        }
    }
    let actual = product(n, &f.factors).expect("ranges checked");
    if actual != f.target {
        return Err(Violation::Product {
            expected: f.target.clone(),
            actual,
        });
    }
    if crate::perm::Parity::of_count(f.len() as u64) != f.target.parity() {
        return Err(Violation::Parity { len: f.len() });
    }
    if let Some(bound) = f.claimed_bound {
        if f.len() > bound {
            return Err(Violation::Bound { len: f.len(), bound });
        }
    }
    Ok(())
}

/// Regime-appropriate construction: bubble sort for `m = 1`, cycle
/// splitting for `m = n - 1`, cycle classes for `5 <= n <= 2m + 1`, BFS for
/// tiny degrees, and the recursion otherwise.
pub fn auto_factor(p: &Permutation, m: usize) -> Result<Factorization> {
    let n = p.n();
    if n == 1 {
        return recursive_factor(p, m);
    }
    check_width(n, m)?;
    if m == 1 {
        Ok(adjacent_sort(p))
    } else if m == n - 1 {
        Ok(unrestricted_factor(p))
    } else if n < 5 {
        bfs_factor(p, m, &DistanceOptions::default())
    } else if n <= 2 * m + 1 {
        factor_by_cycle_classes(p, m)
    } else {
        recursive_factor(p, m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{distance, DistanceTable, BfsOptions};
    use crate::rank::RankCodec;
    use proptest::prelude::*;

    fn p(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn pairs(f: &Factorization) -> Vec<(usize, usize)> {
        f.factors.iter().map(|t| (t.i(), t.j())).collect()
    }

    #[test]
    fn adjacent_examples() {
        let f = adjacent_sort(&p(&[3, 2, 4, 5, 1]));
        assert_eq!(f.len(), 5);
        assert_eq!(verify(&f), Ok(()));
        assert!(adjacent_sort(&Permutation::identity(4)).is_empty());
        assert_eq!(pairs(&adjacent_sort(&p(&[2, 1]))), vec![(1, 2)]);
    }

    #[test]
    fn unrestricted_examples() {
        assert_eq!(unrestricted_factor(&p(&[2, 1, 4, 3])).len(), 2);
        assert_eq!(unrestricted_factor(&Permutation::identity(5)).len(), 0);
        let f = unrestricted_factor(&p(&[2, 3, 4, 5, 1]));
        assert_eq!(f.len(), 4);
        assert_eq!(verify(&f), Ok(()));
    }

    #[test]
    fn unrestricted_factors_split_a_cycle_each_time() {
        let q = p(&[7, 3, 4, 5, 6, 2, 1]);
        let f = unrestricted_factor(&q);
        let mut cur = q.clone();
        for factor in &f.factors {
            assert_eq!(classify_transposition(factor, &cur).unwrap(), CycleEffect::Split);
            cur = factor.to_permutation(7).unwrap().compose(&cur).unwrap();
        }
        assert!(cur.is_identity());
    }

    #[test]
    fn classify_examples() {
        let q = p(&[2, 1, 4, 3]);
        assert_eq!(classify_transposition(&t(1, 2), &q).unwrap(), CycleEffect::Split);
        assert_eq!(classify_transposition(&t(1, 3), &q).unwrap(), CycleEffect::Join);
        let id = Permutation::identity(5);
        for a in 1..5 {
            for b in a + 1..=5 {
                assert_eq!(classify_transposition(&t(a, b), &id).unwrap(), CycleEffect::Join);
            }
        }
        assert!(classify_transposition(&t(1, 6), &id).is_err());
    }

    #[test]
    fn cycle_class_examples() {
        let c = cycle_class(&[1, 9], 5).unwrap();
        assert!(c.spread);
        assert_eq!((c.smallest, c.largest, c.pivot), (1, 9, None));

        let c = cycle_class(&[2, 3, 4, 5, 6], 5).unwrap();
        assert!(!c.spread);
        assert_eq!(c.pivot, Some(2));

        let c = cycle_class(&[3], 1).unwrap();
        assert!(!c.spread);
        assert_eq!(c.pivot, Some(3));
    }

    #[test]
    fn cycle_class_pivot_matches_definition() {
        let cycles: [&[usize]; 4] = [&[1, 4, 8], &[2, 9, 5, 3], &[6, 1], &[1, 3, 5, 7, 9]];
        for cycle in cycles {
            for m in 1..9usize {
                let c = cycle_class(cycle, m).unwrap();
                let pivots: Vec<usize> = cycle
                    .iter()
                    .copied()
                    .filter(|&x| cycle.iter().all(|&y| x.abs_diff(y) <= m))
                    .collect();
                assert_eq!(c.pivot, pivots.iter().copied().min());
                let spread = cycle.iter().all(|&x| cycle.iter().any(|&y| x.abs_diff(y) > m));
                assert_eq!(c.spread, spread);
            }
        }
    }

    #[test]
    fn pair_condition_examples() {
        let (r, s) = pair_condition(&[1, 7], &[3, 9], 5).unwrap().unwrap();
        assert!([1, 7].contains(&r) && [3, 9].contains(&s));
        assert!([1usize, 7].iter().all(|&x| x.abs_diff(s) <= 5));
        assert!([3usize, 9].iter().all(|&x| x.abs_diff(r) <= 5));

        assert_eq!(pair_condition(&[1, 9], &[2, 8], 5).unwrap(), None);
        assert!(pair_condition(&[1, 9], &[9, 2], 5).is_err());
    }

    #[test]
    fn pair_condition_is_exhaustive() {
        let cycles: [&[usize]; 5] = [&[1, 7], &[3, 9], &[2, 8], &[4, 10, 5], &[6, 11]];
        for a in cycles {
            for b in cycles {
                if a.iter().any(|x| b.contains(x)) {
                    continue;
                }
                for m in 1..10usize {
                    let brute = a.iter().any(|&r| {
                        b.iter().all(|&y| y.abs_diff(r) <= m)
                            && b.iter().any(|&s| a.iter().all(|&x| x.abs_diff(s) <= m))
                    });
                    assert_eq!(pair_condition(a, b, m).unwrap().is_some(), brute);
                }
            }
        }
    }

    #[test]
    fn single_cycle_examples() {
        let f = factor_cycle(&[1, 9], 5, 9).unwrap();
        assert_eq!(pairs(&f), vec![(6, 9), (1, 6), (6, 9)]);
        assert_eq!(f.method, Method::ConjugatedCycle);
        assert_eq!(verify(&f), Ok(()));

        let f = factor_cycle(&[2, 3, 4], 2, 5).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.method, Method::PivotedCycle);
        assert_eq!(verify(&f), Ok(()));
        assert_eq!(f.product().unwrap(), Permutation::from_cycles(5, &[[2, 3, 4]]).unwrap());

        let star = pivoted_factors(&[2, 3, 4], 4).unwrap();
        assert_eq!(star, vec![t(4, 3), t(4, 2)]);
        assert_eq!(product(5, &star).unwrap(), Permutation::from_cycles(5, &[[2, 3, 4]]).unwrap());

        assert!(factor_cycle(&[5], 3, 7).unwrap().is_empty());
        assert!(matches!(factor_cycle(&[1, 2], 2, 6), Err(Error::UnsupportedRegime { .. })));
    }

    #[test]
    fn pair_examples() {
        let f = factor_cycle_pair(&[1, 7], &[3, 9], 5, 9).unwrap();
        assert_eq!(f.len(), 4);
        assert!(f.factors.iter().all(|t| t.width() <= 5));
        assert_eq!(f.target, Permutation::from_cycles(9, &[[1, 7], [3, 9]]).unwrap());
        assert_eq!(verify(&f), Ok(()));

        assert!(factor_cycle_pair(&[1, 9], &[2, 8], 5, 9).is_err());
        assert!(factor_cycle_pair(&[2, 3], &[1, 9], 5, 9).is_err());
    }

    #[test]
    fn cycle_class_examples_meet_the_formula() {
        let q = Permutation::parse_cycles("(1 9)(2 8)(3 4 5 6 7)", Some(9)).unwrap();
        let f = factor_by_cycle_classes(&q, 5).unwrap();
        assert_eq!(f.len(), 10);
        assert_eq!(verify(&f), Ok(()));

        let q = Permutation::parse_cycles("(1 7)(3 9)", Some(9)).unwrap();
        let f = factor_by_cycle_classes(&q, 5).unwrap();
        let stats = f.stats.unwrap();
        assert_eq!((stats.r, stats.spread, stats.pairs), (7, 2, 1));
        assert_eq!(f.len(), 4);
        assert_eq!(verify(&f), Ok(()));

        let f = factor_by_cycle_classes(&Permutation::identity(7), 3).unwrap();
        assert!(f.is_empty());
        assert_eq!(f.stats.unwrap().r, 7);
    }

    #[test]
    fn cycle_classes_exhaustive_against_bfs() {
        for n in 5..=8 {
            for m in (n - 1) / 2..n {
                if n > 2 * m + 1 || m == 0 {
                    continue;
                }
                let table = DistanceTable::build(n, m, &BfsOptions::default()).unwrap();
                let codec = RankCodec::new(n).unwrap();
                for k in 0..codec.size() {
                    let q = codec.unrank(k).unwrap();
                    let f = factor_by_cycle_classes(&q, m).unwrap();
                    assert_eq!(verify(&f), Ok(()), "{q:?} m={m}");
                    let s = f.stats.unwrap();
                    assert_eq!(f.len(), n - s.r + 2 * s.spread - 2 * s.pairs);
                    assert!(f.len() >= table.by_rank(k));
                }
            }
        }
    }

    #[test]
    fn recursive_examples() {
        let f = recursive_factor(&Permutation::reverse(7), 2).unwrap();
        assert!(f.len() <= 3 + 7);
        assert_eq!(verify(&f), Ok(()));
        assert!(recursive_factor(&Permutation::identity(9), 3).unwrap().is_empty());
        assert_eq!(recursion_bound(11, 4, RecursionRule::Auto), 15);
    }

    #[test]
    fn recursion_schedules_respect_their_step_counts() {
        // one parking step on every permutation with the window just above
        // the base case, so the residual window is factored exactly
        for (n, m) in [(6, 2), (7, 2), (8, 3), (7, 1)] {
            let codec = RankCodec::new(n).unwrap();
            for k in 0..codec.size() {
                let q = codec.unrank(k).unwrap();
                for rule in [RecursionRule::MoveEnds, RecursionRule::MoveLargest] {
                    let f = recursive_factor_with(&q, m, rule).unwrap();
                    assert_eq!(verify(&f), Ok(()), "{q:?} m={m} {rule:?}");
                }
            }
        }
    }

    #[test]
    fn park_ends_within_step_count() {
        for n in 6..=30usize {
            for m in 1..n {
                if 2 * m >= n - 1 {
                    continue;
                }
                let bound = 2 * (n - 1).div_ceil(m) - 1;
                for i in 1..=n {
                    for j in 1..=n {
                        if i == j {
                            continue;
                        }
                        let mut others = (2..n).collect::<Vec<_>>().into_iter();
                        let mut full = vec![0; n];
                        full[i - 1] = n;
                        full[j - 1] = 1;
                        for slot in full.iter_mut().filter(|v| **v == 0) {
                            *slot = others.next().unwrap();
                        }
                        let mut w = Window { line: full, lo: 1, hi: n, m, swaps: Vec::new() };
                        w.park_ends();
                        assert_eq!(w.line[0], 1);
                        assert_eq!(w.line[n - 1], n);
                        assert!(w.swaps.len() <= bound, "n={n} m={m} i={i} j={j}");
                        assert!(w.swaps.iter().all(|s| s.width() <= m));
                    }
                }
            }
        }
    }

    #[test]
    fn park_largest_within_step_count() {
        for n in 5..=20 {
            for m in 1..=n - 4 {
                for i in 1..=n {
                    let mut line: Vec<usize> = (1..n).collect();
                    line.insert(i - 1, n);
                    let mut w = Window { line, lo: 1, hi: n, m, swaps: Vec::new() };
                    w.park_largest();
                    assert_eq!(w.line[n - 1], n);
                    assert_eq!(w.swaps.len(), (n - i).div_ceil(m));
                }
            }
        }
    }

    #[test]
    fn verify_reports_tampering() {
        let q = p(&[3, 2, 4, 5, 1]);
        let mut f = adjacent_sort(&q);
        f.factors.remove(2);
        assert!(matches!(verify(&f), Err(Violation::Product { .. })));

        let mut f = adjacent_sort(&q);
        f.factors.insert(1, t(1, 3));
        assert_eq!(
            verify(&f),
            Err(Violation::Width { index: 1, factor: t(1, 3), m: 1 })
        );

        let mut f = adjacent_sort(&q);
        f.claimed_bound = Some(3);
        assert_eq!(verify(&f), Err(Violation::Bound { len: 5, bound: 3 }));
    }

    #[test]
    fn text_line() {
        let f = adjacent_sort(&p(&[2, 1, 3]));
        assert_eq!(f.to_string(), "adjacent 1 1 : (1,2)");
        let f = adjacent_sort(&Permutation::identity(3));
        assert_eq!(f.to_string(), "adjacent 0 1 :");
    }

    #[test]
    fn auto_picks_regimes() {
        assert_eq!(auto_factor(&p(&[2, 1, 3]), 1).unwrap().method, Method::Adjacent);
        assert_eq!(auto_factor(&p(&[2, 3, 1]), 2).unwrap().method, Method::Unrestricted);
        assert_eq!(auto_factor(&p(&[2, 3, 4, 1]), 2).unwrap().method, Method::Bfs);
        assert_eq!(auto_factor(&Permutation::reverse(9), 5).unwrap().method, Method::CycleClasses);
        assert_eq!(auto_factor(&Permutation::reverse(9), 3).unwrap().method, Method::MoveEnds);
    }

    #[test]
    fn bfs_factor_is_optimal() {
        let q = p(&[6, 7, 4, 5, 2, 3, 1]);
        let f = bfs_factor(&q, 2, &DistanceOptions::default()).unwrap();
        assert_eq!(f.len(), 10);
        assert_eq!(verify(&f), Ok(()));
    }

    fn arb_perm(max_n: usize) -> impl Strategy<Value = Permutation> {
        (1..=max_n).prop_flat_map(|n| {
            Just((1..=n).collect::<Vec<_>>())
                .prop_shuffle()
                .prop_map(|v| Permutation::new(v).unwrap())
        })
    }

    proptest! {
        #[test]
        fn every_construction_verifies(q in arb_perm(12), seed in 0usize..100) {
            let n = q.n();
            prop_assert_eq!(verify(&adjacent_sort(&q)), Ok(()));
            prop_assert_eq!(verify(&unrestricted_factor(&q)), Ok(()));
            if n >= 2 {
                let m = 1 + seed % (n - 1);
                let f = recursive_factor(&q, m).unwrap();
                prop_assert_eq!(verify(&f), Ok(()));
                let f = auto_factor(&q, m).unwrap();
                prop_assert_eq!(verify(&f), Ok(()));
                if n <= 8 {
                    prop_assert!(f.len() >= distance(&q, m).unwrap());
                }
            }
        }

        #[test]
        fn serde_round_trip(q in arb_perm(9)) {
            let f = unrestricted_factor(&q);
            let text = serde_json::to_string(&f).unwrap();
            let back: Factorization = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(back, f);
        }
    }
}
