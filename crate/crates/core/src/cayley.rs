//! Exact distances and diameters on the Cayley graph of `S_n` generated by
//! the transpositions of width at most `m`.
//!
//! Full searches are levelized BFS from the identity over ranks, with the
//! visited set and both frontiers held as `n!`-bit arrays. Since the graph
//! is vertex transitive, the eccentricity of the identity is the diameter.
//! Steps are position swaps (right multiplication), so a BFS path from the
//! identity to `σ` spells a factorization of `σ` left to right.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{Permutation, Transposition};
use crate::rank::{factorial, LehmerState, RankCodec, CODEC_VERSION};

pub const DEFAULT_MEMORY_CAP: u64 = 2 << 30;

/// Words of frontier handed to one rayon task.
const CHUNK_WORDS: usize = 512;

/// All transpositions `(i, j)` with `j - i <= m`, ordered by width then `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    n: usize,
    m: usize,
    members: Vec<Transposition>,
}

impl GeneratorSet {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        check_width(n, m)?;
        let members = (1..=m)
            .flat_map(|w| (1..=n - w).map(move |i| Transposition::new(i, i + w).unwrap()))
            .collect();
        Ok(GeneratorSet { n, m, members })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn members(&self) -> &[Transposition] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, t: &Transposition) -> bool {
        t.j() <= self.n && t.width() <= self.m
    }

    fn zero_based_pairs(&self) -> Vec<(usize, usize)> {
        self.members.iter().map(|t| (t.i() - 1, t.j() - 1)).collect()
    }
}

pub(crate) fn check_width(n: usize, m: usize) -> Result<()> {
    if m == 0 || n < 2 || m > n - 1 {
        return Err(Error::InvalidWidth { n, m });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfsOptions {
    pub collect_farthest: bool,
    /// Farthest sets larger than this are counted but not listed.
    pub farthest_limit: Option<usize>,
    pub memory_cap: u64,
    /// Worker threads; 0 uses the ambient rayon pool.
    pub threads: usize,
}

impl Default for BfsOptions {
    fn default() -> Self {
        BfsOptions {
            collect_farthest: true,
            farthest_limit: None,
            memory_cap: DEFAULT_MEMORY_CAP,
            threads: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiameterReport {
    pub n: usize,
    pub m: usize,
    pub delta: usize,
    /// `level_counts[k]` is the number of permutations at distance `k`.
    pub level_counts: Vec<u64>,
    pub farthest_count: u64,
    /// Sorted by one-line notation; `None` if not collected or elided.
    pub farthest: Option<Vec<Permutation>>,
    pub farthest_elided: bool,
    pub codec_version: String,
    pub wall_time_ms: u64,
}

/// Bytes needed for the three `n!`-bit arrays of a full search.
pub fn required_bytes(n: usize) -> Option<u64> {
    let states = factorial(n)?;
    Some(3 * states.div_ceil(64) * 8)
}

fn check_memory(required: u64, cap: u64) -> Result<()> {
    if required > cap {
        return Err(Error::MemoryCap { required, cap });
    }
    Ok(())
}

fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if threads == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Precondition(format!("cannot build thread pool: {e}")))?;
    Ok(pool.install(f))
}

struct Bits(Vec<AtomicU64>);

impl Bits {
    fn new(bits: u64) -> Self {
        Bits((0..bits.div_ceil(64)).map(|_| AtomicU64::new(0)).collect())
    }

    #[inline]
    fn get(&self, k: u64) -> bool {
        self.0[(k >> 6) as usize].load(Ordering::Relaxed) & (1 << (k & 63)) != 0
    }

    #[inline]
    fn set(&self, k: u64) {
        let word = &self.0[(k >> 6) as usize];
        let bit = 1 << (k & 63);
        if word.load(Ordering::Relaxed) & bit == 0 {
            word.fetch_or(bit, Ordering::Relaxed);
        }
    }

    fn clear(&mut self) {
        self.0.par_iter_mut().for_each(|w| *w.get_mut() = 0);
    }

    fn ones(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().enumerate().flat_map(|(w, word)| {
            let mut bits = word.load(Ordering::Relaxed);
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as u64;
                bits &= bits - 1;
                Some(w as u64 * 64 + b)
            })
        })
    }

    fn snapshot(&self) -> Vec<u64> {
        self.0.iter().map(|w| w.load(Ordering::Relaxed)).collect()
    }
}

/// Runs BFS from the identity one level at a time. `on_level` sees each
/// non-empty level (starting with level 0) and may stop the search by
/// returning `false`. Returns the level sizes seen.
fn levelized_bfs(
    n: usize,
    m: usize,
    mut on_level: impl FnMut(usize, &Bits) -> bool,
) -> Result<Vec<u64>> {
    let codec = RankCodec::new(n)?;
    let gens = GeneratorSet::new(n, m)?.zero_based_pairs();
    let size = codec.size();

    let visited = Bits::new(size);
    let mut frontier = Bits::new(size);
    let mut next = Bits::new(size);
    visited.set(0);
    frontier.set(0);

    let mut counts = vec![1u64];
    if !on_level(0, &frontier) {
        return Ok(counts);
    }
    loop {
        frontier.0.par_chunks(CHUNK_WORDS).enumerate().for_each(|(c, chunk)| {
            let mut state = LehmerState::new(n);
            for (w, word) in chunk.iter().enumerate() {
                let mut bits = word.load(Ordering::Relaxed);
                while bits != 0 {
                    let b = bits.trailing_zeros() as u64;
                    bits &= bits - 1;
                    let rank = ((c * CHUNK_WORDS + w) as u64) * 64 + b;
                    state.load(rank);
                    for &(i, j) in &gens {
                        let nb = state.swapped_rank(i, j);
                        if !visited.get(nb) {
                            next.set(nb);
                        }
                    }
                }
            }
        });

        let added: u64 = next
            .0
            .par_iter()
            .zip(visited.0.par_iter())
            .map(|(nx, vis)| {
                let bits = nx.load(Ordering::Relaxed);
                vis.fetch_or(bits, Ordering::Relaxed);
                bits.count_ones() as u64
            })
            .sum();
        if added == 0 {
            return Ok(counts);
        }
        counts.push(added);
        std::mem::swap(&mut frontier, &mut next);
        next.clear();
        if !on_level(counts.len() - 1, &frontier) {
            return Ok(counts);
        }
    }
}

/// Exact `δ(n, m)` with level histogram and (optionally) the farthest set.
pub fn bfs_diameter(n: usize, m: usize, opts: &BfsOptions) -> Result<DiameterReport> {
    check_width(n, m)?;
    let required = required_bytes(n).ok_or(Error::DegreeTooLarge { n, max: 20 })?;
    check_memory(required, opts.memory_cap)?;
    let start = Instant::now();
    let codec = RankCodec::new(n)?;

    let collect = opts.collect_farthest;
    let limit = opts.farthest_limit;
    let (counts, last) = with_threads(opts.threads, || {
        let mut last: Option<Vec<u64>> = None;
        let counts = levelized_bfs(n, m, |_, frontier| {
            if collect {
                last = Some(frontier.snapshot());
            }
            true
        })?;
        Ok::<_, Error>((counts, last))
    })??;

    let delta = counts.len() - 1;
    let farthest_count = counts[delta];
    let elided = limit.is_some_and(|l| farthest_count > l as u64);
    let farthest = match last {
        Some(words) if !elided => Some(
            Bits(words.into_iter().map(AtomicU64::new).collect())
                .ones()
                .map(|k| codec.unrank(k))
                .collect::<Result<Vec<_>>>()?,
        ),
        _ => None,
    };
    Ok(DiameterReport {
        n,
        m,
        delta,
        level_counts: counts,
        farthest_count,
        farthest,
        farthest_elided: collect && elided,
        codec_version: CODEC_VERSION.to_string(),
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

pub fn distance_histogram(n: usize, m: usize, opts: &BfsOptions) -> Result<Vec<u64>> {
    let opts = BfsOptions {
        collect_farthest: false,
        ..opts.clone()
    };
    Ok(bfs_diameter(n, m, &opts)?.level_counts)
}

/// Distance from the identity of every permutation of degree `n`, indexed
/// by rank.
#[derive(Debug, Clone)]
pub struct DistanceTable {
    codec: RankCodec,
    m: usize,
    dist: Vec<u8>,
}

impl DistanceTable {
    pub fn build(n: usize, m: usize, opts: &BfsOptions) -> Result<Self> {
        check_width(n, m)?;
        let codec = RankCodec::new(n)?;
        let required = required_bytes(n).unwrap() + codec.size();
        check_memory(required, opts.memory_cap)?;
        let mut dist = vec![u8::MAX; codec.size() as usize];
        with_threads(opts.threads, || {
            levelized_bfs(n, m, |level, frontier| {
                for k in frontier.ones() {
                    dist[k as usize] = level as u8;
                }
                true
            })
        })??;
        Ok(DistanceTable { codec, m, dist })
    }

    pub fn n(&self) -> usize {
        self.codec.n()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, p: &Permutation) -> Result<usize> {
        Ok(self.dist[self.codec.rank(p)? as usize] as usize)
    }

    pub fn by_rank(&self, rank: u64) -> usize {
        self.dist[rank as usize] as usize
    }

    pub fn codec(&self) -> &RankCodec {
        &self.codec
    }

    pub fn diameter(&self) -> usize {
        self.dist.iter().copied().max().unwrap_or(0) as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceOptions {
    /// Combined size of both search trees before switching to a full
    /// bit-array search.
    pub frontier_limit: usize,
    pub memory_cap: u64,
    pub threads: usize,
}

impl Default for DistanceOptions {
    fn default() -> Self {
        DistanceOptions {
            frontier_limit: 4_000_000,
            memory_cap: DEFAULT_MEMORY_CAP,
            threads: 0,
        }
    }
}

/// Exact `d(1, σ, m)`.
pub fn distance(p: &Permutation, m: usize) -> Result<usize> {
    distance_with(p, m, &DistanceOptions::default())
}

pub fn distance_with(p: &Permutation, m: usize, opts: &DistanceOptions) -> Result<usize> {
    Ok(shortest_path(p, m, opts, false)?.len)
}

/// A minimum-length word `t1 t2 ... tk` over the width-`m` generators with
/// `σ = t1 ∘ t2 ∘ ... ∘ tk`.
pub fn shortest_word(p: &Permutation, m: usize, opts: &DistanceOptions) -> Result<Vec<Transposition>> {
    Ok(shortest_path(p, m, opts, true)?.word.expect("word requested"))
}

struct PathResult {
    len: usize,
    word: Option<Vec<Transposition>>,
}

#[derive(Clone, Copy)]
struct Node {
    parent: u64,
    generator: u16,
    depth: u16,
}

const ROOT: u16 = u16::MAX;

struct Tree {
    nodes: HashMap<u64, Node>,
    frontier: Vec<u64>,
    depth: usize,
}

impl Tree {
    fn rooted_at(rank: u64) -> Self {
        let mut nodes = HashMap::new();
        nodes.insert(
            rank,
            Node {
                parent: rank,
                generator: ROOT,
                depth: 0,
            },
        );
        Tree {
            nodes,
            frontier: vec![rank],
            depth: 0,
        }
    }

    /// Generators on the way from the root down to `rank`.
    fn word_to(&self, mut rank: u64) -> Vec<u16> {
        let mut word = Vec::new();
        loop {
            let node = self.nodes[&rank];
            if node.generator == ROOT {
                break;
            }
            word.push(node.generator);
            rank = node.parent;
        }
        word.reverse();
        word
    }
}

fn shortest_path(p: &Permutation, m: usize, opts: &DistanceOptions, want_word: bool) -> Result<PathResult> {
    let n = p.n();
    let gens = GeneratorSet::new(n, m)?;
    let pairs = gens.zero_based_pairs();
    let codec = RankCodec::new(n)?;
    let target = codec.rank(p)?;
    if target == 0 {
        return Ok(PathResult {
            len: 0,
            word: want_word.then(Vec::new),
        });
    }

    let mut fwd = Tree::rooted_at(0);
    let mut bwd = Tree::rooted_at(target);
    let mut state = LehmerState::new(n);

    loop {
        if fwd.nodes.len() + bwd.nodes.len() > opts.frontier_limit {
            return full_search_path(p, &gens, &codec, target, opts, want_word);
        }
        let (grow, other) = if fwd.frontier.len() <= bwd.frontier.len() {
            (&mut fwd, &bwd)
        } else {
            (&mut bwd, &fwd)
        };
        let mut next = Vec::new();
        let mut meeting: Option<u64> = None;
        for &rank in &grow.frontier {
            state.load(rank);
            for (g, &(i, j)) in pairs.iter().enumerate() {
                let nb = state.swapped_rank(i, j);
                if grow.nodes.contains_key(&nb) {
                    continue;
                }
                grow.nodes.insert(
                    nb,
                    Node {
                        parent: rank,
                        generator: g as u16,
                        depth: (grow.depth + 1) as u16,
                    },
                );
                if meeting.is_none() && other.nodes.contains_key(&nb) {
                    meeting = Some(nb);
                }
                next.push(nb);
            }
            if meeting.is_some() {
                break;
            }
        }
        grow.depth += 1;
        grow.frontier = next;

        if let Some(meet) = meeting {
            let len = fwd.nodes[&meet].depth as usize + bwd.nodes[&meet].depth as usize;
            let word = want_word.then(|| {
                let mut word = fwd.word_to(meet);
                let mut back = bwd.word_to(meet);
                back.reverse();
                word.extend(back);
                word.into_iter().map(|g| gens.members()[g as usize]).collect::<Vec<_>>()
            });
            return Ok(PathResult { len, word });
        }
        if grow_exhausted(&fwd, &bwd) {
            unreachable!("the width-m transpositions generate S_n");
        }
    }
}

fn grow_exhausted(fwd: &Tree, bwd: &Tree) -> bool {
    fwd.frontier.is_empty() || bwd.frontier.is_empty()
}

/// Bit-array BFS from the identity that stops at the target's level. When a
/// word is needed every level is kept so the path can be walked back.
fn full_search_path(
    p: &Permutation,
    gens: &GeneratorSet,
    codec: &RankCodec,
    target: u64,
    opts: &DistanceOptions,
    want_word: bool,
) -> Result<PathResult> {
    let n = p.n();
    let base = required_bytes(n).ok_or(Error::DegreeTooLarge { n, max: 20 })?;
    check_memory(base, opts.memory_cap)?;
    let level_bytes = base / 3;
    let cap = opts.memory_cap;

    let mut levels: Vec<Vec<u64>> = Vec::new();
    let mut found: Option<usize> = None;
    let mut over_cap: Option<u64> = None;
    with_threads(opts.threads, || {
        levelized_bfs(n, gens.m(), |level, frontier| {
            if want_word {
                let need = base + (levels.len() as u64 + 1) * level_bytes;
                if need > cap {
                    over_cap = Some(need);
                    return false;
                }
                levels.push(frontier.snapshot());
            }
            if frontier.get(target) {
                found = Some(level);
                return false;
            }
            true
        })
    })??;
    if let Some(required) = over_cap {
        return Err(Error::MemoryCap { required, cap });
    }
    let len = found.expect("BFS reaches every permutation");
    if !want_word {
        return Ok(PathResult { len, word: None });
    }

    let pairs = gens.zero_based_pairs();
    let in_level = |level: usize, k: u64| levels[level][(k >> 6) as usize] & (1 << (k & 63)) != 0;
    let mut state = LehmerState::new(n);
    let mut cur = target;
    let mut walk = Vec::with_capacity(len);
    for level in (0..len).rev() {
        state.load(cur);
        let (g, nb) = pairs
            .iter()
            .enumerate()
            .map(|(g, &(i, j))| (g, state.swapped_rank(i, j)))
            .find(|&(_, nb)| in_level(level, nb))
            .expect("every vertex at level k+1 has a neighbour at level k");
        walk.push(gens.members()[g]);
        cur = nb;
    }
    walk.reverse();
    let _ = codec;
    Ok(PathResult { len, word: Some(walk) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn product(n: usize, word: &[Transposition]) -> Permutation {
        word.iter().fold(Permutation::identity(n), |acc, t| {
            acc.compose(&t.to_permutation(n).unwrap()).unwrap()
        })
    }

    #[test]
    fn generator_set_sizes() {
        for n in 2..=9 {
            for m in 1..n {
                let g = GeneratorSet::new(n, m).unwrap();
                let expected: usize = (1..=m).map(|w| n - w).sum();
                assert_eq!(g.len(), expected);
                for t in g.members() {
                    let tp = t.to_permutation(n).unwrap();
                    assert!(tp.compose(&tp).unwrap().is_identity());
                }
            }
            assert_eq!(GeneratorSet::new(n, n - 1).unwrap().len(), n * (n - 1) / 2);
        }
        let g = GeneratorSet::new(4, 2).unwrap();
        let listed: Vec<(usize, usize)> = g.members().iter().map(|t| (t.i(), t.j())).collect();
        assert_eq!(listed, vec![(1, 2), (2, 3), (3, 4), (1, 3), (2, 4)]);
    }

    #[test]
    fn invalid_widths() {
        assert!(GeneratorSet::new(5, 0).is_err());
        assert!(GeneratorSet::new(5, 5).is_err());
        assert!(GeneratorSet::new(1, 1).is_err());
        assert!(bfs_diameter(4, 4, &BfsOptions::default()).is_err());
    }

    #[test]
    fn histogram_s3_adjacent() {
        let counts = distance_histogram(3, 1, &BfsOptions::default()).unwrap();
        assert_eq!(counts, vec![1, 2, 2, 1]);
    }

    #[test]
    fn histogram_basic_invariants() {
        for n in 2..=7 {
            for m in 1..n {
                let counts = distance_histogram(n, m, &BfsOptions::default()).unwrap();
                assert_eq!(counts.iter().sum::<u64>(), factorial(n).unwrap());
                assert_eq!(counts[0], 1);
                assert_eq!(counts[1], GeneratorSet::new(n, m).unwrap().len() as u64);
                if m == 1 {
                    assert_eq!(counts.len() - 1, n * (n - 1) / 2);
                }
            }
        }
    }

    #[test]
    fn small_diameters() {
        let opts = BfsOptions::default();
        let r = bfs_diameter(6, 2, &opts).unwrap();
        assert_eq!(r.delta, 7);
        assert_eq!(r.farthest_count, r.level_counts[7]);
        assert_eq!(r.farthest.as_ref().unwrap().len() as u64, r.farthest_count);
        let r = bfs_diameter(8, 3, &opts).unwrap();
        assert_eq!(r.delta, 10);
        assert_eq!(r.codec_version, CODEC_VERSION);
    }

    #[test]
    fn farthest_list_is_sorted_and_elidable() {
        let r = bfs_diameter(5, 2, &BfsOptions::default()).unwrap();
        let far = r.farthest.unwrap();
        assert!(far.windows(2).all(|w| w[0].one_line() < w[1].one_line()));

        let opts = BfsOptions {
            farthest_limit: Some(3),
            ..BfsOptions::default()
        };
        let r = bfs_diameter(5, 2, &opts).unwrap();
        assert!(r.farthest.is_none());
        assert!(r.farthest_elided);
        assert_eq!(r.farthest_count, 12);
    }

    #[test]
    fn memory_cap_refusal() {
        let opts = BfsOptions {
            memory_cap: 1024,
            ..BfsOptions::default()
        };
        match bfs_diameter(9, 3, &opts) {
            Err(Error::MemoryCap { required, cap }) => {
                assert_eq!(cap, 1024);
                assert_eq!(Some(required), required_bytes(9));
            }
            other => panic!("unexpected {other:?}"),
        }
        // 13! bits three times over is past the default cap
        assert!(required_bytes(13).unwrap() > DEFAULT_MEMORY_CAP);
        assert!(required_bytes(12).unwrap() < DEFAULT_MEMORY_CAP);
    }

    #[test]
    fn thread_count_does_not_change_the_report() {
        let a = bfs_diameter(7, 2, &BfsOptions { threads: 1, ..BfsOptions::default() }).unwrap();
        let b = bfs_diameter(7, 2, &BfsOptions { threads: 3, ..BfsOptions::default() }).unwrap();
        assert_eq!(a.level_counts, b.level_counts);
        assert_eq!(a.farthest, b.farthest);
    }

    #[test]
    fn distance_examples() {
        assert_eq!(distance(&p(&[6, 7, 4, 5, 2, 3, 1]), 2).unwrap(), 10);
        assert_eq!(distance(&Permutation::reverse(8), 2).unwrap(), 14);
        for m in 1..6 {
            assert_eq!(distance(&Permutation::identity(6), m).unwrap(), 0);
        }
        assert_eq!(distance(&p(&[3, 2, 4, 5, 1]), 1).unwrap(), 5);
    }

    #[test]
    fn distance_matches_table_exhaustively() {
        for (n, m) in [(5, 1), (5, 2), (6, 2), (6, 3), (6, 5)] {
            let table = DistanceTable::build(n, m, &BfsOptions::default()).unwrap();
            let codec = RankCodec::new(n).unwrap();
            for k in 0..codec.size() {
                let q = codec.unrank(k).unwrap();
                assert_eq!(distance(&q, m).unwrap(), table.by_rank(k), "{q:?} m={m}");
            }
        }
    }

    #[test]
    fn shortest_word_spells_the_permutation() {
        let opts = DistanceOptions::default();
        for (q, m) in [
            (p(&[6, 7, 4, 5, 2, 3, 1]), 2),
            (p(&[6, 7, 4, 5, 3, 1, 2]), 3),
            (Permutation::reverse(7), 1),
            (p(&[2, 1]), 1),
        ] {
            let word = shortest_word(&q, m, &opts).unwrap();
            assert_eq!(word.len(), distance(&q, m).unwrap());
            assert!(word.iter().all(|t| t.width() <= m));
            assert_eq!(product(q.n(), &word), q);
        }
    }

    #[test]
    fn fallback_search_agrees_with_bidirectional() {
        let tiny = DistanceOptions {
            frontier_limit: 8,
            ..DistanceOptions::default()
        };
        for (q, m) in [
            (p(&[6, 7, 4, 5, 2, 3, 1]), 2),
            (Permutation::reverse(6), 3),
            (p(&[2, 1, 3]), 2),
        ] {
            let word = shortest_word(&q, m, &tiny).unwrap();
            assert_eq!(word.len(), distance(&q, m).unwrap());
            assert_eq!(product(q.n(), &word), q);
            assert_eq!(distance_with(&q, m, &tiny).unwrap(), word.len());
        }
    }
}
