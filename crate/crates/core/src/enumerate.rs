//! Set partitions, graph compositions and the brute-force counting oracles.
//!
//! Partitions are stored as restricted growth strings over an ordered ground
//! set: position `i` holds the block index of the `i`-th smallest label, the
//! first entry is 0, and every entry exceeds the running maximum by at most
//! one. Blocks are therefore numbered by their smallest element, and each
//! partition has exactly one encoding.
//!
//! Every stream here is in lexicographic restricted-growth order.

use std::fmt;

use rayon::prelude::*;

use crate::graph::{LabelledGraph, VertexSet, MAX_VERTICES};
use crate::{BigNat, Error, Result};

/// Default upper bound on `n` for exhaustive enumeration. `B(12) = 4_213_597`.
pub const DEFAULT_BRUTE_CAP: usize = 12;

/// A set partition of a ground set of labels.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    ground: VertexSet,
    rgs: Vec<u8>,
}

impl Partition {
    /// The unique partition of the empty set.
    pub fn empty() -> Self {
        Partition {
            ground: VertexSet::EMPTY,
            rgs: Vec::new(),
        }
    }

    /// Partition of `1..=n` from its restricted growth string.
    pub fn from_rgs(n: usize, rgs: &[u8]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::params(format!(
                "{n} elements exceeds the limit of {MAX_VERTICES}"
            )));
        }
        Self::from_rgs_on(VertexSet::full(n), rgs)
    }

    /// Partition of `ground` from a restricted growth string indexed by the
    /// ascending labels of `ground`.
    pub fn from_rgs_on(ground: VertexSet, rgs: &[u8]) -> Result<Self> {
        if rgs.len() != ground.len() {
            return Err(Error::InvalidInput(format!(
                "growth string of length {} for a ground set of {} labels",
                rgs.len(),
                ground.len()
            )));
        }
        let mut next = 0u8;
        for (i, &r) in rgs.iter().enumerate() {
            if r > next {
                return Err(Error::InvalidInput(format!(
                    "not a restricted growth string: entry {i} is {r}, at most {next} allowed"
                )));
            }
            if r == next {
                next += 1;
            }
        }
        Ok(Partition {
            ground,
            rgs: rgs.to_vec(),
        })
    }

    /// Partition whose blocks are the given sets; the ground set is their union.
    pub fn from_blocks<I: IntoIterator<Item = VertexSet>>(blocks: I) -> Result<Self> {
        let mut ground = VertexSet::EMPTY;
        let mut list = Vec::new();
        for b in blocks {
            if b.is_empty() {
                return Err(Error::InvalidInput("empty block".into()));
            }
            if !(ground & b).is_empty() {
                return Err(Error::InvalidInput(format!(
                    "block {b} overlaps another block"
                )));
            }
            ground |= b;
            list.push(b);
        }
        list.sort_by_key(|b| b.min_label());
        let rgs = ground
            .iter()
            .map(|v| list.iter().position(|b| b.contains(v)).unwrap() as u8)
            .collect();
        Ok(Partition { ground, rgs })
    }

    /// Parses the block-line format, e.g. `{1,3}|{2}`. `{}` (or an empty
    /// string) is the empty partition.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "{}" {
            return Ok(Self::empty());
        }
        let blocks =
            text.split('|')
                .map(|part| {
                    let inner = part
                        .trim()
                        .strip_prefix('{')
                        .and_then(|s| s.strip_suffix('}'))
                        .ok_or_else(|| {
                            Error::MalformedInput(format!("block `{part}` is not braced"))
                        })?;
                    let mut set = VertexSet::EMPTY;
                    for tok in inner.split(',') {
                        let v: usize = tok.trim().parse().map_err(|e| {
                            Error::MalformedInput(format!("bad label `{tok}`: {e}"))
                        })?;
                        if !(1..=MAX_VERTICES).contains(&v) || set.contains(v) {
                            return Err(Error::MalformedInput(format!(
                                "label {v} is out of range or repeated"
                            )));
                        }
                        set.insert(v);
                    }
                    Ok(set)
                })
                .collect::<Result<Vec<_>>>()?;
        Self::from_blocks(blocks).map_err(|e| Error::MalformedInput(e.to_string()))
    }

    pub fn ground(&self) -> VertexSet {
        self.ground
    }

    pub fn rgs(&self) -> &[u8] {
        &self.rgs
    }

    /// Number of elements partitioned.
    pub fn len(&self) -> usize {
        self.rgs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rgs.is_empty()
    }

    pub fn block_count(&self) -> usize {
        self.rgs.iter().max().map_or(0, |&m| m as usize + 1)
    }

    /// Blocks ordered by their smallest element.
    pub fn blocks(&self) -> Vec<VertexSet> {
        let mut blocks = vec![VertexSet::EMPTY; self.block_count()];
        for (v, &r) in self.ground.iter().zip(&self.rgs) {
            blocks[r as usize].insert(v);
        }
        blocks
    }

    /// The block containing `label`.
    pub fn block_of(&self, label: usize) -> Option<VertexSet> {
        let idx = self.ground.iter().position(|v| v == label)?;
        let r = self.rgs[idx];
        Some(
            self.ground
                .iter()
                .zip(&self.rgs)
                .filter(|&(_, &x)| x == r)
                .map(|(v, _)| v)
                .collect(),
        )
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("{}");
        }
        for (i, b) in self.blocks().iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition({self})")
    }
}

/// A partition of a graph's vertex set whose blocks all induce connected subgraphs.
#[derive(Clone, PartialEq, Eq)]
pub struct Composition<'g> {
    graph: &'g LabelledGraph,
    partition: Partition,
}

impl<'g> Composition<'g> {
    pub fn new(graph: &'g LabelledGraph, partition: Partition) -> Result<Self> {
        if !is_composition(graph, &partition)? {
            return Err(Error::InvalidInput(format!(
                "{partition} has a disconnected block"
            )));
        }
        Ok(Composition { graph, partition })
    }

    pub fn graph(&self) -> &'g LabelledGraph {
        self.graph
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn into_partition(self) -> Partition {
        self.partition
    }
}

impl fmt::Display for Composition<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.partition, f)
    }
}

impl fmt::Debug for Composition<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Composition({})", self.partition)
    }
}

/// Whether every block of `p` is connected in `g`. `p` must partition exactly
/// the vertices of `g`.
pub fn is_composition(g: &LabelledGraph, p: &Partition) -> Result<bool> {
    if p.ground() != g.vertices() {
        return Err(Error::params(format!(
            "partition of {} does not match the vertex set {}",
            p.ground(),
            g.vertices()
        )));
    }
    Ok(p.blocks().into_iter().all(|b| g.spans_connected(b)))
}

/// Smallest per-block maximum label; `None` for the empty partition.
pub fn minimax_vertex(p: &Partition) -> Option<usize> {
    minimax_of(&p.blocks())
}

/// Smallest per-block maximum taken over blocks with at most `j` elements;
/// `None` when no block is that small (statistic value 0).
pub fn minimax_restricted(p: &Partition, j: usize) -> Result<Option<usize>> {
    if j == 0 {
        return Err(Error::params("block size bound j must be at least 1"));
    }
    Ok(minimax_restricted_of(&p.blocks(), j))
}

/// Largest per-block minimum label; `None` for the empty partition.
pub fn maximin_vertex(p: &Partition) -> Option<usize> {
    maximin_of(&p.blocks())
}

#[inline]
fn maximin_of(blocks: &[VertexSet]) -> Option<usize> {
    blocks.iter().filter_map(|b| b.min_label()).max()
}

#[inline]
fn minimax_of(blocks: &[VertexSet]) -> Option<usize> {
    blocks.iter().filter_map(|b| b.max_label()).min()
}

#[inline]
fn minimax_restricted_of(blocks: &[VertexSet], j: usize) -> Option<usize> {
    blocks
        .iter()
        .filter(|b| b.len() <= j)
        .filter_map(|b| b.max_label())
        .min()
}

/// Lexicographic stream of the restricted growth strings over a ground set.
#[derive(Clone, Debug)]
pub struct SetPartitions {
    ground: VertexSet,
    rgs: Vec<u8>,
    /// `prefix_max[i] = max(rgs[..=i])`.
    prefix_max: Vec<u8>,
    done: bool,
}

impl SetPartitions {
    pub fn over(ground: VertexSet) -> Self {
        let n = ground.len();
        SetPartitions {
            ground,
            rgs: vec![0; n],
            prefix_max: vec![0; n],
            done: false,
        }
    }

    fn advance(&mut self) {
        let n = self.rgs.len();
        for i in (1..n).rev() {
            if self.rgs[i] <= self.prefix_max[i - 1] {
                self.rgs[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.rgs[i]);
                for k in i + 1..n {
                    self.rgs[k] = 0;
                    self.prefix_max[k] = self.prefix_max[i];
                }
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for SetPartitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let item = Partition {
            ground: self.ground,
            rgs: self.rgs.clone(),
        };
        self.advance();
        Some(item)
    }
}

/// Compositions of a graph, in the order of [`SetPartitions`] over its vertices.
#[derive(Clone, Debug)]
pub struct Compositions<'g> {
    graph: &'g LabelledGraph,
    inner: SetPartitions,
}

impl<'g> Iterator for Compositions<'g> {
    type Item = Composition<'g>;

    fn next(&mut self) -> Option<Composition<'g>> {
        let graph = self.graph;
        self.inner
            .by_ref()
            .find(|p| p.blocks().into_iter().all(|b| graph.spans_connected(b)))
            .map(|partition| Composition { graph, partition })
    }
}

/// Exhaustive enumeration settings: a size cap and a worker count.
///
/// With more than one worker the search space is split by growth-string
/// prefix and the partial results are summed, so totals do not depend on the
/// worker count. `workers == 0` uses every available core.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Brute {
    pub cap: usize,
    pub workers: usize,
}

impl Default for Brute {
    fn default() -> Self {
        Brute {
            cap: DEFAULT_BRUTE_CAP,
            workers: 1,
        }
    }
}

/// Length of growth-string prefixes handed to parallel workers (`B(6) = 203` tasks).
const SPLIT_DEPTH: usize = 6;

impl Brute {
    pub fn new(cap: usize) -> Self {
        Brute {
            cap: cap.min(MAX_VERTICES),
            ..Default::default()
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.cap {
            Err(Error::ResourceLimit { n, cap: self.cap })
        } else {
            Ok(())
        }
    }

    /// All partitions of `1..=n`.
    pub fn set_partitions(&self, n: usize) -> Result<SetPartitions> {
        self.check(n)?;
        Ok(SetPartitions::over(VertexSet::full(n)))
    }

    pub fn compositions<'g>(&self, g: &'g LabelledGraph) -> Result<Compositions<'g>> {
        self.check(g.vertex_count())?;
        Ok(Compositions {
            graph: g,
            inner: SetPartitions::over(g.vertices()),
        })
    }

    /// The composition number of `g`, by exhaustive enumeration.
    pub fn composition_count(&self, g: &LabelledGraph) -> Result<BigNat> {
        self.check(g.vertex_count())?;
        let count = self.fold(
            g.vertices(),
            || 0u64,
            |acc, blocks| {
                if blocks.iter().all(|&b| g.spans_connected(b)) {
                    *acc += 1;
                }
            },
            |a, b| a + b,
        );
        Ok(count.into())
    }

    /// `hist[m]` = number of partitions of `1..=n` with minimax `m`; `hist[0]`
    /// counts the empty partition only.
    pub fn minimax_histogram(&self, n: usize) -> Result<Vec<BigNat>> {
        self.check(n)?;
        Ok(self.histogram(n, minimax_of))
    }

    /// `hist[m]` = number of partitions of `1..=n` with maximin `m`.
    pub fn maximin_histogram(&self, n: usize) -> Result<Vec<BigNat>> {
        self.check(n)?;
        Ok(self.histogram(n, maximin_of))
    }

    /// `hist[m]` = number of partitions of `1..=n` whose minimax over blocks of
    /// at most `j` elements is `m`, with `m = 0` for "no such block".
    pub fn kj_histogram(&self, n: usize, j: usize) -> Result<Vec<BigNat>> {
        if j == 0 {
            return Err(Error::params("block size bound j must be at least 1"));
        }
        self.check(n)?;
        Ok(self.histogram(n, |blocks| minimax_restricted_of(blocks, j)))
    }

    /// `k(n, m)`: partitions of `1..=n` (compositions of `K_n`) with minimax `m`.
    pub fn minimax_count(&self, n: usize, m: usize) -> Result<BigNat> {
        if m == 0 || m > n {
            return Err(Error::params(format!(
                "minimax label m = {m} outside 1..={n}"
            )));
        }
        Ok(self.minimax_histogram(n)?.swap_remove(m))
    }

    /// Partitions of `1..=n` whose largest block minimum is `m`.
    pub fn maximin_count(&self, n: usize, m: usize) -> Result<BigNat> {
        if m == 0 || m > n {
            return Err(Error::params(format!(
                "maximin label m = {m} outside 1..={n}"
            )));
        }
        Ok(self.maximin_histogram(n)?.swap_remove(m))
    }

    /// `k_j(n, m)` by enumeration; `m = 0` counts partitions with no block of
    /// at most `j` elements.
    pub fn kj_count(&self, n: usize, m: usize, j: usize) -> Result<BigNat> {
        if m > n {
            return Err(Error::params(format!("label m = {m} outside 0..={n}")));
        }
        Ok(self.kj_histogram(n, j)?.swap_remove(m))
    }

    fn histogram<S>(&self, n: usize, stat: S) -> Vec<BigNat>
    where
        S: Fn(&[VertexSet]) -> Option<usize> + Sync,
    {
        let counts = self.fold(
            VertexSet::full(n),
            || vec![0u64; n + 1],
            |acc, blocks| acc[stat(blocks).unwrap_or(0)] += 1,
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
        counts.into_iter().map(BigNat::from).collect()
    }

    /// Visits the blocks of every partition of `ground` and combines the
    /// per-worker accumulators.
    fn fold<A, I, V, M>(&self, ground: VertexSet, identity: I, visit: V, merge: M) -> A
    where
        A: Send,
        I: Fn() -> A + Sync + Send,
        V: Fn(&mut A, &[VertexSet]) + Sync,
        M: Fn(A, A) -> A + Sync + Send,
    {
        let labels: Vec<VertexSet> = ground.iter().map(VertexSet::singleton).collect();
        let mut blocks = [VertexSet::EMPTY; MAX_VERTICES];

        if self.workers == 1 || labels.len() <= SPLIT_DEPTH {
            let mut acc = identity();
            walk(&labels, 0, &mut blocks, 0, &mut acc, &visit);
            return acc;
        }

        let prefixes: Vec<Vec<u8>> = SetPartitions::over(VertexSet::full(SPLIT_DEPTH))
            .map(|p| p.rgs)
            .collect();
        let run = || {
            prefixes
                .par_iter()
                .map(|prefix| {
                    let mut blocks = [VertexSet::EMPTY; MAX_VERTICES];
                    let mut used = 0;
                    for (&r, &v) in prefix.iter().zip(&labels) {
                        blocks[r as usize] |= v;
                        used = used.max(r as usize + 1);
                    }
                    let mut acc = identity();
                    walk(&labels, SPLIT_DEPTH, &mut blocks, used, &mut acc, &visit);
                    acc
                })
                .reduce(&identity, &merge)
        };
        match rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
        {
            Ok(pool) => pool.install(run),
            Err(_) => run(),
        }
    }
}

/// Depth-first assignment of `labels[i..]` to blocks, in lexicographic
/// growth-string order.
fn walk<A, V>(
    labels: &[VertexSet],
    i: usize,
    blocks: &mut [VertexSet; MAX_VERTICES],
    used: usize,
    acc: &mut A,
    visit: &V,
) where
    V: Fn(&mut A, &[VertexSet]),
{
    if i == labels.len() {
        visit(acc, &blocks[..used]);
        return;
    }
    let v = labels[i];
    for b in 0..used {
        let saved = blocks[b];
        blocks[b] = saved | v;
        walk(labels, i + 1, blocks, used, acc, visit);
        blocks[b] = saved;
    }
    blocks[used] = v;
    walk(labels, i + 1, blocks, used + 1, acc, visit);
    blocks[used] = VertexSet::EMPTY;
}

/// Partitions of `1..=n` under the default cap.
pub fn set_partitions(n: usize) -> Result<SetPartitions> {
    Brute::default().set_partitions(n)
}

pub fn compositions(g: &LabelledGraph) -> Result<Compositions<'_>> {
    Brute::default().compositions(g)
}

pub fn composition_count_brute(g: &LabelledGraph) -> Result<BigNat> {
    Brute::default().composition_count(g)
}

pub fn minimax_count_brute(n: usize, m: usize) -> Result<BigNat> {
    Brute::default().minimax_count(n, m)
}

pub fn kj_count_brute(n: usize, m: usize, j: usize) -> Result<BigNat> {
    Brute::default().kj_count(n, m, j)
}
