//! The correspondence between partitions of `1..=n+1` with minimax vertex
//! `m+1` and compositions of `K_n^{-K_m}`.
//!
//! The target graph `G` has vertex labels `1..=n+1` without `m+1`, and an edge
//! between every pair except pairs inside `M = {1..=m}`. Deleting `m+1` from a
//! partition with minimax `m+1` leaves a composition of `G`; the block that
//! held `m+1` can only contain other labels from `M`, and those become
//! singletons. In the other direction, `m+1` absorbs every singleton `{a}`
//! with `a` in `M`.

use std::collections::HashSet;

use crate::enumerate::{is_composition, minimax_vertex, Brute, Partition};
use crate::graph::{LabelledGraph, VertexSet};
use crate::{BigNat, Error, Result};

/// `G`: labels `1..=n+1` minus `m+1`, with `M = {1..=m}` independent and every
/// other pair adjacent. Isomorphic to `K_n^{-K_m}`.
pub fn target_graph(n: usize, m: usize) -> Result<LabelledGraph> {
    if m > n {
        return Err(Error::params(format!(
            "clique size m = {m} exceeds n = {n}"
        )));
    }
    LabelledGraph::complete_minus_clique(n + 1, m)?.delete_vertex(m + 1)
}

/// Removes `m+1` from a partition of `1..=n+1` whose minimax vertex is `m+1`.
pub fn forward(p: &Partition, n: usize, m: usize) -> Result<Partition> {
    if m > n {
        return Err(Error::params(format!(
            "clique size m = {m} exceeds n = {n}"
        )));
    }
    if p.ground() != VertexSet::full(n + 1) {
        return Err(Error::InvalidInput(format!(
            "{p} is not a partition of 1..={}",
            n + 1
        )));
    }
    let minimax = minimax_vertex(p);
    if minimax != Some(m + 1) {
        return Err(Error::InvalidInput(format!(
            "{p} has minimax {}, expected {}",
            minimax.unwrap_or(0),
            m + 1
        )));
    }
    let pivot = m + 1;
    let clique = VertexSet::full(m);
    let mut blocks = Vec::new();
    for b in p.blocks() {
        if b.contains(pivot) {
            let rest = b - VertexSet::singleton(pivot);
            debug_assert!(rest.is_subset(clique));
            blocks.extend(rest.iter().map(VertexSet::singleton));
        } else {
            blocks.push(b);
        }
    }
    Partition::from_blocks(blocks)
}

/// Inserts `m+1` into a composition of [`target_graph`]`(n, m)`, joined with
/// every singleton block drawn from `M`.
pub fn backward(c: &Partition, n: usize, m: usize) -> Result<Partition> {
    let g = target_graph(n, m)?;
    let ok = is_composition(&g, c).map_err(|e| Error::InvalidInput(e.to_string()))?;
    if !ok {
        return Err(Error::InvalidInput(format!(
            "{c} is not a composition of the target graph"
        )));
    }
    let clique = VertexSet::full(m);
    let mut head = VertexSet::singleton(m + 1);
    let mut blocks = Vec::new();
    for b in c.blocks() {
        if b.len() == 1 && b.is_subset(clique) {
            head |= b;
        } else {
            blocks.push(b);
        }
    }
    blocks.push(head);
    Partition::from_blocks(blocks)
}

/// Outcome of an exhaustive check of the correspondence at one `(n, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BijectionReport {
    pub n: usize,
    pub m: usize,
    /// Partitions of `1..=n+1` with minimax vertex `m+1`.
    pub lhs_count: BigNat,
    /// Compositions of the target graph.
    pub rhs_count: BigNat,
    /// Both composites are the identity on their domains.
    pub round_trip_ok: bool,
    /// `forward` never maps two partitions to the same composition.
    pub injective_ok: bool,
    /// Every forward-domain partition satisfies the two structural facts: no
    /// block lies inside `M`, and the block of `m+1` meets the complement of
    /// `M` only in `m+1`.
    pub structure_ok: bool,
}

impl BijectionReport {
    pub fn passed(&self) -> bool {
        self.round_trip_ok
            && self.injective_ok
            && self.structure_ok
            && self.lhs_count == self.rhs_count
    }
}

/// Enumerates both sides and checks every element.
pub fn verify(n: usize, m: usize, brute: &Brute) -> Result<BijectionReport> {
    if m > n {
        return Err(Error::params(format!(
            "clique size m = {m} exceeds n = {n}"
        )));
    }
    let g = target_graph(n, m)?;
    let clique = VertexSet::full(m);
    let pivot = m + 1;

    let mut lhs_count = 0u64;
    let mut round_trip_ok = true;
    let mut structure_ok = true;
    let mut images = HashSet::new();
    for p in brute.set_partitions(n + 1)? {
        if minimax_vertex(&p) != Some(pivot) {
            continue;
        }
        lhs_count += 1;
        for b in p.blocks() {
            if b.is_subset(clique) {
                structure_ok = false;
            }
            if b.contains(pivot) && b - clique != VertexSet::singleton(pivot) {
                structure_ok = false;
            }
        }
        let image = forward(&p, n, m)?;
        if !is_composition(&g, &image)? {
            round_trip_ok = false;
            continue;
        }
        if backward(&image, n, m)? != p {
            round_trip_ok = false;
        }
        images.insert(image);
    }
    let injective_ok = images.len() as u64 == lhs_count;

    let mut rhs_count = 0u64;
    for c in brute.compositions(&g)? {
        rhs_count += 1;
        let c = c.into_partition();
        let pre = backward(&c, n, m)?;
        if minimax_vertex(&pre) != Some(pivot) || forward(&pre, n, m)? != c {
            round_trip_ok = false;
        }
    }

    Ok(BijectionReport {
        n,
        m,
        lhs_count: lhs_count.into(),
        rhs_count: rhs_count.into(),
        round_trip_ok,
        injective_ok,
        structure_ok,
    })
}
