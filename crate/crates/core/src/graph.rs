//! Labelled undirected graphs on labels `1..=n`, with bitset adjacency.
//!
//! Labels are never renumbered: deleting a vertex leaves a hole in the label
//! range, and [`LabelledGraph::vertices`] reports which labels are present.

use std::fmt;

use crate::{Error, Result};

/// Largest supported label. Vertex sets are single machine words.
pub const MAX_VERTICES: usize = 64;

/// A subset of `1..=64`, one bit per label (bit `i` holds label `i + 1`).
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// The labels `1..=n`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "label {n} exceeds {MAX_VERTICES}");
        if n == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(label: usize) -> Self {
        assert!(
            (1..=MAX_VERTICES).contains(&label),
            "label {label} out of range"
        );
        VertexSet(1u64 << (label - 1))
    }

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, label: usize) -> bool {
        (1..=MAX_VERTICES).contains(&label) && self.0 & (1u64 << (label - 1)) != 0
    }

    pub fn insert(&mut self, label: usize) {
        *self |= VertexSet::singleton(label);
    }

    pub fn remove(&mut self, label: usize) {
        if self.contains(label) {
            self.0 &= !(1u64 << (label - 1));
        }
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest label, if any.
    pub fn min_label(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    /// Largest label, if any.
    pub fn max_label(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    /// Labels in ascending order.
    pub fn iter(self) -> Labels {
        Labels(self.0)
    }
}

impl std::ops::BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: Self) -> Self {
        VertexSet(self.0 | rhs.0)
    }
}

impl std::ops::BitOrAssign for VertexSet {
    fn bitor_assign(&mut self, rhs: Self) {
        self.0 |= rhs.0;
    }
}

impl std::ops::BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: Self) -> Self {
        VertexSet(self.0 & rhs.0)
    }
}

impl std::ops::Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: Self) -> Self {
        VertexSet(self.0 & !rhs.0)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Labels;
    fn into_iter(self) -> Labels {
        self.iter()
    }
}

/// Ascending label iterator over a [`VertexSet`].
#[derive(Clone, Debug)]
pub struct Labels(u64);

impl Iterator for Labels {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let tz = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(tz + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Labels {}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An undirected simple graph whose vertices carry labels from `1..=label_bound`.
#[derive(Clone, PartialEq, Eq)]
pub struct LabelledGraph {
    label_bound: usize,
    vertices: VertexSet,
    /// `adj[v - 1]` is the neighbourhood of label `v`; empty for absent labels.
    adj: Vec<VertexSet>,
}

impl LabelledGraph {
    /// Edgeless graph on `1..=n`.
    pub fn edgeless(n: usize) -> Self {
        LabelledGraph {
            label_bound: n,
            vertices: VertexSet::full(n),
            adj: vec![VertexSet::EMPTY; n],
        }
    }

    /// The complete graph `K_n`. Panics if `n > MAX_VERTICES`.
    pub fn complete(n: usize) -> Self {
        let all = VertexSet::full(n);
        let adj = (1..=n).map(|v| all - VertexSet::singleton(v)).collect();
        LabelledGraph {
            label_bound: n,
            vertices: all,
            adj,
        }
    }

    /// `K_n` with every edge among labels `1..=m` removed.
    pub fn complete_minus_clique(n: usize, m: usize) -> Result<Self> {
        if m > n {
            return Err(Error::params(format!(
                "clique size m = {m} exceeds n = {n}"
            )));
        }
        check_bound(n)?;
        let mut g = Self::complete(n);
        let clique = VertexSet::full(m);
        for v in 1..=m {
            g.adj[v - 1] = g.adj[v - 1] - clique;
        }
        Ok(g)
    }

    /// Graph on `1..=n` with the given edges. Duplicates (in either orientation)
    /// are merged.
    pub fn from_edges(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        check_bound(n)?;
        let mut g = Self::edgeless(n);
        for &(u, v) in pairs {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds the edge `uv`. Adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for x in [u, v] {
            if !self.vertices.contains(x) {
                return Err(Error::MalformedInput(format!(
                    "edge ({u},{v}): label {x} is not a vertex"
                )));
            }
        }
        if u == v {
            return Err(Error::MalformedInput(format!("self-loop at vertex {u}")));
        }
        self.adj[u - 1].insert(v);
        self.adj[v - 1].insert(u);
        Ok(())
    }

    /// Parses the plain-text graph format: `n <count>` on the first
    /// non-comment line, then one `u v` edge per line. Lines starting with `#`
    /// and blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (lineno, header) = lines
            .next()
            .ok_or_else(|| Error::MalformedInput("missing `n <count>` header".into()))?;
        let n = match header.split_whitespace().collect::<Vec<_>>()[..] {
            ["n", count] => count.parse::<usize>().map_err(|e| {
                Error::MalformedInput(format!("line {lineno}: bad vertex count: {e}"))
            })?,
            _ => {
                return Err(Error::MalformedInput(format!(
                    "line {lineno}: expected `n <count>`, found `{header}`"
                )))
            }
        };
        if n > MAX_VERTICES {
            return Err(Error::MalformedInput(format!(
                "line {lineno}: {n} vertices exceeds the limit of {MAX_VERTICES}"
            )));
        }
        let mut g = Self::edgeless(n);
        for (lineno, line) in lines {
            let fields: Vec<_> = line.split_whitespace().collect();
            let [u, v] = fields[..] else {
                return Err(Error::MalformedInput(format!(
                    "line {lineno}: expected `u v`, found `{line}`"
                )));
            };
            let parse = |s: &str| {
                s.parse::<usize>().map_err(|e| {
                    Error::MalformedInput(format!("line {lineno}: bad label `{s}`: {e}"))
                })
            };
            g.add_edge(parse(u)?, parse(v)?)
                .map_err(|e| Error::MalformedInput(format!("line {lineno}: {e}")))?;
        }
        Ok(g)
    }

    /// Largest label the graph was built over; labels may be missing after deletions.
    pub fn label_bound(&self) -> usize {
        self.label_bound
    }

    pub fn vertices(&self) -> VertexSet {
        self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        if self.vertices.contains(v) {
            self.adj[v - 1]
        } else {
            VertexSet::EMPTY
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).contains(v)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.vertices
            .iter()
            .flat_map(|u| {
                self.adj[u - 1]
                    .iter()
                    .filter(move |&v| v > u)
                    .map(move |v| (u, v))
            })
            .collect()
    }

    /// Whether `s` induces a connected subgraph. `s` must be a nonempty subset
    /// of the vertices.
    pub fn is_connected_induced(&self, s: VertexSet) -> Result<bool> {
        if s.is_empty() {
            return Err(Error::params("connectivity of the empty vertex set"));
        }
        if !s.is_subset(self.vertices) {
            return Err(Error::params(format!(
                "{s} is not a subset of the vertices {}",
                self.vertices
            )));
        }
        Ok(self.spans_connected(s))
    }

    /// Unchecked connectivity test for a nonempty `s` inside the vertex set.
    #[inline]
    pub(crate) fn spans_connected(&self, s: VertexSet) -> bool {
        let target = s.0;
        let mut reached = target & target.wrapping_neg();
        let mut frontier = reached;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let i = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[i].0;
            }
            next &= target & !reached;
            reached |= next;
            frontier = next;
        }
        reached == target
    }

    /// Removes `v` and its incident edges. Other labels keep their values.
    pub fn delete_vertex(&self, v: usize) -> Result<Self> {
        if !self.vertices.contains(v) {
            return Err(Error::params(format!(
                "vertex {v} is not in {}",
                self.vertices
            )));
        }
        let mut g = self.clone();
        g.vertices.remove(v);
        for u in g.adj[v - 1] {
            g.adj[u - 1].remove(v);
        }
        g.adj[v - 1] = VertexSet::EMPTY;
        Ok(g)
    }
}

fn check_bound(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::params(format!(
            "{n} vertices exceeds the limit of {MAX_VERTICES}"
        )))
    } else {
        Ok(())
    }
}

impl fmt::Debug for LabelledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LabelledGraph")
            .field("vertices", &self.vertices)
            .field("edges", &self.edges())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(labels: &[usize]) -> VertexSet {
        labels.iter().copied().collect()
    }

    fn path3() -> LabelledGraph {
        LabelledGraph::from_edges(3, &[(1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn complete_graphs() {
        let k0 = LabelledGraph::complete(0);
        assert_eq!(k0.vertex_count(), 0);
        assert_eq!(k0.edge_count(), 0);
        assert_eq!(
            LabelledGraph::complete(3).edges(),
            vec![(1, 2), (1, 3), (2, 3)]
        );
        assert_eq!(LabelledGraph::complete(5).edge_count(), 10);
        assert_eq!(LabelledGraph::complete(64).edge_count(), 64 * 63 / 2);
    }

    #[test]
    fn complete_minus_clique_examples() {
        let k3 = LabelledGraph::complete(3);
        assert_eq!(LabelledGraph::complete_minus_clique(3, 0).unwrap(), k3);
        assert_eq!(LabelledGraph::complete_minus_clique(3, 1).unwrap(), k3);
        let g = LabelledGraph::complete_minus_clique(4, 2).unwrap();
        assert_eq!(g.edges(), vec![(1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        for n in 0..8 {
            assert_eq!(
                LabelledGraph::complete_minus_clique(n, n).unwrap(),
                LabelledGraph::edgeless(n)
            );
        }
        assert!(matches!(
            LabelledGraph::complete_minus_clique(2, 3),
            Err(Error::InvalidParameters(_))
        ));
    }

    #[test]
    fn complete_minus_clique_edge_counts() {
        let c2 = |k: usize| k * k.saturating_sub(1) / 2;
        for n in 0..=20 {
            for m in 0..=n {
                let g = LabelledGraph::complete_minus_clique(n, m).unwrap();
                assert_eq!(g.edge_count(), c2(n) - c2(m), "n={n} m={m}");
                if n >= 1 && m <= 1 {
                    assert_eq!(g, LabelledGraph::complete(n));
                }
            }
        }
    }

    #[test]
    fn from_edges_validation() {
        let p = path3();
        assert_eq!(p.edges(), vec![(1, 2), (2, 3)]);
        assert!(matches!(
            LabelledGraph::from_edges(2, &[(1, 1)]),
            Err(Error::MalformedInput(_))
        ));
        assert!(matches!(
            LabelledGraph::from_edges(2, &[(1, 3)]),
            Err(Error::MalformedInput(_))
        ));
        let g = LabelledGraph::from_edges(4, &[(1, 2), (2, 1)]).unwrap();
        assert_eq!(g.edges(), vec![(1, 2)]);
    }

    #[test]
    fn connectivity_examples() {
        assert!(!path3().is_connected_induced(set(&[1, 3])).unwrap());
        assert!(path3().is_connected_induced(set(&[1, 2, 3])).unwrap());
        assert!(path3().is_connected_induced(set(&[3])).unwrap());
        let k4 = LabelledGraph::complete(4);
        for bits in 1..16u64 {
            assert!(k4.is_connected_induced(VertexSet::from_bits(bits)).unwrap());
        }
        let g = LabelledGraph::complete_minus_clique(4, 2).unwrap();
        assert!(!g.is_connected_induced(set(&[1, 2])).unwrap());
        assert!(g.is_connected_induced(set(&[1, 2, 4])).unwrap());
        assert!(matches!(
            k4.is_connected_induced(VertexSet::EMPTY),
            Err(Error::InvalidParameters(_))
        ));
        assert!(matches!(
            k4.is_connected_induced(set(&[5])),
            Err(Error::InvalidParameters(_))
        ));
    }

    #[test]
    fn delete_vertex_keeps_labels() {
        let g = LabelledGraph::complete(3).delete_vertex(2).unwrap();
        assert_eq!(g.vertices(), set(&[1, 3]));
        assert_eq!(g.edges(), vec![(1, 3)]);

        let g = LabelledGraph::complete(1).delete_vertex(1).unwrap();
        assert_eq!(g.vertex_count(), 0);
        assert_eq!(g.edge_count(), 0);

        let g = path3().delete_vertex(2).unwrap();
        assert_eq!(g.vertices(), set(&[1, 3]));
        assert!(g.edges().is_empty());

        assert!(matches!(
            path3().delete_vertex(4),
            Err(Error::InvalidParameters(_))
        ));
        assert!(matches!(
            g.delete_vertex(2),
            Err(Error::InvalidParameters(_))
        ));
    }

    #[test]
    fn parse_graph_file() {
        let text = "# a path\n\nn 3\n1 2\n# middle comment\n2   3\n";
        assert_eq!(LabelledGraph::parse(text).unwrap(), path3());
        assert_eq!(LabelledGraph::parse("n 1\n").unwrap().vertex_count(), 1);
        for bad in [
            "",
            "# only\n",
            "3\n1 2",
            "n x",
            "n 3\n1 2 3",
            "n 3\n1 4",
            "n 3\n2 2",
            "n 65",
        ] {
            assert!(
                matches!(LabelledGraph::parse(bad), Err(Error::MalformedInput(_))),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn vertex_set_extremes() {
        let s = set(&[1, 64]);
        assert_eq!(s.min_label(), Some(1));
        assert_eq!(s.max_label(), Some(64));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![1, 64]);
        assert_eq!(VertexSet::EMPTY.max_label(), None);
        assert_eq!(format!("{}", set(&[3, 1])), "{1,3}");
    }

    /// Plain adjacency-list BFS, independent of the bitset routine.
    fn bfs_connected(n: usize, edges: &[(usize, usize)], members: &[usize]) -> bool {
        let mut adj = vec![Vec::new(); n + 1];
        for &(u, v) in edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let inside: std::collections::HashSet<usize> = members.iter().copied().collect();
        let mut seen = std::collections::HashSet::new();
        let mut queue = std::collections::VecDeque::from([members[0]]);
        seen.insert(members[0]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if inside.contains(&w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen.len() == inside.len()
    }

    fn graph_and_subset() -> impl Strategy<Value = (usize, Vec<(usize, usize)>, Vec<usize>)> {
        (1usize..=20).prop_flat_map(|n| {
            let edges = proptest::collection::vec((1..=n, 1..=n), 0..=3 * n)
                .prop_map(|es| es.into_iter().filter(|(u, v)| u != v).collect::<Vec<_>>());
            let subset = proptest::collection::btree_set(1..=n, 1..=n)
                .prop_map(|s| s.into_iter().collect::<Vec<_>>());
            (Just(n), edges, subset)
        })
    }

    proptest! {
        #[test]
        fn connectivity_matches_bfs((n, edges, members) in graph_and_subset()) {
            let g = LabelledGraph::from_edges(n, &edges).unwrap();
            let s: VertexSet = members.iter().copied().collect();
            prop_assert_eq!(g.is_connected_induced(s).unwrap(), bfs_connected(n, &edges, &members));
        }

        #[test]
        fn adjacency_is_symmetric((n, edges, _m) in graph_and_subset()) {
            let g = LabelledGraph::from_edges(n, &edges).unwrap();
            for u in 1..=n {
                prop_assert!(!g.has_edge(u, u));
                for v in g.neighbors(u) {
                    prop_assert!(g.has_edge(v, u));
                }
            }
            for (u, v) in g.edges() {
                prop_assert!(edges.contains(&(u, v)) || edges.contains(&(v, u)));
            }
        }
    }
}
