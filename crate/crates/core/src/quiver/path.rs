use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::quiver::Quiver;

/// A composable word `e₁e₂…eₙ` with `t(eᵢ) = s(eᵢ₊₁)`, read left to right.
/// The empty word at vertex `v` is the trivial path `ε_v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathWord {
    start: usize,
    end: usize,
    edges: Vec<usize>,
}

impl PathWord {
    pub fn trivial(v: usize) -> Self {
        Self { start: v, end: v, edges: vec![] }
    }

    pub fn edge(quiver: &Quiver, e: usize) -> Self {
        Self { start: quiver.source(e), end: quiver.target(e), edges: vec![e] }
    }

    pub fn from_edges(quiver: &Quiver, edges: &[usize]) -> Result<Self> {
        let Some(&first) = edges.first() else {
            return Err(Error::InvalidArgument("use PathWord::trivial for the empty word".into()));
        };
        if edges.iter().any(|&e| e >= quiver.edge_count()) {
            return Err(Error::UnknownEdge(format!("{edges:?}")));
        }
        for w in edges.windows(2) {
            if quiver.target(w[0]) != quiver.source(w[1]) {
                return Err(Error::NotComposable(format!(
                    "{} then {}",
                    quiver.edge(w[0]).name,
                    quiver.edge(w[1]).name
                )));
            }
        }
        Ok(Self {
            start: quiver.source(first),
            end: quiver.target(*edges.last().unwrap()),
            edges: edges.to_vec(),
        })
    }

    /// Parse a word from edge names; an empty name list needs `vertex`.
    pub fn from_names(quiver: &Quiver, names: &[&str], vertex: Option<&str>) -> Result<Self> {
        if names.is_empty() {
            let v = vertex.ok_or_else(|| Error::InvalidArgument("trivial path needs a vertex".into()))?;
            return Ok(Self::trivial(quiver.vertex_index(v)?));
        }
        let idx = names.iter().map(|n| quiver.edge_index(n)).collect::<Result<Vec<_>>>()?;
        Self::from_edges(quiver, &idx)
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.end
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_cycle(&self) -> bool {
        self.start == self.end
    }

    /// `self` followed by `other`, if composable.
    pub fn concat(&self, other: &Self) -> Option<Self> {
        if self.end != other.start {
            return None;
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Some(Self { start: self.start, end: other.end, edges })
    }

    /// Split after the first `k` edges.
    pub fn split_at(&self, quiver: &Quiver, k: usize) -> (Self, Self) {
        let (a, b) = self.edges.split_at(k);
        let mid = if k == 0 {
            self.start
        } else {
            quiver.target(a[k - 1])
        };
        (
            Self { start: self.start, end: mid, edges: a.to_vec() },
            Self { start: mid, end: self.end, edges: b.to_vec() },
        )
    }

    /// Rotation of a cycle starting at its `k`-th edge.
    pub fn rotate(&self, quiver: &Quiver, k: usize) -> Self {
        debug_assert!(self.is_cycle());
        if self.edges.is_empty() {
            return self.clone();
        }
        let n = self.edges.len();
        let edges: Vec<usize> = (0..n).map(|i| self.edges[(i + k) % n]).collect();
        let start = quiver.source(edges[0]);
        Self { start, end: start, edges }
    }

    /// Lexicographically minimal rotation of a cycle.
    pub fn canonical_rotation(&self, quiver: &Quiver) -> Self {
        (0..self.len().max(1))
            .map(|k| self.rotate(quiver, k))
            .min()
            .expect("at least one rotation")
    }

    pub fn display(&self, quiver: &Quiver) -> String {
        if self.edges.is_empty() {
            format!("ε{}", quiver.vertex_name(self.start))
        } else {
            self.edges.iter().map(|&e| quiver.edge(e).name.as_str()).collect::<Vec<_>>().join("·")
        }
    }

    pub fn edge_names(&self, quiver: &Quiver) -> Vec<String> {
        self.edges.iter().map(|&e| quiver.edge(e).name.clone()).collect()
    }
}

/// Length first, then lexicographic on edge indices, then start vertex.
impl Ord for PathWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.edges
            .len()
            .cmp(&other.edges.len())
            .then_with(|| self.edges.cmp(&other.edges))
            .then_with(|| self.start.cmp(&other.start))
    }
}

impl PartialOrd for PathWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All composable words starting at `a` of length at most `max_len`, in
/// length-then-lexicographic order.
pub fn paths_from(quiver: &Quiver, a: usize, max_len: usize) -> Result<Vec<PathWord>> {
    quiver.check_vertex(a)?;
    let mut out = vec![PathWord::trivial(a)];
    let mut layer = vec![PathWord::trivial(a)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for e in quiver.out_edges(w.end) {
                let mut edges = w.edges.clone();
                edges.push(e);
                next.push(PathWord { start: a, end: quiver.target(e), edges });
            }
        }
        if next.is_empty() {
            break;
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    Ok(out)
}

/// All composable words from `a` to `b` of length at most `max_len`, in
/// length-then-lexicographic order. The trivial path is included iff `a = b`.
pub fn enumerate_paths(quiver: &Quiver, a: usize, b: usize, max_len: usize) -> Result<Vec<PathWord>> {
    quiver.check_vertex(b)?;
    Ok(paths_from(quiver, a, max_len)?.into_iter().filter(|w| w.end == b).collect())
}

/// Every word of the quiver (all start vertices) up to `max_len`, sorted.
pub fn all_paths(quiver: &Quiver, max_len: usize) -> Vec<PathWord> {
    let mut out: Vec<PathWord> = (0..quiver.vertex_count())
        .flat_map(|a| paths_from(quiver, a, max_len).expect("valid vertex"))
        .collect();
    out.sort();
    out
}

/// Words of exactly length `n` (any endpoints), sorted.
pub fn paths_of_length(quiver: &Quiver, n: usize) -> Vec<PathWord> {
    all_paths(quiver, n).into_iter().filter(|w| w.len() == n).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loop_enumeration() {
        let q = Quiver::loops(1);
        let words = enumerate_paths(&q, 0, 0, 3).unwrap();
        let shown: Vec<String> = words.iter().map(|w| w.display(&q)).collect();
        assert_eq!(shown, vec!["ε1", "e", "e·e", "e·e·e"]);
    }

    #[test]
    fn a2_has_single_path() {
        let q = Quiver::a2();
        let words = enumerate_paths(&q, 0, 1, 5).unwrap();
        assert_eq!(words.len(), 1);
        assert_eq!(words[0].display(&q), "a");
    }

    #[test]
    fn three_loops_count() {
        let q = Quiver::loops(3);
        assert_eq!(enumerate_paths(&q, 0, 0, 2).unwrap().len(), 13);
    }

    #[test]
    fn unknown_vertex_is_an_error() {
        assert!(matches!(enumerate_paths(&Quiver::a2(), 0, 7, 2), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn ordering_is_length_then_lex() {
        let q = Quiver::loops(2);
        let words = enumerate_paths(&q, 0, 0, 2).unwrap();
        let mut sorted = words.clone();
        sorted.sort();
        assert_eq!(words, sorted);
        let shown: Vec<String> = words.iter().map(|w| w.display(&q)).collect();
        assert_eq!(shown, vec!["ε1", "e1", "e2", "e1·e1", "e1·e2", "e2·e1", "e2·e2"]);
    }

    #[test]
    fn path_count_recurrence() {
        // #paths of length n ending at b = Σ over edges into b of #paths of length n-1 ending at s(e).
        let q = Quiver::from_names(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1"), ("d", "2", "2")])
            .unwrap();
        let count = |len: usize, b: usize| all_paths(&q, len).iter().filter(|w| w.len() == len && w.end() == b).count();
        for n in 1..6 {
            for b in 0..3 {
                let rec: usize = q.edges().iter().filter(|e| e.target == b).map(|e| count(n - 1, e.source)).sum();
                assert_eq!(count(n, b), rec);
            }
        }
    }

    #[test]
    fn composability_is_checked() {
        let q = Quiver::a2();
        assert!(PathWord::from_edges(&q, &[0, 0]).is_err());
        let c = Quiver::from_names(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")]).unwrap();
        let w = PathWord::from_edges(&c, &[1, 0]).unwrap();
        assert_eq!(w.canonical_rotation(&c).edges(), &[0, 1]);
    }
}
