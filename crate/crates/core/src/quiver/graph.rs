use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver `(V, E, s, t)`. Vertices and edges are addressed by index;
/// names are kept for I/O.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::InvalidQuiver(format!("duplicate vertex `{v}`")));
            }
        }
        for (i, e) in edges.iter().enumerate() {
            if e.source >= vertices.len() || e.target >= vertices.len() {
                return Err(Error::InvalidQuiver(format!("edge `{}` has an endpoint out of range", e.name)));
            }
            if edges[..i].iter().any(|f| f.name == e.name) {
                return Err(Error::InvalidQuiver(format!("duplicate edge `{}`", e.name)));
            }
        }
        Ok(Self { vertices, edges })
    }

    /// Build from vertex names and `(edge, source, target)` name triples.
    pub fn from_names(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Result<Self> {
        let vs: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let lookup = |n: &str| vs.iter().position(|v| v == n).ok_or_else(|| Error::UnknownVertex(n.into()));
        let es = edges
            .iter()
            .map(|(e, s, t)| Ok(Edge { name: e.to_string(), source: lookup(s)?, target: lookup(t)? }))
            .collect::<Result<Vec<_>>>()?;
        Self::new(vs, es)
    }

    /// One vertex `1` with loops `e1, …, en` (or `e` when `n == 1`).
    pub fn loops(n: usize) -> Self {
        let edges = (0..n)
            .map(|i| Edge {
                name: if n == 1 { "e".into() } else { format!("e{}", i + 1) },
                source: 0,
                target: 0,
            })
            .collect();
        Self::new(vec!["1".into()], edges).expect("valid loop quiver")
    }

    /// The `A2` quiver `1 --a--> 2`.
    pub fn a2() -> Self {
        Self::from_names(&["1", "2"], &[("a", "1", "2")]).expect("valid A2")
    }

    /// Quiver with vertices but no arrows.
    pub fn discrete(k: usize) -> Self {
        Self::new((1..=k).map(|i| i.to_string()).collect(), vec![]).expect("valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn source(&self, e: usize) -> usize {
        self.edges[e].source
    }

    pub fn target(&self, e: usize) -> usize {
        self.edges[e].target
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVertex(name.into()))
    }

    pub fn edge_index(&self, name: &str) -> Result<usize> {
        self.edges
            .iter()
            .position(|e| e.name == name)
            .ok_or_else(|| Error::UnknownEdge(name.into()))
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertices.len() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v.to_string()))
        }
    }

    /// `E_{i,j}`: the edges from `i` to `j`, in index order.
    pub fn edges_between(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| self.edges[e].source == i && self.edges[e].target == j)
            .collect()
    }

    pub fn out_edges(&self, i: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e].source == i).collect()
    }

    pub fn has_oriented_cycle(&self) -> bool {
        // Kahn's algorithm: a cycle exists iff some vertex never reaches in-degree 0.
        let k = self.vertex_count();
        let mut indeg = vec![0usize; k];
        for e in &self.edges {
            indeg[e.target] += 1;
        }
        let mut stack: Vec<usize> = (0..k).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for e in &self.edges {
                if e.source == v {
                    indeg[e.target] -= 1;
                    if indeg[e.target] == 0 {
                        stack.push(e.target);
                    }
                }
            }
        }
        seen < k
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quiver(V = {{{}}}", self.vertices.join(", "))?;
        for e in &self.edges {
            write!(f, ", {}: {}→{}", e.name, self.vertices[e.source], self.vertices[e.target])?;
        }
        write!(f, ")")
    }
}

/// Dimension vector `m⃗`, one entry per vertex of the ambient quiver. Also
/// serves as an element of the lattice spanned by the vertex simples.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DimVector(pub Vec<usize>);

impl DimVector {
    pub fn new(quiver: &Quiver, entries: Vec<usize>) -> Result<Self> {
        if entries.len() != quiver.vertex_count() {
            return Err(Error::ShapeMismatch(format!(
                "dimension vector has {} entries, quiver has {} vertices",
                entries.len(),
                quiver.vertex_count()
            )));
        }
        Ok(Self(entries))
    }

    pub fn zero(k: usize) -> Self {
        Self(vec![0; k])
    }

    /// Dimension vector of the vertex simple `S_i`.
    pub fn unit(k: usize, i: usize) -> Self {
        let mut v = vec![0; k];
        v[i] = 1;
        Self(v)
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&m| m == 0)
    }

    pub fn get(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Offsets of each vertex block in a total-space coordinate system.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.0
            .iter()
            .map(|&m| {
                let o = acc;
                acc += m;
                o
            })
            .collect()
    }

    /// All `d′` with `0 ≤ d′ ≤ self` componentwise, in lexicographic order.
    pub fn sub_vectors(&self) -> Vec<DimVector> {
        let mut out = vec![vec![]];
        for &m in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<usize>| {
                    (0..=m).map(move |x| {
                        let mut p = prefix.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(DimVector).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|m| m.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_edges() {
        let err = Quiver::new(vec!["1".into()], vec![Edge { name: "a".into(), source: 0, target: 3 }]);
        assert!(err.is_err());
        let dup = Quiver::from_names(&["1"], &[("a", "1", "1"), ("a", "1", "1")]);
        assert!(dup.is_err());
        assert!(Quiver::from_names(&["1"], &[("a", "1", "9")]).is_err());
    }

    #[test]
    fn edge_lookup() {
        let q = Quiver::from_names(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2"), ("c", "2", "1")]).unwrap();
        assert_eq!(q.edges_between(0, 1), vec![0, 1]);
        assert_eq!(q.edges_between(1, 0), vec![2]);
        assert!(q.has_oriented_cycle());
        assert!(!Quiver::a2().has_oriented_cycle());
        assert!(Quiver::loops(1).has_oriented_cycle());
    }

    #[test]
    fn sub_vectors_enumerates_box() {
        let d = DimVector(vec![1, 2]);
        let subs = d.sub_vectors();
        assert_eq!(subs.len(), 6);
        assert_eq!(subs[0], DimVector(vec![0, 0]));
        assert_eq!(subs[5], DimVector(vec![1, 2]));
    }
}
