//! Simple graphs, clique enumeration and flag complexes.
//!
//! Vertices carry a fixed total order (their position in the vertex list) and
//! every clique is stored as a strictly increasing tuple of vertex indices with
//! respect to that order. All sign conventions downstream depend on this.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite simple graph: no loops, no multi-edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adjacency: Vec<Vec<bool>>,
    edges: BTreeSet<(usize, usize)>,
}

impl SimpleGraph {
    /// Builds a graph from vertex names and index pairs.
    ///
    /// Edges are normalised to `(min, max)`. Loops, out-of-range endpoints,
    /// duplicate names and duplicate edges are rejected.
    pub fn new(names: Vec<String>, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let n = names.len();
        let mut index = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::domain(format!("duplicate vertex identifier {name:?}")));
            }
        }
        let mut adjacency = vec![vec![false; n]; n];
        let mut edge_set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::domain(format!(
                    "every edge endpoint is a listed vertex: ({u},{v}) with {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::domain(format!("no loops: edge {{{0},{0}}}", names[u])));
            }
            let e = (u.min(v), u.max(v));
            if !edge_set.insert(e) {
                return Err(Error::domain(format!(
                    "no multi-edges: duplicate edge {{{},{}}}",
                    names[e.0], names[e.1]
                )));
            }
            adjacency[u][v] = true;
            adjacency[v][u] = true;
        }
        Ok(SimpleGraph { names, index, adjacency, edges: edge_set })
    }

    /// Graph on vertices named `v0, v1, ...` with the given index edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::new(default_names(n), edges.iter().copied())
    }

    /// Graph given by vertex names and edges between names.
    pub fn from_names(vertices: &[&str], edges: &[(&str, &str)]) -> Result<Self> {
        let names: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let lookup: HashMap<&str, usize> =
            vertices.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let mut idx = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            let u = *lookup
                .get(a)
                .ok_or_else(|| Error::domain(format!("every edge endpoint is a listed vertex: {a:?}")))?;
            let v = *lookup
                .get(b)
                .ok_or_else(|| Error::domain(format!("every edge endpoint is a listed vertex: {b:?}")))?;
            idx.push((u, v));
        }
        Self::new(names, idx)
    }

    pub fn edgeless(n: usize) -> Self {
        Self::from_edges(n, &[]).expect("edgeless graph is valid")
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Self::from_edges(n, &edges).expect("complete graph is valid")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Self::from_edges(n, &edges).expect("path graph is valid")
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a simple cycle needs at least three vertices");
        let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
        Self::from_edges(n, &edges).expect("cycle graph is valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn is_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u][v]
    }

    /// Edges as sorted index pairs, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices.iter().enumerate().all(|(i, &u)| {
            u < self.vertex_count() && vertices[i + 1..].iter().all(|&v| u != v && self.adjacency[u][v])
        })
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for (v, &adjacent) in self.adjacency[u].iter().enumerate() {
                if adjacent && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Size of the largest clique.
    pub fn clique_number(&self) -> usize {
        let mut p = 0;
        while !enumerate_cliques(self, p + 1).is_empty() {
            p += 1;
        }
        p
    }

    /// Renders a clique with vertex names, e.g. `(a,b,c)`.
    pub fn format_clique(&self, clique: &Clique) -> String {
        let parts: Vec<&str> = clique.vertices().iter().map(|&v| self.name(v)).collect();
        format!("({})", parts.join(","))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile = serde_json::from_str(text)?;
        file.try_into()
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            vertices: self.names.clone(),
            edges: self
                .edges
                .iter()
                .map(|&(u, v)| [self.names[u].clone(), self.names[v].clone()])
                .collect(),
        }
    }
}

fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

/// On-disk graph schema: `{"vertices": [...], "edges": [["a","b"], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

impl TryFrom<GraphFile> for SimpleGraph {
    type Error = Error;

    fn try_from(file: GraphFile) -> Result<Self> {
        let lookup: HashMap<&str, usize> =
            file.vertices.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        if lookup.len() != file.vertices.len() {
            return Err(Error::parse("duplicate vertex identifier in graph file"));
        }
        let mut pairs = Vec::with_capacity(file.edges.len());
        let mut seen = BTreeSet::new();
        for [a, b] in &file.edges {
            let u = *lookup
                .get(a.as_str())
                .ok_or_else(|| Error::parse(format!("every edge endpoint is a listed vertex: {a:?}")))?;
            let v = *lookup
                .get(b.as_str())
                .ok_or_else(|| Error::parse(format!("every edge endpoint is a listed vertex: {b:?}")))?;
            if u == v {
                return Err(Error::parse(format!("no loops: edge [{a:?},{b:?}]")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::parse(format!("duplicate edge [{a:?},{b:?}]")));
            }
            pairs.push((u, v));
        }
        SimpleGraph::new(file.vertices, pairs)
    }
}

/// A clique: strictly increasing vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Clique(Vec<usize>);

impl Clique {
    /// The unique 0-clique, i.e. the (−1)-dimensional empty simplex.
    pub fn empty() -> Self {
        Clique(Vec::new())
    }

    /// Wraps an index tuple, which must already be strictly increasing.
    pub fn new(vertices: Vec<usize>) -> Result<Self> {
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::domain(format!(
                "clique vertices must be strictly increasing: {vertices:?}"
            )));
        }
        Ok(Clique(vertices))
    }

    /// Sorts and deduplicates arbitrary indices.
    pub fn from_unsorted(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Clique(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Simplex dimension: one less than the number of vertices.
    pub fn dimension(&self) -> isize {
        self.0.len() as isize - 1
    }

    /// The face obtained by omitting the `i`-th vertex.
    pub fn omit(&self, i: usize) -> Clique {
        let mut v = self.0.clone();
        v.remove(i);
        Clique(v)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }
}

impl fmt::Display for Clique {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All `p`-cliques of `graph` in lexicographic order.
///
/// Cliques are grown by ordered extension: a partial clique is only extended
/// by common neighbours larger than its maximum, so every clique is produced
/// exactly once and in lexicographic order. `p = 0` yields the empty clique.
pub fn enumerate_cliques(graph: &SimpleGraph, p: usize) -> Vec<Clique> {
    let mut out = Vec::new();
    if p == 0 {
        out.push(Clique::empty());
        return out;
    }
    let candidates: Vec<usize> = (0..graph.vertex_count()).collect();
    let mut current = Vec::with_capacity(p);
    extend(graph, p, &mut current, &candidates, &mut out);
    out
}

fn extend(
    graph: &SimpleGraph,
    p: usize,
    current: &mut Vec<usize>,
    candidates: &[usize],
    out: &mut Vec<Clique>,
) {
    if current.len() == p {
        out.push(Clique(current.clone()));
        return;
    }
    let needed = p - current.len();
    for (i, &v) in candidates.iter().enumerate() {
        if candidates.len() - i < needed {
            break;
        }
        let next: Vec<usize> = candidates[i + 1..]
            .iter()
            .copied()
            .filter(|&w| graph.is_edge(v, w))
            .collect();
        current.push(v);
        extend(graph, p, current, &next, out);
        current.pop();
    }
}

/// The flag complex of a graph truncated at `dim_cap`.
///
/// `simplices[d + 1]` holds the `d`-simplices, so index 0 is the empty
/// simplex in dimension −1.
#[derive(Clone, Debug)]
pub struct FlagComplex {
    base: SimpleGraph,
    dim_cap: usize,
    simplices: Vec<Vec<Clique>>,
    positions: Vec<HashMap<Clique, usize>>,
}

/// Builds the flag complex of `graph` in dimensions −1 through `dim_cap`.
pub fn flag_complex(graph: &SimpleGraph, dim_cap: usize) -> FlagComplex {
    let simplices: Vec<Vec<Clique>> =
        (0..=dim_cap + 1).map(|size| enumerate_cliques(graph, size)).collect();
    let positions = simplices
        .iter()
        .map(|layer| layer.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect())
        .collect();
    FlagComplex { base: graph.clone(), dim_cap, simplices, positions }
}

impl FlagComplex {
    pub fn base(&self) -> &SimpleGraph {
        &self.base
    }

    pub fn dim_cap(&self) -> usize {
        self.dim_cap
    }

    /// Simplices of dimension `dim` (−1 ≤ dim ≤ dim_cap); empty outside.
    pub fn simplices(&self, dim: isize) -> &[Clique] {
        if dim < -1 || dim > self.dim_cap as isize {
            return &[];
        }
        &self.simplices[(dim + 1) as usize]
    }

    pub fn count(&self, dim: isize) -> usize {
        self.simplices(dim).len()
    }

    /// Counts in dimensions −1, 0, ..., dim_cap.
    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    /// Highest dimension that actually contains a simplex.
    pub fn top_dimension(&self) -> isize {
        self.simplices.iter().rposition(|l| !l.is_empty()).map_or(-1, |i| i as isize - 1)
    }

    pub fn contains(&self, simplex: &Clique) -> bool {
        self.position(simplex).is_some()
    }

    /// Index of `simplex` inside its dimension layer.
    pub fn position(&self, simplex: &Clique) -> Option<usize> {
        self.positions.get(simplex.len()).and_then(|m| m.get(simplex).copied())
    }

    /// Iterates every simplex, dimension by dimension, including the empty one.
    pub fn iter(&self) -> impl Iterator<Item = &Clique> {
        self.simplices.iter().flatten()
    }
}

/// A finite formal integer combination of cliques with no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalSum(BTreeMap<Clique, i64>);

impl FormalSum {
    pub fn zero() -> Self {
        FormalSum(BTreeMap::new())
    }

    pub fn single(c: Clique) -> Self {
        let mut s = Self::zero();
        s.add(c, 1);
        s
    }

    pub fn add(&mut self, c: Clique, coeff: i64) {
        if coeff == 0 {
            return;
        }
        match self.0.entry(c) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coefficient(&self, c: &Clique) -> i64 {
        self.0.get(c).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Clique, i64)> {
        self.0.iter().map(|(c, &k)| (c, k))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Boundary of a single simplex of `complex`.
///
/// Omitting the `i`-th vertex of the sorted tuple carries sign `(−1)^i`; the
/// boundary of a vertex is the empty clique with coefficient +1.
pub fn simplex_boundary(complex: &FlagComplex, simplex: &Clique) -> Result<FormalSum> {
    if !complex.contains(simplex) {
        return Err(Error::domain(format!(
            "simplex belongs to complex: {} is not a simplex of the flag complex",
            complex.base.format_clique(simplex)
        )));
    }
    let mut out = FormalSum::zero();
    for i in 0..simplex.len() {
        out.add(simplex.omit(i), if i % 2 == 0 { 1 } else { -1 });
    }
    Ok(out)
}

/// Boundary extended linearly to formal sums.
pub fn chain_boundary(complex: &FlagComplex, chain: &FormalSum) -> Result<FormalSum> {
    let mut out = FormalSum::zero();
    for (c, k) in chain.terms() {
        for (face, s) in simplex_boundary(complex, c)?.terms() {
            out.add(face.clone(), k * s);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_abc() -> SimpleGraph {
        SimpleGraph::from_names(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap()
    }

    fn cl(v: &[usize]) -> Clique {
        Clique::new(v.to_vec()).unwrap()
    }

    #[test]
    fn triangle_has_one_three_clique() {
        assert_eq!(enumerate_cliques(&SimpleGraph::complete(3), 3), vec![cl(&[0, 1, 2])]);
    }

    #[test]
    fn path_edges_are_two_cliques() {
        assert_eq!(enumerate_cliques(&path_abc(), 2), vec![cl(&[0, 1]), cl(&[1, 2])]);
    }

    #[test]
    fn five_cycle_is_triangle_free() {
        assert!(enumerate_cliques(&SimpleGraph::cycle(5), 3).is_empty());
    }

    #[test]
    fn zero_cliques_is_the_empty_clique() {
        assert_eq!(enumerate_cliques(&path_abc(), 0), vec![Clique::empty()]);
    }

    #[test]
    fn flag_counts() {
        assert_eq!(flag_complex(&SimpleGraph::complete(3), 2).counts(), vec![1, 3, 3, 1]);
        assert_eq!(flag_complex(&SimpleGraph::edgeless(4), 3).counts(), vec![1, 4, 0, 0, 0]);
        assert_eq!(flag_complex(&path_abc(), 2).counts(), vec![1, 3, 2, 0]);
    }

    #[test]
    fn boundary_examples() {
        let k3 = flag_complex(&SimpleGraph::complete(3), 2);
        let b = simplex_boundary(&k3, &cl(&[0, 1])).unwrap();
        assert_eq!(b.coefficient(&cl(&[1])), 1);
        assert_eq!(b.coefficient(&cl(&[0])), -1);
        assert_eq!(b.len(), 2);

        let b = simplex_boundary(&k3, &cl(&[0, 1, 2])).unwrap();
        assert_eq!(b.coefficient(&cl(&[1, 2])), 1);
        assert_eq!(b.coefficient(&cl(&[0, 2])), -1);
        assert_eq!(b.coefficient(&cl(&[0, 1])), 1);

        let b = simplex_boundary(&k3, &cl(&[2])).unwrap();
        assert_eq!(b, FormalSum::single(Clique::empty()));
    }

    #[test]
    fn boundary_rejects_foreign_simplex() {
        let l = flag_complex(&path_abc(), 2);
        let err = simplex_boundary(&l, &cl(&[0, 2])).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn graph_invariants_enforced() {
        assert!(SimpleGraph::from_edges(2, &[(0, 0)]).is_err());
        assert!(SimpleGraph::from_edges(2, &[(0, 1), (1, 0)]).is_err());
        assert!(SimpleGraph::from_edges(2, &[(0, 2)]).is_err());
    }

    #[test]
    fn json_round_trip_and_normalisation() {
        let g = SimpleGraph::from_json(r#"{"vertices":["a","b","c"],"edges":[["b","a"],["c","b"]]}"#)
            .unwrap();
        assert_eq!(g, path_abc());
        let again = SimpleGraph::try_from(g.to_file()).unwrap();
        assert_eq!(again, g);
    }

    #[test]
    fn json_rejects_duplicate_edges() {
        let err = SimpleGraph::from_json(r#"{"vertices":["a","b"],"edges":[["a","b"],["b","a"]]}"#)
            .unwrap_err();
        assert!(matches!(err, Error::Parse(_)));
        let err = SimpleGraph::from_json(r#"{"vertices":["a"],"edges":[["a","z"]]}"#).unwrap_err();
        assert!(matches!(err, Error::Parse(_)));
    }
}
