//! Group actions on graphs: clique orbits, clique stabilizers and cocompactness.
//!
//! Two backends are supported:
//!
//! * [`FinitePermAction`]: a finite group generated by explicit graph
//!   automorphisms of a finite graph, enumerated by breadth-first closure under
//!   a hard element cap.
//! * [`PeriodicShiftAction`]: `Z` acting by translation on a periodic graph with
//!   vertex set `V0 × Z`, whose edges are licensed per template pair either by a
//!   finite set of offsets or by the marker `ALL_NONZERO`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graphs::{enumerate_cliques, Clique, GraphFile, SimpleGraph};

/// Default bound on the order of a finite acting group.
pub const DEFAULT_ELEMENT_CAP: usize = 10080;

/// A permutation of `0..n`, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::domain(format!("not a bijection: {images:?}")));
            }
        }
        Ok(Permutation(images))
    }

    /// Transposition of `a` and `b` on `0..n`.
    pub fn swap(n: usize, a: usize, b: usize) -> Self {
        let mut p: Vec<usize> = (0..n).collect();
        p.swap(a, b);
        Permutation(p)
    }

    /// Cyclic shift `i ↦ i + 1 mod n`.
    pub fn rotation(n: usize) -> Self {
        Permutation((0..n).map(|i| (i + 1) % n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Sorted image of a clique.
    pub fn image_of(&self, clique: &Clique) -> Clique {
        Clique::from_unsorted(clique.vertices().iter().map(|&v| self.0[v]).collect())
    }

    pub fn is_automorphism_of(&self, graph: &SimpleGraph) -> bool {
        self.0.len() == graph.vertex_count()
            && graph.edges().all(|(u, v)| graph.is_edge(self.0[u], self.0[v]))
    }
}

/// A finite group acting on a finite graph by automorphisms.
#[derive(Clone, Debug)]
pub struct FinitePermAction {
    graph: SimpleGraph,
    generators: Vec<Permutation>,
    element_cap: usize,
    elements: Vec<Permutation>,
    /// `words[k]` is a word in generator indices whose product is `elements[k]`.
    words: Vec<Vec<usize>>,
}

impl FinitePermAction {
    /// Validates the generators and enumerates the generated group.
    ///
    /// Fails with a resource error once the closure exceeds `element_cap`.
    pub fn new(graph: SimpleGraph, generators: Vec<Permutation>, element_cap: usize) -> Result<Self> {
        if element_cap == 0 {
            return Err(Error::domain("element_cap is a positive integer"));
        }
        for (k, g) in generators.iter().enumerate() {
            if g.len() != graph.vertex_count() {
                return Err(Error::domain(format!(
                    "generator {k} acts on {} points but the graph has {} vertices",
                    g.len(),
                    graph.vertex_count()
                )));
            }
            if !g.is_automorphism_of(&graph) {
                return Err(Error::domain(format!(
                    "each generator maps edges to edges: generator {k} is not a graph automorphism"
                )));
            }
        }
        let (elements, words) = closure(graph.vertex_count(), &generators, element_cap)?;
        Ok(FinitePermAction { graph, generators, element_cap, elements, words })
    }

    /// The trivial group acting on `graph`.
    pub fn trivial(graph: SimpleGraph) -> Self {
        Self::new(graph, Vec::new(), 1).expect("trivial action is valid")
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn element_cap(&self) -> usize {
        self.element_cap
    }

    /// All group elements in breadth-first order, identity first.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// A generator word for `elements()[k]`.
    pub fn word_of(&self, k: usize) -> &[usize] {
        &self.words[k]
    }

    /// Orbit of a clique as a sorted set of sorted cliques.
    pub fn clique_orbit(&self, clique: &Clique) -> BTreeSet<Clique> {
        self.elements.iter().map(|g| g.image_of(clique)).collect()
    }

    fn orbits(&self, p: usize) -> CliqueOrbitReport {
        let mut assigned: HashSet<Clique> = HashSet::new();
        let mut representatives = Vec::new();
        let mut stabilizers = Vec::new();
        for c in enumerate_cliques(&self.graph, p) {
            if assigned.contains(&c) {
                continue;
            }
            // Lexicographic enumeration reaches each orbit at its least member.
            assigned.extend(self.clique_orbit(&c));
            stabilizers.push(self.stabilizer(&c));
            representatives.push(OrbitRep::Finite(c));
        }
        CliqueOrbitReport {
            clique_size: p,
            orbit_count: OrbitCount::Finite(representatives.len()),
            representatives,
            stabilizers,
            exhaustive: true,
        }
    }

    fn stabilizer(&self, clique: &Clique) -> Stabilizer {
        let members: Vec<&Permutation> =
            self.elements.iter().filter(|g| &g.image_of(clique) == clique).collect();
        if members.len() == 1 {
            return Stabilizer::Trivial;
        }
        let n = self.graph.vertex_count();
        let mut generators: Vec<Permutation> = Vec::new();
        let mut span: HashSet<Permutation> = HashSet::from([Permutation::identity(n)]);
        for g in members.iter().skip(1) {
            if span.contains(*g) {
                continue;
            }
            generators.push((*g).clone());
            let (elements, _) = closure(n, &generators, usize::MAX).expect("uncapped closure");
            span = elements.into_iter().collect();
        }
        Stabilizer::Finite { order: members.len(), generators }
    }
}

/// Breadth-first closure of the subgroup generated by `generators`.
fn closure(
    n: usize,
    generators: &[Permutation],
    cap: usize,
) -> Result<(Vec<Permutation>, Vec<Vec<usize>>)> {
    let id = Permutation::identity(n);
    let mut elements = vec![id.clone()];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut seen: HashMap<Permutation, usize> = HashMap::from([(id, 0)]);
    let mut head = 0;
    while head < elements.len() {
        for (k, g) in generators.iter().enumerate() {
            let next = elements[head].compose(g);
            if seen.contains_key(&next) {
                continue;
            }
            if elements.len() >= cap {
                return Err(Error::resource(format!(
                    "closure enumeration of the generated group exceeds element_cap = {cap}"
                )));
            }
            let mut w = words[head].clone();
            w.push(k);
            seen.insert(next.clone(), elements.len());
            elements.push(next);
            words.push(w);
        }
        head += 1;
    }
    Ok((elements, words))
}

/// Licensed offsets for one template pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OffsetSet {
    Finite(BTreeSet<i64>),
    AllNonzero,
}

/// A vertex `(v, i)` of a periodic graph `V0 × Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShiftVertex {
    pub template: usize,
    pub pos: i64,
}

/// A finite clique of a periodic graph, members sorted by `(template, pos)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShiftClique(Vec<ShiftVertex>);

impl ShiftClique {
    pub fn new(mut members: Vec<ShiftVertex>) -> Self {
        members.sort_unstable();
        members.dedup();
        ShiftClique(members)
    }

    pub fn members(&self) -> &[ShiftVertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn translate(&self, by: i64) -> ShiftClique {
        ShiftClique(self.0.iter().map(|v| ShiftVertex { template: v.template, pos: v.pos + by }).collect())
    }

    /// The orbit representative: translated so the least position is 0.
    pub fn normalized(&self) -> ShiftClique {
        let min = self.0.iter().map(|v| v.pos).min().unwrap_or(0);
        self.translate(-min)
    }
}

/// `Z` acting by translation on a periodic graph with vertex set `V0 × Z`.
///
/// For a template pair `u ≤ v` (template order) with offset set `S`, the
/// vertices `(u, i)` and `(v, j)` are adjacent iff `j − i ∈ S`; for `u = v`
/// the offset is taken up to sign and 0 is never licensed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicShiftAction {
    template: Vec<String>,
    offsets: BTreeMap<(usize, usize), OffsetSet>,
}

impl PeriodicShiftAction {
    /// Pairs in `offsets` are keyed `(u, v)` with `u ≤ v`. Self-pair offset
    /// sets are stored by absolute value and must not contain 0.
    pub fn new(template: Vec<String>, offsets: BTreeMap<(usize, usize), OffsetSet>) -> Result<Self> {
        if template.is_empty() {
            return Err(Error::domain("template_vertices must be non-empty"));
        }
        let unique: HashSet<&String> = template.iter().collect();
        if unique.len() != template.len() {
            return Err(Error::domain("duplicate template vertex"));
        }
        let mut normalized = BTreeMap::new();
        for ((u, v), set) in offsets {
            if u > v || v >= template.len() {
                return Err(Error::domain(format!(
                    "offset keys use sorted pair encoding over the template: ({u},{v})"
                )));
            }
            let set = match set {
                OffsetSet::AllNonzero => OffsetSet::AllNonzero,
                OffsetSet::Finite(s) if u == v => {
                    if s.contains(&0) {
                        return Err(Error::domain(format!(
                            "self-pairs exclude offset 0: {}|{}",
                            template[u], template[v]
                        )));
                    }
                    OffsetSet::Finite(s.into_iter().map(i64::abs).collect())
                }
                other => other,
            };
            let empty = matches!(&set, OffsetSet::Finite(s) if s.is_empty());
            if !empty {
                normalized.insert((u, v), set);
            }
        }
        Ok(PeriodicShiftAction { template, offsets: normalized })
    }

    /// One template vertex per name, edges given as `(a, b, offsets)`.
    pub fn from_names(template: &[&str], pairs: &[(&str, &str, OffsetSet)]) -> Result<Self> {
        let names: Vec<String> = template.iter().map(|s| s.to_string()).collect();
        let mut offsets = BTreeMap::new();
        for (a, b, set) in pairs {
            let u = template
                .iter()
                .position(|x| x == a)
                .ok_or_else(|| Error::domain(format!("unknown template vertex {a:?}")))?;
            let v = template
                .iter()
                .position(|x| x == b)
                .ok_or_else(|| Error::domain(format!("unknown template vertex {b:?}")))?;
            let (key, set) = if u <= v { ((u, v), set.clone()) } else { ((v, u), negate(set)) };
            offsets.insert(key, set);
        }
        Self::new(names, offsets)
    }

    /// `Z` acting on itself with the empty graph.
    pub fn edgeless_line() -> Self {
        Self::new(vec!["v".into()], BTreeMap::new()).expect("valid")
    }

    /// The complete graph on the regular `Z`-set: the classical wreath case.
    pub fn complete_line() -> Self {
        Self::new(vec!["v".into()], BTreeMap::from([((0, 0), OffsetSet::AllNonzero)])).expect("valid")
    }

    pub fn template(&self) -> &[String] {
        &self.template
    }

    pub fn offsets(&self) -> &BTreeMap<(usize, usize), OffsetSet> {
        &self.offsets
    }

    pub fn has_all_nonzero(&self) -> bool {
        self.offsets.values().any(|s| *s == OffsetSet::AllNonzero)
    }

    /// Largest absolute finite offset, 0 if there is none.
    pub fn span(&self) -> i64 {
        self.offsets
            .values()
            .filter_map(|s| match s {
                OffsetSet::Finite(s) => s.iter().map(|d| d.abs()).max(),
                OffsetSet::AllNonzero => None,
            })
            .max()
            .unwrap_or(0)
    }

    fn pair_type(&self, a: ShiftVertex, b: ShiftVertex) -> Option<(&OffsetSet, i64)> {
        let (x, y) = if a.template <= b.template { (a, b) } else { (b, a) };
        let d = y.pos - x.pos;
        self.offsets.get(&(x.template, y.template)).map(|s| (s, d))
    }

    pub fn is_edge(&self, a: ShiftVertex, b: ShiftVertex) -> bool {
        if a == b {
            return false;
        }
        match self.pair_type(a, b) {
            None => false,
            Some((OffsetSet::AllNonzero, d)) => d != 0,
            Some((OffsetSet::Finite(s), d)) => {
                if a.template == b.template {
                    s.contains(&d.abs())
                } else {
                    s.contains(&d)
                }
            }
        }
    }

    /// Whether an adjacent pair is licensed by a finite offset set.
    fn finitely_licensed(&self, a: ShiftVertex, b: ShiftVertex) -> bool {
        matches!(self.pair_type(a, b), Some((OffsetSet::Finite(_), _)))
    }

    /// Neighbours `(w, d)` of `(v, 0)` with `0 ≤ d ≤ window`, read off the
    /// offset tables.
    fn forward_neighbours(&self, v: usize, window: i64) -> Vec<ShiftVertex> {
        let mut out = BTreeSet::new();
        for (&(a, b), set) in &self.offsets {
            // Offsets d such that (v,0) ~ (other, d).
            let (other, signs): (usize, &[i64]) = if a == v && b == v {
                (v, &[1, -1])
            } else if a == v {
                (b, &[1])
            } else if b == v {
                (a, &[-1])
            } else {
                continue;
            };
            match set {
                OffsetSet::Finite(s) => {
                    for &d in s {
                        for &sign in signs {
                            let pos = sign * d;
                            if (0..=window).contains(&pos) {
                                out.insert(ShiftVertex { template: other, pos });
                            }
                        }
                    }
                }
                OffsetSet::AllNonzero => {
                    for pos in 1..=window {
                        out.insert(ShiftVertex { template: other, pos });
                    }
                }
            }
        }
        out.into_iter().collect()
    }

    /// Every clique of size `p` whose least position is 0 and whose positions
    /// stay within `[0, window]`, generated from the offset tables by ordered
    /// extension in `(pos, template)` order.
    fn origin_cliques(&self, p: usize, window: i64) -> Vec<ShiftClique> {
        let key = |x: &ShiftVertex| (x.pos, x.template);
        let mut out = Vec::new();
        for v in 0..self.template.len() {
            let start = ShiftVertex { template: v, pos: 0 };
            if p == 1 {
                out.push(ShiftClique::new(vec![start]));
                continue;
            }
            let mut candidates: Vec<ShiftVertex> = self
                .forward_neighbours(v, window)
                .into_iter()
                .filter(|x| key(x) > key(&start))
                .collect();
            candidates.sort_by_key(key);
            let mut current = vec![start];
            self.extend(p, &mut current, &candidates, &mut out);
        }
        out.sort();
        out
    }

    fn extend(
        &self,
        p: usize,
        current: &mut Vec<ShiftVertex>,
        candidates: &[ShiftVertex],
        out: &mut Vec<ShiftClique>,
    ) {
        if current.len() == p {
            out.push(ShiftClique::new(current.clone()));
            return;
        }
        for (i, &x) in candidates.iter().enumerate() {
            if candidates.len() - i < p - current.len() {
                break;
            }
            let next: Vec<ShiftVertex> =
                candidates[i + 1..].iter().copied().filter(|&y| self.is_edge(x, y)).collect();
            current.push(x);
            self.extend(p, current, &next, out);
            current.pop();
        }
    }

    /// Whether the clique's finitely-licensed pairs fail to connect it.
    fn splits(&self, clique: &ShiftClique) -> bool {
        let m = clique.members();
        if m.len() < 2 {
            return false;
        }
        let mut seen = vec![false; m.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..m.len() {
                if !seen[j] && self.finitely_licensed(m[i], m[j]) {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.contains(&false)
    }

    fn orbits(&self, p: usize) -> CliqueOrbitReport {
        let s = self.span();
        let bounded_window = (p as i64 - 1) * s;
        if self.has_all_nonzero() && p >= 2 {
            // A clique whose finitely-licensed pairs split it into several
            // blocks can have its blocks pulled arbitrarily far apart, giving
            // infinitely many orbits. If such a clique exists, one exists with
            // the blocks packed into [0, p(s+1)].
            let wide = p as i64 * (s + 1);
            let sample = self.origin_cliques(p, wide);
            if sample.iter().any(|c| self.splits(c)) {
                let stabilizers = vec![Stabilizer::Trivial; sample.len()];
                return CliqueOrbitReport {
                    clique_size: p,
                    orbit_count: OrbitCount::Infinite,
                    representatives: sample.into_iter().map(OrbitRep::Shift).collect(),
                    stabilizers,
                    exhaustive: false,
                };
            }
        }
        // Every clique is connected by finitely-licensed pairs, so its
        // diameter is at most (p−1)·span.
        let reps = self.origin_cliques(p, bounded_window);
        CliqueOrbitReport {
            clique_size: p,
            orbit_count: OrbitCount::Finite(reps.len()),
            stabilizers: vec![Stabilizer::Trivial; reps.len()],
            representatives: reps.into_iter().map(OrbitRep::Shift).collect(),
            exhaustive: true,
        }
    }

    pub fn is_clique(&self, clique: &ShiftClique) -> bool {
        let m = clique.members();
        (0..m.len()).all(|i| (i + 1..m.len()).all(|j| self.is_edge(m[i], m[j])))
    }

    pub fn format_vertex(&self, v: ShiftVertex) -> String {
        format!("({},{})", self.template[v.template], v.pos)
    }

    pub fn format_clique(&self, c: &ShiftClique) -> String {
        let parts: Vec<String> = c.members().iter().map(|&v| self.format_vertex(v)).collect();
        format!("{{{}}}", parts.join(","))
    }
}

fn negate(set: &OffsetSet) -> OffsetSet {
    match set {
        OffsetSet::AllNonzero => OffsetSet::AllNonzero,
        OffsetSet::Finite(s) => OffsetSet::Finite(s.iter().map(|d| -d).collect()),
    }
}

/// Either action backend.
#[derive(Clone, Debug)]
pub enum Action {
    Finite(FinitePermAction),
    Shift(PeriodicShiftAction),
}

/// Number of orbits, possibly infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OrbitCount {
    Finite(usize),
    Infinite,
}

impl OrbitCount {
    pub fn is_finite(&self) -> bool {
        matches!(self, OrbitCount::Finite(_))
    }
}

impl fmt::Display for OrbitCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitCount::Finite(k) => write!(f, "{k}"),
            OrbitCount::Infinite => write!(f, "INFINITE"),
        }
    }
}

/// Setwise stabilizer of a clique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stabilizer {
    Trivial,
    /// A finite subgroup of a [`FinitePermAction`], given by generators.
    Finite { order: usize, generators: Vec<Permutation> },
    /// The subgroup `dZ` of `Z`.
    FiniteIndexZ { index: u64 },
}

impl fmt::Display for Stabilizer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stabilizer::Trivial => write!(f, "trivial"),
            Stabilizer::Finite { order, generators } => {
                write!(f, "finite of order {order} with {} generator(s)", generators.len())
            }
            Stabilizer::FiniteIndexZ { index } => write!(f, "{index}Z"),
        }
    }
}

/// A canonical orbit representative from either backend.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OrbitRep {
    Finite(Clique),
    Shift(ShiftClique),
}

/// Orbit decomposition of the `p`-cliques under an action.
#[derive(Clone, Debug)]
pub struct CliqueOrbitReport {
    pub clique_size: usize,
    pub orbit_count: OrbitCount,
    /// One canonical representative per orbit; when the count is infinite this
    /// is a finite sample of distinct orbits and `exhaustive` is false.
    pub representatives: Vec<OrbitRep>,
    /// Stabilizer of each representative, in the same order.
    pub stabilizers: Vec<Stabilizer>,
    pub exhaustive: bool,
}

/// Orbits of `p`-cliques with canonical representatives and stabilizers.
pub fn clique_orbits(action: &Action, p: usize) -> Result<CliqueOrbitReport> {
    if p == 0 {
        return Err(Error::domain("p ≥ 1 for clique orbits"));
    }
    Ok(match action {
        Action::Finite(a) => a.orbits(p),
        Action::Shift(a) => a.orbits(p),
    })
}

/// Setwise stabilizer of `clique`, which must be a clique of the action's graph.
pub fn stabilizer_of_clique(action: &Action, clique: &OrbitRep) -> Result<Stabilizer> {
    match (action, clique) {
        (Action::Finite(a), OrbitRep::Finite(c)) => {
            if !a.graph.is_clique(c.vertices()) {
                return Err(Error::domain(format!(
                    "clique is a clique of the action's graph: {} is not",
                    a.graph.format_clique(c)
                )));
            }
            Ok(a.stabilizer(c))
        }
        (Action::Shift(a), OrbitRep::Shift(c)) => {
            if c.is_empty() || !a.is_clique(c) {
                return Err(Error::domain("clique is a clique of the action's graph"));
            }
            // A nonzero translation moves every finite vertex set.
            Ok(Stabilizer::Trivial)
        }
        _ => Err(Error::domain("clique and action come from different backends")),
    }
}

/// True iff there are finitely many orbits of `p`-cliques for `1 ≤ p ≤ k+1`.
pub fn cocompact_skeleton(action: &Action, k: usize) -> Result<bool> {
    for p in 1..=k + 1 {
        if !clique_orbits(action, p)?.orbit_count.is_finite() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An upper bound on clique sizes, beyond which there are no cliques at all.
pub fn clique_size_bound(action: &Action) -> Option<usize> {
    match action {
        Action::Finite(a) => Some(a.graph.clique_number()),
        Action::Shift(a) => {
            if a.has_all_nonzero() {
                // Cliques of the complete graph on Z are unbounded; with
                // only mixed-template ALL_NONZERO pairs, sizes can still grow.
                None
            } else {
                // A clique spans at most `span` consecutive positions.
                Some(a.template.len() * (a.span() as usize + 1))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// File format

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum ActionFile {
    FinitePerm {
        graph: GraphFile,
        generators: Vec<BTreeMap<String, String>>,
        #[serde(default)]
        element_cap: Option<usize>,
    },
    PeriodicShift {
        template: Vec<String>,
        offsets: BTreeMap<String, OffsetValue>,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum OffsetValue {
    Finite(Vec<i64>),
    Marker(String),
}

impl Action {
    /// Parses the action file format. `default_cap` applies when the file
    /// does not set `element_cap`.
    pub fn from_json(text: &str, default_cap: usize) -> Result<Self> {
        let file: ActionFile = serde_json::from_str(text)?;
        match file {
            ActionFile::FinitePerm { graph, generators, element_cap } => {
                let graph = SimpleGraph::try_from(graph)?;
                let n = graph.vertex_count();
                let mut perms = Vec::with_capacity(generators.len());
                for map in generators {
                    let mut images: Vec<usize> = (0..n).collect();
                    for (from, to) in &map {
                        let a = graph
                            .vertex_index(from)
                            .ok_or_else(|| Error::parse(format!("generator names unknown vertex {from:?}")))?;
                        let b = graph
                            .vertex_index(to)
                            .ok_or_else(|| Error::parse(format!("generator names unknown vertex {to:?}")))?;
                        images[a] = b;
                    }
                    perms.push(Permutation::new(images).map_err(|e| Error::parse(e.to_string()))?);
                }
                Ok(Action::Finite(FinitePermAction::new(graph, perms, element_cap.unwrap_or(default_cap))?))
            }
            ActionFile::PeriodicShift { template, offsets } => {
                let index: HashMap<&str, usize> =
                    template.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
                let mut parsed = BTreeMap::new();
                for (key, value) in offsets {
                    let (a, b) = key
                        .split_once('|')
                        .ok_or_else(|| Error::parse(format!("offset key {key:?} is not of the form \"x|y\"")))?;
                    let u = *index.get(a).ok_or_else(|| Error::parse(format!("unknown template vertex {a:?}")))?;
                    let v = *index.get(b).ok_or_else(|| Error::parse(format!("unknown template vertex {b:?}")))?;
                    if u > v {
                        return Err(Error::parse(format!(
                            "offset keys use sorted \"x|y\" pair encoding: {key:?}"
                        )));
                    }
                    let set = match value {
                        OffsetValue::Finite(ds) => OffsetSet::Finite(ds.into_iter().collect()),
                        OffsetValue::Marker(m) if m == "ALL_NONZERO" => OffsetSet::AllNonzero,
                        OffsetValue::Marker(m) => {
                            return Err(Error::parse(format!("unknown offset marker {m:?}")))
                        }
                    };
                    parsed.insert((u, v), set);
                }
                Ok(Action::Shift(PeriodicShiftAction::new(template, parsed)?))
            }
        }
    }

    pub fn format_rep(&self, rep: &OrbitRep) -> String {
        match (self, rep) {
            (Action::Finite(a), OrbitRep::Finite(c)) => a.graph.format_clique(c),
            (Action::Shift(a), OrbitRep::Shift(c)) => a.format_clique(c),
            (_, OrbitRep::Finite(c)) => c.to_string(),
            (_, OrbitRep::Shift(c)) => format!("{c:?}"),
        }
    }

    /// Parses a clique given by vertex names (`"a"`) or, for shifts, `"u,3"`.
    pub fn parse_clique(&self, names: &[String]) -> Result<OrbitRep> {
        match self {
            Action::Finite(a) => {
                let mut idx = Vec::with_capacity(names.len());
                for n in names {
                    idx.push(
                        a.graph
                            .vertex_index(n)
                            .ok_or_else(|| Error::parse(format!("unknown vertex {n:?}")))?,
                    );
                }
                Ok(OrbitRep::Finite(Clique::from_unsorted(idx)))
            }
            Action::Shift(a) => {
                let mut members = Vec::with_capacity(names.len());
                for n in names {
                    let (v, i) = n
                        .split_once(',')
                        .ok_or_else(|| Error::parse(format!("shift vertex {n:?} is not of the form \"v,i\"")))?;
                    let template = a
                        .template
                        .iter()
                        .position(|t| t == v)
                        .ok_or_else(|| Error::parse(format!("unknown template vertex {v:?}")))?;
                    let pos: i64 = i.trim().parse().map_err(|_| Error::parse(format!("bad position in {n:?}")))?;
                    members.push(ShiftVertex { template, pos });
                }
                Ok(OrbitRep::Shift(ShiftClique::new(members)))
            }
        }
    }

    pub fn report_json(&self, report: &CliqueOrbitReport) -> Value {
        let reps: Vec<Value> = report
            .representatives
            .iter()
            .zip(&report.stabilizers)
            .map(|(r, s)| json!({ "clique": self.format_rep(r), "stabilizer": self.stabilizer_json(s) }))
            .collect();
        let count = match report.orbit_count {
            OrbitCount::Finite(k) => json!(k),
            OrbitCount::Infinite => json!("INFINITE"),
        };
        json!({
            "p": report.clique_size,
            "orbit_count": count,
            "exhaustive": report.exhaustive,
            "representatives": reps,
        })
    }

    pub fn stabilizer_json(&self, s: &Stabilizer) -> Value {
        match s {
            Stabilizer::Trivial => json!({ "kind": "trivial" }),
            Stabilizer::FiniteIndexZ { index } => json!({ "kind": "finite_index_z", "index": index }),
            Stabilizer::Finite { order, generators } => {
                let gens: Vec<Value> = generators
                    .iter()
                    .map(|g| match self {
                        Action::Finite(a) => {
                            let map: BTreeMap<&str, &str> = g
                                .images()
                                .iter()
                                .enumerate()
                                .filter(|(i, x)| i != *x)
                                .map(|(i, &x)| (a.graph.name(i), a.graph.name(x)))
                                .collect();
                            json!(map)
                        }
                        Action::Shift(_) => json!(g.images()),
                    })
                    .collect();
                json!({ "kind": "finite", "order": order, "generators": gens })
            }
        }
    }
}
