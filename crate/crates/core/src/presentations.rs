//! Finite presentations of graph products and graph-wreath products, and
//! their abelianizations.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::actions::{clique_orbits, Action, OrbitCount, OrbitRep, Permutation, ShiftVertex};
use crate::error::{Error, Result};
use crate::graphs::SimpleGraph;
use crate::homology::{HomologyGroup, IntMatrix};

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize) -> Self {
        Letter { gen, inverse: false }
    }

    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

pub type Word = Vec<Letter>;

/// Cancels adjacent inverse pairs until none remain.
pub fn free_reduce(word: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn inverse_word(word: &[Letter]) -> Word {
    word.iter().rev().map(|l| l.inv()).collect()
}

/// `x y x⁻¹ y⁻¹`.
pub fn commutator(x: &[Letter], y: &[Letter]) -> Word {
    let mut w = x.to_vec();
    w.extend_from_slice(y);
    w.extend(inverse_word(x));
    w.extend(inverse_word(y));
    free_reduce(&w)
}

/// Where a presentation came from and what it takes on trust.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub construction: String,
    pub assumptions: Vec<String>,
}

/// A finite presentation with freely reduced, non-empty relators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
    provenance: Option<Provenance>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let unique: BTreeSet<&String> = generators.iter().collect();
        if unique.len() != generators.len() {
            return Err(Error::domain("generator symbols are distinct"));
        }
        for r in &relators {
            if let Some(l) = r.iter().find(|l| l.gen >= generators.len()) {
                return Err(Error::domain(format!(
                    "relator symbols drawn from generators: index {} out of range",
                    l.gen
                )));
            }
        }
        let relators = relators.iter().map(|r| free_reduce(r)).filter(|r| !r.is_empty()).collect();
        Ok(Presentation { generators, relators, provenance: None })
    }

    /// Free group on the given symbols.
    pub fn free(names: &[&str]) -> Self {
        Self::new(names.iter().map(|s| s.to_string()).collect(), Vec::new()).expect("valid")
    }

    /// `⟨name | name^order⟩`; order 0 gives `Z`.
    pub fn cyclic(name: &str, order: usize) -> Self {
        let relators = if order == 0 { Vec::new() } else { vec![vec![Letter::new(0); order]] };
        Self::new(vec![name.to_string()], relators).expect("valid")
    }

    pub fn trivial() -> Self {
        Self::new(Vec::new(), Vec::new()).expect("valid")
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = Some(provenance);
        self
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Parses symbols such as `"a"` and `"a^-1"`.
    pub fn parse_word(&self, symbols: &[String]) -> Result<Word> {
        symbols
            .iter()
            .map(|s| {
                let (name, inverse) = match s.strip_suffix("^-1") {
                    Some(base) => (base, true),
                    None => (s.as_str(), false),
                };
                let gen = self.generator_index(name).ok_or_else(|| {
                    Error::parse(format!("relator symbols drawn from generators: unknown symbol {s:?}"))
                })?;
                Ok(Letter { gen, inverse })
            })
            .collect()
    }

    pub fn format_word(&self, word: &[Letter]) -> Vec<String> {
        word.iter()
            .map(|l| {
                let name = &self.generators[l.gen];
                if l.inverse {
                    format!("{name}^-1")
                } else {
                    name.clone()
                }
            })
            .collect()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct PresentationFile {
            generators: Vec<String>,
            #[serde(default)]
            relators: Vec<Vec<String>>,
        }
        let file: PresentationFile = serde_json::from_str(text)?;
        let bare = Presentation::new(file.generators, Vec::new()).map_err(|e| Error::parse(e.to_string()))?;
        let relators = file.relators.iter().map(|r| bare.parse_word(r)).collect::<Result<Vec<_>>>()?;
        Presentation::new(bare.generators, relators)
    }

    pub fn to_json(&self) -> Value {
        let relators: Vec<Vec<String>> = self.relators.iter().map(|r| self.format_word(r)).collect();
        let mut v = json!({ "generators": self.generators, "relators": relators });
        if let Some(p) = &self.provenance {
            v["provenance"] = json!(p);
        }
        v
    }

    /// Exponent sums: row per generator, column per relator.
    pub fn relation_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.generators.len(), self.relators.len());
        for (j, r) in self.relators.iter().enumerate() {
            for l in r {
                m[(l.gen, j)] += l.exponent();
            }
        }
        m
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r).join(" ")).collect();
        write!(f, "< {} | {} >", self.generators.join(", "), rels.join(", "))
    }
}

/// Copies `A`'s generators under a suffix and rewrites a word accordingly.
fn shift_word(word: &[Letter], offset: usize) -> Word {
    word.iter().map(|l| Letter { gen: l.gen + offset, inverse: l.inverse }).collect()
}

/// The graph product of copies of `A` over the vertices of `Γ`.
pub fn graph_product_presentation(graph: &SimpleGraph, a: &Presentation) -> Result<Presentation> {
    let k = a.generators.len();
    let mut generators = Vec::with_capacity(k * graph.vertex_count());
    for v in 0..graph.vertex_count() {
        for g in &a.generators {
            generators.push(format!("{g}_{}", graph.name(v)));
        }
    }
    let mut relators = Vec::new();
    for v in 0..graph.vertex_count() {
        for r in &a.relators {
            relators.push(shift_word(r, v * k));
        }
    }
    for (u, v) in graph.edges() {
        for i in 0..k {
            for j in 0..k {
                relators.push(commutator(&[Letter::new(u * k + i)], &[Letter::new(v * k + j)]));
            }
        }
    }
    Ok(Presentation::new(generators, relators)?.with_provenance(Provenance {
        construction: "graph product: vertex copies of A, commuting across edges".into(),
        assumptions: Vec::new(),
    }))
}

/// Orbit data needed for the wreath relator schema, abstracted over backends.
struct OrbitData {
    /// Name used to suffix the copy of `A` at each representative.
    rep_names: Vec<String>,
    /// Stabilizer generating words (in `H`'s generators) per representative.
    stabilizers: Vec<Vec<Word>>,
    /// `(rep_index_1, rep_index_2, w)` per edge orbit.
    edges: Vec<(usize, usize, Word)>,
}

fn finite_orbit_data(
    action: &crate::actions::FinitePermAction,
    h: &Presentation,
    supplied: Option<&[Vec<Word>]>,
) -> Result<(OrbitData, Vec<String>)> {
    let graph = action.graph();
    let gens = action.generators();
    if gens.len() != h.generators.len() {
        return Err(Error::domain(format!(
            "H's generators act as the action's generators: H has {} generators, the action {}",
            h.generators.len(),
            gens.len()
        )));
    }
    let n = graph.vertex_count();
    for r in &h.relators {
        if !evaluate(r, gens, n).is_identity() {
            return Err(Error::domain(format!(
                "H-relators act trivially on the graph: {} does not",
                h.format_word(r).join(" ")
            )));
        }
    }
    // Breadth-first transversal: word[x] maps the orbit representative to x.
    let mut rep_of: Vec<Option<usize>> = vec![None; n];
    let mut transversal: Vec<Word> = vec![Vec::new(); n];
    let mut reps: Vec<usize> = Vec::new();
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if rep_of[start].is_some() {
            continue;
        }
        let idx = reps.len();
        reps.push(start);
        rep_of[start] = Some(idx);
        let mut members = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for (k, g) in gens.iter().enumerate() {
                let y = g.apply(x);
                if rep_of[y].is_none() {
                    rep_of[y] = Some(idx);
                    let mut w = vec![Letter::new(k)];
                    w.extend_from_slice(&transversal[x]);
                    transversal[y] = w;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        orbits.push(members);
    }
    let mut assumptions = Vec::new();
    let stabilizers = match supplied {
        Some(words) => {
            check_supplied(words, reps.len())?;
            for (i, ws) in words.iter().enumerate() {
                for w in ws {
                    if evaluate(w, gens, n).apply(reps[i]) != reps[i] {
                        return Err(Error::domain(format!(
                            "stabilizer words fix the representative vertex: {} moves {}",
                            h.format_word(w).join(" "),
                            graph.name(reps[i])
                        )));
                    }
                }
            }
            assumptions.push("supplied stabilizer words generate the vertex stabilizers".into());
            words.to_vec()
        }
        None => orbits
            .iter()
            .map(|members| {
                // Schreier generators u_{g·x}⁻¹ g u_x.
                let mut out: Vec<Word> = Vec::new();
                let mut seen = BTreeSet::new();
                for &x in members {
                    for (k, g) in gens.iter().enumerate() {
                        let y = g.apply(x);
                        let mut w = inverse_word(&transversal[y]);
                        w.push(Letter::new(k));
                        w.extend_from_slice(&transversal[x]);
                        let w = free_reduce(&w);
                        if !w.is_empty() && seen.insert(w.clone()) {
                            out.push(w);
                        }
                    }
                }
                out
            })
            .collect(),
    };
    let mut edges = Vec::new();
    let report = clique_orbits(&Action::Finite(action.clone()), 2)?;
    for rep in &report.representatives {
        let OrbitRep::Finite(c) = rep else { unreachable!("finite backend") };
        let (x, y) = (c.vertices()[0], c.vertices()[1]);
        let (i, j) = (rep_of[x].expect("assigned"), rep_of[y].expect("assigned"));
        let mut w = inverse_word(&transversal[x]);
        w.extend_from_slice(&transversal[y]);
        edges.push((i, j, free_reduce(&w)));
    }
    let rep_names = reps.iter().map(|&v| graph.name(v).to_string()).collect();
    Ok((OrbitData { rep_names, stabilizers, edges }, assumptions))
}

fn shift_orbit_data(
    action: &crate::actions::PeriodicShiftAction,
    h: &Presentation,
    supplied: Option<&[Vec<Word>]>,
) -> Result<(OrbitData, Vec<String>)> {
    if h.generators.len() != 1 {
        return Err(Error::domain(format!(
            "H's generators act as the action's generators: a shift action has one generator, H has {}",
            h.generators.len()
        )));
    }
    for r in &h.relators {
        if r.iter().map(|l| l.exponent()).sum::<i64>() != 0 {
            return Err(Error::domain(format!(
                "H-relators act trivially on the graph: {} does not",
                h.format_word(r).join(" ")
            )));
        }
    }
    let reps = action.template().len();
    let mut assumptions = Vec::new();
    let stabilizers = match supplied {
        Some(words) => {
            check_supplied(words, reps)?;
            for w in words.iter().flatten() {
                if w.iter().map(|l| l.exponent()).sum::<i64>() != 0 {
                    return Err(Error::domain(format!(
                        "stabilizer words fix the representative vertex: {} does not",
                        h.format_word(w).join(" ")
                    )));
                }
            }
            assumptions.push("supplied stabilizer words generate the vertex stabilizers".into());
            words.to_vec()
        }
        // Translations act freely.
        None => vec![Vec::new(); reps],
    };
    let report = clique_orbits(&Action::Shift(action.clone()), 2)?;
    if report.orbit_count == OrbitCount::Infinite {
        return Err(Error::domain(
            "finitely many orbits of vertices and edges (Theorem 2.4): the action has infinitely many edge orbits",
        ));
    }
    let mut edges = Vec::new();
    for rep in &report.representatives {
        let OrbitRep::Shift(c) = rep else { unreachable!("shift backend") };
        let [x, y]: [ShiftVertex; 2] = c.members().try_into().expect("edge");
        let d = y.pos - x.pos;
        let letter = if d >= 0 { Letter::new(0) } else { Letter::new(0).inv() };
        edges.push((x.template, y.template, vec![letter; d.unsigned_abs() as usize]));
    }
    Ok((OrbitData { rep_names: action.template().to_vec(), stabilizers, edges }, assumptions))
}

fn check_supplied(words: &[Vec<Word>], reps: usize) -> Result<()> {
    if words.len() != reps {
        return Err(Error::domain(format!(
            "stabilizer generator words per vertex-orbit representative: expected {reps} lists, got {}",
            words.len()
        )));
    }
    Ok(())
}

/// The permutation represented by a word in the action's generators.
fn evaluate(word: &[Letter], gens: &[Permutation], n: usize) -> Permutation {
    let mut p = Permutation::identity(n);
    for l in word {
        let g = if l.inverse { gens[l.gen].inverse() } else { gens[l.gen].clone() };
        p = p.compose(&g);
    }
    p
}

/// A presentation of `A ≀_Γ H`.
///
/// `H`'s generators act as the action's generators, in order (a shift action
/// has the single generator `t: (v, i) ↦ (v, i+1)`). Stabilizer generators
/// are computed by Schreier's lemma unless `stabilizer_words` supplies one
/// list per vertex-orbit representative; supplied words are checked to fix
/// their representative and their generation is recorded as an assumption.
pub fn graph_wreath_presentation(
    action: &Action,
    a: &Presentation,
    h: &Presentation,
    stabilizer_words: Option<&[Vec<Word>]>,
) -> Result<Presentation> {
    let (data, assumptions) = match action {
        Action::Finite(f) => finite_orbit_data(f, h, stabilizer_words)?,
        Action::Shift(s) => shift_orbit_data(s, h, stabilizer_words)?,
    };
    let k = a.generators.len();
    let copies = data.rep_names.len() * k;
    let h_letter = |l: &Letter| Letter { gen: l.gen + copies, inverse: l.inverse };
    let h_word = |w: &[Letter]| -> Word { w.iter().map(h_letter).collect() };

    let mut generators = Vec::with_capacity(copies + h.generators.len());
    for name in &data.rep_names {
        for g in &a.generators {
            generators.push(format!("{g}_{name}"));
        }
    }
    generators.extend(h.generators.iter().cloned());

    let mut relators = Vec::new();
    for i in 0..data.rep_names.len() {
        for r in &a.relators {
            relators.push(shift_word(r, i * k));
        }
    }
    relators.extend(h.relators.iter().map(|r| h_word(r)));
    for (i, words) in data.stabilizers.iter().enumerate() {
        for w in words {
            for g in 0..k {
                relators.push(commutator(&[Letter::new(i * k + g)], &h_word(w)));
            }
        }
    }
    for (i, j, w) in &data.edges {
        let w = h_word(w);
        for x in 0..k {
            for y in 0..k {
                let mut conj = w.clone();
                conj.push(Letter::new(j * k + y));
                conj.extend(inverse_word(&w));
                relators.push(commutator(&[Letter::new(i * k + x)], &conj));
            }
        }
    }
    let presentation = Presentation::new(generators, relators)?;
    Ok(presentation.with_provenance(Provenance {
        construction: "graph-wreath product (Theorem 2.4): copies of A at vertex-orbit representatives, \
                       H, stabilizer commutators, edge-orbit commutators"
            .into(),
        assumptions,
    }))
}

/// Parses stabilizer words from `{"rep": [["h", "k^-1"], ...], ...}` keyed by
/// representative name, ordered as the action's vertex-orbit representatives.
pub fn parse_stabilizer_words(action: &Action, h: &Presentation, text: &str) -> Result<Vec<Vec<Word>>> {
    let raw: BTreeMap<String, Vec<Vec<String>>> = serde_json::from_str(text)?;
    let names: Vec<String> = match action {
        Action::Finite(f) => {
            let report = clique_orbits(action, 1)?;
            report
                .representatives
                .iter()
                .map(|r| match r {
                    OrbitRep::Finite(c) => f.graph().name(c.vertices()[0]).to_string(),
                    OrbitRep::Shift(_) => unreachable!("finite backend"),
                })
                .collect()
        }
        Action::Shift(s) => s.template().to_vec(),
    };
    for key in raw.keys() {
        if !names.contains(key) {
            return Err(Error::parse(format!("{key:?} is not a vertex-orbit representative")));
        }
    }
    names
        .iter()
        .map(|n| match raw.get(n) {
            Some(ws) => ws.iter().map(|w| h.parse_word(w)).collect(),
            None => Ok(Vec::new()),
        })
        .collect()
}

/// `Z^n / (relator exponent sums)`.
pub fn abelianization(p: &Presentation) -> HomologyGroup {
    HomologyGroup::cokernel(&p.relation_matrix())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::{FinitePermAction, PeriodicShiftAction, DEFAULT_ELEMENT_CAP};

    fn sym(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn free_reduction() {
        let w = vec![Letter::new(0), Letter::new(1), Letter::new(1).inv(), Letter::new(0).inv(), Letter::new(2)];
        assert_eq!(free_reduce(&w), vec![Letter::new(2)]);
        assert_eq!(free_reduce(&free_reduce(&w)), free_reduce(&w));
    }

    #[test]
    fn k2_graph_product_is_z2() {
        let p = graph_product_presentation(&SimpleGraph::complete(2), &Presentation::cyclic("a", 0)).unwrap();
        assert_eq!(p.generators(), sym(&["a_v0", "a_v1"]));
        assert_eq!(p.relators().len(), 1);
        assert_eq!(p.format_word(&p.relators()[0]), sym(&["a_v0", "a_v1", "a_v0^-1", "a_v1^-1"]));
        assert_eq!(abelianization(&p), HomologyGroup::free(2));
    }

    #[test]
    fn racg_on_path() {
        let p = graph_product_presentation(&SimpleGraph::path(3), &Presentation::cyclic("a", 2)).unwrap();
        assert_eq!(abelianization(&p), HomologyGroup::from_cyclic(0, [2.into(), 2.into(), 2.into()]));
    }

    #[test]
    fn c2_wreath_c2() {
        let g = SimpleGraph::complete(2);
        let action =
            Action::Finite(FinitePermAction::new(g, vec![Permutation::swap(2, 0, 1)], DEFAULT_ELEMENT_CAP).unwrap());
        let p = graph_wreath_presentation(&action, &Presentation::cyclic("a", 2), &Presentation::cyclic("s", 2), None)
            .unwrap();
        assert_eq!(p.generators(), sym(&["a_v0", "s"]));
        assert_eq!(abelianization(&p), HomologyGroup::from_cyclic(0, [2.into(), 2.into()]));
    }

    #[test]
    fn trivial_h_is_the_graph_product() {
        let g = SimpleGraph::cycle(4);
        let a = Presentation::from_json(r#"{"generators":["a","b"],"relators":[["a","a","a"],["b","b"]]}"#).unwrap();
        let action = Action::Finite(FinitePermAction::trivial(g.clone()));
        let wreath = graph_wreath_presentation(&action, &a, &Presentation::trivial(), None).unwrap();
        let product = graph_product_presentation(&g, &a).unwrap();
        assert_eq!(wreath.generators(), product.generators());
        assert_eq!(wreath.relators(), product.relators());
    }

    #[test]
    fn shift_on_edgeless_line() {
        let action = Action::Shift(PeriodicShiftAction::edgeless_line());
        let p = graph_wreath_presentation(&action, &Presentation::cyclic("a", 0), &Presentation::cyclic("t", 0), None)
            .unwrap();
        assert_eq!(p.generators(), sym(&["a_v", "t"]));
        assert!(p.relators().is_empty());
        assert_eq!(abelianization(&p), HomologyGroup::free(2));
    }

    #[test]
    fn infinite_edge_orbits_refused() {
        let action = Action::Shift(PeriodicShiftAction::complete_line());
        let err = graph_wreath_presentation(&action, &Presentation::cyclic("a", 2), &Presentation::cyclic("t", 0), None)
            .unwrap_err();
        assert!(matches!(&err, Error::Domain(m) if m.contains("Theorem 2.4")));
    }

    #[test]
    fn supplied_words_are_checked() {
        let g = SimpleGraph::complete(2);
        let action =
            Action::Finite(FinitePermAction::new(g, vec![Permutation::swap(2, 0, 1)], DEFAULT_ELEMENT_CAP).unwrap());
        let h = Presentation::cyclic("s", 0);
        let bad = vec![vec![vec![Letter::new(0)]]];
        assert!(graph_wreath_presentation(&action, &Presentation::cyclic("a", 0), &h, Some(&bad)).is_err());
        let good = vec![vec![vec![Letter::new(0), Letter::new(0)]]];
        let p = graph_wreath_presentation(&action, &Presentation::cyclic("a", 0), &h, Some(&good)).unwrap();
        assert_eq!(p.provenance().unwrap().assumptions.len(), 1);
    }

    #[test]
    fn parse_and_print_round_trip() {
        let text = r#"{"generators":["a","b"],"relators":[["a","b^-1","b","a"]]}"#;
        let p = Presentation::from_json(text).unwrap();
        assert_eq!(p.format_word(&p.relators()[0]), sym(&["a", "a"]));
        assert!(Presentation::from_json(r#"{"generators":["a"],"relators":[["c"]]}"#).is_err());
    }
}
