//! The `F_n` decision engine for graph-wreath products `G = A ≀_Γ H`.
//!
//! Facts about `A` and `H` come from a small catalog of groups with known
//! finiteness types, or from user assertions (which are flagged as
//! assumptions). Facts about the action come from the action backends. The
//! engine combines the finite generation and finite presentation criteria, the
//! sufficient conditions, and the three necessity results into an interval
//! `[certified, refuted)` with a trace of every condition checked. Nothing is
//! guessed: when no rule decides a level, the level stays unknown.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::actions::{clique_orbits, clique_size_bound, Action, OrbitCount};
use crate::error::{Error, Result};
use crate::graphs::SimpleGraph;
use crate::presentations::{abelianization, Presentation};

/// Certified lower end of a finiteness interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Certified {
    /// Type `F_k` is established (`F_0` holds for every group).
    Level(u32),
    /// Type `F_∞`.
    Infinity,
}

/// Refuted upper end of a finiteness interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Refuted {
    /// Not of type `F_k`, hence of no higher type.
    At(u32),
    /// Never refuted: the group is of type `F_∞`.
    Never,
    Unknown,
}

/// An interval of finiteness types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FinitenessType {
    pub certified: Certified,
    pub refuted: Refuted,
}

impl FinitenessType {
    pub fn f_infinity() -> Self {
        FinitenessType { certified: Certified::Infinity, refuted: Refuted::Never }
    }

    /// Of type `F_k` but not `F_{k+1}`.
    pub fn exactly(k: u32) -> Self {
        FinitenessType { certified: Certified::Level(k), refuted: Refuted::At(k + 1) }
    }

    pub fn unknown() -> Self {
        FinitenessType { certified: Certified::Level(0), refuted: Refuted::Unknown }
    }

    pub fn new(certified: Certified, refuted: Refuted) -> Result<Self> {
        let t = FinitenessType { certified, refuted };
        if t.is_consistent() {
            Ok(t)
        } else {
            Err(Error::domain(format!("certified < refuted: {t} is contradictory")))
        }
    }

    pub fn is_consistent(&self) -> bool {
        match (self.certified, self.refuted) {
            (Certified::Infinity, Refuted::At(_)) => false,
            (Certified::Level(_), Refuted::Never) => false,
            (Certified::Level(c), Refuted::At(r)) => c < r,
            _ => true,
        }
    }

    /// Whether type `F_n` is decided, and which way.
    pub fn status(&self, n: u32) -> Tri {
        let certified = match self.certified {
            Certified::Infinity => true,
            Certified::Level(c) => n <= c,
        };
        if certified {
            return Tri::Yes;
        }
        match self.refuted {
            Refuted::At(r) if n >= r => Tri::No,
            _ => Tri::Unknown,
        }
    }

    pub fn is_f_infinity(&self) -> bool {
        self.certified == Certified::Infinity
    }

    pub fn to_json(&self) -> Value {
        json!({ "certified": certified_json(self.certified), "refuted": refuted_json(self.refuted) })
    }
}

impl fmt::Display for FinitenessType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.certified {
            Certified::Infinity => write!(f, "certified F_∞")?,
            Certified::Level(c) => write!(f, "certified F_{c}")?,
        }
        match self.refuted {
            Refuted::At(r) => write!(f, ", refuted F_{r}"),
            Refuted::Never => write!(f, ", never refuted"),
            Refuted::Unknown => write!(f, ", refuted UNKNOWN"),
        }
    }
}

fn certified_json(c: Certified) -> Value {
    match c {
        Certified::Level(k) => json!(k),
        Certified::Infinity => json!("infinity"),
    }
}

fn refuted_json(r: Refuted) -> Value {
    match r {
        Refuted::At(k) => json!(k),
        Refuted::Never => json!("never"),
        Refuted::Unknown => json!("unknown"),
    }
}

/// Three-valued truth.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl Tri {
    fn from_bool(b: bool) -> Self {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }

    /// `No` if any is `No`, `Yes` if all are `Yes`, else `Unknown`.
    pub fn all(items: impl IntoIterator<Item = Tri>) -> Tri {
        let mut out = Tri::Yes;
        for t in items {
            match t {
                Tri::No => return Tri::No,
                Tri::Unknown => out = Tri::Unknown,
                Tri::Yes => {}
            }
        }
        out
    }

    pub fn label(self) -> &'static str {
        match self {
            Tri::Yes => "YES",
            Tri::No => "NO",
            Tri::Unknown => "UNKNOWN",
        }
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Groups with built-in finiteness facts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Catalog {
    Trivial,
    /// A non-trivial finite group.
    Finite,
    FreeAbelian(u32),
    /// A polycyclic-by-finite group.
    Polycyclic,
    Houghton(u32),
    ThompsonF,
    Raag(SimpleGraph),
}

impl Catalog {
    /// Parses tags such as `trivial`, `finite`, `C2`, `Z`, `Z^3`,
    /// `polycyclic`, `houghton:3`, `thompson_f`.
    pub fn parse(tag: &str) -> Result<Self> {
        let lower = tag.to_ascii_lowercase();
        let parsed = match lower.as_str() {
            "trivial" | "1" => Some(Catalog::Trivial),
            "finite" => Some(Catalog::Finite),
            "z" => Some(Catalog::FreeAbelian(1)),
            "polycyclic" => Some(Catalog::Polycyclic),
            "thompson_f" | "f" => Some(Catalog::ThompsonF),
            _ => None,
        };
        if let Some(c) = parsed {
            return Ok(c);
        }
        if let Some(k) = lower.strip_prefix("z^") {
            let k: u32 = k.parse().map_err(|_| Error::parse(format!("bad rank in {tag:?}")))?;
            return Ok(if k == 0 { Catalog::Trivial } else { Catalog::FreeAbelian(k) });
        }
        if let Some(n) = lower.strip_prefix("houghton:") {
            let n: u32 = n.parse().map_err(|_| Error::parse(format!("bad ray count in {tag:?}")))?;
            if n == 0 {
                return Err(Error::domain("Houghton groups have n ≥ 1 rays"));
            }
            return Ok(Catalog::Houghton(n));
        }
        if let Some(order) = lower.strip_prefix('c') {
            let order: u64 = order.parse().map_err(|_| Error::parse(format!("unknown catalog group {tag:?}")))?;
            return Ok(match order {
                0 => Catalog::FreeAbelian(1),
                1 => Catalog::Trivial,
                _ => Catalog::Finite,
            });
        }
        Err(Error::parse(format!(
            "unknown catalog group {tag:?} (known: trivial, finite, Cn, Z, Z^k, polycyclic, houghton:n, thompson_f, raag)"
        )))
    }

    pub fn finiteness_type(&self) -> FinitenessType {
        match self {
            Catalog::Houghton(n) => FinitenessType::exactly(n - 1),
            _ => FinitenessType::f_infinity(),
        }
    }

    fn describe(&self) -> String {
        match self {
            Catalog::Trivial => "trivial".into(),
            Catalog::Finite => "finite".into(),
            Catalog::FreeAbelian(1) => "Z".into(),
            Catalog::FreeAbelian(k) => format!("Z^{k}"),
            Catalog::Polycyclic => "polycyclic-by-finite".into(),
            Catalog::Houghton(n) => format!("Houghton H_{n}"),
            Catalog::ThompsonF => "Thompson F".into(),
            Catalog::Raag(g) => format!("RAAG on {} vertices", g.vertex_count()),
        }
    }
}

/// A group fed to the engine: catalog entry or presentation with an asserted
/// finiteness type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Catalog(Catalog),
    Presented { presentation: Presentation, asserted: FinitenessType },
}

impl GroupSpec {
    pub fn catalog(c: Catalog) -> Self {
        GroupSpec::Catalog(c)
    }

    pub fn finiteness_type(&self) -> FinitenessType {
        match self {
            GroupSpec::Catalog(c) => c.finiteness_type(),
            GroupSpec::Presented { asserted, .. } => *asserted,
        }
    }

    pub fn is_assumed(&self) -> bool {
        matches!(self, GroupSpec::Presented { .. })
    }

    pub fn is_trivial(&self) -> Tri {
        match self {
            GroupSpec::Catalog(c) => Tri::from_bool(match c {
                Catalog::Trivial => true,
                Catalog::FreeAbelian(k) => *k == 0,
                Catalog::Raag(g) => g.vertex_count() == 0,
                _ => false,
            }),
            GroupSpec::Presented { presentation, .. } => {
                if presentation.generators().is_empty() {
                    Tri::Yes
                } else if !abelianization(presentation).is_zero() {
                    Tri::No
                } else {
                    Tri::Unknown
                }
            }
        }
    }

    /// Whether the abelianization is infinite.
    pub fn has_infinite_abelianization(&self) -> Tri {
        match self {
            GroupSpec::Catalog(c) => match c {
                Catalog::Trivial | Catalog::Finite => Tri::No,
                Catalog::FreeAbelian(k) => Tri::from_bool(*k > 0),
                Catalog::Polycyclic => Tri::Unknown,
                Catalog::Houghton(n) => Tri::from_bool(*n >= 2),
                Catalog::ThompsonF => Tri::Yes,
                Catalog::Raag(g) => Tri::from_bool(g.vertex_count() > 0),
            },
            GroupSpec::Presented { presentation, .. } => {
                Tri::from_bool(abelianization(presentation).betti > 0)
            }
        }
    }

    pub fn is_polycyclic_by_finite(&self) -> Tri {
        match self {
            GroupSpec::Catalog(c) => match c {
                Catalog::Trivial | Catalog::Finite | Catalog::FreeAbelian(_) | Catalog::Polycyclic => Tri::Yes,
                Catalog::Houghton(_) | Catalog::ThompsonF => Tri::No,
                // A RAAG is polycyclic exactly when it is free abelian.
                Catalog::Raag(g) => {
                    let n = g.vertex_count();
                    Tri::from_bool(g.edge_count() == n * n.saturating_sub(1) / 2)
                }
            },
            GroupSpec::Presented { .. } => Tri::Unknown,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            GroupSpec::Catalog(c) => c.describe(),
            GroupSpec::Presented { presentation, asserted } => {
                format!("{presentation} (asserted {asserted})")
            }
        }
    }

    /// Parses a presentation file carrying an `"asserted"` finiteness type,
    /// e.g. `{"generators":["a"],"relators":[],"asserted":{"certified":"infinity","refuted":"never"}}`.
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Asserted {
            certified: Value,
            refuted: Value,
        }
        #[derive(Deserialize)]
        struct File {
            generators: Vec<String>,
            #[serde(default)]
            relators: Vec<Vec<String>>,
            asserted: Asserted,
        }
        let file: File = serde_json::from_str(text)?;
        let presentation = Presentation::from_json(
            &json!({ "generators": file.generators, "relators": file.relators }).to_string(),
        )?;
        let certified = match &file.asserted.certified {
            Value::String(s) if s == "infinity" => Certified::Infinity,
            Value::Number(k) => Certified::Level(
                k.as_u64().and_then(|k| u32::try_from(k).ok()).ok_or_else(|| Error::parse("bad certified level"))?,
            ),
            other => return Err(Error::parse(format!("bad certified value {other}"))),
        };
        let refuted = match &file.asserted.refuted {
            Value::String(s) if s == "never" => Refuted::Never,
            Value::String(s) if s == "unknown" => Refuted::Unknown,
            Value::Number(k) => Refuted::At(
                k.as_u64().and_then(|k| u32::try_from(k).ok()).ok_or_else(|| Error::parse("bad refuted level"))?,
            ),
            other => return Err(Error::parse(format!("bad refuted value {other}"))),
        };
        Ok(GroupSpec::Presented { presentation, asserted: FinitenessType::new(certified, refuted)? })
    }
}

/// The action of `H` on `Γ` as seen by the engine.
#[derive(Clone, Debug)]
pub enum VerdictAction {
    /// A concrete backend. For a finite permutation action, `H` may act
    /// through a finite quotient, so clique stabilizers have finite index in
    /// `H`. A periodic shift is an action of `Z` by translation.
    Concrete(Action),
    /// Houghton's group `H_n` on the complete graph on its ray set `R_n`:
    /// transitive on `p`-sets for every `p`, stabilizers of type `F_{n−1}`
    /// and not `F_n`.
    HoughtonComplete(u32),
}

impl VerdictAction {
    /// Parses an action file; the extra kind `{"kind":"houghton_complete","n":3}`
    /// selects the catalog Houghton action.
    pub fn from_json(text: &str, default_cap: usize) -> Result<Self> {
        let value: Value = serde_json::from_str(text)?;
        if value.get("kind").and_then(Value::as_str) == Some("houghton_complete") {
            let n = value
                .get("n")
                .and_then(Value::as_u64)
                .and_then(|n| u32::try_from(n).ok())
                .filter(|&n| n >= 1)
                .ok_or_else(|| Error::parse("houghton_complete needs a ray count n ≥ 1"))?;
            return Ok(VerdictAction::HoughtonComplete(n));
        }
        Ok(VerdictAction::Concrete(Action::from_json(text, default_cap)?))
    }

    fn describe(&self) -> String {
        match self {
            VerdictAction::Concrete(Action::Finite(a)) => format!(
                "finite group of order {} on a graph with {} vertices",
                a.order(),
                a.graph().vertex_count()
            ),
            VerdictAction::Concrete(Action::Shift(a)) => {
                format!("Z shifting a periodic graph with {} template vertices", a.template().len())
            }
            VerdictAction::HoughtonComplete(n) => format!("H_{n} on the complete graph on R_{n}"),
        }
    }
}

/// One checked condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub rule: &'static str,
    pub condition: &'static str,
    /// Simplex dimension or clique size the condition refers to, if any.
    pub p: Option<u32>,
    /// The level `n` being decided; `None` stands for `F_∞`.
    pub n: Option<u32>,
    pub outcome: &'static str,
}

impl TraceEntry {
    pub fn to_json(&self) -> Value {
        json!({ "rule": self.rule, "condition": self.condition, "p": self.p, "n": self.n, "outcome": self.outcome })
    }
}

/// Every condition string the engine can emit.
pub const CONDITION_TEMPLATES: &[&str] = &[
    COND_A_TRIVIAL,
    COND_A_NONTRIVIAL,
    COND_H_FN,
    COND_A_FN,
    COND_MODULE,
    COND_CONCLUSION,
    COND_LEMMA_2_5,
    COND_THEOREM_2_4,
    COND_STABILIZER,
    COND_THEOREM_B_CONCLUSION,
    COND_INFINITE_AB,
    COND_POLYCYCLIC,
    COND_COCOMPACT,
    COND_ORBITS,
    COND_STABILIZERS_FP,
];

const COND_A_TRIVIAL: &str = "A is trivial, so G = H";
const COND_A_NONTRIVIAL: &str = "A is non-trivial";
const COND_H_FN: &str = "H is of type F_n";
const COND_A_FN: &str = "A is of type F_n";
const COND_MODULE: &str = "ZΔ_p is of type FP_{n-1-p}";
const COND_CONCLUSION: &str = "G is of type F_n";
const COND_LEMMA_2_5: &str =
    "both A and H are finitely generated and Γ has finitely many orbits of vertices";
const COND_THEOREM_2_4: &str = "A and H are finitely presented, Γ has finitely many orbits of vertices and edges, and each vertex of Γ has finitely generated stabilizer";
const COND_STABILIZER: &str = "the stabilizers of p-cells of L are of type FP_{n-1-p}";
const COND_THEOREM_B_CONCLUSION: &str =
    "A and H are of type F_n and H acts cocompactly on the (n-1)-skeleton of L";
const COND_INFINITE_AB: &str = "A has infinite abelianization";
const COND_POLYCYCLIC: &str = "H is polycyclic-by-finite";
const COND_COCOMPACT: &str = "H acts cocompactly on the (n-1)-skeleton of L";
const COND_ORBITS: &str = "finitely many orbits of (m+1)-cliques";
const COND_STABILIZERS_FP: &str = "the stabilizer of each (m+1)-clique has type FP_n";

/// The engine's output.
#[derive(Clone, Debug)]
pub struct FinitenessVerdict {
    pub subject: String,
    pub finiteness: FinitenessType,
    pub trace: Vec<TraceEntry>,
    pub assumptions: Vec<String>,
}

impl FinitenessVerdict {
    pub fn to_json(&self) -> Value {
        json!({
            "subject": self.subject,
            "certified": certified_json(self.finiteness.certified),
            "refuted": refuted_json(self.finiteness.refuted),
            "trace": self.trace.iter().map(TraceEntry::to_json).collect::<Vec<_>>(),
            "assumptions": self.assumptions,
        })
    }
}

/// Cached action facts for one engine run.
struct ActionFacts<'a> {
    action: &'a VerdictAction,
    /// Type of every clique stabilizer (uniform across cliques).
    stabilizer: FinitenessType,
    orbit_cache: RefCell<BTreeMap<u32, Result<(bool, bool)>>>,
}

impl<'a> ActionFacts<'a> {
    fn new(action: &'a VerdictAction, h: &GroupSpec) -> Result<Self> {
        let stabilizer = match action {
            VerdictAction::Concrete(Action::Finite(a)) => {
                if h.is_trivial() == Tri::Yes && a.order() > 1 {
                    return Err(Error::domain("the trivial group acts trivially: the action has non-identity generators"));
                }
                // Preimages of subgroups of a finite quotient have finite index.
                h.finiteness_type()
            }
            VerdictAction::Concrete(Action::Shift(_)) => {
                if *h != GroupSpec::Catalog(Catalog::FreeAbelian(1)) {
                    return Err(Error::domain(format!(
                        "a periodic shift action is an action of Z, but H is {}",
                        h.describe()
                    )));
                }
                FinitenessType::f_infinity()
            }
            VerdictAction::HoughtonComplete(n) => {
                if *h != GroupSpec::Catalog(Catalog::Houghton(*n)) {
                    return Err(Error::domain(format!(
                        "the Houghton action on R_{n} is an action of H_{n}, but H is {}",
                        h.describe()
                    )));
                }
                FinitenessType::exactly(n - 1)
            }
        };
        Ok(ActionFacts { action, stabilizer, orbit_cache: RefCell::new(BTreeMap::new()) })
    }

    /// `(finitely many orbits, at least one clique)` for cliques of size `q`.
    fn orbits(&self, q: u32) -> Result<(bool, bool)> {
        if let Some(r) = self.orbit_cache.borrow().get(&q) {
            return r.clone();
        }
        let r = match self.action {
            VerdictAction::Concrete(a) => clique_orbits(a, q as usize).map(|rep| match rep.orbit_count {
                OrbitCount::Finite(k) => (true, k > 0),
                OrbitCount::Infinite => (false, true),
            }),
            VerdictAction::HoughtonComplete(_) => Ok((true, true)),
        };
        self.orbit_cache.borrow_mut().insert(q, r.clone());
        r
    }

    fn orbit_status(&self, q: u32) -> Result<Tri> {
        Ok(Tri::from_bool(self.orbits(q)?.0))
    }

    /// Clique size beyond which there are no cliques.
    fn clique_bound(&self) -> Option<u32> {
        match self.action {
            VerdictAction::Concrete(a) => clique_size_bound(a).map(|b| b as u32),
            VerdictAction::HoughtonComplete(_) => None,
        }
    }

    /// Whether `ZΔ_m` is of type `FP_k`, following the clique dictionary.
    fn module_status(&self, m: u32, k: u32) -> Result<Tri> {
        let (finite, nonempty) = self.orbits(m + 1)?;
        Ok(if !finite {
            Tri::No
        } else if !nonempty || self.stabilizer.status(k) == Tri::Yes {
            Tri::Yes
        } else {
            Tri::Unknown
        })
    }

    /// Stabilizer certification only: refutation of `F_k` does not refute `FP_k`.
    fn stabilizer_certified(&self, k: u32) -> Tri {
        match self.stabilizer.status(k) {
            Tri::Yes => Tri::Yes,
            _ => Tri::Unknown,
        }
    }
}

/// Status of `ZΔ_m` as an `FP_n` module over `ZH`, with its trace.
pub fn module_fp_status(
    action: &VerdictAction,
    h: &GroupSpec,
    m: u32,
    n: u32,
) -> Result<(Tri, Vec<TraceEntry>)> {
    let facts = ActionFacts::new(action, h)?;
    let orbits = facts.orbit_status(m + 1)?;
    let stabilizers = if facts.orbits(m + 1)?.1 { facts.stabilizer_certified(n) } else { Tri::Yes };
    let status = facts.module_status(m, n)?;
    let rule = "Lemma1.7";
    let trace = vec![
        TraceEntry { rule, condition: COND_ORBITS, p: Some(m), n: Some(n), outcome: orbits.label() },
        TraceEntry { rule, condition: COND_STABILIZERS_FP, p: Some(m), n: Some(n), outcome: stabilizers.label() },
    ];
    Ok((status, trace))
}

struct Engine<'a> {
    a: &'a GroupSpec,
    h: &'a GroupSpec,
    facts: ActionFacts<'a>,
    trace: Vec<TraceEntry>,
}

#[derive(Clone, Copy, Default)]
struct LevelOutcome {
    certified: bool,
    refuted: bool,
}

impl<'a> Engine<'a> {
    fn record(&mut self, rule: &'static str, condition: &'static str, p: Option<u32>, n: Option<u32>, t: Tri) -> Tri {
        self.trace.push(TraceEntry { rule, condition, p, n, outcome: t.label() });
        t
    }

    fn conclude(&mut self, rule: &'static str, n: Option<u32>, verdict: Tri, out: &mut LevelOutcome, iff: bool) {
        match verdict {
            Tri::Yes => {
                out.certified = true;
                self.trace.push(TraceEntry { rule, condition: COND_CONCLUSION, p: None, n, outcome: "CERTIFIED" });
            }
            Tri::No if iff => {
                out.refuted = true;
                self.trace.push(TraceEntry { rule, condition: COND_CONCLUSION, p: None, n, outcome: "REFUTED" });
            }
            _ => {}
        }
    }

    /// The three conditions shared by the sufficiency result and its
    /// infinite-abelianization converse.
    fn theorem_a_conditions(&mut self, rule: &'static str, n: u32) -> Result<Tri> {
        let h = self.h.finiteness_type().status(n);
        let h = self.record(rule, COND_H_FN, None, Some(n), h);
        let a = self.a.finiteness_type().status(n);
        let a = self.record(rule, COND_A_FN, None, Some(n), a);
        let mut all = vec![h, a];
        for p in 0..n {
            let t = self.facts.module_status(p, n - 1 - p)?;
            all.push(self.record(rule, COND_MODULE, Some(p), Some(n), t));
        }
        Ok(Tri::all(all))
    }

    fn cocompact(&mut self, rule: &'static str, n: u32) -> Result<Tri> {
        let mut all = Vec::new();
        for q in 1..=n {
            all.push(self.facts.orbit_status(q)?);
        }
        let t = Tri::all(all);
        Ok(self.record(rule, COND_COCOMPACT, None, Some(n), t))
    }

    fn level(&mut self, n: u32, a_trivial: Tri) -> Result<LevelOutcome> {
        let mut out = LevelOutcome::default();
        if a_trivial == Tri::Yes {
            let t = self.h.finiteness_type().status(n);
            self.record("TrivialBase", COND_A_TRIVIAL, None, Some(n), Tri::Yes);
            let t = self.record("TrivialBase", COND_H_FN, None, Some(n), t);
            self.conclude("TrivialBase", Some(n), t, &mut out, true);
            return Ok(out);
        }
        if a_trivial == Tri::No {
            if n == 1 {
                let t = Tri::all([
                    self.a.finiteness_type().status(1),
                    self.h.finiteness_type().status(1),
                    self.facts.orbit_status(1)?,
                ]);
                let t = self.record("Lemma2.5", COND_LEMMA_2_5, None, Some(1), t);
                self.conclude("Lemma2.5", Some(1), t, &mut out, true);
            }
            if n == 2 {
                let t = Tri::all([
                    self.a.finiteness_type().status(2),
                    self.h.finiteness_type().status(2),
                    self.facts.orbit_status(1)?,
                    self.facts.orbit_status(2)?,
                    self.facts.stabilizer.status(1),
                ]);
                let t = self.record("Theorem2.4", COND_THEOREM_2_4, None, Some(2), t);
                self.conclude("Theorem2.4", Some(2), t, &mut out, true);
            }
            if n >= 3 {
                let mut hyp = Vec::new();
                for p in 0..=n - 2 {
                    let t = self.facts.stabilizer_certified(n - 1 - p);
                    hyp.push(self.record("TheoremB", COND_STABILIZER, Some(p), Some(n), t));
                }
                if Tri::all(hyp) == Tri::Yes {
                    let mut concl = vec![self.a.finiteness_type().status(n), self.h.finiteness_type().status(n)];
                    for q in 1..=n {
                        concl.push(self.facts.orbit_status(q)?);
                    }
                    let t = self.record("TheoremB", COND_THEOREM_B_CONCLUSION, None, Some(n), Tri::all(concl));
                    // Only the contrapositive is available.
                    if t == Tri::No {
                        self.conclude("TheoremB", Some(n), Tri::No, &mut out, true);
                    }
                }
            }
            let ab = self.a.has_infinite_abelianization();
            if self.record("TheoremC", COND_INFINITE_AB, None, Some(n), ab) == Tri::Yes {
                let t = self.theorem_a_conditions("TheoremC", n)?;
                self.conclude("TheoremC", Some(n), t, &mut out, true);
            }
            let poly = self.h.is_polycyclic_by_finite();
            if self.record("TheoremD", COND_POLYCYCLIC, None, Some(n), poly) == Tri::Yes {
                self.record("TheoremD", COND_A_NONTRIVIAL, None, Some(n), Tri::Yes);
                let a = self.a.finiteness_type().status(n);
                let a = self.record("TheoremD", COND_A_FN, None, Some(n), a);
                let c = self.cocompact("TheoremD", n)?;
                self.conclude("TheoremD", Some(n), Tri::all([a, c]), &mut out, true);
            }
        } else {
            self.record("NonTriviality", COND_A_NONTRIVIAL, None, Some(n), Tri::Unknown);
        }
        let t = self.theorem_a_conditions("TheoremA", n)?;
        self.conclude("TheoremA", Some(n), t, &mut out, false);
        Ok(out)
    }

    /// Type `F_∞` via the sufficient conditions at every level (or the
    /// polycyclic equivalence), which needs a bound on clique sizes.
    fn infinity(&mut self, a_trivial: Tri) -> Result<bool> {
        let mut out = LevelOutcome::default();
        if a_trivial == Tri::Yes {
            let t = Tri::from_bool(self.h.finiteness_type().is_f_infinity());
            let t = self.record("TrivialBase", COND_H_FN, None, None, t);
            self.conclude("TrivialBase", None, t, &mut out, false);
            return Ok(out.certified);
        }
        let Some(bound) = self.facts.clique_bound() else {
            return Ok(false);
        };
        let h = Tri::from_bool(self.h.finiteness_type().is_f_infinity());
        let h = self.record("TheoremA", COND_H_FN, None, None, h);
        let a = Tri::from_bool(self.a.finiteness_type().is_f_infinity());
        let a = self.record("TheoremA", COND_A_FN, None, None, a);
        let mut all = vec![h, a];
        for p in 0..bound {
            let (finite, nonempty) = self.facts.orbits(p + 1)?;
            let t = if !finite {
                Tri::No
            } else if !nonempty || self.facts.stabilizer.is_f_infinity() {
                Tri::Yes
            } else {
                Tri::Unknown
            };
            all.push(self.record("TheoremA", COND_MODULE, Some(p), None, t));
        }
        self.conclude("TheoremA", None, Tri::all(all), &mut out, false);
        Ok(out.certified)
    }
}

fn assumptions(a: &GroupSpec, h: &GroupSpec) -> Vec<String> {
    let mut out = Vec::new();
    for (name, g) in [("A", a), ("H", h)] {
        if let GroupSpec::Presented { asserted, .. } = g {
            out.push(format!("{name}: user-asserted finiteness type ({asserted})"));
        }
    }
    out
}

fn subject(a: &GroupSpec, h: &GroupSpec, action: &VerdictAction) -> String {
    format!("A ≀_Γ H with A = {}, H = {}, action: {}", a.describe(), h.describe(), action.describe())
}

/// Certification from the sufficient conditions alone, at levels `1..=n`.
pub fn theorem_a_verdict(a: &GroupSpec, h: &GroupSpec, action: &VerdictAction, n: u32) -> Result<FinitenessVerdict> {
    let mut engine = Engine { a, h, facts: ActionFacts::new(action, h)?, trace: Vec::new() };
    let mut certified = 0;
    for level in 1..=n {
        let t = engine.theorem_a_conditions("TheoremA", level)?;
        let mut out = LevelOutcome::default();
        engine.conclude("TheoremA", Some(level), t, &mut out, false);
        if out.certified {
            certified = level;
        }
    }
    Ok(FinitenessVerdict {
        subject: subject(a, h, action),
        finiteness: FinitenessType { certified: Certified::Level(certified), refuted: Refuted::Unknown },
        trace: engine.trace,
        assumptions: assumptions(a, h),
    })
}

/// The best finiteness interval derivable at levels `1..=n`, plus `F_∞`
/// when the sufficient conditions hold at every level.
pub fn classify(a: &GroupSpec, h: &GroupSpec, action: &VerdictAction, n: u32) -> Result<FinitenessVerdict> {
    let mut engine = Engine { a, h, facts: ActionFacts::new(action, h)?, trace: Vec::new() };
    let a_trivial = a.is_trivial();
    let mut certified = 0;
    let mut refuted = None;
    for level in 1..=n {
        let out = engine.level(level, a_trivial)?;
        if out.certified {
            certified = certified.max(level);
        }
        if out.refuted && refuted.is_none() {
            refuted = Some(level);
        }
    }
    let infinity = refuted.is_none() && engine.infinity(a_trivial)?;
    let finiteness = if infinity {
        FinitenessType::f_infinity()
    } else {
        FinitenessType {
            certified: Certified::Level(certified),
            refuted: refuted.map_or(Refuted::Unknown, Refuted::At),
        }
    };
    // Any refutation must sit strictly above every certification made.
    let last_refuted_level_certified = refuted.is_some_and(|r| {
        engine.trace.iter().any(|e| e.outcome == "CERTIFIED" && e.n.is_none_or(|k| k >= r))
    });
    if !finiteness.is_consistent() || last_refuted_level_certified {
        return Err(Error::invariant(format!(
            "contradictory verdict for {}: {finiteness}",
            subject(a, h, action)
        )));
    }
    Ok(FinitenessVerdict { subject: subject(a, h, action), finiteness, trace: engine.trace, assumptions: assumptions(a, h) })
}

/// Builds the engine's action from a concrete backend with the default cap.
pub fn concrete(action: Action) -> VerdictAction {
    VerdictAction::Concrete(action)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::{FinitePermAction, Permutation, PeriodicShiftAction, DEFAULT_ELEMENT_CAP as DEFAULT_CAP};

    fn cat(c: Catalog) -> GroupSpec {
        GroupSpec::Catalog(c)
    }

    fn complete_line() -> VerdictAction {
        VerdictAction::Concrete(Action::Shift(PeriodicShiftAction::complete_line()))
    }

    fn edgeless_line() -> VerdictAction {
        VerdictAction::Concrete(Action::Shift(PeriodicShiftAction::edgeless_line()))
    }

    #[test]
    fn baumslag_refutes_presentability() {
        let v = classify(&cat(Catalog::Finite), &cat(Catalog::FreeAbelian(1)), &complete_line(), 2).unwrap();
        assert_eq!(v.finiteness, FinitenessType { certified: Certified::Level(1), refuted: Refuted::At(2) });
        assert!(v.trace.iter().any(|e| e.rule == "Theorem2.4" && e.outcome == "REFUTED"));
        assert!(v.trace.iter().any(|e| e.rule == "Lemma2.5" && e.outcome == "CERTIFIED"));
    }

    #[test]
    fn finite_h_on_complete_graph_is_f_infinity() {
        let g = SimpleGraph::complete(3);
        let a = FinitePermAction::new(g, vec![Permutation::rotation(3)], DEFAULT_CAP).unwrap();
        let v = classify(&cat(Catalog::Finite), &cat(Catalog::Finite), &concrete(Action::Finite(a)), 4).unwrap();
        assert_eq!(v.finiteness, FinitenessType::f_infinity());
    }

    #[test]
    fn houghton_corollary() {
        for n in 2..=4 {
            let v = classify(
                &cat(Catalog::FreeAbelian(1)),
                &cat(Catalog::Houghton(n)),
                &VerdictAction::HoughtonComplete(n),
                n + 1,
            )
            .unwrap();
            assert_eq!(v.finiteness, FinitenessType::exactly(n - 1), "n = {n}");
        }
    }

    #[test]
    fn trivial_a_copies_h() {
        let g = SimpleGraph::edgeless(1);
        let act = concrete(Action::Finite(FinitePermAction::trivial(g)));
        let v = classify(&cat(Catalog::Trivial), &cat(Catalog::Houghton(3)), &act, 5).unwrap();
        assert_eq!(v.finiteness, FinitenessType::exactly(2));
    }

    #[test]
    fn lamplighter_is_f1_not_f2() {
        let v = classify(&cat(Catalog::FreeAbelian(1)), &cat(Catalog::FreeAbelian(1)), &complete_line(), 3).unwrap();
        assert_eq!(v.finiteness, FinitenessType::exactly(1));
    }

    #[test]
    fn free_by_cyclic_is_f_infinity() {
        let v = classify(&cat(Catalog::FreeAbelian(1)), &cat(Catalog::FreeAbelian(1)), &edgeless_line(), 3).unwrap();
        assert_eq!(v.finiteness, FinitenessType::f_infinity());
        let t = theorem_a_verdict(&cat(Catalog::FreeAbelian(1)), &cat(Catalog::FreeAbelian(1)), &edgeless_line(), 4)
            .unwrap();
        assert_eq!(t.finiteness.certified, Certified::Level(4));
    }

    #[test]
    fn houghton_base_caps_theorem_a() {
        let act = concrete(Action::Shift(PeriodicShiftAction::edgeless_line()));
        let t = theorem_a_verdict(&cat(Catalog::Houghton(3)), &cat(Catalog::FreeAbelian(1)), &act, 5).unwrap();
        assert_eq!(t.finiteness.certified, Certified::Level(2));
        assert_eq!(t.finiteness.refuted, Refuted::Unknown);
    }

    #[test]
    fn module_status_examples() {
        let z = cat(Catalog::FreeAbelian(1));
        assert_eq!(module_fp_status(&edgeless_line(), &z, 0, 5).unwrap().0, Tri::Yes);
        assert_eq!(module_fp_status(&complete_line(), &z, 1, 0).unwrap().0, Tri::No);
        let g = SimpleGraph::complete(2);
        let swap = FinitePermAction::new(g, vec![Permutation::swap(2, 0, 1)], DEFAULT_CAP).unwrap();
        let act = concrete(Action::Finite(swap));
        assert_eq!(module_fp_status(&act, &cat(Catalog::Finite), 1, 7).unwrap().0, Tri::Yes);
    }

    #[test]
    fn incompatible_h_rejected() {
        let err = classify(&cat(Catalog::Finite), &cat(Catalog::ThompsonF), &complete_line(), 2).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn trace_conditions_use_fixed_templates() {
        let v = classify(&cat(Catalog::Finite), &cat(Catalog::FreeAbelian(1)), &complete_line(), 4).unwrap();
        for e in &v.trace {
            assert!(CONDITION_TEMPLATES.contains(&e.condition), "{}", e.condition);
        }
    }

    #[test]
    fn asserted_presentations_are_assumptions() {
        let text = r#"{"generators":["a"],"relators":[["a","a","a"]],"asserted":{"certified":"infinity","refuted":"never"}}"#;
        let a = GroupSpec::from_json(text).unwrap();
        assert_eq!(a.is_trivial(), Tri::No);
        let perfect = r#"{"generators":["a"],"relators":[["a"]],"asserted":{"certified":0,"refuted":"unknown"}}"#;
        assert_eq!(GroupSpec::from_json(perfect).unwrap().is_trivial(), Tri::Unknown);
        let v = classify(&a, &cat(Catalog::FreeAbelian(1)), &edgeless_line(), 2).unwrap();
        assert_eq!(v.assumptions.len(), 1);
        assert_eq!(v.finiteness.certified, Certified::Infinity);
    }
}
