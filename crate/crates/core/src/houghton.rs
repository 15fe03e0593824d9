//! Houghton's groups `H_n`: permutations of `R_n = {1..n} × {1, 2, ...}`
//! that act as a translation far out along each ray.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// A point `(ray, pos)` of `R_n`, with `ray ≥ 1` and `pos ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RayPoint {
    pub ray: u32,
    pub pos: u64,
}

impl RayPoint {
    pub fn new(ray: u32, pos: u64) -> Self {
        RayPoint { ray, pos }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let (r, p) = text
            .split_once(',')
            .ok_or_else(|| Error::parse(format!("ray point {text:?} is not of the form \"ray,pos\"")))?;
        let ray = r.trim().parse().map_err(|_| Error::parse(format!("bad ray in {text:?}")))?;
        let pos = p.trim().parse().map_err(|_| Error::parse(format!("bad position in {text:?}")))?;
        Ok(RayPoint { ray, pos })
    }

    fn check(&self, n: u32) -> Result<()> {
        if self.ray == 0 || self.ray > n || self.pos == 0 {
            return Err(Error::domain(format!(
                "ray point within declared ray count: ({},{}) is not a point of R_{n}",
                self.ray, self.pos
            )));
        }
        Ok(())
    }
}

impl fmt::Display for RayPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.ray, self.pos)
    }
}

/// An element of `H_n`: eventual translations `t` with `Σ t_i = 0` and a
/// finite table of points where the map differs from translation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HoughtonElement {
    n: u32,
    t: Vec<i64>,
    correction: BTreeMap<RayPoint, RayPoint>,
}

impl HoughtonElement {
    /// Validates and canonicalises: entries agreeing with the translation are
    /// dropped, and the resulting map must be a bijection of `R_n`.
    pub fn new(n: u32, t: Vec<i64>, correction: BTreeMap<RayPoint, RayPoint>) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("ray count n ≥ 1"));
        }
        if t.len() != n as usize {
            return Err(Error::domain(format!("translation vector has length n = {n}, got {}", t.len())));
        }
        if t.iter().sum::<i64>() != 0 {
            return Err(Error::domain(format!("translations sum to zero: {t:?}")));
        }
        for (x, y) in &correction {
            x.check(n)?;
            y.check(n)?;
        }
        let mut g = HoughtonElement { n, t, correction };
        g.correction = g
            .correction
            .iter()
            .filter(|&(x, y)| g.translate(*x) != Some(*y))
            .map(|(x, y)| (*x, *y))
            .collect();
        g.check_bijective()?;
        Ok(g)
    }

    pub fn identity(n: u32) -> Self {
        HoughtonElement { n, t: vec![0; n as usize], correction: BTreeMap::new() }
    }

    /// The standard generator moving ray `i` down and ray `j` up, with
    /// `(i, 1) ↦ (j, 1)`.
    pub fn ray_pair(n: u32, i: u32, j: u32) -> Result<Self> {
        if i == j || i == 0 || j == 0 || i > n || j > n {
            return Err(Error::domain(format!("ray pair needs distinct rays in 1..={n}, got ({i},{j})")));
        }
        let mut t = vec![0; n as usize];
        t[i as usize - 1] = -1;
        t[j as usize - 1] = 1;
        Self::new(n, t, BTreeMap::from([(RayPoint::new(i, 1), RayPoint::new(j, 1))]))
    }

    /// The transposition of two points.
    pub fn transposition(n: u32, a: RayPoint, b: RayPoint) -> Result<Self> {
        Self::new(n, vec![0; n as usize], BTreeMap::from([(a, b), (b, a)]))
    }

    pub fn ray_count(&self) -> u32 {
        self.n
    }

    pub fn translations(&self) -> &[i64] {
        &self.t
    }

    pub fn correction(&self) -> &BTreeMap<RayPoint, RayPoint> {
        &self.correction
    }

    pub fn is_identity(&self) -> bool {
        self.t.iter().all(|&x| x == 0) && self.correction.is_empty()
    }

    fn translate(&self, x: RayPoint) -> Option<RayPoint> {
        let pos = x.pos as i64 + self.t[x.ray as usize - 1];
        (pos >= 1).then(|| RayPoint::new(x.ray, pos as u64))
    }

    /// Largest position mentioned by the correction table.
    pub fn span(&self) -> u64 {
        self.correction.iter().flat_map(|(x, y)| [x.pos, y.pos]).max().unwrap_or(0)
    }

    pub fn max_translation(&self) -> u64 {
        self.t.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0)
    }

    /// Positions `1..=W` on every ray determine the whole map.
    pub fn window(&self) -> u64 {
        self.span() + 2 * self.max_translation() + 2
    }

    pub fn act(&self, x: RayPoint) -> Result<RayPoint> {
        x.check(self.n)?;
        if let Some(&y) = self.correction.get(&x) {
            return Ok(y);
        }
        self.translate(x)
            .ok_or_else(|| Error::invariant(format!("{x} translates off its ray")))
    }

    fn points(&self, upto: u64) -> impl Iterator<Item = RayPoint> + '_ {
        (1..=self.n).flat_map(move |r| (1..=upto).map(move |p| RayPoint::new(r, p)))
    }

    /// Injective on the window, total, and onto every point that can only
    /// have a preimage inside the window.
    fn check_bijective(&self) -> Result<()> {
        let w = self.window();
        let mut images = BTreeSet::new();
        for x in self.points(w) {
            let y = match self.correction.get(&x) {
                Some(&y) => y,
                None => self.translate(x).ok_or_else(|| {
                    Error::domain(format!("the map is a bijection of R_{}: {x} has no image", self.n))
                })?,
            };
            if !images.insert(y) {
                return Err(Error::domain(format!("the map is a bijection of R_{}: {y} is hit twice", self.n)));
            }
        }
        let must_hit = self.span() + self.max_translation() + 1;
        if let Some(y) = self.points(must_hit).find(|y| !images.contains(y)) {
            return Err(Error::domain(format!("the map is a bijection of R_{}: {y} is never hit", self.n)));
        }
        Ok(())
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &HoughtonElement) -> Result<HoughtonElement> {
        if self.n != other.n {
            return Err(Error::domain(format!("equal ray counts: {} vs {}", self.n, other.n)));
        }
        let t: Vec<i64> = self.t.iter().zip(&other.t).map(|(a, b)| a + b).collect();
        // Beyond this both factors act by translation.
        let w = other.span().max(self.span() + other.max_translation()) + 1;
        let mut correction = BTreeMap::new();
        for x in self.points(w) {
            let y = self.act(other.act(x)?)?;
            correction.insert(x, y);
        }
        HoughtonElement::new(self.n, t, correction).map_err(|e| Error::invariant(format!("composition: {e}")))
    }

    pub fn inverse(&self) -> Result<HoughtonElement> {
        let t: Vec<i64> = self.t.iter().map(|x| -x).collect();
        let mut correction = BTreeMap::new();
        for x in self.points(self.window()) {
            correction.insert(self.act(x)?, x);
        }
        HoughtonElement::new(self.n, t, correction).map_err(|e| Error::invariant(format!("inverse: {e}")))
    }

    /// Image of a finite set.
    pub fn act_on_set(&self, set: &BTreeSet<RayPoint>) -> Result<BTreeSet<RayPoint>> {
        set.iter().map(|&x| self.act(x)).collect()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct ElementFile {
            n: u32,
            t: Vec<i64>,
            #[serde(default)]
            correction: BTreeMap<String, String>,
        }
        let file: ElementFile = serde_json::from_str(text)?;
        let mut correction = BTreeMap::new();
        for (x, y) in &file.correction {
            correction.insert(RayPoint::parse(x)?, RayPoint::parse(y)?);
        }
        Self::new(file.n, file.t, correction)
    }

    pub fn to_json(&self) -> Value {
        let correction: BTreeMap<String, String> = self
            .correction
            .iter()
            .map(|(x, y)| (format!("{},{}", x.ray, x.pos), format!("{},{}", y.ray, y.pos)))
            .collect();
        json!({ "n": self.n, "t": self.t, "correction": correction })
    }

    /// The action on positions `1..=width` of every ray, one line per ray.
    pub fn window_table(&self, width: u64) -> Result<Vec<String>> {
        (1..=self.n)
            .map(|r| {
                let cells: Vec<String> = (1..=width)
                    .map(|p| self.act(RayPoint::new(r, p)).map(|y| format!("{}->{}", RayPoint::new(r, p), y)))
                    .collect::<Result<_>>()?;
                Ok(cells.join(" "))
            })
            .collect()
    }
}

impl fmt::Display for HoughtonElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t={:?}", self.t)?;
        if !self.correction.is_empty() {
            let parts: Vec<String> = self.correction.iter().map(|(x, y)| format!("{x}->{y}")).collect();
            write!(f, " correction {{{}}}", parts.join(", "))?;
        }
        Ok(())
    }
}

/// The generators used by the witness search: every ray pair `(i, j)`, and
/// for `n = 2` also the transposition of `(1,1)` and `(1,2)`, since the ray
/// pairs alone only generate the translations there.
pub fn standard_generators(n: u32) -> Result<Vec<HoughtonElement>> {
    if n < 2 {
        return Err(Error::domain("n ≥ 2 for the standard generators"));
    }
    let mut gens = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                gens.push(HoughtonElement::ray_pair(n, i, j)?);
            }
        }
    }
    if n == 2 {
        gens.push(HoughtonElement::transposition(2, RayPoint::new(1, 1), RayPoint::new(1, 2))?);
    }
    Ok(gens)
}

/// Breadth-first search over products of standard generators for an element
/// mapping `source` onto `target` setwise. `Ok(None)` means the search cap
/// (number of visited sets) was exhausted, not that no element exists.
pub fn transitivity_witness(
    n: u32,
    source: &BTreeSet<RayPoint>,
    target: &BTreeSet<RayPoint>,
    search_cap: i64,
) -> Result<Option<HoughtonElement>> {
    if search_cap <= 0 {
        return Err(Error::domain(format!("search_cap is positive, got {search_cap}")));
    }
    if n < 2 {
        return Err(Error::domain("n ≥ 2 for transitivity witnesses"));
    }
    if source.len() != target.len() {
        return Err(Error::domain(format!(
            "|source| = |target|: {} vs {}",
            source.len(),
            target.len()
        )));
    }
    for x in source.iter().chain(target) {
        x.check(n)?;
    }
    let gens = standard_generators(n)?;
    let cap = usize::try_from(search_cap).unwrap_or(usize::MAX);
    // parent[state] = (previous state, generator applied last).
    let mut parent: HashMap<BTreeSet<RayPoint>, Option<(BTreeSet<RayPoint>, usize)>> = HashMap::new();
    parent.insert(source.clone(), None);
    let mut queue = VecDeque::from([source.clone()]);
    while let Some(state) = queue.pop_front() {
        if &state == target {
            let mut word = Vec::new();
            let mut cur = state;
            while let Some(Some((prev, g))) = parent.get(&cur) {
                word.push(*g);
                cur = prev.clone();
            }
            // The last generator applied is the outermost factor.
            let mut element = HoughtonElement::identity(n);
            for g in word.iter().rev() {
                element = gens[*g].compose(&element)?;
            }
            return Ok(Some(element));
        }
        for (k, g) in gens.iter().enumerate() {
            let next = g.act_on_set(&state)?;
            if parent.contains_key(&next) {
                continue;
            }
            if parent.len() >= cap {
                return Ok(None);
            }
            parent.insert(next.clone(), Some((state.clone(), k)));
            queue.push_back(next);
        }
    }
    Ok(None)
}
