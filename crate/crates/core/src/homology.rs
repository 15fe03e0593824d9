//! Exact integer linear algebra and homology of chain complexes.
//!
//! Matrices are dense with arbitrary-precision entries. Smith normal form uses
//! least-absolute-value pivoting (ties broken by row-major position), which
//! keeps intermediate growth in check at the sizes this crate works with.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from `i64` rows; all rows must share a length.
    ///
    /// An empty row list gives a `0 × 0` matrix; use [`IntMatrix::zeros`] for
    /// `0 × n` shapes.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::domain("dimensions consistent: ragged matrix rows"));
        }
        let data = rows.iter().flatten().map(|&x| BigInt::from(x)).collect();
        Ok(IntMatrix { rows: rows.len(), cols, data })
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, d) in entries.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::domain(format!(
                "dimensions consistent: cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self - other`, shapes must agree.
    pub fn sub(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::domain("dimensions consistent: shape mismatch in subtraction"));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(IntMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn negate(&self) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &IntMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += factor * row[source]
    pub fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.data[source * self.cols + j];
            if !s.is_zero() {
                let delta = factor * s;
                self.data[target * self.cols + j] += delta;
            }
        }
    }

    /// col[target] += factor * col[source]
    pub fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + source];
            if !s.is_zero() {
                let delta = factor * s;
                self.data[i * self.cols + target] += delta;
            }
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = &mut self.data[i * self.cols + j];
            *x = -std::mem::take(x);
        }
    }

    /// Entries as JSON numbers (or decimal strings once they leave `i64`).
    pub fn to_json(&self) -> Value {
        Value::Array((0..self.rows).map(|i| Value::Array(self.row(i).iter().map(bigint_json).collect())).collect())
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

pub(crate) fn bigint_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

/// Output of [`smith_normal_form`].
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// `min(rows, cols)` non-negative entries, each dividing the next, zeros last.
    pub diagonal: Vec<BigInt>,
    /// Unimodular `U` with `U·M·V = D`, when requested.
    pub left: Option<IntMatrix>,
    /// Unimodular `V` with `U·M·V = D`, when requested.
    pub right: Option<IntMatrix>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().take_while(|d| !d.is_zero()).count()
    }

    /// Nonzero diagonal entries.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.diagonal[..self.rank()]
    }

    /// The diagonal matrix `D` with the shape of the input.
    pub fn diagonal_matrix(&self, rows: usize, cols: usize) -> IntMatrix {
        let mut d = IntMatrix::zeros(rows, cols);
        for (i, x) in self.diagonal.iter().enumerate() {
            d[(i, i)] = x.clone();
        }
        d
    }
}

/// Least nonzero absolute value in the lower-right block starting at `t`,
/// ties broken by row-major position.
fn least_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a[(bi, bj)].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Smith normal form of `m`.
///
/// With `transforms` set, also returns unimodular `U`, `V` with `U·m·V = D`.
pub fn smith_normal_form(m: &IntMatrix, transforms: bool) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut left = transforms.then(|| IntMatrix::identity(rows));
    let mut right = transforms.then(|| IntMatrix::identity(cols));
    let size = rows.min(cols);

    if a.is_zero() {
        return SmithForm { diagonal: vec![BigInt::zero(); size], left, right };
    }

    let mut t = 0;
    while t < size {
        let Some((pi, pj)) = least_pivot(&a, t) else { break };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        if let Some(u) = left.as_mut() {
            u.swap_rows(t, pi);
        }
        if let Some(v) = right.as_mut() {
            v.swap_cols(t, pj);
        }

        loop {
            let pivot = a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&pivot);
                a.add_row_multiple(i, t, &q);
                if let Some(u) = left.as_mut() {
                    u.add_row_multiple(i, t, &q);
                }
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&pivot);
                a.add_col_multiple(j, t, &q);
                if let Some(v) = right.as_mut() {
                    v.add_col_multiple(j, t, &q);
                }
                clean &= a[(t, j)].is_zero();
            }

            if clean {
                // The pivot must divide the whole remaining block; if not,
                // fold the offending row into the pivot row and reduce again.
                let offender = (t + 1..rows).find(|&i| {
                    (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&pivot))
                });
                match offender {
                    None => break,
                    Some(i) => {
                        a.add_row_multiple(t, i, &BigInt::one());
                        if let Some(u) = left.as_mut() {
                            u.add_row_multiple(t, i, &BigInt::one());
                        }
                    }
                }
            }

            // Re-select the least entry of the block as the new pivot.
            let (pi, pj) = least_pivot(&a, t).expect("block still has the old pivot's residue");
            a.swap_rows(t, pi);
            a.swap_cols(t, pj);
            if let Some(u) = left.as_mut() {
                u.swap_rows(t, pi);
            }
            if let Some(v) = right.as_mut() {
                v.swap_cols(t, pj);
            }
        }

        if a[(t, t)].is_negative() {
            a.negate_row(t);
            if let Some(u) = left.as_mut() {
                u.negate_row(t);
            }
        }
        t += 1;
    }

    let diagonal = (0..size).map(|i| a[(i, i)].clone()).collect();
    SmithForm { diagonal, left, right }
}

/// A finitely generated abelian group `Z^betti ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k`
/// with `d_1 | d_2 | ... | d_k` and every `d_i ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        HomologyGroup { betti: rank, torsion: Vec::new() }
    }

    /// Canonical form of `Z^betti ⊕ ⊕ Z/orders[i]`, with arbitrary orders.
    ///
    /// Orders of 0 count as free summands, orders of ±1 vanish, and the rest
    /// are renormalised into divisibility order.
    pub fn from_cyclic(betti: usize, orders: impl IntoIterator<Item = BigInt>) -> Self {
        let mut betti = betti;
        let mut finite = Vec::new();
        for d in orders {
            let d = d.abs();
            if d.is_zero() {
                betti += 1;
            } else if !d.is_one() {
                finite.push(d);
            }
        }
        let torsion = if finite.len() <= 1 {
            finite
        } else {
            let snf = smith_normal_form(&IntMatrix::diagonal(&finite), false);
            snf.diagonal.into_iter().filter(|d| !d.is_one()).collect()
        };
        HomologyGroup { betti, torsion }
    }

    /// Cokernel of an integer matrix viewed as a map `Z^cols → Z^rows`.
    pub fn cokernel(m: &IntMatrix) -> Self {
        let snf = smith_normal_form(m, false);
        let rank = snf.rank();
        Self::from_cyclic(m.rows() - rank, snf.invariant_factors().to_vec())
    }

    pub fn direct_sum(&self, other: &HomologyGroup) -> Self {
        Self::from_cyclic(
            self.betti + other.betti,
            self.torsion.iter().chain(&other.torsion).cloned(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "betti": self.betti,
            "torsion": self.torsion.iter().map(bigint_json).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            k => parts.push(format!("Z^{k}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// A bounded chain complex of free abelian groups.
///
/// Chain groups live in degrees `min_degree ..= max_degree`; outside that range
/// they are zero. `∂_p` maps degree `p` to degree `p − 1` and is stored as a
/// `rank(p−1) × rank(p)` matrix, rows indexed by degree-`(p−1)` cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    min_degree: i64,
    ranks: Vec<usize>,
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    /// Builds and validates a complex; `boundaries` maps `p` to `∂_p`.
    ///
    /// Missing differentials are zero. Shapes and `∂_p ∘ ∂_{p+1} = 0` are
    /// checked here.
    pub fn new(min_degree: i64, ranks: Vec<usize>, mut boundaries: BTreeMap<i64, IntMatrix>) -> Result<Self> {
        let top = min_degree + ranks.len() as i64 - 1;
        if let Some((&p, _)) = boundaries.iter().find(|(&p, _)| p <= min_degree || p > top) {
            return Err(Error::domain(format!(
                "boundary ∂_{p} lies outside the complex range {min_degree}..={top}"
            )));
        }
        let rank_at = |p: i64| -> usize {
            if p < min_degree || p > top {
                0
            } else {
                ranks[(p - min_degree) as usize]
            }
        };
        let mut stored = Vec::with_capacity(ranks.len());
        for (k, &r) in ranks.iter().enumerate() {
            let p = min_degree + k as i64;
            let below = rank_at(p - 1);
            let m = boundaries.remove(&p).unwrap_or_else(|| IntMatrix::zeros(below, r));
            if m.rows() != below || m.cols() != r {
                return Err(Error::domain(format!(
                    "dimensions consistent: ∂_{p} must be {below}x{r}, got {}x{}",
                    m.rows(),
                    m.cols()
                )));
            }
            stored.push(m);
        }
        let complex = ChainComplex { min_degree, ranks, boundaries: stored };
        complex.verify_square_zero()?;
        Ok(complex)
    }

    fn verify_square_zero(&self) -> Result<()> {
        for k in 1..self.boundaries.len() {
            let (lower, upper) = (&self.boundaries[k - 1], &self.boundaries[k]);
            if lower.is_zero() || upper.is_zero() {
                continue;
            }
            if !lower.mul(upper)?.is_zero() {
                let p = self.min_degree + k as i64;
                return Err(Error::domain(format!("∂_{} ∘ ∂_{p} = 0 fails", p - 1)));
            }
        }
        Ok(())
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn max_degree(&self) -> i64 {
        self.min_degree + self.ranks.len() as i64 - 1
    }

    pub fn rank(&self, p: i64) -> usize {
        if p < self.min_degree || p > self.max_degree() {
            0
        } else {
            self.ranks[(p - self.min_degree) as usize]
        }
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `∂_p`; a correctly shaped zero matrix outside the stored range.
    pub fn boundary(&self, p: i64) -> IntMatrix {
        if p < self.min_degree || p > self.max_degree() {
            IntMatrix::zeros(self.rank(p - 1), self.rank(p))
        } else {
            self.boundaries[(p - self.min_degree) as usize].clone()
        }
    }

    pub fn boundary_ref(&self, p: i64) -> Option<&IntMatrix> {
        if p < self.min_degree || p > self.max_degree() {
            None
        } else {
            Some(&self.boundaries[(p - self.min_degree) as usize])
        }
    }

    pub fn all_boundaries_zero(&self) -> bool {
        self.boundaries.iter().all(IntMatrix::is_zero)
    }

    /// Euler characteristic of the chain groups, `Σ (−1)^p rank C_p`.
    pub fn euler_characteristic(&self) -> i64 {
        (self.min_degree..=self.max_degree())
            .map(|p| if p.rem_euclid(2) == 0 { 1 } else { -1 } * self.rank(p) as i64)
            .sum()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ChainComplexFile = serde_json::from_str(text)?;
        let mut boundaries = BTreeMap::new();
        for (key, rows) in file.boundaries {
            let p: i64 = key
                .parse()
                .map_err(|_| Error::parse(format!("boundary key {key:?} is not an integer degree")))?;
            let m = if rows.is_empty() {
                let below = if p >= 1 { file.ranks.get((p - 1) as usize).copied().unwrap_or(0) } else { 0 };
                let here = file.ranks.get(p as usize).copied().unwrap_or(0);
                if below != 0 {
                    return Err(Error::parse(format!("∂_{p} has no rows but rank C_{} = {below}", p - 1)));
                }
                IntMatrix::zeros(0, here)
            } else {
                IntMatrix::from_rows(&rows).map_err(|e| Error::parse(e.to_string()))?
            };
            boundaries.insert(p, m);
        }
        Self::new(0, file.ranks, boundaries)
    }

    /// The chain-complex file format (only for complexes starting in degree 0).
    pub fn to_json(&self) -> Value {
        let mut map = serde_json::Map::new();
        for p in (self.min_degree + 1)..=self.max_degree() {
            let m = self.boundary(p);
            if !m.is_zero() {
                map.insert(p.to_string(), m.to_json());
            }
        }
        json!({ "ranks": self.ranks, "boundaries": Value::Object(map) })
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ChainComplexFile {
    ranks: Vec<usize>,
    #[serde(default)]
    boundaries: BTreeMap<String, Vec<Vec<i64>>>,
}

/// `H_p = ker ∂_p / im ∂_{p+1}` in canonical form.
pub fn homology_of(complex: &ChainComplex, p: i64) -> Result<HomologyGroup> {
    if p < complex.min_degree() || p > complex.max_degree() {
        return Err(Error::domain(format!(
            "p and p+1 within complex range: degree {p} outside {}..={}",
            complex.min_degree(),
            complex.max_degree()
        )));
    }
    let out_rank = boundary_rank(&complex.boundary(p));
    let incoming = smith_normal_form(&complex.boundary(p + 1), false);
    let betti = complex.rank(p) - out_rank - incoming.rank();
    Ok(HomologyGroup::from_cyclic(betti, incoming.invariant_factors().to_vec()))
}

/// Homology in every degree of the complex, reusing each SNF once.
pub fn homology_all(complex: &ChainComplex) -> Vec<(i64, HomologyGroup)> {
    let lo = complex.min_degree();
    let hi = complex.max_degree();
    let snfs: Vec<SmithForm> =
        (lo..=hi + 1).map(|p| smith_normal_form(&complex.boundary(p), false)).collect();
    (lo..=hi)
        .map(|p| {
            let k = (p - lo) as usize;
            let betti = complex.rank(p) - snfs[k].rank() - snfs[k + 1].rank();
            (p, HomologyGroup::from_cyclic(betti, snfs[k + 1].invariant_factors().to_vec()))
        })
        .collect()
}

fn boundary_rank(m: &IntMatrix) -> usize {
    if m.is_zero() {
        0
    } else {
        smith_normal_form(m, false).rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn snf_of_diag_2_3() {
        // gcd(2,3) = 1, lcm(2,3) = 6
        let m = IntMatrix::diagonal(&big(&[2, 3]));
        assert_eq!(smith_normal_form(&m, false).diagonal, big(&[1, 6]));
    }

    #[test]
    fn snf_zero_and_identity() {
        assert_eq!(smith_normal_form(&IntMatrix::zeros(3, 2), false).diagonal, big(&[0, 0]));
        assert_eq!(smith_normal_form(&IntMatrix::identity(4), false).diagonal, big(&[1, 1, 1, 1]));
    }

    #[test]
    fn snf_transforms_reconstruct() {
        let m = mat(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let snf = smith_normal_form(&m, true);
        assert_eq!(snf.diagonal, big(&[2, 6, 12]));
        let u = snf.left.as_ref().unwrap();
        let v = snf.right.as_ref().unwrap();
        let d = u.mul(&m).unwrap().mul(v).unwrap();
        assert_eq!(d, snf.diagonal_matrix(3, 3));
    }

    #[test]
    fn circle_model_homology() {
        let c = ChainComplex::new(0, vec![1, 1], BTreeMap::new()).unwrap();
        assert_eq!(homology_of(&c, 0).unwrap(), HomologyGroup::free(1));
        assert_eq!(homology_of(&c, 1).unwrap(), HomologyGroup::free(1));
    }

    #[test]
    fn projective_plane_cell_model() {
        let mut b = BTreeMap::new();
        b.insert(2, mat(&[&[2]]));
        let c = ChainComplex::new(0, vec![1, 1, 1], b).unwrap();
        assert_eq!(homology_of(&c, 0).unwrap(), HomologyGroup::free(1));
        assert_eq!(homology_of(&c, 1).unwrap(), HomologyGroup::from_cyclic(0, big(&[2])));
        assert_eq!(homology_of(&c, 2).unwrap(), HomologyGroup::zero());
    }

    #[test]
    fn out_of_range_degree_is_domain_error() {
        let c = ChainComplex::new(0, vec![1, 1], BTreeMap::new()).unwrap();
        assert!(matches!(homology_of(&c, 2), Err(Error::Domain(_))));
        assert!(matches!(homology_of(&c, -1), Err(Error::Domain(_))));
    }

    #[test]
    fn square_zero_is_enforced() {
        let mut b = BTreeMap::new();
        b.insert(1, mat(&[&[1]]));
        b.insert(2, mat(&[&[1]]));
        assert!(matches!(ChainComplex::new(0, vec![1, 1, 1], b), Err(Error::Domain(_))));
    }

    #[test]
    fn canonical_torsion_order() {
        let g = HomologyGroup::from_cyclic(0, big(&[6, 2, 1, 4]));
        assert_eq!(g.torsion, big(&[2, 2, 12]));
        assert_eq!(g.to_string(), "Z/2 + Z/2 + Z/12");
        let h = HomologyGroup::free(1).direct_sum(&HomologyGroup::from_cyclic(0, big(&[2])));
        assert_eq!(h.to_string(), "Z + Z/2");
        assert_eq!(HomologyGroup::zero().to_string(), "0");
    }

    #[test]
    fn json_format_round_trip() {
        let text = r#"{"ranks":[1,1,1],"boundaries":{"2":[[2]]}}"#;
        let c = ChainComplex::from_json(text).unwrap();
        assert_eq!(homology_of(&c, 1).unwrap().to_string(), "Z/2");
        let again = ChainComplex::from_json(&c.to_json().to_string()).unwrap();
        assert_eq!(again, c);
    }
}
