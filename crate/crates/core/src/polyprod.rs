//! Cellular chain complexes of polyhedral products `X^L`.
//!
//! A cell of `X^L` is a tuple of cells of `X`, one per vertex of `L`, whose
//! support (the vertices carrying a positive-dimensional cell) is a simplex of
//! `L`. Boundaries follow the graded Leibniz rule over the global vertex order.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graphs::{flag_complex, Clique, FlagComplex, SimpleGraph};
use crate::homology::{homology_of, ChainComplex, HomologyGroup, IntMatrix};

/// Upper bound on the default dimension cap.
pub const MAX_DEFAULT_CAP: usize = 6;

/// A finite CW model with a single 0-cell, given by its cellular chain complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellModel {
    complex: ChainComplex,
}

impl CellModel {
    /// `boundaries[&d]` is `∂_d`, with rows indexed by the `(d−1)`-cells.
    pub fn new(cells_per_dim: Vec<usize>, boundaries: BTreeMap<i64, IntMatrix>) -> Result<Self> {
        if cells_per_dim.first() != Some(&1) {
            return Err(Error::domain(format!(
                "a cell model has exactly one 0-cell, got {}",
                cells_per_dim.first().copied().unwrap_or(0)
            )));
        }
        Ok(CellModel { complex: ChainComplex::new(0, cells_per_dim, boundaries)? })
    }

    /// One 0-cell and one 1-cell.
    pub fn circle() -> Self {
        Self::new(vec![1, 1], BTreeMap::new()).expect("valid model")
    }

    /// Wedge of two circles.
    pub fn wedge2() -> Self {
        Self::new(vec![1, 2], BTreeMap::new()).expect("valid model")
    }

    /// `RP^2`: one cell in each dimension with `∂_2 = (2)`.
    pub fn projective_plane() -> Self {
        let d2 = IntMatrix::from_rows(&[vec![2]]).expect("1x1");
        Self::new(vec![1, 1, 1], BTreeMap::from([(2, d2)])).expect("valid model")
    }

    /// Torus with its standard minimal cell structure.
    pub fn torus() -> Self {
        Self::new(vec![1, 2, 1], BTreeMap::new()).expect("valid model")
    }

    /// Looks up a built-in model by name.
    pub fn named(name: &str) -> Result<Self> {
        match name {
            "circle" => Ok(Self::circle()),
            "wedge2" => Ok(Self::wedge2()),
            "projective_plane" => Ok(Self::projective_plane()),
            "torus" => Ok(Self::torus()),
            other => Err(Error::parse(format!(
                "unknown cell model {other:?} (built-ins: circle, wedge2, projective_plane, torus)"
            ))),
        }
    }

    /// Parses the chain-complex format with an extra `"basepoint": 0` entry.
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct ModelFile {
            ranks: Vec<usize>,
            #[serde(default)]
            boundaries: BTreeMap<String, Vec<Vec<i64>>>,
            basepoint: usize,
        }
        let file: ModelFile = serde_json::from_str(text)?;
        if file.basepoint != 0 {
            return Err(Error::parse("basepoint must name the unique 0-cell, index 0"));
        }
        let mut boundaries = BTreeMap::new();
        for (key, rows) in file.boundaries {
            let d: i64 = key.parse().map_err(|_| Error::parse(format!("bad degree key {key:?}")))?;
            let m = if rows.is_empty() {
                let r = file.ranks.get((d - 1).max(0) as usize).copied().unwrap_or(0);
                let c = file.ranks.get(d.max(0) as usize).copied().unwrap_or(0);
                IntMatrix::zeros(r, c)
            } else {
                IntMatrix::from_rows(&rows)?
            };
            boundaries.insert(d, m);
        }
        Self::new(file.ranks, boundaries)
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn top_dimension(&self) -> usize {
        self.complex.max_degree() as usize
    }

    pub fn cells(&self, dim: usize) -> usize {
        self.complex.rank(dim as i64)
    }
}

/// A cell of a polyhedral product.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PolyCell {
    /// Vertices of `L` carrying a positive-dimensional cell.
    pub support: Clique,
    /// `(dimension, index)` of the cell of `X` at each support vertex, in
    /// support order.
    pub assignment: Vec<(usize, usize)>,
}

impl PolyCell {
    pub fn basepoint() -> Self {
        PolyCell { support: Clique::empty(), assignment: Vec::new() }
    }

    pub fn dimension(&self) -> usize {
        self.assignment.iter().map(|(d, _)| d).sum()
    }

    pub fn format(&self, graph: &SimpleGraph) -> String {
        if self.support.is_empty() {
            return "*".to_string();
        }
        let parts: Vec<String> = self
            .support
            .vertices()
            .iter()
            .zip(&self.assignment)
            .map(|(&v, (d, i))| format!("{}:e{d}_{i}", graph.name(v)))
            .collect();
        parts.join("×")
    }
}

impl fmt::Display for PolyCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.support)?;
        for (k, (d, i)) in self.assignment.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "e{d}_{i}")?;
        }
        write!(f, "]")
    }
}

/// The cellular chain complex of `X^L` together with its cell bases.
#[derive(Clone, Debug)]
pub struct PolyProduct {
    pub complex: ChainComplex,
    /// `cells[p]` lists the `p`-cells in basis order.
    pub cells: Vec<Vec<PolyCell>>,
}

impl PolyProduct {
    pub fn position(&self, cell: &PolyCell) -> Option<usize> {
        self.cells.get(cell.dimension())?.binary_search(cell).ok()
    }
}

/// The default dimension cap for `X^L`.
pub fn default_dim_cap(l: &FlagComplex, x: &CellModel) -> usize {
    let top_l = l.top_dimension().max(0) as usize;
    (top_l + x.top_dimension()).min(MAX_DEFAULT_CAP)
}

/// Enumerates the cells of `X^L` of dimension at most `dim_cap`, each
/// dimension sorted by `(support, assignment)`.
pub fn polyprod_cells(l: &FlagComplex, x: &CellModel, dim_cap: usize) -> Vec<Vec<PolyCell>> {
    let mut cells: Vec<Vec<PolyCell>> = vec![Vec::new(); dim_cap + 1];
    for simplex in l.iter() {
        if simplex.len() > dim_cap {
            continue;
        }
        let mut assignment = Vec::with_capacity(simplex.len());
        assign(simplex, x, dim_cap, 0, &mut assignment, &mut cells);
    }
    for layer in &mut cells {
        layer.sort();
    }
    cells
}

fn assign(
    support: &Clique,
    x: &CellModel,
    budget: usize,
    used: usize,
    assignment: &mut Vec<(usize, usize)>,
    out: &mut [Vec<PolyCell>],
) {
    if assignment.len() == support.len() {
        out[used].push(PolyCell { support: support.clone(), assignment: assignment.clone() });
        return;
    }
    let remaining = support.len() - assignment.len() - 1;
    for d in 1..=x.top_dimension() {
        if used + d + remaining > budget {
            break;
        }
        for i in 0..x.cells(d) {
            assignment.push((d, i));
            assign(support, x, budget, used + d, assignment, out);
            assignment.pop();
        }
    }
}

/// Graded Leibniz boundary of one cell, as `(face, coefficient)` pairs.
pub fn polycell_boundary(cell: &PolyCell, x: &CellModel) -> Vec<(PolyCell, BigInt)> {
    let mut out: BTreeMap<PolyCell, BigInt> = BTreeMap::new();
    let mut earlier = 0usize;
    for (i, &(d, idx)) in cell.assignment.iter().enumerate() {
        let sign: i64 = if earlier.is_multiple_of(2) { 1 } else { -1 };
        if let Some(dx) = x.complex.boundary_ref(d as i64) {
            for face in 0..dx.rows() {
                let c = &dx[(face, idx)];
                if c.is_zero() {
                    continue;
                }
                let target = if d == 1 {
                    let mut vertices = cell.support.vertices().to_vec();
                    vertices.remove(i);
                    let mut assignment = cell.assignment.clone();
                    assignment.remove(i);
                    PolyCell { support: Clique::from_unsorted(vertices), assignment }
                } else {
                    let mut assignment = cell.assignment.clone();
                    assignment[i] = (d - 1, face);
                    PolyCell { support: cell.support.clone(), assignment }
                };
                *out.entry(target).or_insert_with(BigInt::zero) += c * sign;
            }
        }
        earlier += d;
    }
    out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// The cellular chain complex of `X^L` truncated at `dim_cap`.
///
/// Fails with an invariant error if the generated boundaries do not square to
/// zero.
pub fn build_polyprod(l: &FlagComplex, x: &CellModel, dim_cap: usize) -> Result<PolyProduct> {
    let cells = polyprod_cells(l, x, dim_cap);
    let index: Vec<HashMap<&PolyCell, usize>> =
        cells.iter().map(|layer| layer.iter().enumerate().map(|(k, c)| (c, k)).collect()).collect();
    let mut boundaries = BTreeMap::new();
    for p in 1..=dim_cap {
        let mut m = IntMatrix::zeros(cells[p - 1].len(), cells[p].len());
        for (col, cell) in cells[p].iter().enumerate() {
            for (face, c) in polycell_boundary(cell, x) {
                let row = *index[p - 1].get(&face).ok_or_else(|| {
                    Error::invariant(format!("face {face} of {cell} is missing from the complex"))
                })?;
                m[(row, col)] += c;
            }
        }
        boundaries.insert(p as i64, m);
    }
    let ranks = cells.iter().map(Vec::len).collect();
    let complex = ChainComplex::new(0, ranks, boundaries).map_err(|e| match e {
        Error::Domain(msg) => Error::invariant(format!("polyhedral product boundary: {msg}")),
        other => other,
    })?;
    Ok(PolyProduct { complex, cells })
}

/// The cellular chain complex of `X^L` truncated at `dim_cap`.
pub fn build_polyprod_complex(l: &FlagComplex, x: &CellModel, dim_cap: usize) -> Result<ChainComplex> {
    Ok(build_polyprod(l, x, dim_cap)?.complex)
}

/// `H_p` of the right-angled Artin group on `Γ`, computed from the circle
/// model over the flag complex.
pub fn raag_homology(graph: &SimpleGraph, p: usize) -> Result<HomologyGroup> {
    let l = flag_complex(graph, p);
    let complex = build_polyprod_complex(&l, &CellModel::circle(), p + 1)?;
    homology_of(&complex, p as i64)
}

/// Whether every boundary matrix of `X^L` vanishes up to `dim_cap`.
pub fn check_star_hypothesis(l: &FlagComplex, x: &CellModel, dim_cap: usize) -> Result<bool> {
    Ok(build_polyprod_complex(l, x, dim_cap)?.all_boundaries_zero())
}

pub fn polyprod_json(product: &PolyProduct, graph: &SimpleGraph) -> Value {
    let cells: Vec<Value> = product
        .cells
        .iter()
        .map(|layer| Value::Array(layer.iter().map(|c| json!(c.format(graph))).collect()))
        .collect();
    json!({ "cells": cells, "complex": product.complex.to_json() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::homology_all;

    fn groups(c: &ChainComplex) -> Vec<String> {
        homology_all(c).into_iter().map(|(_, h)| h.to_string()).collect()
    }

    #[test]
    fn point_base_gives_the_model() {
        let l = flag_complex(&SimpleGraph::edgeless(1), 1);
        let c = build_polyprod_complex(&l, &CellModel::circle(), 1).unwrap();
        assert_eq!(groups(&c), ["Z", "Z"]);
        let c = build_polyprod_complex(&l, &CellModel::projective_plane(), 2).unwrap();
        assert_eq!(groups(&c), ["Z", "Z/2", "0"]);
    }

    #[test]
    fn edge_base_gives_torus() {
        let l = flag_complex(&SimpleGraph::complete(2), 1);
        let c = build_polyprod_complex(&l, &CellModel::circle(), 2).unwrap();
        assert_eq!(groups(&c), ["Z", "Z^2", "Z"]);
    }

    #[test]
    fn two_points_give_a_wedge() {
        let l = flag_complex(&SimpleGraph::edgeless(2), 1);
        let c = build_polyprod_complex(&l, &CellModel::projective_plane(), 2).unwrap();
        assert_eq!(groups(&c), ["Z", "Z/2 + Z/2", "0"]);
    }

    #[test]
    fn projective_plane_product_torsion() {
        // RP^2 × RP^2: H_1 = (Z/2)^2, H_2 = Z/2, H_3 = Z/2, H_4 = 0.
        let l = flag_complex(&SimpleGraph::complete(2), 1);
        let c = build_polyprod_complex(&l, &CellModel::projective_plane(), 4).unwrap();
        assert_eq!(groups(&c), ["Z", "Z/2 + Z/2", "Z/2", "Z/2", "0"]);
    }

    #[test]
    fn raag_examples() {
        let path = SimpleGraph::path(3);
        let hs: Vec<String> = (0..=3).map(|p| raag_homology(&path, p).unwrap().to_string()).collect();
        assert_eq!(hs, ["Z", "Z^3", "Z^2", "0"]);
        let free = SimpleGraph::edgeless(4);
        assert_eq!(raag_homology(&free, 1).unwrap(), HomologyGroup::free(4));
        assert_eq!(raag_homology(&free, 2).unwrap(), HomologyGroup::zero());
    }

    #[test]
    fn star_hypothesis_examples() {
        let l = flag_complex(&SimpleGraph::cycle(4), 2);
        assert!(check_star_hypothesis(&l, &CellModel::circle(), 4).unwrap());
        assert!(check_star_hypothesis(&l, &CellModel::wedge2(), 4).unwrap());
        let point = flag_complex(&SimpleGraph::edgeless(1), 0);
        assert!(!check_star_hypothesis(&point, &CellModel::projective_plane(), 2).unwrap());
    }

    #[test]
    fn leibniz_sign_on_second_coordinate() {
        // e1 × e2 in S^1 × RP^2: ∂ = −2 · (e1 × e1).
        let cell = PolyCell { support: Clique::new(vec![0, 1]).unwrap(), assignment: vec![(1, 0), (2, 0)] };
        let b = polycell_boundary(&cell, &CellModel::projective_plane());
        let face = PolyCell { support: Clique::new(vec![0, 1]).unwrap(), assignment: vec![(1, 0), (1, 0)] };
        assert_eq!(b, vec![(face, BigInt::from(-2))]);
    }

    #[test]
    fn model_file_and_errors() {
        let m = CellModel::from_json(r#"{"ranks":[1,1,1],"boundaries":{"2":[[2]]},"basepoint":0}"#).unwrap();
        assert_eq!(m, CellModel::projective_plane());
        let err = CellModel::from_json(r#"{"ranks":[2,1],"boundaries":{},"basepoint":0}"#).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
        assert!(CellModel::named("sphere").is_err());
    }

    #[test]
    fn default_cap() {
        let l = flag_complex(&SimpleGraph::complete(2), 1);
        assert_eq!(default_dim_cap(&l, &CellModel::circle()), 2);
        let l = flag_complex(&SimpleGraph::complete(7), 6);
        assert_eq!(default_dim_cap(&l, &CellModel::torus()), MAX_DEFAULT_CAP);
    }
}
