//! Homology of `B ⋊_φ Z` for a right-angled Artin group `B`, where `φ` is
//! induced by a graph automorphism.
//!
//! Two independent routes are provided and cross-checked:
//!
//! * [`mapping_torus_homology`] builds the algebraic mapping torus of the
//!   chain map `φ_#` on the circle-model polyhedral product and runs SNF on it.
//! * [`nakaoka_decomposition`] assembles `coker(φ_* − 1)` on `H_p(B)` and
//!   `ker(φ_* − 1)` on `H_{p−1}(B)`, the two Tor terms over `Z[t, t⁻¹]`. This
//!   is valid because the circle model has vanishing boundaries, which is
//!   checked rather than assumed.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::actions::Permutation;
use crate::error::{Error, Result};
use crate::graphs::{enumerate_cliques, flag_complex, Clique, SimpleGraph};
use crate::homology::{homology_of, smith_normal_form, ChainComplex, HomologyGroup, IntMatrix};
use crate::polyprod::{build_polyprod, check_star_hypothesis, raag_homology, CellModel, PolyCell};

/// A vertex permutation of a finite graph that maps edges to edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphAutomorphism(Permutation);

impl GraphAutomorphism {
    pub fn new(graph: &SimpleGraph, perm: Permutation) -> Result<Self> {
        if perm.len() != graph.vertex_count() {
            return Err(Error::domain(format!(
                "automorphism acts on {} points but the graph has {} vertices",
                perm.len(),
                graph.vertex_count()
            )));
        }
        if !perm.is_automorphism_of(graph) {
            return Err(Error::domain("image of every edge is an edge: not a graph automorphism"));
        }
        Ok(GraphAutomorphism(perm))
    }

    pub fn identity(graph: &SimpleGraph) -> Self {
        GraphAutomorphism(Permutation::identity(graph.vertex_count()))
    }

    pub fn permutation(&self) -> &Permutation {
        &self.0
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GraphAutomorphism) -> GraphAutomorphism {
        GraphAutomorphism(self.0.compose(&other.0))
    }

    /// Parses `{"perm": {"u": "v", ...}}`; unlisted vertices are fixed.
    pub fn from_json(graph: &SimpleGraph, text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct AutomorphismFile {
            perm: BTreeMap<String, String>,
        }
        let file: AutomorphismFile = serde_json::from_str(text)?;
        let mut images: Vec<usize> = (0..graph.vertex_count()).collect();
        for (from, to) in &file.perm {
            let a = graph
                .vertex_index(from)
                .ok_or_else(|| Error::parse(format!("automorphism names unknown vertex {from:?}")))?;
            let b = graph
                .vertex_index(to)
                .ok_or_else(|| Error::parse(format!("automorphism names unknown vertex {to:?}")))?;
            images[a] = b;
        }
        let perm = Permutation::new(images).map_err(|e| Error::domain(e.to_string()))?;
        Self::new(graph, perm)
    }
}

/// The signed permutation induced on the `p`-clique basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMap {
    pub clique_size: usize,
    pub basis: Vec<Clique>,
    /// Column `j` is the image of `basis[j]`.
    pub matrix: IntMatrix,
}

impl InducedMap {
    /// Exactly one `±1` in each row and column.
    pub fn is_signed_permutation(&self) -> bool {
        let m = &self.matrix;
        let unit = |x: &num_bigint::BigInt| *x == 1.into() || *x == (-1).into();
        let zero = |x: &num_bigint::BigInt| *x == 0.into();
        let rows_ok = (0..m.rows()).all(|i| {
            let row = m.row(i);
            row.iter().filter(|x| unit(x)).count() == 1 && row.iter().all(|x| unit(x) || zero(x))
        });
        let t = m.transpose();
        let cols_ok = (0..t.rows()).all(|j| t.row(j).iter().filter(|x| unit(x)).count() == 1);
        rows_ok && cols_ok
    }

    pub fn to_json(&self, graph: &SimpleGraph) -> Value {
        let basis: Vec<String> = self.basis.iter().map(|c| graph.format_clique(c)).collect();
        json!({ "p": self.clique_size, "basis": basis, "matrix": self.matrix.to_json() })
    }
}

/// Sign of the permutation that sorts `values` (distinct entries).
fn sorting_sign(values: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            if values[i] > values[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `φ_*` on the free abelian group with basis the `p`-cliques of `Γ`.
pub fn induced_clique_map(graph: &SimpleGraph, phi: &GraphAutomorphism, p: usize) -> Result<InducedMap> {
    GraphAutomorphism::new(graph, phi.0.clone())?;
    let basis = enumerate_cliques(graph, p);
    let position: BTreeMap<&Clique, usize> = basis.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut matrix = IntMatrix::zeros(basis.len(), basis.len());
    for (col, c) in basis.iter().enumerate() {
        let image: Vec<usize> = c.vertices().iter().map(|&v| phi.0.apply(v)).collect();
        let sign = sorting_sign(&image);
        let target = Clique::from_unsorted(image);
        let row = position[&target];
        matrix[(row, col)] = sign.into();
    }
    Ok(InducedMap { clique_size: p, basis, matrix })
}

/// The chain-level map on polyhedral-product cells: permute coordinates with
/// the Koszul sign `(−1)^(d_i·d_j)` for each pair of coordinates that swap.
fn chain_map_on_cell(cell: &PolyCell, phi: &Permutation) -> (PolyCell, i64) {
    let images: Vec<usize> = cell.support.vertices().iter().map(|&v| phi.apply(v)).collect();
    let mut sign = 1;
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            if images[i] > images[j] && (cell.assignment[i].0 * cell.assignment[j].0) % 2 == 1 {
                sign = -sign;
            }
        }
    }
    let mut order: Vec<usize> = (0..images.len()).collect();
    order.sort_by_key(|&k| images[k]);
    let support = Clique::from_unsorted(images.clone());
    let assignment = order.iter().map(|&k| cell.assignment[k]).collect();
    (PolyCell { support, assignment }, sign)
}

/// The algebraic mapping torus of `φ_#` on the circle-model complex over the
/// flag complex of `Γ`, in degrees `0..=p+1`.
pub fn mapping_torus_complex(graph: &SimpleGraph, phi: &GraphAutomorphism, p: usize) -> Result<ChainComplex> {
    GraphAutomorphism::new(graph, phi.0.clone())?;
    let top = p + 1;
    let product = build_polyprod(&flag_complex(graph, top), &CellModel::circle(), top)?;
    let c = &product.complex;
    let rank = |q: i64| if q < 0 { 0 } else { c.rank(q) };
    let mut chain_maps: Vec<IntMatrix> = Vec::with_capacity(top + 1);
    for q in 0..=top {
        let layer = &product.cells[q];
        let mut m = IntMatrix::zeros(layer.len(), layer.len());
        for (col, cell) in layer.iter().enumerate() {
            let (image, sign) = chain_map_on_cell(cell, &phi.0);
            let row = product
                .position(&image)
                .ok_or_else(|| Error::invariant(format!("image cell {image} is missing")))?;
            m[(row, col)] = sign.into();
        }
        chain_maps.push(m);
    }
    let ranks: Vec<usize> = (0..=top as i64).map(|q| rank(q) + rank(q - 1)).collect();
    let mut boundaries = BTreeMap::new();
    for q in 1..=top as i64 {
        // (a, b) ↦ (∂a + (φ_# − 1) b, −∂b) with a ∈ C_q, b ∈ C_{q−1}.
        let mut d = IntMatrix::zeros(ranks[q as usize - 1], ranks[q as usize]);
        d.set_block(0, 0, &c.boundary(q));
        let f = &chain_maps[q as usize - 1];
        d.set_block(0, rank(q), &f.sub(&IntMatrix::identity(f.rows()))?);
        if q >= 2 {
            d.set_block(rank(q - 1), rank(q), &c.boundary(q - 1).negate());
        }
        boundaries.insert(q, d);
    }
    ChainComplex::new(0, ranks, boundaries).map_err(|e| match e {
        Error::Domain(msg) => Error::invariant(format!("mapping torus: {msg}")),
        other => other,
    })
}

/// `H_p(B ⋊_φ Z)` from the mapping torus, independently of clique counting.
pub fn mapping_torus_homology(graph: &SimpleGraph, phi: &GraphAutomorphism, p: usize) -> Result<HomologyGroup> {
    homology_of(&mapping_torus_complex(graph, phi, p)?, p as i64)
}

/// `Tor_0(H_p(B)) ⊕ Tor_1(H_{p−1}(B))` over `Z[t, t⁻¹]` with `t` acting by `φ_*`.
pub fn nakaoka_decomposition(graph: &SimpleGraph, phi: &GraphAutomorphism, p: usize) -> Result<HomologyGroup> {
    if !check_star_hypothesis(&flag_complex(graph, p), &CellModel::circle(), p + 1)? {
        return Err(Error::invariant("quotient differentials of the circle model do not vanish"));
    }
    let tor0 = {
        let m = shifted_map(graph, phi, p)?;
        HomologyGroup::cokernel(&m)
    };
    let tor1 = if p == 0 {
        HomologyGroup::zero()
    } else {
        let m = shifted_map(graph, phi, p - 1)?;
        let kernel_rank = m.cols() - smith_normal_form(&m, false).rank();
        HomologyGroup::free(kernel_rank)
    };
    Ok(tor0.direct_sum(&tor1))
}

/// `φ_* − 1` on `H_j(B)`, after checking that `H_j(B)` is free on the
/// `j`-cliques.
fn shifted_map(graph: &SimpleGraph, phi: &GraphAutomorphism, j: usize) -> Result<IntMatrix> {
    let induced = induced_clique_map(graph, phi, j)?;
    let h = raag_homology(graph, j)?;
    if h != HomologyGroup::free(induced.basis.len()) {
        return Err(Error::invariant(format!(
            "H_{j} of the Artin group is {h}, expected free on {} cliques",
            induced.basis.len()
        )));
    }
    induced.matrix.sub(&IntMatrix::identity(induced.basis.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap(graph: &SimpleGraph) -> GraphAutomorphism {
        GraphAutomorphism::new(graph, Permutation::swap(graph.vertex_count(), 0, 1)).unwrap()
    }

    #[test]
    fn k2_swap_on_top_clique_is_minus_one() {
        let g = SimpleGraph::complete(2);
        let m = induced_clique_map(&g, &swap(&g), 2).unwrap();
        assert_eq!(m.matrix, IntMatrix::from_rows(&[vec![-1]]).unwrap());
        assert!(m.is_signed_permutation());
    }

    #[test]
    fn edgeless_swap_permutes_vertices() {
        let g = SimpleGraph::edgeless(2);
        let m = induced_clique_map(&g, &swap(&g), 1).unwrap();
        assert_eq!(m.matrix, IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap());
    }

    #[test]
    fn k2_swap_torsion() {
        let g = SimpleGraph::complete(2);
        let phi = swap(&g);
        let expected = HomologyGroup::from_cyclic(1, [2.into()]);
        assert_eq!(mapping_torus_homology(&g, &phi, 2).unwrap(), expected);
        assert_eq!(nakaoka_decomposition(&g, &phi, 2).unwrap(), expected);
    }

    #[test]
    fn edgeless_swap_degree_one() {
        let g = SimpleGraph::edgeless(2);
        let phi = swap(&g);
        assert_eq!(mapping_torus_homology(&g, &phi, 1).unwrap(), HomologyGroup::free(2));
        assert_eq!(nakaoka_decomposition(&g, &phi, 1).unwrap(), HomologyGroup::free(2));
    }

    #[test]
    fn identity_is_kunneth() {
        let g = SimpleGraph::path(3);
        let id = GraphAutomorphism::identity(&g);
        for p in 0..=3 {
            let expected = raag_homology(&g, p).unwrap().direct_sum(&if p == 0 {
                HomologyGroup::zero()
            } else {
                raag_homology(&g, p - 1).unwrap()
            });
            assert_eq!(mapping_torus_homology(&g, &id, p).unwrap(), expected, "p = {p}");
        }
    }

    #[test]
    fn rejects_non_automorphism() {
        let g = SimpleGraph::path(3);
        let text = r#"{"perm":{"v0":"v1","v1":"v0"}}"#;
        assert!(matches!(GraphAutomorphism::from_json(&g, text), Err(Error::Domain(_))));
    }

    #[test]
    fn mapping_torus_euler_characteristic_vanishes() {
        let g = SimpleGraph::cycle(4);
        let phi = GraphAutomorphism::new(&g, Permutation::rotation(4)).unwrap();
        let t = mapping_torus_complex(&g, &phi, 4).unwrap();
        assert_eq!(t.euler_characteristic(), 0);
    }
}
