//! Independent brute-force oracles shared by the integration tests.
//!
//! Nothing here calls the library's clique enumeration, Smith normal form or
//! orbit code; graphs are handled as bitmasks and abelian invariants come from
//! determinantal divisors.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use wreathlab::actions::Permutation;
use wreathlab::graphs::SimpleGraph;
use wreathlab::homology::{HomologyGroup, IntMatrix};

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn pair_index(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

fn mask_connected(n: usize, adj: &[u32]) -> bool {
    if n == 0 {
        return true;
    }
    let mut seen = 1u32;
    let mut frontier = 1u32;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & !seen;
        seen |= new;
        frontier |= new;
    }
    seen == (1u32 << n) - 1
}

/// One graph per isomorphism class on `n` vertices (`n ≤ 6`).
pub fn graphs_up_to_isomorphism(n: usize, connected_only: bool) -> Vec<SimpleGraph> {
    let pairs = pair_index(n);
    let perms = permutations(n);
    // Position of each pair after relabelling by each permutation.
    let moved: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| {
            pairs
                .iter()
                .map(|&(u, v)| {
                    let (a, b) = (p[u].min(p[v]), p[u].max(p[v]));
                    pairs.iter().position(|&x| x == (a, b)).unwrap()
                })
                .collect()
        })
        .collect();
    let mut seen: HashSet<u32> = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << pairs.len()) {
        let mut adj = vec![0u32; n];
        for (k, &(u, v)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
        if connected_only && !mask_connected(n, &adj) {
            continue;
        }
        let canonical = moved
            .iter()
            .map(|m| (0..pairs.len()).filter(|&k| mask >> k & 1 == 1).fold(0u32, |acc, k| acc | 1 << m[k]))
            .min()
            .unwrap_or(0);
        if seen.insert(canonical) {
            let edges: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e).collect();
            out.push(SimpleGraph::from_edges(n, &edges).unwrap());
        }
    }
    out
}

/// Number of `p`-element vertex subsets that are pairwise adjacent.
pub fn clique_count(graph: &SimpleGraph, p: usize) -> usize {
    let n = graph.vertex_count();
    (0u32..(1u32 << n))
        .filter(|s| s.count_ones() as usize == p)
        .filter(|s| {
            let vs: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
            vs.iter().enumerate().all(|(i, &a)| vs[i + 1..].iter().all(|&b| graph.is_edge(a, b)))
        })
        .count()
}

/// Every automorphism of a small graph, identity first.
pub fn automorphisms(graph: &SimpleGraph) -> Vec<Permutation> {
    let n = graph.vertex_count();
    permutations(n)
        .into_iter()
        .filter(|p| {
            (0..n).all(|u| (u + 1..n).all(|v| graph.is_edge(u, v) == graph.is_edge(p[u], p[v])))
        })
        .map(|p| Permutation::new(p).unwrap())
        .collect()
}

/// Determinant by cofactor-free fraction-free elimination (Bareiss).
pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    assert_eq!(n, m.cols());
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &a[n - 1][n - 1]
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..(1u32 << n))
        .filter(|s| s.count_ones() as usize == k)
        .map(|s| (0..n).filter(|&i| s >> i & 1 == 1).collect())
        .collect()
}

/// Cokernel of `m: Z^cols → Z^rows` from determinantal divisors: `d_k` is the
/// gcd of all `k × k` minors and the invariant factors are `d_k / d_{k−1}`.
/// Exponential; only for small matrices.
pub fn cokernel_by_minors(m: &IntMatrix) -> HomologyGroup {
    let (r, c) = (m.rows(), m.cols());
    let mut divisors = vec![BigInt::one()];
    for k in 1..=r.min(c) {
        let mut g = BigInt::zero();
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let mut minor = IntMatrix::zeros(k, k);
                for (i, &ri) in rows.iter().enumerate() {
                    for (j, &cj) in cols.iter().enumerate() {
                        minor[(i, j)] = m[(ri, cj)].clone();
                    }
                }
                g = g.gcd(&determinant(&minor));
            }
        }
        if g.is_zero() {
            break;
        }
        divisors.push(g);
    }
    let rank = divisors.len() - 1;
    let factors: Vec<BigInt> = (1..=rank).map(|k| (&divisors[k] / &divisors[k - 1]).abs()).collect();
    let torsion: Vec<BigInt> = factors.into_iter().filter(|d| !d.is_one()).collect();
    HomologyGroup { betti: r - rank, torsion }
}

/// Vertex orbits of the group generated by `gens`, by union-find.
pub fn orbit_count(n: usize, gens: &[Permutation]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for g in gens {
        for v in 0..n {
            let (a, b) = (find(&mut parent, v), find(&mut parent, g.apply(v)));
            parent[a] = b;
        }
    }
    (0..n).map(|v| find(&mut parent, v)).collect::<BTreeSet<_>>().len()
}

/// `G^k` as a canonical group, from the invariants of one copy.
pub fn power(g: &HomologyGroup, k: usize) -> HomologyGroup {
    let mut out = HomologyGroup::zero();
    for _ in 0..k {
        out = out.direct_sum(g);
    }
    out
}
