#![allow(dead_code)]

use std::collections::BTreeSet;

use nearortho::container::{EdgeMeasure, PartiteHypergraph};
use nearortho::gf::FVector;
use nearortho::rational::{rat, Rational};
use rand::Rng;

/// Random `ell`-partite hypergraph with parts of size `1..=max_part`, each
/// transversal kept with a random density, never empty.
pub fn random_hypergraph<R: Rng>(rng: &mut R, ell: usize, max_part: usize) -> PartiteHypergraph {
    let sizes: Vec<usize> = (0..ell).map(|_| rng.gen_range(1..=max_part)).collect();
    let density = rng.gen_range(0.05..0.6);
    let mut edges: Vec<Vec<u32>> = Vec::new();
    let mut edge = vec![0u32; ell];
    loop {
        if rng.gen_bool(density) {
            edges.push(edge.clone());
        }
        let mut i = ell;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            edge[i] += 1;
            if (edge[i] as usize) < sizes[i] {
                break;
            }
            edge[i] = 0;
        }
        if edge.iter().all(|&v| v == 0) {
            break;
        }
    }
    if edges.is_empty() {
        edges.push(sizes.iter().map(|&s| rng.gen_range(0..s) as u32).collect());
    }
    PartiteHypergraph::new(sizes, edges).unwrap()
}

pub fn uniform(h: &PartiteHypergraph) -> EdgeMeasure {
    EdgeMeasure::uniform(h)
}

/// `p_i` drawn from `{1/|V_i|, 2/|V_i|}` (capped at 1).
pub fn random_p<R: Rng>(rng: &mut R, h: &PartiteHypergraph) -> Vec<Rational> {
    h.part_sizes()
        .iter()
        .map(|&s| {
            let num = if s >= 2 && rng.gen_bool(0.5) { 2 } else { 1 };
            rat(num, s as i64)
        })
        .collect()
}

/// `max(1, ⌈|V_j| p_j⌉)`, recomputed here rather than taken from the crate.
pub fn fingerprint_size(part_size: usize, p: &Rational) -> usize {
    let x = Rational::from_integer((part_size as i64).into()) * p;
    let c = x.ceil().to_integer();
    let c: usize = c.try_into().unwrap_or(0);
    c.max(1)
}

/// Random independent tuple whose parts `j ≥ 2` have at least `s_j`
/// vertices; independence is restored by dropping part-1 vertices. `None`
/// when some part is too small to hold its fingerprint.
pub fn random_independent<R: Rng>(
    rng: &mut R,
    h: &PartiteHypergraph,
    p: &[Rational],
) -> Option<Vec<BTreeSet<u32>>> {
    let ell = h.ell();
    let mut u: Vec<BTreeSet<u32>> = h
        .part_sizes()
        .iter()
        .map(|&s| (0..s as u32).filter(|_| rng.gen_bool(0.5)).collect())
        .collect();
    for j in 1..ell {
        let need = fingerprint_size(h.part_size(j), &p[j]);
        if need > h.part_size(j) {
            return None;
        }
        while u[j].len() < need {
            u[j].insert(rng.gen_range(0..h.part_size(j)) as u32);
        }
    }
    for e in h.edges() {
        if e.iter().zip(&u).all(|(v, s)| s.contains(v)) {
            u[0].remove(&e[0]);
        }
    }
    Some(u)
}

/// Naive inner product straight from the coordinates.
pub fn naive_dot(a: &FVector, b: &FVector) -> u64 {
    let p = a.field().p() as u64;
    a.coords().iter().zip(b.coords()).map(|(&x, &y)| x as u64 * y as u64).sum::<u64>() % p
}
