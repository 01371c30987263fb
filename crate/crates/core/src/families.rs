//! Graph families: exhaustive labeled enumeration, isomorphism classes for
//! small `n`, and seeded random samplers.

use std::collections::HashSet;

use rand::Rng;

use crate::multigraph::{Multigraph, Probability};

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

fn from_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> Multigraph {
    let edges: Vec<_> = pairs
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &e)| e)
        .collect();
    Multigraph::from_edges(n, &edges).expect("valid pairs")
}

/// Every labeled simple graph on `n` vertices (`2^(n(n−1)/2)` of them).
pub fn labeled_simple_graphs(n: usize) -> impl Iterator<Item = Multigraph> {
    let pairs = pairs(n);
    assert!(pairs.len() < 40, "too many labeled graphs on {n} vertices");
    (0..1u64 << pairs.len()).map(move |mask| from_mask(n, &pairs, mask))
}

/// Every labeled connected simple graph on `n` vertices.
pub fn labeled_connected_graphs(n: usize) -> impl Iterator<Item = Multigraph> {
    labeled_simple_graphs(n).filter(Multigraph::is_connected)
}

/// Every labeled biconnected simple graph on `n ≥ 3` vertices.
pub fn labeled_biconnected_graphs(n: usize) -> impl Iterator<Item = Multigraph> {
    labeled_simple_graphs(n).filter(Multigraph::is_biconnected)
}

/// Canonical edge mask: the least mask over relabelings that list vertices in
/// nondecreasing degree. Isomorphic graphs share it.
fn canonical_mask(g: &Multigraph) -> u64 {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| g.valency(v));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match classes.last_mut() {
            Some(c) if g.valency(c[0]) == g.valency(v) => c.push(v),
            _ => classes.push(vec![v]),
        }
    }
    let index: Vec<Vec<usize>> = (0..n)
        .map(|u| {
            let mut row = vec![0; n];
            let mut k = 0;
            for a in 0..n {
                for b in a + 1..n {
                    if a == u {
                        row[b] = k;
                    }
                    if b == u {
                        row[a] = k;
                    }
                    k += 1;
                }
            }
            row
        })
        .collect();
    let mut best = u64::MAX;
    let mut label = vec![0usize; n];
    fn permute(
        classes: &mut [Vec<usize>],
        ci: usize,
        pos: usize,
        start: usize,
        label: &mut [usize],
        g: &Multigraph,
        index: &[Vec<usize>],
        best: &mut u64,
    ) {
        if ci == classes.len() {
            let mut mask = 0u64;
            for (u, v, _) in g.edges() {
                mask |= 1 << index[label[u]][label[v]];
            }
            *best = (*best).min(mask);
            return;
        }
        let len = classes[ci].len();
        if pos == len {
            permute(classes, ci + 1, 0, start + len, label, g, index, best);
            return;
        }
        for i in pos..len {
            classes[ci].swap(pos, i);
            label[classes[ci][pos]] = start + pos;
            permute(classes, ci, pos + 1, start, label, g, index, best);
            classes[ci].swap(pos, i);
        }
    }
    permute(&mut classes, 0, 0, 0, &mut label, g, &index, &mut best);
    best
}

/// One representative per isomorphism class of simple graphs on `n` vertices,
/// built by vertex augmentation. Intended for `n ≤ 7`.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Multigraph> {
    let mut layer = vec![Multigraph::new(n.min(1))];
    for k in 2..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &layer {
            for subset in 0..1u32 << (k - 1) {
                let mut h = Multigraph::new(k);
                for (u, v, _) in g.edges() {
                    h.add_edges(u, v, 1).expect("valid");
                }
                for u in 0..k - 1 {
                    if subset >> u & 1 == 1 {
                        h.add_edges(u, k - 1, 1).expect("valid");
                    }
                }
                if seen.insert(canonical_mask(&h)) {
                    next.push(h);
                }
            }
        }
        layer = next;
    }
    if n == 0 {
        return vec![Multigraph::new(0)];
    }
    layer
}

pub fn nonisomorphic_connected_graphs(n: usize) -> Vec<Multigraph> {
    nonisomorphic_graphs(n)
        .into_iter()
        .filter(Multigraph::is_connected)
        .collect()
}

/// `G(n, p)` resampled until connected.
pub fn random_connected_simple<R: Rng + ?Sized>(rng: &mut R, n: usize, p: Probability) -> Multigraph {
    loop {
        let g = Multigraph::erdos_renyi(n, p, rng);
        if g.is_connected() {
            return g;
        }
    }
}

/// Random connected multigraph: each pair is present with probability `p`
/// and then carries a uniform multiplicity in `1..=max_mult`.
pub fn random_connected_multigraph<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    p: Probability,
    max_mult: u32,
) -> Multigraph {
    loop {
        let mut g = Multigraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if p.sample(rng) {
                    g.add_edges(u, v, rng.gen_range(1..=max_mult)).expect("valid");
                }
            }
        }
        if g.is_connected() {
            return g;
        }
    }
}

/// `G(n, p)` resampled until biconnected; `n ≥ 3`.
pub fn random_biconnected_simple<R: Rng + ?Sized>(rng: &mut R, n: usize, p: Probability) -> Multigraph {
    assert!(n >= 3);
    loop {
        let g = Multigraph::erdos_renyi(n, p, rng);
        if g.is_biconnected() {
            return g;
        }
    }
}
