mod common;

use std::collections::HashSet;

use common::{connected_multigraph, connected_simple, invariant_factors_by_minors, order_by_rationals, reduced_laplacian_i64};
use critgroup::jacobian::{self, fire};
use critgroup::{theorems, Divisor, Multigraph, ReducedJacobian};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;

/// A graph with a degree-zero divisor on it.
fn graph_and_divisor(max_n: usize) -> impl Strategy<Value = (Multigraph, Divisor)> {
    connected_multigraph(max_n, 2).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), proptest::collection::vec(-6i64..=6, n)).prop_map(|(g, mut v)| {
            let s: i64 = v.iter().sum();
            *v.last_mut().unwrap() -= s;
            (g, Divisor::from_i64(&v))
        })
    })
}

fn graph_and_two_divisors(max_n: usize) -> impl Strategy<Value = (Multigraph, Divisor, Divisor)> {
    graph_and_divisor(max_n).prop_flat_map(|(g, d)| {
        let n = g.n();
        (Just(g), Just(d), proptest::collection::vec(-6i64..=6, n)).prop_map(|(g, d, mut v)| {
            let s: i64 = v.iter().sum();
            v[0] -= s;
            (g, d, Divisor::from_i64(&v))
        })
    })
}

proptest! {
    #[test]
    fn order_matches_rational_oracle((g, d) in graph_and_divisor(7)) {
        let jac = ReducedJacobian::at_last(&g).unwrap();
        let by_formula = jac.order_of(&d).unwrap();
        prop_assert_eq!(&by_formula, &order_by_rationals(&g, &d));
        prop_assert_eq!(&by_formula, &jacobian::order_by_search(&g, &d).unwrap());
        prop_assert_eq!(jac.index_of(&d).unwrap() * &by_formula, jac.order().clone());
    }

    #[test]
    fn structure_matches_determinantal_divisors(g in connected_multigraph(6, 2)) {
        let s = ReducedJacobian::at_last(&g).unwrap().structure();
        let expected: Vec<BigInt> = invariant_factors_by_minors(&reduced_laplacian_i64(&g))
            .into_iter()
            .filter(|d| !d.is_one())
            .collect();
        prop_assert_eq!(&s.invariant_factors, &expected);
        prop_assert_eq!(s.order.clone(), expected.iter().product::<BigInt>());
        prop_assert_eq!(s.order, theorems::spanning_trees_brute(&g).unwrap());
        prop_assert_eq!(s.cyclic, s.rank <= 1);
    }

    #[test]
    fn structure_does_not_depend_on_base(g in connected_multigraph(6, 2)) {
        let first = ReducedJacobian::new(&g, 0).unwrap().structure();
        for base in 1..g.n() {
            let s = ReducedJacobian::new(&g, base).unwrap().structure();
            prop_assert_eq!((&s.order, &s.invariant_factors), (&first.order, &first.invariant_factors));
        }
    }

    #[test]
    fn order_does_not_depend_on_base((g, d) in graph_and_divisor(6)) {
        let orders: HashSet<BigInt> = (0..g.n())
            .map(|b| ReducedJacobian::new(&g, b).unwrap().order_of(&d).unwrap())
            .collect();
        prop_assert_eq!(orders.len(), 1);
    }

    #[test]
    fn weights_are_a_homomorphism((g, d1, d2) in graph_and_two_divisors(6)) {
        let jac = ReducedJacobian::at_last(&g).unwrap();
        let m = jac.order().clone();
        let w1 = jac.monodromy_weight(&d1).unwrap();
        let w2 = jac.monodromy_weight(&d2).unwrap();
        let w12 = jac.monodromy_weight(&d1.add(&d2).unwrap()).unwrap();
        for i in 0..w12.weights.len() {
            prop_assert_eq!(&w12.weights[i], &(&w1.weights[i] + &w2.weights[i]).mod_floor(&m));
        }
        prop_assert!(jac.is_reduced_monodromy_weight(&w1.weights).unwrap());
        // pairing is the homomorphism of one weight applied to the other divisor
        let r2 = jac.reduce(&d2).unwrap();
        prop_assert_eq!(w1.apply(&r2), jac.pairing(&d2, &d1).unwrap());
    }

    #[test]
    fn equivalence_three_ways((g, d1, d2) in graph_and_two_divisors(6)) {
        let jac = ReducedJacobian::at_last(&g).unwrap();
        let witness = jac.equivalence_witness(&d1, &d2).unwrap();
        prop_assert_eq!(witness.is_some(), jac.equivalent_by_weights(&d1, &d2).unwrap());
        let diff = d1.sub(&d2).unwrap();
        prop_assert_eq!(witness.is_some(), order_by_rationals(&g, &diff).is_one());
        if let Some(script) = witness {
            prop_assert_eq!(fire(&g, &d1, &script).unwrap(), d2.clone());
        }
        // firing any script preserves the class
        let script = critgroup::FiringScript::from_i64(&(0..g.n() as i64).map(|i| (i * 7) % 5 - 2).collect::<Vec<_>>());
        let fired = fire(&g, &d1, &script).unwrap();
        prop_assert!(jac.equivalent(&d1, &fired).unwrap());
    }

    #[test]
    fn pairing_is_symmetric_and_bilinear((g, d1, d2) in graph_and_two_divisors(6)) {
        let jac = ReducedJacobian::at_last(&g).unwrap();
        let m = jac.order().clone();
        let p12 = jac.pairing(&d1, &d2).unwrap();
        prop_assert_eq!(&p12, &jac.pairing(&d2, &d1).unwrap());
        let sum = d1.add(&d2).unwrap();
        let lhs = jac.pairing(&sum, &d2).unwrap();
        let rhs = (&p12 + jac.pairing(&d2, &d2).unwrap()).mod_floor(&m);
        prop_assert_eq!(lhs, rhs);
        // nondegenerate: [D] = 0 iff it pairs to zero with every δ_{v,base}
        let base = g.n() - 1;
        let pairs_trivially = (0..base).all(|v| {
            jac.pairing(&d1, &Divisor::delta(g.n(), base, v).unwrap()).unwrap().is_zero()
        });
        prop_assert_eq!(pairs_trivially, jac.order_of(&d1).unwrap().is_one());
    }

    #[test]
    fn delta_order_reads_the_same_as_general_order(g in connected_simple(7), x in 0usize..7, y in 0usize..7) {
        let (x, y) = (x % g.n(), y % g.n());
        prop_assume!(x != y);
        let d = Divisor::delta(g.n(), x, y).unwrap();
        let cold = ReducedJacobian::at_last(&g).unwrap();
        let warm = ReducedJacobian::at_last(&g).unwrap();
        warm.adjugate();
        let expected = warm.order_of(&d).unwrap();
        prop_assert_eq!(&cold.delta_order(x, y).unwrap(), &expected);
        prop_assert_eq!(&warm.delta_order(x, y).unwrap(), &expected);
    }

    #[test]
    fn modify_edges_round_trip(g in connected_multigraph(6, 2), x in 0usize..6, y in 0usize..6, k in -3i64..=3) {
        let (x, y) = (x % g.n(), y % g.n());
        prop_assume!(x != y && k <= g.mult(x, y) as i64);
        let h = g.modify_edges(x, y, k).unwrap();
        prop_assert_eq!(h.mult(x, y) as i64, g.mult(x, y) as i64 - k);
        prop_assert_eq!(h.modify_edges(x, y, -k).unwrap(), g.clone());
    }

    #[test]
    fn divisor_reduction_round_trip((g, d) in graph_and_divisor(6), base in 0usize..6) {
        let base = base % g.n();
        prop_assert_eq!(d.reduce(base).unwrap().complete(), d);
    }

    #[test]
    fn edge_list_round_trip(g in connected_multigraph(7, 3)) {
        let parsed: Multigraph = g.to_edge_list().parse().unwrap();
        prop_assert_eq!(parsed, g);
    }
}

/// The weights `C·D̃ mod m` of all classes are exactly the solutions of
/// `L̃·w ≡ 0 (mod m)`, and there are `m` of them.
#[test]
fn weights_biject_onto_kernel_mod_m() {
    let mut checked = 0;
    for n in 2..=5 {
        for g in critgroup::families::nonisomorphic_connected_graphs(n) {
            let jac = ReducedJacobian::at_last(&g).unwrap();
            let m = jac.order().to_u64().unwrap();
            let k = n - 1;
            if m > 50 || m.pow(k as u32) > 200_000 {
                continue;
            }
            let lap = reduced_laplacian_i64(&g);
            let mut kernel = HashSet::new();
            let mut w = vec![0u64; k];
            'enumerate: loop {
                if lap.iter().all(|row| row.iter().zip(&w).map(|(a, b)| a * *b as i64).sum::<i64>().rem_euclid(m as i64) == 0) {
                    kernel.insert(w.clone());
                }
                for i in 0..k {
                    w[i] += 1;
                    if w[i] < m {
                        continue 'enumerate;
                    }
                    w[i] = 0;
                }
                break;
            }
            // span of the columns of C mod m
            let adj = jac.adjugate();
            let cols: Vec<Vec<u64>> = (0..k)
                .map(|j| (0..k).map(|i| adj[(i, j)].mod_floor(jac.order()).to_u64().unwrap()).collect())
                .collect();
            let mut span: HashSet<Vec<u64>> = HashSet::from([vec![0; k]]);
            let mut frontier = vec![vec![0; k]];
            while let Some(v) = frontier.pop() {
                for c in &cols {
                    let next: Vec<u64> = v.iter().zip(c).map(|(a, b)| (a + b) % m).collect();
                    if span.insert(next.clone()) {
                        frontier.push(next);
                    }
                }
            }
            assert_eq!(kernel.len() as u64, m, "{}", g.to_edge_list());
            assert_eq!(span, kernel, "{}", g.to_edge_list());
            checked += 1;
        }
    }
    assert!(checked > 20);
}

#[test]
fn c6_worked_example() {
    let g = Multigraph::cycle(6);
    let jac = ReducedJacobian::at_last(&g).unwrap();
    let c = jac.adjugate().reduced_mod(&BigInt::from(6));
    let expected = critgroup::BigMatrix::from_i64_rows(&[
        [5, 4, 3, 2, 1],
        [4, 2, 0, 4, 2],
        [3, 0, 3, 0, 3],
        [2, 4, 0, 2, 4],
        [1, 2, 3, 4, 5],
    ]);
    assert_eq!(c, expected);
    assert_eq!(jac.order(), &BigInt::from(6));
    assert_eq!(jac.rank(), 1);
}
