//! Divisors, chip-firing and the Jacobian `Div⁰(G)/Prin(G)`.
//!
//! Most queries go through [`ReducedJacobian`], which fixes a base vertex and
//! lazily caches the reduced Laplacian's determinant, adjugate and Smith form.
//! With `C = adj(L̃)` and `m = det L̃`:
//!
//! * the reduced monodromy weight of `D` is `C·D̃ mod m`,
//! * the order of `[D]` is `m / gcd(m, C·D̃)`,
//! * the monodromy pairing is `D̃₁ᵀ·C·D̃₂ mod m`.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, gcd_with, BigMatrix, SmithForm};
use crate::multigraph::Multigraph;
use crate::serde_big;

/// Integer chip counts on the vertices of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Divisor(Vec<BigInt>);

impl Divisor {
    pub fn new(values: Vec<BigInt>) -> Self {
        Divisor(values)
    }

    pub fn from_i64(values: &[i64]) -> Self {
        Divisor(values.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn zero(n: usize) -> Self {
        Divisor(vec![BigInt::zero(); n])
    }

    /// `−1` at `x`, `+1` at `y`.
    pub fn delta(n: usize, x: usize, y: usize) -> Result<Self> {
        for v in [x, y] {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
        }
        if x == y {
            return Err(Error::SameVertex(x));
        }
        let mut d = Self::zero(n);
        d.0[x] = BigInt::from(-1);
        d.0[y] = BigInt::one();
        Ok(d)
    }

    pub fn values(&self) -> &[BigInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> BigInt {
        self.0.iter().sum()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Divisor(self.0.iter().map(|v| v * k).collect())
    }

    pub fn add(&self, other: &Divisor) -> Result<Self> {
        self.check_len(other.len())?;
        Ok(Divisor(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &Divisor) -> Result<Self> {
        self.check_len(other.len())?;
        Ok(Divisor(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn neg(&self) -> Self {
        Divisor(self.0.iter().map(|v| -v).collect())
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if self.len() == n {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "divisor of length {} on graph with {n} vertices",
                self.len()
            )))
        }
    }

    /// Drops the `base` entry of a degree-zero divisor.
    pub fn reduce(&self, base: usize) -> Result<ReducedDivisor> {
        let deg = self.degree();
        if !deg.is_zero() {
            return Err(Error::NonzeroDegree(deg.to_string()));
        }
        if base >= self.len() {
            return Err(Error::VertexOutOfRange { vertex: base, n: self.len() });
        }
        let mut values = self.0.clone();
        values.remove(base);
        Ok(ReducedDivisor { values, base })
    }
}

/// A degree-zero divisor with its `base` entry deleted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedDivisor {
    pub values: Vec<BigInt>,
    pub base: usize,
}

impl ReducedDivisor {
    /// Restores the deleted entry as minus the sum of the others.
    pub fn complete(&self) -> Divisor {
        let mut v = self.values.clone();
        let rest: BigInt = v.iter().sum();
        v.insert(self.base, -rest);
        Divisor(v)
    }
}

/// Number of times each vertex fires.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiringScript(pub Vec<BigInt>);

impl FiringScript {
    pub fn from_i64(counts: &[i64]) -> Self {
        FiringScript(counts.iter().map(|&v| BigInt::from(v)).collect())
    }

    /// Shifts by a multiple of the all-ones vector so that `base` fires zero
    /// times, then drops that entry.
    pub fn reduce(&self, base: usize) -> Vec<BigInt> {
        let shift = self.0[base].clone();
        self.0
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != base)
            .map(|(_, v)| v - &shift)
            .collect()
    }

    pub fn from_reduced(reduced: &[BigInt], base: usize) -> Self {
        let mut v = reduced.to_vec();
        v.insert(base, BigInt::zero());
        FiringScript(v)
    }
}

/// Applies a firing script: each vertex `v` sends `σ(v)` chips along every
/// incident edge. Equals `D − L·σ`.
pub fn fire(g: &Multigraph, d: &Divisor, script: &FiringScript) -> Result<Divisor> {
    d.check_len(g.n())?;
    if script.0.len() != g.n() {
        return Err(Error::Dimension("firing script length".into()));
    }
    let mut out = d.0.clone();
    for (v, times) in script.0.iter().enumerate() {
        if times.is_zero() {
            continue;
        }
        out[v] -= times * BigInt::from(g.valency(v));
        for w in g.neighbors(v) {
            out[w] += times * BigInt::from(g.mult(v, w));
        }
    }
    Ok(Divisor(out))
}

/// Group structure of `Jac(G)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobianStructure {
    #[serde(rename = "m", with = "serde_big")]
    pub order: BigInt,
    /// Invariant factors greater than one, each dividing the next.
    #[serde(with = "serde_big::vec")]
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
    pub cyclic: bool,
    #[serde(skip)]
    pub base: usize,
}

/// Reduced monodromy weight, entries in `[0, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyWeight {
    pub weights: Vec<BigInt>,
    pub modulus: BigInt,
    pub base: usize,
}

impl MonodromyWeight {
    /// The induced homomorphism `[D] ↦ w̃·D̃ mod m`.
    pub fn apply(&self, d: &ReducedDivisor) -> BigInt {
        let dot: BigInt = self.weights.iter().zip(&d.values).map(|(a, b)| a * b).sum();
        dot.mod_floor(&self.modulus)
    }
}

/// `Jac(G)` presented through the Laplacian reduced at a base vertex.
/// Expensive intermediates are computed once and shared by all readers.
#[derive(Debug)]
pub struct ReducedJacobian<'g> {
    graph: &'g Multigraph,
    base: usize,
    laplacian: BigMatrix,
    order: OnceLock<BigInt>,
    adjugate: OnceLock<BigMatrix>,
    smith: OnceLock<SmithForm>,
}

impl<'g> ReducedJacobian<'g> {
    pub fn new(graph: &'g Multigraph, base: usize) -> Result<Self> {
        let laplacian = graph.reduced_laplacian(base)?;
        Ok(ReducedJacobian {
            graph,
            base,
            laplacian,
            order: OnceLock::new(),
            adjugate: OnceLock::new(),
            smith: OnceLock::new(),
        })
    }

    /// Reduces at the last vertex.
    pub fn at_last(graph: &'g Multigraph) -> Result<Self> {
        if graph.n() == 0 {
            return Err(Error::InvalidArgument("empty graph".into()));
        }
        Self::new(graph, graph.n() - 1)
    }

    pub fn graph(&self) -> &Multigraph {
        self.graph
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn reduced_laplacian(&self) -> &BigMatrix {
        &self.laplacian
    }

    /// `m = |Jac(G)| = det L̃`.
    pub fn order(&self) -> &BigInt {
        self.order.get_or_init(|| {
            linalg::determinant(&self.laplacian).expect("reduced Laplacian is square")
        })
    }

    /// `C = adj(L̃) = m·L̃⁻¹`.
    pub fn adjugate(&self) -> &BigMatrix {
        self.adjugate.get_or_init(|| {
            linalg::adjugate(&self.laplacian).expect("connected graph has invertible L̃")
        })
    }

    pub fn smith(&self) -> &SmithForm {
        self.smith
            .get_or_init(|| linalg::smith_normal_form(&self.laplacian, false))
    }

    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.smith().nontrivial()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }

    pub fn is_cyclic(&self) -> bool {
        self.rank() <= 1
    }

    pub fn structure(&self) -> JacobianStructure {
        let invariant_factors = self.invariant_factors();
        JacobianStructure {
            order: self.order().clone(),
            rank: invariant_factors.len(),
            cyclic: invariant_factors.len() <= 1,
            invariant_factors,
            base: self.base,
        }
    }

    pub fn reduce(&self, d: &Divisor) -> Result<ReducedDivisor> {
        d.check_len(self.graph.n())?;
        d.reduce(self.base)
    }

    /// Un-normalized weight `C·D̃` over the integers.
    pub fn raw_weight(&self, d: &Divisor) -> Result<Vec<BigInt>> {
        let r = self.reduce(d)?;
        self.adjugate().mul_vec(&r.values)
    }

    /// `C·D̃` reduced entrywise into `[0, m)`.
    pub fn monodromy_weight(&self, d: &Divisor) -> Result<MonodromyWeight> {
        let m = self.order();
        Ok(MonodromyWeight {
            weights: self.raw_weight(d)?.iter().map(|w| w.mod_floor(m)).collect(),
            modulus: m.clone(),
            base: self.base,
        })
    }

    /// Whether `L̃·w̃ ≡ 0 (mod m)`.
    pub fn is_reduced_monodromy_weight(&self, w: &[BigInt]) -> Result<bool> {
        let m = self.order();
        Ok(self
            .laplacian
            .mul_vec(w)?
            .iter()
            .all(|v| v.is_multiple_of(m)))
    }

    /// `|[D]| = m / gcd(m, C·D̃)`.
    pub fn order_of(&self, d: &Divisor) -> Result<BigInt> {
        let g = gcd_with(self.order(), &self.raw_weight(d)?);
        Ok(self.order() / g)
    }

    /// `[Jac(G) : ⟨[D]⟩] = gcd(m, C·D̃)`.
    pub fn index_of(&self, d: &Divisor) -> Result<BigInt> {
        Ok(gcd_with(self.order(), &self.raw_weight(d)?))
    }

    /// Order of `[δ_xy]`; the reduced divisor is a difference of two unit
    /// vectors, so only two adjugate columns are read.
    pub fn delta_order(&self, x: usize, y: usize) -> Result<BigInt> {
        let w = self.delta_weight(x, y)?;
        Ok(self.order() / gcd_with(self.order(), &w))
    }

    fn delta_weight(&self, x: usize, y: usize) -> Result<Vec<BigInt>> {
        let n = self.graph.n();
        for v in [x, y] {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
        }
        if x == y {
            return Err(Error::SameVertex(x));
        }
        let idx = |v: usize| (v != self.base).then(|| if v > self.base { v - 1 } else { v });
        let (cx, cy) = (idx(x), idx(y));
        let Some(adj) = self.adjugate.get() else {
            let mut rhs = vec![BigInt::zero(); n - 1];
            if let Some(j) = cy {
                rhs[j] += 1;
            }
            if let Some(j) = cx {
                rhs[j] -= 1;
            }
            let (det, mut cols) = linalg::adjugate_apply(&self.laplacian, &[rhs])?;
            let _ = self.order.set(det);
            return Ok(cols.pop().unwrap_or_default());
        };
        Ok((0..adj.rows())
            .map(|i| {
                let plus = cy.map_or_else(BigInt::zero, |j| adj[(i, j)].clone());
                let minus = cx.map_or_else(BigInt::zero, |j| adj[(i, j)].clone());
                plus - minus
            })
            .collect())
    }

    /// Decides `D₁ ∼ D₂` by an integer solve of `L̃·σ̃ = D̃₁ − D̃₂`; returns the
    /// witnessing script (zero at the base) with `fire(D₁, σ) = D₂`.
    pub fn equivalence_witness(&self, d1: &Divisor, d2: &Divisor) -> Result<Option<FiringScript>> {
        let diff = self.reduce(&d1.sub(d2)?)?;
        Ok(linalg::solve_integer(&self.laplacian, &diff.values)?
            .map(|s| FiringScript::from_reduced(&s, self.base)))
    }

    pub fn equivalent(&self, d1: &Divisor, d2: &Divisor) -> Result<bool> {
        Ok(self.equivalence_witness(d1, d2)?.is_some())
    }

    /// Decides `D₁ ∼ D₂` by comparing reduced monodromy weights mod `m`.
    pub fn equivalent_by_weights(&self, d1: &Divisor, d2: &Divisor) -> Result<bool> {
        Ok(self.monodromy_weight(d1)? == self.monodromy_weight(d2)?)
    }

    /// `D̃₁ᵀ·C·D̃₂ mod m`.
    pub fn pairing(&self, d1: &Divisor, d2: &Divisor) -> Result<BigInt> {
        let r1 = self.reduce(d1)?;
        let w = self.raw_weight(d2)?;
        let dot: BigInt = r1.values.iter().zip(&w).map(|(a, b)| a * b).sum();
        Ok(dot.mod_floor(self.order()))
    }
}

/// Whether `L·w ≡ 0 (mod m)` for a full-length weight vector.
pub fn is_monodromy_weight(g: &Multigraph, w: &[BigInt], m: &BigInt) -> Result<bool> {
    Ok(g.laplacian().mul_vec(w)?.iter().all(|v| v.is_multiple_of(m)))
}

pub fn delta(g: &Multigraph, x: usize, y: usize) -> Result<Divisor> {
    Divisor::delta(g.n(), x, y)
}

pub fn jacobian(g: &Multigraph) -> Result<JacobianStructure> {
    Ok(ReducedJacobian::at_last(g)?.structure())
}

pub fn is_cyclic(g: &Multigraph) -> Result<bool> {
    Ok(ReducedJacobian::at_last(g)?.is_cyclic())
}

pub fn jacobian_rank(g: &Multigraph) -> Result<usize> {
    Ok(ReducedJacobian::at_last(g)?.rank())
}

pub fn monodromy_weight(g: &Multigraph, d: &Divisor) -> Result<MonodromyWeight> {
    ReducedJacobian::at_last(g)?.monodromy_weight(d)
}

pub fn divisors_equivalent(g: &Multigraph, d1: &Divisor, d2: &Divisor) -> Result<bool> {
    ReducedJacobian::at_last(g)?.equivalent(d1, d2)
}

pub fn order_of_class(g: &Multigraph, d: &Divisor) -> Result<BigInt> {
    ReducedJacobian::at_last(g)?.order_of(d)
}

pub fn class_index(g: &Multigraph, d: &Divisor) -> Result<BigInt> {
    ReducedJacobian::at_last(g)?.index_of(d)
}

pub fn monodromy_pairing(g: &Multigraph, d1: &Divisor, d2: &Divisor) -> Result<BigInt> {
    ReducedJacobian::at_last(g)?.pairing(d1, d2)
}

/// Smallest `k ≥ 1` with `k·D ∼ 0`, found by integer solves only.
///
/// Starts from `k = m` and strips prime factors of `m` while the quotient
/// still kills `[D]`. Never touches the adjugate.
pub fn order_by_search(g: &Multigraph, d: &Divisor) -> Result<BigInt> {
    let base = g.n().checked_sub(1).ok_or(Error::InvalidArgument("empty graph".into()))?;
    let lap = g.reduced_laplacian(base)?;
    d.check_len(g.n())?;
    let reduced = d.reduce(base)?;
    let m = linalg::determinant(&lap)?;
    let kills = |k: &BigInt| -> Result<bool> {
        let b: Vec<BigInt> = reduced.values.iter().map(|v| v * k).collect();
        Ok(linalg::solve_integer(&lap, &b)?.is_some())
    };
    let mut k = m.clone();
    debug_assert!(kills(&k)?);
    let m_nat: BigUint = m.to_biguint().expect("determinant of a connected graph is positive");
    for (p, _) in num_prime::nt_funcs::factorize(m_nat) {
        let p = BigInt::from_biguint(Sign::Plus, p);
        while k.is_multiple_of(&p) {
            let q = &k / &p;
            if !kills(&q)? {
                break;
            }
            k = q;
        }
    }
    debug_assert!(k.is_positive());
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn bv(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| bi(x)).collect()
    }

    #[test]
    fn firing() {
        let k2 = Multigraph::path(2);
        let d = fire(&k2, &Divisor::zero(2), &FiringScript::from_i64(&[1, 0])).unwrap();
        assert_eq!(d, Divisor::from_i64(&[-1, 1]));
        let c6 = Multigraph::cycle(6);
        let d = fire(&c6, &Divisor::zero(6), &FiringScript::from_i64(&[1, 0, 0, 0, 0, 0])).unwrap();
        assert_eq!(d, Divisor::from_i64(&[-2, 1, 0, 0, 0, 1]));
        let start = Divisor::from_i64(&[3, -1, 0, 2, -4, 0]);
        let all = fire(&c6, &start, &FiringScript::from_i64(&[1; 6])).unwrap();
        assert_eq!(all, start);
        assert!(fire(&c6, &Divisor::zero(5), &FiringScript::from_i64(&[0; 6])).is_err());
    }

    #[test]
    fn structures() {
        let s = jacobian(&Multigraph::cycle(6)).unwrap();
        assert_eq!(s.order, bi(6));
        assert_eq!(s.invariant_factors, bv(&[6]));
        assert!(s.cyclic);
        assert_eq!(s.rank, 1);
        let s = jacobian(&Multigraph::path(5)).unwrap();
        assert_eq!(s.order, bi(1));
        assert!(s.invariant_factors.is_empty());
        assert_eq!(s.rank, 0);
        let s = jacobian(&Multigraph::complete(4)).unwrap();
        assert_eq!(s.order, bi(16));
        assert_eq!(s.invariant_factors, bv(&[4, 4]));
        assert!(!s.cyclic);
        assert_eq!(jacobian(&Multigraph::new(3)), Err(Error::Disconnected));
        let json = serde_json::to_string(&jacobian(&Multigraph::cycle(6)).unwrap()).unwrap();
        assert_eq!(json, r#"{"m":"6","invariant_factors":["6"],"rank":1,"cyclic":true}"#);
    }

    #[test]
    fn deltas() {
        let k2 = Multigraph::path(2);
        assert_eq!(delta(&k2, 0, 1).unwrap(), Divisor::from_i64(&[-1, 1]));
        let g = Multigraph::cycle(6);
        let sum = delta(&g, 1, 4).unwrap().add(&delta(&g, 4, 1).unwrap()).unwrap();
        assert_eq!(sum, Divisor::zero(6));
        let r = delta(&g, 2, 4).unwrap().reduce(2).unwrap();
        assert_eq!(r.values, bv(&[0, 0, 0, 1, 0]));
        assert_eq!(r.complete(), delta(&g, 2, 4).unwrap());
        assert!(delta(&g, 3, 3).is_err());
    }

    #[test]
    fn c6_weights() {
        let g = Multigraph::cycle(6);
        let jac = ReducedJacobian::at_last(&g).unwrap();
        let w = jac.monodromy_weight(&delta(&g, 5, 0).unwrap()).unwrap();
        assert_eq!(w.weights, bv(&[5, 4, 3, 2, 1]));
        assert!(jac.is_reduced_monodromy_weight(&w.weights).unwrap());
        let w = jac.monodromy_weight(&delta(&g, 5, 2).unwrap()).unwrap();
        assert_eq!(w.weights, bv(&[3, 0, 3, 0, 3]));
        let w = jac.monodromy_weight(&Divisor::zero(6)).unwrap();
        assert_eq!(w.weights, bv(&[0; 5]));
        assert!(jac.monodromy_weight(&Divisor::from_i64(&[1, 0, 0, 0, 0, 0])).is_err());
    }

    #[test]
    fn c6_orders_and_equivalence() {
        let g = Multigraph::cycle(6);
        let d = delta(&g, 5, 0).unwrap();
        assert_eq!(order_of_class(&g, &d).unwrap(), bi(6));
        assert_eq!(class_index(&g, &d).unwrap(), bi(1));
        assert_eq!(order_of_class(&g, &Divisor::zero(6)).unwrap(), bi(1));
        assert_eq!(class_index(&g, &Divisor::zero(6)).unwrap(), bi(6));
        assert_eq!(order_by_search(&g, &Divisor::zero(6)).unwrap(), bi(1));
        assert_eq!(order_by_search(&g, &d.scale(&bi(2))).unwrap(), bi(3));
        assert!(divisors_equivalent(&g, &d, &d.scale(&bi(7))).unwrap());
        assert!(!divisors_equivalent(&g, &d, &d.scale(&bi(2))).unwrap());
        assert_eq!(monodromy_pairing(&g, &d, &d).unwrap(), bi(5));
        assert_eq!(monodromy_pairing(&g, &Divisor::zero(6), &d).unwrap(), bi(0));
    }

    #[test]
    fn witness_fires_back() {
        let g = Multigraph::cycle(6);
        let d = delta(&g, 5, 0).unwrap();
        let sigma = FiringScript::from_i64(&[2, -1, 0, 3, 1, 1]);
        let fired = fire(&g, &d, &sigma).unwrap();
        let jac = ReducedJacobian::at_last(&g).unwrap();
        let witness = jac.equivalence_witness(&d, &fired).unwrap().unwrap();
        assert_eq!(witness.0, FiringScript::from_reduced(&sigma.reduce(5), 5).0);
        assert_eq!(fire(&g, &d, &witness).unwrap(), fired);
    }

    #[test]
    fn k4_delta() {
        let g = Multigraph::complete(4);
        let d = delta(&g, 0, 1).unwrap();
        assert_eq!(order_of_class(&g, &d).unwrap(), bi(4));
        assert_eq!(class_index(&g, &d).unwrap(), bi(4));
        assert_eq!(order_by_search(&g, &d).unwrap(), bi(4));
        assert_eq!(jacobian_rank(&g).unwrap(), 2);
        assert!(!is_cyclic(&g).unwrap());
    }

    #[test]
    fn delta_order_matches_generic_path() {
        let g = Multigraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2), (1, 3)])
            .unwrap();
        for base in 0..5 {
            let jac = ReducedJacobian::new(&g, base).unwrap();
            for x in 0..5 {
                for y in 0..5 {
                    if x != y {
                        let d = delta(&g, x, y).unwrap();
                        assert_eq!(jac.delta_order(x, y).unwrap(), jac.order_of(&d).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn single_vertex() {
        let g = Multigraph::new(1);
        let jac = ReducedJacobian::at_last(&g).unwrap();
        assert_eq!(jac.order(), &bi(1));
        assert_eq!(jac.order_of(&Divisor::zero(1)).unwrap(), bi(1));
        assert!(jac.is_cyclic());
    }
}
