//! Executable checks for the edge deletion/insertion/contraction results on
//! `[δ_xy]` and for the lower bounds on its order, each next to a brute-force
//! oracle.
//!
//! Checkers reduce the Laplacian at `x`, so `C_yy` below always means the
//! `(y, y)` entry of `adj(L̃)` with row and column `x` removed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::jacobian::{Divisor, ReducedJacobian};
use crate::linalg::{self};
use crate::multigraph::Multigraph;
use crate::serde_big;

/// Largest graph the enumeration oracles accept.
pub const BRUTE_FORCE_LIMIT: usize = 10;

/// Calls `visit` with the support pairs of every spanning tree of the
/// underlying simple graph.
fn for_each_spanning_tree(g: &Multigraph, mut visit: impl FnMut(&[(usize, usize, u32)])) -> Result<()> {
    let n = g.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge { n, limit: BRUTE_FORCE_LIMIT });
    }
    let edges: Vec<_> = g.edges().collect();
    if n <= 1 {
        visit(&[]);
        return Ok(());
    }

    fn find(parent: &[usize], mut v: usize) -> usize {
        while parent[v] != v {
            v = parent[v];
        }
        v
    }

    fn rec(
        edges: &[(usize, usize, u32)],
        i: usize,
        need: usize,
        parent: &mut Vec<usize>,
        chosen: &mut Vec<(usize, usize, u32)>,
        visit: &mut dyn FnMut(&[(usize, usize, u32)]),
    ) {
        if need == 0 {
            visit(chosen);
            return;
        }
        if edges.len() - i < need {
            return;
        }
        let (u, v, k) = edges[i];
        let (ru, rv) = (find(parent, u), find(parent, v));
        if ru != rv {
            parent[ru] = rv;
            chosen.push((u, v, k));
            rec(edges, i + 1, need - 1, parent, chosen, visit);
            chosen.pop();
            parent[ru] = ru;
        }
        rec(edges, i + 1, need, parent, chosen, visit);
    }

    let mut parent: Vec<usize> = (0..n).collect();
    let mut chosen = Vec::with_capacity(n - 1);
    rec(&edges, 0, n - 1, &mut parent, &mut chosen, &mut visit);
    Ok(())
}

/// Spanning-tree count by enumeration; parallel edges count separately.
pub fn spanning_trees_brute(g: &Multigraph) -> Result<BigInt> {
    let mut total = BigInt::zero();
    for_each_spanning_tree(g, |tree| {
        total += tree.iter().map(|&(_, _, k)| BigInt::from(k)).product::<BigInt>();
    })?;
    Ok(total)
}

/// Spanning trees containing one fixed copy of the edge `(x, y)`, by enumeration.
pub fn trees_containing_edge_brute(g: &Multigraph, x: usize, y: usize) -> Result<BigInt> {
    if g.mult(x, y) == 0 {
        return Err(Error::NoEdge(x, y));
    }
    let (a, b) = (x.min(y), x.max(y));
    let mut total = BigInt::zero();
    for_each_spanning_tree(g, |tree| {
        if tree.iter().any(|&(u, v, _)| (u, v) == (a, b)) {
            total += tree
                .iter()
                .filter(|&&(u, v, _)| (u, v) != (a, b))
                .map(|&(_, _, k)| BigInt::from(k))
                .product::<BigInt>();
        }
    })?;
    Ok(total)
}

fn reduced_index(base: usize, v: usize) -> usize {
    if v > base {
        v - 1
    } else {
        v
    }
}

/// `C_yy` of the Laplacian reduced at `x`.
fn c_yy(jac: &ReducedJacobian<'_>, y: usize) -> BigInt {
    let j = reduced_index(jac.base(), y);
    jac.adjugate()[(j, j)].clone()
}

/// Spanning trees through a fixed `(x, y)` edge, read off as `C_yy`.
pub fn trees_containing_edge(g: &Multigraph, x: usize, y: usize) -> Result<BigInt> {
    if x >= g.n() || y >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: x.max(y), n: g.n() });
    }
    if g.mult(x, y) == 0 {
        return Err(Error::NoEdge(x, y));
    }
    let jac = ReducedJacobian::new(g, x)?;
    Ok(c_yy(&jac, y))
}

/// Both sides of `det L̃ = det L̃₁ + k·C_yy`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeletionIdentity {
    #[serde(with = "serde_big")]
    pub det_l: BigInt,
    #[serde(with = "serde_big")]
    pub det_l1: BigInt,
    pub k: i64,
    #[serde(with = "serde_big")]
    pub c_yy: BigInt,
    pub holds: bool,
}

pub fn deletion_identity(g: &Multigraph, x: usize, y: usize, k: i64) -> Result<DeletionIdentity> {
    let g1 = g.modify_edges(x, y, k)?;
    let jac = ReducedJacobian::new(g, x)?;
    let jac1 = ReducedJacobian::new(&g1, x)?;
    let det_l = jac.order().clone();
    let det_l1 = jac1.order().clone();
    let c_yy = c_yy(&jac, y);
    let holds = det_l == &det_l1 + BigInt::from(k) * &c_yy;
    Ok(DeletionIdentity { det_l, det_l1, k, c_yy, holds })
}

/// Index of `⟨[δ_xy]⟩` in `Jac(G)` and `Jac(G₁)` against `gcd(|Jac G|, |Jac G₁|)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisibilityReport {
    pub graph: String,
    pub x: usize,
    pub y: usize,
    pub k_xy: i64,
    #[serde(with = "serde_big")]
    pub m: BigInt,
    #[serde(with = "serde_big")]
    pub m1: BigInt,
    #[serde(with = "serde_big")]
    pub c_yy: BigInt,
    /// `[Jac(G) : ⟨[δ_xy]⟩]`
    #[serde(with = "serde_big")]
    pub index: BigInt,
    /// `[Jac(G₁) : ⟨[δ_xy]⟩]`
    #[serde(with = "serde_big")]
    pub index1: BigInt,
    #[serde(with = "serde_big")]
    pub gcd_val: BigInt,
    pub deletion_identity_holds: bool,
    /// index | gcd, for G and for G₁.
    pub law1_holds: bool,
    pub law1_g1_holds: bool,
    /// gcd | index², asserted only when gcd(m, k) = 1.
    pub law2_holds: Option<bool>,
    pub law2_g1_holds: Option<bool>,
    /// `index² / gcd` when the second law applies.
    #[serde(with = "serde_big::opt")]
    pub slack: Option<BigInt>,
    /// index = 1 ⟺ gcd = 1, asserted only when gcd(m, k) = 1.
    pub iff_holds: Option<bool>,
    /// gcd(m, C_yy) = gcd(m, m₁), asserted only for k = ±1.
    pub cyy_gcd_equality: Option<bool>,
}

impl DivisibilityReport {
    /// Every asserted law holds.
    pub fn all_hold(&self) -> bool {
        self.deletion_identity_holds
            && self.law1_holds
            && self.law1_g1_holds
            && self.law2_holds != Some(false)
            && self.law2_g1_holds != Some(false)
            && self.iff_holds != Some(false)
            && self.cyy_gcd_equality != Some(false)
    }
}

pub fn divisibility_report(g: &Multigraph, x: usize, y: usize, k: i64) -> Result<DivisibilityReport> {
    let g1 = g.modify_edges(x, y, k)?;
    let jac = ReducedJacobian::new(g, x)?;
    let jac1 = ReducedJacobian::new(&g1, x)?;
    let delta = Divisor::delta(g.n(), x, y)?;
    let m = jac.order().clone();
    let m1 = jac1.order().clone();
    let c = c_yy(&jac, y);
    let index = jac.index_of(&delta)?;
    let index1 = jac1.index_of(&delta)?;
    let gcd_val = m.gcd(&m1);
    let k_big = BigInt::from(k);
    let coprime_k = m.gcd(&k_big).is_one();
    let law2 = |idx: &BigInt| (idx * idx).is_multiple_of(&gcd_val);
    Ok(DivisibilityReport {
        graph: g.to_edge_list(),
        x,
        y,
        k_xy: k,
        deletion_identity_holds: m == &m1 + &k_big * &c,
        law1_holds: gcd_val.is_multiple_of(&index),
        law1_g1_holds: gcd_val.is_multiple_of(&index1),
        law2_holds: coprime_k.then(|| law2(&index)),
        law2_g1_holds: coprime_k.then(|| law2(&index1)),
        slack: (coprime_k && law2(&index)).then(|| &index * &index / &gcd_val),
        iff_holds: coprime_k.then(|| index.is_one() == gcd_val.is_one()),
        cyy_gcd_equality: (k.abs() == 1).then(|| m.gcd(&c) == gcd_val),
        m,
        m1,
        c_yy: c,
        index,
        index1,
        gcd_val,
    })
}

/// Two independent answers to "does `[δ_xy]` generate `Jac(G)`".
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorCheck {
    pub x: usize,
    pub y: usize,
    #[serde(with = "serde_big")]
    pub m: BigInt,
    #[serde(with = "serde_big")]
    pub order: BigInt,
    pub by_order: bool,
    /// gcd(m, |Jac(G − xy)|) = 1, when removing an edge keeps G connected.
    pub by_removal: Option<bool>,
    /// gcd(m, |Jac(G + xy)|) = 1.
    pub by_addition: bool,
}

impl GeneratorCheck {
    pub fn consistent(&self) -> bool {
        self.by_addition == self.by_order && self.by_removal.is_none_or(|b| b == self.by_order)
    }
}

pub fn generator_check(g: &Multigraph, x: usize, y: usize) -> Result<GeneratorCheck> {
    let jac = ReducedJacobian::new(g, x)?;
    let m = jac.order().clone();
    let order = jac.delta_order(x, y)?;
    let coprime_with = |h: &Multigraph| -> Result<bool> {
        let t = linalg::determinant(&h.laplacian_minor(x)?)?;
        Ok(m.gcd(&t).is_one())
    };
    let by_removal = match g.modify_edges(x, y, 1) {
        Ok(h) if h.is_connected() => Some(coprime_with(&h)?),
        _ => None,
    };
    let by_addition = coprime_with(&g.modify_edges(x, y, -1)?)?;
    Ok(GeneratorCheck {
        x,
        y,
        by_order: order == m,
        m,
        order,
        by_removal,
        by_addition,
    })
}

/// Whether `[δ_xy]` generates `Jac(G)`. The order-based answer is cross-checked
/// against the gcd criterion on `G` with an `(x, y)` edge added and, when that
/// keeps the graph connected, removed; disagreement is an error.
pub fn is_generator_delta(g: &Multigraph, x: usize, y: usize) -> Result<bool> {
    let check = generator_check(g, x, y)?;
    if !check.consistent() {
        return Err(Error::Inconsistent(format!(
            "x={x} y={y} graph:\n{}",
            g.to_edge_list()
        )));
    }
    Ok(check.by_order)
}

/// `T(G) = T(G − e) + T(G/e)` and `T(G/e) = C_yy`, by determinants and by
/// enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractionRecurrence {
    pub x: usize,
    pub y: usize,
    #[serde(with = "serde_big")]
    pub t_graph: BigInt,
    #[serde(with = "serde_big")]
    pub t_deleted: BigInt,
    #[serde(with = "serde_big")]
    pub t_contracted: BigInt,
    #[serde(with = "serde_big")]
    pub c_yy: BigInt,
    #[serde(with = "serde_big::vec")]
    pub brute: Vec<BigInt>,
    pub holds: bool,
}

fn tree_count(g: &Multigraph) -> Result<BigInt> {
    match g.n() {
        0 | 1 => Ok(BigInt::one()),
        n => linalg::determinant(&g.laplacian_minor(n - 1)?),
    }
}

pub fn contraction_recurrence_check(g: &Multigraph, x: usize, y: usize) -> Result<ContractionRecurrence> {
    if g.n() > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge { n: g.n(), limit: BRUTE_FORCE_LIMIT });
    }
    let contracted = g.contract_edge(x, y)?.graph;
    let deleted = g.modify_edges(x, y, 1)?;
    let jac = ReducedJacobian::new(g, x)?;
    let t_graph = jac.order().clone();
    let t_deleted = tree_count(&deleted)?;
    let t_contracted = tree_count(&contracted)?;
    let c = c_yy(&jac, y);
    let brute = vec![
        spanning_trees_brute(g)?,
        spanning_trees_brute(&deleted)?,
        spanning_trees_brute(&contracted)?,
    ];
    let holds = t_graph == &t_deleted + &t_contracted
        && brute[0] == &brute[1] + &brute[2]
        && brute == [t_graph.clone(), t_deleted.clone(), t_contracted.clone()]
        && c == t_contracted;
    Ok(ContractionRecurrence {
        x,
        y,
        t_graph,
        t_deleted,
        t_contracted,
        c_yy: c,
        brute,
        holds,
    })
}

/// The divisor `D_x` on `G/e`: the image of firing `x` in `G`, negated.
/// On a simple graph it is `val(x) − 1` at the merged vertex and `−1` on the
/// other neighbours of `x`.
pub fn contraction_divisor(g: &Multigraph, x: usize, y: usize) -> Result<(Divisor, crate::multigraph::Contraction)> {
    let c = g.contract_edge(x, y)?;
    let mut values = vec![BigInt::zero(); c.graph.n()];
    for v in g.neighbors(x) {
        if v != y {
            values[c.map[v]] -= BigInt::from(g.mult(x, v));
        }
    }
    values[c.merged] += BigInt::from(g.valency(x) - g.mult(x, y) as u64);
    Ok((Divisor::new(values), c))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractionGenerator {
    pub x: usize,
    pub y: usize,
    #[serde(with = "serde_big")]
    pub m: BigInt,
    #[serde(with = "serde_big")]
    pub m_contracted: BigInt,
    /// gcd(|Jac(G)|, |Jac(G/e)|) = 1
    pub hypothesis: bool,
    #[serde(serialize_with = "serialize_divisor")]
    pub d_x: Divisor,
    #[serde(with = "serde_big")]
    pub order_d_x: BigInt,
    pub generates: bool,
    pub contracted_cyclic: bool,
    /// `D_x ∼ −D_y`
    pub dx_equiv_neg_dy: bool,
}

impl ContractionGenerator {
    /// Claims hold, or the coprimality hypothesis fails.
    pub fn holds(&self) -> bool {
        self.dx_equiv_neg_dy && (!self.hypothesis || (self.generates && self.contracted_cyclic))
    }
}

fn serialize_divisor<S: serde::Serializer>(d: &Divisor, s: S) -> std::result::Result<S::Ok, S::Error> {
    serde_big::vec::serialize(d.values(), s)
}

pub fn contraction_generator(g: &Multigraph, x: usize, y: usize) -> Result<ContractionGenerator> {
    let (d_x, c) = contraction_divisor(g, x, y)?;
    let (d_y, _) = contraction_divisor(g, y, x)?;
    let m = ReducedJacobian::at_last(g)?.order().clone();
    let jac = ReducedJacobian::at_last(&c.graph)?;
    let m_contracted = jac.order().clone();
    let order_d_x = jac.order_of(&d_x)?;
    Ok(ContractionGenerator {
        x,
        y,
        hypothesis: m.gcd(&m_contracted).is_one(),
        generates: order_d_x == m_contracted,
        contracted_cyclic: jac.is_cyclic(),
        dx_equiv_neg_dy: jac.equivalent(&d_x, &d_y.neg())?,
        m,
        m_contracted,
        d_x,
        order_d_x,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum BoundStatus {
    Holds { attained: bool },
    Violated,
    Skipped { reason: String },
}

/// One lower bound on `|[δ_xy]|` and its witness edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub name: &'static str,
    #[serde(flatten)]
    pub status: BoundStatus,
    /// Exact rational bound at the witness, `p/q`.
    pub bound: Option<String>,
    pub witness: Option<(usize, usize)>,
    #[serde(with = "serde_big::opt")]
    pub order: Option<BigInt>,
}

impl BoundCheck {
    fn skipped(name: &'static str, reason: impl Into<String>) -> Self {
        BoundCheck {
            name,
            status: BoundStatus::Skipped { reason: reason.into() },
            bound: None,
            witness: None,
            order: None,
        }
    }

    pub fn holds(&self) -> bool {
        !matches!(self.status, BoundStatus::Violated)
    }

    pub fn attained(&self) -> bool {
        matches!(self.status, BoundStatus::Holds { attained: true })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub edges: u64,
    pub biconnected: bool,
    pub bridgeless: bool,
    pub simple: bool,
    /// `(x, y, |[δ_xy]|)` for every adjacent pair with `x < y`.
    pub edge_orders: Vec<(usize, usize, String)>,
    pub checks: Vec<BoundCheck>,
}

impl BoundReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(BoundCheck::holds)
    }

    pub fn check(&self, name: &str) -> Option<&BoundCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub const EDGES_OVER_VERTICES: &str = "edges_over_vertices";
pub const EDGES_OVER_CYCLE_RANK: &str = "edges_over_cycle_rank";
pub const BICONNECTED_SIMPLE: &str = "biconnected_simple";
pub const BICONNECTED_MULTI: &str = "biconnected_multigraph";

fn ratio(p: impl Into<BigInt>, q: impl Into<BigInt>) -> BigRational {
    BigRational::new(p.into(), q.into())
}

fn fmt_ratio(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// "Some edge has order at least `bound`": witness is the edge of largest order.
fn exists_edge_bound(name: &'static str, bound: BigRational, orders: &[(usize, usize, BigInt)]) -> BoundCheck {
    let best = orders.iter().max_by(|a, b| a.2.cmp(&b.2)).expect("nonempty");
    let ord = BigRational::from_integer(best.2.clone());
    let status = if ord >= bound {
        BoundStatus::Holds { attained: ord == bound }
    } else {
        BoundStatus::Violated
    };
    BoundCheck {
        name,
        status,
        bound: Some(fmt_ratio(&bound)),
        witness: Some((best.0, best.1)),
        order: Some(best.2.clone()),
    }
}

/// "Every edge has order at least `bound(x, y)`": witness is a violating edge,
/// else the edge with least slack.
fn every_edge_bound(
    name: &'static str,
    orders: &[(usize, usize, BigInt)],
    bound: impl Fn(usize, usize) -> Option<BigRational>,
) -> BoundCheck {
    let mut worst: Option<(BigRational, BigRational, usize, usize, BigInt)> = None;
    for (u, v, ord) in orders {
        let Some(b) = bound(*u, *v) else { continue };
        let slack = BigRational::from_integer(ord.clone()) - &b;
        if worst.as_ref().is_none_or(|w| slack < w.0) {
            worst = Some((slack, b, *u, *v, ord.clone()));
        }
    }
    let Some((slack, b, u, v, ord)) = worst else {
        return BoundCheck::skipped(name, "no edge satisfies the valency requirement");
    };
    let status = if slack.is_negative() {
        BoundStatus::Violated
    } else {
        BoundStatus::Holds { attained: slack.is_zero() }
    };
    BoundCheck {
        name,
        status,
        bound: Some(fmt_ratio(&b)),
        witness: Some((u, v)),
        order: Some(ord),
    }
}

/// Evaluates the lower bounds on orders of `[δ_xy]` over edges of `G`:
///
/// * some edge has order `≥ ε/(n−1)`;
/// * some edge has order `≥ ε/(ε−n+1)` (non-trees);
/// * biconnected simple: every edge has order `≥ val(x) + (val(x)−1)/(val(y)−1)`;
/// * biconnected: every edge has order `≥ (val(x)−1)·val(y)/(val(y)−1)` with
///   `x` the endpoint of larger valency.
pub fn bound_report(g: &Multigraph) -> Result<BoundReport> {
    let n = g.n();
    let eps = g.edge_count();
    let connected = g.is_connected();
    let biconnected = connected && n >= 3 && g.is_biconnected();
    let mut report = BoundReport {
        n,
        edges: eps,
        biconnected,
        bridgeless: connected && g.bridges().is_empty(),
        simple: g.is_simple(),
        edge_orders: Vec::new(),
        checks: Vec::new(),
    };
    let names = [EDGES_OVER_VERTICES, EDGES_OVER_CYCLE_RANK, BICONNECTED_SIMPLE, BICONNECTED_MULTI];
    if !connected || eps == 0 {
        let reason = if connected { "no edges" } else { "graph is disconnected" };
        report.checks = names.iter().map(|&nm| BoundCheck::skipped(nm, reason)).collect();
        return Ok(report);
    }
    let jac = ReducedJacobian::at_last(g)?;
    let orders: Vec<(usize, usize, BigInt)> = g
        .edges()
        .map(|(u, v, _)| Ok((u, v, jac.delta_order(u, v)?)))
        .collect::<Result<_>>()?;
    report.edge_orders = orders.iter().map(|(u, v, o)| (*u, *v, o.to_string())).collect();

    report
        .checks
        .push(exists_edge_bound(EDGES_OVER_VERTICES, ratio(eps, n as u64 - 1), &orders));

    let cycle_rank = eps as i64 - n as i64 + 1;
    report.checks.push(if cycle_rank > 0 {
        exists_edge_bound(EDGES_OVER_CYCLE_RANK, ratio(eps, cycle_rank), &orders)
    } else {
        BoundCheck::skipped(EDGES_OVER_CYCLE_RANK, "graph is a tree")
    });

    let val = |v: usize| g.valency(v) as i64;
    report.checks.push(if !biconnected {
        BoundCheck::skipped(BICONNECTED_SIMPLE, "graph is not biconnected")
    } else if !report.simple {
        BoundCheck::skipped(BICONNECTED_SIMPLE, "graph has parallel edges")
    } else {
        // both orientations; δ_xy and δ_yx have the same order
        let both: Vec<_> = orders
            .iter()
            .flat_map(|(u, v, o)| [(*u, *v, o.clone()), (*v, *u, o.clone())])
            .collect();
        every_edge_bound(BICONNECTED_SIMPLE, &both, |x, y| {
            Some(BigRational::from_integer(val(x).into()) + ratio(val(x) - 1, val(y) - 1))
        })
    });

    report.checks.push(if !biconnected {
        BoundCheck::skipped(BICONNECTED_MULTI, "graph is not biconnected")
    } else {
        let oriented: Vec<_> = orders
            .iter()
            .map(|(u, v, o)| if val(*u) >= val(*v) { (*u, *v, o.clone()) } else { (*v, *u, o.clone()) })
            .collect();
        every_edge_bound(BICONNECTED_MULTI, &oriented, |x, y| {
            (val(y) >= 2).then(|| ratio((val(x) - 1) * val(y), val(y) - 1))
        })
    });
    Ok(report)
}
