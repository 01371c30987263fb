//! Loopless undirected multigraphs on dense vertex indices.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::Ratio;
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::BigMatrix;

/// Loopless undirected multigraph. Vertices are `0..n`; `mult(u, v)` is the
/// number of parallel edges between `u` and `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multigraph {
    n: usize,
    mult: Vec<u32>,
}

impl Multigraph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Multigraph {
            n,
            mult: vec![0; n * n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(n);
        for &(u, v) in edges {
            g.add_edges(u, v, 1)?;
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges).expect("cycle needs n >= 3")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges).expect("valid path")
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.set_mult(u, v, 1);
            }
        }
        g
    }

    /// `k` parallel edges between two vertices.
    pub fn banana(k: u32) -> Self {
        let mut g = Self::new(2);
        g.set_mult(0, 1, k);
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mult(&self, u: usize, v: usize) -> u32 {
        self.mult[u * self.n + v]
    }

    fn set_mult(&mut self, u: usize, v: usize, k: u32) {
        debug_assert!(u != v);
        self.mult[u * self.n + v] = k;
        self.mult[v * self.n + u] = k;
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    fn check_pair(&self, x: usize, y: usize) -> Result<()> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        if x == y {
            return Err(Error::SameVertex(x));
        }
        Ok(())
    }

    pub fn add_edges(&mut self, u: usize, v: usize, k: u32) -> Result<()> {
        self.check_pair(u, v)?;
        let m = self.mult(u, v) + k;
        self.set_mult(u, v, m);
        Ok(())
    }

    /// Number of edges incident to `v`, counted with multiplicity.
    pub fn valency(&self, v: usize) -> u64 {
        self.mult[v * self.n..(v + 1) * self.n]
            .iter()
            .map(|&k| k as u64)
            .sum()
    }

    /// Total number of edges counted with multiplicity.
    pub fn edge_count(&self) -> u64 {
        self.edges().map(|(_, _, k)| k as u64).sum()
    }

    /// Distinct adjacent pairs `(u, v, mult)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        (0..self.n).flat_map(move |u| {
            (u + 1..self.n).filter_map(move |v| {
                let k = self.mult(u, v);
                (k > 0).then_some((u, v, k))
            })
        })
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&w| self.mult(v, w) > 0)
    }

    pub fn is_simple(&self) -> bool {
        self.mult.iter().all(|&k| k <= 1)
    }

    /// Laplacian `Δ − A`: valencies on the diagonal, `−K(u,v)` off it.
    pub fn laplacian(&self) -> BigMatrix {
        BigMatrix::from_fn(self.n, self.n, |i, j| {
            if i == j {
                BigInt::from(self.valency(i))
            } else {
                -BigInt::from(self.mult(i, j))
            }
        })
    }

    /// Laplacian with row and column `base` removed. No connectivity check;
    /// its determinant is the spanning-tree count (zero when disconnected).
    pub fn laplacian_minor(&self, base: usize) -> Result<BigMatrix> {
        self.check_vertex(base)?;
        Ok(self.laplacian().without_row_col(base))
    }

    /// Reduced Laplacian at `base`; requires a connected graph.
    pub fn reduced_laplacian(&self, base: usize) -> Result<BigMatrix> {
        self.check_vertex(base)?;
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        self.laplacian_minor(base)
    }

    /// Removes `k` edges between `x` and `y`; negative `k` adds edges.
    pub fn modify_edges(&self, x: usize, y: usize, k: i64) -> Result<Multigraph> {
        self.check_pair(x, y)?;
        let result = self.mult(x, y) as i64 - k;
        if result < 0 {
            return Err(Error::NegativeMultiplicity { x, y, result });
        }
        let mut g = self.clone();
        g.set_mult(x, y, u32::try_from(result).map_err(|_| {
            Error::InvalidArgument(format!("multiplicity {result} too large"))
        })?);
        Ok(g)
    }

    /// Identifies `x` and `y`, dropping the resulting loops.
    pub fn contract_edge(&self, x: usize, y: usize) -> Result<Contraction> {
        self.check_pair(x, y)?;
        if self.mult(x, y) == 0 {
            return Err(Error::NoEdge(x, y));
        }
        let (keep, gone) = (x.min(y), x.max(y));
        let map: Vec<usize> = (0..self.n)
            .map(|v| match v.cmp(&gone) {
                std::cmp::Ordering::Less => v,
                std::cmp::Ordering::Equal => keep,
                std::cmp::Ordering::Greater => v - 1,
            })
            .collect();
        let mut g = Multigraph::new(self.n - 1);
        for (u, v, k) in self.edges() {
            let (a, b) = (map[u], map[v]);
            if a != b {
                let total = g.mult(a, b) + k;
                g.set_mult(a, b, total);
            }
        }
        Ok(Contraction {
            graph: g,
            merged: keep,
            map,
        })
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Vertices whose removal disconnects the graph (Tarjan low-link).
    pub fn articulation_points(&self) -> Vec<usize> {
        let n = self.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut is_cut = vec![false; n];
        let mut time = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            // (vertex, parent, next neighbor index to scan)
            let mut stack = vec![(root, usize::MAX, 0usize)];
            disc[root] = time;
            low[root] = time;
            time += 1;
            let mut root_children = 0;
            while let Some(&mut (v, parent, ref mut next)) = stack.last_mut() {
                if let Some(w) = (*next..n).find(|&w| self.mult(v, w) > 0) {
                    *next = w + 1;
                    if disc[w] == usize::MAX {
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        if v == root {
                            root_children += 1;
                        }
                        stack.push((w, v, 0));
                    } else if w != parent {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if parent != usize::MAX {
                        low[parent] = low[parent].min(low[v]);
                        if parent != root && low[v] >= disc[parent] {
                            is_cut[parent] = true;
                        }
                    }
                }
            }
            if root_children > 1 {
                is_cut[root] = true;
            }
        }
        (0..n).filter(|&v| is_cut[v]).collect()
    }

    /// Connected with no cut vertex. Graphs on one vertex, and connected graphs
    /// on two vertices, count as biconnected.
    pub fn is_biconnected(&self) -> bool {
        self.is_connected() && self.articulation_points().is_empty()
    }

    /// Edges `(u, v)` whose removal (all parallel copies included) disconnects
    /// the graph; only single edges can be bridges.
    pub fn bridges(&self) -> Vec<(usize, usize)> {
        self.edges()
            .filter(|&(_, _, k)| k == 1)
            .filter(|&(u, v, _)| {
                let mut h = self.clone();
                h.set_mult(u, v, 0);
                !h.is_connected()
            })
            .map(|(u, v, _)| (u, v))
            .collect()
    }

    /// Erdős–Rényi `G(n, p)`: each of the `n(n−1)/2` pairs is an edge
    /// independently with probability `p`, drawn exactly from the rational.
    pub fn erdos_renyi<R: Rng + ?Sized>(n: usize, p: Probability, rng: &mut R) -> Multigraph {
        let mut g = Multigraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if p.sample(rng) {
                    g.set_mult(u, v, 1);
                }
            }
        }
        g
    }

    /// Canonical edge-list document (see [`FromStr`]).
    pub fn to_edge_list(&self) -> String {
        self.to_string()
    }
}

/// Result of [`Multigraph::contract_edge`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contraction {
    pub graph: Multigraph,
    /// Index of the merged vertex in the contracted graph.
    pub merged: usize,
    /// Old vertex index to new vertex index.
    pub map: Vec<usize>,
}

/// Rational edge probability strictly between 0 and 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Probability {
    num: u64,
    den: u64,
}

impl Probability {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num == 0 || num >= den {
            return Err(Error::InvalidArgument(format!(
                "edge probability {num}/{den} must lie strictly in (0, 1)"
            )));
        }
        let r = Ratio::new(num, den);
        Ok(Probability {
            num: *r.numer(),
            den: *r.denom(),
        })
    }

    pub fn half() -> Self {
        Probability { num: 1, den: 2 }
    }

    pub fn ratio(&self) -> Ratio<u64> {
        Ratio::new(self.num, self.den)
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> bool {
        rng.gen_range(0..self.den) < self.num
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Probability {
    type Err = Error;

    /// Accepts `a/b` or a terminating decimal such as `0.5`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("cannot parse probability {s:?}"));
        let s = s.trim();
        if let Some((a, b)) = s.split_once('/') {
            let a = a.trim().parse().map_err(|_| bad())?;
            let b = b.trim().parse().map_err(|_| bad())?;
            return Probability::new(a, b);
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if frac.len() > 18 || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let den = 10u64.pow(frac.len() as u32);
        let f: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        let num = int
            .checked_mul(den)
            .and_then(|x| x.checked_add(f))
            .ok_or_else(bad)?;
        Probability::new(num, den)
    }
}

impl FromStr for Multigraph {
    type Err = Error;

    /// Edge-list format: a `n=<count>` header, then `u v` or `u v mult` lines.
    /// `#` starts a comment; repeated pairs accumulate.
    fn from_str(text: &str) -> Result<Self> {
        let mut graph: Option<Multigraph> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let err = |msg: String| Error::Parse { line: line_no, msg };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some(g) = graph.as_mut() else {
                let count = line
                    .strip_prefix("n=")
                    .or_else(|| line.strip_prefix("n ="))
                    .ok_or_else(|| err(format!("expected header n=<count>, found {line:?}")))?;
                let n: usize = count
                    .trim()
                    .parse()
                    .map_err(|_| err(format!("bad vertex count {count:?}")))?;
                graph = Some(Multigraph::new(n));
                continue;
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if !(2..=3).contains(&fields.len()) {
                return Err(err(format!("expected `u v [mult]`, found {line:?}")));
            }
            let vertex = |s: &str| -> Result<usize> {
                let v: usize = s.parse().map_err(|_| err(format!("bad vertex {s:?}")))?;
                if v >= g.n {
                    return Err(err(format!("vertex {v} not below n={}", g.n)));
                }
                Ok(v)
            };
            let u = vertex(fields[0])?;
            let v = vertex(fields[1])?;
            if u == v {
                return Err(err(format!("loop at vertex {u}")));
            }
            let k: i64 = match fields.get(2) {
                Some(s) => s.parse().map_err(|_| err(format!("bad multiplicity {s:?}")))?,
                None => 1,
            };
            if k < 0 {
                return Err(err(format!("negative multiplicity {k}")));
            }
            let k = u32::try_from(k).map_err(|_| err(format!("multiplicity {k} too large")))?;
            g.add_edges(u, v, k).map_err(|e| err(e.to_string()))?;
        }
        graph.ok_or(Error::Parse {
            line: 0,
            msg: "missing n=<count> header".into(),
        })
    }
}

impl fmt::Display for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.n)?;
        for (u, v, k) in self.edges() {
            if k == 1 {
                writeln!(f, "{u} {v}")?;
            } else {
                writeln!(f, "{u} {v} {k}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn parse_examples() {
        let k2: Multigraph = "n=2\n0 1".parse().unwrap();
        assert_eq!(k2, Multigraph::path(2));
        let c6: Multigraph = "n=6\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0".parse().unwrap();
        assert_eq!(c6, Multigraph::cycle(6));
        let triple: Multigraph = "n=2\n0 1 3".parse().unwrap();
        assert_eq!(triple.mult(0, 1), 3);
        let summed: Multigraph = "# comment\nn=3\n0 1 # first\n1 0 2\n1 2".parse().unwrap();
        assert_eq!(summed.mult(0, 1), 3);
        assert_eq!(summed.mult(2, 1), 1);
    }

    #[test]
    fn parse_errors() {
        for bad in ["0 1", "n=2\n0 0", "n=2\n0 2", "n=2\n0 1 -1", "n=2\n0", "n=x", "n=2\na b"] {
            assert!(matches!(bad.parse::<Multigraph>(), Err(Error::Parse { .. })), "{bad}");
        }
    }

    #[test]
    fn display_round_trip() {
        let g: Multigraph = "n=4\n0 1 2\n2 3".parse().unwrap();
        assert_eq!(g.to_edge_list().parse::<Multigraph>().unwrap(), g);
        assert!(!g.is_connected());
    }

    #[test]
    fn laplacians() {
        assert_eq!(
            Multigraph::path(2).laplacian(),
            BigMatrix::from_i64_rows(&[[1, -1], [-1, 1]])
        );
        assert_eq!(
            Multigraph::banana(3).laplacian(),
            BigMatrix::from_i64_rows(&[[3, -3], [-3, 3]])
        );
        let expected = BigMatrix::from_i64_rows(&[
            [2, -1, 0, 0, 0],
            [-1, 2, -1, 0, 0],
            [0, -1, 2, -1, 0],
            [0, 0, -1, 2, -1],
            [0, 0, 0, -1, 2],
        ]);
        assert_eq!(Multigraph::cycle(6).reduced_laplacian(5).unwrap(), expected);
        assert_eq!(
            Multigraph::path(2).reduced_laplacian(1).unwrap(),
            BigMatrix::from_i64_rows(&[[1]])
        );
        let p3 = Multigraph::path(3).reduced_laplacian(2).unwrap();
        assert_eq!(p3, BigMatrix::from_i64_rows(&[[1, -1], [-1, 2]]));
        assert_eq!(crate::linalg::determinant(&p3).unwrap(), bi(1));
        assert_eq!(Multigraph::new(2).reduced_laplacian(0), Err(Error::Disconnected));
    }

    #[test]
    fn modify_and_contract() {
        let c6 = Multigraph::cycle(6);
        assert_eq!(c6.modify_edges(5, 0, 1).unwrap(), Multigraph::path(6));
        assert_eq!(
            Multigraph::path(2).modify_edges(0, 1, -2).unwrap(),
            Multigraph::banana(3)
        );
        assert!(matches!(c6.modify_edges(0, 2, 1), Err(Error::NegativeMultiplicity { .. })));
        assert_eq!(c6.modify_edges(1, 1, 1), Err(Error::SameVertex(1)));
        let chord = c6.modify_edges(0, 3, -1).unwrap();
        assert_eq!(chord.edge_count(), 7);

        let c = c6.contract_edge(0, 1).unwrap();
        assert_eq!(c.graph, Multigraph::cycle(5));
        let c = Multigraph::banana(2).contract_edge(0, 1).unwrap();
        assert_eq!(c.graph, Multigraph::new(1));
        let k4 = Multigraph::complete(4).contract_edge(2, 3).unwrap();
        assert_eq!(k4.graph.n(), 3);
        assert_eq!(k4.graph.mult(0, 2), 2);
        assert_eq!(k4.graph.mult(1, 2), 2);
        assert_eq!(k4.graph.mult(0, 1), 1);
        assert_eq!(c6.contract_edge(0, 3), Err(Error::NoEdge(0, 3)));
    }

    #[test]
    fn connectivity() {
        assert!(Multigraph::path(2).is_connected());
        assert!(!Multigraph::new(2).is_connected());
        let g = Multigraph::cycle(6)
            .modify_edges(0, 1, 1)
            .unwrap()
            .modify_edges(3, 4, 1)
            .unwrap();
        assert!(!g.is_connected());
    }

    #[test]
    fn biconnectivity() {
        assert!(Multigraph::cycle(6).is_biconnected());
        let bowtie =
            Multigraph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert_eq!(bowtie.articulation_points(), vec![2]);
        assert!(!bowtie.is_biconnected());
        assert!(!Multigraph::path(6).is_biconnected());
        assert!(Multigraph::path(2).is_biconnected());
        assert!(Multigraph::new(1).is_biconnected());
        assert!(Multigraph::complete(5).is_biconnected());
    }

    #[test]
    fn bridges() {
        let g = Multigraph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (0, 3)]).unwrap();
        assert_eq!(g.bridges(), vec![(0, 3)]);
        assert!(Multigraph::banana(2).bridges().is_empty());
    }

    #[test]
    fn erdos_renyi_extremes_and_determinism() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let almost_one = Probability::new(u64::MAX - 1, u64::MAX).unwrap();
        let almost_zero = Probability::new(1, u64::MAX).unwrap();
        assert_eq!(Multigraph::erdos_renyi(6, almost_one, &mut rng), Multigraph::complete(6));
        assert_eq!(Multigraph::erdos_renyi(6, almost_zero, &mut rng), Multigraph::new(6));
        let a = Multigraph::erdos_renyi(12, Probability::half(), &mut ChaCha8Rng::seed_from_u64(1));
        let b = Multigraph::erdos_renyi(12, Probability::half(), &mut ChaCha8Rng::seed_from_u64(1));
        assert_eq!(a, b);
    }

    #[test]
    fn probability_parsing() {
        assert_eq!("1/2".parse::<Probability>().unwrap(), Probability::half());
        assert_eq!("0.5".parse::<Probability>().unwrap(), Probability::half());
        assert_eq!("0.25".parse::<Probability>().unwrap().to_string(), "1/4");
        assert!("1".parse::<Probability>().is_err());
        assert!("0".parse::<Probability>().is_err());
        assert!("3/2".parse::<Probability>().is_err());
    }
}
