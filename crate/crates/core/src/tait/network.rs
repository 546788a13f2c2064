//! Extended conductances and two-terminal network reduction.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A conductance, or a short circuit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExtendedConductance<T> {
    Finite(T),
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Combination {
    Series,
    Parallel,
}

impl<T: Scalar> ExtendedConductance<T> {
    pub fn from_i64(v: i64) -> Self {
        ExtendedConductance::Finite(T::from_i64(v))
    }

    pub fn zero() -> Self {
        ExtendedConductance::Finite(T::zero())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtendedConductance::Finite(v) if v.is_zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedConductance::Infinite)
    }

    pub fn finite(&self) -> Option<&T> {
        match self {
            ExtendedConductance::Finite(v) => Some(v),
            ExtendedConductance::Infinite => None,
        }
    }

    pub fn parallel(&self, other: &Self) -> Self {
        use ExtendedConductance::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a.clone() + b.clone()),
            _ => Infinite,
        }
    }

    /// `ab / (a + b)`; a short when `a + b = 0` with `ab != 0`.
    pub fn series(&self, other: &Self) -> Self {
        use ExtendedConductance::*;
        match (self, other) {
            (Infinite, x) | (x, Infinite) => x.clone(),
            (Finite(a), Finite(b)) => {
                let sum = a.clone() + b.clone();
                let prod = a.clone() * b.clone();
                if prod.is_zero() {
                    Finite(T::zero())
                } else if sum.is_zero() {
                    Infinite
                } else {
                    Finite(prod / sum)
                }
            }
        }
    }

    pub fn combine(kind: Combination, a: &Self, b: &Self) -> Self {
        match kind {
            Combination::Series => a.series(b),
            Combination::Parallel => a.parallel(b),
        }
    }
}

impl<T: Scalar> fmt::Display for ExtendedConductance<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedConductance::Finite(v) => write!(f, "{v}"),
            ExtendedConductance::Infinite => f.write_str("inf"),
        }
    }
}

impl<T: Scalar + FromStr> FromStr for ExtendedConductance<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "inf" {
            return Ok(ExtendedConductance::Infinite);
        }
        s.parse::<T>()
            .map(ExtendedConductance::Finite)
            .map_err(|_| Error::Parse(format!("bad conductance {s:?}")))
    }
}

/// Star with legs `a`, `b`, `c` (to nodes 1, 2, 3) to the equivalent
/// triangle `(p, q, r)` on edges 1-2, 2-3, 3-1.
pub fn star_triangle<T: Scalar>(
    a: &ExtendedConductance<T>,
    b: &ExtendedConductance<T>,
    c: &ExtendedConductance<T>,
) -> Result<(
    ExtendedConductance<T>,
    ExtendedConductance<T>,
    ExtendedConductance<T>,
)> {
    use ExtendedConductance::*;
    match (a, b, c) {
        (Finite(a), Finite(b), Finite(c)) => {
            let s = a.clone() + b.clone() + c.clone();
            if s.is_zero() {
                return Err(Error::SingularTransform);
            }
            let f = |x: &T, y: &T| Finite(x.clone() * y.clone() / s.clone());
            Ok((f(a, b), f(b, c), f(c, a)))
        }
        // One shorted leg merges the centre into that node.
        (Infinite, Finite(b), Finite(c)) => {
            Ok((Finite(b.clone()), Finite(T::zero()), Finite(c.clone())))
        }
        (Finite(a), Infinite, Finite(c)) => {
            Ok((Finite(a.clone()), Finite(c.clone()), Finite(T::zero())))
        }
        (Finite(a), Finite(b), Infinite) => {
            Ok((Finite(T::zero()), Finite(b.clone()), Finite(a.clone())))
        }
        _ => Err(Error::SingularTransform),
    }
}

/// Triangle `(p, q, r)` on edges 1-2, 2-3, 3-1 back to star legs.
pub fn triangle_star<T: Scalar>(
    p: &ExtendedConductance<T>,
    q: &ExtendedConductance<T>,
    r: &ExtendedConductance<T>,
) -> Result<(
    ExtendedConductance<T>,
    ExtendedConductance<T>,
    ExtendedConductance<T>,
)> {
    use ExtendedConductance::*;
    let (Finite(p), Finite(q), Finite(r)) = (p, q, r) else {
        return Err(Error::SingularTransform);
    };
    if p.is_zero() || q.is_zero() || r.is_zero() {
        return Err(Error::SingularTransform);
    }
    let sigma = p.clone() * q.clone() + q.clone() * r.clone() + r.clone() * p.clone();
    if sigma.is_zero() {
        return Err(Error::SingularTransform);
    }
    let leg = |opposite: &T| Finite(sigma.clone() / opposite.clone());
    Ok((leg(q), leg(r), leg(p)))
}

/// An undirected multigraph with extended conductances on its edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedNetwork<T> {
    pub nodes: usize,
    pub edges: Vec<(usize, usize, ExtendedConductance<T>)>,
    pub terminals: Option<(usize, usize)>,
}

impl<T: Scalar> SignedNetwork<T> {
    pub fn new(nodes: usize) -> Self {
        SignedNetwork {
            nodes,
            edges: Vec::new(),
            terminals: None,
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize, g: ExtendedConductance<T>) {
        self.edges.push((u, v, g));
    }

    /// Drops zero edges and self-loops.
    pub fn normalized(&self) -> Self {
        let edges = self
            .edges
            .iter()
            .filter(|(u, v, g)| u != v && !g.is_zero())
            .cloned()
            .collect();
        SignedNetwork {
            nodes: self.nodes,
            edges,
            terminals: self.terminals,
        }
    }

    pub fn render(&self) -> String {
        let mut out = format!("{}\n", self.nodes);
        for (u, v, g) in &self.edges {
            out.push_str(&format!("{u} {v} {g}\n"));
        }
        out
    }
}

impl<T: Scalar + FromStr> SignedNetwork<T> {
    /// Parses `node_count` followed by one `u v value` line per edge (nodes
    /// numbered from 0, `inf` for a short). Lines starting with `#` are
    /// ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let head = lines
            .next()
            .ok_or_else(|| Error::InvalidNetwork("missing node count".into()))?;
        let nodes: usize = head
            .parse()
            .map_err(|_| Error::InvalidNetwork(format!("bad node count {head:?}")))?;
        let mut net = SignedNetwork::new(nodes);
        for line in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [u, v, g] = parts[..] else {
                return Err(Error::InvalidNetwork(format!(
                    "expected `u v value`, got {line:?}"
                )));
            };
            let node = |s: &str| -> Result<usize> {
                let n: usize = s
                    .parse()
                    .map_err(|_| Error::InvalidNetwork(format!("bad node {s:?}")))?;
                if n >= nodes {
                    return Err(Error::InvalidNetwork(format!("node {n} out of range")));
                }
                Ok(n)
            };
            net.add_edge(node(u)?, node(v)?, g.parse()?);
        }
        Ok(net)
    }
}

/// Merges nodes joined by shorts; returns the class of every node.
fn short_classes<T: Scalar>(net: &SignedNetwork<T>) -> Vec<usize> {
    let mut root: Vec<usize> = (0..net.nodes).collect();
    fn find(root: &mut [usize], x: usize) -> usize {
        if root[x] != x {
            let r = find(root, root[x]);
            root[x] = r;
        }
        root[x]
    }
    for (u, v, g) in &net.edges {
        if g.is_infinite() {
            let (a, b) = (find(&mut root, *u), find(&mut root, *v));
            root[a.max(b)] = a.min(b);
        }
    }
    (0..net.nodes).map(|x| find(&mut root, x)).collect()
}

/// Effective conductance between `s` and `t` by eliminating every other
/// node: star-mesh reduction at nodes with nonzero total conductance,
/// contraction across a node whose two incident edges cancel, and otherwise
/// joint elimination of two adjacent balanced nodes.
pub fn effective_conductance<T: Scalar>(
    net: &SignedNetwork<T>,
    s: usize,
    t: usize,
) -> Result<ExtendedConductance<T>> {
    check_terminals(net, s, t)?;
    // Adjacency as combined conductances; shorts are contracted first.
    let class = short_classes(net);
    let (s, t) = (class[s], class[t]);
    if s == t {
        return Ok(ExtendedConductance::Infinite);
    }
    let mut adj: BTreeMap<usize, BTreeMap<usize, T>> = BTreeMap::new();
    for &c in &class {
        adj.entry(c).or_default();
    }
    let add = |adj: &mut BTreeMap<usize, BTreeMap<usize, T>>, u: usize, v: usize, g: T| {
        if u == v {
            return;
        }
        for (a, b) in [(u, v), (v, u)] {
            let row = adj.entry(a).or_default();
            let cur = row.remove(&b).unwrap_or_else(T::zero);
            let next = cur + g.clone();
            if !next.is_zero() {
                row.insert(b, next);
            }
        }
    };
    for (u, v, g) in &net.edges {
        if let ExtendedConductance::Finite(g) = g {
            add(&mut adj, class[*u], class[*v], g.clone());
        }
    }
    let (mut s, mut t) = (s, t);
    loop {
        let inner: Vec<usize> = adj.keys().copied().filter(|&x| x != s && x != t).collect();
        if inner.is_empty() {
            break;
        }
        let total = |x: usize, adj: &BTreeMap<usize, BTreeMap<usize, T>>| {
            adj[&x].values().fold(T::zero(), |a, g| a + g.clone())
        };
        if let Some(&v) = inner.iter().find(|&&x| !total(x, &adj).is_zero()) {
            let sum = total(v, &adj);
            let row = adj.remove(&v).unwrap();
            for nb in row.keys() {
                adj.get_mut(nb).unwrap().remove(&v);
            }
            let legs: Vec<(usize, T)> = row.into_iter().collect();
            for (i, (a, ga)) in legs.iter().enumerate() {
                for (b, gb) in &legs[i + 1..] {
                    add(&mut adj, *a, *b, ga.clone() * gb.clone() / sum.clone());
                }
            }
            continue;
        }
        // Every inner node has zero total. A node with exactly two edges
        // (g and -g in series) shorts its neighbours together.
        let Some(&v) = inner.iter().find(|&&x| adj[&x].len() == 2) else {
            if let Some(&v) = inner.iter().find(|&&x| adj[&x].is_empty()) {
                adj.remove(&v);
                continue;
            }
            // Two adjacent balanced nodes form an invertible block.
            let pair = inner
                .iter()
                .find_map(|&v| adj[&v].keys().find(|&&w| w != s && w != t).map(|&w| (v, w)));
            let Some((v, w)) = pair else {
                return Err(Error::SingularNetwork(
                    "no node can be eliminated: every remaining inner node balances to zero".into(),
                ));
            };
            eliminate_pair(&mut adj, v, w, &add);
            continue;
        };
        let row = adj.remove(&v).unwrap();
        let nbs: Vec<usize> = row.keys().copied().collect();
        for nb in &nbs {
            adj.get_mut(nb).unwrap().remove(&v);
        }
        let (keep, gone) = (nbs[0].min(nbs[1]), nbs[0].max(nbs[1]));
        let keep = if gone == s || gone == t { gone } else { keep };
        let gone = if keep == nbs[0] { nbs[1] } else { nbs[0] };
        if (keep == s && gone == t) || (keep == t && gone == s) {
            return Ok(ExtendedConductance::Infinite);
        }
        let moved = adj.remove(&gone).unwrap();
        for (nb, g) in moved {
            adj.get_mut(&nb).unwrap().remove(&gone);
            add(&mut adj, keep, nb, g);
        }
        if gone == s {
            s = keep;
        }
        if gone == t {
            t = keep;
        }
    }
    Ok(ExtendedConductance::Finite(
        adj[&s].get(&t).cloned().unwrap_or_else(T::zero),
    ))
}

type Adjacency<T> = BTreeMap<usize, BTreeMap<usize, T>>;

/// Schur complement of the two-node block `{v, w}`: every pair of outside
/// neighbours `a, b` gains `sum g_ax B^-1_xy g_yb` over `x, y` in the block.
fn eliminate_pair<T: Scalar>(
    adj: &mut Adjacency<T>,
    v: usize,
    w: usize,
    add: &impl Fn(&mut Adjacency<T>, usize, usize, T),
) {
    let total = |x: usize| adj[&x].values().fold(T::zero(), |a, g| a + g.clone());
    let (tv, tw, g) = (total(v), total(w), adj[&v][&w].clone());
    let det = tv.clone() * tw.clone() - g.clone() * g.clone();
    let inv = [
        [tw / det.clone(), g.clone() / det.clone()],
        [g / det.clone(), tv / det],
    ];
    let rv = adj.remove(&v).unwrap();
    let rw = adj.remove(&w).unwrap();
    let mut outside: BTreeMap<usize, [T; 2]> = BTreeMap::new();
    for (k, row) in [&rv, &rw].into_iter().enumerate() {
        for (&a, ga) in row {
            if a != v && a != w {
                outside.entry(a).or_insert_with(|| [T::zero(), T::zero()])[k] = ga.clone();
            }
        }
    }
    for a in outside.keys() {
        let row = adj.get_mut(a).unwrap();
        row.remove(&v);
        row.remove(&w);
    }
    let legs: Vec<(usize, [T; 2])> = outside.into_iter().collect();
    for (i, (a, ga)) in legs.iter().enumerate() {
        for (b, gb) in &legs[i + 1..] {
            let mut sum = T::zero();
            for x in 0..2 {
                for y in 0..2 {
                    sum = sum + ga[x].clone() * inv[x][y].clone() * gb[y].clone();
                }
            }
            add(adj, *a, *b, sum);
        }
    }
}

fn check_terminals<T>(net: &SignedNetwork<T>, s: usize, t: usize) -> Result<()> {
    if s >= net.nodes || t >= net.nodes {
        return Err(Error::InvalidNetwork(format!(
            "terminal out of range for {} nodes",
            net.nodes
        )));
    }
    if s == t {
        return Err(Error::InvalidNetwork("terminals must differ".into()));
    }
    Ok(())
}

/// Determinant by Gaussian elimination with nonzero pivots.
pub fn determinant<T: Scalar>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    let mut det = T::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return T::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det = det * pivot.clone();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone() / pivot.clone();
            let (top, rest) = m.split_at_mut(r);
            for (x, p) in rest[0][col..].iter_mut().zip(&top[col][col..]) {
                *x = x.clone() - p.clone() * f.clone();
            }
        }
    }
    det
}

/// Effective conductance from the weighted Laplacian: the determinant with
/// `s` removed divided by the determinant with `s` and `t` removed. Shorts
/// are contracted first, and nodes outside the components of `s` and `t`
/// are ignored.
pub fn laplacian_conductance<T: Scalar>(
    net: &SignedNetwork<T>,
    s: usize,
    t: usize,
) -> Result<ExtendedConductance<T>> {
    check_terminals(net, s, t)?;
    let class = short_classes(net);
    if class[s] == class[t] {
        return Ok(ExtendedConductance::Infinite);
    }
    let mut ids: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in &class {
        let next = ids.len();
        ids.entry(c).or_insert(next);
    }
    let node = |x: usize| ids[&class[x]];
    let n = ids.len();
    // Keep only nodes connected (through any edge) to a terminal.
    let mut reach = vec![false; n];
    let mut stack = vec![node(s), node(t)];
    while let Some(x) = stack.pop() {
        if std::mem::replace(&mut reach[x], true) {
            continue;
        }
        for (u, v, g) in &net.edges {
            if g.is_zero() {
                continue;
            }
            let (a, b) = (node(*u), node(*v));
            if a == x && !reach[b] {
                stack.push(b);
            }
            if b == x && !reach[a] {
                stack.push(a);
            }
        }
    }
    let mut lap = vec![vec![T::zero(); n]; n];
    for (u, v, g) in &net.edges {
        let (a, b) = (node(*u), node(*v));
        if let ExtendedConductance::Finite(g) = g {
            if a != b {
                lap[a][a] = lap[a][a].clone() + g.clone();
                lap[b][b] = lap[b][b].clone() + g.clone();
                lap[a][b] = lap[a][b].clone() - g.clone();
                lap[b][a] = lap[b][a].clone() - g.clone();
            }
        }
    }
    let minor = |drop: &[usize]| {
        let keep: Vec<usize> = (0..n).filter(|x| reach[*x] && !drop.contains(x)).collect();
        let m = keep
            .iter()
            .map(|&r| keep.iter().map(|&c| lap[r][c].clone()).collect())
            .collect();
        determinant(m)
    };
    let num = minor(&[node(s)]);
    let den = minor(&[node(s), node(t)]);
    if den.is_zero() {
        if num.is_zero() {
            return Err(Error::SingularNetwork(
                "both Laplacian minors vanish".into(),
            ));
        }
        return Ok(ExtendedConductance::Infinite);
    }
    Ok(ExtendedConductance::Finite(num / den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type C = ExtendedConductance<Rational>;

    fn r(p: i64, q: i64) -> C {
        ExtendedConductance::Finite(Rational::new(p.into(), q.into()))
    }

    #[test]
    fn balanced_inner_nodes_are_eliminated_in_pairs() {
        let mut net = SignedNetwork::new(4);
        for (u, v, g) in [
            (0, 2, 1),
            (2, 3, 1),
            (2, 1, -2),
            (3, 0, 1),
            (3, 1, -2),
            (0, 1, 3),
        ] {
            net.add_edge(u, v, r(g, 1));
        }
        let g = effective_conductance(&net, 0, 1).unwrap();
        assert_eq!(g, laplacian_conductance(&net, 0, 1).unwrap());
        assert!(!g.is_infinite());
    }

    #[test]
    fn series_and_parallel() {
        assert_eq!(r(1, 1).parallel(&r(-1, 1)), r(0, 1));
        assert_eq!(r(1, 1).series(&r(1, 1)), r(1, 2));
        assert_eq!(r(1, 1).series(&r(-1, 1)), C::Infinite);
        assert_eq!(r(3, 1).series(&C::Infinite), r(3, 1));
        assert_eq!(r(3, 1).parallel(&C::Infinite), C::Infinite);
    }

    #[test]
    fn star_triangle_cases() {
        assert_eq!(
            star_triangle(&r(1, 1), &r(1, 1), &r(1, 1)).unwrap(),
            (r(1, 3), r(1, 3), r(1, 3))
        );
        assert_eq!(
            star_triangle(&r(1, 1), &r(1, 1), &r(-1, 1)).unwrap(),
            (r(1, 1), r(-1, 1), r(-1, 1))
        );
        assert_eq!(
            star_triangle(&r(1, 1), &r(-1, 1), &r(0, 1)),
            Err(Error::SingularTransform)
        );
        let (p, q, rr) = star_triangle(&r(2, 1), &r(3, 1), &r(5, 1)).unwrap();
        assert_eq!(
            triangle_star(&p, &q, &rr).unwrap(),
            (r(2, 1), r(3, 1), r(5, 1))
        );
    }

    #[test]
    fn triangle_network() {
        let net = SignedNetwork::<Rational>::parse("3\n0 1 1\n1 2 1\n2 0 1\n").unwrap();
        assert_eq!(effective_conductance(&net, 0, 1).unwrap(), r(3, 2));
        assert_eq!(laplacian_conductance(&net, 0, 1).unwrap(), r(3, 2));
    }

    #[test]
    fn cancelling_series_pair_shorts() {
        let net = SignedNetwork::<Rational>::parse("3\n0 1 1\n1 2 -1\n").unwrap();
        assert_eq!(effective_conductance(&net, 0, 2).unwrap(), C::Infinite);
    }

    #[test]
    fn network_text_roundtrip() {
        let net = SignedNetwork::<Rational>::parse("2\n0 1 1/2\n0 1 inf\n").unwrap();
        assert_eq!(SignedNetwork::parse(&net.render()).unwrap(), net);
        assert!(SignedNetwork::<Rational>::parse("2\n0 5 1").is_err());
    }

    #[test]
    fn generic_over_floats() {
        let mut net = SignedNetwork::<f64>::new(2);
        net.add_edge(0, 1, ExtendedConductance::Finite(2.0));
        assert_eq!(
            effective_conductance(&net, 0, 1).unwrap(),
            ExtendedConductance::Finite(2.0)
        );
    }
}
