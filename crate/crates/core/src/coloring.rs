//! Colorings of diagrams by involutory quandles.
//!
//! A coloring assigns an element to every arc so that at each crossing the
//! outgoing under-arc carries the product of the incoming under-arc and the
//! over-arc. For involutory quandles the rule does not depend on direction.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::{ArcLabel, Diagram};
use crate::error::{Error, Result};

/// A finite binary operation given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuandleTable {
    table: Vec<Vec<usize>>,
}

/// Element names used when printing colorings of the three-color table.
pub const COLOR_NAMES: [&str; 3] = ["A", "B", "C"];

impl QuandleTable {
    pub fn new(table: Vec<Vec<usize>>) -> Result<QuandleTable> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidQuandle("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidQuandle(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(v) = row.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidQuandle(format!(
                    "entry {v} in row {i} is out of range"
                )));
            }
        }
        Ok(QuandleTable { table })
    }

    /// The trivial quandle `xy = x` on `n` elements.
    pub fn trivial(n: usize) -> QuandleTable {
        QuandleTable {
            table: (0..n).map(|x| vec![x; n]).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn product(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    /// Parses `n` followed by `n` rows of `n` element indices.
    pub fn parse(text: &str) -> Result<QuandleTable> {
        let mut nums = text.split_whitespace().map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad table entry {t:?}")))
        });
        let n = nums
            .next()
            .ok_or_else(|| Error::Parse("missing table size".into()))??;
        let mut table = vec![vec![0; n]; n];
        for row in table.iter_mut() {
            for v in row.iter_mut() {
                *v = nums
                    .next()
                    .ok_or_else(|| Error::Parse("table too short".into()))??;
            }
        }
        if nums.next().is_some() {
            return Err(Error::Parse("table too long".into()));
        }
        QuandleTable::new(table)
    }

    pub fn render(&self) -> String {
        let mut out = format!("{}\n", self.size());
        for row in &self.table {
            let cells: Vec<String> = row.iter().map(usize::to_string).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for QuandleTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// The three colors A, B, C (as 0, 1, 2): equal colors give themselves,
/// distinct colors give the third.
pub fn three_color_table() -> QuandleTable {
    let table = (0..3)
        .map(|x| (0..3).map(|y| if x == y { x } else { 3 - x - y }).collect())
        .collect();
    QuandleTable { table }
}

/// Outcome of checking one law over all element triples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawCheck {
    pub holds: bool,
    /// First failing triple `(x, y, z)`; unused positions are zero.
    pub counterexample: Option<[usize; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    /// `xx = x`
    pub idempotent: LawCheck,
    /// `(xy)y = x`
    pub involutory: LawCheck,
    /// `(xy)z = (xz)(yz)`
    pub self_distributive: LawCheck,
    /// `(xy)z = x(yz)`, reported for comparison only.
    pub associative: LawCheck,
}

impl AxiomReport {
    pub fn is_involutory_quandle(&self) -> bool {
        self.idempotent.holds && self.involutory.holds && self.self_distributive.holds
    }
}

fn law(n: usize, arity: usize, ok: impl Fn(usize, usize, usize) -> bool) -> LawCheck {
    let range = |k: usize| if k < arity { n } else { 1 };
    for x in 0..range(0) {
        for y in 0..range(1) {
            for z in 0..range(2) {
                if !ok(x, y, z) {
                    return LawCheck {
                        holds: false,
                        counterexample: Some([x, y, z]),
                    };
                }
            }
        }
    }
    LawCheck {
        holds: true,
        counterexample: None,
    }
}

pub fn check_involutory_quandle(t: &QuandleTable) -> AxiomReport {
    let n = t.size();
    let p = |x, y| t.product(x, y);
    AxiomReport {
        idempotent: law(n, 1, |x, _, _| p(x, x) == x),
        involutory: law(n, 2, |x, y, _| p(p(x, y), y) == x),
        self_distributive: law(n, 3, |x, y, z| p(p(x, y), z) == p(p(x, z), p(y, z))),
        associative: law(n, 3, |x, y, z| p(p(x, y), z) == p(x, p(y, z))),
    }
}

/// An assignment of table elements to arcs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub colors: BTreeMap<ArcLabel, usize>,
}

impl Coloring {
    pub fn distinct_colors(&self) -> usize {
        let set: std::collections::BTreeSet<usize> = self.colors.values().copied().collect();
        set.len()
    }
}

/// Whether `c` colors every arc, keeps over-strands one color and satisfies
/// the product rule at every crossing.
pub fn is_coloring(d: &Diagram, t: &QuandleTable, c: &Coloring) -> bool {
    let labels = d.arc_labels();
    if labels.len() != c.colors.len() || labels.iter().any(|a| !c.colors.contains_key(a)) {
        return false;
    }
    d.crossings().iter().all(|x| {
        let (a, b) = x.under();
        let (o, o2) = x.over();
        c.colors[&o] == c.colors[&o2] && t.product(c.colors[&a], c.colors[&o]) == c.colors[&b]
    })
}

fn require_quandle(t: &QuandleTable) -> Result<()> {
    let r = check_involutory_quandle(t);
    if r.is_involutory_quandle() {
        Ok(())
    } else {
        Err(Error::InvalidQuandle(
            "table fails the involutory quandle axioms".into(),
        ))
    }
}

/// Constraint propagation plus branching over arc classes. An over-strand
/// keeps its color through a crossing, so its two sides form one class;
/// classes are numbered by their smallest arc label.
struct Search<'a> {
    t: &'a QuandleTable,
    arcs: Vec<ArcLabel>,
    /// Class of each arc in `arcs`.
    class: Vec<usize>,
    classes: usize,
    /// Per crossing: classes of (under in, over, under out).
    rules: Vec<[usize; 3]>,
    /// Rules touching each class.
    touching: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(d: &Diagram, t: &'a QuandleTable) -> Search<'a> {
        let arcs = d.arc_labels();
        let pos: BTreeMap<ArcLabel, usize> =
            arcs.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let mut root: Vec<usize> = (0..arcs.len()).collect();
        fn find(root: &mut [usize], x: usize) -> usize {
            if root[x] != x {
                let r = find(root, root[x]);
                root[x] = r;
            }
            root[x]
        }
        for x in d.crossings() {
            let (oi, oo) = x.over();
            let (a, b) = (find(&mut root, pos[&oi]), find(&mut root, pos[&oo]));
            root[a.max(b)] = a.min(b);
        }
        let mut id = BTreeMap::new();
        let class: Vec<usize> = (0..arcs.len())
            .map(|i| {
                let r = find(&mut root, i);
                let next = id.len();
                *id.entry(r).or_insert(next)
            })
            .collect();
        let rules: Vec<[usize; 3]> = d
            .crossings()
            .iter()
            .map(|x| {
                [
                    class[pos[&x.under().0]],
                    class[pos[&x.over().0]],
                    class[pos[&x.under().1]],
                ]
            })
            .collect();
        let mut touching = vec![Vec::new(); id.len()];
        for (r, rule) in rules.iter().enumerate() {
            for &p in rule {
                touching[p].push(r);
            }
        }
        Search {
            t,
            arcs,
            class,
            classes: id.len(),
            rules,
            touching,
        }
    }

    /// Assigns `p := v` and everything it forces; false on a contradiction.
    fn assign(&self, colors: &mut [Option<usize>], p: usize, v: usize) -> bool {
        let mut stack = vec![(p, v)];
        while let Some((p, v)) = stack.pop() {
            match colors[p] {
                Some(w) if w != v => return false,
                Some(_) => continue,
                None => colors[p] = Some(v),
            }
            for &r in &self.touching[p] {
                let [a, b, c] = self.rules[r];
                match (colors[a], colors[b], colors[c]) {
                    (Some(x), Some(y), Some(z)) => {
                        if self.t.product(x, y) != z {
                            return false;
                        }
                    }
                    (Some(x), Some(y), None) => stack.push((c, self.t.product(x, y))),
                    (None, Some(y), Some(z)) => stack.push((a, self.t.product(z, y))),
                    _ => {}
                }
            }
        }
        true
    }

    /// Visits complete colorings in lexicographic order until `visit`
    /// returns false.
    fn run(
        &self,
        colors: &mut [Option<usize>],
        visit: &mut dyn FnMut(&[Option<usize>]) -> bool,
    ) -> bool {
        let Some(p) = colors.iter().position(Option::is_none) else {
            return visit(colors);
        };
        for v in 0..self.t.size() {
            let mut next = colors.to_vec();
            if self.assign(&mut next, p, v) && !self.run(&mut next, visit) {
                return false;
            }
        }
        true
    }
}

/// Counts colorings by backtracking search.
pub fn count_colorings_backtracking(d: &Diagram, t: &QuandleTable) -> Result<u64> {
    require_quandle(t)?;
    let s = Search::new(d, t);
    let mut colors = vec![None; s.classes];
    let mut count = 0u64;
    s.run(&mut colors, &mut |_| {
        count += 1;
        true
    });
    Ok(count)
}

/// Counts three-colorings as `3^k`, where `k` is the dimension of the
/// solution space over GF(3) of `a + b + c = 0` (under-in, over, under-out)
/// and `b = b'` (the two over-arcs) at every crossing.
pub fn count_three_colorings_linear(d: &Diagram) -> u64 {
    let arcs = d.arc_labels();
    let pos: BTreeMap<ArcLabel, usize> = arcs.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let mut rows: Vec<Vec<u8>> = d
        .crossings()
        .iter()
        .map(|x| {
            let mut row = vec![0u8; arcs.len()];
            for a in [x.under().0, x.over().0, x.under().1] {
                row[pos[&a]] = (row[pos[&a]] + 1) % 3;
            }
            row
        })
        .collect();
    for x in d.crossings() {
        let (oi, oo) = x.over();
        if oi != oo {
            let mut row = vec![0u8; arcs.len()];
            row[pos[&oi]] = 1;
            row[pos[&oo]] = 2;
            rows.push(row);
        }
    }
    let rank = rank_mod3(&mut rows, arcs.len());
    3u64.pow((arcs.len() - rank) as u32)
}

fn rank_mod3(rows: &mut [Vec<u8>], cols: usize) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        // 1 and 2 are their own inverses mod 3.
        let inv = rows[rank][col];
        for v in rows[rank].iter_mut() {
            *v = (*v * inv) % 3;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let f = row[col];
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + 3 * 3 - f * p) % 3;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Number of colorings. For the three-color table the backtracking count is
/// cross-checked against the linear count.
pub fn count_colorings(d: &Diagram, t: &QuandleTable) -> Result<u64> {
    let count = count_colorings_backtracking(d, t)?;
    if *t == three_color_table() {
        let linear = count_three_colorings_linear(d);
        if linear != count {
            return Err(Error::Internal(format!(
                "coloring counts disagree: search {count}, linear {linear}"
            )));
        }
    }
    Ok(count)
}

/// The lexicographically first coloring (by ascending arc label) using at
/// least two elements.
pub fn nontrivial_coloring_witness(d: &Diagram, t: &QuandleTable) -> Result<Option<Coloring>> {
    require_quandle(t)?;
    let s = Search::new(d, t);
    let mut colors = vec![None; s.classes];
    let mut found = None;
    s.run(&mut colors, &mut |c| {
        let first = c[0];
        if c.iter().any(|&v| v != first) {
            found = Some(c.iter().map(|v| v.unwrap()).collect::<Vec<_>>());
            false
        } else {
            true
        }
    });
    Ok(found.map(|vals| Coloring {
        colors: s
            .arcs
            .iter()
            .zip(&s.class)
            .map(|(&a, &k)| (a, vals[k]))
            .collect(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::standard;

    #[test]
    fn three_color_products() {
        let t = three_color_table();
        assert_eq!(t.product(0, 1), 2);
        assert_eq!(t.product(0, 0), 0);
        assert_eq!(t.product(1, 2), 0);
        assert_eq!(t.product(2, 1), 0);
    }

    #[test]
    fn three_color_is_quandle_but_not_associative() {
        let r = check_involutory_quandle(&three_color_table());
        assert!(r.is_involutory_quandle());
        assert!(!r.associative.holds);
        let t = three_color_table();
        // A(BC) = A but (AB)C = C
        assert_eq!(t.product(0, t.product(1, 2)), 0);
        assert_eq!(t.product(t.product(0, 1), 2), 2);
    }

    #[test]
    fn trivial_quandle_passes() {
        let r = check_involutory_quandle(&QuandleTable::trivial(2));
        assert!(r.is_involutory_quandle());
    }

    #[test]
    fn failing_table_reports_triple() {
        let t = QuandleTable::new(vec![vec![1, 0], vec![0, 1]]).unwrap();
        let r = check_involutory_quandle(&t);
        assert!(!r.idempotent.holds);
        assert_eq!(r.idempotent.counterexample, Some([0, 0, 0]));
        assert!(matches!(
            count_colorings(&Diagram::unknot(), &t),
            Err(Error::InvalidQuandle(_))
        ));
    }

    #[test]
    fn table_text_roundtrip() {
        let t = three_color_table();
        assert_eq!(QuandleTable::parse(&t.render()).unwrap(), t);
        assert!(QuandleTable::parse("2 0 1 1").is_err());
    }

    #[test]
    fn catalog_counts() {
        let t = three_color_table();
        let cases = [
            ("unknot", 3),
            ("trefoil", 9),
            ("figure8", 3),
            ("hopf+", 3),
            ("whitehead", 3),
            ("borromean", 3),
            ("chain(3)", 3),
        ];
        for (name, n) in cases {
            assert_eq!(
                count_colorings(&standard(name).unwrap(), &t).unwrap(),
                n,
                "{name}"
            );
        }
    }

    #[test]
    fn witnesses() {
        let t = three_color_table();
        let tre = standard("trefoil").unwrap();
        let w = nontrivial_coloring_witness(&tre, &t).unwrap().unwrap();
        assert!(is_coloring(&tre, &t, &w));
        assert_eq!(w.distinct_colors(), 3);
        assert!(nontrivial_coloring_witness(&Diagram::unknot(), &t)
            .unwrap()
            .is_none());
        assert!(
            nontrivial_coloring_witness(&standard("borromean").unwrap(), &t)
                .unwrap()
                .is_none()
        );
    }
}
