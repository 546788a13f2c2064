//! Standard diagrams, built from braid and plat closures.
//!
//! Crossings are laid out on a grid: each one joins the corners NW, SW, SE
//! and NE (counterclockwise), with one strand along NW-SE and the other
//! along NE-SW. Orientation is found by walking the strands, and the crossing
//! sign then follows from the corner geometry.

use std::collections::{BTreeMap, BTreeSet};

use super::{ArcLabel, Crossing, Diagram, Sign};
use crate::error::{Error, Result};

pub const CATALOG_NAMES: &[&str] = &[
    "unknot",
    "curl+",
    "curl-",
    "trefoil",
    "figure8",
    "hopf+",
    "hopf-",
    "whitehead",
    "borromean",
    "chain(n)",
    "twist(n)",
];

/// Corner order around a grid crossing, counterclockwise.
const NW: usize = 0;
const SW: usize = 1;
const SE: usize = 2;
const NE: usize = 3;

fn corner_vec(k: usize) -> (i64, i64) {
    match k {
        NW => (-1, 1),
        SW => (-1, -1),
        SE => (1, -1),
        _ => (1, 1),
    }
}

/// A crossing on the grid before orientation is known.
#[derive(Clone, Copy, Debug)]
pub(crate) struct CornerCrossing {
    pub corners: [ArcLabel; 4],
    /// `true` when the NW-SE strand is over.
    pub nw_se_over: bool,
}

/// Orients and assembles grid crossings into a normalized diagram.
///
/// `seeds` fix the direction of chosen components as (arc, crossing, corner
/// the arc enters at). Unseeded components enter their smallest arc at its
/// first occurrence. Returns the diagram and the relabelling applied.
pub(crate) fn assemble(
    grid: &[CornerCrossing],
    seeds: &[(ArcLabel, usize, usize)],
) -> Result<(Diagram, BTreeMap<ArcLabel, ArcLabel>)> {
    let mut occ: BTreeMap<ArcLabel, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, c) in grid.iter().enumerate() {
        for k in 0..4 {
            occ.entry(c.corners[k]).or_default().push((i, k));
        }
    }
    if let Some((&arc, v)) = occ.iter().find(|(_, v)| v.len() != 2) {
        return Err(Error::ArcDegree {
            arc,
            count: v.len(),
        });
    }
    // incoming[(crossing, corner)]
    let mut incoming: BTreeMap<(usize, usize), bool> = BTreeMap::new();
    let walk = |incoming: &mut BTreeMap<(usize, usize), bool>, start: (usize, usize)| {
        let mut at = start;
        loop {
            if incoming.contains_key(&at) {
                break;
            }
            incoming.insert(at, true);
            let out = (at.0, (at.1 + 2) % 4);
            incoming.insert(out, false);
            let arc = grid[out.0].corners[out.1];
            let next = occ[&arc].iter().copied().find(|&p| p != out).unwrap();
            at = next;
        }
    };
    for &(_, c, k) in seeds {
        walk(&mut incoming, (c, k));
    }
    for ports in occ.values() {
        if !incoming.contains_key(&ports[0]) {
            walk(&mut incoming, ports[1]);
        }
    }
    let crossings: Vec<Crossing> = grid
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let line = |a: usize, b: usize| {
                if incoming[&(i, a)] {
                    (a, b)
                } else {
                    (b, a)
                }
            };
            let l1 = line(NW, SE);
            let l2 = line(NE, SW);
            let (over, under) = if c.nw_se_over { (l1, l2) } else { (l2, l1) };
            let dir = |(a, b): (usize, usize)| {
                let (pa, pb) = (corner_vec(a), corner_vec(b));
                (pb.0 - pa.0, pb.1 - pa.1)
            };
            let (ux, uy) = dir(under);
            let rotated = (-uy, ux);
            let (ox, oy) = dir(over);
            let sign = if rotated.0 * ox + rotated.1 * oy > 0 {
                Sign::Positive
            } else {
                Sign::Negative
            };
            let arc = |k: usize| c.corners[k];
            Crossing::from_strands(
                (arc(under.0), arc(under.1)),
                (arc(over.0), arc(over.1)),
                sign,
            )
        })
        .collect();
    let raw = Diagram::from_parts_unchecked(crossings, vec![], true);
    let report = raw.validate();
    if !report.passed() {
        return Err(report.first_error());
    }
    let map = normalization_map(&raw);
    Ok((raw.relabeled(|a| map[&a]), map))
}

pub(crate) fn normalization_map(d: &Diagram) -> BTreeMap<ArcLabel, ArcLabel> {
    let mut map = BTreeMap::new();
    let mut next = 1;
    let loops: BTreeSet<ArcLabel> = d.loops().iter().copied().collect();
    let comps = d.components();
    for comp in comps.iter().filter(|c| !loops.contains(&c[0])) {
        for &a in comp {
            map.insert(a, next);
            next += 1;
        }
    }
    for comp in comps.iter().filter(|c| loops.contains(&c[0])) {
        map.insert(comp[0], next);
        next += 1;
    }
    map
}

/// Closure of a braid on `strands` strands. Generator `k` (1-based) with a
/// positive exponent crosses strand positions `k` and `k+1` with the
/// NW-SE strand over, which is a positive crossing when all strands run
/// downward.
pub fn braid_closure(strands: usize, word: &[i32]) -> Result<Diagram> {
    let mut next: ArcLabel = strands as ArcLabel + 1;
    let top: Vec<ArcLabel> = (1..=strands as ArcLabel).collect();
    let mut current = top.clone();
    let mut grid = Vec::new();
    for &g in word {
        let k = g.unsigned_abs() as usize;
        if g == 0 || k >= strands {
            return Err(Error::Parse(format!("braid generator {g} out of range")));
        }
        let (l, r) = (k - 1, k);
        let (sw, se) = (next, next + 1);
        next += 2;
        grid.push(CornerCrossing {
            corners: [current[l], sw, se, current[r]],
            nw_se_over: g > 0,
        });
        current[l] = sw;
        current[r] = se;
    }
    // Close: the bottom arc at each position is the top arc at that position.
    let rename: BTreeMap<ArcLabel, ArcLabel> = current
        .iter()
        .zip(&top)
        .filter(|(c, t)| c != t)
        .map(|(&c, &t)| (c, t))
        .collect();
    for c in &mut grid {
        for a in &mut c.corners {
            if let Some(&t) = rename.get(a) {
                *a = t;
            }
        }
    }
    let untouched = current.iter().zip(&top).filter(|(c, t)| c == t).count();
    // All strands run downward: each arc enters at a top corner.
    let mut seeds = Vec::new();
    for (i, c) in grid.iter().enumerate() {
        seeds.push((c.corners[NW], i, NW));
        seeds.push((c.corners[NE], i, NE));
    }
    let (d, _) = if grid.is_empty() {
        (
            Diagram::from_parts_unchecked(vec![], vec![], true),
            BTreeMap::new(),
        )
    } else {
        assemble(&grid, &seeds)?
    };
    let max = d.max_label();
    let loops = (1..=untouched as ArcLabel).map(|k| max + k).collect();
    Ok(Diagram::from_parts_unchecked(
        d.crossings().to_vec(),
        loops,
        true,
    ))
}

/// Plat closure of a vertical two-strand twist with `|n|` crossings: an
/// unknot carrying `n` half twists. Returns the diagram and the labels of
/// the top cap and bottom cup arcs.
pub(crate) fn vertical_twist(n: i32) -> Result<(Diagram, ArcLabel, ArcLabel)> {
    let count = n.unsigned_abs() as usize;
    if count == 0 {
        return Ok((Diagram::unknot(), 1, 1));
    }
    let cap: ArcLabel = 1;
    let cup: ArcLabel = 2;
    let mut next: ArcLabel = 3;
    let mut above = [cap, cap];
    let mut grid = Vec::new();
    for k in 0..count {
        let below = if k + 1 == count {
            [cup, cup]
        } else {
            let b = [next, next + 1];
            next += 2;
            b
        };
        grid.push(CornerCrossing {
            corners: [above[0], below[0], below[1], above[1]],
            nw_se_over: n > 0,
        });
        above = below;
    }
    // The cap runs left to right, entering the first crossing at NE.
    let (d, map) = assemble(&grid, &[(cap, 0, NE)])?;
    Ok((d, map[&cap], map[&cup]))
}

/// A parsed catalog key.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatalogEntry {
    Unknot,
    CurlPositive,
    CurlNegative,
    Trefoil,
    FigureEight,
    HopfPositive,
    HopfNegative,
    Whitehead,
    Borromean,
    Chain(usize),
    Twist(i32),
}

impl std::str::FromStr for CatalogEntry {
    type Err = Error;

    fn from_str(s: &str) -> Result<CatalogEntry> {
        let unknown = || Error::UnknownCatalog(s.to_string());
        let param = |prefix: &str| -> Option<&str> {
            let rest = s.strip_prefix(prefix)?;
            Some(
                rest.strip_prefix('(')
                    .and_then(|r| r.strip_suffix(')'))
                    .unwrap_or(rest),
            )
        };
        Ok(match s {
            "unknot" => CatalogEntry::Unknot,
            "curl+" => CatalogEntry::CurlPositive,
            "curl-" => CatalogEntry::CurlNegative,
            "trefoil" => CatalogEntry::Trefoil,
            "figure8" => CatalogEntry::FigureEight,
            "hopf+" | "hopf" => CatalogEntry::HopfPositive,
            "hopf-" => CatalogEntry::HopfNegative,
            "whitehead" => CatalogEntry::Whitehead,
            "borromean" => CatalogEntry::Borromean,
            _ => {
                if let Some(p) = param("chain") {
                    let n: usize = p.parse().map_err(|_| unknown())?;
                    if n == 0 {
                        return Err(unknown());
                    }
                    CatalogEntry::Chain(n)
                } else if let Some(p) = param("twist") {
                    CatalogEntry::Twist(p.parse().map_err(|_| unknown())?)
                } else {
                    return Err(unknown());
                }
            }
        })
    }
}

impl CatalogEntry {
    pub fn build(self) -> Diagram {
        let built = match self {
            CatalogEntry::Unknot => Ok(Diagram::unknot()),
            CatalogEntry::CurlPositive => braid_closure(2, &[1]),
            CatalogEntry::CurlNegative => braid_closure(2, &[-1]),
            CatalogEntry::Trefoil => braid_closure(2, &[1, 1, 1]),
            CatalogEntry::FigureEight => braid_closure(3, &[1, -2, 1, -2]),
            CatalogEntry::HopfPositive => braid_closure(2, &[1, 1]),
            CatalogEntry::HopfNegative => braid_closure(2, &[-1, -1]),
            CatalogEntry::Whitehead => braid_closure(3, &[1, -2, 1, -2, -2]),
            CatalogEntry::Borromean => braid_closure(3, &[-1, 2, -1, 2, -1, 2]),
            CatalogEntry::Chain(n) => {
                let word: Vec<i32> = (1..n as i32).flat_map(|k| [k, k]).collect();
                braid_closure(n, &word)
            }
            CatalogEntry::Twist(n) => vertical_twist(n).map(|(d, _, _)| d),
        };
        built.expect("catalog constructions are valid")
    }
}

/// Builds a named catalog diagram.
pub fn standard(name: &str) -> Result<Diagram> {
    Ok(name.parse::<CatalogEntry>()?.build())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;

    #[test]
    fn every_entry_validates_and_roundtrips() {
        for name in [
            "unknot",
            "curl+",
            "curl-",
            "trefoil",
            "figure8",
            "hopf+",
            "hopf-",
            "whitehead",
            "borromean",
            "chain(1)",
            "chain(2)",
            "chain(4)",
            "twist(3)",
            "twist(-2)",
            "twist(0)",
        ] {
            let d = standard(name).unwrap();
            assert!(d.validate().passed(), "{name}");
            assert_eq!(parse_pd(&d.render()).unwrap(), d, "{name}");
        }
    }

    #[test]
    fn shapes() {
        let counts = |n: &str| {
            let d = standard(n).unwrap();
            (d.crossing_count(), d.components().len())
        };
        assert_eq!(counts("unknot"), (0, 1));
        assert_eq!(counts("curl+"), (1, 1));
        assert_eq!(counts("trefoil"), (3, 1));
        assert_eq!(counts("figure8"), (4, 1));
        assert_eq!(counts("hopf+"), (2, 2));
        assert_eq!(counts("whitehead"), (5, 2));
        assert_eq!(counts("borromean"), (6, 3));
        assert_eq!(counts("chain(4)"), (6, 4));
        assert_eq!(counts("twist(3)"), (3, 1));
    }

    #[test]
    fn writhes() {
        let w = |n: &str| standard(n).unwrap().writhe().unwrap();
        assert_eq!(w("curl+"), 1);
        assert_eq!(w("curl-"), -1);
        assert_eq!(w("unknot"), 0);
        assert_eq!(w("trefoil"), 3);
        assert_eq!(w("figure8"), 0);
    }

    #[test]
    fn linking() {
        let hopf = standard("hopf+").unwrap().linking_matrix().unwrap();
        assert_eq!(hopf, vec![vec![0, 1], vec![1, 0]]);
        let hopf = standard("hopf-").unwrap().linking_matrix().unwrap();
        assert_eq!(hopf[0][1], -1);
        let b = standard("borromean").unwrap().linking_matrix().unwrap();
        for (i, row) in b.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if i != j {
                    assert_eq!(x, 0);
                }
            }
        }
        let w = standard("whitehead").unwrap().linking_matrix().unwrap();
        assert_eq!(w[0][1], 0);
        let two = braid_closure(2, &[]).unwrap();
        assert_eq!(two.linking_matrix().unwrap(), vec![vec![0, 0], vec![0, 0]]);
    }

    #[test]
    fn unknown_name() {
        assert_eq!(
            standard("granny"),
            Err(Error::UnknownCatalog("granny".into()))
        );
        assert!(standard("chain(0)").is_err());
    }
}
