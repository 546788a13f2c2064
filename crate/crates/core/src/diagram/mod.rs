//! Link diagrams as decorated 4-valent plane graphs.
//!
//! A [`Diagram`] is stored as a planar-diagram (PD) code: every crossing
//! lists its four incident arcs counterclockwise, starting at the incoming
//! under-strand. The over-strand direction is kept explicitly as the
//! crossing [`Sign`]: a positive crossing has its over-strand entering at
//! slot 1 and leaving at slot 3, which is the case exactly when rotating the
//! under-direction a quarter turn counterclockwise gives the over-direction.
//!
//! Crossing-free closed curves are kept as labelled loops, so every
//! component of a diagram owns at least one arc label. Moves in
//! [`crate::rewrite`] never discard the smallest label of a component, which
//! keeps component order stable across rewriting.

mod catalog;
mod planar;
mod recombination;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use catalog::{braid_closure, standard, CatalogEntry, CATALOG_NAMES};
pub use planar::{validate_raw, Dart, Face, FaceList, Side, ValidityReport};
pub use recombination::{recombination_step, recombination_template, RecombinationSite};

pub type ArcLabel = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn from_value(v: i64) -> Sign {
        if v >= 0 {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

/// One crossing of a diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Crossing {
    /// Arc labels counterclockwise from the incoming under-strand.
    pub slots: [ArcLabel; 4],
    pub sign: Sign,
}

impl Crossing {
    /// Builds a crossing from the two strands passing through it.
    pub fn from_strands(
        under: (ArcLabel, ArcLabel),
        over: (ArcLabel, ArcLabel),
        sign: Sign,
    ) -> Crossing {
        let (ui, uo) = under;
        let (oi, oo) = over;
        let slots = match sign {
            Sign::Positive => [ui, oi, uo, oo],
            Sign::Negative => [ui, oo, uo, oi],
        };
        Crossing { slots, sign }
    }

    pub fn over_in_slot(&self) -> usize {
        match self.sign {
            Sign::Positive => 1,
            Sign::Negative => 3,
        }
    }

    pub fn over_out_slot(&self) -> usize {
        (self.over_in_slot() + 2) % 4
    }

    /// Whether the arc at `slot` enters the crossing.
    pub fn is_incoming(&self, slot: usize) -> bool {
        slot == 0 || slot == self.over_in_slot()
    }

    pub fn is_over(slot: usize) -> bool {
        slot % 2 == 1
    }

    pub fn under(&self) -> (ArcLabel, ArcLabel) {
        (self.slots[0], self.slots[2])
    }

    pub fn over(&self) -> (ArcLabel, ArcLabel) {
        (
            self.slots[self.over_in_slot()],
            self.slots[self.over_out_slot()],
        )
    }

    /// The same crossing with the over- and under-strands exchanged.
    pub fn mirrored(&self) -> Crossing {
        Crossing::from_strands(self.over(), self.under(), self.sign.flip())
    }
}

/// A position on a crossing: crossing index and slot.
pub type Port = (usize, usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct ArcEnds {
    /// Port where the arc leaves a crossing.
    pub tail: Port,
    /// Port where the arc enters a crossing.
    pub head: Port,
}

/// A link diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    loops: Vec<ArcLabel>,
    oriented: bool,
}

impl Diagram {
    /// Builds a diagram and checks it; errors if the code is not a valid
    /// sphere diagram.
    pub fn new(crossings: Vec<Crossing>, loops: Vec<ArcLabel>, oriented: bool) -> Result<Diagram> {
        let d = Diagram {
            crossings,
            loops,
            oriented,
        };
        d.arc_index()?;
        let report = d.validate();
        if !report.passed() {
            return Err(report.first_error());
        }
        Ok(d)
    }

    pub(crate) fn from_parts_unchecked(
        crossings: Vec<Crossing>,
        loops: Vec<ArcLabel>,
        oriented: bool,
    ) -> Diagram {
        Diagram {
            crossings,
            loops,
            oriented,
        }
    }

    pub fn unknot() -> Diagram {
        Diagram {
            crossings: vec![],
            loops: vec![1],
            oriented: true,
        }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn loops(&self) -> &[ArcLabel] {
        &self.loops
    }

    pub fn loop_count(&self) -> usize {
        self.loops.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_oriented(&self) -> bool {
        self.oriented
    }

    /// Every arc label, loops included, in ascending order.
    pub fn arc_labels(&self) -> Vec<ArcLabel> {
        let mut set: BTreeSet<ArcLabel> = self.crossings.iter().flat_map(|c| c.slots).collect();
        set.extend(self.loops.iter().copied());
        set.into_iter().collect()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_labels().len()
    }

    pub(crate) fn max_label(&self) -> ArcLabel {
        self.crossings
            .iter()
            .flat_map(|c| c.slots)
            .chain(self.loops.iter().copied())
            .max()
            .unwrap_or(0)
    }

    /// Where each arc starts and ends. Errors on arcs that do not occur
    /// exactly once as an outgoing and once as an incoming slot.
    pub(crate) fn arc_index(&self) -> Result<BTreeMap<ArcLabel, ArcEnds>> {
        arc_index_of(&self.crossings)
    }

    /// Components as cyclic arc sequences, each starting at its smallest
    /// label; components are sorted by that label.
    pub fn components(&self) -> Vec<Vec<ArcLabel>> {
        let index = self
            .arc_index()
            .expect("diagram invariant: arcs are well formed");
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in index.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = vec![];
            let mut arc = start;
            loop {
                seen.insert(arc);
                comp.push(arc);
                let (c, s) = index[&arc].head;
                arc = self.crossings[c].slots[(s + 2) % 4];
                if arc == start {
                    break;
                }
            }
            out.push(comp);
        }
        for &l in &self.loops {
            out.push(vec![l]);
        }
        out.sort_by_key(|c| c[0]);
        out
    }

    /// Component index of every arc label.
    pub fn component_of(&self) -> BTreeMap<ArcLabel, usize> {
        let mut map = BTreeMap::new();
        for (i, comp) in self.components().iter().enumerate() {
            for &a in comp {
                map.insert(a, i);
            }
        }
        map
    }

    /// Sum of crossing signs.
    pub fn writhe(&self) -> Result<i64> {
        if !self.oriented {
            return Err(Error::Unoriented);
        }
        Ok(self.crossings.iter().map(|c| c.sign.value()).sum())
    }

    /// Linking matrix over components: off-diagonal entries are half the
    /// signed count of crossings between two components, the diagonal holds
    /// each component's self-writhe.
    pub fn linking_matrix(&self) -> Result<Vec<Vec<i64>>> {
        if !self.oriented {
            return Err(Error::Unoriented);
        }
        let comp = self.component_of();
        let n = self.components().len();
        let mut doubled = vec![vec![0i64; n]; n];
        for c in &self.crossings {
            let a = comp[&c.slots[0]];
            let b = comp[&c.slots[c.over_in_slot()]];
            if a == b {
                doubled[a][a] += 2 * c.sign.value();
            } else {
                doubled[a][b] += c.sign.value();
                doubled[b][a] += c.sign.value();
            }
        }
        Ok(doubled
            .into_iter()
            .map(|row| row.into_iter().map(|v| v / 2).collect())
            .collect())
    }

    /// Every crossing switched.
    pub fn mirror(&self) -> Diagram {
        Diagram {
            crossings: self.crossings.iter().map(Crossing::mirrored).collect(),
            loops: self.loops.clone(),
            oriented: self.oriented,
        }
    }

    /// Reverses the orientation of one component (by index in
    /// [`Diagram::components`]).
    pub fn reverse_component(&self, component: usize) -> Diagram {
        let comps = self.components();
        let arcs: BTreeSet<ArcLabel> = comps[component].iter().copied().collect();
        let crossings = self
            .crossings
            .iter()
            .map(|c| {
                let (ui, uo) = c.under();
                let (oi, oo) = c.over();
                let under_rev = arcs.contains(&ui);
                let over_rev = arcs.contains(&oi);
                let under = if under_rev { (uo, ui) } else { (ui, uo) };
                let over = if over_rev { (oo, oi) } else { (oi, oo) };
                // Reversing exactly one strand flips the sign.
                let sign = if under_rev != over_rev {
                    c.sign.flip()
                } else {
                    c.sign
                };
                Crossing::from_strands(under, over, sign)
            })
            .collect();
        Diagram {
            crossings,
            loops: self.loops.clone(),
            oriented: self.oriented,
        }
    }

    /// Reverses every component.
    pub fn reverse(&self) -> Diagram {
        let mut d = self.clone();
        for i in 0..self.components().len() {
            d = d.reverse_component(i);
        }
        d
    }

    /// Relabels arcs consecutively along components (1, 2, ...), crossing
    /// components first and loops last, keeping crossing order.
    pub fn normalized(&self) -> Diagram {
        let map = catalog::normalization_map(self);
        self.relabeled(|a| map[&a])
    }

    pub(crate) fn relabeled(&self, f: impl Fn(ArcLabel) -> ArcLabel) -> Diagram {
        Diagram {
            crossings: self
                .crossings
                .iter()
                .map(|c| Crossing {
                    slots: c.slots.map(&f),
                    sign: c.sign,
                })
                .collect(),
            loops: self.loops.iter().map(|&l| f(l)).collect(),
            oriented: self.oriented,
        }
    }

    /// Renders the PD text form: `X[a,b,c,d]` tokens followed by one `O`
    /// per crossing-free loop.
    pub fn render(&self) -> String {
        let mut parts: Vec<String> = self
            .crossings
            .iter()
            .map(|c| {
                format!(
                    "X[{},{},{},{}]",
                    c.slots[0], c.slots[1], c.slots[2], c.slots[3]
                )
            })
            .collect();
        parts.extend(self.loops.iter().map(|_| "O".to_string()));
        parts.join(" ")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let comps = self.components();
        serde_json::json!({
            "crossings": self.crossings.iter().map(|c| serde_json::json!({
                "slots": c.slots,
                "sign": c.sign.value(),
            })).collect::<Vec<_>>(),
            "loops": self.loops.len(),
            "components": comps,
            "oriented": self.oriented,
        })
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub(crate) fn arc_index_of(crossings: &[Crossing]) -> Result<BTreeMap<ArcLabel, ArcEnds>> {
    // (label, is head, port), sorted so each arc's ends are adjacent.
    let mut ends: Vec<(ArcLabel, bool, Port)> = Vec::with_capacity(4 * crossings.len());
    for (i, c) in crossings.iter().enumerate() {
        for s in 0..4 {
            ends.push((c.slots[s], c.is_incoming(s), (i, s)));
        }
    }
    ends.sort_unstable();
    let groups: Vec<&[(ArcLabel, bool, Port)]> = ends.chunk_by(|a, b| a.0 == b.0).collect();
    if let Some(g) = groups.iter().find(|g| g.len() != 2) {
        return Err(Error::ArcDegree {
            arc: g[0].0,
            count: g.len(),
        });
    }
    let mut out = BTreeMap::new();
    for g in groups {
        let (a, b) = (g[0], g[1]);
        if a.1 || !b.1 {
            return Err(Error::Untraceable(format!(
                "arc {} is not traversed consistently",
                a.0
            )));
        }
        out.insert(
            a.0,
            ArcEnds {
                tail: a.2,
                head: b.2,
            },
        );
    }
    Ok(out)
}

/// Parses PD text into a validated diagram.
///
/// Over-strand directions are inferred by propagating the under-strand
/// orientation along components. Components that never pass under anything
/// fall back to the labelling convention (consecutive labels increase along
/// the strand) and the diagram is then marked unoriented.
pub fn parse_pd(text: &str) -> Result<Diagram> {
    let mut raw: Vec<[ArcLabel; 4]> = Vec::new();
    let mut loops = 0usize;
    for token in text.split_whitespace() {
        if token == "O" {
            loops += 1;
            continue;
        }
        let inner = token
            .strip_prefix("X[")
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::MalformedToken(token.to_string()))?;
        let nums: Vec<&str> = inner.split(',').collect();
        if nums.len() != 4 {
            return Err(Error::MalformedToken(token.to_string()));
        }
        let mut slots = [0; 4];
        for (k, n) in nums.iter().enumerate() {
            slots[k] = n
                .trim()
                .parse::<ArcLabel>()
                .ok()
                .filter(|&v| v > 0)
                .ok_or_else(|| Error::MalformedToken(token.to_string()))?;
        }
        raw.push(slots);
    }

    let mut counts: BTreeMap<ArcLabel, usize> = BTreeMap::new();
    for s in &raw {
        for &a in s {
            *counts.entry(a).or_default() += 1;
        }
    }
    if let Some((&arc, &count)) = counts.iter().find(|(_, &c)| c != 2) {
        return Err(Error::ArcDegree { arc, count });
    }

    let (signs, oriented) = infer_over_directions(&raw)?;
    let crossings: Vec<Crossing> = raw
        .iter()
        .zip(signs)
        .map(|(&slots, sign)| Crossing { slots, sign })
        .collect();
    let max = counts.keys().next_back().copied().unwrap_or(0);
    let loops = (1..=loops as ArcLabel).map(|k| max + k).collect();
    Diagram::new(crossings, loops, oriented)
}

/// Solves for the over-strand direction of each crossing.
fn infer_over_directions(raw: &[[ArcLabel; 4]]) -> Result<(Vec<Sign>, bool)> {
    let mut occ: BTreeMap<ArcLabel, Vec<Port>> = BTreeMap::new();
    for (i, s) in raw.iter().enumerate() {
        for (k, &a) in s.iter().enumerate() {
            occ.entry(a).or_default().push((i, k));
        }
    }
    // incoming[(c, slot)] for odd slots is decided by the crossing sign.
    let mut sign: Vec<Option<Sign>> = vec![None; raw.len()];
    let incoming = |sign: &[Option<Sign>], (c, s): Port| -> Option<bool> {
        match s {
            0 => Some(true),
            2 => Some(false),
            1 => sign[c].map(|g| g == Sign::Positive),
            _ => sign[c].map(|g| g == Sign::Negative),
        }
    };
    let mut oriented = true;
    loop {
        // Propagate until nothing changes.
        let mut changed = true;
        while changed {
            changed = false;
            for ports in occ.values() {
                let (p, q) = (ports[0], ports[1]);
                match (incoming(&sign, p), incoming(&sign, q)) {
                    (Some(a), Some(b)) => {
                        if a == b {
                            return Err(Error::Untraceable(format!(
                                "arc {} is traversed inconsistently",
                                raw[p.0][p.1]
                            )));
                        }
                    }
                    (Some(a), None) => {
                        force(&mut sign, q, !a);
                        changed = true;
                    }
                    (None, Some(b)) => {
                        force(&mut sign, p, !b);
                        changed = true;
                    }
                    (None, None) => {}
                }
            }
        }
        let Some(c) = sign.iter().position(Option::is_none) else {
            break;
        };
        // Over-only strand: follow the labelling convention.
        oriented = false;
        let (j, l) = (raw[c][1], raw[c][3]);
        let forward = l == j + 1 || j > l + 1;
        sign[c] = Some(if forward {
            Sign::Positive
        } else {
            Sign::Negative
        });
    }
    Ok((sign.into_iter().map(Option::unwrap).collect(), oriented))
}

fn force(sign: &mut [Option<Sign>], (c, s): Port, incoming: bool) {
    debug_assert!(s % 2 == 1);
    let positive = (s == 1) == incoming;
    sign[c] = Some(if positive {
        Sign::Positive
    } else {
        Sign::Negative
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";

    #[test]
    fn parses_trefoil() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.arc_count(), 6);
        assert_eq!(d.components().len(), 1);
        assert!(d.is_oriented());
        assert_eq!(d.writhe().unwrap(), 3);
    }

    #[test]
    fn parses_loop() {
        let d = parse_pd("O").unwrap();
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.components().len(), 1);
        assert_eq!(d.writhe().unwrap(), 0);
    }

    #[test]
    fn rejects_bad_arity() {
        assert_eq!(
            parse_pd("X[1,2,3]"),
            Err(Error::MalformedToken("X[1,2,3]".into()))
        );
        assert!(matches!(
            parse_pd("X[1,2,3,x]"),
            Err(Error::MalformedToken(_))
        ));
        assert!(matches!(parse_pd("Y"), Err(Error::MalformedToken(_))));
    }

    #[test]
    fn rejects_open_strand() {
        assert!(matches!(
            parse_pd("X[1,1,2,3]"),
            Err(Error::ArcDegree { .. })
        ));
    }

    #[test]
    fn rejects_inconsistent_orientation() {
        // Arc 1 enters the under-strand twice.
        assert!(matches!(
            parse_pd("X[1,2,3,4] X[1,4,3,2]"),
            Err(Error::Untraceable(_))
        ));
    }

    #[test]
    fn render_parse_roundtrip() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(d.render(), TREFOIL);
        assert_eq!(parse_pd(&d.render()).unwrap(), d);
    }

    #[test]
    fn mirror_negates_writhe() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(d.mirror().writhe().unwrap(), -3);
        assert!(d.mirror().validate().passed());
    }

    #[test]
    fn reverse_keeps_knot_writhe() {
        let d = parse_pd(TREFOIL).unwrap();
        let r = d.reverse();
        assert!(r.validate().passed());
        assert_eq!(r.writhe().unwrap(), 3);
    }

    #[test]
    fn from_strands_matches_slot_convention() {
        let c = Crossing::from_strands((1, 2), (3, 4), Sign::Positive);
        assert_eq!(c.slots, [1, 3, 2, 4]);
        assert_eq!(c.over(), (3, 4));
        let c = Crossing::from_strands((1, 2), (3, 4), Sign::Negative);
        assert_eq!(c.slots, [1, 4, 2, 3]);
        assert_eq!(c.over(), (3, 4));
    }
}
