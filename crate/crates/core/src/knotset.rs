//! Membership read off from diagrams: a component belongs to another when it
//! passes under it an odd number of times.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diagram::{ArcLabel, Diagram};
use crate::error::{Error, Result};

/// Whether self-membership is tracked (`Framed`) or normalized to zero
/// (`Full`), since a curl can add or remove it freely.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Framed,
    Full,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "framed" => Ok(Mode::Framed),
            "full" => Ok(Mode::Full),
            _ => Err(Error::Parse(format!(
                "unknown mode {s:?} (expected framed or full)"
            ))),
        }
    }
}

/// Keeps the elements occurring an odd number of times, sorted.
pub fn multiset_reduce<T: Ord + Clone>(items: &[T]) -> Vec<T> {
    let mut counts: BTreeMap<T, usize> = BTreeMap::new();
    for x in items {
        *counts.entry(x.clone()).or_default() += 1;
    }
    counts
        .into_iter()
        .filter(|(_, n)| n % 2 == 1)
        .map(|(x, _)| x)
        .collect()
}

/// Membership bits between entities: `member[x][y]` means `x` is in `y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipStructure {
    pub names: Vec<String>,
    pub member: Vec<Vec<bool>>,
    pub mode: Mode,
}

/// `a`, `b`, ..., `z`, `a1`, `b1`, ...
pub fn entity_name(i: usize) -> String {
    let letter = (b'a' + (i % 26) as u8) as char;
    if i < 26 {
        letter.to_string()
    } else {
        format!("{letter}{}", i / 26)
    }
}

impl MembershipStructure {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn members_of(&self, y: usize) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.member[x][y]).collect()
    }

    /// One set equation per entity, e.g. `b = {a, c}`.
    pub fn equations(&self) -> Vec<String> {
        (0..self.len())
            .map(|y| {
                let ms: Vec<&str> = self
                    .members_of(y)
                    .iter()
                    .map(|&x| self.names[x].as_str())
                    .collect();
                format!("{} = {{{}}}", self.names[y], ms.join(", "))
            })
            .collect()
    }
}

impl fmt::Display for MembershipStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in self.equations() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Every crossing as (incoming under-arc, incoming over-arc): the arc-level
/// relation before reduction to components.
pub fn arc_membership(d: &Diagram) -> Vec<(ArcLabel, ArcLabel)> {
    d.crossings()
        .iter()
        .map(|c| (c.under().0, c.over().0))
        .collect()
}

pub fn knotset_of(d: &Diagram, mode: Mode) -> MembershipStructure {
    let comp = d.component_of();
    let n = d.components().len();
    let mut member = vec![vec![false; n]; n];
    for (under, over) in arc_membership(d) {
        let (x, y) = (comp[&under], comp[&over]);
        member[x][y] ^= true;
    }
    if mode == Mode::Full {
        for (x, row) in member.iter_mut().enumerate() {
            row[x] = false;
        }
    }
    MembershipStructure {
        names: (0..n).map(entity_name).collect(),
        member,
        mode,
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Equality up to renaming entities.
pub fn knotset_equal(a: &MembershipStructure, b: &MembershipStructure) -> Result<bool> {
    if a.mode != b.mode {
        return Err(Error::ModeMismatch);
    }
    if a.len() != b.len() {
        return Ok(false);
    }
    let n = a.len();
    Ok(permutations(n)
        .iter()
        .any(|p| (0..n).all(|x| (0..n).all(|y| a.member[x][y] == b.member[p[x]][p[y]]))))
}

/// Crossing-free closed curves and which curve immediately encloses which.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NestingForest {
    /// Innermost enclosing curve of each curve, if any.
    pub parent: Vec<Option<usize>>,
}

impl NestingForest {
    pub fn new(parent: Vec<Option<usize>>) -> Result<NestingForest> {
        let n = parent.len();
        for start in 0..n {
            let mut at = start;
            for _ in 0..=n {
                match parent[at] {
                    Some(p) if p >= n => {
                        return Err(Error::Parse(format!(
                            "curve {start}: parent {p} out of range"
                        )))
                    }
                    Some(p) => at = p,
                    None => break,
                }
            }
            if parent[at].is_some() {
                return Err(Error::Parse(format!("curve {start} is nested in itself")));
            }
        }
        Ok(NestingForest { parent })
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Whether `outer` encloses `inner` (strictly).
    pub fn encloses(&self, outer: usize, inner: usize) -> bool {
        let mut at = self.parent[inner];
        while let Some(p) = at {
            if p == outer {
                return true;
            }
            at = self.parent[p];
        }
        false
    }

    /// Every curve strictly inside `k`.
    pub fn members(&self, k: usize) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.encloses(k, x)).collect()
    }

    pub fn to_structure(&self) -> MembershipStructure {
        let n = self.len();
        let member = (0..n)
            .map(|x| (0..n).map(|y| self.encloses(y, x)).collect())
            .collect();
        MembershipStructure {
            names: (0..n).map(|i| i.to_string()).collect(),
            member,
            mode: Mode::Full,
        }
    }
}

/// Curves `0..=n`, curve `k` enclosing curves `0..k`, so curve `k` has
/// exactly the members `{0, ..., k-1}`.
pub fn ordinal(n: usize) -> NestingForest {
    let parent = (0..=n)
        .map(|k| if k < n { Some(k + 1) } else { None })
        .collect();
    NestingForest { parent }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::standard;

    #[test]
    fn fermionic_reduction() {
        assert_eq!(multiset_reduce(&['a', 'a', 'a']), vec!['a']);
        assert!(multiset_reduce(&['a', 'a']).is_empty());
        assert!(multiset_reduce::<char>(&[]).is_empty());
    }

    #[test]
    fn curl_contains_itself_when_framed() {
        let d = standard("curl+").unwrap();
        let m = knotset_of(&d, Mode::Framed);
        assert!(m.member[0][0]);
        assert_eq!(m.equations(), vec!["a = {a}"]);
        assert!(!knotset_of(&d, Mode::Full).member[0][0]);
    }

    #[test]
    fn hopf_is_mutual() {
        for mode in [Mode::Framed, Mode::Full] {
            let m = knotset_of(&standard("hopf+").unwrap(), mode);
            assert_eq!(m.equations(), vec!["a = {b}", "b = {a}"]);
        }
    }

    #[test]
    fn chain_of_four() {
        let m = knotset_of(&standard("chain(4)").unwrap(), Mode::Full);
        assert_eq!(
            m.equations(),
            vec!["a = {b}", "b = {a, c}", "c = {b, d}", "d = {c}"]
        );
    }

    #[test]
    fn equality_up_to_renaming() {
        let t = knotset_of(&standard("trefoil").unwrap(), Mode::Full);
        let u = knotset_of(&Diagram::unknot(), Mode::Full);
        assert!(knotset_equal(&t, &u).unwrap());
        let f = knotset_of(&standard("trefoil").unwrap(), Mode::Framed);
        assert_eq!(knotset_equal(&t, &f), Err(Error::ModeMismatch));
    }

    #[test]
    fn ordinals() {
        let o = ordinal(3);
        assert!(o.members(0).is_empty());
        assert_eq!(o.members(1), vec![0]);
        assert_eq!(o.members(3), vec![0, 1, 2]);
        assert!(NestingForest::new(vec![Some(1), Some(0)]).is_err());
    }
}
