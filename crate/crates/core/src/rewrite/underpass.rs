//! Rerouting a strand that runs entirely underneath the rest of a diagram.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::edit::Merge;
use crate::diagram::{ArcLabel, Crossing, Diagram, Port, Sign};
use crate::error::{Error, Result};

/// A stretch of strand starting with arc `start` and passing under the next
/// `length` crossings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Underpass {
    pub start: ArcLabel,
    pub length: usize,
}

struct Run {
    arcs: Vec<ArcLabel>,
    crossings: Vec<usize>,
    from: Port,
    to: Port,
}

fn resolve(d: &Diagram, u: &Underpass) -> Result<Run> {
    let index = d.arc_index()?;
    let bad = |why: &str| Error::InvalidUnderpass(format!("arc {}: {why}", u.start));
    let first = index
        .get(&u.start)
        .ok_or_else(|| bad("not an arc through a crossing"))?;
    let mut arcs = vec![u.start];
    let mut crossings = Vec::new();
    for _ in 0..u.length {
        let (c, s) = index[arcs.last().unwrap()].head;
        if s != 0 {
            return Err(bad("strand passes over a crossing of the run"));
        }
        crossings.push(c);
        arcs.push(d.crossings()[c].slots[2]);
    }
    let from = first.tail;
    let to = index[arcs.last().unwrap()].head;
    let distinct: BTreeSet<usize> = crossings.iter().copied().collect();
    if distinct.len() != crossings.len() || distinct.contains(&from.0) || distinct.contains(&to.0) {
        return Err(bad("run meets one of its crossings twice"));
    }
    Ok(Run {
        arcs,
        crossings,
        from,
        to,
    })
}

/// Every maximal run of consecutive undercrossings that starts and ends at
/// overcrossings outside the run.
pub fn underpasses(d: &Diagram) -> Vec<Underpass> {
    let index = d
        .arc_index()
        .expect("diagram invariant: arcs are well formed");
    let mut out = Vec::new();
    for (&a, e) in &index {
        if e.tail.1 % 2 == 1 && e.head.1 == 0 {
            let mut length = 0;
            let mut arc = a;
            while index[&arc].head.1 == 0 {
                length += 1;
                let (c, _) = index[&arc].head;
                arc = d.crossings()[c].slots[2];
                if arc == a {
                    break;
                }
            }
            let u = Underpass { start: a, length };
            if resolve(d, &u).is_ok() {
                out.push(u);
            }
        }
    }
    out
}

/// Deletes the run, then redraws the strand between the same endpoints
/// along a shortest path through the faces of what remains (ties to the
/// smallest face index), passing under every arc it meets.
pub fn reroute_underpass(d: &Diagram, u: &Underpass) -> Result<Diagram> {
    let run = resolve(d, u)?;
    let gone: BTreeSet<usize> = run.crossings.iter().copied().collect();
    let strand: BTreeSet<ArcLabel> = run.arcs.iter().copied().collect();
    let mut merge = Merge::default();
    let mut touched = BTreeSet::new();
    for &x in &gone {
        let c = d.crossings()[x];
        let (oi, oo) = c.over();
        merge.union(oi, oo);
        touched.extend([oi, oo]);
    }
    let mut new_index = BTreeMap::new();
    let mut kept: Vec<Crossing> = Vec::new();
    for (i, c) in d.crossings().iter().enumerate() {
        if !gone.contains(&i) {
            new_index.insert(i, kept.len());
            kept.push(Crossing {
                slots: c.slots.map(|a| merge.find(a)),
                sign: c.sign,
            });
        }
    }
    let p0 = (new_index[&run.from.0], run.from.1);
    let p1 = (new_index[&run.to.0], run.to.1);
    let missing = |p: Port| p == p0 || p == p1;

    // Ports of every remaining arc.
    let mut ends: BTreeMap<ArcLabel, (Option<Port>, Option<Port>)> = BTreeMap::new();
    for (i, c) in kept.iter().enumerate() {
        for s in 0..4 {
            if missing((i, s)) {
                continue;
            }
            let e = ends.entry(c.slots[s]).or_default();
            if c.is_incoming(s) {
                e.1 = Some((i, s));
            } else {
                e.0 = Some((i, s));
            }
        }
    }
    let mut tails = BTreeMap::new();
    let mut heads = BTreeMap::new();
    for (&a, &(t, h)) in &ends {
        match (t, h) {
            (Some(t), Some(h)) => {
                tails.insert(a, t);
                heads.insert(a, h);
            }
            _ => {
                return Err(Error::Internal(format!(
                    "arc {a} lost an end during reroute"
                )))
            }
        }
    }
    let twin = |p: Port| {
        let a = kept[p.0].slots[p.1];
        if tails[&a] == p {
            heads[&a]
        } else {
            tails[&a]
        }
    };

    // Faces of the remaining diagram, noting which face each gap opens into.
    let mut face_of: BTreeMap<Port, usize> = BTreeMap::new();
    let mut gap_face: BTreeMap<Port, usize> = BTreeMap::new();
    let mut face_count = 0;
    for c in 0..kept.len() {
        for s in 0..4 {
            if missing((c, s)) || face_of.contains_key(&(c, s)) {
                continue;
            }
            let mut h = (c, s);
            while !face_of.contains_key(&h) {
                face_of.insert(h, face_count);
                let t = twin(h);
                let mut slot = (t.1 + 3) % 4;
                while missing((t.0, slot)) {
                    gap_face.insert((t.0, slot), face_count);
                    slot = (slot + 3) % 4;
                }
                h = (t.0, slot);
            }
            face_count += 1;
        }
    }
    let (f0, f1) = match (gap_face.get(&p0), gap_face.get(&p1)) {
        (Some(&a), Some(&b)) => (a, b),
        _ => return Err(Error::Internal("strand endpoints lost their faces".into())),
    };

    // Dual graph: crossing arc `a` from its left face to its right face or back.
    let mut adj: Vec<Vec<(usize, ArcLabel, bool)>> = vec![Vec::new(); face_count];
    for (&a, &t) in &tails {
        let left = face_of[&t];
        let right = face_of[&heads[&a]];
        if left != right {
            adj[left].push((right, a, true));
            adj[right].push((left, a, false));
        }
    }
    for list in &mut adj {
        list.sort();
    }
    let mut parent: Vec<Option<(usize, ArcLabel, bool)>> = vec![None; face_count];
    let mut seen = vec![false; face_count];
    seen[f0] = true;
    let mut queue = VecDeque::from([f0]);
    while let Some(f) = queue.pop_front() {
        if f == f1 {
            break;
        }
        for &(g, a, from_left) in &adj[f] {
            if !seen[g] {
                seen[g] = true;
                parent[g] = Some((f, a, from_left));
                queue.push_back(g);
            }
        }
    }
    if !seen[f1] {
        return Err(Error::InvalidUnderpass(format!(
            "arc {}: removing the run separates its endpoints",
            u.start
        )));
    }
    let mut path = Vec::new();
    let mut f = f1;
    while let Some((g, a, from_left)) = parent[f] {
        path.push((a, from_left));
        f = g;
    }
    path.reverse();

    let mut fresh = d.max_label();
    let mut next_label = || {
        fresh += 1;
        fresh
    };
    let mut current = *strand.iter().next().unwrap();
    kept[p0.0].slots[p0.1] = current;
    let mut added = Vec::new();
    for (a, from_left) in path {
        let a2 = next_label();
        let h = heads[&a];
        kept[h.0].slots[h.1] = a2;
        let out = next_label();
        let sign = if from_left {
            Sign::Positive
        } else {
            Sign::Negative
        };
        added.push(Crossing::from_strands((current, out), (a, a2), sign));
        current = out;
    }
    kept[p1.0].slots[p1.1] = current;
    kept.extend(added);

    let present: BTreeSet<ArcLabel> = kept.iter().flat_map(|c| c.slots).collect();
    let mut loops = d.loops().to_vec();
    let new_loops: BTreeSet<ArcLabel> = touched
        .iter()
        .map(|&a| merge.find(a))
        .filter(|r| !present.contains(r))
        .collect();
    loops.extend(new_loops);
    loops.sort();
    Diagram::new(kept, loops, d.is_oriented())
        .map_err(|e| Error::Internal(format!("reroute produced an invalid diagram: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::standard;
    use crate::rewrite::canonical_code;

    #[test]
    fn zero_length_reroute_keeps_diagram() {
        let d = standard("trefoil").unwrap();
        for a in d.arc_labels() {
            let out = reroute_underpass(
                &d,
                &Underpass {
                    start: a,
                    length: 0,
                },
            )
            .unwrap();
            assert_eq!(canonical_code(&out), canonical_code(&d), "arc {a}");
        }
    }

    #[test]
    fn enumerated_underpasses_reroute() {
        for name in ["trefoil", "figure8", "whitehead", "borromean", "hopf+"] {
            let d = standard(name).unwrap();
            for u in underpasses(&d) {
                let out = reroute_underpass(&d, &u).unwrap();
                assert!(out.crossing_count() <= d.crossing_count(), "{name} {u:?}");
            }
        }
    }

    #[test]
    fn rejects_over_run() {
        let d = standard("trefoil").unwrap();
        let index = d.arc_index().unwrap();
        let (&a, _) = index.iter().find(|(_, e)| e.head.1 != 0).unwrap();
        assert!(matches!(
            reroute_underpass(
                &d,
                &Underpass {
                    start: a,
                    length: 1
                }
            ),
            Err(Error::InvalidUnderpass(_))
        ));
    }
}
