//! Relabelling-independent diagram codes for deduplicating search states.

use std::collections::{BTreeMap, VecDeque};

use crate::diagram::{ArcLabel, Diagram};

/// A code equal for two diagrams exactly when they differ only by arc
/// labels and crossing order.
///
/// Each connected piece is relabelled by walking its components from every
/// possible starting arc (other components are entered where they are first
/// met) and the lexicographically smallest crossing list is kept. Piece codes
/// are sorted and followed by the number of loops.
pub fn canonical_code(d: &Diagram) -> Vec<u32> {
    let index = d
        .arc_index()
        .expect("diagram invariant: arcs are well formed");
    let crossings = d.crossings();
    let n = crossings.len();
    // Pieces by flood fill over arcs.
    let mut piece = vec![usize::MAX; n];
    let mut pieces = 0;
    for start in 0..n {
        if piece[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        piece[start] = pieces;
        while let Some(c) = stack.pop() {
            for a in crossings[c].slots {
                let e = index[&a];
                for o in [e.tail.0, e.head.0] {
                    if piece[o] == usize::MAX {
                        piece[o] = pieces;
                        stack.push(o);
                    }
                }
            }
        }
        pieces += 1;
    }
    let mut codes: Vec<Vec<u32>> = Vec::with_capacity(pieces);
    for p in 0..pieces {
        let members: Vec<usize> = (0..n).filter(|&c| piece[c] == p).collect();
        let starts: Vec<ArcLabel> = members
            .iter()
            .flat_map(|&c| {
                [
                    crossings[c].slots[0],
                    crossings[c].slots[crossings[c].over_in_slot()],
                ]
            })
            .collect();
        let mut best: Option<Vec<u32>> = None;
        for &s in &starts {
            let code = code_from(d, &index, &members, s);
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        }
        codes.push(best.unwrap_or_default());
    }
    codes.sort();
    let mut out = Vec::new();
    for c in codes {
        out.extend(c);
        out.push(u32::MAX);
    }
    out.push(d.loop_count() as u32);
    out
}

fn code_from(
    d: &Diagram,
    index: &BTreeMap<ArcLabel, crate::diagram::ArcEnds>,
    members: &[usize],
    start: ArcLabel,
) -> Vec<u32> {
    let crossings = d.crossings();
    let mut label: BTreeMap<ArcLabel, u32> = BTreeMap::new();
    let mut next = 1;
    let mut queue = VecDeque::from([start]);
    while let Some(s) = queue.pop_front() {
        if label.contains_key(&s) {
            continue;
        }
        let mut arc = s;
        loop {
            label.insert(arc, next);
            next += 1;
            let (c, hs) = index[&arc].head;
            let x = &crossings[c];
            let other = if hs == 0 {
                x.slots[x.over_in_slot()]
            } else {
                x.slots[0]
            };
            if !label.contains_key(&other) {
                queue.push_back(other);
            }
            arc = x.slots[(hs + 2) % 4];
            if arc == s {
                break;
            }
        }
    }
    let mut rows: Vec<[u32; 5]> = members
        .iter()
        .map(|&c| {
            let x = &crossings[c];
            let s = x.slots.map(|a| label[&a]);
            [s[0], s[1], s[2], s[3], u32::from(x.sign.value() > 0)]
        })
        .collect();
    rows.sort();
    rows.into_iter().flatten().collect()
}
