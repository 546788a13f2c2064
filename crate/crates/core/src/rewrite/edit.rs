//! Crossing removal with arc merging.

use std::collections::{BTreeMap, BTreeSet};

use crate::diagram::{ArcLabel, Crossing, Diagram};

/// Union-find over arc labels; every class is represented by its smallest
/// label.
#[derive(Default)]
pub(crate) struct Merge {
    parent: BTreeMap<ArcLabel, ArcLabel>,
}

impl Merge {
    pub fn find(&mut self, a: ArcLabel) -> ArcLabel {
        let p = *self.parent.get(&a).unwrap_or(&a);
        if p == a {
            return a;
        }
        let r = self.find(p);
        self.parent.insert(a, r);
        r
    }

    pub fn union(&mut self, a: ArcLabel, b: ArcLabel) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent.insert(hi, lo);
        }
    }
}

/// Removes crossings, joining the strands through them. Classes of merged
/// arcs that no longer meet any crossing become loops.
pub(crate) fn remove_crossings(d: &Diagram, remove: &[usize]) -> (Vec<Crossing>, Vec<ArcLabel>) {
    let gone: BTreeSet<usize> = remove.iter().copied().collect();
    let mut merge = Merge::default();
    let mut touched = BTreeSet::new();
    for &x in &gone {
        let c = d.crossings()[x];
        let (ui, uo) = c.under();
        let (oi, oo) = c.over();
        merge.union(ui, uo);
        merge.union(oi, oo);
        touched.extend(c.slots);
    }
    let crossings: Vec<Crossing> = d
        .crossings()
        .iter()
        .enumerate()
        .filter(|(i, _)| !gone.contains(i))
        .map(|(_, c)| Crossing {
            slots: c.slots.map(|a| merge.find(a)),
            sign: c.sign,
        })
        .collect();
    let present: BTreeSet<ArcLabel> = crossings.iter().flat_map(|c| c.slots).collect();
    let mut loops = d.loops().to_vec();
    let new_loops: BTreeSet<ArcLabel> = touched
        .iter()
        .map(|&a| merge.find(a))
        .filter(|r| !present.contains(r))
        .collect();
    loops.extend(new_loops);
    loops.sort();
    (crossings, loops)
}
