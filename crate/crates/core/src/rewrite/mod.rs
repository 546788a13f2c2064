//! Reidemeister moves, random scrambling, search-based simplification and
//! the underpass reroute.
//!
//! Supported move patterns, all stated in terms of the faces of a diagram:
//!
//! * `R1-` removes the crossing at any monogon face.
//! * `R1+` adds a curl on either side of any arc (or loop), with the curl's
//!   first pass over or under. Mirror images and both rotations are covered
//!   by the four choices.
//! * `R2-` removes both crossings of a bigon face when one side arc is over
//!   at both of its ends.
//! * `R2+` pushes one arc over another across any face the two share, with
//!   either arc on top.
//! * `R3` slides a strand across the opposite crossing of any triangle face
//!   whose crossings are not cyclically over/under. It is its own inverse.

mod canon;
mod edit;
mod search;
mod underpass;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::{ArcLabel, Crossing, Dart, Diagram, FaceList, Side, Sign};
use crate::error::{Error, Result};

pub use canon::canonical_code;
pub use search::{
    scramble, scramble_traced, simplify, simplify_traced, SimplifyConfig, SimplifyOutcome,
};
pub use underpass::{reroute_underpass, underpasses, Underpass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveKind {
    #[serde(rename = "R1+")]
    R1Plus,
    #[serde(rename = "R1-")]
    R1Minus,
    #[serde(rename = "R2+")]
    R2Plus,
    #[serde(rename = "R2-")]
    R2Minus,
    #[serde(rename = "R3")]
    R3,
}

impl MoveKind {
    /// Change in crossing count.
    pub fn crossing_delta(self) -> i64 {
        match self {
            MoveKind::R1Plus => 1,
            MoveKind::R1Minus => -1,
            MoveKind::R2Plus => 2,
            MoveKind::R2Minus => -2,
            MoveKind::R3 => 0,
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MoveKind::R1Plus => "R1+",
            MoveKind::R1Minus => "R1-",
            MoveKind::R2Plus => "R2+",
            MoveKind::R2Minus => "R2-",
            MoveKind::R3 => "R3",
        })
    }
}

/// A move together with where it applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum MoveInstance {
    /// Curl on the given side of an arc.
    #[serde(rename = "R1+")]
    R1Plus { dart: Dart, first_under: bool },
    /// Remove the crossing closing the monogon bounded by `arc`.
    #[serde(rename = "R1-")]
    R1Minus { arc: ArcLabel },
    /// Push `first` across the face it shares with `second`. When both are
    /// the same dart the arc is folded over itself inside that face.
    #[serde(rename = "R2+")]
    R2Plus {
        first: Dart,
        second: Dart,
        first_over: bool,
    },
    /// Remove the bigon bounded by `over` and `under`.
    #[serde(rename = "R2-")]
    R2Minus { over: ArcLabel, under: ArcLabel },
    /// Triangle bounded by three arcs, in ascending order.
    #[serde(rename = "R3")]
    R3 { arcs: [ArcLabel; 3] },
}

impl MoveInstance {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveInstance::R1Plus { .. } => MoveKind::R1Plus,
            MoveInstance::R1Minus { .. } => MoveKind::R1Minus,
            MoveInstance::R2Plus { .. } => MoveKind::R2Plus,
            MoveInstance::R2Minus { .. } => MoveKind::R2Minus,
            MoveInstance::R3 { .. } => MoveKind::R3,
        }
    }

    pub fn is_reducing(&self) -> bool {
        matches!(
            self,
            MoveInstance::R1Minus { .. } | MoveInstance::R2Minus { .. }
        )
    }
}

impl fmt::Display for MoveInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |d: &Dart| match d.side {
            Side::Left => "L",
            Side::Right => "R",
        };
        match self {
            MoveInstance::R1Plus { dart, first_under } => write!(
                f,
                "R1+ arc {}{} {}",
                dart.arc,
                side(dart),
                if *first_under { "under" } else { "over" }
            ),
            MoveInstance::R1Minus { arc } => write!(f, "R1- arc {arc}"),
            MoveInstance::R2Plus {
                first,
                second,
                first_over,
            } => write!(
                f,
                "R2+ arcs {}{} {}{} {}",
                first.arc,
                side(first),
                second.arc,
                side(second),
                if *first_over {
                    "first-over"
                } else {
                    "second-over"
                }
            ),
            MoveInstance::R2Minus { over, under } => write!(f, "R2- over {over} under {under}"),
            MoveInstance::R3 { arcs } => write!(f, "R3 arcs {} {} {}", arcs[0], arcs[1], arcs[2]),
        }
    }
}

fn side_value(side: Side) -> i64 {
    match side {
        Side::Left => 1,
        Side::Right => -1,
    }
}

/// Moves that shrink the diagram or keep its size (R1-, R2-, R3).
pub fn enumerate_local_moves(d: &Diagram) -> Vec<MoveInstance> {
    local_moves_with(d, &d.faces())
}

fn local_moves_with(d: &Diagram, faces: &FaceList) -> Vec<MoveInstance> {
    let index = d
        .arc_index()
        .expect("diagram invariant: arcs are well formed");
    let mut out = Vec::new();
    // A crossing with two monogons (a lone curl) is one move, not two.
    let mut curls = BTreeSet::new();
    for face in &faces.faces {
        if face.ports.is_empty() {
            continue;
        }
        match face.len() {
            1 => {
                if curls.insert(face.ports[0].0) {
                    out.push(MoveInstance::R1Minus {
                        arc: face.darts[0].arc,
                    });
                }
            }
            2 => {
                let (a, b) = (face.darts[0].arc, face.darts[1].arc);
                if face.ports[0].0 == face.ports[1].0 {
                    continue;
                }
                let over_both = |x: ArcLabel| {
                    let e = index[&x];
                    Crossing::is_over(e.tail.1) && Crossing::is_over(e.head.1)
                };
                if over_both(a) {
                    out.push(MoveInstance::R2Minus { over: a, under: b });
                } else if over_both(b) {
                    out.push(MoveInstance::R2Minus { over: b, under: a });
                }
            }
            3 => {
                let mut arcs = [face.darts[0].arc, face.darts[1].arc, face.darts[2].arc];
                arcs.sort();
                if !face.ports.is_empty() && r3_shape(d, &index, &arcs).is_ok() {
                    out.push(MoveInstance::R3 { arcs });
                }
            }
            _ => {}
        }
    }
    out.sort();
    out
}

/// Every R1+ and R2+ insertion point.
pub fn enumerate_insertions(d: &Diagram) -> Vec<MoveInstance> {
    insertions_with(d, &d.faces())
}

fn insertions_with(d: &Diagram, faces: &FaceList) -> Vec<MoveInstance> {
    let mut out = Vec::new();
    for a in d.arc_labels() {
        for side in [Side::Left, Side::Right] {
            for first_under in [false, true] {
                out.push(MoveInstance::R1Plus {
                    dart: Dart { arc: a, side },
                    first_under,
                });
            }
        }
    }
    for face in &faces.faces {
        for &p in &face.darts {
            for first_over in [true, false] {
                out.push(MoveInstance::R2Plus {
                    first: p,
                    second: p,
                    first_over,
                });
            }
        }
        for (i, &p) in face.darts.iter().enumerate() {
            for &q in &face.darts[i + 1..] {
                if p.arc == q.arc {
                    continue;
                }
                for first_over in [true, false] {
                    out.push(MoveInstance::R2Plus {
                        first: p,
                        second: q,
                        first_over,
                    });
                }
            }
        }
    }
    out
}

/// All applicable moves: reductions, R3 instances and insertion points.
pub fn enumerate_moves(d: &Diagram) -> Vec<MoveInstance> {
    let faces = d.faces();
    let mut out = local_moves_with(d, &faces);
    out.extend(insertions_with(d, &faces));
    out
}

fn inapplicable(m: &MoveInstance, why: &str) -> Error {
    Error::InapplicableMove(format!("{m}: {why}"))
}

/// Applies a move, checking that it is applicable.
pub fn apply_move(d: &Diagram, m: &MoveInstance) -> Result<Diagram> {
    let index = d.arc_index()?;
    let (crossings, loops) = match *m {
        MoveInstance::R1Minus { arc } => {
            let e = index
                .get(&arc)
                .ok_or_else(|| inapplicable(m, "no such arc"))?;
            let gap = (e.head.1 + 4 - e.tail.1) % 4;
            if e.tail.0 != e.head.0 || gap % 2 == 0 {
                return Err(inapplicable(m, "arc does not bound a monogon"));
            }
            edit::remove_crossings(d, &[e.tail.0])
        }
        MoveInstance::R1Plus { dart, first_under } => {
            let e = dart.arc;
            let is_loop = d.loops().contains(&e);
            if !is_loop && !index.contains_key(&e) {
                return Err(inapplicable(m, "no such arc"));
            }
            let left = dart.side == Side::Left;
            let sign = if first_under == left {
                Sign::Negative
            } else {
                Sign::Positive
            };
            let c = d.max_label() + 1;
            let mut crossings = d.crossings().to_vec();
            let mut loops = d.loops().to_vec();
            let e2 = if is_loop {
                loops.retain(|&l| l != e);
                e
            } else {
                let h = index[&e].head;
                crossings[h.0].slots[h.1] = c + 1;
                c + 1
            };
            let (under, over) = if first_under {
                ((e, c), (c, e2))
            } else {
                ((c, e2), (e, c))
            };
            crossings.push(Crossing::from_strands(under, over, sign));
            (crossings, loops)
        }
        MoveInstance::R2Minus { over, under } => {
            let (eo, eu) = match (index.get(&over), index.get(&under)) {
                (Some(a), Some(b)) => (*a, *b),
                _ => return Err(inapplicable(m, "no such arcs")),
            };
            let x = eo.tail.0;
            let y = eo.head.0;
            let bigon = x != y
                && Crossing::is_over(eo.tail.1)
                && Crossing::is_over(eo.head.1)
                && ((eu.tail.0 == x && eu.head.0 == y) || (eu.tail.0 == y && eu.head.0 == x));
            let face_ok = bigon && {
                let faces = d.faces();
                faces.faces.iter().any(|f| {
                    f.len() == 2
                        && f.contains_arc(over)
                        && f.contains_arc(under)
                        && !f.ports.is_empty()
                })
            };
            if !face_ok {
                return Err(inapplicable(m, "arcs do not bound an over/under bigon"));
            }
            edit::remove_crossings(d, &[x, y])
        }
        MoveInstance::R2Plus {
            first,
            second,
            first_over,
        } => {
            if first == second {
                return fold(d, first, first_over);
            }
            let faces = d.faces();
            let shared = first.arc != second.arc
                && index.contains_key(&first.arc)
                && index.contains_key(&second.arc)
                && faces.face_of(first).is_some()
                && faces.face_of(first) == faces.face_of(second);
            if !shared {
                return Err(inapplicable(m, "arcs do not share a face"));
            }
            r2_plus(d, &index, first, second, first_over)
        }
        MoveInstance::R3 { arcs } => {
            r3_check(d, &arcs).map_err(|why| inapplicable(m, why))?;
            r3_apply(d, &index, &arcs)
        }
    };
    let out = Diagram::new(crossings, loops, d.is_oriented())
        .map_err(|e| Error::Internal(format!("{m} produced an invalid diagram: {e}")))?;
    Ok(out)
}

/// An arc folded over itself: a curl on `dart`, then a second curl on the
/// outer side of the first loop. The two passes between the new crossings
/// bound a bigon, the earlier pass over it iff `first_over`.
fn fold(d: &Diagram, dart: Dart, first_over: bool) -> Result<Diagram> {
    if !d.arc_labels().contains(&dart.arc) {
        return Err(inapplicable(
            &MoveInstance::R2Plus {
                first: dart,
                second: dart,
                first_over,
            },
            "no such arc",
        ));
    }
    let first_under = !first_over;
    let curl = apply_move(d, &MoveInstance::R1Plus { dart, first_under })?;
    let outside = match dart.side {
        Side::Left => Side::Right,
        Side::Right => Side::Left,
    };
    let lobe = Dart {
        arc: d.max_label() + 1,
        side: outside,
    };
    apply_move(
        &curl,
        &MoveInstance::R1Plus {
            dart: lobe,
            first_under,
        },
    )
}

fn r2_plus(
    d: &Diagram,
    index: &std::collections::BTreeMap<ArcLabel, crate::diagram::ArcEnds>,
    first: Dart,
    second: Dart,
    first_over: bool,
) -> (Vec<Crossing>, Vec<ArcLabel>) {
    let (e, f) = (first.arc, second.arc);
    let (se, sf) = (side_value(first.side), side_value(second.side));
    let base = d.max_label();
    let (m, e2, n, f2) = (base + 1, base + 2, base + 3, base + 4);
    let mut crossings = d.crossings().to_vec();
    let eh = index[&e].head;
    let fh = index[&f].head;
    crossings[eh.0].slots[eh.1] = e2;
    crossings[fh.0].slots[fh.1] = f2;
    // Passes of each strand through the new crossings X1 and X2.
    let (e_at1, e_at2) = if se > 0 {
        ((e, m), (m, e2))
    } else {
        ((m, e2), (e, m))
    };
    let (f_at1, f_at2) = if sf > 0 {
        ((n, f2), (f, n))
    } else {
        ((f, n), (n, f2))
    };
    let s = se * sf;
    let (s1, s2) = if first_over { (-s, s) } else { (s, -s) };
    let build = |ep, fp, sign: i64| {
        let sign = Sign::from_value(sign);
        if first_over {
            Crossing::from_strands(fp, ep, sign)
        } else {
            Crossing::from_strands(ep, fp, sign)
        }
    };
    crossings.push(build(e_at1, f_at1, s1));
    crossings.push(build(e_at2, f_at2, s2));
    (crossings, d.loops().to_vec())
}

fn r3_check(d: &Diagram, arcs: &[ArcLabel; 3]) -> std::result::Result<(), &'static str> {
    let index = d.arc_index().map_err(|_| "malformed diagram")?;
    r3_shape(d, &index, arcs)?;
    let faces = d.faces();
    let is_face = faces
        .faces
        .iter()
        .any(|f| f.len() == 3 && !f.ports.is_empty() && arcs.iter().all(|&a| f.contains_arc(a)));
    if !is_face {
        return Err("arcs do not bound a face");
    }
    Ok(())
}

/// The conditions on three arcs other than bounding a face.
fn r3_shape(
    d: &Diagram,
    index: &std::collections::BTreeMap<ArcLabel, crate::diagram::ArcEnds>,
    arcs: &[ArcLabel; 3],
) -> std::result::Result<(), &'static str> {
    if arcs[0] == arcs[1] || arcs[1] == arcs[2] || arcs[0] == arcs[2] {
        return Err("arcs must be distinct");
    }
    let mut crossings = BTreeSet::new();
    let mut over_both = false;
    for a in arcs {
        let e = index.get(a).ok_or("no such arc")?;
        crossings.insert(e.tail.0);
        crossings.insert(e.head.0);
        if Crossing::is_over(e.tail.1) && Crossing::is_over(e.head.1) {
            over_both = true;
        }
        // The neighbouring arcs along the strand must lie outside the triangle.
        let c = d.crossings();
        let before = c[e.tail.0].slots[(e.tail.1 + 2) % 4];
        let after = c[e.head.0].slots[(e.head.1 + 2) % 4];
        if arcs.contains(&before) || arcs.contains(&after) {
            return Err("strand runs along two sides");
        }
    }
    if crossings.len() != 3 {
        return Err("arcs do not meet at three crossings");
    }
    if !over_both {
        return Err("no strand passes over both others");
    }
    Ok(())
}

fn r3_apply(
    d: &Diagram,
    index: &std::collections::BTreeMap<ArcLabel, crate::diagram::ArcEnds>,
    arcs: &[ArcLabel; 3],
) -> (Vec<Crossing>, Vec<ArcLabel>) {
    let old = d.crossings();
    let mut crossings = old.to_vec();
    for &x in arcs {
        let e = index[&x];
        let (p, sp) = e.tail;
        let (q, sq) = e.head;
        let before = old[p].slots[(sp + 2) % 4];
        let after = old[q].slots[(sq + 2) % 4];
        crossings[p].slots[(sp + 2) % 4] = x;
        crossings[p].slots[sp] = after;
        crossings[q].slots[sq] = before;
        crossings[q].slots[(sq + 2) % 4] = x;
    }
    (crossings, d.loops().to_vec())
}

/// Applies a move and returns it together with a move undoing it.
pub fn apply_move_traced(d: &Diagram, m: &MoveInstance) -> Result<(Diagram, MoveInstance)> {
    let out = apply_move(d, m)?;
    let base = d.max_label();
    let inverse = match *m {
        MoveInstance::R1Plus { .. } => Some(MoveInstance::R1Minus { arc: base + 1 }),
        MoveInstance::R2Plus {
            first,
            second,
            first_over,
        } => {
            // A fold's second pass is the last arc it labels.
            let (m_arc, n_arc) = if first == second {
                (base + 1, out.max_label())
            } else {
                (base + 1, base + 3)
            };
            Some(if first_over {
                MoveInstance::R2Minus {
                    over: m_arc,
                    under: n_arc,
                }
            } else {
                MoveInstance::R2Minus {
                    over: n_arc,
                    under: m_arc,
                }
            })
        }
        MoveInstance::R3 { arcs } => Some(MoveInstance::R3 { arcs }),
        _ => None,
    };
    if let Some(inv) = inverse {
        return Ok((out, inv));
    }
    let target = canonical_code(d);
    for cand in enumerate_insertions(&out) {
        if cand.kind().crossing_delta() != -m.kind().crossing_delta() {
            continue;
        }
        if let Ok(back) = apply_move(&out, &cand) {
            if canonical_code(&back) == target {
                return Ok((out, cand));
            }
        }
    }
    Err(Error::Internal(format!("no inverse found for {m}")))
}
