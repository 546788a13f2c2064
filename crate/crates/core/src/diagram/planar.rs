//! Faces of a diagram through its rotation system, and the validity checks
//! built on them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{arc_index_of, ArcEnds, ArcLabel, Crossing, Diagram, Port};
use crate::error::Error;

/// Which side of an oriented arc a face lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// An arc together with one of its sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Dart {
    pub arc: ArcLabel,
    pub side: Side,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// Boundary darts in traversal order (face on the left of travel).
    pub darts: Vec<Dart>,
    /// The outgoing port of every dart; empty for the faces of a loop.
    pub ports: Vec<Port>,
    /// Connected piece of the diagram this face belongs to.
    pub piece: usize,
}

impl Face {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn contains_arc(&self, arc: ArcLabel) -> bool {
        self.darts.iter().any(|d| d.arc == arc)
    }
}

/// All faces of a diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceList {
    pub faces: Vec<Face>,
    dart_face: BTreeMap<Dart, usize>,
    /// Piece index of each crossing.
    pub crossing_piece: Vec<usize>,
    pub piece_count: usize,
}

impl FaceList {
    pub fn face_of(&self, dart: Dart) -> Option<usize> {
        self.dart_face.get(&dart).copied()
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Faces of each piece.
    pub fn piece_faces(&self, piece: usize) -> impl Iterator<Item = usize> + '_ {
        self.faces
            .iter()
            .enumerate()
            .filter(move |(_, f)| f.piece == piece)
            .map(|(i, _)| i)
    }

    /// The face treated as unbounded within a piece: the one with the most
    /// darts, ties going to the lowest face index.
    pub fn outer_face(&self, piece: usize) -> Option<usize> {
        let mut best: Option<usize> = None;
        for i in self.piece_faces(piece) {
            match best {
                Some(b) if self.faces[b].len() >= self.faces[i].len() => {}
                _ => best = Some(i),
            }
        }
        best
    }

    /// Face indices adjacent across each dart's arc.
    pub fn across(&self, dart: Dart) -> Option<usize> {
        self.face_of(Dart {
            arc: dart.arc,
            side: dart.side.opposite(),
        })
    }
}

/// Pass/fail summary of the structural checks on a diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidityReport {
    pub arc_degree_ok: bool,
    pub closure_ok: bool,
    pub euler_ok: bool,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub pieces: usize,
    pub failures: Vec<String>,
}

impl ValidityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Euler characteristic summed over pieces; equals `2 * pieces` on a
    /// valid diagram.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + self.faces as i64
    }

    pub(crate) fn first_error(&self) -> Error {
        let msg = self.failures.first().cloned().unwrap_or_default();
        if !self.arc_degree_ok || !self.closure_ok {
            Error::Untraceable(msg)
        } else {
            Error::NonPlanar(msg)
        }
    }
}

fn twin_of(crossings: &[Crossing], index: &BTreeMap<ArcLabel, ArcEnds>, (c, s): Port) -> Port {
    let ends = index[&crossings[c].slots[s]];
    if ends.tail == (c, s) {
        ends.head
    } else {
        ends.tail
    }
}

fn dart_at(crossings: &[Crossing], index: &BTreeMap<ArcLabel, ArcEnds>, (c, s): Port) -> Dart {
    let arc = crossings[c].slots[s];
    let side = if index[&arc].tail == (c, s) {
        Side::Left
    } else {
        Side::Right
    };
    Dart { arc, side }
}

fn pieces_of(crossings: &[Crossing], index: &BTreeMap<ArcLabel, ArcEnds>) -> (Vec<usize>, usize) {
    let n = crossings.len();
    let mut piece = vec![usize::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if piece[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        piece[start] = count;
        while let Some(c) = stack.pop() {
            for s in 0..4 {
                let (o, _) = twin_of(crossings, index, (c, s));
                if piece[o] == usize::MAX {
                    piece[o] = count;
                    stack.push(o);
                }
            }
        }
        count += 1;
    }
    (piece, count)
}

pub(crate) fn faces_of(
    crossings: &[Crossing],
    loops: &[ArcLabel],
    index: &BTreeMap<ArcLabel, ArcEnds>,
) -> FaceList {
    let (crossing_piece, crossing_pieces) = pieces_of(crossings, index);
    let slot = |(c, s): Port| 4 * c + s;
    // Dense per-slot tables so the walk below avoids map lookups.
    let ports: Vec<Port> = (0..crossings.len())
        .flat_map(|c| (0..4).map(move |s| (c, s)))
        .collect();
    let next: Vec<usize> = ports
        .iter()
        .map(|&p| {
            let (tc, ts) = twin_of(crossings, index, p);
            slot((tc, (ts + 3) % 4))
        })
        .collect();
    let dart: Vec<Dart> = ports
        .iter()
        .map(|&p| dart_at(crossings, index, p))
        .collect();
    let mut visited = vec![false; ports.len()];
    let mut faces = Vec::new();
    for start in 0..ports.len() {
        if visited[start] {
            continue;
        }
        let mut face = Face {
            darts: Vec::new(),
            ports: Vec::new(),
            piece: crossing_piece[ports[start].0],
        };
        let mut at = start;
        while !visited[at] {
            visited[at] = true;
            face.darts.push(dart[at]);
            face.ports.push(ports[at]);
            at = next[at];
        }
        faces.push(face);
    }
    for (k, &l) in loops.iter().enumerate() {
        for side in [Side::Left, Side::Right] {
            faces.push(Face {
                darts: vec![Dart { arc: l, side }],
                ports: vec![],
                piece: crossing_pieces + k,
            });
        }
    }
    let mut dart_face = BTreeMap::new();
    for (i, f) in faces.iter().enumerate() {
        for &d in &f.darts {
            dart_face.insert(d, i);
        }
    }
    FaceList {
        faces,
        dart_face,
        crossing_piece,
        piece_count: crossing_pieces + loops.len(),
    }
}

/// Runs the structural checks on raw crossing data.
pub(crate) fn check(crossings: &[Crossing], loops: &[ArcLabel]) -> ValidityReport {
    let mut report = ValidityReport {
        arc_degree_ok: true,
        closure_ok: true,
        euler_ok: true,
        vertices: crossings.len() + loops.len(),
        edges: 0,
        faces: 0,
        pieces: 0,
        failures: vec![],
    };
    let index = match arc_index_of(crossings) {
        Ok(i) => i,
        Err(Error::ArcDegree { arc, count }) => {
            report.arc_degree_ok = false;
            report.closure_ok = false;
            report.failures.push(if count < 2 {
                format!("open strand: arc {arc} is used {count} time(s)")
            } else {
                format!("arc {arc} is used {count} times")
            });
            return report;
        }
        Err(e) => {
            report.closure_ok = false;
            report.failures.push(e.to_string());
            return report;
        }
    };
    if let Some(l) = loops.iter().find(|l| index.contains_key(l)) {
        report.arc_degree_ok = false;
        report
            .failures
            .push(format!("loop label {l} also labels an arc"));
        return report;
    }
    report.edges = index.len() + loops.len();
    let faces = faces_of(crossings, loops, &index);
    report.faces = faces.len();
    report.pieces = faces.piece_count;
    for p in 0..faces.piece_count {
        let v = if p < faces.piece_count - loops.len() {
            faces.crossing_piece.iter().filter(|&&q| q == p).count()
        } else {
            1
        };
        let e = if p < faces.piece_count - loops.len() {
            index
                .values()
                .filter(|ends| faces.crossing_piece[ends.tail.0] == p)
                .count()
        } else {
            1
        };
        let f = faces.piece_faces(p).count();
        if v as i64 - e as i64 + f as i64 != 2 {
            report.euler_ok = false;
            report
                .failures
                .push(format!("piece {p}: V - E + F = {v} - {e} + {f} != 2"));
        }
    }
    report
}

impl Diagram {
    pub fn faces(&self) -> FaceList {
        let index = self
            .arc_index()
            .expect("diagram invariant: arcs are well formed");
        faces_of(&self.crossings, &self.loops, &index)
    }

    /// Arc-degree, closure and per-piece Euler checks.
    pub fn validate(&self) -> ValidityReport {
        check(&self.crossings, &self.loops)
    }
}

/// Validates raw crossings and loops without constructing a [`Diagram`].
pub fn validate_raw(crossings: &[Crossing], loops: &[ArcLabel]) -> ValidityReport {
    check(crossings, loops)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_pd, Sign};

    #[test]
    fn trefoil_faces() {
        let d = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
        let r = d.validate();
        assert!(r.passed());
        assert_eq!((r.vertices, r.edges, r.faces), (3, 6, 5));
        assert_eq!(r.euler_characteristic(), 2);
        let faces = d.faces();
        let mut sizes: Vec<usize> = faces.faces.iter().map(Face::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 2, 2, 3, 3]);
        // Every dart in exactly one face.
        let total: usize = sizes.iter().sum();
        assert_eq!(total, 12);
    }

    #[test]
    fn open_strand_fails() {
        let crossings = vec![Crossing {
            slots: [1, 1, 2, 3],
            sign: Sign::Positive,
        }];
        let r = validate_raw(&crossings, &[]);
        assert!(!r.passed());
        assert!(r.failures[0].contains("open strand"));
    }

    #[test]
    fn loop_passes() {
        let r = validate_raw(&[], &[1]);
        assert!(r.passed());
        assert_eq!((r.vertices, r.edges, r.faces), (1, 1, 2));
    }

    #[test]
    fn nonplanar_code_fails() {
        // One crossing whose strands close up on a torus.
        let crossings = vec![Crossing {
            slots: [1, 2, 1, 2],
            sign: Sign::Positive,
        }];
        let r = validate_raw(&crossings, &[]);
        assert!(!r.passed(), "{r:?}");
    }
}
