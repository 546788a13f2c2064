//! Checkerboard shadings, signed Tait graphs and their conductance.
//!
//! Shaded faces become nodes and every crossing becomes an edge between the
//! two shaded faces meeting at it. The edge is `+1` when the shaded face lies
//! to the right of the over-strand just before the crossing, and `-1`
//! otherwise (this does not depend on the orientation of the strand). With
//! this convention an R2 move adds a cancelling `+1/-1` pair in series or in
//! parallel, and R3 is a star-triangle exchange, so the conductance between
//! two fixed faces is a diagram invariant.

mod network;

use std::collections::{BTreeMap, VecDeque};

use crate::diagram::{Dart, Diagram, FaceList};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use network::{
    determinant, effective_conductance, laplacian_conductance, star_triangle, triangle_star,
    Combination, ExtendedConductance, SignedNetwork,
};

/// Two-coloring of the faces of a diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shading {
    /// Indexed like [`Diagram::faces`].
    pub shaded: Vec<bool>,
}

fn shade_from(faces: &FaceList, roots: &BTreeMap<usize, (usize, bool)>) -> Shading {
    let mut shaded: Vec<Option<bool>> = vec![None; faces.len()];
    for (&_piece, &(root, value)) in roots {
        shaded[root] = Some(value);
        let mut queue = VecDeque::from([root]);
        while let Some(f) = queue.pop_front() {
            let v = shaded[f].unwrap();
            for &dart in &faces.faces[f].darts {
                if let Some(g) = faces.across(dart) {
                    if shaded[g].is_none() {
                        shaded[g] = Some(!v);
                        queue.push_back(g);
                    }
                }
            }
        }
    }
    Shading {
        shaded: shaded.into_iter().map(|s| s.unwrap_or(false)).collect(),
    }
}

/// The shading with the outer face of every connected piece unshaded. The
/// outer face of a piece is its face with the most sides, ties going to the
/// lowest face index.
pub fn shading(d: &Diagram) -> Shading {
    let faces = d.faces();
    let roots = (0..faces.piece_count)
        .filter_map(|p| Some((p, (faces.outer_face(p)?, false))))
        .collect();
    shade_from(&faces, &roots)
}

/// The default shading, except that the face containing `dart` is shaded.
pub fn shading_anchored(d: &Diagram, dart: Dart) -> Result<Shading> {
    let faces = d.faces();
    let anchor = faces
        .face_of(dart)
        .ok_or_else(|| Error::InvalidNetwork(format!("no face contains arc {}", dart.arc)))?;
    let mut roots: BTreeMap<usize, (usize, bool)> = (0..faces.piece_count)
        .filter_map(|p| Some((p, (faces.outer_face(p)?, false))))
        .collect();
    roots.insert(faces.faces[anchor].piece, (anchor, true));
    Ok(shade_from(&faces, &roots))
}

/// A Tait graph together with the face behind every node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaitGraph<T> {
    pub network: SignedNetwork<T>,
    /// Face index (in [`Diagram::faces`]) of every node.
    pub node_face: Vec<usize>,
}

impl<T> TaitGraph<T> {
    pub fn node_of_face(&self, face: usize) -> Option<usize> {
        self.node_face.iter().position(|&f| f == face)
    }
}

pub fn tait_graph_with<T: Scalar>(d: &Diagram, shading: &Shading) -> TaitGraph<T> {
    let faces = d.faces();
    let node_face: Vec<usize> = (0..faces.len()).filter(|&f| shading.shaded[f]).collect();
    let node: BTreeMap<usize, usize> = node_face.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let port_face: BTreeMap<(usize, usize), usize> = faces
        .faces
        .iter()
        .enumerate()
        .flat_map(|(i, f)| f.ports.iter().map(move |&p| (p, i)))
        .collect();
    let mut network = SignedNetwork::new(node_face.len());
    for c in 0..d.crossing_count() {
        // Corner (0,1) lies in the face of port (c, 0). It is the corner to
        // the left of the incoming over-strand, or the one opposite it.
        let f0 = port_face[&(c, 0)];
        let (a, b, sign) = if shading.shaded[f0] {
            (f0, port_face[&(c, 2)], -1)
        } else {
            (port_face[&(c, 1)], port_face[&(c, 3)], 1)
        };
        network.add_edge(node[&a], node[&b], ExtendedConductance::from_i64(sign));
    }
    TaitGraph { network, node_face }
}

/// Signed Tait graph under the default shading.
pub fn tait_graph<T: Scalar>(d: &Diagram) -> SignedNetwork<T> {
    tait_graph_with(d, &shading(d)).network
}

/// Conductance between the faces containing two darts, with the first of
/// them shaded. Errors when the darts lie in faces of opposite shade.
pub fn face_conductance<T: Scalar>(
    d: &Diagram,
    from: Dart,
    to: Dart,
) -> Result<ExtendedConductance<T>> {
    let s = shading_anchored(d, from)?;
    let g = tait_graph_with::<T>(d, &s);
    let faces = d.faces();
    let node = |dart: Dart| {
        faces
            .face_of(dart)
            .and_then(|f| g.node_of_face(f))
            .ok_or_else(|| Error::InvalidNetwork(format!("face of arc {} is not shaded", dart.arc)))
    };
    let (a, b) = (node(from)?, node(to)?);
    if a == b {
        return Ok(ExtendedConductance::Infinite);
    }
    effective_conductance(&g.network, a, b)
}
