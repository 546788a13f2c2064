//! Processive recombination: repeatedly cutting two parallel arcs and
//! re-splicing them through one new right-handed (positive) crossing.

use serde::{Deserialize, Serialize};

use super::catalog::vertical_twist;
use super::{ArcLabel, Crossing, Dart, Diagram, Side, Sign};
use crate::error::{Error, Result};

/// Two arcs that face each other across a common face and run parallel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecombinationSite {
    pub arcs: (ArcLabel, ArcLabel),
}

/// The three-twist unknotted template with its site between the closing
/// arcs of the twist.
pub fn recombination_template() -> (Diagram, RecombinationSite) {
    let (d, cap, cup) = vertical_twist(3).expect("template is valid");
    (d, RecombinationSite { arcs: (cap, cup) })
}

/// Cuts both site arcs and re-splices them with one positive crossing. The
/// returned site is the pair of arcs leaving the new crossing, which again
/// bound a common face.
pub fn recombination_step(
    d: &Diagram,
    site: RecombinationSite,
) -> Result<(Diagram, RecombinationSite)> {
    let (a, b) = site.arcs;
    if a == b {
        return Err(Error::NoSite("site arcs must differ".into()));
    }
    let index = d.arc_index()?;
    if !index.contains_key(&a) || !index.contains_key(&b) {
        return Err(Error::NoSite(format!(
            "arcs {a} and {b} must both pass through crossings"
        )));
    }
    let faces = d.faces();
    let shares = |x: ArcLabel, y: ArcLabel| {
        let fx = faces.face_of(Dart {
            arc: x,
            side: Side::Left,
        });
        fx.is_some()
            && fx
                == faces.face_of(Dart {
                    arc: y,
                    side: Side::Right,
                })
    };
    // `e` runs along the face boundary, `f` against it.
    let (e, f) = if shares(a, b) {
        (a, b)
    } else if shares(b, a) {
        (b, a)
    } else {
        return Err(Error::NoSite(format!(
            "arcs {a} and {b} do not run parallel along a common face"
        )));
    };
    let p2 = d.max_label() + 1;
    let q2 = p2 + 1;
    let mut crossings = d.crossings().to_vec();
    let (eh, fh) = (index[&e].head, index[&f].head);
    crossings[eh.0].slots[eh.1] = q2;
    crossings[fh.0].slots[fh.1] = p2;
    // e continues into p2 over the strand f -> q2.
    crossings.push(Crossing::from_strands((f, q2), (e, p2), Sign::Positive));
    let out = Diagram::new(crossings, d.loops().to_vec(), d.is_oriented())?;
    Ok((out, RecombinationSite { arcs: (p2, q2) }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn template_is_unknot_with_three_crossings() {
        let (d, site) = recombination_template();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.components().len(), 1);
        assert_ne!(site.arcs.0, site.arcs.1);
    }

    #[test]
    fn step_adds_one_positive_crossing() {
        let (d, site) = recombination_template();
        let (d1, s1) = recombination_step(&d, site).unwrap();
        assert_eq!(d1.crossing_count(), 4);
        assert_eq!(d1.components().len(), 2);
        assert_eq!(d1.linking_matrix().unwrap()[0][1].abs(), 1);
        assert_eq!(d1.crossings().last().unwrap().sign, Sign::Positive);
        assert!(d1.validate().passed());
        let (d2, _) = recombination_step(&d1, s1).unwrap();
        assert_eq!(d2.crossing_count(), 5);
    }

    #[test]
    fn rejects_non_site() {
        let (d, _) = recombination_template();
        let err = recombination_step(&d, RecombinationSite { arcs: (1, 1) });
        assert!(matches!(err, Err(Error::NoSite(_))));
    }
}
