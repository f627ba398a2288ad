//! Dehn twists realized diagrammatically.
//!
//! A twist about a component c reroutes every strand crossing c once around
//! it.  In an annulus neighborhood of c the rerouted strand is the sheared
//! transversal: at phase distance D from its entry crossing (measured along
//! c, in the twist direction) the spiral sits at height 2D/m - 1 across the
//! annulus, where m is the number of edge crossings of c.  The height fixes
//! on which side of c's own crossing each inserted copy lands, so the slot
//! keys are exact and the rerouted diagram is embedded and isotopic to the
//! image of the twist homeomorphism.  Tightening afterwards restores minimal
//! position.

use super::complex::Overlay;
use super::moves::side_sign;
use super::{Diagram, ProtoVisit};
use crate::error::{Error, Result};
use crate::frac::Frac;
use alloc::vec::Vec;

/// Apply one positive (right-handed) or negative twist about component
/// `about` to every other component that crosses it.  The twist curve keeps
/// its own diagram.  Callers tighten the result.
pub fn twist_once(diag: &Diagram, about: usize, positive: bool) -> Result<Diagram> {
    let ov = Overlay::build(diag)?;
    let m = diag.components()[about].len();
    if m == 0 {
        return Err(Error::Internal("twist curve has no edge crossings"));
    }
    let m_frac = Frac::int(m as i128);

    let mut comps: Vec<Vec<ProtoVisit>> = Vec::new();
    let mut tie = 0u64;
    for (ci, comp) in diag.components().iter().enumerate() {
        if ci == about {
            comps.push(diag.proto_of(ci));
            continue;
        }
        let mut new_comp: Vec<ProtoVisit> = Vec::new();
        for (vi, v) in comp.iter().enumerate() {
            new_comp.push(ProtoVisit {
                edge: v.edge,
                key: Frac::int(v.slot as i128),
                tie: (0, v.slot as u64),
                enters_pos: v.enters_pos,
            });
            // crossings with the twist curve on the chord leaving this visit
            let chord = ov.arr.chord_of_visit[&(ci, vi)];
            for &xid in &ov.arr.on_chord[chord] {
                let other = ov.arr.other_chord(xid, chord);
                if ov.arr.chords[other].comp != about {
                    continue;
                }
                // phase of the crossing along the twist curve
                let t = Frac::int(ov.arr.chords[other].visit as i128)
                    .add(ov.arr.param_on(xid, other));
                // whether this strand crosses c from its right to its left:
                // true iff it does not come from c's left
                let rl = !ov.arr.crosses_from_left(xid, other);
                let detour = detour_visits(diag, about, t, positive, rl, &mut tie, m_frac)?;
                new_comp.extend(detour);
            }
        }
        comps.push(new_comp);
    }
    Ok(Diagram::from_proto(diag.surface(), comps))
}

/// The m inserted visits for one rerouted crossing at phase `t`.
fn detour_visits(
    diag: &Diagram,
    about: usize,
    t: Frac,
    positive: bool,
    crosses_right_to_left: bool,
    tie: &mut u64,
    m_frac: Frac,
) -> Result<Vec<ProtoVisit>> {
    let m = diag.components()[about].len();
    let visits = &diag.components()[about];
    // spiral visit sequence in the direction of increasing height:
    // positive twist advances along c, negative twist runs against it
    let first = if positive {
        t.ceil()
    } else {
        // largest integer <= t; t is never an integer
        t.ceil() - 1
    };
    let mut seq: Vec<ProtoVisit> = Vec::with_capacity(m);
    for k in 0..m {
        let u = if positive {
            first + k as i128
        } else {
            first - k as i128
        };
        let w = visits[u.rem_euclid(m as i128) as usize];
        // phase distance from t in the twist direction, in (0, m)
        let delta = if positive {
            Frac::int(u).sub(t)
        } else {
            t.sub(Frac::int(u))
        };
        debug_assert!(!delta.is_negative() && !delta.is_zero());
        // height in (-1, 1)
        let height = delta.mul(Frac::int(2)).div(m_frac).sub(Frac::int(1));
        // the spiral crosses the edge along c for positive twists, against
        // it for negative ones
        let along_c = positive;
        let enters = if along_c { w.enters_pos } else { !w.enters_pos };
        *tie += 1;
        seq.push(ProtoVisit {
            edge: w.edge,
            key: Frac::int(w.slot as i128)
                .add(height.mul(Frac::new(side_sign(w.enters_pos), 2))),
            tie: (4, *tie),
            enters_pos: enters,
        });
    }
    // the strand traverses the spiral from the height -1 end when it crosses
    // right to left, from the height +1 end otherwise
    if !crosses_right_to_left {
        seq.reverse();
        for pv in &mut seq {
            pv.enters_pos = !pv.enters_pos;
        }
    }
    if seq.len() != m {
        return Err(Error::Internal("detour length mismatch"));
    }
    Ok(seq)
}
