//! Combinatorial kernel for embedded curves on a closed orientable surface of
//! genus g >= 2, together with the graph-level machinery built on top of it:
//! the handle-curve connectivity algorithm, exact Farey-graph arithmetic for
//! one-holed-torus subsurfaces, subsurface projections with cutoff sums, the
//! pants complex with elementary moves, and certified paths that stay outside
//! a ball around a basepoint.
//!
//! The surface is modelled as a single 4g-gon with the standard boundary word
//! `a1 b1 a1' b1' ... ag bg ag' bg'` glued to one vertex.  Every curve is a
//! normal multicurve: a cyclic sequence of transverse crossings with the
//! polygon edges, with the crossing order along each edge as the single source
//! of truth.  All operations are pure; values are immutable once built.
//!
//! The crate is `no_std` (it only needs `alloc`), so the kernel can be reused
//! without the CLI companion crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod chart;
pub mod curves;
pub mod diagram;
pub mod handles;
pub mod error;
pub mod farey;
pub mod frac;
pub mod surface;

pub use curves::{Caps, ComplementAnalysis, CurveSpec, Library};
pub use diagram::Diagram;
pub use error::{Error, Result};
pub use farey::Slope;
pub use surface::Surface;
// debug helper compiled as a test
#[cfg(test)]
mod dbg {
    use crate::curves::*;
    use crate::diagram::moves;
    use crate::diagram::complex::Overlay;
    use crate::diagram::twist::twist_once;
    use crate::surface::Surface;
    use alloc::collections::BTreeSet;

    #[test]
    fn dbg_twist_h2_c1() {
        let lib = Library::build(Surface::new(3).unwrap()).unwrap();
        let h2 = lib.get("h2").unwrap().clone();
        let c1 = lib.get("c1").unwrap().clone();
        let i = intersection_of_diagrams(&h2, &c1).unwrap();
        std::println!("i(h2, c1) = {i}");
        let joint = h2.merge(&c1);
        let joint = moves::tighten_pair(&joint, 0, 1, 1, &BTreeSet::new()).unwrap();
        let ov = Overlay::build(&joint).unwrap();
        std::println!("joint crossings = {}", moves::crossings_between(&ov, 0, 1));
        std::println!("h2 visits: {:?}", joint.components()[0]);
        std::println!("c1 visits: {:?}", joint.components()[1]);
        let tw = twist_once(&joint, 1, true).unwrap();
        std::println!("twisted comp0: {:?}", tw.components()[0]);
        match tw.validate() {
            Ok(()) => std::println!("twisted joint VALID"),
            Err(e) => std::println!("twisted joint INVALID: {e}"),
        }
        let alone = tw.restrict(&BTreeSet::from([0]));
        match alone.validate() {
            Ok(()) => std::println!("alone VALID"),
            Err(e) => std::println!("alone INVALID: {e}"),
        }
        // locate the interleaving chord pairs
        let arr = crate::diagram::arrangement::Arrangement::build(&alone).unwrap();
        for (i, ch1) in arr.chords.iter().enumerate() {
            for (j, ch2) in arr.chords.iter().enumerate().skip(i + 1) {
                if ch1.comp == ch2.comp
                    && crate::diagram::arrangement::interleaved(
                        arr.len, ch1.from, ch1.to, ch2.from, ch2.to)
                {
                    std::println!("SELF-CROSS: chord after visit {} x chord after visit {}", ch1.visit, ch2.visit);
                }
            }
        }
        for (vi, v) in alone.components()[0].iter().enumerate() {
            std::println!("  visit {vi}: edge {} slot {} enters {}", v.edge, v.slot, v.enters_pos);
        }
    }
}
