//! Diagram surgery: spur removal, bigon removal, tightening loops, and
//! parallel-path realization along boundary circles.
//!
//! A spur is a lens face between a crossing-free chord and a polygon edge;
//! removing one deletes two edge crossings and is always an isotopy.  A bigon
//! between two components is a disk region bounded by one arc of each;
//! removing one drags the moving component across the disk, deleting two
//! crossings of the pair.  Both loops strictly decrease crossing counts, so
//! tightening terminates.

use super::complex::{Cell, Circle, Overlay, Regions, Vertex};
use super::{Diagram, ProtoVisit, Visit};
use crate::error::{Error, Result};
use crate::frac::Frac;
use alloc::collections::BTreeSet;
use alloc::vec::Vec;

/// Offset direction along the edge for the LEFT side of a strand crossing it
/// with the given `enters_pos`: entering through the positive occurrence
/// puts the strand's left at increasing edge coordinate.
pub fn side_sign(enters_pos: bool) -> i128 {
    if enters_pos {
        1
    } else {
        -1
    }
}

/// Count of crossings between two components.
pub fn crossings_between(ov: &Overlay, a: usize, b: usize) -> usize {
    ov.arr.crossings_between(a, b).len()
}

/// Remove one spur lens per component per pass, until none remain.
/// Returns the reduced diagram and the set of components (by original index)
/// that vanished entirely.
pub fn remove_spurs(diag: &Diagram) -> Result<(Diagram, BTreeSet<usize>)> {
    let mut d = diag.clone();
    // map current component indices to the original ones
    let mut orig: Vec<usize> = (0..d.component_count()).collect();
    let mut vanished = BTreeSet::new();
    let budget = 4 * diag.size() + 16;
    for _ in 0..budget {
        let ov = Overlay::build(&d)?;
        // spur faces: 2-gon faces made of one chord piece and one boundary arc
        let mut spur_of_comp: alloc::collections::BTreeMap<usize, usize> =
            alloc::collections::BTreeMap::new();
        let mut cycle_lens = alloc::vec![0usize; ov.n_faces];
        let total_hes = 2 * ov.total_cells();
        for h in 0..total_hes {
            cycle_lens[ov.face(h)] += 1;
        }
        for (ci, _) in ov.arr.chords.iter().enumerate() {
            if !ov.arr.on_chord[ci].is_empty() {
                continue;
            }
            let piece = Cell::Piece { chord: ci, seg: 0 };
            for fwd in [true, false] {
                let f = ov.face(ov.he(piece, fwd));
                if f != ov.outer_face() && cycle_lens[f] == 2 {
                    let comp = ov.arr.chords[ci].comp;
                    spur_of_comp.entry(comp).or_insert(ci);
                }
            }
        }
        if spur_of_comp.is_empty() {
            break;
        }
        // delete, per affected component, the two endpoint visits of its spur
        let mut comps: Vec<Vec<ProtoVisit>> = Vec::new();
        let mut next_orig = Vec::new();
        for (comp_idx, comp) in d.components().iter().enumerate() {
            let mut keep: Vec<ProtoVisit> = d.proto_of(comp_idx);
            if let Some(&chord) = spur_of_comp.get(&comp_idx) {
                let v = ov.arr.chords[chord].visit;
                let n = comp.len();
                let w = (v + 1) % n;
                let mut kill = alloc::vec![v, w];
                kill.sort_unstable();
                kill.dedup();
                for &k in kill.iter().rev() {
                    keep.remove(k);
                }
            }
            if keep.is_empty() {
                vanished.insert(orig[comp_idx]);
            } else {
                comps.push(keep);
                next_orig.push(orig[comp_idx]);
            }
        }
        d = Diagram::from_proto(d.surface(), comps);
        orig = next_orig;
    }
    Ok((d, vanished))
}

/// A bigon between two components, located by its boundary circle.
#[derive(Debug)]
pub struct Bigon {
    pub region: usize,
    /// The circle, with exactly two corners and one run per component.
    pub circle: Circle,
    /// Corner crossings as chord-id pairs (stable across rebuilds of the
    /// same diagram).
    pub corner_crossings: [usize; 2],
}

/// Find all bigon regions between components a and b (cut = their pieces;
/// other components are transparent and may sit inside).
pub fn find_bigons(ov: &Overlay, regions: &Regions, a: usize, b: usize) -> Vec<Bigon> {
    let mut out = Vec::new();
    for r in 0..regions.count {
        if regions.chi[r] != 1 || regions.circles[r].len() != 1 {
            continue;
        }
        let circle = &regions.circles[r][0];
        if circle.corners.len() != 2 {
            continue;
        }
        let comps: BTreeSet<usize> = circle.runs.iter().map(|&(c, _)| c).collect();
        if comps != BTreeSet::from([a, b]) {
            continue;
        }
        // corner vertices must be two distinct crossings
        let mut xs = Vec::new();
        for &ci in &circle.corners {
            let n = circle.entries.len();
            let prev = circle.entries[(ci + n - 1) % n];
            match ov.head(prev) {
                Vertex::Cross(x) => xs.push(x),
                Vertex::Bnd(_) => {}
            }
        }
        if xs.len() != 2 || xs[0] == xs[1] {
            continue;
        }
        out.push(Bigon {
            region: r,
            circle: circle.clone(),
            corner_crossings: [xs[0], xs[1]],
        });
    }
    out
}

/// The edge point passed when the walk leaves entry `a` continuing along its
/// strand, if any: forward walks pass one at the chord's last piece,
/// backward walks at its first.
fn edge_point_after(ov: &Overlay, a: usize) -> Option<(usize, usize)> {
    let Cell::Piece { chord, seg } = ov.cell_of(a / 2) else {
        return None;
    };
    let last = ov.arr.on_chord[chord].len();
    let comp = ov.arr.chords[chord].comp;
    let n = ov.diag.components()[comp].len();
    if ov.he_fwd(a) && seg == last {
        Some((comp, (ov.arr.chords[chord].visit + 1) % n))
    } else if !ov.he_fwd(a) && seg == 0 {
        Some((comp, ov.arr.chords[chord].visit))
    } else {
        None
    }
}

/// The visits passed between consecutive run entries, in walk order.
fn run_interior_visits(ov: &Overlay, entries: &[usize]) -> Vec<(usize, usize)> {
    entries
        .iter()
        .take(entries.len().saturating_sub(1))
        .filter_map(|&a| edge_point_after(ov, a))
        .collect()
}

/// Split a circle with two corners into its two runs (walk order).
fn two_runs(circle: &Circle) -> [(usize, bool, Vec<usize>); 2] {
    let n = circle.entries.len();
    let [c0, c1] = [circle.corners[0], circle.corners[1]];
    let collect = |from: usize, to: usize| {
        let mut v = Vec::new();
        let mut i = from;
        while i != to {
            v.push(circle.entries[i]);
            i = (i + 1) % n;
        }
        v
    };
    let run0 = collect(c0, c1);
    let run1 = collect(c1, c0);
    [
        (circle.runs[0].0, circle.runs[0].1, run0),
        (circle.runs[1].0, circle.runs[1].1, run1),
    ]
}

/// Remove one bigon by rerouting the `mover` component across it, along the
/// far side of the other component's arc.
pub fn remove_bigon(ov: &Overlay, bigon: &Bigon, mover: usize) -> Result<Diagram> {
    let diag = &ov.diag;
    let runs = two_runs(&bigon.circle);
    let (mover_run, other_run) = if runs[0].0 == mover {
        (&runs[0], &runs[1])
    } else if runs[1].0 == mover {
        (&runs[1], &runs[0])
    } else {
        return Err(Error::Internal("mover not on bigon"));
    };
    let (_, mover_fwd, mover_entries) = mover_run;
    let (other_comp, other_fwd, other_entries) = other_run;

    // visits of the mover's arc, in walk order, then in mover-forward order
    let mover_interior = run_interior_visits(ov, mover_entries);
    let mut deleted: Vec<usize> = mover_interior.iter().map(|&(_, v)| v).collect();
    if !*mover_fwd {
        deleted.reverse();
    }

    // the new path alongside the other arc, in mover-forward order:
    // reversed walk order when the mover run is forward, walk order otherwise
    let other_interior = run_interior_visits(ov, other_entries);
    let mut path: Vec<(usize, usize)> = other_interior;
    if *mover_fwd {
        path.reverse();
    }
    let other_visits = &diag.components()[*other_comp];
    let mut tie = 0u64;
    let new_path: Vec<ProtoVisit> = path
        .iter()
        .map(|&(_, v)| {
            let w = other_visits[v];
            // direction the new arc crosses the edge, relative to the other
            // component's orientation
            let along_other = if *mover_fwd { !*other_fwd } else { *other_fwd };
            let enters = if along_other { w.enters_pos } else { !w.enters_pos };
            // bigon lies left of the other run when its entries are forward;
            // the new arc goes on the far side
            let off = if *other_fwd { -1 } else { 1 };
            tie += 1;
            ProtoVisit {
                edge: w.edge,
                key: Frac::int(w.slot as i128).add(Frac::new(off * side_sign(w.enters_pos), 4)),
                tie: (2, tie),
                enters_pos: enters,
            }
        })
        .collect();

    // splice into the mover's visit list
    let mover_visits = &diag.components()[mover];
    let n = mover_visits.len();
    let mut new_mover: Vec<ProtoVisit> = Vec::new();
    if deleted.is_empty() {
        // both corners on one chord: insert after its from-visit
        let first_entry = mover_entries[0] / 2;
        let chord = match ov.cell_of(first_entry) {
            Cell::Piece { chord, .. } => chord,
            Cell::BArc(_) => return Err(Error::Internal("bigon run entry is not a piece")),
        };
        let anchor = ov.arr.chords[chord].visit;
        for (vi, v) in mover_visits.iter().enumerate() {
            new_mover.push(int_proto(v));
            if vi == anchor {
                new_mover.extend(new_path.iter().cloned());
            }
        }
    } else {
        // rotate so the deleted block is contiguous at a known location
        let start = deleted[0];
        let k = deleted.len();
        // visits in mover order starting at `start`
        for i in 0..n {
            let vi = (start + i) % n;
            if i < k {
                debug_assert_eq!(vi, deleted[i], "bigon arc not contiguous");
                if i == 0 {
                    new_mover.extend(new_path.iter().cloned());
                }
            } else {
                new_mover.push(int_proto(&mover_visits[vi]));
            }
        }
    }

    let comps: Vec<Vec<ProtoVisit>> = (0..diag.component_count())
        .map(|c| {
            if c == mover {
                new_mover.clone()
            } else {
                diag.proto_of(c)
            }
        })
        .collect();
    Ok(Diagram::from_proto(diag.surface(), comps))
}

fn int_proto(v: &Visit) -> ProtoVisit {
    ProtoVisit {
        edge: v.edge,
        key: Frac::int(v.slot as i128),
        tie: (0, v.slot as u64),
        enters_pos: v.enters_pos,
    }
}

/// Tighten the pair (a, b) by removing bigons, always rerouting `mover`
/// (either a or b).  Bigon regions containing any component in `avoid` are
/// left alone (restricted tightening in the complement of those curves).
/// Spurs of all components are removed along the way.
///
/// Returns the tightened diagram; component indices are preserved (no
/// component may vanish here; use realize-level reduction for that).
pub fn tighten_pair(
    diag: &Diagram,
    a: usize,
    b: usize,
    mover: usize,
    avoid: &BTreeSet<usize>,
) -> Result<Diagram> {
    debug_assert!(mover == a || mover == b);
    let mut d = diag.clone();
    let budget = 2 * diag.size() * diag.size() + 64;
    for _ in 0..budget {
        let (reduced, vanished) = remove_spurs(&d)?;
        if !vanished.is_empty() {
            return Err(Error::Internal("component vanished during tightening"));
        }
        d = reduced;
        if a == b {
            return Ok(d);
        }
        let ov = Overlay::build(&d)?;
        ov.euler_check()?;
        let cut = ov.pieces_of_components(&BTreeSet::from([a, b]));
        let regions = ov.regions(&cut)?;
        let mut bigons = find_bigons(&ov, &regions, a, b);
        if !avoid.is_empty() {
            bigons.retain(|bg| {
                avoid
                    .iter()
                    .all(|&c| ov.region_of_component(&regions, c) != bg.region)
            });
        }
        match bigons.first() {
            None => return Ok(d),
            Some(bg) => {
                let before = crossings_between(&ov, a, b);
                d = remove_bigon(&ov, bg, mover)?;
                let after = crossings_between(&Overlay::build(&d)?, a, b);
                if after + 2 > before {
                    return Err(Error::Internal("bigon removal did not reduce crossings"));
                }
            }
        }
    }
    Err(Error::Internal("tightening budget exceeded"))
}

/// Tighten several pairs until all are bigon-free, looping because moving
/// one pair can re-expose bigons of another.  Each entry is
/// (a, b, mover, avoid).
pub fn tighten_pairs(
    diag: &Diagram,
    jobs: &[(usize, usize, usize, BTreeSet<usize>)],
) -> Result<Diagram> {
    let mut d = diag.clone();
    let budget = 8 * diag.size() * diag.size() + 64;
    for _ in 0..budget {
        let mut changed = false;
        for (a, b, mover, avoid) in jobs {
            let before = {
                let ov = Overlay::build(&d)?;
                crossings_between(&ov, *a, *b)
            };
            let next = tighten_pair(&d, *a, *b, *mover, avoid)?;
            let after = {
                let ov = Overlay::build(&next)?;
                crossings_between(&ov, *a, *b)
            };
            if after != before {
                changed = true;
            }
            d = next;
        }
        if !changed {
            return Ok(d);
        }
    }
    Err(Error::Internal("pairwise tightening did not stabilize"))
}

/// Realize a boundary circle of a cut region as a new closed curve, pushed
/// slightly into the region.  Returns its proto visits.
pub fn circle_parallel_path(ov: &Overlay, circle: &Circle) -> Result<Vec<ProtoVisit>> {
    let n = circle.entries.len();
    let mut out = Vec::new();
    let mut tie = 0u64;
    for i in 0..n {
        let a = circle.entries[i];
        let is_corner = circle.corners.contains(&((i + 1) % n));
        if is_corner {
            continue;
        }
        if let Some((comp, v)) = edge_point_after(ov, a) {
            let w = ov.diag.components()[comp][v];
            // region is on the left of the walk; push the copy into it
            let enters = if ov.he_fwd(a) {
                w.enters_pos
            } else {
                !w.enters_pos
            };
            tie += 1;
            out.push(ProtoVisit {
                edge: w.edge,
                key: Frac::int(w.slot as i128).add(Frac::new(side_sign(enters), 4)),
                tie: (3, tie),
                enters_pos: enters,
            });
        }
    }
    // an empty list means the circle stays inside one polygon face and
    // bounds a disk there; callers drop such circles as inessential
    Ok(out)
}

impl Overlay {
    pub fn total_cells(&self) -> usize {
        // barcs + pieces
        self.arr.len
            + self
                .arr
                .on_chord
                .iter()
                .map(|xs| xs.len() + 1)
                .sum::<usize>()
    }
}
