//! Paths and cycles in the face-adjacency graph of an overlay, realized as
//! new curves.
//!
//! Faces are adjacent through glued boundary arcs (crossing a polygon edge)
//! and, when permitted, through strand pieces (crossing a curve).  Since the
//! chord arrangement has convex faces, a realized step crosses exactly the
//! cells it declares, so curves built here intersect the diagram exactly as
//! designed.  Free arcs (which the diagram cannot carry directly) are
//! realized as thin doubled loops around the arc.

use super::arrangement::PosInfo;
use super::complex::{Cell, Overlay};
use super::moves::side_sign;
use super::ProtoVisit;
use crate::error::{Error, Result};
use crate::frac::Frac;
use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

/// One step between adjacent faces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualStep {
    /// Cross the polygon edge through this boundary-arc instance (the one
    /// bounding the face we leave).
    Gap { exit_instance: usize },
    /// Cross a curve through this piece cell.
    Through { piece: usize },
}

/// A walk in the face graph: faces.len() == steps.len() + 1 for paths, and
/// faces.len() == steps.len() for closed cycles.
#[derive(Debug, Clone)]
pub struct DualWalk {
    pub faces: Vec<usize>,
    pub steps: Vec<DualStep>,
}

/// Face adjacency built once per overlay.
pub struct FaceGraph {
    /// (neighbor face, step) lists per face, in deterministic order.
    adj: Vec<Vec<(usize, DualStep)>>,
}

impl FaceGraph {
    /// `crossable` lists piece cells that may be stepped through.
    pub fn build(ov: &Overlay, crossable: &BTreeSet<usize>) -> FaceGraph {
        let mut adj: Vec<Vec<(usize, DualStep)>> = alloc::vec![Vec::new(); ov.n_faces];
        for i in 0..ov.arr.len {
            let j = ov.barc_partner_of(i);
            let fi = ov.face(ov.he(Cell::BArc(i), true));
            let fj = ov.face(ov.he(Cell::BArc(j), true));
            adj[fi].push((fj, DualStep::Gap { exit_instance: i }));
        }
        for &piece in crossable {
            let f0 = ov.face(2 * piece);
            let f1 = ov.face(2 * piece + 1);
            adj[f0].push((f1, DualStep::Through { piece }));
            adj[f1].push((f0, DualStep::Through { piece }));
        }
        FaceGraph { adj }
    }

    /// Deterministic BFS path from any start face to any goal face, staying
    /// inside `allowed` (when given).  With `require_gap`, the path must
    /// cross at least one polygon edge.
    pub fn path(
        &self,
        start: &BTreeSet<usize>,
        goal: &BTreeSet<usize>,
        allowed: Option<&BTreeSet<usize>>,
        require_gap: bool,
    ) -> Option<DualWalk> {
        let n = self.adj.len();
        // state: face * (gap seen)
        let idx = |f: usize, g: bool| 2 * f + usize::from(g);
        let mut parent: Vec<Option<(usize, DualStep)>> = alloc::vec![None; 2 * n];
        let mut seen = alloc::vec![false; 2 * n];
        let mut queue = VecDeque::new();
        for &f in start {
            if allowed.map_or(true, |a| a.contains(&f)) {
                seen[idx(f, false)] = true;
                queue.push_back((f, false));
            }
        }
        let mut end = None;
        'bfs: while let Some((f, g)) = queue.pop_front() {
            if goal.contains(&f) && (!require_gap || g) {
                end = Some((f, g));
                break 'bfs;
            }
            for &(f2, step) in &self.adj[f] {
                if allowed.map_or(false, |a| !a.contains(&f2)) {
                    continue;
                }
                let g2 = g || matches!(step, DualStep::Gap { .. });
                if !seen[idx(f2, g2)] {
                    seen[idx(f2, g2)] = true;
                    parent[idx(f2, g2)] = Some((idx(f, g), step));
                    queue.push_back((f2, g2));
                }
            }
        }
        let (ef, eg) = end?;
        let mut faces = alloc::vec![ef];
        let mut steps = Vec::new();
        let mut cur = idx(ef, eg);
        while let Some((prev, step)) = parent[cur] {
            steps.push(step);
            faces.push(prev / 2);
            cur = prev;
        }
        faces.reverse();
        steps.reverse();
        Some(DualWalk { faces, steps })
    }

    /// Spanning forest plus the non-tree gap edges, for fundamental cycles
    /// within the allowed face set.
    pub fn fundamental_cycles(
        &self,
        ov: &Overlay,
        allowed: &BTreeSet<usize>,
    ) -> Vec<DualWalk> {
        let mut parent: BTreeMap<usize, (usize, DualStep)> = BTreeMap::new();
        let mut order = Vec::new();
        let mut seen = BTreeSet::new();
        for &root in allowed.iter() {
            if seen.contains(&root) {
                continue;
            }
            seen.insert(root);
            let mut queue = VecDeque::from([root]);
            while let Some(f) = queue.pop_front() {
                order.push(f);
                for &(f2, step) in &self.adj[f] {
                    if !allowed.contains(&f2) || seen.contains(&f2) {
                        continue;
                    }
                    if matches!(step, DualStep::Through { .. }) {
                        continue;
                    }
                    seen.insert(f2);
                    parent.insert(f2, (f, step));
                    queue.push_back(f2);
                }
            }
        }
        // tree path to the root as (faces, steps)
        let path_up = |mut f: usize| {
            let mut faces = alloc::vec![f];
            let mut steps = Vec::new();
            while let Some(&(p, step)) = parent.get(&f) {
                steps.push(step);
                faces.push(p);
                f = p;
            }
            (faces, steps)
        };
        let mut cycles = Vec::new();
        let mut used: BTreeSet<(usize, usize)> = BTreeSet::new();
        for &f in &order {
            for &(f2, step) in &self.adj[f] {
                let DualStep::Gap { exit_instance } = step else {
                    continue;
                };
                if !allowed.contains(&f2) {
                    continue;
                }
                let pair = (
                    exit_instance.min(ov.barc_partner_of(exit_instance)),
                    exit_instance.max(ov.barc_partner_of(exit_instance)),
                );
                if used.contains(&pair) {
                    continue;
                }
                used.insert(pair);
                // skip the tree edge itself (same gap pair)
                let gap_pair_of = |step: &DualStep| match step {
                    DualStep::Gap { exit_instance } => {
                        let a = *exit_instance;
                        let b = ov.barc_partner_of(a);
                        Some((a.min(b), a.max(b)))
                    }
                    DualStep::Through { .. } => None,
                };
                let is_tree = parent
                    .get(&f2)
                    .map(|(p, s)| *p == f && gap_pair_of(s) == Some(pair))
                    .unwrap_or(false)
                    || parent
                        .get(&f)
                        .map(|(p, s)| *p == f2 && gap_pair_of(s) == Some(pair))
                        .unwrap_or(false);
                if is_tree {
                    continue;
                }
                let (fa, sa) = path_up(f);
                let (fb, sb) = path_up(f2);
                // drop the common tail up at the root
                let mut ia = fa.len();
                let mut ib = fb.len();
                while ia > 1 && ib > 1 && fa[ia - 2] == fb[ib - 2] {
                    ia -= 1;
                    ib -= 1;
                }
                // cycle: f .. lca .. f2, then the gap edge back to f
                let mut faces = Vec::new();
                let mut steps = Vec::new();
                // f up to lca
                for k in 0..ia - 1 {
                    faces.push(fa[k]);
                    steps.push(sa[k]);
                }
                faces.push(fa[ia - 1]); // the lca
                // lca down to f2: reverse of fb[0..ib-1] with reversed steps
                for k in (0..ib - 1).rev() {
                    steps.push(reverse_step(ov, sb[k]));
                    faces.push(fb[k]);
                }
                // close with the non-tree edge from f2 back to f
                steps.push(reverse_step(
                    ov,
                    DualStep::Gap { exit_instance },
                ));
                cycles.push(DualWalk { faces, steps });
            }
        }
        cycles
    }
}

/// The same step traversed the other way.
fn reverse_step(ov: &Overlay, step: DualStep) -> DualStep {
    match step {
        DualStep::Gap { exit_instance } => DualStep::Gap {
            exit_instance: ov.barc_partner_of(exit_instance),
        },
        DualStep::Through { piece } => DualStep::Through { piece },
    }
}

/// Edge and fractional position of a gap crossing through a boundary-arc
/// instance, with the entering side.
pub fn gap_point(ov: &Overlay, instance: usize) -> (usize, Frac, bool) {
    let surface = ov.diag.surface();
    match ov.arr.pos_info[instance] {
        PosInfo::Corner(s) => {
            let (edge, positive) = surface.side_edge(s);
            let m = ov.diag.edge_counts()[edge] as i128;
            let key = if positive {
                Frac::new(-1, 2)
            } else {
                Frac::int(m).sub(Frac::new(1, 2))
            };
            (edge, key, positive)
        }
        PosInfo::Point { edge, slot, pos_occ } => {
            let key = if pos_occ {
                Frac::int(slot as i128).add(Frac::new(1, 2))
            } else {
                Frac::int(slot as i128).sub(Frac::new(1, 2))
            };
            (edge, key, pos_occ)
        }
    }
}

/// Realize a closed dual cycle as a single curve: one visit per gap step.
pub fn cycle_visits(ov: &Overlay, walk: &DualWalk, tie_base: u64) -> Vec<ProtoVisit> {
    let mut out = Vec::new();
    let mut tie = tie_base;
    for step in &walk.steps {
        if let DualStep::Gap { exit_instance } = step {
            let (edge, key, enters_pos) = gap_point(ov, *exit_instance);
            tie += 1;
            out.push(ProtoVisit {
                edge,
                key,
                tie: (6, tie),
                enters_pos,
            });
        }
    }
    out
}

/// Realize the thin doubled loop around a dual path: the boundary of a thin
/// neighborhood of the arc the path describes.  The path must cross at
/// least one polygon edge, since a component without edge crossings cannot
/// be carried by the diagram (request `require_gap` paths).
pub fn thin_loop_visits(ov: &Overlay, walk: &DualWalk) -> Result<Vec<ProtoVisit>> {
    let mut out = Vec::new();
    let mut back: Vec<ProtoVisit> = Vec::new();
    let mut tie = 0u64;
    // outward copy on its own left, return copy mirrored
    for step in &walk.steps {
        if let DualStep::Gap { exit_instance } = step {
            let (edge, key, enters) = gap_point(ov, *exit_instance);
            tie += 2;
            out.push(ProtoVisit {
                edge,
                key: key.add(Frac::new(side_sign(enters), 32)),
                tie: (7, tie),
                enters_pos: enters,
            });
            back.push(ProtoVisit {
                edge,
                key: key.add(Frac::new(side_sign(!enters), 32)),
                tie: (7, tie + 1),
                enters_pos: !enters,
            });
        }
    }
    if out.is_empty() {
        return Err(Error::Internal("thin loop path crosses no polygon edge"));
    }
    back.reverse();
    out.extend(back);
    Ok(out)
}

