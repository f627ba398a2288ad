//! Connectivity of the handle-curve graph: waves, double surgery, and the
//! inductive chain construction.
//!
//! Given tight handle curves alpha and beta with positive intersection, the
//! inner induction runs a separating curve delta through surgeries that
//! strictly drop its intersection with beta, stopping when the far side
//! becomes a handle or the intersection reaches zero.  Each surgery is one
//! of: double surgery along a linking pair of waves (drop >= 4), the
//! separating outermost wave shortcut (drop >= 1), or double surgery along
//! an outermost wave and an auxiliary arc avoiding beta (drop >= 2).

use crate::curves::{self, Library};
use crate::diagram::complex::{Cell, Overlay, Regions};
use crate::diagram::dual::{self, DualStep, FaceGraph};
use crate::diagram::moves::{self, circle_parallel_path};
use crate::diagram::{Diagram, ProtoVisit};
use crate::error::{Error, Result};
use alloc::collections::BTreeSet;
use alloc::vec::Vec;

/// An essential arc of beta on one side of delta, meeting delta exactly at
/// its endpoints.  Indices refer to one built overlay.
#[derive(Debug, Clone)]
pub struct Wave {
    /// Crossings of delta and beta bounding the arc, in beta's traversal
    /// order.
    pub start: usize,
    pub end: usize,
    /// Piece cells of the arc.
    pub pieces: BTreeSet<usize>,
    /// Positions of the endpoints in delta's cyclic crossing order.
    pub pos_on_delta: (usize, usize),
    /// Region (side of delta) containing the arc.
    pub side: usize,
    /// Index of the arc along beta's traversal.
    pub arc_index: usize,
}

/// What one inner induction step did.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurgeryKind {
    LinkingPair,
    OutermostSeparating,
    OutermostAugmented,
}

/// Record of one surgery, for verification.
#[derive(Debug, Clone, Copy)]
pub struct SurgeryStep {
    pub kind: SurgeryKind,
    pub i_before: u64,
    pub i_after: u64,
}

impl SurgeryStep {
    /// The paper's guaranteed drops per kind.
    pub fn required_drop(kind: SurgeryKind) -> u64 {
        match kind {
            SurgeryKind::LinkingPair => 4,
            SurgeryKind::OutermostAugmented => 2,
            SurgeryKind::OutermostSeparating => 1,
        }
    }

    pub fn drop_ok(&self) -> bool {
        self.i_before >= self.i_after + Self::required_drop(self.kind)
    }
}

/// Result of connecting two handle curves.
#[derive(Debug)]
pub struct HandleChain {
    /// The chain; consecutive entries are disjoint, every entry is a handle
    /// curve, and the last entry is isotopic to the requested beta.
    pub curves: Vec<Diagram>,
    /// True when the final entry is an isotopic witness rather than the
    /// very diagram passed in.
    pub end_isotopic: bool,
    /// Surgery trace of every inner induction, outer step by outer step.
    pub trace: Vec<Vec<SurgeryStep>>,
}

/// Crossings of delta and beta in cyclic order along the given component.
fn crossings_along(ov: &Overlay, comp: usize, other: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let n = ov.diag.components()[comp].len();
    for vi in 0..n {
        let chord = ov.arr.chord_of_visit[&(comp, vi)];
        for &x in &ov.arr.on_chord[chord] {
            if ov.arr.chords[ov.arr.other_chord(x, chord)].comp == other {
                out.push(x);
            }
        }
    }
    out
}

/// All waves of `beta` for the separating curve `delta` on the given side
/// region (of the cut along delta only).  Arcs are reported without
/// deduplication of parallel classes; `dedupe_waves` groups them.
pub fn find_waves(
    ov: &Overlay,
    delta_regions: &Regions,
    delta: usize,
    beta: usize,
    side: usize,
) -> Result<Vec<Wave>> {
    let along_beta = crossings_along(ov, beta, delta);
    if along_beta.is_empty() {
        return Ok(Vec::new());
    }
    let along_delta = crossings_along(ov, delta, beta);
    let pos_of = |x: usize| along_delta.iter().position(|&y| y == x);
    let mut waves = Vec::new();
    let k = along_beta.len();
    for i in 0..k {
        let start = along_beta[i];
        let end = along_beta[(i + 1) % k];
        let pieces = ov.pieces_of_arc(beta, start, end)?;
        // which side of delta the arc lies on
        let any = *pieces.iter().next().ok_or(Error::Internal("empty arc"))?;
        let region = delta_regions.face_region[ov.face(2 * any)];
        if region != side {
            continue;
        }
        let (pa, pb) = (
            pos_of(start).ok_or(Error::Internal("crossing not on delta"))?,
            pos_of(end).ok_or(Error::Internal("crossing not on delta"))?,
        );
        if !arc_is_essential(ov, delta, &pieces)? {
            continue;
        }
        waves.push(Wave {
            start,
            end,
            pieces,
            pos_on_delta: (pa, pb),
            side: region,
            arc_index: i,
        });
    }
    Ok(waves)
}

/// Does the arc avoid cutting a disk off its side?
fn arc_is_essential(ov: &Overlay, delta: usize, pieces: &BTreeSet<usize>) -> Result<bool> {
    let mut cut = ov.pieces_of_components(&BTreeSet::from([delta]));
    cut.extend(pieces.iter().copied());
    let regions = ov.regions(&cut)?;
    for r in 0..regions.count {
        if regions.chi[r] != 1 || regions.circles[r].len() != 1 {
            continue;
        }
        // a disk region bounded by the arc and a delta piece means the arc
        // is boundary-parallel
        let circle = &regions.circles[r][0];
        let mut touches_arc = false;
        for &h in &circle.entries {
            if pieces.contains(&(h / 2)) {
                touches_arc = true;
            }
        }
        if touches_arc {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Group waves into parallel classes and keep the least arc index of each.
pub fn dedupe_waves(ov: &Overlay, delta: usize, waves: &[Wave]) -> Result<Vec<usize>> {
    let n = waves.len();
    let mut uf: Vec<usize> = (0..n).collect();
    fn find(uf: &mut Vec<usize>, x: usize) -> usize {
        let mut r = x;
        while uf[r] != r {
            r = uf[r];
        }
        let mut c = x;
        while uf[c] != c {
            let nx = uf[c];
            uf[c] = r;
            c = nx;
        }
        r
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if waves[i].side != waves[j].side {
                continue;
            }
            if parallel_arcs(ov, delta, &waves[i], &waves[j])? {
                let (a, b) = (find(&mut uf, i), find(&mut uf, j));
                if a != b {
                    uf[a] = b;
                }
            }
        }
    }
    let mut reps: alloc::collections::BTreeMap<usize, usize> = alloc::collections::BTreeMap::new();
    for i in 0..n {
        let r = find(&mut uf, i);
        let e = reps.entry(r).or_insert(i);
        if waves[i].arc_index < waves[*e].arc_index {
            *e = i;
        }
    }
    Ok(reps.into_values().collect())
}

/// Two arcs are parallel when they cobound a rectangle with two delta
/// pieces.
fn parallel_arcs(ov: &Overlay, delta: usize, a: &Wave, b: &Wave) -> Result<bool> {
    let mut cut = ov.pieces_of_components(&BTreeSet::from([delta]));
    cut.extend(a.pieces.iter().copied());
    cut.extend(b.pieces.iter().copied());
    let regions = ov.regions(&cut)?;
    'regions: for r in 0..regions.count {
        if regions.chi[r] != 1 || regions.circles[r].len() != 1 {
            continue;
        }
        let circle = &regions.circles[r][0];
        if circle.corners.len() != 4 {
            continue;
        }
        // need both arcs fully on the circle
        let mut on_a = false;
        let mut on_b = false;
        for &h in &circle.entries {
            let cell = h / 2;
            if a.pieces.contains(&cell) {
                on_a = true;
            } else if b.pieces.contains(&cell) {
                on_b = true;
            } else if let Cell::Piece { chord, .. } = ov.cell_of(cell) {
                if ov.arr.chords[chord].comp != delta {
                    continue 'regions;
                }
            }
        }
        if on_a && on_b {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Do two waves link: same side, disjoint, endpoints interleaved along
/// delta's cyclic crossing order.
pub fn linking(w1: &Wave, w2: &Wave, delta_crossings: usize) -> bool {
    if w1.side != w2.side {
        return false;
    }
    if w1.start == w2.start || w1.start == w2.end || w1.end == w2.start || w1.end == w2.end {
        return false;
    }
    let n = delta_crossings;
    let between = |x: usize, a: usize, b: usize| {
        let rel_x = (x + n - a) % n;
        let rel_b = (b + n - a) % n;
        0 < rel_x && rel_x < rel_b
    };
    let (a1, b1) = w1.pos_on_delta;
    let (a2, b2) = w2.pos_on_delta;
    between(a2, a1, b1) != between(b2, a1, b1)
}

/// Realize the non-delta-parallel boundary component of a neighborhood of
/// delta together with the cut pieces of one or two waves; this is the
/// double-surgery output (or the outermost separating shortcut).
fn surgery_boundary(
    diag: &Diagram,
    ov: &Overlay,
    delta: usize,
    extra_pieces: &BTreeSet<usize>,
    include_delta: bool,
) -> Result<Vec<Diagram>> {
    let mut cut = if include_delta {
        ov.pieces_of_components(&BTreeSet::from([delta]))
    } else {
        BTreeSet::new()
    };
    cut.extend(extra_pieces.iter().copied());
    let regions = ov.regions(&cut)?;
    let mut out = Vec::new();
    for r in 0..regions.count {
        for circle in &regions.circles[r] {
            let proto = circle_parallel_path(ov, circle)?;
            if proto.is_empty() {
                continue;
            }
            let cand = Diagram::from_proto(diag.surface(), alloc::vec![proto]);
            let (cand, vanished) = moves::remove_spurs(&cand)?;
            if vanished.is_empty() && curves::is_essential_single(&cand)? {
                out.push(cand);
            }
        }
    }
    Ok(out)
}

/// Configuration of one inner-induction working state: the diagram holds
/// beta, the previous delta (for side identification), and the current
/// delta.
struct InnerState {
    diag: Diagram,
    beta: usize,
    prev: usize,
    cur: usize,
}

impl InnerState {
    fn overlay(&self) -> Result<Overlay> {
        Overlay::build(&self.diag)
    }

    fn crossings(&self) -> Result<u64> {
        let ov = self.overlay()?;
        Ok(moves::crossings_between(&ov, self.cur, self.beta) as u64)
    }

    /// The side of the current delta away from the previous one, with the
    /// regions it was computed from.
    fn far_side(&self, ov: &Overlay) -> Result<(Regions, usize)> {
        let cut = ov.pieces_of_components(&BTreeSet::from([self.cur]));
        let regions = ov.regions(&cut)?;
        if regions.count != 2 {
            return Err(Error::Internal("delta is not separating"));
        }
        let prev_region = ov.region_of_component(&regions, self.prev);
        let far = 1 - prev_region;
        Ok((regions, far))
    }
}

/// Install a freshly built curve as the new current delta: it is tightened
/// to be disjoint from the old delta and tight against beta in its
/// complement, then the roles rotate (old prev is dropped).
fn install_delta(state: InnerState, new_curve: Diagram) -> Result<InnerState> {
    let with_new = state.diag.merge(&new_curve);
    let new_idx = with_new.component_count() - 1;
    let mut d = with_new;
    // alternate until the new curve is disjoint from the old delta and
    // bigon-free against beta away from it
    let budget = 4 * d.size() + 16;
    for _ in 0..budget {
        d = moves::tighten_pair(&d, new_idx, state.cur, new_idx, &BTreeSet::new())?;
        d = moves::tighten_pair(
            &d,
            new_idx,
            state.beta,
            new_idx,
            &BTreeSet::from([state.cur]),
        )?;
        let ov = Overlay::build(&d)?;
        if moves::crossings_between(&ov, new_idx, state.cur) == 0 {
            // restricted tightening reaches true tightness once the new
            // curve avoids the old delta (no bigon can trap old-delta
            // strands when old delta and beta are tight)
            let unrestricted =
                moves::tighten_pair(&d, new_idx, state.beta, new_idx, &BTreeSet::new())?;
            let ov2 = Overlay::build(&unrestricted)?;
            if moves::crossings_between(&ov2, new_idx, state.beta)
                != moves::crossings_between(&ov, new_idx, state.beta)
            {
                return Err(Error::Internal(
                    "restricted tightening missed a bigon",
                ));
            }
            // keep: [beta, old cur (as prev), new]
            let keep = BTreeSet::from([state.beta, state.cur, new_idx]);
            let d2 = d.restrict(&keep);
            let find = |orig: usize| keep.iter().position(|&c| c == orig).unwrap();
            return Ok(InnerState {
                diag: d2,
                beta: find(state.beta),
                prev: find(state.cur),
                cur: find(new_idx),
            });
        }
    }
    Err(Error::Internal("new delta never separated from the old"))
}

/// One inner induction: from a handle curve alpha (tight against beta,
/// i > 0), find a handle curve gamma with i(gamma, alpha) = 0 and
/// i(gamma, beta) < i(alpha, beta).
fn find_gamma(
    lib: &Library,
    alpha: &Diagram,
    beta: &Diagram,
    trace: &mut Vec<SurgeryStep>,
) -> Result<Diagram> {
    // joint tight picture of alpha and beta
    let joint = alpha.merge(beta);
    let joint = moves::tighten_pair(&joint, 0, 1, 1, &BTreeSet::new())?;
    // delta_0: parallel copy of alpha on its non-handle side, already tight
    // against beta because it mirrors alpha
    let ov = Overlay::build(&joint)?;
    let cut = ov.pieces_of_components(&BTreeSet::from([0]));
    let regions = ov.regions(&cut)?;
    if regions.count != 2 {
        return Err(Error::NotHandleCurve);
    }
    let handle_side = (0..2)
        .find(|&r| regions.genus(r) == 1 && regions.boundary_count(r) == 1)
        .ok_or(Error::NotHandleCurve)?;
    let off_side = 1 - handle_side;
    let circle = regions.circles[off_side]
        .iter()
        .find(|c| c.corners.is_empty())
        .ok_or(Error::Internal("no parallel circle"))?;
    let proto = circle_parallel_path(&ov, circle)?;
    let with_delta = joint.with_added(alloc::vec![proto]);
    // components: 0 = alpha (the initial prev), 1 = beta, 2 = delta_0
    let mut state = InnerState {
        diag: with_delta,
        beta: 1,
        prev: 0,
        cur: 2,
    };

    let mut last = state.crossings()?;
    let budget = 2 * last as usize + 8;
    for _ in 0..budget {
        let ov = state.overlay()?;
        let (dregions, far) = state.far_side(&ov)?;
        // termination: the far side is a handle
        if dregions.genus(far) == 1 && dregions.boundary_count(far) == 1 {
            return extract_current(&state);
        }
        let i_cur = moves::crossings_between(&ov, state.cur, state.beta) as u64;
        if i_cur == 0 {
            return handle_inside(lib, &state, &ov, &dregions, far);
        }
        // surgery
        let waves = find_waves(&ov, &dregions, state.cur, state.beta, far)?;
        let delta_deg = crossings_along(&ov, state.cur, state.beta).len();
        let mut pair = None;
        'outer: for i in 0..waves.len() {
            for j in (i + 1)..waves.len() {
                if linking(&waves[i], &waves[j], delta_deg) {
                    pair = Some((i, j));
                    break 'outer;
                }
            }
        }
        let (kind, new_curve) = if let Some((i, j)) = pair {
            let mut extra = waves[i].pieces.clone();
            extra.extend(waves[j].pieces.iter().copied());
            let cands = surgery_boundary(&state.diag, &ov, state.cur, &extra, true)?;
            let cand = pick_new_delta(lib, &state, cands)?;
            (SurgeryKind::LinkingPair, cand)
        } else {
            outermost_step(lib, &state, &ov, &dregions, far, &waves)?
        };
        state = install_delta(state, new_curve)?;
        let i_after = state.crossings()?;
        let step = SurgeryStep {
            kind,
            i_before: i_cur,
            i_after,
        };
        if !step.drop_ok() {
            return Err(Error::Internal("surgery drop below the guaranteed bound"));
        }
        trace.push(step);
        if i_after >= last {
            return Err(Error::Internal("intersection with beta did not decrease"));
        }
        last = i_after;
    }
    Err(Error::Internal("inner induction budget exceeded"))
}

/// Among surgery candidates, the new delta is the essential separating one
/// not isotopic to the current delta.
fn pick_new_delta(
    lib: &Library,
    state: &InnerState,
    cands: Vec<Diagram>,
) -> Result<Diagram> {
    let cur = state.diag.restrict(&BTreeSet::from([state.cur]));
    let mut report = alloc::string::String::new();
    for cand in cands {
        if curves::is_isotopic(&cand, &cur)? {
            report.push_str("[isotopic-to-cur]");
            continue;
        }
        if !curves::is_separating(lib, &cand)? {
            report.push_str("[non-separating]");
            continue;
        }
        return Ok(cand);
    }
    Err(Error::BadMove(alloc::format!("pick_new_delta: no candidate: {report}")))
}

fn extract_current(state: &InnerState) -> Result<Diagram> {
    let d = state.diag.restrict(&BTreeSet::from([state.cur]));
    let (d, vanished) = moves::remove_spurs(&d)?;
    if !vanished.is_empty() {
        return Err(Error::Internal("current delta vanished"));
    }
    Ok(d)
}

/// i(delta, beta) = 0: take a handle curve inside the far side, away from
/// beta, built from a nonseparating dual cycle and a partner crossing it
/// once.
fn handle_inside(
    lib: &Library,
    state: &InnerState,
    ov: &Overlay,
    dregions: &Regions,
    far: usize,
) -> Result<Diagram> {
    // components of the far side minus beta
    let all: BTreeSet<usize> = (0..state.diag.component_count()).collect();
    let cut_all = ov.pieces_of_components(&all);
    let full = ov.regions(&cut_all)?;
    // candidate regions: inside `far` (their faces are in the far side)
    let mut cands: Vec<usize> = (0..full.count)
        .filter(|&r| {
            full.face_region
                .iter()
                .enumerate()
                .any(|(f, &fr)| fr == r && dregions.face_region[f] == far)
        })
        .collect();
    cands.sort_by_key(|&r| (-(full.genus(r)), r));
    for region in cands {
        if full.genus(region) < 1 {
            continue;
        }
        let faces: BTreeSet<usize> = (0..full.face_region.len())
            .filter(|&f| full.face_region[f] == region)
            .collect();
        if let Ok(h) = handle_in_faces(lib, state, &faces) {
            return Ok(h);
        }
    }
    Err(Error::Internal("no handle curve found in the far side"))
}

/// Build a handle curve from a nonseparating cycle in the face set and a
/// partner cycle crossing it once.
fn handle_in_faces(
    lib: &Library,
    state: &InnerState,
    faces: &BTreeSet<usize>,
) -> Result<Diagram> {
    let ov = Overlay::build(&state.diag)?;
    let graph = FaceGraph::build(&ov, &BTreeSet::new());
    let cycles = graph.fundamental_cycles(&ov, faces);
    for cycle in &cycles {
        let proto = dual::cycle_visits(&ov, cycle, 0);
        if proto.is_empty() {
            continue;
        }
        let x = Diagram::from_proto(state.diag.surface(), alloc::vec![proto.clone()]);
        if x.validate().is_err() {
            continue;
        }
        let (x_red, vanished) = moves::remove_spurs(&x)?;
        if !vanished.is_empty() || !curves::is_essential_single(&x_red)? {
            continue;
        }
        if curves::is_separating(lib, &x_red)? {
            continue;
        }
        // partner: add x into the working diagram, find a crossing partner
        let with_x = state.diag.with_added(alloc::vec![proto]);
        let xi = with_x.component_count() - 1;
        if let Ok(h) = handle_from_partner(lib, &with_x, xi) {
            // the handle must avoid beta and the current delta
            let beta = state.diag.restrict(&BTreeSet::from([state.beta]));
            let cur = state.diag.restrict(&BTreeSet::from([state.cur]));
            if curves::intersection_of_diagrams(&h, &beta)? == 0
                && curves::intersection_of_diagrams(&h, &cur)? == 0
                && curves::is_handle_curve(lib, &h)?
            {
                return Ok(h);
            }
        }
    }
    Err(Error::Internal("no handle from dual cycles"))
}

/// Given the working diagram with a nonseparating curve x at index `xi`,
/// find a partner cycle crossing x exactly once and return the boundary of
/// a neighborhood of the pair.
fn handle_from_partner(lib: &Library, diag: &Diagram, xi: usize) -> Result<Diagram> {
    let ov = Overlay::build(diag)?;
    let all: BTreeSet<usize> = (0..diag.component_count()).collect();
    let cut = ov.pieces_of_components(&all);
    // pick a piece of x and connect its two sides without crossing anything
    let x_pieces = ov.pieces_of_components(&BTreeSet::from([xi]));
    let graph = FaceGraph::build(&ov, &BTreeSet::new());
    let regions = ov.regions(&cut)?;
    for &piece in &x_pieces {
        let f0 = ov.face(2 * piece);
        let f1 = ov.face(2 * piece + 1);
        let region = regions.face_region[f0];
        if regions.face_region[f1] != region {
            continue;
        }
        let faces: BTreeSet<usize> = (0..regions.face_region.len())
            .filter(|&f| regions.face_region[f] == region)
            .collect();
        let Some(path) = graph.path(
            &BTreeSet::from([f0]),
            &BTreeSet::from([f1]),
            Some(&faces),
            true,
        ) else {
            continue;
        };
        let mut proto = dual::cycle_visits(&ov, &path, 1000);
        if proto.is_empty() {
            continue;
        }
        // close through the x piece: the chord from the last gap point to
        // the first crosses x there
        proto.rotate_left(0);
        let with_y = diag.with_added(alloc::vec![proto]);
        let yi = with_y.component_count() - 1;
        if with_y.validate().is_err() {
            continue;
        }
        let ovy = Overlay::build(&with_y)?;
        if moves::crossings_between(&ovy, xi, yi) != 1 {
            continue;
        }
        // neighborhood boundary of x and y: one circle, the handle curve
        let cands =
            curves::nbhd_boundary_of_components(&with_y, &BTreeSet::from([xi, yi]))?;
        for cand in cands {
            let (cand, vanished) = moves::remove_spurs(&cand)?;
            if vanished.is_empty()
                && curves::is_essential_single(&cand)?
                && curves::is_handle_curve(lib, &cand)?
            {
                return Ok(cand);
            }
        }
    }
    Err(Error::Internal("no partner cycle for the handle"))
}

/// The outermost wave step: either the separating shortcut or the augmented
/// double surgery with an auxiliary arc avoiding beta.
fn outermost_step(
    lib: &Library,
    state: &InnerState,
    ov: &Overlay,
    dregions: &Regions,
    far: usize,
    waves: &[Wave],
) -> Result<(SurgeryKind, Diagram)> {
    if waves.is_empty() {
        return Err(Error::NoWaveFound);
    }
    let along_delta = crossings_along(ov, state.cur, state.beta);
    let n = along_delta.len();
    // a wave is outermost when one delta interval between its endpoints is
    // free of crossings
    let mut outermost: Option<(&Wave, usize, usize)> = None;
    'findw: for w in waves {
        let (a, b) = w.pos_on_delta;
        for (from, to) in [(a, b), (b, a)] {
            if (to + n - from) % n == 1 {
                outermost = Some((w, from, to));
                break 'findw;
            }
        }
    }
    let (w, from_pos, to_pos) =
        outermost.ok_or(Error::Internal("no outermost wave despite no linking pair"))?;

    // the empty delta arc runs from crossing along_delta[from] to [to]
    let delta_arc = ov.pieces_of_arc(state.cur, along_delta[from_pos], along_delta[to_pos])?;

    // candidate separating shortcut: boundary of the closed curve made of
    // the wave and the empty delta arc
    let mut loop_pieces = w.pieces.clone();
    loop_pieces.extend(delta_arc.iter().copied());
    let closed_regions = {
        let regions = ov.regions(&loop_pieces)?;
        regions.count
    };
    if closed_regions == 2 {
        // separating: realize the parallel copy on the far (T) side
        let regions = ov.regions(&loop_pieces)?;
        for r in 0..regions.count {
            for circle in &regions.circles[r] {
                // the copy whose delta-arc entries face the T side
                let mut on_far = false;
                for &h in &circle.entries {
                    if delta_arc.contains(&(h / 2))
                        && dregions.face_region[ov.face(h)] == far
                    {
                        on_far = true;
                    }
                }
                if !on_far {
                    continue;
                }
                let proto = circle_parallel_path(ov, circle)?;
                if proto.is_empty() {
                    continue;
                }
                let cand = Diagram::from_proto(state.diag.surface(), alloc::vec![proto]);
                let (cand, vanished) = moves::remove_spurs(&cand)?;
                if !vanished.is_empty() || !curves::is_essential_single(&cand)? {
                    continue;
                }
                if curves::is_separating(lib, &cand)? {
                    return Ok((SurgeryKind::OutermostSeparating, cand));
                }
            }
        }
        return Err(Error::Internal("separating shortcut candidate not found"));
    }

    // augmented case: auxiliary thin loop crossing the empty delta arc once
    // and the rest of delta once, avoiding beta
    let aux = auxiliary_loop(state, ov, dregions, far, &delta_arc)?;
    let mut extra = w.pieces.clone();
    let with_aux = state.diag.with_added(alloc::vec![aux]);
    let ov2 = Overlay::build(&with_aux)?;
    // re-locate the wave pieces and delta in the rebuilt overlay: component
    // indices are stable under with_added
    let aux_idx = with_aux.component_count() - 1;
    extra = relocate_pieces(ov, &ov2, &extra)?;
    extra.extend(ov2.pieces_of_components(&BTreeSet::from([aux_idx])));
    let cands = surgery_boundary(&with_aux, &ov2, state.cur, &extra, true)?;
    let cand = pick_new_delta(lib, state, cands)?;
    Ok((SurgeryKind::OutermostAugmented, cand))
}

/// Map piece cells across a rebuild of the same diagram (components and
/// visit structure unchanged, crossings re-derived).  Piece granularity can
/// change, so map via (chord, covered crossings) spans.
fn relocate_pieces(
    old: &Overlay,
    new: &Overlay,
    pieces: &BTreeSet<usize>,
) -> Result<BTreeSet<usize>> {
    // the wave arc is a maximal run between two delta crossings; map by
    // walking the same component visits in the new overlay and taking the
    // pieces between the corresponding crossings
    // Here we use that chords are identified by (component, visit index).
    let mut out = BTreeSet::new();
    for &cell in pieces {
        let Cell::Piece { chord, seg } = old.cell_of(cell) else {
            continue;
        };
        let c = &old.arr.chords[chord];
        let new_chord = new.arr.chord_of_visit[&(c.comp, c.visit)];
        // map by crossing span: pieces of the old chord delimited by
        // crossings with the same chord pairs
        let old_xs = &old.arr.on_chord[chord];
        let new_xs = &new.arr.on_chord[new_chord];
        // the seg-th piece lies after old crossing seg-1 and before seg;
        // find the matching span in the new chord by chord-pair identity
        let old_before = if seg == 0 {
            None
        } else {
            Some(chord_pair(old, chord, old_xs[seg - 1]))
        };
        let old_after = if seg == old_xs.len() {
            None
        } else {
            Some(chord_pair(old, chord, old_xs[seg]))
        };
        let find_new = |pair: &Option<(usize, usize, usize)>| -> Option<usize> {
            pair.as_ref().and_then(|p| {
                new_xs
                    .iter()
                    .position(|&x| chord_pair(new, new_chord, x) == *p)
            })
        };
        let lo = match &old_before {
            None => 0,
            Some(_) => find_new(&old_before).map(|k| k + 1).unwrap_or(0),
        };
        let hi = match &old_after {
            None => new_xs.len(),
            Some(_) => find_new(&old_after).unwrap_or(new_xs.len()),
        };
        for seg2 in lo..=hi {
            out.insert(new.cell_id(Cell::Piece {
                chord: new_chord,
                seg: seg2,
            }));
        }
    }
    Ok(out)
}

fn chord_pair(ov: &Overlay, chord: usize, crossing: usize) -> (usize, usize, usize) {
    let other = ov.arr.other_chord(crossing, chord);
    let c = &ov.arr.chords[other];
    (c.comp, c.visit, 0)
}

/// Thin loop realizing the auxiliary arc of the augmented outermost case:
/// crosses the empty delta arc once and the rest of delta once, stays in
/// one beta-free component of the far side.
fn auxiliary_loop(
    state: &InnerState,
    ov: &Overlay,
    dregions: &Regions,
    far: usize,
    delta_arc: &BTreeSet<usize>,
) -> Result<Vec<ProtoVisit>> {
    let delta_pieces = ov.pieces_of_components(&BTreeSet::from([state.cur]));
    let mut cut = delta_pieces.clone();
    cut.extend(ov.pieces_of_components(&BTreeSet::from([state.beta])));
    let tb_regions = ov.regions(&cut)?;
    let graph = FaceGraph::build(ov, &BTreeSet::new());
    let rest: BTreeSet<usize> = delta_pieces
        .iter()
        .copied()
        .filter(|p| !delta_arc.contains(p))
        .collect();
    for &entry in delta_arc {
        for h_in in [2 * entry, 2 * entry + 1] {
            let f_in = ov.face(h_in);
            if dregions.face_region[f_in] != far {
                continue;
            }
            let comp_region = tb_regions.face_region[f_in];
            let allowed: BTreeSet<usize> = (0..tb_regions.face_region.len())
                .filter(|&x| tb_regions.face_region[x] == comp_region)
                .collect();
            // inside faces adjacent to a rest piece within this component
            let mut goals: BTreeSet<usize> = BTreeSet::new();
            let mut exit_of: alloc::collections::BTreeMap<usize, usize> =
                alloc::collections::BTreeMap::new();
            for &p in &rest {
                for hh in [2 * p, 2 * p + 1] {
                    let f = ov.face(hh);
                    if allowed.contains(&f) {
                        goals.insert(f);
                        exit_of.entry(f).or_insert(p);
                    }
                }
            }
            if goals.is_empty() {
                continue;
            }
            // the inner path stays in the component (gap steps only) and
            // must cross an edge so the thin loop is representable
            let Some(inner) = graph.path(
                &BTreeSet::from([f_in]),
                &goals,
                Some(&allowed),
                true,
            ) else {
                continue;
            };
            let f_end = *inner.faces.last().unwrap();
            let exit = exit_of[&f_end];
            // assemble: poke in through the entry, walk, poke out
            let h_out_entry = ov.twin(h_in);
            let exit_h_in = if ov.face(2 * exit) == f_end {
                2 * exit
            } else {
                2 * exit + 1
            };
            let mut faces = alloc::vec![ov.face(h_out_entry)];
            faces.extend(inner.faces.iter().copied());
            faces.push(ov.face(ov.twin(exit_h_in)));
            let mut steps = alloc::vec![DualStep::Through { piece: entry }];
            steps.extend(inner.steps.iter().copied());
            steps.push(DualStep::Through { piece: exit });
            let walk = dual::DualWalk { faces, steps };
            return dual::thin_loop_visits(ov, &walk);
        }
    }
    Err(Error::Internal("no auxiliary arc found"))
}

/// Connect two handle curves by a chain of handle curves with disjoint
/// consecutive entries (the Proposition of the handle-graph section).
pub fn handle_connect(
    lib: &Library,
    alpha: &Diagram,
    beta: &Diagram,
) -> Result<HandleChain> {
    if lib.surface().genus() < 3 {
        return Err(Error::GenusTooSmall {
            genus: lib.surface().genus(),
            needed: 3,
        });
    }
    if !curves::is_handle_curve(lib, alpha)? || !curves::is_handle_curve(lib, beta)? {
        return Err(Error::NotHandleCurve);
    }
    let mut curves_out = Vec::new();
    let mut trace = Vec::new();
    let mut current = alpha.clone();
    let budget = 64 + curves::intersection_of_diagrams(alpha, beta)? as usize;
    for _ in 0..budget {
        let i = curves::intersection_of_diagrams(&current, beta)?;
        if i == 0 {
            let isotopic = curves::is_isotopic(&current, beta)?;
            curves_out.push(current);
            if !isotopic {
                curves_out.push(beta.clone());
            }
            return Ok(HandleChain {
                curves: curves_out,
                end_isotopic: isotopic,
                trace,
            });
        }
        let mut steps = Vec::new();
        let gamma = find_gamma(lib, &current, beta, &mut steps)?;
        // postconditions of the inner induction
        if curves::intersection_of_diagrams(&gamma, &current)? != 0 {
            return Err(Error::Internal("gamma meets alpha"));
        }
        if curves::intersection_of_diagrams(&gamma, beta)? >= i {
            return Err(Error::Internal("gamma does not reduce the distance"));
        }
        if !curves::is_handle_curve(lib, &gamma)? {
            return Err(Error::Internal("gamma is not a handle curve"));
        }
        trace.push(steps);
        curves_out.push(current);
        current = gamma;
    }
    Err(Error::Internal("outer induction budget exceeded"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{realize, Caps, CurveSpec};
    use crate::surface::Surface;

    fn setup() -> (Library, Caps) {
        (
            Library::build(Surface::new(3).unwrap()).unwrap(),
            Caps::default(),
        )
    }

    fn verify_chain(lib: &Library, chain: &HandleChain, beta: &Diagram) {
        for c in &chain.curves {
            assert!(curves::is_handle_curve(lib, c).unwrap());
        }
        for w in chain.curves.windows(2) {
            assert_eq!(curves::intersection_of_diagrams(&w[0], &w[1]).unwrap(), 0);
        }
        let last = chain.curves.last().unwrap();
        assert!(curves::is_isotopic(last, beta).unwrap());
        for steps in &chain.trace {
            for s in steps {
                assert!(s.drop_ok(), "drop violated: {s:?}");
                assert!(s.i_after < s.i_before);
            }
        }
    }

    #[test]
    fn identity_chain() {
        let (lib, _) = setup();
        let h1 = lib.get("h1").unwrap();
        let chain = handle_connect(&lib, h1, h1).unwrap();
        assert_eq!(chain.curves.len(), 1);
        assert!(chain.end_isotopic);
    }

    #[test]
    fn disjoint_chain() {
        let (lib, _) = setup();
        let h1 = lib.get("h1").unwrap();
        let h2 = lib.get("h2").unwrap();
        let chain = handle_connect(&lib, h1, h2).unwrap();
        assert_eq!(chain.curves.len(), 2);
        verify_chain(&lib, &chain, h2);
    }

    #[test]
    fn genus_two_rejected() {
        let lib2 = Library::build(Surface::new(2).unwrap()).unwrap();
        let h1 = lib2.get("h1").unwrap().clone();
        let h2 = lib2.get("h2").unwrap().clone();
        assert!(matches!(
            handle_connect(&lib2, &h1, &h2),
            Err(Error::GenusTooSmall { .. })
        ));
    }

    #[test]
    fn twisted_pair_chain() {
        let (lib, caps) = setup();
        let h1 = lib.get("h1").unwrap().clone();
        // beta: h2 dragged across handle 1 by twisting about the chain
        // curve c1, which meets both handle boundaries
        let beta = realize(&lib, &caps, &CurveSpec::twisted("h2", &[("c1", 1)])).unwrap();
        let i = curves::intersection_of_diagrams(&h1, &beta).unwrap();
        assert!(i > 0, "test setup: expected positive intersection");
        let chain = handle_connect(&lib, &h1, &beta).unwrap();
        assert!(chain.curves.len() >= 2);
        verify_chain(&lib, &chain, &beta);
    }
}
