//! The overlay complex: disk faces of the arrangement, the gluing across
//! polygon sides, and complement regions relative to a cut set of strand
//! pieces.
//!
//! Cutting the surface along a subset of the curves (or arcs of curves)
//! decomposes it into regions.  Euler characteristics come from compactly
//! supported additivity: each face contributes +1, each 1-cell in the
//! complement -1, each 0-cell in the complement +1.  Boundary circles are
//! traced by stitching disk face cycles across glued arcs and uncut pieces.

use super::arrangement::{Arrangement, PosInfo};
use super::Diagram;
use crate::error::{Error, Result};
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

/// A 1-cell of the disk arrangement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Cell {
    /// Boundary arc from cyclic position i to i + 1.
    BArc(usize),
    /// Segment k of chord c (split at its crossings).
    Piece { chord: usize, seg: usize },
}

/// Vertices of the disk arrangement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Vertex {
    Bnd(usize),
    Cross(usize),
}

/// The full overlay complex of a diagram.
pub struct Overlay {
    pub diag: Diagram,
    pub arr: Arrangement,
    n_barcs: usize,
    piece_offset: Vec<usize>,
    n_cells: usize,
    /// next half-edge in the face cycle (faces on the left, ccw)
    next: Vec<u32>,
    face_of: Vec<u32>,
    pub n_faces: usize,
    outer_face: usize,
    /// partner boundary arc under the side gluing
    barc_partner: Vec<usize>,
    /// components owning each chord
    chord_comp: Vec<usize>,
    /// traversal successor of each piece along its strand
    piece_succ: Vec<usize>,
    piece_pred: Vec<usize>,
}

pub type HalfEdge = usize;

impl Overlay {
    pub fn cell_id(&self, c: Cell) -> usize {
        match c {
            Cell::BArc(i) => i,
            Cell::Piece { chord, seg } => self.n_barcs + self.piece_offset[chord] + seg,
        }
    }

    pub fn cell_of(&self, id: usize) -> Cell {
        if id < self.n_barcs {
            Cell::BArc(id)
        } else {
            let off = id - self.n_barcs;
            let chord = match self.piece_offset.binary_search(&off) {
                Ok(mut k) => {
                    while k + 1 < self.piece_offset.len() && self.piece_offset[k + 1] == off {
                        k += 1;
                    }
                    k
                }
                Err(k) => k - 1,
            };
            Cell::Piece {
                chord,
                seg: off - self.piece_offset[chord],
            }
        }
    }

    pub fn he(&self, c: Cell, fwd: bool) -> HalfEdge {
        2 * self.cell_id(c) + usize::from(!fwd)
    }

    pub fn he_cell(&self, h: HalfEdge) -> Cell {
        self.cell_of(h / 2)
    }

    pub fn he_fwd(&self, h: HalfEdge) -> bool {
        h % 2 == 0
    }

    pub fn twin(&self, h: HalfEdge) -> HalfEdge {
        h ^ 1
    }

    pub fn face(&self, h: HalfEdge) -> usize {
        self.face_of[h] as usize
    }

    pub fn next_in_face(&self, h: HalfEdge) -> HalfEdge {
        self.next[h] as usize
    }

    pub fn outer_face(&self) -> usize {
        self.outer_face
    }

    /// Partner boundary-arc instance under the side gluing.
    pub fn barc_partner_of(&self, i: usize) -> usize {
        self.barc_partner[i]
    }

    pub fn pieces_of_chord(&self, chord: usize) -> usize {
        self.arr.on_chord[chord].len() + 1
    }

    /// Head vertex of a directed half-edge.
    pub fn head(&self, h: HalfEdge) -> Vertex {
        let fwd = self.he_fwd(h);
        match self.he_cell(h) {
            Cell::BArc(i) => {
                if fwd {
                    Vertex::Bnd((i + 1) % self.arr.len)
                } else {
                    Vertex::Bnd(i)
                }
            }
            Cell::Piece { chord, seg } => {
                let xs = &self.arr.on_chord[chord];
                if fwd {
                    if seg == xs.len() {
                        Vertex::Bnd(self.arr.chords[chord].to)
                    } else {
                        Vertex::Cross(xs[seg])
                    }
                } else if seg == 0 {
                    Vertex::Bnd(self.arr.chords[chord].from)
                } else {
                    Vertex::Cross(xs[seg - 1])
                }
            }
        }
    }

    pub fn build(diag: &Diagram) -> Result<Overlay> {
        let arr = Arrangement::build(diag)?;
        let n_barcs = arr.len;
        let mut piece_offset = Vec::with_capacity(arr.chords.len());
        let mut acc = 0;
        for xs in &arr.on_chord {
            piece_offset.push(acc);
            acc += xs.len() + 1;
        }
        let n_cells = n_barcs + acc;

        let mut ov = Overlay {
            diag: diag.clone(),
            arr,
            n_barcs,
            piece_offset,
            n_cells,
            next: Vec::new(),
            face_of: Vec::new(),
            n_faces: 0,
            outer_face: 0,
            barc_partner: Vec::new(),
            chord_comp: Vec::new(),
            piece_succ: Vec::new(),
            piece_pred: Vec::new(),
        };
        ov.chord_comp = ov.arr.chords.iter().map(|c| c.comp).collect();
        ov.build_rotations()?;
        ov.build_faces()?;
        ov.build_gluing()?;
        ov.build_strand_order();
        Ok(ov)
    }

    fn build_rotations(&mut self) -> Result<()> {
        // rotation lists: ccw-ordered outgoing half-edges per vertex
        let len = self.arr.len;
        let mut rotations: BTreeMap<Vertex, Vec<HalfEdge>> = BTreeMap::new();

        // chord end outgoing half-edges per boundary position
        let mut chord_end: BTreeMap<usize, HalfEdge> = BTreeMap::new();
        for (ci, chord) in self.arr.chords.iter().enumerate() {
            let last = self.arr.on_chord[ci].len();
            let out_from = self.he(Cell::Piece { chord: ci, seg: 0 }, true);
            let out_to = self.he(
                Cell::Piece {
                    chord: ci,
                    seg: last,
                },
                false,
            );
            if chord_end.insert(chord.from, out_from).is_some() {
                return Err(Error::Internal("two chords share a boundary point"));
            }
            if chord_end.insert(chord.to, out_to).is_some() {
                return Err(Error::Internal("two chords share a boundary point"));
            }
        }

        for pos in 0..len {
            let fwd_arc = self.he(Cell::BArc(pos), true);
            let bwd_prev = self.he(Cell::BArc((pos + len - 1) % len), false);
            let mut rot = alloc::vec![fwd_arc];
            match self.arr.pos_info[pos] {
                PosInfo::Corner(_) => {}
                PosInfo::Point { .. } => {
                    let h = *chord_end
                        .get(&pos)
                        .ok_or(Error::Internal("point without chord end"))?;
                    rot.push(h);
                }
            }
            rot.push(bwd_prev);
            rotations.insert(Vertex::Bnd(pos), rot);
        }

        for (xi, x) in self.arr.crossings.iter().enumerate() {
            let k1 = self.arr.on_chord[x.c1]
                .iter()
                .position(|&c| c == xi)
                .ok_or(Error::Internal("crossing missing on chord"))?;
            let k2 = self.arr.on_chord[x.c2]
                .iter()
                .position(|&c| c == xi)
                .ok_or(Error::Internal("crossing missing on chord"))?;
            let to_c1_from = self.he(Cell::Piece { chord: x.c1, seg: k1 }, false);
            let to_c1_to = self.he(
                Cell::Piece {
                    chord: x.c1,
                    seg: k1 + 1,
                },
                true,
            );
            let to_c2_from = self.he(Cell::Piece { chord: x.c2, seg: k2 }, false);
            let to_c2_to = self.he(
                Cell::Piece {
                    chord: x.c2,
                    seg: k2 + 1,
                },
                true,
            );
            let rot = if x.c2_from_left {
                alloc::vec![to_c1_from, to_c2_to, to_c1_to, to_c2_from]
            } else {
                alloc::vec![to_c1_from, to_c2_from, to_c1_to, to_c2_to]
            };
            rotations.insert(Vertex::Cross(xi), rot);
        }

        // next(h) = ccw-previous of twin(h) in the rotation at head(h)
        self.next = alloc::vec![u32::MAX; 2 * self.n_cells];
        for rot in rotations.values() {
            let n = rot.len();
            for (i, &g) in rot.iter().enumerate() {
                let prev = rot[(i + n - 1) % n];
                let tw = self.twin(g);
                self.next[tw] = prev as u32;
            }
        }
        if self.next.iter().any(|&x| x == u32::MAX) {
            return Err(Error::Internal("incomplete rotation system"));
        }
        Ok(())
    }

    fn build_faces(&mut self) -> Result<()> {
        self.face_of = alloc::vec![u32::MAX; 2 * self.n_cells];
        let mut n_faces = 0;
        for h0 in 0..2 * self.n_cells {
            if self.face_of[h0] != u32::MAX {
                continue;
            }
            let f = n_faces as u32;
            n_faces += 1;
            let mut h = h0;
            loop {
                self.face_of[h] = f;
                h = self.next[h] as usize;
                if h == h0 {
                    break;
                }
            }
        }
        self.n_faces = n_faces;
        self.outer_face = self.face_of[self.he(Cell::BArc(0), false)] as usize;
        // Euler check in the disk: inner faces = chords + crossings + 1
        let expect = self.arr.chords.len() + self.arr.crossings.len() + 2;
        if n_faces != expect {
            return Err(Error::Internal("disk face count mismatch"));
        }
        Ok(())
    }

    fn build_gluing(&mut self) -> Result<()> {
        let surface = self.diag.surface();
        let len = self.arr.len;
        self.barc_partner = alloc::vec![usize::MAX; len];
        // locate, per side, its first position (the corner), then pair gaps
        let mut corner_pos = alloc::vec![usize::MAX; surface.side_count()];
        for (pos, info) in self.arr.pos_info.iter().enumerate() {
            if let PosInfo::Corner(s) = info {
                corner_pos[*s] = pos;
            }
        }
        for e in 0..surface.edge_count() {
            let m = self.diag.edge_counts()[e];
            let (sp, sn) = surface.edge_sides(e);
            // gap g on the positive side runs from corner_pos[sp] + g;
            // on the reversed side the gaps appear in the opposite order
            for g in 0..=m {
                let barc_pos = corner_pos[sp] + g;
                let barc_neg = corner_pos[sn] + (m - g);
                self.barc_partner[barc_pos % len] = barc_neg % len;
                self.barc_partner[barc_neg % len] = barc_pos % len;
            }
        }
        if self.barc_partner.iter().any(|&x| x == usize::MAX) {
            return Err(Error::Internal("unpaired boundary arc"));
        }
        Ok(())
    }

    fn build_strand_order(&mut self) {
        // successor piece along each component's traversal
        let total: usize = self
            .arr
            .chords
            .iter()
            .enumerate()
            .map(|(c, _)| self.pieces_of_chord(c))
            .sum();
        self.piece_succ = alloc::vec![usize::MAX; self.n_barcs + total];
        self.piece_pred = alloc::vec![usize::MAX; self.n_barcs + total];
        for (ci, comp) in self.diag.components().iter().enumerate() {
            let n = comp.len();
            for vi in 0..n {
                let c = self.arr.chord_of_visit[&(ci, vi)];
                let c_next = self.arr.chord_of_visit[&(ci, (vi + 1) % n)];
                let segs = self.pieces_of_chord(c);
                for seg in 0..segs {
                    let id = self.cell_id(Cell::Piece { chord: c, seg });
                    let succ = if seg + 1 < segs {
                        self.cell_id(Cell::Piece { chord: c, seg: seg + 1 })
                    } else {
                        self.cell_id(Cell::Piece {
                            chord: c_next,
                            seg: 0,
                        })
                    };
                    self.piece_succ[id] = succ;
                    self.piece_pred[succ] = id;
                }
            }
        }
    }

    /// Traversal successor of a piece cell id.
    pub fn succ_piece(&self, cell: usize) -> usize {
        self.piece_succ[cell]
    }

    pub fn pred_piece(&self, cell: usize) -> usize {
        self.piece_pred[cell]
    }

    pub fn comp_of_cell(&self, cell: usize) -> Option<usize> {
        match self.cell_of(cell) {
            Cell::BArc(_) => None,
            Cell::Piece { chord, .. } => Some(self.chord_comp[chord]),
        }
    }

    /// All piece cell ids of the given components.
    pub fn pieces_of_components(&self, comps: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for (ci, chord) in self.arr.chords.iter().enumerate() {
            if comps.contains(&chord.comp) {
                for seg in 0..self.pieces_of_chord(ci) {
                    out.insert(self.cell_id(Cell::Piece { chord: ci, seg }));
                }
            }
        }
        out
    }

    /// Piece cells of the strand arc that starts just after crossing `from`
    /// and runs along the component to crossing `to` (inclusive of all
    /// pieces in between).
    pub fn pieces_of_arc(&self, comp: usize, from: usize, to: usize) -> Result<BTreeSet<usize>> {
        // locate the piece following `from` on this component
        let mut start = None;
        for (ci, chord) in self.arr.chords.iter().enumerate() {
            if chord.comp != comp {
                continue;
            }
            if let Some(k) = self.arr.on_chord[ci].iter().position(|&x| x == from) {
                start = Some(self.cell_id(Cell::Piece {
                    chord: ci,
                    seg: k + 1,
                }));
                // a crossing touches a component on exactly one chord unless
                // the component self-crosses, which validation forbids
                break;
            }
        }
        let mut cell = start.ok_or(Error::Internal("arc start crossing not on component"))?;
        let mut out = BTreeSet::new();
        let budget = 4 * self.n_cells;
        for _ in 0..budget {
            out.insert(cell);
            // does this piece end at `to`?
            if let Cell::Piece { chord, seg } = self.cell_of(cell) {
                let xs = &self.arr.on_chord[chord];
                if seg < xs.len() && xs[seg] == to {
                    return Ok(out);
                }
            }
            cell = self.piece_succ[cell];
        }
        Err(Error::Internal("arc end crossing not reached"))
    }
}

/// A complement region of the cut set.
#[derive(Debug)]
pub struct Regions {
    pub count: usize,
    pub face_region: Vec<usize>,
    pub chi: Vec<i64>,
    /// Boundary circles per region; each circle is the cyclic list of cut
    /// half-edges in walk order.
    pub circles: Vec<Vec<Circle>>,
    pub v0_region: usize,
}

#[derive(Debug, Clone)]
pub struct Circle {
    pub entries: Vec<HalfEdge>,
    /// Indices into `entries` where a new run starts (a corner at a cut
    /// crossing); empty when the circle is a full closed curve side.
    pub corners: Vec<usize>,
    /// (component, is_left_side) of each run, aligned with `corners`; a
    /// single pseudo-run for corner-free circles.
    pub runs: Vec<(usize, bool)>,
}

impl Regions {
    pub fn genus(&self, r: usize) -> i64 {
        let b = self.circles[r].len() as i64;
        (2 - self.chi[r] - b) / 2
    }

    pub fn boundary_count(&self, r: usize) -> usize {
        self.circles[r].len()
    }
}

struct Uf {
    parent: Vec<usize>,
}

impl Uf {
    fn new(n: usize) -> Uf {
        Uf {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != c {
            let n = self.parent[c];
            self.parent[c] = r;
            c = n;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

impl Overlay {
    /// Complement regions of the cut pieces.  `cut` holds piece cell ids.
    pub fn regions(&self, cut: &BTreeSet<usize>) -> Result<Regions> {
        let mut uf = Uf::new(self.n_faces);
        // merge across glued arcs (their inner faces)
        let len = self.arr.len;
        for i in 0..len {
            let j = self.barc_partner[i];
            let fi = self.face(self.he(Cell::BArc(i), true));
            let fj = self.face(self.he(Cell::BArc(j), true));
            uf.union(fi, fj);
        }
        // merge across uncut pieces
        for cell in self.n_barcs..self.n_cells {
            if cut.contains(&cell) {
                continue;
            }
            let f1 = self.face(2 * cell);
            let f2 = self.face(2 * cell + 1);
            uf.union(f1, f2);
        }

        // region numbering (outer face excluded)
        let mut region_of_root: BTreeMap<usize, usize> = BTreeMap::new();
        let mut face_region = alloc::vec![usize::MAX; self.n_faces];
        let mut count = 0;
        for f in 0..self.n_faces {
            if f == self.outer_face {
                continue;
            }
            let root = uf.find(f);
            let r = *region_of_root.entry(root).or_insert_with(|| {
                let r = count;
                count += 1;
                r
            });
            face_region[f] = r;
        }

        // Euler characteristics
        let mut chi = alloc::vec![0i64; count];
        for f in 0..self.n_faces {
            if f != self.outer_face {
                chi[face_region[f]] += 1;
            }
        }
        // glued arcs: one 1-cell per pair
        let mut seen_arc = alloc::vec![false; len];
        for i in 0..len {
            if seen_arc[i] {
                continue;
            }
            seen_arc[i] = true;
            seen_arc[self.barc_partner[i]] = true;
            let r = face_region[self.face(self.he(Cell::BArc(i), true))];
            chi[r] -= 1;
        }
        // uncut pieces
        for cell in self.n_barcs..self.n_cells {
            if !cut.contains(&cell) {
                chi[face_region[self.face(2 * cell)]] -= 1;
            }
        }
        // the vertex: all corner faces must be one region
        let mut v0_region = usize::MAX;
        for (pos, info) in self.arr.pos_info.iter().enumerate() {
            if let PosInfo::Corner(_) = info {
                let r = face_region[self.face(self.he(Cell::BArc(pos), true))];
                if v0_region == usize::MAX {
                    v0_region = r;
                } else if v0_region != r {
                    return Err(Error::Internal("corner faces in different regions"));
                }
            }
        }
        chi[v0_region] += 1;
        // edge points: in the complement iff both incident end pieces uncut
        for (&(_, _, pos_occ), &pos) in self.arr.point_pos.iter() {
            if !pos_occ {
                continue; // count each edge point once, via its + occurrence
            }
            let (cin, cout) = self.point_pieces(pos)?;
            let pos_neg = self.partner_position(pos)?;
            let (nin, nout) = self.point_pieces(pos_neg)?;
            let incident: Vec<usize> = [cin, cout, nin, nout].into_iter().flatten().collect();
            debug_assert_eq!(incident.len(), 2);
            if incident.iter().all(|c| !cut.contains(c)) {
                let r = face_region[self.face(2 * incident[0])];
                chi[r] += 1;
            }
        }
        // crossings: in the complement iff all four incident pieces uncut
        for (xi, x) in self.arr.crossings.iter().enumerate() {
            let k1 = self.arr.on_chord[x.c1].iter().position(|&c| c == xi).unwrap();
            let k2 = self.arr.on_chord[x.c2].iter().position(|&c| c == xi).unwrap();
            let cells = [
                self.cell_id(Cell::Piece { chord: x.c1, seg: k1 }),
                self.cell_id(Cell::Piece {
                    chord: x.c1,
                    seg: k1 + 1,
                }),
                self.cell_id(Cell::Piece { chord: x.c2, seg: k2 }),
                self.cell_id(Cell::Piece {
                    chord: x.c2,
                    seg: k2 + 1,
                }),
            ];
            if cells.iter().all(|c| !cut.contains(c)) {
                chi[face_region[self.face(2 * cells[0])]] += 1;
            }
        }

        let circles = self.trace_circles(cut, &face_region, count)?;
        Ok(Regions {
            count,
            face_region,
            chi,
            circles,
            v0_region,
        })
    }

    /// The chord-end pieces incident to a boundary position: (piece whose
    /// chord ends here, piece whose chord starts here); at most one each.
    fn point_pieces(&self, pos: usize) -> Result<(Option<usize>, Option<usize>)> {
        let mut ends = None;
        let mut starts = None;
        for (ci, chord) in self.arr.chords.iter().enumerate() {
            if chord.from == pos {
                starts = Some(self.cell_id(Cell::Piece { chord: ci, seg: 0 }));
            }
            if chord.to == pos {
                let last = self.arr.on_chord[ci].len();
                ends = Some(self.cell_id(Cell::Piece {
                    chord: ci,
                    seg: last,
                }));
            }
        }
        Ok((ends, starts))
    }

    /// The boundary position of the same edge point on the other side.
    fn partner_position(&self, pos: usize) -> Result<usize> {
        match self.arr.pos_info[pos] {
            PosInfo::Point { edge, slot, pos_occ } => Ok(self.arr.point_pos
                [&(edge, slot, !pos_occ)]),
            PosInfo::Corner(_) => Err(Error::Internal("corner has no partner point")),
        }
    }

    /// Next cut half-edge along the region boundary, stitching face cycles
    /// across glued arcs and uncut pieces.
    fn walk_next(&self, h: HalfEdge, cut: &BTreeSet<usize>) -> Result<HalfEdge> {
        let mut x = self.next_in_face(h);
        for _ in 0..4 * self.n_cells {
            let cell = x / 2;
            match self.cell_of(cell) {
                Cell::Piece { .. } => {
                    if cut.contains(&cell) {
                        return Ok(x);
                    }
                    x = self.next_in_face(self.twin(x));
                }
                Cell::BArc(i) => {
                    debug_assert!(self.he_fwd(x), "outer face reached in region walk");
                    let j = self.barc_partner[i];
                    x = self.next_in_face(self.he(Cell::BArc(j), true));
                }
            }
        }
        Err(Error::Internal("region boundary walk did not close"))
    }

    fn trace_circles(
        &self,
        cut: &BTreeSet<usize>,
        face_region: &[usize],
        count: usize,
    ) -> Result<Vec<Vec<Circle>>> {
        let mut circles: Vec<Vec<Circle>> = alloc::vec![Vec::new(); count];
        let mut visited: BTreeSet<HalfEdge> = BTreeSet::new();
        for &cell in cut {
            for h in [2 * cell, 2 * cell + 1] {
                if visited.contains(&h) {
                    continue;
                }
                let region = face_region[self.face(h)];
                let mut entries = Vec::new();
                let mut cur = h;
                loop {
                    visited.insert(cur);
                    entries.push(cur);
                    cur = self.walk_next(cur, cut)?;
                    if cur == h {
                        break;
                    }
                }
                // a corner sits between consecutive entries that are not the
                // continuation of the same strand
                let n = entries.len();
                let mut corners = Vec::new();
                for i in 0..n {
                    let a = entries[i];
                    let b = entries[(i + 1) % n];
                    let expected = if self.he_fwd(a) {
                        2 * self.piece_succ[a / 2]
                    } else {
                        2 * self.piece_pred[a / 2] + 1
                    };
                    if b != expected {
                        corners.push((i + 1) % n);
                    }
                }
                corners.sort_unstable();
                let mut runs = Vec::new();
                if corners.is_empty() {
                    let comp = self.comp_of_cell(entries[0] / 2).unwrap();
                    runs.push((comp, self.he_fwd(entries[0])));
                } else {
                    for &start in &corners {
                        let comp = self.comp_of_cell(entries[start] / 2).unwrap();
                        runs.push((comp, self.he_fwd(entries[start])));
                    }
                }
                circles[region].push(Circle {
                    entries,
                    corners,
                    runs,
                });
            }
        }
        Ok(circles)
    }

    /// Region containing the (uncut) component's strands.
    pub fn region_of_component(&self, regions: &Regions, comp: usize) -> usize {
        for (ci, chord) in self.arr.chords.iter().enumerate() {
            if chord.comp == comp {
                let h = self.he(Cell::Piece { chord: ci, seg: 0 }, true);
                return regions.face_region[self.face(h)];
            }
        }
        usize::MAX
    }

    /// Surface Euler check: V - E + F over the glued complex must equal
    /// 2 - 2 genus.
    pub fn euler_check(&self) -> Result<()> {
        let g = self.diag.surface().genus() as i64;
        let x = self.arr.crossings.len() as i64;
        let m: i64 = self.diag.edge_counts().iter().map(|&c| c as i64).sum();
        let c = self.arr.chords.len() as i64;
        let v = 1 + m + x;
        let e = (m + self.diag.surface().edge_count() as i64) + (c + 2 * x);
        let f = (self.n_faces - 1) as i64;
        if v - e + f != 2 - 2 * g {
            return Err(Error::Internal("glued Euler characteristic mismatch"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::Surface;

    #[test]
    fn empty_overlay() {
        let s = Surface::new(2).unwrap();
        let d = Diagram::empty(s);
        let ov = Overlay::build(&d).unwrap();
        ov.euler_check().unwrap();
        assert_eq!(ov.n_faces, 2); // inner + outer
        let regions = ov.regions(&BTreeSet::new()).unwrap();
        assert_eq!(regions.count, 1);
        assert_eq!(regions.chi[0], 2 - 2 * 2);
        assert_eq!(regions.circles[0].len(), 0);
    }
}
