//! The arrangement of a diagram's chords inside the 4g-gon.
//!
//! Boundary crossings and polygon corners sit at cyclic positions on a
//! circle, realized at integer x-coordinates on a parabola so that chord
//! crossings and their order along each chord are computed exactly.  Two
//! chords cross iff their endpoints interleave; a deterministic salt
//! perturbation resolves the rare concurrence of three chords.

use super::Diagram;
use crate::error::{Error, Result};
use crate::frac::Frac;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

/// What sits at a cyclic boundary position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PosInfo {
    /// The polygon corner preceding side `s`.
    Corner(usize),
    /// A curve crossing: (edge, slot, on positive occurrence).
    Point {
        edge: usize,
        slot: usize,
        pos_occ: bool,
    },
}

/// A chord of the disk: one polygon passage of a component.
#[derive(Debug, Clone, Copy)]
pub struct Chord {
    pub comp: usize,
    /// Visit index the chord leaves from (it runs to visit + 1).
    pub visit: usize,
    pub from: usize,
    pub to: usize,
}

/// A transverse crossing of two chords.
#[derive(Debug, Clone, Copy)]
pub struct Crossing {
    pub c1: usize,
    pub c2: usize,
    /// Exact x-coordinate in the parabola realization.
    pub x: Frac,
    /// Whether c2's from-endpoint lies on the left of the directed chord c1.
    pub c2_from_left: bool,
}

#[derive(Debug)]
pub struct Arrangement {
    /// Number of cyclic boundary positions (corners + curve points).
    pub len: usize,
    pub pos_info: Vec<PosInfo>,
    pub point_pos: BTreeMap<(usize, usize, bool), usize>,
    pub chords: Vec<Chord>,
    pub chord_of_visit: BTreeMap<(usize, usize), usize>,
    pub crossings: Vec<Crossing>,
    /// Per chord, crossing ids ordered from the chord's from-endpoint.
    pub on_chord: Vec<Vec<usize>>,
    xcoord: Vec<i128>,
}

/// Is x strictly inside the ccw-open interval (a, b)?
pub fn cyclic_between(len: usize, x: usize, a: usize, b: usize) -> bool {
    let rel_x = (x + len - a) % len;
    let rel_b = (b + len - a) % len;
    0 < rel_x && rel_x < rel_b
}

/// Do the chords (a1, b1) and (a2, b2) cross (endpoints interleave)?
pub fn interleaved(len: usize, a1: usize, b1: usize, a2: usize, b2: usize) -> bool {
    cyclic_between(len, a2, a1, b1) != cyclic_between(len, b2, a1, b1)
}

fn salt_hash(pos: usize, salt: u64) -> i128 {
    if salt == 0 {
        return 0;
    }
    let mut h = pos as u64 ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    h ^= h >> 30;
    h = h.wrapping_mul(0xbf58_476d_1ce4_e5b9);
    h ^= h >> 27;
    (h % 1024) as i128
}

impl Arrangement {
    pub fn build(diag: &Diagram) -> Result<Arrangement> {
        for salt in 0..64 {
            if let Some(arr) = Arrangement::try_build(diag, salt) {
                return Ok(arr);
            }
        }
        Err(Error::Internal("arrangement: degenerate at every salt"))
    }

    fn try_build(diag: &Diagram, salt: u64) -> Option<Arrangement> {
        let surface = diag.surface();
        // boundary positions: corner of side s, then the side's points
        let mut pos_info = Vec::new();
        let mut point_pos = BTreeMap::new();
        for s in 0..surface.side_count() {
            pos_info.push(PosInfo::Corner(s));
            let (edge, positive) = surface.side_edge(s);
            let m = diag.edge_counts()[edge];
            let slots: Vec<usize> = if positive {
                (0..m).collect()
            } else {
                (0..m).rev().collect()
            };
            for slot in slots {
                point_pos.insert((edge, slot, positive), pos_info.len());
                pos_info.push(PosInfo::Point {
                    edge,
                    slot,
                    pos_occ: positive,
                });
            }
        }
        let len = pos_info.len();
        let xcoord: Vec<i128> = (0..len)
            .map(|p| p as i128 * 1024 + salt_hash(p, salt))
            .collect();

        // chords: out-point of each visit to in-point of the next
        let mut chords = Vec::new();
        let mut chord_of_visit = BTreeMap::new();
        for (ci, comp) in diag.components().iter().enumerate() {
            let n = comp.len();
            for vi in 0..n {
                let v = comp[vi];
                let w = comp[(vi + 1) % n];
                let from = point_pos[&(v.edge, v.slot, !v.enters_pos)];
                let to = point_pos[&(w.edge, w.slot, w.enters_pos)];
                chord_of_visit.insert((ci, vi), chords.len());
                chords.push(Chord {
                    comp: ci,
                    visit: vi,
                    from,
                    to,
                });
            }
        }

        // crossings by endpoint interleaving, exact parabola coordinates
        let line = |c: &Chord| {
            let (u, v) = (xcoord[c.from], xcoord[c.to]);
            (u + v, u * v) // y = s x - p
        };
        let mut crossings = Vec::new();
        let mut on_chord: Vec<Vec<usize>> = alloc::vec![Vec::new(); chords.len()];
        for i in 0..chords.len() {
            for j in (i + 1)..chords.len() {
                let (a, b) = (&chords[i], &chords[j]);
                if !interleaved(len, a.from, a.to, b.from, b.to) {
                    continue;
                }
                let (s1, p1) = line(a);
                let (s2, p2) = line(b);
                debug_assert!(s1 != s2, "interleaved chords cannot be parallel");
                let x = Frac::new(p1 - p2, s1 - s2);
                let c2_from_left = cyclic_between(len, b.from, a.to, a.from);
                let id = crossings.len();
                crossings.push(Crossing {
                    c1: i,
                    c2: j,
                    x,
                    c2_from_left,
                });
                on_chord[i].push(id);
                on_chord[j].push(id);
            }
        }

        // order crossings along each chord; equal coordinates mean a
        // concurrence, resolved by re-salting
        for (ci, list) in on_chord.iter_mut().enumerate() {
            let c = &chords[ci];
            let ascending = xcoord[c.from] < xcoord[c.to];
            list.sort_by(|&a, &b| {
                let (xa, xb) = (crossings[a].x, crossings[b].x);
                if ascending {
                    xa.cmp(&xb)
                } else {
                    xb.cmp(&xa)
                }
            });
            for w in list.windows(2) {
                if crossings[w[0]].x == crossings[w[1]].x {
                    return None;
                }
            }
        }

        Some(Arrangement {
            len,
            pos_info,
            point_pos,
            chords,
            chord_of_visit,
            crossings,
            on_chord,
            xcoord,
        })
    }

    /// Parameter of a crossing along the given chord, strictly in (0, 1).
    pub fn param_on(&self, crossing: usize, chord: usize) -> Frac {
        let c = &self.chords[chord];
        let x = self.crossings[crossing].x;
        let (u, v) = (
            Frac::int(self.xcoord[c.from]),
            Frac::int(self.xcoord[c.to]),
        );
        x.sub(u).div(v.sub(u))
    }

    /// The other chord of a crossing.
    pub fn other_chord(&self, crossing: usize, chord: usize) -> usize {
        let x = &self.crossings[crossing];
        if x.c1 == chord {
            x.c2
        } else {
            debug_assert_eq!(x.c2, chord);
            x.c1
        }
    }

    /// Whether chord `other` crosses `chord` coming from its left.
    pub fn crosses_from_left(&self, crossing: usize, chord: usize) -> bool {
        let x = &self.crossings[crossing];
        if x.c1 == chord {
            x.c2_from_left
        } else {
            // c1 comes from the left of c2 iff c2 does NOT come from the
            // left of c1 (transversality swaps sides)
            !x.c2_from_left
        }
    }

    /// Crossing ids between the two components, in no particular order.
    pub fn crossings_between(&self, comp_a: usize, comp_b: usize) -> Vec<usize> {
        self.crossings
            .iter()
            .enumerate()
            .filter(|(_, x)| {
                let (p, q) = (self.chords[x.c1].comp, self.chords[x.c2].comp);
                (p == comp_a && q == comp_b) || (p == comp_b && q == comp_a)
            })
            .map(|(i, _)| i)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_tests() {
        assert!(cyclic_between(10, 2, 1, 5));
        assert!(!cyclic_between(10, 7, 1, 5));
        assert!(cyclic_between(10, 0, 8, 3));
        assert!(interleaved(8, 0, 4, 2, 6));
        assert!(!interleaved(8, 0, 4, 1, 3));
    }
}
