//! Normal multicurve diagrams on the one-vertex polygon model.
//!
//! A diagram records, for every edge loop of the surface, the ordered list of
//! transverse crossing slots, and for every curve component the cyclic
//! sequence of crossings it makes.  Everything else (crossings between
//! curves, faces, complement topology) is derived from this data through the
//! arrangement of chords in the 4g-gon.
//!
//! Each boundary crossing appears on both polygon sides carrying its edge; a
//! visit stores which side the incoming chord lands on (`enters_pos`), so the
//! traversal through the gluing is unambiguous.

pub mod arrangement;
pub mod complex;
pub mod dual;
pub mod moves;
pub mod twist;

use crate::error::{Error, Result};
use crate::frac::Frac;
use crate::surface::Surface;
use alloc::collections::BTreeSet;
use alloc::vec::Vec;

/// One transverse crossing of a component with a polygon edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Visit {
    pub edge: usize,
    pub slot: usize,
    /// True if the incoming chord ends on the positive side occurrence of
    /// the edge (then the outgoing chord starts on the reversed occurrence).
    pub enters_pos: bool,
}

/// An embedded multicurve in normal position.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Diagram {
    surface: Surface,
    edge_counts: Vec<usize>,
    components: Vec<Vec<Visit>>,
}

/// A visit with a fractional slot key, used while diagrams are being edited;
/// `renormalize` turns a list of these into integer slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProtoVisit {
    pub edge: usize,
    pub key: Frac,
    /// Tie-break rank for keys that compare equal (only where either order
    /// is realizable, e.g. merging independent diagrams).
    pub tie: (u8, u64),
    pub enters_pos: bool,
}

impl Diagram {
    /// The empty diagram (no curves).
    pub fn empty(surface: Surface) -> Diagram {
        Diagram {
            surface,
            edge_counts: alloc::vec![0; surface.edge_count()],
            components: Vec::new(),
        }
    }

    /// Build a diagram from proto-visit component lists; slots are assigned
    /// by sorting keys per edge.
    pub fn from_proto(surface: Surface, comps: Vec<Vec<ProtoVisit>>) -> Diagram {
        // rank every (edge, key, tie) triple
        let ne = surface.edge_count();
        let mut per_edge: Vec<Vec<(Frac, (u8, u64), usize, usize)>> = alloc::vec![Vec::new(); ne];
        for (ci, comp) in comps.iter().enumerate() {
            for (vi, pv) in comp.iter().enumerate() {
                per_edge[pv.edge].push((pv.key, pv.tie, ci, vi));
            }
        }
        let mut slot_of: alloc::collections::BTreeMap<(usize, usize), usize> =
            alloc::collections::BTreeMap::new();
        let mut edge_counts = alloc::vec![0; ne];
        for (e, list) in per_edge.iter_mut().enumerate() {
            list.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
            edge_counts[e] = list.len();
            for (rank, &(_, _, ci, vi)) in list.iter().enumerate() {
                slot_of.insert((ci, vi), rank);
            }
        }
        let components = comps
            .iter()
            .enumerate()
            .map(|(ci, comp)| {
                comp.iter()
                    .enumerate()
                    .map(|(vi, pv)| Visit {
                        edge: pv.edge,
                        slot: slot_of[&(ci, vi)],
                        enters_pos: pv.enters_pos,
                    })
                    .collect()
            })
            .collect();
        Diagram {
            surface,
            edge_counts,
            components,
        }
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn edge_counts(&self) -> &[usize] {
        &self.edge_counts
    }

    pub fn components(&self) -> &[Vec<Visit>] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// Total number of edge crossings (= number of chords).
    pub fn size(&self) -> usize {
        self.components.iter().map(Vec::len).sum()
    }

    /// Proto-visits of one component, with integer keys.
    pub fn proto_of(&self, comp: usize) -> Vec<ProtoVisit> {
        self.components[comp]
            .iter()
            .map(|v| ProtoVisit {
                edge: v.edge,
                key: Frac::int(v.slot as i128),
                tie: (0, 0),
                enters_pos: v.enters_pos,
            })
            .collect()
    }

    /// New diagram keeping only the selected components (relative slot
    /// orders preserved).
    pub fn restrict(&self, keep: &BTreeSet<usize>) -> Diagram {
        let comps = keep.iter().map(|&c| self.proto_of(c)).collect();
        Diagram::from_proto(self.surface, comps)
    }

    /// New diagram with extra components added from proto lists.
    pub fn with_added(&self, extra: Vec<Vec<ProtoVisit>>) -> Diagram {
        let mut comps: Vec<Vec<ProtoVisit>> =
            (0..self.components.len()).map(|c| self.proto_of(c)).collect();
        comps.extend(extra);
        Diagram::from_proto(self.surface, comps)
    }

    /// Merge another diagram into this one.  The other diagram's crossings
    /// are interleaved proportionally along each edge (any interleaving is a
    /// valid mutual position; tightening removes the artificial crossings).
    /// Returns the merged diagram; the other's components come after ours.
    pub fn merge(&self, other: &Diagram) -> Diagram {
        debug_assert_eq!(self.surface, other.surface);
        let extra = other
            .components
            .iter()
            .map(|comp| {
                comp.iter()
                    .map(|v| {
                        let m1 = self.edge_counts[v.edge] as i128;
                        let m2 = other.edge_counts[v.edge] as i128;
                        let key = if m1 == 0 {
                            Frac::int(v.slot as i128)
                        } else {
                            // spread the m2 points across (-1/2, m1 - 1/2)
                            Frac::new((m1 + 1) * (2 * v.slot as i128 + 1), 2 * m2)
                                .sub(Frac::new(1, 2))
                        };
                        ProtoVisit {
                            edge: v.edge,
                            key,
                            tie: (1, v.slot as u64),
                            enters_pos: v.enters_pos,
                        }
                    })
                    .collect()
            })
            .collect();
        self.with_added(extra)
    }

    /// Structural validation: slot bijections, nonempty components, and the
    /// per-component embeddedness (no two chords of one component cross).
    pub fn validate(&self) -> Result<()> {
        let ne = self.surface.edge_count();
        if self.edge_counts.len() != ne {
            return Err(Error::Internal("edge_counts length"));
        }
        let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
        for comp in &self.components {
            if comp.is_empty() {
                return Err(Error::Internal("empty component"));
            }
            for v in comp {
                if v.edge >= ne || v.slot >= self.edge_counts[v.edge] {
                    return Err(Error::Internal("visit out of range"));
                }
                if !seen.insert((v.edge, v.slot)) {
                    return Err(Error::Internal("duplicate slot"));
                }
            }
        }
        let total: usize = self.edge_counts.iter().sum();
        if seen.len() != total {
            return Err(Error::Internal("slot count mismatch"));
        }
        // embeddedness: chords of one component must not interleave
        let arr = arrangement::Arrangement::build(self)?;
        for (i, c1) in arr.chords.iter().enumerate() {
            for c2 in arr.chords.iter().skip(i + 1) {
                if c1.comp == c2.comp
                    && arrangement::interleaved(arr.len, c1.from, c1.to, c2.from, c2.to)
                {
                    return Err(Error::NotEmbeddable);
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_diagram_is_valid() {
        let s = Surface::new(2).unwrap();
        let d = Diagram::empty(s);
        assert!(d.validate().is_ok());
        assert_eq!(d.size(), 0);
    }
}
