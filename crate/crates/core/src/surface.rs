//! The fixed combinatorial surface: one vertex, 2g oriented edges, one 4g-gon
//! face with boundary word `a1 b1 a1' b1' ... ag bg ag' bg'`.
//!
//! Edges are indexed 0..2g; even indices are the `a` loops and odd indices the
//! `b` loops.  The polygon has 4g sides; side `4i, 4i+1, 4i+2, 4i+3` carry
//! `a_{i+1}, b_{i+1}, a_{i+1} reversed, b_{i+1} reversed` in counterclockwise
//! order.

use crate::error::{Error, Result};
use alloc::format;
use alloc::string::String;

/// Index of an edge loop, 0..2g.
pub type EdgeId = usize;

/// Index of a polygon side, 0..4g, in counterclockwise boundary order.
pub type SideId = usize;

/// A closed orientable surface of genus >= 2 with its canonical one-vertex
/// cell structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Surface {
    genus: u32,
}

impl Surface {
    /// Build the canonical cell structure.  Errors if `genus < 2`.
    pub fn new(genus: u32) -> Result<Surface> {
        if genus < 2 {
            return Err(Error::GenusTooSmall { genus, needed: 2 });
        }
        Ok(Surface { genus })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    /// Number of edge loops (2g).
    pub fn edge_count(&self) -> usize {
        2 * self.genus as usize
    }

    /// Number of polygon sides (4g).
    pub fn side_count(&self) -> usize {
        4 * self.genus as usize
    }

    /// Euler characteristic 2 - 2g.
    pub fn euler(&self) -> i64 {
        2 - 2 * self.genus as i64
    }

    /// The edge carried by a side, plus whether the side traverses it
    /// positively (in the counterclockwise boundary direction).
    pub fn side_edge(&self, side: SideId) -> (EdgeId, bool) {
        debug_assert!(side < self.side_count());
        let block = side / 4;
        let within = side % 4;
        let edge = 2 * block + (within % 2);
        (edge, within < 2)
    }

    /// The two sides carrying an edge: (positive occurrence, reversed one).
    pub fn edge_sides(&self, edge: EdgeId) -> (SideId, SideId) {
        debug_assert!(edge < self.edge_count());
        let block = edge / 2;
        let within = edge % 2;
        (4 * block + within, 4 * block + within + 2)
    }

    /// Edge id of the loop `a_{i}` (1-based i).
    pub fn a_edge(&self, i: u32) -> EdgeId {
        debug_assert!(1 <= i && i <= self.genus);
        2 * (i as usize - 1)
    }

    /// Edge id of the loop `b_{i}` (1-based i).
    pub fn b_edge(&self, i: u32) -> EdgeId {
        debug_assert!(1 <= i && i <= self.genus);
        2 * (i as usize - 1) + 1
    }

    /// Human-readable edge name: "a1", "b1", ...
    pub fn edge_name(&self, edge: EdgeId) -> String {
        let block = edge / 2 + 1;
        if edge % 2 == 0 {
            format!("a{block}")
        } else {
            format!("b{block}")
        }
    }

    /// Parse "a1" / "b3" into an edge id.
    pub fn parse_edge_name(&self, name: &str) -> Option<EdgeId> {
        let (kind, idx) = name.split_at(1);
        let i: u32 = idx.parse().ok()?;
        if i < 1 || i > self.genus {
            return None;
        }
        match kind {
            "a" => Some(self.a_edge(i)),
            "b" => Some(self.b_edge(i)),
            _ => None,
        }
    }
}

/// Classification of a complement component, derived from (genus, boundary).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SubsurfaceKind {
    OneHoledTorus,
    FourHoledSphere,
    Annulus,
    Pants,
    Other,
}

impl SubsurfaceKind {
    pub fn classify(genus: i64, boundary: usize) -> SubsurfaceKind {
        match (genus, boundary) {
            (1, 1) => SubsurfaceKind::OneHoledTorus,
            (0, 4) => SubsurfaceKind::FourHoledSphere,
            (0, 2) => SubsurfaceKind::Annulus,
            (0, 3) => SubsurfaceKind::Pants,
            _ => SubsurfaceKind::Other,
        }
    }

    /// Whether the kind is admissible as a witness in cutoff sums.
    pub fn counts_for_cutoff(self) -> bool {
        !matches!(self, SubsurfaceKind::Annulus | SubsurfaceKind::Pants)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_guard() {
        assert_eq!(
            Surface::new(1),
            Err(Error::GenusTooSmall { genus: 1, needed: 2 })
        );
        assert!(Surface::new(2).is_ok());
    }

    #[test]
    fn euler_characteristic() {
        assert_eq!(Surface::new(3).unwrap().euler(), -4);
        assert_eq!(Surface::new(2).unwrap().euler(), -2);
    }

    #[test]
    fn cell_counts() {
        let s = Surface::new(3).unwrap();
        assert_eq!(s.edge_count(), 6);
        assert_eq!(s.side_count(), 12);
        // one vertex, one face: chi = 1 - 6 + 1 = -4
        assert_eq!(1 - s.edge_count() as i64 + 1, s.euler());
    }

    #[test]
    fn sides_and_edges_are_inverse() {
        let s = Surface::new(4).unwrap();
        for e in 0..s.edge_count() {
            let (pos, neg) = s.edge_sides(e);
            assert_eq!(s.side_edge(pos), (e, true));
            assert_eq!(s.side_edge(neg), (e, false));
        }
    }

    #[test]
    fn edge_names_roundtrip() {
        let s = Surface::new(3).unwrap();
        for e in 0..s.edge_count() {
            assert_eq!(s.parse_edge_name(&s.edge_name(e)), Some(e));
        }
        assert_eq!(s.parse_edge_name("c1"), None);
        assert_eq!(s.parse_edge_name("a4"), None);
    }
}
