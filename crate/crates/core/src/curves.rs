//! The curve kernel: realize curve specs as embedded diagrams, tighten,
//! intersect, analyze complements, and take regular-neighborhood boundaries.
//!
//! Curves are specified either as twist words over the named base library
//! (always embeddable) or as raw crossing words (validated).  The library
//! for genus g carries the dual curves a1..ag, b1..bg, the handle boundaries
//! h1..hg, and for genus >= 4 the spine curves s1..s(g-3) used by the base
//! pants decomposition.

use crate::diagram::complex::Overlay;
use crate::diagram::moves::{self, circle_parallel_path};
use crate::diagram::twist::twist_once;
use crate::diagram::{Diagram, ProtoVisit};
use crate::error::{Error, Result};
use crate::frac::Frac;
use crate::surface::Surface;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

/// Guard rails against combinatorial explosion; exceeding them is an error,
/// never silent truncation.
#[derive(Debug, Clone, Copy)]
pub struct Caps {
    pub max_twist_power: i64,
    pub max_word_len: usize,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps {
            max_twist_power: 16,
            max_word_len: 64,
        }
    }
}

/// Input syntax for curves.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum CurveSpec {
    /// Named base curve with Dehn twists applied left to right.
    TwistWord {
        base: String,
        twists: Vec<(String, i64)>,
    },
    /// Cyclic list of (edge name, direction) crossings; slots are assigned
    /// in occurrence order along each edge.
    CrossingWord { tokens: Vec<(String, i8)> },
}

impl CurveSpec {
    pub fn base(name: &str) -> CurveSpec {
        CurveSpec::TwistWord {
            base: name.to_string(),
            twists: Vec::new(),
        }
    }

    pub fn twisted(name: &str, twists: &[(&str, i64)]) -> CurveSpec {
        CurveSpec::TwistWord {
            base: name.to_string(),
            twists: twists.iter().map(|(n, p)| (n.to_string(), *p)).collect(),
        }
    }
}

/// Named curve library on a fixed surface.
#[derive(Debug, Clone)]
pub struct Library {
    surface: Surface,
    curves: BTreeMap<String, Diagram>,
    order: Vec<String>,
}

impl Library {
    /// Build the base library; every curve is validated.
    pub fn build(surface: Surface) -> Result<Library> {
        let g = surface.genus();
        let mut curves = BTreeMap::new();
        let mut order = Vec::new();

        // a_i crosses edge b_i once, b_i crosses edge a_i once; these are
        // dual to the polygon loops and meet each other exactly once
        for i in 1..=g {
            let a = one_crossing_curve(surface, surface.b_edge(i));
            let b = one_crossing_curve(surface, surface.a_edge(i));
            curves.insert(format!("a{i}"), a);
            curves.insert(format!("b{i}"), b);
            order.push(format!("a{i}"));
            order.push(format!("b{i}"));
        }
        // h_i = boundary of a regular neighborhood of a_i union b_i
        for i in 1..=g {
            let a = curves[&format!("a{i}")].clone();
            let b = curves[&format!("b{i}")].clone();
            let joint = a.merge(&b);
            let joint = moves::tighten_pair(&joint, 0, 1, 1, &BTreeSet::new())?;
            let boundaries = nbhd_boundary_of_components(&joint, &BTreeSet::from([0, 1]))?;
            let h = single_essential(boundaries)?;
            curves.insert(format!("h{i}"), h);
            order.push(format!("h{i}"));
        }
        // chain curves c_i through consecutive handles; these are the only
        // library curves meeting the handle boundaries, so twist words over
        // them move handle curves around
        for i in 1..g {
            let c = two_crossing_curve(surface, surface.b_edge(i), surface.b_edge(i + 1));
            curves.insert(format!("c{i}"), c);
            order.push(format!("c{i}"));
        }
        // spine curves: s_j encloses handles 1..j+1; built from the previous
        // spine (or h1), the connector w crossing into the next handle, and
        // that handle's boundary
        let mut lib = Library {
            surface,
            curves,
            order,
        };
        for j in 1..=g.saturating_sub(3) {
            let prev = if j == 1 {
                lib.get("h1")?.clone()
            } else {
                lib.get(&format!("s{}", j - 1))?.clone()
            };
            let conn = lib.get(&format!("c{j}"))?.clone();
            let next_h = lib.get(&format!("h{}", j + 1))?.clone();
            let s = enclosing_curve(&prev, &conn, &next_h, 1 + j as i64)?;
            lib.curves.insert(format!("s{j}"), s);
            lib.order.push(format!("s{j}"));
        }
        for name in &lib.order {
            let d = &lib.curves[name];
            d.validate()?;
            if !is_essential_single(d)? {
                return Err(Error::Internal("library curve is inessential"));
            }
        }
        Ok(lib)
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn get(&self, name: &str) -> Result<&Diagram> {
        self.curves
            .get(name)
            .ok_or_else(|| Error::UnknownCurveName(name.to_string()))
    }

    pub fn names(&self) -> &[String] {
        &self.order
    }

    /// The 2g dual base curves a1..bg, used for separation parity checks.
    pub fn parity_basis(&self) -> Vec<&Diagram> {
        let g = self.surface.genus();
        let mut out = Vec::new();
        for i in 1..=g {
            out.push(&self.curves[&format!("a{i}")]);
            out.push(&self.curves[&format!("b{i}")]);
        }
        out
    }
}

fn one_crossing_curve(surface: Surface, edge: usize) -> Diagram {
    Diagram::from_proto(
        surface,
        alloc::vec![alloc::vec![ProtoVisit {
            edge,
            key: Frac::int(0),
            tie: (0, 0),
            enters_pos: true,
        }]],
    )
}

fn two_crossing_curve(surface: Surface, e1: usize, e2: usize) -> Diagram {
    // entering both edges positively keeps the two chords nested
    Diagram::from_proto(
        surface,
        alloc::vec![alloc::vec![
            ProtoVisit {
                edge: e1,
                key: Frac::int(0),
                tie: (0, 0),
                enters_pos: true,
            },
            ProtoVisit {
                edge: e2,
                key: Frac::int(0),
                tie: (0, 1),
                enters_pos: true,
            },
        ]],
    )
}

/// Expect exactly one essential curve among candidate boundary diagrams.
fn single_essential(cands: Vec<Diagram>) -> Result<Diagram> {
    let mut keep = Vec::new();
    for d in cands {
        let (d, vanished) = moves::remove_spurs(&d)?;
        if !vanished.is_empty() {
            continue;
        }
        if is_essential_single(&d)? {
            keep.push(d);
        }
    }
    match keep.len() {
        1 => Ok(keep.pop().unwrap()),
        _ => Err(Error::Internal("expected exactly one essential boundary")),
    }
}

/// All boundary circles of a regular neighborhood of the named components,
/// realized as standalone single-curve diagrams (unreduced).
pub fn nbhd_boundary_of_components(
    diag: &Diagram,
    comps: &BTreeSet<usize>,
) -> Result<Vec<Diagram>> {
    let ov = Overlay::build(diag)?;
    let cut = ov.pieces_of_components(comps);
    let regions = ov.regions(&cut)?;
    let mut out = Vec::new();
    for r in 0..regions.count {
        for circle in &regions.circles[r] {
            let proto = circle_parallel_path(&ov, circle)?;
            if !proto.is_empty() {
                out.push(Diagram::from_proto(diag.surface(), alloc::vec![proto]));
            }
        }
    }
    Ok(out)
}

/// Is the single-component diagram an essential curve (does not bound a
/// disk)?  The diagram must be spur-reduced.
pub fn is_essential_single(diag: &Diagram) -> Result<bool> {
    if diag.component_count() != 1 || diag.size() == 0 {
        return Ok(false);
    }
    let ov = Overlay::build(diag)?;
    let cut = ov.pieces_of_components(&BTreeSet::from([0]));
    let regions = ov.regions(&cut)?;
    for r in 0..regions.count {
        if regions.chi[r] == 1 && regions.circles[r].len() == 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Realize a curve spec as an embedded, essential, reduced single-curve
/// diagram.
pub fn realize(lib: &Library, caps: &Caps, spec: &CurveSpec) -> Result<Diagram> {
    match spec {
        CurveSpec::TwistWord { base, twists } => {
            if twists.len() > caps.max_word_len {
                return Err(Error::WordTooLong {
                    len: twists.len(),
                    cap: caps.max_word_len,
                });
            }
            let mut d = lib.get(base)?.clone();
            for (name, power) in twists {
                if power.unsigned_abs() as i64 > caps.max_twist_power {
                    return Err(Error::TwistPowerTooLarge {
                        power: *power,
                        cap: caps.max_twist_power,
                    });
                }
                let c = lib.get(name)?;
                for _ in 0..power.unsigned_abs() {
                    d = apply_twist(&d, c, *power > 0)?;
                }
            }
            d.validate()?;
            if !is_essential_single(&d)? {
                return Err(Error::InessentialCurve);
            }
            Ok(d)
        }
        CurveSpec::CrossingWord { tokens } => {
            if tokens.is_empty() || tokens.len() > caps.max_word_len {
                return Err(Error::WordTooLong {
                    len: tokens.len(),
                    cap: caps.max_word_len,
                });
            }
            let surface = lib.surface();
            let mut counts: BTreeMap<usize, i128> = BTreeMap::new();
            let mut visits = Vec::new();
            for (k, (name, dir)) in tokens.iter().enumerate() {
                let edge = surface
                    .parse_edge_name(name)
                    .ok_or_else(|| Error::UnknownCurveName(name.clone()))?;
                let c = counts.entry(edge).or_insert(0);
                visits.push(ProtoVisit {
                    edge,
                    key: Frac::int(*c),
                    tie: (0, k as u64),
                    enters_pos: *dir > 0,
                });
                *c += 1;
            }
            let d = Diagram::from_proto(surface, alloc::vec![visits]);
            d.validate().map_err(|e| match e {
                Error::NotEmbeddable => Error::NotEmbeddable,
                other => other,
            })?;
            let (d, vanished) = moves::remove_spurs(&d)?;
            if !vanished.is_empty() {
                return Err(Error::InessentialCurve);
            }
            d.validate()?;
            if !is_essential_single(&d)? {
                return Err(Error::InessentialCurve);
            }
            Ok(d)
        }
    }
}

/// One Dehn twist of the single-curve diagram `d` about the single-curve
/// diagram `c` (both standalone); returns the twisted curve standalone.
pub fn apply_twist(d: &Diagram, c: &Diagram, positive: bool) -> Result<Diagram> {
    let joint = d.merge(c);
    let joint = moves::tighten_pair(&joint, 0, 1, 1, &BTreeSet::new())?;
    let twisted = twist_once(&joint, 1, positive)?;
    let alone = twisted.restrict(&BTreeSet::from([0]));
    let (alone, vanished) = moves::remove_spurs(&alone)?;
    if !vanished.is_empty() {
        return Err(Error::Internal("twist produced a trivial curve"));
    }
    alone.validate()?;
    Ok(alone)
}

/// Geometric intersection number of two specs.
pub fn intersection_number(lib: &Library, caps: &Caps, a: &CurveSpec, b: &CurveSpec) -> Result<u64> {
    let da = realize(lib, caps, a)?;
    let db = realize(lib, caps, b)?;
    intersection_of_diagrams(&da, &db)
}

/// Geometric intersection number of two standalone single-curve diagrams.
pub fn intersection_of_diagrams(da: &Diagram, db: &Diagram) -> Result<u64> {
    let joint = da.merge(db);
    let joint = moves::tighten_pair(&joint, 0, 1, 1, &BTreeSet::new())?;
    let ov = Overlay::build(&joint)?;
    Ok(moves::crossings_between(&ov, 0, 1) as u64)
}

/// Topology of one complement component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplementComponent {
    pub chi: i64,
    pub genus: i64,
    pub boundary: usize,
    /// Which (component, left-side) pairs of the diagram appear on this
    /// region's boundary circles.
    pub incident: BTreeSet<(usize, bool)>,
}

/// Complement analysis of a whole diagram.
#[derive(Debug, Clone)]
pub struct ComplementAnalysis {
    pub components: Vec<ComplementComponent>,
}

/// Cut along every component and report the complement pieces.
pub fn complement(diag: &Diagram) -> Result<ComplementAnalysis> {
    let ov = Overlay::build(diag)?;
    let all: BTreeSet<usize> = (0..diag.component_count()).collect();
    let cut = ov.pieces_of_components(&all);
    let regions = ov.regions(&cut)?;
    let mut components = Vec::new();
    let mut total = 0;
    for r in 0..regions.count {
        let mut incident = BTreeSet::new();
        for circle in &regions.circles[r] {
            for &(comp, left) in &circle.runs {
                incident.insert((comp, left));
            }
        }
        components.push(ComplementComponent {
            chi: regions.chi[r],
            genus: regions.genus(r),
            boundary: regions.boundary_count(r),
            incident,
        });
        total += regions.chi[r];
    }
    if total != diag.surface().euler() {
        return Err(Error::Internal("complement Euler sum mismatch"));
    }
    Ok(ComplementAnalysis { components })
}

/// Is the (standalone, single-curve) diagram separating?  Computed two ways
/// that must agree: complement component count, and mod-2 intersection with
/// the 2g parity basis curves.
pub fn is_separating(lib: &Library, diag: &Diagram) -> Result<bool> {
    let ana = complement(diag)?;
    let by_complement = ana.components.len() == 2;
    let mut by_parity = true;
    for basis in lib.parity_basis() {
        if intersection_of_diagrams(diag, basis)? % 2 == 1 {
            by_parity = false;
            break;
        }
    }
    if by_complement != by_parity {
        return Err(Error::Internal("separation tests disagree"));
    }
    Ok(by_complement)
}

/// A handle curve separates off a one-holed torus.
pub fn is_handle_curve(lib: &Library, diag: &Diagram) -> Result<bool> {
    if !is_separating(lib, diag)? {
        return Ok(false);
    }
    let ana = complement(diag)?;
    Ok(ana
        .components
        .iter()
        .any(|c| c.genus == 1 && c.boundary == 1))
}

/// Are the two standalone curves isotopic?  True iff they can be made
/// disjoint and then cobound an annulus.
pub fn is_isotopic(da: &Diagram, db: &Diagram) -> Result<bool> {
    let joint = da.merge(db);
    let joint = moves::tighten_pair(&joint, 0, 1, 1, &BTreeSet::new())?;
    let ov = Overlay::build(&joint)?;
    if moves::crossings_between(&ov, 0, 1) > 0 {
        return Ok(false);
    }
    let cut = ov.pieces_of_components(&BTreeSet::from([0, 1]));
    let regions = ov.regions(&cut)?;
    for r in 0..regions.count {
        if regions.chi[r] != 0 || regions.circles[r].len() != 2 {
            continue;
        }
        let sides: Vec<&(usize, bool)> = regions.circles[r]
            .iter()
            .filter(|c| c.corners.is_empty() && c.runs.len() == 1)
            .map(|c| &c.runs[0])
            .collect();
        if sides.len() == 2 && sides[0].0 != sides[1].0 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Build the spine curve around handles 1..k+1: take the essential boundary
/// component of a neighborhood of prev + connector + next handle boundary
/// whose small side has the expected genus.
fn enclosing_curve(
    prev: &Diagram,
    conn: &Diagram,
    next_h: &Diagram,
    enclosed_genus: i64,
) -> Result<Diagram> {
    let mut joint = prev.merge(conn);
    joint = moves::tighten_pair(&joint, 0, 1, 1, &BTreeSet::new())?;
    joint = joint.merge(next_h);
    let none = BTreeSet::new();
    joint = moves::tighten_pairs(
        &joint,
        &[
            (0, 2, 2, none.clone()),
            (1, 2, 2, none.clone()),
            (0, 1, 1, none),
        ],
    )?;
    let cands = nbhd_boundary_of_components(&joint, &BTreeSet::from([0, 1, 2]))?;
    for d in cands {
        let (d, vanished) = moves::remove_spurs(&d)?;
        if !vanished.is_empty() || !is_essential_single(&d)? {
            continue;
        }
        let ana = complement(&d)?;
        if ana.components.len() != 2 {
            continue;
        }
        if ana
            .components
            .iter()
            .any(|c| c.boundary == 1 && c.genus == enclosed_genus)
        {
            return Ok(d);
        }
    }
    Err(Error::Internal("no enclosing spine curve found"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lib3() -> Library {
        Library::build(Surface::new(3).unwrap()).unwrap()
    }

    #[test]
    fn base_intersections() {
        let lib = lib3();
        let caps = Caps::default();
        assert_eq!(
            intersection_number(&lib, &caps, &CurveSpec::base("a1"), &CurveSpec::base("b1"))
                .unwrap(),
            1
        );
        assert_eq!(
            intersection_number(&lib, &caps, &CurveSpec::base("a1"), &CurveSpec::base("a2"))
                .unwrap(),
            0
        );
        assert_eq!(
            intersection_number(&lib, &caps, &CurveSpec::base("h1"), &CurveSpec::base("a1"))
                .unwrap(),
            0
        );
    }

    #[test]
    fn base_library_has_expected_names() {
        let lib = lib3();
        assert_eq!(lib.names().len(), 11); // a1..b3, h1..h3, c1..c2; no spines at genus 3
        assert!(lib.get("h3").is_ok());
        assert!(lib.get("s1").is_err());
    }

    #[test]
    fn complement_of_a1_is_connected() {
        let lib = lib3();
        let ana = complement(lib.get("a1").unwrap()).unwrap();
        assert_eq!(ana.components.len(), 1);
        let c = &ana.components[0];
        assert_eq!((c.genus, c.boundary, c.chi), (2, 2, -4));
    }

    #[test]
    fn h1_is_a_handle_curve() {
        let lib = lib3();
        let h1 = lib.get("h1").unwrap();
        let ana = complement(h1).unwrap();
        assert_eq!(ana.components.len(), 2);
        let mut sides: Vec<(i64, usize, i64)> = ana
            .components
            .iter()
            .map(|c| (c.genus, c.boundary, c.chi))
            .collect();
        sides.sort();
        assert_eq!(sides, alloc::vec![(1, 1, -1), (2, 1, -3)]);
        assert!(is_handle_curve(&lib, h1).unwrap());
        assert!(!is_separating(&lib, lib.get("a1").unwrap()).unwrap());
    }

    #[test]
    fn twist_formula_small_cases() {
        let lib = lib3();
        let caps = Caps::default();
        // i(t_b1(a1), a1) = 1 * i(a1,b1)^2 = 1
        let t1 = CurveSpec::twisted("a1", &[("b1", 1)]);
        assert_eq!(
            intersection_number(&lib, &caps, &t1, &CurveSpec::base("a1")).unwrap(),
            1
        );
        // i(t_b1^2(a1), a1) = 2
        let t2 = CurveSpec::twisted("a1", &[("b1", 2)]);
        assert_eq!(
            intersection_number(&lib, &caps, &t2, &CurveSpec::base("a1")).unwrap(),
            2
        );
        // twisting is an isotopy-class operation: i with b1 unchanged
        assert_eq!(
            intersection_number(&lib, &caps, &t1, &CurveSpec::base("b1")).unwrap(),
            1
        );
    }

    #[test]
    fn isotopy_and_inverse_twists() {
        let lib = lib3();
        let caps = Caps::default();
        let d = realize(
            &lib,
            &caps,
            &CurveSpec::twisted("a1", &[("b1", 1), ("b1", -1)]),
        )
        .unwrap();
        assert!(is_isotopic(&d, lib.get("a1").unwrap()).unwrap());
        assert!(!is_isotopic(lib.get("a1").unwrap(), lib.get("a2").unwrap()).unwrap());
    }

    #[test]
    fn inessential_crossing_word() {
        let lib = lib3();
        let caps = Caps::default();
        // crossing a1 and coming straight back bounds a disk
        let spec = CurveSpec::CrossingWord {
            tokens: alloc::vec![("a1".to_string(), 1), ("a1".to_string(), -1)],
        };
        assert_eq!(realize(&lib, &caps, &spec), Err(Error::InessentialCurve));
    }

    #[test]
    fn handle_curves_under_twists_stay_handles() {
        let lib = lib3();
        let caps = Caps::default();
        let d = realize(&lib, &caps, &CurveSpec::twisted("h1", &[("a2", 1), ("b1", 1)])).unwrap();
        assert!(is_handle_curve(&lib, &d).unwrap());
    }
}

#[cfg(test)]
mod genus45_tests {
    use super::*;

    #[test]
    fn spine_curves_exist_for_higher_genus() {
        for g in [4u32, 5] {
            let lib = Library::build(Surface::new(g).unwrap()).unwrap();
            for j in 1..=(g - 3) {
                let s = lib.get(&format!("s{j}")).unwrap();
                let ana = complement(s).unwrap();
                assert_eq!(ana.components.len(), 2, "s{j} separating at genus {g}");
                let mut sides: Vec<(i64, usize)> = ana
                    .components
                    .iter()
                    .map(|c| (c.genus, c.boundary))
                    .collect();
                sides.sort();
                let mut want = alloc::vec![(1 + j as i64, 1), (g as i64 - 1 - j as i64, 1)];
                want.sort();
                assert_eq!(sides, want, "s{j} sides at genus {g}");
            }
        }
    }
}

#[cfg(test)]
mod chain_curve_tests {
    use super::*;

    #[test]
    fn chain_curves_meet_handles() {
        let lib = Library::build(Surface::new(3).unwrap()).unwrap();
        let caps = Caps::default();
        let i = |a: &str, b: &str| {
            intersection_number(&lib, &caps, &CurveSpec::base(a), &CurveSpec::base(b)).unwrap()
        };
        assert_eq!(i("c1", "h1"), 2);
        assert_eq!(i("c1", "h2"), 2);
        assert_eq!(i("c1", "h3"), 0);
        assert_eq!(i("c2", "h2"), 2);
        assert_eq!(i("c2", "h3"), 2);
        assert!(!is_separating(&lib, lib.get("c1").unwrap()).unwrap());
    }
}
