//! Slope coordinates for one-holed torus subsurfaces.
//!
//! A chart is an ordered basis pair (alpha, beta) of curves in the handle
//! meeting once; alpha is declared slope 1/0 and beta slope 0/1.  Absolute
//! values of slope coordinates are intersection numbers with the basis; the
//! relative sign comes from a third reference curve of slope 1/1.  The
//! handedness of the diagrammatic twist is calibrated per chart by a
//! round-trip test, which also pins the continued-fraction word builder to
//! the same convention.

use crate::curves::{self, CurveSpec};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::farey::Slope;
use alloc::string::String;
use alloc::vec::Vec;

/// Slope coordinates on a handle.
#[derive(Debug, Clone)]
pub struct HandleChart {
    /// The handle curve bounding the subsurface.
    pub boundary: Diagram,
    /// Slope 1/0.
    pub basis_a: Diagram,
    /// Slope 0/1.
    pub basis_b: Diagram,
    /// Slope 1/1 sign reference.
    c11: Diagram,
    /// Whether the positive diagram twist acts as the calibrated
    /// right-handed twist in this basis.
    positive_is_right: bool,
    /// Twist-word provenance when the basis curves are library words:
    /// (boundary, basis_a, basis_b) specs.
    pub specs: Option<(CurveSpec, CurveSpec, CurveSpec)>,
    /// Library twist names backing word construction, when available
    /// (name of basis_a's twist target and basis_b's).
    pub twist_names: Option<(String, String)>,
}

impl HandleChart {
    /// Build and calibrate a chart from a handle boundary and a basis pair
    /// with intersection number one.
    pub fn new(
        boundary: Diagram,
        basis_a: Diagram,
        basis_b: Diagram,
        specs: Option<(CurveSpec, CurveSpec, CurveSpec)>,
        twist_names: Option<(String, String)>,
    ) -> Result<HandleChart> {
        if curves::intersection_of_diagrams(&basis_a, &basis_b)? != 1 {
            return Err(Error::Internal("chart basis must meet once"));
        }
        // declare tau_{basis_b}(basis_a) to be the 1/1 reference
        let c11 = curves::apply_twist(&basis_a, &basis_b, true)?;
        let mut chart = HandleChart {
            boundary,
            basis_a,
            basis_b,
            c11,
            positive_is_right: true,
            specs,
            twist_names,
        };
        // calibrate the twist handedness with an asymmetric slope
        let probe = Slope::new(1, 2);
        let word = chart.cf_word(probe);
        let built = chart.apply_word(&word)?;
        if chart.slope_of(&built)? != probe {
            chart.positive_is_right = false;
            let word = chart.cf_word(probe);
            let built = chart.apply_word(&word)?;
            if chart.slope_of(&built)? != probe {
                return Err(Error::Internal("chart calibration failed"));
            }
        }
        Ok(chart)
    }

    /// Slope of an essential curve contained in the handle.
    pub fn slope_of(&self, curve: &Diagram) -> Result<Slope> {
        let p = curves::intersection_of_diagrams(curve, &self.basis_b)? as i64;
        let q = curves::intersection_of_diagrams(curve, &self.basis_a)? as i64;
        if p == 0 && q == 0 {
            // disjoint from both basis curves: isotopic to neither basis is
            // impossible inside a once-punctured torus
            if curves::is_isotopic(curve, &self.basis_a)? {
                return Ok(Slope::INFINITY);
            }
            if curves::is_isotopic(curve, &self.basis_b)? {
                return Ok(Slope::ZERO);
            }
            return Err(Error::CurveNotInHandle);
        }
        if p == 0 {
            return Ok(Slope::ZERO);
        }
        if q == 0 {
            return Ok(Slope::INFINITY);
        }
        let s = curves::intersection_of_diagrams(curve, &self.c11)? as i64;
        if s == (p - q).abs() {
            Ok(Slope::new(p, q))
        } else if s == p + q {
            Ok(Slope::new(-p, q))
        } else {
            Err(Error::Internal("slope sign reference inconsistent"))
        }
    }

    /// Whether the curve lies in the handle (disjoint from the boundary and
    /// on its genus-one side), then its slope.
    pub fn slope_of_checked(&self, curve: &Diagram) -> Result<Slope> {
        if !self.contains(curve)? {
            return Err(Error::CurveNotInHandle);
        }
        self.slope_of(curve)
    }

    /// Does the essential curve lie inside the handle?
    pub fn contains(&self, curve: &Diagram) -> Result<bool> {
        if curves::intersection_of_diagrams(curve, &self.boundary)? != 0 {
            return Ok(false);
        }
        // disjoint: inside iff the genus-one side of the boundary hosts it
        let joint = self.boundary.merge(curve);
        let joint =
            crate::diagram::moves::tighten_pair(&joint, 0, 1, 1, &alloc::collections::BTreeSet::new())?;
        let ov = crate::diagram::complex::Overlay::build(&joint)?;
        let cut = ov.pieces_of_components(&alloc::collections::BTreeSet::from([0]));
        let regions = ov.regions(&cut)?;
        let curve_region = ov.region_of_component(&regions, 1);
        Ok(regions.genus(curve_region) == 1 && regions.boundary_count(curve_region) == 1)
    }

    /// The continued-fraction word reaching the slope from a basis curve:
    /// (start_is_a, moves) where each move is (about_a, power) in
    /// application order.
    fn cf_word(&self, slope: Slope) -> (bool, Vec<(bool, i64)>) {
        // reduce (p, q) to a basis vector by the Euclidean algorithm; the
        // recorded reductions, inverted and reversed, rebuild the slope
        let (mut p, mut q) = (slope.p(), slope.q());
        let mut reductions: Vec<(bool, i64)> = Vec::new();
        while p != 0 && q != 0 {
            if p.abs() >= q.abs() {
                let k = p / q;
                p -= k * q;
                // tau_a^(eps k) undoes this, with eps set by handedness
                reductions.push((true, k));
            } else {
                let k = q / p;
                q -= k * p;
                reductions.push((false, k));
            }
        }
        let start_is_a = q == 0;
        // right-handed convention: tau_a (p,q) = (p - q, q), tau_b (p,q) = (p, q + p)
        let moves = reductions
            .iter()
            .rev()
            .map(|&(about_a, k)| {
                let eps = if about_a { -1 } else { 1 };
                let eps = if self.positive_is_right { eps } else { -eps };
                (about_a, eps * k)
            })
            .collect();
        (start_is_a, moves)
    }

    fn apply_word(&self, word: &(bool, Vec<(bool, i64)>)) -> Result<Diagram> {
        let (start_is_a, moves) = word;
        let mut d = if *start_is_a {
            self.basis_a.clone()
        } else {
            self.basis_b.clone()
        };
        for &(about_a, power) in moves {
            let about = if about_a { &self.basis_a } else { &self.basis_b };
            for _ in 0..power.unsigned_abs() {
                d = curves::apply_twist(&d, about, power > 0)?;
            }
        }
        Ok(d)
    }

    /// Realize the curve of a slope; the result is validated by measuring
    /// its slope back.
    pub fn curve_of_slope(&self, slope: Slope) -> Result<Diagram> {
        let word = self.cf_word(slope);
        let d = self.apply_word(&word)?;
        if self.slope_of(&d)? != slope {
            return Err(Error::Internal("curve_of_slope round trip failed"));
        }
        Ok(d)
    }

    /// Twist-word spec of the slope curve, when the chart is word-backed.
    pub fn spec_of_slope(&self, slope: Slope) -> Option<CurveSpec> {
        let (a_name, b_name) = self.twist_names.clone()?;
        let (start_is_a, moves) = self.cf_word(slope);
        let (base_a, base_b) = match &self.specs {
            Some((_, a, b)) => (a.clone(), b.clone()),
            None => return None,
        };
        let base = if start_is_a { base_a } else { base_b };
        let CurveSpec::TwistWord { base, twists } = base else {
            return None;
        };
        let mut twists = twists;
        for (about_a, power) in moves {
            if power != 0 {
                let name = if about_a { a_name.clone() } else { b_name.clone() };
                twists.push((name, power));
            }
        }
        Some(CurveSpec::TwistWord { base, twists })
    }
}

/// The chart on the library handle h_i with basis (a_i, b_i).
pub fn base_chart(lib: &curves::Library, i: u32) -> Result<HandleChart> {
    let h = alloc::format!("h{i}");
    let a = alloc::format!("a{i}");
    let b = alloc::format!("b{i}");
    let specs = (
        CurveSpec::base(&h),
        CurveSpec::base(&a),
        CurveSpec::base(&b),
    );
    HandleChart::new(
        lib.get(&h)?.clone(),
        lib.get(&a)?.clone(),
        lib.get(&b)?.clone(),
        Some(specs),
        Some((a, b)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::Library;
    use crate::surface::Surface;

    fn chart1() -> HandleChart {
        let lib = Library::build(Surface::new(3).unwrap()).unwrap();
        base_chart(&lib, 1).unwrap()
    }

    #[test]
    fn basis_slopes() {
        let c = chart1();
        assert_eq!(c.slope_of(&c.basis_a.clone()).unwrap(), Slope::INFINITY);
        assert_eq!(c.slope_of(&c.basis_b.clone()).unwrap(), Slope::ZERO);
    }

    #[test]
    fn containment() {
        let lib = Library::build(Surface::new(3).unwrap()).unwrap();
        let c = base_chart(&lib, 1).unwrap();
        assert!(c.contains(lib.get("a1").unwrap()).unwrap());
        assert!(!c.contains(lib.get("a2").unwrap()).unwrap());
        assert_eq!(
            c.slope_of_checked(lib.get("a2").unwrap()),
            Err(Error::CurveNotInHandle)
        );
    }

    #[test]
    fn determinant_intersections_small() {
        let c = chart1();
        let slopes = [
            Slope::INFINITY,
            Slope::ZERO,
            Slope::new(1, 1),
            Slope::new(-1, 1),
            Slope::new(1, 2),
            Slope::new(2, 1),
            Slope::new(-2, 3),
        ];
        let curves_built: Vec<Diagram> = slopes
            .iter()
            .map(|&s| c.curve_of_slope(s).unwrap())
            .collect();
        for (i, u) in slopes.iter().enumerate() {
            for (j, v) in slopes.iter().enumerate() {
                let want = u.det_abs(*v);
                let got =
                    curves::intersection_of_diagrams(&curves_built[i], &curves_built[j]).unwrap();
                assert_eq!(got, want as u64, "i({u}, {v})");
            }
        }
    }

    #[test]
    fn roundtrip_slopes() {
        let c = chart1();
        for q in 0..=3i64 {
            for p in -3..=3i64 {
                if p == 0 && q == 0 {
                    continue;
                }
                let s = Slope::new(p, q);
                let d = c.curve_of_slope(s).unwrap();
                assert_eq!(c.slope_of(&d).unwrap(), s, "roundtrip {s}");
            }
        }
    }

    #[test]
    fn c11_is_twist_image() {
        let lib = Library::build(Surface::new(3).unwrap()).unwrap();
        let c = base_chart(&lib, 1).unwrap();
        let one_one = c.curve_of_slope(Slope::new(1, 1)).unwrap();
        let minus = c.curve_of_slope(Slope::new(-1, 1)).unwrap();
        // tau_{a1}(b1) realizes one of the two slopes +-1/1
        let t = curves::apply_twist(lib.get("b1").unwrap(), lib.get("a1").unwrap(), true).unwrap();
        let hits = curves::is_isotopic(&t, &one_one).unwrap()
            || curves::is_isotopic(&t, &minus).unwrap();
        assert!(hits);
    }

    #[test]
    fn spec_backed_slopes() {
        let lib = Library::build(Surface::new(3).unwrap()).unwrap();
        let c = base_chart(&lib, 1).unwrap();
        let s = Slope::new(2, 3);
        let spec = c.spec_of_slope(s).unwrap();
        let d = curves::realize(&lib, &crate::curves::Caps::default(), &spec).unwrap();
        assert_eq!(c.slope_of(&d).unwrap(), s);
    }
}
