//! Exact model of the curve complex of a one-holed torus: the Farey graph.
//!
//! Vertices are slopes p/q in lowest terms with 1/0 for infinity; u and v are
//! joined by an edge iff |p_u q_v - p_v q_u| = 1.  Distances are computed by
//! an arithmetic parent-descent after normalizing one endpoint to infinity,
//! and independently by BFS over a denominator-bounded subgraph; the two are
//! cross-checked in the tests and the acceptance suite.

use crate::error::{Error, Result};
use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;
use core::fmt;

/// A slope: vertex of the Farey graph.  Canonical form has `q >= 0`,
/// `gcd(|p|, q) = 1`, and `(1, 0)` for infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slope {
    p: i64,
    q: i64,
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Slope {
    /// Canonicalize (p, q); (0, 0) is not a slope.
    pub fn new(p: i64, q: i64) -> Slope {
        assert!(p != 0 || q != 0, "slope 0/0");
        let g = gcd(p, q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 || (q == 0 && p < 0) {
            p = -p;
            q = -q;
        }
        Slope { p, q }
    }

    pub const INFINITY: Slope = Slope { p: 1, q: 0 };
    pub const ZERO: Slope = Slope { p: 0, q: 1 };

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// |p_u q_v - p_v q_u|, the geometric intersection number of the
    /// corresponding curves in the one-holed torus.
    pub fn det_abs(self, other: Slope) -> i64 {
        let d = self.p as i128 * other.q as i128 - other.p as i128 * self.q as i128;
        d.unsigned_abs() as i64
    }

    /// Farey adjacency.
    pub fn adjacent(self, other: Slope) -> bool {
        self.det_abs(other) == 1
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// Parse "p/q" (also accepts a bare integer "p").
pub fn parse_slope(s: &str) -> Option<Slope> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: i64 = p.trim().parse().ok()?;
        let q: i64 = q.trim().parse().ok()?;
        if p == 0 && q == 0 {
            return None;
        }
        Some(Slope::new(p, q))
    } else {
        let p: i64 = s.parse().ok()?;
        Some(Slope::new(p, 1))
    }
}

/// Extended gcd: returns (g, x, y) with a x + b y = g.
fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = egcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// One neighbor (r, s) of (p, q) with p s - q r = 1.
fn base_neighbor(p: i64, q: i64) -> (i64, i64) {
    // p s - q r = 1 via extended gcd of (p, q)
    let (g, x, y) = egcd(p, q);
    debug_assert_eq!(g.abs(), 1);
    // p x + q y = g; want p s + q (-r) = 1
    let (s, r) = (x * g.signum(), -y * g.signum());
    debug_assert_eq!(p * s - q * r, 1);
    (r, s)
}

/// Distance from infinity = 1/0 by parent descent: every slope with q >= 2
/// has exactly two neighbors of strictly smaller denominator, and some
/// geodesic to infinity descends through them.
fn dist_to_infinity(p: i64, q: i64, memo: &mut BTreeMap<(i64, i64), u32>) -> u32 {
    debug_assert!(q >= 0);
    if q == 0 {
        return 0;
    }
    if q == 1 {
        return 1;
    }
    if let Some(&d) = memo.get(&(p, q)) {
        return d;
    }
    // parents: q0 = p^{-1} mod q and q - q0
    let (_, x, _) = egcd(p.rem_euclid(q), q);
    let q0 = x.rem_euclid(q);
    debug_assert!(0 < q0 && q0 < q, "q0={q0} q={q}");
    debug_assert_eq!((p * q0).rem_euclid(q), 1);
    let p0 = (p * q0 - 1) / q;
    let q1 = q - q0;
    let p1 = (p * q1 + 1) / q;
    let d0 = dist_to_infinity(p0, q0, memo);
    let d1 = dist_to_infinity(p1, q1, memo);
    let d = 1 + d0.min(d1);
    memo.insert((p, q), d);
    d
}

/// Apply the normalizing matrix sending `u` to infinity.
fn normalize_pair(u: Slope, v: Slope) -> Slope {
    // M = [[a, b], [-q_u, p_u]] with a p_u + b q_u = 1 has det 1 and M u = (1, 0)
    let (g, a, b) = egcd(u.p, u.q);
    let (a, b) = (a * g.signum(), b * g.signum());
    let p = a * v.p + b * v.q;
    let q = -u.q * v.p + u.p * v.q;
    if p == 0 && q == 0 {
        // v was u itself
        return Slope::INFINITY;
    }
    Slope::new(p, q)
}

/// Exact Farey distance, by arithmetic parent descent.
pub fn distance(u: Slope, v: Slope) -> u32 {
    if u == v {
        return 0;
    }
    let w = normalize_pair(u, v);
    if w == Slope::INFINITY {
        return 0;
    }
    let mut memo = BTreeMap::new();
    dist_to_infinity(w.p, w.q, &mut memo)
}

fn div_floor(a: i64, b: i64) -> i64 {
    debug_assert!(b != 0);
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -div_floor(-a, b)
}

/// All neighbors of `u` with |p| and q bounded, in canonical order.
pub fn neighbors_bounded(u: Slope, bound: i64) -> Vec<Slope> {
    let (r0, s0) = base_neighbor(u.p, u.q);
    let mut out = BTreeSet::new();
    // two det families: (r0 + t p, s0 + t q) and its negation family
    for sign in [1i64, -1] {
        let (rb, sb) = (sign * r0, sign * s0);
        // intersect |rb + t p| <= bound with |sb + t q| <= bound
        let mut lo = i64::MIN / 4;
        let mut hi = i64::MAX / 4;
        for (c, m) in [(rb, u.p), (sb, u.q)] {
            if m == 0 {
                continue;
            }
            let (a, b) = (div_ceil(-bound - c, m), div_floor(bound - c, m));
            let (a, b) = if a <= b { (a, b) } else { (b, a) };
            lo = lo.max(a);
            hi = hi.min(b);
        }
        for t in lo..=hi {
            let (r, s) = (rb + t * u.p, sb + t * u.q);
            if r == 0 && s == 0 {
                continue;
            }
            if r.abs() <= bound && s.abs() <= bound {
                out.insert(Slope::new(r, s));
            }
        }
    }
    out.into_iter().collect()
}

/// Deterministic preference order: smaller denominator, then smaller absolute
/// numerator, then positive before negative.
fn tie_key(s: &Slope) -> (i64, i64, bool) {
    (s.q, s.p.abs(), s.p < 0)
}

/// BFS distance inside the subgraph of slopes with |p|, q <= bound.
/// Returns None if `v` is unreachable within the bound.  Used as the
/// independent oracle for `distance`.
pub fn bfs_distance_bounded(u: Slope, v: Slope, bound: i64) -> Option<u32> {
    if u == v {
        return Some(0);
    }
    let mut dist: BTreeMap<Slope, u32> = BTreeMap::new();
    let mut queue = VecDeque::new();
    dist.insert(u, 0);
    queue.push_back(u);
    while let Some(x) = queue.pop_front() {
        let dx = dist[&x];
        for y in neighbors_bounded(x, bound) {
            if !dist.contains_key(&y) {
                if y == v {
                    return Some(dx + 1);
                }
                dist.insert(y, dx + 1);
                queue.push_back(y);
            }
        }
    }
    None
}

fn geodesic_bound(u: Slope, v: Slope) -> i64 {
    2 * (u.p.abs() + u.q + v.p.abs() + v.q) + 16
}

/// A geodesic from u to v, deterministic: among equally good next vertices
/// prefer smaller denominator, then smaller numerator.
pub fn geodesic(u: Slope, v: Slope) -> Result<Vec<Slope>> {
    let target = distance(u, v);
    let mut bound = geodesic_bound(u, v);
    for _ in 0..8 {
        if let Some(path) = geodesic_within(u, v, target, bound) {
            return Ok(path);
        }
        bound *= 2;
    }
    Err(Error::Internal("geodesic: bounded BFS never matched the arithmetic distance"))
}

fn geodesic_within(u: Slope, v: Slope, target: u32, bound: i64) -> Option<Vec<Slope>> {
    // BFS from v so we can walk from u down the distance field
    let mut dist: BTreeMap<Slope, u32> = BTreeMap::new();
    let mut queue = VecDeque::new();
    dist.insert(v, 0);
    queue.push_back(v);
    while let Some(x) = queue.pop_front() {
        let dx = dist[&x];
        if dx >= target {
            continue;
        }
        for y in neighbors_bounded(x, bound) {
            if !dist.contains_key(&y) {
                dist.insert(y, dx + 1);
                queue.push_back(y);
            }
        }
    }
    if dist.get(&u) != Some(&target) {
        return None;
    }
    let mut path = Vec::with_capacity(target as usize + 1);
    let mut cur = u;
    path.push(cur);
    for step in (0..target).rev() {
        let next = neighbors_bounded(cur, bound)
            .into_iter()
            .filter(|y| dist.get(y) == Some(&step))
            .min_by_key(tie_key)?;
        path.push(next);
        cur = next;
    }
    debug_assert_eq!(cur, v);
    Some(path)
}

/// Geodesic ray: v_0 = through, and for every k,
/// distance(away_from, v_k) = distance(away_from, through) + k.
///
/// Greedy over the neighbor fan of the current vertex, each candidate
/// validated by recomputing the distance; ties broken by smaller
/// denominator, then smaller numerator.
pub fn ray(away_from: Slope, through: Slope, length: usize) -> Result<Vec<Slope>> {
    if away_from == through {
        return Err(Error::Internal("ray: away_from equals through"));
    }
    let base = distance(away_from, through);
    let mut path = Vec::with_capacity(length + 1);
    path.push(through);
    let mut cur = through;
    for k in 0..length {
        let want = base + k as u32 + 1;
        let scale = cur.p.abs().max(cur.q).max(1);
        let mut found: Option<Slope> = None;
        let mut window: i64 = 4;
        for _ in 0..12 {
            found = neighbors_bounded(cur, window * scale)
                .into_iter()
                .filter(|y| distance(away_from, *y) == want)
                .min_by_key(tie_key);
            if found.is_some() {
                break;
            }
            window *= 4;
        }
        let first = found.ok_or(Error::Internal("ray: no extending neighbor found"))?;
        // re-enumerate once at a bound large enough to contain every
        // candidate with a key at most the one found, so the greedy choice
        // does not depend on the window growth schedule
        let safe = (first.q + first.p.abs() + 2) * (scale + 1);
        let next = neighbors_bounded(cur, safe)
            .into_iter()
            .filter(|y| distance(away_from, *y) == want)
            .min_by_key(tie_key)
            .unwrap_or(first);
        path.push(next);
        cur = next;
    }
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        assert_eq!(Slope::new(2, 4), Slope::new(1, 2));
        assert_eq!(Slope::new(-3, 0), Slope::INFINITY);
        assert_eq!(Slope::new(3, -6), Slope::new(-1, 2));
    }

    #[test]
    fn adjacency_examples() {
        assert!(Slope::ZERO.adjacent(Slope::INFINITY));
        assert!(Slope::ZERO.adjacent(Slope::new(1, 2)));
        assert!(!Slope::ZERO.adjacent(Slope::new(3, 5)));
    }

    #[test]
    fn distance_examples() {
        let u = Slope::new(3, 5);
        assert_eq!(distance(u, u), 0);
        assert_eq!(distance(Slope::ZERO, Slope::INFINITY), 1);
        assert_eq!(distance(Slope::ZERO, Slope::new(3, 5)), 2);
    }

    #[test]
    fn geodesic_zero_to_three_fifths() {
        let path = geodesic(Slope::ZERO, Slope::new(3, 5)).unwrap();
        assert_eq!(path.len(), 3);
        assert_eq!(path[0], Slope::ZERO);
        assert_eq!(path[2], Slope::new(3, 5));
        for w in path.windows(2) {
            assert!(w[0].adjacent(w[1]));
        }
    }

    #[test]
    fn arithmetic_matches_bfs_small() {
        // exhaustive cross-check on a small range; the acceptance suite
        // extends this to |p|, q <= 34
        let mut slopes = alloc::vec![Slope::INFINITY];
        for q in 1..=8i64 {
            for p in -8..=8i64 {
                if gcd(p, q) == 1 {
                    slopes.push(Slope::new(p, q));
                }
            }
        }
        for &u in &slopes {
            for &v in &slopes {
                let a = distance(u, v);
                let b = bfs_distance_bounded(u, v, 64).expect("reachable");
                assert_eq!(a, b, "distance mismatch for {u} {v}");
            }
        }
    }

    #[test]
    fn ray_examples() {
        let r = ray(Slope::ZERO, Slope::INFINITY, 0).unwrap();
        assert_eq!(r, alloc::vec![Slope::INFINITY]);
        let r = ray(Slope::ZERO, Slope::INFINITY, 2).unwrap();
        assert_eq!(r.len(), 3);
        for (k, s) in r.iter().enumerate() {
            assert_eq!(distance(Slope::ZERO, *s), 1 + k as u32);
        }
        for w in r.windows(2) {
            assert!(w[0].adjacent(w[1]));
        }
    }

    #[test]
    fn ray_distances_strictly_increase() {
        let r = ray(Slope::new(1, 3), Slope::new(2, 7), 5).unwrap();
        let base = distance(Slope::new(1, 3), Slope::new(2, 7));
        for (k, s) in r.iter().enumerate() {
            assert_eq!(distance(Slope::new(1, 3), *s), base + k as u32);
        }
    }

    #[test]
    fn parse() {
        assert_eq!(parse_slope("3/5"), Some(Slope::new(3, 5)));
        assert_eq!(parse_slope("-2"), Some(Slope::new(-2, 1)));
        assert_eq!(parse_slope("1/0"), Some(Slope::INFINITY));
        assert_eq!(parse_slope("0/0"), None);
    }
}
