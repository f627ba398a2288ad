//! Exact rational arithmetic on i128, used for crossing parameters inside the
//! polygon and for fractional slot keys during diagram surgery.
//!
//! Values stay small (numerators bounded by cubes of boundary positions), so
//! i128 with eager reduction never overflows at desk scale.

use core::cmp::Ordering;

/// A reduced fraction with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Frac {
    pub num: i128,
    pub den: i128,
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Frac {
    pub fn new(num: i128, den: i128) -> Frac {
        debug_assert!(den != 0);
        let s = if den < 0 { -1 } else { 1 };
        let g = gcd(num, den).max(1);
        Frac {
            num: s * num / g,
            den: s * den / g,
        }
    }

    pub fn int(n: i128) -> Frac {
        Frac { num: n, den: 1 }
    }

    pub fn add(self, o: Frac) -> Frac {
        Frac::new(self.num * o.den + o.num * self.den, self.den * o.den)
    }

    pub fn sub(self, o: Frac) -> Frac {
        Frac::new(self.num * o.den - o.num * self.den, self.den * o.den)
    }

    pub fn mul(self, o: Frac) -> Frac {
        Frac::new(self.num * o.num, self.den * o.den)
    }

    pub fn div(self, o: Frac) -> Frac {
        debug_assert!(o.num != 0);
        Frac::new(self.num * o.den, self.den * o.num)
    }

    pub fn neg(self) -> Frac {
        Frac {
            num: -self.num,
            den: self.den,
        }
    }

    pub fn is_negative(self) -> bool {
        self.num < 0
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// Smallest integer >= self.
    pub fn ceil(self) -> i128 {
        self.num.div_euclid(self.den) + if self.num.rem_euclid(self.den) != 0 { 1 } else { 0 }
    }
}

impl PartialOrd for Frac {
    fn partial_cmp(&self, other: &Frac) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Frac {
    fn cmp(&self, other: &Frac) -> Ordering {
        // denominators positive, so cross-multiplication preserves order
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_and_order() {
        assert_eq!(Frac::new(2, 4), Frac::new(1, 2));
        assert_eq!(Frac::new(1, -2), Frac::new(-1, 2));
        assert!(Frac::new(1, 3) < Frac::new(1, 2));
        assert!(Frac::new(-1, 2) < Frac::int(0));
    }

    #[test]
    fn arithmetic() {
        let a = Frac::new(1, 2);
        let b = Frac::new(1, 3);
        assert_eq!(a.add(b), Frac::new(5, 6));
        assert_eq!(a.sub(b), Frac::new(1, 6));
        assert_eq!(a.mul(b), Frac::new(1, 6));
        assert_eq!(a.div(b), Frac::new(3, 2));
    }

    #[test]
    fn ceil_matches_integers() {
        assert_eq!(Frac::new(7, 2).ceil(), 4);
        assert_eq!(Frac::new(-7, 2).ceil(), -3);
        assert_eq!(Frac::int(5).ceil(), 5);
    }
}
