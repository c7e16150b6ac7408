use core::ops::{Add, Mul, Neg, Sub};

use super::{to_f64, Rational};

/// Closed interval `[lo, hi]` enclosing a real quantity. Every operation
/// rounds its endpoints one ulp outward, so enclosure survives f64 rounding.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "inverted bracket [{lo}, {hi}]");
        Bracket { lo, hi }
    }

    pub const fn point(x: f64) -> Self {
        Bracket { lo: x, hi: x }
    }

    pub fn zero() -> Self {
        Bracket::point(0.0)
    }

    /// Smallest double interval around an exact rational.
    pub fn from_rational(r: &Rational) -> Self {
        let x = to_f64(r);
        match Rational::from_float(x) {
            Some(back) if &back == r => Bracket::point(x),
            Some(back) if &back < r => Bracket::new(x, x.next_up()),
            _ => Bracket::new(x.next_down(), x),
        }
    }

    /// Encloses 1/j².
    pub fn recip_square(j: u64) -> Self {
        let j = j as f64;
        let x = 1.0 / (j * j);
        Bracket::new(x.next_down(), x.next_up())
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn encloses(&self, other: &Bracket) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Division by a positive exact integer.
    pub fn div_int(self, d: u64) -> Self {
        let d = d as f64;
        Bracket::new((self.lo / d).next_down(), (self.hi / d).next_up())
    }

    pub fn square(self) -> Self {
        let a = self.lo * self.lo;
        let b = self.hi * self.hi;
        let hi = a.max(b).next_up();
        let lo = if self.lo <= 0.0 && self.hi >= 0.0 {
            0.0
        } else {
            a.min(b).next_down().max(0.0)
        };
        Bracket::new(lo, hi)
    }

    pub fn hull(self, other: Bracket) -> Self {
        Bracket::new(self.lo.min(other.lo), self.hi.max(other.hi))
    }

    /// The bracket widened symmetrically by `r ≥ 0`.
    pub fn inflate(self, r: f64) -> Self {
        Bracket::new((self.lo - r).next_down(), (self.hi + r).next_up())
    }
}

impl Add for Bracket {
    type Output = Bracket;
    fn add(self, o: Bracket) -> Bracket {
        Bracket::new((self.lo + o.lo).next_down(), (self.hi + o.hi).next_up())
    }
}

impl Sub for Bracket {
    type Output = Bracket;
    fn sub(self, o: Bracket) -> Bracket {
        Bracket::new((self.lo - o.hi).next_down(), (self.hi - o.lo).next_up())
    }
}

impl Neg for Bracket {
    type Output = Bracket;
    fn neg(self) -> Bracket {
        Bracket::new(-self.hi, -self.lo)
    }
}

impl Mul for Bracket {
    type Output = Bracket;
    fn mul(self, o: Bracket) -> Bracket {
        let p = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        let lo = p.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Bracket::new(lo.next_down(), hi.next_up())
    }
}
