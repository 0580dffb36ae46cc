//! Midpoint-radius ball arithmetic over `f64` with outward rounding.
//!
//! A [`Ball`] `(c, r)` represents the set `{x : |x - c| <= r}`.  Every
//! operation returns a ball that contains the exact image of its input sets.
//! Outward rounding is realized by post-hoc epsilon inflation: each nearest
//! rounded float operation is followed by a one-ulp step in the safe
//! direction (see [`round`]).  This is the single rounding strategy of the
//! crate; swapping in hardware directed rounding would only touch [`round`].

use crate::{Error, Result};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Directed-rounding helpers.
///
/// For correctly rounded machine ops (`+ - * / sqrt`) the nearest result
/// differs from the exact one by at most half an ulp, so stepping one ulp up
/// (down) yields a guaranteed upper (lower) bound.
pub mod round {
    /// Upper bound of `a + b`.
    #[inline(always)]
    pub fn add_up(a: f64, b: f64) -> f64 {
        (a + b).next_up()
    }

    /// Lower bound of `a - b`.
    #[inline(always)]
    pub fn sub_down(a: f64, b: f64) -> f64 {
        (a - b).next_down()
    }

    /// Upper bound of `a * b`.
    #[inline(always)]
    pub fn mul_up(a: f64, b: f64) -> f64 {
        (a * b).next_up()
    }

    /// Lower bound of `a * b`.
    #[inline(always)]
    pub fn mul_down(a: f64, b: f64) -> f64 {
        (a * b).next_down()
    }

    /// Upper bound of `a / b`.
    #[inline(always)]
    pub fn div_up(a: f64, b: f64) -> f64 {
        (a / b).next_up()
    }

    /// Bound on the rounding error committed when a single nearest-rounded
    /// operation produced `c`.  Half an ulp would do; a full relative epsilon
    /// plus one subnormal quantum keeps the bound trivially safe.
    #[inline(always)]
    pub fn rounding_err(c: f64) -> f64 {
        c.abs() * ERR_SCALE + f64::MIN_POSITIVE
    }

    const ERR_SCALE: f64 = 2.0 * f64::EPSILON; // 2^-51
}

use round::*;

/// Midpoint-radius enclosure of a real number.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ball {
    c: f64,
    r: f64,
}

impl Ball {
    pub const ZERO: Ball = Ball { c: 0.0, r: 0.0 };
    pub const ONE: Ball = Ball { c: 1.0, r: 0.0 };

    /// Checked constructor: center must be finite, radius finite and `>= 0`.
    pub fn new(c: f64, r: f64) -> Result<Self> {
        if !c.is_finite() || !r.is_finite() || r < 0.0 {
            return Err(Error::DomainError(format!(
                "invalid ball components c={c}, r={r}"
            )));
        }
        Ok(Ball { c, r })
    }

    /// Exact point ball.  Panics on non-finite input; used for values the
    /// caller already knows to be representable.
    #[inline]
    pub fn point(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite ball center: {x}");
        Ball { c: x, r: 0.0 }
    }

    #[inline]
    pub fn from_int(m: i64) -> Self {
        Self::from_dyadic(m, 0).expect("small integer is representable")
    }

    /// Exact ball for `m * 2^e`.  Errors if the value is not exactly
    /// representable in `f64`.
    pub fn from_dyadic(m: i64, e: i32) -> Result<Self> {
        if m == 0 {
            return Ok(Ball::ZERO);
        }
        if m.unsigned_abs() > 1u64 << 53 || !(-1000..=1000).contains(&e) {
            return Err(Error::OverflowError(format!("{m} * 2^{e}")));
        }
        let v = (m as f64) * 2f64.powi(e);
        if !v.is_finite() || v == 0.0 {
            return Err(Error::OverflowError(format!("{m} * 2^{e}")));
        }
        Ok(Ball { c: v, r: 0.0 })
    }

    #[inline]
    pub fn center(&self) -> f64 {
        self.c
    }

    #[inline]
    pub fn radius(&self) -> f64 {
        self.r
    }

    /// Upper bound of `|x|` over the ball.
    #[inline]
    pub fn mag_upper(&self) -> f64 {
        add_up(self.c.abs(), self.r)
    }

    /// Lower bound of `|x|` over the ball (mignitude).
    #[inline]
    pub fn mag_lower(&self) -> f64 {
        sub_down(self.c.abs(), self.r).max(0.0)
    }

    /// Upper bound of the ball as a set of reals.
    #[inline]
    pub fn upper(&self) -> f64 {
        add_up(self.c, self.r)
    }

    /// Lower bound of the ball as a set of reals.
    #[inline]
    pub fn lower(&self) -> f64 {
        sub_down(self.c, self.r)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.c == 0.0 && self.r == 0.0
    }

    /// Strips the radius; used for non-rigorous candidate computations.
    #[inline]
    pub fn midpoint(&self) -> Ball {
        Ball { c: self.c, r: 0.0 }
    }

    /// Widens the radius by `extra`.
    #[inline]
    pub fn inflate(&self, extra: f64) -> Ball {
        debug_assert!(extra >= 0.0);
        Ball {
            c: self.c,
            r: add_up(self.r, extra),
        }
    }

    /// True only if `x` is guaranteed to lie in the ball (conservative: may
    /// report `false` within one ulp of the boundary).
    pub fn contains(&self, x: f64) -> bool {
        // two_sum makes x - c exact as s + e
        let s = x - self.c;
        let bb = s - x;
        let e = (x - (s - bb)) + (-self.c - bb);
        add_up(s.abs(), e.abs()) <= self.r
    }

    /// True only if `self` is guaranteed to be a subset of `other`.
    pub fn subset_of(&self, other: &Ball) -> bool {
        let s = self.c - other.c;
        let bb = s - self.c;
        let e = (self.c - (s - bb)) + (-other.c - bb);
        add_up(add_up(s.abs(), e.abs()), self.r) <= other.r
    }

    /// Smallest ball (up to rounding) containing both inputs.
    pub fn hull(&self, other: &Ball) -> Ball {
        let lo = self.lower().min(other.lower());
        let hi = self.upper().max(other.upper());
        Ball::from_endpoints(lo, hi)
    }

    /// Ball enclosing `[lo, hi]`.
    pub fn from_endpoints(lo: f64, hi: f64) -> Ball {
        assert!(lo <= hi && lo.is_finite() && hi.is_finite());
        let c = 0.5 * (lo + hi);
        let r = add_up((hi - c).next_up().max((c - lo).next_up()), 0.0);
        Ball { c, r: r.max(0.0) }
    }

    #[inline]
    pub fn add(&self, o: &Ball) -> Ball {
        let c = self.c + o.c;
        let r = add_up(add_up(self.r, o.r), rounding_err(c));
        Ball::checked(c, r)
    }

    #[inline]
    pub fn sub(&self, o: &Ball) -> Ball {
        self.add(&o.neg())
    }

    #[inline]
    pub fn neg(&self) -> Ball {
        Ball {
            c: -self.c,
            r: self.r,
        }
    }

    #[inline]
    pub fn mul(&self, o: &Ball) -> Ball {
        let c = self.c * o.c;
        let mut r = mul_up(self.c.abs(), o.r);
        r = add_up(r, mul_up(o.c.abs(), self.r));
        r = add_up(r, mul_up(self.r, o.r));
        r = add_up(r, rounding_err(c));
        Ball::checked(c, r)
    }

    /// Enclosure of `1/x`; errors if the ball contains zero.
    pub fn recip(&self) -> Result<Ball> {
        let lo = self.mag_lower();
        if lo <= 0.0 {
            return Err(Error::DivisionByZeroEnclosure);
        }
        let c = 1.0 / self.c;
        // |1/x - 1/c| <= r / (|c| (|c| - r))
        let den = mul_down(self.c.abs(), lo);
        let r = add_up(div_up(self.r, den), rounding_err(c));
        Ok(Ball::checked(c, r))
    }

    /// Division is a hard error when the divisor encloses zero; singular
    /// sets must be excluded explicitly upstream.
    pub fn div(&self, o: &Ball) -> Result<Ball> {
        Ok(self.mul(&o.recip()?))
    }

    /// Enclosure of `sqrt(x)`; the ball must be a subset of `[0, inf)`.
    pub fn sqrt(&self) -> Result<Ball> {
        let lo_in = self.lower();
        if lo_in < 0.0 {
            return Err(Error::DomainError(format!(
                "sqrt of ball straddling zero: [{}, {}]",
                lo_in,
                self.upper()
            )));
        }
        let lo = lo_in.sqrt().next_down().max(0.0);
        let hi = self.upper().sqrt().next_up();
        Ok(Ball::from_endpoints(lo, hi))
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, n: i32) -> Result<Ball> {
        if n < 0 {
            return self.powi(-n)?.recip();
        }
        let mut acc = Ball::ONE;
        let mut base = *self;
        let mut k = n as u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        Ok(acc)
    }

    /// Enclosure of `x^(num/den)` with `den` in `{1, 2}`.
    pub fn rpow(&self, num: i32, den: u32) -> Result<Ball> {
        match den {
            1 => self.powi(num),
            2 => self.sqrt()?.powi(num),
            _ => Err(Error::DomainError(format!("unsupported exponent den {den}"))),
        }
    }

    #[inline]
    fn checked(c: f64, r: f64) -> Ball {
        assert!(
            c.is_finite() && r.is_finite(),
            "ball arithmetic overflow: c={c}, r={r}"
        );
        Ball { c, r }
    }
}

// Balls serialize as exact decimal strings; Rust's shortest round-trip
// formatting guarantees parse(format(x)) == x bit for bit.
impl Serialize for Ball {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Ball", 2)?;
        st.serialize_field("c", &format!("{:?}", self.c))?;
        st.serialize_field("r", &format!("{:?}", self.r))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Ball {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            c: String,
            r: String,
        }
        let raw = Raw::deserialize(d)?;
        let c: f64 = raw.c.parse().map_err(D::Error::custom)?;
        let r: f64 = raw.r.parse().map_err(D::Error::custom)?;
        Ball::new(c, r).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_dyadic_addition() {
        let a = Ball::point(2.0);
        let b = Ball::point(3.0);
        let s = a.add(&b);
        assert!(s.contains(5.0));
        // rounding_err keeps a sliver of radius; it must stay at noise level
        assert!(s.radius() < 1e-14);
    }

    #[test]
    fn interval_product() {
        let a = Ball::new(1.0, 0.1).unwrap();
        let p = a.mul(&a);
        assert!(p.lower() <= 0.81 && p.upper() >= 1.21);
        assert!(p.contains(1.0));
    }

    #[test]
    fn dyadic_constants_are_exact() {
        let c = Ball::from_dyadic(205, -6).unwrap();
        assert_eq!(c.center(), 3.203125);
        assert_eq!(c.radius(), 0.0);
        let mu_em = Ball::from_dyadic(13256063, -30).unwrap();
        assert_eq!(mu_em.center(), 13256063.0 / 1073741824.0);
        assert_eq!(mu_em.radius(), 0.0);
        assert!(Ball::from_dyadic(0, 0).unwrap().is_zero());
        assert!(Ball::from_dyadic(1 << 60, 0).is_err());
    }

    #[test]
    fn division_by_zero_enclosure_rejected() {
        let a = Ball::point(1.0);
        let b = Ball::new(0.5, 0.5).unwrap();
        assert!(matches!(
            a.div(&b),
            Err(Error::DivisionByZeroEnclosure)
        ));
    }

    #[test]
    fn sqrt_straddling_zero_rejected() {
        let a = Ball::new(0.1, 0.2).unwrap();
        assert!(matches!(a.sqrt(), Err(Error::DomainError(_))));
        let b = Ball::new(4.0, 0.0).unwrap();
        assert!(b.sqrt().unwrap().contains(2.0));
    }

    #[test]
    fn rpow_family() {
        let four = Ball::point(4.0);
        assert!(four.rpow(-3, 2).unwrap().contains(0.125));
        assert!(four.rpow(-1, 1).unwrap().contains(0.25));
        assert!(four.rpow(1, 2).unwrap().contains(2.0));
        let one = Ball::ONE;
        for (n, d) in [(-1, 1), (-1, 2), (1, 2), (-3, 2)] {
            assert!(one.rpow(n, d).unwrap().contains(1.0));
        }
    }

    #[test]
    fn constructor_rejects_non_finite() {
        assert!(Ball::new(f64::NAN, 0.0).is_err());
        assert!(Ball::new(1.0, f64::INFINITY).is_err());
        assert!(Ball::new(1.0, -1.0).is_err());
    }

    #[test]
    fn json_round_trip_is_exact() {
        let b = Ball::new(0.1 + 0.2, 1e-17).unwrap();
        let s = serde_json::to_string(&b).unwrap();
        let back: Ball = serde_json::from_str(&s).unwrap();
        assert_eq!(b.center(), back.center());
        assert_eq!(b.radius(), back.radius());
    }
}
