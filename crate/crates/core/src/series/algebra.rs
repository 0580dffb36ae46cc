//! The abstract Banach-algebra scalar interface.
//!
//! Every formula in [`crate::dynamics`] is written once against [`Alg`], so
//! the same code evaluates on plain floats (non-rigorous numerics), on balls
//! (pointwise enclosures), on series elements (composition along orbit
//! segments), and on parameter polynomials (XT expansions of branches).

use crate::rigor::{round, Ball};
use crate::{Error, Result};

pub trait Alg: Clone + Sized {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Scale by a scalar enclosure.
    fn mul_ball(&self, b: &Ball) -> Self;
    /// Constant element of `self`'s shape enclosing `b`.
    fn embed_ball(&self, b: &Ball) -> Self;
    /// Upper bound of the Banach-algebra norm.
    fn norm_upper(&self) -> f64;
    /// Strip all enclosure widths; the result is a plain candidate.
    fn midpoint_like(&self) -> Self;
    /// Absorb an error term of norm at most `mag`.
    fn add_error(&self, mag: f64) -> Self;
    /// Non-rigorous candidate for `self^(num/den)`.
    fn rpow_candidate(&self, num: i32, den: u32) -> Self;

    /// Validated enclosure of `self^(num/den)`, `den` in `{1, 2}`.
    fn rpow(&self, num: i32, den: u32) -> Result<Self> {
        validated_rpow(self, num, den)
    }

    fn powi_by_mul(&self, n: u32) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }
}

/// Validated `z^(num/den)` in any commutative Banach algebra.
///
/// A numerical candidate `w ~ z^(-1)` (or `z^(-1/2)`) is checked a
/// posteriori: with `u = 1 - z w` (resp. `1 - z w^2`) and `delta = |u| < 1`,
/// the binomial series of `(1 - u)^alpha` has absolutely summable terms, so
/// `|(1-u)^alpha - 1| <= (1-delta)^alpha - 1` for `alpha < 0`.  The defect is
/// absorbed as an error term of that norm.
pub fn validated_rpow<A: Alg>(z: &A, num: i32, den: u32) -> Result<A> {
    match den {
        1 => {
            if num >= 0 {
                return Ok(z.powi_by_mul(num as u32));
            }
            let w = z.rpow_candidate(-1, 1).midpoint_like();
            let u = z.one_like().sub(&z.mul(&w));
            let delta = u.norm_upper();
            if !(delta < 1.0) {
                return Err(Error::DefectTooLarge(delta));
            }
            // z^-1 = w (1-u)^-1 = w + w (u + u^2 + ...)
            let err = round::mul_up(w.norm_upper(), round::div_up(delta, (1.0 - delta).next_down()));
            let zinv = w.add_error(err);
            Ok(zinv.powi_by_mul((-num) as u32))
        }
        2 => {
            if num % 2 == 0 {
                return validated_rpow(z, num / 2, 1);
            }
            let w = z.rpow_candidate(-1, 2).midpoint_like();
            let u = z.one_like().sub(&z.mul(&w).mul(&w));
            let delta = u.norm_upper();
            if !(delta < 1.0) {
                return Err(Error::DefectTooLarge(delta));
            }
            // z = w^-2 (1-u), hence z^(k/2) = w^-k (1-u)^(k/2)
            let (v, m) = if num < 0 {
                (w.powi_by_mul((-num) as u32), -num)
            } else {
                // z^(k/2) = z^((k+1)/2) * z^(-1/2) for odd k > 0
                (z.powi_by_mul(((num + 1) / 2) as u32).mul(&w), 1)
            };
            let errfac = binomial_tail_factor(delta, m)?;
            Ok(v.add_error(round::mul_up(v.norm_upper(), errfac)))
        }
        _ => Err(Error::DomainError(format!("unsupported exponent denominator {den}"))),
    }
}

/// Upper bound of `(1 - delta)^(-m/2) - 1` for `0 <= delta < 1`.
fn binomial_tail_factor(delta: f64, m: i32) -> Result<f64> {
    let base = Ball::ONE.sub(&Ball::point(delta));
    if base.lower() <= 0.0 {
        return Err(Error::DefectTooLarge(delta));
    }
    let fac = base.rpow(-m, 2)?.upper();
    Ok((fac - 1.0).next_up().max(0.0))
}

impl Alg for f64 {
    fn zero_like(&self) -> Self {
        0.0
    }
    fn one_like(&self) -> Self {
        1.0
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn mul_ball(&self, b: &Ball) -> Self {
        self * b.center()
    }
    fn embed_ball(&self, b: &Ball) -> Self {
        b.center()
    }
    fn norm_upper(&self) -> f64 {
        self.abs()
    }
    fn midpoint_like(&self) -> Self {
        *self
    }
    fn add_error(&self, _mag: f64) -> Self {
        *self
    }
    fn rpow_candidate(&self, num: i32, den: u32) -> Self {
        self.powf(num as f64 / den as f64)
    }
    fn rpow(&self, num: i32, den: u32) -> Result<Self> {
        let v = self.rpow_candidate(num, den);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NotBoundedAwayFromZero)
        }
    }
}

impl Alg for Ball {
    fn zero_like(&self) -> Self {
        Ball::ZERO
    }
    fn one_like(&self) -> Self {
        Ball::ONE
    }
    fn add(&self, o: &Self) -> Self {
        Ball::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Ball::sub(self, o)
    }
    fn neg(&self) -> Self {
        Ball::neg(self)
    }
    fn mul(&self, o: &Self) -> Self {
        Ball::mul(self, o)
    }
    fn mul_ball(&self, b: &Ball) -> Self {
        Ball::mul(self, b)
    }
    fn embed_ball(&self, b: &Ball) -> Self {
        *b
    }
    fn norm_upper(&self) -> f64 {
        self.mag_upper()
    }
    fn midpoint_like(&self) -> Self {
        self.midpoint()
    }
    fn add_error(&self, mag: f64) -> Self {
        self.inflate(mag)
    }
    fn rpow_candidate(&self, num: i32, den: u32) -> Self {
        let v = self.center().powf(num as f64 / den as f64);
        if v.is_finite() {
            Ball::point(v)
        } else {
            Ball::ZERO
        }
    }
    fn rpow(&self, num: i32, den: u32) -> Result<Self> {
        // directed endpoint formulas are tighter than the generic route
        Ball::rpow(self, num, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_rpow_through_trait() {
        let b = Ball::point(4.0);
        let r = Alg::rpow(&b, -3, 2).unwrap();
        assert!(r.contains(0.125));
    }

    #[test]
    fn generic_rpow_on_ball_agrees() {
        let b = Ball::new(4.0, 1e-12).unwrap();
        let generic = validated_rpow(&b, -3, 2).unwrap();
        assert!(generic.contains(0.125));
        let rec = validated_rpow(&b, -1, 1).unwrap();
        assert!(rec.contains(0.25));
        let sq = validated_rpow(&b, 1, 2).unwrap();
        assert!(sq.contains(2.0));
    }

    #[test]
    fn defect_too_large_reported() {
        let b = Ball::new(0.1, 0.3).unwrap();
        assert!(validated_rpow(&b, -1, 1).is_err());
    }
}
