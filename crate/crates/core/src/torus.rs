//! Exact elements of the subgroups `U_{k+1} = (1/p^{k+1}) Z / Z` of the torus.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;

/// The value `numerator / p^{depth+1} mod 1`, stored at minimal depth.
///
/// Zero is `(0, 0)`; any other value has `p ∤ numerator`, so two values are
/// equal as torus elements exactly when their fields are equal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TorusValue {
    p: u32,
    depth: u32,
    numerator: u64,
}

/// `p^{k+1}`.
#[inline]
pub fn modulus(p: u32, depth: u32) -> u64 {
    (p as u64).pow(depth + 1)
}

impl TorusValue {
    pub fn zero(p: u32) -> Self {
        TorusValue {
            p,
            depth: 0,
            numerator: 0,
        }
    }

    /// `numerator / p^{depth+1}`, reduced mod 1 and normalized.
    pub fn new(p: u32, numerator: i128, depth: u32) -> Self {
        let m = modulus(p, depth) as i128;
        let mut num = numerator.rem_euclid(m) as u64;
        let mut depth = depth;
        if num == 0 {
            return TorusValue::zero(p);
        }
        while depth > 0 && num.is_multiple_of(p as u64) {
            num /= p as u64;
            depth -= 1;
        }
        TorusValue {
            p,
            depth,
            numerator: num,
        }
    }

    /// The image of `|x| / p` for a field element.
    pub fn iota(p: u32, x: u32) -> Self {
        TorusValue::new(p, x as i128, 0)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Minimal `k` with the value in `U_{k+1}`.
    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn numerator(&self) -> u64 {
        self.numerator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator == 0
    }

    /// Numerator of this value written over `p^{depth+1}`. Panics if the value
    /// does not lie in `U_{depth+1}`.
    pub fn numerator_at(&self, depth: u32) -> u64 {
        assert!(
            depth >= self.depth,
            "value of depth {} does not lie in U_{}",
            self.depth,
            depth + 1
        );
        self.numerator * (self.p as u64).pow(depth - self.depth)
    }

    /// Whether the value lies in `U_{depth+1}`.
    pub fn in_level(&self, depth: u32) -> bool {
        self.depth <= depth
    }

    pub fn add(&self, other: &TorusValue) -> TorusValue {
        debug_assert_eq!(self.p, other.p);
        let d = self.depth.max(other.depth);
        TorusValue::new(self.p, self.numerator_at(d) as i128 + other.numerator_at(d) as i128, d)
    }

    pub fn neg(&self) -> TorusValue {
        TorusValue::new(self.p, -(self.numerator as i128), self.depth)
    }

    pub fn sub(&self, other: &TorusValue) -> TorusValue {
        self.add(&other.neg())
    }

    /// `λ · v` in the torus.
    pub fn scale(&self, lambda: i64) -> TorusValue {
        let m = modulus(self.p, self.depth) as i128;
        let l = (lambda as i128).rem_euclid(m);
        TorusValue::new(self.p, l * self.numerator as i128, self.depth)
    }

    /// Representative in `[0, 1)`.
    pub fn to_f64(&self) -> f64 {
        self.numerator as f64 / modulus(self.p, self.depth) as f64
    }

    /// `e(v) = exp(2πi v)`.
    pub fn phase(&self) -> Complex64 {
        phase_of_fraction(self.numerator, modulus(self.p, self.depth))
    }
}

/// `exp(2πi num/den)`, using exact values at the quarter turns.
pub fn phase_of_fraction(num: u64, den: u64) -> Complex64 {
    let num = num % den;
    if num == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if 4 * num == den {
        return Complex64::new(0.0, 1.0);
    }
    if 2 * num == den {
        return Complex64::new(-1.0, 0.0);
    }
    if 4 * num == 3 * den {
        return Complex64::new(0.0, -1.0);
    }
    let theta = std::f64::consts::TAU * (num as f64 / den as f64);
    Complex64::new(theta.cos(), theta.sin())
}

impl fmt::Display for TorusValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.numerator == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.numerator, modulus(self.p, self.depth))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_to_minimal_depth() {
        let v = TorusValue::new(2, 2, 1);
        assert_eq!(v, TorusValue::new(2, 1, 0));
        assert_eq!(v.depth(), 0);
        assert_eq!(TorusValue::new(3, 9, 1), TorusValue::zero(3));
        assert_eq!(TorusValue::new(2, -1, 1).numerator(), 3);
        assert_eq!(TorusValue::new(2, 1, 1).to_string(), "1/4");
    }

    #[test]
    fn group_operations() {
        let q = TorusValue::new(2, 1, 1);
        assert_eq!(q.add(&q), TorusValue::iota(2, 1));
        assert_eq!(q.scale(4), TorusValue::zero(2));
        assert_eq!(q.add(&q.neg()), TorusValue::zero(2));
        assert_eq!(q.scale(-1), TorusValue::new(2, 3, 1));
        assert_eq!(q.numerator_at(2), 2);
        assert!(q.in_level(1) && !q.in_level(0));
    }

    #[test]
    fn phases() {
        let i = TorusValue::new(2, 1, 1).phase();
        assert_eq!(i, Complex64::new(0.0, 1.0));
        assert_eq!(TorusValue::iota(2, 1).phase(), Complex64::new(-1.0, 0.0));
        let w = TorusValue::iota(3, 1).phase();
        assert!((w.re + 0.5).abs() < 1e-15 && (w.im - 3f64.sqrt() / 2.0).abs() < 1e-15);
    }
}
