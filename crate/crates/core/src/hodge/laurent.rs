use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// An element of `Z[T, T^-1]`, stored sparsely without zero coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "RawLaurent")]
pub struct LaurentPolynomialZ {
    coeffs: BTreeMap<i64, i64>,
}

#[derive(Deserialize)]
struct RawLaurent {
    coeffs: BTreeMap<i64, i64>,
}

impl From<RawLaurent> for LaurentPolynomialZ {
    fn from(raw: RawLaurent) -> Self {
        Self::from_pairs(raw.coeffs)
    }
}

impl LaurentPolynomialZ {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(degree: i64, coeff: i64) -> Self {
        Self::from_pairs([(degree, coeff)])
    }

    pub fn from_pairs<I: IntoIterator<Item = (i64, i64)>>(pairs: I) -> Self {
        let mut p = Self::zero();
        for (d, c) in pairs {
            p.add_term(d, c);
        }
        p
    }

    pub fn add_term(&mut self, degree: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.coeffs.entry(degree).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.coeffs.remove(&degree);
        }
    }

    pub fn coeff(&self, degree: i64) -> i64 {
        self.coeffs.get(&degree).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, i64> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Terms of degree `<= i0`.
    pub fn trun_le(&self, i0: i64) -> Self {
        LaurentPolynomialZ {
            coeffs: self.coeffs.range(..=i0).map(|(&d, &c)| (d, c)).collect(),
        }
    }

    /// Terms of degree `>= i0`.
    pub fn trun_ge(&self, i0: i64) -> Self {
        LaurentPolynomialZ {
            coeffs: self.coeffs.range(i0..).map(|(&d, &c)| (d, c)).collect(),
        }
    }

    /// `T^{2c} P(1/T)`: degree `d` goes to `2c - d`.
    pub fn reflect(&self, center: i64) -> Self {
        LaurentPolynomialZ {
            coeffs: self.coeffs.iter().map(|(&d, &c)| (2 * center - d, c)).collect(),
        }
    }

    pub fn is_symmetric(&self, center: i64) -> bool {
        self.reflect(center) == *self
    }

    pub fn eval(&self, t: i64) -> Option<i64> {
        self.coeffs.iter().try_fold(0i64, |acc, (&d, &c)| {
            if d < 0 && t.abs() != 1 {
                return None;
            }
            let power = if d >= 0 {
                t.checked_pow(d as u32)?
            } else {
                t.checked_pow((-d) as u32)? // t = ±1 is its own inverse
            };
            acc.checked_add(c.checked_mul(power)?)
        })
    }
}

impl fmt::Display for LaurentPolynomialZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (&d, &c)) in self.coeffs.iter().enumerate() {
            let abs = c.unsigned_abs();
            if i == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            }
            match (d, abs) {
                (0, a) => write!(f, "{a}")?,
                (1, 1) => f.write_str("T")?,
                (1, a) => write!(f, "{a}T")?,
                (d, 1) => write!(f, "T^{d}")?,
                (d, a) => write!(f, "{a}T^{d}")?,
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPolynomialZ {
    type Output = LaurentPolynomialZ;

    fn add(self, rhs: &LaurentPolynomialZ) -> LaurentPolynomialZ {
        let mut out = self.clone();
        for (&d, &c) in &rhs.coeffs {
            out.add_term(d, c);
        }
        out
    }
}

impl Neg for &LaurentPolynomialZ {
    type Output = LaurentPolynomialZ;

    fn neg(self) -> LaurentPolynomialZ {
        LaurentPolynomialZ {
            coeffs: self.coeffs.iter().map(|(&d, &c)| (d, -c)).collect(),
        }
    }
}

impl Sub for &LaurentPolynomialZ {
    type Output = LaurentPolynomialZ;

    fn sub(self, rhs: &LaurentPolynomialZ) -> LaurentPolynomialZ {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPolynomialZ {
    type Output = LaurentPolynomialZ;

    fn mul(self, rhs: &LaurentPolynomialZ) -> LaurentPolynomialZ {
        let mut out = LaurentPolynomialZ::zero();
        for (&d1, &c1) in &self.coeffs {
            for (&d2, &c2) in &rhs.coeffs {
                out.add_term(d1 + d2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for LaurentPolynomialZ {
            type Output = LaurentPolynomialZ;
            fn $method(self, rhs: LaurentPolynomialZ) -> LaurentPolynomialZ {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for LaurentPolynomialZ {
    type Output = LaurentPolynomialZ;

    fn neg(self) -> LaurentPolynomialZ {
        -&self
    }
}

/// Sum of virtual Poincaré polynomials along a triangle.
pub fn vp_add(p: &LaurentPolynomialZ, q: &LaurentPolynomialZ) -> LaurentPolynomialZ {
    p + q
}

/// Virtual Poincaré polynomial of a tensor product.
pub fn vp_mul(p: &LaurentPolynomialZ, q: &LaurentPolynomialZ) -> LaurentPolynomialZ {
    p * q
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(v: &[(i64, i64)]) -> LaurentPolynomialZ {
        LaurentPolynomialZ::from_pairs(v.iter().copied())
    }

    #[test]
    fn truncations() {
        let p = lp(&[(-1, 2), (1, 3), (2, 1)]);
        assert_eq!(p.trun_le(1), lp(&[(-1, 2), (1, 3)]));
        assert_eq!(p.trun_ge(1), lp(&[(1, 3), (2, 1)]));
        assert_eq!(&p.trun_le(0) + &p.trun_ge(1), p);
    }

    #[test]
    fn reflection_and_symmetry() {
        assert_eq!(LaurentPolynomialZ::one().reflect(1), lp(&[(2, 1)]));
        let s = lp(&[(2, 1), (3, 2), (4, 1)]);
        assert_eq!(s.reflect(3), s);
        assert!(lp(&[(2, 1), (4, 1)]).is_symmetric(3));
        assert!(!lp(&[(2, 1), (3, 1)]).is_symmetric(3));
        assert!(LaurentPolynomialZ::zero().is_symmetric(17));
    }

    #[test]
    fn ring_operations() {
        assert_eq!(vp_add(&lp(&[(0, 1), (1, 1)]), &lp(&[(1, 1)])), lp(&[(0, 1), (1, 2)]));
        assert_eq!(vp_mul(&lp(&[(0, 1), (1, 1)]), &lp(&[(0, 1), (1, -1)])), lp(&[(0, 1), (2, -1)]));
        let p = lp(&[(-3, 4), (5, -1)]);
        assert_eq!(vp_mul(&p, &LaurentPolynomialZ::one()), p);
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn display_and_eval() {
        assert_eq!(lp(&[(-1, 2), (0, -1), (1, 1), (3, -2)]).to_string(), "2T^-1 - 1 + T - 2T^3");
        assert_eq!(LaurentPolynomialZ::zero().to_string(), "0");
        assert_eq!(lp(&[(0, 1), (2, 1), (4, 1)]).eval(1), Some(3));
        assert_eq!(lp(&[(-1, 1)]).eval(2), None);
        assert_eq!(lp(&[(-1, 1), (1, 1)]).eval(-1), Some(-2));
    }

    #[test]
    fn serializes_with_string_degrees() {
        let json = serde_json::to_string(&lp(&[(-1, 2), (3, 1)])).unwrap();
        assert_eq!(json, r#"{"coeffs":{"-1":2,"3":1}}"#);
        let back: LaurentPolynomialZ = serde_json::from_str(&json).unwrap();
        assert_eq!(back, lp(&[(-1, 2), (3, 1)]));
    }
}
