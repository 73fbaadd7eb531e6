//! Arithmetic in GF(2^ν) using log/antilog tables.
//!
//! Every field degree uses one fixed primitive polynomial so that generator
//! polynomials are reproducible across implementations.

use std::fmt;

use crate::error::{Error, Result};

/// Primitive polynomials per field degree, as bit masks including the leading term.
///
/// | ν  | polynomial                 | mask   |
/// |----|----------------------------|--------|
/// | 2  | x² + x + 1                 | 0x7    |
/// | 3  | x³ + x + 1                 | 0xB    |
/// | 4  | x⁴ + x + 1                 | 0x13   |
/// | 5  | x⁵ + x² + 1                | 0x25   |
/// | 6  | x⁶ + x + 1                 | 0x43   |
/// | 7  | x⁷ + x³ + 1                | 0x89   |
/// | 8  | x⁸ + x⁴ + x³ + x² + 1      | 0x11D  |
/// | 9  | x⁹ + x⁴ + 1                | 0x211  |
/// | 10 | x¹⁰ + x³ + 1               | 0x409  |
/// | 11 | x¹¹ + x² + 1               | 0x805  |
/// | 12 | x¹² + x⁶ + x⁴ + x + 1      | 0x1053 |
pub const PRIMITIVE_POLYNOMIALS: [(u32, u32); 11] = [
    (2, 0x7),
    (3, 0xB),
    (4, 0x13),
    (5, 0x25),
    (6, 0x43),
    (7, 0x89),
    (8, 0x11D),
    (9, 0x211),
    (10, 0x409),
    (11, 0x805),
    (12, 0x1053),
];

/// Looks up the tabulated primitive polynomial for degree `nu`.
pub fn primitive_polynomial(nu: u32) -> Result<u32> {
    PRIMITIVE_POLYNOMIALS
        .iter()
        .find(|(d, _)| *d == nu)
        .map(|&(_, p)| p)
        .ok_or(Error::UnsupportedField(nu))
}

/// An element of GF(2^ν) in polynomial basis.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(pub u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

/// Binary operations accepted by [`GaloisField::apply`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    /// Inverse of the left operand; the right operand is ignored.
    Inv,
    /// Left operand raised to the integer value of the right operand.
    Pow,
}

#[derive(Clone, Debug)]
pub struct GaloisField {
    nu: u32,
    poly: u32,
    order: usize,
    // exp is doubled so that exp[log a + log b] needs no reduction
    exp: Vec<u16>,
    log: Vec<u16>,
}

impl GaloisField {
    /// Builds GF(2^ν) with the tabulated primitive polynomial.
    pub fn new(nu: u32) -> Result<Self> {
        Self::with_polynomial(nu, primitive_polynomial(nu)?)
    }

    /// Builds GF(2^ν) from an explicit polynomial mask; fails unless it is primitive.
    pub fn with_polynomial(nu: u32, poly: u32) -> Result<Self> {
        if !(2..=15).contains(&nu) || poly >> nu != 1 {
            return Err(Error::UnsupportedField(nu));
        }
        let order = (1usize << nu) - 1;
        let mut exp = vec![0u16; 2 * order];
        let mut log = vec![0u16; order + 1];
        let mut x: u32 = 1;
        for i in 0..order {
            if i > 0 && x == 1 {
                return Err(Error::Construction(format!(
                    "polynomial {poly:#x} is not primitive over GF(2^{nu})"
                )));
            }
            exp[i] = x as u16;
            log[x as usize] = i as u16;
            x <<= 1;
            if x >> nu != 0 {
                x ^= poly;
            }
        }
        if x != 1 {
            return Err(Error::Construction(format!(
                "polynomial {poly:#x} is not primitive over GF(2^{nu})"
            )));
        }
        for i in order..2 * order {
            exp[i] = exp[i - order];
        }
        Ok(GaloisField {
            nu,
            poly,
            order,
            exp,
            log,
        })
    }

    pub fn degree(&self) -> u32 {
        self.nu
    }

    pub fn polynomial(&self) -> u32 {
        self.poly
    }

    /// Order of the multiplicative group, 2^ν − 1.
    pub fn order(&self) -> usize {
        self.order
    }

    /// α^i for any integer exponent.
    #[inline]
    pub fn alpha_pow(&self, i: i64) -> FieldElement {
        let e = i.rem_euclid(self.order as i64) as usize;
        FieldElement(self.exp[e])
    }

    #[inline]
    pub fn log(&self, a: FieldElement) -> Option<usize> {
        if a.is_zero() {
            None
        } else {
            Some(self.log[a.0 as usize] as usize)
        }
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(a.0 ^ b.0)
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        FieldElement(self.exp[self.log[a.0 as usize] as usize + self.log[b.0 as usize] as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::Domain("inverse of zero"));
        }
        let l = self.log[a.0 as usize] as usize;
        Ok(FieldElement(self.exp[(self.order - l) % self.order]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, e: i64) -> Result<FieldElement> {
        if a.is_zero() {
            return match e {
                0 => Ok(FieldElement::ONE),
                e if e > 0 => Ok(FieldElement::ZERO),
                _ => Err(Error::Domain("negative power of zero")),
            };
        }
        let l = self.log[a.0 as usize] as i64;
        Ok(self.alpha_pow(l * e.rem_euclid(self.order as i64)))
    }

    /// Dispatches one of the four field operations.
    pub fn apply(&self, a: FieldElement, b: FieldElement, op: FieldOp) -> Result<FieldElement> {
        match op {
            FieldOp::Add => Ok(self.add(a, b)),
            FieldOp::Mul => Ok(self.mul(a, b)),
            FieldOp::Inv => self.inv(a),
            FieldOp::Pow => self.pow(a, b.0 as i64),
        }
    }

    /// Minimal polynomial of α^i over GF(2), coefficients low to high (0/1).
    pub fn minimal_polynomial(&self, i: usize) -> Vec<u8> {
        let coset = self.cyclotomic_coset(i);
        // product of (x + α^j) over the coset, coefficients in GF(2^ν)
        let mut poly = vec![FieldElement::ONE];
        for &j in &coset {
            let root = self.alpha_pow(j as i64);
            let mut next = vec![FieldElement::ZERO; poly.len() + 1];
            for (d, &c) in poly.iter().enumerate() {
                next[d + 1] = self.add(next[d + 1], c);
                next[d] = self.add(next[d], self.mul(c, root));
            }
            poly = next;
        }
        poly.iter()
            .map(|c| {
                debug_assert!(c.0 <= 1, "minimal polynomial must have binary coefficients");
                c.0 as u8
            })
            .collect()
    }

    /// The cyclotomic coset {i, 2i, 4i, ...} mod 2^ν − 1.
    pub fn cyclotomic_coset(&self, i: usize) -> Vec<usize> {
        let mut coset = vec![i % self.order];
        let mut j = (2 * i) % self.order;
        while j != coset[0] {
            coset.push(j);
            j = (2 * j) % self.order;
        }
        coset
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_is_self_inverse() {
        let f = GaloisField::new(6).unwrap();
        for v in 0..64u16 {
            let x = FieldElement(v);
            assert_eq!(f.add(x, x), FieldElement::ZERO);
        }
    }

    #[test]
    fn alpha_has_full_order() {
        for nu in 2..=12 {
            let f = GaloisField::new(nu).unwrap();
            let alpha = f.alpha_pow(1);
            assert_eq!(f.pow(alpha, f.order() as i64).unwrap(), FieldElement::ONE);
            for e in 1..f.order() as i64 {
                assert_ne!(f.pow(alpha, e).unwrap(), FieldElement::ONE);
            }
        }
    }

    #[test]
    fn alpha_cubed_squared_in_gf16() {
        // α³ = x³ = 0b1000, α⁶ = x³·x³ mod x⁴+x+1 = x³ + x² = 0b1100
        let f = GaloisField::new(4).unwrap();
        let a3 = f.alpha_pow(3);
        assert_eq!(a3, FieldElement(0b1000));
        assert_eq!(f.mul(a3, a3), FieldElement(0b1100));
        assert_eq!(f.mul(a3, a3), f.alpha_pow(6));
    }

    #[test]
    fn mul_matches_carryless_reduction() {
        fn slow_mul(a: u32, b: u32, poly: u32, nu: u32) -> u32 {
            let mut acc = 0u32;
            for i in 0..nu {
                if (b >> i) & 1 == 1 {
                    acc ^= a << i;
                }
            }
            for d in (nu..2 * nu).rev() {
                if (acc >> d) & 1 == 1 {
                    acc ^= poly << (d - nu);
                }
            }
            acc
        }
        let f = GaloisField::new(5).unwrap();
        for a in 0..32u16 {
            for b in 0..32u16 {
                let got = f.mul(FieldElement(a), FieldElement(b)).0 as u32;
                assert_eq!(got, slow_mul(a as u32, b as u32, 0x25, 5));
            }
        }
    }

    #[test]
    fn inverse_of_zero_is_domain_error() {
        let f = GaloisField::new(4).unwrap();
        assert!(matches!(f.inv(FieldElement::ZERO), Err(Error::Domain(_))));
        assert!(f.apply(FieldElement::ZERO, FieldElement::ONE, FieldOp::Inv).is_err());
        for v in 1..16u16 {
            let x = FieldElement(v);
            assert_eq!(f.mul(x, f.inv(x).unwrap()), FieldElement::ONE);
        }
    }

    #[test]
    fn rejects_non_primitive() {
        // x⁴ + x³ + x² + x + 1 is irreducible but has order 5
        assert!(GaloisField::with_polynomial(4, 0x1F).is_err());
        assert!(GaloisField::new(20).is_err());
    }

    #[test]
    fn minimal_polynomials_gf16() {
        let f = GaloisField::new(4).unwrap();
        assert_eq!(f.minimal_polynomial(1), vec![1, 1, 0, 0, 1]);
        assert_eq!(f.minimal_polynomial(3), vec![1, 1, 1, 1, 1]);
        assert_eq!(f.minimal_polynomial(5), vec![1, 1, 1]);
    }
}
