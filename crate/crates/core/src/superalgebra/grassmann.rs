use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{mask_display_order, mask_indices, render_terms, Exterior, Parity};
use crate::error::{Error, Result};
use crate::poly::Q;

/// Element of the Grassmann algebra `Λ_r` on generators `θ_1..θ_r`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct GrassmannNumber {
    r: usize,
    ext: Exterior<Q>,
}

impl GrassmannNumber {
    pub fn zero(r: usize) -> Self {
        GrassmannNumber {
            r,
            ext: Exterior::zero(),
        }
    }

    pub fn scalar(r: usize, c: Q) -> Self {
        GrassmannNumber {
            r,
            ext: Exterior::scalar(c),
        }
    }

    pub fn one(r: usize) -> Self {
        Self::scalar(r, Q::from_integer(1.into()))
    }

    /// `θ_{i+1}`, zero-based.
    pub fn generator(r: usize, i: usize) -> Result<Self> {
        if i >= r {
            return Err(Error::IndexOutOfRange(format!("θ{} in Λ_{r}", i + 1)));
        }
        Ok(GrassmannNumber {
            r,
            ext: Exterior::monomial(1 << i, Q::from_integer(1.into())),
        })
    }

    pub fn from_exterior(r: usize, ext: Exterior<Q>) -> Result<Self> {
        if r > 32 || ext.support() >> r != 0 {
            return Err(Error::IndexOutOfRange(format!("monomial outside Λ_{r}")));
        }
        Ok(GrassmannNumber { r, ext })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn exterior(&self) -> &Exterior<Q> {
        &self.ext
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Q)> {
        self.ext.terms()
    }

    pub fn coeff(&self, mask: u32) -> Q {
        self.ext.coeff(mask)
    }

    pub fn body(&self) -> Q {
        self.ext.body()
    }

    pub fn is_zero(&self) -> bool {
        self.ext.is_zero()
    }

    pub fn parity(&self) -> Option<Parity> {
        self.ext.parity()
    }

    pub fn is_of_parity(&self, p: Parity) -> bool {
        self.ext.is_of_parity(p)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.r == other.r {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(GrassmannNumber {
            r: self.r,
            ext: self.ext.add(&other.ext),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(GrassmannNumber {
            r: self.r,
            ext: self.ext.mul(&other.ext),
        })
    }

    pub fn scale(&self, c: &Q) -> Self {
        GrassmannNumber {
            r: self.r,
            ext: self.ext.scale(c),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        self.ext
            .inv()
            .map(|ext| GrassmannNumber { r: self.r, ext })
            .ok_or(Error::ZeroBody)
    }

    /// Toggles `θ_1`.
    pub fn nu(&self) -> Result<Self> {
        if self.r == 0 {
            return Err(Error::NoOddGenerators);
        }
        Ok(GrassmannNumber {
            r: self.r,
            ext: self.ext.toggle_first(),
        })
    }

    pub fn map_exterior(&self, f: impl FnOnce(&Exterior<Q>) -> Exterior<Q>) -> Self {
        GrassmannNumber {
            r: self.r,
            ext: f(&self.ext),
        }
    }
}

impl Add for &GrassmannNumber {
    type Output = GrassmannNumber;
    fn add(self, rhs: &GrassmannNumber) -> GrassmannNumber {
        self.checked_add(rhs).expect("Grassmann rank mismatch")
    }
}

impl Sub for &GrassmannNumber {
    type Output = GrassmannNumber;
    fn sub(self, rhs: &GrassmannNumber) -> GrassmannNumber {
        self.checked_add(&-rhs).expect("Grassmann rank mismatch")
    }
}

impl Mul for &GrassmannNumber {
    type Output = GrassmannNumber;
    fn mul(self, rhs: &GrassmannNumber) -> GrassmannNumber {
        self.checked_mul(rhs).expect("Grassmann rank mismatch")
    }
}

impl Neg for &GrassmannNumber {
    type Output = GrassmannNumber;
    fn neg(self) -> GrassmannNumber {
        GrassmannNumber {
            r: self.r,
            ext: self.ext.neg(),
        }
    }
}

impl fmt::Display for GrassmannNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut masks: Vec<u32> = self.ext.terms().map(|(m, _)| m).collect();
        masks.sort_by(mask_display_order);
        let terms = masks
            .into_iter()
            .map(|m| {
                let name: String = mask_indices(m).iter().map(|i| format!("θ{}", i + 1)).collect();
                let c = self.ext.coeff(m);
                let cs = c.to_string();
                let t = if name.is_empty() {
                    cs
                } else if c == Q::from_integer(1.into()) {
                    name.clone()
                } else if c == Q::from_integer((-1).into()) {
                    format!("-{name}")
                } else {
                    format!("{cs}*{name}")
                };
                (name, t)
            })
            .collect();
        f.write_str(&render_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q;

    #[test]
    fn nilpotent_inverse() {
        let t1 = GrassmannNumber::generator(2, 0).unwrap();
        let t2 = GrassmannNumber::generator(2, 1).unwrap();
        let a = &GrassmannNumber::scalar(2, q(2)) + &(&t1 * &t2);
        let inv = a.inv().unwrap();
        assert_eq!(&a * &inv, GrassmannNumber::one(2));
        assert_eq!(t1.inv(), Err(Error::ZeroBody));
    }

    #[test]
    fn nu_toggles_first_generator() {
        let t2 = GrassmannNumber::generator(2, 1).unwrap();
        let t12 = &GrassmannNumber::generator(2, 0).unwrap() * &t2;
        assert_eq!(t2.nu().unwrap(), t12);
        assert_eq!(t12.nu().unwrap(), t2);
        assert_eq!(GrassmannNumber::one(0).nu(), Err(Error::NoOddGenerators));
    }
}
