//! Exterior algebra over a commutative coefficient ring, with monomials stored
//! as bitmasks over at most 32 odd generators.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_traits::{One, Zero};

use super::Parity;
use crate::poly::{RationalFunction, Q};

pub trait Coeff: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
}

impl Coeff for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

impl Coeff for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn one() -> Self {
        RationalFunction::one()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        RationalFunction::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        RationalFunction::mul(self, other)
    }
    fn neg(&self) -> Self {
        RationalFunction::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        RationalFunction::inv(self)
    }
}

/// Sign of `e_a ∧ e_b` relative to the sorted monomial `e_{a∪b}`.
pub fn wedge_sign(a: u32, b: u32) -> bool {
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        swaps += (a >> j >> 1).count_ones();
    }
    swaps % 2 == 1
}

/// Strictly increasing generator indices of a mask.
pub fn mask_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

/// Display order: by degree, then lexicographically by index list.
pub fn mask_display_order(a: &u32, b: &u32) -> std::cmp::Ordering {
    a.count_ones()
        .cmp(&b.count_ones())
        .then_with(|| mask_indices(*a).cmp(&mask_indices(*b)))
}

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Exterior<C> {
    terms: BTreeMap<u32, C>,
}

impl<C: Coeff> Default for Exterior<C> {
    fn default() -> Self {
        Exterior {
            terms: BTreeMap::new(),
        }
    }
}

impl<C: Coeff> Exterior<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(c: C) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(mask: u32, c: C) -> Self {
        let mut out = Self::zero();
        if !c.is_zero() {
            out.terms.insert(mask, c);
        }
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u32, C)>) -> Self {
        let mut out = Self::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &C)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, mask: u32) -> C {
        self.terms.get(&mask).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> u32 {
        self.terms.keys().fold(0, |acc, m| acc | m)
    }

    fn add_term(&mut self, mask: u32, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mask) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.terms.remove(&mask);
                }
            }
            None => {
                self.terms.insert(mask, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Exterior {
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Exterior::from_terms(self.terms.iter().map(|(m, d)| (*m, c.mul(d))))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if ma & mb != 0 {
                    continue;
                }
                let p = ca.mul(cb);
                let p = if wedge_sign(*ma, *mb) { p.neg() } else { p };
                out.add_term(ma | mb, p);
            }
        }
        out
    }

    pub fn body(&self) -> C {
        self.coeff(0)
    }

    pub fn soul(&self) -> Self {
        let mut out = self.clone();
        out.terms.remove(&0);
        out
    }

    /// `Even` for zero; `None` for mixed parity.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|m| Parity::of_degree(m.count_ones()));
        let first = it.next().unwrap_or(Parity::Even);
        it.all(|p| p == first).then_some(first)
    }

    pub fn is_of_parity(&self, p: Parity) -> bool {
        self.terms
            .keys()
            .all(|m| Parity::of_degree(m.count_ones()) == p)
    }

    /// `body⁻¹ · Σ (−soul/body)^i`, finite by nilpotency.
    pub fn inv(&self) -> Option<Self> {
        let b_inv = self.body().inv()?;
        let u = self.soul().scale(&b_inv.neg());
        let mut acc = Self::scalar(C::one());
        let mut pow = Self::scalar(C::one());
        loop {
            pow = pow.mul(&u);
            if pow.is_zero() {
                break;
            }
            acc = acc.add(&pow);
        }
        Some(acc.scale(&b_inv))
    }

    /// Toggles generator 0 by left insertion; sign-free since it is the
    /// smallest index.
    pub fn toggle_first(&self) -> Self {
        Exterior {
            terms: self.terms.iter().map(|(m, c)| (m ^ 1, c.clone())).collect(),
        }
    }

    /// Left derivative with respect to generator `i`.
    pub fn left_derivative(&self, i: usize) -> Self {
        let bit = 1u32 << i;
        Exterior::from_terms(self.terms.iter().filter(|(m, _)| *m & bit != 0).map(|(m, c)| {
            let before = (m & (bit - 1)).count_ones();
            let c = if before % 2 == 1 { c.neg() } else { c.clone() };
            (m & !bit, c)
        }))
    }

    /// Multiplies generator `i` in from the left.
    pub fn left_mul_generator(&self, i: usize) -> Self {
        Self::monomial(1 << i, C::one()).mul(self)
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Exterior<D> {
        Exterior::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    pub fn retain_masks(&self, f: impl Fn(u32) -> bool) -> Self {
        Exterior {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| f(**m))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::scalar(C::one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }
}
