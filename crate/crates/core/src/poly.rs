//! Multivariate polynomials and rational functions over the rationals.
//!
//! Variables are identified by name. Monomials are ordered lexicographically
//! with the lexicographically greatest variable name most significant, so the
//! last key of a polynomial's term map is its leading term.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

/// A variable name.
pub type Var = Arc<str>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Formats a rational as `p/q`, always with an explicit denominator.
pub fn q_to_string(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn q_parse(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}

/// A power product of variables; exponents are positive and variables sorted.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: &Var) -> Self {
        Monomial(vec![(v.clone(), 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree_in(&self, v: &str) -> u32 {
        self.0
            .iter()
            .find(|(w, _)| &**w == v)
            .map_or(0, |(_, e)| *e)
    }

    pub fn max_var(&self) -> Option<&Var> {
        self.0.last().map(|(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, ea) = &self.0[i];
            let (b, eb) = &other.0[j];
            match a.cmp(b) {
                Ordering::Less => {
                    out.push((a.clone(), *ea));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b.clone(), *eb));
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.clone(), ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for (v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 == *v {
                let f = other.0[j].1;
                if f > *e {
                    return None;
                }
                if f < *e {
                    out.push((v.clone(), e - f));
                }
                j += 1;
            } else if j < other.0.len() && other.0[j].0 < *v {
                return None;
            } else {
                out.push((v.clone(), *e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Removes `v`, returning its exponent and the remaining monomial.
    pub fn split_var(&self, v: &str) -> (u32, Monomial) {
        let mut e = 0;
        let rest = self
            .0
            .iter()
            .filter(|(w, k)| {
                if &**w == v {
                    e = *k;
                    false
                } else {
                    true
                }
            })
            .cloned()
            .collect();
        (e, Monomial(rest))
    }

    pub fn from_factors(mut factors: Vec<(Var, u32)>) -> Monomial {
        factors.retain(|(_, e)| *e > 0);
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(factors.len());
        for (v, e) in factors {
            match out.last_mut() {
                Some((w, f)) if *w == v => *f += e,
                _ => out.push((v, e)),
            }
        }
        Monomial(out)
    }

    /// `v1^a*v2^b`, empty for the unit monomial.
    pub fn to_key(&self) -> String {
        self.0
            .iter()
            .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect::<Vec<_>>()
            .join("*")
    }

    pub fn parse_key(s: &str) -> Option<Monomial> {
        if s.is_empty() {
            return Some(Monomial::one());
        }
        let mut factors = Vec::new();
        for f in s.split('*') {
            let (v, e) = match f.split_once('^') {
                Some((v, e)) => (v, e.parse().ok()?),
                None => (f, 1),
            };
            if v.is_empty() {
                return None;
            }
            factors.push((Var::from(v), e));
        }
        Some(Monomial::from_factors(factors))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut i, mut j) = (self.0.len(), other.0.len());
        loop {
            match (i, j) {
                (0, 0) => return Ordering::Equal,
                (0, _) => return Ordering::Less,
                (_, 0) => return Ordering::Greater,
                _ => {
                    let (va, ea) = &self.0[i - 1];
                    let (vb, eb) = &other.0[j - 1];
                    match va.cmp(vb) {
                        Ordering::Equal => match ea.cmp(eb) {
                            Ordering::Equal => {
                                i -= 1;
                                j -= 1;
                            }
                            o => return o,
                        },
                        o => return o,
                    }
                }
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Q) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn one() -> Self {
        Poly::constant(Q::one())
    }

    pub fn var(name: &str) -> Self {
        let mut p = Poly::zero();
        p.terms.insert(Monomial::var(&Var::from(name)), Q::one());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Q {
        self.leading().map_or_else(Q::zero, |(_, c)| c.clone())
    }

    pub fn max_var(&self) -> Option<Var> {
        self.terms.keys().filter_map(|m| m.max_var()).max().cloned()
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self
            .terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|(v, _)| v.clone()))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn degree_in(&self, v: &str) -> u32 {
        self.terms.keys().map(|m| m.degree_in(v)).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, d)| (m.mul(mono), d * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        if divisor.is_zero() {
            return None;
        }
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (lm, lc) = divisor.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((m, c)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let tm = m.div(&lm)?;
            let tc = c / &lc;
            rem = rem.sub(&divisor.mul_monomial(&tm, &tc));
            quot.add_term(tm, tc);
        }
        Some(quot)
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn derivative(&self, v: &str) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_var(v);
            if e == 0 {
                continue;
            }
            let mono = if e == 1 {
                rest
            } else {
                rest.mul(&Monomial(vec![(Var::from(v), e - 1)]))
            };
            out.add_term(mono, c * q(e as i64));
        }
        out
    }

    /// Coefficients in `v`, indexed by degree.
    pub fn coeffs_in(&self, v: &str) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split_var(v);
            out[e as usize].add_term(rest, c.clone());
        }
        out
    }

    fn from_coeffs_in(v: &str, coeffs: &[Poly]) -> Poly {
        let var = Var::from(v);
        let mut out = Poly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            let vm = Monomial::from_factors(vec![(var.clone(), e as u32)]);
            for (m, k) in &c.terms {
                out.add_term(m.mul(&vm), k.clone());
            }
        }
        out
    }

    /// Substitutes every variable through `f` into a commutative ring.
    pub fn eval_with<T: Clone>(
        &self,
        zero: &T,
        add: impl Fn(&T, &T) -> T,
        mul: impl Fn(&T, &T) -> T,
        scalar: impl Fn(&Q) -> T,
        var: impl Fn(&str) -> T,
    ) -> T {
        let mut acc = zero.clone();
        for (m, c) in &self.terms {
            let mut t = scalar(c);
            for (v, e) in m.factors() {
                let x = var(v);
                for _ in 0..*e {
                    t = mul(&t, &x);
                }
            }
            acc = add(&acc, &t);
        }
        acc
    }

    /// Replaces variables by polynomials (unlisted variables stay).
    pub fn substitute(&self, f: &dyn Fn(&str) -> Option<Poly>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for (v, e) in m.factors() {
                let x = f(v).unwrap_or_else(|| Poly::var(v));
                t = t.mul(&x.pow(*e));
            }
            out = out.add(&t);
        }
        out
    }
}

/// Pseudo-remainder of `a` by `b` as polynomials in `v`.
fn prem(a: &Poly, b: &Poly, v: &str) -> Poly {
    let db = b.degree_in(v) as usize;
    let bc = b.coeffs_in(v);
    let lc = bc[db].clone();
    let mut r = a.coeffs_in(v);
    while r.len() > db && r.iter().any(|c| !c.is_zero()) {
        let dr = r.len() - 1;
        if r[dr].is_zero() {
            r.pop();
            continue;
        }
        let lead = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul(&lc);
        }
        for (i, c) in bc.iter().enumerate() {
            r[i + shift] = r[i + shift].sub(&lead.mul(c));
        }
        debug_assert!(r[dr].is_zero());
        r.pop();
    }
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
    Poly::from_coeffs_in(v, &r)
}

fn content_in(p: &Poly, v: &str) -> Poly {
    let mut g = Poly::zero();
    for c in p.coeffs_in(v) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_in(p: &Poly, v: &str) -> Poly {
    let c = content_in(p, v);
    p.div_exact(&c).expect("content divides").monic()
}

/// Monic greatest common divisor (primitive remainder sequences, recursive in
/// the greatest variable). `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.as_constant().is_some() || b.as_constant().is_some() {
        return Poly::one();
    }
    let v = match (a.max_var(), b.max_var()) {
        (Some(x), Some(y)) => x.max(y),
        _ => return Poly::one(),
    };
    let (da, db) = (a.degree_in(&v), b.degree_in(&v));
    if da == 0 {
        return gcd(a, &content_in(b, &v));
    }
    if db == 0 {
        return gcd(&content_in(a, &v), b);
    }
    let c = gcd(&content_in(a, &v), &content_in(b, &v));
    let (mut p, mut r) = (primitive_in(a, &v), primitive_in(b, &v));
    if p.degree_in(&v) < r.degree_in(&v) {
        std::mem::swap(&mut p, &mut r);
    }
    while !r.is_zero() {
        let rem = prem(&p, &r, &v);
        p = r;
        r = if rem.is_zero() {
            rem
        } else if rem.degree_in(&v) == 0 {
            // the remainder sequence ends in a unit of the coefficient ring
            p = Poly::one();
            Poly::zero()
        } else {
            primitive_in(&rem, &v)
        };
    }
    let g = if p.degree_in(&v) == 0 {
        Poly::one()
    } else {
        primitive_in(&p, &v)
    };
    c.mul(&g).monic()
}

fn fmt_q_coeff(c: &Q, first: bool, f: &mut fmt::Formatter<'_>, has_mono: bool) -> fmt::Result {
    let neg = c.is_negative();
    let a = c.abs();
    if !first {
        f.write_str(if neg { " - " } else { " + " })?;
    } else if neg {
        f.write_str("-")?;
    }
    if has_mono && a.is_one() {
        return Ok(());
    }
    if a.is_integer() {
        write!(f, "{}", a.numer())?;
    } else {
        write!(f, "{}/{}", a.numer(), a.denom())?;
    }
    if has_mono {
        f.write_str("*")?;
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            fmt_q_coeff(c, i == 0, f, !m.is_one())?;
            f.write_str(&m.to_key())?;
        }
        Ok(())
    }
}

/// A reduced quotient of polynomials; the denominator is monic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl Default for RationalFunction {
    fn default() -> Self {
        RationalFunction::zero()
    }
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RationalFunction::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        RationalFunction {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn int(n: i64) -> Self {
        RationalFunction::constant(q(n))
    }

    pub fn var(name: &str) -> Self {
        RationalFunction::from_poly(Poly::var(name))
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction {
            num: p,
            den: Poly::one(),
        }
    }

    /// Builds `num/den` in canonical form; `None` if `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(RationalFunction::zero());
        }
        let (num, den) = if den.as_constant().is_some() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        let lc = den.leading_coeff().recip();
        Some(RationalFunction {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Q> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return RationalFunction::new(self.num.add(&other.num), self.den.clone()).unwrap();
        }
        RationalFunction::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
        .unwrap()
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return RationalFunction::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return RationalFunction::from_poly(self.num.mul(&other.num));
        }
        RationalFunction::new(self.num.mul(&other.num), self.den.mul(&other.den)).unwrap()
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        Some(self.mul(&other.inv()?))
    }

    pub fn derivative(&self, v: &str) -> Self {
        let dn = self.num.derivative(v);
        if self.den.as_constant().is_some() {
            return RationalFunction::new(dn, self.den.clone()).unwrap();
        }
        let dd = self.den.derivative(v);
        RationalFunction::new(
            dn.mul(&self.den).sub(&self.num.mul(&dd)),
            self.den.mul(&self.den),
        )
        .unwrap()
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v.sort();
        v.dedup();
        v
    }

    /// Evaluates at rational values; `None` if a variable is unassigned or
    /// the denominator vanishes.
    pub fn eval_q(&self, f: &dyn Fn(&str) -> Option<Q>) -> Option<Q> {
        let ev = |p: &Poly| -> Option<Q> {
            let mut acc = Q::zero();
            for (m, c) in p.terms() {
                let mut t = c.clone();
                for (v, e) in m.factors() {
                    let x = f(v)?;
                    for _ in 0..*e {
                        t *= &x;
                    }
                }
                acc += t;
            }
            Some(acc)
        };
        let d = ev(&self.den)?;
        if d.is_zero() {
            return None;
        }
        Some(ev(&self.num)? / d)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &Poly| -> String {
            let s = p.to_string();
            if p.terms.len() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::var("x")
    }
    fn y() -> Poly {
        Poly::var("y")
    }

    #[test]
    fn leading_term_uses_greatest_variable() {
        let p = x().pow(3).add(&y());
        let (m, _) = p.leading().unwrap();
        assert_eq!(m.to_key(), "y");
    }

    #[test]
    fn gcd_of_products() {
        let a = x().add(&y()).mul(&x().sub(&Poly::one()));
        let b = x().add(&y()).mul(&y().add(&Poly::constant(q(2))));
        assert_eq!(gcd(&a, &b), x().add(&y()));
    }

    #[test]
    fn gcd_multivariate_square() {
        let f = x().mul(&y()).add(&Poly::one());
        let a = f.pow(2).mul(&x());
        let b = f.mul(&y().pow(2));
        assert_eq!(gcd(&a, &b), f.monic());
    }

    #[test]
    fn gcd_coprime_is_one() {
        assert!(gcd(&x(), &y()).is_one());
        assert!(gcd(&x().add(&Poly::one()), &x()).is_one());
    }

    #[test]
    fn rational_function_reduces() {
        let num = x().pow(2).sub(&y().pow(2));
        let den = x().sub(&y()).scale(&q(3));
        let r = RationalFunction::new(num, den).unwrap();
        assert_eq!(r.denom(), &Poly::one());
        assert_eq!(r.numer(), &x().add(&y()).scale(&q_frac(1, 3)));
    }

    #[test]
    fn reciprocal_prints() {
        let r = RationalFunction::var("x").inv().unwrap();
        assert_eq!(r.to_string(), "1/x");
        let s = RationalFunction::var("e").mul(&r);
        assert_eq!(s.to_string(), "e/x");
    }

    #[test]
    fn derivative_quotient_rule() {
        let r = RationalFunction::var("x").inv().unwrap();
        let d = r.derivative("x");
        let expect = RationalFunction::new(Poly::constant(q(-1)), x().pow(2)).unwrap();
        assert_eq!(d, expect);
    }

    #[test]
    fn rational_parse_roundtrip() {
        for s in ["3/1", "-7/4", "0/1"] {
            assert_eq!(q_to_string(&q_parse(s).unwrap()), s);
        }
        assert!(q_parse("1/0").is_none());
    }

    #[test]
    fn monomial_key_roundtrip() {
        let m = Monomial::from_factors(vec![(Var::from("x2"), 2), (Var::from("f_x1"), 1)]);
        assert_eq!(Monomial::parse_key(&m.to_key()).unwrap(), m);
    }
}
