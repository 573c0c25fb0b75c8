//! Exact arithmetic for the structure sheaf of a ν-domain.
//!
//! A [`SuperFunction`] is an element of `Rat(x_1..x_α) ⊗ ∧(e_1..e_β)`, the
//! rational-function model of smooth functions tensored with an exterior
//! algebra, optionally extended by auxiliary odd generators. A
//! [`GrassmannNumber`] is an element of the finite Grassmann algebra `Λ_r`
//! used for `ℝ^{0|r}`-points.
//!
//! The odd involution `ν` toggles the first odd generator by left insertion:
//! `ν(e_S) = e_1 ∧ e_S` when `1 ∉ S`, and `ν(e_1 ∧ e_S') = e_S'`, extended
//! linearly over coefficients. Auxiliary generators are never toggled.

mod exterior;
mod grassmann;
mod sampling;
mod serial;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

pub use exterior::{mask_display_order, mask_indices, wedge_sign, Coeff, Exterior};
pub use grassmann::GrassmannNumber;
pub use sampling::{lambda_sample, mix_seed, Sampler};
pub use serial::{GrassmannRepr, RationalRepr, SuperFunctionRepr};

use crate::error::{Error, Result};
use crate::poly::{RationalFunction, Q};
use crate::supermatrix::SuperScalar;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_degree(d: u32) -> Parity {
        if d % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn add(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// `(−1)^{|a||b|}` as a flag: true when the sign is negative.
    pub fn koszul(a: Parity, b: Parity) -> bool {
        a.is_odd() && b.is_odd()
    }
}

/// Names of the declared generators. The first `chart_odd` odd generators
/// belong to the chart; any further ones are auxiliary nilpotent parameters.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct SuperContext {
    even: Vec<String>,
    odd: Vec<String>,
    chart_odd: usize,
}

impl SuperContext {
    pub fn new<S: Into<String>>(
        even: impl IntoIterator<Item = S>,
        odd: impl IntoIterator<Item = S>,
    ) -> Result<Arc<Self>> {
        let even: Vec<String> = even.into_iter().map(Into::into).collect();
        let odd: Vec<String> = odd.into_iter().map(Into::into).collect();
        let chart_odd = odd.len();
        let ctx = SuperContext {
            even,
            odd,
            chart_odd,
        };
        ctx.check_names()?;
        Ok(Arc::new(ctx))
    }

    fn check_names(&self) -> Result<()> {
        if self.odd.len() > 32 {
            return Err(Error::InvalidDimensions(format!(
                "{} odd generators exceed the supported 32",
                self.odd.len()
            )));
        }
        let mut all: Vec<&str> = self.even.iter().chain(&self.odd).map(String::as_str).collect();
        all.sort_unstable();
        for w in all.windows(2) {
            if w[0] == w[1] {
                return Err(Error::NameClash(w[0].to_string()));
            }
        }
        Ok(())
    }

    pub fn even_names(&self) -> &[String] {
        &self.even
    }

    pub fn odd_names(&self) -> &[String] {
        &self.odd
    }

    /// Number of odd generators ν acts on.
    pub fn chart_odd(&self) -> usize {
        self.chart_odd
    }

    pub fn auxiliary_names(&self) -> &[String] {
        &self.odd[self.chart_odd..]
    }

    pub fn odd_index(&self, name: &str) -> Option<usize> {
        self.odd.iter().position(|n| n == name)
    }

    pub fn is_even_name(&self, name: &str) -> bool {
        self.even.iter().any(|n| n == name)
    }

    /// Extends by auxiliary odd generators, which ν leaves alone.
    pub fn adjoin_nilpotent<S: AsRef<str>>(&self, names: &[S]) -> Result<Arc<Self>> {
        let mut ctx = self.clone();
        ctx.odd.extend(names.iter().map(|s| s.as_ref().to_string()));
        ctx.check_names()?;
        Ok(Arc::new(ctx))
    }

    /// Extends by further even indeterminates.
    pub fn adjoin_even<S: AsRef<str>>(&self, names: &[S]) -> Result<Arc<Self>> {
        let mut ctx = self.clone();
        ctx.even.extend(names.iter().map(|s| s.as_ref().to_string()));
        ctx.check_names()?;
        Ok(Arc::new(ctx))
    }

    pub fn monomial_name(&self, mask: u32) -> String {
        mask_indices(mask)
            .into_iter()
            .map(|i| self.odd[i].as_str())
            .collect()
    }
}

fn same_ctx(a: &Arc<SuperContext>, b: &Arc<SuperContext>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Element of the structure ring of a ν-domain (with optional auxiliaries).
#[derive(Clone, Debug)]
pub struct SuperFunction {
    ctx: Arc<SuperContext>,
    ext: Exterior<RationalFunction>,
}

impl PartialEq for SuperFunction {
    fn eq(&self, other: &Self) -> bool {
        same_ctx(&self.ctx, &other.ctx) && self.ext == other.ext
    }
}

impl Eq for SuperFunction {}

impl SuperFunction {
    pub fn from_exterior(ctx: &Arc<SuperContext>, ext: Exterior<RationalFunction>) -> Self {
        SuperFunction {
            ctx: ctx.clone(),
            ext,
        }
    }

    pub fn zero(ctx: &Arc<SuperContext>) -> Self {
        Self::from_exterior(ctx, Exterior::zero())
    }

    pub fn one(ctx: &Arc<SuperContext>) -> Self {
        Self::constant(ctx, RationalFunction::one())
    }

    pub fn constant(ctx: &Arc<SuperContext>, c: RationalFunction) -> Self {
        Self::from_exterior(ctx, Exterior::scalar(c))
    }

    pub fn rational(ctx: &Arc<SuperContext>, c: Q) -> Self {
        Self::constant(ctx, RationalFunction::constant(c))
    }

    pub fn even_var(ctx: &Arc<SuperContext>, name: &str) -> Result<Self> {
        if !ctx.is_even_name(name) {
            return Err(Error::UnknownVariable(name.to_string()));
        }
        Ok(Self::constant(ctx, RationalFunction::var(name)))
    }

    pub fn odd_gen(ctx: &Arc<SuperContext>, name: &str) -> Result<Self> {
        let i = ctx
            .odd_index(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::odd_at(ctx, i))
    }

    pub fn odd_at(ctx: &Arc<SuperContext>, i: usize) -> Self {
        Self::from_exterior(ctx, Exterior::monomial(1 << i, RationalFunction::one()))
    }

    pub fn context(&self) -> &Arc<SuperContext> {
        &self.ctx
    }

    pub fn exterior(&self) -> &Exterior<RationalFunction> {
        &self.ext
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &RationalFunction)> {
        self.ext.terms()
    }

    pub fn is_zero(&self) -> bool {
        self.ext.is_zero()
    }

    pub fn body(&self) -> RationalFunction {
        self.ext.body()
    }

    pub fn parity(&self) -> Option<Parity> {
        self.ext.parity()
    }

    pub fn is_even(&self) -> bool {
        self.ext.is_of_parity(Parity::Even)
    }

    pub fn is_odd(&self) -> bool {
        self.ext.is_of_parity(Parity::Odd)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_ctx(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::from_exterior(&self.ctx, self.ext.add(&other.ext)))
    }

    /// Supercommutative product.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::from_exterior(&self.ctx, self.ext.mul(&other.ext)))
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        Self::from_exterior(&self.ctx, self.ext.scale(c))
    }

    pub fn scale_q(&self, c: &Q) -> Self {
        self.scale(&RationalFunction::constant(c.clone()))
    }

    pub fn inv(&self) -> Result<Self> {
        self.ext
            .inv()
            .map(|e| Self::from_exterior(&self.ctx, e))
            .ok_or(Error::ZeroBody)
    }

    pub fn nu(&self) -> Result<Self> {
        if self.ctx.chart_odd == 0 {
            return Err(Error::NoOddGenerators);
        }
        Ok(Self::from_exterior(&self.ctx, self.ext.toggle_first()))
    }

    /// Partial derivative; odd generators use the left derivative.
    pub fn partial(&self, var: &str) -> Result<Self> {
        if let Some(i) = self.ctx.odd_index(var) {
            return Ok(Self::from_exterior(&self.ctx, self.ext.left_derivative(i)));
        }
        if self.ctx.is_even_name(var) {
            return Ok(Self::from_exterior(
                &self.ctx,
                self.ext.map_coeffs(|c| c.derivative(var)),
            ));
        }
        Err(Error::UnknownVariable(var.to_string()))
    }

    /// `b` in `a + τ·b` with `a, b` free of the odd generator `τ`.
    pub fn coefficient_of(&self, odd_name: &str) -> Result<Self> {
        let i = self
            .ctx
            .odd_index(odd_name)
            .ok_or_else(|| Error::UnknownVariable(odd_name.to_string()))?;
        Ok(Self::from_exterior(&self.ctx, self.ext.left_derivative(i)))
    }

    /// Re-expresses in another context, matching odd generators by name.
    pub fn rehome(&self, ctx: &Arc<SuperContext>) -> Result<Self> {
        if same_ctx(&self.ctx, ctx) {
            return Ok(self.clone());
        }
        let map: Vec<Option<usize>> = self
            .ctx
            .odd
            .iter()
            .map(|n| ctx.odd_index(n))
            .collect();
        let mut out = Exterior::zero();
        for (mask, c) in self.ext.terms() {
            let mut mono = Exterior::scalar(c.clone());
            for i in mask_indices(mask) {
                let j = map[i].ok_or_else(|| Error::UnknownVariable(self.ctx.odd[i].clone()))?;
                mono = mono.mul(&Exterior::monomial(1 << j, RationalFunction::one()));
            }
            out = out.add(&mono);
        }
        Ok(Self::from_exterior(ctx, out))
    }

    /// Substitutes values for the generators: even names through `even`,
    /// odd generators by position. The target ring must be supercommutative.
    pub fn evaluate<T: SuperScalar>(
        &self,
        even: &dyn Fn(&str) -> Option<T>,
        odd: &[T],
        one: &T,
    ) -> Result<T> {
        let zero = one.zero_like();
        let poly = |p: &crate::poly::Poly| -> Result<T> {
            for v in p.vars() {
                if even(&v).is_none() {
                    return Err(Error::UnknownVariable(v.to_string()));
                }
            }
            Ok(p.eval_with(
                &zero,
                |a, b| a.add(b),
                |a, b| a.mul(b),
                |c| one.from_q(c),
                |v| even(v).expect("checked"),
            ))
        };
        let mut acc = zero.clone();
        for (mask, c) in self.ext.terms() {
            let mut t = poly(c.numer())?.mul(&poly(c.denom())?.inv()?);
            for i in mask_indices(mask) {
                let g = odd
                    .get(i)
                    .ok_or_else(|| Error::UnknownVariable(self.ctx.odd[i].clone()))?;
                t = t.mul(g);
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Applies `f` to every rational coefficient.
    pub fn map_coefficients(&self, f: impl Fn(&RationalFunction) -> RationalFunction) -> Self {
        Self::from_exterior(&self.ctx, self.ext.map_coeffs(f))
    }
}

impl Add for &SuperFunction {
    type Output = SuperFunction;
    fn add(self, rhs: &SuperFunction) -> SuperFunction {
        self.checked_add(rhs).expect("context mismatch in addition")
    }
}

impl Sub for &SuperFunction {
    type Output = SuperFunction;
    fn sub(self, rhs: &SuperFunction) -> SuperFunction {
        self.checked_add(&-rhs).expect("context mismatch in subtraction")
    }
}

impl Mul for &SuperFunction {
    type Output = SuperFunction;
    fn mul(self, rhs: &SuperFunction) -> SuperFunction {
        self.checked_mul(rhs).expect("context mismatch in product")
    }
}

impl Neg for &SuperFunction {
    type Output = SuperFunction;
    fn neg(self) -> SuperFunction {
        SuperFunction::from_exterior(&self.ctx, self.ext.neg())
    }
}

fn term_string(coef: &RationalFunction, mono: &str) -> String {
    if mono.is_empty() {
        return coef.to_string();
    }
    let paren = |p: &crate::poly::Poly| {
        let s = p.to_string();
        if p.terms().count() > 1 {
            format!("({s})")
        } else {
            s
        }
    };
    let num = coef.numer();
    let mut s = if num.is_one() {
        mono.to_string()
    } else if num.neg().is_one() {
        format!("-{mono}")
    } else {
        format!("{}*{mono}", paren(num))
    };
    if !coef.denom().is_one() {
        s = format!("{s}/{}", paren(coef.denom()));
    }
    s
}

/// Renders a sum of `(monomial name, coefficient)` terms.
pub(crate) fn render_terms(terms: Vec<(String, String)>) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (_, t)) in terms.iter().enumerate() {
        if i == 0 {
            out.push_str(t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(t);
        }
    }
    out
}

impl fmt::Display for SuperFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut masks: Vec<u32> = self.ext.terms().map(|(m, _)| m).collect();
        masks.sort_by(mask_display_order);
        let terms = masks
            .into_iter()
            .map(|m| {
                let name = self.ctx.monomial_name(m);
                let t = term_string(&self.ext.coeff(m), &name);
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

    fn ctx2() -> Arc<SuperContext> {
        SuperContext::new(["x", "y"], ["e1", "e2"]).unwrap()
    }

    fn var(c: &Arc<SuperContext>, n: &str) -> SuperFunction {
        if c.is_even_name(n) {
            SuperFunction::even_var(c, n).unwrap()
        } else {
            SuperFunction::odd_gen(c, n).unwrap()
        }
    }

    #[test]
    fn product_examples() {
        let c = ctx2();
        let (e1, e2, x, y) = (var(&c, "e1"), var(&c, "e2"), var(&c, "x"), var(&c, "y"));
        let e12 = &e1 * &e2;
        assert_eq!(&e2 * &e1, -&e12);
        assert!((&e1 * &e1).is_zero());
        let lhs = &(&x + &e12) * &(&y + &e12);
        let rhs = &(&x * &y) + &(&(&x + &y) * &e12);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn context_mismatch_is_reported() {
        let a = SuperFunction::one(&ctx2());
        let other = SuperContext::new(["x"], ["e"]).unwrap();
        let b = SuperFunction::one(&other);
        assert_eq!(a.checked_mul(&b), Err(Error::ContextMismatch));
    }

    #[test]
    fn inverse_examples() {
        let c = ctx2();
        let x = var(&c, "x");
        assert_eq!(x.inv().unwrap().to_string(), "1/x");
        let e12 = &var(&c, "e1") * &var(&c, "e2");
        let a = &SuperFunction::one(&c) + &e12;
        assert_eq!(a.inv().unwrap(), &SuperFunction::one(&c) - &e12);
        assert_eq!(var(&c, "e1").inv(), Err(Error::ZeroBody));
    }

    #[test]
    fn nu_examples() {
        let one_dim = SuperContext::new(["x"], ["e"]).unwrap();
        let e = var(&one_dim, "e");
        let one = SuperFunction::one(&one_dim);
        assert_eq!(one.nu().unwrap(), e);
        assert_eq!(e.nu().unwrap(), one);

        let c = ctx2();
        let xe2 = &var(&c, "x") * &var(&c, "e2");
        let expect = &var(&c, "x") * &(&var(&c, "e1") * &var(&c, "e2"));
        assert_eq!(xe2.nu().unwrap(), expect);
        let e12 = &var(&c, "e1") * &var(&c, "e2");
        assert_eq!(e12.nu().unwrap(), var(&c, "e2"));

        let even_only = SuperContext::new(vec!["x"], Vec::<&str>::new()).unwrap();
        assert_eq!(SuperFunction::one(&even_only).nu(), Err(Error::NoOddGenerators));
    }

    #[test]
    fn partial_examples() {
        let c = ctx2();
        let x = var(&c, "x");
        let x2e1 = &(&x * &x) * &var(&c, "e1");
        let expect = (&x * &var(&c, "e1")).scale_q(&q(2));
        assert_eq!(x2e1.partial("x").unwrap(), expect);
        let e12 = &var(&c, "e1") * &var(&c, "e2");
        assert_eq!(e12.partial("e1").unwrap(), var(&c, "e2"));
        assert_eq!(e12.partial("e2").unwrap(), -&var(&c, "e1"));
        assert!(matches!(e12.partial("z"), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn auxiliaries() {
        let c = ctx2().adjoin_nilpotent(&["τ1", "τ2"]).unwrap();
        let t1 = var(&c, "τ1");
        let t2 = var(&c, "τ2");
        assert!((&t1 * &t1).is_zero());
        let eps = &t1 * &t2;
        assert!(eps.is_even());
        assert!((&eps * &eps).is_zero());
        let a = var(&c, "x");
        let b = &var(&c, "y") * &var(&c, "e1");
        let mixed = &a + &(&t1 * &b);
        assert_eq!(mixed.coefficient_of("τ1").unwrap(), b);
        // ν acts on e1, not on the auxiliaries
        assert_eq!(t1.nu().unwrap(), &var(&c, "e1") * &t1);
        assert!(matches!(
            ctx2().adjoin_nilpotent(&["e1"]),
            Err(Error::NameClash(_))
        ));
    }
}
