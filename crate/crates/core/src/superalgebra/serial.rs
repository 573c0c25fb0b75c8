//! Serde forms: monomials keyed by comma-joined 1-based generator indices
//! (empty string for the body), coefficients as exact `"p/q"` strings.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{mask_indices, Exterior, GrassmannNumber, SuperContext, SuperFunction};
use crate::error::{Error, Result};
use crate::poly::{q_parse, q_to_string, Monomial, Poly, RationalFunction, Q};

fn mask_key(mask: u32) -> String {
    mask_indices(mask)
        .iter()
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_mask(key: &str, limit: usize) -> Result<u32> {
    if key.is_empty() {
        return Ok(0);
    }
    let mut mask = 0u32;
    let mut last = 0usize;
    for part in key.split(',') {
        let i: usize = part
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad monomial key `{key}`")))?;
        if i == 0 || i > limit || i <= last {
            return Err(Error::Parse(format!("bad monomial key `{key}`")));
        }
        last = i;
        mask |= 1 << (i - 1);
    }
    Ok(mask)
}

fn parse_q(s: &str) -> Result<Q> {
    q_parse(s).ok_or_else(|| Error::Parse(format!("bad rational `{s}`")))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrassmannRepr {
    pub r: usize,
    pub terms: BTreeMap<String, String>,
}

impl From<&GrassmannNumber> for GrassmannRepr {
    fn from(g: &GrassmannNumber) -> Self {
        GrassmannRepr {
            r: g.r(),
            terms: g.terms().map(|(m, c)| (mask_key(m), q_to_string(c))).collect(),
        }
    }
}

impl TryFrom<&GrassmannRepr> for GrassmannNumber {
    type Error = Error;
    fn try_from(repr: &GrassmannRepr) -> Result<Self> {
        let mut terms = Vec::new();
        for (k, v) in &repr.terms {
            terms.push((parse_mask(k, repr.r)?, parse_q(v)?));
        }
        GrassmannNumber::from_exterior(repr.r, Exterior::from_terms(terms))
    }
}

impl Serialize for GrassmannNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GrassmannRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for GrassmannNumber {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = GrassmannRepr::deserialize(d)?;
        GrassmannNumber::try_from(&repr).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalRepr {
    pub num: BTreeMap<String, String>,
    pub den: BTreeMap<String, String>,
}

fn poly_repr(p: &Poly) -> BTreeMap<String, String> {
    p.terms().map(|(m, c)| (m.to_key(), q_to_string(c))).collect()
}

fn poly_parse(map: &BTreeMap<String, String>) -> Result<Poly> {
    let mut terms = Vec::new();
    for (k, v) in map {
        let m = Monomial::parse_key(k).ok_or_else(|| Error::Parse(format!("bad monomial `{k}`")))?;
        terms.push((m, parse_q(v)?));
    }
    Ok(Poly::from_terms(terms))
}

impl From<&RationalFunction> for RationalRepr {
    fn from(f: &RationalFunction) -> Self {
        RationalRepr {
            num: poly_repr(f.numer()),
            den: poly_repr(f.denom()),
        }
    }
}

impl TryFrom<&RationalRepr> for RationalFunction {
    type Error = Error;
    fn try_from(r: &RationalRepr) -> Result<Self> {
        RationalFunction::new(poly_parse(&r.num)?, poly_parse(&r.den)?)
            .ok_or_else(|| Error::Parse("zero denominator".into()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuperFunctionRepr {
    pub even: Vec<String>,
    pub odd: Vec<String>,
    pub chart_odd: usize,
    pub terms: BTreeMap<String, RationalRepr>,
}

impl From<&SuperFunction> for SuperFunctionRepr {
    fn from(f: &SuperFunction) -> Self {
        let ctx = f.context();
        SuperFunctionRepr {
            even: ctx.even_names().to_vec(),
            odd: ctx.odd_names().to_vec(),
            chart_odd: ctx.chart_odd(),
            terms: f
                .terms()
                .map(|(m, c)| (mask_key(m), RationalRepr::from(c)))
                .collect(),
        }
    }
}

impl SuperFunctionRepr {
    pub fn context(&self) -> Result<Arc<SuperContext>> {
        if self.chart_odd > self.odd.len() {
            return Err(Error::Parse("chart_odd exceeds odd generators".into()));
        }
        let base = SuperContext::new(self.even.clone(), self.odd[..self.chart_odd].to_vec())?;
        if self.chart_odd == self.odd.len() {
            Ok(base)
        } else {
            base.adjoin_nilpotent(&self.odd[self.chart_odd..])
        }
    }

    /// Decodes into the supplied context, which must match the declared one.
    pub fn decode_in(&self, ctx: &Arc<SuperContext>) -> Result<SuperFunction> {
        if ctx.even_names() != self.even.as_slice()
            || ctx.odd_names() != self.odd.as_slice()
            || ctx.chart_odd() != self.chart_odd
        {
            return Err(Error::ContextMismatch);
        }
        let mut terms = Vec::new();
        for (k, v) in &self.terms {
            terms.push((parse_mask(k, self.odd.len())?, RationalFunction::try_from(v)?));
        }
        Ok(SuperFunction::from_exterior(ctx, Exterior::from_terms(terms)))
    }

    pub fn decode(&self) -> Result<SuperFunction> {
        self.decode_in(&self.context()?)
    }
}

impl Serialize for SuperFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SuperFunctionRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for SuperFunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = SuperFunctionRepr::deserialize(d)?;
        repr.decode().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::{lambda_sample, Parity, Sampler};

    #[test]
    fn grassmann_round_trip() {
        let g = lambda_sample(3, Parity::Even, 11);
        let s = serde_json::to_string(&g).unwrap();
        let back: GrassmannNumber = serde_json::from_str(&s).unwrap();
        assert_eq!(g, back);
        assert!(s.contains("\"1,2\""));
    }

    #[test]
    fn super_function_round_trip() {
        let ctx = SuperContext::new(["x", "y"], ["e1", "e2"])
            .unwrap()
            .adjoin_nilpotent(&["t1"])
            .unwrap();
        let mut s = Sampler::new(3);
        for _ in 0..20 {
            let f = s.super_function(&ctx, Parity::Odd, false);
            let json = serde_json::to_string(&f).unwrap();
            let back: SuperFunction = serde_json::from_str(&json).unwrap();
            assert_eq!(f, back);
        }
    }

    #[test]
    fn rejects_bad_keys() {
        let repr = GrassmannRepr {
            r: 2,
            terms: [("2,1".to_string(), "1/1".to_string())].into(),
        };
        assert!(GrassmannNumber::try_from(&repr).is_err());
    }
}
