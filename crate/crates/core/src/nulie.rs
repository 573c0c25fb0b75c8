//! Infinitesimal action of `𝔤𝔩(m|n)` on the ν-Grassmannian and its
//! ν-commutant `𝔥`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::atlas::{Atlas, Chart, Dims};
use crate::error::{Error, Result};
use crate::linalg::{self, QMat};
use crate::poly::{gcd, q_to_string, Poly, RationalFunction, Q};
use crate::report::{Report, Suite};
use crate::superalgebra::{Parity, SuperContext, SuperFunction};
use crate::supermatrix::{smat_mul, Entry, IndexPair, SuperMatrix};

/// Element of `𝔤𝔩(m|n)` in the elementary basis `E_uv`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlElement {
    pub m: usize,
    pub n: usize,
    #[serde(with = "linalg::qmat_serde")]
    pub coeffs: QMat,
}

impl GlElement {
    pub fn zero(m: usize, n: usize) -> Self {
        GlElement {
            m,
            n,
            coeffs: vec![vec![Q::zero(); m + n]; m + n],
        }
    }

    /// `E_uv`, zero-based.
    pub fn elementary(m: usize, n: usize, u: usize, v: usize) -> Self {
        let mut e = Self::zero(m, n);
        e.coeffs[u][v] = Q::one();
        e
    }

    pub fn size(&self) -> usize {
        self.m + self.n
    }

    pub fn entry_parity(&self, u: usize, v: usize) -> Parity {
        Parity::of_degree(((u >= self.m) != (v >= self.m)) as u32)
    }

    /// Elementary basis of one parity class, row-major.
    pub fn basis(m: usize, n: usize, p: Parity) -> Vec<(usize, usize)> {
        let probe = Self::zero(m, n);
        (0..m + n)
            .flat_map(|u| (0..m + n).map(move |v| (u, v)))
            .filter(|&(u, v)| probe.entry_parity(u, v) == p)
            .collect()
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, usize, &Q)> {
        self.coeffs
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().enumerate().map(move |(v, c)| (u, v, c)))
            .filter(|(_, _, c)| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.support().next().is_none()
    }

    /// `None` for mixed elements; zero counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut ps = self.support().map(|(u, v, _)| self.entry_parity(u, v));
        let first = ps.next().unwrap_or(Parity::Even);
        ps.all(|p| p == first).then_some(first)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (u, v, c) in other.support() {
            out.coeffs[u][v] += c;
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = self.clone();
        for row in out.coeffs.iter_mut() {
            for x in row.iter_mut() {
                *x *= c;
            }
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Self {
        GlElement {
            m: self.m,
            n: self.n,
            coeffs: linalg::matmul(&self.coeffs, &other.coeffs),
        }
    }

    /// Flattened coefficients over one parity class.
    pub fn coordinates(&self, p: Parity) -> Vec<Q> {
        Self::basis(self.m, self.n, p)
            .into_iter()
            .map(|(u, v)| self.coeffs[u][v].clone())
            .collect()
    }

    pub fn from_coordinates(m: usize, n: usize, p: Parity, c: &[Q]) -> Self {
        let mut out = Self::zero(m, n);
        for ((u, v), x) in Self::basis(m, n, p).into_iter().zip(c) {
            out.coeffs[u][v] = x.clone();
        }
        out
    }
}

impl fmt::Display for GlElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (u, v, c) in self.support() {
            let name = format!("E{}{}", u + 1, v + 1);
            let mag = c.abs();
            let body = if mag.is_one() { name } else { format!("{mag}*{name}") };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

/// `Y1·Y2 − (−1)^{|Y1||Y2|} Y2·Y1`.
pub fn superbracket(a: &GlElement, b: &GlElement) -> Result<GlElement> {
    let (pa, pb) = (a.parity().ok_or(Error::NotHomogeneous)?, b.parity().ok_or(Error::NotHomogeneous)?);
    let sign = if Parity::koszul(pa, pb) { Q::one() } else { -Q::one() };
    Ok(a.matmul(b).add(&b.matmul(a).scale(&sign)))
}

/// A derivation of one chart's coordinate ring, given by its values on
/// the coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartVectorField {
    pub chart: IndexPair,
    pub parity: Parity,
    pub components: Vec<SuperFunction>,
    ctx: Arc<SuperContext>,
}

impl ChartVectorField {
    pub fn new(chart: IndexPair, parity: Parity, ctx: &Arc<SuperContext>, components: Vec<SuperFunction>) -> Result<Self> {
        let alpha = ctx.even_names().len();
        if components.len() != alpha + ctx.odd_names().len() {
            return Err(Error::DimensionMismatch("one component per coordinate".into()));
        }
        for (i, c) in components.iter().enumerate() {
            let coord = if i < alpha { Parity::Even } else { Parity::Odd };
            if !c.is_zero() && c.parity() != Some(parity.add(coord)) {
                return Err(Error::Parity(format!("component {} = {c}", i + 1)));
            }
        }
        Ok(ChartVectorField {
            chart,
            parity,
            components,
            ctx: ctx.clone(),
        })
    }

    pub fn zero(chart: IndexPair, parity: Parity, ctx: &Arc<SuperContext>) -> Self {
        let n = ctx.even_names().len() + ctx.odd_names().len();
        ChartVectorField {
            chart,
            parity,
            components: vec![SuperFunction::zero(ctx); n],
            ctx: ctx.clone(),
        }
    }

    pub fn context(&self) -> &Arc<SuperContext> {
        &self.ctx
    }

    fn coordinate_names(&self) -> impl Iterator<Item = &String> {
        self.ctx.even_names().iter().chain(self.ctx.odd_names())
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(SuperFunction::is_zero)
    }

    /// `Σ comp_i ∂^L_{y_i} h`, in the context of `h`.
    pub fn apply(&self, h: &SuperFunction) -> Result<SuperFunction> {
        let ctx = h.context();
        let mut acc = SuperFunction::zero(ctx);
        for (name, comp) in self.coordinate_names().zip(&self.components) {
            if comp.is_zero() {
                continue;
            }
            let d = h.partial(name)?;
            acc = acc.checked_add(&comp.rehome(ctx)?.checked_mul(&d)?)?;
        }
        Ok(acc)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(ChartVectorField { components, ..self.clone() })
    }

    pub fn scale(&self, c: &Q) -> Self {
        ChartVectorField {
            components: self.components.iter().map(|x| x.scale_q(c)).collect(),
            ..self.clone()
        }
    }
}

impl fmt::Display for ChartVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coordinate_names()
            .zip(&self.components)
            .filter(|(_, c)| !c.is_zero())
            .map(|(n, c)| format!("({c})∂_{n}"))
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// `[X, Y](y) = X(Y(y)) − (−1)^{|X||Y|} Y(X(y))`.
pub fn field_bracket(x: &ChartVectorField, y: &ChartVectorField) -> Result<ChartVectorField> {
    let sign = if Parity::koszul(x.parity, y.parity) { Q::one() } else { -Q::one() };
    let components = x
        .components
        .iter()
        .zip(&y.components)
        .map(|(xc, yc)| x.apply(yc)?.checked_add(&y.apply(xc)?.scale_q(&sign)))
        .collect::<Result<Vec<_>>>()?;
    ChartVectorField::new(x.chart.clone(), x.parity.add(y.parity), &x.ctx, components)
}

/// Fundamental field of `E_uv` on a chart: the first-order part of the
/// action of `Id + t·E_uv` with `t = τ1τ2` for even `E`, and `t = ±τ1` for
/// odd `E` (sign `(−1)^{|u|}` from the row), renormalised into the same chart.
pub fn fundamental_field(atlas: &Atlas, u: usize, v: usize, chart: &Chart) -> Result<ChartVectorField> {
    let Dims { m, n, .. } = atlas.dims;
    if u >= m + n || v >= m + n {
        return Err(Error::IndexOutOfRange(format!("E{}{}", u + 1, v + 1)));
    }
    let parity = GlElement::zero(m, n).entry_parity(u, v);
    let base = atlas.context();
    let aux: &[&str] = if parity.is_odd() { &["τ1"] } else { &["τ1", "τ2"] };
    let ext = base.adjoin_nilpotent(aux)?;
    let t = aux
        .iter()
        .map(|a| SuperFunction::odd_gen(&ext, a))
        .try_fold(SuperFunction::one(&ext), |acc, g| acc.checked_mul(&g?))?;
    let gens = atlas
        .generators()
        .iter()
        .map(|g| g.rehome(&ext))
        .collect::<Result<Vec<_>>>()?;
    let one = SuperFunction::one(&ext);
    let label = chart.realize(&gens, &one)?;
    let mut p = SuperMatrix::identity([m, n], &one);
    let t = if parity.is_odd() && u >= m { t.scale_q(&-Q::one()) } else { t };
    let cur = p.plain(u, v)?.clone();
    p.set(u, v, Entry::Plain(cur.checked_add(&t)?));
    let moved = smat_mul(&label, &p)?;
    let (values, _) = atlas.normalize_into(chart, &moved)?;
    let components = values
        .iter()
        .map(|val| {
            let mut c = val.coefficient_of("τ1")?;
            if !parity.is_odd() {
                c = c.coefficient_of("τ2")?;
            }
            c.rehome(base)
        })
        .collect::<Result<Vec<_>>>()?;
    ChartVectorField::new(chart.index.clone(), parity, base, components)
}

/// `ρ(Y)` on a chart for homogeneous `Y`, by linearity.
pub fn rho(atlas: &Atlas, y: &GlElement, chart: &Chart) -> Result<ChartVectorField> {
    let p = y.parity().ok_or(Error::NotHomogeneous)?;
    let mut acc = ChartVectorField::zero(chart.index.clone(), p, atlas.context());
    for (u, v, c) in y.support() {
        acc = acc.add(&fundamental_field(atlas, u, v, chart)?.scale(c))?;
    }
    Ok(acc)
}

/// `X̂(ν(f·e_S)) − ν(X̂(f·e_S))` for every odd monomial `e_S`, with `f` a
/// generic even function of the even coordinates carried by symbols `f`
/// and `f_<x>` for its first partials.
pub fn nu_defect(field: &ChartVectorField) -> Result<Vec<SuperFunction>> {
    let ctx = field.context();
    let beta = ctx.chart_odd();
    if beta == 0 {
        return Err(Error::NoOddGenerators);
    }
    let even = ctx.even_names().to_vec();
    let mut symbols = vec!["f".to_string()];
    symbols.extend(even.iter().map(|x| format!("f_{x}")));
    let ext = ctx.adjoin_even(&symbols)?;
    let f = SuperFunction::even_var(&ext, "f")?;
    let apply = |h: &SuperFunction| -> Result<SuperFunction> {
        let mut out = field.apply(h)?;
        let df = h.partial("f")?;
        for (a, x) in even.iter().enumerate() {
            let fx = SuperFunction::even_var(&ext, &format!("f_{x}"))?;
            let term = field.components[a].rehome(&ext)?.checked_mul(&fx)?.checked_mul(&df)?;
            out = out.checked_add(&term)?;
        }
        Ok(out)
    };
    (0..1u32 << beta)
        .map(|mask| {
            let mono = crate::superalgebra::Exterior::monomial(mask, RationalFunction::one());
            let g = f.checked_mul(&SuperFunction::from_exterior(&ext, mono))?;
            apply(&g.nu()?)?.checked_add(&apply(&g)?.nu()?.scale_q(&-Q::one()))
        })
        .collect()
}

fn lcm(a: &Poly, b: &Poly) -> Poly {
    let g = gcd(a, b);
    a.mul(b).div_exact(&g).expect("gcd divides the product").monic()
}

/// Homogeneous linear equations on the coefficients of `Σ c_i F_i` forcing
/// the given functions to vanish identically.
fn vanishing_equations(columns: &[Vec<SuperFunction>]) -> QMat {
    let n = columns.len();
    let mut rows: QMat = Vec::new();
    let len = columns.first().map_or(0, Vec::len);
    for s in 0..len {
        let mut masks: Vec<u32> = columns.iter().flat_map(|col| col[s].terms().map(|(m, _)| m)).collect();
        masks.sort_unstable();
        masks.dedup();
        for mask in masks {
            let coeffs: Vec<RationalFunction> = columns.iter().map(|col| col[s].exterior().coeff(mask)).collect();
            let l = coeffs
                .iter()
                .filter(|c| !c.is_zero())
                .fold(Poly::one(), |acc, c| lcm(&acc, c.denom()));
            let mut by_mono: BTreeMap<String, Vec<Q>> = BTreeMap::new();
            for (i, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let scale = l.div_exact(c.denom()).expect("lcm is a multiple");
                for (mono, q) in c.numer().mul(&scale).terms() {
                    by_mono.entry(mono.to_key()).or_insert_with(|| vec![Q::zero(); n])[i] += q;
                }
            }
            rows.extend(by_mono.into_values());
        }
    }
    rows
}

fn field_vanishes(list: &[SuperFunction]) -> bool {
    list.iter().all(SuperFunction::is_zero)
}

/// `𝔥 = {Y : ρ(Y) ν-commutes on every chart}`, one basis per parity.
#[derive(Clone, Debug, PartialEq)]
pub struct NuCommutant {
    pub dims: Dims,
    pub even: Vec<GlElement>,
    pub odd: Vec<GlElement>,
}

impl NuCommutant {
    pub fn basis(&self) -> impl Iterator<Item = &GlElement> {
        self.even.iter().chain(&self.odd)
    }

    /// Whether `y` (homogeneous) lies in the span.
    pub fn contains(&self, y: &GlElement) -> bool {
        let Some(p) = y.parity() else {
            return false;
        };
        let span = if p.is_odd() { &self.odd } else { &self.even };
        let mut rows: QMat = span.iter().map(|b| b.coordinates(p)).collect();
        let cols = GlElement::basis(self.dims.m, self.dims.n, p).len();
        let r0 = linalg::rank(&rows, cols);
        rows.push(y.coordinates(p));
        linalg::rank(&rows, cols) == r0
    }

    /// Coordinates of `y` in the concatenated basis (even then odd).
    pub fn express(&self, y: &GlElement) -> Option<Vec<Q>> {
        let all: Vec<&GlElement> = self.basis().collect();
        let size = self.dims.m + self.dims.n;
        let a: QMat = (0..size * size)
            .map(|idx| all.iter().map(|b| b.coeffs[idx / size][idx % size].clone()).collect())
            .collect();
        let b: Vec<Q> = (0..size * size).map(|idx| y.coeffs[idx / size][idx % size].clone()).collect();
        match linalg::solve(&a, &b, all.len()) {
            linalg::Solution::Unique(x) => Some(x),
            _ if all.is_empty() && y.is_zero() => Some(vec![]),
            _ => None,
        }
    }
}

pub fn compute_h(dims: Dims) -> Result<NuCommutant> {
    let atlas = Atlas::new(dims)?;
    let mut out = NuCommutant {
        dims,
        even: Vec::new(),
        odd: Vec::new(),
    };
    for p in [Parity::Even, Parity::Odd] {
        let basis = GlElement::basis(dims.m, dims.n, p);
        let mut eqs: QMat = Vec::new();
        for chart in atlas.charts() {
            let defects = basis
                .iter()
                .map(|&(u, v)| nu_defect(&fundamental_field(&atlas, u, v, chart)?))
                .collect::<Result<Vec<_>>>()?;
            eqs.extend(vanishing_equations(&defects));
        }
        let sol = linalg::nullspace(&eqs, basis.len());
        let elems = sol
            .iter()
            .map(|c| GlElement::from_coordinates(dims.m, dims.n, p, c))
            .collect();
        if p.is_odd() {
            out.odd = elems;
        } else {
            out.even = elems;
        }
    }
    Ok(out)
}

/// Re-checks zero defect of every basis element on every chart, directly.
pub fn verify_defects(h: &NuCommutant) -> Result<Report> {
    let atlas = Atlas::new(h.dims)?;
    let mut rep = Report::new("nulie.defect", h.dims.to_string());
    for y in h.basis() {
        for chart in atlas.charts() {
            let d = nu_defect(&rho(&atlas, y, chart)?)?;
            rep.record(field_vanishes(&d), || {
                json!({"element": y.to_string(), "chart": chart.index.to_string(),
                       "defects": d.iter().map(ToString::to_string).collect::<Vec<_>>()})
            });
        }
    }
    Ok(rep)
}

/// Brackets of basis elements stay in `𝔥`.
pub fn verify_closure(h: &NuCommutant) -> Result<Report> {
    let mut rep = Report::new("nulie.closure", h.dims.to_string());
    let all: Vec<&GlElement> = h.basis().collect();
    for a in &all {
        for b in &all {
            let c = superbracket(a, b)?;
            rep.record(h.contains(&c), || json!({"left": a.to_string(), "right": b.to_string(), "bracket": c.to_string()}));
        }
    }
    Ok(rep)
}

/// Super Jacobi on all triples of basis elements.
pub fn verify_jacobi(h: &NuCommutant) -> Result<Report> {
    let mut rep = Report::new("nulie.jacobi", h.dims.to_string());
    let all: Vec<&GlElement> = h.basis().collect();
    let sign = |x: &GlElement, y: &GlElement| -> Q {
        if Parity::koszul(x.parity().unwrap_or(Parity::Even), y.parity().unwrap_or(Parity::Even)) {
            -Q::one()
        } else {
            Q::one()
        }
    };
    for a in &all {
        for b in &all {
            for c in &all {
                let t1 = superbracket(a, &superbracket(b, c)?)?.scale(&sign(a, c));
                let t2 = superbracket(b, &superbracket(c, a)?)?.scale(&sign(b, a));
                let t3 = superbracket(c, &superbracket(a, b)?)?.scale(&sign(c, b));
                let total = t1.add(&t2).add(&t3);
                rep.record(total.is_zero(), || {
                    json!({"a": a.to_string(), "b": b.to_string(), "c": c.to_string(), "sum": total.to_string()})
                });
            }
        }
    }
    Ok(rep)
}

fn field_ratio(lhs: &ChartVectorField, rhs: &ChartVectorField) -> Option<Option<i8>> {
    if lhs.is_zero() && rhs.is_zero() {
        return Some(None);
    }
    for s in [1i8, -1] {
        let scaled = rhs.scale(&Q::from_integer(s.into()));
        if scaled.components == lhs.components {
            return Some(Some(s));
        }
    }
    None
}

/// `[ρY1, ρY2] = s·ρ[Y1, Y2]` over all elementary pairs, one report per
/// chart. The global sign `s` is fixed by the first proportional nonzero
/// pair, standard charts first.
pub fn verify_rho_morphism(dims: Dims) -> Result<(Suite, Option<i8>)> {
    let atlas = Atlas::new(dims)?;
    let size = dims.m + dims.n;
    let mut suite = Suite::new("nulie.rho_morphism");
    let mut sign: Option<i8> = None;
    let mut order: Vec<&Chart> = atlas.charts().iter().collect();
    order.sort_by_key(|c| !c.is_standard());
    for chart in order {
        let fields = (0..size * size)
            .map(|i| fundamental_field(&atlas, i / size, i % size, chart))
            .collect::<Result<Vec<_>>>()?;
        let mut rep = Report::new("nulie.rho_morphism", format!("{dims} {}", chart.index));
        for i in 0..size * size {
            for j in 0..size * size {
                let e1 = GlElement::elementary(dims.m, dims.n, i / size, i % size);
                let e2 = GlElement::elementary(dims.m, dims.n, j / size, j % size);
                let br = superbracket(&e1, &e2)?;
                let lhs = field_bracket(&fields[i], &fields[j])?;
                let mut rhs = ChartVectorField::zero(chart.index.clone(), lhs.parity, atlas.context());
                for (u, v, c) in br.support() {
                    rhs = rhs.add(&fields[u * size + v].scale(c))?;
                }
                match field_ratio(&lhs, &rhs) {
                    Some(None) => rep.pass(),
                    Some(Some(s)) if sign.is_none() || sign == Some(s) => {
                        sign = Some(s);
                        rep.pass()
                    }
                    _ => rep.fail(json!({"left": e1.to_string(), "right": e2.to_string(),
                                         "field_bracket": lhs.to_string(), "rho_of_bracket": rhs.to_string()})),
                }
            }
        }
        suite.reports.push(rep);
    }
    Ok((suite, sign))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub left: usize,
    pub right: usize,
    pub bracket: String,
    /// Coordinates in the concatenated basis, as `"p/q"`.
    pub coordinates: Option<Vec<String>>,
}

/// Summary of the ν-commutant computation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NuLieReport {
    pub dims: Dims,
    pub dim_even: usize,
    pub dim_odd: usize,
    pub basis: Vec<GlElement>,
    pub basis_display: Vec<String>,
    pub bracket_table: Vec<BracketEntry>,
    pub sign_s: Option<i8>,
    pub defect_residual: String,
    pub checks: Vec<Report>,
}

impl NuLieReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Report::ok)
    }
}

pub fn nulie_report(dims: Dims) -> Result<NuLieReport> {
    let h = compute_h(dims)?;
    let defects = verify_defects(&h)?;
    let closure = verify_closure(&h)?;
    let jacobi = verify_jacobi(&h)?;
    let (rho_suite, sign) = verify_rho_morphism(dims)?;
    let all: Vec<GlElement> = h.basis().cloned().collect();
    let mut table = Vec::new();
    for (i, a) in all.iter().enumerate() {
        for (j, b) in all.iter().enumerate() {
            let c = superbracket(a, b)?;
            table.push(BracketEntry {
                left: i,
                right: j,
                bracket: c.to_string(),
                coordinates: h.express(&c).map(|v| v.iter().map(q_to_string).collect()),
            });
        }
    }
    Ok(NuLieReport {
        dims,
        dim_even: h.even.len(),
        dim_odd: h.odd.len(),
        basis_display: all.iter().map(ToString::to_string).collect(),
        basis: all,
        bracket_table: table,
        sign_s: sign,
        defect_residual: if defects.ok() { "0".into() } else { "nonzero".into() },
        checks: [defects, closure, jacobi].into_iter().chain(rho_suite.reports).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q;

    fn small() -> Atlas {
        Atlas::new(Dims::new(0, 1, 1, 2).unwrap()).unwrap()
    }

    #[test]
    fn elementary_fields() {
        let a = small();
        let c = &a.charts()[0];
        let ctx = a.context();
        let x = SuperFunction::even_var(ctx, "x").unwrap();
        let e = SuperFunction::odd_gen(ctx, "e").unwrap();
        let f11 = fundamental_field(&a, 0, 0, c).unwrap();
        assert_eq!(f11.components, vec![SuperFunction::zero(ctx), e.clone()]);
        let f22 = fundamental_field(&a, 1, 1, c).unwrap();
        assert_eq!(f22.components, vec![-&x, -&e]);
    }

    #[test]
    fn regression_pair() {
        let a = small();
        let c = &a.charts()[0];
        let ctx = a.context();
        let x = SuperFunction::even_var(ctx, "x").unwrap();
        let e = SuperFunction::odd_gen(ctx, "e").unwrap();
        let zero = SuperFunction::zero(ctx);
        let xdx = ChartVectorField::new(c.index.clone(), Parity::Even, ctx, vec![x, zero.clone()]).unwrap();
        assert!(field_vanishes(&nu_defect(&xdx).unwrap()));
        let ede = ChartVectorField::new(c.index.clone(), Parity::Even, ctx, vec![zero, e]).unwrap();
        let d = nu_defect(&ede).unwrap();
        assert_eq!(d[0].to_string(), "f*e");
        assert!(!field_vanishes(&d));
    }

    #[test]
    fn brackets() {
        let e = |u, v| GlElement::elementary(1, 2, u, v);
        assert!(superbracket(&e(0, 0), &e(0, 0)).unwrap().is_zero());
        assert_eq!(superbracket(&e(1, 2), &e(2, 0)).unwrap().to_string(), "E21");
        assert_eq!(superbracket(&e(1, 2), &e(2, 1)).unwrap(), e(1, 1).add(&e(2, 2).scale(&q(-1))));
        assert_eq!(superbracket(&e(0, 1), &e(1, 0)).unwrap(), e(0, 0).add(&e(1, 1)));
    }

    #[test]
    fn commutant_of_small_atlas() {
        let h = compute_h(small().dims).unwrap();
        assert!(!h.even.is_empty());
        assert!(verify_defects(&h).unwrap().ok());
        assert!(verify_closure(&h).unwrap().ok());
        assert!(verify_jacobi(&h).unwrap().ok());
        assert!(h.contains(&GlElement::elementary(1, 2, 0, 0).add(&GlElement::elementary(1, 2, 1, 1)).add(&GlElement::elementary(1, 2, 2, 2))));
    }

    #[test]
    fn rho_sign_on_standard_charts() {
        let (suite, s) = verify_rho_morphism(small().dims).unwrap();
        assert_eq!(s, Some(1));
        for r in &suite.reports {
            let standard = !r.instance.contains("{1}|∅");
            assert_eq!(r.ok(), standard, "{}", r.line());
        }
    }
}
