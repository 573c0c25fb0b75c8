//! Charts of the ν-Grassmannian `νG_{k|l}(m|n)`, their labels, transition
//! maps (symbolic and at `Λ_r`-points) and the cocycle checks.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::linalg::{self, Solution};
use crate::poly::Q;
use crate::report::{Report, Suite};
use crate::superalgebra::{GrassmannNumber, Parity, Sampler, SuperContext, SuperFunction};
use crate::supermatrix::{pretty_grid, smat_inv, smat_mul, Entry, IndexPair, SuperMatrix, SuperScalar};

/// `k|l`-planes in `m|n`-space.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Dims {
    pub k: usize,
    pub l: usize,
    pub m: usize,
    pub n: usize,
}

impl Dims {
    pub fn new(k: usize, l: usize, m: usize, n: usize) -> Result<Self> {
        if k > m || l > n {
            return Err(Error::InvalidDimensions(format!(
                "need k <= m and l <= n, got {k}|{l} in {m}|{n}"
            )));
        }
        Ok(Dims { k, l, m, n })
    }

    /// Even coordinate count `k(m−k) + l(n−l)`.
    pub fn alpha(&self) -> usize {
        self.k * (self.m - self.k) + self.l * (self.n - self.l)
    }

    /// Odd coordinate count `l(m−k) + k(n−l)`.
    pub fn beta(&self) -> usize {
        self.l * (self.m - self.k) + self.k * (self.n - self.l)
    }

    pub fn rows(&self) -> usize {
        self.k + self.l
    }
}

impl fmt::Display for Dims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "νG_{{{}|{}}}({}|{})", self.k, self.l, self.m, self.n)
    }
}

/// A label position.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Cell {
    Zero,
    One,
    Nu,
    /// Coordinate by index: even ones first, then odd.
    Coord(usize),
    /// `ν` of a coordinate placed in a block of the other parity.
    NuCoord(usize),
}

fn coordinate_names(alpha: usize, beta: usize) -> (Vec<String>, Vec<String>) {
    let names = |base: &str, count: usize| -> Vec<String> {
        if count == 1 {
            vec![base.to_string()]
        } else {
            (1..=count).map(|i| format!("{base}{i}")).collect()
        }
    };
    (names("x", alpha), names("e", beta))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Chart {
    pub index: IndexPair,
    pub dims: Dims,
    cells: Vec<Vec<Cell>>,
    names: Vec<String>,
}

impl Chart {
    fn build(dims: Dims, index: IndexPair) -> Result<Self> {
        let Dims { k, l, m, n } = dims;
        if index.p() + index.q() != k + l
            || index.i.iter().any(|&i| i > m)
            || index.r.iter().any(|&r| r > n)
        {
            return Err(Error::IndexOutOfRange(format!("{index} is not a chart of {dims}")));
        }
        let alpha = dims.alpha();
        // coordinate ordering: (m−k) groups of k x's then l e's, then
        // (n−l) groups of k e's then l x's
        let mut order = Vec::with_capacity(alpha + dims.beta());
        let (mut xi, mut ei) = (0, 0);
        for _ in 0..m - k {
            order.extend((0..k).map(|_| {
                xi += 1;
                xi - 1
            }));
            order.extend((0..l).map(|_| {
                ei += 1;
                alpha + ei - 1
            }));
        }
        for _ in 0..n - l {
            order.extend((0..k).map(|_| {
                ei += 1;
                alpha + ei - 1
            }));
            order.extend((0..l).map(|_| {
                xi += 1;
                xi - 1
            }));
        }

        let rows = k + l;
        let p = index.p();
        let mut cells = vec![vec![Cell::Zero; m + n]; rows];
        let minor: Vec<usize> = index
            .i
            .iter()
            .map(|i| i - 1)
            .chain(index.r.iter().map(|r| m + r - 1))
            .collect();
        for (d, &col) in minor.iter().enumerate() {
            cells[d][col] = if (d < k) == (d < p) { Cell::One } else { Cell::Nu };
        }
        let mut names = order.into_iter();
        for col in (0..m + n).filter(|c| !minor.contains(c)) {
            for (row, cell) in cells.iter_mut().enumerate() {
                let c = names.next().expect("coordinate count matches free positions");
                let pos_odd = (row >= k) != (col >= m);
                let name_odd = c >= alpha;
                cell[col] = if pos_odd == name_odd { Cell::Coord(c) } else { Cell::NuCoord(c) };
            }
        }
        let (x, e) = coordinate_names(alpha, dims.beta());
        Ok(Chart {
            index,
            dims,
            cells,
            names: x.into_iter().chain(e).collect(),
        })
    }

    pub fn alpha(&self) -> usize {
        self.dims.alpha()
    }

    pub fn beta(&self) -> usize {
        self.dims.beta()
    }

    pub fn is_standard(&self) -> bool {
        self.index.is_standard(self.dims.k)
    }

    pub fn cells(&self) -> &[Vec<Cell>] {
        &self.cells
    }

    pub fn coordinate_names(&self) -> &[String] {
        &self.names
    }

    pub fn coordinate_parity(&self, c: usize) -> Parity {
        if c < self.alpha() {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    fn cell_string(&self, cell: Cell) -> String {
        match cell {
            Cell::Zero => "0".into(),
            Cell::One => "1".into(),
            Cell::Nu => "1ν".into(),
            Cell::Coord(c) => self.names[c].clone(),
            Cell::NuCoord(c) => format!("ν({})", self.names[c]),
        }
    }

    fn cell_strings(&self) -> Vec<Vec<String>> {
        self.cells
            .iter()
            .map(|r| r.iter().map(|&c| self.cell_string(c)).collect())
            .collect()
    }

    /// The label as rows of tokens with `|` at the divider.
    pub fn label_tokens(&self) -> Vec<Vec<String>> {
        let m = self.dims.m;
        self.cell_strings()
            .into_iter()
            .map(|mut r| {
                r.insert(m, "|".into());
                r
            })
            .collect()
    }

    /// One-line label such as `[e | 1, x]`.
    pub fn label_inline(&self) -> String {
        let m = self.dims.m;
        let rows: Vec<String> = self
            .cell_strings()
            .iter()
            .map(|r| format!("{} | {}", r[..m].join(", "), r[m..].join(", ")))
            .collect();
        format!("[{}]", rows.join("; "))
    }

    pub fn label_pretty(&self) -> String {
        pretty_grid(
            &self.cell_strings(),
            [self.dims.k, self.dims.l],
            [self.dims.m, self.dims.n],
        )
    }

    /// Column positions of the chart's own minor.
    fn minor_columns(&self) -> Vec<usize> {
        let m = self.dims.m;
        self.index
            .i
            .iter()
            .map(|i| i - 1)
            .chain(self.index.r.iter().map(|r| m + r - 1))
            .collect()
    }

    /// The label with coordinate values substituted.
    pub fn realize<S: SuperScalar>(&self, values: &[S], proto: &S) -> Result<SuperMatrix<S>> {
        if values.len() != self.names.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinate values for {} coordinates",
                values.len(),
                self.names.len()
            )));
        }
        let entries = self
            .cells
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&c| {
                        Ok(match c {
                            Cell::Zero => Entry::Plain(proto.zero_like()),
                            Cell::One => Entry::Plain(proto.one_like()),
                            Cell::Nu => Entry::Nu,
                            Cell::Coord(i) => Entry::Plain(values[i].clone()),
                            Cell::NuCoord(i) => Entry::Plain(values[i].nu()?),
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SuperMatrix::from_entries(
            [self.dims.k, self.dims.l],
            [self.dims.m, self.dims.n],
            entries,
            proto,
        )
    }

    /// Reads coordinates off the columns outside the minor; positions
    /// holding `ν(c)` give `c = ν(entry)`.
    pub fn read_off<S: SuperScalar>(&self, d: &SuperMatrix<S>) -> Result<Vec<S>> {
        let minor = self.minor_columns();
        let free: Vec<usize> = (0..self.dims.m + self.dims.n)
            .filter(|c| !minor.contains(c))
            .collect();
        if d.cols() != free.len() || d.rows() != self.dims.rows() {
            return Err(Error::DimensionMismatch("remainder shape".into()));
        }
        let mut out: Vec<Option<S>> = vec![None; self.names.len()];
        for (j, &col) in free.iter().enumerate() {
            for i in 0..d.rows() {
                let v = d.plain(i, j)?;
                match self.cells[i][col] {
                    Cell::Coord(c) => out[c] = Some(v.clone()),
                    Cell::NuCoord(c) => out[c] = Some(v.nu()?),
                    _ => unreachable!("free columns hold coordinates only"),
                }
            }
        }
        Ok(out.into_iter().map(|v| v.expect("every coordinate placed")).collect())
    }
}

/// A chart-to-chart coordinate change `g*`: each target coordinate as a
/// function of the source coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitionMap {
    pub from: IndexPair,
    pub to: IndexPair,
    pub images: Vec<SuperFunction>,
    /// `(M or M′)⁻¹` of the source label toward the target.
    pub inverted_minor: SuperMatrix<SuperFunction>,
    names: Vec<String>,
}

impl TransitionMap {
    pub fn image(&self, name: &str) -> Option<&SuperFunction> {
        self.names.iter().position(|n| n == name).map(|i| &self.images[i])
    }

    /// Pulls back a function of the target coordinates.
    pub fn apply(&self, f: &SuperFunction) -> Result<SuperFunction> {
        let ctx = f.context();
        let alpha = ctx.even_names().len();
        let even = |v: &str| {
            ctx.even_names()
                .iter()
                .position(|n| n == v)
                .map(|i| self.images[i].clone())
        };
        f.evaluate(&even, &self.images[alpha..], &SuperFunction::one(self.images[0].context()))
    }

    pub fn lines(&self) -> Vec<String> {
        self.names
            .iter()
            .zip(&self.images)
            .map(|(n, v)| format!("{n} ↦ {v}"))
            .collect()
    }
}

impl fmt::Display for TransitionMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.lines().join(", "))
    }
}

/// A `Λ_r`-valued point in one chart.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrassPoint {
    pub chart: IndexPair,
    pub r: usize,
    pub even: Vec<GrassmannNumber>,
    pub odd: Vec<GrassmannNumber>,
}

impl GrassPoint {
    pub fn values(&self) -> Vec<GrassmannNumber> {
        self.even.iter().chain(&self.odd).cloned().collect()
    }
}

impl fmt::Display for GrassPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, e) = coordinate_names(self.even.len(), self.odd.len());
        let parts: Vec<String> = x
            .iter()
            .zip(&self.even)
            .chain(e.iter().zip(&self.odd))
            .map(|(n, v)| format!("{n} ↦ {v}"))
            .collect();
        write!(f, "{} ({})", self.chart, parts.join(", "))
    }
}

#[derive(Clone, Debug)]
pub struct Atlas {
    pub dims: Dims,
    charts: Vec<Chart>,
    ctx: Arc<SuperContext>,
}

impl Atlas {
    /// All `p|q`-indices with `p + q = k + l`, in lexicographic order.
    pub fn new(dims: Dims) -> Result<Self> {
        let Dims { k, l, m, n } = dims;
        let total = k + l;
        let mut idx = Vec::new();
        for p in total.saturating_sub(n)..=total.min(m) {
            for i in subsets(m, p) {
                for r in subsets(n, total - p) {
                    idx.push(IndexPair { i: i.clone(), r });
                }
            }
        }
        idx.sort();
        let charts = idx
            .into_iter()
            .map(|ix| Chart::build(dims, ix))
            .collect::<Result<Vec<_>>>()?;
        let (x, e) = coordinate_names(dims.alpha(), dims.beta());
        let ctx = SuperContext::new(x, e)?;
        Ok(Atlas { dims, charts, ctx })
    }

    pub fn charts(&self) -> &[Chart] {
        &self.charts
    }

    pub fn context(&self) -> &Arc<SuperContext> {
        &self.ctx
    }

    pub fn chart(&self, index: &IndexPair) -> Result<&Chart> {
        self.charts
            .iter()
            .find(|c| &c.index == index)
            .ok_or_else(|| Error::IndexOutOfRange(format!("{index} is not a chart of {}", self.dims)))
    }

    /// Coordinate generators of the shared chart context.
    pub fn generators(&self) -> Vec<SuperFunction> {
        let alpha = self.dims.alpha();
        let mut out: Vec<SuperFunction> = self
            .ctx
            .even_names()
            .iter()
            .map(|n| SuperFunction::even_var(&self.ctx, n).expect("declared"))
            .collect();
        out.extend((0..self.dims.beta()).map(|i| SuperFunction::odd_at(&self.ctx, i)));
        debug_assert_eq!(out.len(), alpha + self.dims.beta());
        out
    }

    /// Symbolic label `A_{I|R}` over the chart's coordinates.
    pub fn label(&self, chart: &Chart) -> Result<SuperMatrix<SuperFunction>> {
        chart.realize(&self.generators(), &SuperFunction::one(&self.ctx))
    }

    /// Whether a transition formula exists. Non-standard to standard is
    /// never covered; non-standard to non-standard only when `M′` clears
    /// every `1ν` of the source label.
    pub fn covered(&self, from: &IndexPair, to: &IndexPair) -> bool {
        let k = self.dims.k;
        if from.is_standard(k) {
            return true;
        }
        if to.is_standard(k) {
            return false;
        }
        let Ok(src) = self.chart(from) else {
            return false;
        };
        let proto = GrassmannNumber::zero(1);
        src.realize(&vec![proto.clone(); src.names.len()], &proto)
            .and_then(|a| a.minor_mprime(to, k))
            .is_ok()
    }

    /// Whether the charts overlap generically: some formula moves a random
    /// point between them in one direction or the other.
    pub fn linked(&self, a: &IndexPair, b: &IndexPair) -> bool {
        if a == b {
            return true;
        }
        let mut s = Sampler::new(0x6c69_6e6b);
        (0..4).any(|_| {
            let x = self.sample_point(a, 1, &mut s);
            let y = self.sample_point(b, 1, &mut s);
            self.transport(&x, b).is_ok() || self.transport(&y, a).is_ok()
        })
    }

    /// `D_{J|S}(Z⁻¹ · mat)` read off in the target chart, with `Z = M` for
    /// a standard target and `M′` otherwise. Also returns `Z⁻¹`.
    pub fn normalize_into<S: SuperScalar>(
        &self,
        dst: &Chart,
        mat: &SuperMatrix<S>,
    ) -> Result<(Vec<S>, SuperMatrix<S>)> {
        let z = if dst.is_standard() {
            mat.minor_m(&dst.index)?
        } else {
            mat.minor_mprime(&dst.index, self.dims.k)?
        };
        let zinv = smat_inv(&z)?;
        let full = smat_mul(&zinv, mat)?;
        let d = full.remainder_d(&dst.index)?;
        Ok((dst.read_off(&d)?, zinv))
    }

    pub fn transition_symbolic(&self, from: &IndexPair, to: &IndexPair) -> Result<TransitionMap> {
        let src = self.chart(from)?;
        let dst = self.chart(to)?;
        if !self.covered(from, to) {
            return Err(Error::UncoveredCase {
                from: from.clone(),
                to: to.clone(),
            });
        }
        let label = self.label(src)?;
        let (images, inverted_minor) = self.normalize_into(dst, &label).map_err(|e| match e {
            Error::NotInvertible => Error::GenericallySingular {
                from: from.clone(),
                to: to.clone(),
            },
            e => e,
        })?;
        for (c, v) in images.iter().enumerate() {
            if !v.is_of_parity(dst.coordinate_parity(c)) {
                return Err(Error::Parity(format!("image of {} is {v}", dst.names[c])));
            }
        }
        Ok(TransitionMap {
            from: from.clone(),
            to: to.clone(),
            images,
            inverted_minor,
            names: dst.names.clone(),
        })
    }

    /// Builds a point, checking coordinate parities.
    pub fn point(&self, chart: &IndexPair, r: usize, values: Vec<GrassmannNumber>) -> Result<GrassPoint> {
        let alpha = self.dims.alpha();
        if values.len() != alpha + self.dims.beta() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for {} coordinates",
                values.len(),
                alpha + self.dims.beta()
            )));
        }
        for (c, v) in values.iter().enumerate() {
            let p = if c < alpha { Parity::Even } else { Parity::Odd };
            if v.r() != r {
                return Err(Error::ContextMismatch);
            }
            if !v.is_of_parity(p) {
                return Err(Error::Parity(format!("coordinate {} = {v} is not {p:?}", c + 1)));
            }
        }
        let mut even = values;
        let odd = even.split_off(alpha);
        Ok(GrassPoint {
            chart: chart.clone(),
            r,
            even,
            odd,
        })
    }

    pub fn sample_point(&self, chart: &IndexPair, r: usize, s: &mut Sampler) -> GrassPoint {
        let mut values: Vec<GrassmannNumber> = (0..self.dims.alpha())
            .map(|_| s.grassmann(r, Parity::Even, false))
            .collect();
        values.extend((0..self.dims.beta()).map(|_| s.grassmann(r, Parity::Odd, false)));
        self.point(chart, r, values).expect("sampled values are homogeneous")
    }

    /// `[X]_{I|R}` over `Λ_r`.
    pub fn point_matrix(&self, x: &GrassPoint) -> Result<SuperMatrix<GrassmannNumber>> {
        self.chart(&x.chart)?
            .realize(&x.values(), &GrassmannNumber::zero(x.r))
    }

    /// The transition formula evaluated at a point.
    pub fn point_transition(&self, x: &GrassPoint, to: &IndexPair) -> Result<GrassPoint> {
        if !self.covered(&x.chart, to) {
            return Err(Error::UncoveredCase {
                from: x.chart.clone(),
                to: to.clone(),
            });
        }
        let dst = self.chart(to)?;
        let mat = self.point_matrix(x)?;
        let (values, _) = self.normalize_into(dst, &mat).map_err(|e| match e {
            Error::NotInvertible => Error::MinorNotInvertible(to.clone()),
            e => e,
        })?;
        self.point(to, x.r, values)
    }

    /// Finds `X` in chart `src` with `point_transition(X, target.chart) ==
    /// target`, by solving the ℚ-linear system `Z ⊙ M_src([target]) =
    /// M_src(A_src)` for the normalising matrix `Z` (with `1ν` realised as
    /// `θ1` on the right-hand side) and reading `X` off `Z ⊙ [target]`.
    pub fn invert_transition(&self, target: &GrassPoint, src: &IndexPair) -> Result<GrassPoint> {
        let r = target.r;
        let src_chart = self.chart(src)?;
        let t = self.point_matrix(target)?;
        let ms = t.minor_m(src)?;
        let size = self.dims.rows();
        let k = self.dims.k;
        let proto = GrassmannNumber::zero(r);

        let masks = |p: Parity| -> Vec<u32> {
            (0..1u32 << r)
                .filter(|m| Parity::of_degree(m.count_ones()) == p)
                .collect()
        };
        let entry_parity = |i: usize, j: usize| Parity::of_degree(((i >= k) != (j >= k)) as u32);
        // unknown (i, j, mask) -> column
        let mut unknowns = Vec::new();
        let mut offset = vec![vec![0usize; size]; size];
        for i in 0..size {
            for j in 0..size {
                offset[i][j] = unknowns.len();
                for mk in masks(entry_parity(i, j)) {
                    unknowns.push((i, j, mk));
                }
            }
        }
        let ncols = unknowns.len();
        let nrows = size * size * (1usize << r);
        let row_of = |i: usize, c: usize, mk: u32| (i * size + c) * (1 << r) + mk as usize;
        let mut a = vec![vec![Q::default(); ncols]; nrows];
        let mut b = vec![Q::default(); nrows];
        for (u, &(i, tt, mk)) in unknowns.iter().enumerate() {
            let basis = GrassmannNumber::from_exterior(
                r,
                crate::superalgebra::Exterior::monomial(mk, Q::from_integer(1.into())),
            )?;
            for c in 0..size {
                let prod = match ms.entry(tt, c) {
                    Entry::Plain(y) => &basis * y,
                    Entry::Nu => basis.nu()?,
                };
                for (m2, v) in prod.terms() {
                    a[row_of(i, c, m2)][u] += v;
                }
            }
        }
        let own = src_chart.realize(&vec![proto.clone(); src_chart.names.len()], &proto)?;
        let own_minor = own.minor_m(src)?;
        let theta1 = if r > 0 { Some(GrassmannNumber::generator(r, 0)?) } else { None };
        for i in 0..size {
            for c in 0..size {
                let v = match own_minor.entry(i, c) {
                    Entry::Plain(y) => y.clone(),
                    Entry::Nu => theta1.clone().ok_or(Error::NoOddGenerators)?,
                };
                for (m2, q) in v.terms() {
                    b[row_of(i, c, m2)] = q.clone();
                }
            }
        }
        let body_singular = || {
            let body: linalg::QMat = (0..size)
                .map(|i| {
                    (0..size)
                        .map(|c| match ms.entry(i, c) {
                            Entry::Plain(y) => y.body(),
                            Entry::Nu => Q::from_integer(1.into()),
                        })
                        .collect()
                })
                .collect();
            linalg::rank(&body, size) < size
        };
        let sol = match linalg::solve(&a, &b, ncols) {
            Solution::Unique(s) => s,
            Solution::Underdetermined if body_singular() => return Err(Error::BodySolveFailed),
            Solution::Inconsistent if body_singular() => return Err(Error::BodySolveFailed),
            Solution::Underdetermined => return Err(Error::SingularJacobian),
            Solution::Inconsistent => return Err(Error::NoPreimage),
        };
        let mut z = SuperMatrix::zeros([k, self.dims.l], [k, self.dims.l], &proto);
        for i in 0..size {
            for j in 0..size {
                let terms = masks(entry_parity(i, j))
                    .into_iter()
                    .enumerate()
                    .map(|(n, mk)| (mk, sol[offset[i][j] + n].clone()));
                let g = GrassmannNumber::from_exterior(
                    r,
                    crate::superalgebra::Exterior::from_terms(terms),
                )?;
                z.set(i, j, Entry::Plain(g));
            }
        }
        let full = smat_mul(&z, &t)?;
        let d = full.remainder_d(src)?;
        let values = src_chart.read_off(&d)?;
        let x = self.point(src, r, values)?;
        match self.point_transition(&x, &target.chart) {
            Ok(back) if &back == target => Ok(x),
            _ => Err(Error::NoPreimage),
        }
    }

    /// Moves a point to another chart: the transition formula when one
    /// exists, otherwise the inverse of the opposite direction.
    pub fn transport(&self, x: &GrassPoint, to: &IndexPair) -> Result<GrassPoint> {
        if &x.chart == to {
            return Ok(x.clone());
        }
        if self.covered(&x.chart, to) {
            self.point_transition(x, to)
        } else if self.covered(to, &x.chart) {
            self.invert_transition(x, to)
        } else {
            Err(Error::UncoveredCase {
                from: x.chart.clone(),
                to: to.clone(),
            })
        }
    }
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            cur.push(v);
            go(v + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, size, &mut Vec::new(), &mut out);
    out
}

/// Errors meaning a draw fell outside the domain of some leg.
pub fn outside_domain(e: &Error) -> bool {
    matches!(
        e,
        Error::MinorNotInvertible(_)
            | Error::BodySolveFailed
            | Error::SingularJacobian
            | Error::NotInvertible
            | Error::ZeroBody
    )
}

fn point_json(x: &GrassPoint) -> serde_json::Value {
    serde_json::to_value(x).expect("points serialize")
}

/// Runs a chart cycle `start → path[0] → … → start` on sampled points.
fn cycle_check(
    atlas: &Atlas,
    name: &str,
    cycle: &[IndexPair],
    r: usize,
    samples: usize,
    seed: u64,
    salt: u64,
) -> Report {
    let instance = cycle
        .iter()
        .chain(std::iter::once(&cycle[0]))
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" -> ");
    let mut report = Report::new(name, instance);
    let mut s = Sampler::child(seed, salt);
    let max_draws = samples * 20;
    let mut draws = 0;
    while report.samples < samples && draws < max_draws {
        draws += 1;
        let x = atlas.sample_point(&cycle[0], r, &mut s);
        let mut cur = x.clone();
        let mut outcome = Ok(());
        for next in cycle[1..].iter().chain(std::iter::once(&cycle[0])) {
            match atlas.transport(&cur, next) {
                Ok(y) => cur = y,
                Err(e) => {
                    outcome = Err(e);
                    break;
                }
            }
        }
        match outcome {
            Err(e) if outside_domain(&e) => report.skip(),
            Err(e) => report.fail(json!({"point": point_json(&x), "detail": e.to_string()})),
            Ok(()) => report.record(cur == x, || {
                json!({"point": point_json(&x), "returned": point_json(&cur)})
            }),
        }
    }
    report
}

/// The three cocycle identities: `g_{II} = id` symbolically for every
/// chart, and round trips over ordered pairs and over triples (each 3-set in
/// both orientations) at sampled `Λ_r`-points. Cycles with a leg that no
/// formula reaches in either direction are left out.
pub fn verify_cocycle(dims: Dims, r: usize, samples: usize, seed: u64) -> Result<Suite> {
    let atlas = Atlas::new(dims)?;
    let mut suite = Suite::new(format!("cocycle {dims} r={r}"));
    let gens = atlas.generators();
    for c in atlas.charts() {
        let mut rep = Report::new("cocycle.identity", c.index.to_string());
        match atlas.transition_symbolic(&c.index, &c.index) {
            Ok(t) => rep.record(t.images == gens, || json!({"images": t.lines()})),
            Err(e) => rep.fail(json!({"detail": e.to_string()})),
        }
        suite.reports.push(rep);
    }
    let idx: Vec<IndexPair> = atlas.charts().iter().map(|c| c.index.clone()).collect();
    let links: Vec<Vec<bool>> = idx
        .iter()
        .map(|a| idx.iter().map(|b| atlas.linked(a, b)).collect())
        .collect();
    let mut cycles: Vec<(&str, Vec<IndexPair>)> = Vec::new();
    for (i, a) in idx.iter().enumerate() {
        for (j, b) in idx.iter().enumerate() {
            if i != j && links[i][j] {
                cycles.push(("cocycle.inverse", vec![a.clone(), b.clone()]));
            }
        }
    }
    for i in 0..idx.len() {
        for j in i + 1..idx.len() {
            for k in j + 1..idx.len() {
                let (a, b, c) = (&idx[i], &idx[j], &idx[k]);
                if !(links[i][j] && links[j][k] && links[i][k]) {
                    continue;
                }
                cycles.push(("cocycle.triple", vec![a.clone(), b.clone(), c.clone()]));
                cycles.push(("cocycle.triple", vec![a.clone(), c.clone(), b.clone()]));
            }
        }
    }
    let reports: Vec<Report> = cycles
        .par_iter()
        .enumerate()
        .map(|(n, (name, cyc))| cycle_check(&atlas, name, cyc, r, samples, seed, n as u64))
        .collect();
    suite.reports.extend(reports);
    Ok(suite)
}

/// Whether each symbolic transition commutes with ν on the target
/// coordinates: `g*(ν y) = ν(g* y)`. Reported, not assumed.
pub fn nu_equivariance(atlas: &Atlas) -> Suite {
    let mut suite = Suite::new(format!("ν-equivariance {}", atlas.dims));
    let gens = atlas.generators();
    for a in atlas.charts() {
        for b in atlas.charts() {
            let Ok(t) = atlas.transition_symbolic(&a.index, &b.index) else {
                continue;
            };
            let mut rep = Report::new("transition.nu_equivariance", format!("{} -> {}", a.index, b.index));
            for (c, y) in gens.iter().enumerate() {
                let lhs = y.nu().and_then(|ny| t.apply(&ny));
                let rhs = t.images[c].nu();
                match (lhs, rhs) {
                    (Ok(l), Ok(r)) => rep.record(l == r, || {
                        json!({"coordinate": b.names[c], "pullback_of_nu": l.to_string(), "nu_of_pullback": r.to_string()})
                    }),
                    _ => rep.skip(),
                }
            }
            suite.reports.push(rep);
        }
    }
    suite
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{q, q_frac};

    fn small() -> Atlas {
        Atlas::new(Dims::new(0, 1, 1, 2).unwrap()).unwrap()
    }

    fn big() -> Atlas {
        Atlas::new(Dims::new(1, 2, 2, 3).unwrap()).unwrap()
    }

    fn ip(s: &str) -> IndexPair {
        IndexPair::parse(s).unwrap()
    }

    #[test]
    fn chart_enumeration() {
        let a = small();
        let idx: Vec<String> = a.charts().iter().map(|c| c.index.to_string()).collect();
        assert_eq!(idx, ["∅|{1}", "∅|{2}", "{1}|∅"]);
        let b = big();
        assert_eq!(b.charts().len(), 10);
        assert_eq!(b.charts().iter().filter(|c| c.is_standard()).count(), 6);
        assert_eq!((b.dims.alpha(), b.dims.beta()), (3, 3));
        assert_eq!(Atlas::new(Dims::new(1, 0, 1, 1).unwrap()).unwrap().charts().len(), 2);
    }

    #[test]
    fn labels_match_layouts() {
        let a = small();
        let l: Vec<String> = a.charts().iter().map(Chart::label_inline).collect();
        assert_eq!(l, ["[e | 1, x]", "[e | x, 1]", "[1ν | ν(e), x]"]);
        let b = big();
        assert_eq!(
            b.chart(&ip("{1}|{2,3}")).unwrap().label_inline(),
            "[1, x1 | e3, 0, 0; 0, e1 | x2, 1, 0; 0, e2 | x3, 0, 1]"
        );
        assert_eq!(
            b.chart(&ip("{1,2}|{2}")).unwrap().label_inline(),
            "[1, 0 | ν(x1), 0, e3; 0, 1ν | ν(e1), 0, x2; 0, 0 | ν(e2), 1, x3]"
        );
        assert_eq!(
            b.chart(&ip("∅|{1,2,3}")).unwrap().label_inline(),
            "[x1, ν(e3) | 1ν, 0, 0; e1, ν(x2) | 0, 1, 0; e2, ν(x3) | 0, 0, 1]"
        );
    }

    #[test]
    fn transitions_of_small_atlas() {
        let a = small();
        let t = a.transition_symbolic(&ip("∅|{1}"), &ip("∅|{2}")).unwrap();
        assert_eq!(t.to_string(), "x ↦ 1/x, e ↦ e/x");
        let t = a.transition_symbolic(&ip("∅|{1}"), &ip("{1}|∅")).unwrap();
        assert_eq!(t.to_string(), "x ↦ x, e ↦ e");
        assert!(matches!(
            a.transition_symbolic(&ip("{1}|∅"), &ip("∅|{1}")),
            Err(Error::UncoveredCase { .. })
        ));
    }

    #[test]
    fn point_transition_and_inverse() {
        let a = small();
        let t1 = GrassmannNumber::generator(2, 0).unwrap();
        let x = a
            .point(&ip("∅|{1}"), 2, vec![GrassmannNumber::scalar(2, q(2)), t1.clone()])
            .unwrap();
        let y = a.point_transition(&x, &ip("∅|{2}")).unwrap();
        assert_eq!(y.even[0], GrassmannNumber::scalar(2, q_frac(1, 2)));
        assert_eq!(y.odd[0], t1.scale(&q_frac(1, 2)));
        let back = a.invert_transition(&y, &ip("∅|{1}")).unwrap();
        assert_eq!(back, x);

        let zero = a
            .point(&ip("∅|{1}"), 2, vec![GrassmannNumber::zero(2), t1.clone()])
            .unwrap();
        assert_eq!(
            a.point_transition(&zero, &ip("∅|{2}")),
            Err(Error::MinorNotInvertible(ip("∅|{2}")))
        );
        let y0 = a
            .point(&ip("∅|{2}"), 2, vec![GrassmannNumber::zero(2), t1])
            .unwrap();
        assert_eq!(a.invert_transition(&y0, &ip("∅|{1}")), Err(Error::BodySolveFailed));
    }

    #[test]
    fn symbolic_matches_points_on_standard_pairs() {
        let b = big();
        let mut s = Sampler::new(5);
        let std: Vec<&Chart> = b.charts().iter().filter(|c| c.is_standard()).collect();
        for src in &std {
            for dst in &std {
                let t = b.transition_symbolic(&src.index, &dst.index).unwrap();
                let x = b.sample_point(&src.index, 2, &mut s);
                let Ok(y) = b.point_transition(&x, &dst.index) else {
                    continue;
                };
                let alpha = b.dims.alpha();
                let ctx = b.context().clone();
                let even = |v: &str| ctx.even_names().iter().position(|n| n == v).map(|i| x.even[i].clone());
                for (c, img) in t.images.iter().enumerate() {
                    let v = img.evaluate(&even, &x.odd, &GrassmannNumber::one(2)).unwrap();
                    let expect = if c < alpha { &y.even[c] } else { &y.odd[c - alpha] };
                    assert_eq!(&v, expect);
                }
            }
        }
    }

    #[test]
    fn identity_transition_everywhere() {
        for a in [small(), big()] {
            let gens = a.generators();
            for c in a.charts() {
                let t = a.transition_symbolic(&c.index, &c.index).unwrap();
                assert_eq!(t.images, gens, "{}", c.index);
            }
        }
    }
}
