//! Right action of `GL(m|n)` on `Λ_r`-points of the ν-Grassmannian.

use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::atlas::{outside_domain, Atlas, Dims, GrassPoint};
use crate::error::{Error, Result};
use crate::linalg::{self, QMat};
use crate::poly::Q;
use crate::report::{Report, Suite};
use crate::superalgebra::{GrassmannNumber, Parity, Sampler};
use crate::supermatrix::{smat_inv, smat_mul, Entry, IndexPair, SuperMatrix};

/// An invertible even `m|n × m|n` supermatrix over `Λ_r`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GlRepr", into = "GlRepr")]
pub struct GLPoint {
    r: usize,
    mat: SuperMatrix<GrassmannNumber>,
}

#[derive(Serialize, Deserialize)]
struct GlRepr {
    r: usize,
    matrix: SuperMatrix<GrassmannNumber>,
}

impl TryFrom<GlRepr> for GLPoint {
    type Error = Error;

    fn try_from(g: GlRepr) -> Result<Self> {
        GLPoint::new(g.r, g.matrix)
    }
}

impl From<GLPoint> for GlRepr {
    fn from(g: GLPoint) -> Self {
        GlRepr { r: g.r, matrix: g.mat }
    }
}

impl GLPoint {
    pub fn new(r: usize, mat: SuperMatrix<GrassmannNumber>) -> Result<Self> {
        if mat.row_split() != mat.col_split() {
            return Err(Error::DimensionMismatch("GL points are square".into()));
        }
        if mat.has_nu() {
            return Err(Error::NuEntriesPresent);
        }
        mat.validate()?;
        for row in mat.entries() {
            for e in row {
                if e.as_plain().map(GrassmannNumber::r) != Some(r) {
                    return Err(Error::ContextMismatch);
                }
            }
        }
        if !mat.is_invertible() {
            return Err(Error::NotInvertible);
        }
        Ok(GLPoint { r, mat })
    }

    pub fn identity(m: usize, n: usize, r: usize) -> Self {
        GLPoint {
            r,
            mat: SuperMatrix::identity([m, n], &GrassmannNumber::zero(r)),
        }
    }

    /// Lifts a rational matrix (soul zero).
    pub fn from_rational(m: usize, n: usize, r: usize, entries: &QMat) -> Result<Self> {
        let grid = entries
            .iter()
            .map(|row| row.iter().map(|c| GrassmannNumber::scalar(r, c.clone())).collect())
            .collect();
        Self::new(r, SuperMatrix::from_plain([m, n], [m, n], grid, &GrassmannNumber::zero(r))?)
    }

    /// Random invertible element with small integer coefficients.
    pub fn sample(m: usize, n: usize, r: usize, s: &mut Sampler) -> Self {
        let proto = GrassmannNumber::zero(r);
        loop {
            let mut mat = SuperMatrix::zeros([m, n], [m, n], &proto);
            for i in 0..m + n {
                for j in 0..m + n {
                    let p = Parity::of_degree(((i >= m) != (j >= m)) as u32);
                    mat.set(i, j, Entry::Plain(s.grassmann(r, p, false)));
                }
            }
            if let Ok(g) = Self::new(r, mat) {
                return g;
            }
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn split(&self) -> [usize; 2] {
        self.mat.row_split()
    }

    pub fn matrix(&self) -> &SuperMatrix<GrassmannNumber> {
        &self.mat
    }

    pub fn mul(&self, other: &GLPoint) -> Result<GLPoint> {
        if self.r != other.r {
            return Err(Error::ContextMismatch);
        }
        Ok(GLPoint {
            r: self.r,
            mat: smat_mul(&self.mat, &other.mat)?,
        })
    }

    pub fn inv(&self) -> Result<GLPoint> {
        Ok(GLPoint {
            r: self.r,
            mat: smat_inv(&self.mat)?,
        })
    }
}

impl fmt::Display for GLPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.mat.to_inline())
    }
}

/// `p̂ = diag(p̄1, p̄2)` with rational blocks of full row rank.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasePoint {
    #[serde(with = "linalg::qmat_serde")]
    pub p1: QMat,
    #[serde(with = "linalg::qmat_serde")]
    pub p2: QMat,
}

impl BasePoint {
    pub fn new(dims: Dims, p1: QMat, p2: QMat) -> Result<Self> {
        let shape_ok = |a: &QMat, rows: usize, cols: usize| a.len() == rows && a.iter().all(|r| r.len() == cols);
        if !shape_ok(&p1, dims.k, dims.m) || !shape_ok(&p2, dims.l, dims.n) {
            return Err(Error::DimensionMismatch("base point blocks must be k×m and l×n".into()));
        }
        if linalg::rank(&p1, dims.m) < dims.k || linalg::rank(&p2, dims.n) < dims.l {
            return Err(Error::RankDeficient);
        }
        Ok(BasePoint { p1, p2 })
    }

    /// `[I 0]` in both blocks.
    pub fn standard(dims: Dims) -> Self {
        let unit = |rows: usize, cols: usize| -> QMat {
            (0..rows)
                .map(|i| (0..cols).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
                .collect()
        };
        BasePoint {
            p1: unit(dims.k, dims.m),
            p2: unit(dims.l, dims.n),
        }
    }

    pub fn matrix(&self, dims: Dims, r: usize) -> SuperMatrix<GrassmannNumber> {
        let proto = GrassmannNumber::zero(r);
        let mut out = SuperMatrix::zeros([dims.k, dims.l], [dims.m, dims.n], &proto);
        for (i, row) in self.p1.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                out.set(i, j, Entry::Plain(GrassmannNumber::scalar(r, c.clone())));
            }
        }
        for (i, row) in self.p2.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                out.set(dims.k + i, dims.m + j, Entry::Plain(GrassmannNumber::scalar(r, c.clone())));
            }
        }
        out
    }

    /// `p̂` as a point of the first chart that accepts it, standard charts
    /// first.
    pub fn point(&self, atlas: &Atlas, r: usize) -> Result<GrassPoint> {
        let mat = self.matrix(atlas.dims, r);
        first_chart(atlas, &mat, r, None)
    }
}

fn check_shapes(atlas: &Atlas, x: &GrassPoint, p: &GLPoint) -> Result<()> {
    if p.split() != [atlas.dims.m, atlas.dims.n] {
        return Err(Error::DimensionMismatch(format!(
            "GL({}|{}) element for {}",
            p.split()[0],
            p.split()[1],
            atlas.dims
        )));
    }
    if x.r != p.r {
        return Err(Error::ContextMismatch);
    }
    Ok(())
}

/// Normalises a `k|l × m|n` matrix into chart `dst`.
pub fn normalize_matrix(
    atlas: &Atlas,
    mat: &SuperMatrix<GrassmannNumber>,
    r: usize,
    dst: &IndexPair,
) -> Result<GrassPoint> {
    let chart = atlas.chart(dst)?;
    let (values, _) = atlas.normalize_into(chart, mat).map_err(|e| match e {
        Error::NotInvertible => Error::MinorNotInvertible(dst.clone()),
        e => e,
    })?;
    atlas.point(dst, r, values)
}

fn first_chart(
    atlas: &Atlas,
    mat: &SuperMatrix<GrassmannNumber>,
    r: usize,
    prefer: Option<&IndexPair>,
) -> Result<GrassPoint> {
    let std = atlas.charts().iter().filter(|c| c.is_standard());
    let non_std = atlas.charts().iter().filter(|c| !c.is_standard());
    let order = prefer
        .into_iter()
        .chain(std.chain(non_std).map(|c| &c.index));
    for j in order {
        match normalize_matrix(atlas, mat, r, j) {
            Ok(y) => return Ok(y),
            Err(e) if outside_domain(&e) || e == Error::ResidualNuSymbol => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::NoChartFound)
}

/// `A^{J|S}_{I|R}(X) = D_{J|S}((M′_{J|S}([X][P]))⁻¹ [X][P])`.
pub fn act_into(atlas: &Atlas, x: &GrassPoint, p: &GLPoint, dst: &IndexPair) -> Result<GrassPoint> {
    check_shapes(atlas, x, p)?;
    let xp = smat_mul(&atlas.point_matrix(x)?, &p.mat)?;
    normalize_matrix(atlas, &xp, x.r, dst)
}

/// `X·P`, landing in the chart of `X` when possible and otherwise in the
/// first chart whose minor is invertible, standard charts first.
pub fn act(atlas: &Atlas, x: &GrassPoint, p: &GLPoint) -> Result<GrassPoint> {
    check_shapes(atlas, x, p)?;
    let xp = smat_mul(&atlas.point_matrix(x)?, &p.mat)?;
    first_chart(atlas, &xp, x.r, Some(&x.chart))
}

fn pj(x: &GrassPoint) -> serde_json::Value {
    serde_json::to_value(x).expect("points serialize")
}

/// Which chart quadruples the gluing check runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GluingScope {
    /// Every quadruple, one report each.
    All,
    /// A fresh quadruple of standard charts per sample, one report.
    StandardSampled,
}

/// `(g_{H|L,J|S})_T ∘ A^{J|S}_{I|R} = A^{H|L}_{K|Q} ∘ (g_{K|Q,I|R})_T` on
/// sampled `(X, P)`.
pub fn verify_action_gluing(
    dims: Dims,
    r: usize,
    samples: usize,
    seed: u64,
    scope: GluingScope,
) -> Result<Suite> {
    let atlas = Atlas::new(dims)?;
    let mut suite = Suite::new(format!("action gluing {dims} r={r}"));
    let idx: Vec<IndexPair> = atlas.charts().iter().map(|c| c.index.clone()).collect();
    let links: Vec<Vec<bool>> = idx
        .iter()
        .map(|a| idx.iter().map(|b| atlas.linked(a, b)).collect())
        .collect();
    let one = |s: &mut Sampler, q: [usize; 4]| -> Option<std::result::Result<bool, serde_json::Value>> {
        let [i, j, k, h] = q;
        let x = atlas.sample_point(&idx[i], r, s);
        let p = GLPoint::sample(dims.m, dims.n, r, s);
        let lhs = act_into(&atlas, &x, &p, &idx[j]).and_then(|y| atlas.transport(&y, &idx[h]));
        let rhs = atlas
            .transport(&x, &idx[k])
            .and_then(|y| act_into(&atlas, &y, &p, &idx[h]));
        match (lhs, rhs) {
            (Ok(a), Ok(b)) if a == b => Some(Ok(true)),
            (Ok(a), Ok(b)) => Some(Err(json!({
                "point": pj(&x), "group": p.to_string(), "via_action_first": pj(&a), "via_transition_first": pj(&b)
            }))),
            (Err(e), _) | (_, Err(e)) if outside_domain(&e) => None,
            (Err(e), _) | (_, Err(e)) => Some(Err(json!({"point": pj(&x), "detail": e.to_string()}))),
        }
    };
    let run = |report: &mut Report, s: &mut Sampler, mut pick: Box<dyn FnMut(&mut Sampler) -> [usize; 4] + '_>| {
        let mut draws = 0;
        while report.samples < samples && draws < samples * 20 {
            draws += 1;
            let q = pick(s);
            match one(s, q) {
                None => report.skip(),
                Some(Ok(_)) => report.pass(),
                Some(Err(c)) => report.fail(c),
            }
        }
    };
    match scope {
        GluingScope::All => {
            let mut quads = Vec::new();
            for i in 0..idx.len() {
                for j in 0..idx.len() {
                    for k in 0..idx.len() {
                        for h in 0..idx.len() {
                            if links[i][k] && links[j][h] {
                                quads.push([i, j, k, h]);
                            }
                        }
                    }
                }
            }
            let reports: Vec<Report> = quads
                .par_iter()
                .enumerate()
                .map(|(n, &q)| {
                    let name = format!("{} -> {} / {} -> {}", idx[q[0]], idx[q[1]], idx[q[2]], idx[q[3]]);
                    let mut rep = Report::new("action.gluing", name);
                    let mut s = Sampler::child(seed, n as u64);
                    run(&mut rep, &mut s, Box::new(move |_| q));
                    rep
                })
                .collect();
            suite.reports.extend(reports);
        }
        GluingScope::StandardSampled => {
            let std: Vec<usize> = (0..idx.len()).filter(|&i| idx[i].is_standard(dims.k)).collect();
            let mut rep = Report::new("action.gluing", "standard quadruples");
            let mut s = Sampler::child(seed, 0);
            let pick = |s: &mut Sampler| [0; 4].map(|_| std[s.index(std.len())]);
            run(&mut rep, &mut s, Box::new(pick));
            suite.reports.push(rep);
        }
    }
    Ok(suite)
}

/// Associativity, unit, inverse and body compatibility of the action, one
/// report per law and starting chart. Body compatibility runs on standard
/// charts only.
pub fn verify_action_axioms(dims: Dims, r: usize, samples: usize, seed: u64) -> Result<Suite> {
    let atlas = Atlas::new(dims)?;
    let mut suite = Suite::new(format!("action axioms {dims} r={r}"));
    let names = ["action.associativity", "action.unit", "action.inverse", "action.body_compatibility"];
    let mut jobs = Vec::new();
    for name in names {
        for c in atlas.charts() {
            if name != "action.body_compatibility" || c.is_standard() {
                jobs.push((name, c.index.clone()));
            }
        }
    }
    let reports: Vec<Report> = jobs
        .par_iter()
        .enumerate()
        .map(|(n, (name, chart))| {
            let mut rep = Report::new(*name, format!("{dims} {chart}"));
            let mut s = Sampler::child(seed, n as u64);
            let mut draws = 0;
            while rep.samples < samples && draws < samples * 20 {
                draws += 1;
                let x = atlas.sample_point(chart, r, &mut s);
                let p1 = GLPoint::sample(dims.m, dims.n, r, &mut s);
                let p2 = GLPoint::sample(dims.m, dims.n, r, &mut s);
                let outcome = match *name {
                    "action.associativity" => associativity(&atlas, &x, &p1, &p2),
                    "action.unit" => act(&atlas, &x, &GLPoint::identity(dims.m, dims.n, r)).map(|y| {
                        (y == x).then_some(()).ok_or_else(|| json!({"point": pj(&x), "image": pj(&y)}))
                    }),
                    "action.inverse" => inverse_law(&atlas, &x, &p1),
                    _ => body_compatible(&atlas, &x, &p1),
                };
                match outcome {
                    Ok(Ok(())) => rep.pass(),
                    Ok(Err(c)) => rep.fail(c),
                    Err(e) if outside_domain(&e) || e == Error::NoChartFound => rep.skip(),
                    Err(e) => rep.fail(json!({"point": pj(&x), "detail": e.to_string()})),
                }
            }
            rep
        })
        .collect();
    suite.reports.extend(reports);
    Ok(suite)
}

type Check = Result<std::result::Result<(), serde_json::Value>>;

fn associativity(atlas: &Atlas, x: &GrassPoint, p1: &GLPoint, p2: &GLPoint) -> Check {
    let lhs = act(atlas, &act(atlas, x, p1)?, p2)?;
    let rhs = atlas.transport(&act(atlas, x, &p1.mul(p2)?)?, &lhs.chart)?;
    Ok((lhs == rhs).then_some(()).ok_or_else(|| {
        json!({"point": pj(x), "p1": p1.to_string(), "p2": p2.to_string(), "stepwise": pj(&lhs), "product": pj(&rhs)})
    }))
}

fn inverse_law(atlas: &Atlas, x: &GrassPoint, p: &GLPoint) -> Check {
    let back = act(atlas, &act(atlas, x, p)?, &p.inv()?)?;
    let back = atlas.transport(&back, &x.chart)?;
    Ok((&back == x)
        .then_some(())
        .ok_or_else(|| json!({"point": pj(x), "group": p.to_string(), "returned": pj(&back)})))
}

fn body_blocks(mat: &SuperMatrix<GrassmannNumber>) -> [QMat; 2] {
    let [k, l] = mat.row_split();
    let [m, n] = mat.col_split();
    let block = |rows: std::ops::Range<usize>, cols: std::ops::Range<usize>| -> QMat {
        rows.map(|i| {
            cols.clone()
                .map(|j| mat.entry(i, j).as_plain().map_or_else(Q::zero, GrassmannNumber::body))
                .collect()
        })
        .collect()
    };
    [block(0..k, 0..m), block(k..k + l, m..m + n)]
}

fn same_row_space(a: &QMat, b: &QMat, cols: usize) -> bool {
    let mut both = a.clone();
    both.extend(b.iter().cloned());
    let ra = linalg::rank(a, cols);
    ra == linalg::rank(b, cols) && ra == linalg::rank(&both, cols)
}

/// With souls dropped, the image spans the same even and odd row spaces
/// as `body([X][P])`.
fn body_compatible(atlas: &Atlas, x: &GrassPoint, p: &GLPoint) -> Check {
    let xp = smat_mul(&atlas.point_matrix(x)?, &p.mat)?;
    let y = atlas
        .charts()
        .iter()
        .filter(|c| c.is_standard())
        .find_map(|c| normalize_matrix(atlas, &xp, x.r, &c.index).ok())
        .ok_or(Error::NoChartFound)?;
    let [a1, d1] = body_blocks(&xp);
    let [a2, d2] = body_blocks(&atlas.point_matrix(&y)?);
    let ok = same_row_space(&a1, &a2, atlas.dims.m) && same_row_space(&d1, &d2, atlas.dims.n);
    Ok(ok
        .then_some(())
        .ok_or_else(|| json!({"point": pj(x), "group": p.to_string(), "image": pj(&y)})))
}

/// Greedy completion of `a` to an invertible square rational matrix.
fn complete(a: &QMat, cols: usize) -> Result<QMat> {
    let added = linalg::complete_rows(a, cols).ok_or(Error::RankDeficient)?;
    let mut out = a.clone();
    out.extend(added.into_iter().map(|j| {
        (0..cols).map(|c| if c == j { Q::one() } else { Q::zero() }).collect()
    }));
    Ok(out)
}

/// `p̃⁻¹ · rows`, where `rows` are padded with `extra` below.
fn solve_block(
    pinv: &QMat,
    rows: Vec<Vec<GrassmannNumber>>,
    extra: Vec<Vec<GrassmannNumber>>,
) -> Vec<Vec<GrassmannNumber>> {
    let full: Vec<Vec<GrassmannNumber>> = rows.into_iter().chain(extra).collect();
    pinv.iter()
        .map(|prow| {
            (0..full.first().map_or(0, Vec::len))
                .map(|j| {
                    prow.iter().zip(&full).fold(None, |acc: Option<GrassmannNumber>, (c, row)| {
                        let t = row[j].scale(c);
                        Some(match acc {
                            None => t,
                            Some(a) => &a + &t,
                        })
                    })
                    .expect("nonempty")
                })
                .collect()
        })
        .collect()
}

/// Some `V` with `p̂·V = W`: the rational blocks of `p̂` and the even
/// blocks of `W` are completed to invertible ones and each block of `V`
/// solved through the completion.
pub fn transitivity_witness(atlas: &Atlas, w: &GrassPoint, base: &BasePoint) -> Result<GLPoint> {
    let Dims { k, l, m, n } = atlas.dims;
    let r = w.r;
    if r == 0 && !atlas.chart(&w.chart)?.is_standard() {
        return Err(Error::NoOddGenerators);
    }
    let proto = GrassmannNumber::zero(r);
    let wmat = atlas.point_matrix(w)?;
    let wplain = if wmat.has_nu() {
        wmat.resolve_nu(&GrassmannNumber::generator(r, 0)?)
    } else {
        wmat
    };
    let cell = |i: usize, j: usize| wplain.plain(i, j).cloned();
    let grid = |rows: std::ops::Range<usize>, cols: std::ops::Range<usize>| -> Result<Vec<Vec<GrassmannNumber>>> {
        rows.map(|i| cols.clone().map(|j| cell(i, j)).collect()).collect()
    };
    let a = grid(0..k, 0..m)?;
    let b = grid(0..k, m..m + n)?;
    let c = grid(k..k + l, 0..m)?;
    let d = grid(k..k + l, m..m + n)?;
    let body = |g: &Vec<Vec<GrassmannNumber>>| -> QMat {
        g.iter().map(|row| row.iter().map(GrassmannNumber::body).collect()).collect()
    };
    let unit_rows = |added: QMat| -> Vec<Vec<GrassmannNumber>> {
        added
            .into_iter()
            .map(|row| row.into_iter().map(|q| GrassmannNumber::scalar(r, q)).collect())
            .collect()
    };
    let zero_rows = |count: usize, cols: usize| vec![vec![proto.clone(); cols]; count];

    let p1t = complete(&base.p1, m)?;
    let p2t = complete(&base.p2, n)?;
    let p1inv = linalg::inverse(&p1t).ok_or(Error::RankDeficient)?;
    let p2inv = linalg::inverse(&p2t).ok_or(Error::RankDeficient)?;
    let at = complete(&body(&a), m)?;
    let dt = complete(&body(&d), n)?;

    let h = solve_block(&p1inv, a, unit_rows(at[k..].to_vec()));
    let mm = solve_block(&p1inv, b, zero_rows(m - k, n));
    let nn = solve_block(&p2inv, c, zero_rows(n - l, m));
    let q = solve_block(&p2inv, d, unit_rows(dt[l..].to_vec()));

    let rows: Vec<Vec<GrassmannNumber>> = h
        .into_iter()
        .zip(mm)
        .map(|(mut x, y)| {
            x.extend(y);
            x
        })
        .chain(nn.into_iter().zip(q).map(|(mut x, y)| {
            x.extend(y);
            x
        }))
        .collect();
    let v = GLPoint::new(r, SuperMatrix::from_plain([m, n], [m, n], rows, &proto)?)
        .map_err(|_| Error::RankDeficient)?;
    let image = normalize_matrix(atlas, &smat_mul(&base.matrix(atlas.dims, r), &v.mat)?, r, &w.chart)?;
    if &image != w {
        return Err(Error::RankDeficient);
    }
    Ok(v)
}

/// Whether `P` fixes `p̂` as a point.
pub fn stabilizer_membership(atlas: &Atlas, p: &GLPoint, base: &BasePoint) -> Result<bool> {
    let x = base.point(atlas, p.r)?;
    let y = act(atlas, &x, p)?;
    Ok(atlas.transport(&y, &x.chart)? == x)
}

/// Random stabilizer element `p̃⁻¹ G p̃`, where the rows of `G` belonging
/// to `p̂` vanish off the columns of `p̂`.
pub fn sample_stabilizer(atlas: &Atlas, base: &BasePoint, r: usize, s: &mut Sampler) -> Result<GLPoint> {
    let Dims { k, l, m, n } = atlas.dims;
    let p1t = complete(&base.p1, m)?;
    let p2t = complete(&base.p2, n)?;
    let mut pt = vec![vec![Q::zero(); m + n]; m + n];
    for i in 0..m {
        pt[i][..m].clone_from_slice(&p1t[i]);
    }
    for i in 0..n {
        pt[m + i][m..].clone_from_slice(&p2t[i]);
    }
    let pt = GLPoint::from_rational(m, n, r, &pt)?;
    let selected = |i: usize| i < k || (m..m + l).contains(&i);
    let proto = GrassmannNumber::zero(r);
    let g = loop {
        let mut g = SuperMatrix::zeros([m, n], [m, n], &proto);
        for i in 0..m + n {
            for j in 0..m + n {
                if selected(i) && !selected(j) {
                    continue;
                }
                let p = Parity::of_degree(((i >= m) != (j >= m)) as u32);
                g.set(i, j, Entry::Plain(s.grassmann(r, p, false)));
            }
        }
        if let Ok(g) = GLPoint::new(r, g) {
            break g;
        }
    };
    pt.inv()?.mul(&g)?.mul(&pt)
}

/// Samples a point whose even blocks have full-rank bodies, so that it is
/// the image of a real base point.
pub fn sample_reachable_point(atlas: &Atlas, r: usize, s: &mut Sampler) -> GrassPoint {
    let Dims { k, l, m, n } = atlas.dims;
    loop {
        let chart = &atlas.charts()[s.index(atlas.charts().len())].index;
        let w = atlas.sample_point(chart, r, s);
        let Ok(mat) = atlas.point_matrix(&w) else {
            continue;
        };
        let [a, d] = body_blocks(&mat);
        if linalg::rank(&a, m) == k && linalg::rank(&d, n) == l {
            return w;
        }
    }
}

/// Witnesses `p̂·V = W` for sampled `W`, and checks that sampled
/// stabilizer elements fix `p̂` and are closed under product and inverse.
pub fn verify_transitivity(dims: Dims, r: usize, samples: usize, seed: u64, base: &BasePoint) -> Result<Suite> {
    let atlas = Atlas::new(dims)?;
    let mut suite = Suite::new(format!("transitivity {dims} r={r}"));
    let mut rep = Report::new("transitivity.witness", dims.to_string());
    let mut s = Sampler::child(seed, 0);
    for _ in 0..samples {
        let w = sample_reachable_point(&atlas, r, &mut s);
        match transitivity_witness(&atlas, &w, base) {
            Ok(_) => rep.pass(),
            Err(e) => rep.fail(json!({"point": pj(&w), "detail": e.to_string()})),
        }
    }
    suite.reports.push(rep);

    let mut rep = Report::new("stabilizer.subgroup", dims.to_string());
    let mut s = Sampler::child(seed, 1);
    for _ in 0..samples {
        let outcome = (|| -> Result<bool> {
            let p1 = sample_stabilizer(&atlas, base, r, &mut s)?;
            let p2 = sample_stabilizer(&atlas, base, r, &mut s)?;
            Ok(stabilizer_membership(&atlas, &p1, base)?
                && stabilizer_membership(&atlas, &p1.mul(&p2)?, base)?
                && stabilizer_membership(&atlas, &p1.inv()?, base)?)
        })();
        match outcome {
            Ok(ok) => rep.record(ok, || json!({"detail": "stabilizer element moved the base point"})),
            Err(e) => rep.fail(json!({"detail": e.to_string()})),
        }
    }
    suite.reports.push(rep);
    Ok(suite)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q;

    fn small() -> Atlas {
        Atlas::new(Dims::new(0, 1, 1, 2).unwrap()).unwrap()
    }

    fn ip(s: &str) -> IndexPair {
        IndexPair::parse(s).unwrap()
    }

    fn g(r: usize, c: i64) -> GrassmannNumber {
        GrassmannNumber::scalar(r, q(c))
    }

    #[test]
    fn unit_and_swap() {
        let a = small();
        let t1 = GrassmannNumber::generator(2, 0).unwrap();
        let x = a.point(&ip("∅|{1}"), 2, vec![g(2, 2), t1.clone()]).unwrap();
        assert_eq!(act(&a, &x, &GLPoint::identity(1, 2, 2)).unwrap(), x);
        let swap = GLPoint::from_rational(
            1,
            2,
            2,
            &vec![vec![q(1), q(0), q(0)], vec![q(0), q(0), q(1)], vec![q(0), q(1), q(0)]],
        )
        .unwrap();
        let y = act_into(&a, &x, &swap, &ip("∅|{2}")).unwrap();
        assert_eq!(y.even[0], g(2, 2));
        assert_eq!(y.odd[0], t1);
    }

    #[test]
    fn witness_for_chart_point() {
        let a = small();
        let base = BasePoint::new(a.dims, vec![], vec![vec![q(1), q(0)]]).unwrap();
        let r = 4;
        let t = |i| GrassmannNumber::generator(r, i).unwrap();
        let x = &g(r, 3) + &(&t(0) * &t(1));
        let w = a.point(&ip("∅|{1}"), r, vec![x, t(0)]).unwrap();
        let v = transitivity_witness(&a, &w, &base).unwrap();
        let back = normalize_matrix(&a, &smat_mul(&base.matrix(a.dims, r), v.matrix()).unwrap(), r, &w.chart).unwrap();
        assert_eq!(back, w);
        assert!(!stabilizer_membership(&a, &v, &base).unwrap());
        assert!(stabilizer_membership(&a, &GLPoint::identity(1, 2, r), &base).unwrap());
    }

    #[test]
    fn stabilizer_samples_fix_base() {
        let a = Atlas::new(Dims::new(1, 1, 2, 2).unwrap()).unwrap();
        let base = BasePoint::standard(a.dims);
        let mut s = Sampler::new(11);
        for _ in 0..5 {
            let p = sample_stabilizer(&a, &base, 2, &mut s).unwrap();
            assert!(stabilizer_membership(&a, &p, &base).unwrap());
        }
    }

    #[test]
    fn gl_json_round_trip() {
        let mut s = Sampler::new(4);
        let p = GLPoint::sample(1, 2, 2, &mut s);
        let text = serde_json::to_string(&p).unwrap();
        let back: GLPoint = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
    }
}
