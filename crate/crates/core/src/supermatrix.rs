//! Block supermatrices with the formal odd unit `1ν`.
//!
//! Rows and columns are split into an even part followed by an odd part.
//! Column indices in [`IndexPair`] are 1-based, counted separately on each
//! side of the divider.

use std::fmt;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Q;
use crate::superalgebra::{GrassmannNumber, Parity, SuperFunction};

/// Ring operations a supermatrix entry needs.
pub trait SuperScalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;
    fn nu(&self) -> Result<Self>;
    fn has_zero_body(&self) -> bool;
    fn is_of_parity(&self, p: Parity) -> bool;
    fn from_q(&self, c: &Q) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

impl SuperScalar for SuperFunction {
    fn zero_like(&self) -> Self {
        SuperFunction::zero(self.context())
    }
    fn one_like(&self) -> Self {
        SuperFunction::one(self.context())
    }
    fn is_zero(&self) -> bool {
        SuperFunction::is_zero(self)
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
    fn inv(&self) -> Result<Self> {
        SuperFunction::inv(self)
    }
    fn nu(&self) -> Result<Self> {
        SuperFunction::nu(self)
    }
    fn has_zero_body(&self) -> bool {
        self.body().is_zero()
    }
    fn is_of_parity(&self, p: Parity) -> bool {
        match p {
            Parity::Even => self.is_even(),
            Parity::Odd => self.is_odd(),
        }
    }
    fn from_q(&self, c: &Q) -> Self {
        SuperFunction::rational(self.context(), c.clone())
    }
}

impl SuperScalar for GrassmannNumber {
    fn zero_like(&self) -> Self {
        GrassmannNumber::zero(self.r())
    }
    fn one_like(&self) -> Self {
        GrassmannNumber::one(self.r())
    }
    fn is_zero(&self) -> bool {
        GrassmannNumber::is_zero(self)
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
    fn inv(&self) -> Result<Self> {
        GrassmannNumber::inv(self)
    }
    fn nu(&self) -> Result<Self> {
        GrassmannNumber::nu(self)
    }
    fn has_zero_body(&self) -> bool {
        num_traits::Zero::is_zero(&self.body())
    }
    fn is_of_parity(&self, p: Parity) -> bool {
        GrassmannNumber::is_of_parity(self, p)
    }
    fn from_q(&self, c: &Q) -> Self {
        GrassmannNumber::scalar(self.r(), c.clone())
    }
}

#[derive(Clone, PartialEq, Debug)]
pub enum Entry<S> {
    Plain(S),
    /// The bare symbol `1ν`.
    Nu,
}

impl<S: SuperScalar> Entry<S> {
    pub fn as_plain(&self) -> Option<&S> {
        match self {
            Entry::Plain(s) => Some(s),
            Entry::Nu => None,
        }
    }

    pub fn is_nu(&self) -> bool {
        matches!(self, Entry::Nu)
    }

    /// `ν` on an entry, with `ν(1ν) = 1`.
    pub fn nu(&self, proto: &S) -> Result<S> {
        match self {
            Entry::Plain(s) => s.nu(),
            Entry::Nu => Ok(proto.one_like()),
        }
    }
}

impl<S: SuperScalar> fmt::Display for Entry<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Plain(s) => write!(f, "{s}"),
            Entry::Nu => f.write_str("1ν"),
        }
    }
}

/// A `p|q`-index `I|R`: even column indices `I ⊆ {1..m}` and odd column
/// indices `R ⊆ {1..n}`, both 1-based and strictly increasing.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndexPair {
    pub i: Vec<usize>,
    pub r: Vec<usize>,
}

impl IndexPair {
    pub fn new(i: Vec<usize>, r: Vec<usize>) -> Result<Self> {
        for side in [&i, &r] {
            if side.contains(&0) || side.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::IndexOutOfRange(format!(
                    "index list {side:?} must be strictly increasing and 1-based"
                )));
            }
        }
        Ok(IndexPair { i, r })
    }

    pub fn p(&self) -> usize {
        self.i.len()
    }

    pub fn q(&self) -> usize {
        self.r.len()
    }

    pub fn is_standard(&self, k: usize) -> bool {
        self.p() == k
    }

    /// Parses `{1,2}|{3}`; `∅` or `{}` for an empty side.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad index pair `{s}`"));
        let (a, b) = s.split_once('|').ok_or_else(bad)?;
        let side = |t: &str| -> Result<Vec<usize>> {
            let t = t.trim();
            if t == "∅" {
                return Ok(Vec::new());
            }
            let inner = t
                .strip_prefix('{')
                .and_then(|t| t.strip_suffix('}'))
                .ok_or_else(bad)?;
            if inner.trim().is_empty() || inner.trim() == "∅" {
                return Ok(Vec::new());
            }
            inner
                .split(',')
                .map(|v| v.trim().parse::<usize>().map_err(|_| bad()))
                .collect()
        };
        IndexPair::new(side(a)?, side(b)?)
    }
}

impl fmt::Display for IndexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |v: &[usize]| {
            if v.is_empty() {
                "∅".to_string()
            } else {
                format!(
                    "{{{}}}",
                    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
                )
            }
        };
        write!(f, "{}|{}", side(&self.i), side(&self.r))
    }
}

impl std::str::FromStr for IndexPair {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        IndexPair::parse(s)
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct SuperMatrix<S> {
    row_split: [usize; 2],
    col_split: [usize; 2],
    entries: Vec<Vec<Entry<S>>>,
    proto: S,
}

impl<S: SuperScalar> SuperMatrix<S> {
    /// `proto` supplies the zero and unit of the coefficient ring.
    pub fn from_entries(
        row_split: [usize; 2],
        col_split: [usize; 2],
        entries: Vec<Vec<Entry<S>>>,
        proto: &S,
    ) -> Result<Self> {
        let rows = row_split[0] + row_split[1];
        let cols = col_split[0] + col_split[1];
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "expected {rows}x{cols} grid"
            )));
        }
        Ok(SuperMatrix {
            row_split,
            col_split,
            entries,
            proto: proto.zero_like(),
        })
    }

    pub fn from_plain(
        row_split: [usize; 2],
        col_split: [usize; 2],
        entries: Vec<Vec<S>>,
        proto: &S,
    ) -> Result<Self> {
        let entries = entries
            .into_iter()
            .map(|r| r.into_iter().map(Entry::Plain).collect())
            .collect();
        Self::from_entries(row_split, col_split, entries, proto)
    }

    pub fn zeros(row_split: [usize; 2], col_split: [usize; 2], proto: &S) -> Self {
        let rows = row_split[0] + row_split[1];
        let cols = col_split[0] + col_split[1];
        SuperMatrix {
            row_split,
            col_split,
            entries: vec![vec![Entry::Plain(proto.zero_like()); cols]; rows],
            proto: proto.zero_like(),
        }
    }

    pub fn identity(split: [usize; 2], proto: &S) -> Self {
        let mut m = Self::zeros(split, split, proto);
        for i in 0..split[0] + split[1] {
            m.entries[i][i] = Entry::Plain(proto.one_like());
        }
        m
    }

    /// Identity with `k` even rows and `p` even columns: diagonal entries
    /// whose row and column parities differ are `1ν`.
    pub fn nonstandard_identity(k: usize, l: usize, p: usize, proto: &S) -> Result<Self> {
        if p > k + l {
            return Err(Error::InvalidDimensions(format!("p={p} exceeds k+l={}", k + l)));
        }
        let mut m = Self::zeros([k, l], [p, k + l - p], proto);
        for i in 0..k + l {
            m.entries[i][i] = if (i < k) == (i < p) {
                Entry::Plain(proto.one_like())
            } else {
                Entry::Nu
            };
        }
        Ok(m)
    }

    pub fn row_split(&self) -> [usize; 2] {
        self.row_split
    }

    pub fn col_split(&self) -> [usize; 2] {
        self.col_split
    }

    pub fn rows(&self) -> usize {
        self.row_split[0] + self.row_split[1]
    }

    pub fn cols(&self) -> usize {
        self.col_split[0] + self.col_split[1]
    }

    pub fn proto(&self) -> &S {
        &self.proto
    }

    pub fn entry(&self, i: usize, j: usize) -> &Entry<S> {
        &self.entries[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: Entry<S>) {
        self.entries[i][j] = e;
    }

    pub fn entries(&self) -> &[Vec<Entry<S>>] {
        &self.entries
    }

    pub fn plain(&self, i: usize, j: usize) -> Result<&S> {
        self.entries[i][j].as_plain().ok_or(Error::NuEntriesPresent)
    }

    pub fn has_nu(&self) -> bool {
        self.entries.iter().flatten().any(Entry::is_nu)
    }

    pub fn row_parity(&self, i: usize) -> Parity {
        if i < self.row_split[0] {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn col_parity(&self, j: usize) -> Parity {
        if j < self.col_split[0] {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Parity an entry at `(i, j)` must have.
    pub fn position_parity(&self, i: usize, j: usize) -> Parity {
        self.row_parity(i).add(self.col_parity(j))
    }

    /// B1/B4 entries even, B2/B3 odd, `1ν` only off the diagonal blocks.
    pub fn validate(&self) -> Result<()> {
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                let p = self.position_parity(i, j);
                match &self.entries[i][j] {
                    Entry::Nu if p == Parity::Even => {
                        return Err(Error::Parity(format!("1ν in a diagonal block at ({i},{j})")))
                    }
                    Entry::Plain(s) if !s.is_of_parity(p) => {
                        return Err(Error::Parity(format!("entry ({i},{j}) = {s} is not {p:?}")))
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }

    pub fn map_plain<T: SuperScalar>(
        &self,
        proto: &T,
        f: impl Fn(&S) -> Result<T>,
    ) -> Result<SuperMatrix<T>> {
        let entries = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| match e {
                        Entry::Plain(s) => f(s).map(Entry::Plain),
                        Entry::Nu => Ok(Entry::Nu),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SuperMatrix::from_entries(self.row_split, self.col_split, entries, proto)
    }

    /// Replaces every `1ν` with a concrete odd element.
    pub fn resolve_nu(&self, one_nu: &S) -> SuperMatrix<S> {
        let mut out = self.clone();
        for e in out.entries.iter_mut().flatten() {
            if e.is_nu() {
                *e = Entry::Plain(one_nu.clone());
            }
        }
        out
    }

    /// Columns in the given order, with a new column split.
    pub fn select_columns(&self, cols: &[usize], col_split: [usize; 2]) -> SuperMatrix<S> {
        SuperMatrix {
            row_split: self.row_split,
            col_split,
            entries: self
                .entries
                .iter()
                .map(|row| cols.iter().map(|&j| row[j].clone()).collect())
                .collect(),
            proto: self.proto.clone(),
        }
    }

    /// Rows in the given order, with a new row split.
    pub fn select_rows(&self, rows: &[usize], row_split: [usize; 2]) -> SuperMatrix<S> {
        SuperMatrix {
            row_split,
            col_split: self.col_split,
            entries: rows.iter().map(|&i| self.entries[i].clone()).collect(),
            proto: self.proto.clone(),
        }
    }

    fn column_positions(&self, idx: &IndexPair) -> Result<Vec<usize>> {
        let [c0, c1] = self.col_split;
        let mut out = Vec::new();
        for &j in &idx.i {
            if j == 0 || j > c0 {
                return Err(Error::IndexOutOfRange(format!("even column {j} of {c0}")));
            }
            out.push(j - 1);
        }
        for &s in &idx.r {
            if s == 0 || s > c1 {
                return Err(Error::IndexOutOfRange(format!("odd column {s} of {c1}")));
            }
            out.push(c0 + s - 1);
        }
        Ok(out)
    }

    /// `M_{J|S}`: the columns in `J ∪ S`, each kept on its side.
    pub fn minor_m(&self, idx: &IndexPair) -> Result<SuperMatrix<S>> {
        let cols = self.column_positions(idx)?;
        Ok(self.select_columns(&cols, [idx.p(), idx.q()]))
    }

    /// `D_{J|S}`: the columns outside `J ∪ S`, in order.
    pub fn remainder_d(&self, idx: &IndexPair) -> Result<SuperMatrix<S>> {
        let taken = self.column_positions(idx)?;
        let c0 = self.col_split[0];
        let even: Vec<usize> = (0..c0).filter(|j| !taken.contains(j)).collect();
        let odd: Vec<usize> = (c0..self.cols()).filter(|j| !taken.contains(j)).collect();
        let split = [even.len(), odd.len()];
        let cols: Vec<usize> = even.into_iter().chain(odd).collect();
        Ok(self.select_columns(&cols, split))
    }

    /// `M′_{J|S}` for a target index with `p = |J|`: the columns where the
    /// target's own minor carries `1ν` cross the divider (to the front of
    /// the odd side when `p > k`, to the end of the even side when `p < k`)
    /// and their entries are replaced by their `ν`-images.
    pub fn minor_mprime(&self, idx: &IndexPair, k: usize) -> Result<SuperMatrix<S>> {
        let m = self.minor_m(idx)?;
        let p = idx.p();
        let n = m.cols();
        let (order, moved, split): (Vec<usize>, Vec<usize>, [usize; 2]) = if p > k {
            let moved: Vec<usize> = (k..p).collect();
            ((0..n).collect(), moved, [k, n - k])
        } else if p < k {
            let moved: Vec<usize> = (p..p + (k - p)).collect();
            let order = (0..p).chain(moved.iter().copied()).chain(p + (k - p)..n).collect();
            (order, moved, [k, n - k])
        } else {
            return m.ensure_no_nu().map(|_| m);
        };
        let mut out = m.select_columns(&order, split);
        for (new_j, &old_j) in order.iter().enumerate() {
            if !moved.contains(&old_j) {
                continue;
            }
            for i in 0..out.rows() {
                let v = out.entries[i][new_j].nu(&self.proto)?;
                out.entries[i][new_j] = Entry::Plain(v);
            }
        }
        if out.has_nu() {
            return Err(Error::ResidualNuSymbol);
        }
        Ok(out)
    }

    fn ensure_no_nu(&self) -> Result<()> {
        if self.has_nu() {
            Err(Error::ResidualNuSymbol)
        } else {
            Ok(())
        }
    }

    /// Body of the determinant is nonzero on each diagonal block, tested by
    /// attempting the inverse.
    pub fn is_invertible(&self) -> bool {
        smat_inv(self).is_ok()
    }
}

fn entry_product<S: SuperScalar>(a: &Entry<S>, b: &Entry<S>) -> Result<S> {
    match (a, b) {
        (Entry::Plain(x), Entry::Plain(y)) => Ok(x.mul(y)),
        (Entry::Plain(x), Entry::Nu) | (Entry::Nu, Entry::Plain(x)) => x.nu(),
        (Entry::Nu, Entry::Nu) => Err(Error::DoubleNu),
    }
}

/// Row-by-column product with `z·1ν = 1ν·z = ν(z)`.
pub fn smat_mul<S: SuperScalar>(a: &SuperMatrix<S>, b: &SuperMatrix<S>) -> Result<SuperMatrix<S>> {
    if a.col_split != b.row_split {
        return Err(Error::DimensionMismatch(format!(
            "column split {:?} against row split {:?}",
            a.col_split, b.row_split
        )));
    }
    let mut out = SuperMatrix::zeros(a.row_split, b.col_split, &a.proto);
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            let mut acc = a.proto.zero_like();
            for t in 0..a.cols() {
                let (x, y) = (&a.entries[i][t], &b.entries[t][j]);
                if matches!(x, Entry::Plain(s) if s.is_zero())
                    || matches!(y, Entry::Plain(s) if s.is_zero())
                {
                    continue;
                }
                acc = acc.add(&entry_product(x, y)?);
            }
            out.entries[i][j] = Entry::Plain(acc);
        }
    }
    Ok(out)
}

/// Gauss-Jordan inverse with body-invertible pivots.
pub fn smat_inv<S: SuperScalar>(a: &SuperMatrix<S>) -> Result<SuperMatrix<S>> {
    if a.row_split != a.col_split {
        return Err(Error::DimensionMismatch(format!(
            "inverse of a {:?}x{:?} matrix",
            a.row_split, a.col_split
        )));
    }
    if a.has_nu() {
        return Err(Error::NuEntriesPresent);
    }
    let n = a.rows();
    let mut m: Vec<Vec<S>> = a
        .entries
        .iter()
        .map(|r| r.iter().map(|e| e.as_plain().expect("checked").clone()).collect())
        .collect();
    let mut inv: Vec<Vec<S>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { a.proto.one_like() } else { a.proto.zero_like() })
                .collect()
        })
        .collect();
    for c in 0..n {
        let piv = (c..n)
            .find(|&r| !m[r][c].has_zero_body())
            .ok_or(Error::NotInvertible)?;
        m.swap(c, piv);
        inv.swap(c, piv);
        let pinv = m[c][c].inv()?;
        m[c] = m[c].iter().map(|x| pinv.mul(x)).collect();
        inv[c] = inv[c].iter().map(|x| pinv.mul(x)).collect();
        for r in 0..n {
            if r == c || m[r][c].is_zero() {
                continue;
            }
            let f = m[r][c].clone();
            for j in 0..n {
                let d = f.mul(&m[c][j]);
                m[r][j] = m[r][j].sub(&d);
                let d = f.mul(&inv[c][j]);
                inv[r][j] = inv[r][j].sub(&d);
            }
        }
    }
    SuperMatrix::from_plain(a.row_split, a.col_split, inv, &a.proto)
}

impl<S: SuperScalar> SuperMatrix<S> {
    fn cell_strings(&self) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect()
    }

    /// Single-line form such as `[e | 1, x]`; rows separated by `;`.
    pub fn to_inline(&self) -> String {
        let c0 = self.col_split[0];
        let rows: Vec<String> = self
            .cell_strings()
            .into_iter()
            .map(|r| {
                let even = r[..c0].join(", ");
                let odd = r[c0..].join(", ");
                match (even.is_empty(), odd.is_empty()) {
                    (true, _) => format!("| {odd}"),
                    (_, true) => format!("{even} |"),
                    _ => format!("{even} | {odd}"),
                }
            })
            .collect();
        format!("[{}]", rows.join("; "))
    }
}

/// Aligned block layout with a vertical divider between column parities and
/// a horizontal rule between row parities.
pub fn pretty_grid(cells: &[Vec<String>], row_split: [usize; 2], col_split: [usize; 2]) -> String {
    let cols = col_split[0] + col_split[1];
    let width: Vec<usize> = (0..cols)
        .map(|j| cells.iter().map(|r| r[j].chars().count()).max().unwrap_or(1).max(1))
        .collect();
    let mut lines = Vec::new();
    let render = |r: &[String]| {
        let mut s = String::from("[ ");
        for j in 0..cols {
            if j == col_split[0] && j > 0 {
                s.push_str("| ");
            }
            s.push_str(&format!("{:<w$} ", r[j], w = width[j]));
        }
        if col_split[1] == 0 {
            s.push_str("| ");
        }
        s.push(']');
        s
    };
    for (i, r) in cells.iter().enumerate() {
        if i == row_split[0] && i > 0 {
            let len = render(r).chars().count();
            lines.push(format!("[{}]", "-".repeat(len - 2)));
        }
        lines.push(render(r));
    }
    lines.join("\n")
}

impl<S: SuperScalar> fmt::Display for SuperMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&pretty_grid(&self.cell_strings(), self.row_split, self.col_split))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixRepr {
    pub row_split: [usize; 2],
    pub col_split: [usize; 2],
    pub entries: Vec<Vec<serde_json::Value>>,
}

const NU_TOKEN: &str = "1nu";

impl<S: SuperScalar + Serialize> SuperMatrix<S> {
    pub fn to_repr(&self) -> MatrixRepr {
        MatrixRepr {
            row_split: self.row_split,
            col_split: self.col_split,
            entries: self
                .entries
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|e| match e {
                            Entry::Nu => serde_json::Value::String(NU_TOKEN.into()),
                            Entry::Plain(s) => {
                                serde_json::to_value(s).expect("scalar serializes")
                            }
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

impl<S: SuperScalar + DeserializeOwned> SuperMatrix<S> {
    pub fn from_repr(repr: &MatrixRepr) -> Result<Self> {
        let mut proto = None;
        let entries = repr
            .entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|v| {
                        if v.as_str() == Some(NU_TOKEN) {
                            return Ok(Entry::Nu);
                        }
                        let s: S = serde_json::from_value(v.clone())
                            .map_err(|e| Error::Parse(e.to_string()))?;
                        proto.get_or_insert_with(|| s.zero_like());
                        Ok(Entry::Plain(s))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let proto = proto.ok_or_else(|| Error::Parse("matrix has no plain entry".into()))?;
        SuperMatrix::from_entries(repr.row_split, repr.col_split, entries, &proto)
    }
}

impl<S: SuperScalar + Serialize> Serialize for SuperMatrix<S> {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        self.to_repr().serialize(s)
    }
}

impl<'de, S: SuperScalar + DeserializeOwned> Deserialize<'de> for SuperMatrix<S> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(d)?;
        SuperMatrix::from_repr(&repr).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::superalgebra::SuperContext;

    fn ctx() -> Arc<SuperContext> {
        SuperContext::new(["x", "x1", "x2", "x3"], ["e1", "e2", "e3"]).unwrap()
    }

    fn f(c: &Arc<SuperContext>, n: &str) -> SuperFunction {
        if c.is_even_name(n) {
            SuperFunction::even_var(c, n).unwrap()
        } else {
            SuperFunction::odd_gen(c, n).unwrap()
        }
    }

    #[test]
    fn nu_rule_in_products() {
        let c = ctx();
        let e2 = f(&c, "e2");
        // row (ν(c)) times column (1ν) gives c
        let row = SuperMatrix::from_plain([1, 0], [0, 1], vec![vec![e2.nu().unwrap()]], &e2).unwrap();
        let col = SuperMatrix::from_entries([0, 1], [1, 0], vec![vec![Entry::Nu]], &e2).unwrap();
        let p = smat_mul(&row, &col).unwrap();
        assert_eq!(p.plain(0, 0).unwrap(), &e2);
        let nn = SuperMatrix::from_entries([0, 1], [1, 0], vec![vec![Entry::Nu]], &e2).unwrap();
        let nn2 = SuperMatrix::from_entries([1, 0], [0, 1], vec![vec![Entry::Nu]], &e2).unwrap();
        assert_eq!(smat_mul(&nn, &nn2), Err(Error::DoubleNu));
    }

    #[test]
    fn inverse_multiplies_back() {
        let c = ctx();
        let (x, e1) = (f(&c, "x"), f(&c, "e1"));
        let one = SuperFunction::one(&c);
        let a = SuperMatrix::from_plain([1, 1], [1, 1], vec![vec![x, e1.clone()], vec![e1, one.clone()]], &one)
            .unwrap();
        let inv = smat_inv(&a).unwrap();
        assert_eq!(smat_mul(&a, &inv).unwrap(), SuperMatrix::identity([1, 1], &one));
        assert_eq!(smat_mul(&inv, &a).unwrap(), SuperMatrix::identity([1, 1], &one));
        let odd = SuperMatrix::from_plain([1, 0], [1, 0], vec![vec![f(&c, "e1")]], &one).unwrap();
        assert_eq!(smat_inv(&odd), Err(Error::NotInvertible));
    }

    fn sample_label(c: &Arc<SuperContext>) -> SuperMatrix<SuperFunction> {
        // chart {1}|{1,2} of the 1|2-planes in 2|3-space
        let one = SuperFunction::one(c);
        let zero = SuperFunction::zero(c);
        let g = |n| Entry::Plain(f(c, n));
        let p = |s: &SuperFunction| Entry::Plain(s.clone());
        SuperMatrix::from_entries(
            [1, 2],
            [2, 3],
            vec![
                vec![p(&one), g("x1"), p(&zero), p(&zero), g("e3")],
                vec![p(&zero), g("e1"), p(&one), p(&zero), g("x2")],
                vec![p(&zero), g("e2"), p(&zero), p(&one), g("x3")],
            ],
            &one,
        )
        .unwrap()
    }

    #[test]
    fn minors_partition_columns() {
        let c = ctx();
        let a = sample_label(&c);
        a.validate().unwrap();
        let idx = IndexPair::parse("{1,2}|{3}").unwrap();
        let m = a.minor_m(&idx).unwrap();
        assert_eq!(m.to_inline(), "[1, x1 | e3; 0, e1 | x2; 0, e2 | x3]");
        let d = a.remainder_d(&idx).unwrap();
        assert_eq!(d.col_split(), [0, 2]);
        assert_eq!(m.cols() + d.cols(), a.cols());
        let mp = a.minor_mprime(&idx, 1).unwrap();
        assert_eq!(mp.col_split(), [1, 2]);
        assert_eq!(mp.plain(0, 1).unwrap(), &f(&c, "x1").nu().unwrap());
        assert_eq!(mp.plain(1, 1).unwrap(), &f(&c, "e1").nu().unwrap());
    }

    #[test]
    fn index_pair_round_trip() {
        let idx = IndexPair::parse("∅|{1,2}").unwrap();
        assert_eq!(idx.to_string(), "∅|{1,2}");
        assert_eq!(IndexPair::parse("{}|{2}").unwrap().r, vec![2]);
        assert!(IndexPair::parse("{2,1}|∅").is_err());
    }

    #[test]
    fn matrix_json_round_trip() {
        let c = ctx();
        let one = SuperFunction::one(&c);
        let m = SuperMatrix::nonstandard_identity(1, 2, 2, &one).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert!(s.contains("1nu"));
        let back: SuperMatrix<SuperFunction> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }
}
