//! Integer matrices, Smith normal form, and the critical and Smith groups.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::critical::{critical_ideal_gens, CriticalError};
use crate::digraph::{Digraph, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("rows have different lengths ({0} and {1})")]
    Ragged(usize, usize),
    #[error("index {index} outside 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("matrices of shape {0}x{1} and {2}x{3} cannot be multiplied")]
    Shape(usize, usize, usize, usize),
    #[error("dimension {0} exceeds the minor enumeration limit of 16")]
    TooLarge(usize),
    #[error(transparent)]
    Critical(#[from] CriticalError),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self, MatrixError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(MatrixError::Ragged(cols, row.len()));
            }
            data.extend(row.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Rows of integers separated by whitespace or commas, one row per line,
    /// `#` starting a comment; or a JSON array of arrays.
    pub fn parse(text: &str) -> Result<Self, MatrixError> {
        if text.trim_start().starts_with('[') {
            let rows: Vec<Vec<serde_json::Value>> = serde_json::from_str(text).map_err(|e| MatrixError::Parse {
                line: e.line(),
                reason: e.to_string(),
            })?;
            let mut parsed = Vec::with_capacity(rows.len());
            for (r, row) in rows.iter().enumerate() {
                let mut out = Vec::with_capacity(row.len());
                for v in row {
                    let text = match v {
                        serde_json::Value::Number(n) => n.to_string(),
                        serde_json::Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    out.push(text.parse::<BigInt>().map_err(|_| MatrixError::Parse {
                        line: r + 1,
                        reason: format!("not an integer: {text}"),
                    })?);
                }
                parsed.push(out);
            }
            return Self::from_rows(&parsed);
        }
        let mut parsed = Vec::new();
        for (k, line) in text.lines().enumerate() {
            let body = line.split('#').next().unwrap_or("");
            let fields: Vec<&str> = body.split(|c: char| c == ',' || c.is_whitespace()).filter(|f| !f.is_empty()).collect();
            if fields.is_empty() {
                continue;
            }
            let row = fields
                .iter()
                .map(|f| {
                    f.parse::<BigInt>().map_err(|_| MatrixError::Parse {
                        line: k + 1,
                        reason: format!("not an integer: {f}"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            if let Some(first) = parsed.first().map(Vec::len) {
                if first != row.len() {
                    return Err(MatrixError::Parse {
                        line: k + 1,
                        reason: format!("expected {first} entries, found {}", row.len()),
                    });
                }
            }
            parsed.push(row);
        }
        Self::from_rows(&parsed)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[BigInt]>::to_vec).collect()
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                data.push(self.get(r, c).clone());
            }
        }
        IntMatrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::Shape(self.rows, self.cols, other.rows, other.cols));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// Fraction-free (Bareiss) elimination; `None` for a non-square matrix.
    pub fn determinant(&self) -> Option<BigInt> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(BigInt::one());
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return Some(BigInt::zero());
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Some(sign * &a[n - 1][n - 1])
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// `row[dst] += k * row[src]`.
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for c in 0..self.cols {
            let v = k * &self.data[src * self.cols + c];
            self.data[dst * self.cols + c] += v;
        }
    }

    /// `col[dst] += k * col[src]`.
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for r in 0..self.rows {
            let v = k * &self.data[r * self.cols + src];
            self.data[r * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -&self.data[r * self.cols + c];
            self.data[r * self.cols + c] = v;
        }
    }

    /// Rows `i, j` become `[[p, q], [s, t]] * [row_i; row_j]`.
    fn mix_rows(&mut self, i: usize, j: usize, m: [&BigInt; 4]) {
        for c in 0..self.cols {
            let a = self.data[i * self.cols + c].clone();
            let b = self.data[j * self.cols + c].clone();
            self.data[i * self.cols + c] = m[0] * &a + m[1] * &b;
            self.data[j * self.cols + c] = m[2] * &a + m[3] * &b;
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_rows() {
            let cells: Vec<String> = row.iter().map(BigInt::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// `A(D)`: 1 at `(u, v)` for every arc `u -> v`.
pub fn adjacency_matrix(d: &Digraph) -> IntMatrix {
    let n = d.vertex_count();
    let mut m = IntMatrix::zeros(n, n);
    for (u, v) in d.arcs() {
        m.set(u, v, BigInt::one());
    }
    m
}

/// `L(D) = diag(out-degrees) - A(D)`.
pub fn laplacian_matrix(d: &Digraph) -> IntMatrix {
    let mut m = adjacency_matrix(d);
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let v = -m.get(r, c);
            m.set(r, c, v);
        }
    }
    for (u, deg) in d.out_degrees().into_iter().enumerate() {
        m.set(u, u, BigInt::from(deg));
    }
    m
}

// ---------------------------------------------------------------------------
// Smith normal form

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    /// Nonzero invariant factors, positive, each dividing the next.
    pub factors: Vec<BigInt>,
    pub rank: usize,
    /// Zero entries on the diagonal of length `min(rows, cols)`.
    pub zero_count: usize,
    /// With transforms requested, `u * m * v` is the diagonal form.
    pub u: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
}

impl SnfResult {
    /// The full diagonal: factors, then zeros.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let mut d = self.factors.clone();
        d.extend(std::iter::repeat_n(BigInt::zero(), self.zero_count));
        d
    }

    pub fn is_divisibility_chain(&self) -> bool {
        self.factors.iter().all(|f| f.is_positive()) && self.factors.windows(2).all(|w| divides(&w[0], &w[1]))
    }
}

impl fmt::Display for SnfResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "factors={} rank={} zeros={}", bracketed(&self.factors), self.rank, self.zero_count)
    }
}

fn bracketed(xs: &[BigInt]) -> String {
    let parts: Vec<String> = xs.iter().map(BigInt::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn divides(a: &BigInt, b: &BigInt) -> bool {
    if a.is_zero() {
        b.is_zero()
    } else {
        b.is_multiple_of(a)
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    snf(m, false)
}

pub fn smith_normal_form_with_transforms(m: &IntMatrix) -> SnfResult {
    snf(m, true)
}

struct Work {
    a: IntMatrix,
    u: Option<IntMatrix>,
    v: Option<IntMatrix>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
    }

    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_row(dst, src, k);
        if let Some(u) = &mut self.u {
            u.add_row(dst, src, k);
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_col(dst, src, k);
        if let Some(v) = &mut self.v {
            v.add_col(dst, src, k);
        }
    }

    fn negate_row(&mut self, r: usize) {
        self.a.negate_row(r);
        if let Some(u) = &mut self.u {
            u.negate_row(r);
        }
    }

    fn mix_rows(&mut self, i: usize, j: usize, m: [&BigInt; 4]) {
        self.a.mix_rows(i, j, m);
        if let Some(u) = &mut self.u {
            u.mix_rows(i, j, m);
        }
    }

    /// Smallest nonzero magnitude in the trailing block from `(t, t)`,
    /// first in row-major order among ties.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for r in t..self.a.rows {
            for c in t..self.a.cols {
                let x = self.a.get(r, c);
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(br, bc)| x.magnitude() < self.a.get(br, bc).magnitude()) {
                    best = Some((r, c));
                }
            }
        }
        best
    }
}

fn snf(m: &IntMatrix, transforms: bool) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        a: m.clone(),
        u: transforms.then(|| IntMatrix::identity(rows)),
        v: transforms.then(|| IntMatrix::identity(cols)),
    };
    let len = rows.min(cols);
    let mut rank = 0;
    for t in 0..len {
        while let Some((r, c)) = w.pivot(t) {
            w.swap_rows(t, r);
            w.swap_cols(t, c);
            let p = w.a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = w.a.get(i, t) / &p;
                if !q.is_zero() {
                    w.add_row(i, t, &-q);
                }
                clean &= w.a.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                let q = w.a.get(t, j) / &p;
                if !q.is_zero() {
                    w.add_col(j, t, &-q);
                }
                clean &= w.a.get(t, j).is_zero();
            }
            if clean {
                rank = t + 1;
                break;
            }
        }
        if rank <= t {
            break;
        }
    }

    // gcd/lcm repair so that each factor divides the next
    for i in 0..rank {
        for j in i + 1..rank {
            let a = w.a.get(i, i).clone();
            let b = w.a.get(j, j).clone();
            if divides(&a, &b) {
                continue;
            }
            let e = a.extended_gcd(&b);
            let (g, s, tt) = (e.gcd, e.x, e.y);
            let one = BigInt::one();
            w.add_col(i, j, &one);
            let (bg, ag) = (-(&b / &g), &a / &g);
            w.mix_rows(i, j, [&s, &tt, &bg, &ag]);
            let k = -(&tt * &b / &g);
            w.add_col(j, i, &k);
        }
    }
    for i in 0..rank {
        if w.a.get(i, i).is_negative() {
            w.negate_row(i);
        }
    }
    SnfResult {
        factors: (0..rank).map(|i| w.a.get(i, i).clone()).collect(),
        rank,
        zero_count: len - rank,
        u: w.u,
        v: w.v,
    }
}

/// `Delta_i(M)`: gcd of all `i x i` minors, by direct enumeration.
pub fn gcd_minors(m: &IntMatrix, i: usize) -> Result<BigInt, MatrixError> {
    let max = m.rows().min(m.cols());
    if i == 0 || i > max {
        return Err(MatrixError::IndexOutOfRange { index: i, max });
    }
    if m.rows().max(m.cols()) > 16 {
        return Err(MatrixError::TooLarge(m.rows().max(m.cols())));
    }
    let row_sets = VertexSet::subsets_of_size(m.rows(), i);
    let col_sets = VertexSet::subsets_of_size(m.cols(), i);
    let mut g = BigInt::zero();
    for rs in &row_sets {
        let r: Vec<usize> = rs.iter().collect();
        for cs in &col_sets {
            let c: Vec<usize> = cs.iter().collect();
            let det = m.submatrix(&r, &c).determinant().expect("square");
            g = g.gcd(&det);
            if g.is_one() {
                return Ok(g);
            }
        }
    }
    Ok(g)
}

/// `f_i = Delta_i / Delta_{i-1}` for every `i` up to the last nonzero
/// `Delta_i`.
pub fn invariant_factors_from_minors(m: &IntMatrix) -> Result<Vec<BigInt>, MatrixError> {
    let mut out = Vec::new();
    let mut prev = BigInt::one();
    for i in 1..=m.rows().min(m.cols()) {
        let d = gcd_minors(m, i)?;
        if d.is_zero() {
            break;
        }
        out.push(&d / &prev);
        prev = d;
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// groups

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSummary {
    /// Nonzero invariant factors among the indices read.
    pub factors: Vec<BigInt>,
    /// Rank of the free part of the cokernel.
    pub free_rank: usize,
    pub unit_count: usize,
    /// Zero factors among the indices read.
    pub zero_factors: usize,
}

impl GroupSummary {
    fn from_snf(snf: &SnfResult, n: usize, indices: usize) -> Self {
        let diag = snf.diagonal();
        let read = &diag[..indices.min(diag.len())];
        let factors: Vec<BigInt> = read.iter().filter(|f| !f.is_zero()).cloned().collect();
        GroupSummary {
            unit_count: factors.iter().filter(|f| f.is_one()).count(),
            zero_factors: read.len() - factors.len(),
            factors,
            free_rank: n - snf.rank,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "factors": self.factors.iter().map(json_int).collect::<Vec<_>>(),
            "free_rank": self.free_rank,
            "unit_count": self.unit_count,
        })
    }
}

fn json_int(x: &BigInt) -> serde_json::Value {
    match x.to_i64() {
        Some(v) => v.into(),
        None => x.to_string().into(),
    }
}

impl fmt::Display for GroupSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "factors={} free_rank={} unit_count={}",
            bracketed(&self.factors),
            self.free_rank,
            self.unit_count
        )
    }
}

/// Invariant factors `f_1 .. f_{n-1}` of `L(D)`; `unit_count` is read over
/// those indices and the free rank is reported apart.
pub fn critical_group(d: &Digraph) -> GroupSummary {
    let n = d.vertex_count();
    GroupSummary::from_snf(&smith_normal_form(&laplacian_matrix(d)), n, n - 1)
}

/// Invariant factors of `A(D)`, all `n` of them.
pub fn smith_group(d: &Digraph) -> GroupSummary {
    let n = d.vertex_count();
    GroupSummary::from_snf(&smith_normal_form(&adjacency_matrix(d)), n, n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointKind {
    Outdegree,
    Zero,
}

/// gcd of the `i`-th critical ideal's generators evaluated at the
/// out-degree vector or at zero.
pub fn evaluation_bridge(d: &Digraph, i: usize, kind: PointKind) -> Result<BigInt, MatrixError> {
    let n = d.vertex_count();
    if i == 0 || i + 1 > n {
        return Err(MatrixError::IndexOutOfRange { index: i, max: n.saturating_sub(1) });
    }
    let point: Vec<BigInt> = match kind {
        PointKind::Outdegree => d.out_degrees().into_iter().map(BigInt::from).collect(),
        PointKind::Zero => vec![BigInt::zero(); n],
    };
    let mut g = BigInt::zero();
    for p in critical_ideal_gens(d, i)? {
        g = g.gcd(&p.evaluate(&point).expect("point has one coordinate per vertex"));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn p2() -> Digraph {
        Digraph::from_arcs(2, [(0, 1)]).unwrap()
    }

    fn c2() -> Digraph {
        Digraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap()
    }

    #[test]
    fn matrix_examples() {
        assert_eq!(laplacian_matrix(&p2()), mat(&[&[1, -1], &[0, 0]]));
        assert_eq!(adjacency_matrix(&c2()), mat(&[&[0, 1], &[1, 0]]));
    }

    #[test]
    fn snf_examples() {
        assert_eq!(smith_normal_form(&mat(&[&[2, 0], &[0, 3]])).factors, ints(&[1, 6]));
        let z = smith_normal_form(&IntMatrix::zeros(3, 2));
        assert_eq!((z.rank, z.zero_count), (0, 2));
        let k3 = mat(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]]);
        let s = smith_normal_form(&k3);
        assert_eq!(s.diagonal(), ints(&[1, 3, 0]));
    }

    #[test]
    fn transforms_diagonalize() {
        let m = mat(&[&[4, 6, 2], &[2, -8, 0], &[6, 1, 3], &[0, 2, 5]]);
        let s = smith_normal_form_with_transforms(&m);
        let (u, v) = (s.u.clone().unwrap(), s.v.clone().unwrap());
        let d = u.mul(&m).unwrap().mul(&v).unwrap();
        let diag = s.diagonal();
        for (r, row) in d.to_rows().iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                let want = if r == c { diag[r].clone() } else { BigInt::zero() };
                assert_eq!(x, &want);
            }
        }
        assert_eq!(u.determinant().unwrap().abs(), BigInt::one());
        assert_eq!(v.determinant().unwrap().abs(), BigInt::one());
    }

    #[test]
    fn gcd_minor_examples() {
        let l = laplacian_matrix(&p2());
        assert_eq!(gcd_minors(&l, 1).unwrap(), BigInt::one());
        assert_eq!(gcd_minors(&l, 2).unwrap(), BigInt::zero());
        assert_eq!(gcd_minors(&adjacency_matrix(&c2()), 2).unwrap(), BigInt::one());
        assert!(gcd_minors(&l, 3).is_err());
        assert!(gcd_minors(&l, 0).is_err());
    }

    #[test]
    fn bareiss_determinant() {
        assert_eq!(mat(&[&[0, 2, 1], &[3, 0, 0], &[1, 1, 1]]).determinant().unwrap(), BigInt::from(-3));
        assert_eq!(mat(&[&[1, 2], &[2, 4]]).determinant().unwrap(), BigInt::zero());
    }

    #[test]
    fn group_examples() {
        let k = critical_group(&c2());
        assert_eq!((k.factors.clone(), k.unit_count, k.free_rank), (ints(&[1]), 1, 1));
        assert_eq!(smith_group(&c2()).unit_count, 2);
        assert_eq!(smith_group(&p2()).unit_count, 1);
        let k3 = Digraph::from_arcs(3, [(0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1)]).unwrap();
        assert_eq!(critical_group(&k3).to_string(), "factors=[1,3] free_rank=1 unit_count=1");
        assert_eq!(
            critical_group(&k3).to_json().to_string(),
            r#"{"factors":[1,3],"free_rank":1,"unit_count":1}"#
        );
    }

    #[test]
    fn bridge_examples() {
        assert_eq!(evaluation_bridge(&p2(), 1, PointKind::Outdegree).unwrap(), BigInt::one());
        assert_eq!(evaluation_bridge(&c2(), 1, PointKind::Zero).unwrap(), BigInt::one());
        let tt = Digraph::from_arcs(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(evaluation_bridge(&tt, 2, PointKind::Outdegree).unwrap(), BigInt::from(2));
        assert_eq!(gcd_minors(&laplacian_matrix(&tt), 2).unwrap(), BigInt::from(2));
        assert!(evaluation_bridge(&tt, 3, PointKind::Zero).is_err());
    }

    #[test]
    fn parse_formats() {
        let m = IntMatrix::parse("# a comment\n1, 2 3\n\n4 5 -6 # trailing\n").unwrap();
        assert_eq!(m, mat(&[&[1, 2, 3], &[4, 5, -6]]));
        assert_eq!(IntMatrix::parse("[[1,2],[3,4]]").unwrap(), mat(&[&[1, 2], &[3, 4]]));
        assert!(matches!(IntMatrix::parse("1 2\n3\n"), Err(MatrixError::Parse { line: 2, .. })));
        assert!(IntMatrix::parse("1 x\n").is_err());
    }
}
