//! Exact dense linear algebra over the rationals.
//!
//! Everything here works with canonical reduced row echelon forms: two
//! row spaces are equal exactly when their echelon bases are identical,
//! which is what the identity-slice comparisons rely on.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical text form: `n` for integers, `n/d` otherwise.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |t: &str| t.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad rational {s:?}")));
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(parse_int(n)?, d))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// Dense rational matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// An empty (0-row) matrix with the given column count.
    pub fn empty(cols: usize) -> Self {
        Self::zeros(0, cols)
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(r.len(), cols));
            }
            data.extend(r);
        }
        Ok(RationalMatrix { rows: n, cols, data })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect();
        Self::from_rows(cols, rows).expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Rows stacked on top of each other.
    pub fn stack(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(self.cols, other.cols));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(RationalMatrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.rows).map(|r| dot(self.row(r), v)).collect()
    }

    pub fn rank(&self) -> usize {
        rref(self).rows()
    }

    /// Rows as canonical rational strings.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|r| self.row(r).iter().map(format_rational).collect()).collect()
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalMatrix {}x{} ", self.rows, self.cols)?;
        f.debug_list().entries(self.to_strings()).finish()
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).filter(|(x, _)| !x.is_zero()).map(|(x, y)| x * y).sum()
}

fn leading(row: &[Rational]) -> Option<usize> {
    row.iter().position(|v| !v.is_zero())
}

/// Incremental row reducer.
///
/// Rows are fed one at a time; the reducer keeps its pivot rows in fully
/// reduced echelon form at every step, so it never holds more than `cols`
/// rows regardless of how many are streamed through it.
#[derive(Clone, Debug)]
pub struct RowReducer {
    cols: usize,
    pivots: BTreeMap<usize, Vec<Rational>>,
}

impl RowReducer {
    pub fn new(cols: usize) -> Self {
        RowReducer { cols, pivots: BTreeMap::new() }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_full(&self) -> bool {
        self.pivots.len() == self.cols
    }

    /// Reduces `row` against the current pivots and returns the remainder.
    pub fn reduce(&self, mut row: Vec<Rational>) -> Vec<Rational> {
        for (&p, prow) in &self.pivots {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(prow).skip(p) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        row
    }

    /// Whether `row` already lies in the span of the pivots.
    pub fn contains(&self, row: &[Rational]) -> bool {
        leading(&self.reduce(row.to_vec())).is_none()
    }

    /// Adds a row; returns true if it increased the rank.
    pub fn push(&mut self, row: Vec<Rational>) -> Result<bool> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch(row.len(), self.cols));
        }
        if self.is_full() {
            return Ok(false);
        }
        let mut row = self.reduce(row);
        let Some(p) = leading(&row) else { return Ok(false) };
        let inv = row[p].recip();
        for x in row.iter_mut().skip(p) {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for prow in self.pivots.values_mut() {
            if prow[p].is_zero() {
                continue;
            }
            let f = prow[p].clone();
            for (x, y) in prow.iter_mut().zip(&row).skip(p) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.pivots.insert(p, row);
        Ok(true)
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    /// The canonical reduced echelon basis, ordered by pivot column.
    pub fn basis(&self) -> RationalMatrix {
        let rows = self.pivots.values().cloned().collect();
        RationalMatrix::from_rows(self.cols, rows).expect("pivot rows have reducer width")
    }

    /// Basis of `{v | r·v = 0 for every pushed row r}`.
    pub fn kernel(&self) -> RationalMatrix {
        kernel_from_rref(&self.basis())
    }
}

/// Reduced row echelon form with zero rows trimmed.
///
/// Among the candidate rows for each pivot column the one whose entry has
/// the smallest numerator magnitude is chosen, which keeps intermediate
/// coefficients small; the final form is canonical regardless.
pub fn rref(m: &RationalMatrix) -> RationalMatrix {
    let mut rows = m.row_vecs();
    let cols = m.cols();
    let mut out: Vec<Vec<Rational>> = Vec::new();
    let mut col = 0;
    while col < cols && !rows.is_empty() {
        let best = rows
            .iter()
            .enumerate()
            .filter(|(_, r)| !r[col].is_zero())
            .min_by(|(_, a), (_, b)| {
                let ka = (a[col].numer().abs(), a[col].denom().clone());
                let kb = (b[col].numer().abs(), b[col].denom().clone());
                ka.cmp(&kb)
            })
            .map(|(i, _)| i);
        let Some(bi) = best else {
            col += 1;
            continue;
        };
        let mut prow = rows.swap_remove(bi);
        let inv = prow[col].recip();
        for x in prow.iter_mut().skip(col) {
            *x *= &inv;
        }
        for r in rows.iter_mut().chain(out.iter_mut()) {
            if r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for (x, y) in r.iter_mut().zip(&prow).skip(col) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        rows.retain(|r| leading(r).is_some());
        out.push(prow);
        col += 1;
    }
    RationalMatrix::from_rows(cols, out).expect("rows keep matrix width")
}

fn kernel_from_rref(r: &RationalMatrix) -> RationalMatrix {
    let cols = r.cols();
    let pivots: Vec<usize> = (0..r.rows()).map(|i| leading(r.row(i)).expect("rref rows are nonzero")).collect();
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -r.get(i, free).clone();
        }
        basis.push(v);
    }
    rref(&RationalMatrix::from_rows(cols, basis).expect("kernel vectors have matrix width"))
}

/// Canonical echelon basis of `{v | M·v = 0}`.
pub fn nullspace(m: &RationalMatrix) -> RationalMatrix {
    kernel_from_rref(&rref(m))
}

/// Row spaces compared through their canonical echelon bases.
pub fn subspace_equal(a: &RationalMatrix, b: &RationalMatrix) -> Result<bool> {
    if a.cols() != b.cols() {
        return Err(Error::DimensionMismatch(a.cols(), b.cols()));
    }
    Ok(rref(a) == rref(b))
}

/// Whether the row space of `a` is contained in that of `b`.
pub fn subspace_contains(b: &RationalMatrix, a: &RationalMatrix) -> Result<bool> {
    if a.cols() != b.cols() {
        return Err(Error::DimensionMismatch(a.cols(), b.cols()));
    }
    let mut red = RowReducer::new(b.cols());
    for r in b.row_vecs() {
        red.push(r)?;
    }
    Ok((0..a.rows()).all(|i| red.contains(a.row(i))))
}

/// Intersection of row spaces: the kernel of the stacked complements.
pub fn subspace_intersect(a: &RationalMatrix, b: &RationalMatrix) -> Result<RationalMatrix> {
    if a.cols() != b.cols() {
        return Err(Error::DimensionMismatch(a.cols(), b.cols()));
    }
    let constraints = nullspace(a).stack(&nullspace(b))?;
    Ok(nullspace(&constraints))
}

/// Intersection of any number of row spaces in a common ambient space.
pub fn subspace_intersect_all(cols: usize, spaces: &[RationalMatrix]) -> Result<RationalMatrix> {
    let mut red = RowReducer::new(cols);
    for s in spaces {
        if s.cols() != cols {
            return Err(Error::DimensionMismatch(s.cols(), cols));
        }
        for r in nullspace(s).row_vecs() {
            red.push(r)?;
        }
    }
    Ok(red.kernel())
}
