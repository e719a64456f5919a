//! Dense matrices over the exact rationals, with the decision procedures
//! (determinant, rank, kernel, linear solve) the rest of the crate builds on.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::Error as DeError;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::Rational;

/// A dense row-major matrix of exact rationals.
///
/// Equality is entrywise exact equality. All operations are pure; values are
/// immutable once built apart from the explicit `set` used by builders.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        RationalMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|row| row.len() == c),
            "all rows must have equal length"
        );
        RationalMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds a matrix from a flat row-major slice of integers.
    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows*cols");
        RationalMatrix {
            rows,
            cols,
            entries: data.iter().map(|&n| Rational::from(n)).collect(),
        }
    }

    /// Builds a matrix from a flat row-major slice of `(numerator, denominator)` pairs.
    pub fn from_ratios(rows: usize, cols: usize, data: &[(i64, i64)]) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows*cols");
        RationalMatrix {
            rows,
            cols,
            entries: data.iter().map(|&(p, q)| Rational::new(p, q)).collect(),
        }
    }

    /// A single column vector.
    pub fn column(entries: Vec<Rational>) -> Self {
        RationalMatrix {
            rows: entries.len(),
            cols: 1,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rational::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.get(i, j).is_one()
                    } else {
                        self.get(i, j).is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) * factor)
    }

    pub fn trace(&self) -> Result<Rational> {
        self.require_square()?;
        Ok((0..self.rows).map(|i| self.get(i, i).clone()).sum())
    }

    /// Row-major flattening, the coordinate vector used for span arithmetic.
    pub fn vectorize(&self) -> Vec<Rational> {
        self.entries.clone()
    }

    pub fn from_vectorized(rows: usize, cols: usize, entries: Vec<Rational>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        RationalMatrix {
            rows,
            cols,
            entries,
        }
    }

    /// Exact k-th power of a square matrix.
    pub fn pow(&self, k: usize) -> Result<Self> {
        self.require_square()?;
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = mat_mul(&acc, self)?;
        }
        Ok(acc)
    }

    /// Exact inverse via Gauss-Jordan; fails on singular input.
    pub fn inverse(&self) -> Result<Self> {
        self.require_square()?;
        let n = self.rows;
        let augmented = self.augment(&Self::identity(n));
        let reduced = augmented.reduced_row_echelon();
        for i in 0..n {
            if !reduced.matrix.get(i, i).is_one() {
                return Err(Error::Singular);
            }
        }
        Ok(Self::from_fn(n, n, |i, j| {
            reduced.matrix.get(i, n + j).clone()
        }))
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    fn augment(&self, right: &Self) -> Self {
        assert_eq!(self.rows, right.rows);
        Self::from_fn(self.rows, self.cols + right.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                right.get(i, j - self.cols).clone()
            }
        })
    }

    /// Reduced row echelon form with the pivot columns, computed exactly.
    /// Pivot choice is the first nonzero entry in column scan order, so the
    /// output is deterministic.
    fn reduced_row_echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row >= m.rows {
                break;
            }
            let Some(found) = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(found, pivot_row);
            let inv = m.get(pivot_row, col).inverse().expect("nonzero pivot");
            for j in col..m.cols {
                let scaled = m.get(pivot_row, j) * &inv;
                m.set(pivot_row, j, scaled);
            }
            for r in 0..m.rows {
                if r == pivot_row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for j in col..m.cols {
                    let updated = m.get(r, j) - &(&factor * m.get(pivot_row, j));
                    m.set(r, j, updated);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        Echelon { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

struct Echelon {
    matrix: RationalMatrix,
    pivots: Vec<usize>,
}

/// Exact matrix product; errors when the inner dimensions disagree.
pub fn mat_mul(a: &RationalMatrix, b: &RationalMatrix) -> Result<RationalMatrix> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch {
            left_rows: a.rows,
            left_cols: a.cols,
            right_rows: b.rows,
            right_cols: b.cols,
        });
    }
    let mut out = RationalMatrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let lhs = a.get(i, k);
            if lhs.is_zero() {
                continue;
            }
            for j in 0..b.cols {
                let rhs = b.get(k, j);
                if rhs.is_zero() {
                    continue;
                }
                let mut acc = out.get(i, j).clone();
                acc += &(lhs * rhs);
                out.set(i, j, acc);
            }
        }
    }
    Ok(out)
}

/// Exact determinant by fraction-free (Bareiss) elimination.
///
/// Pivot choice is the first nonzero entry in column scan order; row swaps
/// flip the sign. Over the rationals every Bareiss division is exact.
pub fn det(a: &RationalMatrix) -> Result<Rational> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    let n = a.rows;
    if n == 0 {
        return Ok(Rational::one());
    }
    let mut m = a.clone();
    let mut sign = false;
    let mut previous_pivot = Rational::one();
    for k in 0..n - 1 {
        let Some(found) = (k..n).find(|&r| !m.get(r, k).is_zero()) else {
            return Ok(Rational::zero());
        };
        if found != k {
            m.swap_rows(found, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let numerator = &(m.get(i, j) * m.get(k, k)) - &(m.get(i, k) * m.get(k, j));
                m.set(i, j, &numerator / &previous_pivot);
            }
            m.set(i, k, Rational::zero());
        }
        previous_pivot = m.get(k, k).clone();
    }
    let value = m.get(n - 1, n - 1).clone();
    Ok(if sign { -value } else { value })
}

/// Exact row rank over the rationals.
pub fn rank(a: &RationalMatrix) -> usize {
    a.reduced_row_echelon().pivots.len()
}

/// A basis of the right kernel `{ v : a v = 0 }`, one column vector per
/// free column of the reduced echelon form.
pub fn kernel_basis(a: &RationalMatrix) -> Vec<RationalMatrix> {
    let Echelon { matrix, pivots } = a.reduced_row_echelon();
    let free: Vec<usize> = (0..a.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Rational::zero(); a.cols];
            v[fc] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -matrix.get(row, fc);
            }
            RationalMatrix::column(v)
        })
        .collect()
}

/// Outcome of an exact linear solve `a x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    /// Exactly one solution.
    Unique(RationalMatrix),
    /// A particular solution plus a basis of the kernel of `a`.
    Affine {
        particular: RationalMatrix,
        kernel: Vec<RationalMatrix>,
    },
    Inconsistent,
}

impl LinearSolution {
    /// The particular solution, when the system is solvable.
    pub fn particular(&self) -> Option<&RationalMatrix> {
        match self {
            LinearSolution::Unique(x) => Some(x),
            LinearSolution::Affine { particular, .. } => Some(particular),
            LinearSolution::Inconsistent => None,
        }
    }
}

/// Classifies and solves `a x = b` exactly. `b` may carry several
/// right-hand sides as columns.
pub fn solve_linear(a: &RationalMatrix, b: &RationalMatrix) -> Result<LinearSolution> {
    if a.rows != b.rows {
        return Err(Error::DimensionMismatch {
            left_rows: a.rows,
            left_cols: a.cols,
            right_rows: b.rows,
            right_cols: b.cols,
        });
    }
    let Echelon { matrix, pivots } = a.augment(b).reduced_row_echelon();
    if pivots.iter().any(|&c| c >= a.cols) {
        return Ok(LinearSolution::Inconsistent);
    }
    // Free variables are set to zero in the particular solution.
    let mut particular = RationalMatrix::zeros(a.cols, b.cols);
    for (row, &pc) in pivots.iter().enumerate() {
        for j in 0..b.cols {
            particular.set(pc, j, matrix.get(row, a.cols + j).clone());
        }
    }
    if pivots.len() == a.cols {
        Ok(LinearSolution::Unique(particular))
    } else {
        Ok(LinearSolution::Affine {
            particular,
            kernel: kernel_basis(a),
        })
    }
}

impl Add<&RationalMatrix> for &RationalMatrix {
    type Output = RationalMatrix;
    fn add(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch in +"
        );
        RationalMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + rhs.get(i, j))
    }
}

impl Sub<&RationalMatrix> for &RationalMatrix {
    type Output = RationalMatrix;
    fn sub(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch in -"
        );
        RationalMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - rhs.get(i, j))
    }
}

impl Mul<&RationalMatrix> for &RationalMatrix {
    type Output = RationalMatrix;
    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        mat_mul(self, rhs).expect("shape mismatch in *")
    }
}

impl Neg for &RationalMatrix {
    type Output = RationalMatrix;
    fn neg(self) -> RationalMatrix {
        RationalMatrix::from_fn(self.rows, self.cols, |i, j| -self.get(i, j))
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect();
        let widths: Vec<usize> = (0..self.cols)
            .map(|j| rendered.iter().map(|row| row[j].len()).max().unwrap_or(0))
            .collect();
        for row in &rendered {
            write!(f, "[")?;
            for (j, cell) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{cell:>width$}", width = widths[j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalMatrix({}x{})\n{}", self.rows, self.cols, self)
    }
}

// Shared wire format: {"rows": n, "cols": m, "entries": [["p/q", ...], ...]},
// row-major, rationals as reduced strings.
impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut state = serializer.serialize_struct("RationalMatrix", 3)?;
        state.serialize_field("rows", &self.rows)?;
        state.serialize_field("cols", &self.cols)?;
        let entries: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(Rational::to_string).collect())
            .collect();
        state.serialize_field("entries", &entries)?;
        state.end()
    }
}

impl<'de> Deserialize<'de> for RationalMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            rows: usize,
            cols: usize,
            entries: Vec<Vec<String>>,
        }
        let wire = Wire::deserialize(deserializer)?;
        if wire.entries.len() != wire.rows || wire.entries.iter().any(|row| row.len() != wire.cols)
        {
            return Err(D::Error::custom("entries shape does not match rows x cols"));
        }
        let mut entries = Vec::with_capacity(wire.rows * wire.cols);
        for row in &wire.entries {
            for cell in row {
                entries.push(cell.parse::<Rational>().map_err(D::Error::custom)?);
            }
        }
        Ok(RationalMatrix {
            rows: wire.rows,
            cols: wire.cols,
            entries,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2(data: [i64; 4]) -> RationalMatrix {
        RationalMatrix::from_i64(2, 2, &data)
    }

    #[test]
    fn mat_mul_identity_and_hand_oracle() {
        let t0 = m2([1, 2, 0, 1]);
        let t1 = m2([1, 0, -2, 1]);
        assert_eq!(mat_mul(&RationalMatrix::identity(2), &t0).unwrap(), t0);
        // hand multiplication oracle
        assert_eq!(mat_mul(&t0, &t1).unwrap(), m2([-3, 2, -2, 1]));
    }

    #[test]
    fn mat_mul_shape_error_names_both_shapes() {
        let a = RationalMatrix::zeros(2, 3);
        let b = RationalMatrix::zeros(2, 3);
        let err = mat_mul(&a, &b).unwrap_err();
        assert_eq!(err.to_string(), "dimension mismatch: 2x3 vs 2x3");
    }

    #[test]
    fn det_identity_and_swap_sign() {
        assert_eq!(det(&RationalMatrix::identity(7)).unwrap(), Rational::one());
        // row swap needed, determinant -1
        let m = m2([0, 1, 1, 0]);
        assert_eq!(det(&m).unwrap(), Rational::from(-1));
        assert!(det(&RationalMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn det_matches_cofactor_on_fractional_entries() {
        let m = RationalMatrix::from_ratios(
            3,
            3,
            &[
                (-1, 1),
                (1, 1),
                (2, 1),
                (1, 1),
                (-1, 2),
                (-1, 1),
                (2, 1),
                (-1, 1),
                (-1, 1),
            ],
        );
        // 3x3 cofactor expansion by hand: -1/2
        assert_eq!(det(&m).unwrap(), Rational::new(-1, 2));
    }

    #[test]
    fn rank_cases() {
        assert_eq!(rank(&RationalMatrix::zeros(3, 3)), 0);
        assert_eq!(rank(&RationalMatrix::identity(7)), 7);
        let m = RationalMatrix::from_i64(2, 3, &[1, 2, 3, 2, 4, 6]);
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn solve_unique() {
        let a = RationalMatrix::identity(2);
        let b = RationalMatrix::column(vec![Rational::from(1), Rational::from(2)]);
        match solve_linear(&a, &b).unwrap() {
            LinearSolution::Unique(x) => assert_eq!(x, b),
            other => panic!("expected unique solution, got {other:?}"),
        }
    }

    #[test]
    fn solve_affine_kernel() {
        let a = RationalMatrix::from_i64(1, 2, &[1, 1]);
        let b = RationalMatrix::column(vec![Rational::zero()]);
        match solve_linear(&a, &b).unwrap() {
            LinearSolution::Affine { particular, kernel } => {
                assert!(particular.is_zero());
                assert_eq!(kernel.len(), 1);
                assert_eq!(
                    kernel[0],
                    RationalMatrix::column(vec![Rational::from(-1), Rational::from(1)])
                );
                // kernel vectors satisfy a v = 0
                assert!(mat_mul(&a, &kernel[0]).unwrap().is_zero());
            }
            other => panic!("expected affine solution, got {other:?}"),
        }
    }

    #[test]
    fn solve_inconsistent() {
        let a = RationalMatrix::from_i64(2, 1, &[1, 1]);
        let b = RationalMatrix::column(vec![Rational::from(1), Rational::from(2)]);
        assert_eq!(solve_linear(&a, &b).unwrap(), LinearSolution::Inconsistent);
    }

    #[test]
    fn solve_transcendency_system() {
        // orthogonality conditions for a corrected 2-cycle through two
        // 2-component fibers, unknowns (b, c): overdetermined but consistent
        let a = RationalMatrix::from_i64(5, 2, &[2, 0, -2, 0, 0, 0, 0, -2, 0, 2]);
        let b = RationalMatrix::column(
            [1, -1, 0, 1, -1]
                .iter()
                .map(|&v| Rational::from(v))
                .collect(),
        );
        match solve_linear(&a, &b).unwrap() {
            LinearSolution::Unique(x) => {
                assert_eq!(x.get(0, 0), &Rational::new(1, 2));
                assert_eq!(x.get(1, 0), &Rational::new(-1, 2));
            }
            other => panic!("expected unique solution, got {other:?}"),
        }
    }

    #[test]
    fn inverse_round_trip() {
        let m = m2([2, 1, 1, 1]);
        let inv = m.inverse().unwrap();
        assert!(mat_mul(&m, &inv).unwrap().is_identity());
        assert!(m2([1, 1, 1, 1]).inverse().is_err());
    }

    #[test]
    fn rank_plus_kernel_dim_is_cols() {
        let m = RationalMatrix::from_i64(3, 4, &[1, 2, 3, 4, 2, 4, 6, 8, 0, 1, 0, 1]);
        assert_eq!(rank(&m) + kernel_basis(&m).len(), m.cols());
    }

    #[test]
    fn json_round_trip_matches_pinned_format() {
        let m = RationalMatrix::from_ratios(2, 2, &[(1, 1), (-1, 2), (0, 1), (5, 3)]);
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(
            json,
            r#"{"rows":2,"cols":2,"entries":[["1","-1/2"],["0","5/3"]]}"#
        );
        let back: RationalMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
        // shape mismatch rejected
        let bad = r#"{"rows":2,"cols":2,"entries":[["1","2"]]}"#;
        assert!(serde_json::from_str::<RationalMatrix>(bad).is_err());
    }
}
