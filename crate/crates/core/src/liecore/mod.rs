//! Lie-algebraic engine: commutator brackets, bracket closure of a set of
//! generators, adjoint actions, root decomposition, the Killing form, and
//! rank-2 type identification.

mod roots;

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::exact::{mat_mul, Rational, RationalMatrix};

pub use roots::{
    ad_matrix, eigenvalue_multiset, identify_rank2_type, killing_gram, killing_on_cartan,
    simultaneous_root_decomposition, squared_root_lengths, CartanPair, Rank2Type, Root, RootDatum,
};

/// Commutator `[a, b] = ab - ba`, exact.
pub fn bracket(a: &RationalMatrix, b: &RationalMatrix) -> Result<RationalMatrix> {
    if !a.is_square() || a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::DimensionMismatch {
            left_rows: a.rows(),
            left_cols: a.cols(),
            right_rows: b.rows(),
            right_cols: b.cols(),
        });
    }
    Ok(&mat_mul(a, b)? - &mat_mul(b, a)?)
}

/// One row of the running echelon form, with the coefficients expressing it
/// in terms of the inserted basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
struct EchelonRow {
    pivot: usize,
    vector: Vec<Rational>,
    /// echelon row = sum_i combination[i] * vec(basis[i])
    combination: Vec<Rational>,
}

/// An echelonized basis of a subspace of n x n matrices, optionally known to
/// be closed under the commutator bracket.
///
/// The basis keeps the matrices in insertion order; the echelon rows are kept
/// in reduced row echelon form over the row-major vectorization, so two spans
/// are equal as subspaces exactly when their echelon matrices are equal.
#[derive(Clone, Debug)]
pub struct LieSpan {
    ambient_size: usize,
    basis: Vec<RationalMatrix>,
    rows: Vec<EchelonRow>,
    closed: bool,
}

impl LieSpan {
    fn empty(ambient_size: usize) -> Self {
        LieSpan {
            ambient_size,
            basis: Vec::new(),
            rows: Vec::new(),
            closed: false,
        }
    }

    /// Side length of the ambient matrix space.
    pub fn ambient_size(&self) -> usize {
        self.ambient_size
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The inserted basis elements, in insertion order.
    pub fn basis(&self) -> &[RationalMatrix] {
        &self.basis
    }

    /// Whether the span has been saturated under the bracket.
    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// The reduced row echelon form of the vectorized basis, `dim x n^2`.
    pub fn echelon_matrix(&self) -> RationalMatrix {
        let n2 = self.ambient_size * self.ambient_size;
        RationalMatrix::from_fn(self.rows.len(), n2, |i, j| self.rows[i].vector[j].clone())
    }

    fn check_member_shape(&self, m: &RationalMatrix) -> Result<()> {
        if m.rows() != self.ambient_size || m.cols() != self.ambient_size {
            return Err(Error::DimensionMismatch {
                left_rows: self.ambient_size,
                left_cols: self.ambient_size,
                right_rows: m.rows(),
                right_cols: m.cols(),
            });
        }
        Ok(())
    }

    /// Reduces `v` against the echelon rows; returns the residual and the
    /// coefficient of each echelon row that was subtracted.
    fn reduce(&self, mut v: Vec<Rational>) -> (Vec<Rational>, Vec<Rational>) {
        let mut used = vec![Rational::zero(); self.rows.len()];
        for (k, row) in self.rows.iter().enumerate() {
            let c = v[row.pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (target, source) in v.iter_mut().zip(&row.vector) {
                *target = &*target - &(&c * source);
            }
            used[k] = c;
        }
        (v, used)
    }

    /// True iff `m` lies in the span.
    pub fn contains(&self, m: &RationalMatrix) -> Result<bool> {
        self.check_member_shape(m)?;
        let (residual, _) = self.reduce(m.vectorize());
        Ok(residual.iter().all(Rational::is_zero))
    }

    /// Coordinates of `m` in the inserted basis, or `None` outside the span.
    pub fn coordinates(&self, m: &RationalMatrix) -> Result<Option<Vec<Rational>>> {
        self.check_member_shape(m)?;
        let (residual, used) = self.reduce(m.vectorize());
        if !residual.iter().all(Rational::is_zero) {
            return Ok(None);
        }
        let mut coords = vec![Rational::zero(); self.basis.len()];
        for (c, row) in used.iter().zip(&self.rows) {
            if c.is_zero() {
                continue;
            }
            for (coord, weight) in coords.iter_mut().zip(&row.combination) {
                *coord = &*coord + &(c * weight);
            }
        }
        Ok(Some(coords))
    }

    /// Inserts `m` if it is independent of the current span. Returns whether
    /// the dimension grew.
    fn insert(&mut self, m: &RationalMatrix) -> Result<bool> {
        self.check_member_shape(m)?;
        let (mut vector, used) = self.reduce(m.vectorize());
        let Some(pivot) = vector.iter().position(|c| !c.is_zero()) else {
            return Ok(false);
        };

        // combination starts as "one copy of the new basis element minus
        // whatever echelon rows were subtracted during reduction"
        let mut combination = vec![Rational::zero(); self.basis.len() + 1];
        combination[self.basis.len()] = Rational::one();
        for (c, row) in used.iter().zip(&self.rows) {
            if c.is_zero() {
                continue;
            }
            for (target, weight) in combination.iter_mut().zip(&row.combination) {
                *target = &*target - &(c * weight);
            }
        }
        for row in &mut self.rows {
            row.combination.push(Rational::zero());
        }

        // normalize the pivot to 1
        let inv = vector[pivot].inverse().expect("pivot is nonzero");
        for c in vector.iter_mut() {
            *c = &*c * &inv;
        }
        for c in combination.iter_mut() {
            *c = &*c * &inv;
        }

        // eliminate the new pivot from every existing row to stay in RREF
        for row in &mut self.rows {
            let c = row.vector[pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (target, source) in row.vector.iter_mut().zip(&vector) {
                *target = &*target - &(&c * source);
            }
            for (target, source) in row.combination.iter_mut().zip(&combination) {
                *target = &*target - &(&c * source);
            }
        }

        let new_row = EchelonRow {
            pivot,
            vector,
            combination,
        };
        let position = self
            .rows
            .iter()
            .position(|row| row.pivot > pivot)
            .unwrap_or(self.rows.len());
        self.rows.insert(position, new_row);
        self.basis.push(m.clone());
        Ok(true)
    }

    /// Re-verifies the bracket-closure flag by brute force.
    pub fn verify_closed(&self) -> Result<bool> {
        for i in 0..self.basis.len() {
            for j in i + 1..self.basis.len() {
                let b = bracket(&self.basis[i], &self.basis[j])?;
                if !self.contains(&b)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// The smallest bracket-closed subspace containing the generators.
///
/// Worklist saturation: generators are inserted in order; each time an
/// element lands at index `j`, the pairs `(0, j) .. (j-1, j)` are queued, and
/// the queue is drained first-in-first-out. Membership tests run against the
/// maintained reduced echelon form, so the resulting basis is deterministic.
///
/// Growing past `dim_cap` aborts with the partial span in the error.
pub fn lie_closure(generators: &[RationalMatrix], dim_cap: usize) -> Result<LieSpan> {
    let ambient = match generators.first() {
        Some(g) => {
            if !g.is_square() {
                return Err(Error::NotSquare {
                    rows: g.rows(),
                    cols: g.cols(),
                });
            }
            g.rows()
        }
        None => 0,
    };
    if dim_cap > ambient * ambient {
        return Err(Error::BadDimCap {
            cap: dim_cap,
            ambient: ambient * ambient,
        });
    }
    let mut span = LieSpan::empty(ambient);
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    let enqueue_pairs = |queue: &mut VecDeque<(usize, usize)>, j: usize| {
        for i in 0..j {
            queue.push_back((i, j));
        }
    };

    for g in generators {
        if span.insert(g)? {
            if span.dim() > dim_cap {
                return Err(Error::DimCapExceeded {
                    cap: dim_cap,
                    partial: span,
                });
            }
            enqueue_pairs(&mut queue, span.dim() - 1);
        }
    }
    while let Some((i, j)) = queue.pop_front() {
        let b = bracket(&span.basis[i], &span.basis[j])?;
        if span.insert(&b)? {
            if span.dim() > dim_cap {
                return Err(Error::DimCapExceeded {
                    cap: dim_cap,
                    partial: span,
                });
            }
            enqueue_pairs(&mut queue, span.dim() - 1);
        }
    }
    span.closed = true;
    Ok(span)
}

/// The canonical fourteen-element generating family built from the three
/// log-monodromies by iterated brackets:
///
/// ```text
/// y1 = [n-, n+]    y2 = [n-, ni]    y3 = [n+, ni]
/// y4 = [y1, y2]    y5 = [y1, y3]    y6 = [y2, y3]    y7 = [y2, y6]
/// y8 = [y5, y6]    y9 = [ni, y5]    y10 = [ni, y9]   y11 = [ni, y10]
/// y12 = [n+, y11]  y13 = [ni, y12]  y14 = [n-, y13]
/// ```
///
/// returned as the sequence `n-, n+, y1, y4, y5, ..., y14` (`y2`, `y3` are
/// intermediate only). For the first family this list is a basis of the full
/// closure.
pub fn bracket_generator_table(
    n_minus: &RationalMatrix,
    n_plus: &RationalMatrix,
    n_inf: &RationalMatrix,
) -> Result<Vec<RationalMatrix>> {
    let y1 = bracket(n_minus, n_plus)?;
    let y2 = bracket(n_minus, n_inf)?;
    let y3 = bracket(n_plus, n_inf)?;
    let y4 = bracket(&y1, &y2)?;
    let y5 = bracket(&y1, &y3)?;
    let y6 = bracket(&y2, &y3)?;
    let y7 = bracket(&y2, &y6)?;
    let y8 = bracket(&y5, &y6)?;
    let y9 = bracket(n_inf, &y5)?;
    let y10 = bracket(n_inf, &y9)?;
    let y11 = bracket(n_inf, &y10)?;
    let y12 = bracket(n_plus, &y11)?;
    let y13 = bracket(n_inf, &y12)?;
    let y14 = bracket(n_minus, &y13)?;
    Ok(vec![
        n_minus.clone(),
        n_plus.clone(),
        y1,
        y4,
        y5,
        y6,
        y7,
        y8,
        y9,
        y10,
        y11,
        y12,
        y13,
        y14,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rank;

    fn elementary(n: usize, i: usize, j: usize) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(n, n);
        m.set(i, j, Rational::one());
        m
    }

    #[test]
    fn bracket_basics() {
        let a = RationalMatrix::from_i64(2, 2, &[1, 2, 3, 4]);
        assert!(bracket(&a, &a).unwrap().is_zero());
        let b = RationalMatrix::from_i64(2, 2, &[0, 1, 0, 0]);
        let ab = bracket(&a, &b).unwrap();
        let ba = bracket(&b, &a).unwrap();
        assert_eq!(ab, -&ba);
        assert!(bracket(&a, &RationalMatrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn closure_of_zero_generator_is_empty() {
        let span = lie_closure(&[RationalMatrix::zeros(3, 3)], 9).unwrap();
        assert_eq!(span.dim(), 0);
        assert!(span.is_closed());
        assert!(span.contains(&RationalMatrix::zeros(3, 3)).unwrap());
        assert!(!span.contains(&RationalMatrix::identity(3)).unwrap());
    }

    #[test]
    fn closure_of_sl2_generators_has_dimension_three() {
        let e = elementary(2, 0, 1);
        let f = elementary(2, 1, 0);
        let span = lie_closure(&[e.clone(), f.clone()], 4).unwrap();
        assert_eq!(span.dim(), 3);
        assert!(span.verify_closed().unwrap());

        // brute-force oracle: stack every iterated bracket and take the rank
        let h = bracket(&e, &f).unwrap();
        let all = [e, f, h];
        let mut rows: Vec<Vec<Rational>> = all.iter().map(RationalMatrix::vectorize).collect();
        for a in &all {
            for b in &all {
                rows.push(bracket(a, b).unwrap().vectorize());
            }
        }
        let stacked = RationalMatrix::from_fn(rows.len(), 4, |i, j| rows[i][j].clone());
        assert_eq!(rank(&stacked), 3);
    }

    #[test]
    fn closure_respects_dim_cap() {
        let e = elementary(2, 0, 1);
        let f = elementary(2, 1, 0);
        match lie_closure(&[e, f], 2) {
            Err(Error::DimCapExceeded { cap: 2, partial }) => {
                assert_eq!(partial.dim(), 3);
                assert!(!partial.is_closed());
            }
            other => panic!("expected DimCapExceeded, got {other:?}"),
        }
        assert!(matches!(
            lie_closure(&[RationalMatrix::identity(2)], 5),
            Err(Error::BadDimCap { cap: 5, ambient: 4 })
        ));
    }

    #[test]
    fn closure_is_independent_of_generator_order() {
        let e = elementary(3, 0, 1);
        let f = elementary(3, 1, 2);
        let g = elementary(3, 1, 0);
        let orders: Vec<Vec<RationalMatrix>> = vec![
            vec![e.clone(), f.clone(), g.clone()],
            vec![g.clone(), f.clone(), e.clone()],
            vec![f.clone(), e.clone(), g.clone()],
        ];
        let echelons: Vec<RationalMatrix> = orders
            .iter()
            .map(|gens| lie_closure(gens, 9).unwrap().echelon_matrix())
            .collect();
        assert_eq!(echelons[0], echelons[1]);
        assert_eq!(echelons[0], echelons[2]);
    }

    #[test]
    fn coordinates_invert_the_basis_combination() {
        let e = elementary(2, 0, 1);
        let f = elementary(2, 1, 0);
        let span = lie_closure(&[e.clone(), f.clone()], 4).unwrap();
        let h = bracket(&e, &f).unwrap();
        // h = 1*basis[2], and a mixed combination
        let mixed = &(&e.scale(&Rational::new(2, 3)) - &f) + &h.scale(&Rational::from(5));
        let coords = span.coordinates(&mixed).unwrap().unwrap();
        let rebuilt = span
            .basis()
            .iter()
            .zip(&coords)
            .fold(RationalMatrix::zeros(2, 2), |acc, (b, c)| {
                &acc + &b.scale(c)
            });
        assert_eq!(rebuilt, mixed);
        assert!(span
            .coordinates(&RationalMatrix::identity(2))
            .unwrap()
            .is_none());
    }

    #[test]
    fn generator_table_of_zeros_is_all_zero() {
        let z = RationalMatrix::zeros(3, 3);
        let table = bracket_generator_table(&z, &z, &z).unwrap();
        assert_eq!(table.len(), 14);
        assert!(table.iter().all(RationalMatrix::is_zero));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn int_matrix(n: usize) -> impl Strategy<Value = RationalMatrix> {
            proptest::collection::vec(-5i64..=5, n * n)
                .prop_map(move |v| RationalMatrix::from_i64(n, n, &v))
        }

        proptest! {
            #[test]
            fn jacobi_identity(a in int_matrix(3), b in int_matrix(3), c in int_matrix(3)) {
                let term1 = bracket(&bracket(&a, &b).unwrap(), &c).unwrap();
                let term2 = bracket(&bracket(&b, &c).unwrap(), &a).unwrap();
                let term3 = bracket(&bracket(&c, &a).unwrap(), &b).unwrap();
                prop_assert!((&(&term1 + &term2) + &term3).is_zero());
            }

            #[test]
            fn bracket_antisymmetry(a in int_matrix(3), b in int_matrix(3)) {
                prop_assert_eq!(bracket(&a, &b).unwrap(), -&bracket(&b, &a).unwrap());
            }
        }
    }
}
