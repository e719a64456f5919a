//! Adjoint actions, simultaneous root decomposition, the Killing form, and
//! the identification of rank-2 root systems.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{
    is_squarefree, kernel_basis, mat_mul, minpoly, rational_roots, Rational, RationalMatrix,
};
use crate::liecore::{bracket, LieSpan};

/// A commuting pair of span elements whose adjoint actions are
/// simultaneously diagonalizable over the rationals; the joint eigenvalues
/// are the roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanPair {
    pub t1: RationalMatrix,
    pub t2: RationalMatrix,
}

impl CartanPair {
    pub fn new(t1: RationalMatrix, t2: RationalMatrix) -> Self {
        CartanPair { t1, t2 }
    }
}

/// One joint eigenvalue `(a(t1), a(t2))` of the adjoint actions, with the
/// dimension of its eigenspace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Root {
    pub value: (Rational, Rational),
    pub multiplicity: usize,
}

/// The nonzero roots of a span under a Cartan pair, plus the dimension of
/// the joint zero eigenspace. Roots are sorted and occur in opposite pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDatum {
    pub roots: Vec<Root>,
    pub cartan_dim: usize,
}

impl RootDatum {
    pub fn total_root_count(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }
}

/// The matrix of `x -> [t, x]` in the coordinates of the span's basis
/// (columns are images of basis elements). `t` must lie in the span and the
/// span must be bracket-closed.
pub fn ad_matrix(t: &RationalMatrix, span: &LieSpan) -> Result<RationalMatrix> {
    if !span.contains(t)? {
        return Err(Error::NotInSpan);
    }
    let dim = span.dim();
    let mut columns: Vec<Vec<Rational>> = Vec::with_capacity(dim);
    for b in span.basis() {
        let image = bracket(t, b)?;
        let coords = span.coordinates(&image)?.ok_or(Error::SpanNotClosed)?;
        columns.push(coords);
    }
    Ok(RationalMatrix::from_fn(dim, dim, |i, j| {
        columns[j][i].clone()
    }))
}

/// Eigenvalues with multiplicities of a matrix that is diagonalizable over
/// the rationals, sorted by eigenvalue.
///
/// Distinct eigenvalues come from the rational roots of the minimal
/// polynomial and multiplicities from exact eigenspace dimensions; a matrix
/// with an irrational eigenvalue or a defective eigenspace fails with
/// `NonDiagonalizable`.
pub fn eigenvalue_multiset(m: &RationalMatrix) -> Result<Vec<(Rational, usize)>> {
    let min = minpoly(m)?;
    if min.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let (roots, remainder) = rational_roots(&min)?;
    if remainder.degree().unwrap_or(0) > 0 {
        return Err(Error::NonDiagonalizable);
    }
    let n = m.rows();
    let mut out = Vec::with_capacity(roots.len());
    let mut total = 0;
    for (value, _) in roots {
        let shifted = RationalMatrix::from_fn(n, n, |i, j| {
            if i == j {
                m.get(i, j) - &value
            } else {
                m.get(i, j).clone()
            }
        });
        let multiplicity = kernel_basis(&shifted).len();
        total += multiplicity;
        out.push((value, multiplicity));
    }
    if total != n {
        return Err(Error::NonDiagonalizable);
    }
    Ok(out)
}

/// The distinct rational eigenvalues of a diagonalizable-over-Q matrix,
/// certified through a squarefree, fully split minimal polynomial.
fn split_spectrum(m: &RationalMatrix) -> Result<Vec<Rational>> {
    let min = minpoly(m)?;
    if !is_squarefree(&min)? {
        return Err(Error::NonDiagonalizable);
    }
    let (roots, remainder) = rational_roots(&min)?;
    if remainder.degree().unwrap_or(0) > 0 {
        return Err(Error::NonDiagonalizable);
    }
    Ok(roots.into_iter().map(|(value, _)| value).collect())
}

/// Decomposes a closed span into the joint eigenspaces of `ad(t1)` and
/// `ad(t2)`, exactly. The pair must commute and each adjoint action must be
/// diagonalizable with rational eigenvalues; the joint kernel dimension is
/// reported as `cartan_dim` and every other joint eigenvalue as a root.
pub fn simultaneous_root_decomposition(pair: &CartanPair, span: &LieSpan) -> Result<RootDatum> {
    if !bracket(&pair.t1, &pair.t2)?.is_zero() {
        return Err(Error::NonCommutingCartan);
    }
    let ad1 = ad_matrix(&pair.t1, span)?;
    let ad2 = ad_matrix(&pair.t2, span)?;
    let spectrum1 = split_spectrum(&ad1)?;
    let spectrum2 = split_spectrum(&ad2)?;
    let dim = span.dim();

    let mut roots = Vec::new();
    let mut cartan_dim = 0;
    let mut accounted = 0;
    for lambda in &spectrum1 {
        for mu in &spectrum2 {
            // joint eigenspace = kernel of [ad1 - lambda; ad2 - mu]
            let stacked = RationalMatrix::from_fn(2 * dim, dim, |row, j| {
                let (ad, i, shift) = if row < dim {
                    (&ad1, row, lambda)
                } else {
                    (&ad2, row - dim, mu)
                };
                if i == j {
                    ad.get(i, j) - shift
                } else {
                    ad.get(i, j).clone()
                }
            });
            let multiplicity = kernel_basis(&stacked).len();
            if multiplicity == 0 {
                continue;
            }
            accounted += multiplicity;
            if lambda.is_zero() && mu.is_zero() {
                cartan_dim = multiplicity;
            } else {
                roots.push(Root {
                    value: (lambda.clone(), mu.clone()),
                    multiplicity,
                });
            }
        }
    }
    // Commuting diagonalizable actions are simultaneously diagonalizable, so
    // the joint eigenspaces must exhaust the span.
    if accounted != dim {
        return Err(Error::NonDiagonalizable);
    }
    roots.sort_by(|a, b| a.value.cmp(&b.value));

    // type invariant: roots occur in opposite pairs
    for root in &roots {
        let opposite = (-&root.value.0, -&root.value.1);
        if !roots
            .iter()
            .any(|r| r.value == opposite && r.multiplicity == root.multiplicity)
        {
            return Err(Error::UnpairedRoots);
        }
    }
    Ok(RootDatum { roots, cartan_dim })
}

/// Gram matrix of the Killing form `k(b_i, b_j) = trace(ad(b_i) ad(b_j))` in
/// the span's basis coordinates. Requires a bracket-closed span.
pub fn killing_gram(span: &LieSpan) -> Result<RationalMatrix> {
    if !span.is_closed() {
        return Err(Error::SpanNotClosed);
    }
    let ads: Vec<RationalMatrix> = span
        .basis()
        .iter()
        .map(|b| ad_matrix(b, span))
        .collect::<Result<_>>()?;
    gram_of_ads(&ads)
}

/// The Killing form restricted to the Cartan pair, as the 2x2 matrix
/// `[k(t_i, t_j)]`.
pub fn killing_on_cartan(pair: &CartanPair, span: &LieSpan) -> Result<RationalMatrix> {
    let ads = vec![ad_matrix(&pair.t1, span)?, ad_matrix(&pair.t2, span)?];
    gram_of_ads(&ads)
}

fn gram_of_ads(ads: &[RationalMatrix]) -> Result<RationalMatrix> {
    let k = ads.len();
    let mut gram = RationalMatrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let value = trace_of_product(&ads[i], &ads[j]);
            gram.set(i, j, value.clone());
            gram.set(j, i, value);
        }
    }
    Ok(gram)
}

/// `trace(a b)` without forming the full product.
fn trace_of_product(a: &RationalMatrix, b: &RationalMatrix) -> Rational {
    let n = a.rows();
    let mut acc = Rational::zero();
    for i in 0..n {
        for j in 0..n {
            let left = a.get(i, j);
            if left.is_zero() {
                continue;
            }
            acc += &(left * b.get(j, i));
        }
    }
    acc
}

/// Squared length of each root under the inverse of the Killing restriction,
/// in the order the roots are listed: `|a|^2 = a^T K^{-1} a`.
pub fn squared_root_lengths(
    datum: &RootDatum,
    killing_on_cartan: &RationalMatrix,
) -> Result<Vec<Rational>> {
    let inverse = killing_on_cartan
        .inverse()
        .map_err(|_| Error::DegenerateKilling)?;
    datum
        .roots
        .iter()
        .map(|root| {
            let alpha = RationalMatrix::column(vec![root.value.0.clone(), root.value.1.clone()]);
            let product = mat_mul(&mat_mul(&alpha.transpose(), &inverse)?, &alpha)?;
            Ok(product.get(0, 0).clone())
        })
        .collect()
}

/// Inner product of two roots under the inverse Killing restriction.
fn root_inner_product(
    a: &(Rational, Rational),
    b: &(Rational, Rational),
    killing_inverse: &RationalMatrix,
) -> Result<Rational> {
    let left = RationalMatrix::column(vec![a.0.clone(), a.1.clone()]);
    let right = RationalMatrix::column(vec![b.0.clone(), b.1.clone()]);
    let product = mat_mul(&mat_mul(&left.transpose(), killing_inverse)?, &right)?;
    Ok(product.get(0, 0).clone())
}

/// The rank-2 root-system types this toolkit distinguishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rank2Type {
    A1xA1,
    A2,
    B2,
    G2,
    Unknown,
}

impl std::fmt::Display for Rank2Type {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Rank2Type::A1xA1 => "A1xA1",
            Rank2Type::A2 => "A2",
            Rank2Type::B2 => "B2",
            Rank2Type::G2 => "G2",
            Rank2Type::Unknown => "unknown",
        };
        write!(f, "{name}")
    }
}

/// Classifies a reduced rank-2 root system from the root count and the
/// squared-length ratio under the Killing-restricted metric:
/// 12 roots with ratio 3 are G2, 8 with ratio 2 are B2, 6 of one length are
/// A2, and 4 in two orthogonal pairs are A1xA1. Anything else (including any
/// repeated root) is `Unknown`.
pub fn identify_rank2_type(
    datum: &RootDatum,
    killing_on_cartan: &RationalMatrix,
) -> Result<Rank2Type> {
    if datum.cartan_dim != 2 {
        return Err(Error::NotRankTwo(datum.cartan_dim));
    }
    let inverse = killing_on_cartan
        .inverse()
        .map_err(|_| Error::DegenerateKilling)?;
    if datum.roots.iter().any(|r| r.multiplicity != 1) {
        return Ok(Rank2Type::Unknown);
    }
    let lengths = squared_root_lengths(datum, killing_on_cartan)?;
    let mut distinct: Vec<Rational> = lengths.to_vec();
    distinct.sort();
    distinct.dedup();

    let by_length = |length: &Rational| lengths.iter().filter(|l| *l == length).count();

    match datum.roots.len() {
        4 => {
            // two opposite pairs; the independent pair must be orthogonal
            let alpha = &datum.roots[0].value;
            let partner = datum
                .roots
                .iter()
                .find(|r| r.value != *alpha && r.value != (-&alpha.0, -&alpha.1))
                .ok_or(Error::UnpairedRoots)?;
            if root_inner_product(alpha, &partner.value, &inverse)?.is_zero() {
                Ok(Rank2Type::A1xA1)
            } else {
                Ok(Rank2Type::Unknown)
            }
        }
        6 => {
            if distinct.len() == 1 {
                Ok(Rank2Type::A2)
            } else {
                Ok(Rank2Type::Unknown)
            }
        }
        8 => {
            if distinct.len() == 2
                && distinct[1] == &distinct[0] * &Rational::from(2)
                && by_length(&distinct[0]) == 4
                && by_length(&distinct[1]) == 4
            {
                Ok(Rank2Type::B2)
            } else {
                Ok(Rank2Type::Unknown)
            }
        }
        12 => {
            if distinct.len() == 2
                && distinct[1] == &distinct[0] * &Rational::from(3)
                && by_length(&distinct[0]) == 6
                && by_length(&distinct[1]) == 6
            {
                Ok(Rank2Type::G2)
            } else {
                Ok(Rank2Type::Unknown)
            }
        }
        _ => Ok(Rank2Type::Unknown),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::det;
    use crate::liecore::lie_closure;

    fn elementary(n: usize, i: usize, j: usize) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(n, n);
        m.set(i, j, Rational::one());
        m
    }

    fn diag(values: &[i64]) -> RationalMatrix {
        let n = values.len();
        let mut m = RationalMatrix::zeros(n, n);
        for (i, &v) in values.iter().enumerate() {
            m.set(i, i, Rational::from(v));
        }
        m
    }

    #[test]
    fn ad_of_zero_is_zero() {
        let e = elementary(2, 0, 1);
        let f = elementary(2, 1, 0);
        let span = lie_closure(&[e, f], 4).unwrap();
        let ad = ad_matrix(&RationalMatrix::zeros(2, 2), &span).unwrap();
        assert!(ad.is_zero());
    }

    #[test]
    fn ad_requires_membership() {
        let e = elementary(2, 0, 1);
        let f = elementary(2, 1, 0);
        let span = lie_closure(&[e, f], 4).unwrap();
        assert!(matches!(
            ad_matrix(&RationalMatrix::identity(2), &span),
            Err(Error::NotInSpan)
        ));
    }

    #[test]
    fn eigenvalues_of_sl2_adjoint() {
        let e = elementary(2, 0, 1);
        let f = elementary(2, 1, 0);
        let span = lie_closure(&[e.clone(), f.clone()], 4).unwrap();
        let h = bracket(&e, &f).unwrap();
        let ad_h = ad_matrix(&h, &span).unwrap();
        assert_eq!(
            eigenvalue_multiset(&ad_h).unwrap(),
            vec![
                (Rational::from(-2), 1),
                (Rational::zero(), 1),
                (Rational::from(2), 1),
            ]
        );
    }

    #[test]
    fn eigenvalue_multiset_rejects_irrational_spectrum() {
        // rotation-like matrix with eigenvalues +- i
        let m = RationalMatrix::from_i64(2, 2, &[0, 1, -1, 0]);
        assert!(matches!(
            eigenvalue_multiset(&m),
            Err(Error::NonDiagonalizable)
        ));
    }

    #[test]
    fn abelian_pair_has_no_roots() {
        let t1 = diag(&[1, -1, 0]);
        let t2 = diag(&[0, 1, -1]);
        let span = lie_closure(&[t1.clone(), t2.clone()], 9).unwrap();
        assert_eq!(span.dim(), 2);
        let datum = simultaneous_root_decomposition(&CartanPair::new(t1, t2), &span).unwrap();
        assert!(datum.roots.is_empty());
        assert_eq!(datum.cartan_dim, 2);
    }

    #[test]
    fn sl2_roots_scale_with_the_cartan_normalization() {
        let e = elementary(2, 0, 1);
        let f = elementary(2, 1, 0);
        let span = lie_closure(&[e.clone(), f.clone()], 4).unwrap();
        let h = bracket(&e, &f).unwrap();
        let c = Rational::new(3, 2);
        let t = h.scale(&c);
        let datum = simultaneous_root_decomposition(&CartanPair::new(t.clone(), t), &span).unwrap();
        assert_eq!(datum.cartan_dim, 1);
        let values: Vec<(Rational, Rational)> =
            datum.roots.iter().map(|r| r.value.clone()).collect();
        let expected = &Rational::from(2) * &c;
        let negated = -&expected;
        assert_eq!(
            values,
            vec![(negated.clone(), negated), (expected.clone(), expected)]
        );
    }

    #[test]
    fn non_commuting_pair_is_rejected() {
        let e = elementary(2, 0, 1);
        let f = elementary(2, 1, 0);
        let span = lie_closure(&[e.clone(), f.clone()], 4).unwrap();
        assert!(matches!(
            simultaneous_root_decomposition(&CartanPair::new(e, f), &span),
            Err(Error::NonCommutingCartan)
        ));
    }

    #[test]
    fn killing_gram_of_abelian_span_is_zero() {
        let t1 = diag(&[1, -1, 0]);
        let t2 = diag(&[0, 1, -1]);
        let span = lie_closure(&[t1, t2], 9).unwrap();
        assert!(killing_gram(&span).unwrap().is_zero());
    }

    #[test]
    fn killing_gram_of_sl2_matches_direct_computation() {
        let e = elementary(2, 0, 1);
        let f = elementary(2, 1, 0);
        let span = lie_closure(&[e.clone(), f.clone()], 4).unwrap();
        let gram = killing_gram(&span).unwrap();
        // basis order is (e, f, h); known Killing values k(e,f)=4, k(h,h)=8
        let expected = RationalMatrix::from_i64(3, 3, &[0, 4, 0, 4, 0, 0, 0, 0, 8]);
        assert_eq!(gram, expected);
        assert!(!det(&gram).unwrap().is_zero());
    }

    #[test]
    fn sl3_root_system_is_a2() {
        // the full special-linear algebra in dimension three
        let generators = vec![
            elementary(3, 0, 1),
            elementary(3, 1, 2),
            elementary(3, 1, 0),
            elementary(3, 2, 1),
        ];
        let span = lie_closure(&generators, 9).unwrap();
        assert_eq!(span.dim(), 8);
        let pair = CartanPair::new(
            &diag(&[1, 0, 0]) - &diag(&[0, 1, 0]),
            &diag(&[0, 1, 0]) - &diag(&[0, 0, 1]),
        );
        let datum = simultaneous_root_decomposition(&pair, &span).unwrap();
        assert_eq!(datum.cartan_dim, 2);
        assert_eq!(datum.roots.len(), 6);
        assert!(datum.roots.iter().all(|r| r.multiplicity == 1));
        let killing = killing_on_cartan(&pair, &span).unwrap();
        assert_eq!(
            identify_rank2_type(&datum, &killing).unwrap(),
            Rank2Type::A2
        );
    }

    #[test]
    fn split_sp4_root_system_is_b2() {
        // sp4 over Q for J = [[0, I], [-I, 0]]: blocks [[A, B], [C, -A^T]]
        // with B, C symmetric
        let mut generators = Vec::new();
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let mut m = RationalMatrix::zeros(4, 4);
            m.set(i, j, Rational::one());
            m.set(2 + j, 2 + i, Rational::from(-1));
            generators.push(m);
        }
        for (i, j) in [(0, 0), (1, 1), (0, 1)] {
            let mut b = RationalMatrix::zeros(4, 4);
            b.set(i, 2 + j, Rational::one());
            b.set(j, 2 + i, Rational::one());
            generators.push(b);
            let mut c = RationalMatrix::zeros(4, 4);
            c.set(2 + i, j, Rational::one());
            c.set(2 + j, i, Rational::one());
            generators.push(c);
        }
        let span = lie_closure(&generators, 16).unwrap();
        assert_eq!(span.dim(), 10);
        let pair = CartanPair::new(diag(&[1, 0, -1, 0]), diag(&[0, 1, 0, -1]));
        let datum = simultaneous_root_decomposition(&pair, &span).unwrap();
        assert_eq!(datum.cartan_dim, 2);
        assert_eq!(datum.roots.len(), 8);
        let killing = killing_on_cartan(&pair, &span).unwrap();
        assert_eq!(
            identify_rank2_type(&datum, &killing).unwrap(),
            Rank2Type::B2
        );
    }

    #[test]
    fn orthogonal_pairs_identify_as_a1xa1() {
        // so4 = sl2 x sl2 via two commuting copies of sl2 in block form
        let mut generators = Vec::new();
        for offset in [0usize, 2] {
            let mut e = RationalMatrix::zeros(4, 4);
            e.set(offset, offset + 1, Rational::one());
            let mut f = RationalMatrix::zeros(4, 4);
            f.set(offset + 1, offset, Rational::one());
            generators.push(e);
            generators.push(f);
        }
        let span = lie_closure(&generators, 16).unwrap();
        assert_eq!(span.dim(), 6);
        let pair = CartanPair::new(diag(&[1, -1, 0, 0]), diag(&[0, 0, 1, -1]));
        let datum = simultaneous_root_decomposition(&pair, &span).unwrap();
        assert_eq!(datum.cartan_dim, 2);
        assert_eq!(datum.roots.len(), 4);
        let killing = killing_on_cartan(&pair, &span).unwrap();
        assert_eq!(
            identify_rank2_type(&datum, &killing).unwrap(),
            Rank2Type::A1xA1
        );
    }

    #[test]
    fn killing_restriction_consistent_with_gram() {
        // k(t, t') computed through ad matrices equals a^T G a' for the
        // coordinates a, a' of t, t' in the span basis
        let e = elementary(2, 0, 1);
        let f = elementary(2, 1, 0);
        let span = lie_closure(&[e.clone(), f.clone()], 4).unwrap();
        let h = bracket(&e, &f).unwrap();
        let t1 = &h + &e;
        let t2 = &h - &f.scale(&Rational::from(2));
        let gram = killing_gram(&span).unwrap();
        let pair = CartanPair::new(t1.clone(), t2.clone());
        let restricted = killing_on_cartan(&pair, &span).unwrap();
        let c1 = RationalMatrix::column(span.coordinates(&t1).unwrap().unwrap());
        let c2 = RationalMatrix::column(span.coordinates(&t2).unwrap().unwrap());
        let via_gram = |a: &RationalMatrix, b: &RationalMatrix| {
            mat_mul(&mat_mul(&a.transpose(), &gram).unwrap(), b)
                .unwrap()
                .get(0, 0)
                .clone()
        };
        assert_eq!(*restricted.get(0, 0), via_gram(&c1, &c1));
        assert_eq!(*restricted.get(0, 1), via_gram(&c1, &c2));
        assert_eq!(*restricted.get(1, 1), via_gram(&c2, &c2));
    }
}
