//! Quasi-unipotent matrix calculus: unipotency profiles, nilpotent
//! logarithms and exponentials, Jordan-Chevalley splitting, and
//! intersection-form preservation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{det, mat_mul, minpoly, poly_gcd, Rational, RationalMatrix, RationalPolynomial};
use crate::plmono::IntersectionForm;

/// The pair `(k, m)` with `M^k` unipotent of exact nilpotency index `m`,
/// i.e. `(M^k - I)^m = 0` and `(M^k - I)^(m-1) != 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnipotencyProfile {
    pub torsion_order: usize,
    pub unipotency_index: usize,
}

/// Smallest `v >= 1` with `m^v = 0`, or `None` when `m` is not nilpotent.
pub fn nilpotency_index(m: &RationalMatrix) -> Result<Option<usize>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut power = m.clone();
    for v in 1..=n.max(1) {
        if power.is_zero() {
            return Ok(Some(v));
        }
        power = mat_mul(&power, m)?;
    }
    Ok(None)
}

pub fn is_unipotent(m: &RationalMatrix) -> Result<bool> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let shifted = m - &RationalMatrix::identity(m.rows());
    Ok(nilpotency_index(&shifted)?.is_some())
}

/// Finds the smallest `k <= k_max` with `M^k` unipotent, together with the
/// exact nilpotency index of `M^k - I`. Requires an invertible square input.
///
/// The torsion search runs on the squarefree part `s` of the minimal
/// polynomial: `M^k` is unipotent exactly when every eigenvalue is a k-th
/// root of unity, i.e. when `s` divides `x^k - 1`. Candidates cost one
/// multiply-and-reduce each, and no matrix power is formed until the order
/// is found. Inputs whose `s` violates the unit-circle coefficient bound
/// `|s_i| <= C(deg s, i)` are rejected outright.
pub fn unipotency_profile(m: &RationalMatrix, k_max: usize) -> Result<UnipotencyProfile> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if det(m)?.is_zero() {
        return Err(Error::Singular);
    }
    let n = m.rows();
    let min = minpoly(m)?;
    let repeated = poly_gcd(&min, &min.derivative());
    let squarefree = min.divrem(&repeated)?.0;

    // roots of unity have elementary symmetric functions bounded binomially
    let degree = squarefree.degree().unwrap_or(0);
    let mut binomial = Rational::one();
    for i in 0..=degree {
        if squarefree.coefficient(degree - i).abs() > binomial {
            return Err(Error::NotQuasiUnipotent { k_max });
        }
        binomial =
            &(&binomial * &Rational::from((degree - i) as i64)) / &Rational::from((i + 1) as i64);
    }

    let x = RationalPolynomial::x();
    let one = RationalPolynomial::one();
    let mut x_power = x.divrem(&squarefree)?.1;
    for k in 1..=k_max {
        if k > 1 {
            x_power = (&x_power * &x).divrem(&squarefree)?.1;
        }
        if x_power != one {
            continue;
        }
        // s | x^k - 1, so M^k - I is nilpotent; get the exact index
        let power = m.pow(k)?;
        let index = nilpotency_index(&(&power - &RationalMatrix::identity(n)))?
            .expect("divisibility guarantees nilpotency");
        return Ok(UnipotencyProfile {
            torsion_order: k,
            unipotency_index: index,
        });
    }
    Err(Error::NotQuasiUnipotent { k_max })
}

/// Logarithm of a unipotent matrix by the finite Mercator series
/// `N = sum_{j>=1} (-1)^(j+1) (u - I)^j / j`; exact because `u - I` is
/// nilpotent, and `exp_nilpotent(N) = u` exactly.
pub fn log_unipotent(u: &RationalMatrix) -> Result<RationalMatrix> {
    if !u.is_square() {
        return Err(Error::NotSquare {
            rows: u.rows(),
            cols: u.cols(),
        });
    }
    let shifted = u - &RationalMatrix::identity(u.rows());
    let index = nilpotency_index(&shifted)?.ok_or(Error::NotUnipotent)?;
    let mut acc = RationalMatrix::zeros(u.rows(), u.rows());
    let mut power = RationalMatrix::identity(u.rows());
    for j in 1..index {
        power = mat_mul(&power, &shifted)?;
        let coefficient = if j % 2 == 1 {
            Rational::new(1, j as i64)
        } else {
            Rational::new(-1, j as i64)
        };
        acc = &acc + &power.scale(&coefficient);
    }
    Ok(acc)
}

/// Exponential of a nilpotent matrix by the finite series
/// `sum_j n^j / j!`; inverse of [`log_unipotent`].
pub fn exp_nilpotent(n: &RationalMatrix) -> Result<RationalMatrix> {
    let index = nilpotency_index(n)?.ok_or(Error::NotNilpotent)?;
    let mut acc = RationalMatrix::identity(n.rows());
    let mut power = RationalMatrix::identity(n.rows());
    let mut factorial = Rational::one();
    for j in 1..index {
        power = mat_mul(&power, n)?;
        factorial *= &Rational::from(j as i64);
        acc = &acc + &power.scale(&factorial.inverse().expect("factorial is nonzero"));
    }
    Ok(acc)
}

/// Logarithm of the unipotent part of a quasi-unipotent matrix:
/// `N = (1/k) log(M^k)`, nilpotent. The profile must fit the matrix.
pub fn log_quasi(m: &RationalMatrix, profile: &UnipotencyProfile) -> Result<RationalMatrix> {
    validate_profile(m, profile)?;
    let power = m.pow(profile.torsion_order)?;
    let log = log_unipotent(&power)?;
    Ok(log.scale(&Rational::new(1, profile.torsion_order as i64)))
}

fn validate_profile(m: &RationalMatrix, profile: &UnipotencyProfile) -> Result<()> {
    let invalid = Error::InvalidProfile {
        torsion_order: profile.torsion_order,
        unipotency_index: profile.unipotency_index,
    };
    if profile.torsion_order == 0 || profile.unipotency_index == 0 || !m.is_square() {
        return Err(invalid);
    }
    let shifted = &m.pow(profile.torsion_order)? - &RationalMatrix::identity(m.rows());
    match nilpotency_index(&shifted)? {
        Some(index) if index == profile.unipotency_index => Ok(()),
        _ => Err(invalid),
    }
}

/// Jordan-Chevalley decomposition `M = M_s M_u` of a quasi-unipotent matrix
/// with finite-order semisimple part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanChevalleyPair {
    pub semisimple: RationalMatrix,
    pub unipotent: RationalMatrix,
    pub log_unipotent: RationalMatrix,
}

/// Splits `M = M_s M_u` with `M_u = exp((1/k) log(M^k))` and
/// `M_s = M M_u^{-1}`; verifies that the parts commute and that
/// `M_s^k = I`, failing if the profile was not honest.
pub fn jordan_chevalley(
    m: &RationalMatrix,
    profile: &UnipotencyProfile,
) -> Result<JordanChevalleyPair> {
    let log = log_quasi(m, profile)?;
    let unipotent = exp_nilpotent(&log)?;
    let semisimple = mat_mul(m, &unipotent.inverse()?)?;
    if mat_mul(&semisimple, &unipotent)? != mat_mul(&unipotent, &semisimple)? {
        return Err(Error::DecompositionCheck("parts do not commute"));
    }
    if mat_mul(&semisimple, &unipotent)? != *m {
        return Err(Error::DecompositionCheck("parts do not multiply back"));
    }
    if !semisimple.pow(profile.torsion_order)?.is_identity() {
        return Err(Error::DecompositionCheck(
            "semisimple part does not have the stated finite order",
        ));
    }
    Ok(JordanChevalleyPair {
        semisimple,
        unipotent,
        log_unipotent: log,
    })
}

/// True iff `m^T q m = q` exactly. The shapes must be conformable.
pub fn preserves_form(m: &RationalMatrix, q: &IntersectionForm) -> bool {
    assert_eq!(
        (m.rows(), m.cols()),
        (q.rank(), q.rank()),
        "matrix and form must be conformable"
    );
    let transported = mat_mul(
        &mat_mul(&m.transpose(), q.matrix()).expect("conformable"),
        m,
    )
    .expect("conformable");
    transported == *q.matrix()
}
