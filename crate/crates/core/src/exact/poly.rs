//! Polynomials over the exact rationals, plus the characteristic- and
//! minimal-polynomial procedures used for the Jordan-block analysis.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{mat_mul, solve_linear, LinearSolution, Rational, RationalMatrix};

/// A univariate polynomial with rational coefficients, lowest degree first.
///
/// The zero polynomial is the empty coefficient list; otherwise the leading
/// coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalPolynomial {
    coefficients: Vec<Rational>,
}

impl RationalPolynomial {
    pub fn zero() -> Self {
        RationalPolynomial {
            coefficients: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coefficients(vec![c])
    }

    /// `x`
    pub fn x() -> Self {
        Self::from_coefficients(vec![Rational::zero(), Rational::one()])
    }

    /// `x - root`
    pub fn linear(root: &Rational) -> Self {
        Self::from_coefficients(vec![-root, Rational::one()])
    }

    /// Builds from lowest-degree-first coefficients, trimming leading zeros.
    pub fn from_coefficients(mut coefficients: Vec<Rational>) -> Self {
        while coefficients.last().is_some_and(Rational::is_zero) {
            coefficients.pop();
        }
        RationalPolynomial { coefficients }
    }

    pub fn from_i64(coefficients: &[i64]) -> Self {
        Self::from_coefficients(coefficients.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coefficients.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(Rational::is_one)
    }

    pub fn coefficient(&self, power: usize) -> Rational {
        self.coefficients
            .get(power)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self::from_coefficients(self.coefficients.iter().map(|c| c * factor).collect())
    }

    pub fn monic(&self) -> Result<Self> {
        let lead = self.leading().ok_or(Error::ZeroPolynomial)?;
        Ok(self.scale(&lead.inverse().expect("leading coefficient is nonzero")))
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coefficients
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &Rational::from(k as i64))
            .collect();
        Self::from_coefficients(coeffs)
    }

    /// Horner evaluation at a rational point.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coefficients
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| &(&acc * x) + c)
    }

    /// Horner evaluation at a square matrix (constant term times identity).
    pub fn eval_matrix(&self, a: &RationalMatrix) -> Result<RationalMatrix> {
        if !a.is_square() {
            return Err(Error::NotSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        let n = a.rows();
        let mut acc = RationalMatrix::zeros(n, n);
        for c in self.coefficients.iter().rev() {
            acc = mat_mul(&acc, a)?;
            for i in 0..n {
                let updated = acc.get(i, i) + c;
                acc.set(i, i, updated);
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact euclidean division; errors on a zero divisor.
    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let d_lead = divisor.leading().ok_or(Error::PolynomialDivisionByZero)?;
        let d_deg = divisor.degree().expect("nonzero divisor");
        let mut remainder = self.coefficients.clone();
        if remainder.len() < divisor.coefficients.len() {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quotient = vec![Rational::zero(); remainder.len() - d_deg];
        let inv_lead = d_lead.inverse().expect("nonzero leading coefficient");
        for k in (d_deg..remainder.len()).rev() {
            let factor = &remainder[k] * &inv_lead;
            if factor.is_zero() {
                continue;
            }
            for (i, dc) in divisor.coefficients.iter().enumerate() {
                remainder[k - d_deg + i] = &remainder[k - d_deg + i] - &(&factor * dc);
            }
            quotient[k - d_deg] = factor;
        }
        Ok((
            Self::from_coefficients(quotient),
            Self::from_coefficients(remainder),
        ))
    }

    /// True iff `divisor` divides `self` with zero remainder.
    pub fn divides_exactly(&self, divisor: &Self) -> Result<bool> {
        Ok(self.divrem(divisor)?.1.is_zero())
    }
}

/// Monic greatest common divisor by the euclidean scheme over the rationals.
/// `gcd(0, 0)` is the zero polynomial.
pub fn poly_gcd(a: &RationalPolynomial, b: &RationalPolynomial) -> RationalPolynomial {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let (_, r) = a.divrem(&b).expect("nonzero divisor");
        a = b;
        b = r;
    }
    if a.is_zero() {
        a
    } else {
        a.monic().expect("nonzero")
    }
}

/// True iff `gcd(p, p')` is constant.
pub fn is_squarefree(p: &RationalPolynomial) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = poly_gcd(p, &p.derivative());
    Ok(g.degree() == Some(0))
}

/// Yun's squarefree decomposition: returns `(factor, multiplicity)` pairs with
/// each factor monic, squarefree and pairwise coprime, whose product with
/// multiplicities reconstructs `p` up to the leading coefficient.
pub fn squarefree_decomposition(
    p: &RationalPolynomial,
) -> Result<Vec<(RationalPolynomial, usize)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let p = p.monic()?;
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let dp = p.derivative();
    let mut out = Vec::new();
    let mut g = poly_gcd(&p, &dp);
    let mut w = p.divrem(&g)?.0;
    let mut y = dp.divrem(&g)?.0;
    let mut multiplicity = 1usize;
    loop {
        let z = &y - &w.derivative();
        if z.is_zero() {
            if w.degree().unwrap_or(0) > 0 {
                out.push((w.monic()?, multiplicity));
            }
            break;
        }
        g = poly_gcd(&w, &z);
        if g.degree().unwrap_or(0) > 0 {
            out.push((g.clone(), multiplicity));
        }
        w = w.divrem(&g)?.0;
        y = z.divrem(&g)?.0;
        multiplicity += 1;
    }
    Ok(out)
}

/// Monic characteristic polynomial `det(xI - a)` by the Faddeev-LeVerrier
/// recurrence, exact over the rationals.
pub fn charpoly(a: &RationalMatrix) -> Result<RationalPolynomial> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut coefficients = vec![Rational::zero(); n + 1];
    coefficients[n] = Rational::one();
    let mut m = RationalMatrix::identity(n);
    for k in 1..=n {
        let am = mat_mul(a, &m)?;
        let c = -(&am.trace()? / &Rational::from(k as i64));
        m = am;
        for i in 0..n {
            let updated = m.get(i, i) + &c;
            m.set(i, i, updated);
        }
        coefficients[n - k] = c;
    }
    Ok(RationalPolynomial::from_coefficients(coefficients))
}

/// Monic minimal polynomial found as the first linear dependence among
/// `I, a, a^2, ...` (Krylov-style search on vectorized powers).
pub fn minpoly(a: &RationalMatrix) -> Result<RationalPolynomial> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if n == 0 {
        return Ok(RationalPolynomial::one());
    }
    let mut power = RationalMatrix::identity(n);
    let mut vectorized: Vec<Vec<Rational>> = vec![power.vectorize()];
    for k in 1..=n {
        power = mat_mul(&power, a)?;
        // Solve  sum_i x_i vec(a^i) = vec(a^k)  over the previous powers.
        // Those are independent (no dependence was found earlier), so a
        // consistent system pins the monic annihilator of degree k.
        let stacked = RationalMatrix::from_fn(n * n, k, |row, col| vectorized[col][row].clone());
        let rhs = RationalMatrix::column(power.vectorize());
        if let LinearSolution::Unique(x) = solve_linear(&stacked, &rhs)? {
            let mut coefficients: Vec<Rational> = (0..k).map(|i| -x.get(i, 0)).collect();
            coefficients.push(Rational::one());
            return Ok(RationalPolynomial::from_coefficients(coefficients));
        }
        vectorized.push(power.vectorize());
    }
    unreachable!("Cayley-Hamilton bounds the minimal polynomial degree by n")
}

/// All rational roots of `p` with multiplicities (sorted by root), plus the
/// rational-root-free quotient that remains after deflation.
///
/// Candidate roots come from the rational root theorem on the primitive
/// integer form of `p`; divisor enumeration needs the extreme coefficients to
/// fit in an `i128`.
pub fn rational_roots(
    p: &RationalPolynomial,
) -> Result<(Vec<(Rational, usize)>, RationalPolynomial)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut roots: Vec<(Rational, usize)> = Vec::new();
    let mut work = p.monic()?;

    // Split off x^k first.
    let zero_mult = work
        .coefficients()
        .iter()
        .take_while(|c| c.is_zero())
        .count();
    if zero_mult > 0 {
        roots.push((Rational::zero(), zero_mult));
        work = RationalPolynomial::from_coefficients(work.coefficients()[zero_mult..].to_vec());
    }

    if work.degree().unwrap_or(0) > 0 {
        for candidate in root_candidates(&work)? {
            let mut multiplicity = 0;
            while work.eval(&candidate).is_zero() {
                multiplicity += 1;
                work = work.divrem(&RationalPolynomial::linear(&candidate))?.0;
            }
            if multiplicity > 0 {
                roots.push((candidate, multiplicity));
            }
            if work.degree().unwrap_or(0) == 0 {
                break;
            }
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Ok((roots, work))
}

/// Sorted candidate roots `±p/q` with `p` dividing the constant term and `q`
/// dividing the leading coefficient of the primitive integer form.
fn root_candidates(p: &RationalPolynomial) -> Result<Vec<Rational>> {
    // Clear denominators to a primitive integer polynomial.
    let mut lcm = BigInt::from(1);
    for c in p.coefficients() {
        lcm = lcm.lcm(c.denominator());
    }
    let ints: Vec<BigInt> = p
        .coefficients()
        .iter()
        .map(|c| {
            let scaled = c * &Rational::from_bigint(lcm.clone());
            scaled.numerator().clone()
        })
        .collect();
    let constant = ints.first().expect("nonzero polynomial").abs();
    let leading = ints.last().expect("nonzero polynomial").abs();
    let mut candidates = std::collections::BTreeSet::new();
    for numerator in divisors(&constant)? {
        for denominator in divisors(&leading)? {
            let value = &Rational::from_bigint(BigInt::from(numerator))
                / &Rational::from_bigint(BigInt::from(denominator));
            candidates.insert(value.clone());
            candidates.insert(-value);
        }
    }
    Ok(candidates.into_iter().collect())
}

fn divisors(n: &BigInt) -> Result<Vec<i128>> {
    let n = n.to_i128().ok_or(Error::RootSearchOverflow)?.unsigned_abs();
    if n == 0 {
        // Zero constant term is handled by the x^k split; treat 0 as 1 here.
        return Ok(vec![1]);
    }
    let mut out = Vec::new();
    let mut d: u128 = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d as i128);
            out.push((n / d) as i128);
        }
        d += 1;
        if d > 10_000_000 {
            return Err(Error::RootSearchOverflow);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

impl Add<&RationalPolynomial> for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn add(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        let len = self.coefficients.len().max(rhs.coefficients.len());
        let coeffs = (0..len)
            .map(|k| &self.coefficient(k) + &rhs.coefficient(k))
            .collect();
        RationalPolynomial::from_coefficients(coeffs)
    }
}

impl Sub<&RationalPolynomial> for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn sub(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        let len = self.coefficients.len().max(rhs.coefficients.len());
        let coeffs = (0..len)
            .map(|k| &self.coefficient(k) - &rhs.coefficient(k))
            .collect();
        RationalPolynomial::from_coefficients(coeffs)
    }
}

impl Mul<&RationalPolynomial> for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn mul(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut coeffs =
            vec![Rational::zero(); self.coefficients.len() + rhs.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coefficients.iter().enumerate() {
                coeffs[i + j] += &(a * b);
            }
        }
        RationalPolynomial::from_coefficients(coeffs)
    }
}

impl Neg for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn neg(self) -> RationalPolynomial {
        RationalPolynomial::from_coefficients(self.coefficients.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (power, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match power {
                0 => write!(f, "{magnitude}")?,
                _ => {
                    if !magnitude.is_one() {
                        write!(f, "{magnitude}*")?;
                    }
                    if power == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{power}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(coeffs: &[i64]) -> RationalPolynomial {
        RationalPolynomial::from_i64(coeffs)
    }

    #[test]
    fn display_and_trim() {
        let p = poly(&[-1, 2, -2, 1]);
        assert_eq!(p.to_string(), "x^3 - 2*x^2 + 2*x - 1");
        assert_eq!(poly(&[0, 0]).degree(), None);
        assert_eq!(poly(&[5]).degree(), Some(0));
    }

    #[test]
    fn charpoly_identity_and_trace_det_oracle() {
        // I2 -> (x-1)^2
        let i2 = RationalMatrix::identity(2);
        assert_eq!(charpoly(&i2).unwrap(), poly(&[1, -2, 1]));
        // 2x2 trace/det oracle: x^2 - tr x + det
        let m = RationalMatrix::from_i64(2, 2, &[1, 1, -1, 0]);
        assert_eq!(charpoly(&m).unwrap(), poly(&[1, -1, 1]));
        assert!(charpoly(&RationalMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn cayley_hamilton_small() {
        let m = RationalMatrix::from_i64(3, 3, &[1, 2, 0, -1, 0, 3, 2, 2, 2]);
        let p = charpoly(&m).unwrap();
        assert!(p.eval_matrix(&m).unwrap().is_zero());
    }

    #[test]
    fn minpoly_identity_and_divides_charpoly() {
        assert_eq!(
            minpoly(&RationalMatrix::identity(7)).unwrap(),
            poly(&[-1, 1])
        );
        let m = RationalMatrix::from_i64(3, 3, &[2, 0, 0, 0, 2, 0, 0, 0, 5]);
        let min = minpoly(&m).unwrap();
        assert_eq!(min, poly(&[10, -7, 1])); // (x-2)(x-5)
        let ch = charpoly(&m).unwrap();
        assert!(ch.divides_exactly(&min).unwrap());
        assert!(min.eval_matrix(&m).unwrap().is_zero());
    }

    #[test]
    fn gcd_and_squarefree() {
        let square = poly(&[1, -2, 1]); // (x-1)^2
        assert!(!is_squarefree(&square).unwrap());
        assert!(is_squarefree(&poly(&[-1, 0, 1])).unwrap()); // x^2-1
        let g = poly_gcd(&square, &poly(&[-1, 1]));
        assert_eq!(g, poly(&[-1, 1]));
        assert!(is_squarefree(&RationalPolynomial::zero()).is_err());
    }

    #[test]
    fn squarefree_decomposition_recovers_multiplicities() {
        // (x-1)^3 (x^2-x+1)^2
        let p = &poly(&[-1, 1]).pow(3) * &poly(&[1, -1, 1]).pow(2);
        let parts = squarefree_decomposition(&p).unwrap();
        assert_eq!(parts, vec![(poly(&[1, -1, 1]), 2), (poly(&[-1, 1]), 3)]);
        // product reconstructs
        let rebuilt = parts
            .iter()
            .fold(RationalPolynomial::one(), |acc, (f, m)| &acc * &f.pow(*m));
        assert_eq!(rebuilt, p);
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        // x^2 (x-1) (x+2)^2 (2x-3)
        let p = &(&(&poly(&[0, 0, 1]) * &poly(&[-1, 1])) * &poly(&[2, 1]).pow(2)) * &poly(&[-3, 2]);
        let (roots, rest) = rational_roots(&p).unwrap();
        assert_eq!(
            roots,
            vec![
                (Rational::from(-2), 2),
                (Rational::zero(), 2),
                (Rational::from(1), 1),
                (Rational::new(3, 2), 1),
            ]
        );
        assert_eq!(rest.degree(), Some(0));
        // irreducible factor is left over
        let q = &poly(&[-1, 1]) * &poly(&[1, -1, 1]);
        let (roots, rest) = rational_roots(&q).unwrap();
        assert_eq!(roots, vec![(Rational::from(1), 1)]);
        assert_eq!(rest, poly(&[1, -1, 1]));
    }

    #[test]
    fn divrem_exactness() {
        let a = poly(&[-1, 5, -12, 18, -18, 12, -5, 1]);
        let b = poly(&[1, -1, 1]);
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(a.divrem(&RationalPolynomial::zero()).is_err());
    }
}
