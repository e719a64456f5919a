//! Picard-Lefschetz machinery: paired lattices, vanishing cycles, the
//! transvection formula, loop-word evaluation, and nodal logarithms.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{mat_mul, Rational, RationalMatrix};

/// Hodge-theoretic weight of a pairing: weight 1 pairings are antisymmetric
/// (curves), weight 2 pairings are symmetric (surfaces).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Weight {
    One,
    Two,
}

impl Weight {
    fn as_u8(self) -> u8 {
        match self {
            Weight::One => 1,
            Weight::Two => 2,
        }
    }
}

/// A pairing matrix with basis labels: antisymmetric in weight 1, symmetric
/// in weight 2. Monodromy is expected to preserve it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionForm {
    labels: Vec<String>,
    weight: Weight,
    matrix: RationalMatrix,
}

impl IntersectionForm {
    pub fn new(labels: Vec<String>, weight: Weight, matrix: RationalMatrix) -> Result<Self> {
        if matrix.rows() != labels.len() || matrix.cols() != labels.len() {
            return Err(Error::BadPairingShape {
                rows: matrix.rows(),
                cols: matrix.cols(),
                labels: labels.len(),
            });
        }
        let n = labels.len();
        let symmetric_ok = |i: usize, j: usize| match weight {
            Weight::One => *matrix.get(i, j) == -matrix.get(j, i),
            Weight::Two => matrix.get(i, j) == matrix.get(j, i),
        };
        for i in 0..n {
            for j in i..n {
                if !symmetric_ok(i, j) {
                    return Err(Error::BadPairingSymmetry {
                        weight: weight.as_u8(),
                    });
                }
            }
        }
        Ok(IntersectionForm {
            labels,
            weight,
            matrix,
        })
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weight(&self) -> Weight {
        self.weight
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    /// `x^T Q y`, exactly.
    pub fn pair(&self, x: &CycleVector, y: &CycleVector) -> Result<Rational> {
        let n = self.rank();
        if x.len() != n {
            return Err(Error::CycleDimension {
                cycle: x.len(),
                rank: n,
            });
        }
        if y.len() != n {
            return Err(Error::CycleDimension {
                cycle: y.len(),
                rank: n,
            });
        }
        let mut acc = Rational::zero();
        for i in 0..n {
            if x.coordinates()[i].is_zero() {
                continue;
            }
            for j in 0..n {
                acc += &(&(&x.coordinates()[i] * self.matrix.get(i, j)) * &y.coordinates()[j]);
            }
        }
        Ok(acc)
    }
}

/// A lattice with a weight-graded intersection pairing; the home of the
/// vanishing cycles that drive the transvection formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairedLattice {
    pairing: IntersectionForm,
}

impl PairedLattice {
    pub fn new(pairing: IntersectionForm) -> Self {
        PairedLattice { pairing }
    }

    pub fn rank(&self) -> usize {
        self.pairing.rank()
    }

    pub fn weight(&self) -> Weight {
        self.pairing.weight()
    }

    pub fn labels(&self) -> &[String] {
        self.pairing.labels()
    }

    pub fn pairing(&self) -> &IntersectionForm {
        &self.pairing
    }

    pub fn pair(&self, x: &CycleVector, y: &CycleVector) -> Result<Rational> {
        self.pairing.pair(x, y)
    }

    pub fn basis_vector(&self, index: usize) -> CycleVector {
        let mut coords = vec![Rational::zero(); self.rank()];
        coords[index] = Rational::one();
        CycleVector::new(coords)
    }
}

/// A cycle written in the coordinates of a lattice basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleVector {
    coordinates: Vec<Rational>,
}

impl CycleVector {
    pub fn new(coordinates: Vec<Rational>) -> Self {
        CycleVector { coordinates }
    }

    pub fn from_i64(coordinates: &[i64]) -> Self {
        CycleVector {
            coordinates: coordinates.iter().map(|&c| Rational::from(c)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.coordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coordinates.is_empty()
    }

    pub fn coordinates(&self) -> &[Rational] {
        &self.coordinates
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        CycleVector {
            coordinates: self.coordinates.iter().map(|c| c * factor).collect(),
        }
    }

    /// The cycle as a column vector.
    pub fn as_column(&self) -> RationalMatrix {
        RationalMatrix::column(self.coordinates.clone())
    }
}

impl Add<&CycleVector> for &CycleVector {
    type Output = CycleVector;
    fn add(self, rhs: &CycleVector) -> CycleVector {
        assert_eq!(self.len(), rhs.len(), "cycle length mismatch in +");
        CycleVector {
            coordinates: self
                .coordinates
                .iter()
                .zip(&rhs.coordinates)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub<&CycleVector> for &CycleVector {
    type Output = CycleVector;
    fn sub(self, rhs: &CycleVector) -> CycleVector {
        assert_eq!(self.len(), rhs.len(), "cycle length mismatch in -");
        CycleVector {
            coordinates: self
                .coordinates
                .iter()
                .zip(&rhs.coordinates)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl fmt::Display for CycleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coordinates.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Sign choice in the transvection formula `x -> x ± sum_i <x, d_i> d_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

/// The matrix of the Picard-Lefschetz transvection
/// `x -> x ± sum_i <x, d_i> d_i` in the lattice basis, columns being images
/// of basis vectors.
///
/// An `I_n` degeneration is encoded by repeating its vanishing cycle n times
/// in `cycles`. The empty list gives the identity. Requires weight 1.
pub fn pl_transvection(
    lattice: &PairedLattice,
    cycles: &[CycleVector],
    sign: Sign,
) -> Result<RationalMatrix> {
    if lattice.weight() != Weight::One {
        return Err(Error::WeightMismatch {
            expected: 1,
            got: lattice.weight().as_u8(),
        });
    }
    let n = lattice.rank();
    for cycle in cycles {
        if cycle.len() != n {
            return Err(Error::CycleDimension {
                cycle: cycle.len(),
                rank: n,
            });
        }
    }
    let mut columns = Vec::with_capacity(n);
    for j in 0..n {
        let basis = lattice.basis_vector(j);
        let mut image = basis.clone();
        for delta in cycles {
            let coefficient = lattice.pair(&basis, delta)?;
            let term = delta.scale(&coefficient);
            image = match sign {
                Sign::Plus => &image + &term,
                Sign::Minus => &image - &term,
            };
        }
        columns.push(image);
    }
    Ok(RationalMatrix::from_fn(n, n, |i, j| {
        columns[j].coordinates()[i].clone()
    }))
}

/// One factor of a loop word: a named square matrix, possibly inverted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopFactor {
    pub matrix: RationalMatrix,
    pub inverse: bool,
}

/// A nonempty word of square matrices of one size, composed left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopWord {
    factors: Vec<LoopFactor>,
}

impl LoopWord {
    pub fn new(factors: Vec<LoopFactor>) -> Result<Self> {
        let first = factors.first().ok_or(Error::EmptyWord)?;
        let n = first.matrix.rows();
        if factors
            .iter()
            .any(|f| !f.matrix.is_square() || f.matrix.rows() != n)
        {
            return Err(Error::MixedWordSizes);
        }
        Ok(LoopWord { factors })
    }

    /// Parses the literal syntax `"T0 T1 T0^-1"` against a named-matrix table.
    pub fn parse(text: &str, table: &BTreeMap<String, RationalMatrix>) -> Result<Self> {
        let mut factors = Vec::new();
        for token in text.split_whitespace() {
            let (name, inverse) = match token.split_once('^') {
                None => (token, false),
                Some((name, "-1")) => (name, true),
                Some((name, "1")) => (name, false),
                Some(_) => return Err(Error::BadWordToken(token.to_owned())),
            };
            let matrix = table
                .get(name)
                .ok_or_else(|| Error::UnknownWordMatrix(name.to_owned()))?
                .clone();
            factors.push(LoopFactor { matrix, inverse });
        }
        LoopWord::new(factors)
    }

    pub fn factors(&self) -> &[LoopFactor] {
        &self.factors
    }

    /// The same word reversed with inverted exponents; composing the two
    /// gives the identity.
    pub fn reversed_inverse(&self) -> Self {
        LoopWord {
            factors: self
                .factors
                .iter()
                .rev()
                .map(|f| LoopFactor {
                    matrix: f.matrix.clone(),
                    inverse: !f.inverse,
                })
                .collect(),
        }
    }
}

/// Evaluates a loop word as the exact product of its factors in written
/// order. Inverting a singular factor fails.
pub fn evaluate_word(word: &LoopWord) -> Result<RationalMatrix> {
    let n = word.factors[0].matrix.rows();
    let mut acc = RationalMatrix::identity(n);
    for factor in &word.factors {
        let m = if factor.inverse {
            factor.matrix.inverse()?
        } else {
            factor.matrix.clone()
        };
        acc = mat_mul(&acc, &m)?;
    }
    Ok(acc)
}

/// Logarithm of a nodal local monodromy: requires `(t - I)^2 = 0` and
/// returns `t - I`, whose image is spanned by the vanishing cycles.
pub fn nodal_log(t: &RationalMatrix) -> Result<RationalMatrix> {
    if !t.is_square() {
        return Err(Error::NotSquare {
            rows: t.rows(),
            cols: t.cols(),
        });
    }
    let n = t - &RationalMatrix::identity(t.rows());
    if !mat_mul(&n, &n)?.is_zero() {
        return Err(Error::NotNodal);
    }
    Ok(n)
}
