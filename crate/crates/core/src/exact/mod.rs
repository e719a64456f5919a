//! Exact rational scalar, matrix and polynomial arithmetic.
//!
//! Everything in this module is a pure function over immutable values, with
//! no floating point anywhere: the certificates downstream are exact
//! identities, so the arithmetic has to be too.

mod matrix;
mod poly;
mod rational;

pub use matrix::{det, kernel_basis, mat_mul, rank, solve_linear, LinearSolution, RationalMatrix};
pub use poly::{
    charpoly, is_squarefree, minpoly, poly_gcd, rational_roots, squarefree_decomposition,
    RationalPolynomial,
};
pub use rational::Rational;

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn rational_strategy() -> impl Strategy<Value = Rational> {
        (-20i64..=20, 1i64..=8).prop_map(|(p, q)| Rational::new(p, q))
    }

    fn matrix_strategy(n: usize) -> impl Strategy<Value = RationalMatrix> {
        proptest::collection::vec(rational_strategy(), n * n)
            .prop_map(move |v| RationalMatrix::from_vectorized(n, n, v))
    }

    proptest! {
        #[test]
        fn det_is_multiplicative(a in matrix_strategy(3), b in matrix_strategy(3)) {
            let lhs = det(&mat_mul(&a, &b).unwrap()).unwrap();
            let rhs = &det(&a).unwrap() * &det(&b).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn mat_mul_is_associative(a in matrix_strategy(3), b in matrix_strategy(3), c in matrix_strategy(3)) {
            let left = mat_mul(&mat_mul(&a, &b).unwrap(), &c).unwrap();
            let right = mat_mul(&a, &mat_mul(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn solutions_satisfy_the_system(a in matrix_strategy(3), v in proptest::collection::vec(rational_strategy(), 3)) {
            // build a guaranteed-consistent right-hand side b = a v
            let b = mat_mul(&a, &RationalMatrix::column(v)).unwrap();
            match solve_linear(&a, &b).unwrap() {
                LinearSolution::Inconsistent => prop_assert!(false, "constructed system must be solvable"),
                solution => {
                    let x = solution.particular().unwrap();
                    prop_assert_eq!(mat_mul(&a, x).unwrap(), b);
                    if let LinearSolution::Affine { kernel, .. } = &solution {
                        for k in kernel {
                            prop_assert!(mat_mul(&a, k).unwrap().is_zero());
                        }
                    }
                }
            }
        }

        #[test]
        fn rank_nullity(a in matrix_strategy(4)) {
            prop_assert_eq!(rank(&a) + kernel_basis(&a).len(), a.cols());
        }

        #[test]
        fn cayley_hamilton(a in matrix_strategy(3)) {
            let p = charpoly(&a).unwrap();
            prop_assert!(p.eval_matrix(&a).unwrap().is_zero());
        }

        #[test]
        fn minpoly_divides_charpoly(a in matrix_strategy(3)) {
            let min = minpoly(&a).unwrap();
            let ch = charpoly(&a).unwrap();
            prop_assert!(ch.divides_exactly(&min).unwrap());
            prop_assert!(min.eval_matrix(&a).unwrap().is_zero());
        }
    }
}
