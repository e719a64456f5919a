//! The four elliptic-surface families: embedded constants, Hodge-number
//! bookkeeping, the transcendental-correction solver, and the spectral
//! analysis of the fourth family's known monodromy.

mod data;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{
    charpoly, is_squarefree, mat_mul, minpoly, solve_linear, squarefree_decomposition,
    LinearSolution, Rational, RationalMatrix, RationalPolynomial,
};
use crate::plmono::{CycleVector, IntersectionForm, PairedLattice};

pub use data::family_dataset;

/// Kodaira `I_n` fibers with counts, plus the genus of the base curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberConfig {
    pub base_genus: usize,
    /// `(n, count)` pairs: `count` fibers of type `I_n`.
    pub fibers: Vec<(usize, usize)>,
}

impl FiberConfig {
    pub fn new(base_genus: usize, fibers: Vec<(usize, usize)>) -> Self {
        FiberConfig { base_genus, fibers }
    }

    /// Sum of the fiber Euler numbers (`I_n` contributes `n`).
    pub fn euler_sum(&self) -> usize {
        self.fibers.iter().map(|&(n, count)| n * count).sum()
    }
}

/// The second-cohomology bookkeeping of one family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeSummary {
    pub chi: usize,
    pub p_g: usize,
    pub b2: usize,
    pub algebraic_count: usize,
    pub transcendental_bound: i64,
}

/// Hodge bookkeeping for an elliptic surface over a genus-g base:
/// `chi = (sum of fiber Euler numbers)/12`, `p_g = chi - 1 + g`,
/// `b2 = 2 p_g + 10 chi + 2g`, and the algebraic classes are the section,
/// the general fiber, and the `n - 1` extra components of each `I_n`.
pub fn hodge_summary(config: &FiberConfig) -> Result<HodgeSummary> {
    let sum = config.euler_sum();
    if sum == 0 {
        return Err(Error::DegenerateConfig);
    }
    if !sum.is_multiple_of(12) {
        return Err(Error::BadEulerSum { sum });
    }
    let chi = sum / 12;
    let p_g = chi - 1 + config.base_genus;
    let b2 = 2 * p_g + 10 * chi + 2 * config.base_genus;
    let algebraic_count = 2 + config
        .fibers
        .iter()
        .map(|&(n, count)| (n - 1) * count)
        .sum::<usize>();
    Ok(HodgeSummary {
        chi,
        p_g,
        b2,
        algebraic_count,
        transcendental_bound: b2 as i64 - algebraic_count as i64,
    })
}

/// The component cycle of one `I_n` fiber (`n >= 2`): components have
/// self-intersection -2 and meet their neighbors once (twice for `n = 2`),
/// and exactly one component meets the zero section.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentChain {
    pub fiber_n: usize,
    pub labels: Vec<String>,
    pub section_hits: String,
}

impl ComponentChain {
    pub fn cycle(labels: Vec<String>, section_hits: &str) -> Result<Self> {
        let n = labels.len();
        if n < 2 {
            return Err(Error::ChainTooShort(n));
        }
        if !labels.iter().any(|l| l == section_hits) {
            return Err(Error::SectionNotInChain(section_hits.to_owned()));
        }
        Ok(ComponentChain {
            fiber_n: n,
            labels,
            section_hits: section_hits.to_owned(),
        })
    }

    /// Intersection number of two components of this chain.
    pub fn pairing(&self, a: usize, b: usize) -> Rational {
        let n = self.fiber_n;
        if a == b {
            return Rational::from(-2);
        }
        let adjacent = (a + 1) % n == b || (b + 1) % n == a;
        if !adjacent {
            return Rational::zero();
        }
        // a 2-cycle meets itself twice: the two components share two points
        if n == 2 {
            Rational::from(2)
        } else {
            Rational::from(1)
        }
    }

    /// The full adjacency matrix (diagonal -2, cycle-graph off-diagonal).
    pub fn adjacency(&self) -> RationalMatrix {
        RationalMatrix::from_fn(self.fiber_n, self.fiber_n, |i, j| self.pairing(i, j))
    }
}

/// Solved correction coefficients of one transcendental cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrectionSolution {
    /// Coefficient of each unknown component, in the order they were asked.
    pub coefficients: Vec<(String, Rational)>,
    /// Human-readable corrected cycle, e.g. `C + 1/2*D+ - 1/2*E-`.
    pub corrected: String,
}

/// The label used for the zero section in correction systems.
pub const SECTION_LABEL: &str = "sigma";

/// Solves for the coefficients that make a corrected 2-cycle orthogonal to
/// the constrained fiber components and to the zero section.
///
/// `raw_intersections` lists the uncorrected cycle's pairing with each named
/// class (missing classes default to zero, `"sigma"` may appear explicitly);
/// the constrained classes are exactly the raw keys, the unknowns, and the
/// section. Component-component pairings come from the chains; the section
/// meets only each chain's `section_hits` component. The system must have a
/// unique solution on the chosen unknowns.
pub fn correction_solve(
    raw_intersections: &[(String, Rational)],
    chains: &[ComponentChain],
    unknowns: &[String],
) -> Result<CorrectionSolution> {
    let locate = |label: &str| -> Result<(usize, usize)> {
        for (c, chain) in chains.iter().enumerate() {
            if let Some(i) = chain.labels.iter().position(|l| l == label) {
                return Ok((c, i));
            }
        }
        Err(Error::UnknownComponent(label.to_owned()))
    };
    let unknown_positions: Vec<(usize, usize)> =
        unknowns.iter().map(|u| locate(u)).collect::<Result<_>>()?;

    // pairing of a component against an unknown component, or against sigma
    let class_pairing = |class: &str, unknown: usize| -> Result<Rational> {
        let (uc, ui) = unknown_positions[unknown];
        if class == SECTION_LABEL {
            let hits = chains[uc].section_hits == chains[uc].labels[ui];
            return Ok(if hits {
                Rational::one()
            } else {
                Rational::zero()
            });
        }
        let (cc, ci) = locate(class)?;
        if cc != uc {
            return Ok(Rational::zero());
        }
        Ok(chains[cc].pairing(ci, ui))
    };

    // constrained classes: raw keys, then unknowns, then sigma; first
    // occurrence wins so the equation order is deterministic
    let mut constrained: Vec<String> = Vec::new();
    let mut push = |label: &str| {
        if !constrained.iter().any(|c| c == label) {
            constrained.push(label.to_owned());
        }
    };
    for (label, _) in raw_intersections {
        push(label);
    }
    for label in unknowns {
        push(label);
    }
    push(SECTION_LABEL);

    let raw_of = |label: &str| -> Rational {
        raw_intersections
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(Rational::zero)
    };

    let rows = constrained.len();
    let cols = unknowns.len();
    let mut system = RationalMatrix::zeros(rows, cols);
    let mut rhs = RationalMatrix::zeros(rows, 1);
    for (r, class) in constrained.iter().enumerate() {
        for u in 0..cols {
            system.set(r, u, class_pairing(class, u)?);
        }
        rhs.set(r, 0, -&raw_of(class));
    }

    let solution = match solve_linear(&system, &rhs)? {
        LinearSolution::Unique(x) => x,
        LinearSolution::Affine { .. } => return Err(Error::UnderdeterminedSystem),
        LinearSolution::Inconsistent => return Err(Error::InconsistentSystem),
    };

    // re-verify orthogonality against every constrained class
    for (r, class) in constrained.iter().enumerate() {
        let mut total = raw_of(class);
        for u in 0..cols {
            total += &(system.get(r, u) * solution.get(u, 0));
        }
        if !total.is_zero() {
            return Err(Error::InconsistentSystem);
        }
    }

    let coefficients: Vec<(String, Rational)> = unknowns
        .iter()
        .cloned()
        .zip((0..cols).map(|u| solution.get(u, 0).clone()))
        .collect();
    let mut corrected = String::from("C");
    for (label, value) in &coefficients {
        if value.is_zero() {
            continue;
        }
        let sign = if value.is_negative() { "-" } else { "+" };
        let magnitude = value.abs();
        if magnitude.is_one() {
            corrected.push_str(&format!(" {sign} {label}"));
        } else {
            corrected.push_str(&format!(" {sign} {magnitude}*{label}"));
        }
    }
    Ok(CorrectionSolution {
        coefficients,
        corrected,
    })
}

/// True iff the ordered product of the matrices is the identity.
pub fn verify_product_relation(ms: &[RationalMatrix]) -> bool {
    let Some(first) = ms.first() else {
        return true;
    };
    assert!(
        ms.iter().all(|m| m.is_square() && m.rows() == first.rows()),
        "product relation requires square matrices of one size"
    );
    let mut acc = RationalMatrix::identity(first.rows());
    for m in ms {
        acc = mat_mul(&acc, m).expect("conformable");
    }
    acc.is_identity()
}

/// Spectral facts about a finite-order monodromy matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eigenstructure {
    pub order: usize,
    pub minimal_polynomial: RationalPolynomial,
    pub characteristic_polynomial: RationalPolynomial,
    /// `(factor, multiplicity)` pairs from the squarefree decomposition of
    /// the characteristic polynomial.
    pub charpoly_factors: Vec<(RationalPolynomial, usize)>,
    pub diagonalizable: bool,
}

/// Order, minimal/characteristic polynomial, and diagonalizability of a
/// finite-order matrix, searching the order up to `bound`.
pub fn finite_order_eigenstructure(m: &RationalMatrix, bound: usize) -> Result<Eigenstructure> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let mut power = m.clone();
    let mut order = None;
    for k in 1..=bound {
        if power.is_identity() {
            order = Some(k);
            break;
        }
        power = mat_mul(&power, m)?;
    }
    let order = order.ok_or(Error::NotFiniteOrder { bound })?;
    let minimal_polynomial = minpoly(m)?;
    let characteristic_polynomial = charpoly(m)?;
    let charpoly_factors = squarefree_decomposition(&characteristic_polynomial)?;
    let diagonalizable = is_squarefree(&minimal_polynomial)?;
    Ok(Eigenstructure {
        order,
        minimal_polynomial,
        characteristic_polynomial,
        charpoly_factors,
        diagonalizable,
    })
}

/// A vanishing cycle at one critical value, with the fiber multiplicity
/// (`I_n` repeats the cycle `n` times) and the name of the local monodromy
/// it reproduces through the transvection formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingCycle {
    pub point: String,
    pub cycle: CycleVector,
    pub repeats: usize,
    pub monodromy: String,
}

/// A local monodromy expressed as a loop word over other named matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopWordRule {
    pub result: String,
    pub word: String,
}

/// A correction system with its data and the expected printed solution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrectionSystem {
    pub name: String,
    pub raw_intersections: Vec<(String, Rational)>,
    pub chains: Vec<ComponentChain>,
    pub unknowns: Vec<String>,
    pub printed_solution: Vec<(String, Rational)>,
}

/// Everything this toolkit knows about one family: defining equations, fiber
/// configuration, local lattice data, and the embedded monodromy matrices.
/// Families 2 and 3 carry equations and bad loci only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDataset {
    pub id: u8,
    pub weierstrass_form: String,
    pub bad_locus: String,
    pub base_change: Option<String>,
    pub fiber_config: Option<FiberConfig>,
    pub local_lattice: Option<PairedLattice>,
    pub local_monodromies: BTreeMap<String, RationalMatrix>,
    pub vanishing_cycles: Vec<VanishingCycle>,
    pub loop_words: Vec<LoopWordRule>,
    pub q_form: Option<IntersectionForm>,
    pub big_monodromies: BTreeMap<String, RationalMatrix>,
    pub corrections: Vec<CorrectionSystem>,
    /// Documented gaps: monodromies that are not available for this family.
    pub missing_monodromies: Vec<String>,
}
