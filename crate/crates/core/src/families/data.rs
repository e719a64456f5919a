//! Embedded constants for the four families. The matrices here are the
//! single source of truth for everything the pipeline verifies; a checksum
//! test freezes them against accidental edits.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact::{Rational, RationalMatrix};
use crate::plmono::{CycleVector, IntersectionForm, PairedLattice, Weight};

use super::{
    ComponentChain, CorrectionSystem, FamilyDataset, FiberConfig, LoopWordRule, VanishingCycle,
};

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn m2(data: [i64; 4]) -> RationalMatrix {
    RationalMatrix::from_i64(2, 2, &data)
}

fn m7(data: [i64; 49]) -> RationalMatrix {
    RationalMatrix::from_i64(7, 7, &data)
}

/// Rank-2 weight-1 lattice with `<first, second> = 1`.
fn rank2_symplectic(first: &str, second: &str) -> PairedLattice {
    PairedLattice::new(
        IntersectionForm::new(labels(&[first, second]), Weight::One, m2([0, 1, -1, 0]))
            .expect("antisymmetric by construction"),
    )
}

fn named(entries: Vec<(&str, RationalMatrix)>) -> BTreeMap<String, RationalMatrix> {
    entries
        .into_iter()
        .map(|(name, matrix)| (name.to_string(), matrix))
        .collect()
}

fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p, q)
}

/// The embedded constants of one family.
///
/// Families 1 and 4 carry full monodromy data; families 2 and 3 are known
/// only through their defining equations and bad loci, so their monodromy
/// entries are marked missing rather than failing downstream.
pub fn family_dataset(id: u8) -> Result<FamilyDataset> {
    match id {
        1 => Ok(family1()),
        2 => Ok(family2()),
        3 => Ok(family3()),
        4 => Ok(family4()),
        other => Err(Error::InvalidFamily(other)),
    }
}

fn family1() -> FamilyDataset {
    // local data over the base projective line, then pulled back through the
    // double cover w^2 = t z (z - 1)(z + 1) + t^2
    let t0 = m2([1, 2, 0, 1]);
    let t1 = m2([1, 0, -2, 1]);
    let t_tilde_m1 = m2([-3, 8, -2, 5]);
    let t_tilde_0 = m2([1, 4, 0, 1]);
    let t_tilde_1 = m2([1, 0, -2, 1]);

    // transcendental basis (A1, A2, B1, B2, C-1~, C0~, C1~)
    let q_form = IntersectionForm::new(
        labels(&["A1", "A2", "B1", "B2", "C-1~", "C0~", "C1~"]),
        Weight::Two,
        RationalMatrix::from_ratios(
            7,
            7,
            &[
                (0, 1),
                (0, 1),
                (0, 1),
                (2, 1),
                (0, 1),
                (0, 1),
                (0, 1),
                (0, 1),
                (0, 1),
                (-2, 1),
                (0, 1),
                (0, 1),
                (0, 1),
                (0, 1),
                (0, 1),
                (-2, 1),
                (0, 1),
                (0, 1),
                (0, 1),
                (0, 1),
                (0, 1),
                (2, 1),
                (0, 1),
                (0, 1),
                (0, 1),
                (0, 1),
                (0, 1),
                (0, 1),
                (0, 1),
                (0, 1),
                (0, 1),
                (0, 1),
                (-1, 1),
                (1, 1),
                (2, 1),
                (0, 1),
                (0, 1),
                (0, 1),
                (0, 1),
                (1, 1),
                (-1, 2),
                (-1, 1),
                (0, 1),
                (0, 1),
                (0, 1),
                (0, 1),
                (2, 1),
                (-1, 1),
                (-1, 1),
            ],
        ),
    );

    let m_plus = m7([
        1, 0, 1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0,
        0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1,
    ]);
    let m_minus = m7([
        1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, -1, 0, 1, 0, 0, 0, 0, 0, -1, 0, 1, 0, 0, 0, 0, 0,
        0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1,
    ]);
    let m_zero = m7([
        1, 2, -2, -2, 2, -1, -2, -2, -3, 6, 2, -4, 3, 6, 2, 6, -3, -2, 6, -3, -4, -2, -2, 2, 1, -2,
        1, 2, 0, 0, -4, 0, 1, -2, -4, -4, -4, 4, 4, -4, 1, 4, 0, -4, 0, 0, -4, 2, 1,
    ]);
    let m_infinity = m7([
        0, -4, 1, 0, -4, 2, 2, 4, 0, 4, 1, -2, 2, 4, -1, 4, -3, -2, 6, -3, -4, 0, -1, 2, 1, -2, 1,
        2, -4, 0, -4, 0, 1, -2, -4, 0, 0, 4, 4, -4, 1, 4, 0, -4, 0, 0, -4, 2, 1,
    ]);

    // eta1 = delta2, eta2 = 2*delta1 + delta2
    let delta1 = CycleVector::from_i64(&[1, 0]);
    let delta2 = CycleVector::from_i64(&[0, 1]);
    let eta2 = CycleVector::from_i64(&[2, 1]);

    FamilyDataset {
        id: 1,
        weierstrass_form: "y^2 = -x(x - 1)(x - lambda^2), lambda != 0, +-1, infinity".to_string(),
        bad_locus: "t != 0, +-2/(3*sqrt(3)), infinity".to_string(),
        base_change: Some("w^2 = t z (z - 1)(z + 1) + t^2".to_string()),
        fiber_config: Some(FiberConfig::new(1, vec![(2, 4), (4, 2), (8, 1)])),
        local_lattice: Some(rank2_symplectic("delta1", "delta2")),
        local_monodromies: named(vec![
            ("T0", t0),
            ("T1", t1),
            ("T~-1", t_tilde_m1),
            ("T~0", t_tilde_0),
            ("T~1", t_tilde_1),
        ]),
        vanishing_cycles: vec![
            // before the double cover (z^2-coordinate line)
            VanishingCycle {
                point: "0 (base)".to_string(),
                cycle: delta1.clone(),
                repeats: 2,
                monodromy: "T0".to_string(),
            },
            VanishingCycle {
                point: "1 (base)".to_string(),
                cycle: delta2.clone(),
                repeats: 2,
                monodromy: "T1".to_string(),
            },
            // after the double cover (z-coordinate line)
            VanishingCycle {
                point: "-1".to_string(),
                cycle: eta2,
                repeats: 2,
                monodromy: "T~-1".to_string(),
            },
            VanishingCycle {
                point: "0".to_string(),
                cycle: delta1,
                repeats: 4,
                monodromy: "T~0".to_string(),
            },
            VanishingCycle {
                point: "1".to_string(),
                cycle: delta2,
                repeats: 2,
                monodromy: "T~1".to_string(),
            },
        ],
        loop_words: vec![
            LoopWordRule {
                result: "T~-1".to_string(),
                word: "T0 T1 T0^-1".to_string(),
            },
            LoopWordRule {
                result: "T~0".to_string(),
                word: "T0 T0".to_string(),
            },
            LoopWordRule {
                result: "T~1".to_string(),
                word: "T1".to_string(),
            },
        ],
        q_form: Some(q_form.expect("symmetric by construction")),
        big_monodromies: named(vec![
            ("M+", m_plus),
            ("M-", m_minus),
            ("M0", m_zero),
            ("Minf", m_infinity),
        ]),
        corrections: family1_corrections(),
        missing_monodromies: Vec::new(),
    }
}

fn family1_corrections() -> Vec<CorrectionSystem> {
    let i2 = |minus: &str, plus: &str, hits: &str| {
        ComponentChain::cycle(labels(&[minus, plus]), hits).expect("two components")
    };
    let i4 = |stem: &str, hits: &str| {
        ComponentChain::cycle(
            vec![
                format!("{stem}0"),
                format!("{stem}1"),
                format!("{stem}2"),
                format!("{stem}3"),
            ],
            hits,
        )
        .expect("four components")
    };
    // The cycle through the two I2 fibers meets each pair of components in
    // one positive and one negative point; the section misses the unknowns.
    let endpoint_raw = |a: &str, b: &str, c: &str, d: &str| {
        vec![
            (a.to_string(), rat(-1, 1)),
            (b.to_string(), rat(1, 1)),
            (c.to_string(), rat(-1, 1)),
            (d.to_string(), rat(1, 1)),
        ]
    };
    vec![
        CorrectionSystem {
            name: "C-1~".to_string(),
            raw_intersections: endpoint_raw("D-", "D+", "E-", "E+"),
            chains: vec![i2("D-", "D+", "D-"), i2("E-", "E+", "E+")],
            unknowns: labels(&["D+", "E-"]),
            printed_solution: vec![
                ("D+".to_string(), rat(1, 2)),
                ("E-".to_string(), rat(-1, 2)),
            ],
        },
        CorrectionSystem {
            name: "C0~".to_string(),
            // the cycle crosses one component of each I4 chain, with
            // opposite orientations at the two endpoints
            raw_intersections: vec![
                ("L1".to_string(), rat(1, 1)),
                ("L2".to_string(), rat(0, 1)),
                ("L3".to_string(), rat(0, 1)),
                ("F1".to_string(), rat(-1, 1)),
                ("F2".to_string(), rat(0, 1)),
                ("F3".to_string(), rat(0, 1)),
            ],
            chains: vec![i4("L", "L0"), i4("F", "F0")],
            unknowns: labels(&["L1", "L2", "L3", "F1", "F2", "F3"]),
            printed_solution: vec![
                ("L1".to_string(), rat(3, 4)),
                ("L2".to_string(), rat(1, 2)),
                ("L3".to_string(), rat(1, 4)),
                ("F1".to_string(), rat(-3, 4)),
                ("F2".to_string(), rat(-1, 2)),
                ("F3".to_string(), rat(-1, 4)),
            ],
        },
        CorrectionSystem {
            name: "C1~".to_string(),
            raw_intersections: endpoint_raw("G-", "G+", "H-", "H+"),
            chains: vec![i2("G-", "G+", "G-"), i2("H-", "H+", "H+")],
            unknowns: labels(&["G+", "H-"]),
            printed_solution: vec![
                ("G+".to_string(), rat(1, 2)),
                ("H-".to_string(), rat(-1, 2)),
            ],
        },
    ]
}

fn family2() -> FamilyDataset {
    FamilyDataset {
        id: 2,
        weierstrass_form: "y^2 = 4x^3 + ((lambda + 2)x + lambda)^2, lambda != 0, 1, -8, infinity"
            .to_string(),
        bad_locus: "lambda != 0, 1, -8, infinity".to_string(),
        base_change: None,
        fiber_config: None,
        local_lattice: None,
        local_monodromies: BTreeMap::new(),
        vanishing_cycles: Vec::new(),
        loop_words: Vec::new(),
        q_form: None,
        big_monodromies: BTreeMap::new(),
        corrections: Vec::new(),
        missing_monodromies: vec!["all".to_string()],
    }
}

fn family3() -> FamilyDataset {
    FamilyDataset {
        id: 3,
        weierstrass_form: concat!(
            "y^2 = 4x^3 + (lambda^2 + 6 lambda - 11)x^2 + (10 - 10 lambda)x + 4 lambda - 3, ",
            "lambda != 0, infinity and lambda^2 + 11 lambda - 1 != 0"
        )
        .to_string(),
        bad_locus: "lambda != 0, infinity; lambda^2 + 11 lambda - 1 != 0".to_string(),
        base_change: None,
        fiber_config: None,
        local_lattice: None,
        local_monodromies: BTreeMap::new(),
        vanishing_cycles: Vec::new(),
        loop_words: Vec::new(),
        q_form: None,
        big_monodromies: BTreeMap::new(),
        corrections: Vec::new(),
        missing_monodromies: vec!["all".to_string()],
    }
}

fn family4() -> FamilyDataset {
    let t_one = m2([1, 1, 0, 1]);
    let t_r = m2([1, 0, -1, 1]);
    let t_rbar = m2([2, 1, -1, 0]);

    // transcendental basis (A1, A2, B1, B2, C1~, Cr~, Crbar~)
    let q_form = IntersectionForm::new(
        labels(&["A1", "A2", "B1", "B2", "C1~", "Cr~", "Crbar~"]),
        Weight::Two,
        m7([
            0, 0, 0, -1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0,
            0, 0, 0, 0, -2, 1, -1, 0, 0, 0, 0, 1, -2, 1, 0, 0, 0, 0, -1, 1, -2,
        ]),
    )
    .expect("symmetric by construction");

    let m_one = m7([
        1, 0, 1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0,
        0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1,
    ]);

    let delta = CycleVector::from_i64(&[1, 0]);
    let eta = CycleVector::from_i64(&[0, 1]);
    let delta_minus_eta = CycleVector::from_i64(&[1, -1]);

    FamilyDataset {
        id: 4,
        weierstrass_form: "y^2 = 4x^3 + (3 lambda x + 1)^2, lambda != infinity, lambda^3 != 1"
            .to_string(),
        bad_locus: "t != 0, 1, infinity".to_string(),
        base_change: Some("w^2 = t(z^3 - 1) + t^2".to_string()),
        fiber_config: Some(FiberConfig::new(1, vec![(1, 6), (18, 1)])),
        local_lattice: Some(rank2_symplectic("delta", "eta")),
        local_monodromies: named(vec![("T1", t_one), ("Tr", t_r), ("Trbar", t_rbar)]),
        vanishing_cycles: vec![
            VanishingCycle {
                point: "1".to_string(),
                cycle: delta,
                repeats: 1,
                monodromy: "T1".to_string(),
            },
            VanishingCycle {
                point: "r".to_string(),
                cycle: eta,
                repeats: 1,
                monodromy: "Tr".to_string(),
            },
            VanishingCycle {
                point: "rbar".to_string(),
                cycle: delta_minus_eta,
                repeats: 1,
                monodromy: "Trbar".to_string(),
            },
        ],
        loop_words: Vec::new(),
        q_form: Some(q_form),
        big_monodromies: named(vec![("M1", m_one)]),
        corrections: Vec::new(),
        missing_monodromies: vec!["M0".to_string()],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::det;

    #[test]
    fn invalid_family_id() {
        assert!(matches!(family_dataset(0), Err(Error::InvalidFamily(0))));
        assert!(matches!(family_dataset(5), Err(Error::InvalidFamily(5))));
    }

    #[test]
    fn family1_column_action_of_m0() {
        // M0 sends the first basis cycle to A1 - 2 A2 + 2 B1 - 2 B2 - 4 C0~
        let dataset = family_dataset(1).unwrap();
        let m0 = &dataset.big_monodromies["M0"];
        let column: Vec<i64> = vec![1, -2, 2, -2, 0, -4, 0];
        for (i, expected) in column.iter().enumerate() {
            assert_eq!(m0.get(i, 0), &Rational::from(*expected));
        }
    }

    #[test]
    fn family_q_forms_are_nondegenerate() {
        let q1 = family_dataset(1).unwrap().q_form.unwrap();
        assert_eq!(det(q1.matrix()).unwrap(), Rational::from(-8));
        let q4 = family_dataset(4).unwrap().q_form.unwrap();
        assert_eq!(det(q4.matrix()).unwrap(), Rational::from(-4));
    }

    #[test]
    fn family4_has_printed_local_monodromies() {
        let dataset = family_dataset(4).unwrap();
        assert_eq!(
            dataset.local_monodromies["Trbar"],
            RationalMatrix::from_i64(2, 2, &[2, 1, -1, 0])
        );
        assert_eq!(dataset.missing_monodromies, vec!["M0".to_string()]);
    }

    #[test]
    fn families_two_and_three_carry_equations_only() {
        for id in [2u8, 3] {
            let dataset = family_dataset(id).unwrap();
            assert!(dataset.big_monodromies.is_empty());
            assert!(dataset.q_form.is_none());
            assert!(!dataset.weierstrass_form.is_empty());
            assert!(!dataset.bad_locus.is_empty());
        }
    }

    /// FNV-1a over the pinned JSON rendering of each embedded matrix; these
    /// checksums freeze the transcriptions against accidental edits.
    fn fnv1a(bytes: &[u8]) -> u64 {
        let mut hash = 0xcbf2_9ce4_8422_2325u64;
        for &b in bytes {
            hash ^= u64::from(b);
            hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
        }
        hash
    }

    #[test]
    fn embedded_matrices_are_frozen() {
        let mut digests = Vec::new();
        for id in [1u8, 4] {
            let dataset = family_dataset(id).unwrap();
            for (name, matrix) in &dataset.local_monodromies {
                let json = serde_json::to_string(matrix).unwrap();
                digests.push(format!("F{id}.{name}:{:016x}", fnv1a(json.as_bytes())));
            }
            if let Some(q) = &dataset.q_form {
                let json = serde_json::to_string(q.matrix()).unwrap();
                digests.push(format!("F{id}.Q:{:016x}", fnv1a(json.as_bytes())));
            }
            for (name, matrix) in &dataset.big_monodromies {
                let json = serde_json::to_string(matrix).unwrap();
                digests.push(format!("F{id}.{name}:{:016x}", fnv1a(json.as_bytes())));
            }
        }
        let expected: Vec<&str> = vec![
            "F1.T0:b270ac965b93f79b",
            "F1.T1:8a92b2c5e5b63f00",
            "F1.T~-1:488fbe29491af9f1",
            "F1.T~0:4ee6a02322004981",
            "F1.T~1:8a92b2c5e5b63f00",
            "F1.Q:e85c0b20b76a8796",
            "F1.M+:d6f8a7e4ec48aa12",
            "F1.M-:05e797aaca5400d4",
            "F1.M0:bfd6519d00960970",
            "F1.Minf:cb2b80fe197422b9",
            "F4.T1:79c729dda30e5cfa",
            "F4.Tr:a371de3133721675",
            "F4.Trbar:295c63b30ecbdc2c",
            "F4.Q:251cfdd319fe73de",
            "F4.M1:2fd72be1b69c246a",
        ];
        assert_eq!(digests, expected);
    }
}
