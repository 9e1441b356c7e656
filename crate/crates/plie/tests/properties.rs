//! Property tests for the structural invariants.

use proptest::prelude::*;

use plie::algebra::{anti_monotone_check, fit_abc, inverse_recurrence_step};
use plie::boros::{conjugate_to_additive, verify_boros};
use plie::classify::{classify_candidate, verify_solution, FamilyKind, SolutionFamily};
use plie::domain::{Interval, SelfMap};
use plie::expr::{parse, BinaryOp, ExprAst, Func};
use plie::solver::{objective, MonotoneGridMap};

// ---------------------------------------------------------------------------
// iteration

proptest! {
    /// iterate(m+n, x) applies the same operations in the same order as
    /// iterate(m, iterate(n, x)), so for affine maps the results are
    /// bit-identical whenever no escape occurs.
    #[test]
    fn iterate_composes(
        slope in -1.5f64..1.5,
        intercept in -2.0f64..2.0,
        x in -5.0f64..5.0,
        m in 0usize..6,
        n in 0usize..6,
    ) {
        let g = SelfMap::affine(slope, intercept, Interval::full_line());
        let direct = g.iterate(m + n, x).unwrap();
        let composed = g.iterate(m, g.iterate(n, x).unwrap()).unwrap();
        prop_assert_eq!(direct.to_bits(), composed.to_bits());
    }

    /// Orbits of increasing maps are monotone sequences; orbits of
    /// decreasing maps are anti-monotone.
    #[test]
    fn orbit_monotonicity(
        slope in prop_oneof![0.05f64..0.95, -0.95f64..-0.05],
        intercept in -1.0f64..1.0,
        x in -3.0f64..3.0,
    ) {
        let g = SelfMap::affine(slope, intercept, Interval::full_line());
        let orbit = g.orbit(x, 12).unwrap();
        if slope > 0.0 {
            let increasing = orbit.values.windows(2).all(|w| w[1] >= w[0]);
            let decreasing = orbit.values.windows(2).all(|w| w[1] <= w[0]);
            prop_assert!(increasing || decreasing);
        } else {
            prop_assert!(anti_monotone_check(&orbit).unwrap().holds);
        }
    }
}

// ---------------------------------------------------------------------------
// the inverse recurrence and its closed form

proptest! {
    /// Extrapolating the fitted closed form agrees with stepping the
    /// recurrence directly for n ≤ 30.
    #[test]
    fn fit_extrapolation_matches_recurrence(
        x0 in -10.0f64..10.0,
        x1 in -10.0f64..10.0,
        x2 in -10.0f64..10.0,
    ) {
        let fit = fit_abc(x0, x1, x2);
        let mut seq = vec![x0, x1, x2];
        for n in 0..30 {
            let next = inverse_recurrence_step(seq[n], seq[n + 1], seq[n + 2]);
            seq.push(next);
        }
        for (n, &expected) in seq.iter().enumerate() {
            let got = fit.extrapolate(n);
            let scale = expected.abs().max(x0.abs()).max(x1.abs()).max(x2.abs()).max(1.0);
            prop_assert!(
                (got - expected).abs() <= 1e-9 * scale,
                "n = {}: fit {} vs recurrence {}", n, got, expected
            );
        }
    }

    /// Orbits of any decreasing affine map with slope −1/2 (the inverse of a
    /// solution g(x) = −2x + c) fit with no linear term.
    #[test]
    fn slope_half_orbits_have_no_linear_term(
        c in -10.0f64..10.0,
        x0 in -10.0f64..10.0,
    ) {
        let g = SelfMap::affine(-0.5, c, Interval::full_line());
        let orbit = g.orbit(x0, 2).unwrap();
        let fit = fit_abc(orbit.values[0], orbit.values[1], orbit.values[2]);
        prop_assert!(fit.a.abs() <= 1e-10, "A = {}", fit.a);
        prop_assert!(anti_monotone_check(&g.orbit(x0, 10).unwrap()).unwrap().holds);
    }
}

// ---------------------------------------------------------------------------
// expression grammar

fn canonical_ast() -> impl Strategy<Value = ExprAst> {
    let leaf = prop_oneof![
        (0.0f64..100.0).prop_map(ExprAst::Const),
        Just(ExprAst::Var),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| ExprAst::Neg(Box::new(e))),
            (inner.clone(), inner.clone(), prop_oneof![
                Just(BinaryOp::Add),
                Just(BinaryOp::Sub),
                Just(BinaryOp::Mul),
                Just(BinaryOp::Div),
                Just(BinaryOp::Pow),
            ])
                .prop_map(|(a, b, op)| ExprAst::binary(op, a, b)),
            (inner, prop_oneof![
                Just(Func::Exp),
                Just(Func::Log),
                Just(Func::Sqrt),
                Just(Func::Abs),
            ])
                .prop_map(|(e, f)| ExprAst::Call(f, Box::new(e))),
        ]
    })
}

proptest! {
    /// Printing is canonical: the printed text re-parses to an equal tree,
    /// and printing that tree reproduces the text.
    #[test]
    fn print_parse_fixpoint(ast in canonical_ast()) {
        let printed = ast.to_string();
        let reparsed = parse(&printed)
            .unwrap_or_else(|e| panic!("{printed:?} failed to re-parse: {e}"));
        prop_assert_eq!(&reparsed, &ast, "printed form {:?}", printed);
        prop_assert_eq!(reparsed.to_string(), printed);
    }
}

// ---------------------------------------------------------------------------
// classification

proptest! {
    /// Classifying an exact family member returns that family with zero
    /// distance (nearest-argument invariance).
    #[test]
    fn classify_family_members(
        c in -4.0f64..4.0,
        pick_affine in proptest::bool::ANY,
    ) {
        let full = Interval::full_line();
        let member = if pick_affine {
            SolutionFamily { kind: FamilyKind::AffineNeg2 { c }, domain: full }
        } else {
            SolutionFamily { kind: FamilyKind::Translation { c }, domain: full }
        };
        let report = classify_candidate(&member.to_map(), 201, Some((-5.0, 5.0))).unwrap();
        let nearest = report.nearest_family.unwrap();
        prop_assert!(report.distance_sup.unwrap() <= 1e-9);
        match (member.kind, nearest.kind) {
            (FamilyKind::Translation { c: want }, FamilyKind::Translation { c: got }) => {
                prop_assert!((want - got).abs() <= 1e-9);
            }
            (FamilyKind::Translation { c: want }, FamilyKind::Identity) => {
                prop_assert!(want.abs() <= 1e-9);
            }
            (FamilyKind::AffineNeg2 { c: want }, FamilyKind::AffineNeg2 { c: got }) => {
                prop_assert!((want - got).abs() <= 1e-9);
            }
            (want, got) => prop_assert!(false, "classified {:?} as {:?}", want, got),
        }
    }
}

// ---------------------------------------------------------------------------
// conjugation equivalence transfer

proptest! {
    /// A multiplicative candidate solves the Boros equation precisely when
    /// its log conjugate solves the additive equation: residuals vanish
    /// together on matched grids, and stay apart together for perturbed
    /// non-solutions.
    #[test]
    fn equivalence_transfer(
        c in 0.2f64..5.0,
        inverse_square in proptest::bool::ANY,
        perturb in proptest::bool::ANY,
    ) {
        let positives = Interval::new(0.0, f64::INFINITY, false, false).unwrap();
        let f = if perturb {
            // c·x^(1.05) and c·x^(-2.2): monotone self-maps, not solutions
            let p = if inverse_square { -2.2 } else { 1.05 };
            SelfMap::power_law(c, p, positives).unwrap()
        } else {
            let p = if inverse_square { -2.0 } else { 1.0 };
            SelfMap::power_law(c, p, positives).unwrap()
        };
        let window = ((-4.0f64).exp(), 4.0f64.exp());
        let boros_residual = verify_boros(&f, 257, Some(window)).unwrap().residual_sup;
        let g = conjugate_to_additive(&f).unwrap();
        let additive_residual = verify_solution(&g, 257, Some((-4.0, 4.0))).unwrap().residual_sup;
        if perturb {
            prop_assert!(boros_residual > 1e-6, "Boros residual {}", boros_residual);
            prop_assert!(additive_residual > 1e-6, "additive residual {}", additive_residual);
        } else {
            prop_assert!(boros_residual <= 1e-10, "Boros residual {}", boros_residual);
            prop_assert!(additive_residual <= 1e-10, "additive residual {}", additive_residual);
        }
    }
}

// ---------------------------------------------------------------------------
// solver reconstruction

proptest! {
    /// Reconstruction yields strictly increasing (or decreasing) values
    /// inside the domain closure for arbitrary parameter vectors.
    #[test]
    fn reconstruction_always_monotone(
        params in proptest::collection::vec(-40.0f64..20.0, 8..32),
        anchor in -3.0f64..3.0,
        increasing in proptest::bool::ANY,
    ) {
        let map = MonotoneGridMap {
            domain: Interval::closed(0.0, 1.0),
            window: (0.0, 1.0),
            anchor,
            log_increments: params,
            increasing,
        };
        let v = map.values();
        if increasing {
            prop_assert!(v.windows(2).all(|w| w[1] > w[0]));
        } else {
            prop_assert!(v.windows(2).all(|w| w[1] < w[0]));
        }
        prop_assert!(v.iter().all(|&x| (0.0..=1.0).contains(&x)));
        prop_assert!(objective(&map).is_finite());
    }
}
