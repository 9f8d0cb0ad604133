use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use yb_core::maps2::{case_invert, case_map, Case};
use yb_core::maps3::{
    discriminant_relative, gv_transform, gv_transform_inverse, Branch, GvVector, LeafParams3,
};
use yb_core::matrix::FamilyKind;
use yb_core::refactor::{refactor_2x2, refactor_nxn};
use yb_core::sklyanin::{sklyanin_nxn, PoissonStructure};
use yb_core::verify::sample_refactor_instance;
use yb_core::{c, CMatrix, C64};

fn complex() -> impl Strategy<Value = C64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(a, b)| c(a, b))
}

fn away() -> impl Strategy<Value = C64> {
    complex().prop_filter("away from zero", |z| z.norm() >= 0.3)
}

fn vec_of(n: usize) -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec(complex(), n)
}

fn max_dist(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max)
}

fn exactly_antisymmetric(j: &PoissonStructure, p: &[C64]) -> bool {
    let m = j.eval(p);
    (0..j.dim()).all(|r| (0..j.dim()).all(|s| m[(r, s)] == -m[(s, r)]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn structures_are_exactly_antisymmetric(a in vec_of(9), p in vec_of(9), a2 in vec_of(4), q in vec_of(4)) {
        let a = CMatrix::from_vec(3, 3, a).unwrap();
        prop_assert!(exactly_antisymmetric(&sklyanin_nxn(&a), &p));
        let a2 = CMatrix::from_vec(2, 2, a2).unwrap();
        prop_assert!(exactly_antisymmetric(&sklyanin_nxn(&a2), &q));
    }

    #[test]
    fn case_maps_invert_through_the_strong_lax_equation(
        case in prop_oneof![Just(Case::I), Just(Case::II)],
        a0 in away(), b0 in away(), ar in vec_of(3), br in vec_of(3),
        x1 in complex(), x2 in away(), y1 in complex(), y2 in away(),
    ) {
        let alpha = [a0, ar[0], ar[1], ar[2]];
        let beta = [b0, br[0], br[1], br[2]];
        let (x, y) = ([x1, x2], [y1, y2]);
        let Ok((u, v)) = case_map(case, &x, &alpha, &y, &beta) else { return Ok(()) };
        if u.iter().chain(&v).any(|z| z.norm() > 1e2) {
            return Ok(());
        }
        let Ok((v_back, x_back)) = case_invert(case, &u, &alpha, &y, &beta) else { return Ok(()) };
        let scale = 1.0 + u.iter().chain(&v).map(|z| z.norm()).fold(0.0, f64::max);
        prop_assert!(max_dist(&v_back, &v) <= 1e-8 * scale, "{:?} vs {:?}", v_back, v);
        prop_assert!(max_dist(&x_back, &x) <= 1e-8 * scale, "{:?} vs {:?}", x_back, x);
    }

    #[test]
    fn gv_transform_round_trips(xi in vec_of(2), eta in vec_of(2), lambda in away()) {
        let g = GvVector { xi: [xi[0], xi[1]], eta: [eta[0], eta[1]], lambda };
        let s = xi[0] * eta[0] + xi[1] * eta[1] + 1.0;
        prop_assume!(s.norm() > 0.05);
        let x = gv_transform(&g).unwrap();
        let back = gv_transform_inverse(&x, lambda).unwrap();
        prop_assert!(max_dist(&back.coords(), &g.coords()) <= 1e-12 / s.norm());
    }

    #[test]
    fn generic_solver_agrees_with_closed_form_at_n2(seed in any::<u64>(), kind in prop_oneof![
        Just(FamilyKind::DiagonalI), Just(FamilyKind::JordanII), Just(FamilyKind::RotationIII)
    ]) {
        let inst = sample_refactor_instance(&mut ChaCha8Rng::seed_from_u64(seed), 2, kind);
        let Ok(closed) = refactor_2x2(&inst.x, &inst.y, &inst.ka, &inst.kb) else { return Ok(()) };
        let generic = refactor_nxn(&inst.x, &inst.y, &inst.ka, &inst.kb).unwrap();
        let scale = 1.0 + closed.u.max_abs().max(closed.v.max_abs());
        prop_assert!((&generic.u - &closed.u).max_abs() <= 1e-8 * scale);
        prop_assert!((&generic.v - &closed.v).max_abs() <= 1e-8 * scale);
    }

    #[test]
    fn coinciding_inputs_are_a_fixed_point(seed in any::<u64>(), n in 2usize..5) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let inst = sample_refactor_instance(&mut r, n, FamilyKind::DiagonalI);
        let fixed = refactor_nxn(&inst.x, &inst.x, &inst.ka, &inst.ka).unwrap();
        prop_assert!((&fixed.u - &inst.x).max_abs() <= 1e-9 * (1.0 + inst.x.max_abs()));
        prop_assert!((&fixed.v - &inst.x).max_abs() <= 1e-9 * (1.0 + inst.x.max_abs()));
    }

    #[test]
    fn leaf_labels_from_levels_reproduce_the_levels(
        f1 in complex(), f2 in complex(), minus in any::<bool>()
    ) {
        let branch = if minus { Branch::Minus } else { Branch::Plus };
        let p = LeafParams3::from_levels(f1, f2, branch);
        let cas = p.casimirs();
        prop_assert!((cas[1] - f1).norm() <= 1e-12);
        prop_assert!((cas[2] - f2).norm() <= 1e-12);
        prop_assert!(discriminant_relative(cas[0], cas[1], cas[2]) <= 1e-9);
    }
}
