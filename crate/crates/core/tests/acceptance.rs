//! Acceptance suite. Runs without the libtest harness and prints one line per
//! criterion; the process exits non-zero if any criterion fails.
//!
//! Run with `cargo test --release -p yb-core --test acceptance`.

use std::process::ExitCode;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use yb_core::lattice::{transfer_evolve, Site, StaircaseState};
use yb_core::maps::{sample_pair, sample_yb_triple, MapId};
use yb_core::maps2::ay_limit_orders;
use yb_core::maps3::{discriminant_relative, gv_a_matrix, gv_transform, l_gv, leaf_embed_3x3, map_3x3, map_3x3_oracle, GvVector, LeafParams3};
use yb_core::matrix::FamilyKind;
use yb_core::refactor::{refactor_2x2_with, refactor_nxn_with, RefactorConfig};
use yb_core::sklyanin::{numerical_rank, skl3_displayed, sklyanin_2x2, sklyanin_3x3_identity, RANK_REL_TOL};
use yb_core::verify::{sample_refactor_instance, verify_map, Tolerances, MAX_TRIES};
use yb_core::{c, re, CMatrix, C64};

const SEED: u64 = 20_240_917;

// Pinned tolerances.
const TOL_LAX_2X2: f64 = 1e-10;
const TOL_CASIMIR_2X2: f64 = 1e-10;
const TOL_N2_AGREEMENT: f64 = 1e-9;
const TOL_CAYLEY_HAMILTON: f64 = 1e-9;
const TOL_RECURRENCE: f64 = 1e-10;
const TOL_YB: f64 = 1e-9;
const TOL_POISSON: f64 = 1e-6;
const TOL_SURFACE: f64 = 1e-9;
const TOL_INTEGRALS: f64 = 1e-10;
const TOL_INVOLUTION: f64 = 1e-9;
const TOL_INDEPENDENCE: f64 = 1e-6;
const TOL_DRIFT: f64 = 1e-8;
const TOL_GV: f64 = 1e-10;
const TOL_PROJECTIVE: f64 = 1e-12;
const TOL_CROSS_ORACLE: f64 = 1e-8;
const MIN_LIMIT_ORDER: f64 = 1.0;
// A halving estimate of a first-order limit is 1 + O(ε), so it may sit just below 1.
const ORDER_ESTIMATE_TOL: f64 = 0.05;
const LIMIT_REGIME: f64 = 0.1;

const ZETAS: [C64; 6] = [
    C64::new(0.0, 0.0),
    C64::new(1.0, 0.0),
    C64::new(-1.0, 0.0),
    C64::new(0.0, 1.0),
    C64::new(0.0, -1.0),
    C64::new(2.0, 0.0),
];

struct Line {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn rng(tag: u64, i: usize) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(SEED ^ tag.wrapping_mul(0x2545_F491_4F6C_DD1D));
    r.set_stream(i as u64);
    r
}

fn unit<R: Rng>(r: &mut R) -> C64 {
    c(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0))
}

fn away<R: Rng>(r: &mut R) -> C64 {
    loop {
        let z = unit(r);
        if z.norm() >= 0.3 {
            return z;
        }
    }
}

fn mat_err(a: &CMatrix, b: &CMatrix) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            m = m.max((a[(i, j)] - b[(i, j)]).norm());
        }
    }
    m
}

fn det2(m: &CMatrix) -> C64 {
    m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]
}

/// `(det X, sum of principal 2x2 minors, trace)` of a 3×3 matrix.
fn char3(m: &CMatrix) -> [C64; 3] {
    let g = |i: usize, j: usize| m[(i, j)];
    let det = g(0, 0) * (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1)) - g(0, 1) * (g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0))
        + g(0, 2) * (g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0));
    let minors = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0) + g(0, 0) * g(2, 2) - g(0, 2) * g(2, 0) + g(1, 1) * g(2, 2)
        - g(1, 2) * g(2, 1);
    [det, minors, g(0, 0) + g(1, 1) + g(2, 2)]
}

fn families() -> [FamilyKind; 3] {
    [FamilyKind::DiagonalI, FamilyKind::JordanII, FamilyKind::RotationIII]
}

fn refactorization_2x2() -> Line {
    let (mut lax, mut cas, mut fails) = (0.0_f64, 0.0_f64, 0);
    for i in 0..1000 {
        let inst = sample_refactor_instance(&mut rng(1, i), 2, families()[i % 3]);
        let (x, y, a, b) = (&inst.x, &inst.y, &inst.ka, &inst.kb);
        let Ok(r) = refactor_2x2_with(x, y, a, b, &RefactorConfig::unchecked()) else {
            fails += 1;
            continue;
        };
        let scale = 1.0 + y.norm_inf() * x.norm_inf();
        for &z in &ZETAS {
            let lhs = (&r.u - &a.scale(z)) * (&r.v - &b.scale(z));
            let rhs = (y - &b.scale(z)) * (x - &a.scale(z));
            lax = lax.max(mat_err(&lhs, &rhs) / scale);
        }
        // Three values of a quadratic in ζ fix it.
        for z in [re(0.0), re(1.0), re(-1.0)] {
            let (du, dx) = (det2(&(&r.u - &a.scale(z))), det2(&(x - &a.scale(z))));
            let (dv, dy) = (det2(&(&r.v - &b.scale(z))), det2(&(y - &b.scale(z))));
            cas = cas.max((du - dx).norm() / (1.0 + dx.norm())).max((dv - dy).norm() / (1.0 + dy.norm()));
        }
    }
    Line {
        name: "refactorization 2x2",
        passed: fails == 0 && lax <= TOL_LAX_2X2 && cas <= TOL_CASIMIR_2X2,
        detail: format!(
            "1000 instances, lax {lax:.2e} <= {TOL_LAX_2X2:.0e}, casimir {cas:.2e} <= {TOL_CASIMIR_2X2:.0e}, failures {fails}"
        ),
    }
}

fn generic_solver() -> Line {
    let (mut agree, mut ch, mut rec, mut fails) = (0.0_f64, 0.0_f64, 0.0_f64, 0);
    let (mut ch_abs, mut rec_abs) = (0.0_f64, 0.0_f64);
    for i in 0..1000 {
        let inst = sample_refactor_instance(&mut rng(2, i), 2, families()[i % 3]);
        let (x, y, ka, kb) = (&inst.x, &inst.y, &inst.ka, &inst.kb);
        let cfg = RefactorConfig::unchecked();
        match (refactor_2x2_with(x, y, ka, kb, &cfg), refactor_nxn_with(x, y, ka, kb, &cfg)) {
            (Ok(p), Ok(q)) => {
                let s = 1.0 + p.u.norm_inf().max(p.v.norm_inf());
                agree = agree.max(mat_err(&p.u, &q.u).max(mat_err(&p.v, &q.v)) / s);
            }
            _ => fails += 1,
        }
    }
    for n in [2usize, 3] {
        for i in 0..1000 {
            // The rotation family exists only for n = 2.
            let kind = if n == 2 { families()[i % 3] } else { families()[i % 2] };
            let inst = sample_refactor_instance(&mut rng(3 + n as u64, i), n, kind);
            let (x, y, ka, kb) = (&inst.x, &inst.y, &inst.ka, &inst.kb);
            let Ok(r) = refactor_nxn_with(x, y, ka, kb, &RefactorConfig::unchecked()) else {
                fails += 1;
                continue;
            };
            let id = CMatrix::identity(n);
            let ut = &r.u * &ka.inverse().unwrap();
            let f = interpolate_char_poly(x, ka);
            let mut acc = id.scale(f[0]);
            let mut power = id.clone();
            for (k, fk) in f.iter().enumerate().skip(1) {
                power = &power * &ut;
                acc += &power.scale(if k % 2 == 0 { *fk } else { -*fk });
            }
            // Identities are judged relative to the size of their terms.
            let un = ut.norm_inf();
            let ch_scale = f.iter().enumerate().map(|(k, fk)| fk.norm() * un.powi(k as i32)).sum::<f64>().max(1.0);
            ch_abs = ch_abs.max(acc.norm_inf());
            ch = ch.max(acc.norm_inf() / ch_scale);
            // M_k, N_k built from scratch.
            let kba = kb.inverse().unwrap() * ka.inverse().unwrap();
            let m1 = (y * ka + kb * x) * &kba;
            let n1 = -&(y * x * &kba);
            let (mut m, mut nn) = (id.clone(), CMatrix::zeros(n, n));
            let mut power = id.clone();
            for k in 1..=n {
                power = &power * &ut;
                let e = mat_err(&power, &(&ut * &m + &nn));
                rec_abs = rec_abs.max(e);
                rec = rec.max(e / un.powi(k as i32).max(1.0));
                let next_m = &m1 * &m + &nn;
                nn = &n1 * &m;
                m = next_m;
            }
        }
    }
    Line {
        name: "generic solver",
        passed: fails == 0 && agree <= TOL_N2_AGREEMENT && ch <= TOL_CAYLEY_HAMILTON && rec <= TOL_RECURRENCE,
        detail: format!(
            "n=2 agreement {agree:.2e} <= {TOL_N2_AGREEMENT:.0e}, Cayley-Hamilton {ch:.2e} <= {TOL_CAYLEY_HAMILTON:.0e} \
             (absolute {ch_abs:.1e}), recurrence {rec:.2e} <= {TOL_RECURRENCE:.0e} (absolute {rec_abs:.1e}), \
             n=2,3 x 1000, failures {fails}"
        ),
    }
}

/// `f_i` with `det(X - ζK) = Σ (-1)^i f_i ζ^i`, by interpolation at `ζ = 0..=n`.
fn interpolate_char_poly(x: &CMatrix, k: &CMatrix) -> Vec<C64> {
    let n = x.rows();
    let nodes: Vec<f64> = (0..=n).map(|i| i as f64).collect();
    let vals: Vec<C64> = nodes.iter().map(|&z| (x - &k.scale(re(z))).det().unwrap()).collect();
    // Solve the Vandermonde system directly.
    let v = CMatrix::from_fn(n + 1, n + 1, |i, j| re(nodes[i].powi(j as i32)));
    let rhs = CMatrix::from_fn(n + 1, 1, |i, _| vals[i]);
    let coef = v.inverse().unwrap() * rhs;
    (0..=n).map(|i| if i % 2 == 0 { coef[(i, 0)] } else { -coef[(i, 0)] }).collect()
}

fn apply_pair(map: MapId, s: &mut [Vec<C64>; 3], p: &[Vec<C64>; 3], i: usize, j: usize) -> bool {
    match map.apply(&s[i], &p[i], &s[j], &p[j]) {
        Ok((u, v)) => {
            s[i] = u;
            s[j] = v;
            true
        }
        Err(_) => false,
    }
}

fn yang_baxter() -> Line {
    let maps = [MapId::Case1, MapId::Case2, MapId::Ay, MapId::Yb3, MapId::Boussinesq, MapId::Gv];
    let mut parts = Vec::new();
    let mut passed = true;
    for (t, &map) in maps.iter().enumerate() {
        let (mut worst, mut missing) = (0.0_f64, 0);
        for i in 0..1000 {
            let Some((state, params, _, _)) = sample_yb_triple(map, &mut rng(10 + t as u64, i), MAX_TRIES) else {
                missing += 1;
                continue;
            };
            let (mut left, mut right) = (state.clone(), state.clone());
            let ok = apply_pair(map, &mut left, &params, 0, 1)
                && apply_pair(map, &mut left, &params, 0, 2)
                && apply_pair(map, &mut left, &params, 1, 2)
                && apply_pair(map, &mut right, &params, 1, 2)
                && apply_pair(map, &mut right, &params, 0, 2)
                && apply_pair(map, &mut right, &params, 0, 1);
            if !ok {
                missing += 1;
                continue;
            }
            let mag = state.iter().chain(&left).chain(&right).flatten().map(|z| z.norm()).fold(0.0, f64::max);
            let diff = (0..3)
                .flat_map(|k| left[k].iter().zip(&right[k]).map(|(a, b)| (a - b).norm()))
                .fold(0.0, f64::max);
            worst = worst.max(diff / (1.0 + mag));
        }
        passed &= missing == 0 && worst <= TOL_YB;
        parts.push(format!("{map} {worst:.1e}"));
    }
    Line {
        name: "yang-baxter",
        passed,
        detail: format!("1000 triples per map, tol {TOL_YB:.0e}: {}", parts.join(", ")),
    }
}

fn poisson() -> Line {
    let tol = Tolerances {
        poisson: TOL_POISSON,
        ..Tolerances::default()
    };
    let mut parts = Vec::new();
    let mut passed = true;
    for map in [MapId::Case1, MapId::Case2, MapId::Ay, MapId::Yb3, MapId::Boussinesq, MapId::Gv] {
        let report = verify_map(map, 100, SEED, &tol);
        let check = report.checks.iter().find(|c| c.name == "poisson").expect("poisson check");
        passed &= check.passed && check.samples == 100;
        parts.push(format!("{map} {:.1e} (err {})", check.value, check.errors));
    }
    Line {
        name: "poisson property",
        passed,
        detail: format!("100 points per map, halving-stable, tol {TOL_POISSON:.0e}: {}", parts.join(", ")),
    }
}

fn sklyanin() -> Line {
    // Closed-form entries of the 2x2 structure, upper triangle, coordinates x1..x4 row-major.
    let mut entry_mismatch = 0;
    for i in 0..1000 {
        let mut r = rng(20, i);
        let x: Vec<C64> = (0..4).map(|_| unit(&mut r)).collect();
        let a: Vec<C64> = (0..4).map(|_| unit(&mut r)).collect();
        let j = sklyanin_2x2(&CMatrix::from_vec(2, 2, a.clone()).unwrap()).eval(&x);
        let expected = [
            ((0, 1), -x[1] * a[0] + x[0] * a[1]),
            ((0, 2), x[2] * a[0] - x[0] * a[2]),
            ((0, 3), x[2] * a[1] - x[1] * a[2]),
            ((1, 2), x[3] * a[0] - x[0] * a[3]),
            ((1, 3), x[3] * a[1] - x[1] * a[3]),
            ((2, 3), -x[3] * a[2] + x[2] * a[3]),
        ];
        for ((p, q), v) in expected {
            if j[(p, q)] != v || j[(q, p)] != -v {
                entry_mismatch += 1;
            }
        }
        for d in 0..4 {
            if j[(d, d)] != re(0.0) {
                entry_mismatch += 1;
            }
        }
    }
    let (mut generic_bad, mut leaf_bad) = (0, 0);
    let s3 = sklyanin_3x3_identity();
    for i in 0..200 {
        let mut r = rng(21, i);
        let x: Vec<C64> = (0..9).map(|_| unit(&mut r)).collect();
        let xm = CMatrix::from_vec(3, 3, x.clone()).unwrap();
        if numerical_rank(&s3.eval(&x), RANK_REL_TOL) != 6 || numerical_rank(&skl3_displayed(&xm), RANK_REL_TOL) != 6 {
            generic_bad += 1;
        }
        let p = LeafParams3::new(unit(&mut r), unit(&mut r));
        let coords = [unit(&mut r), unit(&mut r), away(&mut r), away(&mut r)];
        let leaf = leaf_embed_3x3(&coords, &p).unwrap();
        if numerical_rank(&skl3_displayed(&leaf), RANK_REL_TOL) != 4 {
            leaf_bad += 1;
        }
    }
    Line {
        name: "sklyanin structure",
        passed: entry_mismatch == 0 && generic_bad == 0 && leaf_bad == 0,
        detail: format!(
            "2x2 entries exact on 1000 points (mismatches {entry_mismatch}); rank 6 generic (misses {generic_bad}/200), \
             rank 4 constrained (misses {leaf_bad}/200), threshold {RANK_REL_TOL:.0e} sigma_max"
        ),
    }
}

fn surface() -> Line {
    let mut worst = 0.0_f64;
    for i in 0..1000 {
        let mut r = rng(30, i);
        let p = LeafParams3::new(unit(&mut r), unit(&mut r));
        let coords = [unit(&mut r), unit(&mut r), away(&mut r), away(&mut r)];
        let [f0, f1, f2] = char3(&leaf_embed_3x3(&coords, &p).unwrap());
        worst = worst.max(discriminant_relative(f0, f1, f2));
    }
    let mut curves = 0.0_f64;
    for i in 0..100 {
        let a = unit(&mut rng(31, i));
        curves = curves
            .max(discriminant_relative(a * a * a, 3.0 * a * a, 3.0 * a))
            .max(discriminant_relative(-a * a * a, -a * a, a));
    }
    Line {
        name: "discriminant surface",
        passed: worst <= TOL_SURFACE && curves <= TOL_SURFACE,
        detail: format!("1000 leaf points {worst:.2e}, special curves {curves:.2e}, tol {TOL_SURFACE:.0e}"),
    }
}

fn integrability() -> Line {
    let tol = Tolerances {
        integrals: TOL_INTEGRALS,
        involution: TOL_INVOLUTION,
        independence: TOL_INDEPENDENCE,
        ..Tolerances::default()
    };
    let report = verify_map(MapId::Ay, 1000, SEED, &tol);
    let get = |n: &str| report.checks.iter().find(|c| c.name == n).expect("check");
    let (inv, inv_ok) = (get("integrals").value, get("integrals").passed);
    let (invol, invol_ok) = (get("involution").value, get("involution").passed);
    // Independence is judged on the first 100 points.
    let indep_report = verify_map(MapId::Ay, 100, SEED, &tol);
    let indep = indep_report.checks.iter().find(|c| c.name == "independence").unwrap();
    // 100 transfer steps on 1-periodic staircases, J drift measured directly.
    let mut drift = 0.0_f64;
    let mut drift_fail = 0;
    for i in 0..20 {
        let Some((x, a, y, b, _)) = sample_pair(MapId::Ay, &mut rng(40, i), MAX_TRIES) else {
            drift_fail += 1;
            continue;
        };
        let state = StaircaseState::new(
            MapId::Ay,
            vec![Site { coords: x, params: a.clone() }, Site { coords: y, params: b.clone() }],
        )
        .unwrap();
        match transfer_evolve(&state, 100, 0) {
            Ok(e) => {
                drift = drift.max(e.report.max_coeff_drift);
                drift = drift.max(e.report.j1_drift.unwrap()).max(e.report.j2_drift.unwrap());
            }
            Err(_) => drift_fail += 1,
        }
    }
    Line {
        name: "integrability",
        passed: inv_ok && invol_ok && indep.passed && drift_fail == 0 && drift <= TOL_DRIFT,
        detail: format!(
            "invariance {inv:.2e} <= {TOL_INTEGRALS:.0e}, involution {invol:.2e} <= {TOL_INVOLUTION:.0e}, \
             min sigma2/sigma1 {:.2e} >= {TOL_INDEPENDENCE:.0e}, 100-step drift {drift:.2e} <= {TOL_DRIFT:.0e} (failures {drift_fail})",
            indep.value
        ),
    }
}

fn gv_equivalence() -> Line {
    let (mut worst, mut proj) = (0.0_f64, 0.0_f64);
    let mut skipped = 0;
    for i in 0..500 {
        let mut r = rng(50, i);
        let g = GvVector {
            xi: [unit(&mut r), unit(&mut r)],
            eta: [unit(&mut r), unit(&mut r)],
            lambda: away(&mut r),
        };
        let (xi, eta) = (g.xi3(), g.eta3());
        let ip = xi[0] * eta[0] + xi[1] * eta[1] + xi[2] * eta[2];
        if ip.norm() < 0.3 {
            skipped += 1;
            continue;
        }
        let x = gv_transform(&g).unwrap();
        for &z in &ZETAS[..5] {
            let b = CMatrix::from_fn(3, 3, |p, q| {
                let d = if p == q { re(1.0) } else { re(0.0) };
                g.lambda * (2.0 * xi[p] * eta[q] / ip - d) - z * d
            });
            let l = l_gv(&x, -g.lambda, z).unwrap();
            worst = worst.max(mat_err(&b, &l) / (1.0 + b.norm_inf()));
        }
        let (mu, nu) = (away(&mut r), away(&mut r));
        let xs = [mu * xi[0], mu * xi[1], mu * xi[2]];
        let es = [nu * eta[0], nu * eta[1], nu * eta[2]];
        let z = c(2.5, 0.5);
        let a0 = gv_a_matrix(&xi, &eta, g.lambda, z).unwrap();
        let a1 = gv_a_matrix(&xs, &es, g.lambda, z).unwrap();
        proj = proj.max(mat_err(&a0, &a1) / (1.0 + a0.norm_inf()));
    }
    Line {
        name: "gv equivalence",
        passed: worst <= TOL_GV && proj <= TOL_PROJECTIVE && skipped < 50,
        detail: format!(
            "{} samples x 5 zeta {worst:.2e} <= {TOL_GV:.0e}, projective invariance {proj:.2e} <= {TOL_PROJECTIVE:.0e}",
            500 - skipped
        ),
    }
}

fn cross_oracle() -> Line {
    let (mut worst, mut fails) = (0.0_f64, 0);
    for i in 0..1000 {
        let Some((x, a, y, b, _)) = sample_pair(MapId::Yb3, &mut rng(60, i), MAX_TRIES) else {
            fails += 1;
            continue;
        };
        match (map_3x3(&x, &a, &y, &b), map_3x3_oracle(&x, &a, &y, &b)) {
            (Ok((u, v)), Ok((p, q))) => {
                let s = 1.0 + u.iter().chain(&v).map(|z| z.norm()).fold(0.0, f64::max);
                let d = u.iter().chain(&v).zip(p.iter().chain(&q)).map(|(m, n)| (m - n).norm()).fold(0.0, f64::max);
                worst = worst.max(d / s);
            }
            _ => fails += 1,
        }
    }
    Line {
        name: "3x3 closed form vs solver",
        passed: fails == 0 && worst <= TOL_CROSS_ORACLE,
        detail: format!("1000 instances {worst:.2e} <= {TOL_CROSS_ORACLE:.0e}, failures {fails}"),
    }
}

fn degenerate_limit() -> Line {
    let eps = [1e-2, 1e-3, 1e-4, 1e-5];
    let (mut min_order, mut max_order, mut monotone, mut fails) = (f64::INFINITY, 0.0_f64, true, 0);
    let mut redrawn = 0;
    for i in 0..100 {
        let mut r = rng(70, i);
        // The probe uses the principal root, which tends to α₃ only if it stays on
        // the α₃ sheet for every ε used; ε_max must also be small against
        // |α₃|²/|4α₁(α₂ + x₁x₂)|. Draws violating either are redrawn.
        let (params, x) = loop {
            let params = [away(&mut r), unit(&mut r), away(&mut r)];
            let x = [unit(&mut r), unit(&mut r)];
            let w = params[1] + x[0] * x[1];
            let small = 4.0 * (params[0] * w).norm() * eps[0] <= LIMIT_REGIME * (params[2] * params[2]).norm();
            let same_sheet = eps.iter().flat_map(|&e| [e, e / 2.0]).all(|e| {
                let s = (params[2] * params[2] - 4.0 * params[0] * e * w).sqrt();
                (s - params[2]).norm() < (s + params[2]).norm()
            });
            if small && same_sheet {
                break (params, x);
            }
            redrawn += 1;
        };
        let Ok(orders) = ay_limit_orders(&x, &params, &eps) else {
            fails += 1;
            continue;
        };
        monotone &= orders.windows(2).all(|w| w[1].1 < w[0].1);
        for (_, d, p) in orders {
            monotone &= d > 0.0;
            min_order = min_order.min(p);
            max_order = max_order.max(p);
        }
    }
    Line {
        name: "degenerate limit",
        passed: fails == 0 && monotone && min_order >= MIN_LIMIT_ORDER - ORDER_ESTIMATE_TOL,
        detail: format!(
            "100 points ({redrawn} redrawn), eps 1e-2..1e-5 halved, monotone {monotone}, halving orders in [{min_order:.4}, {max_order:.4}], \
             need >= {MIN_LIMIT_ORDER} (estimator tol {ORDER_ESTIMATE_TOL})"
        ),
    }
}

fn main() -> ExitCode {
    let suites: [fn() -> Line; 10] = [
        refactorization_2x2,
        generic_solver,
        yang_baxter,
        poisson,
        sklyanin,
        surface,
        integrability,
        gv_equivalence,
        cross_oracle,
        degenerate_limit,
    ];
    let mut all = true;
    for s in suites {
        let l = s();
        all &= l.passed;
        println!("{} {:<28} {}", if l.passed { "PASS" } else { "FAIL" }, l.name, l.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
