//! One line per acceptance criterion; exits non-zero if any fails.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};
use std::time::Instant;

use knotsig::hermitian::{Complex, ComplexMatrix};
use knotsig::invariants::{alexander_poly, signature_profile, tl_form, tl_signature, UnitCirclePoint};
use knotsig::lab::{
    alexander_root_angles, chako_form, generic_angles, power_root_angles, replay, replay_general,
    sgn_s_closed, shinohara_check, uniform_angles, verify_theorem, Epsilon,
};
use knotsig::{satellite_seifert, Catalog, IntPolynomial, SatelliteSpec, SeifertMatrix, Tolerances};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const KNOTS: [&str; 5] = ["unknot", "trefoil", "figure-eight", "t2_5", "t3_4"];
const MAX_ABS: f64 = 1e-10;

struct Outcome {
    passed: bool,
    detail: String,
}

fn knots() -> Vec<(&'static str, SeifertMatrix)> {
    let c = Catalog::builtin();
    KNOTS.iter().map(|&k| (k, c.get(k).unwrap().seifert.clone())).collect()
}

/// Generic angles for companion `N` at winding `n`: away from roots of
/// unity of order up to `n` and from roots of `Δ_N(t^m)` for `m` in `powers`.
fn generic_for(n_mat: &SeifertMatrix, n: usize, powers: &[usize], count: usize, tol: &Tolerances) -> Vec<UnitCirclePoint> {
    let base = alexander_root_angles(n_mat, tol);
    let avoid: Vec<f64> = powers.iter().flat_map(|&m| power_root_angles(&base, m)).collect();
    generic_angles(count, n, &avoid, tol)
}

fn criterion_1() -> Outcome {
    let tol = Tolerances::default();
    let start = Instant::now();
    let angles = uniform_angles(360);
    let (mut compared, mut skipped, mut failures) = (0, 0, Vec::new());
    for (pn, p) in knots() {
        for (cn, c) in knots() {
            for n in 0..=5 {
                let spec = SatelliteSpec::new(p.clone(), c.clone(), n);
                let report = verify_theorem(&spec, &angles, &tol).unwrap();
                compared += report.compared();
                skipped += report.skipped();
                for f in report.failures() {
                    failures.push(format!("{pn}/{cn}/n={n}@{:.4}", f.angle));
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        passed: failures.is_empty() && secs < 60.0,
        detail: format!(
            "{compared} compared, {skipped} skipped, {} failures {:?}, {secs:.1}s",
            failures.len(),
            failures.iter().take(5).collect::<Vec<_>>()
        ),
    }
}

fn criterion_2() -> Outcome {
    let trefoil = Catalog::builtin().get("trefoil").unwrap().seifert.clone();
    // [[-4,2],[2,-4]]: λ^2 + 8λ + 12 = 0, roots -2 and -6
    let oracle_sig = [-2.0f64, -6.0].iter().map(|l| l.signum() as i64).sum::<i64>();
    let sig = tl_signature(&trefoil, UnitCirclePoint::minus_one());
    // det(tA - A^T) for A = [[-1,1],[0,-1]]: (1 - t)^2 + t
    let oracle_poly = IntPolynomial::from_i64(&[1, -2, 1]);
    let oracle_poly = &oracle_poly + &IntPolynomial::from_i64(&[0, 1]);
    let delta = alexander_poly(&trefoil);
    let profile = signature_profile(&trefoil, 360).unwrap();
    let jumps = profile.jump_angles();
    let jump_err = if jumps.len() == 2 {
        (jumps[0] - PI / 3.0).abs().max((jumps[1] - 5.0 * PI / 3.0).abs())
    } else {
        f64::INFINITY
    };
    Outcome {
        passed: sig == oracle_sig && delta == oracle_poly && jump_err <= 1e-8,
        detail: format!("sigma(-1) = {sig}, Delta = {delta}, jump error {jump_err:.2e}"),
    }
}

fn criterion_3() -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    for (pn, p) in knots() {
        for (cn, c) in knots() {
            for n in 0..=5 {
                let sat = satellite_seifert(&SatelliteSpec::new(p.clone(), c.clone(), n)).unwrap();
                let lhs = alexander_poly(&sat);
                let rhs = (&alexander_poly(&p) * &alexander_poly(&c).compose_power(n)).normalize_unit().unwrap();
                count += 1;
                if lhs != rhs {
                    bad.push(format!("{pn}/{cn}/n={n}"));
                }
            }
        }
    }
    Outcome {
        passed: bad.is_empty(),
        detail: format!("{count} cases, {} mismatches {bad:?}", bad.len()),
    }
}

fn criterion_4() -> Outcome {
    let tol = Tolerances::default();
    let mut worst: BTreeMap<&str, f64> = BTreeMap::new();
    let mut failed = Vec::new();
    let mut runs = 0;
    for (cn, c) in knots() {
        for n in 3..=6 {
            for w in generic_for(&c, n, &[1, n], 20, &tol) {
                let t = replay(&c, n, w, &tol).unwrap();
                runs += 1;
                for name in ["step2.closed_form", "step3.kronecker"] {
                    let dev: f64 = t.check(name).unwrap().detail[4..].parse().unwrap();
                    let e = worst.entry(name).or_insert(0.0);
                    *e = e.max(dev);
                }
                let sig_c = t.block("C").unwrap().inertia.signature();
                let stage_eq = t.checks.iter().filter(|c| c.name.starts_with("sig.")).all(|c| c.passed);
                if !t.passed() || sig_c != 0 || !stage_eq {
                    failed.push(format!("{cn}/n={n}@{:.4}", w.angle()));
                }
            }
        }
        for w in generic_for(&c, 2, &[1, 2], 20, &tol) {
            let t = replay(&c, 2, w, &tol).unwrap();
            runs += 1;
            if t.block("C").unwrap().inertia.signature() != 0 || !t.passed() {
                failed.push(format!("{cn}/n=2@{:.4}", w.angle()));
            }
        }
    }
    let devs_ok = worst.values().all(|&d| d <= MAX_ABS);
    Outcome {
        passed: failed.is_empty() && devs_ok,
        detail: format!("{runs} replays, worst {worst:?}, failures {failed:?}"),
    }
}

/// The printed D/U/L blocks, and the printed n = 2 block D, taken literally.
fn criterion_4_literal() -> Outcome {
    let tol = Tolerances::default();
    let mut worst: f64 = 0.0;
    let mut nonzero_d = 0;
    let mut d_runs = 0;
    for (_, c) in knots().into_iter().skip(1) {
        for n in 3..=6 {
            for w in generic_for(&c, n, &[1, n], 20, &tol) {
                worst = worst.max(replay(&c, n, w, &tol).unwrap().deviation("step2.printed_DUL").unwrap());
            }
        }
        for w in generic_for(&c, 2, &[1, 2], 20, &tol) {
            d_runs += 1;
            if replay(&c, 2, w, &tol).unwrap().literal_c_signature != Some(0) {
                nonzero_d += 1;
            }
        }
    }
    Outcome {
        passed: worst <= MAX_ABS && nonzero_d == 0,
        detail: format!("printed D/U/L max-abs deviation {worst:.3e}; printed D (n = 2) signature nonzero in {nonzero_d}/{d_runs}"),
    }
}

fn criterion_5() -> Outcome {
    let tol = Tolerances::default();
    let mut failed = Vec::new();
    let mut runs = 0;
    for (cn, c) in knots() {
        for n in 1..=6 {
            for w in generic_for(&c, n, &[1, n], 20, &tol) {
                let (_, r) = chako_form(&c, n, w, &tol).unwrap();
                runs += 1;
                if !(r.total_signature == r.b_signature && r.summand_signatures.iter().all(|&s| s == 0)) {
                    failed.push(format!("{cn}/n={n}@{:.4}", w.angle()));
                }
            }
        }
    }
    Outcome {
        passed: failed.is_empty(),
        detail: format!("{runs} comparisons, failures {failed:?}"),
    }
}

fn criterion_6() -> Outcome {
    let tol = Tolerances::default();
    let trefoil = Catalog::builtin().get("trefoil").unwrap().seifert.clone();
    let mut failed = Vec::new();
    let mut runs = 0;
    for n in 3..=10usize {
        for j in 0..100usize {
            // x = 2π (2j + 1) / 200; nx/2π is an integer iff 200 | n (2j + 1)
            if (n * (2 * j + 1)) % 200 == 0 {
                continue;
            }
            let x = TAU * (2 * j + 1) as f64 / 200.0;
            let t = replay(&trefoil, n, UnitCirclePoint::new(x), &tol).unwrap();
            let s = t.s_factor.unwrap();
            let numeric = s.times_i().hermitian_part().inertia_with(&tol).unwrap().signature();
            runs += 1;
            if numeric != sgn_s_closed(n, x) {
                failed.push(format!("n={n} x={x:.4}: {numeric} vs {}", sgn_s_closed(n, x)));
            }
        }
    }
    let at_zero = (1..=10).all(|n| sgn_s_closed(n, 0.0) == 0);
    Outcome {
        passed: failed.is_empty() && at_zero,
        detail: format!("{runs} angles, x = 0 gives 0: {at_zero}, failures {failed:?}"),
    }
}

fn criterion_7() -> Outcome {
    let tol = Tolerances::default();
    let mut failed = Vec::new();
    let mut runs = 0;
    for (pn, p) in knots() {
        for (cn, c) in knots() {
            for r in shinohara_check(&p, &c, 0..=6, &tol).unwrap() {
                runs += 1;
                if !r.holds() {
                    failed.push(format!("{pn}/{cn}/n={}", r.n));
                }
            }
        }
    }
    Outcome {
        passed: failed.is_empty(),
        detail: format!("{runs} cases, failures {failed:?}"),
    }
}

/// Cyclic Jacobi on the real symmetric embedding `[[Re, -Im], [Im, Re]]`,
/// whose spectrum is that of `h` with every eigenvalue doubled.
fn jacobi_eigenvalues(h: &ComplexMatrix) -> Vec<f64> {
    let n = h.dim();
    let m = 2 * n;
    let mut a = vec![vec![0.0; m]; m];
    for i in 0..n {
        for j in 0..n {
            let z = h[(i, j)];
            a[i][j] = z.re;
            a[i + n][j + n] = z.re;
            a[i][j + n] = -z.im;
            a[i + n][j] = z.im;
        }
    }
    for _ in 0..100 {
        let off: f64 = (0..m).flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i][j] * a[i][j]).sum();
        if off < 1e-22 {
            break;
        }
        for p in 0..m {
            for q in p + 1..m {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let (cs, sn) = (1.0 / (t * t + 1.0).sqrt(), t / (t * t + 1.0).sqrt());
                for k in 0..m {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = cs * akp - sn * akq;
                    a[k][q] = sn * akp + cs * akq;
                }
                for k in 0..m {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = cs * apk - sn * aqk;
                    a[q][k] = sn * apk + cs * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..m).map(|i| a[i][i]).collect();
    ev.sort_by(f64::total_cmp);
    ev.into_iter().step_by(2).collect()
}

fn oracle_signature(h: &ComplexMatrix) -> i64 {
    let ev = jacobi_eigenvalues(h);
    let scale = ev.iter().fold(0.0f64, |m, l| m.max(l.abs()));
    ev.iter().map(|&l| if l > 1e-9 * scale { 1 } else if l < -1e-9 * scale { -1 } else { 0 }).sum()
}

fn random_hermitian(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
    let mut h = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        h[(i, i)] = Complex::new(rng.random_range(-10.0..10.0), 0.0);
        for j in i + 1..dim {
            let z = Complex::new(rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0));
            h[(i, j)] = z;
            h[(j, i)] = z.conj();
        }
    }
    h
}

fn criterion_8() -> Outcome {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut problems = Vec::new();
    let mut ops = 0;
    for case in 0..200 {
        let dim = rng.random_range(1..=8);
        let mut h = random_hermitian(&mut rng, dim);
        while h.hermitian_det_abs() <= tol.det {
            h = random_hermitian(&mut rng, dim);
        }
        let sig0 = h.signature(tol.zero).unwrap();
        if sig0 != oracle_signature(&h) {
            problems.push(format!("case {case}: inertia disagrees with Jacobi oracle"));
        }
        for _ in 0..10 {
            let next = if dim >= 2 && rng.random_bool(0.6) {
                let i = rng.random_range(0..dim);
                let j = (i + rng.random_range(1..dim)) % dim;
                let z = Complex::from_polar(rng.random_range(0.0..1.0), rng.random_range(0.0..TAU));
                h.congruence_add(i, j, z).unwrap()
            } else {
                let z = Complex::from_polar(rng.random_range(0.5..2.0), rng.random_range(0.0..TAU));
                h.congruence_scale(rng.random_range(0..dim), z).unwrap()
            };
            ops += 1;
            if next.hermitian_det_abs() <= tol.det {
                problems.push(format!("case {case}: determinant collapsed"));
                break;
            }
            if !next.is_hermitian(tol.sym * (1.0 + next.max_abs())) {
                problems.push(format!("case {case}: lost Hermitian symmetry"));
            }
            let inertia = next.inertia(tol.zero).unwrap();
            if inertia.signature() != sig0 || oracle_signature(&next) != sig0 {
                problems.push(format!("case {case}: signature changed, {} null directions", inertia.n_zero));
            }
            h = next;
        }
    }
    for case in 0..100 {
        let (da, db) = (rng.random_range(0..=3), rng.random_range(0..=3));
        let a = random_hermitian(&mut rng, da);
        let b = random_hermitian(&mut rng, db);
        let sum = a.direct_sum(&b).inertia(tol.zero).unwrap();
        if sum != a.inertia(tol.zero).unwrap() + b.inertia(tol.zero).unwrap() {
            problems.push(format!("direct sum {case}"));
        }
        let mut products: Vec<f64> = a
            .hermitian_eigenvalues()
            .iter()
            .flat_map(|x| b.hermitian_eigenvalues().into_iter().map(move |y| x * y))
            .collect();
        products.sort_by(f64::total_cmp);
        let kron = a.kronecker(&b).hermitian_eigenvalues();
        let scale = products.iter().fold(1.0f64, |m, x| m.max(x.abs()));
        if kron.len() != products.len() || kron.iter().zip(&products).any(|(x, y)| (x - y).abs() > 1e-9 * scale) {
            problems.push(format!("kronecker {case}"));
        }
    }
    Outcome {
        passed: problems.is_empty(),
        detail: format!("200 matrices, {ops} operations, 100 sum/product instances, problems {problems:?}"),
    }
}

fn criterion_9() -> Outcome {
    let tol = Tolerances::default();
    let mut failed = Vec::new();
    let mut runs = 0;
    for (cn, c) in knots() {
        for n in 3..=5usize {
            for u in n.div_ceil(2) + 1..=n {
                let r = 2 * u - n;
                for w in generic_for(&c, n, &[1, n, r], 20, &tol) {
                    let t = replay_general(&c, n, w, Epsilon::Plus, u, &tol).unwrap();
                    let e = tl_form(&c, w.pow(r as i64)).inertia_with(&tol).unwrap().signature();
                    let b = t.stage("B").unwrap().inertia.signature();
                    runs += 1;
                    let final_ok = t.check("final").is_some_and(|c| c.passed);
                    if !t.passed() || !final_ok || b != e {
                        failed.push(format!("eps=1 {cn}/n={n}/u={u}@{:.4}", w.angle()));
                    }
                }
            }
            for w in generic_for(&c, n, &[1, n], 20, &tol) {
                let t = replay_general(&c, n, w, Epsilon::Minus, n, &tol).unwrap();
                runs += 1;
                let final_ok = t.check("final").is_some_and(|c| c.passed);
                if !t.passed() || !final_ok {
                    failed.push(format!("eps=-1 {cn}/n={n}@{:.4}", w.angle()));
                }
            }
        }
    }
    Outcome {
        passed: failed.is_empty(),
        detail: format!("{runs} replays, failures {failed:?}"),
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("1 theorem end-to-end", criterion_1),
        ("2 trefoil oracle", criterion_2),
        ("3 Alexander satellite identity", criterion_3),
        ("4 proof replay", criterion_4),
        ("4 proof replay, printed D/U/L forms", criterion_4_literal),
        ("5 Cha-Ko form", criterion_5),
        ("6 closed sgn(S)", criterion_6),
        ("7 parity formula at -1", criterion_7),
        ("8 congruence properties", criterion_8),
        ("9 generalized runs", criterion_9),
    ];
    let mut failures = 0;
    for (name, run) in criteria {
        let o = run();
        println!("criterion {name}: {} ({})", if o.passed { "PASS" } else { "FAIL" }, o.detail);
        failures += usize::from(!o.passed);
    }
    println!("acceptance: {} of {} passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
