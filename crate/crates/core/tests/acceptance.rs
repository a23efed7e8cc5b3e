//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::{Command, ExitCode};

use mermin_core::bounds::{
    constants, expectation, maximize_catalog, mermin_operator, restricted_mu, BoundState, Branch,
    DickeState, MaximizeOptions, MeasurementSetting, Mode,
};
use mermin_core::eigenops::{
    table1_catalog, tau3, tau4, tau4_i, tau4_ij, verify_identities, CatalogState, IdentityCheck,
    IdentityReport,
};
use mermin_core::instructional::{device_verdict, evaluate, Assignment, Device};
use mermin_core::pauli::PauliSum;
use mermin_core::state::{StateVector, SymCoeffs};
use mermin_core::Complex64;
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_coeffs(rng: &mut ChaCha8Rng, len: usize) -> SymCoeffs {
    let values = (0..len)
        .map(|_| loop {
            let c = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            if c.norm() > 0.1 {
                break c;
            }
        })
        .collect();
    SymCoeffs::new(values).expect("nonzero")
}

fn random_unit(rng: &mut ChaCha8Rng) -> [f64; 3] {
    loop {
        let v: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if n > 0.1 && n <= 1.0 {
            return v.map(|c| c / n);
        }
    }
}

fn eigenoperator_catalog() -> Outcome {
    let expected: [(CatalogState, &[f64]); 5] = [
        (CatalogState::U3, &[1.0, -1.0, -1.0, -1.0]),
        (CatalogState::TildeV31, &[1.0, 1.0]),
        (
            CatalogState::U4,
            &[1.0, -1.0, -1.0, -1.0, -1.0, -1.0, -1.0, 1.0],
        ),
        (CatalogState::TildeV41, &[1.0, 0.0, 0.0, 0.0, -1.0]),
        (CatalogState::TildeV42, &[1.0; 10]),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0x7AB1E1);
    let mut worst = 0.0f64;
    let mut cases = 0;
    for (state, gammas) in expected {
        let coeff_sets: Vec<Option<SymCoeffs>> = match state.family() {
            None => vec![None],
            Some(f) => (0..20)
                .map(|_| Some(random_coeffs(&mut rng, f.coeff_count())))
                .collect(),
        };
        for coeffs in &coeff_sets {
            let row = table1_catalog(state, coeffs.as_ref()).map_err(|e| e.to_string())?;
            ensure(row.eigenvalues == gammas, || {
                format!("{}: eigenvalues {:?}", state.id(), row.eigenvalues)
            })?;
            let r = row.max_residual().map_err(|e| e.to_string())?;
            worst = worst.max(r);
            ensure(r < 1e-12, || format!("{}: residual {r:e}", state.id()))?;
            ensure(row.pairwise_commute().map_err(|e| e.to_string())?, || {
                format!("{}: non-commuting pair", state.id())
            })?;
            cases += 1;
        }
    }
    Ok(format!("{cases} state instances, max residual {worst:.1e}"))
}

fn identities() -> Outcome {
    let report = verify_identities();
    let failed: Vec<_> = report.failures().map(|c| c.name.clone()).collect();
    ensure(failed.is_empty(), || {
        format!("failed: {}", failed.join(", "))
    })?;
    ensure(report.exit_code() == 0, || {
        "clean report has non-zero status".into()
    })?;
    let broken = IdentityReport {
        checks: vec![IdentityCheck {
            name: "broken".into(),
            passed: false,
            deviation: 1.0,
        }],
    };
    ensure(broken.exit_code() == 2, || {
        "failed report does not map to 2".into()
    })?;
    let out = Command::new(env!("CARGO_BIN_EXE_mermin"))
        .arg("identities")
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || {
        format!("cli status {:?}", out.status)
    })?;
    Ok(format!("{} identities", report.checks.len()))
}

fn count(id: &str) -> Result<(usize, Vec<Assignment>), String> {
    let d = Device::from_id(id).map_err(|e| e.to_string())?;
    let v = device_verdict(&d).map_err(|e| e.to_string())?;
    Ok((v.report.count, v.report.solutions))
}

fn instructional_counts() -> Outcome {
    let mut expected: Vec<(String, usize)> = vec![
        ("u3-sub".into(), 8),
        ("u3".into(), 0),
        ("mu3=1".into(), 24),
        ("mu3=-3".into(), 8),
        ("mu3=2".into(), 0),
        ("tv41".into(), 64),
    ];
    expected.extend(Device::u4_all().iter().map(|d| (d.id(), 0)));
    expected.extend(Device::tv42_all().iter().map(|d| (d.id(), 0)));
    for (id, want) in &expected {
        let (got, solutions) = count(id)?;
        ensure(got == *want, || format!("{id}: {got} != {want}"))?;
        if id == "mu3=1" || id == "mu3=-3" {
            ensure(solutions.len() == got, || {
                format!("{id}: truncated solutions")
            })?;
            for a in &solutions {
                let p: i8 = a.xi.iter().product();
                ensure(p == -1, || format!("{id}: xi product {p} at {a:?}"))?;
            }
        }
    }
    Ok(format!("{} systems", expected.len()))
}

fn bound_values() -> Outcome {
    let opts = MaximizeOptions::default();
    let mut worst = 0.0f64;
    for st in BoundState::ALL {
        for mode in [Mode::Uniform, Mode::General] {
            let r = maximize_catalog(st, mode, &opts).map_err(|e| e.to_string())?;
            let gap = r.gap.expect("catalog target");
            worst = worst.max(gap);
            ensure(gap < 1e-6, || {
                format!("{} {mode:?}: {} (gap {gap:e})", st.id(), r.value)
            })?;
        }
    }
    let loc = |d: DickeState| -> Result<(f64, f64), String> {
        let r = maximize_catalog(BoundState::Dicke(d), Mode::Uniform, &opts)
            .map_err(|e| e.to_string())?;
        Ok((r.setting.x()[0][2], r.setting.y()[0][2]))
    };
    let (x3, y3) = loc(DickeState::V31)?;
    let (a, b) = (constants::w_state_x3(), constants::w_state_y3());
    ensure(
        (x3.abs() - a).abs() < 1e-4 && (y3.abs() - b).abs() < 1e-4,
        || format!("v31 optimum at ({x3}, {y3})"),
    )?;
    let (x3, y3) = loc(DickeState::V41)?;
    let h = 3f64.sqrt() / 2.0;
    ensure(
        (x3.abs() - h).abs() < 1e-4 && (y3.abs() - h).abs() < 1e-4,
        || format!("v41 optimum at ({x3}, {y3})"),
    )?;
    let (x3, y3) = loc(DickeState::V42)?;
    let r = 0.5f64.sqrt();
    let orbit = [(1.0, 0.0), (0.0, 1.0), (r, r)];
    ensure(
        orbit
            .iter()
            .any(|(p, q)| (x3.abs() - p).abs() < 1e-4 && (y3.abs() - q).abs() < 1e-4),
        || format!("v42 optimum at ({x3}, {y3})"),
    )?;
    Ok(format!(
        "5 states x 2 modes, max gap {worst:.1e}; optimum locations match"
    ))
}

fn dense_expectation(v: &StateVector, s: &MeasurementSetting) -> Complex64 {
    let m = mermin_operator(v.n(), s).expect("supported n");
    let mv = m.matvec(v.amps());
    let inner: Complex64 = v.amps().iter().zip(&mv).map(|(a, b)| a.conj() * b).sum();
    inner / v.norm_sqr()
}

/// Evaluates `Σ Π (ξ_a if 'x' else η_a)` for monomials written as strings.
fn hand_poly(monomials: &[&str], xi: &[i8], eta: &[i8]) -> i64 {
    monomials
        .iter()
        .map(|m| {
            m.chars()
                .enumerate()
                .map(|(a, c)| if c == 'x' { xi[a] } else { eta[a] } as i64)
                .product::<i64>()
        })
        .sum()
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0AC1E);
    let mut worst = 0.0f64;
    for d in DickeState::ALL {
        let v = d.state();
        for _ in 0..200 {
            let (x, y) = (random_unit(&mut rng), random_unit(&mut rng));
            let s = MeasurementSetting::uniform(d.n(), x, y).map_err(|e| e.to_string())?;
            let dense = dense_expectation(&v, &s);
            let closed = restricted_mu(d, x, y).map_err(|e| e.to_string())?;
            let local = expectation(&v, &s).map_err(|e| e.to_string())?;
            let err = (dense.re - closed).abs().max((local - closed).abs());
            worst = worst.max(err);
            ensure(err < 1e-9 && dense.im.abs() < 1e-9, || {
                format!("{:?}: dense {dense} closed {closed}", d)
            })?;
        }
    }

    let mut polys: Vec<(String, PauliSum, Vec<&str>)> = vec![
        ("mu3".into(), tau3(), vec!["xyy", "yxy", "yyx"]),
        (
            "mu4".into(),
            tau4(),
            vec!["xxyy", "xyxy", "xyyx", "yxxy", "yxyx", "yyxx"],
        ),
        ("mu4,1".into(), tau4_i(1), vec!["xxyy", "yyxx"]),
        ("mu4,2".into(), tau4_i(2), vec!["xyxy", "yxyx"]),
        ("mu4,3".into(), tau4_i(3), vec!["xyyx", "yxxy"]),
    ];
    let tau_ij: [((usize, usize), [&str; 3]); 8] = [
        ((1, 1), ["xxyy", "xyxy", "xyyx"]),
        ((1, 2), ["yxxy", "yxyx", "yyxx"]),
        ((2, 1), ["xxyy", "yxxy", "yxyx"]),
        ((2, 2), ["xyxy", "xyyx", "yyxx"]),
        ((3, 1), ["xyxy", "yxxy", "yyxx"]),
        ((3, 2), ["xxyy", "xyyx", "yxyx"]),
        ((4, 1), ["xyyx", "yxyx", "yyxx"]),
        ((4, 2), ["xxyy", "xyxy", "yxxy"]),
    ];
    for ((i, j), m) in tau_ij {
        polys.push((format!("mu4,{i},{j}"), tau4_ij(i, j), m.to_vec()));
    }
    let mut evaluated = 0;
    for (name, expr, monomials) in &polys {
        let n = expr.n();
        for bits in 0u32..(1 << (2 * n)) {
            let sign = |k: usize| if bits >> k & 1 == 1 { -1i8 } else { 1 };
            let xi: Vec<i8> = (0..n).map(sign).collect();
            let eta: Vec<i8> = (0..n).map(|a| sign(n + a)).collect();
            let a = Assignment::new(xi.clone(), eta.clone()).map_err(|e| e.to_string())?;
            let got = evaluate(expr, &a).map_err(|e| e.to_string())?;
            let want = hand_poly(monomials, &xi, &eta);
            ensure(got == want, || {
                format!("{name} at {xi:?}/{eta:?}: {got} != {want}")
            })?;
            evaluated += 1;
        }
    }
    Ok(format!(
        "600 settings, max deviation {worst:.1e}; {} polynomials over {evaluated} assignments",
        polys.len()
    ))
}

fn norm_bounds() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9043);
    let mut largest = [0.0f64; 2];
    for (k, (n, bound)) in [(3usize, 4.0), (4, 8.0)].into_iter().enumerate() {
        for _ in 0..100 {
            let x = (0..n).map(|_| random_unit(&mut rng)).collect();
            let y = (0..n).map(|_| random_unit(&mut rng)).collect();
            let s = MeasurementSetting::new(x, y).map_err(|e| e.to_string())?;
            let m = mermin_operator(n, &s).map_err(|e| e.to_string())?;
            let dim = m.rows();
            let nm = DMatrix::<Complex64>::from_fn(dim, dim, |i, j| m.get(i, j));
            let sv = nm.singular_values().max();
            largest[k] = largest[k].max(sv);
            ensure(sv <= bound + 1e-9, || format!("n={n}: norm {sv}"))?;
        }
    }
    Ok(format!(
        "max |M3| {:.6}, max |M4| {:.6}",
        largest[0], largest[1]
    ))
}

fn contour_reflection() -> Outcome {
    let res = 101;
    let mut worst = 0.0f64;
    for d in DickeState::ALL {
        let plus = mermin_core::bounds::contour(d, Branch::Plus, res).map_err(|e| e.to_string())?;
        let minus =
            mermin_core::bounds::contour(d, Branch::Minus, res).map_err(|e| e.to_string())?;
        ensure(plus.values.len() == res * res, || "grid size".into())?;
        for i in 0..res {
            for j in 0..res {
                worst = worst.max((minus.get(i, j) - plus.get(i, res - 1 - j)).abs());
            }
        }
    }
    ensure(worst < 1e-12, || format!("max deviation {worst:e}"))?;
    Ok(format!(
        "3 states at resolution {res}, max deviation {worst:.1e}"
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("1 eigenoperator table", eigenoperator_catalog),
        ("2 identity suite", identities),
        ("3 instructional-set counts", instructional_counts),
        ("4 bound values and locations", bound_values),
        ("5 oracle equivalence", oracle_equivalence),
        ("6 norm bounds", norm_bounds),
        ("7 contour reflection", contour_reflection),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
