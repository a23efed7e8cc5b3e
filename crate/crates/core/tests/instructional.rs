use mermin_core::eigenops::{sigma, tau3, CatalogState};
use mermin_core::instructional::{
    device_verdict, evaluate, f3_unit_roots, parity_certificate, solve, Assignment, Device,
    Equation, InstructionalSystem,
};
use mermin_core::pauli::PauliSum;
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn catalog_devices() -> Vec<Device> {
    let mut d = vec![
        Device::U3,
        Device::U3Subsystem,
        Device::TildeV31,
        Device::TildeV31Relaxed,
        Device::TildeV41,
    ];
    d.extend(Device::u4_all());
    d.extend(Device::tv42_all());
    d
}

#[test]
fn certificates_are_sound() {
    for d in catalog_devices() {
        let sys = d.system().unwrap();
        let count = solve(&sys).unwrap().count;
        if parity_certificate(&sys).is_some() {
            assert_eq!(count, 0, "{}", d.id());
        }
    }
}

#[test]
fn product_form_certificates() {
    let full = |d: Device| parity_certificate(&d.system().unwrap());
    assert_eq!(full(Device::U3), Some(vec![0, 1, 2, 3]));
    for d in Device::u4_all() {
        assert_eq!(full(d.clone()), Some(vec![0, 1, 2, 3]), "{}", d.id());
    }
    assert_eq!(full(Device::U3Subsystem), None);
    assert_eq!(full(Device::TildeV31), None);
}

#[test]
fn ghz3_light_parity() {
    // Product of the four GHZ-3 monomials is +1 for every instruction set.
    let words: [&[u8]; 4] = [&[1, 1, 1], &[1, 2, 2], &[2, 1, 2], &[2, 2, 1]];
    for idx in 0..64 {
        let a = Assignment::from_index(3, idx);
        let reds = words
            .iter()
            .filter(|w| evaluate(&sigma(w), &a).unwrap() == -1)
            .count();
        assert_eq!(reds % 2, 0);
    }
}

#[test]
fn relaxed_tv31_and_roots() {
    assert_eq!(f3_unit_roots(), vec![-3, 1, 2]);
    let v = device_verdict(&Device::TildeV31Relaxed).unwrap();
    assert!(!v.explainable);
    let w = device_verdict(&Device::Mu3(1)).unwrap();
    let values = &w.report.witness_values.as_ref().unwrap()["s(1,1,1)"];
    assert_eq!(values.len(), 24);
    assert!(values.iter().all(|&x| x == -1));
}

#[test]
fn tv42_supersets_stay_unexplainable() {
    let pairs: Vec<(usize, usize)> = (1..=4).flat_map(|i| (1..=2).map(move |j| (i, j))).collect();
    for a in 0..pairs.len() {
        for b in a + 1..pairs.len() {
            let d = Device::TildeV42Multi(vec![pairs[a], pairs[b]]);
            assert!(!device_verdict(&d).unwrap().explainable, "{}", d.id());
        }
    }
    let all = Device::TildeV42Multi(pairs.clone());
    assert_eq!(device_verdict(&all).unwrap().report.count, 0);
}

#[test]
fn enumeration_is_deterministic_and_ordered() {
    let sys = Device::TildeV41.system().unwrap();
    let a = solve(&sys).unwrap();
    let b = solve(&sys).unwrap();
    assert_eq!(a.solutions, b.solutions);
    assert_eq!(a.count, a.solutions.len());
    let idx: Vec<u64> = a.solutions.iter().map(Assignment::index).collect();
    assert!(idx.windows(2).all(|w| w[0] < w[1]));
    for s in &a.solutions {
        for e in sys.equations() {
            assert_eq!(evaluate(&e.expr, s).unwrap(), e.target);
        }
    }
}

#[test]
fn tv41_conclusion_is_basis_independent() {
    let row = CatalogState::TildeV41.row();
    let base = solve(&Device::TildeV41.system().unwrap()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0xB451);
    let mut tried = 0;
    while tried < 50 {
        let m: Vec<i64> = (0..25).map(|_| rng.gen_range(-3..=3)).collect();
        let det = DMatrix::from_fn(5, 5, |r, c| m[5 * r + c] as f64).determinant();
        if det.abs() < 0.5 {
            continue;
        }
        let eqs = (0..5)
            .map(|r| {
                let (expr, target) = (0..5).fold((PauliSum::zero(4), 0i64), |(e, t), c| {
                    let k = m[5 * r + c];
                    (&e + &row[c].1.scale_real(k as f64), t + k * row[c].2 as i64)
                });
                Equation::new(expr, target)
            })
            .collect();
        let sys = InstructionalSystem::new(4, eqs).unwrap();
        let r = solve(&sys).unwrap();
        assert_eq!(r.count, 64);
        assert_eq!(r.solutions, base.solutions);
        tried += 1;
    }
}

#[test]
fn user_system_from_json() {
    let text = r#"[{"expr": "s(1,1,1)", "target": 1},
                   {"expr": "s(1,2,2) + s(2,1,2) + s(2,2,1)", "target": 1}]"#;
    let sys = InstructionalSystem::from_json(text).unwrap();
    assert_eq!(sys.n(), 3);
    assert_eq!(solve(&sys).unwrap().count, 0);
    let mu3 = InstructionalSystem::new(3, vec![Equation::new(tau3(), -3)]).unwrap();
    assert_eq!(solve(&mu3).unwrap().count, 8);
    assert!(InstructionalSystem::from_json(r#"[{"expr": "s(3,1,1)", "target": 1}]"#).is_err());
    assert!(InstructionalSystem::from_json("[]").is_err());
}
