use mermin_core::linalg::{pauli_matrix, DenseMatrix};
use mermin_core::pauli::{Letter, PauliSum, PauliWord};
use mermin_core::state::StateVector;
use mermin_core::Complex64;
use proptest::prelude::*;

fn word(n: usize) -> impl Strategy<Value = Vec<u8>> {
    proptest::collection::vec(0u8..4, n)
}

fn coeff() -> impl Strategy<Value = Complex64> {
    (-3i32..=3, -3i32..=3).prop_map(|(a, b)| Complex64::new(a as f64, b as f64))
}

fn sum(n: usize) -> impl Strategy<Value = PauliSum> {
    proptest::collection::vec((word(n), coeff()), 0..5).prop_map(move |terms| {
        terms.iter().fold(PauliSum::zero(n), |acc, (w, c)| {
            &acc + &PauliSum::sigma(w).scale(*c)
        })
    })
}

fn state(n: usize) -> impl Strategy<Value = StateVector> {
    proptest::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 1 << n).prop_map(move |a| {
        StateVector::from_amps(
            n,
            a.into_iter().map(|(r, i)| Complex64::new(r, i)).collect(),
        )
        .unwrap()
    })
}

fn dense(s: &PauliSum) -> DenseMatrix {
    let dim = 1 << s.n();
    let mut m = DenseMatrix::zeros(dim, dim);
    for w in s.words() {
        let k = w
            .letters()
            .into_iter()
            .map(pauli_matrix)
            .reduce(|a, b| a.kron(&b))
            .unwrap();
        m.add_scaled(&k, w.coeff());
    }
    m
}

fn sized() -> impl Strategy<Value = usize> {
    prop_oneof![Just(3usize), Just(4usize)]
}

proptest! {
    #[test]
    fn multiplication_is_associative((a, b, c) in sized().prop_flat_map(|n| (sum(n), sum(n), sum(n)))) {
        let l = &(&a * &b) * &c;
        let r = &a * &(&b * &c);
        prop_assert!(l.approx_eq(&r, 1e-9));
    }

    #[test]
    fn multiplication_distributes((a, b, c) in sized().prop_flat_map(|n| (sum(n), sum(n), sum(n)))) {
        let l = &a * &(&b + &c);
        let r = &(&a * &b) + &(&a * &c);
        prop_assert!(l.approx_eq(&r, 1e-9));
        let l = &(&a + &b) * &c;
        let r = &(&a * &c) + &(&b * &c);
        prop_assert!(l.approx_eq(&r, 1e-9));
    }

    #[test]
    fn apply_is_a_homomorphism((a, b, v) in sized().prop_flat_map(|n| (sum(n), sum(n), state(n)))) {
        let ab = (&a * &b).apply(&v).unwrap();
        let a_bv = a.apply(&b.apply(&v).unwrap()).unwrap();
        prop_assert!(ab.approx_eq(&a_bv, 1e-9));
    }

    #[test]
    fn apply_matches_kronecker_matrix((a, v) in sized().prop_flat_map(|n| (sum(n), state(n)))) {
        let got = a.apply(&v).unwrap();
        let want = dense(&a).matvec(v.amps());
        for (g, w) in got.amps().iter().zip(&want) {
            prop_assert!((g - w).norm() < 1e-9);
        }
    }

    #[test]
    fn product_matches_matrix_product((a, b) in sized().prop_flat_map(|n| (sum(n), sum(n)))) {
        let lhs = dense(&(&a * &b));
        let rhs = dense(&a).matmul(&dense(&b));
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-9);
    }

    #[test]
    fn commutation_agrees_with_commutator((a, b) in sized().prop_flat_map(|n| (sum(n), sum(n)))) {
        let comm = &(&a * &b) - &(&b * &a);
        prop_assert_eq!(a.commutes(&b).unwrap(), comm.is_empty());
        prop_assert_eq!(a.commutes(&b).unwrap(), b.commutes(&a).unwrap());
    }

    #[test]
    fn render_parse_round_trip(a in sized().prop_flat_map(sum)) {
        let text = a.to_string();
        let back = PauliSum::parse_with_n(&text, a.n()).unwrap();
        prop_assert!(back.approx_eq(&a, 1e-12), "{}", text);
    }

    #[test]
    fn words_square_to_identity(w in sized().prop_flat_map(word)) {
        let s = PauliSum::sigma(&w);
        prop_assert!((&s * &s).approx_eq(&PauliSum::identity(w.len()), 0.0));
    }
}

fn xy_words(n: usize) -> Vec<Vec<u8>> {
    (0..1u32 << n)
        .map(|m| {
            (0..n)
                .map(|a| if m >> a & 1 == 1 { 2 } else { 1 })
                .collect()
        })
        .collect()
}

#[test]
fn even_sigma2_words_commute() {
    for n in [3, 4] {
        let even: Vec<_> = xy_words(n)
            .into_iter()
            .filter(|w| w.iter().filter(|&&j| j == 2).count() % 2 == 0)
            .collect();
        for a in &even {
            for b in &even {
                assert!(PauliSum::sigma(a).commutes(&PauliSum::sigma(b)).unwrap());
            }
        }
    }
}

#[test]
fn xy_words_commute_iff_even_disagreement() {
    for n in [3, 4] {
        for a in xy_words(n) {
            for b in xy_words(n) {
                let diff = a.iter().zip(&b).filter(|(x, y)| x != y).count();
                let c = PauliSum::sigma(&a).commutes(&PauliSum::sigma(&b)).unwrap();
                assert_eq!(c, diff % 2 == 0);
            }
        }
    }
}

#[test]
fn letter_products_follow_the_cyclic_rule() {
    let i = Complex64::new(0.0, 1.0);
    assert_eq!(Letter::X1.product(Letter::X2), (i, Letter::X3));
    assert_eq!(Letter::X2.product(Letter::X3), (i, Letter::X1));
    assert_eq!(Letter::X3.product(Letter::X1), (i, Letter::X2));
    assert_eq!(Letter::X2.product(Letter::X1), (-i, Letter::X3));
    let w = PauliWord::from_indices(&[1, 2, 2]).unwrap();
    assert_eq!(w.to_string(), "s(1,2,2)");
}
