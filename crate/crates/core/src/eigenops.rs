//! Commuting eigenoperator sets built from σ1/σ2 words with an even number
//! of σ2 letters, the catalog of known sets, and the polynomial identities
//! relating their members.

use num_complex::Complex64;
use serde::Serialize;

use crate::linalg::{null_space, rank, rref, solve_in_span};
use crate::pauli::{Letter, PauliSum, PauliWord};
use crate::state::{
    ghz, is_exchange_symmetric, sym_family_state, StateVector, SymCoeffs, SymFamily,
};
use crate::{Error, Result, TOL_ALG};

/// Pivot threshold for the eigenoperator kernel computation.
pub const TOL_RANK: f64 = 1e-9;

/// All words over {σ1, σ2} with an even count of σ2, in lexicographic order.
#[derive(Clone, Debug)]
pub struct CandidateWordSet {
    n: usize,
    words: Vec<PauliWord>,
}

impl CandidateWordSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > 12 {
            return Err(Error::UnsupportedQubits(n));
        }
        let words = (0u32..1 << n)
            .filter(|m| m.count_ones() % 2 == 0)
            .map(|m| {
                let letters: Vec<Letter> = (0..n)
                    .map(|q| {
                        if (m >> (n - 1 - q)) & 1 == 1 {
                            Letter::X2
                        } else {
                            Letter::X1
                        }
                    })
                    .collect();
                PauliWord::new(&letters, Complex64::new(1.0, 0.0))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { n, words })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> &[PauliWord] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Coefficients of `op` over the candidate words, or `None` if `op`
    /// contains a word outside the set.
    pub fn coeff_vector(&self, op: &PauliSum) -> Option<Vec<Complex64>> {
        if op.n() != self.n {
            return None;
        }
        let inside = op
            .words()
            .all(|w| self.words.iter().any(|c| c.key() == w.key()));
        inside.then(|| {
            self.words
                .iter()
                .map(|w| op.coeff_by_key(w.key()))
                .collect()
        })
    }

    pub fn to_sum(&self, coeffs: &[Complex64]) -> PauliSum {
        let words: Vec<PauliWord> = self
            .words
            .iter()
            .zip(coeffs)
            .map(|(w, c)| PauliWord::from_key(self.n, w.key(), *c))
            .collect();
        PauliSum::from_words(self.n, &words).expect("same qubit count")
    }
}

/// A state together with operators it is a common eigenvector of.
#[derive(Clone, Debug)]
pub struct EigenBasis {
    pub state: StateVector,
    pub operators: Vec<PauliSum>,
    pub eigenvalues: Vec<f64>,
}

impl EigenBasis {
    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    /// Largest `‖C_k v − γ_k v‖_∞` over the listed operators.
    pub fn max_residual(&self) -> Result<f64> {
        let mut worst = 0.0f64;
        for (op, &g) in self.operators.iter().zip(&self.eigenvalues) {
            let cv = op.apply(&self.state)?;
            let gv = self.state.scale(Complex64::new(g, 0.0));
            worst = worst.max(cv.max_abs_diff(&gv)?);
        }
        Ok(worst)
    }

    pub fn pairwise_commute(&self) -> Result<bool> {
        for (i, a) in self.operators.iter().enumerate() {
            for b in &self.operators[i + 1..] {
                if !a.commutes(b)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn coefficient_rows(&self) -> Result<Vec<Vec<Complex64>>> {
        let cands = CandidateWordSet::new(self.state.n())?;
        self.operators
            .iter()
            .map(|op| {
                cands.coeff_vector(op).ok_or_else(|| {
                    Error::UnsupportedExpression(format!("{op} leaves the candidate word set"))
                })
            })
            .collect()
    }

    /// Dimension of the span of the operators as coefficient vectors.
    pub fn rank(&self) -> Result<usize> {
        Ok(rank(&self.coefficient_rows()?, TOL_RANK))
    }

    pub fn is_linearly_independent(&self) -> Result<bool> {
        Ok(self.rank()? == self.len())
    }

    /// Expresses `op` in the span of the operators and returns the implied
    /// eigenvalue, or `None` when `op` lies outside the span.
    pub fn implied_eigenvalue(&self, op: &PauliSum) -> Result<Option<f64>> {
        let rows = self.coefficient_rows()?;
        let cands = CandidateWordSet::new(self.state.n())?;
        let Some(target) = cands.coeff_vector(op) else {
            return Ok(None);
        };
        Ok(solve_in_span(&rows, &target, TOL_RANK).map(|alpha| {
            alpha
                .iter()
                .zip(&self.eigenvalues)
                .map(|(a, g)| a.re * g)
                .sum()
        }))
    }
}

fn snap(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() < TOL_RANK {
        r
    } else {
        x
    }
}

fn snap_c(c: Complex64) -> Complex64 {
    Complex64::new(snap(c.re), snap(c.im))
}

/// Basis of every operator `Σ c_w w` over the candidate words that has `v` as
/// an eigenvector, in reduced row-echelon form over the candidate ordering.
pub fn eigen_basis(v: &StateVector) -> Result<EigenBasis> {
    let norm = v.norm_sqr().sqrt();
    if norm == 0.0 {
        return Err(Error::ZeroVector);
    }
    if !is_exchange_symmetric(v, TOL_ALG) {
        return Err(Error::NotExchangeSymmetric);
    }
    let u = v.scale(Complex64::new(1.0 / norm, 0.0));
    let cands = CandidateWordSet::new(v.n())?;
    let images: Vec<StateVector> = cands
        .words()
        .iter()
        .map(|w| PauliSum::from_word(w).apply(&u))
        .collect::<Result<_>>()?;

    // Component of each image orthogonal to u; the kernel of this map is the
    // set of coefficient vectors whose operator sends u into span{u}.
    let projected: Vec<Vec<Complex64>> = images
        .iter()
        .map(|img| {
            let along = u.inner(img).expect("same dimension");
            img.amps()
                .iter()
                .zip(u.amps())
                .map(|(a, b)| a - along * b)
                .collect()
        })
        .collect();
    let dim = u.dim();
    let matrix: Vec<Vec<Complex64>> = (0..dim)
        .map(|i| projected.iter().map(|col| col[i]).collect())
        .collect();

    let mut basis = null_space(&matrix, cands.len(), TOL_RANK);
    rref(&mut basis, TOL_RANK);
    basis.retain(|row| row.iter().any(|c| c.norm() >= TOL_RANK));

    let mut operators = Vec::with_capacity(basis.len());
    let mut eigenvalues = Vec::with_capacity(basis.len());
    for row in &basis {
        let coeffs: Vec<Complex64> = row.iter().map(|&c| snap_c(c)).collect();
        let gamma: Complex64 = coeffs
            .iter()
            .zip(&images)
            .map(|(c, img)| c * u.inner(img).expect("same dimension"))
            .sum();
        if gamma.im.abs() > TOL_ALG {
            return Err(Error::NonRealEigenvalue {
                re: gamma.re,
                im: gamma.im,
            });
        }
        operators.push(cands.to_sum(&coeffs));
        eigenvalues.push(snap(gamma.re));
    }
    Ok(EigenBasis {
        state: v.clone(),
        operators,
        eigenvalues,
    })
}

pub fn sigma(indices: &[u8]) -> PauliSum {
    PauliSum::sigma(indices)
}

pub fn tau3() -> PauliSum {
    PauliSum::sum_of(&[&[1, 2, 2], &[2, 1, 2], &[2, 2, 1]])
}

pub fn tau4() -> PauliSum {
    PauliSum::sum_of(&[
        &[1, 1, 2, 2],
        &[1, 2, 1, 2],
        &[1, 2, 2, 1],
        &[2, 1, 1, 2],
        &[2, 1, 2, 1],
        &[2, 2, 1, 1],
    ])
}

/// `τ_{4,i}` for `i ∈ 1..=3`.
pub fn tau4_i(i: usize) -> PauliSum {
    match i {
        1 => PauliSum::sum_of(&[&[1, 1, 2, 2], &[2, 2, 1, 1]]),
        2 => PauliSum::sum_of(&[&[1, 2, 1, 2], &[2, 1, 2, 1]]),
        3 => PauliSum::sum_of(&[&[1, 2, 2, 1], &[2, 1, 1, 2]]),
        _ => panic!("tau4_i index {i} outside 1..=3"),
    }
}

/// `τ_{4,i,j}` for `i ∈ 1..=4`, `j ∈ 1..=2`.
pub fn tau4_ij(i: usize, j: usize) -> PauliSum {
    let words: [&[u8]; 3] = match (i, j) {
        (1, 1) => [&[1, 1, 2, 2], &[1, 2, 1, 2], &[1, 2, 2, 1]],
        (1, 2) => [&[2, 1, 1, 2], &[2, 1, 2, 1], &[2, 2, 1, 1]],
        (2, 1) => [&[1, 1, 2, 2], &[2, 1, 1, 2], &[2, 1, 2, 1]],
        (2, 2) => [&[1, 2, 1, 2], &[1, 2, 2, 1], &[2, 2, 1, 1]],
        (3, 1) => [&[1, 2, 1, 2], &[2, 1, 1, 2], &[2, 2, 1, 1]],
        (3, 2) => [&[1, 1, 2, 2], &[1, 2, 2, 1], &[2, 1, 2, 1]],
        (4, 1) => [&[1, 2, 2, 1], &[2, 1, 2, 1], &[2, 2, 1, 1]],
        (4, 2) => [&[1, 1, 2, 2], &[1, 2, 1, 2], &[2, 1, 1, 2]],
        _ => panic!("tau4_ij index ({i},{j}) out of range"),
    };
    PauliSum::sum_of(&words)
}

/// `(−τ³ + 7τ) / 6`.
pub fn f3(t: &PauliSum) -> PauliSum {
    (&t.pow(3).scale_real(-1.0) + &t.scale_real(7.0)).scale_real(1.0 / 6.0)
}

/// `(−τ³ + 28τ) / 24`.
pub fn f4(t: &PauliSum) -> PauliSum {
    (&t.pow(3).scale_real(-1.0) + &t.scale_real(28.0)).scale_real(1.0 / 24.0)
}

/// States with a catalogued eigenoperator set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CatalogState {
    U3,
    TildeV31,
    U4,
    TildeV41,
    TildeV42,
}

impl CatalogState {
    pub const ALL: [CatalogState; 5] = [
        CatalogState::U3,
        CatalogState::TildeV31,
        CatalogState::U4,
        CatalogState::TildeV41,
        CatalogState::TildeV42,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Self::U3 => "u3",
            Self::TildeV31 => "tv31",
            Self::U4 => "u4",
            Self::TildeV41 => "tv41",
            Self::TildeV42 => "tv42",
        }
    }

    /// Accepts `u3`, `ghz3`, `tv31`, `v31~` and the analogous forms.
    pub fn from_id(id: &str) -> Result<Self> {
        match id {
            "u3" | "ghz3" => Ok(Self::U3),
            "u4" | "ghz4" => Ok(Self::U4),
            "tv31" | "v31~" => Ok(Self::TildeV31),
            "tv41" | "v41~" => Ok(Self::TildeV41),
            "tv42" | "v42~" => Ok(Self::TildeV42),
            _ => Err(Error::UnknownId(id.to_string())),
        }
    }

    pub fn family(self) -> Option<SymFamily> {
        match self {
            Self::TildeV31 => Some(SymFamily::V31),
            Self::TildeV41 => Some(SymFamily::V41),
            Self::TildeV42 => Some(SymFamily::V42),
            Self::U3 | Self::U4 => None,
        }
    }

    pub fn n(self) -> usize {
        match self {
            Self::U3 | Self::TildeV31 => 3,
            _ => 4,
        }
    }

    /// The state; symmetrized families default to unit coefficients.
    pub fn state(self, coeffs: Option<&SymCoeffs>) -> Result<StateVector> {
        match self.family() {
            None => ghz(self.n()),
            Some(f) => {
                let default = SymCoeffs::ones(f.coeff_count());
                sym_family_state(f, coeffs.unwrap_or(&default))
            }
        }
    }

    /// Labelled operators and eigenvalues of the catalogued row.
    pub fn row(self) -> Vec<(String, PauliSum, f64)> {
        let s = |w: &[u8]| (format!("{}", PauliSum::sigma(w)), PauliSum::sigma(w));
        let mut out: Vec<(String, PauliSum, f64)> = Vec::new();
        let mut push = |(label, op): (String, PauliSum), g: f64| out.push((label, op, g));
        match self {
            Self::U3 => {
                push(s(&[1, 1, 1]), 1.0);
                push(s(&[1, 2, 2]), -1.0);
                push(s(&[2, 1, 2]), -1.0);
                push(s(&[2, 2, 1]), -1.0);
            }
            Self::TildeV31 => {
                push(s(&[1, 1, 1]), 1.0);
                push(("tau3".into(), tau3()), 1.0);
            }
            Self::U4 => {
                let words: [(&[u8], f64); 8] = [
                    (&[1, 1, 1, 1], 1.0),
                    (&[1, 1, 2, 2], -1.0),
                    (&[1, 2, 1, 2], -1.0),
                    (&[1, 2, 2, 1], -1.0),
                    (&[2, 1, 1, 2], -1.0),
                    (&[2, 1, 2, 1], -1.0),
                    (&[2, 2, 1, 1], -1.0),
                    (&[2, 2, 2, 2], 1.0),
                ];
                for (w, g) in words {
                    push(s(w), g);
                }
            }
            Self::TildeV41 => {
                push(s(&[1, 1, 1, 1]), 1.0);
                for i in 1..=3 {
                    push((format!("tau4,{i}"), tau4_i(i)), 0.0);
                }
                push(s(&[2, 2, 2, 2]), -1.0);
            }
            Self::TildeV42 => {
                push(s(&[1, 1, 1, 1]), 1.0);
                for i in 1..=4 {
                    for j in 1..=2 {
                        push((format!("tau4,{i},{j}"), tau4_ij(i, j)), 1.0);
                    }
                }
                push(s(&[2, 2, 2, 2]), 1.0);
            }
        }
        out
    }
}

/// The catalogued operator set for a state, paired with the state built from
/// `coeffs` (unit coefficients when omitted).
pub fn table1_catalog(id: CatalogState, coeffs: Option<&SymCoeffs>) -> Result<EigenBasis> {
    let state = id.state(coeffs)?;
    let (operators, eigenvalues) = id.row().into_iter().map(|(_, op, g)| (op, g)).unzip();
    Ok(EigenBasis {
        state,
        operators,
        eigenvalues,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
    pub deviation: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Process exit status for the report: 0 when clean, 2 otherwise.
    pub fn exit_code(&self) -> u8 {
        if self.all_passed() {
            0
        } else {
            2
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn product(words: &[&[u8]]) -> PauliSum {
    let n = words[0].len();
    words
        .iter()
        .fold(PauliSum::identity(n), |acc, w| &acc * &PauliSum::sigma(w))
}

/// Checks every operator identity among the catalogued operators.
pub fn verify_identities() -> IdentityReport {
    let mut checks = Vec::new();
    let mut check = |name: String, lhs: PauliSum, rhs: PauliSum| {
        let deviation = lhs.max_abs_diff(&rhs).unwrap_or(f64::INFINITY);
        checks.push(IdentityCheck {
            name,
            passed: deviation <= TOL_ALG,
            deviation,
        });
    };

    let s111 = sigma(&[1, 1, 1]);
    let s1111 = sigma(&[1, 1, 1, 1]);
    let s2222 = sigma(&[2, 2, 2, 2]);
    let id4 = PauliSum::identity(4);

    check(
        "s(1,1,1) = -s(1,2,2) s(2,1,2) s(2,2,1)".into(),
        s111.clone(),
        -&product(&[&[1, 2, 2], &[2, 1, 2], &[2, 2, 1]]),
    );

    let ghz4_first: [[&[u8]; 3]; 4] = [
        [&[1, 1, 2, 2], &[1, 2, 1, 2], &[1, 2, 2, 1]],
        [&[1, 1, 2, 2], &[2, 1, 1, 2], &[2, 1, 2, 1]],
        [&[1, 2, 1, 2], &[2, 1, 1, 2], &[2, 2, 1, 1]],
        [&[1, 2, 2, 1], &[2, 1, 2, 1], &[2, 2, 1, 1]],
    ];
    let ghz4_second: [[&[u8]; 3]; 4] = [
        [&[2, 1, 1, 2], &[2, 1, 2, 1], &[2, 2, 1, 1]],
        [&[1, 2, 1, 2], &[1, 2, 2, 1], &[2, 2, 1, 1]],
        [&[1, 1, 2, 2], &[1, 2, 2, 1], &[2, 1, 2, 1]],
        [&[1, 1, 2, 2], &[1, 2, 1, 2], &[2, 1, 1, 2]],
    ];
    for (lhs, label, sets) in [
        (&s1111, "s(1,1,1,1)", &ghz4_first),
        (&s2222, "s(2,2,2,2)", &ghz4_second),
    ] {
        for set in sets {
            let rhs = product(set);
            let name = format!(
                "{label} = -{}",
                set.iter()
                    .map(|w| sigma(w).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            check(name, lhs.clone(), -&rhs);
        }
    }

    check(
        "s(1,1,1,1) s(2,2,2,2) = product of the six mixed words".into(),
        &s1111 * &s2222,
        product(&[
            &[1, 1, 2, 2],
            &[1, 2, 1, 2],
            &[1, 2, 2, 1],
            &[2, 1, 1, 2],
            &[2, 1, 2, 1],
            &[2, 2, 1, 1],
        ]),
    );

    check("f3(tau3) = s(1,1,1)".into(), f3(&tau3()), s111);
    for i in 1..=4 {
        check(
            format!("f3(tau4,{i},1) = s(1,1,1,1)"),
            f3(&tau4_ij(i, 1)),
            s1111.clone(),
        );
        check(
            format!("f3(tau4,{i},2) = s(2,2,2,2)"),
            f3(&tau4_ij(i, 2)),
            s2222.clone(),
        );
    }
    check(
        "f4(tau4) = s(1,1,1,1) + s(2,2,2,2)".into(),
        f4(&tau4()),
        &s1111 + &s2222,
    );
    check(
        "tau4,1 + tau4,2 + tau4,3 = tau4".into(),
        &(&tau4_i(1) + &tau4_i(2)) + &tau4_i(3),
        tau4(),
    );
    for i in 1..=4 {
        check(
            format!("tau4,{i},1 + tau4,{i},2 = tau4"),
            &tau4_ij(i, 1) + &tau4_ij(i, 2),
            tau4(),
        );
    }
    for i in 1..=3 {
        let t = tau4_i(i);
        check(
            format!("tau4,{i}^3 = 4 tau4,{i}"),
            t.pow(3),
            t.scale_real(4.0),
        );
        check(
            format!("f3(tau4,{i}) = tau4,{i}/2"),
            f3(&t),
            t.scale_real(0.5),
        );
        check(format!("f4(tau4,{i}) = tau4,{i}"), f4(&t), t.clone());
        check(
            format!("s(1,1,1,1) s(2,2,2,2) = -I + tau4,{i}^2/2"),
            &s1111 * &s2222,
            &(-&id4) + &t.pow(2).scale_real(0.5),
        );
    }
    check(
        "s(1,1,1,1) + s(2,2,2,2) = -tau4,1 tau4,2 tau4,3/4".into(),
        &s1111 + &s2222,
        (&(&tau4_i(1) * &tau4_i(2)) * &tau4_i(3)).scale_real(-0.25),
    );

    IdentityReport { checks }
}
