//! Bell–Mermin operators built from dichotomic observables `X = Σ x_j σ_j`,
//! `Y = Σ y_j σ_j` with unit vectors `x`, `y`, their expectation values, and
//! the maximal violation over measurement settings.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::format::fmt_sig;
use crate::linalg::DenseMatrix;
use crate::optimize::multistart_minimize;
use crate::state::{dicke, ghz, StateVector};
use crate::{Error, Result};

/// Unit-norm tolerance for measurement directions.
pub const TOL_UNIT: f64 = 1e-10;
/// Default seed for the multi-start optimizer.
pub const DEFAULT_SEED: u64 = 0x4D45524D;
/// Default number of optimizer starts.
pub const DEFAULT_STARTS: usize = 64;

type Op2 = [[Complex64; 2]; 2];

/// Per-qubit measurement directions for the two observables `X_a`, `Y_a`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasurementSetting {
    x: Vec<[f64; 3]>,
    y: Vec<[f64; 3]>,
}

fn check_unit(v: [f64; 3]) -> Result<()> {
    let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > TOL_UNIT {
        return Err(Error::NotUnit(v));
    }
    Ok(())
}

/// Unit vector with polar angle `theta` and azimuth `phi`.
pub fn unit_from_angles(theta: f64, phi: f64) -> [f64; 3] {
    [
        theta.sin() * phi.cos(),
        theta.sin() * phi.sin(),
        theta.cos(),
    ]
}

impl MeasurementSetting {
    pub fn new(x: Vec<[f64; 3]>, y: Vec<[f64; 3]>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                actual: y.len(),
            });
        }
        if x.is_empty() {
            return Err(Error::UnsupportedQubits(0));
        }
        for v in x.iter().chain(&y) {
            check_unit(*v)?;
        }
        Ok(Self { x, y })
    }

    /// The same `(x, y)` pair on every qubit.
    pub fn uniform(n: usize, x: [f64; 3], y: [f64; 3]) -> Result<Self> {
        Self::new(vec![x; n], vec![y; n])
    }

    /// `X_a = σ1`, `Y_a = σ2` on every qubit.
    pub fn pauli_xy(n: usize) -> Self {
        Self {
            x: vec![[1.0, 0.0, 0.0]; n],
            y: vec![[0.0, 1.0, 0.0]; n],
        }
    }

    /// Builds a setting from spherical angles: `[θx, φx, θy, φy]` for a
    /// uniform setting, or that block repeated per qubit.
    pub fn from_angles(n: usize, angles: &[f64]) -> Result<Self> {
        let block = |k: usize| {
            let a = &angles[4 * k..4 * k + 4];
            (unit_from_angles(a[0], a[1]), unit_from_angles(a[2], a[3]))
        };
        match angles.len() {
            4 => {
                let (x, y) = block(0);
                Ok(Self::uniform(n, x, y)?)
            }
            len if len == 4 * n => {
                let (x, y): (Vec<_>, Vec<_>) = (0..n).map(block).unzip();
                Self::new(x, y)
            }
            len => Err(Error::DimensionMismatch {
                expected: 4 * n,
                actual: len,
            }),
        }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &[[f64; 3]] {
        &self.x
    }

    pub fn y(&self) -> &[[f64; 3]] {
        &self.y
    }

    pub fn is_uniform(&self) -> bool {
        self.x.iter().all(|v| *v == self.x[0]) && self.y.iter().all(|v| *v == self.y[0])
    }
}

/// 2×2 matrix of `Σ v_j σ_j`.
pub fn observable(v: [f64; 3]) -> Op2 {
    [
        [Complex64::new(v[2], 0.0), Complex64::new(v[0], -v[1])],
        [Complex64::new(v[0], v[1]), Complex64::new(-v[2], 0.0)],
    ]
}

fn op_matrix(op: &Op2) -> DenseMatrix {
    DenseMatrix::from_rows(&[op[0].to_vec(), op[1].to_vec()])
}

/// Signed terms of the Mermin operator; `true` selects `X_a`, `false` `Y_a`.
pub fn mermin_terms(n: usize) -> Result<Vec<(Vec<bool>, f64)>> {
    let table: &[(&str, f64)] = match n {
        3 => &[("XXX", 1.0), ("XYY", -1.0), ("YXY", -1.0), ("YYX", -1.0)],
        4 => &[
            ("XXXX", 1.0),
            ("XXYY", -1.0),
            ("XYXY", -1.0),
            ("XYYX", -1.0),
            ("YXXY", -1.0),
            ("YXYX", -1.0),
            ("YYXX", -1.0),
            ("YYYY", 1.0),
        ],
        _ => return Err(Error::UnsupportedQubits(n)),
    };
    Ok(table
        .iter()
        .map(|(w, s)| (w.chars().map(|c| c == 'X').collect(), *s))
        .collect())
}

/// Dense `2ⁿ × 2ⁿ` Mermin operator assembled from Kronecker products.
pub fn mermin_operator(n: usize, s: &MeasurementSetting) -> Result<DenseMatrix> {
    let terms = mermin_terms(n)?;
    if s.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: s.n(),
        });
    }
    let dim = 1 << n;
    let mut m = DenseMatrix::zeros(dim, dim);
    for (pattern, sign) in terms {
        let term = pattern
            .iter()
            .enumerate()
            .map(|(a, &is_x)| op_matrix(&observable(if is_x { s.x[a] } else { s.y[a] })))
            .reduce(|acc, b| acc.kron(&b))
            .expect("n >= 1");
        m.add_scaled(&term, Complex64::new(sign, 0.0));
    }
    Ok(m)
}

/// `(O_1 ⊗ ... ⊗ O_n) v` without forming the Kronecker product.
fn apply_local(amps: &[Complex64], ops: &[&Op2]) -> Vec<Complex64> {
    let n = ops.len();
    let mut out = amps.to_vec();
    for (q, op) in ops.iter().enumerate() {
        let bit = 1usize << (n - 1 - q);
        for i0 in 0..out.len() {
            if i0 & bit != 0 {
                continue;
            }
            let i1 = i0 | bit;
            let (a0, a1) = (out[i0], out[i1]);
            out[i0] = op[0][0] * a0 + op[0][1] * a1;
            out[i1] = op[1][0] * a0 + op[1][1] * a1;
        }
    }
    out
}

/// `⟨v, M v⟩ / ‖v‖²`, computed term by term with per-qubit operators.
pub fn expectation_complex(v: &StateVector, s: &MeasurementSetting) -> Result<Complex64> {
    let n = v.n();
    let terms = mermin_terms(n)?;
    if s.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: s.n(),
        });
    }
    let norm = v.norm_sqr();
    if norm == 0.0 {
        return Err(Error::ZeroVector);
    }
    let xs: Vec<Op2> = s.x.iter().map(|x| observable(*x)).collect();
    let ys: Vec<Op2> = s.y.iter().map(|y| observable(*y)).collect();
    let amps = v.amps();
    let mut total = Complex64::new(0.0, 0.0);
    for (pattern, sign) in terms {
        let ops: Vec<&Op2> = pattern
            .iter()
            .enumerate()
            .map(|(a, &is_x)| if is_x { &xs[a] } else { &ys[a] })
            .collect();
        let w = apply_local(amps, &ops);
        let inner: Complex64 = amps.iter().zip(&w).map(|(a, b)| a.conj() * b).sum();
        total += inner * sign;
    }
    Ok(total / norm)
}

/// Real expectation value `μ_n(v)` of the Mermin operator.
pub fn expectation(v: &StateVector, s: &MeasurementSetting) -> Result<f64> {
    Ok(expectation_complex(v, s)?.re)
}

/// The three plain Dicke states with closed-form restricted expectations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DickeState {
    V31,
    V41,
    V42,
}

impl DickeState {
    pub const ALL: [DickeState; 3] = [DickeState::V31, DickeState::V41, DickeState::V42];

    pub fn id(self) -> &'static str {
        match self {
            Self::V31 => "v31",
            Self::V41 => "v41",
            Self::V42 => "v42",
        }
    }

    pub fn from_id(id: &str) -> Result<Self> {
        match id {
            "v31" | "w3" => Ok(Self::V31),
            "v41" => Ok(Self::V41),
            "v42" => Ok(Self::V42),
            _ => Err(Error::UnknownId(id.to_string())),
        }
    }

    pub fn n(self) -> usize {
        match self {
            Self::V31 => 3,
            _ => 4,
        }
    }

    pub fn state(self) -> StateVector {
        match self {
            Self::V31 => dicke(3, 1),
            Self::V41 => dicke(4, 1),
            Self::V42 => dicke(4, 2),
        }
        .expect("valid Dicke parameters")
    }
}

fn polynomial(state: DickeState, x3: f64, y3: f64, p: f64) -> f64 {
    match state {
        DickeState::V31 => -3.0 * x3.powi(3) + 5.0 * x3 * y3 * y3 - 4.0 * p * y3,
        DickeState::V41 => {
            -4.0 * (x3.powi(4) + y3.powi(4)) + 12.0 * x3 * x3 * y3 * y3 - 12.0 * p * x3 * y3
        }
        DickeState::V42 => {
            6.0 * (x3.powi(4) + y3.powi(4)) - 16.0 * x3 * x3 * y3 * y3 - 4.0 * p * p
                + 16.0 * p * x3 * y3
        }
    }
}

/// Closed-form `μ_n(v_{n,m})` for identical `X`, `Y` on every qubit.
pub fn restricted_mu(state: DickeState, x: [f64; 3], y: [f64; 3]) -> Result<f64> {
    check_unit(x)?;
    check_unit(y)?;
    Ok(polynomial(state, x[2], y[2], x[0] * y[0] + x[1] * y[1]))
}

/// Sign of the collinear substitution `x1 y1 + x2 y2 = ±√(1−x3²)√(1−y3²)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Self::Plus => 1.0,
            Self::Minus => -1.0,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Self::Plus => "+",
            Self::Minus => "-",
        }
    }

    pub fn from_symbol(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" => Ok(Self::Plus),
            "-" | "minus" => Ok(Self::Minus),
            _ => Err(Error::UnknownId(s.to_string())),
        }
    }
}

/// `μ_{n,±}(v_{n,m})` as a function of `x3`, `y3` alone.
pub fn collinear_mu(state: DickeState, branch: Branch, x3: f64, y3: f64) -> Result<f64> {
    for (name, v) in [("x3", x3), ("y3", y3)] {
        if !(-1.0..=1.0).contains(&v) {
            return Err(Error::OutOfRange { name, value: v });
        }
    }
    let p = branch.sign() * (1.0 - x3 * x3).sqrt() * (1.0 - y3 * y3).sqrt();
    Ok(polynomial(state, x3, y3, p))
}

/// Exact reference constants for the maximal violations.
pub mod constants {
    /// `m3(v31) = √(738√41 − 3974) / 9`.
    pub fn w_state_bound() -> f64 {
        let (p, q, r, d) = (738.0f64, 41.0f64, 3974.0f64, 9.0f64);
        (p * q.sqrt() - r).sqrt() / d
    }

    /// `|x3|` at the W-state optimum: `√(3√41 − 13) / (3√2)`.
    pub fn w_state_x3() -> f64 {
        (3.0 * 41f64.sqrt() - 13.0).sqrt() / (3.0 * 2f64.sqrt())
    }

    /// `|y3|` at the W-state optimum: `√(5√41 − 27) / √6`.
    pub fn w_state_y3() -> f64 {
        (5.0 * 41f64.sqrt() - 27.0).sqrt() / 6f64.sqrt()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// One `(x, y)` pair shared by every qubit.
    Uniform,
    /// Independent `(x_a, y_a)` per qubit.
    General,
}

impl Mode {
    pub fn from_id(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(Self::Uniform),
            "general" => Ok(Self::General),
            _ => Err(Error::UnknownId(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundResult {
    /// Located maximum of `|μ_n(v)|`.
    pub value: f64,
    /// `μ_n(v)` at the located setting (carries the sign).
    pub signed_value: f64,
    pub setting: MeasurementSetting,
    pub target: Option<f64>,
    pub gap: Option<f64>,
}

#[derive(Clone, Copy, Debug)]
pub struct MaximizeOptions {
    pub starts: usize,
    pub seed: u64,
}

impl Default for MaximizeOptions {
    fn default() -> Self {
        Self {
            starts: DEFAULT_STARTS,
            seed: DEFAULT_SEED,
        }
    }
}

/// Maximizes `|μ_n(v)|` over measurement settings by multi-start local
/// search on spherical angles, once for `μ` and once for `−μ`.
pub fn maximize(v: &StateVector, mode: Mode, opts: &MaximizeOptions) -> Result<BoundResult> {
    let n = v.n();
    mermin_terms(n)?;
    if v.norm_sqr() == 0.0 {
        return Err(Error::ZeroVector);
    }
    let dim = match mode {
        Mode::Uniform => 4,
        Mode::General => 4 * n,
    };
    let pi = std::f64::consts::PI;
    let lower = vec![0.0; dim];
    let upper: Vec<f64> = (0..dim)
        .map(|i| if i % 2 == 0 { pi } else { 2.0 * pi })
        .collect();
    let mu = |angles: &[f64]| {
        let s = MeasurementSetting::from_angles(n, angles).expect("angle count matches");
        expectation(v, &s).expect("validated state")
    };
    let neg = |a: &[f64]| -mu(a);
    let best_pos = multistart_minimize(&neg, &lower, &upper, opts.starts, opts.seed);
    let best_neg = multistart_minimize(&mu, &lower, &upper, opts.starts, opts.seed ^ 1);
    let (angles, signed) = if -best_pos.value >= best_neg.value.abs() {
        (best_pos.x, -best_pos.value)
    } else {
        (best_neg.x, best_neg.value)
    };
    Ok(BoundResult {
        value: signed.abs(),
        signed_value: signed,
        setting: MeasurementSetting::from_angles(n, &angles)?,
        target: None,
        gap: None,
    })
}

/// States with a known exact maximal violation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundState {
    U3,
    U4,
    Dicke(DickeState),
}

impl BoundState {
    pub const ALL: [BoundState; 5] = [
        BoundState::U3,
        BoundState::Dicke(DickeState::V31),
        BoundState::U4,
        BoundState::Dicke(DickeState::V41),
        BoundState::Dicke(DickeState::V42),
    ];

    pub fn from_id(id: &str) -> Result<Self> {
        match id {
            "u3" | "ghz3" => Ok(Self::U3),
            "u4" | "ghz4" => Ok(Self::U4),
            other => DickeState::from_id(other).map(Self::Dicke),
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            Self::U3 => "u3",
            Self::U4 => "u4",
            Self::Dicke(d) => d.id(),
        }
    }

    pub fn state(self) -> StateVector {
        match self {
            Self::U3 => ghz(3).expect("n = 3"),
            Self::U4 => ghz(4).expect("n = 4"),
            Self::Dicke(d) => d.state(),
        }
    }

    /// Exact value of the maximal `|μ_n|`.
    pub fn reference(self) -> f64 {
        match self {
            Self::U3 => 4.0,
            Self::U4 => 8.0,
            Self::Dicke(DickeState::V31) => constants::w_state_bound(),
            Self::Dicke(DickeState::V41) => 4.5,
            Self::Dicke(DickeState::V42) => 6.0,
        }
    }
}

/// [`maximize`] with the exact reference value and gap attached.
pub fn maximize_catalog(
    state: BoundState,
    mode: Mode,
    opts: &MaximizeOptions,
) -> Result<BoundResult> {
    let mut r = maximize(&state.state(), mode, opts)?;
    let target = state.reference();
    r.target = Some(target);
    r.gap = Some((r.value - target).abs());
    Ok(r)
}

/// Largest `|μ_{n,±}|` over both branches and `(x3, y3) ∈ [−1, 1]²`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CollinearMax {
    pub value: f64,
    pub branch: Branch,
    pub x3: f64,
    pub y3: f64,
}

/// Maximizes `|collinear_mu|` with `x3 = cos θ`, `y3 = cos ψ`.
pub fn collinear_maximum(state: DickeState, opts: &MaximizeOptions) -> CollinearMax {
    let pi = std::f64::consts::PI;
    let mut best: Option<CollinearMax> = None;
    for (k, branch) in [Branch::Plus, Branch::Minus].into_iter().enumerate() {
        for sign in [1.0, -1.0] {
            let f = |a: &[f64]| {
                -sign * collinear_mu(state, branch, a[0].cos(), a[1].cos()).expect("in range")
            };
            let seed = opts.seed.wrapping_add(2 * k as u64 + (sign < 0.0) as u64);
            let r = multistart_minimize(&f, &[0.0, 0.0], &[pi, pi], opts.starts, seed);
            let cand = CollinearMax {
                value: -r.value,
                branch,
                x3: r.x[0].cos(),
                y3: r.x[1].cos(),
            };
            if best.is_none_or(|b| cand.value > b.value) {
                best = Some(cand);
            }
        }
    }
    best.expect("four searches ran")
}

/// `μ_{n,±}` sampled on a square grid over `[−1, 1]²`, row-major with `x3`
/// as the row axis.
#[derive(Clone, Debug, PartialEq)]
pub struct ContourGrid {
    pub state: DickeState,
    pub branch: Branch,
    pub resolution: usize,
    pub values: Vec<f64>,
}

/// Grid coordinate `k` of `resolution`; exactly antisymmetric under `k ↦ R−1−k`.
pub fn grid_axis(k: usize, resolution: usize) -> f64 {
    let r = (resolution - 1) as f64;
    (2.0 * k as f64 - r) / r
}

impl ContourGrid {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.resolution + j]
    }

    /// Largest `|μ|` on the grid with its `(x3, y3)`.
    pub fn max_abs(&self) -> (f64, f64, f64) {
        let r = self.resolution;
        (0..r * r)
            .map(|k| {
                (
                    self.values[k].abs(),
                    grid_axis(k / r, r),
                    grid_axis(k % r, r),
                )
            })
            .fold(
                (f64::NEG_INFINITY, 0.0, 0.0),
                |a, b| if b.0 > a.0 { b } else { a },
            )
    }

    /// CSV with header `x3,y3,mu`, six significant digits.
    pub fn to_csv(&self) -> String {
        let r = self.resolution;
        let mut out = String::from("x3,y3,mu\n");
        for i in 0..r {
            for j in 0..r {
                out.push_str(&format!(
                    "{},{},{}\n",
                    fmt_sig(grid_axis(i, r), 6),
                    fmt_sig(grid_axis(j, r), 6),
                    fmt_sig(self.get(i, j), 6)
                ));
            }
        }
        out
    }
}

pub fn contour(state: DickeState, branch: Branch, resolution: usize) -> Result<ContourGrid> {
    if resolution < 2 {
        return Err(Error::OutOfRange {
            name: "resolution",
            value: resolution as f64,
        });
    }
    let values = (0..resolution * resolution)
        .map(|k| {
            collinear_mu(
                state,
                branch,
                grid_axis(k / resolution, resolution),
                grid_axis(k % resolution, resolution),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ContourGrid {
        state,
        branch,
        resolution,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{sym_dicke, SymCoeffs};

    #[test]
    fn ghz_eigenvalues_at_pauli_setting() {
        for (n, expected) in [(3, 4.0), (4, 8.0)] {
            let u = ghz(n).unwrap();
            let m = mermin_operator(n, &MeasurementSetting::pauli_xy(n)).unwrap();
            let mu = m.matvec(u.amps());
            for (a, b) in mu.iter().zip(u.amps()) {
                assert!((a - b * expected).norm() < 1e-12);
            }
            let e = expectation(&u, &MeasurementSetting::pauli_xy(n)).unwrap();
            assert!((e - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn equal_observables_collapse() {
        let x = [1.0, 0.0, 0.0];
        let s = MeasurementSetting::uniform(3, x, x).unwrap();
        let m = mermin_operator(3, &s).unwrap();
        let s111 = crate::linalg::pauli_matrix(crate::pauli::Letter::X1);
        let kron = s111.kron(&s111).kron(&s111);
        let mut expected = DenseMatrix::zeros(8, 8);
        expected.add_scaled(&kron, Complex64::new(-2.0, 0.0));
        assert!(m.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn symmetrized_dicke_expectations_vanish() {
        let c = SymCoeffs::new(vec![
            Complex64::new(1.0, 2.0),
            Complex64::new(-0.5, 0.0),
            Complex64::new(0.0, 3.0),
        ])
        .unwrap();
        let v = sym_dicke(3, 1, &c).unwrap();
        let e = expectation(&v, &MeasurementSetting::pauli_xy(3)).unwrap();
        assert!(e.abs() < 1e-12);
        let v42 = dicke(4, 2).unwrap();
        assert!(
            expectation(&v42, &MeasurementSetting::pauli_xy(4))
                .unwrap()
                .abs()
                < 1e-12
        );
    }

    #[test]
    fn restricted_examples() {
        let z = [0.0, 0.0, 1.0];
        assert_eq!(restricted_mu(DickeState::V31, z, z).unwrap(), 2.0);
        assert_eq!(restricted_mu(DickeState::V41, z, z).unwrap(), 4.0);
        let r = restricted_mu(DickeState::V42, [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]).unwrap();
        assert_eq!(r, 0.0);
        assert!(matches!(
            restricted_mu(DickeState::V31, [1.0, 1.0, 0.0], z),
            Err(Error::NotUnit(_))
        ));
    }

    #[test]
    fn collinear_examples() {
        assert_eq!(
            collinear_mu(DickeState::V31, Branch::Plus, 0.0, 0.0).unwrap(),
            0.0
        );
        assert_eq!(
            collinear_mu(DickeState::V42, Branch::Plus, 1.0, 0.0).unwrap(),
            6.0
        );
        let a = constants::w_state_x3();
        let b = constants::w_state_y3();
        let v = collinear_mu(DickeState::V31, Branch::Plus, a, -b).unwrap();
        assert!((v.abs() - constants::w_state_bound()).abs() < 1e-12);
        assert!(collinear_mu(DickeState::V31, Branch::Plus, 1.5, 0.0).is_err());
    }

    #[test]
    fn reference_constants() {
        assert!((constants::w_state_bound() - 3.04596).abs() < 5e-6);
        assert!((constants::w_state_x3() - 0.587337).abs() < 5e-7);
        assert!((constants::w_state_y3() - 0.914296).abs() < 5e-7);
    }

    #[test]
    fn setting_validation() {
        assert!(MeasurementSetting::new(vec![[1.0, 0.0, 0.0]], vec![]).is_err());
        assert!(MeasurementSetting::new(vec![[0.5, 0.0, 0.0]], vec![[1.0, 0.0, 0.0]]).is_err());
        let s = MeasurementSetting::from_angles(3, &[0.1, 0.2, 0.3, 0.4]).unwrap();
        assert!(s.is_uniform());
        assert_eq!(s.n(), 3);
        assert!(MeasurementSetting::from_angles(3, &[0.0; 5]).is_err());
        let u = ghz(3).unwrap();
        assert!(expectation(&u, &MeasurementSetting::pauli_xy(4)).is_err());
        assert!(matches!(
            expectation(
                &StateVector::zeros(3).unwrap(),
                &MeasurementSetting::pauli_xy(3)
            ),
            Err(Error::ZeroVector)
        ));
        assert!(mermin_operator(5, &MeasurementSetting::pauli_xy(5)).is_err());
    }

    #[test]
    fn contour_layout() {
        let g = contour(DickeState::V41, Branch::Plus, 3).unwrap();
        assert_eq!(g.values.len(), 9);
        let csv = g.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "x3,y3,mu");
        assert_eq!(lines.len(), 10);
        // row-major with x3 as the row axis
        assert!(lines[1].starts_with("-1,-1,"));
        assert!(lines[2].starts_with("-1,0,"));
        assert!(contour(DickeState::V41, Branch::Plus, 1).is_err());
        assert_eq!(grid_axis(0, 101), -1.0);
        assert_eq!(grid_axis(50, 101), 0.0);
        assert_eq!(grid_axis(100, 101), 1.0);
    }
}
