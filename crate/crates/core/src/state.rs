//! Amplitude vectors for GHZ, Dicke and exchange-symmetrized Dicke states.
//!
//! Basis words `e_{j1,...,jn}` with `jk ∈ {1, 2}` are packed into an integer
//! with `j = 1 ↦ 0` and `j = 2 ↦ 1`, qubit 1 in the most significant bit.
//! All constructors return the non-normalized forms; expectation values
//! divide by the squared norm.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::pauli::MAX_QUBITS;
use crate::{Error, Result};

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

/// Packed index of the basis word `e_{j1,...,jn}`; panics if some `jk ∉ {1, 2}`.
pub fn basis_index(js: &[u8]) -> usize {
    js.iter().fold(0usize, |acc, &j| {
        assert!(j == 1 || j == 2, "basis labels are 1 or 2, got {j}");
        (acc << 1) | usize::from(j - 1)
    })
}

impl StateVector {
    pub fn from_amps(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::UnsupportedQubits(n));
        }
        if amps.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: amps.len().max(1).ilog2() as usize,
            });
        }
        Ok(Self { n, amps })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::from_amps(n, vec![ZERO; 1usize.checked_shl(n as u32).unwrap_or(0)])
    }

    /// Sum of unit-amplitude basis words.
    pub fn from_basis_words(n: usize, words: &[&[u8]]) -> Result<Self> {
        let mut v = Self::zeros(n)?;
        for w in words {
            if w.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: w.len(),
                });
            }
            v.amps[basis_index(w)] += ONE;
        }
        Ok(v)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amp(&self, js: &[u8]) -> Complex64 {
        self.amps[basis_index(js)]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.amps.iter().all(|a| *a == ZERO)
    }

    pub fn nonzero_count(&self) -> usize {
        self.amps.iter().filter(|a| **a != ZERO).count()
    }

    /// `<self, other>`, antilinear in `self`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.check_same(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            n: self.n,
            amps: self.amps.iter().map(|a| a * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self {
            n: self.n,
            amps: self
                .amps
                .iter()
                .zip(&other.amps)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Largest amplitude-wise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.max_abs_diff(other).is_ok_and(|d| d <= tol)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: other.n,
            });
        }
        Ok(())
    }
}

fn check_small_n(n: usize) -> Result<()> {
    if n == 3 || n == 4 {
        Ok(())
    } else {
        Err(Error::UnsupportedQubits(n))
    }
}

/// GHZ state `e_{1,...,1} + e_{2,...,2}`.
pub fn ghz(n: usize) -> Result<StateVector> {
    check_small_n(n)?;
    let mut v = StateVector::zeros(n)?;
    v.amps[0] = ONE;
    v.amps[(1 << n) - 1] = ONE;
    Ok(v)
}

/// Dicke state: unit amplitude on every basis word with exactly `m` entries `e2`.
pub fn dicke(n: usize, m: usize) -> Result<StateVector> {
    check_small_n(n)?;
    if m == 0 || m > n / 2 {
        return Err(Error::DegreeOutOfRange { n, m });
    }
    let mut v = StateVector::zeros(n)?;
    for (idx, a) in v.amps.iter_mut().enumerate() {
        if idx.count_ones() as usize == m {
            *a = ONE;
        }
    }
    Ok(v)
}

/// Swaps `e1` and `e2` in every tensor slot.
pub fn exchange_flip(v: &StateVector) -> StateVector {
    let mask = v.dim() - 1;
    let mut amps = vec![ZERO; v.dim()];
    for (idx, a) in v.amps.iter().enumerate() {
        amps[idx ^ mask] = *a;
    }
    StateVector { n: v.n, amps }
}

pub fn is_exchange_symmetric(v: &StateVector, tol: f64) -> bool {
    let scale = v.amps.iter().map(|a| a.norm()).fold(0.0, f64::max).max(1.0);
    v.approx_eq(&exchange_flip(v), tol * scale)
}

/// The three exchange-symmetrized Dicke families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymFamily {
    V31,
    V41,
    V42,
}

impl SymFamily {
    pub fn from_nm(n: usize, m: usize) -> Result<Self> {
        match (n, m) {
            (3, 1) => Ok(Self::V31),
            (4, 1) => Ok(Self::V41),
            (4, 2) => Ok(Self::V42),
            (3 | 4, _) => Err(Error::DegreeOutOfRange { n, m }),
            _ => Err(Error::UnsupportedQubits(n)),
        }
    }

    pub fn n(self) -> usize {
        match self {
            Self::V31 => 3,
            Self::V41 | Self::V42 => 4,
        }
    }

    /// Representative of each coefficient's basis pair `(b, flip(b))`, in
    /// coefficient order.
    pub fn pair_representatives(self) -> &'static [&'static [u8]] {
        match self {
            Self::V31 => &[&[2, 1, 1], &[1, 2, 1], &[1, 1, 2]],
            Self::V41 => &[&[2, 1, 1, 1], &[1, 2, 1, 1], &[1, 1, 2, 1], &[1, 1, 1, 2]],
            Self::V42 => &[&[1, 1, 2, 2], &[1, 2, 1, 2], &[1, 2, 2, 1]],
        }
    }

    pub fn coeff_count(self) -> usize {
        self.pair_representatives().len()
    }
}

/// Nonzero complex coefficients of a symmetrized Dicke state.
#[derive(Clone, Debug, PartialEq)]
pub struct SymCoeffs(Vec<Complex64>);

impl SymCoeffs {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if let Some(i) = values.iter().position(|c| *c == ZERO) {
            return Err(Error::ZeroCoefficient(i));
        }
        Ok(Self(values))
    }

    pub fn ones(len: usize) -> Self {
        Self(vec![ONE; len])
    }

    pub fn values(&self) -> &[Complex64] {
        &self.0
    }
}

/// Generalized symmetrization: each coefficient weights one basis pair `(b, flip(b))`.
pub fn sym_dicke(n: usize, m: usize, coeffs: &SymCoeffs) -> Result<StateVector> {
    let family = SymFamily::from_nm(n, m)?;
    sym_family_state(family, coeffs)
}

pub fn sym_family_state(family: SymFamily, coeffs: &SymCoeffs) -> Result<StateVector> {
    let reps = family.pair_representatives();
    if coeffs.0.len() != reps.len() {
        return Err(Error::CoefficientCount {
            expected: reps.len(),
            actual: coeffs.0.len(),
        });
    }
    let n = family.n();
    let mask = (1 << n) - 1;
    let mut v = StateVector::zeros(n)?;
    for (rep, c) in reps.iter().zip(&coeffs.0) {
        let b = basis_index(rep);
        v.amps[b] += c;
        v.amps[b ^ mask] += c;
    }
    Ok(v)
}

impl std::str::FromStr for SymCoeffs {
    type Err = Error;

    /// Comma-separated complex numbers, e.g. `1,2-0.5i,3i`.
    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .split(',')
            .map(crate::pauli::parse_complex)
            .collect::<Result<Vec<_>>>()?;
        Self::new(values)
    }
}

/// Resolves a state identifier: `u3`/`ghz3`, `u4`/`ghz4`, `v31`, `v41`, `v42`,
/// or `tv31`, `tv41`, `tv42` with optional pair coefficients (default all ones).
pub fn named_state(id: &str, coeffs: Option<&SymCoeffs>) -> Result<StateVector> {
    let plain = |v: Result<StateVector>| match coeffs {
        Some(_) => Err(Error::Parse(format!("state {id:?} takes no coefficients"))),
        None => v,
    };
    let family = |f: SymFamily| match coeffs {
        Some(c) => sym_family_state(f, c),
        None => sym_family_state(f, &SymCoeffs::ones(f.coeff_count())),
    };
    match id {
        "u3" | "ghz3" => plain(ghz(3)),
        "u4" | "ghz4" => plain(ghz(4)),
        "v31" | "w3" => plain(dicke(3, 1)),
        "v41" => plain(dicke(4, 1)),
        "v42" => plain(dicke(4, 2)),
        "tv31" | "v31~" => family(SymFamily::V31),
        "tv41" | "v41~" => family(SymFamily::V41),
        "tv42" | "v42~" => family(SymFamily::V42),
        _ => Err(Error::UnknownId(id.to_string())),
    }
}

#[derive(Serialize, Deserialize)]
struct StateJson {
    n: usize,
    amps: Vec<[f64; 2]>,
}

impl Serialize for StateVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        StateJson {
            n: self.n,
            amps: self.amps.iter().map(|a| [a.re, a.im]).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for StateVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = StateJson::deserialize(deserializer)?;
        let amps = raw
            .amps
            .iter()
            .map(|[re, im]| Complex64::new(*re, *im))
            .collect();
        StateVector::from_amps(raw.n, amps).map_err(serde::de::Error::custom)
    }
}
