//! Local instructional sets: every particle `a` carries a pair `(ξ_a, η_a)` of
//! ±1 values that stand in for σ1 and σ2 on that qubit. An operator set with
//! known eigenvalues becomes a system of integer polynomial equations in
//! these values, solved here by exhaustive enumeration.
//!
//! Assignments are enumerated as `2n`-bit integers: bit `a` holds `ξ_{a+1}`,
//! bit `n + a` holds `η_{a+1}`, and a clear bit means `+1`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eigenops::{tau3, CatalogState};
use crate::pauli::{Letter, PauliSum};
use crate::{Error, Result, TOL_ALG};

/// Largest qubit count accepted by [`solve`].
pub const MAX_ENUM_QUBITS: usize = 16;

const CHUNK: u64 = 1 << 12;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Assignment {
    pub xi: Vec<i8>,
    pub eta: Vec<i8>,
}

impl Assignment {
    pub fn new(xi: Vec<i8>, eta: Vec<i8>) -> Result<Self> {
        if xi.len() != eta.len() {
            return Err(Error::DimensionMismatch {
                expected: xi.len(),
                actual: eta.len(),
            });
        }
        if xi.iter().chain(&eta).any(|v| *v != 1 && *v != -1) {
            return Err(Error::Parse("instructional values must be ±1".into()));
        }
        Ok(Self { xi, eta })
    }

    pub fn from_index(n: usize, index: u64) -> Self {
        let val = |bit: usize| if (index >> bit) & 1 == 1 { -1 } else { 1 };
        Self {
            xi: (0..n).map(val).collect(),
            eta: (0..n).map(|a| val(n + a)).collect(),
        }
    }

    pub fn index(&self) -> u64 {
        let n = self.xi.len();
        let mut idx = 0u64;
        for a in 0..n {
            if self.xi[a] == -1 {
                idx |= 1 << a;
            }
            if self.eta[a] == -1 {
                idx |= 1 << (n + a);
            }
        }
        idx
    }

    pub fn n(&self) -> usize {
        self.xi.len()
    }
}

/// An expression compiled to `Σ coeff · (−1)^{popcount(index & mask)}`.
#[derive(Clone, Debug)]
struct Compiled {
    terms: Vec<(u64, i64)>,
}

impl Compiled {
    fn new(expr: &PauliSum) -> Result<Self> {
        let n = expr.n();
        let mut terms = Vec::with_capacity(expr.len());
        for w in expr.words() {
            let c = w.coeff();
            let r = c.re.round();
            if c.im.abs() > TOL_ALG || (c.re - r).abs() > TOL_ALG {
                return Err(Error::UnsupportedExpression(format!(
                    "non-integer coefficient in {w}"
                )));
            }
            let mut mask = 0u64;
            for (a, l) in w.letters().into_iter().enumerate() {
                match l {
                    Letter::X1 => mask |= 1 << a,
                    Letter::X2 => mask |= 1 << (n + a),
                    Letter::I | Letter::X3 => {
                        return Err(Error::UnsupportedExpression(format!(
                            "{w} contains a letter other than s1 or s2"
                        )))
                    }
                }
            }
            terms.push((mask, r as i64));
        }
        Ok(Self { terms })
    }

    fn eval(&self, index: u64) -> i64 {
        self.terms
            .iter()
            .map(|&(mask, c)| {
                if (index & mask).count_ones() % 2 == 1 {
                    -c
                } else {
                    c
                }
            })
            .sum()
    }

    /// Single monomial with unit coefficient: `(mask, coeff)`.
    fn monomial(&self) -> Option<(u64, i64)> {
        match self.terms.as_slice() {
            [(mask, c)] if c.abs() == 1 => Some((*mask, *c)),
            _ => None,
        }
    }
}

/// Value of `expr` with σ1, σ2 on qubit `a` replaced by `ξ_a`, `η_a`.
pub fn evaluate(expr: &PauliSum, a: &Assignment) -> Result<i64> {
    if expr.n() != a.n() {
        return Err(Error::DimensionMismatch {
            expected: expr.n(),
            actual: a.n(),
        });
    }
    Ok(Compiled::new(expr)?.eval(a.index()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Equation {
    pub label: String,
    pub expr: PauliSum,
    pub target: i64,
}

impl Equation {
    pub fn new(expr: PauliSum, target: i64) -> Self {
        Self {
            label: expr.to_string(),
            expr,
            target,
        }
    }

    pub fn labelled(label: impl Into<String>, expr: PauliSum, target: i64) -> Self {
        Self {
            label: label.into(),
            expr,
            target,
        }
    }
}

/// A list of equations `N = γ` over a fixed number of qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct InstructionalSystem {
    n: usize,
    equations: Vec<Equation>,
}

#[derive(Deserialize)]
struct EquationJson {
    expr: String,
    target: i64,
}

impl InstructionalSystem {
    pub fn new(n: usize, equations: Vec<Equation>) -> Result<Self> {
        for eq in &equations {
            if eq.expr.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: eq.expr.n(),
                });
            }
            Compiled::new(&eq.expr)?;
        }
        Ok(Self { n, equations })
    }

    /// Parses `[{"expr": "<pauli sum>", "target": <int>}, ...]`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: Vec<EquationJson> =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let equations = raw
            .into_iter()
            .map(|e| Ok(Equation::new(e.expr.parse()?, e.target)))
            .collect::<Result<Vec<_>>>()?;
        let n = equations
            .first()
            .map(|e| e.expr.n())
            .ok_or_else(|| Error::Parse("empty system".into()))?;
        Self::new(n, equations)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    fn compiled(&self) -> Vec<(Compiled, i64)> {
        self.equations
            .iter()
            .map(|e| (Compiled::new(&e.expr).expect("validated"), e.target))
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub n: usize,
    pub count: usize,
    pub solutions: Vec<Assignment>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_values: Option<BTreeMap<String, Vec<i64>>>,
}

fn enumerate(n: usize, accept: impl Fn(u64) -> bool + Sync) -> Result<Vec<u64>> {
    if n > MAX_ENUM_QUBITS {
        return Err(Error::TooManyQubits {
            n,
            max: MAX_ENUM_QUBITS,
        });
    }
    let total = 1u64 << (2 * n);
    let chunks = total.div_ceil(CHUNK);
    let found: Vec<Vec<u64>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            (c * CHUNK..((c + 1) * CHUNK).min(total))
                .filter(|&i| accept(i))
                .collect()
        })
        .collect();
    Ok(found.concat())
}

/// All assignments satisfying every equation, in enumeration order.
pub fn solve(sys: &InstructionalSystem) -> Result<SolveReport> {
    solve_with_witnesses(sys, &[])
}

/// Like [`solve`], additionally evaluating each witness expression on every solution.
pub fn solve_with_witnesses(
    sys: &InstructionalSystem,
    witnesses: &[(String, PauliSum)],
) -> Result<SolveReport> {
    let compiled = sys.compiled();
    let indices = enumerate(sys.n, |i| compiled.iter().all(|(c, t)| c.eval(i) == *t))?;
    report(sys.n, &indices, witnesses)
}

fn report(n: usize, indices: &[u64], witnesses: &[(String, PauliSum)]) -> Result<SolveReport> {
    let witness_values = if witnesses.is_empty() {
        None
    } else {
        let mut map = BTreeMap::new();
        for (name, expr) in witnesses {
            let c = Compiled::new(expr)?;
            map.insert(name.clone(), indices.iter().map(|&i| c.eval(i)).collect());
        }
        Some(map)
    };
    Ok(SolveReport {
        n,
        count: indices.len(),
        solutions: indices
            .iter()
            .map(|&i| Assignment::from_index(n, i))
            .collect(),
        witness_values,
    })
}

/// Indices of equations whose product forces an even-power monomial to equal
/// −1, when every equation is a single ±1 monomial with a ±1 target.
///
/// Exponent vectors are reduced over GF(2) while tracking the sign and the
/// combination of original equations; the system is inconsistent exactly
/// when some combination has a zero exponent vector and sign −1.
pub fn parity_certificate(sys: &InstructionalSystem) -> Option<Vec<usize>> {
    let rows: Vec<(u64, bool)> = sys
        .compiled()
        .iter()
        .map(|(c, t)| {
            let (mask, coeff) = c.monomial()?;
            (t.abs() == 1).then_some((mask, coeff * t == -1))
        })
        .collect::<Option<_>>()?;
    let m = rows.len();
    let mut basis: Vec<(u64, bool, Vec<bool>)> = Vec::new();
    for (k, &(mask, sign)) in rows.iter().enumerate() {
        let mut combo = vec![false; m];
        combo[k] = true;
        let (mut mask, mut sign) = (mask, sign);
        for (bm, bs, bc) in &basis {
            if mask & (bm & bm.wrapping_neg()) != 0 {
                mask ^= bm;
                sign ^= bs;
                for (x, y) in combo.iter_mut().zip(bc) {
                    *x ^= y;
                }
            }
        }
        if mask == 0 {
            if sign {
                return Some((0..m).filter(|&i| combo[i]).collect());
            }
        } else {
            basis.push((mask, sign, combo));
            // Ascending pivots keep the single-pass reduction above complete.
            basis.sort_by_key(|(bm, _, _)| bm.trailing_zeros());
        }
    }
    None
}

/// Integer roots of `f3(μ) = (−μ³ + 7μ)/6 = 1` in the attainable range of `μ3`.
pub fn f3_unit_roots() -> Vec<i64> {
    (-3..=3).filter(|m| -m * m * m + 7 * m == 6).collect()
}

/// Built-in experiment selections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Device {
    /// All four GHZ-3 operators.
    U3,
    /// The three mixed GHZ-3 operators only.
    U3Subsystem,
    /// One of the eight four-operator GHZ-4 selections, `1..=8`.
    U4(usize),
    /// `σ_{1,1,1}` and `τ3`.
    TildeV31,
    /// `σ_{1,1,1} = 1` together with `f3(μ3) = 1`.
    TildeV31Relaxed,
    /// `μ3 = target` on its own.
    Mu3(i64),
    /// All five operators of the `ṽ_{4,1}` set.
    TildeV41,
    /// `σ_{1,1,1,1}`, `σ_{2,2,2,2}` and one `τ_{4,i,j}`.
    TildeV42(usize, usize),
    /// `σ_{1,1,1,1}`, `σ_{2,2,2,2}` and several `τ_{4,i,j}`.
    TildeV42Multi(Vec<(usize, usize)>),
}

fn parse_ij(s: &str) -> Result<(usize, usize)> {
    let b = s.as_bytes();
    match b {
        [i @ b'1'..=b'4', j @ b'1'..=b'2'] => Ok(((i - b'0') as usize, (j - b'0') as usize)),
        _ => Err(Error::UnknownId(s.to_string())),
    }
}

impl Device {
    /// Identifiers: `u3`, `u3-sub`, `u4-1`..`u4-8`, `tv31`, `tv31-relaxed`,
    /// `mu3=<r>`, `tv41`, `tv42-<i><j>`, `tv42-multi:<ij>,<ij>,...`.
    pub fn from_id(id: &str) -> Result<Self> {
        let unknown = || Error::UnknownId(id.to_string());
        Ok(match id {
            "u3" => Self::U3,
            "u3-sub" => Self::U3Subsystem,
            "tv31" | "v31~" => Self::TildeV31,
            "tv31-relaxed" => Self::TildeV31Relaxed,
            "tv41" | "v41~" => Self::TildeV41,
            _ => {
                if let Some(k) = id.strip_prefix("u4-") {
                    match k.parse::<usize>() {
                        Ok(k @ 1..=8) => Self::U4(k),
                        _ => return Err(unknown()),
                    }
                } else if let Some(r) = id.strip_prefix("mu3=") {
                    Self::Mu3(r.parse().map_err(|_| unknown())?)
                } else if let Some(list) = id.strip_prefix("tv42-multi:") {
                    let pairs = list.split(',').map(parse_ij).collect::<Result<Vec<_>>>()?;
                    if pairs.is_empty() {
                        return Err(unknown());
                    }
                    Self::TildeV42Multi(pairs)
                } else if let Some(ij) = id.strip_prefix("tv42-") {
                    let (i, j) = parse_ij(ij)?;
                    Self::TildeV42(i, j)
                } else {
                    return Err(unknown());
                }
            }
        })
    }

    pub fn id(&self) -> String {
        match self {
            Self::U3 => "u3".into(),
            Self::U3Subsystem => "u3-sub".into(),
            Self::U4(k) => format!("u4-{k}"),
            Self::TildeV31 => "tv31".into(),
            Self::TildeV31Relaxed => "tv31-relaxed".into(),
            Self::Mu3(r) => format!("mu3={r}"),
            Self::TildeV41 => "tv41".into(),
            Self::TildeV42(i, j) => format!("tv42-{i}{j}"),
            Self::TildeV42Multi(v) => format!(
                "tv42-multi:{}",
                v.iter()
                    .map(|(i, j)| format!("{i}{j}"))
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        }
    }

    /// The eight GHZ-4 selections.
    pub fn u4_all() -> Vec<Self> {
        (1..=8).map(Self::U4).collect()
    }

    /// The eight single-τ selections for `ṽ_{4,2}`.
    pub fn tv42_all() -> Vec<Self> {
        (1..=4)
            .flat_map(|i| (1..=2).map(move |j| Self::TildeV42(i, j)))
            .collect()
    }

    /// The equations for this selection, with targets taken from the
    /// catalogued eigenvalues.
    pub fn system(&self) -> Result<InstructionalSystem> {
        let pick = |state: CatalogState, idx: &[usize]| {
            let row = state.row();
            let eqs = idx
                .iter()
                .map(|&k| {
                    let (label, op, g) = row[k].clone();
                    Equation::labelled(label, op, g as i64)
                })
                .collect();
            InstructionalSystem::new(state.n(), eqs)
        };
        // Operator positions in the GHZ-4 row: 0 = s(1,1,1,1), 1..=6 the mixed
        // words in lexicographic order, 7 = s(2,2,2,2).
        const U4_SELECTIONS: [[usize; 4]; 8] = [
            [0, 1, 2, 3],
            [7, 4, 5, 6],
            [0, 1, 4, 5],
            [7, 2, 3, 6],
            [0, 2, 4, 6],
            [7, 1, 3, 5],
            [0, 3, 5, 6],
            [7, 1, 2, 4],
        ];
        let tv42_index = |i: usize, j: usize| -> Result<usize> {
            if (1..=4).contains(&i) && (1..=2).contains(&j) {
                Ok(1 + (i - 1) * 2 + (j - 1))
            } else {
                Err(Error::UnknownId(format!("tv42-{i}{j}")))
            }
        };
        match self {
            Self::U3 => pick(CatalogState::U3, &[0, 1, 2, 3]),
            Self::U3Subsystem => pick(CatalogState::U3, &[1, 2, 3]),
            Self::U4(k) => {
                let sel = U4_SELECTIONS
                    .get(k.wrapping_sub(1))
                    .ok_or_else(|| Error::UnknownId(self.id()))?;
                pick(CatalogState::U4, sel)
            }
            Self::TildeV31 => pick(CatalogState::TildeV31, &[0, 1]),
            Self::TildeV31Relaxed => pick(CatalogState::TildeV31, &[0]),
            Self::Mu3(r) => {
                InstructionalSystem::new(3, vec![Equation::labelled("tau3", tau3(), *r)])
            }
            Self::TildeV41 => pick(CatalogState::TildeV41, &[0, 1, 2, 3, 4]),
            Self::TildeV42(i, j) => pick(CatalogState::TildeV42, &[0, tv42_index(*i, *j)?, 9]),
            Self::TildeV42Multi(pairs) => {
                let mut idx = vec![0];
                for &(i, j) in pairs {
                    idx.push(tv42_index(i, j)?);
                }
                idx.push(9);
                pick(CatalogState::TildeV42, &idx)
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub device: String,
    pub explainable: bool,
    pub report: SolveReport,
    pub certificate: Option<Vec<usize>>,
}

/// Solves the built-in system for `device`; explainable iff some assignment
/// reproduces every eigenvalue.
pub fn device_verdict(device: &Device) -> Result<Verdict> {
    let sys = device.system()?;
    let s111 = PauliSum::sigma(&[1, 1, 1]);
    let report = match device {
        Device::TildeV31Relaxed => {
            // f3 applied to the number μ3, not the operator identity f3(τ3) = σ111.
            let mu3 = Compiled::new(&tau3())?;
            let roots = f3_unit_roots();
            let compiled = sys.compiled();
            let idx = enumerate(3, |i| {
                compiled.iter().all(|(c, t)| c.eval(i) == *t) && roots.contains(&mu3.eval(i))
            })?;
            report(3, &idx, &[("mu3".into(), tau3())])?
        }
        Device::Mu3(_) | Device::TildeV31 => {
            solve_with_witnesses(&sys, &[(s111.to_string(), s111)])?
        }
        _ => solve(&sys)?,
    };
    let certificate = parity_certificate(&sys);
    Ok(Verdict {
        device: device.id(),
        explainable: report.count > 0,
        report,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigenops::tau4_i;

    fn assignment(xi: &[i8], eta: &[i8]) -> Assignment {
        Assignment::new(xi.to_vec(), eta.to_vec()).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let a = assignment(&[1, 1, -1], &[1, 1, 1]);
        assert_eq!(evaluate(&PauliSum::sigma(&[1, 1, 1]), &a).unwrap(), -1);
        let ones = assignment(&[1, 1, 1], &[1, 1, 1]);
        assert_eq!(evaluate(&tau3(), &ones).unwrap(), 3);
        let ones4 = assignment(&[1; 4], &[1; 4]);
        assert_eq!(evaluate(&tau4_i(1), &ones4).unwrap(), 2);
    }

    #[test]
    fn evaluate_rejects_other_letters() {
        let a = assignment(&[1, 1, 1], &[1, 1, 1]);
        for bad in ["s(0,1,1)", "s(3,1,1)", "0.5*s(1,1,1)", "1i*s(1,1,1)"] {
            let e: PauliSum = bad.parse().unwrap();
            assert!(
                matches!(evaluate(&e, &a), Err(Error::UnsupportedExpression(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn index_round_trip() {
        for i in 0..64 {
            assert_eq!(Assignment::from_index(3, i).index(), i);
        }
        let a = Assignment::from_index(3, 0b000_001);
        assert_eq!(a.xi, vec![-1, 1, 1]);
        assert_eq!(a.eta, vec![1, 1, 1]);
        assert!(Assignment::new(vec![1, 0], vec![1, 1]).is_err());
    }

    #[test]
    fn u3_counts_and_certificate() {
        let full = Device::U3.system().unwrap();
        assert_eq!(solve(&full).unwrap().count, 0);
        assert_eq!(parity_certificate(&full), Some(vec![0, 1, 2, 3]));
        let sub = Device::U3Subsystem.system().unwrap();
        assert_eq!(solve(&sub).unwrap().count, 8);
        assert_eq!(parity_certificate(&sub), None);
    }

    #[test]
    fn sum_form_has_no_certificate() {
        let sys = Device::TildeV31.system().unwrap();
        assert_eq!(parity_certificate(&sys), None);
    }

    #[test]
    fn too_many_qubits() {
        let sys = InstructionalSystem::new(17, vec![]).unwrap();
        assert!(matches!(
            solve(&sys),
            Err(Error::TooManyQubits { n: 17, .. })
        ));
    }

    #[test]
    fn device_ids_round_trip() {
        let mut all = vec![
            Device::U3,
            Device::U3Subsystem,
            Device::TildeV31,
            Device::TildeV31Relaxed,
            Device::Mu3(-3),
            Device::TildeV41,
            Device::TildeV42Multi(vec![(1, 1), (4, 2)]),
        ];
        all.extend(Device::u4_all());
        all.extend(Device::tv42_all());
        for d in all {
            assert_eq!(Device::from_id(&d.id()).unwrap(), d);
        }
        for bad in ["u4-9", "tv42-51", "tv42-13", "mu3=x", "nope", "tv42-multi:"] {
            assert!(Device::from_id(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn system_from_json() {
        let sys = InstructionalSystem::from_json(
            r#"[{"expr": "s(1,1,1)", "target": 1}, {"expr": "s(1,2,2) + s(2,1,2) + s(2,2,1)", "target": 1}]"#,
        )
        .unwrap();
        assert_eq!(sys.n(), 3);
        assert_eq!(solve(&sys).unwrap().count, 0);
        assert!(InstructionalSystem::from_json("[]").is_err());
        assert!(InstructionalSystem::from_json(r#"[{"expr": "s(3,1)", "target": 1}]"#).is_err());
    }

    #[test]
    fn f3_roots() {
        assert_eq!(f3_unit_roots(), vec![-3, 1, 2]);
    }
}
