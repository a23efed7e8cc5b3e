//! Pauli tensor words and finite linear combinations of them.
//!
//! A word acting on `n` qubits is stored as a packed key with two bits per
//! qubit, qubit 1 in the most significant position, so numeric key order is
//! the lexicographic order of the letter sequence. Coefficients are
//! double-precision complex numbers; every coefficient produced by the
//! operators studied here is a small integer times a power of `i`, so the
//! arithmetic is exact in practice.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::state::StateVector;
use crate::{Error, Result, TOL_ALG};

/// Largest qubit count representable by a packed key.
pub const MAX_QUBITS: usize = 16;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I_UNIT: Complex64 = Complex64::new(0.0, 1.0);

/// Single-qubit operator: the identity or one of the three Pauli matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Letter {
    I = 0,
    X1 = 1,
    X2 = 2,
    X3 = 3,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::I, Letter::X1, Letter::X2, Letter::X3];

    pub fn from_index(j: u8) -> Option<Letter> {
        Self::ALL.get(j as usize).copied()
    }

    pub fn index(self) -> u8 {
        self as u8
    }

    /// Product `self * rhs` as a phase and a letter.
    pub fn product(self, rhs: Letter) -> (Complex64, Letter) {
        use Letter::*;
        match (self, rhs) {
            (I, p) | (p, I) => (ONE, p),
            (a, b) if a == b => (ONE, I),
            (X1, X2) => (I_UNIT, X3),
            (X2, X3) => (I_UNIT, X1),
            (X3, X1) => (I_UNIT, X2),
            (X2, X1) => (-I_UNIT, X3),
            (X3, X2) => (-I_UNIT, X1),
            (X1, X3) => (-I_UNIT, X2),
            _ => unreachable!(),
        }
    }

    /// Action on a single-qubit basis vector. Bit 0 is `e1`, bit 1 is `e2`.
    pub fn act(self, bit: usize) -> (Complex64, usize) {
        match (self, bit) {
            (Letter::I, b) => (ONE, b),
            (Letter::X1, b) => (ONE, b ^ 1),
            (Letter::X2, 0) => (I_UNIT, 1),
            (Letter::X2, _) => (-I_UNIT, 0),
            (Letter::X3, 0) => (ONE, 0),
            (Letter::X3, _) => (-ONE, 1),
        }
    }
}

fn letter_at(key: u32, n: usize, qubit: usize) -> Letter {
    let shift = 2 * (n - 1 - qubit);
    Letter::from_index(((key >> shift) & 3) as u8).unwrap()
}

fn pack(letters: &[Letter]) -> u32 {
    letters
        .iter()
        .fold(0u32, |acc, l| (acc << 2) | u32::from(l.index()))
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::UnsupportedQubits(n));
    }
    Ok(())
}

/// Product of two packed words: phase and resulting key.
fn key_mul(n: usize, a: u32, b: u32) -> (Complex64, u32) {
    let mut phase = ONE;
    let mut key = 0u32;
    for q in 0..n {
        let (p, l) = letter_at(a, n, q).product(letter_at(b, n, q));
        phase *= p;
        key = (key << 2) | u32::from(l.index());
    }
    (phase, key)
}

/// Action of a packed word on a packed basis index.
fn key_apply(n: usize, key: u32, index: usize) -> (Complex64, usize) {
    let mut phase = ONE;
    let mut out = 0usize;
    for q in 0..n {
        let bit = (index >> (n - 1 - q)) & 1;
        let (p, b) = letter_at(key, n, q).act(bit);
        phase *= p;
        out = (out << 1) | b;
    }
    (phase, out)
}

/// A tensor product of single-qubit letters with a complex prefactor.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliWord {
    n: usize,
    key: u32,
    coeff: Complex64,
}

impl PauliWord {
    pub fn new(letters: &[Letter], coeff: Complex64) -> Result<Self> {
        check_n(letters.len())?;
        Ok(Self {
            n: letters.len(),
            key: pack(letters),
            coeff,
        })
    }

    /// Builds a unit-coefficient word from letter indices `0..=3` (0 = I).
    pub fn from_indices(indices: &[u8]) -> Result<Self> {
        let letters = indices
            .iter()
            .map(|&j| {
                Letter::from_index(j).ok_or_else(|| Error::Parse(format!("letter index {j}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&letters, ONE)
    }

    pub(crate) fn from_key(n: usize, key: u32, coeff: Complex64) -> Self {
        Self { n, key, coeff }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn key(&self) -> u32 {
        self.key
    }

    pub fn coeff(&self) -> Complex64 {
        self.coeff
    }

    pub fn letter(&self, qubit: usize) -> Letter {
        letter_at(self.key, self.n, qubit)
    }

    pub fn letters(&self) -> Vec<Letter> {
        (0..self.n).map(|q| self.letter(q)).collect()
    }

    /// Applies the word to the basis vector with the given packed index,
    /// returning `(phase, index')` with `w e_index = phase e_index'`.
    pub fn apply_basis(&self, index: usize) -> Result<(Complex64, usize)> {
        if index >> self.n != 0 {
            return Err(Error::IndexOutOfRange { index, n: self.n });
        }
        let (phase, out) = key_apply(self.n, self.key, index);
        Ok((phase * self.coeff, out))
    }
}

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff != ONE {
            write!(f, "{}*", format_coeff(self.coeff))?;
        }
        write_letters(f, self.n, self.key)
    }
}

fn write_letters(f: &mut fmt::Formatter<'_>, n: usize, key: u32) -> fmt::Result {
    f.write_str("s(")?;
    for q in 0..n {
        if q > 0 {
            f.write_str(",")?;
        }
        write!(f, "{}", letter_at(key, n, q).index())?;
    }
    f.write_str(")")
}

/// `w e_index = phase e_index'`.
pub fn word_apply(w: &PauliWord, index: usize) -> Result<(Complex64, usize)> {
    w.apply_basis(index)
}

/// A finite linear combination of Pauli words on a fixed number of qubits.
///
/// Terms are kept merged by letter pattern; coefficients with modulus below
/// [`TOL_ALG`] are dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSum {
    n: usize,
    terms: BTreeMap<u32, Complex64>,
}

impl PauliSum {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_word(&PauliWord::from_key(n, 0, ONE))
    }

    pub fn from_word(w: &PauliWord) -> Self {
        let mut s = Self::zero(w.n);
        s.push(w.key, w.coeff);
        s.normalize();
        s
    }

    /// Unit-coefficient word from letter indices, e.g. `sigma(&[1, 2, 2])`.
    ///
    /// Panics on an invalid letter index; intended for literal operators.
    pub fn sigma(indices: &[u8]) -> Self {
        Self::from_word(&PauliWord::from_indices(indices).expect("valid Pauli letters"))
    }

    /// Sum of unit-coefficient words.
    pub fn sum_of(words: &[&[u8]]) -> Self {
        let n = words.first().map_or(0, |w| w.len());
        words
            .iter()
            .fold(Self::zero(n), |acc, w| &acc + &Self::sigma(w))
    }

    pub fn from_words<'a>(
        n: usize,
        words: impl IntoIterator<Item = &'a PauliWord>,
    ) -> Result<Self> {
        let mut s = Self::zero(n);
        for w in words {
            if w.n != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: w.n,
                });
            }
            s.push(w.key, w.coeff);
        }
        s.normalize();
        Ok(s)
    }

    fn push(&mut self, key: u32, c: Complex64) {
        *self.terms.entry(key).or_insert(Complex64::new(0.0, 0.0)) += c;
    }

    fn normalize(&mut self) {
        self.terms.retain(|_, c| c.norm() >= TOL_ALG);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the word with the given letter indices (zero if absent).
    pub fn coeff(&self, indices: &[u8]) -> Complex64 {
        PauliWord::from_indices(indices)
            .ok()
            .filter(|w| w.n == self.n)
            .and_then(|w| self.terms.get(&w.key).copied())
            .unwrap_or_default()
    }

    pub(crate) fn coeff_by_key(&self, key: u32) -> Complex64 {
        self.terms.get(&key).copied().unwrap_or_default()
    }

    /// Terms as words, in lexicographic letter order.
    pub fn words(&self) -> impl Iterator<Item = PauliWord> + '_ {
        self.terms
            .iter()
            .map(move |(&key, &coeff)| PauliWord::from_key(self.n, key, coeff))
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

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (&k, &c) in &other.terms {
            out.push(k, c);
        }
        out.normalize();
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scale(-ONE))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(self.n);
        for (&ka, &ca) in &self.terms {
            for (&kb, &cb) in &other.terms {
                let (phase, key) = key_mul(self.n, ka, kb);
                out.push(key, ca * cb * phase);
            }
        }
        out.normalize();
        Ok(out)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = Self {
            n: self.n,
            terms: self.terms.iter().map(|(&k, &v)| (k, v * c)).collect(),
        };
        out.normalize();
        out
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(Complex64::new(c, 0.0))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(self.n), |acc, _| &acc * self)
    }

    pub fn commutes(&self, other: &Self) -> Result<bool> {
        let ab = self.checked_mul(other)?;
        let ba = other.checked_mul(self)?;
        Ok(ab.checked_sub(&ba)?.is_empty())
    }

    /// Linear action on a state; no normalization is applied.
    pub fn apply(&self, v: &StateVector) -> Result<StateVector> {
        if v.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: v.n(),
            });
        }
        let amps = v.amps();
        let mut out = vec![Complex64::new(0.0, 0.0); amps.len()];
        for (&key, &c) in &self.terms {
            for (idx, &a) in amps.iter().enumerate() {
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let (phase, j) = key_apply(self.n, key, idx);
                out[j] += c * phase * a;
            }
        }
        StateVector::from_amps(self.n, out)
    }

    /// Largest coefficient modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same(other)?;
        let keys = self.terms.keys().chain(other.terms.keys());
        Ok(keys
            .map(|k| (self.coeff_by_key(*k) - other.coeff_by_key(*k)).norm())
            .fold(0.0, f64::max))
    }

    /// Equal term by term within `tol`; `false` on dimension mismatch.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.max_abs_diff(other).is_ok_and(|d| d <= tol)
    }

    /// True when every word uses only the given letters.
    pub fn uses_only(&self, allowed: &[Letter]) -> bool {
        self.words()
            .all(|w| w.letters().iter().all(|l| allowed.contains(l)))
    }

    /// Parses a sum whose qubit count is known, accepting `0` for the empty sum.
    pub fn parse_with_n(text: &str, n: usize) -> Result<Self> {
        if text.trim() == "0" {
            return Ok(Self::zero(n));
        }
        let s: Self = text.parse()?;
        if s.n != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: s.n,
            });
        }
        Ok(s)
    }
}

pub fn sum_add(a: &PauliSum, b: &PauliSum) -> Result<PauliSum> {
    a.checked_add(b)
}

pub fn scalar_mul(c: Complex64, a: &PauliSum) -> PauliSum {
    a.scale(c)
}

pub fn sum_multiply(a: &PauliSum, b: &PauliSum) -> Result<PauliSum> {
    a.checked_mul(b)
}

pub fn commutes(a: &PauliSum, b: &PauliSum) -> Result<bool> {
    a.commutes(b)
}

pub fn apply(a: &PauliSum, v: &StateVector) -> Result<StateVector> {
    a.apply(v)
}

impl std::ops::Add for &PauliSum {
    type Output = PauliSum;
    fn add(self, rhs: &PauliSum) -> PauliSum {
        self.checked_add(rhs).expect("qubit counts must match")
    }
}

impl std::ops::Sub for &PauliSum {
    type Output = PauliSum;
    fn sub(self, rhs: &PauliSum) -> PauliSum {
        self.checked_sub(rhs).expect("qubit counts must match")
    }
}

impl std::ops::Mul for &PauliSum {
    type Output = PauliSum;
    fn mul(self, rhs: &PauliSum) -> PauliSum {
        self.checked_mul(rhs).expect("qubit counts must match")
    }
}

impl std::ops::Neg for &PauliSum {
    type Output = PauliSum;
    fn neg(self) -> PauliSum {
        self.scale(-ONE)
    }
}

/// Renders a coefficient: plain real number, or `(re+imi)` when complex.
pub fn format_coeff(c: Complex64) -> String {
    if c.im == 0.0 {
        format!("{}", c.re)
    } else {
        let sign = if c.im < 0.0 { '-' } else { '+' };
        format!("({}{}{}i)", c.re, sign, c.im.abs())
    }
}

impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (&key, &c)) in self.terms.iter().enumerate() {
            let (neg, mag) = if c.im == 0.0 && c.re < 0.0 {
                (true, Complex64::new(-c.re, 0.0))
            } else {
                (false, c)
            };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if mag != ONE {
                write!(f, "{}*", format_coeff(mag))?;
            }
            write_letters(f, self.n, key)?;
        }
        Ok(())
    }
}

/// Parses `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i`, optionally wrapped in parentheses.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let err = || Error::Parse(format!("invalid complex number {text:?}"));
    let mut s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.starts_with('(') && s.ends_with(')') {
        s = s[1..s.len() - 1].to_string();
    }
    if s.is_empty() {
        return Err(err());
    }
    let real = |t: &str| t.parse::<f64>().map_err(|_| err());
    let imag = |t: &str| match t {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => real(t),
    };
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex64::new(real(&s)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&p| matches!(bytes[p], b'+' | b'-') && !matches!(bytes[p - 1], b'e' | b'E'));
    match split {
        Some(p) => Ok(Complex64::new(real(&body[..p])?, imag(&body[p..])?)),
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

fn parse_letters(text: &str) -> Result<Vec<u8>> {
    text.split(',')
        .map(|t| {
            let t = t.trim();
            match t.parse::<u8>() {
                Ok(j) if j <= 3 => Ok(j),
                _ => Err(Error::Parse(format!("invalid letter {t:?}"))),
            }
        })
        .collect()
}

impl FromStr for PauliSum {
    type Err = Error;

    /// Grammar: terms `[coeff*]s(j1,...,jn)` joined by `+` or `-`.
    fn from_str(text: &str) -> Result<Self> {
        let s = text.trim();
        let mut pos = 0usize;
        let mut n: Option<usize> = None;
        let mut words = Vec::new();
        while pos < s.len() {
            let rest = &s[pos..];
            let trimmed = rest.trim_start();
            pos += rest.len() - trimmed.len();
            if pos >= s.len() {
                break;
            }
            let mut negate = false;
            if !words.is_empty() {
                match s.as_bytes()[pos] {
                    b'+' => {}
                    b'-' => negate = true,
                    _ => return Err(Error::Parse(format!("expected '+' or '-' at {pos}"))),
                }
                pos += 1;
            }
            let open = s[pos..]
                .find("s(")
                .map(|p| p + pos)
                .ok_or_else(|| Error::Parse("expected 's('".into()))?;
            let prefix = s[pos..open].trim();
            let mut coeff = match prefix {
                "" | "+" => ONE,
                "-" => -ONE,
                p => {
                    let c = p
                        .strip_suffix('*')
                        .ok_or_else(|| Error::Parse(format!("expected '*' after {p:?}")))?;
                    parse_complex(c)?
                }
            };
            if negate {
                coeff = -coeff;
            }
            let close = s[open..]
                .find(')')
                .map(|p| p + open)
                .ok_or_else(|| Error::Parse("unclosed 's('".into()))?;
            let letters = parse_letters(&s[open + 2..close])?;
            match n {
                None => n = Some(letters.len()),
                Some(m) if m != letters.len() => {
                    return Err(Error::DimensionMismatch {
                        expected: m,
                        actual: letters.len(),
                    })
                }
                _ => {}
            }
            let mut w = PauliWord::from_indices(&letters)?;
            w.coeff = coeff;
            words.push(w);
            pos = close + 1;
        }
        let n = n.ok_or_else(|| Error::Parse("empty expression".into()))?;
        Self::from_words(n, &words)
    }
}
