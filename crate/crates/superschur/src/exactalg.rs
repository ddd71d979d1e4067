//! Exact scalars and sparse linear algebra.
//!
//! Every structural map in this crate has integer coefficients, so maps are
//! assembled as [`IntVec`] combinations and only reduced into a [`Field`] when a
//! rank, kernel or membership question is asked. Rational rank uses
//! fraction-free (Bareiss) elimination; prime fields use word-sized residues.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised by field parsing and elimination routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("inconsistent scalar field")]
    InconsistentField,
    #[error("entry column is not a declared column of the matrix")]
    UnknownColumn,
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("modulus {0} is not an odd prime below 2^31")]
    BadModulus(u64),
    #[error("cannot parse field `{0}` (expected `q` or `p=K`)")]
    BadFieldSpec(String),
}

/// The ground field of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// The prime field of order `p`; `p` must be an odd prime below 2^31.
    pub fn prime(p: u64) -> Result<Field, LinAlgError> {
        if p == 2 {
            return Err(LinAlgError::CharacteristicTwo);
        }
        if !(3..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(LinAlgError::BadModulus(p));
        }
        Ok(Field::Prime(p))
    }

    /// Parses `q` (the rationals) or `p=K`.
    pub fn parse(spec: &str) -> Result<Field, LinAlgError> {
        let s = spec.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(Field::Rational);
        }
        if let Some(rest) = s.strip_prefix("p=") {
            let p: u64 = rest
                .trim()
                .parse()
                .map_err(|_| LinAlgError::BadFieldSpec(spec.to_string()))?;
            return Field::prime(p);
        }
        Err(LinAlgError::BadFieldSpec(spec.to_string()))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "q"),
            Field::Prime(p) => write!(f, "p={p}"),
        }
    }
}

impl From<Field> for String {
    fn from(f: Field) -> String {
        f.to_string()
    }
}

impl TryFrom<String> for Field {
    type Error = LinAlgError;

    fn try_from(s: String) -> Result<Field, LinAlgError> {
        Field::parse(&s)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= p {
        if p.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// An exact field element.
///
/// Rationals are kept in lowest terms with a positive denominator (this is
/// what `BigRational` maintains); residues lie in `0..p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { residue: u64, modulus: u64 },
}

impl Scalar {
    pub fn zero(field: Field) -> Scalar {
        Scalar::from_i64(field, 0)
    }

    pub fn one(field: Field) -> Scalar {
        Scalar::from_i64(field, 1)
    }

    pub fn from_i64(field: Field, n: i64) -> Scalar {
        match field {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Prime {
                residue: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(field: Field, n: &BigInt) -> Scalar {
        match field {
            Field::Rational => Scalar::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar::Prime {
                    residue: r.to_u64().expect("residue fits"),
                    modulus: p,
                }
            }
        }
    }

    /// A rational number `num/den`; fails over a prime field if `p | den`.
    pub fn from_ratio(field: Field, num: i64, den: i64) -> Option<Scalar> {
        if den == 0 {
            return None;
        }
        let n = Scalar::from_i64(field, num);
        let d = Scalar::from_i64(field, den);
        d.inv().map(|di| &n * &di)
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Prime { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Prime { residue, .. } => *residue == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Prime { residue, modulus } => Scalar::Prime {
                residue: pow_mod(*residue, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, LinAlgError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a + b)),
            (Scalar::Prime { residue: a, modulus: p }, Scalar::Prime { residue: b, modulus: q })
                if p == q =>
            {
                Ok(Scalar::Prime { residue: (a + b) % p, modulus: *p })
            }
            _ => Err(LinAlgError::InconsistentField),
        }
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, LinAlgError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (Scalar::Prime { residue: a, modulus: p }, Scalar::Prime { residue: b, modulus: q })
                if p == q =>
            {
                Ok(Scalar::Prime { residue: a * b % p, modulus: *p })
            }
            _ => Err(LinAlgError::InconsistentField),
        }
    }

    /// Integer value of a rational scalar with denominator one.
    pub fn to_integer(&self) -> Option<BigInt> {
        match self {
            Scalar::Rational(q) if q.is_integer() => Some(q.to_integer()),
            Scalar::Prime { residue, .. } => Some(BigInt::from(*residue)),
            _ => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Prime { residue, .. } => write!(f, "{residue}"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Prime { residue, modulus } => Scalar::Prime {
                residue: (modulus - residue) % modulus,
                modulus: *modulus,
            },
        }
    }
}

// The operator forms panic on mixed fields; callers validate fields first.
impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.try_add(rhs).expect("inconsistent scalar field")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.try_add(&-rhs).expect("inconsistent scalar field")
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.try_mul(rhs).expect("inconsistent scalar field")
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// A finite integer linear combination of labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVec<L: Ord> {
    terms: BTreeMap<L, i64>,
}

impl<L: Ord> Default for IntVec<L> {
    fn default() -> Self {
        IntVec { terms: BTreeMap::new() }
    }
}

impl<L: Ord + Clone> IntVec<L> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(label: L, coeff: i64) -> Self {
        let mut v = Self::new();
        v.add_term(label, coeff);
        v
    }

    pub fn add_term(&mut self, label: L, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let e = self.terms.entry(label);
        match e {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().checked_add(coeff).expect("integer coefficient overflow");
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &IntVec<L>, factor: i64) {
        if factor == 0 {
            return;
        }
        for (l, c) in &other.terms {
            let c = c.checked_mul(factor).expect("integer coefficient overflow");
            self.add_term(l.clone(), c);
        }
    }

    pub fn scaled(&self, factor: i64) -> IntVec<L> {
        let mut v = IntVec::new();
        v.add_scaled(self, factor);
        v
    }

    pub fn get(&self, label: &L) -> i64 {
        self.terms.get(label).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&L, &i64)> {
        self.terms.iter()
    }

    pub fn labels(&self) -> impl Iterator<Item = &L> {
        self.terms.keys()
    }

    /// Applies a linear map given on labels.
    pub fn map_linear<M: Ord + Clone>(&self, mut f: impl FnMut(&L) -> IntVec<M>) -> IntVec<M> {
        let mut out = IntVec::new();
        for (l, c) in &self.terms {
            out.add_scaled(&f(l), *c);
        }
        out
    }

    /// Reduces the coefficients into `field`.
    pub fn to_field(&self, field: Field) -> SparseVec<L> {
        let mut v = SparseVec::new();
        for (l, c) in &self.terms {
            v.insert(l.clone(), Scalar::from_i64(field, *c));
        }
        v
    }
}

impl<L: Ord + Clone> FromIterator<(L, i64)> for IntVec<L> {
    fn from_iter<I: IntoIterator<Item = (L, i64)>>(iter: I) -> Self {
        let mut v = IntVec::new();
        for (l, c) in iter {
            v.add_term(l, c);
        }
        v
    }
}

/// A sparse vector over a field, indexed by ordered labels; no stored zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseVec<L: Ord> {
    entries: BTreeMap<L, Scalar>,
}

impl<L: Ord> Default for SparseVec<L> {
    fn default() -> Self {
        SparseVec { entries: BTreeMap::new() }
    }
}

impl<L: Ord + Clone> SparseVec<L> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets an entry, removing it when the value is zero.
    pub fn insert(&mut self, label: L, value: Scalar) {
        if value.is_zero() {
            self.entries.remove(&label);
        } else {
            self.entries.insert(label, value);
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (L, Scalar)>) -> Self {
        let mut v = Self::new();
        for (l, s) in pairs {
            v.add_entry(l, &s);
        }
        v
    }

    pub fn add_entry(&mut self, label: L, value: &Scalar) {
        let cur = match self.entries.get(&label) {
            Some(c) => c + value,
            None => value.clone(),
        };
        self.insert(label, cur);
    }

    pub fn get(&self, label: &L) -> Option<&Scalar> {
        self.entries.get(label)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&L, &Scalar)> {
        self.entries.iter()
    }

    fn fields_consistent(&self, field: Field) -> bool {
        self.entries.values().all(|s| s.field() == field)
    }
}

/// A sparse matrix: a list of rows over a declared, ordered column set.
#[derive(Debug, Clone)]
pub struct SparseMat<L: Ord> {
    field: Field,
    columns: Vec<L>,
    rows: Vec<SparseVec<L>>,
}

impl<L: Ord + Clone> SparseMat<L> {
    /// Builds a matrix, checking that every entry lies in a declared column and
    /// in the declared field.
    pub fn new(
        field: Field,
        columns: impl IntoIterator<Item = L>,
        rows: Vec<SparseVec<L>>,
    ) -> Result<Self, LinAlgError> {
        let mut columns: Vec<L> = columns.into_iter().collect();
        columns.sort();
        columns.dedup();
        for r in &rows {
            if !r.fields_consistent(field) {
                return Err(LinAlgError::InconsistentField);
            }
            for l in r.entries.keys() {
                if columns.binary_search(l).is_err() {
                    return Err(LinAlgError::UnknownColumn);
                }
            }
        }
        Ok(SparseMat { field, columns, rows })
    }

    /// A matrix whose column set is exactly the labels that occur.
    pub fn from_rows(field: Field, rows: Vec<SparseVec<L>>) -> Result<Self, LinAlgError> {
        let cols: Vec<L> = rows.iter().flat_map(|r| r.entries.keys().cloned()).collect();
        SparseMat::new(field, cols, rows)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn columns(&self) -> &[L] {
        &self.columns
    }

    pub fn rows(&self) -> &[SparseVec<L>] {
        &self.rows
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.columns.len()
    }

    fn indexed(&self) -> Vec<Vec<(usize, Scalar)>> {
        self.rows
            .iter()
            .map(|r| {
                r.entries
                    .iter()
                    .map(|(l, s)| (self.columns.binary_search(l).expect("validated"), s.clone()))
                    .collect()
            })
            .collect()
    }
}

/// Rank of `m` over its field.
///
/// Pivoting is deterministic: the pivot column is the smallest column still
/// carrying a nonzero entry, the pivot row the first such row. Over the
/// rationals rows are cleared of denominators and eliminated fraction-free.
pub fn rank<L: Ord + Clone>(m: &SparseMat<L>) -> Result<usize, LinAlgError> {
    Ok(rank_indexed(m.field, &m.indexed()))
}

fn rank_indexed(field: Field, rows: &[Vec<(usize, Scalar)>]) -> usize {
    match field {
        Field::Prime(p) => {
            let rows: Vec<Vec<(usize, u64)>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|(c, s)| match s {
                            Scalar::Prime { residue, .. } => (*c, *residue),
                            Scalar::Rational(_) => unreachable!("validated field"),
                        })
                        .collect()
                })
                .collect();
            rank_mod_p(rows, p)
        }
        Field::Rational => {
            let rows: Vec<Vec<(usize, BigInt)>> = rows.iter().map(|r| clear_denominators(r)).collect();
            rank_integer_rows(rows)
        }
    }
}

fn clear_denominators(row: &[(usize, Scalar)]) -> Vec<(usize, BigInt)> {
    let mut l = BigInt::one();
    for (_, s) in row {
        if let Scalar::Rational(q) = s {
            l = l.lcm(q.denom());
        }
    }
    row.iter()
        .map(|(c, s)| match s {
            Scalar::Rational(q) => (*c, q.numer() * (&l / q.denom())),
            Scalar::Prime { .. } => unreachable!("validated field"),
        })
        .collect()
}

/// Rank of integer rows over the rationals (columns are indices).
pub fn rank_integer_rows(rows: Vec<Vec<(usize, BigInt)>>) -> usize {
    let small: Option<Vec<Vec<(usize, i128)>>> = rows
        .iter()
        .map(|r| r.iter().map(|(c, v)| v.to_i128().map(|x| (*c, x))).collect())
        .collect();
    if let Some(small) = small {
        if let Some(r) = bareiss::<i128>(normalize_rows(small)) {
            return r;
        }
    }
    bareiss::<BigInt>(normalize_rows(rows)).expect("big integers never overflow")
}

/// Rank over the rationals of rows with small integer entries.
pub fn rank_i64_rows(rows: &[Vec<(usize, i64)>]) -> usize {
    let small: Vec<Vec<(usize, i128)>> =
        rows.iter().map(|r| r.iter().map(|(c, v)| (*c, *v as i128)).collect()).collect();
    match bareiss::<i128>(normalize_rows(small)) {
        Some(r) => r,
        None => bareiss::<BigInt>(normalize_rows(
            rows.iter().map(|r| r.iter().map(|(c, v)| (*c, BigInt::from(*v))).collect()).collect(),
        ))
        .expect("big integers never overflow"),
    }
}

fn normalize_rows<T: Clone + PartialEq + Zero>(rows: Vec<Vec<(usize, T)>>) -> Vec<Vec<(usize, T)>> {
    rows.into_iter()
        .map(|mut r| {
            r.retain(|(_, v)| !v.is_zero());
            r.sort_by_key(|(c, _)| *c);
            r
        })
        .filter(|r| !r.is_empty())
        .collect()
}

/// Integer arithmetic used by the fraction-free eliminator; `None` signals overflow.
trait ExactInt: Clone + PartialEq + Zero {
    fn mul_sub_div(a: &Self, x: &Self, b: &Self, y: &Self, d: &Self) -> Option<Self>;
}

impl ExactInt for i128 {
    fn mul_sub_div(a: &i128, x: &i128, b: &i128, y: &i128, d: &i128) -> Option<i128> {
        let l = a.checked_mul(*x)?;
        let r = b.checked_mul(*y)?;
        let s = l.checked_sub(r)?;
        debug_assert!(s % d == 0, "Bareiss division is exact");
        Some(s / d)
    }
}

impl ExactInt for BigInt {
    fn mul_sub_div(a: &BigInt, x: &BigInt, b: &BigInt, y: &BigInt, d: &BigInt) -> Option<BigInt> {
        let s = a * x - b * y;
        debug_assert!((&s % d).is_zero(), "Bareiss division is exact");
        Some(s / d)
    }
}

/// Fraction-free elimination on sorted sparse rows; returns the rank.
///
/// After step k every surviving entry is a (k+1)-minor of the input, so the
/// division by the previous pivot is exact.
fn bareiss<T: ExactInt + One>(mut rows: Vec<Vec<(usize, T)>>) -> Option<usize> {
    let mut prev = T::one();
    let mut rank = 0;
    while !rows.is_empty() {
        let col = rows.iter().map(|r| r[0].0).min().expect("nonempty rows");
        let pidx = rows.iter().position(|r| r[0].0 == col).expect("pivot exists");
        let pivot = rows.swap_remove_keep_order(pidx);
        let p = pivot[0].1.clone();
        let mut next = Vec::with_capacity(rows.len());
        for r in rows.into_iter() {
            let nr = if r[0].0 == col {
                let a = r[0].1.clone();
                combine(&p, &r[1..], &a, &pivot[1..], &prev)?
            } else {
                scale_div(&p, &r, &prev)?
            };
            if !nr.is_empty() {
                next.push(nr);
            }
        }
        rows = next;
        prev = p;
        rank += 1;
    }
    Some(rank)
}

trait KeepOrder<T> {
    fn swap_remove_keep_order(&mut self, i: usize) -> T;
}

impl<T> KeepOrder<T> for Vec<T> {
    fn swap_remove_keep_order(&mut self, i: usize) -> T {
        self.remove(i)
    }
}

/// `(p*r - a*s) / d` on sorted sparse rows.
fn combine<T: ExactInt + One>(
    p: &T,
    r: &[(usize, T)],
    a: &T,
    s: &[(usize, T)],
    d: &T,
) -> Option<Vec<(usize, T)>> {
    let zero = T::zero();
    let mut out = Vec::with_capacity(r.len() + s.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < s.len() {
        let (c, x, y) = if j >= s.len() || (i < r.len() && r[i].0 < s[j].0) {
            i += 1;
            (r[i - 1].0, &r[i - 1].1, &zero)
        } else if i >= r.len() || s[j].0 < r[i].0 {
            j += 1;
            (s[j - 1].0, &zero, &s[j - 1].1)
        } else {
            i += 1;
            j += 1;
            (r[i - 1].0, &r[i - 1].1, &s[j - 1].1)
        };
        let v = T::mul_sub_div(p, x, a, y, d)?;
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    Some(out)
}

fn scale_div<T: ExactInt + One>(p: &T, r: &[(usize, T)], d: &T) -> Option<Vec<(usize, T)>> {
    let zero = T::zero();
    r.iter()
        .map(|(c, x)| T::mul_sub_div(p, x, &zero, &zero, d).map(|v| (*c, v)))
        .collect()
}

fn rank_mod_p(rows: Vec<Vec<(usize, u64)>>, p: u64) -> usize {
    let mut rows: Vec<Vec<(usize, u64)>> = rows
        .into_iter()
        .map(|mut r| {
            r.retain(|(_, v)| v % p != 0);
            r.sort_by_key(|(c, _)| *c);
            r
        })
        .filter(|r| !r.is_empty())
        .collect();
    let mut rank = 0;
    while !rows.is_empty() {
        let col = rows.iter().map(|r| r[0].0).min().expect("nonempty rows");
        let pidx = rows.iter().position(|r| r[0].0 == col).expect("pivot exists");
        let pivot = rows.remove(pidx);
        let inv = pow_mod(pivot[0].1, p - 2, p);
        let mut next = Vec::with_capacity(rows.len());
        for r in rows.into_iter() {
            if r[0].0 != col {
                next.push(r);
                continue;
            }
            let f = r[0].1 * inv % p;
            let nr = axpy_mod(&r[1..], &pivot[1..], p - f, p);
            if !nr.is_empty() {
                next.push(nr);
            }
        }
        rows = next;
        rank += 1;
    }
    rank
}

/// `r + f*s` modulo p on sorted sparse rows.
fn axpy_mod(r: &[(usize, u64)], s: &[(usize, u64)], f: u64, p: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(r.len() + s.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < s.len() {
        let (c, v) = if j >= s.len() || (i < r.len() && r[i].0 < s[j].0) {
            i += 1;
            (r[i - 1].0, r[i - 1].1)
        } else if i >= r.len() || s[j].0 < r[i].0 {
            j += 1;
            (s[j - 1].0, f * s[j - 1].1 % p)
        } else {
            i += 1;
            j += 1;
            (r[i - 1].0, (r[i - 1].1 + f * s[j - 1].1) % p)
        };
        if v != 0 {
            out.push((c, v));
        }
    }
    out
}

/// Rank by plain Gaussian elimination with rational fractions.
///
/// Kept as an independent reference for the fraction-free routine.
pub fn rank_naive<L: Ord + Clone>(m: &SparseMat<L>) -> Result<usize, LinAlgError> {
    let rows = m.indexed();
    let mut ech = Echelon::<usize>::new(m.field);
    for r in rows {
        ech.insert(&SparseVec { entries: r.into_iter().collect() });
    }
    Ok(ech.rank())
}

/// A basis of the right null space `{v : m v = 0}`.
///
/// One vector per free column, carrying a 1 in that column; the count is
/// `#columns - rank(m)`.
pub fn kernel_basis<L: Ord + Clone>(m: &SparseMat<L>) -> Result<Vec<SparseVec<L>>, LinAlgError> {
    let field = m.field;
    let mut ech = Echelon::<usize>::new(field);
    for r in m.indexed() {
        ech.insert(&SparseVec { entries: r.into_iter().collect() });
    }
    let rref = ech.reduced_rows();
    let pivots: BTreeMap<usize, usize> =
        rref.iter().enumerate().map(|(i, (c, _))| (*c, i)).collect();
    let mut out = Vec::new();
    for free in 0..m.columns.len() {
        if pivots.contains_key(&free) {
            continue;
        }
        let mut v = SparseVec::new();
        v.insert(m.columns[free].clone(), Scalar::one(field));
        for (pc, row) in &rref {
            if let Some(x) = row.get(&free) {
                v.insert(m.columns[*pc].clone(), -x);
            }
        }
        out.push(v);
    }
    Ok(out)
}

/// Whether `v` is a linear combination of `basis`.
pub fn in_span<L: Ord + Clone>(v: &SparseVec<L>, basis: &[SparseVec<L>]) -> Result<bool, LinAlgError> {
    let field = match v.entries.values().next().or_else(|| basis.iter().flat_map(|b| b.entries.values()).next()) {
        Some(s) => s.field(),
        None => return Ok(true),
    };
    if !v.fields_consistent(field) || !basis.iter().all(|b| b.fields_consistent(field)) {
        return Err(LinAlgError::InconsistentField);
    }
    let mut ech = Echelon::new(field);
    for b in basis {
        ech.insert(b);
    }
    Ok(ech.contains(v))
}

/// An echelon row with its coordinates in terms of the inserted vectors.
type Tracked<L> = (SparseVec<L>, BTreeMap<usize, Scalar>);

/// An incrementally built echelon basis of a subspace.
///
/// Rows are stored with their pivot (leading) label normalized to one and
/// eliminated from each other, so membership is a single reduction pass.
#[derive(Debug, Clone)]
pub struct Echelon<L: Ord> {
    field: Field,
    rows: BTreeMap<L, SparseVec<L>>,
    coords: Option<Vec<Tracked<L>>>,
    inserted: usize,
}

impl<L: Ord + Clone> Echelon<L> {
    pub fn new(field: Field) -> Self {
        Echelon { field, rows: BTreeMap::new(), coords: None, inserted: 0 }
    }

    /// An echelon form that also records how each pivot row is expressed in
    /// the inserted vectors, enabling [`Echelon::solve`].
    pub fn with_coordinates(field: Field) -> Self {
        Echelon { field, rows: BTreeMap::new(), coords: Some(Vec::new()), inserted: 0 }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce_with(&self, v: &SparseVec<L>, mut track: Option<&mut BTreeMap<usize, Scalar>>) -> SparseVec<L> {
        let mut v = v.clone();
        loop {
            let hit = v.entries.iter().find(|(l, _)| self.rows.contains_key(*l)).map(|(l, x)| (l.clone(), x.clone()));
            let Some((label, x)) = hit else { break };
            let row = &self.rows[&label];
            for (l, y) in &row.entries {
                let nv = match v.entries.get(l) {
                    Some(cur) => cur - &(&x * y),
                    None => -&(&x * y),
                };
                v.insert(l.clone(), nv);
            }
            if let (Some(t), Some(coords)) = (track.as_deref_mut(), &self.coords) {
                let idx = coords.iter().position(|(r, _)| r.entries.keys().next() == Some(&label));
                if let Some(idx) = idx {
                    for (k, c) in &coords[idx].1 {
                        let cur = t.get(k).cloned().unwrap_or_else(|| Scalar::zero(self.field));
                        let nv = &cur - &(&x * c);
                        if nv.is_zero() {
                            t.remove(k);
                        } else {
                            t.insert(*k, nv);
                        }
                    }
                }
            }
        }
        v
    }

    /// Reduces `v` modulo the stored rows.
    pub fn reduce(&self, v: &SparseVec<L>) -> SparseVec<L> {
        self.reduce_with(v, None)
    }

    pub fn contains(&self, v: &SparseVec<L>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec<L>) -> bool {
        let index = self.inserted;
        self.inserted += 1;
        let mut track = BTreeMap::new();
        track.insert(index, Scalar::one(self.field));
        let tracking = self.coords.is_some();
        let r = self.reduce_with(v, if tracking { Some(&mut track) } else { None });
        let Some((lead, x)) = r.entries.iter().next().map(|(l, x)| (l.clone(), x.clone())) else {
            return false;
        };
        let xi = x.inv().expect("nonzero pivot");
        let mut row = SparseVec::new();
        for (l, y) in &r.entries {
            row.insert(l.clone(), &xi * y);
        }
        let track: BTreeMap<usize, Scalar> = track.into_iter().map(|(k, c)| (k, &xi * &c)).collect();
        // Keep the form reduced: clear the new pivot from existing rows.
        let keys: Vec<L> = self.rows.keys().cloned().collect();
        for k in keys {
            let y = match self.rows[&k].entries.get(&lead) {
                Some(y) => y.clone(),
                None => continue,
            };
            let old = self.rows.get_mut(&k).expect("present");
            for (l, z) in &row.entries {
                let nv = match old.entries.get(l) {
                    Some(cur) => cur - &(&y * z),
                    None => -&(&y * z),
                };
                old.insert(l.clone(), nv);
            }
            if let Some(coords) = self.coords.as_mut() {
                let idx = coords.iter().position(|(r, _)| r.entries.keys().next() == Some(&k)).expect("tracked");
                for (kk, c) in &track {
                    let cur = coords[idx].1.get(kk).cloned().unwrap_or_else(|| Scalar::zero(self.field));
                    let nv = &cur - &(&y * c);
                    if nv.is_zero() {
                        coords[idx].1.remove(kk);
                    } else {
                        coords[idx].1.insert(*kk, nv);
                    }
                }
            }
        }
        if let Some(coords) = self.coords.as_mut() {
            let mut key = SparseVec::new();
            key.insert(lead.clone(), Scalar::one(self.field));
            coords.push((key, track));
        }
        self.rows.insert(lead, row);
        true
    }

    /// Coefficients expressing `v` in the inserted vectors (indexed by
    /// insertion order), or `None` if `v` is outside the span.
    pub fn solve(&self, v: &SparseVec<L>) -> Option<BTreeMap<usize, Scalar>> {
        assert!(self.coords.is_some(), "solve requires an echelon form built with coordinates");
        let mut t = BTreeMap::new();
        let r = self.reduce_with(v, Some(&mut t));
        if !r.is_empty() {
            return None;
        }
        // reduce_with accumulated -(combination); flip the sign.
        Some(t.into_iter().map(|(k, c)| (k, -&c)).collect())
    }

    /// Reduced rows keyed by pivot label, in pivot order.
    pub fn reduced_rows(&self) -> Vec<(L, SparseVec<L>)> {
        self.rows.iter().map(|(k, v)| (k.clone(), v.clone())).collect()
    }
}

/// Rank over `field` of integer vectors.
pub fn rank_of_intvecs<L: Ord + Clone>(field: Field, vecs: &[IntVec<L>]) -> usize {
    let mut index: BTreeMap<&L, usize> = BTreeMap::new();
    for v in vecs {
        for l in v.labels() {
            let n = index.len();
            index.entry(l).or_insert(n);
        }
    }
    let rows: Vec<Vec<(usize, i64)>> =
        vecs.iter().map(|v| v.iter().map(|(l, c)| (index[l], *c)).collect()).collect();
    match field {
        Field::Rational => rank_i64_rows(&rows),
        Field::Prime(p) => rank_mod_p(
            rows.into_iter()
                .map(|r| r.into_iter().map(|(c, x)| (c, x.rem_euclid(p as i64) as u64)).collect())
                .collect(),
            p,
        ),
    }
}

/// Absolute value helper for reporting integer coefficients.
pub fn abs_big(x: &BigInt) -> BigInt {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Scalar::from_i64(Field::Rational, n)
    }

    fn mat(field: Field, rows: &[&[i64]]) -> SparseMat<usize> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| SparseVec::from_pairs(r.iter().enumerate().map(|(c, x)| (c, Scalar::from_i64(field, *x)))))
            .collect();
        SparseMat::new(field, 0..ncols, rows).unwrap()
    }

    #[test]
    fn identity_rank() {
        let m = mat(Field::Rational, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(rank(&m).unwrap(), 3);
    }

    #[test]
    fn zero_rank() {
        let m = mat(Field::Rational, &[&[0, 0], &[0, 0]]);
        assert_eq!(rank(&m).unwrap(), 0);
    }

    #[test]
    fn singular_two_by_two() {
        let m = mat(Field::Rational, &[&[1, 2], &[2, 4]]);
        assert_eq!(rank(&m).unwrap(), 1);
    }

    #[test]
    fn rank_depends_on_characteristic() {
        let rows: &[&[i64]] = &[&[1, 1], &[1, -2]];
        assert_eq!(rank(&mat(Field::Rational, rows)).unwrap(), 2);
        assert_eq!(rank(&mat(Field::Prime(3), rows)).unwrap(), 1);
    }

    #[test]
    fn kernel_of_identity_is_trivial() {
        let m = mat(Field::Rational, &[&[1, 0], &[0, 1]]);
        assert!(kernel_basis(&m).unwrap().is_empty());
    }

    #[test]
    fn kernel_of_zero_row() {
        let m = mat(Field::Rational, &[&[0, 0, 0]]);
        assert_eq!(kernel_basis(&m).unwrap().len(), 3);
    }

    #[test]
    fn kernel_of_sum_functional() {
        let m = mat(Field::Rational, &[&[1, 1]]);
        let k = kernel_basis(&m).unwrap();
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert_eq!(v.get(&0).cloned().unwrap(), &q(0) - v.get(&1).unwrap());
    }

    #[test]
    fn span_membership() {
        let e = |a: i64, b: i64| SparseVec::from_pairs([(0usize, q(a)), (1usize, q(b))]);
        assert!(in_span(&SparseVec::<usize>::new(), &[e(1, 0)]).unwrap());
        assert!(!in_span(&e(1, 0), &[e(0, 1)]).unwrap());
        assert!(in_span(&e(2, 2), &[e(1, 1)]).unwrap());
    }

    #[test]
    fn mixed_fields_rejected() {
        let r = SparseVec::from_pairs([(0usize, Scalar::from_i64(Field::Prime(5), 1))]);
        let err = SparseMat::new(Field::Rational, [0usize], vec![r]).unwrap_err();
        assert_eq!(err.to_string(), "inconsistent scalar field");
    }

    #[test]
    fn field_parsing() {
        assert_eq!(Field::parse("q").unwrap(), Field::Rational);
        assert_eq!(Field::parse("p=5").unwrap(), Field::Prime(5));
        assert_eq!(Field::parse("p=2").unwrap_err(), LinAlgError::CharacteristicTwo);
        assert!(Field::parse("p=9").is_err());
        assert!(Field::parse("r").is_err());
    }

    #[test]
    fn solve_recovers_coefficients() {
        let f = Field::Rational;
        let a = SparseVec::from_pairs([(0usize, q(1)), (1, q(1))]);
        let b = SparseVec::from_pairs([(1usize, q(1)), (2, q(1))]);
        let mut e = Echelon::with_coordinates(f);
        e.insert(&a);
        e.insert(&b);
        let target = SparseVec::from_pairs([(0usize, q(2)), (1, q(5)), (2, q(3))]);
        let c = e.solve(&target).unwrap();
        assert_eq!(c[&0], q(2));
        assert_eq!(c[&1], q(3));
        assert!(e.solve(&SparseVec::from_pairs([(0usize, q(1))])).is_none());
    }

    #[test]
    fn prime_inverse() {
        let x = Scalar::from_i64(Field::Prime(7), 3);
        assert!((&x * &x.inv().unwrap()).is_one());
        assert_eq!(Scalar::from_ratio(Field::Prime(3), 1, 3), None);
    }
}
