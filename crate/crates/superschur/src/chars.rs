//! Formal characters of Schur supermodules and the symmetric functions they
//! are compared against.
//!
//! Polynomials live in `ℤ[x_1..x_m; y_1..y_n]` and are stored sparsely by
//! exponent vector `(a_1..a_m, b_1..b_n)`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use serde::{Serialize, Serializer};

use crate::exactalg::Field;
use crate::schuralg::{matrix_rank, QAlgebra, SchurModule};
use crate::schurfun::{build_theta_hat, schur_basis, StandardBasisViolation};
use crate::shapes::{enumerate, Partition, Predicate, SkewShape};
use crate::supercore::SuperBasis;

/// A polynomial in `x_1..x_m` and `y_1..y_n` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    m: usize,
    n: usize,
    terms: BTreeMap<Vec<u32>, i64>,
}

impl MultiPoly {
    pub fn zero(m: usize, n: usize) -> MultiPoly {
        MultiPoly { m, n, terms: BTreeMap::new() }
    }

    pub fn one(m: usize, n: usize) -> MultiPoly {
        MultiPoly::monomial(m, n, vec![0; m + n], 1)
    }

    /// `coef · x^a y^b` for the exponent vector `(a; b)`.
    pub fn monomial(m: usize, n: usize, exps: Vec<u32>, coef: i64) -> MultiPoly {
        assert_eq!(exps.len(), m + n, "exponent vector length");
        let mut p = MultiPoly::zero(m, n);
        p.add_term(exps, coef);
        p
    }

    pub fn x_vars(&self) -> usize {
        self.m
    }

    pub fn y_vars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &i64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> i64 {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, coef: i64) {
        assert_eq!(exps.len(), self.m + self.n, "exponent vector length");
        if coef == 0 {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(coef);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    /// Total degrees of the terms, without repetition.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|e| e.iter().sum()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Places the `x` variables of an `x`-only polynomial and the `y` variables
    /// of a `y`-only polynomial into `ℤ[x_1..x_m; y_1..y_n]`.
    pub fn embed(&self, m: usize, n: usize) -> MultiPoly {
        assert!(self.m <= m && self.n <= n, "embedding into fewer variables");
        let mut out = MultiPoly::zero(m, n);
        for (e, &c) in &self.terms {
            let mut f = vec![0; m + n];
            f[..self.m].copy_from_slice(&e[..self.m]);
            f[m..m + self.n].copy_from_slice(&e[self.m..]);
            out.add_term(f, c);
        }
        out
    }

    /// Sets `x_{m'+1}..x_m` and `y_{n'+1}..y_n` to zero.
    pub fn truncate(&self, m: usize, n: usize) -> MultiPoly {
        assert!(m <= self.m && n <= self.n, "truncation to more variables");
        let mut out = MultiPoly::zero(m, n);
        for (e, &c) in &self.terms {
            let (x, y) = e.split_at(self.m);
            if x[m..].iter().any(|&a| a > 0) || y[n..].iter().any(|&b| b > 0) {
                continue;
            }
            let mut f = x[..m].to_vec();
            f.extend_from_slice(&y[..n]);
            out.add_term(f, c);
        }
        out
    }

    /// Substitutes `y_i := x_i`; requires `m = n`. The result has no `y` variables.
    pub fn identify_y_with_x(&self) -> MultiPoly {
        assert_eq!(self.m, self.n, "identification needs as many y as x");
        let mut out = MultiPoly::zero(self.m, 0);
        for (e, &c) in &self.terms {
            let f: Vec<u32> = (0..self.m).map(|i| e[i] + e[self.m + i]).collect();
            out.add_term(f, c);
        }
        out
    }

    /// Applies a permutation of the `x` block (`y` when `odd`), `perm[i]` the new index of variable `i`.
    pub fn permute(&self, perm: &[usize], odd: bool) -> MultiPoly {
        let (off, len) = if odd { (self.m, self.n) } else { (0, self.m) };
        assert_eq!(perm.len(), len, "permutation length");
        let mut out = MultiPoly::zero(self.m, self.n);
        for (e, &c) in &self.terms {
            let mut f = e.clone();
            for i in 0..len {
                f[off + perm[i]] = e[off + i];
            }
            out.add_term(f, c);
        }
        out
    }

    /// Whether the polynomial is symmetric in the `x` block and in the `y` block.
    pub fn is_bisymmetric(&self) -> bool {
        let swap = |len: usize, i: usize| -> Vec<usize> {
            let mut p: Vec<usize> = (0..len).collect();
            p.swap(i, i + 1);
            p
        };
        (0..self.m.saturating_sub(1)).all(|i| self.permute(&swap(self.m, i), false) == *self)
            && (0..self.n.saturating_sub(1)).all(|i| self.permute(&swap(self.n, i), true) == *self)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;

    fn add(self, other: &MultiPoly) -> MultiPoly {
        assert_eq!((self.m, self.n), (other.m, other.n), "different variable sets");
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;

    fn mul(self, other: &MultiPoly) -> MultiPoly {
        assert_eq!((self.m, self.n), (other.m, other.n), "different variable sets");
        let mut out = MultiPoly::zero(self.m, self.n);
        for (a, &c) in &self.terms {
            for (b, &d) in &other.terms {
                out.add_term(a.iter().zip(b).map(|(x, y)| x + y).collect(), c * d);
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    /// Terms in decreasing order of exponent vector, e.g. `2*x1^2 + x1*y1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, &c)) in self.terms.iter().rev().enumerate() {
            let mut factors: Vec<String> = Vec::new();
            for (i, &a) in e.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let var = if i < self.m { format!("x{}", i + 1) } else { format!("y{}", i - self.m + 1) };
                factors.push(if a == 1 { var } else { format!("{var}^{a}") });
            }
            let (sign, abs) = if c < 0 { ("-", -c) } else { ("+", c) };
            if k == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (abs, factors.is_empty()) {
                (_, true) => write!(f, "{abs}")?,
                (1, false) => write!(f, "{}", factors.join("*"))?,
                (_, false) => write!(f, "{abs}*{}", factors.join("*"))?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct TermJson<'a> {
    coef: i64,
    x: &'a [u32],
    y: &'a [u32],
}

#[derive(Serialize)]
struct PolyJson<'a> {
    m: usize,
    n: usize,
    terms: Vec<TermJson<'a>>,
    text: String,
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .rev()
            .map(|(e, &coef)| TermJson { coef, x: &e[..self.m], y: &e[self.m..] })
            .collect();
        PolyJson { m: self.m, n: self.n, terms, text: self.to_string() }.serialize(s)
    }
}

/// `Σ dim(V_μ) z^μ` from the weight-space dimensions of a module.
pub fn character(m: usize, n: usize, dims: impl IntoIterator<Item = (Vec<usize>, usize)>) -> MultiPoly {
    let mut out = MultiPoly::zero(m, n);
    for (mu, dim) in dims {
        out.add_term(mu.into_iter().map(|a| a as u32).collect(), dim as i64);
    }
    out
}

/// `Σ z^{wt(t)}` over the tableaux of `shape` on `basis` satisfying `pred`.
/// The variables follow the untwisted grading: `x` for the letters of `M_0`.
pub fn tableau_sum(shape: &SkewShape, basis: &SuperBasis, pred: Predicate) -> MultiPoly {
    let (m, n) = if basis.is_twisted() { (basis.odd_dim(), basis.even_dim()) } else { (basis.even_dim(), basis.odd_dim()) };
    character(m, n, enumerate(shape, basis, pred).iter().map(|t| (basis.weight(&t.reading_word()), 1)))
}

/// `s_λ(x_1..x_m)`.
pub fn schur_poly(lambda: &Partition, m: usize) -> MultiPoly {
    skew_schur_poly(&SkewShape::straight(lambda.clone()), m, false)
}

/// `s_{λ/μ}(x_1..x_k)` from standard tableaux on `k` even letters, or, when
/// `odd`, `s_{λ'/μ'}(y_1..y_k)` from standard tableaux on `k` odd letters.
pub fn skew_schur_poly(shape: &SkewShape, k: usize, odd: bool) -> MultiPoly {
    let basis = if odd { SuperBasis::standard(0, k) } else { SuperBasis::standard(k, 0) };
    tableau_sum(shape, &basis, Predicate::Standard)
}

/// `hs_λ(x_1..x_m; y_1..y_n) = Σ_{μ⊂λ} s_μ(x) s_{λ'/μ'}(y)`.
pub fn hook_schur(lambda: &Partition, m: usize, n: usize) -> MultiPoly {
    let mut out = MultiPoly::zero(m, n);
    for mu in Partition::between(&Partition::empty(), lambda) {
        let x = schur_poly(&mu, m).embed(m, n);
        if x.is_zero() {
            continue;
        }
        let skew = SkewShape::new(lambda.clone(), mu).expect("μ ⊂ λ");
        let y = skew_schur_poly(&skew, n, true).embed(m, n);
        out = &out + &(&x * &y);
    }
    out
}

/// `S_λ(x_1..x_n) = hs_λ(x; x)`.
pub fn hall_littlewood(lambda: &Partition, n: usize) -> MultiPoly {
    hook_schur(lambda, n, n).identify_y_with_x()
}

/// The character of `Ŝ_λ(k^{m|n})`, from the ranks of `θ̂_λ` on each weight block.
pub fn schur_character(lambda: &Partition, m: usize, n: usize, field: Field) -> MultiPoly {
    let basis = SuperBasis::standard(m, n);
    let theta = build_theta_hat(&SkewShape::straight(lambda.clone()), &basis);
    character(m, n, theta.block_ranks(field).into_iter().map(|(content, r)| (basis.weight(&content), r)))
}

/// Character of `Ŝ_λ(k^{m|n})` against `hs_λ` and the standard-tableau sum.
pub fn verify_char_type_i(lambda: &Partition, m: usize, n: usize) -> bool {
    let ch = schur_character(lambda, m, n, Field::Rational);
    let tableaux = tableau_sum(&SkewShape::straight(lambda.clone()), &SuperBasis::standard(m, n), Predicate::Standard);
    ch == hook_schur(lambda, m, n) && ch == tableaux
}

/// The `Q(n,d)` character of `Ŝ_λ(k^{n|n})`: weight-space dimensions are the
/// ranks of the idempotents `E^{(0;ν)}` acting on the module.
pub fn type_ii_character(lambda: &Partition, n: usize) -> Result<MultiPoly, StandardBasisViolation> {
    let field = Field::Rational;
    let shape = SkewShape::straight(lambda.clone());
    let module = SchurModule::new(schur_basis(&shape, &SuperBasis::standard(n, n), field)?, field);
    let q = QAlgebra::new(n, lambda.size());
    let dims = q.weights().into_iter().map(|nu| {
        let mat = module.act(q.ambient(), &q.weight_idempotent(&nu)).expect("idempotents preserve the module");
        (nu, matrix_rank(&mat, field))
    });
    Ok(character(n, 0, dims))
}

/// Type II character of `Ŝ_λ(k^{n|n})` against `S_λ(x_1..x_n)`.
pub fn verify_char_type_ii(lambda: &Partition, n: usize) -> bool {
    match type_ii_character(lambda, n) {
        Ok(ch) => ch == hall_littlewood(lambda, n),
        Err(_) => false,
    }
}

/// Killing the extra variables of the character over `k^{m'|n'}` gives the
/// character over `k^{m|n}`.
pub fn truncation_check(lambda: &Partition, big: (usize, usize), small: (usize, usize)) -> bool {
    assert!(big.0 >= small.0 && big.1 >= small.1, "truncation to a larger space");
    let f = Field::Rational;
    schur_character(lambda, big.0, big.1, f).truncate(small.0, small.1) == schur_character(lambda, small.0, small.1, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn small_schur_polys() {
        assert_eq!(schur_poly(&part(&[1]), 2).to_string(), "x1 + x2");
        assert_eq!(schur_poly(&part(&[2]), 1).to_string(), "x1^2");
        assert!(schur_poly(&part(&[1, 1]), 1).is_zero());
        assert_eq!(schur_poly(&Partition::empty(), 2), MultiPoly::one(2, 0));
    }

    #[test]
    fn small_hook_schur() {
        assert_eq!(hook_schur(&part(&[1]), 1, 1).to_string(), "x1 + y1");
        assert_eq!(hook_schur(&part(&[2]), 1, 1).to_string(), "x1^2 + x1*y1");
        let lam = part(&[2, 1]);
        assert_eq!(hook_schur(&lam, 2, 0), schur_poly(&lam, 2));
        assert_eq!(hook_schur(&lam, 0, 2), skew_schur_poly(&SkewShape::straight(lam.clone()), 2, true));
    }

    #[test]
    fn small_hall_littlewood() {
        assert_eq!(hall_littlewood(&part(&[1]), 2).to_string(), "2*x1 + 2*x2");
        assert_eq!(hall_littlewood(&Partition::empty(), 2), MultiPoly::one(2, 0));
        assert_eq!(hall_littlewood(&part(&[2]), 1).to_string(), "2*x1^2");
    }

    #[test]
    fn natural_module() {
        let ch = schur_character(&part(&[1]), 2, 1, Field::Rational);
        assert_eq!(ch.to_string(), "x1 + x2 + y1");
    }

    #[test]
    fn divided_power_character() {
        // Γ_Π^{(2)}(k^{1|1}): sorted words restricted in the twisted basis.
        let b = SuperBasis::standard(1, 1);
        let ch = tableau_sum(&SkewShape::straight(part(&[2])), &b.twisted(), Predicate::RowStandard);
        assert_eq!(ch.to_string(), "x1*y1 + y1^2");
    }

    #[test]
    fn type_checks() {
        assert!(verify_char_type_i(&part(&[2]), 1, 1));
        assert!(verify_char_type_ii(&part(&[1]), 1));
        assert!(verify_char_type_ii(&part(&[2]), 1));
        assert!(truncation_check(&part(&[2]), (2, 1), (1, 1)));
    }
}
