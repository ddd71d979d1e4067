//! Partitions, skew shapes and tableaux.
//!
//! Rows and columns are 1-based in the public API. A tableau stores its rows
//! left to right, row `i` holding the cells `μ_i+1..=λ_i`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::supercore::{Letter, Perm, SuperBasis, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("invalid shape `{0}`: expected e.g. `4,3,1/2,1`")]
    Syntax(String),
    #[error("parts must be weakly decreasing and positive")]
    NotAPartition,
    #[error("inner partition is not contained in the outer one")]
    NotContained,
    #[error("tableaux have different shapes")]
    ShapeMismatch,
}

/// A partition, stored without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Partition, ShapeError> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(ShapeError::NotAPartition);
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// `λ_i` with 1-based `i`, zero past the length.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.part(1);
        Partition((1..=w).map(|j| self.0.iter().filter(|&&p| p >= j).count()).collect())
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && (1..=other.len()).all(|i| other.part(i) <= self.part(i))
    }

    /// All partitions of `d`, in reverse lex order.
    pub fn all_of_size(d: usize) -> Vec<Partition> {
        fn rec(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if left == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=left.min(max)).rev() {
                cur.push(p);
                rec(left - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(d, d, &mut Vec::new(), &mut out);
        out
    }

    /// All partitions `ν` with `inner ⊂ ν ⊂ self`, in lex order.
    pub fn between(inner: &Partition, outer: &Partition) -> Vec<Partition> {
        fn rec(i: usize, inner: &Partition, outer: &Partition, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if i > outer.len() {
                out.push(Partition::new(cur.clone()).expect("built decreasing"));
                return;
            }
            let hi = if i == 1 { outer.part(1) } else { outer.part(i).min(cur[i - 2]) };
            let lo = inner.part(i);
            for p in lo..=hi {
                cur.push(p);
                rec(i + 1, inner, outer, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if outer.contains(inner) {
            rec(1, inner, outer, &mut Vec::new(), &mut out);
        }
        out.sort();
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

/// A skew shape `λ/μ` with `μ ⊂ λ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SkewShape {
    lambda: Partition,
    mu: Partition,
}

impl SkewShape {
    pub fn new(lambda: Partition, mu: Partition) -> Result<SkewShape, ShapeError> {
        if !lambda.contains(&mu) {
            return Err(ShapeError::NotContained);
        }
        Ok(SkewShape { lambda, mu })
    }

    /// A straight shape.
    pub fn straight(lambda: Partition) -> SkewShape {
        SkewShape { lambda, mu: Partition::empty() }
    }

    pub fn from_parts(lambda: &[usize], mu: &[usize]) -> Result<SkewShape, ShapeError> {
        SkewShape::new(Partition::new(lambda.to_vec())?, Partition::new(mu.to_vec())?)
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn mu(&self) -> &Partition {
        &self.mu
    }

    /// Number of rows of `λ`.
    pub fn rows(&self) -> usize {
        self.lambda.len()
    }

    /// Length of row `i` of the skew diagram.
    pub fn row_len(&self, i: usize) -> usize {
        self.lambda.part(i) - self.mu.part(i)
    }

    pub fn row_lengths(&self) -> Vec<usize> {
        (1..=self.rows()).map(|i| self.row_len(i)).collect()
    }

    pub fn size(&self) -> usize {
        self.lambda.size() - self.mu.size()
    }

    pub fn conjugate(&self) -> SkewShape {
        SkewShape { lambda: self.lambda.conjugate(), mu: self.mu.conjugate() }
    }

    /// Cells `(i, j)` in row-reading order.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for i in 1..=self.rows() {
            for j in self.mu.part(i) + 1..=self.lambda.part(i) {
                out.push((i, j));
            }
        }
        out
    }

    pub fn contains_cell(&self, i: usize, j: usize) -> bool {
        i >= 1 && j > self.mu.part(i) && j <= self.lambda.part(i)
    }

    /// Every row and every column of `λ` meets the diagram.
    pub fn is_tight(&self) -> bool {
        let c = self.conjugate();
        (1..=self.rows()).all(|i| self.row_len(i) > 0) && (1..=c.rows()).all(|j| c.row_len(j) > 0)
    }

    /// All skew shapes `λ/μ` of size `d` without empty rows or columns.
    pub fn all_tight(d: usize) -> Vec<SkewShape> {
        let mut out = Vec::new();
        for total in d..=d * d {
            for lambda in Partition::all_of_size(total) {
                if lambda.len() > d || lambda.part(1) > d {
                    continue;
                }
                for mu in Partition::all_of_size(total - d) {
                    if let Ok(s) = SkewShape::new(lambda.clone(), mu) {
                        if s.is_tight() {
                            out.push(s);
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mu.is_empty() {
            write!(f, "{}", self.lambda)
        } else {
            write!(f, "{}/{}", self.lambda, self.mu)
        }
    }
}

impl FromStr for SkewShape {
    type Err = ShapeError;

    /// Parses `4,3,1/2,1`; the inner shape and the slash may be omitted.
    fn from_str(s: &str) -> Result<SkewShape, ShapeError> {
        let bad = || ShapeError::Syntax(s.to_string());
        let parse = |t: &str| -> Result<Vec<usize>, ShapeError> {
            let t = t.trim();
            if t.is_empty() {
                return Ok(Vec::new());
            }
            t.split(',').map(|x| x.trim().parse::<usize>().map_err(|_| bad())).collect()
        };
        let mut it = s.splitn(2, '/');
        let outer = parse(it.next().ok_or_else(bad)?)?;
        let inner = parse(it.next().unwrap_or(""))?;
        SkewShape::new(Partition::new(outer)?, Partition::new(inner)?)
    }
}

/// The permutation taking the row-reading index of each cell to its
/// column-reading index (columns left to right, each read top to bottom).
pub fn sigma_shape(s: &SkewShape) -> Perm {
    let cells = s.cells();
    let mut by_col = cells.clone();
    by_col.sort_by_key(|&(i, j)| (j, i));
    let images = cells
        .iter()
        .map(|c| by_col.iter().position(|x| x == c).expect("same cells"))
        .collect();
    Perm::from_images(images).expect("bijection")
}

/// The six (co)standardness predicates, and combinations used for enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Predicate {
    RowStandard,
    RowCostandard,
    ColStandard,
    ColCostandard,
    Standard,
    Costandard,
    Any,
}

/// Values of all predicates on one tableau.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Predicates {
    pub row_standard: bool,
    pub row_costandard: bool,
    pub col_standard: bool,
    pub col_costandard: bool,
    pub standard: bool,
    pub costandard: bool,
}

/// A filling of a skew shape by letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    shape: SkewShape,
    rows: Vec<Word>,
}

impl Tableau {
    /// Builds a tableau; each row must have the right length.
    pub fn new(shape: SkewShape, rows: Vec<Word>) -> Result<Tableau, ShapeError> {
        if rows.len() != shape.rows() || rows.iter().enumerate().any(|(i, r)| r.len() != shape.row_len(i + 1)) {
            return Err(ShapeError::ShapeMismatch);
        }
        Ok(Tableau { shape, rows })
    }

    /// Splits a row-reading word into rows.
    pub fn from_reading_word(shape: SkewShape, w: &[Letter]) -> Tableau {
        let mut rows = Vec::with_capacity(shape.rows());
        let mut k = 0;
        for len in shape.row_lengths() {
            rows.push(w[k..k + len].to_vec());
            k += len;
        }
        Tableau { shape, rows }
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    pub fn rows(&self) -> &[Word] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Word> {
        self.rows
    }

    /// Entry in cell `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> Option<Letter> {
        if !self.shape.contains_cell(i, j) {
            return None;
        }
        Some(self.rows[i - 1][j - self.shape.mu.part(i) - 1])
    }

    /// The transposed tableau, of the conjugate shape.
    pub fn conjugate(&self) -> Tableau {
        let shape = self.shape.conjugate();
        let rows = (1..=shape.rows())
            .map(|i| (shape.mu.part(i) + 1..=shape.lambda.part(i)).map(|j| self.get(j, i).expect("cell")).collect())
            .collect();
        Tableau { shape, rows }
    }

    /// Columns, each read top to bottom, with the row index of each entry.
    fn columns(&self) -> Vec<Vec<Letter>> {
        let c = self.shape.conjugate();
        (1..=c.rows())
            .map(|j| (c.mu.part(j) + 1..=c.lambda.part(j)).map(|i| self.get(i, j).expect("cell")).collect())
            .collect()
    }

    pub fn predicates(&self, basis: &SuperBasis) -> Predicates {
        let rs = self.rows.iter().all(|r| sequence_ok(basis, r, 0));
        let rc = self.rows.iter().all(|r| sequence_ok(basis, r, 1));
        let cols = self.columns();
        let cs = cols.iter().all(|c| sequence_ok(basis, c, 1));
        let cc = cols.iter().all(|c| sequence_ok(basis, c, 0));
        Predicates {
            row_standard: rs,
            row_costandard: rc,
            col_standard: cs,
            col_costandard: cc,
            standard: rs && cs,
            costandard: rc && cc,
        }
    }

    pub fn satisfies(&self, basis: &SuperBasis, p: Predicate) -> bool {
        let v = self.predicates(basis);
        match p {
            Predicate::RowStandard => v.row_standard,
            Predicate::RowCostandard => v.row_costandard,
            Predicate::ColStandard => v.col_standard,
            Predicate::ColCostandard => v.col_costandard,
            Predicate::Standard => v.standard,
            Predicate::Costandard => v.costandard,
            Predicate::Any => true,
        }
    }

    /// Rows concatenated top to bottom.
    pub fn reading_word(&self) -> Word {
        self.rows.concat()
    }

    /// `t_{p,q}`: entries `≤ q` in rows `1..=p`.
    pub fn count(&self, p: usize, q: Letter) -> usize {
        self.rows.iter().take(p).map(|r| r.iter().filter(|&&x| x <= q).count()).sum()
    }

    /// `κ(t)_i = μ_i + #{entries ≤ r in row i}`.
    pub fn m_part(&self, r: Letter) -> Vec<usize> {
        (1..=self.shape.rows())
            .map(|i| self.shape.mu.part(i) + self.rows[i - 1].iter().filter(|&&x| x <= r).count())
            .collect()
    }

    /// Largest letter used, zero for the empty tableau.
    pub fn max_letter(&self) -> Letter {
        self.rows.iter().flatten().copied().max().unwrap_or(0)
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// Nondecreasing, with repeats allowed only among letters of parity `repeat_parity`.
fn sequence_ok(basis: &SuperBasis, s: &[Letter], repeat_parity: u8) -> bool {
    s.windows(2).all(|w| w[0] < w[1] || (w[0] == w[1] && basis.parity(w[0]) == repeat_parity))
}

/// Tri-state outcome of comparing tableaux in the quasi-order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum QuasiOrder {
    Less,
    EqualOrIncomparable,
    Greater,
}

/// Compares `s` and `t` in the quasi-order: `s ⊴ t` iff `s_{p,q} ≥ t_{p,q}`
/// for all `p, q`. `Less` means strictly smaller.
pub fn quasi_compare(s: &Tableau, t: &Tableau) -> Result<QuasiOrder, ShapeError> {
    if s.shape != t.shape {
        return Err(ShapeError::ShapeMismatch);
    }
    let top = s.max_letter().max(t.max_letter());
    let (mut ge, mut le, mut strict_g, mut strict_l) = (true, true, false, false);
    for p in 1..=s.shape.rows() {
        for q in 1..=top {
            match s.count(p, q).cmp(&t.count(p, q)) {
                Ordering::Greater => {
                    le = false;
                    strict_g = true;
                }
                Ordering::Less => {
                    ge = false;
                    strict_l = true;
                }
                Ordering::Equal => {}
            }
        }
    }
    Ok(if ge && strict_g {
        QuasiOrder::Less
    } else if le && strict_l {
        QuasiOrder::Greater
    } else {
        QuasiOrder::EqualOrIncomparable
    })
}

/// Whether `s ◁ t` (strictly).
pub fn strictly_precedes(s: &Tableau, t: &Tableau) -> bool {
    matches!(quasi_compare(s, t), Ok(QuasiOrder::Less))
}

/// `κ(s) ⪰ κ(t)` lexicographically.
pub fn kappa_monotone_check(s: &Tableau, t: &Tableau, r: Letter) -> bool {
    s.m_part(r) >= t.m_part(r)
}

/// All tableaux of `shape` over the letters of `basis` satisfying `pred`,
/// ordered lexicographically by reading word.
pub fn enumerate(shape: &SkewShape, basis: &SuperBasis, pred: Predicate) -> Vec<Tableau> {
    let cells = shape.cells();
    let letters = basis.len() as Letter;
    let mut out = Vec::new();
    let mut fill: Vec<Letter> = Vec::with_capacity(cells.len());
    let (row_rep, col_rep) = match pred {
        Predicate::RowStandard => (Some(0), None),
        Predicate::RowCostandard => (Some(1), None),
        Predicate::ColStandard => (None, Some(1)),
        Predicate::ColCostandard => (None, Some(0)),
        Predicate::Standard => (Some(0), Some(1)),
        Predicate::Costandard => (Some(1), Some(0)),
        Predicate::Any => (None, None),
    };
    // Position of each cell in reading order, for neighbor lookups.
    let index_of = |i: usize, j: usize| cells.iter().position(|&c| c == (i, j));
    let left: Vec<Option<usize>> = cells.iter().map(|&(i, j)| if j > 1 { index_of(i, j - 1) } else { None }).collect();
    let above: Vec<Option<usize>> = cells.iter().map(|&(i, j)| if i > 1 { index_of(i - 1, j) } else { None }).collect();
    let ok = |k: usize, x: Letter, fill: &[Letter]| -> bool {
        let check = |prev: Option<usize>, rep: Option<u8>| match (prev, rep) {
            (Some(p), Some(rp)) => fill[p] < x || (fill[p] == x && basis.parity(x) == rp),
            _ => true,
        };
        check(left[k], row_rep) && check(above[k], col_rep)
    };
    fn rec(
        k: usize,
        n: usize,
        letters: Letter,
        fill: &mut Vec<Letter>,
        ok: &dyn Fn(usize, Letter, &[Letter]) -> bool,
        emit: &mut dyn FnMut(&[Letter]),
    ) {
        if k == n {
            emit(fill);
            return;
        }
        for x in 1..=letters {
            if ok(k, x, fill) {
                fill.push(x);
                rec(k + 1, n, letters, fill, ok, emit);
                fill.pop();
            }
        }
    }
    let mut emit = |w: &[Letter]| out.push(Tableau::from_reading_word(shape.clone(), w));
    rec(0, cells.len(), letters, &mut fill, &ok, &mut emit);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(s: &str) -> SkewShape {
        s.parse().unwrap()
    }

    #[test]
    fn conjugates() {
        let c = |v: Vec<usize>| Partition::new(v).unwrap().conjugate().parts().to_vec();
        assert_eq!(c(vec![1]), vec![1]);
        assert_eq!(c(vec![4, 3, 1]), vec![3, 2, 2, 1]);
        assert_eq!(c(vec![2, 2]), vec![2, 2]);
    }

    #[test]
    fn sigma_of_example_shape() {
        let s = sigma_shape(&shape("4,3,1/2,1"));
        assert_eq!(s, Perm::from_cycle(5, &[1, 3, 2, 5]));
        assert_eq!(sigma_shape(&shape("4,3,1/2,1").conjugate()), s.inverse());
        assert!(sigma_shape(&shape("3")).is_identity());
        assert!(sigma_shape(&shape("1,1,1")).is_identity());
    }

    #[test]
    fn predicate_examples() {
        let b = SuperBasis::standard(1, 1);
        let xx = Tableau::new(shape("2"), vec![vec![1, 1]]).unwrap().predicates(&b);
        assert!(xx.row_standard && !xx.row_costandard);
        let yy = Tableau::new(shape("2"), vec![vec![2, 2]]).unwrap().predicates(&b);
        assert!(yy.row_costandard && !yy.row_standard);
        let col = Tableau::new(shape("1,1"), vec![vec![1], vec![1]]).unwrap().predicates(&b);
        assert!(!col.col_standard && col.col_costandard);
    }

    #[test]
    fn reading_words() {
        let t = Tableau::new(shape("2,1"), vec![vec![1, 2], vec![2]]).unwrap();
        assert_eq!(t.reading_word(), vec![1, 2, 2]);
        let t = Tableau::new(shape("2,1/1"), vec![vec![3], vec![1]]).unwrap();
        assert_eq!(t.reading_word(), vec![3, 1]);
    }

    #[test]
    fn quasi_order_examples() {
        let s = Tableau::new(shape("1,1"), vec![vec![1], vec![2]]).unwrap();
        let t = Tableau::new(shape("1,1"), vec![vec![2], vec![1]]).unwrap();
        assert_eq!(quasi_compare(&t, &t).unwrap(), QuasiOrder::EqualOrIncomparable);
        assert_eq!(quasi_compare(&s, &t).unwrap(), QuasiOrder::Less);
        assert_eq!(quasi_compare(&t, &s).unwrap(), QuasiOrder::Greater);
    }

    #[test]
    fn enumeration_examples() {
        let b = SuperBasis::standard(1, 1);
        let words = |p| enumerate(&shape("2"), &b, p).iter().map(|t| t.reading_word()).collect::<Vec<_>>();
        assert_eq!(words(Predicate::Costandard), vec![vec![1, 2], vec![2, 2]]);
        assert_eq!(words(Predicate::Standard), vec![vec![1, 1], vec![1, 2]]);
        let empty = SkewShape::straight(Partition::empty());
        assert_eq!(enumerate(&empty, &b, Predicate::Costandard).len(), 1);
    }

    #[test]
    fn m_part_counts() {
        let t = Tableau::new(shape("3,2/1"), vec![vec![1, 3], vec![2, 4]]).unwrap();
        assert_eq!(t.m_part(4), vec![3, 2]);
        assert_eq!(t.m_part(0), vec![1, 0]);
        assert_eq!(t.m_part(2), vec![2, 1]);
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(shape("4,3,1/2,1").to_string(), "4,3,1/2,1");
        assert_eq!(shape("2,1/").to_string(), "2,1");
        assert!("2,3".parse::<SkewShape>().is_err());
        assert!("1/2".parse::<SkewShape>().is_err());
    }

    #[test]
    fn tight_shape_counts() {
        assert_eq!(SkewShape::all_tight(1).len(), 1);
        // (2), (1,1), (2,1)/(1)
        assert_eq!(SkewShape::all_tight(2).len(), 3);
    }

    #[test]
    fn between_partitions() {
        let inner = Partition::empty();
        let outer = Partition::new(vec![2, 1]).unwrap();
        let v = Partition::between(&inner, &outer);
        assert_eq!(v.len(), 5);
        assert_eq!(v[0], Partition::empty());
        assert_eq!(v[4], outer);
    }
}
