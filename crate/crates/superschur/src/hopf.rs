//! Divided powers and symmetric powers of a superspace on explicit bases.
//!
//! `Z^{(i)}` for a standardized, restricted word `i` is a basis element of the
//! divided power algebra; the symmetric algebra uses the same words with
//! repeated odd letters vanishing. The twisted algebras are obtained by
//! passing a twisted [`SuperBasis`].

use num_integer::binomial;

use crate::exactalg::IntVec;
use crate::supercore::{distinct_permutations, standardize_sign, Letter, SuperBasis, Word};

/// Basis element `Z^{(i)}` of a divided power.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DividedElem {
    word: Word,
}

impl DividedElem {
    /// `None` unless `word` is standardized and restricted in `basis`.
    pub fn new(basis: &SuperBasis, word: Word) -> Option<DividedElem> {
        (word.windows(2).all(|w| w[0] <= w[1]) && basis.is_restricted(&word)).then_some(DividedElem { word })
    }

    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    pub fn degree(&self) -> usize {
        self.word.len()
    }
}

/// Basis element of a symmetric power: a sorted word without repeated odd letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymElem {
    word: Word,
}

impl SymElem {
    pub fn new(basis: &SuperBasis, word: Word) -> Option<SymElem> {
        DividedElem::new(basis, word).map(|d| SymElem { word: d.word })
    }

    pub fn word(&self) -> &[Letter] {
        &self.word
    }
}

/// Basis of `Γ^d` (equivalently of `S^d`) over `basis`: sorted restricted words.
pub fn divided_basis(basis: &SuperBasis, d: usize) -> Vec<Word> {
    fn rec(basis: &SuperBasis, start: Letter, left: usize, cur: &mut Word, out: &mut Vec<Word>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for k in start..=basis.len() as Letter {
            if basis.is_odd(k) && cur.last() == Some(&k) {
                continue;
            }
            cur.push(k);
            rec(basis, k, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(basis, 1, d, &mut Vec::new(), &mut out);
    out
}

/// `Z^{(a)} ⋆ Z^{(b)}`: zero when the merged word repeats an odd letter,
/// otherwise `C·sign·Z^{(st(a∨b))}` with `C = ∏_{s even} binom(wt(a)_s + wt(b)_s, wt(a)_s)`.
pub fn div_mult(basis: &SuperBasis, a: &[Letter], b: &[Letter]) -> Option<(Word, i64)> {
    let mut ab = a.to_vec();
    ab.extend_from_slice(b);
    let sign = standardize_sign(basis, &ab);
    ab.sort_unstable();
    if !basis.is_restricted(&ab) {
        return None;
    }
    let (wa, wb) = (basis.weight(a), basis.weight(b));
    let mut c: i64 = 1;
    for s in 0..wa.len() {
        if wa[s] > 0 && wb[s] > 0 {
            c = c.checked_mul(binomial((wa[s] + wb[s]) as i64, wa[s] as i64)).expect("binomial overflow");
        }
    }
    Some((ab, c * sign))
}

/// Splits of a sorted word into a sorted prefix-part of length `r` and the
/// remaining letters, each split listed once.
fn splits(word: &[Letter], r: usize) -> Vec<(Word, Word)> {
    // Group equal letters, then choose how many of each go left.
    let mut groups: Vec<(Letter, usize)> = Vec::new();
    for &x in word {
        match groups.last_mut() {
            Some((y, c)) if *y == x => *c += 1,
            _ => groups.push((x, 1)),
        }
    }
    let mut out = Vec::new();
    fn rec(groups: &[(Letter, usize)], k: usize, left: usize, l: &mut Word, r: &mut Word, out: &mut Vec<(Word, Word)>) {
        if k == groups.len() {
            if left == 0 {
                out.push((l.clone(), r.clone()));
            }
            return;
        }
        let (x, c) = groups[k];
        for take in 0..=c.min(left) {
            let (ll, rl) = (l.len(), r.len());
            l.extend(std::iter::repeat_n(x, take));
            r.extend(std::iter::repeat_n(x, c - take));
            rec(groups, k + 1, left - take, l, r, out);
            l.truncate(ll);
            r.truncate(rl);
        }
    }
    rec(&groups, 0, r, &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

/// `Δ_{r,s}(Z^{(a)}) = Σ sign(a¹∨a²)·Z^{(a¹)} ⊗ Z^{(a²)}` over splits of `a`.
pub fn div_comult(basis: &SuperBasis, a: &[Letter], r: usize) -> Vec<(Word, Word, i64)> {
    assert!(r <= a.len(), "degree mismatch");
    splits(a, r)
        .into_iter()
        .map(|(l, rr)| {
            let mut w = l.clone();
            w.extend_from_slice(&rr);
            let s = standardize_sign(basis, &w);
            (l, rr, s)
        })
        .collect()
}

/// `Δ(Z^{(a)}) ∈ M^{⊗d}`: the signed sum of all distinct rearrangements of `a`.
pub fn delta_embed(basis: &SuperBasis, a: &[Letter]) -> Vec<(Word, i64)> {
    distinct_permutations(a).into_iter().map(|w| {
        let s = standardize_sign(basis, &w);
        (w, s)
    }).collect()
}

/// `Δ(Z^{(a)})` as an integer vector over tensor words.
pub fn delta_embed_vec(basis: &SuperBasis, a: &[Letter]) -> IntVec<Word> {
    delta_embed(basis, a).into_iter().collect()
}

/// The multiplication `M^{⊗d} → S^d`: the sorted word and its sign, or
/// `None` when an odd letter repeats.
pub fn sym_project(basis: &SuperBasis, w: &[Letter]) -> Option<(Word, i64)> {
    let sign = standardize_sign(basis, w);
    let mut st = w.to_vec();
    st.sort_unstable();
    basis.is_restricted(&st).then_some((st, sign))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mult_examples() {
        let b01 = SuperBasis::standard(0, 1);
        assert_eq!(div_mult(&b01, &[1], &[1]), None);
        let b10 = SuperBasis::standard(1, 0);
        assert_eq!(div_mult(&b10, &[1], &[1]), Some((vec![1, 1], 2)));
        let b20 = SuperBasis::standard(2, 0);
        assert_eq!(div_mult(&b20, &[1], &[2]), Some((vec![1, 2], 1)));
        let b02 = SuperBasis::standard(0, 2);
        assert_eq!(div_mult(&b02, &[2], &[1]), Some((vec![1, 2], -1)));
    }

    #[test]
    fn comult_examples() {
        let b10 = SuperBasis::standard(1, 0);
        assert_eq!(div_comult(&b10, &[1, 1], 2), vec![(vec![1, 1], vec![], 1)]);
        assert_eq!(div_comult(&b10, &[1, 1], 1), vec![(vec![1], vec![1], 1)]);
        let b02 = SuperBasis::standard(0, 2);
        let mut c = div_comult(&b02, &[1, 2], 1);
        c.sort();
        assert_eq!(c, vec![(vec![1], vec![2], 1), (vec![2], vec![1], -1)]);
    }

    #[test]
    fn embed_examples() {
        let b10 = SuperBasis::standard(1, 0);
        assert_eq!(delta_embed(&b10, &[1]), vec![(vec![1], 1)]);
        assert_eq!(delta_embed(&b10, &[1, 1]), vec![(vec![1, 1], 1)]);
        let b02 = SuperBasis::standard(0, 2);
        assert_eq!(delta_embed(&b02, &[1, 2]), vec![(vec![1, 2], 1), (vec![2, 1], -1)]);
    }

    #[test]
    fn project_examples() {
        let b = SuperBasis::standard(2, 0);
        assert_eq!(sym_project(&b, &[1, 2]), Some((vec![1, 2], 1)));
        let b01 = SuperBasis::standard(0, 1);
        assert_eq!(sym_project(&b01, &[1, 1]), None);
        let b02 = SuperBasis::standard(0, 2);
        assert_eq!(sym_project(&b02, &[2, 1]), Some((vec![1, 2], -1)));
    }

    #[test]
    fn divided_basis_sizes() {
        // Γ²(k^{1|1}): X², XY
        assert_eq!(divided_basis(&SuperBasis::standard(1, 1), 2), vec![vec![1, 1], vec![1, 2]]);
        // twisted: X odd, Y even -> XY, Y²
        assert_eq!(divided_basis(&SuperBasis::standard(1, 1).twisted(), 2), vec![vec![1, 2], vec![2, 2]]);
    }
}
