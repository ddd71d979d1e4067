//! Superspace bases, index words and the sign rule for the symmetric group
//! acting on tensor words.
//!
//! Letters are 1-based indices into a [`SuperBasis`]. A permutation acts on
//! the right: `(i.σ)(k) = i(σ(k))`, and moving a word by `σ` costs the Koszul
//! sign of the letters that cross each other.

use std::fmt;

use thiserror::Error;

/// A letter index, `1..=m+n`.
pub type Letter = u8;

/// A word in `I(m|n,d)`.
pub type Word = Vec<Letter>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignError {
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("not a permutation of 1..{0}")]
    NotAPermutation(usize),
}

/// An ordered homogeneous basis of a superspace.
///
/// The standard basis of `k^{m|n}` is `X_1 < .. < X_m < Y_1 < .. < Y_n`. With
/// `pi` set every parity is flipped (the basis of the parity-changed space);
/// the letters themselves do not move.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SuperBasis {
    parity: Vec<u8>,
    pi: bool,
}

impl SuperBasis {
    /// The standard basis of `k^{m|n}`.
    pub fn standard(m: usize, n: usize) -> SuperBasis {
        let mut parity = vec![0; m];
        parity.extend(std::iter::repeat_n(1, n));
        SuperBasis { parity, pi: false }
    }

    /// A basis with the given parities (0 even, 1 odd), letter `k` having `parity[k-1]`.
    pub fn from_parities(parity: Vec<u8>) -> SuperBasis {
        assert!(parity.iter().all(|&p| p <= 1), "parities are 0 or 1");
        SuperBasis { parity, pi: false }
    }

    /// The basis of `M ⊕ N`: the letters of `a` followed by those of `b`.
    pub fn concat(a: &SuperBasis, b: &SuperBasis) -> SuperBasis {
        assert_eq!(a.pi, b.pi, "cannot concatenate a twisted and an untwisted basis");
        let mut parity = a.parity.clone();
        parity.extend_from_slice(&b.parity);
        SuperBasis { parity, pi: a.pi }
    }

    /// The same letters with parities flipped.
    pub fn twisted(&self) -> SuperBasis {
        SuperBasis { parity: self.parity.clone(), pi: !self.pi }
    }

    pub fn is_twisted(&self) -> bool {
        self.pi
    }

    /// Number of letters.
    pub fn len(&self) -> usize {
        self.parity.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parity.is_empty()
    }

    /// Number of letters that are even in the untwisted basis.
    pub fn even_dim(&self) -> usize {
        self.parity.iter().filter(|&&p| p == 0).count()
    }

    /// Number of letters that are odd in the untwisted basis.
    pub fn odd_dim(&self) -> usize {
        self.parity.len() - self.even_dim()
    }

    /// Parity of letter `k` (1-based) in this basis.
    pub fn parity(&self, k: Letter) -> u8 {
        self.parity[k as usize - 1] ^ (self.pi as u8)
    }

    pub fn is_odd(&self, k: Letter) -> bool {
        self.parity(k) == 1
    }

    /// Parity vector of a word.
    pub fn parities(&self, w: &[Letter]) -> Vec<u8> {
        w.iter().map(|&k| self.parity(k)).collect()
    }

    /// Total parity of a word.
    pub fn word_parity(&self, w: &[Letter]) -> u8 {
        w.iter().fold(0, |acc, &k| acc ^ self.parity(k))
    }

    /// Letters `1..=len` in order.
    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        1..=self.parity.len() as Letter
    }

    /// `wt(i)_s` for every letter `s`.
    pub fn weight(&self, w: &[Letter]) -> Vec<usize> {
        let mut wt = vec![0; self.len()];
        for &k in w {
            wt[k as usize - 1] += 1;
        }
        wt
    }

    /// No odd letter occurs twice.
    pub fn is_restricted(&self, w: &[Letter]) -> bool {
        let mut seen = vec![false; self.len()];
        for &k in w {
            if self.is_odd(k) {
                if seen[k as usize - 1] {
                    return false;
                }
                seen[k as usize - 1] = true;
            }
        }
        true
    }
}

/// A permutation of `0..d`, stored as images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(d: usize) -> Perm {
        Perm { images: (0..d).collect() }
    }

    /// From 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Perm, SignError> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &x in &images {
            if x >= d || seen[x] {
                return Err(SignError::NotAPermutation(d));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    /// From 1-based images, as permutations are usually written.
    pub fn from_one_based(images: &[usize]) -> Result<Perm, SignError> {
        if images.contains(&0) {
            return Err(SignError::NotAPermutation(images.len()));
        }
        Perm::from_images(images.iter().map(|x| x - 1).collect())
    }

    /// The permutation of `1..d` with a single cycle (1-based entries).
    pub fn from_cycle(d: usize, cycle: &[usize]) -> Perm {
        let mut images: Vec<usize> = (0..d).collect();
        for (k, &a) in cycle.iter().enumerate() {
            images[a - 1] = cycle[(k + 1) % cycle.len()] - 1;
        }
        Perm { images }
    }

    /// Transposition of the 1-based positions `a` and `b`.
    pub fn transposition(d: usize, a: usize, b: usize) -> Perm {
        let mut p = Perm::identity(d);
        p.images.swap(a - 1, b - 1);
        p
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, k: usize) -> usize {
        self.images[k]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.images.len()];
        for (k, &x) in self.images.iter().enumerate() {
            inv[x] = k;
        }
        Perm { images: inv }
    }

    /// `self ∘ other`, i.e. `k ↦ self(other(k))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm { images: other.images.iter().map(|&k| self.images[k]).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &x)| k == x)
    }

    /// Classical sign.
    pub fn sign(&self) -> i64 {
        sgn(&vec![1; self.len()], self).expect("lengths agree")
    }

    /// Disjoint cycles of length at least two, 1-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut c = Vec::new();
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                c.push(k + 1);
                k = self.images[k];
            }
            out.push(c);
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let s: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", s.join(","))?;
        }
        Ok(())
    }
}

/// `∏ (−1)^{ε_s ε_t}` over pairs `s < t` that `σ` inverts (`σ⁻¹s > σ⁻¹t`).
///
/// `eps` are the parities of the word being moved, indexed by its positions.
pub fn sgn(eps: &[u8], sigma: &Perm) -> Result<i64, SignError> {
    if eps.len() != sigma.len() {
        return Err(SignError::LengthMismatch(eps.len(), sigma.len()));
    }
    let inv = sigma.inverse();
    let mut odd = 0u32;
    for s in 0..eps.len() {
        if eps[s] == 0 {
            continue;
        }
        for (t, &e) in eps.iter().enumerate().skip(s + 1) {
            if e == 1 && inv.images[s] > inv.images[t] {
                odd ^= 1;
            }
        }
    }
    Ok(if odd == 1 { -1 } else { 1 })
}

/// `∏_{s<t} (−1)^{ε_s δ_t}`.
pub fn charge(eps: &[u8], delta: &[u8]) -> Result<i64, SignError> {
    if eps.len() != delta.len() {
        return Err(SignError::LengthMismatch(eps.len(), delta.len()));
    }
    let mut odd = 0u8;
    let mut seen = 0u8;
    for t in 0..eps.len() {
        odd ^= seen & delta[t];
        seen ^= eps[t];
    }
    Ok(if odd & 1 == 1 { -1 } else { 1 })
}

/// `Z^w.σ = ± Z^{w.σ}`: returns `w.σ` and the sign, with parities from `basis`.
pub fn act(basis: &SuperBasis, w: &[Letter], sigma: &Perm) -> Result<(Word, i64), SignError> {
    if w.len() != sigma.len() {
        return Err(SignError::LengthMismatch(w.len(), sigma.len()));
    }
    let moved = sigma.images.iter().map(|&k| w[k]).collect();
    Ok((moved, sgn(&basis.parities(w), sigma)?))
}

/// Sorts `w` stably: returns `st(w)`, the permutation `σ` with `w = st(w).σ`,
/// and the sign `s` with `Z^w = s·Z^{st(w)}`.
pub fn standardize(basis: &SuperBasis, w: &[Letter]) -> (Word, Perm, i64) {
    let mut order: Vec<usize> = (0..w.len()).collect();
    order.sort_by_key(|&k| w[k]);
    let st: Word = order.iter().map(|&k| w[k]).collect();
    // order[r] = position in w of the r-th sorted letter, so σ = order⁻¹.
    let sigma = Perm { images: order }.inverse();
    let sign = sgn(&basis.parities(&st), &sigma).expect("lengths agree");
    (st, sigma, sign)
}

/// Only the sign of [`standardize`], computed by counting crossings of odd letters.
pub fn standardize_sign(basis: &SuperBasis, w: &[Letter]) -> i64 {
    let mut odd = 0u32;
    for s in 0..w.len() {
        if !basis.is_odd(w[s]) {
            continue;
        }
        for t in s + 1..w.len() {
            if w[t] < w[s] && basis.is_odd(w[t]) {
                odd ^= 1;
            }
        }
    }
    if odd == 1 {
        -1
    } else {
        1
    }
}

/// All words of length `d` over `letters` letters, in lex order.
pub fn all_words(letters: usize, d: usize) -> Vec<Word> {
    let mut out = vec![Vec::with_capacity(d)];
    for _ in 0..d {
        let mut next = Vec::with_capacity(out.len() * letters);
        for w in &out {
            for k in 1..=letters as Letter {
                let mut v = w.clone();
                v.push(k);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Weakly increasing words of length `d` over `letters` letters, in lex order.
pub fn sorted_words(letters: usize, d: usize) -> Vec<Word> {
    fn rec(start: Letter, letters: Letter, left: usize, cur: &mut Word, out: &mut Vec<Word>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for k in start..=letters {
            cur.push(k);
            rec(k, letters, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, letters as Letter, d, &mut Vec::new(), &mut out);
    out
}

/// Distinct rearrangements of a word, in lex order.
pub fn distinct_permutations(w: &[Letter]) -> Vec<Word> {
    let mut cur: Word = w.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    // Standard next-permutation walk.
    loop {
        let n = cur.len();
        if n < 2 {
            break;
        }
        let mut i = n - 1;
        while i > 0 && cur[i - 1] >= cur[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = n - 1;
        while cur[j] <= cur[i - 1] {
            j -= 1;
        }
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sgn_examples() {
        let id = Perm::identity(3);
        assert_eq!(sgn(&[1, 0, 1], &id).unwrap(), 1);
        let sw = Perm::transposition(2, 1, 2);
        assert_eq!(sgn(&[1, 1], &sw).unwrap(), -1);
        assert_eq!(sgn(&[1, 0], &sw).unwrap(), 1);
        assert!(sgn(&[1], &sw).is_err());
    }

    #[test]
    fn charge_examples() {
        assert_eq!(charge(&[0, 0, 0], &[1, 1, 1]).unwrap(), 1);
        assert_eq!(charge(&[1, 0], &[0, 1]).unwrap(), -1);
        assert_eq!(charge(&[1, 1], &[1, 1]).unwrap(), -1);
    }

    #[test]
    fn act_examples() {
        let b01 = SuperBasis::standard(0, 1);
        let sw = Perm::transposition(2, 1, 2);
        assert_eq!(act(&b01, &[1, 1], &Perm::identity(2)).unwrap(), (vec![1, 1], 1));
        assert_eq!(act(&b01, &[1, 1], &sw).unwrap(), (vec![1, 1], -1));
        let b11 = SuperBasis::standard(1, 1).twisted();
        assert_eq!(act(&b11, &[1, 2], &sw).unwrap(), (vec![2, 1], 1));
    }

    #[test]
    fn standardize_examples() {
        let b20 = SuperBasis::standard(2, 0);
        let (st, s, e) = standardize(&b20, &[1, 2]);
        assert_eq!((st, s.is_identity(), e), (vec![1, 2], true, 1));
        let (st, s, e) = standardize(&b20, &[2, 1]);
        assert_eq!((st, s, e), (vec![1, 2], Perm::transposition(2, 1, 2), 1));
        let b02 = SuperBasis::standard(0, 2);
        let (st, s, e) = standardize(&b02, &[2, 1]);
        assert_eq!((st, s, e), (vec![1, 2], Perm::transposition(2, 1, 2), -1));
    }

    #[test]
    fn standardize_reconstructs_word() {
        let b = SuperBasis::standard(2, 2);
        for w in all_words(4, 4) {
            let (st, s, e) = standardize(&b, &w);
            let (back, e2) = act(&b, &st, &s).unwrap();
            assert_eq!(back, w);
            assert_eq!(e, e2);
            assert_eq!(e, standardize_sign(&b, &w));
        }
    }

    #[test]
    fn cycle_notation() {
        let p = Perm::from_cycle(5, &[1, 3, 2, 5]);
        assert_eq!(p.to_string(), "(1,3,2,5)");
        assert_eq!(p.inverse().compose(&p), Perm::identity(5));
    }

    #[test]
    fn distinct_rearrangements() {
        assert_eq!(distinct_permutations(&[2, 1, 1]), vec![vec![1, 1, 2], vec![1, 2, 1], vec![2, 1, 1]]);
        assert_eq!(sorted_words(2, 2), vec![vec![1, 1], vec![1, 2], vec![2, 2]]);
    }
}
