//! Schur superfunctors evaluated on `k^{m|n}`.
//!
//! The map `θ̂` sends the twisted divided power `Γ_Π` of a shape `D`
//! (one divided power per row) to the symmetric power `S` of the conjugate
//! shape: embed each row into the tensor power, move letters from row order
//! to column order with the sign rule, then multiply inside each column.
//! Every map here preserves the content of a word, so ranks are computed one
//! content block at a time.
//!
//! Naming: `theta_hat(D, ..)` takes the *domain* shape `D`; the Schur module
//! `Ŝ_{λ/μ}` is the image of `theta_hat(λ'/μ')`.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::exactalg::{rank_of_intvecs, Echelon, Field, IntVec, Scalar, SparseVec};
use crate::hopf::{delta_embed, div_comult, div_mult, divided_basis};
use crate::shapes::{quasi_compare, sigma_shape, Partition, Predicate, QuasiOrder, SkewShape, Tableau};
use crate::supercore::{Letter, SuperBasis, Word};

/// A tableau given by its rows; used as a basis label for `Γ_Π^D` and `S^D`.
pub type Rows = Vec<Word>;

/// Sorted multiset of all letters; every map in this module preserves it.
pub fn content(rows: &Rows) -> Word {
    let mut c: Word = rows.iter().flatten().copied().collect();
    c.sort_unstable();
    c
}

/// The sign of identifying `(ΠM)^{⊗p}` with `M^{⊗p}` through `1^{⊗p}`:
/// `∏_{j<k} (−1)^{|w_j|}` with parities taken in `basis`.
pub fn shift_sign(basis: &SuperBasis, w: &[Letter]) -> i64 {
    let p = w.len();
    let odd = w.iter().enumerate().filter(|&(j, &x)| basis.is_odd(x) && (p - 1 - j) % 2 == 1).count();
    if odd % 2 == 1 {
        -1
    } else {
        1
    }
}

/// Basis of `Γ^{D}` over `basis` (rows sorted and restricted), in lex order.
pub fn divided_tableaux(domain: &SkewShape, basis: &SuperBasis) -> Vec<Rows> {
    let mut out: Vec<Rows> = vec![Vec::new()];
    for len in domain.row_lengths() {
        let row_basis = divided_basis(basis, len);
        let mut next = Vec::with_capacity(out.len() * row_basis.len());
        for r in &out {
            for b in &row_basis {
                let mut v = r.clone();
                v.push(b.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Precomputed data for moving a word from row order of `D` to row order of `D'`.
#[derive(Debug, Clone)]
struct ColumnSort {
    /// Column (0-based, among nonempty columns of `D`) of each cell in reading order.
    col_of: Vec<usize>,
    /// Lengths of the rows of `D'`.
    target_lens: Vec<usize>,
}

impl ColumnSort {
    fn new(domain: &SkewShape) -> ColumnSort {
        let conj = domain.conjugate();
        let cells = domain.cells();
        let sigma = sigma_shape(domain);
        let target_lens = conj.row_lengths();
        // Position in column reading order -> target row.
        let mut row_of_pos = Vec::new();
        for (r, &len) in target_lens.iter().enumerate() {
            row_of_pos.extend(std::iter::repeat_n(r, len));
        }
        let col_of = (0..cells.len()).map(|k| row_of_pos[sigma.image(k)]).collect();
        ColumnSort { col_of, target_lens }
    }

    /// Sends `Z^w` (in row order) to `m(Z^w.σ)`: the rows of the conjugate shape,
    /// each sorted, with the accumulated sign; `None` if a target row repeats an
    /// odd letter of `basis`.
    fn apply(&self, basis: &SuperBasis, w: &[Letter]) -> Option<(Rows, i64)> {
        let mut rows: Rows = self.target_lens.iter().map(|&l| Vec::with_capacity(l)).collect();
        for (k, &x) in w.iter().enumerate() {
            rows[self.col_of[k]].push(x);
        }
        let mut odd = 0usize;
        for k in 0..w.len() {
            if !basis.is_odd(w[k]) {
                continue;
            }
            for l in k + 1..w.len() {
                if !basis.is_odd(w[l]) {
                    continue;
                }
                let (a, b) = ((self.col_of[k], w[k]), (self.col_of[l], w[l]));
                if a == b {
                    return None;
                }
                if a > b {
                    odd += 1;
                }
            }
        }
        for r in rows.iter_mut() {
            r.sort_unstable();
        }
        Some((rows, if odd % 2 == 1 { -1 } else { 1 }))
    }
}

/// Expands `Δ_Π` of a domain element into signed tensor words (row order):
/// `Δ` on each row, then `1^{⊗d}` on the whole word.
fn embed_rows(twisted: &SuperBasis, rows: &Rows) -> Vec<(Word, i64)> {
    let mut acc: Vec<(Word, i64)> = vec![(Vec::new(), 1)];
    for row in rows {
        let terms = delta_embed(twisted, row);
        let mut next = Vec::with_capacity(acc.len() * terms.len());
        for (w, c) in &acc {
            for (t, s) in &terms {
                let mut v = w.clone();
                v.extend_from_slice(t);
                next.push((v, c * s));
            }
        }
        acc = next;
    }
    for (w, c) in acc.iter_mut() {
        *c *= shift_sign(twisted, w);
    }
    acc
}

/// The matrix of `θ̂` on the twisted divided power of a domain shape.
#[derive(Debug, Clone)]
pub struct ThetaMatrix {
    domain: SkewShape,
    basis: SuperBasis,
    columns: Vec<(Rows, IntVec<Rows>)>,
    parity_bit: u8,
}

impl ThetaMatrix {
    /// Shape of the Schur module, `λ/μ` (the conjugate of the domain shape).
    pub fn shape(&self) -> SkewShape {
        self.domain.conjugate()
    }

    pub fn domain_shape(&self) -> &SkewShape {
        &self.domain
    }

    pub fn basis(&self) -> &SuperBasis {
        &self.basis
    }

    /// Columns labelled by row-costandard tableaux of the domain shape.
    pub fn columns(&self) -> &[(Rows, IntVec<Rows>)] {
        &self.columns
    }

    /// Parity of the degree; records the odd wrapper on odd-degree rows
    /// without changing coefficients.
    pub fn parity_bit(&self) -> u8 {
        self.parity_bit
    }

    pub fn domain_dim(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, label: &Rows) -> Option<&IntVec<Rows>> {
        self.columns.binary_search_by(|(l, _)| l.cmp(label)).ok().map(|k| &self.columns[k].1)
    }

    /// Rank over `field`, accumulated over content blocks.
    pub fn rank(&self, field: Field) -> usize {
        block_rank(field, self.columns.iter().map(|(l, v)| (content(l), v)))
    }

    /// Rank of the columns selected by `keep`.
    pub fn rank_of(&self, field: Field, keep: impl Fn(&Rows) -> bool) -> usize {
        block_rank(field, self.columns.iter().filter(|(l, _)| keep(l)).map(|(l, v)| (content(l), v)))
    }

    /// Per-content ranks over `field`.
    pub fn block_ranks(&self, field: Field) -> BTreeMap<Word, usize> {
        let blocks = group_blocks(self.columns.iter().map(|(l, v)| (content(l), v)));
        blocks.into_par_iter().map(|(k, vs)| (k, rank_of_intvecs(field, &vs))).collect()
    }
}

fn group_blocks<'a>(items: impl Iterator<Item = (Word, &'a IntVec<Rows>)>) -> BTreeMap<Word, Vec<IntVec<Rows>>> {
    let mut blocks: BTreeMap<Word, Vec<IntVec<Rows>>> = BTreeMap::new();
    for (k, v) in items {
        if !v.is_zero() {
            blocks.entry(k).or_default().push(v.clone());
        }
    }
    blocks
}

fn block_rank<'a>(field: Field, items: impl Iterator<Item = (Word, &'a IntVec<Rows>)>) -> usize {
    let blocks = group_blocks(items);
    blocks.into_par_iter().map(|(_, vs)| rank_of_intvecs(field, &vs)).sum()
}

/// `θ̂` applied to one basis element `Z_Π^{(t)}` of `Γ_Π^D`.
pub fn theta_hat_apply(domain: &SkewShape, basis: &SuperBasis, t: &Rows) -> IntVec<Rows> {
    let sorter = ColumnSort::new(domain);
    theta_apply_with(&sorter, basis, &basis.twisted(), t)
}

fn theta_apply_with(sorter: &ColumnSort, basis: &SuperBasis, twisted: &SuperBasis, t: &Rows) -> IntVec<Rows> {
    let mut out = IntVec::new();
    for (w, c) in embed_rows(twisted, t) {
        if let Some((rows, s)) = sorter.apply(basis, &w) {
            out.add_term(rows, c * s);
        }
    }
    out
}

/// `θ̂` with domain `Γ_Π^D` for the given domain shape.
pub fn theta_hat_domain(domain: &SkewShape, basis: &SuperBasis) -> ThetaMatrix {
    let twisted = basis.twisted();
    let sorter = ColumnSort::new(domain);
    let labels = divided_tableaux(domain, &twisted);
    let columns = labels
        .into_par_iter()
        .map(|t| {
            let v = theta_apply_with(&sorter, basis, &twisted, &t);
            (t, v)
        })
        .collect();
    ThetaMatrix { domain: domain.clone(), basis: basis.clone(), columns, parity_bit: (domain.size() % 2) as u8 }
}

/// `θ̂_{λ/μ}`: domain `Γ_Π^{λ'/μ'}`, codomain `S^{λ/μ}`.
pub fn build_theta_hat(shape: &SkewShape, basis: &SuperBasis) -> ThetaMatrix {
    theta_hat_domain(&shape.conjugate(), basis)
}

/// Label of a column of `◊`: rows `i` and `i+1` of the domain are replaced
/// by the three factors `a, b, c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiamondLabel {
    /// 1-based upper row.
    pub row: usize,
    pub u: usize,
    pub v: usize,
    /// Rows above, then `a`, `b`, `c`, then rows below.
    pub factors: Rows,
}

/// `◊_i(D, u, v)` applied to `Z_Π^{(a,b,c)}` with the other rows fixed.
pub fn diamond_apply(domain: &SkewShape, basis: &SuperBasis, label: &DiamondLabel) -> IntVec<Rows> {
    let twisted = basis.twisted();
    let i = label.row;
    let p1 = domain.row_len(i);
    let (a, b, c) = (&label.factors[i - 1], &label.factors[i], &label.factors[i + 1]);
    let mut out = IntVec::new();
    for (b1, b2, s) in div_comult(&twisted, b, p1 - label.u) {
        let Some((x, cx)) = div_mult(&twisted, a, &b1) else { continue };
        let Some((y, cy)) = div_mult(&twisted, &b2, c) else { continue };
        let mut rows: Rows = label.factors[..i - 1].to_vec();
        rows.push(x);
        rows.push(y);
        rows.extend_from_slice(&label.factors[i + 2..]);
        out.add_term(rows, s * cx * cy);
    }
    out
}

/// Index triples `(i, u, v)` of the summands of `◊` for a domain shape.
pub fn diamond_summands(domain: &SkewShape) -> Vec<(usize, usize, usize)> {
    let (lam, mu) = (domain.lambda(), domain.mu());
    let mut out = Vec::new();
    for i in 1..domain.rows() {
        let bound = lam.part(i + 1) as isize - mu.part(i) as isize;
        for u in 0..bound.max(0) as usize {
            for v in 0..(bound as usize - u) {
                out.push((i, u, v));
            }
        }
    }
    out
}

/// The columns of `◊` on `Γ_Π^D`, as integer vectors over row-costandard labels.
pub fn build_diamond(domain: &SkewShape, basis: &SuperBasis) -> Vec<(DiamondLabel, IntVec<Rows>)> {
    let twisted = basis.twisted();
    let lens = domain.row_lengths();
    let mut labels = Vec::new();
    for (i, u, v) in diamond_summands(domain) {
        let (p1, p2) = (lens[i - 1], lens[i]);
        let mut factor_lens: Vec<usize> = lens[..i - 1].to_vec();
        factor_lens.extend([u, p1 - u + p2 - v, v]);
        factor_lens.extend_from_slice(&lens[i + 1..]);
        let mut acc: Vec<Rows> = vec![Vec::new()];
        for len in factor_lens {
            let fb = divided_basis(&twisted, len);
            acc = acc
                .into_iter()
                .flat_map(|r| {
                    fb.iter().map(move |b| {
                        let mut v = r.clone();
                        v.push(b.clone());
                        v
                    })
                })
                .collect();
        }
        labels.extend(acc.into_iter().map(|factors| DiamondLabel { row: i, u, v, factors }));
    }
    labels
        .into_par_iter()
        .map(|l| {
            let v = diamond_apply(domain, basis, &l);
            (l, v)
        })
        .collect()
}

/// Rank of `◊` over `field`.
pub fn diamond_rank(columns: &[(DiamondLabel, IntVec<Rows>)], field: Field) -> usize {
    block_rank(field, columns.iter().map(|(l, v)| (content(&l.factors), v)))
}

/// The costandard tableaux of the domain shape (parities of the untwisted basis).
pub fn costandard_labels(domain: &SkewShape, basis: &SuperBasis) -> Vec<Rows> {
    crate::shapes::enumerate(domain, basis, Predicate::Costandard).into_iter().map(Tableau::into_rows).collect()
}

/// The standard basis of `Ŝ_{λ/μ}(M)`: `θ̂`-images of costandard tableaux of `λ'/μ'`.
#[derive(Debug, Clone)]
pub struct SchurBasis {
    shape: SkewShape,
    basis: SuperBasis,
    vectors: Vec<(Rows, IntVec<Rows>)>,
}

impl SchurBasis {
    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    pub fn space(&self) -> &SuperBasis {
        &self.basis
    }

    /// Pairs of a costandard tableau of the conjugate shape and its image.
    pub fn vectors(&self) -> &[(Rows, IntVec<Rows>)] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// Failure of the standard basis property (never expected).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("standard basis theorem violated: rank {rank} for {count} costandard tableaux")]
pub struct StandardBasisViolation {
    pub rank: usize,
    pub count: usize,
}

/// Standard basis of `Ŝ_{λ/μ}(M)`, checking independence over `field`.
pub fn schur_basis(shape: &SkewShape, basis: &SuperBasis, field: Field) -> Result<SchurBasis, StandardBasisViolation> {
    let theta = build_theta_hat(shape, basis);
    let labels = costandard_labels(theta.domain_shape(), basis);
    let vectors: Vec<(Rows, IntVec<Rows>)> =
        labels.into_iter().map(|l| {
            let v = theta.column(&l).expect("costandard tableaux are row costandard").clone();
            (l, v)
        }).collect();
    let rank = block_rank(field, vectors.iter().map(|(l, v)| (content(l), v)));
    if rank != vectors.len() {
        return Err(StandardBasisViolation { rank, count: vectors.len() });
    }
    Ok(SchurBasis { shape: shape.clone(), basis: basis.clone(), vectors })
}

/// `θ̌_{λ/μ}`: domain the untwisted `Γ^{λ'/μ'}`, codomain the twisted `S_Π^{λ/μ}`.
pub fn build_theta_check(shape: &SkewShape, basis: &SuperBasis) -> ThetaMatrix {
    let domain = shape.conjugate();
    let twisted = basis.twisted();
    let sorter = ColumnSort::new(&domain);
    let labels = divided_tableaux(&domain, basis);
    let columns = labels
        .into_par_iter()
        .map(|t| {
            let mut out = IntVec::new();
            for (w, c) in embed_rows_untwisted(basis, &t) {
                if let Some((rows, s)) = sorter.apply(&twisted, &w) {
                    let flat: Word = rows.concat();
                    out.add_term(rows, c * s * shift_sign(&twisted, &flat));
                }
            }
            (t, out)
        })
        .collect();
    ThetaMatrix { domain, basis: basis.clone(), columns, parity_bit: (shape.size() % 2) as u8 }
}

fn embed_rows_untwisted(basis: &SuperBasis, rows: &Rows) -> Vec<(Word, i64)> {
    let mut acc: Vec<(Word, i64)> = vec![(Vec::new(), 1)];
    for row in rows {
        let terms = delta_embed(basis, row);
        let mut next = Vec::with_capacity(acc.len() * terms.len());
        for (w, c) in &acc {
            for (t, s) in &terms {
                let mut v = w.clone();
                v.extend_from_slice(t);
                next.push((v, c * s));
            }
        }
        acc = next;
    }
    acc
}

/// Dimension of `Ŝ_{λ/μ}(k^{v|w})`, i.e. of the Schur complex `SC_{λ/μ}(k^v, k^w)`.
pub fn schur_complex_dim(shape: &SkewShape, v_dim: usize, w_dim: usize) -> usize {
    schur_dim(shape, &SuperBasis::standard(v_dim, w_dim), Field::Rational)
}

/// `dim Ŝ_{λ/μ}(M)` over `field`.
pub fn schur_dim(shape: &SkewShape, basis: &SuperBasis, field: Field) -> usize {
    build_theta_hat(shape, basis).rank(field)
}

/// Straightening modulo the image of `◊` on `Γ_Π^D`.
///
/// Results are memoized, so one instance should be reused for many tableaux
/// of the same shape and space.
pub struct Straightener {
    domain: SkewShape,
    basis: SuperBasis,
    memo: HashMap<Rows, IntVec<Rows>>,
}

/// Why a tableau could not be straightened.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StraightenError {
    #[error("tableau is not row costandard")]
    NotRowCostandard,
    #[error("leading coefficient is {0}, expected ±1")]
    LeadingCoefficient(i64),
    #[error("exchanged tableau does not precede the original")]
    NotSmaller,
}

/// One straightening step: the `◊` column used and the other terms of its image.
#[derive(Debug, Clone)]
pub struct StraightenStep {
    pub label: DiamondLabel,
    /// `t ≡ Σ coeff·t_l` modulo `Im ◊`.
    pub rewrite: IntVec<Rows>,
}

impl Straightener {
    pub fn new(domain: &SkewShape, basis: &SuperBasis) -> Straightener {
        Straightener { domain: domain.clone(), basis: basis.clone(), memo: HashMap::new() }
    }

    fn is_row_costandard(&self, t: &Rows) -> bool {
        let tw = self.basis.twisted();
        t.len() == self.domain.rows()
            && t.iter().enumerate().all(|(i, r)| r.len() == self.domain.row_len(i + 1))
            && t.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]) && tw.is_restricted(r))
    }

    /// First violation of column costandardness: rows `(i, i+1)` and column `j0`.
    fn violation(&self, t: &Rows) -> Option<(usize, usize)> {
        let mu = self.domain.mu();
        let lam = self.domain.lambda();
        for i in 1..self.domain.rows() {
            let lo = mu.part(i).max(mu.part(i + 1)) + 1;
            for j in lo..=lam.part(i + 1) {
                let x = t[i - 1][j - mu.part(i) - 1];
                let y = t[i][j - mu.part(i + 1) - 1];
                if x > y || (x == y && self.basis.is_odd(x)) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// The single rewriting step for a row-costandard, non-costandard `t`.
    pub fn step(&self, t: &Rows) -> Result<Option<StraightenStep>, StraightenError> {
        if !self.is_row_costandard(t) {
            return Err(StraightenError::NotRowCostandard);
        }
        let Some((i, j0)) = self.violation(t) else { return Ok(None) };
        let (mu, lam) = (self.domain.mu(), self.domain.lambda());
        let (mi, mi1) = (mu.part(i), mu.part(i + 1));
        let (top, bot) = (&t[i - 1], &t[i]);
        let col = |row: &Word, m: usize, j: usize| row[j - m - 1];
        let mut r = 0;
        while j0 + r < lam.part(i + 1) && col(bot, mi1, j0 + r + 1) == col(bot, mi1, j0) {
            r += 1;
        }
        let u = j0 - mi - 1;
        let v = lam.part(i + 1) - j0;
        let a: Word = top[..u].to_vec();
        let mut b: Word = top[u..].to_vec();
        b.extend_from_slice(&bot[..j0 + r - mi1]);
        b.sort_unstable();
        let c: Word = bot[j0 + r - mi1..].to_vec();
        let mut factors: Rows = t[..i - 1].to_vec();
        factors.extend([a, b, c]);
        factors.extend_from_slice(&t[i + 1..]);
        let label = DiamondLabel { row: i, u, v: v - r, factors };
        let image = diamond_apply(&self.domain, &self.basis, &label);
        let lead = image.get(t);
        if lead.abs() != 1 {
            return Err(StraightenError::LeadingCoefficient(lead));
        }
        let mut rewrite = IntVec::new();
        for (s, c) in image.iter() {
            if s != t {
                rewrite.add_term(s.clone(), -lead * c);
            }
        }
        Ok(Some(StraightenStep { label, rewrite }))
    }

    /// Expansion of `Z_Π^{(t)}` modulo `Im ◊` in costandard tableaux.
    pub fn straighten(&mut self, t: &Rows) -> Result<IntVec<Rows>, StraightenError> {
        if let Some(v) = self.memo.get(t) {
            return Ok(v.clone());
        }
        let out = match self.step(t)? {
            None => IntVec::single(t.clone(), 1),
            Some(step) => {
                let tt = Tableau::new(self.domain.clone(), t.clone()).expect("shape checked");
                let mut acc = IntVec::new();
                for (s, c) in step.rewrite.iter() {
                    let ts = Tableau::new(self.domain.clone(), s.clone()).expect("same shape");
                    if quasi_compare(&ts, &tt) != Ok(QuasiOrder::Less) {
                        return Err(StraightenError::NotSmaller);
                    }
                    let sub = self.straighten(s)?;
                    acc.add_scaled(&sub, *c);
                }
                acc
            }
        };
        self.memo.insert(t.clone(), out.clone());
        Ok(out)
    }
}

/// Spans of `◊` columns per content block, for membership tests.
pub struct DiamondSpan {
    blocks: HashMap<Word, Echelon<Rows>>,
    field: Field,
}

impl DiamondSpan {
    pub fn new(columns: &[(DiamondLabel, IntVec<Rows>)], field: Field) -> DiamondSpan {
        let mut grouped: HashMap<Word, Vec<&IntVec<Rows>>> = HashMap::new();
        for (l, v) in columns {
            if !v.is_zero() {
                grouped.entry(content(&l.factors)).or_default().push(v);
            }
        }
        let blocks = grouped
            .into_par_iter()
            .map(|(k, vs)| {
                let mut e = Echelon::new(field);
                for v in vs {
                    e.insert(&v.to_field(field));
                }
                (k, e)
            })
            .collect();
        DiamondSpan { blocks, field }
    }

    /// Whether an integer vector over a single content block lies in `Im ◊`.
    pub fn contains(&self, v: &IntVec<Rows>) -> bool {
        let Some(first) = v.labels().next() else { return true };
        match self.blocks.get(&content(first)) {
            Some(e) => e.contains(&v.to_field(self.field)),
            None => v.is_zero(),
        }
    }
}

/// One line of a filtration report.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct FiltrationRow {
    /// The partition `ξ` with `μ ⊂ ξ ⊂ λ` (domain indexing).
    pub xi: Partition,
    /// `dim L_ξ`.
    pub dim_l: usize,
    /// `dim L_ξ − dim L̇_ξ`.
    pub dim_graded: usize,
    /// `dim Ŝ(ξ/μ)(M) · dim Ŝ(λ/ξ)(N)` in the same indexing.
    pub expected: usize,
}

/// Filtration of the Schur module with domain `Γ_Π^{λ/μ}(M ⊕ N)`, one row per
/// partition `μ ⊂ ξ ⊂ λ` in lex order.
///
/// The letters of `M` come first. `L_ξ` is the image of the row-costandard
/// tableaux whose `M`-part is a partition `⪰ ξ`, and `L̇_ξ` uses `≻ ξ`;
/// straightening only raises the `M`-part, so these spans are nested. Each
/// graded piece is compared with the product of the modules with domains
/// `Γ_Π^{ξ/μ}(M)` and `Γ_Π^{λ/ξ}(N)`. Also returns the total dimension.
pub fn filtration_report(domain: &SkewShape, m: &SuperBasis, n: &SuperBasis, field: Field) -> (Vec<FiltrationRow>, usize) {
    let w = SuperBasis::concat(m, n);
    let r = m.len() as Letter;
    let theta = theta_hat_domain(domain, &w);
    let total = theta.rank(field);
    let mu = domain.mu().clone();
    let kappa = |t: &Rows| -> Option<Partition> {
        let k: Vec<usize> = (1..=domain.rows()).map(|i| mu.part(i) + t[i - 1].iter().filter(|&&x| x <= r).count()).collect();
        Partition::new(k).ok()
    };
    let xis = Partition::between(&mu, domain.lambda());
    let dims: Vec<usize> = xis.iter().map(|xi| theta.rank_of(field, |t| kappa(t).is_some_and(|k| &k >= xi))).collect();
    let rows = xis
        .into_iter()
        .enumerate()
        .map(|(k, xi)| {
            let lower = SkewShape::new(xi.clone(), mu.clone()).expect("between");
            let upper = SkewShape::new(domain.lambda().clone(), xi.clone()).expect("between");
            let expected = theta_hat_domain(&lower, m).rank(field) * theta_hat_domain(&upper, n).rank(field);
            let above = dims.get(k + 1).copied().unwrap_or(0);
            FiltrationRow { xi, dim_l: dims[k], dim_graded: dims[k] - above, expected }
        })
        .collect();
    (rows, total)
}

/// Checks that `θ̂` with domain `Γ_Π^D` factors through rows `i, i+1`:
/// apply the tensor product of the `θ̂` maps on the rows above, on rows
/// `i, i+1` and on the rows below (each of parity its degree), then multiply
/// the three symmetric tensors column by column.
pub fn factorization_check(domain: &SkewShape, basis: &SuperBasis, i: usize) -> bool {
    if i == 0 || i >= domain.rows() {
        return true;
    }
    let (lam, mu) = (domain.lambda().parts(), domain.mu());
    let mu_parts: Vec<usize> = (1..=domain.rows()).map(|k| mu.part(k)).collect();
    let piece = |a: usize, b: usize| {
        SkewShape::from_parts(&lam[a..b], &mu_parts[a..b]).expect("sub-shape of a skew shape")
    };
    let pieces = [piece(0, i - 1), piece(i - 1, i + 1), piece(i + 1, domain.rows())];
    let full = theta_hat_domain(domain, basis);
    let ncols = domain.conjugate().rows();
    for (t, expected) in full.columns() {
        let parts = [t[..i - 1].to_vec(), t[i - 1..i + 1].to_vec(), t[i + 1..].to_vec()];
        let images: Vec<IntVec<Rows>> =
            pieces.iter().zip(parts.iter()).map(|(s, p)| theta_hat_apply(s, basis, p)).collect();
        // Koszul sign of applying a tensor product of maps of parity `deg mod 2`.
        let twisted = basis.twisted();
        let par = |p: &Rows| p.iter().flatten().filter(|&&x| twisted.is_odd(x)).count();
        let degs: Vec<usize> = parts.iter().map(|p| p.iter().map(Vec::len).sum()).collect();
        let koszul = (par(&parts[0]) * (degs[1] + degs[2]) + par(&parts[1]) * degs[2]) % 2;
        let outer = if koszul == 1 { -1 } else { 1 };
        let mut got = IntVec::new();
        for (x, cx) in images[0].iter() {
            for (y, cy) in images[1].iter() {
                for (z, cz) in images[2].iter() {
                    if let Some((rows, s)) = multiply_columns(basis, &[x, y, z], ncols) {
                        got.add_term(rows, outer * cx * cy * cz * s);
                    }
                }
            }
        }
        if &got != expected {
            return false;
        }
    }
    true
}

/// `γ`: `S^{α¹} ⊗ S^{α²} ⊗ S^{α³} → S^{α¹+α²+α³}`, by supertwists and multiplication.
fn multiply_columns(basis: &SuperBasis, blocks: &[&Rows], ncols: usize) -> Option<(Rows, i64)> {
    let mut word = Vec::new();
    let mut keys = Vec::new();
    for b in blocks {
        for (j, col) in b.iter().enumerate() {
            for &x in col {
                word.push(x);
                keys.push((j, x));
            }
        }
    }
    let mut odd = 0usize;
    for k in 0..word.len() {
        if !basis.is_odd(word[k]) {
            continue;
        }
        for l in k + 1..word.len() {
            if basis.is_odd(word[l]) {
                if keys[k] == keys[l] {
                    return None;
                }
                if keys[k] > keys[l] {
                    odd += 1;
                }
            }
        }
    }
    let mut rows: Rows = vec![Vec::new(); ncols];
    for (j, x) in keys {
        rows[j].push(x);
    }
    for r in rows.iter_mut() {
        r.sort_unstable();
    }
    Some((rows, if odd % 2 == 1 { -1 } else { 1 }))
}

/// Evaluates an integer combination of domain elements under `θ̂`.
pub fn theta_of_combination(theta: &ThetaMatrix, v: &IntVec<Rows>) -> IntVec<Rows> {
    let mut out = IntVec::new();
    for (l, c) in v.iter() {
        let col = match theta.column(l) {
            Some(col) => col.clone(),
            None => theta_hat_apply(theta.domain_shape(), theta.basis(), l),
        };
        out.add_scaled(&col, *c);
    }
    out
}

/// Converts an integer vector to field coordinates.
pub fn to_field_vec(v: &IntVec<Rows>, field: Field) -> SparseVec<Rows> {
    v.to_field(field)
}

/// Scalar helper used by reports.
pub fn scalar(field: Field, n: i64) -> Scalar {
    Scalar::from_i64(field, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sh(s: &str) -> SkewShape {
        s.parse().unwrap()
    }

    #[test]
    fn single_box_is_signed_identity() {
        for (m, n) in [(1, 0), (0, 1), (2, 1), (1, 2)] {
            let b = SuperBasis::standard(m, n);
            let t = build_theta_hat(&sh("1"), &b);
            assert_eq!(t.domain_dim(), m + n);
            assert_eq!(t.rank(Field::Rational), m + n);
            for (l, v) in t.columns() {
                assert_eq!(v.len(), 1);
                assert_eq!(v.get(l).abs(), 1);
            }
        }
    }

    #[test]
    fn row_of_two_over_one_one() {
        let b = SuperBasis::standard(1, 1);
        assert_eq!(build_theta_hat(&sh("2"), &b).rank(Field::Rational), 2);
        assert_eq!(costandard_labels(&sh("1,1"), &b).len(), 2);
    }

    #[test]
    fn disjoint_columns_give_injective_map() {
        // Domain (2,1)/(1) has rows that share no column.
        let b = SuperBasis::standard(1, 1);
        let d = sh("2,1/1");
        let t = theta_hat_domain(&d, &b);
        assert_eq!(t.rank(Field::Rational), t.domain_dim());
    }

    #[test]
    fn diamond_examples() {
        assert!(build_diamond(&sh("3"), &SuperBasis::standard(2, 1)).is_empty());
        let one = build_diamond(&sh("1,1"), &SuperBasis::standard(1, 0));
        assert!(one.iter().all(|(_, v)| v.is_zero()));
        let two = build_diamond(&sh("1,1"), &SuperBasis::standard(2, 0));
        let nonzero: Vec<_> = two.iter().filter(|(_, v)| !v.is_zero()).collect();
        assert_eq!(nonzero.len(), 1);
        let v = &nonzero[0].1;
        assert_eq!(v.get(&vec![vec![1], vec![2]]), -v.get(&vec![vec![2], vec![1]]));
    }

    #[test]
    fn straighten_two_boxes() {
        let b = SuperBasis::standard(2, 0);
        let mut s = Straightener::new(&sh("1,1"), &b);
        let out = s.straighten(&vec![vec![2], vec![1]]).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out.get(&vec![vec![1], vec![2]]).abs(), 1);
        let fixed = s.straighten(&vec![vec![1], vec![2]]).unwrap();
        assert_eq!(fixed, IntVec::single(vec![vec![1], vec![2]], 1));
    }

    #[test]
    fn kernel_contains_diamond_small() {
        for d in 1..=3 {
            for shape in SkewShape::all_tight(d) {
                for (m, n) in [(1, 1), (2, 1), (1, 2)] {
                    let b = SuperBasis::standard(m, n);
                    let theta = theta_hat_domain(&shape, &b);
                    for (l, col) in build_diamond(&shape, &b) {
                        let img = theta_of_combination(&theta, &col);
                        assert!(img.is_zero(), "{shape} {m}|{n} {l:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn factorization_small() {
        assert!(factorization_check(&sh("3"), &SuperBasis::standard(1, 1), 1));
        assert!(factorization_check(&sh("1,1"), &SuperBasis::standard(1, 1), 1));
        assert!(factorization_check(&sh("2,1"), &SuperBasis::standard(2, 0), 1));
        assert!(factorization_check(&sh("2,2,1"), &SuperBasis::standard(1, 1), 2));
    }

    #[test]
    fn filtration_single_box() {
        let m = SuperBasis::standard(1, 1);
        let n = SuperBasis::standard(1, 0);
        let (rows, total) = filtration_report(&sh("1"), &m, &n, Field::Rational);
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].dim_graded, 1);
        assert_eq!(rows[0].dim_l, 3);
        assert_eq!(rows[1].dim_graded, 2);
        assert_eq!(total, 3);
        assert!(rows.iter().all(|r| r.dim_graded == r.expected));
    }
}
