//! The Schur superalgebras `S(m|n,d)` and `Q(n,d)` and their actions.
//!
//! `S(m|n,d) = Γ^d End(k^{m|n})` is handled as a divided power algebra over
//! the alphabet of matrix units: the pair `(a, b)` is the letter
//! `(a−1)(m+n) + b`, of parity `|a| + |b|`, so the lex order on pairs is the
//! order of letters. `E^{(i,j)}` is the divided power `Z^{(w)}` of the pair
//! word `w = ((i_1,j_1), .., (i_d,j_d))`; the basis uses sorted, restricted
//! pair words (strict pairs).
//!
//! Operators act on the left by the rule of signs: an operator in position
//! `t` passes the vectors in positions `s < t`.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::exactalg::{kernel_basis, Echelon, Field, IntVec, LinAlgError, Scalar, SparseMat, SparseVec};
use crate::hopf::{delta_embed, div_mult, sym_project};
use crate::schurfun::{Rows, SchurBasis};
use crate::supercore::{charge, sorted_words, standardize_sign, Letter, SuperBasis, Word};

/// A basis label `E^{(i,j)}` of `S(m|n,d)`: a strict pair with its column
/// pairs `(i_k, j_k)` sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OrbitRep {
    pub i: Word,
    pub j: Word,
}

/// An element of `S(m|n,d)` in the orbit basis.
pub type AlgElem = IntVec<OrbitRep>;

/// A basis label `E^{(ε;i,j)}` of `Q(n,d)`: triples `(ε_k, i_k, j_k)` sorted,
/// odd triples distinct.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QOrbitRep {
    pub eps: Vec<u8>,
    pub i: Word,
    pub j: Word,
}

/// The Schur superalgebra `S(m|n,d)` with its matrix-unit alphabet.
#[derive(Debug, Clone)]
pub struct SchurAlgebra {
    m: usize,
    n: usize,
    d: usize,
    space: SuperBasis,
    units: SuperBasis,
}

impl SchurAlgebra {
    pub fn new(m: usize, n: usize, d: usize) -> SchurAlgebra {
        let space = SuperBasis::standard(m, n);
        let size = m + n;
        assert!(size * size <= Letter::MAX as usize, "space too large");
        let mut parity = Vec::with_capacity(size * size);
        for a in space.letters() {
            for b in space.letters() {
                parity.push(space.parity(a) ^ space.parity(b));
            }
        }
        SchurAlgebra { m, n, d, space, units: SuperBasis::from_parities(parity) }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn space(&self) -> &SuperBasis {
        &self.space
    }

    fn size(&self) -> usize {
        self.m + self.n
    }

    fn encode(&self, a: Letter, b: Letter) -> Letter {
        ((a as usize - 1) * self.size() + b as usize) as Letter
    }

    fn decode(&self, u: Letter) -> (Letter, Letter) {
        let k = u as usize - 1;
        ((k / self.size() + 1) as Letter, (k % self.size() + 1) as Letter)
    }

    fn pair_word(&self, i: &[Letter], j: &[Letter]) -> Word {
        i.iter().zip(j).map(|(&a, &b)| self.encode(a, b)).collect()
    }

    fn split(&self, w: &[Letter]) -> (Word, Word) {
        w.iter().map(|&u| self.decode(u)).unzip()
    }

    /// Parity `|i_k| + |j_k|` of each column pair.
    fn pair_parities(&self, i: &[Letter], j: &[Letter]) -> Vec<u8> {
        i.iter().zip(j).map(|(&a, &b)| self.space.parity(a) ^ self.space.parity(b)).collect()
    }

    /// `E^{(i,j)} = sign·E^{(rep)}`, or `None` when `(i,j)` is not strict.
    pub fn canonical(&self, i: &[Letter], j: &[Letter]) -> Option<(OrbitRep, i64)> {
        assert_eq!(i.len(), j.len(), "words of different lengths");
        let w = self.pair_word(i, j);
        let sign = standardize_sign(&self.units, &w);
        let mut st = w;
        st.sort_unstable();
        if !self.units.is_restricted(&st) {
            return None;
        }
        let (i, j) = self.split(&st);
        Some((OrbitRep { i, j }, sign))
    }

    /// The orbit basis of `S(m|n,d)`, in lex order of pair words.
    pub fn basis(&self) -> Vec<OrbitRep> {
        sorted_words(self.units.len(), self.d)
            .into_iter()
            .filter(|w| self.units.is_restricted(w))
            .map(|w| {
                let (i, j) = self.split(&w);
                OrbitRep { i, j }
            })
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.basis().len()
    }

    /// Parity of `E^{(i,j)}`.
    pub fn parity(&self, a: &OrbitRep) -> u8 {
        self.pair_parities(&a.i, &a.j).iter().fold(0, |x, y| x ^ y)
    }

    /// `E^{(μ)}` for a weight `μ ∈ Λ(m|n,d)`.
    pub fn weight_idempotent(&self, mu: &[usize]) -> OrbitRep {
        assert_eq!(mu.len(), self.size(), "weight length");
        assert_eq!(mu.iter().sum::<usize>(), self.d, "weight degree");
        let i: Word = mu.iter().enumerate().flat_map(|(k, &c)| std::iter::repeat_n(k as Letter + 1, c)).collect();
        OrbitRep { i: i.clone(), j: i }
    }

    /// All weights `Λ(m|n,d)` in lex order.
    pub fn weights(&self) -> Vec<Vec<usize>> {
        let mut w: Vec<Vec<usize>> = sorted_words(self.size(), self.d).into_iter().map(|w| self.space.weight(&w)).collect();
        w.sort();
        w
    }

    /// The identity `Σ_μ E^{(μ)}`.
    pub fn identity(&self) -> AlgElem {
        self.weights().iter().map(|mu| (self.weight_idempotent(mu), 1)).collect()
    }

    /// `Δ(E^{(i,j)}) = Σ sgn(i,j;s,t) E^{s,t}` over the orbit, as pair words.
    pub fn orbit(&self, a: &OrbitRep) -> Vec<(Word, Word, i64)> {
        delta_embed(&self.units, &self.pair_word(&a.i, &a.j))
            .into_iter()
            .map(|(w, s)| {
                let (i, j) = self.split(&w);
                (i, j, s)
            })
            .collect()
    }

    /// Sign of `E^{s,t} Z^{l}` for `t = l`: operator parities against the
    /// parities of the input word (in `basis`).
    fn koszul(&self, s: &[Letter], t: &[Letter], basis: &SuperBasis) -> i64 {
        let ops = self.pair_parities(s, t);
        let input = basis.parities(t);
        // ∏_{a<b} (−1)^{ops_b · input_a}
        charge(&input, &ops).expect("same length")
    }

    /// `E^{(i,j)}` as a map on tensor words, indexed by input word.
    pub fn tensor_operator(&self, a: &OrbitRep, twisted: bool) -> TensorOperator {
        let basis = if twisted { self.space.twisted() } else { self.space.clone() };
        let mut by_input: HashMap<Word, Vec<(Word, i64)>> = HashMap::new();
        for (s, t, sign) in self.orbit(a) {
            let c = sign * self.koszul(&s, &t, &basis);
            by_input.entry(t).or_default().push((s, c));
        }
        TensorOperator { by_input }
    }

    /// `E^{(i,j)} Z^{w}` on `M^{⊗d}` (or on `(ΠM)^{⊗d}` when `twisted`).
    pub fn act_tensor(&self, a: &OrbitRep, w: &[Letter], twisted: bool) -> IntVec<Word> {
        self.tensor_operator(a, twisted).apply(w)
    }

    /// `E^{(i,j)}` applied to a vector of tensor words.
    pub fn act_tensor_vec(&self, a: &OrbitRep, v: &IntVec<Word>, twisted: bool) -> IntVec<Word> {
        v.map_linear(|w| self.act_tensor(a, w, twisted))
    }

    /// `E^{(i,j)} ∘ E^{(k,l)}` by the structure constants
    /// `Σ_h sgn(i,j;s,h) sgn(k,l;h,t) chr(h,t;s,h)`.
    pub fn mult(&self, a: &OrbitRep, b: &OrbitRep) -> AlgElem {
        let mut by_first: HashMap<Word, Vec<(Word, i64)>> = HashMap::new();
        for (h, t, sign) in self.orbit(b) {
            by_first.entry(h).or_default().push((t, sign));
        }
        let mut out = IntVec::new();
        for (s, h, sa) in self.orbit(a) {
            let Some(list) = by_first.get(&h) else { continue };
            for (t, sb) in list {
                let w = self.pair_word(&s, t);
                if !w.windows(2).all(|p| p[0] <= p[1]) || !self.units.is_restricted(&w) {
                    continue;
                }
                let eps = self.pair_parities(&h, t);
                let delta = self.pair_parities(&s, &h);
                let chr = charge(&eps, &delta).expect("same length");
                out.add_term(OrbitRep { i: s.clone(), j: t.clone() }, sa * sb * chr);
            }
        }
        out
    }

    /// Bilinear extension of [`SchurAlgebra::mult`].
    pub fn mult_elems(&self, x: &AlgElem, y: &AlgElem) -> AlgElem {
        let mut out = IntVec::new();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                out.add_scaled(&self.mult(a, b), ca * cb);
            }
        }
        out
    }

    /// A basis of `N(m|n,d)`: the `E^{(i,j)}` with `st(i) ≺ st(j)` in lex order,
    /// i.e. those lowering the weight in the order of sorted words.
    pub fn n_basis(&self) -> Vec<OrbitRep> {
        self.basis()
            .into_iter()
            .filter(|a| {
                let mut j = a.j.clone();
                j.sort_unstable();
                a.i < j
            })
            .collect()
    }

    /// Action on `Γ_Π^α(M)`, `α` the row lengths: `E^{(i,j)} Z_Π^{(t)}` as a
    /// combination of row-costandard tableaux.
    ///
    /// Computed as `(−1)^{|a|} Σ_{r ≈_R t} sgn_π(t;r) Σ_{(s,r)∼(i,j)} sgn(i,j;s,r)·κ_π(s,r)`
    /// over row-sorted `s`, `κ_π` being the sign rule against `|r|_π`. The
    /// factor `(−1)^{|a|}` is the action on `ΠM`, `a·πm = (−1)^{|a|} π(am)`.
    pub fn act_divided(&self, a: &OrbitRep, t: &Rows) -> IntVec<Rows> {
        let twisted = self.space.twisted();
        let pi_sign = if self.parity(a) == 1 { -1 } else { 1 };
        let lens: Vec<usize> = t.iter().map(Vec::len).collect();
        let mut rearranged: Vec<(Word, i64)> = vec![(Vec::new(), 1)];
        for row in t {
            let terms = delta_embed(&twisted, row);
            rearranged = rearranged
                .into_iter()
                .flat_map(|(w, c)| {
                    terms.iter().map(move |(x, s)| {
                        let mut v = w.clone();
                        v.extend_from_slice(x);
                        (v, c * s)
                    })
                })
                .collect();
        }
        let words: HashMap<Word, i64> = rearranged.into_iter().collect();
        let mut out = IntVec::new();
        for (s, r, sign) in self.orbit(a) {
            let Some(&c) = words.get(&r) else { continue };
            let Some(rows) = split_sorted_rows(&s, &lens, &twisted) else { continue };
            out.add_term(rows, pi_sign * c * sign * self.koszul(&s, &r, &twisted));
        }
        out
    }

    /// Action on `S^α(M)`: apply to the concatenated rows, then multiply each row.
    pub fn act_symmetric(&self, a: &OrbitRep, rows: &Rows) -> IntVec<Rows> {
        self.tensor_operator(a, false).apply_symmetric(&self.space, rows)
    }

    /// Action of an algebra element on `S^α(M)`.
    pub fn act_symmetric_vec(&self, x: &AlgElem, v: &IntVec<Rows>) -> IntVec<Rows> {
        let mut out = IntVec::new();
        for (a, ca) in x.iter() {
            let op = self.tensor_operator(a, false);
            out.add_scaled(&v.map_linear(|rows| op.apply_symmetric(&self.space, rows)), *ca);
        }
        out
    }
}

/// One basis element `E^{(i,j)}` acting on tensor words.
#[derive(Debug, Clone)]
pub struct TensorOperator {
    by_input: HashMap<Word, Vec<(Word, i64)>>,
}

impl TensorOperator {
    pub fn apply(&self, w: &[Letter]) -> IntVec<Word> {
        self.by_input.get(w).map(|v| v.iter().cloned().collect()).unwrap_or_default()
    }

    /// The action on `S^α(M)` over `basis`, `α` the row lengths of `rows`.
    pub fn apply_symmetric(&self, basis: &SuperBasis, rows: &Rows) -> IntVec<Rows> {
        let lens: Vec<usize> = rows.iter().map(Vec::len).collect();
        let mut out = IntVec::new();
        for (img, c) in self.apply(&rows.concat()).iter() {
            if let Some((r, s)) = multiply_rows(basis, img, &lens) {
                out.add_term(r, c * s);
            }
        }
        out
    }
}

/// Splits a word into rows of the given lengths; `None` unless every row is
/// sorted and restricted in `basis`.
fn split_sorted_rows(w: &[Letter], lens: &[usize], basis: &SuperBasis) -> Option<Rows> {
    let mut rows = Vec::with_capacity(lens.len());
    let mut k = 0;
    for &l in lens {
        let row = &w[k..k + l];
        if !row.windows(2).all(|p| p[0] <= p[1]) || !basis.is_restricted(row) {
            return None;
        }
        rows.push(row.to_vec());
        k += l;
    }
    Some(rows)
}

/// `m: M^{⊗d} → S^α(M)`, row by row.
fn multiply_rows(basis: &SuperBasis, w: &[Letter], lens: &[usize]) -> Option<(Rows, i64)> {
    let mut rows = Vec::with_capacity(lens.len());
    let mut sign = 1;
    let mut k = 0;
    for &l in lens {
        let (r, s) = sym_project(basis, &w[k..k + l])?;
        rows.push(r);
        sign *= s;
        k += l;
    }
    Some((rows, sign))
}

/// All orbit basis elements of `S(m|n,d)`.
pub fn s_basis(m: usize, n: usize, d: usize) -> Vec<OrbitRep> {
    SchurAlgebra::new(m, n, d).basis()
}

/// A linear map on a module given by the images of its basis vectors.
pub type ActionMatrix = Vec<BTreeMap<usize, Scalar>>;

/// The image of `θ̂` was not stable under the action (never expected).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("image not invariant under {0:?}")]
pub struct NotInvariant(pub OrbitRep);

/// A Schur supermodule `Ŝ_λ(M)` with coordinates in its standard basis.
pub struct SchurModule {
    basis: SchurBasis,
    span: Echelon<Rows>,
    field: Field,
}

impl SchurModule {
    pub fn new(basis: SchurBasis, field: Field) -> SchurModule {
        let mut span = Echelon::with_coordinates(field);
        for (_, v) in basis.vectors() {
            span.insert(&v.to_field(field));
        }
        SchurModule { basis, span, field }
    }

    pub fn basis(&self) -> &SchurBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Coordinates of a codomain vector in the standard basis.
    pub fn coordinates(&self, v: &IntVec<Rows>) -> Option<BTreeMap<usize, Scalar>> {
        self.span.solve(&v.to_field(self.field))
    }

    /// The matrix of an algebra element on the module.
    pub fn act(&self, alg: &SchurAlgebra, x: &AlgElem) -> Result<ActionMatrix, NotInvariant> {
        let ops: Vec<(TensorOperator, i64)> = x.iter().map(|(a, &c)| (alg.tensor_operator(a, false), c)).collect();
        let label = || NotInvariant(x.labels().next().cloned().unwrap_or(OrbitRep { i: vec![], j: vec![] }));
        self.basis
            .vectors()
            .par_iter()
            .map(|(_, v)| {
                let mut img = IntVec::new();
                for (op, c) in &ops {
                    img.add_scaled(&v.map_linear(|rows| op.apply_symmetric(alg.space(), rows)), *c);
                }
                self.coordinates(&img).ok_or_else(label)
            })
            .collect()
    }
}

/// The matrix of `E^{(i,j)}` on a Schur supermodule.
pub fn act_schur(alg: &SchurAlgebra, a: &OrbitRep, module: &SchurModule) -> Result<ActionMatrix, NotInvariant> {
    module.act(alg, &IntVec::single(a.clone(), 1)).map_err(|_| NotInvariant(a.clone()))
}

/// Common kernel of a family of action matrices on a space of dimension `dim`.
pub fn n_invariants(actions: &[ActionMatrix], dim: usize, field: Field) -> Result<Vec<SparseVec<usize>>, LinAlgError> {
    let mut rows: BTreeMap<(usize, usize), SparseVec<usize>> = BTreeMap::new();
    for (k, mat) in actions.iter().enumerate() {
        for (col, image) in mat.iter().enumerate() {
            for (&r, c) in image {
                rows.entry((k, r)).or_default().add_entry(col, c);
            }
        }
    }
    let rows: Vec<SparseVec<usize>> = rows.into_values().filter(|r| !r.is_empty()).collect();
    let m = SparseMat::new(field, 0..dim, rows)?;
    kernel_basis(&m)
}

/// Rank of a matrix given by columns.
pub fn matrix_rank(mat: &ActionMatrix, field: Field) -> usize {
    let mut e = Echelon::new(field);
    for col in mat {
        e.insert(&SparseVec::from_pairs(col.iter().map(|(&k, v)| (k, v.clone()))));
    }
    e.rank()
}

/// Applies a matrix to a coordinate vector.
pub fn apply(mat: &ActionMatrix, v: &BTreeMap<usize, Scalar>, field: Field) -> BTreeMap<usize, Scalar> {
    let mut out: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (&k, c) in v {
        for (&r, a) in &mat[k] {
            let e = out.entry(r).or_insert_with(|| Scalar::zero(field));
            *e = &*e + &(c * a);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// The Schur superalgebra `Q(n,d)` inside `S(n|n,d)`.
#[derive(Debug)]
pub struct QAlgebra {
    n: usize,
    d: usize,
    ambient: SchurAlgebra,
    /// The alphabet of generators `E_{ε;i,j}`: letter `ε·n² + (i−1)n + j`, parity `ε`.
    gens: SuperBasis,
    image: OnceLock<(Vec<QOrbitRep>, Echelon<OrbitRep>)>,
}

impl QAlgebra {
    pub fn new(n: usize, d: usize) -> QAlgebra {
        let mut parity = vec![0; n * n];
        parity.extend(std::iter::repeat_n(1, n * n));
        QAlgebra { n, d, ambient: SchurAlgebra::new(n, n, d), gens: SuperBasis::from_parities(parity), image: OnceLock::new() }
    }

    pub fn ambient(&self) -> &SchurAlgebra {
        &self.ambient
    }

    fn decode(&self, u: Letter) -> (u8, Letter, Letter) {
        let k = u as usize - 1;
        let nn = self.n * self.n;
        ((k / nn) as u8, ((k % nn) / self.n + 1) as Letter, (k % self.n + 1) as Letter)
    }

    /// The orbit basis of `Q(n,d)`.
    pub fn basis(&self) -> Vec<QOrbitRep> {
        sorted_words(self.gens.len(), self.d)
            .into_iter()
            .filter(|w| self.gens.is_restricted(w))
            .map(|w| {
                let mut rep = QOrbitRep { eps: vec![], i: vec![], j: vec![] };
                for u in w {
                    let (e, i, j) = self.decode(u);
                    rep.eps.push(e);
                    rep.i.push(i);
                    rep.j.push(j);
                }
                rep
            })
            .collect()
    }

    /// The image of one generator `E_{ε;i,j}` in `End(k^{n|n})`, as unit letters.
    fn generator_image(&self, e: u8, i: Letter, j: Letter) -> [(Letter, Letter); 2] {
        let n = self.n as Letter;
        if e == 0 {
            [(i, j), (n + i, n + j)]
        } else {
            [(i, n + j), (n + i, j)]
        }
    }

    /// `E^{(ε;i,j)}` written in the orbit basis of `S(n|n,d)`.
    ///
    /// The divided power monomial in the generators is mapped factor by
    /// factor: `(x + y)^{(c)} = Σ x^{(a)} y^{(c−a)}` for even generators, and
    /// products are taken in `Γ(End(k^{n|n}))`.
    pub fn embed(&self, q: &QOrbitRep) -> AlgElem {
        let amb = &self.ambient;
        let mut triples: Vec<(u8, Letter, Letter)> = (0..q.eps.len()).map(|k| (q.eps[k], q.i[k], q.j[k])).collect();
        triples.sort_unstable();
        let mut acc: IntVec<Word> = IntVec::single(Vec::new(), 1);
        let mut k = 0;
        while k < triples.len() {
            let mut c = 1;
            while k + c < triples.len() && triples[k + c] == triples[k] {
                c += 1;
            }
            let (e, i, j) = triples[k];
            let [x, y] = self.generator_image(e, i, j);
            let (ux, uy) = (amb.encode(x.0, x.1), amb.encode(y.0, y.1));
            let mut factor: IntVec<Word> = IntVec::new();
            if e == 0 {
                for a in 0..=c {
                    let left = vec![ux; a];
                    let right = vec![uy; c - a];
                    if let Some((w, s)) = div_mult(&amb.units, &left, &right) {
                        factor.add_term(w, s);
                    }
                }
            } else {
                debug_assert_eq!(c, 1, "odd generators occur once");
                factor.add_term(vec![ux], 1);
                factor.add_term(vec![uy], 1);
            }
            let mut next = IntVec::new();
            for (w, cw) in acc.iter() {
                for (f, cf) in factor.iter() {
                    if let Some((p, s)) = div_mult(&amb.units, w, f) {
                        next.add_term(p, cw * cf * s);
                    }
                }
            }
            acc = next;
            k += c;
        }
        acc.iter()
            .map(|(w, &c)| {
                let (i, j) = amb.split(w);
                (OrbitRep { i, j }, c)
            })
            .collect()
    }

    /// `E^{(0;ν)}` for `ν ∈ Λ(n,d)`, as a `Q` label.
    pub fn weight_label(&self, nu: &[usize]) -> QOrbitRep {
        let i: Word = nu.iter().enumerate().flat_map(|(k, &c)| std::iter::repeat_n(k as Letter + 1, c)).collect();
        QOrbitRep { eps: vec![0; self.d], i: i.clone(), j: i }
    }

    /// `E^{(0;ν)}` in `S(n|n,d)`.
    pub fn weight_idempotent(&self, nu: &[usize]) -> AlgElem {
        self.embed(&self.weight_label(nu))
    }

    /// All weights `Λ(n,d)` in lex order.
    pub fn weights(&self) -> Vec<Vec<usize>> {
        let b = SuperBasis::standard(self.n, 0);
        let mut w: Vec<Vec<usize>> = sorted_words(self.n, self.d).into_iter().map(|x| b.weight(&x)).collect();
        w.sort();
        w
    }

    fn image(&self) -> &(Vec<QOrbitRep>, Echelon<OrbitRep>) {
        self.image.get_or_init(|| {
            let basis = self.basis();
            let mut span = Echelon::with_coordinates(Field::Rational);
            for q in &basis {
                span.insert(&self.embed(q).to_field(Field::Rational));
            }
            (basis, span)
        })
    }

    /// Expresses an element of `S(n|n,d)` in the `Q` basis, if it lies in `Q(n,d)`.
    pub fn coordinates(&self, x: &AlgElem) -> Option<BTreeMap<QOrbitRep, Scalar>> {
        let (basis, span) = self.image();
        let coords = span.solve(&x.to_field(Field::Rational))?;
        Some(coords.into_iter().map(|(k, c)| (basis[k].clone(), c)).collect())
    }

    /// `x ∘ y` in `Q(n,d)` over `ℚ`, computed inside `S(n|n,d)`; `None` if the
    /// product leaves the image (never expected).
    pub fn mult(&self, x: &QOrbitRep, y: &QOrbitRep) -> Option<BTreeMap<QOrbitRep, Scalar>> {
        self.coordinates(&self.ambient.mult_elems(&self.embed(x), &self.embed(y)))
    }
}

/// The orbit basis of `Q(n,d)`.
pub fn q_basis(n: usize, d: usize) -> Vec<QOrbitRep> {
    QAlgebra::new(n, d).basis()
}

/// The weights `μ ∈ Λ(n|n,d)` with `μ⁺ + μ⁻ = ν`.
pub fn collapsing_weights(nu: &[usize]) -> Vec<Vec<usize>> {
    let n = nu.len();
    let mut out = vec![Vec::new()];
    for &c in nu {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..=c).map(move |a| {
                    let mut q = p.clone();
                    q.push(a);
                    q
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|plus| {
            let mut mu = plus.clone();
            mu.extend((0..n).map(|k| nu[k] - plus[k]));
            mu
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_sizes() {
        assert_eq!(s_basis(2, 1, 1).len(), 9);
        for d in 1..=4 {
            assert_eq!(s_basis(1, 0, d).len(), 1);
        }
        assert_eq!(s_basis(0, 1, 2).len(), 1);
        assert_eq!(q_basis(1, 1).len(), 2);
        assert_eq!(q_basis(2, 1).len(), 8);
    }

    #[test]
    fn degree_one_action() {
        let alg = SchurAlgebra::new(1, 1, 1);
        for a in alg.basis() {
            for l in 1..=2u8 {
                let v = alg.act_tensor(&a, &[l], false);
                if a.j == [l] {
                    assert_eq!(v, IntVec::single(a.i.clone(), 1));
                } else {
                    assert!(v.is_zero());
                }
            }
        }
    }

    #[test]
    fn idempotents_are_orthogonal_units() {
        let alg = SchurAlgebra::new(1, 1, 2);
        let one = alg.identity();
        for a in alg.basis() {
            let x = IntVec::single(a.clone(), 1);
            assert_eq!(alg.mult_elems(&one, &x), x);
            assert_eq!(alg.mult_elems(&x, &one), x);
        }
        let ws = alg.weights();
        for p in &ws {
            for q in &ws {
                let e = alg.mult(&alg.weight_idempotent(p), &alg.weight_idempotent(q));
                if p == q {
                    assert_eq!(e, IntVec::single(alg.weight_idempotent(p), 1));
                } else {
                    assert!(e.is_zero());
                }
            }
        }
    }

    #[test]
    fn canonical_sign() {
        // ((2,1),(2,1)) over 0|2: odd pairs? (Y2,Y2) and (Y1,Y1) are even pairs.
        let alg = SchurAlgebra::new(0, 2, 2);
        assert_eq!(alg.canonical(&[2, 1], &[2, 1]).unwrap().1, 1);
        // (X1,Y1) twice is not strict.
        let alg = SchurAlgebra::new(1, 1, 2);
        assert!(alg.canonical(&[1, 1], &[2, 2]).is_none());
        // two distinct odd pairs swap with a sign.
        let (rep, s) = alg.canonical(&[2, 1], &[1, 2]).unwrap();
        assert_eq!(rep, OrbitRep { i: vec![1, 2], j: vec![2, 1] });
        assert_eq!(s, -1);
    }

    #[test]
    fn q_closed_with_unit() {
        let q = QAlgebra::new(1, 2);
        let basis = q.basis();
        assert_eq!(basis.len(), 2);
        let one = Scalar::one(Field::Rational);
        let e = q.weight_label(&[2]);
        for x in &basis {
            for y in &basis {
                assert!(q.mult(x, y).is_some());
            }
            let left = q.mult(&e, x).unwrap();
            assert_eq!(left, BTreeMap::from([(x.clone(), one.clone())]));
        }
    }

    #[test]
    fn q_idempotent_images() {
        let q = QAlgebra::new(1, 2);
        let e = q.weight_idempotent(&[2]);
        let amb = q.ambient();
        let expect: AlgElem = collapsing_weights(&[2]).iter().map(|mu| (amb.weight_idempotent(mu), 1)).collect();
        assert_eq!(e, expect);
    }
}
