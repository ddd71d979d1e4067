//! End-to-end acceptance run: one PASS/FAIL line per criterion.
//!
//! Expected values come from oracles written here (brute-force tableau
//! counts, the hook-content formula, the tableau expansion of hook Schur
//! functions, the coproduct of the symmetric algebra) rather than from the
//! library routines under test.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use rayon::prelude::*;

use superschur::chars::{hall_littlewood, hook_schur, schur_character, type_ii_character, MultiPoly};
use superschur::exactalg::{Field, IntVec};
use superschur::hopf::{div_mult, divided_basis};
use superschur::schuralg::SchurAlgebra;
use superschur::schurfun::{
    build_diamond, build_theta_hat, diamond_rank, filtration_report, theta_hat_domain, theta_of_combination, DiamondSpan,
    Rows, Straightener,
};
use superschur::shapes::{enumerate, quasi_compare, Partition, Predicate, QuasiOrder, SkewShape, Tableau};
use superschur::supercore::{Letter, SuperBasis, Word};
use superschur::verify::{canonical_tableau, check_schur_algebra, invariant_report};

const FIELDS: [Field; 3] = [Field::Rational, Field::Prime(3), Field::Prime(5)];

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(failures: Vec<String>, cases: usize) -> Outcome {
        let detail = match failures.first() {
            None => format!("{cases} cases"),
            Some(f) => format!("{} of {cases} cases failed, first: {f}", failures.len()),
        };
        Outcome { passed: failures.is_empty(), detail }
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of multisets of size `k` from `n` items.
fn multichoose(n: u64, k: u64) -> u64 {
    if k == 0 {
        1
    } else if n == 0 {
        0
    } else {
        binomial(n + k - 1, k)
    }
}

/// `dim Γ^d` of a superspace with `even | odd` basis letters.
fn gamma_dim(even: u64, odd: u64, d: u64) -> u64 {
    (0..=d.min(odd)).map(|k| binomial(odd, k) * multichoose(even, d - k)).sum()
}

/// Counts fillings of `shape` with letters `1..=m+n` (the first `m` even)
/// whose rows and columns weakly increase, with equal neighbours in a row
/// allowed only for letters of parity `row_repeat` and in a column only for
/// the other parity.
fn count_fillings(shape: &SkewShape, m: usize, n: usize, row_repeat: u8) -> usize {
    let cells = shape.cells();
    let parity = |x: Letter| u8::from(x as usize > m);
    let mut filled: BTreeMap<(usize, usize), Letter> = BTreeMap::new();
    fn go(
        k: usize,
        cells: &[(usize, usize)],
        filled: &mut BTreeMap<(usize, usize), Letter>,
        top: Letter,
        ok: &dyn Fn(Letter, Letter, bool) -> bool,
    ) -> usize {
        if k == cells.len() {
            return 1;
        }
        let (i, j) = cells[k];
        let mut total = 0;
        for x in 1..=top {
            let left = filled.get(&(i, j.wrapping_sub(1))).copied();
            let up = filled.get(&(i.wrapping_sub(1), j)).copied();
            if left.is_some_and(|l| !ok(l, x, true)) || up.is_some_and(|u| !ok(u, x, false)) {
                continue;
            }
            filled.insert((i, j), x);
            total += go(k + 1, cells, filled, top, ok);
            filled.remove(&(i, j));
        }
        total
    }
    let ok = |prev: Letter, x: Letter, in_row: bool| {
        prev < x || (prev == x && (parity(x) == row_repeat) == in_row)
    };
    go(0, &cells, &mut filled, (m + n) as Letter, &ok)
}

fn tight_cases(max_deg: usize, max_dim: usize) -> Vec<(SkewShape, usize, usize)> {
    let mut out = Vec::new();
    for d in 1..=max_deg {
        for shape in SkewShape::all_tight(d) {
            for m in 0..=max_dim {
                for n in 0..=max_dim {
                    if m + n >= 1 {
                        out.push((shape.clone(), m, n));
                    }
                }
            }
        }
    }
    out
}

/// Standard basis theorem over three fields.
fn criterion_1() -> Outcome {
    let cases = tight_cases(5, 3);
    let failures: Vec<String> = cases
        .par_iter()
        .flat_map(|(shape, m, n)| {
            let basis = SuperBasis::standard(*m, *n);
            let theta = theta_hat_domain(shape, &basis);
            let diamond = build_diamond(shape, &basis);
            let costandard = count_fillings(shape, *m, *n, 1);
            let domain: u64 =
                shape.row_lengths().iter().map(|&r| gamma_dim(*n as u64, *m as u64, r as u64)).product();
            let mut bad = Vec::new();
            if theta.domain_dim() as u64 != domain {
                bad.push(format!("{shape} {m}|{n}: domain {} vs {domain}", theta.domain_dim()));
            }
            for f in FIELDS {
                let r = theta.rank(f);
                let rd = diamond_rank(&diamond, f);
                if r != costandard || domain as usize - rd != costandard {
                    bad.push(format!("{shape} {m}|{n} {f}: rank {r}, costandard {costandard}, domain {domain}, rank diamond {rd}"));
                }
            }
            bad
        })
        .collect();
    Outcome::new(failures, cases.len() * FIELDS.len())
}

/// The composite of the diamond map and theta vanishes.
fn criterion_2() -> Outcome {
    let cases = tight_cases(5, 3);
    let failures: Vec<String> = cases
        .par_iter()
        .filter_map(|(shape, m, n)| {
            let basis = SuperBasis::standard(*m, *n);
            let theta = theta_hat_domain(shape, &basis);
            let bad = build_diamond(shape, &basis)
                .iter()
                .filter(|(_, col)| !theta_of_combination(&theta, col).is_zero())
                .count();
            (bad > 0).then(|| format!("{shape} {m}|{n}: {bad} nonzero columns"))
        })
        .collect();
    Outcome::new(failures, cases.len())
}

/// Straightening terminates, strictly lowers tableaux, and changes by an element of the diamond image.
fn criterion_3() -> Outcome {
    let cases = tight_cases(5, 3);
    let counted: Vec<(usize, Vec<String>)> = cases
        .par_iter()
        .map(|(shape, m, n)| {
            let basis = SuperBasis::standard(*m, *n);
            let span = DiamondSpan::new(&build_diamond(shape, &basis), Field::Rational);
            let mut st = Straightener::new(shape, &basis);
            let mut bad = Vec::new();
            let mut count = 0;
            for t in enumerate(shape, &basis.twisted(), Predicate::RowStandard) {
                if t.satisfies(&basis, Predicate::Costandard) {
                    continue;
                }
                count += 1;
                let rows: Rows = t.rows().to_vec();
                let out = match st.straighten(&rows) {
                    Ok(v) => v,
                    Err(e) => {
                        bad.push(format!("{shape} {m}|{n} {t}: {e}"));
                        continue;
                    }
                };
                for s in out.labels() {
                    let ts = Tableau::new(shape.clone(), s.clone()).expect("shape");
                    if !ts.satisfies(&basis, Predicate::Costandard) || quasi_compare(&ts, &t) != Ok(QuasiOrder::Less) {
                        bad.push(format!("{shape} {m}|{n} {t}: output {ts}"));
                    }
                }
                let mut diff: IntVec<Rows> = out.clone();
                diff.add_term(rows, -1);
                if !span.contains(&diff) {
                    bad.push(format!("{shape} {m}|{n} {t}: difference outside the diamond image"));
                }
            }
            (count, bad)
        })
        .collect();
    let total = counted.iter().map(|(c, _)| c).sum();
    Outcome::new(counted.into_iter().flat_map(|(_, b)| b).collect(), total)
}

/// Graded pieces of the filtration on a direct sum.
fn criterion_4() -> Outcome {
    let spaces: Vec<(usize, usize)> = (0..=2).flat_map(|m| (0..=2).map(move |n| (m, n))).filter(|&(m, n)| m + n >= 1).collect();
    let mut cases = Vec::new();
    for d in 1..=4 {
        for shape in SkewShape::all_tight(d) {
            for &a in &spaces {
                for &b in &spaces {
                    cases.push((shape.clone(), a, b));
                }
            }
        }
    }
    let failures: Vec<String> = cases
        .par_iter()
        .filter_map(|(shape, (m1, n1), (m2, n2))| {
            let (rows, total) =
                filtration_report(shape, &SuperBasis::standard(*m1, *n1), &SuperBasis::standard(*m2, *n2), Field::Rational);
            let sum: usize = rows.iter().map(|r| r.expected).sum();
            let pieces_ok = rows.iter().all(|r| r.dim_graded == r.expected);
            // The total is also the costandard count over the sum of the two spaces.
            let oracle = count_fillings(shape, m1 + m2, n1 + n2, 1);
            let merged_ok = oracle == rank_over_sum(shape, (*m1, *n1), (*m2, *n2));
            (!(pieces_ok && sum == total && total == oracle && merged_ok))
                .then(|| format!("{shape} {m1}|{n1} + {m2}|{n2}: sum {sum}, total {total}, tableaux {oracle}"))
        })
        .collect();
    Outcome::new(failures, cases.len())
}

fn rank_over_sum(shape: &SkewShape, a: (usize, usize), b: (usize, usize)) -> usize {
    let w = SuperBasis::concat(&SuperBasis::standard(a.0, a.1), &SuperBasis::standard(b.0, b.1));
    // Reordering letters does not change the dimension.
    theta_hat_domain(shape, &w).rank(Field::Rational)
}

/// `hs_λ(x; y)` as a sum over `(m|n)`-semistandard tableaux of shape `λ`.
fn hook_schur_oracle(lambda: &Partition, m: usize, n: usize) -> MultiPoly {
    let shape = SkewShape::straight(lambda.clone());
    let cells = shape.cells();
    let mut out = MultiPoly::zero(m, n);
    let mut filling: Vec<Letter> = Vec::with_capacity(cells.len());
    fn go(k: usize, cells: &[(usize, usize)], filling: &mut Vec<Letter>, m: usize, n: usize, out: &mut MultiPoly) {
        if k == cells.len() {
            let mut exps = vec![0u32; m + n];
            for &x in filling.iter() {
                exps[x as usize - 1] += 1;
            }
            out.add_term(exps, 1);
            return;
        }
        let (i, j) = cells[k];
        let at = |i: usize, j: usize| cells[..k].iter().position(|&c| c == (i, j)).map(|p| filling[p]);
        let (left, up) = (at(i, j.wrapping_sub(1)), at(i.wrapping_sub(1), j));
        for x in 1..=(m + n) as Letter {
            let odd = x as usize > m;
            let left_ok = left.is_none_or(|l| l < x || (l == x && !odd));
            let up_ok = up.is_none_or(|u| u < x || (u == x && odd));
            if left_ok && up_ok {
                filling.push(x);
                go(k + 1, cells, filling, m, n, out);
                filling.pop();
            }
        }
    }
    go(0, &cells, &mut filling, m, n, &mut out);
    out
}

/// Type I and type II characters.
fn criterion_5() -> Outcome {
    let lams: Vec<Partition> = (0..=4).flat_map(Partition::all_of_size).collect();
    let mut failures = Vec::new();
    let mut cases = 0;
    for lam in &lams {
        for m in 0..=2 {
            for n in 0..=2 {
                cases += 1;
                let oracle = hook_schur_oracle(lam, m, n);
                let ch = schur_character(lam, m, n, Field::Rational);
                if ch != oracle || hook_schur(lam, m, n) != oracle {
                    failures.push(format!("type I {lam} {m}|{n}: {ch} vs {oracle}"));
                }
            }
        }
        for n in 0..=2 {
            cases += 1;
            let oracle = hook_schur_oracle(lam, n, n).identify_y_with_x();
            match type_ii_character(lam, n) {
                Ok(ch) if ch == oracle && hall_littlewood(lam, n) == oracle => {}
                Ok(ch) => failures.push(format!("type II {lam} {n}|{n}: {ch} vs {oracle}")),
                Err(e) => failures.push(format!("type II {lam} {n}|{n}: {e}")),
            }
        }
    }
    Outcome::new(failures, cases)
}

/// Structure constants of the Schur superalgebra.
fn criterion_6() -> Outcome {
    let mut failures = Vec::new();
    let triples = [(1, 1, 2), (2, 1, 2), (1, 1, 3)];
    for &(m, n, d) in &triples {
        let alg = SchurAlgebra::new(m, n, d);
        let (even, odd) = ((m * m + n * n) as u64, (2 * m * n) as u64);
        if alg.dim() as u64 != gamma_dim(even, odd, d as u64) {
            failures.push(format!("S({m}|{n},{d}): dimension {}", alg.dim()));
        }
        let mut sum: IntVec<_> = IntVec::new();
        for mu in alg.weights() {
            sum.add_term(alg.weight_idempotent(&mu), 1);
        }
        if sum != alg.identity() {
            failures.push(format!("S({m}|{n},{d}): weight idempotents do not sum to the identity"));
        }
        for (name, ok, detail) in check_schur_algebra(m, n, d) {
            if !ok {
                failures.push(format!("S({m}|{n},{d}) {name}: {detail}"));
            }
        }
    }
    Outcome::new(failures, triples.len())
}

/// The invariants of the strictly upper part form the canonical line.
fn criterion_7() -> Outcome {
    let mut cases = Vec::new();
    for d in 1..=4 {
        for lam in Partition::all_of_size(d) {
            for m in lam.part(1)..=3 {
                for n in 0..=2 {
                    cases.push((lam.clone(), m, n));
                }
            }
        }
    }
    let failures: Vec<String> = cases
        .par_iter()
        .filter_map(|(lam, m, n)| {
            let r = invariant_report(lam, *m, *n, 0);
            let dim = build_theta_hat(&SkewShape::straight(lam.conjugate()), &SuperBasis::standard(*m, *n)).rank(Field::Rational);
            let ok = r.invariant_dim == 1 && r.canonical_line && r.dim == dim;
            (!ok).then(|| {
                format!("{lam} {m}|{n}: {} invariants, canonical {:?}", r.invariant_dim, canonical_tableau(lam))
            })
        })
        .collect();
    Outcome::new(failures, cases.len())
}

/// `Δ(x^c)` in `Sym ⊗ Sym`: each factor of the sorted monomial goes left or
/// right, and moving an odd letter right past a later odd letter costs a sign.
fn coproduct(basis: &SuperBasis, c: &[Letter]) -> BTreeMap<(Word, Word), i64> {
    let mut out = BTreeMap::new();
    for mask in 0u32..1 << c.len() {
        let (mut a, mut b) = (Vec::new(), Vec::new());
        let mut sign = 1;
        for (k, &x) in c.iter().enumerate() {
            if mask >> k & 1 == 1 {
                // Goes left, past every odd letter already sent right.
                if basis.is_odd(x) && b.iter().filter(|&&y| basis.is_odd(y)).count() % 2 == 1 {
                    sign = -sign;
                }
                a.push(x);
            } else {
                b.push(x);
            }
        }
        *out.entry((a, b)).or_insert(0) += sign;
    }
    out
}

/// Divided power products against the dual pairing with symmetric monomials.
fn criterion_8() -> Outcome {
    let basis = SuperBasis::standard(2, 2);
    let mut failures = Vec::new();
    let mut cases = 0;
    for total in 2..=4 {
        let mut oracle: BTreeMap<(Word, Word), BTreeMap<Word, i64>> = BTreeMap::new();
        for c in divided_basis(&basis, total) {
            for ((a, b), k) in coproduct(&basis, &c) {
                if k != 0 {
                    oracle.entry((a, b)).or_default().insert(c.clone(), k);
                }
            }
        }
        for p in 1..total {
            for a in divided_basis(&basis, p) {
                for b in divided_basis(&basis, total - p) {
                    cases += 1;
                    let expected = oracle.get(&(a.clone(), b.clone())).cloned().unwrap_or_default();
                    let got: BTreeMap<Word, i64> = div_mult(&basis, &a, &b).into_iter().collect();
                    if got != expected {
                        failures.push(format!("{a:?} * {b:?}: {got:?} vs {expected:?}"));
                    }
                }
            }
        }
    }
    Outcome::new(failures, cases)
}

/// `Π (k + content) / hook` over the cells of `λ`.
fn hook_content(lambda: &Partition, k: usize) -> u128 {
    let conj = lambda.conjugate();
    let (mut num, mut den) = (1i128, 1i128);
    for i in 1..=lambda.len() {
        for j in 1..=lambda.part(i) {
            num *= k as i128 + j as i128 - i as i128;
            den *= (lambda.part(i) - j + conj.part(j) - i + 1) as i128;
        }
    }
    (num / den).max(0) as u128
}

/// Purely even and purely odd spaces.
fn criterion_9() -> Outcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    for d in 1..=5 {
        for lam in Partition::all_of_size(d) {
            let shape = SkewShape::straight(lam.clone());
            for k in 1..=3 {
                cases += 2;
                let even = build_theta_hat(&shape, &SuperBasis::standard(k, 0)).rank(Field::Rational) as u128;
                let odd = build_theta_hat(&shape, &SuperBasis::standard(0, k)).rank(Field::Rational) as u128;
                if even != hook_content(&lam, k) {
                    failures.push(format!("{lam} {k}|0: {even} vs {}", hook_content(&lam, k)));
                }
                if odd != hook_content(&lam.conjugate(), k) {
                    failures.push(format!("{lam} 0|{k}: {odd} vs {}", hook_content(&lam.conjugate(), k)));
                }
            }
        }
    }
    Outcome::new(failures, cases)
}

fn main() -> ExitCode {
    type Criterion = (u8, &'static str, fn() -> Outcome);
    // The Hopf gate runs first: everything else builds on the product constants.
    let criteria: [Criterion; 9] = [
        (8, "divided power products match the dual pairing", criterion_8),
        (1, "standard basis theorem over Q, F3, F5", criterion_1),
        (2, "theta annihilates the diamond image", criterion_2),
        (3, "straightening soundness", criterion_3),
        (4, "filtration of a direct sum", criterion_4),
        (5, "type I and type II characters", criterion_5),
        (6, "Schur superalgebra structure constants", criterion_6),
        (7, "highest weight line of the strictly upper part", criterion_7),
        (9, "classical specializations", criterion_9),
    ];
    let mut all = true;
    for (k, name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        all &= outcome.passed;
        println!(
            "criterion {k}: {} {name} ({}, {:.1?})",
            if outcome.passed { "PASS" } else { "FAIL" },
            outcome.detail,
            start.elapsed()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
