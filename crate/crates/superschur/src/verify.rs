//! Batch verification suites over ranges of shapes, spaces and fields.
//!
//! Each suite fans out independent cases with rayon and returns a report
//! whose checks are sorted by statement and case label, so reports are
//! identical across runs with the same caps and seed.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::chars::{schur_character, truncation_check, verify_char_type_i, verify_char_type_ii};
use crate::exactalg::{kernel_basis, Echelon, Field, IntVec, Scalar, SparseMat, SparseVec};
use crate::hopf::{delta_embed, div_mult, divided_basis};
use crate::schuralg::{act_schur, apply, collapsing_weights, n_invariants, ActionMatrix, OrbitRep, QAlgebra, SchurAlgebra, SchurModule};
use crate::schurfun::{
    build_diamond, costandard_labels, diamond_rank, factorization_check, filtration_report, schur_basis,
    theta_hat_domain, theta_of_combination, DiamondSpan, Rows, Straightener,
};
use crate::shapes::{enumerate, quasi_compare, Partition, Predicate, QuasiOrder, SkewShape, Tableau};
use crate::supercore::{all_words, Letter, SuperBasis, Word};

/// The named verification suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Hopf,
    Kernel,
    Standard,
    Straighten,
    Filtration,
    Algebra,
    Invariants,
    Characters,
    All,
}

impl Suite {
    pub const EACH: [Suite; 8] = [
        Suite::Hopf,
        Suite::Kernel,
        Suite::Standard,
        Suite::Straighten,
        Suite::Filtration,
        Suite::Algebra,
        Suite::Invariants,
        Suite::Characters,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Hopf => "hopf",
            Suite::Kernel => "kernel",
            Suite::Standard => "standard",
            Suite::Straighten => "straighten",
            Suite::Filtration => "filtration",
            Suite::Algebra => "algebra",
            Suite::Invariants => "invariants",
            Suite::Characters => "characters",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Suite, String> {
        Suite::EACH
            .iter()
            .chain([Suite::All].iter())
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| format!("unknown suite '{s}'"))
    }
}

/// Ranges for a verification run.
#[derive(Debug, Clone, Serialize)]
pub struct Caps {
    /// Largest number of boxes.
    pub max_deg: usize,
    /// Largest even and odd dimensions, used when `space` is not given.
    pub max_m: usize,
    pub max_n: usize,
    /// Restricts the run to one space `k^{m|n}`.
    pub space: Option<(usize, usize)>,
    pub fields: Vec<Field>,
    pub seed: u64,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps {
            max_deg: 5,
            max_m: 3,
            max_n: 3,
            space: None,
            fields: vec![Field::Rational, Field::Prime(3), Field::Prime(5)],
            seed: 0,
        }
    }
}

impl Caps {
    /// The spaces `k^{m|n}` in range with `m + n ≥ 1`, each dimension at most `limit`.
    fn spaces(&self, limit: usize) -> Vec<(usize, usize)> {
        if let Some((m, n)) = self.space {
            return if m <= limit && n <= limit { vec![(m, n)] } else { Vec::new() };
        }
        let mut out = Vec::new();
        for m in 0..=self.max_m.min(limit) {
            for n in 0..=self.max_n.min(limit) {
                if m + n >= 1 {
                    out.push((m, n));
                }
            }
        }
        out
    }

    fn deg(&self, limit: usize) -> usize {
        self.max_deg.min(limit)
    }
}

/// One checked statement on one case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub statement: &'static str,
    pub case: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(suite: Suite, statement: &'static str, case: String, passed: bool, detail: String) -> Check {
        Check { suite, statement, case, passed, detail }
    }
}

/// The outcome of a suite.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub caps: Caps,
    pub total: usize,
    pub failed: usize,
    pub passed: bool,
    /// Checks per statement, and how many failed.
    pub summary: BTreeMap<String, (usize, usize)>,
    pub checks: Vec<Check>,
}

/// Runs a suite (or all of them) within the caps.
pub fn run(suite: Suite, caps: &Caps) -> Report {
    let mut checks: Vec<Check> = match suite {
        Suite::All => Suite::EACH.iter().flat_map(|&s| run_one(s, caps)).collect(),
        s => run_one(s, caps),
    };
    checks.sort_by(|a, b| (a.suite, a.statement, &a.case).cmp(&(b.suite, b.statement, &b.case)));
    let mut summary: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for c in &checks {
        let e = summary.entry(format!("{}: {}", c.suite, c.statement)).or_default();
        e.0 += 1;
        e.1 += usize::from(!c.passed);
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    Report { suite, caps: caps.clone(), total: checks.len(), failed, passed: failed == 0, summary, checks }
}

fn run_one(suite: Suite, caps: &Caps) -> Vec<Check> {
    match suite {
        Suite::Hopf => hopf_suite(caps),
        Suite::Kernel => kernel_suite(caps),
        Suite::Standard => standard_suite(caps),
        Suite::Straighten => straighten_suite(caps),
        Suite::Filtration => filtration_suite(caps),
        Suite::Algebra => algebra_suite(caps),
        Suite::Invariants => invariants_suite(caps),
        Suite::Characters => characters_suite(caps),
        Suite::All => unreachable!("expanded by run"),
    }
}

fn space_label(m: usize, n: usize) -> String {
    format!("{m}|{n}")
}

fn shape_cases(caps: &Caps, deg: usize, space_limit: usize) -> Vec<(SkewShape, usize, usize)> {
    let spaces = caps.spaces(space_limit);
    (1..=caps.deg(deg))
        .flat_map(SkewShape::all_tight)
        .flat_map(|s| spaces.iter().map(move |&(m, n)| (s.clone(), m, n)))
        .collect()
}

/// `Δ(Z^{(a)}) ⧢ Δ(Z^{(b)})`: the shuffle product of the symmetric tensors,
/// with the sign rule for every odd letter of `b` moved past one of `a`.
pub fn shuffle_product(basis: &SuperBasis, a: &[Letter], b: &[Letter]) -> IntVec<Word> {
    let (p, q) = (a.len(), b.len());
    let mut out = IntVec::new();
    let lefts = delta_embed(basis, a);
    let rights = delta_embed(basis, b);
    // Subsets of positions taken by the left factor.
    let mut positions: Vec<Vec<usize>> = vec![Vec::new()];
    for k in 0..p + q {
        positions = positions
            .into_iter()
            .flat_map(|s| {
                let mut v = Vec::with_capacity(2);
                if s.len() < p {
                    let mut t = s.clone();
                    t.push(k);
                    v.push(t);
                }
                if k - s.len() < q {
                    v.push(s);
                }
                v
            })
            .collect();
    }
    for (u, cu) in &lefts {
        for (w, cw) in &rights {
            for pos in &positions {
                let mut word = Vec::with_capacity(p + q);
                let (mut i, mut j) = (0, 0);
                let mut odd = 0u32;
                for k in 0..p + q {
                    if pos.contains(&k) {
                        // Every letter of `w` already placed passed this letter of `u`.
                        if basis.is_odd(u[i]) {
                            odd += w[..j].iter().filter(|&&x| basis.is_odd(x)).count() as u32;
                        }
                        word.push(u[i]);
                        i += 1;
                    } else {
                        word.push(w[j]);
                        j += 1;
                    }
                }
                let sign = if odd % 2 == 1 { -1 } else { 1 };
                out.add_term(word, cu * cw * sign);
            }
        }
    }
    out
}

fn hopf_suite(caps: &Caps) -> Vec<Check> {
    let max = caps.deg(4);
    caps.spaces(2)
        .into_par_iter()
        .flat_map(|(m, n)| {
            let basis = SuperBasis::standard(m, n);
            let mut pairs = Vec::new();
            for p in 1..max {
                for q in 1..=max - p {
                    for a in divided_basis(&basis, p) {
                        for b in divided_basis(&basis, q) {
                            pairs.push((a.clone(), b));
                        }
                    }
                }
            }
            pairs
                .into_par_iter()
                .map(|(a, b)| {
                    let oracle = shuffle_product(&basis, &a, &b);
                    let formula: IntVec<Word> = match div_mult(&basis, &a, &b) {
                        None => IntVec::new(),
                        Some((c, k)) => delta_embed(&basis, &c).into_iter().map(|(w, s)| (w, s * k)).collect(),
                    };
                    let ok = oracle == formula;
                    let detail = if ok { String::new() } else { format!("{:?} vs {:?}", div_mult(&basis, &a, &b), oracle) };
                    Check::new(Suite::Hopf, "divided power product constant", format!("{} {a:?}*{b:?}", space_label(m, n)), ok, detail)
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

fn kernel_suite(caps: &Caps) -> Vec<Check> {
    shape_cases(caps, 5, 3)
        .into_par_iter()
        .flat_map(|(shape, m, n)| {
            let basis = SuperBasis::standard(m, n);
            let theta = theta_hat_domain(&shape, &basis);
            let bad = build_diamond(&shape, &basis)
                .iter()
                .filter(|(_, col)| !theta_of_combination(&theta, col).is_zero())
                .count();
            let case = format!("domain {shape} {}", space_label(m, n));
            let factor_bad: Vec<usize> = (1..shape.rows()).filter(|&i| !factorization_check(&shape, &basis, i)).collect();
            vec![
                Check::new(
                    Suite::Kernel,
                    "theta composed with diamond vanishes",
                    case.clone(),
                    bad == 0,
                    if bad == 0 { String::new() } else { format!("{bad} nonzero columns") },
                ),
                Check::new(
                    Suite::Kernel,
                    "factorization through adjacent rows",
                    case,
                    factor_bad.is_empty(),
                    if factor_bad.is_empty() { String::new() } else { format!("rows {factor_bad:?}") },
                ),
            ]
        })
        .collect()
}

fn standard_suite(caps: &Caps) -> Vec<Check> {
    let mut checks: Vec<Check> = shape_cases(caps, 5, 3)
        .into_par_iter()
        .flat_map(|(shape, m, n)| {
            let basis = SuperBasis::standard(m, n);
            let theta = theta_hat_domain(&shape, &basis);
            let diamond = build_diamond(&shape, &basis);
            let count = costandard_labels(&shape, &basis).len();
            let dim = theta.domain_dim();
            caps.fields
                .iter()
                .map(|&f| {
                    let r = theta.rank(f);
                    let rd = diamond_rank(&diamond, f);
                    let ok = r == count && r + rd == dim;
                    Check::new(
                        Suite::Standard,
                        "standard basis theorem",
                        format!("domain {shape} {} {f}", space_label(m, n)),
                        ok,
                        format!("rank={r} costandard={count} domain={dim} rank_diamond={rd}"),
                    )
                })
                .collect::<Vec<_>>()
        })
        .collect();
    // Purely even and purely odd spaces give the classical functors.
    let straight: Vec<(Partition, usize, bool)> = (1..=caps.deg(5))
        .flat_map(Partition::all_of_size)
        .flat_map(|l| (1..=3).flat_map(move |k| [(l.clone(), k, false), (l.clone(), k, true)]))
        .filter(|(_, k, odd)| match caps.space {
            Some((m, n)) => (if *odd { (0, *k) } else { (*k, 0) }) == (m, n),
            None => *k <= if *odd { caps.max_n } else { caps.max_m },
        })
        .collect();
    checks.par_extend(straight.into_par_iter().map(|(lam, k, odd)| {
        let (m, n) = if odd { (0, k) } else { (k, 0) };
        let basis = SuperBasis::standard(m, n);
        let shape = SkewShape::straight(lam.clone());
        let dim = theta_hat_domain(&shape.conjugate(), &basis).rank(Field::Rational);
        // Semistandard tableaux of λ (even letters) or of λ' (odd letters).
        let classical = enumerate(&shape, &basis, Predicate::Standard).len();
        Check::new(
            Suite::Standard,
            "classical specialization",
            format!("{lam} {}", space_label(m, n)),
            dim == classical,
            format!("dim={dim} tableaux={classical}"),
        )
    }));
    checks
}

fn straighten_suite(caps: &Caps) -> Vec<Check> {
    shape_cases(caps, 5, 3)
        .into_par_iter()
        .map(|(shape, m, n)| {
            let basis = SuperBasis::standard(m, n);
            let diamond = build_diamond(&shape, &basis);
            let span = DiamondSpan::new(&diamond, Field::Rational);
            let mut st = Straightener::new(&shape, &basis);
            let mut failures = Vec::new();
            let mut count = 0;
            for t in enumerate(&shape, &basis.twisted(), Predicate::RowStandard) {
                if t.satisfies(&basis, Predicate::Costandard) {
                    continue;
                }
                count += 1;
                if let Err(e) = straighten_one(&mut st, &span, &t) {
                    failures.push(format!("{:?}: {e}", t.rows()));
                }
            }
            Check::new(
                Suite::Straighten,
                "straightening soundness",
                format!("domain {shape} {}", space_label(m, n)),
                failures.is_empty(),
                if failures.is_empty() { format!("{count} tableaux") } else { failures.join("; ") },
            )
        })
        .collect()
}

/// Straightens one row-costandard tableau and checks the outcome: every
/// output tableau strictly precedes `t` and the difference lies in `Im ◊`.
pub fn straighten_one(st: &mut Straightener, span: &DiamondSpan, t: &Tableau) -> Result<IntVec<Rows>, String> {
    let rows: Rows = t.rows().to_vec();
    let out = st.straighten(&rows).map_err(|e| e.to_string())?;
    for s in out.labels() {
        let ts = Tableau::new(t.shape().clone(), s.clone()).map_err(|e| e.to_string())?;
        if quasi_compare(&ts, t) != Ok(QuasiOrder::Less) {
            return Err(format!("{s:?} does not precede"));
        }
    }
    let mut diff = out.clone();
    diff.add_term(rows, -1);
    if !span.contains(&diff) {
        return Err("difference not in the image of diamond".into());
    }
    Ok(out)
}

fn filtration_suite(caps: &Caps) -> Vec<Check> {
    let spaces = caps.spaces(2);
    let mut cases = Vec::new();
    for d in 1..=caps.deg(4) {
        for shape in SkewShape::all_tight(d) {
            for &a in &spaces {
                for &b in &spaces {
                    cases.push((shape.clone(), a, b));
                }
            }
        }
    }
    cases
        .into_par_iter()
        .map(|(shape, (m1, n1), (m2, n2))| {
            let (rows, total) =
                filtration_report(&shape, &SuperBasis::standard(m1, n1), &SuperBasis::standard(m2, n2), Field::Rational);
            let sum: usize = rows.iter().map(|r| r.expected).sum();
            let ok = rows.iter().all(|r| r.dim_graded == r.expected) && sum == total;
            let detail = rows
                .iter()
                .map(|r| format!("{}:{}/{}", r.xi, r.dim_graded, r.expected))
                .collect::<Vec<_>>()
                .join(" ");
            Check::new(
                Suite::Filtration,
                "filtration graded pieces",
                format!("domain {shape} {}+{}", space_label(m1, n1), space_label(m2, n2)),
                ok,
                format!("{detail} total={total}"),
            )
        })
        .collect()
}

/// Associativity, agreement with the tensor action, and the weight idempotents of `S(m|n,d)`.
pub fn check_schur_algebra(m: usize, n: usize, d: usize) -> Vec<(&'static str, bool, String)> {
    let alg = SchurAlgebra::new(m, n, d);
    let basis = alg.basis();
    let products: HashMap<(usize, usize), IntVec<OrbitRep>> = (0..basis.len())
        .flat_map(|x| (0..basis.len()).map(move |y| (x, y)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(x, y)| ((x, y), alg.mult(&basis[x], &basis[y])))
        .collect();
    let index: HashMap<&OrbitRep, usize> = basis.iter().enumerate().map(|(k, a)| (a, k)).collect();
    let times = |x: &IntVec<OrbitRep>, y: usize| {
        let mut out = IntVec::new();
        for (a, c) in x.iter() {
            out.add_scaled(&products[&(index[a], y)], *c);
        }
        out
    };
    let times_left = |x: usize, y: &IntVec<OrbitRep>| {
        let mut out = IntVec::new();
        for (b, c) in y.iter() {
            out.add_scaled(&products[&(x, index[b])], *c);
        }
        out
    };
    let assoc_bad = (0..basis.len())
        .into_par_iter()
        .map(|x| {
            let mut bad = 0;
            for y in 0..basis.len() {
                for z in 0..basis.len() {
                    if times(&products[&(x, y)], z) != times_left(x, &products[&(y, z)]) {
                        bad += 1;
                    }
                }
            }
            bad
        })
        .sum::<usize>();
    let words = all_words(m + n, d);
    let action_bad = (0..basis.len())
        .into_par_iter()
        .map(|x| {
            let mut bad = 0;
            for twisted in [false, true] {
                let ops: Vec<_> = basis.iter().map(|a| alg.tensor_operator(a, twisted)).collect();
                for y in 0..basis.len() {
                    for w in &words {
                        let inner = ops[y].apply(w);
                        let lhs = inner.map_linear(|v| ops[x].apply(v));
                        let mut rhs = IntVec::new();
                        for (c, k) in products[&(x, y)].iter() {
                            rhs.add_scaled(&ops[index[c]].apply(w), *k);
                        }
                        if lhs != rhs {
                            bad += 1;
                        }
                    }
                }
            }
            bad
        })
        .sum::<usize>();
    let weights = alg.weights();
    let mut idem_bad = 0;
    for p in &weights {
        for q in &weights {
            let prod = alg.mult(&alg.weight_idempotent(p), &alg.weight_idempotent(q));
            let expected = if p == q { IntVec::single(alg.weight_idempotent(p), 1) } else { IntVec::new() };
            idem_bad += usize::from(prod != expected);
        }
    }
    let one = alg.identity();
    for a in &basis {
        let x = IntVec::single(a.clone(), 1);
        idem_bad += usize::from(alg.mult_elems(&one, &x) != x || alg.mult_elems(&x, &one) != x);
    }
    vec![
        ("associativity", assoc_bad == 0, format!("dim={} failures={assoc_bad}", basis.len())),
        ("agreement with tensor action", action_bad == 0, format!("failures={action_bad}")),
        ("weight idempotents", idem_bad == 0, format!("weights={} failures={idem_bad}", weights.len())),
    ]
}

/// Closure, unit and idempotent images of `Q(n,d)` inside `S(n|n,d)`.
pub fn check_q_algebra(n: usize, d: usize) -> Vec<(&'static str, bool, String)> {
    let q = QAlgebra::new(n, d);
    let basis = q.basis();
    let closure_bad = basis.iter().flat_map(|x| basis.iter().map(move |y| (x, y))).filter(|(x, y)| q.mult(x, y).is_none()).count();
    let one = Scalar::one(Field::Rational);
    let weights = q.weights();
    let mut idem_bad = 0;
    for a in &weights {
        for b in &weights {
            let prod = q.mult(&q.weight_label(a), &q.weight_label(b));
            let expected = if a == b { BTreeMap::from([(q.weight_label(a), one.clone())]) } else { BTreeMap::new() };
            idem_bad += usize::from(prod.as_ref() != Some(&expected));
        }
    }
    let mut sum = IntVec::new();
    for nu in &weights {
        sum.add_scaled(&q.weight_idempotent(nu), 1);
        let expected: IntVec<_> =
            collapsing_weights(nu).iter().map(|mu| (q.ambient().weight_idempotent(mu), 1)).collect();
        idem_bad += usize::from(q.weight_idempotent(nu) != expected);
    }
    idem_bad += usize::from(sum != q.ambient().identity());
    vec![
        ("type Q closure", closure_bad == 0, format!("dim={} failures={closure_bad}", basis.len())),
        ("type Q weight idempotents", idem_bad == 0, format!("failures={idem_bad}")),
    ]
}

fn algebra_suite(caps: &Caps) -> Vec<Check> {
    let mut triples = vec![(1, 1, 2), (2, 1, 2), (1, 1, 3), (0, 2, 2), (1, 2, 2), (2, 0, 3)];
    triples.retain(|&(m, n, d)| d <= caps.max_deg && caps.spaces(3).contains(&(m, n)));
    let mut checks: Vec<Check> = triples
        .into_par_iter()
        .flat_map(|(m, n, d)| {
            check_schur_algebra(m, n, d)
                .into_iter()
                .map(|(s, ok, detail)| Check::new(Suite::Algebra, s, format!("S({m}|{n},{d})"), ok, detail))
                .collect::<Vec<_>>()
        })
        .collect();
    let qs: Vec<(usize, usize)> = [(1, 1), (2, 1), (1, 2), (2, 2), (1, 3), (2, 3)]
        .into_iter()
        .filter(|&(n, d)| d <= caps.max_deg && caps.spaces(3).contains(&(n, n)))
        .collect();
    checks.par_extend(qs.into_par_iter().flat_map(|(n, d)| {
        check_q_algebra(n, d)
            .into_iter()
            .map(|(s, ok, detail)| Check::new(Suite::Algebra, s, format!("Q({n},{d})"), ok, detail))
            .collect::<Vec<_>>()
    }));
    checks
}

/// Result of the highest weight analysis of `Ŝ_{λ'}(k^{m|n})`.
#[derive(Debug, Clone, Serialize)]
pub struct InvariantReport {
    pub dim: usize,
    pub invariant_dim: usize,
    /// The invariants are the line of the canonical-tableau vector.
    pub canonical_line: bool,
    /// Cyclic `N`-submodules generated by the checked vectors all contain it.
    pub cyclic_checked: usize,
    pub cyclic_ok: bool,
    /// Whether the commutant of `N` was computed (small modules only) and is local.
    pub commutant_local: Option<bool>,
}

/// The canonical tableau `c_λ` (`c(i,j) = j`), valid when `λ_1 ≤ m`.
pub fn canonical_tableau(lambda: &Partition) -> Rows {
    lambda.parts().iter().map(|&r| (1..=r as Letter).collect()).collect()
}

/// Largest module dimension for which the commutant of `N` is computed.
pub const COMMUTANT_CAP: usize = 24;

/// `N`-invariants and the indecomposability certificate for `Ŝ_{λ'}(k^{m|n})`, `λ_1 ≤ m`.
pub fn invariant_report(lambda: &Partition, m: usize, n: usize, seed: u64) -> InvariantReport {
    let field = Field::Rational;
    let d = lambda.size();
    let shape = SkewShape::straight(lambda.clone()).conjugate();
    let basis = schur_basis(&shape, &SuperBasis::standard(m, n), field).expect("standard basis");
    let c = canonical_tableau(lambda);
    let c_index = basis.vectors().iter().position(|(l, _)| *l == c);
    let module = SchurModule::new(basis, field);
    let alg = SchurAlgebra::new(m, n, d);
    let mats: Vec<ActionMatrix> =
        alg.n_basis().par_iter().map(|a| act_schur(&alg, a, &module).expect("module is invariant")).collect();
    let dim = module.dim();
    let inv = n_invariants(&mats, dim, field).expect("consistent field");
    let canonical_line = inv.len() == 1 && c_index.is_some_and(|k| inv[0].len() == 1 && inv[0].get(&k).is_some());
    // Cyclic submodules of the basis vectors and of seeded random vectors.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gens: Vec<BTreeMap<usize, Scalar>> =
        (0..dim).map(|k| BTreeMap::from([(k, Scalar::one(field))])).collect();
    for _ in 0..4 {
        let v: BTreeMap<usize, Scalar> = (0..dim)
            .map(|k| (k, Scalar::from_i64(field, rng.gen_range(-3..=3))))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        if !v.is_empty() {
            gens.push(v);
        }
    }
    let cyclic_ok = c_index.is_some_and(|ci| {
        gens.par_iter().all(|v| {
            let target = SparseVec::from_pairs([(ci, Scalar::one(field))]);
            let span = cyclic_span(&mats, v, field);
            span.contains(&target)
        })
    });
    let commutant_local = (dim <= COMMUTANT_CAP).then(|| commutant_is_local(&mats, dim, field));
    InvariantReport { dim, invariant_dim: inv.len(), canonical_line, cyclic_checked: gens.len(), cyclic_ok, commutant_local }
}

fn to_sparse(v: &BTreeMap<usize, Scalar>) -> SparseVec<usize> {
    SparseVec::from_pairs(v.iter().map(|(&k, c)| (k, c.clone())))
}

/// The span of `v` and all its images under products of the matrices.
fn cyclic_span(mats: &[ActionMatrix], v: &BTreeMap<usize, Scalar>, field: Field) -> Echelon<usize> {
    let mut span = Echelon::new(field);
    let mut queue = vec![v.clone()];
    span.insert(&to_sparse(v));
    while let Some(x) = queue.pop() {
        for a in mats {
            let y = apply(a, &x, field);
            if !y.is_empty() && span.insert(&to_sparse(&y)) {
                queue.push(y);
            }
        }
    }
    span
}

/// Whether the commutant of `mats` is a local ring.
///
/// Over `ℚ` the commutant `C` splits as `k·1 ⊕ J` with `J` its traceless
/// part. `C` is local exactly when `J` is a nil ideal, and since `C` is an
/// algebra this holds when `tr(xy) = 0` for all `x, y` in a basis of `J`.
pub fn commutant_is_local(mats: &[ActionMatrix], dim: usize, field: Field) -> bool {
    assert_eq!(field, Field::Rational, "the trace criterion needs characteristic zero");
    // Unknown X = (x_{rc}) at index r*dim + c, subject to X A − A X = 0.
    let mut rows: Vec<SparseVec<usize>> = Vec::new();
    for a in mats {
        for r in 0..dim {
            for c in 0..dim {
                let mut eq = SparseVec::new();
                for (&k, v) in &a[c] {
                    eq.add_entry(r * dim + k, v);
                }
                for (k, col) in a.iter().enumerate() {
                    if let Some(v) = col.get(&r) {
                        eq.add_entry(k * dim + c, &-v);
                    }
                }
                if !eq.is_empty() {
                    rows.push(eq);
                }
            }
        }
    }
    let system = SparseMat::new(field, 0..dim * dim, rows).expect("consistent system");
    let kernel = kernel_basis(&system).expect("consistent system");
    let inv_dim = Scalar::from_i64(field, dim as i64).inv().expect("nonzero dimension");
    let traceless: Vec<Vec<Vec<Scalar>>> = kernel
        .iter()
        .map(|x| {
            let mut mat: Vec<Vec<Scalar>> = (0..dim)
                .map(|r| (0..dim).map(|c| x.get(&(r * dim + c)).cloned().unwrap_or_else(|| Scalar::zero(field))).collect())
                .collect();
            let trace = (0..dim).fold(Scalar::zero(field), |acc, i| &acc + &mat[i][i]);
            let shift = &trace * &inv_dim;
            for (i, row) in mat.iter_mut().enumerate() {
                row[i] = &row[i] - &shift;
            }
            mat
        })
        .collect();
    let trace_of_product = |x: &[Vec<Scalar>], y: &[Vec<Scalar>]| {
        let mut t = Scalar::zero(field);
        for r in 0..dim {
            for c in 0..dim {
                t = &t + &(&x[r][c] * &y[c][r]);
            }
        }
        t
    };
    (0..traceless.len()).into_par_iter().all(|i| {
        (i..traceless.len()).all(|j| trace_of_product(&traceless[i], &traceless[j]).is_zero())
    })
}

fn invariants_suite(caps: &Caps) -> Vec<Check> {
    let mut cases = Vec::new();
    for d in 1..=caps.deg(4) {
        for lam in Partition::all_of_size(d) {
            for (m, n) in caps.spaces(3) {
                if n <= 2 && lam.part(1) <= m {
                    cases.push((lam.clone(), m, n));
                }
            }
        }
    }
    cases
        .into_par_iter()
        .flat_map(|(lam, m, n)| {
            let r = invariant_report(&lam, m, n, caps.seed);
            let case = format!("{} {}", SkewShape::straight(lam.clone()).conjugate(), space_label(m, n));
            let mut out = vec![
                Check::new(
                    Suite::Invariants,
                    "highest weight line",
                    case.clone(),
                    r.canonical_line,
                    format!("dim={} invariants={}", r.dim, r.invariant_dim),
                ),
                Check::new(
                    Suite::Invariants,
                    "cyclic submodules contain the highest weight vector",
                    case.clone(),
                    r.cyclic_ok,
                    format!("{} generators", r.cyclic_checked),
                ),
            ];
            if let Some(local) = r.commutant_local {
                out.push(Check::new(Suite::Invariants, "local commutant", case, local, String::new()));
            }
            out
        })
        .collect()
}

fn characters_suite(caps: &Caps) -> Vec<Check> {
    let lams: Vec<Partition> = (0..=caps.deg(4)).flat_map(Partition::all_of_size).collect();
    let spaces: Vec<(usize, usize)> = {
        let mut s = caps.spaces(2);
        if caps.space.is_none() {
            s.insert(0, (0, 0));
        }
        s
    };
    lams
        .par_iter()
        .flat_map(|lam| {
            let mut out = Vec::new();
            for &(m, n) in &spaces {
                let case = format!("{lam} {}", space_label(m, n));
                out.push(Check::new(Suite::Characters, "type I character", case.clone(), verify_char_type_i(lam, m, n), String::new()));
                let ch = schur_character(lam, m, n, Field::Rational);
                let degree_ok = ch.degrees().iter().all(|&k| k as usize == lam.size());
                let positive = ch.terms().all(|(_, &c)| c > 0);
                out.push(Check::new(
                    Suite::Characters,
                    "character degree, positivity and symmetry",
                    case.clone(),
                    degree_ok && positive && ch.is_bisymmetric(),
                    String::new(),
                ));
                if m == n && m >= 1 {
                    out.push(Check::new(Suite::Characters, "type II character", format!("{lam} n={n}"), verify_char_type_ii(lam, n), String::new()));
                }
                for &(a, b) in &spaces {
                    if a <= m && b <= n && (a, b) != (m, n) {
                        out.push(Check::new(
                            Suite::Characters,
                            "truncation",
                            format!("{lam} {}->{}", space_label(m, n), space_label(a, b)),
                            truncation_check(lam, (m, n), (a, b)),
                            String::new(),
                        ));
                    }
                }
            }
            out
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shuffle_of_letters() {
        let b = SuperBasis::standard(0, 2);
        let p = shuffle_product(&b, &[1], &[2]);
        assert_eq!(p.get(&vec![1, 2]), 1);
        assert_eq!(p.get(&vec![2, 1]), -1);
        let b = SuperBasis::standard(1, 0);
        assert_eq!(shuffle_product(&b, &[1], &[1]).get(&vec![1, 1]), 2);
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_runs_pass() {
        let caps = Caps { max_deg: 2, max_m: 1, max_n: 1, fields: vec![Field::Rational], ..Caps::default() };
        for s in Suite::EACH {
            let r = run(s, &caps);
            assert!(r.passed, "{s}: {:?}", r.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>());
            assert!(r.total > 0, "{s} ran no checks");
        }
    }

    #[test]
    fn local_commutant_of_scalars_only() {
        let f = Field::Rational;
        // A single Jordan block: its commutant is polynomials in it, a local ring.
        let jordan: ActionMatrix = vec![BTreeMap::new(), BTreeMap::from([(0, Scalar::one(f))])];
        assert!(commutant_is_local(&[jordan], 2, f));
        // No operators: the commutant is all matrices, not local.
        assert!(!commutant_is_local(&[], 2, f));
    }
}
