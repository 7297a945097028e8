//! Acceptance gate: one PASS/FAIL line per criterion, with detail lines
//! below it. All comparisons are exact; the only tolerances are the runtime
//! budgets pinned below.

use std::collections::BTreeSet;
use std::process::Command;
use std::thread;
use std::time::{Duration, Instant};

use ckhopf::cm::{
    coeff_recursion, delta, delta_coproduct_monomials, extract_coefficients, index_with_tail, recursion_table,
    CoeffTable, IndexSeq,
};
use ckhopf::dominant::{
    closed_form_table, dominant_seqs_of_weight, fit_harmonic_form_auto, for_each_increasing, harmonic, lemma26_bound,
    lemma26_witness, poly_p, poly_record, DominantSeq, HarmonicForm, RatPoly, TailSeq,
};
use ckhopf::sequences::{sequence, Family};
use ckhopf::util::{factorial, rational_to_string};
use ckhopf::verify::{run_suite, Suite, VerifyConfig};
use ckhopf::{LinComb, MultiPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

const BUDGET_REGRESSION: Duration = Duration::from_secs(1);
const BUDGET_THREEWAY: Duration = Duration::from_secs(120);
const BUDGET_AXIOMS: Duration = Duration::from_secs(300);
const BUDGET_HARMONIC: Duration = Duration::from_secs(120);

/// Orders covered by the closed-form family checks.
const FAMILY_MAX_N: usize = 12;
/// Orders covered by the three-way coefficient comparison.
const THREEWAY_MAX_N: usize = 8;

struct Outcome {
    passed: bool,
    details: Vec<String>,
}

impl Outcome {
    fn new() -> Outcome {
        Outcome {
            passed: true,
            details: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.passed = false;
            self.details.push(format!("mismatch: {}", what.into()));
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.details.push(s.into());
    }

    fn within(&mut self, elapsed: Duration, budget: Duration) {
        self.check(elapsed <= budget, format!("runtime {elapsed:?} exceeds {budget:?}"));
    }
}

fn lincomb(text: &str) -> LinComb {
    text.parse().expect("fixture parses")
}

fn idx(entries: &[u32]) -> IndexSeq {
    IndexSeq::new(entries.to_vec()).expect("fixture index")
}

fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Polynomial in n from ascending integer coefficients over a common denominator.
fn rp(coeffs: &[i64], den: i64) -> RatPoly {
    RatPoly::new(coeffs.iter().map(|&c| q(c, den)).collect())
}

fn poly(text: &str) -> MultiPoly {
    text.parse().expect("fixture polynomial")
}

fn times_x1_minus_1(text: &str) -> MultiPoly {
    poly(text).mul(&poly("X1-1"))
}

// Criterion 1

fn regression() -> Outcome {
    let start = Instant::now();
    let mut out = Outcome::new();
    let deltas = [
        (1, "[]"),
        (2, "[[]]"),
        (3, "[[][]] + [[[]]]"),
        (4, "[[][][]] + 3*[[[]][]] + [[[][]]] + [[[[]]]]"),
    ];
    for (n, text) in deltas {
        let got = delta(n).unwrap();
        out.check(got == lincomb(text), format!("δ{n} = {got}, expected {text}"));
    }

    // (coefficient, left monomial, right monomial)
    let coproducts: [&[(i64, &str, &str)]; 4] = [
        &[(1, "δ1", "1"), (1, "1", "δ1")],
        &[(1, "δ2", "1"), (1, "1", "δ2"), (1, "δ1", "δ1")],
        &[(1, "δ3", "1"), (1, "1", "δ3"), (3, "δ2", "δ1"), (1, "δ1", "δ2"), (1, "δ1", "δ1^2")],
        &[
            (1, "δ4", "1"),
            (1, "1", "δ4"),
            (6, "δ3", "δ1"),
            (4, "δ2", "δ2"),
            (7, "δ2", "δ1^2"),
            (1, "δ1", "δ3"),
            (3, "δ1", "δ1*δ2"),
            (1, "δ1", "δ1^3"),
        ],
    ];
    for (i, expected) in coproducts.iter().enumerate() {
        let n = i + 1;
        let got: BTreeSet<(String, String, String)> = delta_coproduct_monomials(n)
            .unwrap()
            .to_records()
            .into_iter()
            .map(|r| (r.coefficient, r.left, r.right))
            .collect();
        let want: BTreeSet<(String, String, String)> = expected
            .iter()
            .map(|(c, l, r)| (c.to_string(), l.to_string(), r.to_string()))
            .collect();
        out.check(got == want, format!("Δ(δ{n}) = {got:?}, expected {want:?}"));
    }

    let antipodes: [&[(&[u32], i64)]; 3] = [
        &[(&[1], -1)],
        &[(&[0, 1], -1), (&[2, 0], 1)],
        &[(&[0, 0, 1], -1), (&[1, 1, 0], 4), (&[3, 0, 0], -2)],
    ];
    for (i, expected) in antipodes.iter().enumerate() {
        let n = i + 1;
        let table = extract_coefficients(n).unwrap();
        let want: Vec<(IndexSeq, BigInt)> = expected.iter().map(|(e, a)| (idx(e), BigInt::from(*a))).collect();
        let got: Vec<(IndexSeq, BigInt)> = table.entries.clone().into_iter().collect();
        out.check(got == want, format!("S(δ{n}) table {got:?}, expected {want:?}"));
    }
    let elapsed = start.elapsed();
    out.note(format!("δ1..δ4, Δ(δ1)..Δ(δ4), S(δ1)..S(δ3) in {elapsed:?}"));
    out.within(elapsed, BUDGET_REGRESSION);
    out
}

// Criterion 2

fn threeway() -> Outcome {
    let start = Instant::now();
    let mut out = Outcome::new();
    let partition_counts = [1, 2, 3, 5, 7, 11, 15, 22];
    for n in 1..=THREEWAY_MAX_N {
        let ext = extract_coefficients(n).unwrap();
        let rec = recursion_table(n).unwrap();
        let closed = closed_form_table(n).unwrap();
        out.check(ext.entries.len() == partition_counts[n - 1], format!("order {n}: {} entries", ext.entries.len()));
        for other in [&rec, &closed] {
            if let Some(i) = ext.first_difference(other) {
                out.check(
                    false,
                    format!("order {n}: extract {:?} vs {} {:?} at {i}", ext.get(&i), other.method, other.get(&i)),
                );
            }
        }
        let generator = IndexSeq::generator(n);
        out.check(ext.get(&generator) == Some(&-BigInt::one()), format!("order {n}: a at δ{n} is not -1"));
    }
    let elapsed = start.elapsed();
    out.note(format!("orders 1..={THREEWAY_MAX_N}, 22 entries at order 8, in {elapsed:?}"));
    out.within(elapsed, BUDGET_THREEWAY);
    out
}

// Criterion 3

fn axioms() -> Outcome {
    let start = Instant::now();
    let mut out = Outcome::new();
    let cfg = VerifyConfig::default();
    out.check(cfg.max_size >= 6 && cfg.triple_size() >= 7, "universe smaller than required");
    out.check(cfg.random_triples >= 1000 && cfg.random_size >= 8, "random triples below the required count or size");
    for suite in [Suite::HopfAxioms, Suite::ComPrelieAxioms, Suite::GraftCoproduct] {
        let report = run_suite(suite, &cfg);
        out.check(report.passed, format!("{suite}: {:?}", report.witnesses));
        out.note(format!("{suite}: {} checks, {} failures", report.checks, report.failures));
    }
    let elapsed = start.elapsed();
    out.note(format!(
        "pairs ≤ {}, triples ≤ {}, {} random triples of size {} (seed {:#x}), in {elapsed:?}",
        cfg.max_size,
        cfg.triple_size(),
        cfg.random_triples,
        cfg.random_size,
        cfg.seed
    ));
    out.within(elapsed, BUDGET_AXIOMS);
    out
}

// Criterion 4

fn signed(sign_exponent: usize, v: BigInt) -> BigInt {
    if sign_exponent % 2 == 0 {
        v
    } else {
        -v
    }
}

fn families() -> Outcome {
    let mut out = Outcome::new();
    let fact = |n: usize| factorial(n - 1);
    let integral = |x: BigRational| {
        assert!(x.is_integer(), "non-integral family value {x}");
        x.to_integer()
    };
    for n in 1..=FAMILY_MAX_N {
        let a = coeff_recursion(&index_with_tail(n, &[]).unwrap());
        out.check(a == signed(n, fact(n)), format!("a_(n,0..) n={n}: {a}"));
        if n >= 2 {
            let a = coeff_recursion(&index_with_tail(n, &[1]).unwrap());
            out.check(a == signed(n - 1, fact(n) * BigInt::from(n - 1)), format!("a_(n-2,1,0..) n={n}: {a}"));
        }
        if n >= 3 {
            let mut v = vec![0; n];
            v[0] = 1;
            v[n - 2] = 1;
            let a = coeff_recursion(&IndexSeq::new(v).unwrap());
            out.check(a == BigInt::from(n * (n - 1) / 2 + 1), format!("a_(1,0..,1,0) n={n}: {a}"));

            let sum: BigRational = (1..n as i64).map(|p| q(p - 1, p)).sum();
            let a = coeff_recursion(&index_with_tail(n, &[0, 1]).unwrap());
            let want = signed(n, integral(sum * BigRational::from_integer(fact(n))));
            out.check(a == want, format!("a_(n-3,0,1,0..) n={n}: {a} vs {want}"));
        }
        if n >= 4 {
            let sum: BigRational = (1..n as i64).map(|p| q((p - 2) * (p - 1), p)).sum();
            let a = coeff_recursion(&index_with_tail(n, &[2]).unwrap());
            let want = signed(n, integral(sum * BigRational::from_integer(fact(n))));
            out.check(a == want, format!("a_(n-4,2,0..) n={n}: {a} vs {want}"));

            let mut sum = BigRational::zero();
            for i1 in 2..n as i64 {
                for i2 in i1 + 1..n as i64 {
                    sum += q(i1 - 1, i1 * i2);
                }
            }
            let magnitude = integral(sum * BigRational::from_integer(fact(n)));
            let a = coeff_recursion(&index_with_tail(n, &[0, 0, 1]).unwrap());
            out.check(a.abs() == magnitude, format!("|a_(n-4,0,0,1,0..)| n={n}: {a} vs {magnitude}"));
            out.check(a == signed(n - 3, magnitude.clone()), format!("sign of a_(n-4,0,0,1,0..) n={n}: {a}"));
        }
    }
    let terms = sequence(&Family::A122105, 4, FAMILY_MAX_N).terms;
    let prefix: Vec<&str> = terms.iter().map(|t| t.value.as_str()).collect();
    out.check(prefix[..4] == ["1", "11", "101", "932"], format!("A122105 prefix {prefix:?}"));
    out.note(format!("n ≤ {FAMILY_MAX_N}; A122105 magnitudes {}", prefix.join(", ")));
    out.note("the double sum carries the sign (-1)^(n-3); the displayed leading minus holds for even n only");
    out
}

// Criterion 5

fn d(entries: &[u32]) -> DominantSeq {
    DominantSeq::new(entries.to_vec()).unwrap()
}

/// `a_idx` from the closed form with an arbitrary polynomial in place of `P`.
fn closed_form_with(p: &MultiPoly, idx: &IndexSeq, weight: usize) -> BigRational {
    let n = idx.order();
    let mut sum = BigRational::zero();
    for_each_increasing(n - 1, weight, |tuple| {
        let point: Vec<BigInt> = tuple.iter().map(|&x| BigInt::from(x)).collect();
        let denom: BigInt = point.iter().product();
        sum += BigRational::new(p.eval(&point), denom);
        true
    });
    let v = sum * BigRational::from_integer(factorial(n - 1));
    if idx.total() % 2 == 1 {
        -v
    } else {
        v
    }
}

fn polynomials() -> Outcome {
    let mut out = Outcome::new();
    let table: [(&[u32], &str); 8] = [
        (&[1, 1], "2*X1+X2-7"),
        (&[1, 0, 1], "2*X1+X2+X3-11"),
        (&[2, 1], "3*X1*X2+2*X1*X3+X2*X3-22*X1-11*X2+7*X3+59"),
        (&[1, 0, 0, 1], "2*X1+X2+X3+X4-16"),
        (&[0, 1, 1], "6*X1+3*X2+X3-25"),
        (
            &[2, 0, 1],
            "3*X1*X2+2*X1*X3+X2*X3+2*X1*X4+X2*X4+X3*X4-34*X1-17*X2-13*X3-11*X4+125",
        ),
        (
            &[1, 2],
            "6*X1*X2+4*X1*X3+2*X2*X3+2*X1*X4+X2*X4-56*X1-28*X2-14*X3-7*X4+160",
        ),
        (
            &[3, 1, 0, 0, 0],
            "4*X1*X2*X3+3*X1*X2*X4+2*X1*X3*X4+X2*X3*X4-45*X1*X2-30*X1*X3-15*X2*X3\
             -22*X1*X4-11*X2*X4-7*X3*X4+250*X1+125*X2+81*X3+59*X4-605",
        ),
    ];
    let mut matched = 0;
    for (tail, factor) in &table {
        let dom = TailSeq::new(tail.to_vec()).dominant();
        let printed = times_x1_minus_1(factor);
        let got = poly_p(&dom);
        if got == printed {
            matched += 1;
            continue;
        }
        out.check(false, format!("P{dom}: computed {got}, printed ({factor})*(X1-1) = {printed}"));
        out.note(format!("  computed minus printed: {}", got.sub(&printed)));
        let weight = dom.weight() as usize;
        let order = dom.min_order();
        let index = index_with_tail(order, dom.entries()).unwrap();
        let with_printed = closed_form_with(&printed, &index, weight);
        let with_computed = closed_form_with(&got, &index, weight);
        let recursion = coeff_recursion(&index);
        let extracted = extract_coefficients(order).unwrap().get(&index).cloned();
        out.note(format!(
            "  a{index}: closed form with printed P = {}, with computed P = {}, recursion = {recursion}, forest extraction = {}",
            rational_to_string(&with_printed),
            rational_to_string(&with_computed),
            extracted.map_or("-".into(), |v| v.to_string()),
        ));
    }

    // P_(0,...,0,1) = X1 - 1 for every position of the 1
    for k in 3..=9 {
        let got = poly_p(&DominantSeq::unit(k));
        out.check(got == poly("X1-1"), format!("P{}: {got}", DominantSeq::unit(k)));
    }

    // P_(n) = (X1-2)(X1-1)(X2-4)...(X_{n-1}-2n+2)
    for n in 2..=7u32 {
        let mut want = poly("X1-2").mul(&poly("X1-1"));
        for j in 2..n {
            want = want.mul(&poly(&format!("X{j}-{}", 2 * j)));
        }
        let got = poly_p(&d(&[n]));
        out.check(got == want, format!("P({n}): {got}"));
    }

    out.note(format!(
        "{matched} of {} tabulated products reproduced term for term; P_(0,..,0,1) = X1-1 checked up to 8 entries",
        table.len()
    ));
    out.note("P_(n) checked for n ≤ 7 against (X1-2)(X1-1)(X2-4)...(X_(n-1)-2n+2)");
    out.note("P_(n) is displayed with a repeated (X1-1) factor; the product form above is the one the coefficient tables confirm");
    out
}

// Criterion 6

fn vanishing() -> Outcome {
    let mut out = Outcome::new();
    for w in 2..=4 {
        let seqs = dominant_seqs_of_weight(w);
        for s in &seqs {
            let bound = lemma26_bound(s);
            if let Some(witness) = lemma26_witness(s, bound) {
                out.check(false, format!("P{s} nonzero at {witness:?} (bound {bound})"));
            }
        }
        out.note(format!("weight {w}: {} dominant sequences", seqs.len()));
    }
    out
}

// Criterion 7

fn printed_forms() -> Vec<(DominantSeq, HarmonicForm)> {
    vec![
        (d(&[0, 1]), HarmonicForm::from_terms(vec![(0, rp(&[-1, 1], 1)), (1, rp(&[-1], 1))])),
        (d(&[2]), HarmonicForm::from_terms(vec![(0, rp(&[6, -7, 1], 2)), (1, rp(&[2], 1))])),
        (
            d(&[1, 1]),
            HarmonicForm::from_terms(vec![(0, rp(&[10, -11, 1], 1)), (1, rp(&[10, -1], 1)), (2, rp(&[7], 1))]),
        ),
        (
            d(&[3]),
            HarmonicForm::from_terms(vec![
                (0, rp(&[-90, 107, -18, 1], 6)),
                (1, rp(&[-14, 2], 1)),
                (2, rp(&[-8], 1)),
            ]),
        ),
        (
            d(&[2, 1]),
            HarmonicForm::from_terms(vec![
                (0, rp(&[-210, 235, -26, 1], 2)),
                (1, rp(&[-109, 29, -1], 2)),
                (2, rp(&[-99, 7], 1)),
                (3, rp(&[-59], 1)),
            ]),
        ),
        (
            d(&[4]),
            HarmonicForm::from_terms(vec![
                (0, rp(&[2520, -2954, 467, -34, 1], 24)),
                (1, rp(&[108, -19, 1], 1)),
                (2, rp(&[92, -8], 1)),
                (3, rp(&[48], 1)),
            ]),
        ),
    ]
}

/// `n - 1 - Σ_{i=1}^{k-2} H_{n-1}^{(i)}` for the 1 in position `k`.
fn printed_ladder(k: usize) -> HarmonicForm {
    let mut terms = vec![(0, rp(&[-1, 1], 1))];
    terms.extend((1..=k - 2).map(|i| (i, rp(&[-1], 1))));
    HarmonicForm::from_terms(terms)
}

fn harmonic_forms() -> Outcome {
    let start = Instant::now();
    let mut out = Outcome::new();
    let mut cases = printed_forms();
    cases.extend((2..=6).map(|k| (DominantSeq::unit(k), printed_ladder(k))));
    for (tail, printed) in cases {
        let report = fit_harmonic_form_auto(&tail).unwrap();
        let Some(fitted) = report.form() else {
            out.check(false, format!("{report}"));
            continue;
        };
        out.check(report.held_out.1 - report.held_out.0 + 1 == 5, format!("{tail}: held-out range {:?}", report.held_out));
        if *fitted == printed {
            out.note(format!("{report}"));
            continue;
        }
        out.check(false, format!("b{tail}: fitted {fitted}, printed {printed}"));
        let n = tail.min_order();
        let b = ckhopf::dominant::b_with_tail(n, &tail).unwrap();
        out.note(format!(
            "  at n = {n}: recursion {}, fitted form {}, printed form {}",
            rational_to_string(&b),
            rational_to_string(&fitted.eval(n)),
            rational_to_string(&printed.eval(n)),
        ));
    }
    // the harmonic sums themselves, against direct summation
    let direct: BigRational = (1..=5i64)
        .flat_map(|a| (a + 1..=5).map(move |b| q(1, a * b)))
        .sum();
    out.check(harmonic(5, 2) == direct, format!("H_5^(2) = {}", harmonic(5, 2)));
    let elapsed = start.elapsed();
    out.note(format!("in {elapsed:?}"));
    out.within(elapsed, BUDGET_HARMONIC);
    out
}

// Criterion 8

/// Everything the other criteria compute, rendered to bytes. Memo caches are
/// thread-local, so each call on a fresh thread recomputes from scratch.
fn artifacts() -> Vec<String> {
    let mut v = Vec::new();
    for n in 1..=4 {
        v.push(delta(n).unwrap().to_json());
        v.push(format!("{}", delta_coproduct_monomials(n).unwrap()));
    }
    for n in 1..=THREEWAY_MAX_N {
        let tables: [CoeffTable; 3] =
            [extract_coefficients(n).unwrap(), recursion_table(n).unwrap(), closed_form_table(n).unwrap()];
        v.extend(tables.iter().map(CoeffTable::to_json));
        v.push(tables[0].to_csv());
    }
    let cfg = VerifyConfig::default();
    for suite in Suite::ALL {
        v.push(serde_json::to_string(&run_suite(suite, &cfg)).unwrap());
    }
    for fam in ["a000142", "a001563", "a152947", "a067318", "a122105"] {
        let fam = Family::parse(fam, None).unwrap();
        v.push(serde_json::to_string(&sequence(&fam, 1, FAMILY_MAX_N)).unwrap());
    }
    for w in 1..=4 {
        for s in dominant_seqs_of_weight(w) {
            v.push(serde_json::to_string(&poly_record(&TailSeq::new(s.entries().to_vec()))).unwrap());
        }
    }
    let mut tails: Vec<DominantSeq> = printed_forms().into_iter().map(|(t, _)| t).collect();
    tails.extend((2..=6).map(DominantSeq::unit));
    for t in tails {
        v.push(serde_json::to_string(&fit_harmonic_form_auto(&t).unwrap().to_record()).unwrap());
    }
    v
}

fn fresh_thread<T: Send + 'static>(f: fn() -> T) -> T {
    thread::Builder::new()
        .stack_size(64 << 20)
        .spawn(f)
        .unwrap()
        .join()
        .unwrap()
}

fn determinism() -> Outcome {
    let mut out = Outcome::new();
    let first = fresh_thread(artifacts);
    let second = fresh_thread(artifacts);
    out.check(first.len() == second.len(), "artifact counts differ");
    for (i, (a, b)) in first.iter().zip(&second).enumerate() {
        out.check(a == b, format!("artifact {i} differs between runs"));
    }
    let bytes: usize = first.iter().map(String::len).sum();
    out.note(format!("{} library artifacts, {bytes} bytes, identical across two runs", first.len()));

    let invocations: [&[&str]; 4] = [
        &["--format", "json", "coeffs", "8", "--method", "all"],
        &["--format", "json", "verify"],
        &["delta", "4", "--what", "coproduct"],
        &["--format", "json", "fit", "2,1"],
    ];
    for args in invocations {
        let run = || Command::new(env!("CARGO_BIN_EXE_ckhopf")).args(args).output().unwrap();
        let (a, b) = (run(), run());
        out.check(a.stdout == b.stdout && a.status == b.status, format!("`ckhopf {}` output differs", args.join(" ")));
    }
    out.note(format!("{} CLI invocations byte-identical across two runs", invocations.len()));
    out
}

#[test]
fn acceptance() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 8] = [
        ("1 regression: δ expansions, Δ(δ) monomials, S(δ) tables", regression),
        ("2 three-way coefficient agreement, n ≤ 8", threeway),
        ("3 axiom suites at desk scale", axioms),
        ("4 closed-form coefficient families, n ≤ 12", families),
        ("5 P polynomial fixtures", polynomials),
        ("6 vanishing of P below the bound, weights 2..4", vanishing),
        ("7 harmonic closed forms by fitting", harmonic_forms),
        ("8 determinism of all artifacts", determinism),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        let outcome = fresh_thread(run);
        let verdict = if outcome.passed { "PASS" } else { "FAIL" };
        println!("{verdict} {name}");
        for line in &outcome.details {
            println!("    {line}");
        }
        if !outcome.passed {
            failed.push(name);
        }
    }
    println!("{} of 8 criteria passed", 8 - failed.len());
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
