//! Acceptance suite: one line per criterion, nonzero exit if any required
//! criterion fails. Criterion 13 is experimental and reports without failing.
//!
//! Run with `cargo test -p hyperwitt --test acceptance`.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hyperwitt::census::enumerate;
use hyperwitt::function_field::*;
use hyperwitt::gf::Gf;
use hyperwitt::hyperfield::{find_isomorphism, validate_axioms, FiniteHyperfield};
use hyperwitt::oracles::*;
use hyperwitt::quadratic::*;
use hyperwitt::valuation::*;
use hyperwitt::Execution;

const SEED: u64 = 20_26;

enum Outcome {
    Pass(String),
    Fail(String),
    /// Experimental: reported, never fails the run.
    Report(String),
}

type Check = fn() -> Outcome;

fn ok_if(cond: bool, detail: String) -> Outcome {
    if cond {
        Outcome::Pass(detail)
    } else {
        Outcome::Fail(detail)
    }
}

const ODD_PRIMES: [u64; 14] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
const ODD_Q: [u64; 18] = [3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31, 37, 41, 43, 47, 49];

fn c01_axioms() -> Outcome {
    let corpus = match corpus() {
        Ok(c) => c,
        Err(e) => return Outcome::Fail(format!("corpus: {e}")),
    };
    let bad: Vec<String> = corpus
        .iter()
        .filter(|(_, h)| !validate_axioms(h).is_valid())
        .map(|(name, h)| format!("{name}: {:?}", validate_axioms(h)))
        .collect();
    ok_if(corpus.len() >= 30 && bad.is_empty(), format!("{} hyperfields checked, {} invalid {bad:?}", corpus.len(), bad.len()))
}

fn c02_local_classification() -> Outcome {
    let hs: Vec<(u64, FiniteHyperfield)> = ODD_PRIMES.iter().map(|&p| (p, qh_padic(p).expect("odd prime"))).collect();
    let mut wrong = Vec::new();
    for (p, a) in &hs {
        for (p2, b) in &hs {
            if find_isomorphism(a, b).is_some() != (p % 4 == p2 % 4) {
                wrong.push((*p, *p2));
            }
        }
    }
    let q3q5 = find_isomorphism(&hs[0].1, &hs[1].1).is_none();
    ok_if(wrong.is_empty() && q3q5, format!("{} ordered pairs, {} disagreements {wrong:?}; Q(Q3) ≇ Q(Q5): {q3q5}", hs.len() * hs.len(), wrong.len()))
}

fn c03_springer() -> Outcome {
    let mut wrong = Vec::new();
    for p in ODD_PRIMES {
        let (ext, _) = group_extension_build(&qh_finite_field(p).unwrap(), 1).unwrap();
        if find_isomorphism(&qh_padic(p).unwrap(), &ext).is_none() {
            wrong.push(format!("Qp:{p}"));
        }
    }
    for q in ODD_Q {
        let (ext, _) = group_extension_build(&qh_finite_field(q).unwrap(), 1).unwrap();
        if find_isomorphism(&qh_laurent(q).unwrap(), &ext).is_none() {
            wrong.push(format!("F{q}((t))"));
        }
    }
    ok_if(wrong.is_empty(), format!("{} fields, failures {wrong:?}", ODD_PRIMES.len() + ODD_Q.len()))
}

fn c04_square_class_counts() -> Outcome {
    let mut rows = vec![("C", qh_complex().order() - 1, 1usize), ("R", qh_real().order() - 1, 2)];
    for p in ODD_PRIMES {
        rows.push(("Qp (p odd)", qh_padic(p).unwrap().order() - 1, 4));
    }
    // 2^([k:Q2] + 2) at degree 1.
    rows.push(("Q2", qh_padic(2).unwrap().order() - 1, 1 << (1 + 2)));
    let desc_ok = ["C", "R", "Qp:3", "Q2"]
        .iter()
        .zip([1u64, 2, 4, 8])
        .all(|(d, n)| FieldDescriptor::parse(d).unwrap().square_class_count() == Index::Finite(n));
    let wrong: Vec<_> = rows.iter().filter(|(_, got, want)| got != want).collect();
    ok_if(wrong.is_empty() && desc_ok, format!("C/R/Qp/Q2 = 1/2/4/8 over {} fields; descriptor counts agree: {desc_ok}", rows.len()))
}

/// The classification table, row by row: sub-case, `(K*:U_vK*²)`, `(U_vK*²:T)`, `B(T)`.
const ZOO: [(&str, &str, &str, &[&str]); 10] = [
    ("1", "1", "infinity", &["K*", "U_vK*²"]),
    ("2a", "2", "1 or 2", &["U_vK*²", "±T"]),
    ("2b", "2", "4", &["±T"]),
    ("2c", "2", "8", &["U_vK*²"]),
    ("3a", "2", "infinity", &["U_vK*²"]),
    ("3b", "4", "2", &["±T"]),
    ("4a", "2", "1", &["U_vK*²", "T"]),
    ("4b", "1", "infinity", &["K*", "U_vK*²"]),
    ("5", "1 or 2", "1 or 2", &["±T"]),
    ("6", "1", "1", &["K*", "U_vK*²", "T"]),
];

fn c05_case_table() -> Outcome {
    let reps = case_representatives();
    let mut wrong = Vec::new();
    for ((case, v), (tag, iv, iu, basic)) in reps.iter().zip(ZOO) {
        let r = match classify_and_compare(v) {
            Ok(r) => r,
            Err(e) => {
                wrong.push(format!("{tag}: {e}"));
                continue;
            }
        };
        let a = &r.classification.asserted;
        let basic_set: HashSet<String> = a.basic.iter().map(ToString::to_string).collect();
        let want: HashSet<String> = basic.iter().map(|s| s.to_string()).collect();
        let row_ok = case.tag() == tag
            && r.classification.case == *case
            && a.idx_value.to_string() == iv
            && a.idx_unit.to_string() == iu
            && basic_set == want
            && r.agrees;
        if !row_ok {
            wrong.push(format!("{tag}: asserted {a} computed {:?}", r.computed));
        }
    }
    ok_if(reps.len() == 10 && wrong.is_empty(), format!("{} rows, mismatches {wrong:?}", reps.len()))
}

fn c06_mu() -> Outcome {
    // [μ0 ≠ ∅ iff dyadic, μ1 ≠ ∅ iff p-adic, μ2 ∪ μ3 ≠ ∅ iff p-adic with p ≠ 2]
    let expected: [(&str, [bool; 3]); 6] = [
        ("R", [false, false, false]),
        ("C", [false, false, false]),
        ("Qp:3", [false, true, true]),
        ("Qp:5", [false, true, true]),
        ("Q2", [true, true, false]),
        ("F3((s))", [false, true, true]),
    ];
    let mut wrong = Vec::new();
    for (d, want) in expected {
        let k = FieldDescriptor::parse(d).unwrap();
        match mu_from_witnesses(&k) {
            Ok(set) => {
                if collapse(&set) != want || set != mu_nonempty(&k) {
                    wrong.push(format!("{d}: {set:?}"));
                }
            }
            Err(e) => wrong.push(format!("{d}: {e}")),
        }
    }
    ok_if(wrong.is_empty(), format!("6 constant fields, mismatches {wrong:?}"))
}

fn c07_transport() -> Outcome {
    let corpus = corpus().unwrap();
    // T is the canonical unit subgroup; U defaults to the span of B(T).
    let with_units: Vec<_> = corpus.iter().filter_map(|(n, h)| canonical_unit_subgroup(h).map(|u| (n, h, u))).collect();
    let (mut checked, mut wrong) = (0, Vec::new());
    for (i, (n1, h1, u1)) in with_units.iter().enumerate() {
        for (n2, h2, _) in &with_units[i..] {
            if h1.order() != h2.order() {
                continue;
            }
            let Some(alpha) = find_isomorphism(h1, h2) else { continue };
            checked += 1;
            match transport_check(&alpha, u1, None) {
                Ok(r) if r.all_hold() => {}
                Ok(r) => wrong.push(format!("{n1} → {n2}: {r:?}")),
                Err(e) => wrong.push(format!("{n1} → {n2}: {e}")),
            }
        }
    }
    ok_if(checked > 0 && wrong.is_empty(), format!("{checked} isomorphisms, failures {wrong:?}"))
}

fn c08_symbols() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let nonzero = |rng: &mut ChaCha8Rng| loop {
        let a: i64 = rng.gen_range(-30..=30);
        if a != 0 {
            break a;
        }
    };
    let (mut instances, mut wrong) = (0, Vec::new());
    let mut pairs = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13] {
        for _ in 0..100 {
            let (a, b) = (nonzero(&mut rng), nonzero(&mut rng));
            pairs.push((a, b));
            instances += 1;
            let got = hilbert_symbol_int(a, b, QPlace::Prime(p)).unwrap();
            if got != hilbert_congruence(a, b, p) {
                wrong.push(format!("({a},{b})_{p}"));
            }
        }
    }
    for &(a, b) in pairs.iter().take(100) {
        instances += 1;
        if hilbert_symbol_int(a, b, QPlace::Infinity).unwrap() != hilbert_real(a, b) {
            wrong.push(format!("({a},{b})_∞"));
        }
    }
    let product_ok = pairs.iter().all(|&(a, b)| {
        relevant_places(a, b).into_iter().map(|v| hilbert_symbol_int(a, b, v).unwrap()).product::<i32>() == 1
    });

    // Tame symbols against the completion search, places of degree 1 and 2.
    let mut tame = 0;
    for q in [3u64, 5] {
        let f = Gf::new(q).unwrap();
        let deg2 = first_irreducibles(&f, 64).into_iter().filter(|p| p.deg() == 2).take(if q == 3 { 2 } else { 1 });
        let places: Vec<Poly> = first_irreducibles(&f, 3).into_iter().chain(deg2).collect();
        for pi in &places {
            let reps = if pi.deg() == 1 { 25 } else { 4 };
            for _ in 0..reps {
                let g1 = random_ratfn(&f, &mut rng, 3);
                let g2 = random_ratfn(&f, &mut rng, 3);
                let place = Place::finite(pi.clone()).unwrap();
                let sym = tame_symbol(&g1, &g2, &place).unwrap();
                tame += 1;
                if (sym == 1) != local_represents_one(&g1, &g2, pi) {
                    wrong.push(format!("({g1}, {g2}) at {pi}"));
                }
            }
        }
    }
    ok_if(
        instances >= 500 && wrong.is_empty() && product_ok,
        format!("{instances} Hilbert instances, {tame} tame instances, disagreements {wrong:?}, product formula: {product_ok}"),
    )
}

fn random_poly(f: &Gf, rng: &mut ChaCha8Rng, max_deg: usize) -> Poly {
    loop {
        let d = rng.gen_range(0..=max_deg);
        let p = Poly::new(f, (0..=d).map(|_| rng.gen_range(0..f.q())).collect());
        if !p.is_zero() {
            return p;
        }
    }
}

fn random_ratfn(f: &Gf, rng: &mut ChaCha8Rng, max_deg: usize) -> RatFn {
    let num = random_poly(f, rng, max_deg);
    let den = if rng.gen_bool(0.3) { random_poly(f, rng, 2) } else { Poly::one(f) };
    RatFn::new(num, den).unwrap()
}

fn c09_classes_and_witnesses() -> Outcome {
    let f = Gf::new(3).unwrap();
    let places: Vec<Place> = first_irreducibles(&f, 10).into_iter().map(|p| Place::finite(p).unwrap()).collect();
    let classes = match distinct_classes_witness(&places) {
        Ok(c) => c,
        Err(e) => return Outcome::Fail(format!("distinct classes: {e}")),
    };
    // Independent distinctness: no quotient of two products is a square.
    let elems: Vec<RatFn> = classes.iter().map(|c| RatFn::parse(&f, &c.element).unwrap()).collect();
    let canon: HashSet<String> = classes.iter().map(|c| format!("{:?}", c.class)).collect();
    let pair_sample_ok = (0..elems.len()).step_by(37).all(|i| (i + 1..elems.len()).step_by(29).all(|j| !is_square_oracle(&elems[i].div(&elems[j]).unwrap())));
    let two_ok = classes.len() == 1024 && canon.len() == 1024 && pair_sample_ok;

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut found, mut sampled, mut failures) = (0, 0, Vec::new());
    while sampled < 100 {
        let x = RatFn::from_poly(random_poly(&f, &mut rng, 4));
        if is_square_oracle(&x) {
            continue;
        }
        sampled += 1;
        let mut ok = false;
        for cand in [x.clone(), x.neg()] {
            if is_square_oracle(&cand) {
                continue;
            }
            if let Ok(w) = non_rigidity_witness(&cand, WitnessParams::default()) {
                // Certificates re-derived without the library's class machinery.
                let a = RatFn::parse(&f, &w.a).unwrap();
                let y = RatFn::parse(&f, &w.y).unwrap();
                let sum_ok = a.square().add(&cand) == y || (w.places.is_empty() && y == RatFn::t(&f));
                let not_square = !is_square_oracle(&y);
                let not_x_class = !is_square_oracle(&y.div(&cand).unwrap());
                if w.verified() && sum_ok && not_square && not_x_class {
                    ok = true;
                    break;
                }
            }
        }
        if ok {
            found += 1;
        } else {
            failures.push(x.to_string());
        }
    }
    ok_if(two_ok && found == 100, format!("(2) {} classes from 10 places, distinct: {two_ok}; (3) {found}/100 witnesses, failures {failures:?}", classes.len()))
}

fn c10_local_global() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 10);
    let (mut n, mut trues, mut wrong) = (0, 0, Vec::new());
    for (q, bound) in [(3u64, 5usize), (5, 4)] {
        let f = Gf::new(q).unwrap();
        for _ in 0..30 {
            let z = RatFn::from_poly(random_poly(&f, &mut rng, 4));
            let x = RatFn::from_poly(random_poly(&f, &mut rng, 4));
            let decided = represents_with_certificate(&z, &x).unwrap();
            let searched = represents_search(&z, &x, bound);
            n += 1;
            trues += usize::from(decided.represented);
            let obstruction_ok = match &decided.obstruction {
                // A failing place must carry a genuine local obstruction:
                // z = a² + x b² locally iff ⟨1/z, x/z⟩ represents 1 there.
                Some(Place::Finite(pi)) if q.pow(6 * pi.deg() as u32) <= 1_000_000 => {
                    !local_represents_one(&z.inv().unwrap(), &x.div(&z).unwrap(), pi)
                }
                _ => true,
            };
            if decided.represented != searched.is_some() || !obstruction_ok {
                wrong.push(format!("F{q}: z={z} x={x} decided={} search={}", decided.represented, searched.is_some()));
            }
        }
    }
    ok_if(n >= 50 && wrong.is_empty(), format!("{n} instances ({trues} represented), disagreements {wrong:?}"))
}

fn c11_composed() -> Outcome {
    match composed_check(3, 100, 24, SEED) {
        Ok(r) => ok_if(r.passed(), format!("{} classes, indices ({}, {}), tower commutes: {}, residue sums: {}", r.classes_hit, r.idx_value, r.idx_unit, r.tower_commutes, r.residue_sums_ok)),
        Err(e) => Outcome::Fail(e.to_string()),
    }
}

fn c12_char2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 12);
    let (mut triples, mut wrong) = (0, Vec::new());
    for q in [2u64, 4] {
        let f = Gf::new(q).unwrap();
        let mut done = 0;
        while done < 100 {
            let x = random_ratfn(&f, &mut rng, 4);
            let (_, x1) = k2_coordinates(&x).unwrap();
            if x1.is_zero() {
                continue; // x is a square
            }
            let a = random_ratfn(&f, &mut rng, 2);
            let b = random_ratfn(&f, &mut rng, 2);
            let y = a.square().add(&b.square().mul(&x));
            if y.is_zero() || k2_coordinates(&y).unwrap().1.is_zero() {
                continue;
            }
            let z = random_ratfn(&f, &mut rng, 4);
            done += 1;
            triples += 1;
            let (zy, zx) = (char2_represents(&z, &y).unwrap(), char2_represents(&z, &x).unwrap());
            if zy != zx {
                wrong.push(format!("F{q}: x={x} y={y} z={z}"));
            }
        }
    }
    let samples = ["t^5+t+1", "1/(t^2+t+1)", "t"];
    let dims: Vec<u32> = ["F2(t)", "F4(t)"]
        .iter()
        .map(|d| char2_dimension(&FieldDescriptor::parse(d).unwrap(), &samples).map_or(0, |r| if r.independent { r.dimension } else { 0 }))
        .collect();
    ok_if(wrong.is_empty() && dims == [2, 2], format!("{triples} triples, violations {wrong:?}; [K:K²] for F2(t), F4(t) = {dims:?}"))
}

fn c13_census() -> Outcome {
    let rows = match enumerate(4, Execution::default()) {
        Ok(r) => r,
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    let counts: Vec<String> = rows.iter().map(|r| format!("q={}: {} (table {})", r.q, r.abstract_count, r.witt_count.unwrap_or(0))).collect();
    let small_ok = rows.iter().filter(|r| r.q <= 2).all(|r| r.matches);
    if !small_ok {
        return Outcome::Fail(format!("abstract counts {counts:?}"));
    }
    let q4 = rows.iter().find(|r| r.q == 4).expect("q = 4 row");
    if q4.matches {
        Outcome::Pass(format!("abstract counts {counts:?}"))
    } else {
        let divergent: Vec<String> = q4.unrealized().map(|c| serde_json::to_string(&c.table).unwrap()).collect();
        Outcome::Report(format!("abstract counts {counts:?}; q=4 mismatch, {} tables without a known field: {}", divergent.len(), divergent.join(" ")))
    }
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, Check, Option<u64>); 13] = [
        (1, "axiom suite", c01_axioms, Some(10)),
        (2, "local-field classification", c02_local_classification, Some(5)),
        (3, "Springer decomposition", c03_springer, None),
        (4, "square-class counts", c04_square_class_counts, None),
        (5, "case table regression", c05_case_table, None),
        (6, "μ machinery", c06_mu, None),
        (7, "transport diagrams", c07_transport, None),
        (8, "Hilbert and tame symbols", c08_symbols, Some(30)),
        (9, "2^n classes and non-rigidity", c09_classes_and_witnesses, Some(60)),
        (10, "local-global engine", c10_local_global, None),
        (11, "rank-two element model", c11_composed, None),
        (12, "characteristic 2", c12_char2, None),
        (13, "census (experimental)", c13_census, Some(300)),
    ];
    let mut failed = 0;
    for (n, name, check, limit) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let over = limit.is_some_and(|l| elapsed > Duration::from_secs(l));
        let limit_s = limit.map_or(String::new(), |l| format!(", limit {l} s"));
        let (status, detail) = match outcome {
            Outcome::Pass(d) if !over => ("PASS", d),
            Outcome::Pass(d) | Outcome::Fail(d) => ("FAIL", d),
            Outcome::Report(d) => ("REPORT", d),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("{status:<6} {n:>2} {name} ({:.2} s{limit_s}): {detail}", elapsed.as_secs_f64());
    }
    println!("acceptance: {} of 13 required criteria failed", failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
