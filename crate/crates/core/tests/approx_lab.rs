use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use palinprefix::bracket::{det3, Triple};
use palinprefix::exact::DEFAULT_REFINEMENT_CAP;
use palinprefix::lab::*;
use palinprefix::word::{delta_of_word, generate_fibonacci, palindromic_prefix_lengths, PsiFunction};
use palinprefix::{Error, WordSpec};

const SCAN_BOUND: u64 = 100_000;

fn fib_approximants() -> &'static ApproximantSequence {
    static SEQ: OnceLock<ApproximantSequence> = OnceLock::new();
    SEQ.get_or_init(|| approximants_for(&WordSpec::Fibonacci, &Phi::standard(), 16).unwrap())
}

fn fib_scan() -> &'static MinimalPointSequence {
    static SCAN: OnceLock<MinimalPointSequence> = OnceLock::new();
    SCAN.get_or_init(|| minimal_points(&fib_approximants().xi, SCAN_BOUND, 2, DEFAULT_REFINEMENT_CAP).unwrap())
}

fn phi(a: u64, b: u64) -> Phi {
    Phi::new(BTreeMap::from([(0, a), (1, b)])).unwrap()
}

#[test]
fn continued_fraction_from_a_word() {
    let cf = build_xi_from_word(&generate_fibonacci(8), &Phi::standard()).unwrap();
    assert_eq!(cf.head(), &[1, 2, 1, 1, 2, 1, 2, 1]);
    assert!(matches!(Phi::new(BTreeMap::from([(0, 2), (1, 2)])), Err(Error::NonInjectivePhi)));
    assert!("a=1,b=1".parse::<Phi>().is_err());
    let constant = palinprefix::Word::from_letters("aaaa").unwrap();
    assert!(build_xi_from_word(&constant, &Phi::standard()).is_err());
}

#[test]
fn approximant_invariants() {
    let seq = fib_approximants();
    assert_eq!(seq.v(0), &Triple::from_i64(1, 0, 1));
    assert_eq!(seq.v(1), &Triple::from_i64(1, 1, 0));
    assert_eq!(seq.v(2), &Triple::from_i64(4, 3, 2));
    assert_eq!(seq.v(3), &Triple::from_i64(25, 18, 13));
    assert_eq!(seq.v(4), &Triple::from_i64(576, 415, 299));
    for i in 0..seq.count() {
        let m = &seq.matrices[i];
        assert_eq!(m.b, m.c, "symmetry at {i}");
        assert!(seq.det2(i).abs().is_one());
        let v = seq.v(i);
        assert_eq!(num_integer::Integer::gcd(&v.x0, &num_integer::Integer::gcd(&v.x1, &v.x2)), BigInt::one());
    }
    assert!((2..seq.count()).all(|i| seq.v(i).x0 > seq.v(i - 1).x0));
}

#[test]
fn approximants_need_enough_palindromes() {
    let short = generate_fibonacci(40);
    assert!(matches!(palindromic_approximants(&short, &Phi::standard(), 12), Err(Error::InsufficientData(_))));
}

#[test]
fn relabelling_keeps_the_exponent() {
    let spec = WordSpec::Fibonacci;
    let a = approximants_for(&spec, &Phi::standard(), 22).unwrap();
    let b = approximants_for(&spec, &phi(3, 7), 22).unwrap();
    assert_ne!(a.v(5), b.v(5));
    let ga = growth_exponent(&a.norm_logs(), 0.5).unwrap().value;
    let gb = growth_exponent(&b.norm_logs(), 0.5).unwrap().value;
    assert!((ga - GOLDEN).abs() < 0.05 && (gb - GOLDEN).abs() < 0.05, "{ga} {gb}");
    let w = generate_fibonacci(1_000_000);
    let d = delta_of_word(&palindromic_prefix_lengths(w.symbols()), 0.5).unwrap().value;
    assert!((d - GOLDEN).abs() < 1e-2);
}

#[test]
fn bracket_recurrence_on_approximants() {
    let fib = fib_approximants();
    let r = verify_bracket_recurrence(fib, &PsiFunction::fibonacci(), 3).unwrap();
    assert!(r.failures.is_empty(), "{:?}", r.failures);
    assert!(r.entries.iter().filter(|e| e.index >= 3).all(|e| e.equal_up_to_sign == Some(true) && e.bounds_ok));

    let spec = WordSpec::Sturmian { head: vec![], period: vec![2] };
    let s2 = approximants_for(&spec, &Phi::standard(), 14).unwrap();
    let psi = PsiFunction::sturmian(&[], &[2]).unwrap();
    let r = verify_bracket_recurrence(&s2, &psi, 4).unwrap();
    assert!(r.failures.is_empty(), "{:?}", r.failures);
}

#[test]
fn index_function_from_points() {
    let fib = fib_approximants();
    let ex = extract_psi_from_points(&fib.triples).unwrap();
    for t in 3..fib.count() - 1 {
        assert_eq!(ex.psi.eval(t), Some(t - 2), "t = {t}");
    }
    let scan = fib_scan();
    let start = scan.points.iter().position(|p| p.det2().abs().is_one()).unwrap();
    let pts = &scan.points[start..];
    assert!(pts.iter().all(|p| !p.det2().is_zero()));
    let ex = extract_psi_from_points(pts).unwrap();
    for t in 1..pts.len() - 1 {
        if det3(&pts[t - 1], &pts[t], &pts[t + 1]).is_zero() {
            assert_eq!(ex.psi.eval(t), Some(t - 1), "t = {t}");
        } else {
            assert_ne!(ex.psi.eval(t), Some(t - 1), "t = {t}");
        }
    }
}

#[test]
fn palindromes_match_dependence() {
    let seq = approximants_for(&WordSpec::Fibonacci, &Phi::standard(), 14).unwrap();
    let n = &seq.lengths;
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let mut checked = 0;
    while checked < 100 {
        let (i0, i1, i2) = (rng.gen_range(0..14), rng.gen_range(0..14), rng.gen_range(0..14));
        if n[i2] < n[i0].min(n[i1]) || n[i2] > n[i0] + n[i1] {
            assert!(matches!(lemma55_check(&seq, i0, i1, i2), Err(Error::Precondition(_))));
            continue;
        }
        assert!(lemma55_check(&seq, i0, i1, i2).unwrap().consistent(), "{i0} {i1} {i2}");
        checked += 1;
    }
    for i in 0..14 {
        let r = lemma55_check(&seq, i, i, i).unwrap();
        assert!(r.palindrome && r.dependent);
    }
    for i2 in 1..14 {
        for i0 in 0..14 {
            for i1 in 0..=i2 {
                if n[i2] >= n[i0].saturating_sub(n[i1])
                    && n[i2] >= n[i0].min(n[i1])
                    && n[i2] <= n[i0] + n[i1]
                    && i2 >= i1
                {
                    let r = lemma55_check(&seq, i0, i1, i2).unwrap();
                    assert!(r.palindrome && r.dependent, "{i0} {i1} {i2}");
                }
            }
        }
    }
}

#[test]
fn scan_contains_the_approximants() {
    let scan = fib_scan();
    assert!(scan.structure_ok() && scan.records_ok());
    let fib = fib_approximants();
    let bound = BigInt::from(SCAN_BOUND);
    for v in fib.triples.iter().skip(2).filter(|v| v.norm() <= bound) {
        assert!(scan.position_of(v).is_some(), "{v} missing");
    }
    let one = minimal_points(&fib.xi, 1, 1, DEFAULT_REFINEMENT_CAP).unwrap();
    assert_eq!(one.points, vec![Triple::from_i64(1, 1, 1)]);
}

#[test]
fn selection_and_chains() {
    let scan = fib_scan();
    let sel = select_e_points(scan, 0.2, 0).unwrap();
    assert!(!sel.pairs.is_empty() && sel.ordered());
    for p in sel.pairs.iter().filter(|p| p.d_next.is_some()) {
        let pts = &scan.points;
        let c = reconstruct_chain(p.k, &pts[p.d], &pts[p.e], &pts[p.d_next.unwrap()], Some(GOLDEN)).unwrap();
        assert!(c.ok(), "k = {}", p.k);
        assert!(c.links.iter().all(|x| scan.position_of(x).is_some()));
        assert_eq!(c.links.last(), Some(&pts[p.d]));
    }
    let late = sel.pairs.last().unwrap();
    let lx = &scan.l[late.e];
    assert!(in_a_eps(&scan.points[late.e], lx, 0.05));
    assert!(matches!(select_e_points(scan, 1.5, 0), Err(Error::Domain(_))));
    let lone = select_e_points_in(&scan.points[..2], &scan.l[..2], &[1], 0.5, 0).unwrap();
    assert!(lone.pairs.is_empty() && !lone.warnings.is_empty());
}

#[test]
fn sums_of_consecutive_points() {
    let scan = fib_scan();
    let rows = prop36_counterexample(scan);
    assert!(!rows.is_empty());
    for r in &rows {
        assert!(r.primitive && !r.collinear_to_minimal && r.error_bound_ok);
        if r.index >= 2 {
            assert!(r.sandwiched, "i = {}", r.index);
        }
    }
}

#[test]
fn corners_are_independent_approximants() {
    let rows = prop37_check(fib_scan(), fib_approximants(), 2);
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r.is_corner == r.independent));
}

#[test]
fn heights_and_inequalities() {
    let scan = fib_scan();
    let h = height_diagnostics(scan, GOLDEN, 0.2).unwrap();
    assert!(h.bounded(PLANE_RATIO_UPPER), "{} {}", h.ratio_min, h.ratio_max);
    assert!(scan_inequalities(scan).unwrap().all_hold(PLANE_RATIO_UPPER));
}

#[test]
fn brackets_of_consecutive_approximants() {
    let seq = fib_approximants();
    let mut members = 0;
    for i in 4..seq.count() - 1 {
        let (x, z) = (seq.v(i), seq.v(i + 1));
        let kappa = ((z.norm().bits() as f64) / (2.0 * x.norm().bits() as f64)).max(0.81);
        if kappa >= 1.0 {
            continue;
        }
        match corollary210_check(x, x, z, &seq.xi_enclosure, kappa, 0.05, 0.5) {
            Ok(m) => {
                assert!(m.member, "i = {i}, exponent {}", m.exponent);
                members += 1;
            }
            Err(Error::Precondition(_)) => {}
            Err(e) => panic!("{e}"),
        }
    }
    assert!(members > 0);
    assert!(matches!(
        corollary210_check(seq.v(5), seq.v(5), seq.v(6), &seq.xi_enclosure, 0.9, 0.2, 0.5),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn exponents() {
    let s2 = SIGMA2;
    assert!((epsilon_one(s2, s2).unwrap() - 0.2322).abs() < 5e-4);
    let b: f64 = 1.8;
    assert!((epsilon_one(b, b).unwrap() - (2.0 - b).powi(2) * (1.0 + b)).abs() < 1e-12);
    assert!(epsilon_one(1.999_999, 1.999_999).unwrap() < 1e-10);
    assert!(epsilon_one(2.1, 2.1).is_err());

    let seq = fib_approximants();
    let chk = error_exponent_check(&seq.triples[1..], &seq.l[1..], GOLDEN, 0.05, 0.5).unwrap();
    assert!(chk.within && chk.growth_ok, "{:?}", chk.ratios);
    assert!(matches!(growth_exponent(&[1.0, 1.0, 1.0, 1.0, 1.0], 0.5), Err(Error::GrowthHypothesis { .. })));
    assert!(matches!(growth_exponent(&[1.0, 2.0], 0.5), Err(Error::InsufficientData(_))));

    let scan = fib_scan();
    let est = estimate_beta_eps(&scan.points, &scan.l, 0.2, 0.5);
    assert!(est.is_ok() || matches!(est, Err(Error::InsufficientData(_))));
}

#[test]
fn exports_are_stable() {
    let scan = fib_scan();
    let rows = point_rows(&scan.points, &scan.l, &scan.independent, 0.2);
    let a = to_json("points", &rows).unwrap();
    let b = to_json("points", &point_rows(&scan.points, &scan.l, &scan.independent, 0.2)).unwrap();
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["schema"], SCHEMA);
    assert_eq!(v["data"].as_array().unwrap().len(), scan.len());
    let csv = trace_csv(&[]);
    assert_eq!(csv.lines().next(), Some("index,norm_log,L_log,ratio"));
}
