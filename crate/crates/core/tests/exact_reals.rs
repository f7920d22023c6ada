use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use palinprefix::exact::*;
use palinprefix::{Error, Triple};

fn q(s: &str) -> Q {
    s.parse().unwrap()
}

fn cf(s: &str) -> ContinuedFraction {
    s.parse().unwrap()
}

/// Sign of `k * den^2 - (a * num + b * den)^2` for a rational `num/den`.
fn quadratic_sign(v: &Q, k: i64, a: i64, b: i64) -> Ordering {
    let (n, d) = (v.numer(), v.denom());
    let lhs = BigInt::from(k) * d * d;
    let t = BigInt::from(a) * n + BigInt::from(b) * d;
    lhs.cmp(&(&t * &t))
}

#[test]
fn convergents_of_silver_conjugate() {
    let c = convergents(&ContinuedFraction::periodic(0, vec![], vec![2]).unwrap(), 4).unwrap();
    let got: Vec<(i64, i64)> =
        c.iter().map(|c| (c.p.clone().try_into().unwrap(), c.q.clone().try_into().unwrap())).collect();
    assert_eq!(got, vec![(0, 1), (1, 2), (2, 5), (5, 12)]);
    let dotted = convergents(&cf("cf:0;2,2,2..."), 12).unwrap();
    assert_eq!(dotted, convergents(&ContinuedFraction::periodic(0, vec![], vec![2]).unwrap(), 12).unwrap());
}

#[test]
fn convergents_of_a_finite_expansion() {
    let x = cf("cf:3;7,15,1");
    let c = convergents(&x, 4).unwrap();
    assert_eq!((c[3].p.clone(), c[3].q.clone()), (BigInt::from(355), BigInt::from(113)));
    assert_eq!(convergents(&x, 6).unwrap().len(), 4);
    let open = ContinuedFraction::open(3, vec![7]).unwrap();
    assert!(matches!(convergents(&open, 3), Err(Error::InsufficientData(_))));
}

#[test]
fn narrow_enclosures_of_quadratic_irrationals() {
    let width = Q::new(BigInt::one(), BigInt::from(10).pow(50));
    let golden = enclose(&cf("cf:0;(1)"), &width).unwrap();
    assert!(golden.width() <= width);
    let (lo, hi) = (golden.lo(), golden.hi());
    let sides = [quadratic_sign(lo, 5, 2, 1), quadratic_sign(hi, 5, 2, 1)];
    assert!(sides.contains(&Ordering::Greater) && sides.contains(&Ordering::Less));

    let silver = enclose(&cf("cf:0;(2)"), &width).unwrap();
    let sides = [quadratic_sign(silver.lo(), 2, 1, 1), quadratic_sign(silver.hi(), 2, 1, 1)];
    assert!(sides.contains(&Ordering::Greater) && sides.contains(&Ordering::Less));
}

#[test]
fn nearest_integers() {
    let e = RealEnclosure::at_depth(Arc::new(cf("cf:0;(1)")), 30).unwrap();
    assert_eq!(nearest_integer(&BigInt::from(10), &e), NearestInteger::Value(BigInt::from(6)));
    assert_eq!(nearest_integer_of_square(&BigInt::from(10), &e), NearestInteger::Value(BigInt::from(4)));
    let half = RationalInterval::new(q("2/5"), q("3/5"));
    assert_eq!(nearest_in(&half), NearestInteger::Undecidable);
    let neg = RationalInterval::new(q("-13/10"), q("-6/5"));
    assert_eq!(nearest_in(&neg), NearestInteger::Value(BigInt::from(-1)));
    let (a1, a2) = nearest_pair_certified(&BigInt::from(1000), &Arc::new(cf("cf:0;(1)")), 10_000).unwrap();
    assert_eq!((a1, a2), (BigInt::from(618), BigInt::from(382)));
}

#[test]
fn nested_schedules_for_the_error_functional() {
    let x = Arc::new(cf("cf:0;(1,2)"));
    let point = Triple::from_i64(7, 5, 3);
    let mut by_one = RealEnclosure::at_depth(x.clone(), 2).unwrap();
    let mut by_depth = RealEnclosure::at_depth(x, 2).unwrap();
    let mut coarse = eval_L(&point, &by_one);
    for _ in 0..6 {
        by_one.refine(10_000).unwrap();
        let fine = eval_L(&point, &by_one);
        assert!(coarse.contains_interval(&fine));
        coarse = fine;
    }
    by_depth.refine_to_width(&by_one.width(), 10_000).unwrap();
    let other = eval_L(&point, &by_depth);
    assert!(other.lo <= coarse.hi && coarse.lo <= other.hi);
}

#[test]
fn comparisons_and_caps() {
    let x = Arc::new(cf("cf:0;(1)"));
    let mut e = RealEnclosure::at_depth(x.clone(), 2).unwrap();
    let good = Triple::from_i64(13, 8, 5);
    let bad = Triple::from_i64(10, 6, 4);
    assert_eq!(compare_L(&good, &bad, &mut e, 10_000).unwrap(), Ordering::Less);
    assert_eq!(compare_L(&good, &good, &mut e, 64).unwrap(), Ordering::Equal);
    let mirror = good.neg();
    assert!(matches!(compare_L(&good, &mirror, &mut e, 64), Err(Error::RefinementCap { cap: 64 })));
}

#[test]
fn open_expansions_report_missing_quotients() {
    let open = Arc::new(ContinuedFraction::open(0, vec![1, 1, 1]).unwrap());
    let mut e = RealEnclosure::at_depth(open, 2).unwrap();
    let mut last = Ok(());
    for _ in 0..5 {
        last = e.refine(10_000);
        if last.is_err() {
            break;
        }
    }
    assert!(last.is_err());
}

#[test]
fn cache_agrees_with_direct_products() {
    let x = Arc::new(cf("cf:0;1,(2,3)"));
    let mut cache = ConvergentCache::with_budget(x.clone(), 4, 1 << 10);
    for n in [0usize, 3, 4, 17, 64, 257, 31] {
        let direct = quotient_product(&x.quotient_range(0, n).unwrap());
        assert_eq!(cache.matrix(n).unwrap(), direct, "n = {n}");
    }
}

#[test]
fn rationals_parse_and_reduce() {
    assert_eq!(q("6/-4"), q("-3/2"));
    assert!(q("1/3").add(&q("1/6")) == q("1/2"));
    assert!("1/0".parse::<Q>().is_err());
    assert_eq!(q("-7/2").floor(), BigInt::from(-4));
    assert!(q("-7/2").abs().numer().is_positive());
}

#[test]
fn golden_convergents_and_sandwich() {
    let c = convergents(&cf("cf:0;1,1,1,1,1"), 5).unwrap();
    let got: Vec<String> = c.iter().map(|c| format!("{}/{}", c.p, c.q)).collect();
    assert_eq!(got, ["0/1", "1/1", "1/2", "2/3", "3/5"]);
    let e = enclose(&cf("cf:0;(1)"), &q("1/10")).unwrap();
    assert!(RationalInterval::new(q("3/5"), q("2/3")).contains_interval(e.interval()));
    let finite = RealEnclosure::at_depth(Arc::new(cf("cf:0;2,3")), 5).unwrap();
    assert!(finite.is_exact() && finite.interval().is_point());
    assert_eq!(finite.lo(), &q("3/7"));
}

#[test]
fn squares_of_intervals() {
    let iv = RationalInterval::new(q("3/5"), q("2/3"));
    assert_eq!(iv.square(), RationalInterval::new(q("9/25"), q("4/9")));
    assert_eq!(RationalInterval::point(q("-2/3")).square(), RationalInterval::point(q("4/9")));
    assert_eq!(RationalInterval::new(q("-1/2"), q("1/3")).square(), RationalInterval::new(q("0"), q("1/4")));
    let mut e = RealEnclosure::at_depth(Arc::new(cf("cf:0;(1)")), 3).unwrap();
    for _ in 0..5 {
        let (w, sq) = (e.width(), e.square().width());
        assert!(sq <= w.mul(&Q::from_int(2)));
        e.refine(10_000).unwrap();
    }
}

#[test]
fn nearest_integer_on_a_convergent_sandwich() {
    let iv = RationalInterval::new(q("3/5"), q("2/3"));
    assert_eq!(nearest_in(&iv.scale(&BigInt::from(5))), NearestInteger::Value(BigInt::from(3)));
    assert_eq!(nearest_in(&RationalInterval::point(q("2/3"))), NearestInteger::Value(BigInt::from(1)));
    assert_eq!(nearest_in(&iv.scale(&BigInt::from(6))), NearestInteger::Value(BigInt::from(4)));
    assert_eq!(nearest_in(&iv.scale(&BigInt::from(9))), NearestInteger::Undecidable);
}

#[test]
fn error_functional_examples() {
    let one = RealEnclosure::at_depth(Arc::new(cf("cf:1")), 1).unwrap();
    assert!(eval_L(&Triple::from_i64(1, 1, 1), &one).is_point());
    assert!(eval_L(&Triple::from_i64(1, 1, 1), &one).lo.is_zero());
    let g = RealEnclosure::at_depth(Arc::new(cf("cf:0;(1)")), 40).unwrap();
    let l = eval_L(&Triple::from_i64(1, 1, 0), &g);
    assert!((l.mid_f64() - (1.0 - 0.618_033_988_75)).abs() < 1e-9);
}
