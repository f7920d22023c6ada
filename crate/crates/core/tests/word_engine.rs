use palinprefix::word::*;
use palinprefix::Error;

const GAMMA: f64 = 1.618_033_988_749_895;
const SIGMA2: f64 = 1.707_106_781_186_547_6;

fn letters(w: &Word) -> String {
    w.to_letters()
}

#[test]
fn fibonacci_prefixes() {
    assert_eq!(letters(&generate_fibonacci(6)), "abaaba");
    assert_eq!(letters(&generate_fibonacci(1)), "a");
    assert_eq!(letters(&generate_fibonacci(13)), "abaababaabaab");
}

#[test]
fn sturmian_prefixes() {
    assert_eq!(letters(&generate_sturmian_periodic(&[], &[1], 6).unwrap()), "abaaba");
    let s2 = generate_sturmian_periodic(&[], &[2], 8).unwrap();
    let alpha = 1.0 / (2.0 + 2f64.sqrt());
    let oracle: String = (1..=8)
        .map(|n| if ((n + 1) as f64 * alpha).floor() - (n as f64 * alpha).floor() == 0.0 { 'a' } else { 'b' })
        .collect();
    assert_eq!(letters(&s2), oracle);
    assert!(matches!(generate_sturmian(&[2, 2], 500), Err(Error::InsufficientQuotients { .. })));
}

#[test]
fn sturmian_three_index_function() {
    let w = generate_sturmian_periodic(&[], &[3], 100_000).unwrap();
    let ex = psi_from_word(&w, 10).unwrap();
    let h = ex.psi.horizon.unwrap();
    let theta = theta_sequence(&ex.psi, h);
    let late: Vec<usize> = theta.into_iter().filter(|&n| n >= 6).collect();
    assert!(late.iter().all(|n| n % 3 == 0));
    assert!(late.iter().all(|&n| ex.psi.eval(n) == Some(n - 4)));
}

#[test]
fn palindrome_tables() {
    let t = palindromic_prefix_lengths(generate_fibonacci(40).symbols());
    assert_eq!(t.lengths, vec![1, 3, 6, 11, 19, 32]);
    assert_eq!(t.horizon, 40);
    assert_eq!(palindromic_prefix_lengths(&[0]).lengths, vec![1]);
    let abab = Word::from_letters(&"ab".repeat(50)).unwrap();
    let naive = palindromic_prefix_lengths_naive(abab.symbols());
    assert_eq!(palindromic_prefix_lengths(abab.symbols()), naive);
    assert_eq!(naive.lengths, (1..100).step_by(2).collect::<Vec<_>>());
}

#[test]
fn delta_of_words() {
    let fib = palindromic_prefix_lengths(generate_fibonacci(2_000_000).symbols());
    assert!(fib.len() >= 20);
    assert!((delta_of_word(&fib, 0.5).unwrap().value - GAMMA).abs() < 1e-3);
    let s3 = palindromic_prefix_lengths(generate_sturmian_periodic(&[], &[3], 2_000_000).unwrap().symbols());
    assert!(s3.len() >= 20);
    assert!((delta_of_word(&s3, 0.5).unwrap().value - 1.767).abs() < 5e-3);
    let toy = PalindromicPrefixTable { lengths: vec![1, 2, 4, 8], horizon: 8 };
    assert_eq!(delta_of_word(&toy, 0.5).unwrap().value, 2.0);
}

#[test]
fn index_functions_from_words() {
    let fib = psi_from_word(&generate_fibonacci(10_000), 3).unwrap();
    let h = fib.psi.horizon.unwrap();
    assert!((3..=h).all(|i| fib.psi.eval(i) == Some(i - 2)));
    let s2 = psi_from_word(&generate_sturmian_periodic(&[], &[2], 10_000).unwrap(), 3).unwrap();
    let expect = PsiFunction::sturmian(&[], &[2]).unwrap();
    let h = s2.psi.horizon.unwrap();
    assert!((3..=h).all(|i| s2.psi.eval(i) == expect.eval(i)));
}

#[test]
fn words_from_index_functions() {
    let g = word_from_psi(&PsiFunction::fibonacci(), None, 5000).unwrap();
    let fib = generate_fibonacci(5000);
    let ex = psi_from_word(&g.word, usize::MAX).unwrap();
    let h = ex.psi.horizon.unwrap();
    let fib_psi = psi_from_word(&fib, usize::MAX).unwrap().psi;
    assert!(psi_equivalent(&ex.psi, &fib_psi, h).equivalent);

    let unit = PsiFunction::periodic(vec![1], 2).unwrap();
    let g = word_from_psi(&unit, None, 200).unwrap();
    let gaps: Vec<usize> = g.lengths.windows(2).skip(2).map(|w| w[1] - w[0]).collect();
    assert!(gaps.windows(2).all(|w| w[0] == w[1]));
    assert!(theta_sequence(&unit, 100).is_empty());
}

#[test]
fn theta_and_reducedness() {
    let fib = PsiFunction::fibonacci();
    assert_eq!(theta_sequence(&fib, 8), vec![2, 3, 4, 5, 6, 7, 8]);
    assert!(is_asymptotically_reduced(&fib, 1000, 3).reduced);
    let s3 = PsiFunction::sturmian(&[], &[3]).unwrap();
    assert_eq!(theta_sequence(&s3, 20).into_iter().filter(|&n| n >= 6).collect::<Vec<_>>(), vec![6, 9, 12, 15, 18]);
    assert!(is_asymptotically_reduced(&PsiFunction::sturmian(&[], &[2]).unwrap(), 1000, 3).reduced);
    let bad = PsiFunction::periodic(vec![2, 3], 4).unwrap();
    assert!(!is_asymptotically_reduced(&bad, 1000, 5).reduced);
}

#[test]
fn delta_of_index_functions() {
    let f = delta_of_psi(&PsiFunction::fibonacci(), 1000).unwrap();
    assert!((f.value - GAMMA).abs() < 1e-6);
    assert!(f.liminf > 1.0);
    let s2 = delta_of_psi(&PsiFunction::sturmian(&[], &[2]).unwrap(), 1000).unwrap();
    assert!((s2.value - SIGMA2).abs() < 1e-3);
    let s3 = delta_of_psi(&PsiFunction::sturmian(&[], &[3]).unwrap(), 1000).unwrap();
    assert!((s3.value - 1.767).abs() < 1e-3);
}

#[test]
fn equivalence_modulo_shifts() {
    let fib = PsiFunction::fibonacci();
    assert_eq!(psi_equivalent(&fib, &fib, 100).shift, 0);
    let later = PsiFunction::periodic(vec![2], 9).unwrap();
    assert!(psi_equivalent(&fib, &later, 100).equivalent);
    let s2 = PsiFunction::sturmian(&[], &[2]).unwrap();
    assert!(!psi_equivalent(&fib, &s2, 200).equivalent);
}

#[test]
fn word_specs() {
    let w: WordSpec = "sturmian:3,3,3,3,3,3,3,3".parse().unwrap();
    assert!(w.materialize(50).is_ok());
    let err = "sturmian:3,x".parse::<WordSpec>().unwrap_err();
    assert!(matches!(err, Error::Parse { pos: 11, .. }), "{err:?}");
    let lit: WordSpec = "literal:aa".parse().unwrap();
    let t = palindromic_prefix_lengths(lit.materialize(2).unwrap().symbols());
    assert_eq!(t.lengths, vec![1, 2]);
    assert!(matches!(delta_of_word(&t, 0.5), Err(Error::InsufficientData(_))));
}
