use super::{Symbol, Word};
use crate::error::{Error, Result};

/// First `length` symbols of the fixed point of `a -> ab, b -> a`.
pub fn generate_fibonacci(length: usize) -> Word {
    assert!(length >= 1, "length must be positive");
    let mut w: Vec<Symbol> = vec![0];
    while w.len() < length {
        let mut next = Vec::with_capacity(w.len() * 2);
        for &s in &w {
            if s == 0 {
                next.extend_from_slice(&[0, 1]);
            } else {
                next.push(0);
            }
        }
        w = next;
    }
    w.truncate(length);
    Word::with_alphabet(w, 2).expect("binary")
}

/// Continued-fraction quotients of the slope used for the quotient list `s`:
/// the first quotient is `1 + s_1`, the rest are copied.
pub fn sturmian_slope(s: &[u64]) -> Vec<u64> {
    let mut out = s.to_vec();
    if let Some(first) = out.first_mut() {
        *first += 1;
    }
    out
}

/// The open interval of slopes whose expansion starts with `quotients`.
fn cylinder(quotients: &[u64]) -> Option<((u128, u128), (u128, u128))> {
    let (mut p, mut q, mut pp, mut qp) = (0u128, 1u128, 1u128, 0u128);
    for &a in quotients {
        let a = a as u128;
        let np = a.checked_mul(p)?.checked_add(pp)?;
        let nq = a.checked_mul(q)?.checked_add(qp)?;
        (pp, qp, p, q) = (p, q, np, nq);
    }
    let end = (p, q);
    let next = (p.checked_add(pp)?, q.checked_add(qp)?);
    // Order the two endpoints.
    if end.0.checked_mul(next.1)? <= next.0.checked_mul(end.1)? {
        Some((end, next))
    } else {
        Some((next, end))
    }
}

/// `floor(n * alpha)` for all `n <= n_max` when constant over the cylinder.
fn determined_floors(lo: (u128, u128), hi: (u128, u128), n_max: usize) -> Option<Vec<u128>> {
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max as u128 {
        let f = n.checked_mul(lo.0)? / lo.1;
        // No integer may lie strictly inside (n lo, n hi): n hi <= f + 1.
        if n.checked_mul(hi.0)? > (f + 1).checked_mul(hi.1)? {
            return None;
        }
        out.push(f);
    }
    Some(out)
}

fn mechanical(floors: &[u128]) -> Word {
    let symbols = floors.windows(2).skip(1).map(|w| (w[1] - w[0]) as Symbol).collect();
    Word::with_alphabet(symbols, 2).expect("binary")
}

/// First `length` symbols of the characteristic Sturmian word attached to `s`,
/// `w_n = floor((n+1) alpha) - floor(n alpha)` with `alpha = [0; 1 + s_1, s_2, ...]`.
///
/// Fails when the prefix depends on quotients beyond those supplied.
pub fn generate_sturmian(s: &[u64], length: usize) -> Result<Word> {
    assert!(length >= 1, "length must be positive");
    if s.is_empty() || s.contains(&0) {
        return Err(Error::Domain("Sturmian quotients must be a nonempty list of positive integers".into()));
    }
    let slope = sturmian_slope(s);
    let insufficient = Error::InsufficientQuotients { length, available: s.len() };
    let (lo, hi) = cylinder(&slope).ok_or(insufficient.clone())?;
    let floors = determined_floors(lo, hi, length + 1).ok_or(insufficient)?;
    Ok(mechanical(&floors))
}

/// Same word for an eventually periodic quotient sequence `head, period, period, ...`,
/// using as many quotients as the prefix needs.
pub fn generate_sturmian_periodic(head: &[u64], period: &[u64], length: usize) -> Result<Word> {
    if period.is_empty() {
        return generate_sturmian(head, length);
    }
    let mut s = head.to_vec();
    loop {
        s.extend_from_slice(period);
        match generate_sturmian(&s, length) {
            Ok(w) => return Ok(w),
            Err(Error::InsufficientQuotients { .. }) if cylinder(&sturmian_slope(&s)).is_some() => continue,
            Err(e) => return Err(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibonacci_prefixes() {
        assert_eq!(generate_fibonacci(6).to_string(), "abaaba");
        assert_eq!(generate_fibonacci(1).to_string(), "a");
        assert_eq!(generate_fibonacci(13).to_string(), "abaababaabaab");
    }

    #[test]
    fn sturmian_with_unit_quotients_is_fibonacci() {
        let w = generate_sturmian_periodic(&[], &[1], 500).unwrap();
        assert_eq!(w, generate_fibonacci(500));
    }

    /// Independent oracle: floors of `n alpha` with `alpha` a float approximation,
    /// valid when the float error is far below the distance to integers.
    fn float_oracle(alpha: f64, length: usize) -> String {
        (1..=length)
            .map(|n| {
                let d = ((n + 1) as f64 * alpha).floor() - (n as f64 * alpha).floor();
                if d == 0.0 {
                    'a'
                } else {
                    'b'
                }
            })
            .collect()
    }

    #[test]
    fn sturmian_two_matches_float_oracle() {
        // [0; 3, 2, 2, ...] = 1 / (3 + (sqrt2 - 1)) = 1 / (2 + sqrt2).
        let alpha = 1.0 / (2.0 + 2f64.sqrt());
        let w = generate_sturmian_periodic(&[], &[2], 8).unwrap();
        assert_eq!(w.to_string(), "aabaabaa");
        assert_eq!(generate_sturmian_periodic(&[], &[2], 300).unwrap().to_string(), float_oracle(alpha, 300));
    }

    #[test]
    fn sturmian_three_matches_float_oracle() {
        // [0; 4, 3, 3, ...] with [0; 3, 3, ...] = (sqrt13 - 3)/2.
        let t = (13f64.sqrt() - 3.0) / 2.0;
        let alpha = 1.0 / (4.0 + t);
        let w = generate_sturmian_periodic(&[], &[3], 300).unwrap();
        assert!(w.to_string().starts_with("aaabaaab"));
        assert_eq!(w.to_string(), float_oracle(alpha, 300));
    }

    #[test]
    fn too_few_quotients_is_an_error() {
        assert!(matches!(generate_sturmian(&[3, 3], 1000), Err(Error::InsufficientQuotients { .. })));
        assert!(generate_sturmian(&[3, 3, 3, 3, 3, 3, 3, 3], 2000).is_ok());
    }

    #[test]
    fn longer_quotient_lists_extend_the_prefix() {
        let short = generate_sturmian(&[2, 1, 3, 1, 1, 2, 4], 40).unwrap();
        let long = generate_sturmian(&[2, 1, 3, 1, 1, 2, 4, 1, 5, 2, 2], 200).unwrap();
        assert_eq!(long.prefix(40), short);
    }
}
