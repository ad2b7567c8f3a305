use crate::error::{Error, Result};
use crate::forms::cubic::alpha_signed_bits;
use crate::z2lin::{guard, Signature, MAX_DIM};

/// `s(p,q) = #{x : alpha_{p,q}(x) = 1}`, the number of basis elements
/// squaring to `-1`.
pub fn statistics(sig: Signature) -> Result<u64> {
    let n = sig.n();
    if n < 3 {
        return Err(Error::SignatureTooSmall(sig));
    }
    guard("statistics", n, MAX_DIM)?;
    Ok((0..1u32 << n)
        .filter(|&x| alpha_signed_bits(sig, x))
        .count() as u64)
}

/// `C(m, k)`, zero outside `0..=m`.
fn binom(m: i64, k: i64) -> u64 {
    if k < 0 || m < 0 || k > m {
        return 0;
    }
    let k = k.min(m - k) as u64;
    let m = m as u64;
    (0..k).fold(1u64, |acc, i| acc * (m - i) / (i + 1))
}

/// `sum_{i=lo}^{hi} term(i)`, empty when `hi < lo`.
fn sum(lo: i64, hi: i64, term: impl Fn(i64) -> u64) -> u64 {
    (lo..=hi).map(term).sum()
}

/// The binomial-sum formula for `s(p,q)` on the families where one is known:
/// `(n,0)`, `(0,n)`, `(n-1,1)`, `(n-2,2)` for `n mod 4` in `{0,1,2}`,
/// `(n-3,3)` for `n mod 4` in `{2,3}` and `(n-4,4)` for `n mod 4 = 0`.
pub fn statistics_closed_form(sig: Signature) -> Option<u64> {
    let n = sig.n() as i64;
    if n < 3 {
        return None;
    }
    let (k, r) = (n / 4, n % 4);
    if sig.q == 0 {
        return Some(sum(0, k, |i| binom(n, 4 * i + 2)));
    }
    if sig.p == 0 {
        return Some((1u64 << n) - sum(0, k, |i| binom(n, 4 * i)));
    }
    let m = n - sig.q as i64;
    let c = |j: i64| binom(m, j);
    match (sig.q, r) {
        (1, 3) => Some(sum(0, k, |i| c(4 * i) + 2 * c(4 * i + 2)) + sum(0, k - 1, |i| c(4 * i + 3))),
        (1, _) => {
            let head = sum(0, k - 1, |i| c(4 * i) + 2 * c(4 * i + 2) + c(4 * i + 3));
            Some(match r {
                0 => head,
                1 => head + c(m),
                _ => head + c(m - 1),
            })
        }
        (2, 0) => Some(
            sum(0, k - 1, |i| 3 * c(4 * i) + 3 * c(4 * i + 2)) + sum(0, k - 2, |i| 2 * c(4 * i + 3)),
        ),
        (2, 1) => Some(sum(0, k - 1, |i| 3 * c(4 * i) + 3 * c(4 * i + 2) + 2 * c(4 * i + 3))),
        (2, 2) => Some(
            sum(0, k, |i| 3 * c(4 * i)) + sum(0, k - 1, |i| 3 * c(4 * i + 2) + 2 * c(4 * i + 3)),
        ),
        (3, 2) => Some(sum(0, k - 1, |i| {
            7 * c(4 * i) + c(4 * i + 1) + 5 * c(4 * i + 2) + 3 * c(4 * i + 3)
        })),
        (3, 3) => Some(
            sum(0, k, |i| 7 * c(4 * i))
                + sum(0, k - 1, |i| c(4 * i + 1) + 5 * c(4 * i + 2) + 3 * c(4 * i + 3)),
        ),
        (4, 0) => Some(
            sum(0, k, |i| 14 * c(4 * i))
                + sum(0, k - 2, |i| 4 * c(4 * i + 1) + 10 * c(4 * i + 2) + 4 * c(4 * i + 3)),
        ),
        _ => None,
    }
}

/// Whether `s(n,0) < s(p,q) < s(0,n)` for every `pq != 0` with `p + q = n`.
pub fn exceptional_check(n: usize) -> Result<bool> {
    if !(5..=12).contains(&n) {
        return Err(Error::DimensionOutOfRange { n, min: 5, max: 12 });
    }
    let low = statistics(Signature::new(n, 0))?;
    let high = statistics(Signature::new(0, n))?;
    for q in 1..n {
        let s = statistics(Signature::new(n - q, q))?;
        if !(low < s && s < high) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(p: usize, q: usize) -> u64 {
        statistics(Signature::new(p, q)).unwrap()
    }

    #[test]
    fn statistics_examples() {
        assert_eq!((s(3, 0), s(0, 3)), (3, 7));
        assert_eq!((s(0, 12), s(12, 0)), (3104, 1056));
        assert_eq!(s(2, 2), 6);
        assert!(statistics(Signature::new(1, 1)).is_err());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(statistics_closed_form(Signature::new(3, 0)), Some(3));
        assert_eq!(statistics_closed_form(Signature::new(3, 1)), Some(8));
        assert_eq!(statistics_closed_form(Signature::new(5, 3)), None);
        assert_eq!(statistics_closed_form(Signature::new(2, 4)), None);
    }

    #[test]
    fn exceptional_examples() {
        assert!(exceptional_check(5).unwrap());
        assert!(exceptional_check(12).unwrap());
        assert!(exceptional_check(3).is_err());
    }
}
