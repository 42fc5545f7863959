//! Small exact integer helpers shared across modules.

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
///
/// Exact for every argument the crate uses (`n <= 128`); intermediate
/// products are kept in `u128` and divided at each step.
pub fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Binomial coefficient with a signed lower index; `C(n, k) = 0` for `k < 0`.
pub fn binom_signed(n: u64, k: i64) -> u128 {
    if k < 0 {
        0
    } else {
        binom(n, k as u64)
    }
}

/// `2^e` as `u128`, or `None` when it does not fit.
pub fn pow2(e: u32) -> Option<u128> {
    1u128.checked_shl(e)
}

/// Integer square root (floor).
pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binom(5, 2), 10);
        assert_eq!(binom(4, 0), 1);
        assert_eq!(binom(3, 4), 0);
        assert_eq!(binom(64, 32), 1_832_624_140_942_590_534);
        assert_eq!(binom_signed(7, -1), 0);
        // Pascal's rule
        for n in 1..40u64 {
            for k in 1..=n {
                assert_eq!(binom(n, k), binom(n - 1, k - 1) + binom(n - 1, k));
            }
        }
    }

    #[test]
    fn roots_and_powers() {
        assert_eq!(pow2(0), Some(1));
        assert_eq!(pow2(127), Some(1u128 << 127));
        assert_eq!(pow2(128), None);
        for n in 0..5000u128 {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n);
        }
    }
}
