//! Counting monic irreducible polynomials by Möbius inversion.

/// The Möbius function.
pub fn mobius(mut n: u64) -> i32 {
    assert!(n >= 1);
    let mut sign = 1;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|b| n % b == 0).collect()
}

/// Möbius inversion `(1/d) * sum_{b | d} mu(d/b) * g(b)`.
pub fn mobius_invert(d: u64, mut g: impl FnMut(u64) -> i128) -> i128 {
    let total: i128 = divisors(d).into_iter().map(|b| mobius(d / b) as i128 * g(b)).sum();
    debug_assert_eq!(total % d as i128, 0);
    total / d as i128
}

/// Number of monic irreducible polynomials of degree `d` over `F_q`.
pub fn count_irreducibles(q: u64, d: u32) -> u128 {
    assert!(d >= 1, "degree must be positive");
    mobius_invert(d as u64, |b| (q as i128).pow(b as u32)) as u128
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mobius_values() {
        let got: Vec<i32> = (1..=12).map(mobius).collect();
        assert_eq!(got, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn known_counts() {
        assert_eq!(count_irreducibles(2, 2), 1);
        assert_eq!(count_irreducibles(2, 3), 2);
        assert_eq!(count_irreducibles(3, 2), 3);
        assert_eq!(count_irreducibles(11, 3), 440);
        assert_eq!(count_irreducibles(128, 2), 8128);
    }
}
