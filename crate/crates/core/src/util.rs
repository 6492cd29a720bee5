pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// `Some(p)` when `n = p^k` with `k >= 1`.
pub fn prime_power_base(n: usize) -> Option<usize> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    (m == 1).then_some(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_prime_powers() {
        let primes: Vec<usize> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(prime_power_base(8), Some(2));
        assert_eq!(prime_power_base(9), Some(3));
        assert_eq!(prime_power_base(12), None);
        assert_eq!(prime_power_base(1), None);
    }
}
