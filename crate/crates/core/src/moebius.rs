/// Möbius function of `k >= 1`.
pub fn moebius(k: u64) -> i8 {
    assert!(k >= 1, "moebius is defined for positive integers");
    let mut n = k;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    fn moebius_by_definition(k: u64) -> i8 {
        // sum over divisors of mu is [k == 1]; solve recursively
        if k == 1 {
            return 1;
        }
        -divisors(k)
            .into_iter()
            .filter(|&d| d < k)
            .map(|d| moebius_by_definition(d) as i64)
            .sum::<i64>() as i8
    }

    #[test]
    fn small_values() {
        assert_eq!(moebius(1), 1);
        assert_eq!(moebius(2), -1);
        assert_eq!(moebius(4), 0);
        assert_eq!(moebius(6), 1);
        assert_eq!(moebius(30), -1);
    }

    #[test]
    fn agrees_with_divisor_sum_characterisation() {
        for k in 1..200 {
            assert_eq!(moebius(k), moebius_by_definition(k), "k = {k}");
        }
    }

    #[test]
    fn divisors_ascending() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }
}
