//! Prime enumeration by sieve.

/// Odd primes in `[lo, hi]`, ascending.
pub fn odd_primes_in(lo: u64, hi: u64) -> Vec<u64> {
    sieve_upto(hi)
        .into_iter()
        .filter(|&p| p >= lo && p > 2)
        .collect()
}

/// All primes `<= n`, ascending.
pub fn sieve_upto(n: u64) -> Vec<u64> {
    if n < 2 {
        return vec![];
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Trial-division primality; intended for the desk-scale ranges used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_matches_trial_division() {
        let sieved = sieve_upto(500);
        let direct: Vec<u64> = (0..=500).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieved, direct);
    }

    #[test]
    fn odd_primes_range() {
        assert_eq!(odd_primes_in(5, 5), vec![5]);
        assert_eq!(odd_primes_in(3, 12), vec![3, 5, 7, 11]);
    }
}
