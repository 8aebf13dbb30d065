//! Small-integer number theory: primality, sieving, factoring and
//! multiplicative orders.

/// Modular exponentiation with 128-bit intermediates.
pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut b = base as u128 % m;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Deterministic Miller-Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut k = n + 1;
    while !is_prime(k) {
        k += 1;
    }
    k
}

/// Prime factorisation by trial division, as `(prime, exponent)` pairs in
/// increasing order.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Multiplicative order of `a` modulo the prime `q`, or `None` when
/// `q` divides `a`.
pub fn multiplicative_order(a: u64, q: u64) -> Option<u64> {
    if a % q == 0 {
        return None;
    }
    let mut order = q - 1;
    for (r, _) in factor(q - 1) {
        while order % r == 0 && mod_pow(a, order / r, q) == 1 {
            order /= r;
        }
    }
    Some(order)
}

/// Sieve of Eratosthenes up to and including `limit`, shared read-only by
/// the prime searches.
#[derive(Clone, Debug)]
pub struct PrimeSieve {
    composite: Vec<bool>,
}

impl PrimeSieve {
    pub fn new(limit: usize) -> Self {
        let mut composite = vec![false; limit + 1];
        for slot in composite.iter_mut().take(2.min(limit + 1)) {
            *slot = true;
        }
        let mut i = 2;
        while i * i <= limit {
            if !composite[i] {
                let mut j = i * i;
                while j <= limit {
                    composite[j] = true;
                    j += i;
                }
            }
            i += 1;
        }
        PrimeSieve { composite }
    }

    pub fn limit(&self) -> usize {
        self.composite.len() - 1
    }

    /// Panics when `n` exceeds the sieve limit.
    pub fn is_prime(&self, n: usize) -> bool {
        !self.composite[n]
    }

    /// Primes in the half-open range `[lo, hi)`, clipped to the sieve.
    pub fn primes_in(&self, lo: usize, hi: usize) -> impl Iterator<Item = usize> + '_ {
        let hi = hi.min(self.composite.len());
        (lo.min(hi)..hi).filter(move |&k| !self.composite[k])
    }

    /// Largest prime strictly below `n`.
    pub fn prev_prime(&self, n: usize) -> Option<usize> {
        (2..n.min(self.composite.len())).rev().find(|&k| !self.composite[k])
    }
}
