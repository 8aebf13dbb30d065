//! Brute-force oracles shared by the oracle and acceptance suites.

pub fn trial_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Remainder of `f` modulo the monic `d` over F_p.
pub fn rem(f: &[u64], d: &[u64], p: u64) -> Vec<u64> {
    let mut r = f.to_vec();
    let dd = d.len() - 1;
    while r.len() > dd {
        let lead = r[r.len() - 1];
        let shift = r.len() - 1 - dd;
        for (i, &c) in d.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - lead * c % p) % p;
        }
        r.pop();
    }
    r
}

pub fn irreducible_by_trial_division(f: &[u64], p: u64) -> bool {
    let n = f.len() - 1;
    for deg in 1..=n / 2 {
        for idx in 0..p.pow(deg as u32) {
            let mut d: Vec<u64> = (0..deg).map(|i| idx / p.pow(i as u32) % p).collect();
            d.push(1);
            if rem(f, &d, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

pub fn legendre(a: u64, p: u64) -> i64 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    let mut r = 1u64;
    let (mut b, mut e) = (a, (p - 1) / 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}
