//! Scalar arithmetic in F_p for 64-bit primes, primality testing, and
//! deterministic prime/root-of-unity selection.

/// Errors from prime-field context construction and use.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("no primitive {order}th root of unity exists mod {p} ({order} does not divide p-1)")]
    RootUnavailable { p: u64, order: u64 },
    #[error("value {value} is not a primitive {order}th root of unity mod {p}")]
    BadRoot { p: u64, order: u64, value: u64 },
    #[error("division by zero in F_{0}")]
    DivisionByZero(u64),
    #[error("no prime p > 2^60 with p = 1 mod {0} in the search window")]
    PrimeSearchExhausted(u64),
}

pub fn addm(a: u64, b: u64, p: u64) -> u64 {
    let s = a.wrapping_add(b);
    if s >= p || s < a {
        s.wrapping_sub(p)
    } else {
        s
    }
}

pub fn subm(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - b + a
    }
}

pub fn negm(a: u64, p: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powm(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulm(acc, base, p);
        }
        base = mulm(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse by Fermat; `p` must be prime and `a` nonzero mod p.
pub fn invm(a: u64, p: u64) -> Result<u64, FieldError> {
    let a = a % p;
    if a == 0 {
        return Err(FieldError::DivisionByZero(p));
    }
    Ok(powm(a, p - 2, p))
}

/// Reduce a signed integer into [0, p).
pub fn from_i64(x: i64, p: u64) -> u64 {
    let r = (x % p as i64 + p as i64) as u64;
    if r >= p {
        r - p
    } else {
        r
    }
}

pub fn from_i128(x: i128, p: u64) -> u64 {
    let r = (x % p as i128 + p as i128) as u128;
    (r % p as u128) as u64
}

/// Deterministic Miller-Rabin, exact for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powm(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulm(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Prime factorization by trial division (arguments here are root orders and
/// group orders, all small).
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// The `index`-th prime p > 2^60 with p ≡ 1 (mod modulus), counting from 0.
///
/// Scanning arithmetic progressions of prime candidates is cheap at this
/// size; the result is a pure function of (modulus, index), so every run and
/// every certificate agrees on the field.
pub fn nth_prime_above_2_60(modulus: u64, index: usize) -> Result<u64, FieldError> {
    assert!(modulus > 0, "modulus must be positive");
    let base: u64 = 1 << 60;
    // smallest candidate > 2^60 that is ≡ 1 mod modulus
    let mut c = base - base % modulus + 1;
    while c <= base {
        c += modulus;
    }
    let mut seen = 0;
    let limit = base + (1 << 32);
    while c < limit {
        if is_prime(c) {
            if seen == index {
                return Ok(c);
            }
            seen += 1;
        }
        c += modulus;
    }
    Err(FieldError::PrimeSearchExhausted(modulus))
}

/// Find a primitive `order`-th root of unity mod p, deterministically.
///
/// Requires order | p-1. Candidates x = 2, 3, ... are raised to (p-1)/order
/// until the result has exact order `order`.
pub fn primitive_root_of_unity(p: u64, order: u64) -> Result<u64, FieldError> {
    if order == 1 {
        return Ok(1);
    }
    if (p - 1) % order != 0 {
        return Err(FieldError::RootUnavailable { p, order });
    }
    let prime_divs: Vec<u64> = factorize(order).into_iter().map(|(q, _)| q).collect();
    for x in 2..10_000u64 {
        let cand = powm(x, (p - 1) / order, p);
        if cand == 0 {
            continue;
        }
        if prime_divs.iter().all(|&q| powm(cand, order / q, p) != 1) {
            return Ok(cand);
        }
    }
    Err(FieldError::RootUnavailable { p, order })
}

/// Check that `value` is a primitive `order`-th root of unity mod p.
pub fn is_primitive_root(p: u64, order: u64, value: u64) -> bool {
    if value == 0 || powm(value, order, p) != 1 {
        return false;
    }
    factorize(order)
        .iter()
        .all(|&(q, _)| powm(value, order / q, p) != 1)
}
