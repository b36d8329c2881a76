//! Number theory behind the order sets of m-pyramidal groups: the sets
//! X_m = Y_m ∪ Z_m for odd prime m, Mersenne prime-power solutions of
//! p^k = a^n - 1, and Zsigmondy primitive prime divisors.

use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("m must be an odd prime, got {0}")]
    MNotOddPrime(u64),
    #[error("m = 7 is not covered by the order-set characterisation")]
    UnsupportedSeven,
    #[error("value exceeds the supported integer range")]
    Overflow,
}

/// Trial-division factorisation, returned as ascending (prime, exponent) pairs.
pub fn factor(n: u64) -> Result<Vec<(u64, u32)>, ArithError> {
    if n == 0 {
        return Err(ArithError::ZeroInput);
    }
    let mut n = n;
    let mut out: Vec<(u64, u32)> = Vec::new();
    let mut d: u64 = 2;
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
    Ok(out)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d: u64 = 2;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    true
}

/// 2-adic valuation: `n = 2^a * odd`, returns `(a, odd)`.
pub fn two_adic_valuation(n: u64) -> (u32, u64) {
    debug_assert!(n > 0);
    let a = n.trailing_zeros();
    (a, n >> a)
}

/// The exponent n with `2^n - 1 = m`, if m is of that form.
pub fn mersenne_exponent(m: u64) -> Option<u32> {
    let s = m.checked_add(1)?;
    if s.is_power_of_two() {
        Some(s.trailing_zeros())
    } else {
        None
    }
}

/// Splits `m - 1 = 2^t * r` with r odd, for odd `m >= 3`.
pub fn two_adic_split(m: u64) -> (u32, u64) {
    debug_assert!(m >= 3 && m % 2 == 1);
    two_adic_valuation(m - 1)
}

/// Multiplicative order of 2 modulo odd `m >= 3`.
pub fn order_of_2_mod(m: u64) -> u32 {
    debug_assert!(m >= 3 && m % 2 == 1);
    let mut x = 2 % m;
    let mut n = 1;
    while x != 1 {
        x = x * 2 % m;
        n += 1;
    }
    n
}

/// Which of the two explicit order families contains a given integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum MembershipSet {
    Y,
    Z,
    #[serde(rename = "both")]
    Both,
    #[serde(rename = "none")]
    None,
}

/// Decides membership of N in X_m = Y_m ∪ Z_m for an odd prime m ≠ 7.
///
/// Writing N = 2^a · m · d with d odd: N lies in Z_m when 1 ≤ a ≤ t (where
/// m - 1 = 2^t · r, r odd), and in Y_m when m = 2^n - 1 and n divides a ≥ 1.
pub fn in_x(m: u64, n: u64) -> Result<(bool, MembershipSet), ArithError> {
    if m == 7 {
        return Err(ArithError::UnsupportedSeven);
    }
    if m < 3 || m % 2 == 0 || !is_prime(m) {
        return Err(ArithError::MNotOddPrime(m));
    }
    if n == 0 {
        return Err(ArithError::ZeroInput);
    }
    let (a, odd) = two_adic_valuation(n);
    if a == 0 || odd % m != 0 {
        return Ok((false, MembershipSet::None));
    }
    let (t, _) = two_adic_split(m);
    let in_z = a >= 1 && a <= t;
    let in_y = match mersenne_exponent(m) {
        Some(e) => a % e == 0,
        None => false,
    };
    let set = match (in_y, in_z) {
        (true, true) => MembershipSet::Both,
        (true, false) => MembershipSet::Y,
        (false, true) => MembershipSet::Z,
        (false, false) => MembershipSet::None,
    };
    Ok((in_y || in_z, set))
}

/// A solution of p^k = a^n - 1 with p prime and a, n > 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct MersenneWitness {
    pub p: u64,
    pub k: u32,
    pub a: u64,
    pub n: u32,
}

/// Exhaustive scan for solutions of p^k = a^n - 1 over 2 ≤ a ≤ a_max,
/// 2 ≤ n ≤ n_max, p ≤ p_max. Values a^n - 1 whose least prime factor
/// exceeds p_max admit no such p and are skipped.
pub fn mersenne_solutions(a_max: u64, n_max: u32, p_max: u64) -> Vec<MersenneWitness> {
    let primes = sieve(p_max);
    let mut out = Vec::new();
    for a in 2..=a_max {
        for n in 2..=n_max {
            let v = BigUint::from(a).pow(n) - BigUint::from(1u32);
            if let Some((p, k)) = prime_power_split(&v, &primes) {
                out.push(MersenneWitness { p, k, a, n });
            }
        }
    }
    out.sort_unstable();
    out
}

fn sieve(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// If v = p^k for a prime p drawn from the sieve, returns (p, k).
fn prime_power_split(v: &BigUint, primes: &[u64]) -> Option<(u64, u32)> {
    let one = BigUint::from(1u32);
    if *v <= one {
        return None;
    }
    for &p in primes {
        let bp = BigUint::from(p);
        if &bp * &bp > *v {
            break;
        }
        if (v % &bp) == BigUint::ZERO {
            let mut rest = v.clone();
            let mut k = 0u32;
            while (&rest % &bp) == BigUint::ZERO {
                rest /= &bp;
                k += 1;
            }
            return if rest == one { Some((p, k)) } else { None };
        }
    }
    // no factor up to min(sqrt(v), p_max): v is prime iff sqrt(v) was reached,
    // and then v itself is the candidate p
    let last = primes.last().copied().unwrap_or(1);
    let blast = BigUint::from(last);
    if &blast * &blast >= *v {
        let p: u64 = v.try_into().ok()?;
        if p <= *primes.last()? {
            return Some((p, 1));
        }
        // v prime but beyond p_max
        return None;
    }
    None
}

/// Result of a primitive-prime-divisor search for a^n - 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "q")]
pub enum Zsigmondy {
    /// Least prime q dividing a^n - 1 but no a^j - 1 with 0 < j < n.
    Primitive(u64),
    /// One of the two genuine exception patterns: (n=2, a=2^s-1) or (a=2, n=6).
    Exception,
}

/// Finds the least primitive prime divisor of a^n - 1, or recognises the
/// exceptional pairs. Requires a, n ≥ 2 and a^n ≤ 2^63.
pub fn zsigmondy(a: u64, n: u32) -> Result<Zsigmondy, ArithError> {
    debug_assert!(a >= 2 && n >= 2);
    let mut v: u64 = 1;
    for _ in 0..n {
        v = v.checked_mul(a).ok_or(ArithError::Overflow)?;
        if v > (1u64 << 63) {
            return Err(ArithError::Overflow);
        }
    }
    let v = v - 1;
    for (q, _) in factor(v).expect("v >= 3") {
        let primitive = (1..n).all(|j| {
            // a^j - 1 mod q
            let mut x: u64 = 1;
            for _ in 0..j {
                x = x * (a % q) % q;
            }
            x != 1 % q
        });
        if primitive {
            return Ok(Zsigmondy::Primitive(q));
        }
    }
    let exceptional = (n == 2 && (a + 1).is_power_of_two() && a >= 3) || (a == 2 && n == 6);
    if exceptional {
        Ok(Zsigmondy::Exception)
    } else {
        // unreachable for valid inputs; fail loudly rather than mask it
        panic!("no primitive divisor for ({a}, {n}) outside the exception patterns");
    }
}
