//! Prime counting by a segmented sieve of Eratosthenes.
//!
//! The sieve stores odd numbers only, one bit each, together with running
//! counts per 64-bit word so that π(x) is a table lookup plus a popcount.
//! A process-wide cache grows on demand up to [`SIEVE_LIMIT`].

use std::sync::{Arc, Mutex};

use crate::error::{range, Result};

/// Largest argument accepted by [`prime_pi`] and [`consecutive_primes`].
pub const SIEVE_LIMIT: u64 = 100_000_000;

const SEGMENT_BITS: u64 = 1 << 18;

/// Two consecutive primes p < p_next.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct PrimePair {
    pub p: u64,
    pub p_next: u64,
}

impl PrimePair {
    pub fn gap(&self) -> u64 {
        self.p_next - self.p
    }
}

/// Immutable sieve of all primes up to `limit`.
#[derive(Debug)]
pub struct PrimeSieve {
    limit: u64,
    // bit i set ⇔ 2i + 1 is prime
    bits: Vec<u64>,
    // number of primes among odd numbers in words 0..w
    counts_before: Vec<u32>,
}

impl PrimeSieve {
    pub fn new(limit: u64) -> Self {
        let limit = limit.max(2);
        let n_odd = limit.div_ceil(2); // odd numbers 1, 3, …, ≤ limit
        let n_words = n_odd.div_ceil(64) as usize;
        let mut bits = vec![!0u64; n_words];

        let root = (limit as f64).sqrt() as u64 + 1;
        let base = simple_sieve(root);

        let mut lo = 0u64; // first bit index in segment
        while lo < n_odd {
            let hi = (lo + SEGMENT_BITS).min(n_odd);
            for &p in base.iter().filter(|&&p| p > 2) {
                // first odd multiple of p that is ≥ max(p², 2lo+1)
                let seg_start = 2 * lo + 1;
                let mut m = (p * p).max(seg_start.div_ceil(p) * p);
                if m % 2 == 0 {
                    m += p;
                }
                let mut i = (m - 1) / 2;
                while i < hi {
                    bits[(i / 64) as usize] &= !(1u64 << (i % 64));
                    i += p;
                }
            }
            lo = hi;
        }
        // 1 is not prime
        bits[0] &= !1;
        // clear bits beyond the limit
        for i in n_odd..(n_words as u64 * 64) {
            bits[(i / 64) as usize] &= !(1u64 << (i % 64));
        }

        let mut counts_before = Vec::with_capacity(n_words + 1);
        let mut acc = 0u32;
        for w in &bits {
            counts_before.push(acc);
            acc += w.count_ones();
        }
        counts_before.push(acc);
        PrimeSieve {
            limit,
            bits,
            counts_before,
        }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn is_prime(&self, n: u64) -> bool {
        if n < 2 || n > self.limit {
            return false;
        }
        if n.is_multiple_of(2) {
            return n == 2;
        }
        let i = n / 2;
        self.bits[(i / 64) as usize] >> (i % 64) & 1 == 1
    }

    /// Number of primes ≤ n, for n ≤ limit.
    pub fn count_upto(&self, n: u64) -> u64 {
        if n < 2 {
            return 0;
        }
        let n = n.min(self.limit);
        // odd indices 0..=(n−1)/2 cover odd numbers up to n
        let last = (n - 1) / 2;
        let word = (last / 64) as usize;
        let bit = last % 64;
        let mask = if bit == 63 {
            !0
        } else {
            (1u64 << (bit + 1)) - 1
        };
        let odd = self.counts_before[word] as u64 + (self.bits[word] & mask).count_ones() as u64;
        odd + 1 // the prime 2
    }

    /// Smallest prime ≥ n, if one exists within the sieve.
    pub fn next_prime(&self, n: u64) -> Option<u64> {
        if n <= 2 {
            return Some(2).filter(|&p| p <= self.limit);
        }
        // odd index of n, or of n + 1 when n is even
        let mut i = n / 2;
        let total = self.bits.len() as u64 * 64;
        while i < total {
            let word = self.bits[(i / 64) as usize] >> (i % 64);
            if word != 0 {
                let p = 2 * (i + word.trailing_zeros() as u64) + 1;
                return (p <= self.limit).then_some(p);
            }
            i = (i / 64 + 1) * 64;
        }
        None
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        std::iter::once(2).filter(move |_| self.limit >= 2).chain(
            (3..=self.limit)
                .step_by(2)
                .filter(move |&n| self.is_prime(n)),
        )
    }
}

fn simple_sieve(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

static SHARED: Mutex<Option<Arc<PrimeSieve>>> = Mutex::new(None);

/// Shared sieve covering at least `n`. Grows geometrically; never exceeds [`SIEVE_LIMIT`].
pub fn shared_sieve(n: u64) -> Result<Arc<PrimeSieve>> {
    if n > SIEVE_LIMIT {
        return Err(range!("{n} exceeds the sieve limit {SIEVE_LIMIT}"));
    }
    let mut guard = SHARED.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(s) = guard.as_ref() {
        if s.limit >= n {
            return Ok(Arc::clone(s));
        }
    }
    let current = guard.as_ref().map_or(0, |s| s.limit);
    let target = n.max(current.saturating_mul(4)).clamp(1 << 16, SIEVE_LIMIT);
    let sieve = Arc::new(PrimeSieve::new(target));
    *guard = Some(Arc::clone(&sieve));
    Ok(sieve)
}

/// π(t): number of primes ≤ ⌊t⌋.
pub fn prime_pi(t: f64) -> Result<u64> {
    if t.is_nan() || t < 0.0 {
        return Err(range!("prime_pi requires t >= 0, got {t}"));
    }
    if t > SIEVE_LIMIT as f64 {
        return Err(range!("{t} exceeds the sieve limit {SIEVE_LIMIT}"));
    }
    let n = t.floor() as u64;
    Ok(shared_sieve(n)?.count_upto(n))
}

/// Smallest pair of consecutive primes (p, p′) with p ≥ `p_lo`.
pub fn consecutive_primes(p_lo: u64) -> Result<PrimePair> {
    // prime gaps below 1e8 are < 250
    let sieve = shared_sieve((p_lo.saturating_add(600)).min(SIEVE_LIMIT))?;
    let p = sieve
        .next_prime(p_lo)
        .ok_or_else(|| range!("no prime >= {p_lo} below the sieve limit {SIEVE_LIMIT}"))?;
    let p_next = sieve
        .next_prime(p + 1)
        .ok_or_else(|| range!("no prime after {p} below the sieve limit {SIEVE_LIMIT}"))?;
    Ok(PrimePair { p, p_next })
}
