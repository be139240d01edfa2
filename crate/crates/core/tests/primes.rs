use jacob_ladder::primes::{consecutive_primes, prime_pi, PrimeSieve, SIEVE_LIMIT};
use jacob_ladder::{Error, EULER_GAMMA};
use proptest::prelude::*;

fn is_prime_trial(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[test]
fn known_counts() {
    assert_eq!(prime_pi(10.0).unwrap(), 4);
    assert_eq!(prime_pi(1000.0).unwrap(), 168);
    assert_eq!(prime_pi(1.0e5).unwrap(), 9592);
    assert_eq!(prime_pi(1.0e6).unwrap(), 78498);
    assert_eq!(prime_pi(10.99).unwrap(), 4);
    assert_eq!(prime_pi(0.0).unwrap(), 0);
}

#[test]
fn counts_match_trial_division() {
    let mut count = 0;
    for n in 0..=5000u64 {
        if is_prime_trial(n) {
            count += 1;
        }
        assert_eq!(prime_pi(n as f64).unwrap(), count, "pi({n})");
    }
}

#[test]
fn known_pairs() {
    let p = consecutive_primes(3).unwrap();
    assert_eq!((p.p, p.p_next), (3, 5));
    let p = consecutive_primes(89).unwrap();
    assert_eq!((p.p, p.p_next), (89, 97));
    let p = consecutive_primes(1_000_000).unwrap();
    assert_eq!((p.p, p.p_next), (1_000_003, 1_000_033));
    let p = consecutive_primes(10_007).unwrap();
    assert_eq!((p.p, p.p_next, p.gap()), (10_007, 10_009, 2));
}

#[test]
fn range_errors() {
    assert!(matches!(prime_pi(-1.0), Err(Error::Range(_))));
    assert!(matches!(prime_pi(f64::NAN), Err(Error::Range(_))));
    assert!(matches!(
        prime_pi(SIEVE_LIMIT as f64 + 1.0),
        Err(Error::Range(_))
    ));
    assert!(matches!(
        consecutive_primes(SIEVE_LIMIT),
        Err(Error::Range(_))
    ));
}

#[test]
fn euler_constant() {
    // c = lim (H_n - ln n); H_n - ln n - 1/(2n) + 1/(12 n^2) converges fast
    let n = 100_000u32;
    let h: f64 = (1..=n).rev().map(|k| 1.0 / k as f64).sum();
    let nf = n as f64;
    let approx = h - nf.ln() - 1.0 / (2.0 * nf) + 1.0 / (12.0 * nf * nf);
    assert!((approx - EULER_GAMMA).abs() < 1e-13);
}

#[test]
fn small_sieve_agrees() {
    let s = PrimeSieve::new(2000);
    for n in 0..=2000 {
        assert_eq!(s.is_prime(n), is_prime_trial(n), "{n}");
    }
    assert_eq!(s.primes().take(5).collect::<Vec<_>>(), vec![2, 3, 5, 7, 11]);
}

proptest! {
    #[test]
    fn pairs_are_consecutive(p_lo in 0u64..2_000_000) {
        let pair = consecutive_primes(p_lo).unwrap();
        prop_assert!(pair.p >= p_lo && pair.p < pair.p_next);
        prop_assert!(is_prime_trial(pair.p) && is_prime_trial(pair.p_next));
        for n in pair.p + 1..pair.p_next {
            prop_assert!(!is_prime_trial(n));
        }
        for n in p_lo..pair.p {
            prop_assert!(!is_prime_trial(n));
        }
        prop_assert_eq!(prime_pi(pair.p_next as f64).unwrap(), prime_pi(pair.p as f64).unwrap() + 1);
    }

    #[test]
    fn pi_nondecreasing(a in 0.0f64..1.0e6, d in 0.0f64..1000.0) {
        prop_assert!(prime_pi(a + d).unwrap() >= prime_pi(a).unwrap());
    }
}
