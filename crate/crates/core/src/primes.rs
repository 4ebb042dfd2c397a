//! Flat bitset sieve of Eratosthenes with odd-only storage, plus
//! residue-class extraction for prime sequences like p = 3 (mod 4).

use crate::error::{Error, Result};

pub const MIN_SIEVE_LIMIT: u64 = 2;
pub const MAX_SIEVE_LIMIT: u64 = 1 << 32;

/// Primality flags for all integers in `[2, limit]`.
/// Immutable after construction; cheap to share across threads.
pub struct PrimeTable {
    limit: u64,
    // bit i <=> 2i+1 is prime (odd numbers only; index 0 is 1, never prime)
    odd_bits: Vec<u64>,
}

impl PrimeTable {
    /// Sieve all primes up to and including `limit`.
    pub fn sieve(limit: u64) -> Result<PrimeTable> {
        if !(MIN_SIEVE_LIMIT..=MAX_SIEVE_LIMIT).contains(&limit) {
            return Err(Error::SieveLimit {
                limit,
                min: MIN_SIEVE_LIMIT,
                max: MAX_SIEVE_LIMIT,
            });
        }
        let n_odd = ((limit + 1) / 2) as usize; // odds in [1, limit]
        let mut odd_bits = vec![u64::MAX; n_odd.div_ceil(64).max(1)];
        clear_bit(&mut odd_bits, 0); // 1 is not prime
        // mask out bits beyond n_odd
        let tail = n_odd % 64;
        if tail != 0 {
            *odd_bits.last_mut().unwrap() &= (1u64 << tail) - 1;
        }
        let mut p = 3u64;
        while p * p <= limit {
            if get_bit(&odd_bits, (p / 2) as usize) {
                let mut j = p * p;
                while j <= limit {
                    clear_bit(&mut odd_bits, (j / 2) as usize);
                    j += 2 * p;
                }
            }
            p += 2;
        }
        Ok(PrimeTable { limit, odd_bits })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Primality of `n`; `n` must not exceed the sieve limit.
    pub fn is_prime(&self, n: u64) -> bool {
        assert!(n <= self.limit, "query {n} beyond sieve limit {}", self.limit);
        match n {
            0 | 1 => false,
            2 => true,
            _ if n % 2 == 0 => false,
            _ => get_bit(&self.odd_bits, (n / 2) as usize),
        }
    }

    /// All primes in ascending order.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        let odds = (1..=self.limit)
            .step_by(2)
            .filter(move |&n| get_bit(&self.odd_bits, (n / 2) as usize));
        std::iter::once(2).chain(odds.filter(move |&n| n >= 3))
    }

    pub fn count_primes(&self) -> usize {
        self.primes().count()
    }

    /// Ascending primes `p <= limit` with `p = residue (mod modulus)`.
    pub fn primes_in_class(&self, modulus: u64, residue: u64) -> Vec<u64> {
        assert!(modulus >= 1, "modulus must be at least 1");
        assert!(residue < modulus, "residue must lie in [0, modulus)");
        self.primes().filter(|p| p % modulus == residue).collect()
    }
}

fn get_bit(bits: &[u64], i: usize) -> bool {
    bits[i / 64] >> (i % 64) & 1 == 1
}

fn clear_bit(bits: &mut [u64], i: usize) {
    bits[i / 64] &= !(1u64 << (i % 64));
}

/// Initial sieve limit guess for the n-th prime in a residue class:
/// `n (ln n + ln ln n) * modulus`, clamped to the supported range.
fn initial_limit_guess(n: usize, modulus: u64) -> u64 {
    let nf = (n.max(2)) as f64;
    let guess = (nf * (nf.ln() + nf.ln().ln().max(0.0)) * modulus as f64) as u64;
    guess.clamp(64, MAX_SIEVE_LIMIT)
}

/// First `count` primes congruent to `residue` mod `modulus`, growing the
/// sieve limit geometrically until enough are found.
pub fn first_primes_in_class(count: usize, modulus: u64, residue: u64) -> Result<Vec<u64>> {
    assert!(count >= 1, "count must be at least 1");
    let mut limit = initial_limit_guess(count, modulus);
    loop {
        let table = PrimeTable::sieve(limit)?;
        let mut found = Vec::with_capacity(count);
        for p in table.primes() {
            if p % modulus == residue {
                found.push(p);
                if found.len() == count {
                    return Ok(found);
                }
            }
        }
        if limit == MAX_SIEVE_LIMIT {
            return Err(Error::SearchCapExceeded {
                cap: MAX_SIEVE_LIMIT,
            });
        }
        limit = (limit * 2).min(MAX_SIEVE_LIMIT);
    }
}

/// The n-th prime (1-based) congruent to `residue` mod `modulus`.
pub fn nth_prime_in_class(n: usize, modulus: u64, residue: u64) -> Result<u64> {
    Ok(*first_primes_in_class(n, modulus, residue)?
        .last()
        .expect("nonempty by construction"))
}
