//! Exhaustive enumeration of seat vectors.

use crate::error::{OracleError, Result};

/// Refuse enumerations larger than this.
pub const ENUMERATION_LIMIT: u128 = 10_000_000;

/// `C(n + k - 1, k - 1)`, saturating.
pub fn composition_count(parties: usize, house_size: u64) -> u128 {
    if parties == 0 {
        return u128::from(house_size == 0);
    }
    let n = house_size as u128;
    let r = (parties - 1) as u128;
    let mut acc: u128 = 1;
    for i in 1..=r.min(n) {
        // C(n + r, i) built incrementally; exact at every step
        acc = match acc.checked_mul(n + r - r.min(n) + i) {
            Some(v) => v / i,
            None => return u128::MAX,
        };
    }
    acc
}

/// Every way to write `house_size` as an ordered sum of `parties`
/// non-negative parts, in lexicographic order.
pub fn enumerate_allocations(parties: usize, house_size: u64) -> Result<Compositions> {
    let estimate = composition_count(parties, house_size);
    if estimate > ENUMERATION_LIMIT {
        return Err(OracleError::EnumerationTooLarge {
            estimate,
            limit: ENUMERATION_LIMIT,
        });
    }
    let current = (parties > 0).then(|| {
        let mut v = vec![0; parties];
        v[parties - 1] = house_size;
        v
    });
    Ok(Compositions { current })
}

pub struct Compositions {
    current: Option<Vec<u64>>,
}

impl Iterator for Compositions {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let out = self.current.take()?;
        let k = out.len();
        // the rightmost non-last position that can still grow
        let mut next = out.clone();
        let pivot = (0..k.saturating_sub(1))
            .rev()
            .find(|&i| next[i + 1..].iter().any(|&x| x > 0));
        if let Some(i) = pivot {
            let tail: u64 = next[i + 1..].iter().sum();
            next[i] += 1;
            for x in &mut next[i + 1..] {
                *x = 0;
            }
            next[k - 1] = tail - 1;
            self.current = Some(next);
        }
        Some(out)
    }
}
