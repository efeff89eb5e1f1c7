use crate::error::{domain, Result};

/// Exact `C(n, k)` for `0 <= n <= 64`; zero when `k` is out of range.
pub fn binom(n: i64, k: i64) -> Result<u64> {
    if !(0..=64).contains(&n) {
        return domain(format!("binom: n = {n} outside 0..=64"));
    }
    if k < 0 || k > n {
        return Ok(0);
    }
    let k = k.min(n - k) as u128;
    let mut c: u128 = 1;
    for i in 0..k {
        c = c * (n as u128 - i) / (i + 1);
    }
    Ok(c as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(binom(2, 1).unwrap(), 2);
        assert_eq!(binom(0, 1).unwrap(), 0);
        assert_eq!(binom(5, -1).unwrap(), 0);
        assert_eq!(binom(40, 20).unwrap(), 137_846_528_820);
        assert_eq!(binom(64, 32).unwrap(), 1_832_624_140_942_590_534);
    }

    #[test]
    fn cap_enforced() {
        assert!(binom(65, 3).is_err());
        assert!(binom(-1, 0).is_err());
    }

    #[test]
    fn pascal_triangle_and_symmetry() {
        let mut row = vec![1u64];
        for n in 1..=64i64 {
            let mut next = vec![1u64; n as usize + 1];
            for k in 1..n as usize {
                next[k] = row[k - 1] + row[k];
            }
            row = next;
            for k in 0..=n {
                let c = binom(n, k).unwrap();
                assert_eq!(c, row[k as usize]);
                assert_eq!(c, binom(n, n - k).unwrap());
            }
        }
    }
}
