//! Cantor pairing on the naturals.
//!
//! `pair(x, y) = (x + y)(x + y + 1) / 2 + y`, a bijection `ℕ² → ℕ`.

/// Pairs two naturals. Returns `None` when the code does not fit in a `u64`.
pub fn checked_pair(x: u64, y: u64) -> Option<u64> {
    let code = pair_wide(x as u128, y as u128)?;
    u64::try_from(code).ok()
}

/// Pairs two naturals.
///
/// Panics on overflow; use [`checked_pair`] when the arguments are not known
/// to be small.
pub fn pair(x: u64, y: u64) -> u64 {
    checked_pair(x, y).expect("pair code overflows u64")
}

/// Pairing over `u128`, used while encoding programs whose codes may outgrow `u64`.
pub(crate) fn pair_wide(x: u128, y: u128) -> Option<u128> {
    let s = x.checked_add(y)?;
    let t = s.checked_mul(s.checked_add(1)?)? / 2;
    t.checked_add(y)
}

/// Inverse of [`pair`].
pub fn unpair(z: u64) -> (u64, u64) {
    let w = diagonal(z);
    let t = (w as u128) * (w as u128 + 1) / 2;
    let y = (z as u128 - t) as u64;
    (w - y, y)
}

/// Largest `w` with `w(w+1)/2 <= z`.
fn diagonal(z: u64) -> u64 {
    let z = z as u128;
    let mut w = ((((8 * z + 1) as f64).sqrt() - 1.0) / 2.0) as u128;
    while w * (w + 1) / 2 > z {
        w -= 1;
    }
    while (w + 1) * (w + 2) / 2 <= z {
        w += 1;
    }
    w as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_values() {
        assert_eq!(pair(0, 0), 0);
        assert_eq!(pair(1, 2), 8);
        assert_eq!(pair(1, 0), 1);
        assert_eq!(pair(3, 4), 32);
        assert_eq!(unpair(1), (1, 0));
        assert_eq!(unpair(8), (1, 2));
    }

    #[test]
    fn enumerates_diagonals_in_order() {
        let mut z = 0;
        for s in 0..40u64 {
            for y in 0..=s {
                assert_eq!(pair(s - y, y), z);
                assert_eq!(unpair(z), (s - y, y));
                z += 1;
            }
        }
    }

    #[test]
    fn extreme_codes() {
        for z in [u64::MAX, u64::MAX - 1, 1 << 63, (1 << 53) + 7] {
            let (x, y) = unpair(z);
            assert_eq!(checked_pair(x, y), Some(z));
        }
        assert_eq!(checked_pair(u64::MAX, 1), None);
    }

    proptest! {
        #[test]
        fn unpair_inverts_pair(x in 0u64..(1 << 30), y in 0u64..(1 << 30)) {
            prop_assert_eq!(unpair(pair(x, y)), (x, y));
        }

        #[test]
        fn pair_inverts_unpair(z in any::<u64>()) {
            let (x, y) = unpair(z);
            prop_assert_eq!(checked_pair(x, y), Some(z));
        }
    }
}
