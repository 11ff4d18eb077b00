//! Small number-theory helpers.

/// Greatest common divisor by the Euclidean algorithm, with `gcd(0, n) = n`.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

/// gcd of a non-empty slice.
pub fn gcd_all(values: &[u64]) -> u64 {
    assert!(!values.is_empty(), "gcd of an empty slice is undefined");
    values.iter().fold(0, |acc, &v| gcd(acc, v))
}
