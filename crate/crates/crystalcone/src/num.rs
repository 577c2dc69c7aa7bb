//! Exact rational scalars and small helpers used across the crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// The crate's exact scalar type.
pub type Q = BigRational;

/// Integer → rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Exact ratio of two integers (`d != 0`).
pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Zero.
pub fn q0() -> Q {
    Q::zero()
}

/// One.
pub fn q1() -> Q {
    Q::one()
}

/// Exact conversion to `i64`; panics if the rational is not an integer that
/// fits (used only where integrality is a proven invariant).
pub fn q_to_i64(q: &Q) -> i64 {
    assert!(q.is_integer(), "expected an integer, got {q}");
    q.to_integer().to_i64().expect("integer out of i64 range")
}

/// `f64` approximation (fine for display and the numeric module).
pub fn q_to_f64(q: &Q) -> f64 {
    // BigRational::to_f64 can overflow for huge numerator/denominator pairs;
    // desk-scale values here stay far below that.
    q.to_f64().unwrap_or_else(|| {
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Serialize a rational as `{"num": "...", "den": "..."}` strings (exact;
/// avoids float drift in machine-readable output).
pub fn q_to_json(q: &Q) -> serde_json::Value {
    serde_json::json!({
        "num": q.numer().to_string(),
        "den": q.denom().to_string(),
    })
}

/// Parse the `{"num","den"}` form produced by [`q_to_json`].
pub fn q_from_json(v: &serde_json::Value) -> Option<Q> {
    let n: BigInt = v.get("num")?.as_str()?.parse().ok()?;
    let d: BigInt = v.get("den")?.as_str()?.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Q::new(n, d))
}

/// Integer power with negative exponents allowed; panics on 0^negative.
pub fn q_pow(b: &Q, e: i64) -> Q {
    if e == 0 {
        return q1();
    }
    let (base, n) = if e > 0 {
        (b.clone(), e as u64)
    } else {
        assert!(!b.is_zero(), "zero base with negative exponent");
        (q1() / b.clone(), e.unsigned_abs())
    };
    let mut acc = q1();
    let mut sq = base;
    let mut n = n;
    while n > 0 {
        if n & 1 == 1 {
            acc = acc * sq.clone();
        }
        sq = sq.clone() * sq;
        n >>= 1;
    }
    acc
}

/// Sign of a rational as -1, 0, or 1.
pub fn q_sign(q: &Q) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_arithmetic_is_exact() {
        let a = qr(1, 3);
        let b = qr(1, 6);
        assert_eq!(&a + &b, qr(1, 2));
        assert_eq!(&a - &b, qr(1, 6));
        assert_eq!(&a * &b, qr(1, 18));
    }

    #[test]
    fn json_round_trip() {
        let q = qr(-22, 7);
        let v = q_to_json(&q);
        assert_eq!(q_from_json(&v), Some(q));
    }

    #[test]
    fn integer_extraction_checks_integrality() {
        assert_eq!(q_to_i64(&qi(42)), 42);
    }
}
