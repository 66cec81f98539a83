//! JSON helpers for exact integers.
//!
//! Integers are written as plain JSON numbers of any size (serde_json is built
//! with `arbitrary_precision`), so documents stay bit-exact.

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{Number, Value};

use crate::error::{Error, Result};

pub fn bigint_to_value(v: &BigInt) -> Value {
    Value::Number(Number::from_str(&v.to_string()).expect("integer literal is a valid JSON number"))
}

pub fn bigint_from_value(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string()).map_err(|_| Error::Format(format!("not an integer: {n}"))),
        Value::String(s) => BigInt::from_str(s).map_err(|_| Error::Format(format!("not an integer: {s}"))),
        other => Err(Error::Format(format!("expected integer, found {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn large_integers_survive() {
        let big = BigInt::from_str("-123456789012345678901234567890").unwrap();
        let v = bigint_to_value(&big);
        assert_eq!(serde_json::to_string(&v).unwrap(), "-123456789012345678901234567890");
        let back: Value = serde_json::from_str("-123456789012345678901234567890").unwrap();
        assert_eq!(bigint_from_value(&back).unwrap(), big);
        assert!(bigint_from_value(&Value::Bool(true)).is_err());
    }
}
