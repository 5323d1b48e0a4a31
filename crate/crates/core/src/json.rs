//! Exact integer bridging for `serde_json` numbers.

use num::BigInt;
use serde_json::Number;

use crate::error::LatticeError;

pub(crate) fn to_number(n: &BigInt) -> Number {
    n.to_string()
        .parse()
        .expect("decimal integer is a valid JSON number")
}

pub(crate) fn from_number(n: &Number) -> Result<BigInt, LatticeError> {
    let text = n.to_string();
    text.parse().map_err(|_| LatticeError::NotAnInteger(text))
}

pub(crate) fn matrix_from_numbers(rows: &[Vec<Number>]) -> Result<Vec<Vec<BigInt>>, LatticeError> {
    rows.iter()
        .map(|row| row.iter().map(from_number).collect())
        .collect()
}

pub(crate) fn matrix_to_numbers(rows: &[Vec<BigInt>]) -> Vec<Vec<Number>> {
    rows.iter()
        .map(|row| row.iter().map(to_number).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_literals_survive() {
        let n: Number = "123456789012345678901234567890".parse().unwrap();
        let b = from_number(&n).unwrap();
        assert_eq!(to_number(&b).to_string(), "123456789012345678901234567890");
    }

    #[test]
    fn fractions_rejected() {
        let n: Number = "1.5".parse().unwrap();
        assert!(matches!(
            from_number(&n),
            Err(LatticeError::NotAnInteger(_))
        ));
    }
}
