use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::e8;
use crate::error::LatticeError;
use crate::lattice::{IntegralLattice, Parity, Signature};

/// Symbolic isometry class `a·⟨1⟩ ⊕ b·⟨−1⟩ ⊕ c·U ⊕ d·E8 ⊕ e·E8(−1)`.
#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct LatticeClass {
    #[serde(rename = "plus1")]
    pub plus_one: u64,
    #[serde(rename = "minus1")]
    pub minus_one: u64,
    #[serde(rename = "U")]
    pub hyperbolic: u64,
    #[serde(rename = "E8")]
    pub e8: u64,
    #[serde(rename = "E8neg")]
    pub e8_negative: u64,
}

impl LatticeClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn diagonal(plus_one: u64, minus_one: u64) -> Self {
        LatticeClass {
            plus_one,
            minus_one,
            ..Self::default()
        }
    }

    pub fn even(hyperbolic: u64, e8: u64, e8_negative: u64) -> Self {
        LatticeClass {
            hyperbolic,
            e8,
            e8_negative,
            ..Self::default()
        }
    }

    pub fn rank(&self) -> u64 {
        self.plus_one + self.minus_one + 2 * self.hyperbolic + 8 * (self.e8 + self.e8_negative)
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    /// Formal signature from the summands: ⟨1⟩→(1,0), ⟨−1⟩→(0,1), U→(1,1),
    /// E8→(8,0), E8(−1)→(0,8).
    pub fn signature(&self) -> Signature {
        Signature::new(
            (self.plus_one + self.hyperbolic + 8 * self.e8) as usize,
            (self.minus_one + self.hyperbolic + 8 * self.e8_negative) as usize,
            0,
        )
    }

    /// `None` for the zero class.
    pub fn parity(&self) -> Option<Parity> {
        if self.is_zero() {
            None
        } else if self.plus_one + self.minus_one > 0 {
            Some(Parity::Odd)
        } else {
            Some(Parity::Even)
        }
    }

    /// Explicit Gram matrix, summands in the order ⟨1⟩, ⟨−1⟩, E8, E8(−1), U.
    pub fn to_lattice(&self) -> IntegralLattice {
        let mut diag = vec![1i64; self.plus_one as usize];
        diag.extend(std::iter::repeat_n(-1, self.minus_one as usize));
        let mut l = IntegralLattice::diagonal(&diag);
        let e = e8();
        for _ in 0..self.e8 {
            l = l.direct_sum(&e);
        }
        let en = e.negated();
        for _ in 0..self.e8_negative {
            l = l.direct_sum(&en);
        }
        let u = IntegralLattice::hyperbolic();
        for _ in 0..self.hyperbolic {
            l = l.direct_sum(&u);
        }
        l
    }
}

impl std::ops::Add for LatticeClass {
    type Output = LatticeClass;

    fn add(self, o: LatticeClass) -> LatticeClass {
        LatticeClass {
            plus_one: self.plus_one + o.plus_one,
            minus_one: self.minus_one + o.minus_one,
            hyperbolic: self.hyperbolic + o.hyperbolic,
            e8: self.e8 + o.e8,
            e8_negative: self.e8_negative + o.e8_negative,
        }
    }
}

const SYMBOLS: [&str; 5] = ["<1>", "<-1>", "E8(-1)", "E8", "U"];

/// `3<1> + 19<-1>`, `2E8(-1) + 3U`; the zero class renders as `0`.
impl fmt::Display for LatticeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = [
            (self.plus_one, "<1>"),
            (self.minus_one, "<-1>"),
            (self.e8, "E8"),
            (self.e8_negative, "E8(-1)"),
            (self.hyperbolic, "U"),
        ];
        let mut first = true;
        for (n, sym) in terms {
            if n == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            write!(f, "{n}{sym}")?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl FromStr for LatticeClass {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self, LatticeError> {
        let bad = || LatticeError::ClassSyntax(s.to_string());
        let s = s.trim();
        let mut class = LatticeClass::zero();
        if s == "0" {
            return Ok(class);
        }
        for term in s.split('+') {
            let term = term.trim();
            let digits = term.len() - term.trim_start_matches(|c: char| c.is_ascii_digit()).len();
            let count: u64 = if digits == 0 {
                1
            } else {
                term[..digits].parse().map_err(|_| bad())?
            };
            let symbol = term[digits..].trim();
            // E8(-1) must be tested before E8
            let slot = SYMBOLS
                .iter()
                .position(|&sym| sym == symbol)
                .ok_or_else(bad)?;
            match slot {
                0 => class.plus_one += count,
                1 => class.minus_one += count,
                2 => class.e8_negative += count,
                3 => class.e8 += count,
                _ => class.hyperbolic += count,
            }
        }
        Ok(class)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering() {
        assert_eq!(LatticeClass::diagonal(3, 19).to_string(), "3<1> + 19<-1>");
        assert_eq!(LatticeClass::even(3, 0, 2).to_string(), "2E8(-1) + 3U");
        assert_eq!(LatticeClass::even(1, 0, 0).to_string(), "1U");
        assert_eq!(LatticeClass::zero().to_string(), "0");
    }

    #[test]
    fn parsing() {
        for c in [
            LatticeClass::diagonal(3, 19),
            LatticeClass::even(3, 0, 2),
            LatticeClass::even(1, 2, 0),
            LatticeClass::zero(),
        ] {
            assert_eq!(c.to_string().parse::<LatticeClass>().unwrap(), c);
        }
        assert_eq!(
            "U".parse::<LatticeClass>().unwrap(),
            LatticeClass::even(1, 0, 0)
        );
        assert!("2V".parse::<LatticeClass>().is_err());
    }

    #[test]
    fn json_schema() {
        let c = LatticeClass::even(3, 0, 2);
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"plus1":0,"minus1":0,"U":3,"E8":0,"E8neg":2}"#
        );
    }

    #[test]
    fn formal_and_explicit_invariants_agree() {
        for c in [
            LatticeClass::diagonal(2, 3),
            LatticeClass::even(3, 0, 2),
            LatticeClass::even(1, 1, 0),
            LatticeClass {
                plus_one: 1,
                e8: 1,
                ..LatticeClass::zero()
            },
        ] {
            let l = c.to_lattice();
            assert_eq!(l.rank() as u64, c.rank());
            assert_eq!(l.signature(), c.signature());
            assert_eq!(l.parity().ok(), c.parity());
            assert!(l.is_unimodular());
        }
    }
}
