use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Widest label that still fits a `u64` canonical value.
const MAX_WIDTH: usize = 64;

/// A fixed-width label `x_1 ... x_m` of a computational basis state or of a
/// function input. `bits[0]` is the most significant bit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BitString {
    bits: Vec<u8>,
}

impl BitString {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::InvalidBitString("width must be at least 1".into()));
        }
        if bits.len() > MAX_WIDTH {
            return Err(Error::SizeLimitExceeded {
                what: "bit string width",
                value: bits.len(),
                max: MAX_WIDTH,
            });
        }
        if let Some(b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidBitString(format!("entry {b} is not a bit")));
        }
        Ok(Self { bits })
    }

    /// The label of width `width` whose canonical value is `value`.
    pub fn from_index(value: u64, width: usize) -> Result<Self> {
        if width == 0 {
            return Err(Error::InvalidBitString("width must be at least 1".into()));
        }
        if width > MAX_WIDTH {
            return Err(Error::SizeLimitExceeded {
                what: "bit string width",
                value: width,
                max: MAX_WIDTH,
            });
        }
        if width < 64 && value >> width != 0 {
            return Err(Error::InvalidBitString(format!(
                "value {value} does not fit in {width} bits"
            )));
        }
        let bits = (0..width)
            .map(|k| ((value >> (width - 1 - k)) & 1) as u8)
            .collect();
        Ok(Self { bits })
    }

    pub fn width(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// Canonical integer value, leftmost bit most significant.
    pub fn index(&self) -> u64 {
        self.bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64)
    }

    pub fn popcount(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }

    /// Number of ones modulo two.
    pub fn parity(&self) -> u8 {
        (self.popcount() % 2) as u8
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::InvalidBitString(format!(
                    "unexpected character {other:?} in {s:?}"
                ))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::new(bits)
    }
}
