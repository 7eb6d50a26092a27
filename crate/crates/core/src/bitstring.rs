use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Computational-basis state of `n` qubits. Qubit 0 is written first and is
/// the most significant bit of [`BitString::to_index`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn zeros(n: usize) -> Self {
        BitString(vec![false; n])
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        BitString(bits)
    }

    /// Inverse of [`BitString::to_index`]; requires `n <= 64`.
    pub fn from_index(index: u64, n: usize) -> Self {
        assert!(n <= 64);
        BitString((0..n).map(|q| (index >> (n - 1 - q)) & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, qubit: usize) -> bool {
        self.0[qubit]
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    /// Row-major index into a statevector, qubit 0 most significant.
    pub fn to_index(&self) -> u64 {
        assert!(self.0.len() <= 64, "bit-string too long for an index");
        self.0.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64)
    }

    pub fn check_len(&self, n: usize) -> Result<()> {
        if self.0.len() != n {
            return Err(Error::BitStringLength {
                expected: n,
                got: self.0.len(),
            });
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::InvalidBitString(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()
            .map(BitString)
    }
}

impl From<BitString> for String {
    fn from(b: BitString) -> String {
        b.to_string()
    }
}

impl TryFrom<String> for BitString {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Parse a file of bit-strings, one per line, checking each has `n` bits.
/// Blank lines and `#` comments are skipped.
pub fn parse_bitstrings(text: &str, n: usize) -> Result<Vec<BitString>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bs: BitString = line.parse().map_err(|_| Error::Parse {
            line: i + 1,
            message: format!("invalid bit-string {line:?}"),
        })?;
        if bs.len() != n {
            return Err(Error::Parse {
                line: i + 1,
                message: format!("expected {n} bits, found {}", bs.len()),
            });
        }
        out.push(bs);
    }
    Ok(out)
}
