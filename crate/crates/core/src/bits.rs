//! Bit strings and the self-delimiting integer code shared by the machine
//! and the proof encodings.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A finite string over {0,1}, stored one `bool` per bit.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn new() -> Self {
        BitString(Vec::new())
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        BitString(bits)
    }

    /// Parses a string of `'0'`/`'1'` characters. Returns `None` on any other character.
    pub fn parse01(s: &str) -> Option<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(BitString)
    }

    /// Bytes, most significant bit first.
    pub fn from_bytes(bytes: &[u8]) -> Self {
        let mut v = Vec::with_capacity(bytes.len() * 8);
        for &b in bytes {
            for k in (0..8).rev() {
                v.push((b >> k) & 1 == 1);
            }
        }
        BitString(v)
    }

    /// The `index`-th string of length `len` in lexicographic order.
    pub fn from_index(index: u64, len: usize) -> Self {
        BitString((0..len).rev().map(|k| k < 64 && (index >> k) & 1 == 1).collect())
    }

    pub fn ones(n: usize) -> Self {
        BitString(vec![true; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn into_bits(self) -> Vec<bool> {
        self.0
    }

    pub fn push(&mut self, b: bool) {
        self.0.push(b);
    }

    pub fn extend_from(&mut self, other: &[bool]) {
        self.0.extend_from_slice(other);
    }

    pub fn concat(&self, other: &BitString) -> BitString {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        BitString(v)
    }

    pub fn reversed(&self) -> BitString {
        BitString(self.0.iter().rev().copied().collect())
    }

    /// Packs into bytes, most significant bit first, zero-padding the last byte.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.0
            .chunks(8)
            .map(|c| c.iter().enumerate().fold(0u8, |acc, (i, &b)| acc | ((b as u8) << (7 - i))))
            .collect()
    }

    pub fn to_hex(&self) -> String {
        hex::encode(self.to_bytes())
    }

    /// Inverse of [`BitString::to_hex`] given the exact bit length.
    pub fn from_hex(hex_str: &str, bit_len: usize) -> Option<Self> {
        let bytes = hex::decode(hex_str).ok()?;
        if bytes.len() != bit_len.div_ceil(8) {
            return None;
        }
        let mut v = BitString::from_bytes(&bytes).0;
        if v[bit_len..].iter().any(|&b| b) {
            return None;
        }
        v.truncate(bit_len);
        Some(BitString(v))
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl From<&[bool]> for BitString {
    fn from(b: &[bool]) -> Self {
        BitString(b.to_vec())
    }
}

#[derive(Serialize, Deserialize)]
struct HexBits {
    hex: String,
    bits: usize,
}

impl Serialize for BitString {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        HexBits { hex: self.to_hex(), bits: self.len() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BitString {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let h = HexBits::deserialize(d)?;
        BitString::from_hex(&h.hex, h.bits)
            .ok_or_else(|| serde::de::Error::custom("hex payload does not match bit length"))
    }
}

/// `⌈log₂ x⌉` for `x ≥ 1`; `0` for `x ≤ 1`.
pub fn ceil_log2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

/// `⌊log₂ x⌋` for `x ≥ 1`.
pub fn floor_log2(x: u64) -> u32 {
    debug_assert!(x >= 1);
    63 - x.leading_zeros()
}

/// Length of the Elias-gamma code of `x ≥ 1`: `2⌊log₂ x⌋ + 1`.
pub fn gamma_len(x: u64) -> usize {
    2 * floor_log2(x) as usize + 1
}

/// Appends the Elias-gamma code of `x ≥ 1`.
pub fn push_gamma(out: &mut Vec<bool>, x: u64) {
    assert!(x >= 1, "gamma code is defined for x >= 1");
    let k = floor_log2(x);
    out.extend(std::iter::repeat(false).take(k as usize));
    for i in (0..=k).rev() {
        out.push((x >> i) & 1 == 1);
    }
}

/// Reads an Elias-gamma code at `*pos`, advancing it. `None` if truncated or
/// the value does not fit in 63 bits.
pub fn read_gamma(bits: &[bool], pos: &mut usize) -> Option<u64> {
    let mut zeros = 0usize;
    while *pos + zeros < bits.len() && !bits[*pos + zeros] {
        zeros += 1;
        if zeros > 62 {
            return None;
        }
    }
    let end = *pos + 2 * zeros + 1;
    if end > bits.len() {
        return None;
    }
    let mut v = 0u64;
    for &b in &bits[*pos + zeros..end] {
        v = (v << 1) | b as u64;
    }
    *pos = end;
    Some(v)
}

/// Appends `value` as exactly `width` bits, most significant first.
pub fn push_fixed(out: &mut Vec<bool>, value: u64, width: u32) {
    for i in (0..width).rev() {
        out.push((value >> i) & 1 == 1);
    }
}

pub fn read_fixed(bits: &[bool], pos: &mut usize, width: u32) -> Option<u64> {
    let end = *pos + width as usize;
    if end > bits.len() {
        return None;
    }
    let v = bits[*pos..end].iter().fold(0u64, |acc, &b| (acc << 1) | b as u64);
    *pos = end;
    Some(v)
}
