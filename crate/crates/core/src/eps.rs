//! 0/1 vectors of length `r` indexing the rank-one basis of a block.
//!
//! Bit `i` of the mask holds coordinate `i`; text form lists coordinate 0
//! first, so `"01"` has only coordinate 1 set.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EpsParseError {
    #[error("empty bit string")]
    Empty,
    #[error("bit string longer than 32 positions")]
    TooLong,
    #[error("invalid character {ch:?} at position {pos}, expected 0 or 1")]
    BadChar { ch: char, pos: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EpsVec {
    mask: u32,
    len: u32,
}

impl EpsVec {
    pub fn new(mask: u32, len: u32) -> Self {
        assert!(len <= 32, "at most 32 coordinates");
        let m = if len == 32 { u32::MAX } else { (1u32 << len) - 1 };
        assert_eq!(mask & !m, 0, "mask has bits beyond the length");
        EpsVec { mask, len }
    }

    pub fn zero(len: u32) -> Self {
        EpsVec::new(0, len)
    }

    pub fn unit(i: u32, len: u32) -> Self {
        EpsVec::new(1 << i, len)
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mask = bits
            .iter()
            .enumerate()
            .fold(0u32, |m, (i, &b)| m | (((b & 1) as u32) << i));
        EpsVec::new(mask, bits.len() as u32)
    }

    /// Every vector of the given length, in increasing mask order.
    pub fn all(len: u32) -> impl Iterator<Item = EpsVec> {
        (0..1u32 << len).map(move |m| EpsVec::new(m, len))
    }

    pub fn mask(self) -> u32 {
        self.mask
    }

    pub fn len(self) -> u32 {
        self.len
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    pub fn bit(self, i: u32) -> u8 {
        ((self.mask >> i) & 1) as u8
    }

    pub fn bits(self) -> Vec<u8> {
        (0..self.len).map(|i| self.bit(i)).collect()
    }

    pub fn with_bit(self, i: u32, b: u8) -> EpsVec {
        let mask = if b == 0 {
            self.mask & !(1 << i)
        } else {
            self.mask | (1 << i)
        };
        EpsVec::new(mask, self.len)
    }

    /// Hamming weight.
    pub fn weight(self) -> u32 {
        self.mask.count_ones()
    }

    /// Hamming distance.
    pub fn distance(self, other: EpsVec) -> u32 {
        (self.mask ^ other.mask).count_ones()
    }

    /// Coordinatewise `<=`.
    pub fn is_below(self, other: EpsVec) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn overlaps(self, other: EpsVec) -> bool {
        self.mask & other.mask != 0
    }

    /// Coordinatewise sum of vectors with disjoint support.
    pub fn join(self, other: EpsVec) -> Option<EpsVec> {
        assert_eq!(self.len, other.len, "length mismatch");
        (!self.overlaps(other)).then(|| EpsVec::new(self.mask | other.mask, self.len))
    }

    /// `self - other` for `other <= self`.
    pub fn minus(self, other: EpsVec) -> EpsVec {
        assert!(other.is_below(self), "subtraction below zero");
        EpsVec::new(self.mask & !other.mask, self.len)
    }

    /// Coordinates `from..len`, reindexed from 0.
    pub fn tail(self, from: u32) -> EpsVec {
        EpsVec::new(self.mask >> from, self.len - from)
    }
}

impl fmt::Display for EpsVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", self.bit(i))?;
        }
        Ok(())
    }
}

impl FromStr for EpsVec {
    type Err = EpsParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err(EpsParseError::Empty);
        }
        if s.chars().count() > 32 {
            return Err(EpsParseError::TooLong);
        }
        let mut bits = Vec::with_capacity(s.len());
        for (pos, ch) in s.chars().enumerate() {
            match ch {
                '0' => bits.push(0),
                '1' => bits.push(1),
                _ => return Err(EpsParseError::BadChar { ch, pos }),
            }
        }
        Ok(EpsVec::from_bits(&bits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn text_lists_coordinate_zero_first() {
        let e: EpsVec = "01".parse().unwrap();
        assert_eq!(e.bit(0), 0);
        assert_eq!(e.bit(1), 1);
        assert_eq!(e.to_string(), "01");
        assert_eq!(
            "0a1".parse::<EpsVec>(),
            Err(EpsParseError::BadChar { ch: 'a', pos: 1 })
        );
    }

    #[test]
    fn join_rejects_overlap() {
        let a = EpsVec::from_bits(&[1, 0, 1]);
        let b = EpsVec::from_bits(&[0, 1, 0]);
        assert_eq!(a.join(b), Some(EpsVec::from_bits(&[1, 1, 1])));
        assert_eq!(a.join(a), None);
        assert_eq!(a.join(EpsVec::zero(3)), Some(a));
    }

    proptest! {
        #[test]
        fn order_weight_and_distance_agree(len in 1u32..8, a in any::<u32>(), b in any::<u32>()) {
            let m = (1u32 << len) - 1;
            let (x, y) = (EpsVec::new(a & m, len), EpsVec::new(b & m, len));
            if x.is_below(y) {
                prop_assert_eq!(x.distance(y), y.weight() - x.weight());
                prop_assert_eq!(y.minus(x).weight(), x.distance(y));
            }
            prop_assert_eq!(x.to_string().parse::<EpsVec>().unwrap(), x);
            prop_assert_eq!(x.is_below(y) && y.is_below(x), x == y);
        }
    }
}
