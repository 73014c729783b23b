//! Index pairs `(a, j)` and `r`-tuples of them.
//!
//! `j` is stored doubled so the half-integer label used at `p = 2` needs no
//! rationals. Text form is `a:2j`, tuples are comma-joined.

use std::fmt;

use serde::Serialize;

use crate::arith::Prime;
use crate::eps::EpsVec;

use super::IdempotentError;

/// The four mutually exclusive shapes of a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Case {
    A,
    B,
    C,
    D,
}

impl Case {
    /// Cases whose lift shifts an `X` power through the Frobenius image.
    pub fn is_shifted(self) -> bool {
        matches!(self, Case::A | Case::C)
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Case::A => "A",
            Case::B => "B",
            Case::C => "C",
            Case::D => "D",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairAJ {
    a: u32,
    two_j: u32,
    case: Case,
    p: Prime,
}

/// The case of a pair, or `None` when it is not a legal index.
pub fn classify(a: u32, two_j: u32, p: Prime) -> Option<Case> {
    let q = p.get();
    if q == 2 {
        return match (a, two_j) {
            (0, 1) => Some(Case::B),
            (1, 0) => Some(Case::C),
            (1, 2) => Some(Case::D),
            _ => None,
        };
    }
    if a >= q || !two_j.is_multiple_of(2) || two_j > q - 1 {
        return None;
    }
    let j = two_j / 2;
    Some(if a.is_multiple_of(2) {
        if 2 * j + a > q {
            Case::A
        } else {
            Case::B
        }
    } else if 2 * j < a {
        Case::C
    } else {
        Case::D
    })
}

impl PairAJ {
    pub fn new(p: Prime, a: u32, two_j: u32) -> Result<Self, IdempotentError> {
        let case = classify(a, two_j, p).ok_or(IdempotentError::NotAnIndex {
            a: a as i64,
            two_j: two_j as i64,
            p: p.get(),
        })?;
        Ok(PairAJ { a, two_j, case, p })
    }

    /// Every legal pair in increasing `(a, two_j)` order.
    pub fn all(p: Prime) -> Vec<PairAJ> {
        let q = p.get();
        let mut out = Vec::new();
        for a in 0..q {
            for two_j in 0..=q {
                if let Ok(pair) = PairAJ::new(p, a, two_j) {
                    out.push(pair);
                }
            }
        }
        out
    }

    /// Parses `a:2j`.
    pub fn parse(p: Prime, s: &str) -> Result<Self, IdempotentError> {
        let bad = || IdempotentError::Parse(format!("expected a:2j, got {s:?}"));
        let (a, t) = s.trim().split_once(':').ok_or_else(bad)?;
        let a: i64 = a.trim().parse().map_err(|_| bad())?;
        let t: i64 = t.trim().parse().map_err(|_| bad())?;
        let not_index = IdempotentError::NotAnIndex {
            a,
            two_j: t,
            p: p.get(),
        };
        if a < 0 || t < 0 || a > u32::MAX as i64 || t > u32::MAX as i64 {
            return Err(not_index);
        }
        PairAJ::new(p, a as u32, t as u32)
    }

    pub fn a(self) -> u32 {
        self.a
    }

    pub fn two_j(self) -> u32 {
        self.two_j
    }

    pub fn case(self) -> Case {
        self.case
    }

    pub fn prime(self) -> Prime {
        self.p
    }

    /// `j` itself, for odd `p`.
    pub fn j(self) -> u32 {
        assert!(self.p.get() != 2, "j is a half-integer label at p = 2");
        self.two_j / 2
    }

    /// Whether the two choices of the bit give different elements: `j != 0`
    /// for odd `p`, `a != 1` for `p = 2`.
    pub fn is_free(self) -> bool {
        if self.p.get() == 2 {
            self.a != 1
        } else {
            self.two_j != 0
        }
    }

    /// Diagonal coefficient `j^2 - ((a+1)/2)^2` of the `YX` action.
    pub fn alpha(self) -> u32 {
        let p = self.p;
        if p.get() == 2 {
            // exact integer division, legal for the three pairs
            let num = (self.two_j * self.two_j) as i64 - ((self.a + 1) * (self.a + 1)) as i64;
            debug_assert_eq!(num % 4, 0);
            return p.reduce(num / 4);
        }
        let j = self.j();
        p.sub(p.mul(j, j), crate::poly::half_shift_square(self.a as i64, p))
    }

    /// Off-diagonal coefficient `4 j^2 = (2j)^2`.
    pub fn beta(self) -> u32 {
        self.p.reduce_u64(self.two_j as u64 * self.two_j as u64)
    }

    /// The first-shift amount used by the shifted lift (cases A and C only).
    pub fn shift(self) -> Result<u32, IdempotentError> {
        if !self.case.is_shifted() {
            return Err(IdempotentError::NoShift {
                pair: self.to_string(),
                case: self.case,
            });
        }
        let q = self.p.get();
        Ok(if q == 2 {
            1
        } else if self.a.is_multiple_of(2) {
            (q - self.a).div_ceil(2)
        } else {
            (q - self.a) / 2
        })
    }

    /// The digit this pair contributes to the weight: `a - p` in the shifted
    /// cases, `a` otherwise.
    pub fn weight_digit(self) -> i64 {
        if self.case.is_shifted() {
            self.a as i64 - self.p.get() as i64
        } else {
            self.a as i64
        }
    }
}

impl fmt::Display for PairAJ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.a, self.two_j)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TupleAJ {
    pairs: Vec<PairAJ>,
}

impl TupleAJ {
    pub fn new(pairs: Vec<PairAJ>) -> Result<Self, IdempotentError> {
        let Some(first) = pairs.first() else {
            return Err(IdempotentError::Parse("a tuple needs at least one pair".into()));
        };
        let p = first.prime();
        if pairs.iter().any(|q| q.prime() != p) {
            return Err(IdempotentError::Parse("pairs over different primes".into()));
        }
        if pairs.len() > 16 {
            return Err(IdempotentError::Parse("at most 16 pairs".into()));
        }
        Ok(TupleAJ { pairs })
    }

    pub fn parse(p: Prime, s: &str) -> Result<Self, IdempotentError> {
        let pairs = s
            .split(',')
            .map(|t| PairAJ::parse(p, t))
            .collect::<Result<Vec<_>, _>>()?;
        TupleAJ::new(pairs)
    }

    /// All of `P^r` in lexicographic order of the `(a, two_j)` sequences.
    pub fn all(p: Prime, r: u32) -> Vec<TupleAJ> {
        let singles = PairAJ::all(p);
        let mut out: Vec<Vec<PairAJ>> = vec![vec![]];
        for _ in 0..r {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    singles.iter().map(move |&q| {
                        let mut v = prefix.clone();
                        v.push(q);
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(|pairs| TupleAJ { pairs }).collect()
    }

    pub fn prime(&self) -> Prime {
        self.pairs[0].prime()
    }

    pub fn r(&self) -> u32 {
        self.pairs.len() as u32
    }

    pub fn pairs(&self) -> &[PairAJ] {
        &self.pairs
    }

    pub fn pair(&self, i: u32) -> PairAJ {
        self.pairs[i as usize]
    }

    /// Pairs `from..r` as a shorter tuple.
    pub fn tail(&self, from: u32) -> TupleAJ {
        TupleAJ {
            pairs: self.pairs[from as usize..].to_vec(),
        }
    }

    /// The vector with a 1 at every free position.
    pub fn free_mask(&self) -> EpsVec {
        let bits: Vec<u8> = self.pairs.iter().map(|q| q.is_free() as u8).collect();
        EpsVec::from_bits(&bits)
    }

    /// Number of free positions.
    pub fn w(&self) -> u32 {
        self.free_mask().weight()
    }

    /// `sum b_i p^i mod p^r` with `b_i` the weight digits.
    pub fn weight_index(&self) -> u64 {
        let p = self.prime();
        let modulus = p.power(self.r()) as i64;
        let mut acc = 0i64;
        for (i, q) in self.pairs.iter().enumerate() {
            acc += q.weight_digit() * p.power(i as u32) as i64;
        }
        acc.rem_euclid(modulus) as u64
    }
}

impl fmt::Display for TupleAJ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, q) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{q}")?;
        }
        Ok(())
    }
}
