use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;

use crate::arith::{FpScalar, Prime};

/// The PBW basis element `Y^(m) * binom(H, n) * X^(m_prime)`.
///
/// Ordering is lexicographic on `(m, n, m_prime)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PbwMonomial {
    pub m: u32,
    pub n: u32,
    pub m_prime: u32,
}

impl PbwMonomial {
    pub const ONE: PbwMonomial = PbwMonomial {
        m: 0,
        n: 0,
        m_prime: 0,
    };

    pub fn new(m: u32, n: u32, m_prime: u32) -> Self {
        PbwMonomial { m, n, m_prime }
    }

    pub fn degree(self) -> i64 {
        self.m_prime as i64 - self.m as i64
    }

    pub fn max_index(self) -> u32 {
        self.m.max(self.n).max(self.m_prime)
    }
}

impl fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::with_capacity(3);
        if self.m > 0 {
            factors.push(format!("Y({})", self.m));
        }
        if self.n > 0 {
            factors.push(format!("H({})", self.n));
        }
        if self.m_prime > 0 {
            factors.push(format!("X({})", self.m_prime));
        }
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join("*"))
        }
    }
}

/// A finitely supported element of the hyperalgebra over `F_p`.
///
/// Zero coefficients are never stored, so derived equality is equality of
/// elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    p: Prime,
    terms: BTreeMap<PbwMonomial, u32>,
}

impl AlgebraElement {
    pub fn zero(p: Prime) -> Self {
        AlgebraElement {
            p,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(p: Prime) -> Self {
        Self::scalar(p, 1)
    }

    pub fn scalar(p: Prime, c: i64) -> Self {
        Self::monomial(p, PbwMonomial::ONE, c)
    }

    pub fn monomial(p: Prime, mono: PbwMonomial, c: i64) -> Self {
        let mut e = Self::zero(p);
        e.add_term(mono, p.reduce(c));
        e
    }

    /// `X^(m)`
    pub fn x(p: Prime, m: u32) -> Self {
        Self::monomial(p, PbwMonomial::new(0, 0, m), 1)
    }

    /// `Y^(m)`
    pub fn y(p: Prime, m: u32) -> Self {
        Self::monomial(p, PbwMonomial::new(m, 0, 0), 1)
    }

    /// `binom(H, n)`
    pub fn h(p: Prime, n: u32) -> Self {
        Self::monomial(p, PbwMonomial::new(0, n, 0), 1)
    }

    pub fn from_terms<I>(p: Prime, terms: I) -> Self
    where
        I: IntoIterator<Item = (PbwMonomial, u32)>,
    {
        let mut e = Self::zero(p);
        for (mono, c) in terms {
            e.add_term(mono, c % p.get());
        }
        e
    }

    pub(crate) fn from_canonical_map(p: Prime, terms: BTreeMap<PbwMonomial, u32>) -> Self {
        debug_assert!(terms.values().all(|&c| c != 0 && c < p.get()));
        AlgebraElement { p, terms }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (PbwMonomial, FpScalar)> + '_ {
        let p = self.p;
        self.terms
            .iter()
            .map(move |(&m, &c)| (m, FpScalar::new(c as i64, p)))
    }

    pub(crate) fn raw_terms(&self) -> &BTreeMap<PbwMonomial, u32> {
        &self.terms
    }

    pub fn coeff(&self, mono: PbwMonomial) -> FpScalar {
        FpScalar::new(self.terms.get(&mono).copied().unwrap_or(0) as i64, self.p)
    }

    /// Adds `c * mono` in place.
    pub fn add_term(&mut self, mono: PbwMonomial, c: u32) {
        if c == 0 {
            return;
        }
        let p = self.p;
        match self.terms.get_mut(&mono) {
            Some(v) => {
                *v = p.add(*v, c);
                if *v == 0 {
                    self.terms.remove(&mono);
                }
            }
            None => {
                self.terms.insert(mono, c);
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &AlgebraElement, c: u32) {
        assert_eq!(self.p, other.p, "mixed-modulus arithmetic");
        let c = c % self.p.get();
        if c == 0 {
            return;
        }
        for (&mono, &v) in &other.terms {
            self.add_term(mono, self.p.mul(v, c));
        }
    }

    pub fn scale(&self, c: FpScalar) -> AlgebraElement {
        assert_eq!(self.p, c.prime(), "mixed-modulus arithmetic");
        self.scale_raw(c.value())
    }

    pub(crate) fn scale_raw(&self, c: u32) -> AlgebraElement {
        let mut e = AlgebraElement::zero(self.p);
        e.add_assign_scaled(self, c);
        e
    }

    /// Smallest `R >= 0` with every index `< p^R`, i.e. the smallest `U_R`
    /// containing this element.
    pub fn level(&self) -> u32 {
        let max = self.terms.keys().map(|m| m.max_index()).max().unwrap_or(0) as u64;
        let mut r = 0;
        while self.p.power(r) <= max {
            r += 1;
        }
        r
    }

    /// Membership in `U_r`.
    pub fn in_u_r(&self, r: u32) -> bool {
        let bound = self.p.power(r);
        self.terms
            .keys()
            .all(|m| (m.max_index() as u64) < bound)
    }

    /// Membership in `U_r^0`.
    pub fn in_u0_r(&self, r: u32) -> bool {
        self.in_u_r(r) && self.terms.keys().all(|m| m.m == 0 && m.m_prime == 0)
    }

    /// Membership in the degree-zero part `A`.
    pub fn in_a(&self) -> bool {
        self.terms.keys().all(|m| m.m == m.m_prime)
    }

    /// Membership in `A_r`.
    pub fn in_a_r(&self, r: u32) -> bool {
        self.in_a() && self.in_u_r(r)
    }

    pub fn degree_components(&self) -> BTreeMap<i64, AlgebraElement> {
        let mut out: BTreeMap<i64, AlgebraElement> = BTreeMap::new();
        for (&mono, &c) in &self.terms {
            out.entry(mono.degree())
                .or_insert_with(|| AlgebraElement::zero(self.p))
                .add_term(mono, c);
        }
        out
    }

    /// The Frobenius endomorphism: divides every index by `p`, killing
    /// monomials with an index not divisible by `p`.
    pub fn fr(&self) -> AlgebraElement {
        let q = self.p.get();
        let mut out = AlgebraElement::zero(self.p);
        for (&mono, &c) in &self.terms {
            if mono.m % q == 0 && mono.n % q == 0 && mono.m_prime % q == 0 {
                out.add_term(PbwMonomial::new(mono.m / q, mono.n / q, mono.m_prime / q), c);
            }
        }
        out
    }

    /// The linear section of [`fr`](Self::fr) multiplying every index by `p`.
    pub fn fr_prime(&self) -> AlgebraElement {
        let q = self.p.get();
        let mut out = AlgebraElement::zero(self.p);
        for (&mono, &c) in &self.terms {
            out.add_term(PbwMonomial::new(mono.m * q, mono.n * q, mono.m_prime * q), c);
        }
        out
    }

    /// Coordinates against an explicit list of monomials. Panics if the
    /// element has support outside the list.
    pub fn coordinates(&self, index: &BTreeMap<PbwMonomial, usize>) -> Vec<u32> {
        let mut v = vec![0u32; index.len()];
        for (mono, &c) in &self.terms {
            let i = *index
                .get(mono)
                .unwrap_or_else(|| panic!("monomial {mono} outside the coordinate index"));
            v[i] = c;
        }
        v
    }
}

/// Canonical text: ` + `-separated terms `c*Y(m)*H(n)*X(m')` in descending
/// lexicographic monomial order, unit coefficients and zero indices elided,
/// `0` for the zero element.
impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mono, &c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (c, *mono == PbwMonomial::ONE) {
                (_, true) => write!(f, "{c}")?,
                (1, false) => write!(f, "{mono}")?,
                (_, false) => write!(f, "{c}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, 1);
        out
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, self.p.get() - 1);
        out
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale_raw(self.p.get() - 1)
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        super::multiply(self, rhs)
    }
}

/// Which subspace a random sample is drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sampling {
    /// `U_r`
    Full,
    /// `A_r`
    DegreeZero,
    /// `U_r^0`
    Cartan,
}

/// A random nonzero element with between 1 and `max_terms` distinct
/// monomials in the chosen subspace at level `r`.
pub fn random_element<R: Rng + ?Sized>(
    rng: &mut R,
    p: Prime,
    r: u32,
    kind: Sampling,
    max_terms: usize,
) -> AlgebraElement {
    let bound = p.power(r) as u32;
    let available = match kind {
        Sampling::Full => (bound as usize).pow(3),
        Sampling::DegreeZero => (bound as usize).pow(2),
        Sampling::Cartan => bound as usize,
    };
    let count = rng.gen_range(1..=max_terms.max(1)).min(available);
    let mut e = AlgebraElement::zero(p);
    while e.len() < count {
        let n = rng.gen_range(0..bound);
        let mono = match kind {
            Sampling::Full => {
                PbwMonomial::new(rng.gen_range(0..bound), n, rng.gen_range(0..bound))
            }
            Sampling::DegreeZero => {
                let m = rng.gen_range(0..bound);
                PbwMonomial::new(m, n, m)
            }
            Sampling::Cartan => PbwMonomial::new(0, n, 0),
        };
        let c = rng.gen_range(1..p.get());
        if e.coeff(mono).is_zero() {
            e.add_term(mono, c);
        }
    }
    e
}

/// The monomial basis of `U_r` (or of one of its named subalgebras) in
/// ascending order.
pub fn basis_monomials(p: Prime, r: u32, kind: Sampling) -> Vec<PbwMonomial> {
    let bound = p.power(r) as u32;
    let mut out = Vec::new();
    match kind {
        Sampling::Full => {
            for m in 0..bound {
                for n in 0..bound {
                    for mp in 0..bound {
                        out.push(PbwMonomial::new(m, n, mp));
                    }
                }
            }
        }
        Sampling::DegreeZero => {
            for m in 0..bound {
                for n in 0..bound {
                    out.push(PbwMonomial::new(m, n, m));
                }
            }
        }
        Sampling::Cartan => out.extend((0..bound).map(|n| PbwMonomial::new(0, n, 0))),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn canonical_text() {
        let f = p(3);
        assert_eq!(AlgebraElement::one(f).to_string(), "1");
        assert_eq!(AlgebraElement::zero(f).to_string(), "0");
        let mut e = AlgebraElement::monomial(f, PbwMonomial::new(1, 0, 1), 1);
        e.add_term(PbwMonomial::new(0, 1, 0), 1);
        assert_eq!(e.to_string(), "Y(1)*X(1) + H(1)");
        e.add_term(PbwMonomial::new(2, 1, 2), 2);
        e.add_term(PbwMonomial::ONE, 2);
        assert_eq!(e.to_string(), "2*Y(2)*H(1)*X(2) + Y(1)*X(1) + H(1) + 2");
    }

    #[test]
    fn degree_components_split() {
        let f = p(5);
        let a = AlgebraElement::monomial(f, PbwMonomial::new(2, 1, 2), 1);
        let comps = a.degree_components();
        assert_eq!(comps.keys().copied().collect::<Vec<_>>(), vec![0]);
        let x3 = AlgebraElement::x(f, 3);
        assert_eq!(x3.degree_components().keys().copied().collect::<Vec<_>>(), vec![3]);
        let sum = &(&a + &x3) + &AlgebraElement::y(f, 1);
        let comps = sum.degree_components();
        assert_eq!(comps.len(), 3);
        let total = comps
            .values()
            .fold(AlgebraElement::zero(f), |acc, c| &acc + c);
        assert_eq!(total, sum);
    }

    #[test]
    fn frobenius_examples() {
        for q in [2u64, 3, 5] {
            let f = p(q);
            let pq = q as u32;
            assert_eq!(AlgebraElement::x(f, pq).fr(), AlgebraElement::x(f, 1));
            assert!(AlgebraElement::x(f, 1).fr().is_zero());
            assert_eq!(AlgebraElement::h(f, pq).fr(), AlgebraElement::h(f, 1));
            let yhx = AlgebraElement::monomial(f, PbwMonomial::new(1, 1, 1), 1);
            assert_eq!(
                yhx.fr_prime(),
                AlgebraElement::monomial(f, PbwMonomial::new(pq, pq, pq), 1)
            );
            assert_eq!(AlgebraElement::one(f).fr_prime(), AlgebraElement::one(f));
        }
    }

    #[test]
    fn membership() {
        let f = p(3);
        let e = AlgebraElement::monomial(f, PbwMonomial::new(2, 8, 2), 1);
        assert!(e.in_a_r(2));
        assert!(!e.in_u_r(1));
        assert!(!e.in_u0_r(2));
        assert!(AlgebraElement::h(f, 4).in_u0_r(2));
        assert_eq!(e.level(), 2);
        assert_eq!(AlgebraElement::one(f).level(), 0);
    }
}
