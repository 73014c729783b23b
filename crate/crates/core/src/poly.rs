//! Univariate polynomials over `F_p` and the specific families used to build
//! the rank-one elements: the square-root product, its single-factor
//! quotients and the Pochhammer-like products indexed by a weight.

use std::fmt;

use crate::arith::Prime;
use crate::hyperalgebra::AlgebraElement;

/// Dense coefficients, lowest degree first, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    p: Prime,
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn new(p: Prime, coeffs: Vec<u32>) -> Self {
        let mut out = Poly {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p.get()).collect(),
        };
        out.trim();
        out
    }

    pub fn zero(p: Prime) -> Self {
        Poly { p, coeffs: vec![] }
    }

    pub fn one(p: Prime) -> Self {
        Poly { p, coeffs: vec![1] }
    }

    /// `x - root`
    pub fn linear(p: Prime, root: u32) -> Self {
        Poly::new(p, vec![p.neg(root % p.get()), 1])
    }

    pub fn from_roots<I: IntoIterator<Item = u32>>(p: Prime, roots: I) -> Self {
        roots
            .into_iter()
            .fold(Poly::one(p), |acc, r| acc.mul(&Poly::linear(p, r)))
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: u32) -> Poly {
        Poly::new(self.p, self.coeffs.iter().map(|&a| self.p.mul(a, c)).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[u32], i: usize| v.get(i).copied().unwrap_or(0);
        Poly::new(
            self.p,
            (0..n)
                .map(|i| self.p.add(get(&self.coeffs, i), get(&other.coeffs, i)))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.p);
        }
        let mut out = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                self.p.mul_add_assign(&mut out[i + j], a, b);
            }
        }
        Poly::new(self.p, out)
    }

    /// Quotient and remainder; the divisor must be nonzero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let p = self.p;
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = p.inv(divisor.coeffs[dd]).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(p), self.clone());
        }
        let mut quot = vec![0u32; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = p.mul(rem[k + dd], lead_inv);
            quot[k] = c;
            if c == 0 {
                continue;
            }
            let nc = p.neg(c);
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                p.mul_add_assign(&mut rem[k + i], nc, d);
            }
        }
        (Poly::new(p, quot), Poly::new(p, rem))
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.div_rem(self).1.is_zero()
    }

    /// `f(x + c)` by Horner's rule.
    pub fn shift(&self, c: u32) -> Poly {
        let p = self.p;
        let step = Poly::new(p, vec![c, 1]);
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(p), |acc, &a| acc.mul(&step).add(&Poly::new(p, vec![a])))
    }

    pub fn eval(&self, x: u32) -> u32 {
        let p = self.p;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &a| p.add(p.mul(acc, x), a))
    }

    /// `f(u)` in the hyperalgebra, by Horner's rule.
    pub fn eval_element(&self, u: &AlgebraElement) -> AlgebraElement {
        assert_eq!(self.p, u.prime(), "mixed-modulus arithmetic");
        let p = self.p;
        let mut acc = AlgebraElement::zero(p);
        for &a in self.coeffs.iter().rev() {
            acc = &acc * u;
            acc.add_assign_scaled(&AlgebraElement::one(p), a);
        }
        acc
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => f.write_str("x")?,
                (1, _) => write!(f, "{c}*x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}

/// `((a + 1) / 2)^2` in `F_p`, `p` odd.
pub fn half_shift_square(a: i64, p: Prime) -> u32 {
    let half = p.inv(2).expect("p is odd");
    let v = p.mul(p.reduce(a + 1), half);
    p.mul(v, v)
}

/// `prod_{i in F_p} (x - i^2)`
pub fn square_product(p: Prime) -> Poly {
    Poly::from_roots(p, (0..p.get()).map(|i| p.mul(i, i)))
}

/// `prod_{i < m} (x - i (i + a + 1))`
pub fn weight_product(a: i64, m: u32, p: Prime) -> Poly {
    Poly::from_roots(
        p,
        (0..m).map(|i| p.mul(p.reduce_u64(i as u64), p.reduce(i as i64 + a + 1))),
    )
}

/// The factor of the square product attached to `j` and the bit `eps`, `p`
/// odd, `0 <= j <= (p-1)/2`.
pub fn selector(j: u32, eps: u8, p: Prime) -> Poly {
    assert!(p.get() % 2 == 1, "selector polynomials need an odd prime");
    let q = p.get();
    let nonzero_squares = (1..q).map(|i| p.mul(i, i));
    match (eps, j) {
        (1, _) => square_product(p).div_rem(&Poly::linear(p, p.mul(j, j))).0,
        (_, 0) => Poly::from_roots(p, nonzero_squares),
        _ => {
            let jj = p.mul(j, j);
            let rest = (1..q).filter(|&i| i != j && i != q - j).map(|i| p.mul(i, i));
            Poly::from_roots(p, rest)
                .mul(&Poly::new(p, vec![0, 2]))
                .mul(&Poly::new(p, vec![jj, 1]))
        }
    }
}
