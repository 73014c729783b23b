use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::arith::{Binomials, FpScalar, Prime};
use crate::eps::EpsVec;
use crate::hyperalgebra::{
    solve_in_span, x_power, y_power, AlgebraElement, PbwMonomial,
};
use crate::poly::{half_shift_square, selector};

use super::pair::{PairAJ, TupleAJ};
use super::IdempotentError;

/// `binom(H - a - 1, p^r - 1)` in the `binom(H, i)` basis, i.e. the
/// projector onto weight `a mod p^r` inside the Cartan part.
pub fn mu(a: i64, r: u32, p: Prime) -> AlgebraElement {
    let top = p.power(r);
    let b = Binomials::new(p);
    let a = a.rem_euclid(top as i64);
    let terms = (0..top).map(|i| {
        let c = b.signed(-a - 1, top - 1 - i);
        (PbwMonomial::new(0, i as u32, 0), c)
    });
    AlgebraElement::from_terms(p, terms)
}

/// `mu_a * Y * X`
fn weighted_yx(a: i64, p: Prime) -> AlgebraElement {
    &mu(a, 1, p) * &(&AlgebraElement::y(p, 1) * &AlgebraElement::x(p, 1))
}

/// `mu_a * X * Y`
fn weighted_xy(a: i64, p: Prime) -> AlgebraElement {
    &mu(a, 1, p) * &(&AlgebraElement::x(p, 1) * &AlgebraElement::y(p, 1))
}

/// The rank-one element of `A_1` attached to `(eps, pair)`.
pub fn b1(eps: u8, pair: PairAJ) -> AlgebraElement {
    let p = pair.prime();
    let a = pair.a() as i64;
    let m = mu(a, 1, p);
    if p.get() == 2 {
        let yx = weighted_yx(a, p);
        return match (pair.a(), eps) {
            (0, 0) => m,
            (0, _) => yx,
            _ if pair.two_j() == 0 => yx,
            _ => &yx + &m,
        };
    }
    let mut u = weighted_yx(a, p);
    u.add_assign_scaled(&AlgebraElement::one(p), half_shift_square(a, p));
    &selector(pair.j(), eps, p).eval_element(&u) * &m
}

/// Same element through the `XY` form, for odd `p`.
pub fn b1_via_xy(eps: u8, pair: PairAJ) -> AlgebraElement {
    let p = pair.prime();
    assert!(p.get() != 2, "the XY form is stated for odd primes");
    let a = pair.a() as i64;
    let mut u = weighted_xy(a, p);
    u.add_assign_scaled(&AlgebraElement::one(p), half_shift_square(a - 2, p));
    &selector(pair.j(), eps, p).eval_element(&u) * &mu(a, 1, p)
}

/// Coordinates of `e` against `mu_a Y^m X^m` and against `mu_a X^m Y^m`,
/// `m = 0..p`, with ordinary (not divided) powers.
pub fn extract_power_coeffs(
    e: &AlgebraElement,
    a: i64,
    p: Prime,
) -> Result<(Vec<FpScalar>, Vec<FpScalar>), IdempotentError> {
    let m = mu(a, 1, p);
    let q = p.get();
    let yx: Vec<_> = (0..q)
        .map(|k| &m * &(&y_power(p, k) * &x_power(p, k)))
        .collect();
    let xy: Vec<_> = (0..q)
        .map(|k| &m * &(&x_power(p, k) * &y_power(p, k)))
        .collect();
    let c = solve_in_span(&yx, e).map_err(|err| IdempotentError::Extraction(err.to_string()))?;
    let ct = solve_in_span(&xy, e).map_err(|err| IdempotentError::Extraction(err.to_string()))?;
    Ok((c, ct))
}

/// Index of the first nonzero coefficient.
pub fn leading_index(c: &[FpScalar]) -> Option<usize> {
    c.iter().position(|x| !x.is_zero())
}

/// Memoized constructions for a single prime. Entries are computed on first
/// use and never change afterwards.
pub struct Idempotents {
    p: Prime,
    /// `sum_m c_m mu_a Y^m X^(m - s)` for shifted pairs, `b1` otherwise.
    left_factor: RwLock<HashMap<(PairAJ, u8), Arc<AlgebraElement>>>,
    elements: RwLock<HashMap<(Vec<PairAJ>, EpsVec), Arc<AlgebraElement>>>,
}

impl Idempotents {
    pub fn new(p: Prime) -> Self {
        Idempotents {
            p,
            left_factor: RwLock::new(HashMap::new()),
            elements: RwLock::new(HashMap::new()),
        }
    }

    /// Process-wide instance for `p`.
    pub fn shared(p: Prime) -> Arc<Idempotents> {
        type Registry = RwLock<HashMap<u32, Arc<Idempotents>>>;
        static REGISTRY: OnceLock<Registry> = OnceLock::new();
        let reg = REGISTRY.get_or_init(|| RwLock::new(HashMap::new()));
        if let Some(e) = reg.read().expect("registry poisoned").get(&p.get()) {
            return Arc::clone(e);
        }
        let mut w = reg.write().expect("registry poisoned");
        Arc::clone(w.entry(p.get()).or_insert_with(|| Arc::new(Idempotents::new(p))))
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    fn left(&self, eps: u8, pair: PairAJ) -> Arc<AlgebraElement> {
        let key = (pair, eps);
        if let Some(e) = self.left_factor.read().expect("cache poisoned").get(&key) {
            return Arc::clone(e);
        }
        let built = Arc::new(self.build_left(eps, pair));
        let mut w = self.left_factor.write().expect("cache poisoned");
        Arc::clone(w.entry(key).or_insert(built))
    }

    fn build_left(&self, eps: u8, pair: PairAJ) -> AlgebraElement {
        let p = self.p;
        let b = b1(eps, pair);
        let Ok(s) = pair.shift() else {
            return b;
        };
        let a = pair.a() as i64;
        let (c, _) = extract_power_coeffs(&b, a, p)
            .expect("rank-one elements are combinations of mu_a Y^m X^m");
        let m = mu(a, 1, p);
        let mut sum = AlgebraElement::zero(p);
        for (k, ck) in c.iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            let k = k as u32;
            assert!(k >= s, "leading index below the shift for {pair}");
            let term = &m * &(&y_power(p, k) * &x_power(p, k - s));
            sum.add_assign_scaled(&term, ck.value());
        }
        sum
    }

    /// The lift of `z` along `(eps, pair)`: `Fr'(z) b1` in the unshifted
    /// cases, `sum_m c_m mu_a Y^m X^(m-s) Fr'(z) X^s` in the shifted ones.
    pub fn z_map(&self, eps: u8, z: &AlgebraElement, pair: PairAJ) -> AlgebraElement {
        assert_eq!(z.prime(), self.p, "mixed-modulus arithmetic");
        let left = self.left(eps, pair);
        let lifted = z.fr_prime();
        match pair.shift() {
            Ok(s) => &(&*left * &lifted) * &x_power(self.p, s),
            Err(_) => &lifted * &*left,
        }
    }

    /// The recursively lifted element indexed by `eps` and `tuple`.
    pub fn b_element(
        &self,
        eps: EpsVec,
        tuple: &TupleAJ,
    ) -> Result<Arc<AlgebraElement>, IdempotentError> {
        if eps.len() != tuple.r() {
            return Err(IdempotentError::LengthMismatch {
                eps: eps.len(),
                r: tuple.r(),
            });
        }
        if tuple.prime() != self.p {
            return Err(IdempotentError::Parse("tuple over a different prime".into()));
        }
        Ok(self.element_unchecked(eps, tuple.pairs()))
    }

    fn element_unchecked(&self, eps: EpsVec, pairs: &[PairAJ]) -> Arc<AlgebraElement> {
        let key = (pairs.to_vec(), eps);
        if let Some(e) = self.elements.read().expect("cache poisoned").get(&key) {
            return Arc::clone(e);
        }
        let head = pairs[0];
        let built = if pairs.len() == 1 {
            b1(eps.bit(0), head)
        } else {
            let inner = self.element_unchecked(eps.tail(1), &pairs[1..]);
            self.z_map(eps.bit(0), &inner, head)
        };
        let built = Arc::new(built);
        let mut w = self.elements.write().expect("cache poisoned");
        Arc::clone(w.entry(key).or_insert(built))
    }

    /// The block idempotent of `tuple`: all bits zero.
    pub fn e_element(&self, tuple: &TupleAJ) -> Arc<AlgebraElement> {
        self.element_unchecked(EpsVec::zero(tuple.r()), tuple.pairs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn mu_at_two() {
        let f = p(2);
        // 1 + binom(H, 1)
        assert_eq!(mu(0, 1, f).to_string(), "H(1) + 1");
        let targets = [AlgebraElement::one(f), AlgebraElement::h(f, 1)];
        let c = solve_in_span(&targets, &mu(0, 1, f)).unwrap();
        assert_eq!(c.iter().map(|x| x.value()).collect::<Vec<_>>(), vec![1, 1]);
    }

    #[test]
    fn mu_is_a_weight_projector() {
        for (q, r) in [(2u64, 1u32), (2, 2), (3, 1), (3, 2), (5, 1)] {
            let f = p(q);
            let top = f.power(r) as i64;
            let mut total = AlgebraElement::zero(f);
            for a in 0..top {
                let ma = mu(a, r, f);
                total = &total + &ma;
                for n in 0..top as u32 {
                    let lhs = &AlgebraElement::h(f, n) * &ma;
                    let c = crate::arith::binom_mod_p(a, n as u64, f);
                    assert_eq!(lhs, ma.scale(c));
                }
                for b in 0..top {
                    let prod = &ma * &mu(b, r, f);
                    if a == b {
                        assert_eq!(prod, ma);
                    } else {
                        assert!(prod.is_zero());
                    }
                }
                assert_eq!(mu(a + top, r, f), ma);
            }
            assert_eq!(total, AlgebraElement::one(f));
        }
    }

    #[test]
    fn even_prime_rank_one_elements() {
        let f = p(2);
        let yx = &AlgebraElement::y(f, 1) * &AlgebraElement::x(f, 1);
        let xy = &AlgebraElement::x(f, 1) * &AlgebraElement::y(f, 1);
        let m1 = mu(1, 1, f);
        let q10 = PairAJ::new(f, 1, 0).unwrap();
        let q11 = PairAJ::new(f, 1, 2).unwrap();
        assert_eq!(b1(0, q10), &m1 * &yx);
        assert_eq!(b1(0, q10), &(&m1 * &xy) + &m1);
        assert_eq!(b1(1, q11), &m1 * &xy);
        let q0 = PairAJ::new(f, 0, 1).unwrap();
        assert_eq!(b1(1, q0), &mu(0, 1, f) * &xy);
    }

    #[test]
    fn two_forms_agree_and_free_bits_matter() {
        for q in [3u64, 5, 7] {
            let f = p(q);
            for pair in PairAJ::all(f) {
                for eps in [0, 1] {
                    assert_eq!(b1(eps, pair), b1_via_xy(eps, pair), "p={q} {pair} eps={eps}");
                }
                if pair.j() == 0 {
                    assert_eq!(b1(0, pair), b1(1, pair));
                } else {
                    assert_ne!(b1(0, pair), b1(1, pair));
                }
            }
        }
    }

    #[test]
    fn first_level_idempotents_split_unity() {
        for q in [2u64, 3, 5, 7] {
            let f = p(q);
            let es: Vec<_> = PairAJ::all(f).into_iter().map(|q| b1(0, q)).collect();
            let mut total = AlgebraElement::zero(f);
            for (i, e) in es.iter().enumerate() {
                assert!(e.in_a_r(1));
                total = &total + e;
                for (k, g) in es.iter().enumerate() {
                    let prod = e * g;
                    if i == k {
                        assert_eq!(&prod, e);
                    } else {
                        assert!(prod.is_zero());
                    }
                }
            }
            assert_eq!(total, AlgebraElement::one(f));
        }
    }

    #[test]
    fn leading_indices_match_tables() {
        for q in [2u64, 3, 5] {
            let f = p(q);
            for pair in PairAJ::all(f) {
                for eps in [0, 1] {
                    let (c, ct) = extract_power_coeffs(&b1(eps, pair), pair.a() as i64, f).unwrap();
                    assert_eq!(leading_index(&c), Some(super::super::n_eps(eps, pair) as usize));
                    assert_eq!(leading_index(&ct), Some(super::super::n_tilde(eps, pair) as usize));
                }
            }
        }
    }

    #[test]
    fn lift_of_unity_is_the_rank_one_element() {
        for q in [2u64, 3, 5] {
            let f = p(q);
            let eng = Idempotents::new(f);
            for pair in PairAJ::all(f) {
                for eps in [0, 1] {
                    assert_eq!(eng.z_map(eps, &AlgebraElement::one(f), pair), b1(eps, pair));
                }
            }
        }
    }
}
