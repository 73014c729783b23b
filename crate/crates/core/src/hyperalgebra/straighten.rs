//! Multiplication in the PBW basis by straightening.
//!
//! An element is regrouped as `sum Y^(m) P(H) X^(m')` where each `P` is a
//! polynomial in the basis `binom(H, i)`. A product of two such terms uses
//!
//! * `X^(a) Y^(b) = sum_j Y^(b-j) binom(H - a - b + 2j, j) X^(a-j)`,
//! * `P(H) Y^(b) = Y^(b) P(H - 2b)` and `X^(a) P(H) = P(H - 2a) X^(a)`,
//! * `Y^(a) Y^(b) = binom(a+b, a) Y^(a+b)` (same for `X`),
//! * `binom(H+c, n) = sum_i binom(c, n-i) binom(H, i)`,
//! * a table for `binom(H, m) binom(H, n)` in the `binom(H, k)` basis.
//!
//! Both inputs lie in some `U_R`; every index the rules produce at or beyond
//! `p^R` must carry a coefficient divisible by `p`. That is asserted rather
//! than dropped.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use crate::arith::{Binomials, Prime};

use super::element::{AlgebraElement, PbwMonomial};

/// Per-`(p, R)` tables, built once and shared read-only.
pub(crate) struct StraighteningTables {
    p: Prime,
    bound: usize,
    binom: Binomials,
    /// `binom(H,m) binom(H,n)` as sparse `(k, coeff)` lists, row-major in `(m, n)`.
    hprod: Vec<Vec<(u32, u32)>>,
}

type TableCache = RwLock<HashMap<(u32, u32), Arc<StraighteningTables>>>;

fn cache() -> &'static TableCache {
    static CACHE: OnceLock<TableCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

pub(crate) fn tables(p: Prime, level: u32) -> Arc<StraighteningTables> {
    let key = (p.get(), level);
    if let Some(t) = cache().read().expect("table cache poisoned").get(&key) {
        return Arc::clone(t);
    }
    let built = Arc::new(StraighteningTables::build(p, level));
    let mut w = cache().write().expect("table cache poisoned");
    Arc::clone(w.entry(key).or_insert(built))
}

impl StraighteningTables {
    fn build(p: Prime, level: u32) -> Self {
        let bound = p.power(level) as usize;
        let binom = Binomials::new(p);
        let mut hprod = vec![Vec::new(); bound * bound];
        for m in 0..bound {
            for n in 0..=m {
                let entry = same_variable_product(&binom, m as u64, n as u64, bound as u64);
                hprod[n * bound + m] = entry.clone();
                hprod[m * bound + n] = entry;
            }
        }
        StraighteningTables {
            p,
            bound,
            binom,
            hprod,
        }
    }

    /// `P(H + c)` for `P` given in the `binom(H, i)` basis.
    fn shift(&self, poly: &[u32], c: i64) -> Vec<u32> {
        if c == 0 {
            return poly.to_vec();
        }
        let p = self.p;
        let len = poly.len();
        let bc: Vec<u32> = (0..len as u64).map(|k| self.binom.signed(c, k)).collect();
        let mut out = vec![0u32; len];
        for (n, &coef) in poly.iter().enumerate() {
            if coef == 0 {
                continue;
            }
            for i in 0..=n {
                let b = bc[n - i];
                if b != 0 {
                    p.mul_add_assign(&mut out[i], coef, b);
                }
            }
        }
        out
    }

    /// `binom(H + c, j)` in the `binom(H, i)` basis, padded to `bound`.
    fn shifted_binomial(&self, j: usize, c: i64) -> Vec<u32> {
        let mut out = vec![0u32; self.bound];
        for i in 0..=j {
            out[i] = self.binom.signed(c, (j - i) as u64);
        }
        out
    }

    fn poly_mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let p = self.p;
        let mut out = vec![0u32; self.bound];
        let b_nz: Vec<(usize, u32)> = b
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c))
            .collect();
        for (m, &ca) in a.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for &(n, cb) in &b_nz {
                let cab = p.mul(ca, cb);
                for &(k, v) in &self.hprod[m * self.bound + n] {
                    p.mul_add_assign(&mut out[k as usize], cab, v);
                }
            }
        }
        out
    }
}

/// Expands `binom(x, m) binom(x, n)` in the basis `binom(x, k)` by solving
/// the unitriangular system given by evaluation at `x = 0, 1, ..., m+n`
/// (forward differences). Coefficients at `k >= bound` must vanish mod `p`.
fn same_variable_product(binom: &Binomials, m: u64, n: u64, bound: u64) -> Vec<(u32, u32)> {
    let p = binom.prime();
    let lo = m.max(n);
    let hi = m + n;
    let values: Vec<u32> = (0..=hi)
        .map(|i| p.mul(binom.unsigned(i, m), binom.unsigned(i, n)))
        .collect();
    let mut out = Vec::new();
    for k in lo..=hi {
        let mut c = 0u32;
        for i in lo..=k {
            let term = p.mul(binom.unsigned(k, i), values[i as usize]);
            c = if (k - i) % 2 == 0 {
                p.add(c, term)
            } else {
                p.sub(c, term)
            };
        }
        if k >= bound {
            assert_eq!(
                c, 0,
                "binom(H,{m})*binom(H,{n}) leaves U^0 at binom(H,{k}) mod {p}"
            );
        } else if c != 0 {
            out.push((k as u32, c));
        }
    }
    out
}

type Grouped = Vec<((u32, u32), Vec<u32>)>;

fn group(e: &AlgebraElement, bound: usize) -> Grouped {
    let mut map: BTreeMap<(u32, u32), Vec<u32>> = BTreeMap::new();
    for (mono, &c) in e.raw_terms() {
        map.entry((mono.m, mono.m_prime))
            .or_insert_with(|| vec![0u32; bound])[mono.n as usize] = c;
    }
    map.into_iter().collect()
}

/// The product `a * b` in the PBW basis.
pub fn multiply(a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
    assert_eq!(
        a.prime(),
        b.prime(),
        "mixed-modulus multiplication: F_{} vs F_{}",
        a.prime(),
        b.prime()
    );
    let p = a.prime();
    if a.is_zero() || b.is_zero() {
        return AlgebraElement::zero(p);
    }
    let level = a.level().max(b.level()).max(1);
    let t = tables(p, level);
    let bound = t.bound;
    let ga = group(a, bound);
    let gb = group(b, bound);

    let mut left_shifts: HashMap<(usize, i64), Vec<u32>> = HashMap::new();
    let mut right_shifts: HashMap<(usize, i64), Vec<u32>> = HashMap::new();
    let mut acc: BTreeMap<(u32, u32), Vec<u32>> = BTreeMap::new();

    for (ia, &((m1, a1), ref p1)) in ga.iter().enumerate() {
        for (ib, &((b2, m2p), ref p2)) in gb.iter().enumerate() {
            for j in 0..=a1.min(b2) {
                let yb = b2 - j;
                let xa = a1 - j;
                let ytop = m1 + yb;
                let xtop = xa + m2p;
                let cy = t.binom.unsigned(ytop as u64, m1 as u64);
                let cx = t.binom.unsigned(xtop as u64, xa as u64);
                if ytop as usize >= bound || xtop as usize >= bound {
                    assert!(
                        cy == 0 || cx == 0,
                        "divided-power product leaves U_{level} with a nonzero coefficient"
                    );
                    continue;
                }
                if cy == 0 || cx == 0 {
                    continue;
                }
                let left = left_shifts
                    .entry((ia, -2 * yb as i64))
                    .or_insert_with(|| t.shift(p1, -2 * yb as i64));
                let q = t.shifted_binomial(j as usize, 2 * j as i64 - a1 as i64 - b2 as i64);
                let mid = t.poly_mul(left, &q);
                let right = right_shifts
                    .entry((ib, -2 * xa as i64))
                    .or_insert_with(|| t.shift(p2, -2 * xa as i64));
                let h = t.poly_mul(&mid, right);
                let coef = p.mul(cy, cx);
                let slot = acc.entry((ytop, xtop)).or_insert_with(|| vec![0u32; bound]);
                for (k, &v) in h.iter().enumerate() {
                    if v != 0 {
                        p.mul_add_assign(&mut slot[k], coef, v);
                    }
                }
            }
        }
    }

    let mut terms = BTreeMap::new();
    for ((m, mp), poly) in acc {
        for (n, c) in poly.into_iter().enumerate() {
            if c != 0 {
                terms.insert(PbwMonomial::new(m, n as u32, mp), c);
            }
        }
    }
    AlgebraElement::from_canonical_map(p, terms)
}
