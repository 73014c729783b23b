//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always printed.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sl2hyper::arith::Prime;
use sl2hyper::blocks::{x_set, BlockAlgebra};
use sl2hyper::eps::EpsVec;
use sl2hyper::hyperalgebra::{
    basis_monomials, default_degree_bound, operator_matrix, random_element, solve_in_span,
    AlgebraElement, PbwMonomial, Sampling,
};
use sl2hyper::idempotents::{b1, mu, n_eps, n_tilde, Idempotents, PairAJ, TupleAJ};
use sl2hyper::linalg::{solve_columns, Matrix, Solution, Subspace};
use sl2hyper::poly::Poly;

const GRID: [(u64, u32); 6] = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)];
const SEED: u64 = 20_240_601;

type Outcome = Result<(), String>;

fn prime(q: u64) -> Prime {
    Prime::new(q).unwrap()
}

fn fail<T>(msg: String) -> Result<T, String> {
    Err(msg)
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        fail(msg())
    }
}

/// Positions whose bit matters: `j != 0` for odd `p`, `a != 1` for `p = 2`.
fn is_free(pair: PairAJ) -> bool {
    if pair.prime().get() == 2 {
        pair.a() != 1
    } else {
        pair.two_j() != 0
    }
}

fn free_members(t: &TupleAJ) -> Vec<EpsVec> {
    let r = t.r();
    EpsVec::all(r)
        .filter(|e| (0..r).all(|i| e.bit(i) == 0 || is_free(t.pair(i))))
        .collect()
}

/// Interval conditions on `(a, j)` with `j = two_j / 2`, doubled to stay
/// in the integers.
fn in_shifted_case(pair: PairAJ) -> bool {
    let (q, a, tj) = (pair.prime().get() as i64, pair.a() as i64, pair.two_j() as i64);
    if a % 2 == 0 {
        q - a < tj && tj < q
    } else {
        tj < a
    }
}

fn criterion_1() -> Outcome {
    for (q, r) in GRID {
        let p = prime(q);
        let eng = Idempotents::shared(p);
        let tuples = TupleAJ::all(p, r);
        let es: Vec<AlgebraElement> = tuples.iter().map(|t| (*eng.e_element(t)).clone()).collect();
        let mut total = AlgebraElement::zero(p);
        for (i, e) in es.iter().enumerate() {
            check(e.in_u_r(r), || format!("p={q} r={r}: E({}) not in U_r", tuples[i]))?;
            total = &total + e;
            for (k, g) in es.iter().enumerate() {
                let prod = e * g;
                let ok = if i == k { prod == *e } else { prod.is_zero() };
                check(ok, || format!("p={q} r={r}: E({}) E({})", tuples[i], tuples[k]))?;
            }
        }
        check(total == AlgebraElement::one(p), || format!("p={q} r={r}: sum is {total}"))?;
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    for (q, r) in GRID {
        let p = prime(q);
        let total: u64 = TupleAJ::all(p, r)
            .iter()
            .map(|t| {
                let w = t.pairs().iter().filter(|&&x| is_free(x)).count();
                assert_eq!(x_set(t).len(), 1 << w);
                1u64 << w
            })
            .sum();
        check(total == q.pow(2 * r), || format!("p={q} r={r}: {total}"))?;
    }
    Ok(())
}

/// `psi_j^(eps)` built from its roots.
fn selector(j: i64, eps: u8, p: Prime) -> Poly {
    let q = p.get() as i64;
    let sq = |i: i64| p.reduce(i * i);
    let units: Vec<i64> = (1..q).collect();
    match (eps, j) {
        (1, _) => {
            let roots: Vec<u32> = (0..q).filter(|&i| sq(i) != sq(j)).map(sq).collect();
            let mut f = Poly::from_roots(p, roots);
            // i and -i share a square, so one copy of j^2 survives
            if j != 0 {
                f = f.mul(&Poly::linear(p, sq(j)));
            }
            f
        }
        (_, 0) => Poly::from_roots(p, units.iter().map(|&i| sq(i))),
        (_, s) => {
            let rest: Vec<u32> = units
                .iter()
                .filter(|&&i| i != s && i != q - s)
                .map(|&i| sq(i))
                .collect();
            Poly::from_roots(p, rest)
                .mul(&Poly::from_roots(p, [0, p.reduce(-s * s)]))
                .scale(2)
        }
    }
}

fn n_by_definition(eps: u8, a: i64, j: i64, p: Prime) -> u32 {
    let inv2 = p.inv(2).unwrap();
    let h = p.mul(p.reduce(a + 1), inv2);
    let target = selector(j, eps, p).shift(p.mul(h, h));
    let mut n = 0u32;
    let mut phi = Poly::one(p);
    loop {
        let root = p.reduce(n as i64 * (n as i64 + a + 1));
        let next = phi.mul(&Poly::linear(p, root));
        if !next.divides(&target) {
            return n;
        }
        phi = next;
        n += 1;
    }
}

fn criterion_3() -> Outcome {
    for q in [3u64, 5, 7] {
        let p = prime(q);
        for pair in PairAJ::all(p) {
            let (a, j) = (pair.a() as i64, pair.two_j() as i64 / 2);
            for eps in [0u8, 1] {
                let n = n_by_definition(eps, a, j, p);
                let nt = n_by_definition(eps, -a, j, p);
                check(n == n_eps(eps, pair), || {
                    format!("p={q} {pair} eps={eps}: n {} vs {n}", n_eps(eps, pair))
                })?;
                check(nt == n_tilde(eps, pair), || {
                    format!("p={q} {pair} eps={eps}: n~ {} vs {nt}", n_tilde(eps, pair))
                })?;
            }
        }
    }
    Ok(())
}

/// Coefficients of `e` against `mu_a U^m V^m` with ordinary powers.
fn power_coefficients(e: &AlgebraElement, a: i64, p: Prime, yx: bool) -> Result<Vec<u32>, String> {
    let q = p.get();
    let m_a = mu(a, 1, p);
    let targets: Vec<AlgebraElement> = (0..q)
        .map(|m| {
            let fact = p.factorial(m as u64);
            let ym = AlgebraElement::y(p, m).scale(p.scalar(fact as i64));
            let xm = AlgebraElement::x(p, m).scale(p.scalar(fact as i64));
            let prod = if yx { &ym * &xm } else { &xm * &ym };
            &m_a * &prod
        })
        .collect();
    let mut index = std::collections::BTreeMap::new();
    for t in targets.iter().chain([e]) {
        for (mono, _) in t.terms() {
            let len = index.len();
            index.entry(mono).or_insert(len);
        }
    }
    let cols: Vec<Vec<u32>> = targets.iter().map(|t| t.coordinates(&index)).collect();
    match solve_columns(p, &cols, &e.coordinates(&index)) {
        Solution::Unique(x) => Ok(x),
        Solution::Particular(_) => fail("targets are dependent".into()),
        Solution::Inconsistent => fail("not in the span".into()),
    }
}

fn criterion_4() -> Outcome {
    for q in [2u64, 3, 5] {
        let p = prime(q);
        for pair in PairAJ::all(p) {
            for eps in [0u8, 1] {
                let b = b1(eps, pair);
                let a = pair.a() as i64;
                let c = power_coefficients(&b, a, p, true)?;
                let ct = power_coefficients(&b, a, p, false)?;
                let lead = |v: &[u32]| v.iter().position(|&x| x != 0);
                check(lead(&c) == Some(n_eps(eps, pair) as usize), || {
                    format!("p={q} {pair} eps={eps}: c = {c:?}")
                })?;
                check(lead(&ct) == Some(n_tilde(eps, pair) as usize), || {
                    format!("p={q} {pair} eps={eps}: c~ = {ct:?}")
                })?;
            }
        }
    }
    Ok(())
}

/// `(alpha, beta)` of the action on position `s`.
fn action_coefficients(pair: PairAJ) -> (u32, u32) {
    let p = pair.prime();
    let (a, tj) = (pair.a() as i64, pair.two_j() as i64);
    let beta = p.reduce(tj * tj);
    let alpha = if p.get() == 2 {
        p.reduce((tj * tj - (a + 1) * (a + 1)) / 4)
    } else {
        let inv4 = p.inv(4).unwrap();
        p.mul(p.reduce(tj * tj - (a + 1) * (a + 1)), inv4)
    };
    (alpha, beta)
}

fn coords(basis: &[AlgebraElement], e: &AlgebraElement) -> Result<Vec<u32>, String> {
    solve_in_span(basis, e)
        .map(|v| v.into_iter().map(|c| c.value()).collect())
        .map_err(|err| err.to_string())
}

fn criterion_5() -> Outcome {
    for (q, r) in GRID {
        let p = prime(q);
        let eng = Idempotents::shared(p);
        for t in TupleAJ::all(p, r) {
            let members = free_members(&t);
            let n = members.len();
            let idx = |e: EpsVec| members.iter().position(|&m| m == e);
            let basis: Vec<AlgebraElement> = members
                .iter()
                .map(|&e| (*eng.b_element(e, &t).unwrap()).clone())
                .collect();
            for (i, &e) in members.iter().enumerate() {
                for (k, &f) in members.iter().enumerate() {
                    let got = coords(&basis, &(&basis[i] * &basis[k]))
                        .map_err(|m| format!("p={q} r={r} {t}: {e}*{f}: {m}"))?;
                    let mut want = vec![0u32; n];
                    if e.mask() & f.mask() == 0 {
                        want[idx(EpsVec::new(e.mask() | f.mask(), r)).unwrap()] = 1;
                    }
                    check(got == want, || format!("p={q} r={r} {t}: {e}*{f} = {got:?}"))?;
                }
                for s in 0..r {
                    let k = p.power(s) as u32;
                    let g = &AlgebraElement::y(p, k) * &AlgebraElement::x(p, k);
                    let got = coords(&basis, &(&g * &basis[i]))
                        .map_err(|m| format!("p={q} r={r} {t}: action {s} on {e}: {m}"))?;
                    let (alpha, beta) = action_coefficients(t.pair(s));
                    let mut want = vec![0u32; n];
                    want[i] = alpha;
                    if e.bit(s) == 0 {
                        match idx(e.with_bit(s, 1)) {
                            Some(j) => want[j] = p.add(want[j], beta),
                            None => check(beta == 0, || format!("{t}: beta {beta} off the set"))?,
                        }
                    }
                    check(got == want, || {
                        format!("p={q} r={r} {t}: action {s} on {e} = {got:?}, rule {want:?}")
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn binomial(n: u32, k: u32) -> usize {
    (0..k as usize).fold(1, |acc, i| acc * (n as usize - i) / (i + 1))
}

fn criterion_6() -> Outcome {
    for (q, r) in GRID {
        let p = prime(q);
        let eng = Idempotents::shared(p);
        for t in TupleAJ::all(p, r) {
            let alg = BlockAlgebra::build(&t, &eng).map_err(|e| e.to_string())?;
            let members = free_members(&t);
            let n = members.len();
            let w = n.trailing_zeros();
            let span = |set: Vec<usize>| Subspace::coordinate(p, n, set);
            let rad_powers = alg.brute_radical_powers();
            for (ri, want_i) in rad_powers.iter().zip(0..) {
                let want = span((0..n).filter(|&k| members[k].weight() >= want_i).collect());
                check(*ri == want, || format!("p={q} r={r} {t}: rad^{want_i}"))?;
            }
            for &e in &members {
                let module = alg.brute_pim(e).map_err(|x| x.to_string())?;
                let above = |k: usize| e.mask() & !members[k].mask() == 0;
                let length = w + 1 - e.weight();
                check(module == span((0..n).filter(|&k| above(k)).collect()), || {
                    format!("p={q} r={r} {t}: module {e}")
                })?;
                let rads = alg.module_radicals(&module, &rad_powers);
                let socs = alg.module_socles(&module, &rad_powers);
                let brute_length = rads.iter().position(|x| x.dim() == 0).unwrap() as u32;
                check(brute_length == length, || {
                    format!("p={q} r={r} {t} {e}: length {brute_length} not {length}")
                })?;
                for i in 0..=length {
                    let want = span(
                        (0..n)
                            .filter(|&k| above(k) && members[k].distance(e) >= i)
                            .collect(),
                    );
                    check(rads[i as usize] == want, || format!("p={q} r={r} {t} {e}: rad^{i}"))?;
                    let want_soc = span(
                        (0..n)
                            .filter(|&k| above(k) && members[k].distance(e) >= length - i)
                            .collect(),
                    );
                    check(socs[i as usize] == want_soc, || {
                        format!("p={q} r={r} {t} {e}: soc^{i}")
                    })?;
                    check(socs[i as usize] == rads[(length - i) as usize], || {
                        format!("p={q} r={r} {t} {e}: not rigid at {i}")
                    })?;
                    if i < length {
                        let layer = rads[i as usize].dim() - rads[i as usize + 1].dim();
                        let want_dim = binomial(w - e.weight(), i);
                        check(layer == want_dim, || {
                            format!("p={q} r={r} {t} {e}: layer {i} has dim {layer}")
                        })?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    for (q, r) in GRID {
        let p = prime(q);
        let eng = Idempotents::shared(p);
        for t in TupleAJ::all(p, r) {
            let alg = BlockAlgebra::build(&t, &eng).map_err(|e| e.to_string())?;
            let members = free_members(&t);
            let n = members.len();
            let top = members.iter().map(|e| e.mask()).fold(0, |a, b| a | b);
            let mut want = Matrix::zeros(p, n, n);
            for (i, e) in members.iter().enumerate() {
                let k = members.iter().position(|f| f.mask() == top & !e.mask()).unwrap();
                want.set(i, k, 1);
            }
            let gram = alg.gram_matrix();
            check(gram == want, || format!("p={q} r={r} {t}: gram matrix"))?;
            check(gram.rank() == n, || format!("p={q} r={r} {t}: degenerate"))?;
        }
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    for (q, r) in [(2u64, 2u32), (3, 1), (3, 2)] {
        let p = prime(q);
        let eng = Idempotents::shared(p);
        for t in TupleAJ::all(p, r) {
            let weight: i64 = t
                .pairs()
                .iter()
                .enumerate()
                .map(|(i, &x)| {
                    let digit = if in_shifted_case(x) { x.a() as i64 - q as i64 } else { x.a() as i64 };
                    digit * (q as i64).pow(i as u32)
                })
                .sum();
            let m = mu(weight, r, p);
            for e in free_members(&t) {
                let b = eng.b_element(e, &t).unwrap();
                check(&m * &*b == *b, || format!("p={q} r={r} {t} {e}: weight {weight}"))?;
            }
        }
    }
    Ok(())
}

fn oracle_agrees(a: &AlgebraElement, b: &AlgebraElement, d: u32) -> bool {
    operator_matrix(&(a * b), d) == operator_matrix(a, d).compose(&operator_matrix(b, d))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for (q, r) in GRID {
        let p = prime(q);
        let d = default_degree_bound(p, r);
        let gens: Vec<AlgebraElement> = (0..r)
            .flat_map(|i| {
                let k = p.power(i) as u32;
                [AlgebraElement::x(p, k), AlgebraElement::y(p, k), AlgebraElement::h(p, k)]
            })
            .collect();
        for a in &gens {
            for b in &gens {
                check(oracle_agrees(a, b, d), || format!("p={q} r={r}: {a} * {b}"))?;
            }
        }
        for _ in 0..200 {
            let a = random_element(&mut rng, p, r, Sampling::Full, 4);
            let b = random_element(&mut rng, p, r, Sampling::Full, 4);
            check(oracle_agrees(&a, &b, d), || format!("p={q} r={r}: {a} * {b}"))?;
        }
    }
    let mut deficits = Vec::new();
    for (q, r) in [(2u64, 1u32), (2, 2), (3, 1)] {
        let p = prime(q);
        let d = default_degree_bound(p, r);
        let monos: Vec<PbwMonomial> = basis_monomials(p, r, Sampling::Full);
        let rows: Vec<Vec<u32>> = monos
            .iter()
            .map(|m| operator_matrix(&AlgebraElement::monomial(p, *m, 1), d).flatten())
            .collect();
        let rank = Matrix::from_rows(p, rows[0].len(), &rows).rank();
        if rank != monos.len() {
            deficits.push(format!("p={q} r={r}: rank {rank} of {}", monos.len()));
        }
    }
    check(deficits.is_empty(), || {
        format!("basis operator matrices are dependent ({})", deficits.join("; "))
    })
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 10);
    for (q, r) in GRID {
        let p = prime(q);
        let eng = Idempotents::shared(p);
        let tuples = TupleAJ::all(p, r);
        for _ in 0..100 {
            let t = &tuples[rng.gen_range(0..tuples.len())];
            let free: u32 = (0..r).filter(|&i| is_free(t.pair(i))).map(|i| 1 << i).sum();
            let e = rng.gen_range(0..1u32 << r);
            let f = (e & free) | (rng.gen_range(0..1u32 << r) & !free);
            let (e, f) = (EpsVec::new(e, r), EpsVec::new(f, r));
            let x = eng.b_element(e, t).map_err(|m| m.to_string())?;
            let y = eng.b_element(f, t).map_err(|m| m.to_string())?;
            check(x == y, || format!("p={q} r={r} {t}: {e} and {f} differ"))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("idempotent system", criterion_1),
        ("dimension audit", criterion_2),
        ("n-table cross-check", criterion_3),
        ("leading coefficient indices", criterion_4),
        ("action and product rules against multiplication", criterion_5),
        ("Loewy structure and rigidity", criterion_6),
        ("symmetric form", criterion_7),
        ("weight fixation", criterion_8),
        ("multiplication oracle and faithfulness", criterion_9),
        ("duplicates agree on the free positions", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(()) => println!("criterion {:>2} PASS  {name} ({ms} ms)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({ms} ms): {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
