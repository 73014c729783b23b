//! Named verification checks at a single `(p, r)`.
//!
//! The quick level uses the closed forms only. The full level adds every
//! comparison against actual products and against the operator action.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::Prime;
use crate::blocks::{block_decomposition, check_cap, BlockError, Level};
use crate::eps::EpsVec;
use crate::hyperalgebra::{
    basis_monomials, operator_matrix, random_element, AlgebraElement, Sampling,
};
use crate::idempotents::{
    b1, extract_power_coeffs, leading_index, n_by_division, n_eps, n_tilde, Idempotents, PairAJ,
    TupleAJ,
};
use crate::linalg::Matrix;

/// Random pairs per point in the product comparison.
pub const RANDOM_PRODUCTS: usize = 200;
/// Random samples in the duplicate check.
pub const DUPLICATE_SAMPLES: usize = 100;
/// Points at which the basis operator rank is checked.
pub const FAITHFULNESS_POINTS: [(u32, u32); 3] = [(2, 1), (2, 2), (3, 1)];

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub p: Prime,
    pub r: u32,
    pub level: Level,
    pub seed: u64,
    pub oracle_degree: Option<u32>,
    pub dim_cap: u64,
    /// Run only the check with this name.
    pub only: Option<String>,
}

impl VerifyConfig {
    pub fn new(p: Prime, r: u32, level: Level) -> Self {
        VerifyConfig {
            p,
            r,
            level,
            seed: 0,
            oracle_degree: None,
            dim_cap: crate::blocks::DEFAULT_DIM_CAP,
            only: None,
        }
    }

    fn degree(&self) -> u32 {
        self.oracle_degree
            .unwrap_or_else(|| crate::hyperalgebra::default_degree_bound(self.p, self.r))
    }

    fn repro(&self, name: &str) -> String {
        let mut s = format!(
            "sl2hyper verify --p {} --r {} --level {} --seed {}",
            self.p.get(),
            self.r,
            match self.level {
                Level::Quick => "quick",
                Level::Full => "full",
            },
            self.seed
        );
        if let Some(d) = self.oracle_degree {
            let _ = write!(s, " --oracle-degree {d}");
        }
        let _ = write!(s, " --check {name}");
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub p: u32,
    pub r: u32,
    pub passed: bool,
    pub millis: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub repro: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifySummary {
    pub p: u32,
    pub r: u32,
    pub level: Level,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl VerifySummary {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let _ = write!(
                s,
                "{} {} (p={}, r={})",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.p,
                c.r
            );
            if let Some(d) = &c.detail {
                let _ = write!(s, ": {d}");
            }
            s.push('\n');
            if let Some(cmd) = &c.repro {
                let _ = writeln!(s, "  reproduce: {cmd}");
            }
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        let _ = writeln!(
            s,
            "{} of {} checks passed",
            self.checks.len() - failed,
            self.checks.len()
        );
        s
    }
}

type Outcome = Result<(), String>;

fn ensure(cond: bool, detail: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(detail())
    }
}

/// Names of the checks the given configuration runs, in order.
pub fn check_names(cfg: &VerifyConfig) -> Vec<String> {
    let mut names = vec!["dimension_audit".to_string(), "block_rules".to_string()];
    if cfg.p.get() != 2 {
        names.push("n_tables".to_string());
    }
    if cfg.level == Level::Full {
        for n in [
            "idempotent_system",
            "leading_indices",
            "block_oracle",
            "generator_products",
            "random_products",
            "duplicates",
        ] {
            names.push(n.to_string());
        }
        if FAITHFULNESS_POINTS.contains(&(cfg.p.get(), cfg.r)) {
            names.push("faithfulness".to_string());
        }
    }
    names
}

fn run_check(name: &str, cfg: &VerifyConfig, engine: &Idempotents) -> Outcome {
    let p = cfg.p;
    let r = cfg.r;
    match name {
        "dimension_audit" => {
            let d = block_decomposition(p, r, cfg.dim_cap, Level::Quick).map_err(|e| e.to_string())?;
            let q = p.get() as u64;
            let per_level = if q == 2 { 3 } else { q * (q + 1) / 2 };
            ensure(d.total_dim == d.expected_dim, || {
                format!("block dimensions sum to {} not {}", d.total_dim, d.expected_dim)
            })?;
            ensure(d.blocks.len() as u64 == per_level.pow(r), || {
                format!("{} blocks", d.blocks.len())
            })
        }
        "block_rules" => {
            let d = block_decomposition(p, r, cfg.dim_cap, Level::Quick).map_err(|e| e.to_string())?;
            first_block_failure(&d.blocks)
        }
        "n_tables" => {
            for pair in PairAJ::all(p) {
                for eps in [0u8, 1] {
                    let a = pair.a() as i64;
                    let n = n_by_division(eps, a, pair.j(), p).map_err(|e| e.to_string())?;
                    let nt = n_by_division(eps, -a, pair.j(), p).map_err(|e| e.to_string())?;
                    ensure(n == n_eps(eps, pair) && nt == n_tilde(eps, pair), || {
                        format!("pair {pair} eps {eps}: division gives ({n}, {nt})")
                    })?;
                }
            }
            Ok(())
        }
        "idempotent_system" => {
            let tuples = TupleAJ::all(p, r);
            let es: Vec<_> = tuples.iter().map(|t| engine.e_element(t)).collect();
            let mut total = AlgebraElement::zero(p);
            for (i, e) in es.iter().enumerate() {
                total = &total + &**e;
                for (k, g) in es.iter().enumerate() {
                    let prod = &**e * &**g;
                    let want = if i == k { (**e).clone() } else { AlgebraElement::zero(p) };
                    ensure(prod == want, || format!("E({}) E({})", tuples[i], tuples[k]))?;
                }
            }
            ensure(total == AlgebraElement::one(p), || "sum is not one".to_string())
        }
        "leading_indices" => {
            for pair in PairAJ::all(p) {
                for eps in [0u8, 1] {
                    let (c, ct) = extract_power_coeffs(&b1(eps, pair), pair.a() as i64, p)
                        .map_err(|e| e.to_string())?;
                    let got = (leading_index(&c), leading_index(&ct));
                    let want = (
                        Some(n_eps(eps, pair) as usize),
                        Some(n_tilde(eps, pair) as usize),
                    );
                    ensure(got == want, || format!("pair {pair} eps {eps}: {got:?}"))?;
                }
            }
            Ok(())
        }
        "block_oracle" => {
            let d = block_decomposition(p, r, cfg.dim_cap, Level::Full).map_err(|e| e.to_string())?;
            first_block_failure(&d.blocks)
        }
        "generator_products" => {
            let d = cfg.degree();
            let gens: Vec<AlgebraElement> = (0..r)
                .flat_map(|i| {
                    let k = p.power(i) as u32;
                    [AlgebraElement::x(p, k), AlgebraElement::y(p, k), AlgebraElement::h(p, k)]
                })
                .collect();
            for a in &gens {
                for b in &gens {
                    ensure(oracle_agrees(a, b, d), || format!("{a} * {b}"))?;
                }
            }
            Ok(())
        }
        "random_products" => {
            let d = cfg.degree();
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            for _ in 0..RANDOM_PRODUCTS {
                let a = random_element(&mut rng, p, r, Sampling::Full, 4);
                let b = random_element(&mut rng, p, r, Sampling::Full, 4);
                ensure(oracle_agrees(&a, &b, d), || format!("{a} * {b}"))?;
            }
            Ok(())
        }
        "duplicates" => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let tuples = TupleAJ::all(p, r);
            for _ in 0..DUPLICATE_SAMPLES {
                let t = &tuples[rng.gen_range(0..tuples.len())];
                let eps = EpsVec::new(rng.gen_range(0..1u32 << r), r);
                let free = t.free_mask().mask();
                let other = EpsVec::new((eps.mask() & free) | (rng.gen_range(0..1u32 << r) & !free), r);
                let x = engine.b_element(eps, t).map_err(|e| e.to_string())?;
                let y = engine.b_element(other, t).map_err(|e| e.to_string())?;
                ensure(x == y, || format!("tuple {t}: {eps} and {other} differ"))?;
            }
            Ok(())
        }
        "faithfulness" => {
            let d = cfg.degree();
            let monos = basis_monomials(p, r, Sampling::Full);
            let rows: Vec<Vec<u32>> = monos
                .iter()
                .map(|m| operator_matrix(&AlgebraElement::monomial(p, *m, 1), d).flatten())
                .collect();
            let rank = Matrix::from_rows(p, rows[0].len(), &rows).rank();
            ensure(rank == monos.len(), || {
                format!("basis operators have rank {rank} of {} at degree bound {d}", monos.len())
            })
        }
        other => Err(format!("unknown check {other:?}")),
    }
}

fn oracle_agrees(a: &AlgebraElement, b: &AlgebraElement, d: u32) -> bool {
    operator_matrix(&(a * b), d) == operator_matrix(a, d).compose(&operator_matrix(b, d))
}

fn first_block_failure(blocks: &[crate::blocks::BlockReport]) -> Outcome {
    let mut failures: BTreeMap<&str, Vec<String>> = BTreeMap::new();
    for b in blocks {
        for name in b.failed_checks() {
            failures.entry(name).or_default().push(b.label());
        }
    }
    match failures.into_iter().next() {
        None => Ok(()),
        Some((name, labels)) => Err(format!("{name} fails for block {}", labels.join(" "))),
    }
}

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Cap(#[from] BlockError),
    #[error("unknown check {name:?}; available: {available}")]
    UnknownCheck { name: String, available: String },
}

pub fn run_verify(cfg: &VerifyConfig) -> Result<VerifySummary, VerifyError> {
    check_cap(cfg.p, cfg.r, cfg.dim_cap)?;
    let names = check_names(cfg);
    let selected: Vec<String> = match &cfg.only {
        None => names,
        Some(n) if names.contains(n) => vec![n.clone()],
        Some(n) => {
            return Err(VerifyError::UnknownCheck {
                name: n.clone(),
                available: names.join(", "),
            })
        }
    };
    let engine = Idempotents::shared(cfg.p);
    let checks: Vec<CheckResult> = selected
        .iter()
        .map(|name| {
            let start = Instant::now();
            let outcome = run_check(name, cfg, &engine);
            let millis = start.elapsed().as_millis() as u64;
            CheckResult {
                name: name.clone(),
                p: cfg.p.get(),
                r: cfg.r,
                passed: outcome.is_ok(),
                millis,
                repro: outcome.is_err().then(|| cfg.repro(name)),
                detail: outcome.err(),
            }
        })
        .collect();
    Ok(VerifySummary {
        p: cfg.p.get(),
        r: cfg.r,
        level: cfg.level,
        seed: cfg.seed,
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}
