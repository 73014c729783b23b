//! Per-block reports: the combinatorial description, and at the full level
//! every brute-force comparison, collected as named checks.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::Prime;
use crate::eps::EpsVec;
use crate::idempotents::{Case, Idempotents, TupleAJ};
use crate::linalg::{Matrix, Subspace};

use super::algebra::BlockAlgebra;
use super::combinatorics::{
    loewy_length, loewy_series, pim_basis, pim_radical, product, radical_power, socle_series,
    x_set, LoewySeries, XSet,
};
use super::BlockError;

pub const DEFAULT_DIM_CAP: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    /// Closed-form rules only.
    Quick,
    /// Closed forms compared against products of the actual elements.
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub a: u32,
    pub two_j: u32,
    pub case: Case,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PimReport {
    pub eps: String,
    pub dim: u64,
    pub loewy: Vec<u64>,
    pub rigid: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockReport {
    pub p: u32,
    pub r: u32,
    pub tuple: Vec<PairReport>,
    pub w: u32,
    pub dim: u64,
    pub weight_index: u64,
    pub pims: Vec<PimReport>,
    pub symmetric: bool,
    pub checks: BTreeMap<String, bool>,
}

impl BlockReport {
    pub fn label(&self) -> String {
        self.tuple
            .iter()
            .map(|t| format!("{}:{}", t.a, t.two_j))
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn passed(&self) -> bool {
        self.checks.values().all(|&v| v)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &str> {
        self.checks
            .iter()
            .filter(|(_, &v)| !v)
            .map(|(k, _)| k.as_str())
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let cases: Vec<String> = self.tuple.iter().map(|t| t.case.to_string()).collect();
        let _ = writeln!(
            s,
            "block {}  cases {}  w {}  dim {}  weight {}  symmetric {}",
            self.label(),
            cases.join(""),
            self.w,
            self.dim,
            self.weight_index,
            self.symmetric
        );
        for pim in &self.pims {
            let layers: Vec<String> = pim.loewy.iter().map(u64::to_string).collect();
            let _ = writeln!(
                s,
                "  pim {}  dim {}  layers {}  rigid {}",
                pim.eps,
                pim.dim,
                layers.join(" "),
                pim.rigid
            );
        }
        let failed: Vec<&str> = self.failed_checks().collect();
        if failed.is_empty() {
            let _ = writeln!(s, "  checks ok ({})", self.checks.len());
        } else {
            let _ = writeln!(s, "  checks FAILED: {}", failed.join(", "));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PimDetail {
    pub p: u32,
    pub r: u32,
    pub tuple: String,
    pub eps: String,
    pub w: u32,
    pub dim: u64,
    pub basis: Vec<String>,
    pub loewy_length: u32,
    pub radical_layers: LoewySeries,
    pub socle_layers: LoewySeries,
    pub rigid: bool,
    pub checks: BTreeMap<String, bool>,
}

impl PimDetail {
    pub fn passed(&self) -> bool {
        self.checks.values().all(|&v| v)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "pim {} of block {}  w {}  dim {}  loewy length {}  rigid {}",
            self.eps, self.tuple, self.w, self.dim, self.loewy_length, self.rigid
        );
        let _ = writeln!(s, "  basis {}", self.basis.join(" "));
        for (name, series) in [("rad", &self.radical_layers), ("soc", &self.socle_layers)] {
            for (i, layer) in series.layers.iter().enumerate() {
                let _ = writeln!(
                    s,
                    "  {name} layer {i}: {} x S  [{}]",
                    layer.multiplicity,
                    layer.members.join(" ")
                );
            }
        }
        for (k, v) in &self.checks {
            let _ = writeln!(s, "  {k}: {}", if *v { "ok" } else { "FAILED" });
        }
        s
    }

    /// One digraph on the basis of the module: an edge `t -> t + e_s` for
    /// each transition of the `Y^(p^s) X^(p^s)` action.
    pub fn to_dot(&self, xset: &XSet) -> String {
        let eps: EpsVec = self.eps.parse().expect("rendered by this module");
        pim_dot(&self.tuple, eps, xset)
    }
}

fn pim_dot(tuple: &str, eps: EpsVec, xset: &XSet) -> String {
    let basis = pim_basis(eps, xset).expect("member of the block");
    let mut s = String::new();
    let _ = writeln!(s, "digraph \"pim {tuple} {eps}\" {{");
    for t in &basis {
        let _ = writeln!(s, "  \"{t}\" [label=\"{t}\\nW={}\"];", t.weight());
    }
    for t in &basis {
        for pos in 0..t.len() {
            if t.bit(pos) == 0 && xset.top().bit(pos) == 1 {
                let _ = writeln!(s, "  \"{t}\" -> \"{}\" [label=\"{pos}\"];", t.with_bit(pos, 1));
            }
        }
    }
    s.push_str("}\n");
    s
}

/// Refuses `(p, r)` when `dim A_r = p^(2r)` exceeds `cap`.
pub fn check_cap(p: Prime, r: u32, cap: u64) -> Result<(), BlockError> {
    let dim = (p.get() as u128).checked_pow(2 * r).unwrap_or(u128::MAX);
    if dim > cap as u128 {
        return Err(BlockError::CapExceeded {
            p: p.get(),
            r,
            dim,
            cap,
        });
    }
    Ok(())
}

fn span_of(xset: &XSet, set: &[EpsVec]) -> Subspace {
    Subspace::coordinate(xset.tuple().prime(), xset.len(), xset.indices(set))
}

/// `soc^i` of a module from the product rule alone: the members killed by
/// every member of `rad^i`.
fn rule_socle(i: u32, eps: EpsVec, xset: &XSet) -> Result<Vec<EpsVec>, BlockError> {
    let rad = radical_power(i, xset);
    Ok(pim_basis(eps, xset)?
        .into_iter()
        .filter(|&t| rad.iter().all(|&q| product(q, t).is_none()))
        .collect())
}

fn rule_rigid(eps: EpsVec, xset: &XSet) -> Result<bool, BlockError> {
    let length = loewy_length(eps, xset);
    for i in 0..=length {
        if rule_socle(i, eps, xset)? != pim_radical(length - i, eps, xset)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn rule_gram(xset: &XSet) -> Matrix {
    let n = xset.len();
    let mut g = Matrix::zeros(xset.tuple().prime(), n, n);
    for (i, &a) in xset.members().iter().enumerate() {
        for (k, &b) in xset.members().iter().enumerate() {
            if product(a, b) == Some(xset.top()) {
                g.set(i, k, 1);
            }
        }
    }
    g
}

fn complement_permutation(xset: &XSet) -> Matrix {
    let n = xset.len();
    let mut g = Matrix::zeros(xset.tuple().prime(), n, n);
    for (i, &e) in xset.members().iter().enumerate() {
        g.set(i, xset.index_of(xset.top().minus(e)).expect("member"), 1);
    }
    g
}

fn binomial(n: u32, k: u32) -> u64 {
    (0..k as u64).fold(1, |acc, i| acc * (n as u64 - i) / (i + 1))
}

struct BruteBlock {
    algebra: BlockAlgebra,
    rad_powers: Vec<Subspace>,
}

impl BruteBlock {
    fn new(tuple: &TupleAJ, engine: &Idempotents) -> Result<Self, BlockError> {
        let algebra = BlockAlgebra::build(tuple, engine)?;
        let rad_powers = algebra.brute_radical_powers();
        Ok(BruteBlock {
            algebra,
            rad_powers,
        })
    }

    /// Returns `(module matches, radical series matches, socle series
    /// matches, rigid)` for the module generated by `eps`.
    fn pim_checks(&self, eps: EpsVec) -> Result<[bool; 4], BlockError> {
        let xset = self.algebra.xset();
        let module = self.algebra.brute_pim(eps)?;
        let basis_ok = module == span_of(xset, &pim_basis(eps, xset)?);
        let length = loewy_length(eps, xset);
        let rads = self.algebra.module_radicals(&module, &self.rad_powers);
        let socs = self.algebra.module_socles(&module, &self.rad_powers);
        let mut rad_ok = true;
        let mut soc_ok = true;
        let mut rigid = true;
        for i in 0..=length {
            let expected_rad = span_of(xset, &pim_radical(i, eps, xset)?);
            rad_ok &= rads[i as usize] == expected_rad;
            let expected_soc = span_of(xset, &pim_radical(length - i, eps, xset)?);
            soc_ok &= socs[i as usize] == expected_soc;
            rigid &= socs[i as usize] == rads[(length - i) as usize];
        }
        Ok([basis_ok, rad_ok, soc_ok, rigid])
    }
}

/// Report for one block. At the full level every closed-form statement is
/// also checked against products of the actual elements.
pub fn block_report(
    tuple: &TupleAJ,
    engine: &Idempotents,
    level: Level,
) -> Result<BlockReport, BlockError> {
    let xset = x_set(tuple);
    let w = xset.w();
    let mut checks = BTreeMap::new();
    checks.insert("basis_size".to_string(), xset.len() as u64 == 1 << w);
    let dims_ok = xset.members().iter().all(|&e| {
        let s = loewy_series(e, &xset).expect("member");
        let want: Vec<u64> = (0..=w - e.weight()).map(|i| binomial(w - e.weight(), i)).collect();
        s.dims() == want
    });
    checks.insert("layer_dims".to_string(), dims_ok);
    let rule_symmetric = rule_gram(&xset) == complement_permutation(&xset);
    let mut rule_rigidity = Vec::with_capacity(xset.len());
    for &e in xset.members() {
        rule_rigidity.push(rule_rigid(e, &xset)?);
    }
    checks.insert("rule_rigid".to_string(), rule_rigidity.iter().all(|&b| b));
    checks.insert("rule_symmetric".to_string(), rule_symmetric);

    let mut symmetric = rule_symmetric;
    let mut rigidity = rule_rigidity;
    if level == Level::Full {
        let brute = BruteBlock::new(tuple, engine)?;
        let alg = &brute.algebra;
        let n = xset.len();
        checks.insert("independent".to_string(), true);
        checks.insert("product_rule".to_string(), alg.product_rule_holds());
        checks.insert("commutative".to_string(), alg.is_commutative());
        checks.insert("action_rule".to_string(), alg.action_rule_holds()?);
        checks.insert("weight_fixed".to_string(), alg.weight_is_fixed());
        let rad = alg.brute_radical();
        checks.insert(
            "radical".to_string(),
            rad == span_of(&xset, &radical_power(1, &xset)),
        );
        checks.insert("simple_head".to_string(), rad.dim() + 1 == n);
        let powers_ok = (0..=w + 1).all(|i| {
            brute.rad_powers[i as usize] == span_of(&xset, &radical_power(i, &xset))
        });
        checks.insert(
            "radical_powers".to_string(),
            powers_ok && brute.rad_powers[(w + 1) as usize].dim() == 0,
        );
        let mut all = [true; 4];
        rigidity.clear();
        for &e in xset.members() {
            let c = brute.pim_checks(e)?;
            for (acc, v) in all.iter_mut().zip(c) {
                *acc &= v;
            }
            rigidity.push(c[3]);
        }
        checks.insert("pim_span".to_string(), all[0]);
        checks.insert("pim_radicals".to_string(), all[1]);
        checks.insert("pim_socles".to_string(), all[2]);
        checks.insert("rigid".to_string(), all[3]);
        let gram = alg.gram_matrix();
        symmetric = gram == alg.complement_pairing() && gram.rank() == n;
        checks.insert("symmetric".to_string(), symmetric);
    }

    let pims = xset
        .members()
        .iter()
        .zip(&rigidity)
        .map(|(&e, &rigid)| {
            let series = loewy_series(e, &xset).expect("member");
            PimReport {
                eps: e.to_string(),
                dim: 1 << (w - e.weight()),
                loewy: series.dims(),
                rigid,
            }
        })
        .collect();
    Ok(BlockReport {
        p: tuple.prime().get(),
        r: tuple.r(),
        tuple: tuple
            .pairs()
            .iter()
            .map(|q| PairReport {
                a: q.a(),
                two_j: q.two_j(),
                case: q.case(),
            })
            .collect(),
        w,
        dim: xset.len() as u64,
        weight_index: tuple.weight_index(),
        pims,
        symmetric,
        checks,
    })
}

/// Report for the module generated by one basis element of a block.
pub fn pim_report(
    tuple: &TupleAJ,
    eps: EpsVec,
    engine: &Idempotents,
    level: Level,
) -> Result<PimDetail, BlockError> {
    let xset = x_set(tuple);
    xset.check(eps)?;
    let basis = pim_basis(eps, &xset)?;
    let mut checks = BTreeMap::new();
    let mut rigid = rule_rigid(eps, &xset)?;
    checks.insert("rule_rigid".to_string(), rigid);
    let soc1 = rule_socle(1, eps, &xset)?;
    checks.insert("rule_simple_socle".to_string(), soc1 == vec![xset.top()]);
    if level == Level::Full {
        let brute = BruteBlock::new(tuple, engine)?;
        let [basis_ok, rad_ok, soc_ok, brute_rigid] = brute.pim_checks(eps)?;
        checks.insert("pim_span".to_string(), basis_ok);
        checks.insert("pim_radicals".to_string(), rad_ok);
        checks.insert("pim_socles".to_string(), soc_ok);
        checks.insert("rigid".to_string(), brute_rigid);
        rigid = brute_rigid;
    }
    Ok(PimDetail {
        p: tuple.prime().get(),
        r: tuple.r(),
        tuple: tuple.to_string(),
        eps: eps.to_string(),
        w: xset.w(),
        dim: basis.len() as u64,
        basis: basis.iter().map(|t| t.to_string()).collect(),
        loewy_length: loewy_length(eps, &xset),
        radical_layers: loewy_series(eps, &xset)?,
        socle_layers: socle_series(eps, &xset)?,
        rigid,
        checks,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub p: u32,
    pub r: u32,
    pub blocks: Vec<BlockReport>,
    /// Sum of the block dimensions.
    pub total_dim: u64,
    /// `p^(2r)`.
    pub expected_dim: u64,
}

impl Decomposition {
    pub fn passed(&self) -> bool {
        self.total_dim == self.expected_dim && self.blocks.iter().all(BlockReport::passed)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for b in &self.blocks {
            s.push_str(&b.to_text());
        }
        let _ = writeln!(
            s,
            "{} blocks, total dimension {} of {}",
            self.blocks.len(),
            self.total_dim,
            self.expected_dim
        );
        s
    }

    /// One digraph per block, drawn on the module generated by the zero
    /// vector, which contains every other module of the block.
    pub fn to_dot(&self, p: Prime) -> String {
        let mut s = String::new();
        for b in &self.blocks {
            let tuple = TupleAJ::parse(p, &b.label()).expect("rendered by this module");
            let xset = x_set(&tuple);
            s.push_str(&pim_dot(&b.label(), EpsVec::zero(tuple.r()), &xset));
        }
        s
    }
}

/// Every block of `A_r`, in lexicographic tuple order.
pub fn block_decomposition(
    p: Prime,
    r: u32,
    cap: u64,
    level: Level,
) -> Result<Decomposition, BlockError> {
    check_cap(p, r, cap)?;
    let engine = Idempotents::shared(p);
    let blocks = TupleAJ::all(p, r)
        .par_iter()
        .map(|t| block_report(t, &engine, level))
        .collect::<Result<Vec<_>, _>>()?;
    let total_dim = blocks.iter().map(|b| b.dim).sum();
    Ok(Decomposition {
        p: p.get(),
        r,
        blocks,
        total_dim,
        expected_dim: p.power(2 * r),
    })
}
