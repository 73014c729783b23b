//! A block realized inside `A_r`: the lifted elements, their structure
//! constants obtained from real products, and linear-algebra computations
//! of radicals, socles and the trace form that do not use any closed form.

use std::sync::Arc;

use crate::arith::Prime;
use crate::eps::EpsVec;
use crate::hyperalgebra::{
    basis_monomials, linearly_independent, solve_in_span, AlgebraElement, Sampling, SpanError,
};
use crate::idempotents::{mu, Idempotents, TupleAJ};
use crate::linalg::{Matrix, Subspace};

use super::combinatorics::{x_set, yx_action, XSet};
use super::BlockError;

pub struct BlockAlgebra {
    xset: XSet,
    elements: Vec<Arc<AlgebraElement>>,
    /// `table[i][k]` holds the coordinates of `B_i B_k`.
    table: Vec<Vec<Vec<u32>>>,
}

impl BlockAlgebra {
    /// Builds the lifted basis and its structure constants. Fails when the
    /// basis is dependent or a product leaves its span.
    pub fn build(tuple: &TupleAJ, engine: &Idempotents) -> Result<Self, BlockError> {
        let xset = x_set(tuple);
        let elements = xset
            .members()
            .iter()
            .map(|&e| engine.b_element(e, tuple))
            .collect::<Result<Vec<_>, _>>()?;
        let plain: Vec<AlgebraElement> = elements.iter().map(|e| (**e).clone()).collect();
        if !linearly_independent(&plain) {
            return Err(BlockError::DependentBasis(tuple.to_string()));
        }
        let n = plain.len();
        let mut table = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for k in 0..n {
                let prod = &plain[i] * &plain[k];
                let coords = solve_in_span(&plain, &prod).map_err(|err| match err {
                    SpanError::NotInSpan => BlockError::NotClosed {
                        tuple: tuple.to_string(),
                        left: xset.members()[i].to_string(),
                        right: xset.members()[k].to_string(),
                    },
                    SpanError::DependentTargets => BlockError::DependentBasis(tuple.to_string()),
                })?;
                table[i][k] = coords.into_iter().map(|c| c.value()).collect();
            }
        }
        Ok(BlockAlgebra {
            xset,
            elements,
            table,
        })
    }

    pub fn prime(&self) -> Prime {
        self.xset.tuple().prime()
    }

    pub fn xset(&self) -> &XSet {
        &self.xset
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, eps: EpsVec) -> Option<&AlgebraElement> {
        self.xset.index_of(eps).map(|i| &*self.elements[i])
    }

    pub fn elements(&self) -> impl Iterator<Item = &AlgebraElement> {
        self.elements.iter().map(|e| &**e)
    }

    pub fn structure_constants(&self, i: usize, k: usize) -> &[u32] {
        &self.table[i][k]
    }

    fn unit(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0u32; self.dim()];
        v[i] = 1;
        v
    }

    /// Product of two coordinate vectors.
    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let p = self.prime();
        let n = self.dim();
        let mut out = vec![0u32; n];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (k, &yk) in y.iter().enumerate() {
                if yk == 0 {
                    continue;
                }
                let c = p.mul(xi, yk);
                for (slot, &t) in out.iter_mut().zip(&self.table[i][k]) {
                    p.mul_add_assign(slot, c, t);
                }
            }
        }
        out
    }

    fn power(&self, x: &[u32], mut e: u64) -> Vec<u32> {
        let mut result = self.identity_coords();
        let mut base = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        result
    }

    fn identity_coords(&self) -> Vec<u32> {
        let zero = self.xset.index_of(EpsVec::zero(self.xset.top().len()));
        self.unit(zero.expect("the zero vector is always a member"))
    }

    /// Whether the structure constants are exactly the 0/1 union rule.
    pub fn product_rule_holds(&self) -> bool {
        let members = self.xset.members();
        (0..self.dim()).all(|i| {
            (0..self.dim()).all(|k| {
                let expected = match members[i].join(members[k]) {
                    Some(u) => self.unit(self.xset.index_of(u).expect("union stays in the set")),
                    None => vec![0; self.dim()],
                };
                self.table[i][k] == expected
            })
        })
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim()).all(|i| (0..self.dim()).all(|k| self.table[i][k] == self.table[k][i]))
    }

    /// Compares the direct product `Y^(p^s) X^(p^s) B` with the closed-form
    /// action for every member and position.
    pub fn action_rule_holds(&self) -> Result<bool, BlockError> {
        let p = self.prime();
        let r = self.xset.top().len();
        let plain: Vec<AlgebraElement> = self.elements().cloned().collect();
        for s in 0..r {
            let k = p.power(s) as u32;
            let g = &AlgebraElement::y(p, k) * &AlgebraElement::x(p, k);
            for (i, &eps) in self.xset.members().iter().enumerate() {
                let direct = &g * &plain[i];
                let Ok(coords) = solve_in_span(&plain, &direct) else {
                    return Ok(false);
                };
                let mut expected = vec![0u32; self.dim()];
                for (t, c) in yx_action(s, eps, &self.xset)? {
                    match self.xset.index_of(t) {
                        Some(j) => expected[j] = c,
                        None => return Ok(false),
                    }
                }
                let got: Vec<u32> = coords.iter().map(|c| c.value()).collect();
                if got != expected {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Whether the weight projector of the tuple fixes every basis element.
    pub fn weight_is_fixed(&self) -> bool {
        let t = self.xset.tuple();
        let m = mu(t.weight_index() as i64, t.r(), self.prime());
        self.elements().all(|b| &(&m * b) == b)
    }

    /// Radical as the kernel of `x -> x^(p^K)` with `p^K >= dim`; the map is
    /// additive because the block is commutative of characteristic `p`.
    pub fn brute_radical(&self) -> Subspace {
        let p = self.prime();
        let n = self.dim();
        let mut exponent = p.get() as u64;
        while (exponent as usize) < n {
            exponent *= p.get() as u64;
        }
        let images: Vec<Vec<u32>> = (0..n).map(|i| self.power(&self.unit(i), exponent)).collect();
        let map = Matrix::from_rows(p, n, &images).transpose();
        Subspace::span(p, n, &map.kernel())
    }

    /// `rad^0 ..= rad^(w+1)` by repeated products of the radical.
    pub fn brute_radical_powers(&self) -> Vec<Subspace> {
        let p = self.prime();
        let n = self.dim();
        let rad = self.brute_radical();
        let mut out = vec![Subspace::coordinate(p, n, 0..n)];
        for _ in 0..=self.xset.w() {
            let prev = out.last().expect("nonempty");
            let products: Vec<Vec<u32>> = rad
                .basis()
                .iter()
                .flat_map(|a| prev.basis().iter().map(move |b| self.mul(a, b)))
                .collect();
            out.push(Subspace::span(p, n, &products));
        }
        out
    }

    /// The left ideal generated by `eps`, as the span of `m B^eps` over the
    /// monomial basis of `A_r`, in block coordinates.
    pub fn brute_pim(&self, eps: EpsVec) -> Result<Subspace, BlockError> {
        self.xset.check(eps)?;
        let p = self.prime();
        let r = self.xset.tuple().r();
        let plain: Vec<AlgebraElement> = self.elements().cloned().collect();
        let b = self.element(eps).expect("checked member");
        let mut vectors = Vec::new();
        for mono in basis_monomials(p, r, Sampling::DegreeZero) {
            let prod = &AlgebraElement::monomial(p, mono, 1) * b;
            let coords = solve_in_span(&plain, &prod).map_err(|_| BlockError::NotClosed {
                tuple: self.xset.tuple().to_string(),
                left: mono.to_string(),
                right: eps.to_string(),
            })?;
            vectors.push(coords.into_iter().map(|c| c.value()).collect::<Vec<u32>>());
        }
        Ok(Subspace::span(p, self.dim(), &vectors))
    }

    /// `rad^i M` for a submodule `M`, given the radical powers of the block.
    pub fn module_radicals(&self, module: &Subspace, rad_powers: &[Subspace]) -> Vec<Subspace> {
        let p = self.prime();
        rad_powers
            .iter()
            .map(|ri| {
                let products: Vec<Vec<u32>> = ri
                    .basis()
                    .iter()
                    .flat_map(|a| module.basis().iter().map(move |m| self.mul(a, m)))
                    .collect();
                Subspace::span(p, self.dim(), &products)
            })
            .collect()
    }

    /// `soc^i M`: the elements of `M` killed by every element of `rad^i`.
    pub fn module_socles(&self, module: &Subspace, rad_powers: &[Subspace]) -> Vec<Subspace> {
        let p = self.prime();
        let n = self.dim();
        rad_powers
            .iter()
            .map(|ri| {
                let mb = module.basis();
                if mb.is_empty() {
                    return Subspace::zero(p, n);
                }
                // unknowns: coefficients on the module basis
                let mut rows = Vec::new();
                for a in ri.basis() {
                    let images: Vec<Vec<u32>> = mb.iter().map(|m| self.mul(a, m)).collect();
                    for c in 0..n {
                        rows.push(images.iter().map(|v| v[c]).collect::<Vec<u32>>());
                    }
                }
                if rows.is_empty() {
                    return module.clone();
                }
                let kernel = Matrix::from_rows(p, mb.len(), &rows).kernel();
                let vectors: Vec<Vec<u32>> = kernel
                    .iter()
                    .map(|lam| {
                        let mut v = vec![0u32; n];
                        for (l, m) in lam.iter().zip(mb) {
                            for (slot, &x) in v.iter_mut().zip(m) {
                                p.mul_add_assign(slot, *l, x);
                            }
                        }
                        v
                    })
                    .collect();
                Subspace::span(p, n, &vectors)
            })
            .collect()
    }

    /// Gram matrix of the functional that reads the coefficient of the top
    /// basis element.
    pub fn gram_matrix(&self) -> Matrix {
        let p = self.prime();
        let n = self.dim();
        let top = self.xset.index_of(self.xset.top()).expect("top is a member");
        let mut g = Matrix::zeros(p, n, n);
        for i in 0..n {
            for k in 0..n {
                g.set(i, k, self.table[i][k][top]);
            }
        }
        g
    }

    /// The permutation matrix pairing each member with its complement.
    pub fn complement_pairing(&self) -> Matrix {
        let n = self.dim();
        let top = self.xset.top();
        let mut g = Matrix::zeros(self.prime(), n, n);
        for (i, &e) in self.xset.members().iter().enumerate() {
            let k = self.xset.index_of(top.minus(e)).expect("complement is a member");
            g.set(i, k, 1);
        }
        g
    }
}
