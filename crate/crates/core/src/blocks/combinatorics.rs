//! The closed-form side of a block: which bit vectors index its basis, how
//! the `Y^(p^s) X^(p^s)` generators act, the product rule and the resulting
//! radical and socle layers of each projective indecomposable.

use serde::Serialize;

use crate::eps::EpsVec;
use crate::idempotents::TupleAJ;

use super::BlockError;

/// Bit vectors with zeros at every non-free position of a tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XSet {
    tuple: TupleAJ,
    top: EpsVec,
    members: Vec<EpsVec>,
}

impl XSet {
    pub fn tuple(&self) -> &TupleAJ {
        &self.tuple
    }

    /// The unique member of largest weight.
    pub fn top(&self) -> EpsVec {
        self.top
    }

    /// Members in increasing mask order.
    pub fn members(&self) -> &[EpsVec] {
        &self.members
    }

    pub fn w(&self) -> u32 {
        self.top.weight()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn index_of(&self, eps: EpsVec) -> Option<usize> {
        self.members.binary_search(&eps).ok()
    }

    pub fn contains(&self, eps: EpsVec) -> bool {
        eps.len() == self.top.len() && eps.is_below(self.top)
    }

    /// `Ok` when `eps` is a member, otherwise the first offending position.
    pub fn check(&self, eps: EpsVec) -> Result<(), BlockError> {
        if eps.len() != self.top.len() {
            return Err(BlockError::Length {
                got: eps.len(),
                r: self.top.len(),
            });
        }
        match (0..eps.len()).find(|&i| eps.bit(i) == 1 && self.top.bit(i) == 0) {
            None => Ok(()),
            Some(position) => Err(BlockError::NotInBlock {
                eps: eps.to_string(),
                position,
                pair: self.tuple.pair(position).to_string(),
            }),
        }
    }

    /// Coordinate indices of the given members.
    pub fn indices<'a>(&'a self, set: &'a [EpsVec]) -> impl Iterator<Item = usize> + 'a {
        set.iter().map(|&e| self.index_of(e).expect("member of the block"))
    }
}

pub fn x_set(tuple: &TupleAJ) -> XSet {
    let top = tuple.free_mask();
    let members = EpsVec::all(tuple.r()).filter(|e| e.is_below(top)).collect();
    XSet {
        tuple: tuple.clone(),
        top,
        members,
    }
}

/// `Y^(p^s) X^(p^s)` applied to the basis element `eps`, as a list of
/// `(vector, coefficient)` with zero terms dropped.
pub fn yx_action(s: u32, eps: EpsVec, xset: &XSet) -> Result<Vec<(EpsVec, u32)>, BlockError> {
    xset.check(eps)?;
    if s >= eps.len() {
        return Err(BlockError::Position { s, r: eps.len() });
    }
    let pair = xset.tuple().pair(s);
    let mut out = Vec::with_capacity(2);
    let alpha = pair.alpha();
    if alpha != 0 {
        out.push((eps, alpha));
    }
    let beta = pair.beta();
    if eps.bit(s) == 0 && beta != 0 {
        out.push((eps.with_bit(s, 1), beta));
    }
    Ok(out)
}

/// Product of two basis elements: zero on overlapping support, otherwise
/// the basis element of the union.
pub fn product(eps: EpsVec, other: EpsVec) -> Option<EpsVec> {
    eps.join(other)
}

/// Basis of the projective indecomposable generated by `eps`.
pub fn pim_basis(eps: EpsVec, xset: &XSet) -> Result<Vec<EpsVec>, BlockError> {
    xset.check(eps)?;
    Ok(xset.members().iter().copied().filter(|t| eps.is_below(*t)).collect())
}

/// Basis of the `i`-th power of the block radical.
pub fn radical_power(i: u32, xset: &XSet) -> Vec<EpsVec> {
    xset.members()
        .iter()
        .copied()
        .filter(|t| t.weight() >= i)
        .collect()
}

/// Basis of the `i`-th radical of the projective indecomposable at `eps`.
pub fn pim_radical(i: u32, eps: EpsVec, xset: &XSet) -> Result<Vec<EpsVec>, BlockError> {
    Ok(pim_basis(eps, xset)?
        .into_iter()
        .filter(|t| t.distance(eps) >= i)
        .collect())
}

/// Loewy length of the projective indecomposable at `eps`.
pub fn loewy_length(eps: EpsVec, xset: &XSet) -> u32 {
    xset.w() + 1 - eps.weight()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoewyLayer {
    /// Basis vectors spanning the layer modulo the next one.
    pub members: Vec<String>,
    /// Number of copies of the one-dimensional simple module.
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoewySeries {
    pub layers: Vec<LoewyLayer>,
}

impl LoewySeries {
    pub fn length(&self) -> usize {
        self.layers.len()
    }

    pub fn dims(&self) -> Vec<u64> {
        self.layers.iter().map(|l| l.multiplicity).collect()
    }
}

/// Radical layers of the projective indecomposable at `eps`: layer `i`
/// holds the members at distance exactly `i`.
pub fn loewy_series(eps: EpsVec, xset: &XSet) -> Result<LoewySeries, BlockError> {
    let basis = pim_basis(eps, xset)?;
    let length = loewy_length(eps, xset);
    let layers = (0..length)
        .map(|i| {
            let members: Vec<String> = basis
                .iter()
                .filter(|t| t.distance(eps) == i)
                .map(|t| t.to_string())
                .collect();
            LoewyLayer {
                multiplicity: members.len() as u64,
                members,
            }
        })
        .collect();
    Ok(LoewySeries { layers })
}

/// Socle layers read off the radical layers by rigidity: `soc^i` is the
/// radical at `length - i`, so layer `i` of the socle series is radical
/// layer `length - 1 - i`.
pub fn socle_series(eps: EpsVec, xset: &XSet) -> Result<LoewySeries, BlockError> {
    let mut s = loewy_series(eps, xset)?;
    s.layers.reverse();
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Prime;

    fn tuple(q: u64, s: &str) -> TupleAJ {
        TupleAJ::parse(Prime::new(q).unwrap(), s).unwrap()
    }

    fn bits(s: &str) -> EpsVec {
        s.parse().unwrap()
    }

    #[test]
    fn member_sets() {
        let x = x_set(&tuple(3, "0:0,1:2"));
        assert_eq!(x.members(), &[bits("00"), bits("01")]);
        assert_eq!((x.w(), x.top()), (1, bits("01")));
        let x = x_set(&tuple(3, "0:2,1:2"));
        assert_eq!(x.len(), 4);
        let x = x_set(&tuple(2, "1:0,1:2"));
        assert_eq!(x.members(), &[bits("00")]);
        assert_eq!(x.w(), 0);
    }

    #[test]
    fn membership_errors_name_the_position() {
        let x = x_set(&tuple(3, "0:0,1:2"));
        match x.check(bits("10")) {
            Err(BlockError::NotInBlock { position, .. }) => assert_eq!(position, 0),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(x.check(bits("0")), Err(BlockError::Length { .. })));
    }

    #[test]
    fn action_examples() {
        let x = x_set(&tuple(2, "0:1"));
        assert_eq!(yx_action(0, bits("0"), &x).unwrap(), vec![(bits("1"), 1)]);
        let x = x_set(&tuple(2, "1:0"));
        assert_eq!(yx_action(0, bits("0"), &x).unwrap(), vec![(bits("0"), 1)]);
        let x = x_set(&tuple(5, "0:2"));
        assert_eq!(yx_action(0, bits("1"), &x).unwrap(), vec![(bits("1"), 2)]);
    }

    #[test]
    fn layers_follow_binomials() {
        let x = x_set(&tuple(3, "0:2,1:2,2:2"));
        let s = loewy_series(bits("000"), &x).unwrap();
        assert_eq!(s.dims(), vec![1, 3, 3, 1]);
        let s = loewy_series(x.top(), &x).unwrap();
        assert_eq!(s.dims(), vec![1]);
        let x = x_set(&tuple(3, "0:0,1:2"));
        assert_eq!(loewy_series(bits("00"), &x).unwrap().dims(), vec![1, 1]);
    }

    #[test]
    fn radical_powers() {
        let x = x_set(&tuple(3, "0:2,1:2"));
        assert_eq!(radical_power(0, &x).len(), 4);
        assert_eq!(radical_power(1, &x).len(), 3);
        assert!(radical_power(3, &x).is_empty());
        for (e, t) in [("00", "11"), ("01", "10")] {
            assert!(product(bits(e), bits(t)).is_some());
        }
        assert_eq!(product(bits("01"), bits("01")), None);
    }
}
