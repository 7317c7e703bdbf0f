//! Exact Carlitz rank by breadth-first closure over the permutation group.
//!
//! Level 0 holds the affine maps `a x + b` (`a != 0`); level `r + 1` adds
//! every `t_c ∘ ι ∘ g` with `g` on level `r`, where `ι` is `x ↦ x^{q-2}` and
//! `t_c` is translation by `c`. Scalars commute past `ι` (`a ι(y) = ι(y / a)`),
//! so this reaches every composition with `r + 1` inversions. Permutations
//! are keyed by their Lehmer rank, which keeps the whole closure in flat
//! arrays of size `q!`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::poly::Func;

/// Largest field order for which the closure is built (`9! = 362880` entries).
pub const MAX_EXACT_ORDER: u32 = 9;

const UNSEEN: u8 = u8::MAX;

/// Parameters `a_0, ..., a_{r+1}` of the nested form
/// `(⋯((a_0 x + a_1)^{q-2} + a_2)^{q-2} + ⋯ + a_r)^{q-2} + a_{r+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CarlitzCertificate {
    pub rank: u32,
    pub params: Vec<Elem>,
}

impl CarlitzCertificate {
    pub fn eval(&self, field: &Field, x: Elem) -> Elem {
        carlitz_form_eval(field, &self.params, x)
    }
}

/// Evaluates the nested form for a parameter list of length at least 2.
pub fn carlitz_form_eval(field: &Field, params: &[Elem], x: Elem) -> Elem {
    let mut y = field.add(field.mul(params[0], x), params[1]);
    for &a in &params[2..] {
        y = field.add(field.inv(y), a);
    }
    y
}

/// Exact rank, or a lower bound when the search stopped early.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CarlitzRank {
    Exact(u32),
    LowerBound(u32),
}

impl CarlitzRank {
    /// The known lower bound (the rank itself when exact).
    pub fn lower(self) -> u32 {
        match self {
            CarlitzRank::Exact(r) | CarlitzRank::LowerBound(r) => r,
        }
    }

    pub fn exact(self) -> Option<u32> {
        match self {
            CarlitzRank::Exact(r) => Some(r),
            CarlitzRank::LowerBound(_) => None,
        }
    }
}

/// Result of a rank query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CarlitzOutcome {
    Certified(CarlitzCertificate),
    /// Not reached within the level cap; the rank is at least this value.
    AboveMax {
        lower_bound: u32,
    },
}

/// The closed BFS table for one field, shared read-only once built.
#[derive(Clone, Debug)]
pub struct CarlitzTable {
    q: u32,
    level: Vec<u8>,
    parent: Vec<u32>,
    shift: Vec<u8>,
    /// Highest level expanded; every permutation of rank `<= depth` is present.
    depth: u32,
    complete: bool,
}

impl CarlitzTable {
    pub fn build(field: &Field, max_rank: Option<u32>) -> Result<CarlitzTable> {
        let q = field.q();
        if q > MAX_EXACT_ORDER {
            return Err(Error::Unsupported("exact Carlitz rank needs q <= 9"));
        }
        let qs = q as usize;
        let total = factorial(qs) as usize;
        let mut level = vec![UNSEEN; total];
        let mut parent = vec![0u32; total];
        let mut shift = vec![0u8; total];
        let inv: Vec<u8> = field.elements().map(|x| field.inv(x).0 as u8).collect();
        let add: Vec<u8> = field
            .elements()
            .flat_map(|a| field.elements().map(move |b| (a, b)))
            .map(|(a, b)| field.add(a, b).0 as u8)
            .collect();

        let mut frontier: Vec<u8> = Vec::new();
        let mut seen = 0usize;
        for a in field.elements().skip(1) {
            for b in field.elements() {
                let t: Vec<u8> = field
                    .elements()
                    .map(|x| field.add(field.mul(a, x), b).0 as u8)
                    .collect();
                let r = perm_rank(&t) as usize;
                if level[r] == UNSEEN {
                    level[r] = 0;
                    seen += 1;
                    frontier.extend_from_slice(&t);
                }
            }
        }

        let mut depth = 0u32;
        let mut img = vec![0u8; qs];
        while seen < total && !frontier.is_empty() && max_rank.is_none_or(|m| depth < m) {
            if depth + 1 >= UNSEEN as u32 {
                return Err(Error::Internal("Carlitz level overflow"));
            }
            let mut next = Vec::new();
            for g in frontier.chunks_exact(qs) {
                let g_rank = perm_rank(g);
                for c in 0..qs {
                    for (x, &gx) in g.iter().enumerate() {
                        img[x] = add[inv[gx as usize] as usize * qs + c];
                    }
                    let r = perm_rank(&img) as usize;
                    if level[r] == UNSEEN {
                        level[r] = depth as u8 + 1;
                        parent[r] = g_rank as u32;
                        shift[r] = c as u8;
                        seen += 1;
                        next.extend_from_slice(&img);
                    }
                }
            }
            frontier = next;
            depth += 1;
        }
        Ok(CarlitzTable {
            q,
            level,
            parent,
            shift,
            depth,
            complete: seen == total,
        })
    }

    /// Whether every permutation of the field was reached.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    fn index_of(&self, f: &Func) -> Result<usize> {
        if f.len() != self.q as usize {
            return Err(Error::TableLength {
                got: f.len(),
                expected: self.q as usize,
            });
        }
        if !f.is_permutation() {
            return Err(Error::NotPermutation);
        }
        let t: Vec<u8> = f.table().iter().map(|e| e.0 as u8).collect();
        Ok(perm_rank(&t) as usize)
    }

    pub fn rank(&self, f: &Func) -> Result<CarlitzRank> {
        let i = self.index_of(f)?;
        Ok(match self.level[i] {
            UNSEEN => CarlitzRank::LowerBound(self.depth + 1),
            l => CarlitzRank::Exact(l as u32),
        })
    }

    pub fn query(&self, field: &Field, f: &Func) -> Result<CarlitzOutcome> {
        let mut i = self.index_of(f)?;
        if self.level[i] == UNSEEN {
            return Ok(CarlitzOutcome::AboveMax {
                lower_bound: self.depth + 1,
            });
        }
        let rank = self.level[i] as u32;
        let mut shifts = Vec::with_capacity(rank as usize);
        while self.level[i] > 0 {
            shifts.push(Elem(self.shift[i] as u32));
            i = self.parent[i] as usize;
        }
        let base = perm_unrank(self.q as usize, i as u64);
        let a1 = Elem(base[0] as u32);
        let a0 = field.sub(Elem(base[1] as u32), a1);
        let mut params = vec![a0, a1];
        params.extend(shifts.into_iter().rev());
        let cert = CarlitzCertificate { rank, params };
        if field.elements().any(|x| cert.eval(field, x) != f.at(x)) {
            return Err(Error::Internal("Carlitz certificate does not reproduce f"));
        }
        Ok(CarlitzOutcome::Certified(cert))
    }
}

/// Builds the closure and queries it once.
pub fn carlitz_rank(field: &Field, f: &Func, max_rank: Option<u32>) -> Result<CarlitzOutcome> {
    if !f.is_permutation() {
        return Err(Error::NotPermutation);
    }
    CarlitzTable::build(field, max_rank)?.query(field, f)
}

pub(crate) fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Lehmer rank of a permutation of `0..len`.
pub fn perm_rank(perm: &[u8]) -> u64 {
    let n = perm.len();
    let mut rank = 0u64;
    let mut used: u32 = 0;
    for (i, &v) in perm.iter().enumerate() {
        let smaller_unused = v as u32 - (used & ((1u32 << v) - 1)).count_ones();
        rank = rank * (n - i) as u64 + smaller_unused as u64;
        used |= 1 << v;
    }
    rank
}

/// Inverse of [`perm_rank`].
pub fn perm_unrank(n: usize, mut rank: u64) -> Vec<u8> {
    let mut digits = vec![0u64; n];
    for i in (0..n).rev() {
        let base = (n - i) as u64;
        digits[i] = rank % base;
        rank /= base;
    }
    let mut pool: Vec<u8> = (0..n as u8).collect();
    digits.iter().map(|&d| pool.remove(d as usize)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u32, n: u32) -> Field {
        Field::new(p, n, None).unwrap()
    }

    #[test]
    fn lehmer_roundtrip() {
        for n in 1..=6usize {
            for r in 0..factorial(n) {
                assert_eq!(perm_rank(&perm_unrank(n, r)), r);
            }
        }
        assert_eq!(perm_rank(&[0, 1, 2]), 0);
        assert_eq!(perm_rank(&[2, 1, 0]), 5);
    }

    #[test]
    fn affine_rank_zero() {
        let f7 = field(7, 1);
        let a = Func::from_fn(&f7, |x| f7.add(f7.mul(Elem(3), x), Elem(5)));
        match carlitz_rank(&f7, &a, None).unwrap() {
            CarlitzOutcome::Certified(c) => {
                assert_eq!(c.rank, 0);
                assert_eq!(c.params, [Elem(3), Elem(5)]);
            }
            other => panic!("{other:?}"),
        }
        let f2 = field(2, 1);
        let t = CarlitzTable::build(&f2, None).unwrap();
        assert!(t.is_complete());
        assert_eq!(t.rank(&Func::identity(&f2)).unwrap(), CarlitzRank::Exact(0));
    }

    #[test]
    fn inversion_rank_one() {
        let f5 = field(5, 1);
        let inv = Func::from_fn(&f5, |x| f5.inv(x));
        match carlitz_rank(&f5, &inv, None).unwrap() {
            CarlitzOutcome::Certified(c) => {
                assert_eq!(c.rank, 1);
                assert_eq!(c.params, [Elem(1), Elem(0), Elem(0)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_non_permutations_and_large_fields() {
        let f5 = field(5, 1);
        let c = Func::from_fn(&f5, |_| Elem(1));
        assert_eq!(carlitz_rank(&f5, &c, None), Err(Error::NotPermutation));
        let f11 = field(11, 1);
        assert!(CarlitzTable::build(&f11, None).is_err());
    }

    #[test]
    fn level_cap_reports_lower_bound() {
        let f7 = field(7, 1);
        let t = CarlitzTable::build(&f7, Some(1)).unwrap();
        assert!(!t.is_complete());
        // (x^{q-2} + 1)^{q-2} has rank 2
        let g = Func::from_fn(&f7, |x| {
            carlitz_form_eval(&f7, &[Elem(1), Elem(0), Elem(1), Elem(0)], x)
        });
        assert_eq!(t.rank(&g).unwrap(), CarlitzRank::LowerBound(2));
        assert_eq!(
            t.query(&f7, &g).unwrap(),
            CarlitzOutcome::AboveMax { lower_bound: 2 }
        );
        let full = CarlitzTable::build(&f7, None).unwrap();
        assert_eq!(full.rank(&g).unwrap(), CarlitzRank::Exact(2));
    }

    #[test]
    fn closure_covers_symmetric_group() {
        for (p, n) in [(3, 1), (2, 2), (5, 1), (7, 1)] {
            let f = field(p, n);
            assert!(CarlitzTable::build(&f, None).unwrap().is_complete());
        }
    }
}
