//! Best agreement of a function with a fractional linear map.

use crate::field::{Elem, Field};
use crate::poly::Func;

/// `x ↦ (αx + β)/(γx + δ)` with `αδ != βγ`, scaled so that either
/// `(γ, δ) = (0, 1)` or `γ = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MobiusMap {
    pub alpha: Elem,
    pub beta: Elem,
    pub gamma: Elem,
    pub delta: Elem,
}

impl MobiusMap {
    /// Value at `x`, or `None` at the pole.
    pub fn eval(&self, field: &Field, x: Elem) -> Option<Elem> {
        let num = field.add(field.mul(self.alpha, x), self.beta);
        let den = field.add(field.mul(self.gamma, x), self.delta);
        field.div(num, den)
    }

    pub fn is_nondegenerate(&self, field: &Field) -> bool {
        field.mul(self.alpha, self.delta) != field.mul(self.beta, self.gamma)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MobiusFit {
    pub best: MobiusMap,
    /// Number of non-pole points where `f` agrees with `best`.
    pub agreement: u32,
    /// `q - agreement`; a lower bound on the Carlitz rank of a permutation.
    pub crk_lower_bound: u32,
}

/// Every canonical Möbius map in a fixed order: first the affine ones
/// `(α, β, 0, 1)`, then `(α, β, 1, δ)`.
pub fn canonical_maps(field: &Field) -> impl Iterator<Item = MobiusMap> + '_ {
    let affine = field.elements().skip(1).flat_map(move |alpha| {
        field.elements().map(move |beta| MobiusMap {
            alpha,
            beta,
            gamma: Elem::ZERO,
            delta: Elem::ONE,
        })
    });
    let proper = field.elements().flat_map(move |delta| {
        field.elements().flat_map(move |alpha| {
            field.elements().filter_map(move |beta| {
                let m = MobiusMap {
                    alpha,
                    beta,
                    gamma: Elem::ONE,
                    delta,
                };
                m.is_nondegenerate(field).then_some(m)
            })
        })
    });
    affine.chain(proper)
}

/// Exhaustive search; ties keep the first map in [`canonical_maps`] order.
pub fn mobius_agreement(field: &Field, f: &Func) -> MobiusFit {
    let q = field.q();
    let mut best: Option<(MobiusMap, u32)> = None;
    for m in canonical_maps(field) {
        let count = field
            .elements()
            .filter(|&x| m.eval(field, x) == Some(f.at(x)))
            .count() as u32;
        if best.is_none_or(|(_, b)| count > b) {
            best = Some((m, count));
            if count == q {
                break;
            }
        }
    }
    let (best, agreement) = best.expect("at least one affine map exists");
    MobiusFit {
        best,
        agreement,
        crk_lower_bound: q - agreement,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_agrees_everywhere() {
        let f7 = Field::new(7, 1, None).unwrap();
        let fit = mobius_agreement(&f7, &Func::identity(&f7));
        assert_eq!(fit.agreement, 7);
        assert_eq!(fit.crk_lower_bound, 0);
    }

    #[test]
    fn inversion_misses_only_the_pole() {
        let f7 = Field::new(7, 1, None).unwrap();
        let inv = Func::from_fn(&f7, |x| f7.inv(x));
        let fit = mobius_agreement(&f7, &inv);
        assert_eq!(fit.agreement, 6);
        assert_eq!(fit.crk_lower_bound, 1);
        let direct = MobiusMap {
            alpha: Elem::ZERO,
            beta: Elem::ONE,
            gamma: Elem::ONE,
            delta: Elem::ZERO,
        };
        let count = f7
            .elements()
            .filter(|&x| direct.eval(&f7, x) == Some(inv.at(x)))
            .count();
        assert_eq!(count, 6);
    }

    #[test]
    fn map_count() {
        // q(q-1) affine maps plus q(q^2 - q) with γ = 1
        let f5 = Field::new(5, 1, None).unwrap();
        assert_eq!(canonical_maps(&f5).count(), 20 + 100);
    }
}
