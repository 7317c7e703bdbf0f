//! Multiplicative index via cyclotomic mappings.
//!
//! For `ℓ | q - 1` let `C_0` be the nonzero `ℓ`-th powers and
//! `C_i = ζ^i C_0`. The `r`-th order cyclotomic mapping with branch
//! constants `a_0..a_{ℓ-1}` (all nonzero) is `0 ↦ 0`, `x ↦ a_i x^r` on `C_i`.

use alloc::vec::Vec;

use crate::field::{divisors, Elem, Field};
use crate::poly::Func;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicForm {
    pub ell: u32,
    pub r: u32,
    pub branch_constants: Vec<Elem>,
}

impl CyclotomicForm {
    pub fn eval(&self, field: &Field, x: Elem) -> Elem {
        if x.is_zero() {
            return Elem::ZERO;
        }
        let t = field.log_unchecked(x);
        let i = (t % self.ell) as usize;
        field.mul(self.branch_constants[i], field.pow(x, self.r as u64))
    }

    pub fn to_func(&self, field: &Field) -> Func {
        Func::from_fn(field, |x| self.eval(field, x))
    }
}

/// Smallest-index cyclotomic representation of `x ↦ f(x) - f(0)`, or `None`
/// when that map vanishes somewhere on `F_q^*`.
///
/// Divisors are tried in ascending order and `r` in `1..=(q-1)/ℓ`; higher
/// `r` only shifts the branch constants.
pub fn mult_index(field: &Field, f: &Func) -> Option<CyclotomicForm> {
    let order = field.q() - 1;
    let g = f.shifted(field);
    // logs[t] = log g(ζ^t)
    let mut logs = Vec::with_capacity(order as usize);
    for t in 0..order {
        let y = g.at(field.exp(t as u64));
        if y.is_zero() {
            return None;
        }
        logs.push(field.log_unchecked(y) as u64);
    }
    let order = order as u64;
    for ell in divisors(order as u32) {
        let ell = ell as u64;
        let m = order / ell;
        'r: for r in 1..=m {
            let mut consts = Vec::with_capacity(ell as usize);
            for i in 0..ell {
                let base = (logs[i as usize] + order - (r * i) % order) % order;
                for j in 1..m {
                    let e = i + j * ell;
                    let c = (logs[e as usize] + order - (r * e) % order) % order;
                    if c != base {
                        continue 'r;
                    }
                }
                consts.push(field.exp(base));
            }
            return Some(CyclotomicForm {
                ell: ell as u32,
                r: r as u32,
                branch_constants: consts,
            });
        }
    }
    None
}
