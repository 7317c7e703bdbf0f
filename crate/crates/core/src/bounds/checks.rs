use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{BoundId, BoundVerdict, Outcome, Quantity, Rational, Relation};
use crate::error::{Error, Result};
use crate::families::{self, Family};
use crate::field::{Elem, Field};
use crate::measures::{
    codimension, codimension_oracle, CarlitzRank, CyclotomicForm, MeasureOptions, Measured,
};
use crate::poly::{self, Degree, Func};

fn int(v: impl Into<i128>) -> Quantity {
    Quantity::int(v.into())
}

fn ratio(num: impl Into<i128>, den: impl Into<i128>) -> Quantity {
    Quantity::ratio(num.into(), den.into())
}

/// Runs one per-function check.
pub fn check(m: &Measured<'_>, id: BoundId) -> Result<BoundVerdict> {
    match id {
        BoundId::DegCrk => check_deg_crk(m),
        BoundId::WeightCrk => check_weight_crk(m),
        BoundId::CrkAddInd => check_crk_addind(m),
        BoundId::CrkAddIndMin => check_crk_addind_min(m),
        BoundId::DegAddInd => check_deg_addind(m),
        BoundId::WeightAddInd => check_weight_addind(m),
        BoundId::IndDeg => Ok(check_ind_deg(m)),
        BoundId::IndWeight => Ok(check_ind_weight(m)),
        BoundId::IndCrk => check_ind_crk(m),
        BoundId::SmallConjecture => check_small_conjecture(m),
        BoundId::MobiusCrk => check_mobius_crk(m),
        BoundId::NonzeroValues => check_nonzero_values(m),
        BoundId::CodimOracle => check_codim_oracle(m),
        _ => Err(Error::Unsupported(
            "field-level bound in a per-function check",
        )),
    }
}

/// `Crk ≥ rhs` (or `>`), settled by a lower bound on the rank when possible.
fn crk_at_least(id: BoundId, rank: CarlitzRank, strict: bool, rhs: Quantity) -> BoundVerdict {
    let v = BoundVerdict::lower_bound_on_nonneg(id, int(rank.lower()), strict, rhs);
    match rank {
        CarlitzRank::Exact(_) => v,
        CarlitzRank::LowerBound(_) if v.outcome == Outcome::Violated => BoundVerdict {
            outcome: Outcome::Undecided,
            ..v
        }
        .with_note("not desk-verifiable: only the Möbius lower bound on the rank is available"),
        CarlitzRank::LowerBound(_) => {
            v.with_note("certified by the Möbius lower bound on the rank")
        }
    }
}

fn degree_above_one(m: &Measured<'_>) -> Option<u32> {
    m.degree().finite().filter(|&d| d > 1)
}

/// The permutation's rank, or the reason the check does not apply.
fn rank_of(m: &Measured<'_>) -> Result<core::result::Result<CarlitzRank, &'static str>> {
    Ok(m.carlitz()?.ok_or("not a permutation"))
}

pub fn check_deg_crk(m: &Measured<'_>) -> Result<BoundVerdict> {
    let id = BoundId::DegCrk;
    let rank = match rank_of(m)? {
        Ok(r) => r,
        Err(why) => return Ok(BoundVerdict::not_applicable(id, why)),
    };
    let Some(deg) = degree_above_one(m) else {
        return Ok(BoundVerdict::not_applicable(id, "deg <= 1"));
    };
    let q = m.field().q() as i128;
    Ok(crk_at_least(id, rank, false, int(q - deg as i128 - 1)))
}

/// `f = a + b x^{q-2}` with `b != 0`; `a = f(0)` and `b = f(1) - f(0)` are forced.
pub fn is_inversion_form(field: &Field, f: &Func) -> bool {
    let a = f.at(Elem::ZERO);
    let b = field.sub(f.at(Elem::ONE), a);
    !b.is_zero()
        && field
            .elements()
            .all(|x| f.at(x) == field.add(a, field.mul(b, field.inv(x))))
}

pub fn check_weight_crk(m: &Measured<'_>) -> Result<BoundVerdict> {
    let id = BoundId::WeightCrk;
    let rank = match rank_of(m)? {
        Ok(r) => r,
        Err(why) => return Ok(BoundVerdict::not_applicable(id, why)),
    };
    if degree_above_one(m).is_none() {
        return Ok(BoundVerdict::not_applicable(id, "deg <= 1"));
    }
    if rank.exact() == Some(0) {
        return Ok(BoundVerdict::not_applicable(id, "Crk = 0"));
    }
    if is_inversion_form(m.field(), m.func()) {
        return Ok(BoundVerdict::not_applicable(id, "f = a + b x^(q-2)"));
    }
    let q = m.field().q();
    Ok(crk_at_least(id, rank, true, ratio(q, m.weight() + 2)))
}

pub fn check_crk_addind(m: &Measured<'_>) -> Result<BoundVerdict> {
    let id = BoundId::CrkAddInd;
    let rank = match rank_of(m)? {
        Ok(r) => r,
        Err(why) => return Ok(BoundVerdict::not_applicable(id, why)),
    };
    if degree_above_one(m).is_none() {
        return Ok(BoundVerdict::not_applicable(id, "deg <= 1"));
    }
    let add = m.codim()?.add_index;
    if add == 1 {
        return Ok(BoundVerdict::not_applicable(
            id,
            "linearised plus a constant",
        ));
    }
    let q = m.field().q() as i128;
    // q/(r+1) - 1 only shrinks as r grows, so a lower bound on r gives an
    // upper bound on the right side
    let rhs = Quantity::rational(Rational::new(q, rank.lower() as i128 + 1) - 1);
    let v = BoundVerdict::lower_bound_on_nonneg(id, int(add), true, rhs);
    Ok(match rank {
        CarlitzRank::Exact(_) => v,
        CarlitzRank::LowerBound(_) if v.outcome == Outcome::Violated => BoundVerdict {
            outcome: Outcome::Undecided,
            ..v
        }
        .with_note("not desk-verifiable: right side computed from a lower bound on the rank"),
        CarlitzRank::LowerBound(_) => {
            v.with_note("certified using the Möbius lower bound on the rank")
        }
    })
}

/// `min{q/r, (q - 2r)/2}`.
pub fn crk_addind_min_rhs(q: u32, r: u32) -> Quantity {
    let a = Rational::new(q as i128, r as i128);
    let b = Rational::new(q as i128 - 2 * r as i128, 2);
    Quantity::rational(a.min(b))
}

pub fn check_crk_addind_min(m: &Measured<'_>) -> Result<BoundVerdict> {
    let id = BoundId::CrkAddIndMin;
    let rank = match rank_of(m)? {
        Ok(r) => r,
        Err(why) => return Ok(BoundVerdict::not_applicable(id, why)),
    };
    if degree_above_one(m).is_none() {
        return Ok(BoundVerdict::not_applicable(id, "Crk = 0"));
    }
    let add = m.codim()?.add_index;
    if add == 1 {
        return Ok(BoundVerdict::not_applicable(
            id,
            "linearised plus a constant",
        ));
    }
    // a non-affine permutation has rank at least 1; the right side decreases in r
    let r = rank.lower().max(1);
    let v = BoundVerdict::lower_bound_on_nonneg(
        id,
        int(add),
        false,
        crk_addind_min_rhs(m.field().q(), r),
    );
    Ok(match rank {
        CarlitzRank::Exact(_) => v.with_note("provisional"),
        CarlitzRank::LowerBound(_) if v.outcome == Outcome::Violated => BoundVerdict {
            outcome: Outcome::Undecided,
            ..v
        }
        .with_note("provisional; right side computed from a lower bound on the rank"),
        CarlitzRank::LowerBound(_) => {
            v.with_note("provisional; certified using the Möbius lower bound")
        }
    })
}

pub fn check_deg_addind(m: &Measured<'_>) -> Result<BoundVerdict> {
    let id = BoundId::DegAddInd;
    let add = m.codim()?.add_index;
    if add <= 1 {
        return Ok(BoundVerdict::not_applicable(id, "AddInd = 1"));
    }
    let deg = m.degree().finite().unwrap_or(0) as i128;
    Ok(BoundVerdict::compare(
        id,
        int(deg * add as i128),
        Relation::Ge,
        int(m.field().q()),
    ))
}

/// Upper bound on the weight of a map of codimension `k`; `None` when `k = n`
/// or the value does not fit in 128 bits.
pub fn weight_addind_bound(p: u32, n: u32, k: u32) -> Option<u128> {
    if k >= n {
        return None;
    }
    if k == 0 {
        return Some(n as u128 + 1);
    }
    // ((m^p - 1)/(m - 1))^k with m = n - k + 1 >= 2
    let m = (n - k + 1) as u128;
    let mut inner: u128 = 0;
    let mut term: u128 = 1;
    for j in 0..p {
        if j > 0 {
            term = term.checked_mul(m)?;
        }
        inner = inner.checked_add(term)?;
    }
    inner.checked_pow(k)
}

pub fn check_weight_addind(m: &Measured<'_>) -> Result<BoundVerdict> {
    let id = BoundId::WeightAddInd;
    let field = m.field();
    let k = m.codim()?.codim;
    if k == field.n() {
        return Ok(BoundVerdict::not_applicable(id, "k = n"));
    }
    let w = m.weight() as i128;
    Ok(match weight_addind_bound(field.p(), field.n(), k) {
        Some(b) if b <= i128::MAX as u128 => {
            BoundVerdict::compare(id, int(w), Relation::Le, int(b as i128))
        }
        _ => BoundVerdict {
            id,
            outcome: Outcome::HoldsVacuously,
            lhs: Some(int(w)),
            relation: Relation::Le,
            rhs: None,
            note: Some("bound exceeds 2^127 > q".into()),
        },
    })
}

/// Weight of `f - f(0)`.
fn shifted_weight(m: &Measured<'_>) -> u32 {
    let poly = m.poly();
    poly.weight() - u32::from(!poly.coeff(0).is_zero())
}

pub fn check_ind_deg(m: &Measured<'_>) -> BoundVerdict {
    let id = BoundId::IndDeg;
    match m.mult_index() {
        None => BoundVerdict::not_applicable(id, "Ind undefined"),
        Some(1) => BoundVerdict::not_applicable(id, "Ind = 1"),
        Some(ind) => {
            let deg = m.degree().finite().unwrap_or(0);
            BoundVerdict::compare(id, int(deg), Relation::Ge, ratio(m.field().q() - 1, ind))
        }
    }
}

pub fn check_ind_weight(m: &Measured<'_>) -> BoundVerdict {
    let id = BoundId::IndWeight;
    match m.mult_index() {
        None => BoundVerdict::not_applicable(id, "Ind undefined"),
        Some(ind) => BoundVerdict::compare(id, int(shifted_weight(m)), Relation::Le, int(ind))
            .with_note("weight of f - f(0)"),
    }
}

/// Largest agreement of `f` with a line `a x` or a hyperbola `a x^{q-2}`, `a != 0`.
pub fn line_hyperbola_agreement(field: &Field, f: &Func) -> u32 {
    let q = field.q() as usize;
    let mut line = vec![0u32; q];
    let mut hyper = vec![0u32; q];
    for x in field.elements().skip(1) {
        let y = f.at(x);
        if let Some(a) = field.div(y, x) {
            line[a.index()] += 1;
        }
        hyper[field.mul(y, x).index()] += 1;
    }
    let at_zero = u32::from(f.at(Elem::ZERO).is_zero());
    let best = line[1..]
        .iter()
        .chain(&hyper[1..])
        .copied()
        .max()
        .unwrap_or(0);
    best + at_zero
}

pub fn check_ind_crk(m: &Measured<'_>) -> Result<BoundVerdict> {
    let id = BoundId::IndCrk;
    let rank = match rank_of(m)? {
        Ok(r) => r,
        Err(why) => return Ok(BoundVerdict::not_applicable(id, why)),
    };
    let field = m.field();
    let q = field.q() as u64;
    let agree = line_hyperbola_agreement(field, m.func()) as u64;
    // agreement <= 3 sqrt(q)
    if agree * agree > 9 * q {
        return Ok(BoundVerdict::not_applicable(
            id,
            "close to a line or hyperbola",
        ));
    }
    let Some(ind) = m.mult_index() else {
        return Ok(BoundVerdict::not_applicable(id, "Ind undefined"));
    };
    let ind = ind as u64;
    let rhs = if ind * ind >= q {
        int(q as i128 - 3 * ind as i128)
    } else {
        Quantity::with_surd(
            Rational::from_integer(q as i128),
            Rational::from_integer(-3),
            q,
        )
    };
    Ok(crk_at_least(id, rank, false, rhs))
}

/// `f = a x^{p^j}` for some `a` and `j`.
pub fn is_frobenius_monomial(field: &Field, f: &Func) -> bool {
    let a = f.at(Elem::ONE);
    let mut e: u64 = 1;
    for _ in 0..field.n() {
        if field
            .elements()
            .all(|x| f.at(x) == field.mul(a, field.pow(x, e)))
        {
            return true;
        }
        e *= field.p() as u64;
    }
    false
}

pub fn check_small_conjecture(m: &Measured<'_>) -> Result<BoundVerdict> {
    let id = BoundId::SmallConjecture;
    let field = m.field();
    if !m.func().at(Elem::ZERO).is_zero() {
        return Ok(BoundVerdict::not_applicable(id, "f(0) != 0"));
    }
    if is_frobenius_monomial(field, m.func()) {
        return Ok(BoundVerdict::not_applicable(id, "f = a x^(p^j)"));
    }
    let p = field.p();
    Ok(match m.mult_index() {
        None => BoundVerdict {
            id,
            outcome: Outcome::Holds,
            lhs: None,
            relation: Relation::Gt,
            rhs: Some(int(p)),
            note: Some("Ind undefined, counted as Ind > p".into()),
        },
        Some(ind) if ind > p => {
            BoundVerdict::compare(id, int(ind), Relation::Gt, int(p)).with_note("Ind > p")
        }
        Some(_) => BoundVerdict::compare(id, int(m.codim()?.add_index), Relation::Ge, int(p))
            .with_note("Ind <= p; AddInd >= p"),
    })
}

pub fn check_mobius_crk(m: &Measured<'_>) -> Result<BoundVerdict> {
    let id = BoundId::MobiusCrk;
    let rank = match rank_of(m)? {
        Ok(r) => r,
        Err(why) => return Ok(BoundVerdict::not_applicable(id, why)),
    };
    let Some(r) = rank.exact() else {
        return Ok(BoundVerdict::not_applicable(
            id,
            "exact Carlitz rank unavailable",
        ));
    };
    Ok(BoundVerdict::compare(
        id,
        int(m.mobius().crk_lower_bound),
        Relation::Le,
        int(r),
    ))
}

pub fn check_nonzero_values(m: &Measured<'_>) -> Result<BoundVerdict> {
    let id = BoundId::NonzeroValues;
    let field = m.field();
    match m.degree() {
        Degree::NegInfinity => return Ok(BoundVerdict::not_applicable(id, "zero polynomial")),
        Degree::Finite(d) if d + 2 > field.q() => {
            return Ok(BoundVerdict::not_applicable(id, "deg > q - 2"))
        }
        Degree::Finite(_) => {}
    }
    let count = poly::nonzero_value_count(field, m.poly())?;
    Ok(BoundVerdict::compare(
        id,
        int(count),
        Relation::Ge,
        ratio(field.q() - 1, m.weight()),
    ))
}

pub fn check_codim_oracle(m: &Measured<'_>) -> Result<BoundVerdict> {
    let id = BoundId::CodimOracle;
    if m.field().n() > 4 {
        return Ok(BoundVerdict::not_applicable(id, "oracle limited to n <= 4"));
    }
    let oracle = codimension_oracle(m.field(), m.func())?;
    Ok(BoundVerdict::compare(
        id,
        int(m.codim()?.codim),
        Relation::Eq,
        int(oracle),
    ))
}

/// Additive index of the inversion: 1 for `q ≤ 4`, `q` otherwise.
pub fn expected_inversion_index(q: u32) -> u64 {
    if q <= 4 {
        1
    } else {
        q as u64
    }
}

pub fn check_inversion(field: &Field) -> Result<BoundVerdict> {
    let inv = families::build(field, &Family::Inversion)?;
    let add = codimension(field, &inv)?.add_index;
    Ok(BoundVerdict::compare(
        BoundId::Inversion,
        int(add),
        Relation::Eq,
        int(expected_inversion_index(field.q())),
    ))
}

/// Samples `count` maps `(a x + b)^{q-2} + c`, `a != 0`, and counts how many
/// have the inversion's additive index.
pub fn check_rank_one_forms(field: &Field, count: u32, seed: u64) -> Result<BoundVerdict> {
    let q = field.q();
    let expected = expected_inversion_index(q);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut matching = 0u32;
    let mut first_miss = None;
    for _ in 0..count {
        let a = Elem(rng.gen_range(1..q));
        let b = Elem(rng.gen_range(0..q));
        let c = Elem(rng.gen_range(0..q));
        let f = Func::from_fn(field, |x| {
            field.add(field.inv(field.add(field.mul(a, x), b)), c)
        });
        let add = codimension(field, &f)?.add_index;
        if add == expected {
            matching += 1;
        } else if first_miss.is_none() {
            first_miss = Some((a, b, c, add));
        }
    }
    let v = BoundVerdict::compare(
        BoundId::InversionRankOne,
        int(matching),
        Relation::Eq,
        int(count),
    );
    Ok(match first_miss {
        Some((a, b, c, add)) => {
            v.with_note(format!("(a, b, c) = ({a}, {b}, {c}) has AddInd {add}"))
        }
        None => v.with_note(format!("all sampled forms have AddInd {expected}")),
    })
}

pub fn check_compo_subadditive(field: &Field, g: &Func, h: &Func) -> Result<BoundVerdict> {
    let cg = codimension(field, g)?.codim;
    let ch = codimension(field, h)?.codim;
    let cgh = codimension(field, &g.compose(h))?.codim;
    Ok(BoundVerdict::compare(
        BoundId::CompoSubadditive,
        int(cgh),
        Relation::Le,
        int(cg + ch),
    ))
}

/// `codim(post ∘ f ∘ pre) = codim f` for bijective F_p-affine `pre`, `post`.
pub fn check_compo_affine(
    field: &Field,
    f: &Func,
    pre: &Func,
    post: &Func,
) -> Result<BoundVerdict> {
    let cf = codimension(field, f)?.codim;
    let composed = post.compose(&f.compose(pre));
    let cc = codimension(field, &composed)?.codim;
    Ok(BoundVerdict::compare(
        BoundId::CompoAffine,
        int(cc),
        Relation::Eq,
        int(cf),
    ))
}

/// Degree, weight, additive index, Carlitz rank and multiplicative index of
/// the discrete-log permutation against their lower bounds.
pub fn check_dlog(field: &Field, options: MeasureOptions<'_>) -> Result<Vec<BoundVerdict>> {
    let f = families::build(field, &Family::Dlog)?;
    let m = Measured::new(field, &f, options);
    let (p, n, q) = (field.p() as i128, field.n(), field.q() as i128);
    let mut out = Vec::with_capacity(5);

    let deg = m.degree().finite().unwrap_or(0);
    out.push(BoundVerdict::lower_bound_on_nonneg(
        BoundId::DlogDeg,
        int(deg),
        false,
        int(q - q / p - 1),
    ));
    out.push(BoundVerdict::lower_bound_on_nonneg(
        BoundId::DlogWeight,
        int(m.weight()),
        false,
        int(q - q / p),
    ));
    out.push(BoundVerdict::lower_bound_on_nonneg(
        BoundId::DlogAddInd,
        int(m.codim()?.add_index),
        false,
        ratio(q, n + 2),
    ));

    out.push(if p == 2 {
        BoundVerdict::not_applicable(BoundId::DlogCrk, "p = 2")
    } else {
        let rank = m
            .carlitz()?
            .ok_or(Error::Internal("dlog is a permutation"))?;
        let radicand = (2 * p as u64).pow(n);
        let rhs = Quantity::with_surd(
            Rational::from_integer(q),
            Rational::from_integer(-3),
            radicand,
        );
        let v = crk_at_least(BoundId::DlogCrk, rank, false, rhs.clone());
        match (rank, rhs.signum()) {
            (CarlitzRank::LowerBound(_), Ordering::Greater) => v,
            (CarlitzRank::LowerBound(lb), _) => v.with_note(format!(
                "right side nonpositive; Möbius lower bound {lb} reported, exact rank not computed"
            )),
            (CarlitzRank::Exact(_), _) => v.with_note("exact rank by breadth-first search"),
        }
    });

    let ind = m
        .mult_index()
        .ok_or(Error::Internal("dlog index is defined"))?;
    out.push(BoundVerdict::lower_bound_on_nonneg(
        BoundId::DlogInd,
        int(ind),
        false,
        ratio(q - 1, 6),
    ));
    Ok(out)
}

/// Interpolation support of a cyclotomic mapping lies in `r + (q-1)/ℓ · Z`.
pub fn check_intpol_form(field: &Field, form: &CyclotomicForm) -> BoundVerdict {
    let modulus = ((field.q() - 1) / form.ell) as usize;
    let poly = poly::interpolate(field, &form.to_func(field));
    let r = form.r as usize % modulus;
    let stray: Vec<usize> = poly.support().filter(|&e| e % modulus != r).collect();
    let v = BoundVerdict::compare(
        BoundId::IntpolForm,
        int(stray.len() as i128),
        Relation::Eq,
        int(0),
    );
    match stray.first() {
        Some(e) => v.with_note(format!("exponent {e} outside r + {modulus}Z")),
        None => v,
    }
}

/// Mean weight `sum / count` against `q - 1`: exact equality over a full
/// space, within `1/2` for a sample.
pub fn check_mean_weight(
    field: &Field,
    weight_sum: u128,
    count: u64,
    exhaustive: bool,
) -> BoundVerdict {
    let id = BoundId::MeanWeight;
    if count == 0 {
        return BoundVerdict::not_applicable(id, "empty space");
    }
    let mean = Rational::new(weight_sum as i128, count as i128);
    let target = Rational::from_integer(field.q() as i128 - 1);
    if exhaustive {
        BoundVerdict::compare(
            id,
            Quantity::rational(mean),
            Relation::Eq,
            Quantity::rational(target),
        )
        .with_note("exact mean")
    } else {
        let dev = if mean > target {
            mean - target
        } else {
            target - mean
        };
        BoundVerdict::compare(id, Quantity::rational(dev), Relation::Le, ratio(1, 2)).with_note(
            format!("sampled mean {mean} over {count}; lhs is |mean - (q - 1)|"),
        )
    }
}

/// Exact mean weight over all `q^q` maps.
pub fn exact_mean_weight(field: &Field) -> Result<Rational> {
    let q = field.q() as u64;
    let total = q
        .checked_pow(q as u32)
        .filter(|&t| t <= 1 << 24)
        .ok_or(Error::SpaceTooLarge)?;
    let mut sum: i128 = 0;
    for i in 0..total {
        let f = super::Space::AllFunctions.function_at(field, i)?;
        sum += poly::interpolate(field, &f).weight() as i128;
    }
    Ok(Rational::new(sum, total as i128))
}

/// Grid of cyclotomic forms: every `ℓ | q - 1`, every `r` in `1..=(q-1)/ℓ`,
/// with seeded nonzero branch constants.
pub fn cyclotomic_grid(field: &Field, seed: u64) -> Vec<CyclotomicForm> {
    let q = field.q();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for ell in crate::field::divisors(q - 1) {
        for r in 1..=(q - 1) / ell {
            let branch_constants = (0..ell).map(|_| Elem(rng.gen_range(1..q))).collect();
            out.push(CyclotomicForm {
                ell,
                r,
                branch_constants,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::CarlitzTable;

    fn field(p: u32, n: u32) -> Field {
        Field::new(p, n, None).unwrap()
    }

    fn inversion(f: &Field) -> Func {
        Func::from_fn(f, |x| f.inv(x))
    }

    #[test]
    fn inversion_over_f7() {
        let f7 = field(7, 1);
        let inv = inversion(&f7);
        let m = Measured::new(&f7, &inv, MeasureOptions::default());

        let v = check_deg_crk(&m).unwrap();
        assert_eq!(v.outcome, Outcome::Holds);
        assert_eq!((v.lhs, v.rhs), (Some(int(1)), Some(int(1))));

        let v = check_weight_crk(&m).unwrap();
        assert_eq!(v.outcome, Outcome::NotApplicable);

        let v = check_crk_addind(&m).unwrap();
        assert_eq!(v.outcome, Outcome::Holds);
        assert_eq!(v.lhs, Some(int(7)));
        assert_eq!(v.rhs, Some(ratio(5, 2)));
    }

    #[test]
    fn weight_addind_values() {
        assert_eq!(weight_addind_bound(2, 4, 1), Some(5));
        assert_eq!(weight_addind_bound(3, 2, 0), Some(3));
        assert_eq!(weight_addind_bound(3, 3, 3), None);
        // m = 2, p = 3: (1 + 2 + 4)^2
        assert_eq!(weight_addind_bound(3, 3, 2), Some(49));
    }

    #[test]
    fn inversion_index() {
        for (p, n) in [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2)] {
            let f = field(p, n);
            assert_eq!(
                check_inversion(&f).unwrap().outcome,
                Outcome::Holds,
                "{p}^{n}"
            );
            assert_eq!(
                check_rank_one_forms(&f, 10, 1).unwrap().outcome,
                Outcome::Holds
            );
        }
    }

    #[test]
    fn dlog_f9_is_vacuous_with_exact_rank() {
        let f9 = field(3, 2);
        let table = CarlitzTable::build(&f9, None).unwrap();
        let opts = MeasureOptions {
            carlitz_table: Some(&table),
            ..Default::default()
        };
        let vs = check_dlog(&f9, opts).unwrap();
        assert_eq!(vs.len(), 5);
        for v in &vs {
            assert!(v.holds(), "{v:?}");
        }
        let crk = vs.iter().find(|v| v.id == BoundId::DlogCrk).unwrap();
        assert_eq!(crk.outcome, Outcome::HoldsVacuously);
        assert_eq!(crk.rhs, Some(int(-9)));
    }

    #[test]
    fn exceptional_forms() {
        let f7 = field(7, 1);
        let g = Func::from_fn(&f7, |x| f7.add(Elem(3), f7.mul(Elem(2), f7.inv(x))));
        assert!(is_inversion_form(&f7, &g));
        assert!(!is_inversion_form(&f7, &Func::identity(&f7)));
        let f9 = field(3, 2);
        let frob = Func::from_fn(&f9, |x| f9.mul(Elem(5), f9.pow(x, 3)));
        assert!(is_frobenius_monomial(&f9, &frob));
        assert!(!is_frobenius_monomial(&f9, &inversion(&f9)));
    }

    #[test]
    fn mean_weight_q3_is_exactly_two() {
        let f3 = field(3, 1);
        assert_eq!(exact_mean_weight(&f3).unwrap(), Rational::from_integer(2));
    }

    #[test]
    fn intpol_grid_f7() {
        let f7 = field(7, 1);
        for form in cyclotomic_grid(&f7, 3) {
            assert_eq!(
                check_intpol_form(&f7, &form).outcome,
                Outcome::Holds,
                "{form:?}"
            );
        }
    }

    #[test]
    fn line_agreement_counts_origin() {
        let f7 = field(7, 1);
        assert_eq!(line_hyperbola_agreement(&f7, &Func::identity(&f7)), 7);
        assert_eq!(line_hyperbola_agreement(&f7, &inversion(&f7)), 7);
    }
}
