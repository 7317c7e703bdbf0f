//! Verification harness for the inequalities relating the measures.
//!
//! Each check produces a [`BoundVerdict`]. Inapplicability is a verdict of
//! its own, never a silent skip, and every comparison is exact.

mod checks;
mod quantity;
mod sweep;

pub use checks::*;
pub use quantity::{Quantity, Rational};
pub use sweep::*;

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

/// Identifier of a checked statement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoundId {
    /// `Crk ≥ q - deg - 1` for `deg > 1`.
    DegCrk,
    /// `Crk > q/(w + 2)` away from `a + b x^{q-2}`.
    WeightCrk,
    /// `AddInd > q/(Crk + 1) - 1` for non-linearised permutations of `deg > 1`.
    CrkAddInd,
    /// `AddInd ≥ min{q/r, (q - 2r)/2}`; provisional.
    CrkAddIndMin,
    /// `deg · AddInd ≥ q` for `AddInd > 1`.
    DegAddInd,
    /// Weight bounded in terms of the codimension.
    WeightAddInd,
    /// `deg ≥ (q - 1)/Ind` for `Ind > 1`.
    IndDeg,
    /// `w ≤ Ind`.
    IndWeight,
    /// `Crk ≥ q - 3 max{Ind, √q}` away from lines and hyperbolas.
    IndCrk,
    /// `Ind > p` or `AddInd ≥ p` unless `f = a x^{p^j}`.
    SmallConjecture,
    /// `q - (Möbius agreement) ≤ Crk`.
    MobiusCrk,
    /// At least `(q - 1)/w` nonzero values on `F_q^*`.
    NonzeroValues,
    /// Period-subspace codimension equals the enumeration oracle.
    CodimOracle,
    /// `AddInd(x^{q-2})` is 1 for `q ≤ 4`, else `q`.
    Inversion,
    /// Same index for sampled `(ax + b)^{q-2} + c`.
    InversionRankOne,
    /// `codim(g∘h) ≤ codim g + codim h`.
    CompoSubadditive,
    /// Codimension unchanged by bijective F_p-affine pre/post-composition.
    CompoAffine,
    DlogDeg,
    DlogWeight,
    DlogAddInd,
    DlogCrk,
    DlogInd,
    /// Interpolation support of a cyclotomic mapping lies in `r + (q-1)/ℓ · Z`.
    IntpolForm,
    /// Mean weight over all maps equals `q - 1`.
    MeanWeight,
}

impl BoundId {
    /// Statements checked once per function of a sweep.
    pub const PER_FUNCTION: [BoundId; 13] = [
        BoundId::DegCrk,
        BoundId::WeightCrk,
        BoundId::CrkAddInd,
        BoundId::CrkAddIndMin,
        BoundId::DegAddInd,
        BoundId::WeightAddInd,
        BoundId::IndDeg,
        BoundId::IndWeight,
        BoundId::IndCrk,
        BoundId::SmallConjecture,
        BoundId::MobiusCrk,
        BoundId::NonzeroValues,
        BoundId::CodimOracle,
    ];

    /// Statements checked once per field.
    pub const FIELD_LEVEL: [BoundId; 11] = [
        BoundId::Inversion,
        BoundId::InversionRankOne,
        BoundId::CompoSubadditive,
        BoundId::CompoAffine,
        BoundId::DlogDeg,
        BoundId::DlogWeight,
        BoundId::DlogAddInd,
        BoundId::DlogCrk,
        BoundId::DlogInd,
        BoundId::IntpolForm,
        BoundId::MeanWeight,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundId::DegCrk => "deg_crk",
            BoundId::WeightCrk => "weight_crk",
            BoundId::CrkAddInd => "crk_addind",
            BoundId::CrkAddIndMin => "crk_addind_min",
            BoundId::DegAddInd => "deg_addind",
            BoundId::WeightAddInd => "weight_addind",
            BoundId::IndDeg => "ind_deg",
            BoundId::IndWeight => "ind_weight",
            BoundId::IndCrk => "ind_crk",
            BoundId::SmallConjecture => "small_conjecture",
            BoundId::MobiusCrk => "mobius_crk",
            BoundId::NonzeroValues => "nonzero_values",
            BoundId::CodimOracle => "codim_oracle",
            BoundId::Inversion => "inversion",
            BoundId::InversionRankOne => "inversion_rank1",
            BoundId::CompoSubadditive => "compo_subadditive",
            BoundId::CompoAffine => "compo_affine",
            BoundId::DlogDeg => "dlog_deg",
            BoundId::DlogWeight => "dlog_weight",
            BoundId::DlogAddInd => "dlog_addind",
            BoundId::DlogCrk => "dlog_crk",
            BoundId::DlogInd => "dlog_ind",
            BoundId::IntpolForm => "intpol_form",
            BoundId::MeanWeight => "mean_weight",
        }
    }

    /// Provisional statements are reported as findings; their violations do
    /// not count as failures.
    pub fn is_provisional(self) -> bool {
        matches!(self, BoundId::CrkAddIndMin)
    }

    pub fn is_per_function(self) -> bool {
        BoundId::PER_FUNCTION.contains(&self)
    }

    /// Whether the check needs the Carlitz rank.
    pub fn needs_carlitz(self) -> bool {
        matches!(
            self,
            BoundId::DegCrk
                | BoundId::WeightCrk
                | BoundId::CrkAddInd
                | BoundId::CrkAddIndMin
                | BoundId::IndCrk
                | BoundId::MobiusCrk
                | BoundId::DlogCrk
        )
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundId {
    type Err = String;

    fn from_str(s: &str) -> Result<BoundId, String> {
        BoundId::PER_FUNCTION
            .iter()
            .chain(BoundId::FIELD_LEVEL.iter())
            .copied()
            .find(|b| b.as_str() == s)
            .ok_or_else(|| alloc::format!("unknown bound id `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Ge,
    Gt,
    Le,
    Lt,
    Eq,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Ge => ">=",
            Relation::Gt => ">",
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Eq => "==",
        }
    }

    pub fn accepts(self, ord: Ordering) -> bool {
        match self {
            Relation::Ge => ord != Ordering::Less,
            Relation::Gt => ord == Ordering::Greater,
            Relation::Le => ord != Ordering::Greater,
            Relation::Lt => ord == Ordering::Less,
            Relation::Eq => ord == Ordering::Equal,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Holds,
    /// Holds for every possible value of the left side (e.g. a nonnegative
    /// measure against a negative bound).
    HoldsVacuously,
    Violated,
    NotApplicable,
    /// Applicable, but only a bound on the measure is available and it does
    /// not settle the comparison.
    Undecided,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Holds => "holds",
            Outcome::HoldsVacuously => "holds_vacuously",
            Outcome::Violated => "violated",
            Outcome::NotApplicable => "not_applicable",
            Outcome::Undecided => "undecided",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundVerdict {
    pub id: BoundId,
    pub outcome: Outcome,
    pub lhs: Option<Quantity>,
    pub relation: Relation,
    pub rhs: Option<Quantity>,
    pub note: Option<String>,
}

impl BoundVerdict {
    pub fn not_applicable(id: BoundId, reason: &str) -> BoundVerdict {
        BoundVerdict {
            id,
            outcome: Outcome::NotApplicable,
            lhs: None,
            relation: Relation::Ge,
            rhs: None,
            note: Some(reason.into()),
        }
    }

    /// Compares `lhs relation rhs` exactly.
    pub fn compare(id: BoundId, lhs: Quantity, relation: Relation, rhs: Quantity) -> BoundVerdict {
        let ord = lhs
            .cmp_exact(&rhs)
            .expect("bound sides share at most one radicand");
        BoundVerdict {
            id,
            outcome: if relation.accepts(ord) {
                Outcome::Holds
            } else {
                Outcome::Violated
            },
            lhs: Some(lhs),
            relation,
            rhs: Some(rhs),
            note: None,
        }
    }

    /// Lower bound on a nonnegative measure: `rhs ≤ 0` (or `< 0` when strict)
    /// holds vacuously.
    pub fn lower_bound_on_nonneg(
        id: BoundId,
        lhs: Quantity,
        strict: bool,
        rhs: Quantity,
    ) -> BoundVerdict {
        let relation = if strict { Relation::Gt } else { Relation::Ge };
        let mut v = BoundVerdict::compare(id, lhs, relation, rhs.clone());
        let trivial = match rhs.signum() {
            Ordering::Less => true,
            Ordering::Equal => !strict,
            Ordering::Greater => false,
        };
        if trivial {
            v.outcome = Outcome::HoldsVacuously;
        }
        v
    }

    pub fn with_note(mut self, note: impl Into<String>) -> BoundVerdict {
        self.note = Some(note.into());
        self
    }

    pub fn applicable(&self) -> bool {
        self.outcome != Outcome::NotApplicable
    }

    /// True unless violated or undecided; vacuously true when not applicable.
    pub fn holds(&self) -> bool {
        matches!(
            self.outcome,
            Outcome::Holds | Outcome::HoldsVacuously | Outcome::NotApplicable
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_roundtrip() {
        for id in BoundId::PER_FUNCTION.iter().chain(&BoundId::FIELD_LEVEL) {
            assert_eq!(id.as_str().parse::<BoundId>().unwrap(), *id);
        }
        assert!("nope".parse::<BoundId>().is_err());
    }

    #[test]
    fn vacuity() {
        let v = BoundVerdict::lower_bound_on_nonneg(
            BoundId::DlogCrk,
            Quantity::int(3),
            false,
            Quantity::int(-9),
        );
        assert_eq!(v.outcome, Outcome::HoldsVacuously);
        assert!(v.holds() && v.applicable());
        let v = BoundVerdict::lower_bound_on_nonneg(
            BoundId::DegCrk,
            Quantity::int(0),
            true,
            Quantity::int(0),
        );
        assert_eq!(v.outcome, Outcome::Violated);
        let na = BoundVerdict::not_applicable(BoundId::DegCrk, "deg <= 1");
        assert!(na.holds() && !na.applicable());
    }
}
