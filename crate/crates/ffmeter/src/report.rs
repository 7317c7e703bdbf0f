//! JSON documents emitted by the CLI.
//!
//! Every document embeds the field (characteristic, degree, modulus, ζ and
//! λ encodings) so that element encodings in it can be decoded. Exact values
//! are serialised as strings (`"7/2"`, `"27 - 3*sqrt(216)"`).

use serde::Serialize;

use ffmeter_core::bounds::{
    BoundTally, BoundVerdict, Extremal, Quantity, Rational, Space, SweepStats,
};
use ffmeter_core::measures::{
    AdditiveDecomposition, CarlitzCertificate, CarlitzRank, CyclotomicForm, MeasureReport,
    MobiusFit,
};
use ffmeter_core::{Degree, Elem, Field, Func, LinearisedPoly, Poly};

use crate::runner::{FieldCheck, VerifyOutcome};

fn encodings(elems: &[Elem]) -> Vec<u32> {
    elems.iter().map(|e| e.0).collect()
}

pub fn coeffs_spec(poly: &Poly) -> String {
    let body: Vec<String> = poly.coeffs().iter().map(|c| c.0.to_string()).collect();
    format!("coeffs:{}", body.join(","))
}

#[derive(Debug, Serialize)]
pub struct FieldJson {
    pub p: u32,
    pub n: u32,
    pub q: u32,
    /// Low-to-high coefficients of the defining polynomial.
    pub modulus: Vec<u32>,
    pub zeta: u32,
    pub lambda: u32,
}

impl From<&Field> for FieldJson {
    fn from(f: &Field) -> FieldJson {
        FieldJson {
            p: f.p(),
            n: f.n(),
            q: f.q(),
            modulus: f.modulus().to_vec(),
            zeta: f.zeta().0,
            lambda: f.lambda().0,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct FieldInfoJson {
    pub field: FieldJson,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum DegreeJson {
    Finite(u32),
    NegInfinity(&'static str),
}

impl From<Degree> for DegreeJson {
    fn from(d: Degree) -> DegreeJson {
        match d {
            Degree::Finite(v) => DegreeJson::Finite(v),
            Degree::NegInfinity => DegreeJson::NegInfinity("-inf"),
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RankJson {
    Exact(u32),
    LowerBound(u32),
}

impl From<CarlitzRank> for RankJson {
    fn from(r: CarlitzRank) -> RankJson {
        match r {
            CarlitzRank::Exact(v) => RankJson::Exact(v),
            CarlitzRank::LowerBound(v) => RankJson::LowerBound(v),
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum IndexJson {
    Value(u32),
    Undefined(&'static str),
}

#[derive(Debug, Serialize)]
pub struct MobiusJson {
    pub alpha: u32,
    pub beta: u32,
    pub gamma: u32,
    pub delta: u32,
    pub agreement: u32,
}

impl From<&MobiusFit> for MobiusJson {
    fn from(m: &MobiusFit) -> MobiusJson {
        MobiusJson {
            alpha: m.best.alpha.0,
            beta: m.best.beta.0,
            gamma: m.best.gamma.0,
            delta: m.best.delta.0,
            agreement: m.agreement,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CyclotomicJson {
    pub ell: u32,
    pub r: u32,
    pub branch_constants: Vec<u32>,
}

impl From<&CyclotomicForm> for CyclotomicJson {
    fn from(c: &CyclotomicForm) -> CyclotomicJson {
        CyclotomicJson {
            ell: c.ell,
            r: c.r,
            branch_constants: encodings(&c.branch_constants),
        }
    }
}

#[derive(Debug, Default, Serialize)]
pub struct CertificatesJson {
    /// Parameters `a_0..a_{r+1}` of the nested inversion form.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub carlitz: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mobius: Option<MobiusJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cyclotomic: Option<CyclotomicJson>,
}

#[derive(Debug, Serialize)]
pub struct MeasureJson {
    pub field: FieldJson,
    pub table: Vec<u32>,
    pub poly: String,
    pub degree: DegreeJson,
    pub weight: u32,
    pub codim: u32,
    pub add_index: u64,
    pub is_permutation: bool,
    pub carlitz_rank: Option<RankJson>,
    pub mobius_lower_bound: Option<u32>,
    pub mult_index: IndexJson,
    pub certificates: CertificatesJson,
}

impl MeasureJson {
    pub fn new(
        field: &Field,
        f: &Func,
        poly: &Poly,
        report: &MeasureReport,
        certificates: CertificatesJson,
    ) -> Self {
        MeasureJson {
            field: field.into(),
            table: encodings(f.table()),
            poly: coeffs_spec(poly),
            degree: report.degree.into(),
            weight: report.weight,
            codim: report.codim,
            add_index: report.add_index,
            is_permutation: report.is_permutation,
            carlitz_rank: report.carlitz_rank.map(RankJson::from),
            mobius_lower_bound: report.mobius_lower_bound,
            mult_index: match report.mult_index {
                Some(v) => IndexJson::Value(v),
                None => IndexJson::Undefined("undefined"),
            },
            certificates,
        }
    }
}

pub fn carlitz_params(cert: &CarlitzCertificate) -> Vec<u32> {
    encodings(&cert.params)
}

#[derive(Debug, Serialize)]
pub struct CosetJson {
    pub representative: u32,
    pub constant: u32,
}

#[derive(Debug, Serialize)]
pub struct DecomposeJson {
    pub field: FieldJson,
    pub table: Vec<u32>,
    pub codim: u32,
    pub add_index: u64,
    /// Canonical echelon basis of the period subspace.
    pub period_subspace: Vec<u32>,
    /// Coefficients of `X, X^p, X^{p^2}, ...`.
    pub kernel_poly: Vec<u32>,
    pub linear_part: Vec<u32>,
    pub outer: String,
    pub cosets: Vec<CosetJson>,
}

fn linearised(l: &LinearisedPoly) -> Vec<u32> {
    encodings(l.coeffs())
}

impl DecomposeJson {
    pub fn new(field: &Field, f: &Func, d: &AdditiveDecomposition) -> DecomposeJson {
        DecomposeJson {
            field: field.into(),
            table: encodings(f.table()),
            codim: d.codim,
            add_index: (field.p() as u64).pow(d.codim),
            period_subspace: encodings(d.period_subspace.basis()),
            kernel_poly: linearised(&d.kernel_poly),
            linear_part: linearised(&d.linear_part),
            outer: coeffs_spec(&d.outer),
            cosets: d
                .coset_constants
                .iter()
                .map(|&(r, c)| CosetJson {
                    representative: r.0,
                    constant: c.0,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct FamilyJson {
    pub field: FieldJson,
    pub family: String,
    pub table: Vec<u32>,
    pub poly: String,
    pub is_permutation: bool,
}

fn quantity(q: &Option<Quantity>) -> Option<String> {
    q.as_ref().map(|q| q.to_string())
}

#[derive(Debug, Serialize)]
pub struct VerdictJson {
    pub id: &'static str,
    pub outcome: &'static str,
    pub applicable: bool,
    pub holds: bool,
    pub lhs: Option<String>,
    pub relation: &'static str,
    pub rhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl From<&BoundVerdict> for VerdictJson {
    fn from(v: &BoundVerdict) -> VerdictJson {
        VerdictJson {
            id: v.id.as_str(),
            outcome: v.outcome.as_str(),
            applicable: v.applicable(),
            holds: v.holds(),
            lhs: quantity(&v.lhs),
            relation: v.relation.symbol(),
            rhs: quantity(&v.rhs),
            note: v.note.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct WitnessJson {
    pub table: Vec<u32>,
    pub verdict: VerdictJson,
}

#[derive(Debug, Serialize)]
pub struct ExtremalJson {
    pub codim: u32,
    pub add_index: u64,
    pub min_deg_times_add_index: u64,
    pub count_at_min: u64,
    pub attains_q: bool,
    pub witness: Vec<u32>,
}

impl ExtremalJson {
    fn new(field: &Field, e: &Extremal) -> ExtremalJson {
        ExtremalJson {
            codim: e.codim,
            add_index: (field.p() as u64).pow(e.codim),
            min_deg_times_add_index: e.min_product,
            count_at_min: e.count_at_min,
            attains_q: e.min_product == field.q() as u64,
            witness: encodings(&e.witness),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct BoundJson {
    pub id: &'static str,
    pub scope: &'static str,
    pub provisional: bool,
    pub evaluated: u64,
    pub applicable: u64,
    pub holds: u64,
    pub holds_vacuously: u64,
    pub violations: u64,
    pub undecided: u64,
    pub witness: Option<WitnessJson>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub verdicts: Vec<VerdictJson>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub extremal: Vec<ExtremalJson>,
}

impl BoundJson {
    fn new(t: &BoundTally, scope: &'static str) -> BoundJson {
        BoundJson {
            id: t.id.as_str(),
            scope,
            provisional: t.id.is_provisional(),
            evaluated: t.evaluated,
            applicable: t.applicable,
            holds: t.holds,
            holds_vacuously: t.vacuous,
            violations: t.violations,
            undecided: t.undecided,
            witness: t.witness.as_ref().map(|w| WitnessJson {
                table: encodings(&w.table),
                verdict: (&w.verdict).into(),
            }),
            verdicts: Vec::new(),
            extremal: Vec::new(),
        }
    }

    fn field_level(c: &FieldCheck) -> BoundJson {
        BoundJson {
            verdicts: c.verdicts.iter().map(VerdictJson::from).collect(),
            ..BoundJson::new(&c.tally, "field")
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SpaceJson {
    pub name: &'static str,
    pub size: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl SpaceJson {
    pub fn new(space: &Space, size: u64) -> SpaceJson {
        let seed = match space {
            Space::Sample { seed, .. } | Space::SamplePermutations { seed, .. } => Some(*seed),
            _ => None,
        };
        SpaceJson {
            name: space.name(),
            size,
            seed,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CodimCountJson {
    pub codim: u32,
    pub add_index: u64,
    pub count: u64,
}

#[derive(Debug, Serialize)]
pub struct StatsJson {
    pub functions: u64,
    pub permutations: u64,
    pub weight_sum: String,
    /// Exact mean as a reduced fraction.
    pub mean_weight: Option<String>,
    pub codim_distribution: Vec<CodimCountJson>,
    /// Smallest `deg * AddInd` among maps with `AddInd > 1`.
    pub min_deg_times_add_index: Option<u64>,
    pub min_attains_q: Option<bool>,
}

impl StatsJson {
    fn new(field: &Field, s: &SweepStats, min_product: Option<u64>) -> StatsJson {
        let mean = (s.functions > 0)
            .then(|| Rational::new(s.weight_sum as i128, s.functions as i128).to_string());
        StatsJson {
            functions: s.functions,
            permutations: s.permutations,
            weight_sum: s.weight_sum.to_string(),
            mean_weight: mean,
            codim_distribution: s
                .codim_histogram
                .iter()
                .map(|(&codim, &count)| CodimCountJson {
                    codim,
                    add_index: (field.p() as u64).pow(codim),
                    count,
                })
                .collect(),
            min_deg_times_add_index: min_product,
            min_attains_q: min_product.map(|m| m == field.q() as u64),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SweepReportJson {
    pub field: FieldJson,
    pub space: SpaceJson,
    pub bounds: Vec<BoundJson>,
    pub stats: StatsJson,
    pub violations: u64,
    pub exit_code: i32,
}

impl SweepReportJson {
    pub fn new(field: &Field, space: &Space, out: &VerifyOutcome) -> SweepReportJson {
        let mut bounds: Vec<BoundJson> = out
            .sweep
            .tallies
            .iter()
            .map(|t| BoundJson::new(t, "function"))
            .collect();
        if let Some(b) = bounds.iter_mut().find(|b| b.id == "deg_addind") {
            b.extremal = out
                .sweep
                .extremal
                .values()
                .map(|e| ExtremalJson::new(field, e))
                .collect();
        }
        bounds.extend(out.field_checks.iter().map(BoundJson::field_level));
        SweepReportJson {
            field: field.into(),
            space: SpaceJson::new(space, out.space_len),
            violations: out
                .tallies()
                .filter(|t| !t.id.is_provisional())
                .map(|t| t.violations)
                .sum(),
            bounds,
            stats: StatsJson::new(field, &out.sweep.stats, out.sweep.overall_min_product()),
            exit_code: out.exit_code(),
        }
    }

    /// Extremal records for the CSV table.
    pub fn extremal_rows(field: &Field, out: &VerifyOutcome) -> Vec<ExtremalJson> {
        out.sweep
            .extremal
            .values()
            .map(|e| ExtremalJson::new(field, e))
            .collect()
    }
}
