//! Parsers for the command-line grammar: fields, functions, families,
//! spaces and bound lists.

use ffmeter_core::bounds::{BoundId, Space};
use ffmeter_core::families::{self, Family};
use ffmeter_core::field::{is_prime, prime_factors};
use ffmeter_core::{Elem, Field, Func, Poly, Subspace};

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("{0}")]
    Syntax(String),
    #[error(transparent)]
    Core(#[from] ffmeter_core::Error),
}

type Result<T> = std::result::Result<T, ParseError>;

fn syntax<T>(msg: impl Into<String>) -> Result<T> {
    Err(ParseError::Syntax(msg.into()))
}

fn parse_u32(s: &str, what: &str) -> Result<u32> {
    s.trim()
        .parse()
        .map_err(|_| ParseError::Syntax(format!("invalid {what} `{s}`")))
}

fn parse_u64(s: &str, what: &str) -> Result<u64> {
    s.trim()
        .parse()
        .map_err(|_| ParseError::Syntax(format!("invalid {what} `{s}`")))
}

fn parse_list(s: &str, what: &str) -> Result<Vec<u32>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|v| parse_u32(v, what)).collect()
}

fn elems(field: &Field, values: &[u32]) -> Result<Vec<Elem>> {
    values
        .iter()
        .map(|&v| field.elem(v).map_err(ParseError::from))
        .collect()
}

/// `p^n` (or a bare prime `p`), with an optional comma-separated modulus
/// `c0,...,cn`.
pub fn parse_field(spec: &str, modulus: Option<&str>) -> Result<Field> {
    let (p, n) = match spec.split_once('^') {
        Some((p, n)) => (
            parse_u32(p, "characteristic")?,
            parse_u32(n, "extension degree")?,
        ),
        None => (parse_u32(spec, "characteristic")?, 1),
    };
    if !is_prime(p) {
        let factors = if p > 1 { prime_factors(p) } else { Vec::new() };
        return match factors.as_slice() {
            [r] => {
                let k = (1..).find(|&k| r.pow(k) == p).unwrap_or(1);
                syntax(format!("{p} is not prime; write {r}^{}", k * n))
            }
            _ => syntax(format!("{p} is not prime")),
        };
    }
    let modulus = modulus
        .map(|m| parse_list(m, "modulus coefficient"))
        .transpose()?;
    Ok(Field::new(p, n, modulus.as_deref())?)
}

/// `table:v0,...`, `coeffs:a0,...` or `family:name[:params]`.
pub fn parse_func(field: &Field, spec: &str) -> Result<Func> {
    let Some((kind, rest)) = spec.split_once(':') else {
        return syntax(format!(
            "function spec `{spec}` needs a `table:`, `coeffs:` or `family:` prefix"
        ));
    };
    match kind {
        "table" => {
            let values = elems(field, &parse_list(rest, "table value")?)?;
            Ok(Func::from_table(field, values)?)
        }
        "coeffs" => {
            let coeffs = elems(field, &parse_list(rest, "coefficient")?)?;
            Ok(Poly::from_coeffs(coeffs).to_func(field))
        }
        "family" => Ok(families::build(field, &parse_family(field, rest)?)?),
        other => syntax(format!("unknown function spec prefix `{other}`")),
    }
}

fn parse_span(field: &Field, params: &str) -> Result<Subspace> {
    let Some(list) = params.strip_prefix("span=") else {
        return syntax(format!("expected `span=v1,v2,...`, got `{params}`"));
    };
    Ok(Subspace::span(
        field,
        &elems(field, &parse_list(list, "span vector")?)?,
    ))
}

fn parse_seed(params: &str) -> Result<u64> {
    parse_u64(params.strip_prefix("seed=").unwrap_or(params), "seed")
}

/// `name[:params]`.
pub fn parse_family(field: &Field, spec: &str) -> Result<Family> {
    let (name, params) = spec.split_once(':').unwrap_or((spec, ""));
    let no_params = |family: Family| {
        if params.is_empty() {
            Ok(family)
        } else {
            syntax(format!("family `{name}` takes no parameters"))
        }
    };
    match name {
        "identity" => no_params(Family::Identity),
        "inversion" => no_params(Family::Inversion),
        "dlog" => no_params(Family::Dlog),
        "affine" => match elems(field, &parse_list(params, "parameter")?)?.as_slice() {
            &[a, b] => Ok(Family::Affine { a, b }),
            _ => syntax("affine takes `a,b`"),
        },
        "monomial" => match params.split_once(',') {
            Some((a, r)) => Ok(Family::Monomial {
                a: field.elem(parse_u32(a, "coefficient")?)?,
                r: parse_u64(r, "exponent")?,
            }),
            None => syntax("monomial takes `a,r`"),
        },
        "carlitz" => Ok(Family::Carlitz(elems(
            field,
            &parse_list(params, "parameter")?,
        )?)),
        "cyclotomic" => {
            let values = parse_list(params, "parameter")?;
            if values.len() < 3 {
                return syntax("cyclotomic takes `ell,r,a_0,...,a_{ell-1}`");
            }
            Ok(Family::Cyclotomic {
                ell: values[0],
                r: values[1],
                constants: elems(field, &values[2..])?,
            })
        }
        "indicator" => Ok(Family::Indicator(parse_span(field, params)?)),
        "subspace_poly" => Ok(Family::SubspacePoly(parse_span(field, params)?)),
        "random_func" => Ok(Family::RandomFunc {
            seed: parse_seed(params)?,
        }),
        "random_perm" => Ok(Family::RandomPerm {
            seed: parse_seed(params)?,
        }),
        other => syntax(format!("unknown family `{other}`")),
    }
}

/// `all-funcs`, `all-perms`, `zero-fixing`, `zero-fixing-nonvanishing`,
/// `zero-fixing-perms`, `sample:COUNT:SEED`, `sample-perms:COUNT:SEED`.
pub fn parse_space(spec: &str) -> Result<Space> {
    let sampled = |rest: &str| -> Result<(u64, u64)> {
        match rest.split_once(':') {
            Some((count, seed)) => {
                Ok((parse_u64(count, "sample count")?, parse_u64(seed, "seed")?))
            }
            None => syntax(format!("expected COUNT:SEED, got `{rest}`")),
        }
    };
    if let Some(rest) = spec.strip_prefix("sample-perms:") {
        let (count, seed) = sampled(rest)?;
        return Ok(Space::SamplePermutations { count, seed });
    }
    if let Some(rest) = spec.strip_prefix("sample:") {
        let (count, seed) = sampled(rest)?;
        return Ok(Space::Sample { count, seed });
    }
    match spec {
        "all-funcs" => Ok(Space::AllFunctions),
        "all-perms" => Ok(Space::AllPermutations),
        "zero-fixing" => Ok(Space::ZeroFixing),
        "zero-fixing-nonvanishing" => Ok(Space::ZeroFixingNonvanishing),
        "zero-fixing-perms" => Ok(Space::ZeroFixingPermutations),
        other => syntax(format!("unknown space `{other}`")),
    }
}

/// `all`, `none`, or a comma-separated list of bound ids.
pub fn parse_bounds(spec: &str) -> Result<Vec<BoundId>> {
    match spec {
        "all" => Ok(BoundId::PER_FUNCTION
            .iter()
            .chain(BoundId::FIELD_LEVEL.iter())
            .copied()
            .collect()),
        "none" | "" => Ok(Vec::new()),
        list => {
            let mut ids: Vec<BoundId> = list
                .split(',')
                .map(|s| s.trim().parse::<BoundId>().map_err(ParseError::Syntax))
                .collect::<Result<_>>()?;
            ids.sort();
            ids.dedup();
            Ok(ids)
        }
    }
}
