//! Code and polynomial specifications given on the command line.
//!
//! A code spec is a catalog entry with `key=value` parameters
//! (`rm q=2 r=1 m=3`), a named code (`hamming8`), `file=PATH`, or a bare
//! path. Specs joined by `+` form a direct sum.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use wesym_core::code::{named_code, parse_code, projective_reed_muller, reed_muller, LinearCode, NamedCode, WeightEnumerator};
use wesym_core::gf::Field;
use wesym_core::wpoly::HomPoly;

use crate::CliError;

fn params(tokens: &[String]) -> Result<BTreeMap<&str, &str>, CliError> {
    tokens
        .iter()
        .map(|t| t.split_once('=').ok_or_else(|| CliError::Usage(format!("expected key=value, found `{t}`"))))
        .collect()
}

fn get<T: std::str::FromStr>(p: &BTreeMap<&str, &str>, key: &str, what: &str) -> Result<T, CliError> {
    let raw = p.get(key).ok_or_else(|| CliError::Usage(format!("{what} needs `{key}=`")))?;
    raw.parse().map_err(|_| CliError::Usage(format!("`{key}={raw}` is not a valid number")))
}

fn get_or<T: std::str::FromStr>(p: &BTreeMap<&str, &str>, key: &str, default: T, what: &str) -> Result<T, CliError> {
    if p.contains_key(key) {
        get(p, key, what)
    } else {
        Ok(default)
    }
}

fn field(q: u64) -> Result<Arc<Field>, CliError> {
    Ok(Arc::new(Field::with_order(q).map_err(wesym_core::code::CodeError::from)?))
}

fn read(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))
}

/// One summand of a code spec.
fn single_code(tokens: &[String]) -> Result<LinearCode, CliError> {
    let (head, rest) = tokens.split_first().ok_or_else(|| CliError::Usage("empty code spec".into()))?;
    if let Some(path) = head.strip_prefix("file=") {
        return Ok(parse_code(&read(path)?)?);
    }
    let p = params(rest)?;
    let code = match head.as_str() {
        "rm" => reed_muller(field(get(&p, "q", "rm")?)?, get(&p, "r", "rm")?, get(&p, "m", "rm")?)?,
        "prm" => projective_reed_muller(field(get(&p, "q", "prm")?)?, get(&p, "r", "prm")?, get(&p, "m", "prm")?)?,
        "repetition" => named_code(&NamedCode::Repetition { q: get(&p, "q", "repetition")?, n: get(&p, "n", "repetition")? })?,
        "zero" => LinearCode::zero(field(get(&p, "q", "zero")?)?, get(&p, "n", "zero")?),
        "full" => LinearCode::full_space(field(get(&p, "q", "full")?)?, get(&p, "n", "full")?),
        "pairs" => wesym_core::classify::pair_sum(field(get(&p, "q", "pairs")?)?, get(&p, "copies", "pairs")?)?,
        name => match name.parse::<NamedCode>() {
            Ok(named) if rest.is_empty() => named_code(&named)?,
            Ok(_) => return Err(CliError::Usage(format!("`{name}` takes no parameters"))),
            Err(_) if rest.is_empty() && Path::new(name).is_file() => parse_code(&read(name)?)?,
            Err(e) => return Err(e.into()),
        },
    };
    Ok(code)
}

pub fn parse_code_spec(tokens: &[String]) -> Result<LinearCode, CliError> {
    let mut parts = tokens.split(|t| t == "+");
    let first = single_code(parts.next().unwrap_or(&[]))?;
    parts.try_fold(first, |acc, part| Ok(acc.direct_sum(&single_code(part)?)?))
}

/// A polynomial source: a file in the polynomial text format, or one of the
/// built-in shapes `zero-code n=N`, `full-space q=Q n=N`,
/// `sum-of-pairs q=Q n=N`. Returns the form and the field order it implies.
pub fn parse_poly_spec(source: &str, tokens: &[String]) -> Result<(HomPoly, Option<u64>), CliError> {
    let p = params(tokens)?;
    let n = |what| get::<usize>(&p, "n", what);
    match source {
        "zero-code" => {
            // x^n is the enumerator of {0} over every field.
            let q = get_or(&p, "q", 2, source)?;
            Ok((HomPoly::from(&WeightEnumerator::zero_code(n(source)?)), Some(q)))
        }
        "full-space" => {
            let q = get(&p, "q", source)?;
            Ok((HomPoly::from(&WeightEnumerator::full_space(q, n(source)?)), Some(q)))
        }
        "sum-of-pairs" => {
            let q = get(&p, "q", source)?;
            let n = n(source)?;
            if n % 2 == 1 {
                return Err(CliError::Usage(format!("sum-of-pairs needs even n, found {n}")));
            }
            Ok((HomPoly::from(&WeightEnumerator::sum_of_pairs(q, n / 2)), Some(q)))
        }
        path => {
            if !tokens.is_empty() {
                return Err(CliError::Usage(format!("unexpected arguments after polynomial file `{path}`")));
            }
            Ok((HomPoly::parse(&read(path)?)?, None))
        }
    }
}

/// Integer, nonnegative coefficients as an enumerator.
pub fn as_enumerator(p: &HomPoly) -> Result<WeightEnumerator, CliError> {
    let ints = p.as_integers().ok_or_else(|| CliError::Usage("coefficients must be integers".into()))?;
    let counts = ints
        .iter()
        .map(|c| c.to_biguint().ok_or_else(|| CliError::Usage("coefficients must be nonnegative".into())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(WeightEnumerator::new(counts))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn catalog_specs() {
        let c = parse_code_spec(&toks("rm q=2 r=1 m=3")).unwrap();
        assert_eq!((c.len(), c.dim()), (8, 4));
        let c = parse_code_spec(&toks("repetition q=3 n=3 + repetition q=3 n=6")).unwrap();
        assert_eq!((c.len(), c.dim()), (9, 2));
        assert_eq!(parse_code_spec(&toks("golay24")).unwrap().dim(), 12);
        assert_eq!(parse_code_spec(&toks("X3")).unwrap().len(), 14);
    }

    #[test]
    fn bad_specs() {
        assert!(matches!(parse_code_spec(&toks("rm q=2 r=1")), Err(CliError::Usage(_))));
        assert!(matches!(parse_code_spec(&toks("rm q=2 r=x m=3")), Err(CliError::Usage(_))));
        assert!(matches!(parse_code_spec(&toks("hamming8 q=2")), Err(CliError::Usage(_))));
        assert!(parse_code_spec(&toks("nonesuch")).is_err());
    }

    #[test]
    fn poly_shapes() {
        let (p, q) = parse_poly_spec("zero-code", &toks("n=5")).unwrap();
        assert_eq!((p, q), (HomPoly::from_integers(&[1, 0, 0, 0, 0, 0]), Some(2)));
        let (p, _) = parse_poly_spec("sum-of-pairs", &toks("q=3 n=4")).unwrap();
        assert_eq!(p, HomPoly::from_integers(&[1, 0, 4, 0, 4]));
        assert!(parse_poly_spec("sum-of-pairs", &toks("q=3 n=3")).is_err());
    }
}
