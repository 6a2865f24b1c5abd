//! Parsers for the CLI literals: field words `w:e1 w:e2`, patterns
//! `a:e1 c:e2`, and Wick monomials `<n>; <pairs>; <free>` with free points
//! as `pos:e<k>`.

use bp2_core::kernel::Scalar;
use bp2_core::wick::{CAPattern, LabelAssignment, LabelVec, OpKind, WickMonomial};

#[derive(Debug)]
pub struct ParseFail(pub String);

impl ParseFail {
    pub fn from_err(e: impl std::fmt::Display) -> Self {
        ParseFail(e.to_string())
    }
}

fn parse_basis_label(tok: &str) -> Result<usize, ParseFail> {
    let idx = tok
        .strip_prefix('e')
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&i| i >= 1)
        .ok_or_else(|| ParseFail(format!("bad label {tok:?}: expected e<k> with k >= 1")))?;
    Ok(idx - 1)
}

/// `w:e1 w:e1 ...` -> basis label vectors in the smallest common dimension.
pub fn parse_field_word(s: &str) -> Result<Vec<LabelVec>, ParseFail> {
    let mut indices = Vec::new();
    for tok in s.split_whitespace() {
        let label = tok
            .strip_prefix("w:")
            .ok_or_else(|| ParseFail(format!("bad field token {tok:?}: expected w:e<k>")))?;
        indices.push(parse_basis_label(label)?);
    }
    let dim = indices.iter().map(|&i| i + 1).max().unwrap_or(1);
    Ok(indices
        .into_iter()
        .map(|i| LabelVec::basis(dim, i))
        .collect())
}

/// `a:e1 c:e2 ...` -> creation/annihilation pattern (a = annihilate,
/// c = create).
pub fn parse_pattern(s: &str) -> Result<CAPattern, ParseFail> {
    let mut ops = Vec::new();
    for tok in s.split_whitespace() {
        let (kind, label) = match tok.split_once(':') {
            Some(("a", l)) => (OpKind::Annihilate, l),
            Some(("c", l)) => (OpKind::Create, l),
            _ => {
                return Err(ParseFail(format!(
                    "bad pattern token {tok:?}: expected a:e<k> or c:e<k>"
                )))
            }
        };
        ops.push((kind, parse_basis_label(label)?));
    }
    let dim = ops.iter().map(|&(_, i)| i + 1).max().unwrap_or(1);
    Ok(CAPattern(
        ops.into_iter()
            .map(|(k, i)| (k, LabelVec::basis(dim, i)))
            .collect(),
    ))
}

/// `<n>; <pairs>; <free>` where `<pairs>` is a pair-partition-style literal
/// on a subset (possibly `()`), and `<free>` lists `pos:e<k>` tokens.
/// Example: `4; (1,2); 3:e1 4:e1`.
pub fn parse_wick_monomial(s: &str) -> Result<WickMonomial, ParseFail> {
    let parts: Vec<&str> = s.splitn(3, ';').collect();
    if parts.len() != 3 {
        return Err(ParseFail(format!(
            "bad monomial {s:?}: expected '<n>; <pairs>; <free>'"
        )));
    }
    let n: u32 = parts[0]
        .trim()
        .parse()
        .map_err(|_| ParseFail(format!("bad ground size {:?}", parts[0])))?;
    let pairs_text: String = parts[1].chars().filter(|c| !c.is_whitespace()).collect();
    let mut pairs = Vec::new();
    if !pairs_text.is_empty() && pairs_text != "()" {
        let mut rest = pairs_text.as_str();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| ParseFail("expected '(' in pairs".into()))?;
            let close = body
                .find(')')
                .ok_or_else(|| ParseFail("missing ')' in pairs".into()))?;
            let (l, r) = body[..close]
                .split_once(',')
                .ok_or_else(|| ParseFail("pair must be 'l,r'".into()))?;
            pairs.push((
                l.parse()
                    .map_err(|_| ParseFail("bad pair endpoint".into()))?,
                r.parse()
                    .map_err(|_| ParseFail("bad pair endpoint".into()))?,
            ));
            rest = &body[close + 1..];
        }
    }
    let mut labeled: Vec<(u32, usize)> = Vec::new();
    for tok in parts[2].split_whitespace() {
        let (pos, label) = tok
            .split_once(':')
            .ok_or_else(|| ParseFail(format!("bad free token {tok:?}: expected pos:e<k>")))?;
        let pos: u32 = pos
            .parse()
            .map_err(|_| ParseFail(format!("bad free position {pos:?}")))?;
        labeled.push((pos, parse_basis_label(label)?));
    }
    labeled.sort_by_key(|&(p, _)| p);
    let dim = labeled.iter().map(|&(_, i)| i + 1).max().unwrap_or(1);
    let points: Vec<u32> = labeled.iter().map(|&(p, _)| p).collect();
    let labels: Vec<LabelVec> = labeled
        .iter()
        .map(|&(_, i)| LabelVec::basis(dim, i))
        .collect();
    let assignment = LabelAssignment::new(points, labels).map_err(ParseFail::from_err)?;
    WickMonomial::new(n, pairs, assignment).map_err(ParseFail::from_err)
}

/// Renders a monomial in the CLI literal grammar (basis labels only; a
/// non-basis coordinate vector is rendered inline).
pub fn display_monomial(m: &WickMonomial) -> String {
    let pairs = if m.pairs().is_empty() {
        "()".to_string()
    } else {
        m.pairs()
            .iter()
            .map(|&(l, r)| format!("({l},{r})"))
            .collect::<String>()
    };
    let free: Vec<String> = m
        .labels()
        .points()
        .iter()
        .zip(m.labels().labels())
        .map(|(&p, l)| {
            let nonzero: Vec<usize> = (0..l.dim()).filter(|&i| !l.0[i].is_zero()).collect();
            if nonzero.len() == 1 && l.0[nonzero[0]] == Scalar::one() {
                format!("{p}:e{}", nonzero[0] + 1)
            } else {
                format!("{p}:{l:?}")
            }
        })
        .collect();
    format!("{}; {}; {}", m.n_points(), pairs, free.join(" ")).trim_end().to_string()
}
