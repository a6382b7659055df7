//! Text formats: field specs, code specs, word/tensor files, polynomial
//! files, and decode-output rendering. All formats are UTF-8 text with
//! `#`-prefixed comments.

use std::sync::Arc;

use crate::galois::{make_field, FieldCtx};
use crate::polynomial::MultiPoly;
use crate::prs_codec::{RmRecCandidate, TensorWord};
use crate::rm_codec::RmDecodeEntry;
use crate::{Error, Result};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Strips comments and blank lines.
fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
}

fn parse_u64(tok: &str) -> Result<u64> {
    tok.parse()
        .map_err(|_| parse_err(format!("expected a non-negative integer, got `{tok}`")))
}

/// Field spec record: `p e c_0 c_1 ... c_e` (modulus low-to-high), or just
/// `p e` for the default modulus.
pub fn parse_field_spec(text: &str) -> Result<Arc<FieldCtx>> {
    let toks: Vec<&str> = content_lines(text).flat_map(str::split_whitespace).collect();
    if toks.len() < 2 {
        return Err(parse_err("field spec needs at least `p e`"));
    }
    let p = parse_u64(toks[0])?;
    let e = parse_u64(toks[1])?;
    let e = u32::try_from(e).map_err(|_| parse_err(format!("extension degree {e} too large")))?;
    let modulus = if toks.len() > 2 {
        Some(toks[2..].iter().map(|t| parse_u64(t)).collect::<Result<Vec<u64>>>()?)
    } else {
        None
    };
    make_field(p, e, modulus.as_deref())
}

pub fn write_field_spec(ctx: &FieldCtx) -> String {
    let coeffs: Vec<String> = ctx.modulus().iter().map(u64::to_string).collect();
    format!("{} {} {}\n", ctx.characteristic(), ctx.extension_degree(), coeffs.join(" "))
}

/// Word file: one decimal symbol per line.
pub fn parse_word(text: &str) -> Result<Vec<u64>> {
    content_lines(text).map(parse_u64).collect()
}

pub fn write_word(symbols: &[u64]) -> String {
    let mut out = String::new();
    for s in symbols {
        out.push_str(&s.to_string());
        out.push('\n');
    }
    out
}

/// TensorWord file: header line `q m`, then q^m symbols whitespace-separated
/// in row-major order (first axis slowest).
pub fn parse_tensor(text: &str) -> Result<TensorWord> {
    let mut lines = content_lines(text);
    let header = lines.next().ok_or_else(|| parse_err("empty tensor file"))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    if head.len() != 2 {
        return Err(parse_err("tensor header must be `q m`"));
    }
    let q = parse_u64(head[0])? as usize;
    let m = parse_u64(head[1])? as usize;
    let symbols = lines
        .flat_map(str::split_whitespace)
        .map(parse_u64)
        .collect::<Result<Vec<u64>>>()?;
    TensorWord::new(q, m, symbols)
}

pub fn write_tensor(t: &TensorWord) -> String {
    let mut out = format!("{} {}\n", t.side(), t.num_axes());
    // one line per innermost-axis line for readability
    for chunk in t.symbols().chunks(t.side()) {
        let row: Vec<String> = chunk.iter().map(u64::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Multivariate polynomial file: one term per line, `coeff i_1 ... i_m`.
pub fn parse_multi_poly(ctx: &Arc<FieldCtx>, m: usize, text: &str) -> Result<MultiPoly> {
    let mut poly = MultiPoly::zero(ctx, m);
    for line in content_lines(text) {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != m + 1 {
            return Err(parse_err(format!(
                "term `{line}` must have a coefficient and {m} exponents"
            )));
        }
        let coeff = parse_u64(toks[0])?;
        if coeff >= ctx.order() {
            return Err(Error::ElemOutOfRange(coeff, ctx.order()));
        }
        let exps = toks[1..]
            .iter()
            .map(|t| {
                parse_u64(t).and_then(|v| {
                    u32::try_from(v).map_err(|_| parse_err(format!("exponent {v} too large")))
                })
            })
            .collect::<Result<Vec<u32>>>()?;
        poly.add_term(&exps, coeff);
    }
    Ok(poly)
}

pub fn write_multi_poly(poly: &MultiPoly) -> String {
    let mut out = String::new();
    for (exps, coeff) in poly.terms() {
        out.push_str(&coeff.to_string());
        for e in exps {
            out.push(' ');
            out.push_str(&e.to_string());
        }
        out.push('\n');
    }
    out
}

/// A parsed code spec file. Keyed lines:
/// `field p e [c_0 ... c_e]`, then either `ell L` / `m M` / `n N` with
/// optional `point x_1 ... x_m` lines (an RM code), or `k k_1 ... k_m`
/// (a PRS code).
#[derive(Debug)]
pub enum CodeSpecFile {
    Rm {
        field: Arc<FieldCtx>,
        ell: usize,
        m: usize,
        n: usize,
        points: Option<Vec<Vec<u64>>>,
    },
    Prs {
        field: Arc<FieldCtx>,
        k: Vec<usize>,
    },
}

pub fn parse_code_spec(text: &str) -> Result<CodeSpecFile> {
    let mut field = None;
    let mut ell = None;
    let mut m = None;
    let mut n = None;
    let mut k: Option<Vec<usize>> = None;
    let mut points: Vec<Vec<u64>> = Vec::new();
    for line in content_lines(text) {
        let (key, rest) = line.split_once(char::is_whitespace).ok_or_else(|| {
            parse_err(format!("malformed spec line `{line}`"))
        })?;
        let nums = || -> Result<Vec<u64>> {
            rest.split_whitespace().map(parse_u64).collect()
        };
        match key {
            "field" => {
                field = Some(parse_field_spec(rest)?);
            }
            "ell" => ell = Some(parse_u64(rest.trim())? as usize),
            "m" => m = Some(parse_u64(rest.trim())? as usize),
            "n" => n = Some(parse_u64(rest.trim())? as usize),
            "k" => k = Some(nums()?.into_iter().map(|v| v as usize).collect()),
            "point" => points.push(nums()?),
            other => return Err(parse_err(format!("unknown spec key `{other}`"))),
        }
    }
    let field = field.ok_or_else(|| parse_err("spec is missing a `field` line"))?;
    match (ell, k) {
        (Some(_), Some(_)) => Err(parse_err("spec mixes RM (`ell`) and PRS (`k`) keys")),
        (Some(ell), None) => {
            let m = m.ok_or_else(|| parse_err("RM spec needs `m`"))?;
            let n = n.ok_or_else(|| parse_err("RM spec needs `n`"))?;
            let points = if points.is_empty() { None } else { Some(points) };
            Ok(CodeSpecFile::Rm { field, ell, m, n, points })
        }
        (None, Some(k)) => {
            if m.is_some_and(|m| m != k.len()) {
                return Err(parse_err("PRS spec `m` disagrees with the length of `k`"));
            }
            Ok(CodeSpecFile::Prs { field, k })
        }
        (None, None) => Err(parse_err("spec needs either `ell` (RM) or `k` (PRS)")),
    }
}

/// Decode-output rendering: one block per list entry with distance, message
/// coefficients, and codeword symbols.
pub fn render_rm_list(entries: &[RmDecodeEntry]) -> String {
    let mut out = format!("# list size {}\n", entries.len());
    for (i, e) in entries.iter().enumerate() {
        out.push_str(&format!("entry {i}\ndistance {}\n", e.distance));
        for (exps, coeff) in e.message.terms() {
            let exps: Vec<String> = exps.iter().map(u32::to_string).collect();
            out.push_str(&format!("message-term {} {}\n", coeff, exps.join(" ")));
        }
        let syms: Vec<String> = e.codeword.0.iter().map(u64::to_string).collect();
        out.push_str(&format!("codeword {}\n", syms.join(" ")));
    }
    out
}

pub fn render_rec_candidates(cands: &[RmRecCandidate]) -> String {
    let mut out = format!("# candidate count {}\n", cands.len());
    for (i, c) in cands.iter().enumerate() {
        out.push_str(&format!(
            "candidate {i}\ndistance {}\nin-code {}\n",
            c.distance, c.in_code
        ));
        for t in &c.tuples {
            let t: Vec<String> = t.iter().map(usize::to_string).collect();
            out.push_str(&format!("tuple {}\n", t.join(" ")));
        }
        let syms: Vec<String> = c.codeword.0.iter().map(u64::to_string).collect();
        out.push_str(&format!("codeword {}\n", syms.join(" ")));
    }
    out
}
