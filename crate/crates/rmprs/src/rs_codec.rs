//! Reed-Solomon encoding and Guruswami-Sudan list decoding: bivariate
//! interpolation with multiplicities followed by Roth-Ruckenstein root
//! extraction.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::galois::{binom_mod_p, FieldCtx};
use crate::polynomial::UniPoly;
use crate::{isqrt, linalg, Error, Result};

/// An RS code: evaluations at `points` of univariate polynomials of degree
/// at most `w` (dimension w+1).
#[derive(Debug, Clone)]
pub struct RSSpec {
    ctx: Arc<FieldCtx>,
    n: usize,
    w: usize,
    points: Vec<u64>,
}

impl RSSpec {
    pub fn new(ctx: &Arc<FieldCtx>, w: usize, points: Vec<u64>) -> Result<Self> {
        let n = points.len();
        if n == 0 || n as u64 > ctx.order() {
            return Err(Error::InvalidParameter(format!(
                "length {n} not in [1, {}]",
                ctx.order()
            )));
        }
        if w >= n {
            return Err(Error::InvalidParameter(format!(
                "max degree {w} must be below length {n}"
            )));
        }
        for (i, &x) in points.iter().enumerate() {
            if x >= ctx.order() {
                return Err(Error::ElemOutOfRange(x, ctx.order()));
            }
            if points[..i].contains(&x) {
                return Err(Error::InvalidParameter(format!(
                    "evaluation point {x} repeated"
                )));
            }
        }
        Ok(RSSpec { ctx: Arc::clone(ctx), n, w, points })
    }

    /// The full-field code RS_q(q, k): all q elements in encoding order,
    /// message degree k-1.
    pub fn full(ctx: &Arc<FieldCtx>, k: usize) -> Result<Self> {
        Self::new(ctx, k.checked_sub(1).ok_or_else(|| {
            Error::InvalidParameter("dimension k must be >= 1".into())
        })?, ctx.elements().collect())
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }
    pub fn len(&self) -> usize {
        self.n
    }
    pub fn is_empty(&self) -> bool {
        false
    }
    pub fn max_degree(&self) -> usize {
        self.w
    }
    pub fn points(&self) -> &[u64] {
        &self.points
    }
}

/// A received or code vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<u64>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Number of coordinates where the words differ.
pub fn hamming(a: &Word, b: &Word) -> Result<usize> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { expected: a.len(), got: b.len() });
    }
    Ok(a.0.iter().zip(&b.0).filter(|(x, y)| x != y).count())
}

/// Pointwise evaluation of the message polynomial.
pub fn rs_encode(spec: &RSSpec, f: &UniPoly) -> Result<Word> {
    if let Some(d) = f.degree() {
        if d > spec.w {
            return Err(Error::DegreeOverflow { got: d, max: spec.w });
        }
    }
    Ok(Word(spec.points.iter().map(|&x| f.eval(x)).collect()))
}

/// The list-decoding threshold of Guruswami-Sudan: all codewords at distance
/// strictly below this are guaranteed to be found.
pub fn gs_radius(spec: &RSSpec) -> usize {
    gs_radius_params(spec.n, spec.w)
}

/// ceil(n * (1 - sqrt(w/n))), computed exactly as n - floor(sqrt(w*n)).
pub fn gs_radius_params(n: usize, w: usize) -> usize {
    n - isqrt(w as u64 * n as u64) as usize
}

/// One decoded candidate: the codeword, its message polynomial, and its
/// distance to the received word.
#[derive(Debug, Clone)]
pub struct DecodeEntry {
    pub codeword: Word,
    pub message: UniPoly,
    pub distance: usize,
}

/// List-decoding output, ascending by distance with lexicographic codeword
/// tie-break.
#[derive(Debug, Clone, Default)]
pub struct DecodeList {
    pub entries: Vec<DecodeEntry>,
}

/// Bivariate polynomial over a field, stored as univariate X-polynomials per
/// Y-degree.
#[derive(Debug, Clone)]
pub struct BiPoly {
    ctx: Arc<FieldCtx>,
    /// rows[b] is the coefficient of Y^b.
    rows: Vec<UniPoly>,
}

impl BiPoly {
    fn from_rows(ctx: &Arc<FieldCtx>, mut rows: Vec<UniPoly>) -> Self {
        while rows.last().is_some_and(UniPoly::is_zero) {
            rows.pop();
        }
        BiPoly { ctx: Arc::clone(ctx), rows }
    }

    pub fn rows(&self) -> &[UniPoly] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn y_degree(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    /// Q(x, y) at a point.
    pub fn eval(&self, x: u64, y: u64) -> u64 {
        let f = &self.ctx;
        let mut acc = 0;
        for row in self.rows.iter().rev() {
            acc = f.add(f.mul(acc, y), row.eval(x));
        }
        acc
    }

    /// Q(0, Y) as a univariate polynomial in Y.
    fn at_x_zero(&self) -> UniPoly {
        UniPoly::from_coeffs(&self.ctx, self.rows.iter().map(|r| r.coeff(0)).collect())
    }

    /// Divides out the largest power of X dividing every row.
    fn strip_x_power(&self) -> BiPoly {
        let s = self
            .rows
            .iter()
            .filter(|r| !r.is_zero())
            .map(|r| r.coeffs().iter().position(|&c| c != 0).unwrap())
            .min()
            .unwrap_or(0);
        if s == 0 {
            return self.clone();
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                if r.is_zero() {
                    r.clone()
                } else {
                    UniPoly::from_coeffs(&self.ctx, r.coeffs()[s..].to_vec())
                }
            })
            .collect();
        BiPoly::from_rows(&self.ctx, rows)
    }

    /// Q(X, gamma + X*Y), the Roth-Ruckenstein descent step.
    fn shift_y(&self, gamma: u64) -> BiPoly {
        let f = &self.ctx;
        let p = f.characteristic();
        let nb = self.rows.len();
        let mut rows = vec![UniPoly::zero(&self.ctx); nb];
        for (v, slot) in rows.iter_mut().enumerate() {
            let mut acc = UniPoly::zero(&self.ctx);
            for b in v..nb {
                let c = binom_mod_p(b as u64, v as u64, p);
                if c == 0 {
                    continue;
                }
                let scalar = f.mul(c, f.pow(gamma, (b - v) as u64));
                acc = acc.add(&self.rows[b].scale(scalar));
            }
            // multiply by X^v
            if !acc.is_zero() {
                let mut coeffs = vec![0u64; v];
                coeffs.extend_from_slice(acc.coeffs());
                acc = UniPoly::from_coeffs(&self.ctx, coeffs);
            }
            *slot = acc;
        }
        BiPoly::from_rows(&self.ctx, rows)
    }

    /// Q(X, f(X)) as a univariate polynomial.
    pub fn compose(&self, f: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero(&self.ctx);
        let mut fpow = UniPoly::constant(&self.ctx, 1);
        for row in &self.rows {
            acc = acc.add(&row.mul(&fpow));
            fpow = fpow.mul(f);
        }
        acc
    }
}

/// Number of monomials X^a Y^b with a + w*b <= d.
fn weighted_monomial_count(d: usize, w: usize) -> usize {
    (0..=d / w).map(|b| d - w * b + 1).sum()
}

const MULT_CAP: usize = 64;

/// Smallest interpolation multiplicity (and its weighted-degree budget) whose
/// monomial count exceeds the number of vanishing constraints.
fn choose_gs_params(n: usize, w: usize, tau: usize) -> Option<(usize, usize)> {
    for mult in 1..=MULT_CAP {
        let d = mult * (n - tau) - 1;
        if weighted_monomial_count(d, w) > n * mult * (mult + 1) / 2 {
            return Some((mult, d));
        }
    }
    None
}

/// Finds a nonzero Q with (1,w)-weighted degree <= d vanishing with
/// multiplicity >= mult at every (point_i, r_i).
pub fn gs_interpolate(spec: &RSSpec, r: &Word, mult: usize, d: usize) -> Result<BiPoly> {
    if r.len() != spec.n {
        return Err(Error::LengthMismatch { expected: spec.n, got: r.len() });
    }
    let f = &spec.ctx;
    let p = f.characteristic();
    let w = spec.w;
    assert!(w >= 1, "weighted interpolation needs w >= 1");

    // monomial basis (a, b): a + w*b <= d
    let mut monomials = Vec::new();
    for b in 0..=d / w {
        for a in 0..=d - w * b {
            monomials.push((a, b));
        }
    }
    let ncols = monomials.len();
    let nrows = spec.n * mult * (mult + 1) / 2;
    if ncols <= nrows {
        return Err(Error::InvalidParameter(format!(
            "interpolation underdetermined: {ncols} monomials for {nrows} constraints"
        )));
    }

    let max_b = d / w;
    let mut rows = Vec::with_capacity(nrows);
    for (&beta, &ri) in spec.points.iter().zip(&r.0) {
        // power tables for this point
        let mut beta_pow = vec![1u64; d + 1];
        for i in 1..=d {
            beta_pow[i] = f.mul(beta_pow[i - 1], beta);
        }
        let mut r_pow = vec![1u64; max_b + 1];
        for i in 1..=max_b {
            r_pow[i] = f.mul(r_pow[i - 1], ri);
        }
        for u in 0..mult {
            for v in 0..mult - u {
                let mut row = vec![0u64; ncols];
                for (col, &(a, b)) in monomials.iter().enumerate() {
                    if a < u || b < v {
                        continue;
                    }
                    let c = binom_mod_p(a as u64, u as u64, p) * binom_mod_p(b as u64, v as u64, p)
                        % p;
                    if c == 0 {
                        continue;
                    }
                    row[col] = f.mul(c, f.mul(beta_pow[a - u], r_pow[b - v]));
                }
                rows.push(row);
            }
        }
    }

    let sol = linalg::kernel_vector(f, &rows, ncols).ok_or_else(|| {
        Error::InvalidParameter("interpolation system has no nonzero solution".into())
    })?;
    let mut poly_rows = vec![Vec::new(); max_b + 1];
    for (col, &(a, b)) in monomials.iter().enumerate() {
        if sol[col] != 0 {
            if poly_rows[b].len() <= a {
                poly_rows[b].resize(a + 1, 0);
            }
            poly_rows[b][a] = sol[col];
        }
    }
    let rows = poly_rows
        .into_iter()
        .map(|c| UniPoly::from_coeffs(f, c))
        .collect();
    Ok(BiPoly::from_rows(f, rows))
}

/// All f with deg(f) <= w and Q(X, f(X)) identically zero, via the
/// Roth-Ruckenstein coefficient descent.
pub fn rr_roots(q: &BiPoly, w: usize) -> Vec<UniPoly> {
    let ctx = Arc::clone(&q.ctx);
    let mut found: BTreeSet<Vec<u64>> = BTreeSet::new();
    let stripped = q.strip_x_power();
    if stripped.is_zero() {
        return Vec::new();
    }
    // the zero polynomial is a root iff the Y^0 row vanishes
    if q.rows.first().is_none_or(UniPoly::is_zero) {
        found.insert(Vec::new());
    }
    let mut prefix = Vec::new();
    descend(q, &stripped, 0, w, &mut prefix, &mut found);
    found
        .into_iter()
        .map(|coeffs| UniPoly::from_coeffs(&ctx, coeffs))
        .collect()
}

fn descend(
    orig: &BiPoly,
    cur: &BiPoly,
    depth: usize,
    w: usize,
    prefix: &mut Vec<u64>,
    found: &mut BTreeSet<Vec<u64>>,
) {
    let ctx = &cur.ctx;
    let at_zero = cur.at_x_zero();
    for gamma in ctx.elements() {
        if at_zero.eval(gamma) != 0 {
            continue;
        }
        prefix.push(gamma);
        let candidate = UniPoly::from_coeffs(ctx, prefix.clone());
        if orig.compose(&candidate).is_zero() {
            found.insert(candidate.coeffs().to_vec());
        }
        if depth < w {
            let next = cur.shift_y(gamma).strip_x_power();
            if !next.is_zero() {
                descend(orig, &next, depth + 1, w, prefix, found);
            }
        }
        prefix.pop();
    }
}

/// Guruswami-Sudan list decoding: all codewords within Hamming distance
/// `tau` of `r`, sorted by distance then lexicographic codeword order.
/// Completeness holds for tau <= n - 1 - floor(sqrt(w*n)); larger radii are
/// rejected rather than silently truncated.
pub fn gs_list_decode(spec: &RSSpec, r: &Word, tau: usize) -> Result<DecodeList> {
    if r.len() != spec.n {
        return Err(Error::LengthMismatch { expected: spec.n, got: r.len() });
    }
    for &s in &r.0 {
        if s >= spec.ctx.order() {
            return Err(Error::ElemOutOfRange(s, spec.ctx.order()));
        }
    }
    let (n, w) = (spec.n, spec.w);

    if w == 0 {
        // constant codewords: enumeration is exact at any radius
        let mut entries = Vec::new();
        for c in spec.ctx.elements() {
            let codeword = Word(vec![c; n]);
            let distance = hamming(&codeword, r)?;
            if distance <= tau {
                entries.push(DecodeEntry {
                    codeword,
                    message: UniPoly::constant(&spec.ctx, c),
                    distance,
                });
            }
        }
        return Ok(sorted_list(entries));
    }

    if tau + 1 + isqrt(w as u64 * n as u64) as usize > n {
        return Err(Error::RadiusUnachievable { tau, n, w });
    }
    let (mult, d) = choose_gs_params(n, w, tau)
        .ok_or(Error::RadiusUnachievable { tau, n, w })?;
    let q = gs_interpolate(spec, r, mult, d)?;

    let mut entries = Vec::new();
    for f in rr_roots(&q, w) {
        let codeword = rs_encode(spec, &f)?;
        let distance = hamming(&codeword, r)?;
        if distance <= tau {
            entries.push(DecodeEntry { codeword, message: f, distance });
        }
    }
    Ok(sorted_list(entries))
}

fn sorted_list(mut entries: Vec<DecodeEntry>) -> DecodeList {
    entries.sort_by(|a, b| {
        a.distance
            .cmp(&b.distance)
            .then_with(|| a.codeword.cmp(&b.codeword))
    });
    DecodeList { entries }
}

/// Minimum-distance entry of the decode list (lexicographic tie-break), or
/// `None` when the list is empty.
pub fn rs_nearest(spec: &RSSpec, r: &Word, tau: usize) -> Result<Option<DecodeEntry>> {
    Ok(gs_list_decode(spec, r, tau)?.entries.into_iter().next())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::make_field;
    use crate::polynomial::lagrange_interpolate;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf5_line_code() -> RSSpec {
        let f5 = make_field(5, 1, None).unwrap();
        RSSpec::new(&f5, 1, (0..5).collect()).unwrap()
    }

    /// Brute-force list decoding by enumerating all q^(w+1) messages.
    fn brute_force_list(spec: &RSSpec, r: &Word, tau: usize) -> Vec<Word> {
        let q = spec.ctx().order();
        let mut out = Vec::new();
        let count = q.pow(spec.max_degree() as u32 + 1);
        for idx in 0..count {
            let mut coeffs = Vec::new();
            let mut v = idx;
            for _ in 0..=spec.max_degree() {
                coeffs.push(v % q);
                v /= q;
            }
            let f = UniPoly::from_coeffs(spec.ctx(), coeffs);
            let c = rs_encode(spec, &f).unwrap();
            if hamming(&c, r).unwrap() <= tau {
                out.push(c);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn encode_examples() {
        let spec = gf5_line_code();
        let zero = rs_encode(&spec, &UniPoly::zero(spec.ctx())).unwrap();
        assert_eq!(zero.0, vec![0; 5]);
        let f = UniPoly::from_coeffs(spec.ctx(), vec![1, 1]);
        assert_eq!(rs_encode(&spec, &f).unwrap().0, vec![1, 2, 3, 4, 0]);
        let too_big = UniPoly::from_coeffs(spec.ctx(), vec![0, 0, 1]);
        assert!(rs_encode(&spec, &too_big).is_err());
    }

    #[test]
    fn encode_linearity() {
        let f9 = make_field(3, 2, None).unwrap();
        let spec = RSSpec::new(&f9, 3, (0..9).collect()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let f = UniPoly::from_coeffs(&f9, (0..4).map(|_| rng.gen_range(0..9)).collect());
            let g = UniPoly::from_coeffs(&f9, (0..4).map(|_| rng.gen_range(0..9)).collect());
            let lhs = rs_encode(&spec, &f.add(&g)).unwrap();
            let cf = rs_encode(&spec, &f).unwrap();
            let cg = rs_encode(&spec, &g).unwrap();
            let rhs: Vec<u64> = cf.0.iter().zip(&cg.0).map(|(&a, &b)| f9.add(a, b)).collect();
            assert_eq!(lhs.0, rhs);
        }
    }

    #[test]
    fn hamming_basics_and_metric_axioms() {
        let x = Word(vec![0, 1, 2]);
        assert_eq!(hamming(&x, &x).unwrap(), 0);
        assert_eq!(hamming(&x, &Word(vec![0, 2, 2])).unwrap(), 1);
        assert!(hamming(&x, &Word(vec![0])).is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let a = Word((0..6).map(|_| rng.gen_range(0..4u64)).collect());
            let b = Word((0..6).map(|_| rng.gen_range(0..4u64)).collect());
            let c = Word((0..6).map(|_| rng.gen_range(0..4u64)).collect());
            let (ab, ba) = (hamming(&a, &b).unwrap(), hamming(&b, &a).unwrap());
            assert_eq!(ab, ba);
            assert!(ab <= hamming(&a, &c).unwrap() + hamming(&c, &b).unwrap());
        }
    }

    #[test]
    fn radius_formula_values() {
        assert_eq!(gs_radius_params(16, 8), 5);
        assert_eq!(gs_radius_params(256, 32), 166);
        assert_eq!(gs_radius_params(16, 16), 0);
    }

    #[test]
    fn radius_threshold_always_achievable() {
        // t - 1 <= n - 1 - floor(sqrt(w*n)) for every tested (n, w); in fact
        // the two sides are identical by the integer identity behind both
        for n in 1..=40usize {
            for w in 1..n {
                let t = gs_radius_params(n, w);
                assert!(t - 1 <= n - 1 - isqrt(w as u64 * n as u64) as usize);
            }
        }
    }

    #[test]
    fn decode_clean_codeword() {
        let spec = gf5_line_code();
        let f = UniPoly::from_coeffs(spec.ctx(), vec![2, 3]);
        let c = rs_encode(&spec, &f).unwrap();
        let list = gs_list_decode(&spec, &c, 0).unwrap();
        assert_eq!(list.entries.len(), 1);
        assert_eq!(list.entries[0].codeword, c);
        assert_eq!(list.entries[0].message, f);
        assert_eq!(list.entries[0].distance, 0);
    }

    #[test]
    fn decode_zero_word_radius_two() {
        // any degree <= 1 polynomial with >= 3 roots is zero, so only the
        // zero codeword is within distance 2 of the zero word
        let spec = gf5_line_code();
        let list = gs_list_decode(&spec, &Word(vec![0; 5]), 2).unwrap();
        assert_eq!(list.entries.len(), 1);
        assert!(list.entries[0].message.is_zero());
    }

    #[test]
    fn decode_two_errors() {
        let spec = gf5_line_code();
        let f = UniPoly::from_coeffs(spec.ctx(), vec![1, 1]);
        let mut r = rs_encode(&spec, &f).unwrap();
        r.0[0] = spec.ctx().add(r.0[0], 1);
        r.0[3] = spec.ctx().add(r.0[3], 2);
        let list = gs_list_decode(&spec, &r, 2).unwrap();
        assert!(list.entries.iter().any(|e| e.message == f));
        // completeness vs brute force
        let brute = brute_force_list(&spec, &r, 2);
        let got: Vec<Word> = {
            let mut v: Vec<Word> = list.entries.iter().map(|e| e.codeword.clone()).collect();
            v.sort();
            v
        };
        assert_eq!(got, brute);
    }

    #[test]
    fn oracle_equivalence_random_words() {
        let spec = gf5_line_code();
        let bound = 5 - 1 - isqrt(5) as usize;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let r = Word((0..5).map(|_| rng.gen_range(0..5)).collect());
            for tau in 0..=bound {
                let list = gs_list_decode(&spec, &r, tau).unwrap();
                let mut got: Vec<Word> =
                    list.entries.iter().map(|e| e.codeword.clone()).collect();
                // soundness: distances and re-encoding
                for e in &list.entries {
                    assert_eq!(hamming(&e.codeword, &r).unwrap(), e.distance);
                    assert_eq!(rs_encode(&spec, &e.message).unwrap(), e.codeword);
                }
                got.sort();
                assert_eq!(got, brute_force_list(&spec, &r, tau));
            }
        }
    }

    #[test]
    fn radius_beyond_bound_rejected() {
        let spec = gf5_line_code();
        let r = Word(vec![0; 5]);
        assert!(matches!(
            gs_list_decode(&spec, &r, 3),
            Err(Error::RadiusUnachievable { tau: 3, n: 5, w: 1 })
        ));
    }

    #[test]
    fn interpolation_vanishes_on_codeword_points() {
        let spec = gf5_line_code();
        let f = UniPoly::from_coeffs(spec.ctx(), vec![1, 2]);
        let c = rs_encode(&spec, &f).unwrap();
        let q = gs_interpolate(&spec, &c, 1, 3).unwrap();
        assert!(!q.is_zero());
        for (&x, &y) in spec.points().iter().zip(&c.0) {
            assert_eq!(q.eval(x, y), 0);
        }
    }

    #[test]
    fn interpolation_multiplicity_constraints() {
        // independent verification: expand Q(X + beta, Y + r) by polynomial
        // multiplication and check all coefficients of total degree < mult
        let f8 = make_field(2, 3, None).unwrap();
        let spec = RSSpec::new(&f8, 2, (0..8).collect()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let r = Word((0..8).map(|_| rng.gen_range(0..8)).collect());
        let mult = 2;
        let d = 9;
        let q = gs_interpolate(&spec, &r, mult, d).unwrap();
        for (&beta, &ri) in spec.points().iter().zip(&r.0) {
            // grid[u][v] = coefficient of X^u Y^v in Q(X+beta, Y+ri)
            let mut grid = vec![vec![0u64; q.y_degree() + 2]; d + 2];
            for (b, row) in q.rows().iter().enumerate() {
                let xs = UniPoly::from_coeffs(&f8, vec![beta, 1]); // X + beta
                let ys = UniPoly::from_coeffs(&f8, vec![ri, 1]); // Y + ri
                let ypow = ys.pow(b);
                for (a, &coeff) in row.coeffs().iter().enumerate() {
                    if coeff == 0 {
                        continue;
                    }
                    let xpow = xs.pow(a).scale(coeff);
                    for (u, &xc) in xpow.coeffs().iter().enumerate() {
                        for (v, &yc) in ypow.coeffs().iter().enumerate() {
                            grid[u][v] = f8.add(grid[u][v], f8.mul(xc, yc));
                        }
                    }
                }
            }
            for u in 0..mult {
                for v in 0..mult - u {
                    assert_eq!(grid[u][v], 0, "multiplicity violated at ({beta},{ri})");
                }
            }
        }
    }

    #[test]
    fn interpolation_underdetermined_rejected() {
        let spec = gf5_line_code();
        let r = Word(vec![0; 5]);
        // d = 1 gives 3 monomials for 5 constraints
        assert!(gs_interpolate(&spec, &r, 1, 1).is_err());
    }

    #[test]
    fn rr_roots_single_and_double() {
        let f5 = make_field(5, 1, None).unwrap();
        let f = UniPoly::from_coeffs(&f5, vec![2, 3]);
        let g = UniPoly::from_coeffs(&f5, vec![1, 0, 4]);
        // Q = Y - f
        let q = BiPoly::from_rows(&f5, vec![f.scale(f5.neg(1)), UniPoly::constant(&f5, 1)]);
        assert_eq!(rr_roots(&q, 1), vec![f.clone()]);
        // Q = (Y - f)(Y - g)
        let prod = BiPoly::from_rows(
            &f5,
            vec![
                f.mul(&g),
                f.add(&g).scale(f5.neg(1)),
                UniPoly::constant(&f5, 1),
            ],
        );
        let roots = rr_roots(&prod, 2);
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&f) && roots.contains(&g));
    }

    #[test]
    fn rr_roots_none() {
        // Y^2 + 1 over GF(7): -1 is not a square, and any nonconstant f
        // makes deg(f^2) > 0, so there is no polynomial root at all
        let f7 = make_field(7, 1, None).unwrap();
        let q = BiPoly::from_rows(
            &f7,
            vec![
                UniPoly::constant(&f7, 1),
                UniPoly::zero(&f7),
                UniPoly::constant(&f7, 1),
            ],
        );
        assert!(rr_roots(&q, 1).is_empty());
        // exhaustive cross-check over all degree <= 1 candidates
        for a in 0..7 {
            for b in 0..7 {
                let f = UniPoly::from_coeffs(&f7, vec![a, b]);
                assert!(!q.compose(&f).is_zero());
            }
        }
    }

    #[test]
    fn nearest_prefers_lexicographic_on_ties() {
        let spec = gf5_line_code();
        // search for a received word equidistant from its two closest
        // codewords within the decoding radius
        let mut witness = None;
        'search: for idx in 0..5u64.pow(5) {
            let mut r = Vec::new();
            let mut v = idx;
            for _ in 0..5 {
                r.push(v % 5);
                v /= 5;
            }
            let r = Word(r);
            let brute = brute_force_list(&spec, &r, 2);
            if brute.len() >= 2 {
                let d0 = hamming(&brute[0], &r).unwrap();
                let tied: Vec<&Word> = brute
                    .iter()
                    .filter(|c| hamming(c, &r).unwrap() == d0)
                    .collect();
                let min_d = brute
                    .iter()
                    .map(|c| hamming(c, &r).unwrap())
                    .min()
                    .unwrap();
                if tied.len() >= 2 && d0 == min_d {
                    witness = Some((r, tied[0].clone()));
                    break 'search;
                }
            }
        }
        let (r, expect) = witness.expect("tie instance exists");
        let got = rs_nearest(&spec, &r, 2).unwrap().unwrap();
        assert_eq!(got.codeword, expect);
    }

    #[test]
    fn nearest_none_when_list_empty() {
        // a word far from every degree-0 codeword of a length-4 code
        let f5 = make_field(5, 1, None).unwrap();
        let spec = RSSpec::new(&f5, 0, vec![0, 1, 2, 3]).unwrap();
        let r = Word(vec![0, 1, 2, 3]);
        assert!(rs_nearest(&spec, &r, 0).unwrap().is_none());
    }

    #[test]
    fn messages_recoverable_by_interpolation() {
        // decoded message agrees with Lagrange interpolation on the codeword
        let f9 = make_field(3, 2, None).unwrap();
        let spec = RSSpec::new(&f9, 2, (0..9).collect()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f = UniPoly::from_coeffs(&f9, (0..3).map(|_| rng.gen_range(0..9)).collect());
        let mut r = rs_encode(&spec, &f).unwrap();
        r.0[4] = f9.add(r.0[4], 2);
        let tau = gs_radius(&spec) - 1;
        let list = gs_list_decode(&spec, &r, tau).unwrap();
        let entry = list.entries.iter().find(|e| e.message == f).unwrap();
        let pts: Vec<(u64, u64)> = spec
            .points()
            .iter()
            .copied()
            .zip(entry.codeword.0.iter().copied())
            .collect();
        assert_eq!(lagrange_interpolate(&f9, &pts).unwrap(), f);
    }
}
