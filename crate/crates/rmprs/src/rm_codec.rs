//! q-ary Reed-Muller codes: encoding, membership testing, and the lifting
//! list decoder that embeds the received word into an RS code over GF(q^m),
//! list decodes it there, and filters the survivors back down.

use std::sync::Arc;

use crate::galois::{make_extension, BasisKind, ExtensionMap, FieldCtx};
use crate::linalg::{self, CachedSolver};
use crate::polynomial::{exponents_up_to, grid_points, MultiPoly};
use crate::rs_codec::{gs_list_decode, gs_radius_params, hamming, RSSpec, Word};
use crate::{Error, Result};

/// RM_q(l, m, n): evaluations at n distinct points of GF(q)^m of m-variate
/// polynomials of total degree at most l.
#[derive(Debug)]
pub struct RMSpec {
    base: Arc<FieldCtx>,
    ell: usize,
    m: usize,
    n: usize,
    points: Vec<Vec<u64>>,
    em: ExtensionMap,
    lifted_points: Vec<u64>,
    /// reduced monomial basis (total degree <= l, per-variable <= q-1)
    monomials: Vec<Vec<u32>>,
    /// cached row echelon factorization of the n x #monomials evaluation matrix
    membership: CachedSolver,
}

impl RMSpec {
    /// Builds the spec; `points == None` selects the first n points of the
    /// lexicographic full grid (first coordinate most significant).
    pub fn new(
        base: &Arc<FieldCtx>,
        ell: usize,
        m: usize,
        n: usize,
        points: Option<Vec<Vec<u64>>>,
    ) -> Result<Self> {
        let q = base.order();
        if ell == 0 || ell as u64 > q {
            return Err(Error::InvalidParameter(format!(
                "total degree {ell} must be in [1, q={q}]"
            )));
        }
        if m == 0 {
            return Err(Error::InvalidParameter("m must be >= 1".into()));
        }
        let volume = (q as u128).pow(m as u32);
        if n == 0 || n as u128 > volume {
            return Err(Error::InvalidParameter(format!(
                "length {n} must be in [1, q^m={volume}]"
            )));
        }
        let points = match points {
            Some(pts) => {
                if pts.len() != n {
                    return Err(Error::LengthMismatch { expected: n, got: pts.len() });
                }
                for (i, p) in pts.iter().enumerate() {
                    if p.len() != m {
                        return Err(Error::LengthMismatch { expected: m, got: p.len() });
                    }
                    if let Some(&c) = p.iter().find(|&&c| c >= q) {
                        return Err(Error::ElemOutOfRange(c, q));
                    }
                    if pts[..i].contains(p) {
                        return Err(Error::InvalidParameter(format!(
                            "evaluation point {p:?} repeated"
                        )));
                    }
                }
                pts
            }
            None => grid_points(q, m).take(n).collect(),
        };
        let em = make_extension(base, m as u32, BasisKind::Polynomial)?;
        let lifted_points = points
            .iter()
            .map(|p| em.lift_point(p))
            .collect::<Result<Vec<u64>>>()?;

        let monomials = exponents_up_to(m, ell, (q - 1) as usize);
        let mut eval_matrix = Vec::with_capacity(n);
        for p in &points {
            let mut row = Vec::with_capacity(monomials.len());
            for mono in &monomials {
                let mut v = 1;
                for (&e, &x) in mono.iter().zip(p) {
                    v = base.mul(v, base.pow(x, e as u64));
                }
                row.push(v);
            }
            eval_matrix.push(row);
        }
        let membership = CachedSolver::new(base, &eval_matrix);

        Ok(RMSpec { base: Arc::clone(base), ell, m, n, points, em, lifted_points, monomials, membership })
    }

    pub fn base(&self) -> &Arc<FieldCtx> {
        &self.base
    }
    pub fn max_total_degree(&self) -> usize {
        self.ell
    }
    pub fn num_vars(&self) -> usize {
        self.m
    }
    pub fn len(&self) -> usize {
        self.n
    }
    pub fn is_empty(&self) -> bool {
        false
    }
    pub fn points(&self) -> &[Vec<u64>] {
        &self.points
    }
    pub fn extension(&self) -> &ExtensionMap {
        &self.em
    }
    pub fn lifted_points(&self) -> &[u64] {
        &self.lifted_points
    }

    pub fn is_full_grid(&self) -> bool {
        self.n as u128 == (self.base.order() as u128).pow(self.m as u32)
    }

    /// Max degree of the lifted RS message: l * q^(m-1).
    pub fn lifted_degree(&self) -> usize {
        self.ell * (self.base.order() as usize).pow(self.m as u32 - 1)
    }

    /// The decoding threshold t = ceil(n (1 - sqrt(l q^(m-1) / n))).
    pub fn pw_threshold(&self) -> usize {
        gs_radius_params(self.n, self.lifted_degree())
    }
}

/// Pointwise evaluation of the information polynomial.
pub fn rm_encode(spec: &RMSpec, phi: &MultiPoly) -> Result<Word> {
    if phi.num_vars() != spec.m {
        return Err(Error::LengthMismatch { expected: spec.m, got: phi.num_vars() });
    }
    if let Some(d) = phi.total_degree() {
        if d > spec.ell {
            return Err(Error::DegreeOverflow { got: d, max: spec.ell });
        }
    }
    Ok(Word(
        spec.points
            .iter()
            .map(|p| phi.eval(p))
            .collect::<Result<Vec<u64>>>()?,
    ))
}

/// Membership test: a reduced polynomial of total degree <= l matching the
/// word on every evaluation point, or `None`.
pub fn rm_membership(spec: &RMSpec, v: &Word) -> Result<Option<MultiPoly>> {
    if v.len() != spec.n {
        return Err(Error::LengthMismatch { expected: spec.n, got: v.len() });
    }
    let Some(sol) = spec.membership.solve(&spec.base, &v.0) else {
        return Ok(None);
    };
    let terms = spec
        .monomials
        .iter()
        .zip(&sol)
        .filter(|(_, &c)| c != 0)
        .map(|(mono, &c)| (mono.clone(), c));
    Ok(Some(MultiPoly::from_terms(&spec.base, spec.m, terms)?))
}

/// If every symbol is fixed by the Frobenius map x -> x^q it lies in the
/// embedded base field; returns the base-field word in that case.
pub fn subfield_check(em: &ExtensionMap, c: &Word) -> Option<Word> {
    let mut out = Vec::with_capacity(c.len());
    for &x in &c.0 {
        if em.frobenius(x, 1) != x {
            return None;
        }
        out.push(em.unembed(x)?);
    }
    Some(Word(out))
}

/// One survivor of the lifting decoder.
#[derive(Debug, Clone)]
pub struct RmDecodeEntry {
    pub codeword: Word,
    pub message: MultiPoly,
    pub distance: usize,
}

/// The lifting list decoder: embed the received word into GF(q^m), list
/// decode the RS code on the lifted points with threshold d_H < t, then keep
/// exactly the candidates that drop back into GF(q)^n and pass membership.
/// Every RM codeword within distance < t of r is returned.
pub fn rm_list_decode_pw(spec: &RMSpec, r: &Word) -> Result<Vec<RmDecodeEntry>> {
    rm_list_decode_pw_at(spec, r, None)
}

/// As [`rm_list_decode_pw`] but decoding out to an explicit distance bound
/// `tau` instead of the guaranteed t - 1; fails with `RadiusUnachievable`
/// when the interpolation argument cannot reach that far.
pub fn rm_list_decode_pw_at(
    spec: &RMSpec,
    r: &Word,
    tau: Option<usize>,
) -> Result<Vec<RmDecodeEntry>> {
    if r.len() != spec.n {
        return Err(Error::LengthMismatch { expected: spec.n, got: r.len() });
    }
    let w = spec.lifted_degree();
    if w >= spec.n {
        return Err(Error::InvalidParameter(format!(
            "lifted degree {w} >= length {}: the lifting decoder has no radius here",
            spec.n
        )));
    }
    let t = spec.pw_threshold();
    let em = &spec.em;
    let lifted_r = Word(r.0.iter().map(|&s| em.embed(s)).collect());
    let rs_spec = RSSpec::new(em.ext(), w, spec.lifted_points.clone())?;
    let list = gs_list_decode(&rs_spec, &lifted_r, tau.unwrap_or(t - 1))?;

    let mut out = Vec::new();
    for entry in list.entries {
        let Some(base_word) = subfield_check(em, &entry.codeword) else {
            continue;
        };
        let Some(phi) = rm_membership(spec, &base_word)? else {
            continue;
        };
        let distance = hamming(&base_word, r)?;
        out.push(RmDecodeEntry { codeword: base_word, message: phi, distance });
    }
    out.sort_by(|a, b| a.distance.cmp(&b.distance).then_with(|| a.codeword.cmp(&b.codeword)));
    Ok(out)
}

/// Recovers the reduced information polynomial of a codeword. Full-grid
/// codes go through per-axis tensor interpolation; punctured codes through
/// the membership solver.
pub fn rm_message_recover(spec: &RMSpec, c: &Word) -> Result<MultiPoly> {
    if c.len() != spec.n {
        return Err(Error::LengthMismatch { expected: spec.n, got: c.len() });
    }
    if !spec.is_full_grid() {
        return rm_membership(spec, c)?.ok_or(Error::NotACodeword);
    }
    let base = &spec.base;
    let q = base.order() as usize;
    let m = spec.m;

    // inverse of the q x q evaluation matrix V[i][j] = elem_i^j
    let vand: Vec<Vec<u64>> = (0..q as u64)
        .map(|x| (0..q as u64).map(|j| base.pow(x, j)).collect())
        .collect();
    let vand_inv = linalg::invert(base, &vand).expect("evaluation matrix is invertible");

    // interpolate axis by axis; axis j has stride q^(m-1-j)
    let mut data = c.0.clone();
    for axis in 0..m {
        let stride = q.pow((m - 1 - axis) as u32);
        let block = stride * q;
        let mut next = data.clone();
        for start in (0..data.len()).step_by(block) {
            for off in 0..stride {
                for (i, row) in vand_inv.iter().enumerate() {
                    let mut acc = 0;
                    for (j, &coef) in row.iter().enumerate() {
                        acc = base.add(acc, base.mul(coef, data[start + off + j * stride]));
                    }
                    next[start + off + i * stride] = acc;
                }
            }
        }
        data = next;
    }

    let mut phi = MultiPoly::zero(base, m);
    for (idx, &coeff) in data.iter().enumerate() {
        if coeff == 0 {
            continue;
        }
        let mut exps = vec![0u32; m];
        let mut v = idx;
        for e in exps.iter_mut().rev() {
            *e = (v % q) as u32;
            v /= q;
        }
        phi.add_term(&exps, coeff);
    }
    if phi.total_degree().unwrap_or(0) > spec.ell {
        return Err(Error::NotACodeword);
    }
    Ok(phi)
}
