//! Univariate and multivariate polynomial arithmetic over a [`FieldCtx`],
//! Lagrange interpolation, and the lifting of a multivariate polynomial to a
//! univariate one over the extension field.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;

use crate::galois::{ExtensionMap, FieldCtx};
use crate::{Error, Result};

/// Dense univariate polynomial, coefficients low-to-high, canonical (no
/// trailing zeros). The zero polynomial has an empty coefficient vector and
/// `degree() == None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    ctx: Arc<FieldCtx>,
    coeffs: Vec<u64>,
}

impl UniPoly {
    pub fn from_coeffs(ctx: &Arc<FieldCtx>, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UniPoly { ctx: Arc::clone(ctx), coeffs }
    }

    pub fn zero(ctx: &Arc<FieldCtx>) -> Self {
        UniPoly { ctx: Arc::clone(ctx), coeffs: Vec::new() }
    }

    pub fn constant(ctx: &Arc<FieldCtx>, c: u64) -> Self {
        Self::from_coeffs(ctx, vec![c])
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: u64) -> u64 {
        let f = &self.ctx;
        let mut acc = 0;
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        self.check_same_ctx(other);
        let f = &self.ctx;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        UniPoly::from_coeffs(&self.ctx, coeffs)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.check_same_ctx(other);
        let f = &self.ctx;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        UniPoly::from_coeffs(&self.ctx, coeffs)
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        self.check_same_ctx(other);
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(&self.ctx);
        }
        let f = &self.ctx;
        let mut coeffs = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(coeffs[i + j], f.mul(a, b));
            }
        }
        UniPoly::from_coeffs(&self.ctx, coeffs)
    }

    pub fn scale(&self, c: u64) -> UniPoly {
        let f = &self.ctx;
        let coeffs = self.coeffs.iter().map(|&a| f.mul(a, c)).collect();
        UniPoly::from_coeffs(&self.ctx, coeffs)
    }

    pub fn pow(&self, k: usize) -> UniPoly {
        let mut acc = UniPoly::constant(&self.ctx, 1);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    fn check_same_ctx(&self, other: &UniPoly) {
        assert_eq!(self.ctx.id(), other.ctx.id(), "polynomials from different fields");
    }
}

/// Unique polynomial of degree < #points through the given points.
pub fn lagrange_interpolate(ctx: &Arc<FieldCtx>, points: &[(u64, u64)]) -> Result<UniPoly> {
    for (i, (xi, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(xj, _)| xj == xi) {
            return Err(Error::DuplicateX);
        }
    }
    let f = ctx;
    let mut acc = UniPoly::zero(ctx);
    for (i, &(xi, yi)) in points.iter().enumerate() {
        if yi == 0 {
            continue;
        }
        let mut basis = UniPoly::constant(ctx, 1);
        let mut denom = 1;
        for (j, &(xj, _)) in points.iter().enumerate() {
            if j == i {
                continue;
            }
            basis = basis.mul(&UniPoly::from_coeffs(ctx, vec![f.neg(xj), 1]));
            denom = f.mul(denom, f.sub(xi, xj));
        }
        acc = acc.add(&basis.scale(f.mul(yi, f.inv(denom)?)));
    }
    Ok(acc)
}

/// Sparse multivariate polynomial: exponent vector -> nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    ctx: Arc<FieldCtx>,
    m: usize,
    terms: BTreeMap<Vec<u32>, u64>,
}

impl MultiPoly {
    pub fn zero(ctx: &Arc<FieldCtx>, m: usize) -> Self {
        MultiPoly { ctx: Arc::clone(ctx), m, terms: BTreeMap::new() }
    }

    pub fn from_terms<I>(ctx: &Arc<FieldCtx>, m: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, u64)>,
    {
        let mut poly = Self::zero(ctx, m);
        for (exps, coeff) in terms {
            if exps.len() != m {
                return Err(Error::LengthMismatch { expected: m, got: exps.len() });
            }
            if coeff >= ctx.order() {
                return Err(Error::ElemOutOfRange(coeff, ctx.order()));
            }
            poly.add_term(&exps, coeff);
        }
        Ok(poly)
    }

    pub fn constant(ctx: &Arc<FieldCtx>, m: usize, c: u64) -> Self {
        let mut poly = Self::zero(ctx, m);
        poly.add_term(&vec![0; m], c);
        poly
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn num_vars(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, u64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coeff * x^exps` into the polynomial, dropping cancelled terms.
    pub fn add_term(&mut self, exps: &[u32], coeff: u64) {
        assert_eq!(exps.len(), self.m);
        if coeff == 0 {
            return;
        }
        let cur = self.terms.get(exps).copied().unwrap_or(0);
        let sum = self.ctx.add(cur, coeff);
        if sum == 0 {
            self.terms.remove(exps);
        } else {
            self.terms.insert(exps.to_vec(), sum);
        }
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum())
            .max()
    }

    /// Degree in variable `j`, `None` for the zero polynomial.
    pub fn degree_in(&self, j: usize) -> Option<usize> {
        self.terms.keys().map(|e| e[j] as usize).max()
    }

    pub fn eval(&self, x: &[u64]) -> Result<u64> {
        if x.len() != self.m {
            return Err(Error::LengthMismatch { expected: self.m, got: x.len() });
        }
        let f = &self.ctx;
        let mut acc = 0;
        for (exps, &coeff) in &self.terms {
            let mut term = coeff;
            for (&e, &xj) in exps.iter().zip(x) {
                term = f.mul(term, f.pow(xj, e as u64));
            }
            acc = f.add(acc, term);
        }
        Ok(acc)
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.ctx.id(), other.ctx.id());
        assert_eq!(self.m, other.m);
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e, c);
        }
        out
    }

    /// Replaces x_j^q by x_j until every per-variable exponent is <= q-1.
    /// The result agrees with `self` as a function on GF(q)^m.
    pub fn reduce_functional(&self) -> MultiPoly {
        let q = self.ctx.order() as u32;
        let mut out = MultiPoly::zero(&self.ctx, self.m);
        for (exps, &coeff) in &self.terms {
            let reduced: Vec<u32> = exps
                .iter()
                .map(|&e| if e == 0 { 0 } else { (e - 1) % (q - 1) + 1 })
                .collect();
            out.add_term(&reduced, coeff);
        }
        out
    }
}

/// Lifts a multivariate polynomial over GF(q) with total degree <= q to a
/// univariate polynomial over GF(q^m) with degree <= total_degree * q^(m-1)
/// that agrees with it through the point isomorphism:
/// f(psi(x)) = embed(phi(x)) for all x in GF(q)^m.
pub fn lift_poly(em: &ExtensionMap, phi: &MultiPoly) -> Result<UniPoly> {
    if phi.num_vars() != em.m() as usize {
        return Err(Error::LengthMismatch { expected: em.m() as usize, got: phi.num_vars() });
    }
    assert_eq!(phi.ctx().id(), em.base().id(), "polynomial not over the base field");
    let q = em.base().order() as usize;
    let total = phi.total_degree().unwrap_or(0);
    if total > q {
        return Err(Error::DegreeOverflow { got: total, max: q });
    }
    let ext = em.ext();
    let mut f = UniPoly::zero(ext);
    for (exps, &coeff) in phi.terms() {
        let mut term = UniPoly::constant(ext, em.embed(coeff));
        for (j, &e) in exps.iter().enumerate() {
            if e > 0 {
                term = term.mul(&em.mu()[j].pow(e as usize));
            }
        }
        f = f.add(&term);
    }
    Ok(f)
}

/// Iterator over all points of GF(q)^m in lexicographic order with the first
/// coordinate most significant. This is the canonical grid order shared by
/// the Reed-Muller point set and the tensor-word layout.
pub fn grid_points(q: u64, m: usize) -> impl Iterator<Item = Vec<u64>> {
    let total = (q as u128).pow(m as u32);
    (0..total).map(move |idx| {
        let mut coords = vec![0u64; m];
        let mut v = idx;
        for slot in coords.iter_mut().rev() {
            *slot = (v % q as u128) as u64;
            v /= q as u128;
        }
        coords
    })
}

/// Exact count of grid points where the polynomial vanishes. Enumeration is
/// capped at 10^6 points.
pub fn count_zeros(phi: &MultiPoly) -> Result<u64> {
    let q = phi.ctx().order();
    let m = phi.num_vars();
    let volume = (q as u128).pow(m as u32);
    if volume > 1_000_000 {
        return Err(Error::BudgetExceeded(volume as u64));
    }
    let mut zeros = 0;
    for point in grid_points(q, m) {
        if phi.eval(&point)? == 0 {
            zeros += 1;
        }
    }
    Ok(zeros)
}

/// All exponent vectors with total degree <= l and per-variable exponent
/// <= cap, in lexicographic order.
pub fn exponents_up_to(m: usize, l: usize, cap: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; m];
    fn rec(m: usize, l: usize, cap: usize, j: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if j == m {
            out.push(cur.clone());
            return;
        }
        let used: usize = cur[..j].iter().map(|&e| e as usize).sum();
        for e in 0..=cap.min(l - used) {
            cur[j] = e as u32;
            rec(m, l, cap, j + 1, cur, out);
        }
        cur[j] = 0;
    }
    rec(m, l, cap, 0, &mut cur, &mut out);
    out
}

/// Random polynomial with total degree <= l: uniformly chosen support of at
/// most `max_terms` reduced monomials, uniform nonzero coefficients.
pub fn random_multi_poly<R: Rng>(
    ctx: &Arc<FieldCtx>,
    m: usize,
    l: usize,
    max_terms: usize,
    rng: &mut R,
) -> MultiPoly {
    let q = ctx.order();
    let monomials = exponents_up_to(m, l, (q - 1) as usize);
    let nterms = rng.gen_range(1..=max_terms.min(monomials.len()));
    let mut poly = MultiPoly::zero(ctx, m);
    let mut chosen = std::collections::HashSet::new();
    while chosen.len() < nterms {
        let idx = rng.gen_range(0..monomials.len());
        if chosen.insert(idx) {
            poly.add_term(&monomials[idx], rng.gen_range(1..q));
        }
    }
    poly
}

/// Random polynomial with the per-axis degree bounds of a product code:
/// every monomial with exponent_i < bounds_i gets a uniform coefficient.
pub fn random_axis_bounded_poly<R: Rng>(
    ctx: &Arc<FieldCtx>,
    bounds: &[usize],
    rng: &mut R,
) -> MultiPoly {
    let q = ctx.order();
    let m = bounds.len();
    let mut poly = MultiPoly::zero(ctx, m);
    let mut exps = vec![0u32; m];
    loop {
        poly.add_term(&exps, rng.gen_range(0..q));
        let mut j = 0;
        loop {
            if j == m {
                return poly;
            }
            exps[j] += 1;
            if (exps[j] as usize) < bounds[j] {
                break;
            }
            exps[j] = 0;
            j += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::{make_extension_explicit, make_field};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn eval_basics() {
        let f5 = make_field(5, 1, None).unwrap();
        let zero = UniPoly::zero(&f5);
        assert_eq!(zero.eval(3), 0);
        assert_eq!(zero.degree(), None);
        let f = UniPoly::from_coeffs(&f5, vec![1, 1]); // 1 + X
        assert_eq!(f.eval(3), 4);
    }

    #[test]
    fn eval_mu_in_gf4() {
        // mu_2 = X + X^2 at xi: xi + xi^2 = xi + (xi+1) = 1
        let f4 = make_field(2, 2, None).unwrap();
        let mu2 = UniPoly::from_coeffs(&f4, vec![0, 1, 1]);
        assert_eq!(mu2.eval(2), 1);
    }

    #[test]
    fn interpolate_examples() {
        let f5 = make_field(5, 1, None).unwrap();
        let c = lagrange_interpolate(&f5, &[(2, 4)]).unwrap();
        assert_eq!(c.coeffs(), &[4]);
        let f = lagrange_interpolate(&f5, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(f.coeffs(), &[1, 1]);
        assert!(matches!(
            lagrange_interpolate(&f5, &[(1, 0), (1, 1)]),
            Err(Error::DuplicateX)
        ));
    }

    #[test]
    fn interpolate_round_trip_random() {
        let f = make_field(2, 3, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let deg = rng.gen_range(0..5usize);
            let mut coeffs: Vec<u64> = (0..=deg).map(|_| rng.gen_range(0..8)).collect();
            coeffs[deg] = rng.gen_range(1..8);
            let poly = UniPoly::from_coeffs(&f, coeffs);
            let points: Vec<(u64, u64)> = (0..8).map(|x| (x, poly.eval(x))).collect();
            assert_eq!(lagrange_interpolate(&f, &points).unwrap(), poly);
        }
    }

    #[test]
    fn multi_eval_examples() {
        let f3 = make_field(3, 1, None).unwrap();
        let c = MultiPoly::constant(&f3, 2, 2);
        assert_eq!(c.eval(&[0, 1]).unwrap(), 2);
        let xy = MultiPoly::from_terms(&f3, 2, vec![(vec![1, 1], 1)]).unwrap();
        assert_eq!(xy.eval(&[2, 2]).unwrap(), 1); // 4 mod 3
        assert!(xy.eval(&[1]).is_err());
    }

    #[test]
    fn multi_eval_agrees_with_uni_eval_after_substitution() {
        let f5 = make_field(5, 1, None).unwrap();
        let phi = MultiPoly::from_terms(
            &f5,
            2,
            vec![(vec![2, 0], 3), (vec![1, 1], 2), (vec![0, 0], 4)],
        )
        .unwrap();
        // fix x_2 = 2: 3 x^2 + 4x + 4
        let uni = UniPoly::from_coeffs(&f5, vec![4, 4, 3]);
        for x in 0..5 {
            assert_eq!(phi.eval(&[x, 2]).unwrap(), uni.eval(x));
        }
    }

    #[test]
    fn reduce_functional_basics() {
        let f2 = make_field(2, 1, None).unwrap();
        let sq = MultiPoly::from_terms(&f2, 1, vec![(vec![2], 1)]).unwrap();
        let red = sq.reduce_functional();
        assert_eq!(red.terms().keys().next().unwrap(), &vec![1]);
        assert_eq!(red.reduce_functional(), red); // idempotent

        let f3 = make_field(3, 1, None).unwrap();
        let low = MultiPoly::from_terms(&f3, 2, vec![(vec![1, 2], 2)]).unwrap();
        assert_eq!(low.reduce_functional(), low); // already reduced
    }

    #[test]
    fn reduce_functional_preserves_evaluations() {
        let f3 = make_field(3, 1, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let mut phi = MultiPoly::zero(&f3, 2);
            for _ in 0..rng.gen_range(1..6) {
                let e = vec![rng.gen_range(0..6u32), rng.gen_range(0..6u32)];
                phi.add_term(&e, rng.gen_range(0..3));
            }
            let red = phi.reduce_functional();
            for p in grid_points(3, 2) {
                assert_eq!(phi.eval(&p).unwrap(), red.eval(&p).unwrap());
            }
        }
    }

    #[test]
    fn lift_poly_zero_and_coordinate() {
        let base = make_field(2, 1, None).unwrap();
        let em = make_extension_explicit(&base, 2, &[1, 2]).unwrap();
        let zero = MultiPoly::zero(&base, 2);
        assert!(lift_poly(&em, &zero).unwrap().is_zero());
        // phi = x_2 lifts to mu_2 = X + X^2
        let x2 = MultiPoly::from_terms(&base, 2, vec![(vec![0, 1], 1)]).unwrap();
        assert_eq!(lift_poly(&em, &x2).unwrap().coeffs(), &[0, 1, 1]);
    }

    #[test]
    fn lift_poly_degree_cap() {
        let base = make_field(2, 1, None).unwrap();
        let em = make_extension_explicit(&base, 2, &[1, 2]).unwrap();
        let cubic = MultiPoly::from_terms(&base, 2, vec![(vec![2, 1], 1)]).unwrap();
        assert!(matches!(
            lift_poly(&em, &cubic),
            Err(Error::DegreeOverflow { got: 3, max: 2 })
        ));
    }

    #[test]
    fn lift_poly_agreement_and_degree_bound() {
        let base = make_field(2, 2, None).unwrap(); // q = 4
        let em = crate::galois::make_extension(&base, 2, crate::galois::BasisKind::Polynomial)
            .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let l = rng.gen_range(1..=2usize);
            let phi = random_multi_poly(&base, 2, l, 4, &mut rng);
            let f = lift_poly(&em, &phi).unwrap();
            let bound = phi.total_degree().unwrap_or(0) * 4; // l * q^(m-1)
            assert!(f.degree().unwrap_or(0) <= bound);
            for x in grid_points(4, 2) {
                let lifted = em.lift_point(&x).unwrap();
                assert_eq!(f.eval(lifted), em.embed(phi.eval(&x).unwrap()));
            }
        }
    }

    #[test]
    fn count_zeros_examples() {
        let f3 = make_field(3, 1, None).unwrap();
        let c = MultiPoly::constant(&f3, 2, 2);
        assert_eq!(count_zeros(&c).unwrap(), 0);
        let x1 = MultiPoly::from_terms(&f3, 2, vec![(vec![1, 0], 1)]).unwrap();
        assert_eq!(count_zeros(&x1).unwrap(), 3); // exactly l * q^(m-1)
    }

    #[test]
    fn zero_count_bound_gf5() {
        let f5 = make_field(5, 1, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let l = rng.gen_range(1..=5usize);
            let phi = random_multi_poly(&f5, 2, l, 6, &mut rng);
            let bound = phi.total_degree().unwrap() as u64 * 5;
            assert!(count_zeros(&phi).unwrap() <= bound);
        }
    }

    #[test]
    fn exponent_enumeration_counts() {
        // total degree <= 2 in 2 vars, no cap issue: 6 monomials
        assert_eq!(exponents_up_to(2, 2, 3).len(), 6);
        assert_eq!(exponents_up_to(2, 2, 1).len(), 4); // (2,0) and (0,2) capped
    }
}
