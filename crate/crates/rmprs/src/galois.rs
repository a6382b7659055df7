//! Finite field arithmetic in GF(p^e) and the basis isomorphism between
//! GF(q)^m and GF(q^m).
//!
//! Elements are encoded as integers in `[0, q)`: the base-p digits of the
//! encoding are the coefficients of the polynomial representation, low degree
//! first. The encoding is bijective and file-format friendly.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::polynomial::UniPoly;
use crate::{linalg, Error, Result};

/// Largest supported field order. Bigger towers are out of scope.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// Orders up to this get log/antilog tables; above, arithmetic reduces on the fly.
const TABLE_LIMIT: u64 = 1 << 12;

static NEXT_CTX_ID: AtomicU64 = AtomicU64::new(1);

/// A concrete finite field GF(p^e) with a fixed monic irreducible modulus.
#[derive(Debug)]
pub struct FieldCtx {
    id: u64,
    p: u64,
    e: u32,
    /// e+1 coefficients over GF(p), low-to-high; monic.
    modulus: Vec<u64>,
    order: u64,
    tables: Option<Tables>,
}

#[derive(Debug)]
struct Tables {
    /// exp[i] = g^i for 0 <= i < 2(q-1), duplicated so products index directly.
    exp: Vec<u64>,
    /// log[v] for v in [1, q); log[0] is unused.
    log: Vec<u64>,
}

/// A field element tagged with its owning context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Elem {
    pub value: u64,
    pub ctx_id: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow(u64),
    Inv,
    Neg,
}

/// Builds GF(p^e). With `modulus == None` the lexicographically smallest monic
/// irreducible of degree e over GF(p) is used (for e = 1: the polynomial x),
/// so the construction is reproducible.
pub fn make_field(p: u64, e: u32, modulus: Option<&[u64]>) -> Result<Arc<FieldCtx>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if e == 0 {
        return Err(Error::InvalidParameter("extension degree must be >= 1".into()));
    }
    let mut order: u64 = 1;
    for _ in 0..e {
        order = order
            .checked_mul(p)
            .filter(|&o| o <= MAX_FIELD_ORDER)
            .ok_or(Error::FieldTooLarge(u64::MAX, MAX_FIELD_ORDER))?;
    }

    let modulus = match modulus {
        Some(m) => {
            if m.len() != e as usize + 1 || *m.last().unwrap() != 1 {
                return Err(Error::BadModulus { expected: e, got: m.to_vec() });
            }
            if let Some(&c) = m.iter().find(|&&c| c >= p) {
                return Err(Error::BadModulusCoefficient(c, p));
            }
            if e >= 2 {
                if let Some(divisor) = find_proper_divisor(m, p) {
                    return Err(Error::ReducibleModulus(divisor));
                }
            }
            m.to_vec()
        }
        None => default_modulus(p, e),
    };

    let mut ctx = FieldCtx {
        id: NEXT_CTX_ID.fetch_add(1, Ordering::Relaxed),
        p,
        e,
        modulus,
        order,
        tables: None,
    };
    if order > 2 && order <= TABLE_LIMIT {
        ctx.build_tables();
    }
    Ok(Arc::new(ctx))
}

// context identity: two contexts are the same field instance iff their ids
// match (moduli may coincide across independently created contexts)
impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}
impl Eq for FieldCtx {}

impl FieldCtx {
    pub fn id(&self) -> u64 {
        self.id
    }
    pub fn characteristic(&self) -> u64 {
        self.p
    }
    pub fn extension_degree(&self) -> u32 {
        self.e
    }
    pub fn order(&self) -> u64 {
        self.order
    }
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.order
    }

    pub fn elem(&self, value: u64) -> Result<Elem> {
        if value >= self.order {
            return Err(Error::ElemOutOfRange(value, self.order));
        }
        Ok(Elem { value, ctx_id: self.id })
    }

    fn check(&self, a: Elem) -> Result<u64> {
        if a.ctx_id != self.id {
            return Err(Error::CtxMismatch);
        }
        Ok(a.value)
    }

    /// Checked arithmetic on tagged elements. `b` is required for the binary
    /// ops and ignored by `Pow`, `Inv` and `Neg`.
    pub fn arith(&self, op: ArithOp, a: Elem, b: Option<Elem>) -> Result<Elem> {
        let av = self.check(a)?;
        let bv = match op {
            ArithOp::Add | ArithOp::Sub | ArithOp::Mul | ArithOp::Div => {
                let b = b.ok_or_else(|| {
                    Error::InvalidParameter("binary field op needs a second operand".into())
                })?;
                Some(self.check(b)?)
            }
            _ => None,
        };
        let value = match op {
            ArithOp::Add => self.add(av, bv.unwrap()),
            ArithOp::Sub => self.sub(av, bv.unwrap()),
            ArithOp::Mul => self.mul(av, bv.unwrap()),
            ArithOp::Div => self.div(av, bv.unwrap())?,
            ArithOp::Pow(k) => self.pow(av, k),
            ArithOp::Inv => self.inv(av)?,
            ArithOp::Neg => self.neg(av),
        };
        Ok(Elem { value, ctx_id: self.id })
    }

    // Raw arithmetic on canonical encodings. Callers are responsible for
    // passing elements of this field.

    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.p == 2 {
            return a ^ b;
        }
        let p = self.p;
        let (mut a, mut b) = (a, b);
        let mut r = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            r += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        r
    }

    pub fn neg(&self, a: u64) -> u64 {
        if self.p == 2 {
            return a;
        }
        let p = self.p;
        let mut a = a;
        let mut r = 0;
        let mut place = 1;
        while a > 0 {
            r += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        r
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        if let Some(t) = &self.tables {
            return t.exp[(t.log[a as usize] + t.log[b as usize]) as usize];
        }
        self.mul_slow(a, b)
    }

    fn mul_slow(&self, a: u64, b: u64) -> u64 {
        if self.e == 1 {
            return a * b % self.p;
        }
        let p = self.p;
        let e = self.e as usize;
        let da = self.to_digits(a);
        let db = self.to_digits(b);
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        // reduce modulo the (monic) field polynomial
        for i in (e..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (k, &mc) in self.modulus.iter().take(e).enumerate() {
                let idx = i - e + k;
                prod[idx] = (prod[idx] + (p - mc % p) % p * c) % p;
            }
        }
        self.from_digits(&prod[..e])
    }

    /// Square-and-multiply exponentiation; `pow(0, 0) == 1`.
    pub fn pow(&self, a: u64, mut k: u64) -> u64 {
        if a == 0 {
            return if k == 0 { 1 } else { 0 };
        }
        let mut base = a;
        let mut acc = 1;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        if let Some(t) = &self.tables {
            return Ok(t.exp[(self.order - 1 - t.log[a as usize]) as usize]);
        }
        Ok(self.pow(a, self.order - 2))
    }

    pub fn div(&self, a: u64, b: u64) -> Result<u64> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Base-p digits of an encoding, low degree first, padded to length e.
    pub fn to_digits(&self, a: u64) -> Vec<u64> {
        let mut d = vec![0u64; self.e as usize];
        let mut a = a;
        for slot in d.iter_mut() {
            *slot = a % self.p;
            a /= self.p;
        }
        d
    }

    pub fn from_digits(&self, digits: &[u64]) -> u64 {
        let mut r = 0;
        for &d in digits.iter().rev() {
            r = r * self.p + d % self.p;
        }
        r
    }

    /// A fixed multiplicative generator: the smallest encoding of maximal order.
    pub fn generator(&self) -> u64 {
        self.find_generator()
    }

    fn find_generator(&self) -> u64 {
        let group = self.order - 1;
        let factors = prime_factors(group);
        'outer: for g in 2..self.order {
            for &f in &factors {
                if self.pow_slow(g, group / f) == 1 {
                    continue 'outer;
                }
            }
            return g;
        }
        // order 2: the only candidate is 1
        1
    }

    fn pow_slow(&self, a: u64, mut k: u64) -> u64 {
        let mut base = a;
        let mut acc = 1;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            k >>= 1;
        }
        acc
    }

    fn build_tables(&mut self) {
        let group = (self.order - 1) as usize;
        let g = self.find_generator();
        let mut exp = vec![0u64; 2 * group];
        let mut log = vec![0u64; self.order as usize];
        let mut acc = 1u64;
        for i in 0..group {
            exp[i] = acc;
            exp[i + group] = acc;
            log[acc as usize] = i as u64;
            acc = self.mul_slow(acc, g);
        }
        debug_assert_eq!(acc, 1, "generator order mismatch");
        self.tables = Some(Tables { exp, log });
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// --- dense polynomial helpers over the prime field GF(p) ---

fn pp_deg(f: &[u64]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

/// Remainder of `f` by the monic polynomial `g` over GF(p).
fn pp_rem(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let dg = pp_deg(g).expect("divisor must be nonzero");
    let mut r = f.to_vec();
    while let Some(dr) = pp_deg(&r) {
        if dr < dg {
            break;
        }
        let c = r[dr];
        r[dr] = 0;
        for (k, &gc) in g.iter().take(dg).enumerate() {
            let idx = dr - dg + k;
            r[idx] = (r[idx] + (p - gc % p) % p * c) % p;
        }
    }
    r.truncate(pp_deg(&r).map_or(0, |d| d + 1));
    r
}

/// Trial division against all monic polynomials of degree 1..=deg(f)/2.
/// Returns a proper divisor if one exists.
fn find_proper_divisor(f: &[u64], p: u64) -> Option<Vec<u64>> {
    let deg = pp_deg(f)?;
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for low in 0..count {
            let mut g = vec![0u64; d + 1];
            let mut v = low;
            for slot in g.iter_mut().take(d) {
                *slot = v % p;
                v /= p;
            }
            g[d] = 1;
            if pp_rem(f, &g, p).is_empty() {
                return Some(g);
            }
        }
    }
    None
}

fn default_modulus(p: u64, e: u32) -> Vec<u64> {
    if e == 1 {
        return vec![0, 1]; // the polynomial x
    }
    let d = e as usize;
    let count = p.pow(e);
    for low in 0..count {
        let mut g = vec![0u64; d + 1];
        let mut v = low;
        for slot in g.iter_mut().take(d) {
            *slot = v % p;
            v /= p;
        }
        g[d] = 1;
        if find_proper_divisor(&g, p).is_none() {
            return g;
        }
    }
    unreachable!("an irreducible of every degree exists over GF(p)")
}

/// Binomial coefficient C(n, k) reduced modulo the prime p (Lucas).
pub fn binom_mod_p(n: u64, k: u64, p: u64) -> u64 {
    if k > n {
        return 0;
    }
    let (mut n, mut k) = (n, k);
    let mut r = 1u64;
    while k > 0 || n > 0 {
        let (ni, ki) = (n % p, k % p);
        if ki > ni {
            return 0;
        }
        // small-case binomial via multiplicative formula mod p
        let mut c = 1u64;
        for i in 0..ki {
            c = c * ((ni - i) % p) % p;
            // division by (i+1) mod p
            c = c * mod_inv(i + 1, p) % p;
        }
        r = r * c % p;
        n /= p;
        k /= p;
    }
    r
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p is prime, a != 0 mod p
    let mut acc = 1u64;
    let mut base = a % p;
    let mut k = p - 2;
    while k > 0 {
        if k & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        k >>= 1;
    }
    acc
}

// --- extension tower GF(q) inside GF(q^m) ---

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasisKind {
    /// {1, xi, ..., xi^(m-1)} with xi the smallest primitive element.
    Polynomial,
    /// {zeta, zeta^q, ..., zeta^(q^(m-1))} for the smallest zeta whose
    /// Frobenius orbit is linearly independent.
    Normal,
    Explicit(Vec<u64>),
}

/// The tower GF(q) in GF(q^m): basis, Frobenius matrix A with its inverse,
/// coordinate polynomials mu_j, and the canonical embedding of the base field.
#[derive(Debug)]
pub struct ExtensionMap {
    base: Arc<FieldCtx>,
    ext: Arc<FieldCtx>,
    m: u32,
    basis: Vec<u64>,
    a_mat: Vec<Vec<u64>>,
    a_inv: Vec<Vec<u64>>,
    mu: Vec<UniPoly>,
    embed_tab: Vec<u64>,
    unembed_tab: HashMap<u64, u64>,
}

pub fn make_extension(base: &Arc<FieldCtx>, m: u32, kind: BasisKind) -> Result<ExtensionMap> {
    match kind {
        BasisKind::Polynomial => make_extension_with(base, m, |ext| {
            let xi = ext.generator();
            Ok((0..m).map(|i| ext.pow(xi, i as u64)).collect())
        }),
        BasisKind::Normal => make_extension_normal(base, m),
        BasisKind::Explicit(b) => make_extension_explicit(base, m, &b),
    }
}

/// Builds the tower with an explicit basis list.
pub fn make_extension_explicit(
    base: &Arc<FieldCtx>,
    m: u32,
    basis: &[u64],
) -> Result<ExtensionMap> {
    let basis = basis.to_vec();
    make_extension_with(base, m, move |ext| {
        if basis.len() != m as usize {
            return Err(Error::LengthMismatch { expected: m as usize, got: basis.len() });
        }
        for &v in &basis {
            if v >= ext.order() {
                return Err(Error::ElemOutOfRange(v, ext.order()));
            }
        }
        Ok(basis.clone())
    })
}

fn make_extension_normal(base: &Arc<FieldCtx>, m: u32) -> Result<ExtensionMap> {
    let q = base.order();
    let mut ext_order = 1u64;
    for _ in 0..m {
        ext_order *= q;
    }
    for zeta in 2..ext_order {
        let attempt = make_extension_with(base, m, |ext| {
            Ok((0..m)
                .map(|i| {
                    let mut acc = zeta;
                    for _ in 0..i {
                        acc = ext.pow(acc, q);
                    }
                    acc
                })
                .collect())
        });
        match attempt {
            Ok(em) => return Ok(em),
            Err(Error::SingularBasis) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::SingularBasis)
}

fn make_extension_with<F>(base: &Arc<FieldCtx>, m: u32, basis_fn: F) -> Result<ExtensionMap>
where
    F: FnOnce(&Arc<FieldCtx>) -> Result<Vec<u64>>,
{
    if m == 0 {
        return Err(Error::InvalidParameter("extension degree m must be >= 1".into()));
    }
    let q = base.order();
    let ext = make_field(base.characteristic(), base.extension_degree() * m, None)?;

    // Embed GF(q) by sending the base generator polynomial variable to a root
    // of the base modulus inside the extension; smallest root for determinism.
    let root = ext
        .elements()
        .find(|&z| eval_prime_poly(&ext, base.modulus(), z) == 0)
        .expect("base modulus splits in the extension");
    let mut embed_tab = vec![0u64; q as usize];
    let mut unembed_tab = HashMap::new();
    for v in 0..q {
        let digits = base.to_digits(v);
        let mut acc = 0;
        for (i, &d) in digits.iter().enumerate() {
            acc = ext.add(acc, ext.mul(d, ext.pow(root, i as u64)));
        }
        embed_tab[v as usize] = acc;
        unembed_tab.insert(acc, v);
    }
    debug_assert_eq!(unembed_tab.len(), q as usize);

    let basis = basis_fn(&ext)?;
    let mdim = m as usize;
    let mut a_mat = vec![vec![0u64; mdim]; mdim];
    for (i, row) in a_mat.iter_mut().enumerate() {
        let qi = q.pow(i as u32);
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = ext.pow(basis[j], qi);
        }
    }
    let a_inv = linalg::invert(&ext, &a_mat).ok_or(Error::SingularBasis)?;

    let mu = (0..mdim)
        .map(|j| {
            let deg = q.pow(m - 1) as usize;
            let mut coeffs = vec![0u64; deg + 1];
            for i in 0..mdim {
                coeffs[q.pow(i as u32) as usize] = a_inv[j][i];
            }
            UniPoly::from_coeffs(&ext, coeffs)
        })
        .collect();

    Ok(ExtensionMap {
        base: Arc::clone(base),
        ext,
        m,
        basis,
        a_mat,
        a_inv,
        mu,
        embed_tab,
        unembed_tab,
    })
}

/// Evaluates a polynomial with prime-subfield coefficients at an extension
/// field point.
fn eval_prime_poly(ctx: &FieldCtx, coeffs: &[u64], x: u64) -> u64 {
    let mut acc = 0;
    for &c in coeffs.iter().rev() {
        acc = ctx.add(ctx.mul(acc, x), c);
    }
    acc
}

impl ExtensionMap {
    pub fn base(&self) -> &Arc<FieldCtx> {
        &self.base
    }
    pub fn ext(&self) -> &Arc<FieldCtx> {
        &self.ext
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn basis(&self) -> &[u64] {
        &self.basis
    }
    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.a_mat
    }
    pub fn matrix_inv(&self) -> &[Vec<u64>] {
        &self.a_inv
    }
    /// Coordinate polynomials: x_j = mu_j(psi(x)).
    pub fn mu(&self) -> &[UniPoly] {
        &self.mu
    }

    /// The canonical injection GF(q) -> GF(q^m).
    pub fn embed(&self, c: u64) -> u64 {
        self.embed_tab[c as usize]
    }

    /// Inverse of `embed` where defined.
    pub fn unembed(&self, x: u64) -> Option<u64> {
        self.unembed_tab.get(&x).copied()
    }

    /// x^(q^i) in the extension field.
    pub fn frobenius(&self, x: u64, i: u32) -> u64 {
        let mut acc = x;
        for _ in 0..i {
            acc = self.ext.pow(acc, self.base.order());
        }
        acc
    }

    /// psi: maps a coordinate vector to sum_j a_j * embed(x_j).
    pub fn lift_point(&self, x: &[u64]) -> Result<u64> {
        if x.len() != self.m as usize {
            return Err(Error::LengthMismatch { expected: self.m as usize, got: x.len() });
        }
        let mut acc = 0;
        for (&a, &xj) in self.basis.iter().zip(x) {
            if xj >= self.base.order() {
                return Err(Error::ElemOutOfRange(xj, self.base.order()));
            }
            acc = self.ext.add(acc, self.ext.mul(a, self.embed(xj)));
        }
        Ok(acc)
    }

    /// Inverse of psi: A^-1 * [X, X^q, ..., X^(q^(m-1))]^T, mapped back to the
    /// base field componentwise.
    pub fn unlift_point(&self, x: u64) -> Result<Vec<u64>> {
        let powers: Vec<u64> = (0..self.m).map(|i| self.frobenius(x, i)).collect();
        let mut out = Vec::with_capacity(self.m as usize);
        for row in &self.a_inv {
            let mut acc = 0;
            for (&c, &pw) in row.iter().zip(&powers) {
                acc = self.ext.add(acc, self.ext.mul(c, pw));
            }
            out.push(self.unembed(acc).ok_or(Error::CorruptExtension)?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_default_modulus_is_x() {
        let f = make_field(2, 1, None).unwrap();
        assert_eq!(f.order(), 2);
        assert_eq!(f.modulus(), &[0, 1]);
    }

    #[test]
    fn gf4_default_modulus() {
        // the only irreducible quadratic over GF(2); cross-checked by
        // enumerating all monic quadratics and testing for roots
        let mut irreducible = Vec::new();
        for c0 in 0..2u64 {
            for c1 in 0..2u64 {
                let f = [c0, c1, 1];
                let has_root = (0..2u64).any(|x| (f[0] + f[1] * x + f[2] * x * x) % 2 == 0);
                if !has_root {
                    irreducible.push(f.to_vec());
                }
            }
        }
        assert_eq!(irreducible, vec![vec![1, 1, 1]]);
        let f = make_field(2, 2, None).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
    }

    #[test]
    fn non_prime_characteristic_rejected() {
        assert!(matches!(make_field(4, 2, Some(&[1, 1, 1])), Err(Error::NotPrime(4))));
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 + 1 = (x+1)^2 over GF(2)
        assert!(matches!(
            make_field(2, 2, Some(&[1, 0, 1])),
            Err(Error::ReducibleModulus(_))
        ));
    }

    #[test]
    fn gf4_squaring_of_generator() {
        // xi^2 = xi + 1 under x^2 + x + 1; xi has encoding 2, xi+1 encoding 3
        let f = make_field(2, 2, None).unwrap();
        assert_eq!(f.mul(2, 2), 3);
    }

    #[test]
    fn gf5_inverse() {
        let f = make_field(5, 1, None).unwrap();
        assert_eq!(f.inv(2).unwrap(), 3);
    }

    #[test]
    fn field_axioms_small_fields() {
        for (p, e) in [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2)] {
            let f = make_field(p, e, None).unwrap();
            let q = f.order();
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn tables_agree_with_slow_path() {
        let f = make_field(2, 4, None).unwrap();
        for a in 0..16 {
            for b in 0..16 {
                assert_eq!(f.mul(a, b), f.mul_slow(a, b));
            }
        }
    }

    #[test]
    fn elem_context_mismatch_rejected() {
        let f = make_field(5, 1, None).unwrap();
        let g = make_field(5, 1, None).unwrap();
        let a = f.elem(2).unwrap();
        let b = g.elem(3).unwrap();
        assert!(matches!(f.arith(ArithOp::Add, a, Some(b)), Err(Error::CtxMismatch)));
        assert!(matches!(
            f.arith(ArithOp::Div, a, Some(f.elem(0).unwrap())),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn frobenius_identity_and_square() {
        let base = make_field(2, 1, None).unwrap();
        let em = make_extension(&base, 2, BasisKind::Polynomial).unwrap();
        // GF(4): frobenius moves xi to xi^2 = xi + 1
        assert_eq!(em.frobenius(2, 0), 2);
        assert_eq!(em.frobenius(2, 1), 3);
        for c in 0..2 {
            let x = em.embed(c);
            assert_eq!(em.frobenius(x, 1), x);
        }
    }

    #[test]
    fn gf4_over_gf2_matrix_and_mu() {
        // basis {1, xi}: A = [[1, xi], [1, xi^2]]; mu_1 = xi^2 X + xi X^2,
        // mu_2 = X + X^2 (hand Gaussian elimination in GF(4))
        let base = make_field(2, 1, None).unwrap();
        let em = make_extension_explicit(&base, 2, &[1, 2]).unwrap();
        assert_eq!(em.matrix(), &[vec![1, 2], vec![1, 3]]);
        assert_eq!(em.mu()[0].coeffs(), &[0, 3, 2]);
        assert_eq!(em.mu()[1].coeffs(), &[0, 1, 1]);
        // exhaustive: mu_j(psi(x)) = embed(x_j) over all 4 points
        for x1 in 0..2 {
            for x2 in 0..2 {
                let lifted = em.lift_point(&[x1, x2]).unwrap();
                assert_eq!(em.mu()[0].eval(lifted), em.embed(x1));
                assert_eq!(em.mu()[1].eval(lifted), em.embed(x2));
            }
        }
    }

    #[test]
    fn dependent_basis_rejected() {
        let base = make_field(2, 1, None).unwrap();
        let ext = make_field(2, 2, None).unwrap();
        let a = ext.generator();
        assert!(matches!(
            make_extension_explicit(&base, 2, &[a, a]),
            Err(Error::SingularBasis)
        ));
    }

    #[test]
    fn lift_point_examples() {
        let base = make_field(2, 1, None).unwrap();
        let em = make_extension_explicit(&base, 2, &[1, 2]).unwrap();
        assert_eq!(em.lift_point(&[0, 0]).unwrap(), 0);
        // [1,1] -> 1 + xi = xi^2 (encoding 3)
        assert_eq!(em.lift_point(&[1, 1]).unwrap(), 3);
        assert_eq!(em.unlift_point(3).unwrap(), vec![1, 1]);
        assert!(em.lift_point(&[1]).is_err());
    }

    #[test]
    fn lift_bijective_q3_m2() {
        let base = make_field(3, 1, None).unwrap();
        let em = make_extension(&base, 2, BasisKind::Polynomial).unwrap();
        let mut seen = std::collections::HashSet::new();
        for x1 in 0..3 {
            for x2 in 0..3 {
                assert!(seen.insert(em.lift_point(&[x1, x2]).unwrap()));
            }
        }
        assert_eq!(seen.len(), 9);
    }

    #[test]
    fn round_trip_exhaustive() {
        for (p, e, m) in [(2, 1, 2), (3, 1, 2), (2, 2, 2), (2, 1, 3)] {
            let base = make_field(p, e, None).unwrap();
            let em = make_extension(&base, m, BasisKind::Polynomial).unwrap();
            let q = base.order();
            let mut coords = vec![0u64; m as usize];
            loop {
                let lifted = em.lift_point(&coords).unwrap();
                assert_eq!(em.unlift_point(lifted).unwrap(), coords);
                // advance the odometer
                let mut i = 0;
                loop {
                    if i == coords.len() {
                        return;
                    }
                    coords[i] += 1;
                    if coords[i] < q {
                        break;
                    }
                    coords[i] = 0;
                    i += 1;
                }
            }
        }
    }

    #[test]
    fn subfield_iff_frobenius_fixed() {
        let base = make_field(2, 2, None).unwrap();
        let em = make_extension(&base, 2, BasisKind::Polynomial).unwrap();
        for x in em.ext().elements() {
            let fixed = em.frobenius(x, 1) == x;
            assert_eq!(fixed, em.unembed(x).is_some());
        }
    }

    #[test]
    fn normal_basis_construction() {
        let base = make_field(2, 1, None).unwrap();
        let em = make_extension(&base, 2, BasisKind::Normal).unwrap();
        let b = em.basis().to_vec();
        assert_eq!(em.frobenius(b[0], 1), b[1]);
        for x1 in 0..2 {
            for x2 in 0..2 {
                let lifted = em.lift_point(&[x1, x2]).unwrap();
                assert_eq!(em.unlift_point(lifted).unwrap(), vec![x1, x2]);
            }
        }
    }

    #[test]
    fn polynomial_basis_always_independent() {
        for (p, e, m) in [(2, 1, 2), (3, 1, 2), (2, 2, 2), (5, 1, 2), (2, 1, 4)] {
            let base = make_field(p, e, None).unwrap();
            assert!(make_extension(&base, m, BasisKind::Polynomial).is_ok());
        }
    }

    #[test]
    fn frobenius_matrix_can_be_non_vandermonde() {
        // with basis {zeta, zeta^2} of GF(4) over GF(2) the second row is
        // [zeta^2, zeta^4] = [zeta^2, zeta]: rows are not geometric
        // progressions of a common point set
        let base = make_field(2, 1, None).unwrap();
        let em = make_extension_explicit(&base, 2, &[2, 3]).unwrap();
        let a = em.matrix();
        assert_eq!(a[0], vec![2, 3]);
        assert_eq!(a[1], vec![3, 2]);
        // a Vandermonde matrix starts with an all-ones row; this one does not
        assert_ne!(a[0], vec![1, 1]);
        assert!(linalg::invert(em.ext(), a).is_some());
    }

    #[test]
    fn binomials_mod_p() {
        assert_eq!(binom_mod_p(4, 2, 2), 0);
        assert_eq!(binom_mod_p(5, 2, 5), 0);
        assert_eq!(binom_mod_p(6, 3, 7), 6); // 20 mod 7
        assert_eq!(binom_mod_p(3, 1, 2), 1);
    }
}
