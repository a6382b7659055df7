//! Product Reed-Solomon codes on the full grid GF(q)^m and the recursive
//! per-axis decoder, plus the generic product-code decoder it instantiates.

use std::sync::Arc;

use crate::galois::FieldCtx;
use crate::polynomial::{grid_points, MultiPoly};
use crate::rm_codec::{rm_membership, RMSpec};
use crate::rs_codec::{hamming, rs_nearest, RSSpec, Word};
use crate::{isqrt, Error, Result};

/// PRS_q(k_1, ..., k_m): evaluations on GF(q)^m of polynomials with
/// deg_{x_i} < k_i.
#[derive(Debug, Clone)]
pub struct PRSSpec {
    ctx: Arc<FieldCtx>,
    k: Vec<usize>,
}

impl PRSSpec {
    pub fn new(ctx: &Arc<FieldCtx>, k: &[usize]) -> Result<Self> {
        let q = ctx.order() as usize;
        if k.is_empty() {
            return Err(Error::InvalidParameter("need at least one axis".into()));
        }
        if let Some(&bad) = k.iter().find(|&&ki| ki == 0 || ki > q) {
            return Err(Error::InvalidParameter(format!(
                "axis dimension {bad} must be in [1, q={q}]"
            )));
        }
        let volume = (q as u128).pow(k.len() as u32);
        if volume > u128::from(u32::MAX) {
            return Err(Error::InvalidParameter(format!("code length q^m = {volume} too large")));
        }
        Ok(PRSSpec { ctx: Arc::clone(ctx), k: k.to_vec() })
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }
    pub fn num_axes(&self) -> usize {
        self.k.len()
    }
    pub fn dims(&self) -> &[usize] {
        &self.k
    }
    pub fn len(&self) -> usize {
        (self.ctx.order() as usize).pow(self.k.len() as u32)
    }
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Per-axis thresholds t_i = ceil(q (1 - sqrt(k_i / q))) = q - isqrt(k_i q).
    pub fn axis_thresholds(&self) -> Vec<usize> {
        let q = self.ctx.order();
        self.k
            .iter()
            .map(|&ki| (q - isqrt(ki as u64 * q)) as usize)
            .collect()
    }

    /// Relative radius prod(1 - sqrt(k_i/q)) and the implied absolute
    /// error-weight guarantee floor(tau * q^m).
    pub fn recursive_radius(&self) -> (f64, u64) {
        let q = self.ctx.order() as f64;
        let tau: f64 = self.k.iter().map(|&ki| 1.0 - (ki as f64 / q).sqrt()).product();
        (tau, (tau * q.powi(self.k.len() as i32)) as u64)
    }
}

/// An m-dimensional q-ary array in row-major order with the first axis
/// slowest; flat index of (i_1,...,i_m) is ((i_1 q + i_2) q + ...) + i_m.
/// Matches the lexicographic point order of [`grid_points`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorWord {
    q: usize,
    m: usize,
    symbols: Vec<u64>,
}

impl TensorWord {
    pub fn new(q: usize, m: usize, symbols: Vec<u64>) -> Result<Self> {
        let want = q.checked_pow(m as u32).ok_or_else(|| {
            Error::InvalidParameter("tensor volume overflows".into())
        })?;
        if symbols.len() != want {
            return Err(Error::LengthMismatch { expected: want, got: symbols.len() });
        }
        if let Some(&s) = symbols.iter().find(|&&s| s >= q as u64) {
            return Err(Error::ElemOutOfRange(s, q as u64));
        }
        Ok(TensorWord { q, m, symbols })
    }

    pub fn zero(q: usize, m: usize) -> Self {
        TensorWord { q, m, symbols: vec![0; q.pow(m as u32)] }
    }

    pub fn side(&self) -> usize {
        self.q
    }
    pub fn num_axes(&self) -> usize {
        self.m
    }
    pub fn symbols(&self) -> &[u64] {
        &self.symbols
    }
    pub fn into_symbols(self) -> Vec<u64> {
        self.symbols
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.m);
        idx.iter().fold(0, |acc, &i| {
            assert!(i < self.q);
            acc * self.q + i
        })
    }

    pub fn get(&self, idx: &[usize]) -> u64 {
        self.symbols[self.flat_index(idx)]
    }
    pub fn set(&mut self, idx: &[usize], v: u64) {
        let f = self.flat_index(idx);
        self.symbols[f] = v;
    }

    /// Gathers the sub-array with the given axes fixed (`Some(value)`), in
    /// row-major order of the free axes. An all-`None` assignment copies the
    /// word; fixing all but one axis extracts a line.
    pub fn slice(&self, assign: &[Option<usize>]) -> Result<TensorWord> {
        let (flats, free) = self.slice_indices(assign)?;
        Ok(TensorWord {
            q: self.q,
            m: free,
            symbols: flats.iter().map(|&f| self.symbols[f]).collect(),
        })
    }

    /// Scatters `values` back into the positions selected by `assign`.
    pub fn write_slice(&mut self, assign: &[Option<usize>], values: &[u64]) -> Result<()> {
        let (flats, _) = self.slice_indices(assign)?;
        if flats.len() != values.len() {
            return Err(Error::LengthMismatch { expected: flats.len(), got: values.len() });
        }
        for (&f, &v) in flats.iter().zip(values) {
            self.symbols[f] = v;
        }
        Ok(())
    }

    fn slice_indices(&self, assign: &[Option<usize>]) -> Result<(Vec<usize>, usize)> {
        if assign.len() != self.m {
            return Err(Error::LengthMismatch { expected: self.m, got: assign.len() });
        }
        if let Some(v) = assign.iter().flatten().find(|&&v| v >= self.q) {
            return Err(Error::ElemOutOfRange(*v as u64, self.q as u64));
        }
        let free_axes: Vec<usize> =
            (0..self.m).filter(|&a| assign[a].is_none()).collect();
        let count = self.q.pow(free_axes.len() as u32);
        let mut flats = Vec::with_capacity(count);
        let mut counters = vec![0usize; free_axes.len()];
        loop {
            let mut idx: Vec<usize> = assign.iter().map(|a| a.unwrap_or(0)).collect();
            for (c, &axis) in counters.iter().zip(&free_axes) {
                idx[axis] = *c;
            }
            flats.push(self.flat_index(&idx));
            // odometer over the free axes, last axis fastest
            let mut a = free_axes.len();
            loop {
                if a == 0 {
                    return Ok((flats, free_axes.len()));
                }
                a -= 1;
                counters[a] += 1;
                if counters[a] < self.q {
                    break;
                }
                counters[a] = 0;
            }
        }
    }
}

/// Evaluates phi (with deg_{x_i} < k_i) over the full grid.
pub fn prs_encode(spec: &PRSSpec, phi: &MultiPoly) -> Result<TensorWord> {
    let m = spec.num_axes();
    if phi.num_vars() != m {
        return Err(Error::LengthMismatch { expected: m, got: phi.num_vars() });
    }
    for (axis, &ki) in spec.dims().iter().enumerate() {
        let d = phi.degree_in(axis).unwrap_or(0);
        if d >= ki {
            return Err(Error::DegreeOverflow { got: d, max: ki - 1 });
        }
    }
    let q = spec.ctx.order();
    let symbols = grid_points(q, m)
        .map(|p| phi.eval(&p))
        .collect::<Result<Vec<u64>>>()?;
    TensorWord::new(q as usize, m, symbols)
}

/// The recursive product decoder. Axis by axis from the inside out: first
/// recursively decode the q hyperplanes with the last coordinate fixed, then
/// run the RS list decoder at threshold t_m - 1 along every line of the last
/// axis, substituting the nearest list element (leaving the line unchanged
/// when the list is empty).
pub fn prs_decode_recursive(spec: &PRSSpec, r: &TensorWord) -> Result<TensorWord> {
    let q = spec.ctx.order() as usize;
    if r.side() != q || r.num_axes() != spec.num_axes() {
        return Err(Error::InvalidParameter(format!(
            "received word shape {}^{} does not match code grid {}^{}",
            r.side(),
            r.num_axes(),
            q,
            spec.num_axes()
        )));
    }
    if let Some(&ki) = spec.dims().iter().find(|&&ki| ki >= q) {
        return Err(Error::InvalidParameter(format!(
            "axis dimension {ki} leaves no decoding radius at q = {q}"
        )));
    }
    let axis_specs: Vec<RSSpec> = spec
        .dims()
        .iter()
        .map(|&ki| RSSpec::full(&spec.ctx, ki))
        .collect::<Result<_>>()?;
    let thresholds = spec.axis_thresholds();
    let mut symbols = r.symbols().to_vec();
    decode_rec(&axis_specs, &thresholds, &mut symbols, spec.num_axes(), q)?;
    TensorWord::new(q, spec.num_axes(), symbols)
}

fn decode_rec(
    axis_specs: &[RSSpec],
    thresholds: &[usize],
    data: &mut [u64],
    m: usize,
    q: usize,
) -> Result<()> {
    if m > 1 {
        // hyperplanes i_m = a are the stride-q gathers
        let hyper_len = data.len() / q;
        for a in 0..q {
            let mut hyper: Vec<u64> = (0..hyper_len).map(|j| data[j * q + a]).collect();
            decode_rec(axis_specs, thresholds, &mut hyper, m - 1, q)?;
            for (j, &v) in hyper.iter().enumerate() {
                data[j * q + a] = v;
            }
        }
    }
    // lines along axis m are the contiguous chunks
    let spec = &axis_specs[m - 1];
    let tau = thresholds[m - 1] - 1;
    for line in data.chunks_mut(q) {
        if let Some(best) = rs_nearest(spec, &Word(line.to_vec()), tau)? {
            line.copy_from_slice(&best.codeword.0);
        }
    }
    Ok(())
}

/// How tuples (k_1,...,k_m) are enumerated when covering RM_q(l, m) by PRS
/// subcodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TupleRule {
    /// sum k_j <= l (the default).
    LiteralSum,
    /// sum (k_j - 1) <= l, so every monomial of total degree <= l is covered.
    ShiftedSum,
}

/// Enumerates the axis-dimension tuples selected by `rule`, each k_j in
/// [1, q-1], in lexicographic order.
pub fn prs_cover_tuples(q: usize, ell: usize, m: usize, rule: TupleRule) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![1usize; m];
    let bound = |t: &[usize]| -> usize {
        match rule {
            TupleRule::LiteralSum => t.iter().sum(),
            TupleRule::ShiftedSum => t.iter().map(|&k| k - 1).sum(),
        }
    };
    loop {
        if bound(&cur) <= ell && cur.iter().all(|&k| k < q) {
            out.push(cur.clone());
        }
        let mut a = m;
        loop {
            if a == 0 {
                return out;
            }
            a -= 1;
            cur[a] += 1;
            if cur[a] < q && bound(&cur) <= ell {
                break;
            }
            cur[a] = 1;
        }
    }
}

/// One candidate of the covering decoder.
#[derive(Debug, Clone)]
pub struct RmRecCandidate {
    pub codeword: Word,
    pub distance: usize,
    pub in_code: bool,
    /// the tuples whose PRS decoders produced this word
    pub tuples: Vec<Vec<usize>>,
}

/// The covering list decoder for full-grid RM codes: run the recursive PRS
/// decoder once per tuple, deduplicate the outputs, and annotate each with
/// its distance and an RM membership flag.
pub fn rm_list_decode_recursive(
    spec: &RMSpec,
    r: &Word,
    rule: TupleRule,
) -> Result<Vec<RmRecCandidate>> {
    if !spec.is_full_grid() {
        return Err(Error::InvalidParameter(
            "the recursive decoder requires the full evaluation grid".into(),
        ));
    }
    if r.len() != spec.len() {
        return Err(Error::LengthMismatch { expected: spec.len(), got: r.len() });
    }
    let q = spec.base().order() as usize;
    let m = spec.num_vars();
    let tensor_r = TensorWord::new(q, m, r.0.clone())?;
    let mut out: Vec<RmRecCandidate> = Vec::new();
    for tuple in prs_cover_tuples(q, spec.max_total_degree(), m, rule) {
        let prs = PRSSpec::new(spec.base(), &tuple)?;
        let decoded = Word(prs_decode_recursive(&prs, &tensor_r)?.into_symbols());
        if let Some(existing) = out.iter_mut().find(|c| c.codeword == decoded) {
            existing.tuples.push(tuple);
            continue;
        }
        let distance = hamming(&decoded, r)?;
        let in_code = rm_membership(spec, &decoded)?.is_some();
        out.push(RmRecCandidate { codeword: decoded, distance, in_code, tuples: vec![tuple] });
    }
    out.sort_by(|a, b| a.distance.cmp(&b.distance).then_with(|| a.codeword.cmp(&b.codeword)));
    Ok(out)
}

/// A unique decoder for one line of a product code.
pub trait LineDecoder {
    fn len(&self) -> usize;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
    /// `None` signals decoding failure; the line is then left unchanged.
    fn decode_line(&self, line: &[u64]) -> Result<Option<Vec<u64>>>;
}

/// Per-axis product decoding of an arbitrary product code: the same
/// hyperplanes-then-lines recursion as the PRS decoder, with one line
/// decoder per axis. `shape[i]` is the length along axis i (first axis
/// slowest in `r`).
pub fn product_decode_generic(
    shape: &[usize],
    decoders: &[&dyn LineDecoder],
    r: &[u64],
) -> Result<Vec<u64>> {
    if shape.len() != decoders.len() {
        return Err(Error::LengthMismatch { expected: shape.len(), got: decoders.len() });
    }
    let volume: usize = shape.iter().product();
    if r.len() != volume {
        return Err(Error::LengthMismatch { expected: volume, got: r.len() });
    }
    for (axis, (&s, d)) in shape.iter().zip(decoders).enumerate() {
        if d.len() != s {
            return Err(Error::InvalidParameter(format!(
                "axis {axis} decoder works on length {} but the axis has length {s}",
                d.len()
            )));
        }
    }
    let mut data = r.to_vec();
    generic_rec(shape, decoders, &mut data)?;
    Ok(data)
}

fn generic_rec(shape: &[usize], decoders: &[&dyn LineDecoder], data: &mut [u64]) -> Result<()> {
    let m = shape.len();
    let last = shape[m - 1];
    if m > 1 {
        let hyper_len = data.len() / last;
        for a in 0..last {
            let mut hyper: Vec<u64> = (0..hyper_len).map(|j| data[j * last + a]).collect();
            generic_rec(&shape[..m - 1], &decoders[..m - 1], &mut hyper)?;
            for (j, &v) in hyper.iter().enumerate() {
                data[j * last + a] = v;
            }
        }
    }
    for line in data.chunks_mut(last) {
        if let Some(fixed) = decoders[m - 1].decode_line(line)? {
            if fixed.len() != last {
                return Err(Error::LengthMismatch { expected: last, got: fixed.len() });
            }
            line.copy_from_slice(&fixed);
        }
    }
    Ok(())
}

/// Adapter plugging an RS nearest-in-list decoder into [`LineDecoder`].
pub struct RsLineDecoder {
    spec: RSSpec,
    tau: usize,
}

impl RsLineDecoder {
    pub fn new(spec: RSSpec, tau: usize) -> Self {
        RsLineDecoder { spec, tau }
    }
}

impl LineDecoder for RsLineDecoder {
    fn len(&self) -> usize {
        self.spec.len()
    }
    fn decode_line(&self, line: &[u64]) -> Result<Option<Vec<u64>>> {
        Ok(rs_nearest(&self.spec, &Word(line.to_vec()), self.tau)?.map(|e| e.codeword.0))
    }
}
