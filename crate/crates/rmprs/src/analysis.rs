//! Closed-form radius comparisons between the two product-code decoding
//! strategies, the rate-region volume study, and an integer dominance scan
//! against the (q+1)-point per-axis alternative.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{isqrt, Error, Result};

/// Relative radius of the recursive per-axis decoder at rates rho_i = k_i/q:
/// prod(1 - sqrt(rho_i)).
pub fn recursive_radius(rho: &[f64]) -> f64 {
    rho.iter().map(|&r| 1.0 - r.sqrt()).product()
}

/// Relative radius of the lifting decoder applied to the same product code,
/// whose lifted degree sums the per-axis rates: 1 - sqrt(sum rho_i), clamped
/// at zero once the sum passes 1.
pub fn lifting_radius(rho: &[f64]) -> f64 {
    (1.0 - rho.iter().sum::<f64>().sqrt()).max(0.0)
}

/// Which decoder reaches further at a given rate point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    Recursive,
    Lifting,
    Tie,
}

/// All four relative radii for a product code with axis dimensions k over
/// GF(q), viewed as a subcode of RM with l = sum (k_i - 1).
#[derive(Debug, Clone, PartialEq)]
pub struct RadiusReport {
    pub q: u64,
    pub m: usize,
    pub k: Vec<usize>,
    pub rho: Vec<f64>,
    /// lifting decoder on the total-degree code: 1 - sqrt(l q^(m-1) / n)
    pub radius_pw_rs: f64,
    /// same with the (q+1)-point auxiliary code: 1 - sqrt(l (q+1)^(m-1) / n)
    pub radius_pw_ag: f64,
    /// recursive per-axis decoder: prod (1 - sqrt(rho_i))
    pub radius_recursive: f64,
    /// lifting decoder on the product code itself: max(0, 1 - sqrt(sum rho_i))
    pub radius_prs_pw: f64,
}

impl RadiusReport {
    /// Recursive vs lifting-on-the-product-code comparison.
    pub fn dominant(&self) -> Dominance {
        if self.radius_recursive > self.radius_prs_pw {
            Dominance::Recursive
        } else if self.radius_recursive < self.radius_prs_pw {
            Dominance::Lifting
        } else {
            Dominance::Tie
        }
    }
}

pub fn compare_radii(q: u64, m: usize, k: &[usize]) -> Result<RadiusReport> {
    if m == 0 || k.len() != m {
        return Err(Error::LengthMismatch { expected: m.max(1), got: k.len() });
    }
    if q < 2 {
        return Err(Error::InvalidParameter("q must be at least 2".into()));
    }
    if let Some(&bad) = k.iter().find(|&&ki| ki == 0 || ki as u64 > q) {
        return Err(Error::InvalidParameter(format!("k_i = {bad} outside [1, q = {q}]")));
    }
    let qf = q as f64;
    let rho: Vec<f64> = k.iter().map(|&ki| ki as f64 / qf).collect();
    let ell: usize = k.iter().map(|&ki| ki - 1).sum();
    let n = qf.powi(m as i32);
    let clamp = |x: f64| x.clamp(0.0, 1.0);
    Ok(RadiusReport {
        q,
        m,
        k: k.to_vec(),
        radius_pw_rs: clamp(1.0 - (ell as f64 * qf.powi(m as i32 - 1) / n).sqrt()),
        radius_pw_ag: clamp(1.0 - (ell as f64 * (qf + 1.0).powi(m as i32 - 1) / n).sqrt()),
        radius_recursive: clamp(recursive_radius(&rho)),
        radius_prs_pw: clamp(lifting_radius(&rho)),
        rho,
    })
}

fn recursive_wins(rho: &[f64]) -> bool {
    recursive_radius(rho) > lifting_radius(rho)
}

/// Fraction of the rate cube (0,1)^m on which the recursive radius strictly
/// exceeds the lifting radius, by midpoint grid quadrature with
/// `points_per_axis` cells per axis. Deterministic. Feasible up to m = 6 at
/// moderate resolution; beyond that use [`region_volume_mc`].
pub fn region_volume_grid(m: usize, points_per_axis: usize) -> Result<f64> {
    if m == 0 || points_per_axis == 0 {
        return Err(Error::InvalidParameter("m and resolution must be positive".into()));
    }
    if m > 6 {
        return Err(Error::InvalidParameter(
            "grid mode is limited to m <= 6; use Monte Carlo".into(),
        ));
    }
    let s = points_per_axis;
    let total = (s as u64).checked_pow(m as u32).ok_or_else(|| {
        Error::InvalidParameter("grid too large".into())
    })?;
    let mut hits = 0u64;
    let mut idx = vec![0usize; m];
    let mut rho = vec![0.0; m];
    for _ in 0..total {
        for (r, &i) in rho.iter_mut().zip(&idx) {
            *r = (i as f64 + 0.5) / s as f64;
        }
        if recursive_wins(&rho) {
            hits += 1;
        }
        let mut a = m;
        while a > 0 {
            a -= 1;
            idx[a] += 1;
            if idx[a] < s {
                break;
            }
            idx[a] = 0;
        }
    }
    Ok(hits as f64 / total as f64)
}

/// Monte-Carlo estimate of the same fraction; seeded and reproducible.
pub fn region_volume_mc(m: usize, samples: u64, seed: u64) -> Result<f64> {
    if m == 0 || samples == 0 {
        return Err(Error::InvalidParameter("m and samples must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0u64;
    let mut rho = vec![0.0; m];
    for _ in 0..samples {
        for r in rho.iter_mut() {
            *r = rng.gen::<f64>();
        }
        if recursive_wins(&rho) {
            hits += 1;
        }
    }
    Ok(hits as f64 / samples as f64)
}

/// CSV surface of both radii over [0,1]^2 on an inclusive
/// `points_per_axis` x `points_per_axis` grid (101 points per axis gives
/// 10201 rows plus the header).
pub fn emit_surface(points_per_axis: usize) -> Result<String> {
    if points_per_axis < 2 {
        return Err(Error::InvalidParameter("need at least 2 grid points per axis".into()));
    }
    let s = points_per_axis;
    let mut out = String::from("rho1,rho2,recursive,lifting\n");
    for i in 0..s {
        for j in 0..s {
            let rho = [i as f64 / (s - 1) as f64, j as f64 / (s - 1) as f64];
            out.push_str(&format!(
                "{:.6},{:.6},{:.6},{:.6}\n",
                rho[0],
                rho[1],
                recursive_radius(&rho),
                lifting_radius(&rho)
            ));
        }
    }
    Ok(out)
}

/// One parameter point of the integer dominance scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominanceCase {
    pub q: u64,
    pub m: u32,
    pub ell: u64,
    /// n - isqrt(l q^(m-1) n) with n = q^m
    pub t_lift: u64,
    /// max(0, n - isqrt(l (q+1)^(m-1) n))
    pub t_alt: u64,
}

pub fn prime_powers_up_to(max: u64) -> Vec<u64> {
    let is_prime = |n: u64| n > 1 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
    let mut out = Vec::new();
    for p in 2..=max {
        if !is_prime(p) {
            continue;
        }
        let mut v = p;
        while v <= max {
            out.push(v);
            v = match v.checked_mul(p) {
                Some(v) => v,
                None => break,
            };
        }
    }
    out.sort_unstable();
    out
}

/// Exact integer comparison of the lifting decoder's threshold against the
/// variant whose auxiliary code lives on q+1 points per axis, over all
/// prime powers q <= max_q, 1 <= m <= max_m, 1 <= l <= q (restricted to
/// parameter points where the lifted degree leaves a radius).
pub fn radius_dominance_scan(max_q: u64, max_m: u32) -> Vec<DominanceCase> {
    let mut out = Vec::new();
    for q in prime_powers_up_to(max_q) {
        for m in 1..=max_m {
            let n = q.pow(m);
            for ell in 1..=q {
                let w_lift = ell * q.pow(m - 1);
                if w_lift >= n {
                    continue;
                }
                let t_lift = n - isqrt(w_lift * n);
                let w_alt = ell * (q + 1).pow(m - 1);
                let t_alt = n.saturating_sub(isqrt(w_alt * n));
                out.push(DominanceCase { q, m, ell, t_lift, t_alt });
            }
        }
    }
    out
}
