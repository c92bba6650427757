//! Exact ranking counts and their asymptotic growth rate.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Number of functions from a `t`-set onto an `m`-set, by
/// inclusion-exclusion.
pub fn surjections(t: usize, m: usize) -> BigUint {
    let mut sum = BigInt::zero();
    for j in 0..=m {
        let term = BigInt::from(binomial(m, j)) * BigInt::from(m - j).pow(t as u32);
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum.to_biguint().expect("surjection count is non-negative")
}

/// `table[t][m] = T(t, m)` for `t, m ≤ max`, by the recurrence
/// `T(t, m) = m · (T(t-1, m) + T(t-1, m-1))`.
pub fn surjection_table(max: usize) -> Vec<Vec<BigUint>> {
    let mut table = vec![vec![BigUint::zero(); max + 1]; max + 1];
    table[0][0] = BigUint::one();
    for t in 1..=max {
        for m in 1..=t {
            table[t][m] = (&table[t - 1][m] + &table[t - 1][m - 1]) * m;
        }
    }
    table
}

fn check_nm(n: usize, m: usize) -> Result<()> {
    if n < 2 || m == 0 || m >= n {
        return Err(Error::OutOfRange(format!("need n > 1 and 1 <= m < n, got n={n}, m={m}")));
    }
    Ok(())
}

fn l_from_table(table: &[Vec<BigUint>], n: usize, m: usize) -> BigUint {
    (m..n).map(|t| binomial(n - 1, t) * &table[t][m] * BigUint::from(m).pow((n - 1 - t) as u32)).sum()
}

/// `L(n, m) = Σ_{t=m}^{n-1} C(n-1, t) T(t, m) m^{n-1-t}`
pub fn l_formula(n: usize, m: usize) -> Result<BigUint> {
    check_nm(n, m)?;
    Ok(l_from_table(&surjection_table(n - 1), n, m))
}

/// `L(n, m)` for every `1 ≤ m < n`.
pub fn l_row(n: usize) -> Result<Vec<BigUint>> {
    check_nm(n, 1)?;
    let table = surjection_table(n - 1);
    Ok((1..n).map(|m| l_from_table(&table, n, m)).collect())
}

/// `(m*, L(n))` with `m*` the smallest maximizer.
pub fn l_max_formula(n: usize) -> Result<(usize, BigUint)> {
    let row = l_row(n)?;
    let mut best = (1, row[0].clone());
    for (i, v) in row.into_iter().enumerate().skip(1) {
        if v > best.1 {
            best = (i + 1, v);
        }
    }
    Ok(best)
}

/// Natural logarithm of a positive big integer.
pub fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().expect("fits in f64").ln() + shift as f64 * std::f64::consts::LN_2
}

/// `L(n)^{1/n} / n`
pub fn growth_rate(n: usize) -> Result<f64> {
    let (_, l) = l_max_formula(n)?;
    Ok((ln_big(&l) / n as f64).exp() / n as f64)
}

/// Growth constant of `(n/e)^n`.
pub const MICHEL_RATE: f64 = 1.0 / std::f64::consts::E;

fn check_beta(beta: f64) -> Result<()> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::OutOfRange(format!("β = {beta} outside (0, 1)")));
    }
    Ok(())
}

/// The positive root of `βx = 1 - e^{-x}`. The root lies below `1/β`
/// and above any point where `1 - e^{-x} > βx`.
pub fn temme_x(beta: f64) -> Result<f64> {
    check_beta(beta)?;
    let g = |x: f64| -(-x).exp_m1() - beta * x;
    let mut lo = (1.0 - beta).min(1e-3);
    while g(lo) <= 0.0 {
        lo /= 2.0;
        if lo < 1e-300 {
            return Err(Error::Internal(format!("no bracket for β = {beta}")));
        }
    }
    let mut hi = 1.0 / beta;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `a = -ln x + β ln(e^x - 1) - (1-β) + (1-β) ln(1/β - 1)`
pub fn temme_a(beta: f64) -> Result<f64> {
    let x = temme_x(beta)?;
    let ln_em1 = x + (-(-x).exp()).ln_1p();
    Ok(-x.ln() + beta * ln_em1 - (1.0 - beta) + (1.0 - beta) * (1.0 / beta - 1.0).ln())
}

/// `M[β] = e^{a-β} (β/(1-β))^{1-β}`, with the limit `M[1] = 1/e`.
pub fn temme_m(beta: f64) -> Result<f64> {
    if beta == 1.0 {
        return Ok(MICHEL_RATE);
    }
    let a = temme_a(beta)?;
    Ok((a - beta).exp() * (beta / (1.0 - beta)).powf(1.0 - beta))
}

/// `h(β, γ) = (1-β)^{β-1} M[γ/β]^β γ^{1-β}`
pub fn h(beta: f64, gamma: f64) -> Result<f64> {
    if !(gamma > 0.0 && gamma <= beta && beta < 1.0) {
        return Err(Error::OutOfRange(format!("need 0 < γ <= β < 1, got β={beta}, γ={gamma}")));
    }
    let m = temme_m((gamma / beta).min(1.0))?;
    Ok((1.0 - beta).powf(beta - 1.0) * m.powf(beta) * gamma.powf(1.0 - beta))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymptoticPoint {
    pub beta: f64,
    pub gamma: f64,
    pub x: f64,
    pub a: f64,
    pub m: f64,
    pub h: f64,
}

impl AsymptoticPoint {
    pub fn at(beta: f64, gamma: f64) -> Result<Self> {
        let r = (gamma / beta).min(1.0);
        let (x, a) = if r < 1.0 { (temme_x(r)?, temme_a(r)?) } else { (0.0, f64::NAN) };
        Ok(AsymptoticPoint { beta, gamma, x, a, m: temme_m(r)?, h: h(beta, gamma)? })
    }
}

fn best_on(points: Vec<(f64, f64)>) -> (f64, f64, f64) {
    points
        .into_par_iter()
        .filter_map(|(b, g)| h(b, g).ok().map(|v| (b, g, v)))
        .reduce(|| (0.0, 0.0, f64::NEG_INFINITY), |x, y| if y.2 > x.2 { y } else { x })
}

/// Grid search over `0 < γ ≤ β < 1` followed by `refine` rounds of ten
/// times finer local search.
pub fn maximize_h(step: f64, refine: u32) -> Result<AsymptoticPoint> {
    if !(step > 0.0 && step < 0.5) {
        return Err(Error::OutOfRange(format!("grid step {step} outside (0, 0.5)")));
    }
    let k = (1.0 / step).round() as usize;
    let mut grid = Vec::new();
    for i in 1..k {
        for j in 1..=i {
            grid.push((i as f64 * step, j as f64 * step));
        }
    }
    let (mut b, mut g, _) = best_on(grid);
    let mut s = step;
    for _ in 0..refine {
        let fine = s / 10.0;
        let mut local = Vec::new();
        for i in -10..=10 {
            for j in -10..=10 {
                let (bb, gg) = (b + i as f64 * fine, g + j as f64 * fine);
                if gg > 0.0 && gg <= bb && bb < 1.0 {
                    local.push((bb, gg));
                }
            }
        }
        (b, g, _) = best_on(local);
        s = fine;
    }
    AsymptoticPoint::at(b, g)
}
