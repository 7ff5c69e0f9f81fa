//! Exact one-sided binomial tail probabilities.
//!
//! The tail is summed term by term in log space, starting at the boundary
//! term and walking away from the mean with the ratio recurrence
//! `t(j+1) / t(j) = (n - j) / (j + 1) * p / q`. The boundary term comes from
//! Loader's saddle-point expansion of the binomial pmf, which keeps full
//! relative precision for `n` well beyond 10^6.

use std::f64::consts::PI;

use super::StatsError;

/// Relative size below which further tail terms are dropped.
const TAIL_EPS: f64 = 1e-18;

/// `P[Bin(n, p) >= k]`.
pub fn binom_upper_tail(k: u64, n: u64, p: f64) -> Result<f64, StatsError> {
    if !(p > 0.0 && p < 1.0) {
        return Err(StatsError::Domain(format!(
            "binomial probability {p} outside (0, 1)"
        )));
    }
    if k > n {
        return Err(StatsError::Domain(format!(
            "success count {k} exceeds trial count {n}"
        )));
    }
    if k == 0 {
        return Ok(1.0);
    }
    let mean = n as f64 * p;
    if k as f64 > mean {
        Ok(upper_sum(k, n, p).min(1.0))
    } else {
        // complement of P[X <= k - 1], which sits below the mean
        Ok((1.0 - lower_sum(k - 1, n, p)).clamp(0.0, 1.0))
    }
}

/// `sum_{j >= k} pmf(j)`, for `k` above the mean.
fn upper_sum(k: u64, n: u64, p: f64) -> f64 {
    let log_odds = p.ln() - (-p).ln_1p();
    let log_first = log_pmf(k, n, p);
    let mut rel = 0.0f64; // log(t_j / t_k)
    let mut acc = 1.0f64;
    let mut j = k;
    while j < n {
        rel += ((n - j) as f64 / (j + 1) as f64).ln() + log_odds;
        let term = rel.exp();
        acc += term;
        if term < TAIL_EPS * acc {
            break;
        }
        j += 1;
    }
    (log_first + acc.ln()).exp()
}

/// `sum_{j <= k} pmf(j)`, for `k` below the mean.
fn lower_sum(k: u64, n: u64, p: f64) -> f64 {
    let log_odds = (-p).ln_1p() - p.ln();
    let log_first = log_pmf(k, n, p);
    let mut rel = 0.0f64;
    let mut acc = 1.0f64;
    let mut j = k;
    while j > 0 {
        rel += (j as f64 / (n - j + 1) as f64).ln() + log_odds;
        let term = rel.exp();
        acc += term;
        if term < TAIL_EPS * acc {
            break;
        }
        j -= 1;
    }
    (log_first + acc.ln()).exp()
}

/// Natural log of the binomial pmf at `x`.
pub fn log_pmf(x: u64, n: u64, p: f64) -> f64 {
    let q = 1.0 - p;
    if x == 0 {
        return n as f64 * (-p).ln_1p();
    }
    if x == n {
        return n as f64 * p.ln();
    }
    let (xf, nf) = (x as f64, n as f64);
    let yf = nf - xf;
    let lc = stirlerr(nf) - stirlerr(xf) - stirlerr(yf) - bd0(xf, nf * p) - bd0(yf, nf * q);
    lc + 0.5 * (nf / (2.0 * PI * xf * yf)).ln()
}

/// `ln(n!) - ln(sqrt(2 pi n) (n / e)^n)` for integer `n >= 0`.
fn stirlerr(n: f64) -> f64 {
    const S0: f64 = 1.0 / 12.0;
    const S1: f64 = 1.0 / 360.0;
    const S2: f64 = 1.0 / 1260.0;
    const S3: f64 = 1.0 / 1680.0;
    const S4: f64 = 1.0 / 1188.0;
    // exact values for n = 0..=15
    #[allow(clippy::excessive_precision)]
    const TABLE: [f64; 16] = [
        0.0,
        0.081_061_466_795_327_258_22,
        0.041_340_695_955_409_294_09,
        0.027_677_925_684_998_339_15,
        0.020_790_672_103_765_093_11,
        0.016_644_691_189_821_192_16,
        0.013_876_128_823_070_747_99,
        0.011_896_709_945_891_770_1,
        0.010_411_265_261_972_096_5,
        0.009_255_462_182_712_732_92,
        0.008_330_563_433_362_871_26,
        0.007_573_675_487_951_840_79,
        0.006_942_840_107_209_529_87,
        0.006_408_994_188_004_207_07,
        0.005_951_370_112_758_847_74,
        0.005_554_733_551_962_801_37,
    ];
    if n <= 15.0 {
        return TABLE[n as usize];
    }
    let nn = n * n;
    if n > 500.0 {
        (S0 - S1 / nn) / n
    } else if n > 80.0 {
        (S0 - (S1 - S2 / nn) / nn) / n
    } else if n > 35.0 {
        (S0 - (S1 - (S2 - S3 / nn) / nn) / nn) / n
    } else {
        (S0 - (S1 - (S2 - (S3 - S4 / nn) / nn) / nn) / nn) / n
    }
}

/// Deviance term `x ln(x / np) + np - x`, evaluated without cancellation.
fn bd0(x: f64, np: f64) -> f64 {
    if (x - np).abs() < 0.1 * (x + np) {
        let mut v = (x - np) / (x + np);
        let mut s = (x - np) * v;
        if s.abs() < f64::MIN_POSITIVE {
            return s;
        }
        let mut ej = 2.0 * x * v;
        v *= v;
        for j in 1..1000 {
            ej *= v;
            let s1 = s + ej / (2 * j + 1) as f64;
            if s1 == s {
                return s1;
            }
            s = s1;
        }
        s
    } else {
        x * (x / np).ln() + np - x
    }
}
