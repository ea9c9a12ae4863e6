use super::HarnessError;

/// Gaussian-KL lower-bound reference `(N−1)·Δ / max_k KL(θ*, θ_k) · ln T`
/// for the instance whose arms are the scaled unit vectors plus the origin.
///
/// `Δ = θ* − max(second-largest θ_n, 0)` and the maximum runs over every
/// suboptimal arm mean, the origin's mean 0 included.
pub fn lower_bound_curve(theta: &[f64], r: f64, ts: &[u64]) -> Result<Vec<f64>, HarnessError> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(HarnessError::BadNoiseScale(r));
    }
    if theta.len() < 2 {
        return Err(HarnessError::Config("lower bound needs N >= 2".into()));
    }
    let (star_idx, &star) = theta
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .ok_or(HarnessError::TiedTheta)?;
    let second = theta.iter().enumerate().filter(|&(i, _)| i != star_idx).map(|(_, &t)| t).fold(f64::NEG_INFINITY, f64::max);
    if second >= star {
        return Err(HarnessError::TiedTheta);
    }
    let delta = star - second.max(0.0);
    if delta <= 0.0 {
        return Err(HarnessError::TiedTheta);
    }
    let kl = |mu: f64| (star - mu).powi(2) / (2.0 * r * r);
    let max_kl = theta
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != star_idx)
        .map(|(_, &t)| kl(t))
        .chain(std::iter::once(kl(0.0)))
        .fold(0.0, f64::max);
    let slope = (theta.len() - 1) as f64 * delta / max_kl;
    Ok(ts.iter().map(|&t| if t == 0 { 0.0 } else { slope * (t as f64).ln() }).collect())
}
