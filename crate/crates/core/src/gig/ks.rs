/// `c(α)` for `α = 0.01` in the two-sample rejection threshold
/// `c(α) √((n₁ + n₂) / (n₁ n₂))`.
pub const KS_C_ALPHA_001: f64 = 1.628;

/// Two-sample Kolmogorov–Smirnov statistic `sup_x |F₁(x) - F₂(x)|`.
///
/// Ties across samples are stepped over together so the empirical CDFs are
/// compared only at points where both are right-continuous.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    if a.is_empty() || b.is_empty() {
        return 0.0;
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

pub fn ks_threshold(n1: usize, n2: usize, c: f64) -> f64 {
    let (n1, n2) = (n1 as f64, n2 as f64);
    c * ((n1 + n2) / (n1 * n2)).sqrt()
}
