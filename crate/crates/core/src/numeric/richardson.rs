//! Polynomial (Neville) extrapolation to `h = 0`.

/// Full Neville tableau; `table[j][k]` interpolates the points `j−k..=j`.
pub fn neville_table(h: &[f64], g: &[f64]) -> Vec<Vec<f64>> {
    assert_eq!(h.len(), g.len());
    let mut table: Vec<Vec<f64>> = Vec::with_capacity(h.len());
    for j in 0..h.len() {
        let mut row = vec![g[j]];
        for k in 1..=j {
            let prev = &table[j - 1];
            let num = h[j - k] * row[k - 1] - h[j] * prev[k - 1];
            row.push(num / (h[j - k] - h[j]));
        }
        table.push(row);
    }
    table
}

/// Diagonal of the tableau: the extrapolated value using the first `j+1` points.
pub fn neville_diagonal(h: &[f64], g: &[f64]) -> Vec<f64> {
    neville_table(h, g).into_iter().map(|row| *row.last().expect("nonempty row")).collect()
}

/// Extrapolated limit and the last-step difference as its error estimate.
pub fn extrapolate(h: &[f64], g: &[f64]) -> (f64, f64) {
    let diag = neville_diagonal(h, g);
    let n = diag.len();
    let v = diag[n - 1];
    let err = if n > 1 { (v - diag[n - 2]).abs() } else { f64::INFINITY };
    (v, err)
}

/// The ladder `h·2^{−j}`, `j = 0..=levels`.
pub fn geometric_ladder(h: f64, levels: usize) -> Vec<f64> {
    (0..=levels).map(|j| h * 0.5f64.powi(j as i32)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_for_polynomials() {
        let h = geometric_ladder(0.25, 6);
        let g: Vec<f64> = h.iter().map(|x| 3.0 - 2.0 * x + 5.0 * x * x * x).collect();
        let (v, e) = extrapolate(&h, &g);
        assert!((v - 3.0).abs() < 1e-12);
        assert!(e < 1e-12);
    }

    #[test]
    fn smooth_function_limit() {
        // (e^h − 1)/h → 1
        let h = geometric_ladder(0.25, 6);
        let g: Vec<f64> = h.iter().map(|x| x.exp_m1() / x).collect();
        let (v, _) = extrapolate(&h, &g);
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reciprocal_diverges() {
        // extrapolating 1/h at 0 sums 1/h_j: the diagonal keeps growing
        let h = geometric_ladder(0.25, 4);
        let g: Vec<f64> = h.iter().map(|x| 1.0 / x).collect();
        let d = neville_diagonal(&h, &g);
        let expect: f64 = h.iter().map(|x| 1.0 / x).sum();
        assert!((d[4] - expect).abs() < 1e-9 * expect);
    }
}
