//! Monotone cubic Hermite interpolation (Fritsch–Carlson).
//!
//! Preserves monotonicity of the data, so interpolating a nondecreasing
//! kinetic symbol never produces a spurious negative derivative.

/// A shape-preserving piecewise-cubic interpolant on strictly increasing nodes.
#[derive(Debug, Clone, serde::Serialize)]
pub struct Pchip {
    x: Vec<f64>,
    y: Vec<f64>,
    slope: Vec<f64>,
}

impl Pchip {
    /// Builds the interpolant; `x` must be strictly increasing with at least
    /// two nodes and all values finite.
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self, String> {
        if x.len() != y.len() {
            return Err("pchip: x and y lengths differ".into());
        }
        if x.len() < 2 {
            return Err("pchip: need at least two nodes".into());
        }
        for w in x.windows(2) {
            if !(w[1] > w[0]) {
                return Err(format!("pchip: nodes not strictly increasing at x = {}", w[0]));
            }
        }
        if x.iter().chain(y.iter()).any(|v| !v.is_finite()) {
            return Err("pchip: non-finite node or value".into());
        }

        let n = x.len();
        let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
        let d: Vec<f64> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / h[i]).collect();

        let mut slope = vec![0.0; n];
        for i in 1..n - 1 {
            if d[i - 1] * d[i] <= 0.0 {
                slope[i] = 0.0;
            } else {
                let w1 = 2.0 * h[i] + h[i - 1];
                let w2 = h[i] + 2.0 * h[i - 1];
                slope[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
            }
        }
        slope[0] = edge_slope(h[0], h.get(1).copied().unwrap_or(h[0]), d[0], d.get(1).copied().unwrap_or(d[0]));
        slope[n - 1] = edge_slope(
            h[n - 2],
            if n >= 3 { h[n - 3] } else { h[n - 2] },
            d[n - 2],
            if n >= 3 { d[n - 3] } else { d[n - 2] },
        );

        Ok(Self { x, y, slope })
    }

    pub fn x_min(&self) -> f64 {
        self.x[0]
    }

    pub fn x_max(&self) -> f64 {
        *self.x.last().unwrap()
    }

    /// Value and derivative at `t`; `None` outside the node span.
    pub fn eval(&self, t: f64) -> Option<(f64, f64)> {
        if !(t >= self.x_min() && t <= self.x_max()) {
            return None;
        }
        // Binary search for the bracketing interval.
        let mut lo = 0usize;
        let mut hi = self.x.len() - 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.x[mid] <= t {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let h = self.x[lo + 1] - self.x[lo];
        let s = (t - self.x[lo]) / h;
        let (y0, y1) = (self.y[lo], self.y[lo + 1]);
        let (m0, m1) = (self.slope[lo] * h, self.slope[lo + 1] * h);

        let s2 = s * s;
        let s3 = s2 * s;
        let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        let h10 = s3 - 2.0 * s2 + s;
        let h01 = -2.0 * s3 + 3.0 * s2;
        let h11 = s3 - s2;
        let value = h00 * y0 + h10 * m0 + h01 * y1 + h11 * m1;

        let dh00 = 6.0 * s2 - 6.0 * s;
        let dh10 = 3.0 * s2 - 4.0 * s + 1.0;
        let dh01 = -dh00;
        let dh11 = 3.0 * s2 - 2.0 * s;
        let deriv = (dh00 * y0 + dh10 * m0 + dh01 * y1 + dh11 * m1) / h;
        Some((value, deriv))
    }
}

/// Non-centered three-point endpoint slope with the usual monotone clamps.
fn edge_slope(h0: f64, h1: f64, d0: f64, d1: f64) -> f64 {
    let m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if m * d0 <= 0.0 {
        0.0
    } else if d0 * d1 <= 0.0 && m.abs() > 3.0 * d0.abs() {
        3.0 * d0
    } else {
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_nodes() {
        let x = vec![0.0, 1.0, 2.0, 4.0];
        let y = vec![0.0, 1.0, 1.5, 2.0];
        let p = Pchip::new(x.clone(), y.clone()).unwrap();
        for (xi, yi) in x.iter().zip(&y) {
            let (v, _) = p.eval(*xi).unwrap();
            assert!((v - yi).abs() < 1e-14);
        }
        assert!(p.eval(-0.1).is_none());
        assert!(p.eval(4.1).is_none());
    }

    #[test]
    fn monotone_data_gives_monotone_interpolant() {
        let x: Vec<f64> = (0..40).map(|i| (i as f64 * 0.25).powi(2)).collect();
        let y: Vec<f64> = x.iter().map(|u| (2.0 * u).sqrt()).collect();
        let p = Pchip::new(x, y).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for i in 0..2000 {
            let t = p.x_min() + (p.x_max() - p.x_min()) * i as f64 / 1999.0;
            let (v, dv) = p.eval(t).unwrap();
            assert!(v >= prev - 1e-12, "non-monotone at t={t}");
            assert!(dv >= -1e-12, "negative slope at t={t}");
            prev = v;
        }
    }

    #[test]
    fn rejects_bad_nodes() {
        assert!(Pchip::new(vec![0.0, 0.0, 1.0], vec![0.0, 0.0, 1.0]).is_err());
        assert!(Pchip::new(vec![0.0], vec![0.0]).is_err());
    }
}
