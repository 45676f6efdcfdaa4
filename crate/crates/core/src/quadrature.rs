//! Gauss–Legendre rules and composite panel integration.

use std::f64::consts::PI;

use num_complex::Complex64;

/// Nodes and weights of the n-point Gauss–Legendre rule on [−1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Builds the rule by Newton iteration on P_n from the Chebyshev guesses.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// ∫_a^b f using this rule mapped to [a, b].
    pub fn integrate<F>(&self, a: f64, b: f64, mut f: F) -> Complex64
    where
        F: FnMut(f64) -> Complex64,
    {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = Complex64::new(0.0, 0.0);
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }

    /// Sums the rule over consecutive panels given by `breaks`.
    pub fn integrate_panels<F>(&self, breaks: &[f64], mut f: F) -> Complex64
    where
        F: FnMut(f64) -> Complex64,
    {
        breaks
            .windows(2)
            .map(|w| self.integrate(w[0], w[1], &mut f))
            .sum()
    }
}

/// P_n(x) and P_n'(x) by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// `panels` equal panels on [a, b].
pub fn uniform_breaks(a: f64, b: f64, panels: usize) -> Vec<f64> {
    (0..=panels)
        .map(|i| a + (b - a) * i as f64 / panels as f64)
        .collect()
}

/// Panels on [a, b] shrinking geometrically (ratio 1/2) toward `p`, which must
/// lie in [a, b]. The panel touching `p` has width below `min_width`.
pub fn graded_breaks(a: f64, b: f64, p: f64, min_width: f64, per_side: usize) -> Vec<f64> {
    let mut breaks = vec![];
    let side = |len: f64| -> Vec<f64> {
        // offsets from p, increasing
        if len <= 0.0 {
            return vec![];
        }
        let mut d = len;
        let mut out = vec![len];
        while d > min_width {
            d *= 0.5;
            out.push(d);
        }
        out.reverse();
        // refine the coarse outer part so each graded step is split evenly
        let mut fine = vec![];
        let mut prev = 0.0;
        for &o in &out {
            for j in 1..=per_side {
                fine.push(prev + (o - prev) * j as f64 / per_side as f64);
            }
            prev = o;
        }
        fine
    };
    for o in side(p - a).into_iter().rev() {
        breaks.push(p - o);
    }
    breaks.push(p);
    for o in side(b - p) {
        breaks.push(p + o);
    }
    breaks.dedup_by(|x, y| (*x - *y).abs() == 0.0);
    breaks
}
