//! Gauss-Legendre nodes and the trapezoid rule.

use crate::scalar::Real;

/// Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

impl<T: Real> GaussLegendre<T> {
    /// Newton iteration on `P_n` from the Tricomi initial guesses.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let one = T::one();
        let two = one + one;
        let nf = T::count(n);
        let mut nodes = vec![T::zero(); n];
        let mut weights = vec![T::zero(); n];
        let half = n.div_ceil(2);
        for i in 0..half {
            // i-th largest root.
            let theta = T::PI() * (T::count(i) + T::lit(0.75)) / (nf + T::lit(0.5));
            let mut x = theta.cos();
            let mut dp = T::one();
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let step = p / d;
                x = x - step;
                if step.abs() <= T::epsilon() * T::lit(4.0) {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != T::zero() {
                dp = d;
            }
            let w = two / ((one - x * x) * dp * dp);
            nodes[n - 1 - i] = x;
            nodes[i] = -x;
            weights[n - 1 - i] = w;
            weights[i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = T::zero();
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped onto `[a, b]`.
    pub fn on_interval(&self, a: T, b: T) -> (Vec<T>, Vec<T>) {
        let half = (b - a) / T::lit(2.0);
        let mid = (a + b) / T::lit(2.0);
        let xs = self.nodes.iter().map(|&x| mid + half * x).collect();
        let ws = self.weights.iter().map(|&w| half * w).collect();
        (xs, ws)
    }

    pub fn integrate<F: Fn(T) -> T>(&self, a: T, b: T, f: F) -> T {
        let (xs, ws) = self.on_interval(a, b);
        xs.into_iter().zip(ws).map(|(x, w)| w * f(x)).sum()
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre<T: Real>(n: usize, x: T) -> (T, T) {
    let one = T::one();
    let mut p0 = one;
    let mut p1 = x;
    for k in 2..=n {
        let kf = T::count(k);
        let p2 = ((kf + kf - one) * x * p1 - (kf - one) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (one, T::zero());
    }
    let nf = T::count(n);
    let d = nf * (x * p1 - p0) / (x * x - one);
    (p1, d)
}

/// Trapezoid rule over uniformly spaced samples.
pub fn trapezoid<T: Real>(values: &[T], h: T) -> T {
    match values {
        [] | [_] => T::zero(),
        [first, inner @ .., last] => h * ((*first + *last) / T::lit(2.0) + inner.iter().copied().sum::<T>()),
    }
}

/// Uniform grid on `[a, b]` with spacing no larger than `max_step`. Returns
/// the points and the actual spacing.
pub fn uniform_grid<T: Real>(a: T, b: T, max_step: T) -> (Vec<T>, T) {
    let span = b - a;
    let intervals = (span / max_step).ceil().to_usize().unwrap_or(1).max(1);
    let h = span / T::count(intervals);
    let pts = (0..=intervals).map(|k| if k == intervals { b } else { a + h * T::count(k) }).collect();
    (pts, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn low_order_nodes_match_closed_forms() {
        let r = GaussLegendre::<f64>::new(2);
        assert_relative_eq!(r.nodes[1], 1.0 / 3f64.sqrt(), epsilon = 1e-15);
        assert_relative_eq!(r.weights[0], 1.0, epsilon = 1e-15);
        let r = GaussLegendre::<f64>::new(3);
        assert_eq!(r.nodes[1], 0.0);
        assert_relative_eq!(r.nodes[2], (0.6f64).sqrt(), epsilon = 1e-15);
        assert_relative_eq!(r.weights[1], 8.0 / 9.0, epsilon = 1e-15);
    }

    #[test]
    fn weights_sum_to_interval_length() {
        for n in [1, 7, 64, 256, 512] {
            let r = GaussLegendre::<f64>::new(n);
            let s: f64 = r.weights.iter().sum();
            assert_relative_eq!(s, 2.0, epsilon = 1e-13);
            assert!(r.nodes.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn integrates_polynomials_exactly() {
        let r = GaussLegendre::<f64>::new(5);
        // Degree 9 is the highest exact degree for five nodes.
        let v = r.integrate(0.0, 2.0, |x| x.powi(9));
        assert_relative_eq!(v, 2f64.powi(10) / 10.0, epsilon = 1e-12);
    }

    #[test]
    fn integrates_gaussian_on_wide_rule() {
        let r = GaussLegendre::<f64>::new(256);
        let v = r.integrate(-10.0, 10.0, |x| (-x * x).exp());
        assert_relative_eq!(v, std::f64::consts::PI.sqrt(), epsilon = 1e-13);
    }

    #[test]
    fn single_precision_rule() {
        let r = GaussLegendre::<f32>::new(64);
        let v = r.integrate(0.0, 1.0, |x| x * x);
        assert!((v - 1.0 / 3.0).abs() < 1e-5);
    }

    #[test]
    fn trapezoid_and_grid() {
        let (xs, h) = uniform_grid(-1.0, 0.0, 0.3);
        assert_eq!(xs.len(), 5);
        assert_relative_eq!(h, 0.25);
        assert_eq!(*xs.last().unwrap(), 0.0);
        let ys: Vec<f64> = xs.iter().map(|x| 2.0 * x + 1.0).collect();
        assert_relative_eq!(trapezoid(&ys, h), 0.0, epsilon = 1e-15);
        assert_eq!(trapezoid::<f64>(&[1.0], 0.1), 0.0);
    }
}
