//! Gauss–Legendre rules on [-1, 1], cached by order.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

static CACHE: OnceLock<Mutex<HashMap<u32, Arc<GaussRule>>>> = OnceLock::new();

/// Nodes and weights of the `n`-point Gauss–Legendre rule on [-1, 1].
pub fn gauss_legendre(n: u32) -> Arc<GaussRule> {
    assert!(n >= 1, "rule order must be positive");
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().expect("gauss rule cache poisoned");
    map.entry(n).or_insert_with(|| Arc::new(compute(n))).clone()
}

/// Legendre polynomial P_n and its derivative at `x` by the three-term
/// recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn compute(n: u32) -> GaussRule {
    let n = n as usize;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess, then Newton.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // i counts from the positive end of the interval.
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = w;
        nodes[i] = -x;
        weights[i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    GaussRule { nodes, weights }
}
