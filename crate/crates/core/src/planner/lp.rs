//! Stochastic root policy as a small linear program.
//!
//! maximize `sum_a pi(a) q(a)` subject to `sum_a pi(a) env(a) <= beta`,
//! `sum_a pi(a) col(a) <= eps_col` and `pi` a distribution. With two
//! inequality constraints an optimal vertex has at most three nonzero
//! entries, so all supports of size one to three are enumerated.

/// Returns the optimal distribution, or `None` when infeasible.
pub fn solve_lp(q: &[f64], env: &[f64], col: &[f64], beta: f64, eps_col: f64, eps_lp: f64) -> Option<Vec<f64>> {
    let n = q.len();
    assert!(env.len() == n && col.len() == n);
    let feasible = |pi: &[f64]| {
        dot(pi, env) <= beta + eps_lp && dot(pi, col) <= eps_col + eps_lp && pi.iter().all(|p| *p >= 0.0)
    };
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut consider = |pi: Vec<f64>| {
        if !feasible(&pi) {
            return;
        }
        let value = dot(&pi, q);
        if best.as_ref().is_none_or(|(b, _)| value > *b + 1e-12) {
            best = Some((value, pi));
        }
    };
    for a in 0..n {
        let mut pi = vec![0.0; n];
        pi[a] = 1.0;
        consider(pi);
    }
    for a in 0..n {
        for b in a + 1..n {
            for (g, bound) in [(env, beta), (col, eps_col)] {
                let denom = g[a] - g[b];
                if denom.abs() < 1e-15 {
                    continue;
                }
                let p = (bound - g[b]) / denom;
                if p > 0.0 && p < 1.0 {
                    let mut pi = vec![0.0; n];
                    pi[a] = p;
                    pi[b] = 1.0 - p;
                    consider(pi);
                }
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let m = [[1.0, 1.0, 1.0], [env[a], env[b], env[c]], [col[a], col[b], col[c]]];
                if let Some(x) = solve3(m, [1.0, beta, eps_col]) {
                    if x.iter().all(|v| *v > 0.0) {
                        let mut pi = vec![0.0; n];
                        pi[a] = x[0];
                        pi[b] = x[1];
                        pi[c] = x[2];
                        consider(pi);
                    }
                }
            }
        }
    }
    best.map(|(_, pi)| pi)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn det3(m: [[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn solve3(m: [[f64; 3]; 3], rhs: [f64; 3]) -> Option<[f64; 3]> {
    let d = det3(m);
    if d.abs() < 1e-12 {
        return None;
    }
    let mut x = [0.0; 3];
    for (i, xi) in x.iter_mut().enumerate() {
        let mut mi = m;
        for r in 0..3 {
            mi[r][i] = rhs[r];
        }
        *xi = det3(mi) / d;
    }
    Some(x)
}
