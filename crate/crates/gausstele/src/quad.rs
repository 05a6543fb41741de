//! One-dimensional quadrature: Gauss–Legendre panel rules for the Fock-space
//! kernel integrals and an adaptive Gauss–Kronrod rule for scalar integrands.

use crate::{Error, Result};

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`,
/// computed by Newton iteration on the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-based initial guess for the i-th root.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre P_n(x) and derivative via the three-term recurrence.
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 1..n {
                let p2 = ((2 * k + 1) as f64 * x * p1 - k as f64 * p0) / (k + 1) as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// A fixed composite Gauss–Legendre rule: `panels` equal panels over `[a, b]`
/// with `order` nodes each. Returns the flattened nodes and weights.
pub fn panel_rule(a: f64, b: f64, panels: usize, order: usize) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(order);
    let mut nodes = Vec::with_capacity(panels * order);
    let mut weights = Vec::with_capacity(panels * order);
    let h = (b - a) / panels as f64;
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mid = lo + 0.5 * h;
        for (xi, wi) in x.iter().zip(&w) {
            nodes.push(mid + 0.5 * h * xi);
            weights.push(0.5 * h * wi);
        }
    }
    (nodes, weights)
}

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK constants).
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let x = h * XGK[j];
        let fsum = f(c - x) + f(c + x);
        kronrod += WGK[j] * fsum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * fsum;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

/// Adaptive Gauss–Kronrod integration of `f` over `[a, b]` to absolute
/// tolerance `abs_tol`. Returns the value and an error estimate.
pub fn adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> Result<(f64, f64)> {
    struct Seg {
        a: f64,
        b: f64,
        val: f64,
        err: f64,
    }
    let (val, err) = gk15(&f, a, b);
    let mut segs = vec![Seg { a, b, val, err }];
    for _ in 0..2000 {
        let total_err: f64 = segs.iter().map(|s| s.err).sum();
        if total_err <= abs_tol {
            let total: f64 = segs.iter().map(|s| s.val).sum();
            return Ok((total, total_err));
        }
        // Split the segment with the largest error estimate.
        let (imax, _) = segs
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.total_cmp(&y.1.err))
            .expect("non-empty");
        let seg = segs.swap_remove(imax);
        let mid = 0.5 * (seg.a + seg.b);
        if mid <= seg.a || mid >= seg.b {
            return Err(Error::QuadratureFailure(format!(
                "interval [{:.3e}, {:.3e}] cannot be refined further (err {:.3e})",
                seg.a, seg.b, seg.err
            )));
        }
        let (v1, e1) = gk15(&f, seg.a, mid);
        let (v2, e2) = gk15(&f, mid, seg.b);
        segs.push(Seg {
            a: seg.a,
            b: mid,
            val: v1,
            err: e1,
        });
        segs.push(Seg {
            a: mid,
            b: seg.b,
            val: v2,
            err: e2,
        });
    }
    Err(Error::QuadratureFailure(format!(
        "no convergence to {abs_tol:.3e} after 2000 refinements"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_rule_integrates_polynomials_exactly() {
        let (x, w) = gauss_legendre(8);
        // degree-15 monomial is the highest exact one
        let exact = 2.0 / 15.0; // integral of x^14 over [-1,1]
        let got: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(14)).sum();
        assert!((got - exact).abs() < 1e-14);
        let odd: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(13)).sum();
        assert!(odd.abs() < 1e-15);
    }

    #[test]
    fn panel_rule_matches_analytic_exponential() {
        let (n, w) = panel_rule(0.0, 20.0, 10, 16);
        let got: f64 = n.iter().zip(&w).map(|(x, wi)| wi * (-x).exp()).sum();
        assert!((got - (1.0 - (-20.0f64).exp())).abs() < 1e-13);
    }

    #[test]
    fn adaptive_handles_sharp_exponential() {
        // callers integrate exponential weights over a few decay lengths
        let sigma = 1e-4;
        let (v, _) = adaptive(|u| (-u / sigma).exp() / sigma, 0.0, 40.0 * sigma, 1e-10).unwrap();
        assert!((v - 1.0).abs() < 1e-9, "got {v}");
    }

    #[test]
    fn adaptive_oscillatory() {
        let (v, _) = adaptive(|x| (40.0 * x).sin(), 0.0, 1.0, 1e-12).unwrap();
        let exact = (1.0 - (40.0f64).cos()) / 40.0;
        assert!((v - exact).abs() < 1e-11);
    }
}
