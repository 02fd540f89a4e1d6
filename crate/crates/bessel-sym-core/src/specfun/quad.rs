//! Adaptive Gauss–Kronrod 15(7) quadrature.
//!
//! Globally adaptive: the interval with the largest error estimate is
//! bisected until the summed error meets the tolerance or the panel budget
//! runs out (`converged = false` then, so callers can attach an accuracy
//! flag instead of looping forever). The worst-first order is made total by
//! an insertion counter, which keeps results bit-deterministic.
//!
//! Integrable endpoint singularities (the t^{a−1} of the Tricomi integral)
//! just concentrate bisections at the endpoint; intervals that can no
//! longer be split at f64 resolution are retired with their error.

use alloc::collections::BinaryHeap;
use core::cmp::Ordering;

use libm::fabs;

/// 15-point Kronrod abscissae on [-1,1], positive half in decreasing order,
/// last entry the centre (QUADPACK dqk15 constants).
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

/// 7-point Gauss weights for XGK[1], XGK[3], XGK[5] and the centre.
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub panels: u32,
    /// False when the panel budget ran out before the summed error estimate
    /// met the tolerance; the value is then the best available estimate.
    pub converged: bool,
}

/// One Gauss–Kronrod 15(7) panel: returns (kronrod, |kronrod − gauss|).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let half = 0.5 * (b - a);
    let centre = 0.5 * (a + b);
    let fc = f(centre);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let dx = half * XGK[i];
        let fsum = f(centre - dx) + f(centre + dx);
        kronrod += WGK[i] * fsum;
        if i % 2 == 1 {
            gauss += WG[i / 2] * fsum;
        }
    }
    kronrod *= half;
    gauss *= half;
    (kronrod, fabs(kronrod - gauss))
}

struct Interval {
    err: f64,
    a: f64,
    b: f64,
    value: f64,
    seq: u64,
}

impl PartialEq for Interval {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Interval {}
impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Interval {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

/// Integrate f over [a,b] until the summed error estimate drops below
/// `max(abs_tol, rel_tol·|I|)`.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_panels: u32,
) -> QuadResult {
    let (value, err) = gk15(&f, a, b);
    let mut heap: BinaryHeap<Interval> = BinaryHeap::new();
    let mut seq = 0u64;
    heap.push(Interval {
        err,
        a,
        b,
        value,
        seq,
    });
    let mut total_value = value;
    let mut total_err = err;
    let mut retired_err = 0.0f64; // unsplittable intervals keep their error
    let mut panels = 1u32;
    let mut converged = true;
    loop {
        let tol = abs_tol.max(rel_tol * fabs(total_value));
        if total_err <= tol {
            break;
        }
        if panels >= max_panels {
            converged = false;
            break;
        }
        let worst = match heap.pop() {
            Some(w) => w,
            None => {
                // everything is retired; the remaining error is irreducible
                converged = total_err <= tol;
                break;
            }
        };
        let mid = 0.5 * (worst.a + worst.b);
        if !(worst.a < mid && mid < worst.b) {
            retired_err += worst.err;
            continue;
        }
        let (v1, e1) = gk15(&f, worst.a, mid);
        let (v2, e2) = gk15(&f, mid, worst.b);
        panels += 1;
        total_value += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.err;
        seq += 1;
        heap.push(Interval {
            err: e1,
            a: worst.a,
            b: mid,
            value: v1,
            seq,
        });
        seq += 1;
        heap.push(Interval {
            err: e2,
            a: mid,
            b: worst.b,
            value: v2,
            seq,
        });
    }
    QuadResult {
        value: total_value,
        error_estimate: total_err + retired_err,
        panels,
        converged,
    }
}
