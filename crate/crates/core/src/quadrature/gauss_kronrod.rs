//! Adaptive 7/15-point Gauss–Kronrod integration of complex-valued
//! integrands on finite intervals.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::numeric::CompensatedSum;
use crate::Complex;

// QUADPACK qk15 abscissae and weights
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
pub(crate) struct Panel {
    pub a: f64,
    pub b: f64,
    pub value: Complex,
    pub error: f64,
    /// `∫ |f|` estimate, for the roundoff floor.
    pub abs_value: f64,
}

/// One 15-point Kronrod panel with `|K15 - G7|` as its error.
pub(crate) fn gk15<F: Fn(f64) -> Complex + ?Sized>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_value = fc.norm() * WGK[7];
    for (j, (&x, &wk)) in XGK[..7].iter().zip(&WGK[..7]).enumerate() {
        let dx = half * x;
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        let pair = f1 + f2;
        kronrod += pair * wk;
        abs_value += (f1.norm() + f2.norm()) * wk;
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    let value = kronrod * half;
    Panel {
        a,
        b,
        value,
        error: ((kronrod - gauss) * half).norm(),
        abs_value: abs_value * half.abs(),
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Adaptive {
    pub value: Complex,
    pub error: f64,
    pub panels: usize,
    pub converged: bool,
}

struct ByError(Panel, usize);

impl PartialEq for ByError {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for ByError {}
impl PartialOrd for ByError {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for ByError {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .error
            .total_cmp(&other.0.error)
            .then_with(|| other.1.cmp(&self.1))
    }
}

/// Bisects the worst panel until the summed error drops below
/// `max(abs_tol, rel_tol · |I|)` or the panel budget is spent. Panels are
/// summed in left-to-right order so the result does not depend on the
/// refinement history.
pub(crate) fn adaptive<F: Fn(f64) -> Complex + ?Sized>(
    f: &F,
    a: f64,
    b: f64,
    initial_panels: usize,
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
) -> Adaptive {
    let n = initial_panels.max(1);
    let width = (b - a) / n as f64;
    let mut heap = BinaryHeap::with_capacity(2 * n);
    let mut seq = 0usize;
    let mut total_err = 0.0;
    let mut total = Complex::new(0.0, 0.0);
    let mut total_abs = 0.0;
    for i in 0..n {
        let lo = a + width * i as f64;
        let hi = if i + 1 == n { b } else { a + width * (i + 1) as f64 };
        let p = gk15(f, lo, hi);
        total_err += p.error;
        total += p.value;
        total_abs += p.abs_value;
        heap.push(ByError(p, seq));
        seq += 1;
    }
    let target = |total: Complex, total_abs: f64| {
        abs_tol
            .max(rel_tol * total.norm())
            .max(50.0 * f64::EPSILON * total_abs)
    };
    while total_err > target(total, total_abs) && heap.len() < max_panels {
        let ByError(worst, _) = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            // cannot split further
            heap.push(ByError(worst, seq));
            break;
        }
        let left = gk15(f, worst.a, mid);
        let right = gk15(f, mid, worst.b);
        total_err += left.error + right.error - worst.error;
        total += left.value + right.value - worst.value;
        total_abs += left.abs_value + right.abs_value - worst.abs_value;
        heap.push(ByError(left, seq));
        heap.push(ByError(right, seq + 1));
        seq += 2;
    }
    let mut panels: Vec<Panel> = heap.into_iter().map(|p| p.0).collect();
    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    let mut sum = CompensatedSum::new();
    let mut err = 0.0;
    let mut abs_value = 0.0;
    for p in &panels {
        sum.add(p.value);
        err += p.error;
        abs_value += p.abs_value;
    }
    let value = sum.value();
    let floor = 50.0 * f64::EPSILON * abs_value;
    Adaptive {
        value,
        error: err.max(floor),
        panels: panels.len(),
        converged: err <= target(value, abs_value),
    }
}

/// `∫_0^1 f` to relative accuracy `rel_tol`, for internal special-function use.
pub(crate) fn adaptive_unit_interval<F: Fn(f64) -> Complex>(f: &F, initial_panels: usize, rel_tol: f64) -> Complex {
    adaptive(f, 0.0, 1.0, initial_panels, 1e-300, rel_tol, 1 << 14).value
}
