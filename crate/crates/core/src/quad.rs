//! Globally adaptive Gauss-Kronrod (7/15) quadrature.
//!
//! The interval list is seeded with caller-supplied breakpoints and the panel
//! with the largest error estimate is bisected until the summed estimate meets
//! `max(abs_tol, rel_tol * |value|)`.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

const KRONROD_NODES: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const KRONROD_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for the odd-indexed Kronrod nodes (the last one is the center).
const GAUSS_WEIGHTS: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Options {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            abs_tol: 0.0,
            rel_tol: 1e-12,
            max_intervals: 20_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub abs_error: f64,
    pub intervals: usize,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * KRONROD_WEIGHTS[7];
    let mut gauss = fc * GAUSS_WEIGHTS[3];
    for (j, (&x, &w)) in KRONROD_NODES[..7].iter().zip(&KRONROD_WEIGHTS[..7]).enumerate() {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        kronrod += w * pair;
        if j % 2 == 1 {
            gauss += GAUSS_WEIGHTS[j / 2] * pair;
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).abs();
    Panel { a, b, value, error }
}

/// Integrates `f` over `[breakpoints[0], breakpoints[last]]`.
///
/// `breakpoints` must be strictly increasing with at least two entries. A
/// degenerate (single-point) range integrates to zero.
pub fn integrate<F: FnMut(f64) -> f64>(
    mut f: F,
    breakpoints: &[f64],
    opts: Options,
) -> Result<Integral> {
    if breakpoints.len() < 2 || breakpoints.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::param(
            "breakpoints",
            "need at least two strictly increasing values",
        ));
    }
    if !(opts.abs_tol >= 0.0 && opts.rel_tol >= 0.0) || (opts.abs_tol == 0.0 && opts.rel_tol == 0.0)
    {
        return Err(Error::param("tolerance", "need a positive absolute or relative tolerance"));
    }
    let mut heap: BinaryHeap<Panel> = breakpoints
        .windows(2)
        .map(|w| kronrod15(&mut f, w[0], w[1]))
        .collect();
    let mut evaluations = 15 * heap.len();
    loop {
        let (value, error) = heap
            .iter()
            .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error));
        let target = opts.abs_tol.max(opts.rel_tol * value.abs());
        if error <= target || !error.is_finite() {
            if !value.is_finite() || !error.is_finite() {
                return Err(Error::QuadratureNonConvergence {
                    estimate: value,
                    error_estimate: error,
                    intervals: heap.len(),
                });
            }
            return Ok(Integral {
                value,
                abs_error: error,
                intervals: heap.len(),
                evaluations,
            });
        }
        if heap.len() >= opts.max_intervals {
            return Err(Error::QuadratureNonConvergence {
                estimate: value,
                error_estimate: error,
                intervals: heap.len(),
            });
        }
        let worst = heap.pop().expect("at least one panel");
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            // Interval can no longer be split in double precision.
            return Err(Error::QuadratureNonConvergence {
                estimate: value,
                error_estimate: error,
                intervals: heap.len() + 1,
            });
        }
        heap.push(kronrod15(&mut f, worst.a, mid));
        heap.push(kronrod15(&mut f, mid, worst.b));
        evaluations += 30;
    }
}

/// Breakpoints for `[a, b]`, `0 < a < b`, spaced geometrically with roughly
/// `per_decade` panels per factor of ten (at least one panel).
pub fn geometric_breakpoints(a: f64, b: f64, per_decade: usize) -> Vec<f64> {
    let decades = (b / a).log10();
    let n = ((decades * per_decade as f64).ceil() as usize).max(1);
    let ratio = (b / a).powf(1.0 / n as f64);
    let mut pts: Vec<f64> = (0..n).map(|i| a * ratio.powi(i as i32)).collect();
    pts.push(b);
    pts.dedup_by(|x, y| !(*x > *y));
    pts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(|x| 3.0 * x * x - x + 2.0, &[-1.0, 2.0], Options::default()).unwrap();
        // [x^3 - x^2/2 + 2x] from -1 to 2 = (8 - 2 + 4) - (-1 - 0.5 - 2)
        assert!((r.value - 13.5).abs() < 1e-13);
    }

    #[test]
    fn endpoint_singularity_converges() {
        // int_0^1 x^-0.5 = 2
        let r = integrate(|x| 1.0 / x.sqrt(), &[0.0, 1.0], Options { rel_tol: 1e-10, ..Options::default() })
            .unwrap();
        assert!((r.value - 2.0).abs() < 1e-8, "{}", r.value);
    }

    #[test]
    fn oscillatory_with_breakpoints() {
        let pts = geometric_breakpoints(1e-3, 1e3, 4);
        assert!(pts.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(pts[0], 1e-3);
        assert_eq!(*pts.last().unwrap(), 1e3);
        let r = integrate(|x| 1.0 / (1.0 + x * x), &pts, Options::default()).unwrap();
        let exact = 1e3f64.atan() - 1e-3f64.atan();
        assert!((r.value - exact).abs() < 1e-12);
    }

    #[test]
    fn budget_exhaustion_reports_partial_estimate() {
        let opts = Options { abs_tol: 0.0, rel_tol: 1e-15, max_intervals: 3 };
        match integrate(|x| (1.0 / x).sin(), &[1e-4, 1.0], opts) {
            Err(Error::QuadratureNonConvergence { estimate, intervals, .. }) => {
                assert!(estimate.is_finite());
                assert_eq!(intervals, 3);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_bad_breakpoints() {
        assert!(integrate(|x| x, &[1.0], Options::default()).is_err());
        assert!(integrate(|x| x, &[1.0, 1.0], Options::default()).is_err());
    }
}
