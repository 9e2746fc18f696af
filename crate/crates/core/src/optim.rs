//! Small derivative-free optimizers: golden-section search, periodic
//! grid-plus-refine maximization, and a two-dimensional Nelder-Mead.

use std::f64::consts::TAU;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section maximization of `f` on `[a, b]`; returns `(x, f(x))`.
pub fn golden_max(f: &mut impl FnMut(f64) -> f64, mut a: f64, mut b: f64, xtol: f64) -> (f64, f64) {
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while (b - a).abs() > xtol {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Result of a periodic maximization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodicMax {
    pub theta: f64,
    pub value: f64,
}

/// Maximizes a `2 pi`-periodic function: evaluate on a uniform grid of `k`
/// angles, then golden-section refine the bracket around each of the
/// `refine` best grid local maxima. Grid values are returned as well so
/// callers can reuse them.
pub fn maximize_periodic(
    mut f: impl FnMut(f64) -> f64,
    k: usize,
    refine: usize,
) -> (PeriodicMax, Vec<f64>) {
    let step = TAU / k as f64;
    let grid: Vec<f64> = (0..k).map(|i| f(step * i as f64)).collect();
    let mut peaks: Vec<usize> = (0..k)
        .filter(|&i| {
            let prev = grid[(i + k - 1) % k];
            let next = grid[(i + 1) % k];
            grid[i] >= prev && grid[i] >= next
        })
        .collect();
    peaks.sort_by(|&a, &b| grid[b].total_cmp(&grid[a]).then(a.cmp(&b)));
    if peaks.is_empty() {
        peaks.push(0);
    }

    let mut best = PeriodicMax {
        theta: 0.0,
        value: f64::NEG_INFINITY,
    };
    for &i in &peaks {
        if grid[i] > best.value {
            best = PeriodicMax {
                theta: step * i as f64,
                value: grid[i],
            };
        }
    }
    for &i in peaks.iter().take(refine) {
        let center = step * i as f64;
        let (t, v) = golden_max(&mut f, center - step, center + step, 1e-13);
        if v > best.value {
            best = PeriodicMax {
                theta: t.rem_euclid(TAU),
                value: v,
            };
        }
    }
    (best, grid)
}

/// Outcome of a Nelder-Mead run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexMin {
    pub x: [f64; 2],
    pub value: f64,
    pub evaluations: usize,
}

/// Nelder-Mead minimization in the plane with shrink restarts: after each
/// collapse the simplex is rebuilt around the incumbent at a fraction of its
/// initial size, until a restart no longer improves the value.
pub fn nelder_mead_2d(
    f: &mut impl FnMut([f64; 2]) -> f64,
    start: [f64; 2],
    initial_step: f64,
    xtol: f64,
    max_evals: usize,
) -> SimplexMin {
    let mut evals = 0usize;
    let mut best = SimplexMin {
        x: start,
        value: f(start),
        evaluations: 1,
    };
    evals += 1;
    let mut step = initial_step;
    let mut stale = 0;
    while evals < max_evals && stale < 3 {
        let run = nelder_mead_once(f, best.x, step, xtol, max_evals - evals);
        evals += run.evaluations;
        if run.value < best.value {
            let moved = ((run.x[0] - best.x[0]).powi(2) + (run.x[1] - best.x[1]).powi(2)).sqrt();
            best = SimplexMin {
                x: run.x,
                value: run.value,
                evaluations: evals,
            };
            stale = if moved < xtol { stale + 1 } else { 0 };
        } else {
            stale += 1;
        }
        step = (step * 0.1).max(xtol * 10.0);
    }
    best.evaluations = evals;
    best
}

fn nelder_mead_once(
    f: &mut impl FnMut([f64; 2]) -> f64,
    start: [f64; 2],
    step: f64,
    xtol: f64,
    max_evals: usize,
) -> SimplexMin {
    let mut pts = [
        start,
        [start[0] + step, start[1]],
        [start[0], start[1] + step],
    ];
    let mut vals = [f(pts[0]), f(pts[1]), f(pts[2])];
    let mut evals = 3;
    let lerp =
        |a: [f64; 2], b: [f64; 2], t: f64| [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];

    while evals < max_evals {
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        let (lo, mid, hi) = (idx[0], idx[1], idx[2]);
        let diam = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|(i, j)| {
                ((pts[i][0] - pts[j][0]).powi(2) + (pts[i][1] - pts[j][1]).powi(2)).sqrt()
            })
            .fold(0.0, f64::max);
        if diam < xtol {
            break;
        }
        let centroid = lerp(pts[lo], pts[mid], 0.5);
        let reflected = lerp(pts[hi], centroid, 2.0);
        let fr = f(reflected);
        evals += 1;
        if fr < vals[lo] {
            let expanded = lerp(pts[hi], centroid, 3.0);
            let fe = f(expanded);
            evals += 1;
            if fe < fr {
                pts[hi] = expanded;
                vals[hi] = fe;
            } else {
                pts[hi] = reflected;
                vals[hi] = fr;
            }
        } else if fr < vals[mid] {
            pts[hi] = reflected;
            vals[hi] = fr;
        } else {
            let (target, ft) = if fr < vals[hi] {
                (reflected, fr)
            } else {
                (pts[hi], vals[hi])
            };
            let contracted = lerp(centroid, target, 0.5);
            let fc = f(contracted);
            evals += 1;
            if fc < ft {
                pts[hi] = contracted;
                vals[hi] = fc;
            } else {
                for k in [mid, hi] {
                    pts[k] = lerp(pts[lo], pts[k], 0.5);
                    vals[k] = f(pts[k]);
                    evals += 1;
                }
            }
        }
    }
    let lo = (0..3)
        .min_by(|&a, &b| vals[a].total_cmp(&vals[b]))
        .unwrap_or(0);
    SimplexMin {
        x: pts[lo],
        value: vals[lo],
        evaluations: evals,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_peak() {
        let (x, v) = golden_max(&mut |x| -(x - 0.3).powi(2), -1.0, 1.0, 1e-12);
        assert!((x - 0.3).abs() < 1e-9);
        assert!(v.abs() < 1e-17);
    }

    #[test]
    fn periodic_max_of_cosine() {
        let (best, grid) = maximize_periodic(|t| (t - 1.234).cos(), 32, 3);
        assert_eq!(grid.len(), 32);
        assert!((best.theta - 1.234).abs() < 1e-6);
        assert!((best.value - 1.0).abs() < 1e-14);
    }

    #[test]
    fn nelder_mead_on_nonsmooth_cone() {
        let mut f = |x: [f64; 2]| ((x[0] - 1.0).powi(2) + (x[1] + 2.0).powi(2)).sqrt();
        let r = nelder_mead_2d(&mut f, [0.0, 0.0], 0.5, 1e-13, 10_000);
        assert!(
            (r.x[0] - 1.0).abs() < 1e-10 && (r.x[1] + 2.0).abs() < 1e-10,
            "{r:?}"
        );
    }

    #[test]
    fn nelder_mead_on_ridge() {
        // max(|1 - z|, |z|): kink along Re z = 1/2, minimum at 1/2.
        let mut f = |x: [f64; 2]| {
            let a = ((1.0 - x[0]).powi(2) + x[1].powi(2)).sqrt();
            let b = (x[0].powi(2) + x[1].powi(2)).sqrt();
            a.max(b)
        };
        let r = nelder_mead_2d(&mut f, [0.9, 0.3], 0.1, 1e-13, 20_000);
        assert!((r.value - 0.5).abs() < 1e-14, "{r:?}");
        assert!((r.x[0] - 0.5).abs() < 1e-8 && r.x[1].abs() < 1e-6, "{r:?}");
    }
}
