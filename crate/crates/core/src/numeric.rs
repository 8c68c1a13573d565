//! Scalar root finding, 1-D/2-D minimisation and quadrature used by the solvers.

/// Inverse golden ratio, (√5 − 1)/2.
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Bisection for a nondecreasing function: returns `x` in `[lo, hi]` with
/// `f(x) ≈ target`. Stops when `|f(x) − target| <= ftol` or the bracket
/// collapses to machine precision.
pub fn bisect_increasing<F>(f: F, mut lo: f64, mut hi: f64, target: f64, ftol: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    let mut mid = 0.5 * (lo + hi);
    for _ in 0..200 {
        mid = 0.5 * (lo + hi);
        let v = f(mid) - target;
        if v.abs() <= ftol {
            return mid;
        }
        if v < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * (lo.abs() + hi.abs()).max(f64::MIN_POSITIVE) {
            break;
        }
    }
    mid
}

/// Golden-section search for a local minimum of `f` on `[a, b]`.
/// Returns `(x, f(x))` once the bracket is narrower than `xtol`.
pub fn golden_section<F>(f: F, mut a: f64, mut b: f64, xtol: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > xtol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc <= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Nelder–Mead simplex minimisation in two variables.
///
/// `f` may return `f64::INFINITY` for infeasible points; the starting point
/// must be feasible.
pub fn nelder_mead_2d<F>(f: F, start: [f64; 2], step: [f64; 2], xtol: f64, max_iter: usize) -> ([f64; 2], f64)
where
    F: Fn([f64; 2]) -> f64,
{
    let mut simplex = [
        start,
        [start[0] + step[0], start[1]],
        [start[0], start[1] + step[1]],
    ];
    let mut values = simplex.map(&f);

    for _ in 0..max_iter {
        let mut order = [0usize, 1, 2];
        order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
        simplex = order.map(|i| simplex[i]);
        values = order.map(|i| values[i]);

        let size = (1..3)
            .map(|k| (simplex[k][0] - simplex[0][0]).abs().max((simplex[k][1] - simplex[0][1]).abs()))
            .fold(0.0, f64::max);
        if size < xtol {
            break;
        }

        let centroid = [
            0.5 * (simplex[0][0] + simplex[1][0]),
            0.5 * (simplex[0][1] + simplex[1][1]),
        ];
        let along = |t: f64| {
            [
                centroid[0] + t * (simplex[2][0] - centroid[0]),
                centroid[1] + t * (simplex[2][1] - centroid[1]),
            ]
        };

        let reflected = along(-1.0);
        let fr = f(reflected);
        if fr < values[0] {
            let expanded = along(-2.0);
            let fe = f(expanded);
            if fe < fr {
                simplex[2] = expanded;
                values[2] = fe;
            } else {
                simplex[2] = reflected;
                values[2] = fr;
            }
            continue;
        }
        if fr < values[1] {
            simplex[2] = reflected;
            values[2] = fr;
            continue;
        }
        let (contracted, fc) = if fr < values[2] {
            let p = along(-0.5);
            (p, f(p))
        } else {
            let p = along(0.5);
            (p, f(p))
        };
        if fc < values[2].min(fr) {
            simplex[2] = contracted;
            values[2] = fc;
            continue;
        }
        for k in 1..3 {
            simplex[k] = [
                simplex[0][0] + 0.5 * (simplex[k][0] - simplex[0][0]),
                simplex[0][1] + 0.5 * (simplex[k][1] - simplex[0][1]),
            ];
            values[k] = f(simplex[k]);
        }
    }

    let best = (0..3).min_by(|&i, &j| values[i].total_cmp(&values[j])).unwrap_or(0);
    (simplex[best], values[best])
}

/// Romberg integration of `f` over `[a, b]` with relative/absolute tolerance `tol`.
pub fn romberg<F>(f: F, a: f64, b: f64, tol: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    const MAX_LEVELS: usize = 24;
    if a == b {
        return 0.0;
    }
    let h0 = b - a;
    let mut prev = vec![0.5 * h0 * (f(a) + f(b))];
    let mut n = 1usize;
    for level in 1..MAX_LEVELS {
        let h = h0 / (2 * n) as f64;
        let mid_sum: f64 = (0..n).map(|k| f(a + (2 * k + 1) as f64 * h)).sum();
        let mut row = Vec::with_capacity(level + 1);
        row.push(0.5 * prev[0] + h * mid_sum);
        let mut factor = 1.0;
        for j in 1..=level {
            factor *= 4.0;
            let r = row[j - 1] + (row[j - 1] - prev[j - 1]) / (factor - 1.0);
            row.push(r);
        }
        let err = (row[level] - prev[level - 1]).abs();
        if level >= 4 && err <= tol * row[level].abs().max(1.0) {
            return row[level];
        }
        prev = row;
        n *= 2;
    }
    prev[prev.len() - 1]
}

/// Simpson's rule on a single panel given the two end values and the midpoint value.
#[inline]
pub fn simpson_panel(width: f64, left: f64, mid: f64, right: f64) -> f64 {
    width / 6.0 * (left + 4.0 * mid + right)
}

/// `τ − sin τ` without cancellation for small `τ`.
pub fn tau_minus_sin(tau: f64) -> f64 {
    if tau.abs() < 0.25 {
        // Taylor series τ³/3! − τ⁵/5! + …; terms up to τ¹⁵ keep the error below 1e-20·τ³.
        let t2 = tau * tau;
        let mut term = tau * t2 / 6.0;
        let mut sum = term;
        let mut k = 3.0;
        for _ in 0..6 {
            term *= -t2 / ((k + 1.0) * (k + 2.0));
            sum += term;
            k += 2.0;
        }
        sum
    } else {
        tau - tau.sin()
    }
}

/// Wraps `x` into `[0, 1)`.
#[inline]
pub fn wrap_unit(x: f64) -> f64 {
    let r = x.rem_euclid(1.0);
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}
