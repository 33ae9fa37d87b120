//! Adaptive Gauss–Kronrod quadrature.

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
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// 15-point Kronrod estimate and its difference from the embedded 7-point Gauss rule.
pub fn gk15<F: Fn(f64) -> f64 + ?Sized>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let x = h * XGK[i];
        let s = f(c - x) + f(c + x);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Integral over `[breaks[0], breaks[last]]`, subdividing at the given
/// breakpoints first; absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64 + ?Sized>(f: &F, breaks: &[f64], tol: f64) -> f64 {
    let n = breaks.len().saturating_sub(1).max(1);
    breaks.windows(2).map(|w| adapt(f, w[0], w[1], tol / n as f64, 0)).sum()
}

/// Like [`integrate`], but each piece is mapped by `x = c − h·cos θ`, which
/// smooths square-root behaviour at the breakpoints. Suited to integrands
/// that are analytic between breakpoints with algebraic endpoint terms.
pub fn integrate_cosine<F: Fn(f64) -> f64 + ?Sized>(f: &F, breaks: &[f64], tol: f64) -> f64 {
    let n = breaks.len().saturating_sub(1).max(1);
    breaks
        .windows(2)
        .map(|w| {
            let (c, h) = (0.5 * (w[0] + w[1]), 0.5 * (w[1] - w[0]));
            if h <= 0.0 {
                return 0.0;
            }
            let g = |t: f64| f(c - h * t.cos()) * h * t.sin();
            adapt(&g, 0.0, std::f64::consts::PI, tol / n as f64, 0)
        })
        .sum()
}

fn adapt<F: Fn(f64) -> f64 + ?Sized>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    if b <= a {
        return 0.0;
    }
    let (val, err) = gk15(f, a, b);
    if err <= tol.max(1e-15 * val.abs()) || depth >= 40 {
        return val;
    }
    let m = 0.5 * (a + b);
    adapt(f, a, m, 0.5 * tol, depth + 1) + adapt(f, m, b, 0.5 * tol, depth + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let (v, _) = gk15(&|x: f64| x.powi(6) - 3.0 * x, 0.0, 2.0);
        assert!((v - (128.0 / 7.0 - 6.0)).abs() < 1e-12);
    }

    #[test]
    fn kink_with_breakpoint() {
        let f = |x: f64| (x - 0.3).abs();
        let v = integrate(&f, &[0.0, 0.3, 1.0], 1e-12);
        assert!((v - (0.045 + 0.245)).abs() < 1e-13);
    }

    #[test]
    fn cosine_map_handles_semicircle() {
        let f = |x: f64| (1.0 - x * x).max(0.0).sqrt();
        let v = integrate_cosine(&f, &[-1.0, 0.2, 1.0], 1e-13);
        assert!((v - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn sqrt_singularity_adapts() {
        let v = integrate(&|x: f64| x.sqrt(), &[0.0, 1.0], 1e-10);
        assert!((v - 2.0 / 3.0).abs() < 1e-9);
    }
}
