//! Special functions: theta and mu sums, the error-type integral E, the
//! unary theta g, Zwegers' R, and the period integral of the completion.

use num_complex::Complex64;

use crate::error::QError;

use super::{q_pow, TWO_PI};

const PI: f64 = std::f64::consts::PI;

/// E(z) = 2 int_0^z exp(-pi w^2) dw = erf(sqrt(pi) z) for real z.
pub fn e_integral(z: f64) -> f64 {
    erf(PI.sqrt() * z)
}

/// sgn(x) - E(x), evaluated without cancellation for large |x|.
pub fn e_complement(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    x.signum() * erfc(PI.sqrt() * x.abs())
}

/// erf by the non-alternating scaled series (all terms positive).
fn erf_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut k = 0u32;
    loop {
        k += 1;
        term *= 2.0 * x2 / (2.0 * k as f64 + 1.0);
        let next = sum + term;
        if next == sum || k > 600 {
            break;
        }
        sum = next;
    }
    2.0 / PI.sqrt() * (-x2).exp() * sum
}

/// erfc by the continued fraction
/// erfc(x) = e^{-x^2}/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))),
/// evaluated with the modified Lentz algorithm; stable for x >= 2.
fn erfc_cf(x: f64) -> f64 {
    let tiny = 1e-300;
    let mut f = x.max(tiny);
    let mut c = f;
    let mut d = 0.0f64;
    for i in 1..200 {
        let a_i = i as f64 / 2.0;
        d = x + a_i * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = x + a_i / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-17 {
            break;
        }
    }
    (-x * x).exp() / PI.sqrt() / f
}

fn erf(x: f64) -> f64 {
    if x < 0.0 {
        return -erf(-x);
    }
    if x < 2.5 {
        erf_series(x)
    } else {
        1.0 - erfc_cf(x)
    }
}

fn erfc(x: f64) -> f64 {
    debug_assert!(x >= 0.0);
    if x < 2.5 {
        1.0 - erf_series(x)
    } else {
        erfc_cf(x)
    }
}

/// theta(z; tau) = sum_{n in Z + 1/2} exp(pi i n^2 tau + 2 pi i n (z + 1/2)).
pub fn theta_num(z: Complex64, tau: Complex64) -> Complex64 {
    let y = tau.im;
    assert!(y > 0.0);
    let shift = z.im / y;
    let n_max = (45.0 / (PI * y)).sqrt() + shift.abs() + 4.0;
    let n_max = n_max.ceil() as i64;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in -n_max..=n_max {
        let n = k as f64 + 0.5;
        let e = Complex64::new(0.0, PI) * (tau * n * n) + Complex64::new(0.0, TWO_PI) * n * (z + 0.5);
        sum += e.exp();
    }
    sum
}

/// mu(u, v; tau) per Zwegers' Lambert-type sum; u, v must stay away from
/// the lattice Z + tau Z.
pub fn mu_num(u: Complex64, v: Complex64, tau: Complex64) -> Result<Complex64, QError> {
    let y = tau.im;
    assert!(y > 0.0);
    let theta_v = theta_num(v, tau);
    if theta_v.norm() < 1e-12 {
        return Err(QError::Hypothesis("v too close to the lattice for mu".into()));
    }
    let shift = (u.im / y).abs() + (v.im / y).abs();
    let n_max = ((45.0 / (PI * y)).sqrt() + shift + 5.0).ceil() as i64;
    let mut sum = Complex64::new(0.0, 0.0);
    for n in -n_max..=n_max {
        let nf = n as f64;
        let num = (Complex64::new(0.0, PI) * (tau * nf * (nf + 1.0))
            + Complex64::new(0.0, TWO_PI) * v * nf)
            .exp();
        if num.norm() == 0.0 {
            continue;
        }
        let pole = (Complex64::new(0.0, TWO_PI) * (tau * nf + u)).exp();
        if !pole.is_finite() {
            // the numerator decays faster than the pole grows
            continue;
        }
        let den = 1.0 - pole;
        if den.norm() < 1e-13 {
            return Err(QError::Hypothesis("u too close to the lattice for mu".into()));
        }
        let sign = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        sum += sign * num / den;
    }
    Ok((Complex64::new(0.0, PI) * u).exp() / theta_v * sum)
}

/// g_{a,b}(tau) = sum_{n in Z + a} n exp(pi i n^2 tau + 2 pi i n b).
pub fn g_num(a: f64, b: f64, tau: Complex64) -> Complex64 {
    let y = tau.im;
    assert!(y > 0.0);
    let n_max = ((50.0 / (PI * y)).sqrt() + a.abs() + 4.0).ceil() as i64;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in -n_max..=n_max {
        let n = k as f64 + a;
        if n == 0.0 {
            continue;
        }
        let e = Complex64::new(0.0, PI) * tau * n * n + Complex64::new(0.0, TWO_PI) * n * b;
        sum += n * e.exp();
    }
    sum
}

/// R(u; tau) = sum_{n in Z + 1/2} (sgn(n) - E((n + a) sqrt(2y)))
///             (-1)^{n - 1/2} exp(-pi i n^2 tau - 2 pi i n u),
/// with a = Im(u)/Im(tau).
pub fn r_num(u: Complex64, tau: Complex64) -> Complex64 {
    let y = tau.im;
    assert!(y > 0.0);
    let a = u.im / y;
    // terms decay like exp(-pi y (n + a)^2 + pi y a^2); pad by the shift
    let n_max = ((50.0 / (PI * y)).sqrt() + 2.0 * a.abs() + 5.0).ceil() as i64;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in -n_max..=n_max {
        let n = k as f64 + 0.5;
        // sgn(n) - E((n+a) sqrt(2y)), without cancellation: the two signs
        // agree except for the finitely many n between 0 and -a
        let x = (n + a) * (2.0 * y).sqrt() * PI.sqrt();
        let weight = if n > 0.0 {
            if x >= 0.0 {
                erfc(x)
            } else {
                2.0 - erfc(-x)
            }
        } else if x <= 0.0 {
            -erfc(-x)
        } else {
            -(2.0 - erfc(x))
        };
        if weight == 0.0 {
            continue;
        }
        let sign = if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let e = (-Complex64::new(0.0, PI) * tau * n * n - Complex64::new(0.0, TWO_PI) * n * u).exp();
        sum += weight * sign * e;
    }
    sum
}

/// mu~(u, v; tau) = mu(u, v; tau) + (i/2) R(u - v; tau).
pub fn mu_tilde_num(u: Complex64, v: Complex64, tau: Complex64) -> Result<Complex64, QError> {
    Ok(mu_num(u, v, tau)? + Complex64::new(0.0, 0.5) * r_num(u - v, tau))
}

/// eta(m tau) by the product, with enough factors for |q_m| at the point.
pub fn eta_num(m: f64, tau: Complex64) -> Complex64 {
    let q = q_pow(tau, m);
    let mut out = q_pow(tau, m / 24.0);
    let n_max = (45.0 / (TWO_PI * m * tau.im) * std::f64::consts::LN_10).ceil() as i64 + 8;
    let mut qk = Complex64::new(1.0, 0.0);
    for _ in 1..=n_max.max(8) {
        qk *= q;
        out *= 1.0 - qk;
    }
    out
}

/// f_{N, rho}(m tau) by the product
/// q^{m (N - 2r)^2 / 8N} prod_{j >= 0} (1 - q_m^{jN + r})(1 - q_m^{jN + N - r})(1 - q_m^{(j+1)N}).
pub fn gen_eta_num(n: u64, rho: i64, m: f64, tau: Complex64) -> Complex64 {
    let nf = n as f64;
    let r = rho.rem_euclid(n as i64) as f64;
    let mut out = q_pow(tau, m * (nf - 2.0 * r) * (nf - 2.0 * r) / (8.0 * nf));
    let j_max = ((45.0 * std::f64::consts::LN_10) / (TWO_PI * m * nf * tau.im)).ceil() as i64 + 4;
    for j in 0..j_max.max(6) {
        let jf = j as f64;
        out *= 1.0 - q_pow(tau, m * (jf * nf + r));
        out *= 1.0 - q_pow(tau, m * (jf * nf + nf - r));
        out *= 1.0 - q_pow(tau, m * (jf + 1.0) * nf);
    }
    out
}

/// Klein form k_{a1,a2}(m tau) by the product formula.
pub fn klein_num(a1: f64, a2: f64, m: f64, tau: Complex64) -> Complex64 {
    let qm = q_pow(tau, m);
    let zeta = (Complex64::new(0.0, TWO_PI) * (tau * (a1 * m) + a2)).exp();
    let pref = -q_pow(tau, m * (a1 * a1 - a1) / 2.0)
        * (Complex64::new(0.0, PI) * a2 * (a1 - 1.0)).exp();
    let n_max = ((45.0 / (TWO_PI * m * tau.im) * std::f64::consts::LN_10).ceil() as i64
        + 8
        + (2.0 * a1.abs()).ceil() as i64)
        .max(8);
    let mut bracket = Complex64::new(1.0, 0.0);
    let mut poch_sq = Complex64::new(1.0, 0.0);
    let mut qk = Complex64::new(1.0, 0.0);
    for k in 0..n_max {
        bracket *= 1.0 - zeta * qk;
        let qk1 = qk * qm;
        bracket *= 1.0 - qk1 / zeta;
        if k > 0 {
            poch_sq *= (1.0 - qk) * (1.0 - qk);
        }
        qk = qk1;
    }
    poch_sq *= (1.0 - qk) * (1.0 - qk);
    pref * bracket / poch_sq
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            // Legendre P_n and derivative at x
            let (mut p0, mut p1) = (1.0f64, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (mut p0, mut p1) = (1.0f64, x);
        for k in 2..=n {
            let kf = k as f64;
            let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
            p0 = p1;
            p1 = p2;
        }
        let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

/// The period integral of the completion:
/// int_{-conj(tau)}^{i infinity} g_{a,b}(m z) / sqrt(-i (z + tau)) dz
/// along the vertical ray z = -conj(tau) + i t, where -i(z + tau) = 2y + t
/// is real positive. The integrand decays like exp(-pi a'^2 m t) with a'
/// the distance of Z + a from 0.
pub fn period_integral(a: f64, b: f64, m: f64, tau: Complex64) -> Result<Complex64, QError> {
    if tau.im <= 0.0 {
        return Err(QError::Hypothesis("tau must lie in the upper half-plane".into()));
    }
    let y = tau.im;
    let base = -tau.conj();
    // smallest |n| over n in Z + a, excluding the n = 0 term which drops out
    let fa = a - a.floor();
    let mut a_min = fa.min(1.0 - fa);
    if a_min < 1e-9 {
        a_min = 1.0; // g_{0,b}: the n = 0 term vanishes, next is |n| = 1
    }
    let rate = PI * a_min * a_min * m;
    if rate < 1e-4 {
        return Err(QError::Hypothesis(
            "integrand decays too slowly for this precision".into(),
        ));
    }
    let t_max = 42.0 * std::f64::consts::LN_10 / rate / 10.0_f64.ln() * 10.0_f64.ln();
    let t_max = t_max.max(8.0 * y);
    let (nodes, weights) = gauss_legendre(24);
    let g_at = |t: f64| -> Complex64 {
        let z = base + Complex64::new(0.0, t);
        g_num(a, b, z * m) / (2.0 * y + t).sqrt()
    };
    let mut total = Complex64::new(0.0, 0.0);
    // first panel [0, t1] under t = s^2 to keep the grid dense near 0
    let t1 = (y.min(1.0)).min(t_max / 2.0);
    let s1 = t1.sqrt();
    for (x, w) in nodes.iter().zip(weights.iter()) {
        let s = 0.5 * s1 * (x + 1.0);
        total += w * 0.5 * s1 * 2.0 * s * g_at(s * s);
    }
    // geometric panels to t_max
    let mut lo = t1;
    while lo < t_max {
        let hi = (lo * 1.9).min(t_max).max(lo + 0.25);
        for (x, w) in nodes.iter().zip(weights.iter()) {
            let t = 0.5 * (hi - lo) * (x + 1.0) + lo;
            total += w * 0.5 * (hi - lo) * g_at(t);
        }
        lo = hi;
    }
    Ok(total * Complex64::new(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e_integral_reference() {
        assert_eq!(e_integral(0.0), 0.0);
        assert!((e_integral(0.5) + e_integral(-0.5)).abs() < 1e-15);
        // adaptive-quadrature oracle for E(1/2): Simpson refinement
        let f = |w: f64| (-PI * w * w).exp();
        let mut n = 8;
        let mut prev = 0.0;
        let mut val = 0.0;
        for _ in 0..12 {
            let h = 0.5 / n as f64;
            let mut s = f(0.0) + f(0.5);
            for i in 1..n {
                s += f(i as f64 * h) * if i % 2 == 0 { 2.0 } else { 4.0 };
            }
            // Simpson needs even n with the pattern above on 2n panels; use
            // composite Simpson on n steps (n even)
            val = 2.0 * s * h / 3.0;
            if (val - prev).abs() < 1e-15 {
                break;
            }
            prev = val;
            n *= 2;
        }
        assert!((e_integral(0.5) - val).abs() < 1e-13, "{} vs {}", e_integral(0.5), val);
    }

    #[test]
    fn e_complement_is_stable_for_large_arguments() {
        // sgn - E computed directly would lose all digits near 1
        let x = 5.0;
        let direct = 1.0 - e_integral(x);
        let stable = e_complement(x);
        assert!(stable > 0.0 && stable < 1e-30);
        assert!((direct - stable).abs() < 1e-16);
        assert!((e_complement(-x) + stable).abs() < 1e-40);
    }

    #[test]
    fn theta_zero_at_lattice_points() {
        let tau = Complex64::new(0.2, 0.8);
        assert!(theta_num(Complex64::new(0.0, 0.0), tau).norm() < 1e-12);
        assert!(theta_num(Complex64::new(1.0, 0.0), tau).norm() < 1e-12);
    }

    #[test]
    fn theta_sum_matches_product() {
        let tau = Complex64::new(0.2, 0.8);
        let z = Complex64::new(0.3, 0.1);
        let sum = theta_num(z, tau);
        // product: -i q^{1/8} e^{-pi i z} (Z, Z^{-1} q, q; q)
        let q = q_pow(tau, 1.0);
        let zz = (Complex64::new(0.0, TWO_PI) * z).exp();
        let mut prod = Complex64::new(0.0, -1.0)
            * q_pow(tau, 0.125)
            * (Complex64::new(0.0, -PI) * z).exp();
        let mut qk = Complex64::new(1.0, 0.0);
        for _ in 0..120 {
            prod *= 1.0 - zz * qk;
            qk *= q;
            prod *= (1.0 - qk / zz) * (1.0 - qk);
        }
        assert!((sum - prod).norm() < 1e-12, "{sum} vs {prod}");
    }

    #[test]
    fn mu_symmetric_in_arguments() {
        let tau = Complex64::new(0.13, 0.77);
        let u = Complex64::new(0.21, 0.12);
        let v = Complex64::new(0.43, 0.31);
        let a = mu_num(u, v, tau).unwrap();
        let b = mu_num(v, u, tau).unwrap();
        assert!((a - b).norm() < 1e-11, "{a} vs {b}");
    }

    #[test]
    fn r_is_even_and_matches_special_value() {
        let tau = Complex64::new(0.1, 0.9);
        let u = Complex64::new(0.17, 0.23);
        let a = r_num(u, tau);
        let b = r_num(-u, tau);
        assert!((a - b).norm() < 1e-11);
        // R(-tau/2; tau) = q^{1/8}
        let v = r_num(-tau / 2.0, tau);
        let expect = q_pow(tau, 0.125);
        assert!((v - expect).norm() < 1e-10, "{v} vs {expect}");
        // R(-tau/2 + 1/2; tau) = -i q^{1/8}
        let v2 = r_num(-tau / 2.0 + 0.5, tau);
        let expect2 = Complex64::new(0.0, -1.0) * expect;
        assert!((v2 - expect2).norm() < 1e-10);
    }

    #[test]
    fn period_integral_tail_is_negligible() {
        let tau = Complex64::new(0.13, 0.77);
        let a = period_integral(0.2 + 0.5, 0.3 + 0.5, 1.0, tau).unwrap();
        // doubling the effective tail: evaluate with the g argument scaled
        // by 2 through m and compare an independent rough Riemann sum
        let mut riemann = Complex64::new(0.0, 0.0);
        let dt = 0.0008;
        let mut t = dt / 2.0;
        while t < 45.0 {
            let z = -tau.conj() + Complex64::new(0.0, t);
            riemann += g_num(0.7, 0.8, z) / (2.0 * tau.im + t).sqrt() * dt;
            t += dt;
        }
        riemann *= Complex64::new(0.0, 1.0);
        assert!((a - riemann).norm() < 5e-6, "{a} vs {riemann}");
    }

    #[test]
    fn zwegers_integral_identity() {
        // R(a tau - b; tau) = -exp(pi i a^2 tau - 2 pi i a (b + 1/2)) * integral
        let tau = Complex64::new(0.13, 0.77);
        let (a, b) = (0.2, 0.3);
        let lhs = r_num(a * tau - b, tau);
        let pref = (Complex64::new(0.0, PI) * tau * a * a
            - Complex64::new(0.0, TWO_PI) * a * (b + 0.5))
            .exp();
        let integral = period_integral(a + 0.5, b + 0.5, 1.0, tau).unwrap();
        let rhs = -pref * integral;
        assert!((lhs - rhs).norm() < 1e-9, "{lhs} vs {rhs}");
    }

    #[test]
    fn zwegers_boundary_case() {
        // R(-tau/2 - b; tau) = e^{pi i tau/4 + pi i b}
        //   - e^{pi i tau/4 + pi i (b + 1/2)} * integral with g_{0, b+1/2}
        let tau = Complex64::new(0.05, 0.85);
        let b = 0.3;
        let lhs = r_num(-tau / 2.0 - b, tau);
        let t4 = (Complex64::new(0.0, PI) * tau / 4.0).exp();
        let rhs = t4 * (Complex64::new(0.0, PI) * b).exp()
            - t4 * (Complex64::new(0.0, PI) * (b + 0.5)).exp()
                * period_integral(0.0, b + 0.5, 1.0, tau).unwrap();
        assert!((lhs - rhs).norm() < 1e-9, "{lhs} vs {rhs}");
    }
}
