//! Exact q-series constructors for the classical building blocks:
//! Pochhammer products, Jacobi brackets, eta and generalized eta functions,
//! Klein forms, the Jacobi theta function, Zwegers' mu function, and the
//! Lambert series S(r,c).
//!
//! All constructors return truncated exact series over cyclotomic
//! coefficients. Half powers such as e^{pi*i*u} are supplied by the caller
//! as explicit monomials; [`Monomial::sqrt_canonical`] fixes the branch when
//! only the full power is known.

use num_traits::{Signed, Zero};

use crate::cyc::CycNum;
use crate::error::QError;
use crate::fps::{rat, FracSeries, Monomial, Rat};

/// Length of a Pochhammer product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PochLen {
    Finite(u64),
    Infinite,
}

/// (a; q^step)_n = prod_{k=0}^{n-1} (1 - a q^{step k}).
///
/// Infinite products require step > 0 so that factors eventually leave the
/// truncation window.
pub fn pochhammer(
    a: &Monomial,
    step: Rat,
    len: PochLen,
    trunc_q: Rat,
) -> Result<FracSeries, QError> {
    let mut result = FracSeries::one(trunc_q);
    match len {
        PochLen::Finite(n) => {
            for k in 0..n {
                let factor = a.mul(&Monomial::q_pow(step * Rat::from_integer(k as i64)));
                result = result.sub(&result.mul_monomial(&factor));
            }
        }
        PochLen::Infinite => {
            if !step.is_positive() {
                return Err(QError::NonConvergentProduct);
            }
            let mut k: i64 = 0;
            loop {
                let exp = a.exponent() + step * Rat::from_integer(k);
                let floor = result.lowest().map(|(e, _)| e).unwrap_or(Rat::zero());
                let margin = if floor < Rat::zero() { trunc_q - floor } else { trunc_q };
                if exp >= margin {
                    break;
                }
                let factor = a.mul(&Monomial::q_pow(step * Rat::from_integer(k)));
                result = result.sub(&result.mul_monomial(&factor));
                if result.is_zero() {
                    break;
                }
                k += 1;
            }
        }
    }
    Ok(result.truncate_q(trunc_q))
}

/// [a_1,...,a_k; q^step]_inf = prod_i (a_i; q^step)_inf (q^step/a_i; q^step)_inf.
pub fn jacobi_bracket(
    args: &[Monomial],
    step: Rat,
    trunc_q: Rat,
) -> Result<FracSeries, QError> {
    let mut result = FracSeries::one(trunc_q);
    let q_step = Monomial::q_pow(step);
    for a in args {
        result = result.mul(&pochhammer(a, step, PochLen::Infinite, trunc_q)?);
        result = result.mul(&pochhammer(
            &q_step.mul(&a.inv()),
            step,
            PochLen::Infinite,
            trunc_q,
        )?);
    }
    Ok(result)
}

/// eta(m*tau) = q^{m/24} (q^m; q^m)_inf.
pub fn eta_series(m: Rat, trunc_q: Rat) -> FracSeries {
    assert!(m.is_positive());
    let poch = pochhammer(&Monomial::q_pow(m), m, PochLen::Infinite, trunc_q).unwrap();
    poch.mul_monomial(&Monomial::q_pow(m / rat(24, 1)))
}

/// Biagioli's generalized eta function
/// f_{N,rho} = q^{(N-2 rho)^2 / 8N} (q^rho, q^{N-rho}, q^N; q^N)_inf,
/// returned at argument m*tau. Satisfies f_{N,rho} = f_{N,-rho} = f_{N,rho+N}.
pub fn gen_eta_f(n: u64, rho: i64, m: Rat, trunc_q: Rat) -> Result<FracSeries, QError> {
    if rho.rem_euclid(n as i64) == 0 {
        return Err(QError::DegenerateEta { n, rho });
    }
    let r = rho.rem_euclid(n as i64);
    let n_i = n as i64;
    let prefix = rat((n_i - 2 * r) * (n_i - 2 * r), 8 * n_i) * m;
    let step = Rat::from_integer(n_i) * m;
    let mut out = pochhammer(
        &Monomial::q_pow(Rat::from_integer(r) * m),
        step,
        PochLen::Infinite,
        trunc_q,
    )?;
    out = out.mul(&pochhammer(
        &Monomial::q_pow(Rat::from_integer(n_i - r) * m),
        step,
        PochLen::Infinite,
        trunc_q,
    )?);
    out = out.mul(&pochhammer(&Monomial::q_pow(step), step, PochLen::Infinite, trunc_q)?);
    Ok(out.mul_monomial(&Monomial::q_pow(prefix)))
}

/// Klein form k_{a1,a2}(m*tau) as a Laurent-finite exact series,
/// -q_m^{(a1^2-a1)/2} exp(pi i a2 (a1-1)) [zeta; q_m] / (q_m; q_m)^2,
/// with zeta = e^{2 pi i (a1 m tau + a2)} absorbed into the coefficients.
pub fn klein_form(a1: Rat, a2: Rat, m: Rat, trunc_q: Rat) -> Result<FracSeries, QError> {
    if a1.is_integer() && a2.is_integer() {
        return Err(QError::DegenerateKlein);
    }
    // q-exponent of the prefactor: m*(B2(a1)/2 - 1/12) = m*(a1^2 - a1)/2
    let pref_exp = m * (a1 * a1 - a1) / rat(2, 1);
    let phase = a2 * (a1 - Rat::from_integer(1));
    let root = CycNum::exp_pi_i(*phase.numer(), *phase.denom()).neg();
    let zeta = Monomial::new(
        2 * (*a2.denom() as u64),
        2 * *a2.numer(),
        a1 * m,
    );
    let bracket = jacobi_bracket(&[zeta], m, trunc_q)?;
    let etasq_inv = pochhammer(&Monomial::q_pow(m), m, PochLen::Infinite, trunc_q)?
        .pow(-2)?;
    Ok(bracket
        .mul(&etasq_inv)
        .mul_monomial(&Monomial::q_pow(pref_exp))
        .scale_cyc(&root))
}

/// Jacobi theta function (product form)
/// theta(z; m tau) = -i q_m^{1/8} e^{-pi i z} (Z, Z^{-1} q_m, q_m; q_m)_inf,
/// where the caller supplies Z = e^{2 pi i z} and the half power e^{-pi i z}
/// is the canonical square root of Z inverted.
pub fn vartheta_series(z: &Monomial, m: Rat, trunc_q: Rat) -> Result<FracSeries, QError> {
    let z_half_inv = z.sqrt_canonical().inv();
    let q_m = Monomial::q_pow(m);
    let mut out = pochhammer(z, m, PochLen::Infinite, trunc_q)?;
    out = out.mul(&pochhammer(&z.inv().mul(&q_m), m, PochLen::Infinite, trunc_q)?);
    out = out.mul(&pochhammer(&q_m, m, PochLen::Infinite, trunc_q)?);
    out = out.mul_monomial(&Monomial::q_pow(m / rat(8, 1)).mul(&z_half_inv));
    Ok(out.scale_cyc(&CycNum::i_unit().neg()))
}

/// Jacobi theta function (bilateral sum form), used as the independent
/// cross-check of [`vartheta_series`]:
/// theta(z; m tau) = sum_{n in Z + 1/2} e^{pi i n^2 m tau + 2 pi i n (z + 1/2)}.
pub fn vartheta_sum_form(z: &Monomial, m: Rat, trunc_q: Rat) -> FracSeries {
    let z_half = z.sqrt_canonical();
    let mut terms: Vec<(Monomial, CycNum)> = Vec::new();
    // n = k + 1/2: exponent m(k^2+k)/2 + m/8, factor i(-1)^k z_half Z^k
    let push_k = |k: i64, terms: &mut Vec<(Monomial, CycNum)>| -> Rat {
        let exp = m * rat(k * k + k, 2) + m / rat(8, 1);
        let mono = z_half.mul(&z.pow(k)).mul(&Monomial::q_pow(exp));
        let mut c = CycNum::i_unit();
        if k.rem_euclid(2) == 1 {
            c = c.neg();
        }
        let total = mono.exponent();
        terms.push((mono, c));
        total
    };
    let mut k = 0i64;
    let mut prev = Rat::zero();
    loop {
        let e = push_k(k, &mut terms);
        if e >= trunc_q && k > 0 && e >= prev {
            terms.pop();
            break;
        }
        prev = e;
        k += 1;
    }
    k = -1;
    prev = Rat::zero();
    loop {
        let e = push_k(k, &mut terms);
        if e >= trunc_q && k < -1 && e >= prev {
            terms.pop();
            break;
        }
        prev = e;
        k -= 1;
    }
    let mut out = FracSeries::zero(1, 1, trunc_q);
    for (mono, c) in terms {
        out = out.add(&mono.to_series(trunc_q).scale_cyc(&c));
    }
    out
}

/// A generalized Lambert sum
/// sum_n epsilon(n) q^{A n^2 + B n + C} (num0 num1^n) / (1 - pole0 pole1^n),
/// bilateral or one-sided.
#[derive(Clone, Debug)]
pub struct LambertSpec {
    /// epsilon(n) = (-1)^{eps n}, eps in {0, 1}
    pub sign_eps: u8,
    pub quad_a: Rat,
    pub quad_b: Rat,
    pub quad_c: Rat,
    pub num0: Monomial,
    pub num1: Monomial,
    pub pole0: Monomial,
    pub pole1: Monomial,
    /// None: bilateral; Some(n0): n >= n0
    pub start: Option<i64>,
}

impl LambertSpec {
    pub fn bilateral(quad_a: Rat, quad_b: Rat, pole0: Monomial, pole1: Monomial) -> Self {
        LambertSpec {
            sign_eps: 1,
            quad_a,
            quad_b,
            quad_c: Rat::zero(),
            num0: Monomial::one(),
            num1: Monomial::one(),
            pole0,
            pole1,
            start: None,
        }
    }

    pub fn with_numerator(mut self, num0: Monomial, num1: Monomial) -> Self {
        self.num0 = num0;
        self.num1 = num1;
        self
    }

    pub fn with_sign_eps(mut self, eps: u8) -> Self {
        self.sign_eps = eps;
        self
    }

    pub fn with_constant(mut self, c: Rat) -> Self {
        self.quad_c = c;
        self
    }

    pub fn starting_at(mut self, n0: i64) -> Self {
        self.start = Some(n0);
        self
    }

    /// Lowest q-exponent contributed by the n-th term after the pole is
    /// rewritten into a convergent geometric expansion.
    fn term_floor(&self, n: i64) -> Rat {
        let nn = Rat::from_integer(n);
        let quad = self.quad_a * nn * nn + self.quad_b * nn + self.quad_c;
        let num_exp = self.num0.exponent() + self.num1.exponent() * nn;
        let pole_exp = self.pole0.exponent() + self.pole1.exponent() * nn;
        let pole_extra = if pole_exp < Rat::zero() { -pole_exp } else { Rat::zero() };
        quad + num_exp + pole_extra
    }
}

/// Expand a [`LambertSpec`] exactly. Each pole factor 1/(1-P) becomes a
/// geometric series when exp(P) > 0, is rewritten through
/// 1/(1-P) = -P^{-1}/(1-P^{-1}) when exp(P) < 0, and is replaced by the
/// exact cyclotomic inverse of (1 - root) when exp(P) = 0. A pole with
/// P = 1 exactly reports [`QError::PoleAtOne`].
pub fn lambert_expand(spec: &LambertSpec, trunc_q: Rat) -> Result<FracSeries, QError> {
    assert!(spec.quad_a.is_positive(), "Lambert quadratic coefficient must be positive");
    let mut den: i64 = 1;
    for r in [
        spec.quad_a,
        spec.quad_b,
        spec.quad_c,
        spec.num0.exponent(),
        spec.num1.exponent(),
        spec.pole0.exponent(),
        spec.pole1.exponent(),
    ] {
        den = num_integer::lcm(den, *r.denom());
    }
    let mut order: u64 = 1;
    for m in [&spec.num0, &spec.num1, &spec.pole0, &spec.pole1] {
        order = num_integer::lcm(order, m.order());
    }
    let trunc = {
        let x = trunc_q * Rat::from_integer(den);
        x.ceil().to_integer()
    };
    let scaled = |r: Rat| -> i64 {
        let x = r * Rat::from_integer(den);
        debug_assert!(x.is_integer());
        x.to_integer()
    };

    let mut raw: Vec<(i64, CycNum)> = Vec::new();
    let emit = |n: i64, raw: &mut Vec<(i64, CycNum)>| -> Result<(), QError> {
        let nn = Rat::from_integer(n);
        let quad = spec.quad_a * nn * nn + spec.quad_b * nn + spec.quad_c;
        let num = spec.num0.mul(&spec.num1.pow(n));
        let pole = spec.pole0.mul(&spec.pole1.pow(n));
        if pole.is_pole_at_one() {
            return Err(QError::PoleAtOne);
        }
        let base_exp = scaled(quad + num.exponent());
        let mut base_root = num.root_cyc();
        if spec.sign_eps == 1 && n.rem_euclid(2) == 1 {
            base_root = base_root.neg();
        }
        let pexp = scaled(pole.exponent());
        let proot = pole.root_cyc();
        if pexp > 0 {
            let mut e = base_exp;
            let mut r = base_root;
            while e < trunc {
                raw.push((e, r.clone()));
                e += pexp;
                r = r.mul(&proot);
            }
        } else if pexp < 0 {
            // 1/(1-P) = -P^{-1} / (1 - P^{-1})
            let proot_inv = proot.inv().map_err(|_| QError::PoleAtOne)?;
            let mut e = base_exp - pexp;
            let mut r = base_root.mul(&proot_inv).neg();
            while e < trunc {
                raw.push((e, r.clone()));
                e -= pexp;
                r = r.mul(&proot_inv);
            }
        } else {
            let unit = CycNum::one(proot.order()).sub(&proot);
            let inv = unit.inv().map_err(|_| QError::PoleAtOne)?;
            raw.push((base_exp, base_root.mul(&inv)));
        }
        Ok(())
    };

    let upward_start = spec.start.unwrap_or(0);
    let mut n = upward_start;
    let mut prev_floor: Option<Rat> = None;
    loop {
        let floor = spec.term_floor(n);
        if floor >= trunc_q && prev_floor.map(|p| floor >= p).unwrap_or(false) {
            break;
        }
        emit(n, &mut raw)?;
        prev_floor = Some(floor);
        n += 1;
    }
    if spec.start.is_none() {
        let mut n = -1i64;
        let mut prev_floor: Option<Rat> = None;
        loop {
            let floor = spec.term_floor(n);
            if floor >= trunc_q && prev_floor.map(|p| floor >= p).unwrap_or(false) {
                break;
            }
            emit(n, &mut raw)?;
            prev_floor = Some(floor);
            n -= 1;
        }
    }
    Ok(FracSeries::from_terms(order, den, trunc, raw))
}

/// Zwegers' mu function as an exact series:
/// mu(u, v; m tau) = e^{pi i u} / theta(v; m tau)
///   * sum_n (-1)^n q^{m n(n+1)/2} Y^n / (1 - X^2 q^{m n}),
/// where the caller supplies X = e^{pi i u} (`x_half`) and Y = e^{2 pi i v}.
pub fn mu_series(
    x_half: &Monomial,
    y: &Monomial,
    m: Rat,
    trunc_q: Rat,
) -> Result<FracSeries, QError> {
    let theta = vartheta_series(y, m, trunc_q)?;
    let theta_inv = theta.inv().map_err(|e| match e {
        QError::NonInvertibleSeries => QError::PoleAtOne,
        other => other,
    })?;
    let spec = LambertSpec::bilateral(
        m / rat(2, 1),
        m / rat(2, 1),
        x_half.pow(2),
        Monomial::q_pow(m),
    )
    .with_numerator(Monomial::one(), y.clone());
    // pad the sum so the product with the theta inverse keeps the window
    let pad = theta_inv.lowest().map(|(e, _)| -e).unwrap_or(Rat::zero());
    let sum = lambert_expand(&spec, trunc_q + pad.max(Rat::zero()) + Rat::from_integer(1))?;
    Ok(sum.mul(&theta_inv).mul_monomial(x_half).truncate_q(trunc_q))
}

/// The Lambert series S(r, c; m tau) of the dissection machinery:
/// 2 (-1)^{c+1} q_m^{(2cr - r^2)/2c^2} / (q_m^{1/2}, q_m^{1/2}, q_m; q_m)_inf
///   * sum_n (-1)^n q_m^{n(n+2)/2} / (1 - (-1)^{c+1} q_m^{n + r/c}).
pub fn s_series(r: i64, c: u64, m: Rat, trunc_q: Rat) -> Result<FracSeries, QError> {
    if c % 2 == 1 && r.rem_euclid(c as i64) == 0 {
        return Err(QError::DegenerateS { r, c });
    }
    let c_i = c as i64;
    let sign_pos = c % 2 == 1; // (-1)^{c+1} = +1 iff c odd
    let mut pole0 = Monomial::q_pow(m * rat(r, c_i));
    if !sign_pos {
        pole0 = pole0.neg_root();
    }
    let spec = LambertSpec::bilateral(m / rat(2, 1), m, pole0, Monomial::q_pow(m));
    let sum = lambert_expand(&spec, trunc_q + Rat::from_integer(1))?;
    let half = m / rat(2, 1);
    let mut den = pochhammer(&Monomial::q_pow(half), m, PochLen::Infinite, trunc_q)?;
    den = den.mul(&den.clone());
    den = den.mul(&pochhammer(&Monomial::q_pow(m), m, PochLen::Infinite, trunc_q)?);
    let pref_exp = m * rat(2 * c_i * r - r * r, 2 * c_i * c_i);
    let mut scalar = CycNum::from_integer(2);
    if !sign_pos {
        scalar = scalar.neg();
    }
    Ok(sum
        .mul(&den.inv()?)
        .mul_monomial(&Monomial::q_pow(pref_exp))
        .scale_cyc(&scalar)
        .truncate_q(trunc_q))
}

/// The mu-function form of S(r, c; m tau); equal to [`s_series`] exactly.
pub fn s_series_mu(r: i64, c: u64, m: Rat, trunc_q: Rat) -> Result<FracSeries, QError> {
    if c % 2 == 1 && r.rem_euclid(c as i64) == 0 {
        return Err(QError::DegenerateS { r, c });
    }
    let c_i = c as i64;
    let pref_exp = -m * rat((c_i - 2 * r) * (c_i - 2 * r), 8 * c_i * c_i);
    let y = Monomial::q_pow(m / rat(2, 1));
    if c % 2 == 1 {
        let x_half = Monomial::q_pow(m * rat(r, 2 * c_i));
        let mu = mu_series(&x_half, &y, m, trunc_q + Rat::from_integer(1))?;
        Ok(mu
            .mul_monomial(&Monomial::q_pow(pref_exp))
            .scale_cyc(&CycNum::i_unit().scale(&num_rational::BigRational::from_integer(
                num_bigint::BigInt::from(-2),
            )))
            .truncate_q(trunc_q))
    } else {
        let x_half = Monomial::new(4, 1, m * rat(r, 2 * c_i));
        let mu = mu_series(&x_half, &y, m, trunc_q + Rat::from_integer(1))?;
        Ok(mu
            .mul_monomial(&Monomial::q_pow(pref_exp))
            .scale_cyc(&CycNum::from_integer(2))
            .truncate_q(trunc_q))
    }
}

/// 1/(1 - P) as an exact series: geometric when exp(P) > 0, rewritten
/// through -P^{-1}/(1 - P^{-1}) when exp(P) < 0, and the exact cyclotomic
/// inverse of (1 - root) when exp(P) = 0.
pub fn geom_inv(p: &Monomial, trunc_q: Rat) -> Result<FracSeries, QError> {
    if p.is_pole_at_one() {
        return Err(QError::PoleAtOne);
    }
    let den = *p.exponent().denom();
    let trunc = (trunc_q * Rat::from_integer(den)).ceil().to_integer();
    let pexp = *p.exponent().numer();
    let proot = p.root_cyc();
    let mut raw: Vec<(i64, CycNum)> = Vec::new();
    if pexp > 0 {
        let mut e = 0i64;
        let mut r = CycNum::one(p.order());
        while e < trunc {
            raw.push((e, r.clone()));
            e += pexp;
            r = r.mul(&proot);
        }
    } else if pexp < 0 {
        let proot_inv = proot.inv().map_err(|_| QError::PoleAtOne)?;
        let mut e = -pexp;
        let mut r = proot_inv.clone().neg();
        while e < trunc {
            raw.push((e, r.clone()));
            e -= pexp;
            r = r.mul(&proot_inv);
        }
    } else {
        let unit = CycNum::one(proot.order()).sub(&proot);
        raw.push((0, unit.inv().map_err(|_| QError::PoleAtOne)?));
    }
    Ok(FracSeries::from_terms(p.order(), den, trunc, raw))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fps::rat;

    fn t(n: i64) -> Rat {
        Rat::from_integer(n)
    }

    #[test]
    fn euler_pentagonal_pattern() {
        let f = pochhammer(&Monomial::q_pow(t(1)), t(1), PochLen::Infinite, t(30)).unwrap();
        // 1 - q - q^2 + q^5 + q^7 - q^12 - q^15 + q^22 + q^26
        let expect: Vec<(i64, i64)> = vec![
            (0, 1),
            (1, -1),
            (2, -1),
            (5, 1),
            (7, 1),
            (12, -1),
            (15, -1),
            (22, 1),
            (26, 1),
        ];
        for (e, v) in expect {
            assert!(f.coeff_int(e).unwrap().eq_value(&CycNum::from_integer(v)), "at q^{e}");
        }
        assert!(f.coeff_int(3).unwrap().is_zero());
        assert_eq!(f.num_terms(), 9);
    }

    #[test]
    fn empty_product_is_one() {
        let f = pochhammer(&Monomial::q_pow(t(1)), t(1), PochLen::Finite(0), t(10)).unwrap();
        assert!(f.eq_report(&FracSeries::one(t(10))).pass);
    }

    #[test]
    fn finite_product_two_factors() {
        let f = pochhammer(&Monomial::q_pow(t(1)), t(1), PochLen::Finite(2), t(10)).unwrap();
        let mut g = FracSeries::one(t(10));
        g = g.sub(&Monomial::q_pow(t(1)).to_series(t(10)));
        let h = FracSeries::one(t(10)).sub(&Monomial::q_pow(t(2)).to_series(t(10)));
        assert!(f.eq_report(&g.mul(&h)).pass);
    }

    #[test]
    fn nonconvergent_product_refused() {
        let r = pochhammer(&Monomial::q_pow(t(1)), t(0), PochLen::Infinite, t(5));
        assert!(matches!(r, Err(QError::NonConvergentProduct)));
    }

    #[test]
    fn bracket_definition_unfolds() {
        // [q; q^3] = (q, q^2; q^3)_inf
        let b = jacobi_bracket(&[Monomial::q_pow(t(1))], t(3), t(25)).unwrap();
        let p1 = pochhammer(&Monomial::q_pow(t(1)), t(3), PochLen::Infinite, t(25)).unwrap();
        let p2 = pochhammer(&Monomial::q_pow(t(2)), t(3), PochLen::Infinite, t(25)).unwrap();
        assert!(b.eq_report(&p1.mul(&p2)).pass);
    }

    #[test]
    fn bracket_factors_commute() {
        let a = Monomial::new(3, 1, rat(1, 3));
        let b = Monomial::new(5, 2, rat(1, 2));
        let x = jacobi_bracket(&[a.clone(), b.clone()], t(1), t(12)).unwrap();
        let y = jacobi_bracket(&[b, a], t(1), t(12)).unwrap();
        assert!(x.eq_report(&y).pass);
    }

    #[test]
    fn bracket_at_zeta3_unit_constant() {
        let z = Monomial::new(3, 1, rat(0, 1));
        let b = jacobi_bracket(&[z], t(1), t(8)).unwrap();
        let c = b.coeff(Rat::zero()).unwrap();
        // constant term (1 - zeta_3)
        let expect = CycNum::one(3).sub(&CycNum::root(3, 1));
        assert!(c.eq_value(&expect));
    }

    #[test]
    fn eta_lowest_exponent() {
        let e = eta_series(t(1), t(5));
        assert_eq!(e.lowest().unwrap().0, rat(1, 24));
        let e2 = eta_series(t(2), t(5));
        assert_eq!(e2.lowest().unwrap().0, rat(1, 12));
    }

    #[test]
    fn overpartition_counts_from_eta_quotient() {
        // eta(2 tau) / eta(tau)^2 = sum pbar(n) q^n; pbar(3) = 8
        let f = eta_series(t(2), t(20)).mul(&eta_series(t(1), t(20)).pow(-2).unwrap());
        let expect = [1i64, 2, 4, 8, 14, 24, 40, 64, 100, 154, 232];
        for (n, v) in expect.iter().enumerate() {
            assert!(
                f.coeff_int(n as i64).unwrap().eq_value(&CycNum::from_integer(*v)),
                "pbar({n})"
            );
        }
    }

    #[test]
    fn square_series_from_inverse_overpartition() {
        // eta(tau)^2 / eta(2 tau) = sum (-1)^n q^{n^2} with +-2 at positive squares
        let f = eta_series(t(1), t(40)).pow(2).unwrap().mul(
            &eta_series(t(2), t(40)).inv().unwrap(),
        );
        for n in 0..40i64 {
            let c = f.coeff_int(n).unwrap();
            let root = (n as f64).sqrt().round() as i64;
            if root * root == n {
                let sign = if root % 2 == 0 { 1 } else { -1 };
                let expect = if n == 0 { 1 } else { 2 * sign };
                assert!(c.eq_value(&CycNum::from_integer(expect)), "at {n}");
            } else {
                assert!(c.is_zero(), "at {n}");
            }
        }
    }

    #[test]
    fn gen_eta_symmetries() {
        let a = gen_eta_f(18, 15, t(1), t(10)).unwrap();
        let b = gen_eta_f(18, 3, t(1), t(10)).unwrap();
        assert!(a.eq_report(&gen_eta_f(18, -15, t(1), t(10)).unwrap()).pass);
        assert!(a.eq_report(&gen_eta_f(18, 33, t(1), t(10)).unwrap()).pass);
        assert!(b.eq_report(&gen_eta_f(18, 15, t(1), t(10)).unwrap()).pass == (3 == 18 - 15));
        assert!(matches!(gen_eta_f(6, 12, t(1), t(4)), Err(QError::DegenerateEta { .. })));
    }

    #[test]
    fn gen_eta_f21_is_eta_quotient() {
        // f_{2,1} = eta(tau)^2 / eta(2 tau)
        let f = gen_eta_f(2, 1, t(1), t(25)).unwrap();
        let g = eta_series(t(1), t(25)).pow(2).unwrap().mul(
            &eta_series(t(2), t(25)).inv().unwrap(),
        );
        assert!(f.eq_report(&g).pass);
    }

    #[test]
    fn gen_eta_prefactor_case() {
        // lowest exponent of f_{2d^2, d^2+2dk} at (d,k) = (3,1) is k^2 = 1
        let f = gen_eta_f(18, 15, t(1), t(6)).unwrap();
        assert_eq!(f.lowest().unwrap().0, t(1));
    }

    #[test]
    fn klein_t_shift_law() {
        // k_{a1+1,a2} / k_{a1,a2} = -exp(-pi i a2)  [EqTShift with (b1,b2)=(1,0)]
        let a1 = rat(1, 5);
        let a2 = rat(1, 3);
        let k0 = klein_form(a1, a2, t(1), t(8)).unwrap();
        let k1 = klein_form(a1 + t(1), a2, t(1), t(8)).unwrap();
        let expect = CycNum::exp_pi_i(-1, 3).neg();
        let ratio = k1.mul(&k0.inv().unwrap());
        let want = FracSeries::constant(expect, ratio.trunc_q());
        assert!(ratio.eq_report(&want).pass, "{}", ratio.eq_report(&want).describe());
    }

    #[test]
    fn klein_lowest_exponent_at_zero_a1() {
        let k = klein_form(rat(0, 1), rat(1, 3), t(1), t(6)).unwrap();
        assert_eq!(k.lowest().unwrap().0, t(0));
        assert!(!k.lowest().unwrap().1.is_zero());
        assert!(matches!(
            klein_form(t(1), t(2), t(1), t(4)),
            Err(QError::DegenerateKlein)
        ));
    }

    #[test]
    fn theta_sum_equals_product() {
        let z = Monomial::new(3, 1, rat(1, 3));
        let p = vartheta_series(&z, t(1), t(20)).unwrap();
        let s = vartheta_sum_form(&z, t(1), t(20));
        let r = p.eq_report(&s);
        assert!(r.pass, "{}", r.describe());
    }

    #[test]
    fn theta_vanishes_at_z_integer() {
        let z = Monomial::one();
        let p = vartheta_series(&z, t(1), t(10)).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn theta_quasi_periodicity() {
        // theta(z + m tau; m tau) = -e^{-pi i m tau - 2 pi i z} theta(z; m tau)
        let m = t(2);
        let z = Monomial::new(5, 2, rat(1, 4));
        let lhs = vartheta_series(&z.mul(&Monomial::q_pow(m)), m, t(15)).unwrap();
        let factor = z.inv().mul(&Monomial::q_pow(-m / t(2)));
        let rhs = vartheta_series(&z, m, t(15)).unwrap().mul_monomial(&factor).neg();
        let r = lhs.eq_report(&rhs);
        assert!(r.pass, "{}", r.describe());
    }

    #[test]
    fn lambert_pole_at_one_reported() {
        let spec = LambertSpec::bilateral(t(1), t(0), Monomial::one(), Monomial::q_pow(t(1)));
        assert!(matches!(lambert_expand(&spec, t(10)), Err(QError::PoleAtOne)));
    }

    #[test]
    fn lambert_zero_exponent_pole_uses_exact_inverse() {
        // sum_n (-1)^n q^{n^2} / (1 - zeta_3 q^n): n = 0 term is 1/(1-zeta_3)
        let spec = LambertSpec::bilateral(
            t(1),
            t(0),
            Monomial::new(3, 1, rat(0, 1)),
            Monomial::q_pow(t(1)),
        );
        let f = lambert_expand(&spec, t(6)).unwrap();
        let c0 = f.coeff(Rat::zero()).unwrap();
        let expect = CycNum::one(3).sub(&CycNum::root(3, 1)).inv().unwrap();
        assert!(c0.eq_value(&expect));
    }

    #[test]
    fn mu_shift_law() {
        // mu(u,v;tau) + e^{2 pi i (u-v) - pi i tau} mu(u, v+tau; tau)
        //   + i e^{pi i (u-v) - pi i tau / 4} = 0
        // y = q means v = tau, which lies in Z + (m tau)Z for m = 1; scale 2
        // keeps the parameters away from the theta zeros.
        let x_half = Monomial::new(10, 1, rat(1, 10));
        let y = Monomial::q_pow(t(1));
        let m = t(2);
        let trunc = t(12);
        let mu1 = mu_series(&x_half, &y, m, trunc).unwrap();
        let mu2 = mu_series(&x_half, &y.mul(&Monomial::q_pow(m)), m, trunc).unwrap();
        let y_half = y.sqrt_canonical();
        let elliptic = x_half.pow(2).mul(&y.inv()).mul(&Monomial::q_pow(-m / t(2))); // e^{2 pi i (u-v) - pi i m tau}
        let const_term = x_half
            .mul(&y_half.inv())
            .mul(&Monomial::q_pow(-m / t(8))) // e^{-pi i (m tau) / 4}
            .to_series(trunc)
            .scale_cyc(&CycNum::i_unit());
        let total = mu1.add(&mu2.mul_monomial(&elliptic)).add(&const_term);
        let r = total.eq_report(&FracSeries::zero(1, 1, total.trunc_q()));
        assert!(r.pass, "{}", r.describe());
    }

    #[test]
    fn mu_symmetry_in_u_and_v() {
        // mu(u,v) = mu(v,u) with canonical halves on both sides
        let x = Monomial::new(3, 1, rat(1, 3)); // e^{2 pi i u}
        let y = Monomial::new(5, 2, rat(2, 5)); // e^{2 pi i v}
        let m = t(1);
        let a = mu_series(&x.sqrt_canonical(), &y, m, t(10)).unwrap();
        let b = mu_series(&y.sqrt_canonical(), &x, m, t(10)).unwrap();
        let r = a.eq_report(&b);
        assert!(r.pass, "{}", r.describe());
    }

    #[test]
    fn mu_times_theta_has_lambert_support() {
        let x_half = Monomial::new(10, 1, rat(1, 10));
        let y = Monomial::q_pow(t(1));
        let mu = mu_series(&x_half, &y, t(2), t(10)).unwrap();
        let theta = vartheta_series(&y, t(2), t(10)).unwrap();
        let prod = mu.mul(&theta);
        let spec = LambertSpec::bilateral(t(1), t(1), x_half.pow(2), Monomial::q_pow(t(2)))
            .with_numerator(Monomial::one(), y.clone());
        let sum = lambert_expand(&spec, prod.trunc_q()).unwrap().mul_monomial(&x_half);
        let r = prod.eq_report(&sum.truncate_q(prod.trunc_q()));
        assert!(r.pass, "{}", r.describe());
    }

    #[test]
    fn s_series_lowest_exponent() {
        // S(1,3; 162 tau): prefactor exponent (2*3*1-1)/(2*9) * 162 = 45
        let s = s_series(1, 3, t(162), t(50)).unwrap();
        assert_eq!(s.lowest().unwrap().0, t(45));
        assert_eq!(s.den(), 1);
    }

    #[test]
    fn s_series_lambert_equals_mu_form() {
        for (r, c, m) in [(1i64, 3u64, t(1)), (2, 3, t(1)), (1, 2, t(1)), (1, 4, t(2))] {
            let a = s_series(r, c, m, t(40)).unwrap();
            let b = s_series_mu(r, c, m, t(40)).unwrap();
            let rep = a.eq_report(&b);
            assert!(rep.pass, "(r,c)=({r},{c}): {}", rep.describe());
        }
    }

    #[test]
    fn s_series_degenerate_r() {
        assert!(matches!(s_series(3, 3, t(1), t(5)), Err(QError::DegenerateS { .. })));
    }

    #[test]
    fn s3_symmetry_between_r1_and_r2() {
        let a = s_series(1, 3, t(162), t(140)).unwrap();
        let b = s_series(2, 3, t(162), t(140)).unwrap();
        let rep = a.eq_report(&b);
        assert!(rep.pass, "{}", rep.describe());
    }

    #[test]
    fn constructors_invariant_under_lattice_refinement() {
        let f = eta_series(t(2), t(12));
        let g = f.raise(f.den() * 3, f.order() * 5);
        assert!(f.eq_report(&g).pass);
        let k = klein_form(rat(1, 5), rat(1, 3), t(2), t(9)).unwrap();
        let k2 = k.raise(k.den() * 2, k.order() * 3);
        assert!(k.eq_report(&k2).pass);
    }
}
