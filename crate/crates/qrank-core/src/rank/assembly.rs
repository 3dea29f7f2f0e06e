//! Rewritings of the twisted rank function in terms of theta, mu, Klein and
//! generalized eta blocks, and the explicit holomorphic-part series of the
//! completed objects.

use num_traits::Signed;

use crate::blocks::{
    gen_eta_f, jacobi_bracket, klein_form, mu_series, pochhammer, vartheta_series, PochLen,
};
use crate::cyc::CycNum;
use crate::error::QError;
use crate::fps::{rat, FracSeries, Monomial, Rat};

use super::{
    mu_arguments, overpartition_series, rank_gf, theta_branch_flip, GfForm, RankSpec,
};

fn beta_exp(spec: &RankSpec) -> Rat {
    rat(
        spec.b * spec.b,
        (spec.c as i64 * spec.c as i64) * (spec.d as i64 * spec.d as i64),
    )
}

/// Both sides of the theta/mu decomposition of O_d(z; q): the left side is
/// the defining expansion, the right side is assembled from mu, theta and
/// Jacobi-bracket blocks. Exact equality of the two is the content of the
/// decomposition.
pub fn rank_mu_decomposition(spec: &RankSpec) -> Result<(FracSeries, FracSeries), QError> {
    spec.require_hypothesis()?;
    let lhs = rank_gf(spec, GfForm::Definition)?;
    let z = spec.z();
    let d = spec.d as i64;
    let trunc_q = spec.trunc_q();
    let pad = trunc_q + rat(d * d, 2) + z.exponent().abs() * rat(4, 1) + Rat::from_integer(2);

    let front = super::front_factor(&z, pad)?;
    let prefactor = overpartition_series(*(pad.ceil()).numer()).mul(&front);

    let rhs = if spec.d % 2 == 1 {
        let m = rat(2 * d * d, 1);
        let mut sum = FracSeries::zero(1, 1, pad);
        for k in 0..d {
            let (x_half, y, scale) = mu_arguments(spec, k);
            debug_assert_eq!(scale, m);
            let theta = vartheta_series(&y, m, pad)?;
            let mu = mu_series(&x_half, &y, m, pad)?;
            let paren = mu
                .mul_monomial(&z)
                .scale_cyc(&CycNum::from_integer(2))
                .add(
                    &Monomial::q_pow(rat(d * d, 4))
                        .to_series(pad)
                        .scale_cyc(&CycNum::i_unit()),
                );
            let mut term = theta.mul(&paren);
            term = term.mul_monomial(&Monomial::q_pow(rat(k * k + d * k, 1)));
            if k % 2 == 1 {
                term = term.neg();
            }
            sum = sum.add(&term);
        }
        // middle product term and the k >= 1 bracket sum
        let step = rat(2 * d * d, 1);
        let poch_sq = pochhammer(&Monomial::q_pow(step), step, PochLen::Infinite, pad)?.pow(2)?;
        let z2 = z.pow(2);
        let middle = poch_sq
            .mul(&jacobi_bracket(&[z2.clone()], step, pad)?.inv()?)
            .mul_monomial(&z)
            .scale_cyc(&CycNum::from_integer(2));
        sum = sum.add(&middle);
        if d >= 3 {
            let outer = poch_sq
                .mul(&jacobi_bracket(&[z2.mul(&Monomial::q_pow(step))], step, pad)?)
                .mul_monomial(&z)
                .scale_cyc(&CycNum::from_integer(2));
            let mut ksum = FracSeries::zero(1, 1, pad);
            for k in 1..=(d - 1) / 2 {
                let num = jacobi_bracket(&[Monomial::q_pow(rat(4 * d * k, 1))], step, pad)?;
                let den = jacobi_bracket(
                    &[
                        z2.mul(&Monomial::q_pow(rat(2 * d * k, 1))),
                        z2.inv().mul(&Monomial::q_pow(rat(2 * d * k, 1))),
                        Monomial::q_pow(rat(2 * d * k, 1)),
                    ],
                    step,
                    pad,
                )?;
                let mut term = num.mul(&den.inv()?);
                term = term.mul_monomial(&Monomial::q_pow(rat(k * k + d * k, 1)));
                if k % 2 == 1 {
                    term = term.neg();
                }
                ksum = ksum.add(&term);
            }
            sum = sum.add(&outer.mul(&ksum));
        }
        prefactor.mul(&sum)
    } else {
        // even d: single theta/mu sum over k = 0 .. d/2 - 1 with the
        // constant fixed by the branch of v(d,k)
        let m = rat(d * d, 2);
        let z_half = Monomial::new(2 * spec.c, spec.a, rat(spec.b, 2 * spec.c as i64));
        let flip = theta_branch_flip(spec.d);
        let const_scalar = if flip {
            CycNum::i_unit()
        } else {
            CycNum::from_integer(-1)
        };
        let mut sum = FracSeries::zero(1, 1, pad);
        for k in 0..d / 2 {
            let (x_half, y, scale) = mu_arguments(spec, k);
            debug_assert_eq!(scale, m);
            let theta = vartheta_series(&y, m, pad)?;
            let mu = mu_series(&x_half, &y, m, pad)?;
            let paren = mu
                .mul_monomial(&z_half)
                .scale_cyc(&CycNum::from_integer(2))
                .add(
                    &Monomial::q_pow(rat(d * d, 16))
                        .to_series(pad)
                        .scale_cyc(&const_scalar),
                );
            let mut term = theta.mul(&paren);
            term = term.mul_monomial(&Monomial::q_pow(rat(2 * k * k + d * k, 2)));
            if k % 2 == 1 {
                term = term.neg();
            }
            sum = sum.add(&term);
        }
        prefactor.mul(&sum)
    };
    Ok((lhs, rhs.truncate_q(trunc_q)))
}

/// P_{d,k}(a,b,c; tau) for odd d: the eta/generalized-eta/Klein product that
/// carries the non-mu part of the decomposition. Depends on k only through
/// k mod d, which is a consequence of the Klein shift law rather than a
/// normalization applied here.
pub fn p_dk_series(
    d: u64,
    k: i64,
    a: i64,
    b: i64,
    c: u64,
    trunc_q: Rat,
) -> Result<FracSeries, QError> {
    assert!(d % 2 == 1, "P_{{d,k}} is defined for odd d");
    let d_i = d as i64;
    let c_i = c as i64;
    let cd2 = c_i * d_i * d_i;
    let scalar = CycNum::root((c_i * c_i) as u64 * (d_i * d_i) as u64, a * b)
        .scale(&num_rational::BigRational::from_integer(num_bigint::BigInt::from(2)));
    let pad = trunc_q + rat(d_i * d_i, 2) + rat(2 * b.abs(), c_i) + Rat::from_integer(2);
    let m2 = rat(2 * d_i * d_i, 1);
    let eq = overpartition_series(*(pad.ceil()).numer());
    let out = if k.rem_euclid(d_i) == 0 {
        let kl = klein_form(rat(b, cd2), rat(2 * a, c_i), m2, pad)?;
        eq.mul(&kl.inv()?)
    } else {
        let f_num = gen_eta_f(2 * d * d, 4 * d_i * k, Rat::from_integer(1), pad)?;
        let f_den = gen_eta_f(2 * d * d, 2 * d_i * k, Rat::from_integer(1), pad)?;
        let k1 = klein_form(rat(-b, cd2), rat(-2 * a, c_i), m2, pad)?;
        let k2 = klein_form(rat(b, cd2) + rat(k, d_i), rat(2 * a, c_i), m2, pad)?;
        let k3 = klein_form(rat(-b, cd2) + rat(k, d_i), rat(-2 * a, c_i), m2, pad)?;
        eq.mul(&f_num)
            .mul(&k1)
            .mul(&f_den.inv()?)
            .mul(&k2.inv()?)
            .mul(&k3.inv()?)
    };
    Ok(out.scale_cyc(&scalar).truncate_q(trunc_q))
}

/// The mu-part assembly of the completed object: the M-tilde expansion with
/// the completed mu replaced by its holomorphic mu, the theta prefactors
/// kept in product form. For every d this satisfies
/// `twisted_o(spec) = mu_assembly(spec) + q^{-b^2/c^2d^2}` exactly.
pub fn mu_assembly(spec: &RankSpec) -> Result<FracSeries, QError> {
    spec.require_hypothesis()?;
    let d = spec.d as i64;
    let trunc_q = spec.trunc_q();
    let beta = beta_exp(spec);
    let pad = trunc_q
        + rat(d * d, 2)
        + beta
        + rat(2 * spec.b.abs(), spec.c as i64)
        + Rat::from_integer(2);
    let eq = overpartition_series(*(pad.ceil()).numer());
    let mut total = FracSeries::zero(1, 1, pad);
    if spec.d % 2 == 1 {
        let m = rat(2 * d * d, 1);
        let z = spec.z();
        for k in 0..d {
            let (x_half, y, _) = mu_arguments(spec, k);
            let theta = vartheta_series(&y, m, pad)?;
            let mu = mu_series(&x_half, &y, m, pad)?;
            let mut term = theta
                .mul(&mu)
                .mul_monomial(&z.mul(&Monomial::q_pow(rat(k * k + d * k, 1))))
                .scale_cyc(&CycNum::from_integer(2));
            if k % 2 == 1 {
                term = term.neg();
            }
            total = total.add(&term);
        }
        total = eq.mul(&total).mul_monomial(&Monomial::q_pow(-beta));
        for k in 0..=(d - 1) / 2 {
            let p = p_dk_series(spec.d, k, spec.a, spec.b, spec.c, pad)?;
            let term = if k % 2 == 0 { p.neg() } else { p };
            total = total.add(&term);
        }
    } else {
        let m = rat(d * d, 2);
        let z_half = Monomial::new(2 * spec.c, spec.a, rat(spec.b, 2 * spec.c as i64));
        for k in 0..d / 2 {
            let (x_half, y, _) = mu_arguments(spec, k);
            let theta = vartheta_series(&y, m, pad)?;
            let mu = mu_series(&x_half, &y, m, pad)?;
            let mut term = theta
                .mul(&mu)
                .mul_monomial(&z_half.mul(&Monomial::q_pow(rat(2 * k * k + d * k, 2))))
                .scale_cyc(&CycNum::from_integer(2));
            if k % 2 == 1 {
                term = term.neg();
            }
            total = total.add(&term);
        }
        total = eq.mul(&total).mul_monomial(&Monomial::q_pow(-beta));
    }
    Ok(total.truncate_q(trunc_q))
}

/// The holomorphic part of the completed twisted rank function: the twisted
/// series plus the finite correction terms produced by shifting the
/// non-holomorphic piece into its canonical range.
pub fn o_tilde_holo(spec: &RankSpec) -> Result<FracSeries, QError> {
    spec.require_hypothesis()?;
    let tw = super::twisted_o(spec)?;
    let beta = beta_exp(spec);
    let trunc_q = tw.trunc_q();
    let mut out = tw.sub(&Monomial::q_pow(-beta).to_series(trunc_q));
    out = out.add(&holo_corrections(spec, trunc_q));
    Ok(out)
}

fn holo_corrections(spec: &RankSpec, trunc_q: Rat) -> FracSeries {
    let d = spec.d as i64;
    let c = spec.c as i64;
    let beta = beta_exp(spec);
    let mut corr = FracSeries::zero(1, 1, trunc_q);
    if spec.d % 2 == 1 {
        let cd2 = c * d * d;
        let n = spec.b.div_euclid(cd2);
        let delta = spec.b.rem_euclid(cd2) == 0;
        let sgn = n.signum();
        if delta {
            let mut root = CycNum::root(spec.c, 2 * n * spec.a);
            if n.rem_euclid(2) == 1 {
                root = root.neg();
            }
            corr = corr.add(&FracSeries::constant(root, trunc_q));
        }
        for mm in 1..=n.abs() {
            let mut root = CycNum::root(spec.c, (2 * n + 1 - sgn * (2 * mm - 1)) * spec.a)
                .scale(&num_rational::BigRational::from_integer(num_bigint::BigInt::from(2)));
            if (mm + n).rem_euclid(2) == 1 {
                root = root.neg();
            }
            let e = if delta {
                rat(d * d, 1) * (rat(sgn * (2 * mm - 1), 2) - rat(mm * (mm - 1), 1) - rat(1, 2))
            } else {
                rat(n, 1) * (rat(2 * spec.b, c) - rat(d * d * n, 1) - rat(d * d, 1))
                    - rat((2 * mm - 1) * sgn, 1)
                        * (rat(spec.b, c) - rat(d * d * n, 1) - rat(d * d, 2))
                    - rat(mm * (mm - 1) * d * d, 1)
                    - rat(d * d, 2)
                    + rat(spec.b, c)
                    - beta
            };
            corr = corr.add(&Monomial::q_pow(e).to_series(trunc_q).scale_cyc(&root));
        }
    } else {
        let cd2 = c * d * d;
        let n = (2 * spec.b).div_euclid(cd2);
        let delta = (2 * spec.b).rem_euclid(cd2) == 0;
        let sgn = n.signum();
        let zero_mod4 = spec.d % 4 == 0;
        if delta {
            let mut root = CycNum::root(spec.c, n * spec.a);
            if !zero_mod4 && n.rem_euclid(2) == 1 {
                root = root.neg();
            }
            corr = corr.add(&FracSeries::constant(root, trunc_q));
        }
        for mm in 1..=n.abs() {
            let base = CycNum::root(2 * spec.c, spec.a * (2 * n + 1 - sgn * (2 * mm - 1)))
                .scale(&num_rational::BigRational::from_integer(num_bigint::BigInt::from(2)));
            let root = if zero_mod4 {
                // -2i (-1)^m i^{(2m-1) sgn(n)}
                let mut r = base.mul(&CycNum::i_unit()).neg();
                r = r.mul(&CycNum::root(4, (2 * mm - 1) * sgn));
                if mm.rem_euclid(2) == 1 {
                    r = r.neg();
                }
                r
            } else {
                // 2 (-1)^{m+n}
                if (mm + n).rem_euclid(2) == 1 {
                    base.neg()
                } else {
                    base
                }
            };
            let e = if delta {
                rat(d * d, 8)
                    * (rat((2 * mm - 1) * sgn, 1) - rat(2 * mm * (mm - 1), 1) - Rat::from_integer(1))
            } else {
                rat(n, 1) * (rat(spec.b, c) - rat(d * d * n, 4) - rat(d * d, 4))
                    - rat((2 * mm - 1) * sgn, 1)
                        * (rat(spec.b, 2 * c) - rat(d * d * n, 4) - rat(d * d, 8))
                    - rat(d * d, 4) * rat(mm * (mm - 1), 1)
                    - rat(d * d, 8)
                    + rat(spec.b, 2 * c)
                    - beta
            };
            corr = corr.add(&Monomial::q_pow(e).to_series(trunc_q).scale_cyc(&root));
        }
    }
    corr
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rank::twisted_o;

    #[test]
    fn decomposition_d1_trivial_k_sum() {
        let spec = RankSpec::new(1, 1, 0, 3, 30);
        let (lhs, rhs) = rank_mu_decomposition(&spec).unwrap();
        let r = lhs.eq_report(&rhs);
        assert!(r.pass, "{}", r.describe());
    }

    #[test]
    fn decomposition_d2() {
        let spec = RankSpec::new(2, 1, 0, 3, 25);
        let (lhs, rhs) = rank_mu_decomposition(&spec).unwrap();
        let r = lhs.eq_report(&rhs);
        assert!(r.pass, "{}", r.describe());
    }

    #[test]
    fn decomposition_d3() {
        let spec = RankSpec::new(3, 1, 0, 3, 25);
        let (lhs, rhs) = rank_mu_decomposition(&spec).unwrap();
        let r = lhs.eq_report(&rhs);
        assert!(r.pass, "{}", r.describe());
    }

    #[test]
    fn decomposition_d4_with_b() {
        let spec = RankSpec::new(4, 1, 1, 3, 20);
        let (lhs, rhs) = rank_mu_decomposition(&spec).unwrap();
        let r = lhs.eq_report(&rhs);
        assert!(r.pass, "{}", r.describe());
    }

    #[test]
    fn p_depends_on_k_mod_d() {
        let a = p_dk_series(3, 1, 1, 0, 3, rat(40, 1)).unwrap();
        let b = p_dk_series(3, 4, 1, 0, 3, rat(40, 1)).unwrap();
        let r = a.eq_report(&b);
        assert!(r.pass, "{}", r.describe());
    }

    #[test]
    fn p_swap_k_to_d_minus_k() {
        // the pairing used for 1 <= k <= (d-1)/2
        let a = p_dk_series(3, 2, 1, 0, 3, rat(25, 1)).unwrap();
        let b = p_dk_series(3, -1, 1, 0, 3, rat(25, 1)).unwrap();
        let r = a.eq_report(&b);
        assert!(r.pass, "{}", r.describe());
    }

    #[test]
    fn p0_matches_middle_term_closed_form() {
        // P_{d,0}(a,b,c) = -2 z q^{-b^2/c^2d^2} (-q;q)(q^{2d^2};q^{2d^2})^2
        //                  / ((q;q) [z^2; q^{2d^2}])
        let (d, a, b, c) = (3u64, 1i64, 0i64, 3u64);
        let trunc = rat(30, 1);
        let p = p_dk_series(d, 0, a, b, c, trunc).unwrap();
        let z = Monomial::new(c, a, rat(b, c as i64));
        let d_i = d as i64;
        let step = rat(2 * d_i * d_i, 1);
        let poch_sq = pochhammer(&Monomial::q_pow(step), step, PochLen::Infinite, trunc)
            .unwrap()
            .pow(2)
            .unwrap();
        let closed = overpartition_series(30)
            .mul(&poch_sq)
            .mul(&jacobi_bracket(&[z.pow(2)], step, trunc).unwrap().inv().unwrap())
            .mul_monomial(&z)
            .scale_cyc(&CycNum::from_integer(-2));
        let r = p.eq_report(&closed);
        assert!(r.pass, "{}", r.describe());
    }

    #[test]
    fn twisted_equals_assembly_plus_constant_odd() {
        for (d, a, b, c, t) in [(1u64, 1i64, 0i64, 3u64, 25i64), (3, 1, 0, 3, 20), (1, 1, 1, 3, 20)] {
            let spec = RankSpec::new(d, a, b, c, t);
            let tw = twisted_o(&spec).unwrap();
            let asm = mu_assembly(&spec).unwrap();
            let beta = beta_exp(&spec);
            let rhs = asm.add(&Monomial::q_pow(-beta).to_series(asm.trunc_q()));
            let r = tw.eq_report(&rhs);
            assert!(r.pass, "(d,a,b,c)=({d},{a},{b},{c}): {}", r.describe());
        }
    }

    #[test]
    fn twisted_equals_assembly_plus_constant_even() {
        for (d, a, b, c, t) in [(2u64, 1i64, 0i64, 3u64, 20i64), (4, 1, 1, 3, 16), (2, 1, 1, 5, 16)] {
            let spec = RankSpec::new(d, a, b, c, t);
            let tw = twisted_o(&spec).unwrap();
            let asm = mu_assembly(&spec).unwrap();
            let beta = beta_exp(&spec);
            let rhs = asm.add(&Monomial::q_pow(-beta).to_series(asm.trunc_q()));
            let r = tw.eq_report(&rhs);
            assert!(r.pass, "(d,a,b,c)=({d},{a},{b},{c}): {}", r.describe());
        }
    }

    #[test]
    fn holo_part_b_zero_reduces_to_twisted() {
        let spec = RankSpec::new(3, 1, 0, 3, 15);
        let h = o_tilde_holo(&spec).unwrap();
        let tw = twisted_o(&spec).unwrap();
        // -q^0 from the error and +1 from the delta term cancel
        let r = h.eq_report(&tw);
        assert!(r.pass, "{}", r.describe());
    }

    #[test]
    fn holo_shift_law_odd() {
        // holo(a, b + cd^2) = -zeta_c^{2a} holo(a, b)
        let (d, a, c, t) = (1u64, 1i64, 3u64, 18i64);
        for b in [0i64, 1, 2] {
            let h1 = o_tilde_holo(&RankSpec::new(d, a, b + 3, c, t)).unwrap();
            let h0 = o_tilde_holo(&RankSpec::new(d, a, b, c, t)).unwrap();
            let rhs = h0.scale_cyc(&CycNum::root(c, 2 * a).neg());
            let r = h1.eq_report(&rhs);
            assert!(r.pass, "b={b}: {}", r.describe());
        }
    }

    #[test]
    fn holo_shift_law_even() {
        // holo(a, b + cd^2/2) = (-1)^{d/2} zeta_c^a holo(a, b)
        let (d, a, c, t) = (2u64, 1i64, 3u64, 16i64);
        for b in [0i64, 1] {
            let h1 = o_tilde_holo(&RankSpec::new(d, a, b + 6, c, t)).unwrap();
            let h0 = o_tilde_holo(&RankSpec::new(d, a, b, c, t)).unwrap();
            let rhs = h0.scale_cyc(&CycNum::root(c, a).neg());
            let r = h1.eq_report(&rhs);
            assert!(r.pass, "b={b}: {}", r.describe());
        }
    }
}
