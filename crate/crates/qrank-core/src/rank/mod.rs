//! The M_d-rank generating function of overpartitions in all its forms,
//! together with exact verification of the series identities built on it.
//!
//! The two-variable generating function is
//! O_d(z; q) = sum_{n,m} M_d(m,n) z^m q^n, and every specialization here
//! takes z = zeta_c^a q^{b/c} as an exact [`Monomial`].

mod assembly;
mod identities;

pub use assembly::{mu_assembly, o_tilde_holo, p_dk_series, rank_mu_decomposition};
pub use identities::{
    big_thing_rhs, thm13_a_series, thm81_product, verify_identity, IdentityName, VerifyReport,
};

use num_traits::Signed;

use crate::blocks::{geom_inv, lambert_expand, LambertSpec};
use crate::cyc::CycNum;
use crate::error::QError;
use crate::fps::{rat, FracSeries, Monomial, Rat};

/// Parameters for a specialization O_d(zeta_c^a q^{b/c}; q).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankSpec {
    pub d: u64,
    pub a: i64,
    pub b: i64,
    pub c: u64,
    /// exclusive q-power bound for the expansion
    pub trunc: i64,
}

impl RankSpec {
    pub fn new(d: u64, a: i64, b: i64, c: u64, trunc: i64) -> Self {
        RankSpec { d, a, b, c, trunc }
    }

    pub fn z(&self) -> Monomial {
        Monomial::new(self.c, self.a, rat(self.b, self.c as i64))
    }

    pub fn trunc_q(&self) -> Rat {
        Rat::from_integer(self.trunc)
    }

    /// The modularity hypothesis: c does not divide 2a, or cd does not
    /// divide b.
    pub fn hypothesis_holds(&self) -> bool {
        let c = self.c as i64;
        let cd = c * self.d as i64;
        (2 * self.a).rem_euclid(c) != 0 || self.b.rem_euclid(cd) != 0
    }

    pub fn require_hypothesis(&self) -> Result<(), QError> {
        if self.hypothesis_holds() {
            Ok(())
        } else {
            Err(QError::Hypothesis(format!(
                "need c∤2a or cd∤b for (d,a,b,c)=({},{},{},{})",
                self.d, self.a, self.b, self.c
            )))
        }
    }
}

/// Which series rewriting of O_d to expand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GfForm {
    /// the defining sum over n >= 1 with the double pole
    Definition,
    /// the bilateral single-pole form
    Bilateral,
}

/// (-q; q)_inf / (q; q)_inf as an exact series with integer exponents.
///
/// Computed as the inverse of phi(-q) = 1 + 2 sum (-1)^n q^{n^2}, which is
/// sparse; this keeps large truncations cheap.
pub fn overpartition_series(trunc: i64) -> FracSeries {
    let mut terms: Vec<(i64, CycNum)> = vec![(0, CycNum::from_integer(1))];
    let mut n = 1i64;
    while n * n < trunc {
        let v = if n % 2 == 0 { 2 } else { -2 };
        terms.push((n * n, CycNum::from_integer(v)));
        n += 1;
    }
    FracSeries::from_terms(1, 1, trunc, terms)
        .inv()
        .expect("phi(-q) is a unit series")
}

/// O_d(z; q) for z = zeta_c^a q^{b/c}.
pub fn rank_gf(spec: &RankSpec, form: GfForm) -> Result<FracSeries, QError> {
    let z = spec.z();
    let trunc_q = spec.trunc_q();
    let d = spec.d as i64;
    let prefactor = overpartition_series(spec.trunc);
    match form {
        GfForm::Definition => {
            // 1 + 2 sum_{n>=1} (1-z)(1-z^{-1}) (-1)^n q^{n^2+dn}
            //                  / ((1-z q^{dn})(1-z^{-1} q^{dn}))
            let one = FracSeries::one(trunc_q);
            let zs = z.to_series(trunc_q);
            let zs_inv = z.inv().to_series(trunc_q);
            let numer = one.sub(&zs).mul(&one.sub(&zs_inv));
            let mut sum = FracSeries::one(trunc_q);
            if !numer.is_zero() {
                let slack = z.exponent().abs() * rat(2, 1) + Rat::from_integer(1);
                let mut n = 1i64;
                while Rat::from_integer(n * n + d * n) < trunc_q + slack {
                    let g1 = geom_inv(&z.mul(&Monomial::q_pow(rat(d * n, 1))), trunc_q)?;
                    let g2 = geom_inv(&z.inv().mul(&Monomial::q_pow(rat(d * n, 1))), trunc_q)?;
                    let mut term = numer.mul(&g1).mul(&g2);
                    term = term.mul_monomial(&Monomial::q_pow(rat(n * n + d * n, 1)));
                    if n % 2 == 1 {
                        term = term.neg();
                    }
                    sum = sum.add(&term.scale_cyc(&CycNum::from_integer(2)));
                    n += 1;
                }
            }
            Ok(prefactor.mul(&sum).truncate_q(trunc_q))
        }
        GfForm::Bilateral => {
            // (1-z)/(1+z) * prefactor * sum_n (-1)^n q^{n^2} (1+z q^{dn})/(1-z q^{dn})
            if z.exponent().numer() == &0 && z.neg_root().is_pole_at_one() {
                return Err(QError::ZMinusOne);
            }
            let s1 = LambertSpec::bilateral(
                Rat::from_integer(1),
                Rat::from_integer(0),
                z.clone(),
                Monomial::q_pow(rat(d, 1)),
            );
            let s2 = s1.clone().with_numerator(z.clone(), Monomial::q_pow(rat(d, 1)));
            let pad = trunc_q + z.exponent().abs() * rat(2, 1) + Rat::from_integer(1);
            let sum = lambert_expand(&s1, pad)?.add(&lambert_expand(&s2, pad)?);
            let front = front_factor(&z, trunc_q)?;
            Ok(prefactor.mul(&front).mul(&sum).truncate_q(trunc_q))
        }
    }
}

/// (1 - z)/(1 + z) as a series.
pub(crate) fn front_factor(z: &Monomial, trunc_q: Rat) -> Result<FracSeries, QError> {
    let one = FracSeries::one(trunc_q);
    let numer = one.sub(&z.to_series(trunc_q));
    let denom_inv = geom_inv(&z.neg_root(), trunc_q).map_err(|e| match e {
        QError::PoleAtOne => QError::ZMinusOne,
        other => other,
    })?;
    Ok(numer.mul(&denom_inv))
}

/// The k-split form of O_d(z; q): the inner bilateral sum is dissected over
/// residues of n, leaving one generalized Lambert sum per k.
pub fn rank_k_split(spec: &RankSpec) -> Result<FracSeries, QError> {
    let z = spec.z();
    let trunc_q = spec.trunc_q();
    let d = spec.d as i64;
    if z.exponent().numer() == &0 && z.neg_root().is_pole_at_one() {
        return Err(QError::ZMinusOne);
    }
    let pad = trunc_q + z.exponent().abs() * rat(2, 1) + Rat::from_integer(1);
    let mut sum = FracSeries::zero(1, 1, pad);
    if spec.d % 2 == 1 {
        for k in 0..d {
            // sum_n (-1)^n q^{d^2 n^2 + 2dkn} (1 + z q^{d^2 n + dk})^2
            //       / (1 - z^2 q^{2 d^2 n + 2dk})
            let pole0 = z.pow(2).mul(&Monomial::q_pow(rat(2 * d * k, 1)));
            let pole1 = Monomial::q_pow(rat(2 * d * d, 1));
            let base = LambertSpec::bilateral(
                rat(d * d, 1),
                rat(2 * d * k, 1),
                pole0,
                pole1,
            );
            let t1 = lambert_expand(&base, pad)?;
            let t2 = lambert_expand(
                &base
                    .clone()
                    .with_numerator(z.mul(&Monomial::q_pow(rat(d * k, 1))), Monomial::q_pow(rat(d * d, 1))),
                pad,
            )?
            .scale_cyc(&CycNum::from_integer(2));
            let t3 = lambert_expand(
                &base.clone().with_numerator(
                    z.pow(2).mul(&Monomial::q_pow(rat(2 * d * k, 1))),
                    Monomial::q_pow(rat(2 * d * d, 1)),
                ),
                pad,
            )?;
            let mut term = t1.add(&t2).add(&t3);
            term = term.mul_monomial(&Monomial::q_pow(rat(k * k, 1)));
            if k % 2 == 1 {
                term = term.neg();
            }
            sum = sum.add(&term);
        }
    } else {
        let half = d / 2;
        for k in 0..half {
            // sum_n (-1)^{dn/2} q^{d^2 n^2/4 + dkn} (1 + z q^{d^2 n/2 + dk})
            //       / (1 - z q^{d^2 n/2 + dk})
            let pole0 = z.mul(&Monomial::q_pow(rat(d * k, 1)));
            let pole1 = Monomial::q_pow(rat(d * d, 2));
            let base = LambertSpec::bilateral(rat(d * d, 4), rat(d * k, 1), pole0.clone(), pole1.clone())
                .with_sign_eps((half % 2) as u8);
            let t1 = lambert_expand(&base, pad)?;
            let t2 = lambert_expand(&base.clone().with_numerator(pole0, pole1), pad)?;
            let mut term = t1.add(&t2);
            term = term.mul_monomial(&Monomial::q_pow(rat(k * k, 1)));
            if k % 2 == 1 {
                term = term.neg();
            }
            sum = sum.add(&term);
        }
    }
    let front = front_factor(&z, trunc_q)?;
    Ok(overpartition_series(spec.trunc)
        .mul(&front)
        .mul(&sum)
        .truncate_q(trunc_q))
}

/// (1 + z q^{b/c})/(1 - z q^{b/c}) * q^{-b^2/c^2 d^2} * O_d(z q^{b/c}; q):
/// the twisted rank function whose completion is the harmonic Maass form.
pub fn twisted_o(spec: &RankSpec) -> Result<FracSeries, QError> {
    let z = spec.z();
    let trunc_q = spec.trunc_q();
    let gf = rank_gf(spec, GfForm::Definition)?;
    let one = FracSeries::one(trunc_q);
    let numer = one.add(&z.to_series(trunc_q));
    let denom_inv = geom_inv(&z, trunc_q)?;
    let beta = rat(spec.b * spec.b, (spec.c * spec.c) as i64 * (spec.d * spec.d) as i64);
    Ok(gf
        .mul(&numer)
        .mul(&denom_inv)
        .mul_monomial(&Monomial::q_pow(-beta)))
}

/// M_d(m, n): the number of overpartitions of n with M_d-rank m, read off
/// the single-m generating function
/// 2 (-q;q)/(q;q) sum_{n>=1} (-1)^{n+1} (1-q^{dn}) q^{n^2+d|m|n} / (1+q^{dn}).
pub fn rank_coeff(d: u64, m: i64, n: i64) -> i64 {
    assert!(n >= 0);
    if n == 0 {
        return i64::from(m == 0);
    }
    let trunc = n + 1;
    let trunc_q = Rat::from_integer(trunc);
    let d = d as i64;
    let ma = m.abs();
    let mut sum = FracSeries::zero(1, 1, trunc_q);
    let mut k = 1i64;
    while k * k + d * ma * k < trunc {
        let g = geom_inv(&Monomial::q_pow(rat(d * k, 1)).neg_root(), trunc_q).unwrap();
        let one_minus = FracSeries::one(trunc_q)
            .sub(&Monomial::q_pow(rat(d * k, 1)).to_series(trunc_q));
        let mut term = one_minus.mul(&g);
        term = term.mul_monomial(&Monomial::q_pow(rat(k * k + d * ma * k, 1)));
        if k % 2 == 0 {
            term = term.neg();
        }
        sum = sum.add(&term);
        k += 1;
    }
    let f = overpartition_series(trunc)
        .mul(&sum)
        .scale_cyc(&CycNum::from_integer(2));
    cyc_to_i64(&f.coeff_int(n).unwrap())
}

/// M_d(r, m, n) = sum over k = r (mod m) of M_d(k, n).
pub fn rank_coeff_mod(d: u64, r: i64, m: i64, n: i64) -> i64 {
    assert!(m >= 1 && r >= 0 && r < m && n >= 0);
    if n == 0 {
        return i64::from(r == 0);
    }
    let trunc = n + 1;
    let trunc_q = Rat::from_integer(trunc);
    let d = d as i64;
    let mut sum = FracSeries::zero(1, 1, trunc_q);
    let mut k = 1i64;
    while k * k < trunc {
        // (1 - q^{dk}) q^{k^2} (q^{drk} + q^{d(m-r)k}) / ((1+q^{dk})(1-q^{dmk}))
        let g1 = geom_inv(&Monomial::q_pow(rat(d * k, 1)).neg_root(), trunc_q).unwrap();
        let g2 = geom_inv(&Monomial::q_pow(rat(d * m * k, 1)), trunc_q).unwrap();
        let one_minus = FracSeries::one(trunc_q)
            .sub(&Monomial::q_pow(rat(d * k, 1)).to_series(trunc_q));
        let numer = Monomial::q_pow(rat(d * r * k, 1))
            .to_series(trunc_q)
            .add(&Monomial::q_pow(rat(d * (m - r) * k, 1)).to_series(trunc_q));
        let mut term = one_minus.mul(&numer).mul(&g1).mul(&g2);
        term = term.mul_monomial(&Monomial::q_pow(rat(k * k, 1)));
        if k % 2 == 0 {
            term = term.neg();
        }
        sum = sum.add(&term);
        k += 1;
    }
    let f = overpartition_series(trunc)
        .mul(&sum)
        .scale_cyc(&CycNum::from_integer(2));
    cyc_to_i64(&f.coeff_int(n).unwrap())
}

/// The overpartition count pbar(n).
pub fn overpartition_count(n: i64) -> i64 {
    cyc_to_i64(&overpartition_series(n + 1).coeff_int(n).unwrap())
}

pub(crate) fn cyc_to_i64(c: &CycNum) -> i64 {
    use num_traits::ToPrimitive;
    let r = c.as_rational().expect("expected a rational coefficient");
    assert!(r.is_integer(), "expected an integer coefficient, got {}", r);
    r.to_integer().to_i64().expect("coefficient exceeds i64")
}

/// Arguments of the mu function attached to (z, d, k):
/// returns (x_half, y, scale) with x_half = e^{pi i u(z,d,k)},
/// y = e^{2 pi i v(d,k)} and the tau-multiplier of the mu/theta scale.
pub fn mu_arguments(spec: &RankSpec, k: i64) -> (Monomial, Monomial, Rat) {
    let d = spec.d as i64;
    let b_over_c = rat(spec.b, spec.c as i64);
    if spec.d % 2 == 1 {
        let x_half = Monomial::new(spec.c, spec.a, b_over_c + rat(d * k, 1));
        let y = Monomial::q_pow(rat(d * d + 2 * d * k, 1));
        (x_half, y, rat(2 * d * d, 1))
    } else {
        let x_half = Monomial::new(
            2 * spec.c,
            spec.a,
            b_over_c / rat(2, 1) + rat(d * k, 2),
        );
        let y0 = Monomial::q_pow(rat(d * d, 4) + rat(d * k, 1));
        let y = if spec.d % 4 == 0 { y0.neg_root() } else { y0 };
        (x_half, y, rat(d * d, 2))
    }
}

/// Sign relating the theta/mu branch of v(d,k) (which carries a +1 shift
/// when d = 2 mod 4) to the canonical half-monomial convention.
pub(crate) fn theta_branch_flip(d: u64) -> bool {
    d % 4 == 2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn o_d_at_z_one_is_overpartition_series() {
        for d in [1u64, 3, 4] {
            let spec = RankSpec::new(d, 0, 0, 1, 24);
            let f = rank_gf(&spec, GfForm::Definition).unwrap();
            let g = overpartition_series(24);
            let r = f.eq_report(&g);
            assert!(r.pass, "d={d}: {}", r.describe());
        }
    }

    #[test]
    fn coefficient_of_q3_is_eight() {
        let spec = RankSpec::new(3, 0, 0, 1, 6);
        let f = rank_gf(&spec, GfForm::Definition).unwrap();
        assert!(f.coeff_int(3).unwrap().eq_value(&CycNum::from_integer(8)));
    }

    #[test]
    fn definition_equals_bilateral() {
        // (d, z) = (2, zeta_5 q^{1/5})
        let spec = RankSpec::new(2, 1, 1, 5, 40);
        let a = rank_gf(&spec, GfForm::Definition).unwrap();
        let b = rank_gf(&spec, GfForm::Bilateral).unwrap();
        let r = a.eq_report(&b);
        assert!(r.pass, "{}", r.describe());
    }

    #[test]
    fn bilateral_rejects_z_minus_one() {
        let spec = RankSpec::new(1, 1, 0, 2, 10);
        assert!(matches!(rank_gf(&spec, GfForm::Bilateral), Err(QError::ZMinusOne)));
    }

    #[test]
    fn k_split_reduces_to_bilateral_for_d1() {
        let spec = RankSpec::new(1, 1, 0, 3, 50);
        let a = rank_k_split(&spec).unwrap();
        let b = rank_gf(&spec, GfForm::Bilateral).unwrap();
        let r = a.eq_report(&b);
        assert!(r.pass, "{}", r.describe());
    }

    #[test]
    fn k_split_matches_forms_odd_and_even() {
        let odd = RankSpec::new(3, 1, 0, 3, 40);
        let r1 = rank_k_split(&odd)
            .unwrap()
            .eq_report(&rank_gf(&odd, GfForm::Bilateral).unwrap());
        assert!(r1.pass, "odd: {}", r1.describe());
        let even = RankSpec::new(2, 1, 1, 5, 30);
        let r2 = rank_k_split(&even)
            .unwrap()
            .eq_report(&rank_gf(&even, GfForm::Bilateral).unwrap());
        assert!(r2.pass, "even: {}", r2.describe());
    }

    #[test]
    fn rank_coeff_symmetry_and_row_sums() {
        assert_eq!(rank_coeff(1, 1, 2), 2);
        assert_eq!(rank_coeff(1, -1, 2), 2);
        for d in 1..=4u64 {
            for n in 0..=12i64 {
                let total: i64 = (-n..=n).map(|m| rank_coeff(d, m, n)).sum();
                assert_eq!(total, overpartition_count(n), "d={d} n={n}");
            }
        }
    }

    #[test]
    fn rank_coeff_mod_rows_partition() {
        for (d, m, n) in [(3u64, 3i64, 3i64), (2, 4, 9), (1, 5, 12)] {
            let total: i64 = (0..m).map(|r| rank_coeff_mod(d, r, m, n)).sum();
            assert_eq!(total, overpartition_count(n));
        }
        assert_eq!(
            rank_coeff_mod(3, 0, 3, 3) + rank_coeff_mod(3, 1, 3, 3) + rank_coeff_mod(3, 2, 3, 3),
            8
        );
        // symmetry M_d(r, m, n) = M_d(m - r, m, n)
        for r in 1..5i64 {
            assert_eq!(rank_coeff_mod(2, r, 5, 11), rank_coeff_mod(2, 5 - r, 5, 11));
        }
    }

    #[test]
    fn m4_row_one_is_two_at_zero() {
        // sum_m M_4(m, 1) z^m = 2 z^0
        assert_eq!(rank_coeff(4, 0, 1), 2);
        for m in 1..=4i64 {
            assert_eq!(rank_coeff(4, m, 1), 0);
            assert_eq!(rank_coeff(4, -m, 1), 0);
        }
    }
}
