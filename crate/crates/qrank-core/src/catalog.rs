//! Fixed catalog of named series for the command line and the golden
//! files, plus the quick self-test that exercises one documented example
//! from every module.

use crate::blocks::{eta_series, gen_eta_f, klein_form, pochhammer, s_series, PochLen};
use crate::cyc::CycNum;
use crate::error::QError;
use crate::fps::{rat, FracSeries, Monomial, Rat};
use crate::rank::{
    overpartition_series, rank_gf, thm13_a_series, thm81_product, GfForm, RankSpec,
};

pub const SERIES_NAMES: [(&str, &str); 17] = [
    ("euler", "(q;q)_inf"),
    ("eta1", "eta(tau)"),
    ("eta2", "eta(2 tau)"),
    ("eta18", "eta(18 tau)"),
    ("overpartition", "eta(2 tau)/eta(tau)^2 = sum pbar(n) q^n"),
    ("f_2_1", "generalized eta f_{2,1}(tau)"),
    ("f_18_9", "generalized eta f_{18,9}(tau)"),
    ("klein_0_13_2", "Klein form k_{0,1/3}(2 tau)"),
    ("s_1_3_162", "S(1,3; 162 tau)"),
    ("o_1_3_1", "O_1(zeta_3; q)"),
    ("o_2_3_1", "O_2(zeta_3; q)"),
    ("o_3_3_1", "O_3(zeta_3; q)"),
    ("o_4_7_1", "O_4(zeta_7; q)"),
    ("thm13_a0", "A_0 of the 3-dissection"),
    ("thm13_a1", "A_1 of the 3-dissection"),
    ("thm13_a2", "A_2 of the 3-dissection"),
    ("thm81_z7", "odd-part product of O_4 at z = zeta_7"),
];

pub fn build_series(name: &str, trunc: i64) -> Result<FracSeries, QError> {
    if trunc < 1 || trunc > 100_000 {
        return Err(QError::ResourceBudget(format!("series window q^{trunc}")));
    }
    let t = Rat::from_integer(trunc);
    match name {
        "euler" => pochhammer(&Monomial::q_pow(rat(1, 1)), rat(1, 1), PochLen::Infinite, t),
        "eta1" => Ok(eta_series(rat(1, 1), t)),
        "eta2" => Ok(eta_series(rat(2, 1), t)),
        "eta18" => Ok(eta_series(rat(18, 1), t)),
        "overpartition" => Ok(overpartition_series(trunc)),
        "f_2_1" => gen_eta_f(2, 1, rat(1, 1), t),
        "f_18_9" => gen_eta_f(18, 9, rat(1, 1), t),
        "klein_0_13_2" => klein_form(rat(0, 1), rat(1, 3), rat(2, 1), t),
        "o_1_3_1" => rank_gf(&RankSpec::new(1, 1, 0, 3, trunc), GfForm::Definition),
        "o_2_3_1" => rank_gf(&RankSpec::new(2, 1, 0, 3, trunc), GfForm::Definition),
        "o_3_3_1" => rank_gf(&RankSpec::new(3, 1, 0, 3, trunc), GfForm::Definition),
        "o_4_7_1" => rank_gf(&RankSpec::new(4, 1, 0, 7, trunc), GfForm::Definition),
        "s_1_3_162" => s_series(1, 3, rat(162, 1), t),
        "thm13_a0" => thm13_a_series(0, trunc),
        "thm13_a1" => thm13_a_series(1, trunc),
        "thm13_a2" => thm13_a_series(2, trunc),
        "thm81_z7" => thm81_product(&Monomial::new(7, 1, rat(0, 1)), trunc),
        _ => Err(QError::BadDescriptor(format!(
            "unknown series name {name}; known: {}",
            SERIES_NAMES.iter().map(|(n, _)| *n).collect::<Vec<_>>().join(", ")
        ))),
    }
}

/// One line per documented quick example; all must hold.
pub fn selftest() -> Vec<(String, bool)> {
    use crate::modgroup::{eta_mult, kronecker, CongGroup, Cusp, Mat2};
    let mut out: Vec<(String, bool)> = Vec::new();
    let mut check = |name: &str, ok: bool| out.push((name.to_string(), ok));

    // cyclotomic arithmetic
    check("cyc: zeta_3 + zeta_3^2 = -1", {
        CycNum::root(3, 1)
            .add(&CycNum::root(3, 2))
            .eq_value(&CycNum::from_integer(-1))
    });
    check("cyc: zeta_4^2 = -1", {
        CycNum::root(4, 1).pow(2).eq_value(&CycNum::from_integer(-1))
    });
    check("cyc: (1 - zeta_3)(1 - zeta_3^2) = 3", {
        let a = CycNum::one(3).sub(&CycNum::root(3, 1));
        let b = CycNum::one(3).sub(&CycNum::root(3, 2));
        a.mul(&b).eq_value(&CycNum::from_integer(3))
    });
    check("cyc: inverse of zeta_8^3 is zeta_8^5", {
        CycNum::root(8, 3).inv().map(|x| x.eq_value(&CycNum::root(8, 5))).unwrap_or(false)
    });

    // series arithmetic
    check("fps: (1 - q) * geometric = 1", {
        let t = rat(24, 1);
        let geo: Vec<(i64, CycNum)> = (0..24).map(|e| (e, CycNum::one(1))).collect();
        let geo = FracSeries::from_terms(1, 1, 24, geo);
        let one_minus = FracSeries::one(t).sub(&Monomial::q_pow(rat(1, 1)).to_series(t));
        one_minus.mul(&geo).eq_report(&FracSeries::one(t)).pass
    });
    check("fps: p(4) = 5 from 1/(q;q)", {
        build_series("euler", 8)
            .and_then(|e| e.inv())
            .and_then(|f| f.coeff_int(4))
            .map(|c| c.eq_value(&CycNum::from_integer(5)))
            .unwrap_or(false)
    });
    check("fps: pbar(3) = 8", {
        overpartition_series(5)
            .coeff_int(3)
            .map(|c| c.eq_value(&CycNum::from_integer(8)))
            .unwrap_or(false)
    });
    check("fps: q^{1/2} * q^{1/3} = q^{5/6}", {
        let t = rat(2, 1);
        let p = Monomial::q_pow(rat(1, 2))
            .to_series(t)
            .mul(&Monomial::q_pow(rat(1, 3)).to_series(t))
            .normalize_den();
        p.lowest().map(|(e, _)| e == rat(5, 6)).unwrap_or(false)
    });

    // blocks
    check("blocks: eta lowest exponent 1/24", {
        eta_series(rat(1, 1), rat(2, 1)).lowest().map(|(e, _)| e == rat(1, 24)).unwrap_or(false)
    });
    check("blocks: f_{2,1} = eta(tau)^2/eta(2tau)", {
        let t = rat(16, 1);
        let f = gen_eta_f(2, 1, rat(1, 1), t).unwrap();
        let g = eta_series(rat(1, 1), t)
            .pow(2)
            .unwrap()
            .mul(&eta_series(rat(2, 1), t).inv().unwrap());
        f.eq_report(&g).pass
    });
    check("blocks: theta vanishes at z integer", {
        crate::blocks::vartheta_series(&Monomial::one(), rat(1, 1), rat(8, 1))
            .map(|f| f.is_zero())
            .unwrap_or(false)
    });
    check("blocks: S(1,3;162tau) lowest exponent 45", {
        s_series(1, 3, rat(162, 1), rat(46, 1))
            .map(|s| s.lowest().map(|(e, _)| e == rat(45, 1)).unwrap_or(false))
            .unwrap_or(false)
    });

    // rank
    check("rank: O_d(1;q) = overpartition series", {
        rank_gf(&RankSpec::new(3, 0, 0, 1, 12), GfForm::Definition)
            .map(|f| f.eq_report(&overpartition_series(12)).pass)
            .unwrap_or(false)
    });
    check("rank: M_1(1,2) = 2", crate::rank::rank_coeff(1, 1, 2) == 2);
    check(
        "rank: rows of M_3(r,3,3) sum to 8",
        (0..3).map(|r| crate::rank::rank_coeff_mod(3, r, 3, 3)).sum::<i64>() == 8,
    );

    // modular group machinery
    check("modgroup: identity is a member", {
        CongGroup::new(162, 9, 1).member(&Mat2::identity())
    });
    check("modgroup: width of infinity is 1", {
        CongGroup::new(162, 9, 1).cusp_width(&Cusp::infinity()) == 1
    });
    check("modgroup: width of 0 is 162", {
        CongGroup::new(162, 9, 1).cusp_width(&Cusp::new(0, 1)) == 162
    });
    check("modgroup: kronecker(2,7)=1, kronecker(2,3)=-1", {
        kronecker(2, 7) == 1 && kronecker(2, 3) == -1
    });
    check("modgroup: nu(T) = zeta_24", {
        eta_mult(&Mat2::t_pow(1)).eq_value(&CycNum::root(24, 1))
    });

    // numerics
    check("numerics: E(0) = 0 and E odd", {
        let e = crate::numerics::e_integral(0.7);
        crate::numerics::e_integral(0.0) == 0.0
            && (crate::numerics::e_integral(-0.7) + e).abs() < 1e-15
    });
    check("numerics: theta(0;tau) = 0", {
        use num_complex::Complex64;
        crate::numerics::theta_num(Complex64::new(0.0, 0.0), Complex64::new(0.2, 0.8)).norm()
            < 1e-12
    });
    check("numerics: R(-tau/2;tau) = q^{1/8}", {
        use num_complex::Complex64;
        let tau = Complex64::new(0.1, 0.9);
        let v = crate::numerics::r_num(-tau / 2.0, tau);
        let q8 = (Complex64::new(0.0, 2.0 * std::f64::consts::PI) * tau / 8.0).exp();
        (v - q8).norm() < 1e-10
    });

    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_catalog_names_build() {
        for (name, _) in SERIES_NAMES {
            let s = build_series(name, 12).unwrap();
            assert!(s.trunc_q() >= rat(10, 1), "{name} window too small");
        }
        assert!(build_series("no_such_series", 10).is_err());
    }

    #[test]
    fn selftest_is_green() {
        for (name, ok) in selftest() {
            assert!(ok, "selftest failed: {name}");
        }
    }
}
