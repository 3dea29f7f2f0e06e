//! Named exact identity checkers. Each checker expands both sides of one
//! identity with independent block constructions and compares coefficients
//! exactly on the common window.

use std::fmt;
use std::str::FromStr;

use crate::blocks::{
    eta_series, gen_eta_f, jacobi_bracket, lambert_expand, pochhammer, s_series, LambertSpec,
    PochLen,
};
use crate::cyc::CycNum;
use crate::error::QError;
use crate::fps::{rat, FracSeries, IdentityReport, Monomial, Rat};

use super::{mu_assembly, rank_gf, rank_k_split, twisted_o, GfForm, RankSpec};

/// Hard ceiling on requested q-power windows; larger requests are refused
/// rather than attempted.
const MAX_TRUNC: i64 = 5000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IdentityName {
    Thm13,
    Thm81,
    Thm82Odd,
    Thm822Mod4,
    Thm820Mod4,
    Prop33,
    Cor32,
    ChanR0S1,
    ChanR1S2,
    Eq6Odd,
    HoloPartOdd,
    HoloPartEven,
}

impl IdentityName {
    pub const ALL: [IdentityName; 12] = [
        IdentityName::Thm13,
        IdentityName::Thm81,
        IdentityName::Thm82Odd,
        IdentityName::Thm822Mod4,
        IdentityName::Thm820Mod4,
        IdentityName::Prop33,
        IdentityName::Cor32,
        IdentityName::ChanR0S1,
        IdentityName::ChanR1S2,
        IdentityName::Eq6Odd,
        IdentityName::HoloPartOdd,
        IdentityName::HoloPartEven,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            IdentityName::Thm13 => "thm1.3",
            IdentityName::Thm81 => "thm8.1",
            IdentityName::Thm82Odd => "thm8.2-odd",
            IdentityName::Thm822Mod4 => "thm8.2-2mod4",
            IdentityName::Thm820Mod4 => "thm8.2-0mod4",
            IdentityName::Prop33 => "prop3.3",
            IdentityName::Cor32 => "cor3.2",
            IdentityName::ChanR0S1 => "chan-r0s1",
            IdentityName::ChanR1S2 => "chan-r1s2",
            IdentityName::Eq6Odd => "eq6-odd",
            IdentityName::HoloPartOdd => "holo-part-odd",
            IdentityName::HoloPartEven => "holo-part-even",
        }
    }

    /// Window sized to the acceptance requirements of each identity.
    pub fn default_trunc(&self) -> i64 {
        match self {
            IdentityName::Thm13 => 364,
            IdentityName::Thm81 => 402,
            IdentityName::Thm82Odd | IdentityName::Thm822Mod4 | IdentityName::Thm820Mod4 => 201,
            IdentityName::Prop33 => 61,
            IdentityName::Cor32 => 81,
            IdentityName::ChanR0S1 => 81,
            IdentityName::ChanR1S2 => 41,
            IdentityName::Eq6Odd => 127,
            IdentityName::HoloPartOdd => 25,
            IdentityName::HoloPartEven => 20,
        }
    }
}

impl FromStr for IdentityName {
    type Err = QError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IdentityName::ALL
            .iter()
            .copied()
            .find(|n| n.tag() == s)
            .ok_or_else(|| QError::BadDescriptor(format!("unknown identity {s}")))
    }
}

impl fmt::Display for IdentityName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag())
    }
}

/// Outcome of a [`verify_identity`] run.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub name: IdentityName,
    pub pass: bool,
    /// smallest verified window over all instances
    pub window: Rat,
    pub details: Vec<String>,
}

impl VerifyReport {
    pub fn describe(&self) -> String {
        let mut s = format!(
            "{}: {} (checked below q^({}))",
            self.name.tag(),
            if self.pass { "PASS" } else { "FAIL" },
            self.window
        );
        for d in &self.details {
            s.push('\n');
            s.push_str("  ");
            s.push_str(d);
        }
        s
    }
}

struct Gather {
    pass: bool,
    window: Option<Rat>,
    details: Vec<String>,
}

impl Gather {
    fn new() -> Self {
        Gather { pass: true, window: None, details: Vec::new() }
    }

    fn record(&mut self, label: &str, report: &IdentityReport) {
        self.pass &= report.pass;
        self.window = Some(match self.window {
            None => report.window,
            Some(w) => w.min(report.window),
        });
        self.details.push(format!("{label}: {}", report.describe()));
    }

    fn finish(self, name: IdentityName) -> VerifyReport {
        VerifyReport {
            name,
            pass: self.pass,
            window: self.window.unwrap_or_else(Rat::zero),
            details: self.details,
        }
    }
}

use num_traits::{Signed, Zero};

/// Run a named identity check with the given q-power window.
pub fn verify_identity(name: IdentityName, trunc: i64) -> Result<VerifyReport, QError> {
    if trunc > MAX_TRUNC {
        return Err(QError::ResourceBudget(format!(
            "window q^{trunc} exceeds the q^{MAX_TRUNC} ceiling"
        )));
    }
    if trunc < 2 {
        return Err(QError::ResourceBudget("window too small to check anything".into()));
    }
    let mut g = Gather::new();
    match name {
        IdentityName::Thm13 => check_thm13(trunc, &mut g)?,
        IdentityName::Thm81 => check_thm81(trunc, &mut g)?,
        IdentityName::Thm82Odd => check_thm82(1, trunc, &mut g)?,
        IdentityName::Thm822Mod4 => check_thm82(2, trunc, &mut g)?,
        IdentityName::Thm820Mod4 => check_thm82(4, trunc, &mut g)?,
        IdentityName::Prop33 => check_prop33(trunc, &mut g)?,
        IdentityName::Cor32 => check_cor32(trunc, &mut g)?,
        IdentityName::ChanR0S1 => check_chan_r0s1(trunc, &mut g)?,
        IdentityName::ChanR1S2 => check_chan_r1s2(trunc, &mut g)?,
        IdentityName::Eq6Odd => check_eq6_odd(trunc, &mut g)?,
        IdentityName::HoloPartOdd => check_holo_shift(false, trunc, &mut g)?,
        IdentityName::HoloPartEven => check_holo_shift(true, trunc, &mut g)?,
    }
    Ok(g.finish(name))
}

/// The 3-dissection: O_3(zeta_3; q) = A_0(q^3) + q A_1(q^3) + q^2 A_2(q^3),
/// checked both raw and with the (1+zeta_3)/(1-zeta_3) normalization
/// dissected class by class.
fn check_thm13(trunc: i64, g: &mut Gather) -> Result<(), QError> {
    let spec = RankSpec::new(3, 1, 0, 3, trunc);
    let o3 = rank_gf(&spec, GfForm::Definition)?;
    let a_trunc = trunc / 3 + 2;
    let mut a_side = FracSeries::zero(1, 1, spec.trunc_q());
    let mut a_parts = Vec::new();
    for i in 0..3i64 {
        let ai = thm13_a_series(i as usize, a_trunc)?;
        a_side = a_side.add(
            &ai.substitute(rat(3, 1))
                .mul_monomial(&Monomial::q_pow(Rat::from_integer(i)))
                .truncate_q(spec.trunc_q()),
        );
        a_parts.push(ai);
    }
    g.record("raw O_3(zeta_3;q) vs A-side", &o3.eq_report(&a_side));
    // normalized version, class by class
    let norm = CycNum::one(3)
        .add(&CycNum::root(3, 1))
        .mul(&CycNum::one(3).sub(&CycNum::root(3, 1)).inv().unwrap());
    let o3n = o3.scale_cyc(&norm);
    for i in 0..3i64 {
        let class = o3n.dissect(3, i)?;
        let want = a_parts[i as usize]
            .scale_cyc(&norm)
            .truncate_q(class.trunc_q());
        g.record(
            &format!("normalized class {i}"),
            &class.truncate_q(want.trunc_q()).eq_report(&want),
        );
    }
    Ok(())
}

/// One bracketed quotient of the A_i tables: coeff * q^shift *
/// [q^{n_1},...;q^54] / [q^{d_1},...;q^54].
struct BTerm {
    coeff: i64,
    shift: i64,
    num: &'static [i64],
    den: &'static [i64],
}

const A0_TERMS: &[BTerm] = &[
    BTerm { coeff: -3, shift: 0, num: &[9, 12, 21, 27], den: &[3, 24] },
    BTerm { coeff: -6, shift: 1, num: &[9, 12, 15, 27], den: &[3, 24] },
    BTerm { coeff: 4, shift: 0, num: &[6, 12, 18, 24, 27], den: &[3, 15, 21] },
    BTerm { coeff: 3, shift: 3, num: &[6, 9, 15, 27], den: &[3, 24] },
    BTerm { coeff: -2, shift: 3, num: &[6, 9, 12, 18, 24], den: &[3, 15, 21] },
    BTerm { coeff: 12, shift: 1, num: &[9, 15, 18], den: &[6] },
    BTerm { coeff: -6, shift: 1, num: &[9, 12, 27], den: &[6] },
    BTerm { coeff: 12, shift: 1, num: &[15, 21, 24], den: &[18] },
    BTerm { coeff: -6, shift: 1, num: &[9, 24, 27], den: &[12] },
    BTerm { coeff: 12, shift: 4, num: &[9, 15, 21, 24], den: &[18, 27] },
];

const A1_TERMS: &[BTerm] = &[
    BTerm { coeff: 6, shift: 0, num: &[6, 15, 21, 27], den: &[3, 24] },
    BTerm { coeff: -4, shift: 0, num: &[6, 12, 18, 24], den: &[3, 15] },
    BTerm { coeff: -2, shift: 1, num: &[6, 12, 18, 24], den: &[3, 21] },
    BTerm { coeff: 6, shift: 1, num: &[9, 12, 21], den: &[6] },
    BTerm { coeff: 2, shift: 2, num: &[15, 18, 21], den: &[24] },
    BTerm { coeff: 4, shift: 2, num: &[9, 15, 24], den: &[12] },
    BTerm { coeff: -2, shift: 5, num: &[9, 12, 21], den: &[24] },
];

const A2_TERMS: &[BTerm] = A1_TERMS; // same brackets, doubled coefficients

fn bracket_quotient_sum(terms: &[BTerm], scale: i64, trunc_q: Rat) -> Result<FracSeries, QError> {
    let step = rat(54, 1);
    let mut sum = FracSeries::zero(1, 1, trunc_q);
    for t in terms {
        let num_args: Vec<Monomial> =
            t.num.iter().map(|e| Monomial::q_pow(rat(*e, 1))).collect();
        let den_args: Vec<Monomial> =
            t.den.iter().map(|e| Monomial::q_pow(rat(*e, 1))).collect();
        let mut term = jacobi_bracket(&num_args, step, trunc_q)?
            .mul(&jacobi_bracket(&den_args, step, trunc_q)?.inv()?);
        term = term
            .mul_monomial(&Monomial::q_pow(rat(t.shift, 1)))
            .scale_cyc(&CycNum::from_integer(t.coeff * scale));
        sum = sum.add(&term);
    }
    Ok(sum)
}

/// The series A_0, A_1, A_2 of the 3-dissection (in their own q variable).
pub fn thm13_a_series(i: usize, trunc: i64) -> Result<FracSeries, QError> {
    let trunc_q = Rat::from_integer(trunc);
    let e = |k: i64| pochhammer(
        &Monomial::q_pow(rat(k, 1)),
        rat(k, 1),
        PochLen::Infinite,
        trunc_q,
    );
    match i {
        0 => {
            // Lambert piece: -6 q^{15} / ((q^54;q^54) [q^27; q^54]) * sum
            let spec = LambertSpec::bilateral(
                rat(27, 1),
                rat(54, 1),
                Monomial::q_pow(rat(18, 1)),
                Monomial::q_pow(rat(54, 1)),
            );
            let lam = lambert_expand(&spec, trunc_q)?;
            let lam_den = e(54)?.mul(&jacobi_bracket(
                &[Monomial::q_pow(rat(27, 1))],
                rat(54, 1),
                trunc_q,
            )?);
            let lam_part = lam
                .mul(&lam_den.inv()?)
                .mul_monomial(&Monomial::q_pow(rat(15, 1)))
                .scale_cyc(&CycNum::from_integer(-6));
            let front = e(6)?
                .mul(&e(54)?.pow(2)?)
                .mul(&e(1)?.inv()?)
                .mul(&e(3)?.inv()?)
                .mul(&jacobi_bracket(&[Monomial::q_pow(rat(1, 1))], rat(6, 1), trunc_q)?.inv()?);
            Ok(lam_part.add(&front.mul(&bracket_quotient_sum(A0_TERMS, 1, trunc_q)?)))
        }
        1 => {
            let front = e(6)?
                .mul(&e(54)?.pow(2)?)
                .mul(&e(1)?.inv()?)
                .mul(&e(3)?.inv()?)
                .mul(&jacobi_bracket(&[Monomial::q_pow(rat(1, 1))], rat(6, 1), trunc_q)?.inv()?);
            Ok(front.mul(&bracket_quotient_sum(A1_TERMS, 1, trunc_q)?))
        }
        2 => {
            let front = e(6)?
                .pow(3)?
                .mul(&e(54)?.pow(2)?)
                .mul(&e(1)?.inv()?)
                .mul(&e(3)?.pow(-3)?);
            Ok(front.mul(&bracket_quotient_sum(A2_TERMS, 2, trunc_q)?))
        }
        _ => Err(QError::BadDescriptor(format!("no A_{i} in the 3-dissection"))),
    }
}

/// Product side of the odd-part evaluation of O_4:
/// 2q (-z q^8, -q^8/z; q^8)_inf (q^4;q^4)^4 (q^8;q^8)_inf
///   / ((z q^4, q^4/z; q^4)_inf (q^2;q^2)^4).
pub fn thm81_product(z: &Monomial, trunc: i64) -> Result<FracSeries, QError> {
    let trunc_q = Rat::from_integer(trunc);
    let q4 = Monomial::q_pow(rat(4, 1));
    let q8 = Monomial::q_pow(rat(8, 1));
    let num = pochhammer(&z.neg_root().mul(&q8), rat(8, 1), PochLen::Infinite, trunc_q)?
        .mul(&pochhammer(
            &z.inv().neg_root().mul(&q8),
            rat(8, 1),
            PochLen::Infinite,
            trunc_q,
        )?)
        .mul(
            &pochhammer(&q4, rat(4, 1), PochLen::Infinite, trunc_q)?.pow(4)?,
        )
        .mul(&pochhammer(&q8, rat(8, 1), PochLen::Infinite, trunc_q)?);
    let den = pochhammer(&z.mul(&q4), rat(4, 1), PochLen::Infinite, trunc_q)?
        .mul(&pochhammer(&z.inv().mul(&q4), rat(4, 1), PochLen::Infinite, trunc_q)?)
        .mul(
            &pochhammer(&Monomial::q_pow(rat(2, 1)), rat(2, 1), PochLen::Infinite, trunc_q)?
                .pow(4)?,
        );
    Ok(num
        .mul(&den.inv()?)
        .mul_monomial(&Monomial::q_pow(Rat::from_integer(1)))
        .scale_cyc(&CycNum::from_integer(2)))
}

fn odd_part(f: &FracSeries) -> Result<FracSeries, QError> {
    Ok(f
        .dissect(2, 1)?
        .substitute(rat(2, 1))
        .mul_monomial(&Monomial::q_pow(Rat::from_integer(1))))
}

fn check_thm81(trunc: i64, g: &mut Gather) -> Result<(), QError> {
    for j in 0..=3i64 {
        let (spec, z) = if j == 0 {
            (RankSpec::new(4, 0, 0, 1, trunc), Monomial::one())
        } else {
            (RankSpec::new(4, j, 0, 7, trunc), Monomial::new(7, j, Rat::zero()))
        };
        let lhs = odd_part(&rank_gf(&spec, GfForm::Definition)?)?;
        let rhs = thm81_product(&z, trunc)?;
        let label = if j == 0 { "z = 1".to_string() } else { format!("z = zeta_7^{j}") };
        g.record(&label, &lhs.eq_report(&rhs));
    }
    Ok(())
}

/// The modular differences of Theorem 8.2: the mu/P assemblies of the two
/// completed objects minus each other equal the plain twisted difference,
/// because the non-holomorphic parts cancel.
fn check_thm82(d: u64, trunc: i64, g: &mut Gather) -> Result<(), QError> {
    let (a, b, c) = (1i64, 0i64, 3u64);
    let spec1 = RankSpec::new(d, a, b, c, trunc);
    match d % 4 {
        1 | 3 => {
            let spec2 = RankSpec::new(2 * d, 2 * a, 2 * b, c, trunc);
            let lhs = mu_assembly(&spec1)?.sub(&mu_assembly(&spec2)?);
            let rhs = twisted_o(&spec1)?.sub(&twisted_o(&spec2)?);
            g.record(
                &format!("d = {d} vs 2d = {} (same lattice)", 2 * d),
                &lhs.eq_report(&rhs),
            );
        }
        2 => {
            let spec2 = RankSpec::new(2 * d, 2 * a + c as i64, 8 * b, 2 * c, 4 * trunc);
            let lhs = mu_assembly(&spec1)?.sub(&mu_assembly(&spec2)?.substitute(rat(1, 4)));
            let rhs = twisted_o(&spec1)?.sub(&twisted_o(&spec2)?.substitute(rat(1, 4)));
            g.record(
                &format!("d = {d} vs 2d = {} at tau/4", 2 * d),
                &lhs.eq_report(&rhs),
            );
        }
        0 => {
            let spec2 = RankSpec::new(2 * d, 2 * a, 8 * b, 2 * c, 4 * trunc);
            let lhs = mu_assembly(&spec1)?.sub(&mu_assembly(&spec2)?.substitute(rat(1, 4)));
            let rhs = twisted_o(&spec1)?.sub(&twisted_o(&spec2)?.substitute(rat(1, 4)));
            g.record(
                &format!("d = {d} vs 2d = {} at tau/4", 2 * d),
                &lhs.eq_report(&rhs),
            );
        }
        _ => unreachable!(),
    }
    Ok(())
}

const PROP33_GRID: [(u64, i64, i64, u64); 5] =
    [(1, 1, 0, 3), (3, 1, 0, 3), (2, 1, 0, 3), (4, 1, 1, 3), (5, 2, 1, 5)];

fn check_prop33(trunc: i64, g: &mut Gather) -> Result<(), QError> {
    for (d, a, b, c) in PROP33_GRID {
        let spec = RankSpec::new(d, a, b, c, trunc);
        let (lhs, rhs) = super::rank_mu_decomposition(&spec)?;
        g.record(&format!("(d,a,b,c) = ({d},{a},{b},{c})"), &lhs.eq_report(&rhs));
    }
    Ok(())
}

fn check_cor32(trunc: i64, g: &mut Gather) -> Result<(), QError> {
    for (d, a, b, c) in PROP33_GRID {
        let spec = RankSpec::new(d, a, b, c, trunc);
        let def = rank_gf(&spec, GfForm::Definition)?;
        let bil = rank_gf(&spec, GfForm::Bilateral)?;
        let split = rank_k_split(&spec)?;
        g.record(
            &format!("definition vs bilateral ({d},{a},{b},{c})"),
            &def.eq_report(&bil),
        );
        g.record(
            &format!("bilateral vs k-split ({d},{a},{b},{c})"),
            &bil.eq_report(&split),
        );
    }
    Ok(())
}

fn check_chan_r0s1(trunc: i64, g: &mut Gather) -> Result<(), QError> {
    let trunc_q = Rat::from_integer(trunc);
    // sum_n (-1)^n q^{d^2 n^2 + d^2 n} / (1 - Z q^{2 d^2 n})
    //   = (q^{2d^2}; q^{2d^2})^2 / [Z; q^{2d^2}]
    for (z, d, label) in [
        (Monomial::new(5, 1, rat(2, 5)), 1i64, "Z = zeta_5 q^{2/5}, d = 1"),
        (Monomial::new(3, 1, rat(0, 1)), 3, "Z = zeta_3, d = 3"),
        (Monomial::new(7, 2, rat(1, 7)), 2, "Z = zeta_7^2 q^{1/7}, d = 2"),
    ] {
        let spec = LambertSpec::bilateral(
            rat(d * d, 1),
            rat(d * d, 1),
            z.clone(),
            Monomial::q_pow(rat(2 * d * d, 1)),
        );
        let lhs = lambert_expand(&spec, trunc_q + Rat::from_integer(1))?.truncate_q(trunc_q);
        let step = rat(2 * d * d, 1);
        let rhs = pochhammer(&Monomial::q_pow(step), step, PochLen::Infinite, trunc_q)?
            .pow(2)?
            .mul(&jacobi_bracket(&[z], step, trunc_q)?.inv()?);
        g.record(label, &lhs.eq_report(&rhs));
    }
    Ok(())
}

fn chan_sides(
    a: &Monomial,
    b1: &Monomial,
    b2: &Monomial,
    trunc_q: Rat,
) -> Result<(FracSeries, FracSeries), QError> {
    let one = rat(1, 1);
    let lhs = jacobi_bracket(&[a.clone(), b2.mul(&b1.inv())], one, trunc_q)?
        .mul(&pochhammer(&Monomial::q_pow(one), one, PochLen::Infinite, trunc_q)?.pow(2)?)
        .mul(&jacobi_bracket(&[b1.clone(), b2.clone()], one, trunc_q)?.inv()?);
    let pad = trunc_q + a.exponent().abs() + b1.exponent().abs() + b2.exponent().abs()
        + Rat::from_integer(1);
    let sum1 = lambert_expand(
        &LambertSpec::bilateral(rat(1, 2), rat(1, 2), b1.clone(), Monomial::q_pow(one))
            .with_numerator(Monomial::one(), a.mul(&b2.inv())),
        pad,
    )?;
    let sum2 = lambert_expand(
        &LambertSpec::bilateral(rat(1, 2), rat(1, 2), b2.clone(), Monomial::q_pow(one))
            .with_numerator(Monomial::one(), a.mul(&b1.inv())),
        pad,
    )?;
    let rhs = jacobi_bracket(&[a.mul(&b1.inv())], one, trunc_q)?
        .mul(&sum1)
        .sub(
            &jacobi_bracket(&[a.mul(&b2.inv())], one, trunc_q)?
                .mul(&sum2)
                .mul_monomial(&b2.mul(&b1.inv())),
        );
    Ok((lhs.truncate_q(trunc_q), rhs.truncate_q(trunc_q)))
}

fn check_chan_r1s2(trunc: i64, g: &mut Gather) -> Result<(), QError> {
    let trunc_q = Rat::from_integer(trunc);
    // fixed sample of bracket arguments, kept away from degenerate poles;
    // exponent denominators stay small so the common lattice stays cheap
    let samples: [(Monomial, Monomial, Monomial); 5] = [
        (
            Monomial::new(3, 1, rat(1, 2)),
            Monomial::new(4, 1, rat(1, 3)),
            Monomial::new(8, 1, rat(2, 3)),
        ),
        (
            Monomial::new(1, 0, rat(3, 2)),
            Monomial::new(3, 1, rat(1, 3)),
            Monomial::new(3, 2, rat(2, 3)),
        ),
        (
            Monomial::new(4, 1, rat(1, 4)),
            Monomial::new(6, 1, rat(1, 2)),
            Monomial::new(6, 5, rat(3, 4)),
        ),
        (
            Monomial::new(12, 5, rat(5, 6)),
            Monomial::new(3, 1, rat(1, 6)),
            Monomial::new(2, 1, rat(1, 2)),
        ),
        (
            Monomial::new(8, 3, rat(1, 3)),
            Monomial::new(8, 1, rat(1, 4)),
            Monomial::new(8, 5, rat(5, 4)),
        ),
    ];
    for (i, (a, b1, b2)) in samples.iter().enumerate() {
        let (lhs, rhs) = chan_sides(a, b1, b2, trunc_q)?;
        g.record(&format!("sample {i}"), &lhs.eq_report(&rhs));
    }
    // the specialization feeding the k-sum of the decomposition
    for d in [3i64, 5] {
        for k in [1i64, 2] {
            let z = Monomial::new(5, 1, rat(1, 5));
            let z2 = z.pow(2);
            let step = rat(2 * d * d, 1);
            let lhs = jacobi_bracket(
                &[z2.mul(&Monomial::q_pow(step)), Monomial::q_pow(rat(4 * d * k, 1))],
                step,
                trunc_q,
            )?
            .mul(&pochhammer(&Monomial::q_pow(step), step, PochLen::Infinite, trunc_q)?.pow(2)?)
            .mul(
                &jacobi_bracket(
                    &[
                        z2.mul(&Monomial::q_pow(rat(2 * d * k, 1))),
                        z2.inv().mul(&Monomial::q_pow(rat(2 * d * k, 1))),
                        Monomial::q_pow(rat(2 * d * k, 1)),
                    ],
                    step,
                    trunc_q,
                )?
                .inv()?,
            );
            let pad = trunc_q + Rat::from_integer(1);
            let s1 = lambert_expand(
                &LambertSpec::bilateral(
                    rat(d * d, 1),
                    rat(d * d + 2 * d * k, 1),
                    z2.mul(&Monomial::q_pow(rat(2 * d * k, 1))),
                    Monomial::q_pow(step),
                ),
                pad,
            )?;
            let s2 = lambert_expand(
                &LambertSpec::bilateral(
                    rat(d * d, 1),
                    rat(d * d + 2 * d * (d - k), 1),
                    z2.mul(&Monomial::q_pow(rat(2 * d * (d - k), 1))),
                    Monomial::q_pow(step),
                ),
                pad,
            )?;
            let rhs = s1
                .sub(&s2.mul_monomial(&Monomial::q_pow(rat(2 * d * (d - 2 * k), 1))))
                .truncate_q(trunc_q);
            g.record(&format!("specialized (d,k) = ({d},{k})"), &lhs.eq_report(&rhs));
        }
    }
    Ok(())
}

/// One bracketed generalized-eta quotient of the level-162 dissection identity.
struct FTerm {
    coeff: i64,
    group: u8,
    num: &'static [i64],
    den: &'static [i64],
}

const BIG_THING_TERMS: &[FTerm] = &[
    FTerm { coeff: -3, group: 1, num: &[27, 36, 63, 81], den: &[9, 72] },
    FTerm { coeff: -6, group: 1, num: &[27, 36, 45, 81], den: &[9, 72] },
    FTerm { coeff: 4, group: 1, num: &[18, 36, 54, 72, 81], den: &[9, 45, 63] },
    FTerm { coeff: 3, group: 1, num: &[18, 27, 45, 81], den: &[9, 72] },
    FTerm { coeff: -2, group: 1, num: &[18, 27, 36, 54, 72], den: &[9, 45, 63] },
    FTerm { coeff: 12, group: 1, num: &[27, 45, 54], den: &[18] },
    FTerm { coeff: -6, group: 1, num: &[27, 36, 81], den: &[18] },
    FTerm { coeff: 12, group: 1, num: &[45, 63, 72], den: &[54] },
    FTerm { coeff: -6, group: 1, num: &[27, 72, 81], den: &[36] },
    FTerm { coeff: 12, group: 1, num: &[27, 45, 63, 72], den: &[54, 81] },
    FTerm { coeff: 6, group: 1, num: &[18, 45, 63, 81], den: &[9, 72] },
    FTerm { coeff: -4, group: 1, num: &[18, 36, 54, 72], den: &[9, 45] },
    FTerm { coeff: -2, group: 1, num: &[18, 36, 54, 72], den: &[9, 63] },
    FTerm { coeff: 6, group: 1, num: &[27, 36, 63], den: &[18] },
    FTerm { coeff: 2, group: 1, num: &[45, 54, 63], den: &[72] },
    FTerm { coeff: 4, group: 1, num: &[27, 45, 72], den: &[36] },
    FTerm { coeff: -2, group: 1, num: &[27, 36, 63], den: &[72] },
    FTerm { coeff: 12, group: 2, num: &[18, 45, 63, 81], den: &[9, 72] },
    FTerm { coeff: -8, group: 2, num: &[18, 36, 54, 72], den: &[9, 45] },
    FTerm { coeff: -4, group: 2, num: &[18, 36, 54, 72], den: &[9, 63] },
    FTerm { coeff: 12, group: 2, num: &[27, 36, 63], den: &[18] },
    FTerm { coeff: 4, group: 2, num: &[45, 54, 63], den: &[72] },
    FTerm { coeff: 8, group: 2, num: &[27, 45, 72], den: &[36] },
    FTerm { coeff: -4, group: 2, num: &[27, 36, 63], den: &[72] },
];

/// The generalized-eta side of the level-162 identity behind the 3-dissection.
pub fn big_thing_rhs(trunc: i64) -> Result<FracSeries, QError> {
    let trunc_q = Rat::from_integer(trunc);
    let one = Rat::from_integer(1);
    let eta18_cubed = eta_series(rat(18, 1), trunc_q).pow(3)?;
    let f18 = |rho: i64| gen_eta_f(18, rho, one, trunc_q);
    let pref1 = eta18_cubed.mul(
        &f18(3)?
            .pow(2)?
            .mul(&f18(6)?)
            .mul(&f18(9)?)
            .inv()?,
    );
    let pref2 = eta18_cubed.mul(
        &f18(3)?
            .mul(&f18(6)?)
            .mul(&f18(9)?.pow(2)?)
            .inv()?,
    );
    let f162 = |rhos: &[i64]| -> Result<FracSeries, QError> {
        let mut out = FracSeries::one(trunc_q);
        for rho in rhos {
            out = out.mul(&gen_eta_f(162, *rho, one, trunc_q)?);
        }
        Ok(out)
    };
    let mut sum = FracSeries::zero(1, 1, trunc_q);
    for t in BIG_THING_TERMS {
        let pref = if t.group == 1 { &pref1 } else { &pref2 };
        let term = pref
            .mul(&f162(t.num)?)
            .mul(&f162(t.den)?.inv()?)
            .scale_cyc(&CycNum::from_integer(t.coeff));
        sum = sum.add(&term);
    }
    Ok(sum)
}

/// The level-162 form of the dissection at (d, a, c) = (3, 1, 3):
/// O_3(zeta_3; q) + 3 S(1,3; 162 tau) equals the generalized-eta side.
fn check_eq6_odd(trunc: i64, g: &mut Gather) -> Result<(), QError> {
    let spec = RankSpec::new(3, 1, 0, 3, trunc);
    let o3 = rank_gf(&spec, GfForm::Definition)?;
    let s = s_series(1, 3, rat(162, 1), Rat::from_integer(trunc))?;
    let lhs = o3.add(&s.scale_cyc(&CycNum::from_integer(3)));
    let rhs = big_thing_rhs(trunc)?;
    g.record("O_3(zeta_3;q) + 3 S(1,3;162tau) vs eta side", &lhs.eq_report(&rhs));
    Ok(())
}

/// Shift consistency of the holomorphic parts: moving b by a full period
/// multiplies the completed object by an explicit root of unity, and the
/// finite correction terms must track it.
fn check_holo_shift(even: bool, trunc: i64, g: &mut Gather) -> Result<(), QError> {
    if even {
        let (d, a, c) = (2u64, 1i64, 3u64);
        let period = (c as i64) * (d as i64) * (d as i64) / 2;
        for b in [0i64, 1, 7] {
            let h1 = super::o_tilde_holo(&RankSpec::new(d, a, b + period, c, trunc))?;
            let h0 = super::o_tilde_holo(&RankSpec::new(d, a, b, c, trunc))?;
            // (-1)^{d/2} zeta_c^a = -zeta_3
            let rhs = h0.scale_cyc(&CycNum::root(c, a).neg());
            g.record(
                &format!("d=2: b={} vs b={b}", b + period),
                &h1.truncate_q(rhs.trunc_q()).eq_report(&rhs),
            );
        }
    } else {
        let (d, a, c) = (1u64, 1i64, 3u64);
        let period = (c as i64) * (d as i64) * (d as i64);
        for b in [0i64, 1, 5] {
            let h1 = super::o_tilde_holo(&RankSpec::new(d, a, b + period, c, trunc))?;
            let h0 = super::o_tilde_holo(&RankSpec::new(d, a, b, c, trunc))?;
            let rhs = h0.scale_cyc(&CycNum::root(c, 2 * a).neg());
            g.record(
                &format!("d=1: b={} vs b={b}", b + period),
                &h1.truncate_q(rhs.trunc_q()).eq_report(&rhs),
            );
        }
    }
    Ok(())
}
