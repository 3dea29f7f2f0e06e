//! Truncated formal Laurent series in q^{1/D} over cyclotomic coefficients.
//!
//! A [`FracSeries`] stores exact coefficients for every exponent e/D with
//! e < T (the scaled truncation) and finitely many negative exponents. The
//! truncation is propagated pessimistically through arithmetic so that every
//! stored coefficient is trustworthy: identity checks rely on this.
//!
//! A [`Monomial`] is a term zeta_L^j * q^{e/D}; specializations such as
//! z = zeta_c^a q^{b/c} and the half-power arguments e^{pi*i*u} enter every
//! constructor in this form.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::cyc::CycNum;
use crate::error::QError;

/// Exact exponent arithmetic: rationals over machine integers.
pub type Rat = Ratio<i64>;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

/// zeta_L^j * q^{num/den} with 0 <= j < L and den > 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    order: u64,
    j: i64,
    exp: Rat,
}

impl Monomial {
    pub fn new(order: u64, j: i64, exp: Rat) -> Self {
        assert!(order >= 1);
        Monomial { order, j: j.rem_euclid(order as i64), exp }
    }

    /// q^e with trivial root part.
    pub fn q_pow(exp: Rat) -> Self {
        Monomial { order: 1, j: 0, exp }
    }

    pub fn one() -> Self {
        Monomial { order: 1, j: 0, exp: Rat::zero() }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn zeta_power(&self) -> i64 {
        self.j
    }

    pub fn exponent(&self) -> Rat {
        self.exp
    }

    pub fn root_cyc(&self) -> CycNum {
        CycNum::root(self.order, self.j)
    }

    pub fn is_one(&self) -> bool {
        self.j == 0 && self.exp.is_zero()
    }

    /// True when the root-of-unity part is 1 and the exponent is zero --
    /// the degenerate pole case for Lambert expansions.
    pub fn is_pole_at_one(&self) -> bool {
        self.exp.is_zero() && self.root_cyc().is_one()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let l = num_integer::lcm(self.order, other.order);
        let j = self.j * (l / self.order) as i64 + other.j * (l / other.order) as i64;
        Monomial::new(l, j, self.exp + other.exp)
    }

    pub fn inv(&self) -> Monomial {
        Monomial::new(self.order, -self.j, -self.exp)
    }

    pub fn pow(&self, k: i64) -> Monomial {
        Monomial::new(self.order, self.j * k, self.exp * Rat::from_integer(k))
    }

    pub fn neg_root(&self) -> Monomial {
        // multiply the root part by -1 = zeta_2
        if self.order % 2 == 0 {
            Monomial::new(self.order, self.j + (self.order / 2) as i64, self.exp)
        } else {
            Monomial::new(2 * self.order, 2 * self.j + self.order as i64, self.exp)
        }
    }

    /// Canonical square root: the representative j of the root part is
    /// halved in the doubled order, and the q-exponent is halved. Fixing
    /// this branch makes every half-power identity check deterministic.
    pub fn sqrt_canonical(&self) -> Monomial {
        Monomial::new(2 * self.order, self.j, self.exp / Rat::from_integer(2))
    }

    /// The monomial as a 1-term series.
    pub fn to_series(&self, trunc_q: Rat) -> FracSeries {
        FracSeries::monomial_series(self, trunc_q)
    }

    pub fn to_complex(&self, tau: num_complex::Complex64) -> num_complex::Complex64 {
        use num_complex::Complex64;
        let root = Complex64::from_polar(
            1.0,
            2.0 * std::f64::consts::PI * self.j as f64 / self.order as f64,
        );
        let e = *self.exp.numer() as f64 / *self.exp.denom() as f64;
        let iexp = Complex64::new(0.0, 2.0 * std::f64::consts::PI) * tau * e;
        root * iexp.exp()
    }
}

/// Outcome of an exact series comparison.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub pass: bool,
    /// exclusive q-power bound up to which coefficients were compared
    pub window: Rat,
    pub first_fail: Option<Rat>,
    /// lowest nonzero residual terms (at most five)
    pub residual_sample: Vec<(Rat, CycNum)>,
}

impl IdentityReport {
    pub fn describe(&self) -> String {
        if self.pass {
            format!("exact match below q^({})", self.window)
        } else {
            let mut s = format!(
                "MISMATCH first at q^({}) (window q^({}))",
                self.first_fail.unwrap(),
                self.window
            );
            for (e, c) in &self.residual_sample {
                s.push_str(&format!("\n  residual q^({}): {:?}", e, c));
            }
            s
        }
    }
}

/// Truncated formal series in q^{1/D} over Q(zeta_L).
#[derive(Clone, Debug)]
pub struct FracSeries {
    order: u64,
    den: i64,
    /// scaled truncation: coefficients are exact for all scaled exponents e < trunc
    trunc: i64,
    /// sorted by scaled exponent, no zero coefficients, exponents < trunc
    terms: Vec<(i64, CycNum)>,
}

fn scaled_trunc(trunc_q: Rat, den: i64) -> i64 {
    // smallest T with e < T  <=>  e/den < trunc_q for integers e
    let x = trunc_q * Rat::from_integer(den);
    x.ceil().to_integer()
}

impl FracSeries {
    pub fn zero(order: u64, den: i64, trunc_q: Rat) -> Self {
        assert!(den >= 1);
        FracSeries { order, den, trunc: scaled_trunc(trunc_q, den), terms: Vec::new() }
    }

    pub fn one(trunc_q: Rat) -> Self {
        FracSeries {
            order: 1,
            den: 1,
            trunc: scaled_trunc(trunc_q, 1),
            terms: vec![(0, CycNum::one(1))],
        }
    }

    pub fn constant(c: CycNum, trunc_q: Rat) -> Self {
        let mut s = FracSeries {
            order: c.order(),
            den: 1,
            trunc: scaled_trunc(trunc_q, 1),
            terms: Vec::new(),
        };
        if !c.is_zero() {
            s.terms.push((0, c));
        }
        s
    }

    pub fn monomial_series(m: &Monomial, trunc_q: Rat) -> Self {
        let den = *m.exponent().denom();
        let mut s = FracSeries {
            order: m.order(),
            den,
            trunc: scaled_trunc(trunc_q, den),
            terms: Vec::new(),
        };
        let e = *m.exponent().numer();
        if e < s.trunc {
            s.terms.push((e, m.root_cyc()));
        }
        s
    }

    /// Build from raw scaled terms; sorts, merges and drops zeros.
    pub fn from_terms(
        order: u64,
        den: i64,
        trunc: i64,
        mut terms: Vec<(i64, CycNum)>,
    ) -> Self {
        terms.sort_by_key(|(e, _)| *e);
        let mut merged: Vec<(i64, CycNum)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            if e >= trunc || c.is_zero() {
                continue;
            }
            match merged.last_mut() {
                Some((pe, pc)) if *pe == e => {
                    *pc = pc.add(&c);
                }
                _ => merged.push((e, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        FracSeries { order, den, trunc, terms: merged }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn trunc_scaled(&self) -> i64 {
        self.trunc
    }

    pub fn trunc_q(&self) -> Rat {
        Rat::new(self.trunc, self.den)
    }

    pub fn terms(&self) -> &[(i64, CycNum)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Lowest stored exponent as a q-power, if any term is present.
    pub fn lowest(&self) -> Option<(Rat, &CycNum)> {
        self.terms.first().map(|(e, c)| (Rat::new(*e, self.den), c))
    }

    fn lowest_scaled_or_trunc(&self) -> i64 {
        self.terms.first().map(|(e, _)| *e).unwrap_or(self.trunc)
    }

    /// Bring the series to exponent denominator `den2` (a multiple of den)
    /// and coefficient order `order2` (a multiple of order).
    pub fn raise(&self, den2: i64, order2: u64) -> FracSeries {
        assert!(den2 % self.den == 0 && order2 % self.order == 0);
        let f = den2 / self.den;
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e * f, c.embed(order2).unwrap()))
            .collect();
        FracSeries {
            order: order2,
            den: den2,
            trunc: self.trunc.checked_mul(f).unwrap(),
            terms,
        }
    }

    /// Drop any factors common to the exponent lattice, keeping values equal.
    pub fn normalize_den(&self) -> FracSeries {
        let mut g = self.den;
        for (e, _) in &self.terms {
            g = g.gcd(e);
        }
        g = g.gcd(&self.trunc);
        if g <= 1 {
            return self.clone();
        }
        FracSeries {
            order: self.order,
            den: self.den / g,
            trunc: self.trunc / g,
            terms: self.terms.iter().map(|(e, c)| (e / g, c.clone())).collect(),
        }
    }

    pub fn coerce(a: &FracSeries, b: &FracSeries) -> (FracSeries, FracSeries) {
        let den = num_integer::lcm(a.den, b.den);
        let order = num_integer::lcm(a.order, b.order);
        (a.raise(den, order), b.raise(den, order))
    }

    pub fn add(&self, other: &FracSeries) -> FracSeries {
        self.add_signed(other, false)
    }

    pub fn sub(&self, other: &FracSeries) -> FracSeries {
        self.add_signed(other, true)
    }

    fn add_signed(&self, other: &FracSeries, negate: bool) -> FracSeries {
        let (a, b) = FracSeries::coerce(self, other);
        let trunc = a.trunc.min(b.trunc);
        let mut terms = Vec::with_capacity(a.terms.len() + b.terms.len());
        let mut ia = 0;
        let mut ib = 0;
        while ia < a.terms.len() || ib < b.terms.len() {
            let ea = a.terms.get(ia).map(|(e, _)| *e).unwrap_or(i64::MAX);
            let eb = b.terms.get(ib).map(|(e, _)| *e).unwrap_or(i64::MAX);
            let e = ea.min(eb);
            if e >= trunc {
                break;
            }
            let mut c = CycNum::zero(a.order);
            if ea == e {
                c = c.add(&a.terms[ia].1);
                ia += 1;
            }
            if eb == e {
                let bc = &b.terms[ib].1;
                c = if negate { c.sub(bc) } else { c.add(bc) };
                ib += 1;
            }
            if !c.is_zero() {
                terms.push((e, c));
            }
        }
        FracSeries { order: a.order, den: a.den, trunc, terms }
    }

    pub fn neg(&self) -> FracSeries {
        FracSeries {
            order: self.order,
            den: self.den,
            trunc: self.trunc,
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }

    pub fn scale_cyc(&self, c: &CycNum) -> FracSeries {
        if c.is_zero() {
            return FracSeries {
                order: num_integer::lcm(self.order, c.order()),
                den: self.den,
                trunc: self.trunc,
                terms: Vec::new(),
            };
        }
        let order = num_integer::lcm(self.order, c.order());
        let terms = self.terms.iter().map(|(e, t)| (*e, t.mul(c))).collect();
        FracSeries { order, den: self.den, trunc: self.trunc, terms }
    }

    /// Multiply by a single monomial (exact exponent shift).
    pub fn mul_monomial(&self, m: &Monomial) -> FracSeries {
        let den = num_integer::lcm(self.den, *m.exponent().denom());
        let order = num_integer::lcm(self.order, m.order());
        let a = self.raise(den, order);
        let shift = (m.exponent() * Rat::from_integer(den)).to_integer();
        let root = m.root_cyc();
        let terms = a
            .terms
            .iter()
            .map(|(e, c)| (e + shift, c.mul(&root)))
            .collect();
        FracSeries { order, den, trunc: a.trunc + shift, terms }
    }

    pub fn mul(&self, other: &FracSeries) -> FracSeries {
        let (a, b) = FracSeries::coerce(self, other);
        let lo_a = a.lowest_scaled_or_trunc();
        let lo_b = b.lowest_scaled_or_trunc();
        let trunc = (a.trunc.saturating_add(lo_b)).min(b.trunc.saturating_add(lo_a));
        if a.terms.is_empty() || b.terms.is_empty() {
            return FracSeries { order: a.order, den: a.den, trunc, terms: Vec::new() };
        }
        let lo = lo_a + lo_b;
        let width = (trunc - lo).max(0) as usize;
        let mut acc: Vec<Option<CycNum>> = vec![None; width];
        for (ea, ca) in &a.terms {
            if ea + lo_b >= trunc {
                break;
            }
            for (eb, cb) in &b.terms {
                let e = ea + eb;
                if e >= trunc {
                    break;
                }
                let idx = (e - lo) as usize;
                let prod = ca.mul(cb);
                match &mut acc[idx] {
                    Some(c) => c.add_assign_merge(&prod),
                    slot @ None => *slot = Some(prod),
                }
            }
        }
        let mut terms = Vec::new();
        for (i, c) in acc.into_iter().enumerate() {
            if let Some(c) = c {
                if !c.is_zero() {
                    terms.push((lo + i as i64, c));
                }
            }
        }
        FracSeries { order: a.order, den: a.den, trunc, terms }
    }

    /// Series inverse. The lowest term must be present and invertible.
    pub fn inv(&self) -> Result<FracSeries, QError> {
        let (e0, c0) = match self.terms.first() {
            Some((e, c)) => (*e, c.clone()),
            None => return Err(QError::NonInvertibleSeries),
        };
        let c0_inv = c0.inv().map_err(|_| QError::NonInvertibleSeries)?;
        // f = c0 q^{e0} (1 + h); invert the unit part by the triangular recurrence
        let trunc_unit = self.trunc - e0; // unit part exact below this
        let width = trunc_unit.max(0) as usize;
        if width == 0 {
            return Err(QError::NonInvertibleSeries);
        }
        // h terms, scaled by c0^{-1}, indexed from 1
        let mut h: Vec<(i64, CycNum)> = Vec::with_capacity(self.terms.len() - 1);
        for (e, c) in &self.terms[1..] {
            h.push((e - e0, c.mul(&c0_inv)));
        }
        let mut g: Vec<Option<CycNum>> = vec![None; width];
        g[0] = Some(CycNum::one(self.order));
        // push-style: once g[k] is final, distribute -g[k]*h[j] to k+j
        for k in 0..width {
            let gk = match &g[k] {
                Some(c) if !c.is_zero() => c.clone(),
                _ => continue,
            };
            for (j, hc) in &h {
                let idx = k as i64 + j;
                if idx >= width as i64 {
                    break;
                }
                let prod = gk.mul(hc).neg();
                match &mut g[idx as usize] {
                    Some(c) => *c = c.add(&prod),
                    slot @ None => *slot = Some(prod),
                }
            }
        }
        let mut terms = Vec::new();
        for (i, c) in g.into_iter().enumerate() {
            if let Some(c) = c {
                if !c.is_zero() {
                    terms.push((i as i64 - e0, c.mul(&c0_inv)));
                }
            }
        }
        // result exact below T - 2 e0
        Ok(FracSeries {
            order: self.order,
            den: self.den,
            trunc: self.trunc - 2 * e0,
            terms,
        })
    }

    pub fn pow(&self, k: i64) -> Result<FracSeries, QError> {
        if k == 0 {
            return Ok(FracSeries::one(self.trunc_q()));
        }
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc: Option<FracSeries> = None;
        let mut power = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => power.clone(),
                    Some(a) => a.mul(&power),
                });
            }
            e >>= 1;
            if e > 0 {
                power = power.mul(&power);
            }
        }
        Ok(acc.unwrap())
    }

    /// q -> q^m for positive rational m.
    pub fn substitute(&self, m: Rat) -> FracSeries {
        assert!(m.is_positive(), "substitution exponent must be positive");
        let den = self.den.checked_mul(*m.denom()).unwrap();
        let num = *m.numer();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.checked_mul(num).unwrap(), c.clone()))
            .collect();
        let out = FracSeries {
            order: self.order,
            den,
            trunc: self.trunc.checked_mul(num).unwrap(),
            terms,
        };
        out.normalize_den()
    }

    /// Exact coefficient of q^e; zero when absent, error beyond truncation.
    pub fn coeff(&self, e: Rat) -> Result<CycNum, QError> {
        if e >= self.trunc_q() {
            return Err(QError::OutOfTruncation {
                wanted: format!("{}", e),
                trunc: format!("{}", self.trunc_q()),
            });
        }
        let scaled = e * Rat::from_integer(self.den);
        if !scaled.is_integer() {
            return Ok(CycNum::zero(self.order));
        }
        let es = scaled.to_integer();
        match self.terms.binary_search_by_key(&es, |(t, _)| *t) {
            Ok(i) => Ok(self.terms[i].1.clone()),
            Err(_) => Ok(CycNum::zero(self.order)),
        }
    }

    /// Integer-exponent coefficient helper.
    pub fn coeff_int(&self, e: i64) -> Result<CycNum, QError> {
        self.coeff(Rat::from_integer(e))
    }

    /// Extract the arithmetic progression e = r (mod c) and divide exponents:
    /// returns sum over e of coeff(e) q^{(e-r)/c}. Requires D = 1.
    pub fn dissect(&self, c: i64, r: i64) -> Result<FracSeries, QError> {
        if self.den != 1 {
            return Err(QError::FractionalDissect(self.den));
        }
        assert!(c >= 1 && r >= 0 && r < c);
        let trunc = (self.trunc - r).div_euclid(c) + i64::from((self.trunc - r).rem_euclid(c) > 0);
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.rem_euclid(c) == r)
            .map(|(e, co)| ((e - r).div_euclid(c), co.clone()))
            .collect();
        Ok(FracSeries { order: self.order, den: 1, trunc, terms })
    }

    /// Lower the truncation window (never raises it).
    pub fn truncate_q(&self, trunc_q: Rat) -> FracSeries {
        let t = scaled_trunc(trunc_q, self.den).min(self.trunc);
        FracSeries {
            order: self.order,
            den: self.den,
            trunc: t,
            terms: self.terms.iter().take_while(|(e, _)| *e < t).cloned().collect(),
        }
    }

    /// Compare two series on their common window.
    pub fn eq_report(&self, other: &FracSeries) -> IdentityReport {
        let diff = self.sub(other);
        let window = diff.trunc_q();
        if diff.terms.is_empty() {
            IdentityReport { pass: true, window, first_fail: None, residual_sample: Vec::new() }
        } else {
            let first_fail = Some(Rat::new(diff.terms[0].0, diff.den));
            let residual_sample = diff
                .terms
                .iter()
                .take(5)
                .map(|(e, c)| (Rat::new(*e, diff.den), c.clone()))
                .collect();
            IdentityReport { pass: false, window, first_fail, residual_sample }
        }
    }

    /// Evaluate at q = exp(2 pi i tau) numerically.
    pub fn eval_complex(&self, tau: num_complex::Complex64) -> num_complex::Complex64 {
        self.eval_complex_with_condition(tau).0
    }

    /// Evaluate and also report the summation condition number
    /// sum |terms| / |sum|, which bounds the achievable relative accuracy
    /// in double precision.
    pub fn eval_complex_with_condition(
        &self,
        tau: num_complex::Complex64,
    ) -> (num_complex::Complex64, f64) {
        use num_complex::Complex64;
        let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
        let mut out = Complex64::new(0.0, 0.0);
        let mut mag = 0.0f64;
        for (e, c) in &self.terms {
            let qe = (two_pi_i * tau * (*e as f64 / self.den as f64)).exp();
            let term = c.to_complex() * qe;
            out += term;
            mag += term.norm();
        }
        let cond = if out.norm() > 0.0 { mag / out.norm() } else { f64::INFINITY };
        (out, cond)
    }

    /// Canonical text rendering (bit-exact golden-file format).
    ///
    /// Line 1: `L=<order> D=<den> T=<trunc>`; then one line per stored term:
    /// `<e> <c_0>,<c_1>,...` with the dense power-basis rationals as num/den.
    pub fn to_text(&self) -> String {
        let mut out = format!("L={} D={} T={}\n", self.order, self.den, self.trunc);
        for (e, c) in &self.terms {
            let parts: Vec<String> = c
                .coeffs_dense()
                .iter()
                .map(|r| format!("{}/{}", r.numer(), r.denom()))
                .collect();
            out.push_str(&format!("{} {}\n", e, parts.join(",")));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<FracSeries, QError> {
        use num_bigint::BigInt;
        use num_rational::BigRational;
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| QError::Parse("empty input".into()))?;
        let mut order = None;
        let mut den = None;
        let mut trunc = None;
        for tok in header.split_whitespace() {
            let (key, val) = tok
                .split_once('=')
                .ok_or_else(|| QError::Parse(format!("bad header token {tok}")))?;
            match key {
                "L" => order = val.parse::<u64>().ok(),
                "D" => den = val.parse::<i64>().ok(),
                "T" => trunc = val.parse::<i64>().ok(),
                _ => return Err(QError::Parse(format!("unknown header key {key}"))),
            }
        }
        let (order, den, trunc) = match (order, den, trunc) {
            (Some(l), Some(d), Some(t)) => (l, d, t),
            _ => return Err(QError::Parse("missing L/D/T".into())),
        };
        let deg = crate::cyc::phi(order) as usize;
        let mut terms = Vec::new();
        for line in lines {
            let (e_str, rest) = line
                .trim()
                .split_once(' ')
                .ok_or_else(|| QError::Parse(format!("bad term line {line}")))?;
            let e: i64 = e_str
                .parse()
                .map_err(|_| QError::Parse(format!("bad exponent {e_str}")))?;
            let mut c = CycNum::zero(order);
            let entries: Vec<&str> = rest.split(',').collect();
            if entries.len() != deg {
                return Err(QError::Parse(format!(
                    "expected {} coefficients, found {}",
                    deg,
                    entries.len()
                )));
            }
            for (i, part) in entries.iter().enumerate() {
                let r = if let Some((n, d)) = part.split_once('/') {
                    let n: BigInt =
                        n.parse().map_err(|_| QError::Parse(format!("bad rational {part}")))?;
                    let d: BigInt =
                        d.parse().map_err(|_| QError::Parse(format!("bad rational {part}")))?;
                    BigRational::new(n, d)
                } else {
                    let n: BigInt = part
                        .parse()
                        .map_err(|_| QError::Parse(format!("bad rational {part}")))?;
                    BigRational::from_integer(n)
                };
                if !r.is_zero() {
                    let basis = if i == 0 {
                        CycNum::one(order)
                    } else {
                        CycNum::root(order, i as i64)
                    };
                    c = c.add(&basis.scale(&r));
                }
            }
            terms.push((e, c));
        }
        Ok(FracSeries::from_terms(order, den, trunc, terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn geometric(trunc_q: Rat) -> FracSeries {
        // sum_{n>=0} q^n
        let t = scaled_trunc(trunc_q, 1);
        FracSeries::from_terms(
            1,
            1,
            t,
            (0..t.max(0)).map(|e| (e, CycNum::one(1))).collect(),
        )
    }

    #[test]
    fn one_minus_q_times_geometric_is_one() {
        let one_minus_q = FracSeries::one(rat(30, 1))
            .sub(&Monomial::q_pow(Rat::one()).to_series(rat(30, 1)));
        let prod = one_minus_q.mul(&geometric(rat(30, 1)));
        let report = prod.eq_report(&FracSeries::one(rat(30, 1)));
        assert!(report.pass, "{}", report.describe());
    }

    #[test]
    fn add_zero_identity() {
        let f = geometric(rat(10, 1));
        let z = FracSeries::zero(1, 1, rat(10, 1));
        assert!(f.add(&z).eq_report(&f).pass);
    }

    #[test]
    fn fractional_exponent_product() {
        let a = Monomial::q_pow(rat(1, 2)).to_series(rat(5, 1));
        let b = Monomial::q_pow(rat(1, 3)).to_series(rat(5, 1));
        let p = a.mul(&b).normalize_den();
        assert_eq!(p.den(), 6);
        assert_eq!(p.lowest().unwrap().0, rat(5, 6));
    }

    #[test]
    fn inverse_of_inverse_round_trip() {
        // f = 1 - q - q^2 with some cyclotomic twist
        let mut f = FracSeries::one(rat(25, 1));
        f = f.sub(&Monomial::new(3, 1, Rat::one()).to_series(rat(25, 1)));
        f = f.sub(&Monomial::q_pow(rat(2, 1)).to_series(rat(25, 1)));
        let ff = f.inv().unwrap().inv().unwrap();
        let report = ff.eq_report(&f);
        assert!(report.pass, "{}", report.describe());
    }

    #[test]
    fn inv_of_one_is_one() {
        let f = FracSeries::one(rat(12, 1));
        assert!(f.inv().unwrap().eq_report(&f).pass);
    }

    #[test]
    fn substitute_scales_exponents() {
        let f = Monomial::q_pow(Rat::one())
            .to_series(rat(10, 1))
            .add(&Monomial::q_pow(rat(2, 1)).to_series(rat(10, 1)));
        let g = f.substitute(rat(2, 1));
        assert_eq!(g.lowest().unwrap().0, rat(2, 1));
        assert!(!g.coeff(rat(4, 1)).unwrap().is_zero());
        let h = Monomial::q_pow(rat(1, 2)).to_series(rat(4, 1)).substitute(rat(1, 2));
        assert_eq!(h.lowest().unwrap().0, rat(1, 4));
        assert_eq!(h.den(), 4);
        assert!(f.substitute(Rat::one()).eq_report(&f).pass);
    }

    #[test]
    fn coeff_out_of_truncation_errors() {
        let f = FracSeries::one(rat(5, 1));
        assert!(f.coeff(rat(5, 1)).is_err());
        assert!(f.coeff(rat(4, 1)).unwrap().is_zero());
        assert!(f.coeff(rat(1, 3)).unwrap().is_zero());
    }

    #[test]
    fn dissect_reassembles() {
        // f = 1 + q + 2q^2 + 3q^3
        let mut terms = vec![
            (0, CycNum::from_integer(1)),
            (1, CycNum::from_integer(1)),
            (2, CycNum::from_integer(2)),
            (3, CycNum::from_integer(3)),
        ];
        terms.push((4, CycNum::zero(1)));
        let f = FracSeries::from_terms(1, 1, 12, terms);
        let d0 = f.dissect(3, 0).unwrap();
        assert_eq!(d0.coeff_int(0).unwrap().as_rational().unwrap(), num_rational::BigRational::one());
        assert_eq!(
            d0.coeff_int(1).unwrap(),
            CycNum::from_integer(3)
        );
        // reassembly over residues
        let mut back = FracSeries::zero(1, 1, rat(12, 1));
        for r in 0..3 {
            let part = f.dissect(3, r).unwrap().substitute(rat(3, 1));
            back = back.add(&part.mul_monomial(&Monomial::q_pow(Rat::from_integer(r))));
        }
        let report = back.eq_report(&f.truncate_q(back.trunc_q()));
        assert!(report.pass, "{}", report.describe());
        assert!(f.dissect(1, 0).unwrap().eq_report(&f).pass);
    }

    #[test]
    fn text_round_trip() {
        let mut f = FracSeries::one(rat(8, 1));
        f = f.add(&Monomial::new(3, 2, rat(5, 2)).to_series(rat(8, 1)));
        f = f.scale_cyc(&CycNum::from_ratio(7, 3));
        let text = f.to_text();
        let g = FracSeries::from_text(&text).unwrap();
        assert!(g.eq_report(&f).pass);
        assert_eq!(g.to_text(), text);
    }

    #[test]
    fn truncation_shrinks_through_inverse() {
        // f = q^2(1 + q): inverse valid window drops by 2*2
        let f = Monomial::q_pow(rat(2, 1))
            .to_series(rat(10, 1))
            .add(&Monomial::q_pow(rat(3, 1)).to_series(rat(10, 1)));
        let g = f.inv().unwrap();
        assert_eq!(g.trunc_q(), rat(6, 1));
        let prod = f.mul(&g);
        assert!(prod.eq_report(&FracSeries::one(prod.trunc_q())).pass);
    }
}
