//! Exact arithmetic in cyclotomic fields Q(zeta_L).
//!
//! Elements are stored in the power basis 1, zeta, ..., zeta^{phi(L)-1}
//! reduced modulo the L-th cyclotomic polynomial Phi_L, so equality is a
//! plain comparison of coefficient vectors. Coefficients are exact
//! rationals (machine words with arbitrary-precision fallback); there is no
//! floating point anywhere in this module.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::QError;
use crate::qq::QQ;

/// Euler's totient.
pub fn phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Squarefree kernel of n.
fn radical(n: u64) -> u64 {
    let mut r = 1;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            r *= p;
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        r *= m;
    }
    r
}

/// Dense polynomial over the integers, lowest degree first.
type ZPoly = Vec<BigInt>;

fn zpoly_trim(p: &mut ZPoly) {
    while p.len() > 1 && p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

/// Exact division of integer polynomials; panics if not divisible.
fn zpoly_div_exact(num: &ZPoly, den: &ZPoly) -> ZPoly {
    let mut rem = num.clone();
    zpoly_trim(&mut rem);
    let mut den = den.clone();
    zpoly_trim(&mut den);
    let dd = den.len() - 1;
    let lead = den[dd].clone();
    assert!(!lead.is_zero());
    if rem.len() < den.len() {
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + dd] / &lead;
        if !c.is_zero() {
            for (i, dc) in den.iter().enumerate() {
                let t = dc * &c;
                rem[k + i] -= t;
            }
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact polynomial division");
    zpoly_trim(&mut quot);
    quot
}

/// The n-th cyclotomic polynomial for squarefree n, by the recursive
/// division (x^n - 1) / prod_{d | n, d < n} Phi_d.
fn cyclotomic_squarefree(n: u64, cache: &mut HashMap<u64, ZPoly>) -> ZPoly {
    if let Some(p) = cache.get(&n) {
        return p.clone();
    }
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    let mut result = num;
    for d in 1..n {
        if n % d == 0 {
            let pd = cyclotomic_squarefree(d, cache);
            result = zpoly_div_exact(&result, &pd);
        }
    }
    cache.insert(n, result.clone());
    result
}

/// Phi_n for arbitrary n via Phi_n(x) = Phi_rad(n)(x^{n/rad(n)}).
fn cyclotomic_poly(n: u64) -> ZPoly {
    let r = radical(n);
    let mut cache = HashMap::new();
    let base = cyclotomic_squarefree(r, &mut cache);
    let stride = (n / r) as usize;
    let mut out = vec![BigInt::zero(); (base.len() - 1) * stride + 1];
    for (i, c) in base.into_iter().enumerate() {
        out[i * stride] = c;
    }
    out
}

/// Sparse integer row: the reduction of a single power of zeta into the
/// power basis. Cyclotomic coefficients at the orders in play are tiny.
type Row = Vec<(u32, i64)>;

struct OrderData {
    phi: u32,
    /// Reduction of zeta^k for every k in 0..L.
    power_rows: Vec<Arc<Row>>,
    /// Phi_L, dense, monic, for inversion via the extended Euclidean
    /// algorithm.
    modulus: ZPoly,
}

impl OrderData {
    fn new(order: u64) -> Self {
        let modulus = cyclotomic_poly(order);
        let deg = modulus.len() - 1;
        let to_small = |c: &BigInt| -> i64 {
            c.to_i64().expect("cyclotomic reduction coefficient exceeds i64")
        };
        // zeta^deg = -(lower part of Phi)
        let top_row: Row = modulus[..deg]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as u32, -to_small(c)))
            .collect();
        let mut power_rows: Vec<Arc<Row>> = Vec::with_capacity(order as usize);
        for k in 0..order as usize {
            if k < deg {
                power_rows.push(Arc::new(vec![(k as u32, 1)]));
            } else if k == deg {
                power_rows.push(Arc::new(top_row.clone()));
            } else {
                // multiply the previous row by zeta and fold the top power
                let prev = power_rows[k - 1].clone();
                let mut acc: Vec<i128> = vec![0; deg];
                for (i, c) in prev.iter() {
                    let j = *i as usize + 1;
                    if j < deg {
                        acc[j] += *c as i128;
                    } else {
                        for (ti, tc) in &top_row {
                            acc[*ti as usize] += *tc as i128 * *c as i128;
                        }
                    }
                }
                let row: Row = acc
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| *c != 0)
                    .map(|(i, c)| (i as u32, i64::try_from(c).expect("row overflow")))
                    .collect();
                power_rows.push(Arc::new(row));
            }
        }
        OrderData { phi: deg as u32, power_rows, modulus }
    }
}

static ORDER_CACHE: Lazy<Mutex<HashMap<u64, Arc<OrderData>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn order_data(order: u64) -> Arc<OrderData> {
    let mut cache = ORDER_CACHE.lock().unwrap();
    cache
        .entry(order)
        .or_insert_with(|| Arc::new(OrderData::new(order)))
        .clone()
}

/// An element of Q(zeta_L) in the canonical power basis modulo Phi_L.
///
/// `entries` holds the nonzero coordinates `(index, value)` of the length
/// phi(L) coefficient vector, sorted by index. Two elements of the same
/// field are equal exactly when their entry lists are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    order: u64,
    entries: Vec<(u32, QQ)>,
}

impl std::fmt::Debug for CycNum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in &self.entries {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *i == 0 {
                write!(f, "{}", c.to_big())?;
            } else {
                write!(f, "({})*z{}^{}", c.to_big(), self.order, i)?;
            }
        }
        Ok(())
    }
}

impl CycNum {
    pub fn zero(order: u64) -> Self {
        CycNum { order, entries: Vec::new() }
    }

    pub fn one(order: u64) -> Self {
        CycNum { order, entries: vec![(0, QQ::one())] }
    }

    pub fn from_rational_in(r: BigRational, order: u64) -> Self {
        let q = QQ::from_big(&r);
        if q.is_zero() {
            return Self::zero(order);
        }
        CycNum { order, entries: vec![(0, q)] }
    }

    pub fn from_integer(n: i64) -> Self {
        if n == 0 {
            return Self::zero(1);
        }
        CycNum { order: 1, entries: vec![(0, QQ::from_i64(n))] }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0);
        Self::from_rational_in(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            1,
        )
    }

    /// zeta_L^k, canonically reduced. `cyc_make` of the module contract.
    pub fn root(order: u64, k: i64) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        let data = order_data(order);
        let k = k.rem_euclid(order as i64) as usize;
        let entries = data.power_rows[k]
            .iter()
            .map(|(i, c)| (*i, QQ::from_i64(*c)))
            .collect();
        CycNum { order, entries }
    }

    /// i as an element of Q(zeta_4).
    pub fn i_unit() -> Self {
        Self::root(4, 1)
    }

    /// exp(pi*i*num/den) as an exact root of unity.
    pub fn exp_pi_i(num: i64, den: i64) -> Self {
        assert!(den != 0);
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        Self::root(2 * den as u64, num)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.entries.len() == 1 && self.entries[0].0 == 0 && self.entries[0].1.is_one()
    }

    /// Dense power-basis coefficient vector of length phi(L).
    pub fn coeffs_dense(&self) -> Vec<BigRational> {
        let data = order_data(self.order);
        let mut out = vec![BigRational::zero(); data.phi as usize];
        for (i, c) in &self.entries {
            out[*i as usize] = c.to_big();
        }
        out
    }

    /// The same field element represented in Q(zeta_{order2}); requires
    /// order | order2.
    pub fn embed(&self, order2: u64) -> Result<CycNum, QError> {
        if order2 % self.order != 0 {
            return Err(QError::BadEmbedding { from: self.order, to: order2 });
        }
        if order2 == self.order {
            return Ok(self.clone());
        }
        let stride = (order2 / self.order) as i64;
        let data = order_data(order2);
        let mut acc: HashMap<u32, QQ> = HashMap::new();
        for (i, c) in &self.entries {
            let k = (*i as i64 * stride).rem_euclid(order2 as i64) as usize;
            for (j, b) in data.power_rows[k].iter() {
                let term = c.mul_i64(*b);
                match acc.get_mut(j) {
                    Some(slot) => *slot = slot.add(&term),
                    None => {
                        acc.insert(*j, term);
                    }
                }
            }
        }
        let mut entries: Vec<(u32, QQ)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        entries.sort_by_key(|(i, _)| *i);
        Ok(CycNum { order: order2, entries })
    }

    /// Coerce both operands into Q(zeta_lcm).
    pub fn coerce(a: &CycNum, b: &CycNum) -> (CycNum, CycNum) {
        if a.order == b.order {
            return (a.clone(), b.clone());
        }
        let l = num_integer::lcm(a.order, b.order);
        (a.embed(l).unwrap(), b.embed(l).unwrap())
    }

    pub fn add(&self, other: &CycNum) -> CycNum {
        if self.order == other.order {
            let mut out = self.clone();
            out.add_assign_same_order(other, false);
            return out;
        }
        let (mut a, b) = Self::coerce(self, other);
        a.add_assign_same_order(&b, false);
        a
    }

    pub fn sub(&self, other: &CycNum) -> CycNum {
        if self.order == other.order {
            let mut out = self.clone();
            out.add_assign_same_order(other, true);
            return out;
        }
        let (mut a, b) = Self::coerce(self, other);
        a.add_assign_same_order(&b, true);
        a
    }

    pub(crate) fn add_assign_merge(&mut self, other: &CycNum) {
        debug_assert_eq!(self.order, other.order);
        self.add_assign_same_order(other, false);
    }

    fn add_assign_same_order(&mut self, other: &CycNum, negate: bool) {
        debug_assert_eq!(self.order, other.order);
        if other.entries.is_empty() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut ia = 0;
        let mut ib = 0;
        while ia < self.entries.len() || ib < other.entries.len() {
            let next_a = self.entries.get(ia).map(|(i, _)| *i).unwrap_or(u32::MAX);
            let next_b = other.entries.get(ib).map(|(i, _)| *i).unwrap_or(u32::MAX);
            if next_a < next_b {
                out.push(self.entries[ia].clone());
                ia += 1;
            } else if next_b < next_a {
                let (i, c) = &other.entries[ib];
                out.push((*i, if negate { c.neg() } else { c.clone() }));
                ib += 1;
            } else {
                let (i, ca) = &self.entries[ia];
                let cb = &other.entries[ib].1;
                let c = if negate { ca.sub(cb) } else { ca.add(cb) };
                if !c.is_zero() {
                    out.push((*i, c));
                }
                ia += 1;
                ib += 1;
            }
        }
        self.entries = out;
    }

    pub fn neg(&self) -> CycNum {
        CycNum {
            order: self.order,
            entries: self.entries.iter().map(|(i, c)| (*i, c.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &CycNum) -> CycNum {
        if self.order == other.order {
            return self.mul_same_order(other);
        }
        let (a, b) = Self::coerce(self, other);
        a.mul_same_order(&b)
    }

    fn mul_same_order(&self, other: &CycNum) -> CycNum {
        debug_assert_eq!(self.order, other.order);
        let (a, b) = (self, other);
        if a.entries.is_empty() || b.entries.is_empty() {
            return CycNum::zero(a.order);
        }
        let data = order_data(a.order);
        let deg = data.phi as usize;
        // single-term products dominate the series hot paths
        if a.entries.len() == 1 && b.entries.len() == 1 {
            let (i, ca) = &a.entries[0];
            let (j, cb) = &b.entries[0];
            let k = (*i + *j) as usize;
            let prod = ca.mul(cb);
            if k < deg {
                return CycNum { order: a.order, entries: vec![(k as u32, prod)] };
            }
            let row = &data.power_rows[k % a.order as usize];
            let entries = row
                .iter()
                .map(|(idx, coef)| (*idx, prod.mul_i64(*coef)))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            return CycNum { order: a.order, entries };
        }
        let mut acc: Vec<QQ> = vec![QQ::zero(); 2 * deg];
        for (i, ca) in &a.entries {
            for (j, cb) in &b.entries {
                let k = (*i + *j) as usize;
                let prod = ca.mul(cb);
                acc[k] = acc[k].add(&prod);
            }
        }
        // fold powers >= deg back into the basis; zeta^k = zeta^{k mod L}
        for k in (deg..2 * deg).rev() {
            if acc[k].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut acc[k], QQ::zero());
            let row = data.power_rows[k % a.order as usize].clone();
            for (i, b) in row.iter() {
                let term = c.mul_i64(*b);
                acc[*i as usize] = acc[*i as usize].add(&term);
            }
        }
        let entries = acc
            .into_iter()
            .take(deg)
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as u32, c))
            .collect();
        CycNum { order: a.order, entries }
    }

    pub fn scale(&self, r: &BigRational) -> CycNum {
        let q = QQ::from_big(r);
        self.scale_qq(&q)
    }

    pub fn scale_i64(&self, k: i64) -> CycNum {
        self.scale_qq(&QQ::from_i64(k))
    }

    fn scale_qq(&self, q: &QQ) -> CycNum {
        if q.is_zero() {
            return CycNum::zero(self.order);
        }
        CycNum {
            order: self.order,
            entries: self.entries.iter().map(|(i, c)| (*i, c.mul(q))).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> CycNum {
        let mut base = self.clone();
        let mut out = CycNum::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// Multiplicative inverse; errors on zero. Single-term elements (a
    /// rational multiple of a basis power) invert directly; the general case
    /// runs the extended Euclidean algorithm against Phi_L over Q.
    pub fn inv(&self) -> Result<CycNum, QError> {
        if self.entries.is_empty() {
            return Err(QError::DivisionByZero);
        }
        if self.entries.len() == 1 {
            let (j, c) = &self.entries[0];
            let root_inv = CycNum::root(self.order, -(*j as i64));
            return Ok(root_inv.scale_qq(&c.recip()));
        }
        let data = order_data(self.order);
        let modulus: Vec<BigRational> = data
            .modulus
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let mut a: Vec<BigRational> = {
            let mut v = vec![BigRational::zero(); data.phi as usize];
            for (i, c) in &self.entries {
                v[*i as usize] = c.to_big();
            }
            qpoly_trim(&mut v);
            v
        };
        let mut b = modulus;
        // extended gcd: track s with s * self = gcd (mod Phi)
        let mut sa = vec![BigRational::one()];
        let mut sb = vec![BigRational::zero()];
        while !(b.len() == 1 && b[0].is_zero()) {
            let (q, r) = qpoly_divmod(&a, &b);
            let new_s = qpoly_sub(&sa, &qpoly_mul(&q, &sb));
            a = b;
            b = r;
            sa = sb;
            sb = new_s;
        }
        // a is a nonzero constant (Phi_L is irreducible over Q)
        assert!(a.len() == 1 && !a[0].is_zero(), "element not coprime to the modulus");
        let scale = a[0].recip();
        let mut red = vec![BigRational::zero(); data.phi as usize];
        for (k, c) in sa.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < data.phi as usize {
                red[k] += c;
            } else {
                let row = data.power_rows[(k as u64 % self.order) as usize].clone();
                for (i, bc) in row.iter() {
                    red[*i as usize] += c * BigRational::from_integer(BigInt::from(*bc));
                }
            }
        }
        let entries = red
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as u32, QQ::from_big(&(c * &scale))))
            .collect();
        Ok(CycNum { order: self.order, entries })
    }

    /// Galois conjugation zeta -> zeta^{-1} (complex conjugation).
    pub fn conj(&self) -> CycNum {
        let data = order_data(self.order);
        let mut acc: HashMap<u32, QQ> = HashMap::new();
        for (i, c) in &self.entries {
            let k = ((self.order as i64 - *i as i64) % self.order as i64) as usize;
            for (j, b) in data.power_rows[k].iter() {
                let term = c.mul_i64(*b);
                match acc.get_mut(j) {
                    Some(slot) => *slot = slot.add(&term),
                    None => {
                        acc.insert(*j, term);
                    }
                }
            }
        }
        let mut entries: Vec<(u32, QQ)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        entries.sort_by_key(|(i, _)| *i);
        CycNum { order: self.order, entries }
    }

    /// Some(r) when the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.entries.len() {
            0 => Some(BigRational::zero()),
            1 if self.entries[0].0 == 0 => Some(self.entries[0].1.to_big()),
            _ => None,
        }
    }

    /// Exact equality across different ambient fields.
    pub fn eq_value(&self, other: &CycNum) -> bool {
        if self.order == other.order {
            return self.entries == other.entries;
        }
        let (a, b) = Self::coerce(self, other);
        a.entries == b.entries
    }

    /// Numeric embedding zeta_L -> exp(2*pi*i/L).
    pub fn to_complex(&self) -> num_complex::Complex64 {
        use num_complex::Complex64;
        let mut out = Complex64::new(0.0, 0.0);
        for (i, c) in &self.entries {
            let angle = 2.0 * std::f64::consts::PI * (*i as f64) / (self.order as f64);
            out += Complex64::from_polar(c.to_f64(), angle);
        }
        out
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // fall back to scaled division for very large entries
    let digits = 30u32;
    let scale = BigInt::from(10u64).pow(digits);
    let scaled = (r * BigRational::from_integer(scale.clone())).to_integer();
    scaled.to_string().parse::<f64>().unwrap_or(f64::NAN) / 1e30
}

type QPoly = Vec<BigRational>;

fn qpoly_trim(p: &mut QPoly) {
    while p.len() > 1 && p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

fn qpoly_sub(a: &QPoly, b: &QPoly) -> QPoly {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    qpoly_trim(&mut out);
    out
}

fn qpoly_mul(a: &QPoly, b: &QPoly) -> QPoly {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if !cb.is_zero() {
                out[i + j] += ca * cb;
            }
        }
    }
    qpoly_trim(&mut out);
    out
}

fn qpoly_divmod(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let mut rem = a.clone();
    qpoly_trim(&mut rem);
    let mut bb = b.clone();
    qpoly_trim(&mut bb);
    let db = bb.len() - 1;
    let lead = bb[db].clone();
    assert!(!lead.is_zero());
    if rem.len() < bb.len() {
        return (vec![BigRational::zero()], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] / &lead;
        if !c.is_zero() {
            for (i, bc) in bb.iter().enumerate() {
                let t = bc * &c;
                rem[k + i] -= t;
            }
        }
        quot[k] = c.clone();
    }
    qpoly_trim(&mut rem);
    qpoly_trim(&mut quot);
    (quot, rem)
}
