//! Invariant orders of the building blocks at cusps: exact values for the
//! eta, generalized-eta and Klein blocks, certified lower bounds for the
//! holomorphic parts of the completed mu-type blocks.

use num_integer::Integer;

use crate::error::QError;
use crate::fps::{rat, Rat};

use super::Cusp;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    Exact,
    LowerBound,
}

/// An invariant order at a cusp, either exact or a certified lower bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrderBound {
    pub value: Rat,
    pub kind: BoundKind,
}

impl OrderBound {
    fn exact(value: Rat) -> Self {
        OrderBound { value, kind: BoundKind::Exact }
    }

    fn lower(value: Rat) -> Self {
        OrderBound { value, kind: BoundKind::LowerBound }
    }

    pub fn add(&self, o: &OrderBound) -> OrderBound {
        OrderBound {
            value: self.value + o.value,
            kind: if self.kind == BoundKind::Exact && o.kind == BoundKind::Exact {
                BoundKind::Exact
            } else {
                BoundKind::LowerBound
            },
        }
    }

    pub fn scale(&self, k: i64) -> OrderBound {
        OrderBound { value: self.value * Rat::from_integer(k), kind: self.kind }
    }
}

/// A building block whose invariant orders at cusps are known.
#[derive(Clone, Debug, PartialEq)]
pub enum Block {
    /// eta(m tau)
    Eta { m: i64 },
    /// eta(2 tau) / eta(tau)^2
    EtaQuot2,
    /// f_{N, rho}(tau)
    GenEta { n: i64, rho: i64 },
    /// Klein form at scale m tau
    Klein { a1: Rat, a2: Rat, m: i64 },
    /// P_{d,k}(a, b, c; tau), d odd
    P { d: i64, k: i64, a: i64, b: i64, c: i64 },
    /// M~_{d,k}(a, b, c; 2 d^2 tau) for odd d, or at d^2 tau / 2 for even d
    MTilde { d: i64, k: i64, a: i64, b: i64, c: i64 },
    /// S~(r, c; m c^2 tau), m even
    STilde { r: i64, c: i64, m: i64 },
}

fn frac(x: Rat) -> Rat {
    x - x.floor()
}

/// nu-tilde: the lower-bound exponent of the holomorphic part of
/// q^alpha mu~(u1 tau + u2, v1 tau + v2; tau), as a function of (u1, v1).
pub fn nu_tilde(u: Rat, v: Rat) -> Rat {
    let fu = frac(u);
    let fv = frac(v);
    let shift = u.floor() - v.floor();
    let nu = |x: Rat, y: Rat| -> Rat {
        if x + y <= Rat::from_integer(1) {
            (x + y) / rat(2, 1) - rat(1, 8)
        } else {
            rat(7, 8) - (x + y) / rat(2, 1)
        }
    };
    let diff = fu - fv;
    let k = if diff == rat(1, 2) || diff == rat(-1, 2) {
        nu(fu, fv).min(rat(1, 8))
    } else {
        nu(fu, fv)
    };
    shift * shift / rat(2, 1) + shift * (fu - fv) + k
}

/// The invariant order of a block at a cusp alpha/gamma.
pub fn ord_at_cusp(block: &Block, cusp: &Cusp) -> Result<OrderBound, QError> {
    let alpha = cusp.alpha;
    let gamma = cusp.gamma;
    match block {
        Block::Eta { m } => {
            let g = m.gcd(&gamma);
            Ok(OrderBound::exact(rat(g * g, 24 * m)))
        }
        Block::EtaQuot2 => {
            let g2 = 2i64.gcd(&gamma);
            Ok(OrderBound::exact(rat(-1, 12) + rat(g2 * g2, 48)))
        }
        Block::GenEta { n, rho } => {
            let r = rho.rem_euclid(*n);
            if r == 0 {
                return Err(QError::DegenerateEta { n: *n as u64, rho: *rho });
            }
            let g = n.gcd(&gamma);
            let x = frac(rat(alpha * r, g)) - rat(1, 2);
            Ok(OrderBound::exact(rat(g * g, 2 * n) * x * x))
        }
        Block::Klein { a1, a2, m } => {
            let g = m.gcd(&gamma);
            let mm = Rat::from_integer(m / g * alpha);
            let u = Rat::from_integer(gamma / g);
            let x = frac(*a1 * mm + *a2 * u);
            Ok(OrderBound::exact(rat(g, 2 * m) * Rat::from_integer(g) * (x * x - x)))
        }
        Block::P { d, k, a, b, c } => {
            let g = (2 * d * d).gcd(&gamma);
            let m = 2 * d * d / g * alpha;
            let u = gamma / g;
            let g2 = 2i64.gcd(&gamma);
            let base = rat(-1, 12) + rat(g2 * g2, 48);
            let cd2 = c * d * d;
            let sq = |x: Rat| -> Rat { x * x - x };
            let scale = rat(g * g, 4 * d * d);
            let val = if k.rem_euclid(*d) == 0 {
                base - scale * sq(frac(rat(b * m, cd2) + rat(2 * a * u, *c)))
            } else {
                base + scale
                    * (sq(frac(rat(4 * d * k * alpha, g)))
                        - sq(frac(rat(2 * d * k * alpha, g)))
                        + sq(frac(rat(-b * m, cd2) - rat(2 * a * u, *c)))
                        - sq(frac(rat(b * m, cd2) + rat(k * m, *d) + rat(2 * a * u, *c)))
                        - sq(frac(rat(-b * m, cd2) + rat(k * m, *d) - rat(2 * a * u, *c))))
            };
            Ok(OrderBound::exact(val))
        }
        Block::MTilde { d, k, a, b, c } => {
            let cd2 = c * d * d;
            if d % 2 == 1 {
                let g = (2 * d * d).gcd(&gamma);
                let m = 2 * d * d / g * alpha;
                let u = gamma / g;
                let quad = rat(4 * a * d * d * u + 2 * b * m - cd2 * m, 1);
                let peak = -quad * quad / rat(8 * d * d * d * d * c * c, 1);
                let nu = nu_tilde(
                    rat(2 * a * d * d * u + b * m, cd2) + rat(k * m, *d),
                    rat(m, 2) + rat(k * m, *d),
                );
                Ok(OrderBound::lower(rat(g * g, 2 * d * d) * (peak + nu)))
            } else {
                let g = (d * d * alpha / 2).gcd(&gamma);
                let m = d * d * alpha / (2 * g);
                let u = gamma / g;
                let (quad, nu) = if d % 4 == 2 {
                    let quad = rat(2 * d * d * (a - c) * u + (4 * b - cd2) * m, 1);
                    let nu = nu_tilde(
                        rat(a * u, *c) + rat(2 * b * m, cd2) + rat(2 * k * m, *d),
                        Rat::from_integer(u) + rat(m, 2) + rat(2 * k * m, *d),
                    );
                    (quad, nu)
                } else {
                    let quad = rat(d * d * (2 * a - c) * u + (4 * b - cd2) * m, 1);
                    let nu = nu_tilde(
                        rat(a * u, *c) + rat(2 * b * m, cd2) + rat(2 * k * m, *d),
                        rat(u, 2) + rat(m, 2) + rat(2 * k * m, *d),
                    );
                    (quad, nu)
                };
                let peak = -quad * quad / rat(8 * c * c * d * d * d * d, 1);
                Ok(OrderBound::lower(rat(2 * g * g, d * d) * (peak + nu)))
            }
        }
        Block::STilde { r, c, m } => {
            if m % 2 != 0 {
                return Err(QError::BadDescriptor("S~ needs even scale m".into()));
            }
            let mc2 = m * c * c;
            let g = mc2.gcd(&gamma);
            let l = mc2 / g * alpha;
            let u = gamma / g;
            let v = if c % 2 == 1 {
                if r.rem_euclid(*c) == 0 {
                    return Err(QError::DegenerateS { r: *r, c: *c as u64 });
                }
                let peak = -rat(l * l * (c - 2 * r) * (c - 2 * r), 8 * c * c);
                peak + nu_tilde(rat(r * l, *c), rat(l, 2))
            } else {
                let peak = -rat(l * l * (c - 2 * r) * (c - 2 * r), 8 * c * c)
                    - rat(l * u * (2 * r - c), 4 * c)
                    - rat(u * u, 8);
                peak + nu_tilde(rat(r * l, *c) + rat(u, 2), rat(l, 2))
            };
            Ok(OrderBound::lower(rat(g * g, mc2) * v))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::blocks::{eta_series, gen_eta_f, klein_form};
    use crate::fps::Monomial;

    #[test]
    fn nu_tilde_reference_values() {
        assert_eq!(nu_tilde(Rat::zero(), Rat::zero()), rat(-1, 8));
        assert_eq!(nu_tilde(rat(1, 2), Rat::zero()), rat(1, 8));
        assert_eq!(nu_tilde(rat(1, 4), rat(1, 4)), rat(1, 8));
        // beyond the u+v <= 1 branch
        assert_eq!(nu_tilde(rat(3, 4), rat(3, 4)), rat(1, 8));
    }

    #[test]
    fn exact_orders_match_expansions_at_infinity() {
        let inf = Cusp::infinity();
        for m in [1i64, 2, 18] {
            let o = ord_at_cusp(&Block::Eta { m }, &inf).unwrap();
            let f = eta_series(rat(m, 1), rat(6, 1));
            assert_eq!(o.value, f.lowest().unwrap().0, "eta({m} tau)");
        }
        for (n, rho) in [(2i64, 1i64), (18, 9), (18, 15), (162, 27), (162, 45)] {
            let o = ord_at_cusp(&Block::GenEta { n, rho }, &inf).unwrap();
            let f = gen_eta_f(n as u64, rho, rat(1, 1), rat(20, 1)).unwrap();
            assert_eq!(o.value, f.lowest().unwrap().0, "f_{{{n},{rho}}}");
        }
        for (a1, a2, m) in [
            (rat(1, 5), rat(1, 3), 2i64),
            (rat(0, 1), rat(1, 3), 18),
            (rat(-1, 27), rat(-2, 3), 18),
        ] {
            let o = ord_at_cusp(&Block::Klein { a1, a2, m }, &inf).unwrap();
            let f = klein_form(a1, a2, rat(m, 1), rat(9, 1)).unwrap();
            assert_eq!(o.value, f.lowest().unwrap().0, "klein({a1},{a2};{m})");
        }
    }

    #[test]
    fn gen_eta_f21_order_zero_at_infinity() {
        let o = ord_at_cusp(&Block::GenEta { n: 2, rho: 1 }, &Cusp::infinity()).unwrap();
        assert_eq!(o.value, Rat::zero());
        assert_eq!(o.kind, BoundKind::Exact);
    }

    #[test]
    fn mtilde_bound_below_expansion_at_infinity() {
        use crate::rank::{mu_assembly, p_dk_series, RankSpec};
        // M~-part of the assembly has lowest exponent >= the stated bound;
        // check the bound against the mu-series expansion directly.
        use crate::blocks::{mu_series, vartheta_series};
        use crate::rank::mu_arguments as mu_args;
        let inf = Cusp::infinity();
        for (d, k, a, b, c) in [
            (1i64, 0i64, 1i64, 0i64, 3i64),
            (3, 1, 1, 0, 3),
            (3, 2, 1, 0, 3),
            (2, 0, 1, 0, 3),
            (4, 1, 1, 1, 3),
        ] {
            let bound = ord_at_cusp(&Block::MTilde { d, k, a, b, c }, &inf).unwrap();
            assert_eq!(bound.kind, BoundKind::LowerBound);
            let spec = RankSpec::new(d as u64, a, b, c as u64, 14);
            let (x_half, y, m) = mu_args(&spec, k);
            let mu = mu_series(&x_half, &y, m, rat(14, 1)).unwrap();
            let beta = rat(b * b, c * c * d * d);
            let pref = if d % 2 == 1 {
                rat(b, c) - rat(d * d, 4) - beta
            } else {
                rat(b, 2 * c) - rat(d * d, 16) - beta
            };
            let lowest = mu.lowest().unwrap().0 + pref;
            assert!(
                bound.value <= lowest,
                "(d,k)=({d},{k}): bound {} vs lowest {}",
                bound.value,
                lowest
            );
            let _ = (mu_assembly, p_dk_series, vartheta_series);
        }
    }

    #[test]
    fn p_order_matches_expansion_at_infinity() {
        use crate::rank::p_dk_series;
        let inf = Cusp::infinity();
        for (d, k, a, b, c) in [(3i64, 0i64, 1i64, 0i64, 3i64), (3, 1, 1, 0, 3), (5, 2, 2, 1, 5)] {
            let o = ord_at_cusp(&Block::P { d, k, a, b, c }, &inf).unwrap();
            let p = p_dk_series(d as u64, k, a, b, c as u64, rat(40, 1)).unwrap();
            assert_eq!(o.value, p.lowest().unwrap().0, "(d,k)=({d},{k})");
            assert_eq!(o.kind, BoundKind::Exact);
        }
    }

    #[test]
    fn stilde_bound_below_s_series_at_infinity() {
        use crate::blocks::s_series;
        let inf = Cusp::infinity();
        for (r, c, m) in [(1i64, 3i64, 18i64), (2, 3, 18), (1, 4, 2), (3, 4, 2)] {
            let bound = ord_at_cusp(&Block::STilde { r, c, m }, &inf).unwrap();
            let s = s_series(r, c as u64, rat(m * c * c, 1), rat(80, 1)).unwrap();
            assert!(
                bound.value <= s.lowest().unwrap().0,
                "(r,c,m)=({r},{c},{m}): {} vs {}",
                bound.value,
                s.lowest().unwrap().0
            );
        }
    }
}
