//! The valence-formula budget: per-cusp lower bounds on the order of an
//! identity's left-minus-right side, taking the minimum over the individual
//! summands, and the implied number of initial coefficients that must
//! vanish at infinity for the identity to hold.

use num_traits::Zero;

use crate::error::QError;
use crate::fps::{rat, Rat};

use super::orders::{ord_at_cusp, Block, BoundKind, OrderBound};
use super::{cusp_table, CongGroup, Cusp};

/// A product of blocks with integer exponents.
pub type Summand = Vec<(Block, i64)>;

fn summand_order(summand: &Summand, cusp: &Cusp) -> Result<OrderBound, QError> {
    let mut total = OrderBound { value: Rat::zero(), kind: BoundKind::Exact };
    for (block, e) in summand {
        let o = ord_at_cusp(block, cusp)?;
        if o.kind == BoundKind::LowerBound && *e < 0 {
            return Err(QError::UnsupportedBlock(
                "cannot invert a lower-bound block".into(),
            ));
        }
        total = total.add(&o.scale(*e));
    }
    Ok(total)
}

#[derive(Clone, Debug)]
pub struct BudgetRow {
    pub cusp: Cusp,
    pub width: i64,
    pub min_order: Rat,
    pub weighted: Rat,
}

#[derive(Clone, Debug)]
pub struct BudgetReport {
    pub rows: Vec<BudgetRow>,
    pub total: Rat,
    pub required_check_order: i64,
    pub equals_paper_value: bool,
}

impl BudgetReport {
    pub fn describe(&self) -> String {
        let mut s = String::new();
        for row in &self.rows {
            s.push_str(&format!(
                "{{cusp: \"{}\", width: {}, min_order: {}, weighted: {}}}\n",
                row.cusp.label(),
                row.width,
                row.min_order,
                row.weighted
            ));
        }
        s.push_str(&format!("total: {}\n", self.total));
        s.push_str(&format!("required check order: {}\n", self.required_check_order));
        s.push_str(&format!(
            "equals paper budget -119: {}\n",
            if self.equals_paper_value { "yes" } else { "no" }
        ));
        s
    }
}

/// Evaluate the budget of an identity given its summand list over a set of
/// cusp representatives with widths.
pub fn valence_budget(
    summands: &[Summand],
    _group: &CongGroup,
    cusps: &[(Cusp, i64)],
) -> Result<BudgetReport, QError> {
    let mut rows = Vec::new();
    let mut total = Rat::zero();
    for (cusp, width) in cusps {
        if cusp.is_infinity() {
            continue;
        }
        let mut min: Option<Rat> = None;
        for s in summands {
            let o = summand_order(s, cusp)?;
            min = Some(match min {
                None => o.value,
                Some(m) => m.min(o.value),
            });
        }
        let min = min.ok_or_else(|| QError::UnsupportedBlock("no summands".into()))?;
        let weighted = min * Rat::from_integer(*width);
        total += weighted;
        rows.push(BudgetRow { cusp: *cusp, width: *width, min_order: min, weighted });
    }
    let required = (-total).ceil().to_integer() + 1;
    Ok(BudgetReport {
        rows,
        total,
        required_check_order: required,
        equals_paper_value: total == rat(-119, 1),
    })
}

/// Summands of the level-162 identity behind the 3-dissection, all divided by
/// the common weight-1/2 quotient W so each summand is weight 0.
pub fn thm13_summands() -> Vec<Summand> {
    // W = eta(18 tau)^3 f_{162;27,36,63,81} / (f_{18;3,3,6,9} f_{162;9,72})
    let w_inverse: Summand = vec![
        (Block::Eta { m: 18 }, -3),
        (Block::GenEta { n: 162, rho: 27 }, -1),
        (Block::GenEta { n: 162, rho: 36 }, -1),
        (Block::GenEta { n: 162, rho: 63 }, -1),
        (Block::GenEta { n: 162, rho: 81 }, -1),
        (Block::GenEta { n: 18, rho: 3 }, 2),
        (Block::GenEta { n: 18, rho: 6 }, 1),
        (Block::GenEta { n: 18, rho: 9 }, 1),
        (Block::GenEta { n: 162, rho: 9 }, 1),
        (Block::GenEta { n: 162, rho: 72 }, 1),
    ];
    let mut summands: Vec<Summand> = Vec::new();
    let mut push = |mut s: Summand| {
        s.extend(w_inverse.iter().cloned());
        summands.push(s);
    };
    // left side: the mu-type assembly of O_3(zeta_3; q) and the S~ terms
    for k in 0..3i64 {
        let rho = (9 + 6 * k).rem_euclid(18);
        push(vec![
            (Block::EtaQuot2, 1),
            (Block::GenEta { n: 18, rho }, 1),
            (Block::MTilde { d: 3, k, a: 1, b: 0, c: 3 }, 1),
        ]);
    }
    for k in 0..2i64 {
        push(vec![(Block::P { d: 3, k, a: 1, b: 0, c: 3 }, 1)]);
    }
    for r in 1..3i64 {
        push(vec![(Block::STilde { r, c: 3, m: 18 }, 1)]);
    }
    // right side: the generalized eta quotients
    struct FT(&'static [i64], &'static [i64], u8);
    const TERMS: &[FT] = &[
        FT(&[27, 36, 63, 81], &[9, 72], 1),
        FT(&[27, 36, 45, 81], &[9, 72], 1),
        FT(&[18, 36, 54, 72, 81], &[9, 45, 63], 1),
        FT(&[18, 27, 45, 81], &[9, 72], 1),
        FT(&[18, 27, 36, 54, 72], &[9, 45, 63], 1),
        FT(&[27, 45, 54], &[18], 1),
        FT(&[27, 36, 81], &[18], 1),
        FT(&[45, 63, 72], &[54], 1),
        FT(&[27, 72, 81], &[36], 1),
        FT(&[27, 45, 63, 72], &[54, 81], 1),
        FT(&[18, 45, 63, 81], &[9, 72], 1),
        FT(&[18, 36, 54, 72], &[9, 45], 1),
        FT(&[18, 36, 54, 72], &[9, 63], 1),
        FT(&[27, 36, 63], &[18], 1),
        FT(&[45, 54, 63], &[72], 1),
        FT(&[27, 45, 72], &[36], 1),
        FT(&[27, 36, 63], &[72], 1),
        FT(&[18, 45, 63, 81], &[9, 72], 2),
        FT(&[18, 36, 54, 72], &[9, 45], 2),
        FT(&[18, 36, 54, 72], &[9, 63], 2),
        FT(&[27, 36, 63], &[18], 2),
        FT(&[45, 54, 63], &[72], 2),
        FT(&[27, 45, 72], &[36], 2),
        FT(&[27, 36, 63], &[72], 2),
    ];
    for FT(num, den, group) in TERMS {
        let mut s: Summand = vec![(Block::Eta { m: 18 }, 3)];
        if *group == 1 {
            s.push((Block::GenEta { n: 18, rho: 3 }, -2));
            s.push((Block::GenEta { n: 18, rho: 6 }, -1));
            s.push((Block::GenEta { n: 18, rho: 9 }, -1));
        } else {
            s.push((Block::GenEta { n: 18, rho: 3 }, -1));
            s.push((Block::GenEta { n: 18, rho: 6 }, -1));
            s.push((Block::GenEta { n: 18, rho: 9 }, -2));
        }
        for rho in *num {
            s.push((Block::GenEta { n: 162, rho: *rho }, 1));
        }
        for rho in *den {
            s.push((Block::GenEta { n: 162, rho: *rho }, -1));
        }
        push(s);
    }
    summands
}

/// The budget of the level-162 dissection identity over the published cusp set.
pub fn thm13_budget() -> Result<BudgetReport, QError> {
    let group = CongGroup::new(162, 9, 1);
    let cusps = cusp_table::paper_cusps();
    valence_budget(&thm13_summands(), &group, &cusps)
}
