//! Dense exact simplex for `max cᵀx  s.t.  Ax ≤ b, x ≥ 0` with `b ≥ 0`.
//!
//! The origin is feasible, so the slack basis starts phase II directly.
//! Pivoting follows Bland's rule (lowest-index entering variable, ratio ties
//! broken by lowest-index leaving variable), which cannot cycle.

use num::{BigRational, Signed, Zero};

pub type Q = BigRational;

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub x: Vec<Q>,
    /// Row duals, `y ≥ 0`, with `yᵀA ≥ c` and `bᵀy = objective`.
    pub y: Vec<Q>,
    pub objective: Q,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Unbounded,
}

pub fn maximize(a: &[Vec<Q>], b: &[Q], c: &[Q]) -> LpOutcome {
    let rows = a.len();
    let vars = c.len();
    let cols = vars + rows;
    assert_eq!(b.len(), rows);
    assert!(b.iter().all(|v| !v.is_negative()), "rhs must be nonnegative");

    // row i: [A_i | e_i | b_i]; objective row stores -c, then zeros
    let mut t: Vec<Vec<Q>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), vars);
            let mut r = row.clone();
            r.extend((0..rows).map(|k| if k == i { Q::from_integer(1.into()) } else { Q::zero() }));
            r.push(b[i].clone());
            r
        })
        .collect();
    let mut obj: Vec<Q> = c.iter().map(|v| -v).chain((0..=rows).map(|_| Q::zero())).collect();
    let mut basis: Vec<usize> = (vars..cols).collect();

    while let Some(enter) = (0..cols).find(|&j| obj[j].is_negative()) {
        let mut leave: Option<(usize, Q)> = None;
        for i in 0..rows {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][cols] / &t[i][enter];
            let better = match &leave {
                None => true,
                Some((l, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*l]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((pr, _)) = leave else {
            return LpOutcome::Unbounded;
        };
        pivot(&mut t, &mut obj, pr, enter);
        basis[pr] = enter;
    }

    let mut x = vec![Q::zero(); vars];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < vars {
            x[bv] = t[i][cols].clone();
        }
    }
    let y = obj[vars..cols].to_vec();
    let objective = obj[cols].clone();
    LpOutcome::Optimal(LpSolution { x, y, objective })
}

fn pivot(t: &mut [Vec<Q>], obj: &mut [Q], pr: usize, pc: usize) {
    let inv = t[pr][pc].recip();
    for v in t[pr].iter_mut() {
        if !v.is_zero() {
            *v *= &inv;
        }
    }
    let prow = t[pr].clone();
    let nz: Vec<usize> = (0..prow.len()).filter(|&j| !prow[j].is_zero()).collect();
    let eliminate = |row: &mut [Q]| {
        let f = row[pc].clone();
        if f.is_zero() {
            return;
        }
        for &j in &nz {
            row[j] -= &f * &prow[j];
        }
    };
    for (i, row) in t.iter_mut().enumerate() {
        if i != pr {
            eliminate(row);
        }
    }
    eliminate(obj);
}
