//! Exact decision procedure for uniform star-factor weightings.
//!
//! Given incidence vectors `x₁ … x_k` of all star-factors, a weighting `w`
//! equalizes them iff `Dw = 0`, where row `i` of `D` is `x_{i+1} − x₁`.
//! Either some `w > 0` solves `Dw = 0`, or (Stiemke) some combination of the
//! rows of `D` is nonnegative and nonzero. The solver finds one or the other
//! with an exact linear program
//!
//! ```text
//! maximize t  subject to  Dw = 0,  t ≤ w_e ≤ 1 for every edge e
//! ```
//!
//! and returns a certificate that [`verify_outcome`] can check without
//! trusting the simplex.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::factors::{enumerate_star_factors, incidence_vectors, FactorError, IncidenceVector};
use crate::graph::Graph;
use crate::simplex::{maximize, LpOutcome};

pub type Q = BigRational;

/// Strictly positive edge weights, indexed by edge.
///
/// `weights` is normalized so its minimum is 1; `integral` is `weights`
/// scaled by the least common multiple of its denominators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weighting {
    pub weights: Vec<Q>,
    pub integral: Vec<BigInt>,
}

impl Weighting {
    /// Normalizes a positive vector: divide by its minimum, then clear
    /// denominators.
    ///
    /// # Panics
    /// If some entry is not strictly positive.
    pub fn normalized(raw: Vec<Q>) -> Weighting {
        assert!(raw.iter().all(Signed::is_positive), "weights must be positive");
        let weights: Vec<Q> = match raw.iter().min().cloned() {
            Some(min) => raw.into_iter().map(|w| w / &min).collect(),
            None => raw,
        };
        let lcm = weights.iter().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let integral = weights.iter().map(|w| (w * Q::from_integer(lcm.clone())).to_integer()).collect();
        Weighting { weights, integral }
    }

    /// Weights given as positive integers, kept as is.
    pub fn from_integers<I: IntoIterator<Item = u64>>(values: I) -> Weighting {
        let integral: Vec<BigInt> = values.into_iter().map(BigInt::from).collect();
        assert!(integral.iter().all(Signed::is_positive), "weights must be positive");
        let weights = integral.iter().cloned().map(Q::from_integer).collect();
        Weighting { weights, integral }
    }

    pub fn constant(m: usize) -> Weighting {
        Self::from_integers(std::iter::repeat_n(1, m))
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.weights.windows(2).all(|w| w[0] == w[1])
    }
}

/// Nonnegative, nonzero vector in the row space of `D`, with the row
/// combination producing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refutation {
    /// One coefficient per row `x_{i+1} − x₁`.
    pub coeffs: Vec<Q>,
    /// `Σ coeffs[i]·(x_{i+1} − x₁)`, one entry per edge.
    pub forced_zero: Vec<Q>,
}

impl Refutation {
    /// Factor pairs `(1, i+1)` with a nonzero coefficient (1-based over the
    /// factor list, 0-based here).
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&i| !self.coeffs[i].is_zero()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FeasibilityOutcome {
    Witness { weighting: Weighting, common_weight: Q },
    Refutation(Refutation),
}

impl FeasibilityOutcome {
    pub fn is_witness(&self) -> bool {
        matches!(self, FeasibilityOutcome::Witness { .. })
    }
}

/// Rows `x_{i+1} − x₁`, entries in `{−1, 0, 1}`.
pub fn difference_matrix(vectors: &[IncidenceVector]) -> Vec<Vec<i8>> {
    let Some((first, rest)) = vectors.split_first() else {
        return Vec::new();
    };
    rest.iter()
        .map(|x| {
            assert_eq!(x.len(), first.len(), "incidence vectors differ in length");
            x.bits.iter().zip(&first.bits).map(|(&a, &b)| a as i8 - b as i8).collect()
        })
        .collect()
}

const PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    r
}

/// Indices of a maximal set of rows that are independent modulo a large
/// prime (hence independent over ℚ).
fn independent_rows_mod_p(d: &[Vec<i8>], m: usize) -> Vec<usize> {
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut chosen = Vec::new();
    for (i, row) in d.iter().enumerate() {
        if basis.len() == m {
            break;
        }
        let mut r: Vec<u64> = row
            .iter()
            .map(|&v| if v < 0 { PRIME - 1 } else { v as u64 })
            .collect();
        for (pc, b) in &basis {
            let f = r[*pc];
            if f != 0 {
                for j in 0..m {
                    if b[j] != 0 {
                        r[j] = (r[j] + PRIME - mul_mod(f, b[j])) % PRIME;
                    }
                }
            }
        }
        if let Some(pc) = r.iter().position(|&v| v != 0) {
            let inv = pow_mod(r[pc], PRIME - 2);
            for v in r.iter_mut() {
                *v = mul_mod(*v, inv);
            }
            basis.push((pc, r));
            chosen.push(i);
        }
    }
    chosen
}

/// Same selection as [`independent_rows_mod_p`], in exact arithmetic.
fn independent_rows_exact(d: &[Vec<i8>], m: usize) -> Vec<usize> {
    let mut basis: Vec<(usize, Vec<Q>)> = Vec::new();
    let mut chosen = Vec::new();
    for (i, row) in d.iter().enumerate() {
        if basis.len() == m {
            break;
        }
        let mut r: Vec<Q> = row.iter().map(|&v| Q::from_integer(v.into())).collect();
        for (pc, b) in &basis {
            let f = r[*pc].clone();
            if !f.is_zero() {
                for j in 0..m {
                    if !b[j].is_zero() {
                        r[j] -= &f * &b[j];
                    }
                }
            }
        }
        if let Some(pc) = r.iter().position(|v| !v.is_zero()) {
            let inv = r[pc].recip();
            for v in r.iter_mut() {
                *v *= &inv;
            }
            basis.push((pc, r));
            chosen.push(i);
        }
    }
    chosen
}

/// Reduced row echelon form `R = T·R₀` of a full-row-rank integer matrix,
/// with the transform `T`.
struct Echelon {
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
    transform: Vec<Vec<Q>>,
}

fn rref(r0: &[Vec<i8>], m: usize) -> Echelon {
    let r = r0.len();
    let mut rows: Vec<Vec<Q>> = r0
        .iter()
        .map(|row| row.iter().map(|&v| Q::from_integer(v.into())).collect())
        .collect();
    let mut transform: Vec<Vec<Q>> = (0..r)
        .map(|i| (0..r).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect();
    let mut pivots = Vec::with_capacity(r);
    let mut next = 0;
    for col in 0..m {
        if next == r {
            break;
        }
        let Some(p) = (next..r).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(next, p);
        transform.swap(next, p);
        let inv = rows[next][col].recip();
        for v in rows[next].iter_mut().chain(transform[next].iter_mut()) {
            *v *= &inv;
        }
        let (prow, trow) = (rows[next].clone(), transform[next].clone());
        for i in 0..r {
            if i == next || rows[i][col].is_zero() {
                continue;
            }
            let f = rows[i][col].clone();
            for (x, p) in rows[i].iter_mut().zip(&prow) {
                *x -= &f * p;
            }
            for (x, p) in transform[i].iter_mut().zip(&trow) {
                *x -= &f * p;
            }
        }
        pivots.push(col);
        next += 1;
    }
    assert_eq!(pivots.len(), r, "selected rows must be independent");
    Echelon { rows, pivots, transform }
}

fn dot(x: &IncidenceVector, w: &[Q]) -> Q {
    x.bits
        .iter()
        .zip(w)
        .filter(|(&b, _)| b)
        .fold(Q::zero(), |acc, (_, v)| acc + v)
}

fn equalizes(vectors: &[IncidenceVector], w: &[Q]) -> bool {
    let Some(first) = vectors.first() else {
        return true;
    };
    let target = dot(first, w);
    vectors[1..].iter().all(|x| dot(x, w) == target)
}

/// Solves the max-min LP restricted to the rows `chosen` of `d`.
///
/// Pivot columns of the echelon form are eliminated (`w_p = −Σ R_pj w_j`
/// over free columns `j`), leaving variables `(w_free, t) ≥ 0` and the rows
///
/// ```text
/// e free:   t − w_e ≤ 0          w_e ≤ 1
/// e pivot:  t + Σ R_ej w_j ≤ 0   −Σ R_ej w_j ≤ 1
/// ```
///
/// At `t = 0` the duals of the first block combine the echelon rows into
/// the refutation vector.
fn solve_restricted(d: &[Vec<i8>], chosen: &[usize], m: usize) -> (Vec<Q>, Option<Refutation>) {
    let r0: Vec<Vec<i8>> = chosen.iter().map(|&i| d[i].clone()).collect();
    let ech = rref(&r0, m);
    let mut pivot_row = vec![None; m];
    for (i, &p) in ech.pivots.iter().enumerate() {
        pivot_row[p] = Some(i);
    }
    let free: Vec<usize> = (0..m).filter(|&e| pivot_row[e].is_none()).collect();
    let vars = free.len() + 1;
    let t_col = free.len();

    let mut a = Vec::with_capacity(2 * m);
    for e in 0..m {
        let mut row = vec![Q::zero(); vars];
        row[t_col] = Q::one();
        match pivot_row[e] {
            None => row[free.iter().position(|&f| f == e).unwrap()] = -Q::one(),
            Some(i) => {
                for (k, &j) in free.iter().enumerate() {
                    row[k] = ech.rows[i][j].clone();
                }
            }
        }
        a.push(row);
    }
    for e in 0..m {
        let mut row = vec![Q::zero(); vars];
        match pivot_row[e] {
            None => row[free.iter().position(|&f| f == e).unwrap()] = Q::one(),
            Some(i) => {
                for (k, &j) in free.iter().enumerate() {
                    row[k] = -ech.rows[i][j].clone();
                }
            }
        }
        a.push(row);
    }
    let b: Vec<Q> = (0..2 * m).map(|i| if i < m { Q::zero() } else { Q::one() }).collect();
    let mut c = vec![Q::zero(); vars];
    c[t_col] = Q::one();

    let LpOutcome::Optimal(sol) = maximize(&a, &b, &c) else {
        unreachable!("t ≤ w_e ≤ 1 bounds the objective");
    };

    let mut w = vec![Q::zero(); m];
    for (k, &j) in free.iter().enumerate() {
        w[j] = sol.x[k].clone();
    }
    for (i, &p) in ech.pivots.iter().enumerate() {
        w[p] = -free
            .iter()
            .enumerate()
            .fold(Q::zero(), |acc, (k, &j)| acc + &ech.rows[i][j] * &sol.x[k]);
    }

    if sol.objective.is_positive() {
        return (w, None);
    }

    // z_i = dual of the "t ≤ w_p" row of pivot p
    let z: Vec<Q> = ech.pivots.iter().map(|&p| sol.y[p].clone()).collect();
    let mut forced_zero = vec![Q::zero(); m];
    for (i, zi) in z.iter().enumerate() {
        if zi.is_zero() {
            continue;
        }
        for (acc, v) in forced_zero.iter_mut().zip(&ech.rows[i]) {
            *acc += zi * v;
        }
    }
    let mut coeffs = vec![Q::zero(); d.len()];
    for (k, &src) in chosen.iter().enumerate() {
        coeffs[src] = z
            .iter()
            .enumerate()
            .fold(Q::zero(), |acc, (i, zi)| acc + zi * &ech.transform[i][k]);
    }
    (w, Some(Refutation { coeffs, forced_zero }))
}

/// Decides whether some strictly positive weighting gives every vector the
/// same total.
///
/// # Panics
/// If `vectors` is empty or the vectors differ in length.
pub fn decide_uniform_weighting(vectors: &[IncidenceVector]) -> FeasibilityOutcome {
    assert!(!vectors.is_empty(), "need at least one incidence vector");
    let m = vectors[0].len();
    if m == 0 {
        return FeasibilityOutcome::Witness {
            weighting: Weighting::normalized(Vec::new()),
            common_weight: Q::zero(),
        };
    }
    let d = difference_matrix(vectors);

    let mut chosen = independent_rows_mod_p(&d, m);
    let mut exact = false;
    loop {
        let (w, refutation) = solve_restricted(&d, &chosen, m);
        if let Some(r) = refutation {
            return FeasibilityOutcome::Refutation(r);
        }
        // a modular rank drop would leave constraints out; re-check them all
        if equalizes(vectors, &w) {
            let weighting = Weighting::normalized(w);
            let common_weight = dot(&vectors[0], &weighting.weights);
            return FeasibilityOutcome::Witness { weighting, common_weight };
        }
        assert!(!exact, "exact row selection must capture the full row space");
        chosen = independent_rows_exact(&d, m);
        exact = true;
    }
}

/// Checks a witness or refutation against the vectors, exactly.
pub fn verify_outcome(vectors: &[IncidenceVector], outcome: &FeasibilityOutcome) -> bool {
    let Some(first) = vectors.first() else {
        return false;
    };
    let m = first.len();
    if vectors.iter().any(|x| x.len() != m) {
        return false;
    }
    match outcome {
        FeasibilityOutcome::Witness { weighting, common_weight } => {
            let w = &weighting.weights;
            if w.len() != m || !w.iter().all(Signed::is_positive) {
                return false;
            }
            let integral_ok = weighting.integral.len() == m
                && match weighting.integral.first() {
                    None => true,
                    Some(i0) => {
                        let scale = Q::from_integer(i0.clone()) / &w[0];
                        scale.is_positive()
                            && scale.is_integer()
                            && w.iter()
                                .zip(&weighting.integral)
                                .all(|(wi, ii)| wi * &scale == Q::from_integer(ii.clone()))
                    }
                };
            integral_ok && vectors.iter().all(|x| dot(x, w) == *common_weight)
        }
        FeasibilityOutcome::Refutation(r) => {
            if r.coeffs.len() != vectors.len() - 1 || r.forced_zero.len() != m {
                return false;
            }
            let mut combo = vec![Q::zero(); m];
            for (c, x) in r.coeffs.iter().zip(&vectors[1..]) {
                if c.is_zero() {
                    continue;
                }
                for (acc, (&a, &b)) in combo.iter_mut().zip(x.bits.iter().zip(&first.bits)) {
                    let diff = a as i64 - b as i64;
                    if diff != 0 {
                        *acc += c * Q::from_integer(diff.into());
                    }
                }
            }
            combo == r.forced_zero
                && combo.iter().all(|v| !v.is_negative())
                && combo.iter().any(Signed::is_positive)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleVerdict {
    Member { weighting: Weighting, common_weight: Q },
    NotMember(Refutation),
    Vacuous,
    CapExceeded { cap: usize },
}

impl OracleVerdict {
    pub fn is_member(&self) -> bool {
        matches!(self, OracleVerdict::Member { .. })
    }

    pub fn is_not_member(&self) -> bool {
        matches!(self, OracleVerdict::NotMember(_))
    }
}

impl From<FeasibilityOutcome> for OracleVerdict {
    fn from(o: FeasibilityOutcome) -> Self {
        match o {
            FeasibilityOutcome::Witness { weighting, common_weight } => {
                OracleVerdict::Member { weighting, common_weight }
            }
            FeasibilityOutcome::Refutation(r) => OracleVerdict::NotMember(r),
        }
    }
}

/// Brute-force membership: enumerate every star-factor, then decide.
pub fn omega_oracle(g: &Graph, cap: usize) -> OracleVerdict {
    match enumerate_star_factors(g, cap) {
        Ok(fs) => decide_uniform_weighting(&incidence_vectors(&fs, g.size())).into(),
        Err(FactorError::Vacuous) => OracleVerdict::Vacuous,
        Err(FactorError::CapExceeded { cap }) => OracleVerdict::CapExceeded { cap },
    }
}
