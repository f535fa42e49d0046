//! Exact rational linear programming.
//!
//! Two-phase condensed tableau simplex over free variables with Bland's
//! smallest-index rule, so it terminates on degenerate instances. Every
//! infimum and supremum computed elsewhere in the crate goes through
//! [`solve_lp`]; suprema are encoded by negating the objective.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{RVector, Rational};

/// `minimize ⟨c, x⟩` subject to `⟨a, x⟩ ≤ b` rows and `⟨a, x⟩ = b` rows,
/// with every variable free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    vars: usize,
    objective: RVector,
    inequalities: Vec<(RVector, Rational)>,
    equalities: Vec<(RVector, Rational)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, witness: RVector },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&RVector> {
        match self {
            LpOutcome::Optimal { witness, .. } => Some(witness),
            _ => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible)
    }
}

impl LinearProgram {
    /// A feasibility problem in `vars` free variables (zero objective).
    pub fn new(vars: usize) -> Self {
        LinearProgram { vars, objective: RVector::zeros(vars), inequalities: Vec::new(), equalities: Vec::new() }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn objective(&self) -> &RVector {
        &self.objective
    }

    pub fn inequalities(&self) -> &[(RVector, Rational)] {
        &self.inequalities
    }

    pub fn equalities(&self) -> &[(RVector, Rational)] {
        &self.equalities
    }

    pub fn minimize(mut self, objective: RVector) -> Self {
        self.objective = objective;
        self
    }

    pub fn set_objective(&mut self, objective: RVector) {
        self.objective = objective;
    }

    /// `⟨a, x⟩ ≤ b`
    pub fn le(&mut self, a: RVector, b: Rational) -> &mut Self {
        self.inequalities.push((a, b));
        self
    }

    /// `⟨a, x⟩ ≥ b`
    pub fn ge(&mut self, a: RVector, b: Rational) -> &mut Self {
        self.inequalities.push((-&a, -b));
        self
    }

    /// `⟨a, x⟩ = b`
    pub fn equals(&mut self, a: RVector, b: Rational) -> &mut Self {
        self.equalities.push((a, b));
        self
    }

    /// Whether `x` satisfies every row exactly.
    pub fn is_feasible_point(&self, x: &RVector) -> bool {
        x.dim() == self.vars
            && self.inequalities.iter().all(|(a, b)| &a.dot(x) <= b)
            && self.equalities.iter().all(|(a, b)| &a.dot(x) == b)
    }

    fn validate(&self) -> Result<()> {
        if self.vars == 0 {
            return Err(Error::Malformed("linear program without variables".into()));
        }
        self.objective.check_dim(self.vars)?;
        for (a, _) in self.inequalities.iter().chain(&self.equalities) {
            a.check_dim(self.vars)?;
        }
        Ok(())
    }
}

pub fn solve_lp(p: &LinearProgram) -> Result<LpOutcome> {
    p.validate()?;
    // machine-word rationals first; any overflow reruns the program in big
    // rationals
    if let Some(small) = Data::<Small>::convert(p) {
        if let Some(out) = small.solve() {
            return Ok(out.finish(p));
        }
    }
    let big = Data::<Rational>::convert(p).expect("big rationals never overflow");
    Ok(big.solve().expect("big rationals never overflow").finish(p))
}

/// Maximizes `⟨c, x⟩` over the feasible set of `p` (its own objective is
/// ignored). The returned optimal value is the supremum itself.
pub fn maximize(p: &LinearProgram, c: &RVector) -> Result<LpOutcome> {
    let mut q = p.clone();
    q.set_objective(-c);
    Ok(match solve_lp(&q)? {
        LpOutcome::Optimal { value, witness } => LpOutcome::Optimal { value: -value, witness },
        other => other,
    })
}

type Small = Ratio<i128>;

/// Exact field operations that may report overflow with `None`.
trait Field: Clone + Ord + Sized {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_positive(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn sub(&self, b: &Self) -> Option<Self>;
    fn mul(&self, b: &Self) -> Option<Self>;
    fn div(&self, b: &Self) -> Option<Self>;
    fn from_rational(r: &Rational) -> Option<Self>;
    fn to_rational(&self) -> Rational;

    fn neg(&self) -> Option<Self> {
        Self::zero().sub(self)
    }

    /// self − a·b
    fn sub_mul(&self, a: &Self, b: &Self) -> Option<Self> {
        self.sub(&a.mul(b)?)
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn sub(&self, b: &Self) -> Option<Self> {
        Some(self - b)
    }
    fn mul(&self, b: &Self) -> Option<Self> {
        Some(self * b)
    }
    fn div(&self, b: &Self) -> Option<Self> {
        Some(self / b)
    }
    fn from_rational(r: &Rational) -> Option<Self> {
        Some(r.clone())
    }
    fn to_rational(&self) -> Rational {
        self.clone()
    }
}

impl Field for Small {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        *self.numer() == 0
    }
    fn is_positive(&self) -> bool {
        *self.numer() > 0
    }
    fn is_negative(&self) -> bool {
        *self.numer() < 0
    }
    fn sub(&self, b: &Self) -> Option<Self> {
        self.checked_sub(b)
    }
    fn mul(&self, b: &Self) -> Option<Self> {
        self.checked_mul(b)
    }
    fn div(&self, b: &Self) -> Option<Self> {
        self.checked_div(b)
    }
    fn from_rational(r: &Rational) -> Option<Self> {
        // keep well inside i128 so intermediate products are checked, not
        // wrapped
        let n = r.numer().to_i64()?;
        let d = r.denom().to_i64()?;
        Some(Ratio::new_raw(n.into(), d.into()))
    }
    fn to_rational(&self) -> Rational {
        Rational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
}

struct Data<T> {
    n: usize,
    inequalities: Vec<(Vec<T>, T)>,
    equalities: Vec<(Vec<T>, T)>,
    objective: Vec<T>,
}

enum Solved<T> {
    Optimal(Vec<T>),
    Infeasible,
    Unbounded,
}

impl<T: Field> Solved<T> {
    fn finish(self, p: &LinearProgram) -> LpOutcome {
        match self {
            Solved::Infeasible => LpOutcome::Infeasible,
            Solved::Unbounded => LpOutcome::Unbounded,
            Solved::Optimal(x) => {
                let witness: RVector = x.iter().map(T::to_rational).collect();
                let value = p.objective.dot(&witness);
                LpOutcome::Optimal { value, witness }
            }
        }
    }
}

impl<T: Field> Data<T> {
    fn convert(p: &LinearProgram) -> Option<Self> {
        let vec = |v: &RVector| v.iter().map(T::from_rational).collect::<Option<Vec<T>>>();
        let rows = |rs: &[(RVector, Rational)]| {
            rs.iter().map(|(a, b)| Some((vec(a)?, T::from_rational(b)?))).collect::<Option<Vec<_>>>()
        };
        Some(Data {
            n: p.vars,
            inequalities: rows(&p.inequalities)?,
            equalities: rows(&p.equalities)?,
            objective: vec(&p.objective)?,
        })
    }

    fn solve(&self) -> Option<Solved<T>> {
        let mut t = Tableau::build(self)?;
        t.run(&self.objective)
    }
}

/// Condensed tableau: one row per basic variable, one column per nonbasic
/// variable, `x_B(i) + Σ_j a_ij x_N(j) = b_i`.
///
/// Variables are numbered: the free program variables `0..n`, then one
/// slack per row; the phase one variable comes last. Free variables are
/// pivoted into the basis up front and their rows never take part in ratio
/// tests.
struct Tableau<T> {
    n: usize,
    rows: Vec<Vec<T>>,
    rhs: Vec<T>,
    basic: Vec<usize>,
    nonbasic: Vec<usize>,
    /// free variables whose column vanishes on every slack row
    dead: Vec<bool>,
    costs: Vec<T>,
    infeasible: bool,
}

const PHASE_ONE: usize = usize::MAX;

enum Pivoting {
    Optimal,
    Unbounded,
}

impl<T: Field> Tableau<T> {
    fn build(p: &Data<T>) -> Option<Self> {
        let n = p.n;
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        let mut basic = Vec::new();
        for (i, (a, b)) in p.inequalities.iter().chain(&p.equalities).enumerate() {
            rows.push(a.clone());
            rhs.push(b.clone());
            basic.push(n + i);
        }
        let mut t = Tableau {
            n,
            rows,
            rhs,
            basic,
            nonbasic: (0..n).collect(),
            dead: vec![false; n],
            costs: vec![T::zero(); n],
            infeasible: false,
        };
        let first_equality = n + p.inequalities.len();
        for slack in first_equality..first_equality + p.equalities.len() {
            t.fix_at_zero(slack)?;
            if t.infeasible {
                break;
            }
        }
        Some(t)
    }

    fn is_free(&self, var: usize) -> bool {
        var < self.n
    }

    fn drop_row(&mut self, r: usize) {
        self.rows.remove(r);
        self.rhs.remove(r);
        self.basic.remove(r);
    }

    /// Makes an equality slack nonbasic and removes its column.
    fn fix_at_zero(&mut self, slack: usize) -> Option<()> {
        let Some(r) = self.basic.iter().position(|&b| b == slack) else { return Some(()) };
        let pick = |free: bool| {
            (0..self.nonbasic.len()).find(|&j| self.is_free(self.nonbasic[j]) == free && !self.rows[r][j].is_zero())
        };
        match pick(true).or_else(|| pick(false)) {
            Some(j) => {
                self.pivot(r, j)?;
                self.remove_column(j);
            }
            None => {
                if !self.rhs[r].is_zero() {
                    self.infeasible = true;
                }
                self.drop_row(r);
            }
        }
        Some(())
    }

    fn remove_column(&mut self, j: usize) {
        for row in &mut self.rows {
            row.remove(j);
        }
        self.nonbasic.remove(j);
        self.costs.remove(j);
    }

    /// Pivots every free variable into the basis where possible.
    fn enter_free_variables(&mut self) -> Option<()> {
        for j in 0..self.nonbasic.len() {
            let v = self.nonbasic[j];
            if !self.is_free(v) {
                continue;
            }
            match (0..self.rows.len()).find(|&i| !self.is_free(self.basic[i]) && !self.rows[i][j].is_zero()) {
                Some(r) => self.pivot(r, j)?,
                None => self.dead[v] = true,
            }
        }
        Some(())
    }

    fn pivot(&mut self, r: usize, s: usize) -> Option<()> {
        let inv = T::one().div(&self.rows[r][s])?;
        let mut pivot_row = std::mem::take(&mut self.rows[r]);
        for (j, x) in pivot_row.iter_mut().enumerate() {
            if j != s && !x.is_zero() {
                *x = x.mul(&inv)?;
            }
        }
        pivot_row[s] = inv.clone();
        self.rhs[r] = self.rhs[r].mul(&inv)?;
        let nonzero: Vec<usize> = (0..pivot_row.len()).filter(|&j| j != s && !pivot_row[j].is_zero()).collect();
        let br = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][s].is_zero() {
                continue;
            }
            let f = self.rows[i][s].clone();
            let row = &mut self.rows[i];
            for &j in &nonzero {
                row[j] = row[j].sub_mul(&f, &pivot_row[j])?;
            }
            row[s] = f.mul(&inv)?.neg()?;
            if !br.is_zero() {
                self.rhs[i] = self.rhs[i].sub_mul(&f, &br)?;
            }
        }
        if !self.costs[s].is_zero() {
            let f = self.costs[s].clone();
            for &j in &nonzero {
                self.costs[j] = self.costs[j].sub_mul(&f, &pivot_row[j])?;
            }
            self.costs[s] = f.mul(&inv)?.neg()?;
        }
        self.rows[r] = pivot_row;
        std::mem::swap(&mut self.basic[r], &mut self.nonbasic[s]);
        Some(())
    }

    /// Reduced costs of the objective `c` given by variable id.
    fn price(&mut self, c: &dyn Fn(usize) -> T) -> Option<()> {
        let mut costs: Vec<T> = self.nonbasic.iter().map(|&v| c(v)).collect();
        for (row, &b) in self.rows.iter().zip(&self.basic) {
            let cb = c(b);
            if cb.is_zero() {
                continue;
            }
            for (d, a) in costs.iter_mut().zip(row) {
                if !a.is_zero() {
                    *d = d.sub_mul(&cb, a)?;
                }
            }
        }
        self.costs = costs;
        Some(())
    }

    /// Bland's rule: the entering variable has the least id among improving
    /// columns, ties in the ratio test go to the least basic id.
    fn pivot_to_optimum(&mut self) -> Option<Pivoting> {
        loop {
            let enter = (0..self.nonbasic.len())
                .filter(|&j| !self.is_free(self.nonbasic[j]) && self.costs[j].is_negative())
                .min_by_key(|&j| self.nonbasic[j]);
            let Some(s) = enter else {
                return Some(Pivoting::Optimal);
            };
            let mut leave: Option<(usize, T)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][s];
                if self.is_free(self.basic[i]) || !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs[i].div(a)?;
                let better = match &leave {
                    None => true,
                    Some((l, best)) => ratio < *best || (ratio == *best && self.basic[i] < self.basic[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return Some(Pivoting::Unbounded);
            };
            self.pivot(r, s)?;
        }
    }

    /// Phase one with a single extra variable x₀ ≥ 0 subtracted from every
    /// slack row. Answers whether the program is feasible.
    fn make_feasible(&mut self) -> Option<bool> {
        let worst = (0..self.rows.len())
            .filter(|&i| !self.is_free(self.basic[i]) && self.rhs[i].is_negative())
            .min_by(|&i, &k| self.rhs[i].cmp(&self.rhs[k]).then(self.basic[i].cmp(&self.basic[k])));
        let Some(r) = worst else { return Some(true) };
        for i in 0..self.rows.len() {
            let entry = if self.is_free(self.basic[i]) { T::zero() } else { T::one().neg()? };
            self.rows[i].push(entry);
        }
        self.nonbasic.push(PHASE_ONE);
        self.costs.push(T::zero());
        self.pivot(r, self.nonbasic.len() - 1)?;
        self.price(&|v| if v == PHASE_ONE { T::one() } else { T::zero() })?;
        // bounded below by zero
        self.pivot_to_optimum()?;
        if let Some(i) = self.basic.iter().position(|&b| b == PHASE_ONE) {
            if self.rhs[i].is_positive() {
                return Some(false);
            }
            match (0..self.nonbasic.len()).find(|&j| !self.rows[i][j].is_zero()) {
                Some(j) => self.pivot(i, j)?,
                None => self.drop_row(i),
            }
        }
        let j = self.nonbasic.iter().position(|&v| v == PHASE_ONE).expect("x0 is nonbasic");
        self.remove_column(j);
        Some(true)
    }

    fn run(&mut self, objective: &[T]) -> Option<Solved<T>> {
        if self.infeasible {
            return Some(Solved::Infeasible);
        }
        self.enter_free_variables()?;
        if !self.make_feasible()? {
            return Some(Solved::Infeasible);
        }
        let n = self.n;
        self.price(&|v| if v < n { objective[v].clone() } else { T::zero() })?;
        for (j, &v) in self.nonbasic.iter().enumerate() {
            if self.is_free(v) && !self.costs[j].is_zero() {
                return Some(Solved::Unbounded);
            }
        }
        debug_assert!(self.nonbasic.iter().all(|&v| !self.is_free(v) || self.dead[v]));
        Some(match self.pivot_to_optimum()? {
            Pivoting::Unbounded => Solved::Unbounded,
            Pivoting::Optimal => {
                let mut x = vec![T::zero(); n];
                for (i, &b) in self.basic.iter().enumerate() {
                    if b < n {
                        x[b] = self.rhs[i].clone();
                    }
                }
                Solved::Optimal(x)
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, int};

    fn v(c: &[i64]) -> RVector {
        RVector::from_ints(c)
    }

    #[test]
    fn bounded_minimum() {
        let mut p = LinearProgram::new(1).minimize(v(&[-1]));
        p.le(v(&[1]), int(1));
        let out = solve_lp(&p).unwrap();
        assert_eq!(out, LpOutcome::Optimal { value: int(-1), witness: v(&[1]) });
    }

    #[test]
    fn infeasible_program() {
        let mut p = LinearProgram::new(1).minimize(v(&[1]));
        p.le(v(&[1]), int(-1)).le(v(&[-1]), int(-2));
        assert_eq!(solve_lp(&p).unwrap(), LpOutcome::Infeasible);
    }

    #[test]
    fn unbounded_program() {
        let mut p = LinearProgram::new(1).minimize(v(&[1]));
        p.le(v(&[1]), int(0));
        assert_eq!(solve_lp(&p).unwrap(), LpOutcome::Unbounded);
    }

    #[test]
    fn equalities_and_redundant_rows() {
        // x + y = 1, 2x + 2y = 2, x - y <= 0 ; min x
        let mut p = LinearProgram::new(2).minimize(v(&[1, 0]));
        p.equals(v(&[1, 1]), int(1)).equals(v(&[2, 2]), int(2)).le(v(&[1, -1]), int(0));
        // x is unbounded below along (−t, 1+t)
        assert_eq!(solve_lp(&p).unwrap(), LpOutcome::Unbounded);

        let mut p = LinearProgram::new(2).minimize(v(&[-1, 0]));
        p.equals(v(&[1, 1]), int(1)).equals(v(&[2, 2]), int(2)).le(v(&[1, -1]), int(0));
        let out = solve_lp(&p).unwrap();
        assert_eq!(out.value(), Some(&frac(-1, 2)));
        assert!(p.is_feasible_point(out.witness().unwrap()));
    }

    #[test]
    fn degenerate_cycling_candidate_terminates() {
        // Beale's classic cycling example (as a minimization).
        let mut p = LinearProgram::new(4).minimize(RVector::new(vec![frac(-3, 4), int(150), frac(-1, 50), int(6)]));
        p.le(RVector::new(vec![frac(1, 4), int(-60), frac(-1, 25), int(9)]), int(0));
        p.le(RVector::new(vec![frac(1, 2), int(-90), frac(-1, 50), int(3)]), int(0));
        p.le(v(&[0, 0, 1, 0]), int(1));
        for j in 0..4 {
            p.ge(RVector::unit(4, j), int(0));
        }
        let out = solve_lp(&p).unwrap();
        assert_eq!(out.value(), Some(&frac(-1, 20)));
    }

    #[test]
    fn malformed_program() {
        let mut p = LinearProgram::new(2);
        p.le(v(&[1]), int(0));
        assert!(matches!(solve_lp(&p), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(solve_lp(&LinearProgram::new(0)), Err(Error::Malformed(_))));
    }

    #[test]
    fn maximize_reports_supremum() {
        let mut p = LinearProgram::new(2);
        p.le(v(&[1, 0]), int(3)).le(v(&[0, 1]), int(2)).ge(v(&[1, 1]), int(0));
        let out = maximize(&p, &v(&[1, 1])).unwrap();
        assert_eq!(out.value(), Some(&int(5)));
    }
}
