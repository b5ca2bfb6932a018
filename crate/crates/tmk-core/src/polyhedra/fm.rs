//! Fourier–Motzkin feasibility over the ordered ring `Q[ε]`.
//!
//! Constraints are linear in the unknowns with rational coefficients; only
//! the right hand sides carry an infinitesimal part, so `ε` never multiplies
//! `ε`. A feasible system yields an explicit witness, found by
//! back-substitution through the elimination stages.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{Add, Mul, Neg, Sub};
use num_traits::{One, Signed, Zero};

use crate::linear::{Rat, RatVec};

/// An element `re + eps·ε` of `Q[ε]`, ordered lexicographically so that `ε`
/// is a positive infinitesimal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QEps {
    /// Standard part.
    pub re: Rat,
    /// Coefficient of `ε`.
    pub eps: Rat,
}

impl QEps {
    /// The element `re + eps·ε`.
    pub fn new(re: Rat, eps: Rat) -> Self {
        QEps { re, eps }
    }

    /// A purely rational element.
    pub fn real(re: Rat) -> Self {
        QEps { re, eps: Rat::zero() }
    }

    /// Zero.
    pub fn zero() -> Self {
        QEps::real(Rat::zero())
    }

    /// Returns true for zero.
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.eps.is_zero()
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, c: &Rat) -> Self {
        QEps { re: &self.re * c, eps: &self.eps * c }
    }

    /// Evaluates at a concrete positive value of `ε`.
    pub fn at(&self, eps: &Rat) -> Rat {
        &self.re + &self.eps * eps
    }
}

impl PartialOrd for QEps {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QEps {
    fn cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.eps.cmp(&other.eps))
    }
}

impl Add for &QEps {
    type Output = QEps;
    fn add(self, o: &QEps) -> QEps {
        QEps { re: &self.re + &o.re, eps: &self.eps + &o.eps }
    }
}

impl Sub for &QEps {
    type Output = QEps;
    fn sub(self, o: &QEps) -> QEps {
        QEps { re: &self.re - &o.re, eps: &self.eps - &o.eps }
    }
}

impl Neg for &QEps {
    type Output = QEps;
    fn neg(self) -> QEps {
        QEps { re: -&self.re, eps: -&self.eps }
    }
}

impl Mul<&Rat> for &QEps {
    type Output = QEps;
    fn mul(self, c: &Rat) -> QEps {
        self.scale(c)
    }
}

/// One linear constraint `coeffs · x ≥ rhs`, or `>` when `strict`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    /// Coefficients, one per unknown.
    pub coeffs: RatVec,
    /// Right hand side.
    pub rhs: QEps,
    /// Whether the inequality is strict.
    pub strict: bool,
}

impl Constraint {
    /// `coeffs · x ≥ rhs`.
    pub fn geq(coeffs: RatVec, rhs: QEps) -> Self {
        Constraint { coeffs, rhs, strict: false }
    }

    /// `coeffs · x > rhs`.
    pub fn gt(coeffs: RatVec, rhs: QEps) -> Self {
        Constraint { coeffs, rhs, strict: true }
    }

    fn holds(&self, x: &[QEps]) -> bool {
        let lhs = eval(&self.coeffs, x);
        if self.strict {
            lhs > self.rhs
        } else {
            lhs >= self.rhs
        }
    }
}

/// A linear system of equalities and inequalities over `Q[ε]`.
#[derive(Debug, Clone, Default)]
pub struct System {
    /// Number of unknowns.
    pub nvars: usize,
    /// Equalities `coeffs · x = rhs`.
    pub equalities: Vec<(RatVec, QEps)>,
    /// Inequalities.
    pub inequalities: Vec<Constraint>,
}

fn eval(coeffs: &[Rat], x: &[QEps]) -> QEps {
    let mut s = QEps::zero();
    for (c, v) in coeffs.iter().zip(x) {
        if !c.is_zero() {
            s = &s + &v.scale(c);
        }
    }
    s
}

#[derive(Clone)]
struct Row {
    coeffs: RatVec,
    rhs: QEps,
    strict: bool,
    history: Vec<usize>,
}

impl Row {
    /// Scales so the first nonzero coefficient has absolute value one.
    fn normalise(&mut self) {
        if let Some(c) = self.coeffs.iter().find(|c| !c.is_zero()) {
            let f = c.abs().recip();
            if !f.is_one() {
                for x in self.coeffs.iter_mut() {
                    *x *= &f;
                }
                self.rhs = self.rhs.scale(&f);
            }
        }
    }
}

/// Substitution `x_var = (rhs - sum_k coeffs_k x_k) / pivot`.
struct Substitution {
    var: usize,
    coeffs: RatVec,
    rhs: QEps,
}

impl System {
    /// An empty system in `nvars` unknowns.
    pub fn new(nvars: usize) -> Self {
        System { nvars, equalities: Vec::new(), inequalities: Vec::new() }
    }

    /// Returns a witness point when the system is feasible.
    pub fn solve(&self) -> Option<Vec<QEps>> {
        let n = self.nvars;
        let mut rows: Vec<Row> = self
            .inequalities
            .iter()
            .enumerate()
            .map(|(i, c)| Row { coeffs: c.coeffs.clone(), rhs: c.rhs.clone(), strict: c.strict, history: vec![i] })
            .collect();
        let mut eqs: Vec<(RatVec, QEps)> = self.equalities.clone();
        let mut subs: Vec<Substitution> = Vec::new();

        // Gaussian elimination of the equalities.
        while let Some((coeffs, rhs)) = eqs.pop() {
            let Some(var) = coeffs.iter().position(|c| !c.is_zero()) else {
                if rhs.is_zero() {
                    continue;
                }
                return None;
            };
            let pivot = coeffs[var].clone();
            let sub = Substitution { var, coeffs: coeffs.iter().map(|c| c / &pivot).collect(), rhs: rhs.scale(&pivot.recip()) };
            for (c, r) in eqs.iter_mut() {
                substitute(c, r, &sub);
            }
            for row in rows.iter_mut() {
                substitute(&mut row.coeffs, &mut row.rhs, &sub);
            }
            subs.push(sub);
        }

        let eliminated: Vec<usize> = subs.iter().map(|s| s.var).collect();
        let mut free: Vec<usize> = (0..n).filter(|v| !eliminated.contains(v)).collect();
        let mut stages: Vec<(usize, Vec<Row>)> = Vec::new();
        rows = clean(rows)?;
        let mut step = 0usize;
        while !free.is_empty() {
            // Variable with the smallest number of generated combinations.
            let (pos_idx, var) = free
                .iter()
                .enumerate()
                .map(|(k, &v)| {
                    let p = rows.iter().filter(|r| r.coeffs[v].is_positive()).count();
                    let m = rows.iter().filter(|r| r.coeffs[v].is_negative()).count();
                    (p * m, k, v)
                })
                .min()
                .map(|(_, k, v)| (k, v))
                .expect("free is nonempty");
            free.remove(pos_idx);
            step += 1;
            let (involved, rest): (Vec<Row>, Vec<Row>) = rows.into_iter().partition(|r| !r.coeffs[var].is_zero());
            let mut next = rest;
            let pos: Vec<&Row> = involved.iter().filter(|r| r.coeffs[var].is_positive()).collect();
            let neg: Vec<&Row> = involved.iter().filter(|r| r.coeffs[var].is_negative()).collect();
            for p in &pos {
                for q in &neg {
                    let a = &p.coeffs[var];
                    let b = -&q.coeffs[var];
                    let mut history = p.history.clone();
                    for h in &q.history {
                        if !history.contains(h) {
                            history.push(*h);
                        }
                    }
                    // Chernikov's rule: such a combination is implied by others.
                    if history.len() > step + 1 {
                        continue;
                    }
                    let coeffs: RatVec = p.coeffs.iter().zip(&q.coeffs).map(|(x, y)| x * &b + y * a).collect();
                    let rhs = &p.rhs.scale(&b) + &q.rhs.scale(a);
                    next.push(Row { coeffs, rhs, strict: p.strict || q.strict, history });
                }
            }
            stages.push((var, involved));
            rows = clean(next)?;
        }

        // Back-substitution.
        let mut x: Vec<QEps> = vec![QEps::zero(); n];
        for (var, rows) in stages.iter().rev() {
            let mut lower: Option<(QEps, bool)> = None;
            let mut upper: Option<(QEps, bool)> = None;
            for r in rows {
                let c = &r.coeffs[*var];
                let mut rest = r.rhs.clone();
                for (k, ck) in r.coeffs.iter().enumerate() {
                    if k != *var && !ck.is_zero() {
                        rest = &rest - &x[k].scale(ck);
                    }
                }
                let bound = rest.scale(&c.recip());
                if c.is_positive() {
                    if lower.as_ref().is_none_or(|(l, s)| bound > *l || (bound == *l && r.strict && !s)) {
                        lower = Some((bound, r.strict));
                    }
                } else if upper.as_ref().is_none_or(|(u, s)| bound < *u || (bound == *u && r.strict && !s)) {
                    upper = Some((bound, r.strict));
                }
            }
            let one = QEps::real(Rat::one());
            x[*var] = match (lower, upper) {
                (Some((l, _)), Some((u, _))) if l < u => (&l + &u).scale(&Rat::new(1.into(), 2.into())),
                (Some((l, ls)), Some((u, us))) => {
                    if l == u && !ls && !us {
                        l
                    } else {
                        return None;
                    }
                }
                (Some((l, _)), None) => &l + &one,
                (None, Some((u, _))) => &u - &one,
                (None, None) => QEps::zero(),
            };
        }
        for sub in subs.iter().rev() {
            let mut v = sub.rhs.clone();
            for (k, c) in sub.coeffs.iter().enumerate() {
                if k != sub.var && !c.is_zero() {
                    v = &v - &x[k].scale(c);
                }
            }
            x[sub.var] = v;
        }
        let ok = self.inequalities.iter().all(|c| c.holds(&x)) && self.equalities.iter().all(|(c, r)| eval(c, &x) == *r);
        debug_assert!(ok, "back-substitution produced an infeasible point");
        if ok {
            Some(x)
        } else {
            None
        }
    }

    /// Feasibility test.
    pub fn feasible(&self) -> bool {
        self.solve().is_some()
    }
}

fn substitute(coeffs: &mut RatVec, rhs: &mut QEps, sub: &Substitution) {
    let c = coeffs[sub.var].clone();
    if c.is_zero() {
        return;
    }
    for (k, s) in sub.coeffs.iter().enumerate() {
        if !s.is_zero() {
            coeffs[k] -= &c * s;
        }
    }
    coeffs[sub.var] = Rat::zero();
    *rhs = &*rhs - &sub.rhs.scale(&c);
}

/// Drops trivial rows (failing on a violated one) and keeps the tightest of
/// rows with identical normalised coefficients.
fn clean(rows: Vec<Row>) -> Option<Vec<Row>> {
    let mut best: BTreeMap<RatVec, Row> = BTreeMap::new();
    for mut r in rows {
        if r.coeffs.iter().all(Zero::is_zero) {
            let zero = QEps::zero();
            let ok = if r.strict { zero > r.rhs } else { zero >= r.rhs };
            if !ok {
                return None;
            }
            continue;
        }
        r.normalise();
        match best.get(&r.coeffs) {
            Some(old) if old.rhs > r.rhs || (old.rhs == r.rhs && (old.strict || !r.strict)) => {}
            _ => {
                best.insert(r.coeffs.clone(), r);
            }
        }
    }
    Some(best.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> Rat {
        Rat::from_integer(BigInt::from(n))
    }

    fn row(c: &[i64]) -> RatVec {
        c.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn qeps_order_is_lexicographic() {
        let a = QEps::new(q(0), q(1));
        let b = QEps::new(q(1), q(-100));
        assert!(a > QEps::zero());
        assert!(b > a);
        assert!(QEps::new(q(0), q(-1)) < QEps::zero());
    }

    #[test]
    fn simple_box_is_feasible() {
        let mut s = System::new(2);
        s.inequalities.push(Constraint::geq(row(&[1, 0]), QEps::real(q(1))));
        s.inequalities.push(Constraint::geq(row(&[-1, 0]), QEps::real(q(-3))));
        s.inequalities.push(Constraint::gt(row(&[0, 1]), QEps::real(q(0))));
        let x = s.solve().unwrap();
        assert!(x[0].re >= q(1) && x[0].re <= q(3));
        assert!(x[1] > QEps::zero());
    }

    #[test]
    fn strict_contradiction_is_infeasible() {
        let mut s = System::new(1);
        s.inequalities.push(Constraint::geq(row(&[1]), QEps::real(q(0))));
        s.inequalities.push(Constraint::gt(row(&[-1]), QEps::real(q(0))));
        assert!(!s.feasible());
    }

    #[test]
    fn infinitesimal_bounds() {
        // x > 0 and x <= ε: feasible; x >= ε and x < ε: infeasible.
        let mut s = System::new(1);
        s.inequalities.push(Constraint::gt(row(&[1]), QEps::zero()));
        s.inequalities.push(Constraint::geq(row(&[-1]), QEps::new(q(0), q(-1))));
        let x = s.solve().unwrap();
        assert!(x[0] > QEps::zero() && x[0] <= QEps::new(q(0), q(1)));
        let mut t = System::new(1);
        t.inequalities.push(Constraint::geq(row(&[1]), QEps::new(q(0), q(1))));
        t.inequalities.push(Constraint::gt(row(&[-1]), QEps::new(q(0), q(-1))));
        assert!(!t.feasible());
    }

    #[test]
    fn equalities_are_substituted() {
        // x + y = 1, x - y = 0, x > 0.
        let mut s = System::new(2);
        s.equalities.push((row(&[1, 1]), QEps::real(q(1))));
        s.equalities.push((row(&[1, -1]), QEps::zero()));
        s.inequalities.push(Constraint::gt(row(&[1, 0]), QEps::zero()));
        let x = s.solve().unwrap();
        assert_eq!(x[0].re, Rat::new(1.into(), 2.into()));
        assert_eq!(x[1].re, Rat::new(1.into(), 2.into()));
        s.equalities.push((row(&[0, 1]), QEps::real(q(2))));
        assert!(!s.feasible());
    }
}
