//! Integer lattices: primitive vectors, Smith normal form, saturation and the
//! group indices that appear as intersection and pushforward weights.

use alloc::vec;
use alloc::vec::Vec;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linear::{bezout, dot, Int, IntVec};

/// Divides a nonzero vector by the gcd of its entries.
///
/// The result is parallel to `v` with the same orientation.
pub fn primitive(v: &[Int]) -> Result<IntVec> {
    crate::linear::primitive_part(v).ok_or(Error::ZeroVector)
}

/// A finitely generated subgroup of `Z^n`, given by (possibly dependent)
/// generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    /// Generators of the subgroup.
    pub generators: Vec<IntVec>,
    /// The `n` of the ambient `Z^n`.
    pub ambient_dim: usize,
}

impl Lattice {
    /// Creates a lattice, checking that every generator lives in `Z^n`.
    pub fn new(generators: Vec<IntVec>, ambient_dim: usize) -> Result<Self> {
        for g in &generators {
            if g.len() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, found: g.len() });
            }
        }
        Ok(Lattice { generators, ambient_dim })
    }

    /// The standard lattice `Z^n`.
    pub fn standard(n: usize) -> Self {
        let generators = (0..n)
            .map(|i| {
                let mut e = vec![Int::zero(); n];
                e[i] = Int::one();
                e
            })
            .collect();
        Lattice { generators, ambient_dim: n }
    }

    /// Rank of the subgroup.
    pub fn rank(&self) -> usize {
        smith(&self.generators, self.ambient_dim).rank()
    }

    /// Basis of the saturation `span_Q(L) ∩ Z^n`.
    pub fn saturation(&self) -> Vec<IntVec> {
        saturation(&self.generators, self.ambient_dim)
    }
}

/// Diagonal form `U A W = D` of an integer matrix with the column transform
/// `W` and its inverse recorded.
#[derive(Debug, Clone)]
pub struct Smith {
    /// Elementary divisors, positive and in divisibility order.
    pub divisors: Vec<Int>,
    /// Column transform `W` (size `ncols x ncols`, stored as rows).
    pub right: Vec<IntVec>,
    /// Inverse of `W`.
    pub right_inv: Vec<IntVec>,
}

impl Smith {
    /// Number of nonzero elementary divisors.
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }

    /// Product of the elementary divisors.
    pub fn product(&self) -> Int {
        self.divisors.iter().fold(Int::one(), |p, d| p * d)
    }
}

/// Smith normal form of the matrix whose rows are `rows` (each of length
/// `ncols`), by elementary row and column operations pivoting on an entry of
/// least absolute value.
pub fn smith(rows: &[IntVec], ncols: usize) -> Smith {
    let mut a: Vec<IntVec> = rows.to_vec();
    let nrows = a.len();
    let mut w: Vec<IntVec> = identity(ncols);
    let mut winv: Vec<IntVec> = identity(ncols);
    let mut divisors = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        // Pick the entry of least absolute value in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        swap_cols(&mut a, &mut w, &mut winv, t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..nrows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let pivot_row = a[t].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..ncols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                add_col(&mut a, &mut w, &mut winv, j, t, &(-q));
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // Enforce divisibility of the trailing block by the pivot.
                let mut bad = None;
                'outer: for i in t + 1..nrows {
                    for j in t + 1..ncols {
                        if !(&a[i][j] % &a[t][t]).is_zero() {
                            bad = Some(i);
                            break 'outer;
                        }
                    }
                }
                match bad {
                    None => break,
                    Some(i) => {
                        let row = a[i].clone();
                        for (x, y) in a[t].iter_mut().zip(&row) {
                            *x += y;
                        }
                        continue;
                    }
                }
            }
            // Re-pivot on the smallest entry of row t and column t.
            let mut best = (t, t);
            for i in t..nrows {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..ncols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            swap_cols(&mut a, &mut w, &mut winv, t, best.1);
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
        }
        divisors.push(a[t][t].clone());
        t += 1;
    }
    Smith { divisors, right: w, right_inv: winv }
}

fn identity(n: usize) -> Vec<IntVec> {
    (0..n)
        .map(|i| {
            let mut r = vec![Int::zero(); n];
            r[i] = Int::one();
            r
        })
        .collect()
}

fn swap_cols(a: &mut [IntVec], w: &mut [IntVec], winv: &mut [IntVec], j: usize, k: usize) {
    if j == k {
        return;
    }
    for row in a.iter_mut() {
        row.swap(j, k);
    }
    for row in w.iter_mut() {
        row.swap(j, k);
    }
    winv.swap(j, k);
}

/// `col_k += q * col_j` on `a` and `w`, with the inverse update on `winv`.
fn add_col(a: &mut [IntVec], w: &mut [IntVec], winv: &mut [IntVec], k: usize, j: usize, q: &Int) {
    if q.is_zero() {
        return;
    }
    for row in a.iter_mut() {
        let v = &row[j] * q;
        row[k] += v;
    }
    for row in w.iter_mut() {
        let v = &row[j] * q;
        row[k] += v;
    }
    let rk = winv[k].clone();
    for (x, y) in winv[j].iter_mut().zip(&rk) {
        *x -= q * y;
    }
}

/// Basis of the saturation of the lattice generated by `gens` in `Z^n`.
pub fn saturation(gens: &[IntVec], n: usize) -> Vec<IntVec> {
    let s = smith(gens, n);
    s.right_inv[..s.rank()].to_vec()
}

/// Basis of the integer kernel `{x in Z^n : row . x = 0 for all rows}`.
/// The returned lattice is saturated.
pub fn kernel_lattice(rows: &[IntVec], n: usize) -> Vec<IntVec> {
    let s = smith(rows, n);
    let r = s.rank();
    (r..n).map(|j| s.right.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Index of the lattice generated by `gens` inside its saturation.
pub fn index_in_saturation(gens: &[IntVec], n: usize) -> Int {
    smith(gens, n).product()
}

/// The group index `[Z^n : L1 + L2]`.
///
/// Fails with [`Error::NotFiniteIndex`] when the sum has rank below `n`.
pub fn lattice_sum_index(l1: &Lattice, l2: &Lattice) -> Result<Int> {
    if l1.ambient_dim != l2.ambient_dim {
        return Err(Error::DimensionMismatch { expected: l1.ambient_dim, found: l2.ambient_dim });
    }
    let n = l1.ambient_dim;
    let mut gens = l1.generators.clone();
    gens.extend(l2.generators.iter().cloned());
    let s = smith(&gens, n);
    if s.rank() < n {
        return Err(Error::NotFiniteIndex);
    }
    Ok(s.product())
}

/// Deletes the coordinates listed in `drop` from `v`.
pub fn delete_coordinates(v: &[Int], drop: &[usize]) -> IntVec {
    v.iter().enumerate().filter(|(i, _)| !drop.contains(i)).map(|(_, x)| x.clone()).collect()
}

/// Index `[Λ_F : proj(L)]` where `proj` deletes the coordinates in `drop`
/// and `Λ_F` is the saturation of the image.
///
/// Fails with [`Error::FaceContracted`] when the projection lowers the rank.
pub fn pushforward_index(l: &Lattice, drop: &[usize]) -> Result<Int> {
    let n = l.ambient_dim;
    for &d in drop {
        if d >= n {
            return Err(Error::InvalidElement(d));
        }
    }
    let m = n - drop.len();
    let image: Vec<IntVec> = l.generators.iter().map(|g| delete_coordinates(g, drop)).collect();
    let r_src = smith(&l.generators, n).rank();
    let s = smith(&image, m);
    if s.rank() < r_src {
        return Err(Error::FaceContracted);
    }
    Ok(s.product())
}

/// Primitive generator of the rank one group `Λ / (Λ ∩ ker g)` that pairs
/// positively with `g`.
///
/// `lattice_basis` must be a basis of a saturated lattice `Λ` on which the
/// integer functional `g` is not identically zero. The result `u` satisfies
/// `g(u) = gcd(g(Λ))`, so it is unique modulo the sublattice `ker g`.
pub fn normal_generator(lattice_basis: &[IntVec], g: &[Int]) -> Option<IntVec> {
    let values: Vec<Int> = lattice_basis.iter().map(|b| dot(b, g)).collect();
    let (gcd, coeffs) = bezout(&values);
    if gcd.is_zero() {
        return None;
    }
    let n = g.len();
    let mut u = vec![Int::zero(); n];
    for (c, b) in coeffs.iter().zip(lattice_basis) {
        for j in 0..n {
            u[j] += c * &b[j];
        }
    }
    Some(u)
}
