//! Exact rational linear algebra on small dense matrices.
//!
//! Everything here works over `BigRational` and returns integer vectors
//! scaled to be primitive whenever a direction (not a magnitude) is what the
//! caller needs. Matrices are row lists; the number of columns is passed
//! explicitly so that empty row lists remain meaningful.

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary precision integer used throughout the crate.
pub type Int = BigInt;
/// Arbitrary precision rational used throughout the crate.
pub type Rat = BigRational;
/// Integer vector in some ambient `Z^n`.
pub type IntVec = Vec<Int>;
/// Rational vector in some ambient `Q^n`.
pub type RatVec = Vec<Rat>;

/// Builds an integer vector from machine integers.
pub fn ivec(xs: &[i64]) -> IntVec {
    xs.iter().map(|&x| Int::from(x)).collect()
}

/// Promotes an integer vector to a rational one.
pub fn to_rat(v: &[Int]) -> RatVec {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

/// Integer dot product.
pub fn dot(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Rational dot product.
pub fn dot_rat(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Dot product of an integer functional with a rational point.
pub fn dot_int_rat(a: &[Int], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut s = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() {
            s += y * Rat::from_integer(x.clone());
        }
    }
    s
}

/// Returns true when every entry is zero.
pub fn is_zero_vec<T: Zero>(v: &[T]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Greatest common divisor of the entries, always nonnegative.
pub fn gcd_vec(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

/// Scales a nonzero rational vector to the primitive integer vector with the
/// same direction. Returns `None` for the zero vector.
pub fn integerize(v: &[Rat]) -> Option<IntVec> {
    if is_zero_vec(v) {
        return None;
    }
    let l = v.iter().fold(Int::one(), |l, x| l.lcm(x.denom()));
    let w: IntVec = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let g = gcd_vec(&w);
    Some(w.into_iter().map(|x| x / &g).collect())
}

/// Divides an integer vector by the gcd of its entries.
pub fn primitive_part(v: &[Int]) -> Option<IntVec> {
    let g = gcd_vec(v);
    if g.is_zero() {
        return None;
    }
    Some(v.iter().map(|x| x / &g).collect())
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[RatVec], ncols: usize) -> (Vec<RatVec>, Vec<usize>) {
    let mut m: Vec<RatVec> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

/// Rank of a list of integer vectors of length `ncols`.
pub fn rank(rows: &[IntVec], ncols: usize) -> usize {
    let q: Vec<RatVec> = rows.iter().map(|r| to_rat(r)).collect();
    rref(&q, ncols).0.len()
}

/// Basis of the rational nullspace `{x : row . x = 0 for every row}`, each
/// vector scaled to a primitive integer vector.
pub fn nullspace(rows: &[IntVec], ncols: usize) -> Vec<IntVec> {
    let q: Vec<RatVec> = rows.iter().map(|r| to_rat(r)).collect();
    nullspace_rat(&q, ncols)
}

/// Rational-input variant of [`nullspace`].
pub fn nullspace_rat(rows: &[RatVec], ncols: usize) -> Vec<IntVec> {
    let (m, pivots) = rref(rows, ncols);
    let mut out = Vec::new();
    for free in 0..ncols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); ncols];
        v[free] = Rat::one();
        for (row, &p) in m.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        out.push(integerize(&v).expect("nullspace vector is nonzero"));
    }
    out
}

/// Canonical integer basis of the span of `gens`: the reduced row echelon
/// form with each row scaled to be primitive. Two generator lists span the
/// same subspace exactly when their keys are equal.
pub fn span_key(gens: &[IntVec], ncols: usize) -> Vec<IntVec> {
    let q: Vec<RatVec> = gens.iter().map(|r| to_rat(r)).collect();
    rref(&q, ncols).0.iter().map(|r| integerize(r).expect("rref rows are nonzero")).collect()
}

/// Coordinates of `x` in the (independent) family `basis`, if `x` lies in its
/// span.
pub fn coordinates(basis: &[IntVec], x: &[Rat]) -> Option<RatVec> {
    let n = x.len();
    let k = basis.len();
    // Solve sum_j c_j basis_j = x as an n x (k+1) augmented system.
    let rows: Vec<RatVec> = (0..n)
        .map(|i| {
            let mut r: RatVec = basis.iter().map(|b| Rat::from_integer(b[i].clone())).collect();
            r.push(x[i].clone());
            r
        })
        .collect();
    let (m, pivots) = rref(&rows, k + 1);
    if pivots.contains(&k) {
        return None;
    }
    if pivots.len() != k {
        // Dependent family: coordinates are not unique.
        return None;
    }
    let mut c = vec![Rat::zero(); k];
    for (row, &p) in m.iter().zip(&pivots) {
        c[p] = row[k].clone();
    }
    Some(c)
}

/// Orthogonal projection of `v` onto the orthogonal complement of the span
/// of `basis`.
pub fn project_out(v: &[Rat], basis: &[IntVec]) -> RatVec {
    if basis.is_empty() {
        return v.to_vec();
    }
    let n = v.len();
    let b: Vec<RatVec> = basis.iter().map(|r| to_rat(r)).collect();
    // Gram system G c = B v.
    let k = b.len();
    let rows: Vec<RatVec> = (0..k)
        .map(|i| {
            let mut r: RatVec = (0..k).map(|j| dot_rat(&b[i], &b[j])).collect();
            r.push(dot_rat(&b[i], v));
            r
        })
        .collect();
    let (m, pivots) = rref(&rows, k + 1);
    let mut c = vec![Rat::zero(); k];
    for (row, &p) in m.iter().zip(&pivots) {
        if p < k {
            c[p] = row[k].clone();
        }
    }
    let mut out = v.to_vec();
    for (ci, bi) in c.iter().zip(&b) {
        if ci.is_zero() {
            continue;
        }
        for j in 0..n {
            out[j] -= ci * &bi[j];
        }
    }
    out
}

/// Extended gcd of a list: returns `(g, c)` with `sum c_i a_i = g >= 0`.
pub fn bezout(a: &[Int]) -> (Int, IntVec) {
    let mut g = Int::zero();
    let mut c: IntVec = vec![Int::zero(); a.len()];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        if g.is_zero() {
            g = x.abs();
            c[i] = if x.is_negative() { -Int::one() } else { Int::one() };
            continue;
        }
        let e = g.extended_gcd(x);
        // e.gcd = e.x * g + e.y * x
        for cj in c.iter_mut() {
            *cj *= &e.x;
        }
        c[i] = e.y.clone();
        g = e.gcd;
        if g.is_negative() {
            g = -g;
            for cj in c.iter_mut() {
                *cj = -cj.clone();
            }
        }
    }
    (g, c)
}

/// `sum_j c_j v_j` for rational coefficients and integer vectors.
pub fn combine(coeffs: &[Rat], vecs: &[IntVec], n: usize) -> RatVec {
    let mut out = vec![Rat::zero(); n];
    for (c, v) in coeffs.iter().zip(vecs) {
        if c.is_zero() {
            continue;
        }
        for j in 0..n {
            if !v[j].is_zero() {
                out[j] += c * Rat::from_integer(v[j].clone());
            }
        }
    }
    out
}

/// Negates an integer vector.
pub fn neg(v: &[Int]) -> IntVec {
    v.iter().map(|x| -x).collect()
}

/// Adds two integer vectors.
pub fn add(a: &[Int], b: &[Int]) -> IntVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Multiplies an integer vector by a scalar.
pub fn scale(c: &Int, v: &[Int]) -> IntVec {
    v.iter().map(|x| c * x).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(Int::from(n), Int::from(d))
    }

    #[test]
    fn integerize_scales_to_primitive() {
        assert_eq!(integerize(&[r(1, 2), r(-3, 4)]), Some(ivec(&[2, -3])));
        assert_eq!(integerize(&[r(0, 1), r(0, 1)]), None);
    }

    #[test]
    fn nullspace_of_plane() {
        let ns = nullspace(&[ivec(&[1, 1, 1])], 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(dot(v, &ivec(&[1, 1, 1])).is_zero());
        }
    }

    #[test]
    fn span_key_is_canonical() {
        let a = span_key(&[ivec(&[1, 1, 0]), ivec(&[0, 1, 1])], 3);
        let b = span_key(&[ivec(&[1, 2, 1]), ivec(&[1, 0, -1])], 3);
        assert_eq!(a, b);
    }

    #[test]
    fn coordinates_solve() {
        let c = coordinates(&[ivec(&[1, 0]), ivec(&[1, 1])], &[r(3, 1), r(2, 1)]).unwrap();
        assert_eq!(c, vec![r(1, 1), r(2, 1)]);
        assert!(coordinates(&[ivec(&[1, 1])], &[r(1, 1), r(0, 1)]).is_none());
    }

    #[test]
    fn bezout_identity() {
        let a = ivec(&[6, 10, 15]);
        let (g, c) = bezout(&a);
        assert_eq!(g, Int::from(1));
        assert_eq!(dot(&a, &c), g);
        let (g, c) = bezout(&ivec(&[0, -4, 6]));
        assert_eq!(g, Int::from(2));
        assert_eq!(dot(&ivec(&[0, -4, 6]), &c), g);
    }

    #[test]
    fn projection_is_orthogonal() {
        let p = project_out(&to_rat(&ivec(&[1, 2, 3])), &[ivec(&[1, 1, 1])]);
        assert!(dot_rat(&p, &to_rat(&ivec(&[1, 1, 1]))).is_zero());
    }
}
