//! Smith normal form over the integers.
//!
//! `smith_normal_form(A)` returns unimodular `U`, `V` and diagonal `D` with
//! `U * A * V = D`, the diagonal non-negative and each entry dividing the
//! next. Pivots are chosen by minimal absolute value, lowest row-major index
//! first, so transforms are deterministic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::integer::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// The `min(rows, cols)` diagonal entries of `d`, unit and zero entries included.
    pub invariant_factors: Vec<BigInt>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.invariant_factors.iter().filter(|d| !d.is_zero()).count()
    }

    /// Re-checks every structural claim against the input matrix.
    pub fn verify(&self, a: &IntMatrix) -> Result<(), String> {
        if !self.u.is_unimodular() {
            return Err("U is not unimodular".into());
        }
        if !self.v.is_unimodular() {
            return Err("V is not unimodular".into());
        }
        let uav = self.u.mul(a).and_then(|ua| ua.mul(&self.v)).map_err(|e| e.to_string())?;
        if uav != self.d {
            return Err("U*A*V differs from D".into());
        }
        if !self.d.is_diagonal() {
            return Err("D is not diagonal".into());
        }
        for (i, w) in self.invariant_factors.windows(2).enumerate() {
            if w[0].is_negative() || !divides(&w[0], &w[1]) {
                return Err(format!("d{i} = {} does not divide d{} = {}", w[0], i + 1, w[1]));
            }
        }
        if self.invariant_factors.iter().any(Signed::is_negative) {
            return Err("negative invariant factor".into());
        }
        Ok(())
    }
}

/// `a | b`, with `0 | b` only for `b = 0`.
pub(crate) fn divides(a: &BigInt, b: &BigInt) -> bool {
    if a.is_zero() {
        b.is_zero()
    } else {
        (b % a).is_zero()
    }
}

fn find_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a[(bi, bj)].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        while let Some((pi, pj)) = find_pivot(&d, t) {
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let p = d[(t, t)].clone();
            let mut dirty = false;
            for i in t + 1..m {
                let q = d[(i, t)].div_floor(&p);
                let neg = -q;
                d.add_row_multiple(i, t, &neg);
                u.add_row_multiple(i, t, &neg);
                dirty |= !d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                let q = d[(t, j)].div_floor(&p);
                let neg = -q;
                d.add_col_multiple(j, t, &neg);
                v.add_col_multiple(j, t, &neg);
                dirty |= !d[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }
            // Row and column are clear; enforce the divisibility chain.
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !divides(&p, &d[(i, j)])));
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => {
                    if p.is_negative() {
                        d.negate_row(t);
                        u.negate_row(t);
                    }
                    break;
                }
            }
        }
    }

    let invariant_factors = (0..m.min(n)).map(|i| d[(i, i)].clone()).collect();
    SnfResult { u, d, v, invariant_factors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn factors(r: &SnfResult) -> Vec<i64> {
        r.invariant_factors.iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn identity_is_fixed() {
        let a = IntMatrix::identity(3);
        let r = smith_normal_form(&a);
        assert_eq!(r.d, a);
        assert_eq!(factors(&r), vec![1, 1, 1]);
        r.verify(&a).unwrap();
    }

    #[test]
    fn diag_2_3_becomes_1_6() {
        // d1 = gcd of all entries = 1, d1*d2 = |det| = 6
        let a = IntMatrix::diagonal(&[2, 3]);
        let r = smith_normal_form(&a);
        assert_eq!(factors(&r), vec![1, 6]);
        r.verify(&a).unwrap();
    }

    #[test]
    fn diag_6_15_becomes_3_30() {
        // d1 = gcd(6, 15) = 3, d1*d2 = 90
        let a = IntMatrix::diagonal(&[6, 15]);
        let r = smith_normal_form(&a);
        assert_eq!(factors(&r), vec![3, 30]);
        r.verify(&a).unwrap();
    }

    #[test]
    fn empty_and_zero_shapes() {
        for (m, n) in [(0, 0), (0, 3), (2, 0)] {
            let a = IntMatrix::zeros(m, n);
            let r = smith_normal_form(&a);
            assert!(r.invariant_factors.is_empty());
            r.verify(&a).unwrap();
        }
        let a = IntMatrix::zeros(2, 3);
        let r = smith_normal_form(&a);
        assert_eq!(factors(&r), vec![0, 0]);
        assert_eq!(r.rank(), 0);
    }

    #[test]
    fn rectangular_with_trailing_zero() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).unwrap();
        let r = smith_normal_form(&a);
        assert_eq!(factors(&r), vec![2, 6, 12]);
        r.verify(&a).unwrap();
        let a = IntMatrix::from_rows(&[vec![1, 2], vec![2, 4], vec![3, 6]]).unwrap();
        let r = smith_normal_form(&a);
        assert_eq!(factors(&r), vec![1, 0]);
        r.verify(&a).unwrap();
    }

    #[test]
    fn large_entries_stay_exact() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let a = IntMatrix::from_vec(2, 2, vec![big.clone() * 2, big.clone() * 4, big.clone() * 6, big.clone() * 10]).unwrap();
        let r = smith_normal_form(&a);
        r.verify(&a).unwrap();
        assert_eq!(r.invariant_factors[0], big * 2);
    }

    fn matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(m, n)| {
            proptest::collection::vec(-50i64..=50, m * n)
                .prop_map(move |v| IntMatrix::from_vec(m, n, v.into_iter().map(BigInt::from).collect()).unwrap())
        })
    }

    proptest! {
        #[test]
        fn snf_invariants_hold(a in matrix()) {
            let r = smith_normal_form(&a);
            prop_assert_eq!(r.verify(&a), Ok(()));
        }

        #[test]
        fn snf_is_idempotent_on_d(a in matrix()) {
            let r = smith_normal_form(&a);
            let again = smith_normal_form(&r.d);
            prop_assert_eq!(&again.d, &r.d);
        }

        #[test]
        fn first_factor_is_gcd_of_entries(a in matrix()) {
            let r = smith_normal_form(&a);
            let g = a.entries().iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            prop_assert_eq!(&r.invariant_factors[0], &g);
        }
    }
}
