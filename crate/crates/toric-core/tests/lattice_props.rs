//! Cross-validation of the Smith normal form against independent oracles:
//! determinantal divisors (gcds of minors) determine the diagonal, and the
//! transform matrices must be unimodular and reconstruct the input.

use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use toric_core::lattice::{
    determinantal_divisor, int, integer_kernel, rank, smith_normal_form, Int, IntMatrix,
};

fn matrices() -> impl Strategy<Value = IntMatrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-10i64..=10, c), r).prop_map(|rows| {
            let refs: Vec<&[i64]> = rows.iter().map(|row| row.as_slice()).collect();
            IntMatrix::from_i64_rows(&refs)
        })
    })
}

proptest! {
    /// The product of the first k Smith diagonal entries equals the gcd of
    /// all k x k minors, computed without any row reduction.
    #[test]
    fn diagonal_products_match_determinantal_divisors(a in matrices()) {
        let snf = smith_normal_form(&a);
        let diag = snf.diagonal();
        let mut product = Int::one();
        for (k, d) in diag.iter().enumerate() {
            product *= d;
            prop_assert_eq!(&product, &determinantal_divisor(&a, k + 1));
        }
    }

    #[test]
    fn transforms_are_unimodular_and_reconstruct(a in matrices()) {
        let snf = smith_normal_form(&a);
        prop_assert_eq!(snf.u.determinant().abs(), int(1));
        prop_assert_eq!(snf.v.determinant().abs(), int(1));
        prop_assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.s);
    }

    #[test]
    fn diagonal_is_a_divisibility_chain(a in matrices()) {
        let diag = smith_normal_form(&a).diagonal();
        for w in diag.windows(2) {
            prop_assert!(!w[0].is_negative());
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }

    #[test]
    fn kernel_members_annihilate_and_count_nullity(a in matrices()) {
        let kernel = integer_kernel(&a);
        prop_assert_eq!(kernel.len(), a.cols() - rank(&a));
        for v in &kernel {
            prop_assert!(v.iter().any(|c| !c.is_zero()));
            prop_assert!(a.mul_vec(v).iter().all(Int::is_zero));
        }
    }
}
