use num_traits::Zero;
use proptest::prelude::*;

use zsym_core::equivalence::{apply, Witness};
use zsym_core::gradings::{check_grading, class1_sl, dual_eigenspaces, elementary, restrict_k};
use zsym_core::groups::{AbGroup, GroupAut};
use zsym_core::lie::Involution;
use zsym_core::matrices::identity_blocks;
use zsym_core::symspace::{build_space, modified_torsion};
use zsym_core::{Mat, Scalar, Subspace};

fn scalar() -> impl Strategy<Value = Scalar> {
    (-3i64..=3, 1i64..=3, -3i64..=3, 1i64..=3).prop_map(|(a, b, c, d)| Scalar::from_parts(a, b, c, d))
}

fn vectors(dim: usize, max: usize) -> impl Strategy<Value = Vec<Vec<Scalar>>> {
    prop::collection::vec(prop::collection::vec(scalar(), dim), 0..=max)
}

fn small_ints(dim: usize, max: usize) -> impl Strategy<Value = Vec<Vec<Scalar>>> {
    prop::collection::vec(prop::collection::vec((-1i64..=1).prop_map(Scalar::from), dim), 0..=max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_laws(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(&x * &(&y + &z), &x * &y + &x * &z);
        prop_assert_eq!(&x + &(-x.clone()), Scalar::zero());
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.recip().unwrap(), Scalar::from(1));
        }
        prop_assert_eq!(x.to_string().parse::<Scalar>().unwrap(), x);
    }

    #[test]
    fn modular_dimension_law(u in small_ints(5, 4), w in small_ints(5, 4)) {
        let u = Subspace::span(5, u).unwrap();
        let w = Subspace::span(5, w).unwrap();
        let sum = u.sum(&w).unwrap();
        let meet = u.intersect(&w).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + w.dim());
        prop_assert!(meet.is_subspace_of(&u) && meet.is_subspace_of(&w));
        prop_assert!(u.is_subspace_of(&sum) && w.is_subspace_of(&sum));
    }

    #[test]
    fn rref_is_idempotent(rows in vectors(4, 4)) {
        prop_assume!(!rows.is_empty());
        let m = Mat::from_rows(rows).unwrap();
        let r = m.rref();
        prop_assert_eq!(r.rref(), r.clone());
        prop_assert_eq!(r.rank(), m.rank());
        let k = m.kernel();
        prop_assert_eq!(k.dim() + m.rank(), 4);
        for v in k.basis() {
            prop_assert!(m.apply(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn span_of_basis_is_identity(vs in vectors(4, 5)) {
        let s = Subspace::span(4, vs.clone()).unwrap();
        prop_assert_eq!(Subspace::span(4, s.basis().to_vec()).unwrap(), s.clone());
        for v in &vs {
            prop_assert!(s.contains(v));
        }
    }

    #[test]
    fn elementary_gradings_are_valid(tuple in prop::collection::vec(0usize..4, 1..=4)) {
        let g = elementary(&tuple).unwrap();
        let report = check_grading(&g);
        prop_assert!(report.passed());
        let n = tuple.len();
        prop_assert_eq!(g.dims().iter().sum::<usize>(), n * n);
        prop_assert_eq!(dual_eigenspaces(&g).unwrap(), g.clone());
        if n >= 2 {
            let sl = class1_sl(&g).unwrap();
            prop_assert!(check_grading(&sl).passed());
            prop_assert_eq!(dual_eigenspaces(&sl).unwrap(), sl);
        }
    }

    #[test]
    fn relabelling_round_trips(tuple in prop::collection::vec(0usize..4, 1..=4), which in 0usize..6, diag in prop::collection::vec(1i64..=3, 4)) {
        let g = elementary(&tuple).unwrap();
        let grp = AbGroup::klein();
        let omega: GroupAut = grp.automorphisms()[which].clone();
        let n = tuple.len();
        let d: Vec<Scalar> = diag[..n].iter().map(|&x| Scalar::from(x)).collect();
        let w = Witness::new(Mat::diag(&d), omega).unwrap();
        let image = apply(&w, &g).unwrap();
        prop_assert!(check_grading(&image).passed());
        prop_assert_eq!(apply(&w.inverse(&grp), &image).unwrap(), g);
    }

    #[test]
    fn torsion_and_curvature_are_antisymmetric(ks in prop::collection::vec(1usize..=2, 3), i in 0usize..64, j in 0usize..64) {
        let tuple: Vec<usize> = ks.iter().enumerate().flat_map(|(p, &k)| std::iter::repeat_n(p, k)).collect();
        let inv = Involution::new("I", identity_blocks(&ks)).unwrap();
        let g = restrict_k(&elementary(&tuple).unwrap(), &inv).unwrap();
        let s = build_space(&g).unwrap();
        let b = s.m().basis();
        prop_assume!(!b.is_empty());
        let (x, y) = (&b[i % b.len()], &b[j % b.len()]);
        let neg: Vec<Scalar> = s.torsion(y, x).unwrap().into_iter().map(|c| -c).collect();
        prop_assert_eq!(s.torsion(x, y).unwrap(), neg);
        prop_assert_eq!(s.curvature(x, y).unwrap(), s.curvature(y, x).unwrap().neg());
        let half = modified_torsion(&s.torsion_tensor(), &Scalar::from_ratio(1, 2));
        prop_assert!(half.is_zero());
    }
}
