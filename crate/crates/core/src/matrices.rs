//! Named matrices: Pauli-type generators, skew blocks, and the involution
//! matrices of the classification.

use crate::{Error, Mat, Scalar};

/// The four generators of the fine grading of `M_2`, indexed `e, a, b, c`.
/// They satisfy `X_a X_b = X_c`.
pub fn pauli(p: usize) -> Mat {
    match p {
        0 => Mat::identity(2),
        1 => Mat::from_i64(&[&[-1, 0], &[0, 1]]),
        2 => Mat::from_i64(&[&[0, 1], &[1, 0]]),
        3 => Mat::from_i64(&[&[0, -1], &[1, 0]]),
        _ => panic!("pauli index {p} out of range"),
    }
}

/// `[[0, I_l], [-I_l, 0]]` of size `2l`.
pub fn skew(size: usize) -> Result<Mat, Error> {
    if !size.is_multiple_of(2) || size == 0 {
        return Err(Error::OddSkewBlock(size));
    }
    Ok(swap_block(size / 2, -1))
}

/// `[[0, I_k], [sign·I_k, 0]]`.
pub fn swap_block(k: usize, sign: i64) -> Mat {
    let mut m = Mat::zeros(2 * k, 2 * k);
    for i in 0..k {
        m.set(i, k + i, Scalar::from(1));
        m.set(k + i, i, Scalar::from(sign));
    }
    m
}

/// The tensor product `A ⊗ B` realized so that each entry of `B` scales a
/// copy of `A`: for `B` of size 2 the result is a 2×2 pattern of `A`-blocks.
pub fn tensor(a: &Mat, b: &Mat) -> Mat {
    b.kron(a)
}

/// `diag(I_{k_1}, ..., I_{k_r})`, i.e. the identity of the total size.
pub fn identity_blocks(ks: &[usize]) -> Mat {
    Mat::identity(ks.iter().sum())
}

/// `diag(S_{k_1}, ..., S_{k_r})`; every block size must be even.
pub fn skew_blocks(ks: &[usize]) -> Result<Mat, Error> {
    let blocks = ks
        .iter()
        .filter(|&&k| k > 0)
        .map(|&k| skew(k))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Mat::block_diag(&blocks))
}

/// `diag([[0, I_{k_1}], [s·I_{k_1}, 0]], [[0, I_{k_3}], [s·I_{k_3}, 0]])`.
pub fn paired_swaps(k1: usize, k3: usize, sign: i64) -> Mat {
    let blocks: Vec<Mat> = [k1, k3]
        .iter()
        .filter(|&&k| k > 0)
        .map(|&k| swap_block(k, sign))
        .collect();
    Mat::block_diag(&blocks)
}

/// The four involution matrices on `M_m ⊗ M_2` for a given symmetry of the
/// first factor: index `0..3` pairs `base` with `X_e, X_a, X_b`, index 3
/// pairs `other` with `X_c`.
pub fn product_involution(base: &Mat, other: &Mat, which: usize) -> Mat {
    if which == 3 {
        tensor(other, &pauli(3))
    } else {
        tensor(base, &pauli(which))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_products() {
        let ab = pauli(1).checked_mul(&pauli(2)).unwrap();
        assert_eq!(ab, pauli(3));
        for p in 1..4 {
            let sq = pauli(p).checked_mul(&pauli(p)).unwrap();
            let expect = if p == 3 { Mat::identity(2).neg() } else { Mat::identity(2) };
            assert_eq!(sq, expect);
        }
    }

    #[test]
    fn skew_shape() {
        let s = skew(4).unwrap();
        assert_eq!(s.transpose(), s.neg());
        assert!(matches!(skew(3), Err(Error::OddSkewBlock(3))));
        assert_eq!(swap_block(2, -1), s);
    }

    #[test]
    fn tensor_is_block_pattern() {
        let a = Mat::from_i64(&[&[1, 2], &[3, 4]]);
        let t = tensor(&a, &pauli(2));
        let zero = Mat::zeros(2, 2);
        let expect = Mat::from_blocks(&[vec![zero.clone(), a.clone()], vec![a, zero]]).unwrap();
        assert_eq!(t, expect);
    }
}
