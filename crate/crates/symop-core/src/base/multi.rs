//! Iterated tensor products with explicit basis bookkeeping.
//!
//! Multi-tensors are left-associated binary tensors, so the flat index of a
//! basis tuple has to be computed by the same fold that builds the object;
//! these helpers centralize that arithmetic and provide the signed
//! factor-permutation isomorphisms used by group actions on tensor powers.

use crate::errors::Result;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

use super::{koszul_sign, BaseMorphism, BaseObject, Variant};

/// The left-associated tensor of `parts` (the unit for an empty list).
pub fn multi_tensor<R: Scalar>(variant: Variant, parts: &[BaseObject<R>]) -> Result<BaseObject<R>> {
    let mut acc = BaseObject::unit(variant);
    for p in parts {
        acc = acc.tensor(p)?;
    }
    Ok(acc)
}

/// All degree/index tuples of the multi-tensor basis in degree `n`:
/// each entry is `(degrees per factor, index within factor degree)`.
pub fn basis_tuples<R: Scalar>(parts: &[BaseObject<R>], n: i64) -> Vec<(Vec<i64>, Vec<usize>)> {
    let mut out = Vec::new();
    let mut degs = Vec::new();
    let mut idxs = Vec::new();
    rec(parts, n, &mut degs, &mut idxs, &mut out);
    fn rec<R: Scalar>(
        parts: &[BaseObject<R>],
        remaining: i64,
        degs: &mut Vec<i64>,
        idxs: &mut Vec<usize>,
        out: &mut Vec<(Vec<i64>, Vec<usize>)>,
    ) {
        if parts.is_empty() {
            if remaining == 0 {
                out.push((degs.clone(), idxs.clone()));
            }
            return;
        }
        let p = &parts[0];
        for d in p.lo()..=p.hi() {
            let dim = p.dim_at(d);
            for i in 0..dim {
                degs.push(d);
                idxs.push(i);
                rec(&parts[1..], remaining - d, degs, idxs, out);
                degs.pop();
                idxs.pop();
            }
        }
    }
    out
}

/// Flat index of a basis tuple inside the degree-`sum(degs)` part of the
/// left-associated multi-tensor.
pub fn flat_index<R: Scalar>(variant: Variant, parts: &[BaseObject<R>], degs: &[i64], idxs: &[usize]) -> Result<usize> {
    let mut acc_obj = BaseObject::unit(variant);
    let mut acc_deg = 0i64;
    let mut acc_idx = 0usize;
    for (j, p) in parts.iter().enumerate() {
        let d = degs[j];
        let new_deg = acc_deg + d;
        let off = acc_obj
            .tensor_summands(p, new_deg)
            .iter()
            .find(|&&(a, b, _)| a == acc_deg && b == d)
            .map(|&(_, _, o)| o)
            .expect("summand exists for a valid tuple");
        acc_idx = off + acc_idx * p.dim_at(d) + idxs[j];
        acc_obj = acc_obj.tensor(p)?;
        acc_deg = new_deg;
    }
    Ok(acc_idx)
}

/// The isomorphism permuting tensor factors: factor `j` of `parts` moves to
/// slot `theta[j]`, with Koszul signs between odd-degree factors. The
/// target is the multi-tensor of the permuted parts.
pub fn factor_permutation<R: Scalar>(
    variant: Variant,
    parts: &[BaseObject<R>],
    theta: &[usize],
) -> Result<BaseMorphism<R>> {
    let k = parts.len();
    assert_eq!(theta.len(), k);
    let mut tgt_parts: Vec<BaseObject<R>> = vec![BaseObject::zero(variant); k];
    for j in 0..k {
        tgt_parts[theta[j]] = parts[j].clone();
    }
    let src = multi_tensor(variant, parts)?;
    let tgt = multi_tensor(variant, &tgt_parts)?;
    let mut blocks = Vec::new();
    for n in src.lo()..=src.hi() {
        let mut blk = Matrix::zeros(tgt.dim_at(n), src.dim_at(n));
        for (degs, idxs) in basis_tuples(parts, n) {
            let s = flat_index(variant, parts, &degs, &idxs)?;
            let mut tdegs = vec![0i64; k];
            let mut tidxs = vec![0usize; k];
            for j in 0..k {
                tdegs[theta[j]] = degs[j];
                tidxs[theta[j]] = idxs[j];
            }
            let t = flat_index(variant, &tgt_parts, &tdegs, &tidxs)?;
            let sign = koszul_sign(&degs, theta);
            *blk.at_mut(t, s) = R::from_i64(sign);
        }
        blocks.push(blk);
    }
    BaseMorphism::new(src, tgt, blocks)
}

/// Re-parenthesization `multi(parts) -> multi(parts[..split]) (x)
/// multi(parts[split..])`; a signless basis reindexing.
pub fn repack_iso<R: Scalar>(
    variant: Variant,
    parts: &[BaseObject<R>],
    split: usize,
) -> Result<BaseMorphism<R>> {
    let src = multi_tensor(variant, parts)?;
    let left = multi_tensor(variant, &parts[..split])?;
    let right = multi_tensor(variant, &parts[split..])?;
    let tgt = left.tensor(&right)?;
    let mut blocks = Vec::new();
    for n in src.lo()..=src.hi() {
        let mut blk = Matrix::zeros(tgt.dim_at(n), src.dim_at(n));
        for (degs, idxs) in basis_tuples(parts, n) {
            let s = flat_index(variant, parts, &degs, &idxs)?;
            let dl: i64 = degs[..split].iter().sum();
            let li = flat_index(variant, &parts[..split], &degs[..split], &idxs[..split])?;
            let ri = flat_index(variant, &parts[split..], &degs[split..], &idxs[split..])?;
            let off = left
                .tensor_summands(&right, n)
                .iter()
                .find(|&&(p, _, _)| p == dl)
                .map(|&(_, _, o)| o)
                .expect("summand");
            let t = off + li * right.dim_at(n - dl) + ri;
            *blk.at_mut(t, s) = R::one();
        }
        blocks.push(blk);
    }
    BaseMorphism::new(src, tgt, blocks)
}

/// Re-parenthesization `multi(parts) -> multi(group objects)` where group
/// `g` is the multi-tensor of a consecutive slice of `parts`; a signless
/// basis reindexing generalizing [`repack_iso`].
pub fn group_repack<R: Scalar>(
    variant: Variant,
    parts: &[BaseObject<R>],
    group_sizes: &[usize],
) -> Result<(BaseMorphism<R>, Vec<BaseObject<R>>)> {
    assert_eq!(group_sizes.iter().sum::<usize>(), parts.len(), "group sizes must cover the parts");
    let mut group_objs = Vec::new();
    let mut slices = Vec::new();
    let mut start = 0;
    for &g in group_sizes {
        slices.push((start, start + g));
        group_objs.push(multi_tensor(variant, &parts[start..start + g])?);
        start += g;
    }
    let src = multi_tensor(variant, parts)?;
    let tgt = multi_tensor(variant, &group_objs)?;
    let mut blocks = Vec::new();
    for n in src.lo()..=src.hi() {
        let mut blk = Matrix::zeros(tgt.dim_at(n), src.dim_at(n));
        for (degs, idxs) in basis_tuples(parts, n) {
            let s = flat_index(variant, parts, &degs, &idxs)?;
            let mut gdegs = Vec::new();
            let mut gidxs = Vec::new();
            for &(a, b) in &slices {
                let d: i64 = degs[a..b].iter().sum();
                let i = flat_index(variant, &parts[a..b], &degs[a..b], &idxs[a..b])?;
                gdegs.push(d);
                gidxs.push(i);
            }
            let t = flat_index(variant, &group_objs, &gdegs, &gidxs)?;
            *blk.at_mut(t, s) = R::one();
        }
        blocks.push(blk);
    }
    Ok((BaseMorphism::new(src, tgt, blocks)?, group_objs))
}

/// The tensor of a list of morphisms, as one morphism between the
/// multi-tensors (all degree 0, so no signs).
pub fn multi_tensor_morphism<R: Scalar>(variant: Variant, maps: &[BaseMorphism<R>]) -> Result<BaseMorphism<R>> {
    let unit = BaseObject::unit(variant);
    let mut acc = BaseMorphism::identity(&unit);
    for f in maps {
        acc = acc.tensor(f)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::disk;
    use crate::Q;

    #[test]
    fn flat_index_enumerates_every_basis_vector() {
        let d = disk::<Q>();
        let parts = vec![d.clone(), d.clone(), d.clone()];
        let obj = multi_tensor(Variant::Chain, &parts).unwrap();
        for n in obj.lo()..=obj.hi() {
            let tuples = basis_tuples(&parts, n);
            assert_eq!(tuples.len(), obj.dim_at(n));
            let mut seen = vec![false; obj.dim_at(n)];
            for (degs, idxs) in tuples {
                let f = flat_index(Variant::Chain, &parts, &degs, &idxs).unwrap();
                assert!(!seen[f]);
                seen[f] = true;
            }
        }
    }

    #[test]
    fn factor_permutation_is_iso_and_involutive_for_swap() {
        let d = disk::<Q>();
        let parts = vec![d.clone(), d.clone()];
        let swap = factor_permutation(Variant::Chain, &parts, &[1, 0]).unwrap();
        assert!(swap.is_iso());
        let back = factor_permutation(Variant::Chain, &parts, &[1, 0]).unwrap();
        let round = back.compose(&swap).unwrap();
        for n in round.source().lo()..=round.source().hi() {
            assert!(round.block_at(n).is_identity());
        }
    }

    #[test]
    fn factor_permutation_matches_symmetry_iso() {
        let d = disk::<Q>();
        let x = d.tensor(&d).unwrap();
        let viaperm = factor_permutation(Variant::Chain, &[x.clone(), d.clone()], &[1, 0]).unwrap();
        let viasym = crate::base::symmetry_iso(&x, &d).unwrap();
        assert_eq!(viaperm, viasym);
    }

    #[test]
    fn three_cycle_koszul_sign() {
        // rotating three odd-degree generators costs one transposition of
        // odds twice: sign +1 for a 3-cycle of odd elements
        let degs = vec![1, 1, 1];
        assert_eq!(koszul_sign(&degs, &[1, 2, 0]), 1);
        assert_eq!(koszul_sign(&degs, &[1, 0, 2]), -1);
    }
}
