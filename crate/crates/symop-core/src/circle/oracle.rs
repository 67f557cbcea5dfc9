//! The Kan-extension oracle for circle products.
//!
//! For reduced `B`, the left Kan extension description collapses the coend
//! to a direct sum over set partitions: one summand `A[t] (x) B[b_1] (x)
//! ... (x) B[b_t]` per partition of `[s]` into `t` blocks (ordered by
//! minimum). No quotients appear, which makes this an independent
//! computation path; the comparison with the coend engine is an explicit
//! isomorphism certified exactly, including equivariance.

use crate::base::multi::{factor_permutation, multi_tensor};
use crate::base::{sum_with_injections, BaseMorphism, BaseObject};
use crate::errors::{EngineError, Result};
use crate::group::{GObject, Perm, Shape};
use crate::scalar::Scalar;
use crate::symseq::SymSeq;

use super::Circle;

/// All set partitions of `{0..s-1}`: blocks ordered by minimum, elements
/// ascending inside each block. The empty set has exactly the empty
/// partition.
pub fn set_partitions(s: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<Vec<usize>>> = vec![vec![]];
    for x in 0..s {
        let mut next = Vec::new();
        for p in &out {
            for bi in 0..p.len() {
                let mut q = p.clone();
                q[bi].push(x);
                next.push(q);
            }
            let mut q = p.clone();
            q.push(vec![x]);
            next.push(q);
        }
        out = next;
    }
    out
}

/// Kan-extension model of one level of `A o B`, with the certified
/// comparison isomorphism into the engine's coend computation.
#[derive(Clone, Debug)]
pub struct KanOracle<R> {
    /// the level as an independent `Sigma_s`-object
    pub model: GObject<R>,
    pub partitions: Vec<Vec<Vec<usize>>>,
    /// per partition: inclusion of `A[t] (x) B[blocks]` into the model
    pub incls: Vec<BaseMorphism<R>>,
    pub projs: Vec<BaseMorphism<R>>,
    /// the certified equivariant isomorphism onto the engine level
    pub iso: BaseMorphism<R>,
}

/// Builds the oracle for level `s` and certifies it against the engine's
/// `circle_full(a, b)` output.
pub fn circle_kan_oracle<R: Scalar>(
    a: &SymSeq<R>,
    b: &SymSeq<R>,
    s: usize,
    engine: &Circle<R>,
) -> Result<KanOracle<R>> {
    if !b.reduced() {
        return Err(EngineError::NonReducedWithoutFlag("Kan oracle needs a reduced right factor".into()));
    }
    let n = a.bound();
    let variant = a.variant();
    let partitions: Vec<Vec<Vec<usize>>> = set_partitions(s)
        .into_iter()
        .filter(|p| p.len() <= n && p.iter().all(|blk| blk.len() <= n))
        .collect();
    // components
    let mut comp_objs = Vec::new();
    let mut b_parts_list = Vec::new();
    for p in &partitions {
        let b_parts: Vec<BaseObject<R>> = p.iter().map(|blk| b.level(blk.len()).carrier().clone()).collect();
        let comp = a.level(p.len()).carrier().tensor(&multi_tensor(variant, &b_parts)?)?;
        comp_objs.push(comp);
        b_parts_list.push(b_parts);
    }
    let (carrier, incls, projs) = sum_with_injections(variant, &comp_objs)?;
    // model Sigma_s action
    let mut gens = Vec::new();
    for &i in &Shape::sigma(s).gen_positions() {
        let mut acc = BaseMorphism::zero(carrier.clone(), carrier.clone());
        for (pidx, p) in partitions.iter().enumerate() {
            let t = p.len();
            let block_of = |x: usize| p.iter().position(|blk| blk.contains(&x)).expect("partition covers");
            let j1 = block_of(i);
            let j2 = block_of(i + 1);
            let map = if j1 == j2 {
                // adjacent transposition inside one block
                let r = p[j1].iter().position(|&x| x == i).expect("member");
                let level = p[j1].len();
                let gen_idx = Shape::sigma(level)
                    .gen_positions()
                    .iter()
                    .position(|&q| q == r)
                    .expect("in-range transposition");
                let mut maps: Vec<BaseMorphism<R>> =
                    b_parts_list[pidx].iter().map(BaseMorphism::identity).collect();
                maps[j1] = b.level(level).gens()[gen_idx].clone();
                let bmap = crate::base::multi::multi_tensor_morphism(variant, &maps)?;
                let amap = BaseMorphism::identity(a.level(t).carrier());
                let chain = incls[pidx].compose(&amap.tensor(&bmap)?)?.compose(&projs[pidx])?;
                chain
            } else {
                // swap membership of i and i+1 across two blocks
                let mut q: Vec<Vec<usize>> = p
                    .iter()
                    .map(|blk| {
                        let mut nb: Vec<usize> = blk
                            .iter()
                            .map(|&x| {
                                if x == i {
                                    i + 1
                                } else if x == i + 1 {
                                    i
                                } else {
                                    x
                                }
                            })
                            .collect();
                        nb.sort_unstable();
                        nb
                    })
                    .collect();
                // re-sort blocks by minimum and remember where each went
                let mut order: Vec<usize> = (0..t).collect();
                order.sort_by_key(|&j| q[j][0]);
                let mut theta_img = vec![0usize; t];
                for (new_pos, &old_j) in order.iter().enumerate() {
                    theta_img[old_j] = new_pos;
                }
                q.sort_by_key(|blk| blk[0]);
                let qidx = partitions.iter().position(|r| *r == q).expect("closed under swaps");
                let theta = Perm::new(theta_img.clone())?;
                let bmap = factor_permutation(variant, &b_parts_list[pidx], &theta_img)?;
                let amap = a.level(t).act(&theta.inverse())?;
                incls[qidx].compose(&amap.tensor(&bmap)?)?.compose(&projs[pidx])?
            };
            acc = acc.add(&map)?;
        }
        gens.push(acc);
    }
    let model = GObject::new(Shape::sigma(s), carrier.clone(), gens)?;
    // comparison isomorphism into the engine level
    let level = &engine.levels[s];
    let mut iso = BaseMorphism::zero(carrier.clone(), level.carrier.clone());
    for (pidx, p) in partitions.iter().enumerate() {
        let t = p.len();
        let part = level.parts.iter().find(|q| q.t == t).expect("inner-arity part");
        // the set map of the partition
        let pi: Vec<usize> = (0..s)
            .map(|x| p.iter().position(|blk| blk.contains(&x)).expect("covers"))
            .collect();
        let pi_idx = part.power.pi_index(&pi);
        let a_id = BaseMorphism::identity(a.level(t).carrier());
        let into_pre = a_id.tensor(&part.power.incls[pi_idx])?;
        let chain = part.incl.compose(&part.quot.proj.compose(&into_pre)?)?.compose(&projs[pidx])?;
        iso = iso.add(&chain)?;
    }
    if !iso.is_iso() {
        return Err(EngineError::CertificateFailed(format!(
            "Kan oracle comparison is not an isomorphism at level {s}"
        )));
    }
    for (gi, g) in model.gens().iter().enumerate() {
        let lhs = iso.compose(g)?;
        let rhs = engine.seq.level(s).gens()[gi].compose(&iso)?;
        if lhs != rhs {
            return Err(EngineError::CertificateFailed(format!(
                "Kan oracle comparison is not equivariant at level {s}, generator {gi}"
            )));
        }
    }
    Ok(KanOracle { model, partitions, incls, projs, iso })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::Variant;
    use crate::circle::{circle_full, Mode};
    use crate::Q;

    #[test]
    fn partition_counts_are_bell_numbers() {
        assert_eq!(set_partitions(0).len(), 1);
        assert_eq!(set_partitions(1).len(), 1);
        assert_eq!(set_partitions(2).len(), 2);
        assert_eq!(set_partitions(3).len(), 5);
        assert_eq!(set_partitions(4).len(), 15);
    }

    #[test]
    fn oracle_matches_unit_circle() {
        let i = SymSeq::<Q>::circle_unit(3, Variant::Vect);
        let engine = circle_full(&i, &i, Mode::Exact).unwrap();
        for s in 0..=3 {
            let oracle = circle_kan_oracle(&i, &i, s, &engine).unwrap();
            assert_eq!(oracle.model.dim(), engine.seq.level(s).dim());
        }
    }

    #[test]
    fn oracle_handles_nontrivial_actions() {
        // A with the regular representation at arity 2, against I: the
        // model action must transport the block reordering into act_A.
        let mut a = SymSeq::<Q>::zero(3, Variant::Vect);
        a.set_level(1, crate::group::GObject::trivial(Shape::sigma(1), BaseObject::vect(1)));
        a.set_level(2, crate::group::GObject::regular(2, Variant::Vect));
        a.set_level(3, crate::group::GObject::regular(3, Variant::Vect));
        let i = SymSeq::<Q>::circle_unit(3, Variant::Vect);
        let engine = circle_full(&a, &i, Mode::Exact).unwrap();
        for s in 0..=3 {
            let oracle = circle_kan_oracle(&a, &i, s, &engine).unwrap();
            assert_eq!(oracle.model.dim(), a.level(s).dim());
        }
        // and against a fatter reduced B
        let mut b = SymSeq::<Q>::zero(3, Variant::Vect);
        b.set_level(1, crate::group::GObject::trivial(Shape::sigma(1), BaseObject::vect(2)));
        b.set_level(2, crate::group::GObject::regular(2, Variant::Vect));
        let engine2 = circle_full(&a, &b, Mode::Exact).unwrap();
        for s in 0..=3 {
            circle_kan_oracle(&a, &b, s, &engine2).unwrap();
        }
    }

    #[test]
    fn oracle_rejects_nonreduced() {
        let mut b = SymSeq::<Q>::circle_unit(2, Variant::Vect);
        b.set_level(
            0,
            crate::group::GObject::trivial(Shape::sigma(0), BaseObject::unit(Variant::Vect)),
        );
        let a = SymSeq::<Q>::circle_unit(2, Variant::Vect);
        let engine = circle_full(&a, &b, Mode::AllowTruncation).unwrap();
        assert!(circle_kan_oracle(&a, &b, 1, &engine).is_err());
    }

    #[test]
    fn oracle_level_zero_of_reduced_pair_is_zero() {
        let i = SymSeq::<Q>::circle_unit(2, Variant::Vect);
        let engine = circle_full(&i, &i, Mode::Exact).unwrap();
        let oracle = circle_kan_oracle(&i, &i, 0, &engine).unwrap();
        assert_eq!(oracle.model.dim(), 0);
    }
}
