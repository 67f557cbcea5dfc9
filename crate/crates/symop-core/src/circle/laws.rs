//! Canonical structure maps of the circle calculus: associativity,
//! interchange with the tensor product, and distribution over evaluation.
//!
//! Each map is constructed on pre-quotient presentations by explicit
//! summand bookkeeping (inclusions, projections, signed factor
//! permutations) and then descended through the coend quotients with
//! exact certificates. Callers certify invertibility; descent failures
//! surface as errors rather than wrong matrices.

use crate::base::multi::{factor_permutation, group_repack, multi_tensor_morphism, repack_iso};
use crate::base::{sum_with_injections, BaseMorphism, BaseObject};
use crate::errors::{EngineError, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::symseq::{fiber_sizes, SymSeq, SymSeqMorphism, TensorLevel};

use super::{Circle, Evaluation};

/// Descends `g : P (x) W -> T` through a chain surjection `proj : P -> L`
/// with a degreewise linear section, certifying the factorization.
fn descend_tensored<R: Scalar>(
    proj: &BaseMorphism<R>,
    sect_at: &dyn Fn(i64) -> Matrix<R>,
    right: &BaseObject<R>,
    g: &BaseMorphism<R>,
) -> Result<BaseMorphism<R>> {
    let p_obj = proj.source();
    let l_obj = proj.target();
    let src = l_obj.tensor(right)?;
    let mut blocks = Vec::new();
    for n in src.lo()..=src.hi() {
        let mut sect_tensor = Matrix::zeros(p_obj.tensor(right)?.dim_at(n), src.dim_at(n));
        for &(p, q, soff) in &l_obj.tensor_summands(right, n) {
            let sp = sect_at(p);
            if sp.rows() == 0 || sp.cols() == 0 {
                continue;
            }
            let blk = sp.kronecker(&Matrix::identity(right.dim_at(q)));
            let toff = p_obj
                .tensor_summands(right, n)
                .iter()
                .find(|&&(tp, tq, _)| tp == p && tq == q)
                .map(|&(_, _, o)| o)
                .expect("matching summand");
            for i in 0..blk.rows() {
                for j in 0..blk.cols() {
                    let v = blk.at(i, j);
                    if !v.is_zero() {
                        *sect_tensor.at_mut(toff + i, soff + j) = v.clone();
                    }
                }
            }
        }
        blocks.push(g.block_at(n).mul(&sect_tensor));
    }
    let gbar = BaseMorphism::new(src, g.target().clone(), blocks)?;
    let proj_tensor = proj.tensor(&BaseMorphism::identity(right))?;
    let roundtrip = gbar.compose(&proj_tensor)?;
    let lo = g.source().lo().min(roundtrip.source().lo());
    let hi = g.source().hi().max(roundtrip.source().hi());
    for n in lo..=hi {
        if roundtrip.block_at(n) != g.block_at(n) {
            return Err(EngineError::DescentFailed(format!("tensored descent fails at degree {n}")));
        }
    }
    Ok(gbar)
}

/// The canonical associativity isomorphism `(A o B) o C -> A o (B o C)`.
///
/// `lhs` must be `circle_full(ab.seq, c)` for `ab = circle_full(a, b)`,
/// and `rhs` must be `circle_full(a, bc.seq)` for `bc = circle_full(b, c)`.
#[allow(clippy::too_many_arguments)]
pub fn circle_assoc_iso<R: Scalar>(
    a: &SymSeq<R>,
    b: &SymSeq<R>,
    c: &SymSeq<R>,
    ab: &Circle<R>,
    bc: &Circle<R>,
    lhs: &Circle<R>,
    rhs: &Circle<R>,
) -> Result<SymSeqMorphism<R>> {
    let variant = a.variant();
    let bound = a.bound();
    let mut levels = Vec::new();
    for s in 0..=bound {
        let lhs_level = &lhs.levels[s];
        let rhs_level = &rhs.levels[s];
        let mut acc = BaseMorphism::zero(lhs_level.carrier.clone(), rhs_level.carrier.clone());
        for part_l in &lhs_level.parts {
            let t = part_l.t;
            let pow_c = &part_l.power;
            let ab_level = &ab.levels[t];
            // present AB[t] as a sum of its pre-quotient objects
            let pre_objs: Vec<BaseObject<R>> = ab_level.parts.iter().map(|p| p.pre.clone()).collect();
            let (pre_sum, pre_incls, pre_projs) = sum_with_injections(variant, &pre_objs)?;
            let st = pre_sum.tensor(pow_c.gobj.carrier())?;
            let mut g_t = BaseMorphism::zero(st.clone(), rhs_level.carrier.clone());
            for (ui, part_ab) in ab_level.parts.iter().enumerate() {
                let u = part_ab.t;
                let pow_b = &part_ab.power;
                for (rho_idx, rho) in pow_b.pis.iter().enumerate() {
                    for (pi_idx, pi) in pow_c.pis.iter().enumerate() {
                        // extraction to (A[u] (x) Bpart) (x) Cpart
                        let a_id = BaseMorphism::identity(a.level(u).carrier());
                        let left = a_id.tensor(&pow_b.projs[rho_idx])?.compose(&pre_projs[ui])?;
                        let extract = left.tensor(&pow_c.projs[pi_idx])?;
                        let b_parts = &pow_b.parts[rho_idx];
                        let c_parts = &pow_c.parts[pi_idx];
                        let mut flat: Vec<BaseObject<R>> = vec![a.level(u).carrier().clone()];
                        flat.extend(b_parts.iter().cloned());
                        flat.extend(c_parts.iter().cloned());
                        // mu : multi(flat) -> (A (x) mB) (x) mC
                        let (grp, _) = group_repack(variant, &flat, &[1 + t_len(b_parts), c_parts.len()])?;
                        let rp1 = repack_iso(variant, &flat[..1 + b_parts.len()], 1)?;
                        let c_group = crate::base::multi::multi_tensor(variant, c_parts)?;
                        let mu = rp1.tensor(&BaseMorphism::identity(&c_group))?.compose(&grp)?;
                        let nu = mu.inverse()?;
                        // theta: regroup C-factors behind their B-factor
                        let fibers_b: Vec<Vec<usize>> = (0..u)
                            .map(|i| (0..t).filter(|&j| rho[j] == i).collect())
                            .collect();
                        let mut theta = vec![0usize; 1 + u + t];
                        let mut group_sizes = vec![1usize];
                        let mut pos = 1usize;
                        for (i, fib) in fibers_b.iter().enumerate() {
                            theta[1 + i] = pos;
                            pos += 1;
                            for &j in fib {
                                theta[1 + u + j] = pos;
                                pos += 1;
                            }
                            group_sizes.push(1 + fib.len());
                        }
                        let perm = factor_permutation(variant, &flat, &theta)?;
                        let mut flat_perm: Vec<BaseObject<R>> = vec![BaseObject::zero(variant); flat.len()];
                        for (j, obj) in flat.iter().enumerate() {
                            flat_perm[theta[j]] = obj.clone();
                        }
                        let (stage, group_objs) = group_repack(variant, &flat_perm, &group_sizes)?;
                        // per-inner-block maps into (B o C) levels
                        let f_sizes = fiber_sizes(pi, t);
                        let mut lam = Vec::new();
                        let mut pi_prime = vec![0usize; s];
                        for (x, &j) in pi.iter().enumerate() {
                            pi_prime[x] = rho[j];
                        }
                        for (i, fib) in fibers_b.iter().enumerate() {
                            let b_i = fib.len();
                            let m_i: usize = fib.iter().map(|&j| f_sizes[j]).sum();
                            let bc_part = bc.levels[m_i]
                                .parts
                                .iter()
                                .find(|p| p.t == b_i)
                                .expect("inner-arity part");
                            let positions: Vec<usize> = (0..s).filter(|&x| rho[pi[x]] == i).collect();
                            let pi_i: Vec<usize> = positions
                                .iter()
                                .map(|&x| fib.iter().position(|&j| j == pi[x]).expect("fiber member"))
                                .collect();
                            let pi_i_idx = bc_part.power.pi_index(&pi_i);
                            let slice: Vec<BaseObject<R>> = std::iter::once(b.level(b_i).carrier().clone())
                                .chain(fib.iter().map(|&j| c.level(f_sizes[j]).carrier().clone()))
                                .collect();
                            let rp = repack_iso(variant, &slice, 1)?;
                            let b_id = BaseMorphism::identity(b.level(b_i).carrier());
                            let into_pre = b_id.tensor(&bc_part.power.incls[pi_i_idx])?;
                            let chain = bc_part
                                .incl
                                .compose(&bc_part.quot.proj.compose(&into_pre)?)?
                                .compose(&rp)?;
                            lam.push(chain);
                        }
                        let lam_map = multi_tensor_morphism(variant, &lam)?;
                        let a_keep = BaseMorphism::identity(&group_objs[0]);
                        let lam_full = a_keep.tensor(&lam_map)?;
                        let rp_top = repack_iso(variant, &group_objs, 1)?;
                        // target: A (x) powBC-part at pi' = rho . pi
                        let part_r = rhs_level.parts.iter().find(|p| p.t == u).expect("outer part");
                        let pi_prime_idx = part_r.power.pi_index(&pi_prime);
                        let a_id2 = BaseMorphism::identity(a.level(u).carrier());
                        let into_pre_r = a_id2.tensor(&part_r.power.incls[pi_prime_idx])?;
                        let finish = part_r.incl.compose(&part_r.quot.proj.compose(&into_pre_r)?)?;
                        let chain = finish
                            .compose(&lam_full)?
                            .compose(&rp_top)?
                            .compose(&stage)?
                            .compose(&perm)?
                            .compose(&nu)?
                            .compose(&extract)?;
                        g_t = g_t.add(&chain)?;
                    }
                }
            }
            // descend through the blockwise inner quotients, tensored with
            // the C power
            let mut proj_level_blocks = Vec::new();
            for n in pre_sum.lo()..=pre_sum.hi() {
                let mut m = Matrix::zeros(ab_level.carrier.dim_at(n), pre_sum.dim_at(n));
                for (ui, part_ab) in ab_level.parts.iter().enumerate() {
                    let piece = part_ab
                        .incl
                        .block_at(n)
                        .mul(&part_ab.quot.proj.block_at(n))
                        .mul(&pre_projs[ui].block_at(n));
                    m = m.add(&piece);
                }
                proj_level_blocks.push(m);
            }
            let proj_level = BaseMorphism::new(pre_sum.clone(), ab_level.carrier.clone(), proj_level_blocks)?;
            let ab_parts = ab_level.parts.clone();
            let pre_incls_cl = pre_incls.clone();
            let pre_sum_cl = pre_sum.clone();
            let ab_carrier = ab_level.carrier.clone();
            let sect_at = move |n: i64| -> Matrix<R> {
                let mut m = Matrix::zeros(pre_sum_cl.dim_at(n), ab_carrier.dim_at(n));
                let mut col_off = 0usize;
                for (ui, part_ab) in ab_parts.iter().enumerate() {
                    let sect = part_ab.quot.sect_block_at(n);
                    let inc = pre_incls_cl[ui].block_at(n);
                    if sect.rows() > 0 && sect.cols() > 0 {
                        let placed = inc.mul(&sect);
                        for i in 0..placed.rows() {
                            for j in 0..placed.cols() {
                                let v = placed.at(i, j);
                                if !v.is_zero() {
                                    *m.at_mut(i, col_off + j) = v.clone();
                                }
                            }
                        }
                    }
                    col_off += part_ab.quot.object.dim_at(n);
                }
                m
            };
            let g_hat = descend_tensored(&proj_level, &sect_at, pow_c.gobj.carrier(), &g_t)?;
            let descended = part_l.quot.descend(&g_hat)?;
            acc = acc.add(&descended.compose(&part_l.proj)?)?;
        }
        levels.push(acc);
    }
    SymSeqMorphism::new(lhs.seq.clone(), rhs.seq.clone(), levels)
}

fn t_len<T>(v: &[T]) -> usize {
    v.len()
}

/// The canonical interchange isomorphism
/// `(A (x) B) o C -> (A o C) (x) (B o C)`.
///
/// `lhs` is `circle_full(tensor(a, b), c)` with the tensor layout
/// `ab_layout`; `ac` and `bc` are the side circle products; `tgt` with
/// `tgt_layout` is `tensor(ac.seq, bc.seq)`.
#[allow(clippy::too_many_arguments)]
pub fn interchange_iso<R: Scalar>(
    a: &SymSeq<R>,
    b: &SymSeq<R>,
    c: &SymSeq<R>,
    ab_layout: &[TensorLevel<R>],
    lhs: &Circle<R>,
    ac: &Circle<R>,
    bc: &Circle<R>,
    tgt: &SymSeq<R>,
    tgt_layout: &[TensorLevel<R>],
) -> Result<SymSeqMorphism<R>> {
    let variant = a.variant();
    let bound = a.bound();
    let mut levels = Vec::new();
    for s in 0..=bound {
        let lhs_level = &lhs.levels[s];
        let tgt_level = &tgt_layout[s];
        let mut acc = BaseMorphism::zero(lhs_level.carrier.clone(), tgt_level.carrier.clone());
        for part_l in &lhs_level.parts {
            let t = part_l.t;
            let pow_c = &part_l.power;
            let ab_lvl = &ab_layout[t];
            let mut g_t = BaseMorphism::zero(part_l.pre.clone(), tgt_level.carrier.clone());
            for tp in &ab_lvl.parts {
                let (t1, t2) = (tp.s1, tp.s2);
                for (ci, coset) in tp.cosets.iter().enumerate() {
                    let w: Vec<usize> = (0..t).map(|j| usize::from(coset.apply(j) >= t1)).collect();
                    for (pi_idx, pi) in pow_c.pis.iter().enumerate() {
                        let extract = tp.proj[ci].tensor(&pow_c.projs[pi_idx])?;
                        let c_parts = &pow_c.parts[pi_idx];
                        let f_sizes = fiber_sizes(pi, t);
                        let mut flat: Vec<BaseObject<R>> =
                            vec![a.level(t1).carrier().clone(), b.level(t2).carrier().clone()];
                        flat.extend(c_parts.iter().cloned());
                        let (grp, _) = group_repack(variant, &flat, &[2, t])?;
                        let rp1 = repack_iso(variant, &flat[..2], 1)?;
                        let c_group = crate::base::multi::multi_tensor(variant, c_parts)?;
                        let mu = rp1.tensor(&BaseMorphism::identity(&c_group))?.compose(&grp)?;
                        let nu = mu.inverse()?;
                        let a_side: Vec<usize> = (0..t).filter(|&j| w[j] == 0).collect();
                        let b_side: Vec<usize> = (0..t).filter(|&j| w[j] == 1).collect();
                        let mut theta = vec![0usize; 2 + t];
                        theta[0] = 0;
                        theta[1] = 1 + a_side.len();
                        for (r, &j) in a_side.iter().enumerate() {
                            theta[2 + j] = 1 + r;
                        }
                        for (r, &j) in b_side.iter().enumerate() {
                            theta[2 + j] = 2 + a_side.len() + r;
                        }
                        let perm = factor_permutation(variant, &flat, &theta)?;
                        let mut flat_perm: Vec<BaseObject<R>> = vec![BaseObject::zero(variant); flat.len()];
                        for (j, obj) in flat.iter().enumerate() {
                            flat_perm[theta[j]] = obj.clone();
                        }
                        let (stage, group_objs) =
                            group_repack(variant, &flat_perm, &[1 + a_side.len(), 1 + b_side.len()])?;
                        let s1: usize = a_side.iter().map(|&j| f_sizes[j]).sum();
                        let s2: usize = b_side.iter().map(|&j| f_sizes[j]).sum();
                        let v_word: Vec<usize> = (0..s).map(|x| w[pi[x]]).collect();
                        let build_side = |side: &[usize],
                                          seq: &SymSeq<R>,
                                          eng: &Circle<R>,
                                          s_side: usize,
                                          t_side: usize,
                                          label: usize|
                         -> Result<BaseMorphism<R>> {
                            let positions: Vec<usize> = (0..s).filter(|&x| v_word[x] == label).collect();
                            let pi_side: Vec<usize> = positions
                                .iter()
                                .map(|&x| side.iter().position(|&j| j == pi[x]).expect("side fiber"))
                                .collect();
                            let part = eng.levels[s_side]
                                .parts
                                .iter()
                                .find(|p| p.t == t_side)
                                .expect("side part");
                            let idx = part.power.pi_index(&pi_side);
                            let slice: Vec<BaseObject<R>> =
                                std::iter::once(seq.level(t_side).carrier().clone())
                                    .chain(side.iter().map(|&j| c.level(f_sizes[j]).carrier().clone()))
                                    .collect();
                            let rp = repack_iso(variant, &slice, 1)?;
                            let idm = BaseMorphism::identity(seq.level(t_side).carrier());
                            let into_pre = idm.tensor(&part.power.incls[idx])?;
                            part.incl.compose(&part.quot.proj.compose(&into_pre)?)?.compose(&rp)
                        };
                        let alpha = build_side(&a_side, a, ac, s1, t1, 0)?;
                        let beta = build_side(&b_side, b, bc, s2, t2, 1)?;
                        let both = alpha.tensor(&beta)?;
                        let rp_top = repack_iso(variant, &group_objs, 1)?;
                        let tpart = tgt_level
                            .parts
                            .iter()
                            .find(|p| p.s1 == s1 && p.s2 == s2)
                            .expect("target part");
                        let cj = tpart
                            .cosets
                            .iter()
                            .position(|d| {
                                (0..s).map(|x| usize::from(d.apply(x) >= s1)).collect::<Vec<_>>() == v_word
                            })
                            .expect("target coset");
                        let chain = tpart.incl[cj]
                            .compose(&both)?
                            .compose(&rp_top)?
                            .compose(&stage)?
                            .compose(&perm)?
                            .compose(&nu)?
                            .compose(&extract)?;
                        g_t = g_t.add(&chain)?;
                    }
                }
            }
            let descended = part_l.quot.descend(&g_t)?;
            acc = acc.add(&descended.compose(&part_l.proj)?)?;
        }
        levels.push(acc);
    }
    SymSeqMorphism::new(lhs.seq.clone(), tgt.clone(), levels)
}

/// Distribution of evaluation over the tensor product:
/// `(A (x) B) o (Z) -> (A o (Z)) (x) (B o (Z))`.
pub fn evaluate_interchange_iso<R: Scalar>(
    a: &SymSeq<R>,
    b: &SymSeq<R>,
    z: &BaseObject<R>,
    ab_layout: &[TensorLevel<R>],
    lhs: &Evaluation<R>,
    ea: &Evaluation<R>,
    eb: &Evaluation<R>,
) -> Result<BaseMorphism<R>> {
    let variant = a.variant();
    let target = ea.object.tensor(&eb.object)?;
    let mut acc = BaseMorphism::zero(lhs.object.clone(), target.clone());
    for part_l in &lhs.parts {
        let t = part_l.t;
        let ab_lvl = &ab_layout[t];
        let mut g_t = BaseMorphism::zero(part_l.pre.clone(), target.clone());
        for tp in &ab_lvl.parts {
            let (t1, t2) = (tp.s1, tp.s2);
            for (ci, coset) in tp.cosets.iter().enumerate() {
                let w: Vec<usize> = (0..t).map(|j| usize::from(coset.apply(j) >= t1)).collect();
                let extract = tp.proj[ci].tensor(&BaseMorphism::identity(part_l.power.carrier()))?;
                let mut flat: Vec<BaseObject<R>> =
                    vec![a.level(t1).carrier().clone(), b.level(t2).carrier().clone()];
                flat.extend(std::iter::repeat(z.clone()).take(t));
                let (grp, _) = group_repack(variant, &flat, &[2, t])?;
                let rp1 = repack_iso(variant, &flat[..2], 1)?;
                let z_group = crate::base::multi::multi_tensor(variant, &vec![z.clone(); t])?;
                let mu = rp1.tensor(&BaseMorphism::identity(&z_group))?.compose(&grp)?;
                let nu = mu.inverse()?;
                let a_side: Vec<usize> = (0..t).filter(|&j| w[j] == 0).collect();
                let b_side: Vec<usize> = (0..t).filter(|&j| w[j] == 1).collect();
                let mut theta = vec![0usize; 2 + t];
                theta[0] = 0;
                theta[1] = 1 + a_side.len();
                for (r, &j) in a_side.iter().enumerate() {
                    theta[2 + j] = 1 + r;
                }
                for (r, &j) in b_side.iter().enumerate() {
                    theta[2 + j] = 2 + a_side.len() + r;
                }
                let perm = factor_permutation(variant, &flat, &theta)?;
                let mut flat_perm: Vec<BaseObject<R>> = vec![BaseObject::zero(variant); flat.len()];
                for (j, obj) in flat.iter().enumerate() {
                    flat_perm[theta[j]] = obj.clone();
                }
                let (stage, group_objs) = group_repack(variant, &flat_perm, &[1 + t1, 1 + t2])?;
                let side_map = |seq: &SymSeq<R>, eng: &Evaluation<R>, t_side: usize| -> Result<BaseMorphism<R>> {
                    let part = &eng.parts[t_side];
                    let slice: Vec<BaseObject<R>> = std::iter::once(seq.level(t_side).carrier().clone())
                        .chain(std::iter::repeat(z.clone()).take(t_side))
                        .collect();
                    let rp = repack_iso(variant, &slice, 1)?;
                    part.incl.compose(&part.quot.proj)?.compose(&rp)
                };
                let alpha = side_map(a, ea, t1)?;
                let beta = side_map(b, eb, t2)?;
                let both = alpha.tensor(&beta)?;
                let rp_top = repack_iso(variant, &group_objs, 1)?;
                let chain = both
                    .compose(&rp_top)?
                    .compose(&stage)?
                    .compose(&perm)?
                    .compose(&nu)?
                    .compose(&extract)?;
                g_t = g_t.add(&chain)?;
            }
        }
        let descended = part_l.quot.descend(&g_t)?;
        acc = acc.add(&descended.compose(&part_l.proj)?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::Variant;
    use crate::circle::{circle_full, evaluate, Mode};
    use crate::group::{GObject, Shape};
    use crate::symseq::tensor_symseq_full;
    use crate::Q;

    fn small_seq() -> SymSeq<Q> {
        let mut a = SymSeq::<Q>::zero(3, Variant::Vect);
        a.set_level(1, GObject::trivial(Shape::sigma(1), BaseObject::vect(1)));
        a.set_level(2, GObject::regular(2, Variant::Vect));
        a
    }

    #[test]
    fn assoc_iso_on_units_and_regulars() {
        let i = SymSeq::<Q>::circle_unit(3, Variant::Vect);
        let a = small_seq();
        for (x, y, z) in [(&i, &i, &i), (&a, &i, &i), (&i, &a, &i), (&a, &a, &i), (&a, &i, &a)] {
            let ab = circle_full(x, y, Mode::Exact).unwrap();
            let bc = circle_full(y, z, Mode::Exact).unwrap();
            let lhs = circle_full(&ab.seq, z, Mode::Exact).unwrap();
            let rhs = circle_full(x, &bc.seq, Mode::Exact).unwrap();
            let iso = circle_assoc_iso(x, y, z, &ab, &bc, &lhs, &rhs).unwrap();
            assert!(iso.is_iso(), "associativity comparison must be invertible");
        }
    }

    #[test]
    fn interchange_iso_on_small_instances() {
        let i = SymSeq::<Q>::circle_unit(3, Variant::Vect);
        let a = small_seq();
        for (x, y, z) in [(&i, &i, &i), (&a, &i, &i), (&a, &a, &i)] {
            let (xy, xy_layout) = tensor_symseq_full(x, y).unwrap();
            let lhs = circle_full(&xy, z, Mode::Exact).unwrap();
            let xz = circle_full(x, z, Mode::Exact).unwrap();
            let yz = circle_full(y, z, Mode::Exact).unwrap();
            let (tgt, tgt_layout) = tensor_symseq_full(&xz.seq, &yz.seq).unwrap();
            let iso = interchange_iso(x, y, z, &xy_layout, &lhs, &xz, &yz, &tgt, &tgt_layout).unwrap();
            assert!(iso.is_iso());
        }
    }

    #[test]
    fn evaluation_distributes_over_tensor() {
        let a = small_seq();
        let b = SymSeq::<Q>::circle_unit(3, Variant::Vect);
        let z = BaseObject::vect(2);
        let (ab, ab_layout) = tensor_symseq_full(&a, &b).unwrap();
        let lhs = evaluate(&ab, &z, Mode::Exact).unwrap();
        let ea = evaluate(&a, &z, Mode::Exact).unwrap();
        let eb = evaluate(&b, &z, Mode::Exact).unwrap();
        let iso = evaluate_interchange_iso(&a, &b, &z, &ab_layout, &lhs, &ea, &eb).unwrap();
        assert!(iso.is_iso());
    }
}
