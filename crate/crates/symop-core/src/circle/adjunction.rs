//! Adjunction transforms and their exact bijection certificates.
//!
//! For the closed structures `hom(A o B, C) = hom(A, Map^o(B, C))` and
//! `hom(A (x) B, C) = hom(A, Map^(x)(B, C))` the transforms are computed
//! on hom-space bases and certified to be invertible linear maps; the
//! base-category adjunction is certified through curry/uncurry.

use crate::base::{BaseMorphism, BaseObject};
use crate::errors::{EngineError, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::symseq::{
    map_tensor_full, symseq_hom_basis, tensor_symseq_full, MapTensor, SymSeq, SymSeqMorphism,
};

use super::{circle_full, map_circle_full, Circle, MapCircle, Mode};

/// Coordinates of a morphism with respect to a basis of the hom space.
pub fn morphism_coords<R: Scalar>(
    m: &SymSeqMorphism<R>,
    basis: &[SymSeqMorphism<R>],
) -> Result<Vec<R>> {
    let vec_of = |f: &SymSeqMorphism<R>| -> Vec<R> {
        let mut out = Vec::new();
        for n in 0..=f.source().bound() {
            let b = f.level(n);
            let lo = b.source().lo();
            let hi = b.source().hi();
            for d in lo..=hi {
                let blk = b.block_at(d);
                for i in 0..blk.rows() {
                    for j in 0..blk.cols() {
                        out.push(blk.at(i, j).clone());
                    }
                }
            }
        }
        out
    };
    let target = vec_of(m);
    let len = target.len();
    let mut a = Matrix::zeros(len, basis.len());
    for (c, bm) in basis.iter().enumerate() {
        let v = vec_of(bm);
        if v.len() != len {
            return Err(EngineError::ShapeMismatch("basis element has mismatched shape".into()));
        }
        for (r, x) in v.into_iter().enumerate() {
            *a.at_mut(r, c) = x;
        }
    }
    let mut rhs = Matrix::zeros(len, 1);
    for (r, x) in target.into_iter().enumerate() {
        *rhs.at_mut(r, 0) = x;
    }
    let x = a
        .solve(&rhs)
        .ok_or_else(|| EngineError::CertificateFailed("morphism lies outside the hom space".into()))?;
    Ok((0..basis.len()).map(|i| x.at(i, 0).clone()).collect())
}

/// The circle adjoint `phi-sharp : A -> Map^o(B, C)` of `phi : A o B -> C`.
pub fn circle_adjoint<R: Scalar>(
    phi: &SymSeqMorphism<R>,
    a: &SymSeq<R>,
    ab: &Circle<R>,
    mc: &MapCircle<R>,
) -> Result<SymSeqMorphism<R>> {
    let c = phi.target();
    let bound = a.bound();
    let mut levels = Vec::new();
    for t in 0..=bound {
        let a_car = a.level(t).carrier();
        let lvl = &mc.levels[t];
        let mut out = BaseMorphism::zero(a_car.clone(), lvl.carrier.clone());
        for factor in &lvl.factors {
            let s = factor.s;
            let part = ab.levels[s].parts.iter().find(|p| p.t == t).expect("inner part");
            let pow = part.power.gobj.carrier();
            // psi : A[t] -> Map(B[s,t], C[s]),  psi(a)(x) = phi[s](q(a (x) x))
            let q = part.incl.compose(&part.quot.proj)?;
            let mut blocks = Vec::new();
            for d_a in a_car.lo()..=a_car.hi() {
                let mut blk = Matrix::zeros(factor.hom.dim_at(d_a), a_car.dim_at(d_a));
                for alpha in 0..a_car.dim_at(d_a) {
                    for n_x in pow.lo()..=pow.hi() {
                        let pdim = pow.dim_at(n_x);
                        if pdim == 0 {
                            continue;
                        }
                        let deg = d_a + n_x;
                        let qb = q.block_at(deg);
                        let pb = phi.level(s).block_at(deg);
                        let toff = a_car
                            .tensor_summands(pow, deg)
                            .iter()
                            .find(|&&(p, qd, _)| p == d_a && qd == n_x)
                            .map(|&(_, _, o)| o)
                            .expect("summand");
                        let hoff = pow
                            .hom_summands(c.level(s).carrier(), d_a)
                            .iter()
                            .find(|&&(p, _)| p == n_x)
                            .map(|&(_, o)| o)
                            .expect("hom summand");
                        let cdim = c.level(s).carrier().dim_at(deg);
                        for beta in 0..pdim {
                            // engine vector for a_alpha (x) x_beta
                            let col = toff + alpha * pdim + beta;
                            for i in 0..cdim {
                                let mut v = R::zero();
                                for k in 0..qb.rows() {
                                    let qv = qb.at(k, col);
                                    if !qv.is_zero() {
                                        v += pb.at(i, k).clone() * qv.clone();
                                    }
                                }
                                if !v.is_zero() {
                                    *blk.at_mut(hoff + beta * cdim + i, alpha) = v;
                                }
                            }
                        }
                    }
                }
                blocks.push(blk);
            }
            let psi = BaseMorphism::new(a_car.clone(), factor.hom.clone(), blocks)?;
            let fixed = factor.fixed.factor(&psi)?;
            out = out.add(&factor.incl.compose(&fixed)?)?;
        }
        levels.push(out);
    }
    SymSeqMorphism::new(a.clone(), mc.seq.clone(), levels)
}

/// The tensor adjoint `phi-sharp : A -> Map^(x)(B, C)` of
/// `phi : A (x) B -> C`.
pub fn tensor_adjoint<R: Scalar>(
    phi: &SymSeqMorphism<R>,
    a: &SymSeq<R>,
    b: &SymSeq<R>,
    ab_layout: &[crate::symseq::TensorLevel<R>],
    mt: &MapTensor<R>,
) -> Result<SymSeqMorphism<R>> {
    let c = phi.target();
    let bound = a.bound();
    let mut levels = Vec::new();
    for t in 0..=bound {
        let a_car = a.level(t).carrier();
        let lvl = &mt.levels[t];
        let mut out = BaseMorphism::zero(a_car.clone(), lvl.carrier.clone());
        for factor in &lvl.factors {
            let s = factor.s;
            let b_car = b.level(s).carrier();
            let tpart = ab_layout[t + s]
                .parts
                .iter()
                .find(|p| p.s1 == t && p.s2 == s)
                .expect("tensor part");
            // the canonical coset: identity word 0^t 1^s, lexicographically
            // first in the coset listing
            let q = tpart.incl[0].clone();
            let mut blocks = Vec::new();
            for d_a in a_car.lo()..=a_car.hi() {
                let mut blk = Matrix::zeros(factor.hom.dim_at(d_a), a_car.dim_at(d_a));
                for alpha in 0..a_car.dim_at(d_a) {
                    for d_b in b_car.lo()..=b_car.hi() {
                        let bdim = b_car.dim_at(d_b);
                        if bdim == 0 {
                            continue;
                        }
                        let deg = d_a + d_b;
                        let qb = q.block_at(deg);
                        let pb = phi.level(t + s).block_at(deg);
                        let toff = a_car
                            .tensor_summands(b_car, deg)
                            .iter()
                            .find(|&&(p, qd, _)| p == d_a && qd == d_b)
                            .map(|&(_, _, o)| o)
                            .expect("summand");
                        let target_car = c.level(t + s).carrier();
                        let hoff = b_car
                            .hom_summands(target_car, d_a)
                            .iter()
                            .find(|&&(p, _)| p == d_b)
                            .map(|&(_, o)| o)
                            .expect("hom summand");
                        let cdim = target_car.dim_at(deg);
                        for beta in 0..bdim {
                            let col = toff + alpha * bdim + beta;
                            for i in 0..cdim {
                                let mut v = R::zero();
                                for k in 0..qb.rows() {
                                    let qv = qb.at(k, col);
                                    if !qv.is_zero() {
                                        v += pb.at(i, k).clone() * qv.clone();
                                    }
                                }
                                if !v.is_zero() {
                                    *blk.at_mut(hoff + beta * cdim + i, alpha) = v;
                                }
                            }
                        }
                    }
                }
                blocks.push(blk);
            }
            let psi = BaseMorphism::new(a_car.clone(), factor.hom.clone(), blocks)?;
            let fixed = factor.fixed.factor(&psi)?;
            out = out.add(&factor.incl.compose(&fixed)?)?;
        }
        levels.push(out);
    }
    SymSeqMorphism::new(a.clone(), mt.seq.clone(), levels)
}

/// Outcome of certifying an adjunction as an explicit bijection of hom
/// spaces.
#[derive(Clone, Debug)]
pub struct AdjunctionCheck<R> {
    pub dim_left: usize,
    pub dim_right: usize,
    pub matrix: Matrix<R>,
}

impl<R: Scalar> AdjunctionCheck<R> {
    pub fn is_bijection(&self) -> bool {
        self.dim_left == self.dim_right && self.matrix.is_invertible()
    }
}

/// Certifies `hom(A o B, C) = hom(A, Map^o(B, C))` by transforming a basis
/// and checking invertibility of the coordinate matrix.
pub fn certify_circle_adjunction<R: Scalar>(
    a: &SymSeq<R>,
    b: &SymSeq<R>,
    c: &SymSeq<R>,
    mode: Mode,
) -> Result<AdjunctionCheck<R>> {
    let ab = circle_full(a, b, mode)?;
    let mc = map_circle_full(b, c, mode)?;
    let left = symseq_hom_basis(&ab.seq, c)?;
    let right = symseq_hom_basis(a, &mc.seq)?;
    let mut matrix = Matrix::zeros(right.len(), left.len());
    for (j, phi) in left.iter().enumerate() {
        let sharp = circle_adjoint(phi, a, &ab, &mc)?;
        let coords = morphism_coords(&sharp, &right)?;
        for (i, v) in coords.into_iter().enumerate() {
            *matrix.at_mut(i, j) = v;
        }
    }
    Ok(AdjunctionCheck { dim_left: left.len(), dim_right: right.len(), matrix })
}

/// Certifies `hom(A (x) B, C) = hom(A, Map^(x)(B, C))`.
pub fn certify_tensor_adjunction<R: Scalar>(
    a: &SymSeq<R>,
    b: &SymSeq<R>,
    c: &SymSeq<R>,
) -> Result<AdjunctionCheck<R>> {
    let (ab, ab_layout) = tensor_symseq_full(a, b)?;
    let mt = map_tensor_full(b, c)?;
    let left = symseq_hom_basis(&ab, c)?;
    let right = symseq_hom_basis(a, &mt.seq)?;
    let mut matrix = Matrix::zeros(right.len(), left.len());
    for (j, phi) in left.iter().enumerate() {
        let sharp = tensor_adjoint(phi, a, b, &ab_layout, &mt)?;
        let coords = morphism_coords(&sharp, &right)?;
        for (i, v) in coords.into_iter().enumerate() {
            *matrix.at_mut(i, j) = v;
        }
    }
    Ok(AdjunctionCheck { dim_left: left.len(), dim_right: right.len(), matrix })
}

/// Certifies the base-category adjunction
/// `hom(X (x) Y, Z) = hom(X, Map(Y, Z))` via curry.
pub fn certify_base_adjunction<R: Scalar>(
    x: &BaseObject<R>,
    y: &BaseObject<R>,
    z: &BaseObject<R>,
) -> Result<AdjunctionCheck<R>> {
    let xy = x.tensor(y)?;
    let myz = y.internal_hom(z)?;
    let left = crate::group::hom_basis_with_constraints(&xy, z, &[])?;
    let right = crate::group::hom_basis_with_constraints(x, &myz, &[])?;
    let vec_of = |f: &BaseMorphism<R>| -> Vec<R> {
        let mut out = Vec::new();
        for d in f.source().lo()..=f.source().hi() {
            let blk = f.block_at(d);
            for i in 0..blk.rows() {
                for j in 0..blk.cols() {
                    out.push(blk.at(i, j).clone());
                }
            }
        }
        out
    };
    let mut matrix = Matrix::zeros(right.len(), left.len());
    if !right.is_empty() {
        let probe = vec_of(&right[0]).len();
        let mut basis_mat = Matrix::zeros(probe, right.len());
        for (c_idx, bm) in right.iter().enumerate() {
            for (r, val) in vec_of(bm).into_iter().enumerate() {
                *basis_mat.at_mut(r, c_idx) = val;
            }
        }
        for (j, phi) in left.iter().enumerate() {
            let curried = crate::base::curry(phi, x, y)?;
            let v = vec_of(&curried);
            let mut rhs = Matrix::zeros(v.len(), 1);
            for (r, val) in v.into_iter().enumerate() {
                *rhs.at_mut(r, 0) = val;
            }
            let sol = basis_mat
                .solve(&rhs)
                .ok_or_else(|| EngineError::CertificateFailed("curried map is outside the hom space".into()))?;
            for i in 0..right.len() {
                *matrix.at_mut(i, j) = sol.at(i, 0).clone();
            }
        }
    } else {
        for phi in &left {
            let curried = crate::base::curry(phi, x, y)?;
            if !curried.is_zero() {
                return Err(EngineError::CertificateFailed("curry image misses the hom space".into()));
            }
        }
    }
    Ok(AdjunctionCheck { dim_left: left.len(), dim_right: right.len(), matrix })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::{disk, Variant};
    use crate::group::{GObject, Shape};
    use crate::Q;

    fn small() -> (SymSeq<Q>, SymSeq<Q>, SymSeq<Q>) {
        let mut a = SymSeq::<Q>::zero(2, Variant::Vect);
        a.set_level(1, GObject::trivial(Shape::sigma(1), BaseObject::vect(1)));
        a.set_level(2, GObject::regular(2, Variant::Vect));
        let b = SymSeq::<Q>::circle_unit(2, Variant::Vect);
        let mut c = SymSeq::<Q>::zero(2, Variant::Vect);
        c.set_level(1, GObject::trivial(Shape::sigma(1), BaseObject::vect(2)));
        c.set_level(2, GObject::regular(2, Variant::Vect));
        (a, b, c)
    }

    #[test]
    fn circle_adjunction_on_small_instances() {
        let (a, b, c) = small();
        let check = certify_circle_adjunction(&a, &b, &c, Mode::Exact).unwrap();
        assert_eq!(check.dim_left, check.dim_right);
        assert!(check.is_bijection());
    }

    #[test]
    fn tensor_adjunction_on_small_instances() {
        let (a, b, c) = small();
        let check = certify_tensor_adjunction(&a, &b, &c).unwrap();
        assert_eq!(check.dim_left, check.dim_right);
        assert!(check.is_bijection());
    }

    #[test]
    fn base_adjunction_via_curry() {
        let x = disk::<Q>();
        let y = disk::<Q>();
        let z = disk::<Q>().tensor(&disk()).unwrap();
        let check = certify_base_adjunction(&x, &y, &z).unwrap();
        assert_eq!(check.dim_left, check.dim_right);
        assert!(check.is_bijection());
    }

    #[test]
    fn map_tensor_unit_is_identity_like() {
        // Map^(x)(1, C) = C
        let (_, _, c) = small();
        let one = SymSeq::<Q>::tensor_unit(2, Variant::Vect);
        let mt = map_tensor_full(&one, &c).unwrap();
        for t in 0..=2 {
            assert_eq!(mt.seq.level(t).dim(), c.level(t).dim());
        }
    }

    #[test]
    fn map_tensor_into_zero_is_zero() {
        let (_, b, _) = small();
        let z = SymSeq::<Q>::zero(2, Variant::Vect);
        let mt = map_tensor_full(&b, &z).unwrap();
        assert!(mt.seq.is_zero());
    }
}
