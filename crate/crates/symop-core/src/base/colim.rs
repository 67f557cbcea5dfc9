//! Finite colimits and limits in the base category, with exact universal
//! property solvers.
//!
//! A colimit is computed degreewise as the quotient of the direct sum of
//! the diagram's objects by the span of `inc_tgt . f - inc_src` over all
//! arrows; a limit dually as the joint kernel inside the product. Both come
//! with a `factor` solver that factors any test (co)cone through the apex
//! and certifies the factorization exactly, which is the universal-property
//! certificate the rest of the engine relies on.

use crate::errors::{EngineError, Result};
use crate::linalg::{Matrix, Quotient, Subspace};
use crate::scalar::Scalar;

use super::{BaseMorphism, BaseObject, Variant};

/// A finite diagram in the base category.
#[derive(Clone, Debug)]
pub struct Diagram<R> {
    pub objects: Vec<BaseObject<R>>,
    /// `(src index, tgt index, morphism)`
    pub arrows: Vec<(usize, usize, BaseMorphism<R>)>,
}

impl<R: Scalar> Diagram<R> {
    pub fn new(objects: Vec<BaseObject<R>>, arrows: Vec<(usize, usize, BaseMorphism<R>)>) -> Result<Self> {
        for (s, t, f) in &arrows {
            if *s >= objects.len() || *t >= objects.len() {
                return Err(EngineError::ShapeMismatch("arrow endpoint out of range".into()));
            }
            if !f.source().same_shape(&objects[*s]) || !f.target().same_shape(&objects[*t]) {
                return Err(EngineError::ShapeMismatch("arrow endpoints do not match diagram objects".into()));
            }
        }
        Ok(Diagram { objects, arrows })
    }

    fn variant(&self) -> Variant {
        self.objects.first().map_or(Variant::Vect, |o| o.variant())
    }

    fn range(&self) -> (i64, i64) {
        let lo = self.objects.iter().map(|o| o.lo()).min().unwrap_or(0);
        let hi = self.objects.iter().map(|o| o.hi()).max().unwrap_or(0);
        (lo, hi)
    }

    fn sum_offsets(&self, n: i64) -> (Vec<usize>, usize) {
        let mut offs = Vec::with_capacity(self.objects.len());
        let mut total = 0;
        for o in &self.objects {
            offs.push(total);
            total += o.dim_at(n);
        }
        (offs, total)
    }
}

/// A computed colimit: apex, legs, and the degreewise quotient data used by
/// the universal-property solver.
#[derive(Clone, Debug)]
pub struct Colimit<R> {
    pub diagram: Diagram<R>,
    pub apex: BaseObject<R>,
    pub legs: Vec<BaseMorphism<R>>,
    quots: Vec<Quotient<R>>, // per degree of the joint range
    lo: i64,
}

impl<R: Scalar> Colimit<R> {
    /// Factors a cocone through the apex, certifying `factor . leg_i = cocone_i`
    /// exactly. Uniqueness holds because the legs are jointly surjective.
    pub fn factor(&self, cocone: &[BaseMorphism<R>]) -> Result<BaseMorphism<R>> {
        if cocone.len() != self.diagram.objects.len() {
            return Err(EngineError::ShapeMismatch("cocone leg count".into()));
        }
        let apex_t = cocone
            .first()
            .map(|f| f.target().clone())
            .ok_or_else(|| EngineError::ShapeMismatch("empty cocone".into()))?;
        for (i, f) in cocone.iter().enumerate() {
            if !f.source().same_shape(&self.diagram.objects[i]) || !f.target().same_shape(&apex_t) {
                return Err(EngineError::ShapeMismatch(format!("cocone leg {i} endpoints")));
            }
        }
        let (lo, hi) = self.diagram.range();
        let mut blocks = Vec::new();
        for n in lo..=hi {
            let (offs, total) = self.diagram.sum_offsets(n);
            let mut h = Matrix::zeros(apex_t.dim_at(n), total);
            for (i, f) in cocone.iter().enumerate() {
                let b = f.block_at(n);
                for r in 0..b.rows() {
                    for c in 0..b.cols() {
                        *h.at_mut(r, offs[i] + c) = b.at(r, c).clone();
                    }
                }
            }
            let q = &self.quots[(n - self.lo) as usize];
            let hbar = q
                .factor(&h)
                .ok_or_else(|| EngineError::CertificateFailed(format!("cocone does not coequalize at degree {n}")))?;
            blocks.push(hbar);
        }
        // blocks are aligned to the apex' range == joint range
        let f = BaseMorphism::new(self.apex.clone(), apex_t, blocks)?;
        for (i, leg) in self.legs.iter().enumerate() {
            if f.compose(leg)? != cocone[i] {
                return Err(EngineError::CertificateFailed(format!("factorization fails on leg {i}")));
            }
        }
        Ok(f)
    }
}

/// Colimit of a finite diagram.
pub fn colimit<R: Scalar>(diagram: Diagram<R>) -> Result<Colimit<R>> {
    let variant = diagram.variant();
    let (lo, hi) = diagram.range();
    let mut quots = Vec::new();
    let mut dims = Vec::new();
    for n in lo..=hi {
        let (offs, total) = diagram.sum_offsets(n);
        let mut rel_cols: Vec<Matrix<R>> = Vec::new();
        for (s, t, f) in &diagram.arrows {
            let b = f.block_at(n);
            let sd = diagram.objects[*s].dim_at(n);
            if sd == 0 {
                continue;
            }
            // columns: inc_t . f - inc_s applied to each basis vector
            let mut w = Matrix::zeros(total, sd);
            for c in 0..sd {
                for r in 0..b.rows() {
                    *w.at_mut(offs[*t] + r, c) = b.at(r, c).clone();
                }
                *w.at_mut(offs[*s] + c, c) -= R::one();
            }
            rel_cols.push(w);
        }
        let span = if rel_cols.is_empty() {
            Matrix::zeros(total, 0)
        } else {
            let refs: Vec<&Matrix<R>> = rel_cols.iter().collect();
            Matrix::hstack(&refs)
        };
        let q = Quotient::by_span(total, &span);
        dims.push(q.dim());
        quots.push(q);
    }
    // induced differential: d on the direct sum descends to the quotient
    let mut diffs = Vec::new();
    for n in (lo + 1)..=hi {
        let (offs_n, total_n) = diagram.sum_offsets(n);
        let (offs_m, total_m) = diagram.sum_offsets(n - 1);
        let mut d = Matrix::zeros(total_m, total_n);
        for (i, o) in diagram.objects.iter().enumerate() {
            let b = o.diff_at(n);
            for r in 0..b.rows() {
                for c in 0..b.cols() {
                    *d.at_mut(offs_m[i] + r, offs_n[i] + c) = b.at(r, c).clone();
                }
            }
        }
        let k_n = (n - lo) as usize;
        let proj_then_d = quots[k_n - 1].proj.mul(&d);
        let dq = quots[k_n]
            .factor(&proj_then_d)
            .ok_or_else(|| EngineError::DescentFailed(format!("differential at degree {n}")))?;
        diffs.push(dq);
    }
    let apex = match variant {
        Variant::Vect => BaseObject::vect(dims[0]),
        Variant::Chain => BaseObject::chain(lo, dims, diffs)?,
    };
    let mut legs = Vec::new();
    for (i, o) in diagram.objects.iter().enumerate() {
        let mut blocks = Vec::new();
        for n in o.lo()..=o.hi() {
            let (offs, total) = diagram.sum_offsets(n);
            let mut inc = Matrix::zeros(total, o.dim_at(n));
            for c in 0..o.dim_at(n) {
                *inc.at_mut(offs[i] + c, c) = R::one();
            }
            blocks.push(quots[(n - lo) as usize].proj.mul(&inc));
        }
        legs.push(BaseMorphism::new(o.clone(), apex.clone(), blocks)?);
    }
    Ok(Colimit { diagram, apex, legs, quots, lo })
}

/// A computed limit: apex, legs, and degreewise subspace data for the
/// universal-property solver.
#[derive(Clone, Debug)]
pub struct Limit<R> {
    pub diagram: Diagram<R>,
    pub apex: BaseObject<R>,
    pub legs: Vec<BaseMorphism<R>>,
    subs: Vec<Subspace<R>>,
    lo: i64,
}

impl<R: Scalar> Limit<R> {
    /// Factors a cone through the apex with exact certification.
    pub fn factor(&self, cone: &[BaseMorphism<R>]) -> Result<BaseMorphism<R>> {
        if cone.len() != self.diagram.objects.len() {
            return Err(EngineError::ShapeMismatch("cone leg count".into()));
        }
        let apex_s = cone
            .first()
            .map(|f| f.source().clone())
            .ok_or_else(|| EngineError::ShapeMismatch("empty cone".into()))?;
        let (lo, hi) = self.diagram.range();
        let mut blocks = Vec::new();
        for n in apex_s.lo()..=apex_s.hi() {
            if n < lo || n > hi {
                blocks.push(Matrix::zeros(self.apex.dim_at(n), apex_s.dim_at(n)));
                continue;
            }
            let (offs, total) = self.diagram.sum_offsets(n);
            let mut h = Matrix::zeros(total, apex_s.dim_at(n));
            for (i, f) in cone.iter().enumerate() {
                let b = f.block_at(n);
                for r in 0..b.rows() {
                    for c in 0..b.cols() {
                        *h.at_mut(offs[i] + r, c) = b.at(r, c).clone();
                    }
                }
            }
            let s = &self.subs[(n - self.lo) as usize];
            let ht = s
                .factor(&h)
                .ok_or_else(|| EngineError::CertificateFailed(format!("cone does not equalize at degree {n}")))?;
            blocks.push(ht);
        }
        let f = BaseMorphism::new(apex_s, self.apex.clone(), blocks)?;
        for (i, leg) in self.legs.iter().enumerate() {
            if leg.compose(&f)? != cone[i] {
                return Err(EngineError::CertificateFailed(format!("factorization fails on leg {i}")));
            }
        }
        Ok(f)
    }
}

/// Limit of a finite diagram.
pub fn limit<R: Scalar>(diagram: Diagram<R>) -> Result<Limit<R>> {
    let variant = diagram.variant();
    let (lo, hi) = diagram.range();
    let mut subs = Vec::new();
    let mut dims = Vec::new();
    for n in lo..=hi {
        let (offs, total) = diagram.sum_offsets(n);
        let mut rows: Vec<Matrix<R>> = Vec::new();
        for (s, t, f) in &diagram.arrows {
            let b = f.block_at(n);
            let td = diagram.objects[*t].dim_at(n);
            if td == 0 {
                continue;
            }
            // rows: f . pr_s - pr_t
            let mut w = Matrix::zeros(td, total);
            for r in 0..td {
                for c in 0..b.cols() {
                    *w.at_mut(r, offs[*s] + c) = b.at(r, c).clone();
                }
                *w.at_mut(r, offs[*t] + r) -= R::one();
            }
            rows.push(w);
        }
        let sub = Subspace::joint_kernel(total, &rows);
        dims.push(sub.dim());
        subs.push(sub);
    }
    let mut diffs = Vec::new();
    for n in (lo + 1)..=hi {
        let (offs_n, total_n) = diagram.sum_offsets(n);
        let (offs_m, total_m) = diagram.sum_offsets(n - 1);
        let mut d = Matrix::zeros(total_m, total_n);
        for (i, o) in diagram.objects.iter().enumerate() {
            let b = o.diff_at(n);
            for r in 0..b.rows() {
                for c in 0..b.cols() {
                    *d.at_mut(offs_m[i] + r, offs_n[i] + c) = b.at(r, c).clone();
                }
            }
        }
        let k_n = (n - lo) as usize;
        let d_incl = d.mul(&subs[k_n].incl);
        let dq = subs[k_n - 1]
            .factor(&d_incl)
            .ok_or_else(|| EngineError::DescentFailed(format!("differential at degree {n}")))?;
        diffs.push(dq);
    }
    let apex = match variant {
        Variant::Vect => BaseObject::vect(dims[0]),
        Variant::Chain => BaseObject::chain(lo, dims, diffs)?,
    };
    let mut legs = Vec::new();
    for (i, o) in diagram.objects.iter().enumerate() {
        let mut blocks = Vec::new();
        for n in apex.lo()..=apex.hi() {
            let (offs, total) = diagram.sum_offsets(n);
            let mut pr = Matrix::zeros(o.dim_at(n), total);
            for r in 0..o.dim_at(n) {
                *pr.at_mut(r, offs[i] + r) = R::one();
            }
            blocks.push(pr.mul(&subs[(n - lo) as usize].incl));
        }
        // legs are defined on the apex' range; build with apex as source
        let f = BaseMorphism::new(apex.clone(), o.clone(), blocks)?;
        legs.push(f);
    }
    Ok(Limit { diagram, apex, legs, subs, lo })
}

/// Coproduct of a list of objects.
pub fn coproduct<R: Scalar>(objects: Vec<BaseObject<R>>) -> Result<Colimit<R>> {
    colimit(Diagram::new(objects, vec![])?)
}

/// Coequalizer of a parallel pair `f, g : X -> Y`.
pub fn coequalizer<R: Scalar>(f: BaseMorphism<R>, g: BaseMorphism<R>) -> Result<Colimit<R>> {
    if !f.source().same_shape(g.source()) || !f.target().same_shape(g.target()) {
        return Err(EngineError::ShapeMismatch("coequalizer pair endpoints differ".into()));
    }
    let x = f.source().clone();
    let y = f.target().clone();
    colimit(Diagram::new(vec![x, y], vec![(0, 1, f), (0, 1, g)])?)
}

/// Pushout of a span `f : A -> B`, `g : A -> C`.
pub fn pushout<R: Scalar>(f: BaseMorphism<R>, g: BaseMorphism<R>) -> Result<Colimit<R>> {
    if !f.source().same_shape(g.source()) {
        return Err(EngineError::ShapeMismatch("pushout span sources differ".into()));
    }
    let a = f.source().clone();
    let b = f.target().clone();
    let c = g.target().clone();
    colimit(Diagram::new(vec![a, b, c], vec![(0, 1, f), (0, 2, g)])?)
}

/// Product of a list of objects.
pub fn product<R: Scalar>(objects: Vec<BaseObject<R>>) -> Result<Limit<R>> {
    limit(Diagram::new(objects, vec![])?)
}

/// Equalizer of a parallel pair.
pub fn equalizer<R: Scalar>(f: BaseMorphism<R>, g: BaseMorphism<R>) -> Result<Limit<R>> {
    if !f.source().same_shape(g.source()) || !f.target().same_shape(g.target()) {
        return Err(EngineError::ShapeMismatch("equalizer pair endpoints differ".into()));
    }
    let x = f.source().clone();
    let y = f.target().clone();
    limit(Diagram::new(vec![x, y], vec![(0, 1, f), (0, 1, g)])?)
}

/// Pullback of a cospan `f : B -> A`, `g : C -> A`.
pub fn pullback<R: Scalar>(f: BaseMorphism<R>, g: BaseMorphism<R>) -> Result<Limit<R>> {
    if !f.target().same_shape(g.target()) {
        return Err(EngineError::ShapeMismatch("pullback cospan targets differ".into()));
    }
    let a = f.target().clone();
    let b = f.source().clone();
    let c = g.source().clone();
    limit(Diagram::new(vec![a, b, c], vec![(1, 0, f), (2, 0, g)])?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::disk;
    use crate::Q;

    type B = BaseObject<Q>;
    type M = BaseMorphism<Q>;

    #[test]
    fn coequalizer_of_equal_maps_is_target() {
        let x = B::vect(2);
        let y = B::vect(3);
        let f = M::zero(x.clone(), y.clone());
        let c = coequalizer(f.clone(), f).unwrap();
        assert_eq!(c.apex.total_dim(), 3);
        // certificate: the identity cocone factors
        let cocone = vec![M::zero(x, y.clone()), M::identity(&y)];
        let h = c.factor(&cocone).unwrap();
        assert!(h.is_iso());
    }

    #[test]
    fn pushout_along_initial_is_coproduct_leg() {
        let zero = B::zero(crate::base::Variant::Vect);
        let y = B::vect(2);
        let f = M::zero(zero.clone(), B::vect(0));
        let g = M::zero(zero, y.clone());
        let p = pushout(f, g).unwrap();
        assert_eq!(p.apex.total_dim(), 2);
    }

    #[test]
    fn sigma2_difference_coequalizer() {
        // quotient of k.Sigma2 by span{e1 - e2} is one dimensional
        let x = B::vect(1);
        let y = B::vect(2);
        let f = M::new(x.clone(), y.clone(), vec![Matrix::from_int_rows(&[vec![1], vec![0]])]).unwrap();
        let g = M::new(x, y, vec![Matrix::from_int_rows(&[vec![0], vec![1]])]).unwrap();
        let c = coequalizer(f, g).unwrap();
        assert_eq!(c.apex.total_dim(), 1);
    }

    #[test]
    fn equalizer_of_distinct_rank_one_maps() {
        let x = B::vect(2);
        let y = B::vect(1);
        let f = M::new(x.clone(), y.clone(), vec![Matrix::from_int_rows(&[vec![1, 0]])]).unwrap();
        let g = M::new(x, y, vec![Matrix::from_int_rows(&[vec![0, 1]])]).unwrap();
        let e = equalizer(f, g).unwrap();
        assert_eq!(e.apex.total_dim(), 1);
    }

    #[test]
    fn equalizer_of_equal_maps_is_source() {
        let d = disk::<Q>();
        let f = M::identity(&d);
        let e = equalizer(f.clone(), f).unwrap();
        assert_eq!(e.apex.dims(), d.dims());
    }

    #[test]
    fn pullback_over_zero_is_product() {
        let zero = B::zero(crate::base::Variant::Vect);
        let b = B::vect(2);
        let c = B::vect(3);
        let f = M::zero(b.clone(), zero.clone());
        let g = M::zero(c.clone(), zero);
        let p = pullback(f, g).unwrap();
        assert_eq!(p.apex.total_dim(), 5);
    }

    #[test]
    fn chain_pushout_certificate() {
        // gluing two disks along the sphere in degree 0
        let d = disk::<Q>();
        let s = crate::base::sphere::<Q>();
        let inc = M::new(
            s.clone(),
            d.clone(),
            vec![Matrix::identity(1)],
        )
        .unwrap();
        let p = pushout(inc.clone(), inc).unwrap();
        // D1 U_{S0} D1: dims (1,2) wait: degree 0: (1+1+1)-2 = 1, degree 1: 2
        assert_eq!(p.apex.dim_at(0), 1);
        assert_eq!(p.apex.dim_at(1), 2);
        // universal property against the cocone into one disk
        let cocone = vec![inc_clone_helper(&s, &d), M::identity(&d), M::identity(&d)];
        let h = p.factor(&cocone).unwrap();
        assert!(h.compose(&p.legs[1]).unwrap() == M::identity(&d));
    }

    fn inc_clone_helper(s: &B, d: &B) -> M {
        M::new(s.clone(), d.clone(), vec![Matrix::identity(1)]).unwrap()
    }

    #[test]
    fn factor_rejects_non_cocones() {
        let x = B::vect(1);
        let y = B::vect(2);
        let f = M::new(x.clone(), y.clone(), vec![Matrix::from_int_rows(&[vec![1], vec![0]])]).unwrap();
        let g = M::new(x.clone(), y.clone(), vec![Matrix::from_int_rows(&[vec![0], vec![1]])]).unwrap();
        let c = coequalizer(f, g).unwrap();
        // this "cocone" does not coequalize
        let bad = vec![
            M::zero(x, y.clone()),
            M::new(y.clone(), y.clone(), vec![Matrix::from_int_rows(&[vec![1, 0], vec![0, 0]])]).unwrap(),
        ];
        assert!(c.factor(&bad).is_err());
    }
}
