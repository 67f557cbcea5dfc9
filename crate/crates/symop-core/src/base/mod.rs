//! The two concrete closed symmetric monoidal base categories: exact
//! finite-dimensional vector spaces (`Vect`) and bounded chain complexes of
//! them (`Chain`).
//!
//! A `Vect` object is stored as a complex concentrated in degree 0, so all
//! graded machinery is shared; the variant tag is kept so that mixing the
//! two categories is an error and so that homotopy predicates know when
//! they apply. In both variants the initial and the terminal object
//! coincide (the zero object): these bases are pointed, which the rest of
//! the engine relies on (mapping objects into the zero object vanish).
//!
//! Sign conventions, fixed once here and used everywhere:
//!
//! * differential of a tensor: `d(x (x) y) = dx (x) y + (-1)^{|x|} x (x) dy`;
//! * differential of the mapping complex: `(d f) = d_Z f - (-1)^{|f|} f d_Y`;
//! * symmetry: `x (x) y -> (-1)^{|x||y|} y (x) x`;
//! * permuting homogeneous factors by `theta` picks up `(-1)` for every
//!   inversion of `theta` between odd-degree factors.
//!
//! Basis conventions: the degree-`n` part of `X (x) Y` is ordered by the
//! degree `p` of the `X`-factor ascending, and within a summand
//! lexicographically with the `X`-index major. Mapping complexes order
//! summands by source degree `p` ascending and vectorize each `Hom(Y_p,
//! Z_{p+n})` column-major.

pub mod colim;
pub mod multi;

use crate::errors::{EngineError, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Which base category an object lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Vect,
    Chain,
}

/// An object of the base category.
#[derive(Clone, Debug, PartialEq)]
pub struct BaseObject<R> {
    variant: Variant,
    lo: i64,
    dims: Vec<usize>,
    /// `diffs[k]` is the differential from degree `lo+k+1` to degree `lo+k`.
    diffs: Vec<Matrix<R>>,
}

impl<R: Scalar> BaseObject<R> {
    pub fn vect(dim: usize) -> Self {
        BaseObject { variant: Variant::Vect, lo: 0, dims: vec![dim], diffs: vec![] }
    }

    /// A bounded complex: `dims[k]` is the dimension in degree `lo + k` and
    /// `diffs[k]` maps degree `lo+k+1` to degree `lo+k`.
    pub fn chain(lo: i64, dims: Vec<usize>, diffs: Vec<Matrix<R>>) -> Result<Self> {
        if dims.is_empty() {
            return Err(EngineError::ShapeMismatch("chain object needs at least one degree".into()));
        }
        if diffs.len() + 1 != dims.len() {
            return Err(EngineError::ShapeMismatch(format!(
                "expected {} differentials for {} degrees, got {}",
                dims.len() - 1,
                dims.len(),
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.rows() != dims[k] || d.cols() != dims[k + 1] {
                return Err(EngineError::ShapeMismatch(format!(
                    "differential into degree {} has shape {}x{}, expected {}x{}",
                    lo + k as i64,
                    d.rows(),
                    d.cols(),
                    dims[k],
                    dims[k + 1]
                )));
            }
        }
        for k in 0..diffs.len().saturating_sub(1) {
            if !diffs[k].mul(&diffs[k + 1]).is_zero() {
                return Err(EngineError::ValidationFailed(format!(
                    "d*d != 0 between degrees {} and {}",
                    lo + k as i64 + 2,
                    lo + k as i64
                )));
            }
        }
        Ok(BaseObject { variant: Variant::Chain, lo, dims, diffs })
    }

    pub fn zero(variant: Variant) -> Self {
        match variant {
            Variant::Vect => Self::vect(0),
            Variant::Chain => BaseObject { variant, lo: 0, dims: vec![0], diffs: vec![] },
        }
    }

    /// The monoidal unit `k`: one dimension in degree 0.
    pub fn unit(variant: Variant) -> Self {
        match variant {
            Variant::Vect => Self::vect(1),
            Variant::Chain => BaseObject { variant, lo: 0, dims: vec![1], diffs: vec![] },
        }
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, n: i64) -> usize {
        if n < self.lo || n > self.hi() {
            0
        } else {
            self.dims[(n - self.lo) as usize]
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero_object(&self) -> bool {
        self.total_dim() == 0
    }

    /// `d_n`, the differential from degree `n` to `n-1` (zero-shaped when
    /// out of range).
    pub fn diff_at(&self, n: i64) -> Matrix<R> {
        if n > self.lo && n <= self.hi() {
            self.diffs[(n - 1 - self.lo) as usize].clone()
        } else {
            Matrix::zeros(self.dim_at(n - 1), self.dim_at(n))
        }
    }

    /// Structural equality up to zero-padding of the degree range.
    pub fn same_shape(&self, other: &Self) -> bool {
        if self.variant != other.variant {
            return false;
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        (lo..=hi).all(|n| self.dim_at(n) == other.dim_at(n) && self.diff_at(n) == other.diff_at(n))
    }

    pub fn check_variant(&self, other: &Self) -> Result<()> {
        if self.variant == other.variant {
            Ok(())
        } else {
            Err(EngineError::VariantMismatch)
        }
    }

    /// Per-degree homology dimensions: `dim ker d_n - rank d_{n+1}`.
    pub fn homology_dims(&self) -> Vec<(i64, usize)> {
        let mut out = Vec::new();
        for n in self.lo..=self.hi() {
            let dn = self.diff_at(n);
            let dnext = self.diff_at(n + 1);
            let cycles = self.dim_at(n) - dn.rank();
            let boundaries = dnext.rank();
            out.push((n, cycles - boundaries));
        }
        out
    }

    pub fn total_homology_dim(&self) -> usize {
        self.homology_dims().iter().map(|(_, d)| d).sum()
    }

    /// Direct sum, with the evident block bases.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.check_variant(other)?;
        if self.is_zero_object() && other.is_zero_object() {
            return Ok(Self::zero(self.variant));
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let mut dims = Vec::new();
        let mut diffs = Vec::new();
        for n in lo..=hi {
            dims.push(self.dim_at(n) + other.dim_at(n));
        }
        for n in (lo + 1)..=hi {
            diffs.push(self.diff_at(n).direct_sum(&other.diff_at(n)));
        }
        // direct_sum above puts self's part first in each degree, consistent
        // with the dims layout.
        match self.variant {
            Variant::Vect => Ok(Self::vect(dims[0])),
            Variant::Chain => Self::chain(lo, dims, diffs),
        }
    }

    /// Offset of the `self`-block inside a degree of `self.direct_sum(other)`.
    pub fn sum_offsets(&self, other: &Self, n: i64) -> (usize, usize) {
        let _ = other;
        (0, self.dim_at(n))
    }

    /// Summands `(p, q = n - p, offset)` of degree `n` of `self (x) other`,
    /// ordered by `p` ascending; only summands with both factors nonzero
    /// range are listed, but zero-dimensional ones are kept for stable
    /// offsets.
    pub fn tensor_summands(&self, other: &Self, n: i64) -> Vec<(i64, i64, usize)> {
        let mut out = Vec::new();
        let mut off = 0;
        for p in self.lo..=self.hi() {
            let q = n - p;
            if q < other.lo || q > other.hi() {
                continue;
            }
            out.push((p, q, off));
            off += self.dim_at(p) * other.dim_at(q);
        }
        out
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.check_variant(other)?;
        if self.is_zero_object() || other.is_zero_object() {
            return Ok(Self::zero(self.variant));
        }
        let lo = self.lo + other.lo;
        let hi = self.hi() + other.hi();
        let mut dims = Vec::new();
        for n in lo..=hi {
            let d: usize = self
                .tensor_summands(other, n)
                .iter()
                .map(|&(p, q, _)| self.dim_at(p) * other.dim_at(q))
                .sum();
            dims.push(d);
        }
        let mut diffs = Vec::new();
        for n in (lo + 1)..=hi {
            let rows: usize = dims[(n - 1 - lo) as usize];
            let cols: usize = dims[(n - lo) as usize];
            let mut d = Matrix::zeros(rows, cols);
            let src = self.tensor_summands(other, n);
            let tgt = self.tensor_summands(other, n - 1);
            let toff = |p: i64| tgt.iter().find(|&&(tp, _, _)| tp == p).map(|&(_, _, o)| o);
            for &(p, q, soff) in &src {
                let xp = self.dim_at(p);
                let yq = other.dim_at(q);
                if xp * yq == 0 {
                    continue;
                }
                // dx (x) y
                if let Some(t) = toff(p - 1) {
                    let dx = self.diff_at(p);
                    let blk = dx.kronecker(&Matrix::identity(yq));
                    paste_block(&mut d, t, soff, &blk);
                }
                // (-1)^p x (x) dy
                if let Some(t) = toff(p) {
                    let dy = other.diff_at(q);
                    let sign = if p.rem_euclid(2) == 0 { 1 } else { -1 };
                    let blk = Matrix::identity(xp).kronecker(&dy).scale(&R::from_i64(sign));
                    paste_block(&mut d, t, soff, &blk);
                }
            }
            diffs.push(d);
        }
        match self.variant {
            Variant::Vect => Ok(Self::vect(dims[0])),
            Variant::Chain => Self::chain(lo, dims, diffs),
        }
    }

    /// Summands `(p, offset)` of degree `n` of `Map(self=Y, z=Z)`:
    /// `Hom(Y_p, Z_{p+n})` for `p` over `Y`'s range.
    pub fn hom_summands(&self, z: &Self, n: i64) -> Vec<(i64, usize)> {
        let mut out = Vec::new();
        let mut off = 0;
        for p in self.lo..=self.hi() {
            out.push((p, off));
            off += self.dim_at(p) * z.dim_at(p + n);
        }
        out
    }

    /// The mapping object `Map(self, z)`.
    ///
    /// Degree `n` is the direct sum over `p` of `Hom(Y_p, Z_{p+n})`,
    /// vectorized column-major, with differential
    /// `(d f) = d_Z f - (-1)^n f d_Y`.
    pub fn internal_hom(&self, z: &Self) -> Result<Self> {
        self.check_variant(z)?;
        if self.is_zero_object() || z.is_zero_object() {
            return Ok(Self::zero(self.variant));
        }
        let lo = z.lo - self.hi();
        let hi = z.hi() - self.lo;
        let mut dims = Vec::new();
        for n in lo..=hi {
            let d: usize = self
                .hom_summands(z, n)
                .iter()
                .map(|&(p, _)| self.dim_at(p) * z.dim_at(p + n))
                .sum();
            dims.push(d);
        }
        let mut diffs = Vec::new();
        for n in (lo + 1)..=hi {
            let rows = dims[(n - 1 - lo) as usize];
            let cols = dims[(n - lo) as usize];
            let mut d = Matrix::zeros(rows, cols);
            let src = self.hom_summands(z, n);
            let tgt = self.hom_summands(z, n - 1);
            let toff = |p: i64| tgt.iter().find(|&&(tp, _)| tp == p).map(|&(_, o)| o);
            let sign_n = if n.rem_euclid(2) == 0 { 1 } else { -1 };
            for &(p, soff) in &src {
                let yp = self.dim_at(p);
                let znp = z.dim_at(p + n);
                if yp * znp == 0 {
                    continue;
                }
                // phi |-> d_Z phi, same hom summand p of degree n-1:
                // vec(A X) = (I kron A) vec X, column-major.
                if let Some(t) = toff(p) {
                    let dz = z.diff_at(p + n);
                    let blk = Matrix::identity(yp).kronecker(&dz);
                    paste_block(&mut d, t, soff, &blk);
                }
                // phi |-> -(-1)^n phi d_Y(p+1), lands in hom summand p+1:
                // vec(X B) = (B^T kron I) vec X.
                if let Some(t) = toff(p + 1) {
                    let dy = self.diff_at(p + 1);
                    let blk = dy.transpose().kronecker(&Matrix::identity(znp)).scale(&R::from_i64(-sign_n));
                    paste_block(&mut d, t, soff, &blk);
                }
            }
            diffs.push(d);
        }
        match self.variant {
            Variant::Vect => Ok(Self::vect(dims[0])),
            Variant::Chain => Self::chain(lo, dims, diffs),
        }
    }
}

fn paste_block<R: Scalar>(d: &mut Matrix<R>, row0: usize, col0: usize, blk: &Matrix<R>) {
    for i in 0..blk.rows() {
        for j in 0..blk.cols() {
            let v = blk.at(i, j);
            if !v.is_zero() {
                *d.at_mut(row0 + i, col0 + j) = v.clone();
            }
        }
    }
}

/// A morphism in the base category, stored as one matrix per degree.
#[derive(Clone, Debug, PartialEq)]
pub struct BaseMorphism<R> {
    source: BaseObject<R>,
    target: BaseObject<R>,
    blocks: Vec<Matrix<R>>, // aligned to the source's degree range
}

impl<R: Scalar> BaseMorphism<R> {
    pub fn new(source: BaseObject<R>, target: BaseObject<R>, blocks: Vec<Matrix<R>>) -> Result<Self> {
        source.check_variant(&target)?;
        if blocks.len() != source.dims().len() {
            return Err(EngineError::ShapeMismatch(format!(
                "expected {} degree blocks, got {}",
                source.dims().len(),
                blocks.len()
            )));
        }
        for (k, b) in blocks.iter().enumerate() {
            let n = source.lo() + k as i64;
            if b.rows() != target.dim_at(n) || b.cols() != source.dim_at(n) {
                return Err(EngineError::ShapeMismatch(format!(
                    "block in degree {} has shape {}x{}, expected {}x{}",
                    n,
                    b.rows(),
                    b.cols(),
                    target.dim_at(n),
                    source.dim_at(n)
                )));
            }
        }
        let f = BaseMorphism { source, target, blocks };
        f.check_chain_map()?;
        Ok(f)
    }

    fn check_chain_map(&self) -> Result<()> {
        for n in (self.source.lo().min(self.target.lo()) + 1)..=(self.source.hi().max(self.target.hi())) {
            let lhs = self.target.diff_at(n).mul(&self.block_at(n));
            let rhs = self.block_at(n - 1).mul(&self.source.diff_at(n));
            if lhs != rhs {
                return Err(EngineError::NotChainMap(format!("fails at degree {n}")));
            }
        }
        Ok(())
    }

    pub fn zero(source: BaseObject<R>, target: BaseObject<R>) -> Self {
        let blocks = (source.lo()..=source.hi())
            .map(|n| Matrix::zeros(target.dim_at(n), source.dim_at(n)))
            .collect();
        BaseMorphism { source, target, blocks }
    }

    pub fn identity(obj: &BaseObject<R>) -> Self {
        let blocks = (obj.lo()..=obj.hi()).map(|n| Matrix::identity(obj.dim_at(n))).collect();
        BaseMorphism { source: obj.clone(), target: obj.clone(), blocks }
    }

    pub fn source(&self) -> &BaseObject<R> {
        &self.source
    }

    pub fn target(&self) -> &BaseObject<R> {
        &self.target
    }

    pub fn block_at(&self, n: i64) -> Matrix<R> {
        if n < self.source.lo() || n > self.source.hi() {
            Matrix::zeros(self.target.dim_at(n), self.source.dim_at(n))
        } else {
            self.blocks[(n - self.source.lo()) as usize].clone()
        }
    }

    pub fn compose(&self, first: &Self) -> Result<Self> {
        // self after first
        if !first.target.same_shape(&self.source) {
            return Err(EngineError::ShapeMismatch("composition middle objects differ".into()));
        }
        let blocks = (first.source.lo()..=first.source.hi())
            .map(|n| self.block_at(n).mul(&first.block_at(n)))
            .collect();
        Ok(BaseMorphism { source: first.source.clone(), target: self.target.clone(), blocks })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if !self.source.same_shape(&other.source) || !self.target.same_shape(&other.target) {
            return Err(EngineError::ShapeMismatch("morphism addition endpoints differ".into()));
        }
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect();
        Ok(BaseMorphism { source: self.source.clone(), target: self.target.clone(), blocks })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&R::from_i64(-1)))
    }

    pub fn scale(&self, c: &R) -> Self {
        BaseMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks: self.blocks.iter().map(|b| b.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }

    pub fn is_injective(&self) -> bool {
        (self.source.lo()..=self.source.hi()).all(|n| {
            let b = self.block_at(n);
            b.rank() == self.source.dim_at(n)
        })
    }

    pub fn is_surjective(&self) -> bool {
        (self.target.lo()..=self.target.hi()).all(|n| {
            let b = self.block_at(n);
            b.rank() == self.target.dim_at(n)
        })
    }

    pub fn is_iso(&self) -> bool {
        let lo = self.source.lo().min(self.target.lo());
        let hi = self.source.hi().max(self.target.hi());
        (lo..=hi).all(|n| {
            self.source.dim_at(n) == self.target.dim_at(n) && self.block_at(n).rank() == self.source.dim_at(n)
        })
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_iso() {
            return Err(EngineError::CertificateFailed("inverse of a non-isomorphism".into()));
        }
        let blocks = (self.target.lo()..=self.target.hi())
            .map(|n| {
                let b = self.block_at(n);
                if b.rows() == 0 || b.cols() == 0 {
                    Matrix::zeros(self.source.dim_at(n), self.target.dim_at(n))
                } else {
                    b.inverse().expect("checked invertible")
                }
            })
            .collect();
        Ok(BaseMorphism { source: self.target.clone(), target: self.source.clone(), blocks })
    }

    /// Tensor product of morphisms (both are degree 0, so no Koszul signs).
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let src = self.source.tensor(&other.source)?;
        let tgt = self.target.tensor(&other.target)?;
        let mut blocks = Vec::new();
        for n in src.lo()..=src.hi() {
            let mut blk = Matrix::zeros(tgt.dim_at(n), src.dim_at(n));
            for &(p, q, soff) in &self.source.tensor_summands(&other.source, n) {
                let sub = self.block_at(p).kronecker(&other.block_at(q));
                if sub.rows() == 0 || sub.cols() == 0 {
                    continue;
                }
                // locate the (p,q) summand in the target layout
                if let Some(&(_, _, t)) = self
                    .target
                    .tensor_summands(&other.target, n)
                    .iter()
                    .find(|&&(tp, tq, _)| tp == p && tq == q)
                {
                    paste_block(&mut blk, t, soff, &sub);
                }
            }
            blocks.push(blk);
        }
        BaseMorphism::new(src, tgt, blocks)
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let src = self.source.direct_sum(&other.source)?;
        let tgt = self.target.direct_sum(&other.target)?;
        let mut blocks = Vec::new();
        for n in src.lo()..=src.hi() {
            let mut blk = Matrix::zeros(tgt.dim_at(n), src.dim_at(n));
            paste_block(&mut blk, 0, 0, &self.block_at(n));
            paste_block(&mut blk, self.target.dim_at(n), self.source.dim_at(n), &other.block_at(n));
            blocks.push(blk);
        }
        BaseMorphism::new(src, tgt, blocks)
    }

    /// Whether this morphism induces an isomorphism on homology.
    pub fn is_homology_iso(&self) -> bool {
        let lo = self.source.lo().min(self.target.lo());
        let hi = self.source.hi().max(self.target.hi());
        for n in lo..=hi {
            // induced map H_n(src) -> H_n(tgt): compare ranks via standard
            // linear algebra on cycles.
            let zs = self.source.diff_at(n).kernel_basis();
            let zt = self.target.diff_at(n).kernel_basis();
            let bs_rank = self.source.diff_at(n + 1).rank();
            let bt = self.target.diff_at(n + 1).column_space_basis();
            let hs = zs.cols() - bs_rank;
            let ht = zt.cols() - bt.cols();
            if hs != ht {
                return false;
            }
            // rank of the induced map: image of f(cycles) in H_n(tgt)
            let f_cycles = self.block_at(n).mul(&zs);
            let mixed = Matrix::hstack(&[&f_cycles, &bt]);
            let induced_rank = mixed.rank() - bt.cols();
            if induced_rank != hs {
                return false;
            }
        }
        true
    }
}

/// Direct sum of a family with its inclusion and projection morphisms.
pub fn sum_with_injections<R: Scalar>(
    variant: Variant,
    parts: &[BaseObject<R>],
) -> Result<(BaseObject<R>, Vec<BaseMorphism<R>>, Vec<BaseMorphism<R>>)> {
    let mut sum = BaseObject::zero(variant);
    for p in parts {
        sum = sum.direct_sum(p)?;
    }
    let mut incls = Vec::new();
    let mut projs = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        let mut inc_blocks = Vec::new();
        let mut proj_blocks = Vec::new();
        for n in p.lo()..=p.hi() {
            let off: usize = parts[..i].iter().map(|q| q.dim_at(n)).sum();
            let d = p.dim_at(n);
            let mut inc = Matrix::zeros(sum.dim_at(n), d);
            for c in 0..d {
                *inc.at_mut(off + c, c) = R::one();
            }
            inc_blocks.push(inc);
        }
        for n in sum.lo()..=sum.hi() {
            let off: usize = parts[..i].iter().map(|q| q.dim_at(n)).sum();
            let d = p.dim_at(n);
            let mut pr = Matrix::zeros(d, sum.dim_at(n));
            for c in 0..d {
                *pr.at_mut(c, off + c) = R::one();
            }
            proj_blocks.push(pr);
        }
        incls.push(BaseMorphism::new(p.clone(), sum.clone(), inc_blocks)?);
        projs.push(BaseMorphism::new(sum.clone(), p.clone(), proj_blocks)?);
    }
    Ok((sum, incls, projs))
}

/// The symmetry isomorphism `X (x) Y -> Y (x) X`, with Koszul signs.
pub fn symmetry_iso<R: Scalar>(x: &BaseObject<R>, y: &BaseObject<R>) -> Result<BaseMorphism<R>> {
    let src = x.tensor(y)?;
    let tgt = y.tensor(x)?;
    let mut blocks = Vec::new();
    for n in src.lo()..=src.hi() {
        let mut blk = Matrix::zeros(tgt.dim_at(n), src.dim_at(n));
        for &(p, q, soff) in &x.tensor_summands(y, n) {
            let xp = x.dim_at(p);
            let yq = y.dim_at(q);
            if xp * yq == 0 {
                continue;
            }
            let t = y
                .tensor_summands(x, n)
                .iter()
                .find(|&&(tp, tq, _)| tp == q && tq == p)
                .map(|&(_, _, o)| o)
                .expect("matching summand");
            let sign = if (p * q).rem_euclid(2) == 0 { R::one() } else { -R::one() };
            for i in 0..xp {
                for j in 0..yq {
                    *blk.at_mut(t + j * xp + i, soff + i * yq + j) = sign.clone();
                }
            }
        }
        blocks.push(blk);
    }
    BaseMorphism::new(src, tgt, blocks)
}

/// The associator `(X (x) Y) (x) Z -> X (x) (Y (x) Z)`, a plain reindexing.
pub fn assoc_iso<R: Scalar>(
    x: &BaseObject<R>,
    y: &BaseObject<R>,
    z: &BaseObject<R>,
) -> Result<BaseMorphism<R>> {
    let xy = x.tensor(y)?;
    let yz = y.tensor(z)?;
    let src = xy.tensor(z)?;
    let tgt = x.tensor(&yz)?;
    let mut blocks = Vec::new();
    for n in src.lo()..=src.hi() {
        let mut blk = Matrix::zeros(tgt.dim_at(n), src.dim_at(n));
        for &(pq, r, soff0) in &xy.tensor_summands(z, n) {
            for &(p, q, soff1) in &x.tensor_summands(y, pq) {
                let (xp, yq, zr) = (x.dim_at(p), y.dim_at(q), z.dim_at(r));
                if xp * yq * zr == 0 {
                    continue;
                }
                let toff0 = tgt_offset(x, &yz, n, p).expect("summand");
                let toff1 = y
                    .tensor_summands(z, q + r)
                    .iter()
                    .find(|&&(tp, _, _)| tp == q)
                    .map(|&(_, _, o)| o)
                    .expect("summand");
                for i in 0..xp {
                    for j in 0..yq {
                        for k in 0..zr {
                            let s = soff0 + (soff1 + i * yq + j) * zr + k;
                            let t = toff0 + i * yz.dim_at(q + r) + toff1 + j * zr + k;
                            *blk.at_mut(t, s) = R::one();
                        }
                    }
                }
            }
        }
        blocks.push(blk);
    }
    BaseMorphism::new(src, tgt, blocks)
}

fn tgt_offset<R: Scalar>(x: &BaseObject<R>, yz: &BaseObject<R>, n: i64, p: i64) -> Option<usize> {
    x.tensor_summands(yz, n).iter().find(|&&(tp, _, _)| tp == p).map(|&(_, _, o)| o)
}

/// The left unit isomorphism `k (x) X -> X`.
pub fn unit_left_iso<R: Scalar>(x: &BaseObject<R>) -> Result<BaseMorphism<R>> {
    let k = BaseObject::unit(x.variant());
    let src = k.tensor(x)?;
    let blocks = (src.lo()..=src.hi()).map(|n| Matrix::identity(x.dim_at(n))).collect();
    BaseMorphism::new(src, x.clone(), blocks)
}

/// The right unit isomorphism `X (x) k -> X`.
pub fn unit_right_iso<R: Scalar>(x: &BaseObject<R>) -> Result<BaseMorphism<R>> {
    let k = BaseObject::unit(x.variant());
    let src = x.tensor(&k)?;
    let blocks = (src.lo()..=src.hi()).map(|n| Matrix::identity(x.dim_at(n))).collect();
    BaseMorphism::new(src, x.clone(), blocks)
}

/// Curry `f : X (x) Y -> Z` into `X -> Map(Y, Z)`.
pub fn curry<R: Scalar>(
    f: &BaseMorphism<R>,
    x: &BaseObject<R>,
    y: &BaseObject<R>,
) -> Result<BaseMorphism<R>> {
    let xy = x.tensor(y)?;
    if !f.source().same_shape(&xy) {
        return Err(EngineError::ShapeMismatch("curry source is not the stated tensor".into()));
    }
    let z = f.target().clone();
    let myz = y.internal_hom(&z)?;
    let mut blocks = Vec::new();
    for m in x.lo()..=x.hi() {
        let xm = x.dim_at(m);
        let mut blk = Matrix::zeros(myz.dim_at(m), xm);
        if xm != 0 {
            for &(p, hoff) in &y.hom_summands(&z, m) {
                let yp = y.dim_at(p);
                let zmp = z.dim_at(m + p);
                if yp * zmp == 0 {
                    continue;
                }
                let fb = f.block_at(m + p);
                let soff = x
                    .tensor_summands(y, m + p)
                    .iter()
                    .find(|&&(tp, tq, _)| tp == m && tq == p)
                    .map(|&(_, _, o)| o)
                    .expect("summand");
                for a in 0..xm {
                    for b in 0..yp {
                        for i in 0..zmp {
                            let v = fb.at(i, soff + a * yp + b);
                            if !v.is_zero() {
                                *blk.at_mut(hoff + b * zmp + i, a) = v.clone();
                            }
                        }
                    }
                }
            }
        }
        blocks.push(blk);
    }
    BaseMorphism::new(x.clone(), myz, blocks)
}

/// Uncurry `g : X -> Map(Y, Z)` into `X (x) Y -> Z`.
pub fn uncurry<R: Scalar>(
    g: &BaseMorphism<R>,
    x: &BaseObject<R>,
    y: &BaseObject<R>,
    z: &BaseObject<R>,
) -> Result<BaseMorphism<R>> {
    let myz = y.internal_hom(z)?;
    if !g.target().same_shape(&myz) {
        return Err(EngineError::ShapeMismatch("uncurry target is not the stated mapping object".into()));
    }
    let xy = x.tensor(y)?;
    let mut blocks = Vec::new();
    for n in xy.lo()..=xy.hi() {
        let mut blk = Matrix::zeros(z.dim_at(n), xy.dim_at(n));
        for &(m, p, soff) in &x.tensor_summands(y, n) {
            let xm = x.dim_at(m);
            let yp = y.dim_at(p);
            let zn = z.dim_at(n);
            if xm * yp * zn == 0 {
                continue;
            }
            let gb = g.block_at(m);
            let hoff = y
                .hom_summands(z, m)
                .iter()
                .find(|&&(hp, _)| hp == p)
                .map(|&(_, o)| o)
                .expect("summand");
            for a in 0..xm {
                for b in 0..yp {
                    for i in 0..zn {
                        let v = gb.at(hoff + b * zn + i, a);
                        if !v.is_zero() {
                            *blk.at_mut(i, soff + a * yp + b) = v.clone();
                        }
                    }
                }
            }
        }
        blocks.push(blk);
    }
    BaseMorphism::new(xy, z.clone(), blocks)
}

/// The operator `phi -> v . phi . u` on the mapping complex `Map(y, z)`,
/// for degree-0 chain maps `u : y -> y` and `v : z -> z`.
pub fn hom_conjugation<R: Scalar>(
    y: &BaseObject<R>,
    z: &BaseObject<R>,
    u: &BaseMorphism<R>,
    v: &BaseMorphism<R>,
) -> Result<BaseMorphism<R>> {
    let hom = y.internal_hom(z)?;
    let mut blocks = Vec::new();
    for n in hom.lo()..=hom.hi() {
        let mut blk = Matrix::zeros(hom.dim_at(n), hom.dim_at(n));
        for &(p, off) in &y.hom_summands(z, n) {
            let yp = y.dim_at(p);
            let znp = z.dim_at(p + n);
            if yp * znp == 0 {
                continue;
            }
            // vec(V X U) = (U^T kron V) vec(X), column-major
            let op = u.block_at(p).transpose().kronecker(&v.block_at(p + n));
            for i in 0..op.rows() {
                for j in 0..op.cols() {
                    let val = op.at(i, j);
                    if !val.is_zero() {
                        *blk.at_mut(off + i, off + j) = val.clone();
                    }
                }
            }
        }
        blocks.push(blk);
    }
    BaseMorphism::new(hom.clone(), hom, blocks)
}

/// Koszul sign of permuting homogeneous factors of the given degrees by
/// `theta` (factor `j` moves to slot `theta[j]`).
pub fn koszul_sign(degrees: &[i64], theta: &[usize]) -> i64 {
    let mut sign = 1i64;
    for j in 0..degrees.len() {
        for jp in (j + 1)..degrees.len() {
            if theta[j] > theta[jp] && (degrees[j] * degrees[jp]).rem_euclid(2) == 1 {
                sign = -sign;
            }
        }
    }
    sign
}

/// The disk complex `D^1`: `k` in degrees 1 and 0 with identity boundary.
pub fn disk<R: Scalar>() -> BaseObject<R> {
    BaseObject::chain(0, vec![1, 1], vec![Matrix::identity(1)]).expect("disk is a complex")
}

/// The sphere complex `S^0`: `k` in degree 0.
pub fn sphere<R: Scalar>() -> BaseObject<R> {
    BaseObject::chain(0, vec![1], vec![]).expect("sphere is a complex")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;

    type B = BaseObject<Q>;

    #[test]
    fn vect_tensor_dims_multiply() {
        let x = B::vect(2);
        let y = B::vect(3);
        assert_eq!(x.tensor(&y).unwrap().total_dim(), 6);
    }

    #[test]
    fn unit_laws_on_vect_and_chain() {
        let x = B::vect(4);
        assert!(unit_left_iso(&x).unwrap().is_iso());
        assert!(unit_right_iso(&x).unwrap().is_iso());
        let d = disk::<Q>();
        assert!(unit_left_iso(&d).unwrap().is_iso());
    }

    #[test]
    fn disk_tensor_disk_has_zero_homology() {
        let d = disk::<Q>();
        let dd = d.tensor(&d).unwrap();
        assert_eq!(dd.dims(), &[1, 2, 1]);
        assert!(dd.homology_dims().iter().all(|&(_, h)| h == 0));
    }

    #[test]
    fn hom_unit_is_identity_like() {
        let z = disk::<Q>();
        let k = B::unit(Variant::Chain);
        let m = k.internal_hom(&z).unwrap();
        assert_eq!(m.dims(), z.dims());
        assert_eq!(m.lo(), z.lo());
    }

    #[test]
    fn vect_hom_dim_product() {
        let y = B::vect(2);
        let z = B::vect(3);
        assert_eq!(y.internal_hom(&z).unwrap().total_dim(), 6);
    }

    #[test]
    fn differential_squares_to_zero_on_tensor() {
        let d = disk::<Q>();
        let t = d.tensor(&d).unwrap().tensor(&d).unwrap();
        for n in t.lo()..=t.hi() {
            assert!(t.diff_at(n).mul(&t.diff_at(n + 1)).is_zero());
        }
    }

    #[test]
    fn hom_differential_squares_to_zero() {
        let d = disk::<Q>();
        let dd = d.tensor(&d).unwrap();
        let h = dd.internal_hom(&d).unwrap();
        for n in h.lo()..=h.hi() {
            assert!(h.diff_at(n).mul(&h.diff_at(n + 1)).is_zero());
        }
    }

    #[test]
    fn symmetry_squares_to_identity_up_to_sign_structure() {
        let d = disk::<Q>();
        let s = symmetry_iso(&d, &d).unwrap();
        let s2 = symmetry_iso(&d, &d).unwrap().compose(&s).unwrap();
        assert!(s.is_iso());
        // c_{Y,X} after c_{X,Y} is the identity
        for n in s2.source().lo()..=s2.source().hi() {
            assert!(s2.block_at(n).is_identity());
        }
    }

    #[test]
    fn symmetry_is_chain_map_with_signs() {
        let d = disk::<Q>();
        let x = d.tensor(&d).unwrap();
        // constructor validates the chain-map identity
        assert!(symmetry_iso(&x, &d).unwrap().is_iso());
    }

    #[test]
    fn associator_pentagon_smoke() {
        let d = disk::<Q>();
        let a = assoc_iso(&d, &d, &d).unwrap();
        assert!(a.is_iso());
    }

    #[test]
    fn curry_uncurry_roundtrip() {
        let x = disk::<Q>();
        let y = disk::<Q>();
        let z = x.tensor(&y).unwrap();
        let f = BaseMorphism::identity(&z);
        let g = curry(&f, &x, &y).unwrap();
        let f2 = uncurry(&g, &x, &y, &z).unwrap();
        assert_eq!(f, f2);
    }

    #[test]
    fn curry_zero_is_zero() {
        let x = B::vect(2);
        let y = B::vect(3);
        let z = B::vect(2);
        let f = BaseMorphism::zero(x.tensor(&y).unwrap(), z.clone());
        let g = curry(&f, &x, &y).unwrap();
        assert!(g.is_zero());
    }

    #[test]
    fn coevaluation_from_identity() {
        // identity on k (x) Y curries to k -> Map(Y, Y)
        let y = B::vect(2);
        let k = B::unit(Variant::Vect);
        let ky = k.tensor(&y).unwrap();
        let f = BaseMorphism::new(ky.clone(), y.clone(), vec![Matrix::identity(2)]).unwrap();
        let g = curry(&f, &k, &y).unwrap();
        // the image is the identity matrix, vectorized
        let expect = Matrix::identity(2).vectorize();
        assert_eq!(g.block_at(0), expect);
    }

    #[test]
    fn homology_of_disk_and_sphere() {
        assert_eq!(disk::<Q>().total_homology_dim(), 0);
        assert_eq!(sphere::<Q>().total_homology_dim(), 1);
    }

    #[test]
    fn variant_mismatch_rejected() {
        let x = B::vect(1);
        let d = disk::<Q>();
        assert!(matches!(x.tensor(&d), Err(EngineError::VariantMismatch)));
    }
}
