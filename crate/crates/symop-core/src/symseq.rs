//! Truncated symmetric sequences and plain sequences, their tensor
//! products, mixed tensor powers and mapping objects.
//!
//! Every sequence lives under a global arity bound `N`. Two flags track
//! the semantics of the window:
//!
//! * `vanishing`: the intended object is genuinely zero above `N`
//!   (nilpotent-truncated operads, hand-built fixtures);
//! * `truncated`: some computed level inside the window may differ from
//!   the intended object because a sum over arities had to be cut at `N`.
//!
//! Tensor products are computed by the induced-representation formula
//! `(A (x) B)[s] = sum over s1+s2=s of Ind(A[s1] (x) B[s2])` along Young
//! inclusions; mixed powers `A[s,t]` enumerate set maps `pi : [s] -> [t]`
//! directly. The Young cosets are exactly the block-membership words of
//! the maps `pi` with canonical order-preserving representatives, which
//! is what the canonical structure isomorphisms below exploit.

use crate::base::multi::{factor_permutation, multi_tensor, multi_tensor_morphism};
use crate::base::{sum_with_injections, symmetry_iso, BaseMorphism, BaseObject, Variant};
use crate::errors::{EngineError, Result};
use crate::group::{induce, young_cosets, GObject, Perm, Shape};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Young shape for `Sigma_a x Sigma_b` inside `Sigma_{a+b}` (zero blocks
/// dropped).
pub fn young_pair(a: usize, b: usize) -> Shape {
    let mut blocks = Vec::new();
    if a > 0 {
        blocks.push(a);
    }
    if b > 0 {
        blocks.push(b);
    }
    if blocks.is_empty() {
        Shape::sigma(0)
    } else {
        Shape::new(blocks)
    }
}

/// A truncated symmetric sequence: one `Sigma_n`-object per arity `n <= N`.
#[derive(Clone, Debug)]
pub struct SymSeq<R> {
    entries: Vec<GObject<R>>,
    vanishing: bool,
    truncated: bool,
}

impl<R: Scalar> SymSeq<R> {
    pub fn new(entries: Vec<GObject<R>>, vanishing: bool) -> Result<Self> {
        if entries.is_empty() {
            return Err(EngineError::ShapeMismatch("a sequence needs at least arity 0".into()));
        }
        let variant = entries[0].carrier().variant();
        for (n, e) in entries.iter().enumerate() {
            if e.shape() != &Shape::sigma(n) {
                return Err(EngineError::ShapeMismatch(format!("entry {n} is not a Sigma_{n}-object")));
            }
            if e.carrier().variant() != variant {
                return Err(EngineError::VariantMismatch);
            }
        }
        Ok(SymSeq { entries, vanishing, truncated: false })
    }

    pub fn zero(bound: usize, variant: Variant) -> Self {
        let entries = (0..=bound)
            .map(|n| GObject::trivial(Shape::sigma(n), BaseObject::zero(variant)))
            .collect();
        SymSeq { entries, vanishing: true, truncated: false }
    }

    /// The tensor unit `1`: `k` at arity 0.
    pub fn tensor_unit(bound: usize, variant: Variant) -> Self {
        let mut s = Self::zero(bound, variant);
        s.entries[0] = GObject::trivial(Shape::sigma(0), BaseObject::unit(variant));
        s
    }

    /// The circle unit `I`: `k` at arity 1.
    pub fn circle_unit(bound: usize, variant: Variant) -> Self {
        let mut s = Self::zero(bound, variant);
        if bound >= 1 {
            s.entries[1] = GObject::trivial(Shape::sigma(1), BaseObject::unit(variant));
        }
        s
    }

    /// A sequence concentrated at one arity.
    pub fn concentrated(bound: usize, n: usize, value: GObject<R>) -> Result<Self> {
        if n > bound {
            return Err(EngineError::ShapeMismatch("concentration arity above the bound".into()));
        }
        if value.shape() != &Shape::sigma(n) {
            return Err(EngineError::ShapeMismatch("value group does not match the arity".into()));
        }
        let variant = value.carrier().variant();
        let mut s = Self::zero(bound, variant);
        s.entries[n] = value;
        Ok(s)
    }

    /// An object of the base category placed at arity 0.
    pub fn embed_at_zero(bound: usize, z: &BaseObject<R>) -> Self {
        let mut s = Self::zero(bound, z.variant());
        s.entries[0] = GObject::trivial(Shape::sigma(0), z.clone());
        s
    }

    pub fn bound(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn variant(&self) -> Variant {
        self.entries[0].carrier().variant()
    }

    pub fn level(&self, n: usize) -> &GObject<R> {
        &self.entries[n]
    }

    pub fn set_level(&mut self, n: usize, value: GObject<R>) {
        self.entries[n] = value;
    }

    pub fn levels(&self) -> &[GObject<R>] {
        &self.entries
    }

    pub fn reduced(&self) -> bool {
        self.entries[0].carrier().is_zero_object()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.carrier().is_zero_object())
    }

    pub fn max_level(&self) -> usize {
        (0..=self.bound())
            .rev()
            .find(|&n| !self.entries[n].carrier().is_zero_object())
            .unwrap_or(0)
    }

    pub fn vanishing(&self) -> bool {
        self.vanishing
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn set_vanishing(&mut self, v: bool) {
        self.vanishing = v;
    }

    pub fn set_truncated(&mut self, t: bool) {
        self.truncated = t;
    }

    pub fn dims_table(&self) -> Vec<Vec<usize>> {
        self.entries.iter().map(|e| e.carrier().dims().to_vec()).collect()
    }

    pub fn level_dims(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.dim()).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.entries.iter().map(|e| e.dim()).sum()
    }
}

/// A truncated plain sequence.
#[derive(Clone, Debug)]
pub struct Seq<R> {
    entries: Vec<BaseObject<R>>,
    vanishing: bool,
    truncated: bool,
}

impl<R: Scalar> Seq<R> {
    pub fn new(entries: Vec<BaseObject<R>>, vanishing: bool) -> Result<Self> {
        if entries.is_empty() {
            return Err(EngineError::ShapeMismatch("a sequence needs at least arity 0".into()));
        }
        let variant = entries[0].variant();
        if entries.iter().any(|e| e.variant() != variant) {
            return Err(EngineError::VariantMismatch);
        }
        Ok(Seq { entries, vanishing, truncated: false })
    }

    pub fn zero(bound: usize, variant: Variant) -> Self {
        Seq { entries: vec![BaseObject::zero(variant); bound + 1], vanishing: true, truncated: false }
    }

    pub fn tensor_unit(bound: usize, variant: Variant) -> Self {
        let mut s = Self::zero(bound, variant);
        s.entries[0] = BaseObject::unit(variant);
        s
    }

    pub fn circle_unit(bound: usize, variant: Variant) -> Self {
        let mut s = Self::zero(bound, variant);
        if bound >= 1 {
            s.entries[1] = BaseObject::unit(variant);
        }
        s
    }

    pub fn embed_at_zero(bound: usize, z: &BaseObject<R>) -> Self {
        let mut s = Self::zero(bound, z.variant());
        s.entries[0] = z.clone();
        s
    }

    pub fn bound(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn variant(&self) -> Variant {
        self.entries[0].variant()
    }

    pub fn level(&self, n: usize) -> &BaseObject<R> {
        &self.entries[n]
    }

    pub fn set_level(&mut self, n: usize, value: BaseObject<R>) {
        self.entries[n] = value;
    }

    pub fn levels(&self) -> &[BaseObject<R>] {
        &self.entries
    }

    pub fn reduced(&self) -> bool {
        self.entries[0].is_zero_object()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero_object())
    }

    pub fn max_level(&self) -> usize {
        (0..=self.bound()).rev().find(|&n| !self.entries[n].is_zero_object()).unwrap_or(0)
    }

    pub fn vanishing(&self) -> bool {
        self.vanishing
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn set_vanishing(&mut self, v: bool) {
        self.vanishing = v;
    }

    pub fn set_truncated(&mut self, t: bool) {
        self.truncated = t;
    }

    pub fn dims_table(&self) -> Vec<Vec<usize>> {
        self.entries.iter().map(|e| e.dims().to_vec()).collect()
    }

    pub fn level_dims(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.total_dim()).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.entries.iter().map(|e| e.total_dim()).sum()
    }
}

/// A levelwise morphism of symmetric sequences; each level is validated to
/// be equivariant.
#[derive(Clone, Debug)]
pub struct SymSeqMorphism<R> {
    source: SymSeq<R>,
    target: SymSeq<R>,
    levels: Vec<BaseMorphism<R>>,
}

impl<R: Scalar> SymSeqMorphism<R> {
    pub fn new(source: SymSeq<R>, target: SymSeq<R>, levels: Vec<BaseMorphism<R>>) -> Result<Self> {
        if source.bound() != target.bound() || levels.len() != source.entries.len() {
            return Err(EngineError::ShapeMismatch("level count mismatch".into()));
        }
        for (n, f) in levels.iter().enumerate() {
            if !f.source().same_shape(source.level(n).carrier()) || !f.target().same_shape(target.level(n).carrier()) {
                return Err(EngineError::ShapeMismatch(format!("level {n} endpoints mismatch")));
            }
            for (g_s, g_t) in source.level(n).gens().iter().zip(target.level(n).gens()) {
                if f.compose(g_s)? != g_t.compose(f)? {
                    return Err(EngineError::ValidationFailed(format!("level {n} morphism is not equivariant")));
                }
            }
        }
        Ok(SymSeqMorphism { source, target, levels })
    }

    pub fn zero(source: SymSeq<R>, target: SymSeq<R>) -> Self {
        let levels = (0..=source.bound())
            .map(|n| BaseMorphism::zero(source.level(n).carrier().clone(), target.level(n).carrier().clone()))
            .collect();
        SymSeqMorphism { source, target, levels }
    }

    pub fn identity(seq: &SymSeq<R>) -> Self {
        let levels = seq.levels().iter().map(|e| BaseMorphism::identity(e.carrier())).collect();
        SymSeqMorphism { source: seq.clone(), target: seq.clone(), levels }
    }

    pub fn source(&self) -> &SymSeq<R> {
        &self.source
    }

    pub fn target(&self) -> &SymSeq<R> {
        &self.target
    }

    pub fn level(&self, n: usize) -> &BaseMorphism<R> {
        &self.levels[n]
    }

    pub fn levels(&self) -> &[BaseMorphism<R>] {
        &self.levels
    }

    pub fn compose(&self, first: &Self) -> Result<Self> {
        let levels = self
            .levels
            .iter()
            .zip(&first.levels)
            .map(|(g, f)| g.compose(f))
            .collect::<Result<Vec<_>>>()?;
        Ok(SymSeqMorphism { source: first.source.clone(), target: self.target.clone(), levels })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let levels = self
            .levels
            .iter()
            .zip(&other.levels)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(SymSeqMorphism { source: self.source.clone(), target: self.target.clone(), levels })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&R::from_i64(-1)))
    }

    pub fn scale(&self, c: &R) -> Self {
        SymSeqMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            levels: self.levels.iter().map(|f| f.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.levels.iter().all(|f| f.is_zero())
    }

    pub fn is_iso(&self) -> bool {
        self.levels.iter().all(|f| f.is_iso())
    }

    pub fn is_injective(&self) -> bool {
        self.levels.iter().all(|f| f.is_injective())
    }

    pub fn is_surjective(&self) -> bool {
        self.levels.iter().all(|f| f.is_surjective())
    }

    pub fn inverse(&self) -> Result<Self> {
        let levels = self.levels.iter().map(|f| f.inverse()).collect::<Result<Vec<_>>>()?;
        Ok(SymSeqMorphism { source: self.target.clone(), target: self.source.clone(), levels })
    }

    /// Equality of the underlying matrices (padding-insensitive).
    pub fn same_maps(&self, other: &Self) -> bool {
        self.levels.iter().zip(&other.levels).all(|(a, b)| {
            let lo = a.source().lo().min(b.source().lo());
            let hi = a.source().hi().max(b.source().hi());
            (lo..=hi).all(|n| a.block_at(n) == b.block_at(n))
        })
    }
}

/// A levelwise morphism of plain sequences.
#[derive(Clone, Debug)]
pub struct SeqMorphism<R> {
    source: Seq<R>,
    target: Seq<R>,
    levels: Vec<BaseMorphism<R>>,
}

impl<R: Scalar> SeqMorphism<R> {
    pub fn new(source: Seq<R>, target: Seq<R>, levels: Vec<BaseMorphism<R>>) -> Result<Self> {
        if source.bound() != target.bound() || levels.len() != source.entries.len() {
            return Err(EngineError::ShapeMismatch("level count mismatch".into()));
        }
        for (n, f) in levels.iter().enumerate() {
            if !f.source().same_shape(source.level(n)) || !f.target().same_shape(target.level(n)) {
                return Err(EngineError::ShapeMismatch(format!("level {n} endpoints mismatch")));
            }
        }
        Ok(SeqMorphism { source, target, levels })
    }

    pub fn zero(source: Seq<R>, target: Seq<R>) -> Self {
        let levels = (0..=source.bound())
            .map(|n| BaseMorphism::zero(source.level(n).clone(), target.level(n).clone()))
            .collect();
        SeqMorphism { source, target, levels }
    }

    pub fn identity(seq: &Seq<R>) -> Self {
        let levels = seq.entries.iter().map(BaseMorphism::identity).collect();
        SeqMorphism { source: seq.clone(), target: seq.clone(), levels }
    }

    pub fn source(&self) -> &Seq<R> {
        &self.source
    }

    pub fn target(&self) -> &Seq<R> {
        &self.target
    }

    pub fn level(&self, n: usize) -> &BaseMorphism<R> {
        &self.levels[n]
    }

    pub fn levels(&self) -> &[BaseMorphism<R>] {
        &self.levels
    }

    pub fn compose(&self, first: &Self) -> Result<Self> {
        let levels = self
            .levels
            .iter()
            .zip(&first.levels)
            .map(|(g, f)| g.compose(f))
            .collect::<Result<Vec<_>>>()?;
        Ok(SeqMorphism { source: first.source.clone(), target: self.target.clone(), levels })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let levels = self
            .levels
            .iter()
            .zip(&other.levels)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(SeqMorphism { source: self.source.clone(), target: self.target.clone(), levels })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&R::from_i64(-1)))
    }

    pub fn scale(&self, c: &R) -> Self {
        SeqMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            levels: self.levels.iter().map(|f| f.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.levels.iter().all(|f| f.is_zero())
    }

    pub fn is_iso(&self) -> bool {
        self.levels.iter().all(|f| f.is_iso())
    }

    pub fn is_injective(&self) -> bool {
        self.levels.iter().all(|f| f.is_injective())
    }

    pub fn is_surjective(&self) -> bool {
        self.levels.iter().all(|f| f.is_surjective())
    }

    pub fn inverse(&self) -> Result<Self> {
        let levels = self.levels.iter().map(|f| f.inverse()).collect::<Result<Vec<_>>>()?;
        Ok(SeqMorphism { source: self.target.clone(), target: self.source.clone(), levels })
    }

    pub fn same_maps(&self, other: &Self) -> bool {
        self.levels.iter().zip(&other.levels).all(|(a, b)| {
            let lo = a.source().lo().min(b.source().lo());
            let hi = a.source().hi().max(b.source().hi());
            (lo..=hi).all(|n| a.block_at(n) == b.block_at(n))
        })
    }
}

// ---------------------------------------------------------------------------
// Mixed tensor powers
// ---------------------------------------------------------------------------

/// All set maps `[s] -> [t]` as vectors, lexicographic.
pub fn set_maps(s: usize, t: usize) -> Vec<Vec<usize>> {
    if s == 0 {
        return vec![vec![]];
    }
    if t == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    let mut cur = vec![0usize; s];
    loop {
        out.push(cur.clone());
        let mut i = s;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < t {
                break;
            }
            cur[i] = 0;
        }
    }
}

pub fn fiber_sizes(pi: &[usize], t: usize) -> Vec<usize> {
    let mut k = vec![0usize; t];
    for &v in pi {
        k[v] += 1;
    }
    k
}

/// The mixed tensor power `A[s, t]` with its `Sigma_s x Sigma_t` action
/// (shape `[s] ++ [t]`) and full summand bookkeeping.
#[derive(Clone, Debug)]
pub struct MixedPower<R> {
    pub gobj: GObject<R>,
    /// the maps `pi : [s] -> [t]`, in `set_maps` order
    pub pis: Vec<Vec<usize>>,
    /// per `pi`, the factor carriers `A[fiber size]` in slot order
    pub parts: Vec<Vec<BaseObject<R>>>,
    /// per `pi`, inclusion of its multi-tensor into the carrier
    pub incls: Vec<BaseMorphism<R>>,
    /// per `pi`, projection from the carrier
    pub projs: Vec<BaseMorphism<R>>,
    s: usize,
    t: usize,
}

impl<R: Scalar> MixedPower<R> {
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn pi_index(&self, pi: &[usize]) -> usize {
        self.pis.iter().position(|p| p == pi).expect("map is enumerated")
    }
}

/// Builds `A[s,t]` as the sum over set maps with fibers realized on the
/// skeleton in increasing order.
pub fn tensor_power_mixed<R: Scalar>(a: &SymSeq<R>, s: usize, t: usize) -> Result<MixedPower<R>> {
    let variant = a.variant();
    let shape = young_pair(s, t);
    if s > a.bound() {
        return Err(EngineError::ShapeMismatch("mixed power arity above the bound".into()));
    }
    let pis = set_maps(s, t);
    let mut parts = Vec::new();
    let mut part_objs = Vec::new();
    for pi in &pis {
        let sizes = fiber_sizes(pi, t);
        let p: Vec<BaseObject<R>> = sizes.iter().map(|&k| a.level(k).carrier().clone()).collect();
        let obj = multi_tensor(variant, &p)?;
        parts.push(p);
        part_objs.push(obj);
    }
    let (carrier, incls, projs) = sum_with_injections(variant, &part_objs)?;
    if pis.is_empty() {
        let gobj = GObject::trivial(shape, BaseObject::zero(variant));
        return Ok(MixedPower { gobj, pis, parts, incls, projs, s, t });
    }
    let mut gens = Vec::new();
    for &pos in &shape.gen_positions() {
        let in_first_block = s >= 1 && pos < s - 1;
        let mor = if in_first_block {
            mixed_sigma_s_gen(a, &pis, &parts, &part_objs, &incls, &projs, &carrier, pos, t)?
        } else {
            mixed_sigma_t_gen(&pis, &parts, &incls, &projs, &carrier, pos - s, t)?
        };
        gens.push(mor);
    }
    let gobj = GObject::new(shape, carrier, gens)?;
    Ok(MixedPower { gobj, pis, parts, incls, projs, s, t })
}

#[allow(clippy::too_many_arguments)]
fn mixed_sigma_s_gen<R: Scalar>(
    a: &SymSeq<R>,
    pis: &[Vec<usize>],
    parts: &[Vec<BaseObject<R>>],
    part_objs: &[BaseObject<R>],
    incls: &[BaseMorphism<R>],
    projs: &[BaseMorphism<R>],
    carrier: &BaseObject<R>,
    i: usize,
    t: usize,
) -> Result<BaseMorphism<R>> {
    let variant = carrier.variant();
    let mut acc = BaseMorphism::zero(carrier.clone(), carrier.clone());
    for (src_idx, pi) in pis.iter().enumerate() {
        let mut moved = pi.clone();
        moved.swap(i, i + 1);
        let tgt_idx = pis.iter().position(|p| *p == moved).expect("closed under swaps");
        let map = if pi[i] == pi[i + 1] {
            // within-fiber adjacent transposition on factor j0
            let j0 = pi[i];
            let r = pi[..i].iter().filter(|&&v| v == j0).count();
            let level = fiber_sizes(pi, t)[j0];
            let gen_idx = Shape::sigma(level)
                .gen_positions()
                .iter()
                .position(|&p| p == r)
                .expect("adjacent pair is in fiber range");
            let mut maps: Vec<BaseMorphism<R>> = parts[src_idx].iter().map(BaseMorphism::identity).collect();
            maps[j0] = a.level(level).gens()[gen_idx].clone();
            multi_tensor_morphism(variant, &maps)?
        } else {
            BaseMorphism::identity(&part_objs[src_idx])
        };
        acc = acc.add(&incls[tgt_idx].compose(&map)?.compose(&projs[src_idx])?)?;
    }
    Ok(acc)
}

fn mixed_sigma_t_gen<R: Scalar>(
    pis: &[Vec<usize>],
    parts: &[Vec<BaseObject<R>>],
    incls: &[BaseMorphism<R>],
    projs: &[BaseMorphism<R>],
    carrier: &BaseObject<R>,
    r: usize,
    t: usize,
) -> Result<BaseMorphism<R>> {
    let variant = carrier.variant();
    let mut theta: Vec<usize> = (0..t).collect();
    theta.swap(r, r + 1);
    let mut acc = BaseMorphism::zero(carrier.clone(), carrier.clone());
    for (src_idx, pi) in pis.iter().enumerate() {
        let moved: Vec<usize> = pi.iter().map(|&v| theta[v]).collect();
        let tgt_idx = pis.iter().position(|p| *p == moved).expect("closed under relabeling");
        let map = factor_permutation(variant, &parts[src_idx], &theta)?;
        acc = acc.add(&incls[tgt_idx].compose(&map)?.compose(&projs[src_idx])?)?;
    }
    Ok(acc)
}

/// Functorial action of a sequence morphism on mixed powers, applying `f`
/// on every fiber factor.
pub fn mixed_power_morphism<R: Scalar>(
    f: &SymSeqMorphism<R>,
    src: &MixedPower<R>,
    tgt: &MixedPower<R>,
) -> Result<BaseMorphism<R>> {
    let variant = src.gobj.carrier().variant();
    let mut acc = BaseMorphism::zero(src.gobj.carrier().clone(), tgt.gobj.carrier().clone());
    for (idx, pi) in src.pis.iter().enumerate() {
        let sizes = fiber_sizes(pi, src.t);
        let maps: Vec<BaseMorphism<R>> = sizes.iter().map(|&k| f.level(k).clone()).collect();
        let m = multi_tensor_morphism(variant, &maps)?;
        acc = acc.add(&tgt.incls[idx].compose(&m)?.compose(&src.projs[idx])?)?;
    }
    Ok(acc)
}

/// Order-preserving maps `[m] -> [n]` as compositions `m = m_1 + .. + m_n`.
pub fn compositions(m: usize, n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return if m == 0 { vec![vec![]] } else { vec![] };
    }
    fn rec(cur: &mut Vec<usize>, pos: usize, rem: usize, out: &mut Vec<Vec<usize>>) {
        if pos + 1 == cur.len() {
            cur[pos] = rem;
            out.push(cur.clone());
            return;
        }
        for v in 0..=rem {
            cur[pos] = v;
            rec(cur, pos + 1, rem - v, out);
        }
    }
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    rec(&mut cur, 0, m, &mut out);
    out
}

/// The ordered mixed power `X<m, n>`: sum over order-preserving maps.
#[derive(Clone, Debug)]
pub struct SeqPower<R> {
    pub obj: BaseObject<R>,
    pub comps: Vec<Vec<usize>>,
    pub parts: Vec<Vec<BaseObject<R>>>,
    pub incls: Vec<BaseMorphism<R>>,
    pub projs: Vec<BaseMorphism<R>>,
}

impl<R: Scalar> SeqPower<R> {
    pub fn comp_index(&self, comp: &[usize]) -> usize {
        self.comps.iter().position(|c| c == comp).expect("composition is enumerated")
    }
}

pub fn seq_power_mixed<R: Scalar>(x: &Seq<R>, m: usize, n: usize) -> Result<SeqPower<R>> {
    let variant = x.variant();
    if m > x.bound() {
        return Err(EngineError::ShapeMismatch("mixed power arity above the bound".into()));
    }
    let comps = compositions(m, n);
    let mut parts = Vec::new();
    let mut part_objs = Vec::new();
    for c in &comps {
        let p: Vec<BaseObject<R>> = c.iter().map(|&k| x.level(k).clone()).collect();
        let o = multi_tensor(variant, &p)?;
        parts.push(p);
        part_objs.push(o);
    }
    let (obj, incls, projs) = sum_with_injections(variant, &part_objs)?;
    Ok(SeqPower { obj, comps, parts, incls, projs })
}

/// Functoriality of `X<m,n>` in `X`.
pub fn seq_power_morphism<R: Scalar>(
    f: &SeqMorphism<R>,
    src: &SeqPower<R>,
    tgt: &SeqPower<R>,
) -> Result<BaseMorphism<R>> {
    let variant = src.obj.variant();
    let mut acc = BaseMorphism::zero(src.obj.clone(), tgt.obj.clone());
    for (idx, comp) in src.comps.iter().enumerate() {
        let maps: Vec<BaseMorphism<R>> = comp.iter().map(|&k| f.level(k).clone()).collect();
        let m = multi_tensor_morphism(variant, &maps)?;
        acc = acc.add(&tgt.incls[idx].compose(&m)?.compose(&src.projs[idx])?)?;
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Tensor products
// ---------------------------------------------------------------------------

/// One summand of a symmetric-sequence tensor level: the induced object
/// for an arity split, with inclusion/projection per Young coset.
#[derive(Clone, Debug)]
pub struct TensorPart<R> {
    pub s1: usize,
    pub s2: usize,
    /// the component `A[s1] (x) B[s2]`
    pub component: BaseObject<R>,
    /// canonical coset representatives of `Sigma_{s1} x Sigma_{s2} \ Sigma_s`
    pub cosets: Vec<Perm>,
    /// `component -> level carrier`, one per coset
    pub incl: Vec<BaseMorphism<R>>,
    /// `level carrier -> component`, one per coset
    pub proj: Vec<BaseMorphism<R>>,
}

/// Layout of one level of a symmetric-sequence tensor product.
#[derive(Clone, Debug)]
pub struct TensorLevel<R> {
    pub carrier: BaseObject<R>,
    pub parts: Vec<TensorPart<R>>,
}

/// `(A (x) B)` with its per-level layout.
pub fn tensor_symseq_full<R: Scalar>(a: &SymSeq<R>, b: &SymSeq<R>) -> Result<(SymSeq<R>, Vec<TensorLevel<R>>)> {
    if a.bound() != b.bound() {
        return Err(EngineError::ShapeMismatch("bound mismatch".into()));
    }
    if a.variant() != b.variant() {
        return Err(EngineError::VariantMismatch);
    }
    let n = a.bound();
    let variant = a.variant();
    let mut entries = Vec::new();
    let mut layouts = Vec::new();
    for s in 0..=n {
        let mut parts_meta = Vec::new();
        let mut induced = Vec::new();
        for s1 in 0..=s {
            let s2 = s - s1;
            let t = a.level(s1).tensor_product(b.level(s2))?;
            let (ind, _) = induce(&t, s)?;
            let cosets = young_cosets(&young_pair(s1, s2), s);
            parts_meta.push((s1, s2, t.carrier().clone(), cosets));
            induced.push(ind);
        }
        let part_objs: Vec<BaseObject<R>> = induced.iter().map(|g| g.carrier().clone()).collect();
        let (carrier, part_incls, part_projs) = sum_with_injections(variant, &part_objs)?;
        // assemble the level GObject by summing the induced generator
        // actions through the inclusions
        let positions = Shape::sigma(s).gen_positions();
        let mut gens = Vec::new();
        for (gi, _) in positions.iter().enumerate() {
            let mut acc = BaseMorphism::zero(carrier.clone(), carrier.clone());
            for (pi, ind) in induced.iter().enumerate() {
                let g = &ind.gens()[gi];
                acc = acc.add(&part_incls[pi].compose(g)?.compose(&part_projs[pi])?)?;
            }
            gens.push(acc);
        }
        let level = GObject::new(Shape::sigma(s), carrier.clone(), gens)?;
        // per-coset inclusions: component -> coset copy inside induced part
        let mut parts = Vec::new();
        for (pi, (s1, s2, component, cosets)) in parts_meta.into_iter().enumerate() {
            let copies: Vec<BaseObject<R>> = vec![component.clone(); cosets.len()];
            let (_, cop_incls, cop_projs) = sum_with_injections(variant, &copies)?;
            let mut incl = Vec::new();
            let mut proj = Vec::new();
            for c in 0..cosets.len() {
                // the induced carrier is exactly the sum of coset copies
                let inc = part_incls[pi].compose(&retarget(&cop_incls[c], induced[pi].carrier())?)?;
                let prj = retarget_src(&cop_projs[c], induced[pi].carrier())?.compose(&part_projs[pi])?;
                incl.push(inc);
                proj.push(prj);
            }
            parts.push(TensorPart { s1, s2, component, cosets, incl, proj });
        }
        entries.push(level);
        layouts.push(TensorLevel { carrier, parts });
    }
    let mut out = SymSeq::new(entries, false)?;
    out.truncated = a.truncated || b.truncated;
    out.vanishing = a.vanishing && b.vanishing && (a.is_zero() || b.is_zero() || a.max_level() + b.max_level() <= n);
    Ok((out, layouts))
}

/// Rebuilds a morphism with a padding-equal target object.
fn retarget<R: Scalar>(f: &BaseMorphism<R>, tgt: &BaseObject<R>) -> Result<BaseMorphism<R>> {
    if !f.target().same_shape(tgt) {
        return Err(EngineError::ShapeMismatch("retarget onto a different object".into()));
    }
    let blocks = (f.source().lo()..=f.source().hi())
        .map(|n| {
            let b = f.block_at(n);
            let mut out = Matrix::zeros(tgt.dim_at(n), f.source().dim_at(n));
            for i in 0..b.rows().min(out.rows()) {
                for j in 0..b.cols() {
                    *out.at_mut(i, j) = b.at(i, j).clone();
                }
            }
            out
        })
        .collect();
    BaseMorphism::new(f.source().clone(), tgt.clone(), blocks)
}

fn retarget_src<R: Scalar>(f: &BaseMorphism<R>, src: &BaseObject<R>) -> Result<BaseMorphism<R>> {
    if !f.source().same_shape(src) {
        return Err(EngineError::ShapeMismatch("resource onto a different object".into()));
    }
    let blocks = (src.lo()..=src.hi()).map(|n| f.block_at(n)).collect();
    BaseMorphism::new(src.clone(), f.target().clone(), blocks)
}

pub fn tensor_symseq<R: Scalar>(a: &SymSeq<R>, b: &SymSeq<R>) -> Result<SymSeq<R>> {
    Ok(tensor_symseq_full(a, b)?.0)
}

/// Functoriality of the tensor product on morphisms.
pub fn tensor_symseq_morphism<R: Scalar>(f: &SymSeqMorphism<R>, g: &SymSeqMorphism<R>) -> Result<SymSeqMorphism<R>> {
    let (src, src_layout) = tensor_symseq_full(f.source(), g.source())?;
    let (tgt, tgt_layout) = tensor_symseq_full(f.target(), g.target())?;
    let mut levels = Vec::new();
    for s in 0..=src.bound() {
        let mut acc = BaseMorphism::zero(src_layout[s].carrier.clone(), tgt_layout[s].carrier.clone());
        for (pidx, part) in src_layout[s].parts.iter().enumerate() {
            let fg = f.level(part.s1).tensor(g.level(part.s2))?;
            let tpart = &tgt_layout[s].parts[pidx];
            for c in 0..part.cosets.len() {
                acc = acc.add(&tpart.incl[c].compose(&fg)?.compose(&part.proj[c])?)?;
            }
        }
        levels.push(acc);
    }
    SymSeqMorphism::new(src, tgt, levels)
}

/// Layout of one level of a sequence tensor product.
#[derive(Clone, Debug)]
pub struct SeqTensorLevel<R> {
    pub carrier: BaseObject<R>,
    pub parts: Vec<(usize, usize, BaseObject<R>)>,
    pub incls: Vec<BaseMorphism<R>>,
    pub projs: Vec<BaseMorphism<R>>,
}

pub fn tensor_seq_full<R: Scalar>(x: &Seq<R>, y: &Seq<R>) -> Result<(Seq<R>, Vec<SeqTensorLevel<R>>)> {
    if x.bound() != y.bound() {
        return Err(EngineError::ShapeMismatch("bound mismatch".into()));
    }
    if x.variant() != y.variant() {
        return Err(EngineError::VariantMismatch);
    }
    let n = x.bound();
    let mut entries = Vec::new();
    let mut layouts = Vec::new();
    for m in 0..=n {
        let mut parts = Vec::new();
        let mut part_objs = Vec::new();
        for m1 in 0..=m {
            let m2 = m - m1;
            let t = x.level(m1).tensor(y.level(m2))?;
            parts.push((m1, m2, t.clone()));
            part_objs.push(t);
        }
        let (obj, incls, projs) = sum_with_injections(x.variant(), &part_objs)?;
        entries.push(obj.clone());
        layouts.push(SeqTensorLevel { carrier: obj, parts, incls, projs });
    }
    let mut out = Seq::new(entries, false)?;
    out.truncated = x.truncated || y.truncated;
    out.vanishing = x.vanishing && y.vanishing && (x.is_zero() || y.is_zero() || x.max_level() + y.max_level() <= n);
    Ok((out, layouts))
}

pub fn tensor_seq<R: Scalar>(x: &Seq<R>, y: &Seq<R>) -> Result<Seq<R>> {
    Ok(tensor_seq_full(x, y)?.0)
}

pub fn tensor_seq_morphism<R: Scalar>(f: &SeqMorphism<R>, g: &SeqMorphism<R>) -> Result<SeqMorphism<R>> {
    let (src, src_layout) = tensor_seq_full(f.source(), g.source())?;
    let (tgt, tgt_layout) = tensor_seq_full(f.target(), g.target())?;
    let mut levels = Vec::new();
    for m in 0..=src.bound() {
        let mut acc = BaseMorphism::zero(src_layout[m].carrier.clone(), tgt_layout[m].carrier.clone());
        for (pidx, (m1, m2, _)) in src_layout[m].parts.iter().enumerate() {
            let fg = f.level(*m1).tensor(g.level(*m2))?;
            acc = acc.add(&tgt_layout[m].incls[pidx].compose(&fg)?.compose(&src_layout[m].projs[pidx])?)?;
        }
        levels.push(acc);
    }
    SeqMorphism::new(src, tgt, levels)
}

// ---------------------------------------------------------------------------
// Canonical structure isomorphisms for the tensor products
// ---------------------------------------------------------------------------

/// `A (x) 1 -> A`: project onto the `(s, 0)` summand.
pub fn unit_right_iso_symseq<R: Scalar>(a: &SymSeq<R>) -> Result<SymSeqMorphism<R>> {
    let one = SymSeq::tensor_unit(a.bound(), a.variant());
    let (src, layout) = tensor_symseq_full(a, &one)?;
    let mut levels = Vec::new();
    for s in 0..=a.bound() {
        let part = layout[s].parts.iter().find(|p| p.s1 == s).expect("(s,0) part");
        levels.push(part.proj[0].clone());
    }
    SymSeqMorphism::new(src, a.clone(), levels)
}

/// `1 (x) A -> A`: project onto the `(0, s)` summand.
pub fn unit_left_iso_symseq<R: Scalar>(a: &SymSeq<R>) -> Result<SymSeqMorphism<R>> {
    let one = SymSeq::tensor_unit(a.bound(), a.variant());
    let (src, layout) = tensor_symseq_full(&one, a)?;
    let mut levels = Vec::new();
    for s in 0..=a.bound() {
        let part = layout[s].parts.iter().find(|p| p.s2 == s).expect("(0,s) part");
        levels.push(part.proj[0].clone());
    }
    SymSeqMorphism::new(src, a.clone(), levels)
}

fn word_of(c: &Perm, s1: usize) -> Vec<usize> {
    (0..c.n()).map(|x| usize::from(c.apply(x) >= s1)).collect()
}

/// The symmetry `A (x) B -> B (x) A`: summand `(s1, s2)` with coset word
/// `w` goes to `(s2, s1)` with the complementary word, through the base
/// symmetry of the components.
pub fn symmetry_iso_symseq<R: Scalar>(a: &SymSeq<R>, b: &SymSeq<R>) -> Result<SymSeqMorphism<R>> {
    let (src, src_layout) = tensor_symseq_full(a, b)?;
    let (tgt, tgt_layout) = tensor_symseq_full(b, a)?;
    let mut levels = Vec::new();
    for s in 0..=a.bound() {
        let mut acc = BaseMorphism::zero(src_layout[s].carrier.clone(), tgt_layout[s].carrier.clone());
        for part in &src_layout[s].parts {
            let tpart = tgt_layout[s]
                .parts
                .iter()
                .find(|p| p.s1 == part.s2 && p.s2 == part.s1)
                .expect("swapped part");
            let comp = symmetry_iso(a.level(part.s1).carrier(), b.level(part.s2).carrier())?;
            for (ci, c) in part.cosets.iter().enumerate() {
                let w = word_of(c, part.s1);
                let swapped: Vec<usize> = w.iter().map(|&x| 1 - x).collect();
                let cj = tpart
                    .cosets
                    .iter()
                    .position(|d| word_of(d, tpart.s1) == swapped)
                    .expect("complementary coset");
                acc = acc.add(&tpart.incl[cj].compose(&comp)?.compose(&part.proj[ci])?)?;
            }
        }
        levels.push(acc);
    }
    SymSeqMorphism::new(src, tgt, levels)
}

/// The associator `(A (x) B) (x) C -> A (x) (B (x) C)`: nested summands
/// match through their combined three-letter membership words, with the
/// base associator on components.
pub fn assoc_iso_symseq<R: Scalar>(
    a: &SymSeq<R>,
    b: &SymSeq<R>,
    c: &SymSeq<R>,
) -> Result<SymSeqMorphism<R>> {
    let (ab, ab_layout) = tensor_symseq_full(a, b)?;
    let (bc, bc_layout) = tensor_symseq_full(b, c)?;
    let (src, src_layout) = tensor_symseq_full(&ab, c)?;
    let (tgt, tgt_layout) = tensor_symseq_full(a, &bc)?;
    let mut levels = Vec::new();
    for s in 0..=a.bound() {
        let mut acc = BaseMorphism::zero(src_layout[s].carrier.clone(), tgt_layout[s].carrier.clone());
        for opart in &src_layout[s].parts {
            let (u, s3) = (opart.s1, opart.s2);
            for (oc_idx, oc) in opart.cosets.iter().enumerate() {
                let ow = word_of(oc, u);
                for ipart in &ab_layout[u].parts {
                    let (s1, s2) = (ipart.s1, ipart.s2);
                    for (ic_idx, ic) in ipart.cosets.iter().enumerate() {
                        let iw = word_of(ic, s1);
                        let mut rank = 0usize;
                        let combined: Vec<usize> = (0..s)
                            .map(|x| {
                                if ow[x] == 1 {
                                    2
                                } else {
                                    let v = iw[rank];
                                    rank += 1;
                                    v
                                }
                            })
                            .collect();
                        let v23 = s2 + s3;
                        let tpart = tgt_layout[s]
                            .parts
                            .iter()
                            .find(|p| p.s1 == s1 && p.s2 == v23)
                            .expect("target part");
                        let tow: Vec<usize> = combined.iter().map(|&x| usize::from(x != 0)).collect();
                        let toc = tpart
                            .cosets
                            .iter()
                            .position(|d| word_of(d, s1) == tow)
                            .expect("target outer coset");
                        let tipart = bc_layout[v23]
                            .parts
                            .iter()
                            .find(|p| p.s1 == s2 && p.s2 == s3)
                            .expect("target inner part");
                        let tiw: Vec<usize> = combined.iter().filter(|&&x| x != 0).map(|&x| x - 1).collect();
                        let tic = tipart
                            .cosets
                            .iter()
                            .position(|d| word_of(d, s2) == tiw)
                            .expect("target inner coset");
                        // component passage
                        let comp = crate::base::assoc_iso(
                            a.level(s1).carrier(),
                            b.level(s2).carrier(),
                            c.level(s3).carrier(),
                        )?;
                        let p_inner = ipart.proj[ic_idx].tensor(&BaseMorphism::identity(c.level(s3).carrier()))?;
                        let i_inner = BaseMorphism::identity(a.level(s1).carrier()).tensor(&tipart.incl[tic])?;
                        let p_outer = &opart.proj[oc_idx];
                        let i_outer = &tpart.incl[toc];
                        let chain = i_outer
                            .compose(&i_inner)?
                            .compose(&comp)?
                            .compose(&p_inner)?
                            .compose(p_outer)?;
                        acc = acc.add(&chain)?;
                    }
                }
            }
        }
        levels.push(acc);
    }
    SymSeqMorphism::new(src, tgt, levels)
}

/// Sequence versions of the unit, symmetry and associator isomorphisms.
pub fn unit_right_iso_seq<R: Scalar>(x: &Seq<R>) -> Result<SeqMorphism<R>> {
    let one = Seq::tensor_unit(x.bound(), x.variant());
    let (src, layout) = tensor_seq_full(x, &one)?;
    let mut levels = Vec::new();
    for m in 0..=x.bound() {
        let pidx = layout[m].parts.iter().position(|p| p.0 == m).expect("(m,0) part");
        levels.push(layout[m].projs[pidx].clone());
    }
    SeqMorphism::new(src, x.clone(), levels)
}

pub fn symmetry_iso_seq<R: Scalar>(x: &Seq<R>, y: &Seq<R>) -> Result<SeqMorphism<R>> {
    let (src, src_layout) = tensor_seq_full(x, y)?;
    let (tgt, tgt_layout) = tensor_seq_full(y, x)?;
    let mut levels = Vec::new();
    for m in 0..=x.bound() {
        let mut acc = BaseMorphism::zero(src_layout[m].carrier.clone(), tgt_layout[m].carrier.clone());
        for (pidx, (m1, m2, _)) in src_layout[m].parts.iter().enumerate() {
            let qidx = tgt_layout[m]
                .parts
                .iter()
                .position(|p| p.0 == *m2 && p.1 == *m1)
                .expect("swapped part");
            let comp = symmetry_iso(x.level(*m1), y.level(*m2))?;
            acc = acc.add(&tgt_layout[m].incls[qidx].compose(&comp)?.compose(&src_layout[m].projs[pidx])?)?;
        }
        levels.push(acc);
    }
    SeqMorphism::new(src, tgt, levels)
}

pub fn assoc_iso_seq<R: Scalar>(x: &Seq<R>, y: &Seq<R>, z: &Seq<R>) -> Result<SeqMorphism<R>> {
    let (xy, xy_layout) = tensor_seq_full(x, y)?;
    let (yz, yz_layout) = tensor_seq_full(y, z)?;
    let (src, src_layout) = tensor_seq_full(&xy, z)?;
    let (tgt, tgt_layout) = tensor_seq_full(x, &yz)?;
    let mut levels = Vec::new();
    for m in 0..=x.bound() {
        let mut acc = BaseMorphism::zero(src_layout[m].carrier.clone(), tgt_layout[m].carrier.clone());
        for (opidx, (u, m3, _)) in src_layout[m].parts.iter().enumerate() {
            for (ipidx, (m1, m2, _)) in xy_layout[*u].parts.iter().enumerate() {
                let comp = crate::base::assoc_iso(x.level(*m1), y.level(*m2), z.level(*m3))?;
                let v = *m2 + *m3;
                let tp = tgt_layout[m].parts.iter().position(|p| p.0 == *m1 && p.1 == v).expect("target part");
                let tq = yz_layout[v].parts.iter().position(|p| p.0 == *m2 && p.1 == *m3).expect("target inner");
                let p_inner = xy_layout[*u].projs[ipidx].tensor(&BaseMorphism::identity(z.level(*m3)))?;
                let i_inner = BaseMorphism::identity(x.level(*m1)).tensor(&yz_layout[v].incls[tq])?;
                let chain = tgt_layout[m].incls[tp]
                    .compose(&i_inner)?
                    .compose(&comp)?
                    .compose(&p_inner)?
                    .compose(&src_layout[m].projs[opidx])?;
                acc = acc.add(&chain)?;
            }
        }
        levels.push(acc);
    }
    SeqMorphism::new(src, tgt, levels)
}

// ---------------------------------------------------------------------------
// Mapping objects for the tensor products
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct MapTensorFactor<R> {
    pub s: usize,
    /// the full mapping complex `Map(B[s], C[t+s])`
    pub hom: BaseObject<R>,
    /// its `Sigma_s`-equivariant part
    pub fixed: crate::group::SubPresentation<R>,
    pub incl: BaseMorphism<R>,
    pub proj: BaseMorphism<R>,
}

#[derive(Clone, Debug)]
pub struct MapTensorLevel<R> {
    pub carrier: BaseObject<R>,
    pub factors: Vec<MapTensorFactor<R>>,
}

#[derive(Clone, Debug)]
pub struct MapTensor<R> {
    pub seq: SymSeq<R>,
    pub levels: Vec<MapTensorLevel<R>>,
}

/// `Map^(x)(B, C)[t] = prod_s Map(B[s], C[t+s])^{Sigma_s}`, with the
/// `Sigma_s` acting on `C[t+s]` through the second block of the Young
/// pair `[t, s]` and the residual `Sigma_t` through the first.
pub fn map_tensor_full<R: Scalar>(b: &SymSeq<R>, c: &SymSeq<R>) -> Result<MapTensor<R>> {
    if b.bound() != c.bound() {
        return Err(EngineError::ShapeMismatch("bound mismatch".into()));
    }
    if b.variant() != c.variant() {
        return Err(EngineError::VariantMismatch);
    }
    let n = b.bound();
    let variant = b.variant();
    let mut entries = Vec::new();
    let mut levels = Vec::new();
    for t in 0..=n {
        let mut factors_data = Vec::new();
        let mut objs = Vec::new();
        for s in 0..=n.saturating_sub(t) {
            let target = c.level(t + s).restrict_to(young_pair(t, s))?;
            let first_count = t.saturating_sub(1);
            let hom = b.level(s).carrier().internal_hom(target.carrier())?;
            let mut constraints = Vec::new();
            for (gi, _) in Shape::sigma(s).gen_positions().iter().enumerate() {
                let u = &b.level(s).gens()[gi];
                let v = &target.gens()[first_count + gi];
                let conj = crate::base::hom_conjugation(b.level(s).carrier(), target.carrier(), u, v)?;
                let id = BaseMorphism::identity(&hom);
                constraints.push(id.sub(&conj)?);
            }
            let fixed = crate::group::SubPresentation::joint_kernel(&hom, &constraints)?;
            objs.push(fixed.object.clone());
            factors_data.push((s, target, hom, fixed));
        }
        let (carrier, incls, projs) = sum_with_injections(variant, &objs)?;
        let mut gens = Vec::new();
        for (gi, _) in Shape::sigma(t).gen_positions().iter().enumerate() {
            let mut acc = BaseMorphism::zero(carrier.clone(), carrier.clone());
            for (fi, (s, target, _, fixed)) in factors_data.iter().enumerate() {
                let v = &target.gens()[gi];
                let conj = crate::base::hom_conjugation(
                    b.level(*s).carrier(),
                    target.carrier(),
                    &BaseMorphism::identity(b.level(*s).carrier()),
                    v,
                )?;
                let induced = fixed.induced_endo(&conj)?;
                acc = acc.add(&incls[fi].compose(&induced)?.compose(&projs[fi])?)?;
            }
            gens.push(acc);
        }
        let level = GObject::new(Shape::sigma(t), carrier.clone(), gens)?;
        entries.push(level);
        let factors = factors_data
            .into_iter()
            .enumerate()
            .map(|(fi, (s, _, hom, fixed))| MapTensorFactor {
                s,
                hom,
                fixed,
                incl: incls[fi].clone(),
                proj: projs[fi].clone(),
            })
            .collect();
        levels.push(MapTensorLevel { carrier, factors });
    }
    let mut seq = SymSeq::new(entries, false)?;
    seq.set_truncated(!c.vanishing() || b.truncated() || c.truncated());
    seq.set_vanishing(c.vanishing());
    Ok(MapTensor { seq, levels })
}

pub fn map_tensor<R: Scalar>(b: &SymSeq<R>, c: &SymSeq<R>) -> Result<SymSeq<R>> {
    Ok(map_tensor_full(b, c)?.seq)
}

/// `Map^(x-hat)(Y, Z)[n] = prod_m Map(Y[m], Z[n+m])`.
pub fn map_tensor_seq<R: Scalar>(y: &Seq<R>, z: &Seq<R>) -> Result<Seq<R>> {
    if y.bound() != z.bound() {
        return Err(EngineError::ShapeMismatch("bound mismatch".into()));
    }
    if y.variant() != z.variant() {
        return Err(EngineError::VariantMismatch);
    }
    let bound = y.bound();
    let variant = y.variant();
    let mut entries = Vec::new();
    for t in 0..=bound {
        let mut obj = BaseObject::zero(variant);
        for m in 0..=bound.saturating_sub(t) {
            obj = obj.direct_sum(&y.level(m).internal_hom(z.level(t + m))?)?;
        }
        entries.push(obj);
    }
    let mut seq = Seq::new(entries, false)?;
    seq.set_truncated(!z.vanishing() || y.truncated() || z.truncated());
    seq.set_vanishing(z.vanishing());
    Ok(seq)
}

// ---------------------------------------------------------------------------
// Hom spaces and isomorphism search for sequences
// ---------------------------------------------------------------------------

/// Basis of the space of sequence morphisms `A -> B` (levelwise
/// equivariant chain maps).
pub fn symseq_hom_basis<R: Scalar>(a: &SymSeq<R>, b: &SymSeq<R>) -> Result<Vec<SymSeqMorphism<R>>> {
    let mut out = Vec::new();
    for n in 0..=a.bound() {
        for f in crate::group::equivariant_hom_basis(a.level(n), b.level(n))? {
            let mut m = SymSeqMorphism::zero(a.clone(), b.clone());
            m.levels[n] = f;
            out.push(m);
        }
    }
    Ok(out)
}

pub fn seq_hom_basis<R: Scalar>(a: &Seq<R>, b: &Seq<R>) -> Result<Vec<SeqMorphism<R>>> {
    let mut out = Vec::new();
    for n in 0..=a.bound() {
        for f in crate::group::hom_basis_with_constraints(a.level(n), b.level(n), &[])? {
            let mut m = SeqMorphism::zero(a.clone(), b.clone());
            m.levels[n] = f;
            out.push(m);
        }
    }
    Ok(out)
}

/// Finds a certified levelwise equivariant isomorphism, if one exists.
pub fn find_symseq_iso<R: Scalar>(
    a: &SymSeq<R>,
    b: &SymSeq<R>,
    rng: &mut impl rand::Rng,
) -> Result<Option<SymSeqMorphism<R>>> {
    let mut levels = Vec::new();
    for n in 0..=a.bound() {
        match crate::group::find_equivariant_iso(a.level(n), b.level(n), rng)? {
            Some(f) => levels.push(f),
            None => return Ok(None),
        }
    }
    Ok(Some(SymSeqMorphism::new(a.clone(), b.clone(), levels)?))
}

pub fn find_seq_iso<R: Scalar>(
    a: &Seq<R>,
    b: &Seq<R>,
    rng: &mut impl rand::Rng,
) -> Result<Option<SeqMorphism<R>>> {
    let mut levels = Vec::new();
    for n in 0..=a.bound() {
        let m = GObject::trivial(Shape::sigma(0), pad_to(a.level(n)));
        let w = GObject::trivial(Shape::sigma(0), pad_to(b.level(n)));
        match crate::group::find_equivariant_iso(&m, &w, rng)? {
            Some(f) => levels.push(f),
            None => return Ok(None),
        }
    }
    Ok(Some(SeqMorphism::new(a.clone(), b.clone(), levels)?))
}

fn pad_to<R: Scalar>(x: &BaseObject<R>) -> BaseObject<R> {
    x.clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::Variant;
    use crate::Q;

    fn unit_i(bound: usize) -> SymSeq<Q> {
        SymSeq::circle_unit(bound, Variant::Vect)
    }

    #[test]
    fn i_tensor_i_level2_is_regular() {
        let i = unit_i(2);
        let (t, _) = tensor_symseq_full(&i, &i).unwrap();
        assert_eq!(t.level(2).dim(), 2);
        assert_eq!(t.level(0).dim(), 0);
        assert_eq!(t.level(1).dim(), 0);
        let orb = crate::group::orbit_quotient(t.level(2)).unwrap();
        assert_eq!(orb.object.total_dim(), 1);
        let fix = crate::group::fixed_points(t.level(2)).unwrap();
        assert_eq!(fix.object.total_dim(), 1);
    }

    #[test]
    fn tensor_unit_laws_canonical() {
        let i = unit_i(3);
        assert!(unit_right_iso_symseq(&i).unwrap().is_iso());
        assert!(unit_left_iso_symseq(&i).unwrap().is_iso());
    }

    #[test]
    fn tensor_with_zero_is_zero() {
        let i = unit_i(2);
        let z = SymSeq::zero(2, Variant::Vect);
        assert!(tensor_symseq(&i, &z).unwrap().is_zero());
    }

    #[test]
    fn seq_tensor_cauchy_dims() {
        let x = Seq::<Q>::circle_unit(3, Variant::Vect);
        let t = tensor_seq(&x, &x).unwrap();
        assert_eq!(t.level(2).total_dim(), 1);
        assert_eq!(t.level(1).total_dim(), 0);
        assert_eq!(t.level(3).total_dim(), 0);
    }

    #[test]
    fn mixed_power_examples() {
        let i = unit_i(3);
        let p = tensor_power_mixed(&i, 2, 2).unwrap();
        assert_eq!(p.gobj.dim(), 2);
        let p0 = tensor_power_mixed(&i, 1, 0).unwrap();
        assert_eq!(p0.gobj.dim(), 0);
        let p00 = tensor_power_mixed(&i, 0, 0).unwrap();
        assert_eq!(p00.gobj.dim(), 1);
        let p1 = tensor_power_mixed(&i, 1, 1).unwrap();
        assert_eq!(p1.gobj.dim(), 1);
    }

    #[test]
    fn symmetry_and_assoc_certify_on_units() {
        let i = unit_i(2);
        assert!(symmetry_iso_symseq(&i, &i).unwrap().is_iso());
        let a = assoc_iso_symseq(&i, &i, &i).unwrap();
        assert!(a.is_iso());
    }

    #[test]
    fn seq_assoc_certifies() {
        let x = Seq::<Q>::circle_unit(2, Variant::Vect);
        assert!(assoc_iso_seq(&x, &x, &x).unwrap().is_iso());
        assert!(symmetry_iso_seq(&x, &x).unwrap().is_iso());
        assert!(unit_right_iso_seq(&x).unwrap().is_iso());
    }

    #[test]
    fn power_zero_level_is_level_zero_power() {
        // (A^{(x)t})[0] = A[0]^{(x)t}
        let mut a = SymSeq::<Q>::zero(2, Variant::Vect);
        a.set_level(0, GObject::trivial(Shape::sigma(0), BaseObject::vect(2)));
        a.set_level(1, GObject::trivial(Shape::sigma(1), BaseObject::vect(1)));
        let p = tensor_power_mixed(&a, 0, 3).unwrap();
        assert_eq!(p.gobj.dim(), 8);
    }
}
