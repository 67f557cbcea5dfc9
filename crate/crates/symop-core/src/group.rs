//! Finite symmetric-group actions on base objects.
//!
//! Groups are restricted to products of symmetric groups presented as
//! Young shapes (ordered block sizes): these are the only groups the
//! sequence calculus needs. Actions are stored through the adjacent
//! transpositions inside each block, validated against the Coxeter
//! relations; the action of a general element is recovered from a reduced
//! word.
//!
//! Convention: actions are *right* actions, so `act(g . h) = act(h) *
//! act(g)` as matrices. Permutations compose as functions, `(g.compose(h))(x)
//! = g(h(x))`.

use crate::base::{BaseMorphism, BaseObject};
use crate::errors::{EngineError, Result};
use crate::linalg::{Matrix, Quotient, Subspace};
use crate::scalar::Scalar;

/// A permutation of `{0, .., n-1}` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    img: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm { img: (0..n).collect() }
    }

    pub fn new(img: Vec<usize>) -> Result<Self> {
        let n = img.len();
        let mut seen = vec![false; n];
        for &v in &img {
            if v >= n || seen[v] {
                return Err(EngineError::InputError("permutation image is not a bijection".into()));
            }
            seen[v] = true;
        }
        Ok(Perm { img })
    }

    pub fn n(&self) -> usize {
        self.img.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.img[x]
    }

    pub fn image(&self) -> &[usize] {
        &self.img
    }

    /// Adjacent transposition swapping `i` and `i + 1`.
    pub fn adjacent(n: usize, i: usize) -> Self {
        assert!(i + 1 < n);
        let mut img: Vec<usize> = (0..n).collect();
        img.swap(i, i + 1);
        Perm { img }
    }

    /// Function composition: `(self.compose(other))(x) = self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.n(), other.n());
        Perm { img: (0..self.n()).map(|x| self.img[other.img[x]]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut img = vec![0; self.n()];
        for (i, &v) in self.img.iter().enumerate() {
            img[v] = i;
        }
        Perm { img }
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn sign(&self) -> i64 {
        let mut s = 1;
        for i in 0..self.n() {
            for j in (i + 1)..self.n() {
                if self.img[i] > self.img[j] {
                    s = -s;
                }
            }
        }
        s
    }

    /// A reduced-ish word: positions `i_1, .., i_k` of adjacent
    /// transpositions such that `self = s_{i_k} o ... o s_{i_1}` (so
    /// `s_{i_1}` acts first). Words of block-preserving permutations stay
    /// inside their blocks.
    pub fn adjacent_word(&self) -> Vec<usize> {
        let mut arr = self.img.clone();
        let mut word = Vec::new();
        // bubble sort: each swap of positions (i, i+1) multiplies on the
        // right by s_i, so self . s_{i_1} . ... . s_{i_k} = id
        loop {
            let mut swapped = false;
            for i in 0..arr.len().saturating_sub(1) {
                if arr[i] > arr[i + 1] {
                    arr.swap(i, i + 1);
                    word.push(i);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        // so self = (s_{i_1} o ... o s_{i_k})^{-1} = s_{i_k} o ... o s_{i_1}:
        // the bubble swaps, in application order, are the word with
        // s_{i_1} acting first.
        word
    }

    /// All permutations of `{0,..,n-1}`, lexicographic in one-line notation.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Perm { img: cur.clone() });
            // next lexicographic permutation
            if n < 2 {
                break;
            }
            let mut i = n - 1;
            while i > 0 && cur[i - 1] >= cur[i] {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            let mut j = n - 1;
            while cur[j] <= cur[i - 1] {
                j -= 1;
            }
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }

    /// The block permutation of `[sum s_i]` induced by permuting `t` blocks
    /// of sizes `sizes` by `self` (block `j` moves where `self` sends `j`,
    /// carrying its contents in order).
    pub fn block_permutation(&self, sizes: &[usize]) -> Perm {
        assert_eq!(self.n(), sizes.len());
        let total: usize = sizes.iter().sum();
        let mut starts = vec![0; sizes.len()];
        for j in 1..sizes.len() {
            starts[j] = starts[j - 1] + sizes[j - 1];
        }
        // target layout: block at slot u is the block j with self(j) = u
        let inv = self.inverse();
        let mut tgt_starts = vec![0; sizes.len()];
        let mut acc = 0;
        for u in 0..sizes.len() {
            tgt_starts[u] = acc;
            acc += sizes[inv.apply(u)];
        }
        let mut img = vec![0; total];
        for j in 0..sizes.len() {
            let u = self.apply(j);
            for k in 0..sizes[j] {
                img[starts[j] + k] = tgt_starts[u] + k;
            }
        }
        Perm { img }
    }
}

/// A product of symmetric groups, as consecutive blocks inside `Sigma_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape {
    blocks: Vec<usize>,
}

impl Shape {
    pub fn new(blocks: Vec<usize>) -> Self {
        assert!(blocks.iter().all(|&b| b > 0), "zero-size blocks are not allowed");
        Shape { blocks }
    }

    /// The full symmetric group on `n` letters (empty shape for `n = 0`).
    pub fn sigma(n: usize) -> Self {
        if n == 0 {
            Shape { blocks: vec![] }
        } else {
            Shape { blocks: vec![n] }
        }
    }

    pub fn trivial(n: usize) -> Self {
        Shape { blocks: vec![1; n] }
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn total(&self) -> usize {
        self.blocks.iter().sum()
    }

    pub fn concat(&self, other: &Shape) -> Shape {
        let mut blocks = self.blocks.clone();
        blocks.extend_from_slice(&other.blocks);
        Shape { blocks }
    }

    /// Positions `i` of the in-block adjacent transpositions `(i, i+1)`.
    pub fn gen_positions(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut start = 0;
        for &b in &self.blocks {
            for i in 0..b.saturating_sub(1) {
                out.push(start + i);
            }
            start += b;
        }
        out
    }

    pub fn order(&self) -> usize {
        self.blocks.iter().map(|&b| (1..=b).product::<usize>()).product()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        if p.n() != self.total() {
            return false;
        }
        let mut start = 0;
        for &b in &self.blocks {
            for x in start..start + b {
                let v = p.apply(x);
                if v < start || v >= start + b {
                    return false;
                }
            }
            start += b;
        }
        true
    }

    /// All elements, as permutations of the ambient `[total]`.
    pub fn elements(&self) -> Vec<Perm> {
        let n = self.total();
        let mut out = vec![Perm::identity(n)];
        let mut start = 0;
        for &b in &self.blocks {
            let block_perms = Perm::all(b);
            let mut next = Vec::with_capacity(out.len() * block_perms.len());
            for base in &out {
                for bp in &block_perms {
                    let mut img = base.img.clone();
                    for x in 0..b {
                        img[start + x] = start + bp.apply(x);
                    }
                    next.push(Perm { img });
                }
            }
            out = next;
            start += b;
        }
        out
    }
}

/// Right cosets `H \ Sigma_s` of a Young subgroup, with canonical minimal
/// representatives, ordered by the block-membership word.
pub fn young_cosets(h: &Shape, s: usize) -> Vec<Perm> {
    assert_eq!(h.total(), s, "Young subgroup must fill the ambient group");
    let mut block_of = vec![0usize; s];
    let mut start = 0;
    for (j, &b) in h.blocks().iter().enumerate() {
        for x in start..start + b {
            block_of[x] = j;
        }
        start += b;
    }
    // enumerate block-membership words w : [s] -> blocks with the right
    // multiplicities, lexicographically; each word is one coset
    let mut words = vec![vec![]];
    for _ in 0..s {
        let mut next = Vec::new();
        for w in &words {
            for j in 0..h.blocks().len() {
                let used = w.iter().filter(|&&x| x == j).count();
                if used < h.blocks()[j] {
                    let mut w2 = w.clone();
                    w2.push(j);
                    next.push(w2);
                }
            }
        }
        words = next;
    }
    let mut starts = vec![0usize; h.blocks().len()];
    for j in 1..h.blocks().len() {
        starts[j] = starts[j - 1] + h.blocks()[j - 1];
    }
    words
        .into_iter()
        .map(|w| {
            // canonical representative: positions with word value j go to
            // block j in increasing order
            let mut counters = starts.clone();
            let mut img = vec![0usize; s];
            for (x, &j) in w.iter().enumerate() {
                img[x] = counters[j];
                counters[j] += 1;
            }
            Perm { img }
        })
        .collect()
}

/// Coset invariant used to locate the coset of an arbitrary element.
fn coset_word(h: &Shape, g: &Perm) -> Vec<usize> {
    let mut block_of = vec![0usize; h.total()];
    let mut start = 0;
    for (j, &b) in h.blocks().iter().enumerate() {
        for x in start..start + b {
            block_of[x] = j;
        }
        start += b;
    }
    (0..g.n()).map(|x| block_of[g.apply(x)]).collect()
}

/// An object with a validated right action of a product of symmetric
/// groups.
#[derive(Clone, Debug, PartialEq)]
pub struct GObject<R> {
    shape: Shape,
    carrier: BaseObject<R>,
    gens: Vec<BaseMorphism<R>>,
}

impl<R: Scalar> GObject<R> {
    pub fn new(shape: Shape, carrier: BaseObject<R>, gens: Vec<BaseMorphism<R>>) -> Result<Self> {
        let positions = shape.gen_positions();
        if gens.len() != positions.len() {
            return Err(EngineError::ShapeMismatch(format!(
                "expected {} generator actions, got {}",
                positions.len(),
                gens.len()
            )));
        }
        for (k, g) in gens.iter().enumerate() {
            if !g.source().same_shape(&carrier) || !g.target().same_shape(&carrier) {
                return Err(EngineError::ShapeMismatch(format!("generator {k} is not an endomorphism of the carrier")));
            }
        }
        let z = GObject { shape, carrier, gens };
        z.check_coxeter()?;
        Ok(z)
    }

    fn check_coxeter(&self) -> Result<()> {
        let positions = self.shape.gen_positions();
        for (a, &i) in positions.iter().enumerate() {
            let gi = &self.gens[a];
            let sq = gi.compose(gi)?;
            if sq != BaseMorphism::identity(&self.carrier) {
                return Err(EngineError::CoxeterFailed(format!("s_{i}^2 != id")));
            }
            for (b, &j) in positions.iter().enumerate() {
                if b <= a {
                    continue;
                }
                let gj = &self.gens[b];
                if j == i + 1 {
                    let prod = gi.compose(gj)?;
                    let cube = prod.compose(&prod)?.compose(&prod)?;
                    if cube != BaseMorphism::identity(&self.carrier) {
                        return Err(EngineError::CoxeterFailed(format!("braid relation fails at (s_{i}, s_{j})")));
                    }
                } else if j >= i + 2 {
                    if gi.compose(gj)? != gj.compose(gi)? {
                        return Err(EngineError::CoxeterFailed(format!("s_{i} and s_{j} do not commute")));
                    }
                }
            }
        }
        Ok(())
    }

    /// A trivial action on any carrier.
    pub fn trivial(shape: Shape, carrier: BaseObject<R>) -> Self {
        let gens = shape.gen_positions().iter().map(|_| BaseMorphism::identity(&carrier)).collect();
        GObject { shape, carrier, gens }
    }

    /// The regular representation of `Sigma_n`: basis indexed by the
    /// elements of the group in `Perm::all` order, with `e_g . h = e_{g o h}`.
    pub fn regular(n: usize, variant: crate::base::Variant) -> Self {
        let elems = Perm::all(n);
        let dim = elems.len();
        let carrier = match variant {
            crate::base::Variant::Vect => BaseObject::vect(dim),
            crate::base::Variant::Chain => {
                BaseObject::chain(0, vec![dim], vec![]).expect("one-degree complex")
            }
        };
        let shape = Shape::sigma(n);
        let gens = shape
            .gen_positions()
            .iter()
            .map(|&i| {
                let s = Perm::adjacent(n, i);
                let mut m = Matrix::zeros(dim, dim);
                for (col, g) in elems.iter().enumerate() {
                    let gh = g.compose(&s);
                    let row = elems.iter().position(|e| *e == gh).unwrap();
                    *m.at_mut(row, col) = R::one();
                }
                BaseMorphism::new(carrier.clone(), carrier.clone(), vec![m]).expect("permutation matrix")
            })
            .collect();
        GObject { shape, carrier, gens }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn carrier(&self) -> &BaseObject<R> {
        &self.carrier
    }

    pub fn gens(&self) -> &[BaseMorphism<R>] {
        &self.gens
    }

    pub fn dim(&self) -> usize {
        self.carrier.total_dim()
    }

    /// The action of an arbitrary element of the shape group.
    pub fn act(&self, g: &Perm) -> Result<BaseMorphism<R>> {
        if g.n() != self.shape.total() {
            return Err(EngineError::ShapeMismatch(format!(
                "permutation arity {} vs group arity {}",
                g.n(),
                self.shape.total()
            )));
        }
        if !self.shape.contains(g) {
            return Err(EngineError::InputError("element does not belong to the acting group".into()));
        }
        let positions = self.shape.gen_positions();
        let mut acc = BaseMorphism::identity(&self.carrier);
        // right action: for g = s_{i_k} o ... o s_{i_1} (i_1 acting first),
        // act(g) = act(s_{i_1}) * act(s_{i_2}) * ... * act(s_{i_k})
        for &i in &g.adjacent_word() {
            let idx = positions
                .iter()
                .position(|&p| p == i)
                .ok_or_else(|| EngineError::InputError("word leaves the Young subgroup".into()))?;
            acc = acc.compose(&self.gens[idx])?;
        }
        Ok(acc)
    }

    /// Restriction of a `Sigma_n` (or larger-shape) action to a finer Young
    /// shape with the same total.
    pub fn restrict_to(&self, sub: Shape) -> Result<GObject<R>> {
        if sub.total() != self.shape.total() {
            return Err(EngineError::ShapeMismatch("restriction must preserve the ambient arity".into()));
        }
        let my_positions = self.shape.gen_positions();
        let mut gens = Vec::new();
        for p in sub.gen_positions() {
            let idx = my_positions
                .iter()
                .position(|&q| q == p)
                .ok_or_else(|| EngineError::ShapeMismatch("not a Young subgroup of the acting shape".into()))?;
            gens.push(self.gens[idx].clone());
        }
        Ok(GObject { shape: sub, carrier: self.carrier.clone(), gens })
    }

    /// Tensor product with concatenated shapes: `G1`-object times
    /// `G2`-object is a `(G1 x G2)`-object.
    pub fn tensor_product(&self, other: &GObject<R>) -> Result<GObject<R>> {
        let carrier = self.carrier.tensor(&other.carrier)?;
        let shape = self.shape.concat(&other.shape);
        let id_a = BaseMorphism::identity(&self.carrier);
        let id_b = BaseMorphism::identity(&other.carrier);
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(g.tensor(&id_b)?);
        }
        for g in &other.gens {
            gens.push(id_a.tensor(g)?);
        }
        Ok(GObject { shape, carrier, gens })
    }

    /// Direct sum of two objects over the same shape.
    pub fn direct_sum(&self, other: &GObject<R>) -> Result<GObject<R>> {
        if self.shape != other.shape {
            return Err(EngineError::ShapeMismatch("direct sum of actions over different groups".into()));
        }
        let carrier = self.carrier.direct_sum(&other.carrier)?;
        let gens = self
            .gens
            .iter()
            .zip(&other.gens)
            .map(|(a, b)| a.direct_sum(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(GObject { shape: self.shape.clone(), carrier, gens })
    }

    /// The averaging endomorphism `(1/|G|) sum_g act(g)`; an idempotent
    /// projecting onto the fixed points.
    pub fn averaging(&self) -> Result<BaseMorphism<R>> {
        let elems = self.shape.elements();
        let mut acc = BaseMorphism::zero(self.carrier.clone(), self.carrier.clone());
        for g in &elems {
            acc = acc.add(&self.act(g)?)?;
        }
        let inv = R::from_i64(elems.len() as i64).inv();
        Ok(acc.scale(&inv))
    }
}

/// A presented quotient of a base object: projection plus the degreewise
/// data needed to descend maps through it.
#[derive(Clone, Debug)]
pub struct QuotientPresentation<R> {
    pub object: BaseObject<R>,
    pub proj: BaseMorphism<R>,
    quots: Vec<Quotient<R>>,
    lo: i64,
}

impl<R: Scalar> QuotientPresentation<R> {
    /// Quotient of `carrier` by the degreewise column span of the listed
    /// endomorphism images `span_maps` (each `f` contributes `im f`).
    pub fn by_image_spans(carrier: &BaseObject<R>, span_maps: &[BaseMorphism<R>]) -> Result<Self> {
        let lo = carrier.lo();
        let mut quots = Vec::new();
        let mut dims = Vec::new();
        for n in carrier.lo()..=carrier.hi() {
            let total = carrier.dim_at(n);
            let cols: Vec<Matrix<R>> = span_maps.iter().map(|f| f.block_at(n)).collect();
            let span = if cols.is_empty() {
                Matrix::zeros(total, 0)
            } else {
                let refs: Vec<&Matrix<R>> = cols.iter().collect();
                Matrix::hstack(&refs)
            };
            let q = Quotient::by_span(total, &span);
            dims.push(q.dim());
            quots.push(q);
        }
        let mut diffs = Vec::new();
        for n in (carrier.lo() + 1)..=carrier.hi() {
            let k = (n - lo) as usize;
            let pd = quots[k - 1].proj.mul(&carrier.diff_at(n));
            let dq = quots[k]
                .factor(&pd)
                .ok_or_else(|| EngineError::DescentFailed(format!("quotient differential at degree {n}")))?;
            diffs.push(dq);
        }
        let object = match carrier.variant() {
            crate::base::Variant::Vect => BaseObject::vect(dims[0]),
            crate::base::Variant::Chain => BaseObject::chain(lo, dims, diffs)?,
        };
        let blocks = quots.iter().map(|q| q.proj.clone()).collect();
        let proj = BaseMorphism::new(carrier.clone(), object.clone(), blocks)?;
        Ok(QuotientPresentation { object, proj, quots, lo })
    }

    /// Descends `h` (defined on the carrier, killing the span) to the
    /// quotient, with exact certification.
    pub fn descend(&self, h: &BaseMorphism<R>) -> Result<BaseMorphism<R>> {
        let mut blocks = Vec::new();
        for n in self.object.lo()..=self.object.hi() {
            let k = (n - self.lo) as usize;
            let hb = h.block_at(n);
            let bar = self.quots[k]
                .factor(&hb)
                .ok_or_else(|| EngineError::DescentFailed(format!("map does not kill the quotient span at degree {n}")))?;
            blocks.push(bar);
        }
        BaseMorphism::new(self.object.clone(), h.target().clone(), blocks)
    }

    /// Induced endomorphism of the quotient from a span-preserving
    /// endomorphism of the carrier.
    pub fn induced_endo(&self, f: &BaseMorphism<R>) -> Result<BaseMorphism<R>> {
        self.descend(&self.proj.compose(f)?)
    }

    /// The chosen linear (not chain) section of the projection in one
    /// degree: `proj_n * sect_n = id`.
    pub fn sect_block_at(&self, n: i64) -> Matrix<R> {
        let k = n - self.lo;
        if k < 0 || k as usize >= self.quots.len() {
            Matrix::zeros(0, 0)
        } else {
            self.quots[k as usize].sect.clone()
        }
    }

    /// Descends `g : carrier (x) right -> T` through `object (x) right`,
    /// certifying `gbar . (proj (x) id) = g` exactly.
    pub fn descend_tensored_right(
        &self,
        right: &BaseObject<R>,
        g: &BaseMorphism<R>,
    ) -> Result<BaseMorphism<R>> {
        let carrier = self.proj.source();
        let src = self.object.tensor(right)?;
        let mut blocks = Vec::new();
        for n in src.lo()..=src.hi() {
            let mut sect_tensor = Matrix::zeros(carrier.tensor(right)?.dim_at(n), src.dim_at(n));
            for &(p, q, soff) in &self.object.tensor_summands(right, n) {
                let sp = self.sect_block_at(p);
                if sp.rows() == 0 && sp.cols() == 0 {
                    continue;
                }
                let blk = sp.kronecker(&Matrix::identity(right.dim_at(q)));
                let toff = carrier
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
        let proj_tensor = self.proj.tensor(&BaseMorphism::identity(right))?;
        let roundtrip = gbar.compose(&proj_tensor)?;
        let lo = g.source().lo().min(roundtrip.source().lo());
        let hi = g.source().hi().max(roundtrip.source().hi());
        for n in lo..=hi {
            if roundtrip.block_at(n) != g.block_at(n) {
                return Err(EngineError::DescentFailed(format!(
                    "tensored quotient descent fails at degree {n}"
                )));
            }
        }
        Ok(gbar)
    }
}

/// A presented subobject: inclusion plus degreewise retraction data.
#[derive(Clone, Debug)]
pub struct SubPresentation<R> {
    pub object: BaseObject<R>,
    pub incl: BaseMorphism<R>,
    subs: Vec<Subspace<R>>,
    lo: i64,
}

impl<R: Scalar> SubPresentation<R> {
    /// The joint kernel of the listed morphisms out of `carrier`.
    pub fn joint_kernel(carrier: &BaseObject<R>, maps: &[BaseMorphism<R>]) -> Result<Self> {
        let lo = carrier.lo();
        let mut subs = Vec::new();
        let mut dims = Vec::new();
        for n in carrier.lo()..=carrier.hi() {
            let total = carrier.dim_at(n);
            let rows: Vec<Matrix<R>> = maps.iter().map(|f| f.block_at(n)).collect();
            let sub = Subspace::joint_kernel(total, &rows);
            dims.push(sub.dim());
            subs.push(sub);
        }
        let mut diffs = Vec::new();
        for n in (carrier.lo() + 1)..=carrier.hi() {
            let k = (n - lo) as usize;
            let di = carrier.diff_at(n).mul(&subs[k].incl);
            let dq = subs[k - 1]
                .factor(&di)
                .ok_or_else(|| EngineError::DescentFailed(format!("subobject differential at degree {n}")))?;
            diffs.push(dq);
        }
        let object = match carrier.variant() {
            crate::base::Variant::Vect => BaseObject::vect(dims[0]),
            crate::base::Variant::Chain => BaseObject::chain(lo, dims, diffs)?,
        };
        let blocks = subs.iter().map(|s| s.incl.clone()).collect();
        let incl = BaseMorphism::new(object.clone(), carrier.clone(), blocks)?;
        Ok(SubPresentation { object, incl, subs, lo })
    }

    /// Factors a map landing in the subobject, with exact certification.
    pub fn factor(&self, h: &BaseMorphism<R>) -> Result<BaseMorphism<R>> {
        let mut blocks = Vec::new();
        for n in h.source().lo()..=h.source().hi() {
            let k = n - self.lo;
            let hb = h.block_at(n);
            if k < 0 || k as usize >= self.subs.len() {
                if !hb.is_zero() {
                    return Err(EngineError::DescentFailed(format!("map is nonzero outside the subobject range at degree {n}")));
                }
                blocks.push(Matrix::zeros(self.object.dim_at(n), h.source().dim_at(n)));
                continue;
            }
            let t = self.subs[k as usize]
                .factor(&hb)
                .ok_or_else(|| EngineError::DescentFailed(format!("map does not land in the subobject at degree {n}")))?;
            blocks.push(t);
        }
        BaseMorphism::new(h.source().clone(), self.object.clone(), blocks)
    }

    /// Induced endomorphism of the subobject from a stabilizing
    /// endomorphism of the carrier.
    pub fn induced_endo(&self, f: &BaseMorphism<R>) -> Result<BaseMorphism<R>> {
        self.factor(&f.compose(&self.incl)?)
    }
}

/// Orbit object `Z_G`: coequalizer of all `id - act(g)`, computed from the
/// generators.
pub fn orbit_quotient<R: Scalar>(z: &GObject<R>) -> Result<QuotientPresentation<R>> {
    let id = BaseMorphism::identity(z.carrier());
    let span_maps = z
        .gens()
        .iter()
        .map(|g| id.sub(g))
        .collect::<Result<Vec<_>>>()?;
    QuotientPresentation::by_image_spans(z.carrier(), &span_maps)
}

/// Fixed points `Z^G`: joint kernel of all `id - act(g)` over generators.
pub fn fixed_points<R: Scalar>(z: &GObject<R>) -> Result<SubPresentation<R>> {
    let id = BaseMorphism::identity(z.carrier());
    let maps = z
        .gens()
        .iter()
        .map(|g| id.sub(g))
        .collect::<Result<Vec<_>>>()?;
    SubPresentation::joint_kernel(z.carrier(), &maps)
}

/// The copower `A . X` for a finite set of size `m`: the `m`-fold
/// coproduct with its inclusions.
pub fn copower<R: Scalar>(a: &BaseObject<R>, m: usize) -> Result<(BaseObject<R>, Vec<BaseMorphism<R>>)> {
    let mut obj = BaseObject::zero(a.variant());
    for _ in 0..m {
        obj = obj.direct_sum(a)?;
    }
    let mut incls = Vec::new();
    for i in 0..m {
        let mut blocks = Vec::new();
        for n in a.lo()..=a.hi() {
            let d = a.dim_at(n);
            let mut inc = Matrix::zeros(obj.dim_at(n), d);
            for c in 0..d {
                *inc.at_mut(i * d + c, c) = R::one();
            }
            blocks.push(inc);
        }
        incls.push(BaseMorphism::new(a.clone(), obj.clone(), blocks)?);
    }
    Ok((obj, incls))
}

/// Induction `A ._H Sigma_s` of an `H`-object along a Young inclusion,
/// returning the induced object together with the inclusion of the
/// identity-coset block (the adjunction unit).
pub fn induce<R: Scalar>(a: &GObject<R>, s: usize) -> Result<(GObject<R>, BaseMorphism<R>)> {
    let h = a.shape().clone();
    if h.total() != s {
        return Err(EngineError::ShapeMismatch("Young subgroup total must equal the ambient arity".into()));
    }
    let reps = young_cosets(&h, s);
    let m = reps.len();
    let mut carrier = BaseObject::zero(a.carrier().variant());
    for _ in 0..m {
        carrier = carrier.direct_sum(a.carrier())?;
    }
    let coset_lookup: Vec<Vec<usize>> = reps.iter().map(|r| coset_word(&h, r)).collect();
    let find_coset = |g: &Perm| -> usize {
        let w = coset_word(&h, g);
        coset_lookup.iter().position(|cw| *cw == w).expect("every element lies in a coset")
    };
    let shape = Shape::sigma(s);
    let mut gens = Vec::new();
    for &i in &shape.gen_positions() {
        let si = Perm::adjacent(s, i);
        let mut blocks = Vec::new();
        for n in a.carrier().lo()..=a.carrier().hi() {
            let d = a.carrier().dim_at(n);
            let mut mat = Matrix::zeros(m * d, m * d);
            for (c, rep) in reps.iter().enumerate() {
                let moved = rep.compose(&si);
                let cprime = find_coset(&moved);
                // moved = h' o rep', with h' in H
                let hprime = moved.compose(&reps[cprime].inverse());
                debug_assert!(h.contains(&hprime));
                let blk = a.act(&hprime)?.block_at(n);
                for r in 0..d {
                    for cc in 0..d {
                        let v = blk.at(r, cc);
                        if !v.is_zero() {
                            *mat.at_mut(cprime * d + r, c * d + cc) = v.clone();
                        }
                    }
                }
            }
            blocks.push(mat);
        }
        gens.push(BaseMorphism::new(carrier.clone(), carrier.clone(), blocks)?);
    }
    let induced = GObject::new(shape, carrier.clone(), gens)?;
    // unit: A into the identity-coset block
    let id_coset = find_coset(&Perm::identity(s));
    let mut blocks = Vec::new();
    for n in a.carrier().lo()..=a.carrier().hi() {
        let d = a.carrier().dim_at(n);
        let mut inc = Matrix::zeros(m * d, d);
        for c in 0..d {
            *inc.at_mut(id_coset * d + c, c) = R::one();
        }
        blocks.push(inc);
    }
    let unit = BaseMorphism::new(a.carrier().clone(), carrier, blocks)?;
    Ok((induced, unit))
}

/// Basis of the space of equivariant chain maps `M -> N` (for the shared
/// shape group), by exact nullspace computation.
pub fn equivariant_hom_basis<R: Scalar>(m: &GObject<R>, n: &GObject<R>) -> Result<Vec<BaseMorphism<R>>> {
    if m.shape() != n.shape() {
        return Err(EngineError::ShapeMismatch("hom between actions of different groups".into()));
    }
    hom_basis_with_constraints(m.carrier(), n.carrier(), &constraint_pairs(m, n))
}

fn constraint_pairs<R: Scalar>(m: &GObject<R>, n: &GObject<R>) -> Vec<(BaseMorphism<R>, BaseMorphism<R>)> {
    // pairs (u, v) meaning the constraint f . u = v . f
    m.gens().iter().cloned().zip(n.gens().iter().cloned()).collect()
}

/// Basis of chain maps `M -> N` subject to constraints `f . u_k = v_k . f`.
pub fn hom_basis_with_constraints<R: Scalar>(
    m: &BaseObject<R>,
    n: &BaseObject<R>,
    pairs: &[(BaseMorphism<R>, BaseMorphism<R>)],
) -> Result<Vec<BaseMorphism<R>>> {
    m.check_variant(n)?;
    let lo = m.lo().min(n.lo());
    let hi = m.hi().max(n.hi());
    let degs: Vec<i64> = (lo..=hi).collect();
    let var_dims: Vec<usize> = degs.iter().map(|&d| m.dim_at(d) * n.dim_at(d)).collect();
    let var_offsets: Vec<usize> = {
        let mut acc = 0;
        var_dims
            .iter()
            .map(|&d| {
                let o = acc;
                acc += d;
                o
            })
            .collect()
    };
    let total_vars: usize = var_dims.iter().sum();
    let mut rows: Vec<Matrix<R>> = Vec::new();
    let mut push_rows = |rowmat: Matrix<R>| {
        if rowmat.rows() > 0 {
            rows.push(rowmat);
        }
    };
    // chain condition: d_N f(n) - f(n-1) d_M(n) = 0, for n in (lo, hi]
    for (k, &deg) in degs.iter().enumerate() {
        if k == 0 {
            continue;
        }
        let out_dim = m.dim_at(deg) * n.dim_at(deg - 1);
        if out_dim == 0 {
            continue;
        }
        let mut row = Matrix::zeros(out_dim, total_vars);
        // vec(d_N f) = (I_m kron d_N) vec f   at variable block k
        let a = Matrix::identity(m.dim_at(deg)).kronecker(&n.diff_at(deg));
        paste(&mut row, 0, var_offsets[k], &a);
        // vec(f d_M) = (d_M^T kron I_n(deg-1)) vec f(deg-1)  at block k-1
        let b = m.diff_at(deg).transpose().kronecker(&Matrix::identity(n.dim_at(deg - 1)));
        paste_sub(&mut row, 0, var_offsets[k - 1], &b);
        push_rows(row);
    }
    // constraints f u = v f, degreewise
    for (u, v) in pairs {
        for (k, &deg) in degs.iter().enumerate() {
            let out_dim = m.dim_at(deg) * n.dim_at(deg);
            if out_dim == 0 {
                continue;
            }
            let mut row = Matrix::zeros(out_dim, total_vars);
            // vec(f u) = (u^T kron I) vec f ; vec(v f) = (I kron v) vec f
            let a = u.block_at(deg).transpose().kronecker(&Matrix::identity(n.dim_at(deg)));
            let b = Matrix::identity(m.dim_at(deg)).kronecker(&v.block_at(deg));
            paste(&mut row, 0, var_offsets[k], &a.sub(&b));
            push_rows(row);
        }
    }
    let constraint = if rows.is_empty() {
        Matrix::zeros(0, total_vars)
    } else {
        let refs: Vec<&Matrix<R>> = rows.iter().collect();
        Matrix::vstack(&refs)
    };
    let kernel = constraint.kernel_basis();
    let mut basis = Vec::new();
    for col in 0..kernel.cols() {
        let mut blocks = Vec::new();
        for n_deg in m.lo()..=m.hi() {
            let k = (n_deg - lo) as usize;
            let rows_n = n.dim_at(n_deg);
            let cols_m = m.dim_at(n_deg);
            let mut blk = Matrix::zeros(rows_n, cols_m);
            for j in 0..cols_m {
                for i in 0..rows_n {
                    *blk.at_mut(i, j) = kernel.at(var_offsets[k] + j * rows_n + i, col).clone();
                }
            }
            blocks.push(blk);
        }
        basis.push(BaseMorphism::new(m.clone(), n.clone(), blocks)?);
    }
    Ok(basis)
}

fn paste<R: Scalar>(dst: &mut Matrix<R>, r0: usize, c0: usize, src: &Matrix<R>) {
    for i in 0..src.rows() {
        for j in 0..src.cols() {
            let v = src.at(i, j);
            if !v.is_zero() {
                *dst.at_mut(r0 + i, c0 + j) = v.clone();
            }
        }
    }
}

fn paste_sub<R: Scalar>(dst: &mut Matrix<R>, r0: usize, c0: usize, src: &Matrix<R>) {
    for i in 0..src.rows() {
        for j in 0..src.cols() {
            let v = src.at(i, j);
            if !v.is_zero() {
                *dst.at_mut(r0 + i, c0 + j) -= v.clone();
            }
        }
    }
}

/// Searches for an equivariant isomorphism `M -> N` as an invertible
/// element of the equivariant hom space; the result is certified exactly.
pub fn find_equivariant_iso<R: Scalar>(
    m: &GObject<R>,
    n: &GObject<R>,
    rng: &mut impl rand::Rng,
) -> Result<Option<BaseMorphism<R>>> {
    if m.carrier().dims() != n.carrier().dims() || m.carrier().lo() != n.carrier().lo() {
        return Ok(None);
    }
    let basis = equivariant_hom_basis(m, n)?;
    if basis.is_empty() {
        return Ok(if m.dim() == 0 {
            Some(BaseMorphism::zero(m.carrier().clone(), n.carrier().clone()))
        } else {
            None
        });
    }
    for b in &basis {
        if b.is_iso() {
            return Ok(Some(b.clone()));
        }
    }
    for attempt in 0..40 {
        let bound = 2 + attempt as i64;
        let mut candidate = BaseMorphism::zero(m.carrier().clone(), n.carrier().clone());
        for b in &basis {
            let c = R::from_i64(rng.gen_range(-bound..=bound));
            candidate = candidate.add(&b.scale(&c))?;
        }
        if candidate.is_iso() {
            return Ok(Some(candidate));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::Variant;
    use crate::Q;

    #[test]
    fn perm_compose_and_word() {
        for g in Perm::all(4) {
            // rebuild from the word
            let mut rebuilt = Perm::identity(4);
            for &i in g.adjacent_word().iter().rev() {
                // rightmost acts first: rebuilt = s_{i_k} o ... o s_{i_1}
                rebuilt = rebuilt.compose(&Perm::adjacent(4, i));
            }
            // the loop composes s-last..s-first in reverse; verify equality
            assert_eq!(rebuilt, g, "word does not rebuild {:?}", g.image());
        }
    }

    #[test]
    fn regular_rep_act_is_right_action() {
        let z = GObject::<Q>::regular(3, Variant::Vect);
        for g in Perm::all(3) {
            for h in Perm::all(3) {
                let gh = g.compose(&h);
                let lhs = z.act(&gh).unwrap();
                let rhs = z.act(&h).unwrap().compose(&z.act(&g).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "act(g o h) != act(h) act(g)");
            }
        }
    }

    #[test]
    fn regular_rep_swap_matrix() {
        let z = GObject::<Q>::regular(2, Variant::Vect);
        let swap = z.act(&Perm::adjacent(2, 0)).unwrap();
        assert_eq!(swap.block_at(0), Matrix::from_int_rows(&[vec![0, 1], vec![1, 0]]));
        let id = z.act(&Perm::identity(2)).unwrap();
        assert!(id.block_at(0).is_identity());
    }

    #[test]
    fn orbit_and_fixed_of_regular_sigma2() {
        let z = GObject::<Q>::regular(2, Variant::Vect);
        let orbits = orbit_quotient(&z).unwrap();
        assert_eq!(orbits.object.total_dim(), 1);
        let fixed = fixed_points(&z).unwrap();
        assert_eq!(fixed.object.total_dim(), 1);
    }

    #[test]
    fn orbit_of_regular_sigma3() {
        let z = GObject::<Q>::regular(3, Variant::Vect);
        assert_eq!(orbit_quotient(&z).unwrap().object.total_dim(), 1);
        assert_eq!(fixed_points(&z).unwrap().object.total_dim(), 1);
    }

    #[test]
    fn trivial_action_orbits_are_everything() {
        let z = GObject::<Q>::trivial(Shape::sigma(3), BaseObject::vect(4));
        let orbits = orbit_quotient(&z).unwrap();
        assert_eq!(orbits.object.total_dim(), 4);
        assert!(orbits.proj.is_iso());
        let fixed = fixed_points(&z).unwrap();
        assert_eq!(fixed.object.total_dim(), 4);
    }

    #[test]
    fn copower_dims() {
        let a = BaseObject::<Q>::vect(3);
        let (obj, incls) = copower(&a, 4).unwrap();
        assert_eq!(obj.total_dim(), 12);
        assert_eq!(incls.len(), 4);
        assert!(incls.iter().all(|f| f.is_injective()));
    }

    #[test]
    fn induce_trivial_from_point_gives_regular() {
        // k over Sigma1 x Sigma1 induced to Sigma2 is the regular rep
        let a = GObject::<Q>::trivial(Shape::trivial(2), BaseObject::vect(1));
        let (ind, unit) = induce(&a, 2).unwrap();
        assert_eq!(ind.dim(), 2);
        assert!(unit.is_injective());
        let reg = GObject::<Q>::regular(2, Variant::Vect);
        // same dimension and both have one-dimensional orbits
        assert_eq!(orbit_quotient(&ind).unwrap().object.total_dim(), 1);
        assert_eq!(orbit_quotient(&reg).unwrap().object.total_dim(), 1);
    }

    #[test]
    fn induce_along_identity_is_identity() {
        let a = GObject::<Q>::regular(2, Variant::Vect);
        let (ind, unit) = induce(&a, 2).unwrap();
        assert_eq!(ind.dim(), a.dim());
        assert!(unit.is_iso());
    }

    #[test]
    fn induced_dimension_is_index_times_dim() {
        // Young Sigma_2 x Sigma_1 inside Sigma_3 has index 3
        let a = GObject::<Q>::trivial(Shape::new(vec![2, 1]), BaseObject::vect(2));
        let (ind, _) = induce(&a, 3).unwrap();
        assert_eq!(ind.dim(), 6);
    }

    #[test]
    fn char_zero_dims_agree() {
        let z = GObject::<Q>::regular(3, Variant::Vect);
        let e = z.averaging().unwrap();
        // idempotent
        assert_eq!(e.compose(&e).unwrap(), e);
        let orbit = orbit_quotient(&z).unwrap().object.total_dim();
        let fixed = fixed_points(&z).unwrap().object.total_dim();
        assert_eq!(orbit, fixed);
    }

    #[test]
    fn equivariant_hom_of_regular_is_group_algebra_dim() {
        // End_G(k[G]) has dimension |G|
        let z = GObject::<Q>::regular(3, Variant::Vect);
        let basis = equivariant_hom_basis(&z, &z).unwrap();
        assert_eq!(basis.len(), 6);
    }

    #[test]
    fn iso_search_on_conjugated_action() {
        let z = GObject::<Q>::regular(2, Variant::Vect);
        // conjugate by an invertible matrix
        let t = Matrix::from_int_rows(&[vec![1, 1], vec![0, 1]]);
        let tinv = t.inverse().unwrap();
        let gens = z
            .gens()
            .iter()
            .map(|g| {
                let m = tinv.mul(&g.block_at(0)).mul(&t);
                BaseMorphism::new(z.carrier().clone(), z.carrier().clone(), vec![m]).unwrap()
            })
            .collect();
        let w = GObject::new(Shape::sigma(2), z.carrier().clone(), gens).unwrap();
        let mut rng = rand::rngs::mock::StepRng::new(7, 11);
        let iso = find_equivariant_iso(&z, &w, &mut rng).unwrap();
        assert!(iso.is_some());
        assert!(iso.unwrap().is_iso());
    }

    #[test]
    fn coxeter_validation_rejects_bad_generators() {
        let carrier = BaseObject::<Q>::vect(2);
        let bad = BaseMorphism::new(
            carrier.clone(),
            carrier.clone(),
            vec![Matrix::from_int_rows(&[vec![1, 1], vec![0, 1]])],
        )
        .unwrap();
        let err = GObject::new(Shape::sigma(2), carrier, vec![bad]);
        assert!(matches!(err, Err(EngineError::CoxeterFailed(_))));
    }

    #[test]
    fn young_coset_count() {
        assert_eq!(young_cosets(&Shape::new(vec![2, 1]), 3).len(), 3);
        assert_eq!(young_cosets(&Shape::new(vec![1, 1, 1]), 3).len(), 6);
        assert_eq!(young_cosets(&Shape::new(vec![3]), 3).len(), 1);
    }

    #[test]
    fn block_permutation_moves_blocks() {
        let g = Perm::new(vec![1, 0]).unwrap();
        let bp = g.block_permutation(&[2, 1]);
        // block of size 2 moves behind block of size 1
        assert_eq!(bp.image(), &[1, 2, 0]);
    }
}
