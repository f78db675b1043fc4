//! The finite chain `1 < 2 < ... < n` and the combinatorial objects that live on it:
//! order-preserving self-maps, subsets, interval partitions, maps between subsets and
//! monotone maps between the blocks of two partitions.
//!
//! Maps act on the right and compose left to right: `f.compose(&g)` is "first `f`, then `g`".
//! Chain points are 1-based everywhere; block indices are 0-based internally and printed
//! 1-based.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Length of the chain. Only `3..=12` is supported.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct ChainSize(u8);

impl ChainSize {
    pub const MIN: usize = 3;
    pub const MAX: usize = 12;

    pub fn new(n: usize) -> Result<Self> {
        if (Self::MIN..=Self::MAX).contains(&n) {
            Ok(ChainSize(n as u8))
        } else {
            Err(Error::ChainSize(n))
        }
    }

    pub fn get(self) -> usize {
        self.0 as usize
    }
}

impl TryFrom<usize> for ChainSize {
    type Error = Error;
    fn try_from(n: usize) -> Result<Self> {
        ChainSize::new(n)
    }
}

impl From<ChainSize> for usize {
    fn from(n: ChainSize) -> usize {
        n.get()
    }
}

impl fmt::Display for ChainSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// All non-decreasing sequences of length `len` drawn from the sorted slice `values`,
/// in lexicographic order.
pub(crate) fn monotone_sequences(len: usize, values: &[usize]) -> Vec<Vec<usize>> {
    fn go(len: usize, values: &[usize], from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in from..values.len() {
            cur.push(values[i]);
            go(len, values, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(len, values, 0, &mut Vec::with_capacity(len), &mut out);
    out
}

fn is_monotone(values: &[usize]) -> bool {
    values.windows(2).all(|w| w[0] <= w[1])
}

fn write_list(f: &mut fmt::Formatter<'_>, open: char, items: &[usize], close: char) -> fmt::Result {
    write!(f, "{open}")?;
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, "{close}")
}

fn parse_list(s: &str, open: char, close: char) -> Result<Vec<usize>> {
    let s = s.trim();
    let inner = s
        .strip_prefix(open)
        .and_then(|r| r.strip_suffix(close))
        .ok_or_else(|| Error::Parse(format!("expected {open}...{close}, got `{s}`")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("`{}`: {e}", t.trim())))
        })
        .collect()
}

// ---------------------------------------------------------------------------

/// A total order-preserving self-map of the chain, stored as its image sequence.
///
/// The identity is representable; membership in the semigroup of singular maps is
/// [`OpMap::is_singular`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OpMap {
    images: Vec<usize>,
}

impl OpMap {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = ChainSize::new(images.len())?.get();
        if let Some(&bad) = images.iter().find(|&&v| v == 0 || v > n) {
            return Err(Error::Domain(format!("image value {bad} outside 1..={n}")));
        }
        if !is_monotone(&images) {
            return Err(Error::Domain(format!("{images:?} is not order-preserving")));
        }
        Ok(OpMap { images })
    }

    pub fn identity(n: ChainSize) -> Self {
        OpMap {
            images: (1..=n.get()).collect(),
        }
    }

    pub fn constant(n: ChainSize, c: usize) -> Result<Self> {
        OpMap::new(vec![c; n.get()])
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn chain_size(&self) -> ChainSize {
        ChainSize(self.images.len() as u8)
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `(x)f` for a chain point `x` in `1..=n`.
    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1]
    }

    pub fn is_singular(&self) -> bool {
        self.images.iter().enumerate().any(|(i, &v)| v != i + 1)
    }

    pub fn is_idempotent(&self) -> bool {
        self.images.iter().all(|&v| self.apply(v) == v)
    }

    pub fn rank(&self) -> usize {
        let mut r = 0;
        let mut last = 0;
        for &v in &self.images {
            if v != last {
                r += 1;
                last = v;
            }
        }
        r
    }

    /// `x ↦ ((x)self)other`.
    pub fn compose(&self, other: &OpMap) -> Result<OpMap> {
        if self.n() != other.n() {
            return Err(Error::Dimension {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(OpMap {
            images: self.images.iter().map(|&v| other.apply(v)).collect(),
        })
    }

    pub fn image(&self) -> Subset {
        let mut elements = self.images.clone();
        elements.dedup();
        Subset {
            n: self.n() as u8,
            elements,
        }
    }

    /// The partition of the chain into the fibers of the map.
    pub fn kernel(&self) -> OrderedPartition {
        let mut sizes = Vec::new();
        let mut last = 0;
        for &v in &self.images {
            if v == last {
                *sizes.last_mut().unwrap() += 1;
            } else {
                sizes.push(1);
                last = v;
            }
        }
        OrderedPartition { block_sizes: sizes }
    }

    /// Restriction to `a`, with codomain the image of the restriction.
    pub fn restrict(&self, a: &Subset) -> SubMap {
        let values: Vec<usize> = a.elements.iter().map(|&x| self.apply(x)).collect();
        let mut codomain = values.clone();
        codomain.dedup();
        SubMap {
            domain: a.clone(),
            codomain: Subset {
                n: a.n,
                elements: codomain,
            },
            values,
        }
    }

    /// Restriction to `a` with a declared codomain `b`.
    pub fn restrict_into(&self, a: &Subset, b: &Subset) -> Result<SubMap> {
        SubMap::new(
            a.clone(),
            b.clone(),
            a.elements.iter().map(|&x| self.apply(x)).collect(),
        )
    }
}

impl fmt::Display for OpMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, '[', &self.images, ']')
    }
}

impl FromStr for OpMap {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        OpMap::new(parse_list(s, '[', ']')?)
    }
}

impl Serialize for OpMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Green's relations, as characterised on order-preserving maps by kernels and images.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Green {
    R,
    L,
    H,
    J,
}

impl Green {
    pub const ALL: [Green; 4] = [Green::R, Green::L, Green::H, Green::J];
}

impl FromStr for Green {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "R" => Ok(Green::R),
            "L" => Ok(Green::L),
            "H" => Ok(Green::H),
            "J" => Ok(Green::J),
            _ => Err(Error::Parse(format!("unknown Green relation `{s}`"))),
        }
    }
}

impl fmt::Display for Green {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Green::R => "R",
            Green::L => "L",
            Green::H => "H",
            Green::J => "J",
        };
        f.write_str(s)
    }
}

/// R: equal kernels; L: equal images; H: equality; J: equal rank.
pub fn green(f: &OpMap, g: &OpMap, relation: Green) -> Result<bool> {
    if f.n() != g.n() {
        return Err(Error::Dimension {
            left: f.n(),
            right: g.n(),
        });
    }
    Ok(match relation {
        Green::R => f.kernel() == g.kernel(),
        Green::L => f.image() == g.image(),
        Green::H => f == g,
        Green::J => f.rank() == g.rank(),
    })
}

/// Every order-preserving self-map of the chain, identity included, in lexicographic order.
pub fn enumerate_monotone(n: ChainSize) -> Vec<OpMap> {
    let values: Vec<usize> = (1..=n.get()).collect();
    monotone_sequences(n.get(), &values)
        .into_iter()
        .map(|images| OpMap { images })
        .collect()
}

/// The elements of the semigroup of singular order-preserving maps, lexicographically.
pub fn enumerate_oxn(n: ChainSize) -> Vec<OpMap> {
    enumerate_monotone(n)
        .into_iter()
        .filter(OpMap::is_singular)
        .collect()
}

/// `C(2n-1, n-1) - 1`.
pub fn oxn_order(n: ChainSize) -> u64 {
    let n = n.get() as u64;
    let (top, k) = (2 * n - 1, n - 1);
    let mut c: u64 = 1;
    for i in 0..k {
        c = c * (top - i) / (i + 1);
    }
    c - 1
}

/// The idempotent with image `a` that rounds every point up to the next element of `a`,
/// and sends everything above `max(a)` to `max(a)`.
pub fn idempotent_for_image(a: &Subset) -> Result<OpMap> {
    if !a.is_proper() {
        return Err(Error::Domain(format!(
            "{a} is the whole chain; the idempotent would be the identity"
        )));
    }
    let last = *a.elements.last().unwrap();
    let images = (1..=a.n())
        .map(|x| a.elements.iter().copied().find(|&y| y >= x).unwrap_or(last))
        .collect();
    Ok(OpMap { images })
}

/// The idempotent with kernel `p` whose image is the minimum of each block.
pub fn idempotent_for_kernel(p: &OrderedPartition) -> Result<OpMap> {
    if !p.is_non_identity() {
        return Err(Error::Domain(format!(
            "{p} is the discrete partition; the idempotent would be the identity"
        )));
    }
    let mut images = Vec::with_capacity(p.n());
    for (lo, hi) in p.blocks() {
        images.extend(std::iter::repeat_n(lo, hi - lo + 1));
    }
    Ok(OpMap { images })
}

/// Retraction of `a` onto `sub`: points of `sub` are fixed, other points go to the
/// nearest element of `sub` below them, or to `min(sub)` if there is none.
pub fn retraction_for_inclusion(sub: &Subset, a: &Subset) -> Result<SubMap> {
    if !sub.is_subset_of(a) {
        return Err(Error::Domain(format!("{sub} is not contained in {a}")));
    }
    let first = sub.elements[0];
    let values = a
        .elements
        .iter()
        .map(|&x| {
            sub.elements
                .iter()
                .rev()
                .copied()
                .find(|&y| y <= x)
                .unwrap_or(first)
        })
        .collect();
    Ok(SubMap {
        domain: a.clone(),
        codomain: sub.clone(),
        values,
    })
}

/// Two-block step idempotent: `x ↦ at` for `x <= at`, `x ↦ at + 1` above.
///
/// If `α R β` first differ on a kernel block where `α` takes `at` and `β` a larger value,
/// then `α·e != β·e` for this `e`.
pub fn separator_idempotent(at: usize, n: ChainSize) -> Result<OpMap> {
    if at == 0 || at >= n.get() {
        return Err(Error::Domain(format!(
            "separator point {at} must lie in 1..{}",
            n.get()
        )));
    }
    let images = (1..=n.get()).map(|x| if x <= at { at } else { at + 1 }).collect();
    Ok(OpMap { images })
}

/// For `α != β` with equal kernels, the separator point: the smaller of the two images on the
/// first kernel block where they differ. `None` if the maps are equal or not R-related.
pub fn separator_point(alpha: &OpMap, beta: &OpMap) -> Option<usize> {
    if alpha == beta || alpha.kernel() != beta.kernel() {
        return None;
    }
    alpha
        .images
        .iter()
        .zip(&beta.images)
        .find(|(a, b)| a != b)
        .map(|(&a, &b)| a.min(b))
}

// ---------------------------------------------------------------------------

/// A nonempty subset of the chain, stored as its increasing element list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    n: u8,
    elements: Vec<usize>,
}

impl Subset {
    pub fn new(n: ChainSize, elements: Vec<usize>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::Domain("subsets must be nonempty".into()));
        }
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain(format!("{elements:?} is not strictly increasing")));
        }
        if elements[0] == 0 || *elements.last().unwrap() > n.get() {
            return Err(Error::Domain(format!("{elements:?} leaves 1..={n}")));
        }
        Ok(Subset {
            n: n.get() as u8,
            elements,
        })
    }

    pub fn full(n: ChainSize) -> Self {
        Subset {
            n: n.get() as u8,
            elements: (1..=n.get()).collect(),
        }
    }

    pub fn singleton(n: ChainSize, x: usize) -> Result<Self> {
        Subset::new(n, vec![x])
    }

    pub fn parse(n: ChainSize, s: &str) -> Result<Self> {
        Subset::new(n, parse_list(s, '{', '}')?)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_proper(&self) -> bool {
        self.elements.len() < self.n()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn position(&self, x: usize) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.n == other.n && self.elements.iter().all(|&x| other.contains(x))
    }

    /// Proper nonempty subsets, largest first, ties in lexicographic order.
    pub fn proper_subsets(n: ChainSize) -> Vec<Subset> {
        let n = n.get();
        let mut out: Vec<Subset> = (1u32..(1 << n) - 1)
            .map(|mask| Subset {
                n: n as u8,
                elements: (1..=n).filter(|x| mask & (1 << (x - 1)) != 0).collect(),
            })
            .collect();
        out.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.elements.cmp(&b.elements)));
        out
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, '{', &self.elements, '}')
    }
}

/// A partition of the chain into consecutive intervals, stored by block sizes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedPartition {
    block_sizes: Vec<usize>,
}

impl OrderedPartition {
    pub fn new(block_sizes: Vec<usize>) -> Result<Self> {
        if block_sizes.contains(&0) {
            return Err(Error::Domain(format!("{block_sizes:?} has an empty block")));
        }
        ChainSize::new(block_sizes.iter().sum())?;
        Ok(OrderedPartition { block_sizes })
    }

    /// The partition whose blocks are the classes of `labels` (one label per chain point);
    /// errors if some class is not an interval.
    pub fn from_labels<T: PartialEq>(labels: &[T]) -> Result<Self> {
        let mut sizes: Vec<usize> = Vec::new();
        let mut seen: Vec<&T> = Vec::new();
        for (i, l) in labels.iter().enumerate() {
            if i > 0 && labels[i - 1] == *l {
                *sizes.last_mut().unwrap() += 1;
            } else {
                if seen.contains(&l) {
                    return Err(Error::Domain(format!(
                        "class of point {} is not an interval",
                        i + 1
                    )));
                }
                seen.push(l);
                sizes.push(1);
            }
        }
        OrderedPartition::new(sizes)
    }

    pub fn discrete(n: ChainSize) -> Self {
        OrderedPartition {
            block_sizes: vec![1; n.get()],
        }
    }

    pub fn block_sizes(&self) -> &[usize] {
        &self.block_sizes
    }

    pub fn n(&self) -> usize {
        self.block_sizes.iter().sum()
    }

    pub fn chain_size(&self) -> ChainSize {
        ChainSize(self.n() as u8)
    }

    pub fn num_blocks(&self) -> usize {
        self.block_sizes.len()
    }

    pub fn is_non_identity(&self) -> bool {
        self.num_blocks() < self.n()
    }

    /// Blocks as inclusive `(lo, hi)` intervals of chain points.
    pub fn blocks(&self) -> Vec<(usize, usize)> {
        let mut lo = 1;
        self.block_sizes
            .iter()
            .map(|&k| {
                let b = (lo, lo + k - 1);
                lo += k;
                b
            })
            .collect()
    }

    /// Index of the block containing chain point `x`.
    pub fn block_of(&self, x: usize) -> usize {
        let mut hi = 0;
        for (i, &k) in self.block_sizes.iter().enumerate() {
            hi += k;
            if x <= hi {
                return i;
            }
        }
        panic!("point {x} outside chain of length {hi}");
    }

    /// Block index of every chain point, in order.
    pub fn labels(&self) -> Vec<usize> {
        self.block_sizes
            .iter()
            .enumerate()
            .flat_map(|(i, &k)| std::iter::repeat_n(i, k))
            .collect()
    }

    /// Every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &OrderedPartition) -> bool {
        if self.n() != coarser.n() {
            return false;
        }
        self.blocks()
            .iter()
            .all(|&(lo, hi)| coarser.block_of(lo) == coarser.block_of(hi))
    }

    /// All ordered partitions of the chain.
    pub fn all(n: ChainSize) -> Vec<OrderedPartition> {
        let n = n.get();
        (0u32..1 << (n - 1))
            .map(|cuts| {
                let mut sizes = vec![1];
                for gap in 0..n - 1 {
                    if cuts & (1 << gap) != 0 {
                        sizes.push(1);
                    } else {
                        *sizes.last_mut().unwrap() += 1;
                    }
                }
                OrderedPartition { block_sizes: sizes }
            })
            .collect()
    }

    /// Non-identity ordered partitions, most blocks first, ties in lexicographic order.
    pub fn non_identity(n: ChainSize) -> Vec<OrderedPartition> {
        let mut out: Vec<_> = Self::all(n)
            .into_iter()
            .filter(|p| p.is_non_identity())
            .collect();
        out.sort_by(|a, b| {
            b.num_blocks()
                .cmp(&a.num_blocks())
                .then_with(|| a.block_sizes.cmp(&b.block_sizes))
        });
        out
    }
}

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, '(', &self.block_sizes, ')')
    }
}

impl FromStr for OrderedPartition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        OrderedPartition::new(parse_list(s, '(', ')')?)
    }
}

// ---------------------------------------------------------------------------

/// An order-preserving map from one subset of the chain into another.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubMap {
    domain: Subset,
    codomain: Subset,
    values: Vec<usize>,
}

impl SubMap {
    pub fn new(domain: Subset, codomain: Subset, values: Vec<usize>) -> Result<Self> {
        if domain.n != codomain.n {
            return Err(Error::Dimension {
                left: domain.n(),
                right: codomain.n(),
            });
        }
        if values.len() != domain.len() {
            return Err(Error::Domain(format!(
                "{} values for a domain of size {}",
                values.len(),
                domain.len()
            )));
        }
        if let Some(v) = values.iter().find(|&&v| !codomain.contains(v)) {
            return Err(Error::Domain(format!("value {v} not in codomain {codomain}")));
        }
        if !is_monotone(&values) {
            return Err(Error::Domain(format!("{values:?} is not order-preserving")));
        }
        Ok(SubMap {
            domain,
            codomain,
            values,
        })
    }

    pub fn identity(a: &Subset) -> Self {
        SubMap {
            domain: a.clone(),
            codomain: a.clone(),
            values: a.elements.clone(),
        }
    }

    pub fn inclusion(a: &Subset, b: &Subset) -> Result<Self> {
        if !a.is_subset_of(b) {
            return Err(Error::Domain(format!("{a} is not contained in {b}")));
        }
        Ok(SubMap {
            domain: a.clone(),
            codomain: b.clone(),
            values: a.elements.clone(),
        })
    }

    pub fn domain(&self) -> &Subset {
        &self.domain
    }

    pub fn codomain(&self) -> &Subset {
        &self.codomain
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Value at a domain point; `None` off the domain.
    pub fn apply(&self, x: usize) -> Option<usize> {
        self.domain.position(x).map(|i| self.values[i])
    }

    pub fn image(&self) -> Subset {
        let mut elements = self.values.clone();
        elements.dedup();
        Subset {
            n: self.domain.n,
            elements,
        }
    }

    /// `x ↦ ((x)self)other`; requires `self.codomain == other.domain`.
    pub fn compose(&self, other: &SubMap) -> Result<SubMap> {
        if self.codomain != other.domain {
            return Err(Error::Composition(format!(
                "codomain {} != domain {}",
                self.codomain, other.domain
            )));
        }
        Ok(SubMap {
            domain: self.domain.clone(),
            codomain: other.codomain.clone(),
            values: self
                .values
                .iter()
                .map(|&v| other.apply(v).unwrap())
                .collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.values.len() == self.codomain.len()
    }

    pub fn is_identity(&self) -> bool {
        self.domain == self.codomain && self.values == self.domain.elements
    }

    /// Restriction to a subset of the domain.
    pub fn restrict(&self, a: &Subset) -> Result<SubMap> {
        if !a.is_subset_of(&self.domain) {
            return Err(Error::Domain(format!("{a} is not contained in {}", self.domain)));
        }
        Ok(SubMap {
            domain: a.clone(),
            codomain: self.codomain.clone(),
            values: a.elements.iter().map(|&x| self.apply(x).unwrap()).collect(),
        })
    }

    /// Same values, new codomain (which must contain the image).
    pub fn with_codomain(&self, codomain: &Subset) -> Result<SubMap> {
        SubMap::new(self.domain.clone(), codomain.clone(), self.values.clone())
    }

    /// The monotone total extension `x ↦ (d(x))self` where `d` rounds `x` up into the
    /// domain via `idempotent_for_image`; agrees with `self` on the domain.
    pub fn extend(&self) -> OpMap {
        let n = self.domain.n();
        let last = *self.values.last().unwrap();
        let images = (1..=n)
            .map(|x| match self.domain.elements.iter().position(|&y| y >= x) {
                Some(i) => self.values[i],
                None => last,
            })
            .collect();
        OpMap { images }
    }

    /// All monotone maps `domain -> codomain`, lexicographically.
    pub fn enumerate(domain: &Subset, codomain: &Subset) -> Vec<SubMap> {
        monotone_sequences(domain.len(), &codomain.elements)
            .into_iter()
            .map(|values| SubMap {
                domain: domain.clone(),
                codomain: codomain.clone(),
                values,
            })
            .collect()
    }
}

impl fmt::Display for SubMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}: ", self.domain, self.codomain)?;
        write_list(f, '[', &self.values, ']')
    }
}

/// An order-preserving map between the block chains of two ordered partitions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockMap {
    source: OrderedPartition,
    target: OrderedPartition,
    values: Vec<usize>,
}

impl BlockMap {
    /// `values[i]` is the (0-based) target block of source block `i`.
    pub fn new(source: OrderedPartition, target: OrderedPartition, values: Vec<usize>) -> Result<Self> {
        if source.n() != target.n() {
            return Err(Error::Dimension {
                left: source.n(),
                right: target.n(),
            });
        }
        if values.len() != source.num_blocks() {
            return Err(Error::Domain(format!(
                "{} values for {} source blocks",
                values.len(),
                source.num_blocks()
            )));
        }
        if let Some(v) = values.iter().find(|&&v| v >= target.num_blocks()) {
            return Err(Error::Domain(format!("block index {v} out of range for {target}")));
        }
        if !is_monotone(&values) {
            return Err(Error::Domain(format!("{values:?} is not order-preserving")));
        }
        Ok(BlockMap {
            source,
            target,
            values,
        })
    }

    pub fn identity(p: &OrderedPartition) -> Self {
        BlockMap {
            source: p.clone(),
            target: p.clone(),
            values: (0..p.num_blocks()).collect(),
        }
    }

    /// Sends each block of `fine` to the block of `coarse` containing it.
    pub fn containment(fine: &OrderedPartition, coarse: &OrderedPartition) -> Result<Self> {
        if !fine.refines(coarse) {
            return Err(Error::Domain(format!("{fine} does not refine {coarse}")));
        }
        Ok(BlockMap {
            source: fine.clone(),
            target: coarse.clone(),
            values: fine.blocks().iter().map(|&(lo, _)| coarse.block_of(lo)).collect(),
        })
    }

    pub fn source(&self) -> &OrderedPartition {
        &self.source
    }

    pub fn target(&self) -> &OrderedPartition {
        &self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, block: usize) -> usize {
        self.values[block]
    }

    /// First `self`, then `other`.
    pub fn then(&self, other: &BlockMap) -> Result<BlockMap> {
        if self.target != other.source {
            return Err(Error::Composition(format!(
                "target {} != source {}",
                self.target, other.source
            )));
        }
        Ok(BlockMap {
            source: self.source.clone(),
            target: other.target.clone(),
            values: self.values.iter().map(|&b| other.values[b]).collect(),
        })
    }

    pub fn is_bijective(&self) -> bool {
        self.values.len() == self.target.num_blocks() && self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn enumerate(source: &OrderedPartition, target: &OrderedPartition) -> Vec<BlockMap> {
        let idx: Vec<usize> = (0..target.num_blocks()).collect();
        monotone_sequences(source.num_blocks(), &idx)
            .into_iter()
            .map(|values| BlockMap {
                source: source.clone(),
                target: target.clone(),
                values,
            })
            .collect()
    }
}

impl fmt::Display for BlockMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one_based: Vec<usize> = self.values.iter().map(|v| v + 1).collect();
        write_list(f, '[', &one_based, ']')
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(k: usize) -> ChainSize {
        ChainSize::new(k).unwrap()
    }

    fn m(s: &str) -> OpMap {
        s.parse().unwrap()
    }

    fn binomial(top: u64, k: u64) -> u64 {
        // Pascal's triangle, independent of `oxn_order`.
        let mut row = vec![1u64];
        for _ in 0..top {
            let mut next = vec![1u64; row.len() + 1];
            for i in 1..row.len() {
                next[i] = row[i - 1] + row[i];
            }
            row = next;
        }
        row[k as usize]
    }

    #[test]
    fn chain_size_bounds() {
        assert!(ChainSize::new(2).is_err());
        assert!(ChainSize::new(13).is_err());
        assert_eq!(ChainSize::new(7).unwrap().get(), 7);
    }

    #[test]
    fn compose_examples() {
        assert_eq!(m("[1,1,2]").compose(&m("[2,2,3]")).unwrap(), m("[2,2,2]"));
        assert_eq!(m("[1,2,2]").compose(&m("[1,2,2]")).unwrap(), m("[1,2,2]"));
        for f in enumerate_oxn(n(3)) {
            assert_eq!(f.compose(&m("[3,3,3]")).unwrap(), m("[3,3,3]"));
        }
        assert!(matches!(
            m("[1,1,2]").compose(&m("[1,1,1,1]")),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn image_and_kernel_examples() {
        assert_eq!(m("[1,1,2]").image().to_string(), "{1,2}");
        assert_eq!(m("[2,2,2]").image().to_string(), "{2}");
        assert_eq!(m("[1,3,3]").image().to_string(), "{1,3}");
        assert_eq!(m("[1,1,3]").kernel().block_sizes(), &[2, 1]);
        assert_eq!(m("[2,2,2]").kernel().block_sizes(), &[3]);
        assert_eq!(m("[1,2,2,4]").kernel().block_sizes(), &[1, 2, 1]);
    }

    #[test]
    fn green_examples() {
        assert!(green(&m("[1,1,2]"), &m("[2,2,3]"), Green::R).unwrap());
        assert!(green(&m("[1,1,2]"), &m("[2,3,3]"), Green::J).unwrap());
        assert!(!green(&m("[1,1,2]"), &m("[1,1,3]"), Green::L).unwrap());
        for f in enumerate_oxn(n(3)) {
            assert!(green(&f, &f, Green::H).unwrap());
        }
    }

    #[test]
    fn enumeration_matches_closed_form() {
        let expected = [9u64, 34, 125, 461, 1715];
        for (k, want) in (3..=7).zip(expected) {
            let got = enumerate_oxn(n(k)).len() as u64;
            assert_eq!(got, binomial(2 * k as u64 - 1, k as u64 - 1) - 1);
            assert_eq!(got, want);
            assert_eq!(oxn_order(n(k)), want);
        }
        let listed: Vec<String> = enumerate_oxn(n(3)).iter().map(|f| f.to_string()).collect();
        assert_eq!(
            listed,
            [
                "[1,1,1]", "[1,1,2]", "[1,1,3]", "[1,2,2]", "[1,3,3]", "[2,2,2]", "[2,2,3]",
                "[2,3,3]", "[3,3,3]"
            ]
        );
    }

    #[test]
    fn idempotents_at_three() {
        let idem: Vec<String> = enumerate_oxn(n(3))
            .into_iter()
            .filter(|e| e.compose(e).unwrap() == *e)
            .map(|e| e.to_string())
            .collect();
        assert_eq!(idem.len(), 7);
        for want in ["[1,1,3]", "[1,2,2]", "[1,3,3]", "[2,2,3]"] {
            assert!(idem.contains(&want.to_string()));
        }
    }

    #[test]
    fn idempotent_for_image_examples() {
        let a = Subset::parse(n(3), "{1,3}").unwrap();
        assert_eq!(idempotent_for_image(&a).unwrap(), m("[1,3,3]"));
        let a = Subset::parse(n(3), "{2}").unwrap();
        assert_eq!(idempotent_for_image(&a).unwrap(), m("[2,2,2]"));
        let a = Subset::parse(n(5), "{2,4}").unwrap();
        assert_eq!(idempotent_for_image(&a).unwrap(), m("[2,2,4,4,4]"));
        assert!(idempotent_for_image(&Subset::full(n(4))).is_err());
    }

    #[test]
    fn idempotent_for_image_all_subsets() {
        for k in 3..=7 {
            for a in Subset::proper_subsets(n(k)) {
                let e = idempotent_for_image(&a).unwrap();
                assert!(e.is_idempotent());
                assert_eq!(e.compose(&e).unwrap(), e);
                assert_eq!(e.image(), a);
            }
        }
    }

    #[test]
    fn retraction_examples() {
        let a = Subset::parse(n(4), "{1,2,4}").unwrap();
        let sub = Subset::parse(n(4), "{1,4}").unwrap();
        let r = retraction_for_inclusion(&sub, &a).unwrap();
        assert_eq!(r.values(), &[1, 1, 4]);
        let id = retraction_for_inclusion(&a, &a).unwrap();
        assert!(id.is_identity());
        let a = Subset::parse(n(4), "{1,2,3}").unwrap();
        let two = Subset::parse(n(4), "{2}").unwrap();
        assert_eq!(retraction_for_inclusion(&two, &a).unwrap().values(), &[2, 2, 2]);
        assert!(retraction_for_inclusion(&a, &two).is_err());
    }

    #[test]
    fn retraction_splits_every_inclusion() {
        for k in 3..=6 {
            let subsets = Subset::proper_subsets(n(k));
            for a in &subsets {
                for sub in subsets.iter().filter(|s| s.is_subset_of(a)) {
                    let j = SubMap::inclusion(sub, a).unwrap();
                    let q = retraction_for_inclusion(sub, a).unwrap();
                    assert!(j.compose(&q).unwrap().is_identity(), "{sub} in {a}");
                }
            }
        }
    }

    #[test]
    fn separator_examples() {
        assert_eq!(separator_idempotent(2, n(3)).unwrap(), m("[2,2,3]"));
        assert_eq!(separator_idempotent(2, n(4)).unwrap(), m("[2,2,3,3]"));
        assert!(separator_idempotent(3, n(3)).is_err());
        let (a, b) = (m("[1,1,2]"), m("[1,1,3]"));
        let e = separator_idempotent(separator_point(&a, &b).unwrap(), n(3)).unwrap();
        assert_eq!(e, m("[2,2,3]"));
        assert_eq!(a.compose(&e).unwrap(), m("[2,2,2]"));
        assert_eq!(b.compose(&e).unwrap(), m("[2,2,3]"));
    }

    #[test]
    fn literal_step_map_does_not_separate() {
        // Sending the upper part to max(Im α) instead of at+1 collapses both maps to [2,2,2].
        let (a, b) = (m("[1,1,2]"), m("[1,1,3]"));
        let literal = m("[2,2,2]");
        assert_eq!(a.compose(&literal).unwrap(), b.compose(&literal).unwrap());
    }

    #[test]
    fn separator_separates_every_r_pair() {
        for k in 3..=6 {
            let all = enumerate_oxn(n(k));
            for a in &all {
                for b in all.iter().filter(|b| *b != a && b.kernel() == a.kernel()) {
                    let e = separator_idempotent(separator_point(a, b).unwrap(), n(k)).unwrap();
                    assert!(e.is_idempotent());
                    assert_ne!(a.compose(&e).unwrap(), b.compose(&e).unwrap());
                }
            }
        }
    }

    #[test]
    fn restrict_examples() {
        let a = Subset::parse(n(3), "{1,2}").unwrap();
        assert_eq!(m("[1,3,3]").restrict(&a).values(), &[1, 3]);
        assert!(m("[1,2,2]").restrict(&a).is_identity());
        let b = Subset::parse(n(3), "{1,3}").unwrap();
        assert_eq!(m("[2,2,2]").restrict(&b).values(), &[2, 2]);
    }

    #[test]
    fn partitions() {
        let p: OrderedPartition = "(2,1)".parse().unwrap();
        assert_eq!(p.blocks(), vec![(1, 2), (3, 3)]);
        assert_eq!(p.block_of(2), 0);
        assert!(p.is_non_identity());
        assert!(!OrderedPartition::discrete(n(3)).is_non_identity());
        assert_eq!(OrderedPartition::all(n(5)).len(), 16);
        assert_eq!(OrderedPartition::non_identity(n(4)).len(), 7);
        let fine: OrderedPartition = "(1,1,2)".parse().unwrap();
        let coarse: OrderedPartition = "(2,2)".parse().unwrap();
        assert!(fine.refines(&coarse));
        assert!(!coarse.refines(&fine));
        assert!(OrderedPartition::from_labels(&[1, 2, 1]).is_err());
        assert!("(0,3)".parse::<OrderedPartition>().is_err());
    }

    #[test]
    fn rejects_bad_literals() {
        assert!("[2,1,1]".parse::<OpMap>().is_err());
        assert!("[1,1,4]".parse::<OpMap>().is_err());
        assert!("[1,1".parse::<OpMap>().is_err());
        assert!(Subset::parse(n(3), "{2,1}").is_err());
        assert!(Subset::parse(n(3), "{}").is_err());
    }

    #[test]
    fn extension_agrees_on_domain() {
        let a = Subset::parse(n(5), "{2,4}").unwrap();
        let b = Subset::parse(n(5), "{1,3,5}").unwrap();
        for s in SubMap::enumerate(&a, &b) {
            let e = s.extend();
            assert_eq!(e.restrict_into(&a, &b).unwrap(), s);
        }
    }
}
