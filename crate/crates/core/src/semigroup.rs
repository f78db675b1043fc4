//! Finite semigroups given by a full multiplication table.

use std::collections::{HashMap, VecDeque};
use std::fmt::Display;
use std::hash::Hash;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::json;

use crate::chain::Green;
use crate::error::{Error, Result};

/// Tables up to this order are checked for associativity exhaustively.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 200;
/// Number of random triples checked above the exhaustive limit.
pub const SAMPLED_ASSOCIATIVITY_TRIPLES: usize = 100_000;
const ASSOCIATIVITY_SEED: u64 = 0x0a55_0c1a;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSemigroup {
    labels: Vec<String>,
    order: usize,
    table: Vec<u32>,
}

impl FiniteSemigroup {
    /// Tabulates `mul` over `elements`. Fails if two elements coincide, a product falls
    /// outside the list, or associativity fails.
    pub fn build<T, F>(elements: &[T], mut mul: F) -> Result<Self>
    where
        T: Eq + Hash + Display,
        F: FnMut(&T, &T) -> Result<T>,
    {
        let mut index = HashMap::with_capacity(elements.len());
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e, i).is_some() {
                return Err(Error::DuplicateElement(e.to_string()));
            }
        }
        let m = elements.len();
        let mut table = Vec::with_capacity(m * m);
        for a in elements {
            for b in elements {
                let p = mul(a, b)?;
                match index.get(&p) {
                    Some(&i) => table.push(i as u32),
                    None => {
                        return Err(Error::NotClosed {
                            left: a.to_string(),
                            right: b.to_string(),
                            product: p.to_string(),
                        })
                    }
                }
            }
        }
        let labels = elements.iter().map(|e| e.to_string()).collect();
        Self::from_parts(labels, table)
    }

    /// Builds from an explicit table, `table[a][b] = a·b`.
    pub fn from_table(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let m = labels.len();
        if table.len() != m || table.iter().any(|row| row.len() != m) {
            return Err(Error::Domain(format!("table is not {m}x{m}")));
        }
        let mut flat = Vec::with_capacity(m * m);
        for (a, row) in table.iter().enumerate() {
            for (b, &p) in row.iter().enumerate() {
                if p >= m {
                    return Err(Error::NotClosed {
                        left: labels[a].clone(),
                        right: labels[b].clone(),
                        product: format!("#{p}"),
                    });
                }
                flat.push(p as u32);
            }
        }
        Self::from_parts(labels, flat)
    }

    fn from_parts(labels: Vec<String>, table: Vec<u32>) -> Result<Self> {
        let s = FiniteSemigroup {
            order: labels.len(),
            labels,
            table,
        };
        if let Some((a, b, c)) = s.associativity_witness() {
            return Err(Error::NotAssociative(
                s.labels[a].clone(),
                s.labels[b].clone(),
                s.labels[c].clone(),
            ));
        }
        Ok(s)
    }

    fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let m = self.order;
        let fails = |a, b, c| self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c));
        if m <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for a in 0..m {
                for b in 0..m {
                    for c in 0..m {
                        if fails(a, b, c) {
                            return Some((a, b, c));
                        }
                    }
                }
            }
        } else {
            let mut rng = StdRng::seed_from_u64(ASSOCIATIVITY_SEED);
            for _ in 0..SAMPLED_ASSOCIATIVITY_TRIPLES {
                let (a, b, c) = (rng.random_range(0..m), rng.random_range(0..m), rng.random_range(0..m));
                if fails(a, b, c) {
                    return Some((a, b, c));
                }
            }
        }
        None
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn is_idempotent(&self, a: usize) -> bool {
        self.mul(a, a) == a
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.order).filter(|&a| self.is_idempotent(a)).collect()
    }

    /// An element `a` with no `x` satisfying `a·x·a = a`.
    pub fn non_regular_element(&self) -> Option<usize> {
        (0..self.order).find(|&a| !(0..self.order).any(|x| self.mul(self.mul(a, x), a) == a))
    }

    pub fn is_regular(&self) -> bool {
        self.non_regular_element().is_none()
    }

    /// The same elements with `a ∘ b = b·a`.
    pub fn opposite(&self) -> FiniteSemigroup {
        let m = self.order;
        let table = (0..m * m).map(|i| self.table[(i % m) * m + i / m]).collect();
        FiniteSemigroup {
            labels: self.labels.clone(),
            order: m,
            table,
        }
    }

    /// Principal one-sided and two-sided ideals of every element.
    pub fn ideals(&self) -> PrincipalIdeals {
        let m = self.order;
        let mut left = Vec::with_capacity(m);
        let mut right = Vec::with_capacity(m);
        for a in 0..m {
            let mut l = vec![false; m];
            let mut r = vec![false; m];
            l[a] = true;
            r[a] = true;
            for s in 0..m {
                l[self.mul(s, a)] = true;
                r[self.mul(a, s)] = true;
            }
            left.push(l);
            right.push(r);
        }
        let mut two_sided = Vec::with_capacity(m);
        for a in 0..m {
            let mut j = right[a].clone();
            for (x, _) in right[a].iter().enumerate().filter(|(_, &inside)| inside) {
                for s in 0..m {
                    j[self.mul(s, x)] = true;
                }
            }
            two_sided.push(j);
        }
        PrincipalIdeals {
            left,
            right,
            two_sided,
        }
    }

    /// Green's relations decided from principal ideals.
    pub fn green_oracle(&self, a: usize, b: usize, relation: Green) -> bool {
        self.ideals().related(a, b, relation)
    }

    /// `{ "order": m, "elements": [labels], "table": [[...]] }`.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<u32>> = self
            .table
            .chunks(self.order.max(1))
            .map(|r| r.to_vec())
            .collect();
        json!({ "order": self.order, "elements": self.labels, "table": rows })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("cayley table: {what}"));
        let labels: Vec<String> = value["elements"]
            .as_array()
            .ok_or_else(|| bad("missing elements"))?
            .iter()
            .map(|l| l.as_str().map(str::to_owned).ok_or_else(|| bad("non-string label")))
            .collect::<Result<_>>()?;
        if value["order"].as_u64() != Some(labels.len() as u64) {
            return Err(bad("order does not match element count"));
        }
        let table: Vec<Vec<usize>> = value["table"]
            .as_array()
            .ok_or_else(|| bad("missing table"))?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| bad("row is not an array"))?
                    .iter()
                    .map(|v| v.as_u64().map(|v| v as usize).ok_or_else(|| bad("bad entry")))
                    .collect()
            })
            .collect::<Result<_>>()?;
        Self::from_table(labels, table)
    }

    /// Order-invariant data about an element, used to prune isomorphism search.
    fn fingerprints(&self) -> Vec<Fingerprint> {
        let ideals = self.ideals();
        let count = |v: &Vec<bool>| v.iter().filter(|&&x| x).count();
        (0..self.order)
            .map(|a| {
                let mut seen = vec![usize::MAX; self.order];
                let (mut x, mut k) = (a, 0);
                while seen[x] == usize::MAX {
                    seen[x] = k;
                    x = self.mul(x, a);
                    k += 1;
                }
                Fingerprint {
                    idempotent: self.is_idempotent(a),
                    left_ideal: count(&ideals.left[a]),
                    right_ideal: count(&ideals.right[a]),
                    two_sided: count(&ideals.two_sided[a]),
                    left_fixers: (0..self.order).filter(|&s| self.mul(s, a) == a).count(),
                    right_fixers: (0..self.order).filter(|&s| self.mul(a, s) == a).count(),
                    index: seen[x],
                    period: k - seen[x],
                }
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Fingerprint {
    idempotent: bool,
    left_ideal: usize,
    right_ideal: usize,
    two_sided: usize,
    left_fixers: usize,
    right_fixers: usize,
    index: usize,
    period: usize,
}

/// `S¹a`, `aS¹` and `S¹aS¹` for every element, as membership vectors.
#[derive(Clone, Debug)]
pub struct PrincipalIdeals {
    left: Vec<Vec<bool>>,
    right: Vec<Vec<bool>>,
    two_sided: Vec<Vec<bool>>,
}

impl PrincipalIdeals {
    pub fn related(&self, a: usize, b: usize, relation: Green) -> bool {
        match relation {
            Green::L => self.left[a] == self.left[b],
            Green::R => self.right[a] == self.right[b],
            Green::H => self.left[a] == self.left[b] && self.right[a] == self.right[b],
            Green::J => self.two_sided[a] == self.two_sided[b],
        }
    }
}

/// A map between the elements of two finite semigroups.
#[derive(Clone, Debug)]
pub struct ElementMap<'s> {
    pub source: &'s FiniteSemigroup,
    pub target: &'s FiniteSemigroup,
    pub assignment: Vec<usize>,
}

impl<'s> ElementMap<'s> {
    pub fn new(source: &'s FiniteSemigroup, target: &'s FiniteSemigroup, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != source.order() {
            return Err(Error::Dimension {
                left: assignment.len(),
                right: source.order(),
            });
        }
        if let Some(&bad) = assignment.iter().find(|&&t| t >= target.order()) {
            return Err(Error::Domain(format!("image index {bad} outside target")));
        }
        Ok(ElementMap {
            source,
            target,
            assignment,
        })
    }

    pub fn identity(s: &'s FiniteSemigroup) -> Self {
        ElementMap {
            source: s,
            target: s,
            assignment: (0..s.order()).collect(),
        }
    }

    pub fn apply(&self, a: usize) -> usize {
        self.assignment[a]
    }

    /// A pair `(a, b)` with `φ(ab) != φ(a)φ(b)`.
    pub fn homomorphism_witness(&self) -> Option<(usize, usize)> {
        let m = self.source.order();
        for a in 0..m {
            for b in 0..m {
                let lhs = self.assignment[self.source.mul(a, b)];
                let rhs = self.target.mul(self.assignment[a], self.assignment[b]);
                if lhs != rhs {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_homomorphism(&self) -> bool {
        self.homomorphism_witness().is_none()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        self.assignment
            .iter()
            .all(|&t| !std::mem::replace(&mut seen[t], true))
    }

    pub fn is_bijective(&self) -> bool {
        self.source.order() == self.target.order() && self.is_injective()
    }
}

/// Free-standing form of [`ElementMap::is_homomorphism`].
pub fn is_homomorphism(phi: &ElementMap<'_>) -> bool {
    phi.is_homomorphism()
}

/// Greedy generating set: walk `priority` and keep every element not yet generated.
fn generating_words(s: &FiniteSemigroup, priority: &[usize]) -> Vec<usize> {
    let m = s.order();
    let mut gens: Vec<usize> = Vec::new();
    let mut inside = vec![false; m];
    for &cand in priority {
        if inside[cand] {
            continue;
        }
        gens.push(cand);
        inside.iter_mut().for_each(|x| *x = false);
        let mut queue: VecDeque<usize> = gens.iter().copied().collect();
        for &g in &gens {
            inside[g] = true;
        }
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = s.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    gens
}

/// Searches for an isomorphism `s -> t` by backtracking over the images of a generating set,
/// propagating products and pruning by element fingerprints.
pub fn find_isomorphism<'s>(s: &'s FiniteSemigroup, t: &'s FiniteSemigroup) -> Option<ElementMap<'s>> {
    let m = s.order();
    if m != t.order() {
        return None;
    }
    let fs = s.fingerprints();
    let ft = t.fingerprints();
    let mut sorted_s = fs.clone();
    let mut sorted_t = ft.clone();
    sorted_s.sort();
    sorted_t.sort();
    if sorted_s != sorted_t {
        return None;
    }
    let mut class_size: HashMap<Fingerprint, usize> = HashMap::new();
    for f in &fs {
        *class_size.entry(*f).or_default() += 1;
    }
    let mut priority: Vec<usize> = (0..m).collect();
    priority.sort_by_key(|&a| (class_size[&fs[a]], a));
    let gens = generating_words(s, &priority);

    let mut search = IsoSearch {
        s,
        t,
        fs: &fs,
        ft: &ft,
        gens: &gens,
        image: vec![None; m],
        used: vec![false; m],
    };
    if !search.extend(0) {
        return None;
    }
    let assignment: Vec<usize> = search.image.iter().map(|x| x.unwrap()).collect();
    let phi = ElementMap {
        source: s,
        target: t,
        assignment,
    };
    assert!(phi.is_bijective() && phi.is_homomorphism(), "isomorphism search returned a non-isomorphism");
    Some(phi)
}

struct IsoSearch<'a> {
    s: &'a FiniteSemigroup,
    t: &'a FiniteSemigroup,
    fs: &'a [Fingerprint],
    ft: &'a [Fingerprint],
    gens: &'a [usize],
    image: Vec<Option<usize>>,
    used: Vec<bool>,
}

impl IsoSearch<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.gens.len() {
            return self.image.iter().all(Option::is_some);
        }
        let g = self.gens[depth];
        if self.image[g].is_some() {
            // Already forced by earlier generators.
            let Some(log) = self.propagate(depth + 1) else {
                return false;
            };
            if self.extend(depth + 1) {
                return true;
            }
            self.undo(&log);
            return false;
        }
        for cand in 0..self.t.order() {
            if self.used[cand] || self.ft[cand] != self.fs[g] {
                continue;
            }
            self.image[g] = Some(cand);
            self.used[cand] = true;
            if let Some(log) = self.propagate(depth + 1) {
                if self.extend(depth + 1) {
                    return true;
                }
                self.undo(&log);
            }
            self.image[g] = None;
            self.used[cand] = false;
        }
        false
    }

    /// Closes the partial map under right multiplication by the first `k` generators.
    /// Returns the newly assigned elements, or `None` (with changes rolled back) on conflict.
    fn propagate(&mut self, k: usize) -> Option<Vec<usize>> {
        let active: Vec<usize> = self.gens[..k]
            .iter()
            .copied()
            .filter(|&g| self.image[g].is_some())
            .collect();
        let mut log = Vec::new();
        let mut queue: VecDeque<usize> = (0..self.s.order()).filter(|&x| self.image[x].is_some()).collect();
        while let Some(x) = queue.pop_front() {
            let ix = self.image[x].unwrap();
            for &g in &active {
                let ig = self.image[g].unwrap();
                for (y, iy) in [(self.s.mul(x, g), self.t.mul(ix, ig)), (self.s.mul(g, x), self.t.mul(ig, ix))] {
                    match self.image[y] {
                        Some(cur) if cur == iy => {}
                        Some(_) => {
                            self.undo(&log);
                            return None;
                        }
                        None => {
                            if self.used[iy] || self.fs[y] != self.ft[iy] {
                                self.undo(&log);
                                return None;
                            }
                            self.image[y] = Some(iy);
                            self.used[iy] = true;
                            log.push(y);
                            queue.push_back(y);
                        }
                    }
                }
            }
        }
        Some(log)
    }

    fn undo(&mut self, log: &[usize]) {
        for &y in log {
            let iy = self.image[y].take().unwrap();
            self.used[iy] = false;
        }
    }
}
