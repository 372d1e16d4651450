//! Bounded enumeration of planar open books up to canonical form, with
//! invariant bucketing and minimal-norm witness search.
//!
//! The walker visits cyclically reduced words directly (adjacent letters
//! on distinct curves, including around the wrap) and keeps exactly the
//! orbit-minimal word of each rotation/relabeling class, so every
//! canonical class within the bounds is produced exactly once. Two sound
//! prefix prunes keep the tree small: the first letter's curve must be
//! fixed by taking its minimal relabeling image, and every later letter,
//! after minimal relabeling of its curve, must not sort below the first
//! letter.
//!
//! Deterministic order everywhere: classes stream in lexicographic
//! `(boundary count, total exponent, serialized word)` order, and report
//! merging is schedule-independent.

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigInt;

use crate::book::{self, Curve, OpenBook, PlanarPage, Twist, TwistWord};
use crate::contact::catalog_lookup;
use crate::error::{Error, Result};
use crate::format::serialize_open_book;
use crate::homology::{h1, h1_from_nets, AbelianGroup};

/// Bounds for the finite search space.
///
/// `exponent_bound` limits letters of the words being searched, not of
/// the canonical forms reported: any letter splits into unit letters of
/// the same total weight, so every bound `>= 1` admits representatives of
/// exactly the same canonical classes and only `0` (empty words only) is
/// restrictive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    max_boundary: u32,
    max_total_exponent: u64,
    exponent_bound: Option<u64>,
    target: Option<AbelianGroup>,
    norm_cap: Option<i64>,
}

impl SearchConfig {
    pub fn new(max_boundary: u32, max_total_exponent: u64) -> Result<Self> {
        if max_boundary == 0 {
            return Err(Error::InvalidArgument {
                what: "max boundary count",
                value: max_boundary.to_string(),
            });
        }
        Ok(SearchConfig {
            max_boundary,
            max_total_exponent,
            exponent_bound: None,
            target: None,
            norm_cap: None,
        })
    }

    pub fn with_exponent_bound(mut self, bound: u64) -> Self {
        self.exponent_bound = Some(bound);
        self
    }

    pub fn with_target(mut self, target: AbelianGroup) -> Self {
        self.target = Some(target);
        self
    }

    pub fn with_norm_cap(mut self, cap: i64) -> Self {
        self.norm_cap = Some(cap);
        self
    }

    pub fn max_boundary(&self) -> u32 {
        self.max_boundary
    }

    pub fn max_total_exponent(&self) -> u64 {
        self.max_total_exponent
    }

    pub fn target(&self) -> Option<&AbelianGroup> {
        self.target.as_ref()
    }

    /// Boundary counts surviving the norm cap (planar norm is `r - 1`).
    fn boundary_range(&self) -> impl Iterator<Item = u32> {
        let cap = self.norm_cap;
        (1..=self.max_boundary).filter(move |r| cap.is_none_or(|c| i64::from(r - 1) <= c))
    }

    /// Weight of the heaviest admissible letter, given the per-letter bound
    /// collapse described on the type.
    fn letters_allowed(&self) -> bool {
        self.exponent_bound != Some(0)
    }

    fn echo(&self) -> String {
        fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
            v.as_ref().map_or_else(|| "none".to_string(), T::to_string)
        }
        format!(
            "max_boundary={} max_total_exponent={} exponent_bound={} target={} norm_cap={}",
            self.max_boundary,
            self.max_total_exponent,
            opt(&self.exponent_bound),
            opt(&self.target),
            opt(&self.norm_cap),
        )
    }
}

/// Letters as (curve index, exponent) over a fixed page's curve table.
type Letter = (u8, i64);

/// Per-boundary-count enumeration tables: the lex-sorted curve list, each
/// hole relabeling as a permutation of curve indices, and each curve's
/// minimal relabeling image.
struct Walker {
    r: u32,
    curves: Vec<Curve>,
    perm_maps: Vec<Vec<u8>>,
    min_image: Vec<u8>,
}

impl Walker {
    fn new(r: u32) -> Walker {
        let holes: Vec<u32> = (1..r).collect();
        let mut curves: Vec<Curve> = Vec::new();
        // All non-empty hole subsets, by bitmask.
        for mask in 1u32..(1 << holes.len()) {
            let subset = holes
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &h)| h);
            curves.push(Curve::new(subset).expect("non-empty subset"));
        }
        curves.sort();
        let index: BTreeMap<&Curve, u8> = curves
            .iter()
            .enumerate()
            .map(|(i, c)| (c, i as u8))
            .collect();
        let perm_maps: Vec<Vec<u8>> = book::hole_permutations(r - 1)
            .iter()
            .map(|perm| curves.iter().map(|c| index[&c.relabeled(perm)]).collect())
            .collect();
        let min_image: Vec<u8> = (0..curves.len())
            .map(|c| perm_maps.iter().map(|p| p[c]).min().expect("identity"))
            .collect();
        Walker {
            r,
            curves,
            perm_maps,
            min_image,
        }
    }

    fn page(&self) -> PlanarPage {
        PlanarPage::new(0, self.r).expect("positive boundary count")
    }

    fn to_book(&self, word: &[Letter]) -> OpenBook {
        let twists = word
            .iter()
            .map(|&(c, e)| Twist::new(self.curves[c as usize].clone(), e).expect("non-zero"))
            .collect();
        OpenBook::new(self.page(), TwistWord::new(twists)).expect("curves fit the page")
    }

    /// True iff `word` is the lexicographic minimum over all relabelings
    /// and rotations — i.e. it is the canonical form of its class.
    fn is_orbit_min(&self, word: &[Letter]) -> bool {
        let k = word.len();
        for map in &self.perm_maps {
            for rot in 0..k {
                for i in 0..k {
                    let (c, e) = word[(rot + i) % k];
                    let mapped = (map[c as usize], e);
                    match mapped.cmp(&word[i]) {
                        std::cmp::Ordering::Less => return false,
                        std::cmp::Ordering::Greater => break,
                        std::cmp::Ordering::Equal => {}
                    }
                }
            }
        }
        true
    }

    /// Walks every canonical word starting with `first`, spending at most
    /// `budget` additional weight. In `exact` mode only words consuming
    /// the full budget are emitted; otherwise every canonical word along
    /// the way is.
    fn walk(&self, first: Letter, budget: u64, exact: bool, emit: &mut dyn FnMut(&[Letter])) {
        debug_assert_eq!(self.min_image[first.0 as usize], first.0);
        let mut word = vec![first];
        self.extend(&mut word, budget, exact, emit);
    }

    fn extend(
        &self,
        word: &mut Vec<Letter>,
        left: u64,
        exact: bool,
        emit: &mut dyn FnMut(&[Letter]),
    ) {
        if !exact || left == 0 {
            let cyclically_reduced = word.len() == 1 || word[0].0 != word[word.len() - 1].0;
            if cyclically_reduced && self.is_orbit_min(word) {
                emit(word);
            }
        }
        if left == 0 {
            return;
        }
        let first = word[0];
        let last = word[word.len() - 1].0;
        for c in 0..self.curves.len() as u8 {
            if c == last {
                continue;
            }
            let img = self.min_image[c as usize];
            if img < first.0 {
                continue; // rotating this letter to the front would beat `first`
            }
            let max = left as i64;
            for e in (-max..0).chain(1..=max) {
                if img == first.0 && e < first.1 {
                    continue; // same reason, comparing exponents
                }
                word.push((c, e));
                self.extend(word, left - e.unsigned_abs(), exact, emit);
                word.pop();
            }
        }
    }

    /// Valid first letters: curves fixed by their minimal relabeling
    /// image, exponents of weight at most `max`, in ascending order.
    fn first_letters(&self, max: u64) -> Vec<Letter> {
        let mut firsts = Vec::new();
        for c in 0..self.curves.len() as u8 {
            if self.min_image[c as usize] != c {
                continue;
            }
            let m = max as i64;
            for e in (-m..0).chain(1..=m) {
                firsts.push((c, e));
            }
        }
        firsts
    }
}

/// One canonical class of exact total weight `w` on `r` boundary circles,
/// collected and sorted by serialization so the stream order is
/// `(r, total exponent, serialized word)`.
fn exact_weight_layer(walker: &Walker, w: u64) -> Vec<OpenBook> {
    let mut layer: Vec<(String, OpenBook)> = Vec::new();
    for first in walker.first_letters(w) {
        walker.walk(first, w - first.1.unsigned_abs(), true, &mut |word| {
            let ob = walker.to_book(word);
            layer.push((serialize_open_book(&ob), ob));
        });
    }
    layer.sort();
    layer.into_iter().map(|(_, ob)| ob).collect()
}

/// Streaming enumeration of every canonical class within the bounds, in
/// the deterministic `(r, total exponent, serialized word)` order. Each
/// in-bounds open book has exactly one representative in the stream.
pub fn enumerate(config: &SearchConfig) -> Enumerate {
    Enumerate {
        config: config.clone(),
        boundaries: config.boundary_range().collect(),
        position: 0,
        weight: 0,
        walker: None,
        buffer: Vec::new().into_iter(),
    }
}

pub struct Enumerate {
    config: SearchConfig,
    boundaries: Vec<u32>,
    position: usize,
    weight: u64,
    walker: Option<Walker>,
    buffer: std::vec::IntoIter<OpenBook>,
}

impl Iterator for Enumerate {
    type Item = OpenBook;

    fn next(&mut self) -> Option<OpenBook> {
        loop {
            if let Some(ob) = self.buffer.next() {
                return Some(ob);
            }
            let r = *self.boundaries.get(self.position)?;
            let w = self.weight;
            self.buffer = if w == 0 {
                vec![OpenBook::trivial(r).expect("r >= 1")].into_iter()
            } else {
                if self.walker.as_ref().map(|wk| wk.r) != Some(r) {
                    self.walker = Some(Walker::new(r));
                }
                exact_weight_layer(self.walker.as_ref().expect("just cached"), w).into_iter()
            };
            // Advance (r, w) in lexicographic order.
            if w == self.config.max_total_exponent || r == 1 || !self.config.letters_allowed() {
                self.position += 1;
                self.weight = 0;
            } else {
                self.weight += 1;
            }
        }
    }
}

/// Memoized first homology over net exponents; the key is the nonzero
/// net-exponent profile indexed by the walker's curve table.
struct HomologyCache<'w> {
    walker: &'w Walker,
    nets: Vec<i64>,
    memo: HashMap<Vec<Letter>, AbelianGroup>,
}

impl<'w> HomologyCache<'w> {
    fn new(walker: &'w Walker) -> Self {
        HomologyCache {
            nets: vec![0; walker.curves.len()],
            memo: HashMap::new(),
            walker,
        }
    }

    fn h1(&mut self, word: &[Letter]) -> AbelianGroup {
        self.nets.iter_mut().for_each(|n| *n = 0);
        for &(c, e) in word {
            self.nets[c as usize] += e;
        }
        let key: Vec<Letter> = self
            .nets
            .iter()
            .enumerate()
            .filter(|(_, &n)| n != 0)
            .map(|(c, &n)| (c as u8, n))
            .collect();
        if let Some(g) = self.memo.get(&key) {
            return g.clone();
        }
        let nets: BTreeMap<Curve, BigInt> = key
            .iter()
            .map(|&(c, n)| (self.walker.curves[c as usize].clone(), BigInt::from(n)))
            .collect();
        let group = h1_from_nets(self.walker.r - 1, &nets);
        self.memo.insert(key, group.clone());
        group
    }
}

/// Minimal-norm witness with `h1 = target` among the books `enumerate`
/// yields, together with its norm; ties go to the earliest class in the
/// stream order. The result bounds the contact genus of *some* manifold
/// with that first homology — identification beyond H1 is the caller's
/// burden.
pub fn cg_upper_bound(config: &SearchConfig, target: &AbelianGroup) -> Option<(OpenBook, i64)> {
    for r in config.boundary_range() {
        if *target == AbelianGroup::free(r - 1) {
            let ob = OpenBook::trivial(r).expect("r >= 1");
            let norm = ob.norm();
            return Some((ob, norm));
        }
        if r == 1 || !config.letters_allowed() {
            continue;
        }
        let walker = Walker::new(r);
        let mut cache = HomologyCache::new(&walker);
        for w in 1..=config.max_total_exponent {
            let mut best: Option<(String, OpenBook)> = None;
            for first in walker.first_letters(w) {
                walker.walk(first, w - first.1.unsigned_abs(), true, &mut |word| {
                    if cache.h1(word) != *target {
                        return;
                    }
                    let ob = walker.to_book(word);
                    let key = serialize_open_book(&ob);
                    if best.as_ref().is_none_or(|(k, _)| key < *k) {
                        best = Some((key, ob));
                    }
                });
            }
            if let Some((_, ob)) = best {
                let norm = ob.norm();
                return Some((ob, norm));
            }
        }
    }
    None
}

/// Counting bucket for one first-homology class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBucket {
    count: u64,
    min_norm: i64,
    witness: OpenBook,
}

impl SearchBucket {
    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn min_norm(&self) -> i64 {
        self.min_norm
    }

    pub fn witness(&self) -> &OpenBook {
        &self.witness
    }
}

/// Deterministic bucketed summary of an enumeration sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    config: SearchConfig,
    buckets: BTreeMap<String, SearchBucket>,
    total_classes: u64,
}

/// Fold accumulator: witnesses ordered by the stream key
/// `(r, weight, serialized word)`.
#[derive(Clone)]
struct Acc {
    count: u64,
    min_norm: i64,
    key: (u32, u64, String),
    witness: OpenBook,
}

impl Acc {
    fn new(ob: OpenBook, key: (u32, u64, String)) -> Acc {
        Acc {
            count: 1,
            min_norm: ob.norm(),
            key,
            witness: ob,
        }
    }

    fn absorb(&mut self, other: Acc) {
        self.count += other.count;
        self.min_norm = self.min_norm.min(other.min_norm);
        if other.key < self.key {
            self.key = other.key;
            self.witness = other.witness;
        }
    }
}

type FoldMap = BTreeMap<String, Acc>;

fn fold_class(map: &mut FoldMap, group: &AbelianGroup, ob: OpenBook, key: (u32, u64, String)) {
    let acc = Acc::new(ob, key);
    match map.entry(group.to_string()) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(acc);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => o.get_mut().absorb(acc),
    }
}

/// Work unit: all words on `r` boundary circles opening with the given
/// first letter. Units share nothing; any worker may take any unit.
struct WorkUnit {
    r: u32,
    first: Letter,
}

/// Enumerates everything in `config` (restricted to the target's bucket
/// when a target is set) and buckets by rendered first homology, using
/// `jobs` worker threads. The report is byte-identical for every `jobs`
/// value.
pub fn search_report(config: &SearchConfig, jobs: usize) -> Result<SearchReport> {
    if jobs == 0 {
        return Err(Error::InvalidArgument {
            what: "worker count",
            value: jobs.to_string(),
        });
    }
    // Empty monodromies, one per boundary count, folded up front.
    let mut merged: FoldMap = BTreeMap::new();
    let mut total_classes: u64 = 0;
    for r in config.boundary_range() {
        let ob = OpenBook::trivial(r).expect("r >= 1");
        let group = AbelianGroup::free(r - 1);
        total_classes += 1;
        if config.target.as_ref().is_none_or(|t| *t == group) {
            let key = (r, 0, serialize_open_book(&ob));
            fold_class(&mut merged, &group, ob, key);
        }
    }

    let walkers: Vec<Walker> = if config.letters_allowed() {
        config
            .boundary_range()
            .filter(|&r| r > 1)
            .map(Walker::new)
            .collect()
    } else {
        Vec::new()
    };
    let mut units: Vec<(usize, WorkUnit)> = Vec::new();
    for (wi, walker) in walkers.iter().enumerate() {
        for first in walker.first_letters(config.max_total_exponent) {
            units.push((wi, WorkUnit { r: walker.r, first }));
        }
    }

    let next_unit = AtomicUsize::new(0);
    let workers = jobs.min(units.len().max(1));
    let results: Vec<(FoldMap, u64)> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                let units = &units;
                let walkers = &walkers;
                let next_unit = &next_unit;
                scope.spawn(move || {
                    let mut local: FoldMap = BTreeMap::new();
                    let mut classes: u64 = 0;
                    let mut caches: Vec<HomologyCache> =
                        walkers.iter().map(HomologyCache::new).collect();
                    loop {
                        let i = next_unit.fetch_add(1, Ordering::Relaxed);
                        let Some((wi, unit)) = units.get(i) else {
                            break;
                        };
                        let walker = &walkers[*wi];
                        let cache = &mut caches[*wi];
                        let budget = config.max_total_exponent - unit.first.1.unsigned_abs();
                        walker.walk(unit.first, budget, false, &mut |word| {
                            classes += 1;
                            let group = cache.h1(word);
                            if config.target.as_ref().is_some_and(|t| *t != group) {
                                return;
                            }
                            let ob = walker.to_book(word);
                            let weight: u64 = word.iter().map(|&(_, e)| e.unsigned_abs()).sum();
                            let key = (unit.r, weight, serialize_open_book(&ob));
                            fold_class(&mut local, &group, ob, key);
                        });
                    }
                    (local, classes)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("search worker"))
            .collect()
    });

    for (local, classes) in results {
        total_classes += classes;
        for (group, acc) in local {
            match merged.entry(group) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(acc);
                }
                std::collections::btree_map::Entry::Occupied(mut o) => o.get_mut().absorb(acc),
            }
        }
    }

    let buckets = merged
        .into_iter()
        .map(|(g, acc)| {
            (
                g,
                SearchBucket {
                    count: acc.count,
                    min_norm: acc.min_norm,
                    witness: acc.witness,
                },
            )
        })
        .collect();
    Ok(SearchReport {
        config: config.clone(),
        buckets,
        total_classes,
    })
}

impl SearchReport {
    pub fn buckets(&self) -> &BTreeMap<String, SearchBucket> {
        &self.buckets
    }

    pub fn total_classes(&self) -> u64 {
        self.total_classes
    }

    /// Comma-separated rows `group,count,min_norm,witness`, the witness
    /// quoted in the open-book file grammar (with literal newlines), plus
    /// `#`-prefixed config echo and totals.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# config: {}\n", self.config.echo()));
        out.push_str("group,count,min_norm,witness\n");
        for (group, bucket) in &self.buckets {
            let witness = serialize_open_book(&bucket.witness);
            let witness = witness.trim_end_matches('\n').replace('"', "\"\"");
            out.push_str(&format!(
                "{group},{},{},\"{witness}\"\n",
                bucket.count, bucket.min_norm
            ));
        }
        out.push_str(&format!("# total_classes={}\n", self.total_classes));
        if let Some(target) = &self.config.target {
            out.push_str(&format!(
                "# note: min_norm is an upper bound for some manifold with H1 = {target}; \
                 identification beyond H1 is the caller's burden.\n"
            ));
        }
        out.push_str(
            "# note: rows bucket canonical open books by first homology only; \
             equal H1 does not identify the manifold.\n",
        );
        out
    }
}

/// Checks the annulus classification at desk scale and renders it as a
/// table: for every `|m| <= m_max`, the book `t^m` has cyclic first
/// homology of order `|m|` (infinite cyclic at 0), and every two-boundary
/// class within weight `m_max` collapses to the `t^m` family. A failure
/// here means the homology engine or the canonicalizer is wrong, reported
/// as an internal inconsistency.
pub fn verify_annulus_family(m_max: i64) -> Result<String> {
    if m_max < 1 {
        return Err(Error::InvalidArgument {
            what: "m_max",
            value: m_max.to_string(),
        });
    }
    let mut out = format!("# annulus family t^m, |m| <= {m_max}\n");
    out.push_str("m,h1,manifold,structure\n");
    for m in -m_max..=m_max {
        let ob = OpenBook::annulus(m);
        let group = h1(&ob)?;
        let expected = if m == 0 {
            AbelianGroup::free(1)
        } else {
            AbelianGroup::cyclic(m.abs())
        };
        if group != expected {
            return Err(Error::Inconsistency(format!(
                "h1(annulus t^{m}) = {group}, expected {expected}"
            )));
        }
        let entry = catalog_lookup(&ob)
            .ok_or_else(|| Error::Inconsistency(format!("annulus t^{m} missing from catalog")))?;
        out.push_str(&format!(
            "{m},{group},{},{}\n",
            entry.manifold_name(),
            entry.label().name()
        ));
    }
    let config = SearchConfig::new(2, m_max.unsigned_abs())?;
    let mut collapsed: u64 = 0;
    for ob in enumerate(&config).filter(|ob| ob.page().boundary_count() == 2) {
        let word = ob.word();
        let is_power =
            word.is_empty() || (word.len() == 1 && word.twists()[0].curve().holes() == [1]);
        if !is_power {
            return Err(Error::Inconsistency(format!(
                "two-boundary class does not collapse to a core power: {ob:?}"
            )));
        }
        collapsed += 1;
    }
    out.push_str(&format!(
        "# r=2 canonical classes collapse to the t^m family: {collapsed} classes checked\n"
    ));
    Ok(out)
}
