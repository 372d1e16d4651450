//! Combinatorial open books: planar pages, convex curves named by the holes
//! they enclose, and signed Dehn-twist words.
//!
//! A page of genus `g` with `r` boundary circles has Euler characteristic
//! `2 - 2g - r`; the norm of an open book is `2g + r - 1 = 1 - chi`, the
//! genus of the Heegaard surface the book induces. Curve-bearing pages are
//! restricted to genus 0 (a disk with `r - 1` holes, indexed `1..=r-1`; the
//! outer boundary is index 0 implicitly). Positive-genus pages are accepted
//! with empty words only, for norm bookkeeping.

use crate::error::{Error, Result};

/// Compact oriented surface with `r >= 1` boundary circles, genus `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlanarPage {
    genus: u32,
    boundary_count: u32,
}

impl PlanarPage {
    pub fn new(genus: u32, boundary_count: u32) -> Result<Self> {
        if boundary_count == 0 {
            return Err(Error::NoBoundary);
        }
        Ok(PlanarPage {
            genus,
            boundary_count,
        })
    }

    /// The disk: genus 0, one boundary circle.
    pub fn disk() -> Self {
        PlanarPage {
            genus: 0,
            boundary_count: 1,
        }
    }

    /// The annulus: genus 0, two boundary circles.
    pub fn annulus() -> Self {
        PlanarPage {
            genus: 0,
            boundary_count: 2,
        }
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn boundary_count(&self) -> u32 {
        self.boundary_count
    }

    /// Euler characteristic `2 - 2g - r`.
    pub fn euler_char(&self) -> i64 {
        2 - 2 * i64::from(self.genus) - i64::from(self.boundary_count)
    }

    pub fn is_planar(&self) -> bool {
        self.genus == 0
    }

    /// Number of holes, i.e. inner boundary circles `1..=r-1`.
    pub fn hole_count(&self) -> u32 {
        self.boundary_count - 1
    }

    pub(crate) fn require_planar(&self) -> Result<()> {
        if self.is_planar() {
            Ok(())
        } else {
            Err(Error::UnsupportedPage { genus: self.genus })
        }
    }
}

/// Convex curve on a genus-0 page, identified by the non-empty set of holes
/// it encloses. The full set `{1..r-1}` is the curve parallel to the outer
/// boundary; a singleton `{i}` is parallel to inner boundary `i`.
///
/// Distinct isotopy classes enclosing the same holes are conflated; every
/// computation downstream depends only on the hole set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Curve {
    holes: Vec<u32>,
}

impl Curve {
    /// Builds a curve from the given holes (deduplicated, stored ascending).
    pub fn new(holes: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut holes: Vec<u32> = holes.into_iter().collect();
        holes.sort_unstable();
        holes.dedup();
        if holes.is_empty() {
            return Err(Error::EmptyCurve);
        }
        if holes[0] == 0 {
            return Err(Error::HoleOutOfRange {
                hole: 0,
                boundary_count: 0,
            });
        }
        Ok(Curve { holes })
    }

    /// The outer-boundary-parallel curve `{1..r-1}` of a page with `r`
    /// boundary components.
    pub fn outer(page: &PlanarPage) -> Result<Self> {
        Curve::new(1..page.boundary_count())
    }

    pub fn holes(&self) -> &[u32] {
        &self.holes
    }

    pub fn validate_on(&self, page: &PlanarPage) -> Result<()> {
        if !page.is_planar() {
            return Err(Error::CurveOnPositiveGenus {
                genus: page.genus(),
            });
        }
        for &h in &self.holes {
            if h >= page.boundary_count() {
                return Err(Error::HoleOutOfRange {
                    hole: h,
                    boundary_count: page.boundary_count(),
                });
            }
        }
        Ok(())
    }

    /// Shifts every hole index by `offset` (used when plumbing re-indexes
    /// the second factor).
    fn shifted(&self, offset: u32) -> Curve {
        Curve {
            holes: self.holes.iter().map(|h| h + offset).collect(),
        }
    }

    /// Relabels holes through `perm`, where `perm[i-1]` is the image of
    /// hole `i`.
    pub(crate) fn relabeled(&self, perm: &[u32]) -> Curve {
        let mut holes: Vec<u32> = self.holes.iter().map(|&h| perm[(h - 1) as usize]).collect();
        holes.sort_unstable();
        Curve { holes }
    }
}

/// Sign of a Dehn twist; positive means right-handed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn exponent(&self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn of(e: i64) -> Sign {
        if e >= 0 {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

/// One letter of a monodromy word: a Dehn twist along `curve` with a
/// non-zero integer `exponent` (positive = right-handed).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Twist {
    curve: Curve,
    exponent: i64,
}

impl Twist {
    pub fn new(curve: Curve, exponent: i64) -> Result<Self> {
        if exponent == 0 {
            return Err(Error::ZeroExponent);
        }
        Ok(Twist { curve, exponent })
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }
}

/// Ordered Dehn-twist word; the leftmost letter acts first.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwistWord {
    twists: Vec<Twist>,
}

impl TwistWord {
    pub fn empty() -> Self {
        TwistWord::default()
    }

    pub fn new(twists: Vec<Twist>) -> Self {
        TwistWord { twists }
    }

    pub fn twists(&self) -> &[Twist] {
        &self.twists
    }

    pub fn len(&self) -> usize {
        self.twists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.twists.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Twist> {
        self.twists.iter()
    }

    /// Sum of absolute exponents over all letters.
    pub fn total_exponent(&self) -> u64 {
        self.twists.iter().map(|t| t.exponent.unsigned_abs()).sum()
    }
}

impl FromIterator<Twist> for TwistWord {
    fn from_iter<I: IntoIterator<Item = Twist>>(iter: I) -> Self {
        TwistWord {
            twists: iter.into_iter().collect(),
        }
    }
}

/// Planar open book decomposition: a page together with a monodromy word.
///
/// Binding components of the underlying 3-manifold correspond to the `r`
/// boundary circles of the page.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpenBook {
    page: PlanarPage,
    word: TwistWord,
}

impl OpenBook {
    pub fn new(page: PlanarPage, word: TwistWord) -> Result<Self> {
        for twist in word.iter() {
            twist.curve.validate_on(&page)?;
        }
        Ok(OpenBook { page, word })
    }

    /// Disk page, trivial monodromy; the minimal open book (norm 0, on the
    /// three-sphere).
    pub fn disk() -> Self {
        OpenBook {
            page: PlanarPage::disk(),
            word: TwistWord::empty(),
        }
    }

    /// Annulus page with monodromy `t^m` along the core; `m = 0` gives the
    /// trivial word.
    pub fn annulus(m: i64) -> Self {
        let word = if m == 0 {
            TwistWord::empty()
        } else {
            TwistWord::new(vec![Twist {
                curve: Curve { holes: vec![1] },
                exponent: m,
            }])
        };
        OpenBook {
            page: PlanarPage::annulus(),
            word,
        }
    }

    /// Genus-0 page with `boundary_count` boundary circles and the trivial
    /// monodromy.
    pub fn trivial(boundary_count: u32) -> Result<Self> {
        Ok(OpenBook {
            page: PlanarPage::new(0, boundary_count)?,
            word: TwistWord::empty(),
        })
    }

    /// Annulus with a single `sign` twist along the core. The underlying
    /// manifold is the three-sphere for both signs.
    pub fn hopf_band(sign: Sign) -> Self {
        OpenBook::annulus(sign.exponent())
    }

    pub fn page(&self) -> &PlanarPage {
        &self.page
    }

    pub fn word(&self) -> &TwistWord {
        &self.word
    }

    /// The norm `2g + r - 1 = 1 - chi(page)`: the genus of the Heegaard
    /// splitting induced by the open book, hence an upper bound for the
    /// contact genus of the underlying manifold.
    pub fn norm(&self) -> i64 {
        2 * i64::from(self.page.genus()) + i64::from(self.page.boundary_count()) - 1
    }

    /// Plumbing (Murasugi sum along a square). The outer boundaries merge:
    /// the result has `r_a + r_b - 1` boundary circles, holes of `other`
    /// re-indexed by `+ (r_a - 1)`, and the concatenated word. The norm is
    /// exactly additive. Plumbing models contact connected sum of the
    /// supported structures, so this doubles as `connected_sum`.
    pub fn plumb(&self, other: &OpenBook) -> Result<OpenBook> {
        self.page.require_planar()?;
        other.page.require_planar()?;
        let shift = self.page.boundary_count() - 1;
        let page = PlanarPage::new(0, shift + other.page.boundary_count())?;
        let mut twists = self.word.twists.clone();
        twists.extend(other.word.iter().map(|t| Twist {
            curve: t.curve.shifted(shift),
            exponent: t.exponent,
        }));
        Ok(OpenBook {
            page,
            word: TwistWord::new(twists),
        })
    }

    /// Stabilization: adds a new hole `h = r` and appends one `sign` twist
    /// along the band curve `attach ∪ {h}`. The norm grows by exactly 1 and
    /// the first homology of the underlying manifold is unchanged. Positive
    /// sign also preserves the supported contact structure; negative sign
    /// preserves only the manifold.
    pub fn stabilize(&self, sign: Sign, attach: &[u32]) -> Result<OpenBook> {
        self.page.require_planar()?;
        let r = self.page.boundary_count();
        for &h in attach {
            if h == 0 || h >= r {
                return Err(Error::HoleOutOfRange {
                    hole: h,
                    boundary_count: r,
                });
            }
        }
        let page = PlanarPage::new(0, r + 1)?;
        let curve = Curve::new(attach.iter().copied().chain(std::iter::once(r)))?;
        let mut twists = self.word.twists.clone();
        twists.push(Twist {
            curve,
            exponent: sign.exponent(),
        });
        Ok(OpenBook {
            page,
            word: TwistWord::new(twists),
        })
    }

    /// Canonical representative of the open book under the moves that do
    /// not change the underlying manifold or supported structure data we
    /// track: cyclic rotation of the word (conjugate monodromies), hole
    /// relabeling, and merging adjacent letters along the same curve.
    ///
    /// Returns the lexicographically least word in the orbit; idempotent,
    /// and preserves the page (hence the norm) and the first homology.
    pub fn canonicalize(&self) -> OpenBook {
        let reduced = cyclic_reduce(&self.word.twists);
        if reduced.is_empty() {
            return OpenBook {
                page: self.page,
                word: TwistWord::empty(),
            };
        }
        let perms = hole_permutations(self.page.hole_count());
        let word = canonical_word(&reduced, &perms);
        OpenBook {
            page: self.page,
            word: TwistWord::new(word),
        }
    }

    /// Whether this open book is already in canonical form.
    pub fn is_canonical(&self) -> bool {
        *self == self.canonicalize()
    }
}

/// Merges adjacent letters along the same curve, including across the
/// cyclic wrap-around, dropping letters whose exponents cancel.
pub(crate) fn cyclic_reduce(twists: &[Twist]) -> Vec<Twist> {
    let mut word: Vec<Twist> = Vec::with_capacity(twists.len());
    for t in twists {
        match word.last_mut() {
            Some(last) if last.curve == t.curve => {
                last.exponent += t.exponent;
                if last.exponent == 0 {
                    word.pop();
                }
            }
            _ => word.push(t.clone()),
        }
    }
    // Wrap-around: conjugating by the last letter makes it adjacent to the
    // first, so equal end curves merge as well.
    while word.len() >= 2 && word[0].curve == word[word.len() - 1].curve {
        let last = word.pop().expect("non-empty");
        word[0].exponent += last.exponent;
        if word[0].exponent == 0 {
            word.remove(0);
        }
    }
    word
}

/// All permutations of `{1..=n}`, each as the image vector `perm[i-1] = σ(i)`.
pub(crate) fn hole_permutations(n: u32) -> Vec<Vec<u32>> {
    let mut perms = Vec::new();
    let mut current: Vec<u32> = (1..=n).collect();
    heap_permute(current.len(), &mut current, &mut perms);
    perms
}

fn heap_permute(k: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if k <= 1 {
        out.push(current.clone());
        return;
    }
    for i in 0..k {
        heap_permute(k - 1, current, out);
        if k.is_multiple_of(2) {
            current.swap(i, k - 1);
        } else {
            current.swap(0, k - 1);
        }
    }
}

/// Lexicographically least word over all hole relabelings and cyclic
/// rotations of a cyclically reduced word.
pub(crate) fn canonical_word(reduced: &[Twist], perms: &[Vec<u32>]) -> Vec<Twist> {
    debug_assert!(!reduced.is_empty());
    let n = reduced.len();
    let mut best: Option<Vec<Twist>> = None;
    for perm in perms {
        let relabeled: Vec<Twist> = reduced
            .iter()
            .map(|t| Twist {
                curve: t.curve.relabeled(perm),
                exponent: t.exponent,
            })
            .collect();
        for rot in 0..n {
            let candidate_at = |i: usize| &relabeled[(rot + i) % n];
            let better = match &best {
                None => true,
                Some(best) => (0..n)
                    .map(|i| candidate_at(i).cmp(&best[i]))
                    .find(|o| o.is_ne())
                    .is_some_and(|o| o.is_lt()),
            };
            if better {
                best = Some((0..n).map(|i| candidate_at(i).clone()).collect());
            }
        }
    }
    best.expect("at least the identity relabeling")
}
