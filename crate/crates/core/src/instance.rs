use crate::structure::expand;
use crate::{Error, Result, Structure, ValueSet};

/// A total map from the left universe to the right universe, by index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment(Vec<usize>);

impl Assignment {
    pub fn new(values: Vec<usize>) -> Self {
        Assignment(values)
    }

    /// The constant map `A → {b}`.
    pub fn constant(len: usize, b: usize) -> Self {
        Assignment(vec![b; len])
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn get(&self, a: usize) -> usize {
        self.0[a]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &Assignment) -> Assignment {
        Assignment(self.0.iter().map(|&b| g.get(b)).collect())
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }
}

/// A map defined on a subset of the left universe. The domain is kept
/// sorted, so equal maps have equal representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PartialHom {
    domain: Vec<usize>,
    values: Vec<usize>,
}

impl PartialHom {
    pub fn empty() -> Self {
        PartialHom::default()
    }

    /// Builds from `(a, b)` pairs. Panics if some `a` is given twice.
    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(pairs: I) -> Self {
        let mut pairs: Vec<(usize, usize)> = pairs.into_iter().collect();
        pairs.sort_unstable();
        for w in pairs.windows(2) {
            assert_ne!(w[0].0, w[1].0, "element {} mapped twice", w[0].0);
        }
        PartialHom {
            domain: pairs.iter().map(|p| p.0).collect(),
            values: pairs.iter().map(|p| p.1).collect(),
        }
    }

    pub fn domain(&self) -> &[usize] {
        &self.domain
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.domain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }

    pub fn get(&self, a: usize) -> Option<usize> {
        self.domain.binary_search(&a).ok().map(|i| self.values[i])
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.domain.iter().copied().zip(self.values.iter().copied())
    }

    /// `f ⊆ g`: same values wherever `f` is defined.
    pub fn is_extended_by(&self, g: &PartialHom) -> bool {
        self.pairs().all(|(a, b)| g.get(a) == Some(b))
    }

    /// The restriction dropping the `i`-th domain element.
    pub fn without_position(&self, i: usize) -> PartialHom {
        let mut out = self.clone();
        out.domain.remove(i);
        out.values.remove(i);
        out
    }

    /// The extension by `a ↦ b`; `a` must be outside the domain.
    pub fn with(&self, a: usize, b: usize) -> PartialHom {
        let pos = self
            .domain
            .binary_search(&a)
            .expect_err("element already in domain");
        let mut out = self.clone();
        out.domain.insert(pos, a);
        out.values.insert(pos, b);
        out
    }

    /// Whether this map is a homomorphism from the substructure of `lhs`
    /// induced by its domain.
    pub fn is_partial_hom(&self, lhs: &Structure, rhs: &Structure) -> bool {
        let mut image = Vec::new();
        for (rl, rr) in lhs.relations().iter().zip(rhs.relations()) {
            'tuples: for t in rl.iter() {
                image.clear();
                for &a in t {
                    match self.get(a) {
                        Some(b) => image.push(b),
                        None => continue 'tuples,
                    }
                }
                if !rr.contains(&image) {
                    return false;
                }
            }
        }
        true
    }
}

/// A CSP instance: similar structures `A` (lhs) and `B` (rhs), plus pins
/// `a ↦ b` standing for the expansion `[A,{a₁},…]`, `[B,{b₁},…]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    lhs: Structure,
    rhs: Structure,
    pins: Vec<(usize, usize)>,
}

impl Instance {
    pub fn new(lhs: Structure, rhs: Structure) -> Result<Self> {
        Self::with_pins(lhs, rhs, Vec::new())
    }

    /// Pins may repeat an element; the expansion then carries one unary
    /// symbol per pin and the element's initial domain is their intersection.
    pub fn with_pins(lhs: Structure, rhs: Structure, mut pins: Vec<(usize, usize)>) -> Result<Self> {
        lhs.check_similar(&rhs)?;
        for &(a, b) in &pins {
            if a >= lhs.len() {
                return Err(Error::IndexOutOfRange {
                    index: a,
                    size: lhs.len(),
                });
            }
            if b >= rhs.len() {
                return Err(Error::IndexOutOfRange {
                    index: b,
                    size: rhs.len(),
                });
            }
        }
        pins.sort_unstable();
        pins.dedup();
        Ok(Instance { lhs, rhs, pins })
    }

    pub fn lhs(&self) -> &Structure {
        &self.lhs
    }

    pub fn rhs(&self) -> &Structure {
        &self.rhs
    }

    pub fn pins(&self) -> &[(usize, usize)] {
        &self.pins
    }

    /// The same instance with one more pin.
    pub fn pinned(&self, a: usize, b: usize) -> Result<Instance> {
        let mut pins = self.pins.clone();
        pins.push((a, b));
        Instance::with_pins(self.lhs.clone(), self.rhs.clone(), pins)
    }

    /// Domains every algorithm starts from: `B`, cut down by the pins.
    pub fn initial_domains(&self) -> Vec<ValueSet> {
        let mut d = vec![self.rhs.full_set(); self.lhs.len()];
        for &(a, b) in &self.pins {
            let keep = ValueSet::singleton(self.rhs.len(), b);
            d[a].intersect_with(&keep);
        }
        d
    }

    /// The literal expansion pair carrying the pins as fresh unary symbols.
    pub fn expanded(&self) -> Result<(Structure, Structure)> {
        let left: Vec<ValueSet> = self
            .pins
            .iter()
            .map(|&(a, _)| ValueSet::singleton(self.lhs.len(), a))
            .collect();
        let right: Vec<ValueSet> = self
            .pins
            .iter()
            .map(|&(_, b)| ValueSet::singleton(self.rhs.len(), b))
            .collect();
        Ok((expand(&self.lhs, &left)?, expand(&self.rhs, &right)?))
    }

    /// Whether `h` respects every pin.
    pub fn respects_pins(&self, h: &Assignment) -> bool {
        self.pins.iter().all(|&(a, b)| h.get(a) == b)
    }
}
