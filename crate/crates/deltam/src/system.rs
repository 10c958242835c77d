use std::fmt;

use crate::error::{Error, Result};
use crate::mask::SubsetMask;

/// A set system: a ground set `{1, ..., n}` together with a nonempty
/// family of feasible subsets.
///
/// The family is stored as a membership bitmap indexed by subset mask, so
/// membership tests, twists and slides are cheap bit operations. Ground
/// sets are capped at 16 elements, which keeps the bitmap at 8 KiB.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetSystem {
    n: u8,
    family: Vec<u64>,
}

/// Witness that the symmetric exchange axiom fails: a feasible pair
/// `(f1, f2)` and an element `x` of their symmetric difference for which
/// no exchange partner `y` exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    pub f1: SubsetMask,
    pub f2: SubsetMask,
    pub x: u8,
}

impl SetSystem {
    /// Largest supported ground set.
    pub const MAX_GROUND: u8 = 16;

    /// Builds a set system from explicit members. Duplicates collapse.
    pub fn new(n: u8, members: impl IntoIterator<Item = SubsetMask>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGroundSet);
        }
        if n > Self::MAX_GROUND {
            return Err(Error::GroundSetTooLarge {
                n,
                cap: Self::MAX_GROUND,
            });
        }
        let mut family = vec![0u64; family_words(n)];
        let mut any = false;
        for m in members {
            if let Some(element) = m.first_outside(n) {
                return Err(Error::OutOfRange { element, n });
            }
            set_bit(&mut family, m.bits());
            any = true;
        }
        if !any {
            return Err(Error::EmptyFamily);
        }
        Ok(SetSystem { n, family })
    }

    /// Convenience constructor from element lists, e.g.
    /// `SetSystem::from_subsets(3, &[&[], &[1, 2]])`.
    pub fn from_subsets(n: u8, subsets: &[&[u8]]) -> Result<Self> {
        Self::new(n, subsets.iter().map(|s| SubsetMask::from_elements(s)))
    }

    /// Builds a system directly from its family bitmap. Only ground sets
    /// with at most 6 elements fit in a single word.
    pub fn from_family_bits(n: u8, bits: u64) -> Result<Self> {
        assert!(n <= 6, "family bitmap exceeds one word");
        if n == 0 {
            return Err(Error::EmptyGroundSet);
        }
        let width = 1u32 << n;
        let valid = if width == 64 { u64::MAX } else { (1u64 << width) - 1 };
        if bits & !valid != 0 {
            let element = (63 - (bits & !valid).leading_zeros()) as u16;
            return Err(Error::OutOfRange {
                element: SubsetMask::from_bits(element).first_outside(n).unwrap_or(n + 1),
                n,
            });
        }
        if bits == 0 {
            return Err(Error::EmptyFamily);
        }
        Ok(SetSystem {
            n,
            family: vec![bits],
        })
    }

    /// The family bitmap as a single word. Panics above 6 elements.
    pub fn family_bits(&self) -> u64 {
        assert!(self.n <= 6, "family bitmap exceeds one word");
        self.family[0]
    }

    pub(crate) fn from_raw(n: u8, family: Vec<u64>) -> Self {
        debug_assert!(family.iter().any(|w| *w != 0));
        debug_assert_eq!(family.len(), family_words(n));
        SetSystem { n, family }
    }

    pub(crate) fn blank_family(&self) -> Vec<u64> {
        vec![0u64; self.family.len()]
    }

    pub(crate) fn family_clone(&self) -> Vec<u64> {
        self.family.clone()
    }

    #[inline]
    pub fn ground_size(&self) -> u8 {
        self.n
    }

    /// Number of feasible sets.
    pub fn len(&self) -> usize {
        self.family.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        false // nonempty by construction
    }

    #[inline]
    pub fn contains(&self, m: SubsetMask) -> bool {
        let i = m.bits() as usize;
        self.family[i >> 6] >> (i & 63) & 1 == 1
    }

    /// Feasible sets in ascending mask order.
    pub fn members(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        self.family.iter().enumerate().flat_map(|(w, &word)| {
            BitIter(word).map(move |b| SubsetMask::from_bits((w as u16) << 6 | b))
        })
    }

    /// Brute-force check of the symmetric exchange axiom: for every
    /// ordered feasible pair `(f1, f2)` and every `x` in `f1 xor f2`,
    /// some `y` in `f1 xor f2` (possibly `y = x`) has `f1 xor {x,y}`
    /// feasible. Returns the smallest failing `(f1, f2, x)` in mask
    /// order, or `None` when the system is a delta-matroid.
    pub fn axiom_violation(&self) -> Option<AxiomViolation> {
        let members: Vec<SubsetMask> = self.members().collect();
        for &f1 in &members {
            for &f2 in &members {
                let delta = f1 ^ f2;
                if delta.is_empty() {
                    continue;
                }
                'next_x: for x in delta.elements() {
                    for y in delta.elements() {
                        let moved = if x == y {
                            f1.toggled(x)
                        } else {
                            f1.toggled(x).toggled(y)
                        };
                        if self.contains(moved) {
                            continue 'next_x;
                        }
                    }
                    return Some(AxiomViolation { f1, f2, x });
                }
            }
        }
        None
    }

    pub fn is_delta_matroid(&self) -> bool {
        self.axiom_violation().is_none()
    }

    /// Membership bitmap equality; same ground set, same family.
    pub fn family_equal(&self, other: &SetSystem) -> bool {
        self == other
    }
}

impl AxiomViolation {
    /// Replays the witness against a system: both sets feasible, `x` in
    /// their symmetric difference, and no `y` rescues the exchange.
    pub fn verify(&self, system: &SetSystem) -> bool {
        let delta = self.f1 ^ self.f2;
        if !system.contains(self.f1) || !system.contains(self.f2) || !delta.contains(self.x) {
            return false;
        }
        delta.elements().all(|y| {
            let moved = if self.x == y {
                self.f1.toggled(self.x)
            } else {
                self.f1.toggled(self.x).toggled(y)
            };
            !system.contains(moved)
        })
    }
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F1={} F2={} x={}", self.f1, self.f2, self.x)
    }
}

impl fmt::Display for SetSystem {
    /// One-line form: members in ascending mask order joined by `;`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.members().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetSystem(n={}, {})", self.n, self)
    }
}

pub(crate) fn family_words(n: u8) -> usize {
    let width = 1usize << n;
    width.div_ceil(64)
}

pub(crate) fn set_bit(words: &mut [u64], index: u16) {
    words[(index >> 6) as usize] |= 1u64 << (index & 63);
}

pub(crate) fn toggle_bit(words: &mut [u64], index: u16) {
    words[(index >> 6) as usize] ^= 1u64 << (index & 63);
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = u16;

    fn next(&mut self) -> Option<u16> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros() as u16;
        self.0 &= self.0 - 1;
        Some(b)
    }
}
