//! Relabelings, isomorphism testing and canonical forms.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::mask::SubsetMask;
use crate::system::SetSystem;

/// A permutation of the ground-set labels `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeling {
    images: Vec<u8>,
}

impl Relabeling {
    pub fn identity(n: u8) -> Self {
        Relabeling {
            images: (1..=n).collect(),
        }
    }

    /// `images[i]` is the image of element `i + 1`; must be a bijection.
    pub fn new(images: Vec<u8>) -> Result<Self> {
        let n = images.len() as u8;
        let mut seen = SubsetMask::EMPTY;
        for &v in &images {
            if v == 0 || v > n || seen.contains(v) {
                return Err(Error::InvalidPermutation { n });
            }
            seen = seen.with(v);
        }
        Ok(Relabeling { images })
    }

    pub fn size(&self) -> u8 {
        self.images.len() as u8
    }

    pub fn image(&self, e: u8) -> u8 {
        self.images[(e - 1) as usize]
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn apply(&self, m: SubsetMask) -> SubsetMask {
        m.elements()
            .fold(SubsetMask::EMPTY, |acc, e| acc.with(self.image(e)))
    }

    pub fn inverse(&self) -> Relabeling {
        let mut images = vec![0u8; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[(v - 1) as usize] = i as u8 + 1;
        }
        Relabeling { images }
    }
}

impl fmt::Display for Relabeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Per-element feasible-set occurrence counts; invariant under slides of
/// nothing, but preserved by any isomorphism.
fn occurrence_counts(s: &SetSystem) -> Vec<u32> {
    let n = s.ground_size();
    let mut counts = vec![0u32; n as usize];
    for m in s.members() {
        for e in m.elements() {
            counts[(e - 1) as usize] += 1;
        }
    }
    counts
}

fn size_histogram(s: &SetSystem) -> [u32; 17] {
    let mut h = [0u32; 17];
    for m in s.members() {
        h[m.len() as usize] += 1;
    }
    h
}

impl SetSystem {
    /// Applies a relabeling to every feasible set.
    pub fn apply_relabeling(&self, p: &Relabeling) -> Result<SetSystem> {
        if p.size() != self.ground_size() {
            return Err(Error::SizeMismatch {
                expected: self.ground_size(),
                got: p.size(),
            });
        }
        SetSystem::new(self.ground_size(), self.members().map(|m| p.apply(m)))
    }

    /// Searches for a relabeling carrying `self` onto `other` and returns
    /// the lexicographically least witness. Cheap invariants (family
    /// size, member-size histogram, occurrence multiset) prune before the
    /// permutation scan; within the scan, images must preserve
    /// per-element occurrence counts.
    pub fn isomorphism_to(&self, other: &SetSystem) -> Option<Relabeling> {
        let n = self.ground_size();
        if n != other.ground_size() || self.len() != other.len() {
            return None;
        }
        if size_histogram(self) != size_histogram(other) {
            return None;
        }
        let occ_a = occurrence_counts(self);
        let occ_b = occurrence_counts(other);
        let mut sorted_a = occ_a.clone();
        let mut sorted_b = occ_b.clone();
        sorted_a.sort_unstable();
        sorted_b.sort_unstable();
        if sorted_a != sorted_b {
            return None;
        }
        let members: Vec<SubsetMask> = self.members().collect();
        'perms: for images in (1..=n).permutations(n as usize) {
            for (i, &v) in images.iter().enumerate() {
                if occ_a[i] != occ_b[(v - 1) as usize] {
                    continue 'perms;
                }
            }
            let p = Relabeling {
                images: images.clone(),
            };
            if members.iter().all(|&m| other.contains(p.apply(m))) {
                return Some(p);
            }
        }
        None
    }

    /// Canonical representative of the isomorphism class: the relabeling
    /// minimizing the sorted list of member masks. Two systems share a
    /// canonical form exactly when they are isomorphic.
    pub fn canonical_form(&self) -> Result<SetSystem> {
        let n = self.ground_size();
        if n > 8 {
            return Err(Error::GroundSetTooLarge { n, cap: 8 });
        }
        let members: Vec<SubsetMask> = self.members().collect();
        let mut best: Option<Vec<u16>> = None;
        for images in (1..=n).permutations(n as usize) {
            let p = Relabeling { images };
            let mut mapped: Vec<u16> = members.iter().map(|&m| p.apply(m).bits()).collect();
            mapped.sort_unstable();
            if best.as_ref().is_none_or(|b| mapped < *b) {
                best = Some(mapped);
            }
        }
        SetSystem::new(
            n,
            best.unwrap().into_iter().map(SubsetMask::from_bits),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binary::ExcludedMinor;

    fn sys(n: u8, subsets: &[&[u8]]) -> SetSystem {
        SetSystem::from_subsets(n, subsets).unwrap()
    }

    /// Unpruned reference search over all n! permutations.
    fn brute_isomorphism(a: &SetSystem, b: &SetSystem) -> Option<Relabeling> {
        if a.ground_size() != b.ground_size() {
            return None;
        }
        let n = a.ground_size();
        for images in (1..=n).permutations(n as usize) {
            let p = Relabeling::new(images).unwrap();
            if a.apply_relabeling(&p).unwrap() == *b {
                return Some(p);
            }
        }
        None
    }

    #[test]
    fn identity_relabeling_fixes_everything() {
        let s3 = ExcludedMinor::S3.system();
        let id = Relabeling::identity(3);
        assert_eq!(s3.apply_relabeling(&id).unwrap(), s3);
    }

    #[test]
    fn relabeling_validation() {
        assert!(Relabeling::new(vec![2, 1, 3]).is_ok());
        assert_eq!(
            Relabeling::new(vec![1, 1, 3]),
            Err(Error::InvalidPermutation { n: 3 })
        );
        assert_eq!(
            Relabeling::new(vec![1, 4, 2]),
            Err(Error::InvalidPermutation { n: 3 })
        );
        let s = sys(2, &[&[1]]);
        assert_eq!(
            s.apply_relabeling(&Relabeling::identity(3)),
            Err(Error::SizeMismatch { expected: 2, got: 3 })
        );
    }

    #[test]
    fn s1_is_symmetric_under_every_permutation() {
        let s1 = ExcludedMinor::S1.system();
        for images in (1..=3u8).permutations(3) {
            let p = Relabeling::new(images).unwrap();
            assert_eq!(s1.apply_relabeling(&p).unwrap(), s1);
        }
    }

    #[test]
    fn s3_is_symmetric_in_2_and_3() {
        let s3 = ExcludedMinor::S3.system();
        let swap = Relabeling::new(vec![1, 3, 2]).unwrap();
        assert_eq!(s3.apply_relabeling(&swap).unwrap(), s3);
    }

    #[test]
    fn isomorphism_finds_least_witness() {
        let s1 = ExcludedMinor::S1.system();
        assert_eq!(
            s1.isomorphism_to(&s1).unwrap(),
            Relabeling::identity(3)
        );
        let s2 = ExcludedMinor::S2.system();
        assert!(s1.isomorphism_to(&s2).is_none());
    }

    #[test]
    fn twisted_s3_matches_its_own_swap() {
        let s3 = ExcludedMinor::S3.system();
        let t = s3.twist(SubsetMask::from_elements(&[2, 3])).unwrap();
        let swap = Relabeling::new(vec![1, 3, 2]).unwrap();
        let other = t.apply_relabeling(&swap).unwrap();
        assert!(t.isomorphism_to(&other).is_some());
    }

    #[test]
    fn pruned_search_agrees_with_brute_force() {
        // all nonempty families on 3 elements, against a few fixed targets
        let targets = [
            ExcludedMinor::S1.system(),
            ExcludedMinor::S2.system(),
            ExcludedMinor::S3.system(),
            sys(3, &[&[1], &[2, 3]]),
        ];
        for bits in 1u64..256 {
            let s = SetSystem::from_family_bits(3, bits).unwrap();
            for t in &targets {
                assert_eq!(
                    s.isomorphism_to(t).is_some(),
                    brute_isomorphism(&s, t).is_some(),
                    "bits={bits}"
                );
                if let Some(p) = s.isomorphism_to(t) {
                    assert_eq!(s.apply_relabeling(&p).unwrap(), *t);
                    // least witness: brute force scans in the same order
                    assert_eq!(p, brute_isomorphism(&s, t).unwrap());
                }
            }
        }
    }

    #[test]
    fn canonical_form_properties() {
        let s4 = ExcludedMinor::S4.system();
        let c = s4.canonical_form().unwrap();
        assert_eq!(c, s4); // fully symmetric family is its own canonical form
        assert_eq!(c.canonical_form().unwrap(), c); // idempotent

        let s5 = ExcludedMinor::S5.system();
        let p = Relabeling::new(vec![3, 1, 4, 2]).unwrap();
        let q = Relabeling::new(vec![2, 4, 1, 3]).unwrap();
        let a = s5.apply_relabeling(&p).unwrap();
        let b = s5.apply_relabeling(&q).unwrap();
        assert_eq!(a.canonical_form().unwrap(), b.canonical_form().unwrap());
        assert_eq!(a.canonical_form().unwrap(), s5.canonical_form().unwrap());
    }

    #[test]
    fn canonical_form_respects_cap() {
        let s = sys(9, &[&[1], &[9]]);
        assert_eq!(
            s.canonical_form(),
            Err(Error::GroundSetTooLarge { n: 9, cap: 8 })
        );
    }

    #[test]
    fn canonical_forms_coincide_exactly_for_isomorphic_systems() {
        // exhaustive over all nonempty families on 2 elements plus a
        // sample on 3, canonical equality must match isomorphism
        let mut systems = Vec::new();
        for bits in 1u64..16 {
            systems.push(SetSystem::from_family_bits(2, bits).unwrap());
        }
        for (i, a) in systems.iter().enumerate() {
            for b in &systems[i..] {
                assert_eq!(
                    a.canonical_form().unwrap() == b.canonical_form().unwrap(),
                    a.isomorphism_to(b).is_some()
                );
            }
        }
    }
}
