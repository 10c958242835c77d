//! Twists, duals, handle slides, elementary minors and slide sequences.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::mask::SubsetMask;
use crate::system::{set_bit, toggle_bit, SetSystem};

/// One handle slide, taking `a` over `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SlideInstruction {
    pub a: u8,
    pub b: u8,
}

impl SlideInstruction {
    pub fn new(a: u8, b: u8) -> Self {
        SlideInstruction { a, b }
    }
}

impl fmt::Display for SlideInstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.a, self.b)
    }
}

/// The outcome of applying a slide sequence: the final system and its
/// axiom verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlideWitness {
    pub sequence: Vec<SlideInstruction>,
    pub result: SetSystem,
    pub is_delta_matroid: bool,
}

/// Elementary minor operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MinorOp {
    Delete,
    Contract,
}

impl fmt::Display for MinorOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinorOp::Delete => write!(f, "delete"),
            MinorOp::Contract => write!(f, "contract"),
        }
    }
}

/// One step of a minor derivation. `element` is the label in the
/// *original* ground set, before any renumbering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MinorStep {
    pub op: MinorOp,
    pub element: u8,
}

impl fmt::Display for MinorStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.op, self.element)
    }
}

/// A minor together with one witnessing derivation from the source.
#[derive(Clone, Debug)]
pub struct Minor {
    pub system: SetSystem,
    pub trace: Vec<MinorStep>,
}

impl SetSystem {
    fn check_element(&self, e: u8) -> Result<()> {
        if e == 0 || e > self.ground_size() {
            return Err(Error::OutOfRange {
                element: e,
                n: self.ground_size(),
            });
        }
        Ok(())
    }

    /// Twist: replace every feasible `X` by `X xor set`.
    pub fn twist(&self, set: SubsetMask) -> Result<SetSystem> {
        let n = self.ground_size();
        if let Some(element) = set.first_outside(n) {
            return Err(Error::OutOfRange { element, n });
        }
        let mut family = self.blank_family();
        for m in self.members() {
            set_bit(&mut family, (m ^ set).bits());
        }
        Ok(SetSystem::from_raw(n, family))
    }

    /// Dual: twist by the full ground set.
    pub fn dual(&self) -> SetSystem {
        self.twist(SubsetMask::full(self.ground_size()))
            .expect("full ground set is always in range")
    }

    /// Handle slide taking `a` over `b`: toggle every `X + {a}` whose
    /// companion `X + {b}` is feasible, for `X` avoiding both `a` and `b`.
    pub fn handle_slide(&self, a: u8, b: u8) -> Result<SetSystem> {
        self.check_element(a)?;
        self.check_element(b)?;
        if a == b {
            return Err(Error::SameElement { element: a });
        }
        let rest = SubsetMask::full(self.ground_size()).without(a).without(b);
        let mut family = self.family_clone();
        // enumerate submasks of `rest` via the (x - rest) & rest walk
        let rest_bits = rest.bits();
        let mut x: u16 = 0;
        loop {
            let xm = SubsetMask::from_bits(x);
            if self.contains(xm.with(b)) {
                toggle_bit(&mut family, xm.with(a).bits());
            }
            if x == rest_bits {
                break;
            }
            x = x.wrapping_sub(rest_bits) & rest_bits;
        }
        // a slide never empties the family: if it did, the family would
        // equal the toggle set, whose generators all omit a
        Ok(SetSystem::from_raw(self.ground_size(), family))
    }

    /// Deletion: feasible sets avoiding `e`, on the ground set with `e`
    /// removed and higher labels shifted down.
    pub fn delete(&self, e: u8) -> Result<SetSystem> {
        self.minor(MinorOp::Delete, e)
    }

    /// Contraction: feasible sets containing `e`, with `e` removed.
    pub fn contract(&self, e: u8) -> Result<SetSystem> {
        self.minor(MinorOp::Contract, e)
    }

    fn minor(&self, op: MinorOp, e: u8) -> Result<SetSystem> {
        self.check_element(e)?;
        let n = self.ground_size();
        if n == 1 {
            return Err(Error::EmptyGroundSet);
        }
        let keep_if_contains = matches!(op, MinorOp::Contract);
        let low = SubsetMask::singleton(e).bits() - 1;
        let mut family = vec![0u64; crate::system::family_words(n - 1)];
        let mut any = false;
        for m in self.members() {
            if m.contains(e) != keep_if_contains {
                continue;
            }
            let bits = m.without(e).bits();
            let squeezed = (bits & low) | (bits >> 1 & !low);
            set_bit(&mut family, squeezed);
            any = true;
        }
        if !any {
            return Err(Error::WouldBeEmpty { op, element: e });
        }
        Ok(SetSystem::from_raw(n - 1, family))
    }

    /// All distinct minors reachable by deletions and contractions,
    /// including the system itself. Breadth-first, so each trace is a
    /// shortest derivation; duplicates (same ground size, same family)
    /// keep their first trace.
    pub fn minors(&self) -> Vec<Minor> {
        let mut seen: HashSet<SetSystem> = HashSet::new();
        let mut queue: VecDeque<(SetSystem, Vec<MinorStep>, Vec<u8>)> = VecDeque::new();
        let labels: Vec<u8> = (1..=self.ground_size()).collect();
        queue.push_back((self.clone(), Vec::new(), labels));
        let mut out = Vec::new();
        while let Some((sys, trace, labels)) = queue.pop_front() {
            if !seen.insert(sys.clone()) {
                continue;
            }
            let n = sys.ground_size();
            if n > 1 {
                for e in 1..=n {
                    for op in [MinorOp::Delete, MinorOp::Contract] {
                        let next = match op {
                            MinorOp::Delete => sys.delete(e),
                            MinorOp::Contract => sys.contract(e),
                        };
                        if let Ok(next) = next {
                            let mut next_trace = trace.clone();
                            next_trace.push(MinorStep {
                                op,
                                element: labels[(e - 1) as usize],
                            });
                            let mut next_labels = labels.clone();
                            next_labels.remove((e - 1) as usize);
                            queue.push_back((next, next_trace, next_labels));
                        }
                    }
                }
            }
            out.push(Minor { system: sys, trace });
        }
        out
    }

    /// Replays a minor derivation whose steps use original labels.
    pub fn apply_minor_trace(&self, trace: &[MinorStep]) -> Result<SetSystem> {
        let mut labels: Vec<u8> = (1..=self.ground_size()).collect();
        let mut sys = self.clone();
        for step in trace {
            let pos = labels
                .iter()
                .position(|&l| l == step.element)
                .ok_or(Error::OutOfRange {
                    element: step.element,
                    n: sys.ground_size(),
                })?;
            let e = pos as u8 + 1;
            sys = match step.op {
                MinorOp::Delete => sys.delete(e)?,
                MinorOp::Contract => sys.contract(e)?,
            };
            labels.remove(pos);
        }
        Ok(sys)
    }

    /// Folds [`SetSystem::handle_slide`] over a sequence and records the
    /// final axiom verdict.
    pub fn apply_sequence(&self, sequence: &[SlideInstruction]) -> Result<SlideWitness> {
        let mut sys = self.clone();
        for ins in sequence {
            sys = sys.handle_slide(ins.a, ins.b)?;
        }
        let is_dm = sys.is_delta_matroid();
        Ok(SlideWitness {
            sequence: sequence.to_vec(),
            result: sys,
            is_delta_matroid: is_dm,
        })
    }
}

impl SlideWitness {
    /// Re-executes the recorded sequence from `source` and checks both
    /// stored fields.
    pub fn verify(&self, source: &SetSystem) -> bool {
        match source.apply_sequence(&self.sequence) {
            Ok(w) => w.result == self.result && w.is_delta_matroid == self.is_delta_matroid,
            Err(_) => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binary::ExcludedMinor;
    use crate::golden::pendant_triangle_family;

    fn sys(n: u8, subsets: &[&[u8]]) -> SetSystem {
        SetSystem::from_subsets(n, subsets).unwrap()
    }

    fn mask(elements: &[u8]) -> SubsetMask {
        SubsetMask::from_elements(elements)
    }

    #[test]
    fn twist_s2_by_one() {
        let s2 = ExcludedMinor::S2.system();
        let expect = sys(3, &[&[], &[1], &[2], &[3], &[1, 2], &[1, 3], &[1, 2, 3]]);
        assert_eq!(s2.twist(mask(&[1])).unwrap(), expect);
    }

    #[test]
    fn twist_by_empty_set_is_identity() {
        let s = pendant_triangle_family();
        assert_eq!(s.twist(SubsetMask::EMPTY).unwrap(), s);
    }

    #[test]
    fn twist_rejects_out_of_range() {
        let s = sys(2, &[&[1]]);
        assert_eq!(
            s.twist(mask(&[3])),
            Err(Error::OutOfRange { element: 3, n: 2 })
        );
    }

    #[test]
    fn dual_examples() {
        assert_eq!(sys(2, &[&[]]).dual(), sys(2, &[&[1, 2]]));
        let s4 = ExcludedMinor::S4.system();
        let expect = sys(
            4,
            &[
                &[1, 2],
                &[1, 3],
                &[1, 4],
                &[2, 3],
                &[2, 4],
                &[3, 4],
                &[1, 2, 3, 4],
            ],
        );
        assert_eq!(s4.dual(), expect);
    }

    #[test]
    fn worked_slides_on_the_pendant_triangle() {
        let f = pendant_triangle_family();
        // sliding 2 over 1 leaves the family unchanged
        assert_eq!(f.handle_slide(2, 1).unwrap(), f);
        // sliding 2 over 3 toggles {2,4}
        let f23 = sys(4, &[&[], &[1, 2], &[2, 3], &[3, 4], &[1, 2, 3, 4]]);
        assert_eq!(f.handle_slide(2, 3).unwrap(), f23);
    }

    #[test]
    fn slide_of_s1_taking_1_over_2() {
        let s1 = ExcludedMinor::S1.system();
        let expect = sys(3, &[&[], &[1, 2], &[2, 3], &[1, 2, 3]]);
        assert_eq!(s1.handle_slide(1, 2).unwrap(), expect);
    }

    #[test]
    fn slide_with_empty_toggle_set_is_identity() {
        // no member contains 2 away from 1, so sliding 1 over 2 is a no-op
        let s = sys(3, &[&[1], &[1, 2]]);
        assert_eq!(s.handle_slide(1, 2).unwrap(), s);
    }

    #[test]
    fn slide_rejects_bad_endpoints() {
        let s = sys(3, &[&[1]]);
        assert_eq!(
            s.handle_slide(2, 2),
            Err(Error::SameElement { element: 2 })
        );
        assert_eq!(
            s.handle_slide(0, 1),
            Err(Error::OutOfRange { element: 0, n: 3 })
        );
        assert_eq!(
            s.handle_slide(1, 4),
            Err(Error::OutOfRange { element: 4, n: 3 })
        );
    }

    #[test]
    fn delete_and_contract_s1_along_3() {
        let s1 = ExcludedMinor::S1.system();
        assert_eq!(s1.delete(3).unwrap(), sys(2, &[&[], &[1, 2]]));
        assert_eq!(s1.contract(3).unwrap(), sys(2, &[&[1], &[2], &[1, 2]]));
    }

    #[test]
    fn minors_of_the_pendant_triangle_along_1() {
        let f = pendant_triangle_family();
        // deletion keeps {}, {2,3}, {2,4}, {3,4}; labels shift down by one
        assert_eq!(
            f.delete(1).unwrap(),
            sys(3, &[&[], &[1, 2], &[1, 3], &[2, 3]])
        );
        // contraction keeps {1,2} and {1,2,3,4} minus the element
        assert_eq!(f.contract(1).unwrap(), sys(3, &[&[1], &[1, 2, 3]]));
    }

    #[test]
    fn minor_errors() {
        let s = sys(2, &[&[1], &[1, 2]]);
        assert_eq!(
            s.delete(1),
            Err(Error::WouldBeEmpty {
                op: MinorOp::Delete,
                element: 1
            })
        );
        let t = sys(2, &[&[]]);
        assert_eq!(
            t.contract(2),
            Err(Error::WouldBeEmpty {
                op: MinorOp::Contract,
                element: 2
            })
        );
        // a one-element ground set admits no elementary minor
        let u = sys(1, &[&[]]);
        assert_eq!(u.delete(1), Err(Error::EmptyGroundSet));
        assert_eq!(u.contract(1), Err(Error::EmptyGroundSet));
    }

    #[test]
    fn contract_full_single_member_family() {
        let s = sys(3, &[&[1, 2, 3]]);
        assert_eq!(s.contract(2).unwrap(), sys(2, &[&[1, 2]]));
    }

    #[test]
    fn minors_include_self_and_elementary_minors() {
        let s1 = ExcludedMinor::S1.system();
        let minors = s1.minors();
        assert!(minors[0].trace.is_empty());
        assert_eq!(minors[0].system, s1);
        let del3 = s1.delete(3).unwrap();
        let con3 = s1.contract(3).unwrap();
        assert!(minors.iter().any(|m| m.system == del3));
        assert!(minors.iter().any(|m| m.system == con3));
        // every trace replays to its system
        for m in &minors {
            assert_eq!(s1.apply_minor_trace(&m.trace).unwrap(), m.system);
        }
    }

    #[test]
    fn minors_of_one_element_system_is_just_itself() {
        let s = sys(1, &[&[], &[1]]);
        let minors = s.minors();
        assert_eq!(minors.len(), 1);
        assert_eq!(minors[0].system, s);
    }

    #[test]
    fn minors_of_delta_matroids_stay_delta_matroids() {
        for m in ExcludedMinor::ALL {
            let s = m.system();
            assert!(s.is_delta_matroid());
            for minor in s.minors() {
                assert!(minor.system.is_delta_matroid(), "{m:?} / {:?}", minor.trace);
            }
        }
    }

    #[test]
    fn sequence_examples() {
        let s2 = ExcludedMinor::S2.system();
        let start = s2.twist(mask(&[1, 3])).unwrap();
        let w = start
            .apply_sequence(&[SlideInstruction::new(2, 3), SlideInstruction::new(1, 2)])
            .unwrap();
        assert_eq!(
            w.result,
            sys(3, &[&[], &[2], &[3], &[2, 3], &[1, 2, 3]])
        );
        assert!(!w.is_delta_matroid);
        assert!(w.verify(&start));

        let s5 = ExcludedMinor::S5.system();
        let w = s5.apply_sequence(&[SlideInstruction::new(1, 3)]).unwrap();
        assert_eq!(
            w.result,
            sys(4, &[&[], &[2, 3], &[3, 4], &[1, 2, 3, 4]])
        );
        assert!(!w.is_delta_matroid);

        let empty = s5.apply_sequence(&[]).unwrap();
        assert_eq!(empty.result, s5);
        assert!(empty.is_delta_matroid);
    }
}
