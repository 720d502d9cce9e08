use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{LtsDesign, StateId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    /// States not reachable from the initial state along directed transitions.
    pub unreachable_states: BTreeSet<StateId>,
    /// Number of transitions that exactly repeat an earlier (source, label, target).
    pub duplicate_transitions: usize,
    /// No state has two outgoing transitions with the same label to different targets.
    pub is_deterministic: bool,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.unreachable_states.is_empty() && self.duplicate_transitions == 0
    }
}

pub fn validate(design: &LtsDesign) -> ValidationReport {
    let n = design.num_states();
    let mut unreachable_states = BTreeSet::new();
    if n > 0 {
        let succ = design.successor_sets();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([design.initial()]);
        seen[design.initial()] = true;
        while let Some(s) = queue.pop_front() {
            for &t in &succ[s] {
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        unreachable_states.extend((0..n).filter(|&s| !seen[s]));
    }

    let mut distinct = HashSet::with_capacity(design.num_transitions());
    let mut duplicate_transitions = 0;
    let mut by_label: HashSet<(StateId, &str)> = HashSet::new();
    let mut is_deterministic = true;
    for t in design.transitions() {
        if !distinct.insert((t.source, t.label.as_str(), t.target)) {
            duplicate_transitions += 1;
            continue;
        }
        if !by_label.insert((t.source, t.label.as_str())) {
            is_deterministic = false;
        }
    }

    ValidationReport {
        unreachable_states,
        duplicate_transitions,
        is_deterministic,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lts::{parse_aut, Transition};

    #[test]
    fn chain_is_clean_and_deterministic() {
        let d = LtsDesign::from_edges("chain", 3, &[(0, 1), (1, 2)]).unwrap();
        let r = validate(&d);
        assert!(r.unreachable_states.is_empty());
        assert!(r.is_deterministic);
        assert_eq!(r.duplicate_transitions, 0);
    }

    #[test]
    fn isolated_state_is_unreachable() {
        let d = LtsDesign::from_edges("iso", 3, &[(0, 1)]).unwrap();
        assert_eq!(validate(&d).unreachable_states, BTreeSet::from([2]));
    }

    #[test]
    fn same_label_to_two_targets_is_nondeterministic() {
        let d = LtsDesign::new(
            "nd",
            3,
            0,
            vec![Transition::new(0, "a", 1), Transition::new(0, "a", 2)],
        )
        .unwrap();
        assert!(!validate(&d).is_deterministic);
    }

    #[test]
    fn duplicates_are_counted_not_removed() {
        let d = parse_aut("des (0, 3, 3)\n(0,\"x\",1)\n(0,\"x\",1)\n(2,\"y\",0)").unwrap();
        assert_eq!(d.num_transitions(), 3);
        let r = validate(&d);
        assert_eq!(r.duplicate_transitions, 1);
        assert_eq!(r.unreachable_states, BTreeSet::from([2]));
        assert!(r.is_deterministic);
        assert!(!r.is_clean());
    }

    #[test]
    fn initial_state_is_never_unreachable() {
        let d = LtsDesign::new("x", 3, 2, vec![Transition::new(0, "a", 1)]).unwrap();
        let r = validate(&d);
        assert!(!r.unreachable_states.contains(&2));
        assert_eq!(r.unreachable_states, BTreeSet::from([0, 1]));
    }
}
