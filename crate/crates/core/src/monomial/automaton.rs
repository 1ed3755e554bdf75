use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use super::MonomialError;
use crate::quiver::{Arrow, Quiver, Vertex};

pub type StateSet = BTreeSet<usize>;

/// Nondeterministic automaton over arrows. A nonempty arrow word, read in
/// traversal order, belongs to the language when some run from an initial
/// state ends in an accepting state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathAutomaton {
    states: Vec<String>,
    initial: StateSet,
    accepting: StateSet,
    /// Sorted and deduplicated.
    transitions: Vec<(usize, Arrow, usize)>,
}

impl PathAutomaton {
    /// Resolves names against `q`. `initial = None` makes every state initial.
    pub fn new<S: AsRef<str>>(
        q: &Quiver,
        states: &[S],
        initial: Option<&[S]>,
        accepting: &[S],
        transitions: &[(S, S, S)],
    ) -> Result<Self, MonomialError> {
        let mut index: BTreeMap<&str, usize> = BTreeMap::new();
        for (i, s) in states.iter().enumerate() {
            if index.insert(s.as_ref(), i).is_some() {
                return Err(MonomialError::DuplicateState(s.as_ref().to_string()));
            }
        }
        let lookup = |s: &S| {
            index.get(s.as_ref()).copied().ok_or_else(|| MonomialError::UnknownState(s.as_ref().to_string()))
        };
        let initial = match initial {
            Some(list) => list.iter().map(lookup).collect::<Result<_, _>>()?,
            None => (0..states.len()).collect(),
        };
        let accepting = accepting.iter().map(lookup).collect::<Result<_, _>>()?;
        let mut trans = Vec::with_capacity(transitions.len());
        for (from, arrow, to) in transitions {
            let a = q
                .arrow_by_id(arrow.as_ref())
                .ok_or_else(|| MonomialError::InvalidWord(format!("unknown arrow {}", arrow.as_ref())))?;
            trans.push((lookup(from)?, a, lookup(to)?));
        }
        Ok(PathAutomaton::from_parts(
            states.iter().map(|s| s.as_ref().to_string()).collect(),
            initial,
            accepting,
            trans,
        ))
    }

    pub(crate) fn from_parts(
        states: Vec<String>,
        initial: StateSet,
        accepting: StateSet,
        mut transitions: Vec<(usize, Arrow, usize)>,
    ) -> Self {
        transitions.sort();
        transitions.dedup();
        PathAutomaton { states, initial, accepting, transitions }
    }

    /// Accepts every nonempty path of `q`: one state per vertex touched by
    /// an arrow.
    pub fn full(q: &Quiver) -> Self {
        let used: BTreeSet<Vertex> = q.arrows().flat_map(|a| [q.source(a), q.target(a)]).collect();
        let pos: BTreeMap<Vertex, usize> = used.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let states = used.iter().map(|v| q.vertex_name(*v).to_string()).collect();
        let all: StateSet = (0..used.len()).collect();
        let trans = q.arrows().map(|a| (pos[&q.source(a)], a, pos[&q.target(a)])).collect();
        PathAutomaton::from_parts(states, all.clone(), all, trans)
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn initial(&self) -> &StateSet {
        &self.initial
    }

    pub fn accepting(&self) -> &StateSet {
        &self.accepting
    }

    pub fn transitions(&self) -> &[(usize, Arrow, usize)] {
        &self.transitions
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn step(&self, from: &StateSet, a: Arrow) -> StateSet {
        self.transitions
            .iter()
            .filter(|(s, x, _)| *x == a && from.contains(s))
            .map(|(_, _, t)| *t)
            .collect()
    }

    pub fn run(&self, word: &[Arrow]) -> StateSet {
        word.iter().fold(self.initial.clone(), |d, a| self.step(&d, *a))
    }

    pub fn accepts(&self, word: &[Arrow]) -> bool {
        !word.is_empty() && self.run(word).iter().any(|s| self.accepting.contains(s))
    }

    fn labels(&self) -> BTreeSet<Arrow> {
        self.transitions.iter().map(|(_, a, _)| *a).collect()
    }

    /// The vertex each state sits at, or the first state whose incoming
    /// targets and outgoing sources disagree.
    pub fn state_vertices(&self, q: &Quiver) -> Result<Vec<Option<Vertex>>, MonomialError> {
        let mut at: Vec<Option<Vertex>> = vec![None; self.states.len()];
        for &(s, a, t) in &self.transitions {
            for (state, v) in [(s, q.source(a)), (t, q.target(a))] {
                match at[state] {
                    Some(w) if w != v => {
                        return Err(MonomialError::InconsistentState(self.states[state].clone()));
                    }
                    _ => at[state] = Some(v),
                }
            }
        }
        Ok(at)
    }

    fn closure(&self, start: &StateSet, forward: bool) -> StateSet {
        let mut seen = start.clone();
        let mut queue: VecDeque<usize> = start.iter().copied().collect();
        while let Some(x) = queue.pop_front() {
            for &(s, _, t) in &self.transitions {
                let (from, to) = if forward { (s, t) } else { (t, s) };
                if from == x && seen.insert(to) {
                    queue.push_back(to);
                }
            }
        }
        seen
    }

    /// States lying on some nonempty accepted run.
    fn useful(&self) -> StateSet {
        let fwd = self.closure(&self.initial, true);
        let bwd = self.closure(&self.accepting, false);
        self.transitions
            .iter()
            .filter(|(s, _, t)| fwd.contains(s) && bwd.contains(t))
            .flat_map(|(s, _, t)| [*s, *t])
            .collect()
    }

    /// First state that lies on no nonempty accepted run.
    pub fn useless_state(&self) -> Option<&str> {
        let useful = self.useful();
        (0..self.states.len()).find(|s| !useful.contains(s)).map(|s| self.states[s].as_str())
    }

    /// Removes states and transitions that take part in no accepted run.
    pub fn trim(&self) -> PathAutomaton {
        let fwd = self.closure(&self.initial, true);
        let bwd = self.closure(&self.accepting, false);
        let useful = self.useful();
        let renum: BTreeMap<usize, usize> = useful.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let keep = |set: &StateSet| set.iter().filter_map(|s| renum.get(s).copied()).collect::<StateSet>();
        let trans = self
            .transitions
            .iter()
            .filter(|(s, _, t)| fwd.contains(s) && bwd.contains(t))
            .map(|(s, a, t)| (renum[s], *a, renum[t]))
            .collect();
        PathAutomaton::from_parts(
            useful.iter().map(|s| self.states[*s].clone()).collect(),
            keep(&self.initial),
            keep(&self.accepting),
            trans,
        )
    }

    /// Shortest nonempty word (traversal order) that is a prefix of an
    /// accepted word without being accepted. Assumes a trimmed automaton.
    pub fn prefix_counterexample(&self) -> Option<Vec<Arrow>> {
        let labels = self.labels();
        let mut seen: HashSet<StateSet> = HashSet::new();
        let mut queue: VecDeque<(StateSet, Vec<Arrow>)> = VecDeque::new();
        queue.push_back((self.initial.clone(), Vec::new()));
        while let Some((d, word)) = queue.pop_front() {
            for &a in &labels {
                let next = self.step(&d, a);
                if next.is_empty() {
                    continue;
                }
                let mut w = word.clone();
                w.push(a);
                if next.is_disjoint(&self.accepting) {
                    return Some(w);
                }
                if seen.insert(next.clone()) {
                    queue.push_back((next, w));
                }
            }
        }
        None
    }

    /// Shortest nonempty word that is a suffix of an accepted word without
    /// being accepted. Assumes a trimmed automaton.
    pub fn suffix_counterexample(&self) -> Option<Vec<Arrow>> {
        let labels = self.labels();
        let all: StateSet = (0..self.states.len()).collect();
        let mut seen: HashSet<(StateSet, StateSet)> = HashSet::new();
        let mut queue: VecDeque<(StateSet, StateSet, Vec<Arrow>)> = VecDeque::new();
        queue.push_back((all, self.initial.clone(), Vec::new()));
        while let Some((d_any, d_init, word)) = queue.pop_front() {
            for &a in &labels {
                let any = self.step(&d_any, a);
                if any.is_empty() {
                    continue;
                }
                let init = self.step(&d_init, a);
                let mut w = word.clone();
                w.push(a);
                if !any.is_disjoint(&self.accepting) && init.is_disjoint(&self.accepting) {
                    return Some(w);
                }
                if seen.insert((any.clone(), init.clone())) {
                    queue.push_back((any, init, w));
                }
            }
        }
        None
    }

    /// Whether the transition graph has a directed cycle; for a trimmed
    /// automaton this is exactly an infinite language.
    pub fn has_cycle(&self) -> bool {
        let n = self.states.len();
        let mut indeg = vec![0usize; n];
        for &(_, _, t) in &self.transitions {
            indeg[t] += 1;
        }
        let mut queue: Vec<usize> = (0..n).filter(|&s| indeg[s] == 0).collect();
        let mut removed = 0;
        while let Some(s) = queue.pop() {
            removed += 1;
            for &(x, _, t) in &self.transitions {
                if x == s {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        queue.push(t);
                    }
                }
            }
        }
        removed < n
    }

    /// Product with the automaton of words avoiding `factor` (traversal
    /// order, nonempty), trimmed.
    pub fn avoid(&self, factor: &[Arrow]) -> PathAutomaton {
        assert!(!factor.is_empty());
        let m = factor.len();
        let mut fail = vec![0usize; m + 1];
        let mut k = 0;
        for i in 1..m {
            while k > 0 && factor[i] != factor[k] {
                k = fail[k];
            }
            if factor[i] == factor[k] {
                k += 1;
            }
            fail[i + 1] = k;
        }
        let advance = |mut k: usize, a: Arrow| {
            loop {
                if factor[k] == a {
                    return k + 1;
                }
                if k == 0 {
                    return 0;
                }
                k = fail[k];
            }
        };

        let mut ids: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
        let intern = |key: (usize, usize), ids: &mut BTreeMap<(usize, usize), usize>, queue: &mut VecDeque<_>| {
            let next = ids.len();
            *ids.entry(key).or_insert_with(|| {
                queue.push_back(key);
                next
            })
        };
        let initial: StateSet = self.initial.iter().map(|&s| intern((s, 0), &mut ids, &mut queue)).collect();
        let mut trans = Vec::new();
        while let Some((s, k)) = queue.pop_front() {
            let from = ids[&(s, k)];
            for &(x, a, t) in &self.transitions {
                if x != s {
                    continue;
                }
                let k2 = advance(k, a);
                if k2 == m {
                    continue;
                }
                let to = intern((t, k2), &mut ids, &mut queue);
                trans.push((from, a, to));
            }
        }
        let mut order = vec![(0, 0); ids.len()];
        for (key, i) in &ids {
            order[*i] = *key;
        }
        let states = order.iter().map(|(s, k)| format!("{}|{}", self.states[*s], k)).collect();
        let accepting = order
            .iter()
            .enumerate()
            .filter(|(_, (s, _))| self.accepting.contains(s))
            .map(|(i, _)| i)
            .collect();
        PathAutomaton::from_parts(states, initial, accepting, trans).trim()
    }

    /// Keeps only transitions whose arrow satisfies `keep`, trimmed.
    pub fn restrict_arrows(&self, keep: impl Fn(Arrow) -> bool) -> PathAutomaton {
        let trans = self.transitions.iter().filter(|(_, a, _)| keep(*a)).copied().collect();
        PathAutomaton::from_parts(self.states.clone(), self.initial.clone(), self.accepting.clone(), trans).trim()
    }

    /// Renames arrows; transitions on unmapped arrows are dropped.
    pub fn map_arrows(&self, f: &BTreeMap<Arrow, Arrow>) -> PathAutomaton {
        let trans = self
            .transitions
            .iter()
            .filter_map(|(s, a, t)| f.get(a).map(|b| (*s, *b, *t)))
            .collect();
        PathAutomaton::from_parts(self.states.clone(), self.initial.clone(), self.accepting.clone(), trans).trim()
    }
}
