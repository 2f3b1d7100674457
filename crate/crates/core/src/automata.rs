//! Deterministic finite automata with output over the binary alphabet, read
//! most significant digit first, and their extraction from linear
//! representations whose forward orbit is finite.

use std::collections::hash_map::Entry;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linrep::LinearRepresentation;
use crate::linrep::{binary_digits, binary_digits_big, format_rational, parse_rational, Rational};
use crate::words::{Symbol, SymbolStream};

/// Default bound on the number of orbit vectors explored by the semigroup trick.
pub const DEFAULT_STATE_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfao {
    initial: usize,
    delta: Vec<[usize; 2]>,
    outputs: Vec<Rational>,
}

impl Dfao {
    pub fn new(initial: usize, delta: Vec<[usize; 2]>, outputs: Vec<Rational>) -> Result<Self> {
        let n = delta.len();
        if n == 0 || outputs.len() != n || initial >= n {
            return Err(Error::Shape(format!(
                "{n} transition rows, {} outputs, initial state {initial}",
                outputs.len()
            )));
        }
        if let Some(bad) = delta.iter().flatten().find(|&&t| t >= n) {
            return Err(Error::Shape(format!("transition to missing state {bad}")));
        }
        Ok(Dfao {
            initial,
            delta,
            outputs,
        })
    }

    pub fn state_count(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn next(&self, state: usize, digit: u8) -> usize {
        self.delta[state][digit as usize]
    }

    pub fn output(&self, state: usize) -> &Rational {
        &self.outputs[state]
    }

    pub fn run(&self, digits: &[u8]) -> usize {
        digits.iter().fold(self.initial, |q, &d| self.next(q, d))
    }

    /// Output after reading the binary expansion of `n` (nothing for 0).
    pub fn eval(&self, n: u64) -> &Rational {
        self.output(self.run(&binary_digits(n)))
    }

    pub fn eval_big(&self, n: &BigUint) -> &Rational {
        self.output(self.run(&binary_digits_big(n)))
    }

    /// States reachable from the initial state, in breadth-first order.
    pub fn reachable(&self) -> Vec<usize> {
        let mut seen = vec![false; self.state_count()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            for d in 0..2 {
                let t = self.delta[q][d];
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                }
            }
            i += 1;
        }
        order
    }

    /// Class index of every state under output equivalence (Moore refinement).
    fn equivalence_classes(&self) -> Vec<usize> {
        let n = self.state_count();
        let mut by_output: HashMap<&Rational, usize> = HashMap::new();
        let mut class: Vec<usize> = (0..n)
            .map(|q| {
                let k = by_output.len();
                *by_output.entry(&self.outputs[q]).or_insert(k)
            })
            .collect();
        let mut count = by_output.len();
        loop {
            let mut sig: HashMap<(usize, usize, usize), usize> = HashMap::new();
            let next: Vec<usize> = (0..n)
                .map(|q| {
                    let key = (class[q], class[self.delta[q][0]], class[self.delta[q][1]]);
                    let k = sig.len();
                    *sig.entry(key).or_insert(k)
                })
                .collect();
            let new_count = sig.len();
            class = next;
            if new_count == count {
                return class;
            }
            count = new_count;
        }
    }

    /// Minimal output-equivalent automaton, numbered breadth-first from the
    /// initial state (digit 0 before 1).
    pub fn minimize(&self) -> Dfao {
        let class = self.equivalence_classes();
        let mut rep_of_class: HashMap<usize, usize> = HashMap::new();
        for q in self.reachable() {
            rep_of_class.entry(class[q]).or_insert(q);
        }
        // breadth-first renumbering over classes
        let mut number: HashMap<usize, usize> = HashMap::new();
        let mut order = vec![class[self.initial]];
        number.insert(class[self.initial], 0);
        let mut i = 0;
        while i < order.len() {
            let q = rep_of_class[&order[i]];
            for d in 0..2 {
                let k = class[self.delta[q][d]];
                if let Entry::Vacant(e) = number.entry(k) {
                    e.insert(order.len());
                    order.push(k);
                }
            }
            i += 1;
        }
        let delta = order
            .iter()
            .map(|k| {
                let q = rep_of_class[k];
                [
                    number[&class[self.delta[q][0]]],
                    number[&class[self.delta[q][1]]],
                ]
            })
            .collect();
        let outputs = order
            .iter()
            .map(|k| self.outputs[rep_of_class[k]].clone())
            .collect();
        Dfao {
            initial: 0,
            delta,
            outputs,
        }
    }

    /// Reading a leading `0` from the initial state lands in a state with the
    /// same behavior, so values do not depend on zero padding.
    pub fn is_leading_zero_consistent(&self) -> bool {
        let class = self.equivalence_classes();
        class[self.initial] == class[self.delta[self.initial][0]]
    }

    /// Outputs of all reachable states.
    pub fn reachable_outputs(&self) -> BTreeSet<Rational> {
        self.reachable()
            .into_iter()
            .map(|q| self.outputs[q].clone())
            .collect()
    }

    /// Outputs attained on `n_from..=n_to`, and the outputs of all reachable states.
    pub fn output_range(&self, n_from: u64, n_to: u64) -> (BTreeSet<Rational>, BTreeSet<Rational>) {
        let mut seen_states = vec![false; self.state_count()];
        for n in n_from..=n_to {
            seen_states[self.run(&binary_digits(n))] = true;
        }
        let attained = seen_states
            .iter()
            .enumerate()
            .filter(|(_, &s)| s)
            .map(|(q, _)| self.outputs[q].clone())
            .collect();
        (attained, self.reachable_outputs())
    }

    /// Every output taken at some `n >= lo`, over all (unboundedly many) such `n`.
    ///
    /// With `b` the bit length of `lo`, each `n >= lo` either lies in
    /// `lo..2^b` or has a `(b + 1)`-digit prefix in `2^b..2^(b+1)`; the latter
    /// are covered by closing those prefix states under both transitions.
    pub fn outputs_from(&self, lo: u64) -> BTreeSet<Rational> {
        let b = 64 - lo.leading_zeros();
        let mut states: BTreeSet<usize> = (lo..(1u64 << b))
            .map(|n| self.run(&binary_digits(n)))
            .collect();
        let mut seen = vec![false; self.state_count()];
        let mut stack: Vec<usize> = ((1u64 << b)..(1u64 << (b + 1)))
            .map(|n| self.run(&binary_digits(n)))
            .collect();
        while let Some(q) = stack.pop() {
            if !seen[q] {
                seen[q] = true;
                states.insert(q);
                stack.extend(self.delta[q]);
            }
        }
        states
            .into_iter()
            .map(|q| self.outputs[q].clone())
            .collect()
    }

    /// Graphviz rendering; states labeled `q{i}/{output}`, edges by digit.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph {name} {{");
        let _ = writeln!(s, "  rankdir=LR;");
        let _ = writeln!(s, "  node [shape=circle];");
        let _ = writeln!(s, "  start [shape=point];");
        let _ = writeln!(s, "  start -> q{};", self.initial);
        for (q, out) in self.outputs.iter().enumerate() {
            let _ = writeln!(s, "  q{q} [label=\"q{q}/{}\"];", short_rational(out));
        }
        for (q, row) in self.delta.iter().enumerate() {
            for (d, t) in row.iter().enumerate() {
                let _ = writeln!(s, "  q{q} -> q{t} [label=\"{d}\"];");
            }
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> String {
        let j = DfaoJson {
            states: self.state_count(),
            initial: self.initial,
            delta: self.delta.iter().map(|r| r.to_vec()).collect(),
            outputs: self.outputs.iter().map(format_rational).collect(),
        };
        let mut s = serde_json::to_string_pretty(&j).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: DfaoJson = serde_json::from_str(s)?;
        if j.delta.len() != j.states {
            return Err(Error::Shape(format!(
                "declared {} states but {} transition rows",
                j.states,
                j.delta.len()
            )));
        }
        let delta = j
            .delta
            .iter()
            .map(|r| match r.as_slice() {
                [a, b] => Ok([*a, *b]),
                _ => Err(Error::Shape(
                    "each state needs exactly two transitions".into(),
                )),
            })
            .collect::<Result<Vec<_>>>()?;
        let outputs = j
            .outputs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        Dfao::new(j.initial, delta, outputs)
    }
}

fn short_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DfaoJson {
    pub states: usize,
    pub initial: usize,
    pub delta: Vec<Vec<usize>>,
    pub outputs: Vec<String>,
}

/// Breadth-first closure of `{v gamma(x)}`; each distinct vector is a state.
pub fn semigroup_trick(rep: &LinearRepresentation, state_cap: usize) -> Result<Dfao> {
    let rep = rep.normalized();
    let mut index: HashMap<Vec<Rational>, usize> = HashMap::new();
    let mut vectors: Vec<Vec<Rational>> = Vec::new();
    let mut delta: Vec<[usize; 2]> = Vec::new();
    index.insert(rep.v().to_vec(), 0);
    vectors.push(rep.v().to_vec());
    let mut queue = VecDeque::from([0usize]);
    while let Some(q) = queue.pop_front() {
        let mut row = [0usize; 2];
        for d in 0..2u8 {
            let img = rep.gamma(d).vec_mul(&vectors[q]);
            let t = match index.get(&img) {
                Some(&t) => t,
                None => {
                    let t = vectors.len();
                    if t >= state_cap {
                        return Err(Error::StateCap { cap: state_cap });
                    }
                    index.insert(img.clone(), t);
                    vectors.push(img);
                    queue.push_back(t);
                    t
                }
            };
            row[d as usize] = t;
        }
        delta.push(row);
    }
    let outputs = vectors
        .iter()
        .map(|u| crate::linrep::rational::dot(u, rep.w()))
        .collect();
    Dfao::new(0, delta, outputs)
}

/// An infinite word read off a DFAO: symbol `i` is the index of the output at
/// `i` among the automaton's sorted reachable outputs.
#[derive(Debug, Clone)]
pub struct DfaoStream {
    dfao: Dfao,
    symbol_of_state: Vec<Symbol>,
    alphabet: Vec<Rational>,
}

impl DfaoStream {
    pub fn new(dfao: Dfao) -> Result<Self> {
        let alphabet: Vec<Rational> = dfao.reachable_outputs().into_iter().collect();
        if alphabet.len() > Symbol::MAX as usize {
            return Err(Error::Shape(
                "too many distinct outputs for a symbol stream".into(),
            ));
        }
        let symbol_of_state = dfao
            .outputs
            .iter()
            .map(|o| alphabet.binary_search(o).unwrap_or(0) as Symbol)
            .collect();
        Ok(DfaoStream {
            dfao,
            symbol_of_state,
            alphabet,
        })
    }

    /// The output value each symbol stands for.
    pub fn alphabet(&self) -> &[Rational] {
        &self.alphabet
    }
}

impl SymbolStream for DfaoStream {
    fn alphabet_size(&self) -> usize {
        self.alphabet.len()
    }
    fn domain_start(&self) -> u64 {
        0
    }
    fn symbol(&self, i: u64) -> Symbol {
        self.symbol_of_state[self.dfao.run(&binary_digits(i))]
    }
    fn name(&self) -> String {
        format!("dfao[{} states]", self.dfao.state_count())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::cyclic_complexity;
    use crate::linrep::{rat, ratio};
    use crate::reference::a0_reference_representation;
    use crate::words::{SymbolStream, ThueMorse};

    fn a0_dfao() -> Dfao {
        semigroup_trick(&a0_reference_representation(), DEFAULT_STATE_CAP).unwrap()
    }

    #[test]
    fn a0_has_eight_states() {
        let d = a0_dfao();
        let m = d.minimize();
        assert_eq!(m.state_count(), 8);
        assert_eq!(m.minimize(), m);
        assert!(m.is_leading_zero_consistent());
        let want: BTreeSet<Rational> = [-2, -1, 2, 4, 6].iter().map(|&x| rat(x)).collect();
        assert_eq!(m.reachable_outputs(), want);
    }

    #[test]
    fn a0_values() {
        let d = a0_dfao();
        assert_eq!(d.eval(4), &rat(4));
        assert_eq!(d.eval(0), &rat(-1));
        let rep = a0_reference_representation();
        for n in 0..=(1u64 << 16) {
            assert_eq!(d.eval(n), &rep.evaluate(n));
        }
        let m = d.minimize();
        for n in 0..=(1u64 << 16) {
            assert_eq!(m.eval(n), d.eval(n));
        }
        let (attained, _) = m.output_range(3, 100_000);
        assert!(attained
            .iter()
            .all(|x| [2, 4, 6].contains(&x.to_integer().try_into().unwrap())));
        let tail: BTreeSet<Rational> = [2, 4, 6].iter().map(|&x| rat(x)).collect();
        assert_eq!(m.outputs_from(3), tail);
        assert_eq!(m.outputs_from(0), m.reachable_outputs());
    }

    #[test]
    fn outputs_from_matches_enumeration() {
        // outputs of n -> (n mod 3 == 0) as an automaton
        let d = Dfao::new(
            0,
            vec![[0, 1], [2, 0], [1, 2]],
            vec![rat(1), rat(0), rat(0)],
        )
        .unwrap();
        for lo in 0..40u64 {
            let (seen, _) = d.output_range(lo, 4096);
            assert_eq!(d.outputs_from(lo), seen, "lo = {lo}");
        }
    }

    #[test]
    fn constant_and_unbounded_sequences() {
        let c = semigroup_trick(&LinearRepresentation::constant(ratio(3, 2)), 10).unwrap();
        assert_eq!(c.state_count(), 1);
        assert_eq!(c.eval(99), &ratio(3, 2));
        let id = semigroup_trick(&LinearRepresentation::identity_sequence(), 1000);
        assert!(matches!(id, Err(Error::StateCap { cap: 1000 })));
    }

    #[test]
    fn bisimilar_states_merge() {
        // states 1 and 2 behave identically
        let d = Dfao::new(
            0,
            vec![[0, 1], [2, 1], [1, 2]],
            vec![rat(0), rat(7), rat(7)],
        )
        .unwrap();
        let m = d.minimize();
        assert_eq!(m.state_count(), 2);
        for n in 0..512 {
            assert_eq!(m.eval(n), d.eval(n));
        }
        let one = Dfao::new(0, vec![[0, 0]], vec![rat(1)]).unwrap();
        assert_eq!(one.minimize(), one);
    }

    #[test]
    fn leading_zero_inconsistency_is_detected() {
        let d = Dfao::new(0, vec![[1, 0], [1, 1]], vec![rat(0), rat(1)]).unwrap();
        assert!(!d.is_leading_zero_consistent());
    }

    #[test]
    fn construction_is_checked() {
        assert!(Dfao::new(0, vec![], vec![]).is_err());
        assert!(Dfao::new(0, vec![[0, 3]], vec![rat(1)]).is_err());
        assert!(Dfao::new(2, vec![[0, 0]], vec![rat(1)]).is_err());
    }

    #[test]
    fn dot_and_json() {
        let m = a0_dfao().minimize();
        let dot = m.to_dot("a0");
        assert!(dot.starts_with("digraph a0 {"));
        assert!(dot.contains("q0/-1"));
        assert_eq!(dot.matches("[label=\"0\"]").count(), 8);
        assert_eq!(dot, m.to_dot("a0"));
        let j = m.to_json();
        let back = Dfao::from_json(&j).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.to_json(), j);
        assert!(Dfao::from_json(&j.replace("\"states\": 8", "\"states\": 9")).is_err());
    }

    #[test]
    fn thue_morse_as_a_dfao_stream() {
        let tm = Dfao::new(0, vec![[0, 1], [1, 0]], vec![rat(0), rat(1)]).unwrap();
        let s = DfaoStream::new(tm).unwrap();
        assert_eq!(s.prefix(64), ThueMorse.prefix(64));
        assert_eq!(s.alphabet_size(), 2);
        for n in 0..20 {
            assert_eq!(
                cyclic_complexity(&s, n).unwrap(),
                cyclic_complexity(&ThueMorse, n).unwrap()
            );
        }
    }
}
