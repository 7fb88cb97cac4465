use std::collections::{HashMap, VecDeque};

use super::table::shortlex;
use crate::dialogue::Alphabet;
use crate::machines::MealyTransducer;

/// Conformance suite `P · Σ^{≤ k−m} · W` for a minimal hypothesis with `m`
/// states: `P` is a transition cover, `W` a characterizing set.
///
/// Any machine with at most `k` states that agrees with `hypothesis` on
/// every word of the suite agrees with it on every word. Returned in
/// shortlex order without duplicates.
pub fn wmethod_suite(hypothesis: &MealyTransducer, k: usize, alphabet: &Alphabet) -> Vec<String> {
    let m = hypothesis.state_count();
    let cover = transition_cover(hypothesis, alphabet);
    let middles = alphabet.words_up_to(k.saturating_sub(m));
    let w = characterizing_set(hypothesis, alphabet);
    let mut suite = Vec::new();
    for p in &cover {
        for mid in &middles {
            for e in &w {
                suite.push(format!("{p}{mid}{e}"));
            }
        }
    }
    sorted(alphabet, suite)
}

fn sorted(alphabet: &Alphabet, mut words: Vec<String>) -> Vec<String> {
    words.sort_by(|a, b| shortlex(alphabet, a, b));
    words.dedup();
    words
}

fn column(alphabet: &Alphabet, i: usize) -> char {
    alphabet.symbols()[i]
}

/// Shortlex-least access word of every reachable state.
pub fn access_words(hypothesis: &MealyTransducer, alphabet: &Alphabet) -> Vec<(usize, String)> {
    let mut access = vec![(hypothesis.initial(), String::new())];
    let mut queue = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        let (q, word) = access[i].clone();
        for a in 0..alphabet.len() {
            let t = hypothesis.edge(q, a).target;
            if !access.iter().any(|(s, _)| *s == t) {
                access.push((t, format!("{word}{}", column(alphabet, a))));
                queue.push_back(access.len() - 1);
            }
        }
    }
    access
}

/// Access words and their one-symbol extensions.
pub fn transition_cover(hypothesis: &MealyTransducer, alphabet: &Alphabet) -> Vec<String> {
    let mut cover = Vec::new();
    for (_, w) in access_words(hypothesis, alphabet) {
        for &a in alphabet.symbols() {
            cover.push(format!("{w}{a}"));
        }
        cover.push(w);
    }
    cover
}

/// Shortlex-least word on which states `p` and `q` emit differently.
pub fn separating_word(h: &MealyTransducer, alphabet: &Alphabet, p: usize, q: usize) -> Option<String> {
    let mut seen: HashMap<(usize, usize), ()> = HashMap::from([((p, q), ())]);
    let mut queue = VecDeque::from([(p, q, String::new())]);
    while let Some((x, y, w)) = queue.pop_front() {
        for a in 0..alphabet.len() {
            let (ex, ey) = (h.edge(x, a), h.edge(y, a));
            let next = format!("{w}{}", column(alphabet, a));
            if ex.output != ey.output {
                return Some(next);
            }
            if seen.insert((ex.target, ey.target), ()).is_none() {
                queue.push_back((ex.target, ey.target, next));
            }
        }
    }
    None
}

/// Separating words for every pair of reachable states, or `{ε}` when no
/// pair is separable.
pub fn characterizing_set(hypothesis: &MealyTransducer, alphabet: &Alphabet) -> Vec<String> {
    let states: Vec<usize> = access_words(hypothesis, alphabet).into_iter().map(|(q, _)| q).collect();
    let mut w = Vec::new();
    for (i, &p) in states.iter().enumerate() {
        for &q in &states[i + 1..] {
            w.extend(separating_word(hypothesis, alphabet, p, q));
        }
    }
    if w.is_empty() {
        return vec![String::new()];
    }
    sorted(alphabet, w)
}
