use crate::machines::{is_balanced, Acceptor, MachineError};

/// A word on which `a` disagrees with the balanced-bracket language.
///
/// With `k` states, two of `open^0 .. open^k` reach the same state, say
/// `open^i` and `open^j` with `i < j`. Then `open^i close^j` (unbalanced)
/// and `open^j close^j` (balanced) also reach a common state, so `a` gives
/// them the same answer and is wrong on exactly one. That one is returned;
/// its length is at most `2k`.
pub fn pumping_counterexample(a: &Acceptor, open: char, close: char) -> Result<String, MachineError> {
    if open == close {
        return Err(MachineError::SameBrackets(open));
    }
    let alphabet = a.alphabet();
    let (o, c) = (
        alphabet.index_of(open).ok_or(MachineError::ForeignSymbol(open))?,
        alphabet.index_of(close).ok_or(MachineError::ForeignSymbol(close))?,
    );
    let mut seen: Vec<usize> = vec![a.initial()];
    let (i, j) = loop {
        let next = a.target(*seen.last().expect("non-empty"), o);
        if let Some(i) = seen.iter().position(|&s| s == next) {
            break (i, seen.len());
        }
        seen.push(next);
    };
    let word = |opens: usize, closes: usize| {
        std::iter::repeat_n(open, opens)
            .chain(std::iter::repeat_n(close, closes))
            .collect::<String>()
    };
    let state = (0..j).fold(seen[i], |q, _| a.target(q, c));
    Ok(if a.is_accepting(state) { word(i, j) } else { word(j, j) })
}

/// Whether `a` answers `word` differently from the balanced-bracket language.
pub fn misclassifies(a: &Acceptor, word: &str, open: char, close: char) -> Result<bool, MachineError> {
    Ok(a.accepts(word)? != is_balanced(word, open, close))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dialogue::Alphabet;

    #[test]
    fn accept_all() {
        let a = Acceptor::accept_all(Alphabet::binary());
        // 0^0 and 0^1 collapse, so 0^0 1^1 is accepted though unbalanced
        assert_eq!(pumping_counterexample(&a, '0', '1').unwrap(), "1");
    }

    #[test]
    fn even_length() {
        let a = Acceptor::even_length(Alphabet::binary());
        let w = pumping_counterexample(&a, '0', '1').unwrap();
        assert!(["11", "0011"].contains(&w.as_str()));
        assert!(misclassifies(&a, &w, '0', '1').unwrap());
    }
}
