//! Halting for machines confined to a fixed number of tape cells.
//!
//! With `m` cells the machine has at most `|Q| * m * |Γ|^m` configurations,
//! so it either stops or repeats a configuration within that many steps. The
//! head is clamped to the region: a move off either end leaves it in place.

use std::collections::HashMap;

use super::{Shift, TapeError, TuringMachineSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HaltingDecision {
    Halts(u64),
    /// The configurations after `first` and `second` steps are identical,
    /// `first < second`.
    Loops { first: u64, second: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CycleDetection {
    /// Remember every configuration seen.
    #[default]
    Table,
    /// Tortoise and hare; keeps two configurations at a time.
    TwoPointer,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoundedConfiguration {
    pub state: usize,
    pub head: usize,
    /// Symbol indices into the machine's tape alphabet.
    pub tape: Vec<u8>,
}

/// A machine plus its clamped region, stepping one configuration at a time.
#[derive(Debug, Clone)]
pub struct BoundedMachine<'a> {
    spec: &'a TuringMachineSpec,
    m: usize,
}

impl<'a> BoundedMachine<'a> {
    pub fn new(spec: &'a TuringMachineSpec, m: usize) -> Result<Self, TapeError> {
        if m == 0 {
            return Err(TapeError::ZeroRegion);
        }
        if spec.symbols().len() > u8::MAX as usize + 1 {
            return Err(TapeError::TooManySymbols(spec.symbols().len()));
        }
        Ok(BoundedMachine { spec, m })
    }

    pub fn initial(&self, input: &str) -> Result<BoundedConfiguration, TapeError> {
        let len = input.chars().count();
        if len > self.m {
            return Err(TapeError::InputTooLong { len, m: self.m });
        }
        let mut tape = vec![self.spec.blank_index() as u8; self.m];
        for (slot, c) in tape.iter_mut().zip(input.chars()) {
            match self.spec.symbol_index(c) {
                Some(ix) if c != self.spec.blank() => *slot = ix as u8,
                _ => return Err(TapeError::BadInput(c)),
            }
        }
        Ok(BoundedConfiguration {
            state: self.spec.initial(),
            head: 0,
            tape,
        })
    }

    pub fn is_stopped(&self, c: &BoundedConfiguration) -> bool {
        self.spec.stops(c.state, c.tape[c.head] as usize)
    }

    /// Applies one transition in place; returns false if the configuration is
    /// a stopping one.
    pub fn advance(&self, c: &mut BoundedConfiguration) -> bool {
        let Some(rule) = (!self.spec.is_halting(c.state))
            .then(|| self.spec.rule(c.state, c.tape[c.head] as usize))
            .flatten()
        else {
            return false;
        };
        c.tape[c.head] = rule.write as u8;
        match rule.shift {
            Shift::Left => c.head = c.head.saturating_sub(1),
            Shift::Right => c.head = (c.head + 1).min(self.m - 1),
        }
        c.state = rule.next;
        true
    }

    /// Configuration after exactly `steps` transitions (or the stopping one,
    /// if the machine stops earlier).
    pub fn configuration_after(&self, input: &str, steps: u64) -> Result<BoundedConfiguration, TapeError> {
        let mut c = self.initial(input)?;
        for _ in 0..steps {
            if !self.advance(&mut c) {
                break;
            }
        }
        Ok(c)
    }

    /// `|Q| * m * |Γ|^m`, if it fits in a `u128`.
    pub fn configuration_space(&self) -> Option<u128> {
        let mut n = (self.spec.state_count() as u128).checked_mul(self.m as u128)?;
        for _ in 0..self.m {
            n = n.checked_mul(self.spec.symbols().len() as u128)?;
        }
        Some(n)
    }

    fn pack(&self, c: &BoundedConfiguration) -> u128 {
        let base = self.spec.symbols().len() as u128;
        let mut key = 0u128;
        for &s in &c.tape {
            key = key * base + s as u128;
        }
        (key * self.m as u128 + c.head as u128) * self.spec.state_count() as u128 + c.state as u128
    }
}

/// Decides halting of `spec` on `input` inside an `m`-cell region.
pub fn decide_halting_bounded(spec: &TuringMachineSpec, m: usize, input: &str) -> Result<HaltingDecision, TapeError> {
    decide_halting_bounded_with(spec, m, input, CycleDetection::Table)
}

pub fn decide_halting_bounded_with(
    spec: &TuringMachineSpec,
    m: usize,
    input: &str,
    mode: CycleDetection,
) -> Result<HaltingDecision, TapeError> {
    let machine = BoundedMachine::new(spec, m)?;
    let start = machine.initial(input)?;
    Ok(match mode {
        CycleDetection::Table => match machine.configuration_space() {
            Some(_) => table_packed(&machine, start),
            None => table_full(&machine, start),
        },
        CycleDetection::TwoPointer => two_pointer(&machine, start),
    })
}

fn table_packed(machine: &BoundedMachine<'_>, mut c: BoundedConfiguration) -> HaltingDecision {
    let mut seen: HashMap<u128, u64> = HashMap::new();
    let mut step = 0u64;
    loop {
        if let Some(&first) = seen.get(&machine.pack(&c)) {
            return HaltingDecision::Loops { first, second: step };
        }
        seen.insert(machine.pack(&c), step);
        if !machine.advance(&mut c) {
            return HaltingDecision::Halts(step);
        }
        step += 1;
    }
}

fn table_full(machine: &BoundedMachine<'_>, mut c: BoundedConfiguration) -> HaltingDecision {
    let mut seen: HashMap<BoundedConfiguration, u64> = HashMap::new();
    let mut step = 0u64;
    loop {
        if let Some(&first) = seen.get(&c) {
            return HaltingDecision::Loops { first, second: step };
        }
        seen.insert(c.clone(), step);
        if !machine.advance(&mut c) {
            return HaltingDecision::Halts(step);
        }
        step += 1;
    }
}

/// Floyd's cycle finding over the configuration sequence. Yields the same
/// answer as the table: the first repeated configuration and its first index.
fn two_pointer(machine: &BoundedMachine<'_>, start: BoundedConfiguration) -> HaltingDecision {
    let mut tortoise = start.clone();
    let mut hare = start.clone();
    let mut hare_steps = 0u64;
    loop {
        for _ in 0..2 {
            if !machine.advance(&mut hare) {
                return HaltingDecision::Halts(hare_steps);
            }
            hare_steps += 1;
        }
        machine.advance(&mut tortoise);
        if tortoise == hare {
            break;
        }
    }
    // Start of the cycle.
    let mut mu = 0u64;
    tortoise = start;
    while tortoise != hare {
        machine.advance(&mut tortoise);
        machine.advance(&mut hare);
        mu += 1;
    }
    // Length of the cycle.
    let mut lambda = 1u64;
    hare = tortoise.clone();
    machine.advance(&mut hare);
    while tortoise != hare {
        machine.advance(&mut hare);
        lambda += 1;
    }
    HaltingDecision::Loops {
        first: mu,
        second: mu + lambda,
    }
}
