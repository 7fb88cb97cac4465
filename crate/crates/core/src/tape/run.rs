use super::{CascadeTape, FlatTape, TapeBackend, TapeError, TapeWindow, TuringMachineSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunOutcome {
    /// Stopped in a halting state, or on a missing transition.
    Halted {
        state: usize,
        steps: u64,
        window: TapeWindow,
    },
    Running {
        steps: u64,
    },
}

impl RunOutcome {
    pub fn is_halted(&self) -> bool {
        matches!(self, RunOutcome::Halted { .. })
    }

    pub fn steps(&self) -> u64 {
        match self {
            RunOutcome::Halted { steps, .. } | RunOutcome::Running { steps } => *steps,
        }
    }
}

/// A machine in the middle of a run on some tape.
pub struct Execution<'a, B> {
    spec: &'a TuringMachineSpec,
    tape: B,
    state: usize,
    steps: u64,
    halted: bool,
}

impl<'a, B: TapeBackend> Execution<'a, B> {
    /// Loads `input` under the head and puts the machine in its initial state.
    pub fn start(spec: &'a TuringMachineSpec, mut tape: B, input: &str) -> Result<Self, TapeError> {
        if let Some(c) = input
            .chars()
            .find(|&c| c == spec.blank() || spec.symbol_index(c).is_none())
        {
            return Err(TapeError::BadInput(c));
        }
        tape.begin_step(0);
        tape.load(input);
        Ok(Execution {
            spec,
            tape,
            state: spec.initial(),
            steps: 0,
            halted: false,
        })
    }

    pub fn state(&self) -> usize {
        self.state
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn tape(&self) -> &B {
        &self.tape
    }

    pub fn into_tape(self) -> B {
        self.tape
    }

    pub fn is_halted(&self) -> bool {
        self.halted
    }

    /// Performs one transition. Returns false, without touching the tape
    /// further, once the machine has stopped.
    pub fn step(&mut self) -> bool {
        if self.halted {
            return false;
        }
        if self.spec.is_halting(self.state) {
            self.halted = true;
            return false;
        }
        self.tape.begin_step(self.steps + 1);
        let read = self.tape.read();
        // Symbols outside the tape alphabet can only appear through a broken
        // backend; treat them like a missing transition.
        let rule = self.spec.symbol_index(read).and_then(|s| self.spec.rule(self.state, s));
        match rule {
            None => {
                self.halted = true;
                false
            }
            Some(rule) => {
                self.tape.write(self.spec.symbols()[rule.write]);
                self.tape.shift(rule.shift);
                self.state = rule.next;
                self.steps += 1;
                true
            }
        }
    }

    /// Steps until the machine stops or `step_limit` total steps have run.
    ///
    /// A machine that reaches a stopping configuration exactly at the budget
    /// counts as halted.
    pub fn run(&mut self, step_limit: u64) -> RunOutcome {
        while !self.halted {
            if self.steps >= step_limit {
                if !self.stopping_now() {
                    return RunOutcome::Running { steps: self.steps };
                }
                self.halted = true;
                break;
            }
            self.step();
        }
        RunOutcome::Halted {
            state: self.state,
            steps: self.steps,
            window: self.tape.window(),
        }
    }

    fn stopping_now(&mut self) -> bool {
        if self.spec.is_halting(self.state) {
            return true;
        }
        let read = self.tape.read();
        self.spec.symbol_index(read).and_then(|s| self.spec.rule(self.state, s)).is_none()
    }
}

/// Runs `spec` on `input` over the given backend for at most `step_limit` steps.
pub fn run_tm<B: TapeBackend>(
    spec: &TuringMachineSpec,
    backend: B,
    input: &str,
    step_limit: u64,
) -> Result<RunOutcome, TapeError> {
    Ok(Execution::start(spec, backend, input)?.run(step_limit))
}

/// Runs the machine on a flat tape and on a cascade of capacity `capacity` in
/// lockstep and reports whether they were observationally identical.
pub fn backend_equivalence(
    spec: &TuringMachineSpec,
    input: &str,
    step_limit: u64,
    capacity: usize,
) -> Result<bool, TapeError> {
    let cascade = CascadeTape::new(capacity, spec.blank())?;
    lockstep_equivalence(spec, input, step_limit, FlatTape::new(spec.blank()), cascade)
}

/// The harness behind [`backend_equivalence`], with both backends supplied.
///
/// After loading and after every step it compares the (state, head position,
/// non-blank window) triple of both runs, then the final outcomes.
pub fn lockstep_equivalence<A: TapeBackend, B: TapeBackend>(
    spec: &TuringMachineSpec,
    input: &str,
    step_limit: u64,
    reference: A,
    candidate: B,
) -> Result<bool, TapeError> {
    let mut a = Execution::start(spec, reference, input)?;
    let mut b = Execution::start(spec, candidate, input)?;
    let same = |a: &Execution<'_, A>, b: &Execution<'_, B>| {
        a.state() == b.state() && a.tape().head() == b.tape().head() && a.tape().window() == b.tape().window()
    };
    if !same(&a, &b) {
        return Ok(false);
    }
    while a.steps() < step_limit {
        let moved_a = a.step();
        let moved_b = b.step();
        if moved_a != moved_b || !same(&a, &b) {
            return Ok(false);
        }
        if !moved_a {
            break;
        }
    }
    Ok(a.run(step_limit) == b.run(step_limit))
}
