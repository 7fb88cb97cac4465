//! An unbounded tape built from a chain of fixed-capacity cells.
//!
//! Each cell stands for one bounded script: it holds exactly `capacity`
//! symbols and can only talk to its two neighbours. The head lives in one
//! cell at a time; crossing a cell boundary is a `PassLeft`/`PassRight`
//! message, and walking off either end of the chain spawns exactly one new
//! blank cell (`AppendCell`). Every read and write is logged against the
//! cell that served it.

use std::collections::VecDeque;
use std::fmt;

use super::{Shift, TapeBackend, TapeError, TapeWindow};

/// Cell capacity used when none is given.
pub const DEFAULT_CELL_CAPACITY: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MessageKind {
    AppendCell,
    PassLeft,
    PassRight,
    Read,
    Write,
}

impl fmt::Display for MessageKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MessageKind::AppendCell => "AppendCell",
            MessageKind::PassLeft => "PassLeft",
            MessageKind::PassRight => "PassRight",
            MessageKind::Read => "Read",
            MessageKind::Write => "Write",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CascadeMessage {
    pub step: u64,
    pub kind: MessageKind,
    /// Cell id; cell 0 holds positions `0..capacity`, negative ids extend left.
    pub cell: i64,
    pub payload: String,
}

#[derive(Debug, Clone)]
pub struct CascadeTape {
    capacity: usize,
    blank: char,
    cells: VecDeque<Box<[char]>>,
    first_id: i64,
    head_cell: i64,
    head_offset: usize,
    step: u64,
    log: Vec<CascadeMessage>,
    /// Test hook: drop the n-th (0-based) `AppendCell`.
    skip_append: Option<usize>,
    appends: usize,
}

impl CascadeTape {
    pub fn new(capacity: usize, blank: char) -> Result<Self, TapeError> {
        if capacity == 0 {
            return Err(TapeError::ZeroCapacity);
        }
        Ok(CascadeTape {
            capacity,
            blank,
            cells: VecDeque::from(vec![vec![blank; capacity].into_boxed_slice()]),
            first_id: 0,
            head_cell: 0,
            head_offset: 0,
            step: 0,
            log: Vec::new(),
            skip_append: None,
            appends: 0,
        })
    }

    /// A deliberately broken cascade for harness tests: the `nth` extension
    /// of the chain is silently dropped and the head wraps around inside the
    /// current end cell instead.
    pub fn with_dropped_append(capacity: usize, blank: char, nth: usize) -> Result<Self, TapeError> {
        let mut tape = Self::new(capacity, blank)?;
        tape.skip_append = Some(nth);
        Ok(tape)
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn chain_len(&self) -> usize {
        self.cells.len()
    }

    pub fn head_cell(&self) -> (i64, usize) {
        (self.head_cell, self.head_offset)
    }

    pub fn log(&self) -> &[CascadeMessage] {
        &self.log
    }

    pub fn count(&self, kind: MessageKind) -> usize {
        self.log.iter().filter(|m| m.kind == kind).count()
    }

    /// The message log as `step TAB kind TAB cell TAB payload` lines.
    pub fn trace(&self) -> String {
        let mut out = String::new();
        for m in &self.log {
            out.push_str(&format!("{}\t{}\t{}\t{}\n", m.step, m.kind, m.cell, m.payload));
        }
        out
    }

    fn emit(&mut self, kind: MessageKind, cell: i64, payload: impl Into<String>) {
        self.log.push(CascadeMessage {
            step: self.step,
            kind,
            cell,
            payload: payload.into(),
        });
    }

    fn last_id(&self) -> i64 {
        self.first_id + self.cells.len() as i64 - 1
    }

    fn slot(&mut self) -> &mut char {
        let ix = (self.head_cell - self.first_id) as usize;
        &mut self.cells[ix][self.head_offset]
    }

    /// Returns false when the append was dropped by the fault hook.
    fn append(&mut self, side: Shift) -> bool {
        let n = self.appends;
        self.appends += 1;
        if self.skip_append == Some(n) {
            return false;
        }
        let fresh = vec![self.blank; self.capacity].into_boxed_slice();
        let id = match side {
            Shift::Left => {
                self.cells.push_front(fresh);
                self.first_id -= 1;
                self.first_id
            }
            Shift::Right => {
                self.cells.push_back(fresh);
                self.last_id()
            }
        };
        self.emit(MessageKind::AppendCell, id, side.to_string());
        true
    }
}

impl TapeBackend for CascadeTape {
    fn blank(&self) -> char {
        self.blank
    }

    fn read(&mut self) -> char {
        let c = *self.slot();
        self.emit(MessageKind::Read, self.head_cell, format!("{}:{}", self.head_offset, c));
        c
    }

    fn write(&mut self, symbol: char) {
        *self.slot() = symbol;
        self.emit(MessageKind::Write, self.head_cell, format!("{}:{}", self.head_offset, symbol));
    }

    fn shift(&mut self, direction: Shift) {
        match direction {
            Shift::Right if self.head_offset + 1 < self.capacity => self.head_offset += 1,
            Shift::Left if self.head_offset > 0 => self.head_offset -= 1,
            Shift::Right => {
                let target = self.head_cell + 1;
                if target > self.last_id() && !self.append(Shift::Right) {
                    self.head_offset = 0;
                    return;
                }
                self.emit(MessageKind::PassRight, self.head_cell, target.to_string());
                self.head_cell = target;
                self.head_offset = 0;
            }
            Shift::Left => {
                let target = self.head_cell - 1;
                if target < self.first_id && !self.append(Shift::Left) {
                    self.head_offset = self.capacity - 1;
                    return;
                }
                self.emit(MessageKind::PassLeft, self.head_cell, target.to_string());
                self.head_cell = target;
                self.head_offset = self.capacity - 1;
            }
        }
    }

    fn head(&self) -> i64 {
        self.head_cell * self.capacity as i64 + self.head_offset as i64
    }

    fn window(&self) -> TapeWindow {
        let first = self.first_id * self.capacity as i64;
        TapeWindow::from_cells(self.blank, first, self.cells.iter().flat_map(|c| c.iter().copied()))
    }

    fn begin_step(&mut self, step: u64) {
        self.step = step;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn capacity_one_appends_per_move() {
        let mut t = CascadeTape::new(1, '_').unwrap();
        for _ in 0..5 {
            t.shift(Shift::Right);
        }
        assert_eq!(t.chain_len(), 6);
        assert_eq!(t.count(MessageKind::AppendCell), 5);
        assert_eq!(t.head(), 5);
    }

    #[test]
    fn read_after_write_with_inverse_moves() {
        let mut t = CascadeTape::new(3, '_').unwrap();
        t.write('x');
        t.shift(Shift::Left);
        t.shift(Shift::Right);
        assert_eq!(t.read(), 'x');
        assert_eq!(t.head(), 0);
    }

    #[test]
    fn zero_capacity_rejected() {
        assert!(matches!(CascadeTape::new(0, '_'), Err(TapeError::ZeroCapacity)));
    }

    #[test]
    fn trace_lines() {
        let mut t = CascadeTape::new(1, '_').unwrap();
        t.begin_step(4);
        t.write('1');
        t.shift(Shift::Left);
        assert_eq!(t.trace(), "4\tWrite\t0\t0:1\n4\tAppendCell\t-1\tL\n4\tPassLeft\t0\t-1\n");
    }

    proptest! {
        #[test]
        fn growth_bound_and_reversibility(moves in proptest::collection::vec(any::<bool>(), 0..200), c in 1usize..6) {
            let mut t = CascadeTape::new(c, '_').unwrap();
            let (mut lo, mut hi) = (0i64, 0i64);
            for right in moves {
                let before = t.head();
                t.write('a');
                let dir = if right { Shift::Right } else { Shift::Left };
                t.shift(dir);
                t.shift(dir.reversed());
                prop_assert_eq!(t.head(), before);
                prop_assert_eq!(t.read(), 'a');
                t.shift(dir);
                lo = lo.min(t.head());
                hi = hi.max(t.head());
            }
            let visited = (hi - lo + 1) as usize;
            prop_assert!(t.chain_len() <= visited.div_ceil(c) + 1);
        }
    }
}
