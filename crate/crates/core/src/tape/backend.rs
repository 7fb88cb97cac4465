use std::collections::VecDeque;

use super::Shift;

/// The non-blank part of a tape: everything between the leftmost and the
/// rightmost non-blank cell, inner blanks included.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct TapeWindow {
    /// Position of the first character of `content`; 0 when the tape is blank.
    pub start: i64,
    pub content: String,
}

impl TapeWindow {
    pub fn from_cells(blank: char, first_position: i64, cells: impl Iterator<Item = char>) -> Self {
        let cells: Vec<char> = cells.collect();
        match cells.iter().position(|&c| c != blank) {
            None => TapeWindow::default(),
            Some(lo) => {
                let hi = cells.iter().rposition(|&c| c != blank).unwrap_or(lo);
                TapeWindow {
                    start: first_position + lo as i64,
                    content: cells[lo..=hi].iter().collect(),
                }
            }
        }
    }
}

/// What a Turing machine needs from its tape.
///
/// Reading is `&mut` because some backends record reads.
pub trait TapeBackend {
    fn blank(&self) -> char;

    fn read(&mut self) -> char;

    fn write(&mut self, symbol: char);

    fn shift(&mut self, direction: Shift);

    fn head(&self) -> i64;

    fn window(&self) -> TapeWindow;

    /// Informs the backend which machine step is about to happen.
    fn begin_step(&mut self, _step: u64) {}

    /// Writes `input` starting under the head and returns the head to where it
    /// started.
    fn load(&mut self, input: &str) {
        let mut n = 0;
        for c in input.chars() {
            self.write(c);
            self.shift(Shift::Right);
            n += 1;
        }
        for _ in 0..n {
            self.shift(Shift::Left);
        }
    }
}

/// A two-way unbounded tape kept in one contiguous buffer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatTape {
    blank: char,
    cells: VecDeque<char>,
    /// Position of `cells[0]`.
    origin: i64,
    head: i64,
}

impl FlatTape {
    pub fn new(blank: char) -> Self {
        FlatTape {
            blank,
            cells: VecDeque::from(vec![blank]),
            origin: 0,
            head: 0,
        }
    }

    fn index(&mut self) -> usize {
        while self.head < self.origin {
            self.cells.push_front(self.blank);
            self.origin -= 1;
        }
        let ix = (self.head - self.origin) as usize;
        while ix >= self.cells.len() {
            self.cells.push_back(self.blank);
        }
        ix
    }

    /// Reads position `pos` without moving the head.
    pub fn peek(&self, pos: i64) -> char {
        if pos < self.origin {
            return self.blank;
        }
        self.cells.get((pos - self.origin) as usize).copied().unwrap_or(self.blank)
    }

    /// Writes position `pos` without moving the head.
    pub fn poke(&mut self, pos: i64, symbol: char) {
        let head = self.head;
        self.head = pos;
        let ix = self.index();
        self.cells[ix] = symbol;
        self.head = head;
    }
}

impl TapeBackend for FlatTape {
    fn blank(&self) -> char {
        self.blank
    }

    fn read(&mut self) -> char {
        self.peek(self.head)
    }

    fn write(&mut self, symbol: char) {
        let ix = self.index();
        self.cells[ix] = symbol;
    }

    fn shift(&mut self, direction: Shift) {
        match direction {
            Shift::Left => self.head -= 1,
            Shift::Right => self.head += 1,
        }
    }

    fn head(&self) -> i64 {
        self.head
    }

    fn window(&self) -> TapeWindow {
        TapeWindow::from_cells(self.blank, self.origin, self.cells.iter().copied())
    }
}
