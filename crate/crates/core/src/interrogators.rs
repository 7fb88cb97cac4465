//! Built-in interrogators over the binary alphabet `{0, 1}`.

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dialogue::{DialogueTranscript, Interrogator, InterrogatorStep, Message, Verdict};
use crate::machines::is_balanced;

/// Asks a fixed list of queries, then declares `verdict`. Without a verdict
/// it keeps asking the empty query once the script runs out.
#[derive(Debug, Clone)]
pub struct Scripted {
    name: String,
    queries: Vec<Message>,
    verdict: Option<Verdict>,
}

impl Scripted {
    pub fn new<S: Into<String>>(
        name: impl Into<String>,
        queries: impl IntoIterator<Item = S>,
        verdict: Option<Verdict>,
    ) -> Self {
        Scripted {
            name: name.into(),
            queries: queries.into_iter().map(|q| Message::new(q)).collect(),
            verdict,
        }
    }
}

impl Interrogator for Scripted {
    fn name(&self) -> &str {
        &self.name
    }

    fn next(&self, transcript: &DialogueTranscript) -> InterrogatorStep {
        match (self.queries.get(transcript.len()), self.verdict) {
            (Some(q), _) => InterrogatorStep::Ask(q.clone()),
            (None, Some(v)) => InterrogatorStep::Declare(v),
            (None, None) => InterrogatorStep::Ask(Message::empty()),
        }
    }
}

/// Asks the same query forever.
#[derive(Debug, Clone)]
pub struct Never {
    query: Message,
}

impl Never {
    pub fn new(query: impl Into<String>) -> Self {
        Never {
            query: Message::new(query),
        }
    }
}

impl Interrogator for Never {
    fn name(&self) -> &str {
        "never"
    }

    fn next(&self, _: &DialogueTranscript) -> InterrogatorStep {
        InterrogatorStep::Ask(self.query.clone())
    }
}

/// Asks a list of bracket words and declares `BelowLevel3` iff every reply is
/// the correct balance bit (`1` balanced, `0` not), `Level3` otherwise.
#[derive(Debug, Clone)]
pub struct BracketProber {
    name: String,
    probes: Vec<Message>,
}

impl BracketProber {
    pub fn new(name: impl Into<String>, probes: impl IntoIterator<Item = String>) -> Self {
        BracketProber {
            name: name.into(),
            probes: probes.into_iter().map(Message::from).collect(),
        }
    }

    /// `01`, `0011`, `0`.
    pub fn standard() -> Self {
        Self::new("bracket-prober", ["01", "0011", "0"].map(String::from))
    }

    /// `0^i 1^i` for `i = 1..=depth`, then the unbalanced `0^depth 1^(depth-1)`.
    pub fn deep(depth: usize) -> Self {
        let mut probes: Vec<String> = (1..=depth).map(|i| "0".repeat(i) + &"1".repeat(i)).collect();
        probes.push("0".repeat(depth) + &"1".repeat(depth.saturating_sub(1)));
        Self::new("deep-bracket", probes)
    }
}

impl Interrogator for BracketProber {
    fn name(&self) -> &str {
        &self.name
    }

    fn next(&self, transcript: &DialogueTranscript) -> InterrogatorStep {
        if let Some(q) = self.probes.get(transcript.len()) {
            return InterrogatorStep::Ask(q.clone());
        }
        let all_correct = transcript.rounds().iter().all(|r| {
            let bit = if is_balanced(r.query.as_str(), '0', '1') { "1" } else { "0" };
            r.reply.as_str() == bit
        });
        InterrogatorStep::Declare(if all_correct {
            Verdict::BelowLevel3
        } else {
            Verdict::Level3
        })
    }
}

/// Asks two palindromes; declares `Level3` if both come back verbatim (the
/// contestant looks like a plain copier), `BelowLevel3` otherwise.
#[derive(Debug, Clone, Default)]
pub struct MirrorTest;

impl Interrogator for MirrorTest {
    fn name(&self) -> &str {
        "mirror-test"
    }

    fn next(&self, transcript: &DialogueTranscript) -> InterrogatorStep {
        const PROBES: [&str; 2] = ["0110", "1001"];
        if let Some(q) = PROBES.get(transcript.len()) {
            return InterrogatorStep::Ask(Message::from(*q));
        }
        let copies = transcript.rounds().iter().all(|r| r.query == r.reply);
        InterrogatorStep::Declare(if copies { Verdict::Level3 } else { Verdict::BelowLevel3 })
    }
}

/// Pseudo-random queries from a fixed seed. The query of round `i` depends
/// on the seed and on every earlier reply, so the whole interrogator is a
/// function of the transcript. After `rounds` rounds it declares by the
/// parity of the `1`s seen in the replies.
#[derive(Debug, Clone)]
pub struct SeededRandom {
    name: String,
    seed: u64,
    rounds: usize,
    max_len: usize,
}

impl SeededRandom {
    pub fn new(seed: u64, rounds: usize, max_len: usize) -> Self {
        SeededRandom {
            name: format!("seeded-random-{seed}"),
            seed,
            rounds,
            max_len,
        }
    }
}

impl Interrogator for SeededRandom {
    fn name(&self) -> &str {
        &self.name
    }

    fn next(&self, transcript: &DialogueTranscript) -> InterrogatorStep {
        if transcript.len() >= self.rounds {
            let ones = transcript.replies().flat_map(|r| r.chars()).filter(|&c| c == '1').count();
            return InterrogatorStep::Declare(if ones % 2 == 0 {
                Verdict::Level3
            } else {
                Verdict::BelowLevel3
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        for reply in transcript.replies() {
            let salt = reply.chars().fold(reply.symbol_count() as u64, |h, c| {
                h.wrapping_mul(31).wrapping_add(u64::from(c))
            });
            rng = ChaCha8Rng::seed_from_u64(rng.random::<u64>() ^ salt);
        }
        let len = rng.random_range(0..=self.max_len);
        let q: String = (0..len).map(|_| if rng.random_bool(0.5) { '1' } else { '0' }).collect();
        InterrogatorStep::Ask(Message::from(q))
    }
}

/// Not a deterministic interrogator: each query is the binary reading of a
/// monotonic clock, and the clock is guaranteed to have advanced between
/// any two reads. Replaying a recorded session therefore always diverges.
#[derive(Debug)]
pub struct WallClock {
    rounds: usize,
    verdict: Verdict,
    origin: Instant,
    last: AtomicU64,
}

impl WallClock {
    pub fn new(rounds: usize, verdict: Verdict) -> Self {
        WallClock {
            rounds,
            verdict,
            origin: Instant::now(),
            last: AtomicU64::new(0),
        }
    }

    fn tick(&self) -> u64 {
        loop {
            let now = self.origin.elapsed().as_nanos() as u64 + 1;
            let last = self.last.load(Ordering::SeqCst);
            if now > last && self.last.compare_exchange(last, now, Ordering::SeqCst, Ordering::SeqCst).is_ok() {
                return now;
            }
            std::hint::spin_loop();
        }
    }
}

impl Interrogator for WallClock {
    fn name(&self) -> &str {
        "wall-clock"
    }

    fn next(&self, transcript: &DialogueTranscript) -> InterrogatorStep {
        if transcript.len() >= self.rounds {
            return InterrogatorStep::Declare(self.verdict);
        }
        InterrogatorStep::Ask(Message::from(format!("{:b}", self.tick())))
    }
}
