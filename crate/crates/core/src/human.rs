//! A person at a text console, as interrogator or as contestant.

use std::io::{BufRead, Write};
use std::sync::Mutex;

use crate::dialogue::{
    Alphabet, Contestant, ContestantDescription, ContestantFault, DialogueTranscript, Interrogator, InterrogatorStep,
    LevelTag, Message, Verdict,
};

struct Console {
    input: Box<dyn BufRead + Send>,
    output: Box<dyn Write + Send>,
}

impl Console {
    /// Prints `prompt` and reads one line without its newline; `None` at end of input.
    fn ask(&mut self, prompt: &str) -> Option<String> {
        let _ = write!(self.output, "{prompt}");
        let _ = self.output.flush();
        let mut line = String::new();
        match self.input.read_line(&mut line) {
            Ok(0) | Err(_) => None,
            Ok(_) => Some(line.trim_end_matches(['\n', '\r']).to_owned()),
        }
    }

    fn say(&mut self, text: &str) {
        let _ = writeln!(self.output, "{text}");
    }
}

/// Reads queries from a console. `!3` declares `Level3`, `!<3` declares
/// `BelowLevel3`; anything else is a query. Lines with foreign symbols are
/// asked again. At end of input it keeps asking the empty query.
pub struct HumanInterrogator {
    alphabet: Alphabet,
    console: Mutex<Console>,
}

impl HumanInterrogator {
    pub fn new(alphabet: Alphabet, input: Box<dyn BufRead + Send>, output: Box<dyn Write + Send>) -> Self {
        HumanInterrogator {
            alphabet,
            console: Mutex::new(Console { input, output }),
        }
    }

    pub fn stdio(alphabet: Alphabet) -> Self {
        Self::new(
            alphabet,
            Box::new(std::io::BufReader::new(std::io::stdin())),
            Box::new(std::io::stdout()),
        )
    }
}

impl Interrogator for HumanInterrogator {
    fn name(&self) -> &str {
        "human"
    }

    fn next(&self, transcript: &DialogueTranscript) -> InterrogatorStep {
        let mut console = self.console.lock().expect("console lock");
        if let Some(last) = transcript.rounds().last() {
            console.say(&format!("< {}", last.reply));
        }
        loop {
            let Some(line) = console.ask(&format!("query over {} (!3 or !<3 to decide)> ", self.alphabet)) else {
                return InterrogatorStep::Ask(Message::empty());
            };
            match line.as_str() {
                "!3" => return InterrogatorStep::Declare(Verdict::Level3),
                "!<3" => return InterrogatorStep::Declare(Verdict::BelowLevel3),
                q => match self.alphabet.first_foreign(q) {
                    None => return InterrogatorStep::Ask(Message::from(q)),
                    Some(c) => console.say(&format!("{c:?} is not in {}", self.alphabet)),
                },
            }
        }
    }
}

/// Answers queries typed at a console.
pub struct HumanContestant {
    alphabet: Alphabet,
    console: Console,
}

impl HumanContestant {
    pub fn new(alphabet: Alphabet, input: Box<dyn BufRead + Send>, output: Box<dyn Write + Send>) -> Self {
        HumanContestant {
            alphabet,
            console: Console { input, output },
        }
    }

    pub fn stdio(alphabet: Alphabet) -> Self {
        Self::new(
            alphabet,
            Box::new(std::io::BufReader::new(std::io::stdin())),
            Box::new(std::io::stdout()),
        )
    }
}

impl Contestant for HumanContestant {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn level(&self) -> LevelTag {
        LevelTag::HumanProxy
    }

    fn reply(&mut self, query: &Message) -> Result<Message, ContestantFault> {
        self.console.say(&format!("> {query}"));
        loop {
            let line = self
                .console
                .ask("reply> ")
                .ok_or_else(|| ContestantFault("console closed".into()))?;
            match self.alphabet.first_foreign(&line) {
                None => return Ok(Message::from(line)),
                Some(c) => self.console.say(&format!("{c:?} is not in {}", self.alphabet)),
            }
        }
    }

    fn reset(&mut self) {}

    fn describe(&self) -> ContestantDescription {
        ContestantDescription {
            name: "human".into(),
            level: LevelTag::HumanProxy,
            machine: None,
        }
    }
}
