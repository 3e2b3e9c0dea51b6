//! One-pass input streams over the ternary alphabet {0, 1, #} and the
//! space accounting used to compare recognizers.
//!
//! A [`TokenStream`] hands out tokens strictly left to right; there is no way
//! to move the cursor back. Recognizers that want a second pass must build a
//! new stream, which counts as a separate run.

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// One input symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Token {
    Zero,
    One,
    Hash,
}

impl Token {
    pub fn from_char(c: char) -> Result<Token> {
        match c {
            '0' => Ok(Token::Zero),
            '1' => Ok(Token::One),
            '#' => Ok(Token::Hash),
            other => Err(Error::InvalidWordChar { found: other }),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Token::Zero => '0',
            Token::One => '1',
            Token::Hash => '#',
        }
    }

    /// The bit value of a binary token; `None` for `#`.
    pub fn as_bit(self) -> Option<bool> {
        match self {
            Token::Zero => Some(false),
            Token::One => Some(true),
            Token::Hash => None,
        }
    }
}

/// A finite input word consumed one token at a time, cursor monotone.
#[derive(Clone, Debug)]
pub struct TokenStream {
    tokens: Vec<Token>,
    cursor: usize,
}

impl TokenStream {
    pub fn from_word(word: &str) -> Result<Self> {
        let mut tokens = Vec::with_capacity(word.len());
        for c in word.chars() {
            tokens.push(Token::from_char(c)?);
        }
        Ok(TokenStream { tokens, cursor: 0 })
    }

    pub fn from_tokens(tokens: Vec<Token>) -> Self {
        TokenStream { tokens, cursor: 0 }
    }

    /// Returns the token under the cursor and advances, or `None` once the
    /// stream is exhausted. Calling again after the end keeps returning
    /// `None`; the cursor never moves left.
    pub fn next_token(&mut self) -> Option<Token> {
        let tok = self.tokens.get(self.cursor).copied()?;
        self.cursor += 1;
        Some(tok)
    }

    pub fn position(&self) -> usize {
        self.cursor
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn is_exhausted(&self) -> bool {
        self.cursor >= self.tokens.len()
    }

    /// A fresh stream over the same word, cursor at 0. This is a new run,
    /// not a rewind of the current one.
    pub fn restarted(&self) -> TokenStream {
        TokenStream {
            tokens: self.tokens.clone(),
            cursor: 0,
        }
    }
}

/// Parses the contents of a word file: a single line over `0`, `1`, `#`,
/// terminated by a newline. Returns the bare word.
pub fn parse_word_file(contents: &str) -> Result<String> {
    let word = contents.strip_suffix('\n').unwrap_or(contents);
    for c in word.chars() {
        Token::from_char(c)?;
    }
    Ok(word.to_string())
}

/// Number of ternary work cells needed for a counter whose value never
/// exceeds `max_value`: the least c with 3^c > max_value. A value of 0
/// costs nothing.
pub fn ternary_cells(max_value: u64) -> u64 {
    let mut cells = 0u64;
    let mut capacity = 1u128;
    while capacity < u128::from(max_value) + 1 {
        capacity *= 3;
        cells += 1;
    }
    cells
}

/// Tracks the peak working storage of a run. Classical cells are ternary
/// work-tape symbols; counters are charged via [`ternary_cells`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SpaceMeter {
    classical_cells_peak: u64,
    qubits_peak: u32,
    input_length: u64,
}

impl SpaceMeter {
    pub fn new(input_length: u64) -> Self {
        SpaceMeter {
            classical_cells_peak: 0,
            qubits_peak: 0,
            input_length,
        }
    }

    /// Records `live_cells` simultaneously-live cells; the peak is the
    /// running maximum and never decreases.
    pub fn charge_cells(&mut self, live_cells: u64) {
        self.classical_cells_peak = self.classical_cells_peak.max(live_cells);
    }

    pub fn charge_qubits(&mut self, width: u32) {
        self.qubits_peak = self.qubits_peak.max(width);
    }

    pub fn classical_cells_peak(&self) -> u64 {
        self.classical_cells_peak
    }

    pub fn qubits_peak(&self) -> u32 {
        self.qubits_peak
    }

    pub fn input_length(&self) -> u64 {
        self.input_length
    }
}

/// Inputs to the configuration-count bound for a space-bounded one-pass
/// machine: input length, space budget, work alphabet size and number of
/// control states.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConfigBoundParams {
    pub n: u64,
    pub s: u64,
    pub sigma_size: u64,
    pub q_size: u64,
}

impl ConfigBoundParams {
    pub fn new(n: u64, s: u64, sigma_size: u64, q_size: u64) -> Result<Self> {
        for (name, v) in [
            ("n", n),
            ("s", s),
            ("sigma_size", sigma_size),
            ("q_size", q_size),
        ] {
            if v == 0 {
                return Err(Error::ZeroConfigParam { name });
            }
        }
        Ok(ConfigBoundParams {
            n,
            s,
            sigma_size,
            q_size,
        })
    }
}

/// Exact value of `n * s * sigma_size^s * q_size`, the number of distinct
/// configurations an s-space machine can reach on inputs of length n.
pub fn config_count_bound(p: &ConfigBoundParams) -> BigUint {
    let mut power = BigUint::from(1u32);
    let base = BigUint::from(p.sigma_size);
    let mut exp = p.s;
    let mut sq = base;
    // square-and-multiply so huge space values stay cheap
    while exp > 0 {
        if exp & 1 == 1 {
            power *= &sq;
        }
        exp >>= 1;
        if exp > 0 {
            sq = &sq * &sq;
        }
    }
    BigUint::from(p.n) * BigUint::from(p.s) * power * BigUint::from(p.q_size)
}
