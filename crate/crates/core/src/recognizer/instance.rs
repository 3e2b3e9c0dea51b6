//! Problem instances and their stream encoding.
//!
//! An instance is a parameter k with two binary strings x, y of length
//! 2^{2k}. Its word is `1^k # (x#y#x#)^{2^k}`: the strings are replayed
//! 2^k times so that a one-pass recognizer sees them alternate.

use std::str::FromStr;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::recognizer::scanner::{BlockKind, FormatScanner, ScanEvent, ScanStep};
use crate::stream::TokenStream;

/// Desk-scale cap: at k = 7 a word is already about six million tokens.
pub const MAX_INSTANCE_K: u32 = 7;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisjInstance {
    k: u32,
    x: BitString,
    y: BitString,
}

impl DisjInstance {
    pub fn new(k: u32, x: BitString, y: BitString) -> Result<Self> {
        if k == 0 || k > MAX_INSTANCE_K {
            return Err(Error::KOutOfRange {
                k,
                cap: MAX_INSTANCE_K,
            });
        }
        let expected = 1u64 << (2 * k);
        for s in [&x, &y] {
            if s.len() as u64 != expected {
                return Err(Error::BitLength {
                    expected,
                    found: s.len() as u64,
                });
            }
        }
        Ok(DisjInstance { k, x, y })
    }

    pub fn from_strs(k: u32, x: &str, y: &str) -> Result<Self> {
        DisjInstance::new(k, BitString::from_str(x)?, BitString::from_str(y)?)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn x(&self) -> &BitString {
        &self.x
    }

    pub fn y(&self) -> &BitString {
        &self.y
    }

    /// Length of each side string, 2^{2k}.
    pub fn side_len(&self) -> u64 {
        1u64 << (2 * self.k)
    }

    /// Number of repetitions in the encoded word, 2^k.
    pub fn repetitions(&self) -> u64 {
        1u64 << self.k
    }

    /// Count of indices where both strings carry a 1.
    pub fn collisions(&self) -> u64 {
        self.x
            .iter()
            .zip(self.y.iter())
            .filter(|&(a, b)| a && b)
            .count() as u64
    }

    pub fn is_member(&self) -> bool {
        self.collisions() == 0
    }

    /// Word length: k + 1 + 3 * 2^k * (2^{2k} + 1).
    pub fn word_len(&self) -> u64 {
        u64::from(self.k) + 1 + 3 * self.repetitions() * (self.side_len() + 1)
    }

    /// The encoded word `1^k # (x#y#x#)^{2^k}`.
    pub fn encode(&self) -> String {
        let mut word = String::with_capacity(self.word_len() as usize);
        for _ in 0..self.k {
            word.push('1');
        }
        word.push('#');
        let x = self.x.to_string();
        let y = self.y.to_string();
        for _ in 0..self.repetitions() {
            word.push_str(&x);
            word.push('#');
            word.push_str(&y);
            word.push('#');
            word.push_str(&x);
            word.push('#');
        }
        debug_assert_eq!(word.len() as u64, self.word_len());
        word
    }

    pub fn token_stream(&self) -> TokenStream {
        TokenStream::from_word(&self.encode()).expect("encoded words are over 0/1/#")
    }

    /// Decodes a word back into an instance. Returns `None` unless the word
    /// is well-formed and every repetition carries the same x, y and x-copy.
    pub fn from_word(word: &str) -> Option<DisjInstance> {
        let mut stream = TokenStream::from_word(word).ok()?;
        let mut scanner = FormatScanner::new();
        let mut x = BitString::default();
        let mut y = BitString::default();
        while let Some(tok) = stream.next_token() {
            match scanner.feed(tok) {
                ScanStep::Rejected => return None,
                ScanStep::Continue | ScanStep::Event(ScanEvent::HeaderDone { .. }) => {}
                ScanStep::Event(ScanEvent::BlockEnd { .. }) => {}
                ScanStep::Event(ScanEvent::BlockBit {
                    repetition,
                    kind,
                    position,
                    bit,
                }) => {
                    if repetition == 1 {
                        match kind {
                            BlockKind::X => x.push(bit),
                            BlockKind::Y => y.push(bit),
                            BlockKind::Z => {
                                if x.bit(position as usize) != bit {
                                    return None;
                                }
                            }
                        }
                    } else {
                        let reference = match kind {
                            BlockKind::X | BlockKind::Z => &x,
                            BlockKind::Y => &y,
                        };
                        if reference.bit(position as usize) != bit {
                            return None;
                        }
                    }
                }
            }
        }
        let k = scanner.finish()?;
        DisjInstance::new(k, x, y).ok()
    }
}
