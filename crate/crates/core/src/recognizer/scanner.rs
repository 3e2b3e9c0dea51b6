//! Streaming format check: accepts exactly the words
//! `1^k # B_1 # B_2 # ... # B_{3*2^k} #` with k >= 1 and every block a
//! binary string of length 2^{2k}.
//!
//! The scanner is a token-at-a-time state machine. It only ever keeps three
//! counters (k, position in block, block index), so its footprint is O(k)
//! cells; [`FormatScanner::cells`] reports the exact charge.

use crate::stream::{ternary_cells, Token, TokenStream};

/// Which of the three blocks of a repetition a bit belongs to: the first
/// copy of x, the y string, or the trailing second copy of x.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    X,
    Y,
    Z,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ScanEvent {
    /// The leading `1^k #` prefix has been consumed.
    HeaderDone { k: u32 },
    /// One block bit, with its repetition (1-based), block kind and
    /// position inside the block.
    BlockBit {
        repetition: u32,
        kind: BlockKind,
        position: u64,
        bit: bool,
    },
    /// The `#` closing a block.
    BlockEnd { repetition: u32, kind: BlockKind },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ScanStep {
    Continue,
    Event(ScanEvent),
    /// Format violation; the scanner stays rejected from here on.
    Rejected,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum State {
    LeadingOnes,
    InBlock,
    AwaitEnd,
    Rejected,
}

// Words beyond this cannot fit in addressable memory anyway.
const MAX_SCAN_K: u32 = 30;

#[derive(Clone, Debug)]
pub struct FormatScanner {
    state: State,
    k: u32,
    block_len: u64,
    blocks_total: u64,
    block_index: u64,
    pos: u64,
}

impl FormatScanner {
    pub fn new() -> Self {
        FormatScanner {
            state: State::LeadingOnes,
            k: 0,
            block_len: 0,
            blocks_total: 0,
            block_index: 0,
            pos: 0,
        }
    }

    pub fn k(&self) -> Option<u32> {
        if self.state == State::LeadingOnes || self.state == State::Rejected {
            None
        } else {
            Some(self.k)
        }
    }

    pub fn is_rejected(&self) -> bool {
        self.state == State::Rejected
    }

    fn reject(&mut self) -> ScanStep {
        self.state = State::Rejected;
        ScanStep::Rejected
    }

    fn repetition(&self) -> u32 {
        (self.block_index / 3) as u32 + 1
    }

    fn kind(&self) -> BlockKind {
        match self.block_index % 3 {
            0 => BlockKind::X,
            1 => BlockKind::Y,
            _ => BlockKind::Z,
        }
    }

    pub fn feed(&mut self, token: Token) -> ScanStep {
        match self.state {
            State::Rejected => ScanStep::Rejected,
            State::LeadingOnes => match token {
                Token::One => {
                    if self.k >= MAX_SCAN_K {
                        return self.reject();
                    }
                    self.k += 1;
                    ScanStep::Continue
                }
                Token::Hash => {
                    if self.k == 0 {
                        return self.reject();
                    }
                    self.block_len = 1u64 << (2 * self.k);
                    self.blocks_total = 3 * (1u64 << self.k);
                    self.state = State::InBlock;
                    ScanStep::Event(ScanEvent::HeaderDone { k: self.k })
                }
                Token::Zero => self.reject(),
            },
            State::InBlock => match token {
                Token::Zero | Token::One => {
                    if self.pos == self.block_len {
                        return self.reject(); // overlong block
                    }
                    let event = ScanEvent::BlockBit {
                        repetition: self.repetition(),
                        kind: self.kind(),
                        position: self.pos,
                        bit: token == Token::One,
                    };
                    self.pos += 1;
                    ScanStep::Event(event)
                }
                Token::Hash => {
                    if self.pos != self.block_len {
                        return self.reject(); // short block
                    }
                    let event = ScanEvent::BlockEnd {
                        repetition: self.repetition(),
                        kind: self.kind(),
                    };
                    self.block_index += 1;
                    self.pos = 0;
                    if self.block_index == self.blocks_total {
                        self.state = State::AwaitEnd;
                    }
                    ScanStep::Event(event)
                }
            },
            State::AwaitEnd => self.reject(), // trailing garbage
        }
    }

    /// Call at end of input: `Some(k)` iff the word ended exactly at the
    /// final block separator.
    pub fn finish(&mut self) -> Option<u32> {
        if self.state == State::AwaitEnd {
            Some(self.k)
        } else {
            self.state = State::Rejected;
            None
        }
    }

    /// Live counter cells: the k tally while the header is being read, then
    /// k plus the in-block position and block-index counters.
    pub fn cells(&self) -> u64 {
        match self.state {
            State::LeadingOnes => ternary_cells(u64::from(self.k)),
            _ => {
                ternary_cells(u64::from(self.k))
                    + ternary_cells(self.block_len)
                    + ternary_cells(self.blocks_total)
            }
        }
    }
}

impl Default for FormatScanner {
    fn default() -> Self {
        FormatScanner::new()
    }
}

/// Drives the scanner over a whole stream: `Some(k)` iff the word is
/// well-formed. Stops reading at the first violation.
pub fn check_format(stream: &mut TokenStream) -> Option<u32> {
    let mut scanner = FormatScanner::new();
    while let Some(tok) = stream.next_token() {
        if let ScanStep::Rejected = scanner.feed(tok) {
            return None;
        }
    }
    scanner.finish()
}
