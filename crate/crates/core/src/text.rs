//! The asymmetric streaming model.
//!
//! The offline string is held in an [`OfflineText`] and may be read at any
//! position, but only through [`OfflineText::char_at`], which counts every
//! query. The online string arrives through an [`OnlineStream`]: symbols are
//! delivered once each, in order, and any attempt to go back is an error.
//!
//! All public indices are 1-based. Intervals are half-open `[l, r)` unless a
//! type says otherwise.
//!
//! Algorithm state is metered by a [`MemoryMeter`] in logical units (one
//! stored symbol or one stored integer), split into three categories so the
//! buffered online window, the carried frontier and the temporary DP rows over
//! the offline text can be reported separately.

use std::cell::Cell;
use std::io::{self, BufReader, Read};

use num_integer::Roots;

use crate::error::{Error, Result};

/// An alphabet symbol. The top three codes are reserved for padding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(u32);

impl Symbol {
    /// Appended to both strings; preserves edit distance.
    pub const PAD_SAME: Symbol = Symbol(u32::MAX);
    /// Appended to the online string in LCS mode.
    pub const PAD_DISTINCT_ONLINE: Symbol = Symbol(u32::MAX - 1);
    /// Appended to the offline string in LCS mode.
    pub const PAD_DISTINCT_OFFLINE: Symbol = Symbol(u32::MAX - 2);
    /// Largest code available to user alphabets.
    pub const MAX_USER_CODE: u32 = u32::MAX - 3;

    pub fn new(code: u32) -> Result<Self> {
        if code > Self::MAX_USER_CODE {
            return Err(Error::ReservedSymbol(code));
        }
        Ok(Symbol(code))
    }

    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_sentinel(self) -> bool {
        self.0 > Self::MAX_USER_CODE
    }
}

impl From<u8> for Symbol {
    fn from(b: u8) -> Self {
        Symbol(b as u32)
    }
}

/// Widens a byte string into symbols.
pub fn symbols_of(bytes: &[u8]) -> Vec<Symbol> {
    bytes.iter().copied().map(Symbol::from).collect()
}

/// Input file encodings.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Alphabet {
    /// One symbol per byte.
    #[default]
    Bytes,
    /// ASCII-whitespace-separated unsigned decimal integers.
    Int,
}

/// Incremental symbol decoder over any reader.
pub struct SymbolReader<R: Read> {
    bytes: io::Bytes<BufReader<R>>,
    alphabet: Alphabet,
}

impl<R: Read> SymbolReader<R> {
    pub fn new(reader: R, alphabet: Alphabet) -> Self {
        SymbolReader {
            bytes: BufReader::new(reader).bytes(),
            alphabet,
        }
    }

    fn next_int(&mut self) -> Option<Result<Symbol>> {
        let mut value: Option<u64> = None;
        loop {
            match self.bytes.next() {
                None => break,
                Some(Err(e)) => return Some(Err(e.into())),
                Some(Ok(b)) if b.is_ascii_whitespace() => {
                    if value.is_some() {
                        break;
                    }
                }
                Some(Ok(b)) if b.is_ascii_digit() => {
                    let v = value.unwrap_or(0) * 10 + (b - b'0') as u64;
                    if v > u32::MAX as u64 {
                        return Some(Err(Error::Parse(format!(
                            "integer symbol above {} is out of range",
                            u32::MAX
                        ))));
                    }
                    value = Some(v);
                }
                Some(Ok(b)) => {
                    return Some(Err(Error::Parse(format!(
                        "unexpected byte 0x{b:02x} in integer alphabet input"
                    ))))
                }
            }
        }
        value.map(|v| Symbol::new(v as u32))
    }
}

impl<R: Read> Iterator for SymbolReader<R> {
    type Item = Result<Symbol>;

    fn next(&mut self) -> Option<Self::Item> {
        match self.alphabet {
            Alphabet::Bytes => self.bytes.next().map(|b| b.map(Symbol::from).map_err(Error::from)),
            Alphabet::Int => self.next_int(),
        }
    }
}

/// Decodes a whole buffer.
pub fn parse_symbols(data: &[u8], alphabet: Alphabet) -> Result<Vec<Symbol>> {
    SymbolReader::new(data, alphabet).collect()
}

/// Random-access offline string with a query counter.
#[derive(Debug)]
pub struct OfflineText {
    symbols: Vec<Symbol>,
    queries: Cell<u64>,
}

impl OfflineText {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        OfflineText {
            symbols,
            queries: Cell::new(0),
        }
    }

    pub fn from_bytes(bytes: &[u8]) -> Self {
        Self::new(symbols_of(bytes))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Reads the symbol at 1-based position `i`.
    pub fn char_at(&self, i: usize) -> Result<Symbol> {
        if i == 0 || i > self.symbols.len() {
            return Err(Error::OutOfBounds {
                index: i,
                len: self.symbols.len(),
            });
        }
        Ok(self.read(i))
    }

    /// Counting read for callers that have already validated `i`.
    #[inline]
    pub(crate) fn read(&self, i: usize) -> Symbol {
        self.queries.set(self.queries.get() + 1);
        self.symbols[i - 1]
    }

    pub fn query_count(&self) -> u64 {
        self.queries.get()
    }

    /// Validates a half-open reference against this text.
    pub fn check(&self, s: SubstringRef) -> Result<()> {
        s.validate(self.len())
    }

    /// The whole text as a half-open reference.
    pub fn full(&self) -> SubstringRef {
        SubstringRef {
            l: 1,
            r_exclusive: self.len() + 1,
        }
    }
}

/// Half-open 1-based interval `[l, r_exclusive)` into the offline text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SubstringRef {
    pub l: usize,
    pub r_exclusive: usize,
}

impl SubstringRef {
    pub fn new(l: usize, r_exclusive: usize) -> Self {
        SubstringRef { l, r_exclusive }
    }

    /// From a closed interval `[l, r]`.
    pub fn closed(l: usize, r: usize) -> Self {
        SubstringRef { l, r_exclusive: r + 1 }
    }

    pub fn len(&self) -> usize {
        self.r_exclusive.saturating_sub(self.l)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.l >= 1 && self.l <= self.r_exclusive && self.r_exclusive <= n + 1 {
            Ok(())
        } else {
            Err(Error::InvalidRange {
                l: self.l,
                r_exclusive: self.r_exclusive,
                len: n,
            })
        }
    }
}

/// Memory accounting categories.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Category {
    /// Buffered online symbols.
    StreamBuffer,
    /// Frontier tables, recursion summaries, mapping tuples.
    FrontierState,
    /// Temporary DP rows over offline substrings or stored windows.
    ScratchOffline,
}

impl Category {
    fn slot(self) -> usize {
        match self {
            Category::StreamBuffer => 0,
            Category::FrontierState => 1,
            Category::ScratchOffline => 2,
        }
    }
}

/// Peak usage per category, in logical units.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MemoryPeaks {
    pub stream_buffer: usize,
    pub frontier_state: usize,
    pub scratch_offline: usize,
}

/// Running current/peak counters. Units are registered through RAII
/// [`Allocation`] handles so they are released on every exit path.
#[derive(Debug, Default)]
pub struct MemoryMeter {
    current: [Cell<usize>; 3],
    peak: [Cell<usize>; 3],
}

impl MemoryMeter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn alloc(&self, category: Category, units: usize) -> Allocation<'_> {
        self.add(category, units);
        Allocation {
            meter: self,
            category,
            units,
        }
    }

    pub fn current(&self, category: Category) -> usize {
        self.current[category.slot()].get()
    }

    pub fn peak(&self, category: Category) -> usize {
        self.peak[category.slot()].get()
    }

    pub fn peaks(&self) -> MemoryPeaks {
        MemoryPeaks {
            stream_buffer: self.peak(Category::StreamBuffer),
            frontier_state: self.peak(Category::FrontierState),
            scratch_offline: self.peak(Category::ScratchOffline),
        }
    }

    fn add(&self, category: Category, units: usize) {
        let s = category.slot();
        let cur = self.current[s].get() + units;
        self.current[s].set(cur);
        if cur > self.peak[s].get() {
            self.peak[s].set(cur);
        }
    }

    fn sub(&self, category: Category, units: usize) {
        let s = category.slot();
        let cur = self.current[s].get();
        debug_assert!(cur >= units);
        self.current[s].set(cur - units);
    }
}

/// Units held against a [`MemoryMeter`] until dropped.
#[derive(Debug)]
pub struct Allocation<'m> {
    meter: &'m MemoryMeter,
    category: Category,
    units: usize,
}

impl Allocation<'_> {
    pub fn units(&self) -> usize {
        self.units
    }

    pub fn resize(&mut self, units: usize) {
        if units > self.units {
            self.meter.add(self.category, units - self.units);
        } else {
            self.meter.sub(self.category, self.units - units);
        }
        self.units = units;
    }
}

impl Drop for Allocation<'_> {
    fn drop(&mut self) {
        self.meter.sub(self.category, self.units);
    }
}

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

fn digest_step(mut h: u64, position: usize, symbol: Symbol) -> u64 {
    for b in (position as u64)
        .to_le_bytes()
        .into_iter()
        .chain(symbol.code().to_le_bytes())
    {
        h ^= b as u64;
        h = h.wrapping_mul(FNV_PRIME);
    }
    h
}

/// FNV-1a digest over `(position, symbol)` pairs. Equal to
/// [`OnlineStream::digest`] after a stream has delivered exactly `symbols`,
/// in order, once each.
pub fn delivery_digest<'a>(symbols: impl IntoIterator<Item = &'a Symbol>) -> u64 {
    symbols
        .into_iter()
        .enumerate()
        .fold(FNV_OFFSET, |h, (i, &s)| digest_step(h, i + 1, s))
}

type Source<'a> = Box<dyn Iterator<Item = Result<Symbol>> + 'a>;

/// Single-pass, in-order online string.
///
/// The stream knows the original length `n` (equal to the offline length)
/// and, when padded, appends a fixed symbol up to its padded length. A source
/// that runs short of `n` or keeps going past it is a model violation.
pub struct OnlineStream<'a> {
    source: Source<'a>,
    original_len: usize,
    len: usize,
    pad: Symbol,
    cursor: usize,
    source_checked: bool,
    digest: u64,
}

impl std::fmt::Debug for OnlineStream<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("OnlineStream")
            .field("original_len", &self.original_len)
            .field("len", &self.len)
            .field("delivered", &self.delivered())
            .finish_non_exhaustive()
    }
}

impl<'a> OnlineStream<'a> {
    /// Stream over an in-memory sequence.
    pub fn from_symbols(symbols: Vec<Symbol>) -> OnlineStream<'static> {
        let n = symbols.len();
        OnlineStream::padded(symbols.into_iter().map(Ok), n, Symbol::PAD_SAME, n)
    }

    /// Stream over a fallible source expected to yield exactly `n` symbols.
    pub fn from_source<I>(source: I, n: usize) -> Self
    where
        I: Iterator<Item = Result<Symbol>> + 'a,
    {
        Self::padded(source, n, Symbol::PAD_SAME, n)
    }

    /// Stream of `n` source symbols followed by `padded_len - n` copies of `pad`.
    pub fn padded<I>(source: I, n: usize, pad: Symbol, padded_len: usize) -> Self
    where
        I: Iterator<Item = Result<Symbol>> + 'a,
    {
        assert!(padded_len >= n);
        OnlineStream {
            source: Box::new(source),
            original_len: n,
            len: padded_len,
            pad,
            cursor: 1,
            source_checked: false,
            digest: FNV_OFFSET,
        }
    }

    /// Total (padded) length.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn original_len(&self) -> usize {
        self.original_len
    }

    /// Number of symbols delivered so far.
    pub fn delivered(&self) -> usize {
        self.cursor - 1
    }

    pub fn remaining(&self) -> usize {
        self.len + 1 - self.cursor
    }

    pub fn digest(&self) -> u64 {
        self.digest
    }

    fn ensure_source_exhausted(&mut self) -> Result<()> {
        if self.source_checked {
            return Ok(());
        }
        self.source_checked = true;
        match self.source.next() {
            None => Ok(()),
            Some(Err(e)) => Err(e),
            Some(Ok(_)) => Err(Error::Model(format!(
                "online string is longer than the offline string ({} symbols)",
                self.original_len
            ))),
        }
    }

    /// Delivers the next symbol, or `None` once every position is consumed.
    pub fn next_symbol(&mut self) -> Result<Option<Symbol>> {
        if self.cursor > self.original_len {
            self.ensure_source_exhausted()?;
        }
        if self.cursor > self.len {
            return Ok(None);
        }
        let symbol = if self.cursor <= self.original_len {
            match self.source.next() {
                Some(s) => s?,
                None => {
                    return Err(Error::Model(format!(
                        "online string ended after {} symbols, expected {}",
                        self.cursor - 1,
                        self.original_len
                    )))
                }
            }
        } else {
            self.pad
        };
        self.digest = digest_step(self.digest, self.cursor, symbol);
        self.cursor += 1;
        Ok(Some(symbol))
    }

    /// Restarting is only legal before the first delivery.
    pub fn rewind(&mut self) -> Result<()> {
        if self.cursor > 1 {
            return Err(Error::SinglePass(format!(
                "cannot rewind: {} symbols already delivered",
                self.cursor - 1
            )));
        }
        Ok(())
    }

    /// Appends the next `count` symbols to `buf`. Running out early is an error.
    pub fn fill(&mut self, buf: &mut Vec<Symbol>, count: usize) -> Result<()> {
        buf.reserve(count);
        for _ in 0..count {
            match self.next_symbol()? {
                Some(s) => buf.push(s),
                None => {
                    return Err(Error::SinglePass(format!(
                        "requested symbols past the end of the stream (length {})",
                        self.len
                    )))
                }
            }
        }
        Ok(())
    }

    /// Reads the stream in consecutive windows of `w` symbols and hands each
    /// buffered window to every consumer before reading the next one. The
    /// window buffer is metered as stream buffer. Returns the window count.
    pub fn fan_out(
        &mut self,
        w: usize,
        meter: &MemoryMeter,
        consumers: &mut [&mut dyn WindowConsumer],
    ) -> Result<usize> {
        if w == 0 {
            return Err(Error::Config("window length must be at least 1".into()));
        }
        let _buffer = meter.alloc(Category::StreamBuffer, w);
        let mut window = Vec::with_capacity(w);
        let mut index = 0;
        while self.remaining() > 0 {
            let take = w.min(self.remaining());
            window.clear();
            self.fill(&mut window, take)?;
            index += 1;
            for c in consumers.iter_mut() {
                c.consume(index, &window)?;
            }
        }
        self.ensure_source_exhausted()?;
        Ok(index)
    }
}

/// Receives each buffered window of a fanned-out stream.
pub trait WindowConsumer {
    fn consume(&mut self, index: usize, window: &[Symbol]) -> Result<()>;
}

/// Padding flavour.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PadMode {
    /// Same sentinel on both sides; edit distance is unchanged.
    Ed,
    /// Distinct sentinels per side; LCS length is unchanged.
    Lcs,
}

impl PadMode {
    pub fn offline_pad(self) -> Symbol {
        match self {
            PadMode::Ed => Symbol::PAD_SAME,
            PadMode::Lcs => Symbol::PAD_DISTINCT_OFFLINE,
        }
    }

    pub fn online_pad(self) -> Symbol {
        match self {
            PadMode::Ed => Symbol::PAD_SAME,
            PadMode::Lcs => Symbol::PAD_DISTINCT_ONLINE,
        }
    }
}

/// Smallest multiple of `w` that is at least `n`.
pub fn padded_len(n: usize, w: usize) -> usize {
    assert!(w >= 1);
    n.div_ceil(w) * w
}

/// Window length for the square-root algorithms: `max(1, ⌈√n⌉)`.
pub fn sqrt_window(n: usize) -> usize {
    let s = n.sqrt();
    if s * s == n {
        s.max(1)
    } else {
        s + 1
    }
}

/// Pads the offline text to the block multiple.
pub fn pad_offline(mut offline: Vec<Symbol>, mode: PadMode, w: usize) -> OfflineText {
    let n = padded_len(offline.len(), w);
    offline.resize(n, mode.offline_pad());
    OfflineText::new(offline)
}

/// Pads both strings to `w·⌈n/w⌉`. Returns the padded pair and the original `n`.
pub fn pad_pair(
    offline: Vec<Symbol>,
    online: Vec<Symbol>,
    mode: PadMode,
    w: usize,
) -> Result<(OfflineText, OnlineStream<'static>, usize)> {
    if w == 0 {
        return Err(Error::Config("block length must be at least 1".into()));
    }
    if offline.len() != online.len() {
        return Err(Error::Model(format!(
            "offline and online strings must have equal length ({} vs {})",
            offline.len(),
            online.len()
        )));
    }
    let n = offline.len();
    let padded = padded_len(n, w);
    let text = pad_offline(offline, mode, w);
    let stream = OnlineStream::padded(online.into_iter().map(Ok), n, mode.online_pad(), padded);
    Ok((text, stream, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn drain(stream: &mut OnlineStream<'_>) -> Vec<Symbol> {
        let mut out = Vec::new();
        while let Some(s) = stream.next_symbol().unwrap() {
            out.push(s);
        }
        out
    }

    #[test]
    fn char_at_counts_queries() {
        let t = OfflineText::from_bytes(b"aba");
        assert_eq!(t.char_at(2).unwrap(), Symbol::from(b'b'));
        assert_eq!(t.query_count(), 1);
        let t = OfflineText::from_bytes(b"a");
        assert_eq!(t.char_at(1).unwrap(), Symbol::from(b'a'));
    }

    #[test]
    fn char_at_out_of_range() {
        let t = OfflineText::from_bytes(b"ab");
        assert!(matches!(t.char_at(3), Err(Error::OutOfBounds { index: 3, len: 2 })));
        assert!(t.char_at(0).is_err());
        assert_eq!(t.query_count(), 0);
    }

    #[test]
    fn stream_delivers_in_order_then_ends() {
        let mut s = OnlineStream::from_symbols(symbols_of(b"ab"));
        assert_eq!(s.next_symbol().unwrap(), Some(Symbol::from(b'a')));
        assert_eq!(s.next_symbol().unwrap(), Some(Symbol::from(b'b')));
        assert_eq!(s.next_symbol().unwrap(), None);
        assert_eq!(s.next_symbol().unwrap(), None);
        assert_eq!(s.delivered(), 2);

        let mut e = OnlineStream::from_symbols(Vec::new());
        assert_eq!(e.next_symbol().unwrap(), None);
    }

    #[test]
    fn rewind_after_delivery_is_rejected() {
        let mut s = OnlineStream::from_symbols(symbols_of(b"ab"));
        s.rewind().unwrap();
        s.next_symbol().unwrap();
        assert!(matches!(s.rewind(), Err(Error::SinglePass(_))));
    }

    #[test]
    fn digest_matches_delivery() {
        let data = symbols_of(b"hello stream");
        let mut s = OnlineStream::from_symbols(data.clone());
        let got = drain(&mut s);
        assert_eq!(got, data);
        assert_eq!(s.digest(), delivery_digest(&data));
    }

    #[test]
    fn short_and_long_sources_are_model_violations() {
        let short = symbols_of(b"ab");
        let mut s = OnlineStream::from_source(short.into_iter().map(Ok), 3);
        s.next_symbol().unwrap();
        s.next_symbol().unwrap();
        assert!(matches!(s.next_symbol(), Err(Error::Model(_))));

        let long = symbols_of(b"abcd");
        let mut s = OnlineStream::from_source(long.into_iter().map(Ok), 3);
        for _ in 0..3 {
            s.next_symbol().unwrap();
        }
        assert!(matches!(s.next_symbol(), Err(Error::Model(_))));
    }

    #[test]
    fn pad_ed_mode() {
        let (t, mut s, n) = pad_pair(symbols_of(b"abcde"), symbols_of(b"abcdf"), PadMode::Ed, 3).unwrap();
        assert_eq!(n, 5);
        assert_eq!(t.len(), 6);
        assert_eq!(s.len(), 6);
        assert_eq!(t.char_at(6).unwrap(), Symbol::PAD_SAME);
        let online = drain(&mut s);
        assert_eq!(online[5], Symbol::PAD_SAME);
    }

    #[test]
    fn pad_lcs_mode_uses_distinct_sentinels() {
        let (t, mut s, _) = pad_pair(symbols_of(b"abcde"), symbols_of(b"abcdf"), PadMode::Lcs, 3).unwrap();
        assert_eq!(t.char_at(6).unwrap(), Symbol::PAD_DISTINCT_OFFLINE);
        assert_eq!(drain(&mut s)[5], Symbol::PAD_DISTINCT_ONLINE);
    }

    #[test]
    fn pad_noop_when_divisible() {
        let (t, s, _) = pad_pair(symbols_of(b"abcd"), symbols_of(b"abcd"), PadMode::Ed, 2).unwrap();
        assert_eq!(t.len(), 4);
        assert_eq!(s.len(), 4);
        for i in 1..=4 {
            assert!(!t.char_at(i).unwrap().is_sentinel());
        }
    }

    #[test]
    fn pad_rejects_unequal_lengths() {
        let err = pad_pair(symbols_of(b"abc"), symbols_of(b"ab"), PadMode::Ed, 2).unwrap_err();
        assert!(err.is_model_violation());
    }

    #[test]
    fn sentinels_are_distinct_and_reserved() {
        assert_ne!(Symbol::PAD_DISTINCT_ONLINE, Symbol::PAD_DISTINCT_OFFLINE);
        assert_ne!(Symbol::PAD_SAME, Symbol::PAD_DISTINCT_ONLINE);
        assert_ne!(Symbol::PAD_SAME, Symbol::PAD_DISTINCT_OFFLINE);
        for code in [u32::MAX, u32::MAX - 1, u32::MAX - 2] {
            assert!(matches!(Symbol::new(code), Err(Error::ReservedSymbol(_))));
        }
        assert!(Symbol::new(Symbol::MAX_USER_CODE).is_ok());
    }

    #[test]
    fn int_alphabet_parsing() {
        let s = parse_symbols(b" 3 14\n15\t9 ", Alphabet::Int).unwrap();
        assert_eq!(s.iter().map(|s| s.code()).collect::<Vec<_>>(), vec![3, 14, 15, 9]);
        assert!(parse_symbols(b"1 x", Alphabet::Int).is_err());
        assert!(parse_symbols(b"4294967295", Alphabet::Int).is_err());
        assert!(parse_symbols(b"99999999999", Alphabet::Int).is_err());
        assert_eq!(parse_symbols(b"ab", Alphabet::Bytes).unwrap(), symbols_of(b"ab"));
    }

    #[test]
    fn meter_tracks_peak() {
        let m = MemoryMeter::new();
        {
            let mut a = m.alloc(Category::FrontierState, 5);
            let _b = m.alloc(Category::FrontierState, 3);
            a.resize(2);
            assert_eq!(m.current(Category::FrontierState), 5);
        }
        assert_eq!(m.current(Category::FrontierState), 0);
        assert_eq!(m.peak(Category::FrontierState), 8);
        assert_eq!(m.peak(Category::StreamBuffer), 0);
    }

    struct Collect(Vec<(usize, Vec<Symbol>)>);
    impl WindowConsumer for Collect {
        fn consume(&mut self, index: usize, window: &[Symbol]) -> Result<()> {
            self.0.push((index, window.to_vec()));
            Ok(())
        }
    }

    #[test]
    fn fan_out_feeds_every_consumer_each_window_once() {
        let data = symbols_of(b"abcdefgh");
        let mut s = OnlineStream::from_symbols(data.clone());
        let m = MemoryMeter::new();
        let (mut a, mut b) = (Collect(Vec::new()), Collect(Vec::new()));
        let windows = s.fan_out(3, &m, &mut [&mut a, &mut b]).unwrap();
        assert_eq!(windows, 3);
        assert_eq!(a.0, b.0);
        let flat: Vec<Symbol> = a.0.iter().flat_map(|(_, w)| w.clone()).collect();
        assert_eq!(flat, data);
        assert_eq!(m.peak(Category::StreamBuffer), 3);
        assert_eq!(s.digest(), delivery_digest(&data));
    }

    #[test]
    fn sqrt_window_values() {
        assert_eq!(sqrt_window(0), 1);
        assert_eq!(sqrt_window(1), 1);
        assert_eq!(sqrt_window(36), 6);
        assert_eq!(sqrt_window(37), 7);
        assert_eq!(padded_len(5, 3), 6);
        assert_eq!(padded_len(0, 3), 0);
    }
}
