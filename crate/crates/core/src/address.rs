//! Preperiodic addresses `j·(i)^∞` over the index alphabet `1..=m`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

/// A finite word over the index alphabet.
pub type Word = Vec<u32>;

/// An eventually periodic address, always stored in canonical form: the
/// period is primitive and the preperiod is as short as possible, so two
/// `Address` values denote the same sequence iff they are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Address {
    preperiod: Word,
    period: Word,
}

impl Address {
    /// # Panics
    /// Panics if `period` is empty.
    pub fn new(preperiod: Word, period: Word) -> Self {
        assert!(!period.is_empty(), "an address needs a nonempty period");
        let mut period = primitive_root(&period).to_vec();
        let mut preperiod = preperiod;
        while let (Some(&a), Some(&b)) = (preperiod.last(), period.last()) {
            if a != b {
                break;
            }
            preperiod.pop();
            period.rotate_right(1);
        }
        Address { preperiod, period }
    }

    pub fn periodic(period: Word) -> Self {
        Self::new(Vec::new(), period)
    }

    pub fn preperiod(&self) -> &[u32] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u32] {
        &self.period
    }

    /// `word · self`.
    pub fn prefixed(&self, word: &[u32]) -> Address {
        let mut pre = word.to_vec();
        pre.extend_from_slice(&self.preperiod);
        Address::new(pre, self.period.clone())
    }

    /// The `n`-th symbol (0-based).
    pub fn symbol(&self, n: usize) -> u32 {
        if n < self.preperiod.len() {
            self.preperiod[n]
        } else {
            self.period[(n - self.preperiod.len()) % self.period.len()]
        }
    }

    pub fn prefix(&self, len: usize) -> Word {
        (0..len).map(|n| self.symbol(n)).collect()
    }

    /// The shifted address `σⁿ(self)`.
    pub fn shift(&self, n: usize) -> Address {
        if n <= self.preperiod.len() {
            Address::new(self.preperiod[n..].to_vec(), self.period.clone())
        } else {
            let k = (n - self.preperiod.len()) % self.period.len();
            let mut period = self.period.clone();
            period.rotate_left(k);
            Address::new(Vec::new(), period)
        }
    }

    /// Expanded rendering of the first `len` symbols followed by an ellipsis.
    pub fn expanded(&self, len: usize) -> String {
        let word = self.prefix(len);
        let mut s = render_word(&word, self.uses_wide_symbols());
        s.push('…');
        s
    }

    fn uses_wide_symbols(&self) -> bool {
        self.preperiod.iter().chain(&self.period).any(|&i| i > 9)
    }

    /// Parses the `j1…jk(i1…il)^∞` rendering. When any index exceeds 9 the
    /// rendering is comma-separated, with a comma closing the preperiod and a
    /// trailing comma after a one-symbol period: `12,(3,)^∞`.
    pub fn parse(text: &str) -> Option<Address> {
        let text = text.trim();
        let open = text.find('(')?;
        let rest = text[open + 1..].strip_suffix(")^∞")?;
        let pre = parse_word(&text[..open])?;
        let per = parse_word(rest)?;
        if per.is_empty() {
            return None;
        }
        Some(Address::new(pre, per))
    }
}

fn parse_word(s: &str) -> Option<Word> {
    if s.is_empty() {
        return Some(Vec::new());
    }
    if s.contains(',') {
        s.split(',').filter(|t| !t.trim().is_empty()).map(|t| t.trim().parse().ok()).collect()
    } else {
        s.chars().map(|c| c.to_digit(10)).collect()
    }
}

pub fn render_word(word: &[u32], wide: bool) -> String {
    let parts: Vec<String> = word.iter().map(|i| i.to_string()).collect();
    parts.join(if wide { "," } else { "" })
}

/// Smallest `r` with `word = r^k`.
fn primitive_root(word: &[u32]) -> &[u32] {
    let n = word.len();
    for d in 1..n {
        if n % d == 0 && (d..n).all(|i| word[i] == word[i - d]) {
            return &word[..d];
        }
    }
    word
}

impl Ord for Address {
    /// Lexicographic order of the infinite sequences.
    fn cmp(&self, other: &Self) -> Ordering {
        let len = self.preperiod.len().max(other.preperiod.len()) + self.period.len() * other.period.len();
        for n in 0..len {
            match self.symbol(n).cmp(&other.symbol(n)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Address {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.uses_wide_symbols() {
            return write!(f, "{}({})^∞", render_word(&self.preperiod, false), render_word(&self.period, false));
        }
        for i in &self.preperiod {
            write!(f, "{i},")?;
        }
        let tail = if self.period.len() == 1 { "," } else { "" };
        write!(f, "({}{tail})^∞", render_word(&self.period, true))
    }
}

impl Serialize for Address {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
