use core::fmt;
use core::num::NonZeroU32;
use core::str::FromStr;

/// A 4-byte autonomous system number. Zero is reserved and never valid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AsNumber(NonZeroU32);

impl AsNumber {
    pub const MIN: AsNumber = AsNumber(NonZeroU32::MIN);
    pub const MAX: AsNumber = AsNumber(NonZeroU32::MAX);

    pub const fn new(value: u32) -> Option<Self> {
        match NonZeroU32::new(value) {
            Some(v) => Some(AsNumber(v)),
            None => None,
        }
    }

    #[inline]
    pub const fn get(self) -> u32 {
        self.0.get()
    }
}

impl fmt::Display for AsNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<NonZeroU32> for AsNumber {
    fn from(v: NonZeroU32) -> Self {
        AsNumber(v)
    }
}

impl TryFrom<u32> for AsNumber {
    type Error = InvalidAsNumber;

    fn try_from(value: u32) -> Result<Self, Self::Error> {
        AsNumber::new(value).ok_or(InvalidAsNumber)
    }
}

/// Returned when a token is not a decimal integer in `1..=4294967295`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InvalidAsNumber;

impl fmt::Display for InvalidAsNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("not an AS number in 1..=4294967295")
    }
}

impl core::error::Error for InvalidAsNumber {}

impl FromStr for AsNumber {
    type Err = InvalidAsNumber;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        // u32::from_str accepts a leading '+', AS numbers do not
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(InvalidAsNumber);
        }
        s.parse::<u32>().ok().and_then(AsNumber::new).ok_or(InvalidAsNumber)
    }
}
