//! Published supports shipped with the binary.

/// Weight-27 words of the non-extended code of designed distance 27, for
/// m = 8..16, in the log-support text format.
pub const T27: &str = include_str!("../fixtures/t27.txt");

/// A weight-23 word of the non-extended code of designed distance 23 at
/// m = 16.
pub const T23: &str = include_str!("../fixtures/t23.txt");
