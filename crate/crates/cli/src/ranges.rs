//! Inclusive range flags: "lo..hi" or a single value.

use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RangeArg {
    pub lo: u64,
    pub hi: u64,
}

impl RangeArg {
    pub fn iter(&self) -> impl Iterator<Item = u64> {
        self.lo..=self.hi
    }

    pub fn single(&self) -> Option<u64> {
        (self.lo == self.hi).then_some(self.lo)
    }
}

impl FromStr for RangeArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |part: &str| {
            part.trim()
                .parse::<u64>()
                .map_err(|_| format!("bad range bound {part:?}"))
        };
        if let Some((lo, hi)) = s.split_once("..") {
            let lo = parse(lo)?;
            let hi = parse(hi)?;
            if lo > hi {
                return Err(format!("empty range {s:?}"));
            }
            Ok(RangeArg { lo, hi })
        } else {
            let v = parse(s)?;
            Ok(RangeArg { lo: v, hi: v })
        }
    }
}
