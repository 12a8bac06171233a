use std::fmt;
use std::str::FromStr;

/// Inclusive range of positive integers, written `a..b` or `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub lo: usize,
    pub hi: usize,
}

impl Span {
    pub fn single(v: usize) -> Self {
        Self { lo: v, hi: v }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> {
        self.lo..=self.hi
    }

    pub fn is_single(&self) -> bool {
        self.lo == self.hi
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| -> Result<usize, String> {
            let v: usize = t
                .trim()
                .parse()
                .map_err(|_| format!("`{t}` is not a non-negative integer"))?;
            if v == 0 {
                return Err("values must be at least 1".into());
            }
            Ok(v)
        };
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {lo}..{hi}"));
        }
        Ok(Self { lo, hi })
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_single() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_ranges_and_singles() {
        assert_eq!("1..20".parse::<Span>().unwrap(), Span { lo: 1, hi: 20 });
        assert_eq!("3..=7".parse::<Span>().unwrap(), Span { lo: 3, hi: 7 });
        assert_eq!("5".parse::<Span>().unwrap(), Span::single(5));
        assert!("0".parse::<Span>().is_err());
        assert!("4..2".parse::<Span>().is_err());
        assert!("a..2".parse::<Span>().is_err());
    }
}
