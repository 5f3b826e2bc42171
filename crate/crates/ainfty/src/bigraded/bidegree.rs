use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use crate::error::Error;

/// (cohomological, Adams) degree. Orders by Adams degree first.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Bidegree {
    pub coh: i64,
    pub adams: i64,
}

impl Bidegree {
    pub const ZERO: Bidegree = Bidegree { coh: 0, adams: 0 };

    pub const fn new(coh: i64, adams: i64) -> Self {
        Bidegree { coh, adams }
    }

    pub fn is_odd(&self) -> bool {
        self.coh.rem_euclid(2) == 1
    }

    /// `"i,j"`, the key format used in reports.
    pub fn key(&self) -> String {
        format!("{},{}", self.coh, self.adams)
    }
}

impl Ord for Bidegree {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.adams, self.coh).cmp(&(other.adams, other.coh))
    }
}

impl PartialOrd for Bidegree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Bidegree {
    type Output = Bidegree;
    fn add(self, o: Bidegree) -> Bidegree {
        Bidegree::new(self.coh + o.coh, self.adams + o.adams)
    }
}

impl Sub for Bidegree {
    type Output = Bidegree;
    fn sub(self, o: Bidegree) -> Bidegree {
        Bidegree::new(self.coh - o.coh, self.adams - o.adams)
    }
}

impl Neg for Bidegree {
    type Output = Bidegree;
    fn neg(self) -> Bidegree {
        Bidegree::new(-self.coh, -self.adams)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.coh, self.adams)
    }
}

impl FromStr for Bidegree {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut parts = t.split(',');
        let parse = |p: Option<&str>| -> Result<i64, Error> {
            p.ok_or_else(|| Error::Malformed(format!("bad bidegree {s:?}")))?
                .trim()
                .parse()
                .map_err(|_| Error::Malformed(format!("bad bidegree {s:?}")))
        };
        let b = Bidegree::new(parse(parts.next())?, parse(parts.next())?);
        if parts.next().is_some() {
            return Err(Error::Malformed(format!("bad bidegree {s:?}")));
        }
        Ok(b)
    }
}

/// Sign of swapping elements of degrees `d1` and `d2`; Adams degrees do not matter.
pub fn koszul_sign(d1: Bidegree, d2: Bidegree) -> i64 {
    if d1.is_odd() && d2.is_odd() {
        -1
    } else {
        1
    }
}

/// True when (-1)^e is +1.
pub fn even(e: i64) -> bool {
    e.rem_euclid(2) == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn koszul_examples() {
        assert_eq!(koszul_sign(Bidegree::new(0, 5), Bidegree::new(0, 7)), 1);
        assert_eq!(koszul_sign(Bidegree::new(1, 0), Bidegree::new(1, 0)), -1);
        assert_eq!(koszul_sign(Bidegree::new(2, 3), Bidegree::new(3, 1)), 1);
        assert_eq!(koszul_sign(Bidegree::new(-1, 3), Bidegree::new(3, 1)), -1);
    }

    #[test]
    fn koszul_sign_symmetric_and_multiplicative() {
        for a in -3..4 {
            for b in -3..4 {
                for c in -3..4 {
                    let (x, y, z) = (Bidegree::new(a, 1), Bidegree::new(b, -2), Bidegree::new(c, 0));
                    assert_eq!(koszul_sign(x, y), koszul_sign(y, x));
                    assert_eq!(koszul_sign(x + y, z), koszul_sign(x, z) * koszul_sign(y, z));
                }
            }
        }
    }

    #[test]
    fn ordering_is_adams_first() {
        let mut v = vec![Bidegree::new(3, 0), Bidegree::new(-1, 1), Bidegree::new(0, 0)];
        v.sort();
        assert_eq!(v, vec![Bidegree::new(0, 0), Bidegree::new(3, 0), Bidegree::new(-1, 1)]);
    }

    #[test]
    fn parse_key() {
        let b: Bidegree = "-2,3".parse().unwrap();
        assert_eq!(b, Bidegree::new(-2, 3));
        assert_eq!(b.key(), "-2,3");
        assert!("1".parse::<Bidegree>().is_err());
    }
}
