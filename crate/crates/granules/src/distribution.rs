use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::Result;
use crate::granule::Granule;
use crate::Rational;

/// The probability table of the meet of two granules: entry `(i, j)` holds
/// `|a_i ∩ b_j| / n` for block `i` of the first granule and block `j` of the
/// second. Zero entries are not stored.
///
/// The total mass never exceeds `m/n`, where `m` is the smaller of the two
/// carrier cardinalities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeetDistribution {
    entries: BTreeMap<(usize, usize), Rational>,
    rows: usize,
    cols: usize,
    total: Rational,
    bound: Rational,
}

impl MeetDistribution {
    pub fn entry(&self, i: usize, j: usize) -> Rational {
        self.entries
            .get(&(i, j))
            .copied()
            .unwrap_or_else(Rational::zero)
    }

    /// Nonzero entries in block-index order.
    pub fn nonzero(&self) -> impl Iterator<Item = ((usize, usize), Rational)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    /// Block count of the first operand.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Block count of the second operand.
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn total(&self) -> Rational {
        self.total
    }

    /// The mass bound `m/n`.
    pub fn bound(&self) -> Rational {
        self.bound
    }
}

impl Granule {
    /// Probability distribution of the meet of `self` and `other`.
    pub fn meet_distribution(&self, other: &Granule) -> Result<MeetDistribution> {
        let n = self.universe().len() as i128;
        if self.universe() != other.universe() {
            return Err(crate::error::Error::UniverseMismatch);
        }
        let mut entries = BTreeMap::new();
        let mut total = Rational::zero();
        for (i, a) in self.blocks().iter().enumerate() {
            for (j, b) in other.blocks().iter().enumerate() {
                let count = (*a & *b).len();
                if count > 0 {
                    let p = Rational::new(count as i128, n);
                    entries.insert((i, j), p);
                    total += p;
                }
            }
        }
        let m = self.carrier().len().min(other.carrier().len());
        Ok(MeetDistribution {
            entries,
            rows: self.block_count(),
            cols: other.block_count(),
            total,
            bound: Rational::new(m as i128, n),
        })
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::universe::Universe;

    fn frac(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn worked_distribution() {
        let u = Universe::numbered(4).unwrap();
        let a = Granule::parse("{{1,2},{3,4}}", &u).unwrap();
        let b = Granule::parse("{{1,2,3},{4}}", &u).unwrap();
        let d = a.meet_distribution(&b).unwrap();
        assert_eq!(d.entry(0, 0), frac(1, 2));
        assert_eq!(d.entry(1, 0), frac(1, 4));
        assert_eq!(d.entry(1, 1), frac(1, 4));
        assert_eq!(d.entry(0, 1), Rational::zero());
        assert_eq!(d.total(), Rational::new(1, 1));
        assert_eq!(d.bound(), Rational::new(1, 1));
        assert_eq!(d.nonzero().count(), 3);
    }

    #[test]
    fn disjoint_carriers_give_zero_mass() {
        let u = Universe::numbered(4).unwrap();
        let a = Granule::parse("{{1},{2}}", &u).unwrap();
        let b = Granule::parse("{{3,4}}", &u).unwrap();
        let d = a.meet_distribution(&b).unwrap();
        assert_eq!(d.total(), Rational::zero());
        assert_eq!(d.nonzero().count(), 0);
    }

    #[test]
    fn equal_quotient_granules_have_diagonal_mass_one() {
        let u = Universe::numbered(4).unwrap();
        let a = Granule::parse("{{1,2},{3,4}}", &u).unwrap();
        let d = a.meet_distribution(&a).unwrap();
        assert_eq!(d.entry(0, 0), frac(1, 2));
        assert_eq!(d.entry(1, 1), frac(1, 2));
        assert_eq!(d.total(), Rational::new(1, 1));
    }

    #[test]
    fn mismatched_universes_rejected() {
        let a = Granule::top(Universe::numbered(3).unwrap());
        let b = Granule::top(Universe::numbered(4).unwrap());
        assert!(a.meet_distribution(&b).is_err());
    }
}
