use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::block::Block;
use crate::error::{Error, Result};
use crate::granule::Granule;
use crate::universe::Universe;
use crate::Rational;

/// Absolute tolerance used when comparing entropy values.
pub const ENTROPY_TOLERANCE: f64 = 1e-9;

/// Selects one of the five subsethood measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasureKind {
    Sh1,
    Sh2,
    Sh3,
    Sh4,
    Sh5,
}

impl MeasureKind {
    pub const ALL: [MeasureKind; 5] = [
        MeasureKind::Sh1,
        MeasureKind::Sh2,
        MeasureKind::Sh3,
        MeasureKind::Sh4,
        MeasureKind::Sh5,
    ];

    pub fn index(self) -> usize {
        match self {
            MeasureKind::Sh1 => 1,
            MeasureKind::Sh2 => 2,
            MeasureKind::Sh3 => 3,
            MeasureKind::Sh4 => 4,
            MeasureKind::Sh5 => 5,
        }
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sh{}", self.index())
    }
}

impl FromStr for MeasureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sh1" | "1" => Ok(MeasureKind::Sh1),
            "sh2" | "2" => Ok(MeasureKind::Sh2),
            "sh3" | "3" => Ok(MeasureKind::Sh3),
            "sh4" | "4" => Ok(MeasureKind::Sh4),
            "sh5" | "5" => Ok(MeasureKind::Sh5),
            other => Err(Error::Parse {
                what: "measure kind",
                msg: format!("expected sh1..sh5, got `{other}`"),
            }),
        }
    }
}

/// An exact measure value in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MeasureValue(Rational);

impl MeasureValue {
    fn new(value: Rational) -> Self {
        debug_assert!(value >= Rational::zero() && value <= Rational::new(1, 1));
        MeasureValue(value)
    }

    pub fn value(self) -> Rational {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for MeasureValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for MeasureValue {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0.to_string())
    }
}

/// An entropy value. `clamped` records that some term hit a zero subsethood
/// with positive probability, where the log term is clamped to `log n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyValue {
    pub value: f64,
    pub clamped: bool,
}

fn frac(num: usize, den: usize) -> Rational {
    Rational::new(num as i128, den as i128)
}

/// The degree to which atomic granule `a` is included in `b`, under the
/// selected measure:
///
/// * `sh1 = |aᶜ ∪ b| / n`
/// * `sh2 = |a ∩ b| / |a|`
/// * `sh3 = |b| / |a ∪ b|`
/// * `sh4 = |aᶜ| / |aᶜ ∪ bᶜ|`
/// * `sh5 = |aᶜ ∩ bᶜ| / |bᶜ|`
///
/// The degenerate denominators of `sh4` (`a = b = X`) and `sh5` (`b = X`)
/// both arise only when `a ⊆ b`, so those values are defined as 1. `a` must
/// be nonempty; `b` may be empty.
pub fn subsethood(kind: MeasureKind, b: Block, a: Block, universe: &Universe) -> MeasureValue {
    assert!(!a.is_empty(), "subsethood requires a nonempty first granule");
    let n = universe.len();
    let ac = a.complement(n);
    let bc = b.complement(n);
    let value = match kind {
        MeasureKind::Sh1 => frac((ac | b).len(), n),
        MeasureKind::Sh2 => frac((a & b).len(), a.len()),
        MeasureKind::Sh3 => frac(b.len(), (a | b).len()),
        MeasureKind::Sh4 => {
            if (ac | bc).is_empty() {
                frac(1, 1)
            } else {
                frac(ac.len(), (ac | bc).len())
            }
        }
        MeasureKind::Sh5 => {
            if bc.is_empty() {
                frac(1, 1)
            } else {
                frac((ac & bc).len(), bc.len())
            }
        }
    };
    MeasureValue::new(value)
}

/// `1 - subsethood`: the degree to which `a` escapes `b`.
pub fn supsethood(kind: MeasureKind, b: Block, a: Block, universe: &Universe) -> MeasureValue {
    MeasureValue::new(frac(1, 1) - subsethood(kind, b, a, universe).value())
}

/// `m/n` where `m` is the smaller carrier cardinality and `n` the universe
/// size: the upper bound of the meet distribution's mass and of the
/// conditional measures.
pub fn min_carrier_ratio(a: &Granule, b: &Granule) -> Result<Rational> {
    if a.universe() != b.universe() {
        return Err(Error::UniverseMismatch);
    }
    let m = a.carrier().len().min(b.carrier().len());
    Ok(frac(m, a.universe().len()))
}

/// Conditional granularity `G_k(B|A)`: the expectation of subsethood over
/// the meet distribution, `Σ p(aᵢ∩bⱼ) · sh_k(bⱼ, aᵢ)`.
pub fn conditional_granularity(
    kind: MeasureKind,
    b: &Granule,
    a: &Granule,
) -> Result<MeasureValue> {
    if a.universe() != b.universe() {
        return Err(Error::UniverseMismatch);
    }
    let universe = a.universe();
    let n = universe.len() as i128;
    let mut sum = Rational::zero();
    for a_block in a.blocks() {
        for b_block in b.blocks() {
            let count = (*a_block & *b_block).len();
            if count == 0 {
                continue;
            }
            let p = Rational::new(count as i128, n);
            sum += p * subsethood(kind, *b_block, *a_block, universe).value();
        }
    }
    Ok(MeasureValue::new(sum))
}

/// Conditional fineness `F_k(B|A) = m/n - G_k(B|A)`.
pub fn conditional_fineness(kind: MeasureKind, b: &Granule, a: &Granule) -> Result<MeasureValue> {
    let g = conditional_granularity(kind, b, a)?;
    let bound = min_carrier_ratio(a, b)?;
    Ok(MeasureValue::new(bound - g.value()))
}

/// Granularity of a single granule: `G_k(A|{X})`.
pub fn granularity(kind: MeasureKind, a: &Granule) -> MeasureValue {
    let top = Granule::top(Arc::clone(a.universe()));
    conditional_granularity(kind, a, &top).expect("same universe by construction")
}

/// Fineness of a single granule: `F_k(A|{X})`.
pub fn fineness(kind: MeasureKind, a: &Granule) -> MeasureValue {
    let top = Granule::top(Arc::clone(a.universe()));
    conditional_fineness(kind, a, &top).expect("same universe by construction")
}

/// Two granules are independent when every meet-distribution entry is zero,
/// i.e. their carriers are disjoint.
pub fn are_independent(a: &Granule, b: &Granule) -> Result<bool> {
    if a.universe() != b.universe() {
        return Err(Error::UniverseMismatch);
    }
    Ok(!a.carrier().intersects(b.carrier()))
}

/// `b` is a quotient complement of `a`: independent of `a` and made of a
/// single block.
pub fn is_quotient_complement(b: &Granule, a: &Granule) -> Result<bool> {
    Ok(are_independent(a, b)? && b.block_count() == 1)
}

fn log_in_base(x: f64, base: f64) -> f64 {
    if base == 2.0 {
        x.log2()
    } else {
        x.ln() / base.ln()
    }
}

/// Conditional fineness entropy in an arbitrary log base:
/// `H'_k(B|A) = -Σ p(aᵢ∩bⱼ) log sh_k(bⱼ, aᵢ)`.
///
/// Terms with `p = 0` contribute nothing. When `p > 0` and `sh = 0`
/// (possible for `sh4`/`sh5`), the `-log sh` factor is clamped to `log n`
/// and the `clamped` flag is set, keeping the value inside `[0, log n]`.
pub fn conditional_fineness_entropy_with_base(
    kind: MeasureKind,
    b: &Granule,
    a: &Granule,
    base: f64,
) -> Result<EntropyValue> {
    if a.universe() != b.universe() {
        return Err(Error::UniverseMismatch);
    }
    let universe = a.universe();
    let n = universe.len();
    let log_n = log_in_base(n as f64, base);
    let mut sum = 0.0;
    let mut clamped = false;
    for a_block in a.blocks() {
        for b_block in b.blocks() {
            let count = (*a_block & *b_block).len();
            if count == 0 {
                continue;
            }
            let p = count as f64 / n as f64;
            let sh = subsethood(kind, *b_block, *a_block, universe);
            if sh.value().is_zero() {
                sum += p * log_n;
                clamped = true;
            } else {
                sum -= p * log_in_base(sh.as_f64(), base);
            }
        }
    }
    if sum == 0.0 {
        sum = 0.0; // normalize -0.0
    }
    Ok(EntropyValue {
        value: sum,
        clamped,
    })
}

/// Conditional granularity entropy in an arbitrary log base:
/// `H_k(B|A) = (m/n) log n - H'_k(B|A)`.
pub fn conditional_granularity_entropy_with_base(
    kind: MeasureKind,
    b: &Granule,
    a: &Granule,
    base: f64,
) -> Result<EntropyValue> {
    let h_prime = conditional_fineness_entropy_with_base(kind, b, a, base)?;
    let bound = min_carrier_ratio(a, b)?;
    let n = a.universe().len() as f64;
    let value = bound.to_f64().unwrap() * log_in_base(n, base) - h_prime.value;
    Ok(EntropyValue {
        value: value.max(0.0),
        clamped: h_prime.clamped,
    })
}

/// `H'_k(B|A)` in bits (base 2).
pub fn conditional_fineness_entropy(
    kind: MeasureKind,
    b: &Granule,
    a: &Granule,
) -> Result<EntropyValue> {
    conditional_fineness_entropy_with_base(kind, b, a, 2.0)
}

/// `H_k(B|A)` in bits (base 2).
pub fn conditional_granularity_entropy(
    kind: MeasureKind,
    b: &Granule,
    a: &Granule,
) -> Result<EntropyValue> {
    conditional_granularity_entropy_with_base(kind, b, a, 2.0)
}

/// Entropy of a single granule: `H_k(A|{X})` in bits.
pub fn entropy(kind: MeasureKind, a: &Granule) -> EntropyValue {
    let top = Granule::top(Arc::clone(a.universe()));
    conditional_granularity_entropy(kind, a, &top).expect("same universe by construction")
}

/// Co-entropy of a single granule: `H'_k(A|{X})` in bits.
pub fn co_entropy(kind: MeasureKind, a: &Granule) -> EntropyValue {
    let top = Granule::top(Arc::clone(a.universe()));
    conditional_fineness_entropy(kind, a, &top).expect("same universe by construction")
}
