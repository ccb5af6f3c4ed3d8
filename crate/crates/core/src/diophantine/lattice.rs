use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `alpha * R` the enumerator accepts (about `1.6e9` box points).
pub const MAX_SCALED_RADIUS: f64 = 20_000.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionKind {
    UnitDisk,
    /// `D1 x^2 + D2 y^2 <= 1`, `D1 x^2 <= D2 y^2`, `x, y >= 0`.
    EllipseSector {
        d1: u64,
        d2: u64,
    },
}

/// Closed bounded convex region in the plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvexRegion {
    pub kind: RegionKind,
    pub bounding_radius: f64,
}

impl ConvexRegion {
    pub fn unit_disk() -> Self {
        ConvexRegion {
            kind: RegionKind::UnitDisk,
            bounding_radius: 1.0,
        }
    }

    pub fn ellipse_sector(d1: u64, d2: u64) -> Result<Self> {
        if d1 == 0 || d2 == 0 {
            return Err(Error::InvalidArgument(
                "ellipse axes must be positive".into(),
            ));
        }
        // Every point has D2 y^2 <= 1 and D1 x^2 <= 1.
        let r = (1.0 / d1.min(d2) as f64).sqrt();
        Ok(ConvexRegion {
            kind: RegionKind::EllipseSector { d1, d2 },
            bounding_radius: r,
        })
    }

    pub fn area(&self) -> f64 {
        match self.kind {
            RegionKind::UnitDisk => PI,
            RegionKind::EllipseSector { d1, d2 } => PI / (8.0 * ((d1 * d2) as f64).sqrt()),
        }
    }

    /// Whether `(x / alpha, y / alpha)` lies in the region, given `alpha^2`.
    fn contains_scaled(&self, x: i64, y: i64, alpha_sq: f64) -> bool {
        match self.kind {
            RegionKind::UnitDisk => ((x * x + y * y) as f64) <= alpha_sq,
            RegionKind::EllipseSector { d1, d2 } => {
                if x < 0 || y < 0 {
                    return false;
                }
                let (p, q) = (d1 as i128 * (x * x) as i128, d2 as i128 * (y * y) as i128);
                p <= q && ((p + q) as f64) <= alpha_sq
            }
        }
    }
}

impl FromStr for ConvexRegion {
    type Err = Error;

    /// `unit_disk` or `ellipse_sector:D1,D2`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "unit_disk" {
            return Ok(Self::unit_disk());
        }
        if let Some(rest) = s.strip_prefix("ellipse_sector:") {
            let parts: Vec<&str> = rest.split(',').collect();
            if let [a, b] = parts[..] {
                let parse = |t: &str| {
                    t.trim()
                        .parse::<u64>()
                        .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
                };
                return Self::ellipse_sector(parse(a)?, parse(b)?);
            }
        }
        Err(Error::Parse(format!(
            "unknown region {s:?}; expected unit_disk or ellipse_sector:D1,D2"
        )))
    }
}

impl fmt::Display for ConvexRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RegionKind::UnitDisk => write!(f, "unit_disk"),
            RegionKind::EllipseSector { d1, d2 } => write!(f, "ellipse_sector:{d1},{d2}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeVariant {
    All,
    /// Both coordinates odd.
    Odd,
    /// `gcd(|x|, |y|) = 1`, origin excluded.
    Primitive,
    OddPrimitive,
}

impl LatticeVariant {
    fn accepts(self, x: i64, y: i64) -> bool {
        let odd = || x % 2 != 0 && y % 2 != 0;
        let primitive = || x.unsigned_abs().gcd(&y.unsigned_abs()) == 1;
        match self {
            LatticeVariant::All => true,
            LatticeVariant::Odd => odd(),
            LatticeVariant::Primitive => primitive(),
            LatticeVariant::OddPrimitive => odd() && primitive(),
        }
    }

    pub fn density(self) -> f64 {
        match self {
            LatticeVariant::All => 1.0,
            LatticeVariant::Odd => 0.25,
            LatticeVariant::Primitive => 6.0 / (PI * PI),
            LatticeVariant::OddPrimitive => 2.0 / (PI * PI),
        }
    }
}

impl FromStr for LatticeVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(LatticeVariant::All),
            "odd" => Ok(LatticeVariant::Odd),
            "primitive" => Ok(LatticeVariant::Primitive),
            "odd_primitive" => Ok(LatticeVariant::OddPrimitive),
            _ => Err(Error::Parse(format!("unknown lattice variant {s:?}"))),
        }
    }
}

/// Number of integer points `(x, y)` of the requested kind with `(x, y) / alpha` in the
/// closed region.
pub fn lattice_count(region: &ConvexRegion, alpha: f64, variant: LatticeVariant) -> Result<u64> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "alpha must be positive, got {alpha}"
        )));
    }
    let reach = alpha * region.bounding_radius;
    if reach > MAX_SCALED_RADIUS {
        return Err(Error::InvalidArgument(format!(
            "alpha * R = {reach} exceeds the enumeration limit {MAX_SCALED_RADIUS}"
        )));
    }
    let bound = reach.floor() as i64;
    let alpha_sq = alpha * alpha;
    let mut count = 0u64;
    for x in -bound..=bound {
        for y in -bound..=bound {
            if region.contains_scaled(x, y, alpha_sq) && variant.accepts(x, y) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// `alpha^2 vol(C)` times the density of the variant.
pub fn lattice_main_term(region: &ConvexRegion, alpha: f64, variant: LatticeVariant) -> f64 {
    alpha * alpha * region.area() * variant.density()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disk_examples() {
        let disk = ConvexRegion::unit_disk();
        assert_eq!(lattice_count(&disk, 10.0, LatticeVariant::All), Ok(317));
        assert_eq!(lattice_count(&disk, 2.0, LatticeVariant::All), Ok(13));
        assert_eq!(lattice_count(&disk, 2.0, LatticeVariant::Primitive), Ok(8));
        assert_eq!(lattice_count(&disk, 2.0, LatticeVariant::Odd), Ok(4));
        assert_eq!(lattice_count(&disk, 0.5, LatticeVariant::Primitive), Ok(0));
        assert_eq!(
            lattice_count(&disk, 2.0, LatticeVariant::OddPrimitive),
            Ok(4)
        );
    }

    #[test]
    fn main_terms() {
        let disk = ConvexRegion::unit_disk();
        assert!((lattice_main_term(&disk, 10.0, LatticeVariant::All) - 314.159).abs() < 1e-3);
        assert!((lattice_main_term(&disk, 10.0, LatticeVariant::Primitive) - 190.99).abs() < 1e-2);
        let e = ConvexRegion::ellipse_sector(1, 5).unwrap();
        assert!((lattice_main_term(&e, 1.0, LatticeVariant::All) - 0.17562).abs() < 1e-5);
    }

    #[test]
    fn ellipse_sector_points() {
        // D1 = 1, D2 = 5, alpha^2 = 9: (0,0), (0,1), (1,1), (2,1) (4 + 5 = 9 on the boundary)
        let e = ConvexRegion::ellipse_sector(1, 5).unwrap();
        assert_eq!(lattice_count(&e, 3.0, LatticeVariant::All), Ok(4));
        assert_eq!(lattice_count(&e, 3.0, LatticeVariant::Primitive), Ok(3));
    }

    #[test]
    fn rejects_bad_alpha() {
        let disk = ConvexRegion::unit_disk();
        assert!(lattice_count(&disk, 0.0, LatticeVariant::All).is_err());
        assert!(lattice_count(&disk, f64::NAN, LatticeVariant::All).is_err());
        assert!(lattice_count(&disk, 1e6, LatticeVariant::All).is_err());
    }

    #[test]
    fn parse_region() {
        assert_eq!(
            "unit_disk".parse::<ConvexRegion>().unwrap(),
            ConvexRegion::unit_disk()
        );
        let e: ConvexRegion = "ellipse_sector:2,3".parse().unwrap();
        assert_eq!(e.to_string(), "ellipse_sector:2,3");
        assert!("square".parse::<ConvexRegion>().is_err());
    }

    #[test]
    fn mobius_stratification() {
        let disk = ConvexRegion::unit_disk();
        for alpha in [10.0, 20.0, 50.0] {
            let all = lattice_count(&disk, alpha, LatticeVariant::All).unwrap();
            let mut sum = 0;
            let mut d = 1.0;
            while alpha / d >= 1.0 {
                sum += lattice_count(&disk, alpha / d, LatticeVariant::Primitive).unwrap();
                d += 1.0;
            }
            assert_eq!(all - 1, sum, "alpha = {alpha}");
        }
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(24))]
        #[test]
        fn gauss_bound(alpha in 10.0f64..300.0) {
            let n = lattice_count(&ConvexRegion::unit_disk(), alpha, LatticeVariant::All).unwrap();
            proptest::prop_assert!((n as f64 - PI * alpha * alpha).abs() <= 10.0 * alpha);
        }
    }
}
