use num_rational::Rational64;
use serde::Serialize;

use super::reconstruct::SpunReport;
use crate::coords::{boundary_functional, CuspCurve};
use crate::error::{Error, Result};

/// Boundary slope with the values it was computed from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Slope {
    pub nu_meridian: i64,
    pub nu_longitude: i64,
    #[serde(serialize_with = "ser_ratio")]
    pub value: Rational64,
}

fn ser_ratio<S: serde::Serializer>(r: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// `-nu(longitude) / nu(meridian)`.
pub fn boundary_slope(
    report: &SpunReport,
    meridian: &CuspCurve,
    longitude: &CuspCurve,
) -> Result<Slope> {
    let m = boundary_functional(&report.tri, meridian).eval(&report.quads.0);
    let l = boundary_functional(&report.tri, longitude).eval(&report.quads.0);
    match (m, l) {
        (0, 0) => Err(Error::NotSpun),
        (0, _) => Err(Error::InfiniteSlope),
        _ => Ok(Slope {
            nu_meridian: m,
            nu_longitude: l,
            value: Rational64::new(-l, m),
        }),
    }
}
