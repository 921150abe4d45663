//! Analyzer orientations and the four setting combinations.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Polarizer orientation in radians, normalized to `[0, π)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Angle(f64);

impl Angle {
    pub fn from_radians(rad: f64) -> Result<Self> {
        if !rad.is_finite() {
            return Err(Error::NonFiniteAngle);
        }
        let mut v = rad.rem_euclid(PI);
        // rem_euclid can round up to exactly π for tiny negative inputs.
        if v >= PI {
            v = 0.0;
        }
        Ok(Angle(v))
    }

    pub fn from_degrees(deg: f64) -> Result<Self> {
        Self::from_radians(deg.to_radians())
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    pub fn degrees(self) -> f64 {
        self.0.to_degrees()
    }

    /// Smallest orientation difference, folded into `[0, π/2]`.
    pub fn folded_distance(self, other: Angle) -> f64 {
        let d = (self.0 - other.0).abs();
        d.min(PI - d)
    }
}

/// The four analyzer angles: `a`, `d` on arm A and `b`, `c` on arm B.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SettingsQuad {
    pub a: Angle,
    pub d: Angle,
    pub b: Angle,
    pub c: Angle,
}

impl SettingsQuad {
    pub fn new(a: Angle, d: Angle, b: Angle, c: Angle) -> Result<Self> {
        if a == d {
            return Err(Error::DegenerateSettings("a == d"));
        }
        if b == c {
            return Err(Error::DegenerateSettings("b == c"));
        }
        Ok(SettingsQuad { a, d, b, c })
    }

    pub fn from_degrees(a: f64, d: f64, b: f64, c: f64) -> Result<Self> {
        Self::new(
            Angle::from_degrees(a)?,
            Angle::from_degrees(d)?,
            Angle::from_degrees(b)?,
            Angle::from_degrees(c)?,
        )
    }

    /// `a = 0, d = π/4, b = π/8, c = −π/8`: the photon-correlation optimum.
    pub fn photon_optimal() -> Self {
        Self::from_degrees(0.0, 45.0, 22.5, -22.5).expect("distinct settings")
    }

    /// `a = π/4, d = 3π/4, b = π/2, c = 0`: a spin-½ optimum with every angle
    /// inside `[0, π)`, giving Γ = −2√2.
    pub fn spin_half_optimal() -> Self {
        Self::from_degrees(45.0, 135.0, 90.0, 0.0).expect("distinct settings")
    }

    /// Arm-A and arm-B angle for a setting combination.
    pub fn pair(&self, pair: SettingPair) -> (Angle, Angle) {
        match pair {
            SettingPair::Ab => (self.a, self.b),
            SettingPair::Ac => (self.a, self.c),
            SettingPair::Db => (self.d, self.b),
            SettingPair::Dc => (self.d, self.c),
        }
    }
}

/// One of the four experiment combinations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SettingPair {
    Ab,
    Ac,
    Db,
    Dc,
}

impl SettingPair {
    pub const ALL: [SettingPair; 4] = [
        SettingPair::Ab,
        SettingPair::Ac,
        SettingPair::Db,
        SettingPair::Dc,
    ];

    pub fn label(self) -> &'static str {
        match self {
            SettingPair::Ab => "ab",
            SettingPair::Ac => "ac",
            SettingPair::Db => "db",
            SettingPair::Dc => "dc",
        }
    }

    /// Sign of this term in Γ; only `dc` is subtracted.
    pub fn sign(self) -> i64 {
        match self {
            SettingPair::Dc => -1,
            _ => 1,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for SettingPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for SettingPair {
    type Err = ();

    fn from_str(s: &str) -> std::result::Result<Self, ()> {
        match s {
            "ab" => Ok(SettingPair::Ab),
            "ac" => Ok(SettingPair::Ac),
            "db" => Ok(SettingPair::Db),
            "dc" => Ok(SettingPair::Dc),
            _ => Err(()),
        }
    }
}
