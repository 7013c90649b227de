//! Integral degree-2 cohomology lattices of the reduced spaces.
//!
//! Three root surfaces are kept apart on purpose: the projective plane with
//! basis `u, E1, ..`, the product of two spheres with basis `x, y, E1, ..`
//! (both rulings square to zero), and the twisted sphere bundle with basis
//! `x, y, E1, ..` where the section `y` squares to −1. The tables mix the
//! `(x, y)` and `(u, E)` pictures, so we never normalize silently;
//! [`convert_hirzebruch_basis`] is the explicit bridge.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Maximal lattice rank (blow-up of the plane at eight points).
pub const MAX_RANK: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SurfaceRoot {
    /// ℂP², basis `u` with u² = 1.
    ProjPlane,
    /// S²×S², basis `x, y` with x² = y² = 0, x·y = 1.
    Quadric,
    /// The nontrivial S²-bundle over S², basis `x, y` with x² = 0,
    /// y² = −1, x·y = 1.
    Hirzebruch,
}

impl SurfaceRoot {
    pub fn rank(&self) -> usize {
        match self {
            SurfaceRoot::ProjPlane => 1,
            SurfaceRoot::Quadric | SurfaceRoot::Hirzebruch => 2,
        }
    }
}

/// A reduced-space diffeotype: a root surface together with a number of
/// point blow-ups, each contributing one exceptional label `E_i`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SurfaceModel {
    root: SurfaceRoot,
    blowups: u8,
}

impl SurfaceModel {
    pub fn new(root: SurfaceRoot, blowups: u8) -> Result<Self> {
        let rank = root.rank() + blowups as usize;
        if rank > MAX_RANK {
            return Err(Error::RankOverflow(rank));
        }
        Ok(SurfaceModel { root, blowups })
    }

    pub fn proj_plane() -> Self {
        SurfaceModel {
            root: SurfaceRoot::ProjPlane,
            blowups: 0,
        }
    }

    pub fn quadric() -> Self {
        SurfaceModel {
            root: SurfaceRoot::Quadric,
            blowups: 0,
        }
    }

    pub fn hirzebruch() -> Self {
        SurfaceModel {
            root: SurfaceRoot::Hirzebruch,
            blowups: 0,
        }
    }

    /// The del Pezzo surface X_k = blow-up of ℂP² at k points, in the
    /// `(u, E)` basis.
    pub fn x_k(k: u8) -> Result<Self> {
        SurfaceModel::new(SurfaceRoot::ProjPlane, k)
    }

    pub fn root(&self) -> SurfaceRoot {
        self.root
    }

    pub fn blowups(&self) -> u8 {
        self.blowups
    }

    pub fn rank(&self) -> usize {
        self.root.rank() + self.blowups as usize
    }

    /// Appends `count` fresh exceptional labels.
    pub fn blow_up(&self, count: u8) -> Result<Self> {
        SurfaceModel::new(self.root, self.blowups + count)
    }

    /// Ordered basis labels, e.g. `x, y, E1, E2`.
    pub fn basis_labels(&self) -> Vec<String> {
        let mut out: Vec<String> = match self.root {
            SurfaceRoot::ProjPlane => vec!["u".into()],
            SurfaceRoot::Quadric | SurfaceRoot::Hirzebruch => vec!["x".into(), "y".into()],
        };
        for i in 1..=self.blowups {
            out.push(format!("E{i}"));
        }
        out
    }

    pub fn zero(&self) -> CohClass {
        CohClass {
            surface: *self,
            coeffs: vec![0; self.rank()],
        }
    }

    /// Basis class by index (0 = u or x, 1 = y, 2.. = E_i).
    pub fn basis_class(&self, index: usize) -> CohClass {
        assert!(index < self.rank(), "basis index out of range");
        let mut coeffs = vec![0; self.rank()];
        coeffs[index] = 1;
        CohClass {
            surface: *self,
            coeffs,
        }
    }

    pub fn class(&self, coeffs: &[i64]) -> Result<CohClass> {
        if coeffs.len() != self.rank() {
            return Err(Error::BasisMismatch(
                self.to_string(),
                format!("coefficient vector of length {}", coeffs.len()),
            ));
        }
        Ok(CohClass {
            surface: *self,
            coeffs: coeffs.to_vec(),
        })
    }

    /// The anticanonical class, which also represents the monotone reduced
    /// symplectic class at level zero.
    pub fn anticanonical(&self) -> CohClass {
        let mut coeffs = match self.root {
            SurfaceRoot::ProjPlane => vec![3],
            SurfaceRoot::Quadric => vec![2, 2],
            SurfaceRoot::Hirzebruch => vec![3, 2],
        };
        coeffs.extend(std::iter::repeat_n(-1, self.blowups as usize));
        CohClass {
            surface: *self,
            coeffs,
        }
    }

    /// Canonical display name: `CP2`, `Xk`, `S2xS2`, `ES2`, with `+mE`
    /// marking blow-ups kept in the two-ruling bases.
    pub fn id(&self) -> String {
        match (self.root, self.blowups) {
            (SurfaceRoot::ProjPlane, 0) => "CP2".into(),
            (SurfaceRoot::ProjPlane, m) => format!("X{m}"),
            (SurfaceRoot::Quadric, 0) => "S2xS2".into(),
            (SurfaceRoot::Quadric, m) => format!("S2xS2+{m}E"),
            (SurfaceRoot::Hirzebruch, 0) => "ES2".into(),
            (SurfaceRoot::Hirzebruch, m) => format!("ES2+{m}E"),
        }
    }
}

impl fmt::Display for SurfaceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl fmt::Debug for SurfaceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl FromStr for SurfaceModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, blowups) = match s.find('+') {
            Some(pos) => {
                let tail = &s[pos + 1..];
                let digits = tail.strip_suffix('E').unwrap_or(tail);
                let m: u8 = digits
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad blow-up count in {s:?}")))?;
                (&s[..pos], m)
            }
            None => (s, 0),
        };
        let model = match head {
            "CP2" | "P2" => SurfaceModel::new(SurfaceRoot::ProjPlane, blowups)?,
            "S2xS2" | "Q" => SurfaceModel::new(SurfaceRoot::Quadric, blowups)?,
            "ES2" => SurfaceModel::new(SurfaceRoot::Hirzebruch, blowups)?,
            _ => {
                if let Some(k) = head.strip_prefix('X') {
                    let k: u8 = k
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad surface id {s:?}")))?;
                    if blowups != 0 {
                        return Err(Error::Parse(format!("bad surface id {s:?}")));
                    }
                    SurfaceModel::x_k(k)?
                } else {
                    return Err(Error::Parse(format!("unknown surface id {s:?}")));
                }
            }
        };
        Ok(model)
    }
}

impl Serialize for SurfaceModel {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.id())
    }
}

impl<'de> Deserialize<'de> for SurfaceModel {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An integral degree-2 class, stored as coefficients against the surface
/// basis. All arithmetic is exact.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CohClass {
    surface: SurfaceModel,
    coeffs: Vec<i64>,
}

impl CohClass {
    pub fn surface(&self) -> SurfaceModel {
        self.surface
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Intersection pairing against the Gram matrix of the surface.
    pub fn pair(&self, other: &CohClass) -> Result<i64> {
        if self.surface != other.surface {
            return Err(Error::BasisMismatch(
                self.surface.to_string(),
                other.surface.to_string(),
            ));
        }
        Ok(self.dot(other))
    }

    pub(crate) fn dot(&self, other: &CohClass) -> i64 {
        debug_assert_eq!(self.surface, other.surface);
        let a = &self.coeffs;
        let b = &other.coeffs;
        let (head, start) = match self.surface.root {
            SurfaceRoot::ProjPlane => (a[0] * b[0], 1),
            SurfaceRoot::Quadric => (a[0] * b[1] + a[1] * b[0], 2),
            SurfaceRoot::Hirzebruch => (a[0] * b[1] + a[1] * b[0] - a[1] * b[1], 2),
        };
        head - a[start..]
            .iter()
            .zip(&b[start..])
            .map(|(x, y)| x * y)
            .sum::<i64>()
    }

    pub(crate) fn self_pair(&self) -> i64 {
        self.dot(self)
    }

    /// Zero-extension to a blow-up of the same root (pullback under
    /// blow-down).
    pub fn extended_to(&self, surface: SurfaceModel) -> Result<CohClass> {
        if surface.root != self.surface.root || surface.blowups < self.surface.blowups {
            return Err(Error::BasisMismatch(
                self.surface.to_string(),
                surface.to_string(),
            ));
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(surface.rank(), 0);
        Ok(CohClass { surface, coeffs })
    }

    /// Restriction to a smaller blow-up; requires the dropped coefficients
    /// to vanish.
    pub fn restricted_to(&self, surface: SurfaceModel) -> Result<CohClass> {
        if surface.root != self.surface.root || surface.blowups > self.surface.blowups {
            return Err(Error::BasisMismatch(
                self.surface.to_string(),
                surface.to_string(),
            ));
        }
        let keep = surface.rank();
        if self.coeffs[keep..].iter().any(|&c| c != 0) {
            return Err(Error::InconsistentSlice(format!(
                "class {self} does not restrict to {surface}"
            )));
        }
        Ok(CohClass {
            surface,
            coeffs: self.coeffs[..keep].to_vec(),
        })
    }

    pub fn scaled(&self, k: i64) -> CohClass {
        CohClass {
            surface: self.surface,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Parses a symbolic expression such as `3x+2y-E1` or `-u` against the
    /// given surface basis.
    pub fn parse(surface: SurfaceModel, input: &str) -> Result<CohClass> {
        let labels = surface.basis_labels();
        let mut coeffs = vec![0i64; surface.rank()];
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty class expression".into()));
        }
        if s == "0" {
            return Ok(CohClass { surface, coeffs });
        }
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let sign = if let Some(r) = rest.strip_prefix('-') {
                rest = r;
                -1
            } else {
                rest = rest.strip_prefix('+').unwrap_or(rest);
                1
            };
            let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
            rest = &rest[digits.len()..];
            let magnitude: i64 = if digits.is_empty() {
                1
            } else {
                digits
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient in {input:?}")))?
            };
            let label = labels
                .iter()
                .enumerate()
                .filter(|(_, l)| rest.starts_with(l.as_str()))
                .max_by_key(|(_, l)| l.len());
            let Some((idx, label)) = label else {
                return Err(Error::Parse(format!(
                    "unknown basis label at {rest:?} for surface {surface}"
                )));
            };
            rest = &rest[label.len()..];
            coeffs[idx] += sign * magnitude;
        }
        Ok(CohClass { surface, coeffs })
    }
}

impl fmt::Display for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = self.surface.basis_labels();
        let mut wrote = false;
        for (c, label) in self.coeffs.iter().zip(&labels) {
            match *c {
                0 => continue,
                1 => {
                    if wrote {
                        write!(f, "+")?;
                    }
                    write!(f, "{label}")?;
                }
                -1 => write!(f, "-{label}")?,
                c if c > 0 => {
                    if wrote {
                        write!(f, "+")?;
                    }
                    write!(f, "{c}{label}")?;
                }
                c => write!(f, "{c}{label}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}@{}", self.surface)
    }
}

impl Serialize for CohClass {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = ser.serialize_struct("CohClass", 2)?;
        st.serialize_field("surface", &self.surface)?;
        st.serialize_field("coeffs", &self.coeffs)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for CohClass {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            surface: SurfaceModel,
            coeffs: Vec<i64>,
        }
        let raw = Raw::deserialize(de)?;
        raw.surface
            .class(&raw.coeffs)
            .map_err(serde::de::Error::custom)
    }
}

impl std::ops::Add for &CohClass {
    type Output = CohClass;
    fn add(self, rhs: &CohClass) -> CohClass {
        assert_eq!(self.surface, rhs.surface, "class addition across bases");
        CohClass {
            surface: self.surface,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl std::ops::Sub for &CohClass {
    type Output = CohClass;
    fn sub(self, rhs: &CohClass) -> CohClass {
        assert_eq!(self.surface, rhs.surface, "class subtraction across bases");
        CohClass {
            surface: self.surface,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl std::ops::Neg for &CohClass {
    type Output = CohClass;
    fn neg(self) -> CohClass {
        self.scaled(-1)
    }
}

/// Direction of the rank-preserving change of basis between the twisted
/// bundle picture `x, y, E1, ..., Em` and the blow-up picture
/// `u, E1, ..., E(m+1)` given by `u = x + y`, `E1 = y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConversionDirection {
    XyToUe,
    UeToXy,
}

/// Substitutes `u = x + y`, `E1 = y` (inverse `x = u − E1`, `y = E1`);
/// blow-up labels shift by one index. The pairing is preserved.
pub fn convert_hirzebruch_basis(c: &CohClass, direction: ConversionDirection) -> Result<CohClass> {
    match direction {
        ConversionDirection::XyToUe => {
            if c.surface.root != SurfaceRoot::Hirzebruch {
                return Err(Error::WrongRoot {
                    expected: "ES2".into(),
                    got: c.surface.to_string(),
                });
            }
            let target = SurfaceModel::new(SurfaceRoot::ProjPlane, c.surface.blowups + 1)?;
            let mut coeffs = Vec::with_capacity(target.rank());
            coeffs.push(c.coeffs[0]);
            coeffs.push(c.coeffs[1] - c.coeffs[0]);
            coeffs.extend_from_slice(&c.coeffs[2..]);
            Ok(CohClass {
                surface: target,
                coeffs,
            })
        }
        ConversionDirection::UeToXy => {
            if c.surface.root != SurfaceRoot::ProjPlane || c.surface.blowups == 0 {
                return Err(Error::WrongRoot {
                    expected: "X1 or a further blow-up".into(),
                    got: c.surface.to_string(),
                });
            }
            let target = SurfaceModel::new(SurfaceRoot::Hirzebruch, c.surface.blowups - 1)?;
            let mut coeffs = Vec::with_capacity(target.rank());
            coeffs.push(c.coeffs[0]);
            coeffs.push(c.coeffs[0] + c.coeffs[1]);
            coeffs.extend_from_slice(&c.coeffs[2..]);
            Ok(CohClass {
                surface: target,
                coeffs,
            })
        }
    }
}

/// Generators of the effective curve cone.
///
/// Rank 1 is spanned by the line; rank 2 by the two rulings (or by the
/// exceptional curve and the fiber in the blow-up picture). From rank 3 on,
/// the −1-classes generate the cone, which uniformizes every
/// "does not vanish" test the case analyses apply by hand.
pub fn effective_generators(surface: SurfaceModel) -> Vec<CohClass> {
    match surface.rank() {
        1 => vec![surface.basis_class(0)],
        2 => match surface.root {
            SurfaceRoot::ProjPlane => {
                // E1 and the line through the blown-up point, u − E1.
                vec![surface.basis_class(1), surface.class(&[1, -1]).unwrap()]
            }
            _ => vec![surface.basis_class(0), surface.basis_class(1)],
        },
        _ => crate::exceptional::exceptional_set(surface)
            .expect("rank is within the del Pezzo bound")
            .classes
            .clone(),
    }
}
