//! The moment path: per-interval reduced surface and Euler class, affine
//! evolution of the reduced symplectic class, wall crossings, and
//! positivity tests.
//!
//! Between consecutive critical values the reduced class moves affinely
//! with slope minus the Euler class of the level-set circle bundle.
//! Crossing an index-two wall adds the duals of the crossed fixed
//! components to the Euler class; isolated points also blow up the
//! surface.

use crate::curves::Decomposition;
use crate::family::FamilyLabel;
use crate::lattice::{effective_generators, CohClass, SurfaceModel, SurfaceRoot};
use crate::{Error, Result};
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

/// How the reduced class is tested at an integral endpoint of a slice.
///
/// `Strict` endpoints carry an honest symplectic class: square and all
/// effective degrees at least 1. `Lax` endpoints are walls where something
/// collapses — the two-dimensional extremum (the whole square degenerates)
/// or the level just above a point blow-up (the newborn exceptional
/// divisors have zero area exactly there) — so only nonnegativity is
/// meaningful.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EndpointCheck {
    Strict,
    Lax,
}

/// One open interval of regular values, with the data needed to evaluate
/// the reduced class anywhere inside it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelSlice {
    pub lo: i64,
    pub hi: i64,
    pub surface: SurfaceModel,
    pub euler: CohClass,
    pub omega_lo: CohClass,
    pub lo_check: EndpointCheck,
    pub hi_check: EndpointCheck,
}

impl LevelSlice {
    pub fn new(
        lo: i64,
        hi: i64,
        euler: CohClass,
        omega_lo: CohClass,
        lo_check: EndpointCheck,
        hi_check: EndpointCheck,
    ) -> Result<LevelSlice> {
        if euler.surface() != omega_lo.surface() {
            return Err(Error::BasisMismatch(
                euler.surface().to_string(),
                omega_lo.surface().to_string(),
            ));
        }
        if lo >= hi {
            return Err(Error::InconsistentSlice(format!("interval [{lo}, {hi}]")));
        }
        Ok(LevelSlice {
            lo,
            hi,
            surface: euler.surface(),
            euler,
            omega_lo,
            lo_check,
            hi_check,
        })
    }

    /// Reduced class at an integral level of the closed interval.
    pub fn omega_at_level(&self, t: i64) -> Result<CohClass> {
        if t < self.lo || t > self.hi {
            return Err(Error::LevelOutOfRange(t, self.lo, self.hi));
        }
        Ok(&self.omega_lo - &self.euler.scaled(t - self.lo))
    }

    /// Reduced class at a rational level, as exact rational coefficients.
    pub fn omega_at(&self, t: Rational64) -> Result<Vec<Rational64>> {
        let lo = Rational64::from_integer(self.lo);
        let hi = Rational64::from_integer(self.hi);
        if t < lo || t > hi {
            return Err(Error::LevelOutOfRange(
                *t.numer() / *t.denom(),
                self.lo,
                self.hi,
            ));
        }
        let dt = t - lo;
        Ok(self
            .omega_lo
            .coeffs()
            .iter()
            .zip(self.euler.coeffs())
            .map(|(w, e)| Rational64::from_integer(*w) - dt * Rational64::from_integer(*e))
            .collect())
    }
}

/// The Duistermaat–Heckman class of the slice at level `t`.
pub fn dh_class(slice: &LevelSlice, t: i64) -> Result<CohClass> {
    slice.omega_at_level(t)
}

/// Crosses an index-two critical level at `prev.hi`.
///
/// `crossing` lists the duals of the crossed fixed components on the
/// post-crossing surface: freshly appended `E` labels for isolated points
/// (the surface grows), fixed-surface duals otherwise. The new Euler class
/// is the zero-extended old one plus the sum of the crossing classes.
pub fn cross_index_two(
    prev: &LevelSlice,
    crossing: &[CohClass],
    next_hi: i64,
) -> Result<LevelSlice> {
    let surface = match crossing.first() {
        Some(c) => c.surface(),
        None => prev.surface,
    };
    if crossing.iter().any(|c| c.surface() != surface) {
        return Err(Error::InconsistentSlice(
            "crossing classes on different surfaces".into(),
        ));
    }
    let mut euler = prev.euler.extended_to(surface)?;
    for c in crossing {
        euler = &euler + c;
    }
    let omega_lo = prev.omega_at_level(prev.hi)?.extended_to(surface)?;
    let blew_up = surface.blowups() > prev.surface.blowups();
    LevelSlice::new(
        prev.hi,
        next_hi,
        euler,
        omega_lo,
        if blew_up {
            EndpointCheck::Lax
        } else {
            EndpointCheck::Strict
        },
        EndpointCheck::Strict,
    )
}

/// Outcome of the positivity test on one slice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Positivity {
    Ok,
    FailEndpoint,
    /// Endpoints pass but the interior midpoint square does not. Candidates
    /// in this state are rejected but must be surfaced, never silently
    /// dropped.
    FailMidpoint,
}

/// Endpoint checks (square and all effective-generator degrees, with the
/// threshold set by the endpoint kind) plus an exact interior square check
/// at the midpoint.
pub fn check_positivity(slice: &LevelSlice) -> Result<Positivity> {
    let generators = effective_generators(slice.surface);
    for (level, check) in [(slice.lo, slice.lo_check), (slice.hi, slice.hi_check)] {
        let omega = slice.omega_at_level(level)?;
        let threshold = match check {
            EndpointCheck::Strict => 1,
            EndpointCheck::Lax => 0,
        };
        if omega.pair(&omega)? < threshold {
            return Ok(Positivity::FailEndpoint);
        }
        for g in &generators {
            if omega.pair(g)? < threshold {
                return Ok(Positivity::FailEndpoint);
            }
        }
    }
    // Midpoint square, scaled by 4 to stay integral.
    let doubled = &slice.omega_at_level(slice.lo)? + &slice.omega_at_level(slice.hi)?;
    if doubled.pair(&doubled)? <= 0 {
        return Ok(Positivity::FailMidpoint);
    }
    Ok(Positivity::Ok)
}

pub fn positivity_ok(slice: &LevelSlice) -> bool {
    matches!(check_positivity(slice), Ok(Positivity::Ok))
}

/// Extremal fixed-component bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalData {
    pub min_dim: u8,
    pub max_dim: u8,
    /// Present when the minimum is a 2-sphere: the Euler parameter `k`
    /// (the Euler class below the first wall is `kx − y`) and the normal
    /// bundle Chern number `b_min`.
    pub two_dim_min: Option<TwoDimMinData>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoDimMinData {
    pub k: i64,
    pub b_min: i64,
}

/// The full moment path of a candidate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MomentPath {
    pub family: FamilyLabel,
    pub crit_values: Vec<i64>,
    pub slices: Vec<LevelSlice>,
    pub m_isolated: u8,
    pub z0: Option<Decomposition>,
    pub extremal: ExtremalData,
}

impl MomentPath {
    /// The middle reduced space (at level 0 for the balanced moment map),
    /// on which the monotone class lives.
    pub fn surface0(&self) -> SurfaceModel {
        self.slices.last().expect("paths have slices").surface
    }

    /// Euler class of the topmost interval, `e(P_1^-)`.
    pub fn euler_top(&self) -> &CohClass {
        &self.slices.last().expect("paths have slices").euler
    }

    /// Reduced class at the top critical level (the 4-dimensional maximum).
    pub fn omega_top(&self) -> CohClass {
        let s = self.slices.last().expect("paths have slices");
        s.omega_at_level(s.hi).expect("hi is in range")
    }

    /// Reduced class at level 0.
    pub fn omega0(&self) -> CohClass {
        for s in &self.slices {
            if s.lo <= 0 && 0 <= s.hi {
                return s.omega_at_level(0).expect("0 is in range");
            }
        }
        unreachable!("every path spans level 0")
    }

    /// Builds a case-I path (2-sphere minimum at level −2): the Euler class
    /// below the first wall is `kx − y`, `m` isolated points cross at level
    /// −1, and `z0` crosses at level 0.
    pub fn assemble_case_i(
        family: FamilyLabel,
        root: SurfaceRoot,
        k: i64,
        m: u8,
        z0: Option<Decomposition>,
    ) -> Result<MomentPath> {
        let surface0 = SurfaceModel::new(root, m)?;
        let z0_total = z0.as_ref().map(|dec| dec.total(surface0));
        let slices = case_i_slices(family, root, k, m, z0_total.as_ref())?;
        let b_min = -slices[0].euler.self_pair();
        Ok(MomentPath {
            family,
            crit_values: family.crit_values().to_vec(),
            slices,
            m_isolated: m,
            z0,
            extremal: ExtremalData {
                min_dim: 2,
                max_dim: 4,
                two_dim_min: Some(TwoDimMinData { k, b_min }),
            },
        })
    }

    /// Builds a case-II path (both extrema 4-dimensional at levels ±1):
    /// free Euler class `euler` below level 0, optional `z0` crossing at 0.
    pub fn assemble_case_ii(
        family: FamilyLabel,
        euler: CohClass,
        z0: Option<Decomposition>,
    ) -> Result<MomentPath> {
        let z0_total = z0.as_ref().map(|dec| dec.total(euler.surface()));
        let slices = case_ii_slices(family, &euler, z0_total.as_ref())?;
        Ok(MomentPath {
            family,
            crit_values: family.crit_values().to_vec(),
            slices,
            m_isolated: 0,
            z0,
            extremal: ExtremalData {
                min_dim: 4,
                max_dim: 4,
                two_dim_min: None,
            },
        })
    }

    /// The declared fixed components of the path as (level, dim, index)
    /// triples, extrema first.
    pub fn fixed_component_triples(&self) -> Vec<(i64, u8, u8)> {
        let mut out = Vec::new();
        let min_level = self.crit_values[0];
        out.push((min_level, self.extremal.min_dim, 0));
        for _ in 0..self.m_isolated {
            out.push((-1, 0, 2));
        }
        if let Some(dec) = &self.z0 {
            for _ in &dec.parts {
                out.push((0, 2, 2));
            }
        }
        out.push((1, self.extremal.max_dim, 2));
        out
    }
}

/// Slice chain for a 2-sphere minimum, built bottom-up through the walls.
/// Only the total level-zero dual class matters for the slices; splitting
/// it into components is the caller's concern.
pub fn case_i_slices(
    family: FamilyLabel,
    root: SurfaceRoot,
    k: i64,
    m: u8,
    z0_total: Option<&CohClass>,
) -> Result<Vec<LevelSlice>> {
    if root == SurfaceRoot::ProjPlane {
        return Err(Error::WrongRoot {
            expected: "S2xS2 or ES2".into(),
            got: "CP2".into(),
        });
    }
    let bottom = SurfaceModel::new(root, 0)?;
    let surface0 = bottom.blow_up(m)?;
    if let Some(t) = z0_total {
        if t.surface() != surface0 {
            return Err(Error::BasisMismatch(
                t.surface().to_string(),
                surface0.to_string(),
            ));
        }
    }
    let e_bottom = bottom.class(&[k, -1])?;

    // Propagate the monotone anchor at level 0 down to the minimum.
    let mut e_mid = e_bottom.extended_to(surface0)?;
    for i in 0..m {
        e_mid = &e_mid + &surface0.basis_class(2 + i as usize);
    }
    let omega0 = surface0.anticanonical();
    let crit = family.crit_values();
    let omega_minus1 = &omega0 + &e_mid;
    let omega_at_bottom_wall = if m > 0 {
        omega_minus1.restricted_to(bottom)?
    } else {
        // No wall at −1; the same affine law reaches −2 directly.
        omega_minus1.clone()
    };
    let omega_min = &omega_at_bottom_wall + &e_bottom;
    let first = LevelSlice::new(
        -2,
        crit[1],
        e_bottom,
        omega_min,
        EndpointCheck::Lax,
        EndpointCheck::Strict,
    )?;

    let mut slices = vec![first];
    if m > 0 {
        let new_es: Vec<CohClass> = (0..m)
            .map(|i| surface0.basis_class(2 + i as usize))
            .collect();
        let next_hi = if z0_total.is_some() { 0 } else { 1 };
        let slice = cross_index_two(slices.last().unwrap(), &new_es, next_hi)?;
        slices.push(slice);
    }
    if let Some(total) = z0_total {
        let slice = cross_index_two(slices.last().unwrap(), std::slice::from_ref(total), 1)?;
        slices.push(slice);
    }
    debug_assert_eq!(slices.last().unwrap().omega_at_level(0)?, omega0);
    Ok(slices)
}

/// Slice chain for two 4-dimensional extrema at levels ±1.
pub fn case_ii_slices(
    family: FamilyLabel,
    euler: &CohClass,
    z0_total: Option<&CohClass>,
) -> Result<Vec<LevelSlice>> {
    let surface0 = euler.surface();
    if let Some(t) = z0_total {
        if t.surface() != surface0 {
            return Err(Error::BasisMismatch(
                t.surface().to_string(),
                surface0.to_string(),
            ));
        }
    }
    debug_assert_eq!(family.crit_values()[0], -1);
    let omega0 = surface0.anticanonical();
    let first_hi = if z0_total.is_some() { 0 } else { 1 };
    let first = LevelSlice::new(
        -1,
        first_hi,
        euler.clone(),
        &omega0 + euler,
        EndpointCheck::Strict,
        EndpointCheck::Strict,
    )?;
    let mut slices = vec![first];
    if let Some(total) = z0_total {
        let slice = cross_index_two(slices.last().unwrap(), std::slice::from_ref(total), 1)?;
        slices.push(slice);
    }
    Ok(slices)
}

/// Admissible (level, dim, index) rows for fixed components of the balanced
/// moment map, plus role markers for the extrema.
const FIXED_TABLE: [(i64, u8, u8); 9] = [
    (3, 0, 6),
    (2, 2, 4),
    (1, 4, 2),
    (1, 0, 4),
    (0, 2, 2),
    (-1, 0, 2),
    (-1, 4, 0),
    (-2, 2, 0),
    (-3, 0, 0),
];

/// Classifies a (level, dim, index) triple against the admissible rows.
pub fn fixed_component_admissible(level: i64, dim: u8, index: u8) -> bool {
    FIXED_TABLE.contains(&(level, dim, index))
}

/// Checks every declared fixed component of the path against the table of
/// admissible rows, and the extremal levels against the declared dimensions.
pub fn validate_level_structure(path: &MomentPath) -> bool {
    for (level, dim, index) in path.fixed_component_triples() {
        if !fixed_component_admissible(level, dim, index) {
            return false;
        }
    }
    let min_level = path.crit_values[0];
    let min_ok = match path.extremal.min_dim {
        2 => min_level == -2 && path.extremal.two_dim_min.is_some(),
        4 => min_level == -1 && path.extremal.two_dim_min.is_none(),
        _ => false,
    };
    let max_ok = path.extremal.max_dim == 4 && *path.crit_values.last().unwrap() == 1;
    if !(min_ok && max_ok) {
        return false;
    }
    // Consecutive slices must be glued: matching levels and roots.
    for w in path.slices.windows(2) {
        if w[0].hi != w[1].lo
            || w[0].surface.root() != w[1].surface.root()
            || w[0].surface.blowups() > w[1].surface.blowups()
        {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{ComponentClass, Decomposition};

    fn hirzebruch_slice() -> LevelSlice {
        // omega_0 = 3x + 2y, euler = −x − y, on [0, 1].
        let h = SurfaceModel::hirzebruch();
        LevelSlice::new(
            0,
            1,
            h.class(&[-1, -1]).unwrap(),
            h.anticanonical(),
            EndpointCheck::Strict,
            EndpointCheck::Strict,
        )
        .unwrap()
    }

    #[test]
    fn dh_class_examples() {
        let s = hirzebruch_slice();
        let h = SurfaceModel::hirzebruch();
        assert_eq!(dh_class(&s, 1).unwrap(), h.class(&[4, 3]).unwrap());
        assert_eq!(dh_class(&s, 0).unwrap(), h.anticanonical());
        assert!(dh_class(&s, 2).is_err());

        let p = SurfaceModel::proj_plane();
        let s = LevelSlice::new(
            -1,
            0,
            p.class(&[-2]).unwrap(),
            p.class(&[1]).unwrap(),
            EndpointCheck::Strict,
            EndpointCheck::Strict,
        )
        .unwrap();
        assert_eq!(dh_class(&s, -1).unwrap(), p.class(&[1]).unwrap());
        assert_eq!(dh_class(&s, 0).unwrap(), p.class(&[3]).unwrap());
    }

    #[test]
    fn rational_interior_evaluation() {
        let s = hirzebruch_slice();
        let mid = s.omega_at(Rational64::new(1, 2)).unwrap();
        assert_eq!(mid, vec![Rational64::new(7, 2), Rational64::new(5, 2)]);
    }

    #[test]
    fn crossing_accumulates_euler_class() {
        // kx − y with m points and a fixed surface, per the level-zero wall
        // law e(P_0^+) = (a+k)x + (b−1)y + Σ(c_i+1)E_i.
        let h = SurfaceModel::hirzebruch();
        let h1 = h.blow_up(1).unwrap();
        let k = -1;
        let first = LevelSlice::new(
            -2,
            -1,
            h.class(&[k, -1]).unwrap(),
            h.class(&[1, 0]).unwrap(),
            EndpointCheck::Lax,
            EndpointCheck::Strict,
        )
        .unwrap();
        let e1 = h1.basis_class(2);
        let second = cross_index_two(&first, &[e1], 0).unwrap();
        assert_eq!(second.euler, h1.class(&[k, -1, 1]).unwrap());
        assert_eq!(second.lo_check, EndpointCheck::Lax);

        let z0 = h1.class(&[1, 1, -1]).unwrap();
        let third = cross_index_two(&second, &[z0], 1).unwrap();
        // (a+k)x + (b−1)y + (c+1)E with (a, b, c) = (1, 1, −1), k = −1.
        assert_eq!(third.euler, h1.class(&[0, 0, 0]).unwrap());
        assert_eq!(third.lo_check, EndpointCheck::Strict);

        let empty = cross_index_two(&second, &[], 1).unwrap();
        assert_eq!(empty.euler, second.euler);
    }

    #[test]
    fn positivity_catches_section_collapse() {
        // k = 0 on the twisted bundle: the section degree at the top level
        // is −k = 0, so the slice fails.
        let h = SurfaceModel::hirzebruch();
        let bad = LevelSlice::new(
            -2,
            1,
            h.class(&[0, -1]).unwrap(),
            h.class(&[3, 0]).unwrap(),
            EndpointCheck::Lax,
            EndpointCheck::Strict,
        )
        .unwrap();
        assert_eq!(check_positivity(&bad).unwrap(), Positivity::FailEndpoint);

        // k = 1 on the product root is a golden configuration.
        let q = SurfaceModel::quadric();
        let good = LevelSlice::new(
            -2,
            1,
            q.class(&[1, -1]).unwrap(),
            q.class(&[4, 0]).unwrap(),
            EndpointCheck::Lax,
            EndpointCheck::Strict,
        )
        .unwrap();
        assert_eq!(check_positivity(&good).unwrap(), Positivity::Ok);

        // Degenerate top class.
        let p = SurfaceModel::proj_plane();
        let degenerate = LevelSlice::new(
            -1,
            1,
            p.class(&[3]).unwrap(),
            p.class(&[6]).unwrap(),
            EndpointCheck::Strict,
            EndpointCheck::Strict,
        )
        .unwrap();
        assert_eq!(
            check_positivity(&degenerate).unwrap(),
            Positivity::FailEndpoint
        );
    }

    #[test]
    fn midpoint_failure_is_distinguished() {
        // Endpoint checks with threshold 1 confine the class to the forward
        // cone of the (1, n) lattice, which is convex, so the interior
        // square cannot dip for a slice with two strict endpoints. The
        // midpoint branch is reachable only through degenerate lax
        // endpoints, as in this synthetic slice collapsing along a ruling.
        let q = SurfaceModel::quadric();
        let s = LevelSlice::new(
            0,
            1,
            q.class(&[1, 0]).unwrap(),
            q.class(&[1, 0]).unwrap(),
            EndpointCheck::Lax,
            EndpointCheck::Lax,
        )
        .unwrap();
        assert_eq!(check_positivity(&s).unwrap(), Positivity::FailMidpoint);
    }

    #[test]
    fn removing_a_crossing_class_keeps_the_lower_endpoint() {
        // The class at the lower wall is pinned by the wall itself, so the
        // endpoint test there cannot depend on which classes crossed.
        let h = SurfaceModel::hirzebruch();
        let first = LevelSlice::new(
            -2,
            0,
            h.class(&[-1, -1]).unwrap(),
            h.class(&[1, 0]).unwrap(),
            EndpointCheck::Lax,
            EndpointCheck::Strict,
        )
        .unwrap();
        let with = cross_index_two(&first, &[h.class(&[1, 1]).unwrap()], 1).unwrap();
        let without = cross_index_two(&first, &[], 1).unwrap();
        assert_eq!(with.omega_lo, without.omega_lo);
        assert_eq!(
            with.omega_at_level(with.lo).unwrap(),
            without.omega_at_level(without.lo).unwrap()
        );
    }

    #[test]
    fn level_structure_table() {
        assert!(fixed_component_admissible(0, 2, 2));
        assert!(!fixed_component_admissible(0, 0, 2));
        assert!(fixed_component_admissible(1, 4, 2));

        let path =
            MomentPath::assemble_case_i(FamilyLabel::I1, SurfaceRoot::Hirzebruch, -1, 0, None)
                .unwrap();
        assert!(validate_level_structure(&path));

        let q = SurfaceModel::quadric();
        let z0 = Decomposition {
            parts: vec![ComponentClass::new(q, q.basis_class(0)).unwrap()],
        };
        let path =
            MomentPath::assemble_case_ii(FamilyLabel::II22, q.class(&[0, 1]).unwrap(), Some(z0))
                .unwrap();
        assert!(validate_level_structure(&path));
    }

    #[test]
    fn case_i_wall_crossing_round_trip() {
        // The rebuilt Euler class above level 0 matches the closed form
        // (a+k)x + (b−1)y + Σ(c_i+1)E_i, and the level-t class matches
        // (3−(a+k)t)x + (2+(1−b)t)y − Σ(1+(c_i+1)t)E_i for the odd root.
        let (a, b, c1, k) = (1i64, 1i64, -1i64, -1i64);
        let h1 = SurfaceModel::hirzebruch().blow_up(1).unwrap();
        let z0 = Decomposition {
            parts: vec![ComponentClass::new(h1, h1.class(&[a, b, c1]).unwrap()).unwrap()],
        };
        let path =
            MomentPath::assemble_case_i(FamilyLabel::I41, SurfaceRoot::Hirzebruch, k, 1, Some(z0))
                .unwrap();
        let top = path.slices.last().unwrap();
        assert_eq!(top.euler, h1.class(&[a + k, b - 1, c1 + 1]).unwrap());
        for t in 0..=1 {
            assert_eq!(
                top.omega_at_level(t).unwrap(),
                h1.class(&[3 - (a + k) * t, 2 + (1 - b) * t, -(1 + (c1 + 1) * t),])
                    .unwrap()
            );
        }
    }
}
