//! Closed-form topological invariants of a candidate: the cubed first
//! Chern number via the two localization formulas, the second Betti number
//! via a counting rule, and extremal fixed-component volumes.

use crate::lattice::{CohClass, SurfaceModel};
use crate::reduction::MomentPath;
use crate::Result;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub c1_cubed: i64,
    pub b2: i64,
    pub vol_min: i64,
    pub vol_max: i64,
    pub vol_z0: Vec<i64>,
}

/// Chern number for a 2-dimensional minimum:
/// `24 + 4·b_min − m + ⟨3c₁² − 3c₁e + e², [M₀]⟩` with `e = e(P_0^+)`.
pub fn c1_cubed_case_i(
    b_min: i64,
    m: u8,
    surface0: SurfaceModel,
    e0_plus: &CohClass,
) -> Result<i64> {
    let c1 = surface0.anticanonical();
    let value = 24 + 4 * b_min - m as i64 + 3 * c1.pair(&c1)? - 3 * c1.pair(e0_plus)?
        + e0_plus.pair(e0_plus)?;
    Ok(value)
}

/// Chern number for two 4-dimensional extrema:
/// `⟨2e² + 6c₁² − 3c₁[Z₀] + 2e[Z₀] + [Z₀]², [M₀]⟩` with `e = e(P_{−1}^+)`.
pub fn c1_cubed_case_ii(surface0: SurfaceModel, e: &CohClass, z0: &CohClass) -> Result<i64> {
    let c1 = surface0.anticanonical();
    let value =
        2 * e.pair(e)? + 6 * c1.pair(&c1)? - 3 * c1.pair(z0)? + 2 * e.pair(z0)? + z0.pair(z0)?;
    Ok(value)
}

/// Second Betti number of the total space: the rank of the middle lattice,
/// plus one per level-zero component, plus one per 4-dimensional extremum,
/// minus one. Inferred from the tables and validated against all 56 rows.
pub fn b2(surface0: SurfaceModel, num_z0_components: usize, num_4dim_extrema: usize) -> i64 {
    debug_assert!(matches!(num_4dim_extrema, 1 | 2));
    surface0.rank() as i64 + num_z0_components as i64 + num_4dim_extrema as i64 - 1
}

/// Volumes of the extremal fixed components. A 2-sphere minimum has volume
/// `b_min + 2`; a 4-dimensional extremum has the square of the reduced
/// class at its level.
pub fn extremal_volumes(path: &MomentPath) -> Result<(i64, i64)> {
    let vol_min = match path.extremal.two_dim_min {
        Some(data) => data.b_min + 2,
        None => {
            let first = &path.slices[0];
            let omega = first.omega_at_level(first.lo)?;
            omega.pair(&omega)?
        }
    };
    let omega_top = path.omega_top();
    let vol_max = omega_top.pair(&omega_top)?;
    Ok((vol_min, vol_max))
}

/// Full invariant report for a path.
pub fn report(path: &MomentPath) -> Result<InvariantReport> {
    let surface0 = path.surface0();
    let z0_parts: Vec<CohClass> = path
        .z0
        .iter()
        .flat_map(|d| d.parts.iter().map(|p| p.cls.clone()))
        .collect();
    let num_4dim = if path.extremal.min_dim == 4 { 2 } else { 1 };
    let c1_cubed = match path.extremal.two_dim_min {
        Some(data) => c1_cubed_case_i(data.b_min, path.m_isolated, surface0, path.euler_top())?,
        None => {
            let mut z0_total = surface0.zero();
            for p in &z0_parts {
                z0_total = &z0_total + p;
            }
            let e_bottom = &path.slices[0].euler;
            c1_cubed_case_ii(surface0, e_bottom, &z0_total)?
        }
    };
    let (vol_min, vol_max) = extremal_volumes(path)?;
    let omega0 = path.omega0();
    let vol_z0 = z0_parts
        .iter()
        .map(|p| omega0.pair(p))
        .collect::<Result<Vec<_>>>()?;
    Ok(InvariantReport {
        c1_cubed,
        b2: b2(surface0, z0_parts.len(), num_4dim),
        vol_min,
        vol_max,
        vol_z0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{ComponentClass, Decomposition};
    use crate::family::FamilyLabel;
    use crate::lattice::SurfaceRoot;
    use crate::reduction::MomentPath;

    #[test]
    fn chern_case_i_spot_values() {
        // Odd minimum, no walls: 24 − 4 + 0 + 24 + 9 + 1 = 54.
        let h = SurfaceModel::hirzebruch();
        let e = h.class(&[-1, -1]).unwrap();
        assert_eq!(c1_cubed_case_i(-1, 0, h, &e).unwrap(), 54);

        // One isolated point: 46.
        let h1 = h.blow_up(1).unwrap();
        let e = h1.class(&[-1, -1, 1]).unwrap();
        assert_eq!(c1_cubed_case_i(-1, 1, h1, &e).unwrap(), 46);

        // Product root at (a, b, k) = (1, 2, 0): 38.
        let q = SurfaceModel::quadric();
        let e = q.class(&[1, 1]).unwrap();
        assert_eq!(c1_cubed_case_i(0, 0, q, &e).unwrap(), 38);
    }

    #[test]
    fn chern_case_ii_spot_values() {
        let p = SurfaceModel::proj_plane();
        assert_eq!(c1_cubed_case_ii(p, &p.zero(), &p.zero()).unwrap(), 54);
        assert_eq!(
            c1_cubed_case_ii(p, &p.class(&[-2]).unwrap(), &p.class(&[4]).unwrap()).unwrap(),
            26
        );
        let q = SurfaceModel::quadric();
        assert_eq!(
            c1_cubed_case_ii(q, &q.class(&[1, -1]).unwrap(), &q.zero()).unwrap(),
            44
        );
    }

    #[test]
    fn b2_counting_rule() {
        let h2 = SurfaceModel::hirzebruch().blow_up(2).unwrap();
        assert_eq!(b2(h2, 1, 1), 5);
        for k in 2..=8u8 {
            let xk = SurfaceModel::x_k(k).unwrap();
            assert_eq!(b2(xk, 0, 2), k as i64 + 2);
        }
        let x1 = SurfaceModel::x_k(1).unwrap();
        assert_eq!(b2(x1, 2, 2), 5);
    }

    #[test]
    fn extremal_volume_examples() {
        // 2u on the plane: volumes (25, 1).
        let p = SurfaceModel::proj_plane();
        let path =
            MomentPath::assemble_case_ii(FamilyLabel::II11, p.class(&[2]).unwrap(), None).unwrap();
        assert_eq!(extremal_volumes(&path).unwrap(), (25, 1));

        // x + y on the product: volumes (18, 2).
        let q = SurfaceModel::quadric();
        let path = MomentPath::assemble_case_ii(FamilyLabel::II12, q.class(&[1, 1]).unwrap(), None)
            .unwrap();
        assert_eq!(extremal_volumes(&path).unwrap(), (18, 2));

        // Odd 2-sphere minimum with k = −1: volumes (1, 15).
        let path =
            MomentPath::assemble_case_i(FamilyLabel::I1, SurfaceRoot::Hirzebruch, -1, 0, None)
                .unwrap();
        assert_eq!(extremal_volumes(&path).unwrap(), (1, 15));
    }

    #[test]
    fn case_ii_report_with_empty_z0_uses_degenerate_branch() {
        let q = SurfaceModel::quadric();
        let path = MomentPath::assemble_case_ii(FamilyLabel::II12, q.class(&[1, 0]).unwrap(), None)
            .unwrap();
        let rep = report(&path).unwrap();
        assert_eq!(rep.c1_cubed, 48);
        assert_eq!(rep.b2, 3);
        assert_eq!(rep.vol_z0, Vec::<i64>::new());
    }

    #[test]
    fn case_ii_report_with_components() {
        let q = SurfaceModel::quadric();
        let z0 = Decomposition {
            parts: vec![
                ComponentClass::new(q, q.basis_class(0)).unwrap(),
                ComponentClass::new(q, q.basis_class(0)).unwrap(),
            ],
        };
        let path =
            MomentPath::assemble_case_ii(FamilyLabel::II22, q.class(&[-1, 0]).unwrap(), Some(z0))
                .unwrap();
        let rep = report(&path).unwrap();
        assert_eq!(rep.c1_cubed, 36);
        assert_eq!(rep.b2, 5);
        assert_eq!(rep.vol_min, 4);
        assert_eq!(rep.vol_max, 4);
        assert_eq!(rep.vol_z0, vec![2, 2]);
    }
}
