//! Adjunction genus and decompositions of a class into disjoint realizable
//! fixed-surface components.
//!
//! A class is admissible as one connected component iff its anticanonical
//! degree (symplectic volume) is at least 1 and its adjunction genus is
//! nonnegative. A decomposition splits a target class into a multiset of
//! admissible components that are pairwise disjoint, i.e. every unordered
//! pair — including a repeated class paired with itself — has intersection
//! number zero.

use crate::lattice::{CohClass, SurfaceModel};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Adjunction genus `1 + (D² − (−K)·D)/2`. Integral by lattice parity;
/// negative values mean the class carries no connected symplectic surface.
pub fn genus(surface: SurfaceModel, d: &CohClass) -> Result<i64> {
    let dd = d.pair(d)?;
    let deg = surface.anticanonical().pair(d)?;
    debug_assert_eq!((dd - deg).rem_euclid(2), 0);
    Ok(1 + (dd - deg) / 2)
}

/// Anticanonical degree of the class, i.e. its symplectic volume at the
/// monotone level.
pub fn volume(surface: SurfaceModel, d: &CohClass) -> Result<i64> {
    surface.anticanonical().pair(d)
}

/// Whether `d` can be the class of one connected fixed surface.
pub fn is_realizable(surface: SurfaceModel, d: &CohClass) -> Result<bool> {
    Ok(volume(surface, d)? >= 1 && genus(surface, d)? >= 0)
}

/// A realizable component class with its cached genus and volume.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ComponentClass {
    pub cls: CohClass,
    pub genus: i64,
    pub volume: i64,
}

impl ComponentClass {
    pub fn new(surface: SurfaceModel, cls: CohClass) -> Result<ComponentClass> {
        let g = genus(surface, &cls)?;
        let v = volume(surface, &cls)?;
        if v < 1 || g < 0 {
            return Err(Error::Parse(format!(
                "{cls} is not realizable (volume {v}, genus {g})"
            )));
        }
        debug_assert!(cls.pair(&cls)? >= -1);
        Ok(ComponentClass {
            cls,
            genus: g,
            volume: v,
        })
    }
}

/// A multiset of pairwise-disjoint components summing to a target class,
/// kept in lexicographically nonincreasing order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Decomposition {
    pub parts: Vec<ComponentClass>,
}

impl Decomposition {
    pub fn total(&self, surface: SurfaceModel) -> CohClass {
        let mut sum = surface.zero();
        for p in &self.parts {
            sum = &sum + &p.cls;
        }
        sum
    }
}

/// All decompositions of `target` into disjoint realizable components.
/// An empty result is meaningful: the class carries no admissible fixed
/// surface configuration.
pub fn enumerate_decompositions(
    surface: SurfaceModel,
    target: &CohClass,
) -> Result<Vec<Decomposition>> {
    let total_volume = volume(surface, target)?;
    if total_volume < 1 {
        return Ok(Vec::new());
    }
    let bound = total_volume + 2;
    let candidates = candidate_parts(surface, total_volume, bound)?;
    for c in &candidates {
        if c.cls.coeffs().iter().any(|&v| v.abs() >= bound) {
            return Err(Error::EnumerationTruncated(format!(
                "decomposition part {} of {target}",
                c.cls
            )));
        }
    }

    let mut out = Vec::new();
    let mut chosen: Vec<ComponentClass> = Vec::new();
    search(
        &candidates,
        0,
        target.clone(),
        total_volume,
        &mut chosen,
        &mut out,
    )?;

    // Re-verify every result independently of the search path. A repeated
    // class shows up as an unordered pair of equal entries, so the i < j
    // sweep also enforces zero self-pairing for multiplicities above one.
    for dec in &out {
        assert_eq!(dec.total(surface), *target);
        for (i, a) in dec.parts.iter().enumerate() {
            for b in &dec.parts[i + 1..] {
                assert_eq!(a.cls.pair(&b.cls)?, 0, "components intersect");
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Realizable classes inside the coefficient box with volume in `[1, max]`,
/// sorted lexicographically nonincreasing.
fn candidate_parts(
    surface: SurfaceModel,
    max_volume: i64,
    bound: i64,
) -> Result<Vec<ComponentClass>> {
    let rank = surface.rank();
    let mut out = Vec::new();
    let mut coeffs = vec![0i64; rank];
    // Interval pruning on the volume, which is linear in the coefficients.
    let anti = surface.anticanonical();
    let weights: Vec<i64> = (0..rank)
        .map(|i| anti.dot(&surface.basis_class(i)))
        .collect();
    struct Scan<'a> {
        surface: SurfaceModel,
        weights: &'a [i64],
        bound: i64,
        max_volume: i64,
    }
    fn rec(
        scan: &Scan<'_>,
        idx: usize,
        partial_volume: i64,
        coeffs: &mut Vec<i64>,
        out: &mut Vec<ComponentClass>,
    ) -> Result<()> {
        if idx == coeffs.len() {
            if partial_volume < 1 || partial_volume > scan.max_volume {
                return Ok(());
            }
            let cls = scan.surface.class(coeffs)?;
            if cls.is_zero() {
                return Ok(());
            }
            if is_realizable(scan.surface, &cls)? {
                out.push(ComponentClass::new(scan.surface, cls)?);
            }
            return Ok(());
        }
        let tail_min: i64 = scan.weights[idx..]
            .iter()
            .map(|w| -(w.abs()) * scan.bound)
            .sum();
        let tail_max: i64 = scan.weights[idx..]
            .iter()
            .map(|w| w.abs() * scan.bound)
            .sum();
        if partial_volume + tail_max < 1 || partial_volume + tail_min > scan.max_volume {
            return Ok(());
        }
        for v in -scan.bound..=scan.bound {
            coeffs[idx] = v;
            rec(
                scan,
                idx + 1,
                partial_volume + scan.weights[idx] * v,
                coeffs,
                out,
            )?;
        }
        coeffs[idx] = 0;
        Ok(())
    }
    let scan = Scan {
        surface,
        weights: &weights,
        bound,
        max_volume,
    };
    rec(&scan, 0, 0, &mut coeffs, &mut out)?;
    out.sort_by(|a, b| b.cls.cmp(&a.cls));
    Ok(out)
}

fn search(
    candidates: &[ComponentClass],
    start: usize,
    remaining: CohClass,
    remaining_volume: i64,
    chosen: &mut Vec<ComponentClass>,
    out: &mut Vec<Decomposition>,
) -> Result<()> {
    if remaining.is_zero() {
        if !chosen.is_empty() {
            out.push(Decomposition {
                parts: chosen.clone(),
            });
        }
        return Ok(());
    }
    if remaining_volume < 1 {
        return Ok(());
    }
    for (j, cand) in candidates.iter().enumerate().skip(start) {
        if cand.volume > remaining_volume {
            continue;
        }
        // Disjointness against everything already chosen; a repeated class
        // must in particular be orthogonal to itself.
        let mut ok = true;
        for prev in chosen.iter() {
            if cand.cls.pair(&prev.cls)? != 0 {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        chosen.push(cand.clone());
        let next_remaining = &remaining - &cand.cls;
        search(
            candidates,
            j,
            next_remaining,
            remaining_volume - cand.volume,
            chosen,
            out,
        )?;
        chosen.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::SurfaceRoot;

    fn parts_of(dec: &Decomposition) -> Vec<Vec<i64>> {
        dec.parts.iter().map(|p| p.cls.coeffs().to_vec()).collect()
    }

    #[test]
    fn genus_examples() {
        let p = SurfaceModel::proj_plane();
        assert_eq!(genus(p, &p.anticanonical()).unwrap(), 1); // 3u is a torus
        assert_eq!(genus(p, &p.class(&[4]).unwrap()).unwrap(), 3);
        let q = SurfaceModel::quadric();
        assert_eq!(genus(q, &q.basis_class(0)).unwrap(), 0);
    }

    #[test]
    fn realizability_examples() {
        let h = SurfaceModel::hirzebruch();
        assert!(!is_realizable(h, &h.class(&[0, 2]).unwrap()).unwrap()); // genus −2
        assert!(is_realizable(h, &h.class(&[1, 1]).unwrap()).unwrap());
        let q = SurfaceModel::quadric();
        assert!(!is_realizable(q, &q.class(&[-1, 2]).unwrap()).unwrap());
    }

    #[test]
    fn decomposition_examples() {
        let h = SurfaceModel::hirzebruch();
        let decs = enumerate_decompositions(h, &h.class(&[1, 2]).unwrap()).unwrap();
        assert_eq!(decs.len(), 1);
        assert_eq!(parts_of(&decs[0]), vec![vec![1, 1], vec![0, 1]]);

        let q = SurfaceModel::quadric();
        let decs = enumerate_decompositions(q, &q.class(&[2, 0]).unwrap()).unwrap();
        assert_eq!(decs.len(), 1);
        assert_eq!(parts_of(&decs[0]), vec![vec![1, 0], vec![1, 0]]);

        let decs = enumerate_decompositions(h, &h.class(&[0, 2]).unwrap()).unwrap();
        assert!(decs.is_empty());
    }

    #[test]
    fn repeated_section_rejected_on_twisted_bundle() {
        // {y, y} needs y·y = 0; on the twisted bundle y² = −1.
        let h = SurfaceModel::hirzebruch();
        let decs = enumerate_decompositions(h, &h.class(&[0, 2]).unwrap()).unwrap();
        assert!(decs.is_empty());
        // On the product of spheres y² = 0, so {y, y} is fine.
        let q = SurfaceModel::quadric();
        let decs = enumerate_decompositions(q, &q.class(&[0, 2]).unwrap()).unwrap();
        assert_eq!(decs.len(), 1);
        assert_eq!(parts_of(&decs[0]), vec![vec![0, 1], vec![0, 1]]);
    }

    #[test]
    fn monotone_quadric_parity() {
        // Every realizable class on the monotone quadric has even volume.
        let q = SurfaceModel::quadric();
        for p in -6..=6 {
            for r in -6..=6 {
                let d = q.class(&[p, r]).unwrap();
                if is_realizable(q, &d).unwrap() {
                    assert_eq!(volume(q, &d).unwrap() % 2, 0);
                }
            }
        }
    }

    #[test]
    fn blown_up_target() {
        let h1 = SurfaceModel::new(SurfaceRoot::Hirzebruch, 1).unwrap();
        let target = h1.class(&[1, 1, -1]).unwrap();
        let decs = enumerate_decompositions(h1, &target).unwrap();
        assert_eq!(decs.len(), 1);
        assert_eq!(parts_of(&decs[0]), vec![vec![1, 1, -1]]);
        assert_eq!(decs[0].parts[0].genus, 0);
    }
}
