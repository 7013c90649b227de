//! Per-family finite searches over integer parameters, symmetry
//! canonicalization, and the emptiness scan for the blown-up-plane
//! level-zero scenario.
//!
//! Every pruning rule in the scans is one of the uniform positivity or
//! volume constraints evaluated early, so nothing inside a search box is
//! ever skipped. Survivors are rebuilt through the wall-crossing machinery
//! and re-filtered by the full pipeline, then canonicalized and
//! deduplicated. A survivor touching its box boundary is an error, never a
//! silent drop.

pub use crate::certificate::{
    check_certificate, prove_empty_case_ii_xk, CertifiedConstraint, ConstraintId,
    InfeasibilityCertificate,
};

use crate::catalog::TFDRecord;
use crate::curves::{enumerate_decompositions, volume, ComponentClass, Decomposition};
use crate::family::{FamilyLabel, ALL_FAMILIES};
use crate::lattice::{CohClass, SurfaceModel, SurfaceRoot};
use crate::reduction::{
    case_i_slices, case_ii_slices, check_positivity, validate_level_structure, LevelSlice,
    MomentPath, Positivity,
};
use crate::{Error, Result};
use std::collections::BTreeMap;

/// Coefficient box for the 2-sphere-minimum families (k, a, b, c_i).
pub const CASE_I_BOX: i64 = 8;
/// Coefficient box for the 4-dimensional-extrema families (Euler and
/// level-zero dual coefficients).
pub const CASE_II_BOX: i64 = 5;

/// Search-space description of one family.
#[derive(Clone, Copy, Debug)]
pub struct FamilySpec {
    pub label: FamilyLabel,
    pub crit_values: &'static [i64],
    /// Half-width of the coefficient search box.
    pub coeff_box: i64,
    /// Range of isolated index-two point counts.
    pub m_range: (u8, u8),
}

pub fn family_spec(label: FamilyLabel) -> FamilySpec {
    let coeff_box = if label.is_case_i() {
        CASE_I_BOX
    } else {
        CASE_II_BOX
    };
    let m_range = match label {
        FamilyLabel::I2 | FamilyLabel::I41 | FamilyLabel::I42 => (1, 7),
        _ => (0, 0),
    };
    FamilySpec {
        label,
        crit_values: label.crit_values(),
        coeff_box,
        m_range,
    }
}

/// Result of one family scan: canonical records plus any candidates that
/// passed every endpoint test and failed only the interior midpoint check.
#[derive(Clone, Debug, Default)]
pub struct FamilyEnumeration {
    pub records: Vec<TFDRecord>,
    pub flagged: Vec<String>,
}

/// The full classification run.
#[derive(Clone, Debug)]
pub struct Classification {
    pub records: Vec<TFDRecord>,
    pub flagged: Vec<String>,
}

/// Enumerates one family exhaustively.
pub fn enumerate_family(label: FamilyLabel) -> Result<FamilyEnumeration> {
    let mut out = if label.is_case_i() {
        scan_case_i(label)?
    } else {
        scan_case_ii(label)?
    };
    finalize(&mut out)?;
    Ok(out)
}

/// Enumerates all thirteen families; scans run in parallel, the merge is a
/// deterministic single-threaded reduce.
pub fn enumerate_all(jobs: Option<usize>) -> Result<Classification> {
    let run = || -> Vec<Result<FamilyEnumeration>> {
        use rayon::prelude::*;
        ALL_FAMILIES
            .par_iter()
            .map(|l| enumerate_family(*l))
            .collect()
    };
    let results = match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Parse(e.to_string()))?
            .install(run),
        None => run(),
    };
    let mut records = Vec::new();
    let mut flagged = Vec::new();
    for r in results {
        let fam = r?;
        records.extend(fam.records);
        flagged.extend(fam.flagged);
    }
    crate::catalog::sort_canonically(&mut records);
    Ok(Classification { records, flagged })
}

/// Dedup by canonical content, sort, and enforce box saturation.
fn finalize(out: &mut FamilyEnumeration) -> Result<()> {
    let mut seen = BTreeMap::new();
    for r in std::mem::take(&mut out.records) {
        seen.entry(r.content_key()).or_insert(r);
    }
    out.records = seen.into_values().collect();
    for r in &out.records {
        assert_saturation(r)?;
    }
    crate::catalog::sort_canonically(&mut out.records);
    out.flagged.sort();
    out.flagged.dedup();
    Ok(())
}

/// No emitted record may have a parameter on its search-box boundary.
fn assert_saturation(record: &TFDRecord) -> Result<()> {
    let spec = family_spec(record.family);
    let bound = spec.coeff_box;
    let mut coeffs: Vec<i64> = Vec::new();
    if record.family.is_case_i() {
        // k is the x-coefficient of the Euler class at the minimum.
        coeffs.push(record.path.slices[0].euler.coeffs()[0]);
    } else {
        coeffs.extend(record.path.slices[0].euler.coeffs());
    }
    for (cls, _) in &record.z0_components {
        coeffs.extend(cls.coeffs());
    }
    if coeffs.iter().any(|c| c.abs() >= bound) {
        return Err(Error::EnumerationTruncated(format!(
            "record {} in family {}",
            record.content_key(),
            record.family
        )));
    }
    Ok(())
}

enum SliceCheck {
    Pass,
    RejectEndpoint,
    RejectMidpoint,
}

fn check_slices(slices: &[LevelSlice]) -> Result<SliceCheck> {
    for s in slices {
        match check_positivity(s)? {
            Positivity::Ok => {}
            Positivity::FailEndpoint => return Ok(SliceCheck::RejectEndpoint),
            Positivity::FailMidpoint => return Ok(SliceCheck::RejectMidpoint),
        }
    }
    Ok(SliceCheck::Pass)
}

/// Lower bound on `k` from the extremal Euler form: the minimum has
/// volume `b_min + 2 ≥ 1`.
fn k_lower_bound(root: SurfaceRoot) -> i64 {
    match root {
        SurfaceRoot::Hirzebruch => -1,
        SurfaceRoot::Quadric => 0,
        SurfaceRoot::ProjPlane => unreachable!("case-I roots are two-ruling surfaces"),
    }
}

fn roots_of(label: FamilyLabel) -> &'static [SurfaceRoot] {
    match label {
        FamilyLabel::I1 | FamilyLabel::I2 => &[SurfaceRoot::Hirzebruch, SurfaceRoot::Quadric],
        FamilyLabel::I31 | FamilyLabel::I41 => &[SurfaceRoot::Hirzebruch],
        FamilyLabel::I32 | FamilyLabel::I42 => &[SurfaceRoot::Quadric],
        _ => unreachable!("case-II families fix their surfaces directly"),
    }
}

fn scan_case_i(label: FamilyLabel) -> Result<FamilyEnumeration> {
    let spec = family_spec(label);
    let bound = spec.coeff_box;
    let mut out = FamilyEnumeration::default();
    for &root in roots_of(label) {
        for k in k_lower_bound(root)..=bound {
            for m in spec.m_range.0..=spec.m_range.1 {
                if label.has_level_zero() {
                    scan_case_i_with_z0(label, root, k, m, bound, &mut out)?;
                } else {
                    let slices = case_i_slices(label, root, k, m, None)?;
                    match check_slices(&slices)? {
                        SliceCheck::Pass => {
                            let path = MomentPath::assemble_case_i(label, root, k, m, None)?;
                            push_candidate(path, &mut out)?;
                        }
                        SliceCheck::RejectEndpoint => {}
                        SliceCheck::RejectMidpoint => {
                            out.flagged
                                .push(format!("{label}: root {root:?} k={k} m={m}"));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Scans the level-zero dual class `ax + by + Σ c_i E_i`.
///
/// The pruning rules are degree constraints at the top level and the
/// volume bound, all instances of the full positivity filter:
/// for the blow-up coefficients, `c_i ≥ −1` (degree of E_i) and
/// `b + c_i ≤ 0` (degree of x − E_i); on the product root additionally
/// `k + a + c_i ≤ −1` (degree of y − E_i); on the twisted root
/// `c_i + c_j ≤ −2 − a − k` (degree of x + y − E_i − E_j).
fn scan_case_i_with_z0(
    label: FamilyLabel,
    root: SurfaceRoot,
    k: i64,
    m: u8,
    bound: i64,
    out: &mut FamilyEnumeration,
) -> Result<()> {
    let surface0 = SurfaceModel::new(root, m)?;
    let hirzebruch = root == SurfaceRoot::Hirzebruch;
    for a in -bound..=bound {
        for b in -bound..=bound {
            if m > 0 {
                // Degrees of y (resp. the rulings) at the top level.
                if hirzebruch && b - a - k < 1 {
                    continue;
                }
                if !hirzebruch && a + k > 1 {
                    continue;
                }
                if b > 1 {
                    continue;
                }
            }
            let needed = if hirzebruch {
                1 - (2 * a + b)
            } else {
                1 - (2 * a + 2 * b)
            };
            let mut tails: Vec<Vec<i64>> = Vec::new();
            if m == 0 {
                if 0 >= needed {
                    tails.push(Vec::new());
                }
            } else {
                let mut hi_c = std::cmp::min(-b, bound);
                if !hirzebruch {
                    hi_c = std::cmp::min(hi_c, -1 - k - a);
                }
                if hi_c >= -1 {
                    let mut prefix = Vec::new();
                    collect_blowup_tails(
                        m as usize,
                        hi_c,
                        needed,
                        hirzebruch,
                        -2 - a - k,
                        &mut prefix,
                        &mut tails,
                    );
                }
            }
            for tail in tails {
                let mut coeffs = vec![a, b];
                coeffs.extend(&tail);
                let pd = surface0.class(&coeffs)?;
                if volume(surface0, &pd)? < 1 {
                    continue;
                }
                let slices = case_i_slices(label, root, k, m, Some(&pd))?;
                match check_slices(&slices)? {
                    SliceCheck::Pass => {}
                    SliceCheck::RejectEndpoint => continue,
                    SliceCheck::RejectMidpoint => {
                        out.flagged
                            .push(format!("{label}: root {root:?} k={k} m={m} pd={pd}"));
                        continue;
                    }
                }
                for dec in enumerate_decompositions(surface0, &pd)? {
                    let path = MomentPath::assemble_case_i(label, root, k, m, Some(dec))?;
                    push_candidate(path, out)?;
                }
            }
        }
    }
    Ok(())
}

/// Nonincreasing blow-up coefficient tuples in `[−1, hi_c]` whose partial
/// sums can still reach the volume bound.
fn collect_blowup_tails(
    m: usize,
    hi_c: i64,
    needed: i64,
    hirzebruch: bool,
    pair_cap: i64,
    prefix: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    if prefix.len() == m {
        out.push(prefix.clone());
        return;
    }
    let top = prefix.last().copied().unwrap_or(hi_c);
    let slots_after = (m - prefix.len() - 1) as i64;
    let partial: i64 = prefix.iter().sum();
    let mut c = top;
    while c >= -1 {
        // All later entries are at most c.
        if partial + c + slots_after * c < needed {
            break;
        }
        if hirzebruch && !prefix.is_empty() && prefix[0] + c > pair_cap {
            c -= 1;
            continue;
        }
        prefix.push(c);
        collect_blowup_tails(m, hi_c, needed, hirzebruch, pair_cap, prefix, out);
        prefix.pop();
        c -= 1;
    }
}

fn push_candidate(path: MomentPath, out: &mut FamilyEnumeration) -> Result<()> {
    debug_assert!(validate_level_structure(&path));
    let record = TFDRecord::from_path(String::new(), path, None)?;
    out.records.push(canonicalize(&record)?);
    Ok(())
}

fn case_ii_surfaces(label: FamilyLabel) -> Vec<SurfaceModel> {
    match label {
        FamilyLabel::II11 | FamilyLabel::II21 => vec![SurfaceModel::proj_plane()],
        FamilyLabel::II12 | FamilyLabel::II22 => vec![SurfaceModel::quadric()],
        FamilyLabel::II13 => vec![SurfaceModel::hirzebruch()],
        FamilyLabel::II23 => vec![SurfaceModel::x_k(1).expect("rank 2")],
        FamilyLabel::II14 => (2..=8)
            .map(|k| SurfaceModel::x_k(k).expect("rank at most 9"))
            .collect(),
        _ => unreachable!("case-I families handled separately"),
    }
}

fn scan_case_ii(label: FamilyLabel) -> Result<FamilyEnumeration> {
    let spec = family_spec(label);
    let bound = spec.coeff_box;
    let mut out = FamilyEnumeration::default();
    for surface in case_ii_surfaces(label) {
        let eulers = euler_candidates(surface, bound)?;
        if label.has_level_zero() {
            let duals = dual_candidates(surface, bound)?;
            for e in &eulers {
                for pd in &duals {
                    let slices = case_ii_slices(label, e, Some(pd))?;
                    match check_slices(&slices)? {
                        SliceCheck::Pass => {}
                        SliceCheck::RejectEndpoint => continue,
                        SliceCheck::RejectMidpoint => {
                            out.flagged.push(format!("{label}: e={e} pd={pd}"));
                            continue;
                        }
                    }
                    for dec in enumerate_decompositions(surface, pd)? {
                        let path = MomentPath::assemble_case_ii(label, e.clone(), Some(dec))?;
                        push_candidate(path, &mut out)?;
                    }
                }
            }
        } else {
            for e in &eulers {
                let slices = case_ii_slices(label, e, None)?;
                match check_slices(&slices)? {
                    SliceCheck::Pass => {
                        let path = MomentPath::assemble_case_ii(label, e.clone(), None)?;
                        push_candidate(path, &mut out)?;
                    }
                    SliceCheck::RejectEndpoint => {}
                    SliceCheck::RejectMidpoint => {
                        out.flagged.push(format!("{label}: e={e}"));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Euler-class candidates, pruned per coordinate by the degree constraints
/// at both extremal levels: each blow-up coefficient must keep the degree
/// of its exceptional divisor at least 1 at t = ±1, which pins it to 0 on
/// the blown-up plane and to [−1, 1] on the rank-2 roots.
fn euler_candidates(surface: SurfaceModel, bound: i64) -> Result<Vec<CohClass>> {
    let rank = surface.rank();
    let omega0 = surface.anticanonical();
    let mut out = Vec::new();
    let mut coeffs = vec![0i64; rank];
    fn rec(
        surface: SurfaceModel,
        omega0: &CohClass,
        bound: i64,
        idx: usize,
        coeffs: &mut Vec<i64>,
        out: &mut Vec<CohClass>,
    ) -> Result<()> {
        let rank = surface.rank();
        if idx == rank {
            out.push(surface.class(coeffs)?);
            return Ok(());
        }
        for v in -bound..=bound {
            coeffs[idx] = v;
            // Degree of the idx-th basis class at t = ±1 must stay >= 1
            // once every coefficient it depends on is assigned. Basis
            // degrees only mix the two head coordinates, so from idx >= 1
            // the check is complete for coordinates <= idx.
            let mut reject = false;
            if idx >= 1 {
                for probe in 1..=idx {
                    let basis = surface.basis_class(probe);
                    let partial: Vec<i64> = coeffs[..=idx]
                        .iter()
                        .copied()
                        .chain(std::iter::repeat_n(0, rank - idx - 1))
                        .collect();
                    let e_partial = surface.class(&partial)?;
                    let d0 = omega0.pair(&basis)?;
                    let de = e_partial.pair(&basis)?;
                    if d0 - de < 1 || d0 + de < 1 {
                        reject = true;
                        break;
                    }
                }
            }
            if !reject {
                rec(surface, omega0, bound, idx + 1, coeffs, out)?;
            }
        }
        coeffs[idx] = 0;
        Ok(())
    }
    rec(surface, &omega0, bound, 0, &mut coeffs, &mut out)?;
    Ok(out)
}

/// Level-zero dual candidates: anything in the box with positive volume.
fn dual_candidates(surface: SurfaceModel, bound: i64) -> Result<Vec<CohClass>> {
    let rank = surface.rank();
    let mut out = Vec::new();
    let mut coeffs = vec![0i64; rank];
    fn rec(
        surface: SurfaceModel,
        bound: i64,
        idx: usize,
        coeffs: &mut Vec<i64>,
        out: &mut Vec<CohClass>,
    ) -> Result<()> {
        if idx == surface.rank() {
            let pd = surface.class(coeffs)?;
            if !pd.is_zero() && volume(surface, &pd)? >= 1 {
                out.push(pd);
            }
            return Ok(());
        }
        for v in -bound..=bound {
            coeffs[idx] = v;
            rec(surface, bound, idx + 1, coeffs, out)?;
        }
        coeffs[idx] = 0;
        Ok(())
    }
    rec(surface, bound, 0, &mut coeffs, &mut out)?;
    Ok(out)
}

/// Canonical representative of a record under the family's symmetry group:
/// blow-up index permutations always; for 4-dimensional extrema also the
/// moment reversal `(e, Z0) ↦ (−(e + Z0), Z0)` and, on the product root,
/// the ruling swap. Among reversal representatives the minimum keeps at
/// least the maximum's volume; ties and the remaining freedom are resolved
/// by the lexicographic key (−Z0, −|e|, −e, parts).
pub fn canonicalize(record: &TFDRecord) -> Result<TFDRecord> {
    if record.family.is_case_i() {
        canonicalize_case_i(record)
    } else {
        canonicalize_case_ii(record)
    }
}

fn z0_parts(record: &TFDRecord) -> Vec<CohClass> {
    record
        .z0_components
        .iter()
        .map(|(c, _)| c.clone())
        .collect()
}

fn decomposition_of(surface: SurfaceModel, parts: &[CohClass]) -> Result<Option<Decomposition>> {
    if parts.is_empty() {
        return Ok(None);
    }
    let mut out = Vec::new();
    for p in parts {
        out.push(ComponentClass::new(surface, p.clone())?);
    }
    out.sort_by(|a, b| b.cls.cmp(&a.cls));
    Ok(Some(Decomposition { parts: out }))
}

fn canonicalize_case_i(record: &TFDRecord) -> Result<TFDRecord> {
    let surface0 = record.surface0;
    let m = record.m_isolated as usize;
    let parts = z0_parts(record);
    if m < 2 || parts.is_empty() {
        return Ok(record.clone());
    }
    let root_rank = surface0.root().rank();
    let mut best: Option<(Vec<i64>, Vec<CohClass>)> = None;
    for perm in permutations(m) {
        let permuted: Vec<CohClass> = parts
            .iter()
            .map(|p| {
                let mut coeffs = p.coeffs().to_vec();
                for (i, &src) in perm.iter().enumerate() {
                    coeffs[root_rank + i] = p.coeffs()[root_rank + src];
                }
                surface0.class(&coeffs).expect("same rank")
            })
            .collect();
        let mut sorted = permuted.clone();
        sorted.sort_by(|a, b| b.cmp(a));
        let key: Vec<i64> = sorted.iter().flat_map(|c| c.coeffs().to_vec()).collect();
        if best.as_ref().is_none_or(|(bk, _)| key < *bk) {
            best = Some((key, sorted));
        }
    }
    let (_, parts) = best.expect("at least the identity permutation");
    let data = record
        .path
        .extremal
        .two_dim_min
        .expect("case-I paths have a 2-sphere minimum");
    let dec = decomposition_of(surface0, &parts)?;
    let path = MomentPath::assemble_case_i(
        record.family,
        surface0.root(),
        data.k,
        record.m_isolated,
        dec,
    )?;
    TFDRecord::from_path(record.label.clone(), path, record.fano.clone())
}

fn canonicalize_case_ii(record: &TFDRecord) -> Result<TFDRecord> {
    let surface = record.surface0;
    let e = record.path.slices[0].euler.clone();
    let parts = z0_parts(record);
    let mut pd_total = surface.zero();
    for p in &parts {
        pd_total = &pd_total + p;
    }

    let root_rank = surface.root().rank();
    // Index permutations act trivially when every class has identical
    // blow-up columns, which covers the trivial-Euler-class records.
    let columns_symmetric = std::iter::once(&e).chain(&parts).all(|c| {
        let tail = &c.coeffs()[root_rank..];
        tail.windows(2).all(|w| w[0] == w[1])
    });
    let perms = if columns_symmetric {
        vec![(0..surface.blowups() as usize).collect()]
    } else {
        permutations(surface.blowups() as usize)
    };
    let mut candidates: Vec<(CohClass, Vec<CohClass>)> = Vec::new();
    for reversed in [false, true] {
        let e1 = if reversed {
            -&(&e + &pd_total)
        } else {
            e.clone()
        };
        let swaps: &[bool] = if surface.root() == SurfaceRoot::Quadric {
            &[false, true]
        } else {
            &[false]
        };
        for &swap in swaps {
            let e2 = if swap { swap_rulings(&e1) } else { e1.clone() };
            let ps: Vec<CohClass> = parts
                .iter()
                .map(|p| if swap { swap_rulings(p) } else { p.clone() })
                .collect();
            for perm in &perms {
                let permute = |c: &CohClass| {
                    let mut coeffs = c.coeffs().to_vec();
                    for (i, &src) in perm.iter().enumerate() {
                        coeffs[root_rank + i] = c.coeffs()[root_rank + src];
                    }
                    surface.class(&coeffs).expect("same rank")
                };
                candidates.push((permute(&e2), ps.iter().map(permute).collect()));
            }
        }
    }

    let mut best: Option<(Vec<i64>, CohClass, Vec<CohClass>)> = None;
    for (e2, ps) in candidates {
        // Reversal representative: the minimum's volume dominates.
        let omega_min = &surface.anticanonical() + &e2;
        let mut pd2 = surface.zero();
        for p in &ps {
            pd2 = &pd2 + p;
        }
        let omega_max = &(&surface.anticanonical() - &e2) - &pd2;
        if omega_min.pair(&omega_min)? < omega_max.pair(&omega_max)? {
            continue;
        }
        let mut sorted = ps.clone();
        sorted.sort_by(|a, b| b.cmp(a));
        let mut key: Vec<i64> = pd2.coeffs().iter().map(|c| -c).collect();
        key.extend(e2.coeffs().iter().map(|c| -c.abs()));
        key.extend(e2.coeffs().iter().map(|c| -c));
        key.extend(sorted.iter().flat_map(|c| c.coeffs().to_vec()));
        if best.as_ref().is_none_or(|(bk, _, _)| key < *bk) {
            best = Some((key, e2, sorted));
        }
    }
    let (_, e_best, parts_best) =
        best.expect("the reversal orbit always contains a volume-ordered element");
    let dec = decomposition_of(surface, &parts_best)?;
    let path = MomentPath::assemble_case_ii(record.family, e_best, dec)?;
    TFDRecord::from_path(record.label.clone(), path, record.fano.clone())
}

fn swap_rulings(c: &CohClass) -> CohClass {
    let mut coeffs = c.coeffs().to_vec();
    coeffs.swap(0, 1);
    c.surface().class(&coeffs).expect("same rank")
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in out {
            for v in 0..n {
                if !p.contains(&v) {
                    let mut q = p.clone();
                    q.push(v);
                    next.push(q);
                }
            }
        }
        out = next;
    }
    out
}

/// Bounded search for the impossible scenario: middle reduced space X_k
/// (k ≥ 2) with a nonempty level-zero fixed set. The constraints used for
/// pruning are precisely rows (1)–(5) of the certificate system; survivors
/// would still have to pass the full pipeline. The box always comes back
/// empty — the Farkas certificate is the complete proof.
pub fn enumerate_case_ii_xk_scenario(k: u8) -> Result<FamilyEnumeration> {
    if !(2..=8).contains(&k) {
        return Err(Error::MalformedCertificate(format!("k = {k} out of range")));
    }
    let surface = SurfaceModel::x_k(k)?;
    let bound = CASE_II_BOX;
    let n = k as usize;
    let mut out = FamilyEnumeration::default();

    // Variables: e = a·u + Σ b_i E_i, PD(Z0) = x·u + Σ y_i E_i.
    for a in 0..=bound {
        for x in -bound..=(-a) {
            let cap = -(a + x);
            let mut bs = Vec::with_capacity(n);
            scan_bs(a, x, cap, bound, n, &mut bs, surface, &mut out)?;
        }
    }
    finalize(&mut out)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn scan_bs(
    a: i64,
    x: i64,
    cap: i64,
    bound: i64,
    n: usize,
    bs: &mut Vec<i64>,
    surface: SurfaceModel,
    out: &mut FamilyEnumeration,
) -> Result<()> {
    if bs.len() == n {
        let mut ys = Vec::with_capacity(n);
        return scan_ys(a, x, cap, bound, n, bs, &mut ys, surface, out);
    }
    // b_i ≤ 0 and, against the previous smallest, a + b_i + b_j ≥ 0.
    let top = bs.last().copied().unwrap_or(0);
    for b in -std::cmp::min(a, bound)..=top {
        if let Some(&prev) = bs.last() {
            if a + b + prev < 0 {
                continue;
            }
        }
        bs.push(b);
        scan_bs(a, x, cap, bound, n, bs, surface, out)?;
        bs.pop();
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn scan_ys(
    a: i64,
    x: i64,
    cap: i64,
    bound: i64,
    n: usize,
    bs: &[i64],
    ys: &mut Vec<i64>,
    surface: SurfaceModel,
    out: &mut FamilyEnumeration,
) -> Result<()> {
    let j = ys.len();
    if j == n {
        let total: i64 = ys.iter().sum();
        if 3 * x + total < 1 {
            return Ok(());
        }
        let mut e_coeffs = vec![a];
        e_coeffs.extend(bs);
        let mut pd_coeffs = vec![x];
        pd_coeffs.extend(ys.iter());
        let e = surface.class(&e_coeffs)?;
        let pd = surface.class(&pd_coeffs)?;
        let slices = case_ii_slices(FamilyLabel::II14, &e, Some(&pd))?;
        match check_slices(&slices)? {
            SliceCheck::Pass => {}
            SliceCheck::RejectEndpoint => return Ok(()),
            SliceCheck::RejectMidpoint => {
                out.flagged
                    .push(format!("Xk scenario k={n}: e={e} pd={pd}"));
                return Ok(());
            }
        }
        for dec in enumerate_decompositions(surface, &pd)? {
            let path = MomentPath::assemble_case_ii(FamilyLabel::II14, e.clone(), Some(dec))?;
            push_candidate(path, out)?;
        }
        return Ok(());
    }
    // b_j + y_j ≥ 0 and, for every earlier index, the top-level line degree
    // (b_i + y_i) + (b_j + y_j) ≤ −(a + x).
    for y in -bs[j]..=bound {
        let s = bs[j] + y;
        let mut ok = true;
        for jj in 0..j {
            if s + bs[jj] + ys[jj] > cap {
                ok = false;
                break;
            }
        }
        if ok {
            ys.push(y);
            scan_ys(a, x, cap, bound, n, bs, ys, surface, out)?;
            ys.pop();
        }
    }
    Ok(())
}
