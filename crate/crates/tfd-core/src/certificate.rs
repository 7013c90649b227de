//! Farkas infeasibility certificates for the blown-up-plane level-zero
//! scenario.
//!
//! For a middle reduced space X_k (k ≥ 2) with a nonempty level-zero fixed
//! set, the linear constraints forced by positivity admit no integer (or
//! even rational) solution. The certificate exhibits nonnegative rational
//! multipliers combining the constraints into the contradiction `0 ≥ 1`,
//! which is a complete proof of emptiness; a bounded search could not be.
//!
//! Variables are ordered `(a, x, b_1..b_k, y_1..y_k)`: the Euler class
//! below level zero is `a·u + Σ b_i E_i` and the level-zero dual class is
//! `x·u + Σ y_i E_i`.

use crate::{Error, Result};
use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A constraint instance: one of the numbered inequality shapes, with the
/// blow-up indices it is applied to (1-based).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ConstraintId {
    /// (1) `3x + Σ y_i ≥ 1` — the level-zero set has positive volume.
    Volume,
    /// (2_i) `−b_i ≥ 0` — degree of E_i at the bottom extremum.
    BlowupBottom { i: u8 },
    /// (3_ij) `a + b_i + b_j ≥ 0` — degree of u − E_i − E_j at the bottom.
    LineBottom { i: u8, j: u8 },
    /// (4_i) `b_i + y_i ≥ 0` — degree of E_i at the top extremum.
    BlowupTop { i: u8 },
    /// (5_ij) `−(a + x + b_i + b_j + y_i + y_j) ≥ 0` — degree of
    /// u − E_i − E_j at the top.
    LineTop { i: u8, j: u8 },
    /// (6) `3a + 2b_lead + Σ_others b ≥ 0` — degree of the cubic class
    /// 3u − 2E_lead − Σ E_others at the bottom (k ≥ 7).
    CubicBottom { lead: u8, others: [u8; 6] },
    /// (7) top-extremum degree of the same cubic class.
    CubicTop { lead: u8, others: [u8; 6] },
}

impl ConstraintId {
    /// The canonical coefficient row over `(a, x, b_1.., y_1..)` together
    /// with its lower bound.
    pub fn row(&self, k: u8) -> Result<(Vec<i64>, i64)> {
        let k = k as usize;
        let n = 2 + 2 * k;
        let b = |i: u8| 1 + i as usize;
        let y = |i: u8| 1 + k + i as usize;
        let check = |i: u8| -> Result<()> {
            if i == 0 || i as usize > k {
                return Err(Error::MalformedCertificate(format!(
                    "index {i} out of range for k = {k}"
                )));
            }
            Ok(())
        };
        let mut row = vec![0i64; n];
        let bound;
        match self {
            ConstraintId::Volume => {
                row[1] = 3;
                for i in 1..=k {
                    row[1 + k + i] = 1;
                }
                bound = 1;
            }
            ConstraintId::BlowupBottom { i } => {
                check(*i)?;
                row[b(*i)] = -1;
                bound = 0;
            }
            ConstraintId::LineBottom { i, j } => {
                check(*i)?;
                check(*j)?;
                if i == j {
                    return Err(Error::MalformedCertificate("repeated index".into()));
                }
                row[0] = 1;
                row[b(*i)] += 1;
                row[b(*j)] += 1;
                bound = 0;
            }
            ConstraintId::BlowupTop { i } => {
                check(*i)?;
                row[b(*i)] = 1;
                row[y(*i)] = 1;
                bound = 0;
            }
            ConstraintId::LineTop { i, j } => {
                check(*i)?;
                check(*j)?;
                if i == j {
                    return Err(Error::MalformedCertificate("repeated index".into()));
                }
                row[0] = -1;
                row[1] = -1;
                row[b(*i)] -= 1;
                row[b(*j)] -= 1;
                row[y(*i)] -= 1;
                row[y(*j)] -= 1;
                bound = 0;
            }
            ConstraintId::CubicBottom { lead, others } => {
                check(*lead)?;
                for o in others {
                    check(*o)?;
                }
                distinct(*lead, others)?;
                row[0] = 3;
                row[b(*lead)] = 2;
                for o in others {
                    row[b(*o)] += 1;
                }
                bound = 0;
            }
            ConstraintId::CubicTop { lead, others } => {
                check(*lead)?;
                for o in others {
                    check(*o)?;
                }
                distinct(*lead, others)?;
                row[0] = -3;
                row[1] = -3;
                row[b(*lead)] = -2;
                row[y(*lead)] = -2;
                for o in others {
                    row[b(*o)] -= 1;
                    row[y(*o)] -= 1;
                }
                bound = 0;
            }
        }
        Ok((row, bound))
    }
}

fn distinct(lead: u8, others: &[u8; 6]) -> Result<()> {
    let mut all = vec![lead];
    all.extend_from_slice(others);
    all.sort_unstable();
    all.dedup();
    if all.len() != 7 {
        return Err(Error::MalformedCertificate("repeated cubic index".into()));
    }
    Ok(())
}

/// One certified constraint: id, its coefficient row, and its lower bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifiedConstraint {
    pub id: ConstraintId,
    pub row: Vec<i64>,
    pub lower_bound: i64,
}

/// Nonnegative rational multipliers over a constraint system whose
/// combination yields `0 ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfeasibilityCertificate {
    pub k: u8,
    pub constraints: Vec<CertifiedConstraint>,
    #[serde(with = "rational_vec")]
    pub multipliers: Vec<Rational64>,
}

mod rational_vec {
    use num_rational::Rational64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(
        v: &[Rational64],
        ser: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<(i64, i64)> = v.iter().map(|r| (*r.numer(), *r.denom())).collect();
        pairs.serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        de: D,
    ) -> std::result::Result<Vec<Rational64>, D::Error> {
        let pairs: Vec<(i64, i64)> = Vec::deserialize(de)?;
        pairs
            .into_iter()
            .map(|(n, d)| {
                if d == 0 {
                    Err(serde::de::Error::custom("zero denominator"))
                } else {
                    Ok(Rational64::new(n, d))
                }
            })
            .collect()
    }
}

impl fmt::Display for InfeasibilityCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "infeasibility certificate for k = {}", self.k)?;
        for (c, m) in self.constraints.iter().zip(&self.multipliers) {
            writeln!(
                f,
                "  {m} * {:?} (row {:?} >= {})",
                c.id, c.row, c.lower_bound
            )?;
        }
        Ok(())
    }
}

/// Validates a certificate: every constraint must be a genuine instance of
/// its id, multipliers must be nonnegative, the weighted row-sum must
/// vanish identically, and the weighted bound-sum must reach 1.
pub fn check_certificate(cert: &InfeasibilityCertificate) -> Result<bool> {
    if !(2..=8).contains(&cert.k) {
        return Err(Error::MalformedCertificate(format!(
            "k = {} out of range",
            cert.k
        )));
    }
    if cert.constraints.len() != cert.multipliers.len() {
        return Err(Error::MalformedCertificate(
            "constraint and multiplier counts differ".into(),
        ));
    }
    let n = 2 + 2 * cert.k as usize;
    for c in &cert.constraints {
        let (row, bound) = c.id.row(cert.k)?;
        if row != c.row || bound != c.lower_bound {
            return Err(Error::MalformedCertificate(format!(
                "{:?} does not match its canonical row",
                c.id
            )));
        }
    }
    if cert
        .multipliers
        .iter()
        .any(|m| *m < Rational64::from_integer(0))
    {
        return Ok(false);
    }
    let mut combined = vec![Rational64::from_integer(0); n];
    let mut bound_sum = Rational64::from_integer(0);
    for (c, m) in cert.constraints.iter().zip(&cert.multipliers) {
        for (acc, coeff) in combined.iter_mut().zip(&c.row) {
            *acc += *m * Rational64::from_integer(*coeff);
        }
        bound_sum += *m * Rational64::from_integer(c.lower_bound);
    }
    let zero = Rational64::from_integer(0);
    Ok(combined.iter().all(|c| *c == zero) && bound_sum >= Rational64::from_integer(1))
}

/// The embedded certificate for a given k in [2, 8].
///
/// For k ≤ 6 the multipliers are:
/// 1 on the volume row, `6/(k(k−1))` on every line row at either extremum,
/// and `(6−k)/k` on every blow-up row at either extremum. For k = 7 cubic
/// rows enter with weight 1/8 (line rows 1/56, blow-up rows 3/28); for
/// k = 8 the volume row plus all 56·2 cubic instances at weight 1/56
/// already close the contradiction.
pub fn prove_empty_case_ii_xk(k: u8) -> Result<InfeasibilityCertificate> {
    if !(2..=8).contains(&k) {
        return Err(Error::MalformedCertificate(format!("k = {k} out of range")));
    }
    let mut ids: Vec<(ConstraintId, Rational64)> =
        vec![(ConstraintId::Volume, Rational64::from_integer(1))];
    let ki = k as i64;
    match k {
        2..=6 => {
            let line = Rational64::new(6, ki * (ki - 1));
            let point = Rational64::new(6 - ki, ki);
            for i in 1..=k {
                for j in (i + 1)..=k {
                    ids.push((ConstraintId::LineBottom { i, j }, line));
                    ids.push((ConstraintId::LineTop { i, j }, line));
                }
            }
            if point != Rational64::from_integer(0) {
                for i in 1..=k {
                    ids.push((ConstraintId::BlowupBottom { i }, point));
                    ids.push((ConstraintId::BlowupTop { i }, point));
                }
            }
        }
        7 => {
            let cubic = Rational64::new(1, 8);
            for lead in 1..=7u8 {
                let others = cubic_complement(lead, 7);
                ids.push((ConstraintId::CubicBottom { lead, others }, cubic));
                ids.push((ConstraintId::CubicTop { lead, others }, cubic));
            }
            let line = Rational64::new(1, 56);
            let point = Rational64::new(3, 28);
            for i in 1..=7u8 {
                for j in (i + 1)..=7 {
                    ids.push((ConstraintId::LineBottom { i, j }, line));
                    ids.push((ConstraintId::LineTop { i, j }, line));
                }
                ids.push((ConstraintId::BlowupBottom { i }, point));
                ids.push((ConstraintId::BlowupTop { i }, point));
            }
        }
        _ => {
            // k = 8: all 8·C(7,6) = 56 cubic instances at each extremum.
            let cubic = Rational64::new(1, 56);
            for lead in 1..=8u8 {
                for skipped in 1..=8u8 {
                    if skipped == lead {
                        continue;
                    }
                    let mut others = [0u8; 6];
                    let mut idx = 0;
                    for i in 1..=8u8 {
                        if i != lead && i != skipped {
                            others[idx] = i;
                            idx += 1;
                        }
                    }
                    ids.push((ConstraintId::CubicBottom { lead, others }, cubic));
                    ids.push((ConstraintId::CubicTop { lead, others }, cubic));
                }
            }
        }
    }
    let mut constraints = Vec::with_capacity(ids.len());
    let mut multipliers = Vec::with_capacity(ids.len());
    for (id, m) in ids {
        let (row, lower_bound) = id.row(k)?;
        constraints.push(CertifiedConstraint {
            id,
            row,
            lower_bound,
        });
        multipliers.push(m);
    }
    Ok(InfeasibilityCertificate {
        k,
        constraints,
        multipliers,
    })
}

fn cubic_complement(lead: u8, k: u8) -> [u8; 6] {
    let mut others = [0u8; 6];
    let mut idx = 0;
    for i in 1..=k {
        if i != lead {
            others[idx] = i;
            idx += 1;
        }
    }
    others
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_certificates_check_for_all_k() {
        for k in 2..=8u8 {
            let cert = prove_empty_case_ii_xk(k).unwrap();
            assert!(check_certificate(&cert).unwrap(), "k = {k}");
        }
        assert!(prove_empty_case_ii_xk(1).is_err());
        assert!(prove_empty_case_ii_xk(9).is_err());
    }

    #[test]
    fn k2_multipliers_are_the_hand_derived_ones() {
        let cert = prove_empty_case_ii_xk(2).unwrap();
        let find = |id: &ConstraintId| {
            cert.constraints
                .iter()
                .zip(&cert.multipliers)
                .find(|(c, _)| c.id == *id)
                .map(|(_, m)| *m)
                .unwrap()
        };
        assert_eq!(find(&ConstraintId::Volume), Rational64::from_integer(1));
        assert_eq!(
            find(&ConstraintId::LineBottom { i: 1, j: 2 }),
            Rational64::from_integer(3)
        );
        assert_eq!(
            find(&ConstraintId::LineTop { i: 1, j: 2 }),
            Rational64::from_integer(3)
        );
        for i in 1..=2 {
            assert_eq!(
                find(&ConstraintId::BlowupBottom { i }),
                Rational64::from_integer(2)
            );
            assert_eq!(
                find(&ConstraintId::BlowupTop { i }),
                Rational64::from_integer(2)
            );
        }
    }

    #[test]
    fn zero_multipliers_fail_the_bound() {
        let mut cert = prove_empty_case_ii_xk(2).unwrap();
        for m in cert.multipliers.iter_mut() {
            *m = Rational64::from_integer(0);
        }
        assert!(!check_certificate(&cert).unwrap());
    }

    #[test]
    fn tampered_rows_are_rejected() {
        let mut cert = prove_empty_case_ii_xk(3).unwrap();
        cert.constraints[1].row[0] += 1;
        assert!(check_certificate(&cert).is_err());

        let mut cert = prove_empty_case_ii_xk(3).unwrap();
        cert.multipliers[2] = Rational64::new(-1, 2);
        assert!(!check_certificate(&cert).unwrap());
    }

    #[test]
    fn k7_certificate_uses_cubic_rows() {
        let cert = prove_empty_case_ii_xk(7).unwrap();
        assert!(cert
            .constraints
            .iter()
            .any(|c| matches!(c.id, ConstraintId::CubicBottom { .. })));
        let cert8 = prove_empty_case_ii_xk(8).unwrap();
        assert_eq!(cert8.constraints.len(), 113);
    }

    #[test]
    fn certificate_json_round_trip() {
        let cert = prove_empty_case_ii_xk(5).unwrap();
        let json = serde_json::to_string(&cert).unwrap();
        let back: InfeasibilityCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);
        assert!(check_certificate(&back).unwrap());
    }
}
