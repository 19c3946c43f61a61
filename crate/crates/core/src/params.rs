//! Exact constants for the two anticomplete-pair theorems: `p`, `q`, `s`,
//! `d` (and the inductive chain of `d'` for the chromatic version), in big
//! integers.
//!
//! The `q` conditions compare `e^{-q/32}` with a power of two. Both reduce to
//! `q > 32·E·ln 2` for an integer `E`, which is decided with a certified
//! rational enclosure of `ln 2` refined until the comparison is determined
//! (`32·E·ln 2` is irrational, so refinement always terminates).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::audit::AuditReport;
use crate::error::{Error, Result};

mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        BigUint::parse_bytes(text.as_bytes(), 10)
            .ok_or_else(|| serde::de::Error::custom("expected a decimal integer"))
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(v) => super::serialize(v, s),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
            let text: Option<String> = Option::deserialize(d)?;
            text.map(|t| {
                BigUint::parse_bytes(t.as_bytes(), 10)
                    .ok_or_else(|| serde::de::Error::custom("expected a decimal integer"))
            })
            .transpose()
        }
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for x in v {
                seq.serialize_element(&x.to_str_radix(10))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
            let texts: Vec<String> = Vec::deserialize(d)?;
            texts
                .iter()
                .map(|t| {
                    BigUint::parse_bytes(t.as_bytes(), 10)
                        .ok_or_else(|| serde::de::Error::custom("expected a decimal integer"))
                })
                .collect()
        }
    }
}

/// Certified enclosure `[lo, hi]` of ln 2 from the series Σ 1/(k·2^k),
/// whose tail after `terms` terms is below 1/((terms+1)·2^terms).
fn ln2_enclosure(terms: u32) -> (BigRational, BigRational) {
    let mut sum = BigRational::zero();
    for k in 1..=terms {
        let denom = BigInt::from(k) << k as usize;
        sum += BigRational::new(BigInt::one(), denom);
    }
    let tail = BigRational::new(BigInt::one(), BigInt::from(terms + 1) << terms as usize);
    let hi = &sum + tail;
    (sum, hi)
}

/// `floor(32·e·ln 2)`, exactly.
fn floor_32_e_ln2(e: u64) -> BigUint {
    let scale = BigRational::from_integer(BigInt::from(32u64) * BigInt::from(e));
    let mut terms = 64;
    loop {
        let (lo, hi) = ln2_enclosure(terms);
        let (a, b) = ((&lo * &scale).floor(), (&hi * &scale).floor());
        if a == b {
            return a.to_integer().to_biguint().expect("positive");
        }
        terms *= 2;
    }
}

/// Decides `q > 32·e·ln 2` exactly.
pub fn exceeds_32_e_ln2(q: &BigUint, e: u64) -> bool {
    q > &floor_32_e_ln2(e)
}

/// Least `q` with `e^{-q/32} < 2^{-exponent}`.
pub fn least_q_below_power_of_two(exponent: u64) -> BigUint {
    floor_32_e_ln2(exponent) + 1u32
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn pow2(e: u64) -> BigUint {
    BigUint::one() << e as usize
}

/// Constants for the chromatic version: `ω(G) < t`, `χ(G) ≥ d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiParameters {
    pub t: u64,
    pub c: u64,
    #[serde(with = "decimal")]
    pub p: BigUint,
    #[serde(with = "decimal")]
    pub q: BigUint,
    /// `d` for clique bound `t − 1`; absent in the base case `t ≤ 2`.
    #[serde(with = "decimal::option")]
    pub d_prime: Option<BigUint>,
    #[serde(with = "decimal")]
    pub d: BigUint,
    /// `d` for clique bounds `2, 3, ..., t` (base case first).
    #[serde(with = "decimal::vec")]
    pub chain: Vec<BigUint>,
    pub notes: Vec<String>,
}

/// Branches of the max that `d` must strictly exceed, as exact rationals
/// `(name, value)`.
pub fn chi_branches(
    p: &BigUint,
    q: &BigUint,
    c: u64,
    d_prime: &BigUint,
) -> Vec<(String, BigRational)> {
    let p_i = BigInt::from(p.clone());
    let q_i = BigInt::from(q.clone());
    let dp = BigInt::from(d_prime.clone());
    let c_i = BigInt::from(c);
    let four_p_plus_2 = (p * 4u32 + 2u32).to_u64().expect("p fits in u64");
    let two_p = (p * 2u32).to_u64().expect("p fits in u64");
    let first = BigInt::from(2u32) * &p_i
        + 1
        + BigInt::from(2u32) * &q_i * &dp
        + BigInt::from(pow2(four_p_plus_2)) * &c_i;
    let first_alt = BigInt::from(2u32) * &p_i
        + 1
        + BigInt::from(2u32) * &q_i * &dp
        + BigInt::from(pow2(two_p)) * &c_i;
    let second = BigRational::new(BigInt::from(8u32) * &q_i * &q_i * &dp, p_i.clone())
        + BigRational::from_integer(c_i);
    vec![
        (
            "2p+1+2qd'+2^(4p+2)c".into(),
            BigRational::from_integer(first),
        ),
        (
            "2p+1+2qd'+2^(2p)c".into(),
            BigRational::from_integer(first_alt),
        ),
        ("8q^2d'/p+c".into(), second),
    ]
}

fn least_integer_above(values: &[(String, BigRational)]) -> BigUint {
    values
        .iter()
        .map(|(_, v): &(String, BigRational)| v.floor().to_integer() + BigInt::one())
        .max()
        .expect("nonempty")
        .to_biguint()
        .expect("positive")
}

pub fn chi_parameters(t: u64, c: u64) -> Result<ChiParameters> {
    if t == 0 || c == 0 {
        return Err(Error::InvalidParameter("t and c must be at least 1".into()));
    }
    let p = 32 * c;
    let q = least_q_below_power_of_two(4 * p + 3);
    let p_big = big(p);
    let mut chain = vec![big(2)];
    for _ in 3..=t {
        let d_prime = chain.last().expect("base case").clone();
        chain.push(least_integer_above(&chi_branches(&p_big, &q, c, &d_prime)));
    }
    let d = chain.last().expect("base case").clone();
    let d_prime = (t >= 3).then(|| chain[chain.len() - 2].clone());
    let notes = vec![
        "first branch uses 2^(4p+2)c, matching the final color count 2p+1+2qd'+2^(4p+2)c; the 2^(2p)c variant is also exceeded".into(),
        "t <= 2 is the base case d = 2".into(),
    ];
    Ok(ChiParameters {
        t,
        c,
        p: p_big,
        q,
        d_prime,
        d,
        chain: if t >= 2 { chain } else { vec![big(2)] },
        notes,
    })
}

/// Constants for the minimum-degree version: `τ(G) < t`, denseness `≥ d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MindegParameters {
    pub t: u64,
    pub c: u64,
    #[serde(with = "decimal")]
    pub p: BigUint,
    #[serde(with = "decimal")]
    pub q: BigUint,
    #[serde(with = "decimal")]
    pub s: BigUint,
    #[serde(with = "decimal")]
    pub d: BigUint,
    pub notes: Vec<String>,
}

fn mindeg_s_target(q: &BigUint, t: u64) -> BigUint {
    let q_usize = q.to_usize().expect("q fits in usize");
    BigUint::from(2u32) * q * q + (BigUint::one() << (2 * q_usize + 1)) * q * big(t - 1)
}

pub fn mindeg_branches(p: &BigUint, s: &BigUint, t: u64, c: u64) -> Vec<(String, BigRational)> {
    let st = s * big(t);
    let p_u = p.to_u64().expect("p fits in u64");
    let first = p + BigUint::from(2u32) * &st;
    let second =
        big(2 * c * t) + BigUint::from(2u32) * &st + big(t) * s.pow(t as u32) * pow2(2 * t);
    let third = BigUint::from(2u32) * &st + pow2(8 * p_u + 4) * big(c) + big(3 * p_u + 2);
    [
        ("p+2st", first),
        ("2ct+2st+ts^t2^(2t)", second),
        ("2st+2^(8p+4)c+3p+2", third),
    ]
    .into_iter()
    .map(|(n, v)| (n.to_string(), BigRational::from_integer(BigInt::from(v))))
    .collect()
}

pub fn mindeg_parameters(t: u64, c: u64) -> Result<MindegParameters> {
    if t == 0 || c == 0 {
        return Err(Error::InvalidParameter("t and c must be at least 1".into()));
    }
    let p = (32 * c).max(4 * t);
    // e^{-q/32}·2^{8p+4} ≤ 1/2  ⟺  q ≥ 32(8p+5) ln 2; equality is impossible
    let q = least_q_below_power_of_two(8 * p + 5);
    let target = mindeg_s_target(&q, t);
    let (s, rem) = target.div_rem(&big(t));
    let s = if rem.is_zero() { s } else { s + 1u32 };
    let p_big = big(p);
    let d = least_integer_above(&mindeg_branches(&p_big, &s, t, c));
    Ok(MindegParameters {
        t,
        c,
        p: p_big,
        q,
        s,
        d,
        notes: vec![
            "part count 8p+4 throughout, including the final residue count".into(),
            "cover size bound |X| <= 2q-2 from the matching decomposition".into(),
        ],
    })
}

/// Re-derives every inequality from scratch, including minimality of `q`
/// (and of `s`) by checking the predecessor.
pub fn verify_chi_parameters(params: &ChiParameters) -> AuditReport {
    let mut report = AuditReport::new("chi-parameters");
    let c = params.c;
    report.check("p", params.p == big(32 * c), "p = 32c", || None);
    let e = 4 * 32 * c + 3;
    let q_ok = exceeds_32_e_ln2(&params.q, e);
    let prev_fails = params.q.is_zero() || !exceeds_32_e_ln2(&(&params.q - 1u32), e);
    report.check(
        "q-minimal",
        q_ok && prev_fails,
        "e^(-q/32) < 2^(-4p-3) holds at q and fails at q-1",
        || None,
    );
    if params.t <= 2 {
        report.check(
            "base-case",
            params.d == big(2),
            "t <= 2 gives d = 2",
            || None,
        );
        return report;
    }
    let Some(d_prime) = &params.d_prime else {
        report.fail("d-prime", "missing d' for t >= 3", None);
        return report;
    };
    let d = BigRational::from_integer(BigInt::from(params.d.clone()));
    for (name, value) in chi_branches(&params.p, &params.q, c, d_prime) {
        report.check(
            &format!("d > {name}"),
            (&d - &value).is_positive(),
            "",
            || None,
        );
    }
    report
}

pub fn verify_mindeg_parameters(params: &MindegParameters) -> AuditReport {
    let mut report = AuditReport::new("mindeg-parameters");
    let (t, c) = (params.t, params.c);
    report.check(
        "p",
        params.p == big((32 * c).max(4 * t)),
        "p = max(32c, 4t)",
        || None,
    );
    let p = params.p.to_u64().unwrap_or(0);
    let e = 8 * p + 5;
    let q_ok = exceeds_32_e_ln2(&params.q, e);
    let prev_fails = params.q.is_zero() || !exceeds_32_e_ln2(&(&params.q - 1u32), e);
    report.check(
        "q-minimal",
        q_ok && prev_fails,
        "e^(-q/32)*2^(8p+4) <= 1/2 holds at q and fails at q-1",
        || None,
    );
    let target = mindeg_s_target(&params.q, t);
    let s_ok = &params.s * big(t) >= target;
    let s_prev = params.s.is_zero() || (&params.s - 1u32) * big(t) < target;
    report.check(
        "s-minimal",
        s_ok && s_prev,
        "st >= 2q^2 + 2^(2q+1)q(t-1)",
        || None,
    );
    let d = BigRational::from_integer(BigInt::from(params.d.clone()));
    for (name, value) in mindeg_branches(&params.p, &params.s, t, c) {
        report.check(
            &format!("d > {name}"),
            (&d - &value).is_positive(),
            "",
            || None,
        );
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln2_enclosure_brackets_float() {
        let (lo, hi) = ln2_enclosure(60);
        let ln2 = std::f64::consts::LN_2;
        assert!(lo.to_f64().unwrap() <= ln2 && ln2 <= hi.to_f64().unwrap());
    }

    #[test]
    fn q_values_match_float_estimates() {
        // q > 32·131·ln 2 ≈ 2905.7
        assert_eq!(least_q_below_power_of_two(131), big(2906));
        // q ≥ 32·261·ln 2 ≈ 5789.0 (5788.99..)
        let expected = (32.0 * 261.0 * std::f64::consts::LN_2).floor() as u64 + 1;
        assert_eq!(least_q_below_power_of_two(261), big(expected));
    }

    #[test]
    fn base_case() {
        let params = chi_parameters(2, 5).unwrap();
        assert_eq!(params.d, big(2));
        assert!(params.d_prime.is_none());
        assert!(verify_chi_parameters(&params).passed);
        assert_eq!(chi_parameters(1, 3).unwrap().d, big(2));
    }

    #[test]
    fn t3_c1() {
        let params = chi_parameters(3, 1).unwrap();
        assert_eq!(params.p, big(32));
        assert_eq!(params.d_prime, Some(big(2)));
        let report = verify_chi_parameters(&params);
        assert!(report.passed, "{report:?}");
        // 2^(4p+2)c dominates: d = 2p+1+2q·2+2^130+1
        assert_eq!(params.d, big(65) + big(4 * 2906) + pow2(130) + 1u32);
    }

    #[test]
    fn chi_d_monotone_in_c() {
        for t in 3..=4 {
            let ds: Vec<BigUint> = (1..=4).map(|c| chi_parameters(t, c).unwrap().d).collect();
            assert!(ds.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn mindeg_t1_c1() {
        let params = mindeg_parameters(1, 1).unwrap();
        assert_eq!(params.p, big(32));
        assert_eq!(&params.s, &(BigUint::from(2u32) * &params.q * &params.q));
        let report = verify_mindeg_parameters(&params);
        assert!(report.passed, "{report:?}");
        let st = &params.s * big(1);
        assert!(params.d > &params.p + BigUint::from(2u32) * st);
    }

    #[test]
    fn mindeg_larger_t() {
        let params = mindeg_parameters(3, 1).unwrap();
        assert!(verify_mindeg_parameters(&params).passed);
        let json = serde_json::to_string(&params).unwrap();
        let back: MindegParameters = serde_json::from_str(&json).unwrap();
        assert_eq!(back, params);
    }

    #[test]
    fn tampered_parameters_fail() {
        let mut params = chi_parameters(3, 1).unwrap();
        params.q += 1u32;
        assert!(!verify_chi_parameters(&params).passed);
        let mut params = mindeg_parameters(2, 1).unwrap();
        params.d -= 1u32;
        assert!(!verify_mindeg_parameters(&params).passed);
    }
}
