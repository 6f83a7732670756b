//! Necessary conditions on Alexander polynomials of Hurwitz C-groups,
//! realizability classification and the root-count statistic.

use std::fmt;

use num_traits::{One, Signed};

use crate::arith::{divisors, totient};
use crate::poly::{factor_cyclotomic, prime_power_multiplicity_bound, IntPoly, PolyError, RatPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "n/a",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyCheck {
    /// Roman numeral label, "i" to "vii".
    pub id: &'static str,
    pub name: &'static str,
    pub verdict: Verdict,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub degree: u64,
    pub components: usize,
    pub checks: Vec<PropertyCheck>,
}

impl PropertyReport {
    pub fn get(&self, id: &str) -> Option<&PropertyCheck> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// No applicable property fails.
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.verdict != Verdict::Fail)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.checks
            .iter()
            .filter(|c| c.verdict == Verdict::Fail)
            .map(|c| c.id)
            .collect()
    }
}

fn check(id: &'static str, name: &'static str, ok: bool, witness: String) -> PropertyCheck {
    PropertyCheck {
        id,
        name,
        verdict: if ok { Verdict::Pass } else { Verdict::Fail },
        witness,
    }
}

pub fn grku_properties(
    delta: &IntPoly,
    degree_d: u64,
    components_n: usize,
) -> Result<PropertyReport, PolyError> {
    grku_properties_with_factors(delta, degree_d, components_n, None)
}

/// Property (iv) is evaluated only when the invariant factors of the
/// Alexander module are supplied.
pub fn grku_properties_with_factors(
    delta: &IntPoly,
    degree_d: u64,
    components_n: usize,
    invariant_factors: Option<&[RatPoly]>,
) -> Result<PropertyReport, PolyError> {
    if delta.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    assert!(
        degree_d >= 1 && components_n >= 1,
        "degree and components must be positive"
    );
    let d = degree_d;
    let n = components_n as u64;
    let mut checks = Vec::with_capacity(7);

    checks.push(check(
        "i",
        "integer coefficients",
        true,
        "coefficients lie in Z".into(),
    ));

    let c0 = delta.coeff(0);
    checks.push(check(
        "ii",
        "Delta(0) = +-1",
        c0.abs().is_one(),
        format!("Delta(0) = {c0}"),
    ));

    let f = factor_cyclotomic(delta)?;
    let bad: Vec<u64> = f
        .factors
        .keys()
        .copied()
        .filter(|&m| !d.is_multiple_of(m))
        .collect();
    checks.push(check(
        "iii",
        "roots are d-th roots of unity",
        bad.is_empty() && f.t_power == 0,
        if bad.is_empty() {
            format!(
                "cyclotomic indices {:?} divide d = {d}",
                f.factors.keys().collect::<Vec<_>>()
            )
        } else {
            format!("indices {bad:?} do not divide d = {d}")
        },
    ));

    checks.push(match invariant_factors {
        Some(fs) => {
            let bad: Vec<usize> = fs
                .iter()
                .enumerate()
                .filter(|(_, q)| !rat_squarefree(q))
                .map(|(i, _)| i)
                .collect();
            check(
                "iv",
                "squarefree invariant factors",
                bad.is_empty(),
                if bad.is_empty() {
                    format!("{} invariant factors, all squarefree", fs.len())
                } else {
                    format!("invariant factors {bad:?} have repeated roots")
                },
            )
        }
        None => PropertyCheck {
            id: "iv",
            name: "squarefree invariant factors",
            verdict: Verdict::NotApplicable,
            witness: "invariant factors not supplied".into(),
        },
    });

    // (t − 1)(t^d − 1)^{d−2} = Φ₁^{d−1} ∏_{m | d, m > 1} Φ_m^{d−2}
    let bound = |m: u64| -> i64 {
        if m == 1 {
            d as i64 - 1
        } else {
            d as i64 - 2
        }
    };
    let excess: Vec<String> = f
        .factors
        .iter()
        .filter(|&(&m, &e)| !d.is_multiple_of(m) || e as i64 > bound(m))
        .map(|(&m, &e)| {
            if !d.is_multiple_of(m) {
                format!("Phi_{m} does not divide t^{d} - 1")
            } else {
                format!("Phi_{m}^{e} exceeds exponent {}", bound(m))
            }
        })
        .collect();
    let v_ok = excess.is_empty() && f.t_power == 0;
    checks.push(check(
        "v",
        "Delta divides (t-1)(t^d-1)^(d-2)",
        v_ok,
        if v_ok {
            let quotient: Vec<String> = divisors(d)
                .into_iter()
                .filter_map(|m| {
                    let e = bound(m) - f.multiplicity(m) as i64;
                    (e > 0).then(|| format!("Phi_{m}^{e}"))
                })
                .collect();
            format!(
                "quotient = {}{}",
                if f.unit_sign < 0 { "-" } else { "" },
                if quotient.is_empty() {
                    "1".to_string()
                } else {
                    quotient.join(" ")
                }
            )
        } else {
            excess.join("; ")
        },
    ));

    let mult1 = f.multiplicity(1) as u64;
    checks.push(check(
        "vi",
        "mult_1(Delta) = n - 1",
        mult1 + 1 == n,
        format!("mult_1 = {mult1}, n - 1 = {}", n - 1),
    ));

    checks.push(if n == 1 {
        let v1 = delta.eval_at_one();
        let deg = delta.degree().unwrap_or(0);
        check(
            "vii",
            "Delta(1) = 1 and even degree",
            v1.is_one() && deg.is_multiple_of(2),
            format!("Delta(1) = {v1}, deg = {deg}"),
        )
    } else {
        PropertyCheck {
            id: "vii",
            name: "Delta(1) = 1 and even degree",
            verdict: Verdict::NotApplicable,
            witness: format!("n = {n} > 1"),
        }
    });

    Ok(PropertyReport {
        degree: d,
        components: components_n,
        checks,
    })
}

fn rat_squarefree(q: &RatPoly) -> bool {
    q.degree().unwrap_or(0) == 0 || q.gcd(&q.derivative()).degree() == Some(0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Realizability {
    RealizableThm1,
    RealizableThm2,
    RealizableThm3,
    NotRealizablePM,
    NotRootsOfUnityNecessary,
    UnknownConjecture,
}

impl fmt::Display for Realizability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Realizability::RealizableThm1 => "realizable (Theorem 1)",
            Realizability::RealizableThm2 => "realizable (Theorem 2)",
            Realizability::RealizableThm3 => "realizable (Theorem 3)",
            Realizability::NotRealizablePM => "not realizable (Theorem 3)",
            Realizability::NotRootsOfUnityNecessary => {
                "not realizable (roots must be roots of unity)"
            }
            Realizability::UnknownConjecture => "unknown (outside the proved theorems)",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Realizability,
    pub witness: String,
    /// Some prime-power cyclotomic factor outnumbers Φ₁.
    pub condition_ii_violated: bool,
}

/// Strongest verdict the theorems support for `p` as an Alexander polynomial
/// of a Hurwitz C-group.
pub fn classify_realizability(p: &IntPoly) -> Result<Classification, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let (target, _, _) = p.det_normalized();
    let f = match factor_cyclotomic(&target) {
        Ok(f) => f,
        Err(PolyError::NotRootsOfUnity { remainder }) => {
            return Ok(Classification {
                verdict: Realizability::NotRootsOfUnityNecessary,
                witness: format!("factor {remainder} has a root that is not a root of unity"),
                condition_ii_violated: false,
            })
        }
        Err(PolyError::NonUnitContent { content }) => {
            return Ok(Classification {
                verdict: Realizability::NotRootsOfUnityNecessary,
                witness: format!("content {content} is not a unit, so Delta(0) != +-1"),
                condition_ii_violated: false,
            })
        }
        Err(e) => return Err(e),
    };
    let bound = prime_power_multiplicity_bound(&target)?;
    let violated = !bound.bounded_by_root_one();
    let v1 = target.eval_at_one();
    if v1.is_one() {
        return Ok(Classification {
            verdict: Realizability::RealizableThm1,
            witness: "roots are roots of unity and p(1) = 1".into(),
            condition_ii_violated: violated,
        });
    }
    let n = f.multiplicity(1);
    let k = f.multiplicity(2);
    if f.factors.keys().all(|&m| m <= 2) {
        return Ok(if n >= k {
            Classification {
                verdict: Realizability::RealizableThm3,
                witness: format!("(t-1)^{n} (t+1)^{k} with n = {n} >= k = {k}"),
                condition_ii_violated: violated,
            }
        } else {
            Classification {
                verdict: Realizability::NotRealizablePM,
                witness: format!("(t-1)^{n} (t+1)^{k} with n = {n} < k = {k}"),
                condition_ii_violated: violated,
            }
        });
    }
    if !violated {
        return Ok(Classification {
            verdict: Realizability::RealizableThm2,
            witness: format!(
                "every prime-power factor has multiplicity <= {} = mult_1",
                bound.root_one
            ),
            condition_ii_violated: false,
        });
    }
    let (q, m) = bound
        .by_index
        .iter()
        .find(|&(_, &m)| m > bound.root_one)
        .map(|(&q, &m)| (q, m))
        .expect("violation has a witness");
    Ok(Classification {
        verdict: Realizability::UnknownConjecture,
        witness: format!("mult(Phi_{q}) = {m} > {} = mult_1", bound.root_one),
        condition_ii_violated: true,
    })
}

/// Number of roots of `delta`, with multiplicity, that are n-th roots of
/// unity other than 1.
pub fn betti_statistic(delta: &IntPoly, n: u64) -> Result<u64, PolyError> {
    assert!(n >= 1, "n must be positive");
    let f = factor_cyclotomic(delta)?;
    Ok(divisors(n)
        .into_iter()
        .filter(|&m| m > 1)
        .map(|m| f.multiplicity(m) as u64 * totient(m))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::cyclotomic;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn g2_like_delta() {
        let r = grku_properties(&p(&[-1, 0, 1]), 20, 2).unwrap();
        assert_eq!(r.get("ii").unwrap().verdict, Verdict::Pass);
        assert_eq!(r.get("vi").unwrap().verdict, Verdict::Pass);
        assert_eq!(r.get("iv").unwrap().verdict, Verdict::NotApplicable);
        assert_eq!(r.get("vii").unwrap().verdict, Verdict::NotApplicable);
        assert!(r.all_pass());
    }

    #[test]
    fn example_4_1_violates_vi() {
        let sq = p(&[1, -2, 1]);
        assert_eq!(
            grku_properties(&sq, 4, 3)
                .unwrap()
                .get("vi")
                .unwrap()
                .verdict,
            Verdict::Pass
        );
        let r = grku_properties(&sq, 4, 2).unwrap();
        assert_eq!(r.get("vi").unwrap().verdict, Verdict::Fail);
        assert!(r.failures().contains(&"vi"));
    }

    #[test]
    fn trivial_delta() {
        for d in 1..6 {
            let r = grku_properties(&IntPoly::one(), d, 1).unwrap();
            assert!(r.all_pass(), "{r:?}");
            assert_eq!(r.get("vii").unwrap().verdict, Verdict::Pass);
        }
    }

    #[test]
    fn divisibility_matches_direct_division() {
        for d in 2..7u64 {
            let target = &IntPoly::from_i64s(&[-1, 1])
                * &IntPoly::t_pow_minus_one(d as usize).pow(d as u32 - 2);
            for delta in [
                p(&[-1, 1]),
                p(&[1, -2, 1]),
                p(&[-1, 0, 1]),
                cyclotomic(6),
                cyclotomic(3),
            ] {
                let direct = target.exact_div(&delta).is_some();
                let r = grku_properties(&delta, d, 1).unwrap();
                assert_eq!(
                    r.get("v").unwrap().verdict == Verdict::Pass,
                    direct,
                    "d={d} {delta}"
                );
            }
        }
    }

    #[test]
    fn squarefree_factor_check() {
        let fs = [p(&[-1, 0, 1]).to_rat()];
        let r = grku_properties_with_factors(&p(&[-1, 0, 1]), 4, 2, Some(&fs)).unwrap();
        assert_eq!(r.get("iv").unwrap().verdict, Verdict::Pass);
        let fs = [p(&[1, -2, 1]).to_rat()];
        let r = grku_properties_with_factors(&p(&[1, -2, 1]), 4, 3, Some(&fs)).unwrap();
        assert_eq!(r.get("iv").unwrap().verdict, Verdict::Fail);
    }

    #[test]
    fn classification_examples() {
        let tp1 = p(&[1, 1]);
        let tm1 = p(&[-1, 1]);
        let c = classify_realizability(&(&tp1.pow(3) * &tm1)).unwrap();
        assert_eq!(c.verdict, Realizability::NotRealizablePM);
        let c = classify_realizability(&p(&[1, -1, 1])).unwrap();
        assert_eq!(c.verdict, Realizability::RealizableThm1);
        let phi4 = cyclotomic(4);
        let c = classify_realizability(&(&tm1 * &phi4.pow(2))).unwrap();
        assert_eq!(c.verdict, Realizability::UnknownConjecture);
        assert!(c.condition_ii_violated);
        let c = classify_realizability(&(&tm1 * &phi4)).unwrap();
        assert_eq!(c.verdict, Realizability::RealizableThm2);
        let c = classify_realizability(&(&tm1 * &tp1)).unwrap();
        assert_eq!(c.verdict, Realizability::RealizableThm3);
        let c = classify_realizability(&p(&[-1, 2])).unwrap();
        assert_eq!(c.verdict, Realizability::NotRootsOfUnityNecessary);
        let c = classify_realizability(&p(&[-2, 2])).unwrap();
        assert_eq!(c.verdict, Realizability::NotRootsOfUnityNecessary);
        assert_eq!(
            classify_realizability(&IntPoly::one()).unwrap().verdict,
            Realizability::RealizableThm1
        );
    }

    #[test]
    fn betti_examples() {
        assert_eq!(betti_statistic(&p(&[-1, 0, 1]), 2).unwrap(), 1);
        for n in 1..10 {
            assert_eq!(betti_statistic(&p(&[-1, 3, -3, 1]), n).unwrap(), 0);
        }
        assert_eq!(betti_statistic(&cyclotomic(6).pow(2), 6).unwrap(), 4);
        assert_eq!(betti_statistic(&cyclotomic(6).pow(2), 3).unwrap(), 0);
    }
}
