use serde::{Deserialize, Serialize};

use super::{
    eval_d2m_quotient, eval_zpzp_quotient, fr, spectrum, FamilyResult, FormulaError, PrintedForms,
};
use crate::field::is_prime;
use crate::rational::Rational;

/// Families whose results specialize the central-quotient theorems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Corollary {
    Metacyclic { m: u64, n: u64 },
    Dihedral { m: u64 },
    U6n { n: u64 },
    Dicyclic { n: u64 },
    OrderP3 { p: u64 },
    FourCentralizer { z: u64 },
    FiveCentralizer { z: u64 },
    PPlus2Centralizer { p: u64, z: u64 },
}

impl Corollary {
    pub fn source(self) -> &'static str {
        match self {
            Corollary::Metacyclic { .. } => "metacyclic",
            Corollary::Dihedral { .. } => "dihedral",
            Corollary::U6n { .. } => "u6n",
            Corollary::Dicyclic { .. } => "dicyclic",
            Corollary::OrderP3 { .. } => "order-p3",
            Corollary::FourCentralizer { .. } => "four-centralizer",
            Corollary::FiveCentralizer { .. } => "five-centralizer",
            Corollary::PPlus2Centralizer { .. } => "p-plus-2-centralizer",
        }
    }
}

fn out_of_domain(msg: String) -> FormulaError {
    FormulaError::OutOfDomain(msg)
}

/// Evaluates a corollary through its parent theorem and checks the
/// corollary's own printed forms against it.
pub fn eval_corollaries(c: Corollary) -> Result<FamilyResult, FormulaError> {
    let (parent, params, printed): (FamilyResult, Vec<(&'static str, u64)>, PrintedForms) = match c
    {
        Corollary::Metacyclic { m, n } => {
            if m < 3 || n < 1 {
                return Err(out_of_domain(format!(
                    "metacyclic needs m >= 3 (M_4n is abelian) and n >= 1, got m={m}, n={n}"
                )));
            }
            let parent = if m % 2 == 1 {
                eval_d2m_quotient(m, n)?
            } else {
                eval_d2m_quotient(m / 2, 2 * n)?
            };
            (
                parent,
                vec![("m", m), ("n", n)],
                metacyclic(m as i128, n as i128),
            )
        }
        Corollary::Dihedral { m } => {
            if m < 3 {
                return Err(out_of_domain(format!("dihedral needs m >= 3, got {m}")));
            }
            let parent = if m % 2 == 1 {
                eval_d2m_quotient(m, 1)?
            } else {
                eval_d2m_quotient(m / 2, 2)?
            };
            (parent, vec![("m", m)], dihedral(m as i128))
        }
        Corollary::U6n { n } => {
            if n < 1 {
                return Err(out_of_domain("U6n needs n >= 1".into()));
            }
            (eval_d2m_quotient(3, n)?, vec![("n", n)], u6n(n as i128))
        }
        Corollary::Dicyclic { n } => {
            if n < 2 {
                return Err(out_of_domain(format!("dicyclic needs n >= 2, got {n}")));
            }
            (
                eval_d2m_quotient(n, 2)?,
                vec![("n", n)],
                dicyclic(n as i128),
            )
        }
        Corollary::OrderP3 { p } => {
            if !is_prime(p) {
                return Err(out_of_domain(format!("order p^3 needs p prime, got {p}")));
            }
            (
                eval_zpzp_quotient(p, p)?,
                vec![("p", p)],
                order_p3(p as i128),
            )
        }
        Corollary::FourCentralizer { z } => (
            eval_zpzp_quotient(2, z)?,
            vec![("z", z)],
            four_centralizer(z as i128),
        ),
        Corollary::FiveCentralizer { z } => (
            eval_zpzp_quotient(3, z)?,
            vec![("z", z)],
            five_centralizer(z as i128),
        ),
        Corollary::PPlus2Centralizer { p, z } => (
            eval_zpzp_quotient(p, z)?,
            vec![("p", p), ("z", z)],
            p_plus_2(p as i128, z as i128),
        ),
    };
    let mut r = parent.clone();
    r.source = c.source();
    r.branch = format!("via {} {:?}", parent.source, parent.params);
    r.params = params.into_iter().collect();
    r.check("cnl_spectrum", &printed.cnl, &parent.cnl_spectrum);
    r.check("cnsl_spectrum", &printed.cnsl, &parent.cnsl_spectrum);
    r.check("le_cn", &printed.le_cn, &parent.le_cn);
    r.check("le_plus_cn", &printed.le_plus_cn, &parent.le_plus_cn);
    r.printed = Some(printed);
    Ok(r)
}

fn metacyclic(m: i128, n: i128) -> PrintedForms {
    let (cnl, cnsl) = if m % 2 == 1 {
        let c = (m - 1) * n;
        (
            spectrum(&[(0, m + 1), (c * (c - 2), c - 1), (n * (n - 2), m * (n - 1))]),
            spectrum(&[
                (2 * (c - 1) * (c - 2), 1),
                ((c - 2) * (c - 2), c - 1),
                (2 * (n - 1) * (n - 2), m),
                ((n - 2) * (n - 2), m * (n - 1)),
            ]),
        )
    } else {
        let h = m / 2;
        let c = (h - 1) * 2 * n;
        let w = 2 * n;
        (
            spectrum(&[(0, h + 1), (c * (c - 2), c - 1), (w * (w - 2), h * (w - 1))]),
            spectrum(&[
                (2 * (c - 1) * (c - 2), 1),
                ((c - 2) * (c - 2), c - 1),
                (2 * (w - 1) * (w - 2), h),
                ((w - 2) * (w - 2), h * (w - 1)),
            ]),
        )
    };
    let le_cn = if m % 2 == 1 {
        fr(
            2 * ((m - 1) * n - 1) * (m * (n * ((m - 2) * m * n - m + 3) - 4) + n + 2),
            2 * m - 1,
        )
    } else if m == 2 {
        fr(72 * n * n - 108 * n + 36, 3)
    } else {
        fr(
            ((m - 2) * n - 1) * (m * (n * ((m - 4) * m * n - m + 6) - 4) + 4 * (n + 1)),
            m - 1,
        )
    };
    let le_plus_cn = if m == 3 && n == 1 {
        Rational::default()
    } else if m % 2 == 1 {
        fr(2 * (m - 2) * (m - 1) * m * n * n * (m * n - 3), 2 * m - 1)
    } else {
        fr((m - 4) * (m - 2) * m * n * n * (m * n - 3), m - 1)
    };
    PrintedForms {
        cnl,
        cnsl,
        le_cn,
        le_plus_cn,
    }
}

fn dihedral(m: i128) -> PrintedForms {
    // Both parities print the same shapes with a = m - 1 (odd) or m - 2 (even).
    let a = if m % 2 == 1 { m - 1 } else { m - 2 };
    let (le_cn, le_plus_cn) = if m % 2 == 1 {
        (
            fr(2 * (m - 3) * (m - 2) * (m - 1) * (m + 1), 2 * m - 1),
            fr(2 * (m - 3) * (m - 2) * (m - 1) * m, 2 * m - 1),
        )
    } else {
        (
            fr((m - 4) * (m - 3) * (m - 2) * (m + 1), m - 1),
            fr((m - 4) * (m - 3) * (m - 2) * m, m - 1),
        )
    };
    PrintedForms {
        cnl: spectrum(&[(0, m + 1), (a * (a - 2), a - 1)]),
        cnsl: spectrum(&[
            (0, m),
            (2 * (a - 1) * (a - 2), 1),
            ((a - 2) * (a - 2), a - 1),
        ]),
        le_cn,
        le_plus_cn,
    }
}

fn u6n(n: i128) -> PrintedForms {
    PrintedForms {
        cnl: spectrum(&[
            (0, 4),
            (2 * n * (2 * n - 2), 2 * n - 1),
            (n * (n - 2), 3 * (n - 1)),
        ]),
        cnsl: spectrum(&[
            ((2 * n - 1) * (2 * n - 2), 1),
            ((2 * n - 2) * (2 * n - 2), 2 * n - 1),
            (2 * (n - 1) * (n - 2), 3),
            ((n - 2) * (n - 2), 3 * (n - 1)),
        ]),
        le_cn: fr(2 * (n - 1) * (2 * n - 1) * (9 * n + 10), 5),
        le_plus_cn: if n == 1 {
            fr(6 * (n - 1) * (n + 10), 5)
        } else {
            fr(36 * (n - 1) * n * n, 5)
        },
    }
}

fn dicyclic(n: i128) -> PrintedForms {
    let a = 2 * n - 2;
    PrintedForms {
        cnl: spectrum(&[(0, 2 * n + 1), (a * (a - 2), a - 1)]),
        cnsl: spectrum(&[
            (0, 2 * n),
            (2 * (a - 1) * (a - 2), 1),
            ((a - 2) * (a - 2), a - 1),
        ]),
        le_cn: fr(4 * (n - 2) * (n - 1) * (2 * n - 3) * (2 * n + 1), 2 * n - 1),
        le_plus_cn: fr(8 * (n - 2) * (n - 1) * n * (2 * n - 3), 2 * n - 1),
    }
}

fn order_p3(p: i128) -> PrintedForms {
    let c = (p - 1) * p;
    let e = fr(2 * (p + 1) * (c - 2) * (c - 1), 1);
    PrintedForms {
        cnl: spectrum(&[(0, p + 1), (c * (c - 2), (p + 1) * (c - 1))]),
        cnsl: spectrum(&[
            (2 * (c - 1) * (c - 2), p + 1),
            ((c - 2) * (c - 2), (p + 1) * (c - 1)),
        ]),
        le_cn: e.clone(),
        le_plus_cn: e,
    }
}

fn four_centralizer(z: i128) -> PrintedForms {
    let p = 2;
    let e = if z == 1 {
        Rational::default()
    } else {
        fr(6 * (z - 2) * (z - 1), 1)
    };
    PrintedForms {
        cnl: spectrum(&[(0, 3), (z * (z - 2), 3 * ((p - 1) * z - 1))]),
        cnsl: spectrum(&[(2 * (z - 1) * (z - 2), 3), ((z - 2) * (z - 2), 3 * (z - 1))]),
        le_cn: e.clone(),
        le_plus_cn: e,
    }
}

fn five_centralizer(z: i128) -> PrintedForms {
    let e = fr(8 * (2 * z - 2) * (2 * z - 1), 1);
    PrintedForms {
        cnl: spectrum(&[(0, 4), (2 * z * (2 * z - 2), 4 * (2 * z - 1))]),
        cnsl: spectrum(&[
            (2 * (2 * z - 1) * (2 * z - 2), 4),
            ((2 * z - 2) * (2 * z - 2), 4 * (z - 1)),
        ]),
        le_cn: e.clone(),
        le_plus_cn: e,
    }
}

fn p_plus_2(p: i128, z: i128) -> PrintedForms {
    let c = (p - 1) * z;
    let e = fr(2 * (p + 1) * (c - 2) * (c - 1), 1);
    PrintedForms {
        cnl: spectrum(&[(0, p + 1), ((p - 1) * (c - 2), (p + 1) * (c - 1))]),
        cnsl: spectrum(&[
            (2 * (c - 1) * (c - 2), p + 1),
            ((c - 2) * (c - 2), (p + 1) * (c - 1)),
        ]),
        le_cn: e.clone(),
        le_plus_cn: e,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_examples() {
        let q20 = eval_corollaries(Corollary::Dicyclic { n: 5 }).unwrap();
        assert_eq!(q20.le_cn, fr(1232, 3));
        assert!(q20.discrepancies.is_empty());
        let u6 = eval_corollaries(Corollary::U6n { n: 1 }).unwrap();
        assert_eq!(u6.le_plus_cn, fr(0, 1));
        let d10 = eval_corollaries(Corollary::Dihedral { m: 5 }).unwrap();
        assert_eq!(d10.le_cn, fr(32, 1));
        assert!(d10.discrepancies.is_empty());
    }

    #[test]
    fn u6n_cnsl_top_eigenvalue_has_factor_two() {
        let r = eval_corollaries(Corollary::U6n { n: 2 }).unwrap();
        assert_eq!(r.discrepancy_quantities(), vec!["cnsl_spectrum"]);
        assert!(r
            .cnsl_spectrum
            .pairs
            .contains(&(crate::rational::int(12), 1)));
    }

    #[test]
    fn metacyclic_m2_is_out_of_domain() {
        assert!(eval_corollaries(Corollary::Metacyclic { m: 2, n: 3 }).is_err());
    }
}
