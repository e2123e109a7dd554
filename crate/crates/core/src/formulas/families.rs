use crate::field::{is_prime, prime_power};

use super::{fr, parts, spectrum, FamilyResult, FormulaError, PrintedForms};
use crate::rational::Rational;
use crate::spectral::exact_spectrum_clique_union;

// Parameter ceilings keeping every printed expression inside i128.
const MAX_QD_N: u32 = 30;
const MAX_PSL_K: u32 = 16;
const MAX_GL_Q: u64 = 1 << 10;
const MAX_NU_N: u32 = 24;
const MAX_HANAKI_P_ORDER: u128 = 1 << 16;
const MAX_LINEAR: u64 = 100_000;

fn domain(ok: bool, msg: impl FnOnce() -> String) -> Result<(), FormulaError> {
    if ok {
        Ok(())
    } else {
        Err(FormulaError::OutOfDomain(msg()))
    }
}

pub fn eval_qd(n: u32) -> Result<FamilyResult, FormulaError> {
    domain((4..=MAX_QD_N).contains(&n), || {
        format!("quasidihedral needs 4 <= n <= {MAX_QD_N}, got {n}")
    })?;
    let t = 1i128 << n;
    let h = t / 2;
    let printed = PrintedForms {
        cnl: spectrum(&[(0, h + 1), ((h - 2) * (h - 4), h - 3)]),
        cnsl: spectrum(&[
            (0, h),
            (2 * (h - 3) * (h - 4), 1),
            ((h - 4) * (h - 4), h - 3),
        ]),
        le_cn: fr((t - 8) * (t - 6) * (t - 4) * (t + 2), 8 * (t - 2)),
        le_plus_cn: fr((t / 8) * (t - 8) * (t - 6) * (t - 4), t - 2),
    };
    Ok(FamilyResult::from_printed(
        "quasidihedral",
        "general".into(),
        &[("n", n as u64)],
        parts(&[(h - 2, 1), (2, t / 4)]),
        printed,
    ))
}

pub fn eval_psl(k: u32) -> Result<FamilyResult, FormulaError> {
    domain((2..=MAX_PSL_K).contains(&k), || {
        format!("PSL(2,2^k) needs 2 <= k <= {MAX_PSL_K}, got {k}")
    })?;
    let q = 1i128 << k;
    let h = q / 2;
    let den = q * q * q - q - 1;
    let le_plus_cn = if k == 2 {
        fr(9260, 59)
    } else {
        let q2 = q * q;
        let q3 = q2 * q;
        fr(
            -20 * q + 14 * q3 + 32 * q2 * q2 - 9 * q2 + q3 * q2 - 13 * q3 * q3 + 3 * q3 * q3 * q
                - 12,
            den,
        )
    };
    let printed = PrintedForms {
        cnl: spectrum(&[
            (0, q + q * q + 1),
            ((q - 1) * (q - 3), (q + 1) * (q - 2)),
            ((q - 2) * (q - 4), h * (q + 1) * (q - 3)),
            (q * (q - 2), h * (q - 1) * (q - 1)),
        ]),
        cnsl: spectrum(&[
            (2 * (q - 2) * (q - 3), q + 1),
            ((q - 3) * (q - 3), (q + 1) * (q - 2)),
            (2 * (q - 3) * (q - 4), h * (q + 1)),
            ((q - 4) * (q - 4), h * (q + 1) * (q - 3)),
            (2 * (q - 1) * (q - 2), h * (q - 1)),
            ((q - 2) * (q - 2), h * (q - 1) * (q - 1)),
        ]),
        le_cn: fr(
            (q - 2)
                * (19 * q - 4 * q * q * q + 12 * q * q - 7 * q.pow(4) - 5 * q.pow(5)
                    + 3 * q.pow(6)
                    + 6),
            den,
        ),
        le_plus_cn,
    };
    Ok(FamilyResult::from_printed(
        "psl2-even",
        if k == 2 { "k=2" } else { "k>=3" }.into(),
        &[("k", k as u64)],
        parts(&[(q - 1, q + 1), (q - 2, h * (q + 1)), (q, h * (q - 1))]),
        printed,
    ))
}

pub fn eval_gl(q: u64) -> Result<FamilyResult, FormulaError> {
    domain(q > 2 && q <= MAX_GL_Q && prime_power(q).is_some(), || {
        format!("GL(2,q) needs a prime power 2 < q <= {MAX_GL_Q}, got {q}")
    })?;
    let q = q as i128;
    let s = q * q;
    let den = q * q * q - q - 1;
    let le_plus_cn = if q <= 5 {
        fr(
            (q - 2)
                * q
                * (q + 1)
                * (q * (q * (q * (q * (2 * q * ((q - 4) * q + 6) - 7) - 7) - 1) + 11) + 2),
            den,
        )
    } else {
        fr(
            q * (q + 1)
                * ((q * (q * (q * (q * (2 * q - 11) + 20) - 16) + 7) + 8) * q * q * q - 12 * q - 4),
            den,
        )
    };
    let printed = PrintedForms {
        cnl: spectrum(&[
            (0, s + q + 1),
            ((s - 3 * q + 2) * (s - 3 * q), (s + q) / 2 * (s - 3 * q + 1)),
            ((s - q) * (s - q - 2), (s - q) / 2 * (s - q - 1)),
            ((s - 2 * q + 1) * (s - 2 * q - 1), (q + 1) * (s - 2 * q)),
        ]),
        cnsl: spectrum(&[
            (2 * (s - 3 * q + 1) * (s - 3 * q), (s + q) / 2),
            ((s - 3 * q) * (s - 3 * q), (s + q) / 2 * (s - 3 * q + 1)),
            (2 * (s - q - 1) * (s - q - 2), (s - q) / 2),
            ((s - q - 2) * (s - q - 2), (s - q) / 2 * (s - q - 1)),
            (2 * (s - 2 * q) * (s - 2 * q - 1), q + 1),
            ((s - 2 * q - 1) * (s - 2 * q - 1), (q + 1) * (s - 2 * q)),
        ]),
        le_cn: fr(
            (q - 2) * (q - 1) * q.pow(4) * (q + 1) * (2 * q - 3) * ((q - 1) * q - 1),
            den,
        ),
        le_plus_cn,
    };
    Ok(FamilyResult::from_printed(
        "gl2",
        if q <= 5 { "q<=5" } else { "q>=6" }.into(),
        &[("q", q as u64)],
        parts(&[
            (s - 3 * q + 2, q * (q + 1) / 2),
            (s - q, q * (q - 1) / 2),
            (s - 2 * q + 1, q + 1),
        ]),
        printed,
    ))
}

pub fn eval_hanaki_nu(n: u32) -> Result<FamilyResult, FormulaError> {
    domain((2..=MAX_NU_N).contains(&n), || {
        format!("A(n,nu) needs 2 <= n <= {MAX_NU_N}, got {n}")
    })?;
    let q = 1i128 << n;
    let e = 2 * (q - 2) * (q - 1) * (q - 1);
    let printed = PrintedForms {
        cnl: spectrum(&[(0, q - 1), (q * (q - 2), (q - 1) * (q - 1))]),
        cnsl: spectrum(&[
            (2 * (q - 1) * (q - 2), q - 1),
            ((q - 2) * (q - 2), (q - 1) * (q - 1)),
        ]),
        le_cn: fr(e, 1),
        le_plus_cn: fr(e, 1),
    };
    Ok(FamilyResult::from_printed(
        "hanaki-frobenius",
        "general".into(),
        &[("n", n as u64)],
        parts(&[(q, q - 1)]),
        printed,
    ))
}

pub fn eval_hanaki_p(p: u32, n: u32) -> Result<FamilyResult, FormulaError> {
    domain(is_prime(p as u64) && n >= 1, || {
        format!("A(n,p) needs p prime and n >= 1, got p={p}, n={n}")
    })?;
    let q = (p as u128)
        .checked_pow(n)
        .filter(|&q| q <= MAX_HANAKI_P_ORDER);
    let q = q.ok_or_else(|| FormulaError::OutOfDomain(format!("p^n too large: {p}^{n}")))? as i128;
    let m = q * q - q;
    let e = 2 * (q + 1) * (q + 1) * (-3 * q * q + q * q * q + q + 2);
    let printed = PrintedForms {
        cnl: spectrum(&[(0, q + 1), (m * (m - 2), (q + 1) * (m - 1))]),
        cnsl: spectrum(&[
            (2 * (m - 1) * (m - 2), q + 1),
            ((m - 2) * (m - 2), (q + 1) * (m - 1)),
        ]),
        le_cn: fr(e, 1),
        le_plus_cn: fr(e, 1),
    };
    Ok(FamilyResult::from_printed(
        "hanaki-p",
        "general".into(),
        &[("p", p as u64), ("n", n as u64)],
        parts(&[(m, q + 1)]),
        printed,
    ))
}

pub fn eval_sz2_quotient(z: u64) -> Result<FamilyResult, FormulaError> {
    domain((1..=MAX_LINEAR).contains(&z), || {
        format!("Sz(2) quotient needs 1 <= z <= {MAX_LINEAR}, got {z}")
    })?;
    let z = z as i128;
    let printed = PrintedForms {
        cnl: spectrum(&[
            (0, 6),
            (4 * z * (4 * z - 2), 4 * z - 1),
            (3 * z * (3 * z - 2), 5 * (3 * z - 1)),
        ]),
        cnsl: spectrum(&[
            (2 * (4 * z - 1) * (4 * z - 2), 1),
            ((4 * z - 2) * (4 * z - 2), 4 * z - 1),
            (2 * (3 * z - 1) * (3 * z - 2), 5),
            ((3 * z - 2) * (3 * z - 2), 5 * (3 * z - 1)),
        ]),
        le_cn: if z == 1 {
            fr(648, 19)
        } else {
            fr(2 * (4 * z - 1) * (z * (105 * z + 31) - 38), 19)
        },
        le_plus_cn: fr(10 * (3 * z - 1) * (z * (28 * z + 45) - 38), 19),
    };
    Ok(FamilyResult::from_printed(
        "central-quotient-sz2",
        if z == 1 { "z=1" } else { "z>=2" }.into(),
        &[("z", z as u64)],
        parts(&[(4 * z, 1), (3 * z, 5)]),
        printed,
    ))
}

pub fn eval_zpzp_quotient(p: u64, z: u64) -> Result<FamilyResult, FormulaError> {
    domain(
        is_prime(p) && p <= MAX_LINEAR && (1..=MAX_LINEAR).contains(&z),
        || format!("Zp x Zp quotient needs p prime and 1 <= z, got p={p}, z={z}"),
    )?;
    let (p, z) = (p as i128, z as i128);
    let c = (p - 1) * z;
    let zero_branch = z == 1 && p == 2;
    let e = if zero_branch {
        Rational::default()
    } else {
        fr(2 * (p + 1) * (c - 2) * (c - 1), 1)
    };
    let printed = PrintedForms {
        cnl: spectrum(&[(0, p + 1), (c * (c - 2), (p + 1) * (c - 1))]),
        cnsl: spectrum(&[
            (2 * (c - 1) * (c - 2), p + 1),
            ((c - 2) * (c - 2), (p + 1) * (c - 1)),
        ]),
        le_cn: e.clone(),
        le_plus_cn: e,
    };
    Ok(FamilyResult::from_printed(
        "central-quotient-zpzp",
        if zero_branch { "p=2,z=1" } else { "general" }.into(),
        &[("p", p as u64), ("z", z as u64)],
        parts(&[(c, p + 1)]),
        printed,
    ))
}

pub fn eval_d2m_quotient(m: u64, z: u64) -> Result<FamilyResult, FormulaError> {
    domain(
        (2..=MAX_LINEAR).contains(&m) && (1..=MAX_LINEAR).contains(&z),
        || format!("D2m quotient needs m >= 2 and z >= 1, got m={m}, z={z}"),
    )?;
    let (m, z) = (m as i128, z as i128);
    let c = (m - 1) * z;
    let (le_branch, le_cn) = if m == 2 && z == 1 {
        ("m=2,z=1", Rational::default())
    } else if m == 2 {
        (
            "m=2,z>=2",
            fr(
                -6 * (m * m * m + 1) * z
                    + 4 * (2 * m * m + m - 1)
                    + 2 * (m * (m * (m - 1) * (m - 1) + 3) - 1) * z * z,
                2 * m - 1,
            ),
        )
    } else {
        (
            "otherwise",
            fr(
                2 * (c - 1) * (m * (z * ((m - 2) * m * z - m + 3) - 4) + z + 2),
                2 * m - 1,
            ),
        )
    };
    let (plus_branch, le_plus_cn) = if m == 2 && z == 1 {
        ("m=2,z=1", Rational::default())
    } else if m == 2 {
        ("m=2,z>=2", fr(18 * z * z - 54 * z + 36, 3))
    } else if (m == 3 || m == 4) && z == 1 {
        (
            "m in {3,4},z=1",
            fr(
                2 * m * (((m - 3) * m * m + 1) * z * z - 3 * ((m - 5) * m + 3) * z - 4 * m + 2),
                2 * m - 1,
            ),
        )
    } else {
        (
            "otherwise",
            fr(2 * (m - 2) * (m - 1) * m * z * z * (m * z - 3), 2 * m - 1),
        )
    };
    let printed = PrintedForms {
        cnl: spectrum(&[(0, m + 1), (c * (c - 2), c - 1), (z * (z - 2), m * (z - 1))]),
        cnsl: spectrum(&[
            (2 * (c - 1) * (c - 2), 1),
            ((c - 2) * (c - 2), c - 1),
            (2 * (z - 1) * (z - 2), m),
            ((z - 2) * (z - 2), m * (z - 1)),
        ]),
        le_cn,
        le_plus_cn,
    };
    Ok(FamilyResult::from_printed(
        "central-quotient-d2m",
        format!("le:{le_branch};le+:{plus_branch}"),
        &[("m", m as u64), ("z", z as u64)],
        parts(&[(c, 1), (z, m)]),
        printed,
    ))
}

fn ac_sizes(sizes: &[u64], z: u64) -> Result<(), FormulaError> {
    if z == 0 {
        return Err(FormulaError::InvalidSizes(
            "center size must be positive".into(),
        ));
    }
    if sizes.is_empty() {
        return Err(FormulaError::InvalidSizes("no centralizers given".into()));
    }
    if let Some(&bad) = sizes.iter().find(|&&s| s <= z) {
        return Err(FormulaError::InvalidSizes(format!(
            "centralizer size {bad} does not exceed the center size {z}"
        )));
    }
    Ok(())
}

/// Γ = ⊔ K_{|X_i| − z} for an AC-group with distinct centralizers X_i.
pub fn eval_ac_general(sizes: &[u64], z: u64) -> Result<FamilyResult, FormulaError> {
    eval_ac_product(sizes, z, 1).map(|mut r| {
        r.source = "ac-group";
        r.params.remove("a");
        r
    })
}

/// Γ_{G×A} = ⊔ K_{a(|X_i| − z)} for an abelian A of order a.
pub fn eval_ac_product(sizes: &[u64], z: u64, a: u64) -> Result<FamilyResult, FormulaError> {
    ac_sizes(sizes, z)?;
    if a == 0 {
        return Err(FormulaError::InvalidSizes(
            "abelian factor order must be positive".into(),
        ));
    }
    let d = crate::graph::CliqueDecomposition::from_parts(sizes.iter().map(|&s| (a * (s - z), 1)));
    let (cnl, cnsl) = exact_spectrum_clique_union(&d);
    Ok(FamilyResult::with_spectra(
        "ac-group-product",
        "general".into(),
        &[("z", z), ("a", a)],
        d,
        cnl,
        cnsl,
    ))
}
