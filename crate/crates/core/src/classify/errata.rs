use crate::family::Family;

/// A printed value known to disagree with the recomputed one.
///
/// `quantity` uses the same names as formula discrepancies
/// (`cnl_spectrum`, `le_cn`, ...) and verdict mismatches (`cnl_hyper`, ...).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KnownErratum {
    pub id: &'static str,
    pub quantity: &'static str,
    pub note: &'static str,
}

const U6N_CNSL: KnownErratum = KnownErratum {
    id: "u6n-cnsl-factor",
    quantity: "cnsl_spectrum",
    note:
        "the eigenvalue (2n-1)(2n-2) lacks a factor 2; the D_2m specialization gives 2(2n-1)(2n-2)",
};

const METACYCLIC_M4_LE: KnownErratum = KnownErratum {
    id: "metacyclic-m4-energy",
    quantity: "le_cn",
    note: "the m = 4 energy branch only holds for n = 1",
};

const METACYCLIC_M4_LE_PLUS: KnownErratum = KnownErratum {
    id: "metacyclic-m4-energy",
    quantity: "le_plus_cn",
    note: "the m = 4 energy branch only holds for n = 1",
};

const METACYCLIC_5_2: KnownErratum = KnownErratum {
    id: "metacyclic-5-2-cnsl",
    quantity: "cnsl_hyper",
    note: "m = 5, n = 2 is listed as CNSL-hyperenergetic; it is G/Z = D_10 with z = 2, which the D_2m table lists as not",
};

const FIVE_CENTRALIZER_CNSL: KnownErratum = KnownErratum {
    id: "five-centralizer-cnsl",
    quantity: "cnsl_spectrum",
    note: "printed CNSL spectrum does not specialize the Zp x Zp theorem at p = 3",
};

const P_PLUS_2_CNL: KnownErratum = KnownErratum {
    id: "p-plus-2-cnl",
    quantity: "cnl_spectrum",
    note:
        "printed CNL eigenvalue does not specialize the Zp x Zp theorem when z >= 2 and (p-1)z >= 3",
};

const SZ2_BASELINE: KnownErratum = KnownErratum {
    id: "sz2-baseline-difference",
    quantity: "baseline_difference",
    note: "for z = 1 the baseline minus LE_CN is 10980/19, printed as 11040/19",
};

const ORDER16_INTEGRALITY: KnownErratum = KnownErratum {
    id: "order16-integrality-claim",
    quantity: "integral_claim",
    note:
        "groups of order 16 with G/Z = Z2 x Z2 are called non-integral; their spectra are integral",
};

/// Errata that apply to an instance.
pub fn known_errata(family: &Family) -> Vec<KnownErratum> {
    match *family {
        Family::U6n { n } if n >= 2 => vec![U6N_CNSL],
        Family::Metacyclic { m: 4, n } if n >= 2 => vec![METACYCLIC_M4_LE, METACYCLIC_M4_LE_PLUS],
        Family::Metacyclic { m: 5, n: 2 } => vec![METACYCLIC_5_2],
        Family::FiveCentralizer { .. } => vec![FIVE_CENTRALIZER_CNSL],
        Family::PPlus2Centralizer { p, z } if z >= 2 && (p - 1) * z >= 3 => vec![P_PLUS_2_CNL],
        Family::Sz2Quotient { z: 1 } => vec![SZ2_BASELINE],
        Family::ZpzpQuotient { p: 2, z: 4 } | Family::FourCentralizer { z: 4 } => {
            vec![ORDER16_INTEGRALITY]
        }
        _ => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Every formula discrepancy over a broad range is a registered erratum,
    /// and every registered formula erratum actually fires.
    #[test]
    fn registry_covers_formula_discrepancies() {
        let mut fams = Vec::new();
        for m in 3..=20 {
            for n in 1..=6 {
                fams.push(Family::Metacyclic { m, n });
            }
            fams.push(Family::Dihedral { m });
        }
        for n in 1..=12 {
            fams.push(Family::U6n { n });
            fams.push(Family::Dicyclic { n: n + 1 });
        }
        for z in 1..=12 {
            fams.push(Family::FourCentralizer { z });
            fams.push(Family::FiveCentralizer { z });
            for p in [2, 3, 5, 7] {
                fams.push(Family::PPlus2Centralizer { p, z });
            }
        }
        for p in [2, 3, 5, 7, 11] {
            fams.push(Family::OrderP3 { p });
        }
        for f in fams {
            let r = f.formula().unwrap();
            let registered: Vec<&str> = known_errata(&f)
                .iter()
                .filter(|e| e.quantity.ends_with("spectrum") || e.quantity.starts_with("le_"))
                .map(|e| e.quantity)
                .collect();
            let mut found = r.discrepancy_quantities();
            found.sort_unstable();
            let mut want = registered.clone();
            want.sort_unstable();
            assert_eq!(found, want, "{f}");
        }
    }
}
