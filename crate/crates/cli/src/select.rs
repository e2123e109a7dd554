//! Parameter ranges and the instances they expand to.

use cn_spectra::family::{Family, FAMILY_NAMES};

/// Values given to one parameter flag: `5`, `4..6` (inclusive), `4..=6`,
/// or a comma-separated mix of these.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Values(pub Vec<u64>);

pub fn parse_values(s: &str) -> Result<Values, String> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim) {
        let num = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| format!("{t:?} is not a non-negative integer"))
        };
        match item.split_once("..") {
            Some((a, b)) => {
                let (a, b) = (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?);
                if a > b {
                    return Err(format!("empty range {item}"));
                }
                if b - a > 100_000 {
                    return Err(format!("range {item} is too long"));
                }
                out.extend(a..=b);
            }
            None => out.push(num(item)?),
        }
    }
    Ok(Values(out))
}

#[derive(Debug, Clone, Default)]
pub struct ParamValues {
    pub n: Option<Values>,
    pub k: Option<Values>,
    pub q: Option<Values>,
    pub m: Option<Values>,
    pub p: Option<Values>,
    pub z: Option<Values>,
}

impl ParamValues {
    fn get(&self, name: &str) -> Option<&Values> {
        match name {
            "n" => self.n.as_ref(),
            "k" => self.k.as_ref(),
            "q" => self.q.as_ref(),
            "m" => self.m.as_ref(),
            "p" => self.p.as_ref(),
            "z" => self.z.as_ref(),
            _ => None,
        }
    }

    fn given(&self) -> Vec<&'static str> {
        ["n", "k", "q", "m", "p", "z"]
            .into_iter()
            .filter(|p| self.get(p).is_some())
            .collect()
    }
}

/// Expands family names and parameter ranges into sorted, distinct instances.
pub fn families(names: &[String], params: &ParamValues) -> Result<Vec<Family>, String> {
    if names.is_empty() {
        return Err("no --family given".into());
    }
    let mut used = Vec::new();
    let mut out = Vec::new();
    for name in names {
        let wanted = Family::param_names(name).ok_or_else(|| {
            format!(
                "unknown family {name:?}; expected one of {}",
                FAMILY_NAMES.join(", ")
            )
        })?;
        let mut combos: Vec<Vec<u64>> = vec![Vec::new()];
        for p in wanted {
            let values = params.get(p).ok_or_else(|| format!("{name} needs --{p}"))?;
            used.push(*p);
            combos = combos
                .into_iter()
                .flat_map(|c| {
                    values.0.iter().map(move |v| {
                        let mut c = c.clone();
                        c.push(*v);
                        c
                    })
                })
                .collect();
        }
        for combo in combos {
            let f = Family::from_params(name, |k| {
                wanted.iter().position(|w| *w == k).map(|i| combo[i])
            })?;
            out.push(f);
        }
    }
    if let Some(p) = params.given().into_iter().find(|p| !used.contains(p)) {
        return Err(format!("--{p} is not a parameter of {}", names.join(", ")));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Instances swept when `sweep` is given no family: every family at orders
/// up to 512.
pub fn default_grid() -> Vec<Family> {
    let mut f = Vec::new();
    f.extend((4..=9).map(|n| Family::Qd { n }));
    f.extend([2, 3].map(|k| Family::Psl { k }));
    f.extend([3, 4, 5].map(|q| Family::Gl { q }));
    f.extend((2..=4).map(|n| Family::HanakiNu { n }));
    f.extend(
        [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3)].map(|(p, n)| Family::HanakiP { p, n }),
    );
    f.extend((3..=30).map(|m| Family::Dihedral { m }));
    f.extend((2..=15).map(|n| Family::Dicyclic { n }));
    for m in 3..=16u64 {
        f.extend((1..=256 / m).take(8).map(|n| Family::Metacyclic { m, n }));
    }
    f.extend((1..=12).map(|n| Family::U6n { n }));
    f.extend((1..=20).map(|z| Family::Sz2Quotient { z }));
    for p in [2, 3, 5] {
        f.extend((1..=10).map(|z| Family::ZpzpQuotient { p, z }));
    }
    for m in 2..=13u64 {
        f.extend((1..=256 / m).map(|z| Family::D2mQuotient { m, z }));
    }
    f.extend([2, 3, 5, 7].map(|p| Family::OrderP3 { p }));
    for z in 1..=20 {
        f.push(Family::FourCentralizer { z });
        f.push(Family::FiveCentralizer { z });
    }
    for p in [2, 3, 5, 7] {
        f.extend((1..=10).map(|z| Family::PPlus2Centralizer { p, z }));
    }
    f.sort();
    f.dedup();
    f
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_syntax() {
        assert_eq!(parse_values("4..6").unwrap().0, vec![4, 5, 6]);
        assert_eq!(parse_values("4..=5,9").unwrap().0, vec![4, 5, 9]);
        assert_eq!(parse_values("7").unwrap().0, vec![7]);
        assert!(parse_values("6..4").is_err());
        assert!(parse_values("x").is_err());
    }

    #[test]
    fn expansion() {
        let params = ParamValues {
            m: Some(Values(vec![3, 4])),
            z: Some(Values(vec![2, 1])),
            ..Default::default()
        };
        let f = families(&["d2m-quotient".into()], &params).unwrap();
        assert_eq!(f.len(), 4);
        assert_eq!(f[0], Family::D2mQuotient { m: 3, z: 1 });
        assert!(families(&["qd".into()], &params).is_err());
        assert!(families(&["nope".into()], &params).is_err());
    }
}
