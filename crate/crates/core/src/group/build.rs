use crate::field::{prime_power, FieldSpec, FieldTables};

use super::{GroupError, GroupSpec, GroupTable};

pub const MAX_GROUP_ORDER: usize = 4096;

fn check_order(order: u128) -> Result<usize, GroupError> {
    if order > MAX_GROUP_ORDER as u128 {
        return Err(GroupError::TooLarge {
            order,
            max: MAX_GROUP_ORDER,
        });
    }
    Ok(order as usize)
}

fn pow_mod(base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    let mut b = base % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn monomial(i: u64, j: u64) -> String {
    let part = |sym: &str, e: u64| match e {
        0 => String::new(),
        1 => sym.to_string(),
        _ => format!("{sym}^{e}"),
    };
    let s = format!("{}{}", part("x", i), part("y", j));
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

/// The group <x, y | x^m = 1, y^s = x^t, y x y^-1 = x^k>.
///
/// Element `i*s + j` is x^i y^j, and
/// (x^i y^j)(x^i' y^j') = x^(i + i'k^j) y^(j + j'), folding y^s into x^t.
pub fn build_presented(m: u64, s: u64, t: u64, k: u64) -> Result<GroupTable, GroupError> {
    let invalid = |reason| GroupError::InvalidPresentation { m, s, t, k, reason };
    if m < 2 || s < 1 {
        return Err(invalid("need m >= 2 and s >= 1"));
    }
    if t >= m || k < 1 || k >= m {
        return Err(invalid("need 0 <= t < m and 1 <= k < m"));
    }
    if pow_mod(k, s, m) != 1 {
        return Err(invalid("k^s is not 1 mod m"));
    }
    if !(t * (k - 1)).is_multiple_of(m) {
        return Err(invalid("t(k-1) is not 0 mod m"));
    }
    let order = check_order(m as u128 * s as u128)?;
    let kpow: Vec<u64> = (0..s).map(|j| pow_mod(k, j, m)).collect();
    let labels = (0..order as u64).map(|g| monomial(g / s, g % s)).collect();
    GroupTable::from_fn(order, labels, |a, b| {
        let (i, j) = (a as u64 / s, a as u64 % s);
        let (i2, j2) = (b as u64 / s, b as u64 % s);
        let mut x = (i + i2 * kpow[j as usize]) % m;
        let mut y = j + j2;
        if y >= s {
            y -= s;
            x = (x + t) % m;
        }
        (x * s + y) as usize
    })
}

fn field_for(q: u64, what: &str) -> Result<FieldTables, GroupError> {
    let (p, e) = prime_power(q)
        .ok_or_else(|| GroupError::InvalidParams(format!("{what}: q={q} is not a prime power")))?;
    Ok(FieldTables::new(&FieldSpec::new(p, e)?))
}

/// 2x2 matrices over GF(q) in row-major lexicographic order, filtered by `keep(det)`.
fn matrix_group(f: &FieldTables, keep: impl Fn(usize) -> bool) -> Result<GroupTable, GroupError> {
    let q = f.order();
    let det = |m: [usize; 4]| f.sub(f.mul(m[0], m[3]), f.mul(m[1], m[2]));
    let code = |m: [usize; 4]| ((m[0] * q + m[1]) * q + m[2]) * q + m[3];
    let mut elems = Vec::new();
    let mut index = vec![usize::MAX; q * q * q * q];
    for c in 0..q * q * q * q {
        let m = [c / (q * q * q), c / (q * q) % q, c / q % q, c % q];
        if keep(det(m)) {
            index[c] = elems.len();
            elems.push(m);
        }
    }
    check_order(elems.len() as u128)?;
    let labels = elems
        .iter()
        .map(|m| format!("[{},{};{},{}]", m[0], m[1], m[2], m[3]))
        .collect();
    GroupTable::from_fn(elems.len(), labels, |a, b| {
        let (x, y) = (elems[a], elems[b]);
        let dot = |r: usize, c: usize| f.add(f.mul(x[2 * r], y[c]), f.mul(x[2 * r + 1], y[2 + c]));
        index[code([dot(0, 0), dot(0, 1), dot(1, 0), dot(1, 1)])]
    })
}

fn direct_product(inner: &GroupTable, abelian: &[u64]) -> Result<GroupTable, GroupError> {
    if abelian.contains(&0) {
        return Err(GroupError::InvalidParams(
            "cyclic factor orders must be positive".into(),
        ));
    }
    let a_order: u128 = abelian.iter().map(|&r| r as u128).product();
    let order = check_order(inner.order() as u128 * a_order)?;
    let a_order = a_order as usize;
    let radix: Vec<usize> = abelian.iter().map(|&r| r as usize).collect();
    let digits = |mut v: usize| {
        let mut d = vec![0; radix.len()];
        for (slot, &r) in d.iter_mut().zip(&radix).rev() {
            *slot = v % r;
            v /= r;
        }
        d
    };
    let add = |u: usize, v: usize| {
        let (du, dv) = (digits(u), digits(v));
        du.iter()
            .zip(&dv)
            .zip(&radix)
            .fold(0, |acc, ((&a, &b), &r)| acc * r + (a + b) % r)
    };
    let a_table: Vec<usize> = (0..a_order * a_order)
        .map(|c| add(c / a_order, c % a_order))
        .collect();
    let labels = (0..order)
        .map(|g| {
            let d = digits(g % a_order);
            format!("({},{:?})", inner.label(g / a_order), d)
        })
        .collect();
    GroupTable::from_fn(order, labels, |a, b| {
        let g = inner.mul(a / a_order, b / a_order);
        g * a_order + a_table[(a % a_order) * a_order + b % a_order]
    })
}

pub fn build_family(spec: &GroupSpec) -> Result<GroupTable, GroupError> {
    let bad = |msg: String| Err(GroupError::InvalidParams(msg));
    match *spec {
        GroupSpec::Presented { m, s, t, k } => build_presented(m, s, t, k),
        GroupSpec::Dihedral { m } => {
            if m < 3 {
                return bad(format!("dihedral needs m >= 3, got {m}"));
            }
            build_presented(m, 2, 0, m - 1)
        }
        GroupSpec::Quasidihedral { n } => {
            if n < 4 {
                return bad(format!("quasidihedral needs n >= 4, got {n}"));
            }
            if n > 12 {
                return Err(GroupError::TooLarge {
                    order: 1u128 << n.min(127),
                    max: MAX_GROUP_ORDER,
                });
            }
            let m = 1u64 << (n - 1);
            build_presented(m, 2, 0, m / 2 - 1)
        }
        GroupSpec::Dicyclic { n } => {
            if n < 2 {
                return bad(format!("dicyclic needs n >= 2, got {n}"));
            }
            build_presented(2 * n, 2, n, 2 * n - 1)
        }
        GroupSpec::Metacyclic { m, n } => {
            if m < 2 || n < 1 {
                return bad(format!("metacyclic needs m >= 2, n >= 1, got ({m}, {n})"));
            }
            build_presented(m, 2 * n, 0, m - 1)
        }
        GroupSpec::U6n { n } => {
            if n < 1 {
                return bad("U6n needs n >= 1".into());
            }
            build_presented(3, 2 * n, 0, 2)
        }
        GroupSpec::Sz2 => build_presented(5, 4, 0, 2),
        GroupSpec::Gl2 { q } => {
            if q <= 2 {
                return bad(format!("GL2 needs q > 2, got {q}"));
            }
            let f = field_for(q, "GL2")?;
            check_order((q as u128 * q as u128 - 1) * (q as u128 * q as u128 - q as u128))?;
            matrix_group(&f, |d| d != 0)
        }
        GroupSpec::Sl2 { q } => {
            match prime_power(q) {
                Some((2, e)) if e >= 2 => {}
                _ => return bad(format!("SL2 needs q = 2^k with k >= 2, got {q}")),
            }
            let f = field_for(q, "SL2")?;
            check_order(q as u128 * (q as u128 * q as u128 - 1))?;
            matrix_group(&f, |d| d == 1)
        }
        GroupSpec::HanakiNu { n } => {
            if n < 2 {
                return bad(format!("HanakiNu needs n >= 2, got {n}"));
            }
            if n > 6 {
                return Err(GroupError::TooLarge {
                    order: 1u128 << (2 * n.min(63)),
                    max: MAX_GROUP_ORDER,
                });
            }
            let f = FieldTables::new(&FieldSpec::new(2, n)?);
            let q = f.order();
            let order = check_order((q * q) as u128)?;
            let labels = (0..order)
                .map(|g| format!("U({},{})", g / q, g % q))
                .collect();
            GroupTable::from_fn(order, labels, |u, v| {
                let (a, b) = (u / q, u % q);
                let (a2, b2) = (v / q, v % q);
                let nb = f.add(f.add(b, b2), f.mul(f.frobenius(a), a2));
                f.add(a, a2) * q + nb
            })
        }
        GroupSpec::HanakiP { p, n } => {
            if n < 1 {
                return bad("HanakiP needs n >= 1".into());
            }
            let q = (p as u128).checked_pow(n).unwrap_or(u128::MAX);
            check_order(q.saturating_mul(q).saturating_mul(q))?;
            let f = FieldTables::new(&FieldSpec::new(p, n)?);
            let q = f.order();
            let order = q * q * q;
            let labels = (0..order)
                .map(|g| format!("V({},{},{})", g / (q * q), g / q % q, g % q))
                .collect();
            GroupTable::from_fn(order, labels, |u, v| {
                let (a, b, c) = (u / (q * q), u / q % q, u % q);
                let (a2, b2, c2) = (v / (q * q), v / q % q, v % q);
                let nb = f.add(f.add(b, b2), f.mul(c, a2));
                (f.add(a, a2) * q + nb) * q + f.add(c, c2)
            })
        }
        GroupSpec::DirectProduct {
            ref inner,
            ref abelian,
        } => direct_product(&build_family(inner)?, abelian),
    }
}
