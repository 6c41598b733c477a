//! Isomorphism types of finite subgroups of PGL2(C), read off from the
//! census of element orders.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

/// Cyclic, dihedral or one of the three polyhedral groups. `Dihedral(k)` has
/// order `2k`; `Dihedral(2)` is the Klein four-group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IsoType {
    Cyclic(usize),
    Dihedral(usize),
    A4,
    S4,
    A5,
}

impl IsoType {
    pub fn order(&self) -> usize {
        match *self {
            IsoType::Cyclic(k) => k,
            IsoType::Dihedral(k) => 2 * k,
            IsoType::A4 => 12,
            IsoType::S4 => 24,
            IsoType::A5 => 60,
        }
    }

    /// Number of elements of each order.
    pub fn census(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        let cyclic = |k: usize, out: &mut BTreeMap<usize, usize>| {
            for d in (1..=k).filter(|d| k % d == 0) {
                *out.entry(d).or_insert(0) += euler_phi(d);
            }
        };
        match *self {
            IsoType::Cyclic(k) => cyclic(k, &mut out),
            IsoType::Dihedral(k) => {
                cyclic(k, &mut out);
                *out.entry(2).or_insert(0) += k;
            }
            IsoType::A4 => out.extend([(1, 1), (2, 3), (3, 8)]),
            IsoType::S4 => out.extend([(1, 1), (2, 9), (3, 8), (4, 6)]),
            IsoType::A5 => out.extend([(1, 1), (2, 15), (3, 20), (5, 24)]),
        }
        out
    }
}

fn euler_phi(n: usize) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

impl fmt::Display for IsoType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            IsoType::Cyclic(1) => write!(f, "{{Id}}"),
            IsoType::Cyclic(k) => write!(f, "C_{k}"),
            IsoType::Dihedral(2) => write!(f, "V_4"),
            IsoType::Dihedral(k) => write!(f, "D_{k}"),
            IsoType::A4 => write!(f, "A_4"),
            IsoType::S4 => write!(f, "S_4"),
            IsoType::A5 => write!(f, "A_5"),
        }
    }
}

impl FromStr for IsoType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.parse::<usize>().map_err(|_| format!("bad group label {s:?}"));
        match s.trim() {
            "{Id}" | "Id" => Ok(IsoType::Cyclic(1)),
            "V_4" | "V4" => Ok(IsoType::Dihedral(2)),
            "A_4" | "A4" => Ok(IsoType::A4),
            "S_4" | "S4" => Ok(IsoType::S4),
            "A_5" | "A5" => Ok(IsoType::A5),
            t => {
                if let Some(k) = t.strip_prefix("C_") {
                    Ok(IsoType::Cyclic(num(k)?))
                } else if let Some(k) = t.strip_prefix("D_") {
                    Ok(IsoType::Dihedral(num(k)?))
                } else {
                    Err(format!("bad group label {s:?}"))
                }
            }
        }
    }
}

/// The Blichfeldt type whose order census equals that of `orders`, or
/// `None` when no finite subgroup of PGL2(C) has this census.
pub fn identify_orders(orders: &[usize]) -> Option<IsoType> {
    let n = orders.len();
    if n == 0 {
        return None;
    }
    let mut census = BTreeMap::new();
    for &o in orders {
        *census.entry(o).or_insert(0) += 1;
    }
    let mut candidates = vec![IsoType::Cyclic(n)];
    if n % 2 == 0 && n >= 4 {
        candidates.push(IsoType::Dihedral(n / 2));
    }
    candidates.extend([IsoType::A4, IsoType::S4, IsoType::A5]);
    candidates.into_iter().find(|t| t.order() == n && t.census() == census)
}
