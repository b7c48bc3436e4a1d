//! Catalog of group carriers addressable by spec strings.
//!
//! Finite families are realized as validated multiplication tables (orders
//! up to 64); symmetric groups on 5+ points fall back to the permutation
//! carrier. Spec grammar: `f:m`, `dinf`, `perm:n`, `c:n`, `d:2n`, `s:n`,
//! `q8`, `sd16`, `f21`, `ham:n`, `prod(a,b)`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{CayleyTable, GroupContext, Permutation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    /// Free group of rank m.
    Free(usize),
    /// Infinite dihedral group.
    InfDihedral,
    /// Symmetric group as a permutation carrier.
    Permutation(usize),
    /// Cyclic group of order n.
    Cyclic(usize),
    /// Dihedral group of (even) order `2n`.
    Dihedral(usize),
    /// Symmetric group; a table for n <= 4, permutations above.
    Symmetric(usize),
    Quaternion8,
    Quasidihedral16,
    Frobenius21,
    /// Q8 x C2^n.
    Hamiltonian(usize),
    Product(Box<GroupSpec>, Box<GroupSpec>),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Free(m) => write!(f, "f:{m}"),
            GroupSpec::InfDihedral => write!(f, "dinf"),
            GroupSpec::Permutation(n) => write!(f, "perm:{n}"),
            GroupSpec::Cyclic(n) => write!(f, "c:{n}"),
            GroupSpec::Dihedral(order) => write!(f, "d:{order}"),
            GroupSpec::Symmetric(n) => write!(f, "s:{n}"),
            GroupSpec::Quaternion8 => write!(f, "q8"),
            GroupSpec::Quasidihedral16 => write!(f, "sd16"),
            GroupSpec::Frobenius21 => write!(f, "f21"),
            GroupSpec::Hamiltonian(n) => write!(f, "ham:{n}"),
            GroupSpec::Product(a, b) => write!(f, "prod({a},{b})"),
        }
    }
}

/// Parses a group spec string.
pub fn parse_group_spec(input: &str) -> Result<GroupSpec> {
    let spec = input.trim();
    let unsupported = |reason: &str| Error::UnsupportedSpec {
        spec: spec.to_string(),
        reason: reason.to_string(),
    };
    if let Some(inner) = spec.strip_prefix("prod(").and_then(|s| s.strip_suffix(')')) {
        // split on the top-level comma
        let mut depth = 0usize;
        let mut split = None;
        for (pos, ch) in inner.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth = depth.saturating_sub(1),
                ',' if depth == 0 => {
                    split = Some(pos);
                    break;
                }
                _ => {}
            }
        }
        let pos = split.ok_or_else(|| unsupported("prod needs two components"))?;
        let left = parse_group_spec(&inner[..pos])?;
        let right = parse_group_spec(&inner[pos + 1..])?;
        return Ok(GroupSpec::Product(Box::new(left), Box::new(right)));
    }
    match spec {
        "dinf" => return Ok(GroupSpec::InfDihedral),
        "q8" => return Ok(GroupSpec::Quaternion8),
        "sd16" => return Ok(GroupSpec::Quasidihedral16),
        "f21" => return Ok(GroupSpec::Frobenius21),
        _ => {}
    }
    let (family, arg) = spec
        .split_once(':')
        .ok_or_else(|| unsupported("unknown family"))?;
    let value: usize = arg
        .parse()
        .map_err(|_| unsupported("parameter is not a number"))?;
    match family {
        "f" => Ok(GroupSpec::Free(value)),
        "perm" => Ok(GroupSpec::Permutation(value)),
        "c" => Ok(GroupSpec::Cyclic(value)),
        "d" => Ok(GroupSpec::Dihedral(value)),
        "s" => Ok(GroupSpec::Symmetric(value)),
        "ham" => Ok(GroupSpec::Hamiltonian(value)),
        _ => Err(unsupported("unknown family")),
    }
}

const MAX_TABLE_ORDER: usize = 64;

/// Realizes a spec as a group context, validating the group axioms for
/// every table carrier.
pub fn make_group(spec: &GroupSpec) -> Result<GroupContext> {
    let unsupported = |reason: String| Error::UnsupportedSpec {
        spec: spec.to_string(),
        reason,
    };
    match spec {
        GroupSpec::Free(m) => {
            if *m == 0 {
                Err(unsupported("rank must be at least 1".into()))
            } else {
                Ok(GroupContext::Free { rank: *m })
            }
        }
        GroupSpec::InfDihedral => Ok(GroupContext::InfDihedral),
        GroupSpec::Permutation(n) => {
            if *n == 0 {
                Err(unsupported("degree must be at least 1".into()))
            } else {
                Ok(GroupContext::SymmetricPerm { degree: *n })
            }
        }
        GroupSpec::Symmetric(n) => match n {
            0 => Err(unsupported("degree must be at least 1".into())),
            1..=4 => Ok(GroupContext::Cayley(Arc::new(symmetric_table(*n)?))),
            _ => Ok(GroupContext::SymmetricPerm { degree: *n }),
        },
        GroupSpec::Cyclic(n) => {
            check_order(*n, spec)?;
            Ok(GroupContext::Cayley(Arc::new(cyclic_table(*n)?)))
        }
        GroupSpec::Dihedral(order) => {
            check_order(*order, spec)?;
            if order % 2 != 0 || *order < 2 {
                return Err(unsupported("dihedral order must be even".into()));
            }
            Ok(GroupContext::Cayley(Arc::new(dihedral_table(*order)?)))
        }
        GroupSpec::Quaternion8 => Ok(GroupContext::Cayley(Arc::new(quaternion_table()?))),
        GroupSpec::Quasidihedral16 => Ok(GroupContext::Cayley(Arc::new(quasidihedral_table()?))),
        GroupSpec::Frobenius21 => Ok(GroupContext::Cayley(Arc::new(frobenius_table()?))),
        GroupSpec::Hamiltonian(n) => {
            let order = 8usize.checked_shl(*n as u32).unwrap_or(usize::MAX);
            check_order(order, spec)?;
            let mut table = quaternion_table()?;
            for _ in 0..*n {
                table = product_table(&table, &cyclic_table(2)?)?;
            }
            // keep the conventional name
            let renamed = CayleyTable::new(
                format!("Q8xC2^{n}"),
                (0..table.order() as u32)
                    .map(|i| table.element_name(i).to_string())
                    .collect(),
                raw_table(&table),
            )?;
            Ok(GroupContext::Cayley(Arc::new(renamed)))
        }
        GroupSpec::Product(a, b) => {
            let left = make_group(a)?;
            let right = make_group(b)?;
            let (GroupContext::Cayley(lt), GroupContext::Cayley(rt)) = (&left, &right) else {
                return Err(unsupported("products need finite table carriers".into()));
            };
            check_order(lt.order() * rt.order(), spec)?;
            Ok(GroupContext::Cayley(Arc::new(product_table(lt, rt)?)))
        }
    }
}

/// Convenience: parse and realize in one step.
pub fn group_from_spec(input: &str) -> Result<GroupContext> {
    make_group(&parse_group_spec(input)?)
}

fn check_order(order: usize, spec: &GroupSpec) -> Result<()> {
    if order == 0 || order > MAX_TABLE_ORDER {
        Err(Error::UnsupportedSpec {
            spec: spec.to_string(),
            reason: format!("table order {order} outside 1..={MAX_TABLE_ORDER}"),
        })
    } else {
        Ok(())
    }
}

fn raw_table(table: &CayleyTable) -> Vec<u32> {
    let n = table.order() as u32;
    let mut out = Vec::with_capacity((n * n) as usize);
    for a in 0..n {
        for b in 0..n {
            out.push(table.mul(a, b));
        }
    }
    out
}

fn power_name(base: &str, exp: usize) -> String {
    match exp {
        0 => "e".to_string(),
        1 => base.to_string(),
        k => format!("{base}{k}"),
    }
}

fn cyclic_table(n: usize) -> Result<CayleyTable> {
    let names = (0..n).map(|i| power_name("g", i)).collect();
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = ((a + b) % n) as u32;
        }
    }
    CayleyTable::new(format!("C{n}"), names, table)
}

/// Elements `r^i s^j` with index `j*n + i`; `s r s = r^-1`.
fn dihedral_table(order: usize) -> Result<CayleyTable> {
    let n = order / 2;
    let mut names = Vec::with_capacity(order);
    for j in 0..2 {
        for i in 0..n {
            let mut name = power_name("r", i);
            if j == 1 {
                if name == "e" {
                    name = "s".to_string();
                } else {
                    name.push('s');
                }
            }
            names.push(name);
        }
    }
    let idx = |i: usize, j: usize| j * n + i;
    let mut table = vec![0u32; order * order];
    for j1 in 0..2 {
        for i1 in 0..n {
            for j2 in 0..2 {
                for i2 in 0..n {
                    let i = if j1 == 0 {
                        (i1 + i2) % n
                    } else {
                        (i1 + n - i2) % n
                    };
                    table[idx(i1, j1) * order + idx(i2, j2)] = idx(i, j1 ^ j2) as u32;
                }
            }
        }
    }
    CayleyTable::new(format!("D{order}"), names, table)
}

/// All n! permutations in lexicographic image order, multiplied left to
/// right; names are cycle notation.
fn symmetric_table(n: usize) -> Result<CayleyTable> {
    let ctx = GroupContext::SymmetricPerm { degree: n };
    let elements = ctx.elements().expect("small degree");
    let perms: Vec<Permutation> = elements
        .iter()
        .map(|el| match el {
            crate::group::GroupElement::Perm(p) => p.clone(),
            _ => unreachable!(),
        })
        .collect();
    let index_of =
        |p: &Permutation| -> u32 { perms.iter().position(|q| q == p).expect("closed") as u32 };
    let order = perms.len();
    let mut table = vec![0u32; order * order];
    for (i, a) in perms.iter().enumerate() {
        for (j, b) in perms.iter().enumerate() {
            table[i * order + j] = index_of(&a.mul(b));
        }
    }
    let names = perms.iter().map(|p| p.to_string()).collect();
    CayleyTable::new(format!("S{n}"), names, table)
}

/// The unit quaternions 1, -1, i, -i, j, -j, k, -k.
fn quaternion_table() -> Result<CayleyTable> {
    const AXES: [usize; 8] = [0, 0, 1, 1, 2, 2, 3, 3]; // 1, i, j, k
    let sign_of = |idx: usize| if idx.is_multiple_of(2) { 1i32 } else { -1 };
    let encode = |sign: i32, axis: usize| (2 * axis + usize::from(sign < 0)) as u32;
    let axis_mul = |a: usize, b: usize| -> (i32, usize) {
        match (a, b) {
            (0, x) => (1, x),
            (x, 0) => (1, x),
            (x, y) if x == y => (-1, 0),
            (1, 2) => (1, 3),
            (2, 3) => (1, 1),
            (3, 1) => (1, 2),
            (2, 1) => (-1, 3),
            (3, 2) => (-1, 1),
            (1, 3) => (-1, 2),
            _ => unreachable!(),
        }
    };
    let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut table = vec![0u32; 64];
    for a in 0..8 {
        for b in 0..8 {
            let (sign, axis) = axis_mul(AXES[a], AXES[b]);
            table[a * 8 + b] = encode(sign * sign_of(a) * sign_of(b), axis);
        }
    }
    CayleyTable::new("Q8", names, table)
}

/// `<a, b | a^8 = b^2 = e, b a b = a^3>`, elements `a^i b^j` at `j*8 + i`.
fn quasidihedral_table() -> Result<CayleyTable> {
    two_generator_table("SD16", 8, 2, 3)
}

/// `<a, b | a^7 = b^3 = e, b^-1 a b = a^2>`, the smallest nonabelian group
/// of odd order; elements `a^i b^j` at `j*7 + i`.
fn frobenius_table() -> Result<CayleyTable> {
    two_generator_table("F21", 7, 3, 4)
}

/// Metacyclic table for `<a, b | a^m = b^r = e, b a = a^t b>` with elements
/// `a^i b^j` indexed `j*m + i`.
fn two_generator_table(name: &str, m: usize, r: usize, t: usize) -> Result<CayleyTable> {
    let order = m * r;
    let mut names = Vec::with_capacity(order);
    for j in 0..r {
        for i in 0..m {
            let mut n = power_name("a", i);
            let b = power_name("b", j);
            match (n.as_str(), b.as_str()) {
                ("e", "e") => {}
                ("e", _) => n = b,
                (_, "e") => {}
                _ => {
                    n.push_str(&b);
                }
            }
            names.push(n);
        }
    }
    // b^j a = a^(t^j) b^j
    let mut t_pow = vec![1usize; r];
    for j in 1..r {
        t_pow[j] = t_pow[j - 1] * t % m;
    }
    let idx = |i: usize, j: usize| j * m + i;
    let mut table = vec![0u32; order * order];
    for j1 in 0..r {
        for i1 in 0..m {
            for j2 in 0..r {
                for i2 in 0..m {
                    let i = (i1 + t_pow[j1] * i2) % m;
                    let j = (j1 + j2) % r;
                    table[idx(i1, j1) * order + idx(i2, j2)] = idx(i, j) as u32;
                }
            }
        }
    }
    CayleyTable::new(name, names, table)
}

fn product_table(left: &CayleyTable, right: &CayleyTable) -> Result<CayleyTable> {
    let (lo, ro) = (left.order(), right.order());
    let order = lo * ro;
    let mut names = Vec::with_capacity(order);
    for a in 0..lo as u32 {
        for b in 0..ro as u32 {
            names.push(format!(
                "{}|{}",
                left.element_name(a),
                right.element_name(b)
            ));
        }
    }
    let mut table = vec![0u32; order * order];
    for a1 in 0..lo as u32 {
        for b1 in 0..ro as u32 {
            for a2 in 0..lo as u32 {
                for b2 in 0..ro as u32 {
                    let u = (a1 as usize * ro + b1 as usize) * order;
                    let v = a2 as usize * ro + b2 as usize;
                    table[u + v] = left.mul(a1, a2) * ro as u32 + right.mul(b1, b2);
                }
            }
        }
    }
    CayleyTable::new(format!("{}x{}", left.name(), right.name()), names, table)
}

/// One row per catalog family for `catalog --list`.
pub fn catalog_entries() -> Vec<(&'static str, &'static str)> {
    vec![
        ("f:<m>", "free group of rank m (infinite)"),
        ("dinf", "infinite dihedral group"),
        ("perm:<n>", "symmetric group S_n as permutations"),
        ("c:<n>", "cyclic group of order n (table, n <= 64)"),
        ("d:<2n>", "dihedral group of order 2n (table)"),
        ("s:<n>", "symmetric group S_n (table for n <= 4)"),
        ("q8", "quaternion group of order 8"),
        ("sd16", "quasidihedral group of order 16"),
        ("f21", "Frobenius group of order 21 (no order-2 elements)"),
        ("ham:<n>", "Hamiltonian 2-group Q8 x C2^n (order <= 64)"),
        ("prod(<a>,<b>)", "direct product of two table carriers"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_strings_round_trip() {
        for text in [
            "f:3",
            "dinf",
            "perm:8",
            "c:12",
            "d:8",
            "s:4",
            "q8",
            "sd16",
            "f21",
            "ham:2",
            "prod(q8,c:2)",
        ] {
            let spec = parse_group_spec(text).unwrap();
            assert_eq!(spec.to_string(), text);
        }
        assert!(parse_group_spec("nope").is_err());
        assert!(parse_group_spec("c:x").is_err());
    }

    #[test]
    fn symmetric_three_is_nonabelian_of_order_six() {
        let g = group_from_spec("s:3").unwrap();
        assert_eq!(g.order(), Some(6));
        assert!(!g.is_abelian());
        assert!(g.has_order_two());
    }

    #[test]
    fn quasidihedral_has_order_sixteen_with_involutions() {
        let g = group_from_spec("sd16").unwrap();
        assert_eq!(g.order(), Some(16));
        assert!(g.has_order_two());
        assert!(!g.is_abelian());
        // b a b = a^3
        let a = g.parse_element("a").unwrap();
        let b = g.parse_element("b").unwrap();
        let bab = g.multiply(&g.multiply(&b, &a).unwrap(), &b).unwrap();
        assert_eq!(bab, g.parse_element("a3").unwrap());
    }

    #[test]
    fn frobenius_group_is_order2_free() {
        let g = group_from_spec("f21").unwrap();
        assert_eq!(g.order(), Some(21));
        assert!(!g.has_order_two());
        assert!(!g.is_abelian());
        // b^-1 a b = a^2
        let a = g.parse_element("a").unwrap();
        let b = g.parse_element("b").unwrap();
        let b_inv = g.inverse(&b).unwrap();
        let conj = g.multiply(&g.multiply(&b_inv, &a).unwrap(), &b).unwrap();
        assert_eq!(conj, g.parse_element("a2").unwrap());
    }

    #[test]
    fn cyclic_five_has_no_involutions() {
        let g = group_from_spec("c:5").unwrap();
        assert!(!g.has_order_two());
        assert!(g.is_abelian());
    }

    #[test]
    fn hamiltonian_products_realize_the_right_orders() {
        for (spec, order) in [("ham:0", 8), ("ham:1", 16), ("ham:2", 32)] {
            let g = group_from_spec(spec).unwrap();
            assert_eq!(g.order(), Some(order));
            assert!(g.has_order_two());
        }
        assert!(group_from_spec("ham:4").is_err());
    }

    #[test]
    fn product_spec_matches_hand_built_product() {
        let g = group_from_spec("prod(q8,c:2)").unwrap();
        assert_eq!(g.order(), Some(16));
        let i = g.parse_element("i|g").unwrap();
        let sq = g.multiply(&i, &i).unwrap();
        assert_eq!(sq, g.parse_element("-1|e").unwrap());
    }

    #[test]
    fn dihedral_relation_holds() {
        let g = group_from_spec("d:8").unwrap();
        let r = g.parse_element("r").unwrap();
        let s = g.parse_element("s").unwrap();
        let srs = g.multiply(&g.multiply(&s, &r).unwrap(), &s).unwrap();
        assert_eq!(srs, g.inverse(&r).unwrap());
    }

    #[test]
    fn quaternion_relations() {
        let g = group_from_spec("q8").unwrap();
        let i = g.parse_element("i").unwrap();
        let j = g.parse_element("j").unwrap();
        let k = g.parse_element("k").unwrap();
        assert_eq!(g.multiply(&i, &j).unwrap(), k);
        assert_eq!(g.multiply(&j, &i).unwrap(), g.parse_element("-k").unwrap());
        assert_eq!(g.multiply(&i, &i).unwrap(), g.parse_element("-1").unwrap());
    }

    #[test]
    fn oversized_orders_are_rejected() {
        assert!(group_from_spec("c:65").is_err());
        assert!(group_from_spec("prod(sd16,sd16)").is_err());
        assert!(group_from_spec("s:5").is_ok()); // permutation fallback
        assert!(matches!(
            group_from_spec("s:5").unwrap(),
            GroupContext::SymmetricPerm { degree: 5 }
        ));
    }
}
