//! Finite groups given by Cayley tables.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite group with elements `0..order`; `mul(a, b)` is `a·b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    name: String,
    names: Vec<String>,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a Cayley table (`table[a][b] = a·b`) against the group axioms.
    pub fn from_table(name: impl Into<String>, names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let m = names.len();
        if m == 0 {
            return Err(Error::InvalidGroup("group must be nonempty".into()));
        }
        let mut seen = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if seen.insert(n.clone(), i).is_some() {
                return Err(Error::InvalidGroup(format!("duplicate element name {n:?}")));
            }
        }
        if table.len() != m || table.iter().any(|r| r.len() != m) {
            return Err(Error::InvalidGroup(format!("Cayley table must be {m}x{m}")));
        }
        if table.iter().flatten().any(|&v| v >= m) {
            return Err(Error::InvalidGroup("closure: table entry out of range".into()));
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let mul = |a: usize, b: usize| flat[a * m + b];
        let identity = (0..m)
            .find(|&e| (0..m).all(|a| mul(e, a) == a && mul(a, e) == a))
            .ok_or_else(|| Error::InvalidGroup("identity: no two-sided identity".into()))?;
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails for ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        let inverses = (0..m)
            .map(|a| {
                (0..m)
                    .find(|&b| mul(a, b) == identity && mul(b, a) == identity)
                    .ok_or_else(|| Error::InvalidGroup(format!("inverse: {} has none", names[a])))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteGroup { name: name.into(), names, table: flat, identity, inverses })
    }

    /// Cyclic group of order `n` with elements `1, h, h^2, …`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("C0 is not a group".into()));
        }
        let names = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "h".to_string(),
                _ => format!("h^{k}"),
            })
            .collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(format!("C{n}"), names, table)
    }

    /// Symmetric group on `{1..n}` for `n ≤ 4`, elements in cycle notation,
    /// ordered by one-line notation; `(a·b)(i) = a(b(i))`.
    pub fn symmetric(n: usize) -> Result<Self> {
        if !(1..=4).contains(&n) {
            return Err(Error::InvalidGroup(format!("S{n} unsupported (need 1 ≤ n ≤ 4)")));
        }
        let perms = permutations(n);
        let index: HashMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let table = perms
            .iter()
            .map(|a| perms.iter().map(|b| index[&b.iter().map(|&i| a[i]).collect::<Vec<_>>()]).collect())
            .collect();
        let names = perms.iter().map(|p| cycle_notation(p)).collect();
        Self::from_table(format!("S{n}"), names, table)
    }

    /// Direct product; elements are named `(a,b)`.
    pub fn product(a: &FiniteGroup, b: &FiniteGroup) -> Result<Self> {
        let (ma, mb) = (a.order(), b.order());
        let mut names = Vec::with_capacity(ma * mb);
        for x in 0..ma {
            for y in 0..mb {
                names.push(format!("({},{})", a.names[x], b.names[y]));
            }
        }
        let table = (0..ma * mb)
            .map(|u| (0..ma * mb).map(|v| a.mul(u / mb, v / mb) * mb + b.mul(u % mb, v % mb)).collect())
            .collect();
        Self::from_table(format!("{}x{}", a.name, b.name), names, table)
    }

    /// Parses `C<n>`, `S<n>`, `AxB` products, or a JSON Cayley table.
    pub fn from_spec(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec.starts_with('{') {
            let file: GroupFile =
                serde_json::from_str(spec).map_err(|e| Error::InvalidGroup(format!("bad JSON table: {e}")))?;
            return file.into_group();
        }
        if spec.contains('x') {
            let mut parts = spec.split('x');
            let first = Self::from_spec(parts.next().unwrap_or(""))?;
            return parts.try_fold(first, |acc, p| Self::product(&acc, &Self::from_spec(p)?));
        }
        let n = |s: &str| s.parse::<usize>().map_err(|_| Error::InvalidGroup(format!("bad group spec {spec:?}")));
        if let Some(rest) = spec.strip_prefix('C') {
            Self::cyclic(n(rest)?)
        } else if let Some(rest) = spec.strip_prefix('S') {
            Self::symmetric(n(rest)?)
        } else {
            Err(Error::InvalidGroup(format!("bad group spec {spec:?}")))
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `a⁻¹·b`
    pub fn left_div(&self, a: usize, b: usize) -> usize {
        self.mul(self.inv(a), b)
    }

    pub fn element_name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element(&self, name: &str) -> Result<usize> {
        let name = name.trim();
        self.names
            .iter()
            .position(|n| n == name)
            .or_else(|| match name {
                // common aliases for the identity and cyclic powers
                "e" | "id" => Some(self.identity),
                "h^0" if self.names.iter().any(|n| n == "h") => Some(self.identity),
                "h^1" => self.names.iter().position(|n| n == "h"),
                _ => None,
            })
            .ok_or_else(|| Error::UnknownGroupElement(name.to_string()))
    }

    pub fn is_abelian(&self) -> bool {
        let m = self.order();
        (0..m).all(|a| (0..m).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(n, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            out.push_str(&(x + 1).to_string());
            x = p[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        "1".to_string()
    } else {
        out
    }
}

/// JSON Cayley table; entries may be element indices or element names.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupFile {
    #[serde(default)]
    pub name: Option<String>,
    pub elements: Vec<String>,
    pub table: Vec<Vec<TableEntry>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TableEntry {
    Index(usize),
    Name(String),
}

impl GroupFile {
    pub fn into_group(self) -> Result<FiniteGroup> {
        let lookup = |t: &TableEntry| match t {
            TableEntry::Index(i) => Ok(*i),
            TableEntry::Name(n) => self
                .elements
                .iter()
                .position(|e| e == n)
                .ok_or_else(|| Error::InvalidGroup(format!("closure: unknown element {n:?} in table"))),
        };
        let table = self
            .table
            .iter()
            .map(|row| row.iter().map(lookup).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let name = self.name.clone().unwrap_or_else(|| "G".into());
        FiniteGroup::from_table(name, self.elements.clone(), table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_three() {
        let g = FiniteGroup::from_spec("C3").unwrap();
        assert_eq!(g.names(), &["1", "h", "h^2"]);
        let h = g.element("h").unwrap();
        assert_eq!(g.mul(h, h), g.element("h^2").unwrap());
        assert_eq!(g.inv(h), g.element("h^2").unwrap());
        assert_eq!(g.mul(g.mul(h, h), h), g.identity());
    }

    #[test]
    fn trivial_group() {
        let g = FiniteGroup::from_spec("C1").unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.element("1").unwrap(), g.identity());
    }

    #[test]
    fn klein_four() {
        let g = FiniteGroup::from_spec("C2xC2").unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.is_abelian());
        for a in 0..4 {
            assert_eq!(g.mul(a, a), g.identity());
        }
        assert_eq!(g.element("(h,1)").unwrap(), 2);
    }

    #[test]
    fn symmetric_three_is_nonabelian() {
        let g = FiniteGroup::from_spec("S3").unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.identity(), 0);
        assert!(!g.is_abelian());
        let a = g.element("(12)").unwrap();
        let b = g.element("(23)").unwrap();
        // (23) acts first: 1→2, 2→3, 3→1
        assert_eq!(g.element_name(g.mul(a, b)), "(123)");
        assert_eq!(g.element_name(g.mul(b, a)), "(132)");
        assert_eq!(FiniteGroup::from_spec("S4").unwrap().order(), 24);
    }

    #[test]
    fn bad_specs() {
        assert!(FiniteGroup::from_spec("S5").is_err());
        assert!(FiniteGroup::from_spec("Q8").is_err());
        assert!(FiniteGroup::from_spec("C0").is_err());
        // not associative: a "group" where every product is the identity except 1·x
        let err =
            FiniteGroup::from_spec(r#"{"elements":["e","a","b"],"table":[[0,1,2],[1,0,0],[2,0,0]]}"#).unwrap_err();
        assert!(matches!(err, Error::InvalidGroup(ref m) if m.contains("associativity")), "{err}");
        let err = FiniteGroup::from_spec(r#"{"elements":["e","a"],"table":[[0,1],[1,1]]}"#).unwrap_err();
        assert!(matches!(err, Error::InvalidGroup(_)));
    }

    #[test]
    fn json_table_by_name() {
        let g = FiniteGroup::from_spec(r#"{"elements":["e","a"],"table":[["e","a"],["a","e"]]}"#).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.inv(1), 1);
    }
}
