//! Text descriptors for groups, products, wreath products and metric groups.
//!
//! ```text
//! group   := cyclic:N | sym:N | dihedral:N | klein4 | trivial | table:PATH
//! product := product(<group>,<group>,<wordset>[,engine=auto|direct|class2|metab|generic])
//! wreath  := wreath(<group>,<group>,<wordset>)
//! metric  := sym:N | gl:N:P | unitary:N | wreathmetric(<metric>,B)
//! ```

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::metric::{fp::GlRank, SymHamming, UnitaryHs};
use crate::product::EngineChoice;
use crate::words::WordSet;
use serde::Deserialize;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupDesc {
    Cyclic(usize),
    Sym(usize),
    Dihedral(usize),
    Klein4,
    Trivial,
    Table(String),
}

fn parse_count(kind: &str, arg: &str) -> Result<usize> {
    let n: usize = arg
        .parse()
        .map_err(|_| Error::Parse(format!("{}:{} needs a positive integer", kind, arg)))?;
    if n == 0 {
        return Err(Error::Parse(format!("{}:0 is not allowed", kind)));
    }
    Ok(n)
}

impl FromStr for GroupDesc {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "klein4" => return Ok(GroupDesc::Klein4),
            "trivial" => return Ok(GroupDesc::Trivial),
            _ => {}
        }
        let (kind, arg) = s.split_once(':').ok_or_else(|| Error::Parse(format!("unknown group descriptor '{}'", s)))?;
        match kind {
            "cyclic" => Ok(GroupDesc::Cyclic(parse_count(kind, arg)?)),
            "sym" => Ok(GroupDesc::Sym(parse_count(kind, arg)?)),
            "dihedral" => Ok(GroupDesc::Dihedral(parse_count(kind, arg)?)),
            "table" if !arg.is_empty() => Ok(GroupDesc::Table(arg.to_string())),
            _ => Err(Error::Parse(format!("unknown group descriptor '{}'", s))),
        }
    }
}

impl fmt::Display for GroupDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDesc::Cyclic(n) => write!(f, "cyclic:{}", n),
            GroupDesc::Sym(n) => write!(f, "sym:{}", n),
            GroupDesc::Dihedral(n) => write!(f, "dihedral:{}", n),
            GroupDesc::Klein4 => f.write_str("klein4"),
            GroupDesc::Trivial => f.write_str("trivial"),
            GroupDesc::Table(p) => write!(f, "table:{}", p),
        }
    }
}

impl GroupDesc {
    pub fn build(&self, cap: usize) -> Result<FiniteGroup> {
        let g = match self {
            GroupDesc::Cyclic(n) => {
                if *n > cap {
                    return Err(Error::SizeCapExceeded { size: *n as u128, cap: cap as u128 });
                }
                FiniteGroup::cyclic(*n)?
            }
            GroupDesc::Sym(n) => FiniteGroup::symmetric(*n, cap)?,
            GroupDesc::Dihedral(n) => FiniteGroup::dihedral(*n, cap)?,
            GroupDesc::Klein4 => FiniteGroup::klein4(),
            GroupDesc::Trivial => FiniteGroup::trivial(),
            GroupDesc::Table(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {}", path, e)))?;
                parse_table_json(&text, cap)?
            }
        };
        Ok(g)
    }
}

#[derive(Deserialize)]
struct TableFile {
    n: usize,
    table: Vec<Vec<usize>>,
}

/// `{"n": int, "table": [[int]]}` with the identity at index 0.
pub fn parse_table_json(text: &str, cap: usize) -> Result<FiniteGroup> {
    let t: TableFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("table JSON: {}", e)))?;
    if t.n != t.table.len() {
        return Err(Error::MalformedTable(format!("n = {} but the table has {} rows", t.n, t.table.len())));
    }
    FiniteGroup::from_table(&t.table, cap)
}

/// Splits on commas that are not nested inside parentheses.
fn split_top(s: &str) -> Result<Vec<&str>> {
    let mut depth = 0i32;
    let mut start = 0;
    let mut out = Vec::new();
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse(format!("unbalanced ')' in '{}'", s)));
                }
            }
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced '(' in '{}'", s)));
    }
    out.push(s[start..].trim());
    Ok(out)
}

fn call<'a>(s: &'a str, head: &str) -> Result<Vec<&'a str>> {
    let s = s.trim();
    let inner = s
        .strip_prefix(head)
        .and_then(|r| r.strip_prefix('('))
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("expected {}(...), got '{}'", head, s)))?;
    split_top(inner)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductDesc {
    pub a: GroupDesc,
    pub b: GroupDesc,
    pub words: WordSet,
    pub engine: EngineChoice,
}

impl FromStr for ProductDesc {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let args = call(s, "product")?;
        if args.len() != 3 && args.len() != 4 {
            return Err(Error::Parse(format!("product(...) takes 3 or 4 arguments, got {}", args.len())));
        }
        let engine = match args.get(3) {
            Some(e) => e
                .strip_prefix("engine=")
                .ok_or_else(|| Error::Parse(format!("expected engine=..., got '{}'", e)))?
                .parse()?,
            None => EngineChoice::Auto,
        };
        Ok(ProductDesc { a: args[0].parse()?, b: args[1].parse()?, words: args[2].parse()?, engine })
    }
}

impl fmt::Display for ProductDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "product({},{},{}", self.a, self.b, self.words)?;
        if self.engine != EngineChoice::Auto {
            write!(f, ",engine={}", self.engine)?;
        }
        f.write_str(")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WreathDesc {
    pub g: GroupDesc,
    pub h: GroupDesc,
    pub words: WordSet,
}

impl FromStr for WreathDesc {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let args = call(s, "wreath")?;
        if args.len() != 3 {
            return Err(Error::Parse(format!("wreath(...) takes 3 arguments, got {}", args.len())));
        }
        Ok(WreathDesc { g: args[0].parse()?, h: args[1].parse()?, words: args[2].parse()? })
    }
}

impl fmt::Display for WreathDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "wreath({},{},{})", self.g, self.h, self.words)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MetricDesc {
    Sym(usize),
    Gl(usize, u32),
    Unitary(usize),
    WreathMetric(Box<MetricDesc>, usize),
}

impl FromStr for MetricDesc {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with("wreathmetric") {
            let args = call(s, "wreathmetric")?;
            if args.len() != 2 {
                return Err(Error::Parse("wreathmetric(<metric>,B) takes 2 arguments".into()));
            }
            return Ok(MetricDesc::WreathMetric(Box::new(args[0].parse()?), parse_count("wreathmetric", args[1])?));
        }
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["sym", n] => Ok(MetricDesc::Sym(parse_count("sym", n)?)),
            ["unitary", n] => Ok(MetricDesc::Unitary(parse_count("unitary", n)?)),
            ["gl", n, p] => {
                let p: u32 = p.parse().map_err(|_| Error::Parse(format!("bad prime in '{}'", s)))?;
                GlRank::new(1, p).map_err(|e| Error::Parse(e.to_string()))?;
                Ok(MetricDesc::Gl(parse_count("gl", n)?, p))
            }
            _ => Err(Error::Parse(format!("unknown metric descriptor '{}'", s))),
        }
    }
}

impl fmt::Display for MetricDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricDesc::Sym(n) => write!(f, "sym:{}", n),
            MetricDesc::Gl(n, p) => write!(f, "gl:{}:{}", n, p),
            MetricDesc::Unitary(n) => write!(f, "unitary:{}", n),
            MetricDesc::WreathMetric(m, b) => write!(f, "wreathmetric({},{})", m, b),
        }
    }
}

impl MetricDesc {
    /// The diameter of the carrier, used to validate wreath metrics.
    pub fn diameter(&self) -> f64 {
        match self {
            MetricDesc::Sym(n) | MetricDesc::Gl(n, _) => {
                if *n > 1 || matches!(self, MetricDesc::Gl(..)) {
                    1.0
                } else {
                    0.0
                }
            }
            MetricDesc::Unitary(_) => 2.0,
            MetricDesc::WreathMetric(..) => 1.0,
        }
    }

    /// Checks that every nested wreath metric has an inner diameter of at most 1.
    pub fn validate(&self) -> Result<()> {
        if let MetricDesc::WreathMetric(inner, _) = self {
            inner.validate()?;
            if inner.diameter() > 1.0 {
                return Err(Error::DiameterViolation);
            }
        }
        Ok(())
    }

    pub fn sym(&self) -> Option<SymHamming> {
        match self {
            MetricDesc::Sym(n) => Some(SymHamming { n: *n }),
            _ => None,
        }
    }

    pub fn unitary(&self) -> Option<UnitaryHs> {
        match self {
            MetricDesc::Unitary(n) => Some(UnitaryHs { n: *n }),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for s in [
            "cyclic:4",
            "sym:3",
            "dihedral:5",
            "klein4",
            "trivial",
            "table:groups/q8.json",
        ] {
            assert_eq!(s.parse::<GroupDesc>().unwrap().to_string(), s);
        }
        for s in [
            "product(cyclic:2,cyclic:2,nil:2)",
            "product(sym:3,klein4,sol:2,engine=generic)",
            "product(cyclic:2,cyclic:3,words:x1^2;x1 x2 x1^-1 x2^-1)",
        ] {
            assert_eq!(s.parse::<ProductDesc>().unwrap().to_string(), s);
        }
        assert_eq!("wreath(cyclic:2,cyclic:3,nil:2)".parse::<WreathDesc>().unwrap().to_string(), "wreath(cyclic:2,cyclic:3,nil:2)");
        for s in ["sym:5", "gl:3:7", "unitary:4", "wreathmetric(sym:3,4)", "wreathmetric(wreathmetric(gl:2:2,3),2)"] {
            let m: MetricDesc = s.parse().unwrap();
            assert_eq!(m.to_string(), s);
            m.validate().unwrap();
        }
        assert_eq!("wreathmetric(unitary:2,3)".parse::<MetricDesc>().unwrap().validate(), Err(Error::DiameterViolation));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["cyclic:0", "cyclic:x", "sym", "table:", "foo:3"] {
            assert!(s.parse::<GroupDesc>().is_err(), "{}", s);
        }
        for s in ["product(cyclic:2,cyclic:2)", "product(cyclic:2,cyclic:2,nil:2", "product(cyclic:2,cyclic:2,nil:2,fast)"] {
            assert!(s.parse::<ProductDesc>().is_err(), "{}", s);
        }
        assert!("gl:3:4".parse::<MetricDesc>().is_err());
    }

    #[test]
    fn table_json() {
        let g = parse_table_json(r#"{"n":2,"table":[[0,1],[1,0]]}"#, 10).unwrap();
        assert_eq!(g.order(), 2);
        assert!(matches!(parse_table_json(r#"{"n":2,"table":[[0,1],[0,1]]}"#, 10), Err(Error::MalformedTable(_))));
        assert!(parse_table_json(r#"{"n":3,"table":[[0]]}"#, 10).is_err());
        assert!(parse_table_json("nope", 10).is_err());
    }
}
