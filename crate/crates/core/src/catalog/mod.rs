//! Named algebra families and the spec strings that select them.

mod exceptional;
mod extended;
mod matrix;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::exactla::{NumberField, Rational};
use crate::liealg::SuperLieAlgebra;
use crate::{Error, Result};

pub use exceptional::{d21, d21_raw, d21_triple, f13, g12};
pub use extended::{a_spq, co, csp, double, hat_q, DoubleKind};
pub use matrix::{gl, osp, p, pgl, pq, psl, psq, q, sl, sp, sq};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Gl,
    Sl,
    Psl,
    Pgl,
    Osp,
    Q,
    Sq,
    Pq,
    Psq,
    P,
    Sp,
    D21a,
    G12,
    F13,
    Kd,
    HatKd,
    TildeKd,
    HatQ,
    HatSp4,
    HatPsl22,
    Co,
    Csp,
    ASpq,
}

impl Family {
    fn arity(self) -> &'static [usize] {
        use Family::*;
        match self {
            Gl | Sl | Pgl => &[1, 2],
            Psl => &[1, 2],
            Osp | Co | Csp => &[2],
            Q | Sq | Pq | Psq | P | Sp | HatQ => &[1],
            Kd | HatKd | TildeKd => &[1],
            ASpq => &[3],
            D21a | G12 | F13 | HatSp4 | HatPsl22 => &[0],
        }
    }
}

/// A family together with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    #[serde(default)]
    pub params: Vec<usize>,
    /// `a = alpha / beta` for `D(2,1;a)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Rational>,
    /// Explicit `(alpha, beta, gamma)` for `D(2,1)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triple: Option<[Rational; 3]>,
}

impl FamilySpec {
    pub fn new(family: Family, params: &[usize]) -> FamilySpec {
        FamilySpec { family, params: params.to_vec(), a: None, triple: None }
    }

    pub fn d21(a: Rational) -> FamilySpec {
        FamilySpec { family: Family::D21a, params: vec![], a: Some(a), triple: None }
    }

    /// Checks parameter counts and ranges that do not need a construction.
    pub fn check(&self) -> Result<()> {
        use Family::*;
        if !self.family.arity().contains(&self.params.len()) {
            return Err(Error::InvalidSpec(format!("{}: wrong number of parameters", self)));
        }
        match self.family {
            D21a => match (&self.a, &self.triple) {
                (Some(_), None) => Ok(()),
                (None, Some(t)) => {
                    let s = &t[0] + &(&t[1] + &t[2]);
                    if s.is_zero() {
                        Ok(())
                    } else {
                        Err(Error::InvalidSpec(format!("D(2,1): alpha + beta + gamma = {s}, must be 0")))
                    }
                }
                _ => Err(Error::InvalidSpec("D(2,1) needs exactly one of a or (alpha, beta, gamma)".into())),
            },
            Osp if self.params[1] % 2 == 1 => {
                Err(Error::InvalidSpec(format!("osp({},{}): second parameter must be even", self.params[0], self.params[1])))
            }
            Csp if self.params[0] % 2 == 1 => Err(Error::InvalidSpec("csp(2m,n): first parameter must be even".into())),
            _ => Ok(()),
        }
    }

    /// Parses shorthand like `osp(3,2)`, `D(2,1;a=1)`, `kd(sl2)`, or the
    /// JSON form `{"family": "osp", "params": [3, 2]}`.
    pub fn parse(s: &str) -> Result<FamilySpec> {
        let t = s.trim();
        if t.starts_with('{') {
            let v: FamilySpec = serde_json::from_str(t).map_err(|e| Error::Parse(format!("family spec: {e}")))?;
            v.check()?;
            return Ok(v);
        }
        let spec = parse_short(t)?;
        spec.check()?;
        Ok(spec)
    }
}

fn parse_uints(args: &str) -> Result<Vec<usize>> {
    if args.trim().is_empty() {
        return Ok(vec![]);
    }
    args.split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad parameter {x:?}"))))
        .collect()
}

/// `sl2`, `sl(2)` or `sl_2` to `2`.
fn parse_sl_tag(tag: &str) -> Result<usize> {
    let t: String = tag.chars().filter(|c| !c.is_whitespace()).collect();
    let rest = t.strip_prefix("sl").ok_or_else(|| Error::Unsupported(format!("simple algebra {tag:?}; only sl(n) is available")))?;
    let digits = rest.trim_start_matches(['(', '_']).trim_end_matches(')');
    digits.parse::<usize>().map_err(|_| Error::Parse(format!("bad simple algebra tag {tag:?}")))
}

fn parse_short(t: &str) -> Result<FamilySpec> {
    use Family::*;
    let compact: String = t.chars().filter(|c| !c.is_whitespace()).collect();
    // k^d spellings
    if let Some(base) = compact.strip_suffix("^d") {
        let (fam, base) = if let Some(b) = base.strip_prefix("hat-") {
            (HatKd, b)
        } else if let Some(b) = base.strip_prefix("tilde-") {
            (TildeKd, b)
        } else {
            (Kd, base)
        };
        return Ok(FamilySpec::new(fam, &[parse_sl_tag(base)?]));
    }
    let (name, args) = match compact.find('(') {
        Some(i) => {
            let inner = compact[i + 1..].strip_suffix(')').ok_or_else(|| Error::Parse(format!("unbalanced parentheses in {t:?}")))?;
            (&compact[..i], inner)
        }
        None => (compact.as_str(), ""),
    };
    let fam = match name {
        "gl" => Gl,
        "sl" => Sl,
        "psl" => Psl,
        "pgl" => Pgl,
        "osp" => Osp,
        "q" => Q,
        "sq" => Sq,
        "pq" => Pq,
        "psq" => Psq,
        "p" => P,
        "sp" => Sp,
        "D" => D21a,
        "G" => G12,
        "F" => F13,
        "kd" => Kd,
        "hat-kd" => HatKd,
        "tilde-kd" => TildeKd,
        "hat-q" => HatQ,
        "hat-sp4" => HatSp4,
        "hat-sp" => HatSp4,
        "hat-psl22" => HatPsl22,
        "hat-psl" => HatPsl22,
        "co" => Co,
        "csp" => Csp,
        "a" => ASpq,
        _ => return Err(Error::Parse(format!("unknown family {name:?}"))),
    };
    match fam {
        D21a => {
            let (head, tail) = args.split_once(';').ok_or_else(|| Error::Parse("D(2,1;a) needs ';'".into()))?;
            if head != "2,1" {
                return Err(Error::Parse(format!("expected D(2,1;...), got {t:?}")));
            }
            let tail = tail.strip_prefix("a=").unwrap_or(tail);
            let parts: Vec<&str> = tail.split(',').collect();
            let rat = |x: &str| Rational::from_str(x).map_err(|_| Error::Parse(format!("bad rational {x:?}")));
            match parts.len() {
                1 => Ok(FamilySpec::d21(rat(parts[0])?)),
                3 => Ok(FamilySpec {
                    family: D21a,
                    params: vec![],
                    a: None,
                    triple: Some([rat(parts[0])?, rat(parts[1])?, rat(parts[2])?]),
                }),
                _ => Err(Error::Parse(format!("bad D(2,1) parameter {tail:?}"))),
            }
        }
        G12 | F13 => {
            let want = if fam == G12 { "1,2" } else { "1,3" };
            if args != want {
                return Err(Error::Parse(format!("expected {name}({want})")));
            }
            Ok(FamilySpec::new(fam, &[]))
        }
        Kd | HatKd | TildeKd => Ok(FamilySpec::new(fam, &[parse_sl_tag(args)?])),
        HatSp4 => match (name, args) {
            ("hat-sp4", "") | ("hat-sp", "4") => Ok(FamilySpec::new(fam, &[])),
            _ => Err(Error::Unsupported(format!("{t}: only hat-sp(4) is defined"))),
        },
        HatPsl22 => match (name, args) {
            ("hat-psl22", "") | ("hat-psl", "2,2") => Ok(FamilySpec::new(fam, &[])),
            _ => Err(Error::Unsupported(format!("{t}: only hat-psl(2,2) is defined"))),
        },
        _ => {
            let mut ps = parse_uints(args)?;
            if fam == Psl && ps.len() == 2 {
                if ps[0] != ps[1] {
                    return Err(Error::InvalidSpec(format!("psl(m,n) needs m = n, got {t:?}")));
                }
                ps.pop();
            }
            Ok(FamilySpec::new(fam, &ps))
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<FamilySpec> {
        FamilySpec::parse(s)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Family::*;
        let ps = self.params.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",");
        let name = match self.family {
            Gl => "gl",
            Sl => "sl",
            Psl => "psl",
            Pgl => "pgl",
            Osp => "osp",
            Q => "q",
            Sq => "sq",
            Pq => "pq",
            Psq => "psq",
            P => "p",
            Sp => "sp",
            Co => "co",
            Csp => "csp",
            ASpq => "a",
            HatQ => "hat-q",
            D21a => {
                return match (&self.a, &self.triple) {
                    (Some(a), _) => write!(f, "D(2,1;{a})"),
                    (None, Some(t)) => write!(f, "D(2,1;{},{},{})", t[0], t[1], t[2]),
                    _ => write!(f, "D(2,1;?)"),
                }
            }
            G12 => return write!(f, "G(1,2)"),
            F13 => return write!(f, "F(1,3)"),
            HatSp4 => return write!(f, "hat-sp(4)"),
            HatPsl22 => return write!(f, "hat-psl(2,2)"),
            Kd => return write!(f, "kd(sl{ps})"),
            HatKd => return write!(f, "hat-kd(sl{ps})"),
            TildeKd => return write!(f, "tilde-kd(sl{ps})"),
        };
        if self.family == Psl && self.params.len() == 1 {
            return write!(f, "psl({ps},{ps})");
        }
        write!(f, "{name}({ps})")
    }
}

/// Builds the algebra over the rationals.
pub fn construct(spec: &FamilySpec) -> Result<SuperLieAlgebra> {
    construct_over(spec, &NumberField::rationals())
}

/// Builds the algebra over the given field.
pub fn construct_over(spec: &FamilySpec, f: &Arc<NumberField>) -> Result<SuperLieAlgebra> {
    use Family::*;
    spec.check()?;
    let p = &spec.params;
    let two = |d: usize| if p.len() == 2 { (p[0], p[1]) } else { (p[0], d) };
    let g = match spec.family {
        Gl => {
            let (m, n) = two(0);
            gl(m, n, f)?
        }
        Sl => {
            let (m, n) = two(0);
            sl(m, n, f)?
        }
        Pgl => {
            let (m, n) = two(0);
            pgl(m, n, f)?
        }
        Psl => psl(p[0], f)?,
        Osp => osp(p[0], p[1], f)?,
        Q => q(p[0], f)?,
        Sq => sq(p[0], f)?,
        Pq => pq(p[0], f)?,
        Psq => psq(p[0], f)?,
        P => matrix::p(p[0], f)?,
        Sp => sp(p[0], f)?,
        D21a => match (&spec.a, &spec.triple) {
            (Some(a), _) => d21(a, f)?,
            (None, Some(t)) => d21_triple([&t[0], &t[1], &t[2]], f)?,
            _ => unreachable!("checked"),
        },
        G12 => g12(f)?,
        F13 => f13(f)?,
        Kd => double(p[0], DoubleKind::Plain, f)?,
        HatKd => double(p[0], DoubleKind::Hat, f)?,
        TildeKd => double(p[0], DoubleKind::Tilde, f)?,
        HatQ => hat_q(p[0], f)?,
        HatSp4 => crate::dercoh::universal_restricted_extension(&sp(4, f)?)?.with_name("hat-sp(4)"),
        HatPsl22 => crate::dercoh::universal_restricted_extension(&psl(2, f)?)?.with_name("hat-psl(2,2)"),
        Co => co(p[0], p[1], f)?,
        Csp => csp(p[0], p[1], f)?,
        ASpq => a_spq(p[0], p[1], p[2], f)?,
    };
    Ok(g.with_name(spec.to_string()))
}

/// Parses and builds in one step.
pub fn construct_str(s: &str, f: &Arc<NumberField>) -> Result<SuperLieAlgebra> {
    construct_over(&FamilySpec::parse(s)?, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        for s in [
            "gl(2,1)",
            "sl(2,2)",
            "psl(2,2)",
            "osp(3,2)",
            "q(3)",
            "p(3)",
            "sp(4)",
            "D(2,1;1)",
            "D(2,1;-3)",
            "D(2,1;1,1,-2)",
            "G(1,2)",
            "F(1,3)",
            "kd(sl2)",
            "hat-kd(sl2)",
            "tilde-kd(sl2)",
            "hat-q(2)",
            "hat-sp(4)",
            "hat-psl(2,2)",
            "co(3,2)",
            "csp(2,2)",
            "a(2,1,1)",
        ] {
            let spec = FamilySpec::parse(s).unwrap();
            assert_eq!(spec.to_string(), s);
            assert_eq!(FamilySpec::parse(&spec.to_string()).unwrap(), spec);
        }
        assert_eq!(FamilySpec::parse("D(2,1;a=1)").unwrap(), FamilySpec::d21(Rational::ONE));
        assert_eq!(FamilySpec::parse("sl(2)^d").unwrap(), FamilySpec::new(Family::Kd, &[2]));
        let j = FamilySpec::parse(r#"{"family": "osp", "params": [3, 2]}"#).unwrap();
        assert_eq!(j, FamilySpec::new(Family::Osp, &[3, 2]));
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(FamilySpec::parse("D(2,1;1,1,1)").is_err());
        assert!(FamilySpec::parse("osp(1,3)").is_err());
        assert!(FamilySpec::parse("q()").is_err());
        assert!(FamilySpec::parse("foo(1)").is_err());
        assert!(construct(&FamilySpec::new(Family::Q, &[0])).is_err());
    }
}
