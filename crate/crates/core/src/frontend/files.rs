//! Versioned text input formats.
//!
//! ```text
//! format poincare/1 problem
//! type (1,1,0)@2
//! degree 6
//! g1 = 2*y1*x2
//! g2 = x1*x2
//! # optional expectations
//! f1 = 0
//! G = x1*x2
//! ```
//!
//! `quadratics` files declare `n` and list `q1..qn`; `cochain` files declare a
//! type with `r = n` and list `alpha1..alphar`. Everything after `#` is a comment.

use std::collections::BTreeMap;

use super::{parse_poly, FrontendError, FORMAT_VERSION};
use crate::poly::Poly;
use crate::williamson::{WilliamsonError, WilliamsonType};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileKind {
    Problem,
    Quadratics,
    Cochain,
}

impl FileKind {
    fn name(self) -> &'static str {
        match self {
            FileKind::Problem => "problem",
            FileKind::Quadratics => "quadratics",
            FileKind::Cochain => "cochain",
        }
    }
}

struct Assignment {
    line: usize,
    column: usize,
    text: String,
}

struct RawFile {
    wtype: Option<WilliamsonType>,
    n: Option<usize>,
    degree: Option<u32>,
    assignments: BTreeMap<String, Assignment>,
}

fn validation(line: usize, message: impl std::fmt::Display) -> FrontendError {
    FrontendError::Validation(format!("line {line}: {message}"))
}

fn read_raw(text: &str, kind: FileKind) -> Result<RawFile, FrontendError> {
    let mut raw = RawFile {
        wtype: None,
        n: None,
        degree: None,
        assignments: BTreeMap::new(),
    };
    let mut header_seen = false;
    for (idx, full) in text.lines().enumerate() {
        let line = idx + 1;
        let content = full.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let parse_err = |message: String| FrontendError::Parse {
            line,
            column: full.len() - full.trim_start().len() + 1,
            message,
        };
        if !header_seen {
            let words: Vec<&str> = content.split_whitespace().collect();
            match words.as_slice() {
                ["format", v, k] if *v == FORMAT_VERSION && *k == kind.name() => {}
                ["format", v, k] if *v == FORMAT_VERSION => {
                    return Err(validation(line, format!("expected a {} file, found {k}", kind.name())));
                }
                ["format", v, ..] => return Err(validation(line, format!("unsupported format version {v}"))),
                _ => return Err(parse_err(format!("expected header 'format {FORMAT_VERSION} {}'", kind.name()))),
            }
            header_seen = true;
            continue;
        }
        if let Some((name, expr)) = content.split_once('=') {
            let name = name.trim().to_string();
            let column = content.find('=').expect("split on '='") + 2;
            if raw.assignments.contains_key(&name) {
                return Err(validation(line, format!("duplicate definition of {name}")));
            }
            raw.assignments.insert(
                name,
                Assignment {
                    line,
                    column,
                    text: expr.to_string(),
                },
            );
            continue;
        }
        let (key, value) = content
            .trim()
            .split_once(char::is_whitespace)
            .ok_or_else(|| parse_err(format!("expected a directive or an assignment: '{}'", content.trim())))?;
        let value = value.trim();
        match key {
            "type" => {
                let t: WilliamsonType = value.parse().map_err(|e| match e {
                    WilliamsonError::Parse(_) => parse_err(format!("{e}")),
                    e => validation(line, e),
                })?;
                raw.wtype = Some(t);
            }
            "n" => raw.n = Some(value.parse().map_err(|_| parse_err(format!("bad dimension '{value}'")))?),
            "degree" => raw.degree = Some(value.parse().map_err(|_| parse_err(format!("bad degree '{value}'")))?),
            other => return Err(parse_err(format!("unknown directive '{other}'"))),
        }
    }
    if !header_seen {
        return Err(FrontendError::Parse {
            line: 1,
            column: 1,
            message: "empty file".into(),
        });
    }
    Ok(raw)
}

impl RawFile {
    fn take(&mut self, name: &str, n: usize) -> Result<Option<Poly>, FrontendError> {
        let Some(a) = self.assignments.remove(name) else {
            return Ok(None);
        };
        parse_poly(&a.text, n).map(Some).map_err(|e| FrontendError::Parse {
            line: a.line,
            column: a.column + e.column - 1,
            message: e.message,
        })
    }

    fn require(&mut self, name: &str, n: usize) -> Result<Poly, FrontendError> {
        self.take(name, n)?
            .ok_or_else(|| FrontendError::Validation(format!("missing definition of {name}")))
    }

    fn no_leftovers(&self) -> Result<(), FrontendError> {
        match self.assignments.iter().next() {
            Some((name, a)) => Err(validation(a.line, format!("unexpected name {name}"))),
            None => Ok(()),
        }
    }

    fn wtype(&self) -> Result<WilliamsonType, FrontendError> {
        let t = self
            .wtype
            .ok_or_else(|| FrontendError::Validation("missing 'type' directive".into()))?;
        if let Some(n) = self.n {
            if n != t.n {
                return Err(FrontendError::Validation(format!("n = {n} disagrees with type {t}")));
            }
        }
        Ok(t)
    }
}

fn check_degree(degree: Option<u32>, polys: &[&Poly]) -> Result<(), FrontendError> {
    let Some(bound) = degree else { return Ok(()) };
    for p in polys {
        if p.total_degree().is_some_and(|d| d > bound) {
            return Err(FrontendError::Validation(format!(
                "expression of degree {} above the declared bound {bound}",
                p.total_degree().unwrap_or(0)
            )));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemFile {
    pub wtype: WilliamsonType,
    pub degree: Option<u32>,
    pub g: Vec<Poly>,
    pub expected_f: Vec<Option<Poly>>,
    pub expected_potential: Option<Poly>,
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self, FrontendError> {
        let mut raw = read_raw(text, FileKind::Problem)?;
        let wtype = raw.wtype()?;
        let (n, r) = (wtype.n, wtype.r());
        let g = (1..=r).map(|i| raw.require(&format!("g{i}"), n)).collect::<Result<Vec<_>, _>>()?;
        let expected_f = (1..=r).map(|i| raw.take(&format!("f{i}"), n)).collect::<Result<Vec<_>, _>>()?;
        let expected_potential = raw.take("G", n)?;
        raw.no_leftovers()?;
        check_degree(raw.degree, &g.iter().collect::<Vec<_>>())?;
        Ok(ProblemFile {
            wtype,
            degree: raw.degree,
            g,
            expected_f,
            expected_potential,
        })
    }

    pub fn render(&self) -> String {
        let mut out = format!("format {FORMAT_VERSION} problem\ntype {}\n", self.wtype);
        if let Some(d) = self.degree {
            out.push_str(&format!("degree {d}\n"));
        }
        for (i, g) in self.g.iter().enumerate() {
            out.push_str(&format!("g{} = {}\n", i + 1, g.render()));
        }
        for (i, f) in self.expected_f.iter().enumerate() {
            if let Some(f) = f {
                out.push_str(&format!("f{} = {}\n", i + 1, f.render()));
            }
        }
        if let Some(p) = &self.expected_potential {
            out.push_str(&format!("G = {}\n", p.render()));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticsFile {
    pub n: usize,
    pub q: Vec<Poly>,
}

impl QuadraticsFile {
    pub fn parse(text: &str) -> Result<Self, FrontendError> {
        let mut raw = read_raw(text, FileKind::Quadratics)?;
        let n = raw
            .n
            .ok_or_else(|| FrontendError::Validation("missing 'n' directive".into()))?;
        let q = (1..=n).map(|i| raw.require(&format!("q{i}"), n)).collect::<Result<Vec<_>, _>>()?;
        raw.no_leftovers()?;
        Ok(QuadraticsFile { n, q })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CochainFile {
    pub wtype: WilliamsonType,
    pub alpha: Vec<Poly>,
}

impl CochainFile {
    pub fn parse(text: &str) -> Result<Self, FrontendError> {
        let mut raw = read_raw(text, FileKind::Cochain)?;
        let wtype = raw.wtype()?;
        if wtype.r() != wtype.n {
            return Err(FrontendError::Validation(format!("cochain files need r = n, got type {wtype}")));
        }
        let alpha = (1..=wtype.r())
            .map(|i| raw.require(&format!("alpha{i}"), wtype.n))
            .collect::<Result<Vec<_>, _>>()?;
        raw.no_leftovers()?;
        check_degree(raw.degree, &alpha.iter().collect::<Vec<_>>())?;
        Ok(CochainFile { wtype, alpha })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MIXED: &str = "format poincare/1 problem\n\
        type (1,1,0)@2  # one elliptic, one hyperbolic\n\
        degree 4\n\
        g1 = 2*y1*x2\n\
        g2 = x1*x2\n\
        G = x1*x2\n";

    #[test]
    fn parses_problem() {
        let p = ProblemFile::parse(MIXED).unwrap();
        assert_eq!(p.wtype.to_string(), "(1,1,0)@2");
        assert_eq!(p.g[1].render(), "1*x1*x2");
        assert_eq!(p.expected_f, vec![None, None]);
        assert!(p.expected_potential.is_some());
        assert_eq!(ProblemFile::parse(&p.render()).unwrap(), p);
    }

    #[test]
    fn header_errors() {
        assert!(matches!(ProblemFile::parse(""), Err(FrontendError::Parse { .. })));
        assert!(matches!(
            ProblemFile::parse("format poincare/2 problem\n"),
            Err(FrontendError::Validation(_))
        ));
        assert!(matches!(
            ProblemFile::parse("format poincare/1 cochain\n"),
            Err(FrontendError::Validation(_))
        ));
    }

    #[test]
    fn expression_errors_are_positioned() {
        let text = "format poincare/1 problem\ntype (1,0,0)@1\ng1 = x1 + x2\n";
        match ProblemFile::parse(text).unwrap_err() {
            FrontendError::Parse { line, column, .. } => assert_eq!((line, column), (3, 11)),
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn validation_errors() {
        let missing = "format poincare/1 problem\ntype (1,1,0)@2\ng1 = 0\n";
        assert!(matches!(ProblemFile::parse(missing), Err(FrontendError::Validation(_))));
        let extra = "format poincare/1 problem\ntype (1,0,0)@1\ng1 = 0\ng2 = 0\n";
        assert!(matches!(ProblemFile::parse(extra), Err(FrontendError::Validation(_))));
        let degree = "format poincare/1 problem\ntype (1,0,0)@1\ndegree 1\ng1 = x1^2\n";
        assert!(matches!(ProblemFile::parse(degree), Err(FrontendError::Validation(_))));
        let dim = "format poincare/1 problem\ntype (1,0,0)@1\nn 2\ng1 = 0\n";
        assert!(matches!(ProblemFile::parse(dim), Err(FrontendError::Validation(_))));
    }

    #[test]
    fn quadratics_and_cochains() {
        let q = QuadraticsFile::parse("format poincare/1 quadratics\nn 1\nq1 = x1^2+y1^2\n").unwrap();
        assert_eq!(q.q.len(), 1);
        let c = CochainFile::parse("format poincare/1 cochain\ntype (1,0,0)@1\nalpha1 = x1\n").unwrap();
        assert_eq!(c.alpha[0], Poly::x(1, 1));
        assert!(CochainFile::parse("format poincare/1 cochain\ntype (1,0,0)@2\nalpha1 = x1\n").is_err());
    }
}
