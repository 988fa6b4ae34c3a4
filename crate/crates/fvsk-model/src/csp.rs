//! q-CSP instances and the `.csp` format.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{ModelError, Result};
use crate::text;

/// One constraint: an ordered tuple of variables (0-based) and its allowed
/// value tuples (values `1..=B`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub vars: Vec<usize>,
    pub tuples: Vec<Vec<u32>>,
}

impl Constraint {
    pub fn allows(&self, assignment: &[u32]) -> bool {
        self.tuples.iter().any(|t| t.iter().zip(&self.vars).all(|(&val, &x)| assignment[x] == val))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CspInstance {
    pub n: usize,
    pub q: usize,
    pub b: u32,
    pub constraints: Vec<Constraint>,
}

impl CspInstance {
    pub fn m(&self) -> usize {
        self.constraints.len()
    }

    pub fn satisfied_by(&self, assignment: &[u32]) -> bool {
        assignment.len() == self.n && self.constraints.iter().all(|c| c.allows(assignment))
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(ModelError::InvalidGraph(format!("csp: {m}")));
        if self.b == 0 {
            return bad("empty alphabet".into());
        }
        for (ci, c) in self.constraints.iter().enumerate() {
            if c.vars.len() != self.q {
                return bad(format!("constraint {} has arity {}", ci + 1, c.vars.len()));
            }
            if let Some(&x) = c.vars.iter().find(|&&x| x >= self.n) {
                return bad(format!("constraint {} uses variable {}", ci + 1, x + 1));
            }
            let mut seen = HashSet::new();
            for t in &c.tuples {
                if t.len() != self.q || t.iter().any(|&v| v == 0 || v > self.b) {
                    return bad(format!("constraint {} has a malformed tuple", ci + 1));
                }
                if !seen.insert(t) {
                    return bad(format!("constraint {} repeats a tuple", ci + 1));
                }
            }
        }
        Ok(())
    }
}

pub fn parse_csp(input: &str) -> Result<CspInstance> {
    let mut lines = text::lines(input);
    let header = lines.next().ok_or_else(|| ModelError::parse(0, "empty input"))?;
    header.expect_len(6)?;
    if header.toks[0] != "p" || header.toks[1] != "csp" {
        return Err(header.err("expected header 'p csp <n> <m> <q> <B>'"));
    }
    let n = header.int(2)?;
    let m = header.int(3)?;
    let q = header.int(4)?;
    let b = header.int(5)?;
    if b == 0 {
        return Err(header.err("alphabet size must be positive"));
    }
    let mut constraints = Vec::new();
    for _ in 0..m {
        let d = lines.next().ok_or_else(|| ModelError::parse(0, "missing constraint"))?;
        if d.toks[0] != "d" {
            return Err(d.err("expected 'd <variables>'"));
        }
        d.expect_len(q + 1)?;
        let mut vars = Vec::with_capacity(q);
        for i in 1..=q {
            let x = d.int(i)?;
            if x == 0 || x > n {
                return Err(d.err(format!("variable {x} outside 1..{n}")));
            }
            vars.push(x - 1);
        }
        let a = lines.next().ok_or_else(|| ModelError::parse(0, "missing 'a' line"))?;
        if a.toks[0] != "a" {
            return Err(a.err("expected 'a <count>'"));
        }
        a.expect_len(2)?;
        let t = a.int(1)?;
        let mut tuples = Vec::with_capacity(t.min(1024));
        let mut seen = HashSet::new();
        for _ in 0..t {
            let tl = lines.next().ok_or_else(|| ModelError::parse(0, "missing tuple line"))?;
            if tl.toks[0] != "t" {
                return Err(tl.err("expected 't <values>'"));
            }
            tl.expect_len(q + 1)?;
            let mut tuple = Vec::with_capacity(q);
            for i in 1..=q {
                let v = tl.int(i)?;
                if v == 0 || v > b {
                    return Err(tl.err(format!("value {v} outside 1..{b}")));
                }
                tuple.push(v as u32);
            }
            if !seen.insert(tuple.clone()) {
                return Err(tl.err("duplicate tuple"));
            }
            tuples.push(tuple);
        }
        constraints.push(Constraint { vars, tuples });
    }
    if let Some(extra) = lines.next() {
        return Err(extra.err("trailing content"));
    }
    Ok(CspInstance { n, q, b: b as u32, constraints })
}

pub fn write_csp(csp: &CspInstance) -> String {
    let mut out = format!("p csp {} {} {} {}\n", csp.n, csp.m(), csp.q, csp.b);
    for c in &csp.constraints {
        out.push('d');
        for x in &c.vars {
            let _ = write!(out, " {}", x + 1);
        }
        let _ = writeln!(out, "\na {}", c.tuples.len());
        for t in &c.tuples {
            out.push('t');
            for v in t {
                let _ = write!(out, " {v}");
            }
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "p csp 2 1 2 6\nd 1 2\na 2\nt 3 5\nt 1 1\n";

    #[test]
    fn roundtrip() {
        let csp = parse_csp(SAMPLE).unwrap();
        csp.validate().unwrap();
        assert_eq!(csp.constraints[0].vars, vec![0, 1]);
        assert_eq!(write_csp(&csp), SAMPLE);
        assert!(csp.satisfied_by(&[3, 5]));
        assert!(!csp.satisfied_by(&[5, 3]));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_csp("p csp 2 1 2 6\nd 1 2\na 1\nt 3 7\n").is_err());
        assert!(parse_csp("p csp 2 1 2 6\nd 1 3\na 0\n").is_err());
        assert!(parse_csp("p csp 2 1 2 6\nd 1 2\na 2\nt 3 5\n").is_err());
        assert!(parse_csp("p csp 2 1 2 6\nd 1 2\na 2\nt 3 5\nt 3 5\n").is_err());
        assert!(parse_csp("p csp 2 1 2 6\nd 1 2\na 0\nt 1 1\n").is_err());
        let e = parse_csp("p csp 1 1 1 6\nd 1\na 1\nt 9\n").unwrap_err();
        assert!(e.to_string().starts_with("line 4"), "{e}");
    }
}
