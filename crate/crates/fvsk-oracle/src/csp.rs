use fvsk_model::CspInstance;

use crate::{OracleError, Result};

pub const MAX_CSP_SPACE: u64 = 10_000_000;

fn space(csp: &CspInstance) -> Result<u64> {
    let mut s: u64 = 1;
    for _ in 0..csp.n {
        s = s.saturating_mul(csp.b as u64);
    }
    if s > MAX_CSP_SPACE {
        return Err(OracleError::TooLarge { what: "assignment space", size: s, cap: MAX_CSP_SPACE });
    }
    Ok(s)
}

/// Visits assignments in lexicographic order (variable 1 most significant)
/// and stops when `f` returns false.
fn each_assignment(csp: &CspInstance, mut f: impl FnMut(&[u32]) -> bool) -> Result<()> {
    let total = space(csp)?;
    let mut a = vec![1u32; csp.n];
    for _ in 0..total {
        if !f(&a) {
            break;
        }
        for x in (0..csp.n).rev() {
            if a[x] < csp.b {
                a[x] += 1;
                break;
            }
            a[x] = 1;
        }
    }
    Ok(())
}

/// First satisfying assignment in lexicographic order.
pub fn brute_csp_sat(csp: &CspInstance) -> Result<Option<Vec<u32>>> {
    let mut found = None;
    each_assignment(csp, |a| {
        if csp.satisfied_by(a) {
            found = Some(a.to_vec());
            false
        } else {
            true
        }
    })?;
    Ok(found)
}

pub fn all_satisfying(csp: &CspInstance) -> Result<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    each_assignment(csp, |a| {
        if csp.satisfied_by(a) {
            out.push(a.to_vec());
        }
        true
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use fvsk_model::Constraint;

    fn one(n: usize, vars: Vec<usize>, tuples: Vec<Vec<u32>>) -> CspInstance {
        CspInstance { n, q: vars.len(), b: 6, constraints: vec![Constraint { vars, tuples }] }
    }

    #[test]
    fn forced_and_empty() {
        let all: Vec<Vec<u32>> = (1..=6).map(|v| vec![v]).collect();
        assert_eq!(brute_csp_sat(&one(1, vec![0], all)).unwrap(), Some(vec![1]));
        assert_eq!(brute_csp_sat(&one(1, vec![0], vec![])).unwrap(), None);
        assert_eq!(brute_csp_sat(&one(2, vec![0, 1], vec![vec![3, 5]])).unwrap(), Some(vec![3, 5]));
        assert_eq!(all_satisfying(&one(2, vec![1], vec![vec![2]])).unwrap().len(), 6);
    }

    #[test]
    fn cap() {
        let csp = CspInstance { n: 10, q: 1, b: 18, constraints: vec![] };
        assert!(brute_csp_sat(&csp).is_err());
    }
}
