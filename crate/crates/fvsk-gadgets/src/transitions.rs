//! The transition mappings of path gadgets.

/// Simple states of one FVS cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Simple {
    Empty,
    Disc,
    Conn,
}

/// Simple states of one CFVS structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Z {
    D,
    C,
    S,
    R,
}

impl Z {
    /// Boundary vertex `v` is in the solution.
    pub fn takes_v(self) -> bool {
        matches!(self, Z::S | Z::R)
    }

    /// `u` is in the solution.
    pub fn takes_u(self) -> bool {
        matches!(self, Z::R | Z::D)
    }
}

/// `t(o)` for `o = 1..=6`, entry cycles first.
pub const T: [[Simple; 4]; 6] = {
    use Simple::*;
    [
        [Empty, Empty, Conn, Conn],
        [Disc, Empty, Conn, Disc],
        [Disc, Disc, Conn, Empty],
        [Conn, Empty, Disc, Disc],
        [Conn, Disc, Disc, Empty],
        [Conn, Conn, Empty, Empty],
    ]
};

/// The published triples `t_1..t_18`. Rows 14 and 15 coincide.
pub const PUBLISHED: [[Z; 3]; 18] = {
    use Z::*;
    [
        [R, R, R],
        [R, S, S],
        [S, S, S],
        [D, R, R],
        [D, R, S],
        [D, S, S],
        [C, R, R],
        [C, R, S],
        [C, S, S],
        [D, D, R],
        [D, D, S],
        [D, D, D],
        [C, D, R],
        [C, D, D],
        [C, D, D],
        [C, C, R],
        [C, C, S],
        [C, C, C],
    ]
};

/// Which list of triples to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Triples {
    /// Row 14 set to `(C,D,S)`, following rows 10..12 and 16..18.
    #[default]
    Corrected,
    Published,
}

impl Triples {
    pub fn table(self) -> [[Z; 3]; 18] {
        let mut t = PUBLISHED;
        if self == Triples::Corrected {
            t[13] = [Z::C, Z::D, Z::S];
        }
        t
    }

    /// `t_C(i) = (t_i, t_{19-i})` for `i = 1..=18`.
    pub fn tc(self, i: usize) -> [Z; 6] {
        let t = self.table();
        let (a, b) = (t[i - 1], t[18 - i]);
        [a[0], a[1], a[2], b[0], b[1], b[2]]
    }

    /// Pairs of equal rows; empty for a list of distinct triples.
    pub fn duplicates(self) -> Vec<(usize, usize)> {
        let t = self.table();
        let mut out = Vec::new();
        for i in 0..18 {
            for j in i + 1..18 {
                if t[i] == t[j] {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tc_one() {
        use Z::*;
        assert_eq!(Triples::Published.tc(1), [R, R, R, C, C, C]);
        assert_eq!(Triples::Corrected.tc(18), [C, C, C, R, R, R]);
    }

    #[test]
    fn duplicates() {
        assert_eq!(Triples::Published.duplicates(), vec![(14, 15)]);
        assert!(Triples::Corrected.duplicates().is_empty());
    }
}
