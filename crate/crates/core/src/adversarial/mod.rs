//! Closed-form price-of-connectivity values and the worst-case instances
//! behind their lower bounds.

mod classify;
mod generators;

use std::fmt;

use serde::Serialize;

use crate::rational::{format_rational, int, Rational};

pub use classify::{formula_for_graph, is_complete};
pub use generators::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WelfareKind {
    Egal,
    Util,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphClass {
    CompleteMinusMatching,
    CompleteBipartite,
    Connectivity2,
    Connectivity1,
    Tree,
    Star,
    Path,
    Cycle,
    Generic,
}

/// Whether a value is the exact PoC of the class or only a bound on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundTag {
    Exact,
    Lower,
    Upper,
}

impl fmt::Display for WelfareKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WelfareKind::Egal => "egal",
            WelfareKind::Util => "util",
        })
    }
}

impl fmt::Display for BoundTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundTag::Exact => "exact",
            BoundTag::Lower => "lower",
            BoundTag::Upper => "upper",
        })
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphClass::CompleteMinusMatching => "complete_minus_matching",
            GraphClass::CompleteBipartite => "complete_bipartite",
            GraphClass::Connectivity2 => "connectivity2",
            GraphClass::Connectivity1 => "connectivity1",
            GraphClass::Tree => "tree",
            GraphClass::Star => "star",
            GraphClass::Path => "path",
            GraphClass::Cycle => "cycle",
            GraphClass::Generic => "generic",
        })
    }
}

/// Class parameters. Fields a class does not use stay 0 / false.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Params {
    pub m: usize,
    pub n: usize,
    /// Side sizes of a complete bipartite graph.
    pub x: usize,
    pub y: usize,
    /// Number of edges removed from the complete graph.
    pub matching: usize,
    /// Most components after deleting one vertex; the maximum degree for
    /// a tree.
    pub d: usize,
    /// Most components after deleting two vertices.
    pub delta: usize,
    /// Whether the block decomposition is a path.
    pub block_path: bool,
    /// Quotient and remainder of the item count in the Ω(n) constructions.
    pub c: usize,
    pub rem: usize,
}

impl Params {
    pub fn mn(m: usize, n: usize) -> Self {
        Params {
            m,
            n,
            ..Params::default()
        }
    }
}

/// A formula value together with what it claims.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PocFormula {
    pub kind: WelfareKind,
    pub class: GraphClass,
    pub params: Params,
    #[serde(serialize_with = "ser_rational")]
    pub value: Rational,
    pub tag: BoundTag,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

impl PocFormula {
    /// Whether a measured ratio agrees with the formula: equal for exact
    /// values, at least the value for lower bounds, at most for upper ones.
    pub fn accepts(&self, measured: Rational) -> bool {
        match self.tag {
            BoundTag::Exact => measured == self.value,
            BoundTag::Lower => measured >= self.value,
            BoundTag::Upper => measured <= self.value,
        }
    }

    /// Whether a measured ratio stays within the formula's ceiling; lower
    /// bounds impose none.
    pub fn bounds_from_above(&self, measured: Rational) -> bool {
        match self.tag {
            BoundTag::Exact | BoundTag::Upper => measured <= self.value,
            BoundTag::Lower => true,
        }
    }

    /// Short parameter list for reports, e.g. `m=5 n=2`.
    pub fn describe_params(&self) -> String {
        describe(self.class, &self.params)
    }
}

pub(crate) fn describe(class: GraphClass, p: &Params) -> String {
    let mut parts = vec![format!("m={}", p.m), format!("n={}", p.n)];
    match class {
        GraphClass::CompleteMinusMatching => parts.push(format!("k={}", p.matching)),
        GraphClass::CompleteBipartite => {
            parts.push(format!("x={}", p.x));
            parts.push(format!("y={}", p.y));
        }
        GraphClass::Connectivity1 => {
            parts.push(format!("d={}", p.d));
            parts.push(format!("block_path={}", p.block_path));
        }
        GraphClass::Tree if p.n == 3 => parts.push(format!("delta={}", p.delta)),
        GraphClass::Tree => parts.push(format!("d={}", p.d)),
        _ => {}
    }
    if p.c > 0 {
        parts.push(format!("c={}", p.c));
        parts.push(format!("d={}", p.rem));
    }
    parts.join(" ")
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormulaError {
    #[error("no {kind} formula for class {class} with {params}")]
    Unsupported {
        kind: WelfareKind,
        class: GraphClass,
        params: String,
    },
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
}

fn q(a: i128, b: i128) -> Rational {
    Rational::new(a, b)
}

/// The closed-form value for a class, with the case splits of the
/// corresponding results.
pub fn formula(
    kind: WelfareKind,
    class: GraphClass,
    params: Params,
) -> Result<PocFormula, FormulaError> {
    let (value, tag) = value_of(kind, class, &params)?;
    debug_assert!(value >= int(1));
    Ok(PocFormula {
        kind,
        class,
        params,
        value,
        tag,
    })
}

fn value_of(
    kind: WelfareKind,
    class: GraphClass,
    p: &Params,
) -> Result<(Rational, BoundTag), FormulaError> {
    use BoundTag::*;
    use GraphClass::*;
    let unsupported = || FormulaError::Unsupported {
        kind,
        class,
        params: describe(class, p),
    };
    let range = |what: &str| FormulaError::OutOfRange(format!("{class}: {what}"));
    let (m, n) = (p.m as i128, p.n as i128);
    if p.n == 0 || p.m == 0 {
        return Err(range("m and n must be positive"));
    }
    if p.n == 1 {
        return Ok((int(1), Exact));
    }
    let two_agents = |ok: bool| if ok { Ok(()) } else { Err(unsupported()) };
    match (kind, class) {
        (WelfareKind::Egal, CompleteMinusMatching) => {
            two_agents(p.n == 2)?;
            check_matching(p).map_err(|e| range(&e))?;
            if is_l3_or_l5(p) {
                Ok((int(2), Exact))
            } else {
                Ok((q(m - 2, m - 3), Exact))
            }
        }
        (WelfareKind::Util, CompleteMinusMatching) => {
            two_agents(p.n == 2)?;
            check_matching(p).map_err(|e| range(&e))?;
            if is_l3_or_l5(p) {
                Ok((q(4, 3), Exact))
            } else {
                Ok((q(2 * m - 4, 2 * m - 5), Exact))
            }
        }
        (kind, CompleteBipartite) => {
            two_agents(p.n == 2)?;
            let (x, y) = (p.x.min(p.y) as i128, p.x.max(p.y) as i128);
            if x < 1 || x + y != m {
                return Err(range("sides must be positive and sum to m"));
            }
            match kind {
                WelfareKind::Egal if x == 1 => Ok((int(m - 1), Exact)),
                WelfareKind::Egal => Ok((q(x, x - 1), Exact)),
                WelfareKind::Util if x == 1 => Ok((q(2 * (m - 1), m), Exact)),
                WelfareKind::Util if x == 2 => Ok((q(4, 3), Exact)),
                WelfareKind::Util => Ok((int(2) / (int(2) - q(1, x) - q(1, y)), Exact)),
            }
        }
        (WelfareKind::Egal, Connectivity2) => {
            two_agents(p.n == 2)?;
            if p.m < 4 {
                return Err(range(
                    "a non-complete graph of connectivity 2 has at least 4 vertices",
                ));
            }
            Ok((int(2), Exact))
        }
        (WelfareKind::Egal, Connectivity1) => {
            two_agents(p.n == 2)?;
            match p.d {
                0 | 1 => Err(range("d must be at least 2")),
                2 if p.block_path => Ok((int(2), Exact)),
                2 => Ok((int(3), Exact)),
                d => Ok((int(d as i128), Exact)),
            }
        }
        (WelfareKind::Egal, Tree) => match p.n {
            2 => {
                if p.d == 0 || p.d >= p.m {
                    return Err(range("the maximum degree must be in 1..m"));
                }
                Ok((int(p.d as i128), Exact))
            }
            3 => {
                if p.delta == 0 || p.delta >= p.m {
                    return Err(range("delta must be in 1..m"));
                }
                Ok((int(p.delta as i128), Exact))
            }
            _ => Err(unsupported()),
        },
        (WelfareKind::Util, Tree) => {
            two_agents(p.n == 2)?;
            if p.m < 2 {
                return Err(range("a tree needs two vertices"));
            }
            Ok((q(2 * (m - 1), m), Exact))
        }
        (WelfareKind::Egal, Star) => {
            if m < n {
                return Ok((int(1), Exact));
            }
            Ok((int(m - n + 1), Exact))
        }
        (WelfareKind::Egal, Path) => {
            if m < n {
                Ok((int(1), Exact))
            } else if m < 2 * n - 1 {
                Ok((int(m - n + 1), Exact))
            } else {
                Ok((int(n), Exact))
            }
        }
        (WelfareKind::Egal, Cycle) => {
            if p.m < 3 {
                return Err(range("a cycle has at least 3 vertices"));
            }
            if m < n {
                Ok((int(1), Exact))
            } else if m < 2 * n - 2 {
                Ok((int(m - n + 1), Exact))
            } else if m < n * n {
                Ok((int(n - 1), Exact))
            } else {
                Ok((int(n), Exact))
            }
        }
        (WelfareKind::Util, Cycle) if p.n == 2 => {
            if p.m < 3 {
                return Err(range("a cycle has at least 3 vertices"));
            }
            let k = m / 2;
            Ok((q(2 * k, k + 1), Exact))
        }
        (WelfareKind::Util, Star | Path) if p.n == 2 => Ok((q(2 * (m - 1), m), Exact)),
        (WelfareKind::Util, Star | Path) if p.m == 3 => Ok((q(4, 3), Exact)),
        (WelfareKind::Util, Star | Path | Cycle) => {
            let mut v = int(n) - q(1, n * m);
            if (4..=p.n + 1).contains(&p.m) {
                v = v.min(int(m - 2));
            }
            Ok((v, Upper))
        }
        (WelfareKind::Egal, Generic) => {
            if m < n {
                Ok((int(1), Exact))
            } else {
                Ok((int(m - n + 1), Upper))
            }
        }
        (WelfareKind::Util, Generic) => {
            let mut v = int(n);
            if (4..=p.n + 1).contains(&p.m) {
                v = v.min(int(m - 2));
            }
            Ok((v, Upper))
        }
        (WelfareKind::Util, Connectivity1 | Connectivity2) => Err(unsupported()),
    }
}

fn check_matching(p: &Params) -> Result<(), String> {
    if p.m < 3 || p.matching == 0 || 2 * p.matching > p.m {
        return Err(format!(
            "need m >= 3 and 1 <= k <= m/2, got m={} k={}",
            p.m, p.matching
        ));
    }
    Ok(())
}

fn is_l3_or_l5(p: &Params) -> bool {
    p.m == 3 || (p.m == 5 && p.matching == 2)
}

/// Utilitarian lower bound on stars with `n` agents and
/// `m = c(n − 1) + d + 1` items.
pub fn util_star_lower(n: usize, c: usize, d: usize) -> Result<PocFormula, FormulaError> {
    if n < 2 || c < 1 || d + 2 > n {
        return Err(FormulaError::OutOfRange(format!(
            "star bound needs n >= 2, c >= 1, d <= n - 2; got n={n} c={c} d={d}"
        )));
    }
    let m = c * (n - 1) + d + 1;
    let (ni, ci, mi) = (n as i128, c as i128, m as i128);
    let value = q(ni * ci * (ci + 1), ci * ci + 2 * ni * ci + ni - ci - mi);
    Ok(lower(GraphClass::Star, m, n, c, d, value))
}

/// Utilitarian lower bound on paths with `n` agents and `m = cn + d`.
pub fn util_path_lower(n: usize, c: usize, d: usize) -> Result<PocFormula, FormulaError> {
    check_cyclic(n, c, d)?;
    let (ni, ci) = (n as i128, c as i128);
    Ok(lower(
        GraphClass::Path,
        c * n + d,
        n,
        c,
        d,
        q(ni * ci, ni + ci - 1),
    ))
}

/// Utilitarian lower bound on cycles with `n` agents and `m = cn + d`.
pub fn util_cycle_lower(n: usize, c: usize, d: usize) -> Result<PocFormula, FormulaError> {
    check_cyclic(n, c, d)?;
    if c * n + d < 3 {
        return Err(FormulaError::OutOfRange(
            "a cycle has at least 3 vertices".into(),
        ));
    }
    let (ni, ci) = (n as i128, c as i128);
    Ok(lower(
        GraphClass::Cycle,
        c * n + d,
        n,
        c,
        d,
        q(ni * ci, 2 * ni + ci - 2),
    ))
}

fn check_cyclic(n: usize, c: usize, d: usize) -> Result<(), FormulaError> {
    if n < 2 || c < 1 || d >= n {
        return Err(FormulaError::OutOfRange(format!(
            "needs n >= 2, c >= 1, d <= n - 1; got n={n} c={c} d={d}"
        )));
    }
    Ok(())
}

fn lower(class: GraphClass, m: usize, n: usize, c: usize, d: usize, value: Rational) -> PocFormula {
    PocFormula {
        kind: WelfareKind::Util,
        class,
        params: Params {
            m,
            n,
            c,
            rem: d,
            ..Params::default()
        },
        value,
        tag: BoundTag::Lower,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn f(kind: WelfareKind, class: GraphClass, p: Params) -> PocFormula {
        formula(kind, class, p).unwrap()
    }

    #[test]
    fn table_entries() {
        use GraphClass::*;
        use WelfareKind::*;
        let star = f(Egal, Star, Params::mn(7, 3));
        assert_eq!((star.value, star.tag), (int(5), BoundTag::Exact));
        assert_eq!(f(Util, Cycle, Params::mn(6, 2)).value, frac(3, 2));
        assert_eq!(f(Egal, Cycle, Params::mn(9, 3)).value, int(3));
        assert_eq!(f(Egal, Cycle, Params::mn(5, 3)).value, int(2));
        assert_eq!(f(Egal, Cycle, Params::mn(3, 3)).value, int(1));
        assert_eq!(f(Egal, Path, Params::mn(4, 3)).value, int(2));
        assert_eq!(f(Egal, Path, Params::mn(5, 3)).value, int(3));
        let cmm = |m, k| Params {
            matching: k,
            ..Params::mn(m, 2)
        };
        assert_eq!(f(Egal, CompleteMinusMatching, cmm(3, 1)).value, int(2));
        assert_eq!(f(Egal, CompleteMinusMatching, cmm(5, 2)).value, int(2));
        assert_eq!(f(Egal, CompleteMinusMatching, cmm(6, 3)).value, frac(4, 3));
        assert_eq!(f(Util, CompleteMinusMatching, cmm(5, 2)).value, frac(4, 3));
        assert_eq!(f(Util, CompleteMinusMatching, cmm(6, 1)).value, frac(8, 7));
        let kb = |x, y| Params {
            x,
            y,
            ..Params::mn(x + y, 2)
        };
        assert_eq!(f(Egal, CompleteBipartite, kb(3, 4)).value, frac(3, 2));
        assert_eq!(f(Util, CompleteBipartite, kb(2, 5)).value, frac(4, 3));
        assert_eq!(f(Util, CompleteBipartite, kb(3, 3)).value, frac(3, 2));
        assert_eq!(f(Util, Tree, Params::mn(3, 2)).value, frac(4, 3));
        assert_eq!(f(Util, Path, Params::mn(3, 4)).value, frac(4, 3));
        let generic = f(Util, Generic, Params::mn(4, 3));
        assert_eq!((generic.value, generic.tag), (int(2), BoundTag::Upper));
    }

    #[test]
    fn omega_bounds() {
        assert_eq!(util_path_lower(3, 2, 0).unwrap().value, frac(3, 2));
        assert!(util_star_lower(2, 1, 1).is_err());
        // m = 2*2 + 1 + 1 = 6
        let s = util_star_lower(3, 2, 1).unwrap();
        assert_eq!(s.params.m, 6);
        assert_eq!(s.value, frac(18, 11));
    }

    #[test]
    fn out_of_range() {
        let p = Params {
            matching: 3,
            ..Params::mn(5, 2)
        };
        assert!(formula(WelfareKind::Egal, GraphClass::CompleteMinusMatching, p).is_err());
        assert!(formula(
            WelfareKind::Util,
            GraphClass::Connectivity1,
            Params::mn(5, 2)
        )
        .is_err());
    }
}
