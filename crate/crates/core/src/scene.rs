//! Scene files: line-oriented lists of predicates and triangle pairs.
//!
//! Format (extension `.csc`): one record per line, `#` starts a comment.
//! Numbers are exact rationals, written as an optional sign followed by an
//! integer or `p/q`.
//!
//! ```text
//! predicate Kx Ky Kz  Lx Ly Lz  Ax Ay Az  Bx By Bz  c
//! pquv      Px Py Pz  Qx Qy Qz  Ux Uy Uz  Vx Vy Vz  c
//! tripair   s0x s0y s0z  s1x s1y s1z  s2x s2y s2z \
//!           r0x r0y r0z  r1x r1y r1z  r2x r2y r2z  [c=RAT]
//! ```
//!
//! A triangle pair expands into the 9 segment-pair predicates, one per
//! (stationary edge, rotating edge) combination.

use crate::predicate::{GeneralPredicate, ReducedPredicate};
use crate::rational::{RVec3, Rational};
use num::bigint::BigInt;
use num::Zero;
use std::fmt;
use std::str::FromStr;

/// Parse error with 1-based line and column of the offending token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SceneError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for SceneError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for SceneError {}

/// Triangle with exact vertices. Degenerate triangles are allowed and
/// simply produce degenerate predicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangle {
    pub v0: RVec3,
    pub v1: RVec3,
    pub v2: RVec3,
}

impl Triangle {
    pub fn new(v0: RVec3, v1: RVec3, v2: RVec3) -> Self {
        Triangle { v0, v1, v2 }
    }

    /// Edges in the fixed order (v0,v1), (v1,v2), (v2,v0).
    pub fn edges(&self) -> [(&RVec3, &RVec3); 3] {
        [(&self.v0, &self.v1), (&self.v1, &self.v2), (&self.v2, &self.v0)]
    }
}

/// One scene record.
#[derive(Clone, Debug, PartialEq)]
pub enum SceneEntry {
    General(GeneralPredicate),
    Reduced(ReducedPredicate),
    TrianglePair {
        stationary: Triangle,
        rotating: Triangle,
        c: Rational,
    },
}

/// A parsed scene.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct SceneDocument {
    pub entries: Vec<SceneEntry>,
}

/// Expand a triangle pair into its 9 segment-pair predicates,
/// stationary-edge-major: K, L run over the stationary edge endpoints and
/// A, B over the rotating ones.
pub fn expand_triangle_pair(
    stationary: &Triangle,
    rotating: &Triangle,
    c: &Rational,
) -> Vec<GeneralPredicate> {
    let mut out = Vec::with_capacity(9);
    for (k, l) in stationary.edges() {
        for (a, b) in rotating.edges() {
            out.push(GeneralPredicate::new(
                k.clone(),
                l.clone(),
                a.clone(),
                b.clone(),
                c.clone(),
            ));
        }
    }
    out
}

impl SceneDocument {
    /// All predicates of the scene in reduced form, triangle pairs
    /// expanded, in document order.
    pub fn reduced_predicates(&self) -> Vec<ReducedPredicate> {
        let mut out = Vec::new();
        for entry in &self.entries {
            match entry {
                SceneEntry::General(g) => out.push(g.reduce()),
                SceneEntry::Reduced(r) => out.push(r.clone()),
                SceneEntry::TrianglePair {
                    stationary,
                    rotating,
                    c,
                } => {
                    for g in expand_triangle_pair(stationary, rotating, c) {
                        out.push(g.reduce());
                    }
                }
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, SceneError> {
        let mut entries = Vec::new();
        for (line_no, raw_line) in text.lines().enumerate() {
            let line = line_no + 1;
            let content = match raw_line.find('#') {
                Some(idx) => &raw_line[..idx],
                None => raw_line,
            };
            let mut tokens = tokenize(content, line);
            let Some((keyword, kw_col)) = tokens.next_token() else {
                continue;
            };
            match keyword {
                "predicate" => {
                    let v = tokens.rationals(13, "predicate")?;
                    entries.push(SceneEntry::General(GeneralPredicate::new(
                        vec3(&v[0..3]),
                        vec3(&v[3..6]),
                        vec3(&v[6..9]),
                        vec3(&v[9..12]),
                        v[12].clone(),
                    )));
                    tokens.expect_end("predicate")?;
                }
                "pquv" => {
                    let v = tokens.rationals(13, "pquv")?;
                    let reduced = ReducedPredicate::new(
                        vec3(&v[0..3]),
                        vec3(&v[3..6]),
                        vec3(&v[6..9]),
                        vec3(&v[9..12]),
                        v[12].clone(),
                    )
                    .map_err(|e| SceneError {
                        line,
                        col: kw_col,
                        message: e.to_string(),
                    })?;
                    entries.push(SceneEntry::Reduced(reduced));
                    tokens.expect_end("pquv")?;
                }
                "tripair" => {
                    let v = tokens.rationals(18, "tripair")?;
                    let c = match tokens.next_token() {
                        None => Rational::zero(),
                        Some((tok, col)) => match tok.strip_prefix("c=") {
                            Some(num) => parse_rational(num).map_err(|msg| SceneError {
                                line,
                                col,
                                message: msg,
                            })?,
                            None => {
                                return Err(SceneError {
                                    line,
                                    col,
                                    message: format!("expected `c=RATIONAL`, found `{tok}`"),
                                })
                            }
                        },
                    };
                    entries.push(SceneEntry::TrianglePair {
                        stationary: Triangle::new(vec3(&v[0..3]), vec3(&v[3..6]), vec3(&v[6..9])),
                        rotating: Triangle::new(vec3(&v[9..12]), vec3(&v[12..15]), vec3(&v[15..18])),
                        c,
                    });
                    tokens.expect_end("tripair")?;
                }
                other => {
                    return Err(SceneError {
                        line,
                        col: kw_col,
                        message: format!("unknown record `{other}`"),
                    })
                }
            }
        }
        Ok(SceneDocument { entries })
    }
}

fn vec3(v: &[Rational]) -> RVec3 {
    RVec3::new(v[0].clone(), v[1].clone(), v[2].clone())
}

struct Tokens<'a> {
    rest: &'a str,
    line: usize,
    consumed: usize,
}

fn tokenize(content: &str, line: usize) -> Tokens<'_> {
    Tokens {
        rest: content,
        line,
        consumed: 0,
    }
}

impl<'a> Tokens<'a> {
    fn next_token(&mut self) -> Option<(&'a str, usize)> {
        let trimmed = self.rest.trim_start();
        let skipped = self.rest.len() - trimmed.len();
        let start = self.consumed + skipped;
        if trimmed.is_empty() {
            self.rest = trimmed;
            self.consumed = start;
            return None;
        }
        let end = trimmed
            .find(char::is_whitespace)
            .unwrap_or(trimmed.len());
        let token = &trimmed[..end];
        self.rest = &trimmed[end..];
        self.consumed = start + end;
        Some((token, start + 1))
    }

    fn rationals(&mut self, n: usize, record: &str) -> Result<Vec<Rational>, SceneError> {
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let Some((tok, col)) = self.next_token() else {
                return Err(SceneError {
                    line: self.line,
                    col: self.consumed + 1,
                    message: format!("`{record}` expects {n} numbers, found {i}"),
                });
            };
            let value = parse_rational(tok).map_err(|msg| SceneError {
                line: self.line,
                col,
                message: msg,
            })?;
            out.push(value);
        }
        Ok(out)
    }

    fn expect_end(&mut self, record: &str) -> Result<(), SceneError> {
        if let Some((tok, col)) = self.next_token() {
            return Err(SceneError {
                line: self.line,
                col,
                message: format!("trailing token `{tok}` after `{record}` record"),
            });
        }
        Ok(())
    }
}

/// Parse an exact rational: optional sign, integer or `p/q`.
pub fn parse_rational(tok: &str) -> Result<Rational, String> {
    let parse_int = |s: &str| -> Result<BigInt, String> {
        BigInt::from_str(s).map_err(|_| format!("invalid number `{tok}`"))
    };
    match tok.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(tok)?)),
        Some((num, den)) => {
            let num = parse_int(num)?;
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(format!("zero denominator in `{tok}`"));
            }
            Ok(Rational::new(num, den))
        }
    }
}

impl fmt::Display for SceneDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = |vec: &RVec3| format!("{} {} {}", vec.x, vec.y, vec.z);
        for entry in &self.entries {
            match entry {
                SceneEntry::General(g) => writeln!(
                    f,
                    "predicate {}  {}  {}  {}  {}",
                    v(&g.k),
                    v(&g.l),
                    v(&g.a),
                    v(&g.b),
                    g.c
                )?,
                SceneEntry::Reduced(r) => writeln!(
                    f,
                    "pquv {}  {}  {}  {}  {}",
                    v(r.p()),
                    v(r.q()),
                    v(r.u()),
                    v(r.v()),
                    r.c()
                )?,
                SceneEntry::TrianglePair {
                    stationary,
                    rotating,
                    c,
                } => {
                    write!(
                        f,
                        "tripair {}  {}  {}  {}  {}  {}",
                        v(&stationary.v0),
                        v(&stationary.v1),
                        v(&stationary.v2),
                        v(&rotating.v0),
                        v(&rotating.v1),
                        v(&rotating.v2),
                    )?;
                    if !c.is_zero() {
                        write!(f, "  c={c}")?;
                    }
                    writeln!(f)?;
                }
            }
        }
        Ok(())
    }
}
