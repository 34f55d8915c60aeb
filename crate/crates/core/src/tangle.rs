//! Sliced presentations of framed oriented tangles, read bottom to top.
//!
//! Strands are labelled `d` (downward, carrying `V`) or `u` (upward, carrying `V*`).
//! Elementary pieces:
//!
//! | kind          | strands below | strands above | map                         |
//! |---------------|---------------|---------------|-----------------------------|
//! | `cup_plain`   | -             | `d u`         | `1 -> e_i (x) e^i`          |
//! | `cup_twisted` | -             | `u d`         | `1 -> e^i (x) K^-1 e_i`     |
//! | `cap_plain`   | `u d`         | -             | `phi (x) v -> phi(v)`       |
//! | `cap_twisted` | `d u`         | -             | `v (x) phi -> phi(K v)`     |
//! | `cross+`      | `d d`         | `d d`         | `R_check`                   |
//! | `cross-`      | `d d`         | `d d`         | `R_check^-1`                |
//! | `id`          | any           | same          | identity                    |

use std::fmt;
use std::str::FromStr;

use crate::braiding::Orientation;
use crate::error::{Error, Result};

use Orientation::{Down, Up};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SliceKind {
    CupPlain,
    CupTwisted,
    CapPlain,
    CapTwisted,
    CrossPos,
    CrossNeg,
    Id,
}

impl SliceKind {
    pub const ALL: [SliceKind; 7] = [
        SliceKind::CupPlain,
        SliceKind::CupTwisted,
        SliceKind::CapPlain,
        SliceKind::CapTwisted,
        SliceKind::CrossPos,
        SliceKind::CrossNeg,
        SliceKind::Id,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            SliceKind::CupPlain => "cup_plain",
            SliceKind::CupTwisted => "cup_twisted",
            SliceKind::CapPlain => "cap_plain",
            SliceKind::CapTwisted => "cap_twisted",
            SliceKind::CrossPos => "cross+",
            SliceKind::CrossNeg => "cross-",
            SliceKind::Id => "id",
        }
    }

    /// Orientations consumed at the attachment point.
    pub fn consumes(self) -> &'static [Orientation] {
        match self {
            SliceKind::CupPlain | SliceKind::CupTwisted => &[],
            SliceKind::CapPlain => &[Up, Down],
            SliceKind::CapTwisted => &[Down, Up],
            SliceKind::CrossPos | SliceKind::CrossNeg => &[Down, Down],
            SliceKind::Id => &[],
        }
    }

    /// Orientations produced at the attachment point.
    pub fn produces(self) -> &'static [Orientation] {
        match self {
            SliceKind::CupPlain => &[Down, Up],
            SliceKind::CupTwisted => &[Up, Down],
            SliceKind::CapPlain | SliceKind::CapTwisted => &[],
            SliceKind::CrossPos | SliceKind::CrossNeg => &[Down, Down],
            SliceKind::Id => &[],
        }
    }

    pub fn is_cup(self) -> bool {
        matches!(self, SliceKind::CupPlain | SliceKind::CupTwisted)
    }

    pub fn is_cap(self) -> bool {
        matches!(self, SliceKind::CapPlain | SliceKind::CapTwisted)
    }

    pub fn is_crossing(self) -> bool {
        matches!(self, SliceKind::CrossPos | SliceKind::CrossNeg)
    }
}

impl FromStr for SliceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SliceKind::ALL
            .iter()
            .copied()
            .find(|k| k.keyword() == s)
            .ok_or_else(|| Error::Format(format!("unknown slice keyword {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Slice {
    pub kind: SliceKind,
    pub position: usize,
}

impl Slice {
    pub fn new(kind: SliceKind, position: usize) -> Self {
        Slice { kind, position }
    }

    /// The strand signature above this slice, or why it cannot be attached.
    pub fn apply(&self, below: &[Orientation]) -> std::result::Result<Vec<Orientation>, String> {
        let p = self.position;
        let need = self.kind.consumes();
        if self.kind == SliceKind::Id {
            if p >= below.len() && !(p == 0 && below.is_empty()) {
                return Err(format!("id @{p} on {} strands", below.len()));
            }
            return Ok(below.to_vec());
        }
        if self.kind.is_cup() {
            if p > below.len() {
                return Err(format!("{} @{p} on {} strands", self.kind.keyword(), below.len()));
            }
        } else if p + need.len() > below.len() {
            return Err(format!(
                "{} @{p} needs strands {p} and {} but there are only {}",
                self.kind.keyword(),
                p + 1,
                below.len()
            ));
        } else if &below[p..p + need.len()] != need {
            let got: String = below[p..p + need.len()].iter().map(|o| o.symbol()).collect();
            let want: String = need.iter().map(|o| o.symbol()).collect();
            if self.kind.is_crossing() {
                return Err(format!(
                    "crossing @{p} on strands {got:?}: crossings are only allowed between two d strands"
                ));
            }
            return Err(format!("{} @{p} expects {want:?}, found {got:?}", self.kind.keyword()));
        }
        let mut out = below[..p].to_vec();
        out.extend_from_slice(self.kind.produces());
        out.extend_from_slice(&below[p + need.len()..]);
        Ok(out)
    }
}

impl fmt::Display for Slice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} @{}", self.kind.keyword(), self.position)
    }
}

/// An ordered bottom-to-top list of slices with its boundary signatures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    slices: Vec<Slice>,
    bottom: Vec<Orientation>,
    top: Vec<Orientation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TangleClass {
    OneOne,
    TwoTwo,
    Other,
}

impl fmt::Display for TangleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TangleClass::OneOne => write!(f, "(1,1)"),
            TangleClass::TwoTwo => write!(f, "(2,2)"),
            TangleClass::Other => write!(f, "other"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub slice: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub valid: bool,
    pub class: TangleClass,
    pub max_width: usize,
    pub violations: Vec<Violation>,
    pub homogeneity_violations: Vec<Violation>,
}

/// Checks slice-by-slice consistency without failing on the first problem.
///
/// After an inconsistent slice the remaining ones are checked against the
/// signature below the bad slice.
pub fn validate(slices: &[Slice], bottom: &[Orientation], top: Option<&[Orientation]>) -> (ValidationReport, Vec<Orientation>) {
    let mut cur = bottom.to_vec();
    let mut max_width = cur.len();
    let mut violations = vec![];
    let mut homogeneity = vec![];
    for (idx, s) in slices.iter().enumerate() {
        match s.apply(&cur) {
            Ok(next) => cur = next,
            Err(message) => {
                let v = Violation { slice: idx, message };
                if s.kind.is_crossing() && s.position + 1 < cur.len() {
                    homogeneity.push(v);
                } else {
                    violations.push(v);
                }
            }
        }
        max_width = max_width.max(cur.len());
    }
    if let Some(t) = top {
        if t != cur.as_slice() {
            violations.push(Violation {
                slice: slices.len(),
                message: format!("top signature {} does not match computed {}", sig_string(t), sig_string(&cur)),
            });
        }
    }
    let all_down = |s: &[Orientation]| s.iter().all(|&o| o == Down);
    let class = if bottom.len() == 1 && cur.len() == 1 && all_down(bottom) && all_down(&cur) {
        TangleClass::OneOne
    } else if bottom.len() == 2 && cur.len() == 2 && all_down(bottom) && all_down(&cur) {
        TangleClass::TwoTwo
    } else {
        TangleClass::Other
    };
    let valid = violations.is_empty() && homogeneity.is_empty();
    (
        ValidationReport { valid, class, max_width, violations, homogeneity_violations: homogeneity },
        cur,
    )
}

fn sig_string(s: &[Orientation]) -> String {
    s.iter().map(|o| o.symbol().to_string()).collect::<Vec<_>>().join(",")
}

impl Diagram {
    /// Builds and validates a diagram.
    pub fn new(bottom: Vec<Orientation>, slices: Vec<Slice>) -> Result<Diagram> {
        let (report, top) = validate(&slices, &bottom, None);
        if let Some(v) = report.homogeneity_violations.first().or(report.violations.first()) {
            return Err(Error::InvalidDiagram(format!("slice {}: {}", v.slice, v.message)));
        }
        Ok(Diagram { slices, bottom, top })
    }

    /// A diagram on downward strands only.
    pub fn on_down(strands: usize, slices: &[(SliceKind, usize)]) -> Result<Diagram> {
        Diagram::new(
            vec![Down; strands],
            slices.iter().map(|&(k, p)| Slice::new(k, p)).collect(),
        )
    }

    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    pub fn bottom(&self) -> &[Orientation] {
        &self.bottom
    }

    pub fn top(&self) -> &[Orientation] {
        &self.top
    }

    pub fn report(&self) -> ValidationReport {
        validate(&self.slices, &self.bottom, Some(&self.top)).0
    }

    pub fn class(&self) -> TangleClass {
        self.report().class
    }

    pub fn max_width(&self) -> usize {
        self.report().max_width
    }

    /// Signature below each slice, plus the top signature as the last entry.
    pub fn signatures(&self) -> Vec<Vec<Orientation>> {
        let mut out = vec![self.bottom.clone()];
        for s in &self.slices {
            let next = s.apply(out.last().unwrap()).expect("validated");
            out.push(next);
        }
        out
    }

    pub fn count(&self, pred: impl Fn(SliceKind) -> bool) -> usize {
        self.slices.iter().filter(|s| pred(s.kind)).count()
    }

    /// `self` followed (above) by `other`.
    pub fn then(&self, other: &Diagram) -> Result<Diagram> {
        if self.top != other.bottom {
            return Err(Error::InvalidDiagram(format!(
                "cannot stack: top {} vs bottom {}",
                sig_string(&self.top),
                sig_string(&other.bottom)
            )));
        }
        let mut slices = self.slices.clone();
        slices.extend_from_slice(&other.slices);
        Diagram::new(self.bottom.clone(), slices)
    }

    /// The DSL text; `parse(serialize(d)) == d`.
    pub fn serialize(&self) -> String {
        let mut out = String::from("tangle v1\n");
        out.push_str(&format!("bottom: {}\n", sig_string(&self.bottom)));
        for s in &self.slices {
            out.push_str(&format!("{s}\n"));
        }
        out
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

/// Column (1-based) of the first non-blank character of `s` within `raw`.
fn col_of(raw: &str, s: &str) -> usize {
    let off = s.as_ptr() as usize - raw.as_ptr() as usize;
    raw[..off].chars().count() + 1
}

/// Parses the line-oriented DSL:
///
/// ```text
/// tangle v1
/// bottom: d
/// cup_twisted @0
/// cross+ @1
/// cap_plain @0
/// ```
pub fn parse(text: &str) -> Result<Diagram> {
    let mut header_seen = false;
    let mut bottom: Option<Vec<Orientation>> = None;
    let mut slices = vec![];
    let mut lines_of_slices = vec![];
    for (lno, raw) in text.lines().enumerate() {
        let line = lno + 1;
        let content = raw.split('#').next().unwrap();
        let body = content.trim();
        if body.is_empty() {
            continue;
        }
        let col = col_of(raw, body);
        if !header_seen {
            let mut toks = body.split_whitespace();
            if toks.next() != Some("tangle") {
                return Err(perr(line, col, "malformed header: expected `tangle v1`"));
            }
            match toks.next() {
                Some("v1") if toks.next().is_none() => {}
                _ => return Err(perr(line, col, "malformed header: expected `tangle v1`")),
            }
            header_seen = true;
            continue;
        }
        if bottom.is_none() {
            let Some(rest) = body.strip_prefix("bottom:") else {
                return Err(perr(line, col, "malformed header: expected `bottom: <d|u list>`"));
            };
            let mut sig = vec![];
            if !rest.trim().is_empty() {
                for tok in rest.split(',') {
                    let t = tok.trim();
                    match t {
                        "d" => sig.push(Down),
                        "u" => sig.push(Up),
                        _ => {
                            let c = if t.is_empty() { col_of(raw, rest) } else { col_of(raw, t) };
                            return Err(perr(line, c, format!("bad orientation {t:?}: expected d or u")));
                        }
                    }
                }
            }
            bottom = Some(sig);
            continue;
        }
        let (kw, pos) = match body.find('@') {
            Some(at) => (body[..at].trim(), &body[at + 1..]),
            None => return Err(perr(line, col, format!("expected `<kind> @<position>`, found {body:?}"))),
        };
        let kind: SliceKind = kw
            .parse()
            .map_err(|_| perr(line, col, format!("unknown keyword {kw:?}")))?;
        let pos_t = pos.trim();
        let position: usize = pos_t.parse().map_err(|_| {
            let c = if pos_t.is_empty() { col + body.len() } else { col_of(raw, pos_t) };
            perr(line, c, format!("bad position {pos_t:?}"))
        })?;
        slices.push(Slice::new(kind, position));
        lines_of_slices.push((line, col));
    }
    if !header_seen {
        return Err(perr(1, 1, "malformed header: expected `tangle v1`"));
    }
    let Some(bottom) = bottom else {
        return Err(perr(text.lines().count().max(1), 1, "missing `bottom:` line"));
    };
    let mut cur = bottom.clone();
    for (s, &(line, col)) in slices.iter().zip(&lines_of_slices) {
        cur = s.apply(&cur).map_err(|m| perr(line, col, m))?;
    }
    Ok(Diagram { slices, bottom, top: cur })
}

pub const BUILTINS: [&str; 4] = ["unknot", "unknot_twisted", "trefoil", "figure_eight"];

/// The bundled diagrams, all (1,1).
pub fn builtin(name: &str) -> Result<Diagram> {
    use SliceKind::*;
    let slices: &[(SliceKind, usize)] = match name {
        "unknot" => &[(Id, 0)],
        "unknot_twisted" => &[(CupTwisted, 0), (CrossPos, 1), (CapPlain, 0)],
        "trefoil" => &[(CupTwisted, 0), (CrossPos, 1), (CrossPos, 1), (CrossPos, 1), (CapPlain, 0)],
        "figure_eight" => &[
            (CupTwisted, 0),
            (CupTwisted, 1),
            (CrossPos, 3),
            (CrossNeg, 2),
            (CrossPos, 3),
            (CrossNeg, 2),
            (CapPlain, 1),
            (CapPlain, 0),
        ],
        _ => {
            return Err(Error::Parameter(format!(
                "unknown builtin {name:?} (expected one of {})",
                BUILTINS.join(", ")
            )))
        }
    };
    Diagram::on_down(1, slices)
}

/// Number of encoded variants of each Turaev move.
pub fn turaev_variants(mv: u32) -> Result<usize> {
    Ok(match mv {
        1 | 2 | 3 | 5 => 2,
        4 | 6 | 7 => 4,
        _ => return Err(Error::Parameter(format!("Turaev move must be in 1..=7 (got {mv})"))),
    })
}

fn d(bottom: &[Orientation], slices: &[(SliceKind, usize)]) -> Diagram {
    Diagram::new(
        bottom.to_vec(),
        slices.iter().map(|&(k, p)| Slice::new(k, p)).collect(),
    )
    .expect("move diagrams are consistent")
}

fn cross(positive: bool) -> SliceKind {
    if positive {
        SliceKind::CrossPos
    } else {
        SliceKind::CrossNeg
    }
}

/// The two sides of a Turaev move.
///
/// 1, 2: zig-zags on a `d` and on a `u` strand (plain and twisted). 3: a crossing
/// of two `u` strands built with plain vs twisted cups and caps. 4: a pair of
/// opposite curls vs the identity. 5: `R R^-1` and `R^-1 R` vs the identity.
/// 6: two sideways crossings of opposite sign vs the identity. 7: the braid relation.
pub fn turaev_pair(mv: u32, variant: usize) -> Result<(Diagram, Diagram)> {
    use SliceKind::*;
    let count = turaev_variants(mv)?;
    if variant >= count {
        return Err(Error::Parameter(format!(
            "move {mv} has {count} variants (got variant {variant})"
        )));
    }
    let id = |sig: &[Orientation]| d(sig, &[]);
    Ok(match (mv, variant) {
        (1, 0) => (d(&[Down], &[(CupPlain, 0), (CapPlain, 1)]), id(&[Down])),
        (1, 1) => (d(&[Down], &[(CupTwisted, 1), (CapTwisted, 0)]), id(&[Down])),
        (2, 0) => (d(&[Up], &[(CupPlain, 1), (CapPlain, 0)]), id(&[Up])),
        (2, 1) => (d(&[Up], &[(CupTwisted, 0), (CapTwisted, 1)]), id(&[Up])),
        (3, v) => {
            let c = cross(v == 0);
            (
                d(&[Up, Up], &[(CupPlain, 2), (CupPlain, 3), (c, 2), (CapPlain, 1), (CapPlain, 0)]),
                d(&[Up, Up], &[(CupTwisted, 0), (CupTwisted, 1), (c, 2), (CapTwisted, 3), (CapTwisted, 2)]),
            )
        }
        (4, v) => {
            let left_pos = v % 2 == 0;
            let left = [(CupTwisted, 0), (cross(left_pos), 1), (CapPlain, 0)];
            let right = [(CupPlain, 1), (cross(!left_pos), 0), (CapTwisted, 1)];
            let slices: Vec<_> = if v < 2 {
                left.iter().chain(&right).copied().collect()
            } else {
                right.iter().chain(&left).copied().collect()
            };
            (d(&[Down], &slices), id(&[Down]))
        }
        (5, v) => {
            let first = cross(v == 0);
            (d(&[Down, Down], &[(first, 0), (cross(v != 0), 0)]), id(&[Down, Down]))
        }
        (6, v) => {
            let s = |pos| [(CupPlain, 2), (cross(pos), 1), (CapPlain, 0)];
            let t = |pos| [(CupTwisted, 0), (cross(pos), 1), (CapTwisted, 2)];
            match v {
                0 => (d(&[Up, Down], &[s(true), t(false)].concat()), id(&[Up, Down])),
                1 => (d(&[Up, Down], &[s(false), t(true)].concat()), id(&[Up, Down])),
                2 => (d(&[Down, Up], &[t(true), s(false)].concat()), id(&[Down, Up])),
                _ => (d(&[Down, Up], &[t(false), s(true)].concat()), id(&[Down, Up])),
            }
        }
        (7, v) => {
            let dd = [Down; 3];
            match v {
                // s1 s2 s1 = s2 s1 s2, all positive or all negative
                0 | 1 => {
                    let c = cross(v == 0);
                    (d(&dd, &[(c, 0), (c, 1), (c, 0)]), d(&dd, &[(c, 1), (c, 0), (c, 1)]))
                }
                // mixed signs, slices listed bottom first
                2 => (
                    d(&dd, &[(CrossPos, 0), (CrossPos, 1), (CrossNeg, 0)]),
                    d(&dd, &[(CrossNeg, 1), (CrossPos, 0), (CrossPos, 1)]),
                ),
                _ => (
                    d(&dd, &[(CrossNeg, 0), (CrossPos, 1), (CrossPos, 0)]),
                    d(&dd, &[(CrossPos, 1), (CrossPos, 0), (CrossNeg, 1)]),
                ),
            }
        }
        _ => unreachable!(),
    })
}

/// Every `(move, variant)` pair.
pub fn all_turaev_pairs() -> Vec<(u32, usize)> {
    (1..=7)
        .flat_map(|m| (0..turaev_variants(m).unwrap()).map(move |v| (m, v)))
        .collect()
}
