//! Line-based text format for Moore families and simplicial complexes.
//!
//! ```text
//! ground 1 2 3 4
//! generators 1 2 3
//! member
//! member 2 3 4
//! member 1 2 3 4
//! ```
//!
//! A complex uses `indep` lines instead of `member`. Points are 1-based;
//! a bare keyword denotes the empty set; `#` starts a comment.

use std::fmt::Write;

use super::{validate_moore_family, MooreError, MooreFamily, SimplicialComplex};
use crate::PointSet;

#[derive(Debug, Clone)]
pub enum MooreDocument {
    Family(MooreFamily),
    Complex(SimplicialComplex),
}

fn point_list(set: &PointSet) -> String {
    set.iter().map(|p| format!(" {}", p + 1)).collect()
}

impl MooreFamily {
    pub fn to_text(&self) -> String {
        let mut out = format!("ground{}\n", point_list(self.ground()));
        if let Some(g) = self.generators() {
            writeln!(out, "generators{}", point_list(g)).unwrap();
        }
        for m in self.members() {
            writeln!(out, "member{}", point_list(m)).unwrap();
        }
        out
    }
}

impl SimplicialComplex {
    pub fn to_text(&self) -> String {
        let mut out = format!("ground{}\n", point_list(self.ground()));
        for i in self.independents() {
            writeln!(out, "indep{}", point_list(i)).unwrap();
        }
        out
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> MooreError {
    MooreError::Parse { line, message: message.into() }
}

fn parse_points(line: usize, words: &[&str]) -> Result<Vec<usize>, MooreError> {
    words
        .iter()
        .map(|w| match w.parse::<usize>() {
            Ok(p) if p >= 1 => Ok(p - 1),
            _ => Err(parse_err(line, format!("bad point {w:?}"))),
        })
        .collect()
}

pub fn parse_moore_text(text: &str) -> Result<MooreDocument, MooreError> {
    let mut ground: Option<PointSet> = None;
    let mut generators: Option<PointSet> = None;
    let mut members = Vec::new();
    let mut independents = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let words: Vec<&str> = content.split_whitespace().collect();
        let points = parse_points(line, &words[1..])?;
        if words[0] == "ground" {
            if ground.is_some() {
                return Err(parse_err(line, "duplicate ground line"));
            }
            let width = points.iter().max().map_or(0, |m| m + 1);
            if width == 0 {
                return Err(parse_err(line, "ground set must be nonempty"));
            }
            ground = Some(PointSet::from_points(width, points).unwrap());
            continue;
        }
        let g = ground.as_ref().ok_or_else(|| parse_err(line, "ground line must come first"))?;
        let set = PointSet::from_points(g.width(), points.iter().copied())
            .ok()
            .filter(|s| s.is_subset(g))
            .ok_or_else(|| parse_err(line, "point outside the ground set"))?;
        match words[0] {
            "generators" => generators = Some(set),
            "member" => members.push(set),
            "indep" => independents.push(set),
            other => return Err(parse_err(line, format!("unknown keyword {other:?}"))),
        }
    }
    let ground = ground.ok_or_else(|| parse_err(1, "missing ground line"))?;
    match (members.is_empty(), independents.is_empty()) {
        (false, true) => {
            let family = validate_moore_family(members, ground)?;
            Ok(MooreDocument::Family(match generators {
                Some(g) => family.with_generators(g)?,
                None => family,
            }))
        }
        (true, false) => {
            if generators.is_some() {
                return Err(parse_err(1, "generators apply to Moore families only"));
            }
            Ok(MooreDocument::Complex(SimplicialComplex::new(ground, independents)?))
        }
        (false, false) => Err(parse_err(1, "file mixes member and indep lines")),
        (true, true) => Err(parse_err(1, "no member or indep lines")),
    }
}
