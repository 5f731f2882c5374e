//! The group and G-set specification mini-language.
//!
//! ```text
//! group := atom ("x" atom)*
//! atom  := ("C" | "D" | "S" | "A") INT | "Q8" | "perm:" INT ":[" gens "]"
//! gens  := cycles (";" cycles)*        cycles := ("(" INT* ")")+
//! gset  := "point" | "regular" | "cosets:" INT | "union(" gset ("," gset)* ")"
//! ```

use std::fmt;
use std::sync::Arc;

use burnside_core::families::{self, Generators};
use burnside_core::group::FiniteGroup;
use burnside_core::gset::GSet;
use burnside_core::perm::Perm;
use burnside_core::subgroup::SubgroupLattice;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    /// Dihedral of order `2n`.
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Quaternion,
    /// Degree and generators, each a list of cycles.
    Perm(usize, Vec<Vec<Vec<usize>>>),
    Product(Box<GroupSpec>, Box<GroupSpec>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GSetSpec {
    Point,
    Regular,
    Cosets(usize),
    Union(Vec<GSetSpec>),
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { offset: self.pos, message: message.into() })
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        if self.eat(token) {
            Ok(())
        } else {
            self.error(format!("expected '{token}'"))
        }
    }

    fn skip_spaces(&mut self) {
        while self.peek() == Some(' ') {
            self.pos += 1;
        }
    }

    fn int(&mut self) -> Result<usize, ParseError> {
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return self.error("expected an integer");
        }
        let start = self.pos;
        let value = self.rest()[..digits].parse().map_err(|_| ParseError { offset: start, message: "integer too large".into() })?;
        self.pos += digits;
        Ok(value)
    }

    fn end(&self) -> Result<(), ParseError> {
        if self.pos == self.text.len() {
            Ok(())
        } else {
            self.error("unexpected trailing input")
        }
    }
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<GroupSpec, ParseError> {
        let mut c = Cursor::new(text);
        let mut spec = parse_atom(&mut c)?;
        while c.eat("x") {
            let right = parse_atom(&mut c)?;
            spec = GroupSpec::Product(Box::new(spec), Box::new(right));
        }
        c.end()?;
        Ok(spec)
    }

    pub fn generators(&self) -> Result<Generators, burnside_core::Error> {
        Ok(match self {
            GroupSpec::Cyclic(n) => families::cyclic_generators(*n),
            GroupSpec::Dihedral(n) => families::dihedral_generators(*n),
            GroupSpec::Symmetric(n) => families::symmetric_generators(*n),
            GroupSpec::Alternating(n) => families::alternating_generators(*n),
            GroupSpec::Quaternion => families::quaternion_generators(),
            GroupSpec::Perm(degree, gens) => Generators {
                degree: *degree,
                perms: gens.iter().map(|cycles| Perm::from_cycles(*degree, cycles)).collect::<Result<_, _>>()?,
            },
            GroupSpec::Product(a, b) => a.generators()?.product(&b.generators()?),
        })
    }

    pub fn build(&self, max_order: usize) -> Result<Arc<FiniteGroup>, burnside_core::Error> {
        Ok(Arc::new(self.generators()?.build(max_order)?))
    }
}

fn parse_atom(c: &mut Cursor) -> Result<GroupSpec, ParseError> {
    let start = c.pos;
    if c.eat("perm:") {
        let degree = c.int()?;
        if degree == 0 {
            return Err(ParseError { offset: start + 5, message: "degree must be at least 1".into() });
        }
        c.expect(":[")?;
        let mut gens = Vec::new();
        loop {
            gens.push(parse_cycles(c, degree)?);
            if !c.eat(";") {
                break;
            }
        }
        c.expect("]")?;
        return Ok(GroupSpec::Perm(degree, gens));
    }
    if c.eat("Q8") {
        return Ok(GroupSpec::Quaternion);
    }
    let family = match c.peek() {
        Some('C') => GroupSpec::Cyclic as fn(usize) -> GroupSpec,
        Some('D') => GroupSpec::Dihedral,
        Some('S') => GroupSpec::Symmetric,
        Some('A') => GroupSpec::Alternating,
        _ => return c.error("expected a group name (C, D, S, A, Q8 or perm:)"),
    };
    c.pos += 1;
    let n_at = c.pos;
    let n = c.int()?;
    if n == 0 {
        return Err(ParseError { offset: n_at, message: "index must be at least 1".into() });
    }
    Ok(family(n))
}

fn parse_cycles(c: &mut Cursor, degree: usize) -> Result<Vec<Vec<usize>>, ParseError> {
    let mut cycles = Vec::new();
    if c.peek() != Some('(') {
        return c.error("expected '('");
    }
    while c.eat("(") {
        let mut cycle = Vec::new();
        c.skip_spaces();
        while c.peek() != Some(')') {
            let at = c.pos;
            let p = c.int()?;
            if p >= degree {
                return Err(ParseError { offset: at, message: format!("point {p} out of range for degree {degree}") });
            }
            if cycle.contains(&p) {
                return Err(ParseError { offset: at, message: format!("point {p} repeated in a cycle") });
            }
            cycle.push(p);
            c.skip_spaces();
        }
        c.expect(")")?;
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
    }
    Ok(cycles)
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::Alternating(n) => write!(f, "A{n}"),
            GroupSpec::Quaternion => write!(f, "Q8"),
            GroupSpec::Perm(degree, gens) => {
                write!(f, "perm:{degree}:[")?;
                for (i, cycles) in gens.iter().enumerate() {
                    if i > 0 {
                        write!(f, ";")?;
                    }
                    if cycles.is_empty() {
                        write!(f, "()")?;
                    }
                    for cycle in cycles {
                        let pts: Vec<String> = cycle.iter().map(usize::to_string).collect();
                        write!(f, "({})", pts.join(" "))?;
                    }
                }
                write!(f, "]")
            }
            GroupSpec::Product(a, b) => write!(f, "{a}x{b}"),
        }
    }
}

impl GSetSpec {
    pub fn parse(text: &str) -> Result<GSetSpec, ParseError> {
        let mut c = Cursor::new(text);
        let spec = parse_gset(&mut c)?;
        c.end()?;
        Ok(spec)
    }

    /// Builds the G-set; the error is the first unknown subgroup class id.
    pub fn build(&self, lattice: &SubgroupLattice) -> Result<GSet, usize> {
        let g = lattice.group();
        Ok(match self {
            GSetSpec::Point => GSet::point(g),
            GSetSpec::Regular => GSet::regular(g),
            GSetSpec::Cosets(id) if *id < lattice.len() => GSet::cosets(&lattice.class(*id).representative),
            GSetSpec::Cosets(id) => return Err(*id),
            GSetSpec::Union(parts) => {
                let parts = parts.iter().map(|p| p.build(lattice)).collect::<Result<Vec<_>, _>>()?;
                GSet::disjoint_union(&parts).expect("nonempty union over one group")
            }
        })
    }
}

fn parse_gset(c: &mut Cursor) -> Result<GSetSpec, ParseError> {
    if c.eat("point") {
        Ok(GSetSpec::Point)
    } else if c.eat("regular") {
        Ok(GSetSpec::Regular)
    } else if c.eat("cosets:") {
        Ok(GSetSpec::Cosets(c.int()?))
    } else if c.eat("union(") {
        let mut parts = vec![parse_gset(c)?];
        while c.eat(",") {
            parts.push(parse_gset(c)?);
        }
        c.expect(")")?;
        Ok(GSetSpec::Union(parts))
    } else {
        c.error("expected 'point', 'regular', 'cosets:<id>' or 'union(...)'")
    }
}

impl fmt::Display for GSetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GSetSpec::Point => write!(f, "point"),
            GSetSpec::Regular => write!(f, "regular"),
            GSetSpec::Cosets(id) => write!(f, "cosets:{id}"),
            GSetSpec::Union(parts) => {
                let parts: Vec<String> = parts.iter().map(ToString::to_string).collect();
                write!(f, "union({})", parts.join(","))
            }
        }
    }
}
