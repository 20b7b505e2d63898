//! Text forms of manifolds.
//!
//! ```text
//! manifold := ['-'] (name | seifert | surgery) | chain
//! name     := 'L_' p '_' q | 'D_' p '_' q | ('T' | 'O' | 'I') '_' n
//! seifert  := '(' int ';' [leg (',' leg)*] ')'        leg := alpha '/' beta
//! surgery  := 'surgery(' knot ',' rational ')'
//! knot     := 'T(' int ',' int ')' ['^m']
//! rational := int ['/' int]
//! chain    := 'chain:' int (',' int)*
//! ```
//!
//! Whitespace may separate tokens. A leading `-` reverses orientation.
//! Chain weights may be given as `a_i >= 2` or as the framings `-a_i`.

use num_traits::{Signed, Zero};

use crate::seifert::{spherical_name, Family, SeifertInvariant, SphericalName};
use crate::surgery::{SurgeryDescription, TorusKnot};
use crate::{Error, Integer, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Manifold {
    Name(SphericalName),
    Seifert(SeifertInvariant),
    Surgery(SurgeryDescription),
    /// Framings of a linear plumbing, all negative.
    Chain(Vec<i64>),
}

impl Manifold {
    /// Catalog name of the manifold, when it has one.
    pub fn spherical_name(&self) -> Result<SphericalName, Error> {
        match self {
            Manifold::Name(n) => Ok(n.clone()),
            Manifold::Seifert(s) => spherical_name(s),
            Manifold::Surgery(d) => d.spherical_name(),
            Manifold::Chain(_) => Err(Error::domain("a chain is a lattice, not a named manifold")),
        }
    }
}

struct Cursor<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Self { s, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.s[self.pos..]
    }

    fn ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<(), Error> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{tok}'")))
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.pos, msg)
    }

    fn int(&mut self) -> Result<Integer, Error> {
        self.ws();
        let start = self.pos;
        let r = self.rest();
        let mut len = 0;
        if r.starts_with('-') || r.starts_with('+') {
            len = 1;
        }
        let digits = r[len..].chars().take_while(|c| c.is_ascii_digit()).count();
        if digits == 0 {
            return Err(self.error("expected an integer"));
        }
        len += digits;
        self.pos += len;
        self.s[start..self.pos]
            .trim_start_matches('+')
            .parse()
            .map_err(|_| Error::parse(start, "bad integer"))
    }

    fn rational(&mut self) -> Result<Rational, Error> {
        let start = self.pos;
        let n = self.int()?;
        let d = if self.eat("/") { self.int()? } else { Integer::from(1) };
        if d.is_zero() {
            return Err(Error::parse(start, "zero denominator"));
        }
        Ok(Rational::new(n, d))
    }

    fn end(&mut self) -> Result<(), Error> {
        self.ws();
        if self.pos == self.s.len() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }
}

pub fn parse_manifold(s: &str) -> Result<Manifold, Error> {
    let mut c = Cursor::new(s);
    if c.eat("chain:") {
        let mut w = vec![small(&mut c)?];
        while c.eat(",") {
            w.push(small(&mut c)?);
        }
        c.end()?;
        if w.iter().all(|&x| x > 0) {
            w.iter_mut().for_each(|x| *x = -*x);
        }
        return Ok(Manifold::Chain(w));
    }
    let mirror = c.eat("-");
    c.ws();
    let m = if c.rest().starts_with('(') {
        let inv = seifert(&mut c)?;
        Manifold::Seifert(if mirror { inv.reverse_orientation()? } else { inv })
    } else if c.rest().starts_with("surgery") {
        let d = surgery(&mut c)?;
        Manifold::Surgery(if mirror { d.reversed() } else { d })
    } else {
        let n = name(&mut c)?;
        Manifold::Name(if mirror { n.mirrored() } else { n })
    };
    c.end()?;
    Ok(m)
}

fn small(c: &mut Cursor) -> Result<i64, Error> {
    let start = c.pos;
    let v = c.int()?;
    i64::try_from(&v).map_err(|_| Error::parse(start, "weight out of range"))
}

pub fn parse_name(s: &str) -> Result<SphericalName, Error> {
    let mut c = Cursor::new(s);
    let mirror = c.eat("-");
    let n = name(&mut c)?;
    c.end()?;
    Ok(if mirror { n.mirrored() } else { n })
}

fn name(c: &mut Cursor) -> Result<SphericalName, Error> {
    c.ws();
    let start = c.pos;
    let fam = match c.rest().chars().next() {
        Some('L') => Family::C,
        Some('D') => Family::D,
        Some('T') => Family::T,
        Some('O') => Family::O,
        Some('I') => Family::I,
        _ => return Err(c.error("expected a name starting with L, D, T, O or I")),
    };
    c.pos += 1;
    if !c.rest().starts_with('_') {
        return Err(c.error("expected '_'"));
    }
    c.pos += 1;
    let a = c.int()?;
    let at = |e: Error| match e {
        Error::Parse { .. } => e,
        other => Error::parse(start, other.to_string()),
    };
    match fam {
        Family::C | Family::D => {
            if !c.rest().starts_with('_') {
                return Err(c.error("expected '_'"));
            }
            c.pos += 1;
            let b = c.int()?;
            let n = SphericalName {
                family: fam,
                first: a,
                second: b,
                mirror: false,
            };
            // validate eagerly so errors point at the name
            n.seifert().map_err(at)?;
            Ok(n)
        }
        _ => SphericalName::from_subscript(fam, &a).map_err(at),
    }
}

pub fn parse_seifert(s: &str) -> Result<SeifertInvariant, Error> {
    let mut c = Cursor::new(s);
    let mirror = c.eat("-");
    let inv = seifert(&mut c)?;
    c.end()?;
    if mirror {
        inv.reverse_orientation()
    } else {
        Ok(inv)
    }
}

fn seifert(c: &mut Cursor) -> Result<SeifertInvariant, Error> {
    let start = c.pos;
    c.expect("(")?;
    let b = c.int()?;
    c.expect(";")?;
    let mut legs = Vec::new();
    if !c.eat(")") {
        loop {
            let a = c.int()?;
            c.expect("/")?;
            let beta = c.int()?;
            legs.push((a, beta));
            if c.eat(")") {
                break;
            }
            c.expect(",")?;
        }
    }
    SeifertInvariant::new(b, legs).map_err(|e| Error::parse(start, e.to_string()))
}

pub fn parse_surgery(s: &str) -> Result<SurgeryDescription, Error> {
    let mut c = Cursor::new(s);
    let mirror = c.eat("-");
    let d = surgery(&mut c)?;
    c.end()?;
    Ok(if mirror { d.reversed() } else { d })
}

fn surgery(c: &mut Cursor) -> Result<SurgeryDescription, Error> {
    c.expect("surgery")?;
    c.expect("(")?;
    let kpos = c.pos;
    c.expect("T")?;
    c.expect("(")?;
    let p = c.int()?;
    c.expect(",")?;
    let q = c.int()?;
    c.expect(")")?;
    let mirror = c.eat("^m");
    let knot = TorusKnot::new(p.abs(), q.abs(), mirror)
        .map_err(|e| Error::parse(kpos, e.to_string()))?;
    c.expect(",")?;
    let r = c.rational()?;
    c.expect(")")?;
    Ok(SurgeryDescription::new(knot, r))
}

pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let mut c = Cursor::new(s);
    let r = c.rational()?;
    c.end()?;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat};

    #[test]
    fn names() {
        assert_eq!(parse_name("I_49").unwrap(), SphericalName::catalog(Family::I, 3, 19));
        assert_eq!(parse_name("O_35").unwrap(), SphericalName::catalog(Family::O, 4, 11));
        assert_eq!(parse_name("-T_27").unwrap(), SphericalName::catalog(Family::T, 6, 3).mirrored());
        assert_eq!(parse_name("L_9_2").unwrap(), SphericalName::lens(9, 2));
        assert_eq!(parse_name("D_7_3").unwrap(), SphericalName::prism(7, 3));
        for n in ["I_49", "-O_35", "L_9_2", "D_7_3", "T_15"] {
            assert_eq!(parse_name(n).unwrap().to_string(), n);
        }
    }

    #[test]
    fn name_errors_have_positions() {
        match parse_name("X_3") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 0),
            e => panic!("{e:?}"),
        }
        match parse_name("I_48") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 0),
            e => panic!("{e:?}"),
        }
        match parse_name("T_15 x") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            e => panic!("{e:?}"),
        }
        assert!(parse_name("L_9_3").is_err());
        assert!(parse_name("D_3_1").is_err());
    }

    #[test]
    fn seifert_forms() {
        let y = parse_seifert("(3; 2/1, 3/2, 5/1)").unwrap();
        assert_eq!(y, SeifertInvariant::from_i64(3, &[(2, 1), (3, 2), (5, 1)]).unwrap());
        assert_eq!(parse_seifert("(1;)").unwrap(), SeifertInvariant::from_i64(1, &[]).unwrap());
        assert_eq!(parse_seifert(&y.to_string()).unwrap(), y);
        match parse_seifert("(3; 2/1, 3/2 5/1)") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 13),
            e => panic!("{e:?}"),
        }
        assert!(parse_seifert("(3; 2/2)").is_err());
        let m = parse_manifold("(3; 2/1, 3/2, 5/1)").unwrap();
        assert_eq!(m.spherical_name().unwrap(), SphericalName::catalog(Family::I, 3, 19));
    }

    #[test]
    fn surgeries() {
        let d = parse_surgery("surgery(T(2,3), 77/12)").unwrap();
        assert_eq!(d.coefficient, rat(77, 12));
        assert!(!d.knot.mirror);
        assert_eq!(d.to_string(), "surgery(T(2,3), 77/12)");
        let m = parse_surgery("surgery(T(2,3)^m, -49/9)").unwrap();
        assert!(m.knot.mirror);
        assert_eq!(parse_surgery(&m.to_string()).unwrap(), m);
        assert!(parse_surgery("-surgery(T(2,3), 5)").unwrap().negated);
        assert!(parse_surgery("surgery(T(2,4), 5)").is_err());
        assert!(parse_surgery("surgery(T(2,3), 5/0)").is_err());
    }

    #[test]
    fn chains() {
        assert_eq!(parse_manifold("chain:2,2,2,3").unwrap(), Manifold::Chain(vec![-2, -2, -2, -3]));
        assert_eq!(parse_manifold("chain:-2, -5").unwrap(), Manifold::Chain(vec![-2, -5]));
        assert!(parse_manifold("chain:").is_err());
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), Rational::from_integer(int(7)));
        assert!(parse_rational("7/").is_err());
    }
}
