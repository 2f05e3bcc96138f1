//! Descriptor surface syntax.
//!
//! ```text
//! group := term ("x" term)*
//! term  := "Ab(" prime ";" int ("," int)* ")"
//!        | "ES(" prime ";" m ";" ("expP" | "expP2" | "D8" | "Q8") ")"
//!        | "GES(" prime ";" m ";" ("split" | "central") ";" rank ")"
//!        | "Zp(" prime "," exponent ")"
//!        | "1"
//! ```
//!
//! Whitespace-insensitive. `Ab` exponents are cyclic-factor exponents of
//! `p`; `Zp(p,e)` is the single cyclic group of order `p^e`; `1` is the
//! trivial group. `GES(p;1;split;r)` denotes the capable representative of
//! its shape (exponent-`p` times elementary for odd `p`, dihedral times
//! elementary for `p = 2`); the other split variants are written as
//! explicit products such as `ES(3;1;expP2) x Ab(3;1,1)`.
//!
//! Parsing canonicalizes: products flatten and all abelian terms merge into
//! one trailing factor, so parse -> print -> parse is the identity on the
//! canonical form.

use baer::abelian::FinAbelian;
use baer::pgroups::{EsVariant, GesCenter, GroupDescriptor, PGroupError};
use baer::witt::is_prime;
use std::fmt;

/// Parse failures, with enough position/token context to point at the
/// offending input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    Syntax { offset: usize, message: String },
    Semantic { token: String, message: String },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { offset, message } => {
                write!(f, "syntax error at byte {offset}: {message}")
            }
            ParseError::Semantic { token, message } => {
                write!(f, "error at \"{token}\": {message}")
            }
        }
    }
}

impl std::error::Error for ParseError {}

struct Cursor<'s> {
    src: &'s [u8],
    pos: usize,
}

impl<'s> Cursor<'s> {
    fn new(src: &'s str) -> Self {
        Cursor {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, ch: u8) -> Result<(), ParseError> {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&ch) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(format!("expected '{}'", ch as char)))
        }
    }

    fn syntax(&self, message: String) -> ParseError {
        ParseError::Syntax {
            offset: self.pos,
            message,
        }
    }

    fn ident(&mut self) -> Result<&'s str, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self
            .src
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_alphanumeric())
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.syntax("expected a name".into()));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn number(&mut self, what: &str) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.syntax(format!("expected {what}")));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii")
            .parse()
            .map_err(|_| ParseError::Semantic {
                token: String::from_utf8_lossy(&self.src[start..self.pos]).into_owned(),
                message: format!("{what} out of range"),
            })
    }

    fn prime(&mut self) -> Result<u64, ParseError> {
        let p = self.number("a prime")?;
        if !is_prime(p) {
            return Err(ParseError::Semantic {
                token: p.to_string(),
                message: "not prime".into(),
            });
        }
        Ok(p)
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.src.len()
    }
}

fn semantic_from(err: PGroupError, token: &str) -> ParseError {
    ParseError::Semantic {
        token: token.to_string(),
        message: err.to_string(),
    }
}

/// Parse a descriptor into canonical form.
pub fn parse(text: &str) -> Result<GroupDescriptor, ParseError> {
    let mut cur = Cursor::new(text);
    let mut terms = vec![term(&mut cur)?];
    loop {
        if cur.at_end() {
            break;
        }
        match cur.peek() {
            Some(b'x') => {
                cur.pos += 1;
                terms.push(term(&mut cur)?);
            }
            _ => return Err(cur.syntax("expected 'x' between terms or end of input".into())),
        }
    }
    Ok(canonicalize(terms))
}

fn term(cur: &mut Cursor) -> Result<GroupDescriptor, ParseError> {
    if cur.peek() == Some(b'1') {
        cur.pos += 1;
        return Ok(GroupDescriptor::Abelian(FinAbelian::trivial()));
    }
    let name = cur.ident()?;
    match name {
        "Ab" => {
            cur.expect(b'(')?;
            let p = cur.prime()?;
            cur.expect(b';')?;
            let mut exps = vec![exponent_u32(cur)?];
            while cur.peek() == Some(b',') {
                cur.pos += 1;
                exps.push(exponent_u32(cur)?);
            }
            cur.expect(b')')?;
            Ok(GroupDescriptor::Abelian(FinAbelian::from_prime_exponents(
                p, &exps,
            )))
        }
        "ES" => {
            cur.expect(b'(')?;
            let p = cur.prime()?;
            cur.expect(b';')?;
            let m = exponent_u32(cur)?;
            cur.expect(b';')?;
            let vtoken = cur.ident()?;
            let variant = match vtoken {
                "expP" => EsVariant::ExpP,
                "expP2" => EsVariant::ExpP2,
                "D8" => EsVariant::D8,
                "Q8" => EsVariant::Q8,
                other => {
                    return Err(ParseError::Semantic {
                        token: other.to_string(),
                        message: "unknown variant (expP, expP2, D8, Q8)".into(),
                    })
                }
            };
            cur.expect(b')')?;
            GroupDescriptor::extra_special(p, m, variant)
                .map_err(|e| semantic_from(e, vtoken))
        }
        "GES" => {
            cur.expect(b'(')?;
            let p = cur.prime()?;
            cur.expect(b';')?;
            let m = exponent_u32(cur)?;
            cur.expect(b';')?;
            let ctoken = cur.ident()?;
            cur.expect(b';')?;
            let rank = cur.number("a rank")?;
            let center = match ctoken {
                "split" => GesCenter::Split {
                    complement_rank: rank,
                },
                "central" => GesCenter::Central {
                    complement_rank: rank,
                },
                other => {
                    return Err(ParseError::Semantic {
                        token: other.to_string(),
                        message: "unknown center shape (split, central)".into(),
                    })
                }
            };
            cur.expect(b')')?;
            GroupDescriptor::gen_extra_special(p, m, center)
                .map_err(|e| semantic_from(e, ctoken))
        }
        "Zp" => {
            cur.expect(b'(')?;
            let p = cur.prime()?;
            cur.expect(b',')?;
            let e = exponent_u32(cur)?;
            cur.expect(b')')?;
            Ok(GroupDescriptor::Abelian(FinAbelian::cyclic(p, e)))
        }
        other => Err(ParseError::Semantic {
            token: other.to_string(),
            message: "unknown term (Ab, ES, GES, Zp, 1)".into(),
        }),
    }
}

fn exponent_u32(cur: &mut Cursor) -> Result<u32, ParseError> {
    let n = cur.number("an exponent")?;
    u32::try_from(n).map_err(|_| ParseError::Semantic {
        token: n.to_string(),
        message: "exponent out of range".into(),
    })
}

/// Flatten products and merge abelian terms into one trailing factor.
pub fn canonicalize(terms: Vec<GroupDescriptor>) -> GroupDescriptor {
    let mut atoms: Vec<GroupDescriptor> = Vec::new();
    let mut abelian = FinAbelian::trivial();
    fn walk(g: GroupDescriptor, atoms: &mut Vec<GroupDescriptor>, ab: &mut FinAbelian) {
        match g {
            GroupDescriptor::Abelian(a) => *ab = ab.direct_sum(&a),
            GroupDescriptor::Product(parts) => {
                for p in parts {
                    walk(p, atoms, ab);
                }
            }
            other => atoms.push(other),
        }
    }
    for t in terms {
        walk(t, &mut atoms, &mut abelian);
    }
    if !abelian.is_trivial() || atoms.is_empty() {
        atoms.push(GroupDescriptor::Abelian(abelian));
    }
    if atoms.len() == 1 {
        atoms.pop().expect("one atom")
    } else {
        GroupDescriptor::Product(atoms)
    }
}

/// Canonical surface form of a descriptor; `parse` of the result returns an
/// equal descriptor.
pub fn descriptor_to_string(g: &GroupDescriptor) -> String {
    match g {
        GroupDescriptor::Abelian(a) => abelian_to_string(a),
        GroupDescriptor::ExtraSpecial(es) => {
            format!("ES({};{};{})", es.p(), es.m(), es.variant())
        }
        GroupDescriptor::GenExtraSpecial(ges) => {
            let (shape, rank) = match ges.center() {
                GesCenter::Split { complement_rank } => ("split", complement_rank),
                GesCenter::Central { complement_rank } => ("central", complement_rank),
            };
            format!("GES({};{};{};{})", ges.p(), ges.m(), shape, rank)
        }
        GroupDescriptor::Product(parts) => parts
            .iter()
            .map(descriptor_to_string)
            .collect::<Vec<_>>()
            .join(" x "),
    }
}

fn abelian_to_string(a: &FinAbelian) -> String {
    if a.is_trivial() {
        return "1".to_string();
    }
    let mut pieces = Vec::new();
    for p in a.primes() {
        let mut exps: Vec<String> = Vec::new();
        for (e, mult) in a.prime_exponent_runs(p) {
            let count = u64::try_from(&mult).expect("display rank fits u64");
            exps.extend(std::iter::repeat_n(e.to_string(), count as usize));
        }
        pieces.push(format!("Ab({p};{})", exps.join(",")));
    }
    pieces.join(" x ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_extra_special() {
        let g = parse("ES(3;1;expP)").unwrap();
        assert_eq!(descriptor_to_string(&g), "ES(3;1;expP)");
    }

    #[test]
    fn parses_products_and_merges_abelians() {
        let g = parse("ES(3;1;expP) x Ab(3;1,1)").unwrap();
        assert_eq!(descriptor_to_string(&g), "ES(3;1;expP) x Ab(3;1,1)");
        let g = parse("Ab(3;1) x ES(3;1;expP) x Zp(3,1)").unwrap();
        assert_eq!(descriptor_to_string(&g), "ES(3;1;expP) x Ab(3;1,1)");
        let g = parse("Zp(2,2) x Ab(3;1) x Ab(2;1)").unwrap();
        assert_eq!(descriptor_to_string(&g), "Ab(2;2,1) x Ab(3;1)");
    }

    #[test]
    fn whitespace_is_insignificant() {
        let a = parse("ES(3;1;expP)xAb(3;1,1)").unwrap();
        let b = parse("  ES( 3 ; 1 ; expP )  x  Ab( 3 ; 1 , 1 )").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn semantic_errors_carry_the_token() {
        match parse("ES(3;1;D8)") {
            Err(ParseError::Semantic { token, message }) => {
                assert_eq!(token, "D8");
                assert_eq!(message, "D8 requires p=2");
            }
            other => panic!("expected semantic error, got {other:?}"),
        }
        match parse("Ab(6;1)") {
            Err(ParseError::Semantic { token, message }) => {
                assert_eq!(token, "6");
                assert_eq!(message, "not prime");
            }
            other => panic!("{other:?}"),
        }
        match parse("ES(2;1;expP)") {
            Err(ParseError::Semantic { message, .. }) => {
                assert_eq!(message, "expP requires odd p");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_byte_offsets() {
        match parse("Ab(2;1") {
            Err(ParseError::Syntax { offset, .. }) => assert_eq!(offset, 6),
            other => panic!("{other:?}"),
        }
        match parse("Ab(2;1) y Ab(2;1)") {
            Err(ParseError::Syntax { offset, .. }) => assert_eq!(offset, 8),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn trivial_group_round_trips() {
        let g = parse("1").unwrap();
        assert_eq!(descriptor_to_string(&g), "1");
        let g = parse("Ab(2;0)").unwrap();
        assert_eq!(descriptor_to_string(&g), "1");
        let g = parse("1 x ES(5;2;expP2)").unwrap();
        assert_eq!(descriptor_to_string(&g), "ES(5;2;expP2)");
    }

    #[test]
    fn print_parse_round_trip() {
        for text in [
            "ES(3;1;expP)",
            "GES(2;1;central;3)",
            "GES(7;2;split;0)",
            "Ab(2;3,1) x Ab(5;2)",
            "ES(2;1;Q8) x Ab(2;1,1,1)",
            "ES(3;2;expP2) x GES(3;1;central;1) x Ab(3;2)",
        ] {
            let g = parse(text).unwrap();
            let s = descriptor_to_string(&g);
            let g2 = parse(&s).unwrap();
            assert_eq!(g, g2, "{text} -> {s}");
            assert_eq!(descriptor_to_string(&g2), s);
        }
    }
}
