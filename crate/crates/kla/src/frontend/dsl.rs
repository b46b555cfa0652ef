use std::collections::HashMap;

use kla_core::arith::{Field, FieldSpec, PrimeField};
use kla_core::free_lie::GeneratorSet;
use kla_core::presentation::{LieExpr, Presentation};
use kla_core::Error as CoreError;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::lexer::{tokenize, Cursor, Tok};
use super::{ParseError, Pos};

/// A relation as written, with its position and degree.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub expr: LieExpr,
    pub pos: Pos,
    pub degree: u32,
}

/// A parsed presentation, not yet evaluated over a field.
#[derive(Clone, Debug, PartialEq)]
pub struct PresentationSource {
    pub name: String,
    pub field: FieldSpec,
    pub generators: Vec<(String, u32)>,
    pub relations: Vec<Relation>,
}

impl PresentationSource {
    pub fn generator_set(&self) -> GeneratorSet {
        GeneratorSet::new(self.generators.iter().cloned()).expect("checked while parsing")
    }

    /// Evaluates the relations over `field`.
    pub fn build<F: Field>(&self, field: F) -> Result<Presentation<F>, ParseError> {
        let gens = self.generator_set();
        let mut fl = kla_core::free_lie::FreeLie::new(field.clone(), gens.clone());
        let mut rels = Vec::with_capacity(self.relations.len());
        for r in &self.relations {
            let e = r.expr.eval(&mut fl).map_err(|e| relation_error(r.pos, e))?;
            rels.push(e);
        }
        Presentation::new(self.name.clone(), field, gens, rels).map_err(|e| relation_error(Pos { line: 1, col: 1 }, e))
    }
}

fn relation_error(pos: Pos, e: CoreError) -> ParseError {
    match e {
        CoreError::Inhomogeneous { first, second } => ParseError::Inhomogeneous { pos, first, second },
        other => ParseError::InvalidRelation { pos, msg: other.to_string() },
    }
}

struct Parser<'a> {
    cur: Cursor,
    gens: HashMap<String, u32>,
    _text: &'a str,
}

/// Parses the presentation language; see the module docs for the grammar.
pub fn parse_presentation(text: &str) -> Result<PresentationSource, ParseError> {
    let mut p = Parser {
        cur: Cursor::new(tokenize(text)?, text),
        gens: HashMap::new(),
        _text: text,
    };
    p.cur.keyword("algebra")?;
    let (name, _) = p.cur.name()?;
    p.cur.expect(Tok::Newline)?;
    let field = if p.cur.is_keyword("field") {
        let f = p.field()?;
        p.cur.expect(Tok::Newline)?;
        f
    } else {
        FieldSpec::Rationals
    };
    p.cur.keyword("generators")?;
    let mut generators = Vec::new();
    loop {
        let (g, pos) = p.cur.name()?;
        p.cur.expect(Tok::Colon)?;
        let (d, dpos) = p.cur.int()?;
        let d: u32 = d
            .parse()
            .ok()
            .filter(|&d| d > 0)
            .ok_or_else(|| ParseError::new(dpos, "generator degree must be a positive integer"))?;
        if p.gens.insert(g.clone(), d).is_some() {
            return Err(ParseError::DuplicateGenerator { pos, name: g });
        }
        generators.push((g, d));
        if p.cur.peek() == Some(&Tok::Comma) {
            p.cur.next();
        } else {
            break;
        }
    }
    p.cur.expect(Tok::Newline)?;
    p.cur.keyword("relations")?;
    let mut relations = Vec::new();
    if p.cur.peek() != Some(&Tok::Newline) {
        loop {
            let pos = p.cur.pos();
            let (expr, degree) = p.expr()?;
            if degree < 2 {
                return Err(ParseError::InvalidRelation {
                    pos,
                    msg: format!("relation of degree {degree}; relations need degree at least 2"),
                });
            }
            relations.push(Relation { expr, pos, degree });
            if p.cur.peek() == Some(&Tok::Semi) {
                p.cur.next();
                if p.cur.peek() == Some(&Tok::Newline) {
                    p.cur.next();
                }
            } else {
                break;
            }
        }
    }
    p.cur.expect(Tok::Newline)?;
    if !p.cur.at_end() {
        return Err(p.cur.unexpected());
    }
    Ok(PresentationSource {
        name,
        field,
        generators,
        relations,
    })
}

/// Parses one expression over the given generators (used for command-line
/// arguments). Returns the expression and its degree.
pub fn parse_expression(text: &str, gens: &GeneratorSet) -> Result<(LieExpr, u32), ParseError> {
    let mut p = Parser {
        cur: Cursor::new(tokenize(text)?, text),
        gens: gens.names().iter().cloned().zip(gens.degrees().iter().copied()).collect(),
        _text: text,
    };
    let out = p.expr()?;
    p.cur.expect(Tok::Newline)?;
    if !p.cur.at_end() {
        return Err(p.cur.unexpected());
    }
    Ok(out)
}

impl Parser<'_> {
    fn field(&mut self) -> Result<FieldSpec, ParseError> {
        self.cur.keyword("field")?;
        let (kind, pos) = self.cur.name()?;
        match kind.as_str() {
            "rational" => Ok(FieldSpec::Rationals),
            "gf" => {
                self.cur.expect(Tok::LParen)?;
                let (p, ppos) = self.cur.int()?;
                self.cur.expect(Tok::RParen)?;
                let p: u64 = p.parse().map_err(|_| ParseError::InvalidField {
                    pos: ppos,
                    msg: format!("modulus {p} is too large"),
                })?;
                if p == 2 {
                    return Err(ParseError::CharacteristicTwo { pos: ppos });
                }
                PrimeField::new(p).map_err(|e| ParseError::InvalidField { pos: ppos, msg: e.to_string() })?;
                Ok(FieldSpec::Prime(p))
            }
            other => Err(ParseError::InvalidField {
                pos,
                msg: format!("unknown field `{other}` (expected `rational` or `gf(p)`)"),
            }),
        }
    }

    fn expr(&mut self) -> Result<(LieExpr, u32), ParseError> {
        let mut terms = Vec::new();
        let mut degree = None;
        let mut negative = match self.cur.peek() {
            Some(Tok::Minus) => {
                self.cur.next();
                true
            }
            Some(Tok::Plus) => {
                self.cur.next();
                false
            }
            _ => false,
        };
        loop {
            let pos = self.cur.pos();
            let (num, den, atom, d) = self.term()?;
            match degree {
                None => degree = Some(d),
                Some(first) if first != d => return Err(ParseError::Inhomogeneous { pos, first, second: d }),
                _ => {}
            }
            terms.push((if negative { -num } else { num }, den, atom));
            match self.cur.peek() {
                Some(Tok::Plus) => negative = false,
                Some(Tok::Minus) => negative = true,
                _ => break,
            }
            self.cur.next();
        }
        let degree = degree.expect("at least one term");
        if terms.len() == 1 && terms[0].0.is_one() && terms[0].1.is_one() {
            return Ok((terms.pop().expect("one term").2, degree));
        }
        Ok((LieExpr::Sum(terms), degree))
    }

    fn term(&mut self) -> Result<(BigInt, BigInt, LieExpr, u32), ParseError> {
        let (num, den) = if let Some(Tok::Int(_)) = self.cur.peek() {
            let (n, _) = self.cur.int()?;
            let num: BigInt = n.parse().expect("digits");
            let den = if self.cur.peek() == Some(&Tok::Slash) {
                self.cur.next();
                let (d, dpos) = self.cur.int()?;
                let den: BigInt = d.parse().expect("digits");
                if den.is_zero() {
                    return Err(ParseError::new(dpos, "zero denominator"));
                }
                den
            } else {
                BigInt::one()
            };
            self.cur.expect(Tok::Star)?;
            (num, den)
        } else {
            (BigInt::one(), BigInt::one())
        };
        let (atom, d) = self.atom()?;
        Ok((num, den, atom, d))
    }

    fn atom(&mut self) -> Result<(LieExpr, u32), ParseError> {
        let pos = self.cur.pos();
        match self.cur.peek() {
            Some(Tok::Name(_)) => {
                let (n, pos) = self.cur.name()?;
                match self.gens.get(&n) {
                    Some(&d) => Ok((LieExpr::Gen(n), d)),
                    None => Err(ParseError::UnknownGenerator { pos, name: n }),
                }
            }
            Some(Tok::LBrack) => {
                self.cur.next();
                let (a, da) = self.expr()?;
                if self.cur.peek() != Some(&Tok::Comma) {
                    return Err(self.bracket_error("expected `,` between the two entries"));
                }
                self.cur.next();
                let (b, db) = self.expr()?;
                if self.cur.peek() != Some(&Tok::RBrack) {
                    return Err(self.bracket_error("expected `]`"));
                }
                self.cur.next();
                Ok((LieExpr::bracket(a, b), da + db))
            }
            Some(Tok::RBrack) | Some(Tok::Comma) => Err(ParseError::MalformedBracket {
                pos,
                msg: "missing bracket entry".into(),
            }),
            _ => Err(self.cur.unexpected()),
        }
    }

    fn bracket_error(&self, msg: &str) -> ParseError {
        let found = self.cur.peek().map_or("end of input".to_string(), Tok::describe);
        ParseError::MalformedBracket {
            pos: self.cur.pos(),
            msg: format!("{msg}, found {found}"),
        }
    }
}

fn sanitize(name: &str) -> String {
    let s: String = name.chars().map(|c| if c.is_alphanumeric() || c == '_' { c } else { '_' }).collect();
    let s = s.trim_matches('_').to_string();
    match s.chars().next() {
        None => "L".into(),
        Some(c) if c.is_ascii_digit() => format!("L{s}"),
        _ => s,
    }
}

/// Writes a presentation in the input language; parsing the result gives
/// back the same generators and relations.
pub fn render_presentation<F: Field>(p: &Presentation<F>) -> String {
    let g = p.generators();
    let gens: Vec<String> = (0..g.len()).map(|i| format!("{}:{}", g.name(i), g.degree(i))).collect();
    let rels: Vec<String> = p.relations().iter().map(|r| r.render(p.field(), g)).collect();
    let mut out = format!("algebra {}\n", sanitize(p.name()));
    if let FieldSpec::Prime(q) = p.field().spec() {
        out.push_str(&format!("field gf({q})\n"));
    }
    out.push_str(&format!("generators {}\n", gens.join(", ")));
    if rels.is_empty() {
        out.push_str("relations\n");
    } else {
        out.push_str(&format!("relations {}\n", rels.join("; ")));
    }
    out
}
