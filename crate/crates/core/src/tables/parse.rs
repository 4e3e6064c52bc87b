//! Plain-text notation for formal expressions.
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := [rational] factor ["*" perms]
//! factor  := "[" symbol "," symbol "]" | chain | "(" chain ")"
//! chain   := symbol ("o" ["_"] digits symbol)*
//! perms   := perm | "{" perm ("+" perm)* "}"
//! perm    := "id" | ("(" digits ")")+
//! symbol  := ("m" | "n") "^" digits "_" (digit | "{" digits ("," digits)* "}")
//! ```
//!
//! `[f, g]` is the insertion bracket. A chain `f o_i g o_j h` nests to the left.
//! Unary outer maps may drop the index: `f o g`.

use num_traits::One;

use super::expr::{koszul_unit, FormalExpr, MapSymbol, Tree};
use crate::error::{Error, Result};
use crate::tensor::{Permutation, Rational};

/// How a cycle written after a term acts on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PermReading {
    /// `(f)∘σ` is the map action by `σ` itself.
    #[default]
    Direct,
    /// `(f)∘σ` is the map action by `σ⁻¹`.
    Inverse,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    reading: PermReading,
}

fn err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Parses `text` into an expression of the given arity and degree.
pub fn parse_expr(text: &str, reading: PermReading) -> Result<FormalExpr> {
    let mut p = Parser {
        src: text,
        pos: 0,
        reading,
    };
    let terms = p.expr()?;
    p.ws();
    if p.pos != p.src.len() {
        return Err(err(format!(
            "unexpected input at {}: {:?}",
            p.pos,
            p.rest()
        )));
    }
    let first = terms
        .first()
        .ok_or_else(|| err("empty expression"))?
        .1
        .clone();
    let mut e = FormalExpr::zero(first.arity(), first.degree());
    for (c, tree, perm) in terms {
        e.push(c, tree, perm)?;
    }
    Ok(e)
}

type RawTerm = (Rational, Tree, Permutation);

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn ws(&mut self) {
        while let Some(c) = self.rest().chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(err(format!(
                "expected {c:?} at {}: {:?}",
                self.pos,
                self.rest()
            )))
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.ws();
        let len = self
            .rest()
            .chars()
            .take_while(|c| c.is_ascii_digit())
            .count();
        if len == 0 {
            return Err(err(format!("expected a number at {}", self.pos)));
        }
        let n = self.rest()[..len]
            .parse()
            .map_err(|_| err("number too large"))?;
        self.pos += len;
        Ok(n)
    }

    fn digit(&mut self) -> Result<usize> {
        self.ws();
        let c = self
            .rest()
            .chars()
            .next()
            .filter(|c| c.is_ascii_digit())
            .ok_or_else(|| err(format!("expected a digit at {}", self.pos)))?;
        self.pos += 1;
        Ok(c as usize - '0' as usize)
    }

    fn expr(&mut self) -> Result<Vec<RawTerm>> {
        let mut out = Vec::new();
        let mut neg = false;
        if self.eat('-') {
            neg = true;
        } else {
            self.eat('+');
        }
        loop {
            for (c, t, p) in self.term()? {
                out.push((if neg { -c } else { c }, t, p));
            }
            if self.eat('+') {
                neg = false;
            } else if self.eat('-') {
                neg = true;
            } else {
                return Ok(out);
            }
        }
    }

    fn coefficient(&mut self) -> Result<Rational> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                let d = if self.eat('/') { self.number()? } else { 1 };
                if d == 0 {
                    return Err(err("zero denominator"));
                }
                Ok(Rational::new((n as i64).into(), (d as i64).into()))
            }
            _ => Ok(Rational::one()),
        }
    }

    fn term(&mut self) -> Result<Vec<RawTerm>> {
        let c = self.coefficient()?;
        let base: Vec<(Rational, Tree)> = match self.peek() {
            Some('[') => {
                self.pos += 1;
                let f = self.symbol()?;
                self.expect(',')?;
                let g = self.symbol()?;
                self.expect(']')?;
                bracket(&f, &g)
            }
            Some('(') => {
                self.pos += 1;
                let t = self.chain()?;
                self.expect(')')?;
                vec![(Rational::one(), t)]
            }
            _ => vec![(Rational::one(), self.chain()?)],
        };
        let arity = base[0].1.arity();
        let perms = if self.eat('*') {
            self.perms(arity)?
        } else {
            vec![Permutation::identity(arity)]
        };
        let mut out = Vec::new();
        for (bc, tree) in &base {
            for p in &perms {
                out.push((&c * bc, tree.clone(), p.clone()));
            }
        }
        Ok(out)
    }

    fn chain(&mut self) -> Result<Tree> {
        let mut t = Tree::leaf(self.symbol()?);
        loop {
            self.ws();
            if !self.rest().starts_with('o') {
                return Ok(t);
            }
            self.pos += 1;
            self.eat('_');
            let i = match self.peek() {
                Some(c) if c.is_ascii_digit() => self.number()?,
                _ if t.arity() == 1 => 1,
                _ => {
                    return Err(err(format!(
                        "composition into a map of arity {} needs an index at {}",
                        t.arity(),
                        self.pos
                    )))
                }
            };
            let g = self.symbol()?;
            t = Tree::compose(t, i, Tree::leaf(g));
        }
    }

    fn symbol(&mut self) -> Result<MapSymbol> {
        let head = self.peek().ok_or_else(|| err("expected a map symbol"))?;
        if head != 'm' && head != 'n' {
            return Err(err(format!(
                "expected m or n at {}: {:?}",
                self.pos,
                self.rest()
            )));
        }
        self.pos += 1;
        self.expect('^')?;
        let t = self.number()? as u32;
        self.expect('_')?;
        let p = if self.eat('{') {
            let mut p = vec![self.number()?];
            while self.eat(',') {
                p.push(self.number()?);
            }
            self.expect('}')?;
            p
        } else {
            vec![self.digit()?]
        };
        if p.contains(&0) {
            return Err(err("block sizes must be positive"));
        }
        Ok(if head == 'm' {
            MapSymbol::generator(t, p)
        } else {
            MapSymbol::obstruction(t, p)
        })
    }

    fn perms(&mut self, n: usize) -> Result<Vec<Permutation>> {
        if self.eat('{') {
            let mut out = vec![self.perm(n)?];
            while self.eat('+') {
                out.push(self.perm(n)?);
            }
            self.expect('}')?;
            Ok(out)
        } else {
            Ok(vec![self.perm(n)?])
        }
    }

    fn perm(&mut self, n: usize) -> Result<Permutation> {
        self.ws();
        if self.rest().starts_with("id") {
            self.pos += 2;
            return Ok(Permutation::identity(n));
        }
        let mut cycles = Vec::new();
        while self.eat('(') {
            let mut c = Vec::new();
            while let Some(ch) = self.peek() {
                if ch == ')' {
                    break;
                }
                c.push(self.digit()?);
            }
            self.expect(')')?;
            cycles.push(c);
        }
        if cycles.is_empty() {
            return Err(err(format!("expected a permutation at {}", self.pos)));
        }
        let p = Permutation::from_cycles(n, &cycles)?;
        Ok(match self.reading {
            PermReading::Direct => p,
            PermReading::Inverse => p.inverse(),
        })
    }
}

/// `[f, g] = Σ f∘_i g − (−1)^{|f||g|} Σ g∘_i f` as trees.
fn bracket(f: &MapSymbol, g: &MapSymbol) -> Vec<(Rational, Tree)> {
    let mut out = Vec::new();
    for i in 1..=f.arity() {
        out.push((
            Rational::one(),
            Tree::compose(Tree::leaf(f.clone()), i, Tree::leaf(g.clone())),
        ));
    }
    let s = -koszul_unit(f.degree(), g.degree());
    for i in 1..=g.arity() {
        out.push((
            s.clone(),
            Tree::compose(Tree::leaf(g.clone()), i, Tree::leaf(f.clone())),
        ));
    }
    out
}
