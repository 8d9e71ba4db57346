//! Parser for the expression language.
//!
//! ```text
//! expr    := factor (('x' | '*') factor)*
//! factor  := atom ('^*')? twist*
//! atom    := 'Z[' seg (';' seg)* ']' | 'L[' half ',' half ']'
//!          | 'nu^' half ('_' int)? | '1_' int
//!          | ('St' | 'Pi' | 'Lambda' | 'Phi' | 'Psi') '_' int
//!          | 'cusp(' int ',' name ')' | 'Irr(' expr ')'
//! seg     := half ',' half tag*
//! twist   := '.nu^' half | tag
//! tag     := '.chi(' name ('^' int)? ')'
//! ```
//!
//! Whitespace is ignored. `Irr(...)` names the irreducible product of its
//! factors, which the caller asserts to be irreducible.

use crate::arith::{HalfInt, ModContext};
use crate::reps::{named, Cusp, Expr, Irrep};
use crate::segments::{Multiseg, Segment, Tag};
use crate::{CalcError, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ctx: &'a ModContext,
}

fn is_name_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_' || b == b'\''
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(CalcError::parse(self.pos, msg))
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, lit: &str) -> bool {
        self.skip_ws();
        let save = self.pos;
        for want in lit.bytes() {
            self.skip_ws();
            if self.src.get(self.pos) != Some(&want) {
                self.pos = save;
                return false;
            }
            self.pos += 1;
        }
        true
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        if self.eat(lit) {
            Ok(())
        } else {
            self.err(format!("expected {lit:?}"))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let neg = self.eat("-");
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let v: i64 = digits.parse().map_err(|_| CalcError::parse(start, "integer out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn uint(&mut self) -> Result<u64> {
        let at = self.pos;
        let v = self.int()?;
        u64::try_from(v).map_err(|_| CalcError::parse(at, "expected a non-negative integer"))
    }

    fn half(&mut self) -> Result<HalfInt> {
        let v = self.int()?;
        let save = self.pos;
        if self.eat("/") {
            if self.eat("2") && !self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                return Ok(HalfInt::from_twice(v));
            }
            self.pos = save;
            return self.err("only halves are allowed as denominators");
        }
        Ok(HalfInt::int(v))
    }

    fn name(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).copied().is_some_and(is_name_byte) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a name");
        }
        let mut s = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
        if self.src.get(self.pos) == Some(&b'*') {
            self.pos += 1;
            s.push('*');
        }
        Ok(s)
    }

    fn tag(&mut self) -> Result<Option<Tag>> {
        if !self.eat(".chi(") {
            return Ok(None);
        }
        let name = self.name()?;
        let power = if self.eat("^") { self.int()? } else { 1 };
        self.expect(")")?;
        let mut t = Tag::unramified();
        for _ in 0..power.unsigned_abs() {
            t = t.compose(&Tag::named(&name));
        }
        Ok(Some(if power < 0 { t.inverse() } else { t }))
    }

    fn segment(&mut self) -> Result<Segment> {
        let at = self.pos;
        let a = self.half()?;
        self.expect(",")?;
        let b = self.half()?;
        if Segment::try_new(a, b).is_none() {
            return Err(CalcError::Degree(format!("[{a},{b}] at {at} is not a segment")));
        }
        let mut tag = Tag::unramified();
        while let Some(t) = self.tag()? {
            tag = tag.compose(&t);
        }
        Ok(Segment::tagged(a, b, tag))
    }

    fn degree_arg(&mut self, what: &str, min: u64) -> Result<u64> {
        self.expect("_")?;
        let at = self.pos;
        let n = self.uint()?;
        if n < min {
            return Err(CalcError::Degree(format!("{what}_{n} at {at} needs degree at least {min}")));
        }
        Ok(n)
    }

    fn atom(&mut self) -> Result<Irrep> {
        let ctx = self.ctx;
        let start = self.pos;
        if self.eat("Z[") {
            let mut segs = vec![self.segment()?];
            while self.eat(";") {
                segs.push(self.segment()?);
            }
            self.expect("]")?;
            return Ok(Irrep::z(&Multiseg::new(segs), ctx));
        }
        if self.eat("L[") {
            let a = self.half()?;
            self.expect(",")?;
            let b = self.half()?;
            self.expect("]")?;
            let s = Segment::try_new(a, b)
                .ok_or_else(|| CalcError::Degree(format!("[{a},{b}] at {start} is not a segment")))?;
            return named::l(&s, ctx)
                .ok_or_else(|| CalcError::Degree(format!("L[{a},{b}]: only lengths 1 and 2 are supported")));
        }
        if self.eat("nu^") {
            let x = self.half()?;
            let n = if self.peek() == Some(b'_') { self.degree_arg("nu", 1)? } else { 1 };
            return Ok(named::nu(n, x, ctx));
        }
        if self.eat("1_") {
            return Ok(named::one(self.uint()?, ctx));
        }
        if self.eat("Irr(") {
            let inner = self.expr()?;
            self.expect(")")?;
            return Ok(Irrep::irreducible_product(inner.atoms(), ctx));
        }
        if self.eat("cusp(") {
            let at = self.pos;
            let deg = self.uint()?;
            if deg == 0 {
                return Err(CalcError::Degree(format!("cuspidal of degree 0 at {at}")));
            }
            self.expect(",")?;
            let name = self.name()?;
            self.expect(")")?;
            return Ok(Irrep::cusp(Cusp::new(deg, &name), ctx));
        }
        type Builder = fn(u64, &ModContext) -> Irrep;
        let table: [(&str, u64, Builder); 5] = [
            ("St", 1, named::st),
            ("Pi", 3, named::pi),
            ("Lambda", 2, named::lambda),
            ("Phi", 4, named::phi),
            ("Psi", 4, named::psi),
        ];
        for (word, min, build) in table {
            if self.eat(word) {
                let n = self.degree_arg(word, min)?;
                return Ok(build(n, ctx));
            }
        }
        self.err("expected a representation")
    }

    fn factor(&mut self) -> Result<Irrep> {
        let ctx = self.ctx;
        let mut x = self.atom()?;
        if self.eat("^*") {
            x = x.dual(ctx);
        }
        loop {
            if self.eat(".nu^") {
                let s = self.half()?;
                x = x.twist(s, ctx);
            } else if let Some(t) = self.tag()? {
                x = x.twist_tag(&t, ctx);
            } else {
                return Ok(x);
            }
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut fs = vec![Expr::Irr(self.factor()?)];
        loop {
            self.skip_ws();
            if self.eat("*") || self.eat("x") {
                fs.push(Expr::Irr(self.factor()?));
            } else {
                break;
            }
        }
        Ok(Expr::product(fs))
    }
}

/// Parses an induced product of irreducible labels.
pub fn parse_expr(text: &str, ctx: &ModContext) -> Result<Expr> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, ctx };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

/// Parses a single irreducible label; a product is rejected.
pub fn parse_irrep(text: &str, ctx: &ModContext) -> Result<Irrep> {
    match parse_expr(text, ctx)? {
        Expr::Irr(x) => Ok(x),
        Expr::Prod(_) => Err(CalcError::parse(0, "expected a single irreducible, found a product")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::named::*;

    fn hh(s: &str) -> HalfInt {
        s.parse().unwrap()
    }

    #[test]
    fn grammar_examples() {
        let c0 = ModContext::char0();
        let e = parse_expr("Z[1,3] x nu^1 x 1_1", &c0).unwrap();
        assert_eq!(
            e,
            Expr::Prod(vec![
                Expr::Irr(Irrep::seg(Segment::ints(1, 3), &c0)),
                Expr::Irr(nu(1, hh("1"), &c0)),
                Expr::Irr(one(1, &c0)),
            ])
        );
        let l = parse_irrep("Lambda_4^* . nu^1/2", &c0).unwrap();
        assert_eq!(l, lambda_dual(4, &c0).twist(hh("1/2"), &c0));
        let p = parse_irrep("Z[-1/2,3/2; 5/2,5/2]", &c0).unwrap();
        assert_eq!(p, pi(4, &c0));
        assert_eq!(parse_expr("nu^-1*1_1 *nu^1", &c0).unwrap().degree(), 3);
        assert_eq!(parse_irrep("nu^1/2_3", &c0).unwrap(), nu(3, hh("1/2"), &c0));
    }

    #[test]
    fn tags_and_cusps() {
        let e3 = ModContext::with_e(3);
        let x = parse_irrep("Z[0,1.chi(t); 2,2]", &e3).unwrap();
        assert_eq!(x.m.segs().iter().filter(|s| !s.tag.is_unramified()).count(), 1);
        let c = parse_irrep("cusp(2,rho).nu^1/2.chi(t^-1)", &e3).unwrap();
        assert_eq!(c.degree(), 2);
        assert_eq!(c.dual(&e3).dual(&e3), c);
        let d = parse_irrep("cusp(2,rho)^*", &e3).unwrap();
        assert_eq!(d, cusp(2, "rho", &e3).dual(&e3));
        let irr = parse_irrep("Irr(1_2 x cusp(2,rho))", &e3).unwrap();
        assert_eq!(irr.degree(), 4);
    }

    #[test]
    fn errors_carry_positions() {
        let c0 = ModContext::char0();
        match parse_expr("Z[1,3] x foo", &c0) {
            Err(CalcError::Parse { pos, .. }) => assert_eq!(pos, 9),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_expr("Z[1,3", &c0), Err(CalcError::Parse { .. })));
        assert!(matches!(parse_expr("Z[3,1]", &c0), Err(CalcError::Degree(_))));
        assert!(matches!(parse_expr("L[0,3]", &c0), Err(CalcError::Degree(_))));
        assert!(matches!(parse_expr("Pi_2", &c0), Err(CalcError::Degree(_))));
        assert!(matches!(parse_expr("nu^1/3", &c0), Err(CalcError::Parse { .. })));
    }
}
