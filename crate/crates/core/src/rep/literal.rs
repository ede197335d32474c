//! Sphere literals.
//!
//! ```text
//! sphere := ['-'] term (('+' | '-') term)*
//! term   := INT                       trivial summands (subtracted: desuspensions)
//!         | [INT '*'] 'rho'           copies of the regular representation
//!         | [INT '*'] 'triv'          trivial summands
//!         | 'perm[' INT (',' INT)* ']'    ρ_X; entry i counts orbits of size p^i
//!         | 'lambda(' INT ')' ['^' INT]   copies of the irreducible with that index
//! ```
//!
//! Whitespace between tokens is ignored. Only trivial terms may be subtracted.

use super::{GSet, Rep, SphereSpec};
use crate::error::{Error, Result};
use crate::mackey::CyclicGroupSpec;

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{s}'")))
        }
    }

    fn int(&mut self) -> Result<Option<u64>> {
        self.skip_ws();
        let digits = self.src[self.pos..].chars().take_while(char::is_ascii_digit).count();
        if digits == 0 {
            return Ok(None);
        }
        let text = &self.src[self.pos..self.pos + digits];
        let v = text.parse().map_err(|_| self.error("integer too large"))?;
        self.pos += digits;
        Ok(Some(v))
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("sphere literal at column {}: {msg}", self.pos + 1))
    }
}

enum Term {
    Trivial(u64),
    Rep(Rep),
}

fn term(c: &mut Cursor, spec: CyclicGroupSpec) -> Result<Term> {
    let coeff = c.int()?;
    if coeff.is_some() && !c.eat("*") {
        return Ok(Term::Trivial(coeff.unwrap_or(0)));
    }
    let k = coeff.unwrap_or(1);
    if c.eat("rho") {
        return Ok(Term::Rep(Rep::regular(spec)?.scale(k)));
    }
    if c.eat("triv") {
        return Ok(Term::Trivial(k));
    }
    if coeff.is_some() {
        return Err(c.error("expected 'rho' or 'triv' after '*'"));
    }
    if c.eat("perm") {
        c.expect("[")?;
        let mut sizes = Vec::new();
        loop {
            sizes.push(c.int()?.ok_or_else(|| c.error("expected an orbit count"))?);
            if !c.eat(",") {
                break;
            }
        }
        c.expect("]")?;
        if sizes.len() != spec.n() + 1 {
            return Err(c.error(&format!("perm needs {} orbit counts for {spec}", spec.n() + 1)));
        }
        let x = GSet::from_orbit_sizes(spec, &sizes)?;
        return Ok(Term::Rep(super::permutation_rep(&x)?));
    }
    if c.eat("lambda") {
        c.expect("(")?;
        let j = c.int()?.ok_or_else(|| c.error("expected an irreducible index"))?;
        c.expect(")")?;
        let m = if c.eat("^") { c.int()?.ok_or_else(|| c.error("expected an exponent"))? } else { 1 };
        return Ok(Term::Rep(Rep::irreducible(spec, j, m)?));
    }
    Err(c.error("expected a term"))
}

/// Parses a sphere over `spec`. Subtracting a nontrivial term is unsupported.
pub fn parse_sphere(src: &str, spec: CyclicGroupSpec) -> Result<SphereSpec> {
    let mut c = Cursor { src, pos: 0 };
    let mut v = Rep::zero(spec)?;
    let mut desusp = 0u64;
    let mut negative = c.eat("-");
    loop {
        let start = c.pos;
        match (term(&mut c, spec)?, negative) {
            (Term::Trivial(k), false) => v = v.add(&Rep::trivial(spec, k)?)?,
            (Term::Trivial(k), true) => desusp += k,
            (Term::Rep(r), false) => v = v.add(&r)?,
            (Term::Rep(_), true) => {
                return Err(Error::Unsupported(format!(
                    "only trivial summands can be subtracted, not '{}'",
                    src[start..c.pos].trim()
                )))
            }
        }
        match c.peek() {
            None => break,
            Some('+') => negative = false,
            Some('-') => negative = true,
            Some(_) => return Err(c.error("expected '+' or '-'")),
        }
        c.pos += 1;
    }
    Ok(SphereSpec::new(v, desusp))
}
