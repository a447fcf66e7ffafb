//! Parsing of ring specs, element literals and matrix/presentation files.
//!
//! Ring-spec grammar:
//!   spec   := "Z" | "Zn(" int ")" | "Quot(" spec "," coeffs ")"
//!           | "Prod(" spec {"," spec} ")" | "EC(" int ")" | "LocalNonChain2"
//!   coeffs := "[" int {"," int} "]"    constant term first, leading coeff 1
//!
//! Element literals: Z/n and Z use decimal integers; quotient rings use
//! coefficient lists; products use "(e1,...,ek)"; EC(p) uses
//! "[r1,...,rk;t]" with rationals "n" or "n/d" (prefix before the
//! semicolon, tail after; the prefix may be empty).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::ec;
use crate::error::{Result, RingError};
use crate::ring::{Element, Ring, RingKind};

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

    fn skip_ws(&mut self) {
        while self.rest().starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(RingError::Syntax(format!(
                "expected '{token}' at position {} in '{}'",
                self.pos, self.text
            )))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.text.as_bytes();
        let mut end = start;
        if end < bytes.len() && (bytes[end] == b'-' || bytes[end] == b'+') {
            end += 1;
        }
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        let slice = &self.text[start..end];
        if slice.is_empty() || slice == "-" || slice == "+" {
            return Err(RingError::Syntax(format!(
                "expected an integer at position {start} in '{}'",
                self.text
            )));
        }
        self.pos = end;
        slice.parse::<i64>().map_err(|_| {
            RingError::Syntax(format!("integer '{slice}' out of range"))
        })
    }

    fn bigint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.text.as_bytes();
        let mut end = start;
        if end < bytes.len() && (bytes[end] == b'-' || bytes[end] == b'+') {
            end += 1;
        }
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        let slice = &self.text[start..end];
        if slice.is_empty() || slice == "-" || slice == "+" {
            return Err(RingError::Syntax(format!(
                "expected an integer at position {start} in '{}'",
                self.text
            )));
        }
        self.pos = end;
        slice
            .parse::<BigInt>()
            .map_err(|_| RingError::Syntax(format!("bad integer '{slice}'")))
    }

    fn rational(&mut self) -> Result<BigRational> {
        let num = self.bigint()?;
        if self.eat("/") {
            let den = self.bigint()?;
            if den.is_zero() {
                return Err(RingError::Syntax("zero denominator".into()));
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from(num))
        }
    }

    fn int_list(&mut self) -> Result<Vec<i64>> {
        self.expect("[")?;
        let mut out = vec![self.int()?];
        while self.eat(",") {
            out.push(self.int()?);
        }
        self.expect("]")?;
        Ok(out)
    }

    fn done(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos == self.text.len() {
            Ok(())
        } else {
            Err(RingError::Syntax(format!(
                "trailing input '{}' in '{}'",
                self.rest(),
                self.text
            )))
        }
    }
}

/// Parses a ring spec. parse ∘ print is the identity on canonical specs.
pub fn parse_ring_spec(text: &str) -> Result<Ring> {
    let mut c = Cursor::new(text);
    let ring = parse_spec(&mut c)?;
    c.done()?;
    Ok(ring)
}

fn parse_spec(c: &mut Cursor) -> Result<Ring> {
    if c.eat("Zn(") {
        let n = c.int()?;
        c.expect(")")?;
        if n < 2 {
            return Err(RingError::InvalidSpec(format!("Zn({n}): modulus must be >= 2")));
        }
        return Ring::zmod(n as u64);
    }
    if c.eat("Quot(") {
        let base = parse_spec(c)?;
        c.expect(",")?;
        let coeffs = c.int_list()?;
        c.expect(")")?;
        let p = match base.kind() {
            RingKind::ZmodN(p) => *p,
            _ => {
                return Err(RingError::InvalidSpec(
                    "Quot base must be Zn(p) with p prime".into(),
                ))
            }
        };
        return Ring::poly_quot(p, &coeffs);
    }
    if c.eat("Prod(") {
        let mut factors = vec![parse_spec(c)?];
        while c.eat(",") {
            factors.push(parse_spec(c)?);
        }
        c.expect(")")?;
        return Ring::product(factors);
    }
    if c.eat("EC(") {
        let p = c.int()?;
        c.expect(")")?;
        if p < 2 {
            return Err(RingError::InvalidSpec(format!("EC({p}): p must be prime")));
        }
        return Ring::eventually_constant(p as u64);
    }
    if c.eat("LocalNonChain2") {
        return Ok(Ring::local_non_chain2());
    }
    if c.eat("Z") {
        return Ok(Ring::integers());
    }
    Err(RingError::Syntax(format!("unrecognized ring spec '{}'", c.text)))
}

/// Parses an element literal in the context of `ring` and normalizes it.
pub fn parse_element(ring: &Ring, text: &str) -> Result<Element> {
    let mut c = Cursor::new(text);
    let elem = parse_elem(ring, &mut c)?;
    c.done()?;
    Ok(elem)
}

fn parse_elem(ring: &Ring, c: &mut Cursor) -> Result<Element> {
    match ring.kind() {
        RingKind::ZmodN(n) => {
            let v = c.bigint()?;
            let m = BigInt::from(*n);
            let r = ((v % &m) + &m) % &m;
            Ok(Element::Residue(u64::try_from(r).unwrap()))
        }
        RingKind::PolyQuot { p, modulus } => {
            let coeffs = c.int_list()?;
            let deg = modulus.len() - 1;
            if coeffs.len() > deg {
                return Err(RingError::Syntax(format!(
                    "coefficient list longer than degree {deg}"
                )));
            }
            let mut out = vec![0u64; deg];
            for (i, &v) in coeffs.iter().enumerate() {
                out[i] = v.rem_euclid(*p as i64) as u64;
            }
            Ok(Element::Poly(out))
        }
        RingKind::Product(factors) => {
            c.expect("(")?;
            let mut parts = Vec::with_capacity(factors.len());
            for (i, f) in factors.iter().enumerate() {
                if i > 0 {
                    c.expect(",")?;
                }
                parts.push(parse_elem(f, c)?);
            }
            c.expect(")")?;
            Ok(Element::Tuple(parts))
        }
        RingKind::Integers => Ok(Element::Int(c.bigint()?)),
        RingKind::EventuallyConstant(p) => {
            c.expect("[")?;
            let mut prefix = Vec::new();
            if !c.eat(";") {
                prefix.push(c.rational()?);
                while c.eat(",") {
                    prefix.push(c.rational()?);
                }
                c.expect(";")?;
            }
            let tail = c.rational()?;
            c.expect("]")?;
            if !ec::in_d(&tail, *p) {
                return Err(RingError::Syntax(format!(
                    "tail {tail} has denominator divisible by {p}"
                )));
            }
            Ok(ec::make_seq(prefix, tail))
        }
        RingKind::LocalNonChain2 => {
            let coeffs = c.int_list()?;
            if coeffs.len() > 3 {
                return Err(RingError::Syntax(
                    "LocalNonChain2 elements have coordinates (1, x, y)".into(),
                ));
            }
            let mut out = vec![0u64; 3];
            for (i, &v) in coeffs.iter().enumerate() {
                out[i] = v.rem_euclid(2) as u64;
            }
            Ok(Element::Poly(out))
        }
    }
}

/// A matrix file: first line "m n", then m rows of n element literals
/// separated by whitespace.
pub fn parse_matrix(ring: &Ring, text: &str) -> Result<(usize, usize, Vec<Element>)> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| RingError::Syntax("empty matrix file".into()))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    if dims.len() != 2 {
        return Err(RingError::Syntax(format!(
            "matrix header must be 'm n', got '{header}'"
        )));
    }
    let m: usize = dims[0]
        .parse()
        .map_err(|_| RingError::Syntax(format!("bad row count '{}'", dims[0])))?;
    let n: usize = dims[1]
        .parse()
        .map_err(|_| RingError::Syntax(format!("bad column count '{}'", dims[1])))?;
    let mut entries = Vec::with_capacity(m * n);
    for _ in 0..m {
        let line = lines
            .next()
            .ok_or_else(|| RingError::Syntax("matrix file ended early".into()))?;
        let cells: Vec<&str> = line.split_whitespace().collect();
        if cells.len() != n {
            return Err(RingError::Syntax(format!(
                "expected {n} entries per row, got {} in '{line}'",
                cells.len()
            )));
        }
        for cell in cells {
            entries.push(parse_element(ring, cell)?);
        }
    }
    Ok((m, n, entries))
}

/// A presentation file: first line "g r", then r relation rows of g
/// element literals.
pub fn parse_presentation(ring: &Ring, text: &str) -> Result<(usize, Vec<Vec<Element>>)> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| RingError::Syntax("empty presentation file".into()))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    if dims.len() != 2 {
        return Err(RingError::Syntax(format!(
            "presentation header must be 'g r', got '{header}'"
        )));
    }
    let g: usize = dims[0]
        .parse()
        .map_err(|_| RingError::Syntax(format!("bad generator count '{}'", dims[0])))?;
    let r: usize = dims[1]
        .parse()
        .map_err(|_| RingError::Syntax(format!("bad relation count '{}'", dims[1])))?;
    let mut rows = Vec::with_capacity(r);
    for _ in 0..r {
        let line = lines
            .next()
            .ok_or_else(|| RingError::Syntax("presentation file ended early".into()))?;
        let cells: Vec<&str> = line.split_whitespace().collect();
        if cells.len() != g {
            return Err(RingError::Syntax(format!(
                "expected {g} entries per relation row, got {}",
                cells.len()
            )));
        }
        let mut row = Vec::with_capacity(g);
        for cell in cells {
            row.push(parse_element(ring, cell)?);
        }
        rows.push(row);
    }
    Ok((g, rows))
}

/// EC point labels: "P@3" or "P@inf".
pub fn parse_point_label(text: &str) -> Result<crate::spectrum::EcLabel> {
    let rest = text
        .strip_prefix("P@")
        .ok_or_else(|| RingError::Syntax(format!("point label must be P@k or P@inf, got '{text}'")))?;
    if rest == "inf" {
        return Ok(crate::spectrum::EcLabel::Infinity);
    }
    rest.parse::<u64>()
        .map(crate::spectrum::EcLabel::Index)
        .map_err(|_| RingError::Syntax(format!("bad point index '{rest}'")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ec::rat_from;

    #[test]
    fn parse_print_round_trips() {
        for spec in [
            "Z",
            "Zn(12)",
            "Quot(Zn(2),[1,1,1])",
            "Prod(Zn(4),Zn(3))",
            "Prod(Zn(2),Zn(2))",
            "EC(2)",
            "LocalNonChain2",
        ] {
            let ring = parse_ring_spec(spec).unwrap();
            assert_eq!(ring.to_string(), spec);
            assert_eq!(parse_ring_spec(&ring.to_string()).unwrap(), ring);
        }
    }

    #[test]
    fn parse_rejects_invalid_specs() {
        assert!(matches!(parse_ring_spec("Zn(1)"), Err(RingError::InvalidSpec(_))));
        assert!(matches!(parse_ring_spec("Zn(x)"), Err(RingError::Syntax(_))));
        // non-monic modulus
        assert!(matches!(
            parse_ring_spec("Quot(Zn(2),[1,1,0])"),
            Err(RingError::InvalidSpec(_))
        ));
        // composite characteristic
        assert!(matches!(
            parse_ring_spec("Quot(Zn(4),[1,1,1])"),
            Err(RingError::InvalidSpec(_))
        ));
        assert!(matches!(parse_ring_spec("EC(4)"), Err(RingError::InvalidSpec(_))));
        assert!(matches!(parse_ring_spec("Prod()"), Err(RingError::Syntax(_))));
        assert!(matches!(parse_ring_spec("Zn(12) extra"), Err(RingError::Syntax(_))));
    }

    #[test]
    fn product_order_multiplies() {
        let ring = parse_ring_spec("Prod(Zn(4),Zn(3))").unwrap();
        assert_eq!(ring.order(), Some(12));
    }

    #[test]
    fn f4_spec_parses_to_order_4() {
        let ring = parse_ring_spec("Quot(Zn(2),[1,1,1])").unwrap();
        assert_eq!(ring.order(), Some(4));
    }

    #[test]
    fn element_literals_normalize() {
        let zn = parse_ring_spec("Zn(12)").unwrap();
        assert_eq!(parse_element(&zn, "-1").unwrap(), Element::Residue(11));
        assert_eq!(parse_element(&zn, "14").unwrap(), Element::Residue(2));

        let f4 = parse_ring_spec("Quot(Zn(2),[1,1,1])").unwrap();
        assert_eq!(parse_element(&f4, "[1]").unwrap(), Element::Poly(vec![1, 0]));
        assert_eq!(parse_element(&f4, "[3,2]").unwrap(), Element::Poly(vec![1, 0]));

        let prod = parse_ring_spec("Prod(Zn(4),Zn(3))").unwrap();
        assert_eq!(
            parse_element(&prod, "(5,4)").unwrap(),
            Element::Tuple(vec![Element::Residue(1), Element::Residue(1)])
        );

        let ecr = parse_ring_spec("EC(2)").unwrap();
        let a = parse_element(&ecr, "[0;2]").unwrap();
        assert_eq!(a, ec::make_seq(vec![rat_from(0, 1)], rat_from(2, 1)));
        let b = parse_element(&ecr, "[1/2,3;5]").unwrap();
        assert_eq!(
            b,
            ec::make_seq(vec![rat_from(1, 2), rat_from(3, 1)], rat_from(5, 1))
        );
        let constant = parse_element(&ecr, "[;7]").unwrap();
        assert_eq!(constant, ec::make_seq(vec![], rat_from(7, 1)));
        // tail must lie in Z localized at 2
        assert!(parse_element(&ecr, "[;1/2]").is_err());
        // prefix equal to tail trims away
        let trimmed = parse_element(&ecr, "[5,5;5]").unwrap();
        assert_eq!(trimmed, ec::make_seq(vec![], rat_from(5, 1)));
    }

    #[test]
    fn element_print_parse_round_trips() {
        let ecr = parse_ring_spec("EC(2)").unwrap();
        for text in ["[0;2]", "[1/2,3;5]", "[;7]", "[-1/3;0]"] {
            let e = parse_element(&ecr, text).unwrap();
            assert_eq!(parse_element(&ecr, &e.to_string()).unwrap(), e);
        }
        let lnc = parse_ring_spec("LocalNonChain2").unwrap();
        let x = parse_element(&lnc, "[0,1]").unwrap();
        assert_eq!(x, Element::Poly(vec![0, 1, 0]));
        assert_eq!(parse_element(&lnc, &x.to_string()).unwrap(), x);
    }

    #[test]
    fn matrix_file_parses() {
        let z = Ring::integers();
        let (m, n, entries) = parse_matrix(&z, "2 2\n2 4\n6 8\n").unwrap();
        assert_eq!((m, n), (2, 2));
        assert_eq!(entries.len(), 4);
        assert_eq!(entries[3], Element::Int(8.into()));
        assert!(parse_matrix(&z, "2 2\n1 2\n").is_err());
        assert!(parse_matrix(&z, "2\n1 2\n3 4\n").is_err());
    }

    #[test]
    fn presentation_file_parses() {
        let r = parse_ring_spec("Zn(4)").unwrap();
        let (g, rows) = parse_presentation(&r, "2 1\n2 0\n").unwrap();
        assert_eq!(g, 2);
        assert_eq!(rows, vec![vec![Element::Residue(2), Element::Residue(0)]]);
    }

    #[test]
    fn point_labels_parse() {
        assert_eq!(parse_point_label("P@3").unwrap(), crate::spectrum::EcLabel::Index(3));
        assert_eq!(parse_point_label("P@inf").unwrap(), crate::spectrum::EcLabel::Infinity);
        assert!(parse_point_label("Q@3").is_err());
    }
}
