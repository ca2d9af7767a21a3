//! Text documents: `.ideal` files (one ring header plus generators) and
//! `.map` files (source and target headers plus `var -> poly` lines).
//!
//! ```text
//! ring Q[x,y,w,u]
//! x*u
//! y*u - x^2     # comments run to the end of the line
//! u^2
//! point 0,0,0,1
//! ```

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use cmcubics_core::{Field, Ideal, PolyRing, Polynomial, RingHandle, RingMap};

use crate::error::CliError;
use crate::field::FieldSpec;
use crate::with_field;

type Result<T> = std::result::Result<T, CliError>;

/// A value with the 1-based line and column where it starts.
#[derive(Clone, Debug)]
pub struct Spanned<T> {
    pub line: usize,
    pub col: usize,
    pub value: T,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingHeader {
    pub field: FieldSpec,
    pub vars: Vec<String>,
}

impl fmt::Display for RingHeader {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ring {}[{}]", self.field, self.vars.join(","))
    }
}

/// Body lines; polynomial text is kept in canonical printed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Poly(String),
    Assign { var: String, image: String },
    Point(Vec<String>),
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Item::Poly(p) => f.write_str(p),
            Item::Assign { var, image } => write!(f, "{var} -> {image}"),
            Item::Point(coords) => write!(f, "point {}", coords.join(",")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Document {
    pub rings: Vec<Spanned<RingHeader>>,
    pub items: Vec<Spanned<Item>>,
}

/// Documents are equal when headers and items agree; positions are ignored.
impl PartialEq for Document {
    fn eq(&self, other: &Self) -> bool {
        self.rings.iter().map(|r| &r.value).eq(other.rings.iter().map(|r| &r.value))
            && self.items.iter().map(|i| &i.value).eq(other.items.iter().map(|i| &i.value))
    }
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rings {
            writeln!(f, "{}", r.value)?;
        }
        for i in &self.items {
            writeln!(f, "{}", i.value)?;
        }
        Ok(())
    }
}

fn parse_header(text: &str, line: usize) -> Result<RingHeader> {
    let bad = |msg: String| CliError::BadRingHeader { line, msg };
    let rest = text.strip_prefix("ring").unwrap_or(text).trim();
    let open = rest.find('[').ok_or_else(|| bad("expected `[` before the variables".into()))?;
    let inner = rest[open + 1..].strip_suffix(']').ok_or_else(|| bad("expected `]` at the end".into()))?;
    let field: FieldSpec = rest[..open].trim().parse().map_err(|e: CliError| bad(e.to_string()))?;
    let vars: Vec<String> = inner.split(',').map(|v| v.trim().to_string()).filter(|v| !v.is_empty()).collect();
    if vars.is_empty() {
        return Err(bad("no variables".into()));
    }
    Ok(RingHeader { field, vars })
}

fn is_keyword(text: &str, word: &str) -> bool {
    text.strip_prefix(word).is_some_and(|rest| rest.starts_with(|c: char| c.is_whitespace() || c == '['))
}

/// Splits `0,0,0,1`, `[0:0:0:1]` or `0 0 0 1` into coordinates.
fn split_point(text: &str) -> Vec<String> {
    text.trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .split([',', ':', ' '])
        .map(str::trim)
        .filter(|c| !c.is_empty())
        .map(String::from)
        .collect()
}

/// Parses a document and brings every polynomial into canonical form.
pub fn parse(text: &str) -> Result<Document> {
    let mut doc = Document { rings: Vec::new(), items: Vec::new() };
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let col = content.chars().take_while(|c| c.is_whitespace()).count() + 1;
        if is_keyword(trimmed, "ring") {
            if !doc.items.is_empty() {
                return Err(CliError::BadRingHeader { line, msg: "ring header after the body".into() });
            }
            doc.rings.push(Spanned { line, col, value: parse_header(trimmed, line)? });
        } else if let Some((lhs, rhs)) = trimmed.split_once("->") {
            let rhs_col = col + trimmed.len() - trimmed[trimmed.find("->").unwrap() + 2..].trim_start().len();
            let value = Item::Assign { var: lhs.trim().to_string(), image: rhs.trim().to_string() };
            doc.items.push(Spanned { line, col: rhs_col, value });
        } else if is_keyword(trimmed, "point") {
            doc.items.push(Spanned { line, col, value: Item::Point(split_point(&trimmed[5..])) });
        } else {
            doc.items.push(Spanned { line, col, value: Item::Poly(trimmed.to_string()) });
        }
    }
    let first = doc.rings.first().ok_or(CliError::BadRingHeader { line: 1, msg: "missing `ring` header".into() })?;
    let field = first.value.field;
    if let Some(other) = doc.rings.iter().find(|r| r.value.field != field) {
        return Err(CliError::BadRingHeader { line: other.line, msg: format!("field differs from {field}") });
    }
    with_field!(field, |f| canonicalize(&f, &mut doc))?;
    Ok(doc)
}

pub fn read(path: &Path) -> Result<Document> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    parse(&text)
}

fn build_ring<F: Field>(field: &F, header: &Spanned<RingHeader>) -> Result<Arc<PolyRing<F>>> {
    PolyRing::new(field.clone(), &header.value.vars)
        .map_err(|e| CliError::BadRingHeader { line: header.line, msg: e.to_string() })
}

fn parse_in<F: Field>(ring: &Arc<PolyRing<F>>, text: &str, line: usize, col: usize) -> Result<Polynomial<F>> {
    ring.parse(text).map_err(|e| CliError::located(e, line, col - 1))
}

/// Parses a single field element such as `-2` or `1/3`.
pub fn parse_scalar<F: Field>(field: &F, text: &str) -> Result<F::Elem> {
    let ring = PolyRing::new(field.clone(), &[] as &[&str])?;
    let p = ring.parse(text).map_err(|e| CliError::BadPoint(format!("`{text}`: {e}")))?;
    Ok(p.constant_term())
}

/// Parses `a,b,c,d` (or `[a:b:c:d]`) into a nonzero coordinate vector.
pub fn parse_point<F: Field>(field: &F, text: &str) -> Result<Vec<F::Elem>> {
    let coords = split_point(text).iter().map(|c| parse_scalar(field, c)).collect::<Result<Vec<_>>>()?;
    if coords.iter().all(|c| field.is_zero(c)) {
        return Err(CliError::BadPoint(format!("`{text}` is the zero vector")));
    }
    Ok(coords)
}

/// Comma-separated field elements, e.g. `0,1,-2`.
pub fn parse_samples<F: Field>(field: &F, text: &str) -> Result<Vec<F::Elem>> {
    text.split(',').filter(|s| !s.trim().is_empty()).map(|s| parse_scalar(field, s.trim())).collect()
}

fn canonicalize<F: Field>(field: &F, doc: &mut Document) -> Result<()> {
    let rings = doc.rings.iter().map(|h| build_ring(field, h)).collect::<Result<Vec<_>>>()?;
    let has_assign = doc.items.iter().any(|i| matches!(i.value, Item::Assign { .. }));
    let has_poly = doc.items.iter().any(|i| matches!(i.value, Item::Poly(_)));
    if has_assign && has_poly {
        return Err(CliError::BadMap("a document holds either generators or assignments".into()));
    }
    if has_assign && rings.len() != 2 {
        return Err(CliError::BadMap(format!("a map needs two ring headers, found {}", rings.len())));
    }
    if !has_assign && rings.len() != 1 {
        let extra = &doc.rings[1];
        return Err(CliError::BadRingHeader { line: extra.line, msg: "an ideal takes a single ring header".into() });
    }
    for item in &mut doc.items {
        let (line, col) = (item.line, item.col);
        item.value = match &item.value {
            Item::Poly(text) => Item::Poly(parse_in(&rings[0], text, line, col)?.to_string()),
            Item::Assign { var, image } => {
                rings[0].index_of(var).map_err(|e| CliError::At { line, source: e })?;
                Item::Assign { var: var.clone(), image: parse_in(&rings[1], image, line, col)?.to_string() }
            }
            Item::Point(coords) => Item::Point(
                coords
                    .iter()
                    .map(|c| {
                        let v = parse_scalar(field, c).map_err(|e| CliError::Usage(format!("line {line}: {e}")))?;
                        Ok(field.format_elem(&v))
                    })
                    .collect::<Result<_>>()?,
            ),
        };
    }
    Ok(())
}

impl Document {
    pub fn field(&self) -> FieldSpec {
        self.rings[0].value.field
    }

    /// The same document read over another field.
    pub fn with_field(&self, field: FieldSpec) -> Result<Document> {
        let mut doc = self.clone();
        for r in &mut doc.rings {
            r.value.field = field;
        }
        with_field!(field, |f| canonicalize(&f, &mut doc))?;
        Ok(doc)
    }

    /// Applies a `--field` flag when one was given.
    pub fn with_field_flag(self, flag: Option<FieldSpec>) -> Result<Document> {
        match flag {
            Some(spec) => {
                let target = self.field().override_with(spec);
                if target == self.field() {
                    Ok(self)
                } else {
                    self.with_field(target)
                }
            }
            None => Ok(self),
        }
    }

    pub fn ring<F: Field>(&self, field: &F, index: usize) -> Result<Arc<PolyRing<F>>> {
        let header = self.rings.get(index).ok_or_else(|| CliError::Usage(format!("no ring header #{}", index + 1)))?;
        build_ring(field, header)
    }

    pub fn polynomials(&self) -> impl Iterator<Item = &str> {
        self.items.iter().filter_map(|i| match &i.value {
            Item::Poly(p) => Some(p.as_str()),
            _ => None,
        })
    }

    pub fn ideal<F: Field>(&self, field: &F) -> Result<Ideal<F>> {
        self.ideal_in(&self.ring(field, 0)?)
    }

    /// Generators parsed in a ring with the same variables.
    pub fn ideal_in<F: Field>(&self, ring: &Arc<PolyRing<F>>) -> Result<Ideal<F>> {
        if ring.vars() != self.rings[0].value.vars.as_slice() {
            return Err(CliError::BadMap(format!(
                "ideal lives in [{}] but the map expects [{}]",
                self.rings[0].value.vars.join(","),
                ring.vars().join(",")
            )));
        }
        let gens = self
            .items
            .iter()
            .filter_map(|i| match &i.value {
                Item::Poly(p) => Some(parse_in(ring, p, i.line, i.col)),
                _ => None,
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(ring, gens)?)
    }

    /// The map from the first ring to the second; every source variable is assigned once.
    pub fn map<F: Field>(&self, field: &F) -> Result<RingMap<F>> {
        if self.rings.len() != 2 {
            return Err(CliError::BadMap("expected two ring headers".into()));
        }
        let (source, target) = (self.ring(field, 0)?, self.ring(field, 1)?);
        let mut images: Vec<Option<Polynomial<F>>> = vec![None; source.nvars()];
        for item in &self.items {
            if let Item::Assign { var, image } = &item.value {
                let slot = &mut images[source.index_of(var)?];
                if slot.is_some() {
                    return Err(CliError::BadMap(format!("line {}: `{var}` assigned twice", item.line)));
                }
                *slot = Some(parse_in(&target, image, item.line, item.col)?);
            }
        }
        let images = images
            .into_iter()
            .zip(source.vars())
            .map(|(img, v)| img.ok_or_else(|| CliError::BadMap(format!("no image for `{v}`"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(RingMap::new(&source, &target, images)?)
    }

    /// The first `point` line, if any.
    pub fn point<F: Field>(&self, field: &F) -> Result<Option<Vec<F::Elem>>> {
        self.items
            .iter()
            .find_map(|i| match &i.value {
                Item::Point(coords) => Some(parse_point(field, &coords.join(","))),
                _ => None,
            })
            .transpose()
    }
}

/// An ideal as a document: header line then one generator per line.
pub fn ideal_text<F: Field>(ideal: &Ideal<F>) -> String {
    let mut out = ideal.ring().header();
    for g in ideal.gens() {
        out.push('\n');
        out.push_str(&g.to_string());
    }
    out.push('\n');
    out
}

/// A map as a document.
pub fn map_text<F: Field>(map: &RingMap<F>) -> String {
    let mut out = format!("{}\n{}\n", map.source().header(), map.target().header());
    for (v, img) in map.source().vars().iter().zip(map.images()) {
        out.push_str(&format!("{v} -> {img}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use cmcubics_core::Rationals;

    #[test]
    fn ideal_document() {
        let doc = parse("ring Q[x,y,w,u]\nx*u\ny*u - x^2\nu^2").unwrap();
        assert_eq!(doc.field(), FieldSpec::RATIONALS);
        let ideal = doc.ideal(&Rationals).unwrap();
        let expected = Ideal::from_strs(ideal.ring(), &["x*u", "y*u - x^2", "u^2"]).unwrap();
        assert!(ideal.equals(&expected).unwrap());
    }

    #[test]
    fn parametric_generator() {
        let doc = parse("ring Q(t)[x,y,z,w]\nx*z - t*y*w").unwrap();
        assert!(doc.field().parametric);
        assert_eq!(doc.polynomials().collect::<Vec<_>>(), ["x*z - t*y*w"]);
    }

    #[test]
    fn dangling_caret() {
        match parse("ring Q[x]\nx^") {
            Err(CliError::Syntax { line: 2, col: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse("ring Q[x]\n   x + * x") {
            Err(CliError::Syntax { line: 2, col: 8, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn header_errors() {
        assert!(matches!(parse("ring R[x]\nx"), Err(CliError::BadRingHeader { line: 1, .. })));
        assert!(matches!(parse("ring Q[x,x]\nx"), Err(CliError::BadRingHeader { .. })));
        assert!(matches!(parse("ring Q(t)[x,t]\nx"), Err(CliError::BadRingHeader { .. })));
        assert!(matches!(parse("x\n"), Err(CliError::BadRingHeader { .. })));
        assert!(matches!(parse("ring Q[x]\nx\nring Q[y]"), Err(CliError::BadRingHeader { line: 3, .. })));
        assert!(matches!(parse("ring Q[x]\ny"), Err(CliError::At { line: 2, .. })));
    }

    #[test]
    fn map_document() {
        let doc = parse("ring Q[a,b]\nring Q[s,t2]\na -> s^2\nb -> s*t2 + 1/2*t2^2").unwrap();
        let m = doc.map(&Rationals).unwrap();
        assert_eq!(m.images()[1].to_string(), "s*t2 + 1/2*t2^2");
        assert_eq!(parse(&map_text(&m)).unwrap(), doc);
        let missing = parse("ring Q[a,b]\nring Q[s]\na -> s").unwrap();
        assert!(matches!(missing.map(&Rationals), Err(CliError::BadMap(_))));
        let twice = parse("ring Q[a]\nring Q[s]\na -> s\na -> s^2").unwrap();
        assert!(matches!(twice.map(&Rationals), Err(CliError::BadMap(_))));
    }

    #[test]
    fn points_and_roundtrip() {
        let text = "ring Q[x,y,z,w]  # plane cubic\n\nz\n  x^3 -  y^2*w\npoint [0:0:0:1]\n";
        let doc = parse(text).unwrap();
        assert_eq!(doc.point(&Rationals).unwrap().unwrap()[3], Rationals.one());
        let printed = doc.to_string();
        assert_eq!(printed, "ring Q[x,y,z,w]\nz\nx^3 - y^2*w\npoint 0,0,0,1\n");
        assert_eq!(parse(&printed).unwrap(), doc);
        assert!(parse_point(&Rationals, "0,0,0,0").is_err());
    }

    #[test]
    fn field_change() {
        let doc = parse("ring Q[x,y]\n1/2*x - 3*y").unwrap();
        let gf7 = doc.with_field(FieldSpec::prime(7)).unwrap();
        assert_eq!(gf7.polynomials().next(), Some("-3*x - 3*y"));
        assert_eq!(gf7.rings[0].value.field.to_string(), "GF(7)");
    }
}
