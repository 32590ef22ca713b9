//! Text formats.
//!
//! Instance file:
//!
//! ```text
//! BFGLM 1
//! p n D
//! matrix 1 nnz_1
//! row col value        (nnz_1 lines, 0-based, row-major order)
//! ...
//! matrix n nnz_n
//! ...
//! truth K              (optional)
//! point nu x_1 ... x_n (K lines; nu = 1 for a simple point)
//! ```
//!
//! Parametrization file: `PARAM 1`, `p n degQ`, `t: ...`, `Q: ...`, then
//! one `V_i: ...` line per variable, coefficients lowest degree first.
//!
//! Point request file (for `gen`): `n <vars>`, then any of
//! `simple x_1 ... x_n`, `nilpotent nu x_1 ... x_n c_1 ... c_n`,
//! `random k`, `double k`, `collide k`. Blank lines and `#` comments are
//! skipped.

use std::fmt::Write as _;
use std::str::FromStr;

use bfglm_core::{FieldElem, Instance, Modulus, Poly, Rng, SparseMat, ZeroDimParam};

use crate::error::{ToolError, ToolResult};
use crate::gen::{GenRequest, GroundTruth, PointStructure};

struct Lines<'a> {
    it: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            it: text.lines().enumerate(),
            last: 0,
        }
    }

    /// Next line, as a 1-based line number and its tokens.
    fn next_tokens(&mut self) -> Option<(usize, Vec<&'a str>)> {
        let (i, l) = self.it.next()?;
        self.last = i + 1;
        Some((i + 1, l.split_whitespace().collect()))
    }

    fn expect(&mut self, what: &str) -> ToolResult<(usize, Vec<&'a str>)> {
        self.next_tokens()
            .ok_or_else(|| ToolError::format(self.last + 1, format!("unexpected end of file, expected {what}")))
    }
}

fn num<T: FromStr>(line: usize, tok: &str, what: &str) -> ToolResult<T> {
    tok.parse()
        .map_err(|_| ToolError::format(line, format!("invalid {what} `{tok}`")))
}

fn field_value(line: usize, tok: &str, f: &Modulus) -> ToolResult<FieldElem> {
    let v: u64 = num(line, tok, "value")?;
    if v >= f.p() {
        return Err(ToolError::format(line, format!("value {v} is not below p")));
    }
    Ok(v)
}

/// Parses an instance file, with its optional truth section.
pub fn parse_instance(text: &str) -> ToolResult<(Instance, Option<GroundTruth>)> {
    let mut lines = Lines::new(text);
    let (ln, toks) = lines.expect("header")?;
    if toks != ["BFGLM", "1"] {
        return Err(ToolError::format(ln, "expected `BFGLM 1`"));
    }
    let (ln, toks) = lines.expect("`p n D`")?;
    if toks.len() != 3 {
        return Err(ToolError::format(ln, "expected `p n D`"));
    }
    let p: u64 = num(ln, toks[0], "modulus")?;
    let n: usize = num(ln, toks[1], "variable count")?;
    let dim: usize = num(ln, toks[2], "dimension")?;
    let f = Modulus::new(p).map_err(|e| ToolError::format(ln, e.to_string()))?;
    if n == 0 || dim == 0 {
        return Err(ToolError::format(ln, "n and D must be positive"));
    }
    let mut mats = Vec::with_capacity(n);
    for i in 1..=n {
        let (ln, toks) = lines.expect("matrix header")?;
        if toks.len() != 3 || toks[0] != "matrix" || toks[1] != i.to_string() {
            return Err(ToolError::format(ln, format!("expected `matrix {i} nnz`")));
        }
        let nnz: usize = num(ln, toks[2], "entry count")?;
        let mut trips = Vec::with_capacity(nnz);
        let mut prev: Option<(usize, usize)> = None;
        for _ in 0..nnz {
            let (ln, toks) = lines.expect("matrix entry")?;
            if toks.len() != 3 {
                return Err(ToolError::format(ln, "expected `row col value`"));
            }
            let r: usize = num(ln, toks[0], "row")?;
            let c: usize = num(ln, toks[1], "column")?;
            let v = field_value(ln, toks[2], &f)?;
            if r >= dim || c >= dim {
                return Err(ToolError::format(ln, "index outside the matrix"));
            }
            if v == 0 {
                return Err(ToolError::format(ln, "explicit zero entry"));
            }
            if prev.is_some_and(|q| q >= (r, c)) {
                return Err(ToolError::format(
                    ln,
                    "entries must be in strictly increasing row-major order",
                ));
            }
            prev = Some((r, c));
            trips.push((r, c, v));
        }
        mats.push(SparseMat::from_triplets(f, dim, trips)?);
    }
    let mut truth = None;
    while let Some((ln, toks)) = lines.next_tokens() {
        if toks.is_empty() {
            continue;
        }
        if toks.len() != 2 || toks[0] != "truth" || truth.is_some() {
            return Err(ToolError::format(ln, "unexpected content after the matrices"));
        }
        let k: usize = num(ln, toks[1], "point count")?;
        let mut points = Vec::with_capacity(k);
        let mut structure = Vec::with_capacity(k);
        for _ in 0..k {
            let (ln, toks) = lines.expect("truth point")?;
            if toks.len() != n + 2 || toks[0] != "point" {
                return Err(ToolError::format(
                    ln,
                    format!("expected `point nu` and {n} coordinates"),
                ));
            }
            let nu: usize = num(ln, toks[1], "block size")?;
            if nu == 0 {
                return Err(ToolError::format(ln, "block size must be positive"));
            }
            structure.push(if nu == 1 {
                PointStructure::Simple
            } else {
                PointStructure::Nilpotent(nu)
            });
            points.push(
                toks[2..]
                    .iter()
                    .map(|t| field_value(ln, t, &f))
                    .collect::<ToolResult<Vec<_>>>()?,
            );
        }
        let gt = GroundTruth::new(points, structure);
        if gt.dim() != dim {
            return Err(ToolError::format(ln, "truth block sizes do not add up to D"));
        }
        truth = Some(gt);
    }
    let inst = Instance::new(mats).map_err(|e| ToolError::format(2, e.to_string()))?;
    Ok((inst, truth))
}

/// Canonical text of an instance; `parse_instance` inverts it exactly.
pub fn format_instance(inst: &Instance, truth: Option<&GroundTruth>) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "BFGLM 1");
    let _ = writeln!(s, "{} {} {}", inst.modulus().p(), inst.n(), inst.dim());
    for (i, m) in inst.mats().iter().enumerate() {
        let _ = writeln!(s, "matrix {} {}", i + 1, m.nnz());
        for (r, c, v) in m.triplets() {
            let _ = writeln!(s, "{r} {c} {v}");
        }
    }
    if let Some(t) = truth {
        let _ = writeln!(s, "truth {}", t.points.len());
        for (p, st) in t.points.iter().zip(&t.structure) {
            let _ = write!(s, "point {}", st.size());
            for x in p {
                let _ = write!(s, " {x}");
            }
            s.push('\n');
        }
    }
    s
}

pub fn read_instance(path: &std::path::Path) -> ToolResult<(Instance, Option<GroundTruth>)> {
    parse_instance(&std::fs::read_to_string(path)?)
}

pub fn write_instance(inst: &Instance, truth: Option<&GroundTruth>, path: &std::path::Path) -> ToolResult<()> {
    Ok(std::fs::write(path, format_instance(inst, truth))?)
}

fn push_coeffs(s: &mut String, label: &str, xs: &[FieldElem]) {
    s.push_str(label);
    s.push(':');
    for x in xs {
        let _ = write!(s, " {x}");
    }
    s.push('\n');
}

pub fn format_param(param: &ZeroDimParam) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "PARAM 1");
    let _ = writeln!(s, "{} {} {}", param.modulus().p(), param.n(), param.degree());
    push_coeffs(&mut s, "t", param.t());
    push_coeffs(&mut s, "Q", param.q().coeffs());
    for (i, v) in param.v().iter().enumerate() {
        push_coeffs(&mut s, &format!("V_{}", i + 1), v.coeffs());
    }
    s
}

pub fn parse_param(text: &str) -> ToolResult<ZeroDimParam> {
    let mut lines = Lines::new(text);
    let (ln, toks) = lines.expect("header")?;
    if toks != ["PARAM", "1"] {
        return Err(ToolError::format(ln, "expected `PARAM 1`"));
    }
    let (ln, toks) = lines.expect("`p n degQ`")?;
    if toks.len() != 3 {
        return Err(ToolError::format(ln, "expected `p n degQ`"));
    }
    let f = Modulus::new(num(ln, toks[0], "modulus")?).map_err(|e| ToolError::format(ln, e.to_string()))?;
    let n: usize = num(ln, toks[1], "variable count")?;
    let deg: usize = num(ln, toks[2], "degree")?;
    let mut labelled = |label: &str| -> ToolResult<(usize, Vec<FieldElem>)> {
        let (ln, toks) = lines.expect(label)?;
        if toks.first() != Some(&format!("{label}:").as_str()) {
            return Err(ToolError::format(ln, format!("expected `{label}:`")));
        }
        Ok((
            ln,
            toks[1..]
                .iter()
                .map(|t| field_value(ln, t, &f))
                .collect::<ToolResult<Vec<_>>>()?,
        ))
    };
    let (ln, t) = labelled("t")?;
    if t.len() != n {
        return Err(ToolError::format(ln, format!("expected {n} coefficients")));
    }
    let (ln, q) = labelled("Q")?;
    let q = Poly::from_coeffs(f, q);
    if q.degree() != Some(deg) {
        return Err(ToolError::format(ln, "degree of Q does not match the header"));
    }
    let mut v = Vec::with_capacity(n);
    for i in 1..=n {
        v.push(Poly::from_coeffs(f, labelled(&format!("V_{i}"))?.1));
    }
    Ok(ZeroDimParam::new(q, v, t)?)
}

/// Parses a point request file into a generator request.
pub fn parse_point_request(text: &str, p: u64, rng: &mut Rng) -> ToolResult<GenRequest> {
    let f = Modulus::new(p)?;
    let mut req: Option<GenRequest> = None;
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        let line = line.split('#').next().unwrap_or("");
        let toks: Vec<&str> = line.split_whitespace().collect();
        let Some(&kw) = toks.first() else {
            continue;
        };
        if kw == "n" {
            if req.is_some() || toks.len() != 2 {
                return Err(ToolError::format(ln, "`n <vars>` must appear once, first"));
            }
            req = Some(GenRequest::new(num(ln, toks[1], "variable count")?));
            continue;
        }
        let r = req
            .take()
            .ok_or_else(|| ToolError::format(ln, "`n <vars>` must come first"))?;
        let n = r.n;
        let vals = |xs: &[&str]| {
            xs.iter()
                .map(|t| field_value(ln, t, &f))
                .collect::<ToolResult<Vec<_>>>()
        };
        let count = || -> ToolResult<usize> {
            if toks.len() != 2 {
                return Err(ToolError::format(ln, format!("expected `{kw} <count>`")));
            }
            num(ln, toks[1], "count")
        };
        req = Some(match kw {
            "simple" if toks.len() == n + 1 => r.simple(vals(&toks[1..])?),
            "nilpotent" if toks.len() == 2 * n + 2 => {
                let nu: usize = num(ln, toks[1], "block size")?;
                r.nilpotent(vals(&toks[2..n + 2])?, nu, vals(&toks[n + 2..])?)
            }
            "random" | "double" | "collide" => {
                let k = count()?;
                if kw == "collide" && r.points.is_empty() {
                    return Err(ToolError::format(ln, "`collide` needs earlier points"));
                }
                (0..k).fold(r, |r, _| match kw {
                    "random" => r.add_random(&f, rng),
                    "double" => r.add_double(&f, rng),
                    _ => r.add_collision(&f, rng),
                })
            }
            _ => return Err(ToolError::format(ln, format!("malformed `{kw}` line"))),
        });
    }
    req.ok_or_else(|| ToolError::format(1, "empty point request"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_and_inconsistent_files() {
        let ok = "BFGLM 1\n101 1 2\nmatrix 1 2\n0 0 3\n1 1 4\n";
        assert!(parse_instance(ok).is_ok());
        match parse_instance("BFGLM 1\n101 1 2\nmatrix 1 2\n0 0 3\n") {
            Err(ToolError::Format { line, .. }) => assert_eq!(line, 5),
            other => panic!("{other:?}"),
        }
        match parse_instance("BFGLM 1\n101 1 2\nmatrix 1 1\n0 0 3\n1 1 4\n") {
            Err(ToolError::Format { line, .. }) => assert_eq!(line, 5),
            other => panic!("{other:?}"),
        }
        assert!(parse_instance("BFGLM 1\n101 1 2\nmatrix 1 1\n0 5 3\n").is_err());
        assert!(parse_instance("BFGLM 2\n").is_err());
    }

    #[test]
    fn param_round_trip() {
        let f = Modulus::new(101).unwrap();
        let p = ZeroDimParam::new(
            Poly::from_coeffs(f, vec![61, 8, 1]),
            vec![Poly::from_coeffs(f, vec![14, 15]), Poly::from_coeffs(f, vec![9, 49])],
            vec![2, 53],
        )
        .unwrap();
        let text = format_param(&p);
        assert_eq!(text, "PARAM 1\n101 2 2\nt: 2 53\nQ: 61 8 1\nV_1: 14 15\nV_2: 9 49\n");
        assert_eq!(parse_param(&text).unwrap(), p);
    }

    #[test]
    fn point_requests() {
        let mut rng = Rng::new(2);
        let text = "# two coordinates\nn 2\nsimple 4 10\nnilpotent 2 5 20 1 0\nrandom 3\ncollide 1\n";
        let req = parse_point_request(text, 101, &mut rng).unwrap();
        assert_eq!(req.points.len(), 6);
        assert_eq!(req.dim(), 7);
        assert!(parse_point_request("simple 1 2\n", 101, &mut rng).is_err());
    }
}
