//! Flat text format for spectral fields.
//!
//! ```text
//! dim N components transverse_kind transverse_nodes [v_half_width]
//! alpha_1 [alpha_2] re im [re im ...]
//! ```
//!
//! Each coefficient line carries the real/imaginary pairs of every
//! (component, transverse node) slot, component-major. Modes whose slots are
//! all zero are omitted. Floats use 17 significant digits.

use std::fmt::Write as _;

use num_complex::Complex64;

use super::field::{Mode, SpectralField, Transverse};
use crate::error::{Error, Result};

pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_field(f: &SpectralField) -> String {
    let mut out = String::new();
    let t = f.transverse();
    let _ = write!(out, "{} {} {} {} {}", f.dim(), f.trunc(), f.components(), t.kind(), t.nodes());
    if let Transverse::GridV { half_width, .. } = t {
        let _ = write!(out, " {}", fmt_f64(half_width));
    }
    out.push('\n');
    for i in 0..f.mode_count() {
        let all_zero = (0..f.components()).all(|c| f.slot(c, i).iter().all(|v| *v == Complex64::default()));
        if all_zero {
            continue;
        }
        let m = f.mode_at(i);
        let mut line: Vec<String> = (0..f.dim()).map(|a| m.get(a).to_string()).collect();
        for c in 0..f.components() {
            for v in f.slot(c, i) {
                line.push(fmt_f64(v.re));
                line.push(fmt_f64(v.im));
            }
        }
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

fn parse<T: std::str::FromStr>(tok: Option<&str>, what: &str) -> Result<T> {
    tok.ok_or_else(|| Error::Parse(format!("missing {what}")))?
        .parse()
        .map_err(|_| Error::Parse(format!("bad {what}")))
}

pub fn read_field(text: &str) -> Result<SpectralField> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty field file".into()))?;
    let mut toks = header.split_whitespace();
    let dim: usize = parse(toks.next(), "dim")?;
    let trunc: usize = parse(toks.next(), "N")?;
    let components: usize = parse(toks.next(), "components")?;
    let kind = toks.next().ok_or_else(|| Error::Parse("missing transverse kind".into()))?;
    let nodes: usize = parse(toks.next(), "transverse nodes")?;
    let transverse = match kind {
        "none" => Transverse::None,
        "chebyshev_y" => Transverse::ChebyshevY { nodes },
        "grid_v" => Transverse::GridV { nodes, half_width: parse(toks.next(), "v half width")? },
        other => return Err(Error::Parse(format!("unknown transverse kind {other}"))),
    };
    let mut f = SpectralField::zeros(dim, trunc, components, transverse)?;
    let per_line = components * transverse.nodes();
    for line in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != dim + 2 * per_line {
            return Err(Error::Parse(format!("expected {} tokens, got {}", dim + 2 * per_line, toks.len())));
        }
        let idx: Vec<i64> = toks[..dim]
            .iter()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad index {t}"))))
            .collect::<Result<_>>()?;
        let mode = if dim == 1 { Mode::d1(idx[0]) } else { Mode::d2(idx[0], idx[1]) };
        let index = f
            .mode_index(mode)
            .ok_or(Error::IndexOutOfTruncation { mode: idx.clone(), trunc })?;
        let mut vals = toks[dim..].chunks(2).map(|pair| -> Result<Complex64> {
            Ok(Complex64::new(parse(Some(pair[0]), "re")?, parse(Some(pair[1]), "im")?))
        });
        for c in 0..components {
            for node in 0..transverse.nodes() {
                f.slot_mut(c, index)[node] = vals.next().expect("token count checked")?;
            }
        }
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn scalar_format_matches_layout() {
        let f = SpectralField::from_entries(&[(vec![1], Complex64::new(0.5, -0.25))], 1, 2).unwrap();
        let s = write_field(&f);
        let mut lines = s.lines();
        assert_eq!(lines.next(), Some("1 2 1 none 1"));
        assert_eq!(lines.next(), Some("1 5.0000000000000000e-1 -2.5000000000000000e-1"));
        assert_eq!(lines.next(), None);
    }

    #[test]
    fn grid_v_header_carries_width() {
        let f = SpectralField::zeros(1, 1, 1, Transverse::GridV { nodes: 5, half_width: 8.0 }).unwrap();
        let back = read_field(&write_field(&f)).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn rejects_out_of_box_lines() {
        assert!(read_field("1 1 1 none 1\n3 1.0 0.0\n").is_err());
        assert!(read_field("1 1 1 none 1\n1 1.0\n").is_err());
    }

    proptest! {
        #[test]
        fn exact_roundtrip(vals in proptest::collection::vec((-1e3f64..1e3, -1e3f64..1e3), 2 * 9 * 3), dim2 in any::<bool>()) {
            let (dim, trunc) = if dim2 { (2, 1) } else { (1, 4) };
            let mut f = SpectralField::zeros(dim, trunc, 2, Transverse::ChebyshevY { nodes: 3 }).unwrap();
            for (slot, (re, im)) in f.data_mut().iter_mut().zip(vals) {
                *slot = Complex64::new(re, im);
            }
            let back = read_field(&write_field(&f)).unwrap();
            prop_assert_eq!(back, f);
        }
    }
}
