//! CSV export of generator curves: `z,value,variant,B,m`, with an extra
//! leading `t` column for time series. Unused `B`/`m` fields are empty.

use super::curve::{CurveMeta, GeneratorCurve, Variant};
use crate::error::{Error, Result};
use crate::spectral::io::fmt_f64;

fn meta_fields(c: &GeneratorCurve) -> (String, String) {
    (
        c.meta.taylor_cap.map(|b| b.to_string()).unwrap_or_default(),
        c.meta.weight_exponent.map(fmt_f64).unwrap_or_default(),
    )
}

pub fn write_curve_csv(curve: &GeneratorCurve) -> String {
    let mut out = String::from("z,value,variant,B,m\n");
    let (b, m) = meta_fields(curve);
    for (z, v) in curve.zgrid.iter().zip(&curve.values) {
        out.push_str(&format!("{},{},{},{},{}\n", fmt_f64(*z), fmt_f64(*v), curve.variant.name(), b, m));
    }
    out
}

pub fn write_curve_series_csv(times: &[f64], curves: &[GeneratorCurve]) -> String {
    let mut out = String::from("t,z,value,variant,B,m\n");
    for (t, curve) in times.iter().zip(curves) {
        let (b, m) = meta_fields(curve);
        for (z, v) in curve.zgrid.iter().zip(&curve.values) {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                fmt_f64(*t),
                fmt_f64(*z),
                fmt_f64(*v),
                curve.variant.name(),
                b,
                m
            ));
        }
    }
    out
}

fn num(s: &str) -> Result<f64> {
    s.trim().parse().map_err(|_| Error::Parse(format!("bad number {s:?}")))
}

fn parse_meta(b: &str, m: &str) -> Result<CurveMeta> {
    Ok(CurveMeta {
        taylor_cap: if b.is_empty() { None } else { Some(b.parse().map_err(|_| Error::Parse(format!("bad B {b:?}")))?) },
        weight_exponent: if m.is_empty() { None } else { Some(num(m)?) },
        last_term: None,
    })
}

/// Reads a time series written by [`write_curve_series_csv`].
pub fn read_curve_series_csv(text: &str) -> Result<(Vec<f64>, Vec<GeneratorCurve>)> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
    let mut times: Vec<f64> = Vec::new();
    let mut curves: Vec<GeneratorCurve> = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        if rec.len() != 6 {
            return Err(Error::Parse(format!("expected 6 columns, got {}", rec.len())));
        }
        let t = num(&rec[0])?;
        let (z, v) = (num(&rec[1])?, num(&rec[2])?);
        if times.last() != Some(&t) {
            times.push(t);
            curves.push(GeneratorCurve {
                variant: Variant::parse(&rec[3])?,
                zgrid: Vec::new(),
                values: Vec::new(),
                meta: parse_meta(&rec[4], &rec[5])?,
            });
        }
        let c = curves.last_mut().expect("pushed above");
        c.zgrid.push(z);
        c.values.push(v);
    }
    Ok((times, curves))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_roundtrip() {
        let c = GeneratorCurve {
            variant: Variant::Kinetic,
            zgrid: vec![0.0, 0.5, 1.0],
            values: vec![1.0, 1.0 / 3.0, 2.5],
            meta: CurveMeta { taylor_cap: Some(4), weight_exponent: Some(4.0), last_term: None },
        };
        let text = write_curve_series_csv(&[0.0, 0.1], &[c.clone(), c.clone()]);
        let (t, back) = read_curve_series_csv(&text).unwrap();
        assert_eq!(t, vec![0.0, 0.1]);
        assert_eq!(back[1], c);
        assert!(write_curve_csv(&c).starts_with("z,value,variant,B,m\n0.0000000000000000e0,1.0000000000000000e0,kinetic,4,"));
    }
}
