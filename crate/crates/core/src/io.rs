//! CSV formats for point clouds, distance matrices, value tables, profiles
//! and scalar fields.
//!
//! Numbers are written with 17 significant digits (`{:.16e}`) so output is
//! byte-reproducible and round-trips exactly; infinities are written as
//! `inf` and `-inf`.

use std::io::{Read, Write};
use std::sync::Arc;

use crate::envelope::ScalarField;
use crate::error::{Error, Result};
use crate::metric::{FiniteMetricSpace, Norm};
use crate::sampled::SampledMap;
use crate::scales::ScaleProfile;

pub fn format_f64(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v == f64::INFINITY {
        "inf".into()
    } else if v == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{v:.16e}")
    }
}

pub fn parse_f64(s: &str) -> Option<f64> {
    match s.trim() {
        "inf" | "+inf" | "Inf" | "infinity" | "Infinity" => Some(f64::INFINITY),
        "-inf" | "-Inf" | "-infinity" | "-Infinity" => Some(f64::NEG_INFINITY),
        t => t.parse().ok().filter(|v: &f64| !v.is_nan()),
    }
}

/// Input held in memory so errors can name the physical line of a record
/// (the csv reader's own line count skips blank lines).
struct Source(Vec<u8>);

impl Source {
    fn read(mut r: impl Read) -> Result<Self> {
        let mut data = Vec::new();
        r.read_to_end(&mut data)?;
        Ok(Self(data))
    }

    fn reader(&self, headers: bool) -> csv::Reader<&[u8]> {
        csv::ReaderBuilder::new()
            .has_headers(headers)
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_reader(self.0.as_slice())
    }

    fn line(&self, rec: &csv::StringRecord) -> usize {
        let data = &self.0;
        let mut at = rec.position().map_or(0, |p| p.byte() as usize).min(data.len());
        // the recorded offset may sit before blank or comment lines
        while at < data.len() && matches!(data[at], b'\n' | b'\r' | b'#') {
            if data[at] == b'#' {
                at += data[at..].iter().position(|&b| b == b'\n').unwrap_or(data.len() - at);
            } else {
                at += 1;
            }
        }
        1 + data[..at].iter().filter(|&&b| b == b'\n').count()
    }

    fn field(&self, rec: &csv::StringRecord, i: usize, what: &str) -> Result<f64> {
        let raw = rec.get(i).unwrap_or("");
        parse_f64(raw).ok_or_else(|| Error::Parse { line: self.line(rec), message: format!("bad {what} '{raw}'") })
    }
}

fn writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().from_writer(w)
}

/// Rows of `id,x1,…,xn,<values…>`: the coordinate columns are those named
/// `x<k>`; every later column is a value component.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    pub ids: Vec<String>,
    pub coords: Vec<Vec<f64>>,
    pub value_names: Vec<String>,
    pub values: Vec<Vec<f64>>,
}

fn is_coord(name: &str) -> bool {
    name.len() > 1 && name.starts_with('x') && name[1..].bytes().all(|b| b.is_ascii_digit())
}

impl PointCloud {
    pub fn space(&self, norm: Norm) -> Result<FiniteMetricSpace> {
        FiniteMetricSpace::from_points(self.ids.clone(), &self.coords, norm)
    }

    /// The sampled map: real-valued for one value column, vector-valued in
    /// `value_norm` otherwise.
    pub fn into_map(self, norm: Norm, value_norm: Norm) -> Result<SampledMap> {
        let space = Arc::new(self.space(norm)?);
        match self.value_names.len() {
            0 => Err(Error::input("point cloud has no value column")),
            1 => SampledMap::real(space, self.values.into_iter().map(|v| v[0]).collect()),
            _ => SampledMap::vector(space, &self.values, value_norm),
        }
    }
}

pub fn read_point_cloud<R: Read>(r: R) -> Result<PointCloud> {
    let src = Source::read(r)?;
    let mut rdr = src.reader(true);
    let header = rdr.headers()?.clone();
    if header.get(0) != Some("id") {
        return Err(Error::Parse { line: 1, message: "first column must be 'id'".into() });
    }
    let dim = header.iter().skip(1).take_while(|h| is_coord(h)).count();
    if dim == 0 {
        return Err(Error::Parse { line: 1, message: "no coordinate columns x1..xn".into() });
    }
    let value_names: Vec<String> = header.iter().skip(1 + dim).map(String::from).collect();
    let mut cloud = PointCloud { ids: Vec::new(), coords: Vec::new(), value_names, values: Vec::new() };
    for rec in rdr.records() {
        let rec = rec?;
        if rec.len() != header.len() {
            return Err(Error::Parse {
                line: src.line(&rec),
                message: format!("{} fields, header has {}", rec.len(), header.len()),
            });
        }
        cloud.ids.push(rec[0].to_string());
        cloud.coords.push((1..=dim).map(|i| src.field(&rec, i, "coordinate")).collect::<Result<_>>()?);
        cloud.values.push((1 + dim..rec.len()).map(|i| src.field(&rec, i, "value")).collect::<Result<_>>()?);
    }
    if cloud.ids.is_empty() {
        return Err(Error::input("point cloud has no rows"));
    }
    Ok(cloud)
}

/// Writes a map on an embedded domain as a point cloud. Real maps get one
/// `value` column, vector maps `v1..vm`.
pub fn write_point_cloud<W: Write>(w: W, f: &SampledMap) -> Result<()> {
    let emb = f.domain().embedding().ok_or_else(|| Error::input("domain has no coordinates"))?;
    let mut wtr = writer(w);
    let m = f.value_components(0).len();
    let mut header = vec!["id".to_string()];
    header.extend((1..=emb.dim()).map(|k| format!("x{k}")));
    if f.real_values().is_some() {
        header.push("value".into());
    } else {
        header.extend((1..=m).map(|k| format!("v{k}")));
    }
    wtr.write_record(&header)?;
    for i in 0..f.len() {
        let mut row = vec![f.domain().id(i).to_string()];
        row.extend(emb.point(i).iter().map(|&c| format_f64(c)));
        row.extend(f.value_components(i).into_iter().map(format_f64));
        wtr.write_record(&row)?;
    }
    wtr.flush()?;
    Ok(())
}

/// Square distance table with point ids in the first row and column (the
/// top-left cell is ignored).
pub fn read_distance_matrix<R: Read>(r: R) -> Result<FiniteMetricSpace> {
    let src = Source::read(r)?;
    let mut rdr = src.reader(false);
    let mut records = rdr.records();
    let header = records.next().ok_or_else(|| Error::input("empty distance matrix"))??;
    let ids: Vec<String> = header.iter().skip(1).map(String::from).collect();
    let n = ids.len();
    let mut table = vec![f64::NAN; n * n];
    let mut seen = 0;
    for rec in records {
        let rec = rec?;
        let line = src.line(&rec);
        if rec.len() != n + 1 {
            return Err(Error::Parse { line, message: format!("{} fields, expected {}", rec.len(), n + 1) });
        }
        if seen >= n {
            return Err(Error::Parse { line, message: "more rows than ids".into() });
        }
        if &rec[0] != ids[seen].as_str() {
            return Err(Error::Parse {
                line,
                message: format!("row id '{}' does not match column '{}'", &rec[0], ids[seen]),
            });
        }
        for j in 0..n {
            table[seen * n + j] = src.field(&rec, j + 1, "distance")?;
        }
        seen += 1;
    }
    if seen != n {
        return Err(Error::input(format!("distance matrix has {seen} rows for {n} ids")));
    }
    FiniteMetricSpace::from_matrix(ids, table)
}

pub fn write_distance_matrix<W: Write>(w: W, space: &FiniteMetricSpace) -> Result<()> {
    let mut wtr = writer(w);
    let mut header = vec![String::new()];
    header.extend(space.ids().iter().cloned());
    wtr.write_record(&header)?;
    for a in 0..space.len() {
        let mut row = vec![space.id(a).to_string()];
        row.extend((0..space.len()).map(|b| format_f64(space.dist(a, b))));
        wtr.write_record(&row)?;
    }
    wtr.flush()?;
    Ok(())
}

/// An `id,<columns…>` table in file order.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub ids: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    lines: Vec<usize>,
}

impl Table {
    /// Rows reordered to match the points of `space`; every point must
    /// appear exactly once.
    pub fn aligned_to(&self, space: &FiniteMetricSpace) -> Result<Vec<Vec<f64>>> {
        let mut out: Vec<Option<Vec<f64>>> = vec![None; space.len()];
        for ((id, row), &line) in self.ids.iter().zip(&self.rows).zip(&self.lines) {
            let i = space.index_of(id).ok_or_else(|| Error::Parse { line, message: format!("unknown id '{id}'") })?;
            if out[i].replace(row.clone()).is_some() {
                return Err(Error::Parse { line, message: format!("duplicate id '{id}'") });
            }
        }
        out.into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::input(format!("no value for point '{}'", space.id(i)))))
            .collect()
    }
}

pub fn read_table<R: Read>(r: R) -> Result<Table> {
    let src = Source::read(r)?;
    let mut rdr = src.reader(true);
    let header = rdr.headers()?.clone();
    if header.len() < 2 {
        return Err(Error::Parse { line: 1, message: "need an id column and at least one value column".into() });
    }
    let mut table = Table {
        ids: Vec::new(),
        columns: header.iter().skip(1).map(String::from).collect(),
        rows: Vec::new(),
        lines: Vec::new(),
    };
    for rec in rdr.records() {
        let rec = rec?;
        let line = src.line(&rec);
        if rec.len() != header.len() {
            return Err(Error::Parse { line, message: format!("{} fields, header has {}", rec.len(), header.len()) });
        }
        table.ids.push(rec[0].to_string());
        table.rows.push((1..rec.len()).map(|k| src.field(&rec, k, "value")).collect::<Result<_>>()?);
        table.lines.push(line);
    }
    if table.ids.is_empty() {
        return Err(Error::input("table has no rows"));
    }
    Ok(table)
}

/// `id,<values…>` rows keyed by point id, returned in the order of `space`.
/// Every point must appear exactly once.
pub fn read_values<R: Read>(r: R, space: &FiniteMetricSpace) -> Result<Vec<Vec<f64>>> {
    read_table(r)?.aligned_to(space)
}

pub fn write_values<W: Write>(w: W, f: &SampledMap) -> Result<()> {
    let mut wtr = writer(w);
    let m = f.value_components(0).len();
    let mut header = vec!["id".to_string()];
    if f.real_values().is_some() {
        header.push("value".into());
    } else {
        header.extend((1..=m).map(|k| format!("v{k}")));
    }
    wtr.write_record(&header)?;
    for i in 0..f.len() {
        let mut row = vec![f.domain().id(i).to_string()];
        row.extend(f.value_components(i).into_iter().map(format_f64));
        wtr.write_record(&row)?;
    }
    wtr.flush()?;
    Ok(())
}

pub const PROFILE_HEADER: [&str; 8] =
    ["id", "radius", "lip_upper", "lip_upper_closed", "big_below", "little_below", "loc", "unresolved"];

pub const SUMMARY_HEADER: [&str; 9] = [
    "id",
    "nearest",
    "estimate_radius",
    "lip_hat",
    "big_hat",
    "loc_hat",
    "divergent",
    "liminf_surrogate",
    "unresolved",
];

fn flag(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}

/// One row per (point, radius), largest radius first.
pub fn write_profile<W: Write>(w: W, prof: &ScaleProfile, space: &FiniteMetricSpace) -> Result<()> {
    let mut wtr = writer(w);
    wtr.write_record(PROFILE_HEADER)?;
    for p in &prof.points {
        for row in &p.rows {
            wtr.write_record([
                space.id(p.point).to_string(),
                format_f64(row.radius),
                format_f64(row.lip_upper),
                format_f64(row.lip_upper_closed),
                format_f64(row.big_below),
                format_f64(row.little_below),
                format_f64(row.loc),
                flag(row.unresolved).to_string(),
            ])?;
        }
    }
    wtr.flush()?;
    Ok(())
}

/// Per-point estimates. Empty cells mark absent optional values.
pub fn write_profile_summary<W: Write>(w: W, prof: &ScaleProfile, space: &FiniteMetricSpace) -> Result<()> {
    let mut wtr = writer(w);
    wtr.write_record(SUMMARY_HEADER)?;
    for p in &prof.points {
        wtr.write_record([
            space.id(p.point).to_string(),
            format_f64(p.nearest),
            p.estimate_radius.map(format_f64).unwrap_or_default(),
            format_f64(p.lip_hat),
            format_f64(p.big_hat),
            format_f64(p.loc_hat),
            flag(p.divergent).to_string(),
            p.liminf_surrogate.map(format_f64).unwrap_or_default(),
            flag(p.estimate_radius.is_none()).to_string(),
        ])?;
    }
    wtr.flush()?;
    Ok(())
}

/// Membership of each point in `{lip̂ ≤ γ}`, `{Lip̂ ≤ γ}`, `{𝕃ip̂ ≤ γ}` and
/// their complements, as 0/1 columns.
pub fn write_sets<W: Write>(w: W, prof: &ScaleProfile, space: &FiniteMetricSpace, gamma: f64) -> Result<()> {
    let mut wtr = writer(w);
    wtr.write_record(["id", "lip_le", "big_le", "loc_le", "lip_gt", "big_gt", "loc_gt"])?;
    for p in &prof.points {
        let le = [p.lip_hat <= gamma, p.big_hat <= gamma, p.loc_hat <= gamma];
        let mut row = vec![space.id(p.point).to_string()];
        row.extend(le.iter().map(|&b| flag(b).to_string()));
        row.extend(le.iter().map(|&b| flag(!b).to_string()));
        wtr.write_record(&row)?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn read_scalar_field<R: Read>(r: R, space: Arc<FiniteMetricSpace>) -> Result<ScalarField> {
    let values = read_values(r, &space)?;
    if let Some(bad) = values.iter().position(|v| v.len() != 1) {
        return Err(Error::input(format!("field row for '{}' must have exactly one value", space.id(bad))));
    }
    ScalarField::new(space, values.into_iter().map(|v| v[0]).collect())
}

/// A scalar field as `id,value`; with `partners`, extra named columns
/// (for example the lower and upper envelopes) follow in order.
pub fn write_scalar_fields<W: Write>(w: W, columns: &[(&str, &ScalarField)]) -> Result<()> {
    let first = columns.first().ok_or_else(|| Error::input("no field to write"))?.1;
    if columns.iter().any(|(_, f)| f.len() != first.len()) {
        return Err(Error::input("fields live on different spaces"));
    }
    let mut wtr = writer(w);
    let mut header = vec!["id"];
    header.extend(columns.iter().map(|c| c.0));
    wtr.write_record(&header)?;
    for x in 0..first.len() {
        let mut row = vec![first.space().id(x).to_string()];
        row.extend(columns.iter().map(|(_, f)| format_f64(f.value(x))));
        wtr.write_record(&row)?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn write_scalar_field<W: Write>(w: W, field: &ScalarField) -> Result<()> {
    write_scalar_fields(w, &[("value", field)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scales::{scale_profile, RadiusGrid};

    fn text(f: impl FnOnce(&mut Vec<u8>) -> Result<()>) -> String {
        let mut buf = Vec::new();
        f(&mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn floats_round_trip() {
        for v in [0.1, -2.5e-300, 1.0 / 3.0, f64::MAX, 0.0, f64::INFINITY, f64::NEG_INFINITY] {
            assert_eq!(parse_f64(&format_f64(v)), Some(v));
        }
        assert_eq!(format_f64(1.0), "1.0000000000000000e0");
        assert_eq!(parse_f64("nan"), None);
        assert_eq!(parse_f64("x"), None);
    }

    #[test]
    fn point_cloud_round_trip() {
        let src = "id,x1,x2,value\na,0,0,1\nb,3,4,2.5\n";
        let cloud = read_point_cloud(src.as_bytes()).unwrap();
        assert_eq!(cloud.coords[1], vec![3.0, 4.0]);
        let f = cloud.into_map(Norm::L2, Norm::L2).unwrap();
        assert_eq!(f.domain().dist(0, 1), 5.0);
        let out = text(|b| write_point_cloud(b, &f));
        let again = read_point_cloud(out.as_bytes()).unwrap().into_map(Norm::L2, Norm::L2).unwrap();
        assert_eq!(again.real_values(), f.real_values());
        assert!(out.starts_with("id,x1,x2,value\na,0.0000000000000000e0,"));
    }

    #[test]
    fn vector_values_and_bad_rows() {
        let src = "id,x1,v1,v2\np,0,1,0\nq,1,0,1\n";
        let f = read_point_cloud(src.as_bytes()).unwrap().into_map(Norm::L2, Norm::LInf).unwrap();
        assert_eq!(f.value_dist(0, 1), 1.0);

        let bad = "id,x1,value\na,0,1\nb,zz,2\n";
        match read_point_cloud(bad.as_bytes()) {
            Err(Error::Parse { line, message }) => {
                assert_eq!(line, 3);
                assert!(message.contains("zz"));
            }
            other => panic!("{other:?}"),
        }
        let short = "id,x1,value\na,0\n";
        assert!(matches!(read_point_cloud(short.as_bytes()), Err(Error::Parse { line: 2, .. }) | Err(Error::Csv(_))));
        assert!(read_point_cloud("name,x1\n".as_bytes()).is_err());
        assert!(read_point_cloud("id,value\na,1\n".as_bytes()).is_err());
    }

    #[test]
    fn distance_matrix_and_values() {
        let src = ",a,b,c\na,0,1,2\nb,1,0,1\nc,2,1,0\n";
        let space = read_distance_matrix(src.as_bytes()).unwrap();
        assert_eq!(space.dist(0, 2), 2.0);
        let out = text(|b| write_distance_matrix(b, &space));
        let again = read_distance_matrix(out.as_bytes()).unwrap();
        assert_eq!(again.ids(), space.ids());

        let vals = read_values("id,value\nc,3\na,1\nb,2\n".as_bytes(), &space).unwrap();
        assert_eq!(vals, vec![vec![1.0], vec![2.0], vec![3.0]]);
        assert!(read_values("id,value\na,1\n".as_bytes(), &space).is_err());
        assert!(read_values("id,value\na,1\na,1\nb,1\nc,1\n".as_bytes(), &space).is_err());
        assert!(read_distance_matrix(",a,b\nb,0,1\na,1,0\n".as_bytes()).is_err());
    }

    #[test]
    fn profile_schema() {
        let space = FiniteMetricSpace::line(&[0.0, 0.5, 1.0]).unwrap();
        let f = SampledMap::real(space, vec![0.0, 0.5, 1.0]).unwrap();
        let grid = RadiusGrid::new(1.0, 0.5, 2, 1).unwrap();
        let prof = scale_profile(&f, &grid).unwrap();
        let out = text(|b| write_profile(b, &prof, f.domain()));
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], PROFILE_HEADER.join(","));
        assert_eq!(lines.len(), 1 + 3 * 2);
        assert_eq!(
            lines[1],
            "0,1.0000000000000000e0,5.0000000000000000e-1,1.0000000000000000e0,1.0000000000000000e0,\
             5.0000000000000000e-1,1.0000000000000000e0,0"
        );
        let summary = text(|b| write_profile_summary(b, &prof, f.domain()));
        assert!(summary.starts_with(&SUMMARY_HEADER.join(",")));
        let sets = text(|b| write_sets(b, &prof, f.domain(), 0.5));
        assert_eq!(sets.lines().nth(1), Some("0,0,0,0,1,1,1"));
    }

    #[test]
    fn scalar_field_with_infinities() {
        let space = Arc::new(FiniteMetricSpace::line(&[0.0, 1.0]).unwrap());
        let field = read_scalar_field("id,value\n0,inf\n1,-2\n".as_bytes(), space.clone()).unwrap();
        assert_eq!(field.values(), &[f64::INFINITY, -2.0]);
        let out = text(|b| write_scalar_field(b, &field));
        assert_eq!(out, "id,value\n0,inf\n1,-2.0000000000000000e0\n");
        let dual = text(|b| write_scalar_fields(b, &[("lower", &field), ("value", &field), ("upper", &field)]));
        assert!(dual.starts_with("id,lower,value,upper\n0,inf,inf,inf\n"));
    }
}
