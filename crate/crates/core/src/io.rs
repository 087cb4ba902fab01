//! Serialization adapters and byte-stable file emission: complex values as
//! [re, im] pairs in JSON, RFC-4180 CSV with round-trip-safe reals, a minimal
//! hand-rolled SVG writer, and atomic file writes.

use std::fs;
use std::path::Path;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::jordan::{JordanBlock, JordanDecomposition};
use crate::qcore::{ComplexMatrix, PureState};
use crate::Result;

/// Complex matrix in wire form: row-major [re, im] entry pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub entries: Vec<[f64; 2]>,
}

impl MatrixJson {
    pub fn from_matrix(m: &ComplexMatrix<f64>) -> Self {
        Self {
            dim: m.dim(),
            entries: m.entries().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix<f64>> {
        ComplexMatrix::new(
            self.dim,
            self.entries
                .iter()
                .map(|[re, im]| Complex::new(*re, *im))
                .collect(),
        )
    }
}

/// Pure state in wire form: [re, im] amplitude pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateJson {
    pub amplitudes: Vec<[f64; 2]>,
}

impl StateJson {
    pub fn from_state(s: &PureState<f64>) -> Self {
        Self {
            amplitudes: s.amplitudes().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn to_state(&self) -> Result<PureState<f64>> {
        PureState::new(
            self.amplitudes
                .iter()
                .map(|[re, im]| Complex::new(*re, *im))
                .collect(),
        )
    }
}

/// Jordan decomposition in wire form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JordanJson {
    pub basis: MatrixJson,
    pub blocks: Vec<JordanBlock<f64>>,
}

impl JordanJson {
    pub fn from_decomposition(d: &JordanDecomposition<f64>) -> Self {
        Self {
            basis: MatrixJson::from_matrix(&d.basis),
            blocks: d.blocks.clone(),
        }
    }
}

/// 17-significant-digit scientific formatting; round-trips f64 exactly.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

/// RFC-4180 style CSV accumulator: header row, comma separator, "\r\n" line
/// endings, quoting only when a field needs it.
#[derive(Debug, Clone)]
pub struct CsvWriter {
    buf: String,
    columns: usize,
}

impl CsvWriter {
    pub fn new(header: &[&str]) -> Self {
        let mut w = Self {
            buf: String::new(),
            columns: header.len(),
        };
        w.push_row(header);
        w
    }

    fn escape(field: &str) -> String {
        if field.contains(',') || field.contains('"') || field.contains('\n') {
            format!("\"{}\"", field.replace('"', "\"\""))
        } else {
            field.to_string()
        }
    }

    fn push_row(&mut self, fields: &[&str]) {
        let row: Vec<String> = fields.iter().map(|f| Self::escape(f)).collect();
        self.buf.push_str(&row.join(","));
        self.buf.push_str("\r\n");
    }

    /// Appends one row; field count must match the header.
    pub fn row(&mut self, fields: &[String]) -> Result<()> {
        if fields.len() != self.columns {
            return Err(Error::invalid_parameter(format!(
                "row has {} fields, header has {}",
                fields.len(),
                self.columns
            )));
        }
        let refs: Vec<&str> = fields.iter().map(String::as_str).collect();
        self.push_row(&refs);
        Ok(())
    }

    pub fn into_string(self) -> String {
        self.buf
    }
}

/// Minimal SVG scene writer with a fixed 600×600 viewport and a data-space
/// rectangle mapped onto it with a uniform margin.
#[derive(Debug, Clone)]
pub struct SvgWriter {
    body: String,
    x_range: (f64, f64),
    y_range: (f64, f64),
}

pub const SVG_SIZE: f64 = 600.0;
const SVG_MARGIN: f64 = 60.0;

impl SvgWriter {
    pub fn new(x_range: (f64, f64), y_range: (f64, f64)) -> Result<Self> {
        if x_range.1 <= x_range.0 || y_range.1 <= y_range.0 {
            return Err(Error::invalid_parameter("empty SVG data range"));
        }
        Ok(Self {
            body: String::new(),
            x_range,
            y_range,
        })
    }

    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        let span = SVG_SIZE - 2.0 * SVG_MARGIN;
        let fx = (x - self.x_range.0) / (self.x_range.1 - self.x_range.0);
        let fy = (y - self.y_range.0) / (self.y_range.1 - self.y_range.0);
        // SVG y axis points down.
        (SVG_MARGIN + fx * span, SVG_SIZE - SVG_MARGIN - fy * span)
    }

    fn coord(v: f64) -> String {
        format!("{v:.2}")
    }

    /// Frame, tick labels at the range corners, and axis titles.
    pub fn axes(&mut self, x_label: &str, y_label: &str) {
        let (x0, y0) = self.map(self.x_range.0, self.y_range.0);
        let (x1, y1) = self.map(self.x_range.1, self.y_range.1);
        let frame = format!(
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
            Self::coord(x0.min(x1)),
            Self::coord(y0.min(y1)),
            Self::coord((x1 - x0).abs()),
            Self::coord((y0 - y1).abs()),
        );
        self.body.push_str(&frame);
        let labels = format!(
            "<text x=\"{}\" y=\"{}\" font-size=\"14\" text-anchor=\"middle\">{}</text>\n\
             <text x=\"{}\" y=\"{}\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 20 {})\">{}</text>\n\
             <text x=\"{}\" y=\"{}\" font-size=\"11\">{}</text>\n\
             <text x=\"{}\" y=\"{}\" font-size=\"11\" text-anchor=\"end\">{}</text>\n",
            Self::coord(SVG_SIZE / 2.0),
            Self::coord(SVG_SIZE - 15.0),
            xml_escape(x_label),
            Self::coord(20.0),
            Self::coord(SVG_SIZE / 2.0),
            Self::coord(SVG_SIZE / 2.0),
            xml_escape(y_label),
            Self::coord(x0),
            Self::coord(y0 + 20.0),
            fmt_short(self.x_range.0),
            Self::coord(x1),
            Self::coord(y0 + 20.0),
            fmt_short(self.x_range.1),
        );
        self.body.push_str(&labels);
    }

    pub fn polyline(&mut self, points: &[(f64, f64)], stroke: &str) {
        if points.is_empty() {
            return;
        }
        let coords: Vec<String> = points
            .iter()
            .map(|&(x, y)| {
                let (px, py) = self.map(x, y);
                format!("{},{}", Self::coord(px), Self::coord(py))
            })
            .collect();
        self.body.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>\n",
            coords.join(" "),
            stroke
        ));
    }

    pub fn dot(&mut self, x: f64, y: f64, radius: f64, fill: &str) {
        let (px, py) = self.map(x, y);
        self.body.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"/>\n",
            Self::coord(px),
            Self::coord(py),
            Self::coord(radius),
            fill
        ));
    }

    pub fn into_string(self) -> String {
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
             <svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" \
             viewBox=\"0 0 600 600\">\n{}</svg>\n",
            self.body
        )
    }
}

fn fmt_short(v: f64) -> String {
    format!("{v:.3}")
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Writes bytes through a sibling temp file plus rename, so readers never see
/// a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let file_name = path
        .file_name()
        .ok_or_else(|| Error::invalid_parameter("output path has no file name"))?;
    let tmp_name = format!(".{}.tmp", file_name.to_string_lossy());
    let tmp_path = match dir {
        Some(d) => {
            fs::create_dir_all(d)?;
            d.join(&tmp_name)
        }
        None => Path::new(&tmp_name).to_path_buf(),
    };
    fs::write(&tmp_path, bytes)?;
    fs::rename(&tmp_path, path)?;
    Ok(())
}
