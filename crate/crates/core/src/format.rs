//! Text, JSON, LaTeX and CSV renderings.

use serde::{Deserialize, Serialize};

use crate::convergence::BoundaryPoint;
use crate::error::{Error, Result};
use crate::lie::LiePolynomial;
use crate::series::{Orientation, ZassenhausSeries};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermRecord {
    pub coefficient: String,
    pub commutator: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExponentRecord {
    pub degree: usize,
    pub term_count: usize,
    pub terms: Vec<TermRecord>,
}

/// The JSON document for a series. Coefficients are exact strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesDocument {
    pub max_degree: usize,
    pub orientation: Orientation,
    pub exponents: Vec<ExponentRecord>,
}

impl SeriesDocument {
    pub fn from_series(series: &ZassenhausSeries) -> Self {
        SeriesDocument {
            max_degree: series.max_degree,
            orientation: series.orientation,
            exponents: series
                .iter()
                .map(|(n, c)| ExponentRecord {
                    degree: n,
                    term_count: c.len(),
                    terms: c
                        .sorted_terms()
                        .into_iter()
                        .map(|(t, k)| TermRecord {
                            coefficient: k.to_string(),
                            commutator: t.canonical(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn to_series(&self) -> Result<ZassenhausSeries> {
        let mut exponents = Vec::with_capacity(self.exponents.len());
        for (i, rec) in self.exponents.iter().enumerate() {
            if rec.degree != i + 2 {
                return Err(Error::InvalidArgument(format!(
                    "exponent {i} has degree {}, expected {}",
                    rec.degree,
                    i + 2
                )));
            }
            let mut p = LiePolynomial::zero();
            for t in &rec.terms {
                let term: crate::lie::CommutatorTerm = t.commutator.parse()?;
                if term.degree() != rec.degree {
                    return Err(Error::InvalidArgument(format!(
                        "term {} has degree {} inside C_{}",
                        t.commutator,
                        term.degree(),
                        rec.degree
                    )));
                }
                p.add_term(term, t.coefficient.parse()?);
            }
            if p.len() != rec.term_count {
                return Err(Error::InvalidArgument(format!(
                    "C_{} lists term_count {} but has {} distinct terms",
                    rec.degree,
                    rec.term_count,
                    p.len()
                )));
            }
            exponents.push(p);
        }
        if self.max_degree != exponents.len() + 1 {
            return Err(Error::InvalidArgument(format!(
                "max_degree {} does not match {} exponents",
                self.max_degree,
                exponents.len()
            )));
        }
        Ok(ZassenhausSeries {
            max_degree: self.max_degree,
            orientation: self.orientation,
            exponents,
        })
    }
}

pub fn series_to_json(series: &ZassenhausSeries) -> String {
    serde_json::to_string_pretty(&SeriesDocument::from_series(series)).expect("serializable")
}

pub fn series_from_json(s: &str) -> Result<ZassenhausSeries> {
    let doc: SeriesDocument = serde_json::from_str(s).map_err(|e| Error::Parse {
        pos: e.column(),
        msg: e.to_string(),
    })?;
    doc.to_series()
}

/// One line per exponent: `C2 = (-1/2)[X,Y]`.
pub fn series_to_text(series: &ZassenhausSeries) -> String {
    let mut out = String::new();
    for (n, c) in series.iter() {
        out.push_str(&format!("C{n} = {c}\n"));
    }
    out
}

fn latex_coefficient(c: &crate::rational::ExactRational) -> String {
    let sign = if c.is_negative() { "-" } else { "" };
    let a = c.abs();
    if a.denom() == &num_bigint::BigInt::from(1) {
        format!("{sign}{}", a.numer())
    } else {
        format!("{sign}\\frac{{{}}}{{{}}}", a.numer(), a.denom())
    }
}

/// An `align*` block, one exponent per line; brackets are kept verbatim.
pub fn series_to_latex(series: &ZassenhausSeries) -> String {
    let name = match series.orientation {
        Orientation::Right => "C",
        Orientation::Left => "\\hat{C}",
    };
    let mut out = String::from("\\begin{align*}\n");
    for (n, c) in series.iter() {
        let body = if c.is_empty() {
            "0".to_string()
        } else {
            c.sorted_terms()
                .into_iter()
                .map(|(t, k)| format!("{} {}", latex_coefficient(k), t))
                .collect::<Vec<_>>()
                .join(" + ")
                .replace("+ -", "- ")
        };
        out.push_str(&format!("  {name}_{{{n}}} &= {body} \\\\\n"));
    }
    out.push_str("\\end{align*}\n");
    out
}

pub const BOUNDARY_CSV_HEADER: &str = "x,y_boundary,n_max,ratio";

/// Boundary rows with shortest round-trip float formatting.
pub fn boundary_to_csv(points: &[BoundaryPoint]) -> String {
    let mut out = String::from(BOUNDARY_CSV_HEADER);
    out.push('\n');
    for p in points {
        out.push_str(&format!(
            "{:?},{:?},{},{:?}\n",
            p.x, p.y_boundary, p.n_max, p.ratio
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::zassenhaus_series;

    #[test]
    fn text_rendering() {
        let s = zassenhaus_series(3).unwrap();
        assert_eq!(
            series_to_text(&s),
            "C2 = (-1/2)[X,Y]\nC3 = (1/6)[X,[X,Y]] + (1/3)[Y,[X,Y]]\n"
        );
    }

    #[test]
    fn json_field_names() {
        let s = zassenhaus_series(2).unwrap();
        let v: serde_json::Value = serde_json::from_str(&series_to_json(&s)).unwrap();
        assert_eq!(v["max_degree"], 2);
        assert_eq!(v["orientation"], "right");
        assert_eq!(v["exponents"][0]["degree"], 2);
        assert_eq!(v["exponents"][0]["term_count"], 1);
        assert_eq!(v["exponents"][0]["terms"][0]["coefficient"], "-1/2");
        assert_eq!(v["exponents"][0]["terms"][0]["commutator"], "[X,Y]");
    }

    #[test]
    fn json_rejects_inconsistent_documents() {
        let s = zassenhaus_series(3).unwrap();
        let mut doc = SeriesDocument::from_series(&s);
        doc.exponents[1].term_count = 5;
        assert!(doc.to_series().is_err());
        let mut doc = SeriesDocument::from_series(&s);
        doc.exponents[0].terms[0].commutator = "[X,[X,Y]]".into();
        assert!(doc.to_series().is_err());
        assert!(series_from_json("{").is_err());
    }

    #[test]
    fn latex_rendering() {
        let s = zassenhaus_series(2).unwrap();
        assert_eq!(
            series_to_latex(&s),
            "\\begin{align*}\n  C_{2} &= -\\frac{1}{2} [X,Y] \\\\\n\\end{align*}\n"
        );
    }

    #[test]
    fn csv_rendering() {
        let p = BoundaryPoint {
            x: 0.1,
            y_boundary: 2.5,
            n_max: 1000,
            ratio: 0.9999,
        };
        assert_eq!(
            boundary_to_csv(&[p]),
            "x,y_boundary,n_max,ratio\n0.1,2.5,1000,0.9999\n"
        );
    }
}
