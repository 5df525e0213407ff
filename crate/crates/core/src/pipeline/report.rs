//! Machine-readable reports. Every field is a string, integer or list, so a
//! report re-serializes byte for byte.

use serde::{Deserialize, Serialize};

use super::diag::{DiagonalizationResult, Verdict};
use super::split::SplitCertificate;
use crate::groebner::{Ideal, MonomialOrder};
use crate::normalize::PresentationJson;
use crate::scalar::{fmt_rational, Field, Tower};
use crate::series::TruncatedSeries;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub task: String,
    pub seed: u64,
    pub order: u32,
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// The Hermitian matrix the split test ran on, in terms of `A`.
    pub matrix_used: String,
    /// `c₁, …, c_d` with `μ = tᵈ + c₁tᵈ⁻¹ + … + c_d`.
    pub minimal_polynomial: Vec<String>,
    pub stages: Vec<StageJson>,
    pub certificate: CertificateJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagonalization: Option<DiagJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageJson {
    pub stage: String,
    pub summary: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub split: bool,
    pub vieta: Vec<String>,
    pub primes: Vec<Vec<String>>,
    pub prime_index: usize,
    pub q: Vec<String>,
    pub presentation: PresentationJson,
    pub maximal_ideal: MaximalJson,
    pub maximal_ideal_count: usize,
    pub jacobian_rank: usize,
    pub needed_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalJson {
    pub generators: Vec<String>,
    pub residue_field: Vec<GeneratorJson>,
    pub residues: Vec<ResidueJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub name: String,
    pub min_poly: String,
    pub interval: [String; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueJson {
    pub var: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionJson {
    pub root: String,
    pub residue: String,
    pub entries: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub local: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub order: u32,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagJson {
    pub projections: Vec<ProjectionJson>,
    pub selected_columns: Vec<Vec<usize>>,
    pub block_order: Vec<String>,
    pub eigenvalues: Vec<SeriesJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<Vec<Vec<SeriesJson>>>,
    pub d: Vec<SeriesJson>,
    pub tower: Vec<GeneratorJson>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(src: &str) -> serde_json::Result<Report> {
        serde_json::from_str(src)
    }
}

pub fn ideal_strings<C: Field>(i: &Ideal<C>) -> Vec<String> {
    i.gb(MonomialOrder::DegRevLex).iter().map(|g| g.to_string()).collect()
}

pub fn tower_json(t: &Tower) -> Vec<GeneratorJson> {
    t.describe()
        .into_iter()
        .map(|(name, min_poly, (lo, hi))| GeneratorJson { name, min_poly, interval: [fmt_rational(&lo), fmt_rational(&hi)] })
        .collect()
}

pub fn series_json(s: &TruncatedSeries) -> SeriesJson {
    SeriesJson { order: s.order(), value: s.to_string() }
}

pub fn certificate_json(c: &SplitCertificate) -> CertificateJson {
    let mv = c.maximal.ideal.vars();
    CertificateJson {
        split: c.verdict,
        vieta: ideal_strings(&c.vieta),
        primes: c.primes.iter().map(ideal_strings).collect(),
        prime_index: c.prime_index,
        q: ideal_strings(&c.q),
        presentation: c.presentation.to_json(),
        maximal_ideal: MaximalJson {
            generators: ideal_strings(&c.maximal.ideal),
            residue_field: tower_json(&c.maximal.tower),
            residues: c
                .maximal
                .residues
                .iter()
                .enumerate()
                .map(|(i, r)| ResidueJson { var: mv.name(i).to_string(), value: r.to_string() })
                .collect(),
        },
        maximal_ideal_count: c.maximal_count,
        jacobian_rank: c.rank,
        needed_rank: c.needed,
    }
}

pub fn split_stages(c: &SplitCertificate) -> Vec<StageJson> {
    let st = |stage: &str, summary: String| StageJson { stage: stage.into(), summary };
    vec![
        st("vieta", format!("{} generators", c.vieta.gens().len())),
        st("primes", format!("{} minimal primes over the origin, using #{}", c.primes.len(), c.prime_index)),
        st("normalize", format!("{} closure variables", c.presentation.closure_count())),
        st("maximal", format!("{} maximal ideals over the origin, residue degree {}", c.maximal_count, residue_degree(&c.maximal.tower))),
        st("jacobian", format!("rank {} of {}", c.rank, c.needed)),
    ]
}

fn residue_degree(t: &Tower) -> usize {
    let mut deg = 1;
    let mut t = t.clone();
    while t.depth() > 0 {
        deg *= t.degree();
        t = t.parent();
    }
    deg
}

pub fn verdict_name(v: &Verdict) -> &'static str {
    match v {
        Verdict::Diagonalizable => "diagonalizable",
        Verdict::NotDiagonalizable(_) => "not_diagonalizable",
        Verdict::SplitFails => "split_fails",
    }
}

pub fn diag_json(r: &DiagonalizationResult) -> Option<DiagJson> {
    if r.projections.is_empty() {
        return None;
    }
    let names: Vec<&str> = r.projections.iter().map(|p| p.root.as_str()).collect();
    Some(DiagJson {
        projections: r
            .projections
            .iter()
            .map(|p| ProjectionJson {
                root: p.root.clone(),
                residue: p.residue.to_string(),
                entries: p.matrix.to_rows().iter().map(|row| row.iter().map(|e| e.to_string()).collect()).collect(),
                local: p.local.as_ref().map(|m| {
                    m.to_rows()
                        .iter()
                        .map(|row| row.iter().map(|(f, g)| if g.is_one() { f.to_string() } else { format!("({f})/({g})") }).collect())
                        .collect()
                }),
            })
            .collect(),
        selected_columns: r.selected.clone(),
        block_order: r.block_order.iter().map(|&k| names[k].to_string()).collect(),
        eigenvalues: r.eigenvalues.iter().map(series_json).collect(),
        u: r.u.as_ref().map(|u| u.to_rows().iter().map(|row| row.iter().map(series_json).collect()).collect()),
        d: r.d.iter().map(series_json).collect(),
        tower: tower_json(&r.tower),
    })
}
