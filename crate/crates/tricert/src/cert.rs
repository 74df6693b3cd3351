use std::fmt;

use thiserror::Error;

use crate::graph::{EdgeId, VertexId};

/// One path of a Mader sequence: the chain id it came from and its edges in
/// traversal order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaderPath {
    pub chain: usize,
    pub edges: Vec<EdgeId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Disconnected(VertexId),
    Bridge(EdgeId),
    TwoCut(EdgeId, EdgeId),
    Mader(Vec<MaderPath>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Disconnected,
    Bridge,
    TwoCut,
    Mader,
}

impl Certificate {
    pub fn variant(&self) -> Variant {
        match self {
            Certificate::Disconnected(_) => Variant::Disconnected,
            Certificate::Bridge(_) => Variant::Bridge,
            Certificate::TwoCut(..) => Variant::TwoCut,
            Certificate::Mader(_) => Variant::Mader,
        }
    }

    pub fn is_mader(&self) -> bool {
        matches!(self, Certificate::Mader(_))
    }

    /// Chain ids in addition order, for Mader certificates.
    pub fn chain_order(&self) -> Option<Vec<usize>> {
        match self {
            Certificate::Mader(p) => Some(p.iter().map(|p| p.chain).collect()),
            _ => None,
        }
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Disconnected(v) => writeln!(f, "DISCONNECTED {v}"),
            Certificate::Bridge(e) => writeln!(f, "BRIDGE {e}"),
            Certificate::TwoCut(a, b) => writeln!(f, "CUT2 {a} {b}"),
            Certificate::Mader(paths) => {
                writeln!(f, "MADER")?;
                for p in paths {
                    write!(f, "chain {} :", p.chain)?;
                    for e in &p.edges {
                        write!(f, " {e}")?;
                    }
                    writeln!(f)?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("certificate line {line}: {what}")]
pub struct CertParseError {
    pub line: usize,
    pub what: String,
}

fn err(line: usize, what: impl Into<String>) -> CertParseError {
    CertParseError { line, what: what.into() }
}

fn ints(line: usize, toks: &[&str]) -> Result<Vec<usize>, CertParseError> {
    toks.iter()
        .map(|t| t.parse().map_err(|_| err(line, format!("bad integer {t:?}"))))
        .collect()
}

/// Parse a certificate file. Several `CUT2` lines are accepted (the output of
/// `certify --all-cuts`); every other variant is a single certificate.
pub fn parse_certificates(text: &str) -> Result<Vec<Certificate>, CertParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .peekable();
    let (ln, head) = lines.next().ok_or_else(|| err(0, "empty certificate"))?;
    let toks: Vec<&str> = head.split_whitespace().collect();
    match toks[0] {
        "MADER" => {
            if toks.len() != 1 {
                return Err(err(ln, "trailing tokens after MADER"));
            }
            let mut paths = Vec::new();
            for (ln, l) in lines {
                let (lhs, rhs) = l.split_once(':').ok_or_else(|| err(ln, "expected `chain <id> : <edges>`"))?;
                let lt: Vec<&str> = lhs.split_whitespace().collect();
                if lt.len() != 2 || lt[0] != "chain" {
                    return Err(err(ln, "expected `chain <id>`"));
                }
                let chain = ints(ln, &lt[1..])?[0];
                let edges = ints(ln, &rhs.split_whitespace().collect::<Vec<_>>())?;
                paths.push(MaderPath { chain, edges });
            }
            Ok(vec![Certificate::Mader(paths)])
        }
        "CUT2" => {
            let mut out = Vec::new();
            let mut cur = Some((ln, toks));
            while let Some((ln, toks)) = cur {
                if toks.len() != 3 || toks[0] != "CUT2" {
                    return Err(err(ln, "expected `CUT2 e1 e2`"));
                }
                let v = ints(ln, &toks[1..])?;
                out.push(Certificate::TwoCut(v[0], v[1]));
                cur = lines.next().map(|(ln, l)| (ln, l.split_whitespace().collect()));
            }
            Ok(out)
        }
        "BRIDGE" | "DISCONNECTED" => {
            if toks.len() != 2 {
                return Err(err(ln, format!("expected `{} <id>`", toks[0])));
            }
            if let Some((ln, _)) = lines.next() {
                return Err(err(ln, "unexpected extra line"));
            }
            let x = ints(ln, &toks[1..])?[0];
            Ok(vec![if toks[0] == "BRIDGE" { Certificate::Bridge(x) } else { Certificate::Disconnected(x) }])
        }
        other => Err(err(ln, format!("unknown certificate kind {other:?}"))),
    }
}

pub fn parse_certificate(text: &str) -> Result<Certificate, CertParseError> {
    let mut v = parse_certificates(text)?;
    if v.len() != 1 {
        return Err(err(0, format!("expected one certificate, found {}", v.len())));
    }
    Ok(v.pop().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_roundtrip() {
        let certs = [
            Certificate::Disconnected(4),
            Certificate::Bridge(7),
            Certificate::TwoCut(1, 9),
            Certificate::Mader(vec![
                MaderPath { chain: 1, edges: vec![6, 5, 4, 3, 2, 1] },
                MaderPath { chain: 5, edges: vec![10] },
            ]),
        ];
        for c in certs {
            assert_eq!(parse_certificate(&c.to_text()).unwrap(), c);
        }
    }

    #[test]
    fn exact_text() {
        let c = Certificate::Mader(vec![MaderPath { chain: 2, edges: vec![7, 5] }]);
        assert_eq!(c.to_text(), "MADER\nchain 2 : 7 5\n");
        assert_eq!(Certificate::TwoCut(3, 4).to_text(), "CUT2 3 4\n");
    }

    #[test]
    fn multiple_cuts() {
        let v = parse_certificates("CUT2 1 2\nCUT2 3 4\n").unwrap();
        assert_eq!(v, vec![Certificate::TwoCut(1, 2), Certificate::TwoCut(3, 4)]);
        assert!(parse_certificate("CUT2 1 2\nCUT2 3 4\n").is_err());
    }

    #[test]
    fn malformed() {
        assert!(parse_certificates("").is_err());
        assert!(parse_certificates("CUT2 1").is_err());
        assert!(parse_certificates("MADER\nchain x : 1").is_err());
        assert!(parse_certificates("MADER\n1 2 3").is_err());
        assert!(parse_certificates("BRIDGE 1\nBRIDGE 2").is_err());
        assert!(parse_certificates("HELLO").is_err());
    }
}
