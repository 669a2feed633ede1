//! `Z_p`-index and coindex reports.
//!
//! `coind_p X` is the largest `n` with an equivariant map `E_n Z_p → X` and
//! `ind_p X` the smallest `n` with a map `X → E_n Z_p`; both are `-1` for the
//! empty set and `coind ≤ ind`. A report holds bounds on both, and every
//! bound names the rule or certificate it came from.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize, Serializer};

use crate::complex::{is_en_zp, join_all, EquivariantComplex, EnReport};
use crate::error::{Error, Result};

/// An upper bound: an integer or `+∞` (serialized as `"inf"`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Bound {
    Finite(i64),
    Infinite,
}

impl Bound {
    pub fn finite(&self) -> Option<i64> {
        match self {
            Bound::Finite(v) => Some(*v),
            Bound::Infinite => None,
        }
    }

    fn at_least(&self, v: i64) -> bool {
        match self {
            Bound::Finite(b) => *b >= v,
            Bound::Infinite => true,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(v) => write!(f, "{v}"),
            Bound::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Bound::Finite(v) => s.serialize_i64(*v),
            Bound::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexReport {
    pub p: u32,
    pub space: String,
    pub coind_lower: i64,
    pub coind_upper: Bound,
    pub ind_lower: i64,
    pub ind_upper: Bound,
    pub exact: bool,
    pub provenance: Vec<String>,
}

impl IndexReport {
    /// No information beyond `coind ≥ -1`.
    pub fn unknown(p: u32, space: impl Into<String>) -> Self {
        IndexReport {
            p,
            space: space.into(),
            coind_lower: -1,
            coind_upper: Bound::Infinite,
            ind_lower: -1,
            ind_upper: Bound::Infinite,
            exact: false,
            provenance: Vec::new(),
        }
    }

    fn exact_value(p: u32, space: impl Into<String>, k: i64, rule: String) -> Self {
        IndexReport {
            p,
            space: space.into(),
            coind_lower: k,
            coind_upper: Bound::Finite(k),
            ind_lower: k,
            ind_upper: Bound::Finite(k),
            exact: true,
            provenance: vec![rule],
        }
    }

    /// Raises the coindex lower bound; `ind ≥ coind` raises the index lower bound with it.
    pub fn raise_coind_lower(&mut self, v: i64, rule: impl Into<String>) {
        let rule = rule.into();
        if v > self.coind_lower {
            self.coind_lower = v;
            self.provenance.push(format!("coind_lower >= {v}: {rule}"));
        } else {
            self.provenance.push(format!("coind_lower >= {v} (no change): {rule}"));
        }
        self.ind_lower = self.ind_lower.max(self.coind_lower);
        self.refresh_exact();
    }

    /// Lowers the index upper bound; `coind ≤ ind` lowers the coindex upper bound with it.
    pub fn lower_ind_upper(&mut self, v: i64, rule: impl Into<String>) {
        let rule = rule.into();
        if Bound::Finite(v) < self.ind_upper {
            self.ind_upper = Bound::Finite(v);
            self.provenance.push(format!("ind_upper <= {v}: {rule}"));
        } else {
            self.provenance.push(format!("ind_upper <= {v} (no change): {rule}"));
        }
        self.coind_upper = self.coind_upper.min(self.ind_upper);
        self.refresh_exact();
    }

    fn refresh_exact(&mut self) {
        self.exact = self.coind_upper == Bound::Finite(self.coind_lower) && self.ind_upper == Bound::Finite(self.ind_lower);
    }

    /// `coind_lower ≤ coind_upper ≤ ind_upper`, `coind_lower ≤ ind_lower ≤ ind_upper`.
    pub fn is_consistent(&self) -> bool {
        self.coind_lower >= -1
            && self.coind_upper.at_least(self.coind_lower)
            && self.ind_upper.at_least(self.ind_lower)
            && self.coind_upper <= self.ind_upper
            && self.coind_lower <= self.ind_lower
    }

    /// The exact value when `exact` holds.
    pub fn value(&self) -> Option<i64> {
        self.exact.then_some(self.coind_lower)
    }
}

fn require_finite_free(s: &EquivariantComplex) -> Result<()> {
    if s.dim() > 0 {
        return Err(Error::shape(format!("expected a finite set, got a complex of dimension {}", s.dim())));
    }
    s.require_free()
}

/// A nonempty finite free `Z_p`-set has `ind = coind = 0`: it maps to `Z_p`
/// by sending each orbit representative to 0, and `Z_p` maps into any orbit.
pub fn exact_index_finite_free(s: &EquivariantComplex, name: &str) -> Result<IndexReport> {
    require_finite_free(s)?;
    if s.is_empty() {
        return Ok(IndexReport::exact_value(s.p(), name, -1, "empty space: ind = coind = -1".into()));
    }
    let orbits = s.n_vertices() / s.p() as usize;
    Ok(IndexReport::exact_value(
        s.p(),
        name,
        0,
        format!("finite free set with {orbits} orbits: orbit maps to and from Z_p (E_0 Z_p)"),
    ))
}

/// A join of `K+1` nonempty finite free sets is an `E_K Z_p`-space, so its
/// index and coindex are `K`. Empty factors are dropped (the join identity).
pub fn index_of_join_of_finite(factors: &[&EquivariantComplex], name: &str) -> Result<IndexReport> {
    let p = factors.first().map(|f| f.p()).ok_or_else(|| Error::shape("join of zero factors"))?;
    let mut sizes = Vec::new();
    for f in factors {
        if f.p() != p {
            return Err(Error::shape(format!("cannot join Z_{p} and Z_{} sets", f.p())));
        }
        require_finite_free(f)?;
        if !f.is_empty() {
            sizes.push(f.n_vertices());
        }
    }
    if sizes.is_empty() {
        return Ok(IndexReport::exact_value(p, name, -1, "join of empty sets is empty: ind = coind = -1".into()));
    }
    let k = sizes.len() as i64 - 1;
    let dropped = factors.len() - sizes.len();
    let mut rule = format!(
        "E_{k} recognition: join of {} nonempty finite free Z_{p}-sets of sizes {sizes:?}",
        sizes.len()
    );
    if dropped > 0 {
        rule.push_str(&format!(" ({dropped} empty factors dropped)"));
    }
    Ok(IndexReport::exact_value(p, name, k, rule))
}

/// `coind(X * Y) ≥ coind X + coind Y + 1`, from the lower bounds of two reports.
pub fn coindex_join_lower(r1: &IndexReport, r2: &IndexReport) -> Result<i64> {
    if r1.p != r2.p {
        return Err(Error::shape(format!("cannot join Z_{} and Z_{} spaces", r1.p, r2.p)));
    }
    Ok(r1.coind_lower + r2.coind_lower + 1)
}

/// A report for `X * Y` carrying only the join lower bound.
pub fn join_report(r1: &IndexReport, r2: &IndexReport) -> Result<IndexReport> {
    let v = coindex_join_lower(r1, r2)?;
    let mut out = IndexReport::unknown(r1.p, format!("({}) * ({})", r1.space, r2.space));
    out.raise_coind_lower(
        v,
        format!("join superadditivity: {} + {} + 1", r1.coind_lower, r2.coind_lower),
    );
    Ok(out)
}

/// Maps known to be equivariant and continuous by construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructuralMap {
    Identity,
    /// `x ↦ (x, x)`, letterwise.
    PairEmbed,
    /// Letters padded with constant coordinates.
    PadEmbed,
    /// Inclusion of a subspace with the restricted action.
    Inclusion,
}

impl fmt::Display for StructuralMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StructuralMap::Identity => "identity",
            StructuralMap::PairEmbed => "pair_embed x -> (x, x)",
            StructuralMap::PadEmbed => "pad_embed",
            StructuralMap::Inclusion => "inclusion",
        })
    }
}

/// Evidence that an equivariant map `X → Y` exists.
#[derive(Debug, Clone)]
pub enum MapEvidence<'a> {
    Structural(StructuralMap),
    /// An accepted certificate; its domain is the `E_n` model.
    Certified(&'a CertificateReport),
    Unverified(String),
}

/// `coind X ≤ coind Y` along an equivariant map `X → Y`.
pub fn coindex_transport(evidence: &MapEvidence<'_>, source: &IndexReport, target: &mut IndexReport) -> Result<()> {
    if source.p != target.p {
        return Err(Error::shape(format!("map between Z_{} and Z_{} spaces", source.p, target.p)));
    }
    let how = match evidence {
        MapEvidence::Structural(StructuralMap::Identity) => return Ok(()),
        MapEvidence::Structural(m) => format!("structural map {m}"),
        MapEvidence::Certified(cert) if cert.accepted => format!("certificate for {}", cert.target_ref),
        MapEvidence::Certified(cert) => {
            return Err(Error::Rejected(format!(
                "certificate was not accepted: {}",
                cert.witness.as_deref().unwrap_or("no witness")
            )))
        }
        MapEvidence::Unverified(what) => return Err(Error::Rejected(format!("unverified map {what}"))),
    };
    target.raise_coind_lower(
        source.coind_lower,
        format!("monotonicity along {how} from {} (coind_lower {})", source.space, source.coind_lower),
    );
    Ok(())
}

/// `ind_p C ≤ dim C` for a free complex.
pub fn ind_upper_by_dimension(c: &EquivariantComplex) -> Result<i64> {
    c.require_free()?;
    Ok(c.dim())
}

/// Applies [`ind_upper_by_dimension`] to a report.
pub fn apply_dimension_bound(c: &EquivariantComplex, report: &mut IndexReport) -> Result<()> {
    let d = ind_upper_by_dimension(c)?;
    report.lower_ind_upper(d, format!("dimension {d} of a free complex (standard-theory bound, not verified internally)"));
    Ok(())
}

/// Domain of a certificate: a fixed model of `E_n Z_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertDomain {
    /// `(Z_p)^{*(n+1)}`: vertex `i·p + g` is element `g` of copy `i`.
    StandardJoin,
    /// A cycle of even length with `x ↦ x + len/2`; an `E_1 Z_2` model.
    AntipodalCycle(u32),
}

impl fmt::Display for CertDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertDomain::StandardJoin => f.write_str("join"),
            CertDomain::AntipodalCycle(len) => write!(f, "antipodal_cycle({len})"),
        }
    }
}

impl FromStr for CertDomain {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "join" || s.starts_with("join(") {
            return Ok(CertDomain::StandardJoin);
        }
        if let Some(len) = s.strip_prefix("antipodal_cycle(").and_then(|r| r.strip_suffix(')')) {
            let len = len.parse().map_err(|_| Error::parse(format!("cycle length in {s:?}")))?;
            return Ok(CertDomain::AntipodalCycle(len));
        }
        Err(Error::parse(format!("unknown certificate domain {s:?}")))
    }
}

/// An equivariant simplicial map from an `E_n Z_p` model to a target complex,
/// given on vertices by target labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquivariantMapCert {
    pub p: u32,
    pub n: i64,
    /// `"join(Zp)^{n+1}"` or `"antipodal_cycle(len)"`.
    pub domain: String,
    pub vertex_map: Vec<String>,
    pub target_ref: String,
}

impl EquivariantMapCert {
    pub fn standard(p: u32, n: i64, vertex_map: Vec<String>, target_ref: impl Into<String>) -> Self {
        EquivariantMapCert { p, n, domain: format!("join(Z{p})^{{{}}}", n + 1), vertex_map, target_ref: target_ref.into() }
    }

    pub fn domain_kind(&self) -> Result<CertDomain> {
        self.domain.parse()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("certificate: {e}")))
    }
}

/// `(Z_p)^{*(n+1)}`.
pub fn standard_join_model(p: u32, n: i64) -> Result<EquivariantComplex> {
    if n < 0 {
        return EquivariantComplex::discrete(p, vec![], vec![]);
    }
    let zp = EquivariantComplex::cyclic_group(p)?;
    join_all(&vec![&zp; n as usize + 1])
}

pub fn antipodal_cycle(len: u32) -> Result<EquivariantComplex> {
    if len < 4 || !len.is_multiple_of(2) {
        return Err(Error::shape(format!("antipodal cycle needs even length >= 4, got {len}")));
    }
    let labels = (0..len).map(|x| x.to_string()).collect();
    let action = (0..len).map(|x| (x + len / 2) % len).collect();
    let edges: Vec<Vec<u32>> = (0..len).map(|x| vec![x, (x + 1) % len]).collect();
    EquivariantComplex::from_maximal_simplices(2, labels, action, &edges)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub accepted: bool,
    pub p: u32,
    pub n: i64,
    pub target_ref: String,
    pub checks: Vec<CheckResult>,
    /// First failed check's witness.
    pub witness: Option<String>,
    pub domain_model: Option<EnReport>,
}

impl CertificateReport {
    /// Raises the target report's coindex bound to `n` if accepted.
    pub fn apply_to(&self, report: &mut IndexReport) -> Result<()> {
        if !self.accepted {
            return Err(Error::Rejected(self.witness.clone().unwrap_or_else(|| "certificate rejected".into())));
        }
        if report.p != self.p {
            return Err(Error::shape(format!("certificate for Z_{} applied to a Z_{} report", self.p, report.p)));
        }
        report.raise_coind_lower(self.n, format!("verified equivariant map E_{} Z_{} -> {}", self.n, self.p, self.target_ref));
        Ok(())
    }
}

/// Checks that the certificate's domain is an `E_n Z_p` model, that the
/// vertex map is total, equivariant, and sends every domain cell into a cell
/// of the target, and that the target action is free.
pub fn verify_certificate(cert: &EquivariantMapCert, target: &EquivariantComplex) -> Result<CertificateReport> {
    let mut checks = Vec::new();
    let mut push = |name: &'static str, witness: Option<String>| {
        checks.push(CheckResult { name, passed: witness.is_none(), witness });
    };
    let mut domain_model = None;

    let domain = match cert.domain_kind()? {
        CertDomain::StandardJoin => {
            let expected = format!("join(Z{})^{{{}}}", cert.p, cert.n + 1);
            if cert.domain != "join" && cert.domain != expected {
                Err(Error::shape(format!("domain {:?} does not match p and n; expected {expected:?}", cert.domain)))
            } else {
                standard_join_model(cert.p, cert.n)
            }
        }
        CertDomain::AntipodalCycle(len) => {
            if cert.p != 2 || cert.n != 1 {
                Err(Error::shape("an antipodal cycle models E_1 Z_2 only"))
            } else {
                antipodal_cycle(len)
            }
        }
    };
    let domain = match domain {
        Ok(d) => {
            let en = is_en_zp(&d, cert.n, None)?;
            let w = (!en.certified).then(|| format!("domain {} is not a certified E_{} model: {}", cert.domain, cert.n, en.basis));
            domain_model = Some(en);
            push("domain_is_en_model", w);
            Some(d)
        }
        Err(e) => {
            push("domain_is_en_model", Some(e.to_string()));
            None
        }
    };

    let free = target.verify_free_action();
    push(
        "target_free",
        if cert.p != target.p() {
            Some(format!("target acted on by Z_{}, certificate by Z_{}", target.p(), cert.p))
        } else {
            free.witness.map(|w| format!("invariant target cell {w}"))
        },
    );

    let mut image: Option<Vec<u32>> = None;
    if let Some(d) = &domain {
        let w = if cert.vertex_map.len() != d.n_vertices() {
            Some(format!("vertex map has {} entries for {} domain vertices", cert.vertex_map.len(), d.n_vertices()))
        } else {
            let mut img = Vec::with_capacity(d.n_vertices());
            let mut missing = None;
            for (v, label) in cert.vertex_map.iter().enumerate() {
                match target.vertex_by_label(label) {
                    Some(t) => img.push(t),
                    None => {
                        missing = Some(format!("domain vertex {} maps to unknown target vertex {label:?}", d.labels()[v]));
                        break;
                    }
                }
            }
            if missing.is_none() {
                image = Some(img);
            }
            missing
        };
        push("vertex_map_total", w);
    }

    if let (Some(d), Some(img)) = (&domain, &image) {
        let w = (0..d.n_vertices()).find_map(|v| {
            let lhs = img[d.action()[v] as usize];
            let rhs = target.action()[img[v] as usize];
            (lhs != rhs).then(|| {
                format!(
                    "at domain vertex {}: f(pi x) = {} but pi f(x) = {}",
                    d.labels()[v],
                    target.labels()[lhs as usize],
                    target.labels()[rhs as usize]
                )
            })
        });
        push("equivariant", w);

        let w = d.maximal_cells().into_iter().find_map(|cell| {
            let mapped: Vec<u32> = cell.iter().map(|&v| img[v as usize]).collect();
            (!target.spans_cell(&mapped)).then(|| {
                let src: Vec<&str> = cell.iter().map(|&v| d.labels()[v as usize].as_str()).collect();
                let dst: Vec<&str> = mapped.iter().map(|&v| target.labels()[v as usize].as_str()).collect();
                format!("domain cell {{{}}} maps to {{{}}}, which spans no target cell", src.join(", "), dst.join(", "))
            })
        });
        push("cells_to_cells", w);
    }

    let accepted = checks.len() == 5 && checks.iter().all(|c| c.passed);
    let witness = checks.iter().find_map(|c| c.witness.clone());
    Ok(CertificateReport { accepted, p: cert.p, n: cert.n, target_ref: cert.target_ref.clone(), checks, witness, domain_model })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::{enumerate_periodic, EnumConfig, SubshiftSpec};

    fn sigma_points(m: u32, p: u32) -> EquivariantComplex {
        let spec = SubshiftSpec::sigma(m).unwrap();
        let pts = enumerate_periodic(&spec, p as usize, &EnumConfig::default()).unwrap();
        EquivariantComplex::from_periodic_words(p, spec.alphabet(), &pts.words).unwrap()
    }

    #[test]
    fn finite_free_sets() {
        let s = sigma_points(1, 5);
        assert_eq!(s.n_vertices(), 30);
        let r = exact_index_finite_free(&s, "P_5(Sigma_1)").unwrap();
        assert_eq!(r.value(), Some(0));
        assert!(r.provenance[0].contains("6 orbits"));
        let empty = EquivariantComplex::discrete(5, vec![], vec![]).unwrap();
        assert_eq!(exact_index_finite_free(&empty, "empty").unwrap().value(), Some(-1));
        let z7 = EquivariantComplex::cyclic_group(7).unwrap();
        assert_eq!(exact_index_finite_free(&z7, "Z_7").unwrap().value(), Some(0));
    }

    #[test]
    fn non_free_set_rejected_with_witness() {
        // {a, b, c} with a fixed: the 0-cell {c} is invariant
        let labels = vec!["a".to_string(), "b".to_string(), "c".to_string()];
        let s = EquivariantComplex::discrete(2, labels, vec![1, 0, 2]).unwrap();
        let err = exact_index_finite_free(&s, "s").unwrap_err();
        assert_eq!(err.reason(), "not_free");
        assert!(err.to_string().contains("{c}"));
    }

    #[test]
    fn joins_of_finite_sets() {
        let s = sigma_points(1, 5);
        assert_eq!(index_of_join_of_finite(&[&s, &s], "j").unwrap().value(), Some(1));
        let t = sigma_points(2, 7);
        assert_eq!(index_of_join_of_finite(&[&t, &t, &t], "j").unwrap().value(), Some(2));
        assert_eq!(index_of_join_of_finite(&[&t], "j").unwrap().value(), Some(0));
        let empty = EquivariantComplex::discrete(7, vec![], vec![]).unwrap();
        assert_eq!(index_of_join_of_finite(&[&t, &empty, &t], "j").unwrap().value(), Some(1));
        assert_eq!(index_of_join_of_finite(&[&empty, &empty], "j").unwrap().value(), Some(-1));
        assert!(index_of_join_of_finite(&[&s, &t], "j").is_err());
    }

    #[test]
    fn join_lower_bound_arithmetic() {
        let r = |k: i64| {
            let mut r = IndexReport::unknown(3, format!("X{k}"));
            r.raise_coind_lower(k, "given");
            r
        };
        assert_eq!(coindex_join_lower(&r(0), &r(0)).unwrap(), 1);
        assert_eq!(coindex_join_lower(&r(-1), &r(4)).unwrap(), 4);
        assert_eq!(coindex_join_lower(&r(1), &r(2)).unwrap(), 4);
        assert_eq!(coindex_join_lower(&r(2), &r(1)).unwrap(), 4);
        assert!(join_report(&r(1), &r(2)).unwrap().is_consistent());
        assert!(coindex_join_lower(&r(0), &IndexReport::unknown(5, "Y")).is_err());
    }

    #[test]
    fn transport_rules() {
        let s = sigma_points(1, 5);
        let src = index_of_join_of_finite(&[&s, &s, &s], "src").unwrap();
        let mut tgt = IndexReport::unknown(5, "tgt");
        coindex_transport(&MapEvidence::Structural(StructuralMap::Identity), &src, &mut tgt).unwrap();
        assert_eq!(tgt.coind_lower, -1);
        coindex_transport(&MapEvidence::Structural(StructuralMap::Inclusion), &src, &mut tgt).unwrap();
        assert_eq!(tgt.coind_lower, 2);
        assert_eq!(tgt.ind_lower, 2);
        let err = coindex_transport(&MapEvidence::Unverified("guess".into()), &src, &mut tgt).unwrap_err();
        assert_eq!(err.reason(), "rejected");
        assert!(tgt.is_consistent());
    }

    #[test]
    fn dimension_bound() {
        let z3 = EquivariantComplex::cyclic_group(3).unwrap();
        let j = join_all(&[&z3, &z3]).unwrap();
        assert_eq!(ind_upper_by_dimension(&j).unwrap(), 1);
        assert_eq!(ind_upper_by_dimension(&z3).unwrap(), 0);
        assert_eq!(ind_upper_by_dimension(&join_all(&[&z3, &z3, &z3]).unwrap()).unwrap(), 2);
        let mut r = IndexReport::unknown(3, "K33");
        r.raise_coind_lower(1, "identity certificate");
        apply_dimension_bound(&j, &mut r).unwrap();
        assert_eq!(r.value(), Some(1));
        assert!(r.provenance.last().unwrap().contains("standard-theory"));
    }

    #[test]
    fn bound_serializes_infinity() {
        let r = IndexReport::unknown(2, "X");
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["ind_upper"], "inf");
        assert_eq!(v["coind_lower"], -1);
    }

    #[test]
    fn identity_certificate_accepted_and_tampering_caught() {
        let target = standard_join_model(3, 1).unwrap();
        let cert = EquivariantMapCert::standard(3, 1, target.labels().to_vec(), "(Z3)^{*2}");
        let rep = verify_certificate(&cert, &target).unwrap();
        assert!(rep.accepted, "{rep:?}");
        let mut r = IndexReport::unknown(3, "(Z3)^{*2}");
        rep.apply_to(&mut r).unwrap();
        assert_eq!(r.coind_lower, 1);

        // round trip through JSON re-verifies identically
        let again = EquivariantMapCert::from_json(&cert.to_json().unwrap()).unwrap();
        assert_eq!(verify_certificate(&again, &target).unwrap(), rep);

        let mut bad = cert.clone();
        bad.vertex_map[0] = "0/1".into();
        let rep = verify_certificate(&bad, &target).unwrap();
        assert!(!rep.accepted);
        let failed = rep.checks.iter().find(|c| !c.passed).unwrap();
        assert_eq!(failed.name, "equivariant");
        assert!(rep.witness.unwrap().contains("domain vertex 0/0"));
        assert!(rep_rejects_transport(&verify_certificate(&bad, &target).unwrap()));
    }

    fn rep_rejects_transport(rep: &CertificateReport) -> bool {
        let src = IndexReport::unknown(3, "E_1");
        let mut tgt = IndexReport::unknown(3, "t");
        coindex_transport(&MapEvidence::Certified(rep), &src, &mut tgt).is_err() && rep.apply_to(&mut tgt).is_err()
    }

    #[test]
    fn noncontinuous_map_rejected() {
        // folding both copies onto copy 0 is equivariant but sends edges to non-edges
        let target = standard_join_model(3, 1).unwrap();
        let folded: Vec<String> = (0..6).map(|v| format!("0/{}", v % 3)).collect();
        let cert = EquivariantMapCert::standard(3, 1, folded, "fold");
        let rep = verify_certificate(&cert, &target).unwrap();
        assert!(!rep.accepted);
        assert_eq!(rep.checks.iter().find(|c| !c.passed).unwrap().name, "cells_to_cells");
        let short = EquivariantMapCert::standard(3, 1, vec!["0/0".into()], "short");
        assert!(!verify_certificate(&short, &target).unwrap().accepted);
        let mut mislabeled = EquivariantMapCert::standard(3, 1, target.labels().to_vec(), "t");
        mislabeled.domain = "join(Z3)^{3}".into();
        assert!(!verify_certificate(&mislabeled, &target).unwrap().accepted);
    }

    #[test]
    fn antipodal_cycle_domain() {
        let c = antipodal_cycle(8).unwrap();
        let en = is_en_zp(&c, 1, None).unwrap();
        assert!(en.certified, "{en:?}");
        assert!(antipodal_cycle(6).is_ok());
        assert!(antipodal_cycle(5).is_err());
        assert_eq!("antipodal_cycle(8)".parse::<CertDomain>().unwrap(), CertDomain::AntipodalCycle(8));
        assert_eq!("join(Z3)^{2}".parse::<CertDomain>().unwrap(), CertDomain::StandardJoin);
    }
}
