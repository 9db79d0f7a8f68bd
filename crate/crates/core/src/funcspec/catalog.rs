//! Named test functions.

use crate::domain::{Domain, DomainKind};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub expr: &'static str,
    /// Domain the function is meant to be approximated on.
    pub kind: DomainKind,
    pub mero: bool,
    pub summary: &'static str,
}

impl CatalogEntry {
    pub fn domain(&self) -> Domain {
        match self.kind {
            DomainKind::UnitInterval => Domain::interval(),
            DomainKind::UnitCircle => Domain::circle(self.mero),
            DomainKind::ImaginaryAxis => Domain::imaginary_axis(self.mero),
        }
    }
}

const fn entry(
    name: &'static str,
    expr: &'static str,
    kind: DomainKind,
    mero: bool,
    summary: &'static str,
) -> CatalogEntry {
    CatalogEntry {
        name,
        expr,
        kind,
        mero,
        summary,
    }
}

use DomainKind::{ImaginaryAxis as Axis, UnitCircle as Circle, UnitInterval as Interval};

static CATALOG: [CatalogEntry; 16] = [
    entry("runge-exp", "exp(x)", Interval, false, "entire; degree 6 to machine precision"),
    entry("abs-x", "abs(x)", Interval, false, "corner at 0, root-exponential convergence"),
    entry("exp-inv-sq", "exp(-1/x^2)", Interval, false, "smooth but not analytic at 0"),
    entry("cmv", "exp((x-1)/(x+1))", Interval, false, "essential singularity at -1"),
    entry("fermi-dirac", "1/(1+exp(1000*(x+0.5)))", Interval, false, "steep step at -0.5"),
    entry("tanh-100x", "tanh(100*x)", Interval, false, "poles at ±iπ/200 near the interval"),
    entry("tanh-1000x", "tanh(1000*x)", Interval, false, "poles at ±iπ/2000"),
    entry("sqrt-branch", "sqrt(1-z)", Circle, false, "branch point on the circle at 1"),
    entry("circle-branch", "sqrt(1-z^(-2)/4)", Circle, true, "branch points at ±1/2 inside the disk"),
    entry("tan-z4", "tan(z^4)", Circle, false, "poles at modulus (π/2)^(1/4) outside the disk"),
    entry("tan-zm4", "tan(z^(-4))", Circle, true, "poles accumulating at 0"),
    entry("exp-4-over-z", "exp(4/z)", Circle, true, "essential singularity at 0"),
    entry("abs-re-z", "abs(re(z))", Circle, true, "corners at ±i"),
    entry(
        "two-branch-axis",
        "1/(sqrt(z-(-1+10*i))*sqrt(z-(-1-10*i)))",
        Axis,
        false,
        "branch points at -1±10i, decays like 1/z",
    ),
    entry("relu", "max(0,x)", Interval, false, "corner at 0, hard case"),
    entry("abs-shift", "abs(x-0.95)", Interval, false, "corner near the endpoint, hard case"),
];

pub fn catalog() -> &'static [CatalogEntry] {
    &CATALOG
}

pub fn lookup(name: &str) -> Option<&'static CatalogEntry> {
    CATALOG.iter().find(|e| e.name == name)
}
