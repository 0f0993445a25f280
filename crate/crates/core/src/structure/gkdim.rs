use crate::{Check, Datum, Report};

/// `GKdim B = GKdim R + n` with the hypotheses that justify it.
#[derive(Debug, Clone)]
pub struct GkDimension {
    pub base: usize,
    pub rank: usize,
    pub value: usize,
    pub checklist: Report,
}

/// GK dimension of the algebra of a datum over a polynomial or Laurent
/// ring. The base contributes its variable count.
pub fn gk_dimension(d: &Datum) -> GkDimension {
    let ring = d.ring();
    let base = ring.nvars();
    let n = d.rank();
    let mut checklist = Report::new();
    checklist.push(Check::pass(
        "GKdim R",
        format!("{base}: {ring} is a localization of a polynomial ring in {base} variables at monomials"),
    ));
    checklist.push(Check::pass("R commutative domain", format!("{ring} is an integral domain")));
    for (i, s) in d.sigmas().iter().enumerate() {
        let (ok, why) = s.is_locally_algebraic();
        let name = format!("σ_{} locally algebraic", i + 1);
        checklist.push(if ok { Check::pass(name, why) } else { Check::fail(name, why) });
    }
    let zero = (0..n).find(|&i| d.h(i).is_zero() || d.j(i).is_zero());
    checklist.push(match zero {
        None => Check::pass(
            "J_i contains a regular normal element",
            "each J_i is nonzero and every nonzero element of a commutative domain is regular and normal",
        ),
        Some(i) => Check::fail("J_i contains a regular normal element", format!("J_{} = 0", i + 1)),
    });
    GkDimension { base, rank: n, value: base + n, checklist }
}
