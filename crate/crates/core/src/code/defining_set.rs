use crate::{BigField, Error, FieldElement, Result};

/// `D(a) = {x in F_(q^m)^* : Tr_(q^m2/q)(N_(q^m/q^m2)(x)) + a = 0}`,
/// in ascending exponent order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefiningSet {
    offset: FieldElement,
    elements: Vec<FieldElement>,
    shortened: bool,
}

impl DefiningSet {
    /// The offset `a` as an element of `F_q`.
    pub fn offset(&self) -> FieldElement {
        self.offset
    }

    /// True for `a = 0`.
    pub fn is_trace_zero(&self) -> bool {
        self.offset.is_zero()
    }

    pub fn elements(&self) -> &[FieldElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_shortened(&self) -> bool {
        self.shortened
    }
}

fn collect(field: &BigField, offset: FieldElement) -> Result<DefiningSet> {
    let m2 = field.spec().m2();
    let traces = field.subfield_trace_table(m2)?;
    let target = field.neg(offset);
    let n2 = traces.len() as u64;
    let elements = (0..field.order())
        .filter(|i| traces[(i % n2) as usize] == target)
        .map(|i| field.from_exponent(i))
        .collect();
    Ok(DefiningSet {
        offset,
        elements,
        shortened: false,
    })
}

/// `D(0)` for `a = 0`, `D(1)` for `a = 1`.
pub fn defining_set(field: &BigField, a: u32) -> Result<DefiningSet> {
    match a {
        0 if field.spec().m2() == 1 => Err(Error::EmptyDefiningSet),
        0 => collect(field, field.zero()),
        1 => collect(field, field.one()),
        _ => Err(Error::InvalidParameter(format!(
            "offset a must be 0 or 1, got {a}"
        ))),
    }
}

/// `D(a)` for an arbitrary nonzero `a` in `F_q`.
pub fn defining_set_general_a(field: &BigField, a: FieldElement) -> Result<DefiningSet> {
    if a.is_zero() {
        return Err(Error::ZeroArgument);
    }
    if !field.in_subfield(a, 1) {
        return Err(Error::NotInSubfield { degree: 1 });
    }
    collect(field, a)
}

/// Some `c` with `N_(q^m/q^m2)(c) = 1/a`; then `D(a) = c^(-1) D(1)`.
pub fn norm_preimage(field: &BigField, a: FieldElement) -> Result<FieldElement> {
    let target = field.inv(a)?;
    let m2 = field.spec().m2();
    // The norm is alpha^i -> alpha^(i * step); preimages of alpha^(k step)
    // are alpha^(k + j (q^m2 - 1)), so exponent k works.
    let k = field.subfield_log(target, m2)?;
    Ok(field.from_exponent(k))
}

/// One representative per `F_q^*`-orbit of a trace-zero set, chosen with
/// the least exponent, i.e. the exponents below `(q^m-1)/(q-1)`.
pub fn shorten(field: &BigField, set: &DefiningSet) -> Result<DefiningSet> {
    if set.shortened {
        return Err(Error::AlreadyShortened);
    }
    if !set.is_trace_zero() {
        return Err(Error::InvalidParameter(
            "only the trace-zero defining set is closed under F_q^* scaling".into(),
        ));
    }
    let bound = field.subfield_step(1)?;
    let elements = set
        .elements
        .iter()
        .copied()
        .filter(|x| (x.exponent().expect("nonzero") as u64) < bound)
        .collect();
    Ok(DefiningSet {
        elements,
        shortened: true,
        ..set.clone()
    })
}
