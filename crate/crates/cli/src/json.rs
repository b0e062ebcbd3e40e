//! JSON rendering. Exact rationals are strings `"p/q"`.

use serde_json::{json, Value};

use phasetrop::coeff::fmt_rational;
use phasetrop::ideal::{ComplexIdealRep, CriticalLevelReport, FiberDim, FiberReport};
use phasetrop::phase::PhasePoint;
use phasetrop::sl2::{CMat2, ExactTropPoint, LimitReport, SL2TropPoint};
use phasetrop::surface::LayerDecomposition;
use phasetrop::valued::TropicalPoly;
use phasetrop::{Coeff, ComplexPoly, Exponent, Valuation};

pub fn rational(q: &Exponent) -> Value {
    Value::String(fmt_rational(q))
}

pub fn valuation(v: &Valuation) -> Value {
    match v {
        Some(q) => rational(q),
        None => Value::Null,
    }
}

pub fn coeff(c: &Coeff) -> Value {
    json!([fmt_rational(&c.re), fmt_rational(&c.im)])
}

pub fn phase_point(p: &PhasePoint) -> Value {
    json!({
        "level": rational(&p.level),
        "phase": p.phase.iter().map(coeff).collect::<Vec<_>>(),
    })
}

pub fn tropical_poly(t: &TropicalPoly) -> Value {
    let pieces: Vec<Value> = t
        .pieces
        .iter()
        .map(|(k, b)| json!({"slope": k, "intercept": rational(b)}))
        .collect();
    json!({"pieces": pieces})
}

pub fn dim(d: &FiberDim) -> Value {
    match d {
        FiberDim::Empty => json!("empty"),
        FiberDim::Dim(k) => json!(k),
    }
}

pub fn upper_names(vars: &[String]) -> Vec<String> {
    vars.iter().map(|v| v.to_uppercase()).collect()
}

pub fn complex_poly(p: &ComplexPoly, names: &[String]) -> Value {
    Value::String(p.display_with(names).to_string())
}

pub fn ideal(i: &ComplexIdealRep, names: &[String]) -> Value {
    Value::Array(i.basis().iter().map(|g| complex_poly(g, names)).collect())
}

pub fn fiber(r: &FiberReport, names: &[String]) -> Value {
    json!({
        "alpha": rational(&r.alpha),
        "ideal": ideal(&r.ideal, names),
        "homogeneous": r.homogeneous,
        "dim": dim(&r.dimension),
    })
}

pub fn critical_levels(r: &CriticalLevelReport, names: &[String]) -> Value {
    let intervals: Vec<Value> = r
        .intervals
        .iter()
        .map(|iv| {
            json!({
                "from": valuation(&iv.from),
                "to": valuation(&iv.to),
                "sample": rational(&iv.sample),
                "ideal": ideal(&iv.ideal, names),
                "homogeneous": iv.homogeneous,
                "dim": dim(&iv.dimension),
            })
        })
        .collect();
    json!({
        "levels": r.levels.iter().map(rational).collect::<Vec<_>>(),
        "intervals": intervals,
        "at_level": r.at_level.iter().map(|f| fiber(f, names)).collect::<Vec<_>>(),
    })
}

pub fn complex(z: num_complex::Complex64) -> Value {
    json!([z.re, z.im])
}

pub fn cmat(m: &CMat2) -> Value {
    json!([
        [complex(m.m[0][0]), complex(m.m[0][1])],
        [complex(m.m[1][0]), complex(m.m[1][1])]
    ])
}

pub fn exact_trop(p: &ExactTropPoint) -> Value {
    json!({
        "level": rational(&p.level),
        "phase": [[coeff(&p.phase[0]), coeff(&p.phase[1])], [coeff(&p.phase[2]), coeff(&p.phase[3])]],
    })
}

pub fn sl2_point(p: &SL2TropPoint) -> Value {
    json!({
        "level": p.level,
        "branch": p.branch(),
        "phase": cmat(&p.phase),
    })
}

pub fn limit_sample(name: &str, r: &LimitReport) -> Value {
    let errors: Vec<Value> = r.errors.iter().map(|(s, e)| json!({"s": s, "eps": e})).collect();
    json!({
        "name": name,
        "matrix": r.matrix,
        "limit": cmat(&r.limit),
        "errors": errors,
        "rate_ok": r.rate_ok,
    })
}

pub fn layers(l: &LayerDecomposition, names: &[String]) -> Value {
    let at_level: Vec<Value> = l
        .at_level
        .iter()
        .map(|f| {
            json!({
                "level": rational(&f.level),
                "ideal": ideal(&f.ideal, names),
                "homogeneous": f.homogeneous,
                "dim": dim(&f.dimension),
            })
        })
        .collect();
    let intervals: Vec<Value> = l
        .intervals
        .iter()
        .map(|c| {
            json!({
                "from": rational(&c.from),
                "to": valuation(&c.to),
                "sample": rational(&c.sample),
                "degree": c.degree,
                "ideal": ideal(&c.ideal, names),
                "homogeneous": c.homogeneous,
                "dim": dim(&c.dimension),
            })
        })
        .collect();
    json!({
        "levels": l.levels.iter().map(rational).collect::<Vec<_>>(),
        "degrees": l.degrees,
        "at_level": at_level,
        "intervals": intervals,
        "generic": l.is_generic(),
        "non_generic": l.non_generic.iter().map(rational).collect::<Vec<_>>(),
        "empty_levels": l.empty_levels.iter().map(rational).collect::<Vec<_>>(),
    })
}
