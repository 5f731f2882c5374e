//! Stable JSON shapes for the values the CLI prints.

use std::sync::Arc;

use burnside_core::burnside::{BurnsideAlgebra, BurnsideElement};
use burnside_core::cyclotomic::CyclotomicNumber;
use burnside_core::rational::Rational;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffJson {
    pub class: usize,
    pub num: String,
    pub den: String,
}

/// `{"group": spec, "coeffs": [{"class", "num", "den"}, ...]}`, one entry per
/// subgroup class in class order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BurnsideJson {
    pub group: String,
    pub coeffs: Vec<CoeffJson>,
}

impl BurnsideJson {
    pub fn new(group: &str, x: &BurnsideElement) -> BurnsideJson {
        let coeffs = x
            .coeffs()
            .iter()
            .enumerate()
            .map(|(class, c)| CoeffJson { class, num: c.numer().to_string(), den: c.denom().to_string() })
            .collect();
        BurnsideJson { group: group.to_string(), coeffs }
    }

    pub fn to_element(&self, algebra: &Arc<BurnsideAlgebra>) -> Result<BurnsideElement, String> {
        let mut coeffs = vec![Rational::from_integer(0.into()); algebra.rank()];
        for c in &self.coeffs {
            let slot = coeffs.get_mut(c.class).ok_or_else(|| format!("unknown class {}", c.class))?;
            *slot = format!("{}/{}", c.num, c.den).parse().map_err(|_| format!("bad rational {}/{}", c.num, c.den))?;
        }
        BurnsideElement::from_coeffs(algebra, coeffs).map_err(|e| e.to_string())
    }
}

/// `{"n": conductor, "coeffs": ["a0", "a1", ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicJson {
    pub n: usize,
    pub coeffs: Vec<String>,
}

impl CyclotomicJson {
    pub fn new(x: &CyclotomicNumber) -> CyclotomicJson {
        CyclotomicJson { n: x.conductor(), coeffs: x.coeffs().iter().map(ToString::to_string).collect() }
    }

    pub fn to_number(&self) -> Result<CyclotomicNumber, String> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.parse::<Rational>().map_err(|_| format!("bad rational {c}")))
            .collect::<Result<Vec<_>, _>>()?;
        if coeffs.len() != burnside_core::cyclotomic::euler_phi(self.n) {
            return Err(format!("expected {} coefficients", burnside_core::cyclotomic::euler_phi(self.n)));
        }
        Ok(CyclotomicNumber::from_coeffs(self.n, coeffs))
    }
}
