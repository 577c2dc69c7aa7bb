//! Sparse multivariate Laurent polynomials over exact rationals, plus a thin
//! rational-function wrapper.
//!
//! Terms are kept in a `BTreeMap` from exponent vectors (one `i64` per
//! variable, negatives allowed) to nonzero rational coefficients, so equality
//! is term-set equality and iteration order is deterministic. This is the
//! carrier for every symbolic computation in the crate: matrix entries of
//! group elements, generalized minors, chart expansions of potentials, and
//! cluster variables.

use crate::num::{q0, q1, Q};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A sparse Laurent polynomial. All stored coefficients are nonzero and all
/// exponent vectors have length `nvars`.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, Q>,
}

impl LaurentPoly {
    /// The zero polynomial in `nvars` variables.
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    /// The constant one.
    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, q1())
    }

    /// A constant polynomial.
    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    /// The variable `x_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range (nvars={nvars})");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, q1())
    }

    /// The monomial `c · x^e`.
    pub fn monomial(exps: Vec<i64>, c: Q) -> Self {
        let mut p = Self::zero(exps.len());
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// Number of variables.
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Number of terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// True iff this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True iff this is the constant one.
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(vec![0; self.nvars].as_slice())
                .is_some_and(|c| c.is_one())
    }

    /// Iterate over `(exponent vector, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Q)> {
        self.terms.iter()
    }

    /// If the polynomial has exactly one term, return it.
    pub fn as_monomial(&self) -> Option<(&Vec<i64>, &Q)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// True iff the polynomial has exactly one term.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// True iff every coefficient is positive (the subtraction-free
    /// certificate used before tropicalizing).
    pub fn is_subtraction_free(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    /// Add a single term in place.
    pub fn add_term(&mut self, exps: Vec<i64>, c: Q) {
        assert_eq!(exps.len(), self.nvars, "term arity mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    /// Multiply by a scalar.
    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut out = Self::zero(self.nvars);
        for (e, q) in &self.terms {
            out.terms.insert(e.clone(), q * c);
        }
        out
    }

    /// Multiply by the monomial `c · x^e`.
    pub fn mul_monomial(&self, exps: &[i64], c: &Q) -> Self {
        assert_eq!(exps.len(), self.nvars, "monomial arity mismatch");
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut out = Self::zero(self.nvars);
        for (e, q) in &self.terms {
            let shifted: Vec<i64> = e.iter().zip(exps).map(|(a, b)| a + b).collect();
            out.terms.insert(shifted, q * c);
        }
        out
    }

    /// Integer power (`k >= 0`; for monomials any integer would make sense,
    /// but the crate only needs nonnegative powers of general polynomials).
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Evaluate at a rational point. Coordinates hit by negative exponents
    /// must be nonzero.
    pub fn eval(&self, point: &[Q]) -> Q {
        assert_eq!(point.len(), self.nvars, "evaluation arity mismatch");
        let mut acc = q0();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e.iter()) {
                term *= pow_q(x, k);
            }
            acc += term;
        }
        acc
    }

    /// Substitute a monomial for every variable: `x_i ↦ coeff_i · y^{exps_i}`
    /// where `y` ranges over `new_nvars` fresh variables. Exactly the change
    /// of variables needed for monomial chart transitions.
    pub fn subst_monomials(&self, new_nvars: usize, images: &[(Q, Vec<i64>)]) -> Self {
        assert_eq!(images.len(), self.nvars, "substitution arity mismatch");
        for (c, e) in images {
            assert!(!c.is_zero(), "monomial substitution with zero coefficient");
            assert_eq!(e.len(), new_nvars, "image arity mismatch");
        }
        let mut out = Self::zero(new_nvars);
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps = vec![0i64; new_nvars];
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                coeff *= pow_q(&images[i].0, k);
                for (slot, &img) in exps.iter_mut().zip(images[i].1.iter()) {
                    *slot += k * img;
                }
            }
            out.add_term(exps, coeff);
        }
        out
    }

    /// Append `extra` fresh variables (exponent zero everywhere).
    pub fn extend_vars(&self, extra: usize) -> Self {
        let mut out = Self::zero(self.nvars + extra);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2.extend(std::iter::repeat(0).take(extra));
            out.terms.insert(e2, c.clone());
        }
        out
    }

    /// Exact division: returns `Some(q)` with `self = q · divisor` when the
    /// quotient exists as a Laurent polynomial, `None` otherwise.
    ///
    /// Both operands are shifted to honest polynomials (per-variable minimum
    /// exponents pulled out as a monomial), then reduced by single-divisor
    /// leading-term elimination in lex order; with one divisor this finds the
    /// quotient whenever it exists because the leading term of any partial
    /// remainder `q'·b` factors as `lt(q')·lt(b)`.
    pub fn divide_exact(&self, divisor: &Self) -> Option<Self> {
        assert_eq!(self.nvars, divisor.nvars, "division arity mismatch");
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        // Monomial divisor: exponent shift + coefficient division.
        if let Some((e, c)) = divisor.as_monomial() {
            let neg: Vec<i64> = e.iter().map(|k| -k).collect();
            let inv = q1() / c.clone();
            return Some(self.mul_monomial(&neg, &inv));
        }
        let (a_shift, a) = self.strip_min_exponents();
        let (b_shift, b) = divisor.strip_min_exponents();
        let b_lead = b.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut r = a;
        let mut q = Self::zero(self.nvars);
        while !r.is_zero() {
            let (re, rc) = {
                let (e, c) = r.terms.iter().next_back().expect("nonzero remainder");
                (e.clone(), c.clone())
            };
            let te: Vec<i64> = re.iter().zip(b_lead.0.iter()).map(|(x, y)| x - y).collect();
            if te.iter().any(|&k| k < 0) {
                return None;
            }
            let tc = rc / b_lead.1.clone();
            let t = Self::monomial(te, tc);
            r = &r - &(&t * &b);
            q = &q + &t;
        }
        // Undo the shifts: self = x^{a_shift}·a, divisor = x^{b_shift}·b, so
        // quotient = x^{a_shift − b_shift}·(a/b).
        let shift: Vec<i64> = a_shift
            .iter()
            .zip(b_shift.iter())
            .map(|(x, y)| x - y)
            .collect();
        Some(q.mul_monomial(&shift, &q1()))
    }

    /// Pull out per-variable minimum exponents: returns `(shift, p)` with
    /// `self = x^shift · p` and `p` an honest polynomial with zero minimum
    /// exponent in each occurring variable.
    fn strip_min_exponents(&self) -> (Vec<i64>, Self) {
        assert!(!self.is_zero(), "cannot strip the zero polynomial");
        let mut mins = vec![i64::MAX; self.nvars];
        for e in self.terms.keys() {
            for (m, &k) in mins.iter_mut().zip(e.iter()) {
                *m = (*m).min(k);
            }
        }
        let neg: Vec<i64> = mins.iter().map(|k| -k).collect();
        (mins, self.mul_monomial(&neg, &q1()))
    }

    /// Render with the given variable names (for error messages and tests).
    pub fn render(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.nvars);
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mut s = String::new();
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{}", names[i], k)
                    }
                })
                .collect();
            if vars.is_empty() {
                s.push_str(&c.to_string());
            } else {
                if !c.is_one() {
                    if *c == -q1() {
                        s.push('-');
                    } else {
                        s.push_str(&format!("{c}·"));
                    }
                }
                s.push_str(&vars.join("·"));
            }
            parts.push(s);
        }
        parts.join(" + ")
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.render(&names))
    }
}

fn pow_q(x: &Q, k: i64) -> Q {
    if k == 0 {
        return q1();
    }
    let mut base = if k > 0 {
        x.clone()
    } else {
        assert!(!x.is_zero(), "negative power of zero");
        q1() / x.clone()
    };
    let mut n = k.unsigned_abs();
    let mut acc = q1();
    while n > 0 {
        if n & 1 == 1 {
            acc *= base.clone();
        }
        base = base.clone() * base;
        n >>= 1;
    }
    acc
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "addition arity mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "subtraction arity mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "multiplication arity mismatch");
        let mut out = LaurentPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<i64> = e1.iter().zip(e2.iter()).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-q1())
    }
}

/// A rational function stored as `(numerator, denominator)` with lazy
/// reduction: monomial content is stripped eagerly (cheap) and full exact
/// division is attempted on demand.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFn {
    pub num: LaurentPoly,
    pub den: LaurentPoly,
}

impl RatFn {
    /// Wrap a Laurent polynomial as a rational function.
    pub fn from_poly(p: LaurentPoly) -> Self {
        let n = p.nvars();
        RatFn {
            num: p,
            den: LaurentPoly::one(n),
        }
    }

    /// Build `num/den` (`den != 0`), reducing opportunistically.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        let mut r = RatFn { num, den };
        r.reduce();
        r
    }

    /// Zero in `nvars` variables.
    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(LaurentPoly::zero(nvars))
    }

    /// One in `nvars` variables.
    pub fn one(nvars: usize) -> Self {
        Self::from_poly(LaurentPoly::one(nvars))
    }

    /// Number of variables.
    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    /// True iff numerically zero.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Attempt full reduction. After this call the denominator is `1`
    /// whenever the quotient is a Laurent polynomial.
    pub fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = LaurentPoly::one(self.num.nvars());
            return;
        }
        if self.den.is_monomial() {
            let q = self
                .num
                .divide_exact(&self.den)
                .expect("monomial division is always exact");
            self.num = q;
            self.den = LaurentPoly::one(self.num.nvars());
            return;
        }
        if let Some(q) = self.num.divide_exact(&self.den) {
            self.num = q;
            self.den = LaurentPoly::one(self.num.nvars());
        }
    }

    /// If the reduced form is a Laurent polynomial, return it.
    pub fn as_laurent(&self) -> Option<LaurentPoly> {
        let mut c = self.clone();
        c.reduce();
        if c.den.is_one() {
            Some(c.num)
        } else {
            None
        }
    }

    /// Evaluate at a rational point (denominator must not vanish there).
    pub fn eval(&self, point: &[Q]) -> Q {
        let d = self.den.eval(point);
        assert!(!d.is_zero(), "rational function evaluated at a pole");
        self.num.eval(point) / d
    }

    /// a/b + c/d = (ad + cb)/(bd).
    pub fn add(&self, rhs: &RatFn) -> RatFn {
        if self.den == rhs.den {
            return RatFn::new(&self.num + &rhs.num, self.den.clone());
        }
        RatFn::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }

    /// a/b − c/d.
    pub fn sub(&self, rhs: &RatFn) -> RatFn {
        self.add(&rhs.neg())
    }

    /// Product.
    pub fn mul(&self, rhs: &RatFn) -> RatFn {
        RatFn::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }

    /// Quotient (`rhs != 0`).
    pub fn div(&self, rhs: &RatFn) -> RatFn {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RatFn::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    /// Negation.
    pub fn neg(&self) -> RatFn {
        RatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}
