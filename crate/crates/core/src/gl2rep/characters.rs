use super::classes::{Gl2ClassTag, Gl2Context};
use crate::error::{Error, Result};
use crate::rep::CharacterTable;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

/// Character of a cyclic group of order m: generator^j maps to e^{2 pi i k j / m}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicCharacter {
    pub m: u64,
    pub k: u64,
}

impl CyclicCharacter {
    pub fn at_log(&self, j: u64) -> Complex64 {
        let angle = 2.0 * PI * ((self.k * j) % self.m) as f64 / self.m as f64;
        Complex64::from_polar(1.0, angle)
    }

    pub fn is_trivial(&self) -> bool {
        self.k.is_multiple_of(self.m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Gl2Family {
    /// alpha(det), dimension 1.
    U { alpha: u64 },
    /// Steinberg twisted by alpha, dimension q.
    V { alpha: u64 },
    /// Principal series from alpha != beta, dimension q+1.
    W { alpha: u64, beta: u64 },
    /// Cuspidal from phi with phi^q != phi, dimension q-1.
    X { phi: u64 },
}

/// One irreducible character of GL_2(F_q), valued on the classes of a
/// [`Gl2Context`] in order.
#[derive(Clone, Debug, Serialize)]
pub struct Gl2Char {
    pub family: Gl2Family,
    pub dim: usize,
    #[serde(skip)]
    pub values: Vec<Complex64>,
}

impl Gl2Char {
    pub fn label(&self) -> String {
        match self.family {
            Gl2Family::U { alpha } => format!("U({alpha})"),
            Gl2Family::V { alpha } => format!("V({alpha})"),
            Gl2Family::W { alpha, beta } => format!("W({alpha},{beta})"),
            Gl2Family::X { phi } => format!("X({phi})"),
        }
    }

    pub fn is_linear(&self) -> bool {
        self.dim == 1
    }
}

/// Closed-form character table of GL_2(F_q) together with its class data.
#[derive(Clone, Debug)]
pub struct Gl2Table {
    pub ctx: Gl2Context,
    pub chars: Vec<Gl2Char>,
}

impl Gl2Context {
    /// alpha_k on F_q^*, relative to the distinguished generator of F_q.
    pub fn alpha(&self, k: u64, x: u32) -> Complex64 {
        let m = (self.q() - 1) as u64;
        CyclicCharacter { m, k }.at_log(self.field.log(x).expect("nonzero argument") as u64)
    }

    /// phi_k on F_{q^2}^*, relative to the distinguished generator of F_{q^2}.
    pub fn phi(&self, k: u64, z: u32) -> Complex64 {
        let m = (self.big.q() - 1) as u64;
        CyclicCharacter { m, k }.at_log(self.big.log(z).expect("nonzero argument") as u64)
    }
}

/// The q^2 - 1 irreducible characters: U, V (q-1 each), W over unordered pairs
/// alpha != beta, X over unordered pairs {phi, phi^q} with phi^q != phi.
pub fn char_table(q: u32) -> Result<Gl2Table> {
    let ctx = Gl2Context::new(q)?;
    Ok(char_table_for(ctx))
}

pub fn char_table_for(ctx: Gl2Context) -> Gl2Table {
    let q = ctx.q() as u64;
    let qf = q as f64;
    let f = ctx.field.clone();
    let zero = Complex64::new(0.0, 0.0);
    let mut chars = Vec::new();
    let eval = |build: &dyn Fn(&super::classes::Gl2Class) -> Complex64| -> Vec<Complex64> {
        ctx.classes.iter().map(build).collect()
    };
    for a in 0..q - 1 {
        let values = eval(&|c| match c.tag {
            Gl2ClassTag::A | Gl2ClassTag::B => ctx.alpha(a, f.mul(c.x, c.x)),
            Gl2ClassTag::C => ctx.alpha(a, f.mul(c.x, c.y)),
            Gl2ClassTag::D => ctx.alpha(a, c.det),
        });
        chars.push(Gl2Char { family: Gl2Family::U { alpha: a }, dim: 1, values });
    }
    for a in 0..q - 1 {
        let values = eval(&|c| match c.tag {
            Gl2ClassTag::A => ctx.alpha(a, f.mul(c.x, c.x)) * qf,
            Gl2ClassTag::B => zero,
            Gl2ClassTag::C => ctx.alpha(a, f.mul(c.x, c.y)),
            Gl2ClassTag::D => -ctx.alpha(a, c.det),
        });
        chars.push(Gl2Char { family: Gl2Family::V { alpha: a }, dim: q as usize, values });
    }
    for a in 0..q - 1 {
        for b in a + 1..q - 1 {
            let values = eval(&|c| match c.tag {
                Gl2ClassTag::A => ctx.alpha(a, c.x) * ctx.alpha(b, c.x) * (qf + 1.0),
                Gl2ClassTag::B => ctx.alpha(a, c.x) * ctx.alpha(b, c.x),
                Gl2ClassTag::C => ctx.alpha(a, c.x) * ctx.alpha(b, c.y) + ctx.alpha(a, c.y) * ctx.alpha(b, c.x),
                Gl2ClassTag::D => zero,
            });
            chars.push(Gl2Char { family: Gl2Family::W { alpha: a, beta: b }, dim: q as usize + 1, values });
        }
    }
    let m = q * q - 1;
    for k in 0..m {
        let kq = (k * q) % m;
        if kq <= k {
            continue;
        }
        let values = eval(&|c| match c.tag {
            Gl2ClassTag::A => ctx.phi(k, c.xi) * (qf - 1.0),
            Gl2ClassTag::B => -ctx.phi(k, c.xi),
            Gl2ClassTag::C => zero,
            Gl2ClassTag::D => -(ctx.phi(k, c.xi) + ctx.phi(k, ctx.big.pow(c.xi, q))),
        });
        chars.push(Gl2Char { family: Gl2Family::X { phi: k }, dim: q as usize - 1, values });
    }
    Gl2Table { ctx, chars }
}

impl Gl2Table {
    pub fn q(&self) -> u32 {
        self.ctx.q()
    }

    pub fn class_sizes(&self) -> Vec<u64> {
        self.ctx.classes.iter().map(|c| c.size).collect()
    }

    /// (1/|G|) sum_C |C| a(C) conj(b(C)).
    pub fn inner(&self, a: &[Complex64], b: &[Complex64]) -> Complex64 {
        let total: Complex64 =
            self.ctx.classes.iter().zip(a.iter().zip(b)).map(|(c, (x, y))| x * y.conj() * c.size as f64).sum();
        total / self.ctx.group_order() as f64
    }

    pub fn orthogonality_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, a) in self.chars.iter().enumerate() {
            for (j, b) in self.chars.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((self.inner(&a.values, &b.values) - target).norm());
            }
        }
        worst
    }

    /// Multiplicity of each linear character U_alpha in rho tensor rho*.
    pub fn linear_multiplicity_vector(&self, r: usize, tol: f64) -> Result<Vec<u64>> {
        let chi: Vec<Complex64> = self.chars[r].values.iter().map(|z| z * z.conj()).collect();
        self.chars
            .iter()
            .filter(|c| c.is_linear())
            .map(|u| {
                let ip = self.inner(&chi, &u.values);
                let k = ip.re.round();
                if (ip - Complex64::new(k, 0.0)).norm() > tol || k < 0.0 {
                    Err(Error::Numerical(format!("<|chi|^2, {}> = {ip} is not a non-negative integer", u.label())))
                } else {
                    Ok(k as u64)
                }
            })
            .collect()
    }

    /// Number of linear characters occurring in rho tensor rho*.
    pub fn linear_multiplicities(&self, r: usize) -> Result<usize> {
        Ok(self.linear_multiplicity_vector(r, 1e-6)?.iter().filter(|&&m| m > 0).count())
    }

    /// Converts to a [`CharacterTable`] whose columns follow the given class
    /// representatives (matrices of an enumerated GL_2(F_q)).
    pub fn to_character_table(&self, reps: &[crate::algebra::MatrixFq], sizes: &[usize]) -> Result<CharacterTable> {
        let cols: Vec<usize> = reps.iter().map(|g| self.ctx.classify(g)).collect::<Result<_>>()?;
        for (c, &s) in cols.iter().zip(sizes) {
            if self.ctx.classes[*c].size != s as u64 {
                return Err(Error::Numerical(format!(
                    "class {} has size {s}, expected {}",
                    self.ctx.classes[*c].label(),
                    self.ctx.classes[*c].size
                )));
            }
        }
        Ok(CharacterTable {
            labels: self.chars.iter().map(Gl2Char::label).collect(),
            dims: self.chars.iter().map(|c| c.dim).collect(),
            class_sizes: sizes.to_vec(),
            values: self.chars.iter().map(|ch| cols.iter().map(|&c| ch.values[c]).collect()).collect(),
        })
    }
}
