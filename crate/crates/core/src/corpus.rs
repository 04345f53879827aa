//! The bundled example algebras, each with the pair of arrows it is glued along.

use crate::algebra::MonomialAlgebra;
use crate::format::{parse, ParseError};
use crate::gluing::{glue, GlueError, GluedAlgebra};

#[derive(Clone, Copy, Debug)]
pub struct Example {
    pub name: &'static str,
    pub text: &'static str,
    pub alpha: &'static str,
    pub beta: &'static str,
}

pub const EXAMPLES: &[Example] = &[
    Example {
        name: "a4_path",
        text: include_str!("../data/a4_path.alg"),
        alpha: "alpha",
        beta: "beta",
    },
    Example {
        name: "a4_quadratic",
        text: include_str!("../data/a4_quadratic.alg"),
        alpha: "alpha",
        beta: "beta",
    },
    Example {
        name: "bent_tree",
        text: include_str!("../data/bent_tree.alg"),
        alpha: "alpha",
        beta: "beta",
    },
    Example {
        name: "crossing_rad_cube",
        text: include_str!("../data/crossing_rad_cube.alg"),
        alpha: "alpha",
        beta: "beta",
    },
    Example {
        name: "cyclic_cube",
        text: include_str!("../data/cyclic_cube.alg"),
        alpha: "alpha",
        beta: "beta",
    },
    Example {
        name: "double_arrows_rad2",
        text: include_str!("../data/double_arrows_rad2.alg"),
        alpha: "alpha",
        beta: "beta",
    },
    Example {
        name: "kronecker_m2",
        text: include_str!("../data/kronecker_m2.alg"),
        alpha: "alpha",
        beta: "beta",
    },
    Example {
        name: "kronecker_m3",
        text: include_str!("../data/kronecker_m3.alg"),
        alpha: "alpha",
        beta: "beta",
    },
    Example {
        name: "loop_square",
        text: include_str!("../data/loop_square.alg"),
        alpha: "alpha",
        beta: "beta",
    },
    Example {
        name: "loops_t1",
        text: include_str!("../data/loops_t1.alg"),
        alpha: "alpha",
        beta: "beta",
    },
    Example {
        name: "loops_t2",
        text: include_str!("../data/loops_t2.alg"),
        alpha: "alpha",
        beta: "beta",
    },
    Example {
        name: "loops_t3",
        text: include_str!("../data/loops_t3.alg"),
        alpha: "alpha",
        beta: "beta",
    },
    Example {
        name: "loops_t4",
        text: include_str!("../data/loops_t4.alg"),
        alpha: "alpha",
        beta: "beta",
    },
    Example {
        name: "loops_t5",
        text: include_str!("../data/loops_t5.alg"),
        alpha: "alpha",
        beta: "beta",
    },
    Example {
        name: "triangle_rad2",
        text: include_str!("../data/triangle_rad2.alg"),
        alpha: "alpha",
        beta: "beta",
    },
    Example {
        name: "two_lines",
        text: include_str!("../data/two_lines.alg"),
        alpha: "alpha",
        beta: "beta",
    },
    Example {
        name: "zigzag_a6",
        text: include_str!("../data/zigzag_a6.alg"),
        alpha: "alpha",
        beta: "beta",
    },
];

#[derive(Debug, thiserror::Error)]
pub enum ExampleError {
    #[error("unknown example `{0}`")]
    Unknown(String),
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Glue(#[from] GlueError),
}

pub fn example(name: &str) -> Result<&'static Example, ExampleError> {
    EXAMPLES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| ExampleError::Unknown(name.to_string()))
}

impl Example {
    /// First comment line of the data file.
    pub fn description(&self) -> &'static str {
        self.text
            .lines()
            .next()
            .and_then(|l| l.strip_prefix('#'))
            .map_or("", str::trim)
    }

    pub fn algebra(&self) -> Result<MonomialAlgebra, ExampleError> {
        Ok(parse(self.text)?)
    }

    pub fn glued(&self) -> Result<GluedAlgebra, ExampleError> {
        let a = self.algebra()?;
        let q = a.quiver();
        let lookup = |n: &str| q.arrow_by_name(n).ok_or_else(|| GlueError::UnknownArrow(n.to_string()));
        let (x, y) = (lookup(self.alpha)?, lookup(self.beta)?);
        Ok(glue(&a, x, y)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_example_parses_and_glues() {
        for e in EXAMPLES {
            let g = e.glued().unwrap_or_else(|err| panic!("{}: {err}", e.name));
            assert_eq!(g.b().dim() + 3, g.a().dim(), "{}", e.name);
            assert!(!e.description().is_empty());
        }
    }
}
