//! Walls and chambers in the (c∞, c₀) parameter space.
//!
//! The walls are the loci where one of c∞, c₀, c_p, c_m has zero real part;
//! projected to (Re c∞, Re c₀) they are the eight half-lines at multiples of
//! 45°, starting with W1 on the positive Re c∞ axis and going
//! counter-clockwise. The chambers I..VIII lie between consecutive walls,
//! I between W1 and W2.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::Parameters;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Wall {
    W1,
    W2,
    W3,
    W4,
    W5,
    W6,
    W7,
    W8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Chamber {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Stratum {
    Chamber(Chamber),
    Wall(Wall),
    /// Re c∞ = Re c₀ = 0: every wall meets here.
    Junction,
}

/// A building block whose Borel sum jumps across a wall.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Jumping {
    FCp,
    FCm,
    GCInf,
    GC0,
}

const WALLS: [Wall; 8] = [Wall::W1, Wall::W2, Wall::W3, Wall::W4, Wall::W5, Wall::W6, Wall::W7, Wall::W8];
const CHAMBERS: [Chamber; 8] =
    [Chamber::I, Chamber::II, Chamber::III, Chamber::IV, Chamber::V, Chamber::VI, Chamber::VII, Chamber::VIII];

impl Wall {
    pub fn index(self) -> usize {
        WALLS.iter().position(|w| *w == self).expect("listed")
    }

    pub fn from_index(k: usize) -> Option<Wall> {
        WALLS.get(k).copied()
    }

    /// Blocks that stop being Borel summable on this wall.
    pub fn jumping(self) -> Jumping {
        match self {
            Wall::W1 | Wall::W5 => Jumping::GC0,
            Wall::W2 | Wall::W6 => Jumping::FCm,
            Wall::W3 | Wall::W7 => Jumping::GCInf,
            Wall::W4 | Wall::W8 => Jumping::FCp,
        }
    }

    /// Image under c∞ ↔ c₀ (reflection in the diagonal of the projection).
    pub fn swapped(self) -> Wall {
        // angle 45°·k ↦ 90° − 45°·k
        WALLS[(10 - self.index()) % 8]
    }
}

impl Chamber {
    pub fn index(self) -> usize {
        CHAMBERS.iter().position(|c| *c == self).expect("listed")
    }

    /// Signs of (Re c∞, Re c₀, Re c_p, Re c_m) inside the chamber.
    pub fn signs(self) -> [i8; 4] {
        match self {
            Chamber::I => [1, 1, 1, 1],
            Chamber::II => [1, 1, 1, -1],
            Chamber::III => [-1, 1, 1, -1],
            Chamber::IV => [-1, 1, -1, -1],
            Chamber::V => [-1, -1, -1, -1],
            Chamber::VI => [-1, -1, -1, 1],
            Chamber::VII => [1, -1, -1, 1],
            Chamber::VIII => [1, -1, 1, 1],
        }
    }

    pub fn swapped(self) -> Chamber {
        // sector (45k°, 45(k+1)°) ↦ (90° − 45(k+1)°, 90° − 45k°)
        CHAMBERS[(9 - self.index()) % 8]
    }

    /// The two walls bounding the chamber, clockwise first.
    pub fn walls(self) -> (Wall, Wall) {
        let k = self.index();
        (WALLS[k], WALLS[(k + 1) % 8])
    }
}

impl Stratum {
    pub fn swapped(self) -> Stratum {
        match self {
            Stratum::Chamber(c) => Stratum::Chamber(c.swapped()),
            Stratum::Wall(w) => Stratum::Wall(w.swapped()),
            Stratum::Junction => Stratum::Junction,
        }
    }
}

impl fmt::Display for Wall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W{}", self.index() + 1)
    }
}

impl fmt::Display for Chamber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = ["I", "II", "III", "IV", "V", "VI", "VII", "VIII"][self.index()];
        f.write_str(s)
    }
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stratum::Chamber(c) => write!(f, "chamber {c}"),
            Stratum::Wall(w) => write!(f, "wall {w}"),
            Stratum::Junction => f.write_str("junction"),
        }
    }
}

impl std::str::FromStr for Wall {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let k: usize = s
            .trim()
            .trim_start_matches(['W', 'w'])
            .parse()
            .map_err(|_| Error::Domain(format!("unknown wall '{s}'")))?;
        if (1..=8).contains(&k) {
            Ok(WALLS[k - 1])
        } else {
            Err(Error::Domain(format!("unknown wall '{s}'")))
        }
    }
}

/// Tolerance (relative to max(1, |c∞|, |c₀|)) for a real part to count as zero.
pub const WALL_TOL: f64 = 1e-10;

/// Wall, chamber or junction containing `p`.
pub fn classify(p: &Parameters) -> Result<Stratum> {
    p.check_generic()?;
    let scale = 1f64.max(p.c_inf.norm()).max(p.c_0.norm());
    let re = [p.c_inf.re, p.c_0.re, p.c_p().re, p.c_m().re];
    let zero: Vec<bool> = re.iter().map(|x| x.abs() <= WALL_TOL * scale).collect();
    let sgn = |x: f64| if x > 0.0 { 1 } else { -1 };
    match zero.iter().filter(|z| **z).count() {
        0 => {
            let s = [sgn(re[0]), sgn(re[1]), sgn(re[2]), sgn(re[3])];
            CHAMBERS
                .iter()
                .find(|c| c.signs() == s)
                .map(|c| Stratum::Chamber(*c))
                .ok_or_else(|| Error::Internal(format!("inconsistent sign vector {s:?}")))
        }
        1 => {
            let w = match (zero.iter().position(|z| *z).expect("one zero"), re) {
                (1, [x, ..]) if x > 0.0 => Wall::W1,
                (3, [_, _, cp, _]) if cp > 0.0 => Wall::W2,
                (0, [_, y, ..]) if y > 0.0 => Wall::W3,
                (2, [_, _, _, cm]) if cm < 0.0 => Wall::W4,
                (1, _) => Wall::W5,
                (3, _) => Wall::W6,
                (0, _) => Wall::W7,
                _ => Wall::W8,
            };
            Ok(Stratum::Wall(w))
        }
        // two zeros force all four to vanish
        _ => Ok(Stratum::Junction),
    }
}

/// Blocks whose Borel sums jump on the stratum.
pub fn jumping_coefficients(s: Stratum) -> Vec<Jumping> {
    match s {
        Stratum::Chamber(_) => vec![],
        Stratum::Wall(w) => vec![w.jumping()],
        Stratum::Junction => vec![Jumping::FCp, Jumping::FCm, Jumping::GCInf, Jumping::GC0],
    }
}
