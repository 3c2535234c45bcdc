//! Graphs shipped as data: G2/B, a twisted flag manifold, the non-realizable
//! 8-cycle and a cube-shaped P^1-fibration over P^1 x P^1 with a k = 1 edge.

use crate::error::{Error, Result};
use crate::graph::{io, GkmGraph};

pub const NAMES: [&str; 4] = ["g2b", "twisted-flag", "cycle8", "k1-cube"];

pub fn source(name: &str) -> Option<&'static str> {
    Some(match name {
        "g2b" => include_str!("../fixtures/g2b.json"),
        "twisted-flag" => include_str!("../fixtures/twisted-flag.json"),
        "cycle8" => include_str!("../fixtures/cycle8.json"),
        "k1-cube" => include_str!("../fixtures/k1-cube.json"),
        _ => return None,
    })
}

pub fn fixture(name: &str) -> Result<GkmGraph> {
    let src = source(name).ok_or_else(|| Error::Precondition(format!("unknown fixture '{name}' (known: {})", NAMES.join(", "))))?;
    io::from_json(src)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_canonical() {
        for name in NAMES {
            let g = fixture(name).unwrap();
            assert_eq!(io::to_json(&g), source(name).unwrap(), "{name}");
        }
    }
}
