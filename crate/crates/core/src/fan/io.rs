//! Plain-text fan files:
//!
//! ```text
//! # blowup of P^2 at a point
//! dim 2
//! ray -1 -1
//! ray 1 0
//! ray 0 1
//! ray 1 1
//! cone 0 1
//! cone 1 3
//! ```
//!
//! Cone indices are 0-based positions in the ray list.

use super::{Fan, FanError};

pub fn parse_fan(text: &str) -> Result<Fan, FanError> {
    let mut dim: Option<usize> = None;
    let mut rays = Vec::new();
    let mut cones = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| FanError::Parse { line: line_no, msg };
        let mut words = line.split_whitespace();
        let key = words.next().expect("nonempty line has a word");
        let rest: Vec<&str> = words.collect();
        match key {
            "dim" => {
                let [d] = rest.as_slice() else {
                    return Err(err("`dim` takes one integer".into()));
                };
                if dim.is_some() {
                    return Err(err("duplicate `dim`".into()));
                }
                dim = Some(d.parse().map_err(|_| err(format!("bad dimension `{d}`")))?);
            }
            "ray" => {
                let v = rest
                    .iter()
                    .map(|w| w.parse::<i64>().map_err(|_| err(format!("bad integer `{w}`"))))
                    .collect::<Result<Vec<_>, _>>()?;
                rays.push(v);
            }
            "cone" => {
                let v = rest
                    .iter()
                    .map(|w| w.parse::<usize>().map_err(|_| err(format!("bad ray index `{w}`"))))
                    .collect::<Result<Vec<_>, _>>()?;
                if v.is_empty() {
                    return Err(err("empty cone".into()));
                }
                cones.push(v);
            }
            other => return Err(err(format!("unknown keyword `{other}`"))),
        }
    }
    let dim = dim.ok_or(FanError::Parse { line: 0, msg: "missing `dim` line".into() })?;
    Fan::new(dim, rays, cones)
}

pub fn write_fan(fan: &Fan) -> String {
    let mut out = format!("dim {}\n", fan.dim());
    for r in fan.rays() {
        let r: Vec<String> = r.iter().map(i64::to_string).collect();
        out.push_str(&format!("ray {}\n", r.join(" ")));
    }
    for c in fan.max_cones() {
        let c: Vec<String> = c.iter().map(usize::to_string).collect();
        out.push_str(&format!("cone {}\n", c.join(" ")));
    }
    out
}
