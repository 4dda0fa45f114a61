use std::collections::HashMap;
use std::fmt::Write as _;

use super::diagram::{Diagram, Half, NodeId};
use crate::Error;

enum Named {
    Leg(NodeId),
    Tri(NodeId, Vec<String>),
}

/// Parse the line-oriented diagram format:
///
/// ```text
/// circles 2
/// circle 1: a b
/// circle 2: c d
/// triv u: p q r
/// triv v: p q r
/// edge a u.p
/// edge b v.p
/// edge c u.q
/// edge d v.q
/// edge u.r v.r
/// ```
///
/// Legs are listed along each circle's orientation; the half-edge names of a
/// trivalent vertex give its cyclic order. `#` starts a comment.
pub fn parse_diagram(text: &str) -> Result<Diagram, Error> {
    let mut d: Option<Diagram> = None;
    let mut names: HashMap<String, Named> = HashMap::new();
    let mut edges: Vec<(usize, String, String)> = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line_no = no + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match head {
            "circles" => {
                if d.is_some() {
                    return Err(Error::parse(line_no, "duplicate `circles` line"));
                }
                let m: usize = rest.parse().map_err(|_| Error::parse(line_no, "`circles` needs a count"))?;
                d = Some(Diagram::new(m));
            }
            "circle" => {
                let dg = d.as_mut().ok_or_else(|| Error::parse(line_no, "`circles` must come first"))?;
                let (idx, legs) = rest.split_once(':').ok_or_else(|| Error::parse(line_no, "expected `circle c: legs`"))?;
                let c: usize = idx.trim().parse().map_err(|_| Error::parse(line_no, "bad circle index"))?;
                if c == 0 || c > dg.num_circles() {
                    return Err(Error::parse(line_no, format!("circle {c} out of range")));
                }
                for name in legs.split_whitespace() {
                    check_name(name, line_no)?;
                    let id = dg.add_leg(c - 1);
                    if names.insert(name.to_string(), Named::Leg(id)).is_some() {
                        return Err(Error::parse(line_no, format!("name `{name}` reused")));
                    }
                }
            }
            "triv" => {
                let dg = d.as_mut().ok_or_else(|| Error::parse(line_no, "`circles` must come first"))?;
                let (name, halves) = rest.split_once(':').ok_or_else(|| Error::parse(line_no, "expected `triv v: h1 h2 h3`"))?;
                let name = name.trim();
                check_name(name, line_no)?;
                let halves: Vec<String> = halves.split_whitespace().map(str::to_string).collect();
                if halves.len() != 3 || halves[0] == halves[1] || halves[1] == halves[2] || halves[0] == halves[2] {
                    return Err(Error::parse(line_no, "a trivalent vertex needs three distinct half-edge names"));
                }
                let id = dg.add_trivalent();
                if names.insert(name.to_string(), Named::Tri(id, halves)).is_some() {
                    return Err(Error::parse(line_no, format!("name `{name}` reused")));
                }
            }
            "edge" => {
                let ends: Vec<&str> = rest.split_whitespace().collect();
                if ends.len() != 2 {
                    return Err(Error::parse(line_no, "expected `edge a b`"));
                }
                edges.push((line_no, ends[0].to_string(), ends[1].to_string()));
            }
            _ => return Err(Error::parse(line_no, format!("unknown keyword `{head}`"))),
        }
    }
    let mut d = d.ok_or_else(|| Error::parse(1, "missing `circles` line"))?;
    let resolve = |s: &str, line: usize| -> Result<Half, Error> {
        let (node, half) = match s.split_once('.') {
            Some((n, h)) => (n, Some(h)),
            None => (s, None),
        };
        match (names.get(node), half) {
            (Some(Named::Leg(id)), None) => Ok(Half::leg(*id)),
            (Some(Named::Tri(id, hs)), Some(h)) => hs
                .iter()
                .position(|x| x == h)
                .map(|p| Half::tri(*id, p as u8))
                .ok_or_else(|| Error::parse(line, format!("vertex `{node}` has no half-edge `{h}`"))),
            _ => Err(Error::parse(line, format!("unknown endpoint `{s}`"))),
        }
    };
    let mut used = std::collections::HashSet::new();
    for (line, a, b) in &edges {
        let (ha, hb) = (resolve(a, *line)?, resolve(b, *line)?);
        if ha == hb || !used.insert(ha) || !used.insert(hb) {
            return Err(Error::parse(*line, "half-edge used twice"));
        }
        d.connect(ha, hb);
    }
    d.validate()?;
    Ok(d)
}

fn check_name(name: &str, line: usize) -> Result<(), Error> {
    if name.is_empty() || name.contains('.') || name.contains(':') {
        return Err(Error::parse(line, format!("bad name `{name}`")));
    }
    Ok(())
}

/// Serialize in the format read by [`parse_diagram`].
pub fn write_diagram(d: &Diagram) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "circles {}", d.num_circles());
    for (c, circ) in d.circles().iter().enumerate() {
        let legs: Vec<String> = circ.iter().map(|l| format!("l{l}")).collect();
        let _ = writeln!(s, "circle {}: {}", c + 1, legs.join(" "));
    }
    for v in d.trivalent() {
        let _ = writeln!(s, "triv v{v}: 0 1 2");
    }
    let name = |h: Half| {
        if d.is_trivalent(h.node) {
            format!("v{}.{}", h.node, h.slot)
        } else {
            format!("l{}", h.node)
        }
    };
    let mut seen = std::collections::HashSet::new();
    let halves: Vec<Half> =
        d.legs().map(Half::leg).chain(d.trivalent().flat_map(|v| (0..3).map(move |k| Half::tri(v, k)))).collect();
    for h in halves {
        let p = d.partner(h);
        if seen.contains(&h) {
            continue;
        }
        seen.insert(h);
        seen.insert(p);
        let _ = writeln!(s, "edge {} {}", name(h), name(p));
    }
    s
}
