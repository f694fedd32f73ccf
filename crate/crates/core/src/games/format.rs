use std::collections::BTreeSet;

use super::{Board, ConnectSpec, GameError, GameInstance, Graph, Hypergraph, Position, Variant};

/// Parses the line-oriented game format.
pub fn parse_game(text: &str) -> Result<GameInstance, GameError> {
    let mut variant = None;
    let mut budget = None;
    let mut vertices: Option<Vec<String>> = None;
    let mut edges: Vec<(usize, Vec<String>)> = Vec::new();
    let mut p1: Vec<String> = Vec::new();
    let mut p2: Vec<String> = Vec::new();
    let mut cells1: Vec<(usize, usize)> = Vec::new();
    let mut cells2: Vec<(usize, usize)> = Vec::new();
    let (mut s, mut t, mut start) = (None, None, None);
    let (mut board, mut k, mut p) = (None, None, None);
    let (mut left, mut right): (Vec<String>, Vec<String>) = (Vec::new(), Vec::new());

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |msg: String| GameError::Syntax { line: line_no, msg };
        let line = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = line.split_whitespace().collect();
        let Some((&key, args)) = words.split_first() else { continue };
        let owned = || args.iter().map(|w| w.to_string()).collect::<Vec<_>>();
        let number = |w: &str| w.parse::<usize>().map_err(|_| err(format!("expected a number, found {}", w)));
        let one = || if args.len() == 1 { Ok(args[0]) } else { Err(err(format!("{} takes one argument", key))) };
        match key {
            "variant" => {
                variant = Some(Variant::from_name(one()?).ok_or_else(|| err(format!("unknown variant {}", args[0])))?)
            }
            "budget" => budget = Some(number(one()?)?),
            "vertices" => vertices.get_or_insert_with(Vec::new).extend(owned()),
            "edge" => edges.push((line_no, owned())),
            "s" => s = Some(one()?.to_string()),
            "t" => t = Some(one()?.to_string()),
            "start" => start = Some(one()?.to_string()),
            "left" => left.extend(owned()),
            "right" => right.extend(owned()),
            "k" => k = Some(number(one()?)?),
            "p" => p = Some(number(one()?)?),
            "board" => {
                if args.len() != 2 {
                    return Err(err("board takes rows and columns".into()));
                }
                board = Some((number(args[0])?, number(args[1])?));
            }
            "p1" | "p2" => {
                let is_connect = variant == Some(Variant::CONNECT);
                if is_connect {
                    if args.len() != 2 {
                        return Err(err(format!("{} takes ROW COL for CONNECT", key)));
                    }
                    let cell = (number(args[0])?, number(args[1])?);
                    if key == "p1" { cells1.push(cell) } else { cells2.push(cell) }
                } else if key == "p1" {
                    p1.extend(owned())
                } else {
                    p2.extend(owned())
                }
            }
            other => return Err(err(format!("unknown directive {}", other))),
        }
    }
    let missing = |what: &str| GameError::Syntax { line: 0, msg: format!("missing {}", what) };
    let variant = variant.ok_or_else(|| missing("variant"))?;
    let budget = budget.ok_or_else(|| missing("budget"))?;
    let graph_from = |vertices: Vec<String>| -> Result<Graph, GameError> {
        let mut g = Graph::new(vertices, &[])?;
        for (line, e) in &edges {
            if e.len() != 2 {
                return Err(GameError::Syntax { line: *line, msg: "graph edges have two endpoints".into() });
            }
            g.add_edge(&e[0], &e[1]).map_err(|x| GameError::Syntax { line: *line, msg: x.to_string() })?;
        }
        Ok(g)
    };
    let board = match variant {
        Variant::MM | Variant::MB | Variant::EA => {
            let vertices = vertices.ok_or_else(|| missing("vertices"))?;
            let es = edges
                .iter()
                .enumerate()
                .map(|(i, (_, e))| (format!("e{}", i + 1), e.iter().cloned().collect::<BTreeSet<_>>()))
                .collect();
            Board::Hypergraph(Hypergraph::new(vertices, es)?)
        }
        Variant::HEX => Board::Hex {
            graph: graph_from(vertices.ok_or_else(|| missing("vertices"))?)?,
            s: s.ok_or_else(|| missing("s"))?,
            t: t.ok_or_else(|| missing("t"))?,
        },
        Variant::CONNECT => {
            let (rows, cols) = board.ok_or_else(|| missing("board"))?;
            let spec = ConnectSpec { rows, cols, k: k.ok_or_else(|| missing("k"))?, p: p.ok_or_else(|| missing("p"))? };
            p1 = cells1.iter().map(|&(r, c)| ConnectSpec::cell(r, c)).collect();
            p2 = cells2.iter().map(|&(r, c)| ConnectSpec::cell(r, c)).collect();
            Board::Connect(spec)
        }
        Variant::SGG => {
            let all: Vec<String> = left.iter().chain(&right).cloned().collect();
            Board::Sgg {
                graph: graph_from(all)?,
                left: left.into_iter().collect(),
                right: right.into_iter().collect(),
                start: start.ok_or_else(|| missing("start"))?,
            }
        }
    };
    GameInstance::new(variant, board, Position { p1: p1.into_iter().collect(), p2: p2.into_iter().collect() }, budget)
}

pub(super) fn write_game(g: &GameInstance) -> String {
    let mut out = format!("variant {}\nbudget {}\n", g.variant, g.budget);
    let join = |s: &BTreeSet<String>| s.iter().cloned().collect::<Vec<_>>().join(" ");
    match &g.board {
        Board::Hypergraph(h) => {
            out.push_str(&format!("vertices {}\n", join(h.vertices())));
            for (_, e) in h.edges() {
                out.push_str(&format!("edge {}\n", join(e)));
            }
        }
        Board::Hex { graph, s, t } => {
            out.push_str(&format!("vertices {}\n", join(graph.vertices())));
            for (a, b) in graph.edges() {
                out.push_str(&format!("edge {} {}\n", a, b));
            }
            out.push_str(&format!("s {}\nt {}\n", s, t));
        }
        Board::Connect(spec) => {
            out.push_str(&format!("board {} {}\nk {}\np {}\n", spec.rows, spec.cols, spec.k, spec.p));
            for (key, set) in [("p1", &g.position.p1), ("p2", &g.position.p2)] {
                for cell in set {
                    let (r, c) = ConnectSpec::parse_cell(cell).expect("validated cell name");
                    out.push_str(&format!("{} {} {}\n", key, r, c));
                }
            }
            return out;
        }
        Board::Sgg { graph, left, right, start } => {
            out.push_str(&format!("left {}\nright {}\n", join(left), join(right)));
            for (a, b) in graph.edges() {
                out.push_str(&format!("edge {} {}\n", a, b));
            }
            out.push_str(&format!("start {}\n", start));
            return out;
        }
    }
    if !g.position.p1.is_empty() {
        out.push_str(&format!("p1 {}\n", join(&g.position.p1)));
    }
    if !g.position.p2.is_empty() {
        out.push_str(&format!("p2 {}\n", join(&g.position.p2)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypergraph_round_trip() {
        let text = "variant MB\nbudget 2\nvertices a b c\nedge a b\nedge a c\np1 a\n";
        let g = parse_game(text).unwrap();
        assert_eq!(g.hypergraph().unwrap().edges().len(), 2);
        assert_eq!(parse_game(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn connect_cells() {
        let g = parse_game("variant CONNECT\nbudget 1\nboard 3 3\nk 3\np 1\np1 1 1\np2 2 2\n").unwrap();
        assert!(g.position.p1.contains("r1c1"));
        assert_eq!(parse_game(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn hex_and_sgg() {
        let g = parse_game("variant HEX\nbudget 1\nvertices s v t\nedge s v\nedge v t\ns s\nt t\n").unwrap();
        assert_eq!(parse_game(&g.to_text()).unwrap(), g);
        let g = parse_game("variant SGG\nbudget 2\nleft v0 x\nright w\nedge v0 w\nedge w x\nstart v0\n").unwrap();
        assert_eq!(parse_game(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn rejections() {
        assert!(parse_game("variant HEX\nbudget 1\nvertices s t\ns s\nt t\np1 s\n").is_err());
        assert!(parse_game("variant CONNECT\nbudget 1\nboard 3 3\nk 3\np 3\n").is_err());
        assert!(parse_game("variant SGG\nbudget 1\nleft a b\nright c\nedge a b\nstart a\n").is_err());
        assert!(parse_game("variant SGG\nbudget 1\nleft a\nright c\nedge a c\nstart c\n").is_err());
        assert!(matches!(parse_game("variant MM\nbudget x\n"), Err(GameError::Syntax { line: 2, .. })));
    }
}
