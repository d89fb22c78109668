//! CSV emitters (schema v1, documented in the README).
//!
//! Vertex schema: `id,x_num,x_den,y_num,y_den,degree,is_boundary[,value]`
//! with the value column present exactly when a field is exported.
//! Edge schema: `source,target` with `source < target`.

use std::fmt::Write;

use vicsek_core::graph::{EigenfunctionField, LevelGraph};

pub fn vertices_csv(g: &LevelGraph, field: Option<&EigenfunctionField>) -> String {
    let mut out = String::new();
    if field.is_some() {
        out.push_str("id,x_num,x_den,y_num,y_den,degree,is_boundary,value\n");
    } else {
        out.push_str("id,x_num,x_den,y_num,y_den,degree,is_boundary\n");
    }
    for id in 0..g.vertex_count() as u32 {
        let p = g.coordinate(id);
        write!(
            out,
            "{},{},{},{},{},{},{}",
            id,
            p.x.numerator(),
            p.x.denominator(),
            p.y.numerator(),
            p.y.denominator(),
            g.degree(id),
            g.is_boundary(id)
        )
        .unwrap();
        if let Some(f) = field {
            write!(out, ",{}", f.value(id)).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn edges_csv(g: &LevelGraph) -> String {
    let mut out = String::from("source,target\n");
    for (a, b) in g.edges() {
        writeln!(out, "{a},{b}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use vicsek_core::graph::build_graph;

    #[test]
    fn level0_vertex_rows() {
        let g = build_graph(0).unwrap();
        let u = EigenfunctionField::new(0, vec![1.0, 0.0, 0.0, -1.0]);
        let csv = vertices_csv(&g, Some(&u));
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 5);
        assert_eq!(
            lines[0],
            "id,x_num,x_den,y_num,y_den,degree,is_boundary,value"
        );
        assert_eq!(lines[1], "0,0,1,1,1,3,true,1");
        assert_eq!(lines[4], "3,0,1,0,1,3,true,-1");
    }

    #[test]
    fn edge_rows_are_ordered_pairs() {
        let g = build_graph(0).unwrap();
        let csv = edges_csv(&g);
        assert_eq!(csv.lines().count(), 7);
        assert_eq!(csv.lines().nth(1), Some("0,1"));
        for line in csv.lines().skip(1) {
            let (a, b) = line.split_once(',').unwrap();
            assert!(a.parse::<u32>().unwrap() < b.parse::<u32>().unwrap());
        }
    }

    #[test]
    fn row_count_follows_vertex_formula() {
        for m in 0..=2 {
            let g = build_graph(m).unwrap();
            let csv = vertices_csv(&g, None);
            assert_eq!(csv.lines().count() - 1, 3 * 5usize.pow(m) + 1);
        }
    }
}
