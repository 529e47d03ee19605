//! SVG pictures of the simplex section of the secondary fan (rank 3).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::fan_search::Fan;
use crate::polyhedra::Cone;
use crate::report::chamber_labels;
use crate::secondary::{
    movable_cone, nef_cones, section_polygon, single_ray, SectionPoint, WeightMatrix,
};

const WIDTH: f64 = 560.0;
const HEIGHT: f64 = 520.0;
const SIDE: f64 = 480.0;
const LEFT: f64 = 40.0;
const BASE: f64 = 470.0;

fn f(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(0.0)
}

/// Screen position of the section point `(x1, x2, 1 - x1 - x2)`: `e1` bottom
/// left, `e2` bottom right, `e3` on top.
fn screen(p: &SectionPoint) -> (f64, f64) {
    let (x1, x2) = (f(&p[0]), f(&p[1]));
    let x3 = 1.0 - x1 - x2;
    let h = SIDE * 3f64.sqrt() / 2.0;
    let x = LEFT + x2 * SIDE + x3 * SIDE / 2.0;
    let y = BASE - x3 * h;
    (x, y)
}

fn points_attr(pts: &[SectionPoint]) -> String {
    let parts: Vec<String> = pts
        .iter()
        .map(|p| {
            let (x, y) = screen(p);
            format!("{x:.3},{y:.3}")
        })
        .collect();
    parts.join(" ")
}

fn centroid(pts: &[SectionPoint]) -> (f64, f64) {
    let n = pts.len().max(1) as f64;
    let (sx, sy) = pts
        .iter()
        .map(screen)
        .fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    (sx / n, sy / n)
}

fn ray_point(ray: &[num_bigint::BigInt]) -> SectionPoint {
    let s: num_bigint::BigInt = ray.iter().sum();
    [
        BigRational::new(ray[0].clone(), s.clone()),
        BigRational::new(ray[1].clone(), s),
    ]
}

/// Effective cone, movable cone, chambers with labels, column classes and
/// the nef rays of non-projective fans.
pub fn section_svg(q: &WeightMatrix, fans: &[Fan]) -> Result<String> {
    if q.r() != 3 {
        return Err(Error::UnsupportedRank(q.r()));
    }
    if !q.is_nonnegative() {
        return Err(Error::Precondition(
            "plot needs a nonnegative weight matrix".into(),
        ));
    }
    let nef = nef_cones(fans, q);
    let labels = chamber_labels(&nef, 3);
    let eff = section_polygon(&q.effective_cone())?;
    let mov = section_polygon(&movable_cone(q))?;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#
    );
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        s,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let simplex = [
        [
            BigRational::from_integer(1.into()),
            BigRational::from_integer(0.into()),
        ],
        [
            BigRational::from_integer(0.into()),
            BigRational::from_integer(1.into()),
        ],
        [
            BigRational::from_integer(0.into()),
            BigRational::from_integer(0.into()),
        ],
    ];
    let _ = writeln!(
        s,
        r##"<polygon points="{}" fill="none" stroke="#bbbbbb" stroke-width="1"/>"##,
        points_attr(&simplex)
    );
    let _ = writeln!(
        s,
        r##"<polygon class="effective" points="{}" fill="#eef3fb" stroke="#3a5a8c" stroke-width="2"/>"##,
        points_attr(&eff)
    );
    if mov.len() >= 3 {
        let _ = writeln!(
            s,
            r##"<polygon class="movable" points="{}" fill="#d5e4f7" stroke="#3a5a8c" stroke-width="1.5" stroke-dasharray="6,3"/>"##,
            points_attr(&mov)
        );
    }
    let mut order: Vec<(usize, &Cone)> = labels
        .iter()
        .zip(&nef)
        .filter_map(|(l, c)| l.map(|l| (l, c)))
        .collect();
    order.sort_by_key(|(l, _)| *l);
    for (label, c) in &order {
        let poly = section_polygon(c)?;
        let _ = writeln!(
            s,
            r##"<polygon class="chamber" points="{}" fill="none" stroke="#1b2a41" stroke-width="1"/>"##,
            points_attr(&poly)
        );
        let (x, y) = centroid(&poly);
        let _ = writeln!(
            s,
            r##"<text x="{x:.3}" y="{:.3}" font-family="sans-serif" font-size="13" text-anchor="middle" fill="#1b2a41">{label}</text>"##,
            y + 4.0
        );
    }
    let mut nef_points: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    let mut nef_pos: BTreeMap<String, SectionPoint> = BTreeMap::new();
    for (i, c) in nef.iter().enumerate() {
        if let Some(ray) = single_ray(c) {
            let p = ray_point(&ray);
            let key = format!("{}/{}", p[0], p[1]);
            nef_points.entry(key.clone()).or_default().push(i + 1);
            nef_pos.insert(key, p);
        }
    }
    for (key, fans_at) in &nef_points {
        let (x, y) = screen(&nef_pos[key]);
        let names: Vec<String> = fans_at.iter().map(|k| format!("F{k}")).collect();
        let _ = writeln!(
            s,
            r##"<circle class="nef-ray" cx="{x:.3}" cy="{y:.3}" r="4" fill="#c0392b"/>"##
        );
        let _ = writeln!(
            s,
            r##"<text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="10" fill="#c0392b">nef {}</text>"##,
            x + 6.0,
            y + 12.0,
            names.join(",")
        );
    }
    let mut classes: BTreeMap<String, (SectionPoint, Vec<usize>)> = BTreeMap::new();
    for j in 0..q.m() {
        let p = ray_point(&q.matrix().column(j));
        let key = format!("{}/{}", p[0], p[1]);
        classes
            .entry(key)
            .or_insert_with(|| (p, Vec::new()))
            .1
            .push(j + 1);
    }
    for (p, cols) in classes.values() {
        let (x, y) = screen(p);
        let names: Vec<String> = cols.iter().map(|j| format!("q{j}")).collect();
        let _ = writeln!(
            s,
            r##"<circle class="column" cx="{x:.3}" cy="{y:.3}" r="3" fill="#000000"/>"##
        );
        let _ = writeln!(
            s,
            r##"<text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="11">{}</text>"##,
            x + 5.0,
            y - 5.0,
            names.join(",")
        );
    }
    let _ = writeln!(s, "</svg>");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan_search::enumerate_sf;
    use crate::report::Input;

    #[test]
    fn bh_plot_has_six_chambers_and_barycenter() {
        let input = Input::parse(r#"{"Q": [[1,1,0,0,1,0],[0,1,1,1,0,0],[0,0,0,1,1,1]]}"#).unwrap();
        let fans = enumerate_sf(&input.v, true).unwrap();
        let svg = section_svg(&input.q, &fans).unwrap();
        assert_eq!(svg.matches(r#"class="chamber""#).count(), 6);
        assert_eq!(svg.matches(r#"class="nef-ray""#).count(), 1);
        assert!(svg.contains(r#"version="1.1""#));
    }

    #[test]
    fn rank_two_is_unsupported() {
        let input = Input::parse(r#"{"V": [[1,0,-1,0],[0,1,0,-1]]}"#).unwrap();
        let fans = enumerate_sf(&input.v, true).unwrap();
        assert!(matches!(
            section_svg(&input.q, &fans),
            Err(Error::UnsupportedRank(2))
        ));
    }
}
