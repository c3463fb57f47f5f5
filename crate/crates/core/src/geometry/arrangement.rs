use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{GeometryError, RationalValue, Q};

/// A point of the projective plane, normalized so its first nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint([Q; 3]);

impl ProjPoint {
    pub fn new(coords: [Q; 3]) -> Result<Self, GeometryError> {
        normalize(coords)
            .map(Self)
            .ok_or(GeometryError::DegeneratePoint)
    }

    pub fn coords(&self) -> &[Q; 3] {
        &self.0
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{}:{})", self.0[0], self.0[1], self.0[2])
    }
}

fn normalize(c: [Q; 3]) -> Option<[Q; 3]> {
    let lead = c.iter().find(|v| !v.is_zero())?.clone();
    Some(c.map(|v| v / &lead))
}

fn cross(a: &[Q; 3], b: &[Q; 3]) -> [Q; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// Lines `ax + by + cz = 0`, pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineArrangement {
    lines: Vec<[Q; 3]>,
}

/// A point lying on at least two lines of an arrangement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplePoint {
    pub point: ProjPoint,
    /// Indices of the lines through the point, ascending.
    pub incident: Vec<usize>,
    pub multiplicity: usize,
}

impl LineArrangement {
    pub fn new(lines: Vec<[Q; 3]>) -> Result<Self, GeometryError> {
        let mut seen: BTreeMap<[Q; 3], usize> = BTreeMap::new();
        for (i, l) in lines.iter().enumerate() {
            let n = normalize(l.clone()).ok_or(GeometryError::DegenerateLine(i))?;
            if let Some(&j) = seen.get(&n) {
                return Err(GeometryError::DuplicateLines(j, i));
            }
            seen.insert(n, i);
        }
        Ok(Self { lines })
    }

    pub fn from_ints(lines: &[[i64; 3]]) -> Result<Self, GeometryError> {
        Self::new(lines.iter().map(|l| l.map(super::q)).collect())
    }

    pub fn lines(&self) -> &[[Q; 3]] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Whether line `i` passes through `p`.
    pub fn contains(&self, i: usize, p: &ProjPoint) -> bool {
        let l = &self.lines[i];
        let c = p.coords();
        (&l[0] * &c[0] + &l[1] * &c[1] + &l[2] * &c[2]).is_zero()
    }
}

/// All points where two or more lines meet, sorted by normalized coordinates.
pub fn multiple_points(arr: &LineArrangement) -> Vec<MultiplePoint> {
    let mut points: BTreeMap<ProjPoint, BTreeSet<usize>> = BTreeMap::new();
    let lines = arr.lines();
    for i in 0..lines.len() {
        for j in (i + 1)..lines.len() {
            let p = ProjPoint::new(cross(&lines[i], &lines[j]))
                .expect("distinct lines meet in exactly one point");
            let set = points.entry(p).or_default();
            set.insert(i);
            set.insert(j);
        }
    }
    points
        .into_iter()
        .map(|(point, set)| MultiplePoint {
            multiplicity: set.len(),
            incident: set.into_iter().collect(),
            point,
        })
        .collect()
}

/// Largest number of lines through a single point (1 for fewer than two lines).
pub fn max_multiplicity(arr: &LineArrangement) -> usize {
    multiple_points(arr)
        .iter()
        .map(|p| p.multiplicity)
        .max()
        .unwrap_or(usize::from(!arr.is_empty()))
}

/// `{"lines": [[a, b, c], …]}` with integer or `"p/q"` entries.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArrangementFile {
    pub lines: Vec<[RationalValue; 3]>,
}

impl ArrangementFile {
    pub fn to_arrangement(&self) -> Result<LineArrangement, GeometryError> {
        let lines = self
            .lines
            .iter()
            .map(|[a, b, c]| Ok([a.to_rational()?, b.to_rational()?, c.to_rational()?]))
            .collect::<Result<Vec<_>, GeometryError>>()?;
        LineArrangement::new(lines)
    }

    pub fn from_arrangement(arr: &LineArrangement) -> Self {
        Self {
            lines: arr
                .lines()
                .iter()
                .map(|l| l.clone().map(|v| RationalValue::from_rational(&v)))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::q;
    use proptest::prelude::*;

    fn generic_lines(n: usize) -> LineArrangement {
        // tangent lines to the moment curve: no three concurrent
        let lines: Vec<[i64; 3]> = (1..=n as i64).map(|s| [s * s, -2 * s, 1]).collect();
        LineArrangement::from_ints(&lines).unwrap()
    }

    #[test]
    fn generic_octuple() {
        let arr = generic_lines(8);
        let pts = multiple_points(&arr);
        assert_eq!(pts.len(), 28);
        assert!(pts.iter().all(|p| p.multiplicity == 2));
        assert_eq!(max_multiplicity(&arr), 2);
    }

    #[test]
    fn concurrent_lines() {
        let arr = LineArrangement::from_ints(&[[1, 0, 0], [0, 1, 0], [1, 1, 0]]).unwrap();
        let pts = multiple_points(&arr);
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].multiplicity, 3);
        assert_eq!(pts[0].point, ProjPoint::new([q(0), q(0), q(1)]).unwrap());
        assert_eq!(max_multiplicity(&arr), 3);

        let pencil =
            LineArrangement::from_ints(&[[1, 0, 0], [0, 1, 0], [1, 1, 0], [1, -1, 0]]).unwrap();
        assert_eq!(max_multiplicity(&pencil), 4);
    }

    #[test]
    fn duplicates_are_rejected() {
        let err = LineArrangement::from_ints(&[[1, 2, 3], [0, 1, 0], [2, 4, 6]]).unwrap_err();
        assert_eq!(err, GeometryError::DuplicateLines(0, 2));
        assert!(LineArrangement::from_ints(&[[0, 0, 0]]).is_err());
    }

    #[test]
    fn rational_entries_parse() {
        let file: ArrangementFile =
            serde_json::from_str(r#"{"lines":[[1,"2/3",0],["-1/2",0,1]]}"#).unwrap();
        let arr = file.to_arrangement().unwrap();
        assert_eq!(arr.lines()[0][1], Q::new(2.into(), 3.into()));
        assert_eq!(multiple_points(&arr).len(), 1);
    }

    fn small_line() -> impl Strategy<Value = [i64; 3]> {
        [-3i64..=3, -3i64..=3, -3i64..=3].prop_filter("nonzero", |l| l.iter().any(|&v| v != 0))
    }

    fn arrangement() -> impl Strategy<Value = Vec<[i64; 3]>> {
        proptest::collection::vec(small_line(), 2..9).prop_map(|ls| {
            let mut seen = BTreeSet::new();
            ls.into_iter()
                .filter(|l| seen.insert(normalize(l.map(q)).unwrap()))
                .collect()
        })
    }

    proptest! {
        #[test]
        fn pairs_meet_exactly_once(lines in arrangement()) {
            let arr = LineArrangement::from_ints(&lines).unwrap();
            let n = arr.len();
            let total: usize = multiple_points(&arr)
                .iter()
                .map(|p| p.multiplicity * (p.multiplicity - 1) / 2)
                .sum();
            prop_assert_eq!(total, n * (n - 1) / 2);
            for p in multiple_points(&arr) {
                prop_assert!(p.multiplicity >= 2);
                for &i in &p.incident {
                    prop_assert!(arr.contains(i, &p.point));
                }
            }
        }

        #[test]
        fn rescaling_does_not_change_points(lines in arrangement(), s in 2i64..5) {
            let arr = LineArrangement::from_ints(&lines).unwrap();
            let scaled: Vec<[i64; 3]> = lines.iter().map(|l| l.map(|v| v * s)).collect();
            let arr2 = LineArrangement::from_ints(&scaled).unwrap();
            prop_assert_eq!(multiple_points(&arr), multiple_points(&arr2));
        }
    }
}
