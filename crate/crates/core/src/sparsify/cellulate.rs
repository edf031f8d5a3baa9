use serde::{Deserialize, Serialize};

use super::SparsifyError;

/// Face shape used when filling a long cycle.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum FaceShape {
    #[default]
    Triangles,
    Squares,
}

/// Chords added inside a cycle and the faces they cut it into, both in
/// terms of positions `0..N` along the cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cellulation {
    pub len: usize,
    pub chords: Vec<(usize, usize)>,
    pub faces: Vec<Vec<usize>>,
}

/// Zigzag triangulation: chords `(1, N-1), (N-1, 2), (2, N-2), ...`.
pub fn cellulate(n: usize) -> Result<Cellulation, SparsifyError> {
    cellulate_with(n, FaceShape::Triangles)
}

pub fn cellulate_with(n: usize, shape: FaceShape) -> Result<Cellulation, SparsifyError> {
    if n < 3 {
        return Err(SparsifyError::Invalid(format!(
            "cannot cellulate a cycle of length {n}"
        )));
    }
    match shape {
        FaceShape::Triangles => Ok(triangles(n)),
        FaceShape::Squares => Ok(squares(n)),
    }
}

fn triangles(n: usize) -> Cellulation {
    // Visit order 0, 1, N-1, 2, N-2, ...; consecutive pairs after the
    // first are chords, consecutive triples are faces.
    let mut order = vec![0, 1];
    let (mut lo, mut hi) = (2, n - 1);
    let mut take_hi = true;
    while order.len() < n {
        if take_hi {
            order.push(hi);
            hi -= 1;
        } else {
            order.push(lo);
            lo += 1;
        }
        take_hi = !take_hi;
    }
    let chords = (1..n - 2).map(|i| (order[i], order[i + 1])).collect();
    let faces = (0..n - 2)
        .map(|i| vec![order[i], order[i + 1], order[i + 2]])
        .collect();
    Cellulation {
        len: n,
        chords,
        faces,
    }
}

fn squares(n: usize) -> Cellulation {
    let mut chords = Vec::new();
    let mut faces = Vec::new();
    let mut k = 0;
    while n >= 2 * (k + 1) + 3 {
        let i = k + 1;
        chords.push((i, n - 1 - i));
        faces.push(vec![i - 1, i, n - 1 - i, n - i]);
        k = i;
    }
    faces.push((k..n - k).collect());
    Cellulation {
        len: n,
        chords,
        faces,
    }
}

impl Cellulation {
    /// Face sides as position pairs.
    pub fn sides(face: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..face.len()).map(move |i| (face[i], face[(i + 1) % face.len()]))
    }

    /// Whether positions `a`, `b` are consecutive on the cycle.
    pub fn on_cycle(&self, a: usize, b: usize) -> bool {
        let d = a.abs_diff(b);
        d == 1 || d == self.len - 1
    }

    /// Index of the cycle edge between consecutive positions: edge `i`
    /// joins `i` and `i + 1 mod N`.
    pub fn cycle_edge(&self, a: usize, b: usize) -> usize {
        if a.abs_diff(b) == 1 {
            a.min(b)
        } else {
            self.len - 1
        }
    }

    pub fn chord_index(&self, a: usize, b: usize) -> Option<usize> {
        self.chords
            .iter()
            .position(|&(x, y)| (x, y) == (a, b) || (y, x) == (a, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Each face, as indicator over cycle edges then chords.
    fn face_vectors(c: &Cellulation) -> Vec<Vec<bool>> {
        let width = c.len + c.chords.len();
        c.faces
            .iter()
            .map(|f| {
                let mut v = vec![false; width];
                for (a, b) in Cellulation::sides(f) {
                    let i = if c.on_cycle(a, b) {
                        c.cycle_edge(a, b)
                    } else {
                        c.len + c.chord_index(a, b).expect("side is a chord")
                    };
                    v[i] ^= true;
                }
                v
            })
            .collect()
    }

    fn check(n: usize, shape: FaceShape, max_face: usize) {
        let c = cellulate_with(n, shape).unwrap();
        let faces = face_vectors(&c);
        let mut sum = vec![false; c.len + c.chords.len()];
        for f in &faces {
            assert!(f.iter().filter(|&&b| b).count() <= max_face);
            for (s, &b) in sum.iter_mut().zip(f) {
                *s ^= b;
            }
        }
        assert!(sum[..n].iter().all(|&b| b));
        assert!(sum[n..].iter().all(|&b| !b));
    }

    #[test]
    fn weight_six() {
        let c = cellulate(6).unwrap();
        assert_eq!(c.chords, vec![(1, 5), (5, 2), (2, 4)]);
        assert_eq!(c.faces.len(), 4);
    }

    #[test]
    fn short_cycles() {
        assert!(cellulate(3).unwrap().chords.is_empty());
        let c = cellulate(4).unwrap();
        assert_eq!((c.chords.len(), c.faces.len()), (1, 2));
        assert!(cellulate(2).is_err());
    }

    proptest! {
        #[test]
        fn triangles_sum_to_the_cycle(n in 3usize..=64) {
            let c = cellulate(n).unwrap();
            prop_assert_eq!(c.chords.len(), n - 3);
            prop_assert_eq!(c.faces.len(), n - 2);
            check(n, FaceShape::Triangles, 3);
        }

        #[test]
        fn squares_sum_to_the_cycle(n in 3usize..=64) {
            check(n, FaceShape::Squares, 4);
        }
    }
}
