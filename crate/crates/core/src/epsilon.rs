//! Matrix units `ε^{A,B}` over the 11-component label set
//! `{0; 1..4; [12],[13],[14],[23],[24],[34]}` and its 4-, 5- and
//! 10-dimensional sub-views.
//!
//! Bivector labels are stored once per unordered pair `μ<ν`; a lookup with
//! reversed order carries a `-1` sign and `[μμ]` vanishes.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::GaussianRational;

/// One of the 11 component labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisIndex {
    Scalar,
    Vector(u8),
    /// Always `μ < ν`.
    Bivector(u8, u8),
}

/// The bivector pairs in storage order.
pub const BIVECTOR_PAIRS: [(u8, u8); 6] = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

impl BasisIndex {
    /// All 11 labels in layout order: scalar, 1..4, [12],[13],[14],[23],[24],[34].
    pub fn all() -> Vec<BasisIndex> {
        let mut v = vec![BasisIndex::Scalar];
        v.extend((1..=4).map(BasisIndex::Vector));
        v.extend(BIVECTOR_PAIRS.iter().map(|&(a, b)| BasisIndex::Bivector(a, b)));
        v
    }

    pub fn vector(mu: u8) -> Result<Self> {
        if (1..=4).contains(&mu) {
            Ok(BasisIndex::Vector(mu))
        } else {
            Err(Error::InvalidLabel(format!("vector index {mu}")))
        }
    }

    /// `[μν]` as the stored representative and the sign of the lookup.
    /// `None` when `μ == ν`.
    pub fn bivector(mu: u8, nu: u8) -> Option<(BasisIndex, i64)> {
        assert!(
            (1..=4).contains(&mu) && (1..=4).contains(&nu),
            "bivector index out of range"
        );
        match mu.cmp(&nu) {
            std::cmp::Ordering::Less => Some((BasisIndex::Bivector(mu, nu), 1)),
            std::cmp::Ordering::Greater => Some((BasisIndex::Bivector(nu, mu), -1)),
            std::cmp::Ordering::Equal => None,
        }
    }

    /// Position in the 11-component layout.
    pub fn position(self) -> usize {
        match self {
            BasisIndex::Scalar => 0,
            BasisIndex::Vector(mu) => mu as usize,
            BasisIndex::Bivector(a, b) => {
                5 + BIVECTOR_PAIRS
                    .iter()
                    .position(|&p| p == (a, b))
                    .expect("bivector labels are stored with mu<nu")
            }
        }
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisIndex::Scalar => write!(f, "0"),
            BasisIndex::Vector(mu) => write!(f, "{mu}"),
            BasisIndex::Bivector(a, b) => write!(f, "[{a}{b}]"),
        }
    }
}

impl FromStr for BasisIndex {
    type Err = Error;

    /// `"0"`, `"1"`..`"4"`, `"[12]"` or `"12"`. Reversed bivectors are rejected;
    /// use [`BasisIndex::bivector`] for signed access.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']');
        let digits: Vec<u8> = t
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as u8))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::InvalidLabel(s.to_string()))?;
        match digits.as_slice() {
            [0] => Ok(BasisIndex::Scalar),
            [mu] if (1..=4).contains(mu) => Ok(BasisIndex::Vector(*mu)),
            [a, b] if (1..=4).contains(a) && (1..=4).contains(b) && a < b => {
                Ok(BasisIndex::Bivector(*a, *b))
            }
            _ => Err(Error::InvalidLabel(s.to_string())),
        }
    }
}

/// A sub-space of the 11 components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpaceView {
    /// Vector components only.
    Dim4,
    /// Scalar and vector.
    Dim5,
    /// Vector and bivector.
    Dim10,
    Dim11,
}

impl SpaceView {
    pub const ALL: [SpaceView; 4] = [
        SpaceView::Dim4,
        SpaceView::Dim5,
        SpaceView::Dim10,
        SpaceView::Dim11,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SpaceView::Dim4 => "dim4",
            SpaceView::Dim5 => "dim5",
            SpaceView::Dim10 => "dim10",
            SpaceView::Dim11 => "dim11",
        }
    }

    pub fn contains(self, idx: BasisIndex) -> bool {
        matches!(
            (self, idx),
            (SpaceView::Dim11, _)
                | (_, BasisIndex::Vector(_))
                | (SpaceView::Dim5, BasisIndex::Scalar)
                | (SpaceView::Dim10, BasisIndex::Bivector(..))
        )
    }

    /// Labels of the view in layout order.
    pub fn indices(self) -> Vec<BasisIndex> {
        BasisIndex::all()
            .into_iter()
            .filter(|&i| self.contains(i))
            .collect()
    }

    pub fn dim(self) -> usize {
        self.indices().len()
    }

    /// Local position of `idx` inside the view.
    pub fn local(self, idx: BasisIndex) -> Result<usize> {
        self.indices()
            .iter()
            .position(|&i| i == idx)
            .ok_or_else(|| Error::IndexNotInView {
                index: idx.to_string(),
                space: self.name().to_string(),
            })
    }

    /// Positions of the view's labels inside the 11-component layout.
    pub fn embedding(self) -> Vec<usize> {
        self.indices().into_iter().map(BasisIndex::position).collect()
    }

    /// Injects a matrix acting on this view into the full 11-space.
    pub fn embed(self, m: &ExactMatrix) -> ExactMatrix {
        m.embed(11, &self.embedding())
    }
}

impl FromStr for SpaceView {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dim4" | "dim4-vector" | "4" => Ok(SpaceView::Dim4),
            "dim5" | "dim5-scalar+vector" | "5" => Ok(SpaceView::Dim5),
            "dim10" | "dim10-vector+bivector" | "10" => Ok(SpaceView::Dim10),
            "dim11" | "dim11-full" | "11" => Ok(SpaceView::Dim11),
            _ => Err(Error::Parse(format!("unknown space view {s:?}"))),
        }
    }
}

impl fmt::Display for SpaceView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `(ε^{A,B})_{CD} = δ_{AC} δ_{BD}` within `space`.
pub fn epsilon(a: BasisIndex, b: BasisIndex, space: SpaceView) -> Result<ExactMatrix> {
    let n = space.dim();
    let i = space.local(a)?;
    let j = space.local(b)?;
    let mut m = ExactMatrix::zeros(n, n);
    m.set(i, j, GaussianRational::one());
    Ok(m)
}

/// A label that may come with an antisymmetry sign: `[μν]` written in any order.
#[derive(Clone, Copy, Debug)]
pub enum Label {
    Scalar,
    Vector(u8),
    Pair(u8, u8),
}

impl Label {
    fn resolve(self) -> Option<(BasisIndex, i64)> {
        match self {
            Label::Scalar => Some((BasisIndex::Scalar, 1)),
            Label::Vector(mu) => Some((BasisIndex::Vector(mu), 1)),
            Label::Pair(a, b) => BasisIndex::bivector(a, b),
        }
    }
}

/// `ε^{A,B}` with signed labels; zero when either label is a degenerate pair.
pub fn signed_epsilon(a: Label, b: Label, space: SpaceView) -> Result<ExactMatrix> {
    match (a.resolve(), b.resolve()) {
        (Some((a, sa)), Some((b, sb))) => {
            let m = epsilon(a, b, space)?;
            Ok(if sa * sb == 1 {
                m
            } else {
                -&m
            })
        }
        _ => Ok(ExactMatrix::zeros(space.dim(), space.dim())),
    }
}

/// The resolution of the identity on `space`:
/// `ε^{μ,μ} + ε^{0,0} + ½ ε^{[μν],[μν]}` with the sums running over all
/// ordered pairs, restricted to the components present. Errors if the sum
/// fails to be the literal identity.
pub fn identity_of(space: SpaceView) -> Result<ExactMatrix> {
    let n = space.dim();
    let mut sum = ExactMatrix::zeros(n, n);
    if space.contains(BasisIndex::Scalar) {
        sum = &sum + &epsilon(BasisIndex::Scalar, BasisIndex::Scalar, space)?;
    }
    for mu in 1..=4 {
        sum = &sum + &epsilon(BasisIndex::Vector(mu), BasisIndex::Vector(mu), space)?;
    }
    if space.contains(BasisIndex::Bivector(1, 2)) {
        let half = GaussianRational::from_ratio(1, 2);
        for mu in 1..=4 {
            for nu in 1..=4 {
                let term = signed_epsilon(Label::Pair(mu, nu), Label::Pair(mu, nu), space)?;
                sum = &sum + &term.scale(&half);
            }
        }
    }
    if !sum.is_identity() {
        return Err(Error::DimensionMismatch(format!(
            "completeness sum on {space} is not the identity"
        )));
    }
    Ok(sum)
}

/// Exhaustively checks `ε^{A,B}·ε^{C,D} = δ_{BC} ε^{A,D}` on a view.
/// Returns the first failing quadruple.
pub fn check_product_rule(
    space: SpaceView,
) -> std::result::Result<usize, (BasisIndex, BasisIndex, BasisIndex, BasisIndex)> {
    let idx = space.indices();
    let units: Vec<Vec<ExactMatrix>> = idx
        .iter()
        .map(|&a| {
            idx.iter()
                .map(|&b| epsilon(a, b, space).expect("labels come from the view"))
                .collect()
        })
        .collect();
    let zero = ExactMatrix::zeros(idx.len(), idx.len());
    let mut count = 0;
    for (ia, &a) in idx.iter().enumerate() {
        for (ib, &b) in idx.iter().enumerate() {
            for (ic, &c) in idx.iter().enumerate() {
                for (id, &d) in idx.iter().enumerate() {
                    let lhs = &units[ia][ib] * &units[ic][id];
                    let rhs = if ib == ic { &units[ia][id] } else { &zero };
                    if &lhs != rhs {
                        return Err((a, b, c, d));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// `Tr ε^{A,B} = δ_{AB}` over a view.
pub fn check_traces(space: SpaceView) -> bool {
    let idx = space.indices();
    idx.iter().all(|&a| {
        idx.iter().all(|&b| {
            let t = epsilon(a, b, space).expect("labels come from the view").trace();
            if a == b {
                t.is_one()
            } else {
                t.is_zero()
            }
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(mu: u8) -> BasisIndex {
        BasisIndex::Vector(mu)
    }

    #[test]
    fn eleven_distinct_labels() {
        let all = BasisIndex::all();
        assert_eq!(all.len(), 11);
        let positions: Vec<usize> = all.iter().map(|i| i.position()).collect();
        assert_eq!(positions, (0..11).collect::<Vec<_>>());
    }

    #[test]
    fn view_nesting() {
        for i in SpaceView::Dim4.indices() {
            assert!(SpaceView::Dim5.contains(i));
        }
        for i in SpaceView::Dim5.indices() {
            assert!(SpaceView::Dim11.contains(i));
        }
        let mut ten = SpaceView::Dim10.indices();
        ten.push(BasisIndex::Scalar);
        ten.sort();
        let mut all = BasisIndex::all();
        all.sort();
        assert_eq!(ten, all);
        assert_eq!(
            SpaceView::ALL.map(SpaceView::dim),
            [4, 5, 10, 11]
        );
    }

    #[test]
    fn single_unit_entry() {
        let e = epsilon(v(1), v(2), SpaceView::Dim4).unwrap();
        assert_eq!(e, ExactMatrix::from_i64(4, 4, &[0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]));
    }

    #[test]
    fn products_follow_the_rule() {
        let s = SpaceView::Dim4;
        let e12 = epsilon(v(1), v(2), s).unwrap();
        assert_eq!(&e12 * &epsilon(v(2), v(3), s).unwrap(), epsilon(v(1), v(3), s).unwrap());
        assert!((&e12 * &epsilon(v(3), v(4), s).unwrap()).is_zero());
    }

    #[test]
    fn index_not_in_view() {
        assert!(matches!(
            epsilon(BasisIndex::Scalar, v(1), SpaceView::Dim4),
            Err(Error::IndexNotInView { .. })
        ));
        assert!(epsilon(BasisIndex::Bivector(1, 2), v(1), SpaceView::Dim5).is_err());
    }

    #[test]
    fn reversed_pairs_flip_sign() {
        let s = SpaceView::Dim10;
        let fwd = signed_epsilon(Label::Pair(1, 2), Label::Vector(3), s).unwrap();
        let rev = signed_epsilon(Label::Pair(2, 1), Label::Vector(3), s).unwrap();
        assert_eq!(rev, -&fwd);
        assert!(signed_epsilon(Label::Pair(2, 2), Label::Vector(3), s)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn identities_on_every_view() {
        for s in SpaceView::ALL {
            assert_eq!(identity_of(s).unwrap(), ExactMatrix::identity(s.dim()));
        }
    }

    #[test]
    fn traces_and_small_product_rules() {
        for s in SpaceView::ALL {
            assert!(check_traces(s));
        }
        assert_eq!(check_product_rule(SpaceView::Dim4), Ok(256));
        assert_eq!(check_product_rule(SpaceView::Dim5), Ok(625));
    }

    #[test]
    fn label_parsing() {
        assert_eq!("0".parse::<BasisIndex>().unwrap(), BasisIndex::Scalar);
        assert_eq!("3".parse::<BasisIndex>().unwrap(), v(3));
        assert_eq!("[24]".parse::<BasisIndex>().unwrap(), BasisIndex::Bivector(2, 4));
        assert_eq!("13".parse::<BasisIndex>().unwrap(), BasisIndex::Bivector(1, 3));
        assert!("[21]".parse::<BasisIndex>().is_err());
        assert!("5".parse::<BasisIndex>().is_err());
        assert!("[11]".parse::<BasisIndex>().is_err());
    }
}
