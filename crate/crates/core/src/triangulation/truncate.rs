use super::Triangulation;
use crate::error::{Error, Result};
use crate::modify::subdivide;
use crate::surface::NormalSurface;

/// Replaces every ideal vertex by a boundary component: the small corner cells around it are
/// removed and the remaining pieces retriangulated.
pub fn truncate_ideal_vertices(tri: &Triangulation) -> Result<Triangulation> {
    if !tri.is_ideal() {
        return Err(Error::AlreadyCompact);
    }
    Ok(subdivide(&NormalSurface::empty(tri))?.tri)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::tests::FIG8;
    use crate::triangulation::{homology_h1, LinkKind};

    #[test]
    fn fig8_truncation() {
        let t = Triangulation::parse(FIG8).unwrap();
        let c = truncate_ideal_vertices(&t).unwrap();
        assert_eq!(c.size(), 56);
        c.check_structure().unwrap();
        c.check_manifold().unwrap();
        let sk = c.skeleton();
        assert_eq!(sk.boundary.len(), 1);
        assert_eq!(sk.boundary[0].euler, 0);
        assert!(sk
            .vertices
            .iter()
            .all(|v| v.link != LinkKind::Invalid && !v.ideal()));
        assert_eq!(homology_h1(&c), homology_h1(&t));
    }

    #[test]
    fn compact_input_rejected() {
        let t = Triangulation::parse("tets 1\n- - - -\n").unwrap();
        assert_eq!(
            truncate_ideal_vertices(&t).unwrap_err(),
            Error::AlreadyCompact
        );
    }
}
