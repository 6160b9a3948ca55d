use crate::curves::CurveClass;
use crate::error::{LabError, Result};
use crate::graft::GraftRay;
use crate::teich::TeichRayModel;
use crate::CertifiedInterval;

/// A one-parameter family of surfaces known through interval data.
pub trait SurfaceFamily: Sync {
    fn label(&self) -> &'static str;
    fn curve_names(&self) -> Vec<String>;
    /// Length intervals for every pants curve.
    fn pants_lengths(&self, t: f64) -> Result<Vec<CertifiedInterval>>;
    /// Intervals for `Tw(dual_j, g_j) l(g_j)`.
    fn twist_products(&self, t: f64) -> Result<Vec<CertifiedInterval>>;
    fn catalog(&self) -> Vec<&CurveClass>;
    fn catalog_lengths(&self, t: f64) -> Result<Vec<CertifiedInterval>>;
}

impl SurfaceFamily for GraftRay {
    fn label(&self) -> &'static str {
        "graft"
    }

    fn curve_names(&self) -> Vec<String> {
        self.params().base.topology().curves().iter().map(|c| c.name.clone()).collect()
    }

    fn pants_lengths(&self, t: f64) -> Result<Vec<CertifiedInterval>> {
        Ok(self.at(t)?.len_bounds)
    }

    fn twist_products(&self, t: f64) -> Result<Vec<CertifiedInterval>> {
        let n = self.params().base.topology().curve_count();
        (0..n).map(|j| self.twist_budget(t, j, self.params().t0)).collect()
    }

    fn catalog(&self) -> Vec<&CurveClass> {
        GraftRay::catalog(self).collect()
    }

    fn catalog_lengths(&self, t: f64) -> Result<Vec<CertifiedInterval>> {
        (0..GraftRay::catalog(self).count()).map(|k| self.curve_length_bounds(t, k)).collect()
    }
}

impl SurfaceFamily for TeichRayModel {
    fn label(&self) -> &'static str {
        "teich"
    }

    fn curve_names(&self) -> Vec<String> {
        self.base().topology().curves().iter().map(|c| c.name.clone()).collect()
    }

    fn pants_lengths(&self, t: f64) -> Result<Vec<CertifiedInterval>> {
        TeichRayModel::pants_lengths(self, t)
    }

    fn twist_products(&self, _t: f64) -> Result<Vec<CertifiedInterval>> {
        Ok(TeichRayModel::twist_products(self))
    }

    fn catalog(&self) -> Vec<&CurveClass> {
        TeichRayModel::catalog(self).collect()
    }

    fn catalog_lengths(&self, t: f64) -> Result<Vec<CertifiedInterval>> {
        TeichRayModel::catalog_lengths(self, t)
    }
}

/// Explicit family given by closures, for designed test families.
pub struct FnFamily<L, W>
where
    L: Fn(f64) -> Vec<CertifiedInterval> + Sync,
    W: Fn(f64) -> Vec<CertifiedInterval> + Sync,
{
    pub names: Vec<String>,
    pub lengths: L,
    pub twists: W,
}

impl<L, W> SurfaceFamily for FnFamily<L, W>
where
    L: Fn(f64) -> Vec<CertifiedInterval> + Sync,
    W: Fn(f64) -> Vec<CertifiedInterval> + Sync,
{
    fn label(&self) -> &'static str {
        "explicit"
    }

    fn curve_names(&self) -> Vec<String> {
        self.names.clone()
    }

    fn pants_lengths(&self, t: f64) -> Result<Vec<CertifiedInterval>> {
        Ok((self.lengths)(t))
    }

    fn twist_products(&self, t: f64) -> Result<Vec<CertifiedInterval>> {
        Ok((self.twists)(t))
    }

    fn catalog(&self) -> Vec<&CurveClass> {
        Vec::new()
    }

    fn catalog_lengths(&self, _t: f64) -> Result<Vec<CertifiedInterval>> {
        Err(LabError::InvalidArgument("explicit family has no catalog".into()))
    }
}
