use super::config::SnapConfig;
use super::engine::{snap, SnapResult};
use crate::error::Result;
use crate::numerics::ApproxSource;
use crate::par::{self, Execution};

/// Snaps every point independently; output order matches input order and
/// does not depend on `exec`.
pub fn snap_batch<S: ApproxSource>(
    points: &[Vec<S>],
    config: &SnapConfig,
    exec: Execution,
) -> Vec<Result<SnapResult>> {
    par::map(points, exec, |p| snap(p, config))
}
