use ndarray::{Array1, Array2, Array3, Axis};
use serde::Serialize;

use crate::energy::{active_joint_selection, EnergyReport};
use crate::error::{Error, Result};
use crate::motion::{build_motion_profile, MotionProfile};
use crate::pooling::matrix::{pooling_matrix_on_grid, row_normalized};
use crate::pooling::windows::{linear_curve, window_boundaries, CurveWindows};
use crate::sequence::{PoolingMode, PoolingParams, SkeletonSequence};

/// One window set together with the curve it was built on and its raw matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct PoolingCurve {
    pub curve: Array1<f64>,
    pub windows: CurveWindows,
    /// Raw smooth-window weights, `tau x T`.
    pub matrix: Array2<f64>,
    /// The matrix [`apply`] multiplies with: `matrix`, row-normalized if the
    /// plan parameters ask for it.
    pub applied: Array2<f64>,
    /// True when the curve is the straight uniform one (inactive joint or flat motion).
    pub uniform: bool,
}

impl PoolingCurve {
    fn build(curve: Array1<f64>, tau: usize, params: &PoolingParams, uniform: bool) -> Result<Self> {
        let windows = window_boundaries(curve.view(), tau)?;
        let curve = if windows.degenerate {
            linear_curve(curve.len())
        } else {
            curve
        };
        let matrix = pooling_matrix_on_grid(curve.view(), &windows.grid, params.gamma);
        let applied = if params.row_normalize {
            row_normalized(&matrix, curve.view(), &windows.grid, params.gamma)
        } else {
            matrix.clone()
        };
        Ok(Self {
            uniform: uniform || windows.degenerate,
            curve,
            windows,
            matrix,
            applied,
        })
    }

    fn uniform(frames: usize, tau: usize, params: &PoolingParams) -> Result<Self> {
        Self::build(linear_curve(frames), tau, params, true)
    }

    /// Recomputes the applied matrix for other parameters on the same windows.
    pub fn effective_matrix(&self, params: &PoolingParams) -> Array2<f64> {
        if params.row_normalize {
            row_normalized(&self.matrix, self.curve.view(), &self.windows.grid, params.gamma)
        } else {
            self.matrix.clone()
        }
    }
}

/// Everything needed to pool one sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct PoolingPlan {
    pub tau: usize,
    pub frames: usize,
    pub params: PoolingParams,
    /// Distinct window sets. Frame-wise plans have exactly one.
    pub curves: Vec<PoolingCurve>,
    /// Index into `curves` for each joint.
    pub joint_curve: Vec<usize>,
    /// No adaptive curve survived: the plan is uniform pooling.
    pub degenerate: bool,
}

impl PoolingPlan {
    pub fn joints(&self) -> usize {
        self.joint_curve.len()
    }

    pub fn curve_for_joint(&self, joint: usize) -> &PoolingCurve {
        &self.curves[self.joint_curve[joint]]
    }

    pub fn matrix_for_joint(&self, joint: usize) -> &Array2<f64> {
        &self.curve_for_joint(joint).matrix
    }

    fn per_joint<T>(&self, f: impl Fn(&PoolingCurve) -> T) -> Vec<T> {
        match self.params.mode {
            PoolingMode::FrameWise => self.curves.iter().map(f).collect(),
            PoolingMode::JointWise => (0..self.joints()).map(|v| f(self.curve_for_joint(v))).collect(),
        }
    }

    /// JSON view. List-valued keys hold one entry per curve in frame-wise
    /// mode and one per joint in joint-wise mode.
    pub fn to_json_value(&self, include_matrices: bool) -> serde_json::Value {
        #[derive(Serialize)]
        struct View {
            tau: usize,
            frames: usize,
            boundaries: Vec<Vec<usize>>,
            centers: Vec<Vec<f64>>,
            width: Vec<f64>,
            uniform: Vec<bool>,
            degenerate: bool,
            params: PoolingParams,
            #[serde(skip_serializing_if = "Option::is_none")]
            matrices: Option<Vec<Vec<f64>>>,
        }
        let view = View {
            tau: self.tau,
            frames: self.frames,
            boundaries: self.per_joint(|c| c.windows.boundaries.clone()),
            centers: self.per_joint(|c| c.windows.centers()),
            width: self.per_joint(|c| c.windows.grid.width),
            uniform: self.per_joint(|c| c.uniform),
            degenerate: self.degenerate,
            params: self.params,
            matrices: include_matrices.then(|| self.per_joint(|c| c.matrix.iter().copied().collect())),
        };
        serde_json::to_value(view).expect("plan serializes")
    }
}

/// Energy report, motion profile and plan computed in one pass.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub energy: EnergyReport,
    pub profile: MotionProfile,
    pub plan: PoolingPlan,
}

/// Runs active-joint selection, curve construction and planning for `params.mode`.
pub fn analyze(seq: &SkeletonSequence, params: &PoolingParams) -> Result<Analysis> {
    params.validate()?;
    seq.validate()?;
    let frames = seq.frames();
    let tau = params.tau(frames)?;
    let energy = active_joint_selection(seq, params.alpha)?;
    let profile = build_motion_profile(seq, params, &energy.active_mask)?;
    let (curves, joint_curve) = match params.mode {
        PoolingMode::FrameWise => {
            let curve = profile.frame_ci.clone().expect("frame-wise profile has a frame curve");
            let c = PoolingCurve::build(curve, tau, params, false)?;
            (vec![c], vec![0; seq.joints()])
        }
        PoolingMode::JointWise => {
            let ci = profile.ci.as_ref().expect("joint-wise profile has joint curves");
            let mut curves = Vec::new();
            let mut joint_curve = Vec::with_capacity(seq.joints());
            let mut shared_uniform = None;
            for (joint, &active) in energy.active_mask.iter().enumerate() {
                if active {
                    curves.push(PoolingCurve::build(ci.row(joint).to_owned(), tau, params, false)?);
                    joint_curve.push(curves.len() - 1);
                } else {
                    let idx = match shared_uniform {
                        Some(idx) => idx,
                        None => {
                            curves.push(PoolingCurve::uniform(frames, tau, params)?);
                            shared_uniform = Some(curves.len() - 1);
                            curves.len() - 1
                        }
                    };
                    joint_curve.push(idx);
                }
            }
            (curves, joint_curve)
        }
    };
    let degenerate = curves.iter().all(|c| c.uniform);
    let plan = PoolingPlan {
        tau,
        frames,
        params: *params,
        curves,
        joint_curve,
        degenerate,
    };
    Ok(Analysis { energy, profile, plan })
}

pub fn plan_frame_wise(seq: &SkeletonSequence, params: &PoolingParams) -> Result<PoolingPlan> {
    Ok(analyze(seq, &params.with_mode(PoolingMode::FrameWise))?.plan)
}

pub fn plan_joint_wise(seq: &SkeletonSequence, params: &PoolingParams) -> Result<PoolingPlan> {
    Ok(analyze(seq, &params.with_mode(PoolingMode::JointWise))?.plan)
}

/// Output of pooling: a `C x tau x V` grid with its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct PooledSequence {
    pub data: Array3<f64>,
    pub params: PoolingParams,
    /// Provenance tag of the input sequence.
    pub input_source: String,
}

impl PooledSequence {
    pub fn tau(&self) -> usize {
        self.data.dim().1
    }
}

/// Multiplies each joint's temporal slice by its plan matrix.
pub fn apply(plan: &PoolingPlan, seq: &SkeletonSequence) -> Result<PooledSequence> {
    if plan.frames != seq.frames() || plan.joints() != seq.joints() {
        return Err(Error::PlanShapeMismatch(format!(
            "plan built for T={} V={}, sequence has T={} V={}",
            plan.frames,
            plan.joints(),
            seq.frames(),
            seq.joints()
        )));
    }
    let x = seq.data();
    let (c, _, v) = x.dim();
    let mut out = Array3::zeros((c, plan.tau, v));
    for (idx, curve) in plan.curves.iter().enumerate() {
        let joints: Vec<usize> = (0..v).filter(|&j| plan.joint_curve[j] == idx).collect();
        if joints.is_empty() {
            continue;
        }
        let p = &curve.applied;
        for ch in 0..c {
            let plane = x.index_axis(Axis(0), ch);
            let cols = plane.select(Axis(1), &joints);
            let pooled = p.dot(&cols);
            for (k, &j) in joints.iter().enumerate() {
                out.index_axis_mut(Axis(0), ch).column_mut(j).assign(&pooled.column(k));
            }
        }
    }
    Ok(PooledSequence {
        data: out,
        params: plan.params,
        input_source: seq.source().to_string(),
    })
}

/// Plans and applies in one call.
pub fn pool(seq: &SkeletonSequence, params: &PoolingParams) -> Result<PooledSequence> {
    let plan = analyze(seq, params)?.plan;
    apply(&plan, seq)
}
