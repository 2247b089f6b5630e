#pragma once

#include <variant>

#include "ivcompare/display.hpp"
#include "ivcompare/geometry.hpp"

namespace ivc {

struct SolverParams
{
    /// Yaw separation of the two ROIs after a VR side-by-side solve.
    double sxs_separation_deg = 40.0;
    /// Width of the front lune after a VR overlay solve.
    double overlay_span_deg = 60.0;

    bool operator==(const SolverParams &) const = default;
};

using AnyLayout = std::variant<VRLayout, CanvasLayout>;

struct SolveRequest
{
    Technique technique = Technique::SlideInVR;
    AnyLayout layout;
    Direction roi_a;
    Direction roi_b;
    Direction viewer_forward;
    SolverParams params;

    const Direction &roi(VideoId v) const { return v == VideoId::A ? roi_a : roi_b; }
};

/// Rotates both videos so their ROIs sit at the viewer's forward yaw (each at
/// its own pitch). The front lune becomes an `overlay_span_deg` window around
/// forward and the back video fills the whole sphere behind it.
VRLayout solve_rois_overlay_vr(const SolveRequest &req);

/// Places ROI A `sxs_separation_deg / 2` left of forward and ROI B the same
/// amount right, each inside its own half-sphere lune. Layer order is kept.
VRLayout solve_rois_sxs_vr(const SolveRequest &req);

/// Centers each viewport on its ROI. A SlideIn2D divider parked at an extreme
/// is moved back to the middle.
CanvasLayout solve_rois_sxs_2d(const SolveRequest &req);

/// SlideIn2D only: centers the front viewport on its ROI and aims the back
/// viewport so its ROI lands on the same canvas pixel, the middle of the
/// front region. Back ROIs too close to a pole for the required off-axis
/// angle are brought as close as the frustum allows.
CanvasLayout solve_rois_overlay_2d(const SolveRequest &req);

/// Half-and-half layout: A on [-90, 90) in front, B on the rear half.
VRLayout reset_views_vr();

/// Both lunes cover the full sphere with unrotated content.
VRLayout set_views_360(VideoId front);

} // namespace ivc
