#include "ivcompare/solver.hpp"

#include <algorithm>
#include <cmath>

#include "ivcompare/errors.hpp"

namespace ivc {

namespace {

constexpr double kDividerExtremeLow = 0.05;
constexpr double kDividerExtremeHigh = 0.95;

const VRLayout &vr_layout(const SolveRequest &req, const char *action)
{
    if (req.technique != Technique::SlideInVR)
        throw WrongTechniqueError(std::string(action) + " is not supported by " + std::string(to_string(req.technique)));
    const auto *layout = std::get_if<VRLayout>(&req.layout);
    if (!layout)
        throw WrongTechniqueError(std::string(action) + " requires a VR layout");
    return *layout;
}

const CanvasLayout &canvas_layout(const SolveRequest &req, const char *action, std::initializer_list<Technique> allowed)
{
    if (std::find(allowed.begin(), allowed.end(), req.technique) == allowed.end())
        throw WrongTechniqueError(std::string(action) + " is not supported by " + std::string(to_string(req.technique)));
    const auto *layout = std::get_if<CanvasLayout>(&req.layout);
    if (!layout || layout->technique != req.technique)
        throw WrongTechniqueError(std::string(action) + " requires a matching canvas layout");
    return *layout;
}

} // namespace

VRLayout solve_rois_overlay_vr(const SolveRequest &req)
{
    VRLayout out = vr_layout(req, "ROIs Overlay");
    const double forward = req.viewer_forward.yaw();
    for (VideoId v : {VideoId::A, VideoId::B})
        out.area(v).yaw_offset = wrap_azimuth(forward - req.roi(v).yaw());

    const double span = std::clamp(req.params.overlay_span_deg, 0.0, 360.0);
    LuneArea &front = out.area(out.front);
    if (span >= 360.0 || span <= 0.0) {
        front.start_edge_az = front.end_edge_az = wrap_azimuth(forward + 180.0);
    } else {
        front.start_edge_az = wrap_azimuth(forward - span / 2.0);
        front.end_edge_az = wrap_azimuth(forward + span / 2.0);
    }
    LuneArea &back = out.area(other(out.front));
    back.start_edge_az = back.end_edge_az = wrap_azimuth(forward + 180.0);
    out.pending_slide.reset();
    return out;
}

VRLayout solve_rois_sxs_vr(const SolveRequest &req)
{
    VRLayout out = vr_layout(req, "ROIs SxS");
    const double sep = req.params.sxs_separation_deg;
    if (!(sep > 0.0 && sep < 180.0))
        throw DomainError("side-by-side separation must lie in (0, 180) degrees");
    const double forward = req.viewer_forward.yaw();

    LuneArea &a = out.area(VideoId::A);
    a.yaw_offset = wrap_azimuth(forward - sep / 2.0 - req.roi_a.yaw());
    a.start_edge_az = wrap_azimuth(forward + 180.0);
    a.end_edge_az = wrap_azimuth(forward);

    LuneArea &b = out.area(VideoId::B);
    b.yaw_offset = wrap_azimuth(forward + sep / 2.0 - req.roi_b.yaw());
    b.start_edge_az = wrap_azimuth(forward);
    b.end_edge_az = wrap_azimuth(forward + 180.0);

    out.pending_slide.reset();
    return out;
}

CanvasLayout solve_rois_sxs_2d(const SolveRequest &req)
{
    CanvasLayout out = canvas_layout(req, "ROIs SxS", {Technique::SlideIn2D, Technique::SideBySideIn2D});
    out.viewport(VideoId::A).center = req.roi_a;
    out.viewport(VideoId::B).center = req.roi_b;
    if (out.technique == Technique::SlideIn2D &&
        (out.divider_x < kDividerExtremeLow || out.divider_x > kDividerExtremeHigh))
        out.divider_x = 0.5;
    return refresh_fov(out);
}

CanvasLayout solve_rois_overlay_2d(const SolveRequest &req)
{
    CanvasLayout out = refresh_fov(canvas_layout(req, "ROIs Overlay", {Technique::SlideIn2D}));
    const VideoId top = out.front;
    const VideoId back = other(top);
    out.viewport(top).center = req.roi(top);

    // Middle of the front region, expressed in the back viewport's NDC. The
    // back ray through (ndc_x, 0) is forward + k·right, so its pitch is
    // asin(sin(p) / sqrt(1 + k²)) and its yaw is yaw + atan2(k, cos p).
    const PixelSpan back_span = mapping_span(out, back);
    const double target_px = divider_px(out) / 2.0;
    const double ndc_x = 2.0 * (target_px - back_span.x0) / back_span.width() - 1.0;
    const double k = ndc_x * std::tan(deg_to_rad(out.viewport(back).hfov) / 2.0);
    const Direction &roi = req.roi(back);
    const double sin_p = std::clamp(std::sin(deg_to_rad(roi.pitch())) * std::sqrt(1.0 + k * k), -1.0, 1.0);
    const double p = std::asin(sin_p);
    const double yaw = roi.yaw() - rad_to_deg(std::atan2(k, std::cos(p)));
    out.viewport(back).center = Direction{yaw, rad_to_deg(p)};
    return out;
}

VRLayout reset_views_vr()
{
    VRLayout layout;
    layout.area(VideoId::A) = LuneArea{270.0, 90.0, 0.0};
    layout.area(VideoId::B) = LuneArea{90.0, 270.0, 0.0};
    layout.front = VideoId::A;
    return layout;
}

VRLayout set_views_360(VideoId front)
{
    VRLayout layout;
    layout.area(VideoId::A) = LuneArea{180.0, 180.0, 0.0};
    layout.area(VideoId::B) = LuneArea{180.0, 180.0, 0.0};
    layout.front = front;
    return layout;
}

} // namespace ivc
