#include "ivcompare/display.hpp"

#include <algorithm>
#include <cmath>

#include "ivcompare/errors.hpp"

namespace ivc {

namespace {

constexpr std::array<std::string_view, 5> kTechniqueNames = {
    "SlideInVR", "ToggleInVR", "SlideIn2D", "ToggleIn2D", "SideBySideIn2D"};

void require_canvas(const CanvasLayout &layout)
{
    if (is_vr(layout.technique))
        throw WrongTechniqueError("canvas layout carries a VR technique");
}

} // namespace

std::string_view to_string(VideoId v) { return v == VideoId::A ? "A" : "B"; }

std::optional<VideoId> video_from_string(std::string_view s)
{
    if (s == "A")
        return VideoId::A;
    if (s == "B")
        return VideoId::B;
    return std::nullopt;
}

std::string_view to_string(Technique t) { return kTechniqueNames[static_cast<std::size_t>(t)]; }

std::optional<Technique> technique_from_string(std::string_view s)
{
    for (std::size_t i = 0; i < kTechniqueNames.size(); ++i)
        if (kTechniqueNames[i] == s)
            return static_cast<Technique>(i);
    return std::nullopt;
}

bool lune_contains(const LuneArea &a, double az)
{
    const double start = wrap_azimuth(a.start_edge_az);
    const double end = wrap_azimuth(a.end_edge_az);
    if (start == end)
        return true;
    const double offset = wrap_azimuth(az - start);
    return offset < wrap_azimuth(end - start);
}

double lune_fraction(const LuneArea &a)
{
    const double span = wrap_azimuth(a.end_edge_az - a.start_edge_az);
    return span == 0.0 ? 1.0 : span / 360.0;
}

VRLayout extend_vr(const VRLayout &layout, VideoId video, LuneEdge edge, double new_az)
{
    VRLayout out = layout;
    double &target = edge == LuneEdge::start ? out.area(video).start_edge_az : out.area(video).end_edge_az;
    target = wrap_azimuth(new_az);
    return out;
}

VRLayout slide_vr(const VRLayout &layout, VideoId video, double delta_az, bool commit)
{
    VRLayout out = layout;
    if (!commit) {
        out.pending_slide = PendingSlide{video, delta_az};
        return out;
    }
    out.pending_slide.reset();
    if (delta_az == 0.0)
        return out;
    LuneArea &a = out.area(video);
    a.start_edge_az = wrap_azimuth(a.start_edge_az + delta_az);
    a.end_edge_az = wrap_azimuth(a.end_edge_az + delta_az);
    a.yaw_offset = wrap_azimuth(a.yaw_offset + delta_az);
    return out;
}

VRLayout swap(const VRLayout &layout)
{
    VRLayout out = layout;
    out.front = other(layout.front);
    return out;
}

Direction content_direction(const VRLayout &layout, VideoId video, const Direction &world)
{
    return {world.yaw() - layout.area(video).yaw_offset, world.pitch()};
}

bool in_vr_peek(const PeekState &peek, const Direction &d)
{
    return peek.active && angular_distance(d, peek.gaze) <= peek.extent / 2.0;
}

std::optional<VideoId> visible_layer_vr(const VRLayout &layout, const Direction &d, const PeekState &peek)
{
    const double az = wrap_azimuth(d.yaw());
    const VideoId front = layout.front;
    const VideoId back = other(front);
    if (in_vr_peek(peek, d) && lune_contains(layout.area(back), az))
        return back;
    if (lune_contains(layout.area(front), az))
        return front;
    if (lune_contains(layout.area(back), az))
        return back;
    return std::nullopt;
}

CanvasLayout make_canvas_layout(Technique technique, CanvasSize canvas)
{
    if (is_vr(technique))
        throw WrongTechniqueError("canvas layouts exist only for 2D techniques");
    if (canvas.width < 2 || canvas.height < 1)
        throw DomainError("canvas must be at least 2x1 pixels");
    CanvasLayout layout;
    layout.technique = technique;
    layout.canvas = canvas;
    for (auto &vp : layout.viewports)
        vp = Viewport{Direction{0.0, 0.0}, kCanvasVfovDeg, kCanvasVfovDeg};
    return refresh_fov(layout);
}

int divider_px(const CanvasLayout &layout)
{
    return static_cast<int>(std::lround(layout.divider_x * layout.canvas.width));
}

PixelSpan mapping_span(const CanvasLayout &layout, VideoId video)
{
    const int w = layout.canvas.width;
    switch (layout.technique) {
    case Technique::SlideIn2D:
        return video == layout.front ? PixelSpan{0, divider_px(layout)} : PixelSpan{0, w};
    case Technique::SideBySideIn2D:
        return video == VideoId::A ? PixelSpan{0, w / 2} : PixelSpan{w / 2, w};
    case Technique::ToggleIn2D:
        return {0, w};
    default:
        throw WrongTechniqueError("canvas layout carries a VR technique");
    }
}

CanvasLayout refresh_fov(CanvasLayout layout)
{
    require_canvas(layout);
    for (VideoId v : {VideoId::A, VideoId::B}) {
        Viewport &vp = layout.viewport(v);
        // Zero-width spans still need a valid frustum.
        const int width = std::max(mapping_span(layout, v).width(), 1);
        vp.hfov = hfov_from_aspect(vp.vfov, double(width) / layout.canvas.height);
    }
    return layout;
}

CanvasLayout extend_2d(const CanvasLayout &layout, double new_divider_x)
{
    if (layout.technique != Technique::SlideIn2D)
        throw WrongTechniqueError("divider exists only in SlideIn2D");
    CanvasLayout out = layout;
    out.divider_x = std::clamp(new_divider_x, 0.0, 1.0);
    return refresh_fov(out);
}

CanvasLayout swap(const CanvasLayout &layout)
{
    require_canvas(layout);
    CanvasLayout out = layout;
    out.front = other(layout.front);
    return refresh_fov(out);
}

bool in_canvas_peek(const PeekState &peek, PixelPos p)
{
    if (!peek.active)
        return false;
    const int half = static_cast<int>(peek.extent) / 2;
    return p.x >= peek.cursor.x - half && p.x < peek.cursor.x + half && p.y >= peek.cursor.y - half &&
           p.y < peek.cursor.y + half;
}

VideoId canvas_owner(const CanvasLayout &layout, PixelPos p, const PeekState &peek)
{
    switch (layout.technique) {
    case Technique::SlideIn2D: {
        if (in_canvas_peek(peek, p))
            return other(layout.front);
        return p.x < divider_px(layout) ? layout.front : other(layout.front);
    }
    case Technique::ToggleIn2D:
        return in_canvas_peek(peek, p) ? other(layout.toggle_current) : layout.toggle_current;
    case Technique::SideBySideIn2D:
        return p.x < layout.canvas.width / 2 ? VideoId::A : VideoId::B;
    default:
        throw WrongTechniqueError("canvas layout carries a VR technique");
    }
}

NdcPoint pixel_to_ndc(const CanvasLayout &layout, VideoId video, double px, double py)
{
    const PixelSpan span = mapping_span(layout, video);
    const double w = std::max(span.width(), 1);
    return {2.0 * (px - span.x0) / w - 1.0, 1.0 - 2.0 * py / layout.canvas.height};
}

SourceSample visible_source_2d(const CanvasLayout &layout, PixelPos p, const PeekState &peek)
{
    if (p.x < 0 || p.y < 0 || p.x >= layout.canvas.width || p.y >= layout.canvas.height)
        throw DomainError("pixel outside the canvas");
    const VideoId owner = canvas_owner(layout, p, peek);
    const NdcPoint ndc = pixel_to_ndc(layout, owner, p.x + 0.5, p.y + 0.5);
    const Direction d = viewport_ray(layout.viewport(owner), ndc.x, ndc.y);
    return {owner, equirect_from_dir(d)};
}

} // namespace ivc
