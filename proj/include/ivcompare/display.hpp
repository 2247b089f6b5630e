#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "ivcompare/geometry.hpp"

namespace ivc {

enum class VideoId { A = 0, B = 1 };

inline constexpr VideoId other(VideoId v) { return v == VideoId::A ? VideoId::B : VideoId::A; }
inline constexpr std::size_t index(VideoId v) { return static_cast<std::size_t>(v); }
std::string_view to_string(VideoId v);
std::optional<VideoId> video_from_string(std::string_view s);

enum class Technique { SlideInVR, ToggleInVR, SlideIn2D, ToggleIn2D, SideBySideIn2D };

std::string_view to_string(Technique t);
std::optional<Technique> technique_from_string(std::string_view s);
inline constexpr bool is_vr(Technique t) { return t == Technique::SlideInVR || t == Technique::ToggleInVR; }

inline constexpr double kCanvasVfovDeg = 40.0;
inline constexpr double kVrPeekDiameterDeg = 15.0;
inline constexpr int kCanvasPeekSizePx = 300;

/// Spherical-lune display area bounded by two meridian edges. The visible
/// span runs from start to end in increasing azimuth; equal edges mean the
/// whole sphere. `yaw_offset` rotates the video content shown in the area.
struct LuneArea
{
    double start_edge_az = 0.0;
    double end_edge_az = 0.0;
    double yaw_offset = 0.0;

    bool operator==(const LuneArea &) const = default;
};

struct PendingSlide
{
    VideoId video = VideoId::A;
    double delta_az = 0.0;

    bool operator==(const PendingSlide &) const = default;
};

struct VRLayout
{
    std::array<LuneArea, 2> areas{};
    VideoId front = VideoId::A;
    std::optional<PendingSlide> pending_slide;

    const LuneArea &area(VideoId v) const { return areas[index(v)]; }
    LuneArea &area(VideoId v) { return areas[index(v)]; }

    bool operator==(const VRLayout &) const = default;
};

struct CanvasSize
{
    int width = 0;
    int height = 0;

    bool operator==(const CanvasSize &) const = default;
};

struct PixelPos
{
    int x = 0;
    int y = 0;

    bool operator==(const PixelPos &) const = default;
};

/// Layout of the three 2D techniques. In SlideIn2D the front layer occupies
/// the columns left of the divider and the back layer is mapped over the full
/// canvas; SideBySideIn2D splits the canvas into equal halves (A left);
/// ToggleIn2D shows `toggle_current` through a viewport shared by both videos.
struct CanvasLayout
{
    Technique technique = Technique::SlideIn2D;
    CanvasSize canvas;
    std::array<Viewport, 2> viewports{};
    VideoId front = VideoId::A;
    double divider_x = 0.5;
    VideoId toggle_current = VideoId::A;

    const Viewport &viewport(VideoId v) const { return viewports[index(v)]; }
    Viewport &viewport(VideoId v) { return viewports[index(v)]; }

    bool operator==(const CanvasLayout &) const = default;
};

/// Temporary reveal of the hidden video. VR peeks are a disk of `extent`
/// degrees diameter around `gaze`; canvas peeks are an `extent`-pixel square
/// centered on `cursor`.
struct PeekState
{
    bool active = false;
    Direction gaze;
    PixelPos cursor;
    double extent = 0.0;

    static PeekState vr(const Direction &gaze) { return {true, gaze, {}, kVrPeekDiameterDeg}; }
    static PeekState canvas(PixelPos cursor) { return {true, {}, cursor, double(kCanvasPeekSizePx)}; }

    bool operator==(const PeekState &) const = default;
};

enum class LuneEdge { start, end };

// ---- VR lunes ----

bool lune_contains(const LuneArea &a, double az);
double lune_fraction(const LuneArea &a);

VRLayout extend_vr(const VRLayout &layout, VideoId video, LuneEdge edge, double new_az);
/// `commit = false` records a preview only; `commit = true` rotates both edges
/// and the content of `video` by `delta_az` and clears any preview.
VRLayout slide_vr(const VRLayout &layout, VideoId video, double delta_az, bool commit);
VRLayout swap(const VRLayout &layout);

/// Direction inside `video`'s own frame that is displayed at world direction
/// `world` (undoes the area's yaw offset).
Direction content_direction(const VRLayout &layout, VideoId video, const Direction &world);

bool in_vr_peek(const PeekState &peek, const Direction &d);
std::optional<VideoId> visible_layer_vr(const VRLayout &layout, const Direction &d, const PeekState &peek);

// ---- 2D canvas ----

/// Horizontal pixel span [x0, x1) over the full canvas height.
struct PixelSpan
{
    int x0 = 0;
    int x1 = 0;

    int width() const { return x1 - x0; }
    bool contains(int x) const { return x >= x0 && x < x1; }
    bool operator==(const PixelSpan &) const = default;
};

/// Default layout for a 2D technique: front-facing views, divider at 0.5,
/// A in front, fields of view derived from the canvas geometry.
CanvasLayout make_canvas_layout(Technique technique, CanvasSize canvas);

/// Recomputes every viewport's hFoV from the pixel span it is mapped onto.
CanvasLayout refresh_fov(CanvasLayout layout);

int divider_px(const CanvasLayout &layout);
/// Span the viewport of `video` is mapped onto (may be empty).
PixelSpan mapping_span(const CanvasLayout &layout, VideoId video);

CanvasLayout extend_2d(const CanvasLayout &layout, double new_divider_x);
CanvasLayout swap(const CanvasLayout &layout);

struct SourceSample
{
    VideoId video = VideoId::A;
    EquirectCoord uv;
};

bool in_canvas_peek(const PeekState &peek, PixelPos p);
/// Owner of a canvas pixel before view mapping, with peek applied.
VideoId canvas_owner(const CanvasLayout &layout, PixelPos p, const PeekState &peek);
NdcPoint pixel_to_ndc(const CanvasLayout &layout, VideoId video, double px, double py);
/// Throws DomainError for pixels outside the canvas.
SourceSample visible_source_2d(const CanvasLayout &layout, PixelPos p, const PeekState &peek);

} // namespace ivc
