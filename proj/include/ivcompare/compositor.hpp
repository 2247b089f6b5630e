#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ivcompare/display.hpp"
#include "ivcompare/roi.hpp"
#include "ivcompare/session.hpp"

namespace ivc {

struct Rgba
{
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;
    std::uint8_t a = 255;

    bool operator==(const Rgba &) const = default;
};

inline constexpr Rgba kPink{255, 105, 180, 255};
inline constexpr Rgba kBlue{40, 110, 255, 255};
inline constexpr Rgba kTransparent{0, 0, 0, 0};

/// Row-major RGBA8 image.
class Frame
{
public:
    Frame() = default;
    Frame(int width, int height, Rgba fill = kTransparent);

    int width() const { return width_; }
    int height() const { return height_; }
    bool empty() const { return width_ == 0 || height_ == 0; }
    bool is_equirect() const { return !empty() && width_ == 2 * height_; }

    Rgba at(int x, int y) const;
    void set(int x, int y, Rgba c);
    /// Source-over blend of `c` using its alpha.
    void blend(int x, int y, Rgba c);
    bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }

    const std::vector<std::uint8_t> &bytes() const { return pixels_; }
    std::vector<std::uint8_t> &bytes() { return pixels_; }

    bool operator==(const Frame &) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> pixels_;
};

enum class Sampling { nearest, bilinear };

struct RenderOptions
{
    Sampling sampling = Sampling::nearest;
    /// Edges, slide band and preview tint, peek indicator, minimaps, labels.
    bool draw_overlays = true;
    std::array<Rgba, 2> video_colors{kPink, kBlue};
    double front_edge_width_deg = 1.0;
    double back_edge_width_deg = 0.5;
    Rgba complement_fill{40, 40, 40, 255};
    Rgba slide_preview_tint{255, 255, 255, 89};
    double vr_hfov = kVrHfovDeg;
    double vr_vfov = kVrVfovDeg;
    /// Minimap edge length as a fraction of the canvas height.
    double minimap_scale = 0.3;
};

using TrackRefs = std::array<const ROITrack *, 2>;

/// Equirect texel lookup; u wraps and v clamps.
Rgba sample_equirect(const Frame &frame, const EquirectCoord &uv, Sampling sampling);

/// 2D technique canvas. Throws WrongTechniqueError for VR sessions.
Frame render_canvas(const SessionState &state, const Frame &frame_a, const Frame &frame_b, const RenderOptions &opts,
                    const TrackRefs &tracks = {});

/// Perspective eye view of a VR session at `head_pose`. Throws
/// WrongTechniqueError for 2D sessions.
Frame render_vr_view(const SessionState &state, const Frame &frame_a, const Frame &frame_b, const Direction &head_pose,
                     CanvasSize out_size, const RenderOptions &opts);

/// Whole-sphere equirect view of a VR session. With overlays and tracks, a
/// depth-graph inset shows each ROI trajectory against time relative to now.
Frame render_equirect_composite(const SessionState &state, const Frame &frame_a, const Frame &frame_b,
                                CanvasSize out_size, const RenderOptions &opts, const TrackRefs &tracks = {});

/// Planet-view minimap of one video: the frame in azimuthal-equidistant
/// projection with display-area outline, FoV indicator, front marker,
/// gradient trajectory and current ROI marker. Outside the disk is transparent.
Frame render_minimap(const SessionState &state, VideoId video, const Frame &frame, const ROITrack *track,
                     CanvasSize out_size, const RenderOptions &opts, const PlanetMapConfig &map = {});

/// Radius used by render_minimap for a given output size.
double minimap_radius(CanvasSize out_size);

} // namespace ivc
