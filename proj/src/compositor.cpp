#include "ivcompare/compositor.hpp"

#include <algorithm>
#include <cmath>
#include <string_view>

#include "ivcompare/errors.hpp"
#include "font.hpp"

namespace ivc {

namespace {

using detail::draw_text;

constexpr Rgba kWhite{255, 255, 255, 255};
constexpr Rgba kPanelBackground{0, 0, 0, 170};
constexpr double kBandPitchDeg = 10.0;
constexpr double kBandHalfWidthDeg = 1.0;
constexpr double kPeekRingWidthDeg = 0.4;

Rgba with_alpha(Rgba c, std::uint8_t a)
{
    c.a = a;
    return c;
}

Rgba lerp(Rgba a, Rgba b, double t)
{
    auto mix = [t](std::uint8_t x, std::uint8_t y) {
        return static_cast<std::uint8_t>(std::lround(x + (double(y) - x) * t));
    };
    return {mix(a.r, b.r), mix(a.g, b.g), mix(a.b, b.b), mix(a.a, b.a)};
}

template <class ColorAt>
void draw_line(Frame &f, double x0, double y0, double x1, double y1, ColorAt color_at)
{
    const int steps = std::max(1, static_cast<int>(std::ceil(std::max(std::abs(x1 - x0), std::abs(y1 - y0)))));
    for (int i = 0; i <= steps; ++i) {
        const double t = double(i) / steps;
        const int x = static_cast<int>(std::floor(x0 + (x1 - x0) * t));
        const int y = static_cast<int>(std::floor(y0 + (y1 - y0) * t));
        if (f.contains(x, y))
            f.set(x, y, color_at(t));
    }
}

void draw_disk(Frame &f, double cx, double cy, double radius, Rgba fill, Rgba outline)
{
    const int x0 = static_cast<int>(std::floor(cx - radius - 1)), x1 = static_cast<int>(std::ceil(cx + radius + 1));
    const int y0 = static_cast<int>(std::floor(cy - radius - 1)), y1 = static_cast<int>(std::ceil(cy + radius + 1));
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x) {
            const double d = std::hypot(x + 0.5 - cx, y + 0.5 - cy);
            if (!f.contains(x, y) || d > radius + 1.0)
                continue;
            f.set(x, y, d <= radius ? fill : outline);
        }
}

/// Angular distance from `d` to the half great circle at azimuth `edge_az`
/// running pole to pole.
double distance_to_meridian(const Direction &d, double edge_az)
{
    const double delta = deg_to_rad(d.yaw() - edge_az);
    if (std::cos(delta) < 0.0)
        return 90.0 - std::abs(d.pitch());
    return rad_to_deg(std::asin(std::min(1.0, std::abs(std::sin(delta)) * std::cos(deg_to_rad(d.pitch())))));
}

const Frame &frame_of(VideoId v, const Frame &a, const Frame &b) { return v == VideoId::A ? a : b; }

void require_equirect(const Frame &f)
{
    if (!f.is_equirect())
        throw DomainError("source frames must be equirectangular (width = 2 * height)");
}

/// Color of world direction `d` on the VR layered sphere, including the
/// optional overlays.
Rgba shade_vr(const SessionState &state, const Frame &a, const Frame &b, const Direction &d, const RenderOptions &opts)
{
    const VRLayout &layout = state.vr();
    const auto layer = visible_layer_vr(layout, d, state.peek);
    Rgba c = layer ? sample_equirect(frame_of(*layer, a, b),
                                     equirect_from_dir(content_direction(layout, *layer, d)), opts.sampling)
                   : opts.complement_fill;
    if (!opts.draw_overlays)
        return c;

    auto blend = [&c](Rgba top) {
        const double alpha = top.a / 255.0;
        c = lerp(c, with_alpha(top, 255), alpha);
        c.a = 255;
    };
    const double az = wrap_azimuth(d.yaw());

    if (layout.pending_slide) {
        LuneArea preview = layout.area(layout.pending_slide->video);
        preview.start_edge_az += layout.pending_slide->delta_az;
        preview.end_edge_az += layout.pending_slide->delta_az;
        if (lune_contains(preview, az))
            blend(opts.slide_preview_tint);
    }
    if (state.technique == Technique::SlideInVR) {
        for (VideoId v : {VideoId::A, VideoId::B}) {
            const double band = v == VideoId::A ? kBandPitchDeg : -kBandPitchDeg;
            if (std::abs(d.pitch() - band) <= kBandHalfWidthDeg && lune_contains(layout.area(v), az))
                c = opts.video_colors[index(v)];
        }
        for (VideoId v : {other(layout.front), layout.front}) {
            const LuneArea &area = layout.area(v);
            const double half = (v == layout.front ? opts.front_edge_width_deg : opts.back_edge_width_deg) / 2.0;
            if (distance_to_meridian(d, area.start_edge_az) <= half || distance_to_meridian(d, area.end_edge_az) <= half)
                c = opts.video_colors[index(v)];
        }
    }
    if (state.peek.active) {
        const double dist = angular_distance(d, state.peek.gaze);
        const double r = state.peek.extent / 2.0;
        if (dist > r && dist <= r + kPeekRingWidthDeg)
            c = kWhite;
    }
    return c;
}

void composite_over(Frame &dst, const Frame &src, int ox, int oy)
{
    for (int y = 0; y < src.height(); ++y)
        for (int x = 0; x < src.width(); ++x)
            if (dst.contains(ox + x, oy + y))
                dst.blend(ox + x, oy + y, src.at(x, y));
}

void draw_depth_panel(Frame &out, const SessionState &state, const TrackRefs &tracks, const RenderOptions &opts)
{
    const int pw = out.width() / 4, ph = out.height() / 4;
    if (pw < 8 || ph < 8)
        return;
    const int ox = 2, oy = out.height() - ph - 2;
    for (int y = 0; y < ph; ++y)
        for (int x = 0; x < pw; ++x)
            out.blend(ox + x, oy + y, kPanelBackground);

    const double span = std::max(state.durations[0], state.durations[1]);
    auto px_of = [&](double depth) { return ox + (depth / span * 0.5 + 0.5) * (pw - 1); };
    const PlanetMapConfig map{MapPole::nadir, 0.0, 1.0};
    for (VideoId v : {VideoId::A, VideoId::B}) {
        const ROITrack *track = tracks[index(v)];
        if (!track)
            continue;
        const auto points = trajectory_vr(*track, state.clock(v).position, map);
        // Vertical axis: ROI yaw, top = -180.
        auto py_of = [&](const TrajectoryPoint &p) {
            const double yaw = rad_to_deg(std::atan2(p.map_pos.x, -p.map_pos.y));
            return oy + (yaw + 180.0) / 360.0 * (ph - 1);
        };
        for (std::size_t i = 1; i < points.size(); ++i) {
            if (points[i].segment != points[i - 1].segment)
                continue;
            draw_line(out, px_of(points[i - 1].time_value), py_of(points[i - 1]), px_of(points[i].time_value),
                      py_of(points[i]), [&](double) { return opts.video_colors[index(v)]; });
        }
    }
    const int now_x = static_cast<int>(std::floor(px_of(0.0)));
    for (int y = 0; y < ph; ++y)
        out.set(now_x, oy + y, kWhite);
}

// Canvas-space position of a minimap for `video`, or empty when it does not fit.
std::optional<PixelPos> minimap_origin(const CanvasLayout &layout, VideoId video, int size, int margin)
{
    const int w = layout.canvas.width, h = layout.canvas.height;
    const int y = h - size - margin;
    if (y < 0)
        return std::nullopt;
    auto fits = [&](PixelSpan span) { return span.width() >= size + 2 * margin; };
    switch (layout.technique) {
    case Technique::SlideIn2D: {
        const PixelSpan top{0, divider_px(layout)};
        if (video == layout.front)
            return fits(top) ? std::optional<PixelPos>({margin, y}) : std::nullopt;
        const PixelSpan visible{divider_px(layout), w};
        return fits(visible) ? std::optional<PixelPos>({w - size - margin, y}) : std::nullopt;
    }
    case Technique::SideBySideIn2D: {
        const PixelSpan span = mapping_span(layout, video);
        if (!fits(span))
            return std::nullopt;
        return PixelPos{video == VideoId::A ? span.x0 + margin : span.x1 - size - margin, y};
    }
    case Technique::ToggleIn2D:
        if (video != layout.toggle_current || w < size + 2 * margin)
            return std::nullopt;
        return PixelPos{w - size - margin, y};
    default:
        return std::nullopt;
    }
}

} // namespace

Frame::Frame(int width, int height, Rgba fill) : width_(width), height_(height)
{
    if (width < 0 || height < 0)
        throw DomainError("frame dimensions must be non-negative");
    pixels_.resize(std::size_t(width) * height * 4);
    for (std::size_t i = 0; i < pixels_.size(); i += 4) {
        pixels_[i] = fill.r;
        pixels_[i + 1] = fill.g;
        pixels_[i + 2] = fill.b;
        pixels_[i + 3] = fill.a;
    }
}

Rgba Frame::at(int x, int y) const
{
    const std::size_t i = (std::size_t(y) * width_ + x) * 4;
    return {pixels_[i], pixels_[i + 1], pixels_[i + 2], pixels_[i + 3]};
}

void Frame::set(int x, int y, Rgba c)
{
    const std::size_t i = (std::size_t(y) * width_ + x) * 4;
    pixels_[i] = c.r;
    pixels_[i + 1] = c.g;
    pixels_[i + 2] = c.b;
    pixels_[i + 3] = c.a;
}

void Frame::blend(int x, int y, Rgba c)
{
    if (c.a == 255) {
        set(x, y, c);
        return;
    }
    if (c.a == 0)
        return;
    const Rgba dst = at(x, y);
    const double sa = c.a / 255.0;
    const double da = dst.a / 255.0;
    const double oa = sa + da * (1.0 - sa);
    auto mix = [&](std::uint8_t s, std::uint8_t d) {
        return static_cast<std::uint8_t>(std::lround((s * sa + d * da * (1.0 - sa)) / oa));
    };
    set(x, y, {mix(c.r, dst.r), mix(c.g, dst.g), mix(c.b, dst.b), static_cast<std::uint8_t>(std::lround(oa * 255.0))});
}

Rgba sample_equirect(const Frame &frame, const EquirectCoord &uv, Sampling sampling)
{
    const int w = frame.width(), h = frame.height();
    if (sampling == Sampling::nearest) {
        const int x = std::clamp(static_cast<int>(std::floor(uv.u() * w)), 0, w - 1);
        const int y = std::clamp(static_cast<int>(std::floor(uv.v() * h)), 0, h - 1);
        return frame.at(x, y);
    }
    const double fx = uv.u() * w - 0.5;
    const double fy = std::clamp(uv.v() * h - 0.5, 0.0, h - 1.0);
    const int x0 = static_cast<int>(std::floor(fx));
    const int y0 = static_cast<int>(std::floor(fy));
    const double tx = fx - x0, ty = fy - y0;
    const int xa = ((x0 % w) + w) % w, xb = (xa + 1) % w;
    const int ya = y0, yb = std::min(y0 + 1, h - 1);
    return lerp(lerp(frame.at(xa, ya), frame.at(xb, ya), tx), lerp(frame.at(xa, yb), frame.at(xb, yb), tx), ty);
}

Frame render_canvas(const SessionState &state, const Frame &frame_a, const Frame &frame_b, const RenderOptions &opts,
                    const TrackRefs &tracks)
{
    if (is_vr(state.technique))
        throw WrongTechniqueError("render_canvas needs a 2D technique");
    require_equirect(frame_a);
    require_equirect(frame_b);
    const CanvasLayout &layout = state.canvas();
    Frame out(layout.canvas.width, layout.canvas.height);
    for (int y = 0; y < out.height(); ++y)
        for (int x = 0; x < out.width(); ++x) {
            const SourceSample s = visible_source_2d(layout, {x, y}, state.peek);
            out.set(x, y, sample_equirect(frame_of(s.video, frame_a, frame_b), s.uv, opts.sampling));
        }
    if (!opts.draw_overlays)
        return out;

    if (layout.technique == Technique::SlideIn2D) {
        const int d = divider_px(layout);
        for (int x : {d - 1, d})
            if (x > 0 && x < out.width() - 1 && d > 0 && d < out.width())
                for (int y = 0; y < out.height(); ++y)
                    out.set(x, y, opts.video_colors[index(layout.front)]);
    }

    const int size = static_cast<int>(std::lround(opts.minimap_scale * layout.canvas.height));
    const int margin = std::max(2, layout.canvas.height / 75);
    if (size >= 16) {
        for (VideoId v : {VideoId::A, VideoId::B}) {
            const auto origin = minimap_origin(layout, v, size, margin);
            if (!origin)
                continue;
            const Frame map = render_minimap(state, v, frame_of(v, frame_a, frame_b), tracks[index(v)],
                                             {size, size}, opts);
            composite_over(out, map, origin->x, origin->y);
        }
    }

    if (state.peek.active) {
        const int half = static_cast<int>(state.peek.extent) / 2;
        const int x0 = state.peek.cursor.x - half - 1, x1 = state.peek.cursor.x + half;
        const int y0 = state.peek.cursor.y - half - 1, y1 = state.peek.cursor.y + half;
        for (int x = x0; x <= x1; ++x)
            for (int y : {y0, y1})
                if (out.contains(x, y))
                    out.set(x, y, kWhite);
        for (int y = y0; y <= y1; ++y)
            for (int x : {x0, x1})
                if (out.contains(x, y))
                    out.set(x, y, kWhite);
        const int scale = std::max(1, layout.canvas.height / 200);
        const std::string_view label = "PEEKING";
        const int text_w = static_cast<int>(label.size()) * 6 * scale;
        draw_text(out, out.width() - text_w - margin, margin, label, kWhite, scale);
    }
    return out;
}

Frame render_vr_view(const SessionState &state, const Frame &frame_a, const Frame &frame_b, const Direction &head_pose,
                     CanvasSize out_size, const RenderOptions &opts)
{
    if (!is_vr(state.technique))
        throw WrongTechniqueError("render_vr_view needs a VR technique");
    require_equirect(frame_a);
    require_equirect(frame_b);
    const Viewport eye{head_pose, opts.vr_vfov, opts.vr_hfov};
    Frame out(out_size.width, out_size.height);
    for (int y = 0; y < out.height(); ++y)
        for (int x = 0; x < out.width(); ++x) {
            const double nx = 2.0 * (x + 0.5) / out.width() - 1.0;
            const double ny = 1.0 - 2.0 * (y + 0.5) / out.height();
            out.set(x, y, shade_vr(state, frame_a, frame_b, viewport_ray(eye, nx, ny), opts));
        }
    return out;
}

Frame render_equirect_composite(const SessionState &state, const Frame &frame_a, const Frame &frame_b,
                                CanvasSize out_size, const RenderOptions &opts, const TrackRefs &tracks)
{
    if (!is_vr(state.technique))
        throw WrongTechniqueError("render_equirect_composite needs a VR technique");
    require_equirect(frame_a);
    require_equirect(frame_b);
    Frame out(out_size.width, out_size.height);
    for (int y = 0; y < out.height(); ++y)
        for (int x = 0; x < out.width(); ++x) {
            const EquirectCoord uv{(x + 0.5) / out.width(), (y + 0.5) / out.height()};
            out.set(x, y, shade_vr(state, frame_a, frame_b, dir_from_equirect(uv), opts));
        }
    if (opts.draw_overlays && (tracks[0] || tracks[1]))
        draw_depth_panel(out, state, tracks, opts);
    return out;
}

double minimap_radius(CanvasSize out_size) { return std::min(out_size.width, out_size.height) / 2.0 - 1.0; }

Frame render_minimap(const SessionState &state, VideoId video, const Frame &frame, const ROITrack *track,
                     CanvasSize out_size, const RenderOptions &opts, const PlanetMapConfig &map_in)
{
    require_equirect(frame);
    PlanetMapConfig map = map_in;
    map.radius_px = minimap_radius(out_size);
    Frame out(out_size.width, out_size.height, kTransparent);
    if (map.radius_px <= 0.0)
        return out;
    const double cx = out_size.width / 2.0, cy = out_size.height / 2.0;
    for (int y = 0; y < out.height(); ++y)
        for (int x = 0; x < out.width(); ++x) {
            const MapPoint p{x + 0.5 - cx, y + 0.5 - cy};
            if (std::hypot(p.x, p.y) > map.radius_px)
                continue;
            out.set(x, y, sample_equirect(frame, equirect_from_dir(planet_unproject(p, map)), opts.sampling));
        }
    if (!opts.draw_overlays)
        return out;

    const Rgba color = opts.video_colors[index(video)];
    auto to_px = [&](const Direction &d) {
        const MapPoint m = planet_project(d, map);
        return MapPoint{cx + m.x, cy + m.y};
    };
    auto outline = [&](const Viewport &vp, auto to_content, Rgba c) {
        constexpr int kSteps = 32;
        std::vector<MapPoint> ring;
        for (int side = 0; side < 4; ++side)
            for (int i = 0; i < kSteps; ++i) {
                const double t = -1.0 + 2.0 * i / kSteps;
                const double nx = side == 0 ? t : side == 1 ? 1.0 : side == 2 ? -t : -1.0;
                const double ny = side == 0 ? 1.0 : side == 1 ? -t : side == 2 ? -1.0 : t;
                ring.push_back(to_px(to_content(viewport_ray(vp, nx, ny))));
            }
        for (std::size_t i = 0; i < ring.size(); ++i) {
            const MapPoint &p = ring[i], &q = ring[(i + 1) % ring.size()];
            if (std::hypot(q.x - p.x, q.y - p.y) < map.radius_px * 0.5)
                draw_line(out, p.x, p.y, q.x, q.y, [c](double) { return c; });
        }
    };

    if (std::holds_alternative<VRLayout>(state.layout)) {
        const VRLayout &layout = state.vr();
        const LuneArea &area = layout.area(video);
        for (double edge : {area.start_edge_az, area.end_edge_az}) {
            const double yaw = edge - area.yaw_offset;
            const MapPoint rim = to_px(Direction{yaw, map.center_pole == MapPole::nadir ? 89.999 : -89.999});
            draw_line(out, cx, cy, rim.x, rim.y, [color](double) { return color; });
        }
        const Viewport eye{state.head_pose, opts.vr_vfov, opts.vr_hfov};
        outline(eye, [&](const Direction &d) { return content_direction(layout, video, d); }, kWhite);
    } else {
        outline(state.canvas().viewport(video), [](const Direction &d) { return d; }, color);
    }

    // Front marker just inside the rim.
    const MapPoint front = to_px(Direction{0.0, map.center_pole == MapPole::nadir ? 70.0 : -70.0});
    const int scale = std::max(1, static_cast<int>(map.radius_px / 60.0));
    draw_text(out, static_cast<int>(front.x) - 2 * scale, static_cast<int>(front.y) - 3 * scale, "F", kWhite, scale);

    if (track && !track->empty()) {
        const auto points = trajectory_2d(*track, map);
        for (std::size_t i = 1; i < points.size(); ++i) {
            if (points[i].segment != points[i - 1].segment)
                continue;
            const double f0 = points[i - 1].time_value, f1 = points[i].time_value;
            draw_line(out, cx + points[i - 1].map_pos.x, cy + points[i - 1].map_pos.y, cx + points[i].map_pos.x,
                      cy + points[i].map_pos.y, [&](double t) {
                          const Rgb g = gradient_color(f0 + (f1 - f0) * t);
                          return Rgba{g.r, g.g, g.b, 255};
                      });
        }
        for (const TrajectoryPoint &p : points) {
            const int x = static_cast<int>(std::floor(cx + p.map_pos.x));
            const int y = static_cast<int>(std::floor(cy + p.map_pos.y));
            if (out.contains(x, y) && (&p == &points.front() || &p == &points.back())) {
                const Rgb g = gradient_color(p.time_value);
                out.set(x, y, {g.r, g.g, g.b, 255});
            }
        }
        const double t = std::clamp(state.clock(video).position, 0.0, track->duration());
        const ROISample roi = nearest_roi(*track, t);
        const MapPoint m = to_px(roi.center);
        const double r = std::max(2.0, map.radius_px / 25.0);
        draw_disk(out, m.x, m.y, r, color, kWhite);
    }
    return out;
}

} // namespace ivc
