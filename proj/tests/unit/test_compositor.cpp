#include <doctest.h>

#include <cmath>

#include "ivcompare/compositor.hpp"
#include "ivcompare/errors.hpp"
#include "oracle.hpp"
#include "test_support.hpp"

using namespace ivc;
using namespace ivc::testing;

namespace {

RenderOptions plain()
{
    RenderOptions o;
    o.draw_overlays = false;
    return o;
}

std::size_t count_diff(const Frame &a, const Frame &b)
{
    std::size_t n = 0;
    for (int y = 0; y < a.height(); ++y)
        for (int x = 0; x < a.width(); ++x)
            n += a.at(x, y) != b.at(x, y);
    return n;
}

} // namespace

TEST_CASE("frame pixels and blending")
{
    Frame f(3, 2, kPink);
    CHECK(f.at(2, 1) == kPink);
    f.set(1, 1, kBlue);
    CHECK(f.at(1, 1) == kBlue);
    f.blend(0, 0, Rgba{255, 255, 255, 0});
    CHECK(f.at(0, 0) == kPink);
    f.blend(0, 0, Rgba{0, 0, 0, 255});
    CHECK(f.at(0, 0) == Rgba{0, 0, 0, 255});
    CHECK(f.bytes().size() == 24);
    CHECK_FALSE(f.contains(3, 0));
    CHECK_FALSE(f.is_equirect());
    CHECK(Frame(4, 2).is_equirect());
}

TEST_CASE("nearest sampling: floor, wrap and clamp")
{
    const Frame f = coded_frame(VideoId::A);
    CHECK(decode_texel(sample_equirect(f, EquirectCoord{0.0, 0.0}, Sampling::nearest)) == TexelRef{VideoId::A, 0, 0});
    CHECK(decode_texel(sample_equirect(f, EquirectCoord{1.0, 1.0}, Sampling::nearest)) ==
          TexelRef{VideoId::A, 0, kCodedHeight - 1});
    CHECK(decode_texel(sample_equirect(f, EquirectCoord{0.999999, 0.5}, Sampling::nearest)) ==
          TexelRef{VideoId::A, kCodedWidth - 1, kCodedHeight / 2});
    CHECK(decode_texel(sample_equirect(f, EquirectCoord{3.0 / kCodedWidth, 0.0}, Sampling::nearest))->x == 3);
}

TEST_CASE("bilinear sampling blends neighbours and wraps the seam")
{
    Frame f(4, 2, Rgba{0, 0, 0, 255});
    f.set(0, 0, Rgba{200, 0, 0, 255});
    f.set(3, 0, Rgba{0, 0, 0, 255});
    // Texel centers sit at (i + 0.5) / 4.
    CHECK(sample_equirect(f, EquirectCoord{0.125, 0.25}, Sampling::bilinear) == Rgba{200, 0, 0, 255});
    CHECK(sample_equirect(f, EquirectCoord{0.25, 0.25}, Sampling::bilinear).r == 100);
    CHECK(sample_equirect(f, EquirectCoord{0.0, 0.25}, Sampling::bilinear).r == 100);
}

TEST_CASE("canvas render matches the oracle for each 2D technique")
{
    const Frame a = coded_frame(VideoId::A), b = coded_frame(VideoId::B);
    for (Technique t : {Technique::SlideIn2D, Technique::ToggleIn2D, Technique::SideBySideIn2D}) {
        const EngineConfig cfg = test_engine_config(t, {96, 40});
        for (const SessionState &s : fuzzed_states(cfg, 17, 12)) {
            const Frame out = render_canvas(s, a, b, plain());
            const auto expected = oracle::canvas(s, kCodedWidth, kCodedHeight);
            std::size_t mismatches = 0;
            for (int y = 0; y < out.height(); ++y)
                for (int x = 0; x < out.width(); ++x)
                    mismatches += decode_texel(out.at(x, y)) != expected[y * out.width() + x];
            CHECK(mismatches == 0);
        }
    }
}

TEST_CASE("VR renders match the oracle")
{
    const Frame a = coded_frame(VideoId::A), b = coded_frame(VideoId::B);
    const RenderOptions opts = plain();
    for (Technique t : {Technique::SlideInVR, Technique::ToggleInVR}) {
        const EngineConfig cfg = test_engine_config(t);
        for (const SessionState &s : fuzzed_states(cfg, 23, 12)) {
            const Frame eq = render_equirect_composite(s, a, b, {64, 32}, opts);
            const auto expected_eq = oracle::vr_equirect(s, 64, 32, kCodedWidth, kCodedHeight);
            const Frame view = render_vr_view(s, a, b, s.head_pose, {48, 40}, opts);
            const auto expected_view = oracle::vr_view(s, s.head_pose.yaw(), s.head_pose.pitch(), opts.vr_hfov,
                                                       opts.vr_vfov, 48, 40, kCodedWidth, kCodedHeight);
            std::size_t mismatches = 0;
            for (int i = 0; i < 64 * 32; ++i)
                mismatches += decode_texel(eq.at(i % 64, i / 64)) != expected_eq[i];
            for (int i = 0; i < 48 * 40; ++i)
                mismatches += decode_texel(view.at(i % 48, i / 48)) != expected_view[i];
            CHECK(mismatches == 0);
        }
    }
}

TEST_CASE("uncovered VR directions use the complement fill")
{
    const EngineConfig cfg = test_engine_config(Technique::SlideInVR);
    SessionState s = new_session(cfg);
    s = apply_command(cfg, s, cmd::ExtendVR{VideoId::A, LuneEdge::end, 30.0});
    s = apply_command(cfg, s, cmd::ExtendVR{VideoId::B, LuneEdge::start, 150.0});
    const Frame out = render_equirect_composite(s, coded_frame(VideoId::A), coded_frame(VideoId::B), {72, 36}, plain());
    // Column 54 is yaw 92.5 (between the lunes), column 36 is yaw 2.5.
    CHECK(out.at(54, 18) == RenderOptions{}.complement_fill);
    CHECK(decode_texel(out.at(36, 18))->video == VideoId::A);
    CHECK(decode_texel(out.at(71, 18))->video == VideoId::B);
}

TEST_CASE("renderers reject the wrong technique and non-equirect frames")
{
    const Frame a = coded_frame(VideoId::A), b = coded_frame(VideoId::B);
    const SessionState vr = new_session(test_engine_config(Technique::SlideInVR));
    const SessionState flat = new_session(test_engine_config(Technique::SlideIn2D, {40, 20}));
    CHECK_THROWS_AS(render_canvas(vr, a, b, plain()), WrongTechniqueError);
    CHECK_THROWS_AS(render_vr_view(flat, a, b, {}, {8, 8}, plain()), WrongTechniqueError);
    CHECK_THROWS_AS(render_equirect_composite(flat, a, b, {8, 4}, plain()), WrongTechniqueError);
    CHECK_THROWS_AS(render_canvas(flat, Frame(10, 10), b, plain()), DomainError);
}

TEST_CASE("peek changes only its region")
{
    const Frame a(64, 32, kPink), b(64, 32, kBlue);
    const EngineConfig cfg = test_engine_config(Technique::ToggleIn2D, {400, 200});
    const SessionState off = new_session(cfg);
    const SessionState on = apply_command(cfg, off, cmd::PeekOn{{}, PixelPos{100, 50}});
    const Frame f0 = render_canvas(off, a, b, plain()), f1 = render_canvas(on, a, b, plain());
    // The block [-50, 250) x [-100, 200) clipped to the canvas.
    CHECK(count_diff(f0, f1) == 250u * 200u);
    CHECK(f1.at(249, 10) == kBlue);
    CHECK(f1.at(250, 10) == kPink);
}

TEST_CASE("overlays: divider, peek outline and label")
{
    const Frame a(64, 32, kPink), b(64, 32, kBlue);
    const EngineConfig cfg = test_engine_config(Technique::SlideIn2D, {400, 200});
    const SessionState s = new_session(cfg);
    const Frame f = render_canvas(s, a, b, RenderOptions{});
    CHECK(f.at(199, 100) == kPink);
    CHECK(f.at(200, 100) == kPink);
    CHECK(f.at(201, 100) == kBlue);
    CHECK(f.at(0, 0).a == 255);

    const SessionState p = apply_command(cfg, s, cmd::PeekOn{{}, PixelPos{200, 100}});
    const Frame g = render_canvas(p, a, b, RenderOptions{});
    const Rgba white{255, 255, 255, 255};
    CHECK(g.at(49, 100) == white);
    CHECK(g.at(150, 99) == kBlue);
    bool label = false;
    for (int y = 0; y < 20; ++y)
        for (int x = 340; x < 400; ++x)
            label = label || g.at(x, y) == white;
    CHECK(label);
}

TEST_CASE("minimap: disk content, transparent corners and nadir at the center")
{
    Frame src(64, 32, kBlue);
    for (int x = 0; x < 64; ++x)
        src.set(x, 31, kPink);
    const SessionState s = new_session(test_engine_config(Technique::SideBySideIn2D, {100, 50}));
    const Frame m = render_minimap(s, VideoId::A, src, nullptr, {41, 41}, plain());
    CHECK(m.at(0, 0) == kTransparent);
    CHECK(m.at(20, 20) == kPink);
    CHECK(m.at(20, 2) == kBlue);
    CHECK(minimap_radius({41, 41}) == 19.5);
}

TEST_CASE("minimap trajectory endpoints carry the exact gradient colors")
{
    ROIRun run;
    for (int i = 0; i <= 30; ++i)
        run.push_back({double(i), Direction{-90.0 + 6.0 * i, 30.0}, 8.0, 8.0});
    const ROITrack track(VideoId::A, {run}, 30.0);
    const EngineConfig cfg = test_engine_config(Technique::SideBySideIn2D, {100, 50});
    // Playhead mid-clip so the current-ROI marker leaves both endpoints visible.
    const SessionState s = apply_command(cfg, new_session(cfg), cmd::Seek{VideoId::A, 15.0});
    const Frame m = render_minimap(s, VideoId::A, Frame(64, 32, kBlue), &track, {201, 201}, RenderOptions{});
    PlanetMapConfig map;
    map.radius_px = minimap_radius({201, 201});
    const auto pts = trajectory_2d(track, map);
    auto pixel = [&](const TrajectoryPoint &p) {
        return m.at(static_cast<int>(std::floor(100.5 + p.map_pos.x)), static_cast<int>(std::floor(100.5 + p.map_pos.y)));
    };
    CHECK(pixel(pts.front()) == Rgba{255, 0, 0, 255});
    CHECK(pixel(pts.back()) == Rgba{0, 255, 0, 255});
}

TEST_CASE("rendering is deterministic")
{
    const Frame a = coded_frame(VideoId::A), b = coded_frame(VideoId::B);
    const EngineConfig cfg = test_engine_config(Technique::SlideInVR);
    const SessionState s = fuzzed_states(cfg, 5, 20).back();
    const TrackRefs tracks{&*cfg.tracks[0], &*cfg.tracks[1]};
    CHECK(render_equirect_composite(s, a, b, {90, 45}, RenderOptions{}, tracks) ==
          render_equirect_composite(s, a, b, {90, 45}, RenderOptions{}, tracks));
}
