#include "test_support.hpp"

#include "ivcompare/fuzz.hpp"

namespace ivc::testing {

namespace {

constexpr std::uint8_t kBlueA = 60;
constexpr std::uint8_t kBlueB = 200;

} // namespace

Rgba encode_texel(const TexelRef &t)
{
    return {static_cast<std::uint8_t>(t.x), static_cast<std::uint8_t>(t.y),
            t.video == VideoId::A ? kBlueA : kBlueB, 255};
}

std::optional<TexelRef> decode_texel(Rgba c)
{
    if (c.a != 255 || c.g >= kCodedHeight)
        return std::nullopt;
    if (c.b == kBlueA)
        return TexelRef{VideoId::A, c.r, c.g};
    if (c.b == kBlueB)
        return TexelRef{VideoId::B, c.r, c.g};
    return std::nullopt;
}

Frame coded_frame(VideoId v)
{
    Frame f(kCodedWidth, kCodedHeight);
    for (int y = 0; y < kCodedHeight; ++y)
        for (int x = 0; x < kCodedWidth; ++x)
            f.set(x, y, encode_texel({v, x, y}));
    return f;
}

ROITrack synthetic_track(VideoId v, double duration)
{
    const double yaw0 = v == VideoId::A ? -40.0 : 100.0;
    const double pitch0 = v == VideoId::A ? 10.0 : -15.0;
    ROIRun first, second;
    for (int i = 0; i <= 20; ++i)
        first.push_back({i * 0.5, Direction{yaw0 + i * 2.0, pitch0}, 12.0, 12.0});
    for (int i = 0; i <= 20; ++i)
        second.push_back({14.0 + i * 0.5, Direction{yaw0 + 60.0 - i, pitch0 + i * 0.5}, 12.0, 12.0});
    return ROITrack(v, {first, second}, duration);
}

EngineConfig test_engine_config(Technique t, CanvasSize canvas)
{
    EngineConfig cfg;
    cfg.technique = t;
    cfg.canvas = canvas;
    cfg.tracks = {synthetic_track(VideoId::A), synthetic_track(VideoId::B)};
    return cfg;
}

std::vector<SessionState> fuzzed_states(const EngineConfig &cfg, std::uint64_t seed, std::size_t count)
{
    const Script script = random_script(cfg, seed, count, 0.37);
    const std::vector<TimedState> timed = run_script(cfg, script);
    std::vector<SessionState> out;
    for (std::size_t i = 1; i < timed.size(); ++i)
        out.push_back(timed[i].state);
    return out;
}

} // namespace ivc::testing
