#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ivcompare/compositor.hpp"
#include "ivcompare/session.hpp"

namespace ivc::testing {

/// Source frames where every texel's color names its video and position.
/// 250 is coprime with the power-of-two output sizes used in tests, so pixel
/// centers never land exactly on a texel edge.
inline constexpr int kCodedWidth = 250;
inline constexpr int kCodedHeight = 125;

struct TexelRef
{
    VideoId video = VideoId::A;
    int x = 0;
    int y = 0;

    bool operator==(const TexelRef &) const = default;
};

Rgba encode_texel(const TexelRef &t);
/// Empty for colors no coded texel produces, e.g. the complement fill.
std::optional<TexelRef> decode_texel(Rgba c);
Frame coded_frame(VideoId v);

/// Simple two-run ROI track for video `v` over `duration` seconds.
ROITrack synthetic_track(VideoId v, double duration = 30.0);

/// 30 s clips with ROI tracks on both videos.
EngineConfig test_engine_config(Technique t, CanvasSize canvas = kDefaultCanvas);

/// States reached by replaying a seeded random script, initial state excluded.
std::vector<SessionState> fuzzed_states(const EngineConfig &cfg, std::uint64_t seed, std::size_t count);

} // namespace ivc::testing
