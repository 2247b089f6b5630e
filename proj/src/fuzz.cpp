#include "ivcompare/fuzz.hpp"

namespace ivc {

double CommandFuzzer::uniform(double lo, double hi)
{
    const double unit = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * unit;
}

int CommandFuzzer::integer(int lo, int hi)
{
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(rng_() % span);
}

Command CommandFuzzer::next(CanvasSize canvas)
{
    const VideoId v = chance(0.5) ? VideoId::A : VideoId::B;
    const auto target = static_cast<ClockTarget>(integer(0, 2));
    switch (integer(0, 17)) {
    case 0: return cmd::Play{target};
    case 1: return cmd::Pause{target};
    case 2: return cmd::Seek{v, uniform(-5.0, 35.0)};
    case 3: return cmd::Jump{v, chance(0.5) ? kJumpSeconds : -kJumpSeconds};
    case 4: return cmd::Toggle{};
    case 5: return cmd::Swap{};
    case 6: return cmd::ExtendVR{v, chance(0.5) ? LuneEdge::start : LuneEdge::end, uniform(0.0, 360.0)};
    case 7: return cmd::SlideVR{v, uniform(-180.0, 180.0), chance(0.5)};
    case 8: return cmd::ExtendDivider{uniform(-0.2, 1.2)};
    case 9: return cmd::Drag{static_cast<ViewTarget>(integer(0, 2)), uniform(-90.0, 90.0), uniform(-60.0, 60.0)};
    case 10: {
        cmd::PeekOn p;
        if (chance(0.5))
            p.gaze = Direction{uniform(-180.0, 180.0), uniform(-90.0, 90.0)};
        else
            p.cursor = PixelPos{integer(0, canvas.width - 1), integer(0, canvas.height - 1)};
        return p;
    }
    case 11: return cmd::PeekOff{};
    case 12: return cmd::RoisSxS{};
    case 13: return cmd::RoisOverlay{};
    case 14: return cmd::ResetViews{};
    case 15: return cmd::SetViews360{};
    case 16: return cmd::RestartVideos{};
    default: return cmd::SetHeadPose{Direction{uniform(-180.0, 180.0), uniform(-80.0, 80.0)}};
    }
}

Script random_script(const EngineConfig &cfg, std::uint64_t seed, std::size_t count, double step)
{
    CommandFuzzer fuzz(seed);
    Script script;
    SessionState s = new_session(cfg);
    double t = 0.0;
    // Rejected draws are skipped; the attempt cap guards configs that accept
    // almost nothing.
    for (std::size_t attempts = 0; script.size() < count && attempts < count * 100; ++attempts) {
        const Command c = fuzz.next(cfg.canvas);
        const double when = t + step;
        try {
            const SessionState next = apply_command(cfg, advance_to(s, when), c);
            s = next;
            t = when;
            script.push_back({static_cast<int>(script.size()) + 1, when, c});
        } catch (const CommandError &) {
        }
    }
    return script;
}

} // namespace ivc
