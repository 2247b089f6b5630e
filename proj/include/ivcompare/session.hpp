#pragma once

#include <array>
#include <exception>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ivcompare/display.hpp"
#include "ivcompare/roi.hpp"
#include "ivcompare/solver.hpp"

namespace ivc {

/// Reference 2D canvas: full width gives ~98 deg hFoV at 40 deg vFoV, each
/// half ~59.8 deg.
inline constexpr CanvasSize kDefaultCanvas{1896, 600};
inline constexpr double kVrHfovDeg = 104.0;
inline constexpr double kVrVfovDeg = 96.0;
inline constexpr double kJumpSeconds = 5.0;
/// Dragged views stop short of the poles so their yaw stays meaningful.
inline constexpr double kMaxViewPitchDeg = 89.0;

struct EngineConfig
{
    Technique technique = Technique::SlideIn2D;
    std::array<double, 2> durations{30.0, 30.0};
    CanvasSize canvas = kDefaultCanvas;
    double vr_hfov = kVrHfovDeg;
    double vr_vfov = kVrVfovDeg;
    Direction head_pose;
    bool loop = false;
    SolverParams solver;
    std::array<std::optional<ROITrack>, 2> tracks;
    std::optional<double> initial_divider;
    std::optional<VideoId> initial_front;

    bool operator==(const EngineConfig &) const = default;
};

struct Clock
{
    double position = 0.0;
    bool playing = false;

    bool operator==(const Clock &) const = default;
};

struct SessionState
{
    Technique technique = Technique::SlideIn2D;
    AnyLayout layout;
    std::array<Clock, 2> clocks{};
    std::array<double, 2> durations{};
    PeekState peek;
    Direction head_pose;
    double time_now = 0.0;
    bool loop = false;

    const VRLayout &vr() const { return std::get<VRLayout>(layout); }
    const CanvasLayout &canvas() const { return std::get<CanvasLayout>(layout); }
    const Clock &clock(VideoId v) const { return clocks[index(v)]; }

    bool operator==(const SessionState &) const = default;
};

/// The one video toggle techniques show and allow navigating; empty for the
/// techniques that show both.
std::optional<VideoId> current_video(const SessionState &state);

// ---- commands ----

enum class ClockTarget { A, B, Both };
enum class ViewTarget { A, B, Shared };

namespace cmd {

struct Play { ClockTarget target = ClockTarget::Both; bool operator==(const Play &) const = default; };
struct Pause { ClockTarget target = ClockTarget::Both; bool operator==(const Pause &) const = default; };
struct Seek { VideoId video = VideoId::A; double t = 0.0; bool operator==(const Seek &) const = default; };
struct Jump { VideoId video = VideoId::A; double delta = kJumpSeconds; bool operator==(const Jump &) const = default; };
struct Toggle { bool operator==(const Toggle &) const = default; };
struct Swap { bool operator==(const Swap &) const = default; };
struct ExtendVR
{
    VideoId video = VideoId::A;
    LuneEdge edge = LuneEdge::start;
    double az = 0.0;
    bool operator==(const ExtendVR &) const = default;
};
struct SlideVR
{
    VideoId video = VideoId::A;
    double delta = 0.0;
    bool commit = true;
    bool operator==(const SlideVR &) const = default;
};
struct ExtendDivider { double x = 0.5; bool operator==(const ExtendDivider &) const = default; };
struct Drag
{
    ViewTarget target = ViewTarget::A;
    double dyaw = 0.0;
    double dpitch = 0.0;
    bool operator==(const Drag &) const = default;
};
/// VR peeks anchor at `gaze` (head pose when absent); canvas peeks need `cursor`.
struct PeekOn
{
    std::optional<Direction> gaze;
    std::optional<PixelPos> cursor;
    bool operator==(const PeekOn &) const = default;
};
struct PeekOff { bool operator==(const PeekOff &) const = default; };
struct RoisSxS { bool operator==(const RoisSxS &) const = default; };
struct RoisOverlay { bool operator==(const RoisOverlay &) const = default; };
struct ResetViews { bool operator==(const ResetViews &) const = default; };
struct SetViews360 { bool operator==(const SetViews360 &) const = default; };
struct RestartVideos { bool operator==(const RestartVideos &) const = default; };
struct SetHeadPose { Direction pose; bool operator==(const SetHeadPose &) const = default; };

} // namespace cmd

using Command = std::variant<cmd::Play, cmd::Pause, cmd::Seek, cmd::Jump, cmd::Toggle, cmd::Swap, cmd::ExtendVR,
                             cmd::SlideVR, cmd::ExtendDivider, cmd::Drag, cmd::PeekOn, cmd::PeekOff, cmd::RoisSxS,
                             cmd::RoisOverlay, cmd::ResetViews, cmd::SetViews360, cmd::RestartVideos,
                             cmd::SetHeadPose>;

std::string_view command_name(const Command &c);

/// A command the state cannot accept.
class CommandError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// The command is not offered by the session's technique.
class UnsupportedCommand : public CommandError
{
public:
    UnsupportedCommand(Technique technique, std::string_view command, std::string_view detail = {});

    Technique technique() const { return technique_; }
    const std::string &command() const { return command_; }

private:
    Technique technique_;
    std::string command_;
};

// ---- transitions ----

/// Throws ConfigError for invalid configurations.
void validate_config(const EngineConfig &cfg);
SessionState new_session(const EngineConfig &cfg);
SessionState apply_command(const EngineConfig &cfg, const SessionState &state, const Command &c);
/// Advances playing clocks; throws DomainError for negative or non-finite dt.
SessionState tick(const SessionState &state, double dt);
/// Ticks to absolute session time `t` without accumulating rounding drift; a
/// no-op when `t` is not ahead of `time_now`.
SessionState advance_to(const SessionState &state, double t);

/// Describes the first broken invariant, or returns empty.
std::optional<std::string> check_invariants(const SessionState &state);

// ---- scripts ----

struct ScriptLine
{
    int line = 0;
    double time = 0.0;
    Command command;

    bool operator==(const ScriptLine &) const = default;
};

using Script = std::vector<ScriptLine>;

/// Interaction-script grammar, one command per line:
///
///     AT <seconds> <COMMAND> [args...]
///
/// '#' starts a comment. Times must not decrease. See format_command for the
/// argument syntax of each command.
Script parse_script(std::string_view text);
std::string format_command(const Command &c);
std::string format_script(const Script &script);

/// A command that failed during replay, tagged with its script line. The
/// original exception stays available through cause().
class ScriptError : public std::runtime_error
{
public:
    ScriptError(int line, const std::string &what, std::exception_ptr cause = {})
        : std::runtime_error("script line " + std::to_string(line) + ": " + what), line_(line),
          cause_(std::move(cause))
    {
    }

    int line() const { return line_; }
    const std::exception_ptr &cause() const { return cause_; }

private:
    int line_;
    std::exception_ptr cause_;
};

struct TimedState
{
    double time = 0.0;
    SessionState state;

    bool operator==(const TimedState &) const = default;
};

/// Initial state at t = 0 followed by the state after each command.
std::vector<TimedState> run_script(const EngineConfig &cfg, const Script &script);

/// States at the requested times (any order). Commands stamped at a sample
/// time are applied before that sample is taken.
std::vector<SessionState> sample_states(const EngineConfig &cfg, const Script &script, const std::vector<double> &times);

} // namespace ivc
