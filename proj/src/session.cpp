#include "ivcompare/session.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ivcompare/errors.hpp"
#include "text_util.hpp"

namespace ivc {

namespace {

template <class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr std::array<std::string_view, std::variant_size_v<Command>> kCommandNames = {
    "PLAY",         "PAUSE",      "SEEK",        "JUMP",    "TOGGLE",   "SWAP",          "EXTEND_VR",
    "SLIDE_VR",     "DIVIDER",    "DRAG",        "PEEK_ON", "PEEK_OFF", "ROIS_SXS",      "ROIS_OVERLAY",
    "RESET_VIEWS",  "SET_VIEWS_360", "RESTART_VIDEOS", "HEAD"};

[[noreturn]] void unsupported(const SessionState &s, const Command &c, std::string_view detail = {})
{
    throw UnsupportedCommand(s.technique, command_name(c), detail);
}

std::vector<VideoId> clock_targets(ClockTarget t)
{
    switch (t) {
    case ClockTarget::A: return {VideoId::A};
    case ClockTarget::B: return {VideoId::B};
    default: return {VideoId::A, VideoId::B};
    }
}

// Toggle techniques only let the viewer navigate the video on screen.
void require_navigable(const SessionState &s, const Command &c, const std::vector<VideoId> &videos)
{
    const auto current = current_video(s);
    if (!current)
        return;
    for (VideoId v : videos)
        if (v != *current)
            unsupported(s, c, "only the current video can be navigated");
}

double clamp_position(const SessionState &s, VideoId v, double t)
{
    return std::clamp(t, 0.0, s.durations[index(v)]);
}

Direction dragged(const Direction &center, double dyaw, double dpitch)
{
    const double p = center.pitch();
    const double lo = std::min(-kMaxViewPitchDeg, p);
    const double hi = std::max(kMaxViewPitchDeg, p);
    return {center.yaw() + dyaw, std::clamp(p + dpitch, lo, hi)};
}

Direction roi_center(const EngineConfig &cfg, const SessionState &s, VideoId v, const Command &c)
{
    const auto &track = cfg.tracks[index(v)];
    if (!track || track->empty())
        throw CommandError(std::string(command_name(c)) + ": no ROI track for video " + std::string(to_string(v)));
    return nearest_roi(*track, s.clock(v).position).center;
}

SolveRequest solve_request(const EngineConfig &cfg, const SessionState &s, const Command &c)
{
    SolveRequest req;
    req.technique = s.technique;
    req.layout = s.layout;
    req.roi_a = roi_center(cfg, s, VideoId::A, c);
    req.roi_b = roi_center(cfg, s, VideoId::B, c);
    req.viewer_forward = s.head_pose;
    req.params = cfg.solver;
    return req;
}

} // namespace

std::string_view command_name(const Command &c) { return kCommandNames[c.index()]; }

UnsupportedCommand::UnsupportedCommand(Technique technique, std::string_view command, std::string_view detail)
    : CommandError(std::string(command) + " is not supported by " + std::string(to_string(technique)) +
                   (detail.empty() ? "" : " (" + std::string(detail) + ")")),
      technique_(technique), command_(command)
{
}

std::optional<VideoId> current_video(const SessionState &state)
{
    if (state.technique == Technique::ToggleIn2D)
        return state.canvas().toggle_current;
    if (state.technique == Technique::ToggleInVR)
        return state.vr().front;
    return std::nullopt;
}

void validate_config(const EngineConfig &cfg)
{
    for (double d : cfg.durations)
        if (!(d > 0.0) || !std::isfinite(d))
            throw ConfigError("video durations must be positive and finite");
    if (!is_vr(cfg.technique) && (cfg.canvas.width < 2 || cfg.canvas.height < 1))
        throw ConfigError("canvas must be at least 2x1 pixels");
    if (!(cfg.vr_hfov > 0.0 && cfg.vr_hfov < 180.0) || !(cfg.vr_vfov > 0.0 && cfg.vr_vfov < 180.0))
        throw ConfigError("VR frustum angles must lie in (0, 180) degrees");
    if (cfg.initial_divider && !(*cfg.initial_divider >= 0.0 && *cfg.initial_divider <= 1.0))
        throw ConfigError("initial divider must lie in [0, 1]");
    if (!(cfg.solver.sxs_separation_deg > 0.0 && cfg.solver.sxs_separation_deg < 180.0))
        throw ConfigError("side-by-side separation must lie in (0, 180) degrees");
    if (!(cfg.solver.overlay_span_deg > 0.0 && cfg.solver.overlay_span_deg <= 360.0))
        throw ConfigError("overlay span must lie in (0, 360] degrees");
    for (VideoId v : {VideoId::A, VideoId::B}) {
        const auto &track = cfg.tracks[index(v)];
        if (track && track->video() != v)
            throw ConfigError("ROI track assigned to the wrong video");
    }
}

SessionState new_session(const EngineConfig &cfg)
{
    validate_config(cfg);
    SessionState s;
    s.technique = cfg.technique;
    s.durations = cfg.durations;
    s.head_pose = cfg.head_pose;
    s.loop = cfg.loop;
    const VideoId front = cfg.initial_front.value_or(VideoId::A);

    switch (cfg.technique) {
    case Technique::SlideInVR: {
        VRLayout layout = reset_views_vr();
        layout.front = front;
        s.layout = layout;
        break;
    }
    case Technique::ToggleInVR:
        s.layout = set_views_360(front);
        break;
    default: {
        CanvasLayout layout = make_canvas_layout(cfg.technique, cfg.canvas);
        if (cfg.technique == Technique::SlideIn2D) {
            layout.divider_x = cfg.initial_divider.value_or(0.5);
            layout.front = front;
        } else if (cfg.technique == Technique::ToggleIn2D) {
            layout.front = layout.toggle_current = front;
        }
        s.layout = refresh_fov(layout);
        break;
    }
    }
    return s;
}

SessionState apply_command(const EngineConfig &cfg, const SessionState &state, const Command &c)
{
    SessionState s = state;
    const Technique tech = s.technique;

    std::visit(
        overloaded{
            [&](const cmd::Play &p) {
                const auto videos = clock_targets(p.target);
                require_navigable(s, c, videos);
                for (VideoId v : videos)
                    s.clocks[index(v)].playing = s.clock(v).position < s.durations[index(v)] || s.loop;
            },
            [&](const cmd::Pause &p) {
                const auto videos = clock_targets(p.target);
                require_navigable(s, c, videos);
                for (VideoId v : videos)
                    s.clocks[index(v)].playing = false;
            },
            [&](const cmd::Seek &p) {
                require_navigable(s, c, {p.video});
                if (!std::isfinite(p.t))
                    throw CommandError("SEEK time must be finite");
                s.clocks[index(p.video)].position = clamp_position(s, p.video, p.t);
            },
            [&](const cmd::Jump &p) {
                require_navigable(s, c, {p.video});
                if (!std::isfinite(p.delta))
                    throw CommandError("JUMP offset must be finite");
                s.clocks[index(p.video)].position = clamp_position(s, p.video, s.clock(p.video).position + p.delta);
            },
            [&](const cmd::Toggle &) {
                if (tech == Technique::ToggleInVR) {
                    s.layout = swap(s.vr());
                } else if (tech == Technique::ToggleIn2D) {
                    CanvasLayout layout = s.canvas();
                    layout.toggle_current = other(layout.toggle_current);
                    layout.front = layout.toggle_current;
                    s.layout = layout;
                } else {
                    unsupported(s, c);
                }
            },
            [&](const cmd::Swap &) {
                if (tech == Technique::SlideInVR)
                    s.layout = swap(s.vr());
                else if (tech == Technique::SlideIn2D)
                    s.layout = swap(s.canvas());
                else
                    unsupported(s, c);
            },
            [&](const cmd::ExtendVR &p) {
                if (tech != Technique::SlideInVR)
                    unsupported(s, c);
                if (!std::isfinite(p.az))
                    throw CommandError("EXTEND_VR azimuth must be finite");
                s.layout = extend_vr(s.vr(), p.video, p.edge, p.az);
            },
            [&](const cmd::SlideVR &p) {
                if (tech != Technique::SlideInVR)
                    unsupported(s, c);
                if (!std::isfinite(p.delta))
                    throw CommandError("SLIDE_VR offset must be finite");
                s.layout = slide_vr(s.vr(), p.video, p.delta, p.commit);
            },
            [&](const cmd::ExtendDivider &p) {
                if (tech != Technique::SlideIn2D)
                    unsupported(s, c);
                if (!std::isfinite(p.x))
                    throw CommandError("DIVIDER position must be finite");
                s.layout = extend_2d(s.canvas(), p.x);
            },
            [&](const cmd::Drag &p) {
                if (is_vr(tech))
                    unsupported(s, c, "VR views follow the head pose");
                if (!std::isfinite(p.dyaw) || !std::isfinite(p.dpitch))
                    throw CommandError("DRAG offsets must be finite");
                CanvasLayout layout = s.canvas();
                if (tech == Technique::ToggleIn2D) {
                    if (p.target != ViewTarget::Shared &&
                        (p.target == ViewTarget::A ? VideoId::A : VideoId::B) != layout.toggle_current)
                        unsupported(s, c, "only the current video can be navigated");
                    const Direction center = dragged(layout.viewport(VideoId::A).center, p.dyaw, p.dpitch);
                    layout.viewport(VideoId::A).center = center;
                    layout.viewport(VideoId::B).center = center;
                } else {
                    if (p.target == ViewTarget::Shared)
                        unsupported(s, c, "views are dragged per video");
                    Viewport &vp = layout.viewport(p.target == ViewTarget::A ? VideoId::A : VideoId::B);
                    vp.center = dragged(vp.center, p.dyaw, p.dpitch);
                }
                s.layout = layout;
            },
            [&](const cmd::PeekOn &p) {
                if (tech == Technique::SideBySideIn2D)
                    unsupported(s, c, "views never overlap");
                if (is_vr(tech)) {
                    if (p.cursor)
                        unsupported(s, c, "VR peeks take a gaze direction");
                    s.peek = PeekState::vr(p.gaze.value_or(s.head_pose));
                } else {
                    if (!p.cursor)
                        unsupported(s, c, "canvas peeks take a pixel position");
                    s.peek = PeekState::canvas(*p.cursor);
                }
            },
            [&](const cmd::PeekOff &) {
                if (tech == Technique::SideBySideIn2D)
                    unsupported(s, c, "views never overlap");
                s.peek = PeekState{};
            },
            [&](const cmd::RoisSxS &) {
                if (tech == Technique::SlideInVR)
                    s.layout = solve_rois_sxs_vr(solve_request(cfg, s, c));
                else if (tech == Technique::SlideIn2D || tech == Technique::SideBySideIn2D)
                    s.layout = solve_rois_sxs_2d(solve_request(cfg, s, c));
                else
                    unsupported(s, c);
            },
            [&](const cmd::RoisOverlay &) {
                if (tech == Technique::SlideInVR)
                    s.layout = solve_rois_overlay_vr(solve_request(cfg, s, c));
                else if (tech == Technique::SlideIn2D)
                    s.layout = solve_rois_overlay_2d(solve_request(cfg, s, c));
                else
                    unsupported(s, c);
            },
            [&](const cmd::ResetViews &) {
                if (tech == Technique::SlideInVR) {
                    s.layout = reset_views_vr();
                } else if (tech == Technique::ToggleInVR) {
                    unsupported(s, c);
                } else {
                    CanvasLayout layout = s.canvas();
                    for (auto &vp : layout.viewports)
                        vp.center = Direction{0.0, 0.0};
                    s.layout = refresh_fov(layout);
                }
            },
            [&](const cmd::SetViews360 &) {
                if (tech != Technique::SlideInVR)
                    unsupported(s, c);
                s.layout = set_views_360(s.vr().front);
            },
            [&](const cmd::RestartVideos &) {
                for (Clock &clock : s.clocks)
                    clock = Clock{0.0, true};
            },
            [&](const cmd::SetHeadPose &p) {
                if (!is_vr(tech))
                    unsupported(s, c, "2D techniques have no head pose");
                s.head_pose = p.pose;
                if (s.peek.active)
                    s.peek.gaze = p.pose;
            },
        },
        c);
    return s;
}

SessionState tick(const SessionState &state, double dt)
{
    if (!(dt >= 0.0) || !std::isfinite(dt))
        throw DomainError("tick duration must be finite and non-negative");
    if (dt == 0.0)
        return state;
    SessionState s = state;
    s.time_now += dt;
    for (std::size_t i = 0; i < s.clocks.size(); ++i) {
        Clock &clock = s.clocks[i];
        if (!clock.playing)
            continue;
        const double duration = s.durations[i];
        clock.position += dt;
        if (clock.position >= duration) {
            if (s.loop) {
                clock.position = std::fmod(clock.position, duration);
            } else {
                clock.position = duration;
                clock.playing = false;
            }
        }
    }
    return s;
}

std::optional<std::string> check_invariants(const SessionState &s)
{
    for (std::size_t i = 0; i < 2; ++i) {
        const double p = s.clocks[i].position;
        if (!std::isfinite(p) || p < 0.0 || p > s.durations[i])
            return "clock position outside [0, duration]";
    }
    if (is_vr(s.technique) != std::holds_alternative<VRLayout>(s.layout))
        return "layout kind does not match technique";

    if (is_vr(s.technique)) {
        const VRLayout &layout = s.vr();
        for (const LuneArea &a : layout.areas) {
            for (double az : {a.start_edge_az, a.end_edge_az, a.yaw_offset})
                if (!(az >= 0.0 && az < 360.0))
                    return "lune angle outside [0, 360)";
            const double f = lune_fraction(a);
            if (!(f > 0.0 && f <= 1.0))
                return "lune fraction outside (0, 1]";
        }
        if (s.technique == Technique::ToggleInVR) {
            if (lune_fraction(layout.areas[0]) != 1.0 || lune_fraction(layout.areas[1]) != 1.0)
                return "ToggleInVR must show full spheres";
            if (layout.pending_slide)
                return "ToggleInVR has no slide";
        }
        if (s.peek.active && s.peek.extent != kVrPeekDiameterDeg)
            return "VR peek extent must be 15 degrees";
        return std::nullopt;
    }

    const CanvasLayout &layout = s.canvas();
    if (layout.technique != s.technique)
        return "canvas layout technique mismatch";
    if (!(layout.divider_x >= 0.0 && layout.divider_x <= 1.0))
        return "divider outside [0, 1]";
    if (!(refresh_fov(layout) == layout))
        return "viewport hFoV inconsistent with its canvas span";
    for (const Viewport &vp : layout.viewports)
        if (vp.vfov != kCanvasVfovDeg)
            return "canvas vFoV must stay fixed";
    if (s.technique == Technique::ToggleIn2D) {
        if (!(layout.viewports[0] == layout.viewports[1]))
            return "ToggleIn2D videos must share one viewport";
        if (layout.front != layout.toggle_current)
            return "ToggleIn2D front must be the current video";
    }
    if (s.technique == Technique::SideBySideIn2D && s.peek.active)
        return "SideBySideIn2D has no peek";
    if (s.peek.active && s.peek.extent != kCanvasPeekSizePx)
        return "canvas peek extent must be 300 px";
    return std::nullopt;
}

SessionState advance_to(const SessionState &s, double t)
{
    if (t <= s.time_now)
        return s;
    SessionState out = tick(s, t - s.time_now);
    out.time_now = t;
    return out;
}

// ---- scripts ----

namespace {

std::string fmt(double v) { return detail::format_double(v); }

std::string_view clock_target_name(ClockTarget t)
{
    switch (t) {
    case ClockTarget::A: return "A";
    case ClockTarget::B: return "B";
    default: return "BOTH";
    }
}

std::string_view view_target_name(ViewTarget t)
{
    switch (t) {
    case ViewTarget::A: return "A";
    case ViewTarget::B: return "B";
    default: return "SHARED";
    }
}

struct ArgReader
{
    int line;
    std::string_view name;
    std::vector<std::string_view> args;
    std::size_t next = 0;

    [[noreturn]] void fail(const std::string &what) const
    {
        throw ParseError(line, std::string(name) + ": " + what);
    }

    std::string_view word()
    {
        if (next >= args.size())
            fail("missing argument");
        return args[next++];
    }

    double number()
    {
        const std::string_view w = word();
        const auto v = detail::parse_double(w);
        if (!v)
            fail("invalid number '" + std::string(w) + "'");
        return *v;
    }

    int integer()
    {
        const std::string_view w = word();
        const auto v = detail::parse_int(w);
        if (!v || *v < INT32_MIN || *v > INT32_MAX)
            fail("invalid integer '" + std::string(w) + "'");
        return static_cast<int>(*v);
    }

    VideoId video()
    {
        const std::string_view w = word();
        const auto v = video_from_string(w);
        if (!v)
            fail("expected A or B, got '" + std::string(w) + "'");
        return *v;
    }

    ClockTarget clock_target()
    {
        const std::string_view w = word();
        if (w == "A") return ClockTarget::A;
        if (w == "B") return ClockTarget::B;
        if (w == "BOTH") return ClockTarget::Both;
        fail("expected A, B or BOTH, got '" + std::string(w) + "'");
    }

    void done() const
    {
        if (next != args.size())
            fail("unexpected argument '" + std::string(args[next]) + "'");
    }
};

Command parse_command(ArgReader &r)
{
    const std::string_view n = r.name;
    if (n == "PLAY") return cmd::Play{r.clock_target()};
    if (n == "PAUSE") return cmd::Pause{r.clock_target()};
    if (n == "SEEK") {
        const VideoId v = r.video();
        return cmd::Seek{v, r.number()};
    }
    if (n == "JUMP") {
        const VideoId v = r.video();
        return cmd::Jump{v, r.number()};
    }
    if (n == "TOGGLE") return cmd::Toggle{};
    if (n == "SWAP") return cmd::Swap{};
    if (n == "EXTEND_VR") {
        const VideoId v = r.video();
        const std::string_view e = r.word();
        if (e != "START" && e != "END")
            r.fail("expected START or END");
        return cmd::ExtendVR{v, e == "START" ? LuneEdge::start : LuneEdge::end, r.number()};
    }
    if (n == "SLIDE_VR") {
        const VideoId v = r.video();
        const double delta = r.number();
        const std::string_view mode = r.word();
        if (mode != "PREVIEW" && mode != "COMMIT")
            r.fail("expected PREVIEW or COMMIT");
        return cmd::SlideVR{v, delta, mode == "COMMIT"};
    }
    if (n == "DIVIDER") return cmd::ExtendDivider{r.number()};
    if (n == "DRAG") {
        const std::string_view t = r.word();
        ViewTarget target;
        if (t == "A") target = ViewTarget::A;
        else if (t == "B") target = ViewTarget::B;
        else if (t == "SHARED") target = ViewTarget::Shared;
        else r.fail("expected A, B or SHARED");
        const double dyaw = r.number();
        return cmd::Drag{target, dyaw, r.number()};
    }
    if (n == "PEEK_ON") {
        cmd::PeekOn p;
        if (r.next < r.args.size()) {
            const std::string_view kind = r.word();
            if (kind == "DIR") {
                const double yaw = r.number();
                p.gaze = Direction{yaw, r.number()};
            } else if (kind == "PX") {
                const int x = r.integer();
                p.cursor = PixelPos{x, r.integer()};
            } else {
                r.fail("expected DIR or PX");
            }
        }
        return p;
    }
    if (n == "PEEK_OFF") return cmd::PeekOff{};
    if (n == "ROIS_SXS") return cmd::RoisSxS{};
    if (n == "ROIS_OVERLAY") return cmd::RoisOverlay{};
    if (n == "RESET_VIEWS") return cmd::ResetViews{};
    if (n == "SET_VIEWS_360") return cmd::SetViews360{};
    if (n == "RESTART_VIDEOS") return cmd::RestartVideos{};
    if (n == "HEAD") {
        const double yaw = r.number();
        return cmd::SetHeadPose{Direction{yaw, r.number()}};
    }
    r.fail("unknown command");
}

} // namespace

Script parse_script(std::string_view text)
{
    Script script;
    int line_no = 0;
    for (std::string_view raw : detail::split_lines(text)) {
        ++line_no;
        const std::vector<std::string_view> tokens = detail::split_ws(raw.substr(0, raw.find('#')));
        if (tokens.empty())
            continue;
        if (tokens[0] != "AT")
            throw ParseError(line_no, "expected 'AT <seconds> <COMMAND>'");
        if (tokens.size() < 3)
            throw ParseError(line_no, "missing time or command");
        const auto time = detail::parse_double(tokens[1]);
        if (!time || *time < 0.0)
            throw ParseError(line_no, "invalid time '" + std::string(tokens[1]) + "'");
        if (!script.empty() && *time < script.back().time)
            throw ParseError(line_no, "command times must not decrease");
        ArgReader reader{line_no, tokens[2], {tokens.begin() + 3, tokens.end()}};
        Command c = parse_command(reader);
        reader.done();
        script.push_back({line_no, *time, std::move(c)});
    }
    return script;
}

std::string format_command(const Command &c)
{
    std::ostringstream out;
    out << command_name(c);
    std::visit(overloaded{
                   [&](const cmd::Play &p) { out << ' ' << clock_target_name(p.target); },
                   [&](const cmd::Pause &p) { out << ' ' << clock_target_name(p.target); },
                   [&](const cmd::Seek &p) { out << ' ' << to_string(p.video) << ' ' << fmt(p.t); },
                   [&](const cmd::Jump &p) {
                       out << ' ' << to_string(p.video) << ' ' << (p.delta >= 0.0 ? "+" : "") << fmt(p.delta);
                   },
                   [&](const cmd::ExtendVR &p) {
                       out << ' ' << to_string(p.video) << ' ' << (p.edge == LuneEdge::start ? "START" : "END") << ' '
                           << fmt(p.az);
                   },
                   [&](const cmd::SlideVR &p) {
                       out << ' ' << to_string(p.video) << ' ' << fmt(p.delta) << ' '
                           << (p.commit ? "COMMIT" : "PREVIEW");
                   },
                   [&](const cmd::ExtendDivider &p) { out << ' ' << fmt(p.x); },
                   [&](const cmd::Drag &p) {
                       out << ' ' << view_target_name(p.target) << ' ' << fmt(p.dyaw) << ' ' << fmt(p.dpitch);
                   },
                   [&](const cmd::PeekOn &p) {
                       if (p.gaze)
                           out << " DIR " << fmt(p.gaze->yaw()) << ' ' << fmt(p.gaze->pitch());
                       else if (p.cursor)
                           out << " PX " << p.cursor->x << ' ' << p.cursor->y;
                   },
                   [&](const cmd::SetHeadPose &p) { out << ' ' << fmt(p.pose.yaw()) << ' ' << fmt(p.pose.pitch()); },
                   [](const auto &) {},
               },
               c);
    return out.str();
}

std::string format_script(const Script &script)
{
    std::string out;
    for (const ScriptLine &l : script)
        out += "AT " + fmt(l.time) + ' ' + format_command(l.command) + '\n';
    return out;
}

std::vector<TimedState> run_script(const EngineConfig &cfg, const Script &script)
{
    std::vector<TimedState> states;
    SessionState s = new_session(cfg);
    states.push_back({0.0, s});
    for (const ScriptLine &l : script) {
        try {
            s = advance_to(s, l.time);
            s = apply_command(cfg, s, l.command);
        } catch (const std::exception &e) {
            throw ScriptError(l.line, e.what(), std::current_exception());
        }
        states.push_back({l.time, s});
    }
    return states;
}

std::vector<SessionState> sample_states(const EngineConfig &cfg, const Script &script, const std::vector<double> &times)
{
    std::vector<std::size_t> order(times.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return times[a] < times[b]; });

    std::vector<SessionState> out(times.size());
    SessionState s = new_session(cfg);
    std::size_t next = 0;
    for (std::size_t idx : order) {
        const double t = times[idx];
        if (!(t >= 0.0) || !std::isfinite(t))
            throw DomainError("sample times must be finite and non-negative");
        for (; next < script.size() && script[next].time <= t; ++next) {
            const ScriptLine &l = script[next];
            try {
                s = advance_to(s, l.time);
                s = apply_command(cfg, s, l.command);
            } catch (const std::exception &e) {
                throw ScriptError(l.line, e.what(), std::current_exception());
            }
        }
        out[idx] = advance_to(s, t);
    }
    return out;
}

} // namespace ivc
