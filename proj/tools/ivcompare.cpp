// Command-line front end: headless rendering, script replay, fixtures and the
// static web export.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ivcompare/compositor.hpp"
#include "ivcompare/errors.hpp"
#include "ivcompare/fuzz.hpp"
#include "ivcompare/io.hpp"
#include "ivcompare/session.hpp"

namespace fs = std::filesystem;
using namespace ivc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitReplay = 2;

constexpr std::size_t kSeedScriptLength = 200;

enum class Mode { canvas, vrview, equirect, minimap };

struct RenderArgs
{
    std::string config;
    std::string script;
    std::string out_dir = ".";
    std::vector<double> at;
    double every = 0.0;
    Mode mode = Mode::canvas;
    Sampling sampling = Sampling::nearest;
    std::string size;
    std::string video = "A";
    std::optional<std::uint64_t> seed;
    bool no_overlays = false;
};

struct ReplayArgs
{
    std::string config;
    std::string script;
    std::optional<double> at;
    bool trace = false;
};

struct FixtureArgs
{
    std::string out_dir;
    std::string out_file;
    std::string video = "A";
    int height = 256;
    std::string pattern = "checkerboard";
};

struct ExportArgs
{
    std::string config;
    std::string script;
    std::string out_dir;
};

CanvasSize parse_size(const std::string &text, CanvasSize fallback)
{
    if (text.empty())
        return fallback;
    int w = 0, h = 0;
    char x = 0, extra = 0;
    if (std::sscanf(text.c_str(), "%d%c%d%c", &w, &x, &h, &extra) != 3 || (x != 'x' && x != 'X') || w < 2 || h < 1)
        throw ValidationError("--size must look like WIDTHxHEIGHT, got '" + text + "'");
    return {w, h};
}

std::string_view mode_name(Mode m)
{
    switch (m) {
    case Mode::canvas: return "canvas";
    case Mode::vrview: return "vrview";
    case Mode::equirect: return "equirect";
    case Mode::minimap: return "minimap";
    }
    return "";
}

std::vector<double> sample_times(const RenderArgs &args, const SessionConfig &cfg)
{
    if (!args.at.empty())
        return args.at;
    if (!(args.every > 0.0) || !std::isfinite(args.every))
        throw ValidationError("--every must be a positive number of seconds");
    const double end = std::max(cfg.media[0].duration(), cfg.media[1].duration());
    std::vector<double> times;
    // Multiplying avoids drift from repeated addition.
    for (std::size_t i = 0;; ++i) {
        const double t = static_cast<double>(i) * args.every;
        if (t > end + 1e-9)
            break;
        times.push_back(t);
    }
    return times;
}

Script load_script(const std::string &path)
{
    return path.empty() ? Script{} : parse_script(read_text_file(path));
}

// Caches decoded frames so repeated sample times reuse them.
class FrameCache
{
public:
    explicit FrameCache(const SessionConfig &cfg) : cfg_(cfg) {}

    const Frame &get(VideoId v, double position)
    {
        const MediaManifest &m = cfg_.media[index(v)];
        const int i = frame_index_at(m, position);
        auto key = std::make_pair(index(v), i);
        auto it = cache_.find(key);
        if (it == cache_.end())
            it = cache_.emplace(key, read_png(m.frame_path(i))).first;
        return it->second;
    }

private:
    const SessionConfig &cfg_;
    std::map<std::pair<std::size_t, int>, Frame> cache_;
};

int run_render(const RenderArgs &args)
{
    const SessionConfig cfg = load_session_config(args.config);
    const EngineConfig engine = to_engine_config(cfg);
    const Script script = args.seed ? random_script(engine, *args.seed, kSeedScriptLength) : load_script(args.script);
    const std::vector<double> times = sample_times(args, cfg);
    const auto video = video_from_string(args.video);
    if (!video)
        throw ValidationError("--video must be A or B");

    const bool vr = is_vr(cfg.technique);
    if (args.mode == Mode::canvas && vr)
        throw ValidationError("--mode canvas needs a 2D technique; use vrview or equirect");
    if ((args.mode == Mode::vrview || args.mode == Mode::equirect) && !vr)
        throw ValidationError("--mode " + std::string(mode_name(args.mode)) + " needs a VR technique");

    CanvasSize size{};
    switch (args.mode) {
    case Mode::canvas:
        if (!args.size.empty())
            throw ValidationError("--size does not apply to canvas mode; the session config sets the canvas");
        break;
    case Mode::vrview: size = parse_size(args.size, {416, 384}); break;
    case Mode::equirect: size = parse_size(args.size, {720, 360}); break;
    case Mode::minimap: size = parse_size(args.size, {200, 200}); break;
    }

    std::vector<SessionState> states;
    try {
        states = sample_states(engine, script, times);
    } catch (const ScriptError &e) {
        std::cerr << "replay error: " << e.what() << '\n';
        return kExitReplay;
    }

    RenderOptions opts;
    opts.sampling = args.sampling;
    opts.draw_overlays = !args.no_overlays;
    opts.vr_hfov = cfg.vr_hfov;
    opts.vr_vfov = cfg.vr_vfov;
    const TrackRefs tracks{cfg.tracks[0] ? &*cfg.tracks[0] : nullptr, cfg.tracks[1] ? &*cfg.tracks[1] : nullptr};

    FrameCache frames(cfg);
    for (std::size_t i = 0; i < times.size(); ++i) {
        const SessionState &s = states[i];
        const Frame &a = frames.get(VideoId::A, s.clock(VideoId::A).position);
        const Frame &b = frames.get(VideoId::B, s.clock(VideoId::B).position);
        Frame out;
        switch (args.mode) {
        case Mode::canvas: out = render_canvas(s, a, b, opts, tracks); break;
        case Mode::vrview: out = render_vr_view(s, a, b, s.head_pose, size, opts); break;
        case Mode::equirect: out = render_equirect_composite(s, a, b, size, opts, tracks); break;
        case Mode::minimap:
            out = render_minimap(s, *video, *video == VideoId::A ? a : b, tracks[index(*video)], size, opts);
            break;
        }
        const long ms = std::lround(times[i] * 1000.0);
        const fs::path path = fs::path(args.out_dir) / (std::string(mode_name(args.mode)) + "_" + std::to_string(ms) + ".png");
        write_png(path, out);
        std::cout << path.string() << '\n';
    }
    return kExitOk;
}

int run_replay(const ReplayArgs &args)
{
    const SessionConfig cfg = load_session_config(args.config);
    const EngineConfig engine = to_engine_config(cfg);
    const Script script = load_script(args.script);
    try {
        if (args.trace) {
            const std::vector<TimedState> states = run_script(engine, script);
            nlohmann::json out = nlohmann::json::array();
            for (std::size_t i = 0; i < states.size(); ++i) {
                nlohmann::json entry{{"time", states[i].time}, {"state", state_to_json(states[i].state)}};
                if (i > 0) {
                    entry["line"] = script[i - 1].line;
                    entry["command"] = format_command(script[i - 1].command);
                }
                out.push_back(entry);
            }
            std::cout << out.dump(2) << '\n';
            return kExitOk;
        }
        SessionState final_state;
        if (args.at) {
            final_state = sample_states(engine, script, {*args.at}).front();
        } else {
            final_state = run_script(engine, script).back().state;
        }
        std::cout << state_to_json(final_state).dump(2) << '\n';
    } catch (const ScriptError &e) {
        std::cerr << "replay error: " << e.what() << '\n';
        return kExitReplay;
    }
    return kExitOk;
}

int run_fixture_demo(const FixtureArgs &args)
{
    write_demo_fixture(args.out_dir);
    std::cout << "demo fixture written to " << args.out_dir << '\n';
    return kExitOk;
}

int run_fixture_frame(const FixtureArgs &args)
{
    const auto video = video_from_string(args.video);
    if (!video)
        throw ValidationError("--video must be A or B");
    const Pattern pattern = args.pattern == "solid" ? Pattern::solid : Pattern::checkerboard;
    write_png(args.out_file, make_test_frame(*video, args.height, pattern));
    return kExitOk;
}

int run_export(const ExportArgs &args)
{
    const SessionConfig cfg = load_session_config(args.config);
    std::optional<std::string> script_text;
    if (!args.script.empty()) {
        script_text = read_text_file(args.script);
        // Reject scripts the exported session could not replay.
        try {
            run_script(to_engine_config(cfg), parse_script(*script_text));
        } catch (const ScriptError &e) {
            std::cerr << "replay error: " << e.what() << '\n';
            return kExitReplay;
        }
    }
    export_web(cfg, script_text, args.out_dir);
    std::cout << "web layout written to " << args.out_dir << '\n';
    return kExitOk;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Side-by-side comparison of immersive (360 degree) videos: rendering, replay and fixtures"};
    app.require_subcommand(1);

    RenderArgs render;
    auto *rc = app.add_subcommand("render", "Replay a script and render PNGs at chosen session times");
    rc->add_option("--config", render.config, "Session config file")->required()->check(CLI::ExistingFile);
    auto *script_opt = rc->add_option("--script", render.script, "Interaction script")->check(CLI::ExistingFile);
    rc->add_option("--out-dir", render.out_dir, "Output directory")->capture_default_str();
    auto *at_opt = rc->add_option("--at", render.at, "Comma-separated session times in seconds")->delimiter(',');
    auto *every_opt = rc->add_option("--every", render.every, "Render every N seconds from 0 to the clip end");
    at_opt->excludes(every_opt);
    const std::map<std::string, Mode> modes{
        {"canvas", Mode::canvas}, {"vrview", Mode::vrview}, {"equirect", Mode::equirect}, {"minimap", Mode::minimap}};
    rc->add_option("--mode", render.mode, "canvas | vrview | equirect | minimap")
        ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
    const std::map<std::string, Sampling> samplings{{"nearest", Sampling::nearest}, {"bilinear", Sampling::bilinear}};
    rc->add_option("--sampling", render.sampling, "nearest | bilinear")
        ->transform(CLI::CheckedTransformer(samplings, CLI::ignore_case));
    rc->add_option("--size", render.size, "Output size WIDTHxHEIGHT for vrview, equirect and minimap");
    rc->add_option("--video", render.video, "Video shown by minimap mode (A or B)")->capture_default_str();
    auto *seed_opt = rc->add_option("--seed", render.seed, "Replay a random script from this seed instead of --script");
    seed_opt->excludes(script_opt);
    rc->add_flag("--no-overlays", render.no_overlays, "Draw video content only");

    ReplayArgs replay;
    auto *rp = app.add_subcommand("replay", "Replay a script and print the session state as JSON");
    rp->add_option("--config", replay.config, "Session config file")->required()->check(CLI::ExistingFile);
    rp->add_option("--script", replay.script, "Interaction script")->required()->check(CLI::ExistingFile);
    auto *rp_at = rp->add_option("--at", replay.at, "Print the state at this session time instead of after the last command");
    rp->add_flag("--trace", replay.trace, "Print every state as a JSON array")->excludes(rp_at);

    FixtureArgs fixture;
    auto *fx = app.add_subcommand("fixture", "Generate synthetic test media");
    fx->require_subcommand(1);
    auto *fx_demo = fx->add_subcommand("demo", "Write the bundled demo: media, ROI tracks, configs and scripts");
    fx_demo->add_option("--out-dir", fixture.out_dir, "Output directory")->required();
    auto *fx_frame = fx->add_subcommand("frame", "Write a single labeled checkerboard or solid equirect frame");
    fx_frame->add_option("--out", fixture.out_file, "Output PNG")->required();
    fx_frame->add_option("--video", fixture.video, "A (pink) or B (blue)")->capture_default_str();
    fx_frame->add_option("--height", fixture.height, "Frame height; width is twice this")
        ->check(CLI::Range(1, 8192))
        ->capture_default_str();
    fx_frame->add_option("--pattern", fixture.pattern, "checkerboard | solid")
        ->check(CLI::IsMember({"checkerboard", "solid"}))
        ->capture_default_str();

    ExportArgs exp;
    auto *ex = app.add_subcommand("export-web", "Write the static file layout read by the browser viewer");
    ex->add_option("--config", exp.config, "Session config file")->required()->check(CLI::ExistingFile);
    ex->add_option("--script", exp.script, "Interaction script to include")->check(CLI::ExistingFile);
    ex->add_option("--out-dir", exp.out_dir, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << "error: " << e.what() << "\n\n";
        const CLI::App *failing = &app;
        for (CLI::App *sub : app.get_subcommands())
            failing = sub;
        std::cerr << failing->help();
        return kExitValidation;
    }

    try {
        if (rc->parsed()) {
            if (render.at.empty() && every_opt->count() == 0)
                throw ValidationError("render needs --at or --every");
            return run_render(render);
        }
        if (rp->parsed())
            return run_replay(replay);
        if (fx_demo->parsed())
            return run_fixture_demo(fixture);
        if (fx_frame->parsed())
            return run_fixture_frame(fixture);
        if (ex->parsed())
            return run_export(exp);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitValidation;
}
