#include <doctest.h>

#include <filesystem>
#include <random>

#include "ivcompare/errors.hpp"
#include "ivcompare/fuzz.hpp"
#include "ivcompare/io.hpp"
#include "test_support.hpp"

using namespace ivc;
namespace fs = std::filesystem;
using doctest::Approx;

namespace {

// Fresh scratch directory per test case.
fs::path scratch(const std::string &name)
{
    const fs::path dir = fs::temp_directory_path() / ("ivcompare_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_sequence(const fs::path &dir, VideoId v, int count, int w, int h, double fps)
{
    MediaManifest m;
    m.video = v;
    m.fps = fps;
    m.frame_count = count;
    m.directory = dir / "frames";
    const Frame f(w, h, v == VideoId::A ? kPink : kBlue);
    for (int i = 0; i < count; ++i)
        write_png(m.frame_path(i), f);
    write_text_file(dir / "manifest.json", manifest_to_json(m, "frames").dump(2));
}

std::string minimal_config(std::string_view technique)
{
    return std::string(R"({"technique": ")") + std::string(technique) +
           R"(", "media": {"A": "a/manifest.json", "B": "b/manifest.json"}})";
}

} // namespace

TEST_CASE("PNG round trip")
{
    const fs::path dir = scratch("png");
    const Frame f = ivc::testing::coded_frame(VideoId::B);
    write_png(dir / "x.png", f);
    CHECK(read_png(dir / "x.png") == f);
    CHECK(read_png_size(dir / "x.png").width == ivc::testing::kCodedWidth);
    CHECK_THROWS_AS(read_png(dir / "missing.png"), ValidationError);
    write_text_file(dir / "bad.png", "not a png");
    CHECK_THROWS_AS(read_png(dir / "bad.png"), ValidationError);
}

TEST_CASE("PNG output is byte-stable")
{
    const fs::path dir = scratch("png_stable");
    const Frame f = make_test_frame(VideoId::A, 32, Pattern::checkerboard);
    write_png(dir / "a.png", f);
    write_png(dir / "b.png", f);
    CHECK(read_text_file(dir / "a.png") == read_text_file(dir / "b.png"));
}

TEST_CASE("manifest: 900 frames at 30 fps last 30 s")
{
    const fs::path dir = scratch("manifest900");
    write_sequence(dir, VideoId::A, 900, 4, 2, 30.0);
    const MediaManifest m = load_manifest(dir / "manifest.json");
    CHECK(m.duration() == 30.0);
    CHECK(m.width == 4);
    CHECK(m.height == 2);

    fs::remove(dir / "frames" / "frame_0417.png");
    try {
        (void)load_manifest(dir / "manifest.json");
        FAIL("expected ValidationError");
    } catch (const ValidationError &e) {
        CHECK(std::string(e.what()).find("frame_0417.png") != std::string::npos);
    }
}

TEST_CASE("manifest validation")
{
    const fs::path ok = scratch("manifest_ok");
    write_sequence(ok, VideoId::B, 2, 512, 256, 1.0);
    CHECK(load_manifest(ok / "manifest.json").video == VideoId::B);

    const fs::path bad = scratch("manifest_aspect");
    write_sequence(bad, VideoId::A, 2, 512, 300, 1.0);
    CHECK_THROWS_WITH_AS(load_manifest(bad / "manifest.json"), doctest::Contains("width = 2 * height"),
                         ValidationError);

    const fs::path mixed = scratch("manifest_mixed");
    write_sequence(mixed, VideoId::A, 3, 8, 4, 1.0);
    write_png(mixed / "frames" / "frame_0002.png", Frame(16, 8));
    CHECK_THROWS_AS(load_manifest(mixed / "manifest.json"), ValidationError);

    const fs::path fps = scratch("manifest_fps");
    write_text_file(fps / "manifest.json", R"({"video": "A", "fps": 0, "frame_count": 1, "directory": "."})");
    CHECK_THROWS_AS(load_manifest(fps / "manifest.json"), ValidationError);
    write_text_file(fps / "manifest.json", R"({"video": "A", "fps": 1, "frame_count": 1, "directory": ".", "pattern": "%s.png"})");
    CHECK_THROWS_AS(load_manifest(fps / "manifest.json"), ValidationError);
    write_text_file(fps / "manifest.json", R"({"video": "A", "fps": 1, "frame_count": 1, "directory": ".", "extra": 1})");
    CHECK_THROWS_AS(load_manifest(fps / "manifest.json"), ConfigError);
}

TEST_CASE("frame_at index rule")
{
    MediaManifest m;
    m.fps = 30.0;
    m.frame_count = 900;
    CHECK(frame_index_at(m, 0.0) == 0);
    CHECK(frame_index_at(m, 30.0) == 899);
    CHECK(frame_index_at(m, 1.0 / 60.0) == 0);
    CHECK(frame_index_at(m, 1.0 / 30.0) == 1);
    CHECK_THROWS_AS(frame_index_at(m, -0.01), DomainError);
    CHECK_THROWS_AS(frame_index_at(m, 30.01), DomainError);
    int last = 0;
    for (double t = 0.0; t <= 30.0; t += 0.0123) {
        const int i = frame_index_at(m, t);
        CHECK(i >= last);
        last = i;
    }
}

TEST_CASE("session config defaults and round trip")
{
    const fs::path dir = scratch("config");
    write_sequence(dir / "a", VideoId::A, 3, 8, 4, 1.0);
    write_sequence(dir / "b", VideoId::B, 3, 8, 4, 1.0);
    const SessionConfig cfg = parse_session_config(minimal_config("SlideIn2D"), dir);
    CHECK(cfg.canvas == CanvasSize{1896, 600});
    CHECK(cfg.vr_hfov == 104.0);
    CHECK(cfg.vr_vfov == 96.0);
    CHECK_FALSE(cfg.loop);
    CHECK_FALSE(cfg.tracks[0]);
    CHECK(cfg.media[1].duration() == 3.0);
    CHECK(parse_session_config(serialize_session_config(cfg), dir) == cfg);

    write_text_file(dir / "a" / "roi.txt", "0 10 0 10 10\n1 12 0 10 10\n");
    const std::string full = R"({"technique": "SlideInVR",
        "media": {"A": "a/manifest.json", "B": "b/manifest.json"},
        "roi": {"A": "a/roi.txt"},
        "vr_frustum": {"hfov": 90, "vfov": 80}, "head_pose": {"yaw": 12.5, "pitch": -3},
        "loop": true, "solver": {"sxs_separation_deg": 30}, "initial": {"front": "B"}})";
    const SessionConfig vr = parse_session_config(full, dir);
    CHECK(vr.tracks[0]->duration() == 3.0);
    CHECK(vr.solver.sxs_separation_deg == 30.0);
    CHECK(vr.solver.overlay_span_deg == 60.0);
    CHECK(vr.initial_front == VideoId::B);
    CHECK(vr.head_pose == Direction{12.5, -3});
    CHECK(parse_session_config(serialize_session_config(vr), dir) == vr);
    CHECK(new_session(to_engine_config(vr)).vr().front == VideoId::B);
}

TEST_CASE("session config errors")
{
    const fs::path dir = scratch("config_errors");
    write_sequence(dir / "a", VideoId::A, 3, 8, 4, 1.0);
    write_sequence(dir / "b", VideoId::B, 3, 8, 4, 1.0);
    CHECK_THROWS_AS(parse_session_config(minimal_config("Slide"), dir), ConfigError);
    CHECK_THROWS_AS(parse_session_config(R"({"technique": "SlideIn2D", "media": {"A": "a/manifest.json"}})", dir),
                    ConfigError);
    CHECK_THROWS_AS(parse_session_config(R"({"technique": "SlideIn2D", "media": {"A": "a/manifest.json", "B": "a/manifest.json"}})", dir),
                    ConfigError);
    CHECK_THROWS_AS(parse_session_config("{", dir), ConfigError);
    CHECK_THROWS_AS(parse_session_config(R"({"technique": "SlideIn2D", "colour": 1, "media": {"A": "a/manifest.json", "B": "b/manifest.json"}})", dir),
                    ConfigError);
    CHECK_THROWS_AS(parse_session_config(R"({"technique": "SlideIn2D", "media": {"A": "x/manifest.json", "B": "b/manifest.json"}})", dir),
                    ValidationError);
    write_text_file(dir / "a" / "roi.txt", "0 10 0 10 10\n1 oops 0 10 10\n");
    try {
        (void)parse_session_config(R"({"technique": "SlideIn2D", "media": {"A": "a/manifest.json", "B": "b/manifest.json"},
                                       "roi": {"A": "a/roi.txt"}})", dir);
        FAIL("expected ParseError");
    } catch (const ParseError &e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("config parsing never crashes on garbage")
{
    const fs::path dir = scratch("config_fuzz");
    std::mt19937_64 rng(8);
    const std::string base = minimal_config("ToggleIn2D");
    for (int i = 0; i < 500; ++i) {
        std::string text = base;
        for (int k = 0; k < 3; ++k)
            text[rng() % text.size()] = "{}[]\":,0aZ "[rng() % 12];
        try {
            (void)parse_session_config(text, dir);
        } catch (const ConfigError &) {
        } catch (const ValidationError &) {
        } catch (const ParseError &) {
        }
    }
}

TEST_CASE("ToggleIn2D config rejects ROI actions on replay")
{
    const fs::path dir = scratch("toggle_roi");
    write_sequence(dir / "a", VideoId::A, 3, 8, 4, 1.0);
    write_sequence(dir / "b", VideoId::B, 3, 8, 4, 1.0);
    const SessionConfig cfg = parse_session_config(minimal_config("ToggleIn2D"), dir);
    try {
        (void)run_script(to_engine_config(cfg), parse_script("AT 0 PLAY A\nAT 1 ROIS_SXS\n"));
        FAIL("expected ScriptError");
    } catch (const ScriptError &e) {
        CHECK(e.line() == 2);
        CHECK_THROWS_AS(std::rethrow_exception(e.cause()), UnsupportedCommand);
    }
}

TEST_CASE("state snapshots round-trip through JSON")
{
    for (Technique t : {Technique::SlideInVR, Technique::ToggleInVR, Technique::SlideIn2D, Technique::ToggleIn2D,
                        Technique::SideBySideIn2D}) {
        const EngineConfig cfg = ivc::testing::test_engine_config(t);
        for (const SessionState &s : ivc::testing::fuzzed_states(cfg, 77, 60)) {
            const nlohmann::json j = state_to_json(s);
            CHECK(state_from_json(nlohmann::json::parse(j.dump())) == s);
        }
    }
    CHECK_THROWS_AS(state_from_json(nlohmann::json::object()), ConfigError);
}

TEST_CASE("test frames")
{
    const Frame solid = make_test_frame(VideoId::B, 16, Pattern::solid);
    CHECK(solid.width() == 32);
    CHECK(solid.at(5, 5) == kBlue);
    const Frame board = make_test_frame(VideoId::A, 120, Pattern::checkerboard);
    // Cell (0, 0) is full brightness, its right neighbour is dimmed.
    CHECK(board.at(1, 1) == kPink);
    CHECK(board.at(21, 1) != kPink);
    CHECK(board.at(21, 1).r < kPink.r);
    const Frame roi = make_test_frame(VideoId::A, 120, Pattern::checkerboard, ROISample{0, Direction{-90, -45}, 10, 10});
    const EquirectCoord c = equirect_from_dir(Direction{-90, -45});
    CHECK(roi.at(static_cast<int>(c.u() * 240), static_cast<int>(c.v() * 120)) == Rgba{255, 255, 255, 255});
}

TEST_CASE("demo fixture and web export")
{
    const fs::path dir = scratch("demo");
    write_demo_fixture(dir);
    for (const char *name : {"demo_2d", "demo_vr"}) {
        const SessionConfig cfg = load_session_config(dir / (std::string(name) + ".json"));
        CHECK(cfg.tracks[0]);
        CHECK(cfg.media[0].duration() == 30.0);
        const std::string script = read_text_file(dir / (std::string(name) + ".script"));
        CHECK_NOTHROW(run_script(to_engine_config(cfg), parse_script(script)));

        const fs::path web = dir / ("web_" + std::string(name));
        export_web(cfg, script, web);
        CHECK(fs::exists(web / "script.txt"));
        CHECK(fs::exists(web / "media" / "B" / "frames" / "frame_0029.png"));
        const SessionConfig again = load_session_config(web / "session.json");
        CHECK(again.technique == cfg.technique);
        CHECK(again.tracks == cfg.tracks);
        CHECK(to_engine_config(again) == to_engine_config(cfg));
    }
}
