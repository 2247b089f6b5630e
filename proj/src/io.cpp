#include "ivcompare/io.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>

#include "ivcompare/errors.hpp"
#include "font.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace ivc {

namespace {

void check_keys(const json &j, std::initializer_list<std::string_view> allowed, const std::string &where)
{
    if (!j.is_object())
        throw ConfigError(where + " must be an object");
    for (const auto &[key, value] : j.items())
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw ConfigError("unknown key '" + key + "' in " + where);
}

template <class T>
T get_as(const json &j, const char *key, const std::string &where)
{
    if (!j.contains(key))
        throw ConfigError("missing '" + std::string(key) + "' in " + where);
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &) {
        throw ConfigError("'" + std::string(key) + "' in " + where + " has the wrong type");
    }
}

double get_number(const json &j, const char *key, const std::string &where)
{
    if (j.contains(key) && !j.at(key).is_number())
        throw ConfigError("'" + std::string(key) + "' in " + where + " must be a number");
    return get_as<double>(j, key, where);
}

VideoId parse_video(const json &j, const std::string &where)
{
    if (!j.is_string())
        throw ConfigError(where + " must be \"A\" or \"B\"");
    const auto v = video_from_string(j.get<std::string>());
    if (!v)
        throw ConfigError(where + " must be \"A\" or \"B\"");
    return *v;
}

bool valid_pattern(const std::string &pattern)
{
    static const std::regex re(R"(^[^%]*%0?[0-9]*d[^%]*$)");
    return std::regex_match(pattern, re);
}

json direction_json(const Direction &d) { return {{"yaw", d.yaw()}, {"pitch", d.pitch()}}; }

Direction direction_from(const json &j, const std::string &where)
{
    check_keys(j, {"yaw", "pitch"}, where);
    return {get_number(j, "yaw", where), get_number(j, "pitch", where)};
}

const char *const kVideoKeys[2] = {"A", "B"};

} // namespace

// ---- text files ----

std::string read_text_file(const fs::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const fs::path &path, std::string_view text)
{
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ValidationError("cannot write " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

// ---- PNG ----

Frame read_png(const fs::path &path)
{
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&image, path.c_str()))
        throw ValidationError("cannot read PNG " + path.string() + ": " + image.message);
    image.format = PNG_FORMAT_RGBA;
    Frame frame(static_cast<int>(image.width), static_cast<int>(image.height));
    if (!png_image_finish_read(&image, nullptr, frame.bytes().data(), 0, nullptr)) {
        const std::string msg = image.message;
        png_image_free(&image);
        throw ValidationError("cannot decode PNG " + path.string() + ": " + msg);
    }
    return frame;
}

ImageSize read_png_size(const fs::path &path)
{
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&image, path.c_str()))
        throw ValidationError("cannot read PNG " + path.string() + ": " + image.message);
    const ImageSize size{static_cast<int>(image.width), static_cast<int>(image.height)};
    png_image_free(&image);
    return size;
}

void write_png(const fs::path &path, const Frame &frame)
{
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(frame.width());
    image.height = static_cast<png_uint_32>(frame.height());
    image.format = PNG_FORMAT_RGBA;
    if (!png_image_write_to_file(&image, path.c_str(), 0, frame.bytes().data(), 0, nullptr))
        throw ValidationError("cannot write PNG " + path.string() + ": " + image.message);
}

// ---- media ----

fs::path MediaManifest::frame_path(int index) const
{
    char name[512];
    std::snprintf(name, sizeof name, pattern.c_str(), index);
    return directory / name;
}

MediaManifest load_manifest(const fs::path &path)
{
    const std::string where = "manifest " + path.string();
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::parse_error &e) {
        throw ValidationError(where + ": " + e.what());
    }
    check_keys(j, {"video", "fps", "frame_count", "directory", "pattern"}, where);

    MediaManifest m;
    try {
        m.video = parse_video(j.at("video"), where + " video");
        m.fps = get_number(j, "fps", where);
        m.frame_count = get_as<int>(j, "frame_count", where);
        m.directory = path.parent_path() / get_as<std::string>(j, "directory", where);
        if (j.contains("pattern"))
            m.pattern = get_as<std::string>(j, "pattern", where);
    } catch (const ConfigError &e) {
        throw ValidationError(e.what());
    } catch (const json::exception &e) {
        throw ValidationError(where + ": " + e.what());
    }
    if (!(m.fps > 0.0) || !std::isfinite(m.fps))
        throw ValidationError(where + ": fps must be positive");
    if (m.frame_count <= 0)
        throw ValidationError(where + ": frame_count must be positive");
    if (!valid_pattern(m.pattern))
        throw ValidationError(where + ": pattern needs exactly one integer conversion such as %04d");

    for (int i = 0; i < m.frame_count; ++i) {
        const fs::path frame = m.frame_path(i);
        if (!fs::exists(frame))
            throw ValidationError(where + ": missing frame " + frame.filename().string());
        const ImageSize size = read_png_size(frame);
        if (i == 0) {
            m.width = size.width;
            m.height = size.height;
            if (size.width != 2 * size.height)
                throw ValidationError(where + ": frame " + frame.filename().string() + " is " +
                                      std::to_string(size.width) + "x" + std::to_string(size.height) +
                                      ", equirect frames need width = 2 * height");
        } else if (size.width != m.width || size.height != m.height) {
            throw ValidationError(where + ": frame " + frame.filename().string() + " differs in size from frame 0");
        }
    }
    return m;
}

json manifest_to_json(const MediaManifest &m, const fs::path &relative_directory)
{
    return {{"video", std::string(to_string(m.video))},
            {"fps", m.fps},
            {"frame_count", m.frame_count},
            {"directory", relative_directory.generic_string()},
            {"pattern", m.pattern}};
}

int frame_index_at(const MediaManifest &m, double t)
{
    if (!(t >= 0.0 && t <= m.duration()))
        throw DomainError("frame time outside [0, duration]");
    const double idx = std::floor(t * m.fps);
    return static_cast<int>(std::min(idx, double(m.frame_count - 1)));
}

Frame frame_at(const MediaManifest &m, double t) { return read_png(m.frame_path(frame_index_at(m, t))); }

// ---- session configuration ----

SessionConfig parse_session_config(std::string_view text, const fs::path &base_dir)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ConfigError(std::string("session config: ") + e.what());
    }
    const std::string where = "session config";
    check_keys(j, {"technique", "media", "roi", "canvas", "vr_frustum", "head_pose", "loop", "solver", "initial"},
               where);

    SessionConfig cfg;
    cfg.base_dir = base_dir;
    const auto technique = technique_from_string(get_as<std::string>(j, "technique", where));
    if (!technique)
        throw ConfigError("unknown technique '" + j.at("technique").get<std::string>() + "'");
    cfg.technique = *technique;

    const json &media = j.contains("media") ? j.at("media") : json::object();
    check_keys(media, {"A", "B"}, "media");
    const json roi = j.value("roi", json::object());
    check_keys(roi, {"A", "B"}, "roi");
    for (std::size_t i = 0; i < 2; ++i) {
        if (!media.contains(kVideoKeys[i]))
            throw ConfigError(std::string("missing media ") + kVideoKeys[i]);
        cfg.media_paths[i] = get_as<std::string>(media, kVideoKeys[i], "media");
        if (roi.contains(kVideoKeys[i]) && !roi.at(kVideoKeys[i]).is_null())
            cfg.roi_paths[i] = get_as<std::string>(roi, kVideoKeys[i], "roi");
    }

    if (j.contains("canvas")) {
        check_keys(j.at("canvas"), {"width", "height"}, "canvas");
        cfg.canvas = {get_as<int>(j.at("canvas"), "width", "canvas"), get_as<int>(j.at("canvas"), "height", "canvas")};
    }
    if (j.contains("vr_frustum")) {
        check_keys(j.at("vr_frustum"), {"hfov", "vfov"}, "vr_frustum");
        cfg.vr_hfov = get_number(j.at("vr_frustum"), "hfov", "vr_frustum");
        cfg.vr_vfov = get_number(j.at("vr_frustum"), "vfov", "vr_frustum");
    }
    if (j.contains("head_pose"))
        cfg.head_pose = direction_from(j.at("head_pose"), "head_pose");
    if (j.contains("loop"))
        cfg.loop = get_as<bool>(j, "loop", where);
    if (j.contains("solver")) {
        const json &s = j.at("solver");
        check_keys(s, {"sxs_separation_deg", "overlay_span_deg"}, "solver");
        if (s.contains("sxs_separation_deg"))
            cfg.solver.sxs_separation_deg = get_number(s, "sxs_separation_deg", "solver");
        if (s.contains("overlay_span_deg"))
            cfg.solver.overlay_span_deg = get_number(s, "overlay_span_deg", "solver");
    }
    if (j.contains("initial")) {
        const json &init = j.at("initial");
        check_keys(init, {"divider", "front"}, "initial");
        if (init.contains("divider") && !init.at("divider").is_null())
            cfg.initial_divider = get_number(init, "divider", "initial");
        if (init.contains("front") && !init.at("front").is_null())
            cfg.initial_front = parse_video(init.at("front"), "initial front");
    }

    for (std::size_t i = 0; i < 2; ++i) {
        const VideoId v = static_cast<VideoId>(i);
        cfg.media[i] = load_manifest(base_dir / cfg.media_paths[i]);
        if (cfg.media[i].video != v)
            throw ConfigError(std::string("media ") + kVideoKeys[i] + " manifest declares video " +
                              std::string(to_string(cfg.media[i].video)));
        if (cfg.roi_paths[i]) {
            const ROITrack track = merge_segments(parse_roi_track(read_text_file(base_dir / *cfg.roi_paths[i]), v));
            const double duration = cfg.media[i].duration();
            if (track.duration() > duration)
                throw ConfigError(std::string("ROI track ") + kVideoKeys[i] + " outlasts its video");
            cfg.tracks[i] = track.with_duration(duration);
        }
    }
    validate_config(to_engine_config(cfg));
    return cfg;
}

SessionConfig load_session_config(const fs::path &path)
{
    return parse_session_config(read_text_file(path), path.parent_path());
}

std::string serialize_session_config(const SessionConfig &cfg)
{
    json j;
    j["technique"] = std::string(to_string(cfg.technique));
    j["media"] = {{"A", cfg.media_paths[0]}, {"B", cfg.media_paths[1]}};
    json roi = json::object();
    for (std::size_t i = 0; i < 2; ++i)
        if (cfg.roi_paths[i])
            roi[kVideoKeys[i]] = *cfg.roi_paths[i];
    j["roi"] = roi;
    j["canvas"] = {{"width", cfg.canvas.width}, {"height", cfg.canvas.height}};
    j["vr_frustum"] = {{"hfov", cfg.vr_hfov}, {"vfov", cfg.vr_vfov}};
    j["head_pose"] = direction_json(cfg.head_pose);
    j["loop"] = cfg.loop;
    j["solver"] = {{"sxs_separation_deg", cfg.solver.sxs_separation_deg},
                   {"overlay_span_deg", cfg.solver.overlay_span_deg}};
    json init = json::object();
    if (cfg.initial_divider)
        init["divider"] = *cfg.initial_divider;
    if (cfg.initial_front)
        init["front"] = std::string(to_string(*cfg.initial_front));
    j["initial"] = init;
    return j.dump(2) + "\n";
}

EngineConfig to_engine_config(const SessionConfig &cfg)
{
    EngineConfig e;
    e.technique = cfg.technique;
    e.durations = {cfg.media[0].duration(), cfg.media[1].duration()};
    e.canvas = cfg.canvas;
    e.vr_hfov = cfg.vr_hfov;
    e.vr_vfov = cfg.vr_vfov;
    e.head_pose = cfg.head_pose;
    e.loop = cfg.loop;
    e.solver = cfg.solver;
    e.tracks = cfg.tracks;
    e.initial_divider = cfg.initial_divider;
    e.initial_front = cfg.initial_front;
    return e;
}

// ---- state snapshots ----

json state_to_json(const SessionState &s)
{
    json j;
    j["technique"] = std::string(to_string(s.technique));
    j["time_now"] = s.time_now;
    j["loop"] = s.loop;
    j["head_pose"] = direction_json(s.head_pose);
    j["durations"] = {s.durations[0], s.durations[1]};
    j["clocks"] = json::array();
    for (const Clock &c : s.clocks)
        j["clocks"].push_back({{"position", c.position}, {"playing", c.playing}});
    j["peek"] = {{"active", s.peek.active},
                 {"gaze", direction_json(s.peek.gaze)},
                 {"cursor", {{"x", s.peek.cursor.x}, {"y", s.peek.cursor.y}}},
                 {"extent", s.peek.extent}};

    if (const auto *vr = std::get_if<VRLayout>(&s.layout)) {
        json areas = json::array();
        for (const LuneArea &a : vr->areas)
            areas.push_back({{"start_edge_az", a.start_edge_az},
                             {"end_edge_az", a.end_edge_az},
                             {"yaw_offset", a.yaw_offset}});
        json pending = nullptr;
        if (vr->pending_slide)
            pending = {{"video", std::string(to_string(vr->pending_slide->video))},
                       {"delta_az", vr->pending_slide->delta_az}};
        j["layout"] = {{"kind", "vr"}, {"areas", areas}, {"front", std::string(to_string(vr->front))},
                       {"pending_slide", pending}};
    } else {
        const CanvasLayout &c = s.canvas();
        json viewports = json::array();
        for (const Viewport &vp : c.viewports)
            viewports.push_back({{"center", direction_json(vp.center)}, {"vfov", vp.vfov}, {"hfov", vp.hfov}});
        j["layout"] = {{"kind", "canvas"},
                       {"technique", std::string(to_string(c.technique))},
                       {"canvas", {{"width", c.canvas.width}, {"height", c.canvas.height}}},
                       {"viewports", viewports},
                       {"front", std::string(to_string(c.front))},
                       {"divider_x", c.divider_x},
                       {"toggle_current", std::string(to_string(c.toggle_current))}};
    }
    return j;
}

SessionState state_from_json(const json &j)
{
    try {
        SessionState s;
        const auto technique = technique_from_string(j.at("technique").get<std::string>());
        if (!technique)
            throw ConfigError("unknown technique in state snapshot");
        s.technique = *technique;
        s.time_now = j.at("time_now").get<double>();
        s.loop = j.at("loop").get<bool>();
        s.head_pose = direction_from(j.at("head_pose"), "head_pose");
        for (std::size_t i = 0; i < 2; ++i) {
            s.durations[i] = j.at("durations").at(i).get<double>();
            s.clocks[i] = {j.at("clocks").at(i).at("position").get<double>(),
                           j.at("clocks").at(i).at("playing").get<bool>()};
        }
        const json &peek = j.at("peek");
        s.peek.active = peek.at("active").get<bool>();
        s.peek.gaze = direction_from(peek.at("gaze"), "peek gaze");
        s.peek.cursor = {peek.at("cursor").at("x").get<int>(), peek.at("cursor").at("y").get<int>()};
        s.peek.extent = peek.at("extent").get<double>();

        const json &l = j.at("layout");
        if (l.at("kind") == "vr") {
            VRLayout vr;
            for (std::size_t i = 0; i < 2; ++i) {
                const json &a = l.at("areas").at(i);
                vr.areas[i] = {a.at("start_edge_az").get<double>(), a.at("end_edge_az").get<double>(),
                               a.at("yaw_offset").get<double>()};
            }
            vr.front = parse_video(l.at("front"), "front");
            if (!l.at("pending_slide").is_null())
                vr.pending_slide = PendingSlide{parse_video(l.at("pending_slide").at("video"), "pending video"),
                                                l.at("pending_slide").at("delta_az").get<double>()};
            s.layout = vr;
        } else {
            CanvasLayout c;
            const auto t = technique_from_string(l.at("technique").get<std::string>());
            if (!t)
                throw ConfigError("unknown canvas technique in state snapshot");
            c.technique = *t;
            c.canvas = {l.at("canvas").at("width").get<int>(), l.at("canvas").at("height").get<int>()};
            for (std::size_t i = 0; i < 2; ++i) {
                const json &vp = l.at("viewports").at(i);
                c.viewports[i] = {direction_from(vp.at("center"), "viewport center"), vp.at("vfov").get<double>(),
                                  vp.at("hfov").get<double>()};
            }
            c.front = parse_video(l.at("front"), "front");
            c.divider_x = l.at("divider_x").get<double>();
            c.toggle_current = parse_video(l.at("toggle_current"), "toggle_current");
            s.layout = c;
        }
        return s;
    } catch (const json::exception &e) {
        throw ConfigError(std::string("state snapshot: ") + e.what());
    }
}

// ---- fixtures ----

Frame make_test_frame(VideoId video, int height, Pattern pattern, const std::optional<ROISample> &roi)
{
    if (height < 1)
        throw DomainError("frame height must be positive");
    const Rgba base = video == VideoId::A ? kPink : kBlue;
    const int width = 2 * height;
    Frame f(width, height, base);
    if (pattern == Pattern::solid)
        return f;

    const Rgba dark{static_cast<std::uint8_t>(base.r * 0.55), static_cast<std::uint8_t>(base.g * 0.55),
                    static_cast<std::uint8_t>(base.b * 0.55), 255};
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            const int cell_x = x * 12 / width;  // 30 deg of yaw per cell
            const int cell_y = y * 6 / height;  // 30 deg of pitch per cell
            if ((cell_x + cell_y) % 2)
                f.set(x, y, dark);
        }

    constexpr Rgba kLabel{255, 255, 255, 255};
    const int scale = std::max(1, height / 48);
    const int glyph_w = 5 * scale, glyph_h = detail::kGlyphHeight * scale;
    auto label_at = [&](double yaw, double pitch, std::string_view text) {
        const EquirectCoord uv = equirect_from_dir(Direction{yaw, pitch});
        const int cx = static_cast<int>(std::lround(uv.u() * width));
        const int cy = static_cast<int>(std::lround(uv.v() * height));
        for (int shift : {-width, 0, width})
            detail::draw_text(f, cx - glyph_w / 2 + shift, cy - glyph_h / 2, text, kLabel, scale);
    };
    label_at(0.0, 0.0, "F");
    label_at(90.0, 0.0, "R");
    label_at(-180.0, 0.0, "B");
    label_at(-90.0, 0.0, "L");
    label_at(0.0, 45.0, to_string(video));

    if (roi) {
        const double radius = std::min(roi->width, roi->height) / 2.0;
        for (int y = 0; y < height; ++y)
            for (int x = 0; x < width; ++x) {
                const Direction d = dir_from_equirect(EquirectCoord{(x + 0.5) / width, (y + 0.5) / height});
                if (angular_distance(d, roi->center) <= radius)
                    f.set(x, y, kLabel);
            }
    }
    return f;
}

namespace {

constexpr int kDemoFrameHeight = 256;
constexpr double kDemoFps = 1.0;
constexpr int kDemoFrameCount = 30;

ROITrack demo_track(VideoId v)
{
    std::vector<ROIRun> runs;
    if (v == VideoId::A) {
        // Moves right across the front, disappears for a few seconds, returns.
        ROIRun first, second;
        for (int i = 0; i <= 24; ++i)
            first.push_back({i * 0.5, Direction{-30.0 + i * 2.5, 5.0}, 16.0, 16.0});
        for (int i = 0; i <= 30; ++i)
            second.push_back({15.0 + i * 0.5, Direction{60.0 + i * 1.0, 5.0 - i * 0.2}, 16.0, 16.0});
        runs = {first, second};
    } else {
        ROIRun run;
        for (int i = 0; i <= 60; ++i)
            run.push_back({i * 0.5, Direction{120.0 + i * 0.75, -10.0}, 20.0, 20.0});
        runs = {run};
    }
    return ROITrack(v, std::move(runs), kDemoFrameCount / kDemoFps);
}

constexpr std::string_view kDemoScript2D = R"(# SlideIn2D walkthrough
AT 0 PLAY BOTH
AT 2 DRAG A 15 5
AT 4 DIVIDER 0.35
AT 6 ROIS_SXS
AT 9 PEEK_ON PX 150 100
AT 10 PEEK_OFF
AT 12 ROIS_OVERLAY
AT 14 PEEK_ON PX 110 100
AT 16 PEEK_OFF
AT 18 SWAP
AT 20 JUMP A -5
AT 22 DIVIDER 0.7
AT 25 RESET_VIEWS
AT 28 PEEK_ON PX 300 90
)";

constexpr std::string_view kDemoScriptVR = R"(# SlideInVR walkthrough
AT 0 PLAY BOTH
AT 2 HEAD 40 0
AT 3 EXTEND_VR A END 150
AT 5 SLIDE_VR B 30 PREVIEW
AT 6 SLIDE_VR B 30 COMMIT
AT 8 ROIS_SXS
AT 11 ROIS_OVERLAY
AT 13 PEEK_ON
AT 15.5 PEEK_OFF
AT 18 SWAP
AT 20 SET_VIEWS_360
AT 24 RESET_VIEWS
AT 27 SLIDE_VR A -45 PREVIEW
AT 28 HEAD 100 10
)";

} // namespace

void write_demo_fixture(const fs::path &out_dir)
{
    for (VideoId v : {VideoId::A, VideoId::B}) {
        const std::string name = v == VideoId::A ? "a" : "b";
        const fs::path dir = out_dir / name;
        const ROITrack track = demo_track(v);
        MediaManifest m;
        m.video = v;
        m.fps = kDemoFps;
        m.frame_count = kDemoFrameCount;
        m.directory = dir / "frames";
        for (int i = 0; i < kDemoFrameCount; ++i)
            write_png(m.frame_path(i), make_test_frame(v, kDemoFrameHeight, Pattern::checkerboard,
                                                       roi_at(track, i / kDemoFps)));
        write_text_file(dir / "manifest.json", manifest_to_json(m, "frames").dump(2) + "\n");
        write_text_file(dir / "roi.txt", "# demo ROI track, video " + std::string(to_string(v)) + "\n" +
                                             format_roi_track(track));
    }

    SessionConfig cfg;
    cfg.media_paths = {"a/manifest.json", "b/manifest.json"};
    cfg.roi_paths = {"a/roi.txt", "b/roi.txt"};
    cfg.technique = Technique::SlideIn2D;
    cfg.canvas = {632, 200};
    write_text_file(out_dir / "demo_2d.json", serialize_session_config(cfg));
    write_text_file(out_dir / "demo_2d.script", kDemoScript2D);

    cfg.technique = Technique::SlideInVR;
    write_text_file(out_dir / "demo_vr.json", serialize_session_config(cfg));
    write_text_file(out_dir / "demo_vr.script", kDemoScriptVR);
}

void export_web(const SessionConfig &cfg, const std::optional<std::string> &script_text, const fs::path &out_dir)
{
    SessionConfig out = cfg;
    for (std::size_t i = 0; i < 2; ++i) {
        const std::string key = kVideoKeys[i];
        const MediaManifest &m = cfg.media[i];
        const fs::path media_dir = out_dir / "media" / key;
        fs::create_directories(media_dir / "frames");
        for (int f = 0; f < m.frame_count; ++f) {
            const fs::path src = m.frame_path(f);
            fs::copy_file(src, media_dir / "frames" / src.filename(), fs::copy_options::overwrite_existing);
        }
        write_text_file(media_dir / "manifest.json", manifest_to_json(m, "frames").dump(2) + "\n");
        out.media_paths[i] = "media/" + key + "/manifest.json";
        if (cfg.tracks[i]) {
            write_text_file(out_dir / "roi" / (key + ".txt"), format_roi_track(*cfg.tracks[i]));
            out.roi_paths[i] = "roi/" + key + ".txt";
        }
    }
    write_text_file(out_dir / "session.json", serialize_session_config(out));
    if (script_text)
        write_text_file(out_dir / "script.txt", *script_text);
}

} // namespace ivc
