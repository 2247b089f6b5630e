#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "ivcompare/compositor.hpp"
#include "ivcompare/roi.hpp"
#include "ivcompare/session.hpp"

namespace ivc {

// ---- PNG ----

struct ImageSize
{
    int width = 0;
    int height = 0;
};

/// Reads any PNG and converts it to RGBA8. Throws ValidationError on failure.
Frame read_png(const std::filesystem::path &path);
/// Dimensions from the PNG header only.
ImageSize read_png_size(const std::filesystem::path &path);
/// Writes RGBA8 with fixed compression settings and no timestamp chunks, so
/// equal frames give equal files.
void write_png(const std::filesystem::path &path, const Frame &frame);

// ---- media ----

/// Image-sequence video. Frame i lives at `directory / pattern` with the
/// single printf integer conversion in `pattern` replaced by i.
///
///     {"video": "A", "fps": 30, "frame_count": 900,
///      "directory": "frames", "pattern": "frame_%04d.png"}
struct MediaManifest
{
    VideoId video = VideoId::A;
    std::filesystem::path directory;
    std::string pattern = "frame_%04d.png";
    double fps = 30.0;
    int frame_count = 0;
    int width = 0;
    int height = 0;

    double duration() const { return frame_count / fps; }
    std::filesystem::path frame_path(int index) const;

    bool operator==(const MediaManifest &) const = default;
};

/// Loads and validates a manifest; relative directories resolve against the
/// manifest's folder. Every frame must exist with width = 2 * height and
/// identical dimensions. Throws ValidationError naming the offending frame.
MediaManifest load_manifest(const std::filesystem::path &path);
nlohmann::json manifest_to_json(const MediaManifest &m, const std::filesystem::path &relative_directory);

/// floor(t * fps), clamped to the last frame. Throws DomainError for t
/// outside [0, duration].
int frame_index_at(const MediaManifest &m, double t);
Frame frame_at(const MediaManifest &m, double t);

// ---- session configuration ----

/// Session file: technique, media manifests, optional ROI tracks and
/// presentation settings. Paths are kept as written and resolved against
/// `base_dir`.
struct SessionConfig
{
    Technique technique = Technique::SlideIn2D;
    std::array<std::string, 2> media_paths;
    std::array<std::optional<std::string>, 2> roi_paths;
    CanvasSize canvas = kDefaultCanvas;
    double vr_hfov = kVrHfovDeg;
    double vr_vfov = kVrVfovDeg;
    Direction head_pose;
    bool loop = false;
    SolverParams solver;
    std::optional<double> initial_divider;
    std::optional<VideoId> initial_front;

    std::filesystem::path base_dir;
    std::array<MediaManifest, 2> media;
    std::array<std::optional<ROITrack>, 2> tracks;

    bool operator==(const SessionConfig &) const = default;
};

/// Parses and fully validates a session file: manifests and ROI tracks are
/// loaded, tracks are stretched to their video's duration. Throws ConfigError,
/// or the ParseError / ValidationError of a referenced file.
SessionConfig parse_session_config(std::string_view text, const std::filesystem::path &base_dir);
SessionConfig load_session_config(const std::filesystem::path &path);
std::string serialize_session_config(const SessionConfig &cfg);
EngineConfig to_engine_config(const SessionConfig &cfg);

// ---- state snapshots ----

nlohmann::json state_to_json(const SessionState &s);
SessionState state_from_json(const nlohmann::json &j);

// ---- fixtures ----

enum class Pattern { checkerboard, solid };

/// Synthetic equirect test frame: a checkerboard of 30 deg cells in the
/// video's color with F/R/B/L labels at the four horizon directions and the
/// ROI (when given) as a white patch; or a plain solid fill.
Frame make_test_frame(VideoId video, int height, Pattern pattern, const std::optional<ROISample> &roi = {});

/// Writes the bundled demo: image sequences, manifests, ROI tracks, one 2D
/// and one VR session file and their interaction scripts.
void write_demo_fixture(const std::filesystem::path &out_dir);

/// Static layout consumed by the browser viewer: `session.json`, `script.txt`
/// (when given), `media/<video>/manifest.json` with frames, and
/// `roi/<video>.txt`.
void export_web(const SessionConfig &cfg, const std::optional<std::string> &script_text,
                const std::filesystem::path &out_dir);

std::string read_text_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, std::string_view text);

} // namespace ivc
