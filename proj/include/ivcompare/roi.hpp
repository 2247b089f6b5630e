#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ivcompare/display.hpp"
#include "ivcompare/geometry.hpp"

namespace ivc {

inline constexpr double kDefaultGapThresholdSec = 1.0;

struct ROISample
{
    double t = 0.0;
    Direction center;
    double width = 10.0;
    double height = 10.0;

    bool operator==(const ROISample &) const = default;
};

/// Samples with strictly increasing time.
using ROIRun = std::vector<ROISample>;

/// Time-stamped ROI trajectory of one video, stored as non-overlapping runs.
/// Time between runs is a gap in which the ROI is absent.
class ROITrack
{
public:
    ROITrack() = default;

    /// Validates every invariant; throws ValidationError on violation. Runs
    /// may be given in any order but must not overlap in time.
    ROITrack(VideoId video, std::vector<ROIRun> runs, double duration);

    VideoId video() const { return video_; }
    const std::vector<ROIRun> &runs() const { return runs_; }
    double duration() const { return duration_; }
    bool empty() const;
    std::size_t sample_count() const;

    ROITrack with_duration(double duration) const { return {video_, runs_, duration}; }

    bool operator==(const ROITrack &) const = default;

private:
    VideoId video_ = VideoId::A;
    std::vector<ROIRun> runs_;
    double duration_ = 0.0;
};

/// Parses the line-oriented track format:
///
///     # comment
///     @duration 30
///     <t> <yaw> <pitch> <width> <height>
///
/// A blank line ends the current run, as does a forward time step larger than
/// `gap_threshold`. Without `@duration` the track lasts until its last sample.
ROITrack parse_roi_track(std::string_view text, VideoId video, double gap_threshold = kDefaultGapThresholdSec);
std::string format_roi_track(const ROITrack &track);

/// Sorts runs by time and joins neighbours separated by at most
/// `gap_threshold`; longer gaps stay as breaks.
ROITrack merge_segments(const ROITrack &track, double gap_threshold = kDefaultGapThresholdSec);

/// Interpolated ROI inside a run, empty in gaps. Throws DomainError for t
/// outside [0, duration].
std::optional<ROISample> roi_at(const ROITrack &track, double t);

/// roi_at inside a run, otherwise the closest run-boundary sample (earlier on
/// ties). Throws ValidationError for an empty track.
ROISample nearest_roi(const ROITrack &track, double t);

/// Minimap vertex. `segment` indexes the run the sample came from; a change in
/// segment breaks the polyline. `time_value` is the color fraction for 2D
/// trajectories and the depth offset in seconds for VR trajectories.
struct TrajectoryPoint
{
    MapPoint map_pos;
    double sample_time = 0.0;
    std::size_t segment = 0;
    double time_value = 0.0;

    bool operator==(const TrajectoryPoint &) const = default;
};

struct Rgb
{
    unsigned char r = 0;
    unsigned char g = 0;
    unsigned char b = 0;

    bool operator==(const Rgb &) const = default;
};

/// Red-to-green 8-bit gradient; fraction is clamped to [0, 1].
Rgb gradient_color(double fraction);

std::vector<TrajectoryPoint> trajectory_2d(const ROITrack &track, const PlanetMapConfig &cfg);
std::vector<TrajectoryPoint> trajectory_vr(const ROITrack &track, double t_now, const PlanetMapConfig &cfg);

} // namespace ivc
