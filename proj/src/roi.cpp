#include "ivcompare/roi.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "ivcompare/errors.hpp"
#include "text_util.hpp"

namespace ivc {

namespace {

void validate_sample(const ROISample &s)
{
    if (!std::isfinite(s.t) || s.t < 0.0)
        throw ValidationError("ROI sample time must be finite and non-negative");
    if (!(s.width > 0.0 && s.width < 180.0) || !(s.height > 0.0 && s.height < 180.0))
        throw ValidationError("ROI extents must lie in (0, 180) degrees");
}

// Run index and position for a time inside the track, if any.
struct RunHit
{
    const ROIRun *run = nullptr;
    std::size_t upper = 0; // first sample with sample.t >= t
};

std::optional<RunHit> find_run(const ROITrack &track, double t)
{
    for (const ROIRun &run : track.runs()) {
        if (t < run.front().t || t > run.back().t)
            continue;
        auto it = std::lower_bound(run.begin(), run.end(), t,
                                   [](const ROISample &s, double value) { return s.t < value; });
        return RunHit{&run, static_cast<std::size_t>(it - run.begin())};
    }
    return std::nullopt;
}

} // namespace

ROITrack::ROITrack(VideoId video, std::vector<ROIRun> runs, double duration)
    : video_(video), runs_(std::move(runs)), duration_(duration)
{
    if (!std::isfinite(duration_) || duration_ < 0.0)
        throw ValidationError("ROI track duration must be finite and non-negative");
    std::erase_if(runs_, [](const ROIRun &r) { return r.empty(); });
    for (const ROIRun &run : runs_) {
        for (std::size_t i = 0; i < run.size(); ++i) {
            validate_sample(run[i]);
            if (i > 0 && !(run[i].t > run[i - 1].t))
                throw ValidationError("ROI sample times must strictly increase within a run");
        }
        if (run.back().t > duration_)
            throw ValidationError("ROI sample lies beyond the track duration");
    }
    std::vector<const ROIRun *> order;
    for (const ROIRun &run : runs_)
        order.push_back(&run);
    std::sort(order.begin(), order.end(), [](const ROIRun *a, const ROIRun *b) { return a->front().t < b->front().t; });
    for (std::size_t i = 1; i < order.size(); ++i)
        if (!(order[i]->front().t > order[i - 1]->back().t))
            throw ValidationError("ROI runs overlap in time");
}

bool ROITrack::empty() const { return runs_.empty(); }

std::size_t ROITrack::sample_count() const
{
    std::size_t n = 0;
    for (const ROIRun &run : runs_)
        n += run.size();
    return n;
}

ROITrack parse_roi_track(std::string_view text, VideoId video, double gap_threshold)
{
    std::vector<ROIRun> runs;
    ROIRun current;
    std::optional<double> declared_duration;
    int line_no = 0;

    auto flush = [&] {
        if (!current.empty())
            runs.push_back(std::move(current));
        current.clear();
    };

    for (std::string_view raw : detail::split_lines(text)) {
        ++line_no;
        if (detail::trim(raw).empty()) {
            flush();
            continue;
        }
        std::string_view body = raw.substr(0, raw.find('#'));
        const std::vector<std::string_view> tokens = detail::split_ws(body);
        if (tokens.empty())
            continue;

        if (tokens[0] == "@duration") {
            if (tokens.size() != 2)
                throw ParseError(line_no, "@duration takes exactly one value");
            const auto d = detail::parse_double(tokens[1]);
            if (!d || *d < 0.0)
                throw ParseError(line_no, "invalid @duration value");
            declared_duration = *d;
            continue;
        }
        if (tokens.size() != 5)
            throw ParseError(line_no, "expected 't yaw pitch width height'");
        double values[5];
        for (std::size_t i = 0; i < 5; ++i) {
            const auto v = detail::parse_double(tokens[i]);
            if (!v)
                throw ParseError(line_no, "invalid number '" + std::string(tokens[i]) + "'");
            values[i] = *v;
        }
        ROISample s{values[0], Direction{values[1], values[2]}, values[3], values[4]};
        try {
            validate_sample(s);
        } catch (const ValidationError &e) {
            throw ParseError(line_no, e.what());
        }
        if (!current.empty()) {
            const double step = s.t - current.back().t;
            if (step <= 0.0)
                throw ValidationError("line " + std::to_string(line_no) + ": ROI time does not increase within run");
            if (step > gap_threshold)
                flush();
        }
        current.push_back(s);
    }
    flush();

    double last_t = 0.0;
    for (const ROIRun &run : runs)
        last_t = std::max(last_t, run.back().t);
    const double duration = declared_duration.value_or(last_t);
    if (duration < last_t)
        throw ValidationError("@duration is shorter than the last ROI sample");
    return ROITrack(video, std::move(runs), duration);
}

std::string format_roi_track(const ROITrack &track)
{
    std::ostringstream out;
    out << "@duration " << detail::format_double(track.duration()) << '\n';
    for (std::size_t r = 0; r < track.runs().size(); ++r) {
        if (r > 0)
            out << '\n';
        for (const ROISample &s : track.runs()[r])
            out << detail::format_double(s.t) << ' ' << detail::format_double(s.center.yaw()) << ' '
                << detail::format_double(s.center.pitch()) << ' ' << detail::format_double(s.width) << ' '
                << detail::format_double(s.height) << '\n';
    }
    return out.str();
}

ROITrack merge_segments(const ROITrack &track, double gap_threshold)
{
    std::vector<ROIRun> sorted = track.runs();
    std::sort(sorted.begin(), sorted.end(), [](const ROIRun &a, const ROIRun &b) { return a.front().t < b.front().t; });
    std::vector<ROIRun> merged;
    for (ROIRun &run : sorted) {
        if (!merged.empty() && run.front().t - merged.back().back().t <= gap_threshold)
            merged.back().insert(merged.back().end(), run.begin(), run.end());
        else
            merged.push_back(std::move(run));
    }
    return ROITrack(track.video(), std::move(merged), track.duration());
}

std::optional<ROISample> roi_at(const ROITrack &track, double t)
{
    if (!(t >= 0.0 && t <= track.duration()))
        throw DomainError("ROI query time outside [0, duration]");
    const auto hit = find_run(track, t);
    if (!hit)
        return std::nullopt;
    const ROIRun &run = *hit->run;
    const ROISample &hi = run[hit->upper];
    if (hi.t == t || hit->upper == 0)
        return hi;
    const ROISample &lo = run[hit->upper - 1];
    const double f = (t - lo.t) / (hi.t - lo.t);
    return ROISample{t, slerp_dir(lo.center, hi.center, f), lo.width + (hi.width - lo.width) * f,
                     lo.height + (hi.height - lo.height) * f};
}

ROISample nearest_roi(const ROITrack &track, double t)
{
    if (track.empty())
        throw ValidationError("ROI track has no samples");
    if (t >= 0.0 && t <= track.duration())
        if (auto s = roi_at(track, t))
            return *s;
    const ROISample *best = nullptr;
    double best_dist = 0.0;
    for (const ROIRun &run : track.runs()) {
        for (const ROISample *s : {&run.front(), &run.back()}) {
            const double dist = std::abs(t - s->t);
            if (!best || dist < best_dist || (dist == best_dist && s->t < best->t)) {
                best = s;
                best_dist = dist;
            }
        }
    }
    return *best;
}

Rgb gradient_color(double fraction)
{
    const double f = std::clamp(fraction, 0.0, 1.0);
    return {static_cast<unsigned char>(std::lround(255.0 * (1.0 - f))),
            static_cast<unsigned char>(std::lround(255.0 * f)), 0};
}

namespace {

template <class Encode>
std::vector<TrajectoryPoint> project_track(const ROITrack &track, const PlanetMapConfig &cfg, Encode encode)
{
    std::vector<const ROIRun *> order;
    for (const ROIRun &run : track.runs())
        order.push_back(&run);
    std::sort(order.begin(), order.end(), [](const ROIRun *a, const ROIRun *b) { return a->front().t < b->front().t; });
    std::vector<TrajectoryPoint> points;
    points.reserve(track.sample_count());
    for (std::size_t seg = 0; seg < order.size(); ++seg)
        for (const ROISample &s : *order[seg])
            points.push_back({planet_project(s.center, cfg), s.t, seg, encode(s.t)});
    return points;
}

} // namespace

std::vector<TrajectoryPoint> trajectory_2d(const ROITrack &track, const PlanetMapConfig &cfg)
{
    const double duration = track.duration();
    return project_track(track, cfg, [duration](double t) { return duration > 0.0 ? t / duration : 0.0; });
}

std::vector<TrajectoryPoint> trajectory_vr(const ROITrack &track, double t_now, const PlanetMapConfig &cfg)
{
    return project_track(track, cfg, [t_now](double t) { return t - t_now; });
}

} // namespace ivc
