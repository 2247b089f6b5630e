#pragma once

#include <optional>

namespace ivc {

inline constexpr double kPi = 3.14159265358979323846;

inline constexpr double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
inline constexpr double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

/// Wraps an angle into [-180, 180).
double wrap_yaw(double deg);
/// Wraps an angle into [0, 360).
double wrap_azimuth(double deg);

struct Vec3
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3 operator+(const Vec3 &o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3 &o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    double dot(const Vec3 &o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3 &o) const
    {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double length() const;
    Vec3 normalized() const;
};

/// A point on the unit sphere. Yaw 0 is the video front, positive yaw turns to
/// the viewer's right, positive pitch is up. Always stored normalized: yaw in
/// [-180, 180), pitch in [-90, 90], yaw 0 at either pole.
class Direction
{
public:
    Direction() = default;
    Direction(double yaw_deg, double pitch_deg);

    static Direction from_vector(const Vec3 &v);

    double yaw() const { return yaw_; }
    double pitch() const { return pitch_; }

    /// Unit vector with x right, y up, z forward.
    Vec3 to_vector() const;

    bool operator==(const Direction &) const = default;

private:
    double yaw_ = 0.0;
    double pitch_ = 0.0;
};

/// Normalized equirectangular frame coordinate; u wraps, v clamps.
class EquirectCoord
{
public:
    EquirectCoord() = default;
    EquirectCoord(double u, double v);

    double u() const { return u_; }
    double v() const { return v_; }

    bool operator==(const EquirectCoord &) const = default;

private:
    double u_ = 0.0;
    double v_ = 0.0;
};

/// Symmetric perspective viewport. Angles in degrees.
struct Viewport
{
    Direction center;
    double vfov = 40.0;
    double hfov = 40.0;

    bool operator==(const Viewport &) const = default;
};

struct NdcPoint
{
    double x = 0.0;
    double y = 0.0;
};

struct MapPoint
{
    double x = 0.0;
    double y = 0.0;

    bool operator==(const MapPoint &) const = default;
};

enum class MapPole { nadir, zenith };

/// Azimuthal-equidistant ("planet view") minimap parameters. Map offsets are in
/// pixels from the disk center, x to the right and y downward, so map-up is -y.
struct PlanetMapConfig
{
    MapPole center_pole = MapPole::nadir;
    double up_direction_yaw = 0.0;
    double radius_px = 100.0;
};

Direction dir_from_equirect(const EquirectCoord &c);
EquirectCoord equirect_from_dir(const Direction &d);

/// 2·atan(tan(vfov/2)·aspect), clamped below 180. Throws DomainError for
/// vfov outside (0, 180) or non-positive aspect.
double hfov_from_aspect(double vfov_deg, double aspect);

Direction viewport_ray(const Viewport &vp, double ndc_x, double ndc_y);

/// Inverse of viewport_ray; empty when `d` is behind the camera or outside
/// the frustum.
std::optional<NdcPoint> dir_to_viewport(const Viewport &vp, const Direction &d);

/// Unclipped tangent-plane projection, empty only for directions at or behind
/// the image plane. Used where callers need off-frustum positions.
std::optional<NdcPoint> dir_to_viewport_plane(const Viewport &vp, const Direction &d);

MapPoint planet_project(const Direction &d, const PlanetMapConfig &cfg);
/// Throws DomainError for points outside the map disk.
Direction planet_unproject(const MapPoint &p, const PlanetMapConfig &cfg);

/// Great-circle angle in degrees, in [0, 180].
double angular_distance(const Direction &a, const Direction &b);

/// Great-circle interpolation. Throws DegenerateArcError for antipodal inputs.
Direction slerp_dir(const Direction &a, const Direction &b, double t);

} // namespace ivc
