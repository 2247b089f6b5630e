#include "ivcompare/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "ivcompare/errors.hpp"

namespace ivc {

namespace {

// Ends of the pitch range are kept exact so poles canonicalize reliably.
double clamp_pitch(double pitch) { return std::clamp(pitch, -90.0, 90.0); }

struct CameraBasis
{
    Vec3 forward;
    Vec3 right;
    Vec3 up;
};

CameraBasis camera_basis(const Direction &center)
{
    const double yaw = deg_to_rad(center.yaw());
    const double pitch = deg_to_rad(center.pitch());
    const double sy = std::sin(yaw), cy = std::cos(yaw);
    const double sp = std::sin(pitch), cp = std::cos(pitch);
    return {
        {cp * sy, sp, cp * cy},
        {cy, 0.0, -sy},
        {-sp * sy, cp, -sp * cy},
    };
}

} // namespace

double wrap_yaw(double deg)
{
    // fmod is exact, so in-range angles come back bit-identical.
    double r = std::fmod(deg, 360.0);
    if (r >= 180.0)
        r -= 360.0;
    else if (r < -180.0)
        r += 360.0;
    return r >= 180.0 ? -180.0 : r;
}

double wrap_azimuth(double deg)
{
    double r = std::fmod(deg, 360.0);
    if (r < 0.0)
        r += 360.0;
    return r >= 360.0 ? 0.0 : r;
}

double Vec3::length() const { return std::sqrt(dot(*this)); }

Vec3 Vec3::normalized() const
{
    const double len = length();
    return len > 0.0 ? *this * (1.0 / len) : *this;
}

Direction::Direction(double yaw_deg, double pitch_deg)
    : yaw_(wrap_yaw(yaw_deg)), pitch_(clamp_pitch(pitch_deg))
{
    if (std::abs(pitch_) == 90.0)
        yaw_ = 0.0;
}

Direction Direction::from_vector(const Vec3 &v)
{
    const double horizontal = std::hypot(v.x, v.z);
    const double pitch = rad_to_deg(std::atan2(v.y, horizontal));
    if (horizontal == 0.0)
        return {0.0, v.y >= 0.0 ? 90.0 : -90.0};
    return {rad_to_deg(std::atan2(v.x, v.z)), pitch};
}

Vec3 Direction::to_vector() const
{
    const double yaw = deg_to_rad(yaw_);
    const double pitch = deg_to_rad(pitch_);
    const double cp = std::cos(pitch);
    return {cp * std::sin(yaw), std::sin(pitch), cp * std::cos(yaw)};
}

EquirectCoord::EquirectCoord(double u, double v)
    : u_(wrap_azimuth(u * 360.0) / 360.0), v_(std::clamp(v, 0.0, 1.0))
{
}

Direction dir_from_equirect(const EquirectCoord &c)
{
    return {c.u() * 360.0 - 180.0, 90.0 - c.v() * 180.0};
}

EquirectCoord equirect_from_dir(const Direction &d)
{
    return {(d.yaw() + 180.0) / 360.0, (90.0 - d.pitch()) / 180.0};
}

double hfov_from_aspect(double vfov_deg, double aspect)
{
    if (!(vfov_deg > 0.0 && vfov_deg < 180.0))
        throw DomainError("vfov must lie in (0, 180) degrees");
    if (!(aspect > 0.0) || !std::isfinite(aspect))
        throw DomainError("aspect ratio must be positive and finite");
    const double h = 2.0 * rad_to_deg(std::atan(std::tan(deg_to_rad(vfov_deg) / 2.0) * aspect));
    return std::min(h, std::nextafter(180.0, 0.0));
}

Direction viewport_ray(const Viewport &vp, double ndc_x, double ndc_y)
{
    const CameraBasis basis = camera_basis(vp.center);
    const double tx = std::tan(deg_to_rad(vp.hfov) / 2.0) * ndc_x;
    const double ty = std::tan(deg_to_rad(vp.vfov) / 2.0) * ndc_y;
    return Direction::from_vector(basis.forward + basis.right * tx + basis.up * ty);
}

std::optional<NdcPoint> dir_to_viewport_plane(const Viewport &vp, const Direction &d)
{
    const CameraBasis basis = camera_basis(vp.center);
    const Vec3 v = d.to_vector();
    const double depth = v.dot(basis.forward);
    if (depth <= 1e-12)
        return std::nullopt;
    const double tx = v.dot(basis.right) / depth;
    const double ty = v.dot(basis.up) / depth;
    return NdcPoint{tx / std::tan(deg_to_rad(vp.hfov) / 2.0),
                    ty / std::tan(deg_to_rad(vp.vfov) / 2.0)};
}

std::optional<NdcPoint> dir_to_viewport(const Viewport &vp, const Direction &d)
{
    auto p = dir_to_viewport_plane(vp, d);
    if (!p || std::abs(p->x) > 1.0 || std::abs(p->y) > 1.0)
        return std::nullopt;
    return p;
}

MapPoint planet_project(const Direction &d, const PlanetMapConfig &cfg)
{
    const double polar = cfg.center_pole == MapPole::nadir ? 90.0 + d.pitch() : 90.0 - d.pitch();
    const double r = polar / 180.0 * cfg.radius_px;
    const double angle = deg_to_rad(d.yaw() - cfg.up_direction_yaw);
    return {r * std::sin(angle), -r * std::cos(angle)};
}

Direction planet_unproject(const MapPoint &p, const PlanetMapConfig &cfg)
{
    const double r = std::hypot(p.x, p.y);
    if (r > cfg.radius_px * (1.0 + 1e-12))
        throw DomainError("map point lies outside the planet disk");
    const double polar = std::min(r / cfg.radius_px, 1.0) * 180.0;
    const double yaw = r == 0.0 ? 0.0 : rad_to_deg(std::atan2(p.x, -p.y)) + cfg.up_direction_yaw;
    const double pitch = cfg.center_pole == MapPole::nadir ? polar - 90.0 : 90.0 - polar;
    return {yaw, pitch};
}

double angular_distance(const Direction &a, const Direction &b)
{
    const Vec3 va = a.to_vector();
    const Vec3 vb = b.to_vector();
    return rad_to_deg(std::atan2(va.cross(vb).length(), va.dot(vb)));
}

Direction slerp_dir(const Direction &a, const Direction &b, double t)
{
    if (t == 0.0)
        return a;
    if (t == 1.0)
        return b;
    const Vec3 va = a.to_vector();
    const Vec3 vb = b.to_vector();
    const double sin_omega = va.cross(vb).length();
    const double omega = std::atan2(sin_omega, va.dot(vb));
    if (omega > kPi - 1e-9)
        throw DegenerateArcError("cannot interpolate between antipodal directions");
    if (sin_omega < 1e-15)
        return a;
    const double wa = std::sin((1.0 - t) * omega) / sin_omega;
    const double wb = std::sin(t * omega) / sin_omega;
    return Direction::from_vector(va * wa + vb * wb);
}

} // namespace ivc
