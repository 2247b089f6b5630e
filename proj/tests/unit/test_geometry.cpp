#include <doctest.h>

#include <cmath>
#include <random>

#include "ivcompare/errors.hpp"
#include "ivcompare/geometry.hpp"

using namespace ivc;
using doctest::Approx;

namespace {

void check_dir(const Direction &d, double yaw, double pitch, double eps = 1e-9)
{
    CHECK(std::abs(wrap_yaw(d.yaw() - yaw)) <= eps);
    CHECK(std::abs(d.pitch() - pitch) <= eps);
}

} // namespace

TEST_CASE("wrap_yaw maps onto [-180, 180) and keeps in-range values bit-identical")
{
    CHECK(wrap_yaw(180.0) == -180.0);
    CHECK(wrap_yaw(-180.0) == -180.0);
    CHECK(wrap_yaw(190.0) == -170.0);
    CHECK(wrap_yaw(-190.0) == 170.0);
    CHECK(wrap_yaw(720.0 + 45.0) == 45.0);
    CHECK(wrap_yaw(-1e-300) == -1e-300);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> in(-180.0, 180.0);
    for (int i = 0; i < 1000; ++i) {
        const double v = in(rng);
        CHECK(wrap_yaw(v) == v);
    }
}

TEST_CASE("wrap_azimuth maps onto [0, 360)")
{
    CHECK(wrap_azimuth(360.0) == 0.0);
    CHECK(wrap_azimuth(-90.0) == 270.0);
    CHECK(wrap_azimuth(-1e-20) == 0.0);
    CHECK(wrap_azimuth(725.0) == 5.0);
}

TEST_CASE("Direction normalizes yaw, clamps pitch and canonicalizes poles")
{
    const Direction d{200.0, 95.0};
    CHECK(d.pitch() == 90.0);
    CHECK(d.yaw() == 0.0);
    CHECK(Direction{30.0, -90.0} == Direction{-120.0, -90.0});
    CHECK(Direction{540.0, 10.0}.yaw() == -180.0);
}

TEST_CASE("unit vector convention")
{
    const Vec3 f = Direction{0.0, 0.0}.to_vector();
    CHECK(f.z == Approx(1.0));
    const Vec3 r = Direction{90.0, 0.0}.to_vector();
    CHECK(r.x == Approx(1.0));
    const Vec3 u = Direction{0.0, 90.0}.to_vector();
    CHECK(u.y == Approx(1.0));
    check_dir(Direction::from_vector({0.0, 0.0, -2.0}), -180.0, 0.0);
    check_dir(Direction::from_vector({0.0, -3.0, 0.0}), 0.0, -90.0);
}

TEST_CASE("equirect mapping")
{
    check_dir(dir_from_equirect(EquirectCoord{0.75, 0.25}), 90.0, 45.0);
    check_dir(dir_from_equirect(EquirectCoord{0.5, 0.5}), 0.0, 0.0);
    const EquirectCoord c = equirect_from_dir(Direction{-90.0, -45.0});
    CHECK(c.u() == Approx(0.25));
    CHECK(c.v() == Approx(0.75));
    CHECK(EquirectCoord{1.25, 2.0}.u() == Approx(0.25));
    CHECK(EquirectCoord{1.25, 2.0}.v() == 1.0);
    CHECK(EquirectCoord{-0.25, -1.0}.u() == Approx(0.75));
}

TEST_CASE("equirect round trip")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> yaw(-180.0, 180.0), pitch(-89.9, 89.9);
    for (int i = 0; i < 500; ++i) {
        const Direction d{yaw(rng), pitch(rng)};
        const Direction back = dir_from_equirect(equirect_from_dir(d));
        CHECK(angular_distance(d, back) < 1e-9);
    }
}

TEST_CASE("hfov_from_aspect")
{
    // Values computed independently: 2 * atan(tan(20 deg) * aspect).
    CHECK(hfov_from_aspect(40.0, 1896.0 / 600.0) == Approx(97.98902633288411).epsilon(1e-12));
    CHECK(hfov_from_aspect(40.0, 948.0 / 600.0) == Approx(59.80408756525693).epsilon(1e-12));
    CHECK(hfov_from_aspect(40.0, 1920.0 / 600.0) == Approx(98.70210082321348).epsilon(1e-12));
    CHECK(hfov_from_aspect(40.0, 1.0) == Approx(40.0));
    CHECK(hfov_from_aspect(179.0, 1e6) < 180.0);
    CHECK_THROWS_AS(hfov_from_aspect(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(hfov_from_aspect(180.0, 1.0), DomainError);
    CHECK_THROWS_AS(hfov_from_aspect(40.0, 0.0), DomainError);
    CHECK_THROWS_AS(hfov_from_aspect(40.0, std::nan("")), DomainError);
}

TEST_CASE("viewport_ray matches rotation-matrix reference")
{
    const Viewport vp{Direction{30.0, 10.0}, 40.0, 60.0};
    check_dir(viewport_ray(vp, 0.0, 0.0), 30.0, 10.0);
    check_dir(viewport_ray(vp, 1.0, 0.0), 60.38125514247048, 8.649165105287578);
    check_dir(viewport_ray(vp, 0.0, 1.0), 30.0, 30.0);
    const Viewport wide{Direction{-150.0, -20.0}, 40.0, 98.0};
    check_dir(viewport_ray(wide, -0.5, 0.25), 179.35426491348326, -12.80704442950257);
}

TEST_CASE("dir_to_viewport inverts viewport_ray")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> yaw(-180.0, 180.0), pitch(-80.0, 80.0), ndc(-1.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const Viewport vp{Direction{yaw(rng), pitch(rng)}, 40.0, 98.0};
        const double x = ndc(rng), y = ndc(rng);
        const auto p = dir_to_viewport(vp, viewport_ray(vp, x, y));
        REQUIRE(p);
        CHECK(p->x == Approx(x).epsilon(1e-9));
        CHECK(p->y == Approx(y).epsilon(1e-9));
    }
}

TEST_CASE("dir_to_viewport rejects directions behind or outside the frustum")
{
    const Viewport vp{Direction{0.0, 0.0}, 40.0, 40.0};
    CHECK_FALSE(dir_to_viewport(vp, Direction{180.0, 0.0}));
    CHECK_FALSE(dir_to_viewport(vp, Direction{90.0, 0.0}));
    CHECK_FALSE(dir_to_viewport(vp, Direction{25.0, 0.0}));
    CHECK(dir_to_viewport(vp, Direction{19.0, 0.0}));
    CHECK(dir_to_viewport_plane(vp, Direction{25.0, 0.0}));
}

TEST_CASE("planet_project frozen values")
{
    const PlanetMapConfig nadir{};
    MapPoint p = planet_project(Direction{90.0, 0.0}, nadir);
    CHECK(p.x == Approx(50.0));
    CHECK(p.y == Approx(0.0).scale(1.0));
    p = planet_project(Direction{0.0, 45.0}, nadir);
    CHECK(p.x == Approx(0.0).scale(1.0));
    CHECK(p.y == Approx(-75.0));
    p = planet_project(Direction{-135.0, -30.0}, PlanetMapConfig{MapPole::nadir, 45.0, 100.0});
    CHECK(p.x == Approx(0.0).scale(1.0));
    CHECK(p.y == Approx(33.333333333333336));
    p = planet_project(Direction{30.0, 60.0}, PlanetMapConfig{MapPole::zenith, 0.0, 80.0});
    CHECK(p.x == Approx(6.666666666666665));
    CHECK(p.y == Approx(-11.547005383792515));
    p = planet_project(Direction{0.0, -90.0}, nadir);
    CHECK(p.x == 0.0);
    CHECK(p.y == 0.0);
}

TEST_CASE("planet_unproject inverts planet_project")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> yaw(-180.0, 180.0), pitch(-89.0, 89.0);
    for (MapPole pole : {MapPole::nadir, MapPole::zenith}) {
        const PlanetMapConfig cfg{pole, 37.0, 64.0};
        for (int i = 0; i < 300; ++i) {
            const Direction d{yaw(rng), pitch(rng)};
            CHECK(angular_distance(planet_unproject(planet_project(d, cfg), cfg), d) < 1e-9);
        }
    }
    CHECK_THROWS_AS(planet_unproject({101.0, 0.0}, PlanetMapConfig{}), DomainError);
}

TEST_CASE("angular_distance")
{
    CHECK(angular_distance(Direction{0, 0}, Direction{90, 0}) == Approx(90.0));
    CHECK(angular_distance(Direction{0, 0}, Direction{0, 90}) == Approx(90.0));
    CHECK(angular_distance(Direction{10, 20}, Direction{50, -30}) == Approx(63.10254348915593).epsilon(1e-12));
    CHECK(angular_distance(Direction{179, 0}, Direction{-179, 0}) == Approx(2.0));
    CHECK(angular_distance(Direction{12, 34}, Direction{12, 34}) == 0.0);
    // Accurate for tiny separations where acos would lose everything.
    CHECK(angular_distance(Direction{0, 0}, Direction{1e-7, 0}) == Approx(1e-7).epsilon(1e-6));
}

TEST_CASE("slerp_dir")
{
    check_dir(slerp_dir(Direction{0, 0}, Direction{90, 0}, 0.5), 45.0, 0.0);
    check_dir(slerp_dir(Direction{0, 0}, Direction{0, 60}, 0.25), 0.0, 15.0);
    check_dir(slerp_dir(Direction{10, 20}, Direction{50, -30}, 0.3), 21.72690202730725, 4.895791092551667);
    check_dir(slerp_dir(Direction{170, 0}, Direction{-170, 0}, 0.5), -180.0, 0.0);
    CHECK(slerp_dir(Direction{1, 2}, Direction{3, 4}, 0.0) == Direction{1, 2});
    CHECK(slerp_dir(Direction{1, 2}, Direction{3, 4}, 1.0) == Direction{3, 4});
    CHECK_THROWS_AS(slerp_dir(Direction{0, 0}, Direction{180, 0}, 0.5), DegenerateArcError);
}

TEST_CASE("slerp_dir moves at constant angular speed")
{
    const Direction a{-20, 10}, b{70, -40};
    const double total = angular_distance(a, b);
    for (double t : {0.1, 0.35, 0.6, 0.9})
        CHECK(angular_distance(a, slerp_dir(a, b, t)) == Approx(t * total).epsilon(1e-9));
}
