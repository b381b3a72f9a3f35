#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "christoffel/errors.hpp"
#include "christoffel/geometry.hpp"
#include "support.hpp"

using namespace christoffel;

namespace {
constexpr double kPi = 3.14159265358979323846;

SupportField noisy_h_convex(const GridPtr& g, std::mt19937_64& rng) {
    const SphericalField noise = testsupport::random_bandlimited(g, 5, rng, true);
    double amp = 0.1 / std::max(1.0, noise.max_abs());
    while (true) { // shrink until the Hessian no longer overwhelms the shift
        std::vector<double> v(g->node_count());
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = 2.0 + amp * noise[k];
        SupportField phi(SphericalField{g, std::move(v)});
        if (phi.min_phi > 1.0 && u_matrix(phi, 2).min_eig_global > 0.05) return phi;
        amp *= 0.5;
    }
}
} // namespace

TEST_CASE("embed: geodesic spheres in closed form") {
    const auto g = Grid::build(2, GridMode::FullS2, 12);
    const double c = std::exp(1.0);
    const EmbeddedHypersurface surf = embed(SupportField(SphericalField::constant(g, c)), 2);
    for (std::size_t k = 0; k < g->node_count(); ++k) {
        const auto d = g->direction(k);
        for (int i = 0; i < 3; ++i)
            CHECK(surf.point[k][i] == doctest::Approx(-std::sinh(1.0) * d[i]).epsilon(1e-11));
        CHECK(surf.point[k][3] == doctest::Approx(std::cosh(1.0)).epsilon(1e-12));
        CHECK(minkowski_dot(surf.point[k], surf.point[k]) == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(surf.cosh_r[k] == doctest::Approx(0.5 * (c + 1.0 / c)).epsilon(1e-12));
        CHECK(surf.v_dot_nu[k] == doctest::Approx(0.5 * (c - 1.0 / c)).epsilon(1e-12));
    }
}

TEST_CASE("embed: hyperboloid and normal certificates on generic h-convex fields") {
    std::mt19937_64 rng(21);
    const auto g = Grid::build(2, GridMode::FullS2, 16);
    for (int rep = 0; rep < 3; ++rep) {
        const SupportField phi = noisy_h_convex(g, rng);
        const EmbeddedHypersurface surf = embed(phi, 2);
        double dx = 0.0, dn = 0.0, dortho = 0.0, dradial = 0.0;
        for (std::size_t k = 0; k < g->node_count(); ++k) {
            dx = std::max(dx, std::abs(minkowski_dot(surf.point[k], surf.point[k]) + 1.0));
            dn = std::max(dn, std::abs(minkowski_dot(surf.normal[k], surf.normal[k]) - 1.0));
            dortho = std::max(dortho, std::abs(minkowski_dot(surf.point[k], surf.normal[k])));
            dradial = std::max(dradial,
                               std::abs(surf.cosh_r[k] - surf.v_dot_nu[k] - 1.0 / phi.phi[k]));
            CHECK(surf.point[k][3] > 0.0);
        }
        CHECK(dx < 1e-9);
        CHECK(dn < 1e-9);
        CHECK(dortho < 1e-9);
        CHECK(dradial < 1e-10);
    }

    // axisymmetric embedding satisfies the same certificates
    const auto gz = Grid::build(3, GridMode::Axisymmetric, 48);
    const SupportField pz = constant_solution(gz, 4.0, 3, {0.0, 0.0, 0.3});
    const EmbeddedHypersurface sz = embed(pz, 3);
    for (std::size_t k = 0; k < gz->node_count(); ++k) {
        CHECK(std::abs(minkowski_dot(sz.point[k], sz.point[k]) + 1.0) < 1e-10);
        CHECK(std::abs(minkowski_dot(sz.normal[k], sz.normal[k]) - 1.0) < 1e-10);
        CHECK(std::abs(minkowski_dot(sz.point[k], sz.normal[k])) < 1e-10);
    }
}

TEST_CASE("embed/shape: non-h-convex inputs rejected") {
    const auto g = Grid::build(2, GridMode::FullS2, 12);
    CHECK_THROWS_AS(embed(SupportField(SphericalField::constant(g, 1.0)), 2),
                    FieldConstraintError);
    std::vector<double> wild(g->node_count());
    for (std::size_t k = 0; k < wild.size(); ++k) {
        const double t = g->cos_theta(k);
        wild[k] = std::sqrt(5.0) + 1.5 * t * t; // Hessian overwhelms the shift
    }
    CHECK_THROWS_AS(shape(SupportField(SphericalField{g, wild}), 2), FieldConstraintError);
}

TEST_CASE("shape: geodesic-sphere curvatures against coth") {
    const auto g = Grid::build(2, GridMode::FullS2, 8);
    {
        const ShapeData sh = shape(SupportField(SphericalField::constant(g, 2.0)), 2);
        for (std::size_t k = 0; k < g->node_count(); ++k) {
            CHECK(sh.kappa1[k] == doctest::Approx(5.0 / 3.0).epsilon(1e-10));
            CHECK(sh.kappa1[k] ==
                  doctest::Approx(1.0 / std::tanh(std::log(2.0))).epsilon(1e-10));
            CHECK(sh.radius1[k] == doctest::Approx(1.5).epsilon(1e-10));
            CHECK(sh.radius2[k] == doctest::Approx(1.5).epsilon(1e-10));
            // sum of radii = (n/2)(c^2 - 1)/... for constants: phi tr U = f
            CHECK(sh.radius1[k] + sh.radius2[k] == doctest::Approx(3.0).epsilon(1e-10));
        }
    }
    {
        const double c = std::exp(1.0);
        const ShapeData sh = shape(SupportField(SphericalField::constant(g, c)), 2);
        for (std::size_t k = 0; k < g->node_count(); ++k)
            CHECK(sh.kappa1[k] == doctest::Approx(1.0 / std::tanh(1.0)).epsilon(1e-10));
    }
}

TEST_CASE("christoffel_residual: solved instances and the trace identity") {
    const auto g = Grid::build(2, GridMode::FullS2, 16);
    const SupportField phi(SphericalField::constant(g, std::sqrt(5.0)));
    const PrescribedData f(SphericalField::constant(g, 4.0));
    CHECK(christoffel_residual(phi, f, 2).max_abs() < 1e-11);

    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 3; ++rep) {
        const SupportField p = noisy_h_convex(g, rng);
        // f := phi * trace-of-LHS makes the residual vanish by construction
        const SphericalField lhs = residual_raw(p.phi, SphericalField::constant(g, 0.0), 2);
        std::vector<double> fv(g->node_count());
        for (std::size_t k = 0; k < fv.size(); ++k) fv[k] = p.phi[k] * lhs[k];
        const PrescribedData fmade(SphericalField{g, fv});
        CHECK(christoffel_residual(p, fmade, 2).max_abs() < 1e-9);

        // and against an arbitrary prescribed field: sum R_i - f = phi * residual
        const PrescribedData farb(SphericalField::constant(g, 3.0));
        const SphericalField a = christoffel_residual(p, farb, 2);
        const SphericalField b = residual(p, farb, 2);
        double err = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k)
            err = std::max(err, std::abs(a[k] - p.phi[k] * b[k]));
        CHECK(err < 1e-9);
    }
}

TEST_CASE("integral identity: constant-sphere oracle fixes the coefficient") {
    const auto g = Grid::build(2, GridMode::FullS2, 12);
    const SupportField phi2(SphericalField::constant(g, 2.0));
    const IdentityCheck chk = integral_identity_check(phi2, 0, 2);
    CHECK(chk.lhs == doctest::Approx(1.5 * kPi).epsilon(1e-12));
    CHECK(chk.rhs == doctest::Approx(1.5 * kPi).epsilon(1e-12));
    CHECK(chk.relative_gap < 1e-12);
    // the printed coefficient would fail by exactly (C_n^{k+1}/C_n^k)^2
    CHECK(chk.lhs / chk.rhs_printed == doctest::Approx(4.0).epsilon(1e-12));

    // constants across dimensions and all k: lhs/rhs = 1 in closed form
    for (int n : {3, 5}) {
        const auto gz = Grid::build(n, GridMode::Axisymmetric, 48);
        const SupportField pc(SphericalField::constant(gz, 1.7));
        for (int k = 0; k <= n - 1; ++k) {
            const IdentityCheck c = integral_identity_check(pc, k, n);
            CHECK(c.relative_gap < 1e-12);
            const double ratio = c.lhs / c.rhs_printed;
            double binom_ratio = 1.0;
            {
                auto binom = [](int nn, int kk) {
                    double r = 1.0;
                    for (int i = 1; i <= kk; ++i) r = r * (nn - kk + i) / i;
                    return r;
                };
                binom_ratio = binom(n, k + 1) / binom(n, k);
            }
            CHECK(ratio == doctest::Approx(binom_ratio * binom_ratio).epsilon(1e-11));
        }
    }

    CHECK_THROWS_AS(integral_identity_check(phi2, 2, 2), InvalidArgument);
    CHECK_THROWS_AS(integral_identity_check(phi2, -1, 2), InvalidArgument);
}

TEST_CASE("integral identity on a nonconstant h-convex field is nontrivial but consistent") {
    std::mt19937_64 rng(100);
    const auto g = Grid::build(2, GridMode::FullS2, 24);
    const SupportField phi = noisy_h_convex(g, rng);
    for (int k = 0; k <= 1; ++k) {
        const IdentityCheck chk = integral_identity_check(phi, k, 2);
        CHECK(chk.relative_gap < 1e-10); // the identity holds for any closed h-convex surface
        CHECK(std::abs(chk.lhs / chk.rhs_printed - 1.0) > 0.1); // printed coefficient fails
    }
}

TEST_CASE("support duality: constants exact, discrete sup never exceeds") {
    const auto g = Grid::build(2, GridMode::FullS2, 16);
    const DualityCheck dc = support_duality_check(SupportField(SphericalField::constant(g, 2.0)), 2);
    CHECK(dc.max_abs_deviation < 1e-10);
    CHECK(dc.max_signed_deviation <= 1e-12);

    std::mt19937_64 rng(17);
    const SupportField phi = noisy_h_convex(g, rng);
    const DualityCheck dn = support_duality_check(phi, 2);
    CHECK(dn.max_signed_deviation <= 1e-12);

    const auto gz = Grid::build(3, GridMode::Axisymmetric, 48);
    const DualityCheck dz =
        support_duality_check(SupportField(SphericalField::constant(gz, 2.0)), 3);
    CHECK(dz.max_abs_deviation < 1e-10);
    CHECK(dz.max_signed_deviation <= 1e-12);
}

TEST_CASE("export_ball_mesh: geodesic sphere lands on radius tanh(1/2)") {
    const auto g = Grid::build(2, GridMode::FullS2, 8);
    const EmbeddedHypersurface surf =
        embed(SupportField(SphericalField::constant(g, std::exp(1.0))), 2);
    const auto path = std::filesystem::temp_directory_path() / "christoffel_test_mesh.obj";
    export_ball_mesh(surf, path);

    std::ifstream in(path);
    REQUIRE(in.good());
    std::string line;
    std::size_t vertices = 0, faces = 0;
    const double target = std::tanh(0.5);
    while (std::getline(in, line)) {
        if (line.rfind("v ", 0) == 0) {
            ++vertices;
            std::istringstream ss(line.substr(2));
            double x, y, z;
            ss >> x >> y >> z;
            const double r = std::sqrt(x * x + y * y + z * z);
            CHECK(r == doctest::Approx(target).epsilon(1e-12));
            CHECK(r < 1.0);
        } else if (line.rfind("f ", 0) == 0) {
            ++faces;
        }
    }
    CHECK(vertices == g->node_count());
    const std::size_t nlat = g->s2().nlat(), nlon = g->s2().nlon();
    CHECK(faces == 2 * (nlat - 1) * nlon);
    std::filesystem::remove(path);

    const auto gz = Grid::build(3, GridMode::Axisymmetric, 16);
    const EmbeddedHypersurface sz = embed(SupportField(SphericalField::constant(gz, 2.0)), 3);
    CHECK_THROWS_AS(export_ball_mesh(sz, path), InvalidArgument);
}
