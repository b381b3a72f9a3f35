#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "christoffel/core.hpp"
#include "christoffel/errors.hpp"
#include "support.hpp"

using namespace christoffel;

namespace {

SphericalField cos_theta_field(const GridPtr& g) {
    std::vector<double> v(g->node_count());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = g->cos_theta(k);
    return {g, std::move(v)};
}

SphericalField harmonic_field(const GridPtr& g, int l, int m) {
    S2Coeffs c = S2Coeffs::zeros(g->s2().degree());
    c.c[c.cos_index(l, m)] = 1.0;
    return {g, g->s2().synthesize(c)};
}

} // namespace

TEST_CASE("residual: constant solutions and the f = 0 degenerate case") {
    const auto g = Grid::build(2, GridMode::FullS2, 16);
    const SupportField phi(SphericalField::constant(g, std::sqrt(5.0)));
    const PrescribedData f(SphericalField::constant(g, 4.0));
    CHECK(residual(phi, f, 2).max_abs() < 1e-12);

    CHECK(residual_raw(SphericalField::constant(g, 1.0), SphericalField::constant(g, 0.0), 2)
              .max_abs() < 1e-12);

    std::vector<double> bad(g->node_count(), 1.0);
    bad[3] = -0.2;
    CHECK_THROWS_AS(SupportField(SphericalField{g, bad}), FieldConstraintError);
    CHECK_THROWS_AS(residual_raw(SphericalField{g, bad}, f.f, 2), FieldConstraintError);
}

TEST_CASE("residual: translated closed-form family") {
    const auto g = Grid::build(2, GridMode::FullS2, 16);
    const PrescribedData f(SphericalField::constant(g, 4.0));
    for (double a : {0.1, 0.3}) {
        const SupportField phi = constant_solution(g, 4.0, 2, {a, 0.0, 0.0});
        CHECK(residual(phi, f, 2).max_abs() < 1e-9);
        CHECK_FALSE(phi.is_even);
    }
    // evaluate the printed formula directly as an independent spot check
    const SupportField phi = constant_solution(g, 4.0, 2, {0.3, 0.0, 0.0});
    const std::size_t k = g->node_count() / 3;
    const auto d = g->direction(k);
    const double expected = std::sqrt(5.0) * (std::sqrt(1.09) - 0.3 * d[0]);
    CHECK(phi.phi[k] == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("u_matrix: constants and trace consistency") {
    const auto g = Grid::build(2, GridMode::FullS2, 12);
    const UMatrixField U2 = u_matrix(SupportField(SphericalField::constant(g, 2.0)), 2);
    for (std::size_t k = 0; k < g->node_count(); ++k) {
        CHECK(U2.a_tt[k] == doctest::Approx(0.75).epsilon(1e-11));
        CHECK(U2.a_ll[k] == doctest::Approx(0.75).epsilon(1e-11));
        CHECK(std::abs(U2.a_tl[k]) < 1e-11);
    }
    CHECK(U2.min_eig_global == doctest::Approx(0.75).epsilon(1e-10));

    const UMatrixField U1 = u_matrix(SupportField(SphericalField::constant(g, 1.0)), 2);
    CHECK(std::abs(U1.min_eig_global) < 1e-11);

    // trace(U) = residual + f/phi for random band-limited phi > 1
    std::mt19937_64 rng(42);
    for (int rep = 0; rep < 5; ++rep) {
        SphericalField noise = testsupport::random_bandlimited(g, 6, rng, false);
        const double amp = 0.1 / std::max(1.0, noise.max_abs());
        std::vector<double> v(g->node_count());
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = 2.0 + amp * noise[k];
        const SupportField phi(SphericalField{g, std::move(v)});
        const PrescribedData fr(SphericalField::constant(g, 1.5));
        const UMatrixField U = u_matrix(phi, 2);
        const SphericalField res = residual(phi, fr, 2);
        double err = 0.0;
        for (std::size_t k = 0; k < res.size(); ++k)
            err = std::max(err, std::abs(U.trace_at(k) - (res[k] + fr.f[k] / phi.phi[k])));
        CHECK(err < 1e-9);
    }

    // axisymmetric entries for constants across dimensions
    for (int n : {3, 5}) {
        const auto gz = Grid::build(n, GridMode::Axisymmetric, 32);
        const UMatrixField Uz = u_matrix(SupportField(SphericalField::constant(gz, 2.0)), n);
        for (std::size_t k = 0; k < gz->node_count(); ++k) {
            CHECK(Uz.a_tt[k] == doctest::Approx(0.75).epsilon(1e-11));
            CHECK(Uz.a_ll[k] == doctest::Approx(0.75).epsilon(1e-11));
        }
    }
}

TEST_CASE("linearize: collapse to Lap + n at the constant solution") {
    const auto g = Grid::build(2, GridMode::FullS2, 16);
    const SupportField phi(SphericalField::constant(g, std::sqrt(5.0)));
    const PrescribedData f(SphericalField::constant(g, 4.0));
    const JacobianOperator J = linearize(phi, f, 2);

    const SphericalField k1 = cos_theta_field(g); // degree-1 harmonic: kernel
    CHECK(J.apply(k1).max_abs() < 1e-10);

    const SphericalField y2 = harmonic_field(g, 2, 0); // even, eigenvalue -6
    const SphericalField jy2 = J.apply(y2);
    double err = 0.0;
    for (std::size_t k = 0; k < y2.size(); ++k)
        err = std::max(err, std::abs(jy2[k] + 4.0 * y2[k]));
    CHECK(err < 1e-10);
}

TEST_CASE("linearize: central-difference oracle at nonconstant phi") {
    const auto g = Grid::build(2, GridMode::FullS2, 16);
    std::vector<double> v(g->node_count());
    for (std::size_t k = 0; k < v.size(); ++k) {
        const double t = g->cos_theta(k);
        v[k] = std::sqrt(5.0) + 0.1 * t * t;
    }
    const SupportField phi(SphericalField{g, v});
    const PrescribedData f(SphericalField::constant(g, 4.0));
    const JacobianOperator J = linearize(phi, f, 2);

    std::mt19937_64 rng(314);
    SphericalField psi = testsupport::random_bandlimited(g, 5, rng, false);
    const double scale = 1.0 / std::max(1.0, psi.max_abs());
    for (auto& x : psi.values) x *= scale;
    const SphericalField jpsi = J.apply(psi);

    double errs[2];
    int idx = 0;
    for (double eps : {1e-3, 1e-4}) {
        std::vector<double> vp(v), vm(v);
        for (std::size_t k = 0; k < v.size(); ++k) {
            vp[k] += eps * psi[k];
            vm[k] -= eps * psi[k];
        }
        const SphericalField rp = residual_raw(SphericalField{g, vp}, f.f, 2);
        const SphericalField rm = residual_raw(SphericalField{g, vm}, f.f, 2);
        double err = 0.0;
        for (std::size_t k = 0; k < v.size(); ++k)
            err = std::max(err, std::abs((rp[k] - rm[k]) / (2.0 * eps) - jpsi[k]));
        errs[idx++] = err;
    }
    CHECK(errs[0] < 1e-5);             // O(eps^2) at eps = 1e-3
    CHECK(errs[1] < errs[0] / 30.0);   // and shrinks quadratically
}

TEST_CASE("check_conditions: constants, odd perturbations, generator sweep") {
    const auto g = Grid::build(2, GridMode::FullS2, 16);
    const double gamma = 4.0;
    const AdmissibilityReport rc = check_conditions(PrescribedData(SphericalField::constant(g, gamma)), 2);
    CHECK(rc.even_ok);
    const double expected = (1.0 / gamma) / ((8.0 / 2) * gamma + 2.0);
    CHECK(rc.cond2_min_eigenvalue == doctest::Approx(expected).epsilon(1e-9));
    CHECK(rc.cond2_ok);

    SphericalField odd = cos_theta_field(g);
    for (auto& x : odd.values) x = 1.0 + 0.1 * x;
    const AdmissibilityReport ro = check_conditions(PrescribedData(odd), 2);
    CHECK_FALSE(ro.even_ok);
    CHECK(ro.even_deviation > 0.19);
    CHECK(ro.even_deviation <= 0.2 + 1e-12);

    // Remark-style generator: find the admissibility threshold by sweep
    std::vector<double> hv(g->node_count());
    for (std::size_t k = 0; k < hv.size(); ++k) {
        const double t = g->cos_theta(k);
        hv[k] = 1.0 + 0.3 * t * t;
    }
    const SphericalField h{g, hv};
    const double cstar = find_admissible_c(h, 2);
    CHECK(cstar >= 0.0);
    CHECK(check_conditions(generate_admissible_f(h, cstar), 2).cond2_ok);
    CHECK(check_conditions(generate_admissible_f(h, 2.0 * cstar + 1.0), 2).cond2_ok);
    if (cstar > 1e-3)
        CHECK_FALSE(check_conditions(generate_admissible_f(h, 0.5 * cstar), 2).cond2_ok);
}

TEST_CASE("generate_admissible_f: pinned value and monotonicity") {
    const auto g = Grid::build(2, GridMode::FullS2, 8);
    const PrescribedData f = generate_admissible_f(SphericalField::constant(g, 1.0), 1.0);
    CHECK(f.f.max_abs() == doctest::Approx(0.5).epsilon(1e-15));

    std::vector<double> hv(g->node_count());
    for (std::size_t k = 0; k < hv.size(); ++k) hv[k] = 1.0 + 0.5 * g->sin_theta(k);
    const SphericalField h{g, hv};
    const PrescribedData f1 = generate_admissible_f(h, 1.0);
    const PrescribedData f2 = generate_admissible_f(h, 3.0);
    for (std::size_t k = 0; k < hv.size(); ++k) CHECK(f2.f[k] < f1.f[k]);

    CHECK_THROWS_AS(generate_admissible_f(h, -1.0), InvalidArgument);
    std::vector<double> hbad(g->node_count(), 1.0);
    hbad[0] = 0.0;
    CHECK_THROWS_AS(generate_admissible_f(SphericalField{g, hbad}, 1.0), FieldConstraintError);
}

TEST_CASE("homotopy_f: endpoints and the harmonic midpoint") {
    const auto g = Grid::build(2, GridMode::FullS2, 8);
    std::vector<double> fv(g->node_count(), 4.0);
    fv[0] = 2.0; // a node with f = 2, max f = 4
    const PrescribedData f(SphericalField{g, fv});

    const PrescribedData f0 = homotopy_f(f, 0.0);
    for (std::size_t k = 0; k < fv.size(); ++k)
        CHECK(f0.f[k] == doctest::Approx(4.0).epsilon(1e-15));
    const PrescribedData f1 = homotopy_f(f, 1.0);
    for (std::size_t k = 0; k < fv.size(); ++k)
        CHECK(f1.f[k] == doctest::Approx(fv[k]).epsilon(1e-15));
    const PrescribedData fh = homotopy_f(f, 0.5);
    CHECK(fh.f[0] == doctest::Approx(8.0 / 3.0).epsilon(1e-15));

    CHECK_THROWS_AS(homotopy_f(f, -0.1), InvalidArgument);
    CHECK_THROWS_AS(homotopy_f(f, 1.1), InvalidArgument);
}

TEST_CASE("constant_solution: values, rejection, axisymmetric restrictions") {
    const auto g = Grid::build(2, GridMode::FullS2, 8);
    const SupportField phi = constant_solution(g, 4.0, 2);
    CHECK(phi.is_even);
    for (std::size_t k = 0; k < phi.phi.size(); ++k)
        CHECK(phi.phi[k] == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));

    CHECK_THROWS_AS(constant_solution(g, 4.0, 2, {50.0, 0.0, 0.0}), FieldConstraintError);
    CHECK_THROWS_AS(constant_solution(g, -1.0, 2), InvalidArgument);

    const auto gz = Grid::build(3, GridMode::Axisymmetric, 32);
    CHECK_THROWS_AS(constant_solution(gz, 4.0, 3, {0.1, 0.0, 0.0}), InvalidArgument);
    const SupportField pz = constant_solution(gz, 4.0, 3, {0.0, 0.0, 0.2});
    const PrescribedData fz(SphericalField::constant(gz, 4.0));
    CHECK(residual(pz, fz, 3).max_abs() < 1e-9);
}

TEST_CASE("evenness propagation: even phi and f give an even residual") {
    const auto g = Grid::build(2, GridMode::FullS2, 16);
    std::mt19937_64 rng(2718);
    SphericalField noise = testsupport::random_bandlimited(g, 6, rng, true);
    const double amp = 0.2 / std::max(1.0, noise.max_abs());
    std::vector<double> pv(g->node_count()), fv(g->node_count());
    for (std::size_t k = 0; k < pv.size(); ++k) {
        pv[k] = 2.0 + amp * noise[k];
        fv[k] = 3.0 + 0.4 * g->cos_theta(k) * g->cos_theta(k);
    }
    const SupportField phi(SphericalField{g, pv});
    const PrescribedData f(SphericalField{g, fv});
    CHECK(phi.is_even);
    const SphericalField res = residual(phi, f, 2);
    CHECK(evenness_deviation(res) < 1e-12);
}
