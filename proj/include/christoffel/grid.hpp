#pragma once

#include <array>
#include <functional>
#include <memory>
#include <vector>

#include "christoffel/harmonics.hpp"

namespace christoffel {

enum class GridMode { FullS2, Axisymmetric };

/// Discretization of S^n: a full spherical grid for n = 2 (spectral degree L)
/// or the rotationally symmetric colatitude reduction for general n (M nodes).
/// Grids are antipodally closed by construction: the antipodal map is an exact
/// index involution, so evenness is a bit-testable property.
class Grid {
public:
    static std::shared_ptr<const Grid> build(int n, GridMode mode, int resolution);

    int dimension() const { return n_; }
    GridMode mode() const { return mode_; }
    int resolution() const { return resolution_; }
    std::size_t node_count() const { return count_; }
    double area() const; // |S^n|

    double theta(std::size_t k) const;
    double lambda(std::size_t k) const; // 0 in axisymmetric mode
    double cos_theta(std::size_t k) const;
    double sin_theta(std::size_t k) const;
    double weight(std::size_t k) const;
    std::size_t antipodal(std::size_t k) const { return antipodal_[k]; }

    /// Unit direction in R^(n+1), reduced to (x_axis-orthogonal, 0, x_axis) for
    /// axisymmetric grids. Exactly antipodally symmetric.
    std::array<double, 3> direction(std::size_t k) const;

    const S2Harmonics& s2() const;
    const ZonalCosine& zonal() const;

private:
    Grid() = default;
    int n_ = 2;
    GridMode mode_ = GridMode::FullS2;
    int resolution_ = 0;
    std::size_t count_ = 0;
    std::vector<std::size_t> antipodal_;
    std::unique_ptr<S2Harmonics> s2_;
    std::unique_ptr<ZonalCosine> zonal_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Scalar function sampled on a grid; one value per node, finite everywhere.
struct SphericalField {
    GridPtr grid;
    std::vector<double> values;

    SphericalField() = default;
    SphericalField(GridPtr g, std::vector<double> v);
    static SphericalField constant(GridPtr g, double value);

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t k) const { return values[k]; }
    double& operator[](std::size_t k) { return values[k]; }
    double min() const;
    double max() const;
    double max_abs() const;
};

/// Tangential gradient components in the local orthonormal frame.
/// FullS2: (d/dtheta, d/dlambda / sin theta); axisymmetric: radial component only.
struct GradientField {
    GridPtr grid;
    std::vector<double> comp_theta;
    std::vector<double> comp_lambda; // empty in axisymmetric mode

    double dot_at(std::size_t k, const GradientField& other) const {
        double d = comp_theta[k] * other.comp_theta[k];
        if (!comp_lambda.empty()) d += comp_lambda[k] * other.comp_lambda[k];
        return d;
    }
    double squared_at(std::size_t k) const { return dot_at(k, *this); }
};

/// Covariant Hessian in the orthonormal frame.
/// FullS2: symmetric 2x2 per node (a_tt, a_tl, a_ll).
/// Axisymmetric: eigen-entries (a_tt = radial, a_ll = tangential with
/// multiplicity n-1), a_tl empty.
struct FrameHessianField {
    GridPtr grid;
    std::vector<double> a_tt;
    std::vector<double> a_tl;
    std::vector<double> a_ll;
};

SphericalField make_field(GridPtr g, const std::function<double(double, double)>& fn_theta_lambda);

SphericalField laplacian(const SphericalField& f);
GradientField gradient(const SphericalField& f);
SphericalField gradient_squared(const SphericalField& f);
FrameHessianField hessian(const SphericalField& f);
double integrate(const SphericalField& f);
SphericalField symmetrize_even(const SphericalField& f);
/// max_k |f(x_k) - f(-x_k)|
double evenness_deviation(const SphericalField& f);

/// trace of the frame Hessian, accounting for tangential multiplicity.
SphericalField hessian_trace(const FrameHessianField& h);

void check_finite(const SphericalField& f, const char* what);

} // namespace christoffel
