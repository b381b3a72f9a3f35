#include "christoffel/grid.hpp"

#include <cmath>

#include "christoffel/errors.hpp"
#include "christoffel/util.hpp"

namespace christoffel {

namespace {
constexpr double kPi = 3.14159265358979323846;
} // namespace

std::shared_ptr<const Grid> Grid::build(int n, GridMode mode, int resolution) {
    if (n < 2) throw InvalidArgument("sphere dimension n must be >= 2");
    if (resolution < 4) throw InvalidArgument("resolution too small (need >= 4)");
    if (mode == GridMode::FullS2 && n != 2)
        throw InvalidArgument("full-S2 mode requires n = 2 (use axisymmetric for n > 2)");

    auto grid = std::shared_ptr<Grid>(new Grid());
    grid->n_ = n;
    grid->mode_ = mode;
    grid->resolution_ = resolution;
    if (mode == GridMode::FullS2) {
        grid->s2_ = std::make_unique<S2Harmonics>(resolution);
        const int nlat = grid->s2_->nlat();
        const int nlon = grid->s2_->nlon();
        grid->count_ = static_cast<std::size_t>(nlat) * nlon;
        grid->antipodal_.resize(grid->count_);
        const int half = nlon / 2;
        for (int i = 0; i < nlat; ++i)
            for (int j = 0; j < nlon; ++j)
                grid->antipodal_[static_cast<std::size_t>(i) * nlon + j] =
                    static_cast<std::size_t>(nlat - 1 - i) * nlon + (j + half) % nlon;
    } else {
        grid->zonal_ = std::make_unique<ZonalCosine>(n, resolution);
        grid->count_ = static_cast<std::size_t>(resolution);
        grid->antipodal_.resize(grid->count_);
        for (int i = 0; i < resolution; ++i)
            grid->antipodal_[i] = static_cast<std::size_t>(resolution - 1 - i);
    }
    return grid;
}

double Grid::area() const {
    if (mode_ == GridMode::FullS2) return 4.0 * kPi;
    return zonal_->sphere_area();
}

double Grid::theta(std::size_t k) const {
    if (mode_ == GridMode::FullS2) return s2_->node_theta(static_cast<int>(k / s2_->nlon()));
    return zonal_->node_theta(static_cast<int>(k));
}

double Grid::lambda(std::size_t k) const {
    if (mode_ == GridMode::FullS2) return s2_->node_lambda(static_cast<int>(k % s2_->nlon()));
    return 0.0;
}

double Grid::cos_theta(std::size_t k) const {
    if (mode_ == GridMode::FullS2) return s2_->node_cos_theta(static_cast<int>(k / s2_->nlon()));
    return zonal_->node_cos_theta(static_cast<int>(k));
}

double Grid::sin_theta(std::size_t k) const {
    if (mode_ == GridMode::FullS2) return s2_->node_sin_theta(static_cast<int>(k / s2_->nlon()));
    return zonal_->node_sin_theta(static_cast<int>(k));
}

double Grid::weight(std::size_t k) const {
    if (mode_ == GridMode::FullS2) return s2_->node_weight(k);
    return zonal_->node_weight(static_cast<int>(k));
}

std::array<double, 3> Grid::direction(std::size_t k) const {
    std::array<double, 3> d{};
    if (mode_ == GridMode::FullS2) {
        s2_->node_direction(k, d.data());
    } else {
        d = {zonal_->node_sin_theta(static_cast<int>(k)), 0.0,
             zonal_->node_cos_theta(static_cast<int>(k))};
    }
    return d;
}

const S2Harmonics& Grid::s2() const {
    if (!s2_) throw InvalidArgument("operation requires a full-S2 grid");
    return *s2_;
}

const ZonalCosine& Grid::zonal() const {
    if (!zonal_) throw InvalidArgument("operation requires an axisymmetric grid");
    return *zonal_;
}

SphericalField::SphericalField(GridPtr g, std::vector<double> v)
    : grid(std::move(g)), values(std::move(v)) {
    if (!grid) throw InvalidArgument("field requires a grid");
    if (values.size() != grid->node_count())
        throw InvalidArgument("field length does not equal grid node count");
}

SphericalField SphericalField::constant(GridPtr g, double value) {
    std::vector<double> v(g->node_count(), value);
    return SphericalField(std::move(g), std::move(v));
}

double SphericalField::min() const {
    double m = values[0];
    for (double v : values) m = std::min(m, v);
    return m;
}

double SphericalField::max() const {
    double m = values[0];
    for (double v : values) m = std::max(m, v);
    return m;
}

double SphericalField::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

void check_finite(const SphericalField& f, const char* what) {
    for (double v : f.values)
        if (!std::isfinite(v)) throw FieldConstraintError(std::string(what) + ": non-finite value");
}

SphericalField make_field(GridPtr g, const std::function<double(double, double)>& fn) {
    std::vector<double> v(g->node_count());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = fn(g->theta(k), g->lambda(k));
    return SphericalField(std::move(g), std::move(v));
}

SphericalField laplacian(const SphericalField& f) {
    check_finite(f, "laplacian");
    const Grid& g = *f.grid;
    if (g.mode() == GridMode::FullS2) return {f.grid, g.s2().laplacian(f.values)};
    return {f.grid, g.zonal().laplacian(f.values)};
}

GradientField gradient(const SphericalField& f) {
    check_finite(f, "gradient");
    const Grid& g = *f.grid;
    GradientField out;
    out.grid = f.grid;
    if (g.mode() == GridMode::FullS2) {
        g.s2().gradient(f.values, out.comp_theta, out.comp_lambda);
    } else {
        out.comp_theta = g.zonal().derivative(f.values);
    }
    return out;
}

SphericalField gradient_squared(const SphericalField& f) {
    const GradientField grad = gradient(f);
    std::vector<double> v(f.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = grad.squared_at(k);
    return {f.grid, std::move(v)};
}

FrameHessianField hessian(const SphericalField& f) {
    check_finite(f, "hessian");
    const Grid& g = *f.grid;
    FrameHessianField out;
    out.grid = f.grid;
    if (g.mode() == GridMode::FullS2) {
        g.s2().hessian(f.values, out.a_tt, out.a_tl, out.a_ll);
    } else {
        const auto& z = g.zonal();
        out.a_tt = z.second_derivative(f.values);
        const std::vector<double> d1 = z.derivative(f.values);
        out.a_ll.resize(f.size());
        for (std::size_t k = 0; k < f.size(); ++k)
            out.a_ll[k] = z.node_cot_theta(static_cast<int>(k)) * d1[k];
    }
    return out;
}

double integrate(const SphericalField& f) {
    check_finite(f, "integrate");
    KahanSum acc;
    for (std::size_t k = 0; k < f.size(); ++k) acc.add(f.grid->weight(k) * f.values[k]);
    return acc.value();
}

SphericalField symmetrize_even(const SphericalField& f) {
    std::vector<double> v(f.size());
    for (std::size_t k = 0; k < f.size(); ++k)
        v[k] = 0.5 * (f.values[k] + f.values[f.grid->antipodal(k)]);
    return {f.grid, std::move(v)};
}

double evenness_deviation(const SphericalField& f) {
    double dev = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k)
        dev = std::max(dev, std::abs(f.values[k] - f.values[f.grid->antipodal(k)]));
    return dev;
}

SphericalField hessian_trace(const FrameHessianField& h) {
    const Grid& g = *h.grid;
    std::vector<double> v(g.node_count());
    const double mult = (g.mode() == GridMode::FullS2) ? 1.0 : g.dimension() - 1.0;
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = h.a_tt[k] + mult * h.a_ll[k];
    return {h.grid, std::move(v)};
}

} // namespace christoffel
