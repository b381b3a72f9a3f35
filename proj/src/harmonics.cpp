#include "christoffel/harmonics.hpp"

#include <cmath>
#include <cstddef>

#include "christoffel/errors.hpp"

namespace christoffel {

namespace {
constexpr double kPi = 3.14159265358979323846;

// Legendre P_n and its derivative at x via the three-term recurrence.
void legendre_pair(int n, double x, double& p, double& dp) {
    double p0 = 1.0, p1 = x;
    for (int l = 2; l <= n; ++l) {
        const double p2 = ((2 * l - 1) * x * p1 - (l - 1) * p0) / l;
        p0 = p1;
        p1 = p2;
    }
    p = p1;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
}
} // namespace

void gauss_legendre(int n, std::vector<double>& t, std::vector<double>& w) {
    t.assign(n, 0.0);
    w.assign(n, 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        if (n % 2 == 1 && i == half - 1) {
            x = 0.0; // the middle node is exact for odd n
        } else {
            for (int it = 0; it < 60; ++it) {
                double p, dp;
                legendre_pair(n, x, p, dp);
                const double dx = p / dp;
                x -= dx;
                if (std::abs(dx) <= 1e-16 * std::max(1.0, std::abs(x))) break;
            }
        }
        double p, dp;
        legendre_pair(n, x, p, dp);
        t[i] = x;
        w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        t[n - 1 - i] = -x;
        w[n - 1 - i] = w[i];
    }
}

std::size_t S2Coeffs::cos_index(int l, int m) const {
    // m = 0 block, then (cos, sin) pairs per m
    if (m == 0) return static_cast<std::size_t>(l);
    std::size_t off = static_cast<std::size_t>(L + 1);
    for (int mm = 1; mm < m; ++mm) off += 2 * static_cast<std::size_t>(L + 1 - mm);
    return off + static_cast<std::size_t>(l - m);
}

std::size_t S2Coeffs::sin_index(int l, int m) const {
    return cos_index(l, m) + static_cast<std::size_t>(L + 1 - m);
}

S2Harmonics::S2Harmonics(int L) : L_(L), nlat_(L + 1), nlon_(2 * L + 2) {
    if (L < 1) throw InvalidArgument("spherical harmonic degree must be >= 1");

    gauss_legendre(nlat_, glx_, glw_);
    theta_.resize(nlat_);
    sin_theta_.resize(nlat_);
    cot_theta_.resize(nlat_);
    for (int i = 0; i < nlat_; ++i) {
        theta_[i] = std::acos(glx_[i]);
        sin_theta_[i] = std::sqrt((1.0 - glx_[i]) * (1.0 + glx_[i]));
        cot_theta_[i] = glx_[i] / sin_theta_[i];
    }

    lambda_.resize(nlon_);
    for (int j = 0; j < nlon_; ++j) lambda_[j] = 2.0 * kPi * j / nlon_;

    cos_lam_.resize(static_cast<std::size_t>(L_ + 1) * nlon_);
    sin_lam_.resize(static_cast<std::size_t>(L_ + 1) * nlon_);
    for (int m = 0; m <= L_; ++m)
        for (int j = 0; j < nlon_; ++j) {
            cos_lam_[static_cast<std::size_t>(m) * nlon_ + j] = std::cos(m * lambda_[j]);
            sin_lam_[static_cast<std::size_t>(m) * nlon_ + j] = std::sin(m * lambda_[j]);
        }

    // direction table with exact antipodal negation (lambda_j+pi row = -row)
    dir_cos_.resize(nlon_);
    dir_sin_.resize(nlon_);
    const int half = nlon_ / 2;
    for (int j = 0; j < half; ++j) {
        dir_cos_[j] = std::cos(lambda_[j]);
        dir_sin_[j] = std::sin(lambda_[j]);
        dir_cos_[j + half] = -dir_cos_[j];
        dir_sin_[j + half] = -dir_sin_[j];
    }

    // normalized associated Legendre tables; the azimuthal normalization
    // (1/sqrt(2 pi) for m = 0, 1/sqrt(pi) otherwise) is folded in so that the
    // basis functions tbl * {cos, sin}(m lambda) are orthonormal on the sphere
    plm_.resize(L_ + 1);
    dplm_.resize(L_ + 1);
    std::vector<double> bmm(nlat_, std::sqrt(0.5)); // B_m^m running seed
    for (int m = 0; m <= L_; ++m) {
        const int rows = L_ + 1 - m;
        plm_[m].assign(static_cast<std::size_t>(rows) * nlat_, 0.0);
        dplm_[m].assign(static_cast<std::size_t>(rows) * nlat_, 0.0);
        if (m > 0) {
            const double f = -std::sqrt((2.0 * m + 1.0) / (2.0 * m));
            for (int i = 0; i < nlat_; ++i) bmm[i] *= f * sin_theta_[i];
        }
        const double norm = (m == 0) ? 1.0 / std::sqrt(2.0 * kPi) : 1.0 / std::sqrt(kPi);
        double* P = plm_[m].data();
        double* D = dplm_[m].data();
        for (int i = 0; i < nlat_; ++i) {
            const double t = glx_[i];
            const double s = sin_theta_[i];
            double blm2 = 0.0;           // B_{l-2}^m
            double blm1 = bmm[i];        // B_{l-1}^m, seeded at l = m
            P[i] = norm * blm1;
            D[i] = norm * (m * t * blm1 / s);
            for (int l = m + 1; l <= L_; ++l) {
                double bl;
                if (l == m + 1) {
                    bl = std::sqrt(2.0 * m + 3.0) * t * blm1;
                } else {
                    const double a = std::sqrt((2.0 * l - 1.0) * (2.0 * l + 1.0) /
                                               (static_cast<double>(l - m) * (l + m)));
                    const double b = std::sqrt((2.0 * l + 1.0) * (l - 1.0 - m) * (l - 1.0 + m) /
                                               ((2.0 * l - 3.0) * (l - m) * (l + m)));
                    bl = a * t * blm1 - b * blm2;
                }
                const double d =
                    std::sqrt((static_cast<double>(l) * l - static_cast<double>(m) * m) *
                              (2.0 * l + 1.0) / (2.0 * l - 1.0));
                P[static_cast<std::size_t>(l - m) * nlat_ + i] = norm * bl;
                D[static_cast<std::size_t>(l - m) * nlat_ + i] = norm * (l * t * bl - d * blm1) / s;
                blm2 = blm1;
                blm1 = bl;
            }
        }
    }
}

double S2Harmonics::node_weight(std::size_t k) const {
    return glw_[k / nlon_] * (2.0 * kPi / nlon_);
}

void S2Harmonics::node_direction(std::size_t k, double out[3]) const {
    const int i = static_cast<int>(k / nlon_);
    const int j = static_cast<int>(k % nlon_);
    out[0] = sin_theta_[i] * dir_cos_[j];
    out[1] = sin_theta_[i] * dir_sin_[j];
    out[2] = glx_[i];
}

S2Coeffs S2Harmonics::analyze(std::span<const double> values) const {
    if (values.size() != node_count()) throw InvalidArgument("field size does not match grid");
    const double dlam = 2.0 * kPi / nlon_;
    std::vector<double> Fc(static_cast<std::size_t>(L_ + 1) * nlat_, 0.0);
    std::vector<double> Fs(static_cast<std::size_t>(L_ + 1) * nlat_, 0.0);
    for (int m = 0; m <= L_; ++m) {
        const double* cl = &cos_lam_[static_cast<std::size_t>(m) * nlon_];
        const double* sl = &sin_lam_[static_cast<std::size_t>(m) * nlon_];
        for (int i = 0; i < nlat_; ++i) {
            const double* row = values.data() + static_cast<std::size_t>(i) * nlon_;
            double sc = 0.0, ss = 0.0;
            for (int j = 0; j < nlon_; ++j) {
                sc += row[j] * cl[j];
                ss += row[j] * sl[j];
            }
            Fc[static_cast<std::size_t>(m) * nlat_ + i] = sc * dlam;
            Fs[static_cast<std::size_t>(m) * nlat_ + i] = ss * dlam;
        }
    }
    S2Coeffs out = S2Coeffs::zeros(L_);
    for (int m = 0; m <= L_; ++m) {
        const double* fc = &Fc[static_cast<std::size_t>(m) * nlat_];
        const double* fs = &Fs[static_cast<std::size_t>(m) * nlat_];
        const double* P = plm_[m].data();
        for (int l = m; l <= L_; ++l) {
            const double* row = P + static_cast<std::size_t>(l - m) * nlat_;
            double ac = 0.0, as = 0.0;
            for (int i = 0; i < nlat_; ++i) {
                ac += glw_[i] * row[i] * fc[i];
                as += glw_[i] * row[i] * fs[i];
            }
            out.c[out.cos_index(l, m)] = ac;
            if (m >= 1) out.c[out.sin_index(l, m)] = as;
        }
    }
    return out;
}

std::vector<double> S2Harmonics::synth_impl(const S2Coeffs& coeffs, int table, bool dlambda,
                                            int scale_kind) const {
    if (coeffs.L != L_) throw InvalidArgument("coefficient degree does not match engine");
    const auto& T = (table == 0) ? plm_ : dplm_;
    std::vector<double> Gc(static_cast<std::size_t>(L_ + 1) * nlat_, 0.0);
    std::vector<double> Gs(static_cast<std::size_t>(L_ + 1) * nlat_, 0.0);
    for (int m = 0; m <= L_; ++m) {
        const double* P = T[m].data();
        double* gc = &Gc[static_cast<std::size_t>(m) * nlat_];
        double* gs = &Gs[static_cast<std::size_t>(m) * nlat_];
        for (int l = m; l <= L_; ++l) {
            double fac = 1.0;
            if (scale_kind == 1) fac = -static_cast<double>(l) * (l + 1);
            else if (scale_kind == 2) fac = static_cast<double>(m) * m;
            const double ac = coeffs.c[coeffs.cos_index(l, m)] * fac;
            const double as = (m >= 1) ? coeffs.c[coeffs.sin_index(l, m)] * fac : 0.0;
            if (ac == 0.0 && as == 0.0) continue;
            const double* row = P + static_cast<std::size_t>(l - m) * nlat_;
            for (int i = 0; i < nlat_; ++i) {
                gc[i] += ac * row[i];
                gs[i] += as * row[i];
            }
        }
    }
    std::vector<double> out(node_count(), 0.0);
    for (int m = 0; m <= L_; ++m) {
        const double* cl = &cos_lam_[static_cast<std::size_t>(m) * nlon_];
        const double* sl = &sin_lam_[static_cast<std::size_t>(m) * nlon_];
        const double* gc = &Gc[static_cast<std::size_t>(m) * nlat_];
        const double* gs = &Gs[static_cast<std::size_t>(m) * nlat_];
        for (int i = 0; i < nlat_; ++i) {
            double a = gc[i], b = gs[i];
            if (dlambda) {
                // d/dlambda: cos(m l) -> -m sin(m l), sin(m l) -> m cos(m l)
                const double an = m * b;
                const double bn = -m * a;
                a = an;
                b = bn;
            }
            if (a == 0.0 && b == 0.0) continue;
            double* row = out.data() + static_cast<std::size_t>(i) * nlon_;
            for (int j = 0; j < nlon_; ++j) row[j] += a * cl[j] + b * sl[j];
        }
    }
    return out;
}

std::vector<double> S2Harmonics::synthesize(const S2Coeffs& coeffs) const {
    return synth_impl(coeffs, 0, false, 0);
}

// Derivative operators annihilate constants; removing the mean before analysis
// keeps the transform roundoff proportional to the field's variation instead of
// its magnitude (constants then differentiate to exact zeros).
std::vector<double> S2Harmonics::deflate_mean(std::span<const double> values) const {
    double mean = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) mean += node_weight(k) * values[k];
    mean /= 4.0 * kPi;
    std::vector<double> out(values.begin(), values.end());
    for (auto& v : out) v -= mean;
    return out;
}

std::vector<double> S2Harmonics::laplacian(std::span<const double> values) const {
    return synth_impl(analyze(deflate_mean(values)), 0, false, 1);
}

void S2Harmonics::gradient(std::span<const double> values, std::vector<double>& g_theta,
                           std::vector<double>& g_lambda) const {
    const S2Coeffs a = analyze(deflate_mean(values));
    g_theta = synth_impl(a, 1, false, 0);
    g_lambda = synth_impl(a, 0, true, 0);
    for (int i = 0; i < nlat_; ++i) {
        const double inv_s = 1.0 / sin_theta_[i];
        double* row = g_lambda.data() + static_cast<std::size_t>(i) * nlon_;
        for (int j = 0; j < nlon_; ++j) row[j] *= inv_s;
    }
}

void S2Harmonics::hessian(std::span<const double> values, std::vector<double>& h_tt,
                          std::vector<double>& h_tl, std::vector<double>& h_ll) const {
    const S2Coeffs a = analyze(deflate_mean(values));
    const std::vector<double> st = synth_impl(a, 1, false, 0);   // d/dtheta
    const std::vector<double> lap = synth_impl(a, 0, false, 1);  // Laplace-Beltrami
    const std::vector<double> sm2 = synth_impl(a, 0, false, 2);  // -d2/dlambda2
    const std::vector<double> sl = synth_impl(a, 0, true, 0);    // d/dlambda
    const std::vector<double> stl = synth_impl(a, 1, true, 0);   // d2/dtheta dlambda
    h_tt.resize(node_count());
    h_tl.resize(node_count());
    h_ll.resize(node_count());
    for (int i = 0; i < nlat_; ++i) {
        const double s = sin_theta_[i];
        const double cot = cot_theta_[i];
        const double inv_s2 = 1.0 / (s * s);
        for (int j = 0; j < nlon_; ++j) {
            const std::size_t k = static_cast<std::size_t>(i) * nlon_ + j;
            h_tt[k] = lap[k] - cot * st[k] + sm2[k] * inv_s2;
            h_tl[k] = stl[k] / s - glx_[i] * sl[k] * inv_s2;
            h_ll[k] = -sm2[k] * inv_s2 + cot * st[k];
        }
    }
}

std::vector<double> S2Harmonics::invert_helmholtz_even(std::span<const double> rhs,
                                                       double shift) const {
    S2Coeffs a = analyze(rhs);
    for (int m = 0; m <= L_; ++m)
        for (int l = m; l <= L_; ++l) {
            const double eig = shift - static_cast<double>(l) * (l + 1);
            if (l % 2 == 1 || eig == 0.0) {
                a.c[a.cos_index(l, m)] = 0.0;
                if (m >= 1) a.c[a.sin_index(l, m)] = 0.0;
            } else {
                a.c[a.cos_index(l, m)] /= eig;
                if (m >= 1) a.c[a.sin_index(l, m)] /= eig;
            }
        }
    return synthesize(a);
}

void S2Harmonics::project_even(S2Coeffs& coeffs) {
    for (int m = 0; m <= coeffs.L; ++m)
        for (int l = m; l <= coeffs.L; ++l)
            if (l % 2 == 1) {
                coeffs.c[coeffs.cos_index(l, m)] = 0.0;
                if (m >= 1) coeffs.c[coeffs.sin_index(l, m)] = 0.0;
            }
}

double S2Harmonics::evaluate(const S2Coeffs& coeffs, double theta, double lambda) const {
    if (coeffs.L != L_) throw InvalidArgument("coefficient degree does not match engine");
    const double t = std::cos(theta);
    const double s = std::sin(theta);
    double acc = 0.0;
    double bmm = std::sqrt(0.5);
    for (int m = 0; m <= L_; ++m) {
        if (m > 0) bmm *= -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s;
        const double norm = (m == 0) ? 1.0 / std::sqrt(2.0 * kPi) : 1.0 / std::sqrt(kPi);
        const double cm = std::cos(m * lambda), sm = std::sin(m * lambda);
        double blm2 = 0.0, blm1 = bmm;
        for (int l = m; l <= L_; ++l) {
            double bl;
            if (l == m) {
                bl = blm1;
            } else if (l == m + 1) {
                bl = std::sqrt(2.0 * m + 3.0) * t * blm1;
            } else {
                const double af = std::sqrt((2.0 * l - 1.0) * (2.0 * l + 1.0) /
                                            (static_cast<double>(l - m) * (l + m)));
                const double bf = std::sqrt((2.0 * l + 1.0) * (l - 1.0 - m) * (l - 1.0 + m) /
                                            ((2.0 * l - 3.0) * (l - m) * (l + m)));
                bl = af * t * blm1 - bf * blm2;
            }
            double term = coeffs.c[coeffs.cos_index(l, m)] * cm;
            if (m >= 1) term += coeffs.c[coeffs.sin_index(l, m)] * sm;
            acc += norm * bl * term;
            if (l > m) {
                blm2 = blm1;
                blm1 = bl;
            } else {
                blm1 = bl;
            }
        }
    }
    return acc;
}

ZonalCosine::ZonalCosine(int dim, int M) : dim_(dim), M_(M) {
    if (dim < 2) throw InvalidArgument("sphere dimension must be >= 2");
    if (M < 2) throw InvalidArgument("axisymmetric grid needs at least 2 nodes");

    theta_.resize(M);
    cos_theta_.resize(M);
    sin_theta_.resize(M);
    cot_theta_.resize(M);
    for (int i = 0; i < (M + 1) / 2; ++i) {
        const double th = (i + 0.5) * kPi / M;
        theta_[i] = th;
        theta_[M - 1 - i] = kPi - th;
        const double c = (2 * i + 1 == M) ? 0.0 : std::cos(th);
        cos_theta_[i] = c;
        cos_theta_[M - 1 - i] = -c;
        const double s = std::sin(th);
        sin_theta_[i] = s;
        sin_theta_[M - 1 - i] = s;
        cot_theta_[i] = c / s;
        cot_theta_[M - 1 - i] = -c / s;
    }

    cos_tab_.resize(static_cast<std::size_t>(M) * M);
    sin_tab_.resize(static_cast<std::size_t>(M) * M);
    for (int k = 0; k < M; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        for (int i = 0; i < (M + 1) / 2; ++i) {
            const double ck = std::cos(k * theta_[i]);
            const double sk = std::sin(k * theta_[i]);
            cos_tab_[static_cast<std::size_t>(k) * M + i] = ck;
            sin_tab_[static_cast<std::size_t>(k) * M + i] = sk;
            cos_tab_[static_cast<std::size_t>(k) * M + (M - 1 - i)] = sign * ck;
            sin_tab_[static_cast<std::size_t>(k) * M + (M - 1 - i)] = -sign * sk;
        }
    }

    // |S^(dim-1)| and the cosine moments of sin^(dim-1), then weights by
    // transposing the analysis map (exact for the cosine band of this grid)
    const double omega = 2.0 * std::pow(kPi, dim / 2.0) / std::tgamma(dim / 2.0);
    area_ = 0.0;
    const int Q = 4 * M + 40;
    std::vector<double> qt, qw;
    gauss_legendre(Q, qt, qw);
    std::vector<double> moments(M, 0.0);
    for (int k = 0; k < M; k += 2) { // odd moments vanish by symmetry
        double acc = 0.0;
        for (int q = 0; q < Q; ++q) {
            const double th = (qt[q] + 1.0) * kPi / 2.0;
            acc += qw[q] * std::cos(k * th) * std::pow(std::sin(th), dim - 1);
        }
        moments[k] = acc * kPi / 2.0;
    }
    weight_.assign(M, 0.0);
    for (int i = 0; i < M; ++i) {
        double acc = 0.0;
        for (int k = 0; k < M; k += 2)
            acc += (k == 0 ? 1.0 : 2.0) / M * moments[k] * cos_tab_[static_cast<std::size_t>(k) * M + i];
        weight_[i] = omega * acc;
    }
    area_ = omega * moments[0];
}

std::vector<double> ZonalCosine::analyze(std::span<const double> values) const {
    if (values.size() != static_cast<std::size_t>(M_))
        throw InvalidArgument("field size does not match grid");
    std::vector<double> c(M_, 0.0);
    for (int k = 0; k < M_; ++k) {
        const double* row = &cos_tab_[static_cast<std::size_t>(k) * M_];
        double acc = 0.0;
        for (int i = 0; i < M_; ++i) acc += values[i] * row[i];
        c[k] = acc * (k == 0 ? 1.0 : 2.0) / M_;
    }
    return c;
}

std::vector<double> ZonalCosine::synthesize(std::span<const double> coeffs) const {
    std::vector<double> f(M_, 0.0);
    for (int k = 0; k < M_; ++k) {
        const double ck = coeffs[k];
        if (ck == 0.0) continue;
        const double* row = &cos_tab_[static_cast<std::size_t>(k) * M_];
        for (int i = 0; i < M_; ++i) f[i] += ck * row[i];
    }
    return f;
}

std::vector<double> ZonalCosine::deflate_mean(std::span<const double> values) const {
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= M_;
    std::vector<double> out(values.begin(), values.end());
    for (auto& v : out) v -= mean;
    return out;
}

std::vector<double> ZonalCosine::derivative(std::span<const double> values) const {
    const std::vector<double> c = analyze(deflate_mean(values));
    std::vector<double> f(M_, 0.0);
    for (int k = 1; k < M_; ++k) {
        const double ck = -k * c[k];
        if (ck == 0.0) continue;
        const double* row = &sin_tab_[static_cast<std::size_t>(k) * M_];
        for (int i = 0; i < M_; ++i) f[i] += ck * row[i];
    }
    return f;
}

std::vector<double> ZonalCosine::second_derivative(std::span<const double> values) const {
    const std::vector<double> c = analyze(deflate_mean(values));
    std::vector<double> f(M_, 0.0);
    for (int k = 1; k < M_; ++k) {
        const double ck = -static_cast<double>(k) * k * c[k];
        const double* row = &cos_tab_[static_cast<std::size_t>(k) * M_];
        for (int i = 0; i < M_; ++i) f[i] += ck * row[i];
    }
    return f;
}

std::vector<double> ZonalCosine::laplacian(std::span<const double> values) const {
    const std::vector<double> d1 = derivative(values);
    std::vector<double> f = second_derivative(values);
    for (int i = 0; i < M_; ++i) f[i] += (dim_ - 1) * cot_theta_[i] * d1[i];
    return f;
}

std::vector<double> ZonalCosine::invert_helmholtz_even(std::span<const double> rhs,
                                                       double shift) const {
    // In the cosine basis: (Lap + shift) cos(k th) = (shift - k(k+dim-1)) cos(k th)
    //   - (dim-1) k sum_{m<k, m=k mod 2} (2 - delta_{m0}) cos(m th),
    // which is upper triangular over modes of fixed parity.
    std::vector<double> r = analyze(rhs);
    std::vector<double> c(M_, 0.0);
    const double nu = dim_ - 1.0;
    for (int m = (M_ - 1) - (M_ - 1) % 2; m >= 0; m -= 2) {
        const double wm = (m == 0) ? 1.0 : 2.0;
        double acc = 0.0;
        for (int k = m + 2; k < M_; k += 2) acc += k * c[k];
        const double diag = shift - static_cast<double>(m) * (m + dim_ - 1);
        c[m] = (r[m] + wm * nu * acc) / diag;
    }
    return synthesize(c);
}

double ZonalCosine::evaluate(std::span<const double> coeffs, double theta) const {
    double acc = 0.0;
    for (int k = 0; k < static_cast<int>(coeffs.size()); ++k) acc += coeffs[k] * std::cos(k * theta);
    return acc;
}

} // namespace christoffel
