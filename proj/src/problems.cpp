#include "rctls/problems.hpp"

#include <cmath>
#include <numbers>

#include "rctls/errors.hpp"
#include "rctls/rng.hpp"

namespace rctls {

namespace {

constexpr double kPi = std::numbers::pi;

double param_or(const std::map<std::string, double>& params, const std::string& key, double dflt) {
    auto it = params.find(key);
    return it == params.end() ? dflt : it->second;
}

TestProblem finish_dense(std::string name, DenseMatrix a, Vector x_true,
                         std::map<std::string, double> metadata) {
    TestProblem p;
    p.name = std::move(name);
    p.n = a.cols();
    p.b = matvec(a, x_true);
    p.x_true = std::move(x_true);
    p.op = dense_operator(std::move(a));
    p.metadata = std::move(metadata);
    return p;
}

TestProblem make_shaw(std::size_t n) {
    const double h = kPi / static_cast<double>(n);
    Vector s(n), co(n), psi(n);
    for (std::size_t i = 0; i < n; ++i) {
        s[i] = -kPi / 2.0 + (static_cast<double>(i) + 0.5) * h;
        co[i] = std::cos(s[i]);
        psi[i] = kPi * std::sin(s[i]);
    }
    DenseMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double u = psi[i] + psi[j];
            const double sinc = (u == 0.0) ? 1.0 : std::sin(u) / u;
            const double cc = co[i] + co[j];
            a(i, j) = a(j, i) = h * cc * cc * sinc * sinc;
        }
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = 2.0 * std::exp(-6.0 * (s[i] - 0.8) * (s[i] - 0.8)) +
               std::exp(-2.0 * (s[i] + 0.5) * (s[i] + 0.5));
    return finish_dense("shaw", std::move(a), std::move(x), {});
}

TestProblem make_gravity_1d(std::size_t n, double d) {
    if (!(d > 0.0)) throw InvalidInputError("gravity: depth must be positive");
    const double h = 1.0 / static_cast<double>(n);
    DenseMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const double si = (static_cast<double>(i) + 0.5) * h;
        for (std::size_t j = 0; j < n; ++j) {
            const double tj = (static_cast<double>(j) + 0.5) * h;
            const double dist = si - tj;
            a(i, j) = h * d * std::pow(d * d + dist * dist, -1.5);
        }
    }
    Vector x(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double tj = (static_cast<double>(j) + 0.5) * h;
        x[j] = std::sin(kPi * tj) + 0.5 * std::sin(2.0 * kPi * tj);
    }
    return finish_dense("gravity", std::move(a), std::move(x), {{"d", d}});
}

TestProblem make_foxgood(std::size_t n) {
    const double h = 1.0 / static_cast<double>(n);
    DenseMatrix a(n, n);
    Vector t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = (static_cast<double>(i) + 0.5) * h;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = h * std::sqrt(t[i] * t[i] + t[j] * t[j]);
    return finish_dense("foxgood", std::move(a), Vector(t), {});
}

// twice-integrated phillips kernel, the C1 even extension of
// u^2/2 - (9/pi^2) cos(pi u / 3) beyond |u| = 3
double phillips_k2(double u) {
    const double au = std::abs(u);
    if (au <= 3.0) return u * u / 2.0 - 9.0 / (kPi * kPi) * std::cos(kPi * u / 3.0);
    return 4.5 + 9.0 / (kPi * kPi) + 3.0 * (au - 3.0);
}

// once-integrated phillips kernel, clamped outside the support
double phillips_k1(double u) {
    if (u >= 3.0) return 3.0;
    if (u <= -3.0) return -3.0;
    return u + 3.0 / kPi * std::sin(kPi * u / 3.0);
}

TestProblem make_phillips(std::size_t n) {
    if (n % 4 != 0) throw InvalidInputError("phillips: n must be divisible by 4");
    const double h = 12.0 / static_cast<double>(n);
    DenseMatrix a(n, n);
    // A_ij = (1/h) * [K2(m+h) - 2 K2(m) + K2(m-h)], m = (i-j) h
    Vector band(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double m = static_cast<double>(k) * h;
        band[k] = (phillips_k2(m + h) - 2.0 * phillips_k2(m) + phillips_k2(m - h)) / h;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = band[i >= j ? i - j : j - i];
    Vector x(n);
    const double sqh = std::sqrt(h);
    for (std::size_t j = 0; j < n; ++j) {
        const double lo = -6.0 + static_cast<double>(j) * h;
        x[j] = (phillips_k1(lo + h) - phillips_k1(lo)) / sqh;
    }
    return finish_dense("phillips", std::move(a), std::move(x), {});
}

TestProblem make_deriv2(std::size_t n) {
    const double h = 1.0 / static_cast<double>(n);
    DenseMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        // diagonal from the exact double integral over the cell
        const double lo = static_cast<double>(i) * h;
        a(i, i) = h * h * h / 4.0 + (3.0 * lo - 1.0) * h * h / 3.0 + (lo * lo - lo) * h;
        const double si = (static_cast<double>(i) + 0.5) * h;
        for (std::size_t j = 0; j < i; ++j) {
            const double tj = (static_cast<double>(j) + 0.5) * h;
            a(i, j) = a(j, i) = h * tj * (si - 1.0);
        }
    }
    Vector x(n);
    for (std::size_t j = 0; j < n; ++j)
        x[j] = std::pow(h, 1.5) * (static_cast<double>(j) + 0.5);
    return finish_dense("deriv2", std::move(a), std::move(x), {});
}

} // namespace

TestProblem make_problem_1d(Problem1d which, std::size_t n,
                            const std::map<std::string, double>& params) {
    if (n < 4) throw InvalidInputError("make_problem_1d: n must be at least 4");
    switch (which) {
        case Problem1d::shaw: return make_shaw(n);
        case Problem1d::gravity: return make_gravity_1d(n, param_or(params, "d", 0.25));
        case Problem1d::foxgood: return make_foxgood(n);
        case Problem1d::phillips: return make_phillips(n);
        case Problem1d::deriv2: return make_deriv2(n);
    }
    throw InvalidInputError("make_problem_1d: unknown problem");
}

TestProblem make_problem_1d(const std::string& name, std::size_t n,
                            const std::map<std::string, double>& params) {
    if (name == "shaw") return make_problem_1d(Problem1d::shaw, n, params);
    if (name == "gravity") return make_problem_1d(Problem1d::gravity, n, params);
    if (name == "foxgood") return make_problem_1d(Problem1d::foxgood, n, params);
    if (name == "phillips") return make_problem_1d(Problem1d::phillips, n, params);
    if (name == "deriv2") return make_problem_1d(Problem1d::deriv2, n, params);
    throw InvalidInputError("make_problem_1d: unknown problem '" + name + "'");
}

TestProblem make_gravity_2d(std::size_t grid, double d) {
    if (grid < 2) throw InvalidInputError("make_gravity_2d: grid must be at least 2");
    if (!(d > 0.0)) throw InvalidInputError("make_gravity_2d: depth must be positive");
    const std::size_t n = grid * grid;
    const double g = static_cast<double>(grid);
    const double w = 1.0 / (g * g); // midpoint cell area
    Vector pts(grid);
    for (std::size_t k = 0; k < grid; ++k) pts[k] = (static_cast<double>(k) + 0.5) / g;

    DenseMatrix a(n, n);
    for (std::size_t p = 0; p < grid; ++p)
        for (std::size_t q = 0; q < grid; ++q) {
            const std::size_t row = p * grid + q;
            double* ar = a.row(row);
            for (std::size_t k = 0; k < grid; ++k) {
                const double dx = pts[p] - pts[k];
                for (std::size_t l = 0; l < grid; ++l) {
                    const double dy = pts[q] - pts[l];
                    ar[k * grid + l] = w * d * std::pow(d * d + dx * dx + dy * dy, -1.5);
                }
            }
        }
    Vector x(n);
    for (std::size_t k = 0; k < grid; ++k)
        for (std::size_t l = 0; l < grid; ++l)
            x[k * grid + l] = std::sin(kPi * pts[k]) * std::sin(kPi * pts[l]);
    TestProblem prob = finish_dense("gravity2d", std::move(a), std::move(x), {{"d", d}});
    prob.metadata["grid"] = static_cast<double>(grid);
    return prob;
}

TestProblem make_blur(std::size_t grid, std::size_t band, double spread) {
    if (grid < 8) throw InvalidInputError("make_blur: grid must be at least 8");
    if (band == 0 || band > grid) throw InvalidInputError("make_blur: need 1 <= band <= grid");
    if (!(spread > 0.0)) throw InvalidInputError("make_blur: spread must be positive");

    const double scale = 1.0 / (spread * std::sqrt(2.0 * kPi));
    DenseMatrix t(grid, grid);
    for (std::size_t i = 0; i < grid; ++i)
        for (std::size_t j = 0; j < grid; ++j) {
            const std::size_t k = i >= j ? i - j : j - i;
            if (k < band) {
                const double dk = static_cast<double>(k);
                t(i, j) = scale * std::exp(-dk * dk / (2.0 * spread * spread));
            }
        }

    const std::size_t n = grid * grid;
    TestProblem p;
    p.name = "blur";
    p.n = n;
    p.op = kronecker_operator(t, t);
    p.metadata = {{"grid", static_cast<double>(grid)},
                  {"band", static_cast<double>(band)},
                  {"spread", spread}};

    // deterministic test image: a bright centre square plus an offset block
    p.x_true.assign(n, 0.0);
    auto pixel = [&](std::size_t row, std::size_t col) -> double& {
        // column-major vec to match the Kronecker operator
        return p.x_true[col * grid + row];
    };
    for (std::size_t i = grid / 4; i < 3 * grid / 4; ++i)
        for (std::size_t j = grid / 4; j < 3 * grid / 4; ++j) pixel(i, j) += 1.0;
    for (std::size_t i = grid / 8; i < 3 * grid / 8; ++i)
        for (std::size_t j = grid / 2; j < 7 * grid / 8; ++j) pixel(i, j) += 0.5;

    p.b = p.op->apply(p.x_true);
    return p;
}

TestProblem with_noise(TestProblem p, double rel_level, RngSeed seed) {
    if (rel_level < 0.0) throw InvalidInputError("with_noise: negative noise level");
    if (rel_level == 0.0) return p;
    Vector g = gaussian_vector(p.b.size(), seed, 0);
    const double scale = rel_level * norm2(p.b) / norm2(g);
    axpy(scale, g, p.b);
    p.metadata["noise"] = rel_level;
    return p;
}

} // namespace rctls
