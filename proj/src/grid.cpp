#include "pia/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pia/errors.hpp"

namespace pia {

Grid::Grid(Domain domain, std::size_t n_cells)
    : domain_(domain), n_cells_(n_cells),
      spacing_(domain.width() / static_cast<double>(n_cells)) {
    if (n_cells < 2) {
        throw InvalidArgument("grid needs at least 2 cells");
    }
}

double Grid::node(std::size_t i) const noexcept {
    if (i == 0) return domain_.left;
    if (i == n_cells_) return domain_.right;
    const auto fi = static_cast<double>(i);
    const auto fn = static_cast<double>(n_cells_);
    return (domain_.left * (fn - fi) + domain_.right * fi) / fn;
}

std::vector<double> Grid::nodes() const {
    std::vector<double> out(n_nodes());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = node(i);
    return out;
}

std::size_t Grid::nearest_node(double x) const noexcept {
    const double t = (x - domain_.left) / spacing_;
    if (!(t > 0.0)) return 0;
    const auto i = static_cast<std::size_t>(std::lround(t));
    return std::min(i, n_cells_);
}

GridFunction::GridFunction(Grid g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.n_nodes()) {
        throw InvalidArgument("grid function has " + std::to_string(values.size()) +
                              " values for " + std::to_string(grid.n_nodes()) + " nodes");
    }
    for (double x : values) {
        if (!std::isfinite(x)) throw InvalidArgument("grid function values must be finite");
    }
}

double GridFunction::sup_norm() const noexcept {
    double m = 0.0;
    for (double x : values) m = std::max(m, std::abs(x));
    return m;
}

GridPolicy::GridPolicy(Grid g, std::vector<double> a) : grid(g), actions(std::move(a)) {
    if (actions.size() != grid.n_nodes()) {
        throw InvalidArgument("grid policy has " + std::to_string(actions.size()) +
                              " actions for " + std::to_string(grid.n_nodes()) + " nodes");
    }
}

void check_policy(const ControlProblem& p, const GridPolicy& pol) {
    const Domain& d = pol.grid.domain();
    if (d.left != p.domain.left || d.right != p.domain.right) {
        throw InvalidArgument("policy grid does not span the problem domain");
    }
    for (std::size_t i = 0; i < pol.actions.size(); ++i) {
        if (!p.actions.contains(pol.actions[i])) {
            throw DomainError("policy action " + std::to_string(pol.actions[i]) + " at node " +
                              std::to_string(i) + " is outside the action space");
        }
    }
}

std::vector<double> TridiagonalSystem::multiply(std::span<const double> u) const {
    const std::size_t m = size();
    std::vector<double> out(m);
    for (std::size_t k = 0; k < m; ++k) {
        double s = diag[k] * u[k];
        if (k > 0) s += sub[k] * u[k - 1];
        if (k + 1 < m) s += super[k] * u[k + 1];
        out[k] = s;
    }
    return out;
}

StencilRow upwind_row(const LocalCoefficients& c, double h) noexcept {
    const double diffusion = 0.5 * c.sigma * c.sigma / (h * h);
    const double drift = std::abs(c.mu) / h;
    StencilRow row{-diffusion, 2.0 * diffusion + drift + c.alpha, -diffusion};
    if (c.mu >= 0.0) {
        row.super -= drift;
    } else {
        row.sub -= drift;
    }
    return row;
}

TridiagonalSystem assemble_operator(const ControlProblem& p, const GridPolicy& pol) {
    check_policy(p, pol);
    const Grid& grid = pol.grid;
    const std::size_t m = grid.n_cells() - 1;
    const double h = grid.spacing();
    const double g_left = p.boundary_payoff(grid.node(0));
    const double g_right = p.boundary_payoff(grid.node(grid.n_cells()));

    TridiagonalSystem sys;
    sys.sub.resize(m);
    sys.diag.resize(m);
    sys.super.resize(m);
    sys.rhs.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t i = k + 1;
        const double x = grid.node(i);
        const double a = pol.actions[i];
        LocalCoefficients c;
        try {
            c = p.at(x, a);
        } catch (const EvaluationError& e) {
            throw EvaluationError(std::string(e.what()) + " (node " + std::to_string(i) + ")");
        }
        const StencilRow row = upwind_row(c, h);
        sys.sub[k] = row.sub;
        sys.diag[k] = row.diag;
        sys.super[k] = row.super;
        sys.rhs[k] = c.running_cost;
    }
    sys.rhs.front() -= sys.sub.front() * g_left;
    sys.rhs.back() -= sys.super.back() * g_right;
    return sys;
}

std::vector<double> solve_tridiagonal(const TridiagonalSystem& sys) {
    const std::size_t m = sys.size();
    if (sys.sub.size() != m || sys.super.size() != m || sys.rhs.size() != m) {
        throw InvalidArgument("tridiagonal system has inconsistent band lengths");
    }
    if (m == 0) return {};

    std::vector<double> c(m);
    std::vector<double> u(m);
    double pivot = sys.diag[0];
    for (std::size_t k = 0;; ++k) {
        if (!(pivot > 0.0)) {
            throw AssemblyError("non-positive pivot " + std::to_string(pivot) + " at row " +
                                std::to_string(k));
        }
        c[k] = (k + 1 < m) ? sys.super[k] / pivot : 0.0;
        u[k] = (sys.rhs[k] - (k > 0 ? sys.sub[k] * u[k - 1] : 0.0)) / pivot;
        if (k + 1 == m) break;
        pivot = sys.diag[k + 1] - sys.sub[k + 1] * c[k];
    }
    for (std::size_t k = m - 1; k-- > 0;) {
        u[k] -= c[k] * u[k + 1];
    }
    return u;
}

double sample(const GridFunction& gf, double x) {
    const Domain& d = gf.grid.domain();
    if (!(x >= d.left && x <= d.right)) {
        throw DomainError("sample point " + std::to_string(x) + " outside [" +
                          std::to_string(d.left) + ", " + std::to_string(d.right) + "]");
    }
    const std::size_t n = gf.grid.n_cells();
    const double t = (x - d.left) / gf.grid.spacing();
    std::size_t i = std::min(static_cast<std::size_t>(t), n - 1);
    // nodes are computed by the anchored formula, so re-bracket against them
    if (x < gf.grid.node(i) && i > 0) --i;
    if (x > gf.grid.node(i + 1) && i + 1 < n) ++i;
    const double x0 = gf.grid.node(i);
    const double x1 = gf.grid.node(i + 1);
    if (x == x0) return gf.values[i];
    if (x == x1) return gf.values[i + 1];
    const double w = (x - x0) / (x1 - x0);
    return (1.0 - w) * gf.values[i] + w * gf.values[i + 1];
}

DifferenceDerivatives difference_derivatives(const GridFunction& gf, std::size_t i) {
    if (i < 1 || i + 1 > gf.grid.n_cells()) {
        throw InvalidArgument("difference_derivatives needs an interior index, got " +
                              std::to_string(i));
    }
    const double h = gf.grid.spacing();
    const auto& v = gf.values;
    return {(v[i + 1] - v[i]) / h, (v[i] - v[i - 1]) / h,
            (v[i - 1] - 2.0 * v[i] + v[i + 1]) / (h * h)};
}

}  // namespace pia
