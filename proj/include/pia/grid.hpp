#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pia/problem.hpp"

namespace pia {

/// Uniform grid x_i = left + i*h, i = 0..n_cells, with both endpoints exact.
class Grid {
public:
    Grid(Domain domain, std::size_t n_cells);

    const Domain& domain() const noexcept { return domain_; }
    std::size_t n_cells() const noexcept { return n_cells_; }
    std::size_t n_nodes() const noexcept { return n_cells_ + 1; }
    double spacing() const noexcept { return spacing_; }
    double node(std::size_t i) const noexcept;
    std::vector<double> nodes() const;

    /// Index of the node closest to x; x is clamped to the closed domain.
    std::size_t nearest_node(double x) const noexcept;

    bool operator==(const Grid& other) const noexcept {
        return domain_.left == other.domain_.left && domain_.right == other.domain_.right &&
               n_cells_ == other.n_cells_;
    }

private:
    Domain domain_;
    std::size_t n_cells_;
    double spacing_;
};

/// Nodal values of a function on a grid.
struct GridFunction {
    Grid grid;
    std::vector<double> values;

    GridFunction(Grid g, std::vector<double> v);

    /// Samples fn at every node.
    template <typename Fn>
    static GridFunction from(const Grid& g, Fn&& fn) {
        std::vector<double> v(g.n_nodes());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(g.node(i));
        return GridFunction(g, std::move(v));
    }

    double sup_norm() const noexcept;
};

/// Markov policy sampled at grid nodes. Boundary entries are carried but never
/// used by the solver.
struct GridPolicy {
    Grid grid;
    std::vector<double> actions;

    GridPolicy(Grid g, std::vector<double> a);

    static GridPolicy constant(const Grid& g, double a) {
        return GridPolicy(g, std::vector<double>(g.n_nodes(), a));
    }
    template <typename Fn>
    static GridPolicy from(const Grid& g, Fn&& fn) {
        std::vector<double> a(g.n_nodes());
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = fn(g.node(i));
        return GridPolicy(g, std::move(a));
    }
};

/// Throws InvalidArgument if the grid does not span the problem domain and
/// DomainError if any action lies outside the action space.
void check_policy(const ControlProblem& p, const GridPolicy& pol);

/// Tridiagonal system over the n_cells-1 interior unknowns.
///
/// Row k couples unknown k to k-1 (sub[k]) and k+1 (super[k]). sub[0] and
/// super[m-1] are the couplings to the Dirichlet nodes; their contribution is
/// already folded into rhs and the solver ignores them. They are kept so the
/// M-matrix invariant can be checked row by row.
struct TridiagonalSystem {
    std::vector<double> sub;
    std::vector<double> diag;
    std::vector<double> super;
    std::vector<double> rhs;

    std::size_t size() const noexcept { return diag.size(); }

    /// A*u over the full rows except the folded boundary couplings.
    std::vector<double> multiply(std::span<const double> u) const;
};

/// Coefficients of one row of the negated upwind generator -L^a.
struct StencilRow {
    double sub;
    double diag;
    double super;
};

/// Row of -L^a at spacing h: central second difference, upwind first
/// difference chosen by the sign of mu (forward when mu >= 0), killing on the diagonal.
StencilRow upwind_row(const LocalCoefficients& c, double h) noexcept;

/// Discretises -L^pi V = f(., pi) on the interior nodes with V = g at both ends.
TridiagonalSystem assemble_operator(const ControlProblem& p, const GridPolicy& pol);

/// Thomas algorithm. Throws AssemblyError on a non-positive pivot.
std::vector<double> solve_tridiagonal(const TridiagonalSystem& sys);

/// Linear interpolation; exact at nodes. Throws DomainError outside [left, right].
double sample(const GridFunction& gf, double x);

struct DifferenceDerivatives {
    double forward;
    double backward;
    double second;
};

/// One-sided first differences and the central second difference at interior node i.
DifferenceDerivatives difference_derivatives(const GridFunction& gf, std::size_t i);

}  // namespace pia
