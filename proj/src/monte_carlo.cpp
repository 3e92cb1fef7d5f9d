#include "pia/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>
#include <string>
#include <thread>

#include "pia/errors.hpp"
#include "pia/oracles.hpp"

namespace pia {

namespace {

std::uint64_t splitmix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::size_t worker_count(const SimConfig& cfg) {
    std::size_t w = cfg.workers;
    if (w == 0) w = std::max(1u, std::thread::hardware_concurrency());
    return std::min(w, cfg.n_paths);
}

// Runs body(j) for every path index, each index exactly once, on contiguous
// chunks. The first failure in index order is rethrown.
template <typename Body>
void for_each_path(std::size_t n_paths, std::size_t workers, Body&& body) {
    std::vector<std::exception_ptr> errors(workers);
    auto run_chunk = [&](std::size_t w) {
        const std::size_t begin = n_paths * w / workers;
        const std::size_t end = n_paths * (w + 1) / workers;
        try {
            for (std::size_t j = begin; j < end; ++j) body(j);
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (workers <= 1) {
        run_chunk(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run_chunk, w);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

struct MeanAndError {
    double mean;
    double std_error;
};

// Fixed-order two-pass reduction, shifted by the first sample so that
// constant samples give their value and a zero error exactly.
MeanAndError summarize(const std::vector<double>& xs) {
    const auto n = static_cast<double>(xs.size());
    const double shift = xs.front();
    double sum = 0.0;
    for (double x : xs) sum += x - shift;
    const double mean = shift + sum / n;
    if (xs.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / (n - 1.0)) / std::sqrt(n)};
}

}  // namespace

void SimConfig::validate() const {
    if (!(step > 0.0)) throw InvalidArgument("sim step must be positive");
    if (n_paths < 1) throw InvalidArgument("sim n_paths must be at least 1");
    if (!(t_max > 0.0)) throw InvalidArgument("sim t_max must be positive");
    if (!(step < t_max)) throw InvalidArgument("sim step must be smaller than t_max");
}

std::uint64_t path_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

PayoffEstimate simulate_payoff(const ControlProblem& p, const GridPolicy& pol, double x0,
                               const SimConfig& cfg) {
    cfg.validate();
    check_policy(p, pol);
    if (!p.domain.contains_closed(x0)) {
        throw DomainError("x0 = " + std::to_string(x0) + " lies outside the closed domain");
    }

    const double left = p.domain.left;
    const double right = p.domain.right;
    const double h = cfg.step;
    const double sqrt_h = std::sqrt(h);
    const auto max_steps = static_cast<std::size_t>(std::ceil(cfg.t_max / h));
    const double g_left = p.boundary_payoff(left);
    const double g_right = p.boundary_payoff(right);

    std::vector<double> payoff(cfg.n_paths);
    std::vector<unsigned char> truncated(cfg.n_paths, 0);

    for_each_path(cfg.n_paths, worker_count(cfg), [&](std::size_t j) {
        if (x0 <= left || x0 >= right) {
            payoff[j] = x0 <= left ? g_left : g_right;
            return;
        }
        std::mt19937_64 rng(path_seed(cfg.seed, j));
        std::normal_distribution<double> normal(0.0, 1.0);
        double x = x0;
        double discount = 1.0;
        double reward = 0.0;
        for (std::size_t k = 0; k < max_steps; ++k) {
            const double a = pol.actions[pol.grid.nearest_node(x)];
            LocalCoefficients c;
            try {
                c = p.at(x, a);
            } catch (const EvaluationError& e) {
                throw EvaluationError(std::string(e.what()) + " (path " + std::to_string(j) +
                                      ", t=" + std::to_string(static_cast<double>(k) * h) + ")");
            }
            reward += discount * c.running_cost * h;
            discount *= std::exp(-c.alpha * h);
            x += c.mu * h + c.sigma * sqrt_h * normal(rng);
            if (x <= left) {
                payoff[j] = reward + discount * g_left;
                return;
            }
            if (x >= right) {
                payoff[j] = reward + discount * g_right;
                return;
            }
        }
        payoff[j] = reward;
        truncated[j] = 1;
    });

    const MeanAndError s = summarize(payoff);
    std::size_t n_truncated = 0;
    for (unsigned char t : truncated) n_truncated += t;
    return {s.mean, s.std_error, cfg.n_paths,
            static_cast<double>(n_truncated) / static_cast<double>(cfg.n_paths)};
}

TanakaResult tanaka_joint_law(double t, const SimConfig& cfg) {
    cfg.validate();
    if (!(t > 0.0) || t > cfg.t_max) {
        throw InvalidArgument("tanaka horizon t must satisfy 0 < t <= t_max");
    }
    const auto n_steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(t / cfg.step)));
    const double sqrt_h = std::sqrt(t / static_cast<double>(n_steps));

    std::vector<double> w_end(cfg.n_paths);
    std::vector<double> x_sigma_end(cfg.n_paths);
    for_each_path(cfg.n_paths, worker_count(cfg), [&](std::size_t j) {
        std::mt19937_64 rng(path_seed(cfg.seed, j));
        std::normal_distribution<double> normal(0.0, 1.0);
        double w = 0.0;
        double x_sigma = 0.0;
        for (std::size_t k = 0; k < n_steps; ++k) {
            const double dw = sqrt_h * normal(rng);
            x_sigma += sgn(w) * dw;
            w += dw;
        }
        w_end[j] = w;
        x_sigma_end[j] = x_sigma;
    });

    std::size_t pi_hits = 0;
    std::size_t sigma_hits = 0;
    for (std::size_t j = 0; j < cfg.n_paths; ++j) {
        const double control = sgn(w_end[j]);
        // under the first construction the state is W itself
        if (w_end[j] > 0.0 && control == -1.0) ++pi_hits;
        if (x_sigma_end[j] > 0.0 && control == -1.0) ++sigma_hits;
    }
    const auto n = static_cast<double>(cfg.n_paths);
    auto estimate = [&](Construction c, std::size_t hits) {
        const double prob = static_cast<double>(hits) / n;
        return JointLawEstimate{c, t, prob, std::sqrt(prob * (1.0 - prob) / n)};
    };
    TanakaResult out{estimate(Construction::PiConstruction, pi_hits),
                     estimate(Construction::SigmaConstruction, sigma_hits), 0.0,
                     ks_critical_1pct(cfg.n_paths, cfg.n_paths)};
    out.ks_statistic = ks_statistic(std::move(w_end), std::move(x_sigma_end));
    return out;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw InvalidArgument("KS statistic needs nonempty samples");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const auto na = static_cast<double>(a.size());
    const auto nb = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == v) ++i;
        while (j < b.size() && b[j] == v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double ks_critical_1pct(std::size_t n, std::size_t m) {
    // c(alpha) = sqrt(-ln(alpha / 2) / 2)
    const double c = std::sqrt(-0.5 * std::log(0.005));
    const auto fn = static_cast<double>(n);
    const auto fm = static_cast<double>(m);
    return c * std::sqrt((fn + fm) / (fn * fm));
}

}  // namespace pia
