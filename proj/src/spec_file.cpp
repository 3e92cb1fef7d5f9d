#include "pia/spec_file.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "pia/errors.hpp"
#include "pia/expression.hpp"

namespace pia {

namespace {

using nlohmann::json;

[[noreturn]] void field_error(const std::string& field, const std::string& msg) {
    throw InvalidArgument(field + ": " + msg);
}

const json& section(const json& doc, const char* name) {
    if (!doc.contains(name)) field_error(name, "missing section");
    const json& s = doc.at(name);
    if (!s.is_object()) field_error(name, "must be an object");
    return s;
}

void reject_unknown(const json& obj, const std::string& where,
                    std::initializer_list<const char*> known) {
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) field_error(where.empty() ? key : where + "." + key, "unknown field");
    }
}

double get_real(const json& obj, const std::string& where, const char* key) {
    const std::string field = where + "." + key;
    if (!obj.contains(key)) field_error(field, "missing");
    const json& v = obj.at(key);
    if (!v.is_number()) field_error(field, "must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) field_error(field, "must be finite");
    return d;
}

std::uint64_t get_count(const json& obj, const std::string& where, const char* key) {
    const std::string field = where + "." + key;
    if (!obj.contains(key)) field_error(field, "missing");
    const json& v = obj.at(key);
    if (!v.is_number_unsigned()) {
        if (v.is_number_integer()) field_error(field, "must be nonnegative");
        field_error(field, "must be a nonnegative integer");
    }
    return v.get<std::uint64_t>();
}

std::string get_expression(const json& obj, const std::string& where, const char* key,
                           Expression::Variables vars) {
    const std::string field = where + "." + key;
    if (!obj.contains(key)) field_error(field, "missing");
    const json& v = obj.at(key);
    if (!v.is_string()) field_error(field, "must be an expression string");
    std::string src = v.get<std::string>();
    try {
        (void)Expression::parse(src, vars);
    } catch (const ParseError& e) {
        throw ParseError(field + ": " + e.what(), e.position());
    }
    return src;
}

std::string kind_name(ActionSpace::Kind k) {
    return k == ActionSpace::Kind::Interval ? "interval" : "finite";
}

ActionSpace make_actions(ActionSpace::Kind kind, const std::vector<double>& values) {
    if (kind == ActionSpace::Kind::Interval) {
        if (values.size() != 2) field_error("actions.values", "interval needs [a_min, a_max]");
        return ActionSpace::interval(values[0], values[1]);
    }
    return ActionSpace::finite(values);
}

}  // namespace

ProblemSpecFile ProblemSpecFile::parse(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text.begin(), json_text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed problem file: ") + e.what(), e.byte);
    }
    if (!doc.is_object()) field_error("document", "must be a JSON object");
    reject_unknown(doc, "",
                   {"domain", "actions", "coefficients", "floors", "grid", "pia", "sim"});

    ProblemSpecFile s;

    const json& dom = section(doc, "domain");
    reject_unknown(dom, "domain", {"left", "right"});
    s.left = get_real(dom, "domain", "left");
    s.right = get_real(dom, "domain", "right");
    if (!(s.left < s.right)) field_error("domain", "left must be smaller than right");

    const json& act = section(doc, "actions");
    reject_unknown(act, "actions", {"kind", "values"});
    if (!act.contains("kind") || !act.at("kind").is_string()) {
        field_error("actions.kind", "must be \"interval\" or \"finite\"");
    }
    const std::string kind = act.at("kind").get<std::string>();
    if (kind == "interval") {
        s.action_kind = ActionSpace::Kind::Interval;
    } else if (kind == "finite") {
        s.action_kind = ActionSpace::Kind::Finite;
    } else {
        field_error("actions.kind", "must be \"interval\" or \"finite\", got \"" + kind + "\"");
    }
    if (!act.contains("values") || !act.at("values").is_array()) {
        field_error("actions.values", "must be an array of numbers");
    }
    for (const json& v : act.at("values")) {
        if (!v.is_number()) field_error("actions.values", "must be an array of numbers");
        s.action_values.push_back(v.get<double>());
    }
    try {
        (void)make_actions(s.action_kind, s.action_values);
    } catch (const InvalidArgument& e) {
        if (std::string_view(e.what()).starts_with("actions.")) throw;
        field_error("actions.values", e.what());
    }

    const json& co = section(doc, "coefficients");
    reject_unknown(co, "coefficients", {"sigma", "mu", "alpha", "f", "g"});
    using V = Expression::Variables;
    s.sigma = get_expression(co, "coefficients", "sigma", V::XAndA);
    s.mu = get_expression(co, "coefficients", "mu", V::XAndA);
    s.alpha = get_expression(co, "coefficients", "alpha", V::XAndA);
    s.f = get_expression(co, "coefficients", "f", V::XAndA);
    s.g = get_expression(co, "coefficients", "g", V::XOnly);

    const json& fl = section(doc, "floors");
    reject_unknown(fl, "floors", {"sigma_min", "alpha_min"});
    s.sigma_min = get_real(fl, "floors", "sigma_min");
    s.alpha_min = get_real(fl, "floors", "alpha_min");
    if (!(s.sigma_min > 0.0)) field_error("floors.sigma_min", "must be positive");
    if (!(s.alpha_min >= 0.0)) field_error("floors.alpha_min", "must be nonnegative");

    const json& gr = section(doc, "grid");
    reject_unknown(gr, "grid", {"n_cells"});
    s.n_cells = get_count(gr, "grid", "n_cells");
    if (s.n_cells < 2) field_error("grid.n_cells", "must be at least 2");

    if (doc.contains("pia")) {
        const json& pj = section(doc, "pia");
        reject_unknown(pj, "pia", {"residual_tol", "max_iterations", "n_actions", "initial_policy"});
        if (pj.contains("residual_tol")) s.pia.residual_tol = get_real(pj, "pia", "residual_tol");
        if (pj.contains("max_iterations")) {
            s.pia.max_iterations = get_count(pj, "pia", "max_iterations");
        }
        if (pj.contains("n_actions")) s.pia.n_actions = get_count(pj, "pia", "n_actions");
        if (pj.contains("initial_policy")) {
            s.initial_policy = get_expression(pj, "pia", "initial_policy", V::XOnly);
        }
    }
    if (!(s.pia.residual_tol > 0.0)) field_error("pia.residual_tol", "must be positive");
    if (s.pia.max_iterations < 1) field_error("pia.max_iterations", "must be at least 1");
    if (s.action_kind == ActionSpace::Kind::Interval && s.pia.n_actions < 2) {
        field_error("pia.n_actions", "must be at least 2 for an interval action space");
    }

    if (doc.contains("sim")) {
        const json& sj = section(doc, "sim");
        reject_unknown(sj, "sim", {"step", "n_paths", "seed", "t_max"});
        if (sj.contains("step")) s.sim.step = get_real(sj, "sim", "step");
        if (sj.contains("n_paths")) s.sim.n_paths = get_count(sj, "sim", "n_paths");
        if (sj.contains("seed")) s.sim.seed = get_count(sj, "sim", "seed");
        if (sj.contains("t_max")) s.sim.t_max = get_real(sj, "sim", "t_max");
    }
    if (!(s.sim.step > 0.0)) field_error("sim.step", "must be positive");
    if (s.sim.n_paths < 1) field_error("sim.n_paths", "must be at least 1");
    if (!(s.sim.t_max > s.sim.step)) field_error("sim.t_max", "must exceed sim.step");
    return s;
}

ProblemSpecFile ProblemSpecFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open problem file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::string ProblemSpecFile::serialize() const {
    json doc;
    doc["domain"] = {{"left", left}, {"right", right}};
    doc["actions"] = {{"kind", kind_name(action_kind)}, {"values", action_values}};
    doc["coefficients"] = {{"sigma", sigma}, {"mu", mu}, {"alpha", alpha}, {"f", f}, {"g", g}};
    doc["floors"] = {{"sigma_min", sigma_min}, {"alpha_min", alpha_min}};
    doc["grid"] = {{"n_cells", n_cells}};
    doc["pia"] = {{"residual_tol", pia.residual_tol},
                  {"max_iterations", pia.max_iterations},
                  {"n_actions", pia.n_actions}};
    if (!initial_policy.empty()) doc["pia"]["initial_policy"] = initial_policy;
    doc["sim"] = {{"step", sim.step}, {"n_paths", sim.n_paths}, {"seed", sim.seed},
                  {"t_max", sim.t_max}};
    return doc.dump(2) + "\n";
}

ControlProblem ProblemSpecFile::build_problem() const {
    using V = Expression::Variables;
    auto two = [](const std::string& src) {
        return [e = Expression::parse(src, V::XAndA)](double x, double a) { return e(x, a); };
    };
    const Expression g_expr = Expression::parse(g, V::XOnly);
    CoefficientField c{two(sigma), two(mu), two(alpha), two(f),
                       [g_expr](double x) { return g_expr(x); }};
    return ControlProblem(Domain(left, right), make_actions(action_kind, action_values),
                          std::move(c), sigma_min, alpha_min);
}

Grid ProblemSpecFile::build_grid() const { return Grid(Domain(left, right), n_cells); }

GridPolicy ProblemSpecFile::build_initial_policy(const ControlProblem& p) const {
    const Grid grid = build_grid();
    if (initial_policy.empty()) return GridPolicy::constant(grid, p.actions.min());
    const Expression e = Expression::parse(initial_policy, Expression::Variables::XOnly);
    GridPolicy pol = GridPolicy::from(grid, [&](double x) { return e(x); });
    try {
        check_policy(p, pol);
    } catch (const DomainError& err) {
        field_error("pia.initial_policy", err.what());
    }
    return pol;
}

ProblemSpecFile oracle_spec(std::string_view name) {
    ProblemSpecFile s;
    s.left = -1.0;
    s.right = 1.0;
    s.sim = SimConfig{};
    s.sim.step = 1e-3;
    s.sim.n_paths = 100000;
    s.sim.seed = 20240601;
    s.sim.t_max = 50.0;
    if (name == "example1") {
        s.action_kind = ActionSpace::Kind::Finite;
        s.action_values = {-1.0, 1.0};
        s.sigma = "1";
        s.mu = "0";
        s.alpha = "2 + a";
        s.f = "0";
        s.g = "-sinh(sqrt(6)*max(x, 0)) - sqrt(3)*sinh(sqrt(2)*min(x, 0))";
        s.sigma_min = 1.0;
        s.alpha_min = 1.0;
        s.n_cells = 2000;
        s.pia.residual_tol = 1e-8;
        s.pia.max_iterations = 50;
        s.pia.n_actions = 2;
        s.initial_policy = "-1";
    } else if (name == "example2") {
        s.action_kind = ActionSpace::Kind::Interval;
        s.action_values = {-1.0, 1.0};
        s.sigma = "1";
        s.mu = "0";
        s.alpha = "4*a + 4.5";
        s.f = "-6.5*sinh(2*max(x, 0))";
        s.g = "-sinh(2*max(x, 0)) - 2*sinh(min(x, 0))";
        s.sigma_min = 1.0;
        s.alpha_min = 0.5;
        s.n_cells = 2000;
        // 1e-3 relative to the sup of |f| = 6.5 sinh(2)
        s.pia.residual_tol = 1e-3 * 6.5 * std::sinh(2.0);
        s.pia.max_iterations = 50;
        s.pia.n_actions = 201;
        s.initial_policy = "0";
    } else if (name == "manufactured") {
        s.action_kind = ActionSpace::Kind::Finite;
        s.action_values = {0.0};
        s.sigma = "sqrt(2)";
        s.mu = "0";
        s.alpha = "1";
        s.f = "1";
        s.g = "0";
        s.sigma_min = 1.0;
        s.alpha_min = 1.0;
        s.n_cells = 1000;
        s.pia.residual_tol = 1e-8;
        s.pia.max_iterations = 10;
        s.pia.n_actions = 2;
        s.initial_policy = "0";
    } else {
        throw InvalidArgument("unknown oracle '" + std::string(name) +
                              "' (expected example1, example2 or manufactured)");
    }
    return s;
}

std::uint64_t fnv1a(std::string_view bytes) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace pia
