#include "bss/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "bss/errors.hpp"
#include "bss/io.hpp"

namespace bss::config {

namespace {

void require_keys(const json& j, const std::string& where,
                  const std::set<std::string>& allowed,
                  const std::set<std::string>& required = {}) {
    if (!j.is_object()) throw InvalidParameter("config " + where + ": expected an object");
    for (const auto& item : j.items()) {
        if (!allowed.contains(item.key())) {
            throw InvalidParameter("config " + where + ": unknown key '" + item.key() + "'");
        }
    }
    for (const auto& key : required) {
        if (!j.contains(key)) {
            throw InvalidParameter("config " + where + ": missing key '" + key + "'");
        }
    }
}

double get_num(const json& j, const std::string& where, const std::string& key) {
    if (!j.contains(key) || !j.at(key).is_number()) {
        throw InvalidParameter("config " + where + ": key '" + key + "' must be a number");
    }
    return j.at(key).get<double>();
}

double get_num_or(const json& j, const std::string& key, double fallback) {
    return j.contains(key) ? j.at(key).get<double>() : fallback;
}

std::vector<double> get_vec(const json& j, const std::string& where, const std::string& key) {
    if (!j.contains(key) || !j.at(key).is_array()) {
        throw InvalidParameter("config " + where + ": key '" + key + "' must be an array");
    }
    std::vector<double> out;
    for (const auto& v : j.at(key)) {
        if (!v.is_number()) throw InvalidParameter("config " + where + ": non-numeric entry");
        out.push_back(v.get<double>());
    }
    return out;
}

Kernel parse_kernel(const json& j, const std::string& where) {
    require_keys(j, where, {"family", "kappa", "rho", "knots", "values", "csv"}, {"family"});
    const std::string family = j.at("family").get<std::string>();
    if (family == "gamma") {
        return Kernel::gamma(get_num(j, where, "kappa"), get_num(j, where, "rho"));
    }
    if (family == "exponential") {
        return Kernel::exponential(get_num(j, where, "rho"));
    }
    if (family == "tabulated") {
        if (j.contains("csv")) {
            const auto rows = io::read_two_column_csv(j.at("csv").get<std::string>());
            std::vector<double> knots, values;
            for (const auto& [t, g] : rows) {
                knots.push_back(t);
                values.push_back(g);
            }
            return Kernel::tabulated(std::move(knots), std::move(values));
        }
        return Kernel::tabulated(get_vec(j, where, "knots"), get_vec(j, where, "values"));
    }
    throw InvalidParameter("config " + where + ": unknown kernel family '" + family + "'");
}

IntermittencyModel parse_sigma(const json& j, const std::string& where) {
    require_keys(j, where,
                 {"variant", "value", "knots", "values", "reversion", "mean_log", "vol_log"},
                 {"variant"});
    const std::string variant = j.at("variant").get<std::string>();
    if (variant == "constant") {
        return IntermittencyModel::constant(get_num(j, where, "value"));
    }
    if (variant == "deterministic") {
        return IntermittencyModel::deterministic(get_vec(j, where, "knots"),
                                                 get_vec(j, where, "values"));
    }
    if (variant == "exp_ou") {
        return IntermittencyModel::exp_ou(get_num(j, where, "reversion"),
                                          get_num(j, where, "mean_log"),
                                          get_num(j, where, "vol_log"));
    }
    throw InvalidParameter("config " + where + ": unknown sigma variant '" + variant + "'");
}

BssModel parse_model(const json& j) {
    require_keys(j, "model",
                 {"mu", "beta", "horizon", "truncation_m", "truncation_tol", "kernel", "sigma",
                  "drift"},
                 {"kernel", "sigma", "horizon"});
    Kernel g = parse_kernel(j.at("kernel"), "model.kernel");
    IntermittencyModel sigma = parse_sigma(j.at("sigma"), "model.sigma");
    DriftSpec drift;
    if (j.contains("drift")) {
        require_keys(j.at("drift"), "model.drift", {"q", "a"}, {"q"});
        drift.q = parse_kernel(j.at("drift").at("q"), "model.drift.q");
        if (j.at("drift").contains("a")) {
            drift.a = parse_sigma(j.at("drift").at("a"), "model.drift.a");
        }
    }
    std::optional<double> trunc;
    if (j.contains("truncation_m")) trunc = j.at("truncation_m").get<double>();
    return BssModel(std::move(g), std::move(sigma), get_num(j, "model", "horizon"),
                    get_num_or(j, "mu", 0.0), get_num_or(j, "beta", 0.0), std::move(drift), trunc,
                    get_num_or(j, "truncation_tol", 1e-6));
}

SimGrid parse_grid(const json& j, const std::string& where) {
    require_keys(j, where, {"t_start", "t_end", "n_steps"}, {"t_start", "t_end", "n_steps"});
    return SimGrid::over(get_num(j, where, "t_start"), get_num(j, where, "t_end"),
                         j.at("n_steps").get<int>());
}

EpsilonSpec parse_epsilon(const json& j, const std::string& where) {
    require_keys(j, where, {"absolute", "relative"});
    EpsilonSpec eps;
    if (j.contains("absolute") == j.contains("relative")) {
        throw InvalidParameter("config " + where + ": give exactly one of absolute/relative");
    }
    if (j.contains("absolute")) {
        eps.value = j.at("absolute").get<double>();
        eps.relative = false;
    } else {
        eps.value = j.at("relative").get<double>();
        eps.relative = true;
    }
    if (!(eps.value > 0.0)) throw InvalidParameter("config " + where + ": epsilon must be > 0");
    return eps;
}

std::uint64_t get_seed(const json& j, const std::string& where, const std::string& key,
                       std::uint64_t fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number_unsigned() && !j.at(key).is_number_integer()) {
        throw InvalidParameter("config " + where + ": seed '" + key + "' must be an integer");
    }
    return j.at(key).get<std::uint64_t>();
}

}  // namespace

SamplePath make_target(const std::string& descriptor, const SimGrid& monitor) {
    std::vector<std::string> parts;
    {
        std::istringstream ss(descriptor);
        std::string tok;
        while (std::getline(ss, tok, ':')) parts.push_back(tok);
    }
    const std::string& kind = parts.empty() ? descriptor : parts[0];
    auto arg = [&](std::size_t i, double fallback) {
        return parts.size() > i ? std::stod(parts[i]) : fallback;
    };
    const double span = monitor.t_end - monitor.t_start;

    SamplePath path{monitor, std::vector<double>(static_cast<std::size_t>(monitor.n_points())),
                    PathRole::Z};
    for (int i = 0; i < monitor.n_points(); ++i) {
        const double u = (monitor.point(i) - monitor.t_start) / span;  // in [0, 1]
        double v = 0.0;
        if (kind == "zero") {
            v = 0.0;
        } else if (kind == "linear") {
            v = arg(1, 1.0) * u * span;
        } else if (kind == "sine") {
            v = arg(1, 0.25) * std::sin(2.0 * std::numbers::pi * arg(2, 1.0) * u);
        } else if (kind == "zigzag") {
            // 0 -> A -> -A -> 0 tent wave over the window
            const double a = arg(1, 0.25);
            if (u < 0.25) {
                v = a * (u / 0.25);
            } else if (u < 0.75) {
                v = a * (1.0 - (u - 0.25) / 0.25);
            } else {
                v = -a * (1.0 - (u - 0.75) / 0.25);
            }
        } else {
            throw InvalidParameter("unknown target descriptor '" + descriptor + "'");
        }
        path.values[static_cast<std::size_t>(i)] = v;
    }
    path.values[0] = 0.0;
    return path;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameter("cannot open config file " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const std::exception& e) {
        throw InvalidParameter("config " + path + ": " + e.what());
    }
    return parse_config(j, path);
}

ExperimentConfig parse_config(const json& j, const std::string& source_path) {
    require_keys(j, "<root>",
                 {"model", "grid", "probe", "condlaw", "covariance", "rkhs", "simulate",
                  "counterexample", "output_dir"});
    ExperimentConfig cfg;
    cfg.raw = j;
    cfg.source_path = source_path;
    if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
    if (j.contains("model")) cfg.model = parse_model(j.at("model"));
    if (j.contains("grid")) cfg.grid = parse_grid(j.at("grid"), "grid");

    if (j.contains("probe")) {
        const json& p = j.at("probe");
        require_keys(p, "probe",
                     {"window_start", "window_end", "monitor_points", "targets", "epsilon",
                      "n_trials", "frozen_seed", "driver_seed", "record_deviations"},
                     {"window_end", "monitor_points", "targets", "epsilon", "n_trials"});
        ProbeBlock b;
        b.monitor = SimGrid::over(get_num_or(p, "window_start", 0.0),
                                  get_num(p, "probe", "window_end"),
                                  p.at("monitor_points").get<int>());
        for (const auto& t : p.at("targets")) {
            b.target_names.push_back(t.get<std::string>());
            b.targets.push_back(make_target(b.target_names.back(), b.monitor));
        }
        b.epsilon = parse_epsilon(p.at("epsilon"), "probe.epsilon");
        b.n_trials = p.at("n_trials").get<long>();
        b.frozen_seed = get_seed(p, "probe", "frozen_seed", 1);
        b.driver_seed = get_seed(p, "probe", "driver_seed", 2);
        b.record_deviations =
            p.contains("record_deviations") && p.at("record_deviations").get<bool>();
        cfg.probe = std::move(b);
    }

    if (j.contains("condlaw")) {
        const json& p = j.at("condlaw");
        require_keys(p, "condlaw", {"t_lower", "times", "frozen_seed", "n_samples", "sample_seed"},
                     {"times"});
        CondlawBlock b;
        b.t_lower = get_num_or(p, "t_lower", 0.0);
        b.times = get_vec(p, "condlaw", "times");
        b.frozen_seed = get_seed(p, "condlaw", "frozen_seed", 1);
        b.n_samples = p.contains("n_samples") ? p.at("n_samples").get<int>() : 0;
        b.sample_seed = get_seed(p, "condlaw", "sample_seed", 2);
        cfg.condlaw = std::move(b);
    }

    if (j.contains("covariance")) {
        const json& p = j.at("covariance");
        require_keys(p, "covariance", {"t_lower", "times", "sigma_seed"}, {"times"});
        CovarianceBlock b;
        b.t_lower = get_num_or(p, "t_lower", 0.0);
        b.times = get_vec(p, "covariance", "times");
        b.sigma_seed = get_seed(p, "covariance", "sigma_seed", 1);
        cfg.covariance = std::move(b);
    }

    if (j.contains("rkhs")) {
        const json& p = j.at("rkhs");
        require_keys(p, "rkhs",
                     {"t_start", "t_end", "n_steps", "f", "window_lo", "window_hi", "target",
                      "target_csv", "ridge", "deltas"},
                     {"t_end", "n_steps", "f", "target"});
        RkhsBlock b;
        b.grid = SimGrid::over(get_num_or(p, "t_start", 0.0), get_num(p, "rkhs", "t_end"),
                               p.at("n_steps").get<int>());
        b.f_kind = p.at("f").get<std::string>();
        b.window_lo = get_num_or(p, "window_lo", 0.0);
        b.window_hi = get_num_or(p, "window_hi", 0.0);
        b.target_kind = p.at("target").get<std::string>();
        if (p.contains("target_csv")) b.target_csv = p.at("target_csv").get<std::string>();
        b.ridge = get_num_or(p, "ridge", -1.0);
        if (p.contains("deltas")) b.deltas = get_vec(p, "rkhs", "deltas");
        cfg.rkhs = std::move(b);
    }

    if (j.contains("simulate")) {
        const json& p = j.at("simulate");
        require_keys(p, "simulate", {"seed"});
        SimulateBlock b;
        b.seed = get_seed(p, "simulate", "seed", 1);
        cfg.simulate = std::move(b);
    }

    if (j.contains("counterexample")) {
        const json& p = j.at("counterexample");
        require_keys(p, "counterexample", {"n_trials", "seed", "n_steps", "monitor_stride"},
                     {"n_trials"});
        CounterexampleBlock b;
        b.n_trials = p.at("n_trials").get<long>();
        b.seed = get_seed(p, "counterexample", "seed", 1);
        if (p.contains("n_steps")) b.n_steps = p.at("n_steps").get<int>();
        if (p.contains("monitor_stride")) b.monitor_stride = p.at("monitor_stride").get<int>();
        cfg.counterexample = std::move(b);
    }
    return cfg;
}

}  // namespace bss::config
