#include "bss/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "bss/errors.hpp"

namespace bss::io {

namespace {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw NumericalError("cannot open output file " + path);
    return out;
}

}  // namespace

void write_wide_csv(const std::string& path, const SimulationResult& result) {
    auto out = open_out(path);
    out << "t,B,sigma,Y,Z\n";
    const SamplePath b = result.driver_b_path();
    for (int i = 0; i < result.grid.n_points(); ++i) {
        const auto iu = static_cast<std::size_t>(i);
        out << fmt17(result.grid.point(i)) << ',' << fmt17(b.values[iu]) << ','
            << fmt17(result.sigma.values[iu]) << ',' << fmt17(result.y.values[iu]) << ','
            << fmt17(result.z.values[iu]) << '\n';
    }
}

void write_path_csv(const std::string& path, const SamplePath& sample) {
    auto out = open_out(path);
    out << "t,value\n";
    for (int i = 0; i < sample.grid.n_points(); ++i) {
        out << fmt17(sample.grid.point(i)) << ','
            << fmt17(sample.values[static_cast<std::size_t>(i)]) << '\n';
    }
}

void write_values_csv(const std::string& path, const std::string& header,
                      const std::vector<double>& values) {
    auto out = open_out(path);
    out << header << '\n';
    for (double v : values) out << fmt17(v) << '\n';
}

std::vector<std::pair<double, double>> read_two_column_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameter("cannot open CSV file " + path);
    std::vector<std::pair<double, double>> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string a, b;
        if (!std::getline(ls, a, ',') || !std::getline(ls, b)) {
            throw InvalidParameter("CSV " + path + ": expected two comma-separated columns");
        }
        try {
            rows.emplace_back(std::stod(a), std::stod(b));
        } catch (const std::exception&) {
            if (first) {
                first = false;
                continue;  // header line
            }
            throw InvalidParameter("CSV " + path + ": non-numeric row '" + line + "'");
        }
        first = false;
    }
    if (rows.empty()) throw InvalidParameter("CSV " + path + ": no data rows");
    return rows;
}

json to_json(const RegularityCertificate& cert) {
    json j;
    j["alpha"] = cert.alpha;
    j["C"] = cert.C;
    j["fitted_slope"] = cert.fitted_slope;
    j["passed"] = cert.passed;
    j["probe_times"] = cert.probe_times;
    j["gaps"] = cert.gaps;
    return j;
}

json to_json(const ConditionReport& report) {
    json j;
    j["overall"] = report.overall;
    json checks = json::array();
    for (const auto& c : report.checks) {
        json jc;
        jc["condition"] = c.condition;
        jc["applicable"] = c.applicable;
        jc["passed"] = c.passed;
        jc["value"] = c.value;
        jc["detail"] = c.detail;
        checks.push_back(jc);
    }
    j["checks"] = checks;
    j["certificate"] = to_json(report.certificate);
    return j;
}

json to_json(const GaussianLaw& law) {
    json j;
    j["times"] = law.times;
    j["mean"] = std::vector<double>(law.mean.data(), law.mean.data() + law.mean.size());
    json cov = json::array();
    for (Eigen::Index i = 0; i < law.cov.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < law.cov.cols(); ++k) row.push_back(law.cov(i, k));
        cov.push_back(row);
    }
    j["cov"] = cov;
    return j;
}

json to_json(const TubeProbeReport& report) {
    json j;
    j["t_lower"] = report.t_lower;
    j["horizon"] = report.horizon;
    j["monitor_times"] = report.monitor_times;
    j["target"] = report.target;
    j["epsilon"] = report.epsilon;
    j["path_scale"] = report.path_scale;
    j["n_trials"] = report.n_trials;
    j["hits"] = report.hits;
    j["p_hat"] = report.p_hat;
    j["wilson_lo"] = report.wilson_lo;
    j["wilson_hi"] = report.wilson_hi;
    j["frozen_seed"] = report.frozen_seed;
    j["driver_seed"] = report.driver_seed;
    return j;
}

json to_json(const CounterexampleResult& result) {
    json j;
    j["below_floor"] = to_json(result.below_floor);
    j["above_floor"] = to_json(result.above_floor);
    j["min_exact_path"] = result.min_exact_path;
    j["min_riemann_path"] = result.min_riemann_path;
    return j;
}

void write_json(const std::string& path, const json& j) {
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace bss::io
