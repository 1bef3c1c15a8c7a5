#include "solardry/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>

#include "solardry/errors.hpp"

namespace solardry {

ErrorReport percent_difference(std::span<const double> predicted, std::span<const double> observed,
                               std::string variable) {
    if (predicted.size() != observed.size()) {
        throw InputError("percent_difference: " + std::to_string(predicted.size()) +
                         " predicted vs " + std::to_string(observed.size()) + " observed points");
    }
    if (predicted.empty()) throw InputError("percent_difference: no points to compare");

    ErrorReport report;
    report.variable = std::move(variable);
    report.n = predicted.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        if (observed[i] == 0.0) {
            throw InputError("percent_difference: observed value is zero at index " +
                             std::to_string(i));
        }
        const double diff = std::abs(predicted[i] - observed[i]);
        sum += 100.0 * diff / std::abs(observed[i]);
        report.max_abs_diff = std::max(report.max_abs_diff, diff);
    }
    report.mean_abs_percent = sum / static_cast<double>(report.n);
    acceptance_check(report);
    return report;
}

bool acceptance_check(ErrorReport& report, double limit) {
    report.limit = limit;
    report.pass = report.mean_abs_percent <= limit;
    return report.pass;
}

EconomicInputs economics_from_json(const nlohmann::json& doc) {
    auto number = [&](const char* key) {
        if (!doc.contains(key) || !doc.at(key).is_number()) {
            throw ConfigError(std::string("economics: missing numeric key '") + key + "'");
        }
        return doc.at(key).get<double>();
    };
    EconomicInputs e;
    e.capital_cost = number("capital_cost");
    e.annual_operating_cost = number("annual_operating_cost");
    e.annual_production_kg = number("annual_production_kg");
    if (doc.contains("premium_per_kg")) {
        e.premium_per_kg = number("premium_per_kg");
    } else {
        e.premium_per_kg = number("open_air_price_per_kg") * number("premium_fraction");
    }
    return e;
}

EconomicInputs load_economics(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("economics: cannot open '" + path + "'");
    try {
        return economics_from_json(nlohmann::json::parse(in, nullptr, true, true));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("economics: " + path + ": " + e.what());
    }
}

double payback_period(const EconomicInputs& e) {
    if (!(e.capital_cost > 0.0)) throw ConfigError("payback_period: capital cost must be > 0");
    const double net = e.annual_net_benefit();
    if (!(net > 0.0)) {
        throw NoPaybackError("payback_period: annual net benefit " + std::to_string(net) +
                             " is not positive; the dryer never pays back");
    }
    return e.capital_cost / net;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

double parse_cell(std::string_view cell, const std::string& where, std::size_t line,
                  const std::string& column) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
        throw NonNumericError(where + ", column " + column + ": non-numeric value '" +
                                  std::string(cell) + "'",
                              line, column);
    }
    return v;
}

}  // namespace

ObservedTrace parse_observed_csv(std::istream& in, const std::string& source) {
    ObservedTrace trace;
    std::string raw;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto comma = line.find(',');
        if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
            throw InputError(source + ":" + std::to_string(line_no) + ": expected exactly 2 columns");
        }
        const auto first = trim(line.substr(0, comma));
        const auto second = trim(line.substr(comma + 1));
        if (!have_header) {
            if (first != "t_s") {
                throw MissingColumnError(source + ":" + std::to_string(line_no) +
                                             ": first column must be 't_s'",
                                         line_no, "t_s");
            }
            trace.variable = std::string(second);
            have_header = true;
            continue;
        }
        const std::string where = source + ":" + std::to_string(line_no);
        const double t = parse_cell(first, where, line_no, "t_s");
        const double v = parse_cell(second, where, line_no, trace.variable);
        if (!trace.t.empty() && !(t > trace.t.back())) {
            throw OrderingError(where + ": t_s is not strictly increasing", line_no, "t_s");
        }
        trace.t.push_back(t);
        trace.values.push_back(v);
    }
    if (!have_header) throw InputError(source + ": missing header 't_s,<variable>'");
    if (trace.t.empty()) throw InputError(source + ": no observations");
    return trace;
}

ObservedTrace load_observed_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("observed: cannot open '" + path + "'");
    return parse_observed_csv(in, path);
}

std::vector<double> interpolate_at(std::span<const double> t, std::span<const double> v,
                                   std::span<const double> query) {
    if (t.size() != v.size() || t.empty()) {
        throw InputError("interpolate_at: need matching, non-empty time and value arrays");
    }
    std::vector<double> out;
    out.reserve(query.size());
    const double tol = 1e-9 * std::max(1.0, std::abs(t.back()));
    for (double q : query) {
        if (q < t.front() - tol || q > t.back() + tol) {
            throw InputError("interpolate_at: t = " + std::to_string(q) +
                             " s outside the predicted span");
        }
        const auto hi = std::lower_bound(t.begin(), t.end(), q);
        if (hi == t.end()) {
            out.push_back(v.back());
            continue;
        }
        const auto i = static_cast<std::size_t>(hi - t.begin());
        if (*hi == q || i == 0) {
            out.push_back(v[i]);
            continue;
        }
        const double w = (q - t[i - 1]) / (t[i] - t[i - 1]);
        out.push_back(v[i - 1] + (v[i] - v[i - 1]) * w);
    }
    return out;
}

}  // namespace solardry
