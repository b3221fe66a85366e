// reports.cpp
#include "charfun/reports.hpp"

#include <cmath>

#include "charfun/errors.hpp"
#include "charfun/io.hpp"

namespace charfun {

void DyadicReport::add_column(std::string name_, std::vector<double> values) {
    if (values.size() != k.size()) throw ConfigError("DyadicReport: column length mismatch for " + name_);
    columns.emplace_back(std::move(name_), std::move(values));
}

const std::vector<double>& DyadicReport::column(const std::string& name_) const {
    for (const auto& [n, v] : columns)
        if (n == name_) return v;
    throw ConfigError("DyadicReport: no column " + name_);
}

void DyadicReport::fit_log2_column(const std::string& name_) {
    const auto& v = column(name_);
    std::vector<double> x, y;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(v[i] > 0.0)) continue;
        x.push_back(static_cast<double>(k[i]));
        y.push_back(std::log2(v[i]));
    }
    fits.push_back({"log2_" + name_, fit_line(x, y)});
}

std::string DyadicReport::csv() const {
    std::string out = "k";
    for (const auto& [n, v] : columns) out += "," + n;
    out += "\n";
    for (std::size_t i = 0; i < k.size(); ++i) {
        out += std::to_string(k[i]);
        for (const auto& [n, v] : columns) out += "," + format_double(v[i]);
        out += "\n";
    }
    return out;
}

nlohmann::ordered_json DyadicReport::json() const {
    nlohmann::ordered_json j;
    j["name"] = name;
    j["k"] = k;
    for (const auto& [n, v] : columns) j["columns"][n] = v;
    for (const auto& f : fits) {
        j["fits"][f.column] = {{"slope", f.line.slope},
                               {"intercept", f.line.intercept},
                               {"slope_stderr", f.line.slope_stderr},
                               {"npoints", f.line.npoints}};
    }
    if (!notes.empty()) j["notes"] = notes;
    return j;
}

} // namespace charfun
