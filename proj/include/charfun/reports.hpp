// reports.hpp -- per-scale tables with fitted slopes, serializable to CSV and
// JSON for the experiment harness.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "charfun/fit.hpp"

namespace charfun {

struct DyadicReport {
    std::string name;
    std::vector<int> k;
    std::vector<std::pair<std::string, std::vector<double>>> columns;

    struct Fit {
        std::string column;
        LineFit line; // of column values (log2 where noted in the name) vs k
    };
    std::vector<Fit> fits;
    std::vector<std::string> notes;

    void add_column(std::string name_, std::vector<double> values);
    const std::vector<double>& column(const std::string& name_) const;
    void fit_log2_column(const std::string& name_);

    std::string csv() const;
    nlohmann::ordered_json json() const;
};

} // namespace charfun
