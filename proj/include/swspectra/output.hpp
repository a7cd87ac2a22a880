#pragma once

#include <optional>
#include <string>
#include <vector>

namespace sw {

// One table row in the fixed output schema:
//   case,p,eps1,eps2,u,E_tilde,E_rel,residual,positivity,notes
// Fields that do not apply to a given mode stay disengaged and are emitted as
// empty CSV fields / JSON nulls.
struct OutputRow {
    int case_id = 0;
    std::optional<int> p;
    std::optional<int> eps1;
    std::optional<int> eps2;
    std::optional<double> u;
    std::optional<double> E_tilde;
    std::optional<double> E_rel;
    std::optional<double> residual;
    std::optional<bool> positivity;
    std::string notes;
};

// Twelve-significant-digit rendering used for CSV fields.
std::string format_double(double v);

// CSV with a header line and RFC-4180-style quoting (fields containing
// commas, quotes, or newlines are quoted; embedded quotes doubled).
std::string to_csv(const std::vector<OutputRow>& rows);

// JSON array of row objects, keys in schema order, two-space indent.
std::string to_json(const std::vector<OutputRow>& rows);

} // namespace sw
