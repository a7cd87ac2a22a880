#include "swspectra/output.hpp"

#include <cstdio>

#include "json.hpp"

namespace sw {

namespace {

using nlohmann::ordered_json;

constexpr const char* kHeader = "case,p,eps1,eps2,u,E_tilde,E_rel,residual,positivity,notes";

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

template <typename T, typename F>
std::string render_opt(const std::optional<T>& v, F&& render) {
    return v ? render(*v) : std::string();
}

ordered_json json_opt_int(const std::optional<int>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

// JSON doubles stay native numbers; the serializer emits the shortest
// round-trip representation, which is deterministic for a given value.
// (Non-finite values serialize as null, which doubles as the absent marker.)
ordered_json json_opt_double(const std::optional<double>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

} // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string to_csv(const std::vector<OutputRow>& rows) {
    std::string out = kHeader;
    out += '\n';
    for (const OutputRow& r : rows) {
        out += std::to_string(r.case_id);
        out += ',';
        out += render_opt(r.p, [](int v) { return std::to_string(v); });
        out += ',';
        out += render_opt(r.eps1, [](int v) { return std::to_string(v); });
        out += ',';
        out += render_opt(r.eps2, [](int v) { return std::to_string(v); });
        out += ',';
        out += render_opt(r.u, format_double);
        out += ',';
        out += render_opt(r.E_tilde, format_double);
        out += ',';
        out += render_opt(r.E_rel, format_double);
        out += ',';
        out += render_opt(r.residual, format_double);
        out += ',';
        out += render_opt(r.positivity, [](bool v) { return std::string(v ? "pass" : "fail"); });
        out += ',';
        out += csv_quote(r.notes);
        out += '\n';
    }
    return out;
}

std::string to_json(const std::vector<OutputRow>& rows) {
    ordered_json arr = ordered_json::array();
    for (const OutputRow& r : rows) {
        ordered_json o;
        o["case"] = r.case_id;
        o["p"] = json_opt_int(r.p);
        o["eps1"] = json_opt_int(r.eps1);
        o["eps2"] = json_opt_int(r.eps2);
        o["u"] = json_opt_double(r.u);
        o["E_tilde"] = json_opt_double(r.E_tilde);
        o["E_rel"] = json_opt_double(r.E_rel);
        o["residual"] = json_opt_double(r.residual);
        o["positivity"] = r.positivity ? ordered_json(*r.positivity) : ordered_json(nullptr);
        o["notes"] = r.notes;
        arr.push_back(o);
    }
    return arr.dump(2) + "\n";
}

} // namespace sw
