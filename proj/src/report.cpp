#include "rmtlab/report.hpp"

#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace rmtlab {

using nlohmann::json;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

// NaN is written as null
double number(const json& v) { return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>(); }

}  // namespace

std::string emit_json(const ExperimentReport& r) {
    json j;
    j["experiment"] = r.experiment;
    j["columns"] = r.columns;
    j["rows"] = r.rows;
    j["summary"] = r.summary;
    j["checks"] = r.checks;
    j["seeds"] = r.seeds;
    j["notes"] = r.notes;
    j["wall_clock"] = r.wall_clock;
    return j.dump(1);
}

ExperimentReport parse_json(const std::string& text) {
    json j = json::parse(text);
    ExperimentReport r;
    r.experiment = j.at("experiment").get<std::string>();
    r.columns = j.at("columns").get<std::vector<std::string>>();
    for (const auto& row : j.at("rows")) {
        std::vector<double> v;
        for (const auto& x : row) v.push_back(number(x));
        r.rows.push_back(std::move(v));
    }
    for (const auto& [k, v] : j.at("summary").items()) r.summary[k] = number(v);
    r.checks = j.at("checks").get<std::map<std::string, bool>>();
    r.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    r.notes = j.at("notes").get<std::vector<std::string>>();
    r.wall_clock = j.at("wall_clock").get<double>();
    return r;
}

std::string emit_csv(const ExperimentReport& r) {
    std::ostringstream out;
    for (std::size_t k = 0; k < r.columns.size(); ++k) out << (k ? "," : "") << r.columns[k];
    out << "\n";
    for (const auto& row : r.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << fmt(row[k]);
        out << "\n";
    }
    out << "#experiment," << r.experiment << "\n";
    out << "#wall_clock," << fmt(r.wall_clock) << "\n";
    for (const auto& [k, v] : r.summary) out << "#summary," << k << "," << fmt(v) << "\n";
    for (const auto& [k, v] : r.checks) out << "#check," << k << "," << (v ? 1 : 0) << "\n";
    for (auto s : r.seeds) out << "#seed," << s << "\n";
    for (const auto& s : r.notes) out << "#note," << s << "\n";
    return out.str();
}

ExperimentReport parse_csv(const std::string& text) {
    ExperimentReport r;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty report");
    if (!line.empty()) r.columns = split(line, ',');
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] != '#') {
            std::vector<double> row;
            for (const auto& f : split(line, ',')) row.push_back(std::stod(f));
            r.rows.push_back(std::move(row));
            continue;
        }
        const auto comma = line.find(',');
        const std::string tag = line.substr(1, comma - 1);
        const std::string rest = comma == std::string::npos ? "" : line.substr(comma + 1);
        if (tag == "experiment") {
            r.experiment = rest;
        } else if (tag == "wall_clock") {
            r.wall_clock = std::stod(rest);
        } else if (tag == "note") {
            r.notes.push_back(rest);
        } else if (tag == "seed") {
            r.seeds.push_back(std::stoull(rest));
        } else {
            const auto c2 = rest.rfind(',');
            const std::string key = rest.substr(0, c2);
            const std::string value = rest.substr(c2 + 1);
            if (tag == "summary") r.summary[key] = std::stod(value);
            else if (tag == "check") r.checks[key] = value == "1";
            else throw std::invalid_argument("unknown report line tag '" + tag + "'");
        }
    }
    return r;
}

ExperimentConfig parse_config(const std::string& json_text) {
    json j = json::parse(json_text);
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    ExperimentConfig c;
    for (const auto& [key, value] : j.items()) {
        if (value.is_object()) throw std::invalid_argument("config must be flat; '" + key + "' is nested");
        if (key == "n") c.ensemble.n = value.get<int>();
        else if (key == "law") c.ensemble.law = ElementLaw::parse(value.get<std::string>());
        else if (key == "kappa") c.ensemble.kappa = value.get<double>();
        else if (key == "seed") c.ensemble.seed = value.get<std::uint64_t>();
        else if (key == "replicas") c.replicas = value.get<int>();
        else if (key == "experiment") c.experiment = value.get<std::string>();
        else if (key == "d") c.d = value.get<double>();
        else if (key == "gap") c.gap = value.get<double>();
        else if (key == "psi_scale") c.psi_scale = value.get<double>();
        else if (key == "window") c.window = value.get<double>();
        else if (key == "sizes") c.sizes = value.get<std::vector<int>>();
        else if (key == "reference_replicas") c.reference_replicas = value.get<int>();
        else if (key == "workers") c.workers = value.get<int>();
        else if (key.rfind("tol_", 0) == 0) c.tolerances[key.substr(4)] = value.get<double>();
        else throw std::invalid_argument("unknown config key '" + key + "'");
    }
    return c;
}

std::string emit_config(const ExperimentConfig& c) {
    json j;
    j["n"] = c.ensemble.n;
    j["law"] = c.ensemble.law.name();
    j["kappa"] = c.ensemble.kappa;
    j["seed"] = c.ensemble.seed;
    j["replicas"] = c.replicas;
    j["experiment"] = c.experiment;
    j["d"] = c.d;
    j["gap"] = c.gap;
    j["psi_scale"] = c.psi_scale;
    j["window"] = c.window;
    j["sizes"] = c.sizes;
    j["reference_replicas"] = c.reference_replicas;
    j["workers"] = c.workers;
    for (const auto& [k, v] : c.tolerances) j["tol_" + k] = v;
    return j.dump(1);
}

void write_report(const ExperimentReport& r, const std::string& path, const std::string& format) {
    std::string text;
    if (format == "json") text = emit_json(r);
    else if (format == "csv") text = emit_csv(r);
    else throw std::invalid_argument("format must be csv or json");
    if (path.empty() || path == "-") {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << text;
}

}  // namespace rmtlab
