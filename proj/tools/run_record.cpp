// run_record.cpp

#include "run_record.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rabi::cli {

namespace {

nlohmann::json params_to_json(const ModelParams& p) {
    return {{"omega_c", p.omega_c}, {"omega_a", p.omega_a}, {"g", p.g}, {"n_max", p.n_max}};
}

ModelParams params_from_json(const nlohmann::json& j) {
    ModelParams p;
    p.omega_c = j.at("omega_c").get<double>();
    p.omega_a = j.at("omega_a").get<double>();
    p.g = j.at("g").get<double>();
    p.n_max = j.at("n_max").get<int>();
    return p;
}

nlohmann::json search_to_json(const SearchConfig& cfg) {
    return {{"T", cfg.total_time},
            {"dt", cfg.dt},
            {"beam_exponent", cfg.beam_exponent},
            {"protocol", std::string(to_string(cfg.protocol))},
            {"threads", cfg.threads},
            {"params", params_to_json(cfg.params)}};
}

SearchConfig search_from_json(const nlohmann::json& j) {
    SearchConfig cfg;
    cfg.total_time = j.at("T").get<double>();
    cfg.dt = j.at("dt").get<double>();
    cfg.beam_exponent = j.at("beam_exponent").get<int>();
    cfg.protocol = parse_protocol_kind(j.at("protocol").get<std::string>());
    cfg.threads = j.at("threads").get<int>();
    cfg.params = params_from_json(j.at("params"));
    return cfg;
}

std::string format_number(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

}  // namespace

nlohmann::json to_json(const RunRecord& record) {
    nlohmann::json j;
    j["schema_version"] = record.schema_version;
    j["command"] = record.command;
    j["params"] = params_to_json(record.params);
    j["search"] = record.search ? search_to_json(*record.search) : nlohmann::json(nullptr);
    j["protocol"] = std::string(to_string(record.protocol));
    j["n_max"] = record.n_max;
    j["wall_seconds"] = record.wall_seconds;
    j["checks_passed"] = record.checks_passed;
    j["payload"] = record.payload;
    return j;
}

RunRecord run_record_from_json(const nlohmann::json& j) {
    RunRecord record;
    record.schema_version = j.at("schema_version").get<int>();
    if (record.schema_version != kSchemaVersion) {
        throw std::invalid_argument("unsupported run record schema version " + std::to_string(record.schema_version));
    }
    record.command = j.at("command").get<std::vector<std::string>>();
    record.params = params_from_json(j.at("params"));
    if (!j.at("search").is_null()) record.search = search_from_json(j.at("search"));
    record.protocol = parse_protocol_kind(j.at("protocol").get<std::string>());
    record.n_max = j.at("n_max").get<int>();
    record.wall_seconds = j.at("wall_seconds").get<double>();
    record.checks_passed = j.at("checks_passed").get<bool>();
    record.payload = j.at("payload");
    return record;
}

void write_run_record(const std::filesystem::path& path, const RunRecord& record) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << to_json(record).dump(2) << '\n';
}

RunRecord read_run_record(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    return run_record_from_json(nlohmann::json::parse(in));
}

std::string format_csv(const CsvTable& table) {
    std::string out;
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        if (c) out += ',';
        out += table.header[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size()) {
            throw std::invalid_argument("format_csv: row width does not match header");
        }
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += format_number(row[c]);
        }
        out += '\n';
    }
    return out;
}

CsvTable parse_csv(const std::string& text) {
    CsvTable table;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("parse_csv: missing header");
    std::istringstream header(line);
    for (std::string cell; std::getline(header, cell, ',');) table.header.push_back(cell);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream cells(line);
        for (std::string cell; std::getline(cells, cell, ',');) row.push_back(std::stod(cell));
        if (row.size() != table.header.size()) throw std::invalid_argument("parse_csv: ragged row");
        table.rows.push_back(std::move(row));
    }
    return table;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << format_csv(table);
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_csv(text.str());
}

std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> values;
    if (spec.find(':') != std::string::npos) {
        double start = 0.0, stop = 0.0, step = 0.0;
        char c1 = 0, c2 = 0;
        std::istringstream in(spec);
        std::string rest;
        if (!(in >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' || (in >> rest)) {
            throw std::invalid_argument("grid '" + spec + "': expected start:stop:step");
        }
        if (!(step > 0.0) || stop < start) {
            throw std::invalid_argument("grid '" + spec + "': need step > 0 and stop >= start");
        }
        const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-3)) + 1;
        for (std::size_t k = 0; k < count; ++k) values.push_back(start + step * static_cast<double>(k));
        return values;
    }
    std::istringstream in(spec);
    for (std::string cell; std::getline(in, cell, ',');) {
        std::size_t used = 0;
        const double value = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument("grid '" + spec + "': bad number '" + cell + "'");
        values.push_back(value);
    }
    if (values.empty()) throw std::invalid_argument("grid '" + spec + "' is empty");
    return values;
}

}  // namespace rabi::cli
