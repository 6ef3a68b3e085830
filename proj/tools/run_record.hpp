// run_record.hpp: JSON run records and CSV data files written by rabi-bb

#pragma once

#include "rabi/model.hpp"
#include "rabi/protocol.hpp"
#include "rabi/search.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace rabi::cli {

inline constexpr int kSchemaVersion = 1;

struct RunRecord {
    int schema_version{kSchemaVersion};
    std::vector<std::string> command;
    ModelParams params;
    std::optional<SearchConfig> search;
    ProtocolKind protocol{ProtocolKind::switch_off};
    int n_max{0};
    double wall_seconds{0.0};
    bool checks_passed{true};
    nlohmann::json payload = nlohmann::json::object();

    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

nlohmann::json to_json(const RunRecord& record);
// Throws nlohmann::json::exception on missing or mistyped fields and
// std::invalid_argument on an unknown schema version.
RunRecord run_record_from_json(const nlohmann::json& j);

void write_run_record(const std::filesystem::path& path, const RunRecord& record);
RunRecord read_run_record(const std::filesystem::path& path);

// Column-oriented numeric table. Values are written with 17 significant digits.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    friend bool operator==(const CsvTable&, const CsvTable&) = default;
};

std::string format_csv(const CsvTable& table);
CsvTable parse_csv(const std::string& text);
void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

// "start:stop:step" (inclusive, stop reached within step/1000) or a comma list.
std::vector<double> parse_grid(const std::string& spec);

}  // namespace rabi::cli
