#include "pursuit/serialize.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace pursuit {

namespace {

constexpr int kTableVersion = 1;

std::string config_key(const CopConfig& c) {
    std::string out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(c[i]);
    }
    return out;
}

std::string state_key(const StateKey& key) {
    return config_key(key.config) + '|' + std::to_string(key.robber) + '|' +
           std::to_string(key.steps_left);
}

std::vector<int> parse_ints(std::string_view text, char sep) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find(sep, pos);
        if (end == std::string_view::npos) end = text.size();
        int value = 0;
        auto piece = text.substr(pos, end - pos);
        auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
        if (ec != std::errc{} || ptr != piece.data() + piece.size())
            throw std::invalid_argument("strategy table: bad key '" + std::string(text) + "'");
        out.push_back(value);
        pos = end + 1;
        if (end == text.size()) break;
    }
    return out;
}

}  // namespace

std::string hash_hex(std::uint64_t hash) {
    std::ostringstream out;
    out << std::hex << hash;
    return out.str();
}

nlohmann::json table_to_json(const StrategyTable& table) {
    nlohmann::json moves = nlohmann::json::object();
    for (const auto& [key, move] : table.moves) moves[state_key(key)] = move;
    return {{"format", "strategy-table"},
            {"version", kTableVersion},
            {"graph_hash", hash_hex(table.graph_hash)},
            {"n", table.n},
            {"k", table.k},
            {"t", table.t},
            {"certified", table.certified},
            {"start", table.start},
            {"winning_configs", table.winning},
            {"moves", moves}};
}

StrategyTable table_from_json(const nlohmann::json& j) {
    if (j.value("format", "") != "strategy-table" || j.value("version", 0) != kTableVersion)
        throw std::invalid_argument("strategy table: unknown format or version");
    StrategyTable table;
    table.graph_hash = std::stoull(j.at("graph_hash").get<std::string>(), nullptr, 16);
    table.n = j.at("n").get<int>();
    table.k = j.at("k").get<int>();
    table.t = j.at("t").get<int>();
    table.certified = j.at("certified").get<bool>();
    table.start = j.at("start").get<CopConfig>();
    table.winning = j.at("winning_configs").get<std::vector<CopConfig>>();
    for (const auto& [key, move] : j.at("moves").items()) {
        auto bar1 = key.find('|');
        auto bar2 = key.find('|', bar1 + 1);
        if (bar1 == std::string::npos || bar2 == std::string::npos)
            throw std::invalid_argument("strategy table: bad move key '" + key + "'");
        StateKey state;
        state.config = parse_ints(std::string_view(key).substr(0, bar1), ',');
        state.robber = parse_ints(std::string_view(key).substr(bar1 + 1, bar2 - bar1 - 1), ',')[0];
        state.steps_left = parse_ints(std::string_view(key).substr(bar2 + 1), ',')[0];
        table.moves[state] = move.get<CopConfig>();
    }
    return table;
}

nlohmann::json report_to_json(const BoundReport& report) {
    nlohmann::json j = {{"name", report.name},
                        {"kind", to_string(report.kind)},
                        {"value", report.value},
                        {"certificate", report.certificate}};
    if (report.rational) {
        j["numerator"] = report.rational->num;
        j["denominator"] = report.rational->den;
    }
    return j;
}

nlohmann::json roles_to_json(const ReductionGraph& r) {
    nlohmann::json roles = nlohmann::json::array();
    for (std::size_t v = 0; v < r.roles.size(); ++v)
        roles.push_back(to_string(r.roles[v]));
    return {{"t", r.t},
            {"roles", roles},
            {"subset_vertices", r.subset_vertices},
            {"element_vertices", r.element_vertices},
            {"attached_paths", r.attached_paths},
            {"additional_paths", r.additional_paths}};
}

}  // namespace pursuit
