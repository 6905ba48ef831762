#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "isofib/analyze.hpp"
#include "isofib/errors.hpp"
#include "json.hpp"

using namespace isofib;
using nlohmann::json;

namespace {

const char* kEx1Config = R"(
group dihedral 8
cover1 {
  base_genus 0
  periods 2 2 2 2 4
  vector [x, x*y, x, x*y^2, y]
}
cover2 {
  base_genus 1
  periods 2
  vector [y^2 ; y, x]
}
base_choice 2
)";

// validator for the JSON Schema subset used by the shipped schema:
// type, required, properties, items, $ref into #/definitions
struct SchemaChecker {
    const json& schema;

    const json& resolve(const json& node) const {
        if (node.contains("$ref")) {
            std::string ref = node["$ref"];
            const std::string prefix = "#/definitions/";
            REQUIRE(ref.rfind(prefix, 0) == 0);
            return schema["definitions"][ref.substr(prefix.size())];
        }
        return node;
    }

    void check(const json& value, const json& node_in, const std::string& path) const {
        const json& node = resolve(node_in);
        if (node.contains("type")) {
            std::string t = node["type"];
            bool ok = (t == "object" && value.is_object()) ||
                      (t == "array" && value.is_array()) ||
                      (t == "string" && value.is_string()) ||
                      (t == "integer" && value.is_number_integer()) ||
                      (t == "number" && value.is_number()) ||
                      (t == "boolean" && value.is_boolean());
            if (!ok) FAIL_CHECK("schema type mismatch at " << path << ": expected " << t);
        }
        if (node.contains("required"))
            for (const auto& key : node["required"])
                if (!value.contains(key.get<std::string>()))
                    FAIL_CHECK("missing required key " << key << " at " << path);
        if (node.contains("properties") && value.is_object())
            for (auto it = node["properties"].begin(); it != node["properties"].end(); ++it)
                if (value.contains(it.key()))
                    check(value[it.key()], it.value(), path + "/" + it.key());
        if (node.contains("items") && value.is_array())
            for (size_t i = 0; i < value.size(); ++i)
                check(value[i], node["items"], path + "[" + std::to_string(i) + "]");
    }
};

json strip_timing(json j) {
    j.erase("timing_ms");
    return j;
}

}  // namespace

TEST_CASE("analysis report validates against the shipped schema") {
    auto report = run_analyze(parse_config(kEx1Config));
    auto j = json::parse(report_to_json(report));

    const char* src = std::getenv("ISOFIB_SRC");
    std::string schema_path =
        std::string(src ? src : ISOFIB_SOURCE_DIR) + "/schema/report.schema.json";
    std::ifstream in(schema_path);
    REQUIRE_MESSAGE(in.good(), "schema file not found at " << schema_path);
    json schema = json::parse(in);
    SchemaChecker{schema}.check(j, schema, "");

    CHECK(j["invariants"]["K2"] == 6);
    CHECK(j["invariants"]["KT2_num"] == 6);
    CHECK(j["invariants"]["KT2_den"] == 1);
    CHECK(j["invariants"]["basket"] == "2 x 1/2(1,1)");
    CHECK(j["invariants"]["quasi_bundle"] == false);
    CHECK(j["stabilized_points"] == 8);
    CHECK(j["singular_points"] == 2);
    CHECK(j["verdict"]["gap"] == 2);
    CHECK(j["fibres"].size() == 1);
    CHECK(j["fibres"][0]["class"] == "2Y + A1 + A2");
}

TEST_CASE("reports are deterministic modulo timing") {
    auto a = strip_timing(json::parse(report_to_json(run_analyze(parse_config(kEx1Config)))));
    auto b = strip_timing(json::parse(report_to_json(run_analyze(parse_config(kEx1Config)))));
    CHECK(a == b);
}

TEST_CASE("CSV rows are projections of the JSON fields") {
    auto report = run_analyze(parse_config(kEx1Config));
    auto j = json::parse(report_to_json(report));
    std::string row = csv_row(report);

    // split respecting quotes
    std::vector<std::string> cells;
    std::string cur;
    bool in_quotes = false;
    for (size_t i = 0; i < row.size(); ++i) {
        char c = row[i];
        if (c == '"') {
            if (in_quotes && i + 1 < row.size() && row[i + 1] == '"') {
                cur += '"';
                ++i;
            } else {
                in_quotes = !in_quotes;
            }
        } else if (c == ',' && !in_quotes) {
            cells.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    cells.push_back(cur);

    std::vector<std::string> header;
    {
        std::istringstream hs(csv_header());
        std::string h;
        while (std::getline(hs, h, ',')) header.push_back(h);
    }
    REQUIRE(cells.size() == header.size());
    auto cell = [&](const std::string& name) {
        for (size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return cells[i];
        FAIL("missing column " << name);
        return std::string();
    };
    CHECK(cell("group") == j["group"]["name"]);
    CHECK(std::stol(cell("order")) == j["group"]["order"].get<long>());
    CHECK(std::stol(cell("K2")) == j["invariants"]["K2"].get<long>());
    CHECK(std::stol(cell("euler")) == j["invariants"]["euler"].get<long>());
    CHECK(std::stol(cell("pg")) == j["invariants"]["pg"].get<long>());
    CHECK(std::stol(cell("chi")) == j["invariants"]["chi"].get<long>());
    CHECK(cell("basket") == j["invariants"]["basket"]);
    CHECK(std::stol(cell("gap")) == j["verdict"]["gap"].get<long>());
    CHECK(std::stol(cell("stabilized")) == j["stabilized_points"].get<long>());
    CHECK((cell("quasi_bundle") == "1") == j["invariants"]["quasi_bundle"].get<bool>());
    CHECK((cell("K_ample") == "1") == j["minimality"]["K_ample"].get<bool>());
    CHECK(cell("delta_sum") == j["delta_sum"]["str"]);
    CHECK(cell("vector1") == j["covers"][0]["vector"]);
}

TEST_CASE("text report carries the fibre diagram and verdicts") {
    auto report = run_analyze(parse_config(kEx1Config));
    auto text = report_to_text(report);
    CHECK(text.find("2Y + A1 + A2") != std::string::npos);
    CHECK(text.find("K^2 <= 8chi - 2: holds with equality") != std::string::npos);
    CHECK(text.find("basket: 2 x 1/2(1,1)") != std::string::npos);
}

TEST_CASE("run_analyze error paths") {
    // non-generating vector: exit-1 class error naming the failure
    try {
        run_analyze(parse_config(R"(
group dihedral 8
cover1 {
  base_genus 0
  vector [y^2, y^2]
}
cover2 {
  base_genus 1
  vector [y^2 ; y, x]
}
)"));
        FAIL("expected invalid_input");
    } catch (const invalid_input& e) {
        CHECK(std::string(e.what()).find("proper subgroup") != std::string::npos);
    }

    // enumerate blocks are a search feature
    CHECK_THROWS_AS(run_analyze(parse_config(R"(
group dihedral 8
cover1 {
  base_genus 0
  enumerate max_points 3 max_period 4
}
cover2 {
  base_genus 1
  vector [y^2 ; y, x]
}
)")),
                    invalid_input);
}
