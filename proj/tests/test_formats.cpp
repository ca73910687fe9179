#include <cstdlib>
#include <fstream>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "fockwc/report.hpp"
#include "fockwc/text_format.hpp"
#include "fockwc/verification.hpp"

using namespace fockwc;
using nlohmann::json;

namespace {

// Minimal structural validator for the schema subset we ship: type,
// required, properties, additionalProperties, items, oneOf, $ref into
// definitions.  Returns an empty string on success, else the first problem.
std::string validate(const json& schema, const json& value, const json& root,
                     const std::string& path) {
  if (schema.contains("$ref")) {
    const std::string ref = schema["$ref"].get<std::string>();
    const std::string prefix = "#/definitions/";
    REQUIRE(ref.rfind(prefix, 0) == 0);
    return validate(root["definitions"][ref.substr(prefix.size())], value,
                    root, path);
  }
  if (schema.contains("oneOf")) {
    for (const json& option : schema["oneOf"]) {
      if (validate(option, value, root, path).empty()) return {};
    }
    return path + ": no oneOf branch matched";
  }
  if (schema.contains("type")) {
    auto matches = [&](const std::string& t) {
      if (t == "object") return value.is_object();
      if (t == "array") return value.is_array();
      if (t == "string") return value.is_string();
      if (t == "boolean") return value.is_boolean();
      if (t == "null") return value.is_null();
      if (t == "number") return value.is_number();
      if (t == "integer") return value.is_number_integer();
      return false;
    };
    bool ok = false;
    if (schema["type"].is_array()) {
      for (const json& t : schema["type"]) ok = ok || matches(t);
    } else {
      ok = matches(schema["type"]);
    }
    if (!ok) return path + ": type mismatch";
  }
  if (value.is_object()) {
    if (schema.contains("required")) {
      for (const json& key : schema["required"]) {
        if (!value.contains(key.get<std::string>())) {
          return path + ": missing required key " + key.get<std::string>();
        }
      }
    }
    if (schema.contains("properties")) {
      for (const auto& [key, sub] : schema["properties"].items()) {
        if (value.contains(key)) {
          const std::string err = validate(sub, value[key], root,
                                           path + "/" + key);
          if (!err.empty()) return err;
        }
      }
      if (schema.value("additionalProperties", json(true)) == json(false)) {
        for (const auto& [key, _] : value.items()) {
          if (!schema["properties"].contains(key)) {
            return path + ": unexpected key " + key;
          }
        }
      }
    }
  }
  if (value.is_array() && schema.contains("items")) {
    for (std::size_t i = 0; i < value.size(); ++i) {
      const std::string err = validate(schema["items"], value[i], root,
                                       path + "[" + std::to_string(i) + "]");
      if (!err.empty()) return err;
    }
  }
  return {};
}

json load_schema() {
  const char* src = std::getenv("FOCKWC_SOURCE_DIR");
  const std::string base = src ? src : ".";
  std::ifstream in(base + "/docs/report.schema.json");
  REQUIRE_MESSAGE(in.good(), "docs/report.schema.json not found; set "
                             "FOCKWC_SOURCE_DIR");
  return json::parse(in);
}

}  // namespace

TEST_SUITE_BEGIN("formats");

TEST_CASE("g17 round-trips doubles exactly") {
  for (double x : {1.0, 0.3, std::exp(2.0), 4.9787068367863944e-2, 1e-300,
                   -7.38905609893065, 0.0}) {
    CHECK(std::strtod(g17(x).c_str(), nullptr) == x);
  }
}

TEST_CASE("parse_complex accepts the documented forms") {
  CHECK(*parse_complex("1.5") == Complex(1.5, 0.0));
  CHECK(*parse_complex("-2e-3") == Complex(-2e-3, 0.0));
  CHECK(*parse_complex("0.5i") == Complex(0.0, 0.5));
  CHECK(*parse_complex("i") == Complex(0.0, 1.0));
  CHECK(*parse_complex("-i") == Complex(0.0, -1.0));
  CHECK(*parse_complex("+i") == Complex(0.0, 1.0));
  CHECK(*parse_complex("1+2i") == Complex(1.0, 2.0));
  CHECK(*parse_complex("1.5-0.25i") == Complex(1.5, -0.25));
  CHECK(*parse_complex("0+1i") == Complex(0.0, 1.0));
  CHECK(*parse_complex("-0.7+0.2e1i") == Complex(-0.7, 2.0));
  CHECK(*parse_complex("3-i") == Complex(3.0, -1.0));
}

TEST_CASE("parse_complex rejects malformed literals") {
  for (const char* bad : {"", "x", "1+", "1+2", "1 + 2i", "2i+1", "1+2j",
                          "1.5.2", "i2", "1+2ii", "--1"}) {
    CHECK_FALSE(parse_complex(bad).has_value());
  }
}

TEST_CASE("classification report validates against the shipped schema") {
  const json schema = load_schema();
  RunConfig cfg;
  cfg.inner_dim = 32;

  const struct {
    Complex gamma, c, a, b;
  } cases[] = {
      {1.0, 0.3, 0.5, 0.3},                       // compact normal
      {1.0, 0.5, Complex(0, 1), 1.0},             // unbounded
      {2.0, Complex(0, 1), Complex(0, 1), 1.0},   // unitary multiple
      {0.0, 0.0, 0.5, 0.3},                       // zero operator
      {1.0, 0.0, 1.0, 2.0},                       // translation, unbounded
  };
  for (const auto& k : cases) {
    const auto doc = build_classify_document(k.gamma, k.c, k.a, k.b, cfg);
    const std::string text = classify_report_json(doc);
    const json parsed = json::parse(text);
    const std::string err = validate(schema, parsed, schema, "");
    CHECK_MESSAGE(err.empty(), err);
  }
}

TEST_CASE("report values for the reference normal case") {
  RunConfig cfg;
  const auto doc = build_classify_document(1.0, 0.3, 0.5, 0.3, cfg);
  const json parsed = json::parse(classify_report_json(doc));
  CHECK(parsed["classification"]["normal"] == true);
  CHECK(parsed["classification"]["compact"] == true);
  CHECK(parsed["classification"]["closed_range"] == false);
  CHECK(parsed["norm"]["closed_form"].get<double>() ==
        doctest::Approx(std::exp(0.18)).epsilon(1e-14));
  CHECK(parsed["norm"]["numeric"].get<double>() ==
        doctest::Approx(std::exp(0.18)).epsilon(1e-8));
  CHECK(parsed["norm"]["rel_diff"].get<double>() <= 1e-6);
  CHECK(parsed["norm"]["convergence"]["converged"] == true);
  CHECK(parsed["fixed_point"]["re"].get<double>() == 0.6);
  CHECK(parsed["critical_c"]["re"].get<double>() == 0.3);
  CHECK(parsed["warnings"].is_array());
}

TEST_CASE("unbounded reports carry nulls, not numbers") {
  RunConfig cfg;
  const auto doc =
      build_classify_document(1.0, 0.5, Complex(0, 1), 1.0, cfg);
  const json parsed = json::parse(classify_report_json(doc));
  CHECK(parsed["classification"]["bounded"] == false);
  CHECK(parsed["norm"]["closed_form"].is_null());
  CHECK(parsed["norm"]["numeric"].is_null());
  CHECK(parsed["norm"]["convergence"].is_null());
  CHECK(parsed["eigenvalue_bound"].is_null());
}

TEST_CASE("translation without matching kernel has no fixed point") {
  RunConfig cfg;
  const auto doc = build_classify_document(1.0, 0.0, 1.0, 2.0, cfg);
  const json parsed = json::parse(classify_report_json(doc));
  CHECK(parsed["fixed_point"].is_null());
  CHECK(parsed["classification"]["bounded"] == false);
  // the matching kernel parameter would be -b
  CHECK(parsed["critical_c"]["re"].get<double>() == -2.0);
}

TEST_CASE("report serialization is deterministic") {
  RunConfig cfg;
  const auto once = build_classify_document(1.0, 0.3, 0.5, 0.3, cfg);
  const auto twice = build_classify_document(1.0, 0.3, 0.5, 0.3, cfg);
  CHECK(classify_report_json(once) == classify_report_json(twice));
  CHECK(classify_report_text(once) == classify_report_text(twice));
  CHECK(classify_report_csv(once) == classify_report_csv(twice));
}

TEST_CASE("verification renders are deterministic and well-formed") {
  VerifyOptions opts;
  opts.inner_dim = 16;
  const auto checks = run_verify_suite("witness", opts);
  CHECK_FALSE(checks.empty());
  CHECK(render_checks_text(checks) == render_checks_text(checks));
  const json parsed = json::parse(render_checks_json(checks));
  CHECK(parsed.is_array());
  CHECK(parsed.size() == checks.size());
  for (const json& row : parsed) {
    CHECK(row.contains("criterion"));
    CHECK(row.contains("pass"));
    CHECK(row.contains("metric"));
  }
  // CSV header row
  std::istringstream csv(render_checks_csv(checks));
  std::string header;
  std::getline(csv, header);
  CHECK(header == "criterion,suite,name,params,pass,metric_name,metric");
}

TEST_CASE("unknown verification suite is rejected") {
  CHECK_THROWS_AS(run_verify_suite("nope", VerifyOptions{}), Error);
}

TEST_SUITE_END();
