// report.hpp — run configuration and classification report documents.
//
// Reports embed both the closed-form and the numeric value whenever both
// exist, together with their relative difference: the whole point of the
// tool is the cross-check, so disagreement is surfaced, never hidden.
// Serialization is deterministic: fixed key order, 17 significant digits.

#pragma once

#include <optional>
#include <string>

#include "fockwc/classifier.hpp"
#include "fockwc/numerics.hpp"

namespace fockwc {

enum class OutputFormat { Json, Text, Csv };

struct RunConfig {
  int inner_dim = 64;
  int outer_pad = 0;  // 0: automatic outer growth
  double tol = 1e-8;
  double unit_circle_eps = kUnitCircleEps;
  OutputFormat output_format = OutputFormat::Json;
  std::string out_path;  // empty: stdout
};

struct ClassifyDocument {
  Complex gamma, c, a, b;
  ClassificationReport report;
  std::optional<NormEstimate> numeric_norm;
};

// Classifies and, when the operator is bounded, attaches the SVD norm
// estimate (inner dimensions doubling up to cfg.inner_dim).
ClassifyDocument build_classify_document(Complex gamma, Complex c, Complex a,
                                         Complex b, const RunConfig& cfg);

// JSON schema (shipped in docs/report.schema.json): top-level keys are
// input, classification, norm, fixed_point, eigenvalue_bound, critical_c,
// warnings, in that order.
std::string classify_report_json(const ClassifyDocument& doc);
std::string classify_report_text(const ClassifyDocument& doc);
std::string classify_report_csv(const ClassifyDocument& doc);

}  // namespace fockwc
