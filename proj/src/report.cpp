#include "fockwc/report.hpp"

#include <cmath>
#include <sstream>

#include "fockwc/text_format.hpp"

namespace fockwc {

namespace {

void json_string(std::ostream& os, const std::string& s) {
  os << '"';
  for (char ch : s) {
    switch (ch) {
      case '"': os << "\\\""; break;
      case '\\': os << "\\\\"; break;
      case '\n': os << "\\n"; break;
      case '\t': os << "\\t"; break;
      default: os << ch;
    }
  }
  os << '"';
}

void json_complex(std::ostream& os, Complex z) {
  os << "{\"re\": " << g17(z.real()) << ", \"im\": " << g17(z.imag()) << '}';
}

void json_opt_real(std::ostream& os, const std::optional<double>& v) {
  if (v) {
    os << g17(*v);
  } else {
    os << "null";
  }
}

void json_opt_complex(std::ostream& os, const std::optional<Complex>& v) {
  if (v) {
    json_complex(os, *v);
  } else {
    os << "null";
  }
}

const char* bool_str(bool b) { return b ? "true" : "false"; }

std::optional<double> rel_diff(const ClassifyDocument& doc) {
  if (!doc.report.exact_norm || !doc.numeric_norm) return std::nullopt;
  const double closed = *doc.report.exact_norm;
  if (closed == 0.0) return std::abs(doc.numeric_norm->value);
  return std::abs(doc.numeric_norm->value - closed) / closed;
}

}  // namespace

ClassifyDocument build_classify_document(Complex gamma, Complex c, Complex a,
                                         Complex b, const RunConfig& cfg) {
  ClassifyOptions copts;
  copts.unit_circle_eps = cfg.unit_circle_eps;
  ClassifyDocument doc{gamma, c, a, b, classify(gamma, c, a, b, copts), {}};
  if (doc.report.bounded && !doc.report.zero_operator) {
    NormEstimateOptions nopts;
    nopts.max_inner = cfg.inner_dim;
    nopts.min_inner = std::min(8, cfg.inner_dim);
    nopts.padding.initial_outer = cfg.outer_pad;
    try {
      doc.numeric_norm = op_norm_estimate(
          OperatorSpec{EntireWeight::scaled_kernel(gamma, c),
                       AffineSymbol(a, b)},
          cfg.tol, nopts);
      if (!doc.numeric_norm->record.converged) {
        doc.report.warnings.push_back(
            "numeric norm did not converge by inner dimension " +
            std::to_string(cfg.inner_dim));
      }
    } catch (const Error& e) {
      doc.report.warnings.push_back(std::string("numeric norm skipped: ") +
                                    e.what());
    }
  }
  return doc;
}

std::string classify_report_json(const ClassifyDocument& doc) {
  std::ostringstream os;
  const ClassificationReport& r = doc.report;
  os << "{\n  \"input\": {\"gamma\": ";
  json_complex(os, doc.gamma);
  os << ", \"c\": ";
  json_complex(os, doc.c);
  os << ", \"a\": ";
  json_complex(os, doc.a);
  os << ", \"b\": ";
  json_complex(os, doc.b);
  os << "},\n  \"classification\": {";
  os << "\"bounded\": " << bool_str(r.bounded);
  os << ", \"compact\": " << bool_str(r.compact);
  os << ", \"unitary_multiple\": " << bool_str(r.unitary_multiple);
  os << ", \"normal\": " << bool_str(r.normal);
  os << ", \"hyponormal\": " << bool_str(r.hyponormal);
  os << ", \"cohyponormal\": " << bool_str(r.cohyponormal);
  os << ", \"normaloid\": " << bool_str(r.normaloid);
  os << ", \"closed_range\": " << bool_str(r.closed_range);
  os << "},\n  \"norm\": {\"closed_form\": ";
  json_opt_real(os, r.exact_norm);
  os << ", \"numeric\": ";
  json_opt_real(os, doc.numeric_norm
                        ? std::optional<double>(doc.numeric_norm->value)
                        : std::nullopt);
  os << ", \"rel_diff\": ";
  json_opt_real(os, rel_diff(doc));
  os << ", \"convergence\": ";
  if (doc.numeric_norm) {
    const ConvergenceRecord& rec = doc.numeric_norm->record;
    os << "{\"dims\": [";
    for (std::size_t i = 0; i < rec.dims.size(); ++i) {
      os << '[' << rec.dims[i].first << ", " << rec.dims[i].second << ']'
         << (i + 1 < rec.dims.size() ? ", " : "");
    }
    os << "], \"values\": [";
    for (std::size_t i = 0; i < rec.values.size(); ++i) {
      os << g17(rec.values[i]) << (i + 1 < rec.values.size() ? ", " : "");
    }
    os << "], \"converged\": " << bool_str(rec.converged)
       << ", \"final_delta\": " << g17(rec.final_delta) << '}';
  } else {
    os << "null";
  }
  os << "},\n  \"fixed_point\": ";
  json_opt_complex(os, r.fixed_point);
  os << ",\n  \"eigenvalue_bound\": ";
  json_opt_real(os, r.eigenvalue_bound);
  os << ",\n  \"critical_c\": ";
  json_opt_complex(os, r.critical_c);
  os << ",\n  \"warnings\": [";
  for (std::size_t i = 0; i < r.warnings.size(); ++i) {
    json_string(os, r.warnings[i]);
    if (i + 1 < r.warnings.size()) os << ", ";
  }
  os << "]\n}\n";
  return os.str();
}

std::string classify_report_text(const ClassifyDocument& doc) {
  std::ostringstream os;
  const ClassificationReport& r = doc.report;
  os << "input: gamma=" << format_complex(doc.gamma)
     << " c=" << format_complex(doc.c) << " a=" << format_complex(doc.a)
     << " b=" << format_complex(doc.b) << '\n';
  os << "bounded: " << bool_str(r.bounded) << '\n';
  os << "compact: " << bool_str(r.compact) << '\n';
  os << "unitary_multiple: " << bool_str(r.unitary_multiple) << '\n';
  os << "normal: " << bool_str(r.normal) << '\n';
  os << "hyponormal: " << bool_str(r.hyponormal) << '\n';
  os << "cohyponormal: " << bool_str(r.cohyponormal) << '\n';
  os << "normaloid: " << bool_str(r.normaloid) << '\n';
  os << "closed_range: " << bool_str(r.closed_range) << '\n';
  os << "norm.closed_form: "
     << (r.exact_norm ? g17(*r.exact_norm) : "none") << '\n';
  os << "norm.numeric: "
     << (doc.numeric_norm ? g17(doc.numeric_norm->value) : "none") << '\n';
  const auto rd = rel_diff(doc);
  os << "norm.rel_diff: " << (rd ? g17(*rd) : "none") << '\n';
  os << "fixed_point: "
     << (r.fixed_point ? format_complex(*r.fixed_point) : "none") << '\n';
  os << "eigenvalue_bound: "
     << (r.eigenvalue_bound ? g17(*r.eigenvalue_bound) : "none") << '\n';
  os << "critical_c: "
     << (r.critical_c ? format_complex(*r.critical_c) : "none") << '\n';
  for (const std::string& w : r.warnings) os << "warning: " << w << '\n';
  return os.str();
}

std::string classify_report_csv(const ClassifyDocument& doc) {
  std::ostringstream os;
  const ClassificationReport& r = doc.report;
  auto complex_cell = [](Complex z) {
    return g17(z.real()) + "+" + g17(z.imag()) + "i";
  };
  os << "key,value\n";
  os << "gamma," << complex_cell(doc.gamma) << '\n';
  os << "c," << complex_cell(doc.c) << '\n';
  os << "a," << complex_cell(doc.a) << '\n';
  os << "b," << complex_cell(doc.b) << '\n';
  os << "bounded," << bool_str(r.bounded) << '\n';
  os << "compact," << bool_str(r.compact) << '\n';
  os << "unitary_multiple," << bool_str(r.unitary_multiple) << '\n';
  os << "normal," << bool_str(r.normal) << '\n';
  os << "hyponormal," << bool_str(r.hyponormal) << '\n';
  os << "cohyponormal," << bool_str(r.cohyponormal) << '\n';
  os << "normaloid," << bool_str(r.normaloid) << '\n';
  os << "closed_range," << bool_str(r.closed_range) << '\n';
  os << "norm_closed_form,"
     << (r.exact_norm ? g17(*r.exact_norm) : "") << '\n';
  os << "norm_numeric,"
     << (doc.numeric_norm ? g17(doc.numeric_norm->value) : "") << '\n';
  const auto rd = rel_diff(doc);
  os << "norm_rel_diff," << (rd ? g17(*rd) : "") << '\n';
  os << "fixed_point,"
     << (r.fixed_point ? complex_cell(*r.fixed_point) : "") << '\n';
  os << "eigenvalue_bound,"
     << (r.eigenvalue_bound ? g17(*r.eigenvalue_bound) : "") << '\n';
  os << "critical_c," << (r.critical_c ? complex_cell(*r.critical_c) : "")
     << '\n';
  return os.str();
}

}  // namespace fockwc
