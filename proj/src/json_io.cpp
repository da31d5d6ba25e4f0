#include "qci/json_io.hpp"

#include <cstdio>
#include <stdexcept>

#include "qci/version.hpp"

namespace qci {

namespace {

nlohmann::json entries_of(const ComplexMatrix& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      entries.push_back({m(i, j).real(), m(i, j).imag()});
    }
  }
  return entries;
}

ComplexMatrix matrix_from_entries(const nlohmann::json& entries, Eigen::Index rows,
                                  Eigen::Index cols) {
  if (!entries.is_array() || entries.size() != static_cast<std::size_t>(rows * cols)) {
    throw std::invalid_argument("matrix entries: expected " + std::to_string(rows * cols) +
                                " [re, im] pairs");
  }
  ComplexMatrix m(rows, cols);
  std::size_t idx = 0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j, ++idx) {
      const auto& pair = entries[idx];
      if (!pair.is_array() || pair.size() != 2) {
        throw std::invalid_argument("matrix entries: each entry must be [re, im]");
      }
      m(i, j) = Complex(pair[0].get<double>(), pair[1].get<double>());
    }
  }
  return m;
}

const char* target_name(CertTarget t) {
  return t == CertTarget::direct ? "direct" : "complement";
}

}  // namespace

nlohmann::json isometry_to_json(const Isometry& j) {
  return {{"d_a", j.d_a()},
          {"d_b", j.d_b()},
          {"d_c", j.d_c()},
          {"entries", entries_of(j.matrix())}};
}

Isometry isometry_from_json(const nlohmann::json& doc, double tol) {
  for (const char* key : {"d_a", "d_b", "d_c", "entries"}) {
    if (!doc.contains(key)) {
      throw std::invalid_argument(std::string("isometry json: missing field '") + key + "'");
    }
  }
  const int d_a = doc["d_a"].get<int>();
  const int d_b = doc["d_b"].get<int>();
  const int d_c = doc["d_c"].get<int>();
  if (d_a < 1 || d_b < 1 || d_c < 1) {
    throw std::invalid_argument("isometry json: dimensions must be positive");
  }
  ComplexMatrix m = matrix_from_entries(doc["entries"], static_cast<Eigen::Index>(d_b) * d_c,
                                        d_a);
  return Isometry(std::move(m), d_b, d_c, tol);
}

nlohmann::json density_to_json(const DensityOperator& rho) {
  return {{"dim", rho.dim()}, {"entries", entries_of(rho.matrix())}};
}

DensityOperator density_from_json(const nlohmann::json& doc, double tol) {
  if (!doc.contains("dim") || !doc.contains("entries")) {
    throw std::invalid_argument("density json: need fields 'dim' and 'entries'");
  }
  const int dim = doc["dim"].get<int>();
  return DensityOperator(matrix_from_entries(doc["entries"], dim, dim), tol);
}

nlohmann::json ket_to_json(const ComplexVector& psi) {
  nlohmann::json entries = nlohmann::json::array();
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    entries.push_back({psi(i).real(), psi(i).imag()});
  }
  return entries;
}

nlohmann::json certificate_to_json(const PositivityCertificate& cert) {
  return {{"target", target_name(cert.target)},
          {"conclusion", cert.conclusion == Conclusion::positive ? "positive" : "inconclusive"},
          {"rate_b", cert.rate_b},
          {"rate_c", cert.rate_c},
          {"rate_margin", kRateMargin},
          {"delta_base", cert.delta_base},
          {"coefficients_b", cert.detail_b.coefficients},
          {"coefficients_c", cert.detail_c.coefficients},
          {"witness_pure", ket_to_json(cert.witness_pure)},
          {"witness_sigma", density_to_json(cert.witness_sigma)}};
}

nlohmann::json optimization_result_to_json(const OptimizationResult& result) {
  return {{"value", result.value},
          {"s_b", result.s_b},
          {"s_c", result.s_c},
          {"restarts_used", result.restarts_used},
          {"converged", result.converged},
          {"argmax", density_to_json(result.argmax)}};
}

nlohmann::json report_to_json(const NonAdditivityReport& report) {
  return {{"p", report.p},
          {"s", report.s},
          {"w_star", report.w_star},
          {"k", report.k},
          {"p_bar", report.p_bar},
          {"rate_b", report.rate_b},
          {"rate_c", report.rate_c},
          {"fitted_rate_b", report.fitted_rate_b},
          {"fitted_rate_c", report.fitted_rate_c},
          {"fitted_usable", report.fitted_usable},
          {"delta0", report.delta0},
          {"delta_eps", report.delta_eps},
          {"eps_used", report.eps_used},
          {"verdict", report.verdict == Verdict::nonadditive ? "nonadditive" : "not_shown"}};
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string threshold_csv(const std::vector<ThresholdPoint>& points,
                          const std::vector<std::string>& meta_lines) {
  std::string out;
  out += std::string("# ") + kToolName + " " + kVersion + "\n";
  for (const auto& line : meta_lines) out += "# " + line + "\n";
  out += "s,w_star,k,p_bar\n";
  for (const auto& pt : points) {
    out += format_double(pt.s) + "," + format_double(pt.w_star) + "," + format_double(pt.k) +
           "," + format_double(pt.p_bar) + "\n";
  }
  return out;
}

}  // namespace qci
