#pragma once

#include <string>

#include "json.hpp"
#include "qci/coherent_info.hpp"

namespace qci {

/// Isometry wire format: {d_a, d_b, d_c, entries: [[re, im], ...]} with
/// entries row-major over the (d_b*d_c) x d_a matrix. Round-trips doubles
/// bit-faithfully.
nlohmann::json isometry_to_json(const Isometry& j);
Isometry isometry_from_json(const nlohmann::json& doc, double tol = kDefaultTol);

nlohmann::json density_to_json(const DensityOperator& rho);
DensityOperator density_from_json(const nlohmann::json& doc, double tol = kDefaultTol);

nlohmann::json ket_to_json(const ComplexVector& psi);

nlohmann::json certificate_to_json(const PositivityCertificate& cert);
nlohmann::json optimization_result_to_json(const OptimizationResult& result);
nlohmann::json report_to_json(const NonAdditivityReport& report);

/// CSV with header s,w_star,k,p_bar; values printed with %.17g.
std::string threshold_csv(const std::vector<ThresholdPoint>& points,
                          const std::vector<std::string>& meta_lines = {});

std::string format_double(double x);

}  // namespace qci
