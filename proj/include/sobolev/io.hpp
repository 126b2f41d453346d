#pragma once

#include "sobolev/deficit.hpp"
#include "sobolev/weaknorm.hpp"

#include <json.hpp>

#include <string>

namespace sobolev::io
{

using Json = nlohmann::ordered_json;

/// Round to 12 significant digits, the precision of every exported number.
double round12(double x);

/// Serialize with every floating-point number printed to 12 significant digits.
std::string dump(const Json& j, int indent = -1);

/// {N, s, K, coeffs} in that order.
Json to_json(const ZonalFunction& u);
/// Inverse of to_json; validates (N, s) and K + 1 == coeffs.size().
ZonalFunction zonal_from_json(const Json& j);

Json to_json(const DeficitReport& r);
Json to_json(const ScanRecord& r);
/// Trailing summary record of a scan: {alpha_hat, local_constant, n_members, seed, ...}.
Json scan_summary(const SobolevParams& p, const ScanConfig& cfg, const ScanResult& result);
/// Scan manifest (families, sizes, seed) attached to alpha estimates.
Json scan_manifest(const ScanConfig& cfg);

Json to_json(const WeakNormConstants& c);
Json to_json(const Theorem2Case& c);

} // namespace sobolev::io
