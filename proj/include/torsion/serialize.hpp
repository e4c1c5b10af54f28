#pragma once

#include "torsion/cyclotomic.hpp"
#include "torsion/fiber.hpp"
#include "torsion/function_group.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>

namespace torsion {

using Json = nlohmann::json;

/// {"order": N, "coeffs": ["a/b", ...]} with phi(N) reduced coefficients.
Json cyclo_to_json(const CycloElem& x);

/// Accepts the object form, a JSON integer, or a string "a/b", "zeta_N^k"
/// or "zeta_N". Throws invalid_argument.
CycloElem cyclo_from_json(const Json& j);

/// Parses the string forms accepted by cyclo_from_json.
CycloElem parse_cyclo(std::string_view text);

/// {"m": m, "points": [{"component": j, "coord": ..., "mult": n}, ...]}.
Json divisor_to_json(const Divisor& d);
Divisor divisor_from_json(const Json& j);

/// {"m": m, "funcs": [{"alpha": ..., "ell": n, "zeros": [...], "poles": [...]}, ...]}.
Json k_element_to_json(const KElement& g);
/// Validates through k_validate; throws k_condition_error or invalid_argument.
KElement k_element_from_json(const Json& j);

} // namespace torsion
