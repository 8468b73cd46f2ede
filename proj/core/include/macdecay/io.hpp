#pragma once

#include <istream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "macdecay/decay.hpp"

namespace macdecay {

using nlohmann::json;

/// [a, b] with rational strings, a + b mu.
json quad_to_json(const QuadElem& x);
/// Integer text forms "3", "2+i", "1-2w", "-w"; "sqrt-3" is 2w - 1 in Q(sqrt-3).
QuadElem parse_quad_text(const std::string& s, RingTag field);
/// Accepts an integer, a rational string, text as in parse_quad_text, or [a, b].
QuadElem quad_from_json(const json& j, RingTag field);

/// Power-basis coordinates over K, each as quad_to_json.
json field_elem_to_json(const FieldElem& x);
/// Accepts coordinate lists as produced by field_elem_to_json, or a flat
/// integer list in the Z-basis order of from_basis_coeffs (tagged {"basis": [...]}),
/// or a scalar of K in any quad_from_json form other than a pair.
FieldElem field_elem_from_json(const TowerPtr& t, const json& j);

/// {K, f, sigma_image, U, n_t, theta_numeric_hint, precision_bits}.
json tower_to_json(const Tower& t);
TowerParams tower_params_from_json(const json& j);

json codespec_to_json(const CodeSpec& s);

/// {"user": j, "coeffs": [...]}.
json codeword_to_json(int user, std::span<const long> coeffs);
std::pair<int, std::vector<long>> codeword_from_json(const json& j);

/// One coefficient vector per non-empty line, comma separated; '#' starts a comment.
std::vector<std::vector<long>> read_coeff_csv(std::istream& in);

/// N, D_value, error_radius, mode, samples, argmin_coeffs, wall_time_ms.
/// wall_time_ms stays empty unless `timing` is set, so reruns are byte-identical.
std::string decay_csv(std::span<const DecayReport> curve, bool timing = false);

json decay_report_to_json(const DecayReport& r, bool timing = false);

/// Formats a double with round-trip precision in the C locale.
std::string format_double(double v);

}  // namespace macdecay
